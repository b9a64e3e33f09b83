//! Mutable face set supporting elementary collapses and their undo.

use std::collections::{BTreeSet, HashMap, HashSet};

use crate::complex::{digest_of_maximal, Complex, Digest, SymbolTable};
use crate::error::CollapseError;
use crate::face::{Face, VertexId};

/// An applied elementary collapse, kept so it can be undone.
#[derive(Clone, Debug)]
pub struct Applied {
    pub sigma: Face,
    pub tau: Face,
}

/// Working copy of a complex under elementary collapses.
///
/// The collapsibility test uses the neighbourhood `N(σ) = {v ∉ σ : σ ∪ {v} ∈ K}`:
/// σ has a unique maximal coface iff `σ ∪ N(σ)` is a face, and then that face
/// is τ(σ). When tracking is enabled the sets of collapsible and maximal faces
/// are maintained incrementally; a collapse of `[σ, τ]` only changes the
/// status of subfaces of τ.
#[derive(Clone, Debug)]
pub struct CollapseState {
    d: usize,
    faces: HashSet<Face>,
    adj: HashMap<VertexId, HashSet<VertexId>>,
    /// faces with at least `d` vertices
    big: usize,
    tracked: bool,
    collapsible: BTreeSet<Face>,
    maximal: BTreeSet<Face>,
    symbols: SymbolTable,
}

impl CollapseState {
    pub fn new(k: &Complex, d: usize) -> Result<Self, CollapseError> {
        if d == 0 {
            return Err(CollapseError::BadDimension);
        }
        let mut adj: HashMap<VertexId, HashSet<VertexId>> = HashMap::new();
        for v in k.vertices() {
            adj.insert(v, HashSet::new());
        }
        for e in k.faces_of_dim(1) {
            let (a, b) = (e.vertices()[0], e.vertices()[1]);
            adj.get_mut(&a).unwrap().insert(b);
            adj.get_mut(&b).unwrap().insert(a);
        }
        Ok(CollapseState {
            d,
            faces: k.faces().cloned().collect(),
            adj,
            big: k.faces().filter(|f| f.len() >= d).count(),
            tracked: false,
            collapsible: BTreeSet::new(),
            maximal: BTreeSet::new(),
            symbols: k.symbols().clone(),
        })
    }

    /// Like [`CollapseState::new`] but maintaining collapsible and maximal sets.
    pub fn tracked(k: &Complex, d: usize) -> Result<Self, CollapseError> {
        let mut s = Self::new(k, d)?;
        s.tracked = true;
        s.maximal = k.maximal().iter().cloned().collect();
        let all: Vec<Face> = s.faces.iter().filter(|f| f.len() <= d).cloned().collect();
        for f in all {
            if s.tau(&f).is_some() {
                s.collapsible.insert(f);
            }
        }
        Ok(s)
    }

    pub fn d(&self) -> usize {
        self.d
    }

    pub fn len(&self) -> usize {
        self.faces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.faces.is_empty()
    }

    pub fn contains(&self, f: &Face) -> bool {
        self.faces.contains(f)
    }

    /// Number of faces of dimension at least `d - 1`.
    pub fn big_faces(&self) -> usize {
        self.big
    }

    /// τ(σ) if σ is present and has a unique maximal coface.
    pub fn tau(&self, sigma: &Face) -> Option<Face> {
        if !self.faces.contains(sigma) {
            return None;
        }
        let pivot = sigma
            .vertices()
            .iter()
            .min_by_key(|v| self.adj.get(v).map_or(0, HashSet::len))
            .copied()?;
        let mut top = sigma.clone();
        for &v in self.adj.get(&pivot)? {
            if !sigma.contains_vertex(v) && self.faces.contains(&sigma.with_vertex(v)) {
                top = top.with_vertex(v);
            }
        }
        self.faces.contains(&top).then_some(top)
    }

    /// All maximal faces containing σ (slow path, used for error reports).
    pub fn maximal_cofaces(&self, sigma: &Face) -> Vec<Face> {
        let mut out = BTreeSet::new();
        let mut seen = HashSet::new();
        let mut stack = vec![sigma.clone()];
        while let Some(f) = stack.pop() {
            if !seen.insert(f.clone()) {
                continue;
            }
            let pivot = f.vertices()[0];
            let mut grew = false;
            for &v in self.adj.get(&pivot).into_iter().flatten() {
                if f.contains_vertex(v) {
                    continue;
                }
                let g = f.with_vertex(v);
                if self.faces.contains(&g) {
                    grew = true;
                    stack.push(g);
                }
            }
            if !grew {
                out.insert(f);
            }
        }
        out.into_iter().collect()
    }

    /// Validates σ as a d-collapsible face and returns τ(σ).
    pub fn check(&self, sigma: &Face) -> Result<Face, CollapseError> {
        if !self.faces.contains(sigma) {
            return Err(CollapseError::Missing {
                face: sigma.clone(),
            });
        }
        if sigma.len() > self.d {
            return Err(CollapseError::TooLarge {
                face: sigma.clone(),
                d: self.d,
            });
        }
        self.tau(sigma)
            .ok_or_else(|| CollapseError::NotCollapsible {
                face: sigma.clone(),
                cofaces: self.maximal_cofaces(sigma),
            })
    }

    pub fn is_collapsible(&self, sigma: &Face) -> bool {
        sigma.len() <= self.d && self.tau(sigma).is_some()
    }

    /// Removes `[σ, τ(σ)]`.
    pub fn collapse(&mut self, sigma: &Face) -> Result<Applied, CollapseError> {
        let tau = self.check(sigma)?;
        for f in interval_faces(sigma, &tau) {
            self.remove_face(&f);
        }
        self.refresh(&tau);
        Ok(Applied {
            sigma: sigma.clone(),
            tau,
        })
    }

    /// Collapse that also insists on a particular τ.
    pub fn collapse_expecting(
        &mut self,
        sigma: &Face,
        expected: &Face,
    ) -> Result<Applied, CollapseError> {
        let tau = self.check(sigma)?;
        if &tau != expected {
            return Err(CollapseError::WrongCoface {
                face: sigma.clone(),
                expected: expected.clone(),
                found: tau,
            });
        }
        self.collapse(sigma)
    }

    /// Reverts a collapse; must be applied in LIFO order.
    pub fn undo(&mut self, applied: Applied) {
        for f in interval_faces(&applied.sigma, &applied.tau) {
            self.insert_face(f);
        }
        self.refresh(&applied.tau);
    }

    fn remove_face(&mut self, f: &Face) {
        if !self.faces.remove(f) {
            return;
        }
        if f.len() >= self.d {
            self.big -= 1;
        }
        match f.vertices() {
            [v] => {
                self.adj.remove(v);
            }
            [a, b] => {
                if let Some(s) = self.adj.get_mut(a) {
                    s.remove(b);
                }
                if let Some(s) = self.adj.get_mut(b) {
                    s.remove(a);
                }
            }
            _ => {}
        }
    }

    fn insert_face(&mut self, f: Face) {
        match f.vertices() {
            [v] => {
                self.adj.entry(*v).or_default();
            }
            [a, b] => {
                self.adj.entry(*a).or_default().insert(*b);
                self.adj.entry(*b).or_default().insert(*a);
            }
            _ => {}
        }
        if f.len() >= self.d {
            self.big += 1;
        }
        self.faces.insert(f);
    }

    fn refresh(&mut self, tau: &Face) {
        if !self.tracked {
            return;
        }
        for f in tau.subfaces() {
            if !self.faces.contains(&f) {
                self.collapsible.remove(&f);
                self.maximal.remove(&f);
                continue;
            }
            match self.tau(&f) {
                Some(t) => {
                    if t == f {
                        self.maximal.insert(f.clone());
                    } else {
                        self.maximal.remove(&f);
                    }
                    if f.len() <= self.d {
                        self.collapsible.insert(f);
                    }
                }
                None => {
                    self.maximal.remove(&f);
                    self.collapsible.remove(&f);
                }
            }
        }
    }

    /// Collapsible faces in lexicographic order (requires tracking for speed;
    /// falls back to a full scan otherwise).
    pub fn collapsible(&self) -> Vec<Face> {
        if self.tracked {
            self.collapsible.iter().cloned().collect()
        } else {
            let mut v: Vec<Face> = self
                .faces
                .iter()
                .filter(|f| self.is_collapsible(f))
                .cloned()
                .collect();
            v.sort();
            v
        }
    }

    pub(crate) fn collapsible_set(&self) -> &BTreeSet<Face> {
        debug_assert!(self.tracked);
        &self.collapsible
    }

    /// Digest of the current face set, equal to `canonical_digest` of [`to_complex`].
    ///
    /// [`to_complex`]: CollapseState::to_complex
    pub fn digest(&self) -> Digest {
        if self.tracked {
            digest_of_maximal(self.maximal.iter())
        } else {
            self.to_complex().canonical_digest()
        }
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.faces.iter()
    }

    pub fn to_complex(&self) -> Complex {
        Complex::from_closed_set(self.faces.iter().cloned().collect(), self.symbols.clone())
    }
}

/// `[σ, τ]`, for σ ⊆ τ.
pub fn interval_faces(sigma: &Face, tau: &Face) -> Vec<Face> {
    let extra = tau.difference(sigma);
    (0u64..(1u64 << extra.len()))
        .map(|mask| {
            let mut vs: Vec<VertexId> = sigma.vertices().to_vec();
            for (i, &v) in extra.iter().enumerate() {
                if mask & (1 << i) != 0 {
                    vs.push(v);
                }
            }
            vs.sort_unstable();
            Face::from_sorted_unchecked(vs)
        })
        .collect()
}
