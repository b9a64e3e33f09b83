//! Immutable simplicial complexes.
//!
//! A [`Complex`] stores every nonempty face explicitly (the empty face is
//! implicit) together with the derived list of inclusion-maximal faces and a
//! symbol table of optional vertex names. All operations return new values.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::fmt;

use sha2::{Digest as _, Sha256};

use crate::error::ComplexError;
use crate::face::{Face, VertexId};

/// Optional display names for the vertex ids `0..len()`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SymbolTable {
    names: Vec<Option<String>>,
    index: HashMap<String, VertexId>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// Number of allocated ids (named or not).
    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    /// Allocates the next id with an optional name.
    pub fn push(&mut self, name: Option<String>) -> Result<VertexId, ComplexError> {
        let id = VertexId(self.names.len() as u32);
        if let Some(n) = &name {
            if self.index.contains_key(n) {
                return Err(ComplexError::DuplicateName(n.clone()));
            }
            self.index.insert(n.clone(), id);
        }
        self.names.push(name);
        Ok(id)
    }

    pub fn push_named(&mut self, name: impl Into<String>) -> VertexId {
        let name = name.into();
        self.push(Some(name.clone()))
            .unwrap_or_else(|_| panic!("duplicate vertex name {name:?}"))
    }

    /// Makes sure ids up to `id` exist.
    pub fn reserve_through(&mut self, id: VertexId) {
        while self.names.len() <= id.index() {
            self.names.push(None);
        }
    }

    pub fn name(&self, id: VertexId) -> Option<&str> {
        self.names.get(id.index()).and_then(|n| n.as_deref())
    }

    pub fn lookup(&self, name: &str) -> Option<VertexId> {
        self.index.get(name).copied()
    }

    /// Display token: the name if present, otherwise `_<id>`.
    pub fn token(&self, id: VertexId) -> String {
        match self.name(id) {
            Some(n) => n.to_string(),
            None => format!("_{}", id.0),
        }
    }

    /// Resolves a token as produced by [`SymbolTable::token`].
    pub fn resolve(&self, token: &str) -> Option<VertexId> {
        if let Some(id) = self.lookup(token) {
            return Some(id);
        }
        let raw = token.strip_prefix('_')?.parse::<u32>().ok()?;
        let id = VertexId(raw);
        ((raw as usize) < self.len() && self.name(id).is_none()).then_some(id)
    }
}

/// 32-byte content digest of a complex.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Digest(pub [u8; 32]);

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0[..8] {
            write!(f, "{b:02x}")?;
        }
        write!(f, "…")
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for b in &self.0 {
            write!(f, "{b:02x}")?;
        }
        Ok(())
    }
}

/// Pairs of equal-size faces with an explicit vertex bijection per pair.
#[derive(Clone, Debug, Default)]
pub struct FacePairing {
    pairs: Vec<(Face, Face, Vec<(VertexId, VertexId)>)>,
}

impl FacePairing {
    pub fn new() -> Self {
        Self::default()
    }

    /// Pairs `a` with `b` through `bijection` (each entry maps a vertex of `a`
    /// to a vertex of `b`).
    pub fn push(
        &mut self,
        a: Face,
        b: Face,
        bijection: Vec<(VertexId, VertexId)>,
    ) -> Result<(), ComplexError> {
        let total = a.len() == b.len()
            && bijection.len() == a.len()
            && a.vertices()
                .iter()
                .all(|v| bijection.iter().any(|(x, _)| x == v))
            && b.vertices()
                .iter()
                .all(|v| bijection.iter().any(|(_, y)| y == v));
        if !total {
            return Err(ComplexError::BadPairing(a, b));
        }
        self.pairs.push((a, b, bijection));
        Ok(())
    }

    /// Pairs `a` with `b` by matching their sorted vertex lists position by position.
    pub fn push_sorted(&mut self, a: Face, b: Face) -> Result<(), ComplexError> {
        if a.len() != b.len() {
            return Err(ComplexError::BadPairing(a, b));
        }
        let bij = a
            .vertices()
            .iter()
            .copied()
            .zip(b.vertices().iter().copied())
            .collect();
        self.push(a, b, bij)
    }

    pub fn pairs(&self) -> impl Iterator<Item = (&Face, &Face, &[(VertexId, VertexId)])> {
        self.pairs.iter().map(|(a, b, m)| (a, b, m.as_slice()))
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

#[derive(Clone, Debug, Default)]
pub struct Complex {
    faces: BTreeSet<Face>,
    maximal: Vec<Face>,
    symbols: SymbolTable,
}

impl PartialEq for Complex {
    /// Face-set equality over vertex ids; names are ignored.
    fn eq(&self, other: &Self) -> bool {
        self.faces == other.faces
    }
}

impl Eq for Complex {}

impl Complex {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Smallest complex containing every generator.
    pub fn from_generators<I: IntoIterator<Item = Face>>(generators: I) -> Self {
        let mut faces = BTreeSet::new();
        for g in generators {
            if faces.contains(&g) {
                continue;
            }
            for s in g.subfaces() {
                faces.insert(s);
            }
        }
        Self::from_closed_set(faces, SymbolTable::new())
    }

    /// Like [`Complex::from_generators`] but with an explicit symbol table.
    pub fn from_generators_named<I: IntoIterator<Item = Face>>(
        generators: I,
        symbols: SymbolTable,
    ) -> Self {
        let mut c = Self::from_generators(generators);
        c.set_symbols(symbols);
        c
    }

    /// Builds a complex from a face set that must already be downward closed.
    pub fn from_face_set<I: IntoIterator<Item = Face>>(faces: I) -> Result<Self, ComplexError> {
        let faces: BTreeSet<Face> = faces.into_iter().collect();
        for f in &faces {
            for g in f.facets() {
                if !faces.contains(&g) {
                    return Err(ComplexError::FaceNotInComplex(g));
                }
            }
        }
        Ok(Self::from_closed_set(faces, SymbolTable::new()))
    }

    pub(crate) fn from_closed_set(faces: BTreeSet<Face>, mut symbols: SymbolTable) -> Self {
        let maximal = compute_maximal(&faces);
        if let Some(max_v) = faces
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| f.vertices()[0])
            .max()
        {
            symbols.reserve_through(max_v);
        }
        Complex {
            faces,
            maximal,
            symbols,
        }
    }

    /// The full simplex on vertices `0..n`.
    pub fn simplex(n: usize) -> Self {
        if n == 0 {
            return Self::empty();
        }
        Self::from_generators([Face::new((0..n as u32).map(VertexId).collect()).unwrap()])
    }

    pub fn set_symbols(&mut self, mut symbols: SymbolTable) {
        if let Some(max_v) = self.vertices().last() {
            symbols.reserve_through(*max_v);
        }
        self.symbols = symbols;
    }

    pub fn with_symbols(mut self, symbols: SymbolTable) -> Self {
        self.set_symbols(symbols);
        self
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn token(&self, v: VertexId) -> String {
        self.symbols.token(v)
    }

    /// Space-separated tokens of a face.
    pub fn face_tokens(&self, f: &Face) -> String {
        f.vertices()
            .iter()
            .map(|&v| self.token(v))
            .collect::<Vec<_>>()
            .join(" ")
    }

    /// Resolves a face given by vertex names.
    pub fn named_face(&self, names: &[&str]) -> Option<Face> {
        let ids: Option<Vec<VertexId>> = names.iter().map(|n| self.symbols.resolve(n)).collect();
        Face::new(ids?).ok()
    }

    pub fn faces(&self) -> impl DoubleEndedIterator<Item = &Face> + ExactSizeIterator {
        self.faces.iter()
    }

    pub fn face_set(&self) -> &BTreeSet<Face> {
        &self.faces
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

    /// Inclusion-maximal faces in lexicographic order.
    pub fn maximal(&self) -> &[Face] {
        &self.maximal
    }

    pub fn vertices(&self) -> Vec<VertexId> {
        self.faces
            .iter()
            .filter(|f| f.len() == 1)
            .map(|f| f.vertices()[0])
            .collect()
    }

    pub fn vertex_count(&self) -> usize {
        self.faces.iter().filter(|f| f.len() == 1).count()
    }

    /// Size of the id space (one past the largest allocated id).
    pub fn id_bound(&self) -> usize {
        self.symbols.len()
    }

    pub fn dim(&self) -> Option<usize> {
        self.maximal.iter().map(Face::dim).max()
    }

    /// Number of faces per dimension, index = dimension.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut fv = vec![0; self.dim().map_or(0, |d| d + 1)];
        for f in &self.faces {
            fv[f.dim()] += 1;
        }
        fv
    }

    pub fn faces_of_dim(&self, k: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim() == k)
    }

    fn require(&self, f: &Face) -> Result<(), ComplexError> {
        if self.contains(f) {
            Ok(())
        } else {
            Err(ComplexError::FaceNotInComplex(f.clone()))
        }
    }

    /// Maximal faces containing `sigma`.
    pub fn maximal_cofaces(&self, sigma: &Face) -> Result<Vec<Face>, ComplexError> {
        self.require(sigma)?;
        Ok(self
            .maximal
            .iter()
            .filter(|m| sigma.is_subset_of(m))
            .cloned()
            .collect())
    }

    /// τ(σ): the unique maximal face containing `sigma`, if there is exactly one.
    pub fn unique_max_coface(&self, sigma: &Face) -> Result<Option<Face>, ComplexError> {
        let mut cofaces = self.maximal_cofaces(sigma)?;
        Ok(if cofaces.len() == 1 {
            cofaces.pop()
        } else {
            None
        })
    }

    /// The interval `[σ, τ(σ)]`.
    pub fn interval(&self, sigma: &Face) -> Result<Vec<Face>, ComplexError> {
        let tau = self
            .unique_max_coface(sigma)?
            .ok_or_else(|| ComplexError::NoUniqueMaximalCoface(sigma.clone()))?;
        let extra = tau.difference(sigma);
        let mut out: Vec<Face> = (0u32..(1 << extra.len()))
            .map(|mask| {
                let mut f = sigma.clone();
                for (i, &v) in extra.iter().enumerate() {
                    if mask & (1 << i) != 0 {
                        f = f.with_vertex(v);
                    }
                }
                f
            })
            .collect();
        out.sort();
        Ok(out)
    }

    /// Open star: every face containing `sigma`.
    pub fn star(&self, sigma: &Face) -> Result<Vec<Face>, ComplexError> {
        self.require(sigma)?;
        Ok(self
            .faces
            .iter()
            .filter(|f| sigma.is_subset_of(f))
            .cloned()
            .collect())
    }

    /// Copy of `self` without the given faces. The result must still be closed.
    pub fn remove_faces<'a, I: IntoIterator<Item = &'a Face>>(
        &self,
        removed: I,
    ) -> Result<Complex, ComplexError> {
        let mut faces = self.faces.clone();
        for f in removed {
            faces.remove(f);
        }
        for f in &faces {
            for g in f.facets() {
                if !faces.contains(&g) {
                    return Err(ComplexError::FaceNotInComplex(g));
                }
            }
        }
        Ok(Self::from_closed_set(faces, self.symbols.clone()))
    }

    /// Subcomplex generated by the given faces of `self`, keeping the symbol table.
    pub fn subcomplex<I: IntoIterator<Item = Face>>(&self, generators: I) -> Complex {
        let mut c = Complex::from_generators(generators);
        c.set_symbols(self.symbols.clone());
        c
    }

    /// Union of two complexes over the same id space (symbols taken from `self`).
    pub fn union(&self, other: &Complex) -> Complex {
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().cloned());
        Self::from_closed_set(faces, self.symbols.clone())
    }

    /// Disjoint union: `other`'s ids are shifted past `self`'s id space.
    ///
    /// Names from `other` that clash with names in `self` get a `'` suffix.
    pub fn disjoint_union(&self, other: &Complex) -> Complex {
        self.disjoint_union_prefixed(other, "").0
    }

    /// Disjoint union that prefixes every name of `other`; returns the id offset.
    pub fn disjoint_union_prefixed(&self, other: &Complex, prefix: &str) -> (Complex, u32) {
        let offset = self.id_bound() as u32;
        let mut symbols = self.symbols.clone();
        for i in 0..other.id_bound() {
            let name = other.symbols.name(VertexId(i as u32)).map(|n| {
                let mut candidate = format!("{prefix}{n}");
                while symbols.lookup(&candidate).is_some() {
                    candidate.push('\'');
                }
                candidate
            });
            symbols.push(name).expect("names deduplicated above");
        }
        let mut faces = self.faces.clone();
        faces.extend(other.faces.iter().map(|f| {
            Face::from_sorted_unchecked(
                f.vertices()
                    .iter()
                    .map(|v| VertexId(v.0 + offset))
                    .collect(),
            )
        }));
        (Self::from_closed_set(faces, symbols), offset)
    }

    /// `K(ω₁ = η₁, …)`: identifies vertices along the pairing bijections.
    pub fn glue(&self, pairing: &FacePairing) -> Result<Complex, ComplexError> {
        Ok(self.glue_with_map(pairing)?.0)
    }

    /// Gluing that also returns the old-id → new-id map (indexed by old id).
    ///
    /// Each identification class is represented by its smallest id; ids are
    /// then renumbered densely in increasing order, so a class whose
    /// representative is below every removed id keeps its id.
    pub fn glue_with_map(
        &self,
        pairing: &FacePairing,
    ) -> Result<(Complex, Vec<VertexId>), ComplexError> {
        let n = self.id_bound();
        let mut uf = UnionFind::new(n);
        for (a, b, bij) in pairing.pairs() {
            self.require(a)?;
            self.require(b)?;
            for &(x, y) in bij {
                uf.union(x.index(), y.index());
            }
        }
        // representative = smallest id of its class
        let mut rep_min = vec![usize::MAX; n];
        for i in 0..n {
            let r = uf.find(i);
            rep_min[r] = rep_min[r].min(i);
        }
        let mut new_id = vec![u32::MAX; n];
        let mut symbols = SymbolTable::new();
        for i in 0..n {
            let r = uf.find(i);
            if rep_min[r] == i {
                new_id[i] = symbols.len() as u32;
                symbols
                    .push(self.symbols.name(VertexId(i as u32)).map(str::to_string))
                    .expect("names unique in source");
            }
        }
        let map: Vec<VertexId> = (0..n)
            .map(|i| VertexId(new_id[rep_min[uf.find(i)]]))
            .collect();
        let mut faces = BTreeSet::new();
        for f in &self.faces {
            let g = f
                .map(|v| map[v.index()])
                .map_err(|_| ComplexError::Gluing(f.clone()))?;
            faces.insert(g);
        }
        Ok((Self::from_closed_set(faces, symbols), map))
    }

    /// Suspension with two fresh apices; returns the complex and `(a, b)`.
    pub fn suspension(&self) -> (Complex, VertexId, VertexId) {
        let mut symbols = self.symbols.clone();
        let fresh = |symbols: &SymbolTable, base: &str| {
            let mut name = base.to_string();
            while symbols.lookup(&name).is_some() {
                name.push('\'');
            }
            name
        };
        let a_name = fresh(&symbols, "a");
        let a = symbols.push(Some(a_name)).unwrap();
        let b_name = fresh(&symbols, "b");
        let b = symbols.push(Some(b_name)).unwrap();
        let mut faces = self.faces.clone();
        faces.insert(Face::from_sorted_unchecked(vec![a]));
        faces.insert(Face::from_sorted_unchecked(vec![b]));
        for f in &self.faces {
            faces.insert(f.with_vertex(a));
            faces.insert(f.with_vertex(b));
        }
        (Self::from_closed_set(faces, symbols), a, b)
    }

    /// SHA-256 over the sorted maximal faces.
    pub fn canonical_digest(&self) -> Digest {
        digest_of_maximal(self.maximal.iter())
    }

    /// Face sets compared through vertex names instead of ids.
    pub fn same_named_faces(&self, other: &Complex) -> bool {
        if self.len() != other.len() {
            return false;
        }
        let names = |c: &Complex| -> HashSet<Vec<String>> {
            c.faces
                .iter()
                .map(|f| {
                    let mut t: Vec<String> = f.vertices().iter().map(|&v| c.token(v)).collect();
                    t.sort();
                    t
                })
                .collect()
        };
        names(self) == names(other)
    }

    /// Checks the closure and maximal-face invariants (used by tests).
    pub fn check_invariants(&self) -> bool {
        let closed = self
            .faces
            .iter()
            .all(|f| f.facets().all(|g| self.faces.contains(&g)));
        closed && self.maximal == compute_maximal(&self.faces)
    }
}

/// Digest of a maximal-face list given in sorted order.
pub(crate) fn digest_of_maximal<'a, I: Iterator<Item = &'a Face>>(maximal: I) -> Digest {
    let mut h = Sha256::new();
    h.update(b"dcollapse-complex-v1");
    for f in maximal {
        h.update((f.len() as u32).to_le_bytes());
        for v in f.vertices() {
            h.update(v.0.to_le_bytes());
        }
    }
    let out = h.finalize();
    let mut bytes = [0u8; 32];
    bytes.copy_from_slice(&out);
    Digest(bytes)
}

fn compute_maximal(faces: &BTreeSet<Face>) -> Vec<Face> {
    let mut covered: HashSet<Face> = HashSet::new();
    for f in faces {
        for g in f.facets() {
            covered.insert(g);
        }
    }
    faces
        .iter()
        .filter(|f| !covered.contains(*f))
        .cloned()
        .collect()
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}
