//! The cone triangulation `J` of the d-crosspolytope, its partial barycentric
//! subdivision `H`, and the quotient `C` that glues every boundary facet except
//! the all-positive one.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use crate::complex::{Complex, SymbolTable};
use crate::error::GadgetError;
use crate::face::{Face, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    Plus,
    Minus,
}

/// A vertex of `J`: the origin or one of `±e_i` (axes are 1-based).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum JVertex {
    Origin,
    Signed(usize, Sign),
}

impl JVertex {
    /// Id layout: origin 0, `+e_i` is `i`, `−e_i` is `d + i`.
    pub fn id(self, d: usize) -> VertexId {
        match self {
            JVertex::Origin => VertexId(0),
            JVertex::Signed(i, Sign::Plus) => VertexId(i as u32),
            JVertex::Signed(i, Sign::Minus) => VertexId((d + i) as u32),
        }
    }

    pub fn from_id(id: VertexId, d: usize) -> JVertex {
        let k = id.index();
        match k {
            0 => JVertex::Origin,
            k if k <= d => JVertex::Signed(k, Sign::Plus),
            k => JVertex::Signed(k - d, Sign::Minus),
        }
    }

    pub fn axis(self) -> Option<usize> {
        match self {
            JVertex::Origin => None,
            JVertex::Signed(i, _) => Some(i),
        }
    }
}

impl fmt::Display for JVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            JVertex::Origin => write!(f, "0"),
            JVertex::Signed(i, Sign::Plus) => write!(f, "+{i}"),
            JVertex::Signed(i, Sign::Minus) => write!(f, "-{i}"),
        }
    }
}

/// A vertex of `H`: an unsubdivided vertex of `J` or the barycentre of a
/// subdivided face (given by its `J` ids).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum HVertex {
    Base(JVertex),
    Subdiv(Face),
}

fn check_d(d: usize) -> Result<(), GadgetError> {
    if d < 2 {
        return Err(GadgetError::Domain(format!(
            "d must be at least 2, got {d}"
        )));
    }
    if d > 6 {
        return Err(GadgetError::Domain(format!(
            "d = {d} is too large for explicit construction"
        )));
    }
    Ok(())
}

fn j_symbols(d: usize) -> SymbolTable {
    let mut s = SymbolTable::new();
    for k in 0..=2 * d {
        s.push_named(JVertex::from_id(VertexId(k as u32), d).to_string());
    }
    s
}

/// `J`: maximal faces `{0, s₁e₁, …, s_d e_d}` over all sign vectors.
pub fn build_j(d: usize) -> Result<Complex, GadgetError> {
    check_d(d)?;
    let mut gens = Vec::with_capacity(1 << d);
    for mask in 0u32..(1 << d) {
        let mut vs = vec![JVertex::Origin.id(d)];
        for i in 1..=d {
            let sign = if mask & (1 << (i - 1)) == 0 {
                Sign::Plus
            } else {
                Sign::Minus
            };
            vs.push(JVertex::Signed(i, sign).id(d));
        }
        gens.push(Face::new(vs)?);
    }
    Ok(Complex::from_generators_named(gens, j_symbols(d)))
}

/// ϑ = `{0, e₁, …, e_d}` in `J` ids.
pub fn theta(d: usize) -> Face {
    Face::new((0..=d as u32).map(VertexId).collect()).expect("nonempty")
}

fn in_theta(f: &Face, d: usize) -> bool {
    f.vertices().iter().all(|v| v.index() <= d)
}

/// `H` together with the meaning of each of its vertex ids.
#[derive(Clone, Debug)]
pub struct HComplex {
    pub d: usize,
    pub complex: Complex,
    pub vertices: Vec<HVertex>,
}

/// Faces `{σ₁, …, σ_k} ∪ τ` with `σ₁ ⊋ … ⊋ σ_k ⊋ τ`, `σ_i ∈ J \ 2^ϑ`, `τ ⊆ ϑ`.
pub fn build_h(d: usize) -> Result<HComplex, GadgetError> {
    chain_triangulation(d, |f| !in_theta(f, d))
}

/// Like [`build_h`], but subdivides only faces through the origin and the
/// boundary facets other than the all-positive one.
///
/// Lower-dimensional boundary faces are glued onto faces of ϑ by the
/// quotient, so they must stay unsubdivided for the glued facets to carry
/// matching triangulations. For d = 2 this equals [`build_h`].
pub fn build_h_compatible(d: usize) -> Result<HComplex, GadgetError> {
    chain_triangulation(d, |f| {
        !in_theta(f, d) && (f.contains_vertex(VertexId(0)) || f.len() == d)
    })
}

/// Iterated stellar subdivision of `J` at the upward-closed family `subdivided`,
/// largest faces first.
fn chain_triangulation(
    d: usize,
    subdivided: impl Fn(&Face) -> bool,
) -> Result<HComplex, GadgetError> {
    let j = build_j(d)?;
    let mut vertices: Vec<HVertex> = Vec::new();
    let mut base_id: HashMap<VertexId, VertexId> = HashMap::new();
    for v in j.vertices() {
        if !subdivided(&Face::new(vec![v])?) {
            base_id.insert(v, VertexId(vertices.len() as u32));
            vertices.push(HVertex::Base(JVertex::from_id(v, d)));
        }
    }
    let mut subdiv: Vec<Face> = j.faces().filter(|f| subdivided(f)).cloned().collect();
    // larger faces first so chains are generated top-down
    subdiv.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    let mut subdiv_id: HashMap<Face, VertexId> = HashMap::new();
    for f in &subdiv {
        subdiv_id.insert(f.clone(), VertexId(vertices.len() as u32));
        vertices.push(HVertex::Subdiv(f.clone()));
    }

    let mut faces: BTreeSet<Face> = BTreeSet::new();
    // k = 0: every face of J that is left alone
    for tau in j.faces().filter(|f| !subdivided(f)) {
        faces.insert(tau.map(|v| base_id[&v])?);
    }
    // depth-first over strictly decreasing chains
    let mut stack: Vec<(Vec<VertexId>, Face)> = subdiv
        .iter()
        .map(|f| (vec![subdiv_id[f]], f.clone()))
        .collect();
    while let Some((chain, last)) = stack.pop() {
        let base: Vec<VertexId> = last
            .vertices()
            .iter()
            .copied()
            .filter(|v| base_id.contains_key(v))
            .collect();
        for mask in 0u32..(1 << base.len()) {
            let tau: Vec<VertexId> = (0..base.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| base[i])
                .collect();
            if !tau.is_empty() && subdivided(&Face::new(tau.clone())?) {
                continue;
            }
            let mut vs = chain.clone();
            vs.extend(tau.iter().map(|v| base_id[v]));
            faces.insert(Face::new(vs)?);
        }
        for g in &subdiv {
            if g.len() < last.len() && g.is_subset_of(&last) {
                let mut c = chain.clone();
                c.push(subdiv_id[g]);
                stack.push((c, g.clone()));
            }
        }
    }

    let mut symbols = SymbolTable::new();
    for v in &vertices {
        symbols.push_named(h_name(v, d));
    }
    let complex = Complex::from_face_set(faces)?.with_symbols(symbols);
    Ok(HComplex {
        d,
        complex,
        vertices,
    })
}

fn h_name(v: &HVertex, d: usize) -> String {
    match v {
        HVertex::Base(j) => format!("b{j}"),
        HVertex::Subdiv(f) => {
            let parts: Vec<String> = f
                .vertices()
                .iter()
                .map(|&x| JVertex::from_id(x, d).to_string())
                .collect();
            format!("s{}", parts.join(""))
        }
    }
}

/// Equivalence class of an `H` vertex under the boundary gluing.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum QuotientClass {
    Origin,
    /// `e_i` together with the barycentre of `{−e_i}`.
    Axis(usize),
    /// Barycentres of origin-free faces with this axis set (size ≥ 2).
    AxisSet(Vec<usize>),
    /// Barycentres of faces containing the origin are never merged.
    Interior(Face),
}

impl QuotientClass {
    pub fn of(v: &HVertex, d: usize) -> QuotientClass {
        match v {
            HVertex::Base(JVertex::Origin) => QuotientClass::Origin,
            HVertex::Base(JVertex::Signed(i, _)) => QuotientClass::Axis(*i),
            HVertex::Subdiv(f) => {
                if f.contains_vertex(VertexId(0)) {
                    return QuotientClass::Interior(f.clone());
                }
                let mut axes: Vec<usize> = f
                    .vertices()
                    .iter()
                    .filter_map(|&x| JVertex::from_id(x, d).axis())
                    .collect();
                axes.sort_unstable();
                if axes.len() == 1 {
                    QuotientClass::Axis(axes[0])
                } else {
                    QuotientClass::AxisSet(axes)
                }
            }
        }
    }

    fn name(&self, d: usize) -> String {
        match self {
            QuotientClass::Origin => "o".to_string(),
            QuotientClass::Axis(i) => format!("e{i}"),
            QuotientClass::AxisSet(axes) => {
                let parts: Vec<String> = axes.iter().map(|a| a.to_string()).collect();
                format!("a{}", parts.join("."))
            }
            QuotientClass::Interior(f) => h_name(&HVertex::Subdiv(f.clone()), d),
        }
    }
}

/// The quotient connector `C(ρ)` with ρ = ⟨{e₁, …, e_d}⟩.
#[derive(Clone, Debug)]
pub struct QuotientC {
    pub d: usize,
    pub complex: Complex,
    pub rho: Face,
    pub classes: Vec<QuotientClass>,
}

pub fn quotient_c(d: usize) -> Result<QuotientC, GadgetError> {
    let h = build_h_compatible(d)?;
    let mut class_id: HashMap<QuotientClass, VertexId> = HashMap::new();
    let mut classes: Vec<QuotientClass> = Vec::new();
    let mut map: Vec<VertexId> = Vec::with_capacity(h.vertices.len());
    for v in &h.vertices {
        let c = QuotientClass::of(v, d);
        let id = *class_id.entry(c.clone()).or_insert_with(|| {
            classes.push(c);
            VertexId(classes.len() as u32 - 1)
        });
        map.push(id);
    }
    let mut faces = BTreeSet::new();
    for f in h.complex.faces() {
        let img = f
            .map(|v| map[v.index()])
            .map_err(|_| GadgetError::Quotient(h.complex.face_tokens(f)))?;
        faces.insert(img);
    }
    let mut symbols = SymbolTable::new();
    for c in &classes {
        symbols.push_named(c.name(d));
    }
    let complex = Complex::from_face_set(faces)?.with_symbols(symbols);
    let rho = Face::new((1..=d).map(|i| class_id[&QuotientClass::Axis(i)]).collect())?;
    if !complex.contains(&rho) {
        return Err(GadgetError::Construction(
            "ρ is not a face of the quotient".into(),
        ));
    }
    Ok(QuotientC {
        d,
        complex,
        rho,
        classes,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn j_counts() {
        let j2 = build_j(2).unwrap();
        assert_eq!(
            (j2.vertex_count(), j2.maximal().len(), j2.len()),
            (5, 4, 17)
        );
        let j3 = build_j(3).unwrap();
        assert_eq!(
            (j3.vertex_count(), j3.maximal().len(), j3.len()),
            (7, 8, 53)
        );
        assert!(j3.maximal().iter().all(|m| m.contains_vertex(VertexId(0))));
        assert!(build_j(1).is_err());
    }

    #[test]
    fn h_contains_a_subdivided_face_and_has_dimension_d() {
        let h = build_h(2).unwrap();
        let s_big = HVertex::Subdiv(
            Face::new(vec![
                JVertex::Origin.id(2),
                JVertex::Signed(1, Sign::Plus).id(2),
                JVertex::Signed(2, Sign::Minus).id(2),
            ])
            .unwrap(),
        );
        let s_edge = HVertex::Subdiv(
            Face::new(vec![
                JVertex::Signed(1, Sign::Plus).id(2),
                JVertex::Signed(2, Sign::Minus).id(2),
            ])
            .unwrap(),
        );
        let base = HVertex::Base(JVertex::Signed(1, Sign::Plus));
        let id = |v: &HVertex| VertexId(h.vertices.iter().position(|w| w == v).unwrap() as u32);
        let face = Face::new(vec![id(&s_big), id(&s_edge), id(&base)]).unwrap();
        assert!(h.complex.contains(&face));
        assert_eq!(h.complex.dim(), Some(2));
        assert_eq!(build_h(3).unwrap().complex.dim(), Some(3));
    }

    #[test]
    fn h_subdiv_base_edges_follow_containment() {
        let h = build_h(2).unwrap();
        for (si, sv) in h.vertices.iter().enumerate() {
            let HVertex::Subdiv(sigma) = sv else { continue };
            for (bi, bv) in h.vertices.iter().enumerate() {
                let HVertex::Base(j) = bv else { continue };
                let edge = Face::new(vec![VertexId(si as u32), VertexId(bi as u32)]).unwrap();
                assert_eq!(h.complex.contains(&edge), sigma.contains_vertex(j.id(2)));
            }
        }
    }

    #[test]
    fn compatible_subdivision_agrees_in_the_plane() {
        let (a, b) = (build_h(2).unwrap(), build_h_compatible(2).unwrap());
        // only the labels of ±e_i differ: a subdivided vertex is the vertex itself
        assert_eq!(a.complex.f_vector(), b.complex.f_vector());
        assert!(b
            .vertices
            .contains(&HVertex::Base(JVertex::Signed(1, Sign::Minus))));
        let c = build_h_compatible(3).unwrap();
        assert_eq!(c.complex.dim(), Some(3));
    }

    #[test]
    fn quotient_rho_is_a_ridge() {
        for d in [2, 3] {
            let c = quotient_c(d).unwrap();
            assert_eq!(c.rho.dim(), d - 1);
            assert_eq!(c.complex.dim(), Some(d));
            assert!(c.complex.check_invariants());
        }
    }
}
