//! Full simplices with distinguished initial, base, liberation and attaching faces.

use crate::collapse::scripts::superface_steps;
use crate::collapse::Certificate;
use crate::complex::{Complex, SymbolTable};
use crate::error::GadgetError;
use crate::face::{Face, VertexId};
use crate::format::Registry;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GadgetKind {
    Variable,
    Clause,
    Merge,
}

impl GadgetKind {
    pub fn parse(s: &str) -> Option<GadgetKind> {
        match s {
            "var" | "variable" => Some(GadgetKind::Variable),
            "clause" => Some(GadgetKind::Clause),
            "merge" => Some(GadgetKind::Merge),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct SimplicialGadget {
    pub kind: GadgetKind,
    pub d: usize,
    pub complex: Complex,
    pub vertex_set: Face,
    pub initial: Vec<Face>,
    /// `bases[i]` are the bases of `initial[i]`.
    pub bases: Vec<Vec<Face>>,
    pub liberation: Vec<Face>,
    pub attaching: Vec<Face>,
}

fn ids(range: impl IntoIterator<Item = usize>) -> Face {
    Face::new(range.into_iter().map(|i| VertexId(i as u32)).collect()).expect("distinct ids")
}

fn check_d(d: usize) -> Result<(), GadgetError> {
    if d < 3 {
        return Err(GadgetError::Domain(format!(
            "simplicial gadgets need d >= 3, got {d}"
        )));
    }
    Ok(())
}

impl SimplicialGadget {
    fn assemble(
        kind: GadgetKind,
        d: usize,
        names: Vec<String>,
        initial: Vec<Face>,
        bases: Vec<Vec<Face>>,
    ) -> SimplicialGadget {
        let vertex_set = ids(0..names.len());
        let mut symbols = SymbolTable::new();
        for n in names {
            symbols.push_named(n);
        }
        let complex = Complex::from_generators_named([vertex_set.clone()], symbols);
        let mut liberation = Vec::new();
        let mut attaching = Vec::new();
        for f in complex.faces_of_dim(d - 1) {
            if initial.contains(f) {
                continue;
            }
            if bases.iter().flatten().any(|b| b.is_subset_of(f)) {
                liberation.push(f.clone());
            } else {
                attaching.push(f.clone());
            }
        }
        SimplicialGadget {
            kind,
            d,
            complex,
            vertex_set,
            initial,
            bases,
            liberation,
            attaching,
        }
    }

    /// Liberation faces containing `base`, in lexicographic order.
    pub fn liberation_of(&self, base: &Face) -> Vec<Face> {
        self.liberation
            .iter()
            .filter(|l| base.is_subset_of(l))
            .cloned()
            .collect()
    }

    /// The initial face that `base` belongs to.
    pub fn initial_of(&self, base: &Face) -> Option<&Face> {
        self.bases
            .iter()
            .position(|bs| bs.contains(base))
            .map(|i| &self.initial[i])
    }

    /// Collapses the liberation faces containing `base`, leaving its initial face maximal.
    pub fn liberation_certificate(&self, base: &Face) -> Certificate {
        Certificate::from_faces(self.d, self.liberation_of(base))
    }

    /// From the gadget with the liberation faces of `base` and the initial face
    /// removed, collapses everything except `2^keep` (everything when `keep` is
    /// `None`). `keep` must avoid the first vertex of `base`.
    pub fn residue_certificate(&self, base: &Face, keep: Option<&Face>) -> Certificate {
        residue_steps(&self.vertex_set, base, keep, self.d)
    }

    /// The same gadget with every vertex id increased by `offset`.
    pub fn shifted(&self, offset: u32) -> SimplicialGadget {
        let shift = |f: &Face| f.map(|v| VertexId(v.0 + offset)).expect("injective");
        let mut symbols = SymbolTable::new();
        if offset > 0 {
            symbols.reserve_through(VertexId(offset - 1));
        }
        for i in 0..self.complex.id_bound() {
            let name = self
                .complex
                .symbols()
                .name(VertexId(i as u32))
                .map(str::to_string);
            symbols.push(name).expect("names unique");
        }
        let vertex_set = shift(&self.vertex_set);
        SimplicialGadget {
            kind: self.kind,
            d: self.d,
            complex: Complex::from_generators_named([vertex_set.clone()], symbols),
            vertex_set,
            initial: self.initial.iter().map(shift).collect(),
            bases: self
                .bases
                .iter()
                .map(|bs| bs.iter().map(shift).collect())
                .collect(),
            liberation: self.liberation.iter().map(shift).collect(),
            attaching: self.attaching.iter().map(shift).collect(),
        }
    }

    pub fn registry(&self) -> Registry {
        let mut r = Registry::new();
        let sides = |i: usize| match (self.kind, i) {
            (GadgetKind::Variable, 0) => "+",
            (GadgetKind::Variable, _) => "-",
            _ => "",
        };
        for (i, iota) in self.initial.iter().enumerate() {
            r.insert(format!("iota{}", sides(i)), iota.clone());
            for (k, b) in self.bases[i].iter().enumerate() {
                let tag = if self.bases[i].len() == 1 {
                    format!("beta{}", sides(i))
                } else {
                    format!("beta{}", k + 1)
                };
                r.insert(tag, b.clone());
            }
        }
        for (k, l) in self.liberation.iter().enumerate() {
            r.insert(format!("lambda{}", k + 1), l.clone());
        }
        for (k, a) in self.attaching.iter().enumerate() {
            r.insert(format!("alpha{}", k + 1), a.clone());
        }
        r
    }
}

/// Removes `base`, then the faces through its first vertex `v`, then the
/// vertices of `vertex_set \ (keep ∪ {v})` one at a time.
pub(crate) fn residue_steps(
    vertex_set: &Face,
    base: &Face,
    keep: Option<&Face>,
    d: usize,
) -> Certificate {
    let v = base.vertices()[0];
    let mut cert = Certificate::new(d);
    cert.push_with_tau(base.clone(), base.clone());
    let single = Face::new(vec![v]).expect("one vertex");
    cert.extend(superface_steps(&single, base, vertex_set, d));
    for &u in vertex_set.vertices() {
        if u == v || keep.is_some_and(|k| k.contains_vertex(u)) {
            continue;
        }
        cert.push(Face::new(vec![u]).expect("one vertex"));
    }
    cert
}

/// Vertices `p+, q+1, …, q+(d−1), p−, q−1, …`; initial faces ι± with bases β± = the q's.
pub fn build_variable_gadget(d: usize) -> Result<SimplicialGadget, GadgetError> {
    check_d(d)?;
    let mut names = Vec::with_capacity(2 * d);
    for side in ["+", "-"] {
        names.push(format!("p{side}"));
        for i in 1..d {
            names.push(format!("q{side}{i}"));
        }
    }
    let initial = vec![ids(0..d), ids(d..2 * d)];
    let bases = vec![vec![ids(1..d)], vec![ids(d + 1..2 * d)]];
    Ok(SimplicialGadget::assemble(
        GadgetKind::Variable,
        d,
        names,
        initial,
        bases,
    ))
}

/// Vertices `p1, …, pd, q`; ι = the p's with bases `ι \ {p_k}` for k = 1, 2, 3.
pub fn build_clause_gadget(d: usize) -> Result<SimplicialGadget, GadgetError> {
    check_d(d)?;
    let mut names: Vec<String> = (1..=d).map(|i| format!("p{i}")).collect();
    names.push("q".into());
    let iota = ids(0..d);
    let bases = (0..3)
        .map(|k| iota.without_vertex(VertexId(k as u32)).expect("d >= 3"))
        .collect();
    Ok(SimplicialGadget::assemble(
        GadgetKind::Clause,
        d,
        names,
        vec![iota],
        vec![bases],
    ))
}

/// Vertices `p1, …, pd, q, r`; ι = the p's with the single base `ι \ {p1}`.
pub fn build_merge_gadget(d: usize) -> Result<SimplicialGadget, GadgetError> {
    check_d(d)?;
    let mut names: Vec<String> = (1..=d).map(|i| format!("p{i}")).collect();
    names.push("q".into());
    names.push("r".into());
    let iota = ids(0..d);
    let base = iota.without_vertex(VertexId(0)).expect("d >= 3");
    Ok(SimplicialGadget::assemble(
        GadgetKind::Merge,
        d,
        names,
        vec![iota],
        vec![vec![base]],
    ))
}

pub fn build_gadget(kind: GadgetKind, d: usize) -> Result<SimplicialGadget, GadgetError> {
    match kind {
        GadgetKind::Variable => build_variable_gadget(d),
        GadgetKind::Clause => build_clause_gadget(d),
        GadgetKind::Merge => build_merge_gadget(d),
    }
}
