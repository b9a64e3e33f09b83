use std::collections::BTreeSet;

use super::cnf::CnfFormula;
use crate::complex::{Complex, SymbolTable};
use crate::error::ReductionError;
use crate::face::Face;
use crate::format::Registry;
use crate::gadgets::{
    build_clause_gadget, build_merge_gadget, build_variable_gadget, glue_connectors, ConnectorSpec,
    GluedConnector, SimplicialGadget,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ConnectionKind {
    /// `O±_j`: from ι±_j to the clause liberation faces of the matching literals.
    Occurrence { var: usize, positive: bool },
    /// `I^i₁`: from ι^i to λ∘₂² (i = 1) or λ∘₁^i (i ≥ 2).
    ClauseToMerge { clause: usize },
    /// `I^i₂`: from ι∘^i to λ∘₂^{i+1}.
    MergeToMerge { clause: usize },
    /// `T`: from ι∘ⁿ to every attaching face.
    Tidy,
}

impl ConnectionKind {
    pub fn id(&self) -> String {
        match self {
            ConnectionKind::Occurrence {
                var,
                positive: true,
            } => format!("O+{var}"),
            ConnectionKind::Occurrence {
                var,
                positive: false,
            } => format!("O-{var}"),
            ConnectionKind::ClauseToMerge { clause } => format!("I{clause}.1"),
            ConnectionKind::MergeToMerge { clause } => format!("I{clause}.2"),
            ConnectionKind::Tidy => "T".to_string(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct Connection {
    pub kind: ConnectionKind,
    pub glued: GluedConnector,
}

impl Connection {
    pub fn id(&self) -> String {
        self.kind.id()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReductionStats {
    pub num_vars: usize,
    pub num_clauses: usize,
    pub d: usize,
    pub total_faces: usize,
    pub f_vector: Vec<usize>,
    /// `(connection id, t)` in construction order.
    pub connection_t: Vec<(String, usize)>,
}

#[derive(Clone, Debug)]
pub struct ReductionOutput {
    pub d: usize,
    pub formula: CnfFormula,
    pub complex: Complex,
    pub registry: Registry,
    /// `variables[j - 1]` is `V_j`.
    pub variables: Vec<SimplicialGadget>,
    /// `clauses[i - 1]` is `G^i`.
    pub clauses: Vec<SimplicialGadget>,
    /// `merges[i - 2]` is `M^i`.
    pub merges: Vec<SimplicialGadget>,
    /// Sorted variables of each clause; slot k of `G^i` belongs to `clause_vars[i - 1][k]`.
    pub clause_vars: Vec<[usize; 3]>,
    pub connections: Vec<Connection>,
}

impl ReductionOutput {
    pub fn connection(&self, id: &str) -> Result<&Connection, ReductionError> {
        self.connections
            .iter()
            .find(|c| c.id() == id)
            .ok_or_else(|| ReductionError::UnknownConnection(id.to_string()))
    }

    pub fn connection_index(&self, kind: ConnectionKind) -> usize {
        self.connections
            .iter()
            .position(|c| c.kind == kind)
            .expect("every connection is built")
    }

    /// `λ^i_j`: the liberation face of `G^i` for variable `x_j`.
    pub fn clause_liberation(&self, clause: usize, var: usize) -> Option<Face> {
        let slot = self.clause_vars[clause - 1]
            .iter()
            .position(|&v| v == var)?;
        let g = &self.clauses[clause - 1];
        g.liberation_of(&g.bases[0][slot]).into_iter().next()
    }

    /// `(λ∘₁^i, λ∘₂^i)`.
    pub fn merge_liberation(&self, clause: usize) -> (Face, Face) {
        let m = &self.merges[clause - 2];
        let lib = m.liberation_of(&m.bases[0][0]);
        (lib[0].clone(), lib[1].clone())
    }

    pub fn stats(&self) -> ReductionStats {
        ReductionStats {
            num_vars: self.formula.num_vars,
            num_clauses: self.formula.num_clauses(),
            d: self.d,
            total_faces: self.complex.len(),
            f_vector: self.complex.f_vector(),
            connection_t: self
                .connections
                .iter()
                .map(|c| (c.id(), c.glued.t))
                .collect(),
        }
    }
}

/// Builds the complex `F` of a 3-CNF formula; d-collapsible iff the formula is satisfiable.
pub fn build_reduction(formula: &CnfFormula, d: usize) -> Result<ReductionOutput, ReductionError> {
    if d < 4 {
        return Err(ReductionError::Dimension(d));
    }
    let m = formula.num_vars;
    let n = formula.num_clauses();
    let var_proto = build_variable_gadget(d)?;
    let clause_proto = build_clause_gadget(d)?;
    let merge_proto = build_merge_gadget(d)?;

    let mut symbols = SymbolTable::new();
    let mut generators = Vec::new();
    let mut registry = Registry::new();
    let mut place = |proto: &SimplicialGadget, prefix: String| -> SimplicialGadget {
        let g = proto.shifted(symbols.len() as u32);
        for v in g.vertex_set.vertices() {
            let local = g
                .complex
                .symbols()
                .name(*v)
                .expect("gadget vertices are named");
            symbols.push_named(format!("{prefix}.{local}"));
        }
        generators.push(g.vertex_set.clone());
        registry.extend_prefixed(&format!("{prefix}."), &g.registry());
        g
    };
    let variables: Vec<SimplicialGadget> = (1..=m)
        .map(|j| place(&var_proto, format!("v{j}")))
        .collect();
    let clauses: Vec<SimplicialGadget> = (1..=n)
        .map(|i| place(&clause_proto, format!("g{i}")))
        .collect();
    let merges: Vec<SimplicialGadget> = (2..=n)
        .map(|i| place(&merge_proto, format!("m{i}")))
        .collect();
    let host = Complex::from_generators_named(generators, symbols);

    let clause_vars: Vec<[usize; 3]> = formula
        .clauses
        .iter()
        .map(|c| {
            let mut vs = c.map(|l| l.unsigned_abs() as usize);
            vs.sort_unstable();
            vs
        })
        .collect();

    let mut out = ReductionOutput {
        d,
        formula: formula.clone(),
        complex: Complex::empty(),
        registry,
        variables,
        clauses,
        merges,
        clause_vars,
        connections: Vec::new(),
    };

    let mut kinds = Vec::new();
    let mut specs = Vec::new();
    for j in 1..=m {
        for positive in [true, false] {
            let gammas: Vec<Face> = formula
                .clauses
                .iter()
                .enumerate()
                .filter(|(_, c)| {
                    c.iter()
                        .any(|&l| l.unsigned_abs() as usize == j && (l > 0) == positive)
                })
                .map(|(i, _)| {
                    out.clause_liberation(i + 1, j)
                        .expect("variable occurs in clause")
                })
                .collect();
            let v = &out.variables[j - 1];
            let sigma = v.initial[if positive { 0 } else { 1 }].clone();
            kinds.push(ConnectionKind::Occurrence { var: j, positive });
            specs.push((sigma, gammas));
        }
    }
    for i in 1..=n {
        let gamma = if i == 1 {
            out.merge_liberation(2).1
        } else {
            out.merge_liberation(i).0
        };
        kinds.push(ConnectionKind::ClauseToMerge { clause: i });
        specs.push((out.clauses[i - 1].initial[0].clone(), vec![gamma]));
    }
    for i in 2..n {
        kinds.push(ConnectionKind::MergeToMerge { clause: i });
        specs.push((
            out.merges[i - 2].initial[0].clone(),
            vec![out.merge_liberation(i + 1).1],
        ));
    }
    let attaching: Vec<Face> = out
        .variables
        .iter()
        .chain(out.clauses.iter())
        .chain(out.merges.iter())
        .flat_map(|g| g.attaching.iter().cloned())
        .collect();
    kinds.push(ConnectionKind::Tidy);
    specs.push((out.merges[n - 2].initial[0].clone(), attaching));

    let specs: Vec<ConnectorSpec> = kinds
        .iter()
        .zip(specs)
        .map(|(k, (sigma, gammas))| ConnectorSpec {
            prefix: format!("{}:", k.id()),
            sigma,
            gammas,
        })
        .collect();
    for (k, s) in kinds.iter().zip(&specs) {
        let id = k.id();
        out.registry.insert(format!("{id}.sigma"), s.sigma.clone());
        for (i, g) in s.gammas.iter().enumerate() {
            out.registry
                .insert(format!("{id}.gamma{}", i + 1), g.clone());
        }
    }
    let (complex, glued) = glue_connectors(&host, d, &specs)?;
    out.complex = complex;
    out.connections = kinds
        .into_iter()
        .zip(glued)
        .map(|(kind, glued)| Connection { kind, glued })
        .collect();
    Ok(out)
}

/// Faces of `F` that belong to some gadget simplex.
pub fn gadget_faces(out: &ReductionOutput) -> BTreeSet<Face> {
    out.variables
        .iter()
        .chain(out.clauses.iter())
        .chain(out.merges.iter())
        .flat_map(|g| g.vertex_set.subfaces())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::reduction::cnf::parse_dimacs;

    const FOUR_CLAUSE_FORMULA: &str = "p cnf 4 4\n1 2 3 0\n-1 -2 4 0\n-1 -3 -4 0\n2 -3 4 0\n";

    #[test]
    fn four_clause_formula_structure() {
        let f = parse_dimacs(FOUR_CLAUSE_FORMULA).unwrap();
        let out = build_reduction(&f, 4).unwrap();
        assert_eq!(
            (out.variables.len(), out.clauses.len(), out.merges.len()),
            (4, 4, 3)
        );
        let occ = out
            .connections
            .iter()
            .filter(|c| matches!(c.kind, ConnectionKind::Occurrence { .. }));
        assert_eq!(occ.count(), 8);
        let merge = out.connections.iter().filter(|c| {
            matches!(
                c.kind,
                ConnectionKind::ClauseToMerge { .. } | ConnectionKind::MergeToMerge { .. }
            )
        });
        assert_eq!(merge.count(), 4 + 2);
        assert_eq!(out.connection("T").unwrap().glued.t, 4 * 60 + 4 + 3 * 12);
        // x1 occurs positively once and negatively twice
        assert_eq!(out.connection("O+1").unwrap().glued.t, 1);
        assert_eq!(out.connection("O-1").unwrap().glued.t, 2);
        assert!(out.complex.check_invariants());
        for g in out.variables.iter().chain(&out.clauses).chain(&out.merges) {
            assert!(out.complex.contains(&g.vertex_set));
        }
    }

    #[test]
    fn small_d_rejected() {
        let f = parse_dimacs(FOUR_CLAUSE_FORMULA).unwrap();
        assert!(matches!(
            build_reduction(&f, 3),
            Err(ReductionError::Dimension(3))
        ));
    }
}
