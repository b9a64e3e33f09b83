//! A d-collapsing of `F` built from a satisfying assignment.

use super::build::{ConnectionKind, ReductionOutput};
use super::cnf::literal_true;
use crate::collapse::{removal_order, Certificate};
use crate::error::ReductionError;
use crate::face::Face;

/// A named stretch of the certificate: steps `start..end`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Phase {
    pub label: String,
    pub start: usize,
    pub end: usize,
}

#[derive(Clone, Debug)]
pub struct ReductionCertificate {
    pub certificate: Certificate,
    pub phases: Vec<Phase>,
}

struct Builder {
    cert: Certificate,
    phases: Vec<Phase>,
}

impl Builder {
    fn phase(&mut self, label: String, steps: Certificate) {
        let start = self.cert.len();
        self.cert.extend(steps);
        self.phases.push(Phase {
            label,
            start,
            end: self.cert.len(),
        });
    }
}

/// Concatenates the gadget and connection scripts in this order:
///
/// 1. each variable frees the initial face of its true side and runs that
///    occurrence connection;
/// 2. each clause collapses the liberation face of its first true literal and
///    runs `I^i₁`;
/// 3. merge gadgets `i = 2..n` collapse both liberation faces and run `I^i₂`,
///    the last one running the tidy connection;
/// 4. each variable gadget shrinks to its false-side initial face, runs the
///    other occurrence connection and drops the boundary left behind;
/// 5. clause and merge gadgets are dissolved.
pub fn certificate_from_assignment(
    out: &ReductionOutput,
    assignment: &[bool],
) -> Result<ReductionCertificate, ReductionError> {
    let f = &out.formula;
    if assignment.len() != f.num_vars {
        return Err(ReductionError::AssignmentLength {
            expected: f.num_vars,
            found: assignment.len(),
        });
    }
    if let Some(i) = f.first_unsatisfied(assignment) {
        return Err(ReductionError::Unsatisfied(i + 1));
    }
    let d = out.d;
    let n = f.num_clauses();
    let conn_cert = |kind: ConnectionKind| {
        out.connections[out.connection_index(kind)]
            .glued
            .certificate
            .clone()
    };
    let mut b = Builder {
        cert: Certificate::new(d),
        phases: Vec::new(),
    };

    for (j, v) in out.variables.iter().enumerate() {
        let side = if assignment[j] { 0 } else { 1 };
        let mut steps = v.liberation_certificate(&v.bases[side][0]);
        steps.extend(conn_cert(ConnectionKind::Occurrence {
            var: j + 1,
            positive: assignment[j],
        }));
        b.phase(format!("v{}.free", j + 1), steps);
    }

    let mut used_slot = Vec::with_capacity(n);
    for (i, clause) in f.clauses.iter().enumerate() {
        let lit = *clause
            .iter()
            .find(|&&l| literal_true(l, assignment))
            .expect("clause satisfied");
        let var = lit.unsigned_abs() as usize;
        let slot = out.clause_vars[i]
            .iter()
            .position(|&v| v == var)
            .expect("variable in clause");
        used_slot.push(slot);
        let g = &out.clauses[i];
        let mut steps = g.liberation_certificate(&g.bases[0][slot]);
        steps.extend(conn_cert(ConnectionKind::ClauseToMerge { clause: i + 1 }));
        b.phase(format!("g{}.free", i + 1), steps);
    }

    for i in 2..=n {
        let m = &out.merges[i - 2];
        let mut steps = m.liberation_certificate(&m.bases[0][0]);
        let next = if i < n {
            ConnectionKind::MergeToMerge { clause: i }
        } else {
            ConnectionKind::Tidy
        };
        steps.extend(conn_cert(next));
        b.phase(format!("m{i}.free"), steps);
    }

    for (j, v) in out.variables.iter().enumerate() {
        let (used, other) = if assignment[j] { (0, 1) } else { (1, 0) };
        let keep = &v.initial[other];
        let mut steps = v.residue_certificate(&v.bases[used][0], Some(keep));
        steps.extend(conn_cert(ConnectionKind::Occurrence {
            var: j + 1,
            positive: !assignment[j],
        }));
        let boundary: Vec<Face> = keep.subfaces().filter(|s| s != keep).collect();
        for s in removal_order(boundary.iter()) {
            steps.push_with_tau(s.clone(), s);
        }
        b.phase(format!("v{}.dissolve", j + 1), steps);
    }

    for (i, g) in out.clauses.iter().enumerate() {
        b.phase(
            format!("g{}.dissolve", i + 1),
            g.residue_certificate(&g.bases[0][used_slot[i]], None),
        );
    }
    for (k, m) in out.merges.iter().enumerate() {
        b.phase(
            format!("m{}.dissolve", k + 2),
            m.residue_certificate(&m.bases[0][0], None),
        );
    }
    Ok(ReductionCertificate {
        certificate: b.cert,
        phases: b.phases,
    })
}
