//! Which connections have lost a face along a collapsing of `F`.

use std::collections::HashMap;

use super::build::{ConnectionKind, ReductionOutput};
use crate::collapse::state::{interval_faces, CollapseState};
use crate::collapse::Certificate;
use crate::complex::Complex;
use crate::error::{CertificateError, ReductionError};
use crate::face::Face;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Activation {
    Intact,
    Activated,
}

/// Activated iff some face of the connection's image is missing from `residue`.
pub fn activation_status(
    out: &ReductionOutput,
    residue: &Complex,
    connection: &str,
) -> Result<Activation, ReductionError> {
    let c = out.connection(connection)?;
    Ok(if c.glued.image.iter().all(|f| residue.contains(f)) {
        Activation::Intact
    } else {
        Activation::Activated
    })
}

/// For each connection, the index of the step that first removed one of its faces.
#[derive(Clone, Debug)]
pub struct ActivationTrace {
    pub activated_at: Vec<Option<usize>>,
}

impl ActivationTrace {
    /// Activated after the first `prefix` steps.
    pub fn is_activated(&self, connection: usize, prefix: usize) -> bool {
        self.activated_at[connection].is_some_and(|s| s < prefix)
    }
}

pub fn trace_activation(
    out: &ReductionOutput,
    cert: &Certificate,
) -> Result<ActivationTrace, CertificateError> {
    let mut owners: HashMap<&Face, Vec<usize>> = HashMap::new();
    for (k, c) in out.connections.iter().enumerate() {
        for f in &c.glued.image {
            owners.entry(f).or_default().push(k);
        }
    }
    let mut activated_at = vec![None; out.connections.len()];
    let mut state = CollapseState::new(&out.complex, cert.d)
        .map_err(|source| CertificateError::Step { index: 0, source })?;
    for (i, step) in cert.steps.iter().enumerate() {
        let applied = match &step.expected_tau {
            Some(t) => state.collapse_expecting(&step.sigma, t),
            None => state.collapse(&step.sigma),
        }
        .map_err(|source| CertificateError::Step { index: i, source })?;
        for f in interval_faces(&applied.sigma, &applied.tau) {
            for &k in owners.get(&f).map(Vec::as_slice).unwrap_or(&[]) {
                activated_at[k].get_or_insert(i);
            }
        }
    }
    Ok(ActivationTrace { activated_at })
}

/// Checks, for every prefix before the tidy connection is activated, that
/// no variable has both occurrence connections activated and that each
/// activated `I^i₁` comes with an activated occurrence connection of clause i.
pub fn check_activation_invariants(
    out: &ReductionOutput,
    trace: &ActivationTrace,
) -> Result<(), String> {
    let tidy = trace.activated_at[out.connection_index(ConnectionKind::Tidy)].unwrap_or(usize::MAX);
    let before = |k: usize| trace.activated_at[k].filter(|&s| s < tidy);
    for j in 1..=out.formula.num_vars {
        let pos = before(out.connection_index(ConnectionKind::Occurrence {
            var: j,
            positive: true,
        }));
        let neg = before(out.connection_index(ConnectionKind::Occurrence {
            var: j,
            positive: false,
        }));
        if pos.is_some() && neg.is_some() {
            return Err(format!(
                "both occurrence connections of x{j} activated before the tidy connection"
            ));
        }
    }
    for i in 1..=out.formula.num_clauses() {
        let Some(at) = before(out.connection_index(ConnectionKind::ClauseToMerge { clause: i }))
        else {
            continue;
        };
        let lib: Vec<Face> = out.clause_vars[i - 1]
            .iter()
            .filter_map(|&j| out.clause_liberation(i, j))
            .collect();
        let witnessed = out.connections.iter().enumerate().any(|(k, c)| {
            matches!(c.kind, ConnectionKind::Occurrence { .. })
                && c.glued.gammas.iter().any(|g| lib.contains(g))
                && trace.activated_at[k].is_some_and(|s| s <= at)
        });
        if !witnessed {
            return Err(format!("I{i}.1 activated at step {at} with no occurrence connection of clause {i} activated"));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::check_certificate;
    use crate::reduction::{build_reduction, certificate_from_assignment, parse_dimacs};

    #[test]
    fn satisfying_run_respects_invariants() {
        let f = parse_dimacs("p cnf 4 4\n1 2 3 0\n-1 -2 4 0\n-1 -3 -4 0\n2 -3 4 0\n").unwrap();
        let out = build_reduction(&f, 4).unwrap();
        let rc = certificate_from_assignment(&out, &[false, true, true, false]).unwrap();
        check_certificate(&out.complex, &rc.certificate).unwrap();
        let trace = trace_activation(&out, &rc.certificate).unwrap();
        check_activation_invariants(&out, &trace).unwrap();
        assert!(trace.activated_at.iter().all(Option::is_some));
        assert_eq!(
            activation_status(&out, &out.complex, "T").unwrap(),
            Activation::Intact
        );
        let o_neg1 = out.connection_index(ConnectionKind::Occurrence {
            var: 1,
            positive: false,
        });
        let tidy = out.connection_index(ConnectionKind::Tidy);
        assert!(trace.activated_at[o_neg1] < trace.activated_at[tidy]);
    }
}
