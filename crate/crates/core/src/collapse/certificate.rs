use std::collections::BTreeSet;

use crate::collapse::state::CollapseState;
use crate::complex::Complex;
use crate::error::{CertificateError, CollapseError};
use crate::face::Face;

/// One elementary d-collapse, optionally pinning the expected τ(σ).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollapseStep {
    pub sigma: Face,
    pub expected_tau: Option<Face>,
}

impl CollapseStep {
    pub fn new(sigma: Face) -> Self {
        CollapseStep {
            sigma,
            expected_tau: None,
        }
    }

    pub fn with_tau(sigma: Face, tau: Face) -> Self {
        debug_assert!(sigma.is_subset_of(&tau));
        CollapseStep {
            sigma,
            expected_tau: Some(tau),
        }
    }
}

/// An ordered list of elementary d-collapses.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub d: usize,
    pub steps: Vec<CollapseStep>,
}

impl Certificate {
    pub fn new(d: usize) -> Self {
        Certificate {
            d,
            steps: Vec::new(),
        }
    }

    pub fn from_faces<I: IntoIterator<Item = Face>>(d: usize, faces: I) -> Self {
        Certificate {
            d,
            steps: faces.into_iter().map(CollapseStep::new).collect(),
        }
    }

    pub fn push(&mut self, sigma: Face) {
        self.steps.push(CollapseStep::new(sigma));
    }

    pub fn push_with_tau(&mut self, sigma: Face, tau: Face) {
        self.steps.push(CollapseStep::with_tau(sigma, tau));
    }

    /// Appends `other`'s steps; dimensions must agree.
    pub fn extend(&mut self, other: Certificate) {
        debug_assert_eq!(self.d, other.d);
        self.steps.extend(other.steps);
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn faces(&self) -> impl Iterator<Item = &Face> {
        self.steps.iter().map(|s| &s.sigma)
    }

    /// Drops the expected-τ annotations.
    pub fn without_taus(&self) -> Certificate {
        Certificate::from_faces(self.d, self.faces().cloned())
    }
}

fn apply(
    state: &mut CollapseState,
    index: usize,
    step: &CollapseStep,
) -> Result<(), CertificateError> {
    let res = match &step.expected_tau {
        Some(t) => state.collapse_expecting(&step.sigma, t),
        None => state.collapse(&step.sigma),
    };
    res.map(|_| ())
        .map_err(|source| CertificateError::Step { index, source })
}

/// Replays `cert` on `k` and returns the residue.
///
/// Every step is validated by recomputing τ(σ); no search is involved.
pub fn replay_certificate(k: &Complex, cert: &Certificate) -> Result<Complex, CertificateError> {
    let mut state = CollapseState::new(k, cert.d)
        .map_err(|source| CertificateError::Step { index: 0, source })?;
    replay_on(&mut state, cert)?;
    Ok(state.to_complex())
}

/// Replays `cert` on an existing state.
pub fn replay_on(state: &mut CollapseState, cert: &Certificate) -> Result<(), CertificateError> {
    if cert.d != state.d() {
        return Err(CertificateError::DimensionMismatch {
            expected: state.d(),
            found: cert.d,
        });
    }
    for (i, step) in cert.steps.iter().enumerate() {
        apply(state, i, step)?;
    }
    Ok(())
}

/// Ok iff `cert` is a d-collapsing of `k` to the empty complex.
pub fn check_certificate(k: &Complex, cert: &Certificate) -> Result<(), CertificateError> {
    let rest = replay_certificate(k, cert)?;
    if rest.is_empty() {
        Ok(())
    } else {
        Err(CertificateError::NotEmpty {
            remaining: rest.len(),
        })
    }
}

/// Ok iff `cert` is a d-collapsing of `k` to exactly `target`.
pub fn check_certificate_to(
    k: &Complex,
    cert: &Certificate,
    target: &Complex,
) -> Result<(), CertificateError> {
    let rest = replay_certificate(k, cert)?;
    residue_matches(&rest, target)
}

pub(crate) fn residue_matches(rest: &Complex, target: &Complex) -> Result<(), CertificateError> {
    if rest.face_set() == target.face_set() {
        return Ok(());
    }
    let missing = target.faces().filter(|f| !rest.contains(f)).count();
    Err(CertificateError::WrongResidue {
        remaining: rest.len(),
        missing,
    })
}

/// Every face of a complex of dimension ≤ d−1, ordered so that each is
/// maximal when removed: decreasing size, then lexicographic.
pub fn removal_order<'a, I: IntoIterator<Item = &'a Face>>(faces: I) -> Vec<Face> {
    let mut v: Vec<Face> = faces.into_iter().cloned().collect();
    v.sort_by(|a, b| b.len().cmp(&a.len()).then_with(|| a.cmp(b)));
    v
}

/// Per-step view of a replay: the face, its τ and the dimension class.
#[derive(Clone, Debug)]
pub struct ReplayedStep {
    pub sigma: Face,
    pub tau: Face,
}

/// Replays and records τ for every step.
pub fn replay_trace(
    k: &Complex,
    cert: &Certificate,
) -> Result<Vec<ReplayedStep>, CertificateError> {
    let mut state = CollapseState::new(k, cert.d)
        .map_err(|source| CertificateError::Step { index: 0, source })?;
    let mut out = Vec::with_capacity(cert.len());
    for (i, step) in cert.steps.iter().enumerate() {
        let tau = state
            .check(&step.sigma)
            .map_err(|source| CertificateError::Step { index: i, source })?;
        apply(&mut state, i, step)?;
        out.push(ReplayedStep {
            sigma: step.sigma.clone(),
            tau,
        });
    }
    Ok(out)
}

/// True when every step of dimension d−1 precedes every lower-dimensional
/// step and each lower-dimensional step removes a maximal face.
pub fn is_normal_form(k: &Complex, cert: &Certificate) -> Result<bool, CertificateError> {
    let trace = replay_trace(k, cert)?;
    let mut low_seen = false;
    for s in &trace {
        if s.sigma.len() == cert.d {
            if low_seen {
                return Ok(false);
            }
        } else {
            if s.sigma != s.tau {
                return Ok(false);
            }
            low_seen = true;
        }
    }
    Ok(true)
}

/// Faces removed by a certificate, as a set (used by activation queries).
pub fn removed_faces(k: &Complex, cert: &Certificate) -> Result<BTreeSet<Face>, CertificateError> {
    let rest = replay_certificate(k, cert)?;
    Ok(k.faces().filter(|f| !rest.contains(f)).cloned().collect())
}

impl From<(usize, CollapseError)> for CertificateError {
    fn from((index, source): (usize, CollapseError)) -> Self {
        CertificateError::Step { index, source }
    }
}
