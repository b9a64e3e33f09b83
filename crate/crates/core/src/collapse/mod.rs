//! Elementary d-collapses, deciders, certificate checking, and collapse scripts.

mod certificate;
mod greedy;
pub mod scripts;
mod search;
pub mod state;

pub use certificate::{
    check_certificate, check_certificate_to, is_normal_form, removal_order, removed_faces,
    replay_certificate, replay_on, replay_trace, Certificate, CollapseStep, ReplayedStep,
};
pub use greedy::{greedy_decide, OrderPolicy};
pub use search::{decide, decide_with, ChildOrder, SearchOptions};

use crate::complex::Complex;
use crate::error::{CollapseError, ComplexError};
use crate::face::Face;
use state::CollapseState;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Answer {
    Yes,
    No,
    /// The search budget ran out.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct Verdict {
    pub answer: Answer,
    /// False for a greedy "no" at d ≥ 3, where greedy is incomplete.
    pub exact: bool,
    pub certificate: Option<Certificate>,
    /// Residue with no d-collapsible face reached by a failed greedy run.
    pub stuck_witness: Option<Complex>,
    /// Search nodes expanded (greedy: steps taken).
    pub expansions: u64,
}

impl Verdict {
    pub fn collapsible(&self) -> bool {
        self.answer == Answer::Yes
    }
}

/// dim σ ≤ d−1 and σ has a unique maximal coface.
pub fn is_d_collapsible_face(k: &Complex, sigma: &Face, d: usize) -> Result<bool, ComplexError> {
    Ok(sigma.len() <= d && k.unique_max_coface(sigma)?.is_some())
}

/// `K_σ = K \ [σ, τ(σ)]`.
pub fn elementary_collapse(k: &Complex, sigma: &Face, d: usize) -> Result<Complex, CollapseError> {
    let mut state = CollapseState::new(k, d)?;
    state.collapse(sigma)?;
    Ok(state.to_complex())
}

/// All d-collapsible faces of `k` in lexicographic order.
pub fn collapsible_faces(k: &Complex, d: usize) -> Vec<Face> {
    match CollapseState::new(k, d) {
        Ok(state) => state.collapsible(),
        Err(_) => Vec::new(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(ids: &[u32]) -> Face {
        Face::from_ids(ids)
    }

    fn tetra() -> Complex {
        Complex::from_generators([f(&[1, 2, 3, 4])])
    }

    fn boundary_tetra() -> Complex {
        Complex::from_generators([f(&[1, 2, 3]), f(&[1, 2, 4]), f(&[1, 3, 4]), f(&[2, 3, 4])])
    }

    #[test]
    fn collapsible_face_examples() {
        assert!(is_d_collapsible_face(&tetra(), &f(&[1, 2]), 2).unwrap());
        assert!(!is_d_collapsible_face(&tetra(), &f(&[1, 2, 3]), 2).unwrap());
        assert!(!is_d_collapsible_face(&boundary_tetra(), &f(&[1, 2]), 2).unwrap());
        assert!(is_d_collapsible_face(&tetra(), &f(&[9]), 2).is_err());
    }

    #[test]
    fn elementary_collapse_examples() {
        assert_eq!(
            elementary_collapse(&tetra(), &f(&[1, 2]), 2).unwrap().len(),
            11
        );
        let tri = Complex::from_generators([f(&[1, 2]), f(&[2, 3]), f(&[1, 3])]);
        let r = elementary_collapse(&tri, &f(&[1, 2]), 2).unwrap();
        assert_eq!(r.len(), 5);
        assert!(!r.contains(&f(&[1, 2])));
        let r = elementary_collapse(&tetra(), &f(&[1]), 2).unwrap();
        assert_eq!(r, Complex::from_generators([f(&[2, 3, 4])]));
        assert!(matches!(
            elementary_collapse(&boundary_tetra(), &f(&[1, 2]), 2),
            Err(CollapseError::NotCollapsible { .. })
        ));
    }

    #[test]
    fn collapsible_faces_examples() {
        let k = elementary_collapse(&tetra(), &f(&[1, 2]), 2).unwrap();
        let edges: Vec<Face> = collapsible_faces(&k, 2)
            .into_iter()
            .filter(|f| f.len() == 2)
            .collect();
        assert_eq!(edges, vec![f(&[1, 3]), f(&[1, 4]), f(&[2, 3]), f(&[2, 4])]);
        assert!(collapsible_faces(&boundary_tetra(), 2).is_empty());
        assert!(collapsible_faces(&Complex::empty(), 2).is_empty());
    }
}
