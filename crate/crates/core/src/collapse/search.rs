//! Exhaustive depth-first decision procedure.
//!
//! Only collapses of (d−1)-dimensional faces are branched on. A d-collapsible
//! complex always admits a collapsing that first collapses (d−1)-faces only and
//! then removes lower-dimensional maximal faces, so the search succeeds as soon
//! as no face of dimension ≥ d−1 remains; the tail is appended in
//! [`removal_order`](super::removal_order).

use std::collections::HashSet;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::certificate::removal_order;
use super::state::{Applied, CollapseState};
use super::{Answer, Certificate, Verdict};
use crate::complex::{Complex, Digest};
use crate::face::Face;

/// Order in which sibling branches are explored.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ChildOrder {
    Lexicographic,
    /// Children shuffled by a ChaCha8 stream (verdicts must not depend on it).
    Shuffled(u64),
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Maximum number of node expansions before answering `Unknown`.
    pub budget: u64,
    pub child_order: ChildOrder,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: 10_000_000,
            child_order: ChildOrder::Lexicographic,
        }
    }
}

struct Frame {
    children: Vec<Face>,
    next: usize,
    applied: Option<Applied>,
    digest: Digest,
}

/// Exact decision within `budget` node expansions.
pub fn decide(k: &Complex, d: usize, budget: u64) -> Verdict {
    decide_with(
        k,
        d,
        &SearchOptions {
            budget,
            ..SearchOptions::default()
        },
    )
}

pub fn decide_with(k: &Complex, d: usize, options: &SearchOptions) -> Verdict {
    let no = |expansions| Verdict {
        answer: Answer::No,
        exact: true,
        certificate: None,
        stuck_witness: None,
        expansions,
    };
    let Ok(mut state) = CollapseState::tracked(k, d) else {
        return no(0);
    };
    let mut rng = match options.child_order {
        ChildOrder::Shuffled(seed) => Some(ChaCha8Rng::seed_from_u64(seed)),
        ChildOrder::Lexicographic => None,
    };
    let mut children_of = |state: &CollapseState| -> Vec<Face> {
        let mut c: Vec<Face> = state
            .collapsible_set()
            .iter()
            .filter(|f| f.len() == d)
            .cloned()
            .collect();
        if let Some(rng) = rng.as_mut() {
            c.shuffle(rng);
        }
        c
    };

    let mut failed: HashSet<Digest> = HashSet::new();
    let mut expansions: u64 = 0;
    if state.big_faces() == 0 {
        return success(&state, d, &[], expansions);
    }
    let mut stack = vec![Frame {
        children: children_of(&state),
        next: 0,
        applied: None,
        digest: state.digest(),
    }];
    while let Some(top) = stack.last_mut() {
        if top.next == top.children.len() {
            let frame = stack.pop().unwrap();
            failed.insert(frame.digest);
            if let Some(a) = frame.applied {
                state.undo(a);
            }
            continue;
        }
        let sigma = top.children[top.next].clone();
        top.next += 1;
        let applied = state.collapse(&sigma).expect("child is collapsible");
        if state.big_faces() == 0 {
            let mut path: Vec<&Applied> = stack.iter().filter_map(|f| f.applied.as_ref()).collect();
            path.push(&applied);
            return success(&state, d, &path, expansions);
        }
        let digest = state.digest();
        if failed.contains(&digest) {
            state.undo(applied);
            continue;
        }
        expansions += 1;
        if expansions > options.budget {
            return Verdict {
                answer: Answer::Unknown,
                exact: false,
                certificate: None,
                stuck_witness: None,
                expansions,
            };
        }
        stack.push(Frame {
            children: children_of(&state),
            next: 0,
            applied: Some(applied),
            digest,
        });
    }
    no(expansions)
}

fn success(state: &CollapseState, d: usize, path: &[&Applied], expansions: u64) -> Verdict {
    let mut cert = Certificate::new(d);
    for a in path {
        cert.push_with_tau(a.sigma.clone(), a.tau.clone());
    }
    for f in removal_order(state.faces()) {
        cert.push_with_tau(f.clone(), f);
    }
    Verdict {
        answer: Answer::Yes,
        exact: true,
        certificate: Some(cert),
        stuck_witness: None,
        expansions,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::check_certificate;

    fn f(ids: &[u32]) -> Face {
        Face::from_ids(ids)
    }

    fn boundary_tetra() -> Complex {
        Complex::from_generators([f(&[1, 2, 3]), f(&[1, 2, 4]), f(&[1, 3, 4]), f(&[2, 3, 4])])
    }

    #[test]
    fn boundary_tetra_verdicts() {
        assert_eq!(decide(&boundary_tetra(), 2, 1000).answer, Answer::No);
        let v = decide(&boundary_tetra(), 3, 1000);
        assert_eq!(v.answer, Answer::Yes);
        check_certificate(&boundary_tetra(), v.certificate.as_ref().unwrap()).unwrap();
    }

    #[test]
    fn empty_and_low_dimensional_inputs() {
        assert_eq!(decide(&Complex::empty(), 1, 10).answer, Answer::Yes);
        let tri = Complex::from_generators([f(&[1, 2]), f(&[2, 3]), f(&[1, 3])]);
        let v = decide(&tri, 3, 10);
        assert_eq!(v.answer, Answer::Yes);
        check_certificate(&tri, v.certificate.as_ref().unwrap()).unwrap();
        assert_eq!(decide(&tri, 1, 10).answer, Answer::No);
    }

    #[test]
    fn zero_budget_is_unknown_not_no() {
        // two tetrahedra boundaries sharing nothing need several expansions at d = 3
        let k = boundary_tetra().disjoint_union(&boundary_tetra());
        let v = decide(&k, 3, 0);
        assert_eq!(v.answer, Answer::Unknown);
    }
}
