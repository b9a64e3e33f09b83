use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::state::CollapseState;
use super::{Answer, Certificate, Verdict};
use crate::complex::Complex;
use crate::face::Face;

/// Which d-collapsible face greedy picks next.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrderPolicy {
    /// Smallest face in lexicographic order.
    Lexicographic,
    /// Uniform choice driven by a seeded ChaCha8 stream.
    SeededRandom(u64),
    /// The first listed face that is currently collapsible, else lexicographic.
    Prioritized(Vec<Face>),
}

/// Repeatedly collapses a d-collapsible face until nothing is left or none exists.
///
/// For d ≤ 2 the answer is exact whatever the policy. For d ≥ 3 a "no" is
/// reported with `exact = false`.
pub fn greedy_decide(k: &Complex, d: usize, order: &OrderPolicy) -> Verdict {
    let Ok(mut state) = CollapseState::tracked(k, d) else {
        return Verdict {
            answer: Answer::No,
            exact: true,
            certificate: None,
            stuck_witness: Some(k.clone()),
            expansions: 0,
        };
    };
    let mut rng = match order {
        OrderPolicy::SeededRandom(seed) => Some(ChaCha8Rng::seed_from_u64(*seed)),
        _ => None,
    };
    let mut cert = Certificate::new(d);
    loop {
        if state.is_empty() {
            let steps = cert.len() as u64;
            return Verdict {
                answer: Answer::Yes,
                exact: true,
                certificate: Some(cert),
                stuck_witness: None,
                expansions: steps,
            };
        }
        let set = state.collapsible_set();
        let pick = match order {
            OrderPolicy::Lexicographic => set.iter().next().cloned(),
            OrderPolicy::SeededRandom(_) => {
                if set.is_empty() {
                    None
                } else {
                    let i = rng.as_mut().unwrap().gen_range(0..set.len());
                    set.iter().nth(i).cloned()
                }
            }
            OrderPolicy::Prioritized(list) => list
                .iter()
                .find(|f| set.contains(*f))
                .or_else(|| set.iter().next())
                .cloned(),
        };
        let Some(sigma) = pick else {
            let steps = cert.len() as u64;
            return Verdict {
                answer: Answer::No,
                exact: d <= 2,
                certificate: None,
                stuck_witness: Some(state.to_complex()),
                expansions: steps,
            };
        };
        let applied = state.collapse(&sigma).expect("tracked face is collapsible");
        cert.push_with_tau(applied.sigma, applied.tau);
    }
}
