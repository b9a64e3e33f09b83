//! Explicit collapse sequences for the standard collapsing arguments.

use std::collections::{HashMap, HashSet, VecDeque};

use super::certificate::{removal_order, replay_on, residue_matches};
use super::state::CollapseState;
use super::{Certificate, CollapseStep};
use crate::complex::Complex;
use crate::error::{CertificateError, CollapseError, ScriptError};
use crate::face::Face;
use crate::graph::g_k_graph;

fn step_error(index: usize, source: CollapseError) -> ScriptError {
    ScriptError::Certificate(CertificateError::Step { index, source })
}

/// Steps turning `K_{σ′}` into `K_σ`, where σ ⊆ σ′ and σ is d-collapsible in `K`.
///
/// The chain σ = σ₀ ⊂ σ₁ ⊂ … ⊂ σ_k = σ′ adds the vertices of σ′ \ σ in
/// increasing order. Going from `K_{σ_i}` back to `K_{σ_{i−1}}` collapses
/// `σ_{i−1} ∪ {v}` for each `v ∈ τ(σ) \ σ_i` and finally σ_{i−1} itself.
pub fn script_superface_collapse(
    k: &Complex,
    sigma: &Face,
    sigma_prime: &Face,
    d: usize,
) -> Result<Certificate, ScriptError> {
    if !sigma.is_subset_of(sigma_prime) {
        return Err(ScriptError::Precondition(format!(
            "{sigma} is not a subset of {sigma_prime}"
        )));
    }
    if !k.contains(sigma_prime) {
        return Err(ScriptError::Precondition(format!(
            "{sigma_prime} is not a face"
        )));
    }
    if sigma_prime.len() > d {
        return Err(ScriptError::Precondition(format!(
            "{sigma_prime} has dimension above d-1"
        )));
    }
    let tau = k
        .unique_max_coface(sigma)?
        .ok_or_else(|| ScriptError::Precondition(format!("{sigma} is not collapsible")))?;
    Ok(superface_steps(sigma, sigma_prime, &tau, d))
}

/// The step list of [`script_superface_collapse`] given τ(σ) directly.
pub(crate) fn superface_steps(
    sigma: &Face,
    sigma_prime: &Face,
    tau: &Face,
    d: usize,
) -> Certificate {
    let added = sigma_prime.difference(sigma);
    let mut chain = vec![sigma.clone()];
    for &v in &added {
        chain.push(chain.last().unwrap().with_vertex(v));
    }
    let mut cert = Certificate::new(d);
    for i in (1..chain.len()).rev() {
        let lower = &chain[i - 1];
        let v1 = chain[i].difference(lower)[0];
        let mut top = tau
            .without_vertex(v1)
            .expect("τ strictly contains the chain");
        for v in tau.difference(&chain[i]) {
            let eta = lower.with_vertex(v);
            cert.push_with_tau(eta, top.clone());
            top = top
                .without_vertex(v)
                .expect("τ strictly contains the chain");
        }
        // every other vertex of τ has been split off, so σ_{i−1} is maximal
        cert.push_with_tau(lower.clone(), top);
    }
    cert
}

/// Outcome of [`normalize_certificate`].
#[derive(Clone, Debug)]
pub struct Normalized {
    pub certificate: Certificate,
    /// New length divided by old length (1.0 for an empty input).
    pub growth: f64,
}

/// Rewrites a certificate so that all (d−1)-dimensional collapses come first
/// and only maximal faces of lower dimension are removed afterwards.
///
/// A step collapsing a non-maximal σ of dimension below d−1 is replaced by a
/// collapse of σ′ = σ plus the first vertices of τ(σ) \ σ (up to dimension d−1
/// or up to τ(σ)), followed by the superface script back to `K_σ`. The inserted
/// steps are themselves normalized the same way. Lower-dimensional maximal
/// removals then commute past the (d−1)-dimensional steps.
pub fn normalize_certificate(k: &Complex, cert: &Certificate) -> Result<Normalized, ScriptError> {
    let d = cert.d;
    let mut state = CollapseState::new(k, d).map_err(|e| step_error(0, e))?;
    replay_on(&mut state.clone(), cert)?;
    let mut queue: VecDeque<Face> = cert.faces().cloned().collect();
    let mut out: Vec<(Face, Face)> = Vec::new();
    while let Some(sigma) = queue.pop_front() {
        let tau = state.check(&sigma).map_err(|e| step_error(out.len(), e))?;
        if sigma.len() == d || sigma == tau {
            state
                .collapse(&sigma)
                .map_err(|e| step_error(out.len(), e))?;
            out.push((sigma, tau));
            continue;
        }
        let extra = tau.difference(&sigma);
        let take = (d - sigma.len()).min(extra.len());
        let mut sigma_prime = sigma.clone();
        for &v in &extra[..take] {
            sigma_prime = sigma_prime.with_vertex(v);
        }
        let script = superface_steps(&sigma, &sigma_prime, &tau, d);
        let mut expanded: Vec<Face> = vec![sigma_prime];
        expanded.extend(script.faces().cloned());
        for f in expanded.into_iter().rev() {
            queue.push_front(f);
        }
    }
    let (high, low): (Vec<_>, Vec<_>) = out.into_iter().partition(|(s, _)| s.len() == d);
    let mut result = Certificate::new(d);
    for (s, t) in high.into_iter().chain(low) {
        result.push_with_tau(s, t);
    }
    let mut check = CollapseState::new(k, d).map_err(|e| step_error(0, e))?;
    replay_on(&mut check, &result)?;
    let growth = if cert.is_empty() {
        1.0
    } else {
        result.len() as f64 / cert.len() as f64
    };
    Ok(Normalized {
        certificate: result,
        growth,
    })
}

/// Collapses a d-dimensional `K` onto the subcomplex `L` by walking the graph
/// `G_d(K \ L)` breadth-first from τ(σ).
///
/// Checked conditions: σ ∈ K \ L is d-collapsible with τ(σ) ∈ K \ L a d-face,
/// `G_d(K \ L)` is connected, and every (d−1)-face of `K \ L` lies in at most
/// two d-faces of `K \ L`. The emitted steps are σ, then `τ_i ∩ τ_{n(i)}` for
/// every later BFS node τ_i with BFS parent τ_{n(i)}, then the remaining faces
/// of `K \ L` by decreasing dimension.
pub fn script_graph_collapse(
    k: &Complex,
    l: &Complex,
    sigma: &Face,
    d: usize,
) -> Result<Certificate, ScriptError> {
    if let Some(f) = l.faces().find(|f| !k.contains(f)) {
        return Err(ScriptError::Precondition(format!(
            "{f} is in L but not in K"
        )));
    }
    if k.dim() != Some(d) {
        return Err(ScriptError::Precondition(format!(
            "K has dimension {:?}, expected {d}",
            k.dim()
        )));
    }
    if l.contains(sigma) || !k.contains(sigma) {
        return Err(ScriptError::Precondition(format!(
            "{sigma} is not a face of K \\ L"
        )));
    }
    if sigma.len() > d {
        return Err(ScriptError::Precondition(format!(
            "{sigma} has dimension above d-1"
        )));
    }
    let tau0 = k
        .unique_max_coface(sigma)?
        .ok_or_else(|| ScriptError::Precondition(format!("{sigma} is not collapsible in K")))?;
    if tau0.dim() != d {
        return Err(ScriptError::Precondition(format!(
            "τ({sigma}) = {tau0} is not a d-face"
        )));
    }
    let diff: Vec<&Face> = k.faces().filter(|f| !l.contains(f)).collect();
    let diff_set: HashSet<&Face> = diff.iter().copied().collect();

    let mut degree: HashMap<Face, usize> = HashMap::new();
    for f in diff.iter().filter(|f| f.dim() == d) {
        for r in f.facets() {
            if diff_set.contains(&r) {
                *degree.entry(r).or_default() += 1;
            }
        }
    }
    let mut bad: Vec<(&Face, &usize)> = degree.iter().filter(|(_, &c)| c > 2).collect();
    bad.sort();
    if let Some((ridge, &count)) = bad.first() {
        return Err(ScriptError::RidgeDegree {
            ridge: (*ridge).clone(),
            count,
        });
    }

    let graph = g_k_graph(diff.iter().copied(), d);
    let components = graph.component_count();
    if components > 1 {
        return Err(ScriptError::Disconnected { d, components });
    }
    let adj = graph.neighbors();
    let start = graph
        .nodes
        .binary_search(&tau0)
        .expect("τ(σ) is a d-face of K \\ L");
    let mut parent: Vec<Option<usize>> = vec![None; graph.nodes.len()];
    let mut seen = vec![false; graph.nodes.len()];
    let mut order = vec![start];
    seen[start] = true;
    let mut head = 0;
    while head < order.len() {
        let u = order[head];
        head += 1;
        let mut next: Vec<usize> = adj[u].iter().copied().filter(|&w| !seen[w]).collect();
        next.sort_unstable();
        for w in next {
            seen[w] = true;
            parent[w] = Some(u);
            order.push(w);
        }
    }

    let mut cert = Certificate::new(d);
    cert.push_with_tau(sigma.clone(), tau0);
    for &i in &order[1..] {
        let p = parent[i].unwrap();
        let shared = Face::new(graph.nodes[i].intersection(&graph.nodes[p]))?;
        cert.steps
            .push(CollapseStep::with_tau(shared, graph.nodes[i].clone()));
    }
    let mut state = CollapseState::new(k, d).map_err(|e| step_error(0, e))?;
    replay_on(&mut state, &cert)?;
    let rest: Vec<Face> = state.faces().filter(|f| !l.contains(f)).cloned().collect();
    for f in removal_order(rest.iter()) {
        cert.push_with_tau(f.clone(), f);
    }
    let mut check = CollapseState::new(k, d).map_err(|e| step_error(0, e))?;
    replay_on(&mut check, &cert)?;
    residue_matches(&check.to_complex(), l)?;
    Ok(cert)
}

/// Replays `inner` (a collapsing of `K′` onto `L′`) inside the larger `K`.
///
/// Requires that every face of `K` containing a face of `K′ \ L′` itself lies
/// in `K′ \ L′`; the replay then reaches `(K \ K′) ∪ L′`.
pub fn script_subcomplex_collapse(
    k: &Complex,
    k_sub: &Complex,
    l_sub: &Complex,
    inner: &Certificate,
) -> Result<Certificate, ScriptError> {
    if let Some(f) = k_sub.faces().find(|f| !k.contains(f)) {
        return Err(ScriptError::Precondition(format!(
            "{f} is in K' but not in K"
        )));
    }
    if let Some(f) = l_sub.faces().find(|f| !k_sub.contains(f)) {
        return Err(ScriptError::Precondition(format!(
            "{f} is in L' but not in K'"
        )));
    }
    let in_diff = |f: &Face| k_sub.contains(f) && !l_sub.contains(f);
    // upward closure of K′ \ L′ in K, one coface step at a time
    for eta in k.faces() {
        if in_diff(eta) {
            continue;
        }
        if let Some(sigma) = eta.facets().find(|s| in_diff(s)) {
            return Err(ScriptError::Superface {
                sigma,
                eta: eta.clone(),
            });
        }
    }
    let mut state = CollapseState::new(k, inner.d).map_err(|e| step_error(0, e))?;
    replay_on(&mut state, inner)?;
    let mut target: Vec<Face> = k.faces().filter(|f| !k_sub.contains(f)).cloned().collect();
    target.extend(l_sub.faces().cloned());
    let target = Complex::from_face_set(target)?;
    residue_matches(&state.to_complex(), &target)?;
    Ok(inner.clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::collapse::{
        check_certificate, elementary_collapse, is_normal_form, replay_certificate,
    };

    fn f(ids: &[u32]) -> Face {
        Face::from_ids(ids)
    }

    #[test]
    fn superface_on_tetra() {
        let k = Complex::from_generators([f(&[1, 2, 3, 4])]);
        let script = script_superface_collapse(&k, &f(&[1]), &f(&[1, 2]), 2).unwrap();
        let from = elementary_collapse(&k, &f(&[1, 2]), 2).unwrap();
        let reached = replay_certificate(&from, &script).unwrap();
        assert_eq!(reached, elementary_collapse(&k, &f(&[1]), 2).unwrap());
        assert!(script_superface_collapse(&k, &f(&[1]), &f(&[1]), 2)
            .unwrap()
            .is_empty());
    }

    #[test]
    fn superface_low_faces_on_a_triangle() {
        // a triangle with a pendant edge, σ a vertex of the triangle
        let k = Complex::from_generators([f(&[1, 2, 3]), f(&[3, 4])]);
        let script = script_superface_collapse(&k, &f(&[1]), &f(&[1, 2]), 2).unwrap();
        let from = elementary_collapse(&k, &f(&[1, 2]), 2).unwrap();
        assert_eq!(
            replay_certificate(&from, &script).unwrap(),
            elementary_collapse(&k, &f(&[1]), 2).unwrap()
        );
    }

    #[test]
    fn normalize_moves_edges_first() {
        let k = Complex::from_generators([f(&[1, 2, 3])]);
        let cert = Certificate::from_faces(2, [f(&[1]), f(&[2, 3]), f(&[2]), f(&[3])]);
        check_certificate(&k, &cert).unwrap();
        assert!(!is_normal_form(&k, &cert).unwrap());
        let n = normalize_certificate(&k, &cert).unwrap();
        check_certificate(&k, &n.certificate).unwrap();
        assert!(is_normal_form(&k, &n.certificate).unwrap());
        assert_eq!(n.certificate.steps[0].sigma, f(&[1, 2]));
        assert!(n.growth >= 1.0);

        let empty = normalize_certificate(&Complex::empty(), &Certificate::new(2)).unwrap();
        assert!(empty.certificate.is_empty());
    }

    #[test]
    fn graph_collapse_two_triangles() {
        let k = Complex::from_generators([f(&[1, 2, 3]), f(&[2, 3, 4])]);
        let l = Complex::from_generators([f(&[1, 3]), f(&[3, 4])]);
        let cert = script_graph_collapse(&k, &l, &f(&[1, 2]), 2).unwrap();
        assert_eq!(cert.steps[1].sigma, f(&[2, 3]));
        assert_eq!(replay_certificate(&k, &cert).unwrap(), l);
    }

    #[test]
    fn graph_collapse_rejects_disconnected() {
        let k = Complex::from_generators([f(&[1, 2, 3]), f(&[4, 5, 6])]);
        let l = Complex::from_generators([f(&[1, 3]), f(&[4, 5])]);
        assert!(matches!(
            script_graph_collapse(&k, &l, &f(&[1, 2]), 2),
            Err(ScriptError::Disconnected { components: 2, .. })
        ));
    }

    #[test]
    fn graph_collapse_rejects_branching_ridge() {
        let k = Complex::from_generators([f(&[1, 2, 3]), f(&[1, 2, 4]), f(&[1, 2, 5])]);
        let l = Complex::from_generators([f(&[1])]);
        assert!(matches!(
            script_graph_collapse(&k, &l, &f(&[1, 3]), 2),
            Err(ScriptError::RidgeDegree { count: 3, .. })
        ));
    }

    #[test]
    fn subcomplex_collapse_cases() {
        let k = Complex::from_generators([f(&[1, 2, 3]), f(&[3, 4])]);
        let k_sub = Complex::from_generators([f(&[1, 2, 3])]);
        let l_sub = Complex::from_generators([f(&[2, 3])]);
        let inner = Certificate::from_faces(2, [f(&[1])]);
        let out = script_subcomplex_collapse(&k, &k_sub, &l_sub, &inner).unwrap();
        assert_eq!(out, inner);

        let whole = Certificate::from_faces(
            2,
            [f(&[1, 2]), f(&[1]), f(&[2]), f(&[3, 4]), f(&[3]), f(&[4])],
        );
        let passthrough = script_subcomplex_collapse(&k, &k, &Complex::empty(), &whole).unwrap();
        assert_eq!(passthrough, whole);

        // {3} lies in K′ \ L′ but {3,4} is outside K′
        let l_bad = Complex::from_generators([f(&[1, 2])]);
        assert!(matches!(
            script_subcomplex_collapse(&k, &k_sub, &l_bad, &inner),
            Err(ScriptError::Superface { .. })
        ));
    }
}
