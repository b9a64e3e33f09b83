//! Graph queries on complexes: 1-skeleton distances and the face graph `G_k`.

use std::collections::hash_map::Entry;
use std::collections::{HashMap, HashSet, VecDeque};

use crate::complex::Complex;
use crate::error::ComplexError;
use crate::face::{Face, VertexId};

/// Adjacency lists of the 1-skeleton.
pub fn skeleton_adjacency(k: &Complex) -> HashMap<VertexId, Vec<VertexId>> {
    let mut adj: HashMap<VertexId, Vec<VertexId>> = HashMap::new();
    for v in k.vertices() {
        adj.entry(v).or_default();
    }
    for e in k.faces_of_dim(1) {
        let (a, b) = (e.vertices()[0], e.vertices()[1]);
        adj.entry(a).or_default().push(b);
        adj.entry(b).or_default().push(a);
    }
    adj
}

fn require_vertex(k: &Complex, v: VertexId) -> Result<(), ComplexError> {
    if k.contains(&Face::from_sorted_unchecked(vec![v])) {
        Ok(())
    } else {
        Err(ComplexError::UnknownVertex(v))
    }
}

/// BFS distances from every source vertex (multi-source).
pub fn distances_from(
    adj: &HashMap<VertexId, Vec<VertexId>>,
    sources: &[VertexId],
) -> HashMap<VertexId, usize> {
    let mut dist = HashMap::new();
    let mut queue = VecDeque::new();
    for &s in sources {
        if dist.insert(s, 0).is_none() {
            queue.push_back(s);
        }
    }
    while let Some(u) = queue.pop_front() {
        let du = dist[&u];
        for &w in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
            if let Entry::Vacant(e) = dist.entry(w) {
                e.insert(du + 1);
                queue.push_back(w);
            }
        }
    }
    dist
}

/// Shortest-path length in the 1-skeleton; `None` means infinitely far.
pub fn skeleton_distance(
    k: &Complex,
    u: VertexId,
    v: VertexId,
) -> Result<Option<usize>, ComplexError> {
    require_vertex(k, u)?;
    require_vertex(k, v)?;
    let adj = skeleton_adjacency(k);
    Ok(distances_from(&adj, &[u]).get(&v).copied())
}

/// Every vertex of `omega` is at distance at least 3 from every vertex of `eta`.
pub fn are_distant(k: &Complex, omega: &Face, eta: &Face) -> Result<bool, ComplexError> {
    let adj = skeleton_adjacency(k);
    are_distant_with(k, &adj, omega, eta)
}

/// [`are_distant`] reusing a precomputed adjacency.
pub fn are_distant_with(
    k: &Complex,
    adj: &HashMap<VertexId, Vec<VertexId>>,
    omega: &Face,
    eta: &Face,
) -> Result<bool, ComplexError> {
    for f in [omega, eta] {
        if !k.contains(f) {
            return Err(ComplexError::FaceNotInComplex(f.clone()));
        }
    }
    // only distances 0..=2 matter, so two BFS layers suffice
    let mut near: HashSet<VertexId> = omega.vertices().iter().copied().collect();
    let mut frontier: Vec<VertexId> = near.iter().copied().collect();
    for _ in 0..2 {
        let mut next = Vec::new();
        for u in frontier {
            for &w in adj.get(&u).map(Vec::as_slice).unwrap_or(&[]) {
                if near.insert(w) {
                    next.push(w);
                }
            }
        }
        frontier = next;
    }
    Ok(eta.vertices().iter().all(|v| !near.contains(v)))
}

/// `G_k(F)`: nodes are the members of `F` with `k + 1` vertices, joined when
/// they share `k` vertices and the shared face is itself in `F`.
#[derive(Clone, Debug)]
pub struct FaceGraph {
    pub nodes: Vec<Face>,
    pub edges: Vec<(usize, usize)>,
}

impl FaceGraph {
    pub fn neighbors(&self) -> Vec<Vec<usize>> {
        let mut adj = vec![Vec::new(); self.nodes.len()];
        for &(a, b) in &self.edges {
            adj[a].push(b);
            adj[b].push(a);
        }
        adj
    }

    /// Number of connected components (0 for the empty graph).
    pub fn component_count(&self) -> usize {
        let adj = self.neighbors();
        let mut seen = vec![false; self.nodes.len()];
        let mut count = 0;
        for s in 0..self.nodes.len() {
            if seen[s] {
                continue;
            }
            count += 1;
            seen[s] = true;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &w in &adj[u] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        count
    }

    pub fn is_connected(&self) -> bool {
        self.component_count() <= 1
    }
}

pub fn g_k_graph<'a, I: IntoIterator<Item = &'a Face>>(family: I, k: usize) -> FaceGraph {
    let family: HashSet<&Face> = family.into_iter().collect();
    let mut nodes: Vec<Face> = family
        .iter()
        .filter(|f| f.len() == k + 1)
        .map(|f| (*f).clone())
        .collect();
    nodes.sort();
    let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
    if k > 0 {
        for (i, f) in nodes.iter().enumerate() {
            for r in f.facets() {
                if family.contains(&r) {
                    by_ridge.entry(r).or_default().push(i);
                }
            }
        }
    }
    let mut edges = Vec::new();
    for members in by_ridge.values() {
        for a in 0..members.len() {
            for b in a + 1..members.len() {
                edges.push((members[a], members[b]));
            }
        }
    }
    edges.sort_unstable();
    FaceGraph { nodes, edges }
}
