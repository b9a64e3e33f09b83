//! Independent oracles and generators shared by the integration tests.
#![allow(dead_code)]

use std::collections::{BTreeSet, HashMap, HashSet};

use dcollapse::{Complex, Face, VertexId};
use rand::Rng;

pub fn face(ids: &[u32]) -> Face {
    Face::from_ids(ids)
}

/// Random complex on `n` vertices generated by `gens` random faces; each
/// vertex enters a generator with probability `density`.
pub fn random_complex<R: Rng>(rng: &mut R, n: u32, gens: usize, density: f64) -> Complex {
    let mut faces = Vec::with_capacity(gens);
    for _ in 0..gens {
        let mut ids: Vec<u32> = (0..n).filter(|_| rng.gen_bool(density)).collect();
        if ids.is_empty() {
            ids.push(rng.gen_range(0..n));
        }
        faces.push(Face::from_ids(&ids));
    }
    Complex::from_generators(faces)
}

/// Closure of a face family, as a plain set.
pub fn closure(gens: &[Face]) -> BTreeSet<Face> {
    gens.iter()
        .flat_map(|g| g.subfaces().collect::<Vec<_>>())
        .collect()
}

/// Maximal faces of a closed set by direct comparison.
fn maximal_of(faces: &BTreeSet<Face>) -> Vec<&Face> {
    faces
        .iter()
        .filter(|f| !faces.iter().any(|g| g.len() > f.len() && f.is_subset_of(g)))
        .collect()
}

/// d-collapsible faces by counting maximal cofaces.
pub fn naive_collapsible(faces: &BTreeSet<Face>, d: usize) -> Vec<Face> {
    let max = maximal_of(faces);
    faces
        .iter()
        .filter(|f| f.len() <= d && max.iter().filter(|m| f.is_subset_of(m)).count() == 1)
        .cloned()
        .collect()
}

fn naive_collapse(faces: &BTreeSet<Face>, sigma: &Face) -> BTreeSet<Face> {
    let tau = maximal_of(faces)
        .into_iter()
        .find(|m| sigma.is_subset_of(m))
        .unwrap()
        .clone();
    faces
        .iter()
        .filter(|f| !(sigma.is_subset_of(f) && f.is_subset_of(&tau)))
        .cloned()
        .collect()
}

/// Exhaustive d-collapsibility: tries every d-collapsible face at every step.
pub fn brute_force_collapsible(k: &Complex, d: usize) -> bool {
    fn go(faces: BTreeSet<Face>, d: usize, failed: &mut HashSet<BTreeSet<Face>>) -> bool {
        if faces.is_empty() {
            return true;
        }
        if failed.contains(&faces) {
            return false;
        }
        for s in naive_collapsible(&faces, d) {
            if go(naive_collapse(&faces, &s), d, failed) {
                return true;
            }
        }
        failed.insert(faces);
        false
    }
    go(k.face_set().clone(), d, &mut HashSet::new())
}

/// Graph on vertices `0..n` as adjacency bit masks.
pub fn random_graph<R: Rng>(rng: &mut R, n: usize, p: f64) -> Vec<u32> {
    let mut adj = vec![0u32; n];
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                adj[u] |= 1 << v;
                adj[v] |= 1 << u;
            }
        }
    }
    adj
}

pub fn clique_complex(adj: &[u32]) -> Complex {
    let n = adj.len();
    let mut gens = Vec::new();
    for mask in 1u32..(1 << n) {
        let members: Vec<u32> = (0..n as u32).filter(|&v| mask >> v & 1 == 1).collect();
        if members
            .iter()
            .all(|&v| adj[v as usize] & mask == mask & !(1 << v))
        {
            gens.push(Face::from_ids(&members));
        }
    }
    Complex::from_generators(gens)
}

/// Chordality by searching for a perfect elimination ordering: a graph is
/// chordal iff simplicial vertices can be removed one at a time until none remain.
pub fn is_chordal(adj: &[u32]) -> bool {
    let n = adj.len();
    let mut alive: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    while alive != 0 {
        let simplicial = (0..n).filter(|&v| alive >> v & 1 == 1).find(|&v| {
            let nb = adj[v] & alive;
            (0..n)
                .filter(|&u| nb >> u & 1 == 1)
                .all(|u| adj[u] & nb == nb & !(1 << u))
        });
        match simplicial {
            Some(v) => alive &= !(1 << v),
            None => return false,
        }
    }
    true
}

/// Boundary of the simplex on `0..n`.
pub fn simplex_boundary(n: u32) -> Complex {
    let ids: Vec<u32> = (0..n).collect();
    let top = Face::from_ids(&ids);
    Complex::from_generators(top.facets().collect::<Vec<_>>())
}

/// `(d−1)`-face degrees inside the d-faces of `faces`.
pub fn ridge_degrees<'a>(
    faces: impl IntoIterator<Item = &'a Face>,
    d: usize,
) -> HashMap<Face, usize> {
    let mut deg = HashMap::new();
    for f in faces.into_iter().filter(|f| f.dim() == d) {
        for r in f.facets() {
            *deg.entry(r).or_insert(0) += 1;
        }
    }
    deg
}

/// Connectivity of the graph whose nodes are the d-faces and whose edges join
/// d-faces sharing a (d−1)-face.
pub fn d_faces_connected<'a>(faces: impl IntoIterator<Item = &'a Face>, d: usize) -> bool {
    let tops: Vec<&Face> = faces.into_iter().filter(|f| f.dim() == d).collect();
    if tops.is_empty() {
        return true;
    }
    let mut by_ridge: HashMap<Face, Vec<usize>> = HashMap::new();
    for (i, f) in tops.iter().enumerate() {
        for r in f.facets() {
            by_ridge.entry(r).or_default().push(i);
        }
    }
    let mut seen = vec![false; tops.len()];
    let mut stack = vec![0];
    seen[0] = true;
    while let Some(i) = stack.pop() {
        for r in tops[i].facets() {
            for &j in &by_ridge[&r] {
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    seen.into_iter().all(|s| s)
}

pub fn vid(i: u32) -> VertexId {
    VertexId(i)
}
