use std::fmt;

use crate::error::ComplexError;

/// Identifier of a vertex within one complex.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct VertexId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for VertexId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl From<u32> for VertexId {
    fn from(v: u32) -> Self {
        VertexId(v)
    }
}

/// A nonempty face: a strictly increasing list of vertex ids.
///
/// The derived ordering is lexicographic on the sorted vertex lists, which is
/// the order used everywhere a deterministic face order is needed.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Face(Vec<VertexId>);

impl Face {
    /// Sorts the vertices; rejects empty input and repeated vertices.
    pub fn new(mut vertices: Vec<VertexId>) -> Result<Self, ComplexError> {
        if vertices.is_empty() {
            return Err(ComplexError::EmptyFace);
        }
        vertices.sort_unstable();
        if let Some(w) = vertices.windows(2).find(|w| w[0] == w[1]) {
            return Err(ComplexError::DuplicateVertex(w[0]));
        }
        Ok(Face(vertices))
    }

    /// Convenience constructor from raw ids. Panics on malformed input.
    pub fn from_ids(ids: &[u32]) -> Self {
        Face::new(ids.iter().map(|&v| VertexId(v)).collect()).expect("malformed face literal")
    }

    /// Caller guarantees the list is nonempty and strictly increasing.
    pub(crate) fn from_sorted_unchecked(vertices: Vec<VertexId>) -> Self {
        debug_assert!(!vertices.is_empty());
        debug_assert!(vertices.windows(2).all(|w| w[0] < w[1]));
        Face(vertices)
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn dim(&self) -> usize {
        self.0.len() - 1
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    /// `self ⊆ other`
    pub fn is_subset_of(&self, other: &Face) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut it = other.0.iter();
        'outer: for v in &self.0 {
            for w in it.by_ref() {
                if w == v {
                    continue 'outer;
                }
                if w > v {
                    return false;
                }
            }
            return false;
        }
        true
    }

    pub fn with_vertex(&self, v: VertexId) -> Face {
        let mut vs = self.0.clone();
        match vs.binary_search(&v) {
            Ok(_) => {}
            Err(pos) => vs.insert(pos, v),
        }
        Face(vs)
    }

    /// Removes `v`; returns `None` when that would leave the face empty.
    pub fn without_vertex(&self, v: VertexId) -> Option<Face> {
        let vs: Vec<VertexId> = self.0.iter().copied().filter(|&w| w != v).collect();
        if vs.is_empty() {
            None
        } else {
            Some(Face(vs))
        }
    }

    pub fn union(&self, other: &Face) -> Face {
        let mut vs = Vec::with_capacity(self.len() + other.len());
        let (mut i, mut j) = (0, 0);
        while i < self.0.len() && j < other.0.len() {
            match self.0[i].cmp(&other.0[j]) {
                std::cmp::Ordering::Less => {
                    vs.push(self.0[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    vs.push(other.0[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    vs.push(self.0[i]);
                    i += 1;
                    j += 1;
                }
            }
        }
        vs.extend_from_slice(&self.0[i..]);
        vs.extend_from_slice(&other.0[j..]);
        Face(vs)
    }

    /// Vertices of `self` that are not in `other`, in increasing order.
    pub fn difference(&self, other: &Face) -> Vec<VertexId> {
        self.0
            .iter()
            .copied()
            .filter(|v| !other.contains_vertex(*v))
            .collect()
    }

    pub fn intersection(&self, other: &Face) -> Vec<VertexId> {
        self.0
            .iter()
            .copied()
            .filter(|v| other.contains_vertex(*v))
            .collect()
    }

    /// All nonempty subsets, including `self`.
    pub fn subfaces(&self) -> impl Iterator<Item = Face> + '_ {
        let n = self.0.len();
        assert!(n < 32, "face too large to enumerate subfaces");
        (1u32..(1u32 << n)).map(move |mask| {
            Face(
                (0..n)
                    .filter(|i| mask & (1 << i) != 0)
                    .map(|i| self.0[i])
                    .collect(),
            )
        })
    }

    /// Faces obtained by dropping exactly one vertex.
    pub fn facets(&self) -> impl Iterator<Item = Face> + '_ {
        (0..if self.0.len() > 1 { self.0.len() } else { 0 }).map(move |skip| {
            Face(
                self.0
                    .iter()
                    .enumerate()
                    .filter(|&(i, _)| i != skip)
                    .map(|(_, &v)| v)
                    .collect(),
            )
        })
    }

    /// Applies a vertex map; fails if two vertices land on the same image.
    pub fn map(&self, f: impl Fn(VertexId) -> VertexId) -> Result<Face, ComplexError> {
        Face::new(self.0.iter().map(|&v| f(v)).collect())
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", v.0)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn new_sorts_and_rejects_duplicates() {
        let f = Face::new(vec![VertexId(3), VertexId(1), VertexId(2)]).unwrap();
        assert_eq!(f, Face::from_ids(&[1, 2, 3]));
        assert_eq!(f.dim(), 2);
        assert!(matches!(
            Face::new(vec![VertexId(1), VertexId(1), VertexId(2)]),
            Err(ComplexError::DuplicateVertex(VertexId(1)))
        ));
        assert!(matches!(Face::new(vec![]), Err(ComplexError::EmptyFace)));
    }

    #[test]
    fn subset_and_set_ops() {
        let a = Face::from_ids(&[1, 3]);
        let b = Face::from_ids(&[1, 2, 3, 4]);
        assert!(a.is_subset_of(&b));
        assert!(!b.is_subset_of(&a));
        assert!(!Face::from_ids(&[0, 1]).is_subset_of(&b));
        assert!(!Face::from_ids(&[5]).is_subset_of(&b));
        assert_eq!(
            a.union(&Face::from_ids(&[2, 3])),
            Face::from_ids(&[1, 2, 3])
        );
        assert_eq!(b.difference(&a), vec![VertexId(2), VertexId(4)]);
        assert_eq!(b.subfaces().count(), 15);
        assert_eq!(b.facets().count(), 4);
        assert_eq!(Face::from_ids(&[7]).facets().count(), 0);
        assert_eq!(a.with_vertex(VertexId(2)), Face::from_ids(&[1, 2, 3]));
        assert_eq!(Face::from_ids(&[7]).without_vertex(VertexId(7)), None);
    }

    #[test]
    fn lexicographic_order() {
        let mut fs = vec![
            Face::from_ids(&[2]),
            Face::from_ids(&[1, 3]),
            Face::from_ids(&[1]),
            Face::from_ids(&[1, 2, 3]),
        ];
        fs.sort();
        assert_eq!(
            fs,
            vec![
                Face::from_ids(&[1]),
                Face::from_ids(&[1, 2, 3]),
                Face::from_ids(&[1, 3]),
                Face::from_ids(&[2]),
            ]
        );
    }
}
