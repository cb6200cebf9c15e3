//! Vertex subsets of `[n]` packed into a 64-bit word.
//!
//! Vertex `v` (1-based) lives at bit `v - 1`. The ordering on [`Face`] is the
//! lexicographic order of the sorted vertex tuples, so `{1,2} < {1,3} < {2}`
//! and the empty set comes first.

use std::cmp::Ordering;
use std::fmt;

/// Largest ambient vertex count a [`Face`] can address.
pub const MAX_VERTICES: usize = 64;

/// A finite subset of `{1, .., 64}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    pub const fn from_bits(bits: u64) -> Self {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    /// `{1, .., n}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_VERTICES, "vertex count {n} exceeds {MAX_VERTICES}");
        if n == MAX_VERTICES {
            Face(u64::MAX)
        } else {
            Face((1u64 << n) - 1)
        }
    }

    pub fn singleton(v: u32) -> Self {
        debug_assert!(v >= 1 && v as usize <= MAX_VERTICES);
        Face(1u64 << (v - 1))
    }

    pub fn from_vertices<I: IntoIterator<Item = u32>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(Face::EMPTY, |acc, v| acc.with(v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, v: u32) -> bool {
        v >= 1 && v as usize <= MAX_VERTICES && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    pub fn with(self, v: u32) -> Face {
        Face(self.0 | (1u64 << (v - 1)))
    }

    pub fn without(self, v: u32) -> Face {
        Face(self.0 & !(1u64 << (v - 1)))
    }

    /// Largest vertex, or 0 for the empty set.
    pub fn max_vertex(self) -> u32 {
        64 - self.0.leading_zeros()
    }

    /// Vertices in increasing order.
    pub fn vertices(self) -> Vertices {
        Vertices(self.0)
    }

    /// All subsets of `self`, including `∅` and `self`, in increasing bit order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }

    /// Number of vertices of `self` strictly smaller than `v`.
    pub fn rank_of(self, v: u32) -> usize {
        (self.0 & ((1u64 << (v - 1)) - 1)).count_ones() as usize
    }

    /// Order-preserving relabeling of `self ⊆ domain` onto `{1, .., #domain}`.
    pub fn compress(self, domain: Face) -> Face {
        debug_assert!(self.is_subset(domain));
        Face::from_vertices(self.vertices().map(|v| domain.rank_of(v) as u32 + 1))
    }

    /// Inverse of [`Face::compress`].
    pub fn expand(self, domain: Face) -> Face {
        let labels: Vec<u32> = domain.vertices().collect();
        Face::from_vertices(self.vertices().map(|v| labels[v as usize - 1]))
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        let diff = self.0 ^ other.0;
        if diff == 0 {
            return Ordering::Equal;
        }
        // First position where the sorted tuples disagree is the lowest differing vertex.
        // The side holding that vertex is smaller unless the other tuple ends there.
        let low = diff.trailing_zeros();
        let self_has = self.0 & (1u64 << low) != 0;
        let lacking = if self_has { other.0 } else { self.0 };
        let lacking_continues = low < 63 && (lacking >> (low + 1)) != 0;
        if self_has == lacking_continues {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// Renders as comma-joined vertices, `-` for the empty set.
impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return write!(f, "-");
        }
        for (k, v) in self.vertices().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        Ok(())
    }
}

pub struct Vertices(u64);

impl Iterator for Vertices {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let low = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(low + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Vertices {}

pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Face;

    fn next(&mut self) -> Option<Face> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            Some(cur.wrapping_sub(self.mask) & self.mask)
        };
        Some(Face(cur))
    }
}

/// All `k`-element subsets of `ground`, in lexicographic order.
pub fn subsets_of_size(ground: Face, k: usize) -> Vec<Face> {
    let verts: Vec<u32> = ground.vertices().collect();
    let mut out = Vec::new();
    if k > verts.len() {
        return out;
    }
    let m = verts.len();
    let mut idx: Vec<usize> = (0..k).collect();
    loop {
        out.push(Face::from_vertices(idx.iter().map(|&i| verts[i])));
        let Some(pos) = (0..k).rev().find(|&p| idx[p] < p + m - k) else {
            return out;
        };
        idx[pos] += 1;
        for q in pos + 1..k {
            idx[q] = idx[q - 1] + 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[u32]) -> Face {
        Face::from_vertices(v.iter().copied())
    }

    #[test]
    fn lexicographic_order() {
        let mut faces = vec![f(&[2]), f(&[1, 3]), f(&[]), f(&[1]), f(&[1, 2]), f(&[1, 2, 3])];
        faces.sort();
        assert_eq!(
            faces,
            vec![f(&[]), f(&[1]), f(&[1, 2]), f(&[1, 2, 3]), f(&[1, 3]), f(&[2])]
        );
    }

    #[test]
    fn order_matches_tuple_order_exhaustively() {
        let all: Vec<Face> = Face::full(5).subsets().collect();
        for &a in &all {
            for &b in &all {
                let ta: Vec<u32> = a.vertices().collect();
                let tb: Vec<u32> = b.vertices().collect();
                assert_eq!(a.cmp(&b), ta.cmp(&tb), "{a:?} vs {b:?}");
            }
        }
    }

    #[test]
    fn subsets_and_sizes() {
        assert_eq!(f(&[1, 3, 4]).subsets().count(), 8);
        assert_eq!(Face::EMPTY.subsets().collect::<Vec<_>>(), vec![Face::EMPTY]);
        let two = subsets_of_size(f(&[1, 2, 4]), 2);
        assert_eq!(two, vec![f(&[1, 2]), f(&[1, 4]), f(&[2, 4])]);
        assert_eq!(subsets_of_size(f(&[1, 2]), 0), vec![Face::EMPTY]);
        assert!(subsets_of_size(f(&[1, 2]), 3).is_empty());
    }

    #[test]
    fn compress_expand() {
        let dom = f(&[2, 4, 5]);
        assert_eq!(f(&[4, 5]).compress(dom), f(&[2, 3]));
        assert_eq!(f(&[2, 3]).expand(dom), f(&[4, 5]));
        assert_eq!(f(&[1, 3]).to_string(), "1,3");
        assert_eq!(Face::EMPTY.to_string(), "-");
    }
}
