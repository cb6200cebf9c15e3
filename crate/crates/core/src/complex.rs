//! Finite simplicial complexes on `{1, .., n}`, stored by facets.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::face::{subsets_of_size, Face, MAX_VERTICES};

/// A simplicial complex on the vertex set `[n]`.
///
/// Only the facets are stored; every other face is derived on demand. The
/// void complex (no faces at all) and the empty complex `{∅}` are distinct
/// values: the former has `void = true`, the latter has no facets.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SimplicialComplex {
    n: usize,
    facets: Vec<Face>,
    void: bool,
}

/// Order-preserving relabeling produced by a restriction: new vertex `k`
/// corresponds to the `k`-th smallest vertex of `domain`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Relabeling {
    pub domain: Face,
}

impl Relabeling {
    pub fn original_vertex(&self, v: u32) -> u32 {
        Face::singleton(v).expand(self.domain).max_vertex()
    }

    pub fn original_face(&self, f: Face) -> Face {
        f.expand(self.domain)
    }

    pub fn restricted_face(&self, f: Face) -> Face {
        f.compress(self.domain)
    }
}

/// Keeps only the inclusion-maximal sets, in lexicographic order.
pub(crate) fn maximal_sets<I: IntoIterator<Item = Face>>(sets: I) -> Vec<Face> {
    let mut all: Vec<Face> = sets.into_iter().collect::<BTreeSet<_>>().into_iter().collect();
    all.sort_by_key(|f| std::cmp::Reverse(f.len()));
    let mut kept: Vec<Face> = Vec::with_capacity(all.len());
    for f in all {
        if !kept.iter().any(|g| f.is_subset(*g)) {
            kept.push(f);
        }
    }
    kept.retain(|f| !f.is_empty());
    kept.sort();
    kept
}

impl SimplicialComplex {
    /// Builds the complex generated by `generators`; non-maximal sets and `∅`
    /// are absorbed.
    pub fn new<I: IntoIterator<Item = Face>>(n: usize, generators: I) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let full = Face::full(n);
        let gens: Vec<Face> = generators.into_iter().collect();
        if let Some(bad) = gens.iter().find(|g| !g.is_subset(full)) {
            return Err(Error::VertexOutOfRange {
                vertex: bad.difference(full).max_vertex(),
                n,
            });
        }
        Ok(SimplicialComplex {
            n,
            facets: maximal_sets(gens),
            void: false,
        })
    }

    /// Convenience constructor from vertex lists.
    pub fn from_facets(n: usize, facets: &[&[u32]]) -> Result<Self> {
        Self::new(n, facets.iter().map(|f| Face::from_vertices(f.iter().copied())))
    }

    pub(crate) fn from_maximal_unchecked(n: usize, facets: Vec<Face>) -> Self {
        SimplicialComplex {
            n,
            facets,
            void: false,
        }
    }

    /// The empty complex `{∅}` on `n` vertices.
    pub fn empty(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Vec::new(),
            void: false,
        }
    }

    /// The void complex (no faces, not even `∅`).
    pub fn void(n: usize) -> Self {
        SimplicialComplex {
            n,
            facets: Vec::new(),
            void: true,
        }
    }

    /// The full simplex on `[n]`.
    pub fn simplex(n: usize) -> Self {
        if n == 0 {
            return Self::empty(0);
        }
        SimplicialComplex {
            n,
            facets: vec![Face::full(n)],
            void: false,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn facets(&self) -> &[Face] {
        &self.facets
    }

    pub fn is_void(&self) -> bool {
        self.void
    }

    /// Union of all faces; vertices of `[n]` outside it are not faces.
    pub fn vertices(&self) -> Face {
        self.facets.iter().fold(Face::EMPTY, |acc, f| acc.union(*f))
    }

    pub fn contains(&self, face: Face) -> bool {
        !self.void && (face.is_empty() || self.facets.iter().any(|g| face.is_subset(*g)))
    }

    /// The `i`-dimensional faces, lexicographically ordered.
    pub fn faces(&self, i: isize) -> Vec<Face> {
        if self.void || i < -1 {
            return Vec::new();
        }
        if i == -1 {
            return vec![Face::EMPTY];
        }
        let size = (i + 1) as usize;
        let set: BTreeSet<Face> = self
            .facets
            .iter()
            .filter(|g| g.len() >= size)
            .flat_map(|g| subsets_of_size(*g, size))
            .collect();
        set.into_iter().collect()
    }

    /// Every face, ordered by dimension and then lexicographically.
    pub fn all_faces(&self) -> Vec<Face> {
        if self.void {
            return Vec::new();
        }
        let set: BTreeSet<Face> = self.facets.iter().flat_map(|g| g.subsets()).collect();
        let mut v: Vec<Face> = set.into_iter().collect();
        if v.is_empty() {
            v.push(Face::EMPTY);
        }
        v.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
        v
    }

    /// Face counts `f_{-1}, f_0, .., f_{dim}`.
    pub fn f_vector(&self) -> Vec<usize> {
        let mut counts = Vec::new();
        for f in self.all_faces() {
            if counts.len() <= f.len() {
                counts.resize(f.len() + 1, 0);
            }
            counts[f.len()] += 1;
        }
        counts
    }

    /// `Σ (-1)^i f_i` over `i ≥ -1`.
    pub fn reduced_euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(k, &c)| if k % 2 == 0 { -(c as i64) } else { c as i64 })
            .sum()
    }

    pub fn dimension(&self) -> Result<isize> {
        if self.void {
            return Err(Error::VoidInput);
        }
        Ok(self.facets.iter().map(|f| f.len() as isize).max().unwrap_or(0) - 1)
    }

    pub fn is_pure(&self) -> Result<bool> {
        if self.void {
            return Err(Error::VoidInput);
        }
        Ok(self.facets.windows(2).all(|w| w[0].len() == w[1].len()))
    }

    /// `Δ|_W`, re-indexed onto `{1, .., #W}`. Vertices of `W` outside `[n]`
    /// are ignored.
    pub fn induced_subcomplex(&self, w: Face) -> (SimplicialComplex, Relabeling) {
        let domain = w.intersection(Face::full(self.n));
        let relabel = Relabeling { domain };
        let m = domain.len();
        if self.void {
            return (Self::void(m), relabel);
        }
        let facets = maximal_sets(self.facets.iter().map(|g| g.intersection(domain).compress(domain)));
        (Self::from_maximal_unchecked(m, facets), relabel)
    }

    /// `Δ|_{-W} = Δ|_{V∖W}`, re-indexed.
    pub fn delete_vertices(&self, w: Face) -> (SimplicialComplex, Relabeling) {
        self.induced_subcomplex(Face::full(self.n).difference(w))
    }

    /// `Δ|_W` without re-indexing; the ambient vertex count is unchanged.
    pub fn restrict_keep_labels(&self, w: Face) -> SimplicialComplex {
        if self.void {
            return self.clone();
        }
        let facets = maximal_sets(self.facets.iter().map(|g| g.intersection(w)));
        Self::from_maximal_unchecked(self.n, facets)
    }

    /// `lk_Δ(F) = {G : G ∩ F = ∅, G ∪ F ∈ Δ}`. Vertex labels are kept, so the
    /// link lives on `[n]` with the vertices of `F` unused.
    pub fn link(&self, face: Face) -> Result<SimplicialComplex> {
        if !self.contains(face) {
            return Err(Error::InvalidFace(face));
        }
        let facets = maximal_sets(
            self.facets
                .iter()
                .filter(|g| face.is_subset(**g))
                .map(|g| g.difference(face)),
        );
        Ok(Self::from_maximal_unchecked(self.n, facets))
    }

    /// `Δ^{(i)}`: all faces of dimension at most `i`.
    pub fn skeleton(&self, i: isize) -> SimplicialComplex {
        if self.void {
            return self.clone();
        }
        if i < 0 {
            return Self::empty(self.n);
        }
        let size = (i + 1) as usize;
        let gens = self.facets.iter().flat_map(|g| {
            if g.len() <= size {
                vec![*g]
            } else {
                subsets_of_size(*g, size)
            }
        });
        Self::from_maximal_unchecked(self.n, maximal_sets(gens))
    }

    /// Cone over `Δ` with apex `n + 1`.
    pub fn cone(&self) -> Result<SimplicialComplex> {
        let apex = self.n as u32 + 1;
        if self.void {
            return Ok(Self::void(self.n + 1));
        }
        let gens: Vec<Face> = if self.facets.is_empty() {
            vec![Face::singleton(apex)]
        } else {
            self.facets.iter().map(|g| g.with(apex)).collect()
        };
        Self::new(self.n + 1, gens)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(v: &[u32]) -> Face {
        Face::from_vertices(v.iter().copied())
    }

    fn c4() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]]).unwrap()
    }

    fn boundary_tetra() -> SimplicialComplex {
        SimplicialComplex::from_facets(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]]).unwrap()
    }

    #[test]
    fn faces_by_dimension() {
        assert_eq!(c4().faces(1), vec![f(&[1, 2]), f(&[1, 4]), f(&[2, 3]), f(&[3, 4])]);
        assert_eq!(c4().faces(-1), vec![Face::EMPTY]);
        assert_eq!(boundary_tetra().faces(0), vec![f(&[1]), f(&[2]), f(&[3]), f(&[4])]);
        assert!(c4().faces(2).is_empty());
        assert!(SimplicialComplex::void(3).faces(-1).is_empty());
    }

    #[test]
    fn antichain_reduction() {
        let d = SimplicialComplex::from_facets(3, &[&[1, 2], &[1], &[], &[1, 2, 3]]).unwrap();
        assert_eq!(d.facets(), &[f(&[1, 2, 3])]);
        assert!(matches!(
            SimplicialComplex::from_facets(2, &[&[1, 3]]),
            Err(Error::VertexOutOfRange { vertex: 3, n: 2 })
        ));
    }

    #[test]
    fn induced_and_deleted() {
        let (p, r) = c4().induced_subcomplex(f(&[1, 2, 3]));
        assert_eq!(p, SimplicialComplex::from_facets(3, &[&[1, 2], &[2, 3]]).unwrap());
        assert_eq!(r.original_vertex(3), 3);
        let (same, _) = c4().induced_subcomplex(Face::full(4));
        assert_eq!(same, c4());
        let (e, _) = c4().induced_subcomplex(Face::EMPTY);
        assert_eq!(e, SimplicialComplex::empty(0));

        let (path, r) = c4().delete_vertices(f(&[1]));
        assert_eq!(path, SimplicialComplex::from_facets(3, &[&[1, 2], &[2, 3]]).unwrap());
        assert_eq!(r.original_face(f(&[1, 2])), f(&[2, 3]));
        let (pts, r) = c4().delete_vertices(f(&[1, 3]));
        assert_eq!(pts, SimplicialComplex::from_facets(2, &[&[1], &[2]]).unwrap());
        assert_eq!(r.original_face(f(&[1, 2])), f(&[2, 4]));
        assert_eq!(c4().delete_vertices(Face::EMPTY).0, c4());
    }

    #[test]
    fn links() {
        assert_eq!(c4().link(f(&[1])).unwrap().facets(), &[f(&[2]), f(&[4])]);
        assert_eq!(c4().link(Face::EMPTY).unwrap(), c4());
        assert_eq!(boundary_tetra().link(f(&[1, 2])).unwrap().facets(), &[f(&[3]), f(&[4])]);
        assert_eq!(c4().link(f(&[1, 3])), Err(Error::InvalidFace(f(&[1, 3]))));
        // link of a facet is {∅}
        assert_eq!(c4().link(f(&[1, 2])).unwrap().dimension().unwrap(), -1);
    }

    #[test]
    fn skeleta() {
        let k4 = boundary_tetra().skeleton(1);
        assert_eq!(k4.facets().len(), 6);
        assert!(k4.facets().iter().all(|g| g.len() == 2));
        assert_eq!(boundary_tetra().skeleton(2), boundary_tetra());
        assert_eq!(boundary_tetra().skeleton(0).facets().len(), 4);
        assert_eq!(boundary_tetra().skeleton(-1), SimplicialComplex::empty(4));
    }

    #[test]
    fn dimension_and_purity() {
        assert_eq!(c4().dimension(), Ok(1));
        assert_eq!(c4().is_pure(), Ok(true));
        let mixed = SimplicialComplex::from_facets(3, &[&[1, 2], &[3]]).unwrap();
        assert_eq!(mixed.dimension(), Ok(1));
        assert_eq!(mixed.is_pure(), Ok(false));
        let e = SimplicialComplex::empty(0);
        assert_eq!(e.dimension(), Ok(-1));
        assert_eq!(e.is_pure(), Ok(true));
        assert_eq!(SimplicialComplex::void(2).dimension(), Err(Error::VoidInput));
    }

    #[test]
    fn euler_characteristic() {
        // C_4: -1 + 4 - 4
        assert_eq!(c4().reduced_euler_characteristic(), -1);
        // S^2: -1 + 4 - 6 + 4
        assert_eq!(boundary_tetra().reduced_euler_characteristic(), 1);
        assert_eq!(SimplicialComplex::simplex(3).reduced_euler_characteristic(), 0);
    }
}
