//! Cohen-Macaulayness of simplicial complexes: the Reisner criterion,
//! l-Cohen-Macaulayness by vertex deletion, and multigraded Betti numbers of
//! Stanley-Reisner rings via Hochster's formula.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{subsets_of_size, Face};
use crate::homalg::{reduced_homology, require_nonvoid, FieldSpec};

/// Multigraded Betti numbers `β_{i,F}` on squarefree degrees `F ⊆ [n]`.
/// Only nonzero multiplicities are stored.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct BettiTable {
    n: usize,
    entries: BTreeMap<(usize, Face), usize>,
}

impl BettiTable {
    pub fn new(n: usize) -> Self {
        BettiTable {
            n,
            entries: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, face: Face) -> usize {
        self.entries.get(&(i, face)).copied().unwrap_or(0)
    }

    /// Zero multiplicities are dropped.
    pub fn set(&mut self, i: usize, face: Face, beta: usize) {
        debug_assert!(face.is_subset(Face::full(self.n)));
        if beta == 0 {
            self.entries.remove(&(i, face));
        } else {
            self.entries.insert((i, face), beta);
        }
    }

    /// Nonzero entries sorted by `(i, F)`.
    pub fn iter(&self) -> impl Iterator<Item = (usize, Face, usize)> + '_ {
        self.entries.iter().map(|(&(i, f), &b)| (i, f, b))
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Largest homological degree with a nonzero entry.
    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|&(i, _)| i).max()
    }

    /// Entries in degrees `F ⊆ domain`, relabeled onto `{1, .., #domain}`.
    pub fn restricted_to(&self, domain: Face) -> BettiTable {
        let mut t = BettiTable::new(domain.len());
        for (i, f, b) in self.iter() {
            if f.is_subset(domain) {
                t.set(i, f.compress(domain), b);
            }
        }
        t
    }

    /// Tab-separated table with header `i\tF\tbeta`.
    pub fn to_tsv(&self) -> String {
        let mut s = String::from("i\tF\tbeta\n");
        for (i, f, b) in self.iter() {
            let _ = writeln!(s, "{i}\t{f}\t{b}");
        }
        s
    }
}

/// Reisner-criterion evaluator with link results memoized by facet list.
pub(crate) struct ReisnerChecker {
    k: FieldSpec,
    cache: HashMap<Vec<Face>, bool>,
}

impl ReisnerChecker {
    pub(crate) fn new(k: FieldSpec) -> Self {
        ReisnerChecker {
            k,
            cache: HashMap::new(),
        }
    }

    /// `H̃_i(L; k) = 0` for every `i < dim L`.
    fn acyclic_below_top(&mut self, link: &SimplicialComplex) -> bool {
        if let Some(&v) = self.cache.get(link.facets()) {
            return v;
        }
        let dim = link.dimension().expect("links of faces are nonvoid");
        let h = reduced_homology(link, self.k).expect("nonvoid");
        let ok = (-1..dim).all(|i| h.get(i) == 0);
        self.cache.insert(link.facets().to_vec(), ok);
        ok
    }

    pub(crate) fn is_cm(&mut self, complex: &SimplicialComplex) -> bool {
        // Reisner's condition forces purity; checking it first is cheap.
        if !complex.is_pure().expect("nonvoid") {
            return false;
        }
        for face in complex.all_faces() {
            let link = complex.link(face).expect("face of the complex");
            if !self.acyclic_below_top(&link) {
                return false;
            }
        }
        true
    }
}

/// Reisner criterion: for every face `F` (including `∅`),
/// `H̃_i(lk F; k) = 0` for all `i < dim lk F`.
pub fn is_cohen_macaulay(complex: &SimplicialComplex, k: FieldSpec) -> Result<bool> {
    require_nonvoid(complex)?;
    Ok(ReisnerChecker::new(k).is_cm(complex))
}

/// Largest `l ≤ cap` such that `complex` is l-CM, or 0 if it is not CM.
/// Deletion sets are enumerated by increasing cardinality.
pub(crate) fn cm_level(complex: &SimplicialComplex, k: FieldSpec, cap: usize) -> usize {
    let mut checker = ReisnerChecker::new(k);
    if !checker.is_cm(complex) {
        return 0;
    }
    let n = complex.vertex_count();
    let dim = complex.dimension().expect("nonvoid");
    let full = Face::full(n);
    let mut level = 1;
    while level < cap {
        // passing level + 1 needs every W with #W = level
        if level > n {
            level = cap;
            break;
        }
        let ok = subsets_of_size(full, level).into_iter().all(|w| {
            let rest = complex.restrict_keep_labels(full.difference(w));
            rest.dimension().expect("nonvoid") == dim && checker.is_cm(&rest)
        });
        if !ok {
            break;
        }
        level += 1;
    }
    level
}

/// Definition of l-Cohen-Macaulay by vertex deletion: `Δ|_{-W}` is CM of
/// dimension `dim Δ` for every `W ⊆ [n]` with `#W < l`.
pub fn is_l_cm(complex: &SimplicialComplex, l: usize, k: FieldSpec) -> Result<bool> {
    require_nonvoid(complex)?;
    let l = l.max(1);
    Ok(cm_level(complex, k, l) >= l)
}

/// The largest `l ∈ [1, n]` with `Δ` l-CM, or 0 when `Δ` is not CM.
pub fn max_l(complex: &SimplicialComplex, k: FieldSpec) -> Result<usize> {
    require_nonvoid(complex)?;
    Ok(cm_level(complex, k, complex.vertex_count().max(1)))
}

/// Betti numbers of `k[Δ]` by Hochster's formula
/// `β_{i,F} = dim H̃_{#F-i-1}(Δ|_F; k)`.
pub fn hochster_betti(complex: &SimplicialComplex, k: FieldSpec) -> Result<BettiTable> {
    require_nonvoid(complex)?;
    let n = complex.vertex_count();
    let degrees: Vec<Face> = Face::full(n).subsets().collect();
    let columns: Vec<Vec<(usize, Face, usize)>> = degrees
        .par_iter()
        .map(|&f| {
            let restricted = complex.restrict_keep_labels(f);
            let h = reduced_homology(&restricted, k).expect("nonvoid");
            let top = restricted.dimension().expect("nonvoid");
            (-1..=top)
                .filter_map(|j| {
                    let b = h.get(j);
                    let i = f.len() as isize - j - 1;
                    (b > 0 && i >= 0).then_some((i as usize, f, b))
                })
                .collect()
        })
        .collect();
    let mut table = BettiTable::new(n);
    for (i, f, b) in columns.into_iter().flatten() {
        table.set(i, f, b);
    }
    Ok(table)
}

/// Auslander–Buchsbaum reading of a Betti table: a module of Krull dimension
/// `d` over `n` variables is CM iff its projective dimension is `n - d`.
pub fn table_is_cm(table: &BettiTable, d: usize) -> bool {
    table.projective_dimension() == Some(table.n().saturating_sub(d)) && d <= table.n()
}

/// Krull dimension of `k[Δ]`: `dim Δ + 1`.
pub fn krull_dimension(complex: &SimplicialComplex) -> Result<usize> {
    Ok((complex.dimension()? + 1) as usize)
}

pub(crate) fn require_cm_table(table: &BettiTable, d: usize) -> Result<()> {
    if table_is_cm(table, d) {
        Ok(())
    } else {
        Err(Error::RequiresCm)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homalg::{GF2, QQ};

    fn f(v: &[u32]) -> Face {
        Face::from_vertices(v.iter().copied())
    }

    fn cx(n: usize, facets: &[&[u32]]) -> SimplicialComplex {
        SimplicialComplex::from_facets(n, facets).unwrap()
    }

    fn c4() -> SimplicialComplex {
        cx(4, &[&[1, 2], &[2, 3], &[3, 4], &[1, 4]])
    }

    fn boundary_tetra() -> SimplicialComplex {
        cx(4, &[&[1, 2, 3], &[1, 2, 4], &[1, 3, 4], &[2, 3, 4]])
    }

    #[test]
    fn reisner_examples() {
        assert_eq!(is_cohen_macaulay(&boundary_tetra(), GF2), Ok(true));
        let two_edges = cx(4, &[&[1, 2], &[3, 4]]);
        assert_eq!(is_cohen_macaulay(&two_edges, QQ), Ok(false));
        assert_eq!(
            is_cohen_macaulay(&SimplicialComplex::void(2), QQ),
            Err(Error::VoidInput)
        );
        assert_eq!(is_cohen_macaulay(&SimplicialComplex::empty(0), QQ), Ok(true));
    }

    #[test]
    fn l_cm_examples() {
        assert_eq!(is_l_cm(&boundary_tetra(), 2, QQ), Ok(true));
        assert_eq!(is_l_cm(&boundary_tetra(), 3, QQ), Ok(false));
        let k4 = boundary_tetra().skeleton(1);
        assert_eq!(is_l_cm(&k4, 3, QQ), Ok(true));
        assert_eq!(is_l_cm(&c4(), 1, QQ), is_cohen_macaulay(&c4(), QQ));
    }

    #[test]
    fn max_l_examples() {
        assert_eq!(max_l(&c4(), QQ), Ok(2));
        for d in 1..=4u32 {
            let n = d as usize + 1;
            let sphere = SimplicialComplex::new(n, Face::full(n).vertices().map(|v| Face::full(n).without(v))).unwrap();
            assert_eq!(max_l(&sphere, QQ), Ok(2), "boundary of the {d}-simplex");
        }
        assert_eq!(max_l(&cx(2, &[&[1], &[2]]), QQ), Ok(2));
        assert_eq!(max_l(&cx(4, &[&[1, 2], &[3, 4]]), QQ), Ok(0));
        assert_eq!(max_l(&SimplicialComplex::simplex(3), QQ), Ok(1));
    }

    #[test]
    fn hochster_examples() {
        let pts = hochster_betti(&cx(2, &[&[1], &[2]]), QQ).unwrap();
        assert_eq!(pts.iter().collect::<Vec<_>>(), vec![(0, Face::EMPTY, 1), (1, f(&[1, 2]), 1)]);

        let t = hochster_betti(&c4(), QQ).unwrap();
        assert_eq!(
            t.iter().collect::<Vec<_>>(),
            vec![
                (0, Face::EMPTY, 1),
                (1, f(&[1, 3]), 1),
                (1, f(&[2, 4]), 1),
                (2, f(&[1, 2, 3, 4]), 1)
            ]
        );
        let s = hochster_betti(&SimplicialComplex::simplex(4), GF2).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![(0, Face::EMPTY, 1)]);
    }

    #[test]
    fn tsv_rendering() {
        let t = hochster_betti(&c4(), QQ).unwrap();
        assert_eq!(t.to_tsv(), "i\tF\tbeta\n0\t-\t1\n1\t1,3\t1\n1\t2,4\t1\n2\t1,2,3,4\t1\n");
    }

    #[test]
    fn pd_reads_cm() {
        let t = hochster_betti(&c4(), QQ).unwrap();
        assert!(table_is_cm(&t, 2));
        let two_edges = hochster_betti(&cx(4, &[&[1, 2], &[3, 4]]), QQ).unwrap();
        assert!(!table_is_cm(&two_edges, 2));
    }
}
