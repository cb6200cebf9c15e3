//! Squarefree modules over `k[x_1, .., x_n]`, represented by their
//! squarefree components `M_F` and the multiplication maps
//! `x_j : M_F → M_{F ∪ {j}}`.
//!
//! Betti numbers are computed as Koszul homology degree by degree: in
//! squarefree degree `F` the `i`-th chain group is `⊕_{G ⊆ F, #G = i} M_{F∖G}`
//! with differential `m ⊗ e_G ↦ Σ_{j ∈ G} sign(j, G) · x_j m ⊗ e_{G∖j}`, where
//! `sign(j, G) = (-1)^{#{j' ∈ G : j' < j}}`.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::{subsets_of_size, Face, MAX_VERTICES};
use crate::homalg::{FieldSpec, SparseMatrix};
use crate::topocm::{require_cm_table, table_is_cm, BettiTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SquarefreeModule {
    n: usize,
    dims: BTreeMap<Face, usize>,
    maps: BTreeMap<(Face, u32), SparseMatrix>,
}

impl SquarefreeModule {
    /// Checks shapes and index ranges. Commutativity depends on the field and
    /// is checked by [`SquarefreeModule::check_commutativity`].
    pub fn new(
        n: usize,
        dims: BTreeMap<Face, usize>,
        maps: BTreeMap<(Face, u32), SparseMatrix>,
    ) -> Result<Self> {
        if n > MAX_VERTICES {
            return Err(Error::TooManyVertices(n));
        }
        let full = Face::full(n);
        let mut dims = dims;
        dims.retain(|_, d| *d > 0);
        if let Some(f) = dims.keys().find(|f| !f.is_subset(full)) {
            return Err(Error::InvalidModule(format!("component {f} outside [{n}]")));
        }
        let mut maps = maps;
        maps.retain(|_, m| !m.is_zero());
        let dim_of = |f: &Face| dims.get(f).copied().unwrap_or(0);
        for ((f, j), m) in &maps {
            if *j == 0 || *j as usize > n || f.contains(*j) || !f.is_subset(full) {
                return Err(Error::InvalidModule(format!("map x_{j} on component {f} is out of range")));
            }
            let target = f.with(*j);
            if m.rows() != dim_of(&target) || m.cols() != dim_of(f) {
                return Err(Error::InvalidModule(format!(
                    "map x_{j} on {f} has shape {}x{}, expected {}x{}",
                    m.rows(),
                    m.cols(),
                    dim_of(&target),
                    dim_of(f)
                )));
            }
        }
        Ok(SquarefreeModule { n, dims, maps })
    }

    pub fn zero(n: usize) -> Self {
        SquarefreeModule {
            n,
            dims: BTreeMap::new(),
            maps: BTreeMap::new(),
        }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn component_dim(&self, f: Face) -> usize {
        self.dims.get(&f).copied().unwrap_or(0)
    }

    /// Nonzero components in lexicographic order of their degrees.
    pub fn components(&self) -> impl Iterator<Item = (Face, usize)> + '_ {
        self.dims.iter().map(|(&f, &d)| (f, d))
    }

    /// Nonzero multiplication maps.
    pub fn maps(&self) -> impl Iterator<Item = ((Face, u32), &SparseMatrix)> + '_ {
        self.maps.iter().map(|(&k, m)| (k, m))
    }

    /// `x_j : M_F → M_{F∪{j}}`, the zero matrix of the right shape if unset.
    pub fn map(&self, f: Face, j: u32) -> SparseMatrix {
        self.maps.get(&(f, j)).cloned().unwrap_or_else(|| {
            SparseMatrix::zeros(self.component_dim(f.with(j)), self.component_dim(f))
        })
    }

    pub fn is_zero(&self) -> bool {
        self.dims.is_empty()
    }

    /// `x_k x_j = x_j x_k` on every `M_F` with `j ≠ k ∉ F`, read in `k`.
    pub fn check_commutativity(&self, field: FieldSpec) -> Result<()> {
        let full = Face::full(self.n);
        for &f in self.dims.keys() {
            let outside: Vec<u32> = full.difference(f).vertices().collect();
            for (a, &j) in outside.iter().enumerate() {
                for &k in &outside[a + 1..] {
                    let lhs = self.map(f.with(j), k).mul(&self.map(f, j)).expect("shapes checked");
                    let rhs = self.map(f.with(k), j).mul(&self.map(f, k)).expect("shapes checked");
                    if !lhs.equals_in(&rhs, field) {
                        return Err(Error::InvalidModule(format!(
                            "x_{k} x_{j} != x_{j} x_{k} on component {f}"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// `k[Δ]` as a squarefree module: `M_F = k` for `F ∈ Δ`, all maps `[1]`
/// inside `Δ`. The void complex yields the zero module.
pub fn from_complex(complex: &SimplicialComplex) -> SquarefreeModule {
    let n = complex.vertex_count();
    let mut dims = BTreeMap::new();
    let mut maps = BTreeMap::new();
    let full = Face::full(n);
    for f in complex.all_faces() {
        dims.insert(f, 1);
        for j in full.difference(f).vertices() {
            if complex.contains(f.with(j)) {
                maps.insert((f, j), SparseMatrix::identity(1));
            }
        }
    }
    SquarefreeModule { n, dims, maps }
}

/// `ω_F = k[F](-F)`: a single one-dimensional component in degree `F`.
pub fn omega_module(n: usize, f: Face) -> SquarefreeModule {
    assert!(f.is_subset(Face::full(n)), "{f} is not a subset of [{n}]");
    SquarefreeModule {
        n,
        dims: BTreeMap::from([(f, 1)]),
        maps: BTreeMap::new(),
    }
}

/// `M|_W` over `k[x_i : i ∈ W]`, relabeled onto `{1, .., #W}`.
pub fn restrict(m: &SquarefreeModule, w: Face) -> SquarefreeModule {
    let w = w.intersection(Face::full(m.n));
    let dims = m
        .dims
        .iter()
        .filter(|(f, _)| f.is_subset(w))
        .map(|(f, &d)| (f.compress(w), d))
        .collect();
    let maps = m
        .maps
        .iter()
        .filter(|((f, j), _)| f.with(*j).is_subset(w))
        .map(|((f, j), mat)| ((f.compress(w), w.rank_of(*j) as u32 + 1), mat.clone()))
        .collect();
    SquarefreeModule {
        n: w.len(),
        dims,
        maps,
    }
}

/// `M^{<i>} = M / M^{>i}`: components with `#F ≤ i`.
pub fn module_skeleton(m: &SquarefreeModule, i: usize) -> SquarefreeModule {
    SquarefreeModule {
        n: m.n,
        dims: m.dims.iter().filter(|(f, _)| f.len() <= i).map(|(f, d)| (*f, *d)).collect(),
        maps: m
            .maps
            .iter()
            .filter(|((f, _), _)| f.len() < i)
            .map(|(k, v)| (*k, v.clone()))
            .collect(),
    }
}

fn koszul_sign(j: u32, g: Face) -> i64 {
    if g.rank_of(j).is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Koszul homology dimensions in squarefree degree `degree`.
fn koszul_degree(m: &SquarefreeModule, degree: Face, field: FieldSpec) -> Vec<(usize, usize)> {
    let top = degree.len();
    // terms[i] lists (G, offset) for the summands M_{F∖G} ⊗ e_G of K_i
    let mut terms: Vec<Vec<(Face, usize)>> = Vec::with_capacity(top + 1);
    let mut sizes = Vec::with_capacity(top + 1);
    for i in 0..=top {
        let mut offset = 0;
        let mut blocks = Vec::new();
        for g in subsets_of_size(degree, i) {
            let d = m.component_dim(degree.difference(g));
            if d > 0 {
                blocks.push((g, offset));
                offset += d;
            }
        }
        terms.push(blocks);
        sizes.push(offset);
    }
    // ranks[i] = rank of d_i : K_i → K_{i-1}
    let mut ranks = vec![0usize; top + 2];
    for i in 1..=top {
        if sizes[i] == 0 || sizes[i - 1] == 0 {
            continue;
        }
        let lower: BTreeMap<Face, usize> = terms[i - 1].iter().copied().collect();
        let mut d = SparseMatrix::zeros(sizes[i - 1], sizes[i]);
        for &(g, col0) in &terms[i] {
            let source = degree.difference(g);
            for j in g.vertices() {
                let Some(&row0) = lower.get(&g.without(j)) else {
                    continue;
                };
                let Some(block) = m.maps.get(&(source, j)) else {
                    continue;
                };
                let sign = koszul_sign(j, g);
                for ((r, c), x) in block.entries() {
                    d.add_to(row0 + r, col0 + c, sign * x);
                }
            }
        }
        ranks[i] = d.rank(field);
    }
    (0..=top)
        .filter_map(|i| {
            let b = sizes[i] - ranks[i] - ranks[i + 1];
            (b > 0).then_some((i, b))
        })
        .collect()
}

/// `β_{i,F}(M) = dim_k Tor_i(k, M)_F` for every squarefree `F`.
pub fn koszul_betti(m: &SquarefreeModule, field: FieldSpec) -> Result<BettiTable> {
    m.check_commutativity(field)?;
    let support: Vec<Face> = m.dims.keys().copied().collect();
    let degrees: Vec<Face> = Face::full(m.n)
        .subsets()
        .filter(|f| support.iter().any(|s| s.is_subset(*f)))
        .collect();
    let columns: Vec<(Face, Vec<(usize, usize)>)> = degrees
        .par_iter()
        .map(|&f| (f, koszul_degree(m, f, field)))
        .collect();
    let mut t = BettiTable::new(m.n);
    for (f, col) in columns {
        for (i, b) in col {
            t.set(i, f, b);
        }
    }
    Ok(t)
}

/// Krull dimension: `max {#F : M_F ≠ 0}`.
pub fn module_dim(m: &SquarefreeModule) -> Result<usize> {
    m.dims.keys().map(|f| f.len()).max().ok_or(Error::ZeroModule)
}

/// CM iff the projective dimension read from the Betti table is `n - dim M`.
pub fn is_module_cm(m: &SquarefreeModule, field: FieldSpec) -> Result<bool> {
    let d = module_dim(m)?;
    Ok(table_is_cm(&koszul_betti(m, field)?, d))
}

/// Largest `l ≤ cap` for which `m` is l-CM; 0 if `m` is not CM.
pub(crate) fn module_cm_level(m: &SquarefreeModule, field: FieldSpec, cap: usize) -> Result<usize> {
    let d = module_dim(m)?;
    if !is_module_cm(m, field)? {
        return Ok(0);
    }
    let full = Face::full(m.n);
    let mut level = 1;
    while level < cap && level <= m.n {
        for w in subsets_of_size(full, level) {
            let r = restrict(m, full.difference(w));
            if r.is_zero() {
                continue;
            }
            if module_dim(&r)? != d || !is_module_cm(&r, field)? {
                return Ok(level);
            }
        }
        level += 1;
    }
    Ok(if level > m.n { cap.max(level) } else { level })
}

/// For every `W` with `#W < l`, `M|_{-W}` is zero or CM of dimension `dim M`.
pub fn is_module_l_cm(m: &SquarefreeModule, l: usize, field: FieldSpec) -> Result<bool> {
    let l = l.max(1);
    Ok(module_cm_level(m, field, l)? >= l)
}

/// Largest `l ∈ [1, n + 1]` with `m` l-CM, or 0 if `m` is not CM.
pub fn module_max_l(m: &SquarefreeModule, field: FieldSpec) -> Result<usize> {
    module_cm_level(m, field, m.n + 1)
}

/// `β_{i,F} = 0` whenever `i > n - d - l + 1` and `#F < i + d`.
pub fn thm25_condition_ii(t: &BettiTable, n: usize, d: usize, l: usize) -> bool {
    let bound = n as isize - d as isize - l as isize + 1;
    t.iter()
        .all(|(i, f, _)| !(i as isize > bound && f.len() < i + d))
}

/// `β_{i,F} = 0` whenever `i < l - 1` and `#F > i`, applied to the table of
/// the canonical module.
pub fn thm25_condition_iii(canonical: &BettiTable, l: usize) -> bool {
    canonical
        .iter()
        .all(|(i, f, _)| !((i as isize) < l as isize - 1 && f.len() > i))
}

/// Betti table of `Ext^{n-d}(M, ω_S)` from that of a CM module `M`:
/// `U(i, F) = T(n - d - i, [n] ∖ F)`.
pub fn canonical_betti(t: &BettiTable, n: usize, d: usize) -> Result<BettiTable> {
    if t.n() != n {
        return Err(Error::Internal(format!("table is over {} variables, not {n}", t.n())));
    }
    require_cm_table(t, d)?;
    let full = Face::full(n);
    let shift = n - d;
    let mut u = BettiTable::new(n);
    for (i, f, b) in t.iter() {
        u.set(shift - i, full.difference(f), b);
    }
    Ok(u)
}

/// 2-CM test through degree-0 generation of the canonical module.
pub fn is_2cm_via_canonical(m: &SquarefreeModule, field: FieldSpec) -> Result<bool> {
    let d = module_dim(m)?;
    let t = koszul_betti(m, field)?;
    let u = canonical_betti(&t, m.n, d)?;
    let generated_in_degree_0 = u.iter().all(|(i, f, _)| i != 0 || f.is_empty());
    Ok(generated_in_degree_0)
}
