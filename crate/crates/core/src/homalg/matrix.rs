//! Sparse integer matrices and exact rank over `Q` and `GF(p)`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use super::field::FieldSpec;

/// Integer matrix with only nonzero entries stored. Entries are read in the
/// chosen field when a rank is taken.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct SparseMatrix {
    rows: usize,
    cols: usize,
    entries: BTreeMap<(usize, usize), i64>,
}

impl SparseMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        SparseMatrix {
            rows,
            cols,
            entries: BTreeMap::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Panics if the rows are ragged.
    pub fn from_dense(rows: &[Vec<i64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(rows.len(), cols);
        for (i, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (j, &x) in row.iter().enumerate() {
                m.set(i, j, x);
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn set(&mut self, i: usize, j: usize, x: i64) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if x == 0 {
            self.entries.remove(&(i, j));
        } else {
            self.entries.insert((i, j), x);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, x: i64) {
        let v = self.get(i, j) + x;
        self.set(i, j, v);
    }

    pub fn entries(&self) -> impl Iterator<Item = ((usize, usize), i64)> + '_ {
        self.entries.iter().map(|(&k, &v)| (k, v))
    }

    pub fn nnz(&self) -> usize {
        self.entries.len()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn to_dense(&self) -> Vec<Vec<i64>> {
        let mut d = vec![vec![0; self.cols]; self.rows];
        for (&(i, j), &x) in &self.entries {
            d[i][j] = x;
        }
        d
    }

    /// Integer product `self · rhs`; `None` on a shape mismatch.
    pub fn mul(&self, rhs: &SparseMatrix) -> Option<SparseMatrix> {
        if self.cols != rhs.rows {
            return None;
        }
        let mut by_row: Vec<Vec<(usize, i64)>> = vec![Vec::new(); rhs.rows];
        for (&(k, j), &x) in &rhs.entries {
            by_row[k].push((j, x));
        }
        let mut out = SparseMatrix::zeros(self.rows, rhs.cols);
        for (&(i, k), &a) in &self.entries {
            for &(j, b) in &by_row[k] {
                out.add_to(i, j, a * b);
            }
        }
        Some(out)
    }

    /// Equality after reading both matrices in `k`.
    pub fn equals_in(&self, other: &SparseMatrix, k: FieldSpec) -> bool {
        self.rows == other.rows
            && self.cols == other.cols
            && self
                .entries
                .keys()
                .chain(other.entries.keys())
                .all(|&(i, j)| k.is_zero(self.get(i, j) - other.get(i, j)))
    }

    pub fn is_zero_in(&self, k: FieldSpec) -> bool {
        self.entries.values().all(|&x| k.is_zero(x))
    }

    pub fn rank(&self, k: FieldSpec) -> usize {
        rank(self, k)
    }
}

/// Exact rank of `m` over `k`.
pub fn rank(m: &SparseMatrix, k: FieldSpec) -> usize {
    if m.entries.is_empty() {
        return 0;
    }
    match k {
        FieldSpec::Prime(p) => rank_mod_p(m.to_dense(), p as u64),
        FieldSpec::Rationals => {
            let dense = m.to_dense();
            let wide: Vec<Vec<i128>> = dense
                .iter()
                .map(|r| r.iter().map(|&x| x as i128).collect())
                .collect();
            match bareiss_i128(wide) {
                Some(r) => r,
                None => bareiss_big(
                    dense
                        .iter()
                        .map(|r| r.iter().map(|&x| BigInt::from(x)).collect())
                        .collect(),
                ),
            }
        }
    }
}

fn inv_mod(a: u64, p: u64) -> u64 {
    let (mut t, mut new_t) = (0i64, 1i64);
    let (mut r, mut new_r) = (p as i64, a as i64);
    while new_r != 0 {
        let q = r / new_r;
        (t, new_t) = (new_t, t - q * new_t);
        (r, new_r) = (new_r, r - q * new_r);
    }
    debug_assert_eq!(r, 1);
    t.rem_euclid(p as i64) as u64
}

fn rank_mod_p(dense: Vec<Vec<i64>>, p: u64) -> usize {
    let mut a: Vec<Vec<u64>> = dense
        .into_iter()
        .map(|r| r.into_iter().map(|x| x.rem_euclid(p as i64) as u64).collect())
        .collect();
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let inv = inv_mod(a[r][c], p);
        for j in c..cols {
            a[r][j] = a[r][j] * inv % p;
        }
        for i in r + 1..rows {
            let f = a[i][c];
            if f == 0 {
                continue;
            }
            for j in c..cols {
                a[i][j] = (a[i][j] + (p - f) * a[r][j]) % p;
            }
        }
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}

/// Fraction-free elimination in `i128`; `None` when an intermediate overflows.
fn bareiss_i128(mut a: Vec<Vec<i128>>) -> Option<usize> {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev: i128 = 1;
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| a[i][c] != 0) else {
            continue;
        };
        a.swap(r, piv);
        let pv = a[r][c];
        for i in r + 1..rows {
            let f = a[i][c];
            for j in c + 1..cols {
                let num = pv.checked_mul(a[i][j])?.checked_sub(f.checked_mul(a[r][j])?)?;
                debug_assert_eq!(num % prev, 0);
                a[i][j] = num / prev;
            }
            a[i][c] = 0;
        }
        prev = pv;
        r += 1;
        if r == rows {
            break;
        }
    }
    Some(r)
}

fn bareiss_big(mut a: Vec<Vec<BigInt>>) -> usize {
    let rows = a.len();
    let cols = a.first().map_or(0, Vec::len);
    let mut prev = BigInt::one();
    let mut r = 0;
    for c in 0..cols {
        let Some(piv) = (r..rows).find(|&i| !a[i][c].is_zero()) else {
            continue;
        };
        a.swap(r, piv);
        let pv = a[r][c].clone();
        for i in r + 1..rows {
            let f = a[i][c].clone();
            for j in c + 1..cols {
                let num = &pv * &a[i][j] - &f * &a[r][j];
                a[i][j] = num / &prev;
            }
            a[i][c] = BigInt::zero();
        }
        prev = pv;
        r += 1;
        if r == rows {
            break;
        }
    }
    r
}
