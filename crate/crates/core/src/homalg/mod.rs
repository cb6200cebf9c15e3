//! Exact linear algebra over `Q` and `GF(p)`, boundary matrices and reduced
//! simplicial homology.

mod field;
mod matrix;

use std::collections::HashMap;

pub use field::{FieldSpec, GF2, QQ};
pub use matrix::{rank, SparseMatrix};

use crate::complex::SimplicialComplex;
use crate::error::{Error, Result};
use crate::face::Face;

/// Dimensions of `H̃_i(Δ; k)` for `i = -1, 0, .., dim Δ`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HomologyVector {
    dims: Vec<usize>,
}

impl HomologyVector {
    /// `dim H̃_i`; zero outside the stored range.
    pub fn get(&self, i: isize) -> usize {
        if i < -1 {
            return 0;
        }
        self.dims.get((i + 1) as usize).copied().unwrap_or(0)
    }

    /// Entries starting at `i = -1`.
    pub fn as_slice(&self) -> &[usize] {
        &self.dims
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }

    /// `Σ (-1)^i dim H̃_i`.
    pub fn euler_characteristic(&self) -> i64 {
        self.dims
            .iter()
            .enumerate()
            .map(|(k, &d)| if k % 2 == 0 { -(d as i64) } else { d as i64 })
            .sum()
    }
}

fn boundary_from_faces(cells: &[Face], lower: &[Face], k: FieldSpec) -> SparseMatrix {
    let index: HashMap<Face, usize> = lower.iter().enumerate().map(|(r, f)| (*f, r)).collect();
    let mut m = SparseMatrix::zeros(lower.len(), cells.len());
    for (c, sigma) in cells.iter().enumerate() {
        for (pos, v) in sigma.vertices().enumerate() {
            let sign = if pos % 2 == 0 { 1 } else { -1 };
            let row = index[&sigma.without(v)];
            m.set(row, c, k.normalize(sign));
        }
    }
    m
}

/// `∂_i : C_i → C_{i-1}` with the alternating-sign incidence; bases ordered
/// lexicographically. `∂_0` is the augmentation onto the empty face.
pub fn boundary_matrix(complex: &SimplicialComplex, i: isize, k: FieldSpec) -> SparseMatrix {
    let cells = complex.faces(i);
    let lower = complex.faces(i - 1);
    boundary_from_faces(&cells, &lower, k)
}

/// Reduced homology dimensions over `k`.
pub fn reduced_homology(complex: &SimplicialComplex, k: FieldSpec) -> Result<HomologyVector> {
    let dim = complex.dimension()?;
    let mut by_dim: Vec<Vec<Face>> = vec![Vec::new(); (dim + 2) as usize];
    for f in complex.all_faces() {
        by_dim[f.len()].push(f);
    }
    // ranks[s] = rank of the boundary out of faces of size s (s >= 1)
    let mut ranks = vec![0usize; by_dim.len() + 1];
    for s in 1..by_dim.len() {
        ranks[s] = boundary_from_faces(&by_dim[s], &by_dim[s - 1], k).rank(k);
    }
    let dims = (0..by_dim.len())
        .map(|s| by_dim[s].len() - ranks[s] - ranks[s + 1])
        .collect();
    Ok(HomologyVector { dims })
}

/// Rejects the void complex, which has no chain complex at all.
pub(crate) fn require_nonvoid(complex: &SimplicialComplex) -> Result<()> {
    if complex.is_void() {
        Err(Error::VoidInput)
    } else {
        Ok(())
    }
}
