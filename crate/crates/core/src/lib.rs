//! Cohen-Macaulay and higher Cohen-Macaulay checks for simplicial complexes,
//! squarefree modules and simplicial posets over `Q` or `GF(p)`.
//!
//! * [`complex`] – simplicial complexes stored by facets.
//! * [`homalg`] – exact ranks, boundary matrices, reduced homology.
//! * [`topocm`] – Reisner criterion, l-CM by vertex deletion, Hochster's formula.
//! * [`sqfree`] – squarefree modules, Koszul Betti numbers, canonical duality.
//! * [`sposet`] – simplicial posets and their face rings.
//! * [`verify`] – instance generators and equivalence sweeps.

pub mod complex;
pub mod error;
pub mod face;
pub mod formats;
pub mod homalg;
pub mod sposet;
pub mod sqfree;
pub mod topocm;
pub mod verify;

pub use complex::{Relabeling, SimplicialComplex};
pub use error::{Error, PosetError, Result};
pub use face::Face;
pub use homalg::{FieldSpec, HomologyVector, SparseMatrix};
pub use sposet::{RawPoset, SimplicialPoset};
pub use sqfree::SquarefreeModule;
pub use topocm::BettiTable;
