//! Moduli cell complexes of quasilinkages (constant-sum simple games).
//!
//! A quasilinkage on `[n]` is a family of "short" subsets containing every
//! singleton, closed under subsets, and containing exactly one set of each
//! complementary pair. Weighted games come from generic length vectors of
//! polygonal linkages; the others are called imaginary. Every quasilinkage
//! induces a regular cell complex whose cells are cyclically ordered
//! partitions of `[n]` into short blocks; this crate builds that complex and
//! its dual, computes integer homology, checks the manifold conditions, and
//! enumerates all quasilinkages on small ground sets through flips.

pub mod chambers;
pub mod cli;
pub mod complex;
pub mod error;
pub mod gale;
pub mod games;
pub mod homology;
pub mod io;
pub mod lp;
pub mod realize;
pub mod subset;

pub use complex::{Cell, CellComplex, CyclicPartition, Variant};
pub use error::{Error, Result, Violation};
pub use games::{validate, ConflictFreeFamily, FamilyForm, Quasilinkage, ShortPartition};
pub use realize::{realize, LengthVector, RealizationResult};
pub use subset::Subset;
