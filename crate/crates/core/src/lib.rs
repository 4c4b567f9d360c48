//! Exact block invariants for principal ℓ-blocks of GL/GU (ℓ ∈ {2, 3}) and
//! unipotent 3-blocks of SL/SU.
//!
//! The crate is organised bottom-up:
//!
//! - [`partition`]: partitions, multipartitions, splits, ℓ-decompositions.
//! - [`block`]: k(B), k₀(B) and l(B) lower bounds, plus the SL/SU quantities.
//! - [`groups`]: symbolic defect groups, class counts of iterated wreath
//!   products and a brute-force permutation-group oracle.
//! - [`bounds`]: certified comparison of integers against c·β^x and a
//!   registry of every bound lemma.
//! - [`verifier`]: the two Malle–Navarro inequalities over parameter grids,
//!   with JSON/CSV/Markdown reports.

pub mod block;
pub mod bounds;
pub mod groups;
pub mod partition;
pub mod verifier;

pub use partition::{Ell, Nat};
