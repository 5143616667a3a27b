//! Exact reconstruction of the fine gradings on the split Lie algebra of type D4.
//!
//! The crate builds d4 from its 8×8 matrix model, enumerates the 1152-element
//! isometry group of the D4 root system, lifts isometries to automorphisms,
//! and computes the gradings induced by quasitori of the automorphism group.
//! An independent route through the para-Hurwitz and Okubo symmetric
//! composition algebras realizes the outer order-3 automorphisms and
//! cross-checks the three triality-related gradings.
//!
//! All arithmetic is exact over the cyclotomic field Q(ζ₂₄).

pub mod autgroup;
pub mod error;
pub mod exact;
pub mod gradings;
pub mod liealg;
pub mod report;
pub mod triality;
pub mod weyl;

pub use error::{Error, Result};
