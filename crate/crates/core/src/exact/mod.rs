//! Exact scalars, dense linear algebra and integer normal forms.
//!
//! Nothing in this crate uses floating point: every comparison is an exact
//! equality test.

mod cyclo;
mod matrix;
mod snf;
mod span;

pub use cyclo::{cyclotomic_polynomial, field, init_conductor, CycloScalar, CyclotomicField, DEFAULT_CONDUCTOR};
pub use matrix::{span_rank, ExactMatrix, Vector};
pub use span::SpanReader;
pub use snf::{
    canonical_invariant_factors, cokernel_invariants, hermite_normal_form, integer_kernel, smith_normal_form,
    AbelianInvariants, IntMatrix, SnfResult,
};

/// Arbitrary-precision rational, always in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// ζ_d for d dividing the conductor.
pub fn cyclo_root_of_unity(d: u32) -> crate::Result<CycloScalar> {
    CycloScalar::root_of_unity(d)
}

/// Right null space of `m`; alias of [`ExactMatrix::kernel`].
pub fn kernel(m: &ExactMatrix) -> Vec<Vector> {
    m.kernel()
}

pub fn is_zero_vector(v: &[CycloScalar]) -> bool {
    v.iter().all(CycloScalar::is_zero)
}
