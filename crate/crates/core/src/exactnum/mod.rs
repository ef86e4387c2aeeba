//! Exact arithmetic: integer Laurent polynomials, cyclotomic fields at the
//! level of the root of unity, quantum integers and exact ranks.

mod cyclotomic;
mod laurent;
mod matrix;
pub mod modp;

pub use cyclotomic::{cyclotomic_poly, CycField, CycNum};
pub use laurent::{quantum_factorial, quantum_int, LaurentPolyZ};
pub use matrix::{ExactMatrix, PowerMatrix};
pub use modp::{EchelonBasis, ModpEmbedding, ModpMatrix, PrimeField};

/// `[m]_q` evaluated at the field's designated `q`.
pub fn quantum_int_at_q(field: &std::sync::Arc<CycField>, m: u32) -> CycNum {
    quantum_int(m).eval(&field.q())
}

/// `[m]_q!` evaluated at the field's designated `q`.
pub fn quantum_factorial_at_q(field: &std::sync::Arc<CycField>, m: u32) -> CycNum {
    quantum_factorial(m).eval(&field.q())
}
