//! Periodic functions, quasi-polynomials, equivalence modulo polynomials and
//! period sequences. Everything here is exact.

mod periodic;
mod quasi;

pub use periodic::PeriodicFunction;
pub use quasi::{
    interpolate, minimal_period, period_sequence, qp_add, qp_equivalent, qp_mul, PeriodSequence,
    QuasiPolynomial,
};

#[cfg(test)]
mod tests;
