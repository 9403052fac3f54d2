//! Exact degree counting for sums of two polynomial power sums.
//!
//! For `L(n) = Σ aᵢ pᵢⁿ` and `R(m) = Σ bⱼ qⱼᵐ` with dominant roots `p₁`, `q₁`,
//! the crate computes `D(n,m) = deg(L(n) + R(m))`, counts
//! `A_d = #{(n,m) : 0 ≤ D(n,m) ≤ d}` exactly with a region decomposition
//! backed by a unit-equation height bound, and compares `A_d` against
//! `d² / (deg p₁ · deg q₁)`.
//!
//! Everything is computed over ℚ with arbitrary precision.

pub mod builtin;
pub mod counter;
pub mod error;
pub mod function_field;
pub mod poly;
pub mod power_sum;
pub mod sample;

pub use counter::{CountReport, Limits};
pub use error::{Error, Result, Side};
pub use function_field::{Height, Place, RationalFunction, SUnitSet};
pub use poly::{ExtDegree, Factorization, Polynomial, Rational};
pub use power_sum::{PowerSumSystem, Term};
