//! Exact integer and rational linear algebra: matrices over `BigInt`,
//! column Hermite and Smith normal forms, and dense linear algebra over Q
//! and F_p.

pub mod field;
mod hnf;
pub mod linalg;
mod matrix;
mod snf;

pub use field::{Field, PrimeField, Rationals};
pub use hnf::{hnf, hnf_basis, solve_echelon, HnfResult};
pub use linalg::{coords_in, extend_basis, in_span, intersect_spans, span_basis, Mat};
pub use matrix::{clear_denominators, IntMatrix, RatMatrix};
pub use snf::{snf, SnfResult};

use crate::error::{Error, Result};
use num_rational::BigRational;

/// Some exact solution of `A·x = b`; free variables are set to zero, so the
/// choice is determined by the pivot order.
pub fn solve_exact(a: &RatMatrix, b: &[BigRational]) -> Result<Vec<BigRational>> {
    if b.len() != a.rows() {
        return Err(Error::DimensionMismatch(format!("{} rows vs rhs of length {}", a.rows(), b.len())));
    }
    let m = Mat::from_rows(Rationals, a.to_entries(), a.cols());
    m.solve(b).ok_or(Error::NoSolution)
}

/// Basis of the null space of `a` over F_p (entries reduced mod p first).
pub fn kernel_mod_p(a: &IntMatrix, p: u64) -> Result<Vec<Vec<u64>>> {
    let f = PrimeField::new(p)?;
    let rows = (0..a.rows()).map(|i| a.row(i).iter().map(|x| f.from_bigint(x)).collect()).collect();
    Ok(Mat::from_rows(f, rows, a.cols()).nullspace())
}
