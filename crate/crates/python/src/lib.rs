//! Python bindings: polynomials are strings like "t^2+5", lattices are
//! `(den, columns)` pairs of integers in the power basis of Q[t]/(f), and
//! matrices are lists of rows.

use latsemi::exactla::IntMatrix;
use latsemi::lattice::{FullLattice, Order};
use latsemi::semigroup::{self, EquivalenceVerdict};
use latsemi::{classify, io, latmac, Budget, Error};
use num_bigint::BigInt;
use pyo3::exceptions::{PyRuntimeError, PyValueError};
use pyo3::prelude::*;

pyo3::create_exception!(pylatsemi, BudgetExceeded, PyRuntimeError);

fn py_err(e: Error) -> PyErr {
    if e.is_budget() {
        BudgetExceeded::new_err(e.to_string())
    } else {
        PyValueError::new_err(e.to_string())
    }
}

type Matrix = Vec<Vec<BigInt>>;

fn lattice(poly: &str, den: BigInt, basis: Matrix) -> Result<FullLattice, Error> {
    let alg = latmac::algebra_of(&io::parse_poly(poly)?)?;
    if basis.len() != alg.dim() || basis.iter().any(|c| c.len() != alg.dim()) {
        return Err(Error::DimensionMismatch(format!("basis must be {0} columns of length {0}", alg.dim())));
    }
    FullLattice::from_int(&alg, &den, &IntMatrix::from_cols(alg.dim(), &basis))
}

fn budget(eps_box: u64) -> Budget {
    Budget { eps_box, ..Budget::default() }
}

/// Coefficients of f, constant term first.
#[pyfunction]
fn parse_poly(poly: &str) -> PyResult<Vec<BigInt>> {
    io::parse_poly(poly).map_err(py_err)
}

/// The companion matrix of f.
#[pyfunction]
fn companion(poly: &str) -> PyResult<Matrix> {
    let f = io::parse_poly(poly).map_err(py_err)?;
    Ok(latmac::companion(&f).map_err(py_err)?.to_rows())
}

/// Radical and socle dimension sequences of Q[t]/(f).
#[pyfunction]
fn filtrations(poly: &str) -> PyResult<(Vec<usize>, Vec<usize>)> {
    let alg = latmac::algebra_of(&io::parse_poly(poly).map_err(py_err)?).map_err(py_err)?;
    let f = alg.filtrations();
    Ok((f.radical_dims(), f.socle_dims()))
}

/// Order of the Picard group of Z[t]/(f).
#[pyfunction]
fn picard_order(poly: &str) -> PyResult<usize> {
    let alg = latmac::algebra_of(&io::parse_poly(poly).map_err(py_err)?).map_err(py_err)?;
    let o = Order::standard(&alg).map_err(py_err)?;
    Ok(classify::picard(&o, &Budget::default()).map_err(py_err)?.order())
}

/// Number of GL_n(Z)-conjugacy classes of integer matrices with
/// characteristic polynomial f (f separable).
#[pyfunction]
fn class_count(poly: &str) -> PyResult<usize> {
    let f = io::parse_poly(poly).map_err(py_err)?;
    Ok(latmac::class_count(&f, None, &Budget::default()).map_err(py_err)?.total())
}

/// ("yes", U) with U·B1·U⁻¹ = B2, ("no", None) or ("unknown", None).
#[pyfunction]
#[pyo3(signature = (b1, b2, eps_box = 50))]
fn conjugate(b1: Matrix, b2: Matrix, eps_box: u64) -> PyResult<(&'static str, Option<Matrix>)> {
    let v = latmac::gl_conjugate(&IntMatrix::from_rows(&b1), &IntMatrix::from_rows(&b2), &budget(eps_box)).map_err(py_err)?;
    Ok(match v {
        EquivalenceVerdict::Yes(u) => ("yes", Some(u.to_rows())),
        EquivalenceVerdict::No => ("no", None),
        EquivalenceVerdict::UnknownWithinBound(_) => ("unknown", None),
    })
}

#[pyfunction]
fn is_invertible(poly: &str, den: BigInt, basis: Matrix) -> PyResult<bool> {
    Ok(semigroup::is_invertible(&lattice(poly, den, basis).map_err(py_err)?).verdict)
}

/// Least N with L^N invertible over its multiplier ring.
#[pyfunction]
fn power_index(poly: &str, den: BigInt, basis: Matrix) -> PyResult<u32> {
    Ok(semigroup::power_invertibility_index(&lattice(poly, den, basis).map_err(py_err)?))
}

#[pymodule]
fn pylatsemi(m: &Bound<'_, PyModule>) -> PyResult<()> {
    m.add("BudgetExceeded", m.py().get_type::<BudgetExceeded>())?;
    m.add_function(wrap_pyfunction!(parse_poly, m)?)?;
    m.add_function(wrap_pyfunction!(companion, m)?)?;
    m.add_function(wrap_pyfunction!(filtrations, m)?)?;
    m.add_function(wrap_pyfunction!(picard_order, m)?)?;
    m.add_function(wrap_pyfunction!(class_count, m)?)?;
    m.add_function(wrap_pyfunction!(conjugate, m)?)?;
    m.add_function(wrap_pyfunction!(is_invertible, m)?)?;
    m.add_function(wrap_pyfunction!(power_index, m)?)?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> Matrix {
        rows.iter().map(|r| r.iter().map(|&x| BigInt::from(x)).collect()).collect()
    }

    #[test]
    fn wrappers() {
        assert_eq!(picard_order("t^2+5").unwrap(), 2);
        assert_eq!(class_count("t^2+3").unwrap(), 2);
        let b = companion("t^2+5").unwrap();
        assert_eq!(b, m(&[&[0, -5], &[1, 0]]));
        assert_eq!(conjugate(b.clone(), b.clone(), 50).unwrap(), ("yes", Some(m(&[&[1, 0], &[0, 1]]))));
        assert_eq!(conjugate(b, m(&[&[-1, -3], &[2, 1]]), 50).unwrap(), ("no", None));
        assert_eq!(filtrations("t^3").unwrap(), (vec![3, 2, 1, 0], vec![0, 1, 2, 3]));
        assert_eq!(power_index("t^3", BigInt::from(1), m(&[&[1, 0, 0], &[0, 2, 0], &[0, 1, 1]])).unwrap(), 2);
        assert!(lattice("t^2+1", BigInt::from(1), m(&[&[1, 0]])).is_err());
    }
}
