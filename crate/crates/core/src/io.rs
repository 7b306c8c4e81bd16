//! JSON interchange. Exact numbers are written as decimal strings ("3",
//! "-5/2"); on input plain JSON integers are accepted too.
//!
//! - algebra: `{"poly": [f_0, …, f_{n−1}, 1]}` for Q[t]/(f), or
//!   `{"field": "Q" | {"Fp": p}, "dim": n, "unit": [...], "mul": [...]}` where
//!   `mul` lists the n² products e_i·e_j in row-major order, each as sparse
//!   pairs `[k, c_ijk]`;
//! - lattice: `{"den": d, "basis": [[...], ...]}` with integer basis columns;
//! - matrix: `{"f": [...], "B": [[...], ...]}` with B given by rows.

use crate::algebra::{Algebra, QAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{Field, IntMatrix, PrimeField, Rationals};
use crate::lattice::FullLattice;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};
use std::sync::Arc;

/// A number as it appears in JSON input.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Num {
    Int(i64),
    Str(String),
}

impl Num {
    pub fn rational(&self) -> Result<BigRational> {
        match self {
            Num::Int(x) => Ok(BigRational::from_integer((*x).into())),
            Num::Str(s) => {
                let s = s.trim();
                match s.split_once('/') {
                    Some((a, b)) => {
                        let (a, b) = (parse_int(a)?, parse_int(b)?);
                        if b.is_zero() {
                            return Err(Error::Parse(format!("zero denominator in {s:?}")));
                        }
                        Ok(BigRational::new(a, b))
                    }
                    None => Ok(BigRational::from_integer(parse_int(s)?)),
                }
            }
        }
    }

    pub fn integer(&self) -> Result<BigInt> {
        let q = self.rational()?;
        if q.is_integer() {
            Ok(q.to_integer())
        } else {
            Err(Error::Parse(format!("expected an integer, got {q}")))
        }
    }
}

fn parse_int(s: &str) -> Result<BigInt> {
    s.trim().parse::<BigInt>().map_err(|_| Error::Parse(format!("not an integer: {s:?}")))
}

pub fn int_str(x: &BigInt) -> Value {
    Value::String(x.to_string())
}

pub fn rat_str(x: &BigRational) -> Value {
    Value::String(if x.is_integer() { x.to_integer().to_string() } else { format!("{}/{}", x.numer(), x.denom()) })
}

pub fn ints(v: &[BigInt]) -> Value {
    Value::Array(v.iter().map(int_str).collect())
}

pub fn rats(v: &[BigRational]) -> Value {
    Value::Array(v.iter().map(rat_str).collect())
}

fn nums_int(v: &[Num]) -> Result<Vec<BigInt>> {
    v.iter().map(Num::integer).collect()
}

fn nums_rat(v: &[Num]) -> Result<Vec<BigRational>> {
    v.iter().map(Num::rational).collect()
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FieldJson {
    Q(String),
    Fp {
        #[serde(rename = "Fp")]
        fp: Num,
    },
}

#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(untagged)]
pub enum AlgebraJson {
    Poly { poly: Vec<Num> },
    Table { field: FieldJson, dim: usize, unit: Vec<Num>, mul: Vec<Vec<(usize, Num)>> },
}

/// A parsed algebra over Q or a prime field.
#[derive(Clone, Debug)]
pub enum AnyAlgebra {
    Q(Arc<QAlgebra>),
    Fp(Algebra<PrimeField>),
}

fn table<F: Field>(field: F, dim: usize, unit: Vec<F::Elem>, mul: &[Vec<(usize, F::Elem)>]) -> Result<Algebra<F>> {
    if mul.len() != dim * dim {
        return Err(Error::Parse(format!("mul must list {} products", dim * dim)));
    }
    let mut c = vec![vec![vec![field.zero(); dim]; dim]; dim];
    for (ij, entries) in mul.iter().enumerate() {
        for (k, v) in entries {
            if *k >= dim {
                return Err(Error::Parse(format!("basis index {k} out of range")));
            }
            c[ij / dim][ij % dim][*k] = v.clone();
        }
    }
    Algebra::new(field, c, unit)
}

impl AlgebraJson {
    pub fn parse(&self) -> Result<AnyAlgebra> {
        match self {
            AlgebraJson::Poly { poly } => Ok(AnyAlgebra::Q(QAlgebra::new(Algebra::from_polynomial(&nums_int(poly)?)?))),
            AlgebraJson::Table { field, dim, unit, mul } => match field {
                FieldJson::Q(s) if s == "Q" => {
                    let mul: Vec<Vec<(usize, BigRational)>> =
                        mul.iter().map(|e| e.iter().map(|(k, v)| Ok((*k, v.rational()?))).collect::<Result<_>>()).collect::<Result<_>>()?;
                    Ok(AnyAlgebra::Q(QAlgebra::new(table(Rationals, *dim, nums_rat(unit)?, &mul)?)))
                }
                FieldJson::Q(s) => Err(Error::Parse(format!("unknown field {s:?}"))),
                FieldJson::Fp { fp } => {
                    let f = PrimeField::from_bigint_modulus(&fp.integer()?)?;
                    let red = |n: &Num| -> Result<u64> { Ok(f.from_bigint(&n.integer()?)) };
                    let unit: Vec<u64> = unit.iter().map(red).collect::<Result<_>>()?;
                    let mul: Vec<Vec<(usize, u64)>> = mul.iter().map(|e| e.iter().map(|(k, v)| Ok((*k, red(v)?))).collect::<Result<_>>()).collect::<Result<_>>()?;
                    Ok(AnyAlgebra::Fp(table(f, *dim, unit, &mul)?))
                }
            },
        }
    }

    pub fn parse_q(&self) -> Result<Arc<QAlgebra>> {
        match self.parse()? {
            AnyAlgebra::Q(a) => Ok(a),
            AnyAlgebra::Fp(_) => Err(Error::PreconditionFailed("lattices need an algebra over Q".into())),
        }
    }
}

pub fn algebra_from_value(v: &Value) -> Result<AlgebraJson> {
    serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("algebra: {e}")))
}

/// Structure-constant JSON of an algebra over Q.
pub fn algebra_to_json(a: &QAlgebra) -> Value {
    let n = a.dim();
    let mut mul = Vec::with_capacity(n * n);
    for i in 0..n {
        for j in 0..n {
            let e: Vec<Value> =
                a.structure(i, j).iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(k, c)| json!([k, rat_str(c)])).collect();
            mul.push(Value::Array(e));
        }
    }
    json!({"field": "Q", "dim": n, "unit": rats(a.algebra().unit()), "mul": mul})
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct LatticeJson {
    pub den: Num,
    pub basis: Vec<Vec<Num>>,
}

impl LatticeJson {
    pub fn parse(&self, alg: &Arc<QAlgebra>) -> Result<FullLattice> {
        let den = self.den.integer()?;
        if !den.is_positive() {
            return Err(Error::Parse("den must be positive".into()));
        }
        let cols: Vec<Vec<BigInt>> = self.basis.iter().map(|c| nums_int(c)).collect::<Result<_>>()?;
        if cols.iter().any(|c| c.len() != alg.dim()) {
            return Err(Error::DimensionMismatch(format!("basis vectors must have length {}", alg.dim())));
        }
        FullLattice::from_int(alg, &den, &IntMatrix::from_cols(alg.dim(), &cols))
    }
}

pub fn lattice_from_value(v: &Value, alg: &Arc<QAlgebra>) -> Result<FullLattice> {
    let l: LatticeJson = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("lattice: {e}")))?;
    l.parse(alg)
}

pub fn lattice_to_json(l: &FullLattice) -> Value {
    json!({"den": int_str(l.den()), "basis": l.basis().columns().iter().map(|c| ints(c)).collect::<Vec<_>>()})
}

pub fn matrix_to_json(m: &IntMatrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| ints(r)).collect())
}

pub fn matrix_from_value(v: &Value) -> Result<IntMatrix> {
    let rows: Vec<Vec<Num>> = serde_json::from_value(v.clone()).map_err(|e| Error::Parse(format!("matrix: {e}")))?;
    let rows: Vec<Vec<BigInt>> = rows.iter().map(|r| nums_int(r)).collect::<Result<_>>()?;
    let n = rows.len();
    if n == 0 || rows.iter().any(|r| r.len() != n) {
        return Err(Error::DimensionMismatch("matrix must be square and nonempty".into()));
    }
    Ok(IntMatrix::from_rows(&rows))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct MatrixJson {
    pub f: Vec<Num>,
    #[serde(rename = "B")]
    pub b: Value,
}

impl MatrixJson {
    pub fn parse(&self) -> Result<(Vec<BigInt>, IntMatrix)> {
        Ok((nums_int(&self.f)?, matrix_from_value(&self.b)?))
    }
}

/// Parse a polynomial in one variable such as "t^2+5", "x^3 - 2*x + 1" or
/// "-t^2 + 3t"; returns integer coefficients low to high.
pub fn parse_poly(s: &str) -> Result<Vec<BigInt>> {
    let err = |m: &str| Error::Parse(format!("polynomial {s:?}: {m}"));
    let src: String = s.chars().filter(|c| !c.is_whitespace()).collect();
    if src.is_empty() {
        return Err(err("empty"));
    }
    let var = src.chars().find(|c| c.is_ascii_alphabetic());
    let mut coeffs: Vec<BigInt> = Vec::new();
    let bytes = src.as_bytes();
    let mut i = 0;
    while i < bytes.len() {
        let mut sign = BigInt::one();
        if bytes[i] == b'+' || bytes[i] == b'-' {
            if bytes[i] == b'-' {
                sign = -sign;
            }
            i += 1;
        } else if i > 0 {
            return Err(err("expected + or -"));
        }
        let start = i;
        while i < bytes.len() && bytes[i].is_ascii_digit() {
            i += 1;
        }
        let coef = if i > start { src[start..i].parse::<BigInt>().unwrap() } else { BigInt::one() };
        if i < bytes.len() && bytes[i] == b'*' {
            i += 1;
        }
        let mut deg = 0usize;
        if i < bytes.len() && bytes[i].is_ascii_alphabetic() {
            if Some(bytes[i] as char) != var {
                return Err(err("more than one variable"));
            }
            i += 1;
            deg = 1;
            if i < bytes.len() && bytes[i] == b'^' {
                i += 1;
                let ds = i;
                while i < bytes.len() && bytes[i].is_ascii_digit() {
                    i += 1;
                }
                if ds == i {
                    return Err(err("missing exponent"));
                }
                deg = src[ds..i].parse().map_err(|_| err("exponent too large"))?;
            }
        } else if i == start {
            return Err(err("empty term"));
        }
        if coeffs.len() <= deg {
            coeffs.resize(deg + 1, BigInt::zero());
        }
        coeffs[deg] += sign * coef;
    }
    while coeffs.len() > 1 && coeffs.last().is_some_and(|c| c.is_zero()) {
        coeffs.pop();
    }
    Ok(coeffs)
}

/// "t^2+5" style rendering of integer coefficients (low to high).
pub fn format_poly(f: &[BigInt]) -> String {
    let mut out = String::new();
    for (d, c) in f.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let neg = c.is_negative();
        let a = c.abs();
        if out.is_empty() {
            if neg {
                out.push('-');
            }
        } else {
            out.push(if neg { '-' } else { '+' });
        }
        let mono = match d {
            0 => String::new(),
            1 => "t".into(),
            _ => format!("t^{d}"),
        };
        if !a.is_one() || d == 0 {
            out.push_str(&a.to_string());
        }
        out.push_str(&mono);
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

/// Budget-size conversion for JSON counts.
pub fn usize_of(x: &BigInt) -> Result<usize> {
    x.to_usize().ok_or_else(|| Error::Parse(format!("{x} is out of range")))
}
