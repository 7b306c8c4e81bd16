//! Finite-dimensional commutative unital algebras over Q or F_p given by
//! structure constants, with the block/field/radical structure theory.

mod decompose;
pub mod factor;
pub mod poly;
mod qalg;

pub use decompose::{Block, Decomposition, Filtrations};
pub use factor::{irreducible_factors, PolyField};
pub use poly::Poly;
pub use qalg::{Adapted, FieldPart, QAlgebra};

use crate::error::{Error, Result};
use crate::exactla::{Field, Mat, PrimeField, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;

/// Coordinate vector of an algebra element.
pub type Element<F> = Vec<<F as Field>::Elem>;

/// A commutative algebra with unit on a fixed basis e_1..e_n, with
/// e_i·e_j = Σ_k c[i][j][k] e_k.
#[derive(Clone, Debug)]
pub struct Algebra<F: Field> {
    field: F,
    n: usize,
    c: Vec<Vec<Vec<F::Elem>>>,
    unit: Vec<F::Elem>,
}

impl<F: Field> PartialEq for Algebra<F> {
    fn eq(&self, o: &Self) -> bool {
        self.field == o.field && self.c == o.c && self.unit == o.unit
    }
}

impl<F: Field> Eq for Algebra<F> {}

impl<F: Field> Algebra<F> {
    /// Build and validate (commutativity, associativity, unit).
    pub fn new(field: F, c: Vec<Vec<Vec<F::Elem>>>, unit: Vec<F::Elem>) -> Result<Self> {
        let n = unit.len();
        if n == 0 {
            return Err(Error::InvalidAlgebra("dimension 0".into()));
        }
        if c.len() != n || c.iter().any(|r| r.len() != n || r.iter().any(|v| v.len() != n)) {
            return Err(Error::DimensionMismatch(format!("structure constants must be {n}×{n}×{n}")));
        }
        let a = Algebra { field, n, c, unit };
        a.validate()?;
        Ok(a)
    }

    fn validate(&self) -> Result<()> {
        let n = self.n;
        for i in 0..n {
            for j in 0..i {
                if self.c[i][j] != self.c[j][i] {
                    return Err(Error::InvalidAlgebra(format!("e{i}·e{j} ≠ e{j}·e{i}")));
                }
            }
        }
        for i in 0..n {
            if self.mul(&self.unit, &self.basis_vec(i)) != self.basis_vec(i) {
                return Err(Error::InvalidAlgebra(format!("unit does not fix e{i}")));
            }
        }
        for i in 0..n {
            for j in i..n {
                for k in 0..n {
                    let l = self.mul(&self.c[i][j], &self.basis_vec(k));
                    let r = self.mul(&self.basis_vec(i), &self.c[j][k]);
                    if l != r {
                        return Err(Error::InvalidAlgebra(format!("(e{i}e{j})e{k} ≠ e{i}(e{j}e{k})")));
                    }
                }
            }
        }
        Ok(())
    }

    /// A_f = K[t]/(f) on the basis 1, t, ..., t^{n−1}; `f` low to high, monic.
    pub fn from_poly_coeffs(field: F, f: &[F::Elem]) -> Result<Self> {
        let n = f.len().checked_sub(1).filter(|&n| n >= 1).ok_or(Error::NonMonic)?;
        if !field.is_one(&f[n]) {
            return Err(Error::NonMonic);
        }
        // powers t^0 .. t^{2n−2} reduced mod f
        let mut pw: Vec<Vec<F::Elem>> = Vec::with_capacity(2 * n - 1);
        for k in 0..2 * n - 1 {
            let v = if k < n {
                let mut v = vec![field.zero(); n];
                v[k] = field.one();
                v
            } else {
                let prev = &pw[k - 1];
                let top = prev[n - 1].clone();
                let mut v = vec![field.zero(); n];
                for i in 1..n {
                    v[i] = prev[i - 1].clone();
                }
                for i in 0..n {
                    v[i] = field.sub(&v[i], &field.mul(&top, &f[i]));
                }
                v
            };
            pw.push(v);
        }
        let c = (0..n).map(|i| (0..n).map(|j| pw[i + j].clone()).collect()).collect();
        let mut unit = vec![field.zero(); n];
        unit[0] = field.one();
        Ok(Algebra { field, n, c, unit })
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn unit(&self) -> &Element<F> {
        &self.unit
    }

    pub fn structure(&self, i: usize, j: usize) -> &Element<F> {
        &self.c[i][j]
    }

    pub fn zero(&self) -> Element<F> {
        vec![self.field.zero(); self.n]
    }

    pub fn basis_vec(&self, i: usize) -> Element<F> {
        let mut v = self.zero();
        v[i] = self.field.one();
        v
    }

    pub fn check_len(&self, a: &[F::Elem]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::DimensionMismatch(format!("element of length {} in algebra of dimension {}", a.len(), self.n)));
        }
        Ok(())
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> Element<F> {
        let f = self.field;
        let mut out = self.zero();
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let xy = f.mul(x, y);
                for (k, c) in self.c[i][j].iter().enumerate() {
                    if !f.is_zero(c) {
                        out[k] = f.add(&out[k], &f.mul(&xy, c));
                    }
                }
            }
        }
        out
    }

    pub fn mul_checked(&self, a: &[F::Elem], b: &[F::Elem]) -> Result<Element<F>> {
        self.check_len(a)?;
        self.check_len(b)?;
        Ok(self.mul(a, b))
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> Element<F> {
        a.iter().zip(b).map(|(x, y)| self.field.add(x, y)).collect()
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> Element<F> {
        a.iter().zip(b).map(|(x, y)| self.field.sub(x, y)).collect()
    }

    pub fn scale(&self, c: &F::Elem, a: &[F::Elem]) -> Element<F> {
        a.iter().map(|x| self.field.mul(c, x)).collect()
    }

    pub fn is_zero_elem(&self, a: &[F::Elem]) -> bool {
        a.iter().all(|x| self.field.is_zero(x))
    }

    pub fn pow(&self, a: &[F::Elem], mut e: u64) -> Element<F> {
        let mut base = a.to_vec();
        let mut acc = self.unit.clone();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    /// g(a), with the constant term taken as a multiple of 1_A.
    pub fn eval_poly(&self, g: &Poly<F>, a: &[F::Elem]) -> Element<F> {
        let mut acc = self.zero();
        for c in g.coeffs().iter().rev() {
            acc = self.mul(&acc, a);
            acc = self.add(&acc, &self.scale(c, &self.unit));
        }
        acc
    }

    /// Matrix of μ_a: b ↦ ab (column j = a·e_j).
    pub fn multiplication_matrix(&self, a: &[F::Elem]) -> Mat<F> {
        let cols: Vec<Element<F>> = (0..self.n).map(|j| self.mul(a, &self.basis_vec(j))).collect();
        Mat::from_cols(self.field, self.n, &cols)
    }

    pub fn charpoly(&self, a: &[F::Elem]) -> Poly<F> {
        Poly::new(self.field, self.multiplication_matrix(a).charpoly())
    }

    pub fn det(&self, a: &[F::Elem]) -> F::Elem {
        self.multiplication_matrix(a).det()
    }

    pub fn trace(&self, a: &[F::Elem]) -> F::Elem {
        let m = self.multiplication_matrix(a);
        (0..self.n).fold(self.field.zero(), |s, i| self.field.add(&s, m.get(i, i)))
    }

    pub fn is_unit(&self, a: &[F::Elem]) -> bool {
        !self.field.is_zero(&self.det(a))
    }

    pub fn invert(&self, a: &[F::Elem]) -> Result<Element<F>> {
        self.check_len(a)?;
        self.multiplication_matrix(a).solve(&self.unit).filter(|_| self.is_unit(a)).ok_or(Error::NotAUnit)
    }

    /// Multiplication matrix of `a` restricted to the invariant subspace
    /// spanned by the independent columns `basis`.
    pub fn restricted_matrix(&self, a: &[F::Elem], basis: &[Element<F>]) -> Mat<F> {
        let b = Mat::from_cols(self.field, self.n, basis);
        let cols: Vec<Element<F>> =
            basis.iter().map(|v| b.solve(&self.mul(a, v)).expect("subspace not invariant")).collect();
        Mat::from_cols(self.field, basis.len(), &cols)
    }

    /// (a_s, a_n): semisimple and nilpotent parts, both polynomials in a.
    pub fn jordan_chevalley(&self, a: &[F::Elem]) -> (Element<F>, Element<F>)
    where
        F: PolyField,
    {
        let g = self.charpoly(a).radical();
        let dg = g.derivative();
        let mut x = a.to_vec();
        loop {
            let gx = self.eval_poly(&g, &x);
            if self.is_zero_elem(&gx) {
                break;
            }
            let inv = self.invert(&self.eval_poly(&dg, &x)).expect("g'(x) is a unit");
            x = self.sub(&x, &self.mul(&gx, &inv));
        }
        let n = self.sub(a, &x);
        (x, n)
    }

    /// Structure constants on another basis (columns in current coordinates)
    /// of the same space; returns the rebased algebra.
    pub fn rebase(&self, basis: &[Element<F>]) -> Result<Self> {
        if basis.len() != self.n {
            return Err(Error::DimensionMismatch("basis size".into()));
        }
        let b = Mat::from_cols(self.field, self.n, basis);
        let binv = b.inverse().ok_or_else(|| Error::InvalidAlgebra("basis is singular".into()))?;
        let c = (0..self.n)
            .map(|i| (0..self.n).map(|j| binv.mul_vec(&self.mul(&basis[i], &basis[j]))).collect())
            .collect();
        let unit = binv.mul_vec(&self.unit);
        Algebra::new(self.field, c, unit)
    }

    /// Basis of the nilradical.
    pub fn radical_basis(&self) -> Vec<Element<F>> {
        let f = self.field;
        let p = f.characteristic();
        let m = if p == 0 {
            // kernel of the trace form
            let rows: Vec<Element<F>> = (0..self.n)
                .map(|i| (0..self.n).map(|j| self.trace(&self.c[i][j])).collect())
                .collect();
            Mat::from_rows(f, rows, self.n)
        } else {
            // Frobenius x ↦ x^p is F_p-linear; its p^k-th iterate kills R for p^k ≥ n
            let mut q: u64 = p;
            while (q as u128) < self.n as u128 {
                q = q.saturating_mul(p);
            }
            let cols: Vec<Element<F>> = (0..self.n).map(|i| self.pow_big(&self.basis_vec(i), p, q)).collect();
            Mat::from_cols(f, self.n, &cols)
        };
        m.nullspace()
    }

    /// a^q for q a power of p, by repeated p-th powers.
    fn pow_big(&self, a: &[F::Elem], p: u64, q: u64) -> Element<F> {
        let mut x = a.to_vec();
        let mut e = 1u64;
        while e < q {
            x = self.pow(&x, p);
            e = e.saturating_mul(p);
        }
        x
    }

    /// Span of all products of the two spanning sets.
    pub fn product_span(&self, a: &[Element<F>], b: &[Element<F>]) -> Vec<Element<F>> {
        let mut prods = Vec::new();
        for x in a {
            for y in b {
                prods.push(self.mul(x, y));
            }
        }
        crate::exactla::span_basis(self.field, self.n, &prods)
    }

    /// Annihilator {x : x·s = 0 for all s in the span}.
    pub fn annihilator(&self, s: &[Element<F>]) -> Vec<Element<F>> {
        if s.is_empty() {
            return (0..self.n).map(|i| self.basis_vec(i)).collect();
        }
        let mut rows = Vec::new();
        for v in s {
            rows.extend(self.multiplication_matrix(v).to_rows_vec());
        }
        Mat::from_rows(self.field, rows, self.n).nullspace()
    }
}

impl<F: Field> Mat<F> {
    fn to_rows_vec(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows()).map(|i| self.row(i)).collect()
    }
}

impl<F: PolyField> Algebra<F> {
    pub fn decompose(&self) -> Decomposition<F> {
        decompose::decompose(self)
    }

    pub fn filtrations(&self) -> Filtrations<F> {
        decompose::filtrations(self)
    }
}

impl Algebra<Rationals> {
    /// A_f for a monic integer polynomial (low to high).
    pub fn from_polynomial(f: &[BigInt]) -> Result<Self> {
        let q: Vec<BigRational> = f.iter().map(|c| BigRational::from_integer(c.clone())).collect();
        Self::from_poly_coeffs(Rationals, &q)
    }

    pub fn from_polynomial_i64(f: &[i64]) -> Result<Self> {
        Self::from_polynomial(&f.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>())
    }

    pub fn elem_from_ints(&self, v: &[i64]) -> Element<Rationals> {
        v.iter().map(|&x| BigRational::from_integer(x.into())).collect()
    }

    /// Direct product of algebras (block-diagonal structure constants).
    pub fn direct_sum(parts: &[Algebra<Rationals>]) -> Result<Self> {
        let n: usize = parts.iter().map(|a| a.dim()).sum();
        let z = BigRational::zero();
        let mut c = vec![vec![vec![z.clone(); n]; n]; n];
        let mut unit = vec![z; n];
        let mut off = 0;
        for a in parts {
            let m = a.dim();
            for i in 0..m {
                unit[off + i] = a.unit[i].clone();
                for j in 0..m {
                    for k in 0..m {
                        c[off + i][off + j][off + k] = a.c[i][j][k].clone();
                    }
                }
            }
            off += m;
        }
        Algebra::new(Rationals, c, unit)
    }

    /// Whether every structure constant and the unit are integers (so the
    /// basis spans an order).
    pub fn has_integral_basis(&self) -> bool {
        self.unit.iter().all(|x| x.is_integer()) && self.c.iter().flatten().flatten().all(|x| x.is_integer())
    }
}

/// The reduction Λ/pΛ of an order, given by a Z-basis of Λ (columns in the
/// algebra's coordinates).
pub fn reduce_mod_p(alg: &Algebra<Rationals>, basis: &[Element<Rationals>], p: u64) -> Result<Algebra<PrimeField>> {
    let fp = PrimeField::new(p)?;
    let rebased = alg.rebase(basis)?;
    if !rebased.has_integral_basis() {
        return Err(Error::NotAnOrder("basis is not closed under multiplication over Z".into()));
    }
    let red = |v: &Element<Rationals>| -> Vec<u64> { v.iter().map(|x| fp.from_bigint(x.numer())).collect() };
    let c = rebased.c.iter().map(|r| r.iter().map(red).collect()).collect();
    Algebra::new(fp, c, red(&rebased.unit))
}

#[cfg(test)]
pub(crate) fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}
