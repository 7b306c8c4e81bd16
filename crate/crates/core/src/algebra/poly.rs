//! Dense univariate polynomials over an exact field, coefficients low to high.

use crate::exactla::Field;
use num_bigint::BigInt;
use num_rational::BigRational;
use std::fmt;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly<F: Field> {
    field: F,
    coeffs: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Poly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly{:?}", self.coeffs)
    }
}

impl<F: Field> Poly<F> {
    pub fn new(field: F, mut coeffs: Vec<F::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| field.is_zero(c)) {
            coeffs.pop();
        }
        Poly { field, coeffs }
    }

    pub fn zero(field: F) -> Self {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: F) -> Self {
        Self::constant(field, field.one())
    }

    pub fn constant(field: F, c: F::Elem) -> Self {
        Self::new(field, vec![c])
    }

    /// The monomial t.
    pub fn t(field: F) -> Self {
        Self::new(field, vec![field.zero(), field.one()])
    }

    pub fn field(&self) -> F {
        self.field
    }

    pub fn coeffs(&self) -> &[F::Elem] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> F::Elem {
        self.coeffs.get(i).cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; the zero polynomial has degree `None`.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn deg(&self) -> usize {
        self.degree().expect("degree of zero polynomial")
    }

    pub fn lead(&self) -> F::Elem {
        self.coeffs.last().cloned().unwrap_or_else(|| self.field.zero())
    }

    pub fn is_monic(&self) -> bool {
        !self.is_zero() && self.field.is_one(&self.lead())
    }

    pub fn monic(&self) -> Self {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(&self.lead()).unwrap();
        self.scale(&inv)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().map(|a| f.mul(a, c)).collect())
    }

    pub fn add(&self, o: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(f, (0..n).map(|i| f.add(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn sub(&self, o: &Self) -> Self {
        let f = self.field;
        let n = self.coeffs.len().max(o.coeffs.len());
        Self::new(f, (0..n).map(|i| f.sub(&self.coeff(i), &o.coeff(i))).collect())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let f = self.field;
        if self.is_zero() || o.is_zero() {
            return Self::zero(f);
        }
        let mut out = vec![f.zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if f.is_zero(a) {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = f.add(&out[i + j], &f.mul(a, b));
            }
        }
        Self::new(f, out)
    }

    pub fn divrem(&self, d: &Self) -> (Self, Self) {
        let f = self.field;
        assert!(!d.is_zero(), "polynomial division by zero");
        let mut r = self.coeffs.clone();
        let dd = d.deg();
        if r.len() <= dd {
            return (Self::zero(f), self.clone());
        }
        let inv = f.inv(&d.lead()).unwrap();
        let mut q = vec![f.zero(); r.len() - dd];
        for k in (0..q.len()).rev() {
            let c = f.mul(&r[k + dd], &inv);
            if !f.is_zero(&c) {
                for (i, b) in d.coeffs.iter().enumerate() {
                    r[k + i] = f.sub(&r[k + i], &f.mul(&c, b));
                }
            }
            q[k] = c;
        }
        r.truncate(dd);
        (Self::new(f, q), Self::new(f, r))
    }

    pub fn rem(&self, d: &Self) -> Self {
        self.divrem(d).1
    }

    /// Exact quotient; panics on a nonzero remainder.
    pub fn div_exact(&self, d: &Self) -> Self {
        let (q, r) = self.divrem(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic gcd (zero if both are zero).
    pub fn gcd(&self, o: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// (g, s, t) with s·self + t·o = g monic.
    pub fn ext_gcd(&self, o: &Self) -> (Self, Self, Self) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), o.clone());
        let (mut s0, mut s1) = (Self::one(f), Self::zero(f));
        let (mut t0, mut t1) = (Self::zero(f), Self::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divrem(&r1);
            r0 = std::mem::replace(&mut r1, r);
            let s = s0.sub(&q.mul(&s1));
            s0 = std::mem::replace(&mut s1, s);
            let t = t0.sub(&q.mul(&t1));
            t0 = std::mem::replace(&mut t1, t);
        }
        if r0.is_zero() {
            return (r0, s0, t0);
        }
        let inv = f.inv(&r0.lead()).unwrap();
        (r0.scale(&inv), s0.scale(&inv), t0.scale(&inv))
    }

    pub fn derivative(&self) -> Self {
        let f = self.field;
        Self::new(f, self.coeffs.iter().enumerate().skip(1).map(|(i, c)| f.mul(&f.from_i64(i as i64), c)).collect())
    }

    pub fn eval(&self, x: &F::Elem) -> F::Elem {
        let f = self.field;
        self.coeffs.iter().rev().fold(f.zero(), |acc, c| f.add(&f.mul(&acc, x), c))
    }

    /// self^e mod m.
    pub fn pow_mod(&self, mut e: BigInt, m: &Self) -> Self {
        use num_integer::Integer;
        use num_traits::Zero;
        let mut base = self.rem(m);
        let mut acc = Self::one(self.field).rem(m);
        while !e.is_zero() {
            if e.is_odd() {
                acc = acc.mul(&base).rem(m);
            }
            base = base.mul(&base).rem(m);
            e >>= 1;
        }
        acc
    }

    /// Product of the distinct monic irreducible factors.
    pub fn radical(&self) -> Self {
        let f = self.field;
        if self.is_zero() {
            return self.clone();
        }
        if self.deg() == 0 {
            return Self::one(f);
        }
        let m = self.monic();
        let d = m.derivative();
        if d.is_zero() {
            // m = h(t^p) = (h'(t))^p over F_p, since a^p = a on F_p
            let p = f.characteristic() as usize;
            let root: Vec<F::Elem> = m.coeffs.iter().step_by(p).cloned().collect();
            return Self::new(f, root).radical();
        }
        let g = m.gcd(&d);
        let w = m.div_exact(&g);
        if g.deg() == 0 {
            return w;
        }
        let rg = g.radical();
        let common = w.gcd(&rg);
        w.mul(&rg).div_exact(&common).monic()
    }

    pub fn is_squarefree(&self) -> bool {
        self.radical().degree() == self.monic().degree()
    }
}

impl Poly<crate::exactla::Rationals> {
    pub fn from_ints(c: &[i64]) -> Self {
        Self::new(crate::exactla::Rationals, c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }
}
