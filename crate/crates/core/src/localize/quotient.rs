//! Finite quotient rings Λ/L.

use super::{mult_in_basis, rank_mod_p, small_prime};
use crate::algebra::Element;
use crate::arith::{prime_divisors, valuation};
use crate::error::{Error, Result};
use crate::exactla::{snf, IntMatrix, Mat, Rationals};
use crate::lattice::{FullLattice, Order};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Λ/L for a Λ-ideal L ⊆ Λ, with additive structure ⊕ Z/d_i from a Smith form.
#[derive(Clone, Debug)]
pub struct FiniteQuotientRing {
    lambda: Order,
    ideal: FullLattice,
    /// Basis of L in Λ-coordinates.
    c: IntMatrix,
    /// SNF transform: Λ-coordinates x ↦ residues U·x mod d.
    u: IntMatrix,
    uinv: IntMatrix,
    d: Vec<BigInt>,
    size: u64,
}

/// Λ/L; errors when |Λ/L| exceeds `cap`.
pub fn quotient_ring(lambda: &Order, l: &FullLattice, cap: u64) -> Result<FiniteQuotientRing> {
    if !lambda.contains(l) || !l.contains(&lambda.product(l)) {
        return Err(Error::PreconditionFailed("L must be a Λ-ideal inside Λ".into()));
    }
    let size = lambda.index_of(l)?;
    let size = size.to_u64().filter(|&s| s <= cap).ok_or_else(|| Error::QuotientTooLarge(format!("|Λ/L| = {size} exceeds {cap}")))?;
    let n = lambda.dim();
    let cols: Vec<Vec<BigInt>> = l.basis_elems().iter().map(|b| lambda.coords(b).unwrap()).collect();
    let c = IntMatrix::from_cols(n, &cols);
    let s = snf(&c);
    let uinv = inverse_unimodular(&s.u);
    Ok(FiniteQuotientRing { lambda: lambda.clone(), ideal: l.clone(), c, u: s.u, uinv, d: s.d, size })
}

fn inverse_unimodular(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let inv = Mat::from_rows(Rationals, u.to_rat().to_entries(), n).inverse().expect("unimodular");
    IntMatrix::from_rows(&(0..n).map(|i| inv.row(i).iter().map(|x| x.to_integer()).collect()).collect::<Vec<_>>())
}

impl FiniteQuotientRing {
    pub fn order(&self) -> &Order {
        &self.lambda
    }

    pub fn ideal(&self) -> &FullLattice {
        &self.ideal
    }

    pub fn size(&self) -> u64 {
        self.size
    }

    /// Nontrivial cyclic factors Z/d_i of the additive group.
    pub fn moduli(&self) -> Vec<BigInt> {
        self.d.iter().filter(|x| !x.is_one()).cloned().collect()
    }

    fn reduce(&self, x: &[BigInt]) -> Vec<BigInt> {
        self.u.mul_vec(x).iter().zip(&self.d).map(|(v, d)| v.mod_floor(d)).collect()
    }

    /// Residue vector of an element of Λ.
    pub fn residue(&self, a: &[BigRational]) -> Result<Vec<BigInt>> {
        let x = self.lambda.coords(a).ok_or_else(|| Error::PreconditionFailed("element not in the order".into()))?;
        Ok(self.reduce(&x))
    }

    /// A representative in Λ of a residue vector.
    pub fn lift(&self, r: &[BigInt]) -> Element<Rationals> {
        let x = self.uinv.mul_vec(r);
        let mut out = vec![BigRational::zero(); self.lambda.dim()];
        for (b, c) in self.lambda.basis_elems().iter().zip(&x) {
            let c = BigRational::from_integer(c.clone());
            for (o, bi) in out.iter_mut().zip(b) {
                *o += bi * &c;
            }
        }
        out
    }

    pub fn one(&self) -> Vec<BigInt> {
        self.residue(&self.lambda.algebra().one()).unwrap()
    }

    pub fn mul(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let alg = self.lambda.algebra();
        self.residue(&alg.mul(&self.lift(x), &self.lift(y))).unwrap()
    }

    /// All residue vectors, in odometer order.
    pub fn elements(&self) -> Vec<Vec<BigInt>> {
        let n = self.d.len();
        let mut out = Vec::with_capacity(self.size as usize);
        let mut r = vec![BigInt::zero(); n];
        loop {
            out.push(r.clone());
            let mut k = 0;
            while k < n {
                r[k] += 1;
                if r[k] < self.d[k] {
                    break;
                }
                r[k] = BigInt::zero();
                k += 1;
            }
            if k == n {
                return out;
            }
        }
    }

    /// x is a unit iff μ_x·Λ + L + pΛ = Λ for every prime p dividing |Λ/L|.
    pub fn is_unit(&self, x: &[BigInt]) -> bool {
        let a = self.lift(x);
        let m = mult_in_basis(&a, &self.lambda).expect("lift lies in Λ").hcat(&self.c);
        prime_divisors(&BigInt::from(self.size))
            .expect("small size")
            .iter()
            .all(|p| rank_mod_p(&m, small_prime(p).unwrap()) == self.lambda.dim())
    }

    pub fn units(&self) -> Vec<Vec<BigInt>> {
        self.elements().into_iter().filter(|x| self.is_unit(x)).collect()
    }

    pub fn unit_count(&self) -> u64 {
        self.units().len() as u64
    }

    /// The factor Λ_(p)/L_(p) ≅ Λ/(L + p^vΛ), v = v_p(|Λ/L|).
    pub fn local_factor(&self, p: &BigInt) -> FiniteQuotientRing {
        let v = valuation(&BigInt::from(self.size), p);
        let pv = BigRational::from_integer(num_traits::pow(p.clone(), v as usize));
        let l = self.ideal.sum(&self.lambda.scale(&pv));
        quotient_ring(&self.lambda, &l, self.size).expect("factor of a valid quotient")
    }

    /// The CRT decomposition over the primes dividing |Λ/L|: sizes and unit
    /// counts are multiplicative.
    pub fn verify_crt(&self) -> bool {
        let ps = prime_divisors(&BigInt::from(self.size)).expect("small size");
        let factors: Vec<FiniteQuotientRing> = ps.iter().map(|p| self.local_factor(p)).collect();
        let size: u64 = factors.iter().map(|f| f.size).product();
        let units: u64 = factors.iter().map(|f| f.unit_count()).product();
        size == self.size && units == self.unit_count()
    }
}
