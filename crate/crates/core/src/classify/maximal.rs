//! Maximal orders of separable algebras by p-radical idealizers.

use crate::algebra::{reduce_mod_p, Element};
use crate::arith::factor;
use crate::error::{Error, Result};
use crate::exactla::Rationals;
use crate::lattice::{FullLattice, Order};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{ToPrimitive, Zero};

/// pΛ + (lift of the nilradical of Λ/pΛ).
fn p_radical(lambda: &Order, p: u64) -> Result<FullLattice> {
    let alg = lambda.algebra();
    let basis = lambda.basis_elems();
    let red = reduce_mod_p(alg, &basis, p)?;
    let n = lambda.dim();
    let mut gens: Vec<Element<Rationals>> = basis.iter().map(|b| b.iter().map(|x| x * BigRational::from_integer(p.into())).collect()).collect();
    for v in red.radical_basis() {
        let mut e = vec![BigRational::zero(); n];
        for (c, b) in v.iter().zip(&basis) {
            let c = BigRational::from_integer((*c).into());
            for (o, bi) in e.iter_mut().zip(b) {
                *o += bi * &c;
            }
        }
        gens.push(e);
    }
    FullLattice::new(alg, &gens)
}

/// The p-maximal overorder of Λ: iterate Λ ↦ I_p : I_p until stable.
pub fn p_maximal(lambda: &Order, p: &BigInt) -> Result<Order> {
    let q = p.to_u64().ok_or_else(|| Error::FactorizationTooHard(format!("prime {p} too large")))?;
    let mut cur = lambda.clone();
    loop {
        let i = p_radical(&cur, q)?;
        let next = Order::new(i.colon(&i))?;
        if next == cur {
            return Ok(cur);
        }
        cur = next;
    }
}

/// The maximal order containing Λ0 in a separable algebra.
pub fn maximal_order(lambda0: &Order) -> Result<Order> {
    if !lambda0.algebra().is_separable() {
        return Err(Error::PreconditionFailed("maximal orders need a separable algebra".into()));
    }
    let disc = lambda0.disc();
    assert!(disc.is_integer() && !disc.is_zero(), "orders in separable algebras have nonzero integral discriminant");
    let mut cur = lambda0.clone();
    for (p, e) in factor(&disc.to_integer())? {
        if e >= 2 {
            cur = p_maximal(&cur, &p)?;
        }
    }
    Ok(cur)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{Algebra, QAlgebra};
    use crate::lattice::tests::{alg_poly, lat};

    #[test]
    fn quadratic_examples() {
        let a = alg_poly(&[5, 0, 1]);
        let o = Order::standard(&a).unwrap();
        assert_eq!(maximal_order(&o).unwrap(), o);
        let a = alg_poly(&[3, 0, 1]);
        let o = Order::standard(&a).unwrap();
        let m = maximal_order(&o).unwrap();
        // Z[(1+√−3)/2]
        assert_eq!(m.lattice(), &lat(&a, 2, &[&[2, 0], &[1, 1]]));
        assert_eq!(m.disc(), BigRational::from_integer((-3).into()));
        assert_eq!(maximal_order(&m).unwrap(), m);
    }

    #[test]
    fn cubic_and_split() {
        // Z[2∛2] has index 8 in the maximal order Z[∛2]
        let a = alg_poly(&[-2, 0, 0, 1]);
        let sub = Order::new(lat(&a, 1, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 4]])).unwrap();
        let m = maximal_order(&sub).unwrap();
        assert_eq!(m.lattice(), &FullLattice::standard(&a));
        // Q[t]/((t²+1)(t−1)): Z[t] has index 2 in Z[i] ⊕ Z
        let a = alg_poly(&[-1, 1, -1, 1]);
        let o = Order::standard(&a).unwrap();
        let m = maximal_order(&o).unwrap();
        assert_eq!(m.index_of(&o).unwrap(), BigInt::from(2));
        assert_eq!(m.disc(), BigRational::from_integer((-4).into()));
    }

    #[test]
    fn rejects_radical() {
        let a = QAlgebra::new(Algebra::from_polynomial_i64(&[0, 0, 1]).unwrap());
        let o = Order::standard(&a).unwrap();
        assert!(matches!(maximal_order(&o), Err(Error::PreconditionFailed(_))));
    }
}
