//! Localization at rational primes, reduced to prime-to-p index statements on
//! global lattices.

mod quotient;

pub use quotient::{quotient_ring, FiniteQuotientRing};

use crate::algebra::{reduce_mod_p, Element};
use crate::arith::{prime_divisors, valuation};
use crate::error::{Error, Result};
use crate::exactla::{in_span, span_basis, Field, IntMatrix, Mat, PrimeField, Rationals};
use crate::lattice::{FullLattice, Order};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Local comparison of two lattices at one prime.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalReport {
    pub p: BigInt,
    /// L_(p) = M_(p).
    pub equal: bool,
    /// L_(p) ⊆ M_(p).
    pub contained: bool,
    /// p-part of [L+M : L].
    pub p_index_l: BigInt,
    /// p-part of [L+M : M].
    pub p_index_m: BigInt,
}

fn p_part(n: &BigInt, p: &BigInt) -> BigInt {
    num_traits::pow(p.clone(), valuation(n, p) as usize)
}

pub fn local_report(l: &FullLattice, m: &FullLattice, p: &BigInt) -> LocalReport {
    let s = l.sum(m);
    let il = p_part(&s.index_of(l).expect("sum contains summand"), p);
    let im = p_part(&s.index_of(m).expect("sum contains summand"), p);
    LocalReport { p: p.clone(), equal: il.is_one() && im.is_one(), contained: im.is_one(), p_index_l: il, p_index_m: im }
}

pub fn locally_equal(l: &FullLattice, m: &FullLattice, p: &BigInt) -> bool {
    local_report(l, m, p).equal
}

/// The primes p with (L1)_(p) ≠ (L2)_(p), in increasing order.
pub fn bad_primes(l1: &FullLattice, l2: &FullLattice) -> Result<Vec<BigInt>> {
    let s = l1.sum(l2);
    let n = s.index_of(l1)? * s.index_of(l2)?;
    prime_divisors(&n)
}

/// Replaces the p-part of `l` by that of `m`.
fn glue_one(l: &FullLattice, p: &BigInt, m: &FullLattice) -> FullLattice {
    let s = l.sum(m);
    let v = valuation(&s.index_of(l).unwrap(), p).max(valuation(&s.index_of(m).unwrap(), p));
    let pn = BigRational::from_integer(num_traits::pow(p.clone(), v as usize));
    m.intersect(&l.scale(&pn.recip())).sum(&l.scale(&pn))
}

/// The unique full lattice L with L_(p) = (M_p)_(p) for the assigned primes
/// and L_(q) = (L1)_(q) for all other q.
pub fn glue(reference: &FullLattice, assignments: &[(BigInt, FullLattice)]) -> Result<FullLattice> {
    let mut l = reference.clone();
    for (p, m) in assignments {
        if !crate::arith::is_prime(p) {
            return Err(Error::PreconditionFailed(format!("{p} is not prime")));
        }
        l = glue_one(&l, p, m);
    }
    let assigned: Vec<&BigInt> = assignments.iter().map(|(p, _)| p).collect();
    for (p, m) in assignments {
        assert!(locally_equal(&l, m, p), "glued lattice has the assigned part at {p}");
    }
    for q in bad_primes(&l, reference)? {
        assert!(assigned.contains(&&q), "glued lattice agrees with the reference away from the assigned primes");
    }
    Ok(l)
}

/// Coordinates (in the basis of `l`) of products λ·b for each basis vector λ
/// of `lambda`: one integer n×n matrix per λ.
fn action_matrices(l: &FullLattice, lambda: &FullLattice) -> Result<Vec<IntMatrix>> {
    let alg = l.algebra();
    let n = l.dim();
    let lb = l.basis_elems();
    lambda
        .basis_elems()
        .iter()
        .map(|x| {
            let cols: Vec<Vec<BigInt>> = lb
                .iter()
                .map(|b| l.coords(&alg.mul(x, b)).ok_or_else(|| Error::PreconditionFailed("Λ·L ⊄ L".into())))
                .collect::<Result<_>>()?;
            Ok(IntMatrix::from_cols(n, &cols))
        })
        .collect()
}

pub(crate) fn small_prime(p: &BigInt) -> Result<PrimeField> {
    let q = p.to_u64().ok_or_else(|| Error::QuotientTooLarge(format!("prime {p} too large")))?;
    PrimeField::new(q)
}

pub(crate) fn check_cap(p: u64, n: usize, cap: u64) -> Result<()> {
    let mut size: u64 = 1;
    for _ in 0..n {
        size = size.saturating_mul(p);
    }
    if size > cap {
        return Err(Error::QuotientTooLarge(format!("{p}^{n} classes exceed the cap {cap}")));
    }
    Ok(())
}

/// Cap on the residue classes scanned by searches modulo p.
pub const LOCAL_SEARCH_CAP: u64 = 1_000_000;

/// An a ∈ L whose class generates L/pL as a Λ/pΛ-module, so that
/// L_(p) = a·Λ_(p); `None` if L_(p) is not principal.
///
/// By Nakayama, L/pL is cyclic iff for every local block R_b of Λ/pΛ with
/// radical J_b, the part M_b = e_b·L/pL has M_b/J_bM_b one-dimensional over
/// the residue field R_b/J_b; the sum of one vector of each M_b outside
/// J_bM_b is then a generator.
pub fn local_generator(l: &FullLattice, lambda: &Order, p: &BigInt) -> Result<Option<Element<Rationals>>> {
    let fp = small_prime(p)?;
    let n = l.dim();
    let ts: Vec<Mat<PrimeField>> = action_matrices(l, lambda)?
        .iter()
        .map(|t| Mat::from_rows(fp, t.to_rows().iter().map(|r| r.iter().map(|x| fp.from_bigint(x)).collect()).collect(), n))
        .collect();
    // the action on L/pL of r ∈ Λ/pΛ, given in the basis of Λ
    let act = |r: &[u64]| ts.iter().zip(r).fold(Mat::zeros(fp, n, n), |m, (t, c)| m.add(&t.scale(c)));
    let generates = |c: &[u64]| Mat::from_cols(fp, n, &ts.iter().map(|t| t.mul_vec(c)).collect::<Vec<_>>()).rank() == n;
    let one = l.algebra().one();
    if let Some(c) = l.coords(&one) {
        if generates(&c.iter().map(|x| fp.from_bigint(x)).collect::<Vec<_>>()) {
            return Ok(Some(one));
        }
    }
    let red = reduce_mod_p(l.algebra(), &lambda.basis_elems(), fp.p())?;
    let mut gen = vec![0u64; n];
    for b in &red.decompose().blocks {
        let mb = span_basis(fp, n, &act(&b.unit).columns());
        let mut jm = Vec::new();
        for r in &b.nil_basis {
            let t = act(r);
            jm.extend(mb.iter().map(|v| t.mul_vec(v)));
        }
        let jm = span_basis(fp, n, &jm);
        if mb.len() - jm.len() != b.field_basis.len() {
            return Ok(None);
        }
        let v = mb.iter().find(|v| !in_span(fp, n, &jm, v)).expect("M_b ≠ J_bM_b");
        gen = gen.iter().zip(v).map(|(x, y)| fp.add(x, y)).collect();
    }
    assert!(generates(&gen), "the block generator generates L/pL");
    let coords: Vec<BigInt> = gen.iter().map(|&x| BigInt::from(x)).collect();
    let a = l.elem_from_coords(&coords);
    debug_assert!(l.algebra().is_unit_elem(&a));
    Ok(Some(a))
}

/// Local principality at every prime, with the generators a_p at the primes
/// where L differs from O(L).
pub fn is_locally_principal(l: &FullLattice) -> Result<(bool, Vec<(BigInt, Element<Rationals>)>)> {
    let lambda = l.order_of();
    let mut witnesses = Vec::new();
    for p in bad_primes(l, &lambda)? {
        match local_generator(l, &lambda, &p)? {
            Some(a) => witnesses.push((p, a)),
            None => return Ok((false, witnesses)),
        }
    }
    Ok((true, witnesses))
}

/// Multiplication matrix of a ∈ Λ in the basis of Λ (integer entries).
fn mult_in_basis(a: &[BigRational], lambda: &FullLattice) -> Result<IntMatrix> {
    let alg = lambda.algebra();
    let n = lambda.dim();
    let cols: Vec<Vec<BigInt>> = lambda
        .basis_elems()
        .iter()
        .map(|b| lambda.coords(&alg.mul(a, b)).ok_or_else(|| Error::PreconditionFailed("element not in the order".into())))
        .collect::<Result<_>>()?;
    Ok(IntMatrix::from_cols(n, &cols))
}

fn rank_mod_p(m: &IntMatrix, fp: PrimeField) -> usize {
    let rows = m.to_rows().iter().map(|r| r.iter().map(|x| fp.from_bigint(x)).collect()).collect();
    Mat::from_rows(fp, rows, m.cols()).rank()
}

/// a ∈ Λ_(p)^unit for a ∈ Λ: p ∤ det(μ_a), cross-checked against
/// invertibility of a in Λ/pΛ.
pub fn is_local_unit(a: &[BigRational], lambda: &Order, p: &BigInt) -> Result<bool> {
    let fp = small_prime(p)?;
    if !lambda.contains_elem(a) {
        return Err(Error::PreconditionFailed("element not in the order".into()));
    }
    let det = lambda.algebra().det(a);
    debug_assert!(det.is_integer());
    let by_det = !det.to_integer().is_multiple_of(p);
    let by_reduction = rank_mod_p(&mult_in_basis(a, lambda)?, fp) == lambda.dim();
    assert_eq!(by_det, by_reduction, "determinant and mod-p unit criteria agree");
    Ok(by_det)
}

/// Integer coordinates of a ∈ Λ in the basis of Λ.
fn lambda_coords(lambda: &FullLattice, a: &[BigRational]) -> Result<Vec<BigInt>> {
    lambda.coords(a).ok_or_else(|| Error::PreconditionFailed("element not in the order".into()))
}

fn from_lambda_coords(lambda: &FullLattice, x: &[BigInt]) -> Element<Rationals> {
    let n = lambda.dim();
    let mut out = vec![BigRational::zero(); n];
    for (b, c) in lambda.basis_elems().iter().zip(x) {
        if c.is_zero() {
            continue;
        }
        let c = BigRational::from_integer(c.clone());
        for (o, bi) in out.iter_mut().zip(b) {
            *o += bi * &c;
        }
    }
    out
}

/// Lifts a unit class a1 of Λ_(p)/L_(p) to a3 ∈ Λ ∩ Λ_(p)^unit with
/// a3 ≡ a1 at p and a3 ≡ 1 at the other primes where L and Λ differ.
pub fn lift_unit(lambda: &Order, l: &FullLattice, p: &BigInt, a1: &[BigRational]) -> Result<Element<Rationals>> {
    let fp = small_prime(p)?;
    let alg = lambda.algebra().clone();
    let n = lambda.dim();
    if !lambda.contains(l) || !l.contains(&lambda.product(l)) {
        return Err(Error::PreconditionFailed("L must be a Λ-ideal inside Λ".into()));
    }
    let index = lambda.index_of(l)?;
    let v = valuation(&index, p);
    if v == 0 {
        return Err(Error::PreconditionFailed(format!("L and Λ agree at {p}")));
    }
    let pv = num_traits::pow(p.clone(), v as usize);
    let m = &index / &pv;
    let c: Vec<Vec<BigInt>> = l.basis_elems().iter().map(|b| lambda_coords(lambda, b)).collect::<Result<_>>()?;
    let cmat = IntMatrix::from_cols(n, &c);
    lambda_coords(lambda, a1)?;
    if rank_mod_p(&mult_in_basis(a1, lambda)?.hcat(&cmat), fp) != n {
        return Err(Error::NotAUnitClass);
    }
    // CRT: a2 ≡ a1 mod L + p^vΛ and a2 ≡ 1 mod L + mΛ
    let g = pv.extended_gcd(&m);
    debug_assert!(g.gcd.is_one());
    let wm = BigRational::from_integer(&g.y * &m);
    let upv = BigRational::from_integer(&g.x * &pv);
    let a2 = alg.add(&alg.scale(&wm, a1), &alg.scale(&upv, &alg.one()));
    // blocks of Λ/pΛ and the ideal L~ = (L + pΛ)/pΛ
    let red = reduce_mod_p(&alg, &lambda.basis_elems(), fp.p())?;
    let dec = red.decompose();
    let lt: Vec<Vec<u64>> = c.iter().map(|col| col.iter().map(|x| fp.from_bigint(x)).collect()).collect();
    let a2p: Vec<u64> = lambda_coords(lambda, &a2)?.iter().map(|x| fp.from_bigint(x)).collect();
    let cm = Mat::from_cols(fp, n, &lt);
    let mut a3 = a2.clone();
    for b in &dec.blocks {
        let in_j1 = in_span(fp, n, &lt, &b.unit);
        let cj_zero = red.is_zero_elem(&red.pow(&red.mul(&b.unit, &a2p), n as u64));
        if in_j1 && cj_zero {
            let x = cm.solve(&b.unit).expect("block unit lies in L~");
            let x: Vec<BigInt> = x.iter().map(|&t| BigInt::from(t)).collect();
            let lc = cmat.mul_vec(&x);
            a3 = alg.add(&a3, &from_lambda_coords(lambda, &lc));
        }
    }
    // postconditions
    assert!(is_local_unit(&a3, lambda, p)?, "lifted element is a local unit");
    let diff = lambda_coords(lambda, &alg.sub(&a3, a1))?;
    let at_p = cmat.hcat(&IntMatrix::identity(n).scale(&pv));
    assert!(crate::exactla::solve_echelon(&crate::exactla::hnf_basis(&at_p), &diff).is_some(), "a3 ≡ a1 at p");
    let diff1 = lambda_coords(lambda, &alg.sub(&a3, &alg.one()))?;
    let away = cmat.hcat(&IntMatrix::identity(n).scale(&m));
    assert!(crate::exactla::solve_echelon(&crate::exactla::hnf_basis(&away), &diff1).is_some(), "a3 ≡ 1 away from p");
    Ok(a3)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::lattice::tests::{alg_poly, lat};

    fn b(n: i64) -> BigInt {
        BigInt::from(n)
    }

    #[test]
    fn bad_primes_examples() {
        let a = alg_poly(&[1, 0, 1]);
        let zi = FullLattice::standard(&a);
        assert!(bad_primes(&zi, &zi).unwrap().is_empty());
        let z3i = lat(&a, 1, &[&[1, 0], &[0, 3]]);
        assert_eq!(bad_primes(&zi, &z3i).unwrap(), vec![b(3)]);
        let a5 = alg_poly(&[5, 0, 1]);
        let p2 = lat(&a5, 1, &[&[2, 0], &[1, 1]]);
        assert_eq!(bad_primes(&FullLattice::standard(&a5), &p2).unwrap(), vec![b(2)]);
        let r = local_report(&p2, &FullLattice::standard(&a5), &b(2));
        assert!(r.contained && !r.equal);
        assert_eq!(r.p_index_l, b(2));
    }

    #[test]
    fn glue_examples() {
        let a = alg_poly(&[1, 0, 1]);
        let zi = FullLattice::standard(&a);
        assert_eq!(glue(&zi, &[]).unwrap(), zi);
        assert_eq!(glue(&zi, &[(b(3), zi.scale_int(3))]).unwrap(), zi.scale_int(3));
        let a5 = alg_poly(&[5, 0, 1]);
        let o = FullLattice::standard(&a5);
        let p2 = lat(&a5, 1, &[&[2, 0], &[1, 1]]);
        assert_eq!(glue(&o, &[(b(2), p2.clone())]).unwrap(), p2);
        // two primes at once: 6·Z[i] from 2·Z[i] and 3·Z[i]
        assert_eq!(glue(&zi, &[(b(2), zi.scale_int(2)), (b(3), zi.scale_int(3))]).unwrap(), zi.scale_int(6));
        // the prime-2 part of 6·Z[i] is that of 2·Z[i]
        assert_eq!(glue(&zi, &[(b(2), zi.scale_int(6))]).unwrap(), zi.scale_int(2));
    }

    #[test]
    fn local_generators() {
        let a5 = alg_poly(&[5, 0, 1]);
        let o = Order::standard(&a5).unwrap();
        assert_eq!(local_generator(&o, &o, &b(7)).unwrap(), Some(a5.one()));
        let p2 = lat(&a5, 1, &[&[2, 0], &[1, 1]]);
        let g = local_generator(&p2, &o, &b(2)).unwrap().unwrap();
        assert!(p2.contains_elem(&g));
        // g·Λ agrees with P2 at 2
        assert!(locally_equal(&o.principal(&g).unwrap(), &p2, &b(2)));
        let (ok, w) = is_locally_principal(&p2).unwrap();
        assert!(ok);
        assert_eq!(w.len(), 1);
    }

    #[test]
    fn non_principal_locally() {
        // Λ = Z + 2tZ + 2t²Z in Q[t]/(t³) acts on L = 2Z + 2tZ + t²Z by scalars
        // mod 2L, so L/2L needs three generators
        let a = alg_poly(&[0, 0, 0, 1]);
        let lambda = Order::new(lat(&a, 1, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]])).unwrap();
        let l = lat(&a, 1, &[&[2, 0, 0], &[0, 2, 0], &[0, 0, 1]]);
        assert!(l.contains(&lambda.product(&l)));
        assert_eq!(local_generator(&l, &lambda, &b(2)).unwrap(), None);
    }

    #[test]
    fn local_units() {
        let a = alg_poly(&[1, 0, 1]);
        let zi = Order::standard(&a).unwrap();
        assert!(is_local_unit(&a.one(), &zi, &b(2)).unwrap());
        assert!(is_local_unit(&[rat(0), rat(1)], &zi, &b(2)).unwrap());
        assert!(!is_local_unit(&[rat(1), rat(1)], &zi, &b(2)).unwrap());
        assert!(is_local_unit(&[rat(1), rat(1)], &zi, &b(3)).unwrap());
    }

    #[test]
    fn lift_unit_examples() {
        let a = alg_poly(&[1, 0, 1]);
        let zi = Order::standard(&a).unwrap();
        let two = zi.scale_int(2);
        assert_eq!(lift_unit(&zi, &two, &b(2), &a.one()).unwrap(), a.one());
        let i = vec![rat(0), rat(1)];
        let a3 = lift_unit(&zi, &two, &b(2), &i).unwrap();
        assert!(is_local_unit(&a3, &zi, &b(2)).unwrap());
        assert!(two.contains_elem(&a.sub(&a3, &i)));
        assert_eq!(lift_unit(&zi, &two, &b(2), &[rat(1), rat(1)]), Err(Error::NotAUnitClass));
    }

    #[test]
    fn lift_unit_needs_block_correction() {
        // Λ = Z[t]/(t² − t) ≅ Z × Z, L = Z·t + 2Z·(1 − t); a1 = 1 − t vanishes
        // in the t-block mod 2, and that block lies in (L + 2Λ)/2Λ
        let a = alg_poly(&[0, -1, 1]);
        let lambda = Order::standard(&a).unwrap();
        let l = lat(&a, 1, &[&[0, 1], &[2, -2]]);
        let a1 = vec![rat(1), rat(-1)];
        assert!(!is_local_unit(&a1, &lambda, &b(2)).unwrap());
        let a3 = lift_unit(&lambda, &l, &b(2), &a1).unwrap();
        assert!(is_local_unit(&a3, &lambda, &b(2)).unwrap());
        assert!(l.contains_elem(&a.sub(&a3, &a1)));
        assert_eq!(a3, a.one());
    }
}
