//! An order Λ ⊇ O(L) with ΛL invertible, and the normalization L ↦ L2 with
//! 1 ∈ L2 ⊆ Λ.

use super::{is_invertible, w_equivalent};
use crate::algebra::{Element, QAlgebra};
use crate::classify::maximal_order;
use crate::error::{Error, Result};
use crate::exactla::{span_basis, Mat, Rationals};
use crate::lattice::{FullLattice, Order, ZLattice};
use crate::localize::{bad_primes, check_cap, glue, is_local_unit, local_generator, small_prime, LOCAL_SEARCH_CAP};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;

fn zprod(alg: &QAlgebra, x: &ZLattice, y: &ZLattice) -> ZLattice {
    let mut cols = Vec::new();
    for a in x.columns() {
        for b in y.columns() {
            cols.push(alg.mul(&a, &b));
        }
    }
    ZLattice::from_columns(alg.dim(), &cols)
}

/// Subspaces B^(j,l) splitting the filtrations N_j^l ⊃ N_j^{l+1}, each an
/// F^(j)-subspace; B^(j,0) = F^(j).
fn splittings(alg: &QAlgebra) -> Vec<Vec<Vec<Element<Rationals>>>> {
    let n = alg.dim();
    let d = alg.decomposition();
    let chain = &alg.filtrations().radical_chain;
    d.blocks
        .iter()
        .map(|b| {
            let nl = |l: usize| -> Vec<Element<Rationals>> {
                let v: Vec<Element<Rationals>> = chain.get(l).map_or(vec![], |c| c.iter().map(|x| alg.mul(&b.unit, x)).collect());
                span_basis(Rationals, n, &v)
            };
            let mut parts = vec![b.field_basis.clone()];
            for l in 1..=b.nilpotency {
                let mut span = nl(l + 1);
                let mut part: Vec<Element<Rationals>> = Vec::new();
                for v in nl(l) {
                    if !crate::exactla::in_span(Rationals, n, &span, &v) {
                        for f in &b.field_basis {
                            let fv = alg.mul(f, &v);
                            span.push(fv.clone());
                            part.push(fv);
                        }
                    }
                }
                parts.push(part);
            }
            parts
        })
        .collect()
}

/// An order Λ ⊇ O(L) with ΛL ∈ G(Λ), assembled from lattices B^(j,l)_Z in the
/// splitting subspaces: B^(j,0)_Z the maximal order of F^(j), and for l ≥ 1
/// the smallest Λmax-stable lattice containing pr(O(L)), (1/m)·pr(L) and
/// the pr-images of lower products.
pub fn construct_invertibilizing_order(l: &FullLattice) -> Result<Order> {
    let alg = l.algebra();
    let n = alg.dim();
    let o = l.order_of();
    let fp = alg.field_part();
    let pr_o = Order::new(o.pr_f()).expect("pr_F of an order is an order");
    let lmax = maximal_order(&pr_o).map_err(|e| match e {
        Error::FactorizationTooHard(s) => Error::MaximalOrderUnavailable(s),
        other => other,
    })?;
    let parts = splittings(alg);
    let mut all_cols: Vec<Element<Rationals>> = Vec::with_capacity(n);
    let mut slots = Vec::new();
    for (j, bl) in parts.iter().enumerate() {
        for (li, b) in bl.iter().enumerate() {
            slots.push((j, li, all_cols.len()..all_cols.len() + b.len()));
            all_cols.extend(b.iter().cloned());
        }
    }
    assert_eq!(all_cols.len(), n, "the splitting spans A");
    let basis = Mat::from_cols(Rationals, n, &all_cols);
    let inv = basis.inverse().expect("splitting is a basis");
    // pr_(j,l) as an endomorphism of A
    let pr = |j: usize, li: usize| -> Mat<Rationals> {
        let r = slots.iter().find(|s| s.0 == j && s.1 == li).unwrap().2.clone();
        let mut sel = Mat::zeros(Rationals, n, n);
        for i in r {
            sel.set(i, i, BigRational::one());
        }
        basis.mul(&sel).mul(&inv)
    };
    let mut lambda_gens: Vec<Element<Rationals>> = Vec::new();
    for (j, bl) in parts.iter().enumerate() {
        let range = fp.components[j].clone();
        // B^(j,0)_Z: the j-th component of Λmax(F), embedded in A
        let comp: Vec<Element<Rationals>> = lmax
            .basis_elems()
            .iter()
            .map(|v| {
                let mut w = v.clone();
                for (i, x) in w.iter_mut().enumerate() {
                    if !range.contains(&i) {
                        *x = BigRational::from_integer(0.into());
                    }
                }
                fp.embed.mul_vec(&w)
            })
            .collect();
        let b0 = ZLattice::from_columns(n, &comp);
        // m·e_j ∈ L^(j,0) for the least positive integer m
        let l0 = l.zl().map(&pr(j, 0));
        let e = alg.decomposition().blocks[j].unit.clone();
        let c = Mat::from_cols(Rationals, n, &l0.columns()).solve(&e).expect("e_j spans Q·L^(j,0)");
        let m = c.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
        let inv_m = BigRational::new(BigInt::one(), m);
        let mut xs: Vec<ZLattice> = vec![b0.clone()];
        for li in 1..bl.len() {
            let p = pr(j, li);
            let mut x = o.zl().map(&p).sum(&l.zl().map(&p).scale(&inv_m));
            for l1 in 1..li {
                for l2 in 1..=li - l1 {
                    x = x.sum(&zprod(alg, &xs[l1], &xs[l2]).map(&p));
                }
            }
            xs.push(zprod(alg, &b0, &x));
        }
        for x in xs {
            lambda_gens.extend(x.columns());
        }
    }
    let lambda = Order::new(FullLattice::new(alg, &lambda_gens)?)?;
    assert!(lambda.contains(&o), "Λ ⊇ O(L)");
    let ll = lambda.product(l);
    let rep = is_invertible(&ll);
    assert!(rep.verdict && rep.order == lambda, "ΛL is invertible with order Λ");
    Ok(lambda)
}

/// L2 ∼_w L with 1 ∈ L2 ⊆ Λ, for an order Λ ⊇ O(L) with ΛL ∈ G(Λ).
pub fn normalize_in_order(l: &FullLattice, lambda: &Order) -> Result<FullLattice> {
    let o = l.order_of();
    if !lambda.contains(&o) {
        return Err(Error::PreconditionFailed("Λ must contain O(L)".into()));
    }
    let ll = lambda.product(l);
    let rep = is_invertible(&ll);
    if !rep.verdict || rep.order != *lambda {
        return Err(Error::PreconditionFailed("ΛL must be invertible with order Λ".into()));
    }
    // K ∈ G(O(L)) with ΛK = ΛL from local generators of ΛL
    let mut assign = Vec::new();
    for p in bad_primes(&ll, lambda)? {
        let a = local_generator(&ll, lambda, &p)?.expect("invertible lattices are locally principal");
        assign.push((p, o.mul_elem(&a)?));
    }
    let k = glue(&o, &assign)?;
    assert_eq!(lambda.product(&k), ll, "ΛK = ΛL");
    let l1 = l.product(&o.colon(&k));
    assert_eq!(lambda.product(&l1), **lambda, "L1·Λ = Λ");
    // local units b_p ∈ L1 at the primes where L1 ≠ Λ
    let mut assign = Vec::new();
    for p in bad_primes(&l1, lambda)? {
        let b = local_unit_in(&l1, lambda, &p)?;
        let binv = l.algebra().invert(&b)?;
        assign.push((p, l1.mul_elem(&binv)?));
    }
    let l2 = glue(&l1, &assign)?;
    if !(l2.contains_one() && lambda.contains(&l2) && w_equivalent(&l2, l).is_yes()) {
        return Err(Error::PreconditionFailed("normalization postconditions failed".into()));
    }
    Ok(l2)
}

/// Some b ∈ L1 whose class is a unit of Λ/pΛ, by search over L1 mod p.
fn local_unit_in(l1: &FullLattice, lambda: &Order, p: &BigInt) -> Result<Element<Rationals>> {
    let q = small_prime(p)?.p();
    let n = l1.dim();
    check_cap(q, n, LOCAL_SEARCH_CAP)?;
    let mut c = vec![0u64; n];
    loop {
        let v: Vec<BigInt> = c.iter().map(|&x| BigInt::from(x)).collect();
        let b = l1.elem_from_coords(&v);
        if c.iter().any(|&x| x != 0) && is_local_unit(&b, lambda, p)? {
            return Ok(b);
        }
        let mut i = 0;
        while i < n {
            c[i] += 1;
            if c[i] < q {
                break;
            }
            c[i] = 0;
            i += 1;
        }
        if i == n {
            return Err(Error::PreconditionFailed(format!("no unit of Λ/{p}Λ in L1")));
        }
    }
}

/// (N, L2^N) for the least N with L2^N = L2^{N+1}; L2^N is an order.
pub fn stationary_power(l2: &FullLattice) -> Result<(u32, Order)> {
    if !l2.contains_one() {
        return Err(Error::PreconditionFailed("1 ∉ L2".into()));
    }
    let bound = (l2.dim() as u32).saturating_sub(1).max(1);
    let mut cur = l2.clone();
    let mut k = 1;
    loop {
        let next = cur.product(l2);
        if next == cur {
            assert!(k <= bound, "stationary exponent exceeds n−1");
            return Ok((k, Order::new(cur)?));
        }
        cur = next;
        k += 1;
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::superlattices;
    use crate::lattice::tests::{alg_poly, lat};

    fn check_pipeline(l: &FullLattice) {
        let lambda = construct_invertibilizing_order(l).unwrap();
        let l2 = normalize_in_order(l, &lambda).unwrap();
        let (nn, l2n) = stationary_power(&l2).unwrap();
        assert!(nn <= (l.dim() as u32 - 1).max(1));
        assert!(l2n.contains(&l.order_of()));
    }

    #[test]
    fn invertible_in_number_field() {
        let a = alg_poly(&[5, 0, 1]);
        let p2 = lat(&a, 1, &[&[2, 0], &[1, 1]]);
        let lambda = construct_invertibilizing_order(&p2).unwrap();
        assert_eq!(lambda, Order::standard(&a).unwrap());
        let l2 = normalize_in_order(&p2, &lambda).unwrap();
        assert!(l2.contains_one() && lambda.contains(&l2));
        check_pipeline(&p2);
    }

    #[test]
    fn lambda_itself() {
        let a = alg_poly(&[5, 0, 1]);
        let o = Order::standard(&a).unwrap();
        assert_eq!(normalize_in_order(&o, &o).unwrap(), *o);
        assert_eq!(stationary_power(&o).unwrap().0, 1);
    }

    #[test]
    fn dual_numbers() {
        let a = alg_poly(&[0, 0, 1]);
        for l in [lat(&a, 1, &[&[1, 0], &[0, 3]]), lat(&a, 2, &[&[2, 1], &[0, 6]]), lat(&a, 1, &[&[3, 0], &[0, 1]])] {
            check_pipeline(&l);
        }
    }

    #[test]
    fn non_invertible_cubic() {
        let a = alg_poly(&[-2, 0, 0, 1]);
        let base = lat(&a, 1, &[&[1, 0, 0], &[0, 2, 0], &[0, 0, 2]]);
        let l = superlattices(&base, 4, 100_000)
            .unwrap()
            .into_iter()
            .find(|l| l.order_of().lattice() == &base && !is_invertible(l).verdict)
            .unwrap();
        let lambda = construct_invertibilizing_order(&l).unwrap();
        assert!(lambda.contains(&base) && *lambda != base);
        check_pipeline(&l);
    }

    #[test]
    fn with_radical_in_dim_three() {
        // Q[t]/(t³) and Q[t]/(t²(t−1))
        let a = alg_poly(&[0, 0, 0, 1]);
        check_pipeline(&lat(&a, 1, &[&[1, 0, 0], &[0, 2, 0], &[0, 1, 4]]));
        let b = alg_poly(&[0, 0, -1, 1]);
        check_pipeline(&lat(&b, 1, &[&[2, 0, 0], &[1, 3, 0], &[0, 1, 1]]));
    }
}
