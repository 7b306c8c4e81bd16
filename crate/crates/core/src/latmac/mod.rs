//! Integer matrices with characteristic polynomial f versus full lattices in
//! A_f = Q[t]/(f): B describes multiplication by t̄ in a Z-basis of L.

use crate::algebra::{Algebra, Element, QAlgebra};
use crate::budget::Budget;
use crate::classify::{enumerate_exact_classes, maximal_order, ClassTable};
use crate::error::{Error, Result};
use crate::exactla::{IntMatrix, Mat, Rationals};
use crate::lattice::{intermediate_lattices, FullLattice, Order};
use crate::semigroup::{eps_equivalent, eps_equivalent_bounded, finite_semigroup_analyze, EquivalenceVerdict, FiniteSemigroupTable};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::Arc;

/// A_f for a monic integer polynomial f (coefficients low to high).
pub fn algebra_of(f: &[BigInt]) -> Result<Arc<QAlgebra>> {
    Ok(QAlgebra::new(Algebra::from_polynomial(f)?))
}

/// Degree of f, which must be monic of degree ≥ 2 (1×1 matrices carry no
/// conjugacy information).
fn monic_check(f: &[BigInt]) -> Result<usize> {
    match f.last() {
        Some(c) if c.is_one() => {}
        _ => return Err(Error::NonMonic),
    }
    if f.len() < 3 {
        return Err(Error::PreconditionFailed("deg f must be at least 2".into()));
    }
    Ok(f.len() - 1)
}

/// The companion matrix M_f: t̄·t̄^j = t̄^{j+1}, t̄·t̄^{n−1} = −Σ c_i t̄^i.
pub fn companion(f: &[BigInt]) -> Result<IntMatrix> {
    let n = monic_check(f)?;
    let mut m = IntMatrix::zeros(n, n);
    for j in 0..n - 1 {
        m[(j + 1, j)] = BigInt::one();
    }
    for i in 0..n {
        m[(i, n - 1)] = -&f[i];
    }
    Ok(m)
}

fn to_q(b: &IntMatrix) -> Mat<Rationals> {
    let n = b.cols();
    Mat::from_rows(Rationals, b.to_rows().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect(), n)
}

/// det(tI − B), monic, coefficients low to high.
pub fn charpoly(b: &IntMatrix) -> Vec<BigInt> {
    to_q(b).charpoly().iter().map(|c| c.to_integer()).collect()
}

/// Is the minimal polynomial of B of full degree (equivalently, = charpoly)?
pub fn minpoly_is_charpoly(b: &IntMatrix) -> bool {
    let n = b.rows();
    let q = to_q(b);
    let mut p = Mat::identity(Rationals, n);
    let mut vecs = Vec::with_capacity(n);
    for _ in 0..n {
        vecs.push(p.columns().concat());
        p = p.mul(&q);
    }
    Mat::from_cols(Rationals, n * n, &vecs).rank() == n
}

/// Krylov matrix [v, Bv, …, B^{n−1}v].
fn krylov(b: &Mat<Rationals>, v: &[BigRational]) -> Mat<Rationals> {
    let n = v.len();
    let mut cols = vec![v.to_vec()];
    for _ in 1..n {
        let next = b.mul_vec(cols.last().unwrap());
        cols.push(next);
    }
    Mat::from_cols(Rationals, n, &cols)
}

/// A cyclic vector: standard basis vectors first, then integer vectors with
/// entries in [−2, 2].
fn cyclic_vector(b: &Mat<Rationals>) -> Option<Vec<BigRational>> {
    let n = b.rows();
    let unit = |i: usize| (0..n).map(|k| if k == i { BigRational::one() } else { BigRational::zero() }).collect::<Vec<_>>();
    if let Some(v) = (0..n).map(unit).find(|v| krylov(b, v).rank() == n) {
        return Some(v);
    }
    let mut x = vec![-2i64; n];
    loop {
        let v: Vec<BigRational> = x.iter().map(|&c| BigRational::from_integer(c.into())).collect();
        if krylov(b, &v).rank() == n {
            return Some(v);
        }
        let mut k = 0;
        while k < n && x[k] == 2 {
            x[k] = -2;
            k += 1;
        }
        if k == n {
            return None;
        }
        x[k] += 1;
    }
}

fn check_matrix(b: &IntMatrix, f: &[BigInt]) -> Result<()> {
    let n = monic_check(f)?;
    if b.rows() != n || b.cols() != n {
        return Err(Error::DimensionMismatch(format!("expected a {n}×{n} matrix")));
    }
    if charpoly(b) != f {
        return Err(Error::PreconditionFailed("charpoly(B) ≠ f".into()));
    }
    if !minpoly_is_charpoly(b) {
        return Err(Error::MinPolyDeficient);
    }
    Ok(())
}

/// The basis (b_1, …, b_n) of a lattice in A_f with (t̄b_j) = (b_j)·B: with
/// K the Krylov matrix of a cyclic vector v, g(t̄) ↦ g(B)v identifies A_f with
/// Q^n and b_j is the preimage of e_j, the j-th column of K^{−1}.
fn model_basis(b: &IntMatrix, f: &[BigInt]) -> Result<Vec<Element<Rationals>>> {
    check_matrix(b, f)?;
    let q = to_q(b);
    let v = cyclic_vector(&q).expect("a cyclic vector exists when minpoly = charpoly");
    Ok(krylov(&q, &v).inverse().expect("cyclic").columns())
}

pub fn matrix_to_lattice(b: &IntMatrix, f: &[BigInt]) -> Result<FullLattice> {
    let basis = model_basis(b, f)?;
    let l = FullLattice::new(&algebra_of(f)?, &basis)?;
    debug_assert!(matrix_in_basis(&l, &basis).ok().as_ref() == Some(b));
    Ok(l)
}

/// Coordinates of t̄·b_j in the given basis of L, as the columns of B.
fn matrix_in_basis(l: &FullLattice, basis: &[Element<Rationals>]) -> Result<IntMatrix> {
    let alg = l.algebra();
    let n = l.dim();
    let mut t = vec![BigRational::zero(); n];
    t[1] = BigRational::one();
    let bm = Mat::from_cols(Rationals, n, basis).inverse().ok_or(Error::NotFull)?;
    let cols: Vec<Vec<BigInt>> = basis
        .iter()
        .map(|x| {
            let c = bm.mul_vec(&alg.mul(&t, x));
            if c.iter().all(|v| v.is_integer()) {
                Ok(c.iter().map(|v| v.to_integer()).collect())
            } else {
                Err(Error::NotTStable)
            }
        })
        .collect::<Result<_>>()?;
    Ok(IntMatrix::from_cols(n, &cols))
}

/// The matrix of t̄ in the canonical (HNF) basis of L ⊂ A_f, deg f ≥ 2.
pub fn lattice_to_matrix(l: &FullLattice) -> Result<IntMatrix> {
    if l.dim() < 2 {
        return Err(Error::PreconditionFailed("deg f must be at least 2".into()));
    }
    matrix_in_basis(l, &l.basis_elems())
}

/// GL_n(Z)-conjugacy of B1 and B2 via ε-equivalence of their lattices; a Yes
/// carries U with U·B1·U^{−1} = B2.
pub fn gl_conjugate(b1: &IntMatrix, b2: &IntMatrix, budget: &Budget) -> Result<EquivalenceVerdict<IntMatrix>> {
    let f = charpoly(b1);
    if b2.rows() != b1.rows() || charpoly(b2) != f {
        return Ok(EquivalenceVerdict::No);
    }
    let (basis1, basis2) = (model_basis(b1, &f)?, model_basis(b2, &f)?);
    let alg = algebra_of(&f)?;
    let l1 = FullLattice::new(&alg, &basis1)?;
    let l2 = FullLattice::new(&alg, &basis2)?;
    let a = match eps_equivalent_bounded(&l1, &l2, budget.eps_box) {
        EquivalenceVerdict::Yes(a) => a,
        EquivalenceVerdict::No => return Ok(EquivalenceVerdict::No),
        EquivalenceVerdict::UnknownWithinBound(k) => return Ok(EquivalenceVerdict::UnknownWithinBound(k)),
    };
    // (a·b_j) = (c_i)·U
    let n = b1.rows();
    let cinv = Mat::from_cols(Rationals, n, &basis2).inverse().expect("basis");
    let cols: Vec<Vec<BigInt>> = basis1.iter().map(|x| cinv.mul_vec(&alg.mul(&a, x)).iter().map(|v| v.to_integer()).collect()).collect();
    let u = IntMatrix::from_cols(n, &cols);
    assert!(is_conjugator(&u, b1, b2), "U·B1·U^{{−1}} = B2 with U unimodular");
    Ok(EquivalenceVerdict::Yes(u))
}

/// U unimodular and U·B1 = B2·U.
pub fn is_conjugator(u: &IntMatrix, b1: &IntMatrix, b2: &IntMatrix) -> bool {
    let d = u.det();
    (d.is_one() || d == -BigInt::one()) && u.mul(b1) == b2.mul(u)
}

/// Conjugacy classes with characteristic polynomial f, grouped by the order
/// Λ = O(L) of the corresponding lattice.
#[derive(Clone, Debug)]
pub struct ClassCount {
    pub per_order: Vec<ClassTable>,
    /// One matrix per class, in the order of `per_order` and its reps.
    pub matrices: Vec<IntMatrix>,
}

impl ClassCount {
    pub fn total(&self) -> usize {
        self.per_order.iter().map(ClassTable::class_count).sum()
    }

    pub fn lattices(&self) -> Vec<FullLattice> {
        self.per_order.iter().flat_map(|t| t.reps.iter().cloned()).collect()
    }
}

fn same_algebra(a: &QAlgebra, b: &QAlgebra) -> bool {
    let n = a.dim();
    n == b.dim() && (0..n).all(|i| (0..n).all(|j| a.structure(i, j) == b.structure(i, j)))
}

/// All orders Λ_f ⊆ Λ ⊆ Λmax of a separable A_f.
pub fn orders_over(f: &[BigInt], budget: &Budget) -> Result<Vec<Order>> {
    let alg = algebra_of(f)?;
    let lf = Order::standard(&alg)?;
    let lmax = maximal_order(&lf)?;
    Ok(intermediate_lattices(&lf, &lmax, budget.enumeration)?.into_iter().filter(|l| l.is_order()).map(|l| Order::new(l).unwrap()).collect())
}

/// Classes of matrices with characteristic and minimal polynomial f. For
/// non-squarefree f the count runs over the given orders only.
pub fn class_count(f: &[BigInt], orders: Option<&[Order]>, budget: &Budget) -> Result<ClassCount> {
    monic_check(f)?;
    let alg = algebra_of(f)?;
    let lf = Order::standard(&alg)?;
    let orders: Vec<Order> = match orders {
        Some(os) => {
            for o in os {
                if !same_algebra(o.algebra(), &alg) || !o.contains(&lf) {
                    return Err(Error::PreconditionFailed("orders must contain Z[t]/(f)".into()));
                }
            }
            os.to_vec()
        }
        None if !alg.is_separable() => return Err(Error::InfiniteWithoutOrderRestriction),
        None => orders_over(f, budget)?,
    };
    let mut per_order = Vec::with_capacity(orders.len());
    let mut matrices = Vec::new();
    for o in &orders {
        let t = enumerate_exact_classes(o, budget)?;
        for r in &t.reps {
            let m = lattice_to_matrix(r)?;
            debug_assert_eq!(charpoly(&m), f);
            matrices.push(m);
        }
        per_order.push(t);
    }
    Ok(ClassCount { per_order, matrices })
}

/// The semigroup of classes under lattice multiplication, with division
/// L_i : L_j, both read off by ε-classification.
#[derive(Clone, Debug)]
pub struct S1fSemigroup {
    pub reps: Vec<FullLattice>,
    pub table: Vec<Vec<usize>>,
    pub division: Vec<Vec<usize>>,
    pub analysis: FiniteSemigroupTable,
}

fn classify_among(reps: &[FullLattice], l: &FullLattice) -> Result<usize> {
    reps.iter()
        .position(|r| eps_equivalent(r, l).is_yes())
        .ok_or_else(|| Error::NotClosed("a product or quotient falls outside the listed orders".into()))
}

pub fn s1f_semigroup(f: &[BigInt], orders: Option<&[Order]>, budget: &Budget) -> Result<S1fSemigroup> {
    let reps = class_count(f, orders, budget)?.lattices();
    let mut table = Vec::with_capacity(reps.len());
    let mut division = Vec::with_capacity(reps.len());
    for a in &reps {
        table.push(reps.iter().map(|b| classify_among(&reps, &a.product(b))).collect::<Result<Vec<_>>>()?);
        division.push(reps.iter().map(|b| classify_among(&reps, &a.colon(b))).collect::<Result<Vec<_>>>()?);
    }
    let analysis = finite_semigroup_analyze(&table)?;
    Ok(S1fSemigroup { reps, table, division, analysis })
}

#[cfg(test)]
mod tests;
