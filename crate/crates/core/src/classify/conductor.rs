//! Conductors of suborders, the exact sequence linking G(Λ2) and G(Λ1), the
//! class-number index formula, pr_F on groups and Faddeev's chains.

use super::classes::{maximal_units, require_decisive};
use super::{enumerate_exact_classes, maximal_order, ClassTable};
use crate::algebra::Element;
use crate::arith::prime_divisors;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::Rationals;
use crate::lattice::{FullLattice, Order};
use crate::localize::{glue, is_locally_principal, quotient_ring};
use crate::semigroup::decisive::components;
use crate::semigroup::is_invertible;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Data attached to a pair of orders Λ2 ⊆ Λ1.
#[derive(Clone, Debug)]
pub struct ConductorData {
    pub big: Order,
    pub small: Order,
    /// C = Λ2 : Λ1, the largest Λ1-ideal inside Λ2.
    pub conductor: FullLattice,
    /// Primes dividing [Λ1 : C].
    pub bad_primes: Vec<BigInt>,
    /// |(Λ1/C)^×|.
    pub units_big: u64,
    /// |(Λ2/C)^×|.
    pub units_small: u64,
    /// [Λ1^× : Λ2^×]; only in separable algebras with decisive components.
    pub torsion_index: Option<u64>,
}

pub fn conductor(big: &Order, small: &Order, budget: &Budget) -> Result<ConductorData> {
    if !big.contains(small) {
        return Err(Error::NotContained);
    }
    let c = small.colon(big);
    assert!(small.contains(&c) && c.contains(&big.product(&c)), "C is a Λ1-ideal inside Λ2");
    // no single element of Λ2 outside C enlarges C to another Λ1-ideal inside Λ2
    for b in small.basis_elems() {
        if !c.contains_elem(&b) {
            assert!(!small.contains(&c.sum(&big.mul_elem(&b)?)), "C is the largest Λ1-ideal in Λ2");
        }
    }
    let bad_primes = prime_divisors(&big.index_of(&c)?)?;
    let units_big = quotient_ring(big, &c, budget.quotient)?.unit_count();
    let units_small = quotient_ring(small, &c, budget.quotient)?.unit_count();
    let torsion_index = unit_index(big, small)?;
    Ok(ConductorData { big: big.clone(), small: small.clone(), conductor: c, bad_primes, units_big, units_small, torsion_index })
}

/// [Λ1^× : Λ2^×] when both unit groups are finite and enumerable.
fn unit_index(big: &Order, small: &Order) -> Result<Option<u64>> {
    let alg = big.algebra();
    let comps = components(alg);
    if !alg.is_separable() || require_decisive(&comps).is_err() {
        return Ok(None);
    }
    let units = maximal_units(&comps, &maximal_order(big)?);
    let u1 = units.iter().filter(|u| big.contains_elem(u)).count() as u64;
    let u2 = units.iter().filter(|u| small.contains_elem(u)).count() as u64;
    Ok(Some(u1 / u2))
}

/// Λ1·L for L ∈ G(Λ2); the result lies in G(Λ1).
pub fn suborder_pushforward(big: &Order, l: &FullLattice) -> Result<FullLattice> {
    let rep = is_invertible(l);
    if !rep.verdict || !big.contains(&rep.order) {
        return Err(Error::PreconditionFailed("L must be invertible with order inside Λ1".into()));
    }
    let p = big.product(l);
    let r = is_invertible(&p);
    assert!(r.verdict && r.order == *big, "Λ1·L is invertible with order Λ1");
    Ok(p)
}

/// C + a·Λ2 for a ∈ Λ1 whose class is a unit of Λ1/C; a kernel element of
/// G(Λ2) → G(Λ1).
pub fn kernel_class_from_unit(big: &Order, small: &Order, a: &[BigRational]) -> Result<FullLattice> {
    if !big.contains(small) {
        return Err(Error::NotContained);
    }
    let c = small.colon(big);
    let q = quotient_ring(big, &c, u64::MAX)?;
    let res = q.residue(a)?;
    if !q.is_unit(&res) {
        return Err(Error::NotAUnitClass);
    }
    let l = c.sum(&small.mul_elem(a)?);
    assert!(big.product(&l) == **big, "Λ1·(C + aΛ2) = Λ1");
    let r = is_invertible(&l);
    assert!(r.verdict && r.order == *small, "C + aΛ2 ∈ G(Λ2)");
    Ok(l)
}

/// Both sides of |G(Λ2)|/|G(Λ1)| = |(Λ1/C)^×|/|(Λ2/C)^×| · 1/[Λ1^× : Λ2^×].
#[derive(Clone, Debug)]
pub struct IndexFormulaReport {
    pub group_big: usize,
    pub group_small: usize,
    pub units_big: u64,
    pub units_small: u64,
    pub torsion_index: u64,
    pub left: BigRational,
    pub right: BigRational,
}

impl IndexFormulaReport {
    pub fn holds(&self) -> bool {
        self.left == self.right
    }
}

pub fn index_formula_check(big: &Order, small: &Order, budget: &Budget) -> Result<IndexFormulaReport> {
    let alg = big.algebra();
    if !alg.is_separable() {
        return Err(Error::PreconditionFailed("the algebra must be separable".into()));
    }
    require_decisive(&components(alg))?;
    let d = conductor(big, small, budget)?;
    let torsion_index = d.torsion_index.expect("decisive separable algebra");
    let group_big = enumerate_exact_classes(big, budget)?.group_order();
    let group_small = enumerate_exact_classes(small, budget)?.group_order();
    let r = |a: u64, b: u64| BigRational::new(BigInt::from(a), BigInt::from(b));
    let left = r(group_small as u64, group_big as u64);
    let right = r(d.units_big, d.units_small) / BigRational::from_integer(BigInt::from(torsion_index));
    Ok(IndexFormulaReport { group_big, group_small, units_big: d.units_big, units_small: d.units_small, torsion_index, left, right })
}

/// pr_F(L) as a lattice in F.
pub fn prf_lattice(l: &FullLattice) -> FullLattice {
    l.pr_f()
}

/// The isomorphism G(Λ) → G(pr_F Λ) induced by pr_F, verified on all pairs,
/// with a lift of every target class.
#[derive(Clone, Debug)]
pub struct PrfIsomorphism {
    pub source: ClassTable,
    pub target: ClassTable,
    /// map[i] = position in target.group of pr_F of source.group[i].
    pub map: Vec<usize>,
    /// lifts[k] ∈ G(Λ) with pr_F(lifts[k]) = the k-th target representative.
    pub lifts: Vec<FullLattice>,
}

/// Lift of L0 ∈ G(pr_F Λ): glue Λ with a_p·Λ at the primes where L0 differs
/// from pr_F Λ, a_p a local generator of L0 embedded in A.
pub fn prf_lift(lambda: &Order, l0: &FullLattice) -> Result<FullLattice> {
    let fp = lambda.algebra().field_part();
    let (principal, gens) = is_locally_principal(l0)?;
    if !principal {
        return Err(Error::PreconditionFailed("L0 is not invertible".into()));
    }
    let assignments: Vec<(BigInt, FullLattice)> = gens
        .into_iter()
        .map(|(p, a)| {
            let a: Element<Rationals> = fp.embed.mul_vec(&a);
            Ok((p, lambda.mul_elem(&a)?))
        })
        .collect::<Result<_>>()?;
    let l = glue(lambda, &assignments)?;
    assert!(l.pr_f() == *l0, "pr_F of the lift is L0");
    Ok(l)
}

pub fn prf_group_map(lambda: &Order, budget: &Budget) -> Result<PrfIsomorphism> {
    let source = enumerate_exact_classes(lambda, budget)?;
    let lam0 = Order::new(lambda.pr_f())?;
    let target = enumerate_exact_classes(&lam0, budget)?;
    let map: Vec<usize> = source
        .group
        .iter()
        .map(|&i| target.group_index_of(&source.reps[i].pr_f()).expect("pr_F maps G(Λ) into G(pr_F Λ)"))
        .collect();
    let n = map.len();
    assert_eq!(n, target.group_order(), "|G(Λ)| = |G(pr_F Λ)|");
    let mut hit = vec![false; n];
    for &k in &map {
        hit[k] = true;
    }
    assert!(hit.iter().all(|&h| h), "pr_F is a bijection on the groups");
    for a in 0..n {
        for b in 0..n {
            assert_eq!(map[source.group_table[a][b]], target.group_table[map[a]][map[b]], "pr_F is multiplicative");
        }
    }
    let lifts: Vec<FullLattice> = target
        .group
        .iter()
        .enumerate()
        .map(|(k, &i)| {
            let l = prf_lift(lambda, &target.reps[i])?;
            let pos = source.group_index_of(&l).expect("lifts are invertible with order Λ");
            assert_eq!(map[pos], k, "the lift maps back to its class");
            Ok(l)
        })
        .collect::<Result<_>>()?;
    Ok(PrfIsomorphism { source, target, map, lifts })
}

/// Λ_m = Λ + Σ_l 2^{−lm}(Λ∩R)^l for m = 1..=m_max: a strictly increasing
/// chain of orders, showing that A has infinitely many orders when R ≠ 0.
pub fn faddeev_chain(lambda: &Order, m_max: u32) -> Result<Vec<Order>> {
    let alg = lambda.algebra();
    let rad = lambda.radical_part().columns();
    if rad.is_empty() {
        return Err(Error::RadicalZero);
    }
    // spanning sets of (Λ∩R)^l, l ≥ 1, until they vanish
    let mut powers: Vec<Vec<Element<Rationals>>> = vec![rad.clone()];
    loop {
        let last = powers.last().unwrap();
        let next: Vec<Element<Rationals>> =
            last.iter().flat_map(|x| rad.iter().map(move |y| alg.mul(x, y))).filter(|v| v.iter().any(|c| !c.is_zero())).collect();
        if next.is_empty() {
            break;
        }
        let z = crate::lattice::ZLattice::from_columns(alg.dim(), &next);
        powers.push(z.columns());
    }
    let mut chain: Vec<Order> = Vec::with_capacity(m_max as usize);
    for m in 1..=m_max {
        let mut gens = lambda.basis_elems();
        for (l, p) in powers.iter().enumerate() {
            let s = BigRational::new(BigInt::one(), num_traits::pow(BigInt::from(2), (l + 1) * m as usize));
            gens.extend(p.iter().map(|v| v.iter().map(|x| x * &s).collect::<Vec<_>>()));
        }
        let o = Order::new(FullLattice::new(alg, &gens)?)?;
        if let Some(prev) = chain.last() {
            assert!(o.contains(prev) && *o != **prev, "the chain is strictly increasing");
        }
        chain.push(o);
    }
    Ok(chain)
}
