//! The lattice semigroup: idempotents, invertibility, w- and ε-equivalence,
//! powers, and the constructive normalization results.

mod construct;
pub mod decisive;
mod finite;

pub use construct::{construct_invertibilizing_order, normalize_in_order, stationary_power};
pub use finite::{finite_semigroup_analyze, FiniteSemigroupTable};

use crate::algebra::Element;
use crate::exactla::Rationals;
use crate::lattice::{FullLattice, Order, ZLattice};
use decisive::{components, det_via_components, norm_lower_bound, short_elements, Component};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Default coefficient box for ε-searches outside the decisive domain.
pub const DEFAULT_EPS_BOX: u64 = 50;
/// Candidate cap for the box search.
const EPS_BOX_CAP: u64 = 1_000_000;

/// Three-valued verdict; `Yes` always carries a verified witness.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EquivalenceVerdict<W> {
    Yes(W),
    No,
    UnknownWithinBound(u64),
}

impl<W> EquivalenceVerdict<W> {
    pub fn is_yes(&self) -> bool {
        matches!(self, EquivalenceVerdict::Yes(_))
    }

    pub fn witness(&self) -> Option<&W> {
        match self {
            EquivalenceVerdict::Yes(w) => Some(w),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct InvertibilityReport {
    pub verdict: bool,
    pub order: Order,
    /// O(L) : L when invertible.
    pub inverse: Option<FullLattice>,
    /// Some L' with L·L' = O(L), witnessed by the dual-route colon.
    pub crit_ii: bool,
    /// L·(O(L):L) = O(L).
    pub crit_iii: bool,
    /// O(O(L):L) = O(L).
    pub crit_v: bool,
}

/// L·L = L; agrees with being an order.
pub fn is_idempotent(l: &FullLattice) -> bool {
    let v = l.product(l) == *l;
    assert_eq!(v, l.is_order(), "idempotent lattices are exactly the orders");
    v
}

pub fn is_invertible(l: &FullLattice) -> InvertibilityReport {
    let o = l.order_of();
    let inv = o.colon(l);
    let crit_iii = l.product(&inv) == *o;
    let crit_v = inv.order_of() == o;
    let o2 = l.colon_via_dual(l);
    let crit_ii = l.product(&o2.colon_via_dual(l)) == *o;
    assert!(crit_ii == crit_iii && crit_iii == crit_v, "invertibility criteria disagree");
    InvertibilityReport { verdict: crit_iii, inverse: crit_iii.then_some(inv), order: o, crit_ii, crit_iii, crit_v }
}

/// L1 ∼_w L2 ⟺ 1 ∈ (L1:L2)(L2:L1); the witness L3 = L2:L1 satisfies L1·L3 = L2.
pub fn w_equivalent(l1: &FullLattice, l2: &FullLattice) -> EquivalenceVerdict<FullLattice> {
    let a = l1.colon(l2);
    let b = l2.colon(l1);
    let ab = a.product(&b);
    if !ab.contains_one() {
        return EquivalenceVerdict::No;
    }
    let o = l1.order_of();
    assert!(ab == *o, "(L1:L2)(L2:L1) = O(L1) for w-equivalent lattices");
    assert!(l1.product(&b) == *l2, "the w-witness maps L1 onto L2");
    debug_assert!(is_invertible(&b).verdict && b.order_of() == o);
    EquivalenceVerdict::Yes(b)
}

pub fn eps_equivalent(l1: &FullLattice, l2: &FullLattice) -> EquivalenceVerdict<Element<Rationals>> {
    eps_equivalent_bounded(l1, l2, DEFAULT_EPS_BOX)
}

/// L1 ∼_ε L2: some unit a with a·L1 = L2. Any a ∈ L2:L1 with |det μ_a| =
/// covol(L2)/covol(L1) is such a unit, and det μ_a depends only on pr_F(a).
pub fn eps_equivalent_bounded(l1: &FullLattice, l2: &FullLattice, bound: u64) -> EquivalenceVerdict<Element<Rationals>> {
    if l1.order_of() != l2.order_of() {
        return EquivalenceVerdict::No;
    }
    let m = l2.colon(l1);
    let r = l2.covolume() / l1.covolume();
    let alg = l1.algebra();
    let comps = components(alg);
    let fp = alg.field_part();
    let pm = m.zl().map(&fp.project);
    let found = if comps.iter().all(Component::is_decisive) {
        match decisive_search(&comps, &pm, &r) {
            Some(f) => Some(f),
            None => return EquivalenceVerdict::No,
        }
    } else {
        match box_search(&comps, &pm, &r, bound) {
            Ok(f) => Some(f),
            Err(reached) => return EquivalenceVerdict::UnknownWithinBound(reached),
        }
    };
    let f = found.expect("search returned a candidate");
    let a = m.preimage(&fp.project, &f).expect("f lies in pr_F(L2:L1)");
    debug_assert_eq!(det_via_components(alg, &comps, &a).abs(), r);
    let al1 = l1.mul_elem(&a).expect("a is a unit");
    assert!(al1 == *l2, "ε-witness verified");
    EquivalenceVerdict::Yes(a)
}

/// Rows `range` of the columns of a lattice, as a lattice of its own.
pub(crate) fn restrict(z: &ZLattice, range: std::ops::Range<usize>) -> ZLattice {
    let cols: Vec<Vec<BigRational>> = z.columns().iter().map(|c| c[range.clone()].to_vec()).collect();
    ZLattice::from_columns(range.len(), &cols)
}

/// An f ∈ PM with ∏_j |N_j(f_j)|^{m_j} = r, by exhaustive norm enumeration.
fn decisive_search(comps: &[Component], pm: &ZLattice, r: &BigRational) -> Option<Vec<BigRational>> {
    let parts: Vec<ZLattice> = comps.iter().map(|c| restrict(pm, c.range.clone())).collect();
    let lows: Vec<BigRational> =
        comps.iter().zip(&parts).map(|(c, p)| num_traits::pow(norm_lower_bound(c, p), c.mult)).collect();
    let mut cands: Vec<Vec<(Element<Rationals>, BigRational)>> = Vec::with_capacity(comps.len());
    for (j, (c, p)) in comps.iter().zip(&parts).enumerate() {
        let others = lows.iter().enumerate().filter(|&(i, _)| i != j).fold(BigRational::one(), |acc, (_, x)| acc * x);
        let rj = r / others;
        let t = if rj > BigRational::one() { rj.clone() } else { BigRational::one() };
        let mut list: Vec<(Element<Rationals>, BigRational)> = short_elements(c, p, &t)
            .into_iter()
            .map(|(v, n)| (v, num_traits::pow(n, c.mult)))
            .filter(|(_, nm)| *nm <= rj)
            .collect();
        // small norms first, then lexicographically largest (so 3 before −3)
        list.sort_by(|a, b| a.1.cmp(&b.1).then_with(|| b.0.cmp(&a.0)));
        cands.push(list);
    }
    let fdim = comps.iter().map(|c| c.range.len()).sum();
    let mut f = vec![BigRational::zero(); fdim];
    dfs_tuple(comps, &cands, 0, &BigRational::one(), r, pm, &mut f)
}

fn dfs_tuple(
    comps: &[Component],
    cands: &[Vec<(Element<Rationals>, BigRational)>],
    j: usize,
    acc: &BigRational,
    r: &BigRational,
    pm: &ZLattice,
    f: &mut Vec<BigRational>,
) -> Option<Vec<BigRational>> {
    if j == comps.len() {
        return (acc == r && pm.contains_vec(f)).then(|| f.clone());
    }
    for (v, nm) in &cands[j] {
        let next = acc * nm;
        if &next > r {
            continue;
        }
        f[comps[j].range.clone()].clone_from_slice(v);
        if let Some(hit) = dfs_tuple(comps, cands, j + 1, &next, r, pm, f) {
            return Some(hit);
        }
    }
    None
}

/// Coefficient-box search over PM by sup-norm shells; Err(bound reached).
fn box_search(comps: &[Component], pm: &ZLattice, r: &BigRational, bound: u64) -> Result<Vec<BigRational>, u64> {
    let basis = pm.columns();
    let k = basis.len();
    let mut visited: u64 = 0;
    for s in 1..=bound as i64 {
        let side = (2 * s + 1) as u64;
        let shell = side.checked_pow(k as u32).unwrap_or(u64::MAX);
        if visited.saturating_add(shell) > EPS_BOX_CAP {
            return Err(s as u64 - 1);
        }
        visited += shell;
        let mut x = vec![-s; k];
        loop {
            if x.iter().any(|c| c.abs() == s) {
                let mut f = vec![BigRational::zero(); pm.dim()];
                for (b, &c) in basis.iter().zip(&x) {
                    let c = BigRational::from_integer(BigInt::from(c));
                    for (o, bi) in f.iter_mut().zip(b) {
                        *o += bi * &c;
                    }
                }
                let det = comps.iter().fold(BigRational::one(), |acc, c| acc * num_traits::pow(c.norm(&f[c.range.clone()]), c.mult));
                if &det.abs() == r {
                    return Ok(f);
                }
            }
            let mut i = 0;
            while i < k {
                x[i] += 1;
                if x[i] <= s {
                    break;
                }
                x[i] = -s;
                i += 1;
            }
            if i == k {
                break;
            }
        }
    }
    Err(bound)
}

/// Least k ≥ 1 with L^k invertible; at most max(n−1, 1).
pub fn power_invertibility_index(l: &FullLattice) -> u32 {
    let n = l.dim() as u32;
    let mut p = l.clone();
    let mut k = 1;
    while !is_invertible(&p).verdict {
        k += 1;
        assert!(k <= n.saturating_sub(1).max(1), "power invertibility index exceeds n−1");
        p = p.product(l);
    }
    k
}
