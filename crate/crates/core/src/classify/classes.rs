//! ε-classes of exact ideals, their w-partition and the group G(Λ).

use super::maximal_order;
use crate::algebra::{Element, QAlgebra};
use crate::arith::isqrt;
use crate::budget::Budget;
use crate::error::{Error, Result};
use crate::exactla::{Mat, Rationals};
use crate::lattice::{intermediate_lattices, sublattices, FullLattice, Order, ZLattice};
use crate::semigroup::decisive::{component_units, components, Component};
use crate::semigroup::{eps_equivalent, restrict, w_equivalent};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use std::collections::BTreeSet;

/// The ε-classes of lattices with order exactly Λ, partitioned into w-classes.
#[derive(Clone, Debug)]
pub struct ClassTable {
    pub order: Order,
    /// One representative per ε-class, each containing 1; reps[0] = Λ.
    pub reps: Vec<FullLattice>,
    pub w_class_of: Vec<usize>,
    pub w_classes: Vec<Vec<usize>>,
    /// Indices into `reps` of the invertible classes, the w-class of Λ.
    pub group: Vec<usize>,
    /// Multiplication table of G(Λ), in positions of `group`.
    pub group_table: Vec<Vec<usize>>,
    /// Every ε-verdict was decided exactly.
    pub decisive: bool,
}

impl ClassTable {
    pub fn class_count(&self) -> usize {
        self.reps.len()
    }

    pub fn group_order(&self) -> usize {
        self.group.len()
    }

    /// Position in `group` of the class of an invertible lattice with order Λ.
    pub fn group_index_of(&self, l: &FullLattice) -> Option<usize> {
        self.group.iter().position(|&i| eps_equivalent(l, &self.reps[i]).is_yes())
    }
}

/// The Picard group G(Λ) with its multiplication table.
#[derive(Clone, Debug)]
pub struct Picard {
    pub reps: Vec<FullLattice>,
    pub table: Vec<Vec<usize>>,
}

impl Picard {
    pub fn order(&self) -> usize {
        self.reps.len()
    }
}

pub fn picard(lambda: &Order, budget: &Budget) -> Result<Picard> {
    let t = enumerate_exact_classes(lambda, budget)?;
    Ok(Picard { reps: t.group.iter().map(|&i| t.reps[i].clone()).collect(), table: t.group_table })
}

pub(crate) fn require_decisive(comps: &[Component]) -> Result<()> {
    if comps.iter().all(Component::is_decisive) {
        Ok(())
    } else {
        Err(Error::OutsideDecisiveDomain("a field component is neither Q nor imaginary quadratic".into()))
    }
}

/// Some unit b ∈ L, smallest coordinates first.
fn unit_in(l: &FullLattice) -> Element<Rationals> {
    let alg = l.algebra();
    let n = l.dim();
    for s in 0i64.. {
        let mut x = vec![-s; n];
        loop {
            if x.iter().any(|c| c.abs() == s) {
                let b = l.elem_from_coords(&x.iter().map(|&c| BigInt::from(c)).collect::<Vec<_>>());
                if alg.is_unit_elem(&b) {
                    return b;
                }
            }
            let mut k = 0;
            while k < n && x[k] == s {
                x[k] = -s;
                k += 1;
            }
            if k == n {
                break;
            }
            x[k] += 1;
        }
    }
    unreachable!("a full lattice contains units")
}

/// b^{-1}L for a unit b ∈ L, so that 1 lies in the result.
fn through_one(l: &FullLattice) -> FullLattice {
    let b = unit_in(l);
    let binv = l.algebra().invert(&b).expect("unit");
    l.mul_elem(&binv).expect("unit")
}

/// Ideal classes of the maximal order O of a decisive number field, with O first.
fn component_classes(c: &Component, o: &FullLattice, budget: &Budget) -> Result<Vec<FullLattice>> {
    if c.degree == 1 {
        return Ok(vec![o.clone()]);
    }
    // every class holds an integral ideal of norm ≤ (2/π)√|d| ≤ 0.7√|d|
    let d = o.disc().abs().to_integer();
    let bound = isqrt(&(d * 49 / 100)).max(BigInt::one());
    let bound = bound.to_u64().ok_or_else(|| Error::BudgetExceeded("Minkowski bound too large".into()))?;
    let mut reps: Vec<FullLattice> = vec![o.clone()];
    for i in sublattices(o, bound, budget.enumeration)? {
        if i.contains(&o.product(&i)) && !reps.iter().any(|r| eps_equivalent(r, &i).is_yes()) {
            reps.push(i);
        }
    }
    Ok(reps)
}

/// Embed per-component vectors of F into A.
fn embed_parts(alg: &QAlgebra, comps: &[Component], parts: &[(usize, &[BigRational])]) -> Element<Rationals> {
    let fp = alg.field_part();
    let mut f = vec![BigRational::zero(); fp.project.rows()];
    for &(j, v) in parts {
        for (k, x) in comps[j].range.clone().zip(v) {
            f[k] = x.clone();
        }
    }
    fp.embed.mul_vec(&f)
}

fn cartesian(sizes: &[usize]) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for &s in sizes {
        out = out.into_iter().flat_map(|t| (0..s).map(move |i| [t.clone(), vec![i]].concat())).collect();
    }
    out
}

/// The finite unit group of the maximal order of a separable algebra with
/// decisive components.
pub(crate) fn maximal_units(comps: &[Component], lmax: &Order) -> Vec<Element<Rationals>> {
    let alg = lmax.algebra();
    let lmax_f = lmax.zl().map(&alg.field_part().project);
    let units: Vec<Vec<Element<Rationals>>> = comps.iter().map(|c| component_units(c, &restrict(&lmax_f, c.range.clone()))).collect();
    cartesian(&units.iter().map(Vec::len).collect::<Vec<_>>())
        .iter()
        .map(|t| embed_parts(alg, comps, &t.iter().enumerate().map(|(j, &i)| (j, units[j][i].as_slice())).collect::<Vec<_>>()))
        .collect()
}

/// Representatives of the ε-classes of Λ0-ideals (lattices L with Λ0·L ⊆ L)
/// in a separable algebra whose field components are all decisive. Each
/// representative contains 1 and the first one is Λ0.
pub fn ideal_class_reps_separable(lambda0: &Order, budget: &Budget) -> Result<Vec<FullLattice>> {
    let alg = lambda0.algebra();
    if !alg.is_separable() {
        return Err(Error::PreconditionFailed("the algebra must be separable".into()));
    }
    let comps = components(alg);
    require_decisive(&comps)?;
    let fp = alg.field_part();
    let lmax = maximal_order(lambda0)?;
    let lmax_f = lmax.zl().map(&fp.project);
    let mut classes = Vec::with_capacity(comps.len());
    for c in &comps {
        let o = FullLattice::from_zlattice(&c.alg, restrict(&lmax_f, c.range.clone()))?;
        classes.push(component_classes(c, &o, budget)?);
    }
    let unit_elems = maximal_units(&comps, &lmax);
    let conductor = lambda0.colon(&lmax);
    let mut reps: Vec<FullLattice> = Vec::new();
    for t in cartesian(&classes.iter().map(Vec::len).collect::<Vec<_>>()) {
        let mut cols = Vec::new();
        for (j, &i) in t.iter().enumerate() {
            for v in classes[j][i].basis_elems() {
                cols.push(embed_parts(alg, &comps, &[(j, v.as_slice())]));
            }
        }
        let m = FullLattice::new(alg, &cols)?;
        // every class meets exactly one Λmax^×-orbit of lattices with ΛmaxL = M
        let mut seen: BTreeSet<FullLattice> = BTreeSet::new();
        let cands: Vec<FullLattice> = intermediate_lattices(&conductor.product(&m), &m, budget.enumeration)?
            .into_par_iter()
            .filter(|l| l.contains(&lambda0.product(l)) && lmax.product(l) == m)
            .collect();
        for l in cands {
            if seen.contains(&l) {
                continue;
            }
            let orbit: BTreeSet<FullLattice> = unit_elems.iter().map(|u| l.mul_elem(u).expect("unit")).collect();
            let rep = if orbit.contains(lambda0.lattice()) { lambda0.lattice().clone() } else { through_one(orbit.first().unwrap()) };
            seen.extend(orbit);
            reps.push(rep);
        }
    }
    let first = reps.iter().position(|r| r == lambda0.lattice()).expect("Λ0 is its own representative");
    let l0 = reps.remove(first);
    reps.insert(0, l0);
    Ok(reps)
}

/// Matrix of v ↦ adapted coordinates (group `to`) of x·lift(v), v in group `from`.
fn action_matrix(alg: &QAlgebra, x: &[BigRational], from: usize, to: usize) -> Mat<Rationals> {
    let ad = alg.socle_adapted();
    let cols: Vec<Vec<BigRational>> = ad
        .range(from)
        .map(|i| {
            let y = ad.coords(&alg.mul(x, &ad.cols[i]));
            y[ad.range(to)].to_vec()
        })
        .collect();
    Mat::from_cols(Rationals, ad.range(to).len(), &cols)
}

/// Exact-ideal classes with F-part K, for a non-separable A: all L ⊇ Λ with
/// pr_F(L) = K and O(L) = Λ, up to ε.
fn exact_classes_over(lambda: &Order, k: &FullLattice, lmax_f: &Order, budget: &Budget) -> Result<Vec<FullLattice>> {
    let alg = lambda.algebra();
    let fp = alg.field_part();
    let ad = alg.socle_adapted();
    let g = ad.groups();
    let lam0 = lambda.pr_f();
    let r = lmax_f.scalar_into(&lam0);
    let x = lmax_f.colon(&k.product(lmax_f)).scale(&BigRational::from_integer(r));
    // U_[1] = Λ_[1] : X under the F-action on S_1
    let maps: Vec<Mat<Rationals>> = x.basis_elems().iter().map(|v| action_matrix(alg, &fp.embed.mul_vec(v), 0, 0)).collect();
    let mut u = vec![ZLattice::pullback(ad.range(0).len(), &maps, &lambda.socle_quotient(1))];
    // U_[m+1] = U_[m] : Λ^[1] under R^[1] × S_[m+1] → S_[m]
    let rad = lambda.radical_part().columns();
    for m in 1..g {
        let maps: Vec<Mat<Rationals>> = rad.iter().map(|y| action_matrix(alg, y, m, m - 1)).collect();
        u.push(ZLattice::pullback(ad.range(m).len(), &maps, &u[m - 1]));
    }
    let mut e = BigInt::one();
    for (m, um) in u.iter().enumerate() {
        e *= um.exponent_over(&lambda.socle_quotient(m + 1))?;
    }
    // coarse bound: L ⊆ (1/E)Λ, L_[top] ⊆ U_[top], pr_F(L) ⊆ K
    let n = alg.dim();
    let id = Mat::identity(Rationals, n);
    let top_rows: Vec<Vec<BigRational>> = ad.range(g - 1).map(|i| (0..n).map(|j| ad.coords(&id.col(j))[i].clone()).collect()).collect();
    let top = Mat::from_rows(Rationals, top_rows, n);
    let w = lambda.zl().scale(&BigRational::new(BigInt::one(), e)).restrict_by(&[(&top, &u[g - 1]), (&fp.project, k.zl())]);
    let w = FullLattice::from_zlattice(alg, w)?;
    let mut out: Vec<FullLattice> = Vec::new();
    let cands: Vec<FullLattice> = intermediate_lattices(lambda, &w, budget.enumeration)?
        .into_par_iter()
        .filter(|l| l.pr_f() == *k && l.order_of() == *lambda)
        .collect();
    for l in cands {
        if !out.iter().any(|o| eps_equivalent(o, &l).is_yes()) {
            out.push(l);
        }
    }
    Ok(out)
}

/// All ε-classes of exact Λ-ideals (lattices with order exactly Λ), their
/// w-partition and the group G(Λ). Requires every field component of A to be
/// Q or imaginary quadratic.
pub fn enumerate_exact_classes(lambda: &Order, budget: &Budget) -> Result<ClassTable> {
    let alg = lambda.algebra();
    let comps = components(alg);
    require_decisive(&comps)?;
    let reps: Vec<FullLattice> = if alg.is_separable() {
        ideal_class_reps_separable(lambda, budget)?.into_iter().filter(|l| l.order_of() == *lambda).collect()
    } else {
        let lam0 = Order::new(lambda.pr_f())?;
        let lmax_f = maximal_order(&lam0)?;
        let mut reps = Vec::new();
        for k in ideal_class_reps_separable(&lam0, budget)? {
            reps.extend(exact_classes_over(lambda, &k, &lmax_f, budget)?);
        }
        reps
    };
    assert!(reps[0] == **lambda, "Λ represents its own class");
    let mut w_class_of = vec![usize::MAX; reps.len()];
    let mut w_classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..reps.len() {
        if w_class_of[i] != usize::MAX {
            continue;
        }
        let c = w_classes.len();
        let members: Vec<usize> = (i..reps.len()).filter(|&j| w_class_of[j] == usize::MAX && w_equivalent(&reps[i], &reps[j]).is_yes()).collect();
        for &j in &members {
            w_class_of[j] = c;
        }
        w_classes.push(members);
    }
    let group = w_classes[0].clone();
    for c in &w_classes {
        assert_eq!(c.len(), group.len(), "every w-class is a G(Λ)-orbit of size |G(Λ)|");
    }
    let group_table: Vec<Vec<usize>> = group
        .iter()
        .map(|&a| {
            group
                .iter()
                .map(|&b| {
                    let p = reps[a].product(&reps[b]);
                    group.iter().position(|&c| eps_equivalent(&p, &reps[c]).is_yes()).expect("G(Λ) is closed")
                })
                .collect()
        })
        .collect();
    Ok(ClassTable { order: lambda.clone(), reps, w_class_of, w_classes, group, group_table, decisive: true })
}
