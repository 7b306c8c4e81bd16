//! Full lattices in a Q-algebra and their arithmetic.

mod enumerate;
mod filtration;
mod zlattice;

pub use enumerate::{hnf_patterns, intermediate_lattices, sublattices, superlattices};
pub use zlattice::ZLattice;

use crate::algebra::{Element, QAlgebra};
use crate::error::{Error, Result};
use crate::exactla::{snf, IntMatrix, Mat, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::Arc;

/// A full lattice L = (1/den)·H·Z^n in an algebra, H in canonical HNF.
#[derive(Clone)]
pub struct FullLattice {
    alg: Arc<QAlgebra>,
    z: ZLattice,
}

impl PartialEq for FullLattice {
    fn eq(&self, o: &Self) -> bool {
        self.z == o.z
    }
}

impl Eq for FullLattice {}

impl Hash for FullLattice {
    fn hash<H: Hasher>(&self, h: &mut H) {
        self.z.hash(h)
    }
}

impl PartialOrd for FullLattice {
    fn partial_cmp(&self, o: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(o))
    }
}

impl Ord for FullLattice {
    /// Canonical order: denominator, then HNF entries row-major.
    fn cmp(&self, o: &Self) -> std::cmp::Ordering {
        let key = |l: &FullLattice| (l.z.den().clone(), l.z.basis().to_rows());
        key(self).cmp(&key(o))
    }
}

impl fmt::Debug for FullLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.z)
    }
}

impl FullLattice {
    pub fn from_zlattice(alg: &Arc<QAlgebra>, z: ZLattice) -> Result<Self> {
        if z.dim() != alg.dim() {
            return Err(Error::DimensionMismatch(format!("lattice in Q^{} for algebra of dimension {}", z.dim(), alg.dim())));
        }
        if !z.is_full() {
            return Err(Error::NotFull);
        }
        Ok(FullLattice { alg: alg.clone(), z })
    }

    /// Z-span of rational generators.
    pub fn new(alg: &Arc<QAlgebra>, gens: &[Element<Rationals>]) -> Result<Self> {
        if gens.is_empty() {
            return Err(Error::NotFull);
        }
        for g in gens {
            alg.check_len(g)?;
        }
        Self::from_zlattice(alg, ZLattice::from_columns(alg.dim(), gens))
    }

    /// (1/den)·span of the integer columns of `gens`.
    pub fn from_int(alg: &Arc<QAlgebra>, den: &BigInt, gens: &IntMatrix) -> Result<Self> {
        Self::from_zlattice(alg, ZLattice::from_int(den, gens))
    }

    /// The coordinate lattice Z^n.
    pub fn standard(alg: &Arc<QAlgebra>) -> Self {
        FullLattice { alg: alg.clone(), z: ZLattice::standard(alg.dim()) }
    }

    pub fn algebra(&self) -> &Arc<QAlgebra> {
        &self.alg
    }

    pub fn zl(&self) -> &ZLattice {
        &self.z
    }

    pub fn den(&self) -> &BigInt {
        self.z.den()
    }

    pub fn basis(&self) -> &IntMatrix {
        self.z.basis()
    }

    pub fn dim(&self) -> usize {
        self.alg.dim()
    }

    pub fn basis_elems(&self) -> Vec<Element<Rationals>> {
        self.z.columns()
    }

    fn same(&self, o: &FullLattice) {
        debug_assert!(Arc::ptr_eq(&self.alg, &o.alg) || *self.alg == *o.alg, "lattices in different algebras");
    }

    pub fn contains_elem(&self, a: &[BigRational]) -> bool {
        self.z.contains_vec(a)
    }

    pub fn coords(&self, a: &[BigRational]) -> Option<Vec<BigInt>> {
        self.z.coords(a)
    }

    pub fn contains(&self, o: &FullLattice) -> bool {
        self.same(o);
        self.z.contains(&o.z)
    }

    pub fn contains_one(&self) -> bool {
        self.contains_elem(&self.alg.one())
    }

    pub fn sum(&self, o: &FullLattice) -> FullLattice {
        self.same(o);
        FullLattice { alg: self.alg.clone(), z: self.z.sum(&o.z) }
    }

    pub fn intersect(&self, o: &FullLattice) -> FullLattice {
        self.same(o);
        FullLattice { alg: self.alg.clone(), z: self.z.intersect(&o.z) }
    }

    pub fn scale(&self, q: &BigRational) -> FullLattice {
        FullLattice { alg: self.alg.clone(), z: self.z.scale(q) }
    }

    pub fn scale_int(&self, k: i64) -> FullLattice {
        self.scale(&BigRational::from_integer(k.into()))
    }

    /// L1·L2: span of the pairwise basis products.
    pub fn product(&self, o: &FullLattice) -> FullLattice {
        self.same(o);
        let n = self.dim();
        let (a, b) = (self.basis(), o.basis());
        let mut cols = Vec::with_capacity(n * n);
        for i in 0..n {
            let x = a.col(i);
            for j in 0..n {
                cols.push(self.alg.mul_int(&x, &b.col(j)));
            }
        }
        let den = self.den() * o.den() * self.alg.c_den();
        FullLattice { alg: self.alg.clone(), z: ZLattice::from_int(&den, &IntMatrix::from_cols(n, &cols)) }
    }

    /// a·L for an algebra element a (full only when a is a unit).
    pub fn mul_elem(&self, a: &[BigRational]) -> Result<FullLattice> {
        let gens: Vec<Element<Rationals>> = self.basis_elems().iter().map(|b| self.alg.mul(a, b)).collect();
        Self::new(&self.alg, &gens)
    }

    pub fn power(&self, k: u32) -> FullLattice {
        assert!(k >= 1);
        let mut acc = self.clone();
        for _ in 1..k {
            acc = acc.product(self);
        }
        acc
    }

    /// self : o = {a : a·o ⊆ self}.
    ///
    /// Writing a·b_j = N_j·x/(d2·D) for the generators b_j of `o`, the
    /// condition is that H1^{-1}·d1·N_j·x/(d2·D) is integral for all j; the
    /// stacked system is solved with a Smith form.
    pub fn colon(&self, o: &FullLattice) -> FullLattice {
        self.same(o);
        let n = self.dim();
        let h1 = Mat::from_cols(Rationals, n, &self.basis().columns().iter().map(|c| to_rat(c)).collect::<Vec<_>>());
        let h1inv = h1.inverse().expect("full lattice");
        let scale = BigRational::new(self.den().clone(), o.den() * self.alg.c_den());
        let mut rows: Vec<Vec<BigRational>> = Vec::with_capacity(n * n);
        for j in 0..n {
            let nj = self.alg.mul_matrix_int(&o.basis().col(j));
            let nj = Mat::from_rows(Rationals, nj.to_rows().iter().map(|r| to_rat(r)).collect(), n);
            let t = h1inv.mul(&nj).scale(&scale);
            for i in 0..n {
                rows.push(t.row(i));
            }
        }
        let den = rows.iter().flatten().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let num: Vec<Vec<BigInt>> = rows.iter().map(|r| r.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect();
        let s = snf(&IntMatrix::from_rows(&num));
        // x = V·y with s_i·y_i ∈ den·Z
        let mut gens = Vec::with_capacity(n);
        for i in 0..n {
            let si = &s.d[i];
            assert!(!si.is_zero(), "colon system has full column rank");
            let step = BigRational::new(den.clone(), si.clone());
            gens.push(s.v.col(i).into_iter().map(|v| BigRational::from_integer(v) * &step).collect::<Vec<_>>());
        }
        FullLattice { alg: self.alg.clone(), z: ZLattice::from_columns(n, &gens) }
    }

    /// Independent route to `self : o` through duals: (L3:L1)^* is spanned by
    /// the functionals c∘μ_a for a ∈ L1, c ∈ L3^*.
    pub fn colon_via_dual(&self, o: &FullLattice) -> FullLattice {
        FullLattice { alg: self.alg.clone(), z: self.colon_dual_side(o).dual() }
    }

    /// The lattice spanned by μ_a^T·c (a ∈ basis of `o`, c ∈ basis of self^*).
    pub fn colon_dual_side(&self, o: &FullLattice) -> ZLattice {
        let n = self.dim();
        let dual = self.z.dual();
        let mut gens = Vec::with_capacity(n * n);
        for a in o.basis_elems() {
            let mt = self.alg.multiplication_matrix(&a).transpose();
            for c in dual.columns() {
                gens.push(mt.mul_vec(&c));
            }
        }
        ZLattice::from_columns(n, &gens)
    }

    /// O(L) = L : L.
    pub fn order_of(&self) -> Order {
        let o = self.colon(self);
        assert!(o.contains_one(), "1_A lies in O(L)");
        Order(o)
    }

    /// Covolume relative to the coordinate lattice.
    pub fn covolume(&self) -> BigRational {
        self.z.covolume()
    }

    /// [self : sub] for sub ⊆ self.
    pub fn index_of(&self, sub: &FullLattice) -> Result<BigInt> {
        self.same(sub);
        self.z.index_of(&sub.z)
    }

    /// Generalized index [K : L] = [K+L : L]/[K+L : K].
    pub fn gen_index(&self, l: &FullLattice) -> BigRational {
        l.covolume() / self.covolume()
    }

    /// Dual lattice in the coordinate-dual space.
    pub fn dual(&self) -> ZLattice {
        self.z.dual()
    }

    /// (L3 : L1)^* = β^*(L1, L3^*) for β the multiplication.
    pub fn dual_identity_check(l1: &FullLattice, l3: &FullLattice) -> bool {
        l3.colon(l1).dual() == l3.colon_dual_side(l1)
    }

    /// Determinant of the trace form on a basis.
    pub fn disc(&self) -> BigRational {
        let b = self.basis_elems();
        let n = self.dim();
        let rows: Vec<Vec<BigRational>> =
            (0..n).map(|i| (0..n).map(|j| self.alg.trace_of(&self.alg.mul(&b[i], &b[j]))).collect()).collect();
        Mat::from_rows(Rationals, rows, n).det()
    }

    /// Whether the lattice is an order (contains 1 and closed under products).
    pub fn is_order(&self) -> bool {
        self.contains_one() && self.contains(&self.product(self))
    }

    /// Some x ∈ L with map(x) = target, if one exists.
    pub fn preimage(&self, map: &Mat<Rationals>, target: &[BigRational]) -> Option<Element<Rationals>> {
        let basis = self.basis_elems();
        let imgs: Vec<Vec<BigRational>> = basis.iter().map(|b| map.mul_vec(b)).collect();
        let den = imgs.iter().flatten().chain(target).fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let int = |v: &[BigRational]| -> Vec<BigInt> { v.iter().map(|x| x.numer() * (&den / x.denom())).collect() };
        let p = IntMatrix::from_cols(map.rows(), &imgs.iter().map(|c| int(c)).collect::<Vec<_>>());
        let h = crate::exactla::hnf(&p);
        let y = crate::exactla::solve_echelon(&h.basis(), &int(target))?;
        let k = p.cols();
        Some(self.elem_from_coords(&h.u.select_cols(k - h.rank..k).mul_vec(&y)))
    }

    /// Element Σ c_i b_i for integer coordinates in the lattice basis.
    pub fn elem_from_coords(&self, c: &[BigInt]) -> Element<Rationals> {
        let mut out = vec![BigRational::zero(); self.dim()];
        for (b, x) in self.basis_elems().iter().zip(c) {
            let x = BigRational::from_integer(x.clone());
            for (o, bi) in out.iter_mut().zip(b) {
                *o += bi * &x;
            }
        }
        out
    }

    /// Smallest positive integer k with k·self ⊆ o.
    pub fn scalar_into(&self, o: &FullLattice) -> BigInt {
        let s = o.sum(self);
        let idx = s.index_of(o).expect("sum contains both");
        // the exponent of s/o divides its order; take the minimal divisor that works
        let mut best = idx.clone();
        for d in divisors(&idx) {
            if o.contains(&self.scale(&BigRational::from_integer(d.clone()))) {
                best = d;
                break;
            }
        }
        best
    }
}

fn to_rat(v: &[BigInt]) -> Vec<BigRational> {
    v.iter().map(|x| BigRational::from_integer(x.clone())).collect()
}

/// Positive divisors in increasing order.
pub fn divisors(n: &BigInt) -> Vec<BigInt> {
    let n = n.abs();
    let fac = crate::arith::factor(&n).expect("desk-scale index");
    let mut ds = vec![BigInt::one()];
    for (p, e) in fac {
        let mut next = Vec::new();
        for d in &ds {
            let mut q = d.clone();
            for _ in 0..=e {
                next.push(q.clone());
                q *= &p;
            }
        }
        ds = next;
    }
    ds.sort();
    ds
}

/// A full lattice that is a subring containing 1.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Order(FullLattice);

impl Order {
    pub fn new(l: FullLattice) -> Result<Self> {
        if !l.contains_one() {
            return Err(Error::NotAnOrder("does not contain 1".into()));
        }
        if !l.contains(&l.product(&l)) {
            return Err(Error::NotAnOrder("not closed under multiplication".into()));
        }
        Ok(Order(l))
    }

    /// Z-span of generators, closed up to the order they generate.
    pub fn generated_by(alg: &Arc<QAlgebra>, gens: &[Element<Rationals>]) -> Result<Self> {
        let mut all = vec![alg.one()];
        all.extend(gens.iter().cloned());
        let mut l = FullLattice::new(alg, &all)?;
        loop {
            let next = l.sum(&l.product(&l));
            if next == l {
                return Ok(Order(l));
            }
            l = next;
        }
    }

    /// Z[e_1, ..., e_n] on the coordinate basis, which must be integral.
    pub fn standard(alg: &Arc<QAlgebra>) -> Result<Self> {
        Self::new(FullLattice::standard(alg))
    }

    pub fn lattice(&self) -> &FullLattice {
        &self.0
    }

    pub fn into_lattice(self) -> FullLattice {
        self.0
    }

    /// Principal lattice a·Λ.
    pub fn principal(&self, a: &[BigRational]) -> Result<FullLattice> {
        self.0.mul_elem(a)
    }

    /// Integer structure constants on the HNF basis.
    pub fn basis_algebra(&self) -> crate::algebra::Algebra<Rationals> {
        self.0.alg.rebase(&self.0.basis_elems()).expect("basis of a full lattice")
    }
}

impl std::ops::Deref for Order {
    type Target = FullLattice;
    fn deref(&self) -> &FullLattice {
        &self.0
    }
}
