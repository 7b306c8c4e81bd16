use crate::error::{Error, Result};
use crate::exactla::{hnf, hnf_basis, snf, solve_echelon, IntMatrix, Mat, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;

/// A lattice (any rank) in Q^m: (1/den)·(integer column span of `basis`),
/// with `basis` the pivot columns of the canonical column HNF and
/// gcd(den, content) = 1.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ZLattice {
    den: BigInt,
    basis: IntMatrix,
}

impl fmt::Debug for ZLattice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(1/{})·{:?}", self.den, self.basis)
    }
}

impl ZLattice {
    /// Span of the columns of `gens` divided by `den`.
    pub fn from_int(den: &BigInt, gens: &IntMatrix) -> Self {
        assert!(!den.is_zero());
        let mut h = hnf_basis(gens);
        let mut d = den.abs();
        let g = h.content().gcd(&d);
        if h.cols() == 0 {
            d = BigInt::one();
        } else if !g.is_one() {
            h = h.div_exact(&g);
            d = &d / &g;
        }
        ZLattice { den: d, basis: h }
    }

    pub fn from_columns(dim: usize, cols: &[Vec<BigRational>]) -> Self {
        let den = cols.iter().flatten().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let int: Vec<Vec<BigInt>> = cols.iter().map(|c| c.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect();
        Self::from_int(&den, &IntMatrix::from_cols(dim, &int))
    }

    pub fn standard(dim: usize) -> Self {
        ZLattice { den: BigInt::one(), basis: IntMatrix::identity(dim) }
    }

    pub fn den(&self) -> &BigInt {
        &self.den
    }

    /// Numerator basis (canonical HNF pivot columns).
    pub fn basis(&self) -> &IntMatrix {
        &self.basis
    }

    pub fn dim(&self) -> usize {
        self.basis.rows()
    }

    pub fn rank(&self) -> usize {
        self.basis.cols()
    }

    pub fn is_full(&self) -> bool {
        self.rank() == self.dim()
    }

    pub fn columns(&self) -> Vec<Vec<BigRational>> {
        (0..self.rank())
            .map(|j| self.basis.col(j).into_iter().map(|x| BigRational::new(x, self.den.clone())).collect())
            .collect()
    }

    /// Integer coordinates of `v` in the basis, if `v` lies in the lattice.
    pub fn coords(&self, v: &[BigRational]) -> Option<Vec<BigInt>> {
        let den = BigRational::from_integer(self.den.clone());
        let mut w = Vec::with_capacity(v.len());
        for x in v {
            let y = x * &den;
            if !y.is_integer() {
                return None;
            }
            w.push(y.to_integer());
        }
        solve_echelon(&self.basis, &w)
    }

    pub fn contains_vec(&self, v: &[BigRational]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains(&self, other: &ZLattice) -> bool {
        other.columns().iter().all(|c| self.contains_vec(c))
    }

    /// Both numerators over a common denominator.
    fn common(&self, other: &ZLattice) -> (BigInt, IntMatrix, IntMatrix) {
        let d = self.den.lcm(&other.den);
        let a = self.basis.scale(&(&d / &self.den));
        let b = other.basis.scale(&(&d / &other.den));
        (d, a, b)
    }

    pub fn sum(&self, other: &ZLattice) -> ZLattice {
        let (d, a, b) = self.common(other);
        Self::from_int(&d, &a.hcat(&b))
    }

    pub fn intersect(&self, other: &ZLattice) -> ZLattice {
        let (d, a, b) = self.common(other);
        let stacked = a.hcat(&b.scale(&BigInt::from(-1)));
        let ker = hnf(&stacked).kernel();
        let x = ker.select_rows(0..a.cols());
        Self::from_int(&d, &a.mul(&x))
    }

    pub fn scale(&self, q: &BigRational) -> ZLattice {
        assert!(!q.is_zero());
        Self::from_int(&(&self.den * q.denom()), &self.basis.scale(q.numer()))
    }

    /// Image under the rational matrix `m` (rows = new dimension).
    pub fn map(&self, m: &Mat<Rationals>) -> ZLattice {
        let cols: Vec<Vec<BigRational>> = self.columns().iter().map(|c| m.mul_vec(c)).collect();
        if cols.is_empty() {
            return Self::from_int(&BigInt::one(), &IntMatrix::zeros(m.rows(), 0));
        }
        Self::from_columns(m.rows(), &cols)
    }

    /// Covolume |det B| of a full lattice.
    pub fn covolume(&self) -> BigRational {
        assert!(self.is_full());
        let det = (0..self.rank()).fold(BigInt::one(), |p, i| p * &self.basis[(i, i)]);
        BigRational::new(det, num_traits::pow(self.den.clone(), self.dim()))
    }

    /// [self : sub] for a full sublattice `sub ⊆ self`.
    pub fn index_of(&self, sub: &ZLattice) -> Result<BigInt> {
        if !self.contains(sub) {
            return Err(Error::NotContained);
        }
        let q = sub.covolume() / self.covolume();
        debug_assert!(q.is_integer());
        Ok(q.to_integer())
    }

    /// Exponent of the finite group self/sub.
    pub fn exponent_over(&self, sub: &ZLattice) -> Result<BigInt> {
        let cols: Vec<Vec<BigInt>> = sub.columns().iter().map(|c| self.coords(c).ok_or(Error::NotContained)).collect::<Result<_>>()?;
        let s = snf(&IntMatrix::from_cols(self.rank(), &cols));
        Ok(s.d.iter().fold(BigInt::one(), |e, d| e.lcm(d)))
    }

    /// {v ∈ self : m·v ∈ t for every constraint (m, t)}; each t must be full
    /// in the target space of its m.
    pub fn restrict_by(&self, constraints: &[(&Mat<Rationals>, &ZLattice)]) -> ZLattice {
        let b = self.columns();
        let r = b.len();
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for (m, t) in constraints {
            let tinv = Mat::from_cols(Rationals, t.dim(), &t.columns()).inverse().expect("full target lattice");
            let imgs: Vec<Vec<BigRational>> = b.iter().map(|c| tinv.mul_vec(&m.mul_vec(c))).collect();
            for i in 0..t.dim() {
                rows.push(imgs.iter().map(|c| c[i].clone()).collect());
            }
        }
        if rows.is_empty() || r == 0 {
            return self.clone();
        }
        let den = rows.iter().flatten().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let k = rows.len();
        let num = IntMatrix::from_rows(&rows.iter().map(|row| row.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect::<Vec<_>>());
        // z with N·z ≡ 0 mod den: kernel of [N | den·I] restricted to z
        let sys = num.hcat(&IntMatrix::identity(k).scale(&den));
        let z = hnf(&sys).kernel().select_rows(0..r);
        let cols: Vec<Vec<BigRational>> = (0..z.cols())
            .map(|j| {
                let zj = z.col(j);
                let mut v = vec![BigRational::zero(); self.dim()];
                for (c, x) in b.iter().zip(&zj) {
                    let x = BigRational::from_integer(x.clone());
                    for (o, ci) in v.iter_mut().zip(c) {
                        *o += ci * &x;
                    }
                }
                v
            })
            .collect();
        Self::from_columns(self.dim(), &cols)
    }

    /// {v ∈ Q^dim : m·v ∈ t for all m}, for maps that are jointly injective.
    pub fn pullback(dim: usize, maps: &[Mat<Rationals>], t: &ZLattice) -> ZLattice {
        let tinv = Mat::from_cols(Rationals, t.dim(), &t.columns()).inverse().expect("full target lattice");
        let mut rows: Vec<Vec<BigRational>> = Vec::new();
        for m in maps {
            let c = tinv.mul(m);
            for i in 0..c.rows() {
                rows.push(c.row(i));
            }
        }
        let den = rows.iter().flatten().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let num = IntMatrix::from_rows(&rows.iter().map(|row| row.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect::<Vec<_>>());
        let s = snf(&num);
        let gens: Vec<Vec<BigRational>> = (0..dim)
            .map(|i| {
                assert!(i < s.d.len() && !s.d[i].is_zero(), "maps are jointly injective");
                let step = BigRational::new(den.clone(), s.d[i].clone());
                s.v.col(i).into_iter().map(|v| BigRational::from_integer(v) * &step).collect()
            })
            .collect();
        Self::from_columns(dim, &gens)
    }

    /// Dual lattice {c : c·L ⊆ Z} in dual coordinates (inverse transpose).
    pub fn dual(&self) -> ZLattice {
        assert!(self.is_full());
        let b = Mat::from_cols(Rationals, self.dim(), &self.columns());
        let inv_t = b.inverse().expect("full lattice").transpose();
        Self::from_columns(self.dim(), &inv_t.columns())
    }
}
