//! Filtration quotients L_[m], radical quotients and the projection pr_F.

use super::{FullLattice, ZLattice};
use crate::algebra::Adapted;
use crate::exactla::{hnf, IntMatrix};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::One;
use std::ops::Range;

/// Image in group `keep` of the part of L whose adapted coordinates vanish on
/// the groups in `zero`.
fn slice(l: &FullLattice, ad: &Adapted, zero: Range<usize>, keep: usize) -> ZLattice {
    let cols: Vec<Vec<BigRational>> = l.basis_elems().iter().map(|v| ad.coords(v)).collect();
    let n = cols.len();
    let den = cols.iter().flatten().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
    let y: Vec<Vec<BigInt>> = cols.iter().map(|c| c.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect();
    let y = IntMatrix::from_cols(n, &y);
    let zero_rows: Vec<usize> = zero.flat_map(|g| ad.range(g)).collect();
    let ker = if zero_rows.is_empty() {
        IntMatrix::identity(n)
    } else {
        hnf(&y.select_rows(zero_rows.iter().copied())).kernel()
    };
    let img = y.select_rows(ad.range(keep)).mul(&ker);
    ZLattice::from_int(&den, &img)
}

impl FullLattice {
    /// L_[m] = (L ∩ S_m + S_{m−1})/S_{m−1} in the adapted coordinates of
    /// S_[m], for m = 1..=n_max+1.
    pub fn socle_quotient(&self, m: usize) -> ZLattice {
        let ad = self.algebra().socle_adapted();
        assert!(m >= 1 && m <= ad.groups());
        slice(self, ad, m..ad.groups(), m - 1)
    }

    /// (L ∩ R^l + R^{l+1})/R^{l+1} in the adapted coordinates of R^[l].
    pub fn radical_quotient(&self, l: usize) -> ZLattice {
        let ad = self.algebra().radical_adapted();
        slice(self, ad, 0..l, l)
    }

    /// pr_F(L) as a full lattice in the algebra F.
    pub fn pr_f(&self) -> FullLattice {
        let fp = self.algebra().field_part();
        let z = self.zl().map(&fp.project);
        FullLattice::from_zlattice(&fp.algebra, z).expect("pr_F of a full lattice is full")
    }

    /// L ∩ R as a lattice (of rank dim R) in A-coordinates.
    pub fn radical_part(&self) -> ZLattice {
        // kernel of the projection to F
        let fp = self.algebra().field_part();
        let cols: Vec<Vec<BigRational>> = self.basis_elems();
        let proj: Vec<Vec<BigRational>> = cols.iter().map(|c| fp.project.mul_vec(c)).collect();
        let den = proj.iter().flatten().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
        let pint: Vec<Vec<BigInt>> = proj.iter().map(|c| c.iter().map(|x| x.numer() * (&den / x.denom())).collect()).collect();
        if fp.project.rows() == 0 {
            return self.zl().clone();
        }
        let ker = hnf(&IntMatrix::from_cols(fp.project.rows(), &pint)).kernel();
        ZLattice::from_int(self.den(), &self.basis().mul(&ker))
    }
}
