use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Column-style Hermite normal form `H = A·U`.
///
/// Zero columns sit on the left; the `rank` pivot columns sit on the right in
/// echelon form (pivot rows strictly increasing left to right, pivots positive,
/// entries right of a pivot reduced into `[0, pivot)`). For a nonsingular square
/// input this is the usual upper-triangular HNF.
#[derive(Clone, Debug)]
pub struct HnfResult {
    pub h: IntMatrix,
    pub u: IntMatrix,
    pub rank: usize,
}

impl HnfResult {
    /// The nonzero (pivot) columns of H.
    pub fn basis(&self) -> IntMatrix {
        let k = self.h.cols();
        self.h.select_cols(k - self.rank..k)
    }

    /// Columns of U spanning the integer kernel of A.
    pub fn kernel(&self) -> IntMatrix {
        let k = self.h.cols();
        self.u.select_cols(0..k - self.rank)
    }
}

pub fn hnf(a: &IntMatrix) -> HnfResult {
    let (h, u, rank) = run(a, true);
    HnfResult { h, u: u.unwrap(), rank }
}

/// Echelon basis of the column span (pivot columns of the HNF only).
pub fn hnf_basis(a: &IntMatrix) -> IntMatrix {
    let (h, _, rank) = run(a, false);
    let k = h.cols();
    h.select_cols(k - rank..k)
}

fn run(a: &IntMatrix, track: bool) -> (IntMatrix, Option<IntMatrix>, usize) {
    let m = a.rows();
    let k = a.cols();
    let mut h = a.clone();
    let mut u = track.then(|| IntMatrix::identity(k));
    let mut active = k;
    let mut pivots: Vec<(usize, usize)> = Vec::new();
    for i in (0..m).rev() {
        if active == 0 {
            break;
        }
        loop {
            let mut best: Option<usize> = None;
            for c in 0..active {
                if !h[(i, c)].is_zero() && best.map_or(true, |b| h[(i, c)].abs() < h[(i, b)].abs()) {
                    best = Some(c);
                }
            }
            let Some(b) = best else { break };
            let mut clean = true;
            for c in 0..active {
                if c == b || h[(i, c)].is_zero() {
                    continue;
                }
                let q = h[(i, c)].div_floor(&h[(i, b)]);
                h.col_axpy(c, b, &q);
                if let Some(u) = u.as_mut() {
                    u.col_axpy(c, b, &q);
                }
                if !h[(i, c)].is_zero() {
                    clean = false;
                }
            }
            if clean {
                let p = active - 1;
                h.swap_cols(b, p);
                if let Some(u) = u.as_mut() {
                    u.swap_cols(b, p);
                }
                if h[(i, p)].is_negative() {
                    h.negate_col(p);
                    if let Some(u) = u.as_mut() {
                        u.negate_col(p);
                    }
                }
                pivots.push((i, p));
                active -= 1;
                break;
            }
        }
    }
    // Pivots were found bottom-up; reducing in that order never disturbs a
    // row that has already been reduced.
    for &(i, c) in &pivots {
        for j in c + 1..k {
            let q = h[(i, j)].div_floor(&h[(i, c)]);
            if !q.is_zero() {
                h.col_axpy(j, c, &q);
                if let Some(u) = u.as_mut() {
                    u.col_axpy(j, c, &q);
                }
            }
        }
    }
    (h, u, pivots.len())
}

/// Solve `B·x = v` over the integers for an echelon basis `B` as returned by
/// [`hnf_basis`]. Returns `None` if `v` is not in the integer span.
pub fn solve_echelon(b: &IntMatrix, v: &[BigInt]) -> Option<Vec<BigInt>> {
    let r = b.cols();
    let m = b.rows();
    let mut w = v.to_vec();
    let mut x = vec![BigInt::zero(); r];
    let mut top = m;
    for c in (0..r).rev() {
        let piv = (0..m).rev().find(|&i| !b[(i, c)].is_zero())?;
        if w[piv + 1..top].iter().any(|t| !t.is_zero()) {
            return None;
        }
        let (q, rem) = w[piv].div_rem(&b[(piv, c)]);
        if !rem.is_zero() {
            return None;
        }
        for i in 0..=piv {
            let s = &b[(i, c)] * &q;
            w[i] -= s;
        }
        x[c] = q;
        top = piv;
    }
    if w.iter().any(|t| !t.is_zero()) {
        return None;
    }
    Some(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::One;

    fn check_canonical(h: &IntMatrix, rank: usize) {
        let k = h.cols();
        let m = h.rows();
        for c in 0..k - rank {
            assert!(h.col(c).iter().all(|x| x.is_zero()));
        }
        let mut last_row = None;
        for c in k - rank..k {
            let piv = (0..m).rev().find(|&i| !h[(i, c)].is_zero()).unwrap();
            assert!(h[(piv, c)].is_positive());
            if let Some(l) = last_row {
                assert!(piv > l);
            }
            last_row = Some(piv);
            for j in c + 1..k {
                assert!(!h[(piv, j)].is_negative() && h[(piv, j)] < h[(piv, c)]);
            }
        }
    }

    #[test]
    fn identity_is_fixed() {
        let r = hnf(&IntMatrix::identity(2));
        assert_eq!(r.h, IntMatrix::identity(2));
        assert_eq!(r.rank, 2);
    }

    #[test]
    fn small_example_preserves_determinant() {
        // columns (4,0) and (2,2)
        let a = IntMatrix::from_i64_rows(&[&[4, 2], &[0, 2]]);
        let r = hnf(&a);
        assert_eq!(r.h, IntMatrix::from_i64_rows(&[&[4, 2], &[0, 2]]));
        assert_eq!(r.h.det().abs(), BigInt::from(8));
        assert_eq!(a.mul(&r.u), r.h);
        assert!(r.u.det().abs().is_one());
    }

    #[test]
    fn rank_deficient_kernel() {
        let a = IntMatrix::from_i64_rows(&[&[1, 2, 3], &[2, 4, 6]]);
        let r = hnf(&a);
        assert_eq!(r.rank, 1);
        check_canonical(&r.h, r.rank);
        let ker = r.kernel();
        assert_eq!(ker.cols(), 2);
        assert!(a.mul(&ker).is_zero());
    }

    #[test]
    fn echelon_solve_roundtrip() {
        let a = IntMatrix::from_i64_rows(&[&[3, 1, 4], &[1, 5, 9], &[2, 6, 5]]);
        let b = hnf_basis(&a);
        let x = vec![BigInt::from(2), BigInt::from(-1), BigInt::from(3)];
        let v = a.mul_vec(&x);
        let y = solve_echelon(&b, &v).unwrap();
        assert_eq!(b.mul_vec(&y), v);
        let bad = vec![BigInt::from(1), BigInt::from(0), BigInt::from(0)];
        // det = -(...) ≠ ±1 so e_1 need not be in the span; check consistency either way
        if let Some(y) = solve_echelon(&b, &bad) {
            assert_eq!(b.mul_vec(&y), bad);
        }
    }

    pub(crate) fn canonical(h: &IntMatrix, rank: usize) {
        check_canonical(h, rank)
    }

    #[test]
    fn canonical_shape_on_wide_input() {
        let a = IntMatrix::from_i64_rows(&[&[6, 4, 10, 0], &[0, 8, 2, 3], &[5, 0, 0, 7]]);
        let r = hnf(&a);
        canonical(&r.h, r.rank);
        assert_eq!(a.mul(&r.u), r.h);
    }
}
