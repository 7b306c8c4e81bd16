use super::IntMatrix;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

/// Smith normal form `U·A·V = diag(d)` with `d_1 | d_2 | ...`, all `d_i ≥ 0`.
#[derive(Clone, Debug)]
pub struct SnfResult {
    pub d: Vec<BigInt>,
    pub u: IntMatrix,
    pub v: IntMatrix,
}

pub fn snf(a: &IntMatrix) -> SnfResult {
    let m = a.rows();
    let k = a.cols();
    let mut s = a.clone();
    let mut u = IntMatrix::identity(m);
    let mut v = IntMatrix::identity(k);
    let steps = m.min(k);
    for t in 0..steps {
        let Some((pi, pj)) = min_entry(&s, t, t..m, t..k) else { break };
        s.swap_rows(t, pi);
        u.swap_rows(t, pi);
        s.swap_cols(t, pj);
        v.swap_cols(t, pj);
        loop {
            let mut dirty = false;
            for i in t + 1..m {
                if !s[(i, t)].is_zero() {
                    let q = s[(i, t)].div_floor(&s[(t, t)]);
                    s.row_axpy(i, t, &q);
                    u.row_axpy(i, t, &q);
                    dirty |= !s[(i, t)].is_zero();
                }
            }
            for j in t + 1..k {
                if !s[(t, j)].is_zero() {
                    let q = s[(t, j)].div_floor(&s[(t, t)]);
                    s.col_axpy(j, t, &q);
                    v.col_axpy(j, t, &q);
                    dirty |= !s[(t, j)].is_zero();
                }
            }
            if dirty {
                // bring the smallest remainder of row/column t to the pivot
                let mut best = (t, t);
                for i in t + 1..m {
                    if !s[(i, t)].is_zero() && s[(i, t)].abs() < s[best].abs() {
                        best = (i, t);
                    }
                }
                for j in t + 1..k {
                    if !s[(t, j)].is_zero() && s[(t, j)].abs() < s[best].abs() {
                        best = (t, j);
                    }
                }
                if best.0 != t {
                    s.swap_rows(t, best.0);
                    u.swap_rows(t, best.0);
                } else if best.1 != t {
                    s.swap_cols(t, best.1);
                    v.swap_cols(t, best.1);
                }
                continue;
            }
            let bad = (t + 1..m)
                .flat_map(|i| (t + 1..k).map(move |j| (i, j)))
                .find(|&(i, j)| !s[(i, j)].is_multiple_of(&s[(t, t)]));
            match bad {
                Some((i, _)) => {
                    let minus_one = BigInt::from(-1);
                    s.row_axpy(t, i, &minus_one);
                    u.row_axpy(t, i, &minus_one);
                }
                None => break,
            }
        }
        if s[(t, t)].is_negative() {
            s.negate_row(t);
            u.negate_row(t);
        }
    }
    let d = (0..steps).map(|i| s[(i, i)].clone()).collect();
    SnfResult { d, u, v }
}

fn min_entry(
    s: &IntMatrix,
    _t: usize,
    rows: std::ops::Range<usize>,
    cols: std::ops::Range<usize>,
) -> Option<(usize, usize)> {
    let mut best: Option<(usize, usize)> = None;
    for i in rows {
        for j in cols.clone() {
            if !s[(i, j)].is_zero() && best.map_or(true, |b| s[(i, j)].abs() < s[b].abs()) {
                best = Some((i, j));
            }
        }
    }
    best
}
