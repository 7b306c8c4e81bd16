//! Dense linear algebra over an exact [`Field`].

use super::field::Field;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mat<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> Mat<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Mat { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_rows(field: F, rows: Vec<Vec<F::Elem>>, ncols: usize) -> Self {
        let r = rows.len();
        let mut data = Vec::with_capacity(r * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            data.extend(row);
        }
        Mat { field, rows: r, cols: ncols, data }
    }

    pub fn from_cols(field: F, nrows: usize, cols: &[Vec<F::Elem>]) -> Self {
        let mut m = Self::zeros(field, nrows, cols.len());
        for (j, c) in cols.iter().enumerate() {
            assert_eq!(c.len(), nrows, "column length mismatch");
            for (i, x) in c.iter().enumerate() {
                m.set(i, j, x.clone());
            }
        }
        m
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn rows(&self) -> usize {
        self.rows
    }
    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &F::Elem {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: F::Elem) {
        self.data[i * self.cols + j] = v;
    }

    pub fn col(&self, j: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<F::Elem> {
        self.data[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn columns(&self) -> Vec<Vec<F::Elem>> {
        (0..self.cols).map(|j| self.col(j)).collect()
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn mul(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.rows, "dimension mismatch in product");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if f.is_zero(a) {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !f.is_zero(b) {
                        let v = f.add(out.get(i, j), &f.mul(a, b));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut s = f.zero();
                for (j, x) in v.iter().enumerate() {
                    if !f.is_zero(x) {
                        s = f.add(&s, &f.mul(self.get(i, j), x));
                    }
                }
                s
            })
            .collect()
    }

    pub fn add(&self, other: &Mat<F>) -> Mat<F> {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect(),
        }
    }

    pub fn sub(&self, other: &Mat<F>) -> Mat<F> {
        assert!(self.rows == other.rows && self.cols == other.cols);
        let f = self.field;
        Mat {
            field: f,
            rows: self.rows,
            cols: self.cols,
            data: self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect(),
        }
    }

    pub fn scale(&self, c: &F::Elem) -> Mat<F> {
        let f = self.field;
        Mat { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, c)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    /// Stack vertically.
    pub fn vcat(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend(other.data.iter().cloned());
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    pub fn hcat(&self, other: &Mat<F>) -> Mat<F> {
        assert_eq!(self.rows, other.rows);
        let mut cols = self.columns();
        cols.extend(other.columns());
        Self::from_cols(self.field, self.rows, &cols)
    }

    /// Reduced row echelon form and pivot columns. Pivot search takes the
    /// topmost available row.
    pub fn rref(&self) -> (Mat<F>, Vec<usize>) {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !f.is_zero(m.get(i, c))) else { continue };
            if p != r {
                for j in 0..m.cols {
                    m.data.swap(p * m.cols + j, r * m.cols + j);
                }
            }
            let inv = f.inv(m.get(r, c)).unwrap();
            for j in c..m.cols {
                let v = f.mul(m.get(r, j), &inv);
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(r, j)));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of {x : M x = 0}, one vector per free column.
    pub fn nullspace(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field;
        let (r, piv) = self.rref();
        let mut out = Vec::new();
        for free in (0..self.cols).filter(|c| !piv.contains(c)) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (row, &pc) in piv.iter().enumerate() {
                v[pc] = f.neg(r.get(row, free));
            }
            out.push(v);
        }
        out
    }

    /// Some solution of `M x = b` (free variables zero), or `None`.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows);
        let f = self.field;
        let aug = self.hcat(&Mat::from_cols(f, self.rows, &[b.to_vec()]));
        let (r, piv) = aug.rref();
        if piv.last() == Some(&self.cols) {
            return None;
        }
        let mut x = vec![f.zero(); self.cols];
        for (row, &pc) in piv.iter().enumerate() {
            x[pc] = r.get(row, self.cols).clone();
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat<F>> {
        assert_eq!(self.rows, self.cols);
        let n = self.rows;
        let aug = self.hcat(&Mat::identity(self.field, n));
        let (r, piv) = aug.rref();
        if piv.len() < n || piv[n - 1] != n - 1 {
            return None;
        }
        let cols: Vec<Vec<F::Elem>> = (n..2 * n).map(|j| r.col(j)).collect();
        Some(Mat::from_cols(self.field, n, &cols))
    }

    pub fn det(&self) -> F::Elem {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        let mut m = self.clone();
        let mut det = f.one();
        for c in 0..n {
            let Some(p) = (c..n).find(|&i| !f.is_zero(m.get(i, c))) else { return f.zero() };
            if p != c {
                for j in 0..n {
                    m.data.swap(p * n + j, c * n + j);
                }
                det = f.neg(&det);
            }
            let piv = m.get(c, c).clone();
            det = f.mul(&det, &piv);
            let inv = f.inv(&piv).unwrap();
            for i in c + 1..n {
                if f.is_zero(m.get(i, c)) {
                    continue;
                }
                let factor = f.mul(m.get(i, c), &inv);
                for j in c..n {
                    let v = f.sub(m.get(i, j), &f.mul(&factor, m.get(c, j)));
                    m.set(i, j, v);
                }
            }
        }
        det
    }

    /// Characteristic polynomial det(tI − M), coefficients low to high, via
    /// Hessenberg reduction (valid over any field).
    pub fn charpoly(&self) -> Vec<F::Elem> {
        assert_eq!(self.rows, self.cols);
        let f = self.field;
        let n = self.rows;
        let mut h = self.clone();
        for m in 1..n.saturating_sub(1) {
            let Some(i) = (m..n).find(|&i| !f.is_zero(h.get(i, m - 1))) else { continue };
            if i != m {
                for j in 0..n {
                    h.data.swap(i * n + j, m * n + j);
                }
                for r in 0..n {
                    h.data.swap(r * n + i, r * n + m);
                }
            }
            let t = h.get(m, m - 1).clone();
            let tinv = f.inv(&t).unwrap();
            for i in m + 1..n {
                if f.is_zero(h.get(i, m - 1)) {
                    continue;
                }
                let u = f.mul(h.get(i, m - 1), &tinv);
                for j in 0..n {
                    let v = f.sub(h.get(i, j), &f.mul(&u, h.get(m, j)));
                    h.set(i, j, v);
                }
                for r in 0..n {
                    let v = f.add(h.get(r, m), &f.mul(&u, h.get(r, i)));
                    h.set(r, m, v);
                }
            }
        }
        // p[m] = charpoly of the leading m×m block
        let mut p: Vec<Vec<F::Elem>> = vec![vec![f.one()]];
        for m in 1..=n {
            let prev = &p[m - 1];
            let mut pm = vec![f.zero(); m + 1];
            let hmm = h.get(m - 1, m - 1);
            for (k, c) in prev.iter().enumerate() {
                pm[k + 1] = f.add(&pm[k + 1], c);
                pm[k] = f.sub(&pm[k], &f.mul(hmm, c));
            }
            let mut t = f.one();
            for i in 1..m {
                t = f.mul(&t, h.get(m - i, m - i - 1));
                let coef = f.mul(&t, h.get(m - i - 1, m - 1));
                for (k, c) in p[m - i - 1].iter().enumerate() {
                    pm[k] = f.sub(&pm[k], &f.mul(&coef, c));
                }
            }
            p.push(pm);
        }
        p.pop().unwrap()
    }
}

/// Row-reduced basis of the span of `vectors` (as rows).
pub fn span_basis<F: Field>(field: F, dim: usize, vectors: &[Vec<F::Elem>]) -> Vec<Vec<F::Elem>> {
    if vectors.is_empty() {
        return Vec::new();
    }
    let m = Mat::from_rows(field, vectors.to_vec(), dim);
    let (r, piv) = m.rref();
    (0..piv.len()).map(|i| r.row(i)).collect()
}

/// Whether `v` lies in the span of `basis`.
pub fn in_span<F: Field>(field: F, dim: usize, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> bool {
    if v.iter().all(|x| field.is_zero(x)) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    Mat::from_cols(field, dim, basis).solve(v).is_some()
}

/// Coordinates of `v` in the (independent) column set `basis`.
pub fn coords_in<F: Field>(field: F, dim: usize, basis: &[Vec<F::Elem>], v: &[F::Elem]) -> Option<Vec<F::Elem>> {
    if basis.is_empty() {
        return v.iter().all(|x| field.is_zero(x)).then(Vec::new);
    }
    Mat::from_cols(field, dim, basis).solve(v)
}

/// Extend the independent set `sub` to a basis of the span of `sub ∪ sup`,
/// returning only the added vectors (taken greedily from `sup` in order).
pub fn extend_basis<F: Field>(
    field: F,
    dim: usize,
    sub: &[Vec<F::Elem>],
    sup: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    let mut cur: Vec<Vec<F::Elem>> = sub.to_vec();
    let mut added = Vec::new();
    for v in sup {
        if !in_span(field, dim, &cur, v) {
            cur.push(v.clone());
            added.push(v.clone());
        }
    }
    added
}

/// Intersection of two subspaces given by spanning sets.
pub fn intersect_spans<F: Field>(
    field: F,
    dim: usize,
    a: &[Vec<F::Elem>],
    b: &[Vec<F::Elem>],
) -> Vec<Vec<F::Elem>> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut cols = a.to_vec();
    cols.extend(b.iter().map(|v| v.iter().map(|x| field.neg(x)).collect()));
    let m = Mat::from_cols(field, dim, &cols);
    let ker = m.nullspace();
    let vecs: Vec<Vec<F::Elem>> = ker
        .iter()
        .map(|k| {
            let mut s = vec![field.zero(); dim];
            for (coef, v) in k.iter().zip(a) {
                for i in 0..dim {
                    s[i] = field.add(&s[i], &field.mul(coef, &v[i]));
                }
            }
            s
        })
        .collect();
    span_basis(field, dim, &vecs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactla::field::{PrimeField, Rationals};
    use num_rational::BigRational;

    fn q(n: i64) -> BigRational {
        BigRational::from_integer(n.into())
    }

    fn qmat(rows: &[&[i64]]) -> Mat<Rationals> {
        let n = rows[0].len();
        Mat::from_rows(Rationals, rows.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect(), n)
    }

    #[test]
    fn charpoly_of_companion() {
        // companion of t^3 - 2t + 5 : columns t·t^j
        let m = qmat(&[&[0, 0, -5], &[1, 0, 2], &[0, 1, 0]]);
        assert_eq!(m.charpoly(), vec![q(5), q(-2), q(0), q(1)]);
    }

    #[test]
    fn charpoly_matches_det_definition_mod_p() {
        let f = PrimeField::new(11).unwrap();
        let m = Mat::from_rows(f, vec![vec![1, 2, 3], vec![4, 5, 6], vec![7, 8, 10]], 3);
        let cp = m.charpoly();
        // evaluate det(xI - M) at several x directly
        for x in 0..11u64 {
            let mut xi = Mat::identity(f, 3).scale(&x);
            xi = xi.sub(&m);
            let val = cp.iter().rev().fold(0, |acc, c| f.add(&f.mul(&acc, &x), c));
            assert_eq!(xi.det(), val);
        }
    }

    #[test]
    fn inverse_and_solve() {
        let m = qmat(&[&[2, 1], &[1, 1]]);
        let inv = m.inverse().unwrap();
        assert_eq!(m.mul(&inv), Mat::identity(Rationals, 2));
        let x = m.solve(&[q(3), q(2)]).unwrap();
        assert_eq!(x, vec![q(1), q(1)]);
        assert!(qmat(&[&[1, 1], &[1, 1]]).solve(&[q(1), q(2)]).is_none());
    }

    #[test]
    fn nullspace_mod_2() {
        let f = PrimeField::new(2).unwrap();
        let m = Mat::from_rows(f, vec![vec![1, 1], vec![1, 1]], 2);
        assert_eq!(m.nullspace(), vec![vec![1, 1]]);
    }
}
