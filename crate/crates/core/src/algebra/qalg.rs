use super::{Algebra, Decomposition, Element, Filtrations};
use crate::exactla::{clear_denominators, Field, Mat, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use std::sync::{Arc, OnceLock};

/// A basis of A adapted to a filtration: consecutive groups of columns
/// represent the successive quotients.
#[derive(Clone, Debug)]
pub struct Adapted {
    pub cols: Vec<Element<Rationals>>,
    /// Group g occupies columns `offsets[g]..offsets[g + 1]`.
    pub offsets: Vec<usize>,
    inv: Mat<Rationals>,
}

impl Adapted {
    fn new(groups: &[Vec<Element<Rationals>>], n: usize) -> Self {
        let mut cols = Vec::with_capacity(n);
        let mut offsets = vec![0];
        for g in groups {
            cols.extend(g.iter().cloned());
            offsets.push(cols.len());
        }
        let inv = Mat::from_cols(Rationals, n, &cols).inverse().expect("adapted basis spans A");
        Adapted { cols, offsets, inv }
    }

    /// Coordinates of `v` in the adapted basis.
    pub fn coords(&self, v: &[BigRational]) -> Element<Rationals> {
        self.inv.mul_vec(v)
    }

    pub fn groups(&self) -> usize {
        self.offsets.len() - 1
    }

    pub fn range(&self, g: usize) -> std::ops::Range<usize> {
        self.offsets[g]..self.offsets[g + 1]
    }
}

/// The separable part F = ⊕ F^(j) as an algebra of its own.
#[derive(Debug)]
pub struct FieldPart {
    pub algebra: Arc<QAlgebra>,
    /// f × n matrix: A-coordinates ↦ F-coordinates of pr_F(a).
    pub project: Mat<Rationals>,
    /// n × f matrix: F-coordinates ↦ A-coordinates.
    pub embed: Mat<Rationals>,
    /// F-coordinate ranges of the components F^(j).
    pub components: Vec<std::ops::Range<usize>>,
}

/// An algebra over Q with cached structure data.
#[derive(Debug)]
pub struct QAlgebra {
    alg: Algebra<Rationals>,
    /// e_i·e_j = Σ_k c_int[i][j][k]/c_den · e_k.
    c_den: BigInt,
    c_int: Vec<Vec<Vec<BigInt>>>,
    traces: Vec<BigRational>,
    decomposition: OnceLock<Decomposition<Rationals>>,
    filtrations: OnceLock<Filtrations<Rationals>>,
    socle_adapted: OnceLock<Adapted>,
    radical_adapted: OnceLock<Adapted>,
    field_part: OnceLock<FieldPart>,
}

impl QAlgebra {
    pub fn new(alg: Algebra<Rationals>) -> Arc<Self> {
        let n = alg.dim();
        let mut c_den = BigInt::one();
        for i in 0..n {
            for j in 0..n {
                for x in alg.structure(i, j) {
                    c_den = c_den.lcm(x.denom());
                }
            }
        }
        let c_int = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| alg.structure(i, j).iter().map(|x| x.numer() * (&c_den / x.denom())).collect())
                    .collect()
            })
            .collect();
        let traces = (0..n).map(|k| alg.trace(&alg.basis_vec(k))).collect();
        Arc::new(QAlgebra {
            alg,
            c_den,
            c_int,
            traces,
            decomposition: OnceLock::new(),
            filtrations: OnceLock::new(),
            socle_adapted: OnceLock::new(),
            radical_adapted: OnceLock::new(),
            field_part: OnceLock::new(),
        })
    }

    pub fn algebra(&self) -> &Algebra<Rationals> {
        &self.alg
    }

    pub fn one(&self) -> Element<Rationals> {
        self.alg.unit().clone()
    }

    pub fn decomposition(&self) -> &Decomposition<Rationals> {
        self.decomposition.get_or_init(|| self.alg.decompose())
    }

    pub fn filtrations(&self) -> &Filtrations<Rationals> {
        self.filtrations.get_or_init(|| self.alg.filtrations())
    }

    pub fn is_separable(&self) -> bool {
        self.decomposition().radical.is_empty()
    }

    /// Basis adapted to the socle filtration; group g is S_[g+1].
    pub fn socle_adapted(&self) -> &Adapted {
        self.socle_adapted.get_or_init(|| {
            let fl = self.filtrations();
            Adapted::new(&fl.socle_quotients[1..], self.dim())
        })
    }

    /// Basis adapted to the radical filtration; group g is R^[g].
    pub fn radical_adapted(&self) -> &Adapted {
        self.radical_adapted.get_or_init(|| {
            let fl = self.filtrations();
            Adapted::new(&fl.radical_quotients, self.dim())
        })
    }

    pub fn field_part(&self) -> &FieldPart {
        self.field_part.get_or_init(|| {
            let d = self.decomposition();
            let n = self.dim();
            let fdim = d.field_part.len();
            let mut cols = d.field_part.clone();
            cols.extend(d.radical.iter().cloned());
            let inv = Mat::from_cols(Rationals, n, &cols).inverse().expect("F ⊕ R spans A");
            let project = Mat::from_rows(Rationals, (0..fdim).map(|i| inv.row(i)).collect(), n);
            let embed = Mat::from_cols(Rationals, n, &d.field_part);
            let z = BigRational::zero();
            let mut c = vec![vec![vec![z.clone(); fdim]; fdim]; fdim];
            for i in 0..fdim {
                for j in 0..fdim {
                    c[i][j] = project.mul_vec(&self.alg.mul(&d.field_part[i], &d.field_part[j]));
                }
            }
            let unit = project.mul_vec(self.alg.unit());
            let algebra = QAlgebra::new(Algebra::new(Rationals, c, unit).expect("F is a commutative algebra"));
            let mut components = Vec::new();
            let mut off = 0;
            for b in &d.blocks {
                components.push(off..off + b.field_basis.len());
                off += b.field_basis.len();
            }
            FieldPart { algebra, project, embed, components }
        })
    }

    /// Product of integer vectors x, y: returns the numerator over `c_den()`.
    pub fn mul_int(&self, x: &[BigInt], y: &[BigInt]) -> Vec<BigInt> {
        let n = self.dim();
        let mut out = vec![BigInt::zero(); n];
        for (i, a) in x.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let ab = a * b;
                for (k, c) in self.c_int[i][j].iter().enumerate() {
                    if !c.is_zero() {
                        out[k] += &ab * c;
                    }
                }
            }
        }
        out
    }

    pub fn c_den(&self) -> &BigInt {
        &self.c_den
    }

    /// Integer matrix N with x·y = N·x / c_den for integer y.
    pub fn mul_matrix_int(&self, y: &[BigInt]) -> crate::exactla::IntMatrix {
        let n = self.dim();
        let mut m = crate::exactla::IntMatrix::zeros(n, n);
        for i in 0..n {
            let mut e = vec![BigInt::zero(); n];
            e[i] = BigInt::one();
            let col = self.mul_int(&e, y);
            for k in 0..n {
                m[(k, i)] = col[k].clone();
            }
        }
        m
    }

    pub fn trace_of(&self, a: &[BigRational]) -> BigRational {
        a.iter().zip(&self.traces).fold(BigRational::zero(), |s, (x, t)| s + x * t)
    }

    /// Integer vector and denominator of an element.
    pub fn split(&self, a: &[BigRational]) -> (BigInt, Vec<BigInt>) {
        clear_denominators(a)
    }

    pub fn field(&self) -> Rationals {
        Rationals
    }

    pub fn is_unit_elem(&self, a: &[BigRational]) -> bool {
        !Rationals.is_zero(&self.alg.det(a))
    }
}

impl std::ops::Deref for QAlgebra {
    type Target = Algebra<Rationals>;
    fn deref(&self) -> &Algebra<Rationals> {
        &self.alg
    }
}

impl PartialEq for QAlgebra {
    fn eq(&self, o: &Self) -> bool {
        self.alg == o.alg
    }
}
