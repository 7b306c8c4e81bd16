//! Field components of A and norm-form enumeration in the decisive domain
//! (every F^(j) is Q or imaginary quadratic).

use crate::algebra::{Algebra, Element, QAlgebra};
use crate::arith::isqrt;
use crate::exactla::Rationals;
use crate::lattice::ZLattice;
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::ops::Range;
use std::sync::Arc;

/// One field component F^(j) of A.
#[derive(Clone, Debug)]
pub struct Component {
    /// Coordinates of F^(j) inside the field part F.
    pub range: Range<usize>,
    pub degree: usize,
    /// dim A^(j) / dim F^(j).
    pub mult: usize,
    /// F^(j) ≅ Q[t]/(minimal polynomial), coordinates matching `range`.
    pub alg: Arc<QAlgebra>,
}

impl Component {
    /// Q or imaginary quadratic.
    pub fn is_decisive(&self) -> bool {
        match self.degree {
            1 => true,
            2 => {
                let c = self.alg.structure(1, 1);
                // t² = c0 + c1·t; the discriminant is c1² + 4c0
                &c[1] * &c[1] + BigRational::from_integer(4.into()) * &c[0] < BigRational::zero()
            }
            _ => false,
        }
    }

    /// Absolute norm N_{F^(j)/Q} of a component element.
    pub fn norm(&self, x: &[BigRational]) -> BigRational {
        self.alg.det(x)
    }
}

pub fn components(alg: &QAlgebra) -> Vec<Component> {
    let d = alg.decomposition();
    let fp = alg.field_part();
    d.blocks
        .iter()
        .zip(&fp.components)
        .map(|(b, r)| {
            let f = Algebra::from_poly_coeffs(Rationals, b.min_poly.coeffs()).expect("minimal polynomials are monic");
            Component { range: r.clone(), degree: r.len(), mult: b.basis.len() / r.len(), alg: QAlgebra::new(f) }
        })
        .collect()
}

pub fn is_decisive(alg: &QAlgebra) -> bool {
    components(alg).iter().all(Component::is_decisive)
}

/// det(μ_a) computed blockwise as ∏_j N_j(pr_F(a)_j)^{m_j}.
pub fn det_via_components(alg: &QAlgebra, comps: &[Component], a: &[BigRational]) -> BigRational {
    let f = alg.field_part().project.mul_vec(a);
    comps.iter().fold(BigRational::one(), |acc, c| acc * num_traits::pow(c.norm(&f[c.range.clone()]), c.mult))
}

/// Lattice elements of a rank-1 or rank-2 lattice in a decisive component with
/// 0 < |N(x)| ≤ bound, as (element, |N(x)|), in a deterministic order.
pub fn short_elements(c: &Component, lat: &ZLattice, bound: &BigRational) -> Vec<(Element<Rationals>, BigRational)> {
    assert!(c.is_decisive());
    let basis = lat.columns();
    let mut out = Vec::new();
    if c.degree == 1 {
        let g = basis[0][0].abs();
        let kmax = (bound / &g).floor().to_integer();
        let mut k = BigInt::one();
        while k <= kmax {
            for s in [1, -1] {
                let v = &basis[0][0] * BigRational::from_integer(&k * s);
                let n = v.abs();
                out.push((vec![v], n));
            }
            k += 1;
        }
        return out;
    }
    let (b1, b2) = (&basis[0], &basis[1]);
    let a = c.norm(b1);
    let cc = c.norm(b2);
    let s12: Vec<BigRational> = b1.iter().zip(b2).map(|(x, y)| x + y).collect();
    let b = c.norm(&s12) - &a - &cc;
    let four = BigRational::from_integer(4.into());
    let delta = &four * &a * &cc - &b * &b;
    assert!(a.is_positive() && delta.is_positive(), "norm form of an imaginary quadratic field is positive definite");
    let ymax = isqrt(&(&four * &a * bound / &delta).floor().to_integer());
    let two_a = BigRational::from_integer(2.into()) * &a;
    let mut y = -ymax.clone();
    while y <= ymax {
        let yr = BigRational::from_integer(y.clone());
        let s = &four * &a * bound - &delta * &yr * &yr;
        if !s.is_negative() {
            let root = BigRational::from_integer(isqrt(&s.floor().to_integer()) + 1);
            let lo = ((-&b * &yr - &root) / &two_a).floor().to_integer();
            let hi = ((-&b * &yr + &root) / &two_a).ceil().to_integer();
            let mut x = lo;
            while x <= hi {
                let xr = BigRational::from_integer(x.clone());
                let q = &a * &xr * &xr + &b * &xr * &yr + &cc * &yr * &yr;
                if q.is_positive() && &q <= bound {
                    let v: Vec<BigRational> = b1.iter().zip(b2).map(|(p, r)| p * &xr + r * &yr).collect();
                    out.push((v, q));
                }
                x += 1;
            }
        }
        y += 1;
    }
    out
}

/// A positive lower bound for |N(x)| over nonzero x in the lattice.
pub fn norm_lower_bound(c: &Component, lat: &ZLattice) -> BigRational {
    let basis = lat.columns();
    if c.degree == 1 {
        return basis[0][0].abs();
    }
    let a = c.norm(&basis[0]);
    let cc = c.norm(&basis[1]);
    let s12: Vec<BigRational> = basis[0].iter().zip(&basis[1]).map(|(x, y)| x + y).collect();
    let b = c.norm(&s12) - &a - &cc;
    let l = [a, b, cc].iter().fold(BigInt::one(), |d, x| d.lcm(x.denom()));
    BigRational::new(BigInt::one(), l)
}

/// The finite unit group of the order with basis `lat` in a decisive
/// component: elements of norm ±1.
pub fn component_units(c: &Component, lat: &ZLattice) -> Vec<Element<Rationals>> {
    short_elements(c, lat, &BigRational::one()).into_iter().filter(|(_, n)| n.is_one()).map(|(v, _)| v).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::alg_poly;
    use crate::lattice::FullLattice;

    #[test]
    fn decisive_detection() {
        assert!(is_decisive(&alg_poly(&[5, 0, 1])));
        assert!(!is_decisive(&alg_poly(&[-2, 0, 1])));
        assert!(!is_decisive(&alg_poly(&[-2, 0, 0, 1])));
        // (t²+5)²: one imaginary quadratic block of multiplicity 2
        let a = alg_poly(&[25, 0, 10, 0, 1]);
        let cs = components(&a);
        assert_eq!(cs.len(), 1);
        assert_eq!((cs[0].degree, cs[0].mult), (2, 2));
        assert!(cs[0].is_decisive());
    }

    #[test]
    fn blockwise_determinant() {
        let a = alg_poly(&[25, 0, 10, 0, 1]);
        let cs = components(&a);
        for v in [[1i64, 2, 0, 1], [3, -1, 2, 5], [0, 1, 0, 0]] {
            let x = a.elem_from_ints(&v);
            assert_eq!(det_via_components(&a, &cs, &x), a.det(&x));
        }
    }

    #[test]
    fn gaussian_short_vectors() {
        let a = alg_poly(&[1, 0, 1]);
        let c = &components(&a)[0];
        let proj = FullLattice::standard(&a).zl().map(&a.field_part().project);
        // brute force count of x²+y² ≤ 5 (excluding 0): 20
        let all = short_elements(c, &proj, &BigRational::from_integer(5.into()));
        let brute = (-3i64..=3).flat_map(|x| (-3i64..=3).map(move |y| x * x + y * y)).filter(|&n| n > 0 && n <= 5).count();
        assert_eq!(all.len(), brute);
        assert_eq!(component_units(c, &proj).len(), 4);
        let eis = alg_poly(&[1, 1, 1]);
        let c = &components(&eis)[0];
        let proj = FullLattice::standard(&eis).zl().map(&eis.field_part().project);
        assert_eq!(component_units(c, &proj).len(), 6);
    }
}
