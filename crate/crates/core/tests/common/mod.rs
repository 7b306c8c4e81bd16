//! Shared corpus and oracles for the integration tests.
#![allow(dead_code)]

use latsemi::algebra::{Algebra, QAlgebra};
use latsemi::exactla::{IntMatrix, Rationals};
use latsemi::lattice::{FullLattice, Order};
use latsemi::latmac::algebra_of;
use num_bigint::BigInt;
use num_rational::BigRational;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

pub fn big(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

pub fn poly_alg(f: &[i64]) -> Arc<QAlgebra> {
    algebra_of(&big(f)).unwrap()
}

/// (1/den)·span of the given integer columns.
pub fn lat(alg: &Arc<QAlgebra>, den: i64, cols: &[&[i64]]) -> FullLattice {
    let cols: Vec<Vec<BigInt>> = cols.iter().map(|c| big(c)).collect();
    FullLattice::from_int(alg, &BigInt::from(den), &IntMatrix::from_cols(alg.dim(), &cols)).unwrap()
}

pub fn order(alg: &Arc<QAlgebra>, den: i64, cols: &[&[i64]]) -> Order {
    Order::new(lat(alg, den, cols)).unwrap()
}

fn poly_mul(a: &[i64], b: &[i64]) -> Vec<i64> {
    let mut c = vec![0; a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            c[i + j] += x * y;
        }
    }
    c
}

/// A monic f of degree n, built from random monic factors so that repeated
/// factors (and hence nilpotents) are common.
pub fn random_poly(rng: &mut ChaCha8Rng, n: usize) -> Vec<i64> {
    let mut f = vec![1];
    let mut deg = 0;
    while deg < n {
        let d = rng.gen_range(1..=(n - deg).min(2));
        let mut g: Vec<i64> = (0..d).map(|_| rng.gen_range(-3..=3)).collect();
        g.push(1);
        let times = if rng.gen_ratio(7, 20) && deg + 2 * d <= n { 2 } else { 1 };
        for _ in 0..times {
            f = poly_mul(&f, &g);
            deg += d;
        }
    }
    f
}

pub fn random_full_lattice(rng: &mut ChaCha8Rng, alg: &Arc<QAlgebra>, max_entry: i64) -> FullLattice {
    let n = alg.dim();
    loop {
        let cols: Vec<Vec<BigInt>> =
            (0..n).map(|_| (0..n).map(|_| BigInt::from(rng.gen_range(-max_entry..=max_entry))).collect()).collect();
        let m = IntMatrix::from_cols(n, &cols);
        if m.det() != BigInt::from(0) {
            let den = BigInt::from(rng.gen_range(1..=3));
            return FullLattice::from_int(alg, &den, &m).unwrap();
        }
    }
}

/// `count` random lattices in random algebras Q[t]/(f), deg f ∈ dims.
pub fn corpus(rng: &mut ChaCha8Rng, count: usize, dims: std::ops::RangeInclusive<usize>) -> Vec<FullLattice> {
    (0..count)
        .map(|_| {
            let n = rng.gen_range(dims.clone());
            let alg = poly_alg(&random_poly(rng, n));
            random_full_lattice(rng, &alg, 3)
        })
        .collect()
}

/// Structure constants of Q[x,y]/(xy, x⁴, y³) ⊕ Q[z]/(z²) ⊕ Q on the
/// monomial basis 1, x, x², x³, y, y², 1', z, 1''.
pub fn example_table() -> Vec<Vec<Vec<i64>>> {
    let n = 9;
    let mono = [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (0, 2)];
    let mut c = vec![vec![vec![0; n]; n]; n];
    for (i, &(a1, b1)) in mono.iter().enumerate() {
        for (j, &(a2, b2)) in mono.iter().enumerate() {
            let (a, b) = (a1 + a2, b1 + b2);
            if (a > 0 && b > 0) || a >= 4 || b >= 3 {
                continue;
            }
            c[i][j][mono.iter().position(|&m| m == (a, b)).unwrap()] = 1;
        }
    }
    c[6][6][6] = 1;
    c[6][7][7] = 1;
    c[7][6][7] = 1;
    c[8][8][8] = 1;
    c
}

pub fn example_algebra() -> Arc<QAlgebra> {
    let q = |x: i64| BigRational::from_integer(x.into());
    let c = example_table().iter().map(|r| r.iter().map(|v| v.iter().map(|&x| q(x)).collect()).collect()).collect();
    let mut unit = vec![q(0); 9];
    for i in [0, 6, 8] {
        unit[i] = q(1);
    }
    QAlgebra::new(Algebra::new(Rationals, c, unit).unwrap())
}

/// Primitive reduced positive definite forms (a, b, c) of discriminant d < 0:
/// the class number of the imaginary quadratic order of discriminant d.
pub fn form_class_number(d: i64) -> usize {
    fn gcd(a: i64, b: i64) -> i64 {
        if b == 0 {
            a.abs()
        } else {
            gcd(b, a % b)
        }
    }
    let mut h = 0;
    let mut a = 1;
    while 3 * a * a <= -d {
        for b in -a + 1..=a {
            let num = b * b - d;
            if num % (4 * a) != 0 {
                continue;
            }
            let c = num / (4 * a);
            if c < a || (c == a && b < 0) || gcd(gcd(a, b), c) != 1 {
                continue;
            }
            h += 1;
        }
        a += 1;
    }
    h
}

/// GL_2(Z)-classes of integer matrices with characteristic polynomial t² + d,
/// d > 0: reduced forms A·x² + 2b·xy + C·y², AC − b² = d, 0 ≤ 2b ≤ A ≤ C.
pub fn gl2_classes(d: i64) -> usize {
    let mut n = 0;
    for a in 1..=d {
        for b in 0..=a / 2 {
            let ac = d + b * b;
            if ac % a == 0 && ac / a >= a {
                n += 1;
            }
        }
    }
    n
}

pub fn is_conjugator(u: &IntMatrix, b1: &IntMatrix, b2: &IntMatrix) -> bool {
    let det = u.det();
    (det == BigInt::from(1) || det == BigInt::from(-1)) && u.mul(b1) == b2.mul(u)
}
