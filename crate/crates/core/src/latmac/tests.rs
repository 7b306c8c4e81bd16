use super::*;
use crate::lattice::tests::lat;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn poly(c: &[i64]) -> Vec<BigInt> {
    c.iter().map(|&x| BigInt::from(x)).collect()
}

fn mat(rows: &[&[i64]]) -> IntMatrix {
    IntMatrix::from_i64_rows(rows)
}

/// GL_2(Z)-classes of positive definite forms A·x² + 2b·xy + C·y² with
/// AC − b² = D, counted as reduced forms 0 ≤ 2b ≤ A ≤ C. A matrix
/// [[a, β], [γ, −a]] with charpoly t² + D corresponds to such a form.
fn form_classes(d: i64) -> usize {
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

fn random_unimodular(rng: &mut ChaCha8Rng, n: usize) -> IntMatrix {
    let mut u = IntMatrix::identity(n);
    for _ in 0..6 {
        let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
        if i != j {
            let k = BigInt::from(rng.gen_range(-2i64..=2));
            u.col_axpy(i, j, &k);
        }
    }
    if rng.gen_ratio(1, 2) {
        u.negate_col(0);
    }
    u
}

fn adjugate_inverse(u: &IntMatrix) -> IntMatrix {
    let n = u.rows();
    let inv = to_q(u).inverse().unwrap();
    IntMatrix::from_rows(&(0..n).map(|i| inv.row(i).iter().map(|x| x.to_integer()).collect()).collect::<Vec<_>>())
}

#[test]
fn companions() {
    assert_eq!(companion(&poly(&[5, 0, 1])).unwrap(), mat(&[&[0, -5], &[1, 0]]));
    let f = poly(&[-2, 0, 0, 1]);
    let m = companion(&f).unwrap();
    assert_eq!(charpoly(&m), f);
    assert!(minpoly_is_charpoly(&m));
    assert!(matches!(companion(&poly(&[1, 2])), Err(Error::NonMonic)));
}

#[test]
fn matrices_to_lattices() {
    let f = poly(&[5, 0, 1]);
    let alg = algebra_of(&f).unwrap();
    let lf = FullLattice::standard(&alg);
    let p2 = lat(&alg, 1, &[&[2, 0], &[1, 1]]);
    assert!(eps_equivalent(&matrix_to_lattice(&companion(&f).unwrap(), &f).unwrap(), &lf).is_yes());
    let l = matrix_to_lattice(&mat(&[&[-1, -3], &[2, 1]]), &f).unwrap();
    assert!(eps_equivalent(&l, &p2).is_yes());
    assert!(!eps_equivalent(&l, &lf).is_yes());
    // (t − 1)² with B = I: minimal polynomial t − 1
    assert!(matches!(matrix_to_lattice(&IntMatrix::identity(2), &poly(&[1, -2, 1])), Err(Error::MinPolyDeficient)));
}

#[test]
fn lattices_to_matrices() {
    let f = poly(&[5, 0, 1]);
    let alg = algebra_of(&f).unwrap();
    let p2 = lat(&alg, 1, &[&[2, 0], &[1, 1]]);
    let b = lattice_to_matrix(&p2).unwrap();
    assert_eq!(charpoly(&b), f);
    let c = companion(&f).unwrap();
    assert_eq!(gl_conjugate(&c, &b, &Budget::default()).unwrap(), EquivalenceVerdict::No);
    assert!(eps_equivalent(&matrix_to_lattice(&b, &f).unwrap(), &p2).is_yes());
    let not_stable = lat(&alg, 1, &[&[1, 0], &[0, 2]]);
    assert!(matches!(lattice_to_matrix(&not_stable), Err(Error::NotTStable)));
}

#[test]
fn conjugacy() {
    let b = Budget::default();
    let c = companion(&poly(&[5, 0, 1])).unwrap();
    assert_eq!(gl_conjugate(&c, &mat(&[&[-1, -3], &[2, 1]]), &b).unwrap(), EquivalenceVerdict::No);
    match gl_conjugate(&c, &c, &b).unwrap() {
        EquivalenceVerdict::Yes(u) => assert!(is_conjugator(&u, &c, &c)),
        v => panic!("{v:?}"),
    }
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for f in [poly(&[5, 0, 1]), poly(&[1, 1, 1]), poly(&[-2, 0, 0, 1])] {
        let m = companion(&f).unwrap();
        for _ in 0..4 {
            let u = random_unimodular(&mut rng, m.rows());
            let m2 = u.mul(&m).mul(&adjugate_inverse(&u));
            match gl_conjugate(&m, &m2, &b).unwrap() {
                EquivalenceVerdict::Yes(w) => assert!(is_conjugator(&w, &m, &m2)),
                v => panic!("{v:?}"),
            }
        }
    }
    // Q(√10) has class number 2; (2, √10) is not principal, and outside the
    // decisive domain only a bounded search is possible
    let c10 = companion(&poly(&[-10, 0, 1])).unwrap();
    let small = Budget { eps_box: 4, ..Budget::default() };
    assert!(matches!(gl_conjugate(&c10, &mat(&[&[0, 5], &[2, 0]]), &small).unwrap(), EquivalenceVerdict::UnknownWithinBound(_)));
}

#[test]
fn class_counts_match_binary_forms() {
    let b = Budget::default();
    for d in 1..=10 {
        let c = class_count(&poly(&[d, 0, 1]), None, &b).unwrap();
        assert_eq!(c.total(), form_classes(d), "t² + {d}");
        for m in &c.matrices {
            assert_eq!(charpoly(m), poly(&[d, 0, 1]));
        }
    }
    assert_eq!(class_count(&poly(&[3, 0, 1]), None, &b).unwrap().per_order.len(), 2);
    assert!(matches!(class_count(&poly(&[0, 0, 1]), None, &b), Err(Error::InfiniteWithoutOrderRestriction)));
}

#[test]
fn semigroups() {
    let b = Budget::default();
    let s = s1f_semigroup(&poly(&[5, 0, 1]), None, &b).unwrap();
    assert_eq!(s.table, vec![vec![0, 1], vec![1, 0]]);
    let s = s1f_semigroup(&poly(&[1, 0, 1]), None, &b).unwrap();
    assert_eq!(s.table, vec![vec![0]]);
    let s = s1f_semigroup(&poly(&[3, 0, 1]), None, &b).unwrap();
    assert_eq!(s.analysis.idempotents.len(), 2);
    // Z[√−3]·Z[(1+√−3)/2] is the maximal order
    let (i, j) = (0, 1);
    let max = if s.reps[i].contains(&s.reps[j]) { i } else { j };
    assert_eq!(s.table[i][j], max);
}
