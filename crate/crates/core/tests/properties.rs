//! Invariants of the lattice operations, checked on generated inputs.

mod common;

use common::*;
use latsemi::exactla::IntMatrix;
use latsemi::lattice::{FullLattice, Order};
use latsemi::latmac::{charpoly, companion, gl_conjugate, lattice_to_matrix, matrix_to_lattice};
use latsemi::localize::{bad_primes, glue, is_locally_principal, locally_equal};
use latsemi::semigroup::{eps_equivalent, is_invertible, power_invertibility_index, w_equivalent, EquivalenceVerdict};
use latsemi::Budget;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::sync::Arc;

/// A monic polynomial of degree 2..=4, built from small factors.
fn algebra() -> impl Strategy<Value = Vec<i64>> {
    (2usize..=4, any::<u64>()).prop_map(|(n, seed)| random_poly(&mut ChaCha8Rng::seed_from_u64(seed), n))
}

fn lattice_in(alg: Arc<latsemi::algebra::QAlgebra>) -> impl Strategy<Value = FullLattice> {
    let n = alg.dim();
    (1i64..=3, prop::collection::vec(prop::collection::vec(-3i64..=3, n), n))
        .prop_filter_map("singular basis", move |(den, cols)| {
            let cols: Vec<Vec<BigInt>> = cols.iter().map(|c| big(c)).collect();
            let m = IntMatrix::from_cols(n, &cols);
            (m.det() != BigInt::from(0)).then(|| FullLattice::from_int(&alg, &BigInt::from(den), &m).unwrap())
        })
}

/// `k` lattices in one random algebra.
fn lattices(k: usize) -> impl Strategy<Value = Vec<FullLattice>> {
    algebra().prop_flat_map(move |f| prop::collection::vec(lattice_in(poly_alg(&f)), k))
}

fn small_prime() -> impl Strategy<Value = BigInt> {
    prop::sample::select(vec![2, 3, 5, 7]).prop_map(BigInt::from)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn dual_identity(ls in lattices(2)) {
        let (l1, l3) = (&ls[0], &ls[1]);
        prop_assert_eq!(l3.colon(l1).dual(), l3.colon_dual_side(l1));
    }

    #[test]
    fn colon_is_largest_multiplier(ls in lattices(2)) {
        let (l1, l2) = (&ls[0], &ls[1]);
        let c = l1.colon(l2);
        prop_assert!(l1.contains(&c.product(l2)));
        // (L1:L2)·O(L1) also maps L2 into L1, so maximality keeps it inside
        prop_assert!(c.contains(&c.product(&l1.order_of())));
    }

    #[test]
    fn multiplier_ring_is_an_order(ls in lattices(1)) {
        let l = &ls[0];
        let o = l.order_of();
        prop_assert!(o.is_order() && o.contains_one());
        prop_assert_eq!(o.product(l), l.clone());
    }

    #[test]
    fn generalized_index_is_multiplicative(ls in lattices(3)) {
        let (k, l, m) = (&ls[0], &ls[1], &ls[2]);
        prop_assert_eq!(k.gen_index(l) * l.gen_index(m), k.gen_index(m));
        prop_assert_eq!(k.gen_index(k), BigRational::one());
    }

    #[test]
    fn basis_change_does_not_change_the_lattice(ls in lattices(1), k in -3i64..=3) {
        let l = &ls[0];
        let n = l.dim();
        let mut b = l.basis().clone();
        b.col_axpy(0, n - 1, &BigInt::from(k));
        b.swap_cols(0, n - 1);
        prop_assert_eq!(&FullLattice::from_int(l.algebra(), l.den(), &b).unwrap(), l);
    }

    #[test]
    fn invertibility_criteria_agree(ls in lattices(1)) {
        let l = &ls[0];
        let r = is_invertible(l);
        prop_assert!(r.crit_ii == r.crit_iii && r.crit_iii == r.crit_v && r.verdict == r.crit_iii);
        if let Some(inv) = &r.inverse {
            prop_assert_eq!(l.product(inv), r.order.lattice().clone());
        }
        let k = power_invertibility_index(l);
        prop_assert!(k >= 1 && k as usize <= l.dim() - 1);
        prop_assert_eq!(is_locally_principal(l).unwrap().0, r.verdict);
    }

    #[test]
    fn w_equivalence_witness(ls in lattices(2)) {
        let (l1, l2) = (&ls[0], &ls[1]);
        // L1 and L1·X are w-equivalent for X invertible over O(L1)
        let o = l1.order_of();
        let x = o.product(l2);
        if is_invertible(&x).verdict && x.order_of() == o {
            let l3 = l1.product(&x);
            match w_equivalent(l1, &l3) {
                EquivalenceVerdict::Yes(w) => prop_assert_eq!(l1.product(&w), l3),
                v => prop_assert!(false, "{:?}", v),
            }
        }
    }

    #[test]
    fn localization_commutes_with_operations(ls in lattices(4), q in small_prime()) {
        let m1 = glue(&ls[0], &[(q.clone(), ls[2].clone())]).unwrap();
        let m2 = glue(&ls[1], &[(q.clone(), ls[3].clone())]).unwrap();
        let ops: [fn(&FullLattice, &FullLattice) -> FullLattice; 4] =
            [|a, b| a.sum(b), |a, b| a.intersect(b), |a, b| a.product(b), |a, b| a.colon(b)];
        for op in ops {
            let (global, local) = (op(&ls[0], &ls[1]), op(&m1, &m2));
            prop_assert!(bad_primes(&global, &local).unwrap().iter().all(|p| *p == q));
            prop_assert!(locally_equal(&local, &op(&ls[2], &ls[3]), &q));
        }
    }

    #[test]
    fn glue_round_trip(ls in lattices(2)) {
        let (l1, l2) = (&ls[0], &ls[1]);
        let assign: Vec<_> = bad_primes(l1, l2).unwrap().into_iter().map(|p| (p, l2.clone())).collect();
        prop_assert_eq!(&glue(l1, &assign).unwrap(), l2);
        prop_assert_eq!(&glue(l1, &[]).unwrap(), l1);
    }

    #[test]
    fn socle_index_product(seed in any::<u64>()) {
        let alg = example_algebra();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let (k, l) = (random_full_lattice(&mut rng, &alg, 2), random_full_lattice(&mut rng, &alg, 2));
        let prod = (1..=alg.filtrations().n_max + 1)
            .fold(BigRational::one(), |acc, m| acc * l.socle_quotient(m).covolume() / k.socle_quotient(m).covolume());
        prop_assert_eq!(prod, k.gen_index(&l));
    }

    #[test]
    fn latimer_macduffee_round_trip(d in 1i64..=12, seed in any::<u64>()) {
        let f = big(&[d, 0, 1]);
        let alg = poly_alg(&[d, 0, 1]);
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        // Λ·L is t-stable for Λ = Z[t]/(f)
        let l = Order::standard(&alg).unwrap().product(&random_full_lattice(&mut rng, &alg, 3));
        let b = lattice_to_matrix(&l).unwrap();
        prop_assert_eq!(charpoly(&b), f.clone());
        let back = matrix_to_lattice(&b, &f).unwrap();
        prop_assert!(eps_equivalent(&back, &l).is_yes());
        match gl_conjugate(&companion(&f).unwrap(), &b, &Budget::default()).unwrap() {
            EquivalenceVerdict::Yes(u) => prop_assert!(is_conjugator(&u, &companion(&f).unwrap(), &b)),
            EquivalenceVerdict::No => prop_assert!(!eps_equivalent(&back, &FullLattice::standard(&alg)).is_yes()),
            EquivalenceVerdict::UnknownWithinBound(_) => prop_assert!(false, "t² + {} is decisive", d),
        }
    }
}
