//! The acceptance suite: one pass/fail line per criterion.

mod common;

use common::*;
use latsemi::classify::{enumerate_exact_classes, faddeev_chain, index_formula_check, picard, prf_group_map, ClassTable};
use latsemi::exactla::IntMatrix;
use latsemi::lattice::{FullLattice, Order};
use latsemi::latmac::{class_count, companion, gl_conjugate};
use latsemi::localize::{bad_primes, glue, is_locally_principal, local_report, locally_equal};
use latsemi::semigroup::{
    construct_invertibilizing_order, is_invertible, normalize_in_order, power_invertibility_index, stationary_power,
    w_equivalent, EquivalenceVerdict,
};
use latsemi::{Budget, Error};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::sync::Mutex;
use std::time::{Duration, Instant};

/// Every ClassTable computed by the suite, for the w-class size check.
static TABLES: Mutex<Vec<ClassTable>> = Mutex::new(Vec::new());

fn record(t: &ClassTable) {
    TABLES.lock().unwrap().push(t.clone());
}

fn corpus_500() -> Vec<FullLattice> {
    corpus(&mut ChaCha8Rng::seed_from_u64(1), 500, 2..=4)
}

fn within(start: Instant, limit: Duration, what: &str) {
    assert!(start.elapsed() <= limit, "{what} took {:?}", start.elapsed());
}

fn invertibility_criteria_agree() -> String {
    let start = Instant::now();
    let corpus = corpus_500();
    let invertible = corpus
        .par_iter()
        .map(|l| {
            let r = is_invertible(l);
            assert!(r.crit_ii == r.crit_iii && r.crit_iii == r.crit_v && r.verdict == r.crit_iii, "criteria disagree on {l:?}");
            r.verdict as usize
        })
        .sum::<usize>();
    within(start, Duration::from_secs(300), "equivalence suite");
    format!("{} lattices, {invertible} invertible", corpus.len())
}

fn power_index_bound() -> String {
    let corpus = corpus_500();
    let max = corpus
        .par_iter()
        .map(|l| {
            let n = l.dim() as u32;
            let k = power_invertibility_index(l);
            assert!(k >= 1 && k <= n - 1, "index {k} in dim {n}");
            if n == 2 {
                assert_eq!(k, 1);
            }
            // the index is the least k with L^k invertible
            assert!(is_invertible(&l.power(k)).verdict);
            assert!(k == 1 || !is_invertible(&l.power(k - 1)).verdict);
            k
        })
        .max()
        .unwrap();
    format!("{} lattices, largest index {max}", corpus.len())
}

fn invertibilizing_pipeline() -> String {
    let corpus = corpus(&mut ChaCha8Rng::seed_from_u64(3), 100, 3..=3);
    corpus.par_iter().for_each(|l| {
        let lambda = construct_invertibilizing_order(l).unwrap();
        assert!(lambda.is_order() && lambda.contains(&l.order_of()));
        let ll = lambda.product(l);
        let r = is_invertible(&ll);
        assert!(r.verdict && r.order == lambda);
        let l2 = normalize_in_order(l, &lambda).unwrap();
        assert!(l2.contains_one() && lambda.contains(&l2));
        assert!(w_equivalent(&l2, l).is_yes());
        assert_eq!(lambda.product(&l2), *lambda);
        let (n, stationary) = stationary_power(&l2).unwrap();
        assert!(n >= 1 && n <= 2, "N = {n}");
        assert_eq!(l2.power(n), *stationary);
        assert_eq!(l2.power(n + 1), *stationary);
        assert!(stationary.is_order());
    });
    format!("{} dim-3 instances", corpus.len())
}

fn quadratic_orders() -> Vec<(&'static str, Order, i64)> {
    let gauss = poly_alg(&[1, 0, 1]);
    let m3 = poly_alg(&[3, 0, 1]);
    vec![
        ("Z[√−5]", order(&poly_alg(&[5, 0, 1]), 1, &[&[1, 0], &[0, 1]]), -20),
        ("Z+3iZ", order(&gauss, 1, &[&[1, 0], &[0, 3]]), -36),
        ("Z[i]", order(&gauss, 1, &[&[1, 0], &[0, 1]]), -4),
        ("Z[(1+√−3)/2]", order(&m3, 2, &[&[2, 0], &[1, 1]]), -3),
        ("Z[√−3]", order(&m3, 1, &[&[1, 0], &[0, 1]]), -12),
    ]
}

fn picard_groups() -> String {
    let expected = [2, 2, 1, 1, 1];
    let mut out = Vec::new();
    for ((name, o, d), want) in quadratic_orders().into_iter().zip(expected) {
        let start = Instant::now();
        let p = picard(&o, &Budget::default()).unwrap();
        within(start, Duration::from_secs(60), name);
        record(&enumerate_exact_classes(&o, &Budget::default()).unwrap());
        assert_eq!(p.order(), form_class_number(d), "{name}");
        assert_eq!(p.order(), want, "{name}");
        out.push(format!("{name}:{}", p.order()));
    }
    out.join(" ")
}

fn kronecker(d: i64, p: i64) -> i64 {
    if p == 2 {
        return match d.rem_euclid(8) {
            1 | 7 => 1,
            3 | 5 => -1,
            _ => 0,
        };
    }
    // Euler's criterion
    let e = (0..(p - 1) / 2).fold(1i64, |acc, _| acc * d.rem_euclid(p) % p);
    match e {
        0 => 0,
        1 => 1,
        _ => -1,
    }
}

fn roots_of_unity(d: i64) -> i64 {
    match d {
        -3 => 6,
        -4 => 4,
        _ => 2,
    }
}

/// h(D f²)/h(D) from the class number formula for imaginary quadratic orders.
fn class_ratio(d: i64, f: i64) -> BigRational {
    let mut r = BigRational::from_integer(f.into());
    for p in 2..=f {
        if f % p == 0 && (2..p).all(|q| p % q != 0) {
            r *= BigRational::new((p - kronecker(d, p)).into(), p.into());
        }
    }
    r * BigRational::new(roots_of_unity(d * f * f).into(), roots_of_unity(d).into())
}

fn index_formula() -> String {
    let o = quadratic_orders();
    let cases = [(&o[2].1, &o[1].1, -4, 3, 2), (&o[3].1, &o[4].1, -3, 2, 1)];
    let mut out = Vec::new();
    for (big, small, d, f, want) in cases {
        let r = index_formula_check(big, small, &Budget::default()).unwrap();
        let oracle = class_ratio(d, f);
        assert_eq!(oracle, BigRational::from_integer(want.into()));
        assert_eq!(r.left, oracle);
        assert_eq!(r.right, oracle);
        out.push(format!("{}={}", r.left, r.right));
    }
    out.join(" ")
}

fn prf_isomorphism() -> String {
    let start = Instant::now();
    // (t² + 5)² = t⁴ + 10t² + 25
    let alg = poly_alg(&[25, 0, 10, 0, 1]);
    let lambda = Order::standard(&alg).unwrap();
    let iso = prf_group_map(&lambda, &Budget::default()).unwrap();
    within(start, Duration::from_secs(600), "prf isomorphism");
    record(&iso.source);
    record(&iso.target);
    let (gs, gt) = (iso.source.group_order(), iso.target.group_order());
    assert_eq!(gs, 2);
    assert_eq!(gt, form_class_number(-20));
    let mut seen = iso.map.clone();
    seen.sort();
    assert_eq!(seen, (0..gt).collect::<Vec<_>>());
    for i in 0..gs {
        for j in 0..gs {
            assert_eq!(iso.target.group_table[iso.map[i]][iso.map[j]], iso.map[iso.source.group_table[i][j]]);
        }
    }
    for (k, l) in iso.lifts.iter().enumerate() {
        assert_eq!(l.pr_f(), iso.target.reps[iso.target.group[k]]);
    }
    format!("|G(Λ)| = {gs}, |G(pr_F Λ)| = {gt}")
}

fn w_class_sizes() -> String {
    let mut extra = Vec::new();
    for f in [&[0, 0, 1][..], &[0, 0, 0, 1], &[0, 0, -1, 1]] {
        let alg = poly_alg(f);
        extra.push(enumerate_exact_classes(&Order::standard(&alg).unwrap(), &Budget::default()).unwrap());
    }
    let mut tables = TABLES.lock().unwrap().clone();
    tables.extend(extra);
    for t in &tables {
        let g = t.group_order();
        assert!(t.w_classes.iter().all(|c| c.len() == g), "w-class sizes {:?} vs |G| = {g}", t.w_classes);
    }
    format!("{} tables", tables.len())
}

fn latimer_macduffee() -> String {
    let b = Budget::default();
    let mut out = Vec::new();
    for (d, want) in [(1, 1), (5, 2), (3, 2)] {
        let c = class_count(&big(&[d, 0, 1]), None, &b).unwrap();
        assert_eq!(c.total(), gl2_classes(d));
        assert_eq!(c.total(), want);
        out.push(format!("t²+{d}:{}", c.total()));
    }
    let c5 = companion(&big(&[5, 0, 1])).unwrap();
    let other = IntMatrix::from_i64_rows(&[&[-1, -3], &[2, 1]]);
    assert_eq!(gl_conjugate(&c5, &other, &b).unwrap(), EquivalenceVerdict::No);
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut yes = 0;
    for f in [&[5, 0, 1][..], &[1, 1, 1], &[-2, 0, 0, 1], &[3, 0, 1], &[6, 0, 1]] {
        let m = companion(&big(f)).unwrap();
        let n = m.rows();
        for _ in 0..6 {
            // u as a product of elementary matrices, inverted factor by factor
            let (mut u, mut ui) = (IntMatrix::identity(n), IntMatrix::identity(n));
            for _ in 0..5 {
                let (i, j) = (rng.gen_range(0..n), rng.gen_range(0..n));
                if i != j {
                    let k = BigInt::from(rng.gen_range(-2..=2));
                    u.col_axpy(i, j, &k);
                    ui.row_axpy(j, i, &-k);
                }
            }
            assert_eq!(u.mul(&ui), IntMatrix::identity(n));
            let m2 = u.mul(&m).mul(&ui);
            for (x, y) in [(&m, &m2), (&m2, &m)] {
                match gl_conjugate(x, y, &b).unwrap() {
                    EquivalenceVerdict::Yes(w) => {
                        assert!(is_conjugator(&w, x, y));
                        yes += 1;
                    }
                    v => panic!("conjugate pair reported {v:?}"),
                }
            }
        }
        // class representatives are enumerated only in the decisive domain
        let reps = if f.len() == 3 { class_count(&big(f), None, &b).unwrap().matrices } else { Vec::new() };
        for t in reps {
            if let EquivalenceVerdict::Yes(w) = gl_conjugate(&m, &t, &b).unwrap() {
                assert!(is_conjugator(&w, &m, &t));
                yes += 1;
            }
        }
    }
    format!("{}, companion vs [[−1,−3],[2,1]]: No, {yes} verified conjugators", out.join(" "))
}

/// Radical and socle chain dimensions of the monomial algebra from its
/// structure constants alone. Every product of basis monomials is a basis
/// monomial or zero, and distinct monomials stay distinct under
/// multiplication by a monomial, so all the spans and annihilators involved
/// are spanned by monomials.
fn monomial_chains() -> (Vec<usize>, Vec<usize>) {
    let c = example_table();
    let n = c.len();
    let product = |i: usize, j: usize| c[i][j].iter().position(|&x| x != 0);
    let nilpotent = |i: usize| {
        let mut cur = Some(i);
        for _ in 0..n {
            cur = cur.and_then(|k| product(k, i));
        }
        cur.is_none()
    };
    let mut powers: Vec<Vec<usize>> = vec![(0..n).collect(), (0..n).filter(|&i| nilpotent(i)).collect()];
    while !powers.last().unwrap().is_empty() {
        let last = powers.last().unwrap();
        let mut next: Vec<usize> = last.iter().flat_map(|&i| powers[1].iter().filter_map(move |&j| product(i, j))).collect();
        next.sort();
        next.dedup();
        powers.push(next);
    }
    let rad = powers.iter().map(Vec::len).collect();
    let soc = powers.iter().map(|p| (0..n).filter(|&m| p.iter().all(|&r| product(m, r).is_none())).count()).collect();
    (rad, soc)
}

fn example_filtrations() -> String {
    let alg = example_algebra();
    let fl = alg.filtrations();
    let d = alg.decomposition();
    let (rad, soc) = monomial_chains();
    assert_eq!(rad, vec![9, 6, 3, 1, 0]);
    assert_eq!(soc, vec![0, 4, 7, 8, 9]);
    assert_eq!(fl.radical_dims(), rad);
    assert_eq!(fl.socle_dims(), soc);
    assert_eq!((fl.n_max, d.n_max, d.k()), (3, 3, 3));
    let mut nil: Vec<usize> = d.blocks.iter().map(|b| b.nilpotency).collect();
    nil.sort();
    assert_eq!(nil, vec![0, 1, 3]);
    format!("radical {rad:?}, socle {soc:?}, n_max 3, k 3")
}

fn random_prime(rng: &mut ChaCha8Rng) -> BigInt {
    BigInt::from([2, 3, 5, 7][rng.gen_range(0..4)])
}

fn localization_suite() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(10);
    let pairs: Vec<_> = (0..200)
        .map(|_| {
            let n = rng.gen_range(2..=3);
            let alg = poly_alg(&random_poly(&mut rng, n));
            let ls: Vec<FullLattice> = (0..4).map(|_| random_full_lattice(&mut rng, &alg, 3)).collect();
            (ls, random_prime(&mut rng))
        })
        .collect();
    pairs.par_iter().for_each(|(ls, q)| {
        let (l1, l2, x1, x2) = (&ls[0], &ls[1], &ls[2], &ls[3]);
        // M_i agrees with L_i away from q and with X_i at q
        let m1 = glue(l1, &[(q.clone(), x1.clone())]).unwrap();
        let m2 = glue(l2, &[(q.clone(), x2.clone())]).unwrap();
        for (m, l, x) in [(&m1, l1, x1), (&m2, l2, x2)] {
            assert!(bad_primes(m, l).unwrap().iter().all(|p| p == q));
            assert!(locally_equal(m, x, q));
        }
        let ops: [(&str, fn(&FullLattice, &FullLattice) -> FullLattice); 4] = [
            ("sum", |a, b| a.sum(b)),
            ("intersection", |a, b| a.intersect(b)),
            ("product", |a, b| a.product(b)),
            ("colon", |a, b| a.colon(b)),
        ];
        for (name, op) in ops {
            let (global, local) = (op(l1, l2), op(&m1, &m2));
            assert!(bad_primes(&global, &local).unwrap().iter().all(|p| p == q), "{name} away from {q}");
            assert!(locally_equal(&local, &op(x1, x2), q), "{name} at {q}");
        }
        // index multiplicativity over the bad primes
        let prod = bad_primes(l1, l2).unwrap().iter().fold(BigRational::one(), |acc, p| {
            let r = local_report(l1, l2, p);
            acc * BigRational::new(r.p_index_m, r.p_index_l)
        });
        assert_eq!(prod, l1.gen_index(l2));
        // glue round trip
        let assign: Vec<_> = bad_primes(l1, l2).unwrap().into_iter().map(|p| (p, l2.clone())).collect();
        assert_eq!(glue(l1, &assign).unwrap(), *l2);
    });
    let corpus = corpus_500();
    let principal = corpus
        .par_iter()
        .map(|l| {
            let (lp, _) = is_locally_principal(l).unwrap();
            assert_eq!(lp, is_invertible(l).verdict, "{l:?}");
            lp as usize
        })
        .sum::<usize>();
    format!("{} pairs, {} corpus lattices ({principal} locally principal)", pairs.len(), corpus.len())
}

fn faddeev_chains() -> String {
    let mut orders: Vec<Order> =
        [&[0, 0, 1][..], &[0, 0, 0, 1], &[0, 0, -1, 1], &[1, 0, 2, 0, 1]].iter().map(|f| Order::standard(&poly_alg(f)).unwrap()).collect();
    orders.push(Order::standard(&example_algebra()).unwrap());
    for lambda in &orders {
        let chain = faddeev_chain(lambda, 3).unwrap();
        assert!(chain.len() >= 3);
        let mut prev: &FullLattice = lambda;
        for o in &chain {
            assert!(o.is_order() && o.contains_one());
            assert!(o.contains(prev) && **o != *prev, "chain not strictly increasing");
            prev = o;
        }
    }
    let sep = Order::standard(&poly_alg(&[5, 0, 1])).unwrap();
    assert!(matches!(faddeev_chain(&sep, 3), Err(Error::RadicalZero)));
    format!("{} orders, chains of length 3", orders.len())
}

fn lattice_identities() -> String {
    let mut rng = ChaCha8Rng::seed_from_u64(12);
    let pairs: Vec<(FullLattice, FullLattice)> = (0..100)
        .map(|_| {
            let n = rng.gen_range(2..=4);
            let alg = poly_alg(&random_poly(&mut rng, n));
            (random_full_lattice(&mut rng, &alg, 3), random_full_lattice(&mut rng, &alg, 3))
        })
        .collect();
    pairs.par_iter().for_each(|(l1, l3)| {
        let colon = l3.colon(l1);
        for x in colon.basis_elems() {
            for y in l1.basis_elems() {
                assert!(l3.contains_elem(&l3.algebra().mul(&x, &y)));
            }
        }
        assert_eq!(colon.dual(), l3.colon_dual_side(l1));
    });
    let alg = example_algebra();
    let groups = alg.filtrations().n_max + 1;
    let ex: Vec<(FullLattice, FullLattice)> =
        (0..100).map(|_| (random_full_lattice(&mut rng, &alg, 2), random_full_lattice(&mut rng, &alg, 2))).collect();
    ex.par_iter().for_each(|(k, l)| {
        let prod = (1..=groups).fold(BigRational::one(), |acc, m| acc * l.socle_quotient(m).covolume() / k.socle_quotient(m).covolume());
        assert_eq!(prod, k.gen_index(l));
    });
    format!("{} dual identities, {} index products", pairs.len(), ex.len())
}

fn main() {
    let criteria: Vec<(&str, fn() -> String)> = vec![
        ("invertibility criteria agree", invertibility_criteria_agree),
        ("power invertibility index ≤ n−1", power_index_bound),
        ("invertibilizing pipeline in dim 3", invertibilizing_pipeline),
        ("Picard group orders", picard_groups),
        ("unit index formula", index_formula),
        ("pr_F isomorphism for (t²+5)²", prf_isomorphism),
        ("equal w-class sizes", w_class_sizes),
        ("Latimer–MacDuffee counts and conjugators", latimer_macduffee),
        ("radical and socle filtrations", example_filtrations),
        ("localization identities", localization_suite),
        ("Faddeev chains", faddeev_chains),
        ("dual and index-product identities", lattice_identities),
    ];
    std::panic::set_hook(Box::new(|_| {}));
    // the w-class check reads tables recorded by the Picard and pr_F criteria
    let (last, first): (Vec<usize>, Vec<usize>) = (0..criteria.len()).partition(|&i| i == 6);
    let mut results: Vec<Option<(Result<String, String>, Duration)>> = vec![None; criteria.len()];
    let run = |i: usize| {
        let start = Instant::now();
        let r = catch_unwind(AssertUnwindSafe(criteria[i].1)).map_err(|e| {
            e.downcast_ref::<String>().cloned().or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string())).unwrap_or_default()
        });
        (i, r, start.elapsed())
    };
    for batch in [first, last] {
        for (i, r, t) in batch.into_par_iter().map(run).collect::<Vec<_>>() {
            results[i] = Some((r, t));
        }
    }
    let _ = std::panic::take_hook();
    let mut failed = 0;
    for (i, ((name, _), r)) in criteria.iter().zip(results).enumerate() {
        let (r, t) = r.unwrap();
        match r {
            Ok(detail) => println!("criterion {:>2}: PASS  {name} — {detail} ({} ms)", i + 1, t.as_millis()),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2}: FAIL  {name} — {msg} ({} ms)", i + 1, t.as_millis())
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
