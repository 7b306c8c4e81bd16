//! Factorization of squarefree polynomials into monic irreducibles:
//! Berlekamp over F_p, Zassenhaus (Berlekamp + Hensel lifting + subset
//! recombination) over Q.

use super::poly::Poly;
use crate::exactla::{Field, Mat, PrimeField, Rationals};
use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

/// Fields over which squarefree polynomials can be split into irreducibles.
pub trait PolyField: Field {
    /// Monic irreducible factors of a squarefree polynomial of positive degree,
    /// sorted canonically.
    fn factor_squarefree(g: &Poly<Self>) -> Vec<Poly<Self>>;
}

/// Distinct monic irreducible factors of any nonzero polynomial.
pub fn irreducible_factors<F: PolyField>(g: &Poly<F>) -> Vec<Poly<F>> {
    let r = g.radical();
    if r.deg() == 0 {
        return Vec::new();
    }
    F::factor_squarefree(&r)
}

impl PolyField for PrimeField {
    fn factor_squarefree(g: &Poly<Self>) -> Vec<Poly<Self>> {
        let mut out = berlekamp(g);
        out.sort_by(|a, b| (a.deg(), a.coeffs()).cmp(&(b.deg(), b.coeffs())));
        out
    }
}

fn berlekamp(g: &Poly<PrimeField>) -> Vec<Poly<PrimeField>> {
    let f = g.field();
    let g = g.monic();
    let d = g.deg();
    if d <= 1 {
        return vec![g];
    }
    let p = f.p();
    // matrix of Frobenius minus identity on F_p[t]/(g)
    let xp = Poly::t(f).pow_mod(BigInt::from(p), &g);
    let mut cols = Vec::with_capacity(d);
    let mut cur = Poly::one(f);
    for i in 0..d {
        let mut c: Vec<u64> = (0..d).map(|k| cur.coeff(k)).collect();
        c[i] = f.sub(&c[i], &1);
        cols.push(c);
        cur = cur.mul(&xp).rem(&g);
    }
    let ker = Mat::from_cols(f, d, &cols).nullspace();
    let r = ker.len();
    if r == 1 {
        return vec![g];
    }
    let mut factors = vec![g.clone()];
    for v in ker.iter() {
        let vp = Poly::new(f, v.clone());
        if vp.degree().unwrap_or(0) == 0 {
            continue;
        }
        let mut next = Vec::new();
        for h in factors {
            if h.deg() == 1 {
                next.push(h);
                continue;
            }
            let mut rest = h;
            for c in 0..p {
                if rest.deg() <= 1 {
                    break;
                }
                let shifted = vp.sub(&Poly::constant(f, c));
                let q = rest.gcd(&shifted);
                if q.deg() > 0 && q.deg() < rest.deg() {
                    rest = rest.div_exact(&q);
                    next.push(q);
                }
            }
            next.push(rest);
        }
        factors = next;
        if factors.len() == r {
            break;
        }
    }
    factors
}

impl PolyField for Rationals {
    fn factor_squarefree(g: &Poly<Self>) -> Vec<Poly<Self>> {
        let g = g.monic();
        let n = g.deg();
        if n == 1 {
            return vec![g];
        }
        // h(t) = D^n g(t/D) is monic with integer coefficients
        let den = g.coeffs().iter().fold(BigInt::one(), |a, c| a.lcm(c.denom()));
        let h: Vec<BigInt> = (0..=n)
            .map(|i| {
                let c = g.coeff(i) * BigRational::from_integer(num_traits::pow(den.clone(), n - i));
                assert!(c.is_integer());
                c.to_integer()
            })
            .collect();
        let mut out: Vec<Poly<Rationals>> = zassenhaus(&h)
            .into_iter()
            .map(|hf| {
                let k = hf.len() - 1;
                let coeffs = (0..=k)
                    .map(|i| BigRational::new(hf[i].clone(), num_traits::pow(den.clone(), k - i)))
                    .collect();
                Poly::new(Rationals, coeffs)
            })
            .collect();
        out.sort_by(|a, b| a.deg().cmp(&b.deg()).then_with(|| a.coeffs().cmp(b.coeffs())));
        out
    }
}

// ---- integer polynomials (coefficients low to high) ----

type ZPoly = Vec<BigInt>;

fn ztrim(mut a: ZPoly) -> ZPoly {
    while a.last().is_some_and(|c| c.is_zero()) {
        a.pop();
    }
    a
}

fn zmul(a: &ZPoly, b: &ZPoly) -> ZPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    ztrim(out)
}

fn zsub(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) - b.get(i).unwrap_or(&z)).collect())
}

fn zmod(a: &ZPoly, m: &BigInt) -> ZPoly {
    ztrim(a.iter().map(|c| c.mod_floor(m)).collect())
}

fn zsym(a: &ZPoly, m: &BigInt) -> ZPoly {
    let half = m / 2;
    ztrim(
        a.iter()
            .map(|c| {
                let r = c.mod_floor(m);
                if r > half {
                    r - m
                } else {
                    r
                }
            })
            .collect(),
    )
}

/// Exact division by a monic integer polynomial; `None` if not divisible.
fn zdiv_monic(a: &ZPoly, d: &ZPoly) -> Option<ZPoly> {
    let dd = d.len() - 1;
    if a.len() < d.len() {
        return a.is_empty().then(Vec::new);
    }
    let mut r = a.clone();
    let mut q = vec![BigInt::zero(); a.len() - dd];
    for k in (0..q.len()).rev() {
        let c = r[k + dd].clone();
        if !c.is_zero() {
            for (i, b) in d.iter().enumerate() {
                r[k + i] -= &c * b;
            }
        }
        q[k] = c;
    }
    r.iter().all(|c| c.is_zero()).then(|| ztrim(q))
}

fn to_fp(a: &ZPoly, f: PrimeField) -> Poly<PrimeField> {
    Poly::new(f, a.iter().map(|c| f.from_bigint(c)).collect())
}

fn from_fp(a: &Poly<PrimeField>) -> ZPoly {
    a.coeffs().iter().map(|&c| BigInt::from(c)).collect()
}

/// Lift h ≡ f·g (mod p) with f, g monic and coprime mod p to mod p^k.
fn hensel2(h: &ZPoly, f: &Poly<PrimeField>, g: &Poly<PrimeField>, k: u32) -> (ZPoly, ZPoly) {
    let fld = f.field();
    let p = BigInt::from(fld.p());
    let (one, s, t) = f.ext_gcd(g);
    debug_assert_eq!(one.deg(), 0);
    let mut big_f = from_fp(f);
    let mut big_g = from_fp(g);
    let mut m = p.clone();
    for _ in 1..k {
        let diff = zsub(h, &zmul(&big_f, &big_g));
        let e: ZPoly = diff.iter().map(|c| {
            let (q, r) = c.div_rem(&m);
            debug_assert!(r.is_zero());
            q
        }).collect();
        let e = to_fp(&e, fld);
        let df = e.mul(&t).rem(f);
        let dg = e.mul(&s).rem(g);
        let df: ZPoly = from_fp(&df).iter().map(|c| c * &m).collect();
        let dg: ZPoly = from_fp(&dg).iter().map(|c| c * &m).collect();
        big_f = add_lower(&big_f, &df);
        big_g = add_lower(&big_g, &dg);
        m *= &p;
    }
    (zmod(&big_f, &m), zmod(&big_g, &m))
}

fn add_lower(a: &ZPoly, b: &ZPoly) -> ZPoly {
    let n = a.len().max(b.len());
    let z = BigInt::zero();
    ztrim((0..n).map(|i| a.get(i).unwrap_or(&z) + b.get(i).unwrap_or(&z)).collect())
}

/// Factor a monic squarefree integer polynomial into monic irreducibles.
fn zassenhaus(h: &ZPoly) -> Vec<ZPoly> {
    let n = h.len() - 1;
    if n <= 1 {
        return vec![h.clone()];
    }
    // a prime for which h stays squarefree
    let mut p = 3u64;
    let fld = loop {
        if crate::arith::is_prime_u64(p) {
            let f = PrimeField::new(p).unwrap();
            let hp = to_fp(h, f);
            if hp.gcd(&hp.derivative()).deg() == 0 {
                break f;
            }
        }
        p += 2;
    };
    let hp = to_fp(h, fld);
    let modular = berlekamp(&hp);
    if modular.len() == 1 {
        return vec![h.clone()];
    }
    let norm1: BigInt = h.iter().map(|c| c.abs()).sum();
    let bound = (BigInt::one() << n) * norm1 * 2;
    let pb = BigInt::from(p);
    let mut k = 1u32;
    let mut pk = pb.clone();
    while pk <= bound {
        pk *= &pb;
        k += 1;
    }
    // multifactor lift
    let mut lifted: Vec<ZPoly> = Vec::new();
    let mut rest = h.clone();
    for i in 0..modular.len() - 1 {
        let cof = modular[i + 1..].iter().fold(Poly::one(fld), |a, b| a.mul(b));
        let (fi, gi) = hensel2(&rest, &modular[i], &cof, k);
        lifted.push(fi);
        rest = gi;
    }
    lifted.push(rest);
    // recombination
    let mut remaining = h.clone();
    let mut pool = lifted;
    let mut found = Vec::new();
    let mut s = 1;
    while 2 * s <= pool.len() {
        let mut hit = None;
        for subset in combinations(pool.len(), s) {
            let prod = subset.iter().fold(vec![BigInt::one()], |a, &i| zmod(&zmul(&a, &pool[i]), &pk));
            let cand = zsym(&prod, &pk);
            if let Some(q) = zdiv_monic(&remaining, &cand) {
                hit = Some((subset, cand, q));
                break;
            }
        }
        match hit {
            Some((subset, cand, q)) => {
                found.push(cand);
                remaining = q;
                pool = pool.into_iter().enumerate().filter(|(i, _)| !subset.contains(i)).map(|(_, x)| x).collect();
            }
            None => s += 1,
        }
    }
    if remaining.len() > 1 {
        found.push(remaining);
    }
    found
}

fn combinations(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(k);
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    rec(0, n, k, &mut cur, &mut out);
    out
}
