//! Block decomposition A = ⊕ A^(j), A^(j) = F^(j) ⊕ N^(j), and the radical
//! and socle filtrations.

use super::{irreducible_factors, Algebra, Element, Poly, PolyField};
use crate::exactla::{extend_basis, span_basis, Field, Mat};

#[derive(Clone, Debug)]
pub struct Block<F: Field> {
    /// Coordinates of 1_{A^(j)}.
    pub unit: Element<F>,
    /// Basis of A^(j).
    pub basis: Vec<Element<F>>,
    /// Basis of F^(j): 1_{A^(j)}, a, a², ... for the semisimple generator a.
    pub field_basis: Vec<Element<F>>,
    /// Basis of N^(j) = R ∩ A^(j).
    pub nil_basis: Vec<Element<F>>,
    pub generator: Element<F>,
    /// Minimal polynomial of the generator (irreducible).
    pub min_poly: Poly<F>,
    /// Largest n with (N^(j))^n ≠ 0.
    pub nilpotency: usize,
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub blocks: Vec<Block<F>>,
    /// Basis of the radical R.
    pub radical: Vec<Element<F>>,
    /// Basis of F = ⊕ F^(j).
    pub field_part: Vec<Element<F>>,
    /// Projection onto F along R.
    pub pr_f: Mat<F>,
    pub n_max: usize,
}

impl<F: Field> Decomposition<F> {
    pub fn project(&self, a: &[F::Elem]) -> Element<F> {
        self.pr_f.mul_vec(a)
    }

    pub fn k(&self) -> usize {
        self.blocks.len()
    }
}

#[derive(Clone, Debug)]
pub struct Filtrations<F: Field> {
    /// Bases of R^0 ⊃ R^1 ⊃ ... ⊃ R^{n_max+1} = 0.
    pub radical_chain: Vec<Vec<Element<F>>>,
    /// Bases of 0 = S_0 ⊂ S_1 ⊂ ... ⊂ S_{n_max+1} = A.
    pub socle_chain: Vec<Vec<Element<F>>>,
    /// Representatives of a basis of R^[l] = R^l/R^{l+1}, l = 0..=n_max.
    pub radical_quotients: Vec<Vec<Element<F>>>,
    /// Representatives of a basis of S_[l] = S_l/S_{l−1}, index l = 1..=n_max+1
    /// (entry 0 is empty).
    pub socle_quotients: Vec<Vec<Element<F>>>,
    pub n_max: usize,
}

impl<F: Field> Filtrations<F> {
    pub fn radical_dims(&self) -> Vec<usize> {
        self.radical_chain.iter().map(|b| b.len()).collect()
    }

    pub fn socle_dims(&self) -> Vec<usize> {
        self.socle_chain.iter().map(|b| b.len()).collect()
    }
}

enum Probe<F: Field> {
    Split(Vec<Element<F>>),
    /// Restricted charpoly is a power of one irreducible q.
    Pure(Poly<F>),
}

fn block_basis<F: Field>(alg: &Algebra<F>, e: &[F::Elem]) -> Vec<Element<F>> {
    let prods: Vec<Element<F>> = (0..alg.dim()).map(|i| alg.mul(e, &alg.basis_vec(i))).collect();
    span_basis(alg.field(), alg.dim(), &prods)
}

fn probe<F: PolyField>(alg: &Algebra<F>, e: &[F::Elem], basis: &[Element<F>], x: &[F::Elem]) -> Probe<F> {
    let chi = Poly::new(alg.field(), alg.restricted_matrix(x, basis).charpoly());
    let qs = irreducible_factors(&chi);
    if qs.len() == 1 {
        return Probe::Pure(qs.into_iter().next().unwrap());
    }
    let mut idems = Vec::with_capacity(qs.len());
    for q in &qs {
        let mut pi = Poly::one(alg.field());
        let mut rest = chi.clone();
        loop {
            let (d, r) = rest.divrem(q);
            if !r.is_zero() {
                break;
            }
            rest = d;
            pi = pi.mul(q);
        }
        // h ≡ 1 mod q^m, h ≡ 0 mod the complementary factor
        let (_, _, t) = pi.ext_gcd(&rest);
        let h = t.mul(&rest);
        idems.push(alg.mul(e, &alg.eval_poly(&h, x)));
    }
    Probe::Split(idems)
}

/// Candidate elements of a block: its basis, then small combinations.
fn candidates<'a, F: Field>(alg: &'a Algebra<F>, basis: &'a [Element<F>]) -> impl Iterator<Item = Element<F>> + 'a {
    let f = alg.field();
    let d = basis.len();
    let direct = basis.to_vec().into_iter();
    let combos = (0u64..4000).map(move |s| {
        // deterministic pseudo-random coefficients in [−3, 3]
        let mut state = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        let mut v = alg.zero();
        for b in basis.iter().take(d) {
            state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
            let c = ((state >> 33) % 7) as i64 - 3;
            v = alg.add(&v, &alg.scale(&f.from_i64(c), b));
        }
        v
    });
    direct.chain(combos)
}

pub(super) fn decompose<F: PolyField>(alg: &Algebra<F>) -> Decomposition<F> {
    let f = alg.field();
    let n = alg.dim();
    let radical = alg.radical_basis();
    let mut units: Vec<Element<F>> = vec![alg.unit().clone()];
    let mut generators: Vec<Option<(Element<F>, Poly<F>)>> = vec![None];
    'restart: loop {
        for idx in 0..units.len() {
            if generators[idx].is_some() {
                continue;
            }
            let e = units[idx].clone();
            let basis = block_basis(alg, &e);
            let nil: Vec<Element<F>> =
                span_basis(f, n, &radical.iter().map(|r| alg.mul(&e, r)).collect::<Vec<_>>());
            let fdim = basis.len() - nil.len();
            let mut found = None;
            for x in candidates(alg, &basis) {
                match probe(alg, &e, &basis, &x) {
                    Probe::Split(idems) => {
                        units.remove(idx);
                        generators.remove(idx);
                        for i in idems {
                            units.push(i);
                            generators.push(None);
                        }
                        continue 'restart;
                    }
                    Probe::Pure(q) if q.deg() == fdim => {
                        found = Some((x, q));
                        break;
                    }
                    Probe::Pure(_) => {}
                }
            }
            let (x, q) = found.expect("no primitive element found in a local block");
            generators[idx] = Some((x, q));
        }
        break;
    }
    let mut blocks: Vec<Block<F>> = units
        .into_iter()
        .zip(generators)
        .map(|(e, g)| {
            let (x, q) = g.unwrap();
            let (xs, _) = alg.jordan_chevalley(&x);
            let basis = block_basis(alg, &e);
            let nil_basis = span_basis(f, n, &radical.iter().map(|r| alg.mul(&e, r)).collect::<Vec<_>>());
            let mut field_basis = vec![e.clone()];
            for _ in 1..q.deg() {
                let next = alg.mul(field_basis.last().unwrap(), &xs);
                field_basis.push(next);
            }
            let mut nilpotency = 0;
            let mut pw = nil_basis.clone();
            while !pw.is_empty() {
                nilpotency += 1;
                pw = alg.product_span(&pw, &nil_basis);
            }
            Block { unit: e, basis, field_basis, nil_basis, generator: xs, min_poly: q, nilpotency }
        })
        .collect();
    blocks.sort_by(|a, b| {
        (b.field_basis.len(), b.nil_basis.len())
            .cmp(&(a.field_basis.len(), a.nil_basis.len()))
            .then_with(|| a.min_poly.coeffs().cmp(b.min_poly.coeffs()))
            .then_with(|| a.unit.cmp(&b.unit))
    });
    let field_part: Vec<Element<F>> = blocks.iter().flat_map(|b| b.field_basis.iter().cloned()).collect();
    let mut cols = field_part.clone();
    cols.extend(radical.iter().cloned());
    let bm = Mat::from_cols(f, n, &cols);
    let binv = bm.inverse().expect("F ⊕ R spans A");
    let mut d = Mat::zeros(f, n, n);
    for i in 0..field_part.len() {
        d.set(i, i, f.one());
    }
    let pr_f = bm.mul(&d).mul(&binv);
    let n_max = blocks.iter().map(|b| b.nilpotency).max().unwrap_or(0);
    Decomposition { blocks, radical, field_part, pr_f, n_max }
}

pub(super) fn filtrations<F: PolyField>(alg: &Algebra<F>) -> Filtrations<F> {
    let f = alg.field();
    let n = alg.dim();
    let full: Vec<Element<F>> = (0..n).map(|i| alg.basis_vec(i)).collect();
    let r1 = alg.radical_basis();
    let mut radical_chain = vec![full.clone()];
    let mut cur = r1.clone();
    loop {
        let empty = cur.is_empty();
        radical_chain.push(cur.clone());
        if empty {
            break;
        }
        cur = alg.product_span(&cur, &r1);
    }
    let n_max = radical_chain.len() - 2;
    let socle_chain: Vec<Vec<Element<F>>> = (0..=n_max + 1).map(|l| alg.annihilator(&radical_chain[l])).collect();
    let radical_quotients =
        (0..=n_max).map(|l| extend_basis(f, n, &radical_chain[l + 1], &radical_chain[l])).collect();
    let mut socle_quotients = vec![Vec::new()];
    for l in 1..=n_max + 1 {
        socle_quotients.push(extend_basis(f, n, &socle_chain[l - 1], &socle_chain[l]));
    }
    Filtrations { radical_chain, socle_chain, radical_quotients, socle_quotients, n_max }
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::exactla::{in_span, PrimeField, Rationals};
    use num_rational::BigRational;

    /// Q[x,y]/(xy, x^4, y^3) ⊕ Q[z]/(z^2) ⊕ Q on the monomial basis
    /// 1, x, x², x³, y, y², 1', z, 1''.
    pub(crate) fn example_algebra() -> Algebra<Rationals> {
        let n = 9;
        // (x-degree, y-degree) of the first six basis monomials
        let mono = [(0, 0), (1, 0), (2, 0), (3, 0), (0, 1), (0, 2)];
        let z = BigRational::from_integer(0.into());
        let mut c = vec![vec![vec![z.clone(); n]; n]; n];
        for (i, &(a1, b1)) in mono.iter().enumerate() {
            for (j, &(a2, b2)) in mono.iter().enumerate() {
                let (a, b) = (a1 + a2, b1 + b2);
                if (a > 0 && b > 0) || a >= 4 || b >= 3 {
                    continue;
                }
                let k = mono.iter().position(|&m| m == (a, b)).unwrap();
                c[i][j][k] = rat(1);
            }
        }
        c[6][6][6] = rat(1);
        c[6][7][7] = rat(1);
        c[7][6][7] = rat(1);
        c[8][8][8] = rat(1);
        let mut unit = vec![z; n];
        unit[0] = rat(1);
        unit[6] = rat(1);
        unit[8] = rat(1);
        Algebra::new(Rationals, c, unit).unwrap()
    }

    #[test]
    fn two_idempotents_split() {
        let a = Algebra::from_polynomial_i64(&[-1, 0, 1]).unwrap();
        let d = a.decompose();
        assert_eq!(d.k(), 2);
        assert!(d.radical.is_empty());
        let half = BigRational::new(1.into(), 2.into());
        let mut units: Vec<_> = d.blocks.iter().map(|b| b.unit.clone()).collect();
        units.sort();
        assert_eq!(units, vec![vec![half.clone(), -half.clone()], vec![half.clone(), half]]);
    }

    #[test]
    fn dual_numbers_single_block() {
        let a = Algebra::from_polynomial_i64(&[0, 0, 1]).unwrap();
        let d = a.decompose();
        assert_eq!(d.k(), 1);
        assert_eq!(d.blocks[0].field_basis.len(), 1);
        assert_eq!(d.radical.len(), 1);
        assert_eq!(d.project(&a.elem_from_ints(&[1, 1])), a.elem_from_ints(&[1, 0]));
        assert_eq!(d.project(&a.elem_from_ints(&[0, 1])), a.zero());
    }

    #[test]
    fn example_structure() {
        let a = example_algebra();
        let d = a.decompose();
        assert_eq!(d.k(), 3);
        let nj: Vec<usize> = d.blocks.iter().map(|b| b.nilpotency).collect();
        assert_eq!(nj, vec![3, 1, 0]);
        assert_eq!(d.n_max, 3);
        let fl = a.filtrations();
        assert_eq!(fl.radical_dims(), vec![9, 6, 3, 1, 0]);
        assert_eq!(fl.socle_dims(), vec![0, 4, 7, 8, 9]);
        assert_eq!(fl.n_max, 3);
    }

    #[test]
    fn block_and_projection_laws() {
        let a = example_algebra();
        let d = a.decompose();
        let f = Rationals;
        let sum = d.blocks.iter().fold(a.zero(), |s, b| a.add(&s, &b.unit));
        assert_eq!(&sum, a.unit());
        for (i, bi) in d.blocks.iter().enumerate() {
            for (j, bj) in d.blocks.iter().enumerate() {
                if i != j {
                    for x in &bi.basis {
                        for y in &bj.basis {
                            assert!(a.is_zero_elem(&a.mul(x, y)));
                        }
                    }
                }
            }
            for v in &bi.nil_basis {
                assert!(a.is_zero_elem(&a.pow(v, a.dim() as u64)));
            }
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let (x, y) = (a.basis_vec(i), a.basis_vec(j));
                assert_eq!(d.project(&a.mul(&x, &y)), a.mul(&d.project(&x), &d.project(&y)));
            }
        }
        let fl = a.filtrations();
        for l1 in 0..fl.radical_chain.len() {
            for l2 in 0..fl.radical_chain.len() {
                let target = &fl.radical_chain[(l1 + l2).min(fl.radical_chain.len() - 1)];
                let prod = a.product_span(&fl.radical_chain[l1], &fl.radical_chain[l2]);
                for v in &prod {
                    assert!(in_span(f, a.dim(), target, v));
                }
                // equality of dimensions (quotient multiplication is onto)
                assert_eq!(prod.len(), target.len());
                if l2 < fl.socle_chain.len() {
                    let p = a.product_span(&fl.radical_chain[l1], &fl.socle_chain[l2]);
                    let tgt: &[Element<Rationals>] = if l1 < l2 { &fl.socle_chain[l2 - l1] } else { &[] };
                    for v in &p {
                        assert!(in_span(f, a.dim(), tgt, v));
                    }
                }
            }
        }
    }

    #[test]
    fn finite_field_blocks() {
        let f5 = PrimeField::new(5).unwrap();
        // F_5[t]/(t^2 - 1) ≅ F_5 × F_5
        let a = Algebra::from_poly_coeffs(f5, &[4, 0, 1]).unwrap();
        assert_eq!(a.decompose().k(), 2);
        // F_2[t]/((t^2+t+1)^2)
        let f2 = PrimeField::new(2).unwrap();
        let b = Algebra::from_poly_coeffs(f2, &[1, 0, 1, 0, 1]).unwrap();
        let d = b.decompose();
        assert_eq!(d.k(), 1);
        assert_eq!(d.blocks[0].field_basis.len(), 2);
        assert_eq!(d.radical.len(), 2);
    }
}
