//! Enumeration of super-, sub- and intermediate lattices via HNF patterns.

use super::FullLattice;
use crate::error::{Error, Result};
use crate::exactla::{hnf_basis, solve_echelon, IntMatrix, Mat, Rationals};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};

/// Ordered factorizations d = d_0·d_1·…·d_{n−1}.
fn diagonals(n: usize, d: u64) -> Vec<Vec<u64>> {
    if n == 1 {
        return vec![vec![d]];
    }
    let mut out = Vec::new();
    for d0 in 1..=d {
        if d % d0 == 0 {
            for mut rest in diagonals(n - 1, d / d0) {
                rest.insert(0, d0);
                out.push(rest);
            }
        }
    }
    out
}

/// Number of n×n HNF matrices of determinant d.
pub fn count_patterns(n: usize, d: u64) -> BigInt {
    diagonals(n, d)
        .iter()
        .map(|diag| diag.iter().enumerate().fold(BigInt::one(), |acc, (i, &di)| acc * num_traits::pow(BigInt::from(di), n - 1 - i)))
        .sum()
}

/// All upper-triangular HNF matrices of determinant d (entries right of each
/// pivot in [0, pivot)), in lexicographic order of their row-major entries.
pub fn hnf_patterns(n: usize, d: u64) -> Vec<IntMatrix> {
    let mut out = Vec::new();
    for diag in diagonals(n, d) {
        let mut h = IntMatrix::zeros(n, n);
        for (i, &di) in diag.iter().enumerate() {
            h[(i, i)] = BigInt::from(di);
        }
        // free slots (i, j), j > i, in row-major order
        let slots: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
        fill(&mut h, &slots, 0, &diag, &mut out);
    }
    out.sort_by_key(|a| a.to_rows());
    out
}

fn fill(h: &mut IntMatrix, slots: &[(usize, usize)], k: usize, diag: &[u64], out: &mut Vec<IntMatrix>) {
    if k == slots.len() {
        out.push(h.clone());
        return;
    }
    let (i, j) = slots[k];
    for v in 0..diag[i] {
        h[(i, j)] = BigInt::from(v);
        fill(h, slots, k + 1, diag, out);
    }
    h[(i, j)] = BigInt::zero();
}

fn check_budget(l: &FullLattice, max_index: u64, cap: usize) -> Result<()> {
    let n = l.dim();
    let total: BigInt = (1..=max_index).map(|d| count_patterns(n, d)).sum();
    if total > BigInt::from(cap) {
        return Err(Error::BudgetExceeded(format!("{total} candidate lattices exceed the cap {cap}")));
    }
    Ok(())
}

/// All K ⊇ L with [K : L] ≤ max_index, ordered by (index, transition HNF).
/// K = B·H^{−T}·Z^n runs over superlattices of index det H exactly once.
pub fn superlattices(l: &FullLattice, max_index: u64, cap: usize) -> Result<Vec<FullLattice>> {
    check_budget(l, max_index, cap)?;
    let n = l.dim();
    let b = Mat::from_cols(Rationals, n, &l.basis_elems());
    let mut out = Vec::new();
    for d in 1..=max_index {
        for h in hnf_patterns(n, d) {
            let hm = Mat::from_rows(Rationals, h.to_rows().iter().map(|r| r.iter().map(|x| BigRational::from_integer(x.clone())).collect()).collect(), n);
            let t = hm.inverse().unwrap().transpose();
            let cols = b.mul(&t).columns();
            out.push(FullLattice::new(l.algebra(), &cols)?);
        }
    }
    Ok(out)
}

/// All K ⊆ L with [L : K] ≤ max_index, ordered by (index, HNF).
pub fn sublattices(l: &FullLattice, max_index: u64, cap: usize) -> Result<Vec<FullLattice>> {
    check_budget(l, max_index, cap)?;
    let n = l.dim();
    let mut out = Vec::new();
    for d in 1..=max_index {
        for h in hnf_patterns(n, d) {
            out.push(FullLattice::from_int(l.algebra(), l.den(), &l.basis().mul(&h))?);
        }
    }
    Ok(out)
}

/// All lattices K with lower ⊆ K ⊆ upper, i.e. all subgroups of upper/lower,
/// ordered by index over `lower` and then canonically. Errors if more than
/// `cap` search nodes would be visited.
pub fn intermediate_lattices(lower: &FullLattice, upper: &FullLattice, cap: usize) -> Result<Vec<FullLattice>> {
    let n = lower.dim();
    if !upper.contains(lower) {
        return Err(Error::NotContained);
    }
    // coordinates of `lower` in the basis of `upper`, brought to HNF
    let cols: Vec<Vec<BigInt>> = lower.basis_elems().iter().map(|v| upper.coords(v).unwrap()).collect();
    let c = hnf_basis(&IntMatrix::from_cols(n, &cols));
    let diag: Vec<u64> = (0..n)
        .map(|i| c[(i, i)].to_u64().ok_or_else(|| Error::BudgetExceeded("index too large".into())))
        .collect::<Result<_>>()?;
    let mut h = IntMatrix::zeros(n, n);
    let mut found = Vec::new();
    let mut nodes = 0usize;
    dfs(&c, &diag, &mut h, 0, &mut found, &mut nodes, cap)?;
    let mut out: Vec<(BigInt, FullLattice)> = found
        .into_iter()
        .map(|hm| {
            let k = FullLattice::from_int(upper.algebra(), upper.den(), &upper.basis().mul(&hm)).unwrap();
            let det = (0..n).fold(BigInt::one(), |p, i| p * &hm[(i, i)]);
            (det, k)
        })
        .collect();
    // larger det H means smaller K; order by index over `lower`
    out.sort_by(|a, b| b.0.cmp(&a.0).then_with(|| a.1.cmp(&b.1)));
    Ok(out.into_iter().map(|(_, k)| k).collect())
}

fn dfs(
    c: &IntMatrix,
    diag: &[u64],
    h: &mut IntMatrix,
    j: usize,
    found: &mut Vec<IntMatrix>,
    nodes: &mut usize,
    cap: usize,
) -> Result<()> {
    let n = c.rows();
    if j == n {
        found.push(h.clone());
        return Ok(());
    }
    for dj in 1..=diag[j] {
        if diag[j] % dj != 0 {
            continue;
        }
        h[(j, j)] = BigInt::from(dj);
        // entries above the pivot: row i ranges over [0, h_ii)
        let ranges: Vec<u64> = (0..j).map(|i| h[(i, i)].to_u64().unwrap()).collect();
        let mut idx = vec![0u64; j];
        loop {
            *nodes += 1;
            if *nodes > cap {
                return Err(Error::BudgetExceeded(format!("more than {cap} intermediate-lattice search nodes")));
            }
            for i in 0..j {
                h[(i, j)] = BigInt::from(idx[i]);
            }
            let partial = h.select_cols(0..j + 1);
            if solve_echelon(&partial, &c.col(j)).is_some() {
                dfs(c, diag, h, j + 1, found, nodes, cap)?;
            }
            // odometer
            let mut k = 0;
            while k < j {
                idx[k] += 1;
                if idx[k] < ranges[k] {
                    break;
                }
                idx[k] = 0;
                k += 1;
            }
            if k == j {
                break;
            }
        }
        for i in 0..j {
            h[(i, j)] = BigInt::zero();
        }
    }
    h[(j, j)] = BigInt::zero();
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lattice::tests::alg_poly;

    #[test]
    fn pattern_counts() {
        assert_eq!(hnf_patterns(2, 2).len(), 3);
        assert_eq!(count_patterns(2, 2), BigInt::from(3));
        for n in 1..4 {
            for d in 1..7 {
                assert_eq!(BigInt::from(hnf_patterns(n, d).len()), count_patterns(n, d));
            }
        }
    }

    #[test]
    fn superlattices_of_z2() {
        let a = alg_poly(&[0, 0, 1]);
        let z = FullLattice::standard(&a);
        assert_eq!(superlattices(&z, 1, 100).unwrap(), vec![z.clone()]);
        let s = superlattices(&z, 2, 100).unwrap();
        assert_eq!(s.len(), 4);
        for k in &s {
            assert!(k.contains(&z));
            assert!(k.index_of(&z).unwrap() <= BigInt::from(2));
        }
        let mut dedup = s.clone();
        dedup.sort();
        dedup.dedup();
        assert_eq!(dedup.len(), 4);
        assert!(matches!(superlattices(&z, 50, 10), Err(Error::BudgetExceeded(_))));
    }

    #[test]
    fn intermediate_matches_superlattice_filter() {
        let a = alg_poly(&[1, 0, 0, 1]);
        let z = FullLattice::standard(&a);
        let upper = z.scale(&BigRational::new(1.into(), 2.into()));
        let inter = intermediate_lattices(&z, &upper, 100000).unwrap();
        // subgroups of (Z/2)^3: 1 + 7 + 7 + 1
        assert_eq!(inter.len(), 16);
        let sup = superlattices(&z, 8, 100000).unwrap();
        let mut filtered: Vec<_> = sup.into_iter().filter(|k| upper.contains(k)).collect();
        filtered.sort();
        let mut got = inter.clone();
        got.sort();
        assert_eq!(got, filtered);
        assert_eq!(inter[0], z);
        assert_eq!(inter[15], upper);
    }
}
