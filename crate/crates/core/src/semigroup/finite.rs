//! Analysis of a finite commutative semigroup given by its table.

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteSemigroupTable {
    pub table: Vec<Vec<usize>>,
    pub idempotents: Vec<usize>,
    pub invertible: Vec<bool>,
    /// e_a for invertible a.
    pub e: Vec<Option<usize>>,
    /// a^{-1} for invertible a.
    pub inverse: Vec<Option<usize>>,
    /// (c, G(c)) for each idempotent c.
    pub groups: Vec<(usize, Vec<usize>)>,
    pub w_class_of: Vec<usize>,
    pub w_classes: Vec<Vec<usize>>,
    /// Multiplication of W(S) on class indices.
    pub w_table: Vec<Vec<usize>>,
}

pub fn finite_semigroup_analyze(table: &[Vec<usize>]) -> Result<FiniteSemigroupTable> {
    let n = table.len();
    for (i, row) in table.iter().enumerate() {
        if row.len() != n {
            return Err(Error::NotClosed(format!("row {i} has {} entries, expected {n}", row.len())));
        }
        if let Some(&x) = row.iter().find(|&&x| x >= n) {
            return Err(Error::NotClosed(format!("entry {x} outside the element set")));
        }
    }
    let m = |a: usize, b: usize| table[a][b];
    for a in 0..n {
        for b in 0..n {
            if m(a, b) != m(b, a) {
                return Err(Error::NotCommutative);
            }
            for c in 0..n {
                if m(m(a, b), c) != m(a, m(b, c)) {
                    return Err(Error::NotAssociative);
                }
            }
        }
    }
    let idempotents: Vec<usize> = (0..n).filter(|&c| m(c, c) == c).collect();
    let mut e = vec![None; n];
    for a in 0..n {
        for b in 0..n {
            let c = m(a, b);
            if m(a, c) == a {
                assert!(e[a].map_or(true, |x| x == c), "e_a is unique");
                e[a] = Some(c);
            }
        }
    }
    let invertible: Vec<bool> = e.iter().map(Option::is_some).collect();
    let inverse: Vec<Option<usize>> = (0..n)
        .map(|a| {
            let ea = e[a]?;
            let cands: Vec<usize> = (0..n).filter(|&b| m(a, b) == ea && m(b, ea) == b).collect();
            assert_eq!(cands.len(), 1, "a^-1 exists and is unique");
            Some(cands[0])
        })
        .collect();
    let groups: Vec<(usize, Vec<usize>)> =
        idempotents.iter().map(|&c| (c, (0..n).filter(|&a| e[a] == Some(c)).collect())).collect();
    // w-classes: a1 = a2, or each lies in the other's multiple set
    let multiples: Vec<Vec<bool>> = (0..n).map(|a| (0..n).fold(vec![false; n], |mut s, x| { s[m(a, x)] = true; s })).collect();
    let weq = |a1: usize, a2: usize| a1 == a2 || (multiples[a1][a2] && multiples[a2][a1]);
    let mut w_class_of = vec![usize::MAX; n];
    let mut w_classes: Vec<Vec<usize>> = Vec::new();
    for a in 0..n {
        if w_class_of[a] != usize::MAX {
            continue;
        }
        let cls: Vec<usize> = (a..n).filter(|&b| weq(a, b)).collect();
        for &b in &cls {
            w_class_of[b] = w_classes.len();
        }
        w_classes.push(cls);
    }
    let w_table: Vec<Vec<usize>> = w_classes
        .iter()
        .map(|x| w_classes.iter().map(|y| w_class_of[m(x[0], y[0])]).collect())
        .collect();
    for a in 0..n {
        if let Some(ea) = e[a] {
            let g = &groups.iter().find(|(c, _)| *c == ea).expect("e_a is idempotent").1;
            assert_eq!(&w_classes[w_class_of[a]], g, "[a]_w = G(e_a) for invertible a");
        }
    }
    Ok(FiniteSemigroupTable { table: table.to_vec(), idempotents, invertible, e, inverse, groups, w_class_of, w_classes, w_table })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn zero_one() {
        let t = finite_semigroup_analyze(&[vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(t.idempotents, vec![0, 1]);
        assert_eq!(t.groups, vec![(0, vec![0]), (1, vec![1])]);
        assert_eq!(t.w_classes.len(), 2);
    }

    #[test]
    fn cyclic_group_is_one_w_class() {
        let n = 5;
        let table: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        let t = finite_semigroup_analyze(&table).unwrap();
        assert_eq!(t.w_classes, vec![(0..n).collect::<Vec<_>>()]);
        assert_eq!(t.inverse[2], Some(3));
    }

    #[test]
    fn multiplicative_mod_12() {
        // Z/12 under multiplication: the units form G(1)
        let table: Vec<Vec<usize>> = (0..12).map(|a| (0..12).map(|b| a * b % 12).collect()).collect();
        let t = finite_semigroup_analyze(&table).unwrap();
        assert_eq!(t.idempotents, vec![0, 1, 4, 9]);
        let g1 = &t.groups.iter().find(|(c, _)| *c == 1).unwrap().1;
        assert_eq!(g1, &vec![1, 5, 7, 11]);
        assert!(!t.invertible[2]);
    }

    #[test]
    fn rejects_bad_tables() {
        assert_eq!(finite_semigroup_analyze(&[vec![0, 2], vec![0, 1]]).unwrap_err(), Error::NotClosed("entry 2 outside the element set".into()));
        assert_eq!(finite_semigroup_analyze(&[vec![0, 0], vec![1, 1]]).unwrap_err(), Error::NotCommutative);
        // commutative, not associative
        assert_eq!(finite_semigroup_analyze(&[vec![1, 0], vec![0, 0]]).unwrap_err(), Error::NotAssociative);
    }
}
