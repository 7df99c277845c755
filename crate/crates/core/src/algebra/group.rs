//! Finite groups given by multiplication tables.

use std::collections::BTreeSet;

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FinGroup {
    pub labels: Vec<String>,
    table: Vec<Vec<usize>>,
    pub identity: usize,
    inverse: Vec<usize>,
}

impl FinGroup {
    /// Build from a full multiplication table, checking every group axiom.
    pub fn from_table(labels: Vec<String>, table: Vec<Vec<usize>>) -> Result<Self> {
        let n = labels.len();
        if n == 0 {
            return Err(Error::Structural("a group needs at least one element".into()));
        }
        if table.len() != n || table.iter().any(|r| r.len() != n) {
            return Err(Error::Structural(format!("multiplication table must be {n}x{n}")));
        }
        for (i, row) in table.iter().enumerate() {
            let seen: BTreeSet<usize> = row.iter().copied().collect();
            if seen.len() != n || row.iter().any(|&x| x >= n) {
                return Err(Error::Validation(format!("row {} of the table is not a permutation", labels[i])));
            }
        }
        for j in 0..n {
            let seen: BTreeSet<usize> = (0..n).map(|i| table[i][j]).collect();
            if seen.len() != n {
                return Err(Error::Validation(format!("column {} of the table is not a permutation", labels[j])));
            }
        }
        let identity = (0..n)
            .find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x))
            .ok_or_else(|| Error::Validation("table has no identity element".into()))?;
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return Err(Error::Validation(format!(
                            "table is not associative on ({}, {}, {})",
                            labels[a], labels[b], labels[c]
                        )));
                    }
                }
            }
        }
        let inverse = (0..n).map(|a| (0..n).find(|&b| table[a][b] == identity).unwrap()).collect();
        Ok(FinGroup { labels, table, identity, inverse })
    }

    /// Cyclic group with elements `e, r, r^2, ...`.
    pub fn cyclic(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structural("cyclic group of order 0".into()));
        }
        let labels = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "r".to_string(),
                _ => format!("r^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        Self::from_table(labels, table)
    }

    /// Direct product; element `(a, b)` has index `a * |other| + b`.
    pub fn product(&self, other: &FinGroup) -> Result<Self> {
        let (m, n) = (self.order(), other.order());
        let mut labels = Vec::with_capacity(m * n);
        for a in 0..m {
            for b in 0..n {
                labels.push(format!("({},{})", self.labels[a], other.labels[b]));
            }
        }
        let table = (0..m * n).map(|x| (0..m * n).map(|y| self.mul(x / n, y / n) * n + other.mul(x % n, y % n)).collect()).collect();
        Self::from_table(labels, table)
    }

    /// Dihedral group of order `2n` with elements `r^k` and `s r^k`.
    pub fn dihedral(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Structural("dihedral group needs n >= 1".into()));
        }
        // Index k for r^k, n + k for s r^k; s r^k s = r^{-k}.
        let lab = |k: usize| {
            if k == 0 {
                "e".to_string()
            } else if k == 1 {
                "r".to_string()
            } else {
                format!("r^{k}")
            }
        };
        let mut labels: Vec<String> = (0..n).map(lab).collect();
        labels.extend((0..n).map(|k| if k == 0 { "s".to_string() } else { format!("s{}", lab(k)) }));
        let table = (0..2 * n)
            .map(|x| {
                (0..2 * n)
                    .map(|y| {
                        let (sx, kx) = (x / n, x % n);
                        let (sy, ky) = (y / n, y % n);
                        // s^a r^b s^c r^d = s^{a+c} r^{(-1)^c b + d}
                        let k = if sy == 1 { (n - kx + ky) % n } else { (kx + ky) % n };
                        ((sx + sy) % 2) * n + k
                    })
                    .collect()
            })
            .collect();
        Self::from_table(labels, table)
    }

    pub fn trivial() -> Self {
        Self::cyclic(1).unwrap()
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.table[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn pow(&self, a: usize, k: usize) -> usize {
        (0..k).fold(self.identity, |acc, _| self.mul(acc, a))
    }

    pub fn element_order(&self, a: usize) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != self.identity {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    /// Subgroup generated by `gens`, sorted.
    pub fn generated(&self, gens: &[usize]) -> Vec<usize> {
        let mut set: BTreeSet<usize> = BTreeSet::from([self.identity]);
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in gens {
                let y = self.mul(x, g);
                if set.insert(y) {
                    frontier.push(y);
                }
            }
        }
        set.into_iter().collect()
    }

    pub fn is_subgroup(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        set.contains(&self.identity) && h.iter().all(|&a| h.iter().all(|&b| set.contains(&self.mul(a, self.inv(b)))))
    }

    pub fn is_normal(&self, h: &[usize]) -> bool {
        let set: BTreeSet<usize> = h.iter().copied().collect();
        self.is_subgroup(h) && (0..self.order()).all(|g| h.iter().all(|&x| set.contains(&self.mul(self.mul(g, x), self.inv(g)))))
    }

    /// Small generating set, chosen greedily in index order.
    pub fn generators(&self) -> Vec<usize> {
        let mut gens = Vec::new();
        let mut span = vec![self.identity];
        for a in 0..self.order() {
            if !span.contains(&a) {
                gens.push(a);
                span = self.generated(&gens);
            }
        }
        gens
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constructions_validate() {
        let c6 = FinGroup::cyclic(6).unwrap();
        assert_eq!(c6.element_order(1), 6);
        assert_eq!(c6.inv(2), 4);
        let s3 = FinGroup::dihedral(3).unwrap();
        assert_eq!(s3.order(), 6);
        let rot = s3.generated(&[1]);
        assert_eq!(rot.len(), 3);
        assert!(s3.is_normal(&rot));
        assert!(!s3.is_normal(&s3.generated(&[3])));
        let v4 = FinGroup::cyclic(2).unwrap().product(&FinGroup::cyclic(2).unwrap()).unwrap();
        assert_eq!(v4.generators().len(), 2);
    }

    #[test]
    fn bad_tables_rejected() {
        let labels = vec!["a".to_string(), "b".to_string()];
        assert!(FinGroup::from_table(labels.clone(), vec![vec![0, 1], vec![1, 1]]).is_err());
        assert!(FinGroup::from_table(labels, vec![vec![1, 0], vec![0, 1]]).is_ok());
    }
}
