//! Exact linear algebra over the rationals.

use std::collections::BTreeMap;

use num_rational::Ratio;
use num_traits::{One, Zero};

pub type Q = Ratio<i64>;

pub fn q(n: i64) -> Q {
    Q::from_integer(n)
}

pub fn qf(n: i64, d: i64) -> Q {
    Q::new(n, d)
}

/// Inverse of a square matrix, or `None` when singular.
pub fn inverse(m: &[Vec<Q>]) -> Option<Vec<Vec<Q>>> {
    let n = m.len();
    let mut a: Vec<Vec<Q>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { Q::one() } else { Q::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].recip();
        for v in a[col].iter_mut() {
            *v *= inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col];
                for c in 0..2 * n {
                    let sub = f * a[col][c];
                    a[r][c] -= sub;
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

pub fn int_matrix(m: &[Vec<i64>]) -> Vec<Vec<Q>> {
    m.iter().map(|r| r.iter().map(|&x| q(x)).collect()).collect()
}

/// Incremental row echelon form over sparse rows; `insert` reports whether
/// the new vector enlarged the span.
#[derive(Default, Clone, Debug)]
pub struct SparseEchelon {
    rows: BTreeMap<usize, BTreeMap<usize, Q>>,
}

impl SparseEchelon {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Reduce `v` against the stored rows; the remainder is zero iff `v`
    /// lies in the span.
    pub fn reduce(&self, mut v: BTreeMap<usize, Q>) -> BTreeMap<usize, Q> {
        v.retain(|_, c| !c.is_zero());
        loop {
            let hit = v.keys().find(|k| self.rows.contains_key(k)).copied();
            let Some(p) = hit else { return v };
            let f = v[&p];
            for (&k, &c) in &self.rows[&p] {
                let e = v.entry(k).or_insert_with(Q::zero);
                *e -= f * c;
                if e.is_zero() {
                    v.remove(&k);
                }
            }
        }
    }

    pub fn insert(&mut self, v: BTreeMap<usize, Q>) -> bool {
        let r = self.reduce(v);
        let Some((&p, &lead)) = r.iter().next() else { return false };
        let inv = lead.recip();
        let r: BTreeMap<usize, Q> = r.into_iter().map(|(k, c)| (k, c * inv)).collect();
        // Keep earlier rows reduced at the new pivot.
        for row in self.rows.values_mut() {
            if let Some(&f) = row.get(&p) {
                for (&k, &c) in &r {
                    let e = row.entry(k).or_insert_with(Q::zero);
                    *e -= f * c;
                    if e.is_zero() {
                        row.remove(&k);
                    }
                }
            }
        }
        self.rows.insert(p, r);
        true
    }

    pub fn contains(&self, v: BTreeMap<usize, Q>) -> bool {
        self.reduce(v).is_empty()
    }
}

pub fn rank_of_dense(rows: &[Vec<Q>]) -> usize {
    let mut e = SparseEchelon::new();
    for r in rows {
        e.insert(r.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect());
    }
    e.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_a3_cartan() {
        let c = int_matrix(&[vec![2, -1, 0], vec![-1, 2, -1], vec![0, -1, 2]]);
        let inv = inverse(&c).unwrap();
        assert_eq!(inv[0][2], qf(1, 4));
        assert_eq!(inv[1][1], q(1));
        assert!(inverse(&int_matrix(&[vec![1, 2], vec![2, 4]])).is_none());
    }

    #[test]
    fn echelon_rank() {
        let rows = vec![vec![q(1), q(2), q(3)], vec![q(2), q(4), q(6)], vec![q(0), q(1), q(1)]];
        assert_eq!(rank_of_dense(&rows), 2);
    }
}
