//! Chevalley-basis oracle.
//!
//! Builds the simple Lie algebra of a reduced root system in a Chevalley
//! basis `{h_i} ∪ {e_alpha}`, grades it by a root homomorphism, and extracts
//! trilinear pairs from the grading so that every combinatorial answer can be
//! cross-checked against a concrete algebra.
//!
//! Structure constants are fixed by choosing `N = +(p+1)` on extraspecial
//! pairs and propagating through the standard relations between the
//! constants; the Jacobi identity is then verified rather than assumed.

mod graded;
mod omega;
mod pair;

pub use graded::{extract_pair, grade, marking_pair, GradedLieAlgebra};
pub use omega::{ctj_fkts_check, omega_lemma_checks, FktsReport, Omega, OmegaReport};
pub use pair::{CheckMode, IdentityReport, Tensor, TrilinearPair, Violation, MINUS, PLUS};

use std::collections::HashMap;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{Error, Result, Root, RootSystem};

/// Tie-break among roots of equal height when choosing extraspecial pairs.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RootOrder {
    /// `alpha_1 < alpha_2 < ...`
    Lex,
    /// The opposite tie-break; yields different signs and the same algebra
    /// up to isomorphism.
    Reversed,
}

#[derive(Clone, Debug)]
pub struct ChevalleyAlgebra {
    pub rs: RootSystem,
    pub dim: usize,
    pub order: RootOrder,
    /// `table[a * dim + b]` is `[b_a, b_b]` as a sparse combination.
    table: Vec<Vec<(usize, i64)>>,
    n_const: HashMap<(usize, usize), i64>,
}

impl ChevalleyAlgebra {
    pub fn new(rs: &RootSystem, order: RootOrder) -> Result<Self> {
        if !rs.ty.is_reduced() {
            return Err(Error::Unsupported(format!("{} is not reduced", rs.ty)));
        }
        let n = rs.rank();
        let dim = n + rs.roots.len();
        let n_const = structure_constants(rs, order)?;
        let mut table = vec![Vec::new(); dim * dim];
        for (k, r) in rs.roots.iter().enumerate() {
            for i in 0..n {
                let c = rs.pairing(r, i);
                if c != 0 {
                    table[i * dim + n + k] = vec![(n + k, c)];
                    table[(n + k) * dim + i] = vec![(n + k, -c)];
                }
            }
        }
        for (k, a) in rs.roots.iter().enumerate() {
            for (l, b) in rs.roots.iter().enumerate() {
                let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
                let entry = if sum.iter().all(|&c| c == 0) {
                    coroot(rs, a).into_iter().enumerate().filter(|(_, c)| *c != 0).collect()
                } else if let Some(m) = rs.index_of(&sum) {
                    vec![(n + m, n_const[&(k, l)])]
                } else {
                    Vec::new()
                };
                table[(n + k) * dim + n + l] = entry;
            }
        }
        Ok(ChevalleyAlgebra { rs: rs.clone(), dim, order, table, n_const })
    }

    pub fn rank(&self) -> usize {
        self.rs.rank()
    }

    pub fn root_basis(&self, k: usize) -> usize {
        self.rank() + k
    }

    /// Root index of a basis element, `None` for the Cartan part.
    pub fn basis_root(&self, b: usize) -> Option<usize> {
        b.checked_sub(self.rank())
    }

    /// `N_{alpha,beta}` by root indices (zero when the sum is not a root).
    pub fn n_const(&self, a: usize, b: usize) -> i64 {
        self.n_const.get(&(a, b)).copied().unwrap_or(0)
    }

    pub fn bracket_basis(&self, a: usize, b: usize) -> &[(usize, i64)] {
        &self.table[a * self.dim + b]
    }

    /// Bracket of sparse integer combinations.
    pub fn bracket_sparse(&self, x: &[(usize, i64)], y: &[(usize, i64)]) -> Vec<(usize, i64)> {
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for &(a, ca) in x {
            for &(b, cb) in y {
                for &(o, c) in self.bracket_basis(a, b) {
                    *acc.entry(o).or_default() += ca * cb * c;
                }
            }
        }
        let mut v: Vec<(usize, i64)> = acc.into_iter().filter(|(_, c)| *c != 0).collect();
        v.sort();
        v
    }

    /// Bracket of dense vectors over any ring the integers embed into.
    pub fn bracket<T>(&self, x: &[T], y: &[T]) -> Vec<T>
    where
        T: Copy + num_traits::Zero + std::ops::Mul<Output = T> + std::ops::AddAssign + From<i64>,
    {
        let mut out = vec![T::zero(); self.dim];
        for (a, &xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for &(o, c) in self.bracket_basis(a, b) {
                    out[o] += xa * yb * T::from(c);
                }
            }
        }
        out
    }

    fn jacobi_at(&self, a: usize, b: usize, c: usize) -> bool {
        let t = |x: usize, y: usize, z: usize| self.bracket_sparse(self.bracket_basis(x, y), &[(z, 1)]);
        let mut acc: HashMap<usize, i64> = HashMap::new();
        for part in [t(a, b, c), t(b, c, a), t(c, a, b)] {
            for (o, v) in part {
                *acc.entry(o).or_default() += v;
            }
        }
        acc.values().all(|&v| v == 0)
    }

    pub fn check_antisymmetry(&self) -> Result<()> {
        for a in 0..self.dim {
            for b in 0..self.dim {
                let neg: Vec<(usize, i64)> = self.bracket_basis(b, a).iter().map(|&(o, c)| (o, -c)).collect();
                let mut lhs = self.bracket_basis(a, b).to_vec();
                lhs.sort();
                let mut neg = neg;
                neg.sort();
                if lhs != neg {
                    return Err(Error::Internal(format!("bracket not antisymmetric at ({a}, {b})")));
                }
            }
        }
        Ok(())
    }

    /// Jacobi identity on every basis triple. Returns the number of triples.
    pub fn check_jacobi_exhaustive(&self) -> Result<usize> {
        let mut count = 0;
        for a in 0..self.dim {
            for b in a + 1..self.dim {
                for c in b + 1..self.dim {
                    if !self.jacobi_at(a, b, c) {
                        return Err(Error::Internal(format!("Jacobi fails on basis triple ({a}, {b}, {c})")));
                    }
                    count += 1;
                }
            }
        }
        Ok(count)
    }

    pub fn check_jacobi_sampled(&self, samples: usize, seed: u64) -> Result<usize> {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..samples {
            let (a, b, c) = (rng.gen_range(0..self.dim), rng.gen_range(0..self.dim), rng.gen_range(0..self.dim));
            if !self.jacobi_at(a, b, c) {
                return Err(Error::Internal(format!("Jacobi fails on basis triple ({a}, {b}, {c}), seed {seed}")));
            }
        }
        Ok(samples)
    }

    /// Exhaustive up to rank 6, sampled above.
    pub fn check_jacobi(&self, seed: u64) -> Result<usize> {
        if self.rank() <= 6 {
            self.check_jacobi_exhaustive()
        } else {
            self.check_jacobi_sampled(100_000, seed)
        }
    }
}

/// `h_alpha` in the basis `h_1..h_n`.
pub fn coroot(rs: &RootSystem, a: &[i64]) -> Vec<i64> {
    let len = rs.inner(a, a);
    (0..rs.rank())
        .map(|i| {
            let num = a[i] * rs.gram[i][i];
            debug_assert_eq!(num % len, 0);
            num / len
        })
        .collect()
}

fn structure_constants(rs: &RootSystem, order: RootOrder) -> Result<HashMap<(usize, usize), i64>> {
    let neg = |v: &[i64]| -> Root { v.iter().map(|c| -c).collect() };
    let add = |a: &[i64], b: &[i64]| -> Root { a.iter().zip(b).map(|(x, y)| x + y).collect() };
    let mut pos: Vec<usize> = (0..rs.roots.len()).filter(|&k| RootSystem::is_positive(&rs.roots[k])).collect();
    pos.sort_by(|&a, &b| {
        let (ra, rb) = (&rs.roots[a], &rs.roots[b]);
        let h = RootSystem::height(ra).cmp(&RootSystem::height(rb));
        h.then_with(|| match order {
            RootOrder::Lex => rb.cmp(ra),
            RootOrder::Reversed => ra.cmp(rb),
        })
    });
    let mut rank_in_order = vec![usize::MAX; rs.roots.len()];
    for (p, &k) in pos.iter().enumerate() {
        rank_in_order[k] = p;
    }

    let mut n_pos: HashMap<(usize, usize), i64> = HashMap::new();

    // N for arbitrary roots, reduced to pairs of positive roots whose sum
    // has already been handled.
    fn get(
        rs: &RootSystem,
        n_pos: &HashMap<(usize, usize), i64>,
        a: &[i64],
        b: &[i64],
    ) -> Result<i64> {
        let sum: Root = a.iter().zip(b).map(|(x, y)| x + y).collect();
        if !rs.is_root(&sum) {
            return Ok(0);
        }
        let pa = RootSystem::is_positive(a);
        let pb = RootSystem::is_positive(b);
        let neg = |v: &[i64]| -> Root { v.iter().map(|c| -c).collect() };
        match (pa, pb) {
            (true, true) => {
                let (ia, ib) = (rs.index_of(a).unwrap(), rs.index_of(b).unwrap());
                n_pos
                    .get(&(ia, ib))
                    .copied()
                    .ok_or_else(|| Error::Internal(format!("structure constant for {a:?}, {b:?} requested too early")))
            }
            (false, false) => Ok(-get(rs, n_pos, &neg(a), &neg(b))?),
            (false, true) => Ok(-get(rs, n_pos, b, a)?),
            (true, false) => {
                let c = neg(&sum);
                let (num, den) = if RootSystem::is_positive(&c) {
                    (rs.inner(&c, &c) * get(rs, n_pos, &c, a)?, rs.inner(b, b))
                } else {
                    (rs.inner(&c, &c) * get(rs, n_pos, b, &c)?, rs.inner(a, a))
                };
                if num % den != 0 {
                    return Err(Error::Internal("non-integral structure constant".into()));
                }
                Ok(num / den)
            }
        }
    }

    for &xi in &pos {
        let x = &rs.roots[xi];
        if RootSystem::height(x) < 2 {
            continue;
        }
        let mut pairs: Vec<(usize, usize)> = pos
            .iter()
            .filter_map(|&a| {
                let b = rs.index_of(&x.iter().zip(&rs.roots[a]).map(|(p, q)| p - q).collect::<Vec<_>>())?;
                (RootSystem::is_positive(&rs.roots[b]) && rank_in_order[a] < rank_in_order[b]).then_some((a, b))
            })
            .collect();
        pairs.sort_by_key(|&(a, _)| rank_in_order[a]);
        let (a1, b1) = pairs[0];
        let (r1, s1) = (rs.roots[a1].clone(), rs.roots[b1].clone());
        let mut p = 0;
        loop {
            let v: Root = s1.iter().zip(&r1).map(|(s, r)| s - (p + 1) * r).collect();
            if rs.is_root(&v) {
                p += 1;
            } else {
                break;
            }
        }
        let n1 = p + 1;
        n_pos.insert((a1, b1), n1);
        n_pos.insert((b1, a1), -n1);
        let xx = rs.inner(x, x);
        for &(a, b) in &pairs[1..] {
            let (ra, rb) = (rs.roots[a].clone(), rs.roots[b].clone());
            // Numerator over the common denominator (b - a1)^2 (a - a1)^2.
            let mut num_terms: Vec<(i64, i64)> = Vec::new();
            let bm = add(&rb, &neg(&r1));
            if rs.is_root(&bm) {
                let t = get(rs, &n_pos, &rb, &neg(&r1))? * get(rs, &n_pos, &ra, &neg(&s1))?;
                num_terms.push((t, rs.inner(&bm, &bm)));
            }
            let am = add(&ra, &neg(&r1));
            if rs.is_root(&am) {
                let t = get(rs, &n_pos, &neg(&r1), &ra)? * get(rs, &n_pos, &rb, &neg(&s1))?;
                num_terms.push((t, rs.inner(&am, &am)));
            }
            let mut total = num_rational::Ratio::<i64>::from_integer(0);
            for (t, l) in num_terms {
                total += num_rational::Ratio::new(t, l);
            }
            let val = total * num_rational::Ratio::new(xx, n1);
            if !val.is_integer() {
                return Err(Error::Internal(format!("non-integral structure constant at {ra:?} + {rb:?}")));
            }
            let v = val.to_integer();
            n_pos.insert((a, b), v);
            n_pos.insert((b, a), -v);
        }
    }

    let mut all = HashMap::new();
    for (k, a) in rs.roots.iter().enumerate() {
        for (l, b) in rs.roots.iter().enumerate() {
            let sum = add(a, b);
            if rs.is_root(&sum) {
                all.insert((k, l), get(rs, &n_pos, a, b)?);
            }
        }
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::DiagramType;

    #[test]
    fn dimensions() {
        for (t, d) in [("A1", 3), ("G2", 14), ("E6", 78), ("B3", 21), ("C3", 21), ("F4", 52)] {
            let a = ChevalleyAlgebra::new(&RootSystem::build(t).unwrap(), RootOrder::Lex).unwrap();
            assert_eq!(a.dim, d, "{t}");
        }
    }

    #[test]
    fn structure_constants_are_string_lengths() {
        for t in ["G2", "B3", "C3", "F4", "D4"] {
            let rs = RootSystem::build(t).unwrap();
            let a = ChevalleyAlgebra::new(&rs, RootOrder::Lex).unwrap();
            for (k, x) in rs.roots.iter().enumerate() {
                for (l, y) in rs.roots.iter().enumerate() {
                    let sum: Root = x.iter().zip(y).map(|(p, q)| p + q).collect();
                    if !rs.is_root(&sum) {
                        continue;
                    }
                    let mut p = 0;
                    while rs.is_root(&y.iter().zip(x).map(|(b, a)| b - (p + 1) * a).collect::<Vec<_>>()) {
                        p += 1;
                    }
                    assert_eq!(a.n_const(k, l).abs(), p + 1, "{t} {x:?} {y:?}");
                }
            }
        }
    }

    #[test]
    fn jacobi_up_to_rank_four_both_orders() {
        for ty in DiagramType::all_reduced(1, 4) {
            let rs = RootSystem::new(ty);
            for order in [RootOrder::Lex, RootOrder::Reversed] {
                let a = ChevalleyAlgebra::new(&rs, order).unwrap();
                a.check_antisymmetry().unwrap();
                a.check_jacobi_exhaustive().unwrap_or_else(|e| panic!("{ty}: {e}"));
            }
        }
    }

    #[test]
    fn reversed_order_changes_some_sign() {
        let rs = RootSystem::build("A3").unwrap();
        let a = ChevalleyAlgebra::new(&rs, RootOrder::Lex).unwrap();
        let b = ChevalleyAlgebra::new(&rs, RootOrder::Reversed).unwrap();
        assert_ne!(a.n_const, b.n_const);
    }
}
