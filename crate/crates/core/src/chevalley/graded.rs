use std::collections::BTreeMap;

use super::pair::{TrilinearPair, MINUS, PLUS};
use super::ChevalleyAlgebra;
use crate::linalg::{SparseEchelon, Q};
use crate::root_hom::{in_hom, target_of, BcTarget, RootHom, WeylElement};
use crate::{Error, NodeSet, Result};

/// A Chevalley algebra graded by a root homomorphism into BC1 or BC2.
#[derive(Clone, Debug)]
pub struct GradedLieAlgebra<'a> {
    pub alg: &'a ChevalleyAlgebra,
    pub rho: RootHom,
    pub target: BcTarget,
    degrees: Vec<Vec<i64>>,
}

pub fn grade<'a>(alg: &'a ChevalleyAlgebra, rho: &RootHom) -> Result<GradedLieAlgebra<'a>> {
    let target = target_of(rho)?;
    if rho.rows.iter().any(|r| r.len() != alg.rank()) {
        return Err(Error::NotAHom(format!("{rho} has the wrong number of columns for {}", alg.rs.ty)));
    }
    if !in_hom(&alg.rs, rho, target) {
        return Err(Error::NotAHom(format!("{rho} does not map the roots of {} into {target:?}", alg.rs.ty)));
    }
    let zero = vec![0; target.rank()];
    let mut degrees = vec![zero; alg.rank()];
    degrees.extend(alg.rs.roots.iter().map(|r| rho.eval(r)));
    Ok(GradedLieAlgebra { alg, rho: rho.clone(), target, degrees })
}

impl<'a> GradedLieAlgebra<'a> {
    pub fn degree(&self, b: usize) -> &[i64] {
        &self.degrees[b]
    }

    pub fn component(&self, deg: &[i64]) -> Vec<usize> {
        (0..self.alg.dim).filter(|&b| self.degrees[b] == deg).collect()
    }

    /// Degrees with a nonzero component and their dimensions.
    pub fn support(&self) -> BTreeMap<Vec<i64>, usize> {
        let mut m = BTreeMap::new();
        for d in &self.degrees {
            *m.entry(d.clone()).or_insert(0) += 1;
        }
        m
    }

    /// Basis of `P^sigma`: the elements whose first degree is `±1`.
    pub fn side_basis(&self, side: usize) -> Vec<usize> {
        let s = if side == PLUS { 1 } else { -1 };
        (0..self.alg.dim).filter(|&b| self.degrees[b][0] == s).collect()
    }

    /// `[L_a, L_b] ⊆ L_(a+b)` on every basis pair.
    pub fn check_degrees(&self) -> Result<()> {
        for a in 0..self.alg.dim {
            for b in 0..self.alg.dim {
                let want: Vec<i64> = self.degrees[a].iter().zip(&self.degrees[b]).map(|(x, y)| x + y).collect();
                if let Some(&(o, _)) = self.alg.bracket_basis(a, b).iter().find(|&&(o, _)| self.degrees[o] != want) {
                    return Err(Error::Internal(format!("[b{a}, b{b}] has a term b{o} of the wrong degree")));
                }
            }
        }
        Ok(())
    }

    /// Every nonzero degree is a root of the target.
    pub fn check_support(&self) -> bool {
        let sys = self.target.system();
        self.support().keys().all(|d| d.iter().all(|&c| c == 0) || sys.is_root(d))
    }

    /// Dimension of `[L_a, L_b]`.
    pub fn bracket_span_dim(&self, a: &[i64], b: &[i64]) -> usize {
        let (ca, cb) = (self.component(a), self.component(b));
        let mut e = SparseEchelon::new();
        for &x in &ca {
            for &y in &cb {
                let v: BTreeMap<usize, Q> =
                    self.alg.bracket_basis(x, y).iter().map(|&(o, c)| (o, Q::from_integer(c))).collect();
                if !v.is_empty() {
                    e.insert(v);
                }
            }
        }
        e.rank()
    }

    /// `L = [L_-1, L_-1] + L_-1 + [L_-1, L_1] + L_1 + [L_1, L_1]` by
    /// dimensions, for the coarse five-grading by the first degree.
    pub fn check_five_decomposition(&self) -> Result<()> {
        let coarse = self.coarse();
        let dim = |k: i64| coarse.get(&k).map(|v| v.len()).unwrap_or(0);
        let span = |x: i64, y: i64| -> usize {
            let mut e = SparseEchelon::new();
            for &a in coarse.get(&x).into_iter().flatten() {
                for &b in coarse.get(&y).into_iter().flatten() {
                    let v: BTreeMap<usize, Q> =
                        self.alg.bracket_basis(a, b).iter().map(|&(o, c)| (o, Q::from_integer(c))).collect();
                    if !v.is_empty() {
                        e.insert(v);
                    }
                }
            }
            e.rank()
        };
        if coarse.keys().any(|k| k.abs() > 2) {
            return Err(Error::Internal("grading is not a five-grading".into()));
        }
        for (x, y, k) in [(-1, -1, -2), (-1, 1, 0), (1, 1, 2)] {
            let (got, want) = (span(x, y), dim(k));
            if got != want {
                return Err(Error::Internal(format!("[L_{x}, L_{y}] has dimension {got}, L_{k} has {want}")));
            }
        }
        Ok(())
    }

    fn coarse(&self) -> BTreeMap<i64, Vec<usize>> {
        let mut m: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
        for (b, d) in self.degrees.iter().enumerate() {
            m.entry(d[0]).or_default().push(b);
        }
        m
    }

    /// Regrading by a BC2 automorphism: the component of degree `u(g)` of
    /// the result is the component of degree `g` of `self`.
    pub fn theta_image(&self, u: WeylElement) -> Result<GradedLieAlgebra<'a>> {
        if self.target != BcTarget::Bc2 {
            return Err(Error::Unsupported("regrading needs a BC2 grading".into()));
        }
        grade(self.alg, &self.rho.left_mul(&u.matrix()))
    }
}

/// The pair `(L_-1, L_1)` with `{x, y, z} = [[x, y], z]`. For a BC2 grading
/// `P^sigma` is `L_(sigma,0) + L_(sigma,sigma)` and the second degree
/// (times sigma) is recorded as the SP grading.
pub fn extract_pair(l: &GradedLieAlgebra) -> Result<TrilinearPair> {
    let bases = [l.side_basis(MINUS), l.side_basis(PLUS)];
    let mut pos: BTreeMap<usize, usize> = BTreeMap::new();
    for basis in &bases {
        for (k, &b) in basis.iter().enumerate() {
            pos.insert(b, k);
        }
    }
    let mut pair = TrilinearPair::new([bases[0].len(), bases[1].len()]);
    if l.target == BcTarget::Bc2 {
        let mut g = [Vec::new(), Vec::new()];
        for side in [MINUS, PLUS] {
            let s = if side == PLUS { 1 } else { -1 };
            for &b in &bases[side] {
                let i = s * l.degree(b)[1];
                if !(0..=1).contains(&i) {
                    return Err(Error::Internal(format!("P^{s} has a component of degree {i}")));
                }
                g[side].push(i as u8);
            }
        }
        pair.grading = Some(g);
    }
    for side in [MINUS, PLUS] {
        let other = 1 - side;
        for (a, &x) in bases[side].iter().enumerate() {
            for (b, &y) in bases[other].iter().enumerate() {
                let xy = l.alg.bracket_basis(x, y);
                if xy.is_empty() {
                    continue;
                }
                for (c, &z) in bases[side].iter().enumerate() {
                    for (o, v) in l.alg.bracket_sparse(xy, &[(z, 1)]) {
                        let k = pos.get(&o).copied().filter(|_| l.degree(o)[0] == l.degree(x)[0]);
                        let k = k.ok_or_else(|| Error::Internal(format!("triple product leaves P at b{o}")))?;
                        pair.prods[side].add(a, b, c, k, Q::from_integer(v));
                    }
                }
            }
        }
    }
    Ok(pair)
}

/// The pair of a marking: graded by `chi_S`, or by `chi_(S,T)` when `T`
/// is given.
pub fn marking_pair(alg: &ChevalleyAlgebra, s: NodeSet, t: Option<NodeSet>) -> Result<TrilinearPair> {
    let n = alg.rank();
    let rho = match t {
        None => RootHom::chi(s, n),
        Some(t) => RootHom::chi_pair(s, t, n),
    };
    extract_pair(&grade(alg, &rho)?)
}
