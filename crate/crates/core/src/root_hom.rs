//! Root homomorphisms into BC1 and BC2.
//!
//! A homomorphism is stored by its values on the simple roots:
//! `rows[k][j]` is the k-th coordinate of the image of simple root `j`.

use std::fmt;
use std::sync::OnceLock;

use crate::{DiagramType, Error, Family, NodeSet, Result, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BcTarget {
    Bc1,
    Bc2,
}

impl BcTarget {
    pub fn rank(self) -> usize {
        match self {
            BcTarget::Bc1 => 1,
            BcTarget::Bc2 => 2,
        }
    }

    pub fn system(self) -> &'static RootSystem {
        static BC1: OnceLock<RootSystem> = OnceLock::new();
        static BC2: OnceLock<RootSystem> = OnceLock::new();
        let (cell, r) = match self {
            BcTarget::Bc1 => (&BC1, 1),
            BcTarget::Bc2 => (&BC2, 2),
        };
        cell.get_or_init(|| RootSystem::new(DiagramType::new(Family::BC, r).unwrap()))
    }

    /// Roots of minimal length.
    pub fn is_short(self, v: &[i64]) -> bool {
        let sys = self.system();
        let len = sys.inner(v, v);
        sys.is_root(v) && sys.roots.iter().all(|r| sys.inner(r, r) >= len)
    }
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct RootHom {
    pub rows: Vec<Vec<i64>>,
}

impl RootHom {
    pub fn chi(s: NodeSet, n: usize) -> Self {
        RootHom { rows: vec![indicator(s, n)] }
    }

    pub fn chi_pair(s: NodeSet, t: NodeSet, n: usize) -> Self {
        RootHom { rows: vec![indicator(s, n), indicator(t, n)] }
    }

    pub fn target_rank(&self) -> usize {
        self.rows.len()
    }

    pub fn eval(&self, v: &[i64]) -> Vec<i64> {
        self.rows.iter().map(|r| r.iter().zip(v).map(|(a, b)| a * b).sum()).collect()
    }

    /// `rho . s_mu`, i.e. `v -> rho(s_mu(v))`.
    pub fn right_reflect(&self, rs: &RootSystem, mu: usize) -> Self {
        let n = rs.rank();
        let rows = self
            .rows
            .iter()
            .map(|r| (0..n).map(|j| r[j] - rs.cartan[j][mu] * r[mu]).collect())
            .collect();
        RootHom { rows }
    }

    /// Left multiplication by a matrix acting on column vectors.
    pub fn left_mul(&self, m: &[[i64; 2]; 2]) -> Self {
        assert_eq!(self.rows.len(), 2);
        let n = self.rows[0].len();
        let rows = (0..2)
            .map(|i| (0..n).map(|j| m[i][0] * self.rows[0][j] + m[i][1] * self.rows[1][j]).collect())
            .collect();
        RootHom { rows }
    }

    pub fn negate(&self) -> Self {
        RootHom { rows: self.rows.iter().map(|r| r.iter().map(|c| -c).collect()).collect() }
    }
}

fn indicator(s: NodeSet, n: usize) -> Vec<i64> {
    (0..n).map(|i| s.contains(i) as i64).collect()
}

pub fn target_of(rho: &RootHom) -> Result<BcTarget> {
    match rho.target_rank() {
        1 => Ok(BcTarget::Bc1),
        2 => Ok(BcTarget::Bc2),
        k => Err(Error::Unsupported(format!("target rank {k}"))),
    }
}

/// Every root maps to zero or to a root of the target.
pub fn in_hom(rs: &RootSystem, rho: &RootHom, target: BcTarget) -> bool {
    if rho.target_rank() != target.rank() {
        return false;
    }
    let sys = target.system();
    rs.positive_roots().all(|a| {
        let v = rho.eval(a);
        v.iter().all(|&c| c == 0) || sys.is_root(&v)
    })
}

/// Simple roots map to non-negative combinations. Assumes membership.
pub fn is_positive(rho: &RootHom) -> bool {
    rho.rows.iter().all(|r| r.iter().all(|&c| c >= 0))
}

/// Some root maps to a short root. Assumes membership.
pub fn is_short(rs: &RootSystem, rho: &RootHom) -> bool {
    let Ok(t) = target_of(rho) else { return false };
    rs.roots.iter().any(|a| t.is_short(&rho.eval(a)))
}

/// Move `rho` into the positive chamber by right multiplication with simple
/// reflections, always reflecting at the lowest node whose summed value is
/// negative. Returns `(rho . w, w)` with `w` a word in simple reflections.
pub fn positivize(rs: &RootSystem, rho: &RootHom) -> Result<(RootHom, Vec<usize>)> {
    let target = target_of(rho)?;
    if !in_hom(rs, rho, target) {
        return Err(Error::NotAHom(format!("{rho} does not map roots into {:?}", target)));
    }
    let n = rs.rank();
    let mut cur = rho.clone();
    let mut word = Vec::new();
    let cap = 4 * rs.roots.len() + 8;
    loop {
        let total = |j: usize| cur.rows.iter().map(|r| r[j]).sum::<i64>();
        let Some(mu) = (0..n).find(|&j| total(j) < 0) else { break };
        cur = cur.right_reflect(rs, mu);
        word.push(mu);
        if word.len() > cap {
            return Err(Error::Internal("positivize did not terminate".into()));
        }
    }
    if !is_positive(&cur) {
        return Err(Error::Internal(format!("positivize ended at non-positive {cur}")));
    }
    Ok((cur, word))
}

/// The eight automorphisms of BC2, named by the words in the simple
/// reflections `s1`, `s2` and the central element `-1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum WeylElement {
    One,
    S1,
    S2,
    S2S1,
    Neg,
    NegS1,
    NegS2,
    NegS2S1,
}

impl WeylElement {
    pub const ALL: [WeylElement; 8] = [
        WeylElement::One,
        WeylElement::S1,
        WeylElement::S2,
        WeylElement::S2S1,
        WeylElement::Neg,
        WeylElement::NegS1,
        WeylElement::NegS2,
        WeylElement::NegS2S1,
    ];

    /// Matrix acting on column vectors `(a, b)` = `a alpha1 + b alpha2`.
    /// `s1(a, b) = (2b - a, b)` and `s2(a, b) = (a, a - b)`.
    pub fn matrix(self) -> [[i64; 2]; 2] {
        const ONE: [[i64; 2]; 2] = [[1, 0], [0, 1]];
        const S1: [[i64; 2]; 2] = [[-1, 2], [0, 1]];
        const S2: [[i64; 2]; 2] = [[1, 0], [1, -1]];
        let base = match self {
            WeylElement::One | WeylElement::Neg => ONE,
            WeylElement::S1 | WeylElement::NegS1 => S1,
            WeylElement::S2 | WeylElement::NegS2 => S2,
            WeylElement::S2S1 | WeylElement::NegS2S1 => mat_mul(&S2, &S1),
        };
        if self.is_negated() {
            base.map(|r| r.map(|c| -c))
        } else {
            base
        }
    }

    fn is_negated(self) -> bool {
        matches!(self, WeylElement::Neg | WeylElement::NegS1 | WeylElement::NegS2 | WeylElement::NegS2S1)
    }

    pub fn from_matrix(m: &[[i64; 2]; 2]) -> Option<Self> {
        Self::ALL.into_iter().find(|u| &u.matrix() == m)
    }

    /// `self * other`: apply `other` first.
    pub fn compose(self, other: Self) -> Self {
        Self::from_matrix(&mat_mul(&self.matrix(), &other.matrix())).expect("closed under products")
    }

    pub fn name(self) -> &'static str {
        match self {
            WeylElement::One => "1",
            WeylElement::S1 => "s1",
            WeylElement::S2 => "s2",
            WeylElement::S2S1 => "s2s1",
            WeylElement::Neg => "-1",
            WeylElement::NegS1 => "-s1",
            WeylElement::NegS2 => "-s2",
            WeylElement::NegS2S1 => "-s2s1",
        }
    }
}

impl fmt::Display for WeylElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for WeylElement {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().replace(['*', ' ', '.'], "");
        Self::ALL
            .into_iter()
            .find(|u| u.name() == t)
            .ok_or_else(|| Error::Parse(format!("unknown Weyl element `{s}`; expected one of 1,s1,s2,s2s1,-1,-s1,-s2,-s2s1")))
    }
}

fn mat_mul(a: &[[i64; 2]; 2], b: &[[i64; 2]; 2]) -> [[i64; 2]; 2] {
    let mut c = [[0; 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

/// `u * rho = positivize(u . rho)`.
pub fn star(rs: &RootSystem, u: WeylElement, rho: &RootHom) -> Result<RootHom> {
    Ok(positivize(rs, &rho.left_mul(&u.matrix()))?.0)
}

/// Read `(S, T)` back from a positive short homomorphism into BC2.
pub fn to_marking(rho: &RootHom) -> Result<(NodeSet, NodeSet)> {
    if rho.target_rank() != 2 {
        return Err(Error::Unsupported("expected a homomorphism into BC2".into()));
    }
    let mut sets = [NodeSet::EMPTY; 2];
    for (k, row) in rho.rows.iter().enumerate() {
        for (j, &c) in row.iter().enumerate() {
            match c {
                0 => {}
                1 => sets[k] = sets[k].with(j),
                _ => return Err(Error::Internal(format!("{rho} is not of the form chi_(S,T)"))),
            }
        }
    }
    Ok((sets[0], sets[1]))
}

impl fmt::Display for RootHom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let n = self.rows.first().map_or(0, |r| r.len());
        write!(f, "[")?;
        for j in 0..n {
            if j > 0 {
                write!(f, " ")?;
            }
            let col: Vec<String> = self.rows.iter().map(|r| r[j].to_string()).collect();
            write!(f, "({})", col.join(","))?;
        }
        write!(f, "]")
    }
}
