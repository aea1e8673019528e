//! Jordan matrix pairs, the twisted tensor construction `T(J, tau)` and the
//! closed forms of reflected close-to-Jordan pairs.

pub mod octonion;
mod table;

pub use table::{table1_rows, table_row, verify_row, verify_table1, verify_excluded, ExcludedReport, RowReport, TableRow, TauClosedForm};

use std::fmt;

use num_traits::{One, Zero};

use crate::admissibility::close_to_jordan;
use crate::chevalley::{Tensor, TrilinearPair, MINUS, PLUS};
use crate::linalg::{inverse, q, rank_of_dense, Q};
use crate::{Error, Family, NodeSet, Result, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum JordanKind {
    /// `p x q` matrices, `{x, a, y} = x a^t y + y a^t x`.
    I(usize, usize),
    /// Alternating `n x n` matrices inside `I(n, n)`.
    II(usize),
    /// `K^n` with the dot product `q`, `{x, a, y} = q(x,a)y + q(y,a)x - q(x,y)a`.
    IV(usize),
    /// `1 x 2` split-octonion matrices, `{x, a, y} = x(a* y) + y(a* x)`.
    V,
}

impl fmt::Display for JordanKind {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        match self {
            JordanKind::I(p, q) => write!(f, "I_{p},{q}"),
            JordanKind::II(n) => write!(f, "II_{n}"),
            JordanKind::IV(n) => write!(f, "IV_{n}"),
            JordanKind::V => write!(f, "V"),
        }
    }
}

/// A Jordan pair with both sides on the same basis. A direct sum keeps the
/// offsets of its summands.
#[derive(Clone, Debug)]
pub struct JordanMatrixPair {
    pub parts: Vec<(JordanKind, usize)>,
    pub pair: TrilinearPair,
}

impl JordanMatrixPair {
    pub fn dim(&self) -> usize {
        self.pair.dims[PLUS]
    }

    pub fn name(&self) -> String {
        self.parts.iter().map(|(k, _)| k.to_string()).collect::<Vec<_>>().join(" + ")
    }

    pub fn direct_sum(a: &JordanMatrixPair, b: &JordanMatrixPair) -> JordanMatrixPair {
        let (da, db) = (a.dim(), b.dim());
        let d = da + db;
        let mut pair = TrilinearPair::new([d, d]);
        for s in [MINUS, PLUS] {
            for (src, off, dm) in [(a, 0, da), (b, da, db)] {
                for x in 0..dm {
                    for y in 0..dm {
                        for &(c, o, v) in src.pair.prods[s].row(x, y) {
                            pair.prods[s].add(x + off, y + off, c + off, o + off, v);
                        }
                    }
                }
            }
        }
        let mut parts = a.parts.clone();
        parts.extend(b.parts.iter().map(|&(k, o)| (k, o + da)));
        JordanMatrixPair { parts, pair }
    }
}

fn symmetric_pair(d: usize, prod: impl Fn(usize, usize, usize) -> Vec<Q>) -> TrilinearPair {
    let mut t = Tensor::zero(d, d);
    for x in 0..d {
        for a in 0..d {
            for y in 0..d {
                for (o, v) in prod(x, a, y).into_iter().enumerate() {
                    t.add(x, a, y, o, v);
                }
            }
        }
    }
    let mut p = TrilinearPair::new([d, d]);
    p.prods = [t.clone(), t];
    p
}

/// Dense `p x q` matrix of a basis vector `E_(i,j)`.
fn mat_unit(p: usize, q: usize, k: usize) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); q]; p];
    m[k / q][k % q] = Q::one();
    m
}

fn mat_mul(a: &[Vec<Q>], b: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let (n, k, m) = (a.len(), b.len(), b[0].len());
    (0..n).map(|i| (0..m).map(|j| (0..k).fold(Q::zero(), |s, l| s + a[i][l] * b[l][j])).collect()).collect()
}

fn transpose(a: &[Vec<Q>]) -> Vec<Vec<Q>> {
    (0..a[0].len()).map(|j| a.iter().map(|r| r[j]).collect()).collect()
}

/// `x a^t y + y a^t x`.
fn rect_product(x: &[Vec<Q>], a: &[Vec<Q>], y: &[Vec<Q>]) -> Vec<Vec<Q>> {
    let at = transpose(a);
    let l = mat_mul(&mat_mul(x, &at), y);
    let r = mat_mul(&mat_mul(y, &at), x);
    l.iter().zip(&r).map(|(u, v)| u.iter().zip(v).map(|(p, q)| *p + *q).collect()).collect()
}

fn alt_basis(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect()
}

fn alt_unit(n: usize, (i, j): (usize, usize)) -> Vec<Vec<Q>> {
    let mut m = vec![vec![Q::zero(); n]; n];
    m[i][j] = Q::one();
    m[j][i] = -Q::one();
    m
}

pub fn build_jordan(kind: JordanKind) -> Result<JordanMatrixPair> {
    let pair = match kind {
        JordanKind::I(p, qd) => {
            if p == 0 || qd == 0 {
                return Err(Error::Parse(format!("{kind} needs positive sizes")));
            }
            symmetric_pair(p * qd, |x, a, y| {
                let m = rect_product(&mat_unit(p, qd, x), &mat_unit(p, qd, a), &mat_unit(p, qd, y));
                m.into_iter().flatten().collect()
            })
        }
        JordanKind::II(n) => {
            if n < 2 {
                return Err(Error::Parse(format!("{kind} needs n >= 2")));
            }
            let basis = alt_basis(n);
            symmetric_pair(basis.len(), |x, a, y| {
                let m = rect_product(&alt_unit(n, basis[x]), &alt_unit(n, basis[a]), &alt_unit(n, basis[y]));
                basis.iter().map(|&(i, j)| m[i][j]).collect()
            })
        }
        JordanKind::IV(n) => {
            if n == 0 {
                return Err(Error::Parse(format!("{kind} needs n >= 1")));
            }
            let dot = |i: usize, j: usize| if i == j { Q::one() } else { Q::zero() };
            symmetric_pair(n, |x, a, y| {
                (0..n)
                    .map(|o| {
                        let mut v = Q::zero();
                        if o == y {
                            v += dot(x, a);
                        }
                        if o == x {
                            v += dot(y, a);
                        }
                        if o == a {
                            v -= dot(x, y);
                        }
                        v
                    })
                    .collect()
            })
        }
        JordanKind::V => symmetric_pair(16, |x, a, y| {
            let row = |k: usize| -> [octonion::Octonion; 2] {
                let mut r = [octonion::zero(), octonion::zero()];
                r[k / 8] = octonion::unit(k % 8);
                r
            };
            let (x, a, y) = (row(x), row(a), row(y));
            let mut out = [octonion::zero(), octonion::zero()];
            for (j, o) in out.iter_mut().enumerate() {
                for i in 0..2 {
                    let ab = octonion::conj(&a[i]);
                    *o = octonion::add(o, &octonion::mul(&x[i], &octonion::mul(&ab, &y[j])));
                    *o = octonion::add(o, &octonion::mul(&y[i], &octonion::mul(&ab, &x[j])));
                }
            }
            out.iter().flatten().copied().collect()
        }),
    };
    let j = JordanMatrixPair { parts: vec![(kind, 0)], pair };
    if j.pair.k_span_dim(PLUS) != 0 || j.pair.k_span_dim(MINUS) != 0 {
        return Err(Error::Internal(format!("{kind} is not Jordan: K is nonzero")));
    }
    Ok(j)
}

/// `tau^sigma`, stored as `m[sigma][x][a]`.
#[derive(Clone, Debug, PartialEq)]
pub struct TauForm {
    pub m: [Vec<Vec<Q>>; 2],
}

impl TauForm {
    /// The same matrix on both sides (transposed on the minus side).
    pub fn from_plus(m: Vec<Vec<Q>>) -> Self {
        let t: Vec<Vec<Q>> = (0..m.len()).map(|j| m.iter().map(|r| r[j]).collect()).collect();
        TauForm { m: [t, m] }
    }

    pub fn is_symmetric(&self) -> bool {
        let d = self.m[PLUS].len();
        (0..d).all(|x| (0..d).all(|a| self.m[PLUS][x][a] == self.m[MINUS][a][x]))
    }

    pub fn is_nondegenerate(&self) -> bool {
        self.m.iter().all(|m| rank_of_dense(m) == m.len())
    }

    pub fn scaled(&self, c: Q) -> Self {
        TauForm { m: self.m.clone().map(|m| m.into_iter().map(|r| r.into_iter().map(|v| v * c).collect()).collect()) }
    }
}

/// `tr D^sigma(e_x, e_a)` for all basis pairs.
pub fn trace_matrix(j: &TrilinearPair, side: usize) -> Vec<Vec<Q>> {
    let t = &j.prods[side];
    (0..t.d_out)
        .map(|x| {
            (0..t.d_mid)
                .map(|a| t.row(x, a).iter().filter(|&&(c, o, _)| c == o).fold(Q::zero(), |s, e| s + e.2))
                .collect()
        })
        .collect()
}

/// `tau^sigma(x, a) = theta / dim J^sigma * tr D^sigma(x, a)`.
pub fn tau_from_trace(j: &JordanMatrixPair, theta: Q) -> Result<TauForm> {
    let m = [MINUS, PLUS].map(|s| {
        let c = theta / Q::from_integer(j.pair.dims[s] as i64);
        trace_matrix(&j.pair, s).into_iter().map(|r| r.into_iter().map(|v| v * c).collect()).collect()
    });
    let tau = TauForm { m };
    if !tau.is_symmetric() {
        return Err(Error::Internal("tau is not symmetric".into()));
    }
    if !tau.is_nondegenerate() {
        return Err(Error::Internal("tau is degenerate".into()));
    }
    Ok(tau)
}

/// The ingredients of the constant: `(t, t', s)`, the Cartan entry at
/// `(t, t')`, the inverse-Cartan entry of the remaining diagram at
/// `(t', s)`, and the constant itself.
#[derive(Clone, Debug, PartialEq)]
pub struct Theta {
    pub t: usize,
    pub t_adj: usize,
    pub s: usize,
    pub cartan_entry: i64,
    pub inverse_entry: Q,
    pub value: Q,
}

/// The constant for the close-to-Jordan marking of `rs` and `T = {t}`.
pub fn theta_constant(rs: &RootSystem, t: usize) -> Result<Theta> {
    let n = rs.rank();
    if t >= n {
        return Err(Error::NodeOutOfRange(t + 1));
    }
    let s_set = close_to_jordan(rs)?;
    if rs.highest[t] != 1 {
        return Err(Error::NotAdmissible(format!("node {} has coefficient {} in the highest root", t + 1, rs.highest[t])));
    }
    let nbrs: Vec<usize> = (0..n).filter(|&j| j != t && rs.adjacent(t, j)).collect();
    if nbrs.len() != 1 {
        return Err(Error::ExcludedCase(format!("node {} of {} is not an end node", t + 1, rs.ty)));
    }
    let t_adj = nbrs[0];
    let s = match s_set.minus(NodeSet::singleton(t)).iter().collect::<Vec<_>>()[..] {
        [s] => s,
        _ => return Err(Error::Internal(format!("cannot identify s for T = {{{}}}", t + 1))),
    };
    let rest: Vec<usize> = (0..n).filter(|&i| i != t).collect();
    let sub: Vec<Vec<Q>> = rest.iter().map(|&i| rest.iter().map(|&j| q(rs.cartan[i][j])).collect()).collect();
    let inv = inverse(&sub).ok_or_else(|| Error::Internal("singular Cartan matrix".into()))?;
    let pos = |i: usize| rest.iter().position(|&r| r == i).unwrap();
    let inverse_entry = inv[pos(t_adj)][pos(s)];
    let cartan_entry = rs.cartan[t][t_adj];
    let p = Q::from_integer(cartan_entry) * inverse_entry;
    let value = if rs.ty.family == Family::A { p + 1 } else { p + 2 };
    Ok(Theta { t, t_adj, s, cartan_entry, inverse_entry, value })
}

/// `T(J, tau)`: basis `e_x (x) u_i` at index `2x + i`, graded by `i`.
pub fn construct_t(j: &JordanMatrixPair, tau: &TauForm) -> TrilinearPair {
    let d = j.dim();
    let mut p = TrilinearPair::new([2 * d, 2 * d]);
    for s in [MINUS, PLUS] {
        let jt = &j.pair.prods[s];
        let tm = &tau.m[s];
        let out = &mut p.prods[s];
        for x in 0..d {
            for a in 0..d {
                let ta = tm[x][a];
                for i in 0..2 {
                    for k in 0..2 {
                        // j = i: {x,a,y} (x) u_k - tau y (x) u_k (+ tau y (x) u_i when k = i).
                        for &(y, o, v) in jt.row(x, a) {
                            out.add(2 * x + i, 2 * a + i, 2 * y + k, 2 * o + k, v);
                        }
                        if !ta.is_zero() {
                            for y in 0..d {
                                out.add(2 * x + i, 2 * a + i, 2 * y + k, 2 * y + k, -ta);
                                if k == i {
                                    out.add(2 * x + i, 2 * a + i, 2 * y + k, 2 * y + i, ta);
                                }
                            }
                        }
                    }
                    // j != i, k = j: tau y (x) u_i.
                    let jj = 1 - i;
                    if !ta.is_zero() {
                        for y in 0..d {
                            out.add(2 * x + i, 2 * a + jj, 2 * y + jj, 2 * y + i, ta);
                        }
                    }
                }
            }
        }
    }
    p.grading = Some([(0..2 * d).map(|k| (k % 2) as u8).collect(), (0..2 * d).map(|k| (k % 2) as u8).collect()]);
    p
}

/// `J = I_(1,t-1) + I_(1,n-t)` and `tau` from the two weighted traces, for
/// type A_n with `T = {t}` an interior node (1-based `t`).
pub fn excluded_case(n: usize, t: usize) -> Result<(JordanMatrixPair, TauForm)> {
    if n < 3 || t <= 1 || t >= n {
        return Err(Error::Unsupported(format!("A{n} with T = {{{t}}} is not the excluded case")));
    }
    let j1 = build_jordan(JordanKind::I(1, t - 1))?;
    let j2 = build_jordan(JordanKind::I(1, n - t))?;
    let j = JordanMatrixPair::direct_sum(&j1, &j2);
    let d1 = j1.dim();
    let weights = [Q::new(1, t as i64), Q::new(1, (n - t + 1) as i64)];
    let m = [MINUS, PLUS].map(|s| {
        let tr = trace_matrix(&j.pair, s);
        tr.into_iter()
            .enumerate()
            .map(|(x, r)| r.into_iter().map(|v| v * weights[(x >= d1) as usize]).collect())
            .collect()
    });
    let tau = TauForm { m };
    if !tau.is_symmetric() || !tau.is_nondegenerate() {
        return Err(Error::Internal("excluded-case tau is degenerate or not symmetric".into()));
    }
    Ok((j, tau))
}
