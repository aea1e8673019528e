//! Trilinear pairs given by structure tensors, and the checks run on them:
//! the two Kantor-pair identities, the balanced parameters and simplicity.

use std::collections::BTreeMap;

use num_integer::Integer;
use num_traits::{One, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::linalg::{SparseEchelon, Q};
use crate::{Error, PairParameters, Result};

pub const MINUS: usize = 0;
pub const PLUS: usize = 1;

fn opp(s: usize) -> usize {
    1 - s
}

fn sign_name(s: usize) -> &'static str {
    if s == PLUS {
        "+"
    } else {
        "-"
    }
}

/// Structure tensor of `{x, y, z}^sigma` for `x, z` in `P^sigma` and `y` in
/// `P^-sigma`: `rows[a * d_mid + b]` lists `(c, out, coeff)` with
/// `{e_a, f_b, e_c}` having `coeff` at `e_out`.
#[derive(Clone, Debug, PartialEq)]
pub struct Tensor {
    pub d_out: usize,
    pub d_mid: usize,
    pub rows: Vec<Vec<(usize, usize, Q)>>,
}

impl Tensor {
    pub fn zero(d_out: usize, d_mid: usize) -> Self {
        Tensor { d_out, d_mid, rows: vec![Vec::new(); d_out * d_mid] }
    }

    pub fn row(&self, a: usize, b: usize) -> &[(usize, usize, Q)] {
        &self.rows[a * self.d_mid + b]
    }

    pub fn add(&mut self, a: usize, b: usize, c: usize, out: usize, v: Q) {
        if v.is_zero() {
            return;
        }
        let row = &mut self.rows[a * self.d_mid + b];
        if let Some(e) = row.iter_mut().find(|e| e.0 == c && e.1 == out) {
            e.2 += v;
        } else {
            row.push((c, out, v));
        }
        row.retain(|e| !e.2.is_zero());
    }

    pub fn nnz(&self) -> usize {
        self.rows.iter().map(|r| r.len()).sum()
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrilinearPair {
    /// `dims[MINUS]`, `dims[PLUS]`.
    pub dims: [usize; 2],
    pub prods: [Tensor; 2],
    /// Degree (0 or 1) of each basis vector of `P^-` and `P^+`.
    pub grading: Option<[Vec<u8>; 2]>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CheckMode {
    Exhaustive,
    Sampled { samples: usize, seed: u64 },
    /// Exhaustive when both sides have dimension at most 12, otherwise 2000
    /// samples.
    Auto { seed: u64 },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Violation {
    pub sign: &'static str,
    pub identity: u8,
    pub witness: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdentityReport {
    pub exhaustive: bool,
    pub checks: usize,
    pub violation: Option<Violation>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.violation.is_none()
    }
}

/// Integer copy of a pair, scaled by a common denominator. Both identities
/// are homogeneous of degree two in the products, so scaling is harmless.
struct IntPair {
    dims: [usize; 2],
    rows: [Vec<Vec<(usize, usize, i64)>>; 2],
    mid: [usize; 2],
}

impl IntPair {
    fn new(p: &TrilinearPair) -> Self {
        let mut l = 1i64;
        for t in &p.prods {
            for r in &t.rows {
                for e in r {
                    l = l.lcm(e.2.denom());
                }
            }
        }
        let conv = |t: &Tensor| -> Vec<Vec<(usize, usize, i64)>> {
            t.rows
                .iter()
                .map(|r| r.iter().map(|&(c, o, v)| (c, o, (v * Q::from_integer(l)).to_integer())).collect())
                .collect()
        };
        IntPair {
            dims: p.dims,
            rows: [conv(&p.prods[0]), conv(&p.prods[1])],
            mid: [p.dims[PLUS], p.dims[MINUS]],
        }
    }

    fn triple(&self, s: usize, x: &[i64], y: &[i64], z: &[i64]) -> Vec<i64> {
        let mut out = vec![0i64; self.dims[s]];
        let dm = self.mid[s];
        for (a, &xa) in x.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let f = xa * yb;
                for &(c, o, v) in &self.rows[s][a * dm + b] {
                    if z[c] != 0 {
                        out[o] += f * z[c] * v;
                    }
                }
            }
        }
        out
    }

    /// `D(e_a, f_b)` as a dense row-major matrix.
    fn d_matrix(&self, s: usize, a: usize, b: usize) -> Vec<i64> {
        let d = self.dims[s];
        let mut m = vec![0; d * d];
        for &(c, o, v) in &self.rows[s][a * self.mid[s] + b] {
            m[o * d + c] += v;
        }
        m
    }
}

fn sub(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x -= y;
    }
}

fn add_to(a: &mut [i64], b: &[i64]) {
    for (x, y) in a.iter_mut().zip(b) {
        *x += y;
    }
}

fn matmul(a: &[i64], b: &[i64], r: usize, k: usize, c: usize) -> Vec<i64> {
    let mut out = vec![0; r * c];
    for i in 0..r {
        for l in 0..k {
            let x = a[i * k + l];
            if x == 0 {
                continue;
            }
            for j in 0..c {
                out[i * c + j] += x * b[l * c + j];
            }
        }
    }
    out
}

impl TrilinearPair {
    pub fn new(dims: [usize; 2]) -> Self {
        TrilinearPair {
            dims,
            prods: [Tensor::zero(dims[MINUS], dims[PLUS]), Tensor::zero(dims[PLUS], dims[MINUS])],
            grading: None,
        }
    }

    pub fn triple(&self, s: usize, x: &[Q], y: &[Q], z: &[Q]) -> Vec<Q> {
        let t = &self.prods[s];
        let mut out = vec![Q::zero(); t.d_out];
        for (a, xa) in x.iter().enumerate() {
            if xa.is_zero() {
                continue;
            }
            for (b, yb) in y.iter().enumerate() {
                if yb.is_zero() {
                    continue;
                }
                for &(c, o, v) in t.row(a, b) {
                    if !z[c].is_zero() {
                        out[o] += *xa * *yb * z[c] * v;
                    }
                }
            }
        }
        out
    }

    /// `K^sigma(e_a, e_c)` as a sparse map `(out * d_-sigma + b) -> coeff`.
    fn k_operator(&self, s: usize, a: usize, c: usize) -> BTreeMap<usize, Q> {
        let t = &self.prods[s];
        let dm = t.d_mid;
        let mut m: BTreeMap<usize, Q> = BTreeMap::new();
        for b in 0..dm {
            for &(cc, o, v) in t.row(a, b) {
                if cc == c {
                    *m.entry(o * dm + b).or_insert_with(Q::zero) += v;
                }
            }
            for &(cc, o, v) in t.row(c, b) {
                if cc == a {
                    *m.entry(o * dm + b).or_insert_with(Q::zero) -= v;
                }
            }
        }
        m.retain(|_, v| !v.is_zero());
        m
    }

    /// Dimension of the span of `K^sigma(P^sigma, P^sigma)`.
    pub fn k_span_dim(&self, s: usize) -> usize {
        let d = self.dims[s];
        let mut e = SparseEchelon::new();
        for a in 0..d {
            for c in a + 1..d {
                e.insert(self.k_operator(s, a, c));
            }
        }
        e.rank()
    }

    /// `{P_i, P_j, P_k} ⊆ P_(i-j+k)`, zero when that index is not 0 or 1.
    pub fn check_grading_law(&self) -> bool {
        let Some(g) = &self.grading else { return true };
        for s in [MINUS, PLUS] {
            let t = &self.prods[s];
            for a in 0..t.d_out {
                for b in 0..t.d_mid {
                    for &(c, o, _) in t.row(a, b) {
                        let deg = g[s][a] as i64 - g[opp(s)][b] as i64 + g[s][c] as i64;
                        if deg != g[s][o] as i64 {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }

    /// `(d, e, f)`, requiring every quantity to be balanced.
    pub fn params(&self) -> Result<PairParameters> {
        if self.dims[0] != self.dims[1] {
            return Err(Error::Internal(format!("unbalanced dimensions {:?}", self.dims)));
        }
        let (em, ep) = (self.k_span_dim(MINUS), self.k_span_dim(PLUS));
        if em != ep {
            return Err(Error::Internal(format!("unbalanced K-span dimensions {em} and {ep}")));
        }
        let f = match &self.grading {
            None => None,
            Some(g) => {
                let fm = g[MINUS].iter().filter(|&&x| x == 1).count();
                let fp = g[PLUS].iter().filter(|&&x| x == 1).count();
                if fm != fp {
                    return Err(Error::Internal(format!("unbalanced degree-one parts {fm} and {fp}")));
                }
                Some(fp)
            }
        };
        Ok(PairParameters { d: self.dims[0], e: ep, f })
    }

    /// Both Kantor-pair identities for both signs.
    pub fn check_kantor_identities(&self, mode: CheckMode) -> IdentityReport {
        let ip = IntPair::new(self);
        let small = self.dims[0] <= 12 && self.dims[1] <= 12;
        match mode {
            CheckMode::Exhaustive => exhaustive(&ip),
            CheckMode::Auto { .. } if small => exhaustive(&ip),
            CheckMode::Auto { seed } => sampled(&ip, 2000, seed),
            CheckMode::Sampled { samples, seed } => sampled(&ip, samples, seed),
        }
    }

    /// Smallest ideal containing each basis vector (and one random element)
    /// is the whole pair.
    pub fn is_simple(&self, seed: u64) -> bool {
        if self.dims[0] == 0 && self.dims[1] == 0 {
            return false;
        }
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let mut gens: Vec<(usize, Vec<Q>)> = Vec::new();
        for s in [MINUS, PLUS] {
            for i in 0..self.dims[s] {
                let mut v = vec![Q::zero(); self.dims[s]];
                v[i] = Q::one();
                gens.push((s, v));
            }
        }
        if self.dims[PLUS] > 0 {
            let v: Vec<Q> = (0..self.dims[PLUS]).map(|_| Q::from_integer(rng.gen_range(-3..=3))).collect();
            if v.iter().any(|c| !c.is_zero()) {
                gens.push((PLUS, v));
            }
        }
        gens.into_iter().all(|(s, v)| self.ideal_dims(s, v) == self.dims)
    }

    fn ideal_dims(&self, s0: usize, v0: Vec<Q>) -> [usize; 2] {
        let to_map = |v: &[Q]| -> BTreeMap<usize, Q> {
            v.iter().enumerate().filter(|(_, c)| !c.is_zero()).map(|(i, &c)| (i, c)).collect()
        };
        let mut span = [SparseEchelon::new(), SparseEchelon::new()];
        let mut queue: Vec<(usize, Vec<Q>)> = Vec::new();
        if span[s0].insert(to_map(&v0)) {
            queue.push((s0, v0));
        }
        let unit_q = |d: usize, i: usize| -> Vec<Q> {
            let mut u = vec![Q::zero(); d];
            u[i] = Q::one();
            u
        };
        while let Some((s, v)) = queue.pop() {
            if span[0].rank() == self.dims[0] && span[1].rank() == self.dims[1] {
                break;
            }
            let mut found: Vec<(usize, Vec<Q>)> = Vec::new();
            for b in 0..self.dims[opp(s)] {
                let ub = unit_q(self.dims[opp(s)], b);
                for c in 0..self.dims[s] {
                    let uc = unit_q(self.dims[s], c);
                    found.push((s, self.triple(s, &v, &ub, &uc)));
                    found.push((s, self.triple(s, &uc, &ub, &v)));
                }
            }
            for a in 0..self.dims[opp(s)] {
                let ua = unit_q(self.dims[opp(s)], a);
                for c in 0..self.dims[opp(s)] {
                    let uc = unit_q(self.dims[opp(s)], c);
                    found.push((opp(s), self.triple(opp(s), &ua, &v, &uc)));
                }
            }
            for (t, w) in found {
                if w.iter().any(|c| !c.is_zero()) && span[t].insert(to_map(&w)) {
                    queue.push((t, w));
                }
            }
        }
        [span[0].rank(), span[1].rank()]
    }
}

fn exhaustive(ip: &IntPair) -> IdentityReport {
    let mut checks = 0;
    for s in [PLUS, MINUS] {
        let (d, dm) = (ip.dims[s], ip.dims[opp(s)]);
        let dmat: Vec<Vec<i64>> = (0..d * dm).map(|k| ip.d_matrix(s, k / dm, k % dm)).collect();
        let dmat_opp: Vec<Vec<i64>> = (0..dm * d).map(|k| ip.d_matrix(opp(s), k / d, k % d)).collect();
        let dd = |a: usize, b: usize| &dmat[a * dm + b];
        // K(e_a, e_c) as a d x dm matrix.
        let kmat = |a: usize, c: usize| -> Vec<i64> {
            let mut m = vec![0; d * dm];
            for b in 0..dm {
                let col_a = dd(a, b);
                let col_c = dd(c, b);
                for o in 0..d {
                    m[o * dm + b] += col_a[o * d + c] - col_c[o * d + a];
                }
            }
            m
        };
        let kall: Vec<Vec<i64>> = (0..d * d).map(|k| kmat(k / d, k % d)).collect();
        // Identity 1.
        for a in 0..d {
            for b in 0..dm {
                let m1 = dd(a, b);
                for c in 0..d {
                    let v: Vec<i64> = (0..d).map(|o| m1[o * d + c]).collect();
                    for w in 0..dm {
                        let m2 = dd(c, w);
                        let mut lhs = matmul(m1, m2, d, d, d);
                        sub(&mut lhs, &matmul(m2, m1, d, d, d));
                        for (k, &vk) in v.iter().enumerate() {
                            if vk != 0 {
                                let m = dd(k, w);
                                for (x, y) in lhs.iter_mut().zip(m) {
                                    *x -= vk * y;
                                }
                            }
                        }
                        let mo = &dmat_opp[b * d + a];
                        for k in 0..dm {
                            let vk = mo[k * dm + w];
                            if vk != 0 {
                                let m = dd(c, k);
                                for (x, y) in lhs.iter_mut().zip(m) {
                                    *x += vk * y;
                                }
                            }
                        }
                        checks += 1;
                        if lhs.iter().any(|&x| x != 0) {
                            return IdentityReport {
                                exhaustive: true,
                                checks,
                                violation: Some(Violation {
                                    sign: sign_name(s),
                                    identity: 1,
                                    witness: format!("basis (x,y,z,w) = ({a},{b},{c},{w})"),
                                }),
                            };
                        }
                    }
                }
            }
        }
        // Identity 2.
        for a in 0..d {
            for c in 0..d {
                let k = &kall[a * d + c];
                for u in 0..d {
                    for w in 0..dm {
                        let dopp = &dmat_opp[w * d + u];
                        let mut lhs = matmul(k, dopp, d, dm, dm);
                        add_to(&mut lhs, &matmul(dd(u, w), k, d, d, dm));
                        for t in 0..d {
                            let kt = k[t * dm + w];
                            if kt != 0 {
                                let m = &kall[t * d + u];
                                for (x, y) in lhs.iter_mut().zip(m) {
                                    *x -= kt * y;
                                }
                            }
                        }
                        checks += 1;
                        if lhs.iter().any(|&x| x != 0) {
                            return IdentityReport {
                                exhaustive: true,
                                checks,
                                violation: Some(Violation {
                                    sign: sign_name(s),
                                    identity: 2,
                                    witness: format!("basis (x,z,u,w) = ({a},{c},{u},{w})"),
                                }),
                            };
                        }
                    }
                }
            }
        }
    }
    IdentityReport { exhaustive: true, checks, violation: None }
}

fn sampled(ip: &IntPair, samples: usize, seed: u64) -> IdentityReport {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = 0;
    for i in 0..samples {
        for s in [PLUS, MINUS] {
            let (d, dm) = (ip.dims[s], ip.dims[opp(s)]);
            let mut vec_of = |n: usize| -> Vec<i64> { (0..n).map(|_| rng.gen_range(-3..=3)).collect() };
            let (x, z, u) = (vec_of(d), vec_of(d), vec_of(d));
            let (y, w, v) = (vec_of(dm), vec_of(dm), vec_of(dm));
            let t = |s: usize, a: &[i64], b: &[i64], c: &[i64]| ip.triple(s, a, b, c);
            // [D(x,y), D(z,w)] u = D(D(x,y)z, w) u - D(z, D(y,x)w) u
            let mut r1 = t(s, &x, &y, &t(s, &z, &w, &u));
            sub(&mut r1, &t(s, &z, &w, &t(s, &x, &y, &u)));
            sub(&mut r1, &t(s, &t(s, &x, &y, &z), &w, &u));
            add_to(&mut r1, &t(s, &z, &t(opp(s), &y, &x, &w), &u));
            checks += 1;
            if r1.iter().any(|&c| c != 0) {
                return IdentityReport {
                    exhaustive: false,
                    checks,
                    violation: Some(Violation { sign: sign_name(s), identity: 1, witness: format!("sample {i}, seed {seed}") }),
                };
            }
            // K(x,z) D(w,u) v + D(u,w) K(x,z) v = K(K(x,z) w, u) v
            let k = |p: &[i64], q: &[i64], r: &[i64]| {
                let mut o = t(s, p, r, q);
                sub(&mut o, &t(s, q, r, p));
                o
            };
            let mut r2 = k(&x, &z, &t(opp(s), &w, &u, &v));
            add_to(&mut r2, &t(s, &u, &w, &k(&x, &z, &v)));
            sub(&mut r2, &k(&k(&x, &z, &w), &u, &v));
            checks += 1;
            if r2.iter().any(|&c| c != 0) {
                return IdentityReport {
                    exhaustive: false,
                    checks,
                    violation: Some(Violation { sign: sign_name(s), identity: 2, witness: format!("sample {i}, seed {seed}") }),
                };
            }
        }
    }
    IdentityReport { exhaustive: false, checks, violation: None }
}

#[cfg(test)]
mod tests {
    use super::*;

    /// The one-dimensional Jordan pair `{x, y, z} = 2xyz`.
    fn line() -> TrilinearPair {
        let mut p = TrilinearPair::new([1, 1]);
        for s in [MINUS, PLUS] {
            p.prods[s].add(0, 0, 0, 0, Q::from_integer(2));
        }
        p
    }

    #[test]
    fn line_is_a_simple_jordan_pair() {
        let p = line();
        assert!(p.check_kantor_identities(CheckMode::Exhaustive).passed());
        assert!(p.check_kantor_identities(CheckMode::Sampled { samples: 50, seed: 1 }).passed());
        assert_eq!(p.params().unwrap(), PairParameters { d: 1, e: 0, f: None });
        assert!(p.is_simple(0));
    }

    #[test]
    fn asymmetric_scaling_breaks_identity_one() {
        let mut p = line();
        p.prods[PLUS].rows[0][0].2 = Q::from_integer(3);
        let r = p.check_kantor_identities(CheckMode::Exhaustive);
        assert!(!r.passed());
    }
}
