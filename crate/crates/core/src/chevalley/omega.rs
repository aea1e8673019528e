//! The grade-reversing automorphism of a close-to-Jordan envelope and the
//! Freudenthal-type triple system it produces.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use super::graded::{extract_pair, grade, GradedLieAlgebra};
use super::pair::{CheckMode, Tensor, TrilinearPair, MINUS, PLUS};
use super::ChevalleyAlgebra;
use crate::admissibility::close_to_jordan;
use crate::linalg::{rank_of_dense, Q};
use crate::root_hom::RootHom;
use crate::{Error, Result};

type Mat = Vec<Vec<Q>>;

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| if i == j { Q::one() } else { Q::zero() }).collect()).collect()
}

fn mul(a: &Mat, b: &Mat) -> Mat {
    let n = a.len();
    let m = b[0].len();
    let mut out = vec![vec![Q::zero(); m]; n];
    for i in 0..n {
        for (k, aik) in a[i].iter().enumerate() {
            if aik.is_zero() {
                continue;
            }
            for j in 0..m {
                if !b[k][j].is_zero() {
                    out[i][j] += *aik * b[k][j];
                }
            }
        }
    }
    out
}

fn unit(n: usize, i: usize) -> Vec<Q> {
    let mut v = vec![Q::zero(); n];
    v[i] = Q::one();
    v
}

fn scale(v: &[Q], c: Q) -> Vec<Q> {
    v.iter().map(|x| *x * c).collect()
}

fn add(a: &[Q], b: &[Q]) -> Vec<Q> {
    a.iter().zip(b).map(|(x, y)| *x + *y).collect()
}

fn sign_of(side: usize) -> i64 {
    if side == PLUS {
        1
    } else {
        -1
    }
}

/// `exp(ad e)` as a finite sum; `ad e` is nilpotent.
fn exp_ad(alg: &ChevalleyAlgebra, e: &[Q]) -> Result<Mat> {
    let n = alg.dim;
    let mut ad = vec![vec![Q::zero(); n]; n];
    for j in 0..n {
        let col = alg.bracket(e, &unit(n, j));
        for i in 0..n {
            ad[i][j] = col[i];
        }
    }
    let mut out = identity(n);
    let mut term = identity(n);
    for k in 1..=n {
        term = mul(&term, &ad);
        let f = Q::new(1, (1..=k as i64).product());
        let scaled: Mat = term.iter().map(|r| scale(r, f)).collect();
        if term.iter().all(|r| r.iter().all(|c| c.is_zero())) {
            return Ok(out);
        }
        out = out.iter().zip(&scaled).map(|(a, b)| add(a, b)).collect();
    }
    Err(Error::Internal("ad e is not nilpotent".into()))
}

/// `omega = exp(ad e+) exp(-ad e-) exp(ad e+)` for a close-to-Jordan
/// grading, with `e± = e_(±highest root)` and `h+ = [e+, e-]`.
pub struct Omega<'a> {
    pub graded: GradedLieAlgebra<'a>,
    pub matrix: Mat,
    pub e: [Vec<Q>; 2],
    pub h: Vec<Q>,
    /// Nonzero entries of each column of `matrix`.
    cols: Vec<Vec<(usize, Q)>>,
}

impl<'a> Omega<'a> {
    pub fn build(alg: &'a ChevalleyAlgebra) -> Result<Self> {
        let rs = &alg.rs;
        let s = close_to_jordan(rs)?;
        let graded = grade(alg, &RootHom::chi(s, rs.rank()))?;
        if graded.component(&[2]).len() != 1 || graded.component(&[-2]).len() != 1 {
            return Err(Error::Internal("degree ±2 components are not one-dimensional".into()));
        }
        let n = alg.dim;
        let hi = rs.index_of(&rs.highest).unwrap();
        let neg: Vec<i64> = rs.highest.iter().map(|c| -c).collect();
        let lo = rs.index_of(&neg).unwrap();
        let ep = unit(n, alg.root_basis(hi));
        let em = unit(n, alg.root_basis(lo));
        let h = alg.bracket(&ep, &em);
        if alg.bracket(&h, &ep) != scale(&ep, Q::from_integer(2)) || alg.bracket(&h, &em) != scale(&em, Q::from_integer(-2)) {
            return Err(Error::Internal("(e-, h+, e+) is not an sl2 triple".into()));
        }
        let a = exp_ad(alg, &ep)?;
        let b = exp_ad(alg, &scale(&em, -Q::one()))?;
        let matrix = mul(&mul(&a, &b), &a);
        let cols = (0..n).map(|j| (0..n).filter(|&i| !matrix[i][j].is_zero()).map(|i| (i, matrix[i][j])).collect()).collect();
        Ok(Omega { graded, matrix, e: [em, ep], h, cols })
    }

    pub fn apply(&self, v: &[Q]) -> Vec<Q> {
        let mut out = vec![Q::zero(); v.len()];
        for (j, vj) in v.iter().enumerate().filter(|(_, c)| !c.is_zero()) {
            for &(i, c) in &self.cols[j] {
                out[i] += *vj * c;
            }
        }
        out
    }

    fn alg(&self) -> &ChevalleyAlgebra {
        self.graded.alg
    }

    fn br(&self, x: &[Q], y: &[Q]) -> Vec<Q> {
        self.alg().bracket(x, y)
    }

    /// `zeta^sigma(x, a)` from `[[x, a], e^sigma] = zeta e^sigma`.
    pub fn zeta(&self, side: usize, x: &[Q], a: &[Q]) -> Result<Q> {
        let v = self.br(&self.br(x, a), &self.e[side]);
        let k = self.e[side].iter().position(|c| !c.is_zero()).unwrap();
        let z = v[k];
        if v != scale(&self.e[side], z) {
            return Err(Error::Internal("[[x, a], e] is not a multiple of e".into()));
        }
        Ok(z)
    }
}

#[derive(Clone, Debug, Default)]
pub struct OmegaReport {
    /// Properties checked, with the number of basis instances each.
    pub parts: Vec<(String, usize)>,
}

fn fail(part: &str, detail: String) -> Error {
    Error::Internal(format!("omega property {part} fails: {detail}"))
}

/// Every listed property of `omega`, exactly, on basis elements.
pub fn omega_lemma_checks(om: &Omega) -> Result<OmegaReport> {
    let alg = om.alg();
    let n = alg.dim;
    let g = &om.graded;
    let mut rep = OmegaReport::default();
    let basis: Vec<Vec<Q>> = (0..n).map(|i| unit(n, i)).collect();
    let images: Vec<Vec<Q>> = basis.iter().map(|v| om.apply(v)).collect();

    // Automorphism.
    for a in 0..n {
        for b in 0..n {
            let lhs = om.apply(&om.br(&basis[a], &basis[b]));
            if lhs != om.br(&images[a], &images[b]) {
                return Err(fail("automorphism", format!("basis pair ({a}, {b})")));
            }
        }
    }
    rep.parts.push(("automorphism".into(), n * n));

    // omega(e^sigma) = -e^-sigma, omega(h+) = -h+.
    for side in [MINUS, PLUS] {
        if om.apply(&om.e[side]) != scale(&om.e[1 - side], -Q::one()) {
            return Err(fail("omega(e) = -e", format!("sigma = {}", sign_of(side))));
        }
    }
    if om.apply(&om.h) != scale(&om.h, -Q::one()) {
        return Err(fail("omega(h) = -h", String::new()));
    }
    rep.parts.push(("omega(e) = -e, omega(h) = -h".into(), 3));

    // (i) and (ii): ad h+ acts on each graded piece by its degree.
    for b in 0..n {
        let d = g.degree(b)[0];
        if om.br(&om.h, &basis[b]) != scale(&basis[b], Q::from_integer(d)) {
            return Err(fail("(ii)", format!("basis {b}")));
        }
    }
    rep.parts.push(("(ii) eigenspaces".into(), n));

    // (iii) grade reversal.
    for b in 0..n {
        let d = -g.degree(b)[0];
        if images[b].iter().enumerate().any(|(o, c)| !c.is_zero() && g.degree(o)[0] != d) {
            return Err(fail("(iii)", format!("basis {b}")));
        }
    }
    rep.parts.push(("(iii) grade reversal".into(), n));

    let sides = [g.side_basis(MINUS), g.side_basis(PLUS)];
    // (iv) and (v).
    for side in [MINUS, PLUS] {
        for &b in &sides[side] {
            if om.apply(&images[b]) != scale(&basis[b], -Q::one()) {
                return Err(fail("(iv)", format!("basis {b}")));
            }
            let want = scale(&om.br(&om.e[1 - side], &basis[b]), Q::from_integer(-sign_of(side)));
            if images[b] != want {
                return Err(fail("(v)", format!("basis {b}")));
            }
        }
    }
    rep.parts.push(("(iv) omega^2 = -id".into(), sides[0].len() + sides[1].len()));
    rep.parts.push(("(v) omega = -sigma ad e".into(), sides[0].len() + sides[1].len()));

    // (vi) zeta: defining relation, symmetry and nondegeneracy.
    let d = sides[0].len();
    let mut zeta = [vec![vec![Q::zero(); d]; d], vec![vec![Q::zero(); d]; d]];
    for side in [MINUS, PLUS] {
        let other = 1 - side;
        for (i, &x) in sides[side].iter().enumerate() {
            for (j, &a) in sides[other].iter().enumerate() {
                let z = om.zeta(side, &basis[x], &basis[a])?;
                let want = scale(&om.e[side], -Q::from_integer(sign_of(side)) * z);
                if om.br(&basis[x], &images[a]) != want {
                    return Err(fail("(vi)", format!("[x, omega a] at ({x}, {a})")));
                }
                zeta[side][i][j] = z;
            }
        }
    }
    for i in 0..d {
        for j in 0..d {
            if zeta[PLUS][i][j] != zeta[MINUS][j][i] {
                return Err(fail("(vi)", format!("symmetry at ({i}, {j})")));
            }
        }
    }
    for (side, z) in zeta.iter().enumerate() {
        if rank_of_dense(z) != d {
            return Err(fail("(vi)", format!("zeta^{} is degenerate", sign_of(side))));
        }
    }
    rep.parts.push(("(vi) zeta".into(), 2 * d * d));

    // (vii) and (viii).
    let mut count = 0;
    for side in [MINUS, PLUS] {
        let other = 1 - side;
        for (i, &x) in sides[side].iter().enumerate() {
            for (j, &a) in sides[other].iter().enumerate() {
                let z = zeta[side][i][j];
                let xa = om.br(&basis[x], &basis[a]);
                let wxa = om.br(&images[x], &basis[a]);
                for &y in &sides[side] {
                    let wy = scale(&images[y], z);
                    if om.br(&wxa, &basis[y]) != wy {
                        return Err(fail("(vii)", format!("first identity at ({x}, {a}, {y})")));
                    }
                    if om.apply(&om.br(&xa, &basis[y])) != add(&wy, &om.br(&xa, &images[y])) {
                        return Err(fail("(vii)", format!("second identity at ({x}, {a}, {y})")));
                    }
                    count += 1;
                }
            }
        }
    }
    rep.parts.push(("(vii)".into(), count));
    let mut count = 0;
    for side in [MINUS, PLUS] {
        let pos: BTreeMap<usize, usize> = sides[1 - side].iter().enumerate().map(|(k, &b)| (b, k)).collect();
        for (ix, &x) in sides[side].iter().enumerate() {
            for &y in &sides[side] {
                for &z in &sides[side] {
                    let lhs = add(
                        &om.br(&om.br(&basis[x], &images[y]), &basis[z]),
                        &scale(&om.br(&om.br(&basis[z], &images[y]), &basis[x]), -Q::one()),
                    );
                    // zeta^sigma(x, omega z), with omega z expanded in P^-sigma.
                    let mut zz = Q::zero();
                    for (o, c) in images[z].iter().enumerate() {
                        if !c.is_zero() {
                            zz += *c * zeta[side][ix][pos[&o]];
                        }
                    }
                    if lhs != scale(&basis[y], -zz) {
                        return Err(fail("(viii)", format!("({x}, {y}, {z})")));
                    }
                    count += 1;
                }
            }
        }
    }
    rep.parts.push(("(viii)".into(), count));
    Ok(rep)
}

#[derive(Clone, Debug)]
pub struct FktsReport {
    pub dim: usize,
    /// Rank of the skew form.
    pub form_rank: usize,
    pub alternating: bool,
    /// `K(x, z) = <x, z> id` on every basis pair.
    pub balanced: bool,
    /// The signed double (`{}^- = -{}`) is a Kantor pair.
    pub signed_double_is_kantor: bool,
    /// The plain double (`{}^- = {}`) is a Kantor pair.
    pub plain_double_is_kantor: bool,
}

impl FktsReport {
    pub fn passed(&self) -> bool {
        self.form_rank == self.dim && self.alternating && self.balanced && self.signed_double_is_kantor
    }
}

/// The triple system `X = P^-` with `{a, b, c} = {a, omega b, c}^-` and skew
/// form `<a, b> = -zeta^-(a, omega b)`.
pub fn ctj_fkts_check(om: &Omega, seed: u64) -> Result<FktsReport> {
    let pair = extract_pair(&om.graded)?;
    let alg = om.alg();
    let n = alg.dim;
    let minus = om.graded.side_basis(MINUS);
    let plus = om.graded.side_basis(PLUS);
    let d = minus.len();
    let pos: BTreeMap<usize, usize> = plus.iter().enumerate().map(|(k, &b)| (b, k)).collect();
    // omega on P^- as a d x d matrix into P^+ coordinates.
    let mut w = vec![vec![Q::zero(); d]; d];
    for (j, &b) in minus.iter().enumerate() {
        for (o, c) in om.apply(&unit(n, b)).into_iter().enumerate() {
            if !c.is_zero() {
                let k = *pos.get(&o).ok_or_else(|| Error::Internal("omega does not map P- to P+".into()))?;
                w[k][j] = c;
            }
        }
    }
    let mut x = Tensor::zero(d, d);
    for a in 0..d {
        for b in 0..d {
            for (k, wkb) in w.iter().map(|r| r[b]).enumerate() {
                if wkb.is_zero() {
                    continue;
                }
                for &(c, o, v) in pair.prods[MINUS].row(a, k) {
                    x.add(a, b, c, o, v * wkb);
                }
            }
        }
    }
    let mut form = vec![vec![Q::zero(); d]; d];
    for a in 0..d {
        for b in 0..d {
            let wb: Vec<Q> = om.apply(&unit(n, minus[b]));
            form[a][b] = -om.zeta(MINUS, &unit(n, minus[a]), &wb)?;
        }
    }
    let alternating = (0..d).all(|a| form[a][a].is_zero() && (0..d).all(|b| form[a][b] == -form[b][a]));
    let form_rank = rank_of_dense(&form);
    // K(a, c) y = {a, y, c} - {c, y, a} should equal <a, c> y.
    let mut balanced = true;
    'outer: for a in 0..d {
        for c in 0..d {
            for y in 0..d {
                let mut v = vec![Q::zero(); d];
                for &(cc, o, val) in x.row(a, y) {
                    if cc == c {
                        v[o] += val;
                    }
                }
                for &(cc, o, val) in x.row(c, y) {
                    if cc == a {
                        v[o] -= val;
                    }
                }
                v[y] -= form[a][c];
                if v.iter().any(|q| !q.is_zero()) {
                    balanced = false;
                    break 'outer;
                }
            }
        }
    }
    let double = |xi: i64| -> TrilinearPair {
        let mut p = TrilinearPair::new([d, d]);
        p.prods[PLUS] = x.clone();
        let mut m = x.clone();
        for r in &mut m.rows {
            for e in r.iter_mut() {
                e.2 *= Q::from_integer(xi);
            }
        }
        p.prods[MINUS] = m;
        p
    };
    let mode = CheckMode::Auto { seed };
    Ok(FktsReport {
        dim: d,
        form_rank,
        alternating,
        balanced,
        signed_double_is_kantor: double(-1).check_kantor_identities(mode).passed(),
        plain_double_is_kantor: double(1).check_kantor_identities(mode).passed(),
    })
}
