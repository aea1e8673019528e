//! Verification suites: each module's invariants run over whole diagram
//! types, collected into a serializable report.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use crate::admissibility::{
    all_sp_pairs, close_to_jordan, ctj_sp_gradings, enumerate_ka, enumerate_sp, is_kantor_admissible, is_sp_admissible, params,
};
use crate::chevalley::{
    ctj_fkts_check, extract_pair, grade, omega_lemma_checks, ChevalleyAlgebra, CheckMode, Omega, RootOrder, TrilinearPair,
};
use crate::matrix_pairs::{table_row, verify_excluded, verify_row};
use crate::root_hom::{is_positive, positivize, star, RootHom, WeylElement};
use crate::weyl_image::{check_support_lemma, check_value_lemma, weyl_image};
use crate::{DiagramType, Error, Family, NodeSet, Result, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Admissibility,
    Weyl,
    Chevalley,
    Table1,
    All,
}

impl Suite {
    pub const PARTS: [Suite; 4] = [Suite::Admissibility, Suite::Weyl, Suite::Chevalley, Suite::Table1];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Admissibility => "admissibility",
            Suite::Weyl => "weyl",
            Suite::Chevalley => "chevalley",
            Suite::Table1 => "table1",
            Suite::All => "all",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        [Suite::Admissibility, Suite::Weyl, Suite::Chevalley, Suite::Table1, Suite::All]
            .into_iter()
            .find(|x| x.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub suite: &'static str,
    #[serde(rename = "type")]
    pub ty: String,
    pub name: String,
    pub passed: bool,
    /// Number of instances examined.
    pub count: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Report {
    pub seed: u64,
    pub passed: bool,
    pub total: usize,
    pub failed: usize,
    pub checks: Vec<Check>,
}

struct Ctx {
    suite: Suite,
    ty: DiagramType,
    checks: Vec<Check>,
}

impl Ctx {
    fn run(&mut self, name: &str, f: impl FnOnce() -> Result<usize>) {
        let (passed, count, detail) = match f() {
            Ok(n) => (true, n, None),
            Err(e) => (false, 0, Some(e.to_string())),
        };
        self.checks.push(Check { suite: self.suite.name(), ty: self.ty.to_string(), name: name.into(), passed, count, detail });
    }
}

fn fail(msg: String) -> Error {
    Error::Internal(msg)
}

/// Nontrivial SP gradings of the close-to-Jordan pair, by type.
pub fn expected_ctj_gradings(ty: DiagramType) -> Option<usize> {
    let n = ty.rank;
    match ty.family {
        Family::A if n >= 2 => Some(n.div_ceil(2)),
        Family::B | Family::C => Some(1),
        Family::D if n == 4 => Some(1),
        Family::D => Some(2),
        Family::E if n == 8 => Some(0),
        Family::E => Some(1),
        Family::F | Family::G => Some(0),
        _ => None,
    }
}

fn admissibility(c: &mut Ctx, rs: &RootSystem) {
    let n = rs.rank();
    let ka: Vec<NodeSet> = NodeSet::all_subsets(n).filter(|&s| is_kantor_admissible(rs, s).unwrap_or(false)).collect();
    c.run("Kantor admissibility: both routes agree on every subset", || {
        for s in NodeSet::all_subsets(n) {
            is_kantor_admissible(rs, s)?;
        }
        Ok(1 << n)
    });
    c.run("SP admissibility: both routes agree on every pair", || {
        let mut k = 0;
        for &s in &ka {
            for t in NodeSet::all_subsets(n) {
                is_sp_admissible(rs, s, t)?;
                k += 1;
            }
        }
        Ok(k)
    });
    c.run("Kantor orbits partition the admissible subsets", || {
        let table = enumerate_ka(rs)?;
        let total: usize = table.iter().map(|e| e.size).sum();
        if total != ka.len() {
            return Err(fail(format!("orbit sizes sum to {total}, {} admissible subsets", ka.len())));
        }
        Ok(table.len())
    });
    c.run("SP orbits partition the admissible pairs", || {
        let table = enumerate_sp(rs, false)?;
        let total: usize = table.iter().map(|e| e.size).sum();
        let pairs = all_sp_pairs(rs)?.len();
        if total != pairs {
            return Err(fail(format!("orbit sizes sum to {total}, {pairs} admissible pairs")));
        }
        Ok(table.len())
    });
    c.run("Jordan exactly when the highest root has value one", || {
        for &s in &ka {
            let jordan = params(rs, s, None).e == 0;
            if jordan != (crate::admissibility::chi(s, &rs.highest) == 1) {
                return Err(fail(format!("S = {s}")));
            }
        }
        Ok(ka.len())
    });
    if let Some(want) = expected_ctj_gradings(rs.ty) {
        c.run("close-to-Jordan SP gradings count", || {
            let got = ctj_sp_gradings(rs)?.len();
            if got != want {
                return Err(fail(format!("{got} gradings, expected {want}")));
            }
            Ok(got)
        });
    }
}

fn weyl(c: &mut Ctx, rs: &RootSystem) {
    let n = rs.rank();
    let pairs = all_sp_pairs(rs).unwrap_or_default();
    c.run("three Weyl-image routes agree", || {
        for &(s, t) in &pairs {
            for u in WeylElement::ALL {
                weyl_image(rs, u, s, t)?;
            }
        }
        Ok(pairs.len() * 8)
    });
    c.run("Weyl images form a group action", || {
        for &(s, t) in &pairs {
            for u in WeylElement::ALL {
                for v in WeylElement::ALL {
                    let (s1, t1) = weyl_image(rs, v, s, t)?;
                    if weyl_image(rs, u, s1, t1)? != weyl_image(rs, u.compose(v), s, t)? {
                        return Err(fail(format!("{u} after {v} on ({s}, {t})")));
                    }
                }
            }
        }
        Ok(pairs.len() * 64)
    });
    c.run("dihedral relations", || {
        use WeylElement::*;
        let pow = |u: WeylElement, k: usize| (0..k).fold(One, |acc, _| acc.compose(u));
        let ok = pow(S1, 2) == One && pow(S2, 2) == One && pow(S1.compose(S2), 4) == One && pow(S1.compose(S2), 2) == Neg;
        if !ok {
            return Err(fail("relations of the dihedral group of order 8".into()));
        }
        Ok(4)
    });
    c.run("positivize is idempotent", || {
        for &(s, t) in &pairs {
            let chi = RootHom::chi_pair(s, t, n);
            let (p0, w0) = positivize(rs, &chi)?;
            if p0 != chi || !w0.is_empty() {
                return Err(fail(format!("({s}, {t}) moved")));
            }
            for u in WeylElement::ALL {
                let p = star(rs, u, &chi)?;
                let (again, w) = positivize(rs, &p)?;
                if !is_positive(&p) || again != p || !w.is_empty() {
                    return Err(fail(format!("{u} on ({s}, {t})")));
                }
            }
        }
        Ok(pairs.len() * 9)
    });
    c.run("value lemma on every SP pair", || {
        for &(s, t) in &pairs {
            if !check_value_lemma(rs, s, t) {
                return Err(fail(format!("({s}, {t})")));
            }
        }
        Ok(pairs.len())
    });
    c.run("support lemma on every subset and node", || {
        let mut k = 0;
        for x in NodeSet::all_subsets(n) {
            for l in (0..n).filter(|&l| !x.contains(l)) {
                if !check_support_lemma(rs, x, l) {
                    return Err(fail(format!("X = {x}, node {}", l + 1)));
                }
                k += 1;
            }
        }
        Ok(k)
    });
}

/// Identity checks depend only on the products, which do not depend on `T`.
fn cached_identities(cache: &mut BTreeMap<NodeSet, bool>, s: NodeSet, p: &TrilinearPair, seed: u64) -> Result<()> {
    let ok = *cache.entry(s).or_insert_with(|| p.check_kantor_identities(CheckMode::Auto { seed }).passed());
    if ok {
        Ok(())
    } else {
        let r = p.check_kantor_identities(CheckMode::Auto { seed });
        Err(fail(format!("identity violation for S = {s}: {:?}", r.violation)))
    }
}

fn chevalley(c: &mut Ctx, rs: &RootSystem, seed: u64) {
    let alg = match ChevalleyAlgebra::new(rs, RootOrder::Lex) {
        Ok(a) => a,
        Err(e) => {
            c.run("build Chevalley basis", || Err(e));
            return;
        }
    };
    c.run("dimension is roots plus rank", || {
        if alg.dim != rs.roots.len() + rs.rank() {
            return Err(fail(format!("dimension {}", alg.dim)));
        }
        Ok(1)
    });
    c.run("antisymmetry and Jacobi", || {
        alg.check_antisymmetry()?;
        alg.check_jacobi(seed)
    });
    let mut cache = BTreeMap::new();
    c.run("Kantor pairs: identities, parameters, five-grading", || {
        let table = enumerate_ka(rs)?;
        for e in &table {
            let g = grade(&alg, &RootHom::chi(e.rep.s, rs.rank()))?;
            g.check_degrees()?;
            g.check_five_decomposition()?;
            let p = extract_pair(&g)?;
            cached_identities(&mut cache, e.rep.s, &p, seed)?;
            let got = p.params()?;
            if got != e.params {
                return Err(fail(format!("{}: Chevalley {got:?}, root count {:?}", e.label, e.params)));
            }
            let top = [g.component(&[2]).len(), g.component(&[-2]).len()];
            if top != [got.e, got.e] {
                return Err(fail(format!("{}: degree ±2 dimensions {top:?}, e = {}", e.label, got.e)));
            }
        }
        Ok(table.len())
    });
    let sp = enumerate_sp(rs, false).unwrap_or_default();
    c.run("SP pairs: identities, parameters, grading law", || {
        for e in &sp {
            let t = e.rep.t.unwrap();
            let g = grade(&alg, &RootHom::chi_pair(e.rep.s, t, rs.rank()))?;
            if !g.check_support() {
                return Err(fail(format!("{}: support outside BC2", e.label)));
            }
            let p = extract_pair(&g)?;
            cached_identities(&mut cache, e.rep.s, &p, seed)?;
            if !p.check_grading_law() {
                return Err(fail(format!("{}: SP grading law", e.label)));
            }
            let got = p.params()?;
            if got != e.params {
                return Err(fail(format!("{}: Chevalley {got:?}, root count {:?}", e.label, e.params)));
            }
        }
        Ok(sp.len())
    });
    c.run("regraded algebras match Weyl images", || {
        let mut k = 0;
        for e in &sp {
            let t = e.rep.t.unwrap();
            let g = grade(&alg, &RootHom::chi_pair(e.rep.s, t, rs.rank()))?;
            for u in WeylElement::ALL {
                let got = extract_pair(&g.theta_image(u)?)?.params()?;
                let (s2, t2) = weyl_image(rs, u, e.rep.s, t)?;
                let want = params(rs, s2, Some(t2));
                if got != want {
                    return Err(fail(format!("{u} on {}: regraded {got:?}, image {want:?}", e.label)));
                }
                k += 1;
            }
        }
        Ok(k)
    });
    if close_to_jordan(rs).is_ok() {
        c.run("omega properties and the skew form", || {
            let om = Omega::build(&alg)?;
            let rep = omega_lemma_checks(&om)?;
            let f = ctj_fkts_check(&om, seed)?;
            if !f.passed() {
                return Err(fail(format!("{f:?}")));
            }
            Ok(rep.parts.iter().map(|p| p.1).sum())
        });
    }
}

fn table1(c: &mut Ctx, seed: u64) {
    let ty = c.ty;
    for second in [false, true] {
        if let Some(row) = table_row(ty.family, ty.rank, second) {
            let name = format!("reflection row S = {}, T = {}", row.s, row.t);
            c.run(&name, || {
                let r = verify_row(&row, seed)?;
                if !r.passed() {
                    return Err(fail(format!("{r:?}")));
                }
                Ok(1)
            });
        }
    }
    if ty.family == Family::A {
        for t in 2..ty.rank {
            c.run(&format!("excluded case T = {{{t}}}"), || {
                let r = verify_excluded(ty.rank, t, seed)?;
                if !r.passed() {
                    return Err(fail(format!("{r:?}")));
                }
                Ok(1)
            });
        }
    }
}

/// Runs `suite` on each type. `Suite::All` runs every part.
pub fn run(suite: Suite, types: &[DiagramType], seed: u64) -> Report {
    let parts: Vec<Suite> = if suite == Suite::All { Suite::PARTS.to_vec() } else { vec![suite] };
    let mut checks = Vec::new();
    for &ty in types {
        let rs = RootSystem::new(ty);
        for &part in &parts {
            let mut c = Ctx { suite: part, ty, checks: Vec::new() };
            match part {
                Suite::Admissibility => admissibility(&mut c, &rs),
                Suite::Weyl => weyl(&mut c, &rs),
                Suite::Chevalley => chevalley(&mut c, &rs, seed),
                Suite::Table1 => table1(&mut c, seed),
                Suite::All => unreachable!(),
            }
            checks.extend(c.checks);
        }
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    Report { seed, passed: failed == 0, total: checks.len(), failed, checks }
}
