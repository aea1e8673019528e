//! Kantor-admissible subsets and short-Peirce-admissible pairs of subsets,
//! their orbits under diagram automorphisms, and the close-to-Jordan
//! marking.
//!
//! Each admissibility predicate is evaluated twice: once by the highest-root
//! criterion and once by brute-force membership of the indicator map in the
//! homomorphism set. Disagreement is reported as [`Error::Internal`].

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::root_hom::{in_hom, BcTarget, RootHom};
use crate::{DiagramType, Error, NodeSet, Result, RootSystem};

/// A marked diagram. `t` is `None` for an ungraded (Kantor) marking.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Marking {
    pub ty: DiagramType,
    pub s: NodeSet,
    pub t: Option<NodeSet>,
}

impl Marking {
    pub fn kantor(ty: DiagramType, s: NodeSet) -> Self {
        Marking { ty, s, t: None }
    }

    pub fn sp(ty: DiagramType, s: NodeSet, t: NodeSet) -> Self {
        Marking { ty, s, t: Some(t) }
    }

    pub fn is_trivial(&self) -> bool {
        match self.t {
            None => false,
            Some(t) => t.is_empty() || t == self.s,
        }
    }
}

impl fmt::Display for Marking {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.t {
            None => write!(f, "{} S={}", self.ty, self.s),
            Some(t) => write!(f, "{} S={} T={}", self.ty, self.s, t),
        }
    }
}

/// `d = dim P^sigma`, `e` = dimension of the span of the K-operators,
/// `f = dim P_1^sigma` (graded markings only).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PairParameters {
    pub d: usize,
    pub e: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub f: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrbitEntry {
    pub rep: Marking,
    pub size: usize,
    pub params: PairParameters,
    pub label: String,
}

pub fn chi(s: NodeSet, v: &[i64]) -> i64 {
    s.iter().map(|i| v[i]).sum()
}

pub fn ka_by_highest_root(rs: &RootSystem, s: NodeSet) -> bool {
    matches!(chi(s, &rs.highest), 1 | 2)
}

pub fn ka_by_hom(rs: &RootSystem, s: NodeSet) -> bool {
    !s.is_empty() && in_hom(rs, &RootHom::chi(s, rs.rank()), BcTarget::Bc1)
}

pub fn is_kantor_admissible(rs: &RootSystem, s: NodeSet) -> Result<bool> {
    let a = ka_by_highest_root(rs, s);
    let b = ka_by_hom(rs, s);
    if a != b {
        return Err(Error::Internal(format!("Kantor admissibility of {s} in {}: highest-root test {a}, homomorphism test {b}", rs.ty)));
    }
    Ok(a)
}

/// The first failing condition of the highest-root criterion, if any.
pub fn sp_violation(rs: &RootSystem, s: NodeSet, t: NodeSet) -> Option<String> {
    let cs = chi(s, &rs.highest);
    let ct = chi(t, &rs.highest);
    if !matches!(cs, 1 | 2) {
        return Some(format!("χ_S(μ⁺) = {cs}, expected 1 or 2"));
    }
    if ct > 2 {
        return Some(format!("χ_T(μ⁺) = {ct} exceeds 2"));
    }
    if ct == 2 {
        if cs != 2 {
            return Some("χ_T(μ⁺) = 2 requires χ_S(μ⁺) = 2".into());
        }
        let n = rs.rank();
        let rest = NodeSet::full(n + 1).minus(t);
        if !rs.comp(rest, n, true).intersect(s).is_empty() {
            return Some("comp(Π̃∖T, μ⁻) meets S".into());
        }
    }
    None
}

pub fn sp_by_highest_root(rs: &RootSystem, s: NodeSet, t: NodeSet) -> bool {
    sp_violation(rs, s, t).is_none()
}

pub fn sp_by_hom(rs: &RootSystem, s: NodeSet, t: NodeSet) -> bool {
    !s.is_empty() && in_hom(rs, &RootHom::chi_pair(s, t, rs.rank()), BcTarget::Bc2)
}

pub fn is_sp_admissible(rs: &RootSystem, s: NodeSet, t: NodeSet) -> Result<bool> {
    let a = sp_by_highest_root(rs, s, t);
    let b = sp_by_hom(rs, s, t);
    if a != b {
        return Err(Error::Internal(format!(
            "SP admissibility of ({s}, {t}) in {}: highest-root test {a}, homomorphism test {b}",
            rs.ty
        )));
    }
    Ok(a)
}

/// Validate a marking, naming the failing criterion.
pub fn validate(rs: &RootSystem, m: &Marking) -> Result<()> {
    if !rs.ty.is_reduced() {
        return Err(Error::Unsupported(format!("{} is not reduced", rs.ty)));
    }
    let full = NodeSet::full(rs.rank());
    if !m.s.is_subset(full) || !m.t.unwrap_or_default().is_subset(full) {
        return Err(Error::NotAdmissible("marking uses nodes outside the diagram".into()));
    }
    match m.t {
        None => {
            if !is_kantor_admissible(rs, m.s)? {
                return Err(Error::NotAdmissible(format!("χ_S(μ⁺) = {}, expected 1 or 2", chi(m.s, &rs.highest))));
            }
        }
        Some(t) => {
            if !is_sp_admissible(rs, m.s, t)? {
                let why = sp_violation(rs, m.s, t).unwrap_or_else(|| "S is empty".into());
                return Err(Error::NotAdmissible(why));
            }
        }
    }
    Ok(())
}

/// Parameters by counting roots: `d = #{chi_S = 1}`, `e = #{chi_S = 2}`,
/// `f = #{chi_S = 1 and chi_T = 1}`.
pub fn params(rs: &RootSystem, s: NodeSet, t: Option<NodeSet>) -> PairParameters {
    let mut p = PairParameters { d: 0, e: 0, f: t.map(|_| 0) };
    for r in &rs.roots {
        match chi(s, r) {
            1 => {
                p.d += 1;
                if let (Some(t), Some(f)) = (t, p.f.as_mut()) {
                    if chi(t, r) == 1 {
                        *f += 1;
                    }
                }
            }
            2 => p.e += 1,
            _ => {}
        }
    }
    p
}

/// Lexicographically least image of `(s, t)` under the diagram automorphisms,
/// and the orbit size.
pub fn canonical(auts: &[Vec<usize>], s: NodeSet, t: Option<NodeSet>) -> ((NodeSet, Option<NodeSet>), usize) {
    let mut images: Vec<(NodeSet, Option<NodeSet>)> = auts.iter().map(|p| (s.map(p), t.map(|t| t.map(p)))).collect();
    images.sort();
    images.dedup();
    (images[0], images.len())
}

fn label_orbits(ty: DiagramType, mut reps: Vec<(Marking, usize, PairParameters)>) -> Vec<OrbitEntry> {
    reps.sort_by_key(|(m, _, _)| (m.s, m.t));
    let mut counts: BTreeMap<PairParameters, usize> = BTreeMap::new();
    for (_, _, p) in &reps {
        *counts.entry(*p).or_default() += 1;
    }
    let mut seen: BTreeMap<PairParameters, usize> = BTreeMap::new();
    reps.into_iter()
        .map(|(rep, size, params)| {
            let k = seen.entry(params).or_default();
            let suffix = if counts[&params] > 1 { suffix_letter(*k) } else { String::new() };
            *k += 1;
            let label = match params.f {
                None => format!("{ty}({},{}{suffix})", params.d, params.e),
                Some(f) => format!("{ty}({},{},{f}{suffix})", params.d, params.e),
            };
            OrbitEntry { rep, size, params, label }
        })
        .collect()
}

fn suffix_letter(k: usize) -> String {
    let mut s = String::new();
    let mut k = k;
    loop {
        s.insert(0, (b'a' + (k % 26) as u8) as char);
        if k < 26 {
            break;
        }
        k = k / 26 - 1;
    }
    s
}

/// Subsets of size one or two; every Kantor-admissible subset has at most
/// two elements since the highest root has all coefficients positive.
fn small_subsets(n: usize) -> impl Iterator<Item = NodeSet> {
    (0..n).flat_map(move |i| (i..n).map(move |j| NodeSet::singleton(i).with(j)))
}

pub fn enumerate_ka(rs: &RootSystem) -> Result<Vec<OrbitEntry>> {
    if !rs.ty.is_reduced() {
        return Err(Error::Unsupported(format!("{} is not reduced", rs.ty)));
    }
    let auts = rs.automorphisms();
    let mut reps: BTreeMap<NodeSet, (usize, PairParameters)> = BTreeMap::new();
    for s in small_subsets(rs.rank()) {
        if is_kantor_admissible(rs, s)? {
            let ((c, _), size) = canonical(&auts, s, None);
            reps.entry(c).or_insert_with(|| (size, params(rs, c, None)));
        }
    }
    let reps = reps.into_iter().map(|(s, (size, p))| (Marking::kantor(rs.ty, s), size, p)).collect();
    Ok(label_orbits(rs.ty, reps))
}

/// All SP-admissible pairs (not up to symmetry).
pub fn all_sp_pairs(rs: &RootSystem) -> Result<Vec<(NodeSet, NodeSet)>> {
    let n = rs.rank();
    let mut out = Vec::new();
    for s in small_subsets(n) {
        if !is_kantor_admissible(rs, s)? {
            continue;
        }
        for t in std::iter::once(NodeSet::EMPTY).chain(small_subsets(n)) {
            if is_sp_admissible(rs, s, t)? {
                out.push((s, t));
            }
        }
    }
    Ok(out)
}

pub fn enumerate_sp(rs: &RootSystem, nontrivial_only: bool) -> Result<Vec<OrbitEntry>> {
    if !rs.ty.is_reduced() {
        return Err(Error::Unsupported(format!("{} is not reduced", rs.ty)));
    }
    let auts = rs.automorphisms();
    let mut reps: BTreeMap<(NodeSet, NodeSet), (usize, PairParameters)> = BTreeMap::new();
    for (s, t) in all_sp_pairs(rs)? {
        let ((cs, ct), size) = canonical(&auts, s, Some(t));
        let ct = ct.unwrap();
        reps.entry((cs, ct)).or_insert_with(|| (size, params(rs, cs, Some(ct))));
    }
    // Labels are assigned on the full table so that they do not depend on
    // the filter.
    let reps = reps.into_iter().map(|((s, t), (size, p))| (Marking::sp(rs.ty, s, t), size, p)).collect();
    let mut table = label_orbits(rs.ty, reps);
    if nontrivial_only {
        table.retain(|e| !e.rep.is_trivial());
    }
    Ok(table)
}

/// The orbit of `m` in a table produced by [`enumerate_ka`] or [`enumerate_sp`].
pub fn find_orbit<'a>(rs: &RootSystem, table: &'a [OrbitEntry], m: &Marking) -> Option<&'a OrbitEntry> {
    let ((s, t), _) = canonical(&rs.automorphisms(), m.s, m.t);
    table.iter().find(|e| e.rep.s == s && e.rep.t == t)
}

/// Nodes joined to the lowest root; these carry coefficient 2 in the
/// highest root for every type except A1.
pub fn close_to_jordan(rs: &RootSystem) -> Result<NodeSet> {
    if !rs.ty.is_reduced() {
        return Err(Error::Unsupported(format!("{} is not reduced", rs.ty)));
    }
    let s = rs.lowest_neighbours();
    if chi(s, &rs.highest) != 2 {
        return Err(Error::Unsupported(format!("{} has no close-to-Jordan marking", rs.ty)));
    }
    let expected = if rs.ty.family == crate::Family::A { 2 } else { 1 };
    if s.len() != expected {
        return Err(Error::Internal(format!("close-to-Jordan marking of {} has {} nodes", rs.ty, s.len())));
    }
    Ok(s)
}

/// Nontrivial SP gradings of the close-to-Jordan marking: `T = {lambda}`
/// with coefficient one in the highest root, up to diagram automorphisms.
pub fn ctj_sp_gradings(rs: &RootSystem) -> Result<Vec<OrbitEntry>> {
    let s = close_to_jordan(rs)?;
    let auts = rs.automorphisms();
    let full = enumerate_sp(rs, false)?;
    let mut seen = std::collections::BTreeSet::new();
    let mut out = Vec::new();
    for l in 0..rs.rank() {
        if rs.highest[l] != 1 {
            continue;
        }
        let t = NodeSet::singleton(l);
        if !is_sp_admissible(rs, s, t)? {
            return Err(Error::Internal(format!("({s}, {t}) should be SP-admissible")));
        }
        let (c, _) = canonical(&auts, s, Some(t));
        if seen.insert(c) {
            let entry = full
                .iter()
                .find(|e| e.rep.s == c.0 && e.rep.t == c.1)
                .ok_or_else(|| Error::Internal("grading missing from the SP table".into()))?;
            out.push(entry.clone());
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s).unwrap()
    }

    fn set(ids: &[usize]) -> NodeSet {
        ids.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn routes_agree_on_every_subset() {
        for t in DiagramType::all_reduced(1, 6) {
            let r = RootSystem::new(t);
            let n = r.rank();
            for s in NodeSet::all_subsets(n) {
                is_kantor_admissible(&r, s).unwrap();
                for tt in NodeSet::all_subsets(n) {
                    if n <= 5 || tt.len() <= 3 {
                        is_sp_admissible(&r, s, tt).unwrap();
                    }
                }
            }
        }
    }

    #[test]
    fn e6_kantor_orbits() {
        let table = enumerate_ka(&rs("E6")).unwrap();
        let got: Vec<(String, Vec<usize>)> = table.iter().map(|e| (e.label.clone(), e.rep.s.ids())).collect();
        assert_eq!(
            got,
            vec![
                ("E6(16,0)".to_string(), vec![1]),
                ("E6(16,8)".to_string(), vec![1, 5]),
                ("E6(20,5)".to_string(), vec![2]),
                ("E6(20,1)".to_string(), vec![6]),
            ]
        );
    }

    #[test]
    fn e6_nontrivial_sp_orbits() {
        let r = rs("E6");
        let table = enumerate_sp(&r, true).unwrap();
        assert_eq!(table.len(), 7);
        let expect = [
            ("E6(16,0,8)", &[1][..], &[5][..]),
            ("E6(20,1,10)", &[6], &[1]),
            ("E6(20,5,10)", &[2], &[1]),
            // Counting roots puts f = 12 on T = {6}: twenty roots have
            // coefficient 1 at node 2 and eight of them avoid node 6.
            ("E6(20,5,12)", &[2], &[6]),
            ("E6(20,5,8)", &[2], &[5]),
            ("E6(16,8,8a)", &[1, 5], &[5]),
            ("E6(16,8,8b)", &[1, 5], &[6]),
        ];
        for (label, s, t) in expect {
            let e = find_orbit(&r, &table, &Marking::sp(r.ty, set(s), set(t))).unwrap();
            assert_eq!(e.label, label);
        }
    }

    #[test]
    fn violation_names_the_component_condition() {
        let r = rs("E6");
        // T = {2} has coefficient 2; the component of the lowest root in the
        // complement of T reaches node 6, which lies in S.
        let why = sp_violation(&r, set(&[6]), set(&[2])).unwrap();
        assert!(why.contains("comp(Π̃∖T, μ⁻) meets S"), "{why}");
    }

    #[test]
    fn close_to_jordan_markings() {
        assert_eq!(close_to_jordan(&rs("E6")).unwrap(), set(&[6]));
        assert_eq!(close_to_jordan(&rs("A5")).unwrap(), set(&[1, 5]));
        assert_eq!(close_to_jordan(&rs("E7")).unwrap(), set(&[1]));
        assert_eq!(close_to_jordan(&rs("C3")).unwrap(), set(&[1]));
        assert_eq!(close_to_jordan(&rs("B3")).unwrap(), set(&[2]));
        assert!(close_to_jordan(&rs("A1")).is_err());
    }

    #[test]
    fn suffix_letters() {
        assert_eq!(suffix_letter(0), "a");
        assert_eq!(suffix_letter(25), "z");
        assert_eq!(suffix_letter(26), "aa");
    }
}
