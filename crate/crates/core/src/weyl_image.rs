//! The action of the eight automorphisms of BC2 on SP-admissible markings.
//!
//! Three independent routes compute `u * (S, T)`:
//! - a table of closed forms (the shortcut descriptions of the reflected and
//!   shifted markings),
//! - the general formulas through longest elements of parabolic subgroups,
//! - positivizing `u . chi_(S,T)` directly.
//!
//! [`weyl_image`] runs all three and fails loudly on any disagreement.

use crate::admissibility::{chi, find_orbit, validate, Marking, OrbitEntry};
use crate::root_hom::{star, to_marking, RootHom, WeylElement};
use crate::{Error, Family, NodeSet, Result, RootSystem};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Table,
    General,
    Oracle,
}

/// `sigma_Pi` applied to a subset.
fn sigma_whole(rs: &RootSystem, y: NodeSet) -> Result<NodeSet> {
    rs.sigma_set(NodeSet::full(rs.rank()), y)
}

/// Reflected first set, shortcut form.
pub fn breve_s_table(rs: &RootSystem, s: NodeSet, t: NodeSet) -> Result<NodeSet> {
    let sm = s.minus(t);
    let rest = NodeSet::full(rs.rank()).minus(t);
    Ok(match chi(sm, &rs.highest) {
        0 => s,
        1 => rs.sigma_set(rest, sm)?.union(t.minus(s)),
        2 => rs.sigma_set(rest, sm)?,
        c => return Err(Error::Internal(format!("χ_(S∖T)(μ⁺) = {c}"))),
    })
}

/// Reflected first set, general form through `w~_(Pi \ T)`.
pub fn breve_s_general(rs: &RootSystem, s: NodeSet, t: NodeSet) -> Result<NodeSet> {
    let sm = s.minus(t);
    let rest = NodeSet::full(rs.rank()).minus(t);
    let w = rs.longest_element(rest);
    let mut out = rs.sigma_set(rest, sm)?;
    for l in t.iter() {
        let v = w.apply(&rs.simple_root(l));
        if chi(sm, &v) + (s.intersect(t).contains(l) as i64) == 1 {
            out = out.with(l);
        }
    }
    Ok(out)
}

/// The exceptional configuration in type A_n (n >= 3): `S = {l, l'}`,
/// `T = {m}` with `l'` strictly between `l` and `m`. Returns `(l, m)`.
fn exceptional_a(rs: &RootSystem, s: NodeSet, t: NodeSet) -> Option<(usize, usize)> {
    if rs.ty.family != Family::A || rs.rank() < 3 || s.len() != 2 || t.len() != 1 || !s.intersect(t).is_empty() {
        return None;
    }
    let m = t.iter().next()?;
    let v: Vec<usize> = s.iter().collect();
    for (l, lp) in [(v[0], v[1]), (v[1], v[0])] {
        if l.min(m) < lp && lp < l.max(m) {
            return Some((l, m));
        }
    }
    None
}

/// Shifted second set, shortcut form.
pub fn shift_t_table(rs: &RootSystem, s: NodeSet, t: NodeSet) -> Result<NodeSet> {
    let rest = NodeSet::full(rs.rank()).minus(s);
    if t.is_subset(s) {
        return Ok(s.minus(t));
    }
    if let Some((l, m)) = exceptional_a(rs, s, t) {
        return Ok(rs.sigma_set(rest, NodeSet::singleton(m))?.with(l));
    }
    rs.sigma_set(rest, t.minus(s))
}

/// Shifted second set, general form through `w~_(Pi \ S)`.
pub fn shift_t_general(rs: &RootSystem, s: NodeSet, t: NodeSet) -> Result<NodeSet> {
    let rest = NodeSet::full(rs.rank()).minus(s);
    let tm = t.minus(s);
    let w = rs.longest_element(rest);
    let mut out = rs.sigma_set(rest, tm)?;
    for l in s.minus(t).iter() {
        let v = w.apply(&rs.simple_root(l));
        if RootSystem::support(&v).intersect(tm).is_empty() {
            out = out.with(l);
        }
    }
    Ok(out)
}

fn compose_rows(rs: &RootSystem, u: WeylElement, s: NodeSet, t: NodeSet, general: bool) -> Result<(NodeSet, NodeSet)> {
    let breve = || if general { breve_s_general(rs, s, t) } else { breve_s_table(rs, s, t) };
    let shift = || if general { shift_t_general(rs, s, t) } else { shift_t_table(rs, s, t) };
    let sg = |y: NodeSet| sigma_whole(rs, y);
    use WeylElement::*;
    Ok(match u {
        One => (s, t),
        S1 => (breve()?, t),
        S2 => (s, shift()?),
        S2S1 => (breve()?, sg(shift()?)?),
        Neg => (sg(s)?, sg(t)?),
        NegS1 => (sg(breve()?)?, sg(t)?),
        NegS2 => (sg(s)?, sg(shift()?)?),
        NegS2S1 => (sg(breve()?)?, shift()?),
    })
}

pub fn weyl_image_by(rs: &RootSystem, route: Route, u: WeylElement, s: NodeSet, t: NodeSet) -> Result<(NodeSet, NodeSet)> {
    match route {
        Route::Table => compose_rows(rs, u, s, t, false),
        Route::General => compose_rows(rs, u, s, t, true),
        Route::Oracle => to_marking(&star(rs, u, &RootHom::chi_pair(s, t, rs.rank()))?),
    }
}

/// `u * (S, T)`, with all three routes compared.
pub fn weyl_image(rs: &RootSystem, u: WeylElement, s: NodeSet, t: NodeSet) -> Result<(NodeSet, NodeSet)> {
    validate(rs, &Marking::sp(rs.ty, s, t))?;
    let a = weyl_image_by(rs, Route::Table, u, s, t)?;
    let b = weyl_image_by(rs, Route::General, u, s, t)?;
    let c = weyl_image_by(rs, Route::Oracle, u, s, t)?;
    if a != b || b != c {
        return Err(Error::Internal(format!(
            "{u} * ({s}, {t}) in {}: table {:?}, general {:?}, oracle {:?}",
            rs.ty, a, b, c
        )));
    }
    Ok(a)
}

#[derive(Clone, Debug)]
pub struct OrbitImage {
    pub u: WeylElement,
    pub marking: Marking,
    pub label: String,
}

/// All eight images of a marking, labelled through an SP orbit table.
pub fn orbit_images(rs: &RootSystem, m: &Marking, table: &[OrbitEntry]) -> Result<Vec<OrbitImage>> {
    let t = m.t.ok_or_else(|| Error::Unsupported("orbit images need a graded marking".into()))?;
    WeylElement::ALL
        .iter()
        .map(|&u| {
            let (s2, t2) = weyl_image(rs, u, m.s, t)?;
            let marking = Marking::sp(rs.ty, s2, t2);
            let label = find_orbit(rs, table, &marking)
                .map(|e| e.label.clone())
                .ok_or_else(|| Error::Internal(format!("{marking} is not in the orbit table")))?;
            Ok(OrbitImage { u, marking, label })
        })
        .collect()
}

/// For `lambda` in `T`, `chi_(S\T)(w~_(Pi\T)(lambda)) = chi_(S\T)(mu+)`.
pub fn check_value_lemma(rs: &RootSystem, s: NodeSet, t: NodeSet) -> bool {
    let sm = s.minus(t);
    let w = rs.longest_element(NodeSet::full(rs.rank()).minus(t));
    let target = chi(sm, &rs.highest);
    t.iter().all(|l| chi(sm, &w.apply(&rs.simple_root(l))) == target)
}

/// For `lambda` outside `X`, `supp(w~_X(lambda)) = comp(X + lambda, lambda)`.
pub fn check_support_lemma(rs: &RootSystem, x: NodeSet, l: usize) -> bool {
    let w = rs.longest_element(x);
    RootSystem::support(&w.apply(&rs.simple_root(l))) == rs.comp(x.with(l), l, false)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::admissibility::{all_sp_pairs, enumerate_sp};
    use crate::DiagramType;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s).unwrap()
    }

    fn set(ids: &[usize]) -> NodeSet {
        ids.iter().map(|i| i - 1).collect()
    }

    #[test]
    fn three_routes_agree_up_to_rank_five() {
        for ty in DiagramType::all_reduced(1, 5) {
            let r = RootSystem::new(ty);
            for (s, t) in all_sp_pairs(&r).unwrap() {
                for u in WeylElement::ALL {
                    weyl_image(&r, u, s, t).unwrap_or_else(|e| panic!("{e}"));
                }
            }
        }
    }

    #[test]
    fn e6_reflection_and_shift_pairs() {
        let r = rs("E6");
        let table = enumerate_sp(&r, false).unwrap();
        let img = |s: &[usize], t: &[usize], u| {
            let (a, b) = weyl_image(&r, u, set(s), set(t)).unwrap();
            find_orbit(&r, &table, &Marking::sp(r.ty, a, b)).unwrap().label.clone()
        };
        assert_eq!(img(&[1], &[5], WeylElement::S1), "E6(16,8,8a)");
        assert_eq!(img(&[1, 5], &[5], WeylElement::S1), "E6(16,0,8)");
        assert_eq!(img(&[6], &[1], WeylElement::S1), "E6(20,5,10)");
        assert_eq!(img(&[2], &[6], WeylElement::S1), "E6(20,5,12)");
        assert_eq!(img(&[2], &[5], WeylElement::S1), "E6(20,5,8)");
        assert_eq!(img(&[1, 5], &[6], WeylElement::S1), "E6(16,8,8b)");
        assert_eq!(img(&[2], &[6], WeylElement::S2), "E6(20,5,8)");
    }

    #[test]
    fn exceptional_type_a_case_is_exercised() {
        let r = rs("A4");
        let (s, t) = (set(&[1, 2]), set(&[4]));
        assert!(exceptional_a(&r, s, t).is_some());
        let a = shift_t_table(&r, s, t).unwrap();
        assert_eq!(a, shift_t_general(&r, s, t).unwrap());
    }

    #[test]
    fn support_lemma_exhaustive() {
        for ty in DiagramType::all_reduced(1, 6) {
            let r = RootSystem::new(ty);
            for x in NodeSet::all_subsets(r.rank()) {
                for l in 0..r.rank() {
                    if !x.contains(l) {
                        assert!(check_support_lemma(&r, x, l), "{ty} {x} {l}");
                    }
                }
            }
        }
    }

    #[test]
    fn value_lemma_on_sp_pairs() {
        for ty in DiagramType::all_reduced(1, 6) {
            let r = RootSystem::new(ty);
            for (s, t) in all_sp_pairs(&r).unwrap() {
                assert!(check_value_lemma(&r, s, t), "{ty} {s} {t}");
            }
        }
    }

    #[test]
    fn longest_element_negates_parabolic_positive_roots() {
        for ty in DiagramType::all_reduced(1, 6) {
            let r = RootSystem::new(ty);
            for x in NodeSet::all_subsets(r.rank()) {
                let w = r.longest_element(x);
                for a in r.positive_roots() {
                    if RootSystem::support(a).is_subset(x) {
                        let img = w.apply(a);
                        let neg: Vec<i64> = img.iter().map(|c| -c).collect();
                        assert!(RootSystem::is_positive(&neg) && RootSystem::support(&neg).is_subset(x));
                    }
                }
            }
        }
    }
}
