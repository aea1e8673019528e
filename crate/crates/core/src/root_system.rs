//! Root systems in the simple-root basis.
//!
//! Node labelling follows Bourbaki for the classical families, F4 and G2.
//! The E family uses a chain `1 - 2 - ... - (n-1)` with node `n` attached to
//! node 3, so E6 has highest root `(1,2,3,2,1,2)` and the lowest root of the
//! extended diagram hangs off node 6. See [`to_bourbaki`] for the conversion.
//! BC_n puts the short (doubled) simple root at node 1.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::{Error, NodeSet, Result};

pub type Root = Vec<i64>;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Family {
    A,
    B,
    C,
    D,
    E,
    F,
    G,
    BC,
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Family::A => "A",
            Family::B => "B",
            Family::C => "C",
            Family::D => "D",
            Family::E => "E",
            Family::F => "F",
            Family::G => "G",
            Family::BC => "BC",
        };
        f.write_str(s)
    }
}

/// Largest rank accepted for the unbounded families.
pub const MAX_RANK: usize = 24;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct DiagramType {
    pub family: Family,
    pub rank: usize,
}

impl DiagramType {
    pub fn new(family: Family, rank: usize) -> Result<Self> {
        let ok = match family {
            Family::A | Family::BC => rank >= 1,
            Family::B => rank >= 2,
            Family::C => rank >= 3,
            Family::D => rank >= 4,
            Family::E => (6..=8).contains(&rank),
            Family::F => rank == 4,
            Family::G => rank == 2,
        } && rank <= MAX_RANK;
        if ok {
            Ok(DiagramType { family, rank })
        } else {
            Err(Error::RankOutOfRange { family: family.to_string(), rank })
        }
    }

    pub fn is_reduced(self) -> bool {
        self.family != Family::BC
    }

    /// Every reduced irreducible type of rank `lo..=hi`, in a fixed order.
    pub fn all_reduced(lo: usize, hi: usize) -> Vec<DiagramType> {
        let mut out = Vec::new();
        for fam in [Family::A, Family::B, Family::C, Family::D, Family::E, Family::F, Family::G] {
            for r in lo..=hi {
                if let Ok(t) = DiagramType::new(fam, r) {
                    out.push(t);
                }
            }
        }
        out
    }
}

impl fmt::Display for DiagramType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.family, self.rank)
    }
}

impl FromStr for DiagramType {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let split = s.find(|c: char| c.is_ascii_digit()).ok_or_else(|| Error::UnknownType(s.into()))?;
        let (letters, digits) = s.split_at(split);
        let family = match letters.to_ascii_uppercase().as_str() {
            "A" => Family::A,
            "B" => Family::B,
            "C" => Family::C,
            "D" => Family::D,
            "E" => Family::E,
            "F" => Family::F,
            "G" => Family::G,
            "BC" => Family::BC,
            _ => return Err(Error::UnknownType(s.into())),
        };
        let rank: usize = digits.parse().map_err(|_| Error::UnknownType(s.into()))?;
        DiagramType::new(family, rank)
    }
}

impl TryFrom<String> for DiagramType {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<DiagramType> for String {
    fn from(t: DiagramType) -> String {
        t.to_string()
    }
}

/// 1-based node id in our labelling to the Bourbaki id. Identity outside E.
pub fn to_bourbaki(ty: DiagramType, id: usize) -> usize {
    if ty.family != Family::E {
        return id;
    }
    let n = ty.rank;
    match id {
        1 => 1,
        2 => 3,
        i if i == n => 2,
        i => i + 1,
    }
}

pub fn from_bourbaki(ty: DiagramType, id: usize) -> usize {
    (1..=ty.rank).find(|&i| to_bourbaki(ty, i) == id).unwrap_or(id)
}

/// Integer Gram matrix of the simple roots (a positive multiple of the
/// invariant form; only ratios matter).
fn gram_matrix(ty: DiagramType) -> Vec<Vec<i64>> {
    let n = ty.rank;
    let mut g = vec![vec![0i64; n]; n];
    let chain = |g: &mut Vec<Vec<i64>>, len: usize| {
        for i in 0..len {
            g[i][i] = 2;
            if i + 1 < len {
                g[i][i + 1] = -1;
                g[i + 1][i] = -1;
            }
        }
    };
    match ty.family {
        Family::A => chain(&mut g, n),
        Family::B => {
            chain(&mut g, n);
            g[n - 1][n - 1] = 1;
        }
        Family::C => {
            chain(&mut g, n);
            g[n - 1][n - 1] = 4;
            g[n - 2][n - 1] = -2;
            g[n - 1][n - 2] = -2;
        }
        Family::D => {
            chain(&mut g, n - 1);
            g[n - 1][n - 1] = 2;
            g[n - 3][n - 1] = -1;
            g[n - 1][n - 3] = -1;
        }
        Family::E => {
            chain(&mut g, n - 1);
            g[n - 1][n - 1] = 2;
            g[2][n - 1] = -1;
            g[n - 1][2] = -1;
        }
        Family::F => {
            g = vec![
                vec![4, -2, 0, 0],
                vec![-2, 4, -2, 0],
                vec![0, -2, 2, -1],
                vec![0, 0, -1, 2],
            ];
        }
        Family::G => {
            g = vec![vec![2, -3], vec![-3, 6]];
        }
        Family::BC => {
            chain(&mut g, n);
            g[0][0] = 1;
        }
    }
    g
}

/// Longest element of a parabolic subgroup `W_X`, stored with the images of
/// all simple roots so that its extension to the whole root lattice (identity
/// on the orthogonal complement of `X`) is a matrix-vector product.
#[derive(Clone, Debug)]
pub struct LongestElement {
    pub x: NodeSet,
    /// `w = s_{word[0]} s_{word[1]} ...`
    pub word: Vec<usize>,
    images: Vec<Root>,
}

impl LongestElement {
    pub fn apply(&self, v: &[i64]) -> Root {
        let n = v.len();
        let mut out = vec![0; n];
        for (j, &c) in v.iter().enumerate() {
            if c != 0 {
                for i in 0..n {
                    out[i] += c * self.images[j][i];
                }
            }
        }
        out
    }

    pub fn image_of_simple(&self, j: usize) -> &Root {
        &self.images[j]
    }
}

#[derive(Clone, Debug)]
pub struct RootSystem {
    pub ty: DiagramType,
    /// `cartan[i][j] = <a_i, a_j> = 2(a_i, a_j) / (a_j, a_j)`.
    pub cartan: Vec<Vec<i64>>,
    pub gram: Vec<Vec<i64>>,
    /// All roots, sorted lexicographically.
    pub roots: Vec<Root>,
    pub highest: Root,
    index: HashMap<Root, usize>,
}

impl RootSystem {
    pub fn new(ty: DiagramType) -> Self {
        let gram = gram_matrix(ty);
        let n = ty.rank;
        let cartan: Vec<Vec<i64>> = (0..n)
            .map(|i| (0..n).map(|j| 2 * gram[i][j] / gram[j][j]).collect())
            .collect();
        let mut rs = RootSystem { ty, cartan, gram, roots: Vec::new(), highest: Vec::new(), index: HashMap::new() };
        let mut seeds: Vec<Root> = (0..n).map(|i| rs.simple_root(i)).collect();
        if ty.family == Family::BC {
            let mut d = vec![0; n];
            d[0] = 2;
            seeds.push(d);
        }
        let mut seen: HashMap<Root, ()> = HashMap::new();
        let mut queue: VecDeque<Root> = VecDeque::new();
        for s in seeds {
            if seen.insert(s.clone(), ()).is_none() {
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for j in 0..n {
                let w = rs.reflect(&v, j);
                if !seen.contains_key(&w) {
                    seen.insert(w.clone(), ());
                    queue.push_back(w);
                }
            }
        }
        let mut roots: Vec<Root> = seen.into_keys().collect();
        roots.sort();
        rs.index = roots.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect();
        rs.highest = roots.iter().max_by_key(|r| r.iter().sum::<i64>()).cloned().unwrap();
        rs.roots = roots;
        rs
    }

    pub fn build(name: &str) -> Result<Self> {
        Ok(RootSystem::new(name.parse()?))
    }

    pub fn rank(&self) -> usize {
        self.ty.rank
    }

    pub fn simple_root(&self, i: usize) -> Root {
        let mut v = vec![0; self.rank()];
        v[i] = 1;
        v
    }

    /// `<v, a_j>`.
    pub fn pairing(&self, v: &[i64], j: usize) -> i64 {
        v.iter().enumerate().map(|(i, &c)| c * self.cartan[i][j]).sum()
    }

    pub fn reflect(&self, v: &[i64], j: usize) -> Root {
        let p = self.pairing(v, j);
        let mut w = v.to_vec();
        w[j] -= p;
        w
    }

    /// `s_{word[0]}( s_{word[1]}( ... (v)))`.
    pub fn apply_word(&self, word: &[usize], v: &[i64]) -> Root {
        word.iter().rev().fold(v.to_vec(), |acc, &j| self.reflect(&acc, j))
    }

    pub fn inner(&self, a: &[i64], b: &[i64]) -> i64 {
        let n = self.rank();
        let mut s = 0;
        for i in 0..n {
            if a[i] == 0 {
                continue;
            }
            for j in 0..n {
                s += a[i] * self.gram[i][j] * b[j];
            }
        }
        s
    }

    pub fn height(v: &[i64]) -> i64 {
        v.iter().sum()
    }

    pub fn is_root(&self, v: &[i64]) -> bool {
        self.index.contains_key(v)
    }

    pub fn index_of(&self, v: &[i64]) -> Option<usize> {
        self.index.get(v).copied()
    }

    pub fn is_positive(v: &[i64]) -> bool {
        v.iter().all(|&c| c >= 0) && v.iter().any(|&c| c > 0)
    }

    pub fn positive_roots(&self) -> impl Iterator<Item = &Root> {
        self.roots.iter().filter(|r| Self::is_positive(r))
    }

    pub fn support(v: &[i64]) -> NodeSet {
        v.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, _)| i).collect()
    }

    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        i != j && self.cartan[i][j] != 0
    }

    /// Nodes of the diagram joined to the lowest root in the extended diagram.
    pub fn lowest_neighbours(&self) -> NodeSet {
        (0..self.rank()).filter(|&j| self.inner(&self.highest, &self.simple_root(j)) != 0).collect()
    }

    /// Adjacency in the extended diagram, where index `rank` is the lowest root.
    pub fn extended_adjacent(&self, i: usize, j: usize) -> bool {
        let n = self.rank();
        match (i == n, j == n) {
            (false, false) => self.adjacent(i, j),
            (true, true) => false,
            (true, false) => self.lowest_neighbours().contains(j),
            (false, true) => self.lowest_neighbours().contains(i),
        }
    }

    /// Connected component of `y` containing `start`. With `extended`, `y`
    /// may contain index `rank` for the lowest root.
    pub fn comp(&self, y: NodeSet, start: usize, extended: bool) -> NodeSet {
        if !y.contains(start) {
            return NodeSet::EMPTY;
        }
        let total = if extended { self.rank() + 1 } else { self.rank() };
        let mut out = NodeSet::singleton(start);
        let mut stack = vec![start];
        while let Some(i) = stack.pop() {
            for j in 0..total {
                let adj = if extended { self.extended_adjacent(i, j) } else { self.adjacent(i, j) };
                if adj && y.contains(j) && !out.contains(j) {
                    out = out.with(j);
                    stack.push(j);
                }
            }
        }
        out
    }

    pub fn components(&self, x: NodeSet) -> Vec<NodeSet> {
        let mut rest = x;
        let mut out = Vec::new();
        while let Some(i) = rest.iter().next() {
            let c = self.comp(x, i, false);
            rest = rest.minus(c);
            out.push(c);
        }
        out
    }

    /// Longest element of `W_X` by greedy right multiplication: while some
    /// `mu` in `X` has `w(mu) > 0`, replace `w` by `w s_mu`.
    pub fn longest_element(&self, x: NodeSet) -> LongestElement {
        let n = self.rank();
        let mut images: Vec<Root> = (0..n).map(|i| self.simple_root(i)).collect();
        let mut word = Vec::new();
        while let Some(mu) = x.iter().find(|&m| Self::is_positive(&images[m])) {
            word.push(mu);
            let wm = images[mu].clone();
            for j in 0..n {
                let c = self.cartan[j][mu];
                if c != 0 {
                    for (k, v) in images[j].iter_mut().enumerate() {
                        *v -= c * wm[k];
                    }
                }
            }
        }
        LongestElement { x, word, images }
    }

    /// The opposition involution of `X` as a permutation of all nodes
    /// (identity off `X`), computed from `-w_X` and cross-checked against
    /// the rule by component type.
    pub fn sigma(&self, x: NodeSet) -> Result<Vec<usize>> {
        let w = self.longest_element(x);
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        for l in x.iter() {
            let img: Root = w.image_of_simple(l).iter().map(|c| -c).collect();
            let target = (0..self.rank())
                .find(|&k| x.contains(k) && img == self.simple_root(k))
                .ok_or_else(|| Error::Internal(format!("-w_X does not permute X = {x}")))?;
            perm[l] = target;
        }
        let rule = self.sigma_by_type(x);
        if rule != perm {
            return Err(Error::Internal(format!("opposition involution of {x} disagrees with the type rule")));
        }
        Ok(perm)
    }

    /// `sigma_X(Y)` for `Y` inside `X`.
    pub fn sigma_set(&self, x: NodeSet, y: NodeSet) -> Result<NodeSet> {
        Ok(y.map(&self.sigma(x)?))
    }

    /// Nontrivial exactly on components of type A_k (k >= 2), D_k (k odd)
    /// and E6, where it is the unique nontrivial diagram automorphism.
    pub fn sigma_by_type(&self, x: NodeSet) -> Vec<usize> {
        let mut perm: Vec<usize> = (0..self.rank()).collect();
        for c in self.components(x) {
            let (fam, k) = self.component_type(c);
            let flips = match fam {
                Family::A => k >= 2,
                Family::D => k % 2 == 1,
                Family::E => k == 6,
                _ => false,
            };
            if flips {
                let nodes: Vec<usize> = c.iter().collect();
                let auts = self.automorphisms_of(&nodes);
                let nontrivial = auts
                    .iter()
                    .find(|p| p.iter().enumerate().any(|(a, &b)| nodes[a] != b))
                    .expect("component has a nontrivial automorphism");
                for (a, &b) in nontrivial.iter().enumerate() {
                    perm[nodes[a]] = b;
                }
            }
        }
        perm
    }

    /// Cartan type of a connected set of nodes.
    pub fn component_type(&self, c: NodeSet) -> (Family, usize) {
        let nodes: Vec<usize> = c.iter().collect();
        let k = nodes.len();
        let mult = |i: usize, j: usize| self.cartan[i][j] * self.cartan[j][i];
        let degree = |i: usize| nodes.iter().filter(|&&j| self.adjacent(i, j)).count();
        let mut max_mult = 0;
        let mut double_edge = None;
        for &i in &nodes {
            for &j in &nodes {
                if i < j && self.adjacent(i, j) {
                    let m = mult(i, j);
                    max_mult = max_mult.max(m);
                    if m == 2 {
                        double_edge = Some((i, j));
                    }
                }
            }
        }
        if max_mult == 3 {
            return (Family::G, 2);
        }
        if let Some((i, j)) = double_edge {
            if k == 4 && degree(i) == 2 && degree(j) == 2 {
                return (Family::F, 4);
            }
            if k == 2 {
                return (Family::B, 2);
            }
            let (end, other) = if degree(i) == 1 { (i, j) } else { (j, i) };
            let fam = if self.gram[end][end] < self.gram[other][other] { Family::B } else { Family::C };
            return (fam, k);
        }
        let branch = nodes.iter().copied().find(|&i| degree(i) == 3);
        let Some(b) = branch else {
            return (Family::A, k);
        };
        let mut arms: Vec<usize> = nodes
            .iter()
            .copied()
            .filter(|&j| self.adjacent(b, j))
            .map(|j| self.comp(c.without(b), j, false).len())
            .collect();
        arms.sort();
        match (arms[0], arms[1], arms[2]) {
            (1, 1, _) => (Family::D, k),
            (1, 2, 2) => (Family::E, 6),
            (1, 2, 3) => (Family::E, 7),
            (1, 2, 4) => (Family::E, 8),
            _ => unreachable!("connected subdiagram of a finite type"),
        }
    }

    /// Permutations `p` of `nodes` (as `p[a] = image of nodes[a]`) preserving
    /// the Cartan matrix, by backtracking.
    pub fn automorphisms_of(&self, nodes: &[usize]) -> Vec<Vec<usize>> {
        fn go(rs: &RootSystem, nodes: &[usize], cur: &mut Vec<usize>, used: &mut Vec<bool>, out: &mut Vec<Vec<usize>>) {
            let a = cur.len();
            if a == nodes.len() {
                out.push(cur.clone());
                return;
            }
            for (bi, &b) in nodes.iter().enumerate() {
                if used[bi] || rs.cartan[b][b] != rs.cartan[nodes[a]][nodes[a]] {
                    continue;
                }
                let ok = (0..a).all(|p| {
                    rs.cartan[nodes[p]][nodes[a]] == rs.cartan[cur[p]][b] && rs.cartan[nodes[a]][nodes[p]] == rs.cartan[b][cur[p]]
                });
                if ok {
                    used[bi] = true;
                    cur.push(b);
                    go(rs, nodes, cur, used, out);
                    cur.pop();
                    used[bi] = false;
                }
            }
        }
        let mut out = Vec::new();
        go(self, nodes, &mut Vec::new(), &mut vec![false; nodes.len()], &mut out);
        out
    }

    /// Automorphism group of the whole diagram, each as `perm[i] = image of i`.
    pub fn automorphisms(&self) -> Vec<Vec<usize>> {
        let nodes: Vec<usize> = (0..self.rank()).collect();
        self.automorphisms_of(&nodes)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rs(s: &str) -> RootSystem {
        RootSystem::build(s).unwrap()
    }

    #[test]
    fn root_counts() {
        // |roots| = n * h for the reduced families.
        for (t, count) in [
            ("A1", 2),
            ("A4", 20),
            ("B3", 18),
            ("C4", 32),
            ("D5", 40),
            ("E6", 72),
            ("E7", 126),
            ("E8", 240),
            ("F4", 48),
            ("G2", 12),
            ("BC1", 4),
            ("BC2", 12),
            ("BC3", 24),
        ] {
            assert_eq!(rs(t).roots.len(), count, "{t}");
        }
    }

    #[test]
    fn bc2_roots_are_the_listed_twelve() {
        let r = rs("BC2");
        let mut expected: Vec<Root> = [[1, 0], [0, 1], [1, 1], [2, 0], [2, 1], [2, 2]]
            .iter()
            .flat_map(|v| [v.to_vec(), v.iter().map(|c| -c).collect()])
            .collect();
        expected.sort();
        assert_eq!(r.roots, expected);
    }

    #[test]
    fn e6_highest_root_and_extended_node() {
        let r = rs("E6");
        assert_eq!(r.highest, vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(RootSystem::height(&r.highest), 11);
        assert_eq!(r.lowest_neighbours(), NodeSet::singleton(5));
    }

    #[test]
    fn highest_roots_of_exceptionals() {
        assert_eq!(rs("E7").highest, vec![2, 3, 4, 3, 2, 1, 2]);
        assert_eq!(rs("E8").highest, vec![2, 4, 6, 5, 4, 3, 2, 3]);
        assert_eq!(rs("F4").highest, vec![2, 3, 4, 2]);
        assert_eq!(rs("G2").highest, vec![3, 2]);
        assert_eq!(rs("B4").highest, vec![1, 2, 2, 2]);
        assert_eq!(rs("C4").highest, vec![2, 2, 2, 1]);
        assert_eq!(rs("D5").highest, vec![1, 2, 2, 1, 1]);
    }

    #[test]
    fn type_a_extended_node_meets_both_ends() {
        let r = rs("A5");
        assert_eq!(r.lowest_neighbours(), NodeSet::from_iter([0, 4]));
        assert_eq!(rs("A1").lowest_neighbours(), NodeSet::singleton(0));
    }

    #[test]
    fn cartan_matches_bourbaki_after_relabelling() {
        // Bourbaki E6: 1-3-4-5-6 chain, 2 attached to 4.
        let r = rs("E6");
        let t = r.ty;
        let bourbaki_adj = |a: usize, b: usize| {
            let (a, b) = (a.min(b), a.max(b));
            matches!((a, b), (1, 3) | (3, 4) | (4, 5) | (5, 6) | (2, 4))
        };
        for i in 1..=6 {
            for j in 1..=6 {
                if i != j {
                    assert_eq!(r.adjacent(i - 1, j - 1), bourbaki_adj(to_bourbaki(t, i), to_bourbaki(t, j)));
                }
            }
            assert_eq!(from_bourbaki(t, to_bourbaki(t, i)), i);
        }
    }

    #[test]
    fn b_and_c_cartan_entries() {
        let b = rs("B3");
        assert_eq!(b.cartan[1][2], -2);
        assert_eq!(b.cartan[2][1], -1);
        let c = rs("C3");
        assert_eq!(c.cartan[1][2], -1);
        assert_eq!(c.cartan[2][1], -2);
    }

    #[test]
    fn automorphism_group_orders() {
        for (t, ord) in [("E6", 2), ("D4", 6), ("D5", 2), ("B4", 1), ("A1", 1), ("A4", 2), ("E7", 1), ("F4", 1)] {
            assert_eq!(rs(t).automorphisms().len(), ord, "{t}");
        }
    }

    #[test]
    fn sigma_on_whole_diagrams() {
        let e6 = rs("E6");
        let s = e6.sigma(NodeSet::full(6)).unwrap();
        assert_eq!(s, vec![4, 3, 2, 1, 0, 5]);
        let d4 = rs("D4");
        assert_eq!(d4.sigma(NodeSet::full(4)).unwrap(), vec![0, 1, 2, 3]);
        let d5 = rs("D5");
        assert_eq!(d5.sigma(NodeSet::full(5)).unwrap(), vec![0, 1, 2, 4, 3]);
    }

    #[test]
    fn component_types_of_subdiagrams() {
        let e6 = rs("E6");
        // Removing node 5 leaves D5 with its long arm ending at node 1.
        let x = NodeSet::full(6).without(4);
        assert_eq!(e6.component_type(x), (Family::D, 5));
        assert_eq!(e6.sigma_set(x, NodeSet::singleton(0)).unwrap(), NodeSet::singleton(0));
        let e7 = rs("E7");
        assert_eq!(e7.component_type(NodeSet::full(7).without(5)), (Family::E, 6));
        let c4 = rs("C4");
        assert_eq!(c4.component_type(NodeSet::from_iter([1, 2, 3])), (Family::C, 3));
        let b4 = rs("B4");
        assert_eq!(b4.component_type(NodeSet::from_iter([1, 2, 3])), (Family::B, 3));
    }

    #[test]
    fn rank_bounds() {
        for bad in ["A0", "B1", "C2", "D3", "E5", "E9", "F3", "G3", "BC0", "X4", "E"] {
            assert!(bad.parse::<DiagramType>().is_err(), "{bad}");
        }
        assert!("bc2".parse::<DiagramType>().is_ok());
    }
}
