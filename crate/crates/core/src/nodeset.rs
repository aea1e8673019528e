//! Subsets of diagram nodes as bitmasks.
//!
//! Nodes are 0-based internally; every user-facing rendering is 1-based.
//! The ordering is lexicographic on the ascending list of members, which is
//! the order used to pick orbit representatives.

use std::cmp::Ordering;
use std::fmt;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct NodeSet(pub u32);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    pub fn singleton(i: usize) -> Self {
        NodeSet(1 << i)
    }

    /// All nodes `0..n`.
    pub fn full(n: usize) -> Self {
        NodeSet(((1u64 << n) - 1) as u32)
    }

    pub fn contains(self, i: usize) -> bool {
        i < 32 && self.0 & (1 << i) != 0
    }

    pub fn with(self, i: usize) -> Self {
        NodeSet(self.0 | (1 << i))
    }

    pub fn without(self, i: usize) -> Self {
        NodeSet(self.0 & !(1 << i))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        NodeSet(self.0 | o.0)
    }

    pub fn intersect(self, o: Self) -> Self {
        NodeSet(self.0 & o.0)
    }

    pub fn minus(self, o: Self) -> Self {
        NodeSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> impl Iterator<Item = usize> {
        (0..32).filter(move |&i| self.contains(i))
    }

    /// 1-based ids, ascending.
    pub fn ids(self) -> Vec<usize> {
        self.iter().map(|i| i + 1).collect()
    }

    pub fn from_ids(ids: &[usize], rank: usize) -> crate::Result<Self> {
        let mut s = NodeSet::EMPTY;
        for &id in ids {
            if id == 0 || id > rank {
                return Err(crate::Error::NodeOutOfRange(id));
            }
            s = s.with(id - 1);
        }
        Ok(s)
    }

    /// Image under a node permutation given as `perm[i] = image of i`.
    pub fn map(self, perm: &[usize]) -> Self {
        self.iter().fold(NodeSet::EMPTY, |acc, i| acc.with(perm[i]))
    }

    /// Every subset of `0..n`.
    pub fn all_subsets(n: usize) -> impl Iterator<Item = NodeSet> {
        (0..(1u32 << n)).map(NodeSet)
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(NodeSet::EMPTY, |s, i| s.with(i))
    }
}

impl Ord for NodeSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for NodeSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn order_is_lexicographic_on_sorted_members() {
        let a = NodeSet::from_iter([0]);
        let b = NodeSet::from_iter([0, 4]);
        let c = NodeSet::from_iter([1]);
        assert!(NodeSet::EMPTY < a && a < b && b < c);
    }

    #[test]
    fn ids_roundtrip() {
        let s = NodeSet::from_ids(&[1, 5], 6).unwrap();
        assert_eq!(s.ids(), vec![1, 5]);
        assert!(NodeSet::from_ids(&[7], 6).is_err());
    }
}
