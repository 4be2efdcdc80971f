//! Relation sets and the structure-constant view shared by schemes and
//! labelling sets.

use std::fmt;

/// A sorted, duplicate-free set of relation indices.
#[derive(Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RelSet(Vec<usize>);

impl RelSet {
    pub fn new() -> Self {
        RelSet(Vec::new())
    }

    pub fn singleton(p: usize) -> Self {
        RelSet(vec![p])
    }

    /// The set `{0, 1, .., rank - 1}`.
    pub fn full(rank: usize) -> Self {
        RelSet((0..rank).collect())
    }

    pub fn identity() -> Self {
        RelSet(vec![0])
    }

    pub fn members(&self) -> &[usize] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<usize> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.binary_search(&p).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn smallest(&self) -> Option<usize> {
        self.0.first().copied()
    }

    pub fn insert(&mut self, p: usize) -> bool {
        match self.0.binary_search(&p) {
            Ok(_) => false,
            Err(pos) => {
                self.0.insert(pos, p);
                true
            }
        }
    }

    pub fn is_subset(&self, other: &RelSet) -> bool {
        self.0.iter().all(|&p| other.contains(p))
    }

    pub fn union(&self, other: &RelSet) -> RelSet {
        self.iter().chain(other.iter()).collect()
    }

    pub fn intersection(&self, other: &RelSet) -> RelSet {
        self.iter().filter(|&p| other.contains(p)).collect()
    }

    /// Image under a relation map.
    pub fn map(&self, f: impl Fn(usize) -> usize) -> RelSet {
        self.iter().map(f).collect()
    }

    /// Position of `p` inside the sorted member list.
    pub fn position(&self, p: usize) -> Option<usize> {
        self.0.binary_search(&p).ok()
    }
}

impl FromIterator<usize> for RelSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut v: Vec<usize> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        RelSet(v)
    }
}

impl From<Vec<usize>> for RelSet {
    fn from(v: Vec<usize>) -> Self {
        v.into_iter().collect()
    }
}

impl<const N: usize> From<[usize; N]> for RelSet {
    fn from(v: [usize; N]) -> Self {
        v.into_iter().collect()
    }
}

impl fmt::Debug for RelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.0.iter()).finish()
    }
}

impl fmt::Display for RelSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, p) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{p}")?;
        }
        write!(f, "}}")
    }
}

/// Anything carrying a unit `0`, an involution and structure constants
/// `a[p][q][s]` over relation indices `0..rank`.
///
/// Schemes and labelling sets both implement this; closure, normality and
/// complex products are defined once here.
pub trait RelationAlgebra {
    fn rank(&self) -> usize;
    fn star(&self, p: usize) -> usize;
    fn constant(&self, p: usize, q: usize, s: usize) -> u32;

    /// `{ s : a[p][q][s] > 0 for some p in left, q in right }`.
    fn complex_product(&self, left: &RelSet, right: &RelSet) -> RelSet {
        let rank = self.rank();
        let mut hit = vec![false; rank];
        for p in left.iter() {
            for q in right.iter() {
                for (s, h) in hit.iter_mut().enumerate() {
                    if !*h && self.constant(p, q, s) > 0 {
                        *h = true;
                    }
                }
            }
        }
        hit.iter().enumerate().filter(|(_, &h)| h).map(|(s, _)| s).collect()
    }

    fn product_of(&self, p: usize, q: usize) -> RelSet {
        self.complex_product(&RelSet::singleton(p), &RelSet::singleton(q))
    }

    fn star_set(&self, set: &RelSet) -> RelSet {
        set.map(|p| self.star(p))
    }

    /// Contains `0` and satisfies `p q* ⊆ set` for all members `p, q`.
    fn is_closed_set(&self, set: &RelSet) -> bool {
        if !set.contains(0) {
            return false;
        }
        for p in set.iter() {
            for q in set.iter() {
                if !self.product_of(p, self.star(q)).is_subset(set) {
                    return false;
                }
            }
        }
        true
    }

    /// `pT = Tp` for every relation `p`.
    fn is_normal_set(&self, set: &RelSet) -> bool {
        (0..self.rank()).all(|p| {
            let ps = RelSet::singleton(p);
            self.complex_product(&ps, set) == self.complex_product(set, &ps)
        })
    }
}
