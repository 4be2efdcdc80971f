//! Closed subsets, cosets, subschemes and quotient schemes.

use std::collections::{BTreeMap, BTreeSet};

use crate::algebra::{RelSet, RelationAlgebra};
use crate::error::{Error, Result};
use crate::scheme::Scheme;

/// Ranks up to this bound enumerate closed subsets by closing every subset
/// of non-identity relations; larger ranks walk the closure lattice.
pub const EXHAUSTIVE_RANK_LIMIT: usize = 12;

/// A set of relations containing `0` with `T* T ⊆ T`.
///
/// The value does not carry its scheme; it is only meaningful together with
/// the scheme (or labelling set) it was validated against.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Debug)]
pub struct ClosedSubset(RelSet);

impl ClosedSubset {
    pub fn new<A: RelationAlgebra + ?Sized>(alg: &A, members: RelSet) -> Result<ClosedSubset> {
        if let Some(bad) = members.iter().find(|&p| p >= alg.rank()) {
            return Err(Error::RelationOutOfRange { relation: bad, rank: alg.rank() });
        }
        if alg.is_closed_set(&members) {
            Ok(ClosedSubset(members))
        } else {
            Err(Error::NotClosed(members.into_vec()))
        }
    }

    /// `{0}`, closed in everything.
    pub fn trivial() -> ClosedSubset {
        ClosedSubset(RelSet::identity())
    }

    pub fn full<A: RelationAlgebra + ?Sized>(alg: &A) -> ClosedSubset {
        ClosedSubset(RelSet::full(alg.rank()))
    }

    pub fn members(&self) -> &RelSet {
        &self.0
    }

    pub fn contains(&self, p: usize) -> bool {
        self.0.contains(p)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn is_trivial(&self) -> bool {
        self.0.len() == 1
    }

    pub fn is_subset(&self, other: &ClosedSubset) -> bool {
        self.0.is_subset(&other.0)
    }
}

/// Smallest closed subset containing `seed`.
pub fn closure_of<A: RelationAlgebra + ?Sized>(alg: &A, seed: &RelSet) -> ClosedSubset {
    let mut set = seed.union(&RelSet::identity());
    for p in seed.iter() {
        set.insert(alg.star(p));
    }
    loop {
        let mut grown = set.clone();
        for p in set.iter() {
            for q in set.iter() {
                for s in alg.product_of(p, q).iter() {
                    grown.insert(s);
                }
            }
        }
        if grown == set {
            return ClosedSubset(set);
        }
        set = grown;
    }
}

/// Every closed subset, sorted by size and then lexicographically.
pub fn enumerate_closed_subsets<A: RelationAlgebra + ?Sized>(alg: &A) -> Vec<ClosedSubset> {
    let found = if alg.rank() <= EXHAUSTIVE_RANK_LIMIT {
        closed_subsets_exhaustive(alg)
    } else {
        closed_subsets_by_lattice_walk(alg)
    };
    sort_canonically(found.into_iter().collect())
}

fn sort_canonically(mut list: Vec<ClosedSubset>) -> Vec<ClosedSubset> {
    list.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.0.members().cmp(b.0.members())));
    list
}

pub(crate) fn closed_subsets_exhaustive<A: RelationAlgebra + ?Sized>(alg: &A) -> BTreeSet<ClosedSubset> {
    let others = alg.rank().saturating_sub(1);
    let mut found = BTreeSet::new();
    for mask in 0u64..(1u64 << others) {
        let seed: RelSet = (0..others).filter(|i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        found.insert(closure_of(alg, &seed));
    }
    found
}

/// Every closed subset is reached from `{0}` by repeatedly adding one
/// relation and closing, so a breadth-first walk over joins finds them all.
pub(crate) fn closed_subsets_by_lattice_walk<A: RelationAlgebra + ?Sized>(alg: &A) -> BTreeSet<ClosedSubset> {
    let mut found = BTreeSet::new();
    let start = ClosedSubset::trivial();
    found.insert(start.clone());
    let mut frontier = vec![start];
    while let Some(current) = frontier.pop() {
        for s in 0..alg.rank() {
            if current.contains(s) {
                continue;
            }
            let mut seed = current.0.clone();
            seed.insert(s);
            let next = closure_of(alg, &seed);
            if found.insert(next.clone()) {
                frontier.push(next);
            }
        }
    }
    found
}

pub fn is_normal<A: RelationAlgebra + ?Sized>(alg: &A, subset: &ClosedSubset) -> bool {
    alg.is_normal_set(subset.members())
}

/// The cosets `xT` of a closed subset.
///
/// Blocks are listed in order of their smallest point, which is also the
/// block's representative.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct PointPartition {
    blocks: Vec<Vec<usize>>,
    block_of: Vec<usize>,
}

impl PointPartition {
    pub fn new(scheme: &Scheme, subset: &ClosedSubset) -> PointPartition {
        let n = scheme.order();
        let mut block_of = vec![usize::MAX; n];
        let mut blocks = Vec::new();
        for x in 0..n {
            if block_of[x] != usize::MAX {
                continue;
            }
            let block = scheme.reach(x, subset.members());
            for &y in &block {
                block_of[y] = blocks.len();
            }
            blocks.push(block);
        }
        PointPartition { blocks, block_of }
    }

    pub fn blocks(&self) -> &[Vec<usize>] {
        &self.blocks
    }

    pub fn block(&self, b: usize) -> &[usize] {
        &self.blocks[b]
    }

    pub fn block_of(&self, x: usize) -> usize {
        self.block_of[x]
    }

    pub fn block_map(&self) -> &[usize] {
        &self.block_of
    }

    pub fn representative(&self, b: usize) -> usize {
        self.blocks[b][0]
    }

    pub fn len(&self) -> usize {
        self.blocks.len()
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }
}

/// The subscheme on one coset together with its embedding into the parent.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Subscheme {
    pub scheme: Scheme,
    /// Sub point -> parent point (ascending).
    pub points: Vec<usize>,
    /// Sub relation -> parent relation; sub relation `k` is the `k`-th
    /// member of the closed subset.
    pub relations: Vec<usize>,
}

impl Subscheme {
    pub fn local_point(&self, parent: usize) -> Option<usize> {
        self.points.binary_search(&parent).ok()
    }
}

/// The subscheme of `scheme` on the coset `x T`, based at `x`.
pub fn subscheme(scheme: &Scheme, subset: &ClosedSubset, x: usize) -> Result<Subscheme> {
    scheme.check_point(x)?;
    let points = scheme.reach(x, subset.members());
    let relations = subset.members().members().to_vec();
    let local = |p: usize| subset.members().position(p).expect("coset pair outside the closed subset");
    let color = points
        .iter()
        .flat_map(|&a| points.iter().map(move |&b| (a, b)))
        .map(|(a, b)| local(scheme.color(a, b)))
        .collect();
    let base = points.binary_search(&x).expect("x lies in its own coset");
    let sub = Scheme::from_flat(points.len(), color, base)?;
    Ok(Subscheme { scheme: sub, points, relations })
}

/// `S // T` with the canonical projection.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct QuotientScheme {
    pub scheme: Scheme,
    pub partition: PointPartition,
    /// Parent relation `s` -> quotient relation `s^T`.
    pub rel_map: Vec<usize>,
}

impl QuotientScheme {
    pub fn block_of(&self, x: usize) -> usize {
        self.partition.block_of(x)
    }

    /// Parent relations mapping onto quotient relation `q`.
    pub fn preimage(&self, q: usize) -> RelSet {
        self.rel_map.iter().enumerate().filter(|(_, &v)| v == q).map(|(s, _)| s).collect()
    }
}

/// Quotient by any closed subset; normality is not required.
///
/// Quotient relations are numbered by first occurrence while scanning block
/// pairs in representative order, so the class of `T` itself is `0`.
pub fn quotient(scheme: &Scheme, subset: &ClosedSubset) -> Result<QuotientScheme> {
    let partition = PointPartition::new(scheme, subset);
    let t = subset.members();
    let mut class_of_set: BTreeMap<RelSet, usize> = BTreeMap::new();
    let mut rel_map = vec![usize::MAX; scheme.rank()];
    let m = partition.len();
    let mut color = Vec::with_capacity(m * m);
    for b1 in 0..m {
        for b2 in 0..m {
            let s = scheme.color(partition.representative(b1), partition.representative(b2));
            let q = if rel_map[s] != usize::MAX {
                rel_map[s]
            } else {
                let double = scheme.complex_product(&scheme.complex_product(t, &RelSet::singleton(s)), t);
                let next = class_of_set.len();
                let q = *class_of_set.entry(double.clone()).or_insert(next);
                for member in double.iter() {
                    rel_map[member] = q;
                }
                q
            };
            color.push(q);
        }
    }
    debug_assert!(rel_map.iter().all(|&q| q != usize::MAX));
    let base = partition.block_of(scheme.basepoint());
    let quotient = Scheme::from_flat(m, color, base)?;
    Ok(QuotientScheme { scheme: quotient, partition, rel_map })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn closure_of_empty_seed_is_trivial() {
        let s = fixtures::s12();
        assert_eq!(closure_of(&s, &RelSet::new()), ClosedSubset::trivial());
    }

    #[test]
    fn rank_two_has_two_closed_subsets() {
        let t = fixtures::t3();
        let list = enumerate_closed_subsets(&t);
        assert_eq!(list, vec![ClosedSubset::trivial(), ClosedSubset::full(&t)]);
    }

    #[test]
    fn subgroups_of_z4() {
        let u = fixtures::u4();
        let sizes: Vec<usize> = enumerate_closed_subsets(&u).iter().map(ClosedSubset::len).collect();
        assert_eq!(sizes, vec![1, 2, 4]);
        assert_eq!(enumerate_closed_subsets(&u)[1].members(), &RelSet::from([0, 2]));
    }

    #[test]
    fn exhaustive_and_lattice_walk_agree() {
        for s in [fixtures::t3(), fixtures::u4(), fixtures::s12(), fixtures::direct_u4_t3()] {
            assert_eq!(closed_subsets_exhaustive(&s), closed_subsets_by_lattice_walk(&s));
        }
    }

    #[test]
    fn non_closed_subset_is_rejected() {
        let u = fixtures::u4();
        assert_eq!(ClosedSubset::new(&u, RelSet::from([0, 1])), Err(Error::NotClosed(vec![0, 1])));
        assert!(matches!(
            ClosedSubset::new(&u, RelSet::from([0, 9])),
            Err(Error::RelationOutOfRange { relation: 9, .. })
        ));
    }

    #[test]
    fn trivial_subset_gives_one_point_subscheme_and_identity_quotient() {
        let s = fixtures::s12();
        let sub = subscheme(&s, &ClosedSubset::trivial(), 5).unwrap();
        assert_eq!(sub.scheme, Scheme::trivial());
        assert_eq!(sub.points, vec![5]);

        let q = quotient(&s, &ClosedSubset::trivial()).unwrap();
        assert_eq!(q.scheme.order(), s.order());
        assert_eq!(q.scheme.rank(), s.rank());
        for x in 0..s.order() {
            assert_eq!(q.block_of(x), x);
            for y in 0..s.order() {
                assert_eq!(q.scheme.color(x, y), q.rel_map[s.color(x, y)]);
            }
        }
    }

    #[test]
    fn quotient_by_full_set_is_a_point() {
        let s = fixtures::s12();
        let q = quotient(&s, &ClosedSubset::full(&s)).unwrap();
        assert_eq!(q.scheme, Scheme::trivial());
    }
}
