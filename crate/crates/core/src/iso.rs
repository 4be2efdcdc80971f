//! Isomorphisms between schemes and algebraic automorphisms.

use crate::algebra::RelationAlgebra;
use crate::morphism::{invert, is_bijection};
use crate::scheme::Scheme;

/// A point bijection together with the relation bijection it induces.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Isomorphism {
    pub point_bij: Vec<usize>,
    pub rel_bij: Vec<usize>,
    pub based: bool,
}

impl Isomorphism {
    /// `rel_bij(color_A(x, y)) = color_B(point_bij x, point_bij y)` for all
    /// pairs, with both maps bijective.
    pub fn verify(&self, a: &Scheme, b: &Scheme) -> bool {
        if !is_bijection(&self.point_bij, b.order()) || !is_bijection(&self.rel_bij, b.rank()) {
            return false;
        }
        if a.order() != b.order() || a.rank() != b.rank() {
            return false;
        }
        let pairs_ok = (0..a.order()).all(|x| {
            (0..a.order()).all(|y| self.rel_bij[a.color(x, y)] == b.color(self.point_bij[x], self.point_bij[y]))
        });
        pairs_ok && self.based == (self.point_bij[a.basepoint()] == b.basepoint())
    }

    pub fn inverse(&self) -> Isomorphism {
        Isomorphism { point_bij: invert(&self.point_bij), rel_bij: invert(&self.rel_bij), based: self.based }
    }
}

pub type RelationFingerprint = (usize, bool, Vec<(usize, Vec<u32>)>);

/// Invariant of one relation: valency, whether it is symmetric, and the
/// sorted rows of nonzero constants `a[p][q][·]` tagged by the valency of `q`.
fn relation_fingerprint(s: &Scheme, p: usize) -> RelationFingerprint {
    let mut rows: Vec<(usize, Vec<u32>)> = (0..s.rank())
        .map(|q| {
            let mut row: Vec<u32> = (0..s.rank()).map(|r| s.constant(p, q, r)).filter(|&v| v > 0).collect();
            row.sort_unstable();
            (s.valency(q), row)
        })
        .collect();
    rows.sort();
    (s.valency(p), s.star(p) == p, rows)
}

/// Sorted multiset of relation fingerprints; equal for isomorphic schemes.
pub fn fingerprint(s: &Scheme) -> Vec<RelationFingerprint> {
    let mut all: Vec<_> = (0..s.rank()).map(|p| relation_fingerprint(s, p)).collect();
    all.sort();
    all
}

struct Search<'a> {
    a: &'a Scheme,
    b: &'a Scheme,
    // a-relation -> compatible b-relations
    allowed: Vec<Vec<bool>>,
    order: Vec<usize>,
    image: Vec<usize>,
    used: Vec<bool>,
    rel: Vec<usize>,
    rel_inv: Vec<usize>,
}

impl Search<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let x = self.order[depth];
        let candidates: Vec<usize> = if depth == 0 && self.image[x] != usize::MAX {
            vec![self.image[x]]
        } else {
            (0..self.b.order()).filter(|&y| !self.used[y]).collect()
        };
        for y in candidates {
            let mut assigned = Vec::new();
            if self.try_point(depth, x, y, &mut assigned) {
                self.image[x] = y;
                self.used[y] = true;
                if self.extend(depth + 1) {
                    return true;
                }
                self.image[x] = usize::MAX;
                self.used[y] = false;
            }
            for p in assigned {
                self.rel_inv[self.rel[p]] = usize::MAX;
                self.rel[p] = usize::MAX;
            }
        }
        if depth == 0 {
            self.image[x] = usize::MAX;
        }
        false
    }

    // Check y as the image of x against every earlier point, recording any
    // relation pairings it introduces.
    fn try_point(&mut self, depth: usize, x: usize, y: usize, assigned: &mut Vec<usize>) -> bool {
        for k in 0..depth {
            let w = self.order[k];
            let v = self.image[w];
            for (p, q) in [(self.a.color(w, x), self.b.color(v, y)), (self.a.color(x, w), self.b.color(y, v))] {
                if !self.allowed[p][q] {
                    return false;
                }
                if self.rel[p] == usize::MAX {
                    if self.rel_inv[q] != usize::MAX {
                        return false;
                    }
                    self.rel[p] = q;
                    self.rel_inv[q] = p;
                    assigned.push(p);
                } else if self.rel[p] != q {
                    return false;
                }
            }
        }
        true
    }
}

/// Search for an isomorphism `A -> B`, based if requested.
///
/// Points of `A` are assigned in ascending order (basepoint first when
/// based) and candidate images are tried in ascending order, so the result
/// is deterministic.
pub fn find_isomorphism(a: &Scheme, b: &Scheme, based: bool) -> Option<Isomorphism> {
    if a.order() != b.order() || a.rank() != b.rank() {
        return None;
    }
    if fingerprint(a) != fingerprint(b) {
        return None;
    }
    let allowed: Vec<Vec<bool>> = (0..a.rank())
        .map(|p| {
            let fp = relation_fingerprint(a, p);
            (0..b.rank()).map(|q| relation_fingerprint(b, q) == fp).collect()
        })
        .collect();
    let n = a.order();
    let mut order: Vec<usize> = (0..n).collect();
    let mut image = vec![usize::MAX; n];
    if based {
        order.retain(|&x| x != a.basepoint());
        order.insert(0, a.basepoint());
        image[a.basepoint()] = b.basepoint();
    }
    let mut rel = vec![usize::MAX; a.rank()];
    let mut rel_inv = vec![usize::MAX; b.rank()];
    rel[0] = 0;
    rel_inv[0] = 0;
    let mut search = Search { a, b, allowed, order, image, used: vec![false; n], rel, rel_inv };
    if !search.extend(0) {
        return None;
    }
    let point_bij = search.image;
    let rel_bij = search.rel;
    let based = point_bij[a.basepoint()] == b.basepoint();
    Some(Isomorphism { point_bij, rel_bij, based })
}

/// Every permutation of relations fixing `0`, commuting with the
/// involution and preserving all structure constants.
pub fn algebraic_automorphisms<A: RelationAlgebra + ?Sized>(alg: &A) -> Vec<Vec<usize>> {
    let r = alg.rank();
    // valency-like invariant: a[p][p*][0]
    let class: Vec<u32> = (0..r).map(|p| alg.constant(p, alg.star(p), 0)).collect();
    let mut found = Vec::new();
    let mut sigma = vec![usize::MAX; r];
    let mut used = vec![false; r];
    sigma[0] = 0;
    used[0] = true;
    extend_automorphism(alg, &class, 1, &mut sigma, &mut used, &mut found);
    found
}

fn extend_automorphism<A: RelationAlgebra + ?Sized>(
    alg: &A,
    class: &[u32],
    p: usize,
    sigma: &mut Vec<usize>,
    used: &mut Vec<bool>,
    found: &mut Vec<Vec<usize>>,
) {
    let r = alg.rank();
    if p == r {
        found.push(sigma.clone());
        return;
    }
    for q in 1..r {
        if used[q] || class[q] != class[p] {
            continue;
        }
        sigma[p] = q;
        used[q] = true;
        if consistent(alg, sigma, p) {
            extend_automorphism(alg, class, p + 1, sigma, used, found);
        }
        used[q] = false;
        sigma[p] = usize::MAX;
    }
}

// Every triple among the assigned relations 0..=p that involves p.
fn consistent<A: RelationAlgebra + ?Sized>(alg: &A, sigma: &[usize], p: usize) -> bool {
    let ps = alg.star(p);
    if ps <= p && sigma[ps] != alg.star(sigma[p]) {
        return false;
    }
    for x in 0..=p {
        for y in 0..=p {
            for z in 0..=p {
                if x != p && y != p && z != p {
                    continue;
                }
                if alg.constant(x, y, z) != alg.constant(sigma[x], sigma[y], sigma[z]) {
                    return false;
                }
            }
        }
    }
    true
}

/// Star is the identity on relations.
pub fn is_symmetric(s: &Scheme) -> bool {
    s.is_symmetric()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::closure::subscheme;
    use crate::fixtures;

    #[test]
    fn t3_to_itself_is_the_identity() {
        let t = fixtures::t3();
        let iso = find_isomorphism(&t, &t, true).unwrap();
        assert_eq!(iso.point_bij, vec![0, 1, 2]);
        assert_eq!(iso.rel_bij, vec![0, 1]);
        assert!(iso.verify(&t, &t));
    }

    #[test]
    fn rank_mismatch_short_circuits() {
        assert!(find_isomorphism(&fixtures::s12(), &fixtures::direct_u4_t3(), false).is_none());
    }

    #[test]
    fn s12_matches_hm34() {
        let s = fixtures::s12();
        let h = fixtures::hm34();
        let iso = find_isomorphism(&s, &h, false).unwrap();
        assert!(iso.verify(&s, &h));
        assert!(iso.inverse().verify(&h, &s));
    }

    #[test]
    fn automorphisms_of_small_schemes() {
        assert_eq!(algebraic_automorphisms(&fixtures::t3()), vec![vec![0, 1]]);
        let u4 = algebraic_automorphisms(&fixtures::u4());
        assert_eq!(u4, vec![vec![0, 1, 2, 3], vec![0, 3, 2, 1]]);
        let s = fixtures::s12();
        let k3 = subscheme(&s, &fixtures::k3(), s.basepoint()).unwrap();
        assert_eq!(algebraic_automorphisms(&k3.scheme).len(), 1);
    }
}
