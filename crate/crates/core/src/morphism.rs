//! Point maps that respect relations.

use crate::algebra::RelSet;
use crate::closure::ClosedSubset;
use crate::error::{Error, Result};
use crate::scheme::Scheme;

/// A morphism of schemes with its induced relation map and kernel.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct SchemeMorphism {
    pub point_map: Vec<usize>,
    pub rel_map: Vec<usize>,
    pub kernel: ClosedSubset,
    pub based: bool,
}

impl SchemeMorphism {
    /// Check that pairs in one relation of `dom` land in one relation of
    /// `cod`, and derive the relation map.
    pub fn new(dom: &Scheme, cod: &Scheme, point_map: &[usize]) -> Result<SchemeMorphism> {
        if point_map.len() != dom.order() {
            return Err(Error::ShapeMismatch(format!(
                "point map has {} entries for {} points",
                point_map.len(),
                dom.order()
            )));
        }
        for &y in point_map {
            cod.check_point(y)?;
        }
        let mut rel_map = vec![usize::MAX; dom.rank()];
        let mut witness = vec![(0, 0); dom.rank()];
        for x1 in 0..dom.order() {
            for x2 in 0..dom.order() {
                let s = dom.color(x1, x2);
                let image = cod.color(point_map[x1], point_map[x2]);
                if rel_map[s] == usize::MAX {
                    rel_map[s] = image;
                    witness[s] = (x1, x2);
                } else if rel_map[s] != image {
                    return Err(Error::NotAMorphism {
                        first: witness[s],
                        second: (x1, x2),
                        images: (rel_map[s], image),
                    });
                }
            }
        }
        let kernel: RelSet = rel_map.iter().enumerate().filter(|(_, &v)| v == 0).map(|(s, _)| s).collect();
        let kernel = ClosedSubset::new(dom, kernel)?;
        let based = point_map[dom.basepoint()] == cod.basepoint();
        Ok(SchemeMorphism { point_map: point_map.to_vec(), rel_map, kernel, based })
    }

    pub fn identity(scheme: &Scheme) -> SchemeMorphism {
        let points: Vec<usize> = (0..scheme.order()).collect();
        SchemeMorphism::new(scheme, scheme, &points).expect("identity is a morphism")
    }

    /// Bijective on points and on relations.
    pub fn is_isomorphism(&self, cod: &Scheme) -> bool {
        is_bijection(&self.point_map, cod.order()) && is_bijection(&self.rel_map, cod.rank())
    }
}

pub(crate) fn is_bijection(map: &[usize], target: usize) -> bool {
    if map.len() != target {
        return false;
    }
    let mut seen = vec![false; target];
    for &v in map {
        if v >= target || seen[v] {
            return false;
        }
        seen[v] = true;
    }
    true
}

pub(crate) fn invert(map: &[usize]) -> Vec<usize> {
    let mut inv = vec![usize::MAX; map.len()];
    for (i, &v) in map.iter().enumerate() {
        inv[v] = i;
    }
    inv
}
