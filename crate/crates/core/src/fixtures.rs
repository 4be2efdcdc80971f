//! The schemes and actions used throughout the tests, the benchmarks and the
//! `example6` report.
//!
//! `U4` is the thin scheme of `Z/4` with relation `(y2 - y1) mod 4` on the
//! pair `(y1, y2)`; `T3` is the complete graph on three points. `S12` is the
//! product of the action below, with relations numbered
//! `[0,1] [0,t] [1,1] [2,1] [2,t] [3,1]`.

use std::sync::Arc;

use crate::action::{build_action, full_action, trivial_action, Action};
use crate::algebra::RelSet;
use crate::category::CMorphism;
use crate::closure::ClosedSubset;
use crate::labelling::TauScheme;
use crate::scheme::Scheme;
use crate::semidirect::{semidirect_product, SemidirectScheme};

pub fn t3() -> Scheme {
    let rows = vec![vec![0, 1, 1], vec![1, 0, 1], vec![1, 1, 0]];
    Scheme::from_color_matrix(&rows, 0).expect("T3")
}

pub fn u4() -> Scheme {
    Scheme::thin_from_group(&Scheme::cyclic_table(4)).expect("Z/4")
}

/// Thin scheme of the symmetric group on three letters.
pub fn s3_thin() -> Scheme {
    let perms: Vec<[usize; 3]> =
        vec![[0, 1, 2], [0, 2, 1], [1, 0, 2], [1, 2, 0], [2, 0, 1], [2, 1, 0]];
    let index = |p: [usize; 3]| perms.iter().position(|&q| q == p).unwrap();
    let table: Vec<Vec<usize>> = perms
        .iter()
        .map(|a| perms.iter().map(|b| index([a[b[0]], a[b[1]], a[b[2]]])).collect())
        .collect();
    Scheme::thin_from_group(&table).expect("S3")
}

/// `U4` acting on `T3`: pairs differing by 1 or 3 collapse `T`, pairs
/// differing by 2 keep it and act as the identity.
pub fn example_action() -> Action {
    let u = Arc::new(u4());
    let t = Arc::new(t3());
    let id = CMorphism::identity(t.clone());
    let full = CMorphism::full(t.clone(), t.clone());
    let per_pair = (0..16)
        .map(|k| match u.color(k / 4, k % 4) {
            1 | 3 => full.clone(),
            _ => id.clone(),
        })
        .collect();
    let per_point = vec![TauScheme::canonical(t.clone()); 4];
    build_action(u, t, per_point, per_pair).expect("the example action is valid")
}

pub fn s12_product() -> SemidirectScheme {
    semidirect_product(&example_action())
}

pub fn s12() -> Scheme {
    s12_product().scheme
}

/// Composite point of `S12` for each point `1..=12` of the classified
/// scheme, in that order.
pub const HM34_POINTS: [usize; 12] = [0, 6, 1, 2, 7, 8, 3, 4, 5, 9, 10, 11];

/// Relation of `S12` for each relation `0..6` of the classified scheme:
/// `[0,1] [2,1] [0,t] [2,t] [1,1] [3,1]`.
pub const HM34_RELATIONS: [usize; 6] = [0, 3, 1, 4, 2, 5];

/// The order-12 scheme from the classification, obtained by pulling `S12`
/// back along the two tables above.
pub fn hm34() -> Scheme {
    let s = s12();
    let mut back = [0usize; 6];
    for (j, &r) in HM34_RELATIONS.iter().enumerate() {
        back[r] = j;
    }
    let rows: Vec<Vec<usize>> = HM34_POINTS
        .iter()
        .map(|&a| HM34_POINTS.iter().map(|&b| back[s.color(a, b)]).collect())
        .collect();
    Scheme::from_color_matrix(&rows, 0).expect("HM34")
}

pub fn direct_u4_t3() -> Scheme {
    semidirect_product(&trivial_action(Arc::new(u4()), Arc::new(t3()))).scheme
}

pub fn wreath_u4_t3() -> Scheme {
    semidirect_product(&full_action(Arc::new(u4()), Arc::new(t3()))).scheme
}

/// `{[0,1], [2,1]}`.
pub fn k1() -> ClosedSubset {
    ClosedSubset::new(&s12(), RelSet::from([0, 3])).expect("K1")
}

/// `{[0,1], [0,t]}`.
pub fn k2() -> ClosedSubset {
    ClosedSubset::new(&s12(), RelSet::from([0, 1])).expect("K2")
}

/// `{[0,1], [0,t], [2,1], [2,t]}`.
pub fn k3() -> ClosedSubset {
    ClosedSubset::new(&s12(), RelSet::from([0, 1, 3, 4])).expect("K3")
}

/// The three fixture actions of `U4` on `T3`: the example, trivial, full.
pub fn fixture_actions() -> Vec<(&'static str, Action)> {
    let u = Arc::new(u4());
    let t = Arc::new(t3());
    vec![
        ("example", example_action()),
        ("trivial", trivial_action(u.clone(), t.clone())),
        ("full", full_action(u, t)),
    ]
}
