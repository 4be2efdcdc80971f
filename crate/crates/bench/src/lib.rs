//! Inputs shared by the benchmarks.

use std::sync::Arc;

use semidirect_core::fixtures;
use semidirect_core::{full_action, semidirect_product, trivial_action, Action, Scheme};

/// `Z/m` acting fully on `T3`: a wreath product on `3m` points.
pub fn wreath_cyclic(m: usize) -> Action {
    let u = Arc::new(Scheme::thin_from_group(&Scheme::cyclic_table(m)).expect("cyclic group"));
    full_action(u, Arc::new(fixtures::t3()))
}

/// `Z/m` acting trivially on `T3`: a direct product on `3m` points.
pub fn direct_cyclic(m: usize) -> Action {
    let u = Arc::new(Scheme::thin_from_group(&Scheme::cyclic_table(m)).expect("cyclic group"));
    trivial_action(u, Arc::new(fixtures::t3()))
}

/// A product scheme with its points relabelled by `x -> (x * step) mod n`.
pub fn shuffled(action: &Action, step: usize) -> (Scheme, Scheme) {
    let s = semidirect_product(action).scheme;
    let n = s.order();
    let perm: Vec<usize> = (0..n).map(|x| (x * step) % n).collect();
    let rows: Vec<Vec<usize>> = (0..n).map(|x| (0..n).map(|y| s.color(perm[x], perm[y])).collect()).collect();
    let t = Scheme::from_color_matrix(&rows, 0).expect("relabelled scheme");
    (s, t)
}
