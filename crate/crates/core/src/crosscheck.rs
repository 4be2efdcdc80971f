//! Structure constants of `U ⋉_ζ T` from the constants of `U` and the
//! labelling set alone, without looking at points.
//!
//! For `p_i = [u_i, t_i]`:
//!
//! ```text
//! a(p1, p2, p3) = a(u1, u2, u3) · Σ_{p' ∈ t1 τ''_{u1}} Σ_{q' ∈ t̂2 τ'_{u2}} a^τ(p', q', r)
//! ```
//!
//! where `r` is any member of `{t3} ζ_{u2*}` and `t̂2*` any member of
//! `{t2*} ζ_{u2*}`. This is independent of the point-level construction in
//! [`crate::semidirect`] and serves as a cross-check on it.

use crate::action::Action;
use crate::algebra::{RelSet, RelationAlgebra};
use crate::semidirect::SemidirectScheme;

/// `a(p1, p2, p3)` for relations of `product`, computed from labels.
pub fn counted_constant(action: &Action, product: &SemidirectScheme, p1: usize, p2: usize, p3: usize) -> u32 {
    let u = action.u_scheme();
    let tau = action.tau();
    let (u1, c1) = product.label_of(p1);
    let (u2, c2) = product.label_of(p2);
    let (u3, c3) = product.label_of(p3);
    let a_u = u.constant(*u1, *u2, *u3);
    if a_u == 0 {
        return 0;
    }
    let t1 = c1.smallest().expect("nonempty class");
    let t2 = c2.smallest().expect("nonempty class");
    let t3 = c3.smallest().expect("nonempty class");

    let u2_star = u.star(*u2);
    let zeta = action.zeta_u(u2_star);
    let r = zeta[t3].smallest().expect("images are nonempty");
    let t2_hat = tau.star(zeta[tau.star(t2)].smallest().expect("images are nonempty"));

    let left: RelSet = tau.complex_product(&RelSet::singleton(t1), &action.tau_double_prime(*u1));
    let right: RelSet = tau.complex_product(&RelSet::singleton(t2_hat), &action.tau_prime(*u2));
    let mut sum = 0;
    for p in left.iter() {
        for q in right.iter() {
            sum += tau.constant(p, q, r);
        }
    }
    a_u * sum
}

/// The full table `[p1][p2][p3]`.
pub fn counted_constants(action: &Action, product: &SemidirectScheme) -> Vec<Vec<Vec<u32>>> {
    let r = product.scheme.rank();
    (0..r)
        .map(|p| (0..r).map(|q| (0..r).map(|s| counted_constant(action, product, p, q, s)).collect()).collect())
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::semidirect::semidirect_product;

    #[test]
    fn identity_row_is_kronecker() {
        let a = fixtures::example_action();
        let p = semidirect_product(&a);
        for q in 0..6 {
            for s in 0..6 {
                assert_eq!(counted_constant(&a, &p, 0, q, s), u32::from(q == s));
            }
        }
    }

    #[test]
    fn valencies_come_out_right() {
        let a = fixtures::example_action();
        let p = semidirect_product(&a);
        for s in 0..6 {
            let s_star = p.scheme.star(s);
            assert_eq!(counted_constant(&a, &p, s, s_star, 0) as usize, p.scheme.valency(s));
        }
    }
}
