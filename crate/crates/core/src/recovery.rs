//! Recovering an action from a split scheme, and rebuilding the scheme from
//! the recovered action.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::action::{build_action, Action};
use crate::algebra::{RelSet, RelationAlgebra};
use crate::category::CMorphism;
use crate::closure::{subscheme, ClosedSubset};
use crate::error::{Error, Result};
use crate::iso::find_isomorphism;
use crate::labelling::{LabellingSet, TauScheme};
use crate::morphism::{is_bijection, SchemeMorphism};
use crate::scheme::Scheme;
use crate::semidirect::{semidirect_product, split_condition_failure, split_data_unchecked, SemidirectScheme, SplitData};

/// Validate a splitting: `i` a based morphism, `iπ` an isomorphism, the
/// product condition, and normality of `t_tilde` (which the other three
/// imply).
pub fn validate_split_data(
    s: Arc<Scheme>,
    t_tilde: ClosedSubset,
    i_map: Vec<usize>,
    u_scheme: Arc<Scheme>,
) -> Result<SplitData> {
    let t_tilde = ClosedSubset::new(&*s, t_tilde.members().clone())?;
    if i_map.len() != u_scheme.order() {
        return Err(Error::ShapeMismatch(format!(
            "splitting has {} points, U has {}",
            i_map.len(),
            u_scheme.order()
        )));
    }
    for &z in &i_map {
        s.check_point(z)?;
    }
    let sd = split_data_unchecked(s, t_tilde, i_map, u_scheme)?;
    if let Some((u, t)) = split_condition_failure(&sd) {
        return Err(Error::ConditionViolated { u, t });
    }
    if !sd.s.is_normal_set(sd.t_tilde.members()) {
        return Err(Error::NotNormal(sd.t_tilde.members().members().to_vec()));
    }
    Ok(sd)
}

/// Attach a based isomorphism `T -> ` basepoint-coset subscheme, given as
/// a point map `X -> Z`.
pub fn with_t_witness(mut sd: SplitData, t: Arc<Scheme>, gamma: Vec<usize>) -> Result<SplitData> {
    gamma_relation_map(&sd, &t, &gamma)?;
    sd.t_witness = Some((t, gamma));
    Ok(sd)
}

/// `(T̃'_u, T̃''_u)`: members `t` of `t_tilde` with `t(ui) = {ui}`, and
/// with `(ui)t = {ui}`.
pub fn boundary_subsets(sd: &SplitData, u: usize) -> (RelSet, RelSet) {
    let ui = sd.i_rel[u];
    let fixed = RelSet::singleton(ui);
    let left = sd.t_tilde.members().iter().filter(|&t| sd.s.product_of(t, ui) == fixed).collect();
    let right = sd.t_tilde.members().iter().filter(|&t| sd.s.product_of(ui, t) == fixed).collect();
    (left, right)
}

/// The relation map `T -> t_tilde` of a based isomorphism `gamma`.
fn gamma_relation_map(sd: &SplitData, t: &Scheme, gamma: &[usize]) -> Result<Vec<usize>> {
    let base = sd.s.basepoint();
    let coset = sd.quotient.partition.block(sd.quotient.block_of(base));
    if gamma.len() != t.order() || coset.len() != t.order() {
        return Err(Error::NoBasedIso);
    }
    if gamma[t.basepoint()] != base || gamma.iter().any(|z| coset.binary_search(z).is_err()) {
        return Err(Error::NoBasedIso);
    }
    let mut local = gamma.to_vec();
    for z in local.iter_mut() {
        *z = coset.binary_search(z).expect("checked above");
    }
    if !is_bijection(&local, coset.len()) {
        return Err(Error::NoBasedIso);
    }
    let mut rel = vec![usize::MAX; t.rank()];
    for x1 in 0..t.order() {
        for x2 in 0..t.order() {
            let image = sd.s.color(gamma[x1], gamma[x2]);
            let p = t.color(x1, x2);
            if rel[p] == usize::MAX {
                rel[p] = image;
            } else if rel[p] != image {
                return Err(Error::NoBasedIso);
            }
        }
    }
    let distinct: RelSet = rel.iter().copied().collect();
    if distinct.len() != t.rank() || distinct != *sd.t_tilde.members() {
        return Err(Error::NoBasedIso);
    }
    Ok(rel)
}

/// The action recovered from a splitting, with the bijections used.
#[derive(Clone, Debug)]
pub struct RecoveredAction {
    pub action: Action,
    /// `γ_X : X -> z_* T̃`.
    pub gamma: Vec<usize>,
    /// `γ_T`: relation of `T` -> relation of `S` in `t_tilde`.
    pub gamma_rel: Vec<usize>,
    /// `γ^y_X : X -> (yi) T̃`, one per `y`.
    pub gamma_y: Vec<Vec<usize>>,
    /// `(T̃'_u, T̃''_u)` per relation `u` of `U`.
    pub boundary: Vec<(RelSet, RelSet)>,
}

/// Default `γ^y`: `x_*` to `yi`, then the remaining points of `X` and of the
/// coset matched in ascending order.
fn default_gamma_y(sd: &SplitData, y: usize, x_order: usize, x_base: usize) -> Vec<usize> {
    let yi = sd.i_map[y];
    let coset = sd.coset(y);
    let mut targets = coset.iter().copied().filter(|&z| z != yi);
    let mut gamma = vec![usize::MAX; x_order];
    gamma[x_base] = yi;
    for (x, slot) in gamma.iter_mut().enumerate() {
        if x != x_base {
            *slot = targets.next().expect("coset size equals |X|");
        }
    }
    gamma
}

/// Recover an action of `U` on `t`.
///
/// `γ` is the witness stored in `sd` when it is for `t`, otherwise the
/// first based isomorphism found by search. `overrides` replaces `γ^y` for
/// selected `y` other than the basepoint.
pub fn recover_action_with(
    sd: &SplitData,
    t: Arc<Scheme>,
    overrides: &BTreeMap<usize, Vec<usize>>,
) -> Result<RecoveredAction> {
    let u = sd.u_scheme.clone();
    let m = u.order();
    let n = t.order();
    let x_base = t.basepoint();
    let y_base = u.basepoint();

    let gamma = match &sd.t_witness {
        Some((witness_t, g)) if **witness_t == *t => g.clone(),
        _ => {
            let sub = subscheme(&sd.s, &sd.t_tilde, sd.s.basepoint())?;
            let iso = find_isomorphism(&t, &sub.scheme, true).ok_or(Error::NoBasedIso)?;
            iso.point_bij.iter().map(|&k| sub.points[k]).collect()
        }
    };
    let gamma_rel = gamma_relation_map(sd, &t, &gamma)?;
    // g = γ_T δ^{y*}: label -> relation of S
    let g = &gamma_rel;

    let mut gamma_y = Vec::with_capacity(m);
    for y in 0..m {
        let gy = if y == y_base {
            if overrides.contains_key(&y) {
                return Err(Error::ShapeMismatch("γ at the basepoint is fixed by the witness".into()));
            }
            gamma.clone()
        } else if let Some(custom) = overrides.get(&y) {
            check_gamma_y(sd, y, x_base, custom)?;
            custom.clone()
        } else {
            default_gamma_y(sd, y, n, x_base)
        };
        gamma_y.push(gy);
    }

    // T_y and α^y. Relations of T_y (y not the basepoint) are numbered by
    // their position in t_tilde.
    let tau = Arc::new(LabellingSet::of_scheme(&t));
    let members = sd.t_tilde.members();
    let mut per_point = Vec::with_capacity(m);
    for (y, gy) in gamma_y.iter().enumerate() {
        if y == y_base {
            per_point.push(TauScheme::new(tau.clone(), t.clone(), (0..t.rank()).collect())?);
            continue;
        }
        let color: Vec<usize> = (0..n)
            .flat_map(|x1| (0..n).map(move |x2| (x1, x2)))
            .map(|(x1, x2)| members.position(sd.s.color(gy[x1], gy[x2])).expect("coset pairs lie in t_tilde"))
            .collect();
        let ty = Arc::new(Scheme::from_flat(n, color, x_base)?);
        let alpha = g.iter().map(|&s| members.position(s).expect("γ lands in t_tilde")).collect();
        per_point.push(TauScheme::new(tau.clone(), ty, alpha)?);
    }

    let boundary: Vec<(RelSet, RelSet)> = (0..u.rank()).map(|rel| boundary_subsets(sd, rel)).collect();
    let labels_in = |set: &RelSet| -> RelSet { (0..t.rank()).filter(|&l| set.contains(g[l])).collect() };
    let tau_sets: Vec<(RelSet, RelSet)> = boundary.iter().map(|(a, b)| (labels_in(a), labels_in(b))).collect();

    let inverse_gamma_y: Vec<BTreeMap<usize, usize>> =
        gamma_y.iter().map(|gy| gy.iter().enumerate().map(|(x, &z)| (z, x)).collect()).collect();

    let mut per_pair = Vec::with_capacity(m * m);
    for y1 in 0..m {
        for y2 in 0..m {
            let rel = u.color(y1, y2);
            let ui = sd.i_rel[rel];
            let (tau1, tau2) = &tau_sets[rel];
            let ts1 = &per_point[y1];
            let ts2 = &per_point[y2];
            let primed = ClosedSubset::new(&*ts1.scheme, ts1.labels_to_relations(tau1))?;
            let doubled = ClosedSubset::new(&*ts2.scheme, ts2.labels_to_relations(tau2))?;
            let coset2 = sd.coset(y2);
            // ξ: z1 -> least point of z1(ui) in the coset of y2 i
            let point_iso: Vec<usize> = (0..n)
                .map(|x1| {
                    let z1 = gamma_y[y1][x1];
                    let z2 = coset2
                        .iter()
                        .copied()
                        .find(|&z| sd.s.color(z1, z) == ui)
                        .expect("z1(ui) meets every coset over y1 u");
                    inverse_gamma_y[y2][&z2]
                })
                .collect();
            per_pair.push(CMorphism::new(ts1.scheme.clone(), ts2.scheme.clone(), primed, doubled, &point_iso)?);
        }
    }

    let action = build_action(u, t, per_point, per_pair)?;
    Ok(RecoveredAction { action, gamma, gamma_rel, gamma_y, boundary })
}

pub fn recover_action(sd: &SplitData, t: Arc<Scheme>) -> Result<RecoveredAction> {
    recover_action_with(sd, t, &BTreeMap::new())
}

fn check_gamma_y(sd: &SplitData, y: usize, x_base: usize, gy: &[usize]) -> Result<()> {
    let coset = sd.coset(y);
    if gy.len() != coset.len() {
        return Err(Error::ShapeMismatch(format!("γ^{y} has {} points, the coset has {}", gy.len(), coset.len())));
    }
    if gy[x_base] != sd.i_map[y] {
        return Err(Error::NotBased);
    }
    let mut sorted = gy.to_vec();
    sorted.sort_unstable();
    if sorted != coset {
        return Err(Error::ShapeMismatch(format!("γ^{y} is not a bijection onto the coset of {y}i")));
    }
    Ok(())
}

/// The recovered action, its product, and the isomorphism `η : S -> U ⋉_ζ T`.
#[derive(Clone, Debug)]
pub struct Reconstruction {
    pub recovered: RecoveredAction,
    pub product: SemidirectScheme,
    /// `η_Z`: point of `S` -> composite point.
    pub eta: Vec<usize>,
    /// `η_S`: relation of `S` -> relation of the product.
    pub eta_rel: Vec<usize>,
}

impl Reconstruction {
    /// Re-check `η` pair by pair.
    pub fn is_isomorphism(&self, s: &Scheme) -> bool {
        eta_check(s, &self.product.scheme, &self.eta).is_ok()
    }
}

fn eta_check(s: &Scheme, target: &Scheme, eta: &[usize]) -> Result<Vec<usize>> {
    if !is_bijection(eta, target.order()) {
        return Err(Error::EtaNotIso("point map is not a bijection".into()));
    }
    let morphism = SchemeMorphism::new(s, target, eta).map_err(|e| Error::EtaNotIso(e.to_string()))?;
    if !morphism.based {
        return Err(Error::EtaNotIso("basepoints do not correspond".into()));
    }
    if !morphism.is_isomorphism(target) {
        return Err(Error::EtaNotIso("relation map is not a bijection".into()));
    }
    Ok(morphism.rel_map)
}

/// Recover the action, build its product and verify `η`.
pub fn reconstruct(sd: &SplitData, t: Arc<Scheme>) -> Result<Reconstruction> {
    reconstruct_with(sd, t, &BTreeMap::new())
}

pub fn reconstruct_with(
    sd: &SplitData,
    t: Arc<Scheme>,
    overrides: &BTreeMap<usize, Vec<usize>>,
) -> Result<Reconstruction> {
    let recovered = recover_action_with(sd, t, overrides)?;
    let product = semidirect_product(&recovered.action);
    let n = recovered.action.t_scheme().order();
    let mut eta = vec![usize::MAX; sd.s.order()];
    for (y, gy) in recovered.gamma_y.iter().enumerate() {
        for (x, &z) in gy.iter().enumerate() {
            eta[z] = y * n + x;
        }
    }
    let eta_rel = eta_check(&sd.s, &product.scheme, &eta)?;
    Ok(Reconstruction { recovered, product, eta, eta_rel })
}

/// The basepoint-coset subscheme, for use as `T` when none is given.
pub fn basepoint_coset_scheme(sd: &SplitData) -> Result<Scheme> {
    Ok(subscheme(&sd.s, &sd.t_tilde, sd.s.basepoint())?.scheme)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::action::trivial_action;
    use crate::fixtures;
    use crate::semidirect::canonical_split;

    fn s12_split() -> SplitData {
        let p = fixtures::s12_product();
        canonical_split(&p, Arc::new(fixtures::t3())).unwrap()
    }

    #[test]
    fn boundary_subsets_of_s12() {
        let sd = s12_split();
        assert_eq!(boundary_subsets(&sd, 0), (RelSet::identity(), RelSet::identity()));
        // u = 1 (valency 3): both collapse all of t_tilde
        assert_eq!(boundary_subsets(&sd, 1).1, RelSet::from([0, 1]));
        // u = 2 (thin): [2,1][0,t] = {[2,t]}, so only the unit
        assert_eq!(boundary_subsets(&sd, 2).1, RelSet::identity());
    }

    #[test]
    fn recovery_of_s12_round_trips() {
        let sd = s12_split();
        let r = reconstruct(&sd, Arc::new(fixtures::t3())).unwrap();
        assert!(r.is_isomorphism(&sd.s));
        assert_eq!(r.product.scheme.rank(), 6);
    }

    #[test]
    fn recovered_trivial_action_is_the_trivial_action() {
        let u = Arc::new(fixtures::u4());
        let t = Arc::new(fixtures::t3());
        let a = trivial_action(u.clone(), t.clone());
        let p = semidirect_product(&a);
        let sd = canonical_split(&p, t.clone()).unwrap();
        let r = recover_action(&sd, t.clone()).unwrap();
        for y1 in 0..4 {
            for y2 in 0..4 {
                let phi = r.action.pair(y1, y2);
                assert!(phi.t_phi().is_trivial() && phi.u_phi().is_trivial());
            }
        }
    }

    #[test]
    fn a_permuted_gamma_y_gives_the_same_verdict() {
        let sd = s12_split();
        let t = Arc::new(fixtures::t3());
        // coset of 1i is {3, 4, 5}; swap the two non-base points
        let mut overrides = BTreeMap::new();
        overrides.insert(1, vec![3, 5, 4]);
        let r = reconstruct_with(&sd, t.clone(), &overrides).unwrap();
        assert!(r.is_isomorphism(&sd.s));
        assert_eq!(r.recovered.gamma_y[1], vec![3, 5, 4]);
    }

    #[test]
    fn bad_gamma_y_is_rejected() {
        let sd = s12_split();
        let t = Arc::new(fixtures::t3());
        let mut overrides = BTreeMap::new();
        overrides.insert(1, vec![4, 3, 5]);
        assert_eq!(recover_action_with(&sd, t.clone(), &overrides).unwrap_err(), Error::NotBased);
        overrides.insert(1, vec![3, 4, 4]);
        assert!(matches!(recover_action_with(&sd, t, &overrides), Err(Error::ShapeMismatch(_))));
    }

    #[test]
    fn wrong_t_has_no_based_iso() {
        let sd = s12_split();
        let err = recover_action(&sd, Arc::new(fixtures::u4())).unwrap_err();
        assert_eq!(err, Error::NoBasedIso);
    }

    #[test]
    fn k3_splittings_all_fail() {
        // K3 has two cosets; U is the scheme of order two
        let s = Arc::new(fixtures::s12());
        let u2 = Arc::new(Scheme::thin_from_group(&Scheme::cyclic_table(2)).unwrap());
        for z in 0..12 {
            let res = validate_split_data(s.clone(), fixtures::k3(), vec![0, z], u2.clone());
            assert!(
                matches!(
                    res,
                    Err(Error::ConditionViolated { .. } | Error::SplitNotIso(_) | Error::NotAMorphism { .. })
                ),
                "z = {z}: {res:?}"
            );
        }
    }

    #[test]
    fn s12_split_validates() {
        let s = Arc::new(fixtures::s12());
        let u = Arc::new(fixtures::u4());
        let sd = validate_split_data(s, fixtures::k2(), vec![0, 3, 6, 9], u).unwrap();
        assert_eq!(sd.i_rel, vec![0, 2, 3, 5]);
    }

    #[test]
    fn witness_must_be_based_iso() {
        let sd = s12_split();
        let t = Arc::new(fixtures::t3());
        assert_eq!(with_t_witness(sd.clone(), t.clone(), vec![1, 0, 2]).unwrap_err(), Error::NoBasedIso);
        assert!(with_t_witness(sd, t, vec![0, 2, 1]).is_ok());
    }
}
