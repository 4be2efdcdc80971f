//! Actions of one based scheme on another.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::RelSet;
use crate::category::CMorphism;
use crate::error::{Error, Result};
use crate::labelling::{table_kernel, tau_table, LabellingSet, TauScheme};
use crate::scheme::Scheme;

/// A validated action of `U` (on `Y`) on `T` (on `X`).
///
/// `pair(y1, y2)` is the morphism `T_{y1} -> T_{y2}`; `point(y)` is the
/// tau-scheme `(T_y, α^y)`.
#[derive(Clone, Debug)]
pub struct Action {
    u: Arc<Scheme>,
    t: Arc<Scheme>,
    tau: Arc<LabellingSet>,
    points: Vec<TauScheme>,
    pairs: Vec<CMorphism>,
    // singleton-image table of ζ_u, one per relation u of U
    tables: Vec<Vec<RelSet>>,
}

impl PartialEq for Action {
    fn eq(&self, other: &Action) -> bool {
        self.u == other.u && self.t == other.t && self.points == other.points && self.pairs == other.pairs
    }
}

impl Eq for Action {}

impl Action {
    pub fn u_scheme(&self) -> &Arc<Scheme> {
        &self.u
    }

    pub fn t_scheme(&self) -> &Arc<Scheme> {
        &self.t
    }

    pub fn tau(&self) -> &Arc<LabellingSet> {
        &self.tau
    }

    pub fn point(&self, y: usize) -> &TauScheme {
        &self.points[y]
    }

    pub fn points(&self) -> &[TauScheme] {
        &self.points
    }

    pub fn pair(&self, y1: usize, y2: usize) -> &CMorphism {
        &self.pairs[y1 * self.u.order() + y2]
    }

    /// `{t} ζ_u` for every label `t`.
    pub fn zeta_u(&self, u: usize) -> &[RelSet] {
        &self.tables[u]
    }

    /// `τ'_u`, the kernel of `ζ_u`.
    pub fn tau_prime(&self, u: usize) -> RelSet {
        table_kernel(&self.tables[u])
    }

    /// `τ''_u = {0} ζ_u`.
    pub fn tau_double_prime(&self, u: usize) -> RelSet {
        self.tables[u][0].clone()
    }

    /// Order of `Y × X`.
    pub fn product_order(&self) -> usize {
        self.u.order() * self.t.order()
    }
}

/// Validate the five action conditions.
///
/// `per_point` has one entry per point of `U`; `per_pair` is indexed by
/// `y1 * |Y| + y2`.
pub fn build_action(
    u: Arc<Scheme>,
    t: Arc<Scheme>,
    per_point: Vec<TauScheme>,
    per_pair: Vec<CMorphism>,
) -> Result<Action> {
    let m = u.order();
    if per_point.len() != m || per_pair.len() != m * m {
        return Err(Error::ShapeMismatch(format!(
            "{} tau-schemes and {} morphisms for {m} points",
            per_point.len(),
            per_pair.len()
        )));
    }
    let tau = Arc::new(LabellingSet::of_scheme(&t));
    for (y, ts) in per_point.iter().enumerate() {
        if *ts.tau != *tau {
            return Err(Error::MismatchedTauScheme(format!("point {y} uses another labelling set")));
        }
        if ts.scheme.order() != t.order() {
            return Err(Error::ShapeMismatch(format!("T_{y} is not on {} points", t.order())));
        }
    }
    for y1 in 0..m {
        for y2 in 0..m {
            let phi = &per_pair[y1 * m + y2];
            if **phi.dom() != *per_point[y1].scheme || **phi.cod() != *per_point[y2].scheme {
                return Err(Error::DomainMismatch(format!("morphism ({y1}, {y2}) does not run T_{y1} -> T_{y2}")));
            }
        }
    }
    let fail = |condition: u8, points: Vec<usize>| Err(Error::ConditionFailed { condition, points });

    let base = u.basepoint();
    let base_ts = &per_point[base];
    if *base_ts.scheme != *t || base_ts.alpha.iter().enumerate().any(|(i, &a)| i != a) {
        return fail(1, vec![base]);
    }
    for y in 0..m {
        if !per_pair[y * m + y].is_identity() {
            return fail(2, vec![y]);
        }
    }
    for y1 in 0..m {
        for y2 in y1 + 1..m {
            if per_pair[y2 * m + y1] != per_pair[y1 * m + y2].star() {
                return fail(3, vec![y1, y2]);
            }
        }
    }

    // first table seen for each u, with the pair it came from
    let mut tables: Vec<Option<FirstTable>> = vec![None; u.rank()];
    for y1 in 0..m {
        for y2 in 0..m {
            let table = tau_table(&per_pair[y1 * m + y2], &per_point[y1], &per_point[y2])?;
            let rel = u.color(y1, y2);
            match &tables[rel] {
                None => tables[rel] = Some((table, (y1, y2))),
                Some((first, (a, b))) if *first != table => return fail(4, vec![*a, *b, y1, y2]),
                Some(_) => {}
            }
        }
    }
    let tables: Vec<Vec<RelSet>> = tables.into_iter().map(|t| t.expect("every relation occurs").0).collect();

    for y1 in 0..m {
        for y2 in 0..m {
            let first = &per_pair[y1 * m + y2];
            for y3 in 0..m {
                let composite = first.compose(&per_pair[y2 * m + y3])?;
                if !per_pair[y1 * m + y3].leq(&composite)? {
                    return fail(5, vec![y1, y2, y3]);
                }
            }
        }
    }

    Ok(Action { u, t, tau, points: per_point, pairs: per_pair, tables })
}

type FirstTable = (Vec<RelSet>, (usize, usize));

/// Fill in what conditions (1)-(3) determine, then validate.
///
/// Missing tau-schemes may only be the basepoint's; a missing pair is the
/// identity on the diagonal and the star of its reverse elsewhere.
pub fn build_action_from_partial(
    u: Arc<Scheme>,
    t: Arc<Scheme>,
    mut points: BTreeMap<usize, TauScheme>,
    pairs: BTreeMap<(usize, usize), CMorphism>,
) -> Result<Action> {
    let m = u.order();
    let base = u.basepoint();
    points.entry(base).or_insert_with(|| TauScheme::canonical(t.clone()));
    let mut per_point = Vec::with_capacity(m);
    for y in 0..m {
        per_point.push(points.remove(&y).ok_or_else(|| Error::ShapeMismatch(format!("no tau-scheme for point {y}")))?);
    }
    let mut per_pair = Vec::with_capacity(m * m);
    for y1 in 0..m {
        for y2 in 0..m {
            let phi = match pairs.get(&(y1, y2)) {
                Some(phi) => phi.clone(),
                None if y1 == y2 => CMorphism::identity(per_point[y1].scheme.clone()),
                None => match pairs.get(&(y2, y1)) {
                    Some(rev) => rev.star(),
                    None => return Err(Error::ShapeMismatch(format!("no morphism for pair ({y1}, {y2})"))),
                },
            };
            per_pair.push(phi);
        }
    }
    build_action(u, t, per_point, per_pair)
}

fn uniform_action(u: Arc<Scheme>, t: Arc<Scheme>, other: CMorphism) -> Action {
    let m = u.order();
    let per_point = vec![TauScheme::canonical(t.clone()); m];
    let id = CMorphism::identity(t.clone());
    let per_pair = (0..m * m).map(|k| if k / m == k % m { id.clone() } else { other.clone() }).collect();
    build_action(u, t, per_point, per_pair).expect("uniform actions satisfy the conditions")
}

/// Every morphism is the identity; the product is the direct product.
pub fn trivial_action(u: Arc<Scheme>, t: Arc<Scheme>) -> Action {
    let id = CMorphism::identity(t.clone());
    uniform_action(u, t, id)
}

/// Every off-diagonal morphism is the greatest one; the product is the
/// wreath product.
pub fn full_action(u: Arc<Scheme>, t: Arc<Scheme>) -> Action {
    let full = CMorphism::full(t.clone(), t.clone());
    uniform_action(u, t, full)
}
