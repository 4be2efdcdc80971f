//! The scheme `U ⋉_ζ T` on `Y × X` and its canonical splitting.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::sync::Arc;

use crate::action::Action;
use crate::algebra::{RelSet, RelationAlgebra};
use crate::closure::{quotient, ClosedSubset, QuotientScheme};
use crate::error::{Error, Result};
use crate::morphism::SchemeMorphism;
use crate::scheme::Scheme;

/// `(u, class)`: a relation of `U` and the set of labels `t` giving the same
/// relation `[u, t]`.
pub type Label = (usize, RelSet);

/// The product scheme with its relation labels.
///
/// Point `(y, x)` is index `y * |X| + x`.
#[derive(Clone, Debug)]
pub struct SemidirectScheme {
    pub scheme: Scheme,
    pub labels: Vec<Label>,
    lookup: BTreeMap<(usize, usize), usize>,
    x_order: usize,
    x_base: usize,
    u: Arc<Scheme>,
}

impl SemidirectScheme {
    /// The relation `[u, t]`.
    pub fn label_lookup(&self, u: usize, t: usize) -> Option<usize> {
        self.lookup.get(&(u, t)).copied()
    }

    pub fn label_of(&self, relation: usize) -> &Label {
        &self.labels[relation]
    }

    pub fn point(&self, y: usize, x: usize) -> usize {
        y * self.x_order + x
    }

    /// Composite point -> `(y, x)`.
    pub fn coordinates(&self, z: usize) -> (usize, usize) {
        (z / self.x_order, z % self.x_order)
    }

    pub fn u_scheme(&self) -> &Arc<Scheme> {
        &self.u
    }

    /// One line per relation: `index u t...` listing the label class.
    pub fn label_table(&self) -> String {
        let mut out = String::new();
        for (k, (u, class)) in self.labels.iter().enumerate() {
            let _ = write!(out, "{k} {u}");
            for t in class.iter() {
                let _ = write!(out, " {t}");
            }
            out.push('\n');
        }
        out
    }
}

// For one ordered pair (y1, y2): quotient relation of T_{y2} // T'' -> label
// class, and the image coset of each x1.
struct PairData {
    image_block: Vec<usize>,
    class_of_quotient_rel: Vec<RelSet>,
}

fn pair_data(action: &Action, y1: usize, y2: usize) -> PairData {
    let phi = action.pair(y1, y2);
    let alpha = &action.point(y2).alpha;
    let q = phi.cod_quotient();
    let mut classes = vec![RelSet::new(); q.scheme.rank()];
    for (t, &rel) in alpha.iter().enumerate() {
        classes[q.rel_map[rel]].insert(t);
    }
    let image_block = (0..phi.dom().order()).map(|x| phi.image_block(x)).collect();
    PairData { image_block, class_of_quotient_rel: classes }
}

fn label_with(action: &Action, data: &PairData, y1: usize, y2: usize, x1: usize, x2: usize) -> Label {
    let q = action.pair(y1, y2).cod_quotient();
    let rel = q.scheme.color(data.image_block[x1], q.block_of(x2));
    (action.u_scheme().color(y1, y2), data.class_of_quotient_rel[rel].clone())
}

/// The label of the pair `((y1, x1), (y2, x2))`, given as composite points.
pub fn relation_label(action: &Action, p1: usize, p2: usize) -> Result<Label> {
    let n = action.t_scheme().order();
    let total = action.product_order();
    for p in [p1, p2] {
        if p >= total {
            return Err(Error::PointOutOfRange { point: p, order: total });
        }
    }
    let (y1, x1, y2, x2) = (p1 / n, p1 % n, p2 / n, p2 % n);
    let data = pair_data(action, y1, y2);
    Ok(label_with(action, &data, y1, y2, x1, x2))
}

/// Build `U ⋉_ζ T`.
///
/// Relation `0` is the diagonal; the others are sorted by `u` and then by
/// the smallest label in the class.
pub fn semidirect_product(action: &Action) -> SemidirectScheme {
    let m = action.u_scheme().order();
    let n = action.t_scheme().order();
    let total = m * n;
    let mut labels_of_pairs: Vec<Label> = Vec::with_capacity(total * total);
    let mut seen: BTreeMap<(usize, usize), RelSet> = BTreeMap::new();
    let data: Vec<PairData> = (0..m * m).map(|k| pair_data(action, k / m, k % m)).collect();
    for p1 in 0..total {
        let (y1, x1) = (p1 / n, p1 % n);
        for p2 in 0..total {
            let (y2, x2) = (p2 / n, p2 % n);
            let label = label_with(action, &data[y1 * m + y2], y1, y2, x1, x2);
            let key = (label.0, label.1.smallest().expect("classes are nonempty"));
            seen.entry(key).or_insert_with(|| label.1.clone());
            labels_of_pairs.push(label);
        }
    }
    // BTreeMap order is exactly (u, smallest label); (0, 0) comes first.
    let labels: Vec<Label> = seen.into_iter().map(|((u, _), class)| (u, class)).collect();
    let index: BTreeMap<(usize, usize), usize> =
        labels.iter().enumerate().map(|(k, (u, class))| ((*u, class.smallest().unwrap()), k)).collect();
    let color: Vec<usize> = labels_of_pairs.iter().map(|(u, class)| index[&(*u, class.smallest().unwrap())]).collect();

    let mut lookup = BTreeMap::new();
    for (k, (u, class)) in labels.iter().enumerate() {
        for t in class.iter() {
            lookup.insert((*u, t), k);
        }
    }
    let base = action.u_scheme().basepoint() * n + action.t_scheme().basepoint();
    let scheme = Scheme::from_flat(total, color, base).expect("the product of a valid action is a scheme");
    SemidirectScheme {
        scheme,
        labels,
        lookup,
        x_order: n,
        x_base: action.t_scheme().basepoint(),
        u: action.u_scheme().clone(),
    }
}

/// A scheme with a closed subset and a splitting of the quotient map.
#[derive(Clone, Debug)]
pub struct SplitData {
    pub s: Arc<Scheme>,
    pub t_tilde: ClosedSubset,
    pub u_scheme: Arc<Scheme>,
    /// Point of `U` -> point of `S`.
    pub i_map: Vec<usize>,
    /// Relation `u` of `U` -> relation `ui` of `S`.
    pub i_rel: Vec<usize>,
    pub quotient: QuotientScheme,
    /// A based isomorphism from some `T` onto the basepoint-coset
    /// subscheme, as a point map `X -> Z`.
    pub t_witness: Option<(Arc<Scheme>, Vec<usize>)>,
}

impl SplitData {
    /// The `t_tilde`-coset containing `yi`, ascending.
    pub fn coset(&self, y: usize) -> &[usize] {
        let b = self.quotient.block_of(self.i_map[y]);
        self.quotient.partition.block(b)
    }

    /// The point `y` with `z` in the coset of `yi`.
    pub fn y_of(&self, z: usize) -> usize {
        let b = self.quotient.block_of(z);
        self.i_map.iter().position(|&w| self.quotient.block_of(w) == b).expect("iπ is onto")
    }
}

/// Check that `i` is a based morphism and `iπ` an isomorphism.
///
/// The product condition is not checked here; see
/// [`verify_split_condition`] and [`crate::recovery::validate_split_data`].
pub fn split_data_unchecked(
    s: Arc<Scheme>,
    t_tilde: ClosedSubset,
    i_map: Vec<usize>,
    u_scheme: Arc<Scheme>,
) -> Result<SplitData> {
    let i = SchemeMorphism::new(&u_scheme, &s, &i_map)?;
    if !i.based {
        return Err(Error::NotBased);
    }
    let q = quotient(&s, &t_tilde)?;
    if q.scheme.order() != u_scheme.order() || q.scheme.rank() != u_scheme.rank() {
        return Err(Error::SplitNotIso(format!(
            "quotient has order/rank {}/{}, U has {}/{}",
            q.scheme.order(),
            q.scheme.rank(),
            u_scheme.order(),
            u_scheme.rank()
        )));
    }
    let blocks: Vec<usize> = i_map.iter().map(|&z| q.block_of(z)).collect();
    let i_pi = SchemeMorphism::new(&u_scheme, &q.scheme, &blocks)?;
    if !i_pi.is_isomorphism(&q.scheme) {
        return Err(Error::SplitNotIso("iπ is not a bijection on points and relations".into()));
    }
    Ok(SplitData { s, t_tilde, u_scheme, i_map, i_rel: i.rel_map, quotient: q, t_witness: None })
}

/// `|t(ui)| = |(ui)t| = 1` for every `u` and every `t` in `t_tilde`; the
/// first failure is returned.
pub fn split_condition_failure(sd: &SplitData) -> Option<(usize, usize)> {
    for (u, &ui) in sd.i_rel.iter().enumerate() {
        for t in sd.t_tilde.members().iter() {
            if sd.s.product_of(t, ui).len() != 1 || sd.s.product_of(ui, t).len() != 1 {
                return Some((u, t));
            }
        }
    }
    None
}

pub fn verify_split_condition(sd: &SplitData) -> bool {
    split_condition_failure(sd).is_none()
}

/// `T̃ = {[1_Y, t]}`, `i(y) = (y, x_*)`, with `x ↦ (y_*, x)` as the witness.
pub fn canonical_split(sd: &SemidirectScheme, t: Arc<Scheme>) -> Result<SplitData> {
    let members: RelSet = sd.labels.iter().enumerate().filter(|(_, (u, _))| *u == 0).map(|(k, _)| k).collect();
    let t_tilde = ClosedSubset::new(&sd.scheme, members)?;
    let m = sd.u.order();
    let i_map = (0..m).map(|y| sd.point(y, sd.x_base)).collect();
    let s = Arc::new(sd.scheme.clone());
    let mut split = split_data_unchecked(s, t_tilde, i_map, sd.u.clone())?;
    let y_base = sd.u.basepoint();
    let gamma = (0..sd.x_order).map(|x| sd.point(y_base, x)).collect();
    split.t_witness = Some((t, gamma));
    Ok(split)
}
