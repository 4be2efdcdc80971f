//! Labelling sets, tau-schemes and the induced maps on subsets of labels.

use std::sync::Arc;

use crate::algebra::{RelSet, RelationAlgebra};
use crate::category::{same_scheme, CMorphism};
use crate::error::{Error, Result};
use crate::morphism::is_bijection;
use crate::scheme::Scheme;

/// An abstract relation index set with unit `0`, an involution and
/// structure constants.
///
/// Realizability is not decided here: a labelling set is built from a
/// witness scheme, or checked against one through [`TauScheme::new`].
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LabellingSet {
    rank: usize,
    star: Vec<usize>,
    constants: Vec<u32>,
}

impl LabellingSet {
    pub fn new(rank: usize, star: Vec<usize>, constants: Vec<u32>) -> Result<LabellingSet> {
        if rank == 0 || star.len() != rank || constants.len() != rank * rank * rank {
            return Err(Error::ShapeMismatch("labelling set tables do not match its size".into()));
        }
        if star[0] != 0 || star.iter().enumerate().any(|(p, &q)| q >= rank || star[q] != p) {
            return Err(Error::NotATauScheme("star is not an involution fixing 0".into()));
        }
        Ok(LabellingSet { rank, star, constants })
    }

    /// The labelling set of a scheme: forget the points.
    pub fn of_scheme(scheme: &Scheme) -> LabellingSet {
        let r = scheme.rank();
        let mut constants = Vec::with_capacity(r * r * r);
        for p in 0..r {
            for q in 0..r {
                for s in 0..r {
                    constants.push(scheme.constant(p, q, s));
                }
            }
        }
        LabellingSet { rank: r, star: scheme.star_map().to_vec(), constants }
    }
}

impl RelationAlgebra for LabellingSet {
    fn rank(&self) -> usize {
        self.rank
    }

    fn star(&self, p: usize) -> usize {
        self.star[p]
    }

    fn constant(&self, p: usize, q: usize, s: usize) -> u32 {
        self.constants[(p * self.rank + q) * self.rank + s]
    }
}

/// A scheme with a bijection `alpha` from labels to its relations that
/// preserves the unit, the involution and the structure constants.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct TauScheme {
    pub tau: Arc<LabellingSet>,
    pub scheme: Arc<Scheme>,
    /// Label -> relation of `scheme`.
    pub alpha: Vec<usize>,
}

impl TauScheme {
    pub fn new(tau: Arc<LabellingSet>, scheme: Arc<Scheme>, alpha: Vec<usize>) -> Result<TauScheme> {
        if alpha.len() != tau.rank() || !is_bijection(&alpha, scheme.rank()) {
            return Err(Error::NotATauScheme(format!(
                "alpha {alpha:?} is not a bijection onto the {} relations",
                scheme.rank()
            )));
        }
        if alpha[0] != 0 {
            return Err(Error::NotATauScheme("alpha does not send the unit to the diagonal".into()));
        }
        for p in 0..tau.rank() {
            if alpha[tau.star(p)] != scheme.star(alpha[p]) {
                return Err(Error::NotATauScheme(format!("alpha does not commute with star at label {p}")));
            }
        }
        for p in 0..tau.rank() {
            for q in 0..tau.rank() {
                for s in 0..tau.rank() {
                    if tau.constant(p, q, s) != scheme.constant(alpha[p], alpha[q], alpha[s]) {
                        return Err(Error::NotATauScheme(format!(
                            "constant for labels ({p}, {q}, {s}) is not preserved"
                        )));
                    }
                }
            }
        }
        Ok(TauScheme { tau, scheme, alpha })
    }

    /// `(T, id)` for the labelling set of `T` itself.
    pub fn canonical(scheme: Arc<Scheme>) -> TauScheme {
        let tau = Arc::new(LabellingSet::of_scheme(&scheme));
        let alpha = (0..scheme.rank()).collect();
        TauScheme { tau, scheme, alpha }
    }

    /// Relation -> label.
    pub fn label_of(&self, relation: usize) -> usize {
        self.alpha.iter().position(|&a| a == relation).expect("alpha is a bijection")
    }

    pub fn labels_to_relations(&self, labels: &RelSet) -> RelSet {
        labels.map(|t| self.alpha[t])
    }

    pub fn relations_to_labels(&self, relations: &RelSet) -> RelSet {
        relations.map(|s| self.label_of(s))
    }
}

/// Images of every singleton label under the map a morphism induces on
/// subsets of labels: entry `t` is `{t} φ(τ)`.
pub fn tau_table(phi: &CMorphism, dom_ts: &TauScheme, cod_ts: &TauScheme) -> Result<Vec<RelSet>> {
    if !same_scheme(phi.dom(), &dom_ts.scheme) {
        return Err(Error::MismatchedTauScheme("domain tau-scheme is not on the morphism's domain".into()));
    }
    if !same_scheme(phi.cod(), &cod_ts.scheme) {
        return Err(Error::MismatchedTauScheme("codomain tau-scheme is not on the morphism's codomain".into()));
    }
    if dom_ts.tau != cod_ts.tau {
        return Err(Error::MismatchedTauScheme("tau-schemes use different labelling sets".into()));
    }
    let rank = dom_ts.tau.rank();
    let cod_class: Vec<usize> = (0..rank).map(|u| phi.cod_quotient().rel_map[cod_ts.alpha[u]]).collect();
    Ok((0..rank)
        .map(|t| {
            let class = phi.image_class(dom_ts.alpha[t]);
            (0..rank).filter(|&u| cod_class[u] == class).collect()
        })
        .collect())
}

/// `P ↦ { u : (tα)^{T_φ} φ̃ = (uβ)^{U_φ} for some t ∈ P }`.
pub fn tau_apply(phi: &CMorphism, dom_ts: &TauScheme, cod_ts: &TauScheme, labels: &RelSet) -> Result<RelSet> {
    let table = tau_table(phi, dom_ts, cod_ts)?;
    Ok(apply_table(&table, labels))
}

pub fn apply_table(table: &[RelSet], labels: &RelSet) -> RelSet {
    labels.iter().flat_map(|t| table[t].iter()).collect()
}

/// `{ t : {t} maps where {0} maps }`.
pub fn table_kernel(table: &[RelSet]) -> RelSet {
    (0..table.len()).filter(|&t| table[t] == table[0]).collect()
}
