//! Morphisms of based schemes that identify a quotient of the domain with a
//! quotient of the codomain.
//!
//! A [`CMorphism`] `T -> U` is a normal closed subset of `T`, a normal closed
//! subset of `U`, and a based isomorphism between the two quotient schemes.
//! Composition, the involution [`CMorphism::star`] and the partial order
//! [`CMorphism::leq`] live here.

use std::sync::Arc;

use crate::algebra::{RelSet, RelationAlgebra};
use crate::closure::{quotient, ClosedSubset, QuotientScheme};
use crate::error::{Error, Result};
use crate::morphism::{invert, is_bijection};
use crate::scheme::Scheme;

#[derive(Clone, Debug)]
pub struct CMorphism {
    dom: Arc<Scheme>,
    cod: Arc<Scheme>,
    t_phi: ClosedSubset,
    u_phi: ClosedSubset,
    dom_quotient: QuotientScheme,
    cod_quotient: QuotientScheme,
    block_map: Vec<usize>,
    rel_iso: Vec<usize>,
}

pub(crate) fn same_scheme(a: &Arc<Scheme>, b: &Arc<Scheme>) -> bool {
    Arc::ptr_eq(a, b) || **a == **b
}

impl CMorphism {
    /// Validate and build a morphism.
    ///
    /// `point_iso[x]` is any point of the codomain whose `u_phi`-coset is the
    /// image of the `t_phi`-coset of `x`; it must be constant on cosets. The
    /// relation isomorphism is derived from it.
    pub fn new(
        dom: Arc<Scheme>,
        cod: Arc<Scheme>,
        t_phi: ClosedSubset,
        u_phi: ClosedSubset,
        point_iso: &[usize],
    ) -> Result<CMorphism> {
        if point_iso.len() != dom.order() {
            return Err(Error::ShapeMismatch(format!(
                "coset map has {} entries for {} points",
                point_iso.len(),
                dom.order()
            )));
        }
        for &y in point_iso {
            cod.check_point(y)?;
        }
        let t_phi = ClosedSubset::new(&*dom, t_phi.members().clone())?;
        let u_phi = ClosedSubset::new(&*cod, u_phi.members().clone())?;
        if !dom.is_normal_set(t_phi.members()) {
            return Err(Error::NotNormal(t_phi.members().members().to_vec()));
        }
        if !cod.is_normal_set(u_phi.members()) {
            return Err(Error::NotNormal(u_phi.members().members().to_vec()));
        }
        let dom_quotient = quotient(&dom, &t_phi)?;
        let cod_quotient = quotient(&cod, &u_phi)?;

        let blocks = dom_quotient.partition.len();
        let mut block_map = vec![usize::MAX; blocks];
        let mut first_point = vec![usize::MAX; blocks];
        for (x, &y) in point_iso.iter().enumerate() {
            let b = dom_quotient.block_of(x);
            let image = cod_quotient.block_of(y);
            if block_map[b] == usize::MAX {
                block_map[b] = image;
                first_point[b] = x;
            } else if block_map[b] != image {
                return Err(Error::NotWellDefined(first_point[b], x));
            }
        }
        CMorphism::from_parts(dom, cod, t_phi, u_phi, dom_quotient, cod_quotient, block_map)
    }

    fn from_parts(
        dom: Arc<Scheme>,
        cod: Arc<Scheme>,
        t_phi: ClosedSubset,
        u_phi: ClosedSubset,
        dom_quotient: QuotientScheme,
        cod_quotient: QuotientScheme,
        block_map: Vec<usize>,
    ) -> Result<CMorphism> {
        let (dq, cq) = (&dom_quotient.scheme, &cod_quotient.scheme);
        if dq.order() != cq.order() || dq.rank() != cq.rank() {
            return Err(Error::NotIso(format!(
                "quotients have order/rank {}/{} and {}/{}",
                dq.order(),
                dq.rank(),
                cq.order(),
                cq.rank()
            )));
        }
        if !is_bijection(&block_map, cq.order()) {
            return Err(Error::NotIso("coset map is not a bijection".into()));
        }
        if block_map[dq.basepoint()] != cq.basepoint() {
            return Err(Error::NotBased);
        }
        let mut rel_iso = vec![usize::MAX; dq.rank()];
        for b1 in 0..dq.order() {
            for b2 in 0..dq.order() {
                let q = dq.color(b1, b2);
                let image = cq.color(block_map[b1], block_map[b2]);
                if rel_iso[q] == usize::MAX {
                    rel_iso[q] = image;
                } else if rel_iso[q] != image {
                    return Err(Error::NotIso(format!(
                        "quotient relation {q} maps to both {} and {image}",
                        rel_iso[q]
                    )));
                }
            }
        }
        if !is_bijection(&rel_iso, cq.rank()) {
            return Err(Error::NotIso("relation map is not a bijection".into()));
        }
        Ok(CMorphism { dom, cod, t_phi, u_phi, dom_quotient, cod_quotient, block_map, rel_iso })
    }

    /// `id_T`: trivial subsets and the identity on `T // {1}`.
    pub fn identity(scheme: Arc<Scheme>) -> CMorphism {
        let points: Vec<usize> = (0..scheme.order()).collect();
        CMorphism::new(scheme.clone(), scheme, ClosedSubset::trivial(), ClosedSubset::trivial(), &points)
            .expect("identity morphism")
    }

    /// The greatest morphism: both subsets full, quotients are single points.
    pub fn full(dom: Arc<Scheme>, cod: Arc<Scheme>) -> CMorphism {
        let t = ClosedSubset::full(&*dom);
        let u = ClosedSubset::full(&*cod);
        let point_iso = vec![cod.basepoint(); dom.order()];
        CMorphism::new(dom, cod, t, u, &point_iso).expect("full morphism")
    }

    pub fn dom(&self) -> &Arc<Scheme> {
        &self.dom
    }

    pub fn cod(&self) -> &Arc<Scheme> {
        &self.cod
    }

    /// The normal closed subset of the domain.
    pub fn t_phi(&self) -> &ClosedSubset {
        &self.t_phi
    }

    /// The normal closed subset of the codomain.
    pub fn u_phi(&self) -> &ClosedSubset {
        &self.u_phi
    }

    pub fn dom_quotient(&self) -> &QuotientScheme {
        &self.dom_quotient
    }

    pub fn cod_quotient(&self) -> &QuotientScheme {
        &self.cod_quotient
    }

    /// Domain coset index -> codomain coset index.
    pub fn block_map(&self) -> &[usize] {
        &self.block_map
    }

    /// Domain quotient relation -> codomain quotient relation.
    pub fn rel_iso(&self) -> &[usize] {
        &self.rel_iso
    }

    /// Index of the codomain coset that the coset of `x` maps to.
    pub fn image_block(&self, x: usize) -> usize {
        self.block_map[self.dom_quotient.block_of(x)]
    }

    /// The codomain coset that the coset of `x` maps to.
    pub fn image_coset(&self, x: usize) -> &[usize] {
        self.cod_quotient.partition.block(self.image_block(x))
    }

    /// Smallest point of the image coset of `x`.
    pub fn image_representative(&self, x: usize) -> usize {
        self.cod_quotient.partition.representative(self.image_block(x))
    }

    /// Image of the quotient class of domain relation `t`, as a quotient
    /// relation of the codomain.
    pub fn image_class(&self, t: usize) -> usize {
        self.rel_iso[self.dom_quotient.rel_map[t]]
    }

    /// Point map in the form accepted by [`CMorphism::new`].
    pub fn point_map(&self) -> Vec<usize> {
        (0..self.dom.order()).map(|x| self.image_representative(x)).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.t_phi.is_trivial()
            && self.u_phi.is_trivial()
            && same_scheme(&self.dom, &self.cod)
            && self.block_map.iter().enumerate().all(|(b, &c)| b == c)
    }

    /// `φ*`: same subsets, inverse isomorphism, reversed direction.
    pub fn star(&self) -> CMorphism {
        CMorphism {
            dom: self.cod.clone(),
            cod: self.dom.clone(),
            t_phi: self.u_phi.clone(),
            u_phi: self.t_phi.clone(),
            dom_quotient: self.cod_quotient.clone(),
            cod_quotient: self.dom_quotient.clone(),
            block_map: invert(&self.block_map),
            rel_iso: invert(&self.rel_iso),
        }
    }

    /// The composite `φψ` (first `self`, then `next`).
    pub fn compose(&self, next: &CMorphism) -> Result<CMorphism> {
        if !same_scheme(&self.cod, &next.dom) {
            return Err(Error::DomainMismatch("codomain of the first morphism is not the domain of the second".into()));
        }
        let middle = &*self.cod;

        // u in U whose U_psi-class goes to the identity class of V // V_psi
        let killed_by_next: Vec<bool> =
            (0..middle.rank()).map(|u| next.image_class(u) == 0).collect();

        let t_composite: RelSet = (0..self.dom.rank())
            .filter(|&t| {
                let class = self.image_class(t);
                self.cod_quotient.preimage(class).iter().any(|u| killed_by_next[u])
            })
            .collect();

        let reached: RelSet = self.u_phi.members().iter().map(|u| next.image_class(u)).collect();
        let v_composite: RelSet = (0..next.cod.rank())
            .filter(|&v| reached.contains(next.cod_quotient.rel_map[v]))
            .collect();

        let t_composite = ClosedSubset::new(&*self.dom, t_composite)?;
        let v_composite = ClosedSubset::new(&*next.cod, v_composite)?;

        // Chase smallest representatives through both isomorphisms. Doing
        // this per point (not per coset) lets the constructor confirm the
        // result is constant on cosets.
        let point_iso: Vec<usize> = (0..self.dom.order())
            .map(|x| next.image_representative(self.image_representative(x)))
            .collect();
        CMorphism::new(self.dom.clone(), next.cod.clone(), t_composite, v_composite, &point_iso)
    }

    /// `φ ≤ ψ`: both subsets contained and every image coset of `φ`
    /// contained in the corresponding image coset of `ψ`.
    pub fn leq(&self, other: &CMorphism) -> Result<bool> {
        if !same_scheme(&self.dom, &other.dom) || !same_scheme(&self.cod, &other.cod) {
            return Err(Error::DomainMismatch("morphisms have different endpoints".into()));
        }
        if !self.t_phi.is_subset(&other.t_phi) || !self.u_phi.is_subset(&other.u_phi) {
            return Ok(false);
        }
        // u_phi ⊆ other.u_phi, so each image coset of self lies inside one
        // coset of other.u_phi; checking one point decides containment.
        Ok((0..self.dom.order()).all(|x| {
            let probe = self.image_representative(x);
            other.cod_quotient.block_of(probe) == other.image_block(x)
        }))
    }
}

/// Equal subsets and equal coset maps.
impl PartialEq for CMorphism {
    fn eq(&self, other: &Self) -> bool {
        same_scheme(&self.dom, &other.dom)
            && same_scheme(&self.cod, &other.cod)
            && self.t_phi == other.t_phi
            && self.u_phi == other.u_phi
            && self.block_map == other.block_map
    }
}

impl Eq for CMorphism {}
