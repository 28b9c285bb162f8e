//! Generalized combings `C: G x G -> P(G)`, their growth functions and the
//! audits that check the combing axioms on samples.
//!
//! Every combing here is defined through `C(1, g)` and extended by
//! `C(x, y) = x C(1, x^{-1} y)`, so equivariance holds by construction and
//! symmetry reduces to `C(1, g) = g C(1, g^{-1})`.

mod audit;
mod broken;
mod geodesic;
mod growth;
mod neighbourhood;
mod product;
mod semigroup;

pub use audit::{audit_combing, AuditConfig, AuditReport, CheckCounts, Violation, ViolationKind};
pub use broken::DroppedEndpointCombing;
pub use geodesic::GeodesicCombing;
pub use growth::{
    empirical_growth, growth_profile, length_histogram, CertifiedGrowth, GrowthObservation, Poly,
};
pub use neighbourhood::{NeighbourhoodCombing, NeighbourhoodOptions};
pub use product::ProductCombing;
pub use semigroup::{verify_free_semigroup, FreeSemigroupOutcome};

use std::collections::BTreeSet;

use rand::RngCore;
use thiserror::Error;

use crate::group::{GroupDescription, GroupElement, Pseudolength};
use crate::relative::GeometryError;

pub type ElementSet = BTreeSet<GroupElement>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CombingError {
    #[error("F must be nonempty")]
    EmptyF,
    #[error("F must not contain the identity")]
    IdentityInF,
    #[error("F meets H in `{0}`")]
    DisjointnessViolation(String),
    #[error("`{0}` is not a letter of X")]
    FNotInX(String),
    #[error("no h in H with d̂(1, h) > {threshold} among {searched} enumerated elements")]
    NoSuitableT { threshold: u64, searched: usize },
    #[error("invalid t: {0}")]
    InvalidT(String),
    #[error("F H F^-1 meets H nontrivially: {f1} · {h} · ({f2})^-1 = {value}")]
    IntersectionViolation {
        f1: String,
        h: String,
        f2: String,
        value: String,
    },
    #[error("{{h in H : d̂(1,h) <= {threshold}}} reaches the enumeration bound {bound}")]
    OmegaUnbounded { threshold: u64, bound: u64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("enumeration of {needed} words exceeds the cap of {cap}")]
    EnumerationCap { cap: usize, needed: usize },
    #[error(transparent)]
    Geometry(#[from] GeometryError),
}

pub trait Combing: Send + Sync {
    fn group(&self) -> &GroupDescription;

    fn name(&self) -> String;

    /// The pseudolength `ℓ` the growth functions refer to.
    fn pseudolength(&self) -> &dyn Pseudolength;

    fn boxed_pseudolength(&self) -> Box<dyn Pseudolength>;

    fn eval_from_identity(&self, g: &GroupElement) -> ElementSet;

    fn eval(&self, x: &GroupElement, y: &GroupElement) -> ElementSet {
        let group = self.group();
        self.eval_from_identity(&group.left_quotient(x, y))
            .iter()
            .map(|c| group.mul(x, c))
            .collect()
    }

    /// Membership in the set `S` on which the triple-intersection property
    /// is claimed.
    fn in_designated_set(&self, g: &GroupElement) -> bool;

    /// A random element of `S` built from at most `max_len` generators.
    fn sample_designated(&self, rng: &mut dyn RngCore, max_len: usize) -> GroupElement;

    /// All elements of `S` built from at most `max_len` generators, when `S`
    /// has a finite generating set.
    fn enumerate_designated(&self, max_len: usize) -> Option<Vec<GroupElement>>;

    fn certified(&self) -> Option<CertifiedGrowth>;

    /// `(t, F)` when `S` is claimed to be freely generated by `tF`.
    fn semigroup_basis(&self) -> Option<(GroupElement, Vec<GroupElement>)> {
        None
    }

    /// `h[l]` counts the elements of `C(1,g)` of pseudolength `l`.
    fn length_histogram(&self, g: &GroupElement) -> Vec<u64> {
        growth::length_histogram(self.pseudolength(), &self.eval_from_identity(g))
    }

    /// The smallest element of `C(1,s) ∩ C(s,g) ∩ C(1,g)`, if any.
    fn triple_witness(&self, s: &GroupElement, g: &GroupElement) -> Option<GroupElement> {
        let id = self.group().identity();
        let a = self.eval(&id, s);
        let b = self.eval(s, g);
        let d = self.eval(&id, g);
        a.iter().find(|x| b.contains(*x) && d.contains(*x)).cloned()
    }
}

/// An element of `C(1,s) ∩ C(s,g) ∩ C(1,g)`, if any.
pub fn triple_witness(c: &dyn Combing, s: &GroupElement, g: &GroupElement) -> Option<GroupElement> {
    c.triple_witness(s, g)
}

/// `{ g x : x in set }`.
pub fn translate(group: &GroupDescription, g: &GroupElement, set: &ElementSet) -> ElementSet {
    set.iter().map(|x| group.mul(g, x)).collect()
}
