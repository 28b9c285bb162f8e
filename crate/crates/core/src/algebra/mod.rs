//! The complex group algebra `CG` over a model group, with exact integer
//! and rational coefficient modes alongside `f64` complex coefficients.

mod element;
mod operator;
mod scalar;

pub use element::AlgebraElement;
pub use operator::{PowerIteration, TruncatedOperator, POWER_ITERATION_SEED};
pub use scalar::{Scalar, ScalarMode};

use std::collections::BTreeMap;

use rayon::prelude::*;
use thiserror::Error;

use crate::group::{GroupDescription, GroupElement};

/// Default bound on the support size of any computed element.
pub const DEFAULT_SUPPORT_CAP: usize = 10_000_000;

/// Terms of the left factor handled per parallel task. Fixed so that the
/// merge order (and hence floating-point rounding) does not depend on the
/// number of threads.
const CHUNK: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("support of size {needed} exceeds the cap of {cap}")]
    SupportCapExceeded { cap: usize, needed: usize },
    #[error("element `{0}` is not in the group")]
    ForeignElement(String),
    #[error("power exponent must be at least 1")]
    ZeroPower,
    #[error("cannot parse coefficient `{0}`")]
    Coefficient(String),
}

/// Convolution context: the group together with a support cap.
#[derive(Clone, Debug)]
pub struct GroupAlgebra {
    group: GroupDescription,
    support_cap: usize,
}

impl GroupAlgebra {
    pub fn new(group: GroupDescription) -> Self {
        GroupAlgebra {
            group,
            support_cap: DEFAULT_SUPPORT_CAP,
        }
    }

    pub fn with_support_cap(mut self, cap: usize) -> Self {
        self.support_cap = cap;
        self
    }

    pub fn group(&self) -> &GroupDescription {
        &self.group
    }

    pub fn support_cap(&self) -> usize {
        self.support_cap
    }

    pub fn check<S: Scalar>(&self, a: &AlgebraElement<S>) -> Result<(), AlgebraError> {
        match a.support().find(|g| !self.group.contains(g)) {
            Some(g) => Err(AlgebraError::ForeignElement(format!("{g:?}"))),
            None => Ok(()),
        }
    }

    /// Builds an element from `(word, coefficient)` strings.
    pub fn parse_element<S: Scalar>(
        &self,
        terms: &[(String, String)],
    ) -> Result<AlgebraElement<S>, crate::group::GroupError> {
        let mut out = Vec::with_capacity(terms.len());
        for (w, c) in terms {
            let g = self.group.parse(w)?;
            let a = S::parse(c).ok_or_else(|| crate::group::GroupError::Parse {
                input: c.clone(),
                reason: format!("not a {:?} coefficient", S::MODE),
            })?;
            out.push((g, a));
        }
        Ok(AlgebraElement::from_terms(out))
    }

    /// `(ab)_g = Σ_s α_s β_{s^{-1} g}`.
    pub fn convolve<S: Scalar>(
        &self,
        a: &AlgebraElement<S>,
        b: &AlgebraElement<S>,
    ) -> Result<AlgebraElement<S>, AlgebraError> {
        let g = &self.group;
        let cap = self.support_cap;
        let partials: Vec<Vec<(GroupElement, S)>> = a
            .terms()
            .par_chunks(CHUNK)
            .map(|chunk| {
                let mut acc: BTreeMap<GroupElement, S> = BTreeMap::new();
                for (s, alpha) in chunk {
                    for (u, beta) in b.terms() {
                        let p = alpha.mul(beta);
                        acc.entry(g.mul(s, u))
                            .and_modify(|c| *c = c.add(&p))
                            .or_insert(p);
                    }
                }
                acc.into_iter().collect()
            })
            .collect();
        let total: usize = partials.iter().map(Vec::len).sum();
        if partials.len() == 1 {
            let terms: Vec<_> = partials
                .into_iter()
                .next()
                .unwrap()
                .into_iter()
                .filter(|(_, c)| !c.is_zero())
                .collect();
            return self.capped(AlgebraElement::from_sorted_unchecked(terms));
        }
        // A product larger than the cap can still collapse; only refuse when
        // the unmerged terms would not fit in memory comfortably.
        if total > cap.saturating_mul(4) {
            return Err(AlgebraError::SupportCapExceeded { cap, needed: total });
        }
        let mut all: Vec<(GroupElement, S)> = Vec::with_capacity(total);
        for p in partials {
            all.extend(p);
        }
        // Stable: equal keys keep chunk order.
        all.par_sort_by(|x, y| x.0.cmp(&y.0));
        let merged = element::fold_sorted(all);
        self.capped(AlgebraElement::from_sorted_unchecked(merged))
    }

    fn capped<S: Scalar>(&self, a: AlgebraElement<S>) -> Result<AlgebraElement<S>, AlgebraError> {
        if a.support_len() > self.support_cap {
            Err(AlgebraError::SupportCapExceeded {
                cap: self.support_cap,
                needed: a.support_len(),
            })
        } else {
            Ok(a)
        }
    }

    /// `a^k` by repeated right multiplication by `a`.
    pub fn power<S: Scalar>(
        &self,
        a: &AlgebraElement<S>,
        k: u32,
    ) -> Result<AlgebraElement<S>, AlgebraError> {
        let mut out = None;
        self.for_each_power(a, k, |_, p| out = Some(p.clone()))?;
        out.ok_or(AlgebraError::ZeroPower)
    }

    /// Calls `f(j, a^j)` for `j = 1..=k`, keeping only one power alive.
    pub fn for_each_power<S: Scalar>(
        &self,
        a: &AlgebraElement<S>,
        k: u32,
        mut f: impl FnMut(u32, &AlgebraElement<S>),
    ) -> Result<(), AlgebraError> {
        if k == 0 {
            return Err(AlgebraError::ZeroPower);
        }
        let mut p = self.capped(a.clone())?;
        f(1, &p);
        for j in 2..=k {
            p = self.convolve(&p, a)?;
            f(j, &p);
        }
        Ok(())
    }

    pub fn involution<S: Scalar>(&self, a: &AlgebraElement<S>) -> AlgebraElement<S> {
        a.involution(&self.group)
    }

    pub fn truncated_left_operator<S: Scalar>(
        &self,
        a: &AlgebraElement<S>,
        basis: Vec<GroupElement>,
    ) -> TruncatedOperator {
        TruncatedOperator::new(&self.group, a, basis)
    }
}
