//! Certified upper bounds for operator norms and spectral radii of
//! group-algebra elements, compression lower bounds, and the `ℓ²` product
//! inequality with its witness sets.
//!
//! For `a` supported in `S ∩ B(n)` the combing gives
//! `‖a‖ <= γ(ρ(n))^{3/2} ‖a‖₂`. Applied to `a^k` (supported in
//! `S ∩ B(nk)` when `S` is a semigroup) this yields upper bounds `u_k` for
//! the spectral radius, sandwiched against `‖a^k‖₂^{1/k}` from below.

mod lower;
mod rplus;

pub use lower::{lower_bound_operator_norm, radial_compression, LowerBound, LowerBoundMethod};
pub use rplus::{
    rplus_check, rplus_fuzz, witness_sets, FuzzConfig, FuzzSummary, RPlusCheck, WitnessEntry,
    WitnessSets,
};

use serde::Serialize;
use thiserror::Error;

use crate::algebra::{AlgebraElement, AlgebraError, GroupAlgebra, Scalar, ScalarMode};
use crate::combing::{CertifiedGrowth, Combing};
use crate::group::{GroupElement, GroupError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SpectralError {
    #[error("support element `{0}` is not in the designated set S")]
    SupportNotInS(String),
    #[error("`{0}` must have nonnegative real coefficients")]
    NotNonnegative(&'static str),
    #[error("combing `{0}` has no certified growth bounds")]
    NoCertificate(String),
    #[error("the element belongs to a different group")]
    GroupMismatch,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

impl SpectralError {
    pub fn is_resource_cap(&self) -> bool {
        matches!(
            self,
            SpectralError::Algebra(AlgebraError::SupportCapExceeded { .. })
                | SpectralError::Group(GroupError::BallTooLarge(_))
        )
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct NormBound {
    /// `max ℓ` over the support.
    pub n: u64,
    pub gamma_rho: u64,
    pub l2_norm: f64,
    pub bound: f64,
}

fn certificate(c: &dyn Combing) -> Result<CertifiedGrowth, SpectralError> {
    c.certified()
        .ok_or_else(|| SpectralError::NoCertificate(c.name()))
}

fn check_support<S: Scalar>(c: &dyn Combing, a: &AlgebraElement<S>) -> Result<(), SpectralError> {
    if let Some(g) = a.support().find(|g| !c.group().contains(g)) {
        return Err(SpectralError::Group(GroupError::Mismatch(format!("{g:?}"))));
    }
    match a.support().find(|g| !c.in_designated_set(g)) {
        Some(g) => Err(SpectralError::SupportNotInS(c.group().format(g))),
        None => Ok(()),
    }
}

/// `γ(ρ(n))^{3/2} ‖a‖₂` with `n = max ℓ(supp a)`; requires `supp a ⊆ S`.
pub fn certified_norm_bound<S: Scalar>(
    a: &AlgebraElement<S>,
    c: &dyn Combing,
) -> Result<NormBound, SpectralError> {
    check_support(c, a)?;
    let cert = certificate(c)?;
    let n = a.max_length(c.pseudolength());
    let gamma_rho = cert.gamma_rho(n);
    let l2_norm = a.l2_norm();
    Ok(NormBound {
        n,
        gamma_rho,
        l2_norm,
        bound: (gamma_rho as f64).powf(1.5) * l2_norm,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct PowerNorm {
    pub k: u32,
    /// `‖a^k‖₂²`, exact in the integer and rational modes.
    pub l2_norm_squared: String,
    /// `‖a^k‖₂^{1/k}`.
    pub l2_power_root: f64,
    /// `max ℓ(supp a^k)`, when the power was convolved and measured.
    pub measured_length: Option<u64>,
    pub source: NormSource,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum NormSource {
    /// Computed from the convolution power.
    Convolution,
    /// `(‖a‖₂²)^k`, valid because `supp a` lies in a free basis of `S`.
    FreeBasis,
}

/// `‖a^k‖₂^{1/k}` for `k = 1..=k_max` by exact convolution powers.
pub fn r2_sequence<S: Scalar>(
    algebra: &GroupAlgebra,
    a: &AlgebraElement<S>,
    k_max: u32,
    measure: Option<&dyn crate::group::Pseudolength>,
) -> Result<Vec<PowerNorm>, SpectralError> {
    let mut out = Vec::new();
    algebra.check(a)?;
    algebra.for_each_power(a, k_max, |k, p| {
        let sq = p.l2_norm_squared();
        out.push(PowerNorm {
            k,
            l2_power_root: sq.to_f64().sqrt().powf(1.0 / k as f64),
            l2_norm_squared: sq.render(),
            measured_length: measure.map(|len| p.max_length(len)),
            source: NormSource::Convolution,
        });
    })?;
    Ok(out)
}

/// Whether every support element is one of the free generators `t f` of
/// the combing's semigroup, so `‖a^k‖₂² = (‖a‖₂²)^k` for all `k`.
pub fn supported_on_free_basis<S: Scalar>(a: &AlgebraElement<S>, c: &dyn Combing) -> bool {
    let Some((t, f)) = c.semigroup_basis() else {
        return false;
    };
    let g = c.group();
    let gens: Vec<GroupElement> = f.iter().map(|x| g.mul(&t, x)).collect();
    !a.is_zero() && a.support().all(|s| gens.contains(s))
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct UpperBound {
    pub k: u32,
    /// The length bound used for `supp a^k`.
    pub n_k: u64,
    pub gamma_rho: u64,
    /// `(γ(ρ(n_k))^{3/2} ‖a^k‖₂)^{1/k}`.
    pub u_k: f64,
    pub running_min: f64,
}

/// `u_k` from the power norms, with `n_k = n k` (or the measured length
/// when `measured` is set and available).
pub fn r_upper_sequence(
    cert: &CertifiedGrowth,
    n: u64,
    powers: &[PowerNorm],
    measured: bool,
) -> Vec<UpperBound> {
    let mut running = f64::INFINITY;
    powers
        .iter()
        .map(|p| {
            let n_k = match (measured, p.measured_length) {
                (true, Some(m)) => m,
                _ => n.saturating_mul(p.k as u64),
            };
            let gamma_rho = cert.gamma_rho(n_k);
            let k = p.k as f64;
            // (γ^{3/2} ‖a^k‖₂)^{1/k} = γ^{3/(2k)} · ‖a^k‖₂^{1/k}
            let u_k = (gamma_rho as f64).powf(1.5 / k) * p.l2_power_root;
            running = running.min(u_k);
            UpperBound {
                k: p.k,
                n_k,
                gamma_rho,
                u_k,
                running_min: running,
            }
        })
        .collect()
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralOptions {
    /// Largest `k` for which `a^k` is convolved.
    pub k_convolve: u32,
    /// Largest `k` in the upper sequence; rows beyond `k_convolve` need a
    /// free-basis support.
    pub k_max: u32,
    pub radii: Vec<u64>,
    pub iterations: usize,
    pub tol: f64,
    /// Use `max ℓ(supp a^k)` instead of `nk` when it is available.
    pub measure_support: bool,
}

impl Default for SpectralOptions {
    fn default() -> Self {
        SpectralOptions {
            k_convolve: 12,
            k_max: 12,
            radii: vec![2, 4, 6],
            iterations: 10_000,
            tol: 1e-10,
            measure_support: false,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct SpectralReport {
    pub element: String,
    pub combing: String,
    pub scalar_mode: ScalarMode,
    /// `max ℓ(supp a)`.
    pub n: u64,
    pub certified_bound_k1: f64,
    pub r2_sequence: Vec<PowerNorm>,
    pub upper_sequence: Vec<UpperBound>,
    pub truncated_lower: Vec<LowerBound>,
    /// `exact` only when `supp a` lies in a free basis of `S`; otherwise
    /// the tail of the sequence is an estimate of `r₂`.
    pub r2_status: R2Status,
    pub r2_tail: f64,
    pub min_upper: f64,
    pub max_lower: f64,
    /// `min u_k - r2_tail`.
    pub gap: f64,
    pub sandwich_holds: bool,
    /// `‖a^k‖₂^{1/k} <= u_k` for every row.
    pub r2_below_upper: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum R2Status {
    Exact,
    Estimate,
}

pub fn spectral_report<S: Scalar>(
    algebra: &GroupAlgebra,
    a: &AlgebraElement<S>,
    c: &dyn Combing,
    opts: &SpectralOptions,
) -> Result<SpectralReport, SpectralError> {
    if algebra.group() != c.group() {
        return Err(SpectralError::GroupMismatch);
    }
    let bound = certified_norm_bound(a, c)?;
    let cert = certificate(c)?;
    let len = c.pseudolength();
    let k_convolve = opts.k_convolve.clamp(1, opts.k_max.max(1));
    let mut powers = r2_sequence(algebra, a, k_convolve, opts.measure_support.then_some(len))?;
    let free = supported_on_free_basis(a, c);
    let multiplicative = S::MODE != ScalarMode::Complex
        && powers
            .iter()
            .all(|p| p.l2_norm_squared == pow_render(&a.l2_norm_squared(), p.k));
    let exact = free && multiplicative;
    if exact {
        let base = a.l2_norm_squared();
        for k in k_convolve + 1..=opts.k_max {
            let sq = pow_scalar(&base, k);
            powers.push(PowerNorm {
                k,
                l2_power_root: sq.to_f64().sqrt().powf(1.0 / k as f64),
                l2_norm_squared: sq.render(),
                measured_length: None,
                source: NormSource::FreeBasis,
            });
        }
    }
    let upper = r_upper_sequence(&cert, bound.n, &powers, opts.measure_support);
    let lower_len = crate::group::WordLength::new(c.group().clone());
    let mut lower = Vec::new();
    for &r in &opts.radii {
        lower.push(lower_bound_operator_norm(
            algebra,
            a,
            &lower_len,
            r,
            opts.iterations,
            opts.tol,
        )?);
    }
    let min_upper = upper.iter().map(|u| u.u_k).fold(f64::INFINITY, f64::min);
    let max_lower = lower.iter().map(|l| l.value).fold(0.0, f64::max);
    let r2_tail = powers.last().map(|p| p.l2_power_root).unwrap_or(0.0);
    let r2_below_upper = powers
        .iter()
        .zip(&upper)
        .all(|(p, u)| p.l2_power_root <= u.u_k);
    Ok(SpectralReport {
        element: a.format(c.group()),
        combing: c.name(),
        scalar_mode: S::MODE,
        n: bound.n,
        certified_bound_k1: bound.bound,
        r2_sequence: powers,
        upper_sequence: upper,
        truncated_lower: lower,
        r2_status: if exact {
            R2Status::Exact
        } else {
            R2Status::Estimate
        },
        r2_tail,
        min_upper,
        max_lower,
        gap: min_upper - r2_tail,
        sandwich_holds: max_lower <= min_upper,
        r2_below_upper,
    })
}

fn pow_scalar<S: Scalar>(x: &S, k: u32) -> S {
    (0..k).fold(S::one(), |acc, _| acc.mul(x))
}

fn pow_render<S: Scalar>(x: &S, k: u32) -> String {
    pow_scalar(x, k).render()
}

#[cfg(test)]
pub(crate) mod tests {
    use num_bigint::BigInt;
    use num_rational::BigRational;

    use super::*;
    use crate::combing::{GeodesicCombing, NeighbourhoodCombing, NeighbourhoodOptions};
    use crate::group::{CyclicFactor, GroupDescription, Order};
    use crate::relative::GeneratingAlphabet;

    pub(crate) fn reference() -> NeighbourhoodCombing {
        let g = GroupDescription::free_product(vec![
            CyclicFactor::new("b", Order::Infinite),
            CyclicFactor::new("x", Order::Infinite),
        ])
        .unwrap();
        let a = GeneratingAlphabet::relative_named(g.clone(), "b").unwrap();
        let f = [g.parse("x").unwrap(), g.parse("x^-1").unwrap()];
        NeighbourhoodCombing::build(a, &f, 0, None, NeighbourhoodOptions::default()).unwrap()
    }

    fn elem<S: Scalar>(g: &GroupDescription, terms: &[(&str, &str)]) -> AlgebraElement<S> {
        let t: Vec<(String, String)> = terms
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        GroupAlgebra::new(g.clone()).parse_element(&t).unwrap()
    }

    #[test]
    fn delta_identity_bound_is_one() {
        let c = GeodesicCombing::standard(GroupDescription::free(2).unwrap()).unwrap();
        let a = AlgebraElement::<BigInt>::delta(c.group().identity());
        let b = certified_norm_bound(&a, &c).unwrap();
        assert_eq!((b.n, b.gamma_rho, b.bound), (0, 1, 1.0));
    }

    #[test]
    fn kesten_bound() {
        let g = GroupDescription::free(2).unwrap();
        let c = GeodesicCombing::standard(g.clone()).unwrap();
        let a: AlgebraElement<BigInt> =
            elem(&g, &[("x", "1"), ("x^-1", "1"), ("y", "1"), ("y^-1", "1")]);
        let b = certified_norm_bound(&a, &c).unwrap();
        assert!((b.bound - 2f64.powf(1.5) * 2.0).abs() < 1e-12);
    }

    #[test]
    fn reference_bound_and_support_check() {
        let c = reference();
        let g = c.group().clone();
        let a: AlgebraElement<BigInt> = elem(&g, &[("b x", "1"), ("b x^-1", "1")]);
        let b = certified_norm_bound(&a, &c).unwrap();
        assert_eq!((b.n, b.gamma_rho), (2, 350));
        assert!((b.bound - 350f64.powf(1.5) * 2f64.sqrt()).abs() < 1e-9);
        let bad: AlgebraElement<BigInt> = elem(&g, &[("x", "1")]);
        assert_eq!(
            certified_norm_bound(&bad, &c),
            Err(SpectralError::SupportNotInS("x".into()))
        );
    }

    #[test]
    fn binomial_norms_in_z() {
        let z = GroupDescription::free(1).unwrap();
        let a: AlgebraElement<BigInt> = elem(&z, &[("x", "1"), ("x^-1", "1")]);
        let seq = r2_sequence(&GroupAlgebra::new(z), &a, 10, None).unwrap();
        let mut binom = BigInt::from(1);
        for p in &seq {
            let k = p.k as u64;
            // C(2k, k) = C(2k-2, k-1) * (2k)(2k-1) / k^2
            binom = binom * BigInt::from(2 * k) * BigInt::from(2 * k - 1) / BigInt::from(k * k);
            assert_eq!(p.l2_norm_squared, binom.to_string());
        }
    }

    #[test]
    fn report_on_free_semigroup_element() {
        let c = reference();
        let g = c.group().clone();
        let a: AlgebraElement<BigRational> = elem(&g, &[("b x", "1"), ("b x^-1", "1")]);
        let opts = SpectralOptions {
            k_convolve: 6,
            k_max: 10,
            radii: vec![2, 4],
            ..SpectralOptions::default()
        };
        let r = spectral_report(&GroupAlgebra::new(g), &a, &c, &opts).unwrap();
        assert_eq!(r.r2_status, R2Status::Exact);
        assert_eq!(r.upper_sequence.len(), 10);
        assert_eq!(r.r2_sequence[9].source, NormSource::FreeBasis);
        assert_eq!(r.r2_sequence[9].l2_norm_squared, "1024");
        for (p, u) in r.r2_sequence.iter().zip(&r.upper_sequence) {
            assert!((p.l2_power_root - 2f64.sqrt()).abs() < 1e-12);
            let k = u.k as f64;
            let closed = 2f64.sqrt() * (2.0 * (2.0 * k + 5.0) * 25.0).powf(1.5 / k);
            assert!((u.u_k - closed).abs() <= 1e-9 * closed);
        }
        assert_eq!(r.upper_sequence[0].u_k, r.certified_bound_k1);
        assert!(r.sandwich_holds && r.r2_below_upper);
    }

    #[test]
    fn report_on_identity() {
        let g = GroupDescription::free(2).unwrap();
        let c = GeodesicCombing::standard(g.clone()).unwrap();
        let a = AlgebraElement::<BigInt>::delta(g.identity());
        let opts = SpectralOptions {
            k_convolve: 5,
            k_max: 5,
            radii: vec![0, 2],
            ..SpectralOptions::default()
        };
        let r = spectral_report(&GroupAlgebra::new(g), &a, &c, &opts).unwrap();
        assert!(r.upper_sequence.iter().all(|u| u.u_k == 1.0));
        assert!(r.r2_sequence.iter().all(|p| p.l2_power_root == 1.0));
        assert!(r.truncated_lower.iter().all(|l| l.value == 1.0));
    }

    #[test]
    fn report_on_delta() {
        let g = GroupDescription::free(2).unwrap();
        let c = GeodesicCombing::standard(g.clone()).unwrap();
        let a = AlgebraElement::<BigInt>::delta(g.parse("x y").unwrap());
        let opts = SpectralOptions {
            k_convolve: 4,
            k_max: 4,
            radii: vec![1, 3],
            ..SpectralOptions::default()
        };
        let r = spectral_report(&GroupAlgebra::new(g), &a, &c, &opts).unwrap();
        assert!(r.r2_sequence.iter().all(|p| p.l2_power_root == 1.0));
        assert!(r
            .truncated_lower
            .iter()
            .all(|l| (l.value - 1.0).abs() < 1e-12));
        assert_eq!(r.r2_status, R2Status::Estimate);
    }
}
