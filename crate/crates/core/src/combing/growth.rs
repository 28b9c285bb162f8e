use rayon::prelude::*;
use serde::Serialize;

use super::Combing;
use crate::group::{GroupElement, Pseudolength};

/// Polynomial with nonnegative integer coefficients, `coeffs[i]` of `n^i`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Poly {
    pub coeffs: Vec<u64>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<u64>) -> Self {
        while coeffs.len() > 1 && coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        if coeffs.is_empty() {
            coeffs.push(0);
        }
        Poly { coeffs }
    }

    pub fn constant(c: u64) -> Self {
        Poly::new(vec![c])
    }

    /// `a n + b`.
    pub fn linear(a: u64, b: u64) -> Self {
        Poly::new(vec![b, a])
    }

    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn eval(&self, n: u64) -> u64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc.saturating_mul(n).saturating_add(c))
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    a.saturating_add(b)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = vec![0u64; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] = out[i + j].saturating_add(a.saturating_mul(*b));
            }
        }
        Poly::new(out)
    }

    /// Coefficientwise maximum; dominates `max(p(n), q(n))` for `n >= 0`.
    pub fn join(&self, other: &Poly) -> Poly {
        let len = self.coeffs.len().max(other.coeffs.len());
        Poly::new(
            (0..len)
                .map(|i| {
                    let a = self.coeffs.get(i).copied().unwrap_or(0);
                    let b = other.coeffs.get(i).copied().unwrap_or(0);
                    a.max(b)
                })
                .collect(),
        )
    }

    /// `self(other(n))`.
    pub fn compose(&self, other: &Poly) -> Poly {
        let mut out = Poly::constant(0);
        for &c in self.coeffs.iter().rev() {
            out = out.mul(other).add(&Poly::constant(c));
        }
        out
    }
}

/// Closed-form growth bounds installed by a combing.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum CertifiedGrowth {
    /// `γ(n) = n + 1`, `ρ(n) = n`.
    Geodesic,
    /// `γ(n) = 2 (n + M + 1) |Ω|^2`, `ρ(n) = n + M`.
    Neighbourhood { omega_size: u64, m: u64 },
    /// `γ = Π γ_i`, `ρ = max ρ_i`.
    Product { factors: Vec<CertifiedGrowth> },
}

impl CertifiedGrowth {
    pub fn gamma(&self, n: u64) -> u64 {
        match self {
            CertifiedGrowth::Geodesic => n.saturating_add(1),
            CertifiedGrowth::Neighbourhood { omega_size, m } => n
                .saturating_add(*m)
                .saturating_add(1)
                .saturating_mul(2)
                .saturating_mul(omega_size.saturating_mul(*omega_size)),
            CertifiedGrowth::Product { factors } => factors
                .iter()
                .fold(1u64, |acc, f| acc.saturating_mul(f.gamma(n))),
        }
    }

    pub fn rho(&self, n: u64) -> u64 {
        match self {
            CertifiedGrowth::Geodesic => n,
            CertifiedGrowth::Neighbourhood { m, .. } => n.saturating_add(*m),
            CertifiedGrowth::Product { factors } => {
                factors.iter().map(|f| f.rho(n)).max().unwrap_or(0)
            }
        }
    }

    /// `Π ρ_i(n)` for products, `ρ(n)` otherwise.
    pub fn rho_product_form(&self, n: u64) -> u64 {
        match self {
            CertifiedGrowth::Product { factors } => factors
                .iter()
                .fold(1u64, |acc, f| acc.saturating_mul(f.rho(n))),
            _ => self.rho(n),
        }
    }

    pub fn gamma_rho(&self, n: u64) -> u64 {
        self.gamma(self.rho(n))
    }

    pub fn gamma_poly(&self) -> Poly {
        match self {
            CertifiedGrowth::Geodesic => Poly::linear(1, 1),
            CertifiedGrowth::Neighbourhood { omega_size, m } => {
                let w = 2 * omega_size * omega_size;
                Poly::linear(w, w * (m + 1))
            }
            CertifiedGrowth::Product { factors } => factors
                .iter()
                .fold(Poly::constant(1), |acc, f| acc.mul(&f.gamma_poly())),
        }
    }

    pub fn rho_poly(&self) -> Poly {
        match self {
            CertifiedGrowth::Geodesic => Poly::linear(1, 0),
            CertifiedGrowth::Neighbourhood { m, .. } => Poly::linear(1, *m),
            CertifiedGrowth::Product { factors } => factors
                .iter()
                .fold(Poly::constant(0), |acc, f| acc.join(&f.rho_poly())),
        }
    }

    /// A polynomial dominating `n -> γ(ρ(n))`.
    pub fn gamma_rho_poly(&self) -> Poly {
        self.gamma_poly().compose(&self.rho_poly())
    }
}

/// Sample maxima of `|C(1,g) ∩ B(n)|` and of `ℓ` over `C(1,g)`, `ℓ(g) <= n`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthObservation {
    pub n: u64,
    pub gamma_observed: u64,
    /// `None` when no sampled `g` has `ℓ(g) <= n`.
    pub rho_observed: Option<u64>,
    pub gamma_certified: Option<u64>,
    pub rho_certified: Option<u64>,
    pub samples: usize,
}

impl GrowthObservation {
    pub fn dominated(&self) -> bool {
        let g = self
            .gamma_certified
            .is_none_or(|c| self.gamma_observed <= c);
        let r = match (self.rho_observed, self.rho_certified) {
            (Some(o), Some(c)) => o <= c,
            _ => true,
        };
        g && r
    }
}

pub fn empirical_growth(c: &dyn Combing, n: u64, sample: &[GroupElement]) -> GrowthObservation {
    observe(c, n, &profiles(c, sample))
}

/// `empirical_growth` for `n = 0..=n_max`, evaluating each sample once.
pub fn growth_profile(
    c: &dyn Combing,
    n_max: u64,
    sample: &[GroupElement],
) -> Vec<GrowthObservation> {
    let per = profiles(c, sample);
    (0..=n_max).map(|n| observe(c, n, &per)).collect()
}

/// `(ℓ(g), histogram of ℓ on C(1,g))` per sample.
fn profiles(c: &dyn Combing, sample: &[GroupElement]) -> Vec<(u64, Vec<u64>)> {
    let len = c.pseudolength();
    sample
        .par_iter()
        .map(|g| (len.length(g), c.length_histogram(g)))
        .collect()
}

fn observe(c: &dyn Combing, n: u64, per: &[(u64, Vec<u64>)]) -> GrowthObservation {
    let gamma_observed = per
        .iter()
        .map(|(_, h)| h.iter().take(n.saturating_add(1) as usize).sum::<u64>())
        .max()
        .unwrap_or(0);
    let rho_observed = per
        .iter()
        .filter(|(l, _)| *l <= n)
        .map(|(_, h)| h.len().saturating_sub(1) as u64)
        .max();
    let cert = c.certified();
    GrowthObservation {
        n,
        gamma_observed,
        rho_observed,
        gamma_certified: cert.as_ref().map(|c| c.gamma(n)),
        rho_certified: cert.as_ref().map(|c| c.rho(n)),
        samples: per.len(),
    }
}

/// `h[l] = |{x in set : ℓ(x) = l}|`, without trailing zeros.
pub fn length_histogram<'a>(
    len: &dyn Pseudolength,
    set: impl IntoIterator<Item = &'a GroupElement>,
) -> Vec<u64> {
    let mut h = Vec::new();
    for x in set {
        let l = len.length(x) as usize;
        if h.len() <= l {
            h.resize(l + 1, 0);
        }
        h[l] += 1;
    }
    h
}
