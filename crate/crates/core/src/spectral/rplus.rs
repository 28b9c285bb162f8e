use std::cmp::Ordering;
use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{certificate, check_support, pow_scalar, SpectralError};
use crate::algebra::{AlgebraElement, GroupAlgebra, Scalar, ScalarMode};
use crate::combing::{Combing, ElementSet};
use crate::group::GroupElement;

/// Relative slack for the comparison in floating-point mode.
pub const FLOAT_TOLERANCE: f64 = 1e-9;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RPlusCheck {
    pub n: u64,
    pub gamma_rho: u64,
    /// `‖ab‖₂`.
    pub lhs: f64,
    /// `γ(ρ(n))^{3/2} ‖a‖₂ ‖b‖₂`.
    pub rhs: f64,
    /// Both sides squared, exact outside the complex mode.
    pub lhs_squared: String,
    pub rhs_squared: String,
    pub exact: bool,
    pub ok: bool,
}

/// `‖ab‖₂ <= γ(ρ(n))^{3/2} ‖a‖₂ ‖b‖₂` for nonnegative `a, b` with
/// `supp a ⊆ S ∩ B(n)`. The squared sides are compared exactly in the
/// integer and rational modes.
pub fn rplus_check<S: Scalar>(
    algebra: &GroupAlgebra,
    a: &AlgebraElement<S>,
    b: &AlgebraElement<S>,
    c: &dyn Combing,
) -> Result<RPlusCheck, SpectralError> {
    if !a.is_nonneg_real() {
        return Err(SpectralError::NotNonnegative("a"));
    }
    if !b.is_nonneg_real() {
        return Err(SpectralError::NotNonnegative("b"));
    }
    check_support(c, a)?;
    algebra.check(b)?;
    let cert = certificate(c)?;
    let n = a.max_length(c.pseudolength());
    let gamma_rho = cert.gamma_rho(n);
    let ab = algebra.convolve(a, b)?;
    let lhs_sq = ab.l2_norm_squared();
    let g = S::from_i64(i64::try_from(gamma_rho).unwrap_or(i64::MAX));
    let rhs_sq = pow_scalar(&g, 3)
        .mul(&a.l2_norm_squared())
        .mul(&b.l2_norm_squared());
    let lhs = lhs_sq.to_f64().sqrt();
    let rhs = (gamma_rho as f64).powf(1.5) * a.l2_norm() * b.l2_norm();
    let exact = S::MODE != ScalarMode::Complex;
    let ok = if exact {
        lhs_sq.cmp_real(&rhs_sq) != Some(Ordering::Greater)
    } else {
        lhs <= rhs * (1.0 + FLOAT_TOLERANCE)
    };
    Ok(RPlusCheck {
        n,
        gamma_rho,
        lhs,
        rhs,
        lhs_squared: lhs_sq.render(),
        rhs_squared: rhs_sq.render(),
        exact,
        ok,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessEntry {
    pub x: String,
    /// `S_{g,x} = { s in supp a : x in C(1,s) ∩ C(s,g) }`.
    pub s_set: Vec<String>,
    /// `T_{g,x} = { s^-1 g : s in S_{g,x} }`.
    pub t_set: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessSets {
    pub g: String,
    pub n: u64,
    pub rho_n: u64,
    pub gamma_rho: u64,
    /// `X_g = B(ρ(n)) ∩ C(1,g)`.
    pub x_g: Vec<String>,
    pub x_g_within_bound: bool,
    pub entries: Vec<WitnessEntry>,
    /// `supp a ⊆ ∪_x S_{g,x}`.
    pub covered: bool,
    pub uncovered: Vec<String>,
    /// `max C_{s,t}` over `s in supp a` and `t` in some `T_{g,x}`, where
    /// `C_{s,t}` counts pairs `(g', x)` with `x in X_{g'}`,
    /// `s in S_{g',x}` and `t in T_{g',x}`.
    pub max_pair_count: u64,
    pub pair_bound: u64,
    pub pairs_ok: bool,
}

struct Ctx<'a> {
    c: &'a dyn Combing,
    support: Vec<GroupElement>,
    from_identity: Vec<ElementSet>,
    rho_n: u64,
}

impl Ctx<'_> {
    fn x_set(&self, g: &GroupElement) -> ElementSet {
        let len = self.c.pseudolength();
        self.c
            .eval_from_identity(g)
            .into_iter()
            .filter(|x| len.length(x) <= self.rho_n)
            .collect()
    }

    /// Indices `i` with `x in C(1, s_i) ∩ C(s_i, g)`, for every `x`.
    fn memberships(&self, g: &GroupElement, xs: &ElementSet) -> Vec<Vec<usize>> {
        let to_g: Vec<ElementSet> = self.support.iter().map(|s| self.c.eval(s, g)).collect();
        xs.iter()
            .map(|x| {
                (0..self.support.len())
                    .filter(|&i| self.from_identity[i].contains(x) && to_g[i].contains(x))
                    .collect()
            })
            .collect()
    }

    /// `C_{s_i, t}`. `t in T_{g',x}` forces `g' = s' t` with `s' in supp a`,
    /// so only those `g'` contribute.
    fn pair_count(&self, i: usize, t: &GroupElement) -> u64 {
        let group = self.c.group();
        let mut count = 0;
        for (j, s2) in self.support.iter().enumerate() {
            let g2 = group.mul(s2, t);
            let xs = self.x_set(&g2);
            count += self
                .memberships(&g2, &xs)
                .iter()
                .filter(|m| m.contains(&i) && m.contains(&j))
                .count() as u64;
        }
        count
    }
}

/// The sets from the proof of the product inequality at one `g`, with the
/// covering and pair-count checks done by direct enumeration.
pub fn witness_sets<S: Scalar>(
    a: &AlgebraElement<S>,
    g: &GroupElement,
    c: &dyn Combing,
) -> Result<WitnessSets, SpectralError> {
    if !a.is_nonneg_real() {
        return Err(SpectralError::NotNonnegative("a"));
    }
    check_support(c, a)?;
    let cert = certificate(c)?;
    let group = c.group();
    let n = a.max_length(c.pseudolength());
    let rho_n = cert.rho(n);
    let gamma_rho = cert.gamma_rho(n);
    let support: Vec<GroupElement> = a.support().cloned().collect();
    let ctx = Ctx {
        c,
        from_identity: support.iter().map(|s| c.eval_from_identity(s)).collect(),
        support,
        rho_n,
    };
    let xs = ctx.x_set(g);
    let members = ctx.memberships(g, &xs);
    let mut hit = vec![false; ctx.support.len()];
    let mut ts: BTreeSet<GroupElement> = BTreeSet::new();
    let mut entries = Vec::with_capacity(xs.len());
    for (x, m) in xs.iter().zip(&members) {
        let t_set: Vec<GroupElement> = m
            .iter()
            .map(|&i| group.left_quotient(&ctx.support[i], g))
            .collect();
        for &i in m {
            hit[i] = true;
        }
        ts.extend(t_set.iter().cloned());
        entries.push(WitnessEntry {
            x: group.format(x),
            s_set: m.iter().map(|&i| group.format(&ctx.support[i])).collect(),
            t_set: t_set.iter().map(|t| group.format(t)).collect(),
        });
    }
    let uncovered: Vec<String> = ctx
        .support
        .iter()
        .zip(&hit)
        .filter(|(_, h)| !**h)
        .map(|(s, _)| group.format(s))
        .collect();
    let mut max_pair_count = 0;
    for i in 0..ctx.support.len() {
        for t in &ts {
            max_pair_count = max_pair_count.max(ctx.pair_count(i, t));
        }
    }
    let pair_bound = gamma_rho.saturating_mul(gamma_rho);
    Ok(WitnessSets {
        g: group.format(g),
        n,
        rho_n,
        gamma_rho,
        x_g_within_bound: xs.len() as u64 <= gamma_rho,
        x_g: xs.iter().map(|x| group.format(x)).collect(),
        entries,
        covered: uncovered.is_empty(),
        uncovered,
        max_pair_count,
        pair_bound,
        pairs_ok: max_pair_count <= pair_bound,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzConfig {
    pub seed: u64,
    pub pairs: usize,
    /// Number of sampled elements of `S` in `supp a` (before merging).
    pub a_terms: usize,
    pub b_terms: usize,
    /// Elements of `S` are products of at most this many generators.
    pub s_max_len: usize,
    pub max_syllables: usize,
    pub max_exp: u64,
    /// The first this many pairs also get a witness-set check at a random `g`.
    pub witness_samples: usize,
}

impl Default for FuzzConfig {
    fn default() -> Self {
        FuzzConfig {
            seed: 0,
            pairs: 1000,
            a_terms: 3,
            b_terms: 4,
            s_max_len: 2,
            max_syllables: 4,
            max_exp: 2,
            witness_samples: 100,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzFailure {
    pub index: usize,
    pub a: String,
    pub b: String,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct FuzzSummary {
    pub scalar_mode: ScalarMode,
    pub pairs: usize,
    pub passed: usize,
    /// `max lhs / rhs` over the pairs.
    pub max_ratio: f64,
    pub witness_checked: usize,
    pub witness_passed: usize,
    pub max_pair_count: u64,
    pub failures: Vec<FuzzFailure>,
}

impl FuzzSummary {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }
}

/// Seeded random positive pairs `(a, b)` with `supp a ⊆ S`.
pub fn rplus_fuzz<S: Scalar>(
    algebra: &GroupAlgebra,
    c: &dyn Combing,
    cfg: &FuzzConfig,
) -> Result<FuzzSummary, SpectralError> {
    let group = c.group();
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let integer = S::MODE == ScalarMode::Integer;
    let coeff = |rng: &mut ChaCha8Rng| {
        let p = rng.random_range(1..=9);
        let q = if integer { 1 } else { rng.random_range(1..=4) };
        S::from_ratio(p, q).expect("positive ratio")
    };
    let mut cases = Vec::with_capacity(cfg.pairs);
    for _ in 0..cfg.pairs {
        let a_terms: Vec<(GroupElement, S)> = (0..cfg.a_terms.max(1))
            .map(|_| {
                (
                    c.sample_designated(&mut rng, cfg.s_max_len),
                    coeff(&mut rng),
                )
            })
            .collect();
        let b_terms: Vec<(GroupElement, S)> = (0..cfg.b_terms.max(1))
            .map(|_| {
                (
                    group.random_element(&mut rng, cfg.max_syllables, cfg.max_exp),
                    coeff(&mut rng),
                )
            })
            .collect();
        let g = group.random_element(&mut rng, cfg.max_syllables, cfg.max_exp);
        cases.push((
            AlgebraElement::from_terms(a_terms),
            AlgebraElement::from_terms(b_terms),
            g,
        ));
    }
    let results: Vec<Result<(RPlusCheck, Option<WitnessSets>), SpectralError>> = cases
        .par_iter()
        .enumerate()
        .map(|(i, (a, b, g))| {
            let r = rplus_check(algebra, a, b, c)?;
            let w = if i < cfg.witness_samples {
                Some(witness_sets(a, g, c)?)
            } else {
                None
            };
            Ok((r, w))
        })
        .collect();
    let mut summary = FuzzSummary {
        scalar_mode: S::MODE,
        pairs: cases.len(),
        passed: 0,
        max_ratio: 0.0,
        witness_checked: 0,
        witness_passed: 0,
        max_pair_count: 0,
        failures: Vec::new(),
    };
    for (i, (res, (a, b, _))) in results.into_iter().zip(&cases).enumerate() {
        let (r, w) = res?;
        let fail = |detail: String| FuzzFailure {
            index: i,
            a: a.format(group),
            b: b.format(group),
            detail,
        };
        if r.rhs > 0.0 {
            summary.max_ratio = summary.max_ratio.max(r.lhs / r.rhs);
        }
        if r.ok {
            summary.passed += 1;
        } else {
            summary.failures.push(fail(format!(
                "‖ab‖₂² = {} > {}",
                r.lhs_squared, r.rhs_squared
            )));
        }
        if let Some(w) = w {
            summary.witness_checked += 1;
            summary.max_pair_count = summary.max_pair_count.max(w.max_pair_count);
            if w.covered && w.pairs_ok && w.x_g_within_bound {
                summary.witness_passed += 1;
            } else {
                summary.failures.push(fail(format!(
                    "witness sets at g = {}: covered = {}, max C_st = {} (bound {}), |X_g| = {}",
                    w.g,
                    w.covered,
                    w.max_pair_count,
                    w.pair_bound,
                    w.x_g.len()
                )));
            }
        }
    }
    Ok(summary)
}

#[cfg(test)]
mod tests {
    use num_bigint::BigInt;
    use num_complex::Complex64;
    use num_rational::BigRational;

    use super::*;
    use crate::spectral::tests::reference;

    fn parse<S: Scalar>(alg: &GroupAlgebra, terms: &[(&str, &str)]) -> AlgebraElement<S> {
        let t: Vec<(String, String)> = terms
            .iter()
            .map(|(a, b)| (a.to_string(), b.to_string()))
            .collect();
        alg.parse_element(&t).unwrap()
    }

    #[test]
    fn identity_pair() {
        let c = reference();
        let alg = GroupAlgebra::new(c.group().clone());
        let one: AlgebraElement<BigInt> = parse(&alg, &[("1", "1")]);
        let r = rplus_check(&alg, &one, &one, &c).unwrap();
        assert_eq!(r.lhs_squared, "1");
        assert_eq!(r.gamma_rho, c.certified().unwrap().gamma_rho(0));
        assert!(r.ok && r.exact);
    }

    #[test]
    fn reference_pair_by_hand() {
        let c = reference();
        let alg = GroupAlgebra::new(c.group().clone());
        let a: AlgebraElement<BigRational> = parse(&alg, &[("b x", "1"), ("b x^-1", "1")]);
        let b: AlgebraElement<BigRational> = parse(&alg, &[("1", "1"), ("x", "1")]);
        let r = rplus_check(&alg, &a, &b, &c).unwrap();
        // ab = bx + b x^-1 + b x^2 + b: four distinct words.
        assert_eq!(r.lhs_squared, "4");
        assert_eq!(r.rhs_squared, (350u64.pow(3) * 4).to_string());
        assert!(r.ok);
        let neg: AlgebraElement<BigRational> = parse(&alg, &[("1", "-1")]);
        assert_eq!(
            rplus_check(&alg, &a, &neg, &c),
            Err(SpectralError::NotNonnegative("b"))
        );
    }

    #[test]
    fn witness_sets_at_identity_and_elsewhere() {
        let c = reference();
        let g = c.group().clone();
        let a = AlgebraElement::<BigInt>::from_terms([
            (g.parse("b x").unwrap(), BigInt::from(1)),
            (g.parse("b x^-1").unwrap(), BigInt::from(2)),
        ]);
        let w = witness_sets(&a, &g.identity(), &c).unwrap();
        assert!(w.x_g.contains(&"1".to_string()));
        assert!(w.covered && w.pairs_ok && w.x_g_within_bound);
        let w = witness_sets(&a, &g.parse("x^-1 b^-1 x b").unwrap(), &c).unwrap();
        assert!(w.covered && w.pairs_ok);
        assert!(w.max_pair_count > 0);
    }

    #[test]
    fn small_fuzz_in_every_mode() {
        let c = reference();
        let alg = GroupAlgebra::new(c.group().clone());
        let cfg = FuzzConfig {
            seed: 3,
            pairs: 25,
            witness_samples: 5,
            ..FuzzConfig::default()
        };
        let r = rplus_fuzz::<BigInt>(&alg, &c, &cfg).unwrap();
        assert!(r.ok(), "{:?}", r.failures);
        assert_eq!((r.passed, r.witness_passed), (25, 5));
        assert!(rplus_fuzz::<BigRational>(&alg, &c, &cfg).unwrap().ok());
        assert!(rplus_fuzz::<Complex64>(&alg, &c, &cfg).unwrap().ok());
    }
}
