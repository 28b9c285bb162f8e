use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::{
    growth_profile, translate, triple_witness, verify_free_semigroup, Combing,
    FreeSemigroupOutcome, GrowthObservation, Poly,
};
use crate::group::GroupElement;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditConfig {
    pub seed: u64,
    /// Random pairs `(x, y)` for symmetry and triples for equivariance.
    pub pairs: usize,
    /// Random `g` crossed with the elements of `S` for triple intersection.
    pub triple_samples: usize,
    /// Elements of `S` are words of at most this many generators.
    pub s_max_len: usize,
    /// Random elements for the growth and `|C(1,s)|` checks.
    pub growth_samples: usize,
    pub n_max: u64,
    pub max_syllables: usize,
    pub max_exp: u64,
    /// Word length for the free-semigroup check (0 disables it).
    pub free_semigroup_len: usize,
    pub enumeration_cap: usize,
}

impl Default for AuditConfig {
    fn default() -> Self {
        AuditConfig {
            seed: 0,
            pairs: 1000,
            triple_samples: 1000,
            s_max_len: 4,
            growth_samples: 1000,
            n_max: 8,
            max_syllables: 8,
            max_exp: 3,
            free_semigroup_len: 8,
            enumeration_cap: 1 << 22,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ViolationKind {
    Symmetry,
    Equivariance,
    TripleIntersection,
    CardinalityBound,
    GrowthDomination,
    FreeSemigroup,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub kind: ViolationKind,
    /// The sampled elements, as words.
    pub witness: Vec<String>,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckCounts {
    pub symmetry: usize,
    pub equivariance: usize,
    pub triple_intersection: usize,
    pub cardinality_bound: usize,
    pub growth_domination: usize,
    pub free_semigroup: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AuditReport {
    pub combing: String,
    pub group: String,
    pub config: AuditConfig,
    pub checks: CheckCounts,
    pub s_elements: usize,
    pub s_exhaustive: bool,
    pub growth: Vec<GrowthObservation>,
    pub gamma_rho_polynomial: Option<Poly>,
    pub free_semigroup: Option<FreeSemigroupOutcome>,
    pub violations: Vec<Violation>,
}

impl AuditReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn count(&self, kind: ViolationKind) -> usize {
        self.violations.iter().filter(|v| v.kind == kind).count()
    }
}

/// Samples are drawn sequentially from one seeded stream before any
/// parallel work, so the report does not depend on the thread count.
pub fn audit_combing(c: &dyn Combing, cfg: &AuditConfig) -> AuditReport {
    let group = c.group();
    let fmt = |g: &GroupElement| group.format(g);
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let rand_el = |rng: &mut ChaCha8Rng| group.random_element(rng, cfg.max_syllables, cfg.max_exp);

    let triples: Vec<[GroupElement; 3]> = (0..cfg.pairs)
        .map(|_| [rand_el(&mut rng), rand_el(&mut rng), rand_el(&mut rng)])
        .collect();
    let g_samples: Vec<GroupElement> = (0..cfg.triple_samples).map(|_| rand_el(&mut rng)).collect();
    let growth_sample: Vec<GroupElement> =
        (0..cfg.growth_samples).map(|_| rand_el(&mut rng)).collect();
    let (s_elems, s_exhaustive) = match c.enumerate_designated(cfg.s_max_len) {
        Some(v) => (v, true),
        None => (
            (0..cfg.triple_samples.max(1))
                .map(|_| c.sample_designated(&mut rng, cfg.s_max_len))
                .collect(),
            false,
        ),
    };

    let mut checks = CheckCounts::default();
    let mut violations = Vec::new();

    // Symmetry and equivariance.
    let sym: Vec<Option<Violation>> = triples
        .par_iter()
        .map(|[x, y, _]| {
            (c.eval(x, y) != c.eval(y, x)).then(|| Violation {
                kind: ViolationKind::Symmetry,
                witness: vec![fmt(x), fmt(y)],
                detail: "C(x,y) != C(y,x)".into(),
            })
        })
        .collect();
    checks.symmetry = triples.len();
    violations.extend(sym.into_iter().flatten());

    let eqv: Vec<Option<Violation>> = triples
        .par_iter()
        .map(|[x, y, g]| {
            let lhs = c.eval(&group.mul(g, x), &group.mul(g, y));
            let rhs = translate(group, g, &c.eval(x, y));
            (lhs != rhs).then(|| Violation {
                kind: ViolationKind::Equivariance,
                witness: vec![fmt(x), fmt(y), fmt(g)],
                detail: "C(gx,gy) != g C(x,y)".into(),
            })
        })
        .collect();
    checks.equivariance = triples.len();
    violations.extend(eqv.into_iter().flatten());

    // Triple intersection for s in S.
    let pairs: Vec<(&GroupElement, &GroupElement)> = s_elems
        .iter()
        .flat_map(|s| g_samples.iter().map(move |g| (s, g)))
        .collect();
    let tri: Vec<Option<Violation>> = pairs
        .par_iter()
        .map(|(s, g)| {
            triple_witness(c, s, g).is_none().then(|| Violation {
                kind: ViolationKind::TripleIntersection,
                witness: vec![fmt(s), fmt(g)],
                detail: "C(1,s) ∩ C(s,g) ∩ C(1,g) is empty".into(),
            })
        })
        .collect();
    checks.triple_intersection = pairs.len();
    violations.extend(tri.into_iter().flatten());

    // |C(1,s)| <= γ(ρ(n)) for s in B(n), n = ℓ(s).
    let cert = c.certified();
    if let Some(cert) = &cert {
        let len = c.pseudolength();
        let elems: Vec<&GroupElement> = s_elems.iter().chain(&growth_sample).collect();
        let card: Vec<Option<Violation>> = elems
            .par_iter()
            .map(|s| {
                let n = len.length(s);
                let size: u64 = c.length_histogram(s).iter().sum();
                let bound = cert.gamma_rho(n);
                (size > bound).then(|| Violation {
                    kind: ViolationKind::CardinalityBound,
                    witness: vec![fmt(s)],
                    detail: format!("|C(1,s)| = {size} > γ(ρ({n})) = {bound}"),
                })
            })
            .collect();
        checks.cardinality_bound = elems.len();
        violations.extend(card.into_iter().flatten());
    }

    // Empirical growth against the certified bounds.
    let mut sample = growth_sample.clone();
    sample.extend(s_elems.iter().cloned());
    sample.push(group.identity());
    let growth = growth_profile(c, cfg.n_max, &sample);
    for obs in &growth {
        let n = obs.n;
        checks.growth_domination += 1;
        if !obs.dominated() {
            violations.push(Violation {
                kind: ViolationKind::GrowthDomination,
                witness: vec![],
                detail: format!(
                    "n = {n}: observed (γ, ρ) = ({}, {:?}) exceeds certified ({:?}, {:?})",
                    obs.gamma_observed, obs.rho_observed, obs.gamma_certified, obs.rho_certified
                ),
            });
        }
    }

    let mut free_semigroup = None;
    if cfg.free_semigroup_len > 0 {
        if let Some((t, f)) = c.semigroup_basis() {
            checks.free_semigroup = 1;
            match verify_free_semigroup(group, &t, &f, cfg.free_semigroup_len, cfg.enumeration_cap)
            {
                Ok(out) => {
                    if let FreeSemigroupOutcome::Collision {
                        first,
                        second,
                        value,
                    } = &out
                    {
                        violations.push(Violation {
                            kind: ViolationKind::FreeSemigroup,
                            witness: vec![value.clone()],
                            detail: format!("words {first:?} and {second:?} coincide"),
                        });
                    }
                    free_semigroup = Some(out);
                }
                Err(e) => violations.push(Violation {
                    kind: ViolationKind::FreeSemigroup,
                    witness: vec![],
                    detail: e.to_string(),
                }),
            }
        }
    }

    AuditReport {
        combing: c.name(),
        group: group.to_string(),
        config: cfg.clone(),
        checks,
        s_elements: s_elems.len(),
        s_exhaustive,
        growth,
        gamma_rho_polynomial: cert.map(|c| c.gamma_rho_poly()),
        free_semigroup,
        violations,
    }
}
