use std::collections::BTreeMap;
use std::path::Path;

use gcomb_core::combing::{
    AuditConfig, Combing, DroppedEndpointCombing, GeodesicCombing, NeighbourhoodCombing,
    NeighbourhoodOptions, ProductCombing,
};
use gcomb_core::group::{CyclicFactor, GroupDescription, Order};
use gcomb_core::relative::GeneratingAlphabet;
use gcomb_core::spectral::{FuzzConfig, SpectralOptions};
use gcomb_core::ScalarMode;
use serde::Deserialize;

use crate::CliError;

/// Environment variable overriding the default support cap.
pub const SUPPORT_CAP_ENV: &str = "GCOMB_SUPPORT_CAP";

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub group: GroupSpec,
    #[serde(default)]
    pub alphabet: AlphabetSpec,
    pub combing: Option<CombingSpec>,
    #[serde(default)]
    pub elements: BTreeMap<String, ElementSpec>,
    #[serde(default)]
    pub run: RunSpec,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum GroupSpec {
    /// Free group on the named generators.
    Free {
        generators: Vec<String>,
    },
    /// Free product of cyclic groups; `orders[i] = 0` means infinite.
    FreeProduct {
        generators: Vec<String>,
        #[serde(default)]
        orders: Vec<u64>,
    },
    Direct {
        factors: Vec<GroupSpec>,
    },
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AlphabetSpec {
    /// Generator of the cyclic subgroup `H`. In a direct product, the
    /// direct factor generated by it.
    pub h: Option<String>,
}

#[derive(Clone, Debug, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case", deny_unknown_fields)]
pub enum CombingSpec {
    Geodesic {
        h: Option<String>,
    },
    Neighbourhood {
        h: Option<String>,
        f: Vec<String>,
        #[serde(default)]
        c: u64,
        t: Option<String>,
        h_enumeration: Option<u64>,
    },
    /// Negative control: the geodesic combing with the endpoint dropped.
    Broken {
        h: Option<String>,
    },
    /// One factor combing per direct factor of the group.
    Product {
        factors: Vec<CombingSpec>,
    },
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ElementSpec {
    #[serde(default = "default_mode")]
    pub mode: String,
    /// `[word, coefficient]` pairs.
    pub terms: Vec<(String, String)>,
}

fn default_mode() -> String {
    "integer".into()
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunSpec {
    pub seed: Option<u64>,
    pub support_cap: Option<usize>,
    #[serde(default)]
    pub audit: AuditSpec,
    #[serde(default)]
    pub spectral: SpectralSpec,
    #[serde(default)]
    pub fuzz: FuzzSpec,
    #[serde(default)]
    pub growth: GrowthSpec,
    #[serde(default)]
    pub semigroup: SemigroupSpec,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AuditSpec {
    pub pairs: Option<usize>,
    pub triple_samples: Option<usize>,
    pub s_max_len: Option<usize>,
    pub growth_samples: Option<usize>,
    pub n_max: Option<u64>,
    pub max_syllables: Option<usize>,
    pub max_exp: Option<u64>,
    pub free_semigroup_len: Option<usize>,
    pub enumeration_cap: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SpectralSpec {
    pub k: Option<u32>,
    pub k_max: Option<u32>,
    pub radii: Option<Vec<u64>>,
    pub iterations: Option<usize>,
    pub tol: Option<f64>,
    pub measure_support: Option<bool>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FuzzSpec {
    pub mode: Option<String>,
    pub pairs: Option<usize>,
    pub a_terms: Option<usize>,
    pub b_terms: Option<usize>,
    pub s_max_len: Option<usize>,
    pub max_syllables: Option<usize>,
    pub max_exp: Option<u64>,
    pub witness_samples: Option<usize>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GrowthSpec {
    pub samples: Option<usize>,
    pub n_max: Option<u64>,
    pub max_syllables: Option<usize>,
    pub max_exp: Option<u64>,
}

#[derive(Clone, Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SemigroupSpec {
    pub length: Option<usize>,
    pub enumeration_cap: Option<usize>,
}

impl ExperimentConfig {
    pub fn load(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("{}: {e}", path.display())))?;
        Self::parse(&text)
    }

    pub fn parse(text: &str) -> Result<Self, CliError> {
        toml::from_str(text).map_err(|e| CliError::Config(e.to_string()))
    }

    pub fn group(&self) -> Result<GroupDescription, CliError> {
        build_group(&self.group)
    }

    pub fn alphabet(&self) -> Result<GeneratingAlphabet, CliError> {
        build_alphabet(self.group()?, self.alphabet.h.as_deref())
    }

    pub fn combing(&self) -> Result<Box<dyn Combing>, CliError> {
        let spec = self
            .combing
            .as_ref()
            .ok_or_else(|| CliError::Config("missing [combing] table".into()))?;
        build_combing(self.group()?, spec, self.alphabet.h.as_deref())
    }

    pub fn element(&self, name: &str) -> Result<&ElementSpec, CliError> {
        self.elements
            .get(name)
            .ok_or_else(|| CliError::Config(format!("no element named `{name}`")))
    }

    pub fn support_cap(&self) -> Result<usize, CliError> {
        if let Some(c) = self.run.support_cap {
            return Ok(c);
        }
        match std::env::var(SUPPORT_CAP_ENV) {
            Ok(v) => v.parse().map_err(|_| {
                CliError::Config(format!(
                    "{SUPPORT_CAP_ENV} must be a nonnegative integer, got `{v}`"
                ))
            }),
            Err(_) => Ok(gcomb_core::algebra::DEFAULT_SUPPORT_CAP),
        }
    }

    pub fn audit_config(&self, seed: u64) -> AuditConfig {
        let a = &self.run.audit;
        let d = AuditConfig::default();
        AuditConfig {
            seed,
            pairs: a.pairs.unwrap_or(d.pairs),
            triple_samples: a.triple_samples.unwrap_or(d.triple_samples),
            s_max_len: a.s_max_len.unwrap_or(d.s_max_len),
            growth_samples: a.growth_samples.unwrap_or(d.growth_samples),
            n_max: a.n_max.unwrap_or(d.n_max),
            max_syllables: a.max_syllables.unwrap_or(d.max_syllables),
            max_exp: a.max_exp.unwrap_or(d.max_exp),
            free_semigroup_len: a.free_semigroup_len.unwrap_or(d.free_semigroup_len),
            enumeration_cap: a.enumeration_cap.unwrap_or(d.enumeration_cap),
        }
    }

    pub fn spectral_options(&self) -> SpectralOptions {
        let s = &self.run.spectral;
        let d = SpectralOptions::default();
        let k = s.k.unwrap_or(d.k_convolve);
        SpectralOptions {
            k_convolve: k,
            k_max: s.k_max.unwrap_or(k),
            radii: s.radii.clone().unwrap_or(d.radii),
            iterations: s.iterations.unwrap_or(d.iterations),
            tol: s.tol.unwrap_or(d.tol),
            measure_support: s.measure_support.unwrap_or(d.measure_support),
        }
    }

    pub fn fuzz_config(&self, seed: u64) -> Result<(ScalarMode, FuzzConfig), CliError> {
        let f = &self.run.fuzz;
        let d = FuzzConfig::default();
        let mode = parse_mode(f.mode.as_deref().unwrap_or("rational"))?;
        Ok((
            mode,
            FuzzConfig {
                seed,
                pairs: f.pairs.unwrap_or(d.pairs),
                a_terms: f.a_terms.unwrap_or(d.a_terms),
                b_terms: f.b_terms.unwrap_or(d.b_terms),
                s_max_len: f.s_max_len.unwrap_or(d.s_max_len),
                max_syllables: f.max_syllables.unwrap_or(d.max_syllables),
                max_exp: f.max_exp.unwrap_or(d.max_exp),
                witness_samples: f.witness_samples.unwrap_or(d.witness_samples),
            },
        ))
    }
}

pub fn parse_mode(s: &str) -> Result<ScalarMode, CliError> {
    ScalarMode::parse(s).ok_or_else(|| {
        CliError::Config(format!(
            "unknown coefficient mode `{s}` (integer, rational, complex)"
        ))
    })
}

fn build_group(spec: &GroupSpec) -> Result<GroupDescription, CliError> {
    let g = match spec {
        GroupSpec::Free { generators } => GroupDescription::free_named(generators.iter().cloned()),
        GroupSpec::FreeProduct { generators, orders } => {
            if !orders.is_empty() && orders.len() != generators.len() {
                return Err(CliError::Config(
                    "`orders` must match `generators` in length".into(),
                ));
            }
            let factors = generators
                .iter()
                .enumerate()
                .map(|(i, name)| {
                    let order = match orders.get(i).copied().unwrap_or(0) {
                        0 => Order::Infinite,
                        m => Order::Finite(m),
                    };
                    CyclicFactor::new(name.clone(), order)
                })
                .collect();
            GroupDescription::free_product(factors)
        }
        GroupSpec::Direct { factors } => GroupDescription::direct(
            factors
                .iter()
                .map(build_group)
                .collect::<Result<Vec<_>, _>>()?,
        ),
    };
    g.map_err(|e| CliError::Config(e.to_string()))
}

fn build_alphabet(
    group: GroupDescription,
    h: Option<&str>,
) -> Result<GeneratingAlphabet, CliError> {
    let Some(h) = h else {
        return Ok(GeneratingAlphabet::standard(group));
    };
    let idx = match group.direct_factors() {
        Some(fs) => fs
            .iter()
            .position(|f| f.num_factors() == 1 && f.factor_name(0) == h)
            .ok_or_else(|| {
                CliError::Config(format!("no cyclic direct factor generated by `{h}`"))
            })?,
        None => group
            .factor_index(h)
            .ok_or_else(|| CliError::Config(format!("no cyclic factor named `{h}`")))?,
    };
    GeneratingAlphabet::relative(group, idx).map_err(|e| CliError::Config(e.to_string()))
}

fn parse_word(group: &GroupDescription, w: &str) -> Result<gcomb_core::GroupElement, CliError> {
    group.parse(w).map_err(|e| CliError::Config(e.to_string()))
}

fn build_combing(
    group: GroupDescription,
    spec: &CombingSpec,
    default_h: Option<&str>,
) -> Result<Box<dyn Combing>, CliError> {
    let cerr = CliError::from_combing;
    Ok(match spec {
        CombingSpec::Geodesic { h } => Box::new(
            GeodesicCombing::new(build_alphabet(group, h.as_deref().or(default_h))?)
                .map_err(cerr)?,
        ),
        CombingSpec::Broken { h } => Box::new(DroppedEndpointCombing::new(
            GeodesicCombing::new(build_alphabet(group, h.as_deref().or(default_h))?)
                .map_err(cerr)?,
        )),
        CombingSpec::Neighbourhood {
            h,
            f,
            c,
            t,
            h_enumeration,
        } => {
            let alphabet = build_alphabet(group.clone(), h.as_deref().or(default_h))?;
            let f = f
                .iter()
                .map(|w| parse_word(&group, w))
                .collect::<Result<Vec<_>, _>>()?;
            let t = t.as_deref().map(|w| parse_word(&group, w)).transpose()?;
            let mut options = NeighbourhoodOptions::default();
            if let Some(r) = h_enumeration {
                options.h_enumeration = *r;
            }
            Box::new(NeighbourhoodCombing::build(alphabet, &f, *c, t, options).map_err(cerr)?)
        }
        CombingSpec::Product { factors } => {
            let groups = group.direct_factors().ok_or_else(|| {
                CliError::Config("a product combing needs a direct-product group".into())
            })?;
            if groups.len() != factors.len() {
                return Err(CliError::Config(format!(
                    "{} factor combings for {} direct factors",
                    factors.len(),
                    groups.len()
                )));
            }
            let parts = groups
                .iter()
                .zip(factors)
                .map(|(g, s)| build_combing(g.clone(), s, None))
                .collect::<Result<Vec<_>, _>>()?;
            Box::new(ProductCombing::new(parts).map_err(cerr)?)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const REFERENCE: &str = r#"
[group]
kind = "free_product"
generators = ["b", "x"]

[alphabet]
h = "b"

[combing]
kind = "neighbourhood"
f = ["x", "x^-1"]
c = 0

[elements.a]
terms = [["b x", "1"], ["b x^-1", "1"]]
"#;

    #[test]
    fn reference_config_builds() {
        let cfg = ExperimentConfig::parse(REFERENCE).unwrap();
        let c = cfg.combing().unwrap();
        assert_eq!(c.name(), "neighbourhood");
        assert_eq!(cfg.element("a").unwrap().terms.len(), 2);
        assert!(cfg.element("b").is_err());
    }

    #[test]
    fn unknown_keys_are_rejected() {
        let bad = REFERENCE.replace("c = 0", "c = 0\nconstant = 3");
        assert!(matches!(
            ExperimentConfig::parse(&bad),
            Err(CliError::Config(_))
        ));
    }

    #[test]
    fn direct_alphabet_by_generator_name() {
        let cfg = ExperimentConfig::parse(
            r#"
[group]
kind = "direct"
factors = [{ kind = "free", generators = ["b"] }, { kind = "free", generators = ["x"] }]
[alphabet]
h = "b"
"#,
        )
        .unwrap();
        let a = cfg.alphabet().unwrap();
        assert!(a.is_direct_model());
        assert_eq!(a.h_factor(), Some(0));
    }
}
