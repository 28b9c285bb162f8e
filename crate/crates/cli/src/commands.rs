use gcomb_core::algebra::{AlgebraElement, GroupAlgebra, Scalar};
use gcomb_core::combing::{
    audit_combing, growth_profile, verify_free_semigroup, Combing, FreeSemigroupOutcome,
    GrowthObservation, Poly,
};
use gcomb_core::relative::h_components;
use gcomb_core::spectral::{rplus_fuzz, spectral_report, SpectralReport};
use gcomb_core::{GroupElement, ScalarMode};
use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::config::{parse_mode, ExperimentConfig};
use crate::output::{csv_table, opt, Outcome};
use crate::{Cli, CliError, Command, Format, EXIT_VIOLATION};

pub fn dispatch(cli: &Cli) -> Result<Outcome, CliError> {
    let path = cli
        .common
        .config
        .as_deref()
        .ok_or_else(|| CliError::Config("--config is required".into()))?;
    let cfg = ExperimentConfig::load(path)?;
    let seed = || {
        cli.common.seed.or(cfg.run.seed).ok_or_else(|| {
            CliError::Config("this command is randomized and needs --seed (or run.seed)".into())
        })
    };
    let format = cli.common.format;
    match &cli.command {
        Command::Audit => audit(&cfg, seed()?, format),
        Command::Spectral { element } => spectral(&cfg, element, format),
        Command::Dhat { h1, h2, bound } => dhat(&cfg, h1, h2, *bound, format),
        Command::Growth => growth(&cfg, seed()?, format),
        Command::Geodesic { word } => geodesic(&cfg, word, format),
        Command::Semigroup { length, member } => {
            semigroup(&cfg, *length, member.as_deref(), format)
        }
        Command::RplusFuzz => fuzz(&cfg, seed()?, format),
    }
}

fn parse(c: &dyn Combing, w: &str) -> Result<GroupElement, CliError> {
    c.group().parse(w).map_err(CliError::from_group)
}

fn growth_rows(obs: &[GrowthObservation]) -> Vec<Vec<String>> {
    obs.iter()
        .map(|o| {
            vec![
                o.n.to_string(),
                o.gamma_observed.to_string(),
                opt(o.gamma_certified),
                opt(o.rho_observed),
                opt(o.rho_certified),
                o.samples.to_string(),
            ]
        })
        .collect()
}

const GROWTH_HEADER: [&str; 6] = [
    "n",
    "gamma_observed",
    "gamma_certified",
    "rho_observed",
    "rho_certified",
    "samples",
];

fn audit(cfg: &ExperimentConfig, seed: u64, format: Format) -> Result<Outcome, CliError> {
    let c = cfg.combing()?;
    let ac = cfg.audit_config(seed);
    if let Some((_, f)) = c.semigroup_basis() {
        let k = f.len();
        let needed = (1..=ac.free_semigroup_len as u32).try_fold(0usize, |acc, l| {
            k.checked_pow(l).and_then(|p| acc.checked_add(p))
        });
        if needed.is_none_or(|n| n > ac.enumeration_cap) {
            return Err(CliError::Resource(format!(
                "free-semigroup check needs {} words, cap is {}",
                opt(needed),
                ac.enumeration_cap
            )));
        }
    }
    let report = audit_combing(c.as_ref(), &ac);
    let n = report.violations.len();
    let mut out = Outcome::new(format!("audit of `{}`: {n} violation(s)", report.combing));
    if n > 0 {
        out = out.with_exit(EXIT_VIOLATION);
    }
    match format {
        Format::Json => out.json("audit.json", &report),
        Format::Csv => {
            let growth = csv_table(&GROWTH_HEADER, growth_rows(&report.growth))?;
            let violations = csv_table(
                &["kind", "witness", "detail"],
                report.violations.iter().map(|v| {
                    vec![
                        serde_json::to_value(v.kind)
                            .ok()
                            .and_then(|k| k.as_str().map(String::from))
                            .unwrap_or_default(),
                        v.witness.join("; "),
                        v.detail.clone(),
                    ]
                }),
            )?;
            Ok(out
                .file("audit_growth.csv", growth)
                .file("audit_violations.csv", violations))
        }
    }
}

fn spectral(cfg: &ExperimentConfig, name: &str, format: Format) -> Result<Outcome, CliError> {
    let c = cfg.combing()?;
    let spec = cfg.element(name)?;
    let algebra = GroupAlgebra::new(c.group().clone()).with_support_cap(cfg.support_cap()?);
    let report = match parse_mode(&spec.mode)? {
        ScalarMode::Integer => spectral_for::<BigInt>(cfg, name, c.as_ref(), &algebra)?,
        ScalarMode::Rational => spectral_for::<BigRational>(cfg, name, c.as_ref(), &algebra)?,
        ScalarMode::Complex => spectral_for::<Complex64>(cfg, name, c.as_ref(), &algebra)?,
    };
    let ok = report.sandwich_holds && report.r2_below_upper;
    let mut out = Outcome::new(format!(
        "spectral `{name}`: max lower {} <= min upper {}: {ok}",
        report.max_lower, report.min_upper
    ));
    if !ok {
        out = out.with_exit(EXIT_VIOLATION);
    }
    match format {
        Format::Json => out.json("spectral.json", &report),
        Format::Csv => {
            let (powers, lower) = spectral_csv(&report)?;
            Ok(out
                .file("spectral_powers.csv", powers)
                .file("spectral_lower.csv", lower))
        }
    }
}

/// The two fixed-column CSV tables of a spectral report.
pub fn spectral_csv(r: &SpectralReport) -> Result<(String, String), CliError> {
    let powers = csv_table(
        &["k", "l2_power_root", "u_k", "running_min_u"],
        r.r2_sequence.iter().zip(&r.upper_sequence).map(|(p, u)| {
            vec![
                p.k.to_string(),
                p.l2_power_root.to_string(),
                u.u_k.to_string(),
                u.running_min.to_string(),
            ]
        }),
    )?;
    let lower = csv_table(
        &["radius", "lower_bound"],
        r.truncated_lower
            .iter()
            .map(|l| vec![l.radius.to_string(), l.value.to_string()]),
    )?;
    Ok((powers, lower))
}

fn spectral_for<S: Scalar>(
    cfg: &ExperimentConfig,
    name: &str,
    c: &dyn Combing,
    algebra: &GroupAlgebra,
) -> Result<SpectralReport, CliError> {
    let a: AlgebraElement<S> = algebra
        .parse_element(&cfg.element(name)?.terms)
        .map_err(CliError::from_group)?;
    spectral_report(algebra, &a, c, &cfg.spectral_options()).map_err(CliError::from_spectral)
}

#[derive(Serialize)]
struct DhatOutput {
    h1: String,
    h2: String,
    bound: u64,
    dhat: String,
}

fn dhat(
    cfg: &ExperimentConfig,
    h1: &str,
    h2: &str,
    bound: u64,
    format: Format,
) -> Result<Outcome, CliError> {
    let a = cfg.alphabet()?;
    if !a.has_h() {
        return Err(CliError::Config("dhat needs `alphabet.h`".into()));
    }
    let g = a.group();
    let x = g.parse(h1).map_err(CliError::from_group)?;
    let y = g.parse(h2).map_err(CliError::from_group)?;
    let d = a.dhat(&x, &y, bound);
    let res = DhatOutput {
        h1: g.format(&x),
        h2: g.format(&y),
        bound,
        dhat: d.to_string(),
    };
    let out = Outcome::new(format!("d̂({}, {}) = {d}", res.h1, res.h2));
    match format {
        Format::Json => out.json("dhat.json", &res),
        Format::Csv => {
            let t = csv_table(
                &["h1", "h2", "bound", "dhat"],
                [vec![res.h1, res.h2, bound.to_string(), res.dhat]],
            )?;
            Ok(out.file("dhat.csv", t))
        }
    }
}

#[derive(Serialize)]
struct GrowthOutput {
    combing: String,
    seed: u64,
    samples: usize,
    gamma_rho_polynomial: Option<Poly>,
    observations: Vec<GrowthObservation>,
    dominated: bool,
}

fn growth(cfg: &ExperimentConfig, seed: u64, format: Format) -> Result<Outcome, CliError> {
    let c = cfg.combing()?;
    let g = c.group();
    let s = &cfg.run.growth;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sample: Vec<GroupElement> = (0..s.samples.unwrap_or(1000))
        .map(|_| {
            g.random_element(
                &mut rng,
                s.max_syllables.unwrap_or(8),
                s.max_exp.unwrap_or(3),
            )
        })
        .collect();
    sample.push(g.identity());
    let observations = growth_profile(c.as_ref(), s.n_max.unwrap_or(8), &sample);
    let dominated = observations.iter().all(GrowthObservation::dominated);
    let res = GrowthOutput {
        combing: c.name(),
        seed,
        samples: sample.len(),
        gamma_rho_polynomial: c.certified().map(|x| x.gamma_rho_poly()),
        observations,
        dominated,
    };
    let mut out = Outcome::new(format!(
        "growth of `{}`: dominated = {dominated}",
        res.combing
    ));
    if !dominated {
        out = out.with_exit(EXIT_VIOLATION);
    }
    match format {
        Format::Json => out.json("growth.json", &res),
        Format::Csv => Ok(out.file(
            "growth.csv",
            csv_table(&GROWTH_HEADER, growth_rows(&res.observations))?,
        )),
    }
}

#[derive(Serialize)]
struct ComponentOutput {
    start: usize,
    end: usize,
    from: String,
    to: String,
    isolated: bool,
}

#[derive(Serialize)]
struct GeodesicOutput {
    word: String,
    length: u64,
    path: String,
    vertices: Vec<String>,
    h_components: Vec<ComponentOutput>,
}

fn geodesic(cfg: &ExperimentConfig, word: &str, format: Format) -> Result<Outcome, CliError> {
    let a = cfg.alphabet()?;
    let g = a.group();
    let w = g.parse(word).map_err(CliError::from_group)?;
    let path = a.canonical_geodesic(&w);
    let res = GeodesicOutput {
        word: g.format(&w),
        length: a.length(&w),
        path: path.format(&a),
        vertices: path.vertices(&a).iter().map(|v| g.format(v)).collect(),
        h_components: h_components(&a, &path)
            .into_iter()
            .map(|k| ComponentOutput {
                start: k.start,
                end: k.end,
                from: g.format(&k.from),
                to: g.format(&k.to),
                isolated: k.isolated,
            })
            .collect(),
    };
    let out = Outcome::new(format!("|{}|_A = {}", res.word, res.length));
    match format {
        Format::Json => out.json("geodesic.json", &res),
        Format::Csv => {
            let t = csv_table(
                &["index", "vertex"],
                res.vertices
                    .iter()
                    .enumerate()
                    .map(|(i, v)| vec![i.to_string(), v.clone()]),
            )?;
            Ok(out.file("geodesic.csv", t))
        }
    }
}

#[derive(Serialize)]
struct SemigroupOutput {
    t: String,
    f: Vec<String>,
    length: usize,
    outcome: FreeSemigroupOutcome,
    member: Option<MemberOutput>,
}

#[derive(Serialize)]
struct MemberOutput {
    word: String,
    in_s: bool,
}

fn semigroup(
    cfg: &ExperimentConfig,
    length: Option<usize>,
    member: Option<&str>,
    format: Format,
) -> Result<Outcome, CliError> {
    let c = cfg.combing()?;
    let (t, f) = c.semigroup_basis().ok_or_else(|| {
        CliError::Config(format!(
            "combing `{}` has no free semigroup basis",
            c.name()
        ))
    })?;
    let g = c.group();
    let s = &cfg.run.semigroup;
    let length = length.or(s.length).unwrap_or(8);
    if length == 0 {
        return Err(CliError::Config("--length must be at least 1".into()));
    }
    let outcome = verify_free_semigroup(g, &t, &f, length, s.enumeration_cap.unwrap_or(1 << 22))
        .map_err(CliError::from_combing)?;
    let member = member
        .map(|w| {
            parse(c.as_ref(), w).map(|e| MemberOutput {
                word: g.format(&e),
                in_s: c.in_designated_set(&e),
            })
        })
        .transpose()?;
    let ok = matches!(outcome, FreeSemigroupOutcome::Ok { .. });
    let res = SemigroupOutput {
        t: g.format(&t),
        f: f.iter().map(|x| g.format(x)).collect(),
        length,
        outcome,
        member,
    };
    let mut out = Outcome::new(format!(
        "semigroup generated by tF up to length {length}: free = {ok}"
    ));
    if !ok {
        out = out.with_exit(EXIT_VIOLATION);
    }
    match format {
        Format::Json => out.json("semigroup.json", &res),
        Format::Csv => {
            let (kind, words, value) = match &res.outcome {
                FreeSemigroupOutcome::Ok { words } => ("ok", words.to_string(), String::new()),
                FreeSemigroupOutcome::Collision { value, .. } => {
                    ("collision", String::new(), value.clone())
                }
            };
            let t = csv_table(
                &["length", "outcome", "words", "collision_value"],
                [vec![length.to_string(), kind.into(), words, value]],
            )?;
            Ok(out.file("semigroup.csv", t))
        }
    }
}

fn fuzz(cfg: &ExperimentConfig, seed: u64, format: Format) -> Result<Outcome, CliError> {
    let c = cfg.combing()?;
    let (mode, fc) = cfg.fuzz_config(seed)?;
    let algebra = GroupAlgebra::new(c.group().clone()).with_support_cap(cfg.support_cap()?);
    let summary = match mode {
        ScalarMode::Integer => rplus_fuzz::<BigInt>(&algebra, c.as_ref(), &fc),
        ScalarMode::Rational => rplus_fuzz::<BigRational>(&algebra, c.as_ref(), &fc),
        ScalarMode::Complex => rplus_fuzz::<Complex64>(&algebra, c.as_ref(), &fc),
    }
    .map_err(CliError::from_spectral)?;
    let mut out = Outcome::new(format!(
        "rplus-fuzz: {}/{} pairs ok, {}/{} witness checks ok",
        summary.passed, summary.pairs, summary.witness_passed, summary.witness_checked
    ));
    if !summary.ok() {
        out = out.with_exit(EXIT_VIOLATION);
    }
    match format {
        Format::Json => out.json("rplus_fuzz.json", &summary),
        Format::Csv => {
            let t = csv_table(
                &["index", "a", "b", "detail"],
                summary.failures.iter().map(|f| {
                    vec![
                        f.index.to_string(),
                        f.a.clone(),
                        f.b.clone(),
                        f.detail.clone(),
                    ]
                }),
            )?;
            Ok(out.file("rplus_fuzz_failures.csv", t))
        }
    }
}
