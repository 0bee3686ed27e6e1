//! The validated, serializable description of one invocation.

use std::path::{Path, PathBuf};

use rpr_core::coloring::{Coloring, InvariantDescriptor};
use rpr_core::config::{catalog_entry, parse_config, parse_expr, Configuration};
use rpr_core::decide::Question;
use rpr_core::search::{Mode, Regime, SampleSpec};
use rpr_core::verify::HCapRule;
use serde::{Deserialize, Serialize};

use crate::args::{Cli, Command, Common, Format};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SubcommandKind {
    Decide,
    Witness,
    Force,
    Avoid,
    RamseyH,
    Separate,
    Verify,
}

/// Where the configuration came from. File contents are kept so a report
/// can be replayed without the file.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConfigSource {
    Catalog(String),
    File { path: PathBuf, text: String },
    Inline(String),
}

impl ConfigSource {
    /// Catalog names win over paths, paths over inline text.
    pub fn resolve(arg: &str) -> Result<ConfigSource, String> {
        if catalog_entry(arg.trim()).is_some() {
            return Ok(ConfigSource::Catalog(arg.trim().to_string()));
        }
        let path = Path::new(arg);
        if !arg.contains('{') && path.is_file() {
            let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read {arg}: {e}"))?;
            return Ok(ConfigSource::File { path: path.to_path_buf(), text });
        }
        Ok(ConfigSource::Inline(arg.to_string()))
    }

    pub fn load(&self) -> Result<Configuration, String> {
        match self {
            ConfigSource::Catalog(name) => catalog_entry(name).ok_or_else(|| format!("no catalog entry `{name}`")),
            ConfigSource::File { text, .. } | ConfigSource::Inline(text) => {
                parse_config(text).map_err(|e| e.to_string())
            }
        }
    }
}

/// `big > factor * small` on a witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Ratio {
    pub big: String,
    pub small: String,
    pub factor: u64,
}

impl std::str::FromStr for Ratio {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parts: Vec<&str> = s.split(':').map(str::trim).collect();
        match parts.as_slice() {
            [big, small, f] if !big.is_empty() && !small.is_empty() => Ok(Ratio {
                big: big.to_string(),
                small: small.to_string(),
                factor: f.parse().map_err(|_| format!("bad factor in ratio `{s}`"))?,
            }),
            _ => Err(format!("expected BIG:SMALL:FACTOR, got `{s}`")),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparateSpec {
    pub f: String,
    pub g: String,
    pub samples: SampleSpec,
    /// `None` selects the shipped family.
    pub family: Option<Vec<String>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub subcommand: SubcommandKind,
    pub config: Option<ConfigSource>,
    pub equation: Option<String>,
    pub question: Option<Question>,
    pub coloring: Option<String>,
    pub bounds: Vec<u64>,
    pub colors: Option<u32>,
    pub mode: Option<Mode>,
    pub h_cap: Option<HCapRule>,
    pub threshold: Option<usize>,
    pub ratios: Vec<Ratio>,
    pub separate: Option<SeparateSpec>,
    pub corpus: Option<PathBuf>,
    pub only: Option<String>,
    pub budget: Option<u64>,
    pub seeds: Vec<u64>,
    pub workers: usize,
    pub format: Format,
    pub output: Option<PathBuf>,
}

impl RunConfig {
    fn blank(subcommand: SubcommandKind, common: &Common) -> RunConfig {
        RunConfig {
            subcommand,
            config: None,
            equation: None,
            question: None,
            coloring: None,
            bounds: Vec::new(),
            colors: None,
            mode: None,
            h_cap: None,
            threshold: None,
            ratios: Vec::new(),
            separate: None,
            corpus: None,
            only: None,
            budget: common.budget,
            seeds: Vec::new(),
            workers: common.workers,
            format: common.format,
            output: common.output.clone(),
        }
    }

    pub fn from_cli(cli: &Cli) -> Result<RunConfig, String> {
        let rc = match &cli.command {
            Command::Decide(a) => RunConfig {
                equation: Some(a.equation.clone()),
                question: Some(a.question.parse()?),
                ..Self::blank(SubcommandKind::Decide, &a.common)
            },
            Command::Witness(a) => RunConfig {
                config: Some(ConfigSource::resolve(&a.config)?),
                coloring: Some(a.coloring.clone()),
                bounds: vec![a.bound],
                ratios: a.ratios.iter().map(|r| r.parse()).collect::<Result<_, _>>()?,
                ..Self::blank(SubcommandKind::Witness, &a.common)
            },
            Command::Force(a) | Command::Avoid(a) => {
                let kind =
                    if matches!(cli.command, Command::Force(_)) { SubcommandKind::Force } else { SubcommandKind::Avoid };
                RunConfig {
                    config: Some(ConfigSource::resolve(&a.config)?),
                    colors: Some(a.colors),
                    bounds: vec![a.bound],
                    ..Self::blank(kind, &a.common)
                }
            }
            Command::RamseyH(a) => RunConfig {
                config: Some(ConfigSource::resolve(&a.config)?),
                coloring: a.coloring.clone(),
                bounds: a.bound.clone(),
                mode: Some(a.mode.parse()?),
                h_cap: Some(a.h_cap.parse()?),
                seeds: a.seed.clone(),
                threshold: a.threshold,
                colors: a.colors,
                ..Self::blank(SubcommandKind::RamseyH, &a.common)
            },
            Command::Separate(a) => RunConfig {
                config: a.config.as_deref().map(ConfigSource::resolve).transpose()?,
                separate: Some(SeparateSpec {
                    f: a.f.clone(),
                    g: a.g.clone(),
                    samples: SampleSpec::new(a.lo, a.hi, a.regime.parse::<Regime>()?),
                    family: (!a.family.is_empty()).then(|| a.family.clone()),
                }),
                ..Self::blank(SubcommandKind::Separate, &a.common)
            },
            Command::Verify(a) => RunConfig {
                corpus: a.corpus.clone(),
                only: a.only.clone(),
                ..Self::blank(SubcommandKind::Verify, &a.common)
            },
        };
        rc.validate()?;
        Ok(rc)
    }

    /// Checks everything that can be checked without searching.
    pub fn validate(&self) -> Result<(), String> {
        if self.workers == 0 {
            return Err("--workers must be at least 1".into());
        }
        if self.bounds.contains(&0) {
            return Err("bounds must be positive".into());
        }
        if self.bounds.windows(2).any(|w| w[0] >= w[1]) {
            return Err("bounds must be strictly increasing".into());
        }
        if self.colors == Some(0) {
            return Err("--colors must be at least 1".into());
        }
        let config = self.config.as_ref().map(ConfigSource::load).transpose()?;
        if let Some(c) = &config {
            for r in &self.ratios {
                for v in [&r.big, &r.small] {
                    if c.var_index(v).is_none() {
                        return Err(format!("ratio names unknown variable `{v}`"));
                    }
                }
            }
            if self.subcommand == SubcommandKind::RamseyH && c.ramsey.is_none() {
                return Err("the configuration declares no ramsey pair".into());
            }
        }
        if let Some(spec) = &self.coloring {
            let n = self.bounds.last().copied().unwrap_or(1);
            for seed in self.seed_list() {
                Coloring::from_spec(&expand_seed(spec, seed), n).map_err(|e| e.to_string())?;
            }
        }
        if let Some(s) = &self.separate {
            parse_expr(&s.f).map_err(|e| e.to_string())?;
            parse_expr(&s.g).map_err(|e| e.to_string())?;
            if s.samples.lo > s.samples.hi {
                return Err("--lo must not exceed --hi".into());
            }
            for d in s.family.iter().flatten() {
                d.parse::<InvariantDescriptor>().map_err(|e| e.to_string())?;
            }
        }
        Ok(())
    }

    /// Seeds to expand `{seed}` with; a single run with seed 0 when none
    /// were given.
    pub fn seed_list(&self) -> Vec<u64> {
        if self.seeds.is_empty() {
            vec![0]
        } else {
            self.seeds.clone()
        }
    }
}

pub fn expand_seed(spec: &str, seed: u64) -> String {
    spec.replace("{seed}", &seed.to_string())
}
