//! Corpus file format: configurations with the published verdict and the
//! experiment that gathers finite evidence for it.

use serde::{Deserialize, Serialize};

use crate::decide::{Question, Status};
use crate::search::{Mode, SampleSpec};

pub const CORPUS_SCHEMA_VERSION: u32 = 1;

const DEFAULT_CORPUS: &str = include_str!("../../corpus/default.json");

/// Vertex cap for good-pair graphs; `"auto"`, `"full"` or a number.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(from = "HCapWire", into = "HCapWire")]
pub enum HCapRule {
    /// Computed from the configuration.
    #[default]
    Auto,
    /// Every value up to the bound.
    Full,
    Fixed(u64),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(untagged)]
enum HCapWire {
    Fixed(u64),
    Named(HCapName),
}

#[derive(Clone, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
enum HCapName {
    Auto,
    Full,
}

impl From<HCapWire> for HCapRule {
    fn from(w: HCapWire) -> Self {
        match w {
            HCapWire::Fixed(h) => HCapRule::Fixed(h),
            HCapWire::Named(HCapName::Auto) => HCapRule::Auto,
            HCapWire::Named(HCapName::Full) => HCapRule::Full,
        }
    }
}

impl From<HCapRule> for HCapWire {
    fn from(r: HCapRule) -> Self {
        match r {
            HCapRule::Fixed(h) => HCapWire::Fixed(h),
            HCapRule::Auto => HCapWire::Named(HCapName::Auto),
            HCapRule::Full => HCapWire::Named(HCapName::Full),
        }
    }
}

impl std::str::FromStr for HCapRule {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s.trim() {
            "auto" => Ok(HCapRule::Auto),
            "full" => Ok(HCapRule::Full),
            t => t.parse().map(HCapRule::Fixed).map_err(|_| format!("expected auto, full or a number, got `{s}`")),
        }
    }
}

impl HCapRule {
    pub fn resolve(self, n: u64) -> Option<u64> {
        match self {
            HCapRule::Fixed(h) => Some(h.min(n)),
            HCapRule::Full => Some(n),
            HCapRule::Auto => None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CurveSpec {
    pub ns: Vec<u64>,
    pub mode: Mode,
    #[serde(default)]
    pub h_cap: HCapRule,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Experiment {
    Classify {
        equation: String,
        question: Question,
    },
    ForcingNumber {
        colors: u32,
        n_max: u64,
    },
    /// `coloring` is a coloring spec; `{seed}` in it is replaced by each
    /// entry of `seeds`.
    RamseySetCurve {
        coloring: String,
        #[serde(default)]
        seeds: Vec<u64>,
        #[serde(flatten)]
        curve: CurveSpec,
    },
    /// `family` holds descriptor strings; the default family when absent.
    /// With `curve`, the best descriptor's coloring is also measured.
    SeparatorHunt {
        f: String,
        g: String,
        #[serde(default)]
        family: Option<Vec<String>>,
        samples: SampleSpec,
        #[serde(default)]
        curve: Option<CurveSpec>,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CorpusEntry {
    pub name: String,
    /// Catalog name or configuration source text.
    pub config: String,
    pub paper_verdict: Status,
    /// Registry slug.
    pub citation: String,
    /// The paper's stated reason, verbatim from its table where there is one.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub experiment: Experiment,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corpus {
    pub schema_version: u32,
    /// A negative verdict counts as consistent when the curve does not grow
    /// over at least this factor in N.
    #[serde(default = "default_flat_ratio")]
    pub flat_ratio: u64,
    pub entries: Vec<CorpusEntry>,
}

fn default_flat_ratio() -> u64 {
    4
}

impl Corpus {
    pub fn from_json(src: &str) -> Result<Corpus, serde_json::Error> {
        serde_json::from_str(src)
    }

    /// The corpus shipped with the crate.
    pub fn builtin() -> Corpus {
        Corpus::from_json(DEFAULT_CORPUS).expect("shipped corpus parses")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }
}
