//! Reproduction harness over a corpus of published verdicts, plus the
//! independent soundness checks applied to search output.

mod corpus;
mod run;
mod sandwich;
mod soundness;

pub use corpus::{Corpus, CorpusEntry, CurveSpec, Experiment, HCapRule, CORPUS_SCHEMA_VERSION};
pub use run::{
    render_table, run_corpus, CorpusReport, CurvePoint, EntryReport, Evidence, Flag, RunOptions, VerifyError,
};
pub use sandwich::{sandwich_bound_check, scaled_root, SandwichReport};
pub use soundness::{check_avoider, check_ramsey_report, check_witness, Checked, Unsound};
