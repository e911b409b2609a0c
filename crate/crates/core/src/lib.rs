//! Curation and scoring pipeline for constrained Horn clause (CHC) solver
//! competitions.
//!
//! The stages are independent: [`smtlib`] parses and prints benchmarks,
//! [`checker`] classifies them into tracks, [`transform`] merges or splits
//! queries and deduplicates, [`selection`] rates and samples, [`evaluation`]
//! scores solver runs and [`report`] renders the results.

pub mod checker;
pub mod evaluation;
pub mod model;
pub mod report;
pub mod selection;
pub mod smtlib;
pub mod transform;

pub use checker::{check_fragment, classify_track, BenchmarkStats, CheckReport};
pub use evaluation::{
    ConflictPolicy, ConsistencyReport, EvalError, Outcome, RunRecord, ScoreCard, Scoreboard, ScoringConfig, VirtualBest,
};
pub use model::{Atom, Benchmark, Clause, Head, Op, PredicateDecl, Sort, Term, TrackCategory};
pub use report::{AxisConfig, CactusSeries, TimeKind};
pub use selection::{Pools, Rating, SelectionPolicy, SelectionResult};
pub use smtlib::{parse_benchmark, print_canonical, Diagnostic, Location, Severity};
pub use transform::{checksum, merge_queries, split_queries, Digest};
