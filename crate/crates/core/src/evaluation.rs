//! Scoring of solver runs: consistency, Score, mean CPU and wall-clock time,
//! Speedup, SotAC, the virtual best solver and ranking.
//!
//! All averages are exact rationals. Rounding happens only when rendering.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Outcome {
    Sat,
    Unsat,
    /// Give-up, timeout, memory-out and crashes.
    Unknown,
}

impl Outcome {
    pub fn is_solved(self) -> bool {
        !matches!(self, Outcome::Unknown)
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Outcome::Sat => "sat",
            Outcome::Unsat => "unsat",
            Outcome::Unknown => "unknown",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for Outcome {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "sat" => Ok(Outcome::Sat),
            "unsat" => Ok(Outcome::Unsat),
            "unknown" => Ok(Outcome::Unknown),
            other => Err(format!("invalid result {other:?}, expected sat, unsat or unknown")),
        }
    }
}

/// Parses non-negative decimal seconds (`12`, `0.25`) exactly.
pub fn parse_seconds(text: &str) -> Result<BigRational, String> {
    let bad = || format!("invalid time {text:?}, expected non-negative decimal seconds");
    let (int, frac) = text.split_once('.').unwrap_or((text, ""));
    if int.is_empty() || !int.bytes().all(|b| b.is_ascii_digit()) || !frac.bytes().all(|b| b.is_ascii_digit()) {
        return Err(bad());
    }
    if text.ends_with('.') {
        return Err(bad());
    }
    let num: BigInt = format!("{int}{frac}").parse().map_err(|_| bad())?;
    Ok(BigRational::new(num, BigInt::from(10).pow(frac.len() as u32)))
}

/// Renders `x` rounded half-up to two decimals.
pub fn round2(x: &BigRational) -> String {
    let hundred = BigRational::from_integer(BigInt::from(100));
    let half = BigRational::new(BigInt::from(1), BigInt::from(2));
    let scaled = (x.abs() * hundred + half).floor().to_integer();
    let sign = if x.is_negative() && !scaled.is_zero() { "-" } else { "" };
    let int = &scaled / 100;
    let frac: BigInt = &scaled % 100;
    format!("{sign}{int}.{frac:0>2}")
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunRecord {
    pub solver: String,
    pub config: String,
    pub benchmark: String,
    pub result: Outcome,
    pub cpu_seconds: BigRational,
    pub wall_seconds: BigRational,
}

impl RunRecord {
    pub fn new(solver: &str, benchmark: &str, result: Outcome, cpu: BigRational, wall: BigRational) -> Self {
        RunRecord {
            solver: solver.to_string(),
            config: String::new(),
            benchmark: benchmark.to_string(),
            result,
            cpu_seconds: cpu,
            wall_seconds: wall,
        }
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum EvalError {
    #[error("duplicate run records for (solver, benchmark): {}", format_pairs(.0))]
    Duplicates(Vec<(String, String)>),
    #[error("inconsistent results on {} benchmark(s): {}", .0.len(), .0.join(", "))]
    Conflict(Vec<String>),
}

fn format_pairs(pairs: &[(String, String)]) -> String {
    pairs
        .iter()
        .map(|(s, b)| format!("({s}, {b})"))
        .collect::<Vec<_>>()
        .join(", ")
}

pub const RUN_HEADER: [&str; 6] = ["solver", "config", "benchmark", "result", "cpu_seconds", "wall_seconds"];

#[derive(Debug, Error, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct RecordError {
    pub line: u64,
    pub message: String,
}

/// Reads a run-record CSV with the header
/// `solver,config,benchmark,result,cpu_seconds,wall_seconds`.
pub fn read_runs<R: std::io::Read>(input: R) -> Result<Vec<RunRecord>, RecordError> {
    let mut reader = csv::ReaderBuilder::new().has_headers(false).from_reader(input);
    let mut out = Vec::new();
    let mut seen_header = false;
    for row in reader.records() {
        let row = row.map_err(|e| RecordError {
            line: e.position().map_or(0, |p| p.line()),
            message: e.to_string(),
        })?;
        let line = row.position().map_or(0, |p| p.line());
        let err = |message: String| RecordError { line, message };
        if !seen_header {
            let got: Vec<&str> = row.iter().map(str::trim).collect();
            if got != RUN_HEADER {
                return Err(err(format!("expected header {}", RUN_HEADER.join(","))));
            }
            seen_header = true;
            continue;
        }
        if row.len() != RUN_HEADER.len() {
            return Err(err(format!("expected 6 fields, found {}", row.len())));
        }
        let f = |i: usize| row[i].trim();
        if f(0).is_empty() || f(2).is_empty() {
            return Err(err("empty solver or benchmark field".into()));
        }
        out.push(RunRecord {
            solver: f(0).to_string(),
            config: f(1).to_string(),
            benchmark: f(2).to_string(),
            result: f(3).parse().map_err(err)?,
            cpu_seconds: parse_seconds(f(4)).map_err(err)?,
            wall_seconds: parse_seconds(f(5)).map_err(err)?,
        });
    }
    if !seen_header {
        return Err(RecordError {
            line: 1,
            message: format!("missing header {}", RUN_HEADER.join(",")),
        });
    }
    Ok(out)
}

/// Per-job resource limits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Budget {
    pub cpu_seconds: BigRational,
    pub wall_seconds: BigRational,
    pub memory_gb: u32,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            cpu_seconds: BigRational::from_integer(1800.into()),
            wall_seconds: BigRational::from_integer(1800.into()),
            memory_gb: 64,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BudgetViolation {
    pub solver: String,
    pub benchmark: String,
    pub what: &'static str,
    pub seconds: BigRational,
}

/// Records whose CPU or wall-clock time exceeds the budget.
pub fn check_budgets(runs: &[RunRecord], budget: &Budget) -> Vec<BudgetViolation> {
    let mut out = Vec::new();
    for r in runs {
        for (what, t, limit) in [
            ("cpu", &r.cpu_seconds, &budget.cpu_seconds),
            ("wall", &r.wall_seconds, &budget.wall_seconds),
        ] {
            if t > limit {
                out.push(BudgetViolation {
                    solver: r.solver.clone(),
                    benchmark: r.benchmark.clone(),
                    what,
                    seconds: t.clone(),
                });
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Conflict {
    pub benchmark: String,
    pub sat_claimers: Vec<String>,
    pub unsat_claimers: Vec<String>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ConsistencyReport {
    pub conflicts: Vec<Conflict>,
    pub excluded: BTreeSet<String>,
}

/// Finds benchmarks claimed sat by one solver and unsat by another.
pub fn validate_consistency(runs: &[RunRecord]) -> Result<ConsistencyReport, EvalError> {
    let mut seen = BTreeSet::new();
    let mut dups = BTreeSet::new();
    let mut claims: BTreeMap<&str, (Vec<String>, Vec<String>)> = BTreeMap::new();
    for r in runs {
        if !seen.insert((r.solver.as_str(), r.benchmark.as_str())) {
            dups.insert((r.solver.clone(), r.benchmark.clone()));
        }
        let entry = claims.entry(&r.benchmark).or_default();
        match r.result {
            Outcome::Sat => entry.0.push(r.solver.clone()),
            Outcome::Unsat => entry.1.push(r.solver.clone()),
            Outcome::Unknown => {}
        }
    }
    if !dups.is_empty() {
        return Err(EvalError::Duplicates(dups.into_iter().collect()));
    }
    let mut report = ConsistencyReport::default();
    for (b, (mut sat, mut unsat)) in claims {
        if !sat.is_empty() && !unsat.is_empty() {
            sat.sort();
            unsat.sort();
            report.excluded.insert(b.to_string());
            report.conflicts.push(Conflict {
                benchmark: b.to_string(),
                sat_claimers: sat,
                unsat_claimers: unsat,
            });
        }
    }
    Ok(report)
}

/// What to do with conflicting benchmarks.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum ConflictPolicy {
    /// Drop the benchmark and every answer on it.
    #[default]
    Exclude,
    Abort,
}

impl FromStr for ConflictPolicy {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exclude" => Ok(ConflictPolicy::Exclude),
            "abort" => Ok(ConflictPolicy::Abort),
            other => Err(format!("invalid conflict policy {other:?}, expected exclude or abort")),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScoreCard {
    pub solver: String,
    pub score: usize,
    pub num_sat: usize,
    pub num_unsat: usize,
    /// Absent when the solver solved nothing.
    pub mean_cpu: Option<BigRational>,
    pub mean_wall: Option<BigRational>,
    pub speedup: Option<BigRational>,
    pub sotac: Option<BigRational>,
    pub rank: Option<u32>,
    /// Shares its rank with another card of equal score and CPU time.
    pub tied: bool,
    pub hors_concours: bool,
    /// Competition place; never set for hors-concours entries.
    pub place: Option<u32>,
}

impl ScoreCard {
    pub fn new(solver: impl Into<String>) -> Self {
        ScoreCard {
            solver: solver.into(),
            score: 0,
            num_sat: 0,
            num_unsat: 0,
            mean_cpu: None,
            mean_wall: None,
            speedup: None,
            sotac: None,
            rank: None,
            tied: false,
            hors_concours: false,
            place: None,
        }
    }
}

fn mean<'a>(values: impl Iterator<Item = &'a BigRational>) -> Option<BigRational> {
    let mut n = 0i64;
    let mut sum = BigRational::zero();
    for v in values {
        sum += v;
        n += 1;
    }
    (n > 0).then(|| sum / BigRational::from_integer(n.into()))
}

/// Score and mean times of one solver. Unknown results carry no time weight.
pub fn score_solver<'a>(solver: &str, runs: impl IntoIterator<Item = &'a RunRecord>, excluded: &BTreeSet<String>) -> ScoreCard {
    let solved: Vec<&RunRecord> = runs
        .into_iter()
        .filter(|r| r.result.is_solved() && !excluded.contains(&r.benchmark))
        .collect();
    let mut card = ScoreCard::new(solver);
    card.num_sat = solved.iter().filter(|r| r.result == Outcome::Sat).count();
    card.num_unsat = solved.iter().filter(|r| r.result == Outcome::Unsat).count();
    card.score = card.num_sat + card.num_unsat;
    card.mean_cpu = mean(solved.iter().map(|r| &r.cpu_seconds));
    card.mean_wall = mean(solved.iter().map(|r| &r.wall_seconds));
    card.speedup = match (&card.mean_cpu, &card.mean_wall) {
        (Some(c), Some(w)) if !w.is_zero() => Some(c / w),
        _ => None,
    };
    card
}

fn solve_counts<'a>(runs: &'a [RunRecord], excluded: &BTreeSet<String>) -> BTreeMap<&'a str, usize> {
    let mut k: BTreeMap<&str, usize> = BTreeMap::new();
    for r in runs.iter().filter(|r| r.result.is_solved() && !excluded.contains(&r.benchmark)) {
        *k.entry(&r.benchmark).or_default() += 1;
    }
    k
}

/// Per-solver mean of `1/k` over its solved benchmarks, where `k` solvers
/// solved the benchmark. Solvers without solved benchmarks are absent.
pub fn sotac(runs: &[RunRecord], excluded: &BTreeSet<String>) -> BTreeMap<String, BigRational> {
    let k = solve_counts(runs, excluded);
    let mut acc: BTreeMap<&str, (BigRational, i64)> = BTreeMap::new();
    for r in runs.iter().filter(|r| r.result.is_solved() && !excluded.contains(&r.benchmark)) {
        let e = acc.entry(&r.solver).or_insert_with(|| (BigRational::zero(), 0));
        e.0 += BigRational::new(1.into(), BigInt::from(k[r.benchmark.as_str()]));
        e.1 += 1;
    }
    acc.into_iter()
        .map(|(s, (sum, n))| (s.to_string(), sum / BigRational::from_integer(n.into())))
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub struct VirtualBest {
    pub score: usize,
    pub num_sat: usize,
    pub num_unsat: usize,
}

/// Benchmarks solved by at least one solver, split by claimed status.
/// Consistency must already be enforced.
pub fn virtual_best(runs: &[RunRecord], excluded: &BTreeSet<String>) -> VirtualBest {
    let mut status: BTreeMap<&str, Outcome> = BTreeMap::new();
    for r in runs.iter().filter(|r| r.result.is_solved() && !excluded.contains(&r.benchmark)) {
        status.entry(&r.benchmark).or_insert(r.result);
    }
    let num_sat = status.values().filter(|o| **o == Outcome::Sat).count();
    VirtualBest {
        score: status.len(),
        num_sat,
        num_unsat: status.len() - num_sat,
    }
}

// Higher score first, then lower mean CPU; absent CPU sorts last.
fn performance_cmp(a: &ScoreCard, b: &ScoreCard) -> std::cmp::Ordering {
    b.score.cmp(&a.score).then_with(|| match (&a.mean_cpu, &b.mean_cpu) {
        (Some(x), Some(y)) => x.cmp(y),
        (Some(_), None) => std::cmp::Ordering::Less,
        (None, Some(_)) => std::cmp::Ordering::Greater,
        (None, None) => std::cmp::Ordering::Equal,
    })
}

/// Orders cards by descending score, breaking ties by ascending mean CPU
/// time. Cards still tied share a rank (1, 2, 2, 4) and are flagged.
pub fn rank(mut cards: Vec<ScoreCard>) -> Vec<ScoreCard> {
    cards.sort_by(|a, b| performance_cmp(a, b).then_with(|| a.solver.cmp(&b.solver)));
    let snapshot = cards.clone();
    for card in &mut cards {
        let better = snapshot.iter().filter(|o| performance_cmp(o, card).is_lt()).count();
        let equal = snapshot.iter().filter(|o| performance_cmp(o, card).is_eq()).count();
        card.rank = Some(better as u32 + 1);
        card.tied = equal > 1;
    }
    cards
}

/// Flags hors-concours solvers and assigns competition places to the rest,
/// in rank order.
pub fn mark_hors_concours(mut cards: Vec<ScoreCard>, flagged: &BTreeSet<String>) -> Vec<ScoreCard> {
    for c in &mut cards {
        c.hors_concours = flagged.contains(&c.solver);
    }
    let competing: Vec<ScoreCard> = cards.iter().filter(|c| !c.hors_concours).cloned().collect();
    for c in &mut cards {
        c.place = if c.hors_concours {
            None
        } else {
            let better = competing.iter().filter(|o| performance_cmp(o, c).is_lt()).count();
            Some(better as u32 + 1)
        };
    }
    cards
}

#[derive(Clone, Debug, Default)]
pub struct ScoringConfig {
    pub policy: ConflictPolicy,
    pub hors_concours: BTreeSet<String>,
    pub budget: Budget,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Scoreboard {
    pub cards: Vec<ScoreCard>,
    pub consistency: ConsistencyReport,
    pub virtual_best: VirtualBest,
    pub budget_violations: Vec<BudgetViolation>,
}

/// Full scoring of one track. Solvers are the distinct `solver` fields of
/// the records; a missing record counts as unknown.
pub fn score_track(runs: &[RunRecord], config: &ScoringConfig) -> Result<Scoreboard, EvalError> {
    let consistency = validate_consistency(runs)?;
    if config.policy == ConflictPolicy::Abort && !consistency.conflicts.is_empty() {
        return Err(EvalError::Conflict(consistency.excluded.iter().cloned().collect()));
    }
    let excluded = &consistency.excluded;
    let mut by_solver: BTreeMap<&str, Vec<&RunRecord>> = BTreeMap::new();
    for r in runs {
        by_solver.entry(&r.solver).or_default().push(r);
    }
    let sotacs = sotac(runs, excluded);
    let cards: Vec<ScoreCard> = by_solver
        .iter()
        .map(|(s, rs)| {
            let mut c = score_solver(s, rs.iter().copied(), excluded);
            c.sotac = sotacs.get(*s).cloned();
            c
        })
        .collect();
    let cards = mark_hors_concours(rank(cards), &config.hors_concours);
    Ok(Scoreboard {
        cards,
        virtual_best: virtual_best(runs, excluded),
        budget_violations: check_budgets(runs, &config.budget),
        consistency,
    })
}
