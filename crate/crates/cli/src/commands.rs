use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use chc_core::checker::check_fragment;
use chc_core::evaluation::{parse_seconds, read_runs, score_track, ConflictPolicy, EvalError, RunRecord, Scoreboard, ScoringConfig};
use chc_core::report::{cactus, cactus_csv, render_cactus_svg, render_table, scorecards_csv, AxisConfig, TimeKind};
use chc_core::selection::{rate, select_all, ProbeOutcome, Pools, Rating, SelectionError, SelectionPolicy};
use chc_core::smtlib::{parse_benchmark_bytes, print_canonical, Diagnostic};
use chc_core::transform::{dedup, merge_queries, split_queries};
use chc_core::{Benchmark, TrackCategory};
use rayon::prelude::*;

use crate::config::Config;
use crate::formats::{read_probes, read_quotas, read_ratings, LineError};
use crate::{Cli, Command, Failure, Mode, PolicyArg, ScoringArgs, TimeArg};

pub fn run(cli: Cli) -> Result<(), Failure> {
    let config = match &cli.config {
        Some(p) => Config::load(p)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Check { paths } => check(&paths),
        Command::Normalize { mode, out_dir, paths } => {
            let dir = out_dir.or(config.out_dir.clone()).ok_or_else(|| usage("normalize needs --out-dir"))?;
            normalize(mode, &dir, &paths)
        }
        Command::Dedup { out, paths } => dedup_files(&paths, out.as_deref()),
        Command::Rate { probes, out } => rate_file(&probes, out.as_deref()),
        Command::Select {
            ratings,
            quotas,
            seed,
            whole_track,
            out,
        } => {
            let quotas = quotas.or(config.quotas.clone());
            let seed = seed.or(config.seed).unwrap_or(0);
            select(&ratings, quotas.as_deref(), seed, whole_track, out.as_deref())
        }
        Command::Score { scoring, out_dir } => {
            let dir = out_dir.or(config.out_dir.clone()).ok_or_else(|| usage("score needs --out-dir"))?;
            score(&scoring, &config, &dir)
        }
        Command::Report {
            scoring,
            out_dir,
            time,
            log,
            epsilon,
            title,
        } => {
            let dir = out_dir.or(config.out_dir.clone()).ok_or_else(|| usage("report needs --out-dir"))?;
            let axis = AxisConfig {
                log_time: log,
                epsilon: epsilon.unwrap_or(0.01),
                title,
                ..Default::default()
            };
            let kind = if time == TimeArg::Wall { TimeKind::Wall } else { TimeKind::Cpu };
            report(&scoring, &config, &dir, kind, &axis)
        }
    }
}

fn usage(m: impl Into<String>) -> Failure {
    Failure::Usage(m.into())
}

fn read(path: &Path) -> Result<Vec<u8>, Failure> {
    fs::read(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn read_text(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("cannot read {}: {e}", path.display())))
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents).map_err(|e| usage(format!("cannot write {}: {e}", path.display())))
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), Failure> {
    match out {
        Some(p) => write(p, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn make_dir(dir: &Path) -> Result<(), Failure> {
    fs::create_dir_all(dir).map_err(|e| usage(format!("cannot create {}: {e}", dir.display())))
}

fn line_error(path: &Path, e: LineError) -> Failure {
    usage(format!("{}:{}: {}", path.display(), e.line, e.message))
}

fn report_diagnostics(path: &Path, diags: &[Diagnostic]) {
    for d in diags {
        eprintln!("{}:{d}", path.display());
    }
}

enum Loaded {
    Ok(Benchmark),
    Unreadable(String),
    Invalid(Vec<Diagnostic>),
}

fn load_all(paths: &[PathBuf]) -> Vec<Loaded> {
    paths
        .par_iter()
        .map(|p| match fs::read(p) {
            Err(e) => Loaded::Unreadable(e.to_string()),
            Ok(bytes) => match parse_benchmark_bytes(&bytes, &p.display().to_string()) {
                Ok(b) => Loaded::Ok(b),
                Err(d) => Loaded::Invalid(d),
            },
        })
        .collect()
}

#[derive(Default)]
struct Tally {
    io: bool,
    domain: bool,
}

impl Tally {
    fn finish(self, what: &str) -> Result<(), Failure> {
        if self.io {
            Err(usage(format!("{what}: some inputs could not be read or written")))
        } else if self.domain {
            Err(Failure::Domain(String::new()))
        } else {
            Ok(())
        }
    }
}

fn check(paths: &[PathBuf]) -> Result<(), Failure> {
    let mut tally = Tally::default();
    for (p, loaded) in paths.iter().zip(load_all(paths)) {
        let (ok, track) = match loaded {
            Loaded::Unreadable(e) => {
                eprintln!("{}: cannot read: {e}", p.display());
                tally.io = true;
                (false, TrackCategory::Unclassified)
            }
            Loaded::Invalid(d) => {
                report_diagnostics(p, &d);
                (false, TrackCategory::Unclassified)
            }
            Loaded::Ok(b) => {
                let r = check_fragment(&b);
                report_diagnostics(p, &r.violations);
                (r.conformant, r.track)
            }
        };
        tally.domain |= !ok;
        println!("{} {} {track}", p.display(), if ok { "ok" } else { "fail" });
    }
    tally.finish("check")
}

fn stem(p: &Path) -> String {
    p.file_stem().map_or_else(|| "benchmark".into(), |s| s.to_string_lossy().into_owned())
}

fn normalize(mode: Mode, dir: &Path, paths: &[PathBuf]) -> Result<(), Failure> {
    let mut stems = BTreeSet::new();
    for p in paths {
        if !stems.insert(stem(p)) {
            return Err(usage(format!("two inputs share the file name {}", stem(p))));
        }
    }
    make_dir(dir)?;
    let mut tally = Tally::default();
    for (p, loaded) in paths.iter().zip(load_all(paths)) {
        let b = match loaded {
            Loaded::Ok(b) => b,
            Loaded::Unreadable(e) => {
                eprintln!("{}: cannot read: {e}", p.display());
                tally.io = true;
                continue;
            }
            Loaded::Invalid(d) => {
                report_diagnostics(p, &d);
                tally.domain = true;
                continue;
            }
        };
        let outputs = match mode {
            Mode::Merge => merge_queries(&b).map(|m| vec![(format!("{}.smt2", stem(p)), m)]),
            Mode::Split => split_queries(&b).map(|parts| {
                parts
                    .into_iter()
                    .enumerate()
                    .map(|(i, part)| (format!("{}_q{}.smt2", stem(p), i + 1), part))
                    .collect()
            }),
        };
        match outputs {
            Err(e) => {
                eprintln!("{}: {e}", p.display());
                tally.domain = true;
            }
            Ok(files) => {
                for (name, bench) in files {
                    let target = dir.join(name);
                    match fs::write(&target, print_canonical(&bench)) {
                        Ok(()) => println!("{}", target.display()),
                        Err(e) => {
                            eprintln!("{}: cannot write: {e}", target.display());
                            tally.io = true;
                        }
                    }
                }
            }
        }
    }
    tally.finish("normalize")
}

fn dedup_files(paths: &[PathBuf], out: Option<&Path>) -> Result<(), Failure> {
    let mut tally = Tally::default();
    let mut parsed = Vec::new();
    for (p, loaded) in paths.iter().zip(load_all(paths)) {
        match loaded {
            Loaded::Ok(b) => parsed.push(b),
            Loaded::Unreadable(e) => {
                eprintln!("{}: cannot read: {e}", p.display());
                tally.io = true;
            }
            Loaded::Invalid(d) => {
                report_diagnostics(p, &d);
                tally.domain = true;
            }
        }
    }
    let result = dedup(parsed);
    let mut text = format!("# kept {} dropped {}\n", result.unique.len(), result.dropped.len());
    for (dup, kept) in &result.dropped {
        let _ = writeln!(text, "# duplicate {dup} of {kept}");
    }
    for b in &result.unique {
        let digest = b.checksum.expect("dedup sets checksums");
        let _ = writeln!(text, "{digest} {}", b.origin);
    }
    emit(out, &text)?;
    tally.finish("dedup")
}

fn rate_file(path: &Path, out: Option<&Path>) -> Result<(), Failure> {
    let probes = read_probes(&read_text(path)?).map_err(|e| line_error(path, e))?;
    let mut by_bench: BTreeMap<&str, Vec<&crate::formats::Probe>> = BTreeMap::new();
    for p in &probes {
        let entry = by_bench.entry(&p.benchmark).or_default();
        let err = |message: String| line_error(path, LineError { line: p.line, message });
        if let Some(first) = entry.first() {
            if first.repository != p.repository {
                return Err(err(format!("benchmark {} listed under two repositories", p.benchmark)));
            }
        }
        if entry.iter().any(|q| q.solver == p.solver) {
            return Err(err(format!("second probe of {} on {}", p.solver, p.benchmark)));
        }
        if entry.len() == 2 {
            return Err(err(format!("more than two probe solvers on {}", p.benchmark)));
        }
        entry.push(p);
    }
    let mut rows: Vec<(String, String, Rating)> = Vec::new();
    for (bench, ps) in by_bench {
        let [p1, p2] = ps.as_slice() else {
            return Err(line_error(
                path,
                LineError {
                    line: ps[0].line,
                    message: format!("benchmark {bench} needs results from two probe solvers"),
                },
            ));
        };
        let outcome = |p: &crate::formats::Probe| ProbeOutcome {
            benchmark: p.benchmark.clone(),
            solver: p.solver.clone(),
            solved: p.solved,
        };
        let r = rate(&outcome(p1), &outcome(p2)).map_err(|e| usage(e.to_string()))?;
        rows.push((p1.repository.clone(), bench.to_string(), r));
    }
    rows.sort();
    let mut text = String::new();
    for (repo, bench, r) in rows {
        let _ = writeln!(text, "{bench} {repo} {r}");
    }
    emit(out, &text)
}

fn select(ratings: &Path, quotas: Option<&Path>, seed: u64, whole_track: bool, out: Option<&Path>) -> Result<(), Failure> {
    let rows = read_ratings(&read_text(ratings)?).map_err(|e| line_error(ratings, e))?;
    let mut seen = BTreeSet::new();
    let mut pools: BTreeMap<String, Pools> = BTreeMap::new();
    for (bench, repo, r) in &rows {
        if !seen.insert(bench.as_str()) {
            return Err(usage(format!("{}: benchmark {bench} rated twice", ratings.display())));
        }
        pools.entry(repo.clone()).or_default().get_mut(*r).push(bench.clone());
    }
    let (chosen, counts) = if whole_track {
        let counts: BTreeMap<String, (usize, usize, usize)> = pools
            .iter()
            .map(|(repo, p)| (repo.clone(), (p.a.len(), p.b.len(), p.c.len())))
            .collect();
        let mut chosen: BTreeMap<String, Vec<String>> = BTreeMap::new();
        for (repo, p) in &pools {
            let mut all: Vec<String> = Rating::ALL.iter().flat_map(|r| p.get(*r).iter().cloned()).collect();
            all.sort();
            chosen.insert(repo.clone(), all);
        }
        (chosen, counts)
    } else {
        let qpath = quotas.ok_or_else(|| usage("select needs --quotas (or quotas in the config file)"))?;
        let quotas = read_quotas(&read_text(qpath)?).map_err(|e| line_error(qpath, e))?;
        let policy = SelectionPolicy { quotas, seed };
        let result = select_all(&pools, &policy).map_err(|e| match e {
            SelectionError::MissingQuota(_) | SelectionError::ZeroQuota(_) => usage(e.to_string()),
            other => Failure::Domain(other.to_string()),
        })?;
        (result.chosen, result.counts)
    };
    let mut text = String::new();
    let mut total = 0;
    for (repo, (a, b, c)) in &counts {
        let _ = writeln!(text, "# {repo} {a} {b} {c} {}", a + b + c);
        total += a + b + c;
    }
    let _ = writeln!(text, "# total {total}");
    for (repo, benches) in &chosen {
        for b in benches {
            let _ = writeln!(text, "{repo} {b}");
        }
    }
    emit(out, &text)
}

fn scoring_config(args: &ScoringArgs, config: &Config) -> Result<ScoringConfig, Failure> {
    let secs = |s: &Option<String>, flag: &str| {
        s.as_deref()
            .map(|t| parse_seconds(t).map_err(|e| usage(format!("--{flag}: {e}"))))
            .transpose()
    };
    let budget = config.budget(secs(&args.cpu_budget, "cpu-budget")?, secs(&args.wall_budget, "wall-budget")?, args.memory_gb);
    let policy = match args.policy {
        Some(PolicyArg::Exclude) => ConflictPolicy::Exclude,
        Some(PolicyArg::Abort) => ConflictPolicy::Abort,
        None => config.policy.unwrap_or_default(),
    };
    let hc = if args.hors_concours.is_empty() { &config.hors_concours } else { &args.hors_concours };
    Ok(ScoringConfig {
        policy,
        hors_concours: hc.iter().cloned().collect(),
        budget,
    })
}

fn load_runs(path: &Path) -> Result<Vec<RunRecord>, Failure> {
    let bytes = read(path)?;
    read_runs(bytes.as_slice()).map_err(|e| usage(format!("{}:{}: {}", path.display(), e.line, e.message)))
}

fn consistency_text(board: &Scoreboard) -> String {
    let mut text = format!("excluded {}\n", board.consistency.excluded.len());
    for c in &board.consistency.conflicts {
        let _ = writeln!(
            text,
            "conflict {} sat={} unsat={}",
            c.benchmark,
            c.sat_claimers.join(","),
            c.unsat_claimers.join(",")
        );
    }
    for v in &board.budget_violations {
        let _ = writeln!(text, "budget {} {} {} {}", v.solver, v.benchmark, v.what, chc_core::evaluation::round2(&v.seconds));
    }
    text
}

/// Scores `runs`. Under the abort policy a conflict is reported and turned
/// into a domain failure.
fn scoreboard(runs: &[RunRecord], cfg: &ScoringConfig) -> Result<Scoreboard, Failure> {
    match score_track(runs, cfg) {
        Ok(b) => Ok(b),
        Err(e @ EvalError::Conflict(_)) => Err(Failure::Domain(e.to_string())),
        Err(e) => Err(usage(e.to_string())),
    }
}

fn score(args: &ScoringArgs, config: &Config, dir: &Path) -> Result<(), Failure> {
    let cfg = scoring_config(args, config)?;
    let runs = load_runs(&args.runs)?;
    make_dir(dir)?;
    let board = match scoreboard(&runs, &cfg) {
        Ok(b) => b,
        Err(f) => {
            if let Failure::Domain(_) = f {
                // Still leave the conflict list behind for inspection.
                let relaxed = ScoringConfig {
                    policy: ConflictPolicy::Exclude,
                    ..cfg.clone()
                };
                if let Ok(b) = score_track(&runs, &relaxed) {
                    write(&dir.join("consistency.txt"), &consistency_text(&b))?;
                }
            }
            return Err(f);
        }
    };
    write(&dir.join("scorecards.csv"), &scorecards_csv(&board.cards))?;
    write(&dir.join("consistency.txt"), &consistency_text(&board))?;
    println!(
        "scored {} solvers; {} benchmark(s) excluded; {} budget violation(s)",
        board.cards.len(),
        board.consistency.excluded.len(),
        board.budget_violations.len()
    );
    Ok(())
}

fn report(args: &ScoringArgs, config: &Config, dir: &Path, kind: TimeKind, axis: &AxisConfig) -> Result<(), Failure> {
    let cfg = scoring_config(args, config)?;
    let runs = load_runs(&args.runs)?;
    let board = scoreboard(&runs, &cfg)?;
    make_dir(dir)?;
    let any = (!board.cards.is_empty()).then_some(&board.virtual_best);
    write(&dir.join("table.md"), &render_table(&board.cards, any))?;
    let excluded = &board.consistency.excluded;
    let series: Vec<_> = board
        .cards
        .iter()
        .map(|c| {
            let mine = runs.iter().filter(|r| r.solver == c.solver && !excluded.contains(&r.benchmark));
            cactus(&c.solver, mine, kind)
        })
        .collect();
    write(&dir.join("cactus.csv"), &cactus_csv(&series))?;
    let svg = render_cactus_svg(&series, axis);
    for s in &svg.skipped {
        eprintln!("warning: {s} solved nothing; left out of the plot");
    }
    write(&dir.join("cactus.svg"), &svg.text)?;
    Ok(())
}
