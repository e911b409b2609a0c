//! Fragment conformance and track classification.

use std::collections::BTreeSet;

use crate::model::{infer_sort, ground_value, Benchmark, Clause, Op, Sort, Term, Theory, TrackCategory};
use crate::smtlib::{Diagnostic, Location, Severity};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BenchmarkStats {
    pub num_clauses: usize,
    pub num_predicates: usize,
    pub num_queries: usize,
    pub used_sorts: BTreeSet<Sort>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CheckReport {
    pub conformant: bool,
    pub violations: Vec<Diagnostic>,
    pub track: TrackCategory,
    pub stats: BenchmarkStats,
}

fn violation(message: String, location: Option<Location>) -> Diagnostic {
    Diagnostic {
        severity: Severity::Error,
        message,
        location,
    }
}

fn clause_theories(c: &Clause, b: &Benchmark) -> BTreeSet<Theory> {
    let mut out = BTreeSet::new();
    for (_, s) in &c.vars {
        s.collect_theories(&mut out);
    }
    let lookup = |n: &str| c.vars.iter().find(|(v, _)| v == n).map(|(_, s)| s.clone());
    for t in c.terms() {
        t.visit(&mut |sub| {
            match infer_sort(sub, &lookup) {
                Ok(ty) if !ty.int_literal => ty.sort.collect_theories(&mut out),
                _ => {}
            }
            if matches!(sub, Term::App(Op::Div | Op::Mod, _)) {
                out.insert(Theory::Int);
            }
        });
    }
    let mut atoms: Vec<_> = c.body_atoms.iter().collect();
    atoms.extend(c.head_atom());
    for a in atoms {
        if let Some(d) = b.decl(&a.pred) {
            d.arg_sorts.iter().for_each(|s| s.collect_theories(&mut out));
        }
    }
    out
}

/// Theories whose sorts or operators occur anywhere in the benchmark.
/// Ground numeral arithmetic does not count as Int on its own.
pub fn theory_of(benchmark: &Benchmark) -> BTreeSet<Theory> {
    let mut out = BTreeSet::new();
    for d in &benchmark.decls {
        d.arg_sorts.iter().for_each(|s| s.collect_theories(&mut out));
    }
    for c in &benchmark.clauses {
        out.extend(clause_theories(c, benchmark));
    }
    out
}

/// Why a term is outside linear arithmetic, if it is.
fn nonlinearity(t: &Term) -> Option<String> {
    let mut found = None;
    t.visit(&mut |sub| {
        if found.is_some() {
            return;
        }
        match sub {
            Term::App(Op::Mul, args) => {
                let non_constant = args.iter().filter(|a| ground_value(a).is_none()).count();
                if non_constant > 1 {
                    found = Some("non-linear multiplication".to_string());
                }
            }
            Term::App(Op::RealDiv, args) => {
                if args[1..].iter().any(|a| ground_value(a).is_none()) {
                    found = Some("/ by a non-constant divisor".to_string());
                }
            }
            Term::App(op @ (Op::Div | Op::Mod), args) => {
                if args.get(1).and_then(ground_value).is_none() {
                    found = Some(format!("{} by a non-constant divisor", op.symbol()));
                }
            }
            _ => {}
        }
    });
    found
}

/// Checks a parsed benchmark against the competition fragment and
/// classifies it. Every violation is listed.
pub fn check_fragment(benchmark: &Benchmark) -> CheckReport {
    let loc = |i: usize| benchmark.clause_locations.get(i).copied();
    let mut violations = Vec::new();

    for msg in benchmark.well_formedness() {
        violations.push(violation(msg, None));
    }
    let num_queries = benchmark.num_queries();
    match num_queries {
        0 => violations.push(violation("no query: exactly one clause with head false required".into(), None)),
        1 => {}
        n => {
            let second = benchmark
                .clauses
                .iter()
                .enumerate()
                .filter(|(_, c)| c.is_query())
                .nth(1)
                .map(|(i, _)| i);
            violations.push(violation(
                format!("multiple queries: found {n}, exactly one allowed"),
                second.and_then(loc),
            ));
        }
    }
    for (i, c) in benchmark.clauses.iter().enumerate() {
        let th = clause_theories(c, benchmark);
        if th.contains(&Theory::Int) && th.contains(&Theory::Real) {
            violations.push(violation(format!("clause {i}: mixes Int and Real arithmetic"), loc(i)));
        }
        for t in c.terms() {
            if let Some(why) = nonlinearity(t) {
                violations.push(violation(format!("clause {i}: {why}"), loc(i)));
                break;
            }
        }
    }
    let theories = theory_of(benchmark);
    if theories.contains(&Theory::Int) && theories.contains(&Theory::Real) {
        violations.push(violation("benchmark mixes Int and Real theories".into(), None));
    }
    if theories.contains(&Theory::Real) && theories.contains(&Theory::Array) {
        violations.push(violation("arrays are only supported over integer arithmetic".into(), None));
    }

    let mut used_sorts = BTreeSet::new();
    for d in &benchmark.decls {
        used_sorts.extend(d.arg_sorts.iter().cloned());
    }
    for c in &benchmark.clauses {
        used_sorts.extend(c.vars.iter().map(|(_, s)| s.clone()));
    }
    let stats = BenchmarkStats {
        num_clauses: benchmark.clauses.len(),
        num_predicates: benchmark.decls.len(),
        num_queries,
        used_sorts,
    };
    let conformant = violations.is_empty();
    let track = if conformant {
        classify_track(benchmark)
    } else {
        TrackCategory::Unclassified
    };
    CheckReport {
        conformant,
        violations,
        track,
        stats,
    }
}

fn is_lra_ts_shape(b: &Benchmark) -> bool {
    let [p] = b.decls.as_slice() else { return false };
    if b.clauses.len() != 3 {
        return false;
    }
    let only_p = |atoms: &[crate::model::Atom]| atoms.len() == 1 && atoms[0].pred == p.name;
    let heads_p = |c: &Clause| c.head_atom().is_some_and(|a| a.pred == p.name);
    let facts = b.clauses.iter().filter(|c| c.body_atoms.is_empty() && heads_p(c)).count();
    let steps = b.clauses.iter().filter(|c| only_p(&c.body_atoms) && heads_p(c)).count();
    let queries = b.clauses.iter().filter(|c| c.is_query() && only_p(&c.body_atoms)).count();
    facts == 1 && steps == 1 && queries == 1
}

/// Track of a conformant benchmark. Pure-Boolean benchmarks fall into the
/// LIA tracks by linearity.
pub fn classify_track(benchmark: &Benchmark) -> TrackCategory {
    let theories = theory_of(benchmark);
    let linear = benchmark.clauses.iter().all(Clause::is_linear);
    let real = theories.contains(&Theory::Real);
    let int = theories.contains(&Theory::Int);
    let arrays = theories.contains(&Theory::Array);
    match (real, int, arrays) {
        (true, false, false) if is_lra_ts_shape(benchmark) => TrackCategory::LraTs,
        (true, _, _) => TrackCategory::Unclassified,
        (false, _, true) if linear => TrackCategory::LiaLinArrays,
        (false, _, true) => TrackCategory::Unclassified,
        (false, _, false) if linear => TrackCategory::LiaLin,
        (false, _, false) => TrackCategory::LiaNonlin,
    }
}
