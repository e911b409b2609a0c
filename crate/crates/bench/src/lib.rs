//! Synthetic inputs for the pipeline benchmarks.

use std::collections::BTreeMap;

use chc_core::evaluation::{Outcome, RunRecord};
use chc_core::selection::Pools;
use num_rational::BigRational;

/// A linear system over `width` counters with `steps` transition clauses and
/// one query per counter.
pub fn chain_system(width: usize, steps: usize) -> String {
    let vars: Vec<String> = (0..width).map(|i| format!("x{i}")).collect();
    let next: Vec<String> = (0..width).map(|i| format!("y{i}")).collect();
    let bind = |names: &[String]| names.iter().map(|n| format!("({n} Int)")).collect::<Vec<_>>().join(" ");
    let sorts = vec!["Int"; width].join(" ");
    let mut out = format!("(set-logic HORN)\n(declare-fun inv ({sorts}) Bool)\n");
    let init: Vec<String> = vars.iter().map(|v| format!("(= {v} 0)")).collect();
    out.push_str(&format!(
        "(assert (forall ({}) (=> (and {}) (inv {}))))\n",
        bind(&vars),
        init.join(" "),
        vars.join(" ")
    ));
    for s in 0..steps {
        let mut all = vars.clone();
        all.extend(next.iter().cloned());
        let upd: Vec<String> = (0..width)
            .map(|i| format!("(= {} (+ {} {}))", next[i], vars[i], (s + i) % 7 + 1))
            .collect();
        out.push_str(&format!(
            "(assert (forall ({}) (let ((g (< x0 {}))) (=> (and (inv {}) g {}) (inv {})))))\n",
            bind(&all),
            100 + s,
            vars.join(" "),
            upd.join(" "),
            next.join(" ")
        ));
    }
    for (i, v) in vars.iter().enumerate() {
        out.push_str(&format!(
            "(assert (forall ({}) (=> (and (inv {}) (< {v} (- {i}))) false)))\n",
            bind(&vars),
            vars.join(" ")
        ));
    }
    out.push_str("(check-sat)\n");
    out
}

/// Rating pools of the given sizes for each repository.
pub fn pools(table: &[(&str, usize, usize, usize)]) -> BTreeMap<String, Pools> {
    table
        .iter()
        .map(|(repo, a, b, c)| {
            let mk = |p: &str, n: usize| (0..n).map(|i| format!("{repo}/{p}{i}")).collect();
            (
                repo.to_string(),
                Pools {
                    a: mk("a", *a),
                    b: mk("b", *b),
                    c: mk("c", *c),
                },
            )
        })
        .collect()
}

/// `solvers` x `benchmarks` records; solver `s` solves benchmark `b` when
/// `(b * 7 + s * 13) % 10 < 6`.
pub fn runs(solvers: usize, benchmarks: usize) -> Vec<RunRecord> {
    let mut out = Vec::with_capacity(solvers * benchmarks);
    for s in 0..solvers {
        for b in 0..benchmarks {
            let solved = (b * 7 + s * 13) % 10 < 6;
            let result = match (solved, b % 2) {
                (false, _) => Outcome::Unknown,
                (true, 0) => Outcome::Sat,
                (true, _) => Outcome::Unsat,
            };
            let t = BigRational::new(((b * 31 + s) % 1800 + 1).into(), 100.into());
            out.push(RunRecord::new(&format!("solver{s}"), &format!("b{b}"), result, t.clone(), t));
        }
    }
    out
}
