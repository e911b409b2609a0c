//! Query normalization, canonical checksums and duplicate elimination.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use sha2::{Digest as _, Sha256};
use thiserror::Error;

use crate::model::{Atom, Benchmark, Clause, Head, PredicateDecl, Term};
use crate::smtlib::print_canonical;

/// Base name of the auxiliary predicate introduced by [`merge_queries`].
pub const MERGED_QUERY_PRED: &str = "CHC_COMP_MERGED_QUERY";

#[derive(Debug, Error, PartialEq, Eq)]
pub enum TransformError {
    #[error("nothing to merge: benchmark has no query")]
    NothingToMerge,
    #[error("nothing to split: benchmark has no query")]
    NothingToSplit,
}

/// SHA-256 of a benchmark's canonical text.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Digest([u8; 32]);

impl Digest {
    pub const ALGORITHM: &'static str = "sha256";

    pub fn of_bytes(bytes: &[u8]) -> Self {
        Digest(Sha256::digest(bytes).into())
    }

    pub fn bytes(&self) -> &[u8; 32] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        hex::encode(self.0)
    }
}

impl fmt::Display for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl fmt::Debug for Digest {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digest({})", self.to_hex())
    }
}

#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid digest {0:?}: expected 64 lowercase hex characters")]
pub struct DigestParseError(pub String);

impl FromStr for Digest {
    type Err = DigestParseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        if s.len() != 64 || s.bytes().any(|b| b.is_ascii_uppercase()) {
            return Err(DigestParseError(s.to_string()));
        }
        let mut out = [0u8; 32];
        hex::decode_to_slice(s, &mut out).map_err(|_| DigestParseError(s.to_string()))?;
        Ok(Digest(out))
    }
}

fn fresh_aux_name(b: &Benchmark) -> String {
    if b.decl(MERGED_QUERY_PRED).is_none() {
        return MERGED_QUERY_PRED.to_string();
    }
    (1..)
        .map(|i| format!("{MERGED_QUERY_PRED}_{i}"))
        .find(|n| b.decl(n).is_none())
        .unwrap_or_default()
}

/// Rewrites every query `body => false` into `body => AUX` for a fresh
/// nullary `AUX` and appends the single query `AUX => false`. A benchmark
/// with exactly one query is returned unchanged.
pub fn merge_queries(benchmark: &Benchmark) -> Result<Benchmark, TransformError> {
    match benchmark.num_queries() {
        0 => return Err(TransformError::NothingToMerge),
        1 => return Ok(benchmark.clone()),
        _ => {}
    }
    let aux = fresh_aux_name(benchmark);
    let mut out = benchmark.clone();
    out.checksum = None;
    out.decls.push(PredicateDecl::new(aux.clone(), Vec::new()));
    for c in out.clauses.iter_mut().filter(|c| c.is_query()) {
        c.head = Head::Atom(Atom::nullary(aux.clone()));
    }
    out.clauses
        .push(Clause::new(Vec::new(), vec![Atom::nullary(aux)], Term::Bool(true), Head::False));
    out.clause_locations.clear();
    Ok(out)
}

/// One benchmark per query, each with all non-query clauses (in order) and
/// that query.
pub fn split_queries(benchmark: &Benchmark) -> Result<Vec<Benchmark>, TransformError> {
    let query_idx: Vec<usize> = (0..benchmark.clauses.len())
        .filter(|&i| benchmark.clauses[i].is_query())
        .collect();
    if query_idx.is_empty() {
        return Err(TransformError::NothingToSplit);
    }
    if query_idx.len() == 1 {
        return Ok(vec![benchmark.clone()]);
    }
    Ok(query_idx
        .iter()
        .map(|&q| {
            let keep = |i: usize| !benchmark.clauses[i].is_query() || i == q;
            let idx: Vec<usize> = (0..benchmark.clauses.len()).filter(|&i| keep(i)).collect();
            let mut b = benchmark.clone();
            b.checksum = None;
            b.clauses = idx.iter().map(|&i| benchmark.clauses[i].clone()).collect();
            b.clause_locations = idx
                .iter()
                .filter_map(|&i| benchmark.clause_locations.get(i).copied())
                .collect();
            b
        })
        .collect())
}

pub fn checksum(benchmark: &Benchmark) -> Digest {
    Digest::of_bytes(print_canonical(benchmark).as_bytes())
}

/// Result of [`dedup`]: kept benchmarks and `(duplicate origin, kept origin)`.
#[derive(Debug, Default)]
pub struct Dedup {
    pub unique: Vec<Benchmark>,
    pub dropped: Vec<(String, String)>,
}

/// Keeps the first benchmark of every checksum class, in input order.
/// Checksums are computed in parallel and stored on the kept benchmarks.
pub fn dedup(benchmarks: Vec<Benchmark>) -> Dedup {
    let digests: Vec<Digest> = benchmarks.par_iter().map(checksum).collect();
    let mut seen: HashMap<Digest, String> = HashMap::new();
    let mut out = Dedup::default();
    for (mut b, d) in benchmarks.into_iter().zip(digests) {
        match seen.get(&d) {
            Some(kept) => out.dropped.push((b.origin.clone(), kept.clone())),
            None => {
                seen.insert(d, b.origin.clone());
                b.checksum = Some(d);
                out.unique.push(b);
            }
        }
    }
    out
}
