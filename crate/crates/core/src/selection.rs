//! Difficulty rating from probe runs and per-repository quota selection.
//!
//! Each repository `r` contributes up to `N_r` benchmarks of every rating.
//! A shortfall in one rating carries over to the next harder one
//! (A to B, B to C), never back. Membership inside a pool is drawn by a
//! partial Fisher-Yates shuffle driven by ChaCha20, seeded per
//! (seed, repository, rating) so that results do not depend on the order in
//! which repositories or benchmarks are listed.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use rand_chacha::ChaCha20Rng;
use rand_core::{RngCore, SeedableRng};
use sha2::{Digest as _, Sha256};
use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Rating {
    A,
    B,
    C,
}

impl Rating {
    pub const ALL: [Rating; 3] = [Rating::A, Rating::B, Rating::C];

    pub fn letter(self) -> char {
        match self {
            Rating::A => 'A',
            Rating::B => 'B',
            Rating::C => 'C',
        }
    }
}

impl fmt::Display for Rating {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.letter())
    }
}

impl FromStr for Rating {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "A" => Ok(Rating::A),
            "B" => Ok(Rating::B),
            "C" => Ok(Rating::C),
            other => Err(format!("invalid rating {other:?}, expected A, B or C")),
        }
    }
}

/// One probe solver's outcome on one benchmark.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProbeOutcome {
    pub benchmark: String,
    pub solver: String,
    pub solved: bool,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum SelectionError {
    #[error("probe outcomes refer to different benchmarks: {0} and {1}")]
    MismatchedBenchmarks(String, String),
    #[error("no quota configured for repository {0}")]
    MissingQuota(String),
    #[error("quota for repository {0} must be positive")]
    ZeroQuota(String),
}

/// A if both probes solved the benchmark, B if one did, C if neither.
pub fn rate(probe1: &ProbeOutcome, probe2: &ProbeOutcome) -> Result<Rating, SelectionError> {
    if probe1.benchmark != probe2.benchmark {
        return Err(SelectionError::MismatchedBenchmarks(
            probe1.benchmark.clone(),
            probe2.benchmark.clone(),
        ));
    }
    Ok(match (probe1.solved, probe2.solved) {
        (true, true) => Rating::A,
        (false, false) => Rating::C,
        _ => Rating::B,
    })
}

/// Benchmarks of one repository, split by rating.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Pools {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

impl Pools {
    pub fn get(&self, r: Rating) -> &[String] {
        match r {
            Rating::A => &self.a,
            Rating::B => &self.b,
            Rating::C => &self.c,
        }
    }

    pub fn get_mut(&mut self, r: Rating) -> &mut Vec<String> {
        match r {
            Rating::A => &mut self.a,
            Rating::B => &mut self.b,
            Rating::C => &mut self.c,
        }
    }

    pub fn sizes(&self) -> [usize; 3] {
        [self.a.len(), self.b.len(), self.c.len()]
    }
}

/// Number of benchmarks taken from each rating pool of the given sizes.
pub fn cascade_counts(sizes: [usize; 3], quota: usize) -> [usize; 3] {
    let mut carry = 0;
    let mut out = [0; 3];
    for (k, size) in sizes.into_iter().enumerate() {
        let target = quota + carry;
        out[k] = target.min(size);
        carry = target - out[k];
    }
    out
}

/// Uniform integer in `0..bound` by rejection sampling on 64-bit draws.
fn uniform_below(rng: &mut impl RngCore, bound: u64) -> u64 {
    debug_assert!(bound > 0);
    let zone = u64::MAX - (u64::MAX % bound);
    loop {
        let x = rng.next_u64();
        if x < zone {
            return x % bound;
        }
    }
}

/// `n` members of `pool` drawn uniformly without replacement. The pool is
/// sorted first, and the result is returned sorted.
pub fn sample_without_replacement(pool: &[String], n: usize, rng: &mut impl RngCore) -> Vec<String> {
    let mut items: Vec<&String> = pool.iter().collect();
    items.sort();
    let n = n.min(items.len());
    for i in 0..n {
        let j = i + uniform_below(rng, (items.len() - i) as u64) as usize;
        items.swap(i, j);
    }
    let mut out: Vec<String> = items[..n].iter().map(|s| (*s).clone()).collect();
    out.sort();
    out
}

/// Benchmarks chosen per rating.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Taken {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub c: Vec<String>,
}

impl Taken {
    pub fn counts(&self) -> (usize, usize, usize) {
        (self.a.len(), self.b.len(), self.c.len())
    }

    pub fn total(&self) -> usize {
        self.a.len() + self.b.len() + self.c.len()
    }
}

/// Selects from one repository, drawing all three pools from `rng`.
pub fn select_from_repository(pools: &Pools, quota: usize, rng: &mut impl RngCore) -> Taken {
    let [na, nb, nc] = cascade_counts(pools.sizes(), quota);
    Taken {
        a: sample_without_replacement(&pools.a, na, rng),
        b: sample_without_replacement(&pools.b, nb, rng),
        c: sample_without_replacement(&pools.c, nc, rng),
    }
}

/// Generator for one pool: ChaCha20 keyed by
/// `SHA-256(seed as 8 little-endian bytes || repository || 0x00 || letter)`.
pub fn substream(seed: u64, repository: &str, rating: Rating) -> ChaCha20Rng {
    let mut h = Sha256::new();
    h.update(seed.to_le_bytes());
    h.update(repository.as_bytes());
    h.update([0u8]);
    h.update([rating.letter() as u8]);
    ChaCha20Rng::from_seed(h.finalize().into())
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelectionPolicy {
    pub quotas: BTreeMap<String, usize>,
    pub seed: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SelectionResult {
    pub chosen: BTreeMap<String, Vec<String>>,
    pub counts: BTreeMap<String, (usize, usize, usize)>,
}

impl SelectionResult {
    pub fn total(&self) -> usize {
        self.chosen.values().map(Vec::len).sum()
    }
}

/// Applies the quota cascade to every repository with independent substreams.
pub fn select_all(rated: &BTreeMap<String, Pools>, policy: &SelectionPolicy) -> Result<SelectionResult, SelectionError> {
    let mut out = SelectionResult::default();
    for (repo, pools) in rated {
        let quota = *policy
            .quotas
            .get(repo)
            .ok_or_else(|| SelectionError::MissingQuota(repo.clone()))?;
        if quota == 0 {
            return Err(SelectionError::ZeroQuota(repo.clone()));
        }
        let n = cascade_counts(pools.sizes(), quota);
        let mut chosen = Vec::new();
        for (k, r) in Rating::ALL.into_iter().enumerate() {
            let mut rng = substream(policy.seed, repo, r);
            chosen.extend(sample_without_replacement(pools.get(r), n[k], &mut rng));
        }
        out.counts.insert(repo.clone(), (n[0], n[1], n[2]));
        out.chosen.insert(repo.clone(), chosen);
    }
    Ok(out)
}

/// Tracks small enough to be used in full.
pub fn select_whole_track<T: Clone>(benchmarks: &[T]) -> Vec<T> {
    benchmarks.to_vec()
}
