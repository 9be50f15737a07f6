//! Runs every structural law of the crate for one order `n` and collects
//! the outcome of each check. Checks whose cost grows beyond their cap are
//! reported as skipped instead of being run.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::rngs::StdRng;
use rand::{RngExt, SeedableRng};
use serde::Serialize;

use crate::codec::{
    generate_all, oracle_generate, perm_to_code, perm_to_rank, rank_to_perm, GenerationMode,
};
use crate::error::{Error, Result};
use crate::orbits::{max_terminal_level, OrbitRef};
use crate::overlap::{
    canonical_path, compressed_word, degree_profile, distinct_permutation_windows,
    min_hamiltonian_path, OverlapDigraph, SearchOptions,
};
use crate::radix::{check_identities, factorial, factorial_u64, PiNumber};
use crate::symmetry::{
    mirror_rank, palindrome_word, ruler_sequence, ruler_total, split_ab, transition_weight,
    PALINDROME_MAX_ORDER, RULER_MAX_ORDER,
};

/// Groups of checks that can be selected individually.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Identities,
    Roundtrip,
    Oracle,
    Orbits,
    Mirror,
    Ruler,
    Palindrome,
    Graph,
    Minpath,
    Superperm,
}

impl Suite {
    pub const ALL: [Suite; 10] = [
        Suite::Identities,
        Suite::Roundtrip,
        Suite::Oracle,
        Suite::Orbits,
        Suite::Mirror,
        Suite::Ruler,
        Suite::Palindrome,
        Suite::Graph,
        Suite::Minpath,
        Suite::Superperm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Identities => "identities",
            Suite::Roundtrip => "roundtrip",
            Suite::Oracle => "oracle",
            Suite::Orbits => "orbits",
            Suite::Mirror => "mirror",
            Suite::Ruler => "ruler",
            Suite::Palindrome => "palindrome",
            Suite::Graph => "graph",
            Suite::Minpath => "minpath",
            Suite::Superperm => "superperm",
        }
    }

    /// Parses `all` or a comma-separated list of suite names.
    pub fn parse_selection(text: &str) -> Result<Vec<Suite>> {
        if text.trim() == "all" {
            return Ok(Suite::ALL.to_vec());
        }
        text.split(',').map(|s| s.trim().parse()).collect()
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown suite `{s}`")))
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Per-check order limits.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Caps {
    /// Exhaustive round trip up to this order; random samples above.
    pub exhaustive: usize,
    /// Materialised digraph checks.
    pub graph: usize,
    /// Canonical path validated arc by arc.
    pub path: usize,
    /// Exact minimum-weight path search.
    pub minpath: usize,
    /// Palindrome and compressed words.
    pub word: usize,
    pub ruler: usize,
    /// Random samples per order above `exhaustive`.
    pub samples: usize,
    pub budget: Option<u64>,
}

impl Default for Caps {
    fn default() -> Self {
        Caps {
            exhaustive: 8,
            graph: 6,
            path: 7,
            minpath: 4,
            word: PALINDROME_MAX_ORDER,
            ruler: RULER_MAX_ORDER,
            samples: 10_000,
            budget: None,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail { counterexample: String },
    Skipped { reason: String },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub suite: Suite,
    pub name: &'static str,
    #[serde(flatten)]
    pub status: CheckStatus,
    /// What was checked, e.g. the number of cases.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub n: usize,
    pub results: Vec<CheckResult>,
}

impl VerifyReport {
    /// `true` when no check failed (skipped checks do not count).
    pub fn passed(&self) -> bool {
        !self
            .results
            .iter()
            .any(|r| matches!(r.status, CheckStatus::Fail { .. }))
    }

    pub fn failures(&self) -> impl Iterator<Item = &CheckResult> {
        self.results
            .iter()
            .filter(|r| matches!(r.status, CheckStatus::Fail { .. }))
    }

    /// One line per check: `PASS|FAIL|SKIP  suite/name  detail`.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let (tag, extra) = match &r.status {
                CheckStatus::Pass => ("PASS", String::new()),
                CheckStatus::Fail { counterexample } => ("FAIL", format!(" -- {counterexample}")),
                CheckStatus::Skipped { reason } => ("SKIP", format!(" -- {reason}")),
            };
            let detail = if r.detail.is_empty() {
                String::new()
            } else {
                format!("  {}", r.detail)
            };
            out.push_str(&format!("{tag}  {}/{}{detail}{extra}\n", r.suite, r.name));
        }
        let failed = self.failures().count();
        out.push_str(&format!(
            "n = {}: {} checks, {} failed\n",
            self.n,
            self.results.len(),
            failed
        ));
        out
    }
}

type Outcome = std::result::Result<String, String>;

struct Runner {
    n: usize,
    caps: Caps,
    results: Vec<CheckResult>,
}

impl Runner {
    fn record(&mut self, suite: Suite, name: &'static str, outcome: Outcome) {
        let (status, detail) = match outcome {
            Ok(detail) => (CheckStatus::Pass, detail),
            Err(counterexample) => (CheckStatus::Fail { counterexample }, String::new()),
        };
        self.results.push(CheckResult {
            suite,
            name,
            status,
            detail,
        });
    }

    fn skip(&mut self, suite: Suite, name: &'static str, reason: String) {
        self.results.push(CheckResult {
            suite,
            name,
            status: CheckStatus::Skipped { reason },
            detail: String::new(),
        });
    }

    /// Runs `check` when `n` is within `cap`, otherwise records a skip.
    fn capped(
        &mut self,
        suite: Suite,
        name: &'static str,
        min: usize,
        cap: usize,
        check: impl FnOnce(usize) -> Outcome,
    ) {
        let n = self.n;
        if n < min {
            self.skip(suite, name, format!("needs n >= {min}"));
        } else if n > cap {
            self.skip(suite, name, format!("n = {n} exceeds the cap n <= {cap}"));
        } else {
            let outcome = check(n);
            self.record(suite, name, outcome);
        }
    }
}

fn err_text(e: Error) -> String {
    e.to_string()
}

fn all_ranks(n: usize) -> u64 {
    factorial_u64(n).expect("capped order")
}

fn check_roundtrip_exhaustive(n: usize) -> Outcome {
    let total = all_ranks(n);
    let mut seen = HashSet::new();
    for a in 0..total {
        let rank = BigUint::from(a);
        let p = rank_to_perm(n, &rank).map_err(err_text)?;
        let back = perm_to_rank(&p);
        if back.rank != rank {
            return Err(format!("rank {a} -> {p} -> {}", back.rank));
        }
        if n >= 2 {
            let code = PiNumber::encode_u64(n, a).map_err(err_text)?;
            if code.decode() != rank || code != back.code {
                return Err(format!("code of {a} does not round trip"));
            }
            if !seen.insert(code.digits().to_vec()) {
                return Err(format!("code of {a} is not unique"));
            }
        }
    }
    Ok(format!("{total} ranks"))
}

fn check_roundtrip_sampled(n: usize, samples: usize) -> Outcome {
    let mut rng = StdRng::seed_from_u64(0x5eed_0000 + n as u64);
    for _ in 0..samples {
        // Uniform digits give a uniform rank.
        let digits: Vec<u32> = (0..n - 1).map(|i| rng.random_range(0..(n - i) as u32)).collect();
        let code = PiNumber::from_digits(n, digits).map_err(err_text)?;
        let rank = code.decode();
        let again = PiNumber::encode(n, &rank).map_err(err_text)?;
        if again != code {
            return Err(format!("rank {rank} re-encodes to {again}, expected {code}"));
        }
        let p = rank_to_perm(n, &rank).map_err(err_text)?;
        if perm_to_rank(&p).rank != rank {
            return Err(format!("rank {rank} -> {p} does not round trip"));
        }
    }
    Ok(format!("{samples} random ranks"))
}

fn check_increment_cycle(n: usize) -> Outcome {
    let total = all_ranks(n);
    let mut x = PiNumber::zero(n).map_err(err_text)?;
    for a in 0..total {
        if x.to_u64() != Some(a) {
            return Err(format!("increment chain reached {x} at step {a}"));
        }
        x.increment_in_place();
    }
    if !x.is_zero() {
        return Err(format!("after n! increments the value is {x}, not 0"));
    }
    Ok(format!("{total} increments"))
}

fn check_ring(n: usize) -> Outcome {
    let total = all_ranks(n);
    for a in 0..total {
        for b in 0..total {
            let x = PiNumber::encode_u64(n, a).map_err(err_text)?;
            let y = PiNumber::encode_u64(n, b).map_err(err_text)?;
            let sum = x.add(&y).map_err(err_text)?.to_u64();
            let product = x.multiply(&y).map_err(err_text)?.to_u64();
            if sum != Some((a + b) % total) || product != Some(a * b % total) {
                return Err(format!("ring law fails for {a}, {b}"));
            }
        }
    }
    Ok(format!("{} pairs", total * total))
}

fn check_oracle(n: usize) -> Outcome {
    let oracle = oracle_generate(n).map_err(err_text)?;
    for mode in [GenerationMode::Incremental, GenerationMode::Naive] {
        let stream = generate_all(n).map_err(err_text)?.with_mode(mode);
        let mut count = 0usize;
        for (item, expected) in stream.zip(&oracle) {
            if &item.perm != expected {
                return Err(format!(
                    "{mode:?}: rank {} gives {}, oracle {expected}",
                    item.rank, item.perm
                ));
            }
            count += 1;
        }
        if count != oracle.len() {
            return Err(format!("{mode:?}: {count} items, oracle {}", oracle.len()));
        }
    }
    Ok(format!("{} permutations, both generation modes", oracle.len()))
}

fn check_prefix_orbit(n: usize) -> Outcome {
    let nn = n as u64;
    for a in 0..all_ranks(n) {
        let q = rank_to_perm(n - 1, &BigUint::from(a / nn)).map_err(err_text)?;
        let p = rank_to_perm(n, &BigUint::from(a)).map_err(err_text)?;
        if q.cyclic_shift((a % nn) as usize) != p {
            return Err(format!("rank {a}: S^{} of {q} is not {p}", a % nn));
        }
    }
    Ok(format!("{} ranks", all_ranks(n)))
}

fn check_orbit_tiling(n: usize) -> Outcome {
    let total = all_ranks(n) as usize;
    for k in 0..=n - 2 {
        let mut covered = vec![0u8; total];
        for beta in 0..all_ranks(n - k) {
            let orbit = OrbitRef::new(n, k, BigUint::from(beta)).map_err(err_text)?;
            for a in orbit.members() {
                covered[a.to_usize().expect("small")] += 1;
            }
        }
        if let Some(a) = covered.iter().position(|&c| c != 1) {
            return Err(format!("rank {a} covered {} times by {k}-orbits", covered[a]));
        }
    }
    Ok(format!("levels 0..={}", n - 2))
}

fn check_terminal_link(n: usize) -> Outcome {
    for a in 0..all_ranks(n) - 1 {
        let rank = BigUint::from(a);
        let level = max_terminal_level(&rank, n).map_err(err_text)?;
        let weight = transition_weight(n, &rank).map_err(err_text)?;
        if level.level + 1 != weight || level.global_last {
            return Err(format!("rank {a}: level {} but weight {weight}", level.level));
        }
    }
    Ok(format!("{} transitions", all_ranks(n) - 1))
}

fn check_mirror(n: usize) -> Outcome {
    for a in 0..all_ranks(n) {
        let rank = BigUint::from(a);
        let m = mirror_rank(n, &rank).map_err(err_text)?;
        let p = rank_to_perm(n, &rank).map_err(err_text)?;
        let q = rank_to_perm(n, &m).map_err(err_text)?;
        if p.mirror() != q {
            return Err(format!("rank {a} and {m} are not mirror images"));
        }
        if n >= 2 && perm_to_code(&q) != perm_to_code(&p).complement() {
            return Err(format!("code of {m} is not the complement of code of {a}"));
        }
    }
    Ok(format!("{} ranks", all_ranks(n)))
}

fn check_ruler(n: usize, cap: usize) -> Outcome {
    let ruler = ruler_sequence(n, cap).map_err(err_text)?;
    Ok(format!(
        "{} terms, palindrome, histogram and total {} = W_n",
        ruler.len(),
        ruler.total()
    ))
}

fn check_factorisation(n: usize) -> Outcome {
    for a in 0..all_ranks(n) - 1 {
        let split = split_ab(n, &BigUint::from(a)).map_err(err_text)?;
        let weight = transition_weight(n, &BigUint::from(a)).map_err(err_text)?;
        if split.weight() != weight {
            return Err(format!("rank {a}: |A| = {} but weight {weight}", split.weight()));
        }
    }
    Ok(format!("{} transitions", all_ranks(n) - 1))
}

fn check_overlap_uniqueness(n: usize) -> Outcome {
    let perms: Vec<_> = generate_all(n).map_err(err_text)?.map(|r| r.perm).collect();
    for (i, p) in perms.iter().enumerate() {
        for (j, q) in perms.iter().enumerate() {
            if i == j {
                continue;
            }
            let matches = (1..n)
                .filter(|&f| p.symbols()[f..] == q.symbols()[..n - f])
                .count();
            if matches > 1 {
                return Err(format!("{p} -> {q} overlaps in {matches} ways"));
            }
        }
    }
    Ok(format!("{} ordered pairs", perms.len() * (perms.len() - 1)))
}

fn check_regularity(g: &OverlapDigraph) -> Outcome {
    let profile = degree_profile(g);
    match profile.violations.first() {
        Some(v) => Err(v.clone()),
        None => Ok(format!("{}-regular", profile.regular_degree)),
    }
}

fn check_canonical_path(n: usize, cap: usize) -> Outcome {
    let path = canonical_path(n, cap).map_err(err_text)?;
    path.verify().map_err(err_text)?;
    Ok(format!("{} arcs, total {}", path.weights.len(), path.total))
}

fn check_minpath(n: usize, caps: &Caps) -> Outcome {
    let g = OverlapDigraph::build(n, caps.graph.max(n)).map_err(err_text)?;
    let cert = min_hamiltonian_path(&g, SearchOptions { budget: caps.budget })
        .map_err(err_text)?;
    cert.verify().map_err(err_text)?;
    let w_n = ruler_total(n);
    if !cert.optimal {
        return Err(format!(
            "search budget exhausted; best found {} (W_n = {w_n})",
            cert.total
        ));
    }
    if BigUint::from(cert.total) != w_n {
        return Err(format!("optimal weight {} differs from W_n = {w_n}", cert.total));
    }
    let stats = cert.stats.unwrap_or_default();
    Ok(format!(
        "optimal {} = W_n, {} nodes expanded",
        cert.total, stats.nodes_expanded
    ))
}

fn check_compressed_word(n: usize, cap: usize) -> Outcome {
    let word = compressed_word(n, cap).map_err(err_text)?;
    let expected = ruler_total(n) + n;
    if BigUint::from(word.len()) != expected {
        return Err(format!("length {} but n + W_n = {expected}", word.len()));
    }
    let found = distinct_permutation_windows(&word);
    if BigUint::from(found) != factorial(n) {
        return Err(format!("only {found} of {}! permutations occur", n));
    }
    Ok(format!("length {}, all {found} permutations", word.len()))
}

/// Runs the selected suites for order `n`.
pub fn verify_suite(n: usize, suites: &[Suite], caps: Caps) -> Result<VerifyReport> {
    if n == 0 {
        return Err(Error::Order { n, min: 1 });
    }
    let mut r = Runner {
        n,
        caps,
        results: Vec::new(),
    };
    let caps = r.caps;
    for &suite in suites {
        match suite {
            Suite::Identities => r.capped(suite, "base identities", 2, usize::MAX, |n| {
                let report = check_identities(n).map_err(err_text)?;
                match report.checks.iter().find(|c| !c.passed) {
                    Some(c) => Err(format!("{}: {}", c.name, c.failure.clone().unwrap_or_default())),
                    None => Ok(format!(
                        "{} cases",
                        report.checks.iter().map(|c| c.cases).sum::<usize>()
                    )),
                }
            }),
            Suite::Roundtrip => {
                if n <= caps.exhaustive {
                    r.capped(suite, "rank round trip", 1, usize::MAX, check_roundtrip_exhaustive);
                } else {
                    r.capped(suite, "rank round trip", 2, usize::MAX, |n| {
                        check_roundtrip_sampled(n, caps.samples)
                    });
                }
                r.capped(suite, "increment cycle", 2, caps.exhaustive, check_increment_cycle);
                r.capped(suite, "ring homomorphism", 2, 5, check_ring);
            }
            Suite::Oracle => {
                r.capped(suite, "oracle equivalence", 1, caps.exhaustive, check_oracle);
                r.capped(suite, "prefix orbit law", 2, caps.exhaustive, check_prefix_orbit);
            }
            Suite::Orbits => {
                r.capped(suite, "k-orbit tiling", 2, 7, check_orbit_tiling);
                r.capped(suite, "terminal level = weight - 1", 2, 7, check_terminal_link);
            }
            Suite::Mirror => r.capped(suite, "mirror ranks", 1, caps.exhaustive, check_mirror),
            Suite::Ruler => {
                r.capped(suite, "ruler laws", 2, caps.ruler, |n| check_ruler(n, caps.ruler));
                r.capped(suite, "AB/BA factorisation", 2, 7, check_factorisation);
            }
            Suite::Palindrome => r.capped(suite, "palindrome word", 1, caps.word, |n| {
                let word = palindrome_word(n, caps.word).map_err(err_text)?;
                Ok(format!("length {}", word.len()))
            }),
            Suite::Graph => {
                if (2..=caps.graph.min(crate::overlap::GRAPH_MAX_ORDER)).contains(&n) {
                    match OverlapDigraph::build(n, caps.graph) {
                        Ok(g) => {
                            r.record(suite, "regularity", check_regularity(&g));
                            let connected = if g.is_strongly_connected() {
                                Ok("strongly connected".to_string())
                            } else {
                                Err("not strongly connected".to_string())
                            };
                            r.record(suite, "strong connectivity", connected);
                        }
                        Err(e) => r.record(suite, "regularity", Err(err_text(e))),
                    }
                } else {
                    r.capped(suite, "regularity", 2, caps.graph, |_| unreachable!());
                    r.capped(suite, "strong connectivity", 2, caps.graph, |_| unreachable!());
                }
                r.capped(suite, "overlap uniqueness", 2, caps.graph, check_overlap_uniqueness);
                r.capped(suite, "canonical path", 2, caps.path, |n| {
                    check_canonical_path(n, caps.path)
                });
            }
            Suite::Minpath => {
                r.capped(suite, "canonical weight", 2, caps.path.max(caps.word), |n| {
                    let path = canonical_path(n, caps.path.max(caps.word)).map_err(err_text)?;
                    Ok(format!("w_n has weight {} = W_n", path.total))
                });
                if n > caps.minpath && n >= 2 {
                    r.skip(
                        suite,
                        "exact minimum",
                        format!(
                            "n = {n} is out of exact-search scope (n <= {}); property checks only",
                            caps.minpath
                        ),
                    );
                } else {
                    r.capped(suite, "exact minimum", 2, caps.minpath, |n| check_minpath(n, &caps));
                }
            }
            Suite::Superperm => r.capped(suite, "compressed word", 2, caps.word, |n| {
                check_compressed_word(n, caps.word)
            }),
        }
    }
    Ok(VerifyReport {
        n,
        results: r.results,
    })
}
