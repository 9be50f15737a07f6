//! The weighted overlap digraph on `S_n`.
//!
//! There is an arc `p -> q` of weight `f` when the last `n - f` symbols of
//! `p` are the first `n - f` symbols of `q`; `f` is the number of symbols
//! written when `q` is appended to a word ending in `p`. Walking the ranks
//! in order gives a Hamiltonian path whose weights are the ruler sequence,
//! and overlapping consecutive permutations along it yields a word holding
//! every permutation of `1..=n` as a window.
//!
//! [`min_hamiltonian_path`] runs an exact branch-and-bound search for the
//! lightest Hamiltonian path, practical up to `n = 4`.

use std::collections::VecDeque;
use std::fmt::{self, Write as _};
use std::str::FromStr;

use num_traits::ToPrimitive;
use serde::Serialize;

use crate::codec::{generate_all, perm_to_code};
use crate::error::{Error, Result};
use crate::orbits::trailing_max_digits;
use crate::perm::{Permutation, Word};
use crate::radix::factorial_u64;
use crate::symmetry::ruler_total;

/// Largest order whose digraph is materialised.
pub const GRAPH_MAX_ORDER: usize = 7;

/// Default cap for the path and word constructions.
pub const WORD_MAX_ORDER: usize = 10;

/// Smallest `f` in `1..n` with `p[f..] == q[..n-f]`, or 0 when none.
fn overlap_weight(p: &[u32], q: &[u32]) -> u8 {
    let n = p.len();
    (1..n)
        .find(|&f| p[f..] == q[..n - f])
        .map_or(0, |f| f as u8)
}

/// Weight of the arc `p -> q`, or `None` when the two do not overlap.
///
/// For distinct permutations at most one `f` can match, so taking the
/// smallest never actually breaks a tie.
pub fn arc_weight(p: &Permutation, q: &Permutation) -> Result<Option<usize>> {
    if p.order() != q.order() {
        return Err(Error::OrderMismatch {
            left: p.order(),
            right: q.order(),
        });
    }
    if p == q {
        return Err(Error::SelfArc);
    }
    Ok(match overlap_weight(p.symbols(), q.symbols()) {
        0 => None,
        f => Some(f as usize),
    })
}

/// Materialised overlap digraph; vertex `i` is the permutation of rank `i`.
#[derive(Debug, Clone)]
pub struct OverlapDigraph {
    n: usize,
    vertices: Vec<Permutation>,
    matrix: Vec<u8>,
    /// Out-arcs per vertex as `(target, weight)`, sorted by weight then
    /// target.
    out: Vec<Vec<(u32, u8)>>,
}

impl OverlapDigraph {
    /// Builds the digraph by testing every ordered pair of vertices.
    pub fn build(n: usize, cap: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::Order { n, min: 2 });
        }
        let cap = cap.min(GRAPH_MAX_ORDER);
        if n > cap {
            return Err(Error::ResourceCap {
                what: "overlap digraph",
                n,
                cap,
            });
        }
        let vertices: Vec<Permutation> = generate_all(n)?.map(|r| r.perm).collect();
        let count = vertices.len();
        let mut matrix = vec![0u8; count * count];
        let mut out = vec![Vec::new(); count];
        for (i, p) in vertices.iter().enumerate() {
            let row = &mut matrix[i * count..(i + 1) * count];
            for (j, q) in vertices.iter().enumerate() {
                if i != j {
                    let w = overlap_weight(p.symbols(), q.symbols());
                    row[j] = w;
                    if w > 0 {
                        out[i].push((j as u32, w));
                    }
                }
            }
            out[i].sort_by_key(|&(t, w)| (w, t));
        }
        Ok(OverlapDigraph {
            n,
            vertices,
            matrix,
            out,
        })
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn vertex(&self, rank: usize) -> &Permutation {
        &self.vertices[rank]
    }

    /// Arc weight between two ranks; 0 means no arc.
    pub fn weight(&self, from: usize, to: usize) -> u8 {
        self.matrix[from * self.vertices.len() + to]
    }

    /// Out-arcs of `from` as `(target, weight)`, lightest first.
    pub fn out_arcs(&self, from: usize) -> &[(u32, u8)] {
        &self.out[from]
    }

    pub fn arc_count(&self) -> usize {
        self.out.iter().map(Vec::len).sum()
    }

    /// Matrix row of `from`, 0 meaning no arc.
    pub fn row(&self, from: usize) -> &[u8] {
        let count = self.vertices.len();
        &self.matrix[from * count..(from + 1) * count]
    }

    #[allow(clippy::needless_range_loop)]
    fn reachable_from_zero(&self, reverse: bool) -> usize {
        let count = self.vertices.len();
        let mut seen = vec![false; count];
        let mut queue = VecDeque::from([0usize]);
        seen[0] = true;
        let mut reached = 1;
        while let Some(v) = queue.pop_front() {
            for u in 0..count {
                let w = if reverse {
                    self.weight(u, v)
                } else {
                    self.weight(v, u)
                };
                if w > 0 && !seen[u] {
                    seen[u] = true;
                    reached += 1;
                    queue.push_back(u);
                }
            }
        }
        reached
    }

    pub fn is_strongly_connected(&self) -> bool {
        let count = self.vertices.len();
        self.reachable_from_zero(false) == count && self.reachable_from_zero(true) == count
    }

    #[cfg(test)]
    pub(crate) fn drop_arcs_into(&mut self, target: usize) {
        let count = self.vertices.len();
        for from in 0..count {
            self.matrix[from * count + target] = 0;
            self.out[from].retain(|&(t, _)| t as usize != target);
        }
    }
}

/// Per-vertex in/out arc counts split by weight.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DegreeProfile {
    pub n: usize,
    /// Expected degree `1! + 2! + ... + (n-1)!`.
    pub regular_degree: u64,
    /// `out_by_weight[v][j - 1]` is the number of out-arcs of weight `j`.
    pub out_by_weight: Vec<Vec<u64>>,
    pub in_by_weight: Vec<Vec<u64>>,
    /// Human-readable description of every deviation from the `j!` law.
    pub violations: Vec<String>,
}

impl DegreeProfile {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Counts arcs per vertex and weight and checks that every vertex has
/// exactly `j!` in-arcs and `j!` out-arcs of weight `j`.
#[allow(clippy::needless_range_loop)]
pub fn degree_profile(g: &OverlapDigraph) -> DegreeProfile {
    let n = g.order();
    let count = g.vertex_count();
    let mut out_by_weight = vec![vec![0u64; n - 1]; count];
    let mut in_by_weight = vec![vec![0u64; n - 1]; count];
    for from in 0..count {
        for (to, &w) in g.row(from).iter().enumerate() {
            if w > 0 {
                out_by_weight[from][w as usize - 1] += 1;
                in_by_weight[to][w as usize - 1] += 1;
            }
        }
    }
    let mut violations = Vec::new();
    for v in 0..count {
        for j in 1..n {
            let expected = factorial_u64(j).expect("small order");
            for (label, counts) in [("out", &out_by_weight), ("in", &in_by_weight)] {
                let got = counts[v][j - 1];
                if got != expected {
                    violations.push(format!(
                        "vertex {v}: {got} {label}-arcs of weight {j}, expected {expected}"
                    ));
                }
            }
        }
    }
    DegreeProfile {
        n,
        regular_degree: (1..n).map(|j| factorial_u64(j).expect("small order")).sum(),
        out_by_weight,
        in_by_weight,
        violations,
    }
}

/// Counters reported by [`min_hamiltonian_path`].
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct SearchStats {
    pub nodes_expanded: u64,
    pub bound_cutoffs: u64,
    pub starts_searched: usize,
    pub budget_exhausted: bool,
}

/// A path (or cycle) through the digraph with its arc weights.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PathCertificate {
    pub n: usize,
    /// Vertex ranks in visiting order; a closed cycle repeats the start.
    pub vertices: Vec<u64>,
    pub weights: Vec<u8>,
    pub total: u64,
    pub closed: bool,
    /// `true` only when an exhaustive search proved minimality.
    pub optimal: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub stats: Option<SearchStats>,
}

impl PathCertificate {
    /// Re-checks every arc against the string-overlap definition and the
    /// recorded total, and that each vertex appears exactly once (the start
    /// twice for a closed cycle).
    pub fn verify(&self) -> Result<()> {
        let n = self.n;
        let count = factorial_u64(n).ok_or(Error::ResourceCap {
            what: "path verification",
            n,
            cap: crate::radix::FAST_PATH_MAX_ORDER,
        })?;
        if self.weights.len() + 1 != self.vertices.len() {
            return Err(Error::LawViolation("weights and vertices disagree in length".into()));
        }
        let mut seen = vec![false; count as usize];
        let open = if self.closed {
            &self.vertices[..self.vertices.len() - 1]
        } else {
            &self.vertices[..]
        };
        for &v in open {
            if v >= count || std::mem::replace(&mut seen[v as usize], true) {
                return Err(Error::LawViolation(format!("vertex {v} repeated or out of range")));
            }
        }
        if seen.iter().any(|s| !s) {
            return Err(Error::LawViolation("path is not Hamiltonian".into()));
        }
        if self.closed && self.vertices.first() != self.vertices.last() {
            return Err(Error::LawViolation("cycle does not return to its start".into()));
        }
        for (pair, &w) in self.vertices.windows(2).zip(&self.weights) {
            let p = crate::codec::rank_to_perm_u64(n, pair[0])?;
            let q = crate::codec::rank_to_perm_u64(n, pair[1])?;
            if arc_weight(&p, &q)? != Some(w as usize) {
                return Err(Error::LawViolation(format!(
                    "arc {} -> {} does not have weight {w}",
                    pair[0], pair[1]
                )));
            }
        }
        let sum: u64 = self.weights.iter().map(|&w| w as u64).sum();
        if sum != self.total {
            return Err(Error::LawViolation(format!(
                "recorded total {} but arcs sum to {sum}",
                self.total
            )));
        }
        Ok(())
    }
}

fn check_word_order(n: usize, cap: usize, what: &'static str) -> Result<()> {
    if n < 2 {
        return Err(Error::Order { n, min: 2 });
    }
    if n > cap || factorial_u64(n).is_none() {
        return Err(Error::ResourceCap { what, n, cap });
    }
    Ok(())
}

/// The Hamiltonian path through ranks `0, 1, ..., n! - 1`. Each arc weight
/// is computed from the digits and checked against the string overlap.
pub fn canonical_path(n: usize, cap: usize) -> Result<PathCertificate> {
    check_word_order(n, cap, "canonical path")?;
    let total_vertices = factorial_u64(n).expect("checked");
    let mut vertices = Vec::with_capacity(total_vertices as usize);
    let mut weights = Vec::with_capacity(total_vertices as usize - 1);
    let mut previous: Option<(Permutation, u8)> = None;
    for item in generate_all(n)? {
        let rank = item.rank.to_u64().expect("capped order");
        if let Some((p, w)) = previous.take() {
            if overlap_weight(p.symbols(), item.perm.symbols()) != w {
                return Err(Error::LawViolation(format!(
                    "transition {} -> {rank}: digit weight {w} disagrees with overlap",
                    rank - 1
                )));
            }
            weights.push(w);
        }
        vertices.push(rank);
        if !item.code.is_max() {
            let w = (trailing_max_digits(&item.code) + 1) as u8;
            previous = Some((item.perm, w));
        }
    }
    let total = weights.iter().map(|&w| w as u64).sum();
    if Some(total) != ruler_total(n).to_u64() {
        return Err(Error::LawViolation(format!(
            "canonical path of order {n} has weight {total}"
        )));
    }
    Ok(PathCertificate {
        n,
        vertices,
        weights,
        total,
        closed: false,
        optimal: false,
        stats: None,
    })
}

/// Closes the canonical path with the arc `p_{n!-1} -> p_0` of weight
/// `n - 1`.
pub fn close_cycle(path: &PathCertificate) -> Result<PathCertificate> {
    let n = path.n;
    let is_canonical = !path.closed
        && path
            .vertices
            .iter()
            .enumerate()
            .all(|(i, &v)| v == i as u64)
        && Some(path.vertices.len() as u64) == factorial_u64(n);
    if !is_canonical {
        return Err(Error::LawViolation(
            "only the canonical rank-order path can be closed".into(),
        ));
    }
    let last = crate::codec::rank_to_perm_u64(n, *path.vertices.last().expect("non-empty"))?;
    let first = Permutation::identity(n);
    let w = arc_weight(&last, &first)?;
    if w != Some(n - 1) {
        return Err(Error::LawViolation(format!(
            "closing arc has weight {w:?}, expected {}",
            n - 1
        )));
    }
    let mut cycle = path.clone();
    cycle.vertices.push(0);
    cycle.weights.push((n - 1) as u8);
    cycle.total += (n - 1) as u64;
    cycle.closed = true;
    cycle.optimal = false;
    Ok(cycle)
}

/// The word obtained by writing `p_0` and then, for each transition, the
/// last `e(a)` symbols of `p_{a+1}`. Length `n + W_n`.
pub fn compressed_word(n: usize, cap: usize) -> Result<Word> {
    if n == 1 {
        return Ok(Word::new(1, vec![1]));
    }
    check_word_order(n, cap, "compressed word")?;
    let mut symbols: Vec<u32> = Vec::new();
    let mut pending = 0usize;
    for item in generate_all(n)? {
        if symbols.is_empty() {
            symbols.extend_from_slice(item.perm.symbols());
        } else {
            symbols.extend_from_slice(&item.perm.symbols()[n - pending..]);
        }
        pending = trailing_max_digits(&item.code) + 1;
    }
    Ok(Word::new(n, symbols))
}

/// Number of distinct permutations of `1..=n` occurring as windows of
/// width `n` in `word`.
pub fn distinct_permutation_windows(word: &Word) -> usize {
    let n = word.order();
    let mut seen = std::collections::HashSet::new();
    for window in word.symbols().windows(n) {
        if let Ok(p) = Permutation::new(window.to_vec()) {
            seen.insert(perm_to_code(&p));
        }
    }
    seen.len()
}

/// Options for [`min_hamiltonian_path`].
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct SearchOptions {
    /// Stop after expanding this many search nodes.
    pub budget: Option<u64>,
}

struct Search<'a> {
    g: &'a OverlapDigraph,
    class: Vec<usize>,
    class_seen: Vec<u32>,
    untouched: usize,
    visited: Vec<bool>,
    path: Vec<u32>,
    weight: u64,
    best: u64,
    best_path: Option<Vec<u32>>,
    stats: SearchStats,
    budget: Option<u64>,
}

impl Search<'_> {
    fn visit(&mut self, v: usize) {
        self.visited[v] = true;
        self.path.push(v as u32);
        let c = self.class[v];
        if self.class_seen[c] == 0 {
            self.untouched -= 1;
        }
        self.class_seen[c] += 1;
    }

    fn leave(&mut self, v: usize) {
        self.visited[v] = false;
        self.path.pop();
        let c = self.class[v];
        self.class_seen[c] -= 1;
        if self.class_seen[c] == 0 {
            self.untouched += 1;
        }
    }

    /// Every remaining vertex costs at least one; entering a rotation
    /// class not yet touched costs at least one more, since weight-1 arcs
    /// never leave their class.
    fn bound(&self) -> u64 {
        let remaining = (self.visited.len() - self.path.len()) as u64;
        self.weight + remaining + self.untouched as u64
    }

    fn dfs(&mut self) {
        if self.path.len() == self.visited.len() {
            if self.weight < self.best {
                self.best = self.weight;
                self.best_path = Some(self.path.clone());
            }
            return;
        }
        if let Some(limit) = self.budget {
            if self.stats.nodes_expanded >= limit {
                self.stats.budget_exhausted = true;
                return;
            }
        }
        self.stats.nodes_expanded += 1;
        let current = *self.path.last().expect("search starts from a vertex") as usize;
        for &(next, w) in self.g.out_arcs(current) {
            let next = next as usize;
            if self.visited[next] {
                continue;
            }
            self.weight += w as u64;
            self.visit(next);
            if self.bound() < self.best {
                self.dfs();
            } else {
                self.stats.bound_cutoffs += 1;
            }
            self.leave(next);
            self.weight -= w as u64;
            if self.stats.budget_exhausted {
                return;
            }
        }
    }
}

/// Rotation classes: the cycles formed by weight-1 arcs.
fn rotation_classes(g: &OverlapDigraph) -> Vec<usize> {
    let count = g.vertex_count();
    let mut class = vec![usize::MAX; count];
    let mut next_id = 0;
    for start in 0..count {
        if class[start] != usize::MAX {
            continue;
        }
        let mut v = start;
        while class[v] == usize::MAX {
            class[v] = next_id;
            match g.out_arcs(v).iter().find(|&&(_, w)| w == 1) {
                Some(&(t, _)) => v = t as usize,
                None => break,
            }
        }
        next_id += 1;
    }
    class
}

/// Exact minimum-weight Hamiltonian path over all start and end vertices.
///
/// Depth-first branch and bound. Starts are tried in rank order and
/// children lightest-first (ties by rank), so the returned witness is the
/// first optimal path met in that order. The incumbent starts at
/// `W_n + 1`, so the canonical weight is proved rather than assumed. If
/// the budget runs out the best path found so far is returned with
/// `optimal == false`.
pub fn min_hamiltonian_path(g: &OverlapDigraph, options: SearchOptions) -> Result<PathCertificate> {
    if !g.is_strongly_connected() {
        return Err(Error::Disconnected);
    }
    let count = g.vertex_count();
    let class = rotation_classes(g);
    let classes = class.iter().max().map_or(0, |&m| m + 1);
    let ceiling = ruler_total(g.order()).to_u64().expect("materialised order") + 1;
    let mut search = Search {
        g,
        class,
        class_seen: vec![0; classes],
        untouched: classes,
        visited: vec![false; count],
        path: Vec::with_capacity(count),
        weight: 0,
        best: ceiling,
        best_path: None,
        stats: SearchStats::default(),
        budget: options.budget,
    };
    for start in 0..count {
        search.visit(start);
        search.stats.starts_searched += 1;
        if search.bound() < search.best {
            search.dfs();
        } else {
            search.stats.bound_cutoffs += 1;
        }
        search.leave(start);
        if search.stats.budget_exhausted {
            break;
        }
    }
    let path = search.best_path.take().ok_or_else(|| {
        Error::LawViolation(format!(
            "no Hamiltonian path of weight below {ceiling} found{}",
            if search.stats.budget_exhausted {
                " before the budget ran out"
            } else {
                ""
            }
        ))
    })?;
    let weights: Vec<u8> = path
        .windows(2)
        .map(|pair| g.weight(pair[0] as usize, pair[1] as usize))
        .collect();
    Ok(PathCertificate {
        n: g.order(),
        vertices: path.iter().map(|&v| v as u64).collect(),
        total: weights.iter().map(|&w| w as u64).sum(),
        weights,
        closed: false,
        optimal: !search.stats.budget_exhausted,
        stats: Some(search.stats),
    })
}

/// Output format for [`export`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Dot,
    Csv,
    Json,
}

impl FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "dot" => Ok(ExportFormat::Dot),
            "csv" => Ok(ExportFormat::Csv),
            "json" => Ok(ExportFormat::Json),
            _ => Err(Error::UnknownFormat(s.to_string())),
        }
    }
}

impl fmt::Display for ExportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExportFormat::Dot => "dot",
            ExportFormat::Csv => "csv",
            ExportFormat::Json => "json",
        })
    }
}

#[derive(Serialize)]
struct JsonArc {
    from: usize,
    to: usize,
    w: u8,
}

/// Serialises the digraph. Arcs are listed source-major, targets ascending.
pub fn export(g: &OverlapDigraph, format: ExportFormat) -> String {
    let count = g.vertex_count();
    let mut out = String::new();
    match format {
        ExportFormat::Dot => {
            let _ = writeln!(out, "digraph G{} {{", g.order());
            for v in 0..count {
                let _ = writeln!(out, "  {v} [label=\"{v}:{}\"];", g.vertex(v));
            }
            for from in 0..count {
                for (to, &w) in g.row(from).iter().enumerate() {
                    if w > 0 {
                        let _ = writeln!(out, "  {from} -> {to} [label=\"{w}\"];");
                    }
                }
            }
            out.push_str("}\n");
        }
        ExportFormat::Csv => {
            for from in 0..count {
                let row: Vec<String> = g.row(from).iter().map(u8::to_string).collect();
                out.push_str(&row.join(","));
                out.push('\n');
            }
        }
        ExportFormat::Json => {
            let arcs: Vec<JsonArc> = (0..count)
                .flat_map(|from| {
                    g.row(from)
                        .iter()
                        .enumerate()
                        .filter(|&(_, &w)| w > 0)
                        .map(move |(to, &w)| JsonArc { from, to, w })
                })
                .collect();
            out = serde_json::to_string(&arcs).expect("arcs serialise");
            out.push('\n');
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(text: &str) -> Permutation {
        text.parse().unwrap()
    }

    #[test]
    fn arc_weight_examples() {
        assert_eq!(arc_weight(&p("1234"), &p("2341")).unwrap(), Some(1));
        assert_eq!(arc_weight(&p("4123"), &p("2314")).unwrap(), Some(2));
        assert_eq!(arc_weight(&p("4312"), &p("2134")).unwrap(), Some(3));
        assert_eq!(arc_weight(&p("1234"), &p("3412")).unwrap(), Some(2));
        assert_eq!(arc_weight(&p("1234"), &p("2314")).unwrap(), None);
        assert_eq!(arc_weight(&p("1234"), &p("1234")), Err(Error::SelfArc));
        assert!(arc_weight(&p("123"), &p("1234")).is_err());
    }

    #[test]
    fn small_graphs() {
        let g = OverlapDigraph::build(2, 7).unwrap();
        assert_eq!(g.out_arcs(0), &[(1, 1)]);
        assert_eq!(g.out_arcs(1), &[(0, 1)]);
        let g = OverlapDigraph::build(3, 7).unwrap();
        assert!((0..6).all(|v| g.out_arcs(v).len() == 3));
        assert_eq!(g.arc_count(), 18);
        assert!(matches!(
            OverlapDigraph::build(8, 8),
            Err(Error::ResourceCap { cap: 7, .. })
        ));
        assert!(matches!(
            OverlapDigraph::build(5, 4),
            Err(Error::ResourceCap { .. })
        ));
    }

    #[test]
    fn vertices_follow_rank_order() {
        let g = OverlapDigraph::build(5, 7).unwrap();
        let oracle = crate::codec::oracle_generate(5).unwrap();
        assert!((0..120).all(|i| g.vertex(i) == &oracle[i]));
    }

    #[test]
    fn degree_examples() {
        let profile = degree_profile(&OverlapDigraph::build(4, 7).unwrap());
        assert!(profile.holds());
        assert_eq!(profile.regular_degree, 9);
        let profile = degree_profile(&OverlapDigraph::build(2, 7).unwrap());
        assert_eq!(profile.regular_degree, 1);
        assert!(profile.holds());
        let profile = degree_profile(&OverlapDigraph::build(5, 7).unwrap());
        assert_eq!(profile.regular_degree, 33);
        assert!(profile.out_by_weight.iter().all(|row| row[2] == 6));
        assert!(profile.holds());
    }

    #[test]
    fn canonical_path_examples() {
        assert_eq!(canonical_path(4, 10).unwrap().total, 29);
        assert_eq!(canonical_path(2, 10).unwrap().total, 1);
        let five = canonical_path(5, 10).unwrap();
        assert_eq!(five.total, 148);
        five.verify().unwrap();
        assert!(!five.optimal);
    }

    #[test]
    fn cycle_examples() {
        let cycle = close_cycle(&canonical_path(4, 10).unwrap()).unwrap();
        assert_eq!(cycle.total, 32);
        assert_eq!(cycle.weights.last(), Some(&3));
        assert_eq!(&cycle.vertices[22..], &[22, 23, 0]);
        cycle.verify().unwrap();
        assert_eq!(close_cycle(&canonical_path(2, 10).unwrap()).unwrap().total, 2);
        assert_eq!(close_cycle(&canonical_path(5, 10).unwrap()).unwrap().total, 152);
        assert!(close_cycle(&cycle).is_err());
    }

    #[test]
    fn compressed_word_examples() {
        let three = compressed_word(3, 10).unwrap();
        assert_eq!(three.len(), 9);
        assert_eq!(three.to_string(), "123121321");
        assert_eq!(distinct_permutation_windows(&three), 6);
        assert_eq!(compressed_word(1, 10).unwrap().to_string(), "1");
        let four = compressed_word(4, 10).unwrap();
        assert_eq!(four.len(), 33);
        assert_eq!(four.to_string(), "123412314231243121342132413214321");
        assert_eq!(distinct_permutation_windows(&four), 24);
    }

    #[test]
    fn min_path_small() {
        for (n, expected) in [(2, 1), (3, 6)] {
            let g = OverlapDigraph::build(n, 7).unwrap();
            let cert = min_hamiltonian_path(&g, SearchOptions::default()).unwrap();
            assert_eq!(cert.total, expected);
            assert!(cert.optimal);
            cert.verify().unwrap();
        }
    }

    #[test]
    fn min_path_budget_is_reported() {
        let g = OverlapDigraph::build(3, 7).unwrap();
        let result = min_hamiltonian_path(&g, SearchOptions { budget: Some(1) });
        match result {
            Ok(cert) => assert!(!cert.optimal && cert.stats.unwrap().budget_exhausted),
            Err(Error::LawViolation(msg)) => assert!(msg.contains("budget")),
            Err(other) => panic!("unexpected {other}"),
        }
    }

    #[test]
    fn disconnected_graph_is_rejected() {
        let mut g = OverlapDigraph::build(3, 7).unwrap();
        assert!(g.is_strongly_connected());
        g.drop_arcs_into(4);
        assert!(!g.is_strongly_connected());
        assert_eq!(
            min_hamiltonian_path(&g, SearchOptions::default()),
            Err(Error::Disconnected)
        );
    }

    #[test]
    fn export_formats() {
        let g = OverlapDigraph::build(2, 7).unwrap();
        assert_eq!(
            export(&g, ExportFormat::Dot),
            "digraph G2 {\n  0 [label=\"0:12\"];\n  1 [label=\"1:21\"];\n  0 -> 1 [label=\"1\"];\n  1 -> 0 [label=\"1\"];\n}\n"
        );
        assert_eq!(export(&g, ExportFormat::Csv), "0,1\n1,0\n");
        let g3 = OverlapDigraph::build(3, 7).unwrap();
        let arcs: serde_json::Value = serde_json::from_str(&export(&g3, ExportFormat::Json)).unwrap();
        assert_eq!(arcs.as_array().unwrap().len(), 18);
        assert_eq!(arcs[0], serde_json::json!({"from": 0, "to": 1, "w": 1}));
        assert_eq!("xml".parse::<ExportFormat>(), Err(Error::UnknownFormat("xml".into())));
    }
}
