//! `shiftrank`: rank, unrank and inspect permutations generated by cyclic
//! shift.
//!
//! Exit status: 0 on success, 1 on bad input, 2 when a resource cap is hit,
//! 3 when `verify` finds a failing check.

use std::fmt::Write as _;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;
use shiftrank::codec::{Generator, RankedPermutation};
use shiftrank::orbits::orbit_tree;
use shiftrank::overlap::{
    canonical_path, close_cycle, compressed_word, degree_profile, distinct_permutation_windows,
    export, min_hamiltonian_path, ExportFormat, OverlapDigraph, SearchOptions, GRAPH_MAX_ORDER,
    WORD_MAX_ORDER,
};
use shiftrank::radix::factorial;
use shiftrank::symmetry::{
    mirror_rank, palindrome_word, ruler_sequence, PALINDROME_MAX_ORDER, RULER_MAX_ORDER,
};
use shiftrank::verify::{verify_suite, Caps, Suite};
use shiftrank::{perm_to_rank, rank_to_perm, Error, PiNumber, Permutation};

/// Largest order `list` prints in full without `--range`.
const LIST_MAX_ORDER: usize = 10;
/// Largest order searched exactly unless `--budget` is given.
const MINPATH_MAX_ORDER: usize = 4;

#[derive(Debug, Parser)]
#[command(name = "shiftrank", version, about = "Permutations coded by cyclic shift")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Order of the symmetric group.
    #[arg(long, global = true)]
    n: Option<usize>,

    #[arg(long, global = true, value_enum)]
    format: Option<Format>,

    /// Rank interval `a..b` (end exclusive).
    #[arg(long, global = true)]
    range: Option<String>,

    /// Write data here instead of standard output.
    #[arg(long, global = true)]
    output: Option<PathBuf>,

    /// Largest order for word outputs (ruler, palindrome, superperm).
    #[arg(long, global = true)]
    cap_word: Option<usize>,

    /// Largest order for which the overlap digraph is materialised.
    #[arg(long, global = true)]
    cap_graph: Option<usize>,

    /// Node budget for the exact path search.
    #[arg(long, global = true)]
    budget: Option<u64>,

    /// Checks to run: `all` or a comma-separated list.
    #[arg(long, global = true, default_value = "all")]
    suite: String,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Rank and code of a permutation.
    Rank { perm: String },
    /// Permutation with the given rank.
    Unrank { rank: String },
    /// All permutations in rank order.
    List,
    /// Digits of a rank, or of the rank of a permutation.
    Code { value: String },
    /// Nested k-orbit blocks.
    Orbits {
        /// Stop descending at this level.
        #[arg(long, default_value_t = 0)]
        min_level: usize,
    },
    /// Transition weights between consecutive permutations.
    Ruler,
    /// Mirror image of a permutation and its rank.
    Mirror { perm: String },
    /// Concatenation of all permutations in rank order.
    Palindrome,
    /// Weighted overlap digraph.
    Graph,
    /// Minimum-weight Hamiltonian path of the overlap digraph.
    Minpath,
    /// Word containing every permutation, built along the rank order.
    Superperm,
    /// Run the law checks.
    Verify,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Tsv,
    Json,
    Csv,
    Dot,
    Runlength,
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Rank { .. } => "rank",
            Command::Unrank { .. } => "unrank",
            Command::List => "list",
            Command::Code { .. } => "code",
            Command::Orbits { .. } => "orbits",
            Command::Ruler => "ruler",
            Command::Mirror { .. } => "mirror",
            Command::Palindrome => "palindrome",
            Command::Graph => "graph",
            Command::Minpath => "minpath",
            Command::Superperm => "superperm",
            Command::Verify => "verify",
        }
    }

    fn formats(&self) -> &'static [Format] {
        use Format::*;
        match self {
            Command::Rank { .. }
            | Command::Unrank { .. }
            | Command::Mirror { .. }
            | Command::List => &[Text, Tsv, Json],
            Command::Code { .. } => &[Text, Json],
            Command::Ruler => &[Text, Runlength, Json],
            Command::Graph => &[Text, Dot, Csv, Json],
            Command::Orbits { .. }
            | Command::Palindrome
            | Command::Minpath
            | Command::Superperm
            | Command::Verify => &[Text, Json],
        }
    }
}

/// Failure of a command, mapped to an exit status.
enum Failure {
    Domain(String),
    Cap(String),
    Verification,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        if e.is_resource_cap() {
            Failure::Cap(e.to_string())
        } else {
            Failure::Domain(e.to_string())
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Domain(format!("i/o error: {e}"))
    }
}

type Run<T = ()> = Result<T, Failure>;

fn domain<T>(msg: impl Into<String>) -> Run<T> {
    Err(Failure::Domain(msg.into()))
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string(value).expect("serialisable");
    s.push('\n');
    s
}

fn parse_rank(text: &str) -> Run<BigUint> {
    text.trim()
        .parse()
        .or_else(|_| domain(format!("`{text}` is not a decimal rank")))
}

fn parse_perm(n: usize, text: &str) -> Run<Permutation> {
    if n > 9 && !text.contains(',') {
        return domain("permutations with n > 9 must be comma-separated");
    }
    let p: Permutation = text.parse()?;
    if p.order() != n {
        return domain(format!("`{text}` has {} symbols, expected {n}", p.order()));
    }
    Ok(p)
}

fn parse_range(n: usize, text: &str) -> Run<(BigUint, BigUint)> {
    let (a, b) = text
        .split_once("..")
        .ok_or_else(|| Failure::Domain(format!("range `{text}` is not of the form a..b")))?;
    let start = if a.is_empty() { BigUint::default() } else { parse_rank(a)? };
    let end = if b.is_empty() { factorial(n) } else { parse_rank(b)? };
    if start > end {
        return domain(format!("range `{text}` is empty or reversed"));
    }
    Ok((start, end))
}

fn ranked_record(format: Format, item: &RankedPermutation) -> String {
    match format {
        Format::Tsv => format!("{}\n", item.to_tsv()),
        Format::Json => to_json(item),
        _ => format!("{}\n", item.perm),
    }
}

fn ranked(p: Permutation) -> RankedPermutation {
    perm_to_rank(&p)
}

fn run(cli: &Cli, out: &mut dyn Write) -> Run {
    let format = cli.format.unwrap_or(Format::Text);
    if !cli.command.formats().contains(&format) {
        return domain(format!(
            "format `{}` is not available for `{}`",
            format.to_possible_value().expect("no skipped variants").get_name(),
            cli.command.name()
        ));
    }
    let n = cli
        .n
        .ok_or_else(|| Failure::Domain("missing --n <order>".into()))?;
    if n == 0 {
        return domain("n must be at least 1");
    }
    if cli.range.is_some() && !matches!(cli.command, Command::List) {
        return domain("--range only applies to `list`");
    }

    match &cli.command {
        Command::Rank { perm } => {
            let item = ranked(parse_perm(n, perm)?);
            let text = match format {
                Format::Text => format!("{}\ncode {}\n", item.rank, item.code),
                _ => ranked_record(format, &item),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Unrank { rank } => {
            let item = ranked(rank_to_perm(n, &parse_rank(rank)?)?);
            out.write_all(ranked_record(format, &item).as_bytes())?;
        }
        Command::Code { value } => {
            let rank = if value.contains(',') || value.starts_with('(') {
                perm_to_rank(&parse_perm(n, value)?).rank
            } else {
                parse_rank(value)?
            };
            if n < 2 {
                return domain("codes need n >= 2");
            }
            let code = PiNumber::encode(n, &rank)?;
            let text = match format {
                Format::Json => to_json(&code),
                _ => format!("{code}\n"),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::List => {
            let (start, end) = match &cli.range {
                Some(r) => parse_range(n, r)?,
                None if n > LIST_MAX_ORDER => {
                    return Err(Failure::Cap(format!(
                        "listing all of S_{n} exceeds the cap n <= {LIST_MAX_ORDER}; use --range"
                    )))
                }
                None => (BigUint::default(), factorial(n)),
            };
            let generator = Generator::range(n, start, end)?;
            if format == Format::Json {
                out.write_all(b"[")?;
                for (i, item) in generator.enumerate() {
                    if i > 0 {
                        out.write_all(b",")?;
                    }
                    out.write_all(serde_json::to_string(&item).expect("serialisable").as_bytes())?;
                }
                out.write_all(b"]\n")?;
            } else {
                for item in generator {
                    out.write_all(ranked_record(format, &item).as_bytes())?;
                }
            }
        }
        Command::Orbits { min_level } => {
            let tree = orbit_tree(n, *min_level)?;
            let text = match format {
                Format::Json => to_json(&tree),
                _ => tree.render_text(),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Ruler => {
            let cap = cli.cap_word.unwrap_or(RULER_MAX_ORDER);
            let ruler = ruler_sequence(n, cap)?;
            let text = match format {
                Format::Runlength => format!("{}\n", ruler.run_length()),
                Format::Json => {
                    let weights: Vec<u8> = ruler.weights().to_vec();
                    to_json(&serde_json::json!({
                        "n": n,
                        "weights": weights,
                        "total": ruler.total(),
                        "histogram": ruler.histogram(),
                    }))
                }
                _ => {
                    let parts: Vec<String> = ruler.weights().iter().map(u8::to_string).collect();
                    format!("{}\n", parts.join(" "))
                }
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Mirror { perm } => {
            let p = parse_perm(n, perm)?;
            let a = perm_to_rank(&p).rank;
            let m = mirror_rank(n, &a)?;
            let item = ranked(rank_to_perm(n, &m)?);
            let text = match format {
                Format::Text => format!("{}\nrank {}\n", item.perm, item.rank),
                _ => ranked_record(format, &item),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Palindrome => {
            let cap = cli.cap_word.unwrap_or(PALINDROME_MAX_ORDER);
            let word = palindrome_word(n, cap)?;
            let text = match format {
                Format::Json => to_json(&serde_json::json!({
                    "n": n,
                    "length": word.len(),
                    "palindrome": word.is_palindrome(),
                    "word": word.to_string(),
                })),
                _ => format!("{word}\n"),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Graph => {
            let cap = cli.cap_graph.unwrap_or(GRAPH_MAX_ORDER);
            let g = OverlapDigraph::build(n, cap)?;
            let text = match format {
                Format::Dot => export(&g, ExportFormat::Dot),
                Format::Csv => export(&g, ExportFormat::Csv),
                Format::Json => export(&g, ExportFormat::Json),
                _ => {
                    let profile = degree_profile(&g);
                    let mut s = String::new();
                    let _ = writeln!(s, "vertices {}", g.vertex_count());
                    let _ = writeln!(s, "arcs {}", g.arc_count());
                    for (j, count) in profile.out_by_weight[0].iter().enumerate() {
                        let _ = writeln!(s, "weight {}: {count} out-arcs per vertex", j + 1);
                    }
                    let _ = writeln!(s, "regular {}", profile.holds());
                    let _ = writeln!(s, "strongly connected {}", g.is_strongly_connected());
                    s
                }
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Minpath => {
            if n > MINPATH_MAX_ORDER && cli.budget.is_none() {
                let path = canonical_path(n, WORD_MAX_ORDER)?;
                return Err(Failure::Cap(format!(
                    "n = {n} is out of exact-search scope (n <= {MINPATH_MAX_ORDER}); \
                     canonical path weight {} validated; pass --budget to search anyway",
                    path.total
                )));
            }
            let cap = cli.cap_graph.unwrap_or(GRAPH_MAX_ORDER);
            let g = OverlapDigraph::build(n, cap)?;
            let cert = min_hamiltonian_path(&g, SearchOptions { budget: cli.budget })?;
            cert.verify()?;
            let canonical = canonical_path(n, cap.max(n))?;
            let cycle = close_cycle(&canonical)?;
            let text = match format {
                Format::Json => to_json(&serde_json::json!({
                    "n": n,
                    "best": cert,
                    "canonical_total": canonical.total,
                    "canonical_cycle_total": cycle.total,
                })),
                _ => {
                    let mut s = String::new();
                    let verdict = if cert.optimal { "optimal" } else { "best found (budget exhausted)" };
                    let _ = writeln!(s, "minimum {} {verdict}", cert.total);
                    let ranks: Vec<String> = cert.vertices.iter().map(u64::to_string).collect();
                    let _ = writeln!(s, "path {}", ranks.join(" "));
                    if let Some(stats) = &cert.stats {
                        let _ = writeln!(
                            s,
                            "nodes {} cutoffs {}",
                            stats.nodes_expanded, stats.bound_cutoffs
                        );
                    }
                    let _ = writeln!(s, "canonical path {}", canonical.total);
                    let _ = writeln!(s, "canonical cycle {} (not claimed minimal)", cycle.total);
                    s
                }
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Superperm => {
            let cap = cli.cap_word.unwrap_or(WORD_MAX_ORDER);
            let word = compressed_word(n, cap)?;
            let text = match format {
                Format::Json => to_json(&serde_json::json!({
                    "n": n,
                    "length": word.len(),
                    "permutations": distinct_permutation_windows(&word),
                    "word": word.to_string(),
                })),
                _ => format!("{word}\n"),
            };
            out.write_all(text.as_bytes())?;
        }
        Command::Verify => {
            let suites = Suite::parse_selection(&cli.suite)?;
            let mut caps = Caps {
                budget: cli.budget,
                ..Caps::default()
            };
            if let Some(c) = cli.cap_graph {
                caps.graph = c.min(GRAPH_MAX_ORDER);
            }
            if let Some(c) = cli.cap_word {
                caps.word = c;
            }
            let report = verify_suite(n, &suites, caps)?;
            let text = match format {
                Format::Json => to_json(&report),
                _ => report.render_text(),
            };
            out.write_all(text.as_bytes())?;
            if !report.passed() {
                out.flush()?;
                return Err(Failure::Verification);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    let mut out: Box<dyn Write> = match &cli.output {
        Some(path) => match File::create(path) {
            Ok(f) => Box::new(BufWriter::new(f)),
            Err(e) => {
                eprintln!("shiftrank: cannot create {}: {e}", path.display());
                return ExitCode::from(1);
            }
        },
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let result = run(&cli, &mut out).and_then(|()| out.flush().map_err(Failure::from));
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Domain(msg)) => {
            eprintln!("shiftrank: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Cap(msg)) => {
            eprintln!("shiftrank: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Verification) => {
            let _ = out.flush();
            eprintln!("shiftrank: verification failed");
            ExitCode::from(3)
        }
    }
}
