//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion
//! and exits non-zero if any fails.

use std::process::{Command, ExitCode};
use std::time::Instant;

use num_bigint::BigUint;
use shiftrank::codec::{generate_all, oracle_generate, perm_to_code};
use shiftrank::overlap::{
    canonical_path, compressed_word, distinct_permutation_windows, min_hamiltonian_path,
    OverlapDigraph, SearchOptions,
};
use shiftrank::radix::{check_identities, factorial};
use shiftrank::symmetry::{palindrome_word, ruler_sequence, ruler_total, weight_histogram};
use shiftrank::verify::{verify_suite, Caps, CheckStatus, Suite};
use shiftrank::{perm_to_rank, rank_to_perm, Permutation, PiNumber};

type Check = Result<String, String>;
type Criterion = (&'static str, fn() -> Check);

const S4_CODES: [(&str, &str); 24] = [
    ("1234", "000"),
    ("2341", "001"),
    ("3412", "002"),
    ("4123", "003"),
    ("2314", "010"),
    ("3142", "011"),
    ("1423", "012"),
    ("4231", "013"),
    ("3124", "020"),
    ("1243", "021"),
    ("2431", "022"),
    ("4312", "023"),
    ("2134", "100"),
    ("1342", "101"),
    ("3421", "102"),
    ("4213", "103"),
    ("1324", "110"),
    ("3241", "111"),
    ("2413", "112"),
    ("4132", "113"),
    ("3214", "120"),
    ("2143", "121"),
    ("1432", "122"),
    ("4321", "123"),
];

const RULER_RUNS: [&str; 4] = [
    "1",
    "1^2 2 1^2",
    "1^3 2 1^3 2 1^3 3 1^3 2 1^3 2 1^3",
    "1^4 2 1^4 2 1^4 2 1^4 3 1^4 2 1^4 2 1^4 2 1^4 3 1^4 2 1^4 2 1^4 2 1^4 4 \
     1^4 2 1^4 2 1^4 2 1^4 3 1^4 2 1^4 2 1^4 2 1^4 3 1^4 2 1^4 2 1^4 2 1^4",
];

const G4_MATRIX: [&str; 24] = [
    "012300030003002300030003",
    "301200300300030030020030",
    "230130000230300000300300",
    "123023003000003003003000",
    "000301230003000300030023",
    "030030120030300200300300",
    "023023013000003003003000",
    "300012302300030030000030",
    "000300030123000300230003",
    "003003003012003003003002",
    "300002302301030030000030",
    "230030001230300000300300",
    "002300030003012300030003",
    "030030020030301200300300",
    "300000300300230130000230",
    "003003003000123023003000",
    "000300030023000301230003",
    "300200300300030030120030",
    "003003003000023023013000",
    "030030000030300012302300",
    "000300230003000300030123",
    "003003003002003003003012",
    "030030000030300002302301",
    "300000300300230030001230",
];

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn shiftrank(args: &[&str]) -> std::process::Output {
    Command::new(env!("CARGO_BIN_EXE_shiftrank"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn s4_listing() -> Check {
    let out = shiftrank(&["list", "--n", "4", "--format", "tsv"]);
    ensure(out.status.success(), || format!("exit {:?}", out.status))?;
    let text = String::from_utf8(out.stdout).map_err(|e| e.to_string())?;
    let lines: Vec<&str> = text.lines().collect();
    ensure(lines.len() == 24, || format!("{} rows", lines.len()))?;
    for (a, (line, (perm, code))) in lines.iter().zip(S4_CODES).enumerate() {
        let expected = format!("{a}\t{code}_w\t{perm}");
        ensure(*line == expected, || format!("row {a}: `{line}` != `{expected}`"))?;
    }
    Ok("24 rows match".into())
}

fn worked_examples() -> Check {
    let p84 = rank_to_perm(5, &BigUint::from(84u32)).map_err(|e| e.to_string())?;
    ensure(p84.to_string() == "51324", || format!("unrank 84 = {p84}"))?;
    let q: Permutation = "42315".parse().map_err(|e: shiftrank::Error| e.to_string())?;
    let r35 = perm_to_rank(&q);
    ensure(r35.rank == BigUint::from(35u32), || format!("rank 42315 = {}", r35.rank))?;
    let c84 = perm_to_code(&p84);
    ensure(c84.to_string() == "1104", || format!("code 84 = {c84}"))?;
    ensure(r35.code.to_string() == "0130", || format!("code 35 = {}", r35.code))?;
    let sum = c84.add(&r35.code).map_err(|e| e.to_string())?;
    ensure(sum == PiNumber::max_value(5).unwrap(), || format!("84 + 35 = {sum}"))?;
    ensure(c84.complement() == r35.code, || "codes are not complements".into())?;
    ensure(p84.mirror() == q, || "not mirror images".into())?;
    Ok("p_84 = 51324, rank 35, 84 + 35 = -1, complement digits".into())
}

fn identities() -> Check {
    for n in 2..=16 {
        let report = check_identities(n).map_err(|e| e.to_string())?;
        ensure(report.all_passed(), || format!("n = {n}: {report:?}"))?;
    }
    Ok("n = 2..16".into())
}

fn codec_bijection() -> Check {
    let caps = Caps::default();
    for n in 2..=8 {
        let report = verify_suite(n, &[Suite::Roundtrip], caps).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.render_text())?;
        let first = &report.results[0];
        ensure(first.status == CheckStatus::Pass, || format!("n = {n}: {first:?}"))?;
    }
    for n in [12, 20] {
        let report = verify_suite(n, &[Suite::Roundtrip], caps).map_err(|e| e.to_string())?;
        let first = &report.results[0];
        ensure(
            first.status == CheckStatus::Pass && first.detail == "10000 random ranks",
            || format!("n = {n}: {first:?}"),
        )?;
    }
    Ok("exhaustive 2 <= n <= 8, 10^4 samples at n = 12, 20".into())
}

fn oracle_equivalence() -> Check {
    for n in 1..=8 {
        let oracle = oracle_generate(n).map_err(|e| e.to_string())?;
        let fast: Vec<Permutation> = generate_all(n).unwrap().map(|r| r.perm).collect();
        ensure(fast == oracle, || format!("n = {n} differs"))?;
    }
    Ok("n <= 8".into())
}

fn ruler() -> Check {
    for (n, expected) in (2..=5).zip(RULER_RUNS) {
        let got = ruler_sequence(n, 8).map_err(|e| e.to_string())?.run_length();
        let expected = expected.split_whitespace().collect::<Vec<_>>().join(" ");
        ensure(got == expected, || format!("E_{n} = {got}"))?;
    }
    for n in 2..=8 {
        let e = ruler_sequence(n, 8).map_err(|e| e.to_string())?;
        ensure(e.is_palindrome(), || format!("E_{n} is not a palindrome"))?;
        let hist = e.histogram();
        let formula = weight_histogram(n).map_err(|e| e.to_string())?;
        ensure(hist == formula, || format!("n = {n}: histogram {hist:?}"))?;
        for (&k, count) in &formula.counts {
            let m = n - k;
            ensure(*count == factorial(m) * m, || format!("n = {n}, weight {k}: {count}"))?;
        }
        ensure(BigUint::from(e.total()) == ruler_total(n), || format!("sum E_{n}"))?;
    }
    Ok("run-length E_n for n = 2..5, palindrome and histogram n <= 8".into())
}

fn palindrome() -> Check {
    for n in 1..=8 {
        let w = palindrome_word(n, 8).map_err(|e| e.to_string())?;
        let len = n * factorial(n).to_string().parse::<usize>().unwrap();
        ensure(w.len() == len && w.is_palindrome(), || format!("n = {n}"))?;
    }
    Ok("n <= 8, length 322560 at n = 8".into())
}

fn graph_laws() -> Check {
    let g = OverlapDigraph::build(4, 4).map_err(|e| e.to_string())?;
    for (a, expected) in G4_MATRIX.iter().enumerate() {
        let row: String = g.row(a).iter().map(|w| w.to_string()).collect();
        ensure(row == *expected, || format!("row {a}: {row}"))?;
    }
    for n in 2..=6 {
        let report = verify_suite(n, &[Suite::Graph], Caps::default()).map_err(|e| e.to_string())?;
        ensure(report.passed(), || report.render_text())?;
        ensure(
            report.results.iter().all(|r| r.status == CheckStatus::Pass),
            || report.render_text(),
        )?;
    }
    for n in 2..=7 {
        let path = canonical_path(n, 7).map_err(|e| e.to_string())?;
        path.verify().map_err(|e| format!("n = {n}: {e}"))?;
    }
    Ok("G_4 matrix cell-for-cell, laws n <= 6, canonical path n <= 7".into())
}

fn minimal_path() -> Check {
    for (n, w) in [(2, 1u64), (3, 6), (4, 29)] {
        let g = OverlapDigraph::build(n, 4).map_err(|e| e.to_string())?;
        let cert = min_hamiltonian_path(&g, SearchOptions::default()).map_err(|e| e.to_string())?;
        cert.verify().map_err(|e| e.to_string())?;
        ensure(cert.optimal && cert.total == w, || format!("n = {n}: {cert:?}"))?;
    }
    let five = canonical_path(5, 5).map_err(|e| e.to_string())?;
    ensure(five.total == 148, || format!("w_5 = {}", five.total))?;
    let out = shiftrank(&["minpath", "--n", "5"]);
    let msg = String::from_utf8_lossy(&out.stderr);
    ensure(
        out.status.code() == Some(2) && msg.contains("out of exact-search scope") && msg.contains("148"),
        || format!("minpath --n 5: {:?} {msg}", out.status),
    )?;
    Ok("optimal 1, 6, 29; n = 5 out of scope, w_5 = 148".into())
}

fn compressed() -> Check {
    for n in 2..=7 {
        let word = compressed_word(n, 7).map_err(|e| e.to_string())?;
        let expected = ruler_total(n) + n;
        ensure(BigUint::from(word.len()) == expected, || format!("n = {n}: {}", word.len()))?;
        let found = distinct_permutation_windows(&word);
        ensure(BigUint::from(found) == factorial(n), || format!("n = {n}: {found}"))?;
    }
    let seven = compressed_word(7, 7).unwrap();
    ensure(seven.len() == 5913, || format!("n = 7: {}", seven.len()))?;
    Ok("n <= 7, n = 7 length 5913 with 5040 permutations".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("S_4 listing with codes", s4_listing),
        ("worked examples", worked_examples),
        ("identity suite", identities),
        ("codec bijection", codec_bijection),
        ("oracle equivalence", oracle_equivalence),
        ("ruler sequence", ruler),
        ("palindrome word", palindrome),
        ("graph laws", graph_laws),
        ("minimal path at desk scale", minimal_path),
        ("compressed word", compressed),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = check();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("criterion {:>2} PASS  {name}: {detail} ({secs:.2}s)", i + 1),
            Err(why) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name}: {why} ({secs:.2}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
