//! One line per acceptance criterion; exits non-zero if any is red.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use nccumulant_verify::report::Params;
use nccumulant_verify::suites;

struct Criterion {
    number: u32,
    what: &'static str,
    suite: &'static str,
    n: usize,
    seeds: u64,
    limit: Option<Duration>,
}

const fn criterion(
    number: u32,
    what: &'static str,
    suite: &'static str,
    n: usize,
    seeds: u64,
    limit: Option<u64>,
) -> Criterion {
    let limit = match limit {
        Some(s) => Some(Duration::from_secs(s)),
        None => None,
    };
    Criterion { number, what, suite, n, seeds, limit }
}

const CRITERIA: &[Criterion] = &[
    criterion(1, "lattice counts, NC_n for n ≤ 8 and Π_n for n ≤ 6", "lattice-counts", 8, 1, Some(10)),
    criterion(2, "Möbius values and convolution on NC_5 and Π_4", "moebius", 7, 1, None),
    criterion(3, "Kreweras size and order reversal on NC_6, anti-isomorphism on NC_5", "kreweras", 6, 1, None),
    criterion(4, "moment-cumulant roundtrip, n ≤ 5, 5 seeds", "moment-cumulant", 5, 5, Some(30)),
    criterion(5, "free Brillinger formula, n ≤ 4, 5 seeds", "free-brillinger", 4, 5, Some(60)),
    criterion(6, "partial-cumulant join formula, n ≤ 5", "partial-cumulants", 5, 1, None),
    criterion(7, "closed forms of the eight- and three-point examples", "examples", 8, 1, None),
    criterion(8, "classical Brillinger and nested closed form, n ≤ 4, 3 seeds", "classical-brillinger", 4, 3, None),
    criterion(9, "freeness suite, product-cumulant formula n ≤ 4", "freeness", 4, 1, None),
    criterion(10, "factorization model characterization, n ≤ 4, 3 seeds", "freeness-characterization", 4, 3, None),
];

fn run(c: &Criterion) -> (bool, String) {
    let suite = suites::find(c.suite).expect("known suite");
    let start = Instant::now();
    let mut instances = 0;
    for seed in 0..c.seeds {
        let report = suite.run(&Params { n: c.n, ..suite.default_params() }, seed, None);
        instances += report.instances;
        if !report.passed() {
            return (false, report.text_line());
        }
    }
    let elapsed = start.elapsed();
    let timely = c.limit.is_none_or(|l| elapsed <= l);
    let limit = c.limit.map_or(String::new(), |l| format!(" (limit {}s)", l.as_secs()));
    (timely, format!("{instances} instances in {:.2}s{limit}", elapsed.as_secs_f64()))
}

fn check_all() -> (bool, String) {
    let start = Instant::now();
    let status = Command::new(env!("CARGO_BIN_EXE_nccumulant")).args(["check-all", "--seed", "7"]).output();
    let elapsed = start.elapsed();
    match status {
        Ok(out) => {
            let code = out.status.code();
            let ok = code == Some(0) && elapsed <= Duration::from_secs(120);
            (ok, format!("exit {code:?} in {:.2}s (limit 120s)", elapsed.as_secs_f64()))
        }
        Err(e) => (false, e.to_string()),
    }
}

fn main() -> ExitCode {
    let mut all = true;
    for c in CRITERIA {
        let (ok, detail) = run(c);
        all &= ok;
        println!("criterion {:>2} {}: {} - {detail}", c.number, if ok { "PASS" } else { "FAIL" }, c.what);
    }
    let (ok, detail) = check_all();
    all &= ok;
    println!("criterion 11 {}: check-all at default bounds - {detail}", if ok { "PASS" } else { "FAIL" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
