//! Acceptance criteria 1-10, each against its runtime budget. Prints one
//! line per criterion and fails at the end if any criterion failed.

use std::io::Write;
use std::process::Command;
use std::time::{Duration, Instant};

use hitchin_cli::args::Mutation;
use hitchin_cli::battery::{self, BatteryConfig, SuiteReport};

const SEED: u64 = 7;

struct Verdict {
    id: usize,
    title: &'static str,
    pass: bool,
    elapsed: Duration,
    budget: Duration,
    detail: String,
}

fn secs(s: f64) -> Duration {
    Duration::from_secs_f64(s)
}

fn summarize(reports: &[SuiteReport]) -> (bool, String) {
    let pass = reports.iter().all(|r| r.pass);
    let detail = reports
        .iter()
        .map(|r| {
            let shown = if r.failures.is_empty() {
                String::new()
            } else {
                format!(" {:?}", r.failures)
            };
            format!("{}: {}/{} failed{shown}", r.name, r.failed, r.cases)
        })
        .collect::<Vec<_>>()
        .join("; ");
    (pass, detail)
}

fn criterion(id: usize, title: &'static str, budget: Duration, body: impl FnOnce() -> (bool, String)) -> Verdict {
    let start = Instant::now();
    let (pass, detail) = body();
    let elapsed = start.elapsed();
    let v = Verdict {
        id,
        title,
        pass: pass && elapsed < budget,
        elapsed,
        budget,
        detail,
    };
    // Straight to the handle so the lines survive libtest output capture.
    let _ = writeln!(
        std::io::stdout(),
        "criterion {:>2} {:<34} {} ({:.2?} of {:.0?}) {}",
        v.id,
        v.title,
        if v.pass { "PASS" } else { "FAIL" },
        v.elapsed,
        v.budget,
        v.detail
    );
    v
}

fn suites(names: &[&str], config: &BatteryConfig) -> (bool, String) {
    let reports: Vec<SuiteReport> = battery::SUITES
        .iter()
        .filter(|(name, _)| names.contains(name))
        .map(|(_, suite)| suite(config))
        .collect();
    assert_eq!(reports.len(), names.len(), "unknown suite among {names:?}");
    summarize(&reports)
}

fn verify_all_once() -> (Vec<u8>, Option<i32>, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_hitchin"))
        .args(["verify-all", "--seed", &SEED.to_string()])
        .output()
        .expect("binary runs");
    (out.stdout, out.status.code(), start.elapsed())
}

#[test]
fn acceptance_criteria() {
    let clean = BatteryConfig {
        seed: SEED,
        mutation: None,
    };
    let mutated = BatteryConfig {
        seed: SEED,
        mutation: Some(Mutation::PfaffianSign),
    };
    let verdicts = vec![
        criterion(1, "dimension identity", secs(1.0), || {
            suites(&["dimension_identity"], &clean)
        }),
        criterion(2, "genus tables", secs(1.0), || suites(&["genus_tables"], &clean)),
        criterion(3, "prym dimensions", secs(1.0), || suites(&["prym_dimensions"], &clean)),
        criterion(4, "correspondence round trip", secs(30.0), || {
            suites(&["correspondence_round_trip"], &clean)
        }),
        criterion(5, "local model", secs(1.0), || suites(&["local_model"], &clean)),
        criterion(6, "char structure and mutation", secs(10.0), || {
            let (pass, detail) = suites(&["char_structure", "pfaffian_squared"], &clean);
            let mutant = battery::pfaffian_squared(&mutated);
            let caught = !mutant.pass && mutant.failed > 0;
            (
                pass && caught,
                format!("{detail}; mutant caught on {}/{} cases", mutant.failed, mutant.cases),
            )
        }),
        criterion(7, "real form table", secs(30.0), || {
            suites(&["real_form_table"], &clean)
        }),
        criterion(8, "norm map", secs(5.0), || suites(&["norm_map"], &clean)),
        criterion(9, "parity rule", secs(1.0), || suites(&["parity_rule"], &clean)),
        criterion(10, "determinism of verify-all", secs(120.0), || {
            let (first, code_a, t_a) = verify_all_once();
            let (second, code_b, t_b) = verify_all_once();
            let limit = secs(60.0);
            let pass = first == second && code_a == Some(0) && code_b == Some(0) && t_a < limit && t_b < limit;
            (
                pass,
                format!(
                    "runs {t_a:.2?} and {t_b:.2?}, exit {code_a:?}/{code_b:?}, identical: {}",
                    first == second
                ),
            )
        }),
    ];
    let failed: Vec<usize> = verdicts.iter().filter(|v| !v.pass).map(|v| v.id).collect();
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
