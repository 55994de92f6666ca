//! The `verify-all` suites. Each suite draws from its own random stream,
//! so suites can be run alone and still see the same samples.

use std::collections::BTreeMap;
use std::time::{Duration, Instant};

use hitchin_core::correspondence::{eigenline, pushforward_line, FractionalIdeal, SpectralAlgebra};
use hitchin_core::curves::{genus_report, so_even_desingularization, spectral_genus, CurveModel};
use hitchin_core::divisors::{
    fiber_divisor, fiber_points, norm, parity_invariant, sigma_divisor, BaseDivisor, Divisor, SpectralPoint,
};
use hitchin_core::invariants::{dimensions, validate_matrix, Group, GroupKind};
use hitchin_core::real_forms::{cartan_decomposition, maximal_compact_dim, split_rank_check, verify_row, RealForm};
use hitchin_core::sampling::{random_algebra_element, smooth_higgs};
use hitchin_exact::pfaffian::pfaffian_sign_mutant;
use hitchin_exact::rational::int;
use hitchin_exact::{char_poly, pfaffian, BiPoly, PolyMat, Rational, SpectralPolynomial, UniPoly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::args::Mutation;
use crate::corpus;

const KINDS: [GroupKind; 5] = [
    GroupKind::Gl,
    GroupKind::Sl,
    GroupKind::Sp,
    GroupKind::SoOdd,
    GroupKind::SoEven,
];
const MAX_FAILURES_SHOWN: usize = 10;

#[derive(Clone, Copy, Debug)]
pub struct BatteryConfig {
    pub seed: u64,
    pub mutation: Option<Mutation>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub name: &'static str,
    pub cases: usize,
    pub failed: usize,
    pub failures: Vec<String>,
    pub pass: bool,
}

pub struct SuiteRun {
    pub report: SuiteReport,
    pub elapsed: Duration,
}

struct Tally {
    name: &'static str,
    cases: usize,
    failed: usize,
    failures: Vec<String>,
}

impl Tally {
    fn new(name: &'static str) -> Self {
        Tally {
            name,
            cases: 0,
            failed: 0,
            failures: Vec::new(),
        }
    }

    fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        self.cases += 1;
        if !ok {
            self.fail(what());
        }
    }

    fn fail(&mut self, message: String) {
        self.failed += 1;
        if self.failures.len() < MAX_FAILURES_SHOWN {
            self.failures.push(message);
        }
    }

    /// Counts one case whose computation may itself error out.
    fn attempt<E: std::fmt::Display>(&mut self, label: impl Fn() -> String, outcome: Result<bool, E>) {
        match outcome {
            Ok(ok) => self.check(ok, label),
            Err(e) => {
                self.cases += 1;
                self.fail(format!("{}: {e}", label()));
            }
        }
    }

    fn finish(self) -> SuiteReport {
        SuiteReport {
            name: self.name,
            cases: self.cases,
            failed: self.failed,
            pass: self.failed == 0 && self.cases > 0,
            failures: self.failures,
        }
    }
}

pub type Suite = fn(&BatteryConfig) -> SuiteReport;

/// Every suite, in reporting order.
pub const SUITES: [(&str, Suite); 10] = [
    ("dimension_identity", dimension_identity),
    ("genus_tables", genus_tables),
    ("prym_dimensions", prym_dimensions),
    ("correspondence_round_trip", correspondence_round_trip),
    ("local_model", local_model),
    ("char_structure", char_structure),
    ("pfaffian_squared", pfaffian_squared),
    ("real_form_table", real_form_table),
    ("norm_map", norm_map),
    ("parity_rule", parity_rule),
];

pub fn run_all(config: &BatteryConfig) -> Vec<SuiteRun> {
    SUITES
        .iter()
        .map(|(_, suite)| {
            let start = Instant::now();
            let report = suite(config);
            SuiteRun {
                report,
                elapsed: start.elapsed(),
            }
        })
        .collect()
}

fn stream(config: &BatteryConfig, k: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(config.seed);
    rng.set_stream(k);
    rng
}

/// Groups of every kind with `n <= max_n`; `SL(1)` and `SO(2)` do not exist
/// as semisimple groups and are left out.
fn groups(max_n: usize) -> impl Iterator<Item = Group> {
    KINDS
        .into_iter()
        .flat_map(move |kind| (1..=max_n).filter_map(move |n| Group::new(kind, n).ok()))
}

fn algebra_dim(group: Group) -> i64 {
    let n = group.n as i64;
    match group.kind {
        GroupKind::Gl => n * n,
        GroupKind::Sl => n * n - 1,
        GroupKind::Sp | GroupKind::SoOdd => n * (2 * n + 1),
        GroupKind::SoEven => n * (2 * n - 1),
    }
}

pub fn dimension_identity(_: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("dimension_identity");
    for g in 2..=5 {
        for group in groups(6) {
            let label = || format!("{group} g={g}");
            match dimensions(group, g) {
                Ok(r) => {
                    t.check(2 * r.base_dim == r.moduli_dim && r.half_dim_check, || {
                        format!("{}: half dimension", label())
                    });
                    if group.kind != GroupKind::Gl {
                        let exponents: i64 = r.degrees.iter().map(|&d| 2 * d as i64 - 1).sum();
                        t.check(exponents == algebra_dim(group), || {
                            format!("{}: exponent sum {exponents}", label())
                        });
                    }
                }
                Err(e) => t.fail(format!("{}: {e}", label())),
            }
        }
    }
    t.finish()
}

pub fn genus_tables(_: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("genus_tables");
    for g in 2..=5 {
        for group in groups(5) {
            let n = group.n as i64;
            let expected = match group.kind {
                GroupKind::Gl | GroupKind::Sl => 1 + n * n * (g - 1),
                _ => 1 + 4 * n * n * (g - 1),
            };
            let got = CurveModel::new(group, g, None).map(|m| spectral_genus(&m));
            t.attempt(|| format!("{group} g={g}: spectral genus"), got.map(|s| s == expected));
        }
        for n in 2..=5 {
            match so_even_desingularization(n, g) {
                Ok(r) => {
                    t.check(r.desing_genus == Some(1 + 2 * n * (2 * n - 1) * (g - 1)), || {
                        format!("SO({}) g={g}: desingularized genus {:?}", 2 * n, r.desing_genus)
                    });
                    t.check(
                        r.notes.iter().any(|s| s.starts_with("quotient-genus-discrepancy")),
                        || format!("SO({}) g={g}: discrepancy not flagged", 2 * n),
                    );
                }
                Err(e) => t.fail(format!("SO({}) g={g}: {e}", 2 * n)),
            }
        }
    }
    t.finish()
}

pub fn prym_dimensions(_: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("prym_dimensions");
    for g in 2..=5 {
        for group in groups(5).filter(|g| g.kind != GroupKind::Gl) {
            let outcome = CurveModel::new(group, g, None)
                .and_then(|m| genus_report(&m))
                .and_then(|r| Ok(r.prym_dim == Some(dimensions(group, g)?.base_dim)));
            t.attempt(|| format!("{group} g={g}"), outcome);
        }
    }
    t.finish()
}

pub fn correspondence_round_trip(config: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("correspondence_round_trip");
    let mut rng = stream(config, 4);
    let mut samples = Vec::new();
    for n in 2..=4 {
        for k in 0..100 {
            match smooth_higgs(&mut rng, n, 3, 50) {
                Some((higgs, _)) => samples.push((n, k, higgs)),
                None => t.fail(format!("n={n} #{k}: no squarefree sample")),
            }
        }
    }
    let outcomes: Vec<_> = samples
        .par_iter()
        .map(|(n, k, higgs)| {
            let label = format!("n={n} #{k}");
            let check = || -> hitchin_core::Result<(bool, bool)> {
                let once = pushforward_line(&eigenline(higgs)?)?.higgs;
                let preserved = &char_poly(once.phi())? == higgs.char_poly();
                let twice = pushforward_line(&eigenline(&once)?)?.higgs;
                Ok((preserved, twice == once))
            };
            (label, check())
        })
        .collect();
    for (label, outcome) in outcomes {
        match outcome {
            Ok((preserved, idempotent)) => {
                t.check(preserved, || format!("{label}: spectrum changed"));
                t.check(idempotent, || format!("{label}: not idempotent"));
            }
            Err(e) => t.fail(format!("{label}: {e}")),
        }
    }
    t.finish()
}

pub fn local_model(_: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("local_model");
    let outcome = || -> Result<(bool, bool), String> {
        let doc = corpus::load("pushforward/free_module_eta2_minus_w.json").map_err(|e| e.to_string())?;
        let ideal: FractionalIdeal = serde_json::from_value(doc).map_err(|e| e.to_string())?;
        let model = pushforward_line(&ideal).map_err(|e| e.to_string())?;
        let w = UniPoly::var();
        let expected = PolyMat::from_rows(vec![vec![UniPoly::zero(), w], vec![UniPoly::one(), UniPoly::zero()]])
            .map_err(|e| e.to_string())?;
        let back = eigenline(&model.higgs).map_err(|e| e.to_string())?;
        let free = FractionalIdeal::unit(ideal.algebra().clone());
        Ok((
            model.higgs.phi() == &expected,
            back.same_module(&free).map_err(|e| e.to_string())?,
        ))
    };
    match outcome() {
        Ok((pushed, inverted)) => {
            t.check(pushed, || "pushforward is not [[0, w], [1, 0]]".into());
            t.check(inverted, || "eigenline is not the free module".into());
        }
        Err(e) => t.fail(e),
    }
    t.finish()
}

fn sampled_groups() -> Vec<Group> {
    KINDS
        .into_iter()
        .flat_map(|kind| (1..=3).filter_map(move |n| Group::new(kind, n).ok()))
        .collect()
}

pub fn char_structure(config: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("char_structure");
    let mut rng = stream(config, 6);
    for group in sampled_groups() {
        for k in 0..100 {
            let x = random_algebra_element(&mut rng, group.algebra(), 2);
            t.attempt(|| format!("{group} #{k}"), validate_matrix(group, &x).map(|r| r.pass));
        }
    }
    // Elements pushed out of the algebra must be rejected.
    for group in sampled_groups().into_iter().filter(|g| g.kind != GroupKind::Gl) {
        let size = group.matrix_size();
        let mut kick = PolyMat::zeros(size, size);
        kick.set(0, 0, UniPoly::var());
        for k in 0..10 {
            let x = random_algebra_element(&mut rng, group.algebra(), 2).add(&kick);
            t.attempt(
                || format!("{group} kicked #{k} accepted"),
                validate_matrix(group, &x).map(|r| !r.pass),
            );
        }
    }
    t.finish()
}

/// Compares the squared Pfaffian against the characteristic polynomial. With
/// the sign mutation the suite must fail.
pub fn pfaffian_squared(config: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("pfaffian_squared");
    let mut rng = stream(config, 7);
    for n in 2..=3 {
        let group = Group::new(GroupKind::SoEven, n).expect("SO(4) and SO(6) exist");
        for k in 0..100 {
            let x = random_algebra_element(&mut rng, group.algebra(), 2);
            let root = match config.mutation {
                Some(Mutation::PfaffianSign) => pfaffian_sign_mutant(&x),
                None => pfaffian(&x),
            };
            let outcome = root.and_then(|pf| Ok(&pf * &pf == char_poly(&x)?.coeff(0)));
            t.attempt(|| format!("{group} #{k}"), outcome);
        }
    }
    t.finish()
}

pub fn real_form_table(_: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("real_form_table");
    let forms: Vec<RealForm> = RealForm::all_up_to(6)
        .into_iter()
        .filter(|f| !matches!(f, RealForm::SoEven { p: 1, q: 1 } | RealForm::SoStar { m: 1 }))
        .collect();
    let outcomes: Vec<_> = forms
        .par_iter()
        .map(|&form| {
            let check = || -> hitchin_core::Result<Vec<(String, bool)>> {
                let mut out: Vec<(String, bool)> =
                    verify_row(form)?.checks.into_iter().map(|c| (c.name, c.pass)).collect();
                out.push(("decomposition".into(), cartan_decomposition(form)?.consistent()));
                out.push(("compact dimension".into(), maximal_compact_dim(form)?.agree));
                if let Some(r) = split_rank_check(form)? {
                    out.push(("split rank".into(), r.pass));
                }
                Ok(out)
            };
            (form, check())
        })
        .collect();
    for (form, outcome) in outcomes {
        match outcome {
            Ok(checks) => {
                for (name, pass) in checks {
                    t.check(pass, || format!("{form}: {name}"));
                }
            }
            Err(e) => t.fail(format!("{form}: {e}")),
        }
    }
    t.finish()
}

/// A cover splitting into the sections `eta = r_i(w)`.
struct SplitCover {
    algebra: SpectralAlgebra,
    roots: Vec<UniPoly>,
}

fn split_cover(roots: Vec<UniPoly>) -> SplitCover {
    let product = roots.iter().fold(BiPoly::from_uni(UniPoly::one()), |acc, r| {
        &acc * &(&BiPoly::eta() - &BiPoly::from_uni(r.clone()))
    });
    let p = SpectralPolynomial::from_bipoly(&product).expect("monic in eta");
    SplitCover {
        algebra: SpectralAlgebra::new(p),
        roots,
    }
}

fn linear<R: Rng>(rng: &mut R) -> UniPoly {
    UniPoly::from_ints(&[rng.gen_range(-4..=4), rng.gen_range(-3..=3)])
}

/// Fifty covers of degree 2 to 4; every fourth is symmetric under `eta -> -eta`.
fn split_covers<R: Rng>(rng: &mut R) -> Vec<SplitCover> {
    (0..50)
        .map(|k| {
            let degree: usize = 2 + k % 3;
            if k % 4 == 0 {
                let half: Vec<UniPoly> = (0..degree.div_ceil(2)).map(|_| linear(rng)).collect();
                split_cover(half.iter().flat_map(|r| [r.clone(), -r]).collect())
            } else {
                split_cover((0..degree).map(|_| linear(rng)).collect())
            }
        })
        .collect()
}

fn random_divisor<R: Rng>(rng: &mut R, cover: &SplitCover) -> hitchin_core::Result<Divisor> {
    let terms: Vec<_> = (0..rng.gen_range(1..=5))
        .map(|_| {
            let w0 = int(rng.gen_range(-5..=5));
            let r = &cover.roots[rng.gen_range(0..cover.roots.len())];
            (SpectralPoint::new(w0.clone(), r.eval(&w0)), rng.gen_range(-3..=3))
        })
        .collect();
    Divisor::new(cover.algebra.clone(), terms)
}

fn merged(a: &BaseDivisor, b: &BaseDivisor) -> BTreeMap<Rational, i64> {
    let mut out = a.support().clone();
    for (w, m) in b.support() {
        *out.entry(w.clone()).or_insert(0) += m;
    }
    out.retain(|_, m| *m != 0);
    out
}

pub fn norm_map(config: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("norm_map");
    let mut rng = stream(config, 9);
    for (k, cover) in split_covers(&mut rng).iter().enumerate() {
        let n = cover.roots.len() as i64;
        let w0 = int(rng.gen_range(-6..=6));
        let mut expected: Vec<Rational> = cover.roots.iter().map(|r| r.eval(&w0)).collect();
        expected.sort();
        let mut found: Vec<Rational> = fiber_points(&cover.algebra, &w0)
            .points
            .iter()
            .flat_map(|(p, m)| std::iter::repeat_n(p.eta.clone(), *m))
            .collect();
        found.sort();
        t.check(found == expected, || format!("cover #{k}: fibre over {w0}"));
        match fiber_divisor(&cover.algebra, &w0) {
            Some(fibre) => t.check(norm(&fibre) == BaseDivisor::single(w0.clone(), n), || {
                format!("cover #{k}: norm of the fibre over {w0}")
            }),
            None => t.fail(format!("cover #{k}: fibre over {w0} is not rational")),
        }

        let pair = random_divisor(&mut rng, cover).and_then(|a| Ok((random_divisor(&mut rng, cover)?, a)));
        let (b, a) = match pair {
            Ok(pair) => pair,
            Err(e) => {
                t.fail(format!("cover #{k}: {e}"));
                continue;
            }
        };
        t.check(norm(&a).degree() == a.degree(), || format!("cover #{k}: degree"));
        t.attempt(
            || format!("cover #{k}: additivity"),
            a.add(&b).map(|s| norm(&s).support() == &merged(&norm(&a), &norm(&b))),
        );
        if cover.algebra.has_sigma() {
            let outcome = sigma_divisor(&a)
                .and_then(|m| Ok(norm(&m) == norm(&a) && m.degree() == a.degree() && sigma_divisor(&m)? == a));
            t.attempt(|| format!("cover #{k}: sigma compatibility"), outcome);
        }
    }
    t.finish()
}

#[derive(Deserialize)]
struct ParityFixture {
    deg_l: i64,
    minus_one_points: i64,
    w_degrees: Option<(i64, i64)>,
}

/// Corpus fixtures must pass, and shifting either count by one must be
/// rejected.
pub fn parity_rule(_: &BatteryConfig) -> SuiteReport {
    let mut t = Tally::new("parity_rule");
    let files = match corpus::list("parity") {
        Ok(files) => files,
        Err(e) => {
            t.fail(e.to_string());
            return t.finish();
        }
    };
    for path in files {
        let name = path
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default();
        let fixture = corpus::read_json(&path).and_then(|v| {
            serde_json::from_value::<ParityFixture>(v).map_err(|e| crate::CliError::Parse(e.to_string()))
        });
        let f = match fixture {
            Ok(f) => f,
            Err(e) => {
                t.fail(format!("{name}: {e}"));
                continue;
            }
        };
        t.attempt(
            || format!("{name}: rejected"),
            parity_invariant(f.deg_l, f.minus_one_points, f.w_degrees).map(|r| r.pass),
        );
        t.attempt(
            || format!("{name}: odd degree shift accepted"),
            parity_invariant(f.deg_l + 1, f.minus_one_points, f.w_degrees).map(|r| !r.pass),
        );
        t.attempt(
            || format!("{name}: extra fixed point accepted"),
            parity_invariant(f.deg_l, f.minus_one_points + 1, f.w_degrees).map(|r| !r.pass),
        );
    }
    t.finish()
}
