//! One function per subcommand. Each returns the structured result, a
//! plain-text rendering of it, and the caveats that apply.

use std::fmt::Write as _;
use std::path::Path;

use hitchin_core::correspondence::{
    eigenline, fixed_point_check, ideal_sigma_test, pushforward_line, pushforward_rank2, FractionalIdeal, HiggsMatrix,
    Rank2Module, SigmaClass, SpectralAlgebra,
};
use hitchin_core::curves::{affine_smoothness, genus_report, quotient_equation, CurveModel, AFFINE_SCOPE};
use hitchin_core::divisors::{
    fiber_points, norm, parity_invariant, prym_membership_degreewise, Divisor, DivisorEntry, PRYM_SCOPE,
};
use hitchin_core::invariants::{dimensions, validate_char_structure, validate_matrix, Group, GroupKind};
use hitchin_core::real_forms::{cartan_decomposition, maximal_compact_dim, split_rank_check, verify_row, RealForm};
use hitchin_exact::matrix::render_rows;
use hitchin_exact::rational::{format_rational, int, parse_rational};
use hitchin_exact::{PolyMat, RatMat, SpectralPolynomial};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::args::{Command, GroupArg};
use crate::battery::{self, BatteryConfig};
use crate::corpus::read_json;
use crate::error::CliError;

pub struct Outcome {
    /// The parsed input document, echoed back.
    pub input: Option<Value>,
    pub result: Value,
    pub text: String,
    pub warnings: Vec<String>,
    /// False when a verification run found failures.
    pub verified: bool,
}

impl Outcome {
    fn new(result: Value, text: String) -> Self {
        Outcome {
            input: None,
            result,
            text,
            warnings: Vec::new(),
            verified: true,
        }
    }

    fn with_input(mut self, input: Value) -> Self {
        self.input = Some(input);
        self
    }

    fn warn(mut self, w: impl Into<String>) -> Self {
        self.warnings.push(w.into());
        self
    }
}

fn to_value<T: Serialize>(x: &T) -> Result<Value, CliError> {
    serde_json::to_value(x).map_err(|e| CliError::Internal(format!("serialization failed: {e}")))
}

fn decode<T: DeserializeOwned>(v: &Value, what: &str) -> Result<T, CliError> {
    serde_json::from_value(v.clone()).map_err(|e| CliError::Parse(format!("{what}: {e}")))
}

fn field<'a>(doc: &'a Value, key: &str) -> Result<&'a Value, CliError> {
    doc.get(key)
        .ok_or_else(|| CliError::Parse(format!("input needs field {key:?}")))
}

fn group(kind: GroupArg, n: usize) -> Result<Group, CliError> {
    Ok(Group::new(kind.into(), n)?)
}

fn poly_rows(m: &PolyMat) -> String {
    render_rows(m, |c| c.to_string())
}

fn rat_rows(m: &RatMat) -> String {
    render_rows(m, format_rational)
}

pub fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Dims { group: g, n, genus } => dims(group(*g, *n)?, *genus),
        Command::Curve {
            group: g,
            n,
            genus,
            input,
        } => curve(group(*g, *n)?, *genus, input.as_deref()),
        Command::Realform { form } => realform(form),
        Command::Validate { input } => validate(input),
        Command::Pushforward { input } => pushforward(input),
        Command::Eigenline { input } => eigenline_cmd(input),
        Command::CheckFixedpoint { input } => check_fixedpoint(input),
        Command::Norm { input } => norm_cmd(input),
        Command::PrymCheck { input } => prym_check(input),
        Command::VerifyAll { seed, mutate } => verify_all(BatteryConfig {
            seed: *seed,
            mutation: *mutate,
        }),
    }
}

fn dims(group: Group, genus: i64) -> Result<Outcome, CliError> {
    let r = dimensions(group, genus)?;
    let mut text = format!(
        "{group}, genus {genus}\ninvariant degrees: {:?}\nbase dimension: {}\nmoduli dimension: {}\nhalf-dimension check: {}",
        r.degrees,
        r.base_dim,
        r.moduli_dim,
        pass_word(r.half_dim_check)
    );
    if let Some(e) = r.exponent_check {
        let _ = write!(text, "\nexponent check: {}", pass_word(e));
    }
    let mut result = to_value(&r)?;
    result["half_dim_check"] = pass_word(r.half_dim_check).into();
    if let Some(e) = r.exponent_check {
        result["exponent_check"] = pass_word(e).into();
    }
    Ok(Outcome::new(result, text))
}

fn pass_word(b: bool) -> &'static str {
    if b {
        "pass"
    } else {
        "fail"
    }
}

fn curve(group: Group, genus: i64, input: Option<&Path>) -> Result<Outcome, CliError> {
    let report = genus_report(&CurveModel::new(group, genus, None)?)?;
    let mut result = to_value(&report)?;
    if group.kind == GroupKind::SoEven {
        result["virtual_genus"] = json!(report.spectral_genus);
    }
    let mut text = format!(
        "{group}, genus {genus}\nspectral genus: {}\nramification points: {}",
        report.spectral_genus, report.ramification_count
    );
    for (label, v) in [
        ("singular points", report.singular_points),
        ("normalization genus", report.desing_genus),
        ("quotient genus", report.quotient_genus),
        ("Prym dimension", report.prym_dim),
    ] {
        if let Some(v) = v {
            let _ = write!(text, "\n{label}: {v}");
        }
    }
    let mut outcome = Outcome::new(Value::Null, String::new());
    for note in &report.notes {
        outcome = outcome.warn(note.clone());
    }
    if let Some(path) = input {
        let doc = read_json(path)?;
        let p: SpectralPolynomial = decode(field(&doc, "p")?, "p")?;
        let smooth = affine_smoothness(&p);
        result["smoothness"] = to_value(&smooth)?;
        let _ = write!(
            text,
            "\ncurve {p} = 0 is {}",
            if smooth.smooth { "smooth" } else { "singular" }
        );
        if let Ok(q) = quotient_equation(&p) {
            result["quotient_equation"] = to_value(&q)?;
            let _ = write!(text, "\nquotient by eta -> -eta: {q}");
        }
        outcome = outcome.with_input(doc).warn(AFFINE_SCOPE);
    }
    outcome.result = result;
    outcome.text = text;
    Ok(outcome)
}

fn realform(name: &str) -> Result<Outcome, CliError> {
    let form: RealForm = name.parse()?;
    let row = verify_row(form)?;
    let dec = cartan_decomposition(form)?;
    let compact = maximal_compact_dim(form)?;
    let split = split_rank_check(form)?;
    let result = json!({
        "form": form,
        "display": form.to_string(),
        "involutions": row.formulas,
        "checks": row.checks,
        "decomposition": {
            "dims": dec.dims,
            "total_real_dim": dec.total_real_dim,
            "brackets_hold": dec.brackets_hold,
            "sigma_fixed_is_h_plus_ih": dec.sigma_fixed_is_h_plus_ih,
            "compact_killing_negative_on_h": dec.compact_killing_negative_on_h,
            "consistent": dec.consistent(),
        },
        "maximal_compact": compact,
        "split_rank": split,
    });
    let mut text = format!("{form} in {}\n", row.parent);
    for (k, v) in &row.formulas {
        let _ = writeln!(text, "{k}: {v}");
    }
    for c in &row.checks {
        let _ = writeln!(text, "{}: {}", c.name, pass_word(c.pass));
    }
    let _ = write!(
        text,
        "eigenspace dimensions: {:?}\nmaximal compact dimension: {}",
        dec.dims, compact.dim
    );
    Ok(Outcome::new(result, text))
}

#[derive(Deserialize)]
struct ValidateInput {
    group: Group,
    #[serde(default)]
    matrix: Option<PolyMat>,
    #[serde(default, rename = "char")]
    char_poly: Option<SpectralPolynomial>,
}

fn validate(path: &Path) -> Result<Outcome, CliError> {
    let doc = read_json(path)?;
    let input: ValidateInput = decode(&doc, "validate input")?;
    let report = match (&input.matrix, &input.char_poly) {
        (Some(m), _) => validate_matrix(input.group, m)?,
        (None, Some(p)) => validate_char_structure(input.group, p)?,
        (None, None) => return Err(CliError::Parse("input needs \"matrix\" or \"char\"".into())),
    };
    let mut text = format!("{}: char = {}\n", input.group, report.char_poly);
    for c in &report.checks {
        let _ = writeln!(text, "{}: {}", c.name, pass_word(c.pass));
    }
    let _ = write!(text, "overall: {}", pass_word(report.pass));
    Ok(Outcome::new(to_value(&report)?, text).with_input(doc))
}

fn pushforward(path: &Path) -> Result<Outcome, CliError> {
    let doc = read_json(path)?;
    if doc.get("ideals").is_some() {
        let module: Rank2Module = decode(&doc, "rank-two module")?;
        let higgs = pushforward_rank2(&module)?;
        let text = format!("phi =\n{higgs}\nchar = {}", higgs.char_poly());
        return Ok(Outcome::new(to_value(&higgs)?, text).with_input(doc));
    }
    let ideal: FractionalIdeal = decode(&doc, "ideal")?;
    let model = pushforward_line(&ideal)?;
    let result = json!({
        "basis": model.basis,
        "phi": model.higgs.phi(),
        "char": model.higgs.char_poly(),
        "twist": format_rational(ideal.twist()),
    });
    let text = format!(
        "basis =\n{}\nphi =\n{}\nchar = {}",
        poly_rows(&model.basis),
        model.higgs,
        model.higgs.char_poly()
    );
    let mut outcome = Outcome::new(result, text).with_input(doc);
    if *ideal.twist() != int(0) {
        outcome = outcome.warn("the twist by a power of K is recorded but trivial on the affine chart");
    }
    if ideal.algebra().has_sigma() {
        let sigma = ideal_sigma_test(&ideal)?;
        outcome.result["sigma"] = json!({
            "class": sigma.class,
            "invariant": sigma.invariant,
            "pairing_generator": sigma.pairing_generator,
        });
        if sigma.class == SigmaClass::Neither {
            outcome = outcome.warn(sigma.note);
        }
    }
    Ok(outcome)
}

#[derive(Deserialize)]
struct MatrixInput {
    phi: PolyMat,
}

fn eigenline_cmd(path: &Path) -> Result<Outcome, CliError> {
    let doc = read_json(path)?;
    let input: MatrixInput = decode(&doc, "Higgs matrix")?;
    let higgs = HiggsMatrix::new(input.phi)?;
    let ideal = eigenline(&higgs)?;
    let basis = ideal.hermite()?;
    let result = json!({
        "ideal": ideal,
        "hermite_basis": basis,
        "char": higgs.char_poly(),
    });
    let text = format!("char = {}\nHermite basis =\n{}", higgs.char_poly(), poly_rows(&basis));
    let mut outcome = Outcome::new(result, text).with_input(doc);
    if !ideal.algebra().is_smooth() {
        outcome = outcome.warn("spectral curve is singular on the affine chart; the module need not be invertible");
    }
    Ok(outcome)
}

#[derive(Deserialize)]
struct FixedPointInput {
    form: String,
    phi: PolyMat,
    #[serde(default)]
    f: Option<RatMat>,
}

fn check_fixedpoint(path: &Path) -> Result<Outcome, CliError> {
    let doc = read_json(path)?;
    let input: FixedPointInput = decode(&doc, "fixed-point input")?;
    let form: RealForm = input.form.parse()?;
    let higgs = HiggsMatrix::new(input.phi)?;
    let report = fixed_point_check(form, &higgs, input.f.as_ref())?;
    let mut text = format!("{}: {}\nstatus: {:?}\n", report.form, report.identity, report.status);
    if let Some(f) = &report.f {
        let _ = writeln!(text, "f =\n{}", rat_rows(f));
    }
    let _ = write!(text, "candidates searched: {}", report.searched);
    Ok(Outcome::new(to_value(&report)?, text).with_input(doc))
}

#[derive(Deserialize)]
struct DivisorInput {
    p: SpectralPolynomial,
    #[serde(default)]
    divisor: Option<Vec<DivisorEntry>>,
    #[serde(default)]
    fiber: Option<String>,
}

fn norm_cmd(path: &Path) -> Result<Outcome, CliError> {
    let doc = read_json(path)?;
    let input: DivisorInput = decode(&doc, "divisor input")?;
    let algebra = SpectralAlgebra::new(input.p);
    if let Some(w) = &input.fiber {
        let w0 = parse_rational(w)?;
        let fiber = fiber_points(&algebra, &w0);
        let mut result = json!({ "fiber": fiber });
        let mut text = format!(
            "fibre over w = {}: {} rational point(s)",
            format_rational(&w0),
            fiber.points.len()
        );
        let mut outcome = Outcome::new(Value::Null, String::new()).with_input(doc);
        if fiber.is_rational() {
            let d = Divisor::new(algebra, fiber.points.iter().map(|(p, m)| (p.clone(), *m as i64)))?;
            let nm = norm(&d);
            let _ = write!(text, "\nnorm: degree {} over w = {}", nm.degree(), format_rational(&w0));
            result["divisor"] = to_value(&d)?;
            result["norm"] = to_value(&nm)?;
        } else {
            outcome = outcome.warn("fibre has irrational points; they are reported by their irreducible factors");
        }
        outcome.result = result;
        outcome.text = text;
        return Ok(outcome);
    }
    let entries = input
        .divisor
        .ok_or_else(|| CliError::Parse("input needs \"divisor\" or \"fiber\"".into()))?;
    let d = Divisor::from_entries(algebra, entries)?;
    let nm = norm(&d);
    let text = format!("divisor of degree {}\nnorm of degree {}", d.degree(), nm.degree());
    let result = json!({ "divisor": d, "norm": nm, "norm_degree": nm.degree() });
    Ok(Outcome::new(result, text).with_input(doc))
}

#[derive(Deserialize)]
struct ParityInput {
    deg_l: i64,
    minus_one_points: i64,
    #[serde(default)]
    w_degrees: Option<(i64, i64)>,
}

fn prym_check(path: &Path) -> Result<Outcome, CliError> {
    let doc = read_json(path)?;
    if doc.get("deg_l").is_some() {
        let input: ParityInput = decode(&doc, "parity input")?;
        let report = parity_invariant(input.deg_l, input.minus_one_points, input.w_degrees)?;
        let mut text = format!(
            "deg L = {}, points with sigma = -1: {}\nparity rule: {}",
            report.deg_l,
            report.minus_one_points,
            pass_word(report.pass)
        );
        if let Some(t) = report.toledo {
            let _ = write!(text, "\nToledo invariant: {t}");
        }
        return Ok(Outcome::new(to_value(&report)?, text).with_input(doc));
    }
    let input: DivisorInput = decode(&doc, "divisor input")?;
    let entries = input
        .divisor
        .ok_or_else(|| CliError::Parse("input needs \"divisor\"".into()))?;
    let d = Divisor::from_entries(SpectralAlgebra::new(input.p), entries)?;
    let report = prym_membership_degreewise(&d);
    let mut text = format!(
        "norm degree: {}\nin norm kernel: {}",
        report.norm_degree, report.in_norm_kernel
    );
    let mut outcome = Outcome::new(Value::Null, String::new()).warn(PRYM_SCOPE);
    match report.order_two_necessary {
        Some(b) => {
            let _ = write!(text, "\norder-two conditions: {}", pass_word(b));
        }
        None => outcome = outcome.warn("sigma is undefined on this curve; order-two conditions not evaluated"),
    }
    outcome.result = to_value(&report)?;
    outcome.text = text;
    Ok(outcome.with_input(doc))
}

fn verify_all(config: BatteryConfig) -> Result<Outcome, CliError> {
    let runs = battery::run_all(&config);
    for run in &runs {
        eprintln!(
            "suite {}: {} cases, {} failed, {:.2?}",
            run.report.name, run.report.cases, run.report.failed, run.elapsed
        );
    }
    let reports: Vec<_> = runs.into_iter().map(|r| r.report).collect();
    let pass = reports.iter().all(|r| r.pass);
    let mut text = String::new();
    for r in &reports {
        let _ = writeln!(text, "{:<28} {:>5} cases  {}", r.name, r.cases, pass_word(r.pass));
    }
    let _ = write!(text, "overall: {}", pass_word(pass));
    let result = json!({
        "seed": config.seed,
        "mutation": config.mutation.map(|_| "pfaffian-sign"),
        "suites": reports,
        "pass": pass,
    });
    let mut outcome = Outcome::new(result, text).warn(AFFINE_SCOPE).warn(PRYM_SCOPE);
    outcome.verified = pass;
    Ok(outcome)
}
