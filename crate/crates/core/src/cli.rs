//! Command-line front end. [`run`] is pure: it takes the argument vector and
//! returns the exit status with the stdout/stderr text, so the binary is a
//! thin wrapper and tests can drive it directly.

use std::ffi::OsString;
use std::fmt::Write as _;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::apn::{self, ApnError, ScanOutcome, MAX_DDT_DEGREE, MAX_FULL_DDT_DEGREE};
use crate::classify20::{
    self, CczOutcome, ClassifyError, DeltaCheck, P1Divisor, MAX_SEARCH_DEGREE,
};
use crate::divisors::{self, Convention, Replay};
use crate::gf2n::{hex, Field, FieldError, TowerField, MAX_BASE_DEGREE};
use crate::phi::{self, IdentityError, IdentityParams};
use crate::polyring::{parse_uni, ParseError, UniPoly};

pub const SCHEMA: u32 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_CHECK_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_RESOURCE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "apn20", version, about = "Degree-20 APN classification toolkit over GF(2^n)")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Check the built-in identities of the surface polynomials.
    Verify(VerifyArgs),
    /// Differential uniformity of one polynomial on one field.
    Apn(ApnArgs),
    /// Differential uniformity of a polynomial across GF(2^n), n in a range.
    Scan(ScanArgs),
    /// Match a degree-20 polynomial against the two divisibility families.
    Classify(ClassifyArgs),
    /// Replay the divisor case analysis at infinity.
    Divisors(DivisorsArgs),
}

#[derive(Args, Debug)]
pub struct VerifyArgs {
    /// Field spec `n` or `n:0xMODULUS`.
    #[arg(long, default_value = "1")]
    pub field: String,
    /// Identity to check (repeatable); all of them when omitted.
    #[arg(long, conflicts_with = "all")]
    pub identity: Vec<String>,
    #[arg(long)]
    pub all: bool,
    /// Parameter for identity `a`: d=N, e=N or j=N.
    #[arg(long = "param", value_parser = parse_param)]
    pub params: Vec<(char, u32)>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ApnArgs {
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub poly: String,
    /// Print the whole DDT (fields up to 2^10).
    #[arg(long)]
    pub full_ddt: bool,
    #[arg(long)]
    pub json: bool,
}

#[derive(Args, Debug)]
pub struct ScanArgs {
    #[arg(long)]
    pub poly: String,
    #[arg(long)]
    pub n_from: u32,
    #[arg(long)]
    pub n_to: u32,
    /// Coefficient field of the polynomial.
    #[arg(long, default_value = "1")]
    pub base: String,
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    #[arg(long)]
    pub csv: bool,
}

#[derive(Args, Debug)]
pub struct ClassifyArgs {
    /// Base field spec.
    #[arg(long)]
    pub field: String,
    #[arg(long)]
    pub poly: String,
    /// Modulus of the cubic extension GF(q^3).
    #[arg(long, value_parser = parse_hex_arg)]
    pub tower_modulus: Option<u32>,
    /// Degree of the field for the delta cross-check against x^5.
    #[arg(long)]
    pub check_n: Option<u32>,
    #[arg(long)]
    pub json: bool,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum ConventionArg {
    Paper,
    Frobenius,
}

#[derive(Args, Debug)]
pub struct DivisorsArgs {
    #[arg(long, value_enum, default_value = "paper")]
    pub convention: ConventionArg,
    #[arg(long)]
    pub json: bool,
}

fn parse_param(s: &str) -> Result<(char, u32), String> {
    let (k, v) = s.split_once('=').ok_or("expected KEY=VALUE")?;
    let key = match k.trim() {
        "d" => 'd',
        "e" => 'e',
        "j" => 'j',
        other => return Err(format!("unknown parameter `{other}` (d, e or j)")),
    };
    let value = v.trim().parse().map_err(|_| format!("`{v}` is not a non-negative integer"))?;
    Ok((key, value))
}

fn parse_hex_arg(s: &str) -> Result<u32, String> {
    s.strip_prefix("0x")
        .or_else(|| s.strip_prefix("0X"))
        .and_then(|h| u32::from_str_radix(h, 16).ok())
        .ok_or_else(|| format!("`{s}` is not a 0xHEX literal"))
}

/// Exit status and the two output streams of one invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Failure {
    code: i32,
    msg: String,
}

impl Failure {
    fn usage(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            msg: msg.into(),
        }
    }

    fn resource(msg: impl Into<String>) -> Self {
        Failure {
            code: EXIT_RESOURCE,
            msg: msg.into(),
        }
    }
}

impl From<FieldError> for Failure {
    fn from(e: FieldError) -> Self {
        match e {
            FieldError::DegreeOutOfRange(_) => Failure::resource(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<ApnError> for Failure {
    fn from(e: ApnError) -> Self {
        match e {
            ApnError::FieldTooLarge(_) => Failure::resource(e.to_string()),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<ClassifyError> for Failure {
    fn from(e: ClassifyError) -> Self {
        match e {
            ClassifyError::ExtTooLarge(_) => Failure::resource(e.to_string()),
            ClassifyError::Apn(a) => a.into(),
            ClassifyError::Field(f) => f.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

impl From<IdentityError> for Failure {
    fn from(e: IdentityError) -> Self {
        match e {
            IdentityError::Field(f) => f.into(),
            _ => Failure::usage(e.to_string()),
        }
    }
}

/// Report plus the status it implies.
struct Report {
    code: i32,
    text: String,
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                Outcome {
                    code,
                    stdout: text,
                    stderr: String::new(),
                }
            } else {
                Outcome {
                    code,
                    stdout: String::new(),
                    stderr: text,
                }
            };
        }
    };
    match dispatch(&cli.command) {
        Ok(r) => Outcome {
            code: r.code,
            stdout: r.text,
            stderr: String::new(),
        },
        Err(f) => Outcome {
            code: f.code,
            stdout: String::new(),
            stderr: format!("error: {}\n", f.msg),
        },
    }
}

fn dispatch(cmd: &Command) -> Result<Report, Failure> {
    match cmd {
        Command::Verify(a) => verify(a),
        Command::Apn(a) => apn_cmd(a),
        Command::Scan(a) => scan(a),
        Command::Classify(a) => classify(a),
        Command::Divisors(a) => divisors_cmd(a),
    }
}

fn pretty(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("JSON values always serialize");
    s.push('\n');
    s
}

fn field_arg(spec: &str) -> Result<Field, Failure> {
    Field::from_spec(spec).map_err(Failure::from)
}

/// The parse error with the source line and a caret under the offset.
fn parse_diagnostic(src: &str, e: &ParseError) -> String {
    let col = src[..e.pos.min(src.len())].chars().count();
    format!("{e}\n  {src}\n  {}^", " ".repeat(col))
}

fn poly_arg(field: &Field, src: &str) -> Result<UniPoly, Failure> {
    parse_uni(field, src).map_err(|e| Failure::usage(parse_diagnostic(src, &e)))
}

fn verify(args: &VerifyArgs) -> Result<Report, Failure> {
    let field = field_arg(&args.field)?;
    let mut params = IdentityParams::default();
    for &(k, v) in &args.params {
        match k {
            'd' => params.d = Some(v),
            'e' => params.e = Some(v),
            _ => params.j = Some(v),
        }
    }
    let names: Vec<String> = if args.identity.is_empty() {
        phi::BUILTIN_NAMES.iter().map(|s| s.to_string()).collect()
    } else {
        args.identity.clone()
    };
    let mut rows = Vec::new();
    for name in &names {
        let p = if name == "a" { params } else { IdentityParams::default() };
        let id = phi::builtin_identity(name, &field, &p)?;
        let report = phi::check_identity(&id).map_err(|e| Failure::usage(e.to_string()))?;
        rows.push((id, report));
    }
    let all_hold = rows.iter().all(|(_, r)| r.holds);
    let code = if all_hold { EXIT_OK } else { EXIT_CHECK_FAILED };
    let text = if args.json {
        let ids: Vec<Value> = rows
            .iter()
            .map(|(id, r)| {
                json!({
                    "name": r.name,
                    "holds": r.holds,
                    "parts": id.parts.len(),
                    "params": id.params.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
                    "failed_part": r.failed_part,
                    "witness": r.witness,
                })
            })
            .collect();
        pretty(&json!({
            "schema": SCHEMA,
            "command": "verify",
            "field": field.spec(),
            "identities": ids,
            "all_hold": all_hold,
        }))
    } else {
        let mut s = format!("field {field}\n");
        for (id, r) in &rows {
            let _ = writeln!(s, "{r} ({} parts)", id.parts.len());
        }
        let _ = writeln!(s, "{}", if all_hold { "all identities hold" } else { "some identity fails" });
        s
    };
    Ok(Report { code, text })
}

fn apn_cmd(args: &ApnArgs) -> Result<Report, Failure> {
    let field = field_arg(&args.field)?;
    let f = poly_arg(&field, &args.poly)?;
    let r = apn::differential_uniformity(&f, &field)?;
    let ddt = if args.full_ddt {
        if field.degree() > MAX_FULL_DDT_DEGREE {
            return Err(Failure::resource(format!(
                "--full-ddt is limited to GF(2^{MAX_FULL_DDT_DEGREE})"
            )));
        }
        Some(apn::full_ddt(&f, &field)?)
    } else {
        None
    };
    let text = if args.json {
        let mut v = json!({
            "schema": SCHEMA,
            "command": "apn",
            "field": field.spec(),
            "poly": f.to_string(),
            "delta": r.delta,
            "is_apn": r.is_apn,
            "worst_pair": [hex(r.worst_pair.0), hex(r.worst_pair.1)],
        });
        if let Some(t) = &ddt {
            v["ddt"] = json!(t);
        }
        pretty(&v)
    } else {
        let mut s = format!(
            "field {field}\nf = {f}\ndelta = {}\napn = {}\nworst (a, b) = ({}, {})\n",
            r.delta,
            r.is_apn,
            hex(r.worst_pair.0),
            hex(r.worst_pair.1)
        );
        if let Some(t) = &ddt {
            for row in t {
                let line: Vec<String> = row.iter().map(u32::to_string).collect();
                let _ = writeln!(s, "{}", line.join(" "));
            }
        }
        s
    };
    Ok(Report { code: EXIT_OK, text })
}

fn scan(args: &ScanArgs) -> Result<Report, Failure> {
    if args.n_from > args.n_to {
        return Err(Failure::usage(format!(
            "empty range: --n-from {} > --n-to {}",
            args.n_from, args.n_to
        )));
    }
    if args.n_to > MAX_DDT_DEGREE {
        return Err(Failure::resource(format!(
            "--n-to {} exceeds the DDT cap of 2^{MAX_DDT_DEGREE}",
            args.n_to
        )));
    }
    let base = field_arg(&args.base)?;
    let f = poly_arg(&base, &args.poly)?;
    let rows = apn::apn_scan(&f, args.n_from..=args.n_to);
    let text = if args.json {
        pretty(&json!({
            "schema": SCHEMA,
            "command": "scan",
            "base": base.spec(),
            "poly": f.to_string(),
            "rows": serde_json::to_value(&rows).expect("rows serialize"),
        }))
    } else if args.csv {
        let mut s = String::from("n,delta,is_apn,worst_a,worst_b,skipped\n");
        for r in &rows {
            match &r.outcome {
                ScanOutcome::Scanned {
                    delta,
                    is_apn,
                    worst_a,
                    worst_b,
                } => {
                    let _ = writeln!(s, "{},{delta},{is_apn},{worst_a},{worst_b},", r.n);
                }
                ScanOutcome::Skipped { skipped } => {
                    let _ = writeln!(s, "{},,,,,\"{}\"", r.n, skipped.replace('"', "'"));
                }
            }
        }
        s
    } else {
        let mut s = format!("f = {f} over {base}\n");
        for r in &rows {
            match &r.outcome {
                ScanOutcome::Scanned { delta, is_apn, .. } => {
                    let tag = if *is_apn { "APN" } else { "not APN" };
                    let _ = writeln!(s, "n = {:>2}  delta = {delta:<6} {tag}", r.n);
                }
                ScanOutcome::Skipped { skipped } => {
                    let _ = writeln!(s, "n = {:>2}  skipped: {skipped}", r.n);
                }
            }
        }
        s
    };
    Ok(Report { code: EXIT_OK, text })
}

fn delta_json(d: &DeltaCheck) -> Value {
    match d {
        DeltaCheck::Compared {
            field,
            delta_f,
            delta_x5,
        } => json!({
            "field": field.spec(),
            "delta_f": delta_f,
            "delta_x5": delta_x5,
            "agrees": delta_f == delta_x5,
        }),
        DeltaCheck::Skipped(why) => json!({ "skipped": why }),
    }
}

fn delta_text(d: &DeltaCheck) -> String {
    match d {
        DeltaCheck::Compared {
            field,
            delta_f,
            delta_x5,
        } => format!(
            "over {field}: delta(f) = {delta_f}, delta(x^5) = {delta_x5} ({})",
            if delta_f == delta_x5 { "agree" } else { "DIFFER" }
        ),
        DeltaCheck::Skipped(why) => format!("skipped: {why}"),
    }
}

fn classify(args: &ClassifyArgs) -> Result<Report, Failure> {
    let base = field_arg(&args.field)?;
    if base.degree() > MAX_BASE_DEGREE {
        return Err(Failure::resource(format!(
            "base field degree is limited to {MAX_BASE_DEGREE} so that GF(q^3) fits"
        )));
    }
    let f = poly_arg(&base, &args.poly)?;
    if f.degree() != Some(20) {
        return Err(Failure::usage(format!("expected a degree-20 polynomial, got {f}")));
    }
    let tower = TowerField::with_ext_modulus(&base, args.tower_modulus)?;
    let check_field = args.check_n.map(Field::with_degree).transpose()?;

    let div_b = classify20::verify_divisibility_b(&f)?;
    let searchable = tower.ext().degree() <= MAX_SEARCH_DEGREE;
    let hits = if searchable {
        Some(classify20::search_p1(&f, &tower)?)
    } else {
        None
    };
    let div_a = match hits.as_ref().and_then(|h| h.first()) {
        Some(c) => Some(classify20::verify_divisibility_a(
            &f,
            &P1Divisor::from_c1(tower.ext(), c.bits())?,
            &tower,
        )?),
        None => None,
    };
    let family = if div_b.divides && div_b.factorization_ok {
        "B"
    } else if hits.as_ref().is_some_and(|h| !h.is_empty()) {
        "A"
    } else {
        "none"
    };
    let outcome = classify20::ccz_witness(&f, &tower, check_field.as_ref())?;
    // nonzero a in the family-A shape: look for odd extensions where f is not APN
    let exclusion = match &outcome {
        CczOutcome::NoWitness(nw) if nw.stage == "family_a" && family == "A" => {
            let m = base.degree();
            let ns: Vec<u32> = (3..=9).step_by(2).map(|k| m * k).filter(|&n| n <= 12).collect();
            Some(apn::apn_scan(&f, ns))
        }
        _ => None,
    };

    let hits_hex: Option<Vec<String>> = hits
        .as_ref()
        .map(|h| h.iter().map(|c| hex(c.bits())).collect());
    let text = if args.json {
        let witness = match &outcome {
            CczOutcome::Witness(w) => json!({
                "kind": w.kind.name(),
                "L": w.l.to_string(),
                "residual": w.residual.to_string(),
                "c1": w.c1.as_ref().map(|c| hex(c.bits())),
                "delta_check": delta_json(&w.delta),
            }),
            CczOutcome::NoWitness(nw) => json!({
                "kind": Value::Null,
                "stage": nw.stage,
                "reason": nw.reason,
            }),
        };
        let mut v = json!({
            "schema": SCHEMA,
            "command": "classify",
            "field": base.spec(),
            "ext": tower.ext().spec(),
            "poly": f.to_string(),
            "family": family,
            "family_b": { "divides": div_b.divides, "factorization_ok": div_b.factorization_ok },
            "p1_hits": hits_hex,
            "witness": witness,
        });
        if let Some(d) = &div_a {
            v["constraints"] = d
                .constraints
                .iter()
                .map(|c| json!({ "name": c.name, "holds": c.holds }))
                .collect();
        }
        if let Some(rows) = &exclusion {
            v["exclusion_scan"] = serde_json::to_value(rows).expect("rows serialize");
        }
        pretty(&v)
    } else {
        let mut s = format!("f = {f}\nfield {base}, extension {}\n", tower.ext());
        let _ = writeln!(s, "family: {family}");
        let _ = writeln!(
            s,
            "phi5 | phi_f: {}, quotient A^3 phi5^3 + a10 A phi5 + a5: {}",
            div_b.divides, div_b.factorization_ok
        );
        match &hits_hex {
            Some(h) => {
                let _ = writeln!(s, "P1 = c1 phi5 + c1^3 hits: [{}]", h.join(", "));
            }
            None => {
                let _ = writeln!(s, "P1 search skipped: |ext| > 2^{MAX_SEARCH_DEGREE}");
            }
        }
        if let Some(d) = &div_a {
            let _ = writeln!(s, "constraints at c1 = {}:", hits_hex.as_ref().unwrap()[0]);
            for c in &d.constraints {
                let _ = writeln!(s, "  {:<28} {}", c.name, if c.holds { "holds" } else { "fails" });
            }
        }
        match &outcome {
            CczOutcome::Witness(w) => {
                let _ = writeln!(s, "witness: {}", w.kind.name());
                let _ = writeln!(s, "  L = {}", w.l);
                let _ = writeln!(s, "  residual = {}", w.residual);
                let _ = writeln!(s, "  delta check {}", delta_text(&w.delta));
            }
            CczOutcome::NoWitness(nw) => {
                let _ = writeln!(s, "no witness ({}): {}", nw.stage, nw.reason);
            }
        }
        if let Some(rows) = &exclusion {
            let _ = writeln!(s, "differential scan over odd extensions:");
            for r in rows {
                match r.delta() {
                    Some(d) => {
                        let _ = writeln!(s, "  n = {}: delta = {d}", r.n);
                    }
                    None => {
                        let _ = writeln!(s, "  n = {}: skipped", r.n);
                    }
                }
            }
        }
        s
    };
    Ok(Report { code: EXIT_OK, text })
}

fn replay_ok(r: &Replay) -> bool {
    r.survivors().len() == 2
        && r.cases.iter().all(|c| c.table_agrees())
        && r.cutoff.holds
}

fn divisors_cmd(args: &DivisorsArgs) -> Result<Report, Failure> {
    let convention = match args.convention {
        ConventionArg::Paper => Convention::Verbatim,
        ConventionArg::Frobenius => Convention::FrobeniusSwapsC,
    };
    let r = divisors::replay_case_analysis(convention);
    let sensitive = divisors::convention_sensitive();
    let ok = replay_ok(&r);
    let code = if ok { EXIT_OK } else { EXIT_CHECK_FAILED };
    let text = if args.json {
        let cases: Vec<Value> = r
            .cases
            .iter()
            .map(|c| {
                json!({
                    "divisor": c.x0.to_string(),
                    "case": c.case_label,
                    "orbit": c.orbit.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
                    "orbit_sum": c.orbit_sum.to_string(),
                    "verdict": c.verdict.name(),
                    "residual": c.residual.map(|d| d.to_string()),
                    "table_agrees": c.table_agrees(),
                })
            })
            .collect();
        let delegated: Vec<Value> = r
            .delegated
            .iter()
            .map(|d| json!({ "divisor": d.x0.to_string(), "reason": d.reason, "source": d.source }))
            .collect();
        pretty(&json!({
            "schema": SCHEMA,
            "command": "divisors",
            "convention": convention.name(),
            "D": divisors::D.to_string(),
            "cases": cases,
            "survivors": r.survivors().iter().map(|c| c.x0.to_string()).collect::<Vec<_>>(),
            "delegated": delegated,
            "cutoff": r.cutoff.to_string(),
            "convention_sensitive": sensitive.iter().map(|d| d.to_string()).collect::<Vec<_>>(),
            "ok": ok,
        }))
    } else {
        let mut s = format!("D = {}  (convention: {})\n", divisors::D, convention.name());
        let _ = writeln!(s, "{:<24} {:<9} {:<30} verdict", "divisor", "case", "orbit sum");
        for c in &r.cases {
            let mut line = format!(
                "{:<24} {:<9} {:<30} {}",
                c.x0.to_string(),
                c.case_label.unwrap_or("-"),
                if c.orbit.is_empty() { "-".to_string() } else { c.orbit_sum.to_string() },
                c.verdict.name()
            );
            if let Some(res) = c.residual {
                let _ = write!(line, " (residual {res})");
            }
            if !c.table_agrees() {
                line.push_str(" [table disagrees]");
            }
            let _ = writeln!(s, "{}", line.trim_end());
        }
        let _ = writeln!(s, "delegated to an earlier result: {} shapes", r.delegated.len());
        let _ = writeln!(s, "cutoff: {}", r.cutoff);
        let _ = writeln!(
            s,
            "convention-sensitive verdicts: {}",
            if sensitive.is_empty() { "none".to_string() } else { sensitive.len().to_string() }
        );
        let survivors: Vec<String> = r.survivors().iter().map(|c| c.x0.to_string()).collect();
        let _ = writeln!(s, "survivors: {}", survivors.join("; "));
        s
    };
    Ok(Report { code, text })
}
