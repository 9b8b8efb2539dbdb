//! The `monocurve` command line.

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Map, Value};

use crate::error::{Error, Result};
use crate::families::{
    arslan_system, backelin_hilbert_formula, backelin_hilbert_statement, backelin_system, bresinsky_system,
    compare_minors, InstanceJson,
};
use crate::groebner::{buchberger_complete, initial_ideal, is_groebner_basis, GroebnerBasis};
use crate::monomial_ideal::HilbertNumerator;
use crate::poly::{MonomialOrder, Polynomial};
use crate::resolution::{betti_via_schreyer_with, verify_with_repair, MinimizationOrder, MinorSpec};
use crate::toric::{acm_test, gastinger_verify, toric_ideal, Mode, MonomialCurveSpec};

pub const SCHEMA_VERSION: u64 = 1;

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_SCALE: i32 = 3;

#[derive(Parser, Debug)]
#[command(name = "monocurve", version, about = "Verify ideals, bases and resolutions of monomial curves")]
struct Cli {
    /// Print the report as JSON.
    #[arg(long, global = true)]
    json: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the generators of a family instance.
    Family(Instance),
    /// Compute a reduced Gröbner basis, or check the stated one with --verify.
    Gb {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        verify: bool,
    },
    /// Gastinger count of A/(J + (x_var)) against the target exponent.
    Gastinger {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, default_value_t = 3)]
        var: usize,
    },
    /// Arithmetic Cohen-Macaulay test of the projective closure.
    Acm(Instance),
    /// Hilbert series numerator of the initial ideal.
    Hilbert {
        #[command(flatten)]
        inst: Instance,
        #[arg(long)]
        compare_formula: bool,
    },
    /// Buchsbaum-Eisenbud check of the family's stated resolution.
    Resolution {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = Certificates::Paper)]
        certificates: Certificates,
    },
    /// Betti numbers of the projective closure.
    Betti {
        #[command(flatten)]
        inst: Instance,
        #[arg(long, value_enum, default_value_t = Method::Schreyer)]
        method: Method,
        #[arg(long, value_enum, default_value_t = Minimize::RowMajor)]
        minimize: Minimize,
    },
    /// Reduced Gröbner basis of the toric ideal of a curve.
    Toric {
        #[arg(long, value_delimiter = ',', required = true)]
        exponents: Vec<u64>,
        #[arg(long)]
        projective: bool,
    },
}

#[derive(Args, Debug, Clone)]
struct Instance {
    #[arg(long, value_enum)]
    name: Name,
    #[arg(long)]
    n: Option<u32>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long)]
    h: Option<u32>,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Name {
    Backelin,
    Bresinsky,
    BresinskyProj,
    Arslan,
    ArslanProj,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Certificates {
    /// The minors listed with the family.
    Paper,
    /// Minors found by seeded random search.
    Random,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Method {
    Schreyer,
}

#[derive(ValueEnum, Debug, Clone, Copy, PartialEq, Eq)]
enum Minimize {
    RowMajor,
    ColumnMajor,
}

/// A finished command: exit code plus the text written to stdout or stderr.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs one command. `argv[0]` is the program name.
pub fn run_command<S: AsRef<str>>(argv: &[S]) -> RunOutcome {
    let args: Vec<&str> = argv.iter().map(|s| s.as_ref()).collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            return if code == EXIT_OK {
                RunOutcome { code, stdout: text, stderr: String::new() }
            } else {
                RunOutcome { code, stdout: String::new(), stderr: text }
            };
        }
    };
    let echo: Vec<String> = args.iter().skip(1).map(|s| s.to_string()).collect();
    match dispatch(&cli.command) {
        Ok((ok, body)) => {
            let mut report = Map::new();
            report.insert("schema".into(), json!(SCHEMA_VERSION));
            report.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
            report.insert("command".into(), json!(echo));
            report.insert("seed".into(), json!(crate::resolution::seed()));
            report.insert("ok".into(), json!(ok));
            for (k, v) in body {
                report.insert(k, v);
            }
            let report = Value::Object(report);
            let stdout = if cli.json {
                let mut s = serde_json::to_string_pretty(&report).expect("serializable");
                s.push('\n');
                s
            } else {
                render_text(&report)
            };
            RunOutcome { code: if ok { EXIT_OK } else { EXIT_FAILED }, stdout, stderr: String::new() }
        }
        Err(e) => {
            let code = match e {
                Error::ScaleGuard(_) => EXIT_SCALE,
                Error::InvalidParameters(_) | Error::Parse(_) | Error::BadIndexList(_) => EXIT_USAGE,
                _ => EXIT_FAILED,
            };
            RunOutcome { code, stdout: String::new(), stderr: format!("error: {e}\n") }
        }
    }
}

fn render_text(report: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(map) = report {
        for (k, v) in map {
            match v {
                Value::Array(items) if items.iter().all(Value::is_string) && !items.is_empty() && k != "command" => {
                    out.push_str(&format!("{k}:\n"));
                    for it in items {
                        out.push_str(&format!("  {}\n", it.as_str().expect("string")));
                    }
                }
                Value::String(s) => out.push_str(&format!("{k}: {s}\n")),
                other => out.push_str(&format!("{k}: {other}\n")),
            }
        }
    }
    out
}

type Body = Vec<(String, Value)>;

fn need(v: Option<u32>, flag: &str, name: Name) -> Result<u32> {
    v.ok_or_else(|| Error::InvalidParameters(format!("--{flag} is required for {}", name_str(name))))
}

fn name_str(name: Name) -> &'static str {
    match name {
        Name::Backelin => "backelin",
        Name::Bresinsky => "bresinsky",
        Name::BresinskyProj => "bresinsky-proj",
        Name::Arslan => "arslan",
        Name::ArslanProj => "arslan-proj",
    }
}

fn params(inst: &Instance) -> Result<Value> {
    Ok(match inst.name {
        Name::Backelin => json!({"n": need(inst.n, "n", inst.name)?, "r": need(inst.r, "r", inst.name)?}),
        _ => json!({"h": need(inst.h, "h", inst.name)?}),
    })
}

fn strings(ps: &[Polynomial]) -> Value {
    json!(ps.iter().map(|p| p.to_string()).collect::<Vec<_>>())
}

/// Generators, stated Gröbner basis, spec and order of an instance.
struct Resolved {
    generators: Vec<Polynomial>,
    stated_gb: Vec<Polynomial>,
    spec: MonomialCurveSpec,
    order: MonomialOrder,
    json: InstanceJson,
}

fn resolve(inst: &Instance) -> Result<Resolved> {
    match inst.name {
        Name::Backelin => {
            let b = backelin_system(need(inst.n, "n", inst.name)?, need(inst.r, "r", inst.name)?)?;
            let json = InstanceJson {
                family: "backelin".into(),
                exponents: b.spec.exponents().to_vec(),
                generators: b.generators.clone(),
                groebner_basis: b.gb.clone(),
                matrices: vec![],
                diagnostics: vec![],
            };
            Ok(Resolved {
                generators: b.generator_polys(),
                stated_gb: b.gb_polys(),
                spec: b.spec.clone(),
                order: b.ring.order().clone(),
                json,
            })
        }
        Name::Bresinsky => {
            let b = bresinsky_system(need(inst.h, "h", inst.name)?)?;
            Ok(Resolved {
                generators: b.gb_without_p6(),
                stated_gb: b.gb_polys(),
                spec: b.spec.clone(),
                order: b.affine_ring.order().clone(),
                json: b.to_json(),
            })
        }
        Name::BresinskyProj => {
            let b = bresinsky_system(need(inst.h, "h", inst.name)?)?;
            Ok(Resolved {
                generators: b.projective_polys(),
                stated_gb: vec![],
                spec: b.projective_spec(),
                order: b.ring.order().clone(),
                json: b.to_json(),
            })
        }
        Name::Arslan => {
            let a = arslan_system(need(inst.h, "h", inst.name)?)?;
            let affine = a.affine_generators()?;
            let order = affine.first().map(|p| p.ring().order().clone()).expect("nonempty");
            Ok(Resolved {
                generators: affine.clone(),
                stated_gb: vec![],
                spec: a.affine_spec(),
                order,
                json: a.to_json(),
            })
        }
        Name::ArslanProj => {
            let a = arslan_system(need(inst.h, "h", inst.name)?)?;
            Ok(Resolved {
                generators: a.gb_polys(),
                stated_gb: a.gb_polys(),
                spec: a.spec.clone(),
                order: a.ring.order().clone(),
                json: a.to_json(),
            })
        }
    }
}

fn dispatch(cmd: &Command) -> Result<(bool, Body)> {
    match cmd {
        Command::Family(inst) => {
            let r = resolve(inst)?;
            let mut body: Body = vec![
                ("subcommand".into(), json!("family")),
                ("params".into(), params(inst)?),
                ("exponents".into(), json!(r.spec.exponents())),
                ("generators".into(), strings(&r.generators)),
                ("generator_count".into(), json!(r.generators.len())),
            ];
            body.push(("instance".into(), serde_json::to_value(&r.json).expect("serializable")));
            Ok((true, body))
        }
        Command::Gb { inst, verify } => {
            let r = resolve(inst)?;
            let mut body: Body = vec![("subcommand".into(), json!("gb")), ("params".into(), params(inst)?)];
            if *verify {
                let candidate = if r.stated_gb.is_empty() { &r.generators } else { &r.stated_gb };
                let (ok, reports) = is_groebner_basis(candidate, &r.order)?;
                let failing: Vec<Value> = reports
                    .iter()
                    .filter(|s| !s.reduced_to_zero)
                    .map(|s| json!([s.pair.0 + 1, s.pair.1 + 1]))
                    .collect();
                body.push(("basis".into(), strings(candidate)));
                body.push(("pairs_checked".into(), json!(reports.len())));
                body.push(("failing_pairs".into(), json!(failing)));
                body.push(("is_groebner_basis".into(), json!(ok)));
                Ok((ok, body))
            } else {
                let gb = buchberger_complete(&r.generators, &r.order)?;
                body.push(("basis".into(), json!(gb.to_strings())));
                body.push(("size".into(), json!(gb.elements().len())));
                let leads = leading_strings(&gb);
                body.push(("leading_monomials".into(), json!(leads)));
                Ok((true, body))
            }
        }
        Command::Gastinger { inst, var } => {
            let r = resolve(inst)?;
            if r.spec.mode() != Mode::Affine {
                return Err(Error::InvalidParameters("gastinger needs an affine family".into()));
            }
            let cert = gastinger_verify(&r.generators, &r.spec, *var)?;
            let ok = cert.verdict;
            Ok((
                ok,
                vec![
                    ("subcommand".into(), json!("gastinger")),
                    ("params".into(), params(inst)?),
                    ("variable".into(), json!(var)),
                    ("count".into(), json!(cert.count)),
                    ("target".into(), json!(cert.target)),
                    ("all_vanish".into(), json!(cert.all_vanish)),
                    ("verdict".into(), json!(ok)),
                ],
            ))
        }
        Command::Acm(inst) => {
            let r = resolve(inst)?;
            if r.spec.mode() != Mode::Affine {
                return Err(Error::InvalidParameters("acm needs an affine family".into()));
            }
            let gb = buchberger_complete(&r.generators, &r.order)?;
            let v = acm_test(&gb)?;
            Ok((
                v.acm,
                vec![
                    ("subcommand".into(), json!("acm")),
                    ("params".into(), params(inst)?),
                    ("acm".into(), json!(v.acm)),
                    ("witness".into(), json!(v.witness)),
                    ("offending".into(), json!(v.offending)),
                ],
            ))
        }
        Command::Hilbert { inst, compare_formula } => {
            let r = resolve(inst)?;
            let gb = buchberger_complete(&r.generators, &r.order)?;
            let computed = initial_ideal(&gb)?.hilbert_numerator();
            let mut body: Body = vec![
                ("subcommand".into(), json!("hilbert")),
                ("params".into(), params(inst)?),
                ("numerator".into(), json!(computed.to_string())),
            ];
            let mut ok = true;
            if *compare_formula {
                if inst.name != Name::Backelin {
                    return Err(Error::InvalidParameters("--compare-formula is available for backelin".into()));
                }
                let (n, r_) = (need(inst.n, "n", inst.name)?, need(inst.r, "r", inst.name)?);
                let formula = backelin_hilbert_formula(n, r_)?;
                let statement = backelin_hilbert_statement(n, r_)?;
                let diff = computed.sub(&formula);
                ok = diff == HilbertNumerator::zero();
                body.push(("formula".into(), json!(formula.to_string())));
                body.push(("diff".into(), json!(term_list(&diff))));
                body.push(("comparison".into(), json!(if ok { "match" } else { "differs" })));
                body.push(("statement_diff".into(), json!(term_list(&statement.sub(&formula)))));
            }
            Ok((ok, body))
        }
        Command::Resolution { inst, certificates } => resolution(inst, *certificates),
        Command::Betti { inst, method: Method::Schreyer, minimize } => {
            let r = resolve(inst)?;
            if r.spec.mode() != Mode::Projective {
                return Err(Error::InvalidParameters("betti needs a projective family".into()));
            }
            let how = match minimize {
                Minimize::RowMajor => MinimizationOrder::RowMajor,
                Minimize::ColumnMajor => MinimizationOrder::ColumnMajor,
            };
            let betti = betti_via_schreyer_with(&r.generators, &r.order, how)?;
            Ok((
                true,
                vec![
                    ("subcommand".into(), json!("betti")),
                    ("params".into(), params(inst)?),
                    ("method".into(), json!("schreyer")),
                    ("betti".into(), json!(betti)),
                ],
            ))
        }
        Command::Toric { exponents, projective } => {
            let mode = if *projective { Mode::Projective } else { Mode::Affine };
            let spec = MonomialCurveSpec::new(exponents.clone(), mode, None)?;
            let gb = toric_ideal(&spec)?;
            Ok((
                true,
                vec![
                    ("subcommand".into(), json!("toric")),
                    ("exponents".into(), json!(exponents)),
                    ("mode".into(), json!(mode)),
                    ("basis".into(), json!(gb.to_strings())),
                    ("size".into(), json!(gb.elements().len())),
                ],
            ))
        }
    }
}

fn leading_strings(gb: &GroebnerBasis) -> Vec<String> {
    let names = gb.ring().map(|r| r.vars().to_vec()).unwrap_or_default();
    gb.leading_monomials().iter().map(|m| m.format_with(&names)).collect()
}

fn term_list(h: &HilbertNumerator) -> Vec<(u64, i64)> {
    h.terms().collect()
}

fn resolution(inst: &Instance, which: Certificates) -> Result<(bool, Body)> {
    let (fc, stated, instance) = match inst.name {
        Name::BresinskyProj | Name::Bresinsky => {
            let b = bresinsky_system(need(inst.h, "h", inst.name)?)?;
            (b.family_complex(), b.stated_minors(), b.to_json())
        }
        Name::ArslanProj | Name::Arslan => {
            let a = arslan_system(need(inst.h, "h", inst.name)?)?;
            (a.family_complex(), a.stated_minors(), a.to_json())
        }
        Name::Backelin => {
            return Err(Error::InvalidParameters("no stated resolution for backelin".into()));
        }
    };
    let certs: Option<&[Vec<MinorSpec>]> = match which {
        Certificates::Paper => Some(&fc.certificates),
        Certificates::Random => None,
    };
    let (fixed, verdict) = verify_with_repair(&fc.complex, certs)?;
    let d = fixed.differentials();
    let levels: Vec<(&_, &[MinorSpec])> = d.iter().zip(&fc.certificates).map(|(m, c)| (m, c.as_slice())).collect();
    let comparisons = compare_minors(&levels, &stated)?;
    let ok = verdict.verdict;
    Ok((
        ok,
        vec![
            ("subcommand".into(), json!("resolution")),
            ("params".into(), params(inst)?),
            ("family".into(), json!(instance.family)),
            ("ranks".into(), json!(fixed.module_ranks())),
            ("exactness".into(), serde_json::to_value(&verdict).expect("serializable")),
            ("minor_comparisons".into(), serde_json::to_value(&comparisons).expect("serializable")),
            ("assembly_diagnostics".into(), serde_json::to_value(&fc.diagnostics).expect("serializable")),
        ],
    ))
}
