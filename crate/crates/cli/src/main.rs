//! `coredhex`: counts, closed forms and verification sweeps for cored
//! hexagons.
//!
//! Exit codes: 0 success, 1 a verification failure, 2 invalid or
//! parity-inconsistent input, 3 the brute-force cell cap was exceeded.

mod args;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::process::ExitCode;

use clap::Parser;
use serde_json::{json, Map, Value};

use args::{
    AsymptoticArgs, Cli, Command, ConjectureArgs, CountArgs, CountWeight, CyclicArgs, CyclicWeight, FormulaArgs,
    Method, VerifyArgs,
};
use coredhex::exactnum::{format_rational, rat};
use coredhex::formulas::{
    asymptotic_k, asymptotic_table, conjecture_rhs, count_cored_formula, lemma_rhs, macmahon_box, rhs_case10,
    rhs_omega_det, watson_lhs, watson_rhs, ConjectureId, FormulaId, OmegaCase,
};
use coredhex::lgv::{build_B, build_cored_matrix, build_n6_matrix};
use coredhex::tilings::{cell_cap, count_cyclic_real, count_weighted, CoredHexagon, Placement, Weight};
use coredhex::verify::{self, Bounds, Status};
use coredhex::{Error, ExactValue};

/// Why a command stopped early; each maps to an exit code.
enum Failure {
    Usage(String),
    Resource(String),
    Verification(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Verification(_) => 1,
            Failure::Usage(_) => 2,
            Failure::Resource(_) => 3,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m) | Failure::Resource(m) | Failure::Verification(m) => m,
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Resource { .. } => Failure::Resource(e.to_string()),
            _ => Failure::Usage(e.to_string()),
        }
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Usage(format!("i/o error: {e}"))
    }
}

type Outcome = Result<(), Failure>;

fn usage(msg: impl Into<String>) -> Failure {
    Failure::Usage(msg.into())
}

fn print_json(v: &Value) -> Outcome {
    let mut out = io::stdout().lock();
    serde_json::to_writer(&mut out, v).map_err(|e| usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn placement_name(p: Placement) -> &'static str {
    match p {
        Placement::Centered => "centered",
        Placement::ShiftedTowardB => "shifted-toward-b",
    }
}

/// The sides as the library reads them after moving a deviant side to `a`.
fn normalization(h: &CoredHexagon) -> Value {
    json!({
        "relabeling": h.relabeling.describe(),
        "a": h.a,
        "b": h.b,
        "c": h.c,
        "placement": placement_name(h.placement),
    })
}

fn count(args: &CountArgs) -> Outcome {
    let h = CoredHexagon::new(args.a, args.b, args.c, args.m);
    let signed = args.weight == CountWeight::Minus1;
    let odd_m = args.m % 2 == 1;
    let value: ExactValue = match args.method {
        Method::Brute => {
            let w = if signed { Weight::MinusOneN } else { Weight::One };
            count_weighted(&h, w)?.c0.to_integer().into()
        }
        Method::Formula => {
            if signed && !odd_m {
                return Err(usage("--weight minus1 with --method formula needs odd --m"));
            }
            count_cored_formula(&h, signed)?.into()
        }
        Method::Determinant => {
            if signed != odd_m {
                return Err(usage(
                    "--method determinant gives the plain count for even --m and the minus1 count for odd --m",
                ));
            }
            let eps = if (h.a + h.b).is_multiple_of(2) { rat(0, 1) } else { rat(1, 2) };
            build_cored_matrix(h.a, h.b, h.c, h.m, &eps)?.det()?
        }
    };
    let weight = if signed { "minus1" } else { "one" };
    print_json(&json!({
        "params": { "a": args.a, "b": args.b, "c": args.c, "m": args.m, "weight": weight },
        "normalized": normalization(&h),
        "method": args.method.name(),
        "value": value.to_json(),
    }))
}

fn cyclic_count(args: &CyclicArgs) -> Outcome {
    let (a, m) = (args.a, args.m);
    let h = CoredHexagon::cyclic(a, m);
    let omega = match args.weight {
        CyclicWeight::One => Some(OmegaCase::One),
        CyclicWeight::Minus1 => Some(OmegaCase::MinusOne),
        CyclicWeight::Omega3 => Some(OmegaCase::Third),
        CyclicWeight::Omega6 => Some(OmegaCase::Sixth),
        CyclicWeight::Minus1N6 => None,
    };
    let value: ExactValue = match (args.method, omega) {
        (Method::Formula, Some(w)) => rhs_omega_det(a, m, w)?,
        (Method::Formula, None) => rhs_case10(a, m)?.into(),
        (Method::Determinant, Some(w)) => build_B(a as usize, m as i64).add_scalar_identity(&w.omega())?.det()?,
        (Method::Determinant, None) => build_n6_matrix(a as usize, m).det()?,
        (Method::Brute, Some(OmegaCase::One)) => count_cyclic_real(&h, false, cell_cap())?.into(),
        (Method::Brute, Some(OmegaCase::MinusOne)) => count_cyclic_real(&h, true, cell_cap())?.into(),
        (Method::Brute, Some(OmegaCase::Third)) => count_weighted(&h, Weight::Omega3N)?.into(),
        (Method::Brute, Some(OmegaCase::Sixth)) => count_weighted(&h, Weight::Omega6N)?.into(),
        (Method::Brute, None) => count_weighted(&h, Weight::MinusOneN6)?.into(),
    };
    let weight = match args.weight {
        CyclicWeight::One => "one",
        CyclicWeight::Minus1 => "minus1",
        CyclicWeight::Omega3 => "omega3",
        CyclicWeight::Omega6 => "omega6",
        CyclicWeight::Minus1N6 => "minus1-n6",
    };
    print_json(&json!({
        "params": { "a": a, "m": m, "weight": weight },
        "method": args.method.name(),
        "value": value.to_json(),
    }))
}

fn need<T: Copy>(v: Option<T>, flag: &str, id: FormulaId) -> Result<T, Failure> {
    v.ok_or_else(|| usage(format!("formula {id} needs --{flag}")))
}

fn formula(args: &FormulaArgs) -> Outcome {
    let id = args.id;
    let mut params = Map::new();
    let mut take = |flag: &str, v: Option<u32>| -> Result<u32, Failure> {
        let x = need(v, flag, id)?;
        params.insert(flag.to_string(), json!(x));
        Ok(x)
    };
    let mut normalized = None;
    let value: Value = match id {
        FormulaId::Box => {
            let (a, b, c) = (take("a", args.a)?, take("b", args.b)?, take("c", args.c)?);
            Value::String(macmahon_box(a, b, c).to_string())
        }
        FormulaId::Enum | FormulaId::Shifted | FormulaId::SignedEnum | FormulaId::SignedShifted => {
            let (a, b, c, m) = (take("a", args.a)?, take("b", args.b)?, take("c", args.c)?, take("m", args.m)?);
            let h = CoredHexagon::new(a, b, c, m);
            let centered = matches!(id, FormulaId::Enum | FormulaId::SignedEnum);
            if centered != (h.placement == Placement::Centered) {
                return Err(usage(format!(
                    "formula {id} needs {} parities, got ({a},{b},{c})",
                    if centered { "a ≡ b ≡ c" } else { "exactly one deviant" }
                )));
            }
            normalized = Some(normalization(&h));
            let signed = matches!(id, FormulaId::SignedEnum | FormulaId::SignedShifted);
            Value::String(format_rational(&count_cored_formula(&h, signed)?))
        }
        FormulaId::Andrews | FormulaId::Zare1 | FormulaId::Om3 | FormulaId::Om6 => {
            let (a, m) = (take("a", args.a)?, take("m", args.m)?);
            let case = match id {
                FormulaId::Andrews => OmegaCase::One,
                FormulaId::Zare1 => OmegaCase::MinusOne,
                FormulaId::Om3 => OmegaCase::Third,
                _ => OmegaCase::Sixth,
            };
            rhs_omega_det(a, m, case)?.to_json()
        }
        FormulaId::Case10 => {
            let (a, m) = (take("a", args.a)?, take("m", args.m)?);
            Value::String(format_rational(&rhs_case10(a, m)?))
        }
        FormulaId::AsymptoticK => {
            let (a, b, c, m) = (take("a", args.a)?, take("b", args.b)?, take("c", args.c)?, take("m", args.m)?);
            params.insert("precision".into(), json!(args.precision));
            Value::String(asymptotic_k(a, b, c, m, args.precision)?.to_string())
        }
        FormulaId::Conjecture1 | FormulaId::Conjecture2 => {
            let (a, b, c, m) = (take("a", args.a)?, take("b", args.b)?, take("c", args.c)?, take("m", args.m)?);
            let which = if id == FormulaId::Conjecture1 { ConjectureId::One } else { ConjectureId::ThreeHalves };
            Value::String(format_rational(&conjecture_rhs(which, a, b, c, m)?))
        }
        FormulaId::WatsonLHS | FormulaId::WatsonRHS => {
            let (a, big_m) = (take("a", args.a)?, take("m", args.m)?);
            let variant = need(args.variant, "variant", id)?;
            let big_b = args.big_b.clone().ok_or_else(|| usage(format!("formula {id} needs --big-b")))?;
            let big_c = args.big_c.clone().ok_or_else(|| usage(format!("formula {id} needs --big-c")))?;
            if a == 0 {
                return Err(usage(format!("formula {id} needs --a ≥ 1")));
            }
            params.insert("variant".into(), json!(variant.name()));
            params.insert("big-b".into(), json!(format_rational(&big_b)));
            params.insert("big-c".into(), json!(format_rational(&big_c)));
            let v = if id == FormulaId::WatsonLHS {
                watson_lhs(variant, a, big_m, &big_b, &big_c)?
            } else {
                watson_rhs(variant, a, big_m, &big_b, &big_c)?
            };
            Value::String(format_rational(&v))
        }
        FormulaId::LemmaRHS => {
            let (a, b, c, m) = (take("a", args.a)?, take("b", args.b)?, take("c", args.c)?, take("m", args.m)?);
            Value::String(format_rational(&lemma_rhs(a, b, c, m, (a + b) % 2 == 1)?))
        }
    };
    let mut out = Map::new();
    out.insert("params".into(), Value::Object(params));
    if let Some(n) = normalized {
        out.insert("normalized".into(), n);
    }
    out.insert("formula".into(), json!(id.name()));
    out.insert("value".into(), value);
    print_json(&Value::Object(out))
}

fn verify_suites(args: &VerifyArgs) -> Outcome {
    let suites = args.suites().map_err(usage)?;
    if args.jobs == Some(0) {
        return Err(usage("--jobs must be positive"));
    }
    let jobs = args.jobs.unwrap_or_else(|| std::thread::available_parallelism().map_or(1, |n| n.get()));
    let bounds = Bounds { max_a: args.max_a, max_m: args.max_m, samples: args.samples };
    let mut jsonl = match &args.jsonl {
        Some(p) => Some(BufWriter::new(File::create(p)?)),
        None => None,
    };
    let mut summaries = Vec::new();
    for suite in suites {
        let reports = verify::run_suite_with_jobs(suite, &bounds, args.seed, jobs)?;
        if let Some(w) = jsonl.as_mut() {
            verify::write_jsonl(&mut *w, &reports)?;
        }
        let summary = verify::summarize(suite, &reports);
        print_json(&serde_json::to_value(&summary).map_err(|e| usage(e.to_string()))?)?;
        summaries.push(summary);
    }
    if let Some(mut w) = jsonl {
        w.flush()?;
    }
    if let Some(p) = &args.csv {
        verify::write_summary_csv(File::create(p)?, &summaries)?;
    }
    let failed: Vec<&str> = summaries.iter().filter(|s| s.failed > 0).map(|s| s.suite.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Verification(format!("failures in {}", failed.join(", "))))
    }
}

fn csv_writer() -> csv::Writer<io::StdoutLock<'static>> {
    csv::Writer::from_writer(io::stdout().lock())
}

fn csv_error(e: csv::Error) -> Failure {
    usage(format!("csv: {e}"))
}

fn asymptotic(args: &AsymptoticArgs) -> Outcome {
    if args.n_list.is_empty() || args.n_list.contains(&0) {
        return Err(usage("--n-list needs positive integers"));
    }
    let (k, rows) = asymptotic_table(args.a, args.b, args.c, args.m, &args.n_list, args.precision)?;
    let mut w = csv_writer();
    w.write_record(["n", "log_ratio", "k", "deviation"]).map_err(csv_error)?;
    for r in rows {
        w.write_record([r.n.to_string(), r.log_ratio.to_string(), k.to_string(), r.deviation.to_string()])
            .map_err(csv_error)?;
    }
    w.flush()?;
    Ok(())
}

fn conjecture(args: &ConjectureArgs) -> Outcome {
    let which = if args.which == 1 { ConjectureId::One } else { ConjectureId::ThreeHalves };
    let mut w = csv_writer();
    w.write_record(["a", "b", "c", "m", "epsilon", "determinant", "conjecture", "status"]).map_err(csv_error)?;
    let mut mismatches = 0;
    for a in 0..=args.max_a {
        for b in 0..=args.max_a {
            for c in 0..=args.max_a {
                let same = a % 2 == b % 2 && b % 2 == c % 2;
                let admissible = match which {
                    ConjectureId::One => same,
                    ConjectureId::ThreeHalves => !same && b % 2 == c % 2,
                };
                if !admissible {
                    continue;
                }
                for m in 0..=args.max_m {
                    let det = build_cored_matrix(a, b, c, m, &which.epsilon())?.det()?;
                    let (rhs, status) = match conjecture_rhs(which, a, b, c, m) {
                        Ok(v) => {
                            let status = if m % 2 == 1 {
                                Status::Reported
                            } else if det == ExactValue::from(v.clone()) {
                                Status::Pass
                            } else {
                                mismatches += 1;
                                Status::Fail
                            };
                            (format_rational(&v), status)
                        }
                        Err(Error::Domain(_)) => (String::new(), Status::Skip),
                        Err(e) => return Err(e.into()),
                    };
                    let status = serde_json::to_value(status).map_err(|e| usage(e.to_string()))?;
                    w.write_record([
                        a.to_string(),
                        b.to_string(),
                        c.to_string(),
                        m.to_string(),
                        format_rational(&which.epsilon()),
                        det.to_string(),
                        rhs,
                        status.as_str().unwrap_or_default().to_string(),
                    ])
                    .map_err(csv_error)?;
                }
            }
        }
    }
    w.flush()?;
    if mismatches > 0 {
        return Err(Failure::Verification(format!("{mismatches} even-m mismatches")));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            let text = e.to_string();
            let line = text.lines().find(|l| !l.trim().is_empty()).unwrap_or("invalid arguments");
            eprintln!("{}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    let outcome = match &cli.command {
        Command::Count(a) => count(a),
        Command::CyclicCount(a) => cyclic_count(a),
        Command::Formula(a) => formula(a),
        Command::Verify(a) => verify_suites(a),
        Command::Asymptotic(a) => asymptotic(a),
        Command::Conjecture(a) => conjecture(a),
    };
    match outcome {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("{}", f.message());
            ExitCode::from(f.code())
        }
    }
}
