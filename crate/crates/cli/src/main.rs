//! `overcubic`: expansion, counting, classification and verification as
//! batch commands with JSON or CSV output.
//!
//! Exit status: 0 when every requested check passes, 1 when a verification
//! fails, 2 on usage errors (bad arguments, parse errors, insufficient order,
//! brute-force cap).

mod render;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{bail, Context};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use overcubic::classify::{self, Identity};
use overcubic::{enumerate, eta_theta, CongruenceFamily, EtaQuotient, VerificationReport};
use serde_json::{json, Value};

use render::{Format, Record, Table};

pub const DEFAULT_ORDER: usize = 500;

#[derive(Debug, Parser)]
#[command(name = "overcubic", version, about = "Exact q-series checks for generalized overcubic partitions")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Json, global = true)]
    format: Format,
    /// Write output to this file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Wrap the record in an envelope carrying a generation timestamp (JSON only).
    #[arg(long, global = true)]
    metadata: bool,
    /// Default truncation order for commands that take `--order`.
    #[arg(long, env = "OVERCUBIC_ORDER", default_value_t = DEFAULT_ORDER, global = true, hide_env_values = true)]
    default_order: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum NamedGf {
    Partition,
    Overpartition,
    Cubic,
    Overcubic,
    Psi,
    PsiNeg,
    Phi,
    Chi,
    Toh,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Kind {
    Partition,
    Overpartition,
    Cubic,
    Overcubic,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Engine {
    Dp,
    Brute,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Target {
    Thm14,
    Thm15,
    Conj73,
    Identity,
    Family,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Expand a named generating function or an eta quotient.
    Expand {
        /// Named generating function.
        #[arg(long, value_enum, conflicts_with = "eta", required_unless_present = "eta")]
        gf: Option<NamedGf>,
        /// Eta quotient such as "f4^1/f1^2*f2^-1".
        #[arg(long)]
        eta: Option<String>,
        /// Number of colors for the cubic and overcubic families.
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        c: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        order: Option<u64>,
        #[arg(long, value_parser = clap::value_parser!(u64).range(2..))]
        modulus: Option<u64>,
    },
    /// Count partitions of one weight.
    Count {
        #[arg(long, value_enum)]
        kind: Kind,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        c: u32,
        #[arg(long)]
        n: u64,
        #[arg(long, value_enum, default_value_t = Engine::Dp)]
        engine: Engine,
    },
    /// Square / twice-square classification and the predicted residue of abar_c(n) mod 4.
    Classify {
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
        #[arg(long, default_value_t = 2, value_parser = clap::value_parser!(u32).range(1..))]
        c: u32,
    },
    /// Split abar_c(n) into single-size and multi-size overcubic partitions.
    Decompose {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        c: u32,
        #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
        n: u64,
    },
    /// Run a verification sweep.
    Verify {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long, default_value_t = 10)]
        c_max: u32,
        #[arg(long)]
        n_max: Option<u64>,
        #[arg(long, default_value_t = 3)]
        i_max: u64,
        /// Truncation order; defaults to the larger of the default order and
        /// what the requested range needs.
        #[arg(long)]
        order: Option<usize>,
        /// Identity name, or "all".
        #[arg(long, default_value = "all")]
        name: String,
        /// Parameter for the parametrized identities.
        #[arg(long, default_value_t = 1)]
        i: u64,
        /// Custom family c = a*i + b, argument s*n + t, modulus m, residue.
        #[arg(long, default_value_t = 1)]
        a: u32,
        #[arg(long, default_value_t = 1)]
        b: u32,
        #[arg(long, default_value_t = 1)]
        s: u64,
        #[arg(long, default_value_t = 0)]
        t: u64,
        #[arg(long, default_value_t = 2)]
        m: u64,
        #[arg(long, default_value_t = 0)]
        residue: u64,
    },
}

enum Outcome {
    Done(Record),
    Verified(Record, bool),
}

fn named_series(gf: NamedGf, c: u32, order: usize, modulus: Option<u64>) -> anyhow::Result<overcubic::Series> {
    let quotient = match gf {
        NamedGf::Partition => eta_theta::cubic_quotient(1)?,
        NamedGf::Overpartition => eta_theta::overcubic_quotient(1)?,
        NamedGf::Cubic => eta_theta::cubic_quotient(c)?,
        NamedGf::Overcubic => eta_theta::overcubic_quotient(c)?,
        NamedGf::Psi => eta_theta::psi_quotient(),
        NamedGf::PsiNeg => eta_theta::psi_neg_quotient(),
        NamedGf::Phi => eta_theta::phi_quotient(),
        NamedGf::Chi => eta_theta::chi_quotient(),
        NamedGf::Toh => return Ok(eta_theta::toh_rhs(order, modulus)?),
    };
    Ok(quotient.expand(order, modulus)?)
}

fn gf_name(gf: NamedGf) -> String {
    gf.to_possible_value().expect("no skipped variants").get_name().to_string()
}

fn report_shape(r: &VerificationReport) -> Vec<Value> {
    let first = r.first_counterexample();
    let num = |s: &str| render::number(s);
    vec![
        json!(r.description),
        json!(r.i_range.map(|x| x.0)),
        json!(r.i_range.map(|x| x.1)),
        json!(r.n_range.map(|x| x.0)),
        json!(r.n_range.map(|x| x.1)),
        json!(r.order),
        json!(r.modulus),
        json!(if r.passed() { "pass" } else { "fail" }),
        json!(r.counterexamples.len()),
        json!(first.map(|c| c.i)),
        json!(first.map(|c| c.n)),
        first.map(|c| num(&c.observed)).unwrap_or(Value::Null),
        first.map(|c| num(&c.expected)).unwrap_or(Value::Null),
    ]
}

const REPORT_COLUMNS: [&str; 13] = [
    "description",
    "i_min",
    "i_max",
    "n_min",
    "n_max",
    "order",
    "modulus",
    "status",
    "counterexamples",
    "first_i",
    "first_n",
    "first_observed",
    "first_expected",
];

fn verification(reports: Vec<VerificationReport>, order: usize, params: Value, command: &str) -> Outcome {
    let ok = reports.iter().all(VerificationReport::passed);
    let table = Table {
        columns: REPORT_COLUMNS.iter().map(|s| s.to_string()).collect(),
        rows: reports.iter().map(report_shape).collect(),
    };
    let payload = json!({
        "status": if ok { "pass" } else { "fail" },
        "reports": reports.iter().map(render::report_json).collect::<Vec<_>>(),
    });
    Outcome::Verified(Record::new(command, params, Some(order), payload, table), ok)
}

fn run(cli: &Cli, command: &str) -> anyhow::Result<Outcome> {
    match &cli.command {
        Command::Expand { gf, eta, c, order, modulus } => {
            let order = order.map(|o| o as usize).unwrap_or(cli.default_order);
            if order == 0 {
                bail!("order must be positive");
            }
            let (series, label) = match (gf, eta) {
                (Some(gf), _) => (named_series(*gf, *c, order, *modulus)?, gf_name(*gf)),
                (None, Some(spec)) => {
                    let q: EtaQuotient = spec.parse().with_context(|| format!("invalid eta quotient {spec:?}"))?;
                    (q.expand(order, *modulus)?, q.to_string())
                }
                (None, None) => bail!("one of --gf or --eta is required"),
            };
            let coeffs = series.coefficients();
            let table = Table {
                columns: vec!["n".into(), "coefficient".into()],
                rows: coeffs
                    .iter()
                    .enumerate()
                    .map(|(n, x)| vec![json!(n), render::number(&x.to_string())])
                    .collect(),
            };
            let params = json!({ "series": label, "c": c, "modulus": modulus });
            let payload = json!({
                "coefficients": coeffs.iter().map(|x| render::number(&x.to_string())).collect::<Vec<_>>(),
            });
            Ok(Outcome::Done(Record::new(command, params, Some(order), payload, table)))
        }
        Command::Count { kind, c, n, engine } => {
            let colors = match kind {
                Kind::Partition | Kind::Overpartition => 1,
                Kind::Cubic | Kind::Overcubic => *c,
            };
            let count: BigInt = match (kind, engine) {
                (Kind::Partition, Engine::Dp) => enumerate::count_partitions(*n).into(),
                (Kind::Overpartition, Engine::Dp) => enumerate::count_overpartitions(*n).into(),
                (Kind::Cubic, Engine::Dp) => enumerate::count_gen_cubic(colors, *n)?.into(),
                (Kind::Overcubic, Engine::Dp) => enumerate::count_gen_overcubic_dp(colors, *n)?.into(),
                (Kind::Partition | Kind::Cubic, Engine::Brute) => {
                    let mut total = 0u64;
                    enumerate::for_each_colored_partition(colors, *n, |_| total += 1)?;
                    total.into()
                }
                (Kind::Overpartition | Kind::Overcubic, Engine::Brute) => {
                    enumerate::count_gen_overcubic_brute(colors, *n)?.into()
                }
            };
            let kind_name = kind.to_possible_value().expect("named").get_name().to_string();
            let engine_name = engine.to_possible_value().expect("named").get_name().to_string();
            let count = render::number(&count.to_string());
            let params = json!({ "kind": kind_name, "c": colors, "n": n, "engine": engine_name });
            let table = Table {
                columns: vec!["kind".into(), "c".into(), "n".into(), "engine".into(), "count".into()],
                rows: vec![vec![json!(kind_name), json!(colors), json!(n), json!(engine_name), count.clone()]],
            };
            Ok(Outcome::Done(Record::new(command, params, None, json!({ "count": count }), table)))
        }
        Command::Classify { n, c } => {
            let class = classify::classify_n(*n);
            let residue = classify::theorem_mod4_residue(*c, *n);
            let params = json!({ "n": n, "c": c });
            let payload = json!({ "class": class.tag(), "witness": class.witness(), "residue_mod4": residue });
            let table = Table {
                columns: vec!["n".into(), "c".into(), "class".into(), "witness".into(), "residue_mod4".into()],
                rows: vec![vec![json!(n), json!(c), json!(class.tag()), json!(class.witness()), json!(residue)]],
            };
            Ok(Outcome::Done(Record::new(command, params, None, payload, table)))
        }
        Command::Decompose { c, n } => {
            let d = enumerate::decompose(*c, *n)?;
            let payload = serde_json::to_value(d)?;
            let fields = ["p1", "p_geq2", "kappa1", "kappa21", "kappa22", "tau_odd", "tau_even"];
            let table = Table {
                columns: ["c", "n"].iter().chain(&fields).map(|s| s.to_string()).collect(),
                rows: vec![[json!(c), json!(n)].into_iter().chain(fields.iter().map(|f| payload[f].clone())).collect()],
            };
            Ok(Outcome::Done(Record::new(command, json!({ "c": c, "n": n }), None, payload, table)))
        }
        Command::Verify { target, c_max, n_max, i_max, order, name, i, a, b, s, t, m, residue } => {
            let pick = |required: usize| order.unwrap_or(required.max(cli.default_order));
            match target {
                Target::Thm14 => {
                    let n_max = n_max.unwrap_or(2000);
                    let order = pick(n_max as usize);
                    let r = classify::verify_theorem_mod4(*c_max, n_max, order)?;
                    let params = json!({ "target": "thm14", "c_max": c_max, "n_max": n_max });
                    Ok(verification(vec![r], order, params, command))
                }
                Target::Thm15 | Target::Conj73 => {
                    let n_max = n_max.unwrap_or(100);
                    let (label, families) = if *target == Target::Thm15 {
                        ("thm15", classify::theorem15_families().to_vec())
                    } else {
                        ("conj73", classify::conjecture73_families().to_vec())
                    };
                    let needed = families
                        .iter()
                        .map(|f| (f.prog_slope * n_max + f.prog_intercept) as usize)
                        .max()
                        .unwrap_or(0);
                    let order = pick(needed);
                    let reports = families
                        .iter()
                        .map(|f| classify::verify_family(f, *i_max, n_max, order))
                        .collect::<Result<Vec<_>, _>>()?;
                    let params = json!({ "target": label, "i_max": i_max, "n_max": n_max });
                    Ok(verification(reports, order, params, command))
                }
                Target::Family => {
                    let f = CongruenceFamily::new(*a, *b, *s, *t, *m, *residue)?;
                    let n_max = n_max.unwrap_or(100);
                    let order = pick((s * n_max + t) as usize);
                    let r = classify::verify_family(&f, *i_max, n_max, order)?;
                    let params = json!({
                        "target": "family", "a": a, "b": b, "s": s, "t": t, "m": m,
                        "residue": residue, "i_max": i_max, "n_max": n_max,
                    });
                    Ok(verification(vec![r], order, params, command))
                }
                Target::Identity => {
                    let order = order.unwrap_or(cli.default_order);
                    let ids = if name == "all" { Identity::all(*i) } else { vec![Identity::from_name(name, *i)?] };
                    let mut reports = Vec::new();
                    for id in ids {
                        reports.extend(id.check(order)?);
                    }
                    let params = json!({ "target": "identity", "name": name, "i": i });
                    Ok(verification(reports, order, params, command))
                }
            }
        }
    }
}

fn emit(cli: &Cli, text: &str) -> anyhow::Result<()> {
    match &cli.out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut out = std::io::stdout().lock();
            out.write_all(text.as_bytes())?;
            Ok(out.flush()?)
        }
    }
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    let command = std::iter::once("overcubic".to_string())
        .chain(args.iter().skip(1).cloned())
        .collect::<Vec<_>>()
        .join(" ");
    let (record, ok) = match run(&cli, &command) {
        Ok(Outcome::Done(r)) => (r, true),
        Ok(Outcome::Verified(r, ok)) => (r, ok),
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    if let Err(e) = emit(&cli, &record.render(cli.format, cli.metadata)) {
        eprintln!("error: {e:#}");
        return ExitCode::from(2);
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    }
}
