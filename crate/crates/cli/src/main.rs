//! Batch command-line interface for deciding equivariant real structures on
//! symmetric spaces: cohomology of finite Galois modules, existence decisions,
//! class counts, family sweeps, and enumeration-based verification.
//!
//! Exit codes: 0 success, 1 malformed input or invariant failure, 2
//! precondition violation (e.g. counting classes of a structure that does not
//! exist), 3 enumeration budget exceeded. In JSON mode failures are reported
//! as a machine-readable object on stderr.

mod schema;

use clap::{Args, Parser, Subcommand, ValueEnum};
use realsym::abelian::{FinAbGroup, Homomorphism};
use realsym::engine::sweep_sl;
use realsym::gamma::GammaModule;
use realsym::oracle::{enumerate_subgroups, h1_enumerate, h2_enumerate, EnumerationBudget};
use schema::*;
use std::io::Read;
use std::process::ExitCode;

const BUDGET_ENV: &str = "REALFORM_BUDGET";

#[derive(Parser)]
#[command(
    name = "realsym",
    version,
    about = "Decide and count equivariant real structures on complex symmetric spaces"
)]
struct Cli {
    /// Output format
    #[arg(long, global = true, value_enum, default_value_t = Format::Human)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Human,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Compute H^1 and H^2 of a finite abelian group with an involutive action
    Cohom {
        /// Cyclic factor orders, comma separated (e.g. 4,2)
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<i64>,
        /// Action: identity, inversion, swap, swap-inverse, or a JSON matrix
        #[arg(long)]
        action: String,
    },
    /// Decide whether an equivariant real structure exists
    Decide {
        #[command(flatten)]
        input: InputArgs,
        /// Treat the input as a previous decide report and re-run it
        #[arg(long)]
        replay: bool,
    },
    /// Count equivalence classes of structures (errors if none exists)
    Count {
        #[command(flatten)]
        input: InputArgs,
    },
    /// Decide every datum of the special-linear symplectic family in a range
    Sweep {
        #[arg(long)]
        n_min: i64,
        #[arg(long)]
        n_max: i64,
    },
    /// Cross-check normal-form cohomology against exhaustive enumeration
    Verify {
        #[arg(long, value_delimiter = ',', required = true)]
        orders: Vec<i64>,
        #[arg(long)]
        action: String,
        /// Enumeration budget (largest admitted group order); overrides the
        /// REALFORM_BUDGET environment variable
        #[arg(long)]
        budget: Option<u128>,
        /// Also list every subgroup of the group
        #[arg(long)]
        list_subgroups: bool,
    },
}

#[derive(Args)]
struct InputArgs {
    /// Path to a JSON input spec; "-" reads stdin
    #[arg(long)]
    input: Option<String>,
    /// Family shortcut: sl-symplectic or sl-pair
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<i64>,
    #[arg(long)]
    r: Option<i64>,
    #[arg(long)]
    s: Option<i64>,
    /// Generator of H/G^theta as "a,b"; repeat for several (sl-pair)
    #[arg(long = "h-gen")]
    h_gens: Vec<String>,
}

/// A failure carrying its exit code and machine-readable kind.
struct Failure {
    exit_code: u8,
    kind: &'static str,
    message: String,
}

impl Failure {
    fn invalid(message: impl Into<String>) -> Self {
        Failure {
            exit_code: 1,
            kind: "invalid_input",
            message: message.into(),
        }
    }
}

impl From<realsym::Error> for Failure {
    fn from(err: realsym::Error) -> Self {
        match &err {
            realsym::Error::BudgetExceeded { .. } => Failure {
                exit_code: 3,
                kind: "budget_exceeded",
                message: err.to_string(),
            },
            realsym::Error::StructureDoesNotExist => Failure {
                exit_code: 2,
                kind: "precondition_violation",
                message: err.to_string(),
            },
            _ => Failure::invalid(err.to_string()),
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err)
            if matches!(
                err.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            ) =>
        {
            print!("{err}");
            return ExitCode::SUCCESS;
        }
        Err(err) => {
            eprint!("{err}");
            return ExitCode::from(1);
        }
    };
    let format = cli.format;
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(failure) => {
            report_failure(&failure, format);
            ExitCode::from(failure.exit_code)
        }
    }
}

fn report_failure(failure: &Failure, format: Format) {
    match format {
        Format::Human => eprintln!("error: {}", failure.message),
        Format::Json => {
            let report = ErrorReport {
                error: ErrorBody {
                    exit_code: failure.exit_code as i32,
                    kind: failure.kind.to_string(),
                    message: failure.message.clone(),
                },
            };
            eprintln!(
                "{}",
                serde_json::to_string(&report).expect("error serializes")
            );
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Cohom { orders, action } => run_cohom(&orders, &action, cli.format),
        Command::Decide { input, replay } => run_decide(&input, replay, cli.format),
        Command::Count { input } => run_count(&input, cli.format),
        Command::Sweep { n_min, n_max } => run_sweep(n_min, n_max, cli.format),
        Command::Verify {
            orders,
            action,
            budget,
            list_subgroups,
        } => run_verify(&orders, &action, budget, list_subgroups, cli.format),
    }
}

fn build_module(orders: &[i64], action: &str) -> Result<GammaModule, Failure> {
    let group = FinAbGroup::new(orders).map_err(Failure::from)?;
    let k = group.rank();
    let matrix: Vec<Vec<i64>> = match action {
        "identity" => (0..k)
            .map(|i| (0..k).map(|j| i64::from(i == j)).collect())
            .collect(),
        "inversion" => (0..k)
            .map(|i| (0..k).map(|j| if i == j { -1 } else { 0 }).collect())
            .collect(),
        "swap" | "swap-inverse" => {
            if k != 2 || group.orders()[0] != group.orders()[1] {
                return Err(Failure::invalid(format!(
                    "action '{action}' needs exactly two cyclic factors of equal order"
                )));
            }
            let unit = if action == "swap" { 1 } else { -1 };
            vec![vec![0, unit], vec![unit, 0]]
        }
        text => serde_json::from_str(text).map_err(|err| {
            Failure::invalid(format!(
                "action must be identity, inversion, swap, swap-inverse, or a JSON matrix: {err}"
            ))
        })?,
    };
    let action = Homomorphism::new(group.clone(), group.clone(), matrix).map_err(Failure::from)?;
    GammaModule::new(group, action).map_err(Failure::from)
}

fn run_cohom(orders: &[i64], action: &str, format: Format) -> Result<(), Failure> {
    let module = build_module(orders, action)?;
    let h1 = module.h1();
    let h2 = module.h2();
    let report = CohomReport {
        orders: orders.to_vec(),
        action: module.action().matrix().to_vec(),
        h1_rank: h1.rank,
        h1_representatives: h1
            .representatives
            .iter()
            .map(|g| g.coords().to_vec())
            .collect(),
        h2: h2.group.invariant_factors().to_vec(),
    };
    match format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Human => {
            println!("module: {} with action {:?}", module.group(), report.action);
            println!(
                "H^1 rank: {} ({} classes)",
                report.h1_rank,
                1u128 << report.h1_rank
            );
            let reps: Vec<String> = h1.representatives.iter().map(|g| g.to_string()).collect();
            println!("H^1 representatives: {}", reps.join(", "));
            println!("H^2: {}", h2.group);
        }
    }
    Ok(())
}

fn resolve_input(args: &InputArgs) -> Result<InputSpec, Failure> {
    if let Some(path) = &args.input {
        let text = read_input(path)?;
        return serde_json::from_str(&text)
            .map_err(|err| Failure::invalid(format!("input does not match the schema: {err}")));
    }
    let family = args
        .family
        .as_deref()
        .ok_or_else(|| Failure::invalid("provide --input or --family"))?;
    match family {
        "sl-symplectic" => {
            let (n, r, s) = match (args.n, args.r, args.s) {
                (Some(n), Some(r), Some(s)) => (n, r, s),
                _ => {
                    return Err(Failure::invalid(
                        "family sl-symplectic needs --n, --r, and --s",
                    ))
                }
            };
            Ok(InputSpec::SlSymplectic { n, r, s })
        }
        "sl-pair" => {
            let n = args
                .n
                .ok_or_else(|| Failure::invalid("family sl-pair needs --n"))?;
            let h_gens = args
                .h_gens
                .iter()
                .map(|text| {
                    let parts: Vec<i64> = text
                        .split(',')
                        .map(|p| p.trim().parse())
                        .collect::<Result<_, _>>()
                        .map_err(|_| {
                            Failure::invalid(format!("cannot parse generator '{text}' as a,b"))
                        })?;
                    match parts[..] {
                        [a, b] => Ok([a, b]),
                        _ => Err(Failure::invalid(format!(
                            "generator '{text}' must have exactly two coordinates"
                        ))),
                    }
                })
                .collect::<Result<Vec<_>, Failure>>()?;
            Ok(InputSpec::SlPair { n, h_gens })
        }
        other => Err(Failure::invalid(format!(
            "unknown family '{other}'; expected sl-symplectic or sl-pair (use --input for generic data)"
        ))),
    }
}

fn read_input(path: &str) -> Result<String, Failure> {
    if path == "-" {
        let mut buf = String::new();
        std::io::stdin()
            .read_to_string(&mut buf)
            .map_err(|err| Failure::invalid(format!("cannot read stdin: {err}")))?;
        Ok(buf)
    } else {
        std::fs::read_to_string(path)
            .map_err(|err| Failure::invalid(format!("cannot read {path}: {err}")))
    }
}

fn run_decide(args: &InputArgs, replay: bool, format: Format) -> Result<(), Failure> {
    let (spec, stored) = if replay {
        let path = args
            .input
            .as_deref()
            .ok_or_else(|| Failure::invalid("--replay needs --input pointing at a report"))?;
        let text = read_input(path)?;
        let report: DecideReport = serde_json::from_str(&text)
            .map_err(|err| Failure::invalid(format!("not a decide report: {err}")))?;
        (report.input, Some(report.decision))
    } else {
        (resolve_input(args)?, None)
    };
    let engine_input = spec.build().map_err(Failure::from)?;
    let decision = engine_input.decide();
    let dto = DecisionDto::from_decision(&decision);
    if let Some(stored) = stored {
        if stored != dto {
            return Err(Failure {
                exit_code: 1,
                kind: "replay_mismatch",
                message: format!(
                    "stored decision {} does not match the recomputed one {}",
                    to_json(&stored),
                    to_json(&dto)
                ),
            });
        }
    }
    let report = DecideReport {
        input: spec,
        decision: dto,
    };
    match format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Human => render_decision_human(&report),
    }
    Ok(())
}

fn render_decision_human(report: &DecideReport) {
    let d = &report.decision;
    println!("decision for {}", report.input.describe());
    let mark = |failed: &str| -> &'static str {
        match &d.failed_condition {
            Some(c) if c == failed => "FAIL",
            Some(_) | None => "ok",
        }
    };
    let reached_stability = d.failed_condition.as_deref() != Some("not_compatible");
    let reached_delta = reached_stability && d.failed_condition.as_deref() != Some("not_stable");
    println!(
        "  [1] involutions compatible up to inner conjugacy: {}",
        mark("not_compatible")
    );
    println!(
        "  [2] Galois action stabilizes H/G^theta:           {}",
        if reached_stability {
            mark("not_stable")
        } else {
            "not checked"
        }
    );
    println!(
        "  [3] obstruction class Delta_H vanishes:           {}",
        if reached_delta {
            mark("delta_nonzero")
        } else {
            "not checked"
        }
    );
    if let Some(a) = &d.a_canonical {
        let shown = if a.is_empty() {
            "0".to_string()
        } else {
            a.iter()
                .map(|d| format!("Z/{d}"))
                .collect::<Vec<_>>()
                .join(" x ")
        };
        println!("  automorphism group A = {shown}");
    }
    match (d.exists, d.num_classes) {
        (true, Some(count)) => println!("equivariant real structure: exists, {count} class(es)"),
        _ => println!(
            "equivariant real structure: none (failed: {})",
            d.failed_condition.as_deref().unwrap_or("unknown")
        ),
    }
}

fn run_count(args: &InputArgs, format: Format) -> Result<(), Failure> {
    let spec = resolve_input(args)?;
    let engine_input = spec.build().map_err(Failure::from)?;
    let num_classes = engine_input.count_classes().map_err(Failure::from)?;
    let report = CountReport {
        input: spec,
        num_classes,
    };
    match format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Human => println!(
            "{}: {} equivalence class(es)",
            report.input.describe(),
            report.num_classes
        ),
    }
    Ok(())
}

fn run_sweep(n_min: i64, n_max: i64, format: Format) -> Result<(), Failure> {
    let records = sweep_sl(n_min, n_max).map_err(Failure::from)?;
    let report = SweepReport {
        records: records.iter().map(SweepRecordDto::from_record).collect(),
    };
    match format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Human => {
            println!(
                "{:>4} {:>4} {:>4} {:>4} {:>7} {:>16} {:>8}",
                "n", "r", "s", "t", "exists", "failed", "classes"
            );
            for rec in &report.records {
                println!(
                    "{:>4} {:>4} {:>4} {:>4} {:>7} {:>16} {:>8}",
                    rec.n,
                    rec.r,
                    rec.s,
                    rec.t,
                    rec.exists,
                    rec.failed_condition.as_deref().unwrap_or("-"),
                    rec.num_classes.map_or("-".to_string(), |c| c.to_string()),
                );
            }
        }
    }
    Ok(())
}

fn resolve_budget(flag: Option<u128>) -> Result<EnumerationBudget, Failure> {
    if let Some(max_order) = flag {
        return EnumerationBudget::new(max_order).map_err(Failure::from);
    }
    if let Ok(text) = std::env::var(BUDGET_ENV) {
        let max_order: u128 = text.parse().map_err(|_| {
            Failure::invalid(format!(
                "{BUDGET_ENV} must be a positive integer, got '{text}'"
            ))
        })?;
        return EnumerationBudget::new(max_order).map_err(Failure::from);
    }
    Ok(EnumerationBudget::default())
}

fn run_verify(
    orders: &[i64],
    action: &str,
    budget: Option<u128>,
    list_subgroups: bool,
    format: Format,
) -> Result<(), Failure> {
    let module = build_module(orders, action)?;
    let budget = resolve_budget(budget)?;
    let h1_enum = h1_enumerate(&module, &budget).map_err(Failure::from)?;
    let h2_enum = h2_enumerate(&module, &budget).map_err(Failure::from)?;
    let h1 = module.h1();
    let h2 = module.h2();
    let formula = module.h1_count_formula();
    let agree = h1_enum.count == formula
        && formula == 1u128 << h1.rank
        && h1_enum.representatives == h1.representatives
        && h2_enum.count == h2.group.cardinality();
    let subgroups = if list_subgroups {
        let subs = enumerate_subgroups(module.group(), &budget).map_err(Failure::from)?;
        Some(subs.iter().map(SubgroupDto::from_subgroup).collect())
    } else {
        None
    };
    let report = VerifyReport {
        orders: orders.to_vec(),
        action: module.action().matrix().to_vec(),
        h1_enumerated: h1_enum.count,
        h1_formula: formula,
        h1_rank: h1.rank,
        h2_enumerated: h2_enum.count,
        h2: h2.group.invariant_factors().to_vec(),
        agree,
        subgroups,
    };
    match format {
        Format::Json => println!("{}", to_json(&report)),
        Format::Human => {
            println!("module: {} with action {:?}", module.group(), report.action);
            println!(
                "H^1: enumerated {} classes, formula {}, normal form 2^{}",
                report.h1_enumerated, report.h1_formula, report.h1_rank
            );
            println!(
                "H^2: enumerated {} classes, normal form {}",
                report.h2_enumerated, h2.group
            );
            if let Some(subs) = &report.subgroups {
                println!("subgroups ({}):", subs.len());
                for sub in subs {
                    let gens: Vec<String> = sub
                        .generators
                        .iter()
                        .map(|g| {
                            format!(
                                "({})",
                                g.iter().map(i64::to_string).collect::<Vec<_>>().join(",")
                            )
                        })
                        .collect();
                    println!("  order {:>4}  <{}>", sub.order, gens.join(", "));
                }
            }
            println!("agree: {}", report.agree);
        }
    }
    if !agree {
        return Err(Failure {
            exit_code: 1,
            kind: "verification_failed",
            message: "normal-form cohomology disagrees with enumeration".into(),
        });
    }
    Ok(())
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    serde_json::to_string(value).expect("reports serialize")
}
