//! Command-line front end for the arrangement multiplier-ideal engine.
//!
//! Every subcommand reads an arrangement (from a file or stdin via `-`),
//! localizes it at a point when `--at` is given, and prints either a plain
//! text report or, with `--json`, a single line of deterministic JSON.
//!
//! Exit codes: 0 success, 1 bad input or usage, 2 budget exceeded,
//! 3 internal cross-check failure.

use std::io::Read;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};

use arrmult_core::arrangement::Arrangement;
use arrmult_core::lattice::{build_lattice, Flat, IntersectionLattice};
use arrmult_core::linalg::Subspace;
use arrmult_core::multiplier::{
    assessment_json, candidate_jumping_numbers, flat_json, flat_power_json, ideal_json,
    jumping_numbers, lattice_json, lct, left_limit_ideal, maximal_support_flats,
    multiplier_ideal, set_theoretic_jumping, support_flats, witness_json, FlatPowerIdeal,
    JumpMethod,
};
use arrmult_core::poly::Poly;
use arrmult_core::ratio::{fmt_rat, int, parse_rat};
use arrmult_core::{verify, EngineConfig, Error, Rat, Result};

#[derive(Parser)]
#[command(
    name = "arrmult",
    version,
    about = "Exact multiplier ideals, log canonical thresholds and jumping numbers of hyperplane arrangements"
)]
struct Cli {
    /// Emit one line of JSON instead of the text report
    #[arg(long, global = true)]
    json: bool,

    /// Engine budget profile (overrides the ARRMULT_BUDGET environment variable)
    #[arg(long, global = true, value_name = "PROFILE")]
    budget: Option<String>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Print the intersection lattice of the arrangement
    Lattice {
        /// Arrangement file, or `-` for stdin
        file: String,
        /// Localize at a point, e.g. `--at 0,1,0`
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// Log canonical threshold of the arrangement
    Lct {
        file: String,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// Multiplier ideal I(lambda) as an intersection of flat powers
    Mi {
        file: String,
        /// Parameter value as an exact rational, e.g. `--lambda 2/3`
        #[arg(long, value_name = "RATIONAL")]
        lambda: String,
        /// Also expand the intersection into a single generating set
        #[arg(long)]
        expand: bool,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// Left limit of the multiplier ideal at lambda
    Limit {
        file: String,
        #[arg(long, value_name = "RATIONAL")]
        lambda: String,
        #[arg(long)]
        expand: bool,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// Flats on which I(lambda) vanishes, and the maximal ones
    Support {
        file: String,
        #[arg(long, value_name = "RATIONAL")]
        lambda: String,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// Decide which candidates up to a bound are jumping numbers
    Jumping {
        file: String,
        /// Largest value to test
        #[arg(long, value_name = "RATIONAL", default_value = "1")]
        max: String,
        /// Decision procedure: compare, witness, witness-restricted or all
        #[arg(long, default_value = "all")]
        method: String,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// List candidate jumping numbers with their witnessing flats
    Candidates {
        file: String,
        #[arg(long, value_name = "RATIONAL", default_value = "1")]
        max: String,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// For each flat, the smallest lambda whose ideal vanishes on it
    Settheoretic {
        file: String,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// Run an internal consistency oracle and report the check count
    Verify {
        /// standard, closed-form, membership, truncation, methods or support
        #[arg(long, default_value = "standard")]
        oracle: String,
        /// Arrangement file for the lattice-based oracles
        file: Option<String>,
        #[arg(long, default_value_t = 20260817)]
        seed: u64,
        /// Trial count for the membership oracle
        #[arg(long, default_value_t = 200)]
        trials: usize,
        /// Ambient dimension for the closed-form oracle
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Hyperplane count for the closed-form oracle
        #[arg(long, default_value_t = 6)]
        d: usize,
        /// Parameter for the truncation and support oracles
        #[arg(long, value_name = "RATIONAL")]
        lambda: Option<String>,
        /// Candidate bound for the methods oracle
        #[arg(long, value_name = "RATIONAL", default_value = "1")]
        max: String,
        /// Degree bound for the truncation oracle
        #[arg(long, default_value_t = 6)]
        degree: u32,
        #[arg(long, value_name = "POINT")]
        at: Option<String>,
    },
    /// Print a member of a named arrangement family
    Gen {
        /// boolean, pencil, braid or generic
        #[arg(long)]
        family: String,
        /// Ambient dimension (boolean, braid, generic)
        #[arg(long, default_value_t = 3)]
        n: usize,
        /// Line count for the pencil family
        #[arg(long, default_value_t = 3)]
        s: usize,
        /// Hyperplane count for the generic family
        #[arg(long, default_value_t = 4)]
        d: usize,
        /// Sampling seed for the generic family
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(err) => {
            // Help and version requests land here too; only real usage
            // errors should exit nonzero.
            let code = u8::from(err.use_stderr());
            let _ = err.print();
            return ExitCode::from(code);
        }
    };
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err}");
            ExitCode::from(match err {
                Error::BudgetExceeded { .. } => 2,
                Error::CrossCheckFailed { .. } => 3,
                _ => 1,
            })
        }
    }
}

fn run(cli: &Cli) -> Result<()> {
    let cfg = engine_config(&cli.budget)?;
    match &cli.command {
        Command::Lattice { file, at } => {
            let lattice = load_lattice(file, at)?;
            if cli.json {
                print_json(lattice_json(&lattice));
            } else {
                println!("ambient {}", lattice.ambient());
                println!("hyperplanes {}", lattice.size());
                println!("flats {}", lattice.flats().len());
                for flat in lattice.flats() {
                    println!("{}", flat_line(flat));
                }
            }
            Ok(())
        }
        Command::Lct { file, at } => {
            let lattice = load_lattice(file, at)?;
            let value = lct(&lattice)?;
            let shown = match &value {
                Some(r) => fmt_rat(r),
                None => "infinity".to_string(),
            };
            if cli.json {
                print_json(json!({ "lct": shown }));
            } else {
                println!("lct = {shown}");
            }
            Ok(())
        }
        Command::Mi {
            file,
            lambda,
            expand,
            at,
        } => {
            let lattice = load_lattice(file, at)?;
            let lambda = parse_rat(lambda)?;
            let ideal = multiplier_ideal(&lattice, &lambda)?;
            report_flat_power(cli, &cfg, format!("I({})", fmt_rat(&lambda)), &lambda, &ideal, *expand)
        }
        Command::Limit {
            file,
            lambda,
            expand,
            at,
        } => {
            let lattice = load_lattice(file, at)?;
            let lambda = parse_rat(lambda)?;
            let ideal = left_limit_ideal(&lattice, &lambda)?;
            report_flat_power(cli, &cfg, format!("I({}^-)", fmt_rat(&lambda)), &lambda, &ideal, *expand)
        }
        Command::Support { file, lambda, at } => {
            let lattice = load_lattice(file, at)?;
            let lambda = parse_rat(lambda)?;
            let support = support_flats(&lattice, &lambda);
            let maximal = maximal_support_flats(&lattice, &lambda);
            if cli.json {
                print_json(json!({
                    "lambda": fmt_rat(&lambda),
                    "support": support.iter().map(|f| flat_json(f)).collect::<Vec<_>>(),
                    "maximal": maximal.iter().map(|f| flat_json(f)).collect::<Vec<_>>(),
                }));
            } else {
                println!("lambda = {}", fmt_rat(&lambda));
                println!("support flats ({}):", support.len());
                for flat in &support {
                    println!("  {}", flat_line(flat));
                }
                println!("maximal support flats ({}):", maximal.len());
                for flat in &maximal {
                    println!("  {}", flat_line(flat));
                }
            }
            Ok(())
        }
        Command::Jumping {
            file,
            max,
            method,
            at,
        } => {
            let lattice = load_lattice(file, at)?;
            let max = parse_rat(max)?;
            let method_parsed = JumpMethod::parse(method)?;
            let assessments = jumping_numbers(&lattice, &max, method_parsed, &cfg)?;
            let jumping: Vec<String> = assessments
                .iter()
                .filter(|a| a.jumping)
                .map(|a| fmt_rat(&a.lambda))
                .collect();
            if cli.json {
                print_json(json!({
                    "max": fmt_rat(&max),
                    "method": method,
                    "assessments": assessments.iter().map(assessment_json).collect::<Vec<_>>(),
                    "jumping": jumping,
                }));
            } else {
                println!("candidates up to {} (method {}):", fmt_rat(&max), method);
                for a in &assessments {
                    let verdict = if a.jumping { "jumping" } else { "not jumping" };
                    let plural = if a.witnesses.len() == 1 { "" } else { "es" };
                    println!(
                        "  {} {} ({} witness{})",
                        fmt_rat(&a.lambda),
                        verdict,
                        a.witnesses.len(),
                        plural
                    );
                }
                println!("jumping: {}", jumping.join(", "));
            }
            Ok(())
        }
        Command::Candidates { file, max, at } => {
            let lattice = load_lattice(file, at)?;
            let max = parse_rat(max)?;
            let candidates = candidate_jumping_numbers(&lattice, &max)?;
            if cli.json {
                let rows: Vec<Value> = candidates
                    .iter()
                    .map(|(value, witnesses)| {
                        json!({
                            "value": fmt_rat(value),
                            "witnesses": witnesses.iter().map(witness_json).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                print_json(json!({ "max": fmt_rat(&max), "candidates": rows }));
            } else {
                println!("candidates up to {}:", fmt_rat(&max));
                for (value, witnesses) in &candidates {
                    let plural = if witnesses.len() == 1 { "" } else { "es" };
                    println!("  {} ({} witness{})", fmt_rat(value), witnesses.len(), plural);
                }
            }
            Ok(())
        }
        Command::Settheoretic { file, at } => {
            let lattice = load_lattice(file, at)?;
            let groups = set_theoretic_jumping(&lattice);
            if cli.json {
                let rows: Vec<Value> = groups
                    .iter()
                    .map(|(value, flats)| {
                        json!({
                            "value": fmt_rat(value),
                            "flats": flats.iter().map(flat_json).collect::<Vec<_>>(),
                        })
                    })
                    .collect();
                print_json(Value::Array(rows));
            } else {
                for (value, flats) in &groups {
                    println!("value {}:", fmt_rat(value));
                    for flat in flats {
                        println!("  {}", flat_line(flat));
                    }
                }
            }
            Ok(())
        }
        Command::Verify {
            oracle,
            file,
            seed,
            trials,
            n,
            d,
            lambda,
            max,
            degree,
            at,
        } => {
            let checks = match oracle.as_str() {
                "standard" => verify::standard_bundle(*seed, &cfg)?,
                "closed-form" => verify::generic_closed_form_sweep(*n, *d, *seed, &cfg)?,
                "membership" => verify::membership_trials(*trials, *seed, &cfg)?,
                "truncation" => {
                    let lattice = oracle_lattice(oracle, file, at)?;
                    let lambda = oracle_lambda(oracle, lambda)?;
                    verify::truncation_check(&lattice, &lambda, *degree, &cfg)?
                }
                "methods" => {
                    let lattice = oracle_lattice(oracle, file, at)?;
                    verify::methods_agreement(&lattice, &parse_rat(max)?, &cfg)?
                }
                "support" => {
                    let lattice = oracle_lattice(oracle, file, at)?;
                    let lambda = oracle_lambda(oracle, lambda)?;
                    verify::support_points_check(&lattice, &lambda, &cfg)?
                }
                other => {
                    return Err(Error::invalid(format!(
                        "unknown oracle `{other}` (available: standard, closed-form, \
                         membership, truncation, methods, support)"
                    )))
                }
            };
            if cli.json {
                print_json(json!({ "oracle": oracle, "checks": checks, "ok": true }));
            } else {
                println!("ok: {checks} checks ({oracle})");
            }
            Ok(())
        }
        Command::Gen {
            family,
            n,
            s,
            d,
            seed,
        } => {
            let arrangement = match family.as_str() {
                "boolean" => Arrangement::boolean(*n)?,
                "pencil" => Arrangement::pencil(*s)?,
                "braid" => Arrangement::braid(*n)?,
                "generic" => Arrangement::generic(*n, *d, *seed)?,
                other => {
                    return Err(Error::invalid(format!(
                        "unknown family `{other}` (available: boolean, pencil, braid, generic)"
                    )))
                }
            };
            if cli.json {
                let rows: Vec<String> = arrangement
                    .hyperplanes()
                    .iter()
                    .map(|h| h.form().to_string())
                    .collect();
                print_json(json!({ "dim": arrangement.ambient(), "hyperplanes": rows }));
            } else {
                print!("{}", arrangement.to_text());
            }
            Ok(())
        }
    }
}

/// Resolves the budget profile from the flag, then the environment, then
/// the default.
fn engine_config(flag: &Option<String>) -> Result<EngineConfig> {
    let name = match flag {
        Some(name) => name.clone(),
        None => std::env::var("ARRMULT_BUDGET").unwrap_or_else(|_| "default".to_string()),
    };
    EngineConfig::profile(&name).ok_or_else(|| {
        Error::invalid(format!(
            "unknown budget profile `{}` (available: {})",
            name,
            EngineConfig::PROFILE_NAMES.join(", ")
        ))
    })
}

fn read_input(path: &str) -> Result<String> {
    if path == "-" {
        let mut text = String::new();
        std::io::stdin()
            .read_to_string(&mut text)
            .map_err(|e| Error::invalid(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(path).map_err(|e| Error::invalid(format!("reading {path}: {e}")))
    }
}

fn parse_point(text: &str) -> Result<Vec<Rat>> {
    text.split(',').map(|c| parse_rat(c.trim())).collect()
}

fn load_lattice(file: &str, at: &Option<String>) -> Result<IntersectionLattice> {
    let arrangement = Arrangement::parse(&read_input(file)?)?;
    let arrangement = match at {
        Some(point) => arrangement.localize(&parse_point(point)?)?,
        None => arrangement,
    };
    build_lattice(&arrangement)
}

fn oracle_lattice(
    oracle: &str,
    file: &Option<String>,
    at: &Option<String>,
) -> Result<IntersectionLattice> {
    let file = file
        .as_ref()
        .ok_or_else(|| Error::invalid(format!("the {oracle} oracle needs an arrangement file")))?;
    load_lattice(file, at)
}

fn oracle_lambda(oracle: &str, lambda: &Option<String>) -> Result<Rat> {
    let lambda = lambda
        .as_ref()
        .ok_or_else(|| Error::invalid(format!("the {oracle} oracle needs --lambda")))?;
    parse_rat(lambda)
}

fn print_json(value: Value) {
    println!(
        "{}",
        serde_json::to_string(&value).expect("JSON serialization cannot fail")
    );
}

/// One-line description of a flat: combinatorial data plus the linear forms
/// cutting it out.
fn flat_line(flat: &Flat) -> String {
    if flat.rank == 0 {
        return "rank 0 mult 0 (whole space)".to_string();
    }
    let indices: Vec<String> = flat.hyperplanes.iter().map(|i| i.to_string()).collect();
    format!(
        "rank {} mult {} hyperplanes [{}] cut out by {}",
        flat.rank,
        flat.mult,
        indices.join(", "),
        forms_of(&flat.subspace)
    )
}

fn forms_of(subspace: &Subspace) -> String {
    subspace
        .normals()
        .iter()
        .map(|row| Poly::linear(row, int(0)).to_string())
        .collect::<Vec<_>>()
        .join(", ")
}

/// Prints a flat-power intersection, optionally expanded to generators.
fn report_flat_power(
    cli: &Cli,
    cfg: &EngineConfig,
    label: String,
    lambda: &Rat,
    ideal: &FlatPowerIdeal,
    expand: bool,
) -> Result<()> {
    let expanded = if expand { Some(ideal.expand(cfg)?) } else { None };
    if cli.json {
        let mut value = json!({
            "lambda": fmt_rat(lambda),
            "symbolic": flat_power_json(ideal),
            "trivial": ideal.is_trivial(),
        });
        if let Some(e) = &expanded {
            value["expanded"] = ideal_json(e);
        }
        print_json(value);
    } else {
        if ideal.is_trivial() {
            println!("{label} = (1)");
        } else {
            let factors: Vec<String> = ideal
                .terms()
                .iter()
                .map(|(flat, e)| format!("({})^{}", forms_of(&flat.subspace), e))
                .collect();
            println!("{label} = {}", factors.join(" & "));
        }
        if let Some(e) = &expanded {
            let gens: Vec<String> = e.gens().iter().map(|g| g.to_string()).collect();
            println!("generators: {}", gens.join(", "));
        }
    }
    Ok(())
}
