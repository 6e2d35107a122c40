//! `qca` — compute in quantum cluster algebras from the command line.
//!
//! Subcommands: `compat`, `mutate`, `explore`, `cartan`, `verify`,
//! `center`. All I/O is UTF-8 JSON (plus DOT text inside graph exports).
//! Exit codes: 0 success, 1 I/O or parse failure, 2 mathematical failure.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use qca::cartan::{cartan_input_from_json, verify_theorem_identities};
use qca::pairs::{
    check_compatible, find_compatible_lambda, pair_from_json, pair_to_json, ExchangeMatrix,
};
use qca::qtorus::json::{int_matrix_from_json, int_matrix_to_json};
use qca::qtorus::{center_kernel, SkewForm, TorusElement};
use qca::seeds::{explore, initial_seed, QuantumSeed};
use qca::verify::{run_all, run_suite, SUITE_NAMES};

#[derive(Parser)]
#[command(name = "qca", version, about = "Exact computation in quantum cluster algebras")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum CompatAction {
    /// Verify compatibility and print the diagonal.
    Check,
    /// Solve for a compatible skew form.
    Solve,
}

#[derive(Subcommand)]
enum Command {
    /// Check a pair for compatibility, or solve for a skew form.
    Compat {
        #[arg(value_enum)]
        action: CompatAction,
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Apply a mutation sequence to a seed (or to the initial seed of a
    /// pair document), printing each new cluster variable.
    Mutate {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Name stored in the output document.
        #[arg(long)]
        seed_name: Option<String>,
        /// Mutation directions, applied left to right.
        directions: Vec<usize>,
    },
    /// Breadth-first exchange-graph exploration.
    Explore {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long, default_value_t = 1000)]
        max_seeds: usize,
        #[arg(long, default_value_t = 64)]
        max_depth: usize,
    },
    /// Build the graded seed attached to a Cartan matrix and double word.
    Cartan {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        #[arg(long)]
        seed_name: Option<String>,
    },
    /// Run a named property suite (or all of them).
    Verify {
        /// One of: involutivity, epsilon-independence, bar, grading,
        /// theorem83, prop71, laurent, all.
        #[arg(long, default_value = "all")]
        suite: String,
    },
    /// A basis of the center of the quantum torus of a pair.
    Center {
        #[arg(short, long)]
        input: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

enum CliError {
    /// I/O trouble or malformed input: exit code 1.
    Io(String),
    /// A mathematically meaningful failure: exit code 2.
    Math(String),
}

impl CliError {
    fn io(e: impl std::fmt::Display) -> Self {
        CliError::Io(e.to_string())
    }

    fn math(e: impl std::fmt::Display) -> Self {
        CliError::Math(e.to_string())
    }
}

/// Classify library errors: structural decoding problems are input errors
/// (exit 1), everything else is a mathematical failure (exit 2).
trait IntoCliError {
    fn into_cli(self) -> CliError;
}

impl IntoCliError for qca::pairs::PairError {
    fn into_cli(self) -> CliError {
        use qca::pairs::PairError::*;
        match &self {
            BadShape(_) | Torus(qca::qtorus::TorusError::Json(_)) => CliError::io(self),
            _ => CliError::math(self),
        }
    }
}

impl IntoCliError for qca::seeds::SeedError {
    fn into_cli(self) -> CliError {
        use qca::seeds::SeedError::*;
        match &self {
            Json(_) | Torus(qca::qtorus::TorusError::Json(_)) => CliError::io(self),
            Pair(qca::pairs::PairError::BadShape(_)) => CliError::io(self),
            _ => CliError::math(self),
        }
    }
}

impl IntoCliError for qca::cartan::CartanError {
    fn into_cli(self) -> CliError {
        use qca::cartan::CartanError::*;
        match &self {
            Json(_) => CliError::io(self),
            _ => CliError::math(self),
        }
    }
}

impl IntoCliError for qca::qtorus::TorusError {
    fn into_cli(self) -> CliError {
        match &self {
            qca::qtorus::TorusError::Json(_) => CliError::io(self),
            _ => CliError::math(self),
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(CliError::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(CliError::Math(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn read_json(path: &Path) -> Result<Value, CliError> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

fn write_json(path: &Path, value: &Value) -> Result<(), CliError> {
    let mut text = serde_json::to_string_pretty(value)
        .map_err(|e| CliError::io(e.to_string()))?;
    text.push('\n');
    std::fs::write(path, text).map_err(|e| CliError::io(format!("{}: {e}", path.display())))
}

/// Render a cluster variable in the monomial-basis notation
/// `coeff*Y^(a_1,...,a_m)`, highest exponent vector first.
fn render_y(x: &TorusElement) -> String {
    if x.is_zero() {
        return "0".into();
    }
    let mut out = String::new();
    for (i, (e, c)) in x.iter().rev().enumerate() {
        if i > 0 {
            out.push_str(" + ");
        }
        let coeff = c.to_string();
        let trivial_exp = e.iter().all(|&v| v == 0);
        if c.num_terms() > 1 || coeff.contains('-') {
            let _ = write!(out, "({coeff})");
        } else if !c.is_one() || trivial_exp {
            out.push_str(&coeff);
        }
        if !trivial_exp {
            if !c.is_one() {
                out.push('*');
            }
            out.push_str("Y^(");
            for (j, v) in e.iter().enumerate() {
                if j > 0 {
                    out.push(',');
                }
                let _ = write!(out, "{v}");
            }
            out.push(')');
        }
    }
    out
}

fn matrix_lines(rows: &[Vec<i64>]) -> String {
    rows.iter()
        .map(|r| {
            r.iter()
                .map(|v| format!("{v:>3}"))
                .collect::<Vec<_>>()
                .join(" ")
        })
        .collect::<Vec<_>>()
        .join("\n")
}

/// Load a seed document, or fall back to treating the input as a bare pair
/// document and taking its initial seed.
fn load_seed(doc: &Value) -> Result<(QuantumSeed, Option<String>), CliError> {
    let name = doc
        .get("name")
        .and_then(|v| v.as_str())
        .map(|s| s.to_string());
    if doc.get("frame").is_some() || doc.get("pair").is_some() {
        let seed = QuantumSeed::from_json(doc).map_err(IntoCliError::into_cli)?;
        return Ok((seed, name));
    }
    let (pair, sigma) = pair_from_json(doc).map_err(IntoCliError::into_cli)?;
    let seed = initial_seed(pair, sigma).map_err(IntoCliError::into_cli)?;
    Ok((seed, name))
}

fn seed_doc(seed: &QuantumSeed, name: Option<&str>) -> Value {
    let mut doc = seed.to_json();
    doc["name"] = json!(name.unwrap_or("seed"));
    doc
}

fn run(command: Command) -> Result<(), CliError> {
    match command {
        Command::Compat { action, input, output } => {
            let doc = read_json(&input)?;
            match action {
                CompatAction::Check => {
                    let (pair, sigma) = pair_from_json(&doc).map_err(IntoCliError::into_cli)?;
                    println!("compatible on ex = {:?}", pair.ex());
                    println!(
                        "D = diag({})",
                        pair.d()
                            .iter()
                            .map(|d| d.to_string())
                            .collect::<Vec<_>>()
                            .join(", ")
                    );
                    if let Some(path) = output {
                        write_json(&path, &pair_to_json(&pair, sigma.as_ref()))?;
                    }
                }
                CompatAction::Solve => {
                    let bt = ExchangeMatrix::from_json(&doc).map_err(IntoCliError::into_cli)?;
                    let d = match doc.get("d") {
                        Some(Value::Array(arr)) => arr
                            .iter()
                            .map(|v| {
                                v.as_i64().ok_or_else(|| {
                                    CliError::Io("d entries must be integers".into())
                                })
                            })
                            .collect::<Result<Vec<_>, _>>()?,
                        _ => {
                            // minimal symmetrizer of the principal part; if
                            // no integer form exists for it, retry doubled
                            let principal = bt.principal_part();
                            let d0 = qca::pairs::is_skew_symmetrizable(&principal)
                                .ok_or_else(|| CliError::Math("principal part is not skew-symmetrizable".into()))?;
                            if find_compatible_lambda(&bt, &d0).is_ok() {
                                d0
                            } else {
                                d0.iter().map(|v| 2 * v).collect()
                            }
                        }
                    };
                    let lambda = find_compatible_lambda(&bt, &d).map_err(IntoCliError::into_cli)?;
                    println!("lambda =");
                    println!("{}", matrix_lines(lambda.rows()));
                    let pair = check_compatible(lambda, bt).map_err(IntoCliError::into_cli)?;
                    if let Some(path) = output {
                        write_json(&path, &pair_to_json(&pair, None))?;
                    }
                }
            }
            Ok(())
        }
        Command::Mutate { input, output, seed_name, directions } => {
            let doc = read_json(&input)?;
            let (mut seed, loaded_name) = load_seed(&doc)?;
            for (step, &k) in directions.iter().enumerate() {
                seed = seed.mutate(k).map_err(IntoCliError::into_cli)?;
                println!(
                    "mutation {} at direction {k}: {}",
                    step + 1,
                    render_y(seed.frame_entry(k))
                );
            }
            if directions.is_empty() {
                println!("no directions given; seed unchanged");
            }
            let name = seed_name.or(loaded_name);
            if let Some(path) = output {
                write_json(&path, &seed_doc(&seed, name.as_deref()))?;
            }
            Ok(())
        }
        Command::Explore { input, output, max_seeds, max_depth } => {
            let doc = read_json(&input)?;
            let (seed, _) = load_seed(&doc)?;
            let graph = explore(&seed, max_seeds, max_depth).map_err(IntoCliError::into_cli)?;
            println!(
                "exchange graph: {} seeds, {}",
                graph.len(),
                if graph.truncated() { "truncated at the caps" } else { "closed" }
            );
            print!("{}", graph.to_dot());
            if let Some(path) = output {
                write_json(&path, &graph.to_json())?;
            }
            Ok(())
        }
        Command::Cartan { input, output, seed_name } => {
            let doc = read_json(&input)?;
            let (cd, dw) = cartan_input_from_json(&doc).map_err(IntoCliError::into_cli)?;
            let triple = verify_theorem_identities(&cd, &dw).map_err(IntoCliError::into_cli)?;
            println!("word condition: {:?}", triple.condition);
            println!("ex = {:?}", triple.pair.ex());
            println!("btilde =");
            println!("{}", matrix_lines(triple.pair.btilde().entries()));
            println!("lambda =");
            println!("{}", matrix_lines(triple.pair.lambda().rows()));
            println!("sigma =");
            println!("{}", matrix_lines(triple.sigma.rows()));
            let seed = initial_seed(triple.pair, Some(triple.sigma)).map_err(IntoCliError::into_cli)?;
            if let Some(path) = output {
                write_json(&path, &seed_doc(&seed, seed_name.as_deref()))?;
            }
            Ok(())
        }
        Command::Verify { suite } => {
            let reports = if suite == "all" {
                run_all()
            } else {
                match run_suite(&suite) {
                    Some(r) => vec![r],
                    None => {
                        return Err(CliError::Io(format!(
                            "unknown suite {suite:?}; available: {}, all",
                            SUITE_NAMES.join(", ")
                        )))
                    }
                }
            };
            let mut failed = 0usize;
            for report in &reports {
                print!("{report}");
                failed += report.failed;
            }
            if failed > 0 {
                return Err(CliError::Math(format!("{failed} case(s) failed")));
            }
            Ok(())
        }
        Command::Center { input, output } => {
            let doc = read_json(&input)?;
            // accept a pair document, or a seed document with the pair nested
            let lambda_doc = if doc.get("lambda").is_some() {
                &doc["lambda"]
            } else {
                &doc["pair"]["lambda"]
            };
            let lambda = SkewForm::new(
                int_matrix_from_json(lambda_doc).map_err(IntoCliError::into_cli)?,
            )
            .map_err(IntoCliError::into_cli)?;
            let basis = center_kernel(&lambda);
            println!(
                "center of the quantum torus: rank {} over the Laurent coefficients",
                basis.len()
            );
            for v in &basis {
                println!("  X^{v:?}");
            }
            if let Some(path) = output {
                write_json(&path, &json!({ "basis": int_matrix_to_json(&basis) }))?;
            }
            Ok(())
        }
    }
}
