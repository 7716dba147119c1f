use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use sdom_core::asymptotics::{expected_count, expected_count_at_weight, predict_window, MomentQuery, Variant};
use sdom_core::experiments::{run_trials, summarize, write_csv, ExperimentConfig, Summary};
use sdom_core::sdf::parse_rational;
use sdom_core::selfcheck;
use sdom_core::solver::{solve_brute_with, solve_structural_with, SolveResult, SolverConfig};
use sdom_core::{generate_gnp, CParam, Error, Execution, Graph, Seed};

#[derive(Parser)]
#[command(name = "sdom", version, about = "Exact c-self domination numbers and G(n,p) window experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum MethodArg {
    Brute,
    Structural,
    Both,
}

#[derive(Clone, Copy, ValueEnum)]
enum VariantArg {
    Main,
    Weak,
    Classical,
    Roman,
    Differential,
}

impl From<VariantArg> for Variant {
    fn from(v: VariantArg) -> Self {
        match v {
            VariantArg::Main => Variant::Main,
            VariantArg::Weak => Variant::Weak,
            VariantArg::Classical => Variant::Classical,
            VariantArg::Roman => Variant::Roman,
            VariantArg::Differential => Variant::Differential,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Compute gamma^c of a graph file and print the optimum and a witness.
    Solve {
        /// Edge-list file, or "-" for standard input.
        #[arg(long)]
        graph: PathBuf,
        /// "s/t", an integer, or "inf".
        #[arg(long)]
        c: String,
        #[arg(long, value_enum, default_value = "structural")]
        method: MethodArg,
        #[arg(long, default_value_t = 16)]
        brute_max_n: usize,
        #[arg(long, default_value_t = 128)]
        structural_max_n: usize,
    },
    /// Sample G(n,p) and print it in edge-list form.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Print the predicted concentration window as JSON.
    Window {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, value_enum)]
        variant: VariantArg,
    },
    /// Print E(X_{m1,m2}), or E(X_a) when --a and --t are given.
    Expect {
        #[arg(long)]
        n: u64,
        #[arg(long)]
        p: f64,
        #[arg(long, requires = "m2", conflicts_with = "a")]
        m1: Option<u64>,
        #[arg(long, requires = "m1")]
        m2: Option<u64>,
        #[arg(long, requires = "t")]
        a: Option<String>,
        #[arg(long)]
        t: Option<u32>,
    },
    /// Run Monte Carlo trials; CSV goes to --out (default stdout).
    Experiment {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long)]
        s: Option<u32>,
        #[arg(long)]
        t: Option<u32>,
        #[arg(long, value_enum, default_value = "main")]
        variant: VariantArg,
        #[arg(long, default_value_t = 200)]
        trials: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Summary JSON destination.
        #[arg(long)]
        summary: Option<PathBuf>,
        /// Per-trial budget in milliseconds; slower trials are recorded as timeouts.
        #[arg(long)]
        time_budget_ms: Option<u64>,
        /// Record measured solve times (makes output run-dependent).
        #[arg(long)]
        timing: bool,
        /// Run trials on one thread.
        #[arg(long)]
        sequential: bool,
    },
    /// Run the reduced property suites; exit 0 iff all pass.
    Selfcheck {
        #[arg(long, hide = true)]
        inject_fault: bool,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    Disagreement,
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl From<io::Error> for Failure {
    fn from(e: io::Error) -> Self {
        Failure::Core(e.into())
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Guard { .. } => 3,
                Error::Timeout => 4,
                _ => 2,
            })
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
        Err(Failure::Disagreement) | Err(Failure::Checks) => ExitCode::from(1),
    }
}

fn read_input(path: &Path) -> io::Result<String> {
    if path == Path::new("-") {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s)?;
        Ok(s)
    } else {
        fs::read_to_string(path)
    }
}

fn emit(path: Option<&Path>, text: &str) -> io::Result<()> {
    match path {
        Some(p) => fs::write(p, text),
        None => io::stdout().write_all(text.as_bytes()),
    }
}

fn print_result(label: Option<&str>, r: &SolveResult) {
    match label {
        Some(l) => println!("{l}: {}", r.optimum),
        None => println!("{}", r.optimum),
    }
}

fn run(cmd: Command) -> Result<(), Failure> {
    match cmd {
        Command::Solve { graph, c, method, brute_max_n, structural_max_n } => {
            let c: CParam = c.parse()?;
            let g = Graph::parse(&read_input(&graph)?)?;
            let cfg = SolverConfig { brute_max_n, structural_max_n, ..SolverConfig::default() };
            let result = match method {
                MethodArg::Brute => {
                    let r = solve_brute_with(&g, c, &cfg)?;
                    print_result(None, &r);
                    r
                }
                MethodArg::Structural => {
                    let r = solve_structural_with(&g, c, &cfg)?;
                    print_result(None, &r);
                    r
                }
                MethodArg::Both => {
                    let b = solve_brute_with(&g, c, &cfg)?;
                    let s = solve_structural_with(&g, c, &cfg)?;
                    print_result(Some("brute"), &b);
                    print_result(Some("structural"), &s);
                    if b.optimum != s.optimum {
                        eprintln!("error: methods disagree");
                        return Err(Failure::Disagreement);
                    }
                    s
                }
            };
            match &result.witness {
                Some(w) => println!("witness: {w}"),
                None => println!("witness: none"),
            }
            println!("nodes: {}", result.nodes_explored);
        }
        Command::Gen { n, p, seed, out } => {
            let g = generate_gnp(n, p, Seed(seed))?;
            emit(out.as_deref(), &g.render())?;
        }
        Command::Window { n, p, s, t, variant } => {
            let variant = Variant::from(variant);
            let (s, t) = resolve_st(variant, s, t)?;
            let w = predict_window(n, p, s, t, variant)?;
            println!("{}", serde_json::to_string_pretty(&w).expect("window serializes"));
        }
        Command::Expect { n, p, m1, m2, a, t } => {
            let value = match (m1, m2, a, t) {
                (Some(m1), Some(m2), None, _) => expected_count(&MomentQuery::new(n, p, m1, m2)?),
                (None, None, Some(a), Some(t)) => expected_count_at_weight(n, p, parse_rational(&a)?, t)?,
                _ => return Err(Failure::Usage("give either --m1 and --m2, or --a and --t".into())),
            };
            println!("{value}");
        }
        Command::Experiment {
            n,
            p,
            s,
            t,
            variant,
            trials,
            seed,
            out,
            summary,
            time_budget_ms,
            timing,
            sequential,
        } => {
            let variant = Variant::from(variant);
            let (s, t) = resolve_st(variant, s, t)?;
            let mut cfg = ExperimentConfig::new(n, p, s, t, variant);
            cfg.trials = trials;
            cfg.master_seed = Seed(seed);
            cfg.time_budget = time_budget_ms.map(Duration::from_millis);
            cfg.record_timing = timing;
            cfg.execution = if sequential { Execution::Sequential } else { Execution::Parallel };
            let prediction = cfg.prediction()?;
            let records = run_trials(&cfg)?;
            match &out {
                Some(path) => write_csv(&records, &cfg, fs::File::create(path)?)?,
                None => write_csv(&records, &cfg, io::stdout().lock())?,
            }
            let sum = if records.is_empty() { Summary::empty(&prediction) } else { summarize(&records, &prediction)? };
            if let Some(path) = summary {
                fs::write(path, sum.to_json() + "\n")?;
            }
            let pct = |r: Option<f64>| r.map_or("n/a".to_string(), |r| format!("{:.3}", r));
            eprintln!(
                "{} trials, {} timeouts; in window {}, excluded {}, below {}, above {}",
                sum.trials,
                sum.timeouts,
                pct(sum.hit_rate),
                pct(sum.excluded_rate),
                pct(sum.below_rate),
                pct(sum.above_rate)
            );
        }
        Command::Selfcheck { inject_fault } => {
            let cfg = SolverConfig { inject_pruning_fault: inject_fault, ..SolverConfig::default() };
            let verdicts = selfcheck::run_all(&cfg);
            for v in &verdicts {
                println!("{v}");
            }
            if !verdicts.iter().all(|v| v.passed()) {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

/// `(s, t)` for a variant; `classical` defaults to `c = 1` and the
/// `roman`/`differential` windows fix `t = 2`.
fn resolve_st(variant: Variant, s: Option<u32>, t: Option<u32>) -> Result<(u32, u32), Failure> {
    match variant {
        Variant::Main | Variant::Weak => match (s, t) {
            (Some(s), Some(t)) => Ok((s, t)),
            _ => Err(Failure::Usage(format!("--s and --t are required for the {variant} variant"))),
        },
        Variant::Classical => Ok((s.unwrap_or(1), t.unwrap_or(1))),
        Variant::Roman | Variant::Differential => Ok((1, 2)),
    }
}
