use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use interdiction::engine::solve_report;
use interdiction::generate::{random_instance, GenParams};
use interdiction::oracle::brute_solve;
use interdiction::{
    find_lambda_star, EnumerationConfig, EnumerationMode, Error, FamilyOracle, GraphCutFamily,
    InterdictionInstance, KnapsackMode, Rational, SolveOptions,
};

/// Environment variable that overrides the worker thread count.
const THREADS_ENV: &str = "INTERDICT_THREADS";

#[derive(Parser)]
#[command(name = "interdict", version, about = "Budget-constrained min-cut interdiction solver")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Solve an instance exactly.
    Solve(RunArgs),
    /// Solve by brute force over every cut (n <= 16).
    Oracle(RunArgs),
    /// Cross-check the solver against the brute-force oracle.
    Check(RunArgs),
    /// Print the optimal multiplier and its certificate.
    Lambda(RunArgs),
    /// List cuts whose truncated capacity is below q·L*.
    Enumerate {
        #[command(flatten)]
        run: RunArgs,
        /// Threshold multiplier q.
        #[arg(long, default_value = "2")]
        threshold_mult: Rational,
    },
    /// Print a random connected instance.
    Gen(GenArgs),
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum EnumArg {
    Auto,
    Exhaustive,
    Contraction,
}

#[derive(Args, Clone)]
struct RunArgs {
    /// Instance file; stdin when absent or `-`.
    input: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Use the FPTAS knapsack with this ε in (0, 1), e.g. `1/10`.
    #[arg(long)]
    epsilon: Option<Rational>,
    #[arg(long)]
    json: bool,
    #[arg(long = "enum", value_enum, default_value = "auto")]
    enumeration: EnumArg,
    #[arg(long, default_value_t = interdiction::enumerate::DEFAULT_EXHAUSTIVE_LIMIT)]
    exhaustive_limit: usize,
    /// Failure probability for contraction enumeration (default 1/n).
    #[arg(long)]
    delta: Option<f64>,
    /// Cap on contraction repetitions.
    #[arg(long, default_value_t = interdiction::enumerate::DEFAULT_MAX_REPETITIONS)]
    max_reps: u64,
    /// Enumerate with `<=` instead of `<` (non-canonical).
    #[arg(long)]
    inclusive: bool,
    /// Leave `timings_ms` out of JSON output.
    #[arg(long)]
    no_timings: bool,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    n: usize,
    #[arg(long)]
    m: usize,
    #[arg(long, default_value_t = 10)]
    wmax: u64,
    #[arg(long, default_value_t = 10)]
    cmax: u64,
    #[arg(long, default_value_t = 15)]
    bmax: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

/// Failure with the process exit code it maps to.
struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(err: Error) -> Self {
        match err {
            Error::Internal {
                message,
                certificate,
            } => {
                let mut text = format!("internal error: {message}");
                if let Some(cert) = certificate {
                    if let Ok(s) = serde_json::to_string_pretty(&cert) {
                        text.push_str("\ncertificate: ");
                        text.push_str(&s);
                    }
                }
                Failure { code: 3, message: text }
            }
            other => Failure {
                code: 2,
                message: other.to_string(),
            },
        }
    }
}

type CmdResult = Result<u8, Failure>;

impl RunArgs {
    fn load(&self) -> Result<InterdictionInstance, Failure> {
        let text = match &self.input {
            Some(p) if p.as_os_str() != "-" => std::fs::read_to_string(p).map_err(|e| Failure {
                code: 2,
                message: format!("{}: {e}", p.display()),
            })?,
            _ => {
                let mut s = String::new();
                std::io::stdin().read_to_string(&mut s).map_err(Error::from)?;
                s
            }
        };
        Ok(InterdictionInstance::parse(&text)?)
    }

    fn options(&self) -> Result<SolveOptions, Failure> {
        let knapsack = match &self.epsilon {
            None => KnapsackMode::Exact,
            Some(eps) if eps.is_positive() && *eps < Rational::one() => KnapsackMode::Fptas(eps.clone()),
            Some(eps) => {
                return Err(Failure {
                    code: 2,
                    message: format!("--epsilon {eps} must lie in (0, 1)"),
                })
            }
        };
        let mode = match self.enumeration {
            EnumArg::Auto => EnumerationMode::Auto,
            EnumArg::Exhaustive => EnumerationMode::Exhaustive,
            EnumArg::Contraction => EnumerationMode::Contraction,
        };
        Ok(SolveOptions {
            seed: self.seed,
            knapsack,
            strict: !self.inclusive,
            enumeration: EnumerationConfig {
                mode,
                exhaustive_limit: self.exhaustive_limit,
                delta: self.delta,
                max_repetitions: self.max_reps,
            },
        })
    }

    fn emit(&self, mut value: serde_json::Value, started: Instant) {
        if !self.no_timings {
            value["timings_ms"] = json!({ "total": started.elapsed().as_secs_f64() * 1e3 });
        }
        println!("{}", serde_json::to_string_pretty(&value).expect("json values serialize"));
    }
}

fn ids(set: &interdiction::EdgeSet) -> String {
    format!("{:?}", set.ids())
}

fn cmd_solve(args: &RunArgs) -> CmdResult {
    let started = Instant::now();
    let inst = args.load()?;
    let report = solve_report(&inst, &args.options()?)?;
    let sol = &report.solution;
    if args.json {
        args.emit(serde_json::to_value(sol).expect("solution serializes"), started);
    } else {
        println!("value       {}", sol.value);
        println!("S           {}", ids(&sol.set));
        println!("R           {}", ids(&sol.removed));
        println!("lambda*     {}", sol.lambda_star);
        println!("L*          {}", sol.l_star);
        println!("Lambda      {}", sol.dual_value);
        println!("candidates  {}", sol.candidates);
        println!("degenerate  {}", sol.degenerate);
        if sol.disconnected {
            println!("disconnected true");
        }
        println!("enumeration {}", sol.enumeration);
        println!("knapsack    {}", sol.knapsack);
    }
    Ok(0)
}

fn cmd_oracle(args: &RunArgs) -> CmdResult {
    let started = Instant::now();
    let inst = args.load()?;
    let rep = brute_solve(&inst)?;
    if args.json {
        let mut value = serde_json::to_value(&rep).expect("report serializes");
        value["candidates"] = json!(rep.per_cut.len());
        args.emit(value, started);
    } else {
        println!("value  {}", rep.value);
        println!("S      {}", ids(&rep.best_s));
        println!("R      {}", ids(&rep.best_r));
        for entry in &rep.per_cut {
            println!("cut {} g_b {} removed {}", ids(&entry.cut), entry.g_b, ids(&entry.removed));
        }
    }
    Ok(0)
}

fn cmd_check(args: &RunArgs) -> CmdResult {
    let inst = args.load()?;
    let oracle = brute_solve(&inst)?;
    let sol = solve_report(&inst, &args.options()?)?.solution;
    sol.verify(inst.ground())?;
    if sol.value == oracle.value {
        println!("ok value {}", sol.value);
        Ok(0)
    } else {
        println!("MISMATCH solver {} oracle {}", sol.value, oracle.value);
        println!("solver S {} R {}", ids(&sol.set), ids(&sol.removed));
        println!("oracle S {} R {}", ids(&oracle.best_s), ids(&oracle.best_r));
        Ok(1)
    }
}

fn non_degenerate(
    inst: &InterdictionInstance,
    family: &GraphCutFamily<'_>,
) -> Result<interdiction::LambdaCertificate, Failure> {
    let ground = inst.ground();
    let (cost, _) = family.min_cost_member(&ground.effective_costs())?;
    if cost <= ground.budget {
        return Err(Failure {
            code: 2,
            message: "instance is degenerate: a cut fits within the budget, the optimum is 0".into(),
        });
    }
    Ok(find_lambda_star(ground, family)?)
}

fn cmd_lambda(args: &RunArgs) -> CmdResult {
    let started = Instant::now();
    let inst = args.load()?;
    let family = GraphCutFamily::new(&inst, args.options()?.enumeration);
    let cert = non_degenerate(&inst, &family)?;
    if args.json {
        args.emit(serde_json::to_value(&cert).expect("certificate serializes"), started);
    } else {
        println!("lambda*  {}", cert.lambda_star);
        println!("L*       {}", cert.l_star);
        println!("Lambda   {}", cert.dual_value);
        for (name, line) in [("line_lo", &cert.line_lo), ("line_hi", &cert.line_hi)] {
            println!(
                "{name}  {} + {}·λ  S {} R {}",
                line.intercept,
                line.slope,
                ids(&line.witness_s),
                ids(&line.witness_r)
            );
        }
    }
    Ok(0)
}

fn cmd_enumerate(args: &RunArgs, mult: &Rational) -> CmdResult {
    let started = Instant::now();
    if !mult.is_positive() {
        return Err(Failure {
            code: 2,
            message: format!("--threshold-mult {mult} must be positive"),
        });
    }
    let inst = args.load()?;
    let family = GraphCutFamily::new(&inst, args.options()?.enumeration);
    let cert = non_degenerate(&inst, &family)?;
    let weights = inst.truncate_weights(&cert.lambda_star)?;
    let threshold = mult * &cert.l_star;
    let cuts = family.enumerate_cuts(&weights, &threshold, !args.inclusive, args.seed)?;
    if args.json {
        let mut value = serde_json::to_value(&cuts).expect("family serializes");
        value["lambda_star"] = serde_json::to_value(&cert.lambda_star).expect("rational");
        value["L_star"] = serde_json::to_value(&cert.l_star).expect("rational");
        args.emit(value, started);
    } else {
        println!(
            "{} cuts below {} ({}, {})",
            cuts.len(),
            threshold,
            if cuts.strict { "strict" } else { "inclusive" },
            cuts.method
        );
        for cut in &cuts.cuts {
            println!("{}  side {:?}  edges {}", cut.value, cut.side, ids(&cut.cut_edges));
        }
    }
    Ok(0)
}

fn cmd_gen(args: &GenArgs) -> CmdResult {
    let params = GenParams {
        n: args.n,
        m: args.m,
        wmax: args.wmax,
        cmax: args.cmax,
        bmax: args.bmax,
    };
    let inst = random_instance(&params, args.seed)?;
    print!("{}", inst.to_text());
    Ok(0)
}

fn configure_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var(THREADS_ENV) {
        let threads: usize = v.trim().parse().map_err(|_| Failure {
            code: 2,
            message: format!("{THREADS_ENV}={v} is not a thread count"),
        })?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build_global()
            .map_err(|e| Failure {
                code: 2,
                message: e.to_string(),
            })?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|_| match &cli.command {
        Command::Solve(a) => cmd_solve(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Check(a) => cmd_check(a),
        Command::Lambda(a) => cmd_lambda(a),
        Command::Enumerate {
            run,
            threshold_mult,
        } => cmd_enumerate(run, threshold_mult),
        Command::Gen(a) => cmd_gen(a),
    });
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
