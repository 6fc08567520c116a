//! `ddccmckp` command line: benchmark generation, solving, evaluation,
//! experiments, ablations and the AMC probe.

use std::fs;
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::json;

use ddccmckp::baselines::{eda, gaussian_baseline, genetic_algorithm, greedy, EdaParams, GaParams};
use ddccmckp::eval::{brute_force_outcome, EvaluatorKind, DEFAULT_BRUTE_FORCE_LIMIT};
use ddccmckp::generator::{self, BenchmarkFamily, BenchmarkSpec, TruthModel};
use ddccmckp::harness::{
    amc_speed_probe, run_ablation, run_experiment, AblationConfig, AlgorithmSpec, EvaluatorChoice,
    RunConfig, DEFAULT_MC_DRAWS, DEFAULT_RCL_DRAWS,
};
use ddccmckp::instance::{load_instance, load_solution, serialize_instance, serialize_solution, Instance};
use ddccmckp::search::{ddals, DdalsParams, SfeVariant};

#[derive(Parser)]
#[command(name = "ddccmckp", version, about = "Data-driven chance-constrained multiple-choice knapsack toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Generate an instance file (and its truth file) from a preset or a custom spec
    Gen(GenArgs),
    /// Run one algorithm on one instance and print the solution with metrics
    Solve(SolveArgs),
    /// Evaluate a solution file with a chosen method
    Eval(EvalArgs),
    /// Full protocol: DDALS + budget-matched baselines, repeated, to CSV
    Experiment(ExperimentArgs),
    /// Component-removal ablation over LAB benchmarks, PDR table to CSV
    Ablate(AblateArgs),
    /// Time plain vs accelerated Monte Carlo over random solutions
    ProbeAmc(ProbeArgs),
    /// List the built-in benchmark presets
    Presets,
}

#[derive(Clone, Copy, ValueEnum)]
enum EvaluatorArg {
    Auto,
    Exact,
    Mc,
    Amc,
    Gauss,
}

impl EvaluatorArg {
    fn choice(self) -> EvaluatorChoice {
        match self {
            EvaluatorArg::Auto => EvaluatorChoice::Auto,
            EvaluatorArg::Exact => EvaluatorChoice::Exact,
            EvaluatorArg::Mc => EvaluatorChoice::Mc,
            EvaluatorArg::Amc => EvaluatorChoice::Amc,
            EvaluatorArg::Gauss => EvaluatorChoice::Gauss,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum SfeArg {
    O,
    V1,
    V2,
    V3,
}

impl SfeArg {
    fn variant(self) -> SfeVariant {
        match self {
            SfeArg::O => SfeVariant::Original,
            SfeArg::V1 => SfeVariant::V1,
            SfeArg::V2 => SfeVariant::V2,
            SfeArg::V3 => SfeVariant::V3,
        }
    }
}

#[derive(Args)]
struct GenArgs {
    /// Preset id such as lab-ss1-t11 (see `presets`)
    #[arg(long, conflicts_with_all = ["family", "m", "n", "l", "t_max"])]
    preset: Option<String>,
    #[arg(long, value_enum)]
    family: Option<FamilyArg>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    l: Option<usize>,
    #[arg(long)]
    t_max: Option<f64>,
    #[arg(long, default_value_t = generator::DEFAULT_P0)]
    p0: f64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    /// Instance file path
    #[arg(long)]
    out: PathBuf,
    /// Truth file path (defaults to <out>.truth.json)
    #[arg(long)]
    truth_out: Option<PathBuf>,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    Lab,
    App,
}

#[derive(Clone, Copy, ValueEnum)]
enum AlgoArg {
    Ddals,
    Greedy,
    Ga,
    Eda,
    Gauss,
}

#[derive(Args)]
struct SolveArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long, value_enum)]
    algo: AlgoArg,
    #[arg(long, value_enum, default_value = "o")]
    sfe: SfeArg,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    evaluator: EvaluatorArg,
    #[arg(long, default_value_t = DEFAULT_MC_DRAWS)]
    mc_draws: u64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 30)]
    max_iter: u32,
    /// Evaluation budget for the standalone ga/eda baselines
    #[arg(long, default_value_t = 1000)]
    budget: u64,
    /// Truth file; when given, the output's real confidence level is printed
    #[arg(long)]
    truth: Option<PathBuf>,
    #[arg(long, default_value_t = DEFAULT_RCL_DRAWS)]
    rcl_draws: u64,
    /// Write the solution JSON here
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct EvalArgs {
    #[arg(long)]
    instance: PathBuf,
    #[arg(long)]
    solution: PathBuf,
    #[arg(long, value_enum, default_value = "auto")]
    evaluator: EvaluatorArg,
    /// Use the brute-force oracle instead (small instances only)
    #[arg(long, default_value_t = false)]
    brute: bool,
    #[arg(long, default_value_t = DEFAULT_MC_DRAWS)]
    mc_draws: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long, requires = "truth", conflicts_with = "preset")]
    instance: Option<PathBuf>,
    #[arg(long)]
    truth: Option<PathBuf>,
    /// Generate the benchmark in memory from a preset id
    #[arg(long)]
    preset: Option<String>,
    /// Comma-separated: ddals-o,ddals-v1,ddals-v2,ddals-v3,greedy,ga,eda,gauss
    #[arg(long)]
    algos: Option<String>,
    #[arg(long, default_value_t = 10)]
    reps: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    evaluator: EvaluatorArg,
    #[arg(long, default_value_t = DEFAULT_MC_DRAWS)]
    mc_draws: u64,
    #[arg(long, default_value_t = DEFAULT_RCL_DRAWS)]
    rcl_draws: u64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 30)]
    max_iter: u32,
    /// CSV output path (stdout when omitted)
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct AblateArgs {
    /// Comma-separated LAB preset ids, e.g. lab-ss1-t11,lab-ss2-t18
    #[arg(long)]
    benchmarks: String,
    #[arg(long, default_value_t = 10)]
    reps: u32,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, value_enum, default_value = "auto")]
    evaluator: EvaluatorArg,
    #[arg(long, default_value_t = DEFAULT_MC_DRAWS)]
    mc_draws: u64,
    #[arg(long, default_value_t = 1.0)]
    lambda: f64,
    #[arg(long, default_value_t = 30)]
    max_iter: u32,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ProbeArgs {
    #[arg(long)]
    instance: PathBuf,
    /// Number of random solutions to evaluate under MC and AMC
    #[arg(long, default_value_t = 10_000)]
    n: u64,
    #[arg(long, default_value_t = DEFAULT_MC_DRAWS)]
    mc_draws: u64,
    #[arg(long, default_value_t = 0)]
    seed: u64,
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            // Single machine-readable error line.
            eprintln!("{}", json!({ "error": format!("{err:#}") }));
            ExitCode::FAILURE
        }
    }
}

fn read_instance(path: &PathBuf) -> Result<Instance> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(load_instance(&bytes)?)
}

fn read_truth(path: &PathBuf) -> Result<TruthModel> {
    let bytes = fs::read(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(TruthModel::from_json(&bytes)?)
}

fn run(cli: Cli) -> Result<()> {
    match cli.cmd {
        Cmd::Gen(args) => cmd_gen(args),
        Cmd::Solve(args) => cmd_solve(args),
        Cmd::Eval(args) => cmd_eval(args),
        Cmd::Experiment(args) => cmd_experiment(args),
        Cmd::Ablate(args) => cmd_ablate(args),
        Cmd::ProbeAmc(args) => cmd_probe(args),
        Cmd::Presets => {
            for spec in generator::preset_benchmarks() {
                println!("{}\tm={} N={} L={} T_max={} P0={}", spec.id(), spec.m, spec.n, spec.l, spec.t_max, spec.p0);
            }
            Ok(())
        }
    }
}

fn cmd_gen(args: GenArgs) -> Result<()> {
    let spec = if let Some(id) = &args.preset {
        generator::find_preset(id).ok_or_else(|| anyhow!("unknown preset {id}; run `ddccmckp presets`"))?
    } else {
        let (family, m, n, l, t_max) = match (args.family, args.m, args.n, args.l, args.t_max) {
            (Some(f), Some(m), Some(n), Some(l), Some(t)) => (f, m, n, l, t),
            _ => bail!("either --preset or all of --family/--m/--n/--l/--t-max are required"),
        };
        let family = match family {
            FamilyArg::Lab => BenchmarkFamily::Lab,
            FamilyArg::App => BenchmarkFamily::App,
        };
        BenchmarkSpec { family, name: "custom".into(), m, n, l, t_max, p0: args.p0 }
    };
    let out = generator::generate(&spec, args.seed)?;
    if out.capacity_clamped {
        eprintln!(
            "note: requested T_max {} fell outside the non-triviality band; clamped to {}",
            spec.t_max, out.instance.capacity
        );
    }
    fs::write(&args.out, serialize_instance(&out.instance))
        .with_context(|| format!("writing {}", args.out.display()))?;
    let truth_path = args.truth_out.unwrap_or_else(|| {
        let mut p = args.out.clone();
        p.set_extension("truth.json");
        p
    });
    fs::write(&truth_path, out.truth.to_json())
        .with_context(|| format!("writing {}", truth_path.display()))?;
    println!(
        "{}",
        json!({
            "benchmark": spec.id(),
            "instance": args.out.display().to_string(),
            "truth": truth_path.display().to_string(),
            "capacity": out.instance.capacity,
            "clamped": out.capacity_clamped,
        })
    );
    Ok(())
}

fn cmd_solve(args: SolveArgs) -> Result<()> {
    let instance = read_instance(&args.instance)?;
    let evaluator = args.evaluator.choice().resolve(&instance, args.mc_draws);
    let params = DdalsParams {
        lambda: args.lambda,
        max_iter: args.max_iter,
        sfe_variant: args.sfe.variant(),
        ..DdalsParams::new(evaluator, args.seed)
    };
    let (label, solution, cost, feasible, ecl, et) = match args.algo {
        AlgoArg::Ddals => {
            let r = ddals(&instance, &params);
            ("ddals", r.solution, r.cost, r.feasible, r.estimated_confidence, r.eval_count)
        }
        AlgoArg::Gauss => {
            let r = gaussian_baseline(&instance, &params);
            ("gauss", r.solution, r.cost, r.feasible, r.estimated_confidence, r.eval_count)
        }
        AlgoArg::Greedy => {
            let r = greedy(&instance, args.lambda, evaluator, args.seed);
            ("greedy", r.solution, r.cost, r.feasible, r.estimated_confidence, r.eval_count)
        }
        AlgoArg::Ga => {
            let r = genetic_algorithm(&instance, &GaParams::new(args.budget, args.seed), evaluator);
            ("ga", r.solution, r.cost, r.feasible, r.estimated_confidence, r.eval_count)
        }
        AlgoArg::Eda => {
            let r = eda(&instance, &EdaParams::new(args.budget, args.seed), evaluator);
            ("eda", r.solution, r.cost, r.feasible, r.estimated_confidence, r.eval_count)
        }
    };
    let rcl = match &args.truth {
        Some(path) => Some(read_truth(path)?.real_confidence(&solution, args.rcl_draws, args.seed)),
        None => None,
    };
    if let Some(out) = &args.out {
        fs::write(out, serialize_solution(&solution))
            .with_context(|| format!("writing {}", out.display()))?;
    }
    println!(
        "{}",
        json!({
            "algorithm": label,
            "picks": solution.picks,
            "cost": cost,
            "feasible": feasible,
            "ecl": ecl,
            "et": et,
            "rcl": rcl,
        })
    );
    Ok(())
}

fn cmd_eval(args: EvalArgs) -> Result<()> {
    let instance = read_instance(&args.instance)?;
    let bytes = fs::read(&args.solution).with_context(|| format!("reading {}", args.solution.display()))?;
    let solution = load_solution(&bytes)?;
    instance.validate_solution(&solution)?;
    let outcome = if args.brute {
        brute_force_outcome(&instance, &solution, DEFAULT_BRUTE_FORCE_LIMIT)?
    } else {
        let kind = args.evaluator.choice().resolve(&instance, args.mc_draws);
        ddccmckp::eval::Evaluator::new(&instance, kind, args.seed).evaluate(&solution)
    };
    println!(
        "{}",
        json!({
            "verdict": match outcome.verdict {
                ddccmckp::eval::Verdict::Feasible => "feasible",
                ddccmckp::eval::Verdict::Infeasible => "infeasible",
            },
            "estimated_confidence": outcome.estimated_confidence,
            "method": format!("{:?}", outcome.method),
            "heap_pops": outcome.work.heap_pops,
            "draws": outcome.work.draws,
            "screen_checks": outcome.work.screen_checks,
        })
    );
    Ok(())
}

fn parse_algos(list: &str) -> Result<Vec<AlgorithmSpec>> {
    list.split(',')
        .map(|name| match name.trim() {
            "ddals" | "ddals-o" => Ok(AlgorithmSpec::Ddals(SfeVariant::Original)),
            "ddals-v1" => Ok(AlgorithmSpec::Ddals(SfeVariant::V1)),
            "ddals-v2" => Ok(AlgorithmSpec::Ddals(SfeVariant::V2)),
            "ddals-v3" => Ok(AlgorithmSpec::Ddals(SfeVariant::V3)),
            "greedy" => Ok(AlgorithmSpec::Greedy),
            "ga" => Ok(AlgorithmSpec::Ga),
            "eda" => Ok(AlgorithmSpec::Eda),
            "gauss" => Ok(AlgorithmSpec::Gaussian),
            other => Err(anyhow!("unknown algorithm {other}")),
        })
        .collect()
}

fn cmd_experiment(args: ExperimentArgs) -> Result<()> {
    let (benchmark_id, instance, truth) = match (&args.preset, &args.instance) {
        (Some(id), None) => {
            let spec = generator::find_preset(id)
                .ok_or_else(|| anyhow!("unknown preset {id}; run `ddccmckp presets`"))?;
            let out = generator::generate(&spec, args.seed)?;
            (spec.id(), out.instance, out.truth)
        }
        (None, Some(path)) => {
            let instance = read_instance(path)?;
            let truth_path = args.truth.as_ref().ok_or_else(|| anyhow!("--truth is required with --instance"))?;
            let truth = read_truth(truth_path)?;
            let id = path.file_stem().map(|s| s.to_string_lossy().into_owned()).unwrap_or_default();
            (id, instance, truth)
        }
        _ => bail!("exactly one of --preset or --instance is required"),
    };
    let mut config = RunConfig::new(benchmark_id, args.seed);
    if let Some(list) = &args.algos {
        config.algorithms = parse_algos(list)?;
    }
    config.reps = args.reps;
    config.evaluator = args.evaluator.choice();
    config.mc_draws = args.mc_draws;
    config.rcl_draws = args.rcl_draws;
    config.lambda = args.lambda;
    config.max_iter = args.max_iter;
    let report = run_experiment(&instance, Some(&truth), &config)?;
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            report.write_csv(file)?;
        }
        None => {
            std::io::stdout().write_all(&report.to_csv_bytes())?;
        }
    }
    Ok(())
}

fn cmd_ablate(args: AblateArgs) -> Result<()> {
    let benchmarks: Vec<BenchmarkSpec> = args
        .benchmarks
        .split(',')
        .map(|id| {
            generator::find_preset(id.trim())
                .ok_or_else(|| anyhow!("unknown preset {id}; run `ddccmckp presets`"))
        })
        .collect::<Result<_>>()?;
    let config = AblationConfig {
        reps: args.reps,
        evaluator: args.evaluator.choice(),
        mc_draws: args.mc_draws,
        lambda: args.lambda,
        max_iter: args.max_iter,
        ..AblationConfig::new(benchmarks, args.seed)
    };
    let table = run_ablation(&config)?;
    match &args.out {
        Some(path) => {
            let file = fs::File::create(path).with_context(|| format!("creating {}", path.display()))?;
            table.write_csv(file)?;
        }
        None => {
            let mut buf = Vec::new();
            table.write_csv(&mut buf)?;
            std::io::stdout().write_all(&buf)?;
        }
    }
    Ok(())
}

fn cmd_probe(args: ProbeArgs) -> Result<()> {
    let instance = read_instance(&args.instance)?;
    let probe = amc_speed_probe(&instance, args.n, args.mc_draws, args.seed);
    println!(
        "{}",
        json!({
            "n_solutions": probe.n_solutions,
            "screened_out": probe.screened_out,
            "mc_total_draws": probe.mc_total_draws,
            "amc_total_draws": probe.amc_total_draws,
            "mc_wall_marks_s": probe.mc_wall_marks,
            "amc_wall_marks_s": probe.amc_wall_marks,
        })
    );
    Ok(())
}
