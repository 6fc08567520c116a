//! Experiment orchestration: evaluator selection, the budget-parity
//! protocol, ablation runs and the accelerated-Monte-Carlo probe.
//!
//! Protocol per repetition seed: DDALS runs first and its evaluation count
//! becomes the budget granted to GA and EDA. Real confidence levels come
//! from the hidden truth model; a run's output counts as truly feasible
//! when its RCL reaches `P0 - 0.005`.

mod report;

pub use report::{aggregate, AggregateRow, ExperimentReport, ReportError, ReportRow, FSR_MARGIN};

use rayon::prelude::*;
use thiserror::Error;

use crate::baselines::{eda, gaussian_baseline, genetic_algorithm, greedy, EdaParams, GaParams};
use crate::eval::{
    accelerated_mc_with_tuples, build_screen_tuples, monte_carlo_confidence, violation_budget,
    EvaluatorKind,
};
use crate::generator::{generate, BenchmarkFamily, BenchmarkSpec, GenError, TruthModel};
use crate::instance::{Instance, Solution};
use crate::rng::{chacha, derive_seed, solution_seed};
use crate::search::{ddals, sfe_select, DdalsParams, SfeVariant};

pub const DEFAULT_EXACT_WORK_CAP: f64 = 1_000_000.0;
pub const DEFAULT_MC_DRAWS: u64 = 1_000_000;
pub const DEFAULT_RCL_DRAWS: u64 = 10_000_000;

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error("real confidence requested but no truth model provided")]
    MissingTruth,
    #[error("ablation requires LAB benchmarks, got {0}")]
    NonLabBenchmark(String),
    #[error(transparent)]
    Gen(#[from] GenError),
}

/// User-facing evaluator choice; `Auto` follows the scale rule.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum EvaluatorChoice {
    Auto,
    Exact,
    Mc,
    Amc,
    Gauss,
}

impl EvaluatorChoice {
    pub fn resolve(self, instance: &Instance, mc_draws: u64) -> EvaluatorKind {
        match self {
            EvaluatorChoice::Auto => evaluator_selection(instance, DEFAULT_EXACT_WORK_CAP, mc_draws),
            EvaluatorChoice::Exact => EvaluatorKind::ExactHeap,
            EvaluatorChoice::Mc => EvaluatorKind::MonteCarlo { draws: mc_draws },
            EvaluatorChoice::Amc => EvaluatorKind::AcceleratedMc { draws: mc_draws },
            EvaluatorChoice::Gauss => EvaluatorKind::GaussianQuantile,
        }
    }
}

/// Exact evaluation for small scales, accelerated Monte Carlo beyond: the
/// exact method once `ceil((1-P0)·L^m)` exceeds the work cap would pop more
/// sums than the cap per evaluation.
pub fn evaluator_selection(instance: &Instance, work_cap: f64, mc_draws: u64) -> EvaluatorKind {
    let budget = violation_budget(instance.confidence_level, instance.combination_count());
    if budget.ceil() <= work_cap {
        EvaluatorKind::ExactHeap
    } else {
        EvaluatorKind::AcceleratedMc { draws: mc_draws }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AlgorithmSpec {
    Ddals(SfeVariant),
    Greedy,
    Ga,
    Eda,
    Gaussian,
}

impl AlgorithmSpec {
    pub fn label(&self) -> (String, String) {
        match self {
            AlgorithmSpec::Ddals(v) => (
                "ddals".into(),
                match v {
                    SfeVariant::Original => "o".into(),
                    SfeVariant::V1 => "v1".into(),
                    SfeVariant::V2 => "v2".into(),
                    SfeVariant::V3 => "v3".into(),
                },
            ),
            AlgorithmSpec::Greedy => ("greedy".into(), String::new()),
            AlgorithmSpec::Ga => ("ga".into(), String::new()),
            AlgorithmSpec::Eda => ("eda".into(), String::new()),
            AlgorithmSpec::Gaussian => ("gauss".into(), String::new()),
        }
    }
}

pub fn default_algorithms() -> Vec<AlgorithmSpec> {
    vec![
        AlgorithmSpec::Ddals(SfeVariant::Original),
        AlgorithmSpec::Ddals(SfeVariant::V1),
        AlgorithmSpec::Ddals(SfeVariant::V2),
        AlgorithmSpec::Ddals(SfeVariant::V3),
        AlgorithmSpec::Greedy,
        AlgorithmSpec::Ga,
        AlgorithmSpec::Eda,
    ]
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub benchmark_id: String,
    pub algorithms: Vec<AlgorithmSpec>,
    pub reps: u32,
    pub master_seed: u64,
    pub evaluator: EvaluatorChoice,
    pub mc_draws: u64,
    pub rcl_draws: u64,
    pub lambda: f64,
    pub max_iter: u32,
    pub lss_single_pass: bool,
}

impl RunConfig {
    pub fn new(benchmark_id: impl Into<String>, master_seed: u64) -> Self {
        Self {
            benchmark_id: benchmark_id.into(),
            algorithms: default_algorithms(),
            reps: 10,
            master_seed,
            evaluator: EvaluatorChoice::Auto,
            mc_draws: DEFAULT_MC_DRAWS,
            rcl_draws: DEFAULT_RCL_DRAWS,
            lambda: 1.0,
            max_iter: 30,
            lss_single_pass: false,
        }
    }

    fn ddals_params(&self, evaluator: EvaluatorKind, seed: u64) -> DdalsParams {
        DdalsParams {
            lambda: self.lambda,
            max_iter: self.max_iter,
            lss_single_pass: self.lss_single_pass,
            ..DdalsParams::new(evaluator, seed)
        }
    }
}

struct RunOutput {
    solution: Solution,
    cost: f64,
    claimed_feasible: bool,
    ecl: Option<f64>,
    et: u64,
}

/// One full experiment: every configured algorithm, `reps` repetitions,
/// budget parity against DDALS, aggregated into a report. Deterministic
/// given the master seed.
pub fn run_experiment(
    instance: &Instance,
    truth: Option<&TruthModel>,
    config: &RunConfig,
) -> Result<ExperimentReport, HarnessError> {
    assert!(config.reps >= 1, "need at least one repetition");
    let evaluator = config.evaluator.resolve(instance, config.mc_draws);
    let p0 = instance.confidence_level;
    let rcl_base = derive_seed(config.master_seed, 0x7c1);

    let per_rep: Vec<Vec<ReportRow>> = (0..config.reps)
        .into_par_iter()
        .map(|rep| {
            let rep_seed = derive_seed(config.master_seed, rep as u64);
            // DDALS first; its ET is the budget every baseline receives.
            let ddals_run = ddals(instance, &config.ddals_params(evaluator, rep_seed));
            let budget = ddals_run.eval_count.max(1);
            let mut rows = Vec::with_capacity(config.algorithms.len());
            for (ai, algo) in config.algorithms.iter().enumerate() {
                let out = match algo {
                    AlgorithmSpec::Ddals(variant) => {
                        let sel = sfe_select(
                            &ddals_run.archives,
                            &ddals_run.solution,
                            ddals_run.cost,
                            *variant,
                            p0,
                        );
                        RunOutput {
                            solution: sel.solution,
                            cost: sel.cost,
                            claimed_feasible: ddals_run.feasible,
                            ecl: sel.confidence,
                            et: ddals_run.eval_count,
                        }
                    }
                    AlgorithmSpec::Greedy => {
                        let g = greedy(instance, config.lambda, evaluator, rep_seed);
                        RunOutput {
                            solution: g.solution,
                            cost: g.cost,
                            claimed_feasible: g.feasible,
                            ecl: g.estimated_confidence,
                            et: g.eval_count,
                        }
                    }
                    AlgorithmSpec::Ga => {
                        let g = genetic_algorithm(instance, &GaParams::new(budget, rep_seed), evaluator);
                        RunOutput {
                            solution: g.solution,
                            cost: g.cost,
                            claimed_feasible: g.feasible,
                            ecl: g.estimated_confidence,
                            et: g.eval_count,
                        }
                    }
                    AlgorithmSpec::Eda => {
                        let e = eda(instance, &EdaParams::new(budget, rep_seed), evaluator);
                        RunOutput {
                            solution: e.solution,
                            cost: e.cost,
                            claimed_feasible: e.feasible,
                            ecl: e.estimated_confidence,
                            et: e.eval_count,
                        }
                    }
                    AlgorithmSpec::Gaussian => {
                        let g = gaussian_baseline(instance, &config.ddals_params(evaluator, rep_seed));
                        RunOutput {
                            solution: g.solution,
                            cost: g.cost,
                            claimed_feasible: g.feasible,
                            ecl: g.estimated_confidence,
                            et: g.eval_count,
                        }
                    }
                };
                let rcl = truth.map(|t| {
                    let seed = derive_seed(rcl_base, (rep as u64) << 8 | ai as u64);
                    t.real_confidence(&out.solution, config.rcl_draws, seed)
                });
                let feasible = match rcl {
                    Some(r) => r >= p0 - FSR_MARGIN,
                    None => out.claimed_feasible,
                };
                let (algorithm, variant) = algo.label();
                rows.push(ReportRow {
                    benchmark: config.benchmark_id.clone(),
                    algorithm,
                    variant,
                    rep,
                    seed: rep_seed,
                    cost: out.cost,
                    et: out.et,
                    ecl: out.ecl,
                    rcl,
                    feasible,
                });
            }
            rows
        })
        .collect();

    // Stable order: (algorithm as configured, rep).
    let mut rows = Vec::with_capacity(config.reps as usize * config.algorithms.len());
    for ai in 0..config.algorithms.len() {
        for rep in &per_rep {
            rows.push(rep[ai].clone());
        }
    }
    let aggregates = aggregate(&rows);
    Ok(ExperimentReport { rows, aggregates })
}

/// The four component-removal variants measured by the ablation.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AblationVariant {
    RandomCp,
    NoLss,
    NoDegrade,
    NoFss,
}

pub const ABLATION_VARIANTS: [AblationVariant; 4] = [
    AblationVariant::RandomCp,
    AblationVariant::NoLss,
    AblationVariant::NoDegrade,
    AblationVariant::NoFss,
];

impl AblationVariant {
    pub fn label(&self) -> &'static str {
        match self {
            AblationVariant::RandomCp => "r-CP",
            AblationVariant::NoLss => "no-LSS",
            AblationVariant::NoDegrade => "no-Degrade",
            AblationVariant::NoFss => "no-FSS",
        }
    }

    pub fn apply(&self, params: &DdalsParams) -> DdalsParams {
        let mut p = *params;
        match self {
            AblationVariant::RandomCp => p.cp_random_init = true,
            AblationVariant::NoLss => p.use_lss = false,
            AblationVariant::NoDegrade => p.use_degrade = false,
            AblationVariant::NoFss => p.use_fss = false,
        }
        p
    }
}

/// Performance degradation ratio `(C_variant - C_original) / C_original`.
pub fn pdr(variant_mean_cost: f64, original_mean_cost: f64) -> f64 {
    (variant_mean_cost - original_mean_cost) / original_mean_cost
}

#[derive(Debug, Clone)]
pub struct PdrRow {
    pub benchmark: String,
    /// PDR per variant, in [`ABLATION_VARIANTS`] order.
    pub pdr: [f64; 4],
}

#[derive(Debug, Clone)]
pub struct PdrTable {
    pub rows: Vec<PdrRow>,
    pub avg: [f64; 4],
}

impl PdrTable {
    pub fn write_csv(&self, out: impl std::io::Write) -> Result<(), ReportError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(["benchmark", "r-CP", "no-LSS", "no-Degrade", "no-FSS"])?;
        for row in &self.rows {
            w.write_record([
                row.benchmark.as_str(),
                &row.pdr[0].to_string(),
                &row.pdr[1].to_string(),
                &row.pdr[2].to_string(),
                &row.pdr[3].to_string(),
            ])?;
        }
        w.write_record([
            "Avg.PDR",
            &self.avg[0].to_string(),
            &self.avg[1].to_string(),
            &self.avg[2].to_string(),
            &self.avg[3].to_string(),
        ])?;
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone)]
pub struct AblationConfig {
    pub benchmarks: Vec<BenchmarkSpec>,
    pub reps: u32,
    pub master_seed: u64,
    pub evaluator: EvaluatorChoice,
    pub mc_draws: u64,
    pub lambda: f64,
    pub max_iter: u32,
}

impl AblationConfig {
    pub fn new(benchmarks: Vec<BenchmarkSpec>, master_seed: u64) -> Self {
        Self {
            benchmarks,
            reps: 10,
            master_seed,
            evaluator: EvaluatorChoice::Auto,
            mc_draws: DEFAULT_MC_DRAWS,
            lambda: 1.0,
            max_iter: 30,
        }
    }
}

/// Run original DDALS and each component-removal variant with matched seeds
/// on every benchmark; emit per-benchmark PDRs and the averages.
pub fn run_ablation(config: &AblationConfig) -> Result<PdrTable, HarnessError> {
    let mut rows = Vec::with_capacity(config.benchmarks.len());
    for (bi, spec) in config.benchmarks.iter().enumerate() {
        if spec.family != BenchmarkFamily::Lab {
            return Err(HarnessError::NonLabBenchmark(spec.id()));
        }
        let gen_seed = derive_seed(config.master_seed, bi as u64);
        let out = generate(spec, gen_seed)?;
        let evaluator = config.evaluator.resolve(&out.instance, config.mc_draws);

        let mean_cost = |variant: Option<AblationVariant>| -> f64 {
            let costs: Vec<f64> = (0..config.reps)
                .into_par_iter()
                .map(|rep| {
                    let rep_seed = derive_seed(gen_seed, 0x5eed + rep as u64);
                    let mut params = DdalsParams {
                        lambda: config.lambda,
                        max_iter: config.max_iter,
                        ..DdalsParams::new(evaluator, rep_seed)
                    };
                    if let Some(v) = variant {
                        params = v.apply(&params);
                    }
                    ddals(&out.instance, &params).cost
                })
                .collect();
            costs.iter().sum::<f64>() / costs.len() as f64
        };

        let original = mean_cost(None);
        let mut pdrs = [0.0f64; 4];
        for (vi, variant) in ABLATION_VARIANTS.iter().enumerate() {
            pdrs[vi] = pdr(mean_cost(Some(*variant)), original);
        }
        rows.push(PdrRow { benchmark: spec.id(), pdr: pdrs });
    }
    let mut avg = [0.0f64; 4];
    for row in &rows {
        for (i, v) in row.pdr.iter().enumerate() {
            avg[i] += v / rows.len() as f64;
        }
    }
    Ok(PdrTable { rows, avg })
}

#[derive(Debug, Clone)]
pub struct AmcProbe {
    pub n_solutions: u64,
    pub screened_out: u64,
    pub mc_total_draws: u64,
    pub amc_total_draws: u64,
    /// Cumulative wall seconds after each 1000 evaluations.
    pub mc_wall_marks: Vec<f64>,
    pub amc_wall_marks: Vec<f64>,
}

/// Evaluate `n` random solutions under plain and accelerated Monte Carlo,
/// tallying draw counts (exact, reproducible) and wall time (indicative).
pub fn amc_speed_probe(instance: &Instance, n_solutions: u64, draws: u64, seed: u64) -> AmcProbe {
    use rand::Rng;
    let sizes = instance.class_sizes();
    let mut rng = chacha(derive_seed(seed, 0));
    let solutions: Vec<Solution> = (0..n_solutions)
        .map(|_| Solution::new(sizes.iter().map(|&n| rng.random_range(0..n)).collect()))
        .collect();
    let tuples = build_screen_tuples(
        instance.num_classes,
        instance.sample_count,
        instance.confidence_level,
    );

    let mut mc_total_draws = 0u64;
    let mut mc_wall_marks = Vec::new();
    let start = std::time::Instant::now();
    for (i, sol) in solutions.iter().enumerate() {
        let out = monte_carlo_confidence(instance, sol, draws, solution_seed(seed, &sol.picks))
            .expect("positive draws");
        mc_total_draws += out.work.draws;
        if (i + 1) % 1000 == 0 {
            mc_wall_marks.push(start.elapsed().as_secs_f64());
        }
    }

    let mut amc_total_draws = 0u64;
    let mut screened_out = 0u64;
    let mut amc_wall_marks = Vec::new();
    let start = std::time::Instant::now();
    for (i, sol) in solutions.iter().enumerate() {
        let out = accelerated_mc_with_tuples(instance, sol, draws, solution_seed(seed, &sol.picks), &tuples)
            .expect("positive draws");
        amc_total_draws += out.work.draws;
        if out.work.draws == 0 {
            screened_out += 1;
        }
        if (i + 1) % 1000 == 0 {
            amc_wall_marks.push(start.elapsed().as_secs_f64());
        }
    }

    AmcProbe {
        n_solutions,
        screened_out,
        mc_total_draws,
        amc_total_draws,
        mc_wall_marks,
        amc_wall_marks,
    }
}
