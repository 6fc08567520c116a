use ddccmckp::generator::find_preset;
use ddccmckp::harness::{run_ablation, AblationConfig, EvaluatorChoice};

fn main() {
    let suite: Vec<_> = ["lab-ss1-t11", "lab-ss2-t18", "lab-ss2-t26", "lab-ss4-t10", "lab-ls1-t19", "lab-ls1-t23"]
        .iter().map(|id| find_preset(id).unwrap()).collect();
    for master in [0xAB9u64, 0x123] {
        let t0 = std::time::Instant::now();
        let config = AblationConfig {
            reps: 10,
            evaluator: EvaluatorChoice::Amc,
            mc_draws: 20_000,
            ..AblationConfig::new(suite.clone(), master)
        };
        let t = run_ablation(&config).unwrap();
        println!("master {master:#x} ({:.0}s): avg r-CP={:+.4} no-LSS={:+.4} no-Degrade={:+.4} no-FSS={:+.4} overall={:+.5}",
            t0.elapsed().as_secs_f64(), t.avg[0], t.avg[1], t.avg[2], t.avg[3], t.avg.iter().sum::<f64>() / 4.0);
        for row in &t.rows {
            println!("    {}: {:+.4} {:+.4} {:+.4} {:+.4}", row.benchmark, row.pdr[0], row.pdr[1], row.pdr[2], row.pdr[3]);
        }
    }
}
