use ddccmckp::baselines::greedy;
use ddccmckp::eval::EvaluatorKind;
use ddccmckp::generator::{find_preset, generate};
use ddccmckp::harness::FSR_MARGIN;
use ddccmckp::search::{ddals, DdalsParams};
use rayon::prelude::*;

fn main() {
    let args: Vec<String> = std::env::args().collect();
    let exact = args.get(1).map(|s| s == "exact").unwrap_or(false);
    for id in ["lab-ss1-t11", "lab-ss1-t14", "lab-ss2-t18", "lab-ss2-t26", "lab-ss3-t11", "lab-ss3-t20", "lab-ss4-t10", "lab-ss4-t16"] {
        let spec = find_preset(id).unwrap();
        let t0 = std::time::Instant::now();
        let results: Vec<(f64, f64, f64, bool, bool)> = (0..10u64)
            .into_par_iter()
            .map(|seed| {
                let out = generate(&spec, 0xC7_000 + seed).unwrap();
                let evaluator = if exact { EvaluatorKind::ExactHeap } else { EvaluatorKind::AcceleratedMc { draws: 100_000 } };
                let d = ddals(&out.instance, &DdalsParams::new(evaluator, seed));
                let g = greedy(&out.instance, 1.0, evaluator, seed);
                let rcl = out.truth.real_confidence(&d.solution, 100_000, 0xF0 + seed);
                (d.cost, g.cost, rcl, rcl >= spec.p0 - FSR_MARGIN, d.feasible)
            })
            .collect();
        let mean_d = results.iter().map(|r| r.0).sum::<f64>() / 10.0;
        let mean_g = results.iter().map(|r| r.1).sum::<f64>() / 10.0;
        let fsr = results.iter().filter(|r| r.3).count();
        let claimed = results.iter().filter(|r| r.4).count();
        let rcls: Vec<String> = results.iter().map(|r| format!("{:.4}", r.2)).collect();
        println!("{id}: ddals={mean_d:.2} greedy={mean_g:.2} fsr={fsr}/10 claimed_feasible={claimed}/10 [{}] {:.1}s", rcls.join(","), t0.elapsed().as_secs_f64());
    }
}
