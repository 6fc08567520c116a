use ddccmckp::baselines::greedy;
use ddccmckp::eval::EvaluatorKind;
use ddccmckp::generator::{find_preset, generate};
use ddccmckp::harness::FSR_MARGIN;
use ddccmckp::search::{ddals, sfe_select, DdalsParams, SfeVariant};
use rayon::prelude::*;

fn main() {
    for master in [0xC7_000u64, 0xDD_000, 0x11_000] {
        println!("master seed {master:#x}:");
        for id in ["lab-ss1-t11", "lab-ss1-t14", "lab-ss2-t18", "lab-ss2-t26", "lab-ss3-t11", "lab-ss3-t20", "lab-ss4-t10", "lab-ss4-t16"] {
            let spec = find_preset(id).unwrap();
            // Collect 10 solvable realizations, skipping those where DDALS
            // finds nothing feasible.
            let results: Vec<(f64, f64, f64, f64)> = (0..40u64)
                .into_par_iter()
                .filter_map(|seed| {
                    let out = generate(&spec, master + seed).unwrap();
                    let evaluator = EvaluatorKind::AcceleratedMc { draws: 100_000 };
                    let d = ddals(&out.instance, &DdalsParams::new(evaluator, seed));
                    if !d.feasible {
                        return None;
                    }
                    let g = greedy(&out.instance, 1.0, evaluator, seed);
                    let v1 = sfe_select(&d.archives, &d.solution, d.cost, SfeVariant::V1, spec.p0);
                    let rcl_o = out.truth.real_confidence(&d.solution, 100_000, 0xF0 + seed);
                    let rcl_v1 = out.truth.real_confidence(&v1.solution, 100_000, 0xF0 + seed);
                    Some((d.cost, g.cost, rcl_o, rcl_v1))
                })
                .collect();
            let take: Vec<_> = results.iter().take(10).collect();
            if take.len() < 10 {
                println!("  {id}: only {} solvable of 40", take.len());
                continue;
            }
            let fsr_o = take.iter().filter(|r| r.2 >= spec.p0 - FSR_MARGIN).count();
            let fsr_v1 = take.iter().filter(|r| r.3 >= spec.p0 - FSR_MARGIN).count();
            let md = take.iter().map(|r| r.0).sum::<f64>() / 10.0;
            let mg = take.iter().map(|r| r.1).sum::<f64>() / 10.0;
            println!("  {id}: O={md:.2} greedy={mg:.2} fsr_O={fsr_o}/10 fsr_V1={fsr_v1}/10 (solvable {}/40)", results.len());
        }
    }
}
