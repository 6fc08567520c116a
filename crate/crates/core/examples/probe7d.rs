use ddccmckp::baselines::greedy;
use ddccmckp::eval::EvaluatorKind;
use ddccmckp::generator::{find_preset, generate};
use ddccmckp::harness::FSR_MARGIN;
use ddccmckp::search::{ddals, sfe_select, DdalsParams, SfeVariant};
use rayon::prelude::*;

fn main() {
    for master in [0xC7_000u64, 0xDD_000, 0x11_000, 0x55_000] {
        println!("master {master:#x}:");
        for id in ["lab-ss1-t14", "lab-ss2-t26", "lab-ss3-t20", "lab-ss4-t16"] {
            let spec = find_preset(id).unwrap();
            let rows: Vec<(f64, f64, f64, f64, f64, f64)> = (0..40u64)
                .into_par_iter()
                .filter_map(|seed| {
                    let out = generate(&spec, master + seed).unwrap();
                    let evaluator = EvaluatorKind::AcceleratedMc { draws: 100_000 };
                    let d = ddals(&out.instance, &DdalsParams::new(evaluator, seed));
                    if !d.feasible {
                        return None;
                    }
                    let g = greedy(&out.instance, 1.0, evaluator, seed);
                    let v3 = sfe_select(&d.archives, &d.solution, d.cost, SfeVariant::V3, spec.p0);
                    let rcl_o = out.truth.real_confidence(&d.solution, 100_000, 0xF0 + seed);
                    let rcl_v3 = out.truth.real_confidence(&v3.solution, 100_000, 0x1F0 + seed);
                    Some((d.cost, g.cost, rcl_o, rcl_v3, v3.cost, v3.confidence.unwrap_or(f64::NAN)))
                })
                .collect();
            let take: Vec<_> = rows.iter().take(10).collect();
            if take.len() < 10 { println!("  {id}: only {} solvable", take.len()); continue; }
            let fsr_o = take.iter().filter(|r| r.2 >= spec.p0 - FSR_MARGIN).count();
            let fsr_v3 = take.iter().filter(|r| r.3 >= spec.p0 - FSR_MARGIN).count();
            let mo = take.iter().map(|r| r.0).sum::<f64>() / 10.0;
            let mg = take.iter().map(|r| r.1).sum::<f64>() / 10.0;
            let mv3 = take.iter().map(|r| r.4).sum::<f64>() / 10.0;
            let v3rcls: Vec<String> = take.iter().map(|r| format!("{:.3}", r.3)).collect();
            println!("  {id}: O={mo:.2} V3={mv3:.2} greedy={mg:.2} fsr_O={fsr_o} fsr_V3={fsr_v3} v3rcl=[{}]", v3rcls.join(","));
        }
    }
}
