use ddccmckp::eval::EvaluatorKind;
use ddccmckp::generator::{find_preset, generate};
use ddccmckp::search::{ddals, DdalsParams};

fn main() {
    for id in ["lab-ls1-t19", "lab-ls2-t12"] {
        let spec = find_preset(id).unwrap();
        let out = generate(&spec, 1).unwrap();
        let t0 = std::time::Instant::now();
        let d = ddals(&out.instance, &DdalsParams::new(EvaluatorKind::AcceleratedMc { draws: 20_000 }, 0));
        println!("{id}: cost={:.1} et={} feasible={} in {:.1}s", d.cost, d.eval_count, d.feasible, t0.elapsed().as_secs_f64());
    }
}
