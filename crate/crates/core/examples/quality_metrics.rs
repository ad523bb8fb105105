//! The three quality metrics on a hand-checkable set and on generated ones.

use spacefill::samplers::{lhs_basic, random_sampling, BinPlacement};
use spacefill::{quality_report, Domain, RngState, SampleSet};

fn main() -> spacefill::Result<()> {
    let three = SampleSet::from_points(Domain::unit(1), [[0.0], [0.4], [1.0]])?;
    println!("{{0, 0.4, 1}}: {}", serde_json::to_string(&quality_report(&three, 50)?).unwrap());
    let dom = Domain::unit(3);
    let rnd = random_sampling(&dom, 200, &mut RngState::new(1))?;
    let lhs = lhs_basic(&dom, 200, &mut RngState::new(1), BinPlacement::RandomInBin)?;
    for (name, s) in [("random", rnd), ("lhs", lhs)] {
        let q = quality_report(&s, 50)?;
        println!("{name:<7} nnAvg {:.4} phi50 {:>8.2} CL2 {:.4}", q.nn_avg, q.phi_p, q.cl2);
    }
    Ok(())
}
