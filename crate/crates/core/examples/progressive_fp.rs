//! Farthest-point samplers are progressive: any prefix of the output is
//! itself well spread. Compare the first half against a random prefix.

use spacefill::metrics::nn_stats;
use spacefill::samplers::{best_candidate, greedy_fp, hybrid_bc_fp, random_sampling, FpConfig};
use spacefill::{Domain, RngState, SampleSet};

fn prefix(set: &SampleSet, k: usize) -> SampleSet {
    SampleSet::from_points(set.domain().clone(), set.points().take(k)).unwrap()
}

fn main() -> spacefill::Result<()> {
    let dom = Domain::unit(2);
    let sets = [
        ("random", random_sampling(&dom, 400, &mut RngState::new(3))?),
        ("greedy-fp", greedy_fp(&dom, 400, &mut RngState::new(3), &FpConfig::greedy(10), None)?),
        ("bc", best_candidate(&dom, 400, &mut RngState::new(3), &FpConfig::best_candidate(250), None)?),
        ("hybrid", hybrid_bc_fp(&dom, 400, &mut RngState::new(3), &FpConfig::hybrid(10, 100), None)?),
    ];
    println!("{:<10} {:>12} {:>12}", "method", "nnMin@200", "nnMin@400");
    for (name, s) in &sets {
        println!("{name:<10} {:>12.4} {:>12.4}", nn_stats(&prefix(s, 200))?.0, nn_stats(s)?.0);
    }
    Ok(())
}
