//! Probabilistic Lloyd iteration toward a centroidal Voronoi tessellation.

use spacefill::metrics::quality_report;
use spacefill::samplers::{cvt_sampling_traced, random_sampling, CvtConfig};
use spacefill::{Domain, RngState};

fn main() -> spacefill::Result<()> {
    let dom = Domain::unit(2);
    let config = CvtConfig {
        niter: 50,
        ..CvtConfig::default()
    };
    let (set, trace) = cvt_sampling_traced(&dom, 100, &mut RngState::new(5), &config)?;
    for (i, m) in trace.max_movement.iter().enumerate().step_by(10) {
        println!("iteration {i:>3}: max generator movement {m:.2e}");
    }
    let cvt = quality_report(&set, 50)?;
    let rnd = quality_report(&random_sampling(&dom, 100, &mut RngState::new(5))?, 50)?;
    println!("nnAvg: cvt {:.4}, random {:.4}", cvt.nn_avg, rnd.nn_avg);
    Ok(())
}
