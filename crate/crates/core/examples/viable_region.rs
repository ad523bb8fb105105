//! Sampling only the viable part of a box: the region above a parabola.

use spacefill::adapt::viable_region_sample;
use spacefill::samplers::FpConfig;
use spacefill::{Domain, Method, RngState};

fn main() -> spacefill::Result<()> {
    let dom = Domain::unit(2).with_viability(|p| p[1] >= 3.0 * (p[0] - 0.5).powi(2));
    for method in [Method::Random, Method::GreedyFp(FpConfig::greedy(10))] {
        let set = viable_region_sample(&dom, 200, &method, &mut RngState::new(4))?;
        let ok = set.points().all(|p| dom.is_viable(p));
        println!("{}: {} points, all viable: {ok}", method.id(), set.len());
    }
    Ok(())
}
