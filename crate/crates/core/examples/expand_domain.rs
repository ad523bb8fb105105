//! Growing the domain: the existing samples stay put and new ones fill the
//! added region first.

use spacefill::adapt::{expand_domain, ExpandCandidates};
use spacefill::samplers::{greedy_fp, FpConfig};
use spacefill::{Domain, Method, RngState};

fn main() -> spacefill::Result<()> {
    let method = Method::GreedyFp(FpConfig::greedy(10));
    let old = greedy_fp(&Domain::unit(2), 50, &mut RngState::new(1), &FpConfig::greedy(10), None)?;
    let wider = Domain::new(vec![0.0, 0.0], vec![1.5, 1.0])?;
    let grown = expand_domain(&old, &wider, 25, &method, ExpandCandidates::NewRegionOnly, &RngState::new(2))?;
    let in_new = grown.points().skip(50).filter(|p| p[0] > 1.0).count();
    println!("kept {} frozen, added {} ({in_new} in the new strip)", grown.frozen_count(), grown.len() - 50);

    let narrower = Domain::new(vec![0.0, 0.0], vec![0.5, 1.0])?;
    let shrunk = expand_domain(&old, &narrower, 0, &method, ExpandCandidates::NewRegionOnly, &RngState::new(2))?;
    println!("shrinking keeps {} of 50", shrunk.len());
    Ok(())
}
