//! Density-weighted best candidate: more samples where the density is high,
//! still spread out locally.

use spacefill::samplers::{best_candidate, FpConfig};
use spacefill::{Domain, RngState};

fn main() -> spacefill::Result<()> {
    let dom = Domain::unit(2).with_density(
        |p| (-20.0 * ((p[0] - 0.5).powi(2) + (p[1] - 0.5).powi(2))).exp(),
        1.0,
    )?;
    let set = best_candidate(&dom, 300, &mut RngState::new(2), &FpConfig::best_candidate(100), None)?;
    let centre = set.points().filter(|p| (p[0] - 0.5).abs() < 0.25 && (p[1] - 0.5).abs() < 0.25).count();
    println!("{centre} of {} samples in the central quarter of the area", set.len());
    Ok(())
}
