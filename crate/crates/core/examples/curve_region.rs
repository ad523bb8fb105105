//! Densifying around anchor points that lie along a curve.

use spacefill::adapt::{curve_region_sample_traced, CurveRegionSpec};
use spacefill::{Domain, RngState, SampleSet};

fn main() -> spacefill::Result<()> {
    let anchors: Vec<[f64; 2]> = (0..20)
        .map(|i| {
            let t = 0.05 + 0.045 * i as f64;
            [t, 0.2 + 0.6 * t * t]
        })
        .collect();
    let spec = CurveRegionSpec::new(SampleSet::from_points(Domain::unit(2), anchors)?);
    let (set, origin) = curve_region_sample_traced(&spec, 60, &mut RngState::new(7))?;
    let mut per_anchor = vec![0; 20];
    origin.iter().for_each(|&a| per_anchor[a] += 1);
    println!("{} anchors + {} new points", set.frozen_count(), set.len() - set.frozen_count());
    println!("new points per anchor: {per_anchor:?}");
    Ok(())
}
