//! Latinizing moves only the coordinates that sit in the wrong bin.

use spacefill::metrics::quality_report;
use spacefill::samplers::{greedy_fp, has_latin_property, latinize, FpConfig};
use spacefill::{Domain, RngState};

fn main() -> spacefill::Result<()> {
    let set = greedy_fp(&Domain::unit(2), 500, &mut RngState::new(9), &FpConfig::greedy(10), None)?;
    let lat = latinize(&set, &mut RngState::new(10))?;
    let moved = set.as_flat().iter().zip(lat.as_flat()).filter(|(a, b)| a != b).count();
    println!("moved {moved} of {} coordinates; Latin: {}", set.as_flat().len(), has_latin_property(&lat));
    let (a, b) = (quality_report(&set, 50)?, quality_report(&lat, 50)?);
    println!("CL2 {:.4} -> {:.4}, nnAvg {:.4} -> {:.4}", a.cl2, b.cl2, a.nn_avg, b.nn_avg);
    Ok(())
}
