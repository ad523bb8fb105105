//! Poisson disk sampling: the sample count is an output, and grows slowly
//! with the number of candidates tried around each active sample.

use spacefill::samplers::{poisson_disk, PoissonConfig};
use spacefill::{Domain, RngState};

fn main() -> spacefill::Result<()> {
    for ncand in [30, 50, 100] {
        let counts: Vec<usize> = (0..10)
            .map(|seed| poisson_disk(&Domain::unit(2), &PoissonConfig::new(0.08, ncand), &mut RngState::new(seed)))
            .map(|s| s.map(|s| s.len()))
            .collect::<Result<_, _>>()?;
        let mean = counts.iter().sum::<usize>() as f64 / counts.len() as f64;
        println!("r=0.08 ncand={ncand:>3}: mean {mean:.1} samples over 10 seeds");
    }
    Ok(())
}
