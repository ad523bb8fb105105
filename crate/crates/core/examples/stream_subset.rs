//! One-pass subset of a large record stream, segment by segment.

use spacefill::adapt::{stream_subset, StreamConfig, VecSource};
use spacefill::metrics::nn_stats;
use spacefill::samplers::random_sampling;
use spacefill::{Domain, RngState, SampleSet};

fn main() -> spacefill::Result<()> {
    let dom = Domain::unit(2);
    let data = random_sampling(&dom, 50_000, &mut RngState::new(1))?;
    let mut source = VecSource::from_set(&data);
    let config = StreamConfig {
        segment_size: 5_000,
        subset_size: 200,
        total_records: Some(50_000),
    };
    let sel = stream_subset(&mut source, &dom, &config, &mut RngState::new(2))?;
    let naive = SampleSet::from_points(dom.clone(), data.points().step_by(250))?;
    println!("max reads of any record: {}", source.reads().iter().max().unwrap());
    println!("nnAvg: stream subset {:.4}, every 250th record {:.4}", nn_stats(&sel.set)?.1, nn_stats(&naive)?.1);
    Ok(())
}
