//! Approximate Maximin LHS: how the minimum pairwise distance improves with
//! the number of interchanges.

use spacefill::samplers::{has_latin_property, lhs_maximin_traced, LhsConfig};
use spacefill::{Domain, RngState};

fn main() -> spacefill::Result<()> {
    let config = LhsConfig {
        n_tries: 10,
        n_interchanges: 2000,
        ..LhsConfig::default()
    };
    let (set, trace) = lhs_maximin_traced(&Domain::unit(2), 100, &mut RngState::new(1), &config)?;
    let best = &trace.tries[trace.best_try];
    println!("initial min distance {:.4}", best.initial_min_distance);
    let accepted: Vec<_> = best.interchanges.iter().enumerate().filter(|(_, c)| c.accepted).collect();
    for (i, c) in accepted.iter().step_by((accepted.len() / 8).max(1)) {
        println!("after interchange {i:>4}: {:.4}", c.min_distance);
    }
    println!("final {:.4} (Latin property: {})", best.final_min_distance(), has_latin_property(&set));
    Ok(())
}
