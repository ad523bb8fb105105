//! Scaled-down run of the five-method comparison. Pass `full` to run the
//! complete four-experiment suite.

use spacefill::bench::{format_report, paper_suite, run_experiment, ExperimentSpec, ReportFormat};

fn main() -> spacefill::Result<()> {
    let specs = if std::env::args().any(|a| a == "full") {
        paper_suite()
    } else {
        vec![ExperimentSpec::with_paper_methods(2, 500, 5)]
    };
    for spec in specs {
        let report = run_experiment(&spec)?;
        println!("{}", format_report(&report, ReportFormat::Table, true));
    }
    Ok(())
}
