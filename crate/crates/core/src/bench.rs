//! Benchmark harness: repeated generation, optional Latinization, metrics
//! and timing per method, aggregated into a report.
//!
//! The seed of repetition `r` of method `id` is
//! `derive_seed(seed_base, id, r)`; Latinization of that set draws from the
//! cell generator's child stream 1. Methods run one after another so that
//! their wall-clock times are comparable. Time covers generation and
//! Latinization, not metrics.

use std::fmt::Write as _;
use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::domain::{Domain, SampleSet};
use crate::error::{Error, Result};
use crate::metrics::{quality_report, DEFAULT_P};
use crate::rng::{derive_seed, RngState};
use crate::samplers::{latinize, FpConfig, LhsConfig, Method};

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MethodSpec {
    /// Label used in reports and for seed derivation.
    pub id: String,
    pub method: Method,
}

impl MethodSpec {
    pub fn new(id: &str, method: Method) -> Self {
        Self {
            id: id.to_string(),
            method,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct ExperimentSpec {
    pub name: String,
    pub dim: usize,
    pub n_samples: usize,
    pub repetitions: usize,
    pub methods: Vec<MethodSpec>,
    #[serde(default = "yes")]
    pub latinize_variants: bool,
    #[serde(default)]
    pub seed_base: u64,
}

fn yes() -> bool {
    true
}

impl ExperimentSpec {
    /// The five compared methods with the benchmark's reference settings.
    pub fn with_paper_methods(dim: usize, n_samples: usize, repetitions: usize) -> Self {
        let methods = vec![
            MethodSpec::new("Random", Method::Random),
            MethodSpec::new("LHS", Method::LhsMaximin(LhsConfig::default())),
            MethodSpec::new("GreedyFP", Method::GreedyFp(FpConfig::greedy(10))),
            MethodSpec::new("BC", Method::BestCandidate(FpConfig::best_candidate(250))),
            MethodSpec::new("Hybrid", Method::Hybrid(FpConfig::hybrid(10, 100))),
        ];
        Self {
            name: format!("{dim}D-{n_samples}"),
            dim,
            n_samples,
            repetitions,
            methods,
            latinize_variants: true,
            seed_base: 0,
        }
    }
}

/// 2D-500, 4D-500, 4D-1000 and 10D-1000 with 50, 50, 20 and 20 repetitions.
pub fn paper_suite() -> Vec<ExperimentSpec> {
    [(2, 500, 50), (4, 500, 50), (4, 1000, 20), (10, 1000, 20)]
        .into_iter()
        .map(|(d, n, r)| ExperimentSpec::with_paper_methods(d, n, r))
        .collect()
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct RawRow {
    pub repetition: usize,
    pub seed: u64,
    pub latinized: bool,
    pub nn_avg: f64,
    pub phi_p: f64,
    pub cl2: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct CellMeans {
    pub nn_avg: f64,
    pub phi_p: f64,
    pub cl2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct MethodResult {
    pub id: String,
    pub algorithm: String,
    pub rows: Vec<RawRow>,
    pub plain: Option<CellMeans>,
    pub latinized: Option<CellMeans>,
    /// Error that stopped this method, if any; rows before it are kept.
    pub failure: Option<String>,
    /// Total generation plus Latinization time over all repetitions.
    pub seconds: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "camelCase", deny_unknown_fields)]
pub struct BenchReport {
    pub schema_version: u32,
    pub experiment: String,
    pub dim: usize,
    pub n_samples: usize,
    pub repetitions: usize,
    pub p: u32,
    pub methods: Vec<MethodResult>,
}

impl BenchReport {
    pub fn empty(name: &str) -> Self {
        Self {
            schema_version: SCHEMA_VERSION,
            experiment: name.to_string(),
            dim: 0,
            n_samples: 0,
            repetitions: 0,
            p: DEFAULT_P,
            methods: Vec::new(),
        }
    }

    pub fn method(&self, id: &str) -> Option<&MethodResult> {
        self.methods.iter().find(|m| m.id == id)
    }
}

/// A generated set kept for later inspection.
#[derive(Debug, Clone)]
pub struct SavedSet {
    pub method: String,
    pub repetition: usize,
    pub latinized: bool,
    pub set: SampleSet,
}

/// Arithmetic mean of the rows for one variant, summed in repetition order.
pub fn mean_of(rows: &[RawRow], latinized: bool) -> Option<CellMeans> {
    let mut sel: Vec<&RawRow> = rows.iter().filter(|r| r.latinized == latinized).collect();
    if sel.is_empty() {
        return None;
    }
    sel.sort_by_key(|r| r.repetition);
    let k = sel.len() as f64;
    Some(CellMeans {
        nn_avg: sel.iter().map(|r| r.nn_avg).sum::<f64>() / k,
        phi_p: sel.iter().map(|r| r.phi_p).sum::<f64>() / k,
        cl2: sel.iter().map(|r| r.cl2).sum::<f64>() / k,
    })
}

pub fn run_experiment(spec: &ExperimentSpec) -> Result<BenchReport> {
    run_experiment_with(spec, false).map(|(r, _)| r)
}

/// As [`run_experiment`]; with `keep_sets` every generated (and Latinized)
/// set is returned as well.
pub fn run_experiment_with(spec: &ExperimentSpec, keep_sets: bool) -> Result<(BenchReport, Vec<SavedSet>)> {
    if spec.methods.is_empty() {
        return Err(Error::InvalidArgument("experiment lists no methods".into()));
    }
    if spec.repetitions == 0 || spec.dim == 0 {
        return Err(Error::InvalidArgument("repetitions and dim must be positive".into()));
    }
    let domain = Domain::unit(spec.dim);
    let mut saved = Vec::new();
    let mut methods = Vec::with_capacity(spec.methods.len());
    for ms in &spec.methods {
        let mut rows = Vec::new();
        let mut failure = None;
        let mut seconds = 0.0;
        for rep in 0..spec.repetitions {
            let seed = derive_seed(spec.seed_base, &ms.id, rep as u64);
            let mut rng = RngState::new(seed);
            let start = Instant::now();
            let generated = ms.method.generate(&domain, spec.n_samples, &mut rng).and_then(|set| {
                let mut out = vec![(false, set)];
                if spec.latinize_variants {
                    let lat = latinize(&out[0].1, &mut rng.child(1))?;
                    out.push((true, lat));
                }
                Ok(out)
            });
            seconds += start.elapsed().as_secs_f64();
            let cell = generated.and_then(|out| {
                for (latinized, set) in &out {
                    let q = quality_report(set, DEFAULT_P)?;
                    rows.push(RawRow {
                        repetition: rep,
                        seed,
                        latinized: *latinized,
                        nn_avg: q.nn_avg,
                        phi_p: q.phi_p,
                        cl2: q.cl2,
                    });
                }
                Ok(out)
            });
            match cell {
                Ok(sets) if keep_sets => saved.extend(sets.into_iter().map(|(latinized, set)| SavedSet {
                    method: ms.id.clone(),
                    repetition: rep,
                    latinized,
                    set,
                })),
                Ok(_) => {}
                Err(e) => {
                    log::warn!("{} / {}: repetition {rep} failed: {e}", spec.name, ms.id);
                    failure = Some(format!("repetition {rep}: {e}"));
                    break;
                }
            }
        }
        methods.push(MethodResult {
            id: ms.id.clone(),
            algorithm: ms.method.id().to_string(),
            plain: mean_of(&rows, false),
            latinized: mean_of(&rows, true),
            rows,
            failure,
            seconds,
        });
    }
    Ok((
        BenchReport {
            schema_version: SCHEMA_VERSION,
            experiment: spec.name.clone(),
            dim: spec.dim,
            n_samples: spec.n_samples,
            repetitions: spec.repetitions,
            p: DEFAULT_P,
            methods,
        },
        saved,
    ))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

impl ReportFormat {
    pub fn extension(self) -> &'static str {
        match self {
            ReportFormat::Table => "txt",
            ReportFormat::Csv => "csv",
            ReportFormat::Json => "json",
        }
    }
}

/// Column order of the CSV format.
pub const CSV_HEADER: &str = "experiment,method,algorithm,latinized,rows,nn_avg,phi_p,cl2,seconds,failure";

/// Renders a report. With `include_timing == false` the time fields are
/// omitted (Table, Csv) or zeroed (Json), making output reproducible.
pub fn format_report(report: &BenchReport, format: ReportFormat, include_timing: bool) -> String {
    match format {
        ReportFormat::Table => format_table(report, include_timing),
        ReportFormat::Csv => format_csv(report, include_timing),
        ReportFormat::Json => {
            let mut r = report.clone();
            if !include_timing {
                r.methods.iter_mut().for_each(|m| m.seconds = 0.0);
            }
            let mut s = serde_json::to_string_pretty(&r).expect("report serializes");
            s.push('\n');
            s
        }
    }
}

fn cell(v: Option<f64>, prec: usize) -> String {
    v.map_or_else(|| "N/A".to_string(), |x| format!("{x:.prec$}"))
}

fn format_table(report: &BenchReport, include_timing: bool) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{} (d={}, N={}, reps={}, p={})",
        report.experiment, report.dim, report.n_samples, report.repetitions, report.p
    );
    let _ = write!(
        out,
        "{:<10} {:>9} {:>9} {:>11} {:>11} {:>8} {:>8}",
        "Method", "nnAvg", "nnAvg-Lat", "phi", "phi-Lat", "CL2", "CL2-Lat"
    );
    if include_timing {
        let _ = write!(out, " {:>9}", "time(s)");
    }
    out.push('\n');
    for m in &report.methods {
        let p = m.plain;
        let l = m.latinized;
        let _ = write!(
            out,
            "{:<10} {:>9} {:>9} {:>11} {:>11} {:>8} {:>8}",
            m.id,
            cell(p.map(|c| c.nn_avg), 4),
            cell(l.map(|c| c.nn_avg), 4),
            cell(p.map(|c| c.phi_p), 3),
            cell(l.map(|c| c.phi_p), 3),
            cell(p.map(|c| c.cl2), 4),
            cell(l.map(|c| c.cl2), 4),
        );
        if include_timing {
            let _ = write!(out, " {:>9.3}", m.seconds);
        }
        if let Some(f) = &m.failure {
            let _ = write!(out, "  FAILED: {f}");
        }
        out.push('\n');
    }
    out
}

fn format_csv(report: &BenchReport, include_timing: bool) -> String {
    let mut w = csv::WriterBuilder::new().terminator(csv::Terminator::Any(b'\n')).from_writer(Vec::new());
    w.write_record(CSV_HEADER.split(',')).expect("in-memory write");
    for m in &report.methods {
        for (latinized, means) in [(false, m.plain), (true, m.latinized)] {
            let Some(c) = means else { continue };
            let rows = m.rows.iter().filter(|r| r.latinized == latinized).count();
            let seconds = if include_timing { format!("{}", m.seconds) } else { String::new() };
            w.write_record([
                report.experiment.as_str(),
                &m.id,
                &m.algorithm,
                if latinized { "true" } else { "false" },
                &rows.to_string(),
                &format!("{:?}", c.nn_avg),
                &format!("{:?}", c.phi_p),
                &format!("{:?}", c.cl2),
                &seconds,
                m.failure.as_deref().unwrap_or(""),
            ])
            .expect("in-memory write");
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}
