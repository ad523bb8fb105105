use std::fs;
use std::io::{Read, Write};
use std::path::{Path, PathBuf};

use serde_json::{Map, Value};

use super::config::{build_domain, build_method, canonical_algorithm, parse_param, RunConfigFile};
use super::{
    AppendRegionArgs, BenchArgs, BoundsArgs, CliError, ExpandArgs, GenerateArgs, LatinizeArgs, PlotArgs, ScoreArgs,
    SeedArg, Suite, SubsetArgs,
};
use crate::adapt::{
    curve_region_sample, expand_domain, rejection_sample_density, stream_subset, viable_region_sample,
    CurveRegionSpec, ExpandCandidates, StreamConfig, StreamSelection,
};
use crate::bench::{format_report, paper_suite, run_experiment_with, ExperimentSpec};
use crate::domain::{Domain, SampleSet};
use crate::io::{read_csv, scatter_svg, to_csv_string, CsvRecords};
use crate::metrics::quality_report;
use crate::rng::RngState;
use crate::samplers::{latinize as latinize_set, Method};

type CliResult<T> = std::result::Result<T, CliError>;

fn io_err(path: &Path, e: std::io::Error) -> CliError {
    CliError::usage(format!("{}: {e}", path.display()))
}

fn is_stdio(path: &Option<PathBuf>) -> bool {
    path.as_deref().is_none_or(|p| p.as_os_str() == "-")
}

/// Input stream and its byte length when it is a regular file.
fn open_input(path: &Option<PathBuf>) -> CliResult<(Box<dyn Read>, Option<u64>)> {
    if is_stdio(path) {
        return Ok((Box::new(std::io::stdin().lock()), None));
    }
    let p = path.as_deref().expect("checked above");
    let f = fs::File::open(p).map_err(|e| io_err(p, e))?;
    let len = f.metadata().ok().map(|m| m.len());
    Ok((Box::new(f), len))
}

fn write_output(path: &Option<PathBuf>, bytes: &[u8]) -> CliResult<()> {
    if is_stdio(path) {
        let mut out = std::io::stdout().lock();
        return out
            .write_all(bytes)
            .and_then(|_| out.flush())
            .map_err(|e| CliError::runtime(format!("stdout: {e}")));
    }
    let p = path.as_deref().expect("checked above");
    fs::write(p, bytes).map_err(|e| CliError::runtime(format!("{}: {e}", p.display())))
}

fn require_seed(seed: &SeedArg) -> CliResult<u64> {
    seed.seed
        .ok_or_else(|| CliError::usage("no seed: pass --seed or set SPACEFILL_SEED"))
}

fn bounds(b: &BoundsArgs, dim: usize) -> Option<(Vec<f64>, Vec<f64>)> {
    if b.lower.is_none() && b.upper.is_none() {
        return None;
    }
    Some((
        b.lower.clone().unwrap_or_else(|| vec![0.0; dim]),
        b.upper.clone().unwrap_or_else(|| vec![1.0; dim]),
    ))
}

/// Reads a sample CSV into the box given by `b` (unit cube by default).
fn read_set(path: &Option<PathBuf>, b: &BoundsArgs) -> CliResult<SampleSet> {
    let (input, _) = open_input(path)?;
    let mut text = String::new();
    let mut input = input;
    input
        .read_to_string(&mut text)
        .map_err(|e| CliError::usage(format!("reading input: {e}")))?;
    let dim = text
        .lines()
        .next()
        .map_or(0, |h| if h.trim().is_empty() { 0 } else { h.split(',').count() });
    let domain = match bounds(b, dim) {
        Some(bx) => Some(build_domain(bx.0.len(), Some(bx), None, None)?),
        None => None,
    };
    Ok(read_csv(text.as_bytes(), domain.as_ref())?)
}

fn parse_params(items: &[String]) -> CliResult<Map<String, Value>> {
    items.iter().map(|s| parse_param(s)).collect()
}

pub(super) fn generate(a: GenerateArgs) -> CliResult<()> {
    let cfg = match &a.config {
        Some(p) => RunConfigFile::parse(&fs::read_to_string(p).map_err(|e| io_err(p, e))?)?,
        None => RunConfigFile::default(),
    };
    let algorithm = a
        .algo
        .clone()
        .or_else(|| (!cfg.algorithm.is_empty()).then(|| cfg.algorithm.clone()))
        .ok_or_else(|| CliError::usage("--algo is required"))?;
    let tag = canonical_algorithm(&algorithm)?;
    let dim = a
        .dim
        .or((cfg.dim > 0).then_some(cfg.dim))
        .ok_or_else(|| CliError::usage("--dim is required"))?;
    let n = match a.n.or(cfg.n) {
        Some(n) => n,
        None if tag == "poisson" => 0,
        None => return Err(CliError::usage("--n is required")),
    };
    let seed = a
        .seed
        .seed
        .or(cfg.seed)
        .ok_or_else(|| CliError::usage("no seed: pass --seed, set SPACEFILL_SEED or give seed in the config"))?;
    let mut params = cfg.params.clone();
    params.extend(parse_params(&a.params)?);
    let method = build_method(&algorithm, dim, n, &params)?;
    let bx = bounds(&a.bounds, dim).or(cfg.domain.clone().map(|d| (d.lower, d.upper)));
    let density = a.density.clone().or(cfg.density.clone());
    let viability = a.viability.clone().or(cfg.viability.clone());
    let domain = build_domain(dim, bx, density.as_deref(), viability.as_deref())?;

    let mut rng = RngState::new(seed);
    let set = sample(&domain, n, &method, &mut rng)?;
    let set = if a.latinize || cfg.latinize {
        latinize_set(&set, &mut rng.child(1))?
    } else {
        set
    };
    write_output(&a.out, to_csv_string(&set).as_bytes())
}

fn sample(domain: &Domain, n: usize, method: &Method, rng: &mut RngState) -> CliResult<SampleSet> {
    let density_aware = matches!(
        method,
        Method::Random | Method::Cvt(_) | Method::GreedyFp(_) | Method::BestCandidate(_) | Method::Hybrid(_)
    );
    if domain.density().is_some() && !density_aware {
        return Err(CliError::usage(format!("{} does not support a density", method.id())));
    }
    let set = if domain.has_viability() {
        viable_region_sample(domain, n, method, rng)?
    } else if domain.density().is_some() && *method == Method::Random {
        rejection_sample_density(domain, n, rng)?
    } else {
        method.generate(domain, n, rng)?
    };
    Ok(set)
}

pub(super) fn score(a: ScoreArgs) -> CliResult<()> {
    let set = read_set(&a.input, &BoundsArgs { lower: None, upper: None })?;
    let report = quality_report(&set, a.p)?;
    let mut text = serde_json::to_string_pretty(&report).expect("report serializes");
    text.push('\n');
    write_output(&None, text.as_bytes())
}

pub(super) fn latinize(a: LatinizeArgs) -> CliResult<()> {
    let seed = require_seed(&a.seed)?;
    let set = read_set(&a.input, &a.bounds)?;
    let out = latinize_set(&set, &mut RngState::new(seed))?;
    write_output(&a.out, to_csv_string(&out).as_bytes())
}

/// Parameters of a `subset` run apart from its input.
#[derive(Debug, Clone, PartialEq)]
pub struct SubsetRequest {
    pub n: usize,
    pub segment: usize,
    pub total: Option<usize>,
    pub seed: u64,
    pub bounds: Option<(Vec<f64>, Vec<f64>)>,
}

/// Streams CSV records from `reader` once and selects the subset.
/// `total_bytes` lets progress be measured when `total` is unknown.
pub fn subset_from_reader<R: Read>(
    reader: R,
    total_bytes: Option<u64>,
    req: &SubsetRequest,
) -> CliResult<StreamSelection> {
    let mut records = CsvRecords::new(reader, total_bytes)?;
    let dim = records.dim();
    let domain = build_domain(dim, req.bounds.clone(), None, None)?;
    if req.total.is_none() && total_bytes.is_none() {
        return Err(CliError::usage("input size unknown: pass --total or read from a file"));
    }
    let config = StreamConfig {
        segment_size: req.segment,
        subset_size: req.n,
        total_records: req.total,
    };
    stream_subset(&mut records, &domain, &config, &mut RngState::new(req.seed)).map_err(|e| {
        let line = records.line();
        match e {
            crate::Error::PointOutsideDomain { .. } | crate::Error::DimensionMismatch { .. } => {
                CliError::usage(format!("line {}: {e}", line))
            }
            other => other.into(),
        }
    })
}

pub(super) fn subset(a: SubsetArgs) -> CliResult<()> {
    let seed = require_seed(&a.seed)?;
    let (input, len) = open_input(&a.input)?;
    let req = SubsetRequest {
        n: a.n,
        segment: a.segment,
        total: a.total,
        seed,
        bounds: match (&a.bounds.lower, &a.bounds.upper) {
            (None, None) => None,
            (lo, hi) => {
                let d = lo.as_ref().or(hi.as_ref()).map_or(0, Vec::len);
                bounds(&a.bounds, d)
            }
        },
    };
    let sel = subset_from_reader(input, len, &req)?;
    write_output(&a.out, to_csv_string(&sel.set).as_bytes())
}

pub(super) fn expand(a: ExpandArgs) -> CliResult<()> {
    let seed = require_seed(&a.seed)?;
    let set = read_set(&a.input, &a.bounds)?;
    let dim = set.dim();
    if a.new_lower.len() != dim || a.new_upper.len() != dim {
        return Err(CliError::usage(format!("--new-lower and --new-upper need {dim} values each")));
    }
    let new_domain = build_domain(dim, Some((a.new_lower.clone(), a.new_upper.clone())), None, None)?;
    let method = build_method(&a.algo, dim, a.add, &parse_params(&a.params)?)?;
    let candidates = if a.whole_domain {
        ExpandCandidates::WholeDomain
    } else {
        ExpandCandidates::NewRegionOnly
    };
    let out = expand_domain(&set, &new_domain, a.add, &method, candidates, &RngState::new(seed))?;
    write_output(&a.out, to_csv_string(&out).as_bytes())
}

pub(super) fn append_region(a: AppendRegionArgs) -> CliResult<()> {
    let seed = require_seed(&a.seed)?;
    let anchors = read_set(&Some(a.anchors.clone()), &a.bounds)?;
    let spec = CurveRegionSpec {
        anchors,
        half_width_fraction: a.halfwidth,
        candidates_per_anchor: a.cands_per_anchor,
        include_anchors: a.include_anchors,
    };
    let out = curve_region_sample(&spec, a.n, &mut RngState::new(seed))?;
    write_output(&a.out, to_csv_string(&out).as_bytes())
}

fn load_specs(path: &Path) -> CliResult<Vec<ExperimentSpec>> {
    let text = fs::read_to_string(path).map_err(|e| io_err(path, e))?;
    let value: Value = serde_json::from_str(&text).map_err(|e| CliError::usage(format!("spec: {e}")))?;
    let parsed = if value.is_array() {
        serde_json::from_value(value)
    } else {
        serde_json::from_value(value).map(|s| vec![s])
    };
    parsed.map_err(|e| CliError::usage(format!("spec: {e}")))
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

pub(super) fn bench(a: BenchArgs) -> CliResult<()> {
    let mut specs = match (&a.suite, &a.spec) {
        (Some(Suite::Paper), _) => paper_suite(),
        (None, Some(p)) => load_specs(p)?,
        (None, None) => return Err(CliError::usage("pass --suite or --spec")),
    };
    for s in &mut specs {
        if let Some(r) = a.reps_override {
            s.repetitions = r;
        }
        if let Some(b) = a.seed_base {
            s.seed_base = b;
        }
    }
    fs::create_dir_all(&a.out).map_err(|e| io_err(&a.out, e))?;
    let mut any_ok = false;
    for spec in &specs {
        let (report, sets) = run_experiment_with(spec, a.save_sets)?;
        any_ok |= report.methods.iter().any(|m| !m.rows.is_empty());
        let stem = file_stem(&spec.name);
        for f in &a.format {
            let f = (*f).into();
            let path = a.out.join(format!("{stem}.{}", crate::bench::ReportFormat::extension(f)));
            write_output(&Some(path.clone()), format_report(&report, f, !a.no_timing).as_bytes())?;
            println!("{}", path.display());
        }
        if a.save_sets {
            let dir = a.out.join(&stem);
            fs::create_dir_all(&dir).map_err(|e| io_err(&dir, e))?;
            for s in sets {
                let suffix = if s.latinized { "-lat" } else { "" };
                let path = dir.join(format!("{}-rep{}{suffix}.csv", file_stem(&s.method), s.repetition));
                write_output(&Some(path), to_csv_string(&s.set).as_bytes())?;
            }
        }
    }
    if any_ok {
        Ok(())
    } else {
        Err(CliError::runtime("every benchmark cell failed"))
    }
}

pub(super) fn plot(a: PlotArgs) -> CliResult<()> {
    if a.dims.len() != 2 {
        return Err(CliError::usage("--dims takes exactly two dimensions"));
    }
    let set = read_set(&a.input, &a.bounds)?;
    let svg = scatter_svg(&set, (a.dims[0], a.dims[1]), a.split)?;
    write_output(&a.out, svg.as_bytes())
}
