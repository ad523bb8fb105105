//! One-pass representative subset selection over a record stream.
//!
//! Records are read in segments of `segment_size`. Each segment is a
//! candidate batch: its winners are picked one at a time by largest minimum
//! distance to every winner so far (the first winner of the stream is
//! random). The number of winners taken from a segment keeps the running
//! total at `floor(N * share)`, where `share` is the fraction of the stream
//! consumed; the last segment takes whatever is left. One record of
//! look-ahead tells the reader which segment is the last.

use crate::distance::{min_sq_dist_to, sq_dist};
use crate::domain::{Domain, SampleSet};
use crate::error::{Error, Result};
use crate::rng::RngState;
use crate::samplers::farthest::argmax_alive;

/// Pull-based source of fixed-width numeric records.
pub trait RecordSource {
    fn next_record(&mut self) -> Option<Result<Vec<f64>>>;

    /// Fraction of the stream read so far, if the source can tell (for
    /// example from a byte offset). Used when the record count is unknown.
    fn fraction_consumed(&self) -> Option<f64> {
        None
    }
}

/// In-memory source that counts reads per record.
#[derive(Debug, Clone)]
pub struct VecSource {
    records: Vec<Vec<f64>>,
    pos: usize,
    reads: Vec<usize>,
}

impl VecSource {
    pub fn new(records: Vec<Vec<f64>>) -> Self {
        let n = records.len();
        Self {
            records,
            pos: 0,
            reads: vec![0; n],
        }
    }

    pub fn from_set(set: &SampleSet) -> Self {
        Self::new(set.to_vecs())
    }

    /// How many times each record has been handed out.
    pub fn reads(&self) -> &[usize] {
        &self.reads
    }

    pub fn len(&self) -> usize {
        self.records.len()
    }

    pub fn is_empty(&self) -> bool {
        self.records.is_empty()
    }
}

impl RecordSource for VecSource {
    fn next_record(&mut self) -> Option<Result<Vec<f64>>> {
        let r = self.records.get(self.pos)?.clone();
        self.reads[self.pos] += 1;
        self.pos += 1;
        Some(Ok(r))
    }

    fn fraction_consumed(&self) -> Option<f64> {
        if self.records.is_empty() {
            return Some(1.0);
        }
        Some(self.pos as f64 / self.records.len() as f64)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StreamConfig {
    pub segment_size: usize,
    pub subset_size: usize,
    /// Total record count, when known in advance. Otherwise the source's
    /// `fraction_consumed` drives the per-segment quota.
    pub total_records: Option<usize>,
}

/// Selected records in arrival order, with their 0-based record indices.
#[derive(Debug, Clone, PartialEq)]
pub struct StreamSelection {
    pub set: SampleSet,
    pub record_indices: Vec<usize>,
}

pub fn stream_subset(
    source: &mut dyn RecordSource,
    domain: &Domain,
    config: &StreamConfig,
    rng: &mut RngState,
) -> Result<StreamSelection> {
    let n = config.subset_size;
    if config.segment_size == 0 || n == 0 {
        return Err(Error::InvalidArgument("segment and subset sizes must be at least 1".into()));
    }
    let d = domain.dim();
    let mut winners: Vec<(usize, Vec<f64>)> = Vec::with_capacity(n);
    let mut selected_flat: Vec<f64> = Vec::with_capacity(n * d);
    let mut read = 0usize;
    let mut lookahead = match pull(source, domain, 0) {
        None => return Err(Error::SourceTooShort { got: 0, requested: n }),
        Some(r) => Some(r?),
    };

    while let Some(first) = lookahead.take() {
        let seg_start = read;
        let mut segment = first;
        read += 1;
        while segment.len() < config.segment_size * d {
            match pull(source, domain, read) {
                None => break,
                Some(r) => {
                    segment.extend(r?);
                    read += 1;
                }
            }
        }
        lookahead = match pull(source, domain, read) {
            None => None,
            Some(r) => Some(r?),
        };
        let last = lookahead.is_none();
        let seg_len = read - seg_start;
        let have = winners.len();

        let quota = if last {
            if read < n {
                return Err(Error::SourceTooShort { got: read, requested: n });
            }
            n - have
        } else {
            let share = match config.total_records {
                Some(total) => (read as f64 / total.max(1) as f64).min(1.0),
                None => source.fraction_consumed().ok_or_else(|| {
                    Error::InvalidArgument("record count unknown and the source cannot report progress".into())
                })?,
            };
            let target = ((n as f64 * share).floor() as usize).min(n);
            let mut q = target.saturating_sub(have);
            if let Some(total) = config.total_records {
                // Never leave more winners to pick than records remain.
                let remaining = total.saturating_sub(read);
                q = q.max((n - have).saturating_sub(remaining));
            }
            q.min(seg_len)
        };
        if quota > seg_len {
            return Err(Error::StreamShortfall {
                selected: have,
                requested: n,
            });
        }

        let mut alive = vec![true; seg_len];
        let mut scores: Vec<f64> = segment
            .chunks_exact(d)
            .map(|c| min_sq_dist_to(c, &selected_flat, d))
            .collect();
        let mut picked = Vec::with_capacity(quota);
        for _ in 0..quota {
            let idx = if selected_flat.is_empty() {
                rng.below(seg_len)
            } else {
                argmax_alive(&scores, &alive).expect("quota <= segment length")
            };
            alive[idx] = false;
            let chosen = segment[idx * d..(idx + 1) * d].to_vec();
            for (c, cand) in segment.chunks_exact(d).enumerate() {
                if alive[c] {
                    scores[c] = scores[c].min(sq_dist(cand, &chosen));
                }
            }
            selected_flat.extend_from_slice(&chosen);
            picked.push((seg_start + idx, chosen));
        }
        picked.sort_by_key(|(i, _)| *i);
        winners.extend(picked);
    }

    if winners.len() != n {
        return Err(Error::StreamShortfall {
            selected: winners.len(),
            requested: n,
        });
    }
    let record_indices = winners.iter().map(|(i, _)| *i).collect();
    let coords = winners.into_iter().flat_map(|(_, p)| p).collect();
    Ok(StreamSelection {
        set: SampleSet::from_flat_trusted(domain.clone(), coords),
        record_indices,
    })
}

fn pull(source: &mut dyn RecordSource, domain: &Domain, index: usize) -> Option<Result<Vec<f64>>> {
    let rec = source.next_record()?;
    Some(rec.and_then(|r| {
        if r.len() != domain.dim() {
            Err(Error::DimensionMismatch {
                expected: domain.dim(),
                got: r.len(),
            })
        } else if r.iter().any(|x| !x.is_finite()) {
            Err(Error::NonFinite { index })
        } else if !domain.contains(&r) {
            Err(Error::PointOutsideDomain { index })
        } else {
            Ok(r)
        }
    }))
}
