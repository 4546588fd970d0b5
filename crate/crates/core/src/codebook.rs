//! Snippet codebook: k-means vector quantization of snippet histograms
//! and per-video bag-of-words encoding.
//!
//! Training is Lloyd's algorithm with k-means++ seeding, Euclidean
//! distance, deterministic for a given seed. Centroid math runs in f64
//! and is rounded to f32 once at the end so the in-memory codebook and
//! its file form are identical.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::descriptor::SnippetHistogram;
use crate::{Error, Result};

/// Maximum number of snippets used for training; larger pools are
/// subsampled uniformly with the run seed to bound memory.
pub const TRAINING_SAMPLE_CAP: usize = 200_000;

const MAX_ITERATIONS: usize = 100;
const MOVEMENT_TOLERANCE: f64 = 1e-4;

/// A trained snippet codebook.
#[derive(Debug, Clone)]
pub struct Codebook {
    pub k: usize,
    pub dim: usize,
    /// k * dim centroid block, row-major.
    pub centroids: Vec<f32>,
    /// Fingerprint of the descriptor parameters the training snippets
    /// were computed with.
    pub params_fingerprint: String,
    pub seed: u64,
}

impl Codebook {
    pub fn centroid(&self, index: usize) -> &[f32] {
        &self.centroids[index * self.dim..(index + 1) * self.dim]
    }

    /// Index of the nearest centroid; ties resolve to the lowest index.
    pub fn assign(&self, vector: &[f32]) -> Result<usize> {
        if vector.len() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: vector.len(),
            });
        }
        let mut best = 0usize;
        let mut best_d = f64::INFINITY;
        for c in 0..self.k {
            let d = sq_dist(self.centroid(c), vector);
            if d < best_d {
                best_d = d;
                best = c;
            }
        }
        Ok(best)
    }
}

/// Per-video bag-of-words encoding.
#[derive(Debug, Clone)]
pub struct BoWVector {
    pub clip_id: String,
    /// Snippet count per codeword; sums to the clip's snippet count.
    pub counts: Vec<u32>,
    /// L1-normalized counts, the feature handed to the classifier.
    pub normalized: Vec<f32>,
}

#[inline]
fn sq_dist(a: &[f32], b: &[f32]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    let mut acc = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        let d = (*x - *y) as f64;
        acc += d * d;
    }
    acc
}

fn sq_dist_f64(a: &[f64], b: &[f32]) -> f64 {
    let mut acc = 0.0f64;
    for (x, y) in a.iter().zip(b.iter()) {
        let d = *x - *y as f64;
        acc += d * d;
    }
    acc
}

/// Train a codebook on a sample of snippet histograms.
///
/// Requires at least `k` samples and finite inputs. Iterates until the
/// largest centroid movement drops below 1e-4 or 100 iterations. The
/// k-means objective is checked to be non-increasing across iterations.
pub fn train_codebook(
    histograms: &[SnippetHistogram],
    k: usize,
    seed: u64,
    params_fingerprint: &str,
) -> Result<Codebook> {
    if k < 2 {
        return Err(Error::InvalidParam(format!("k must be >= 2, got {k}")));
    }
    if histograms.len() < k {
        return Err(Error::TooFewSamples {
            need: k,
            got: histograms.len(),
        });
    }
    let dim = histograms[0].values.len();
    for h in histograms {
        if h.values.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: h.values.len(),
            });
        }
        if h.values.iter().any(|v| !v.is_finite()) {
            return Err(Error::NonFiniteInput);
        }
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    // Uniform subsample without replacement when the pool is oversized.
    let points: Vec<&[f32]> = if histograms.len() > TRAINING_SAMPLE_CAP {
        let mut indices: Vec<usize> = (0..histograms.len()).collect();
        for i in 0..TRAINING_SAMPLE_CAP {
            let j = rng.random_range(i..indices.len());
            indices.swap(i, j);
        }
        indices.truncate(TRAINING_SAMPLE_CAP);
        indices.sort_unstable();
        indices.iter().map(|&i| &histograms[i].values[..]).collect()
    } else {
        histograms.iter().map(|h| &h.values[..]).collect()
    };

    // k-means++ seeding.
    let mut centroids: Vec<Vec<f64>> = Vec::with_capacity(k);
    let first = rng.random_range(0..points.len());
    centroids.push(points[first].iter().map(|&v| v as f64).collect());
    let mut min_d: Vec<f64> = points
        .par_iter()
        .map(|p| sq_dist_f64(&centroids[0], p))
        .collect();
    while centroids.len() < k {
        let total: f64 = min_d.iter().sum();
        let next = if total > 0.0 {
            let mut target = rng.random_range(0.0..total);
            let mut chosen = points.len() - 1;
            for (i, &d) in min_d.iter().enumerate() {
                if target < d {
                    chosen = i;
                    break;
                }
                target -= d;
            }
            chosen
        } else {
            // All remaining mass at zero distance: degenerate duplicates;
            // pick uniformly.
            rng.random_range(0..points.len())
        };
        let c: Vec<f64> = points[next].iter().map(|&v| v as f64).collect();
        min_d
            .par_iter_mut()
            .zip(points.par_iter())
            .for_each(|(d, p)| {
                let nd = sq_dist_f64(&c, p);
                if nd < *d {
                    *d = nd;
                }
            });
        centroids.push(c);
    }

    // Lloyd iterations.
    let mut assignments = vec![0usize; points.len()];
    let mut prev_objective = f64::INFINITY;
    for _iter in 0..MAX_ITERATIONS {
        let assigned: Vec<(usize, f64)> = points
            .par_iter()
            .map(|p| {
                let mut best = 0usize;
                let mut best_d = f64::INFINITY;
                for (c, centroid) in centroids.iter().enumerate() {
                    let d = sq_dist_f64(centroid, p);
                    if d < best_d {
                        best_d = d;
                        best = c;
                    }
                }
                (best, best_d)
            })
            .collect();
        let objective: f64 = assigned.iter().map(|&(_, d)| d).sum();
        assert!(
            objective <= prev_objective + 1e-9 * prev_objective.abs().max(1.0),
            "k-means objective increased: {prev_objective} -> {objective}"
        );
        prev_objective = objective;
        for (slot, &(c, _)) in assignments.iter_mut().zip(assigned.iter()) {
            *slot = c;
        }

        // Sequential accumulation keeps the update deterministic.
        let mut sums = vec![vec![0.0f64; dim]; k];
        let mut counts = vec![0usize; k];
        for (p, &c) in points.iter().zip(assignments.iter()) {
            counts[c] += 1;
            for (s, &v) in sums[c].iter_mut().zip(p.iter()) {
                *s += v as f64;
            }
        }
        let mut movement = 0.0f64;
        for c in 0..k {
            if counts[c] == 0 {
                continue; // empty cluster keeps its centroid
            }
            let inv = 1.0 / counts[c] as f64;
            let mut dist = 0.0;
            for (s, old) in sums[c].iter().zip(centroids[c].iter()) {
                let new = s * inv;
                dist += (new - old) * (new - old);
            }
            movement = movement.max(dist.sqrt());
            for (old, s) in centroids[c].iter_mut().zip(sums[c].iter()) {
                *old = s * inv;
            }
        }
        if movement < MOVEMENT_TOLERANCE {
            break;
        }
    }

    let centroids: Vec<f32> = centroids
        .into_iter()
        .flat_map(|c| c.into_iter().map(|v| v as f32))
        .collect();
    Ok(Codebook {
        k,
        dim,
        centroids,
        params_fingerprint: params_fingerprint.to_string(),
        seed,
    })
}

/// Encode a clip's snippets against a codebook. Empty input is an error:
/// such a clip has no usable motion evidence and must be flagged upstream.
pub fn encode_bow(snippets: &[SnippetHistogram], codebook: &Codebook) -> Result<BoWVector> {
    let Some(first) = snippets.first() else {
        return Err(Error::EmptyInput);
    };
    let mut counts = vec![0u32; codebook.k];
    for s in snippets {
        counts[codebook.assign(&s.values)?] += 1;
    }
    let total: u32 = counts.iter().sum();
    debug_assert_eq!(total as usize, snippets.len());
    let normalized = counts
        .iter()
        .map(|&c| c as f32 / total as f32)
        .collect();
    Ok(BoWVector {
        clip_id: first.clip_id.clone(),
        counts,
        normalized,
    })
}

#[derive(Debug, Serialize, Deserialize)]
struct CodebookHeader {
    k: usize,
    dim: usize,
    seed: u64,
    params_fingerprint: String,
}

const CODEBOOK_MAGIC: &[u8; 8] = b"SNIPCBK1";

/// Write a codebook: magic, u32 header length, JSON header, then the
/// little-endian f32 centroid block.
pub fn write_codebook(path: &Path, codebook: &Codebook) -> Result<()> {
    let header = serde_json::to_vec(&CodebookHeader {
        k: codebook.k,
        dim: codebook.dim,
        seed: codebook.seed,
        params_fingerprint: codebook.params_fingerprint.clone(),
    })?;
    let mut buf = Vec::with_capacity(16 + header.len() + 4 * codebook.centroids.len());
    buf.extend_from_slice(CODEBOOK_MAGIC);
    buf.extend_from_slice(&(header.len() as u32).to_le_bytes());
    buf.extend_from_slice(&header);
    for v in &codebook.centroids {
        buf.extend_from_slice(&v.to_le_bytes());
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&buf).map_err(|e| Error::io(path, e))
}

/// Read a codebook written by [`write_codebook`].
pub fn read_codebook(path: &Path) -> Result<Codebook> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    let bad = |reason: &str| Error::BadCacheFile {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < 12 || &bytes[0..8] != CODEBOOK_MAGIC {
        return Err(bad("bad magic"));
    }
    let hlen = u32::from_le_bytes(bytes[8..12].try_into().unwrap()) as usize;
    if bytes.len() < 12 + hlen {
        return Err(bad("truncated header"));
    }
    let header: CodebookHeader = serde_json::from_slice(&bytes[12..12 + hlen])?;
    let block = &bytes[12 + hlen..];
    if block.len() != 4 * header.k * header.dim {
        return Err(bad("centroid block size mismatch"));
    }
    let centroids = block
        .chunks_exact(4)
        .map(|c| f32::from_le_bytes(c.try_into().unwrap()))
        .collect();
    Ok(Codebook {
        k: header.k,
        dim: header.dim,
        centroids,
        params_fingerprint: header.params_fingerprint,
        seed: header.seed,
    })
}
