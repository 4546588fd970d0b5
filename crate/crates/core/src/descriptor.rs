//! Per-trajectory motion features and the snippet histogram descriptor.
//!
//! A trajectory contributes three scalars: its length (the summed step
//! lengths, a velocity proxy), and its positional variance along x and y
//! (the spatial extension of the motion). A snippet, a short temporal
//! window specified in seconds and centered at a frame, aggregates the
//! trajectories ending inside the window into 8-bin histograms of those
//! three scalars, one histogram per cell of an NxN spatial grid over the
//! frame, selected by the trajectory's mean position.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::track::Trajectory;
use crate::{Error, Result};

/// Scalar motion features of one trajectory.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TrajectoryFeatures {
    /// Mean x position (px).
    pub mean_x: f64,
    /// Mean y position (px).
    pub mean_y: f64,
    /// Population variance of x (px^2).
    pub var_x: f64,
    /// Population variance of y (px^2).
    pub var_y: f64,
    /// Sum of consecutive step lengths (px).
    pub length: f64,
}

/// Number of histogram bins per feature channel.
pub const BINS: usize = 8;

/// Histogram channels: length, x variance, y variance.
pub const CHANNELS: usize = 3;

/// Snippet descriptor parameters.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DescriptorParams {
    /// Spatial grid divisions per axis.
    pub grid_n: u32,
    /// Snippet duration in seconds.
    pub snippet_seconds: f64,
    /// Sliding-window stride in frames.
    pub stride_frames: u32,
    /// Interior bin edges for trajectory length, normalized by the frame
    /// diagonal; 7 ascending values giving 8 bins with an overflow top.
    pub bin_edges_l: [f64; BINS - 1],
    /// Interior bin edges for the variances, normalized by the squared
    /// frame diagonal.
    pub bin_edges_v: [f64; BINS - 1],
}

/// Geometric interior edges; motion magnitudes are heavy-tailed and the
/// normalization keeps the binning resolution-invariant.
const DEFAULT_EDGES: [f64; BINS - 1] = [1e-4, 2.5e-4, 6.3e-4, 1.6e-3, 4e-3, 1e-2, 2.5e-2];

impl Default for DescriptorParams {
    fn default() -> Self {
        DescriptorParams {
            grid_n: 2,
            snippet_seconds: 1.0,
            stride_frames: 1,
            bin_edges_l: DEFAULT_EDGES,
            bin_edges_v: DEFAULT_EDGES,
        }
    }
}

impl DescriptorParams {
    pub fn validate(&self) -> Result<()> {
        if self.grid_n < 1 {
            return Err(Error::InvalidParam("grid_n must be >= 1".into()));
        }
        if !(self.snippet_seconds > 0.0) {
            return Err(Error::InvalidParam("snippet_seconds must be > 0".into()));
        }
        if self.stride_frames < 1 {
            return Err(Error::InvalidParam("stride_frames must be >= 1".into()));
        }
        for edges in [&self.bin_edges_l, &self.bin_edges_v] {
            let ascending = edges.windows(2).all(|w| w[0] < w[1]);
            if !ascending || edges[0] < 0.0 {
                return Err(Error::InvalidParam(
                    "bin edges must be nonnegative and strictly ascending".into(),
                ));
            }
        }
        Ok(())
    }

    /// Descriptor dimensionality: bins x channels x grid cells.
    pub fn dim(&self) -> usize {
        BINS * CHANNELS * (self.grid_n as usize).pow(2)
    }
}

/// The aggregated descriptor of one snippet.
#[derive(Debug, Clone, PartialEq)]
pub struct SnippetHistogram {
    pub clip_id: String,
    pub center_frame: u32,
    /// Concatenation (length block, x-variance block, y-variance block),
    /// each block ordered by grid cell, each cell 8 bins.
    pub values: Vec<f32>,
}

impl SnippetHistogram {
    pub fn total_mass(&self) -> f64 {
        self.values.iter().map(|&v| v as f64).sum()
    }
}

/// Compute mean position, positional variances and length of a trajectory.
pub fn trajectory_features(traj: &Trajectory) -> TrajectoryFeatures {
    let pts = &traj.points;
    debug_assert!(pts.len() >= 2);
    let n = pts.len() as f64;
    let mean_x = pts.iter().map(|p| p.x as f64).sum::<f64>() / n;
    let mean_y = pts.iter().map(|p| p.y as f64).sum::<f64>() / n;
    let var_x = pts
        .iter()
        .map(|p| (p.x as f64 - mean_x).powi(2))
        .sum::<f64>()
        / n;
    let var_y = pts
        .iter()
        .map(|p| (p.y as f64 - mean_y).powi(2))
        .sum::<f64>()
        / n;
    let length = pts
        .windows(2)
        .map(|w| {
            let dx = (w[1].x - w[0].x) as f64;
            let dy = (w[1].y - w[0].y) as f64;
            (dx * dx + dy * dy).sqrt()
        })
        .sum();
    TrajectoryFeatures {
        mean_x,
        mean_y,
        var_x,
        var_y,
        length,
    }
}

/// Map a snippet duration in seconds to frames: round half up, minimum 2.
/// Seconds are the temporal unit because clips may have different frame
/// rates.
pub fn snippet_frames(snippet_seconds: f64, fps: f64) -> Result<u32> {
    if fps <= 0.0 || !fps.is_finite() {
        return Err(Error::InvalidFps(fps));
    }
    Ok((((snippet_seconds * fps) + 0.5).floor() as u32).max(2))
}

/// Bin index for a value given ascending interior edges: the count of
/// edges <= value, so a value exactly on an edge lands in the upper bin
/// and anything past the last edge lands in the overflow bin.
fn bin_index(value: f64, edges: &[f64; BINS - 1]) -> usize {
    edges.iter().take_while(|&&e| value >= e).count()
}

/// Grid cell index of a center position. A center exactly on an interior
/// boundary belongs to the higher-index cell; x = width or y = height
/// clamps into the last cell.
fn cell_index(mean_x: f64, mean_y: f64, width: u32, height: u32, n: u32) -> usize {
    let cw = width as f64 / n as f64;
    let ch = height as f64 / n as f64;
    let col = ((mean_x / cw).floor() as i64).clamp(0, n as i64 - 1) as usize;
    let row = ((mean_y / ch).floor() as i64).clamp(0, n as i64 - 1) as usize;
    row * n as usize + col
}

/// A trajectory paired with its precomputed features.
#[derive(Debug, Clone)]
pub struct FeaturedTrajectory {
    pub end_frame: u32,
    pub features: TrajectoryFeatures,
}

impl FeaturedTrajectory {
    pub fn from_trajectory(traj: &Trajectory) -> Self {
        FeaturedTrajectory {
            end_frame: traj.end_frame(),
            features: trajectory_features(traj),
        }
    }
}

/// Build the histogram for the snippet centered at `center_frame`.
///
/// A trajectory contributes when its end frame lies within half a snippet
/// (integer floor) of the center; it adds one count to the length,
/// x-variance and y-variance histograms of its grid cell, so total mass
/// is three times the number of contributing trajectories.
pub fn snippet_histogram(
    clip_id: &str,
    trajectories: &[FeaturedTrajectory],
    center_frame: u32,
    snippet_len: u32,
    width: u32,
    height: u32,
    params: &DescriptorParams,
) -> SnippetHistogram {
    let n = params.grid_n;
    let cells = (n as usize).pow(2);
    let mut values = vec![0.0f32; params.dim()];
    let half = (snippet_len / 2) as i64;
    let diag = ((width as f64).powi(2) + (height as f64).powi(2)).sqrt();
    let diag_sq = diag * diag;

    for ft in trajectories {
        let t_end = ft.end_frame as i64;
        if t_end < center_frame as i64 - half || t_end > center_frame as i64 + half {
            continue;
        }
        let f = &ft.features;
        let cell = cell_index(f.mean_x, f.mean_y, width, height, n);
        let bin_l = bin_index(f.length / diag, &params.bin_edges_l);
        let bin_vx = bin_index(f.var_x / diag_sq, &params.bin_edges_v);
        let bin_vy = bin_index(f.var_y / diag_sq, &params.bin_edges_v);
        values[cell * BINS + bin_l] += 1.0;
        values[(cells + cell) * BINS + bin_vx] += 1.0;
        values[(2 * cells + cell) * BINS + bin_vy] += 1.0;
    }
    SnippetHistogram {
        clip_id: clip_id.to_string(),
        center_frame,
        values,
    }
}

/// Slide a snippet window across a clip, one histogram per valid center
/// at the configured stride. Valid centers run from ceil(len/2) to
/// V - ceil(len/2) - 1; a clip shorter than one snippet yields nothing.
pub fn sliding_snippets(
    clip_id: &str,
    trajectories: &[FeaturedTrajectory],
    video_frames: u32,
    fps: f64,
    width: u32,
    height: u32,
    params: &DescriptorParams,
) -> Result<Vec<SnippetHistogram>> {
    params.validate()?;
    let len = snippet_frames(params.snippet_seconds, fps)?;
    if video_frames < len {
        log::warn!(
            "clip {clip_id}: {video_frames} frames shorter than one {len}-frame snippet, no descriptors"
        );
        return Ok(Vec::new());
    }
    let first = len.div_ceil(2);
    let last = video_frames - len.div_ceil(2) - 1;
    let mut out = Vec::new();
    let mut center = first;
    while center <= last {
        out.push(snippet_histogram(
            clip_id,
            trajectories,
            center,
            len,
            width,
            height,
            params,
        ));
        center += params.stride_frames;
    }
    Ok(out)
}

/// Header stored alongside a descriptor cache.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DescriptorCacheHeader {
    pub params: DescriptorParams,
    pub fingerprint: String,
}

/// Write per-clip descriptors as a record stream of
/// (center: u32, dim: u32, dim x f32), little-endian.
pub fn write_descriptors(path: &Path, snippets: &[SnippetHistogram]) -> Result<()> {
    let mut buf = Vec::new();
    for s in snippets {
        buf.extend_from_slice(&s.center_frame.to_le_bytes());
        buf.extend_from_slice(&(s.values.len() as u32).to_le_bytes());
        for v in &s.values {
            buf.extend_from_slice(&v.to_le_bytes());
        }
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&buf).map_err(|e| Error::io(path, e))
}

/// Read a descriptor cache written by [`write_descriptors`].
pub fn read_descriptors(path: &Path, clip_id: &str) -> Result<Vec<SnippetHistogram>> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    let bad = |reason: String| Error::BadCacheFile {
        path: path.to_path_buf(),
        reason,
    };
    let mut out = Vec::new();
    let mut pos = 0usize;
    while pos < bytes.len() {
        if pos + 8 > bytes.len() {
            return Err(bad("truncated record header".into()));
        }
        let center = u32::from_le_bytes(bytes[pos..pos + 4].try_into().unwrap());
        let dim = u32::from_le_bytes(bytes[pos + 4..pos + 8].try_into().unwrap()) as usize;
        pos += 8;
        if pos + 4 * dim > bytes.len() {
            return Err(bad(format!("truncated record body at center {center}")));
        }
        let values = (0..dim)
            .map(|i| f32::from_le_bytes(bytes[pos + 4 * i..pos + 4 * i + 4].try_into().unwrap()))
            .collect();
        pos += 4 * dim;
        out.push(SnippetHistogram {
            clip_id: clip_id.to_string(),
            center_frame: center,
            values,
        });
    }
    Ok(out)
}
