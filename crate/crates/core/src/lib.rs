//! Motion analysis of short video snippets built on densely tracked
//! trajectories.
//!
//! The pipeline runs in stages, one module per stage:
//!
//! 1. [`media`] — frame ingestion, dataset manifests and a deterministic
//!    synthetic clip generator used by every test.
//! 2. [`flow`] — dense two-frame optical flow (polynomial expansion) plus
//!    median filtering of the flow field.
//! 3. [`track`] — dense multi-scale point sampling and short trajectory
//!    tracking through the filtered flow.
//! 4. [`descriptor`] — per-trajectory motion features and the snippet
//!    histogram descriptor computed over a sliding temporal window.
//! 5. [`codebook`] — k-means vector quantization of snippet histograms and
//!    per-video bag-of-words encoding.
//! 6. [`classify`] — linear SVM training/prediction, including the
//!    single-positive exemplar variant.
//! 7. [`discover`] — mining of discriminative snippet models ("snapshots")
//!    that localize where unusualness happens.
//! 8. [`evalkit`] — accuracy and firing-percentage metrics plus grid
//!    experiment orchestration.

pub mod classify;
pub mod codebook;
pub mod descriptor;
pub mod discover;
pub mod evalkit;
pub mod flow;
mod imageops;
pub mod media;
pub mod track;

use std::path::PathBuf;

/// Crate-wide error type.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error("image decode error on {path}: {source}")]
    Image {
        path: PathBuf,
        #[source]
        source: image::ImageError,
    },
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
    #[error("frame file missing: {0}")]
    MissingFrame(PathBuf),
    #[error("frame dimension mismatch: expected {expected_w}x{expected_h}, frame {index} is {got_w}x{got_h}")]
    FrameDimensionMismatch {
        index: usize,
        expected_w: u32,
        expected_h: u32,
        got_w: u32,
        got_h: u32,
    },
    #[error("not an 8-bit grayscale image: {0}")]
    NotGrayscale(PathBuf),
    #[error("invalid fps {0} (must be > 0)")]
    InvalidFps(f64),
    #[error("duplicate clip id in manifest: {0}")]
    DuplicateClipId(String),
    #[error("clip too short: {frames} frames, need at least {min}")]
    ClipTooShort { frames: u32, min: u32 },
    #[error("invalid parameter: {0}")]
    InvalidParam(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("point ({x}, {y}) out of bounds for {w}x{h} frame")]
    PointOutOfBounds { x: f64, y: f64, w: u32, h: u32 },
    #[error("need at least {need} samples, got {got}")]
    TooFewSamples { need: usize, got: usize },
    #[error("non-finite value in input data")]
    NonFiniteInput,
    #[error("empty input")]
    EmptyInput,
    #[error("training data contains a single class only")]
    SingleClass,
    #[error("need at least {need} negatives, got {got}")]
    TooFewNegatives { need: usize, got: usize },
    #[error("descriptor fingerprint mismatch: expected {expected}, got {got}")]
    FingerprintMismatch { expected: String, got: String },
    #[error("bad cache file {path}: {reason}")]
    BadCacheFile { path: PathBuf, reason: String },
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Short hex fingerprint of any serializable parameter block. Used to key
/// cache files and to detect stage/config mismatches.
pub fn fingerprint<T: serde::Serialize>(value: &T) -> String {
    use sha2::Digest;
    let json = serde_json::to_vec(value).expect("fingerprint serialization");
    let digest = sha2::Sha256::digest(&json);
    let mut out = String::with_capacity(16);
    for byte in digest.iter().take(8) {
        use std::fmt::Write;
        write!(out, "{byte:02x}").unwrap();
    }
    out
}
