//! Frame-sequence ingestion, dataset manifests and the synthetic clip
//! generator used throughout the test suites.
//!
//! Clips are sequences of 8-bit grayscale frames stored as individual
//! files (binary PGM or grayscale PNG) addressed by a printf-style index
//! pattern, e.g. `clips/a01/f%05d.pgm`. Video-container decoding is out
//! of scope.

use std::fs;
use std::io::Read;
use std::path::{Path, PathBuf};

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::{Error, Result};

/// Minimum frame edge length.
pub const MIN_FRAME_DIM: u32 = 16;

/// A single 8-bit grayscale frame, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Frame {
    width: u32,
    height: u32,
    data: Vec<u8>,
}

impl Frame {
    pub fn new(width: u32, height: u32, data: Vec<u8>) -> Result<Self> {
        if data.len() != (width as usize) * (height as usize) {
            return Err(Error::DimensionMismatch {
                expected: (width as usize) * (height as usize),
                got: data.len(),
            });
        }
        Ok(Frame {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> u32 {
        self.width
    }

    pub fn height(&self) -> u32 {
        self.height
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    #[inline]
    pub fn get(&self, x: u32, y: u32) -> u8 {
        self.data[(y * self.width + x) as usize]
    }

    /// True when every pixel carries the same intensity.
    pub fn is_constant(&self) -> bool {
        self.data.windows(2).all(|w| w[0] == w[1])
    }
}

/// Video-level weak label.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Label {
    Usual,
    Unusual,
    Unlabeled,
}

/// Dataset split assignment.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Validation,
    Test,
}

/// An in-memory clip: ordered frames plus video-level metadata. Labels are
/// weak: they say nothing about which frames contain the labeled behavior.
#[derive(Debug, Clone)]
pub struct VideoClip {
    pub id: String,
    pub frames: Vec<Frame>,
    pub fps: f64,
    pub label: Label,
    pub split: Split,
}

impl VideoClip {
    pub fn new(
        id: impl Into<String>,
        frames: Vec<Frame>,
        fps: f64,
        label: Label,
        split: Split,
    ) -> Result<Self> {
        if fps <= 0.0 || !fps.is_finite() {
            return Err(Error::InvalidFps(fps));
        }
        if frames.is_empty() {
            return Err(Error::ClipTooShort { frames: 0, min: 1 });
        }
        let (w, h) = (frames[0].width, frames[0].height);
        if w < MIN_FRAME_DIM || h < MIN_FRAME_DIM {
            return Err(Error::InvalidParam(format!(
                "frame size {w}x{h} below minimum {MIN_FRAME_DIM}"
            )));
        }
        for (i, f) in frames.iter().enumerate() {
            if f.width != w || f.height != h {
                return Err(Error::FrameDimensionMismatch {
                    index: i,
                    expected_w: w,
                    expected_h: h,
                    got_w: f.width,
                    got_h: f.height,
                });
            }
        }
        Ok(VideoClip {
            id: id.into(),
            frames,
            fps,
            label,
            split,
        })
    }

    pub fn width(&self) -> u32 {
        self.frames[0].width
    }

    pub fn height(&self) -> u32 {
        self.frames[0].height
    }

    /// Frame count V.
    pub fn len(&self) -> u32 {
        self.frames.len() as u32
    }

    pub fn is_empty(&self) -> bool {
        self.frames.is_empty()
    }
}

/// One manifest row describing where a clip's frames live.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ManifestEntry {
    pub id: String,
    /// printf-style frame path pattern (`%d` / `%0Nd`), relative to the
    /// manifest file unless absolute.
    pub pattern: String,
    pub fps: f64,
    pub label: Label,
    pub split: Split,
}

/// Dataset manifest: a JSON array of [`ManifestEntry`].
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct DatasetManifest {
    pub clips: Vec<ManifestEntry>,
}

impl DatasetManifest {
    pub fn load(path: &Path) -> Result<Self> {
        let bytes = fs::read(path).map_err(|e| Error::io(path, e))?;
        let manifest: DatasetManifest = serde_json::from_slice(&bytes)?;
        manifest.validate()?;
        Ok(manifest)
    }

    pub fn save(&self, path: &Path) -> Result<()> {
        self.validate()?;
        let json = serde_json::to_vec_pretty(self)?;
        fs::write(path, json).map_err(|e| Error::io(path, e))
    }

    fn validate(&self) -> Result<()> {
        let mut seen = std::collections::HashSet::new();
        for entry in &self.clips {
            if !seen.insert(entry.id.as_str()) {
                return Err(Error::DuplicateClipId(entry.id.clone()));
            }
            if entry.fps <= 0.0 || !entry.fps.is_finite() {
                return Err(Error::InvalidFps(entry.fps));
            }
        }
        Ok(())
    }
}

/// Expand a printf-style `%d` / `%0Nd` pattern with a frame index.
pub fn expand_pattern(pattern: &str, index: u32) -> String {
    let mut out = String::with_capacity(pattern.len() + 8);
    let mut chars = pattern.chars().peekable();
    while let Some(c) = chars.next() {
        if c != '%' {
            out.push(c);
            continue;
        }
        match chars.peek() {
            Some('%') => {
                chars.next();
                out.push('%');
            }
            _ => {
                let mut width = String::new();
                while let Some(&d) = chars.peek() {
                    if d.is_ascii_digit() {
                        width.push(d);
                        chars.next();
                    } else {
                        break;
                    }
                }
                match chars.next() {
                    Some('d') => {
                        let pad: usize = width.trim_start_matches('0').parse().unwrap_or(0);
                        out.push_str(&format!("{index:0pad$}"));
                    }
                    other => {
                        // Not a conversion we understand; emit verbatim.
                        out.push('%');
                        out.push_str(&width);
                        if let Some(o) = other {
                            out.push(o);
                        }
                    }
                }
            }
        }
    }
    out
}

/// Read a binary (P5) PGM file with maxval 255.
pub fn read_pgm(path: &Path) -> Result<Frame> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    let bad = |reason: &str| Error::BadCacheFile {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };

    // Header tokens: magic, width, height, maxval; '#' starts a comment.
    let mut pos = 0usize;
    let mut token = |bytes: &[u8]| -> Option<String> {
        while pos < bytes.len() {
            let b = bytes[pos];
            if b == b'#' {
                while pos < bytes.len() && bytes[pos] != b'\n' {
                    pos += 1;
                }
            } else if b.is_ascii_whitespace() {
                pos += 1;
            } else {
                break;
            }
        }
        let start = pos;
        while pos < bytes.len() && !bytes[pos].is_ascii_whitespace() {
            pos += 1;
        }
        if pos > start {
            Some(String::from_utf8_lossy(&bytes[start..pos]).into_owned())
        } else {
            None
        }
    };

    if token(&bytes).as_deref() != Some("P5") {
        return Err(bad("not a P5 pgm"));
    }
    let width: u32 = token(&bytes)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad("bad width"))?;
    let height: u32 = token(&bytes)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad("bad height"))?;
    let maxval: u32 = token(&bytes)
        .and_then(|t| t.parse().ok())
        .ok_or_else(|| bad("bad maxval"))?;
    if maxval != 255 {
        return Err(bad("only maxval 255 supported"));
    }
    // Exactly one whitespace byte separates maxval from pixel data.
    pos += 1;
    let need = (width as usize) * (height as usize);
    if bytes.len() < pos + need {
        return Err(bad("truncated pixel data"));
    }
    Frame::new(width, height, bytes[pos..pos + need].to_vec())
}

/// Write a binary (P5) PGM file.
pub fn write_pgm(path: &Path, frame: &Frame) -> Result<()> {
    let mut out = format!("P5\n{} {}\n255\n", frame.width, frame.height).into_bytes();
    out.extend_from_slice(&frame.data);
    fs::write(path, out).map_err(|e| Error::io(path, e))
}

fn read_png(path: &Path) -> Result<Frame> {
    let img = image::open(path).map_err(|e| Error::Image {
        path: path.to_path_buf(),
        source: e,
    })?;
    match img {
        image::DynamicImage::ImageLuma8(gray) => {
            Frame::new(gray.width(), gray.height(), gray.into_raw())
        }
        _ => Err(Error::NotGrayscale(path.to_path_buf())),
    }
}

/// Write a frame as an 8-bit grayscale PNG.
pub fn write_png(path: &Path, frame: &Frame) -> Result<()> {
    let img = image::GrayImage::from_raw(frame.width, frame.height, frame.data.clone())
        .expect("frame invariant");
    img.save(path).map_err(|e| Error::Image {
        path: path.to_path_buf(),
        source: e,
    })
}

/// Read one frame file, dispatching on extension (`.pgm` or `.png`).
pub fn read_frame(path: &Path) -> Result<Frame> {
    match path.extension().and_then(|e| e.to_str()) {
        Some("pgm") => read_pgm(path),
        Some("png") => read_png(path),
        _ => Err(Error::BadCacheFile {
            path: path.to_path_buf(),
            reason: "unsupported frame extension (use .pgm or .png)".into(),
        }),
    }
}

/// Load a clip described by a manifest entry. Frame files are read at
/// indices 0, 1, 2, ... until the first missing index; at least the
/// index-0 frame must exist.
pub fn load_clip(entry: &ManifestEntry, base_dir: &Path) -> Result<VideoClip> {
    if entry.fps <= 0.0 || !entry.fps.is_finite() {
        return Err(Error::InvalidFps(entry.fps));
    }
    let mut frames = Vec::new();
    for index in 0u32.. {
        let rel = expand_pattern(&entry.pattern, index);
        let path = if Path::new(&rel).is_absolute() {
            PathBuf::from(rel)
        } else {
            base_dir.join(rel)
        };
        if !path.exists() {
            if index == 0 {
                return Err(Error::MissingFrame(path));
            }
            break;
        }
        let frame = read_frame(&path)?;
        if let Some(first) = frames.first() {
            let first: &Frame = first;
            if frame.width != first.width || frame.height != first.height {
                return Err(Error::FrameDimensionMismatch {
                    index: index as usize,
                    expected_w: first.width,
                    expected_h: first.height,
                    got_w: frame.width,
                    got_h: frame.height,
                });
            }
        }
        frames.push(frame);
    }
    VideoClip::new(&entry.id, frames, entry.fps, entry.label, entry.split)
}

/// Kind of synthetic clip.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SynthKind {
    /// Textured blobs drifting at a constant low speed (<= 1.5 px/frame).
    Smooth,
    /// Same blobs, plus a short high-speed shake (>= 6 px/frame) over a
    /// ~0.5 s window.
    Jolt,
}

/// Ground-truth sidecar for a synthetic clip.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SynthMeta {
    pub id: String,
    pub kind: SynthKind,
    pub jolt_start_frame: Option<u32>,
    pub jolt_end_frame: Option<u32>,
}

impl SynthMeta {
    pub fn jolt_center(&self) -> Option<u32> {
        match (self.jolt_start_frame, self.jolt_end_frame) {
            (Some(a), Some(b)) => Some((a + b) / 2),
            _ => None,
        }
    }
}

struct Blob {
    radius: f64,
    x: f64,
    y: f64,
    vx: f64,
    vy: f64,
    y_min: f64,
    y_max: f64,
    tex: Vec<f32>,
    tex_size: usize,
}

impl Blob {
    /// Texture value at a blob-local offset, bilinear.
    fn tex_at(&self, dx: f64, dy: f64) -> f32 {
        let half = self.tex_size as f64 / 2.0;
        let tx = (dx + half).clamp(0.0, (self.tex_size - 1) as f64);
        let ty = (dy + half).clamp(0.0, (self.tex_size - 1) as f64);
        let x0 = tx.floor() as usize;
        let y0 = ty.floor() as usize;
        let x1 = (x0 + 1).min(self.tex_size - 1);
        let y1 = (y0 + 1).min(self.tex_size - 1);
        let fx = (tx - x0 as f64) as f32;
        let fy = (ty - y0 as f64) as f32;
        let n = self.tex_size;
        let top = self.tex[y0 * n + x0] * (1.0 - fx) + self.tex[y0 * n + x1] * fx;
        let bot = self.tex[y1 * n + x0] * (1.0 - fx) + self.tex[y1 * n + x1] * fx;
        top * (1.0 - fy) + bot * fy
    }
}

/// Smoothed per-cell noise in [-1, 1], used for blob and background texture.
fn noise_grid(rng: &mut ChaCha8Rng, n: usize, smooth_passes: usize) -> Vec<f32> {
    let mut g: Vec<f32> = (0..n * n).map(|_| rng.random_range(-1.0f32..1.0)).collect();
    for _ in 0..smooth_passes {
        let mut out = vec![0.0f32; n * n];
        for y in 0..n {
            for x in 0..n {
                let mut acc = 0.0;
                let mut cnt = 0.0;
                for dy in -1i32..=1 {
                    for dx in -1i32..=1 {
                        let xx = x as i32 + dx;
                        let yy = y as i32 + dy;
                        if xx >= 0 && yy >= 0 && (xx as usize) < n && (yy as usize) < n {
                            acc += g[yy as usize * n + xx as usize];
                            cnt += 1.0;
                        }
                    }
                }
                out[y * n + x] = acc / cnt;
            }
        }
        g = out;
    }
    g
}

const JOLT_SECONDS: f64 = 0.5;

/// Frame count of the jolt window at a given fps.
pub fn jolt_window_frames(fps: f64) -> u32 {
    ((JOLT_SECONDS * fps + 0.5).floor() as u32).max(2)
}

/// Generate a synthetic clip. Pure function of its arguments: identical
/// inputs produce bit-identical frames. `Smooth` and `Jolt` with the same
/// seed render the same blobs; only the jolt window differs.
pub fn synth_clip(
    kind: SynthKind,
    seed: u64,
    v: u32,
    w: u32,
    h: u32,
    fps: f64,
) -> Result<(VideoClip, SynthMeta)> {
    if fps <= 0.0 || !fps.is_finite() {
        return Err(Error::InvalidFps(fps));
    }
    if w < MIN_FRAME_DIM || h < MIN_FRAME_DIM {
        return Err(Error::InvalidParam(format!(
            "frame size {w}x{h} below minimum {MIN_FRAME_DIM}"
        )));
    }
    if v < 2 {
        return Err(Error::ClipTooShort { frames: v, min: 2 });
    }
    let jolt_len = jolt_window_frames(fps);
    if kind == SynthKind::Jolt && v < 2 * jolt_len + 2 {
        return Err(Error::ClipTooShort {
            frames: v,
            min: 2 * jolt_len + 2,
        });
    }

    // Base RNG drives everything both kinds share.
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let background = noise_grid(&mut rng, w.max(h) as usize, 2);

    let n_blobs = 2usize;
    let band_h = h as f64 / n_blobs as f64;
    let mut blobs = Vec::with_capacity(n_blobs);
    for b in 0..n_blobs {
        let radius = rng.random_range(9.0..13.0);
        let margin = radius + 3.0;
        let y_min = b as f64 * band_h + margin;
        let y_max = (b as f64 + 1.0) * band_h - margin;
        let x = rng.random_range(margin..(w as f64 - margin));
        let y = rng.random_range(y_min..y_max.max(y_min + 1e-6));
        let speed = rng.random_range(0.6..1.1);
        let theta = rng.random_range(0.0..std::f64::consts::TAU);
        let tex_size = (radius as usize + 4) * 2;
        let tex = noise_grid(&mut rng, tex_size, 1);
        blobs.push(Blob {
            radius,
            x,
            y,
            vx: speed * theta.cos(),
            vy: speed * theta.sin(),
            y_min,
            y_max,
            tex,
            tex_size,
        });
    }

    // Jolt parameters come from a separate stream so smooth/jolt share the
    // base scene exactly.
    let mut jolt_rng = ChaCha8Rng::seed_from_u64(seed ^ 0x4a4f_4c54);
    let jolt_theta = jolt_rng.random_range(0.0..std::f64::consts::TAU);
    let jolt_amp = jolt_rng.random_range(6.5..8.5);
    let lo = jolt_len;
    let hi = v - jolt_len - 1;
    let jolt_center = if hi > lo {
        jolt_rng.random_range(lo..hi)
    } else {
        lo
    };
    let jolt_start = jolt_center - jolt_len / 2;
    let jolt_end = jolt_start + jolt_len - 1;

    let mut frames = Vec::with_capacity(v as usize);
    // Walk blob positions frame by frame; jolt adds an alternating offset
    // along a fixed direction, so speed in the window is jolt_amp px/frame
    // while the blob stays near its base path.
    let mut state: Vec<(f64, f64, f64, f64)> =
        blobs.iter().map(|b| (b.x, b.y, b.vx, b.vy)).collect();
    for t in 0..v {
        let mut offset = (0.0f64, 0.0f64);
        if kind == SynthKind::Jolt && t >= jolt_start && t <= jolt_end {
            let k = t - jolt_start;
            let a = if k % 2 == 0 {
                jolt_amp / 2.0
            } else {
                -jolt_amp / 2.0
            };
            offset = (a * jolt_theta.cos(), a * jolt_theta.sin());
        }

        let mut canvas = vec![0.0f32; (w * h) as usize];
        let n = w.max(h) as usize;
        for y in 0..h as usize {
            for x in 0..w as usize {
                canvas[y * w as usize + x] = 96.0 + 18.0 * background[y * n + x];
            }
        }
        for (bi, blob) in blobs.iter().enumerate() {
            let cx = state[bi].0 + offset.0;
            let cy = state[bi].1 + offset.1;
            let r = blob.radius;
            let x0 = ((cx - r - 1.0).floor().max(0.0)) as usize;
            let x1 = ((cx + r + 1.0).ceil().min(w as f64 - 1.0)) as usize;
            let y0 = ((cy - r - 1.0).floor().max(0.0)) as usize;
            let y1 = ((cy + r + 1.0).ceil().min(h as f64 - 1.0)) as usize;
            for py in y0..=y1 {
                for px in x0..=x1 {
                    let dx = px as f64 - cx;
                    let dy = py as f64 - cy;
                    let dist = (dx * dx + dy * dy).sqrt();
                    let coverage = (r - dist + 0.5).clamp(0.0, 1.0) as f32;
                    if coverage > 0.0 {
                        let val = 168.0 + 60.0 * blob.tex_at(dx, dy);
                        let idx = py * w as usize + px;
                        canvas[idx] = canvas[idx] * (1.0 - coverage) + val * coverage;
                    }
                }
            }
        }
        let data = canvas
            .iter()
            .map(|&p| p.round().clamp(0.0, 255.0) as u8)
            .collect();
        frames.push(Frame::new(w, h, data)?);

        // Advance base positions, bouncing inside each blob's band so the
        // speed stays constant: the bounce reflects the velocity.
        for (bi, blob) in blobs.iter().enumerate() {
            let margin = blob.radius + 3.0;
            let (x, y, vx, vy) = state[bi];
            let (x, vx) = reflect(x + vx, vx, margin, w as f64 - margin);
            let (y, vy) = reflect(y + vy, vy, blob.y_min, blob.y_max);
            state[bi] = (x, y, vx, vy);
        }
    }

    let label = match kind {
        SynthKind::Smooth => Label::Usual,
        SynthKind::Jolt => Label::Unusual,
    };
    let id = format!(
        "{}_{seed:04}",
        match kind {
            SynthKind::Smooth => "smooth",
            SynthKind::Jolt => "jolt",
        }
    );
    let clip = VideoClip::new(&id, frames, fps, label, Split::Train)?;
    let meta = SynthMeta {
        id,
        kind,
        jolt_start_frame: (kind == SynthKind::Jolt).then_some(jolt_start),
        jolt_end_frame: (kind == SynthKind::Jolt).then_some(jolt_end),
    };
    Ok((clip, meta))
}

/// Reflect a coordinate into [lo, hi], flipping the velocity on each
/// bounce so per-frame displacement magnitude is preserved.
fn reflect(mut x: f64, mut v: f64, lo: f64, hi: f64) -> (f64, f64) {
    if hi <= lo {
        return (lo.min(hi), v);
    }
    // At most a couple of iterations for sane velocities.
    while x < lo || x > hi {
        if x < lo {
            x = lo + (lo - x);
        } else {
            x = hi - (x - hi);
        }
        v = -v;
    }
    (x, v)
}

/// A full-frame periodic texture translating at a constant velocity with
/// wrap-around. Every pixel moves at exactly `velocity` px/frame, which
/// makes the clip a ground-truth fixture for flow and tracking tests.
pub fn translating_noise_clip(
    seed: u64,
    v: u32,
    w: u32,
    h: u32,
    fps: f64,
    velocity: (f64, f64),
) -> Result<VideoClip> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let texture = periodic_texture(&mut rng, w as usize, h as usize);
    let mut frames = Vec::with_capacity(v as usize);
    for t in 0..v {
        let ox = velocity.0 * t as f64;
        let oy = velocity.1 * t as f64;
        let mut data = vec![0u8; (w * h) as usize];
        for y in 0..h as usize {
            for x in 0..w as usize {
                let val = sample_periodic(&texture, w as usize, h as usize, x as f64 - ox, y as f64 - oy);
                data[y * w as usize + x] = val.round().clamp(0.0, 255.0) as u8;
            }
        }
        frames.push(Frame::new(w, h, data)?);
    }
    VideoClip::new(
        format!("translate_{seed}"),
        frames,
        fps,
        Label::Unlabeled,
        Split::Test,
    )
}

/// Band-limited periodic texture: white noise smoothed with wrap-around so
/// circular shifts stay seamless.
pub(crate) fn periodic_texture(rng: &mut ChaCha8Rng, w: usize, h: usize) -> Vec<f32> {
    let mut g: Vec<f32> = (0..w * h)
        .map(|_| rng.random_range(0.0f32..255.0))
        .collect();
    for _ in 0..2 {
        let mut out = vec![0.0f32; w * h];
        for y in 0..h {
            for x in 0..w {
                let mut acc = 0.0;
                for dy in -1i32..=1 {
                    for dx in -1i32..=1 {
                        let xx = (x as i32 + dx).rem_euclid(w as i32) as usize;
                        let yy = (y as i32 + dy).rem_euclid(h as i32) as usize;
                        acc += g[yy * w + xx];
                    }
                }
                out[y * w + x] = acc / 9.0;
            }
        }
        g = out;
    }
    // Stretch contrast back out after smoothing.
    let (mut lo, mut hi) = (f32::MAX, f32::MIN);
    for &v in &g {
        lo = lo.min(v);
        hi = hi.max(v);
    }
    let span = (hi - lo).max(1e-6);
    for v in &mut g {
        *v = (*v - lo) / span * 200.0 + 28.0;
    }
    g
}

pub(crate) fn sample_periodic(tex: &[f32], w: usize, h: usize, x: f64, y: f64) -> f32 {
    let x0 = x.floor();
    let y0 = y.floor();
    let fx = (x - x0) as f32;
    let fy = (y - y0) as f32;
    let xi = x0 as i64;
    let yi = y0 as i64;
    let wrap = |a: i64, m: usize| a.rem_euclid(m as i64) as usize;
    let p = |dx: i64, dy: i64| tex[wrap(yi + dy, h) * w + wrap(xi + dx, w)];
    let top = p(0, 0) * (1.0 - fx) + p(1, 0) * fx;
    let bot = p(0, 1) * (1.0 - fx) + p(1, 1) * fx;
    top * (1.0 - fy) + bot * fy
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pattern_expansion() {
        assert_eq!(expand_pattern("f%05d.pgm", 17), "f00017.pgm");
        assert_eq!(expand_pattern("f%d.png", 3), "f3.png");
        assert_eq!(expand_pattern("100%%_%02d", 5), "100%_05");
    }

    #[test]
    fn pgm_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.pgm");
        let data: Vec<u8> = (0..32 * 16).map(|i| (i * 7 % 256) as u8).collect();
        let frame = Frame::new(32, 16, data).unwrap();
        write_pgm(&path, &frame).unwrap();
        let back = read_pgm(&path).unwrap();
        assert_eq!(frame, back);
    }

    #[test]
    fn png_round_trip_is_bit_exact() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("f.png");
        let data: Vec<u8> = (0..24 * 18).map(|i| (i * 13 % 256) as u8).collect();
        let frame = Frame::new(24, 18, data).unwrap();
        write_png(&path, &frame).unwrap();
        let back = read_frame(&path).unwrap();
        assert_eq!(frame, back);
    }

    #[test]
    fn load_clip_reads_frames_in_order() {
        let dir = tempfile::tempdir().unwrap();
        for i in 0..60u32 {
            let data = vec![i as u8; 16 * 16];
            write_pgm(
                &dir.path().join(format!("f{i:03}.pgm")),
                &Frame::new(16, 16, data).unwrap(),
            )
            .unwrap();
        }
        let entry = ManifestEntry {
            id: "c".into(),
            pattern: "f%03d.pgm".into(),
            fps: 30.0,
            label: Label::Unusual,
            split: Split::Train,
        };
        let clip = load_clip(&entry, dir.path()).unwrap();
        assert_eq!(clip.len(), 60);
        assert_eq!(clip.label, Label::Unusual);
        for (i, f) in clip.frames.iter().enumerate() {
            assert_eq!(f.get(0, 0), i as u8);
        }
    }

    #[test]
    fn load_clip_rejects_dimension_mismatch() {
        let dir = tempfile::tempdir().unwrap();
        for i in 0..20u32 {
            let (w, h) = if i == 17 { (20, 16) } else { (16, 16) };
            let frame = Frame::new(w, h, vec![0; (w * h) as usize]).unwrap();
            write_pgm(&dir.path().join(format!("f{i}.pgm")), &frame).unwrap();
        }
        let entry = ManifestEntry {
            id: "c".into(),
            pattern: "f%d.pgm".into(),
            fps: 30.0,
            label: Label::Usual,
            split: Split::Train,
        };
        match load_clip(&entry, dir.path()) {
            Err(Error::FrameDimensionMismatch { index: 17, .. }) => {}
            other => panic!("expected dimension mismatch, got {other:?}"),
        }
    }

    #[test]
    fn load_clip_rejects_zero_fps() {
        let dir = tempfile::tempdir().unwrap();
        let entry = ManifestEntry {
            id: "c".into(),
            pattern: "f%d.pgm".into(),
            fps: 0.0,
            label: Label::Usual,
            split: Split::Train,
        };
        assert!(matches!(
            load_clip(&entry, dir.path()),
            Err(Error::InvalidFps(_))
        ));
    }

    #[test]
    fn load_clip_missing_first_frame() {
        let dir = tempfile::tempdir().unwrap();
        let entry = ManifestEntry {
            id: "c".into(),
            pattern: "f%d.pgm".into(),
            fps: 30.0,
            label: Label::Usual,
            split: Split::Train,
        };
        assert!(matches!(
            load_clip(&entry, dir.path()),
            Err(Error::MissingFrame(_))
        ));
    }

    #[test]
    fn manifest_rejects_duplicate_ids() {
        let entry = ManifestEntry {
            id: "same".into(),
            pattern: "f%d.pgm".into(),
            fps: 30.0,
            label: Label::Usual,
            split: Split::Train,
        };
        let manifest = DatasetManifest {
            clips: vec![entry.clone(), entry],
        };
        let dir = tempfile::tempdir().unwrap();
        assert!(matches!(
            manifest.save(&dir.path().join("m.json")),
            Err(Error::DuplicateClipId(_))
        ));
    }

    #[test]
    fn synth_is_deterministic() {
        let (a, ma) = synth_clip(SynthKind::Jolt, 42, 90, 64, 48, 30.0).unwrap();
        let (b, mb) = synth_clip(SynthKind::Jolt, 42, 90, 64, 48, 30.0).unwrap();
        assert_eq!(a.frames, b.frames);
        assert_eq!(ma.jolt_start_frame, mb.jolt_start_frame);
        let (c, _) = synth_clip(SynthKind::Jolt, 43, 90, 64, 48, 30.0).unwrap();
        assert_ne!(a.frames, c.frames);
    }

    #[test]
    fn jolt_interval_inside_clip() {
        for seed in 0..10 {
            let v = 90 + seed as u32 * 3;
            let (_, meta) = synth_clip(SynthKind::Jolt, seed, v, 64, 48, 30.0).unwrap();
            let s = meta.jolt_start_frame.unwrap();
            let e = meta.jolt_end_frame.unwrap();
            assert!(s <= e && e < v);
            assert_eq!(e - s + 1, jolt_window_frames(30.0));
        }
    }

    #[test]
    fn jolt_rejects_short_clip() {
        assert!(matches!(
            synth_clip(SynthKind::Jolt, 1, 10, 64, 48, 30.0),
            Err(Error::ClipTooShort { .. })
        ));
    }

    #[test]
    fn smooth_and_jolt_share_base_scene() {
        let (a, _) = synth_clip(SynthKind::Smooth, 7, 90, 64, 48, 30.0).unwrap();
        let (b, meta) = synth_clip(SynthKind::Jolt, 7, 90, 64, 48, 30.0).unwrap();
        // Frames before the jolt window are identical.
        let start = meta.jolt_start_frame.unwrap() as usize;
        assert!(start > 0);
        for t in 0..start {
            assert_eq!(a.frames[t], b.frames[t], "frame {t} differs before jolt");
        }
        assert_ne!(a.frames[start], b.frames[start]);
    }

    #[test]
    fn translating_clip_wraps() {
        let clip = translating_noise_clip(3, 8, 32, 24, 30.0, (2.0, 0.0)).unwrap();
        assert_eq!(clip.len(), 8);
        // Period 32 in x: after 16 frames at 2 px/frame the texture cycles;
        // here just check frames differ and dims hold.
        assert_ne!(clip.frames[0], clip.frames[1]);
    }
}
