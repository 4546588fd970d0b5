//! Dense two-frame optical flow by polynomial expansion, coarse-to-fine
//! over an image pyramid, followed by median filtering of the field.
//!
//! Each frame neighborhood is approximated by a quadratic polynomial
//! f(p+u) ~ c + b'u + u'Au fitted under separable Gaussian weights. For a
//! pure translation d the expansions of the two frames relate through
//! b2 = b1 - 2*A*d, so d can be recovered per pixel and stabilized by
//! aggregating the normal equations over a window.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::imageops::{box_blur, gaussian_blur, resize_bilinear, Plane};
use crate::media::Frame;
use crate::{Error, Result};

/// Dense per-pixel displacement between two consecutive frames, in pixels,
/// x right / y down, mapping the earlier frame onto the later one.
#[derive(Debug, Clone, PartialEq)]
pub struct FlowField {
    pub width: u32,
    pub height: u32,
    /// x displacement per pixel, row-major.
    pub u: Vec<f32>,
    /// y displacement per pixel, row-major.
    pub v: Vec<f32>,
    /// Set when at least one input frame had no usable gradient
    /// information (constant intensity); the field is then all zero.
    pub degenerate: bool,
}

impl FlowField {
    pub fn zeros(width: u32, height: u32) -> Self {
        let n = (width as usize) * (height as usize);
        FlowField {
            width,
            height,
            u: vec![0.0; n],
            v: vec![0.0; n],
            degenerate: false,
        }
    }

    /// Bilinear displacement lookup at a sub-pixel position (clamped).
    pub fn sample(&self, x: f32, y: f32) -> (f32, f32) {
        (
            sample_plane(&self.u, self.width as usize, self.height as usize, x, y),
            sample_plane(&self.v, self.width as usize, self.height as usize, x, y),
        )
    }
}

fn sample_plane(data: &[f32], w: usize, h: usize, x: f32, y: f32) -> f32 {
    let x = x.clamp(0.0, (w - 1) as f32);
    let y = y.clamp(0.0, (h - 1) as f32);
    let x0 = x.floor() as usize;
    let y0 = y.floor() as usize;
    let x1 = (x0 + 1).min(w - 1);
    let y1 = (y0 + 1).min(h - 1);
    let fx = x - x0 as f32;
    let fy = y - y0 as f32;
    let top = data[y0 * w + x0] * (1.0 - fx) + data[y0 * w + x1] * fx;
    let bot = data[y1 * w + x0] * (1.0 - fx) + data[y1 * w + x1] * fx;
    top * (1.0 - fy) + bot * fy
}

/// Parameters of the flow estimator.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct FlowParams {
    /// Pyramid levels including full resolution.
    pub pyramid_levels: u32,
    /// Downscale ratio between levels, in (0, 1).
    pub pyramid_scale: f64,
    /// Aggregation window edge (odd).
    pub window_size: u32,
    /// Displacement refinement iterations per level.
    pub iterations: u32,
    /// Polynomial expansion neighborhood edge (odd).
    pub poly_n: u32,
    /// Gaussian weight sigma for the expansion.
    pub poly_sigma: f64,
}

impl Default for FlowParams {
    fn default() -> Self {
        FlowParams {
            pyramid_levels: 3,
            pyramid_scale: 0.5,
            window_size: 15,
            iterations: 3,
            poly_n: 5,
            poly_sigma: 1.1,
        }
    }
}

impl FlowParams {
    pub fn validate(&self) -> Result<()> {
        if self.window_size < 3 || self.window_size % 2 == 0 {
            return Err(Error::InvalidParam(format!(
                "window_size must be odd and >= 3, got {}",
                self.window_size
            )));
        }
        if self.poly_n < 3 || self.poly_n % 2 == 0 {
            return Err(Error::InvalidParam(format!(
                "poly_n must be odd and >= 3, got {}",
                self.poly_n
            )));
        }
        if !(self.pyramid_scale > 0.0 && self.pyramid_scale < 1.0) {
            return Err(Error::InvalidParam(format!(
                "pyramid_scale must be in (0,1), got {}",
                self.pyramid_scale
            )));
        }
        if self.pyramid_levels == 0 {
            return Err(Error::InvalidParam("pyramid_levels must be >= 1".into()));
        }
        if self.iterations == 0 {
            return Err(Error::InvalidParam("iterations must be >= 1".into()));
        }
        if self.poly_sigma <= 0.0 {
            return Err(Error::InvalidParam("poly_sigma must be > 0".into()));
        }
        Ok(())
    }
}

/// Per-pixel quadratic expansion coefficients: bx, by, axx, ayy, axy.
struct PolyExpansion {
    w: usize,
    h: usize,
    /// 5 interleaved channels per pixel.
    data: Vec<f32>,
}

impl PolyExpansion {
    #[inline]
    fn at(&self, x: usize, y: usize) -> [f32; 5] {
        let i = (y * self.w + x) * 5;
        [
            self.data[i],
            self.data[i + 1],
            self.data[i + 2],
            self.data[i + 3],
            self.data[i + 4],
        ]
    }

    /// Bilinear sample of all five channels at a clamped position.
    fn sample(&self, x: f32, y: f32) -> [f32; 5] {
        let x = x.clamp(0.0, (self.w - 1) as f32);
        let y = y.clamp(0.0, (self.h - 1) as f32);
        let x0 = x.floor() as usize;
        let y0 = y.floor() as usize;
        let x1 = (x0 + 1).min(self.w - 1);
        let y1 = (y0 + 1).min(self.h - 1);
        let fx = x - x0 as f32;
        let fy = y - y0 as f32;
        let (p00, p10, p01, p11) = (
            self.at(x0, y0),
            self.at(x1, y0),
            self.at(x0, y1),
            self.at(x1, y1),
        );
        let mut out = [0.0f32; 5];
        for c in 0..5 {
            let top = p00[c] * (1.0 - fx) + p10[c] * fx;
            let bot = p01[c] * (1.0 - fx) + p11[c] * fx;
            out[c] = top * (1.0 - fy) + bot * fy;
        }
        out
    }
}

/// Fit the quadratic expansion at every pixel via two separable
/// correlation passes with Gaussian weights, then invert the (sparse)
/// normal-equation matrix analytically.
fn poly_expansion(img: &Plane, poly_n: u32, poly_sigma: f64) -> PolyExpansion {
    let r = ((poly_n - 1) / 2) as isize;
    let g = crate::imageops::gaussian_kernel(poly_sigma as f32, r as usize);
    let m2: f64 = g
        .iter()
        .enumerate()
        .map(|(i, &w)| ((i as isize - r).pow(2)) as f64 * w as f64)
        .sum();
    let m4: f64 = g
        .iter()
        .enumerate()
        .map(|(i, &w)| ((i as isize - r).pow(4)) as f64 * w as f64)
        .sum();
    let inv_m2 = 1.0 / m2;
    let inv_quart = 1.0 / (m4 - m2 * m2);
    let inv_m2sq = 1.0 / (m2 * m2);

    let (w, h) = (img.w, img.h);
    // Vertical pass: plain, first- and second-moment correlations.
    let mut t0 = vec![0.0f32; w * h];
    let mut t1 = vec![0.0f32; w * h];
    let mut t2 = vec![0.0f32; w * h];
    for y in 0..h {
        for x in 0..w {
            let (mut a0, mut a1, mut a2) = (0.0f32, 0.0f32, 0.0f32);
            for (ki, &kw) in g.iter().enumerate() {
                let off = ki as isize - r;
                let v = img.at_clamped(x as isize, y as isize + off);
                a0 += kw * v;
                a1 += kw * off as f32 * v;
                a2 += kw * (off * off) as f32 * v;
            }
            let i = y * w + x;
            t0[i] = a0;
            t1[i] = a1;
            t2[i] = a2;
        }
    }

    // Horizontal pass assembles the six correlation products, then the
    // analytic inverse gives the polynomial coefficients.
    let mut data = vec![0.0f32; w * h * 5];
    let clamp_x = |x: isize| x.clamp(0, w as isize - 1) as usize;
    for y in 0..h {
        let row = y * w;
        for x in 0..w {
            let (mut v1, mut v2, mut v3, mut v4, mut v5, mut v6) =
                (0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64, 0.0f64);
            for (ki, &kw) in g.iter().enumerate() {
                let off = ki as isize - r;
                let xi = clamp_x(x as isize + off);
                let kw = kw as f64;
                let off_f = off as f64;
                let b0 = t0[row + xi] as f64;
                let b1 = t1[row + xi] as f64;
                let b2 = t2[row + xi] as f64;
                v1 += kw * b0;
                v2 += kw * off_f * b0;
                v3 += kw * b1;
                v4 += kw * off_f * off_f * b0;
                v5 += kw * b2;
                v6 += kw * off_f * b1;
            }
            let i = (row + x) * 5;
            data[i] = (v2 * inv_m2) as f32; // bx
            data[i + 1] = (v3 * inv_m2) as f32; // by
            data[i + 2] = ((v4 - m2 * v1) * inv_quart) as f32; // axx
            data[i + 3] = ((v5 - m2 * v1) * inv_quart) as f32; // ayy
            data[i + 4] = (v6 * inv_m2sq) as f32; // axy
        }
    }
    PolyExpansion { w, h, data }
}

/// One displacement refinement: build the windowed normal equations from
/// the two expansions and the prior flow, then solve 2x2 per pixel.
fn update_flow(
    prev: &PolyExpansion,
    next: &PolyExpansion,
    flow_u: &mut Vec<f32>,
    flow_v: &mut Vec<f32>,
    window_size: u32,
) {
    let (w, h) = (prev.w, prev.h);
    let mut g11 = Plane::zeros(w, h);
    let mut g12 = Plane::zeros(w, h);
    let mut g22 = Plane::zeros(w, h);
    let mut h1 = Plane::zeros(w, h);
    let mut h2 = Plane::zeros(w, h);

    for y in 0..h {
        for x in 0..w {
            let i = y * w + x;
            let dx = flow_u[i];
            let dy = flow_v[i];
            let p = prev.at(x, y);
            let q = next.sample(x as f32 + dx, y as f32 + dy);

            let a11 = 0.5 * (p[2] + q[2]);
            let a22 = 0.5 * (p[3] + q[3]);
            let a12 = 0.25 * (p[4] + q[4]);
            let db1 = -0.5 * (q[0] - p[0]) + a11 * dx + a12 * dy;
            let db2 = -0.5 * (q[1] - p[1]) + a12 * dx + a22 * dy;

            g11.data[i] = a11 * a11 + a12 * a12;
            g12.data[i] = a12 * (a11 + a22);
            g22.data[i] = a12 * a12 + a22 * a22;
            h1.data[i] = a11 * db1 + a12 * db2;
            h2.data[i] = a12 * db1 + a22 * db2;
        }
    }

    let radius = ((window_size - 1) / 2) as usize;
    let g11 = box_blur(&g11, radius);
    let g12 = box_blur(&g12, radius);
    let g22 = box_blur(&g22, radius);
    let h1 = box_blur(&h1, radius);
    let h2 = box_blur(&h2, radius);

    for i in 0..w * h {
        let a = g11.data[i] as f64;
        let b = g12.data[i] as f64;
        let c = g22.data[i] as f64;
        let det = a * c - b * b;
        if det.abs() > 1e-9 {
            let r1 = h1.data[i] as f64;
            let r2 = h2.data[i] as f64;
            flow_u[i] = ((c * r1 - b * r2) / det) as f32;
            flow_v[i] = ((a * r2 - b * r1) / det) as f32;
        }
        // Otherwise keep the prior estimate (no gradient information).
    }
}

/// Compute dense flow from `prev` onto `next`.
///
/// Both frames must share dimensions. Constant-intensity input yields an
/// all-zero field with the `degenerate` flag set.
pub fn compute_flow(prev: &Frame, next: &Frame, params: &FlowParams) -> Result<FlowField> {
    params.validate()?;
    if prev.width() != next.width() || prev.height() != next.height() {
        return Err(Error::DimensionMismatch {
            expected: (prev.width() as usize) * (prev.height() as usize),
            got: (next.width() as usize) * (next.height() as usize),
        });
    }
    let (w, h) = (prev.width(), prev.height());
    if prev.is_constant() || next.is_constant() {
        let mut field = FlowField::zeros(w, h);
        field.degenerate = true;
        return Ok(field);
    }

    let full_prev = Plane::from_frame(prev);
    let full_next = Plane::from_frame(next);

    // Coarse-to-fine: each level is the smoothed original resized to that
    // level's size, so downsampling error does not accumulate.
    let mut flow_u: Vec<f32> = Vec::new();
    let mut flow_v: Vec<f32> = Vec::new();
    let mut level_w = 0usize;
    let mut level_h = 0usize;
    for level in (0..params.pyramid_levels).rev() {
        let scale = params.pyramid_scale.powi(level as i32);
        let lw = ((w as f64 * scale).round() as usize).max(4);
        let lh = ((h as f64 * scale).round() as usize).max(4);
        let sigma = if scale < 1.0 {
            ((1.0 / scale - 1.0) * 0.5) as f32
        } else {
            0.0
        };
        let lp = resize_bilinear(&gaussian_blur(&full_prev, sigma), lw, lh);
        let ln = resize_bilinear(&gaussian_blur(&full_next, sigma), lw, lh);

        if flow_u.is_empty() {
            flow_u = vec![0.0; lw * lh];
            flow_v = vec![0.0; lw * lh];
        } else {
            // Upsample the previous level's flow and rescale magnitudes.
            let ratio_x = lw as f32 / level_w as f32;
            let ratio_y = lh as f32 / level_h as f32;
            let up = Plane {
                w: level_w,
                h: level_h,
                data: flow_u,
            };
            let vp = Plane {
                w: level_w,
                h: level_h,
                data: flow_v,
            };
            let ur = resize_bilinear(&up, lw, lh);
            let vr = resize_bilinear(&vp, lw, lh);
            flow_u = ur.data.iter().map(|&f| f * ratio_x).collect();
            flow_v = vr.data.iter().map(|&f| f * ratio_y).collect();
        }
        level_w = lw;
        level_h = lh;

        let pe_prev = poly_expansion(&lp, params.poly_n, params.poly_sigma);
        let pe_next = poly_expansion(&ln, params.poly_n, params.poly_sigma);
        for _ in 0..params.iterations {
            update_flow(&pe_prev, &pe_next, &mut flow_u, &mut flow_v, params.window_size);
        }
    }

    debug_assert_eq!(level_w, w as usize);
    debug_assert_eq!(level_h, h as usize);
    for val in flow_u.iter_mut().chain(flow_v.iter_mut()) {
        if !val.is_finite() {
            *val = 0.0;
        }
    }
    Ok(FlowField {
        width: w,
        height: h,
        u: flow_u,
        v: flow_v,
        degenerate: false,
    })
}

/// Median-filter each flow component independently over a
/// (2*radius+1)^2 neighborhood with clamped borders. Keeps motion
/// boundaries sharp while suppressing isolated outlier vectors.
pub fn median_filter_flow(field: &FlowField, radius: u32) -> FlowField {
    let (w, h) = (field.width as usize, field.height as usize);
    let r = radius as isize;
    let mut out = field.clone();
    let mut window: Vec<f32> = Vec::with_capacity(((2 * r + 1) * (2 * r + 1)) as usize);
    for (src, dst) in [(&field.u, &mut out.u), (&field.v, &mut out.v)] {
        for y in 0..h as isize {
            for x in 0..w as isize {
                window.clear();
                for dy in -r..=r {
                    for dx in -r..=r {
                        let xx = (x + dx).clamp(0, w as isize - 1) as usize;
                        let yy = (y + dy).clamp(0, h as isize - 1) as usize;
                        window.push(src[yy * w + xx]);
                    }
                }
                window.sort_by(|a, b| a.total_cmp(b));
                dst[(y * w as isize + x) as usize] = window[window.len() / 2];
            }
        }
    }
    out
}

const FLOW_CACHE_MAGIC: &[u8; 8] = b"FLOWF32\0";

/// Write a flow field as little-endian f32 planes (u then v) behind a
/// 16-byte header: 8-byte magic, u32 width, u32 height.
pub fn write_field(path: &Path, field: &FlowField) -> Result<()> {
    let mut buf =
        Vec::with_capacity(16 + 8 * (field.width as usize) * (field.height as usize));
    buf.extend_from_slice(FLOW_CACHE_MAGIC);
    buf.extend_from_slice(&field.width.to_le_bytes());
    buf.extend_from_slice(&field.height.to_le_bytes());
    for value in field.u.iter().chain(field.v.iter()) {
        buf.extend_from_slice(&value.to_le_bytes());
    }
    let mut file = fs::File::create(path).map_err(|e| Error::io(path, e))?;
    file.write_all(&buf).map_err(|e| Error::io(path, e))
}

/// Read a flow field written by [`write_field`].
pub fn read_field(path: &Path) -> Result<FlowField> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path, e))?;
    let bad = |reason: &str| Error::BadCacheFile {
        path: path.to_path_buf(),
        reason: reason.to_string(),
    };
    if bytes.len() < 16 || &bytes[0..8] != FLOW_CACHE_MAGIC {
        return Err(bad("bad magic"));
    }
    let width = u32::from_le_bytes(bytes[8..12].try_into().unwrap());
    let height = u32::from_le_bytes(bytes[12..16].try_into().unwrap());
    let n = (width as usize) * (height as usize);
    if bytes.len() != 16 + 8 * n {
        return Err(bad("size mismatch"));
    }
    let read_plane = |offset: usize| -> Vec<f32> {
        (0..n)
            .map(|i| {
                let at = offset + 4 * i;
                f32::from_le_bytes(bytes[at..at + 4].try_into().unwrap())
            })
            .collect()
    };
    let u = read_plane(16);
    let v = read_plane(16 + 4 * n);
    if u.iter().chain(v.iter()).any(|x| !x.is_finite()) {
        return Err(bad("non-finite flow values"));
    }
    Ok(FlowField {
        width,
        height,
        u,
        v,
        degenerate: false,
    })
}
