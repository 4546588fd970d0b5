//! Shared single-channel f32 image helpers used by the flow and tracking
//! stages. Borders are handled by clamping coordinates (replication).

use crate::media::Frame;

/// Row-major single-channel float image.
#[derive(Debug, Clone)]
pub(crate) struct Plane {
    pub w: usize,
    pub h: usize,
    pub data: Vec<f32>,
}

impl Plane {
    pub fn zeros(w: usize, h: usize) -> Self {
        Plane {
            w,
            h,
            data: vec![0.0; w * h],
        }
    }

    pub fn from_frame(frame: &Frame) -> Self {
        Plane {
            w: frame.width() as usize,
            h: frame.height() as usize,
            data: frame.data().iter().map(|&p| p as f32).collect(),
        }
    }

    pub fn to_frame(&self) -> Frame {
        let data = self
            .data
            .iter()
            .map(|&v| v.round().clamp(0.0, 255.0) as u8)
            .collect();
        Frame::new(self.w as u32, self.h as u32, data).expect("plane dims valid")
    }

    #[inline]
    pub fn at(&self, x: usize, y: usize) -> f32 {
        self.data[y * self.w + x]
    }

    /// Clamped integer lookup.
    #[inline]
    pub fn at_clamped(&self, x: isize, y: isize) -> f32 {
        let x = x.clamp(0, self.w as isize - 1) as usize;
        let y = y.clamp(0, self.h as isize - 1) as usize;
        self.data[y * self.w + x]
    }

    /// Bilinear sample with the coordinate clamped into the valid domain.
    pub fn sample_bilinear(&self, x: f32, y: f32) -> f32 {
        let x = x.clamp(0.0, (self.w - 1) as f32);
        let y = y.clamp(0.0, (self.h - 1) as f32);
        let x0 = x.floor() as usize;
        let y0 = y.floor() as usize;
        let x1 = (x0 + 1).min(self.w - 1);
        let y1 = (y0 + 1).min(self.h - 1);
        let fx = x - x0 as f32;
        let fy = y - y0 as f32;
        let top = self.at(x0, y0) * (1.0 - fx) + self.at(x1, y0) * fx;
        let bot = self.at(x0, y1) * (1.0 - fx) + self.at(x1, y1) * fx;
        top * (1.0 - fy) + bot * fy
    }
}

/// Truncated, normalized 1-D Gaussian kernel.
pub(crate) fn gaussian_kernel(sigma: f32, radius: usize) -> Vec<f32> {
    let mut k = Vec::with_capacity(2 * radius + 1);
    let s2 = 2.0 * sigma * sigma;
    for i in -(radius as isize)..=(radius as isize) {
        k.push((-(i * i) as f32 / s2).exp());
    }
    let sum: f32 = k.iter().sum();
    for v in &mut k {
        *v /= sum;
    }
    k
}

/// Separable Gaussian blur with replicated borders.
pub(crate) fn gaussian_blur(src: &Plane, sigma: f32) -> Plane {
    if sigma <= 0.0 {
        return src.clone();
    }
    let radius = ((sigma * 2.5).round() as usize).max(1);
    let kernel = gaussian_kernel(sigma, radius);
    let r = radius as isize;

    let mut tmp = Plane::zeros(src.w, src.h);
    for y in 0..src.h {
        for x in 0..src.w {
            let mut acc = 0.0f32;
            for (ki, kv) in kernel.iter().enumerate() {
                acc += kv * src.at_clamped(x as isize + ki as isize - r, y as isize);
            }
            tmp.data[y * src.w + x] = acc;
        }
    }
    let mut dst = Plane::zeros(src.w, src.h);
    for y in 0..src.h {
        for x in 0..src.w {
            let mut acc = 0.0f32;
            for (ki, kv) in kernel.iter().enumerate() {
                acc += kv * tmp.at_clamped(x as isize, y as isize + ki as isize - r);
            }
            dst.data[y * src.w + x] = acc;
        }
    }
    dst
}

/// Bilinear resize to the given size.
pub(crate) fn resize_bilinear(src: &Plane, w: usize, h: usize) -> Plane {
    assert!(w >= 1 && h >= 1);
    let mut dst = Plane::zeros(w, h);
    let sx = src.w as f32 / w as f32;
    let sy = src.h as f32 / h as f32;
    for y in 0..h {
        let fy = (y as f32 + 0.5) * sy - 0.5;
        for x in 0..w {
            let fx = (x as f32 + 0.5) * sx - 0.5;
            dst.data[y * w + x] = src.sample_bilinear(fx, fy);
        }
    }
    dst
}

/// Smooth-then-resize downscale of an 8-bit frame, used to build the
/// spatial scale stack for sampling and per-scale flow.
pub(crate) fn downscale_frame(frame: &Frame, w: u32, h: u32) -> Frame {
    let src = Plane::from_frame(frame);
    let scale = (w as f32 / frame.width() as f32).min(h as f32 / frame.height() as f32);
    let sigma = if scale < 1.0 {
        (1.0 / scale - 1.0) * 0.5
    } else {
        0.0
    };
    let smoothed = gaussian_blur(&src, sigma);
    resize_bilinear(&smoothed, w as usize, h as usize).to_frame()
}

/// In-place box blur of a plane, window (2r+1)^2, replicated borders.
/// Row sums are kept in f64 so long moving sums do not drift.
pub(crate) fn box_blur(src: &Plane, radius: usize) -> Plane {
    let (w, h) = (src.w, src.h);
    let r = radius as isize;
    let norm = 1.0f64 / ((2 * radius + 1) * (2 * radius + 1)) as f64;

    // Horizontal pass: prefix sums per row.
    let mut tmp = vec![0.0f64; w * h];
    for y in 0..h {
        let mut prefix = vec![0.0f64; w + 1];
        for x in 0..w {
            prefix[x + 1] = prefix[x] + src.at(x, y) as f64;
        }
        for x in 0..w as isize {
            let lo = (x - r).clamp(0, w as isize - 1) as usize;
            let hi = (x + r).clamp(0, w as isize - 1) as usize;
            let sum = prefix[hi + 1] - prefix[lo];
            // Replicate-pad: account for clamped cells beyond the border.
            let left_pad = (r - x).max(0) as f64;
            let right_pad = (x + r - (w as isize - 1)).max(0) as f64;
            let padded = sum + left_pad * src.at(0, y) as f64 + right_pad * src.at(w - 1, y) as f64;
            tmp[y * w + x as usize] = padded;
        }
    }

    // Vertical pass over the horizontal sums.
    let mut dst = Plane::zeros(w, h);
    for x in 0..w {
        let mut prefix = vec![0.0f64; h + 1];
        for y in 0..h {
            prefix[y + 1] = prefix[y] + tmp[y * w + x];
        }
        for y in 0..h as isize {
            let lo = (y - r).clamp(0, h as isize - 1) as usize;
            let hi = (y + r).clamp(0, h as isize - 1) as usize;
            let sum = prefix[hi + 1] - prefix[lo];
            let top_pad = (r - y).max(0) as f64;
            let bot_pad = (y + r - (h as isize - 1)).max(0) as f64;
            let padded = sum + top_pad * tmp[x] + bot_pad * tmp[(h - 1) * w + x];
            dst.data[y as usize * w + x] = (padded * norm) as f32;
        }
    }
    dst
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gaussian_kernel_normalized() {
        let k = gaussian_kernel(1.1, 2);
        let sum: f32 = k.iter().sum();
        assert!((sum - 1.0).abs() < 1e-6);
        assert_eq!(k.len(), 5);
        assert!(k[2] > k[1] && k[1] > k[0]);
    }

    #[test]
    fn box_blur_constant_is_identity() {
        let p = Plane {
            w: 7,
            h: 5,
            data: vec![3.25; 35],
        };
        let b = box_blur(&p, 2);
        for v in b.data {
            assert!((v - 3.25).abs() < 1e-5);
        }
    }

    #[test]
    fn box_blur_averages_single_spike() {
        let mut p = Plane::zeros(9, 9);
        p.data[4 * 9 + 4] = 9.0;
        let b = box_blur(&p, 1);
        assert!((b.at(4, 4) - 1.0).abs() < 1e-5);
        assert!((b.at(3, 4) - 1.0).abs() < 1e-5);
        assert!(b.at(0, 0).abs() < 1e-6);
    }

    #[test]
    fn bilinear_interpolates_midpoint() {
        let p = Plane {
            w: 2,
            h: 1,
            data: vec![0.0, 10.0],
        };
        assert!((p.sample_bilinear(0.5, 0.0) - 5.0).abs() < 1e-6);
    }

    #[test]
    fn resize_preserves_constant() {
        let p = Plane {
            w: 16,
            h: 12,
            data: vec![7.0; 192],
        };
        let r = resize_bilinear(&p, 11, 8);
        for v in r.data {
            assert!((v - 7.0).abs() < 1e-5);
        }
    }
}
