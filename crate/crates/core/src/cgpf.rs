//! Color Gradient and Pill-shape Feature extraction: per-channel color
//! histogram peaks combined with geometric statistics of thresholded
//! gradient-energy regions (the shape of the blisters on the strip).

use crate::classify::{FeatureVector, Method};
use crate::error::{Error, Result};
use crate::imaging::{self, BinaryPlane, Image, Plane};

/// Per-channel histogram peak: argmax intensity and its relative count,
/// both scaled to [0,1].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChannelPeak {
    pub position: f64,
    pub height: f64,
}

/// Histogram peaks for the three channels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ColorPeaks {
    pub r: ChannelPeak,
    pub g: ChannelPeak,
    pub b: ChannelPeak,
}

impl ColorPeaks {
    /// Fixed assembly order: position then height, R, G, B.
    pub fn to_array(&self) -> [f64; 6] {
        [
            self.r.position,
            self.r.height,
            self.g.position,
            self.g.height,
            self.b.position,
            self.b.height,
        ]
    }
}

/// HOG descriptor parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct HogConfig {
    /// Cell side in pixels.
    pub cell_size: usize,
    /// Unsigned orientation bins over [0°, 180°).
    pub orientation_bins: usize,
    /// Block side in cells.
    pub block_size: usize,
    /// Block stride in cells.
    pub block_stride: usize,
    /// Stabilizer for the per-block L2 normalization.
    pub epsilon: f64,
}

impl Default for HogConfig {
    fn default() -> Self {
        Self {
            cell_size: 8,
            orientation_bins: 9,
            block_size: 2,
            block_stride: 1,
            epsilon: 1e-6,
        }
    }
}

impl HogConfig {
    fn validate(&self) -> Result<()> {
        if self.cell_size == 0
            || self.block_size == 0
            || self.block_stride == 0
            || self.orientation_bins < 2
            || self.epsilon <= 0.0
        {
            return Err(Error::InvalidConfig(
                "hog parameters must be positive with at least 2 orientation bins".into(),
            ));
        }
        Ok(())
    }
}

/// Block-normalized HOG descriptor, blocks concatenated row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct HogDescriptor {
    pub values: Vec<f64>,
    pub blocks_y: usize,
    pub blocks_x: usize,
    /// Length of one block sub-vector: block_size² × orientation_bins.
    pub block_len: usize,
}

/// Geometry of one connected region, normalized so features are
/// comparable across working sizes. Centroid stays in (row, col) pixels.
#[derive(Debug, Clone, PartialEq)]
pub struct RegionStats {
    /// Pixel count / (H·W).
    pub area: f64,
    /// Boundary pixel count / (H+W).
    pub perimeter: f64,
    /// Ellipse-equivalent major axis / max(H,W).
    pub major_axis: f64,
    /// Ellipse-equivalent minor axis / max(H,W).
    pub minor_axis: f64,
    pub eccentricity: f64,
    pub centroid: (f64, f64),
    pub pixel_count: usize,
    pub boundary_count: usize,
}

/// CGPF extraction parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CgpfConfig {
    /// Working size images are resized to before extraction.
    pub resize_dims: (usize, usize),
    pub hog: HogConfig,
    /// Median filter window applied to the gradient-energy map.
    pub median_kernel: usize,
    /// Number of region slots in the feature vector (zero-padded).
    pub top_regions: usize,
    /// Regions below this raw pixel area are discarded.
    pub min_region_area: usize,
}

impl Default for CgpfConfig {
    fn default() -> Self {
        Self {
            resize_dims: (imaging::CANONICAL_SIZE, imaging::CANONICAL_SIZE),
            hog: HogConfig::default(),
            median_kernel: 3,
            top_regions: 5,
            min_region_area: 16,
        }
    }
}

impl CgpfConfig {
    /// Feature vector length: 6 color values plus 5 stats per region slot.
    pub fn feature_len(&self) -> usize {
        6 + 5 * self.top_regions
    }

    fn validate(&self) -> Result<()> {
        if self.resize_dims.0 == 0 || self.resize_dims.1 == 0 {
            return Err(Error::InvalidDimensions {
                width: self.resize_dims.0,
                height: self.resize_dims.1,
            });
        }
        if self.top_regions == 0 {
            return Err(Error::InvalidConfig("top_regions must be at least 1".into()));
        }
        if self.median_kernel == 0 || self.median_kernel % 2 == 0 {
            return Err(Error::InvalidKernel(self.median_kernel));
        }
        self.hog.validate()
    }
}

/// Per-channel 256-bin intensity histogram peaks. Ties break toward the
/// lowest intensity.
pub fn color_peaks(img: &Image) -> ColorPeaks {
    let mut hist = [[0usize; 256]; 3];
    for px in img.pixels() {
        for c in 0..3 {
            hist[c][px[c] as usize] += 1;
        }
    }
    let total = (img.width() * img.height()) as f64;
    let mut peaks = [ChannelPeak {
        position: 0.0,
        height: 0.0,
    }; 3];
    for c in 0..3 {
        let mut best_idx = 0usize;
        let mut best_count = hist[c][0];
        for (idx, &count) in hist[c].iter().enumerate().skip(1) {
            if count > best_count {
                best_count = count;
                best_idx = idx;
            }
        }
        peaks[c] = ChannelPeak {
            position: best_idx as f64 / 255.0,
            height: best_count as f64 / total,
        };
    }
    ColorPeaks {
        r: peaks[0],
        g: peaks[1],
        b: peaks[2],
    }
}

/// Pearson correlation coefficient, clamped to [−1, 1].
pub fn pearson_r(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::LengthMismatch {
            expected: u.len(),
            got: v.len(),
        });
    }
    let n = u.len();
    if n < 2 {
        return Err(Error::DegenerateInput(
            "correlation needs at least 2 points".into(),
        ));
    }
    let nf = n as f64;
    let (mut su, mut sv, mut suu, mut svv, mut suv) = (0.0, 0.0, 0.0, 0.0, 0.0);
    for (&a, &b) in u.iter().zip(v) {
        su += a;
        sv += b;
        suu += a * a;
        svv += b * b;
        suv += a * b;
    }
    let var_u = nf * suu - su * su;
    let var_v = nf * svv - sv * sv;
    if var_u <= 0.0 || var_v <= 0.0 {
        return Err(Error::DegenerateInput(
            "zero variance in correlation input".into(),
        ));
    }
    let r = (nf * suv - su * sv) / (var_u * var_v).sqrt();
    Ok(r.clamp(-1.0, 1.0))
}

/// Central-difference gradients with edge replication (kernel [−1, 0, 1]).
fn gradients(gray: &Plane) -> (Vec<f64>, Vec<f64>) {
    let (w, h) = (gray.width(), gray.height());
    let mut gx = vec![0.0; w * h];
    let mut gy = vec![0.0; w * h];
    for y in 0..h {
        for x in 0..w {
            let xl = gray.get(x.saturating_sub(1), y);
            let xr = gray.get((x + 1).min(w - 1), y);
            let yu = gray.get(x, y.saturating_sub(1));
            let yd = gray.get(x, (y + 1).min(h - 1));
            gx[y * w + x] = xr - xl;
            gy[y * w + x] = yd - yu;
        }
    }
    (gx, gy)
}

/// Histogram of oriented gradients: per-cell orientation histograms with
/// linear interpolation between the two nearest bins, blocks L2-normalized
/// with b ← b/√(‖b‖² + ε²) and concatenated row-major.
pub fn hog(gray: &Plane, cfg: &HogConfig) -> Result<HogDescriptor> {
    cfg.validate()?;
    let (w, h) = (gray.width(), gray.height());
    let cells_x = w / cfg.cell_size;
    let cells_y = h / cfg.cell_size;
    if cells_x < cfg.block_size || cells_y < cfg.block_size {
        return Err(Error::PlaneTooSmall {
            width: w,
            height: h,
            need: cfg.block_size * cfg.cell_size,
        });
    }

    let (gx, gy) = gradients(gray);
    let bins = cfg.orientation_bins;
    let bin_width = 180.0 / bins as f64;
    let mut cell_hist = vec![0.0f64; cells_x * cells_y * bins];
    for cy in 0..cells_y {
        for cx in 0..cells_x {
            let hist = &mut cell_hist[(cy * cells_x + cx) * bins..][..bins];
            for py in cy * cfg.cell_size..(cy + 1) * cfg.cell_size {
                for px in cx * cfg.cell_size..(cx + 1) * cfg.cell_size {
                    let dx = gx[py * w + px];
                    let dy = gy[py * w + px];
                    let mag = (dx * dx + dy * dy).sqrt();
                    if mag == 0.0 {
                        continue;
                    }
                    let mut angle = dy.atan2(dx).to_degrees();
                    if angle < 0.0 {
                        angle += 180.0;
                    }
                    if angle >= 180.0 {
                        angle -= 180.0;
                    }
                    // Bin centers sit at i·bin_width; votes split linearly
                    // between the two nearest centers, wrapping at 180°.
                    let t = angle / bin_width;
                    let i0 = t.floor() as usize % bins;
                    let frac = t - t.floor();
                    hist[i0] += mag * (1.0 - frac);
                    hist[(i0 + 1) % bins] += mag * frac;
                }
            }
        }
    }

    let blocks_x = (cells_x - cfg.block_size) / cfg.block_stride + 1;
    let blocks_y = (cells_y - cfg.block_size) / cfg.block_stride + 1;
    let block_len = cfg.block_size * cfg.block_size * bins;
    let mut values = Vec::with_capacity(blocks_x * blocks_y * block_len);
    for by in 0..blocks_y {
        for bx in 0..blocks_x {
            let start = values.len();
            for jy in 0..cfg.block_size {
                for jx in 0..cfg.block_size {
                    let cy = by * cfg.block_stride + jy;
                    let cx = bx * cfg.block_stride + jx;
                    values.extend_from_slice(&cell_hist[(cy * cells_x + cx) * bins..][..bins]);
                }
            }
            let block = &mut values[start..];
            let norm_sq: f64 = block.iter().map(|v| v * v).sum();
            let norm = (norm_sq + cfg.epsilon * cfg.epsilon).sqrt();
            for v in block {
                *v /= norm;
            }
        }
    }
    Ok(HogDescriptor {
        values,
        blocks_y,
        blocks_x,
        block_len,
    })
}

/// Per-cell sum of gradient magnitudes, min-max rescaled to [0, 255].
/// Output size is ceil(H/cell) × ceil(W/cell); a flat map stays all-zero.
pub fn gradient_energy_map(gray: &Plane, cell_size: usize) -> Plane {
    assert!(cell_size > 0, "cell size must be positive");
    let (w, h) = (gray.width(), gray.height());
    let out_w = w.div_ceil(cell_size);
    let out_h = h.div_ceil(cell_size);
    let (gx, gy) = gradients(gray);
    let mut map = Plane::zeros(out_w, out_h);
    for y in 0..h {
        for x in 0..w {
            let mag = (gx[y * w + x].powi(2) + gy[y * w + x].powi(2)).sqrt();
            let cx = x / cell_size;
            let cy = y / cell_size;
            map.set(cx, cy, map.get(cx, cy) + mag);
        }
    }
    let max = map.data().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = map.data().iter().cloned().fold(f64::INFINITY, f64::min);
    if max > min {
        for v in map.data_mut() {
            *v = (*v - min) / (max - min) * 255.0;
        }
    } else {
        for v in map.data_mut() {
            *v = 0.0;
        }
    }
    map
}

/// Global threshold by Otsu's between-class-variance criterion. Values are
/// quantized to 256 levels for the search; ties break toward the lower
/// threshold. A constant plane returns that constant.
pub fn otsu_threshold(p: &Plane) -> f64 {
    let max = p.data().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
    let min = p.data().iter().cloned().fold(f64::INFINITY, f64::min);
    if min == max {
        return min;
    }
    let mut hist = [0u64; 256];
    for &v in p.data() {
        let q = v.round().clamp(0.0, 255.0) as usize;
        hist[q] += 1;
    }
    let total: f64 = p.data().len() as f64;
    let total_sum: f64 = hist
        .iter()
        .enumerate()
        .map(|(i, &c)| i as f64 * c as f64)
        .sum();

    // Candidate T splits the population into {v < T} and {v >= T}.
    let mut best_t = 0usize;
    let mut best_var = f64::NEG_INFINITY;
    let mut w0 = 0.0f64;
    let mut sum0 = 0.0f64;
    for t in 0..256usize {
        if t > 0 {
            w0 += hist[t - 1] as f64;
            sum0 += (t - 1) as f64 * hist[t - 1] as f64;
        }
        let w1 = total - w0;
        let var = if w0 == 0.0 || w1 == 0.0 {
            0.0
        } else {
            let m0 = sum0 / w0;
            let m1 = (total_sum - sum0) / w1;
            (w0 / total) * (w1 / total) * (m0 - m1) * (m0 - m1)
        };
        if var > best_var {
            best_var = var;
            best_t = t;
        }
    }
    best_t as f64
}

/// Threshold mask: 0 where f(x,y) < T, 1 where f(x,y) ≥ T.
pub fn binarize(p: &Plane, threshold: f64) -> BinaryPlane {
    let data = p
        .data()
        .iter()
        .map(|&v| if v < threshold { 0u8 } else { 1u8 })
        .collect();
    BinaryPlane::new(p.width(), p.height(), data).expect("plane dims are valid")
}

/// 8-connected components of 1-pixels with raw area ≥ min_area, sorted by
/// area descending (ties by centroid row, then column). Axis lengths come
/// from the pixel-coordinate covariance with the +1/12 per-pixel variance
/// correction: major = 4√λ₁, minor = 4√λ₂, eccentricity = √(1 − λ₂/λ₁).
/// Perimeter counts region pixels with a 4-neighbor outside the region,
/// the plane border counting as outside.
pub fn region_props(b: &BinaryPlane, min_area: usize) -> Vec<RegionStats> {
    let (w, h) = (b.width(), b.height());
    let mut labels = vec![0u32; w * h];
    let mut next_label = 0u32;
    let mut components: Vec<Vec<(usize, usize)>> = Vec::new();
    let mut stack = Vec::new();

    for sy in 0..h {
        for sx in 0..w {
            if b.get(sx, sy) == 0 || labels[sy * w + sx] != 0 {
                continue;
            }
            next_label += 1;
            let mut pixels = Vec::new();
            labels[sy * w + sx] = next_label;
            stack.push((sx, sy));
            while let Some((x, y)) = stack.pop() {
                pixels.push((x, y));
                for dy in -1i64..=1 {
                    for dx in -1i64..=1 {
                        if dx == 0 && dy == 0 {
                            continue;
                        }
                        let nx = x as i64 + dx;
                        let ny = y as i64 + dy;
                        if nx < 0 || ny < 0 || nx >= w as i64 || ny >= h as i64 {
                            continue;
                        }
                        let (nx, ny) = (nx as usize, ny as usize);
                        if b.get(nx, ny) == 1 && labels[ny * w + nx] == 0 {
                            labels[ny * w + nx] = next_label;
                            stack.push((nx, ny));
                        }
                    }
                }
            }
            components.push(pixels);
        }
    }

    let mut regions: Vec<RegionStats> = Vec::new();
    for pixels in components {
        let n = pixels.len();
        if n < min_area {
            continue;
        }
        let mut boundary = 0usize;
        let (mut sr, mut sc, mut srr, mut scc, mut src) = (0.0, 0.0, 0.0, 0.0, 0.0);
        for &(x, y) in &pixels {
            let outside = |nx: i64, ny: i64| {
                nx < 0
                    || ny < 0
                    || nx >= w as i64
                    || ny >= h as i64
                    || b.get(nx as usize, ny as usize) == 0
            };
            let (xi, yi) = (x as i64, y as i64);
            if outside(xi - 1, yi) || outside(xi + 1, yi) || outside(xi, yi - 1) || outside(xi, yi + 1)
            {
                boundary += 1;
            }
            let (r, c) = (y as f64, x as f64);
            sr += r;
            sc += c;
            srr += r * r;
            scc += c * c;
            src += r * c;
        }
        let nf = n as f64;
        let (mr, mc) = (sr / nf, sc / nf);
        let var_r = srr / nf - mr * mr + 1.0 / 12.0;
        let var_c = scc / nf - mc * mc + 1.0 / 12.0;
        let cov = src / nf - mr * mc;
        let mean = 0.5 * (var_r + var_c);
        let delta = (0.25 * (var_r - var_c).powi(2) + cov * cov).sqrt();
        let lambda1 = mean + delta;
        let lambda2 = (mean - delta).max(0.0);
        let norm_len = w.max(h) as f64;
        regions.push(RegionStats {
            area: nf / (w as f64 * h as f64),
            perimeter: boundary as f64 / (w as f64 + h as f64),
            major_axis: 4.0 * lambda1.sqrt() / norm_len,
            minor_axis: 4.0 * lambda2.sqrt() / norm_len,
            eccentricity: (1.0 - lambda2 / lambda1).max(0.0).sqrt(),
            centroid: (mr, mc),
            pixel_count: n,
            boundary_count: boundary,
        });
    }

    regions.sort_by(|a, b| {
        b.pixel_count
            .cmp(&a.pixel_count)
            .then(a.centroid.0.partial_cmp(&b.centroid.0).expect("finite centroid"))
            .then(a.centroid.1.partial_cmp(&b.centroid.1).expect("finite centroid"))
    });
    regions
}

/// Full CGPF pipeline: resize, color peaks on the color image, and the
/// shape branch (gray → gradient energy → median filter → Otsu →
/// binarize → region properties). The vector is 6 color values followed
/// by `top_regions` slots of (area, perimeter, major, minor,
/// eccentricity), zero-padded.
pub fn cgpf_features(img: &Image, cfg: &CgpfConfig) -> Result<FeatureVector> {
    cfg.validate()?;
    let resized = imaging::resize(img, cfg.resize_dims.0, cfg.resize_dims.1)?;
    let peaks = color_peaks(&resized);

    let gray = imaging::to_gray(&resized);
    let energy = gradient_energy_map(&gray, cfg.hog.cell_size);
    let filtered = imaging::median_filter(&energy, cfg.median_kernel)?;
    // A map with no gradient energy has no objects to segment; Otsu's
    // degenerate constant rule would otherwise flag the whole frame.
    let regions = if filtered.data().iter().all(|&v| v == 0.0) {
        Vec::new()
    } else {
        let t = otsu_threshold(&filtered);
        let mask = binarize(&filtered, t);
        region_props(&mask, cfg.min_region_area)
    };

    let mut values = Vec::with_capacity(cfg.feature_len());
    values.extend_from_slice(&peaks.to_array());
    for slot in 0..cfg.top_regions {
        match regions.get(slot) {
            Some(r) => values.extend_from_slice(&[
                r.area,
                r.perimeter,
                r.major_axis,
                r.minor_axis,
                r.eccentricity,
            ]),
            None => values.extend_from_slice(&[0.0; 5]),
        }
    }
    Ok(FeatureVector {
        method: Method::Cgpf,
        values,
    })
}
