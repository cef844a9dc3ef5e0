//! Deterministic synthetic medicine-strip generator: a desk-scale
//! benchmark with foil speckle texture, elliptical pill blisters in a
//! class-specific grid, seeded augmentation, and hue-twin classes for the
//! near-duplicate sensitivity experiment.

use std::f64::consts::PI;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::imaging::{self, Image};
use crate::seeds;

/// Canvas side for rendered strips.
pub const CANVAS: usize = imaging::CANONICAL_SIZE;
/// Minimum pairwise base-color L2 distance between generated classes.
pub const MIN_COLOR_SEPARATION: f64 = 60.0;
/// Above this many classes the color-separation constraint is not
/// reliably satisfiable by rejection sampling.
pub const MAX_CLASSES: usize = 32;

const MARGIN: usize = 24;
const REJECTION_ATTEMPTS: usize = 40_000;

/// Recipe for one strip class.
#[derive(Debug, Clone, PartialEq)]
pub struct StripSpec {
    pub class_id: usize,
    pub base_color: [u8; 3],
    /// (rows, cols) of the blister grid.
    pub pill_grid: (usize, usize),
    /// Ellipse semi-axes in pixels (horizontal, vertical).
    pub pill_axes: (f64, f64),
    pub pill_color: [u8; 3],
    pub texture_seed: u64,
}

/// Per-sample augmentation strengths; all jitters are symmetric around
/// the identity.
#[derive(Debug, Clone, PartialEq)]
pub struct AugmentSpec {
    /// Brightness scale drawn from 1 ± this fraction.
    pub brightness_jitter: f64,
    /// Additive Gaussian noise sigma in gray levels.
    pub noise_sigma: f64,
    /// Uniform rescale drawn from 1 ± this fraction, then recanonicalized.
    pub scale_jitter: f64,
    /// Hue rotation drawn from ± this many degrees.
    pub hue_jitter: f64,
}

impl Default for AugmentSpec {
    fn default() -> Self {
        Self {
            brightness_jitter: 0.1,
            noise_sigma: 4.0,
            scale_jitter: 0.1,
            hue_jitter: 5.0,
        }
    }
}

impl AugmentSpec {
    pub fn none() -> Self {
        Self {
            brightness_jitter: 0.0,
            noise_sigma: 0.0,
            scale_jitter: 0.0,
            hue_jitter: 0.0,
        }
    }
}

/// RGB → HSV with hue in degrees [0, 360), saturation and value in [0,1].
pub fn rgb_to_hsv(rgb: [u8; 3]) -> (f64, f64, f64) {
    let r = rgb[0] as f64 / 255.0;
    let g = rgb[1] as f64 / 255.0;
    let b = rgb[2] as f64 / 255.0;
    let max = r.max(g).max(b);
    let min = r.min(g).min(b);
    let delta = max - min;
    let h = if delta == 0.0 {
        0.0
    } else if max == r {
        60.0 * (((g - b) / delta).rem_euclid(6.0))
    } else if max == g {
        60.0 * ((b - r) / delta + 2.0)
    } else {
        60.0 * ((r - g) / delta + 4.0)
    };
    let s = if max == 0.0 { 0.0 } else { delta / max };
    (h, s, max)
}

/// HSV → RGB, rounding each channel to the nearest 8-bit level.
pub fn hsv_to_rgb(h: f64, s: f64, v: f64) -> [u8; 3] {
    let h = h.rem_euclid(360.0);
    let c = v * s;
    let x = c * (1.0 - ((h / 60.0).rem_euclid(2.0) - 1.0).abs());
    let m = v - c;
    let (r, g, b) = match (h / 60.0) as usize {
        0 => (c, x, 0.0),
        1 => (x, c, 0.0),
        2 => (0.0, c, x),
        3 => (0.0, x, c),
        4 => (x, 0.0, c),
        _ => (c, 0.0, x),
    };
    [
        ((r + m) * 255.0).round().clamp(0.0, 255.0) as u8,
        ((g + m) * 255.0).round().clamp(0.0, 255.0) as u8,
        ((b + m) * 255.0).round().clamp(0.0, 255.0) as u8,
    ]
}

/// Rotate a color's hue by `degrees`, keeping saturation and value.
pub fn rotate_hue(rgb: [u8; 3], degrees: f64) -> [u8; 3] {
    if degrees == 0.0 {
        return rgb;
    }
    let (h, s, v) = rgb_to_hsv(rgb);
    hsv_to_rgb(h + degrees, s, v)
}

fn color_distance(a: [u8; 3], b: [u8; 3]) -> f64 {
    a.iter()
        .zip(&b)
        .map(|(&x, &y)| (x as f64 - y as f64).powi(2))
        .sum::<f64>()
        .sqrt()
}

/// Foil and blister texture statistics implied by a texture seed. All of
/// these are class-level constants; samples only vary their realization.
#[derive(Debug, Clone, PartialEq)]
struct TextureParams {
    speckle_density: f64,
    speckle_amp: f64,
    speckle_dot: usize,
    /// Ladder rungs fixing the two prints' grain frequency and contrast.
    weave_rung: usize,
    weave_rung2: usize,
    /// Centers of the woven-grain frequency bands, in cycles per canvas.
    weave_center: f64,
    weave_center2: f64,
    /// Weave field standard deviations in gray levels.
    weave_amp: f64,
    weave_amp2: f64,
    /// Fraction of the foil the woven print covers (stripe duty cycle).
    weave_cover: f64,
    /// Stripe repeat of the woven print, in pixels.
    stripe_period: f64,
    ripple_period: f64,
    ripple_depth: f64,
}

/// Strata of the two robust texture axes.
///
/// The speckle floor controls how the dominant low-magnitude spectral
/// mass splits across the first histogram bins. The weave rung pairs a
/// grain frequency with a spectral amplitude so that each rung's hump
/// lands at its own position along the histogram: rung geometry spaces
/// the hump positions log-uniformly, which keeps every class extremal in
/// its own direction (no class sits inside the hull of the others).
/// Class assignment shuffles over floor x rung cells, so any two classes
/// differ in at least one robust coordinate.
const FLOOR_BANDS: [(f64, f64); 2] = [(1.0, 2.2), (16.0, 24.0)];
const WEAVE_RUNGS: usize = 6;

/// Grain frequency (cycles per canvas) and target spectral amplitude for
/// one weave rung. Coarse rungs put a few strong coefficients high up
/// the log-magnitude histogram; fine rungs spread many weaker ones lower
/// down. The inverse coupling bends the class family away from any
/// straight line, so no class sits inside the hull of the rest.
fn rung_geometry(rung: usize) -> (f64, f64) {
    let t = rung as f64 / (WEAVE_RUNGS - 1) as f64;
    let grain = 8.0 * (40.0f64 / 8.0).powf(t);
    let peak = 4.5 * (0.35f64 / 4.5).powf(t);
    (grain, peak)
}

impl TextureParams {
    fn derive(texture_seed: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(texture_seed);
        let speckle_density = rng.gen_range(0.01..0.18);
        let speckle_amp = rng.gen_range(6.0..55.0);
        let speckle_dot = rng.gen_range(1..=2);
        let weave_rung = rng.gen_range(0..WEAVE_RUNGS);
        let weave_rung2 = weave_rung;
        // Annulus of +-10% around a grain holds roughly 0.6*pi*k^2
        // spectral coefficients; size each field so its coefficients sit
        // near the rung's peak magnitude. Two prints share the contrast
        // budget.
        let sized = |rung: usize, rng: &mut ChaCha8Rng| {
            let (grain, peak) = rung_geometry(rung);
            let center = grain * rng.gen_range(0.95..1.05);
            let coeffs = (0.6 * PI * center * center).sqrt();
            (center, 0.75 * peak * coeffs * rng.gen_range(0.92..1.08))
        };
        let (weave_center, weave_amp) = sized(weave_rung, &mut rng);
        let (weave_center2, weave_amp2) = sized(weave_rung2, &mut rng);
        let weave_cover = rng.gen_range(0.55..0.80);
        let stripe_period = rng.gen_range(30.0..68.0);
        let ripple_period = rng.gen_range(4.5..8.5);
        let ripple_depth = rng.gen_range(0.05..0.20);
        Self {
            speckle_density,
            speckle_amp,
            speckle_dot,
            weave_rung,
            weave_rung2,
            weave_center,
            weave_center2,
            weave_amp,
            weave_amp2,
            weave_cover,
            stripe_period,
            ripple_period,
            ripple_depth,
        }
    }

    /// Standard deviation the speckle field contributes per pixel.
    fn speckle_sigma(&self) -> f64 {
        self.speckle_amp * (self.speckle_density / 3.0).sqrt() * self.speckle_dot as f64
    }

    fn lattice_cell(&self) -> Option<(usize, usize, usize)> {
        let sigma = self.speckle_sigma();
        let f = FLOOR_BANDS
            .iter()
            .position(|&(lo, hi)| sigma >= lo && sigma < hi)?;
        Some((f, self.weave_rung, self.weave_rung2))
    }
}

/// Sequential label names: med01, med02, ...
pub fn class_label(index: usize) -> String {
    format!("med{:02}", index + 1)
}

/// Deterministic class recipes: base colors kept at least
/// [`MIN_COLOR_SEPARATION`] apart by rejection sampling, blister grids
/// cycling through 2×4, 3×4 and 2×5, pill geometry and texture keys drawn
/// per class.
pub fn gen_class_specs(n_classes: usize, seed: u64) -> Result<Vec<StripSpec>> {
    if n_classes < 2 || n_classes > MAX_CLASSES {
        return Err(Error::TooManyClasses {
            requested: n_classes,
            cap: MAX_CLASSES,
        });
    }
    let grids = [(2usize, 4usize), (3, 4), (2, 5)];
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Every class gets its own pair of weave rungs, one per print: a
    // two-hot code over hump positions. Any cell of that product grid is
    // linearly separable from the rest, so no class hides in the hull of
    // the others. Floor bands cycle underneath as a third coordinate.
    use rand::seq::SliceRandom;
    let mut rungs: Vec<usize> = (0..WEAVE_RUNGS).collect();
    rungs.shuffle(&mut rng);
    let mut floors: Vec<usize> = (0..FLOOR_BANDS.len()).collect();
    floors.shuffle(&mut rng);
    let cells: Vec<(usize, usize, usize)> = (0..MAX_CLASSES)
        .map(|i| {
            let floor = floors[(i + i / WEAVE_RUNGS) % floors.len()];
            // The second print is disabled; its rung mirrors the first.
        (floor, rungs[i % rungs.len()], rungs[i % rungs.len()])
        })
        .collect();

    let mut specs: Vec<StripSpec> = Vec::with_capacity(n_classes);
    for class_id in 0..n_classes {
        let mut attempts = 0;
        let base_color = loop {
            let candidate = [
                rng.gen_range(40..=230u8),
                rng.gen_range(40..=230u8),
                rng.gen_range(40..=230u8),
            ];
            let ok = specs
                .iter()
                .all(|s| color_distance(s.base_color, candidate) >= MIN_COLOR_SEPARATION);
            if ok {
                break candidate;
            }
            attempts += 1;
            if attempts >= REJECTION_ATTEMPTS {
                return Err(Error::TooManyClasses {
                    requested: n_classes,
                    cap: MAX_CLASSES,
                });
            }
        };

        let pill_grid = grids[class_id % grids.len()];
        let (rows, cols) = pill_grid;
        let usable = (CANVAS - 2 * MARGIN) as f64;
        // Leave at least a cell and a half between neighboring rims so
        // thresholded footprints stay separate components.
        let cap_a = usable / cols as f64 / 2.0 - 9.0;
        let cap_b = usable / rows as f64 / 2.0 - 9.0;
        let mut a = cap_a * 0.92;
        let mut b = cap_b * 0.92;
        // Keep blisters comfortably above the detector's minimum region
        // area so thresholded footprints survive.
        const MIN_FOOTPRINT: f64 = 410.0;
        if a * b < MIN_FOOTPRINT {
            let scale = (MIN_FOOTPRINT / (a * b)).sqrt();
            a = (a * scale).min(cap_a);
            b = (b * scale).min(cap_b);
        }

        let pill_color = loop {
            let shifted = rotate_hue(base_color, rng.gen_range(-60.0..60.0));
            let (h, s, v) = rgb_to_hsv(shifted);
            let candidate = hsv_to_rgb(h, s, (v * rng.gen_range(0.55..1.45)).clamp(0.15, 1.0));
            if color_distance(candidate, base_color) >= 40.0 {
                break candidate;
            }
            attempts += 1;
            if attempts >= REJECTION_ATTEMPTS {
                // Bright fallback always contrasts with the foil.
                break [
                    base_color[0].saturating_add(70),
                    base_color[1].saturating_add(70),
                    base_color[2].saturating_add(70),
                ];
            }
        };

        // Texture statistics are the spectral identity of a class: keep
        // resampling the seed until its derived parameters land in the
        // class's assigned lattice cell.
        let target_cell = cells[class_id % cells.len()];
        let texture_seed = loop {
            let candidate: u64 = rng.gen();
            if TextureParams::derive(candidate).lattice_cell() == Some(target_cell) {
                break candidate;
            }
            attempts += 1;
            if attempts >= REJECTION_ATTEMPTS {
                return Err(Error::TooManyClasses {
                    requested: n_classes,
                    cap: MAX_CLASSES,
                });
            }
        };

        specs.push(StripSpec {
            class_id,
            base_color,
            pill_grid,
            pill_axes: (a, b),
            pill_color,
            texture_seed,
        });
    }
    Ok(specs)
}

/// The same strip with base and pill colors rotated in hue — a synthetic
/// near-duplicate of the source class.
pub fn hue_twin(spec: &StripSpec, offset_degrees: f64) -> StripSpec {
    StripSpec {
        base_color: rotate_hue(spec.base_color, offset_degrees),
        pill_color: rotate_hue(spec.pill_color, offset_degrees),
        ..spec.clone()
    }
}

fn add_clamped(v: u8, delta: f64) -> u8 {
    (v as f64 + delta).round().clamp(0.0, 255.0) as u8
}

/// Multiply every channel by `factor`, clipping to [0, 255].
pub fn scale_brightness(img: &mut Image, factor: f64) {
    for px in img.pixels_mut() {
        for c in px.iter_mut() {
            *c = (*c as f64 * factor).round().clamp(0.0, 255.0) as u8;
        }
    }
}

fn box_muller(rng: &mut ChaCha8Rng) -> f64 {
    let u: f64 = rng.gen_range(f64::EPSILON..1.0);
    let v: f64 = rng.gen_range(0.0..1.0);
    (-2.0 * u.ln()).sqrt() * (2.0 * PI * v).cos()
}

/// Unit-variance band-limited field: a sum of gratings whose spatial
/// frequencies sit in an annulus around `center` cycles per canvas.
/// Evaluated with a per-row phasor recurrence, one rotation per pixel.
fn weave_field(texture_seed: u64, center: f64) -> Vec<f64> {
    const GRATINGS: usize = 32;
    let mut rng = ChaCha8Rng::seed_from_u64(seeds::mix(texture_seed, 0x3eae, 0));
    let mut field = vec![0.0f64; CANVAS * CANVAS];
    for _ in 0..GRATINGS {
        let k = center * rng.gen_range(0.90..1.10);
        let theta: f64 = rng.gen_range(0.0..PI);
        let phase: f64 = rng.gen_range(0.0..2.0 * PI);
        let kx = k * theta.cos() * 2.0 * PI / CANVAS as f64;
        let ky = k * theta.sin() * 2.0 * PI / CANVAS as f64;
        let step = (kx.cos(), kx.sin());
        for y in 0..CANVAS {
            let alpha = ky * y as f64 + phase;
            let (mut re, mut im) = (alpha.cos(), alpha.sin());
            let row = &mut field[y * CANVAS..][..CANVAS];
            for v in row.iter_mut() {
                *v += re;
                let next_re = re * step.0 - im * step.1;
                im = re * step.1 + im * step.0;
                re = next_re;
            }
        }
    }
    let norm = (GRATINGS as f64 / 2.0).sqrt();
    for v in &mut field {
        *v /= norm;
    }
    field
}

/// Neutral blister-foil backing shared by every strip; the class color
/// lives in the print, not the backing.
const FOIL_GRAY: [u8; 3] = [205, 203, 198];

/// Render one sample: printed foil, shaded elliptical blisters with a
/// lighter rim, then brightness, noise, rescale and hue augmentation in
/// that order. Bit-deterministic for a given (spec, aug, sample_seed).
pub fn render_sample(spec: &StripSpec, aug: &AugmentSpec, sample_seed: u64) -> Image {
    let mut img = Image::filled(CANVAS, CANVAS, FOIL_GRAY);

    // Class-level texture statistics, sample-level realization.
    let params = TextureParams::derive(spec.texture_seed);
    let mut tex_rng = ChaCha8Rng::seed_from_u64(seeds::mix(spec.texture_seed, sample_seed, 0x7e));
    let modulation = tex_rng.gen_range(0.98..1.02);

    // Woven print: stripes of the class color carrying a band-limited
    // grain around the class frequency. The pattern is fixed per class
    // like a printed design; only its strength breathes with the
    // per-sample modulation. Channel strength follows the print color,
    // so the grain rotates with hue.
    const PRINT_BLEND: f64 = 0.40;
    let color_gain = |amp: f64| {
        [
            amp * (0.25 + 0.75 * spec.base_color[0] as f64 / 255.0),
            amp * (0.25 + 0.75 * spec.base_color[1] as f64 / 255.0),
            amp * (0.25 + 0.75 * spec.base_color[2] as f64 / 255.0),
        ]
    };
    let mut stripe_rng = ChaCha8Rng::seed_from_u64(seeds::mix(spec.texture_seed, 0x57a1, 0));
    let stripe_phase: f64 = stripe_rng.gen_range(0.0..params.stripe_period);
    let stripe_phase2: f64 = stripe_rng.gen_range(0.0..params.stripe_period);

    // First print on horizontal stripes, second on vertical ones.
    let weave = weave_field(spec.texture_seed, params.weave_center);
    let gain = color_gain(params.weave_amp);
    for y in 0..CANVAS {
        let pos = (y as f64 + stripe_phase).rem_euclid(params.stripe_period);
        if pos >= params.weave_cover * params.stripe_period {
            continue;
        }
        for x in 0..CANVAS {
            let w = weave[y * CANVAS + x];
            let mut px = img.get(x, y);
            for ((c, &g), &print) in px.iter_mut().zip(&gain).zip(&spec.base_color) {
                let inked = *c as f64 + PRINT_BLEND * (print as f64 - *c as f64);
                *c = (inked + modulation * g * w).round().clamp(0.0, 255.0) as u8;
            }
            img.set(x, y, px);
        }
    }
    let _ = stripe_phase2;

    // Most of the speckle belongs to the class's foil finish; a small
    // per-sample share models glints that move between photographs. Like
    // the weave, speckle tint follows the foil color so the floor of the
    // spectrum rotates with hue.
    let amp = params.speckle_amp * modulation;
    let speckles = (params.speckle_density * (CANVAS * CANVAS) as f64) as usize;
    let fixed_speckles = speckles * 7 / 8;
    let dot = params.speckle_dot;
    let tint = [
        0.30 + 0.70 * spec.base_color[0] as f64 / 255.0,
        0.30 + 0.70 * spec.base_color[1] as f64 / 255.0,
        0.30 + 0.70 * spec.base_color[2] as f64 / 255.0,
    ];
    let tint_norm = 3.0 / (tint[0] + tint[1] + tint[2]);
    let mut speckle_rng = ChaCha8Rng::seed_from_u64(seeds::mix(spec.texture_seed, 0xc1a5, 0));
    let mut draw_speckles = |rng: &mut ChaCha8Rng, count: usize, img: &mut Image| {
        for _ in 0..count {
            let x = rng.gen_range(0..CANVAS);
            let y = rng.gen_range(0..CANVAS);
            let delta = rng.gen_range(-amp..amp);
            for dy in 0..dot {
                for dx in 0..dot {
                    let (px, py) = ((x + dx).min(CANVAS - 1), (y + dy).min(CANVAS - 1));
                    let mut p = img.get(px, py);
                    for (c, &t) in p.iter_mut().zip(&tint) {
                        *c = add_clamped(*c, delta * t * tint_norm);
                    }
                    img.set(px, py, p);
                }
            }
        }
    };
    draw_speckles(&mut speckle_rng, fixed_speckles, &mut img);
    draw_speckles(&mut tex_rng, speckles - fixed_speckles, &mut img);

    draw_pills(&mut img, spec, &params);

    // Lighting wash: a linear luminance ramp whose direction and strength
    // change per photograph. It broadens the intensity histogram without
    // adding meaningful spectral mass.
    let theta: f64 = tex_rng.gen_range(0.0..2.0 * PI);
    let wash: f64 = tex_rng.gen_range(20.0..32.0);
    let (dx, dy) = (theta.cos(), theta.sin());
    for y in 0..CANVAS {
        for x in 0..CANVAS {
            let t = (x as f64 * dx + y as f64 * dy) / CANVAS as f64;
            let delta = wash * 2.0 * (t - 0.5 * (dx + dy));
            let mut p = img.get(x, y);
            for c in p.iter_mut() {
                *c = add_clamped(*c, delta);
            }
            img.set(x, y, p);
        }
    }

    augment(&mut img, aug, sample_seed);
    img
}

fn draw_pills(img: &mut Image, spec: &StripSpec, params: &TextureParams) {
    let (rows, cols) = spec.pill_grid;
    let (a, b) = spec.pill_axes;
    let usable = (CANVAS - 2 * MARGIN) as f64;
    let pitch_x = usable / cols as f64;
    let pitch_y = usable / rows as f64;
    let rim = 3.0;
    // Class-specific emboss ripple: period and depth put a distinctive
    // harmonic signature into the blister spectrum.
    let ripple_period = params.ripple_period;
    let ripple_depth = params.ripple_depth;
    let rim_color = [
        spec.pill_color[0].saturating_add(50),
        spec.pill_color[1].saturating_add(50),
        spec.pill_color[2].saturating_add(50),
    ];
    for row in 0..rows {
        for col in 0..cols {
            let cx = MARGIN as f64 + pitch_x * (col as f64 + 0.5);
            let cy = MARGIN as f64 + pitch_y * (row as f64 + 0.5);
            let x_lo = (cx - a - rim).floor().max(0.0) as usize;
            let x_hi = (cx + a + rim).ceil().min((CANVAS - 1) as f64) as usize;
            let y_lo = (cy - b - rim).floor().max(0.0) as usize;
            let y_hi = (cy + b + rim).ceil().min((CANVAS - 1) as f64) as usize;
            for y in y_lo..=y_hi {
                for x in x_lo..=x_hi {
                    let t = ((x as f64 - cx) / a).powi(2) + ((y as f64 - cy) / b).powi(2);
                    if t <= 1.0 {
                        // Radial shading plus a fine emboss ripple keep
                        // gradient energy across the whole blister
                        // footprint, not just the rim.
                        let ripple = (2.0 * PI * x as f64 / ripple_period).sin()
                            * (2.0 * PI * y as f64 / ripple_period).sin();
                        let shade = (1.0 - 0.3 * t) * (1.0 + ripple_depth * ripple);
                        let px = [
                            (spec.pill_color[0] as f64 * shade).round().clamp(0.0, 255.0) as u8,
                            (spec.pill_color[1] as f64 * shade).round().clamp(0.0, 255.0) as u8,
                            (spec.pill_color[2] as f64 * shade).round().clamp(0.0, 255.0) as u8,
                        ];
                        img.set(x, y, px);
                    } else {
                        let t_rim =
                            ((x as f64 - cx) / (a + rim)).powi(2) + ((y as f64 - cy) / (b + rim)).powi(2);
                        if t_rim <= 1.0 {
                            img.set(x, y, rim_color);
                        }
                    }
                }
            }
        }
    }
}

fn augment(img: &mut Image, aug: &AugmentSpec, sample_seed: u64) {
    let mut rng = ChaCha8Rng::seed_from_u64(seeds::mix(sample_seed, 0xa46, 0));

    if aug.brightness_jitter > 0.0 {
        let u: f64 = rng.gen_range(-1.0..1.0);
        scale_brightness(img, 1.0 + aug.brightness_jitter * u);
    }

    if aug.noise_sigma > 0.0 {
        for px in img.pixels_mut() {
            for c in px.iter_mut() {
                *c = add_clamped(*c, aug.noise_sigma * box_muller(&mut rng));
            }
        }
    }

    if aug.scale_jitter > 0.0 {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let s = 1.0 + aug.scale_jitter * u;
        let nw = ((CANVAS as f64 * s).round() as usize).max(1);
        let nh = ((CANVAS as f64 * s).round() as usize).max(1);
        let scaled = imaging::resize(img, nw, nh).expect("positive dims");
        *img = imaging::resize(&scaled, CANVAS, CANVAS).expect("positive dims");
    }

    if aug.hue_jitter > 0.0 {
        let u: f64 = rng.gen_range(-1.0..1.0);
        let degrees = aug.hue_jitter * u;
        for px in img.pixels_mut() {
            *px = rotate_hue(*px, degrees);
        }
    }
}

/// Render `per_class` samples for every spec, write them as PNG files
/// under `out_dir`, and write a `path,label` manifest. Returns the
/// manifest path. Fully deterministic per (specs, aug, seed).
pub fn write_dataset(
    specs: &[StripSpec],
    labels: &[String],
    per_class: usize,
    aug: &AugmentSpec,
    seed: u64,
    out_dir: &Path,
) -> Result<PathBuf> {
    if specs.len() != labels.len() {
        return Err(Error::LengthMismatch {
            expected: specs.len(),
            got: labels.len(),
        });
    }
    fs::create_dir_all(out_dir)?;
    let manifest_path = out_dir.join("manifest.csv");
    let mut manifest = String::from("path,label\n");
    for (class, (spec, label)) in specs.iter().zip(labels).enumerate() {
        for i in 0..per_class {
            let sample_seed = seeds::mix(seed, class as u64, i as u64);
            let img = render_sample(spec, aug, sample_seed);
            let name = format!("{label}_{i:03}.png");
            imaging::save_png(&img, &out_dir.join(&name))?;
            manifest.push_str(&name);
            manifest.push(',');
            manifest.push_str(label);
            manifest.push('\n');
        }
    }
    let mut f = fs::File::create(&manifest_path)?;
    f.write_all(manifest.as_bytes())?;
    Ok(manifest_path)
}

/// Generate `n_classes` specs with [`gen_class_specs`] and write the full
/// dataset (n_classes × per_class images plus manifest).
pub fn gen_dataset(
    n_classes: usize,
    per_class: usize,
    aug: &AugmentSpec,
    seed: u64,
    out_dir: &Path,
) -> Result<PathBuf> {
    let specs = gen_class_specs(n_classes, seed)?;
    let labels: Vec<String> = (0..n_classes).map(class_label).collect();
    write_dataset(&specs, &labels, per_class, aug, seed, out_dir)
}
