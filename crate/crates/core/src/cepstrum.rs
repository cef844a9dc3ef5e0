//! 2-D cepstral feature extraction: per-plane 2-D FFT, logarithmic
//! magnitude compression, pooled uniform-width binning of all three
//! channels, a 1-D DCT over the bin frequencies, and truncation to the
//! leading coefficients.

use std::f64::consts::PI;

use num_complex::Complex64;
use rustfft::FftPlanner;

use crate::classify::{FeatureVector, Method};
use crate::error::{Error, Result};
use crate::imaging::{self, Image, Plane};

/// Complex-valued plane, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct ComplexPlane {
    width: usize,
    height: usize,
    data: Vec<Complex64>,
}

impl ComplexPlane {
    pub fn new(width: usize, height: usize, data: Vec<Complex64>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        if data.len() != width * height {
            return Err(Error::LengthMismatch {
                expected: width * height,
                got: data.len(),
            });
        }
        Ok(Self {
            width,
            height,
            data,
        })
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> Complex64 {
        self.data[y * self.width + x]
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }
}

/// Normalized histogram of the pooled log-magnitude population.
#[derive(Debug, Clone, PartialEq)]
pub struct BinVector {
    counts: Vec<f64>,
    edges: (f64, f64),
}

impl BinVector {
    /// Per-bin frequencies; they sum to 1.
    pub fn counts(&self) -> &[f64] {
        &self.counts
    }

    /// Lower and upper bound of the binned value range.
    pub fn edges(&self) -> (f64, f64) {
        self.edges
    }

    pub fn len(&self) -> usize {
        self.counts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.counts.is_empty()
    }
}

/// Cepstral extraction parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct CepstrumConfig {
    /// Working size images are resized to before the transform.
    pub resize_dims: (usize, usize),
    /// Number of uniform-width bins the pooled log-magnitudes fall into.
    pub bin_count: usize,
    /// Number of leading DCT coefficients kept as the feature vector.
    pub coeff_count: usize,
}

impl Default for CepstrumConfig {
    fn default() -> Self {
        Self {
            resize_dims: (imaging::CANONICAL_SIZE, imaging::CANONICAL_SIZE),
            bin_count: 128,
            coeff_count: 20,
        }
    }
}

impl CepstrumConfig {
    pub fn validate(&self) -> Result<()> {
        if self.resize_dims.0 == 0 || self.resize_dims.1 == 0 {
            return Err(Error::InvalidDimensions {
                width: self.resize_dims.0,
                height: self.resize_dims.1,
            });
        }
        if self.bin_count < 2 {
            return Err(Error::InvalidBinCount(self.bin_count));
        }
        if self.coeff_count == 0 || self.coeff_count > self.bin_count {
            return Err(Error::InvalidConfig(format!(
                "coefficient count {} must satisfy 1 <= K <= bin count {}",
                self.coeff_count, self.bin_count
            )));
        }
        Ok(())
    }
}

fn transpose(width: usize, height: usize, data: &[Complex64]) -> Vec<Complex64> {
    let mut out = vec![Complex64::default(); data.len()];
    for y in 0..height {
        for x in 0..width {
            out[x * height + y] = data[y * width + x];
        }
    }
    out
}

/// Forward 2-D DFT with 1/(M·N) normalization:
/// F(k,l) = (1/(M·N)) Σₓ Σᵧ f(x,y)·e^(−i2π(kx/M + ly/N)), with k over rows
/// (height M) and l over columns (width N). Arbitrary sizes are supported.
pub fn fft2d(p: &Plane) -> Result<ComplexPlane> {
    let (w, h) = (p.width(), p.height());
    if w == 0 || h == 0 || p.data().is_empty() {
        return Err(Error::EmptyPlane);
    }
    let mut data: Vec<Complex64> = p.data().iter().map(|&v| Complex64::new(v, 0.0)).collect();

    let mut planner = FftPlanner::new();
    let row_fft = planner.plan_fft_forward(w);
    let mut scratch = vec![Complex64::default(); row_fft.get_inplace_scratch_len()];
    for row in data.chunks_exact_mut(w) {
        row_fft.process_with_scratch(row, &mut scratch);
    }

    let mut cols = transpose(w, h, &data);
    let col_fft = planner.plan_fft_forward(h);
    scratch.resize(col_fft.get_inplace_scratch_len(), Complex64::default());
    for col in cols.chunks_exact_mut(h) {
        col_fft.process_with_scratch(col, &mut scratch);
    }
    let mut out = transpose(h, w, &cols);

    let scale = 1.0 / (w as f64 * h as f64);
    for v in &mut out {
        *v *= scale;
    }
    ComplexPlane::new(w, h, out)
}

/// Per-entry ln(1 + |z|); defined at zero magnitude.
pub fn log_magnitude(c: &ComplexPlane) -> Plane {
    let data = c.data().iter().map(|z| z.norm().ln_1p()).collect();
    Plane::new(c.width(), c.height(), data).expect("complex plane dims are valid")
}

/// Pool the values of the three planes into one population and count them
/// into `bins` uniform-width bins spanning [0, population max], top bin
/// closed above. Counts are normalized to frequencies summing to 1. An
/// all-zero population puts frequency 1 in bin 0.
pub fn bin_values(r: &Plane, g: &Plane, b: &Plane, bins: usize) -> Result<BinVector> {
    if bins < 2 {
        return Err(Error::InvalidBinCount(bins));
    }
    if r.width() != g.width()
        || r.height() != g.height()
        || r.width() != b.width()
        || r.height() != b.height()
    {
        return Err(Error::DimensionMismatch {
            expected: r.data().len(),
            got: g.data().len().max(b.data().len()),
        });
    }
    let pooled = r.data().iter().chain(g.data()).chain(b.data());
    let max = pooled.clone().fold(0.0f64, |m, &v| m.max(v));
    let total = (r.data().len() + g.data().len() + b.data().len()) as f64;

    let mut counts = vec![0.0f64; bins];
    if max == 0.0 {
        counts[0] = 1.0;
        return Ok(BinVector {
            counts,
            edges: (0.0, 0.0),
        });
    }
    for &v in pooled {
        let idx = ((v / max) * bins as f64).floor() as usize;
        counts[idx.min(bins - 1)] += 1.0;
    }
    for c in &mut counts {
        *c /= total;
    }
    Ok(BinVector {
        counts,
        edges: (0.0, max),
    })
}

/// Orthonormal DCT-II:
/// F(u) = Λ(u)·√(2/N)·Σᵢ f(i)·cos(πu(2i+1)/(2N)), Λ(0)=1/√2, Λ(u>0)=1.
///
/// Computed through a size-N FFT of the even/odd reordered input, which
/// keeps this path independent of the direct cosine-sum definition.
pub fn dct1d(input: &[f64]) -> Result<Vec<f64>> {
    let n = input.len();
    if n == 0 {
        return Err(Error::EmptyVector);
    }
    if n == 1 {
        return Ok(vec![input[0]]);
    }

    // Even indices in order, then odd indices reversed.
    let mut reordered = Vec::with_capacity(n);
    for i in (0..n).step_by(2) {
        reordered.push(Complex64::new(input[i], 0.0));
    }
    for i in (1..n).step_by(2).rev() {
        reordered.push(Complex64::new(input[i], 0.0));
    }

    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    fft.process(&mut reordered);

    let mut out = Vec::with_capacity(n);
    for (u, spectrum) in reordered.iter().enumerate() {
        let twiddle = Complex64::from_polar(1.0, -PI * u as f64 / (2.0 * n as f64));
        let unnormalized = (twiddle * spectrum).re;
        let scale = if u == 0 {
            (1.0 / n as f64).sqrt()
        } else {
            (2.0 / n as f64).sqrt()
        };
        out.push(unnormalized * scale);
    }
    Ok(out)
}

/// Full cepstral pipeline: resize, split planes, per-plane FFT and
/// log-magnitude, pooled binning, DCT, truncate to the leading
/// coefficients.
pub fn cepstral_features(img: &Image, cfg: &CepstrumConfig) -> Result<FeatureVector> {
    cfg.validate()?;
    let resized = imaging::resize(img, cfg.resize_dims.0, cfg.resize_dims.1)?;
    let (r, g, b) = imaging::split_planes(&resized);
    let lr = log_magnitude(&fft2d(&r)?);
    let lg = log_magnitude(&fft2d(&g)?);
    let lb = log_magnitude(&fft2d(&b)?);
    let bins = bin_values(&lr, &lg, &lb, cfg.bin_count)?;
    let coeffs = dct1d(bins.counts())?;
    Ok(FeatureVector {
        method: Method::Cepstrum,
        values: coeffs[..cfg.coeff_count].to_vec(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};

    fn random_plane(w: usize, h: usize, seed: u64) -> Plane {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        let data = (0..w * h).map(|_| rng.gen_range(0.0..255.0)).collect();
        Plane::new(w, h, data).unwrap()
    }

    /// Naive O(M²N²) double-sum DFT with the same 1/(M·N) normalization.
    fn naive_dft(p: &Plane) -> Vec<Complex64> {
        let (w, h) = (p.width(), p.height());
        let mut out = vec![Complex64::default(); w * h];
        for k in 0..h {
            for l in 0..w {
                let mut acc = Complex64::default();
                for y in 0..h {
                    for x in 0..w {
                        let phase =
                            -2.0 * PI * (k as f64 * y as f64 / h as f64 + l as f64 * x as f64 / w as f64);
                        acc += p.get(x, y) * Complex64::from_polar(1.0, phase);
                    }
                }
                out[k * w + l] = acc / (w as f64 * h as f64);
            }
        }
        out
    }

    /// Naive O(N²) cosine-sum orthonormal DCT-II.
    fn naive_dct(input: &[f64]) -> Vec<f64> {
        let n = input.len();
        let mut out = Vec::with_capacity(n);
        for u in 0..n {
            let lambda = if u == 0 { 1.0 / 2.0f64.sqrt() } else { 1.0 };
            let mut acc = 0.0;
            for (i, &v) in input.iter().enumerate() {
                acc += v * (PI * u as f64 * (2.0 * i as f64 + 1.0) / (2.0 * n as f64)).cos();
            }
            out.push(lambda * (2.0 / n as f64).sqrt() * acc);
        }
        out
    }

    #[test]
    fn fft_constant_plane_is_dc_only() {
        let p = Plane::new(2, 2, vec![1.0; 4]).unwrap();
        let f = fft2d(&p).unwrap();
        assert!((f.get(0, 0) - Complex64::new(1.0, 0.0)).norm() < 1e-12);
        for (i, z) in f.data().iter().enumerate() {
            if i != 0 {
                assert!(z.norm() < 1e-12, "non-DC entry {i} = {z}");
            }
        }
    }

    #[test]
    fn fft_delta_is_flat_quarter() {
        let p = Plane::new(2, 2, vec![1.0, 0.0, 0.0, 0.0]).unwrap();
        let f = fft2d(&p).unwrap();
        for z in f.data() {
            assert!((z - Complex64::new(0.25, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn fft_matches_naive_dft_on_random_planes() {
        for (w, h, seed) in [(8, 8, 1), (7, 5, 2), (16, 16, 3), (3, 9, 4), (1, 6, 5)] {
            let p = random_plane(w, h, seed);
            let f = fft2d(&p).unwrap();
            let oracle = naive_dft(&p);
            let max_err = f
                .data()
                .iter()
                .zip(&oracle)
                .map(|(a, b)| (a - b).norm())
                .fold(0.0f64, f64::max);
            assert!(max_err < 1e-9, "{w}x{h}: max err {max_err}");
        }
    }

    #[test]
    fn fft_conjugate_symmetry_on_real_input() {
        let p = random_plane(6, 4, 7);
        let f = fft2d(&p).unwrap();
        let (w, h) = (p.width(), p.height());
        for k in 0..h {
            for l in 0..w {
                let a = f.get(l, k);
                let b = f.get((w - l) % w, (h - k) % h).conj();
                assert!((a - b).norm() < 1e-9);
            }
        }
    }

    #[test]
    fn log_magnitude_known_values() {
        let c = ComplexPlane::new(
            2,
            1,
            vec![
                Complex64::new(0.0, 0.0),
                Complex64::new(std::f64::consts::E - 1.0, 0.0),
            ],
        )
        .unwrap();
        let p = log_magnitude(&c);
        assert_eq!(p.get(0, 0), 0.0);
        assert!((p.get(1, 0) - 1.0).abs() < 1e-12);
    }

    #[test]
    fn log_magnitude_matches_scalar_oracle() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(8);
        let data: Vec<Complex64> = (0..24)
            .map(|_| Complex64::new(rng.gen_range(-9.0..9.0), rng.gen_range(-9.0..9.0)))
            .collect();
        let c = ComplexPlane::new(6, 4, data.clone()).unwrap();
        let p = log_magnitude(&c);
        for (out, z) in p.data().iter().zip(&data) {
            assert_eq!(*out, z.re.hypot(z.im).ln_1p());
        }
    }

    #[test]
    fn bin_all_zero_population_degenerates_to_bin_zero() {
        let z = Plane::zeros(3, 3);
        let b = bin_values(&z, &z, &z, 8).unwrap();
        assert_eq!(b.counts()[0], 1.0);
        assert!(b.counts()[1..].iter().all(|&c| c == 0.0));
        assert_eq!(b.edges(), (0.0, 0.0));
    }

    #[test]
    fn bin_extremes_land_in_first_and_last_bins() {
        // Half the pooled population at 0, half at the max.
        let half = Plane::new(2, 2, vec![0.0, 0.0, 10.0, 10.0]).unwrap();
        let b = bin_values(&half, &half, &half, 4).unwrap();
        assert_eq!(b.counts(), &[0.5, 0.0, 0.0, 0.5]);
        assert_eq!(b.edges(), (0.0, 10.0));
    }

    #[test]
    fn bin_matches_per_value_index_oracle() {
        let r = random_plane(5, 4, 10);
        let g = random_plane(5, 4, 11);
        let b = random_plane(5, 4, 12);
        let bins = 16;
        let out = bin_values(&r, &g, &b, bins).unwrap();

        let pooled: Vec<f64> = r
            .data()
            .iter()
            .chain(g.data())
            .chain(b.data())
            .copied()
            .collect();
        let max = pooled.iter().cloned().fold(0.0f64, f64::max);
        let mut expect = vec![0.0; bins];
        for v in &pooled {
            let mut idx = ((v / max) * bins as f64).floor() as usize;
            if idx >= bins {
                idx = bins - 1;
            }
            expect[idx] += 1.0 / pooled.len() as f64;
        }
        for (a, e) in out.counts().iter().zip(&expect) {
            assert!((a - e).abs() < 1e-12);
        }
    }

    #[test]
    fn bin_rejects_tiny_bin_count() {
        let z = Plane::zeros(2, 2);
        assert!(matches!(
            bin_values(&z, &z, &z, 1),
            Err(Error::InvalidBinCount(1))
        ));
    }

    #[test]
    fn dct_constant_vector_concentrates_in_dc() {
        for n in [1usize, 4, 9, 16] {
            let c = 3.5;
            let out = dct1d(&vec![c; n]).unwrap();
            assert!((out[0] - c * (n as f64).sqrt()).abs() < 1e-9, "n={n}");
            for v in &out[1..] {
                assert!(v.abs() < 1e-9);
            }
        }
    }

    #[test]
    fn dct_empty_input_rejected() {
        assert!(matches!(dct1d(&[]), Err(Error::EmptyVector)));
    }

    #[test]
    fn dct_matches_naive_cosine_sum() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(13);
        for n in [1usize, 2, 3, 5, 8, 16, 33, 64] {
            let v: Vec<f64> = (0..n).map(|_| rng.gen_range(-4.0..4.0)).collect();
            let fast = dct1d(&v).unwrap();
            let slow = naive_dct(&v);
            let max_err = fast
                .iter()
                .zip(&slow)
                .map(|(a, b)| (a - b).abs())
                .fold(0.0f64, f64::max);
            assert!(max_err < 1e-9, "n={n}: max err {max_err}");
        }
    }

    proptest! {
        #[test]
        fn dct_preserves_squared_norm(v in proptest::collection::vec(-10.0f64..10.0, 1..48)) {
            let out = dct1d(&v).unwrap();
            let in_energy: f64 = v.iter().map(|x| x * x).sum();
            let out_energy: f64 = out.iter().map(|x| x * x).sum();
            let tol = 1e-9 * in_energy.max(1.0);
            prop_assert!((in_energy - out_energy).abs() < tol);
        }

        #[test]
        fn bin_frequencies_are_a_distribution(seed in 0u64..1000, bins in 2usize..64) {
            let r = random_plane(4, 3, seed);
            let g = random_plane(4, 3, seed + 1);
            let b = random_plane(4, 3, seed + 2);
            let out = bin_values(&r, &g, &b, bins).unwrap();
            prop_assert!(out.counts().iter().all(|&c| c >= 0.0));
            let sum: f64 = out.counts().iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
        }
    }

    #[test]
    fn features_have_configured_length_and_are_deterministic() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(17);
        let data = (0..32 * 32)
            .map(|_| [rng.gen(), rng.gen(), rng.gen()])
            .collect();
        let img = Image::new(32, 32, data).unwrap();
        let cfg = CepstrumConfig {
            resize_dims: (32, 32),
            ..CepstrumConfig::default()
        };
        let a = cepstral_features(&img, &cfg).unwrap();
        let b = cepstral_features(&img, &cfg).unwrap();
        assert_eq!(a.values.len(), 20);
        assert_eq!(a.method, Method::Cepstrum);
        assert_eq!(a.values, b.values);
    }

    #[test]
    fn config_validation_rejects_bad_counts() {
        let mut cfg = CepstrumConfig::default();
        cfg.coeff_count = 0;
        assert!(cepstral_features(&Image::filled(4, 4, [0, 0, 0]), &cfg).is_err());
        cfg.coeff_count = 300;
        assert!(cepstral_features(&Image::filled(4, 4, [0, 0, 0]), &cfg).is_err());
    }
}
