//! Image decoding, resizing, plane splitting, grayscale conversion and
//! median filtering — the preprocessing front end shared by both feature
//! extractors.
//!
//! All operations are pure: same input bytes, same output values.

use std::path::Path;

use image::ImageFormat;

use crate::error::{Error, Result};

/// Canonical working size used before feature extraction. Inputs of
/// arbitrary shape are resized to this square so bin populations and
/// descriptor lengths stay comparable.
pub const CANONICAL_SIZE: usize = 256;

/// 8-bit RGB raster, row-major, channel order fixed R,G,B.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    width: usize,
    height: usize,
    data: Vec<[u8; 3]>,
}

impl Image {
    pub fn new(width: usize, height: usize, data: Vec<[u8; 3]>) -> Result<Self> {
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

    /// Constant-color image. Panics on zero dimensions.
    pub fn filled(width: usize, height: usize, color: [u8; 3]) -> Self {
        assert!(width > 0 && height > 0, "zero image dimensions");
        Self {
            width,
            height,
            data: vec![color; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> [u8; 3] {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, px: [u8; 3]) {
        self.data[y * self.width + x] = px;
    }

    pub fn pixels(&self) -> &[[u8; 3]] {
        &self.data
    }

    pub fn pixels_mut(&mut self) -> &mut [[u8; 3]] {
        &mut self.data
    }
}

/// Real-valued plane, row-major.
#[derive(Debug, Clone, PartialEq)]
pub struct Plane {
    width: usize,
    height: usize,
    data: Vec<f64>,
}

impl Plane {
    pub fn new(width: usize, height: usize, data: Vec<f64>) -> Result<Self> {
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

    pub fn zeros(width: usize, height: usize) -> Self {
        assert!(width > 0 && height > 0, "zero plane dimensions");
        Self {
            width,
            height,
            data: vec![0.0; width * height],
        }
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn height(&self) -> usize {
        self.height
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize) -> f64 {
        self.data[y * self.width + x]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, v: f64) {
        self.data[y * self.width + x] = v;
    }

    pub fn data(&self) -> &[f64] {
        &self.data
    }

    pub fn data_mut(&mut self) -> &mut [f64] {
        &mut self.data
    }
}

/// {0,1}-valued plane, row-major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinaryPlane {
    width: usize,
    height: usize,
    data: Vec<u8>,
}

impl BinaryPlane {
    pub fn new(width: usize, height: usize, data: Vec<u8>) -> Result<Self> {
        if width == 0 || height == 0 {
            return Err(Error::InvalidDimensions { width, height });
        }
        if data.len() != width * height {
            return Err(Error::LengthMismatch {
                expected: width * height,
                got: data.len(),
            });
        }
        if data.iter().any(|&v| v > 1) {
            return Err(Error::InvalidConfig(
                "binary plane values must be 0 or 1".into(),
            ));
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
    pub fn get(&self, x: usize, y: usize) -> u8 {
        self.data[y * self.width + x]
    }

    pub fn data(&self) -> &[u8] {
        &self.data
    }

    pub fn count_ones(&self) -> usize {
        self.data.iter().filter(|&&v| v == 1).count()
    }
}

/// Decode a PNG, JPEG or BMP file into an RGB image.
pub fn load_image(path: &Path) -> Result<Image> {
    if !path.exists() {
        return Err(Error::FileNotFound(path.to_path_buf()));
    }
    let reader = image::ImageReader::open(path)
        .map_err(Error::Io)?
        .with_guessed_format()
        .map_err(Error::Io)?;
    match reader.format() {
        Some(ImageFormat::Png | ImageFormat::Jpeg | ImageFormat::Bmp) => {}
        _ => return Err(Error::UnsupportedFormat(path.to_path_buf())),
    }
    let decoded = reader
        .decode()
        .map_err(|e| Error::CorruptImage(format!("{}: {e}", path.display())))?;
    let rgb = decoded.to_rgb8();
    let (w, h) = (rgb.width() as usize, rgb.height() as usize);
    let data = rgb.pixels().map(|p| [p.0[0], p.0[1], p.0[2]]).collect();
    Image::new(w, h, data)
}

/// Encode an image as PNG.
pub fn save_png(img: &Image, path: &Path) -> Result<()> {
    let mut out = image::RgbImage::new(img.width() as u32, img.height() as u32);
    for y in 0..img.height() {
        for x in 0..img.width() {
            out.put_pixel(x as u32, y as u32, image::Rgb(img.get(x, y)));
        }
    }
    out.save_with_format(path, ImageFormat::Png)
        .map_err(|e| Error::Io(std::io::Error::other(e)))
}

/// Encode an image as BMP.
pub fn save_bmp(img: &Image, path: &Path) -> Result<()> {
    let mut out = image::RgbImage::new(img.width() as u32, img.height() as u32);
    for y in 0..img.height() {
        for x in 0..img.width() {
            out.put_pixel(x as u32, y as u32, image::Rgb(img.get(x, y)));
        }
    }
    out.save_with_format(path, ImageFormat::Bmp)
        .map_err(|e| Error::Io(std::io::Error::other(e)))
}

/// Bilinear resize with pixel-center sampling and round-half-up channel
/// rounding. Identity when the target matches the source dimensions;
/// constant images stay constant at any target size.
pub fn resize(img: &Image, w: usize, h: usize) -> Result<Image> {
    if w == 0 || h == 0 {
        return Err(Error::InvalidDimensions {
            width: w,
            height: h,
        });
    }
    if w == img.width() && h == img.height() {
        return Ok(img.clone());
    }
    let (sw, sh) = (img.width(), img.height());
    let mut data = Vec::with_capacity(w * h);
    for oy in 0..h {
        let sy = ((oy as f64 + 0.5) * sh as f64 / h as f64 - 0.5).clamp(0.0, (sh - 1) as f64);
        let y0 = sy.floor() as usize;
        let y1 = (y0 + 1).min(sh - 1);
        let fy = sy - y0 as f64;
        for ox in 0..w {
            let sx = ((ox as f64 + 0.5) * sw as f64 / w as f64 - 0.5).clamp(0.0, (sw - 1) as f64);
            let x0 = sx.floor() as usize;
            let x1 = (x0 + 1).min(sw - 1);
            let fx = sx - x0 as f64;
            let p00 = img.get(x0, y0);
            let p10 = img.get(x1, y0);
            let p01 = img.get(x0, y1);
            let p11 = img.get(x1, y1);
            let mut px = [0u8; 3];
            for c in 0..3 {
                let top = (1.0 - fx) * p00[c] as f64 + fx * p10[c] as f64;
                let bot = (1.0 - fx) * p01[c] as f64 + fx * p11[c] as f64;
                let v = (1.0 - fy) * top + fy * bot;
                px[c] = (v + 0.5).floor().clamp(0.0, 255.0) as u8;
            }
            data.push(px);
        }
    }
    Image::new(w, h, data)
}

/// Split an RGB image into three real-valued planes (R, G, B).
pub fn split_planes(img: &Image) -> (Plane, Plane, Plane) {
    let n = img.width() * img.height();
    let mut r = Vec::with_capacity(n);
    let mut g = Vec::with_capacity(n);
    let mut b = Vec::with_capacity(n);
    for px in img.pixels() {
        r.push(px[0] as f64);
        g.push(px[1] as f64);
        b.push(px[2] as f64);
    }
    (
        Plane::new(img.width(), img.height(), r).expect("image dims are valid"),
        Plane::new(img.width(), img.height(), g).expect("image dims are valid"),
        Plane::new(img.width(), img.height(), b).expect("image dims are valid"),
    )
}

/// Luminance plane L = 0.299 R + 0.587 G + 0.114 B, unrounded.
pub fn to_gray(img: &Image) -> Plane {
    let data = img
        .pixels()
        .iter()
        .map(|px| 0.299 * px[0] as f64 + 0.587 * px[1] as f64 + 0.114 * px[2] as f64)
        .collect();
    Plane::new(img.width(), img.height(), data).expect("image dims are valid")
}

/// k×k median filter with edge replication at the borders. k must be odd.
pub fn median_filter(p: &Plane, k: usize) -> Result<Plane> {
    if k == 0 || k % 2 == 0 {
        return Err(Error::InvalidKernel(k));
    }
    if k == 1 {
        return Ok(p.clone());
    }
    let (w, h) = (p.width(), p.height());
    let half = (k / 2) as isize;
    let mut out = Vec::with_capacity(w * h);
    let mut window = Vec::with_capacity(k * k);
    for y in 0..h as isize {
        for x in 0..w as isize {
            window.clear();
            for dy in -half..=half {
                let sy = (y + dy).clamp(0, h as isize - 1) as usize;
                for dx in -half..=half {
                    let sx = (x + dx).clamp(0, w as isize - 1) as usize;
                    window.push(p.get(sx, sy));
                }
            }
            window.sort_unstable_by(|a, b| a.partial_cmp(b).expect("finite plane values"));
            out.push(window[window.len() / 2]);
        }
    }
    Plane::new(w, h, out)
}
