//! Row-major float image in the unit range. PNG round-trips through 8-bit;
//! all in-memory math stays f64 so metric and gradient code is exact.

use std::path::Path;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum ImageError {
    #[error("image dimensions must be positive")]
    EmptyImage,
    #[error("channel count {0} unsupported (expected 1 or 3)")]
    BadChannels(usize),
    #[error("shape mismatch: {0}x{1}x{2} vs {3}x{4}x{5}")]
    ShapeMismatch(usize, usize, usize, usize, usize, usize),
    #[error("io: {0}")]
    Io(#[from] std::io::Error),
    #[error("png: {0}")]
    Png(#[from] image::ImageError),
}

#[derive(Clone, Debug, PartialEq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    /// Row-major, `(y * width + x) * channels + c`, values in [0, 1].
    pub data: Vec<f64>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize) -> Self {
        assert!(width > 0 && height > 0);
        assert!(channels == 1 || channels == 3);
        Image { width, height, channels, data: vec![0.0; width * height * channels] }
    }

    pub fn filled(width: usize, height: usize, channels: usize, v: f64) -> Self {
        let mut img = Self::new(width, height, channels);
        img.data.fill(v);
        img
    }

    #[inline]
    pub fn idx(&self, x: usize, y: usize, c: usize) -> usize {
        (y * self.width + x) * self.channels + c
    }

    #[inline]
    pub fn get(&self, x: usize, y: usize, c: usize) -> f64 {
        self.data[self.idx(x, y, c)]
    }

    #[inline]
    pub fn set(&mut self, x: usize, y: usize, c: usize, v: f64) {
        let i = self.idx(x, y, c);
        self.data[i] = v;
    }

    pub fn same_shape(&self, other: &Image) -> bool {
        self.width == other.width && self.height == other.height && self.channels == other.channels
    }

    pub fn check_same_shape(&self, other: &Image) -> Result<(), ImageError> {
        if self.same_shape(other) {
            Ok(())
        } else {
            Err(ImageError::ShapeMismatch(
                self.width, self.height, self.channels, other.width, other.height, other.channels,
            ))
        }
    }

    /// Average the channels into a single-channel view of the same size.
    pub fn to_gray(&self) -> Image {
        if self.channels == 1 {
            return self.clone();
        }
        let mut out = Image::new(self.width, self.height, 1);
        for y in 0..self.height {
            for x in 0..self.width {
                let mut s = 0.0;
                for c in 0..self.channels {
                    s += self.get(x, y, c);
                }
                out.set(x, y, 0, s / self.channels as f64);
            }
        }
        out
    }

    /// Bilinear sample with edge clamping; (x, y) in pixel coordinates where
    /// integer coordinates land on pixel centers.
    pub fn sample_bilinear(&self, x: f64, y: f64, c: usize) -> f64 {
        let xc = x.clamp(0.0, (self.width - 1) as f64);
        let yc = y.clamp(0.0, (self.height - 1) as f64);
        let x0 = xc.floor() as usize;
        let y0 = yc.floor() as usize;
        let x1 = (x0 + 1).min(self.width - 1);
        let y1 = (y0 + 1).min(self.height - 1);
        let fx = xc - x0 as f64;
        let fy = yc - y0 as f64;
        let v00 = self.get(x0, y0, c);
        let v10 = self.get(x1, y0, c);
        let v01 = self.get(x0, y1, c);
        let v11 = self.get(x1, y1, c);
        v00 * (1.0 - fx) * (1.0 - fy)
            + v10 * fx * (1.0 - fy)
            + v01 * (1.0 - fx) * fy
            + v11 * fx * fy
    }

    pub fn resize_bilinear(&self, width: usize, height: usize) -> Image {
        let mut out = Image::new(width, height, self.channels);
        let sx = self.width as f64 / width as f64;
        let sy = self.height as f64 / height as f64;
        for y in 0..height {
            for x in 0..width {
                // map output pixel center into source coordinates
                let src_x = (x as f64 + 0.5) * sx - 0.5;
                let src_y = (y as f64 + 0.5) * sy - 0.5;
                for c in 0..self.channels {
                    out.set(x, y, c, self.sample_bilinear(src_x, src_y, c));
                }
            }
        }
        out
    }

    /// Axis-aligned crop; the rectangle must lie inside the image.
    pub fn crop(&self, x0: usize, y0: usize, w: usize, h: usize) -> Image {
        assert!(x0 + w <= self.width && y0 + h <= self.height, "crop out of bounds");
        let mut out = Image::new(w, h, self.channels);
        for y in 0..h {
            for x in 0..w {
                for c in 0..self.channels {
                    out.set(x, y, c, self.get(x0 + x, y0 + y, c));
                }
            }
        }
        out
    }

    pub fn mse(&self, other: &Image) -> f64 {
        assert!(self.same_shape(other));
        let n = self.data.len() as f64;
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b) * (a - b))
            .sum::<f64>()
            / n
    }

    pub fn mean_abs_diff(&self, other: &Image) -> f64 {
        assert!(self.same_shape(other));
        let n = self.data.len() as f64;
        self.data
            .iter()
            .zip(other.data.iter())
            .map(|(a, b)| (a - b).abs())
            .sum::<f64>()
            / n
    }

    pub fn to_u8(&self) -> Vec<u8> {
        self.data
            .iter()
            .map(|&v| (v.clamp(0.0, 1.0) * 255.0).round() as u8)
            .collect()
    }

    pub fn from_u8(width: usize, height: usize, channels: usize, bytes: &[u8]) -> Self {
        assert_eq!(bytes.len(), width * height * channels);
        let data = bytes.iter().map(|&b| b as f64 / 255.0).collect();
        Image { width, height, channels, data }
    }

    pub fn save_png(&self, path: &Path) -> Result<(), ImageError> {
        if let Some(dir) = path.parent() {
            std::fs::create_dir_all(dir)?;
        }
        let bytes = self.to_u8();
        match self.channels {
            1 => {
                let buf = image::GrayImage::from_raw(self.width as u32, self.height as u32, bytes)
                    .expect("buffer size checked");
                buf.save(path)?;
            }
            3 => {
                let buf = image::RgbImage::from_raw(self.width as u32, self.height as u32, bytes)
                    .expect("buffer size checked");
                buf.save(path)?;
            }
            c => return Err(ImageError::BadChannels(c)),
        }
        Ok(())
    }

    pub fn load_png(path: &Path) -> Result<Image, ImageError> {
        let img = image::open(path)?;
        match img {
            image::DynamicImage::ImageLuma8(g) => Ok(Image::from_u8(
                g.width() as usize,
                g.height() as usize,
                1,
                g.as_raw(),
            )),
            other => {
                let rgb = other.to_rgb8();
                Ok(Image::from_u8(
                    rgb.width() as usize,
                    rgb.height() as usize,
                    3,
                    rgb.as_raw(),
                ))
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn png_round_trip_is_exact_at_8bit() {
        let dir = tempfile::tempdir().unwrap();
        let mut img = Image::new(9, 5, 1);
        for (i, v) in img.data.iter_mut().enumerate() {
            *v = (i % 256) as f64 / 255.0;
        }
        let p = dir.path().join("t.png");
        img.save_png(&p).unwrap();
        let back = Image::load_png(&p).unwrap();
        assert_eq!(img.to_u8(), back.to_u8());
    }

    #[test]
    fn resize_identity_when_same_size() {
        let mut img = Image::new(8, 8, 1);
        for (i, v) in img.data.iter_mut().enumerate() {
            *v = (i as f64).sin().abs();
        }
        let out = img.resize_bilinear(8, 8);
        for (a, b) in img.data.iter().zip(out.data.iter()) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn bilinear_midpoint_averages() {
        let mut img = Image::new(2, 1, 1);
        img.set(0, 0, 0, 0.0);
        img.set(1, 0, 0, 1.0);
        assert!((img.sample_bilinear(0.5, 0.0, 0) - 0.5).abs() < 1e-12);
    }
}
