use std::path::Path;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub const IMAGE_MAGIC: u32 = 0x0000_0803;
pub const LABEL_MAGIC: u32 = 0x0000_0801;
pub const IMAGE_SIDE: usize = 28;
pub const NUM_CLASSES: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Split {
    Train,
    Test,
}

/// How 8-bit pixels become network inputs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum PixelScaling {
    /// `p / 255`.
    Unit,
    /// `(p / 255 - mean) / std`, statistics taken from a training set.
    ZScore { mean: f64, std: f64 },
}

#[derive(Debug, Clone, PartialEq)]
enum Inputs {
    Pixels { bytes: Vec<u8>, scaling: PixelScaling },
    Real(Vec<f64>),
}

/// Samples stored row by row together with integer labels.
#[derive(Debug, Clone, PartialEq)]
pub struct Dataset {
    dim: usize,
    inputs: Inputs,
    labels: Vec<u8>,
    pub split: Split,
}

impl Dataset {
    /// 8-bit images, `dim` bytes per sample.
    pub fn from_pixels(dim: usize, bytes: Vec<u8>, labels: Vec<u8>, split: Split) -> Result<Dataset> {
        check_shape(dim, bytes.len(), &labels)?;
        Ok(Dataset {
            dim,
            inputs: Inputs::Pixels { bytes, scaling: PixelScaling::Unit },
            labels,
            split,
        })
    }

    /// Real-valued samples, `dim` values per sample.
    pub fn from_real(dim: usize, values: Vec<f64>, labels: Vec<u8>, split: Split) -> Result<Dataset> {
        check_shape(dim, values.len(), &labels)?;
        if values.iter().any(|v| !v.is_finite()) {
            return Err(Error::InvalidArgument("non-finite input value".into()));
        }
        Ok(Dataset { dim, inputs: Inputs::Real(values), labels, split })
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    pub fn scaling(&self) -> Option<PixelScaling> {
        match &self.inputs {
            Inputs::Pixels { scaling, .. } => Some(*scaling),
            Inputs::Real(_) => None,
        }
    }

    /// Replaces the pixel scaling; real-valued sets are left unchanged.
    pub fn with_scaling(mut self, s: PixelScaling) -> Dataset {
        if let Inputs::Pixels { scaling, .. } = &mut self.inputs {
            *scaling = s;
        }
        self
    }

    /// Mean and standard deviation of all `p / 255` values.
    pub fn pixel_stats(&self) -> Option<(f64, f64)> {
        let Inputs::Pixels { bytes, .. } = &self.inputs else { return None };
        if bytes.is_empty() {
            return None;
        }
        let n = bytes.len() as f64;
        let mean = bytes.iter().map(|&b| b as f64 / 255.0).sum::<f64>() / n;
        let var = bytes.iter().map(|&b| (b as f64 / 255.0 - mean).powi(2)).sum::<f64>() / n;
        Some((mean, var.sqrt()))
    }

    /// Input value `j` of sample `i`.
    pub fn value(&self, i: usize, j: usize) -> f64 {
        let k = i * self.dim + j;
        match &self.inputs {
            Inputs::Pixels { bytes, scaling } => {
                let x = bytes[k] as f64 / 255.0;
                match scaling {
                    PixelScaling::Unit => x,
                    PixelScaling::ZScore { mean, std } => (x - mean) / std,
                }
            }
            Inputs::Real(v) => v[k],
        }
    }

    /// The selected samples as a `rows.len() x dim` matrix.
    pub fn batch(&self, rows: &[usize]) -> DMatrix<f64> {
        DMatrix::from_fn(rows.len(), self.dim, |r, j| self.value(rows[r], j))
    }

    /// The first `n` samples (or all, if fewer).
    pub fn truncated(mut self, n: usize) -> Dataset {
        let n = n.min(self.len());
        self.labels.truncate(n);
        match &mut self.inputs {
            Inputs::Pixels { bytes, .. } => bytes.truncate(n * self.dim),
            Inputs::Real(v) => v.truncate(n * self.dim),
        }
        self
    }
}

fn check_shape(dim: usize, values: usize, labels: &[u8]) -> Result<()> {
    if dim == 0 || values != dim * labels.len() {
        return Err(Error::InvalidArgument(format!(
            "{values} input values do not form {} samples of dimension {dim}",
            labels.len()
        )));
    }
    if let Some(l) = labels.iter().find(|&&l| l as usize >= NUM_CLASSES) {
        return Err(Error::InvalidArgument(format!("label {l} outside 0..{NUM_CLASSES}")));
    }
    Ok(())
}

struct Reader<'a> {
    path: &'a Path,
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn err(&self, offset: usize, message: impl Into<String>) -> Error {
        Error::Parse { path: self.path.to_path_buf(), offset: offset as u64, message: message.into() }
    }

    fn u32(&mut self, what: &str) -> Result<u32> {
        let end = self.pos + 4;
        let b = self
            .bytes
            .get(self.pos..end)
            .ok_or_else(|| self.err(self.pos, format!("file ends before {what}")))?;
        let v = u32::from_be_bytes(b.try_into().expect("4 bytes"));
        self.pos = end;
        Ok(v)
    }

    fn header(&mut self, magic: u32, dims: usize) -> Result<Vec<usize>> {
        let m = self.u32("magic number")?;
        if m != magic {
            return Err(self.err(0, format!("bad magic 0x{m:08x}, expected 0x{magic:08x}")));
        }
        (0..dims).map(|d| self.u32(&format!("dimension {d}")).map(|v| v as usize)).collect()
    }

    fn body(&self, len: usize) -> Result<&'a [u8]> {
        let have = self.bytes.len() - self.pos;
        if have < len {
            return Err(self.err(self.bytes.len(), format!("truncated: expected {len} data bytes, found {have}")));
        }
        if have > len {
            return Err(self.err(self.pos + len, format!("{} unexpected trailing bytes", have - len)));
        }
        Ok(&self.bytes[self.pos..])
    }
}

fn read(path: &Path) -> Result<Vec<u8>> {
    std::fs::read(path).map_err(|e| Error::io(path, e))
}

/// Parses an IDX image file with dimensions `[N, 28, 28]`.
pub fn parse_idx_images(path: &Path, bytes: &[u8]) -> Result<(usize, Vec<u8>)> {
    let mut r = Reader { path, bytes, pos: 0 };
    let dims = r.header(IMAGE_MAGIC, 3)?;
    if dims[1] != IMAGE_SIDE || dims[2] != IMAGE_SIDE {
        return Err(r.err(8, format!("images are {}x{}, expected {IMAGE_SIDE}x{IMAGE_SIDE}", dims[1], dims[2])));
    }
    let body = r.body(dims[0] * IMAGE_SIDE * IMAGE_SIDE)?;
    Ok((dims[0], body.to_vec()))
}

/// Parses an IDX label file with dimensions `[N]`; labels must be below 10.
pub fn parse_idx_labels(path: &Path, bytes: &[u8]) -> Result<Vec<u8>> {
    let mut r = Reader { path, bytes, pos: 0 };
    let dims = r.header(LABEL_MAGIC, 1)?;
    let body = r.body(dims[0])?;
    if let Some(i) = body.iter().position(|&l| l as usize >= NUM_CLASSES) {
        return Err(r.err(r.pos + i, format!("label {} outside 0..{NUM_CLASSES}", body[i])));
    }
    Ok(body.to_vec())
}

/// Loads a pair of IDX files as a dataset with unit pixel scaling.
pub fn load_idx(images: &Path, labels: &Path, split: Split) -> Result<Dataset> {
    let (n, pixels) = parse_idx_images(images, &read(images)?)?;
    let lab = parse_idx_labels(labels, &read(labels)?)?;
    if lab.len() != n {
        return Err(Error::Parse {
            path: labels.to_path_buf(),
            offset: 4,
            message: format!("{} labels for {n} images in {}", lab.len(), images.display()),
        });
    }
    Dataset::from_pixels(IMAGE_SIDE * IMAGE_SIDE, pixels, lab, split)
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn idx(magic: u32, dims: &[u32], body: &[u8]) -> Vec<u8> {
        let mut v = magic.to_be_bytes().to_vec();
        for d in dims {
            v.extend(d.to_be_bytes());
        }
        v.extend(body);
        v
    }

    #[test]
    fn single_white_image() {
        let p = Path::new("x");
        let (n, px) = parse_idx_images(p, &idx(IMAGE_MAGIC, &[1, 28, 28], &[255; 784])).unwrap();
        let ds = Dataset::from_pixels(784, px, vec![3], Split::Test).unwrap();
        assert_eq!(n, 1);
        assert!((0..784).all(|j| ds.value(0, j) == 1.0));
    }

    #[test]
    fn malformed_files() {
        let p = Path::new("x");
        let offset = |r: Result<Vec<u8>>| match r {
            Err(Error::Parse { offset, .. }) => offset,
            other => panic!("{other:?}"),
        };
        assert_eq!(offset(parse_idx_labels(p, &idx(LABEL_MAGIC, &[2], &[1, 12]))), 9);
        assert_eq!(offset(parse_idx_labels(p, &idx(IMAGE_MAGIC, &[2], &[1, 2]))), 0);
        assert_eq!(offset(parse_idx_labels(p, &idx(LABEL_MAGIC, &[3], &[1, 2]))), 10);
        assert_eq!(offset(parse_idx_labels(p, &[0, 0, 8])), 0);
        let img = parse_idx_images(p, &idx(IMAGE_MAGIC, &[1, 28, 27], &[0; 756]));
        assert!(matches!(img, Err(Error::Parse { offset: 8, .. })));
    }

    #[test]
    fn zscore_scaling() {
        let ds = Dataset::from_pixels(2, vec![0, 255], vec![0], Split::Train).unwrap();
        let (m, s) = ds.pixel_stats().unwrap();
        assert_eq!((m, s), (0.5, 0.5));
        let ds = ds.with_scaling(PixelScaling::ZScore { mean: m, std: s });
        assert_eq!(ds.batch(&[0]).as_slice(), &[-1.0, 1.0]);
    }
}
