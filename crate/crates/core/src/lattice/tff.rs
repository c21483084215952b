//! TFF1 field files.
//!
//! Line one is a JSON header terminated by `\n`:
//!
//! ```text
//! {"magic":"TFF1","dim":3,"shape":[..],"spacing":[..],"boundary":"open","components":4,"dtype":"f64-le","origin":[..]}
//! ```
//!
//! It is followed by `components * sites` little-endian `f64` values,
//! component-major, sites in row-major order. `origin` is optional on read
//! and defaults to zero.

use std::io::{BufRead, BufReader, Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::field::{ScalarField, VectorField};
use super::grid::{Boundary, GridSpec};
use crate::error::{Result, TopoError};

pub const MAGIC: &str = "TFF1";
pub const DTYPE: &str = "f64-le";

#[derive(Debug, Serialize, Deserialize)]
struct Header {
    magic: String,
    dim: usize,
    shape: Vec<usize>,
    spacing: Vec<f64>,
    boundary: Boundary,
    components: usize,
    dtype: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    origin: Option<Vec<f64>>,
}

/// Grid plus an arbitrary number of per-site components.
#[derive(Debug, Clone, PartialEq)]
pub struct RawField {
    pub grid: GridSpec,
    pub data: Vec<Vec<f64>>,
}

impl RawField {
    pub fn new(grid: GridSpec, data: Vec<Vec<f64>>) -> Result<Self> {
        if data.is_empty() {
            return Err(TopoError::Format("field needs at least one component".into()));
        }
        if let Some(c) = data.iter().find(|c| c.len() != grid.len()) {
            return Err(TopoError::ComponentMismatch { expected: grid.len(), found: c.len() });
        }
        Ok(Self { grid, data })
    }

    pub fn components(&self) -> usize {
        self.data.len()
    }

    pub fn write_to<W: Write>(&self, mut w: W) -> Result<()> {
        let header = Header {
            magic: MAGIC.into(),
            dim: self.grid.dim(),
            shape: self.grid.shape().to_vec(),
            spacing: self.grid.spacing().to_vec(),
            boundary: self.grid.boundary(),
            components: self.components(),
            dtype: DTYPE.into(),
            origin: Some(self.grid.origin().to_vec()),
        };
        serde_json::to_writer(&mut w, &header)?;
        w.write_all(b"\n")?;
        let mut buf = Vec::with_capacity(8 * self.grid.len());
        for comp in &self.data {
            buf.clear();
            for v in comp {
                buf.extend_from_slice(&v.to_le_bytes());
            }
            w.write_all(&buf)?;
        }
        Ok(())
    }

    pub fn read_from<R: Read>(r: R) -> Result<Self> {
        let mut reader = BufReader::new(r);
        let mut line = Vec::new();
        reader.read_until(b'\n', &mut line)?;
        if line.last() != Some(&b'\n') {
            return Err(TopoError::Format("missing header line".into()));
        }
        let header: Header = serde_json::from_slice(&line)?;
        if header.magic != MAGIC {
            return Err(TopoError::Format(format!("bad magic {:?}", header.magic)));
        }
        if header.dtype != DTYPE {
            return Err(TopoError::Format(format!("unsupported dtype {:?}", header.dtype)));
        }
        if header.dim != header.shape.len() {
            return Err(TopoError::Format("dim disagrees with shape".into()));
        }
        let grid = match header.origin {
            Some(o) => GridSpec::with_origin(header.shape, header.spacing, o, header.boundary)?,
            None => GridSpec::new(header.shape, header.spacing, header.boundary)?,
        };
        let n = grid.len();
        let mut bytes = vec![0u8; 8 * n];
        let mut data = Vec::with_capacity(header.components);
        for _ in 0..header.components {
            reader
                .read_exact(&mut bytes)
                .map_err(|e| TopoError::Format(format!("truncated payload: {e}")))?;
            data.push(
                bytes
                    .chunks_exact(8)
                    .map(|c| f64::from_le_bytes(c.try_into().unwrap()))
                    .collect(),
            );
        }
        let mut rest = [0u8; 1];
        if reader.read(&mut rest)? != 0 {
            return Err(TopoError::Format("trailing bytes after payload".into()));
        }
        Self::new(grid, data)
    }

    pub fn save(&self, path: impl AsRef<Path>) -> Result<()> {
        let file = std::fs::File::create(path)?;
        let mut w = std::io::BufWriter::new(file);
        self.write_to(&mut w)?;
        w.flush()?;
        Ok(())
    }

    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        Self::read_from(std::fs::File::open(path)?)
    }

    pub fn to_bytes(&self) -> Vec<u8> {
        let mut out = Vec::new();
        self.write_to(&mut out).expect("writing to a Vec cannot fail");
        out
    }
}

impl From<ScalarField> for RawField {
    fn from(f: ScalarField) -> Self {
        let grid = f.grid().clone();
        Self { grid, data: vec![f.into_values()] }
    }
}

impl From<VectorField> for RawField {
    fn from(f: VectorField) -> Self {
        let grid = f.grid().clone();
        Self { grid, data: f.into_components() }
    }
}

impl TryFrom<RawField> for ScalarField {
    type Error = TopoError;
    fn try_from(raw: RawField) -> Result<Self> {
        if raw.components() != 1 {
            return Err(TopoError::ComponentMismatch { expected: 1, found: raw.components() });
        }
        ScalarField::new(raw.grid, raw.data.into_iter().next().unwrap())
    }
}

impl TryFrom<RawField> for VectorField {
    type Error = TopoError;
    fn try_from(raw: RawField) -> Result<Self> {
        VectorField::new(raw.grid, raw.data)
    }
}
