//! Field serialization.
//!
//! Binary layout, all integers and floats little-endian:
//!
//! | bytes          | content                                   |
//! |----------------|-------------------------------------------|
//! | 4              | magic `RFLF`                              |
//! | u32            | format version (1)                        |
//! | u32            | domain: 0 space, 1 frequency              |
//! | u32            | dimension `n`                             |
//! | `n` x u64      | sizes                                     |
//! | `n` x f64      | spacing                                   |
//! | rest           | point-major coefficients: for each lattice point in row-major order (last axis fastest), `2^n` blades, each `re: f64, im: f64` |
//!
//! Frequency fields use the FFT ordering of the lattice. The JSON form holds
//! the same header and a `values` array of per-point `[[re, im], ...]` lists.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use serde::{Deserialize, Serialize};

use rfl_core::{AlgebraSignature, Complex64};

use crate::error::{Error, Result};
use crate::field::{Field, Frequency, Space};
use crate::grid::GridSpec;

pub const MAGIC: [u8; 4] = *b"RFLF";
pub const VERSION: u32 = 1;

/// Ties a field domain marker to its on-disk tag.
pub trait Domain {
    const CODE: u32;
    const NAME: &'static str;
}

impl Domain for Space {
    const CODE: u32 = 0;
    const NAME: &'static str = "space";
}

impl Domain for Frequency {
    const CODE: u32 = 1;
    const NAME: &'static str = "frequency";
}

pub fn to_binary<D: Domain>(field: &Field<D>) -> Vec<u8> {
    let grid = field.grid();
    let n = grid.n();
    let bc = field.sig().blade_count();
    let mut out = Vec::with_capacity(16 + 16 * n + 16 * field.data().len());
    out.extend_from_slice(&MAGIC);
    out.extend_from_slice(&VERSION.to_le_bytes());
    out.extend_from_slice(&D::CODE.to_le_bytes());
    out.extend_from_slice(&(n as u32).to_le_bytes());
    for &s in grid.sizes() {
        out.extend_from_slice(&(s as u64).to_le_bytes());
    }
    for &h in grid.spacing() {
        out.extend_from_slice(&h.to_le_bytes());
    }
    let mut val = vec![Complex64::new(0.0, 0.0); bc];
    for flat in 0..grid.len() {
        field.gather(flat, &mut val);
        for c in &val {
            out.extend_from_slice(&c.re.to_le_bytes());
            out.extend_from_slice(&c.im.to_le_bytes());
        }
    }
    out
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take<const N: usize>(&mut self) -> Result<[u8; N]> {
        let end = self.pos + N;
        let bytes = self
            .buf
            .get(self.pos..end)
            .ok_or_else(|| Error::Format(format!("truncated field data at byte {}", self.pos)))?;
        self.pos = end;
        Ok(bytes.try_into().expect("slice length is N"))
    }

    fn u32(&mut self) -> Result<u32> {
        Ok(u32::from_le_bytes(self.take()?))
    }

    fn u64(&mut self) -> Result<u64> {
        Ok(u64::from_le_bytes(self.take()?))
    }

    fn f64(&mut self) -> Result<f64> {
        Ok(f64::from_le_bytes(self.take()?))
    }
}

pub fn from_binary<D: Domain>(buf: &[u8]) -> Result<Field<D>> {
    let mut cur = Cursor { buf, pos: 0 };
    if cur.take::<4>()? != MAGIC {
        return Err(Error::Format("bad magic, not an rfl field".into()));
    }
    let version = cur.u32()?;
    if version != VERSION {
        return Err(Error::Format(format!("unsupported version {version}")));
    }
    let code = cur.u32()?;
    if code != D::CODE {
        return Err(Error::Format(format!(
            "expected a {} field, found domain code {code}",
            D::NAME
        )));
    }
    let n = cur.u32()? as usize;
    if n == 0 || n > 12 {
        return Err(Error::Format(format!("dimension {n} out of range")));
    }
    let sizes = (0..n)
        .map(|_| {
            let s = cur.u64()?;
            usize::try_from(s).map_err(|_| Error::Format(format!("size {s} too large")))
        })
        .collect::<Result<Vec<_>>>()?;
    let spacing = (0..n).map(|_| cur.f64()).collect::<Result<Vec<_>>>()?;
    let grid = GridSpec::new(sizes, spacing)?;
    let sig = AlgebraSignature::new(n as u32)?;
    let bc = sig.blade_count();
    let expected = grid
        .len()
        .checked_mul(bc * 16)
        .ok_or_else(|| Error::Format("field too large".into()))?;
    if buf.len() - cur.pos != expected {
        return Err(Error::Format(format!(
            "expected {expected} payload bytes, found {}",
            buf.len() - cur.pos
        )));
    }
    let mut field = Field::<D>::zeros(grid, sig)?;
    let mut val = vec![Complex64::new(0.0, 0.0); bc];
    for flat in 0..field.grid().len() {
        for c in val.iter_mut() {
            *c = Complex64::new(cur.f64()?, cur.f64()?);
        }
        field.scatter(flat, &val);
    }
    Ok(field)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct JsonField {
    format: String,
    version: u32,
    domain: String,
    grid: GridSpec,
    values: Vec<Vec<[f64; 2]>>,
}

const JSON_FORMAT: &str = "rfl-field";

pub fn to_json<D: Domain>(field: &Field<D>) -> Result<String> {
    let bc = field.sig().blade_count();
    let mut val = vec![Complex64::new(0.0, 0.0); bc];
    let values = (0..field.grid().len())
        .map(|flat| {
            field.gather(flat, &mut val);
            val.iter().map(|c| [c.re, c.im]).collect()
        })
        .collect();
    let doc = JsonField {
        format: JSON_FORMAT.into(),
        version: VERSION,
        domain: D::NAME.into(),
        grid: field.grid().clone(),
        values,
    };
    serde_json::to_string(&doc).map_err(|e| Error::Format(e.to_string()))
}

pub fn from_json<D: Domain>(text: &str) -> Result<Field<D>> {
    let doc: JsonField = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    if doc.format != JSON_FORMAT || doc.version != VERSION {
        return Err(Error::Format(format!(
            "unsupported field document {} v{}",
            doc.format, doc.version
        )));
    }
    if doc.domain != D::NAME {
        return Err(Error::Format(format!("expected a {} field, found {}", D::NAME, doc.domain)));
    }
    // re-validate: serde bypasses the constructor
    let grid = GridSpec::new(doc.grid.sizes().to_vec(), doc.grid.spacing().to_vec())?;
    let sig = AlgebraSignature::new(grid.n() as u32)?;
    let bc = sig.blade_count();
    if doc.values.len() != grid.len() {
        return Err(Error::Format(format!(
            "expected {} points, found {}",
            grid.len(),
            doc.values.len()
        )));
    }
    let mut field = Field::<D>::zeros(grid, sig)?;
    let mut val = vec![Complex64::new(0.0, 0.0); bc];
    for (flat, point) in doc.values.iter().enumerate() {
        if point.len() != bc {
            return Err(Error::Format(format!(
                "point {flat} has {} blades, expected {bc}",
                point.len()
            )));
        }
        for (dst, c) in val.iter_mut().zip(point) {
            *dst = Complex64::new(c[0], c[1]);
        }
        field.scatter(flat, &val);
    }
    Ok(field)
}

/// Storage format, chosen from the file extension by [`save`] and [`load`]:
/// `.json` is JSON, anything else binary.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldFormat {
    Binary,
    Json,
}

impl FieldFormat {
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => FieldFormat::Json,
            _ => FieldFormat::Binary,
        }
    }
}

pub fn save<D: Domain>(field: &Field<D>, path: &Path) -> Result<()> {
    let bytes = match FieldFormat::from_path(path) {
        FieldFormat::Binary => to_binary(field),
        FieldFormat::Json => to_json(field)?.into_bytes(),
    };
    let mut file = fs::File::create(path).map_err(|e| Error::io(path.display().to_string(), e))?;
    file.write_all(&bytes)
        .map_err(|e| Error::io(path.display().to_string(), e))
}

pub fn load<D: Domain>(path: &Path) -> Result<Field<D>> {
    let mut bytes = Vec::new();
    fs::File::open(path)
        .and_then(|mut f| f.read_to_end(&mut bytes))
        .map_err(|e| Error::io(path.display().to_string(), e))?;
    match FieldFormat::from_path(path) {
        FieldFormat::Binary => from_binary(&bytes),
        FieldFormat::Json => {
            let text = String::from_utf8(bytes).map_err(|e| Error::Format(e.to_string()))?;
            from_json(&text)
        }
    }
}

#[cfg(test)]
mod tests {
    use rfl_core::Multivector;

    use super::*;
    use crate::dft::dft_forward;
    use crate::field::CliffordField;

    fn sample() -> CliffordField {
        let grid = GridSpec::new(vec![4, 6], vec![0.5, 0.25]).unwrap();
        let sig = AlgebraSignature::new(2).unwrap();
        CliffordField::from_fn(grid, sig, |x| {
            let mut mv = Multivector::vector(sig, x)?;
            mv.coeffs_mut()[3] = Complex64::new(x[0] * x[1], -x[0]);
            Ok(mv)
        })
        .unwrap()
    }

    #[test]
    fn binary_roundtrip_is_exact() {
        let f = sample();
        let bytes = to_binary(&f);
        assert_eq!(&bytes[..4], b"RFLF");
        assert_eq!(bytes.len(), 16 + 2 * 16 + 24 * 4 * 16);
        let g: CliffordField = from_binary(&bytes).unwrap();
        assert_eq!(f, g);
    }

    #[test]
    fn binary_layout_is_point_major() {
        let f = sample();
        let bytes = to_binary(&f);
        // second point, blade e1 (index 1), real part
        let off = 48 + 4 * 16 + 16;
        let v = f64::from_le_bytes(bytes[off..off + 8].try_into().unwrap());
        assert_eq!(v, f.value(1).coeffs()[1].re);
    }

    #[test]
    fn json_roundtrip_is_exact() {
        let spec = dft_forward(&sample());
        let text = to_json(&spec).unwrap();
        let back: crate::field::SpectralField = from_json(&text).unwrap();
        assert_eq!(spec, back);
    }

    #[test]
    fn domain_and_truncation_are_checked() {
        let f = sample();
        let bytes = to_binary(&f);
        assert!(matches!(from_binary::<Frequency>(&bytes), Err(Error::Format(_))));
        assert!(matches!(from_binary::<Space>(&bytes[..bytes.len() - 1]), Err(Error::Format(_))));
        let text = to_json(&f).unwrap().replace("\"space\"", "\"frequency\"");
        assert!(from_json::<Space>(&text).is_err());
    }

    #[test]
    fn file_roundtrip_by_extension() {
        let dir = tempfile::tempdir().unwrap();
        let f = sample();
        for name in ["f.bin", "f.json"] {
            let path = dir.path().join(name);
            save(&f, &path).unwrap();
            let g: CliffordField = load(&path).unwrap();
            assert_eq!(f, g);
        }
        let missing = load::<Space>(&dir.path().join("nope.bin"));
        assert_eq!(missing.unwrap_err().exit_code(), 3);
    }
}
