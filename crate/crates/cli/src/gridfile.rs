//! `GKSF` binary grids.
//!
//! ```text
//! offset  size     field
//! 0       4        magic "GKSF"
//! 4       1        version (1)
//! 5       1        rank d (1..=255)
//! 6       8*d      dims, u64 LE
//! ..      8*d      spacing, f64 LE
//! ..      4*n      values, f32 LE, row-major (last axis fastest)
//! ```

use gksmooth::Field;

use crate::error::FormatError;

pub const MAGIC: &[u8; 4] = b"GKSF";
pub const VERSION: u8 = 1;

/// Encodes `field`; values are narrowed to `f32`.
pub fn encode(field: &Field) -> Result<Vec<u8>, FormatError> {
    let rank = u8::try_from(field.rank())
        .map_err(|_| FormatError::new(5, format!("rank {} does not fit in one byte", field.rank())))?;
    let mut out = Vec::with_capacity(6 + 16 * field.rank() + 4 * field.len());
    out.extend_from_slice(MAGIC);
    out.push(VERSION);
    out.push(rank);
    for &d in field.dims() {
        out.extend_from_slice(&(d as u64).to_le_bytes());
    }
    for &s in field.spacing() {
        out.extend_from_slice(&s.to_le_bytes());
    }
    for (i, &v) in field.values().iter().enumerate() {
        let narrow = v as f32;
        if !narrow.is_finite() {
            return Err(FormatError::new(
                out.len() as u64,
                format!("value {v} at index {i} overflows f32"),
            ));
        }
        out.extend_from_slice(&narrow.to_le_bytes());
    }
    Ok(out)
}

struct Reader<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl<'a> Reader<'a> {
    fn take(&mut self, n: usize, what: &str) -> Result<&'a [u8], FormatError> {
        let end = self.pos.checked_add(n).filter(|&e| e <= self.bytes.len());
        match end {
            Some(end) => {
                let s = &self.bytes[self.pos..end];
                self.pos = end;
                Ok(s)
            }
            None => Err(FormatError::new(
                self.bytes.len() as u64,
                format!("truncated {what}: need {n} bytes at offset {}", self.pos),
            )),
        }
    }

    fn u64(&mut self, what: &str) -> Result<u64, FormatError> {
        Ok(u64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }

    fn f64(&mut self, what: &str) -> Result<f64, FormatError> {
        Ok(f64::from_le_bytes(self.take(8, what)?.try_into().unwrap()))
    }
}

pub fn decode(bytes: &[u8]) -> Result<Field, FormatError> {
    let mut r = Reader { bytes, pos: 0 };
    if r.take(4, "magic")? != MAGIC {
        return Err(FormatError::new(0, "bad magic, expected GKSF"));
    }
    let version = r.take(1, "version")?[0];
    if version != VERSION {
        return Err(FormatError::new(4, format!("unsupported version {version}")));
    }
    let rank = r.take(1, "rank")?[0] as usize;
    if rank == 0 {
        return Err(FormatError::new(5, "rank 0"));
    }
    let mut dims = Vec::with_capacity(rank);
    let mut count: usize = 1;
    for axis in 0..rank {
        let at = r.pos as u64;
        let d = r.u64("dims")?;
        let d = usize::try_from(d)
            .ok()
            .filter(|&d| d > 0)
            .ok_or_else(|| FormatError::new(at, format!("bad extent {d} on axis {axis}")))?;
        count = count
            .checked_mul(d)
            .ok_or_else(|| FormatError::new(at, "element count overflows"))?;
        dims.push(d);
    }
    let mut spacing = Vec::with_capacity(rank);
    for axis in 0..rank {
        let at = r.pos as u64;
        let s = r.f64("spacing")?;
        if !(s.is_finite() && s > 0.0) {
            return Err(FormatError::new(at, format!("bad spacing {s} on axis {axis}")));
        }
        spacing.push(s);
    }
    let payload_at = r.pos;
    let expected = count.checked_mul(4).unwrap_or(usize::MAX);
    let remaining = bytes.len() - payload_at;
    if remaining != expected {
        return Err(FormatError::new(
            payload_at as u64,
            format!("payload is {remaining} bytes, header implies {count} f32 values ({expected} bytes)"),
        ));
    }
    let mut values = Vec::with_capacity(count);
    for (i, chunk) in bytes[payload_at..].chunks_exact(4).enumerate() {
        let v = f32::from_le_bytes(chunk.try_into().unwrap());
        if !v.is_finite() {
            return Err(FormatError::new((payload_at + 4 * i) as u64, format!("non-finite value {v}")));
        }
        values.push(v as f64);
    }
    Field::new(dims, spacing, values).map_err(|e| FormatError::new(payload_at as u64, e.to_string()))
}
