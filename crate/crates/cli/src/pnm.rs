//! Netpbm graymaps and pixmaps: P2, P3 (ASCII) and P5, P6 (binary), with
//! 8-bit or 16-bit (big-endian) samples.

use gksmooth::Field;

use crate::error::FormatError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Encoding {
    Ascii,
    Binary,
}

/// Interleaved samples, row-major, `channels` per pixel.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Image {
    pub width: usize,
    pub height: usize,
    pub channels: usize,
    pub maxval: u16,
    pub samples: Vec<u16>,
}

impl Image {
    pub fn new(width: usize, height: usize, channels: usize, maxval: u16, samples: Vec<u16>) -> Result<Self, String> {
        if width == 0 || height == 0 {
            return Err("empty image".into());
        }
        if channels != 1 && channels != 3 {
            return Err(format!("{channels} channels; only 1 or 3 are supported"));
        }
        if maxval == 0 {
            return Err("maxval 0".into());
        }
        if samples.len() != width * height * channels {
            return Err(format!(
                "{} samples for a {width}x{height}x{channels} image",
                samples.len()
            ));
        }
        if let Some(bad) = samples.iter().find(|&&s| s > maxval) {
            return Err(format!("sample {bad} exceeds maxval {maxval}"));
        }
        Ok(Self {
            width,
            height,
            channels,
            maxval,
            samples,
        })
    }

    /// Channel `c` as a `[height, width]` field scaled by `1 / maxval`.
    pub fn channel(&self, c: usize) -> Field {
        let m = self.maxval as f64;
        let values = self
            .samples
            .iter()
            .skip(c)
            .step_by(self.channels)
            .map(|&s| s as f64 / m)
            .collect();
        Field::from_values(vec![self.height, self.width], values).expect("validated dims")
    }

    /// Quantizes a 2-D field with values in `[0, 1]` to a graymap. Values
    /// outside the range are clamped.
    pub fn from_field(field: &Field, maxval: u16) -> Result<Self, String> {
        if field.rank() != 2 {
            return Err(format!("graymap needs a 2-D field, got rank {}", field.rank()));
        }
        let m = maxval as f64;
        let samples = field
            .values()
            .iter()
            .map(|&v| (v.clamp(0.0, 1.0) * m).round() as u16)
            .collect();
        Self::new(field.dims()[1], field.dims()[0], 1, maxval, samples)
    }

    /// Like [`Image::from_field`] after mapping `[min, max]` of the data
    /// onto `[0, 1]`. For previews of data that is not already in range.
    pub fn preview(field: &Field, maxval: u16) -> Result<Self, String> {
        let lo = field.values().iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = field.values().iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let span = if hi > lo { hi - lo } else { 1.0 };
        let scaled = field.map(|v| (v - lo) / span).map_err(|e| e.to_string())?;
        Self::from_field(&scaled, maxval)
    }

    pub fn encode(&self, encoding: Encoding) -> Vec<u8> {
        let magic = match (self.channels, encoding) {
            (1, Encoding::Ascii) => "P2",
            (1, Encoding::Binary) => "P5",
            (_, Encoding::Ascii) => "P3",
            (_, Encoding::Binary) => "P6",
        };
        let mut out = format!("{magic}\n{} {}\n{}\n", self.width, self.height, self.maxval).into_bytes();
        match encoding {
            Encoding::Binary if self.maxval < 256 => out.extend(self.samples.iter().map(|&s| s as u8)),
            Encoding::Binary => {
                for s in &self.samples {
                    out.extend_from_slice(&s.to_be_bytes());
                }
            }
            Encoding::Ascii => {
                let per_row = self.width * self.channels;
                for row in self.samples.chunks(per_row) {
                    let line: Vec<String> = row.iter().map(u16::to_string).collect();
                    out.extend_from_slice(line.join(" ").as_bytes());
                    out.push(b'\n');
                }
            }
        }
        out
    }
}

/// Thresholdless binarization: channel 0 divided by maxval.
pub fn binarize_first_channel(img: &Image) -> Field {
    img.channel(0)
}

struct Cursor<'a> {
    bytes: &'a [u8],
    pos: usize,
}

impl Cursor<'_> {
    fn skip_space_and_comments(&mut self) {
        while self.pos < self.bytes.len() {
            match self.bytes[self.pos] {
                b'#' => {
                    while self.pos < self.bytes.len() && self.bytes[self.pos] != b'\n' {
                        self.pos += 1;
                    }
                }
                c if c.is_ascii_whitespace() => self.pos += 1,
                _ => break,
            }
        }
    }

    /// Next decimal token and its offset.
    fn number(&mut self, what: &str) -> Result<(u64, u64), FormatError> {
        self.skip_space_and_comments();
        let start = self.pos;
        while self.pos < self.bytes.len() && self.bytes[self.pos].is_ascii_digit() {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(match self.bytes.get(start) {
                None => FormatError::new(start as u64, format!("unexpected end of file reading {what}")),
                Some(c) => FormatError::new(start as u64, format!("expected {what}, found {:?}", *c as char)),
            });
        }
        std::str::from_utf8(&self.bytes[start..self.pos])
            .unwrap()
            .parse()
            .map(|v| (v, start as u64))
            .map_err(|_| FormatError::new(start as u64, format!("{what} out of range")))
    }
}

pub fn decode(bytes: &[u8]) -> Result<Image, FormatError> {
    if bytes.len() < 2 || bytes[0] != b'P' {
        return Err(FormatError::new(0, "not a netpbm file"));
    }
    let (channels, encoding) = match bytes[1] {
        b'2' => (1, Encoding::Ascii),
        b'3' => (3, Encoding::Ascii),
        b'5' => (1, Encoding::Binary),
        b'6' => (3, Encoding::Binary),
        c => return Err(FormatError::new(1, format!("unsupported netpbm type P{}", c as char))),
    };
    let mut cur = Cursor { bytes, pos: 2 };
    let (width, header_at) = cur.number("width")?;
    let (height, _) = cur.number("height")?;
    let (width, height) = (width as usize, height as usize);
    if width == 0 || height == 0 {
        return Err(FormatError::new(header_at, format!("empty image {width}x{height}")));
    }
    let (maxval, maxval_at) = cur.number("maxval")?;
    let maxval = u16::try_from(maxval)
        .ok()
        .filter(|&m| m > 0)
        .ok_or_else(|| FormatError::new(maxval_at, format!("maxval {maxval} outside 1..=65535")))?;
    let count = width
        .checked_mul(height)
        .and_then(|n| n.checked_mul(channels))
        .ok_or_else(|| FormatError::new(header_at, "image dimensions overflow"))?;

    let mut samples = Vec::with_capacity(count.min(1 << 24));
    match encoding {
        Encoding::Ascii => {
            for _ in 0..count {
                let (v, at) = cur.number("sample")?;
                if v > maxval as u64 {
                    return Err(FormatError::new(at, format!("sample {v} exceeds maxval {maxval}")));
                }
                samples.push(v as u16);
            }
        }
        Encoding::Binary => {
            // Exactly one whitespace byte separates the header from the raster.
            match bytes.get(cur.pos) {
                Some(c) if c.is_ascii_whitespace() => cur.pos += 1,
                _ => return Err(FormatError::new(cur.pos as u64, "expected whitespace before raster")),
            }
            let width_bytes = if maxval < 256 { 1 } else { 2 };
            let start = cur.pos;
            let need = count * width_bytes;
            let have = bytes.len() - start;
            if have < need {
                return Err(FormatError::new(
                    bytes.len() as u64,
                    format!("raster truncated: {have} of {need} bytes"),
                ));
            }
            for i in 0..count {
                let at = start + i * width_bytes;
                let v = if width_bytes == 1 {
                    bytes[at] as u16
                } else {
                    u16::from_be_bytes([bytes[at], bytes[at + 1]])
                };
                if v > maxval {
                    return Err(FormatError::new(at as u64, format!("sample {v} exceeds maxval {maxval}")));
                }
                samples.push(v);
            }
        }
    }
    Image::new(width, height, channels, maxval, samples).map_err(|m| FormatError::new(header_at, m))
}
