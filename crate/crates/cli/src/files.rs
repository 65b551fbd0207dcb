//! Field files chosen by extension: `.gksf` / `.grid`, `.pgm` / `.pnm`,
//! `.csv`.

use std::fs;
use std::path::Path;

use gksmooth::Field;

use crate::csvio;
use crate::error::{CliError, CliResult};
use crate::gridfile;
use crate::pnm::{self, Encoding, Image};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldFormat {
    Grid,
    Pnm,
    Csv,
}

impl FieldFormat {
    pub fn of(path: &Path) -> CliResult<Self> {
        let ext = path
            .extension()
            .and_then(|e| e.to_str())
            .map(str::to_ascii_lowercase)
            .unwrap_or_default();
        match ext.as_str() {
            "gksf" | "grid" => Ok(FieldFormat::Grid),
            "pgm" | "ppm" | "pnm" => Ok(FieldFormat::Pnm),
            "csv" => Ok(FieldFormat::Csv),
            _ => Err(CliError::Usage(format!(
                "{}: unknown extension, expected .gksf, .grid, .pgm, .ppm, .pnm or .csv",
                path.display()
            ))),
        }
    }

    pub fn extension(self) -> &'static str {
        match self {
            FieldFormat::Grid => "gksf",
            FieldFormat::Pnm => "pgm",
            FieldFormat::Csv => "csv",
        }
    }
}

pub fn read_bytes(path: &Path) -> CliResult<Vec<u8>> {
    fs::read(path).map_err(|e| CliError::io(path, e))
}

pub fn write_bytes(path: &Path, bytes: &[u8]) -> CliResult<()> {
    fs::write(path, bytes).map_err(|e| CliError::io(path, e))
}

pub fn read_image(path: &Path) -> CliResult<Image> {
    pnm::decode(&read_bytes(path)?).map_err(|e| CliError::malformed(path, e))
}

pub fn load_field(path: &Path) -> CliResult<Field> {
    let format = FieldFormat::of(path)?;
    let bytes = read_bytes(path)?;
    let malformed = |e| CliError::malformed(path, e);
    match format {
        FieldFormat::Grid => gridfile::decode(&bytes).map_err(malformed),
        FieldFormat::Csv => csvio::field_from_csv(&bytes).map_err(malformed),
        FieldFormat::Pnm => {
            let img = pnm::decode(&bytes).map_err(malformed)?;
            if img.channels != 1 {
                return Err(CliError::Usage(format!(
                    "{}: {}-channel image; use `gks binarize` to take the first channel",
                    path.display(),
                    img.channels
                )));
            }
            Ok(img.channel(0))
        }
    }
}

/// Writes `field`. Graymaps are 16-bit with values clamped to `[0, 1]`.
pub fn save_field(path: &Path, field: &Field) -> CliResult<()> {
    let bytes = match FieldFormat::of(path)? {
        FieldFormat::Grid => gridfile::encode(field).map_err(|e| CliError::malformed(path, e))?,
        FieldFormat::Csv => csvio::field_to_csv(field),
        FieldFormat::Pnm => Image::from_field(field, u16::MAX)
            .map_err(|m| CliError::Usage(format!("{}: {m}", path.display())))?
            .encode(Encoding::Binary),
    };
    write_bytes(path, &bytes)
}
