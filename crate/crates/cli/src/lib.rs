//! File formats and the `gks` command-line front end.
//!
//! Every subcommand is a library call plus (de)serialization; see
//! [`commands`] for the argument surface.

pub mod blur;
pub mod commands;
pub mod csvio;
pub mod error;
pub mod files;
pub mod gridfile;
pub mod pnm;
pub mod svg;

pub use blur::{gaussblur_fwhm, gaussblur_fwhm_with};
pub use error::{CliError, CliResult, FormatError};
pub use pnm::{binarize_first_channel, Image};
