//! Reading and writing instances, layouts, tiles and drawings.

mod format;
mod layout_file;
mod render;
mod tile_export;

use thiserror::Error;

use crate::layout::LayoutError;
use crate::model::ModelError;

pub use format::{load_instance, load_instance_path, load_instance_str, save_instance, InstanceFormat, FORMAT_VERSION};
pub use layout_file::LayoutFile;
pub use render::{drawing_spec, render_svg, spec_to_svg, Band, DrawingSpec, RenderOptions, SubjectPath};
pub use tile_export::tile_to_text;

/// Positions are 1-based; the CSV header is row 1.
#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Layout(#[from] LayoutError),
    #[error("row {row}: {message}")]
    Csv { row: usize, message: String },
    #[error("line {line}, column {column}: {message}")]
    Json { line: usize, column: usize, message: String },
    #[error("column {column}: expected header {expected:?}, found {found:?}")]
    BadHeader { column: usize, expected: String, found: String },
    #[error("row {row}: expected {expected} cells, found {found}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("row {row}, column {column}: empty cell")]
    MissingCell { row: usize, column: usize },
    #[error("row {row}, column {column}: unknown category {label:?}")]
    UnknownCategory { row: usize, column: usize, label: String },
    #[error("sigma names unknown category {0:?}")]
    UnknownSigmaLabel(String),
    #[error("unsupported format version {0}")]
    UnsupportedVersion(u32),
}
