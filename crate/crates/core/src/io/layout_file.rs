//! Layout files: `{"version": 1, "pis": [[...], ...], "report": {...}}`.

use serde::{Deserialize, Serialize};

use super::{IoError, FORMAT_VERSION};
use crate::layout::{crossing_report, CrossingReport};
use crate::model::{CombinatorialLayout, OpdInstance};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LayoutFile {
    pub version: u32,
    /// Subject indices per timestamp, lowest position first.
    pub pis: Vec<Vec<usize>>,
    pub report: CrossingReport,
}

impl LayoutFile {
    pub fn new(inst: &OpdInstance, layout: &CombinatorialLayout) -> Result<Self, IoError> {
        Ok(Self { version: FORMAT_VERSION, pis: layout.pis().to_vec(), report: crossing_report(inst, layout)? })
    }

    pub fn to_json(&self) -> String {
        let mut text = serde_json::to_string_pretty(self).expect("plain data serializes");
        text.push('\n');
        text
    }

    pub fn from_json(text: &str) -> Result<Self, IoError> {
        let file: Self = serde_json::from_str(text).map_err(|e| IoError::Json {
            line: e.line(),
            column: e.column(),
            message: e.to_string(),
        })?;
        if file.version != FORMAT_VERSION {
            return Err(IoError::UnsupportedVersion(file.version));
        }
        Ok(file)
    }

    pub fn layout(&self) -> Result<CombinatorialLayout, IoError> {
        Ok(CombinatorialLayout::new(self.pis.clone())?)
    }
}
