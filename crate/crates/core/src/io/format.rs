//! CSV and JSON instance files.
//!
//! CSV has one row per subject: `subject,t0,t1,…` with category labels in
//! the cells. Optional lines before the header fix the category list and
//! sigma; without them, categories are taken in order of first appearance
//! (all of `t0` first, then `t1`, …) and sigma follows that order.
//!
//! ```text
//! # categories: low,mid,high
//! # sigma: low,mid,high
//! subject,t0,t1
//! ann,low,mid
//! bob,mid,low
//! ```
//!
//! `# sigma: none` stores an instance without an ordering.
//!
//! JSON holds the same data with tests listed timestamp by timestamp:
//! `{"version": 1, "subjects": [...], "categories": [...], "sigma": [...],
//! "tests": [["low", "mid"], ["mid", "low"]]}`. `categories` and `sigma`
//! are optional as in CSV.

use std::collections::HashMap;
use std::io::Read;
use std::path::Path;

use serde::{Deserialize, Serialize};

use super::IoError;
use crate::model::{OpdInstance, RawInstance, SigmaOrdering};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InstanceFormat {
    Csv,
    Json,
}

impl InstanceFormat {
    /// Guess from the extension; anything but `.json` is CSV.
    pub fn from_path(path: &Path) -> Self {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("json") => Self::Json,
            _ => Self::Csv,
        }
    }
}

/// Assigns indices to labels, either from a fixed list or on first sight.
struct Labels {
    index: HashMap<String, usize>,
    order: Vec<String>,
    fixed: bool,
}

impl Labels {
    fn new(fixed: Option<Vec<String>>) -> Result<Self, IoError> {
        let mut labels = Labels { index: HashMap::new(), order: Vec::new(), fixed: fixed.is_some() };
        for label in fixed.unwrap_or_default() {
            if labels.index.insert(label.clone(), labels.order.len()).is_some() {
                return Err(IoError::Model(crate::model::ModelError::DuplicateCategory(label)));
            }
            labels.order.push(label);
        }
        Ok(labels)
    }

    fn get(&mut self, label: &str) -> Option<usize> {
        if let Some(&i) = self.index.get(label) {
            return Some(i);
        }
        if self.fixed {
            return None;
        }
        self.index.insert(label.to_string(), self.order.len());
        self.order.push(label.to_string());
        Some(self.order.len() - 1)
    }
}

enum SigmaSpec {
    Default,
    None,
    Labels(Vec<String>),
}

fn resolve_sigma(spec: SigmaSpec, labels: &Labels) -> Result<Option<Vec<usize>>, IoError> {
    match spec {
        SigmaSpec::Default => Ok(Some((0..labels.order.len()).collect())),
        SigmaSpec::None => Ok(None),
        SigmaSpec::Labels(names) => names
            .iter()
            .map(|name| labels.index.get(name).copied().ok_or_else(|| IoError::UnknownSigmaLabel(name.clone())))
            .collect::<Result<Vec<_>, _>>()
            .map(Some),
    }
}

fn split_list(text: &str) -> Result<Vec<String>, IoError> {
    let mut reader =
        csv::ReaderBuilder::new().has_headers(false).trim(csv::Trim::All).from_reader(text.trim().as_bytes());
    match reader.records().next() {
        Some(record) => Ok(record
            .map_err(|e| IoError::Csv { row: 0, message: e.to_string() })?
            .iter()
            .map(str::to_string)
            .collect()),
        None => Ok(Vec::new()),
    }
}

fn load_csv(text: &str) -> Result<OpdInstance, IoError> {
    let mut categories = None;
    let mut sigma = SigmaSpec::Default;
    let mut skipped = 0;
    for line in text.lines() {
        let Some(directive) = line.trim_start().strip_prefix('#') else { break };
        skipped += 1;
        if let Some((key, value)) = directive.split_once(':') {
            match key.trim() {
                "categories" => categories = Some(split_list(value)?),
                "sigma" if value.trim() == "none" => sigma = SigmaSpec::None,
                "sigma" => sigma = SigmaSpec::Labels(split_list(value)?),
                _ => {}
            }
        }
    }
    let body: String = text.lines().skip(skipped).map(|l| format!("{l}\n")).collect();
    let line_of = |record_line: u64| record_line as usize + skipped;

    let mut reader = csv::ReaderBuilder::new().flexible(true).trim(csv::Trim::All).from_reader(body.as_bytes());
    let header = reader.headers().map_err(|e| IoError::Csv { row: 1 + skipped, message: e.to_string() })?.clone();
    if header.is_empty() || header.get(0) != Some("subject") {
        return Err(IoError::BadHeader {
            column: 1,
            expected: "subject".into(),
            found: header.get(0).unwrap_or("").into(),
        });
    }
    for (j, name) in header.iter().enumerate().skip(1) {
        let expected = format!("t{}", j - 1);
        if name != expected {
            return Err(IoError::BadHeader { column: j + 1, expected, found: name.into() });
        }
    }
    let timestamps = header.len() - 1;

    let mut rows = Vec::new();
    for record in reader.records() {
        let record = record
            .map_err(|e| IoError::Csv { row: e.position().map_or(0, |p| line_of(p.line())), message: e.to_string() })?;
        let line = record.position().map_or(0, |p| line_of(p.line()));
        if record.len() != header.len() {
            return Err(IoError::Ragged { row: line, expected: header.len(), found: record.len() });
        }
        if let Some(column) = record.iter().position(str::is_empty) {
            return Err(IoError::MissingCell { row: line, column: column + 1 });
        }
        rows.push((line, record));
    }

    let mut labels = Labels::new(categories)?;
    let mut tests = vec![Vec::with_capacity(rows.len()); timestamps];
    for (i, test) in tests.iter_mut().enumerate() {
        for (line, record) in &rows {
            let label = &record[i + 1];
            let c = labels.get(label).ok_or_else(|| IoError::UnknownCategory {
                row: *line,
                column: i + 2,
                label: label.to_string(),
            })?;
            test.push(c);
        }
    }
    let sigma = resolve_sigma(sigma, &labels)?;
    let raw = RawInstance {
        subjects: rows.iter().map(|(_, r)| r[0].to_string()).collect(),
        categories: labels.order,
        tests,
        sigma,
    };
    Ok(OpdInstance::try_from(raw)?)
}

#[derive(Debug, Serialize, Deserialize)]
struct JsonInstance {
    #[serde(default = "default_version")]
    version: u32,
    subjects: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    categories: Option<Vec<String>>,
    /// Labels lowest first; `null` for no ordering, absent for file order.
    #[serde(default, skip_serializing_if = "Option::is_none", with = "sigma_field")]
    sigma: Option<Option<Vec<String>>>,
    tests: Vec<Vec<String>>,
}

fn default_version() -> u32 {
    FORMAT_VERSION
}

mod sigma_field {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(value: &Option<Option<Vec<String>>>, s: S) -> Result<S::Ok, S::Error> {
        value.as_ref().expect("skipped when absent").serialize(s)
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<Option<Vec<String>>>, D::Error> {
        Option::<Vec<String>>::deserialize(d).map(Some)
    }
}

fn load_json(text: &str) -> Result<OpdInstance, IoError> {
    let file: JsonInstance = serde_json::from_str(text).map_err(|e| IoError::Json {
        line: e.line(),
        column: e.column(),
        message: e.to_string(),
    })?;
    if file.version != FORMAT_VERSION {
        return Err(IoError::UnsupportedVersion(file.version));
    }
    let mut labels = Labels::new(file.categories)?;
    let mut tests = Vec::with_capacity(file.tests.len());
    for (i, row) in file.tests.iter().enumerate() {
        let mut test = Vec::with_capacity(row.len());
        for (j, label) in row.iter().enumerate() {
            let c = labels.get(label).ok_or_else(|| IoError::UnknownCategory {
                row: i + 1,
                column: j + 1,
                label: label.clone(),
            })?;
            test.push(c);
        }
        tests.push(test);
    }
    let sigma = match file.sigma {
        None => SigmaSpec::Default,
        Some(None) => SigmaSpec::None,
        Some(Some(names)) => SigmaSpec::Labels(names),
    };
    let sigma = resolve_sigma(sigma, &labels)?;
    Ok(OpdInstance::try_from(RawInstance { subjects: file.subjects, categories: labels.order, tests, sigma })?)
}

pub fn load_instance_str(text: &str, format: InstanceFormat) -> Result<OpdInstance, IoError> {
    match format {
        InstanceFormat::Csv => load_csv(text),
        InstanceFormat::Json => load_json(text),
    }
}

pub fn load_instance<R: Read>(mut reader: R, format: InstanceFormat) -> Result<OpdInstance, IoError> {
    let mut text = String::new();
    reader.read_to_string(&mut text)?;
    load_instance_str(&text, format)
}

fn join_csv(fields: &[String]) -> String {
    let mut writer = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
    writer.write_record(fields).expect("writing to memory");
    let bytes = writer.into_inner().expect("writing to memory");
    String::from_utf8(bytes).expect("labels are UTF-8").trim_end().to_string()
}

fn sigma_labels(inst: &OpdInstance, sigma: &SigmaOrdering) -> Vec<String> {
    sigma.order().iter().map(|&c| inst.categories().label(c).to_string()).collect()
}

pub fn save_instance(inst: &OpdInstance, format: InstanceFormat) -> String {
    let categories: Vec<String> = inst.categories().labels().to_vec();
    match format {
        InstanceFormat::Csv => {
            let mut out = format!("# categories: {}\n", join_csv(&categories));
            match inst.sigma() {
                Some(sigma) => out.push_str(&format!("# sigma: {}\n", join_csv(&sigma_labels(inst, sigma)))),
                None => out.push_str("# sigma: none\n"),
            }
            let mut writer = csv::Writer::from_writer(Vec::new());
            let header: Vec<String> = std::iter::once("subject".to_string())
                .chain((0..inst.num_timestamps()).map(|i| format!("t{i}")))
                .collect();
            writer.write_record(&header).expect("writing to memory");
            for (s, name) in inst.subjects().iter().enumerate() {
                let row = std::iter::once(name.as_str())
                    .chain(inst.tests().iter().map(|test| inst.categories().label(test[s])));
                writer.write_record(row).expect("writing to memory");
            }
            out.push_str(std::str::from_utf8(&writer.into_inner().expect("writing to memory")).expect("UTF-8"));
            out
        }
        InstanceFormat::Json => {
            let file = JsonInstance {
                version: FORMAT_VERSION,
                subjects: inst.subjects().to_vec(),
                categories: Some(categories),
                sigma: Some(inst.sigma().map(|s| sigma_labels(inst, s))),
                tests: inst
                    .tests()
                    .iter()
                    .map(|test| test.iter().map(|&c| inst.categories().label(c).to_string()).collect())
                    .collect(),
            };
            let mut text = serde_json::to_string_pretty(&file).expect("plain data serializes");
            text.push('\n');
            text
        }
    }
}

/// Reads from a path, or stdin for `-`.
pub fn load_instance_path(path: &str, format: Option<InstanceFormat>) -> Result<OpdInstance, IoError> {
    let format = format.unwrap_or_else(|| InstanceFormat::from_path(Path::new(path)));
    if path == "-" {
        load_instance(std::io::stdin().lock(), format)
    } else {
        load_instance(std::fs::File::open(path)?, format)
    }
}
