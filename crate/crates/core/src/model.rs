//! Raw and processed record schemas.

use std::collections::HashMap;
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use csv::StringRecord;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::tabular::{cell, Table};

/// Hesperia's forgery marks. Unmarked records are genuine.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Authenticity {
    #[default]
    Genuine,
    False,
    Suspicious,
}

impl FromStr for Authenticity {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.trim().to_uppercase().as_str() {
            "" | "GENUINE" | "AUTENTICA" | "AUTÉNTICA" => Ok(Authenticity::Genuine),
            "FALSA" | "FALSO" | "FALSE" => Ok(Authenticity::False),
            "SUSPICIOUS" | "SOSPECHOSA" | "SOSPECHOSO" | "DUDOSA" => Ok(Authenticity::Suspicious),
            other => Err(format!("unknown authenticity mark `{other}`")),
        }
    }
}

impl fmt::Display for Authenticity {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Authenticity::Genuine => "GENUINE",
            Authenticity::False => "FALSA",
            Authenticity::Suspicious => "SUSPICIOUS",
        })
    }
}

/// One harvested inscription: the fourteen string attributes plus the
/// authenticity mark.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct RawRecord {
    pub site: String,
    pub ref_mlh: String,
    pub ref_hesperia: String,
    pub text: String,
    pub municipality: Option<String>,
    pub province: Option<String>,
    pub material: Option<String>,
    pub medium: Option<String>,
    pub writing_direction: Option<String>,
    pub technique: Option<String>,
    pub signary: Option<String>,
    pub dual_system: Option<String>,
    pub separators: Option<String>,
    pub dating: Option<String>,
    pub authenticity: Authenticity,
}

/// Column names of the raw export, in their canonical order.
pub const RAW_COLUMNS: [&str; 15] = [
    "site",
    "refMLH",
    "refHesperia",
    "text",
    "municipality",
    "province",
    "material",
    "medium",
    "writing_direction",
    "technique",
    "signary",
    "dual_system",
    "separators",
    "dating",
    "authenticity",
];

/// Schema problems on a single record. An empty list means the record is valid.
pub fn validate_record(record: &RawRecord) -> Vec<String> {
    let mut violations = Vec::new();
    if record.ref_hesperia.trim().is_empty() {
        violations.push("ref_hesperia empty".to_string());
    }
    violations
}

/// Corpus-level checks: per-record violations plus `ref_hesperia` uniqueness.
/// Each entry is `(record index, violation)`.
pub fn validate_corpus(records: &[RawRecord]) -> Vec<(usize, String)> {
    let mut seen: HashMap<&str, usize> = HashMap::new();
    let mut out = Vec::new();
    for (i, record) in records.iter().enumerate() {
        out.extend(validate_record(record).into_iter().map(|v| (i, v)));
        let key = record.ref_hesperia.trim();
        if key.is_empty() {
            continue;
        }
        if let Some(first) = seen.get(key) {
            out.push((i, format!("ref_hesperia `{key}` duplicates record {first}")));
        } else {
            seen.insert(key, i);
        }
    }
    out
}

fn optional(value: &str) -> Option<String> {
    let trimmed = value.trim();
    (!trimmed.is_empty()).then(|| trimmed.to_string())
}

/// Reads a raw export (comma- or tab-separated, header row). Column order is
/// free; `authenticity` may be omitted. Unknown authenticity marks are
/// returned as warnings and the record is treated as genuine.
pub fn read_raw_records(path: &Path) -> Result<(Vec<RawRecord>, Vec<String>)> {
    let table = Table::read(path)?;
    let mut idx = [0usize; 14];
    for (slot, name) in idx.iter_mut().zip(RAW_COLUMNS.iter()) {
        *slot = table.column(name, path)?;
    }
    let auth = table.optional_column("authenticity");

    let mut warnings = Vec::new();
    let records = table
        .rows
        .iter()
        .enumerate()
        .map(|(row_no, row)| {
            let get = |i: usize| cell(row, idx[i]);
            let authenticity = match auth.map(|a| cell(row, a)) {
                None => Authenticity::Genuine,
                Some(mark) => mark.parse().unwrap_or_else(|e| {
                    warnings.push(format!("{}: row {}: {e}", path.display(), row_no + 1));
                    Authenticity::Genuine
                }),
            };
            RawRecord {
                site: get(0).trim().to_string(),
                ref_mlh: get(1).trim().to_string(),
                ref_hesperia: get(2).trim().to_string(),
                text: get(3).to_string(),
                municipality: optional(get(4)),
                province: optional(get(5)),
                material: optional(get(6)),
                medium: optional(get(7)),
                writing_direction: optional(get(8)),
                technique: optional(get(9)),
                signary: optional(get(10)),
                dual_system: optional(get(11)),
                separators: optional(get(12)),
                dating: optional(get(13)),
                authenticity,
            }
        })
        .collect();
    Ok((records, warnings))
}

/// Writes raw records in the canonical 15-column layout.
pub fn write_raw_records(records: &[RawRecord], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    writer
        .write_record(RAW_COLUMNS)
        .map_err(|e| Error::csv(path, e))?;
    for r in records {
        let opt = |v: &Option<String>| v.clone().unwrap_or_default();
        writer
            .write_record([
                r.site.clone(),
                r.ref_mlh.clone(),
                r.ref_hesperia.clone(),
                r.text.clone(),
                opt(&r.municipality),
                opt(&r.province),
                opt(&r.material),
                opt(&r.medium),
                opt(&r.writing_direction),
                opt(&r.technique),
                opt(&r.signary),
                opt(&r.dual_system),
                opt(&r.separators),
                opt(&r.dating),
                match r.authenticity {
                    Authenticity::Genuine => String::new(),
                    other => other.to_string(),
                },
            ])
            .map_err(|e| Error::csv(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// Header of the emitted dataset.
pub const OUTPUT_COLUMNS: [&str; 36] = [
    "site",
    "refMLH",
    "refHesperia",
    "text",
    "municipality",
    "province",
    "material",
    "medium",
    "writing_direction",
    "technique",
    "signary",
    "dual_system",
    "separators",
    "dating",
    "municipality_latitude",
    "municipality_longitude",
    "province_latitude",
    "province_longitude",
    "dating_min",
    "dating_max",
    "dating_mean",
    "dating_width",
    "clean_text",
    "material_cat",
    "material_cat_code",
    "medium_cat",
    "medium_cat_code",
    "writing_direction_cat_code",
    "technique_cat",
    "technique_cat_code",
    "signary_cat",
    "signary_cat_code",
    "dual_system_cat",
    "dual_system_cat_code",
    "separators_cat",
    "separators_cat_code",
];

/// One output row. Field order matches [`OUTPUT_COLUMNS`]; `writing_direction`
/// carries a code but no category-name column.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct ProcessedRecord {
    pub site: String,
    pub ref_mlh: String,
    pub ref_hesperia: String,
    pub text: String,
    pub municipality: Option<String>,
    pub province: Option<String>,
    pub material: Option<String>,
    pub medium: Option<String>,
    pub writing_direction: Option<String>,
    pub technique: Option<String>,
    pub signary: Option<String>,
    pub dual_system: Option<String>,
    pub separators: Option<String>,
    pub dating: Option<String>,
    pub municipality_latitude: Option<f64>,
    pub municipality_longitude: Option<f64>,
    pub province_latitude: Option<f64>,
    pub province_longitude: Option<f64>,
    pub dating_min: Option<f64>,
    pub dating_max: Option<f64>,
    pub dating_mean: Option<f64>,
    pub dating_width: Option<f64>,
    pub clean_text: String,
    pub material_cat: Option<String>,
    pub material_cat_code: Option<u32>,
    pub medium_cat: Option<String>,
    pub medium_cat_code: Option<u32>,
    pub writing_direction_cat_code: Option<u32>,
    pub technique_cat: Option<String>,
    pub technique_cat_code: Option<u32>,
    pub signary_cat: Option<String>,
    pub signary_cat_code: Option<u32>,
    pub dual_system_cat: Option<String>,
    pub dual_system_cat_code: Option<u32>,
    pub separators_cat: Option<String>,
    pub separators_cat_code: Option<u32>,
}

/// Years always carry a decimal point (`-125.0`); fractional years keep
/// their shortest exact representation (`-75.25`).
pub fn format_year(value: f64) -> String {
    if value.fract() == 0.0 {
        format!("{value:.1}")
    } else {
        format!("{value}")
    }
}

fn text_cell(v: &Option<String>) -> String {
    v.clone().unwrap_or_default()
}

fn coord_cell(v: Option<f64>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

fn year_cell(v: Option<f64>) -> String {
    v.map(format_year).unwrap_or_default()
}

fn code_cell(v: Option<u32>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

impl ProcessedRecord {
    pub fn to_row(&self) -> [String; 36] {
        [
            self.site.clone(),
            self.ref_mlh.clone(),
            self.ref_hesperia.clone(),
            self.text.clone(),
            text_cell(&self.municipality),
            text_cell(&self.province),
            text_cell(&self.material),
            text_cell(&self.medium),
            text_cell(&self.writing_direction),
            text_cell(&self.technique),
            text_cell(&self.signary),
            text_cell(&self.dual_system),
            text_cell(&self.separators),
            text_cell(&self.dating),
            coord_cell(self.municipality_latitude),
            coord_cell(self.municipality_longitude),
            coord_cell(self.province_latitude),
            coord_cell(self.province_longitude),
            year_cell(self.dating_min),
            year_cell(self.dating_max),
            year_cell(self.dating_mean),
            year_cell(self.dating_width),
            self.clean_text.clone(),
            text_cell(&self.material_cat),
            code_cell(self.material_cat_code),
            text_cell(&self.medium_cat),
            code_cell(self.medium_cat_code),
            code_cell(self.writing_direction_cat_code),
            text_cell(&self.technique_cat),
            code_cell(self.technique_cat_code),
            text_cell(&self.signary_cat),
            code_cell(self.signary_cat_code),
            text_cell(&self.dual_system_cat),
            code_cell(self.dual_system_cat_code),
            text_cell(&self.separators_cat),
            code_cell(self.separators_cat_code),
        ]
    }

    pub fn from_row(row: &StringRecord) -> std::result::Result<Self, String> {
        if row.len() != OUTPUT_COLUMNS.len() {
            return Err(format!(
                "expected {} fields, found {}",
                OUTPUT_COLUMNS.len(),
                row.len()
            ));
        }
        let s = |i: usize| row[i].to_string();
        let text = |i: usize| optional_exact(&row[i]);
        let num = |i: usize| -> std::result::Result<Option<f64>, String> {
            let v = &row[i];
            if v.is_empty() {
                Ok(None)
            } else {
                v.parse()
                    .map(Some)
                    .map_err(|_| format!("{}: not a number: `{v}`", OUTPUT_COLUMNS[i]))
            }
        };
        let code = |i: usize| -> std::result::Result<Option<u32>, String> {
            let v = &row[i];
            if v.is_empty() {
                Ok(None)
            } else {
                v.parse()
                    .map(Some)
                    .map_err(|_| format!("{}: not a code: `{v}`", OUTPUT_COLUMNS[i]))
            }
        };
        Ok(ProcessedRecord {
            site: s(0),
            ref_mlh: s(1),
            ref_hesperia: s(2),
            text: s(3),
            municipality: text(4),
            province: text(5),
            material: text(6),
            medium: text(7),
            writing_direction: text(8),
            technique: text(9),
            signary: text(10),
            dual_system: text(11),
            separators: text(12),
            dating: text(13),
            municipality_latitude: num(14)?,
            municipality_longitude: num(15)?,
            province_latitude: num(16)?,
            province_longitude: num(17)?,
            dating_min: num(18)?,
            dating_max: num(19)?,
            dating_mean: num(20)?,
            dating_width: num(21)?,
            clean_text: s(22),
            material_cat: text(23),
            material_cat_code: code(24)?,
            medium_cat: text(25),
            medium_cat_code: code(26)?,
            writing_direction_cat_code: code(27)?,
            technique_cat: text(28),
            technique_cat_code: code(29)?,
            signary_cat: text(30),
            signary_cat_code: code(31)?,
            dual_system_cat: text(32),
            dual_system_cat_code: code(33)?,
            separators_cat: text(34),
            separators_cat_code: code(35)?,
        })
    }
}

fn optional_exact(value: &str) -> Option<String> {
    (!value.is_empty()).then(|| value.to_string())
}
