//! End-to-end run: ingest, filter, transform and emit.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use rayon::prelude::*;
use serde::Serialize;

use crate::chronology::{DatingParser, ModifierTable};
use crate::encoding::{Attribute, EncodeStatus, MappingSet};
use crate::error::{Error, Result};
use crate::geo::GeoResolver;
use crate::leiden::{Lexicon, Normalizer};
use crate::model::{
    read_raw_records, validate_corpus, Authenticity, ProcessedRecord, RawRecord, OUTPUT_COLUMNS,
};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum AuthenticityPolicy {
    #[default]
    KeepAll,
    DropFalse,
    DropFalseAndSuspicious,
}

impl AuthenticityPolicy {
    pub fn keeps(self, mark: Authenticity) -> bool {
        match self {
            AuthenticityPolicy::KeepAll => true,
            AuthenticityPolicy::DropFalse => mark != Authenticity::False,
            AuthenticityPolicy::DropFalseAndSuspicious => mark == Authenticity::Genuine,
        }
    }
}

#[derive(Debug, Clone)]
pub struct PipelineConfig {
    pub input: PathBuf,
    pub output: PathBuf,
    pub gazetteers: PathBuf,
    pub mappings: PathBuf,
    pub lexicon: PathBuf,
    pub modifiers: PathBuf,
    pub policy: AuthenticityPolicy,
    pub report: Option<PathBuf>,
}

impl PipelineConfig {
    /// Fails on the first input or resource path that does not exist.
    pub fn validate(&self) -> Result<()> {
        let files = [
            ("input", &self.input),
            ("mappings", &self.mappings),
            ("lexicon", &self.lexicon),
            ("modifiers", &self.modifiers),
        ];
        for (what, path) in files {
            if !path.is_file() {
                return Err(Error::Config(format!(
                    "{what} file {} not found",
                    path.display()
                )));
            }
        }
        if !self.gazetteers.is_dir() {
            return Err(Error::Config(format!(
                "gazetteer directory {} not found",
                self.gazetteers.display()
            )));
        }
        Ok(())
    }
}

/// Every read-only resource a record transformation needs.
#[derive(Debug, Clone)]
pub struct Resources {
    pub normalizer: Normalizer,
    pub parser: DatingParser,
    pub geo: GeoResolver,
    pub mappings: MappingSet,
}

impl Resources {
    pub fn load(config: &PipelineConfig) -> Result<Self> {
        Ok(Resources {
            normalizer: Normalizer::new(Lexicon::load(&config.lexicon)?),
            parser: DatingParser::new(ModifierTable::load(&config.modifiers)?),
            geo: GeoResolver::load_dir(&config.gazetteers)?,
            mappings: MappingSet::load(&config.mappings)?,
        })
    }
}

/// Per-record issues collected while transforming.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RecordIssues {
    pub unresolved_places: Vec<String>,
    pub unparsed_dating: Vec<String>,
    pub normalization: Vec<String>,
    pub unmapped_values: Vec<String>,
}

/// Transforms one record: text normalization, chronology, geo, encoding.
pub fn process_record(record: &RawRecord, res: &Resources) -> (ProcessedRecord, RecordIssues) {
    let mut issues = RecordIssues::default();

    let (clean_text, warnings) = res.normalizer.normalize_with_warnings(&record.text);
    issues.normalization = warnings.into_iter().map(|w| w.message).collect();

    let (dating_min, dating_max, dating_mean, dating_width) = match record.dating.as_deref() {
        Some(expr) => {
            let parsed = res.parser.parse(expr);
            issues.unparsed_dating = parsed.unparsed.clone();
            parsed.tuple()
        }
        None => (None, None, None, None),
    };

    let municipality = res.geo.municipality(record.municipality.as_deref());
    if let (None, Some(name)) = (municipality, &record.municipality) {
        issues
            .unresolved_places
            .push(format!("municipality `{name}`"));
    }
    let province = res.geo.province(record.province.as_deref());
    if let (None, Some(name)) = (province, &record.province) {
        issues.unresolved_places.push(format!("province `{name}`"));
    }

    let mut encode = |attribute: Attribute| {
        let raw = attribute.raw_value(record);
        let enc = res.mappings.encode(attribute, raw);
        if enc.status == EncodeStatus::Unmapped {
            issues
                .unmapped_values
                .push(format!("{attribute} `{}`", raw.unwrap_or_default()));
        }
        enc
    };
    let material = encode(Attribute::Material);
    let medium = encode(Attribute::Medium);
    let writing_direction = encode(Attribute::WritingDirection);
    let technique = encode(Attribute::Technique);
    let signary = encode(Attribute::Signary);
    let dual_system = encode(Attribute::DualSystem);
    let separators = encode(Attribute::Separators);

    let processed = ProcessedRecord {
        site: record.site.clone(),
        ref_mlh: record.ref_mlh.clone(),
        ref_hesperia: record.ref_hesperia.clone(),
        text: record.text.clone(),
        municipality: record.municipality.clone(),
        province: record.province.clone(),
        material: record.material.clone(),
        medium: record.medium.clone(),
        writing_direction: record.writing_direction.clone(),
        technique: record.technique.clone(),
        signary: record.signary.clone(),
        dual_system: record.dual_system.clone(),
        separators: record.separators.clone(),
        dating: record.dating.clone(),
        municipality_latitude: municipality.map(|p| p.latitude()),
        municipality_longitude: municipality.map(|p| p.longitude()),
        province_latitude: province.map(|p| p.latitude()),
        province_longitude: province.map(|p| p.longitude()),
        dating_min,
        dating_max,
        dating_mean,
        dating_width,
        clean_text,
        material_cat: material.category,
        material_cat_code: material.code,
        medium_cat: medium.category,
        medium_cat_code: medium.code,
        writing_direction_cat_code: writing_direction.code,
        technique_cat: technique.category,
        technique_cat_code: technique.code,
        signary_cat: signary.category,
        signary_cat_code: signary.code,
        dual_system_cat: dual_system.category,
        dual_system_cat_code: dual_system.code,
        separators_cat: separators.category,
        separators_cat_code: separators.code,
    };
    (processed, issues)
}

/// One issue tied to the record it came from.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ReportEntry {
    pub ref_hesperia: String,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize)]
pub struct RunReport {
    pub records_in: usize,
    pub records_out: usize,
    pub records_filtered: usize,
    pub nulls: BTreeMap<String, usize>,
    pub distinct_categories: BTreeMap<Attribute, usize>,
    pub unresolved_places: Vec<ReportEntry>,
    pub unparsed_dating: Vec<ReportEntry>,
    pub normalization_warnings: Vec<ReportEntry>,
    pub unmapped_values: Vec<ReportEntry>,
    pub input_warnings: Vec<String>,
}

impl RunReport {
    pub fn is_balanced(&self) -> bool {
        self.records_in == self.records_out + self.records_filtered
    }

    fn tally(&mut self, records: &[ProcessedRecord]) {
        self.nulls = OUTPUT_COLUMNS.iter().map(|c| (c.to_string(), 0)).collect();
        for record in records {
            for (column, value) in OUTPUT_COLUMNS.iter().zip(record.to_row()) {
                if value.is_empty() {
                    *self.nulls.get_mut(*column).expect("column present") += 1;
                }
            }
        }
        let cats = |r: &ProcessedRecord, a: Attribute| -> Option<String> {
            match a {
                Attribute::Material => r.material_cat.clone(),
                Attribute::Medium => r.medium_cat.clone(),
                Attribute::WritingDirection => r.writing_direction_cat_code.map(|c| c.to_string()),
                Attribute::Technique => r.technique_cat.clone(),
                Attribute::Signary => r.signary_cat.clone(),
                Attribute::DualSystem => r.dual_system_cat.clone(),
                Attribute::Separators => r.separators_cat.clone(),
            }
        };
        self.distinct_categories = Attribute::ALL
            .into_iter()
            .map(|a| {
                let mut seen: Vec<String> = records.iter().filter_map(|r| cats(r, a)).collect();
                seen.sort();
                seen.dedup();
                (a, seen.len())
            })
            .collect();
    }

    fn absorb(&mut self, reference: &str, issues: RecordIssues) {
        let entries = |list: Vec<String>| {
            list.into_iter().map(|message| ReportEntry {
                ref_hesperia: reference.to_string(),
                message,
            })
        };
        self.unresolved_places
            .extend(entries(issues.unresolved_places));
        self.unparsed_dating.extend(entries(issues.unparsed_dating));
        self.normalization_warnings
            .extend(entries(issues.normalization));
        self.unmapped_values.extend(entries(issues.unmapped_values));
    }

    fn log_warnings(&self) {
        for w in &self.input_warnings {
            log::warn!("{w}");
        }
        let groups = [
            ("unresolved place", &self.unresolved_places),
            ("unparsed dating", &self.unparsed_dating),
            ("normalization", &self.normalization_warnings),
            ("unmapped value", &self.unmapped_values),
        ];
        for (label, entries) in groups {
            for e in entries {
                log::warn!("{}: {label}: {}", e.ref_hesperia, e.message);
            }
        }
    }

    pub fn write_json(&self, path: &Path) -> Result<()> {
        let json = serde_json::to_string_pretty(self).expect("report serializes");
        fs::write(path, json + "\n").map_err(|e| Error::io(path, e))
    }
}

/// Filters and transforms in memory. Output order follows input order.
pub fn transform(
    records: &[RawRecord],
    res: &Resources,
    policy: AuthenticityPolicy,
) -> (Vec<ProcessedRecord>, RunReport) {
    let mut report = RunReport {
        records_in: records.len(),
        ..RunReport::default()
    };
    for (i, message) in validate_corpus(records) {
        report
            .input_warnings
            .push(format!("record {}: {message}", i + 1));
    }
    let kept: Vec<&RawRecord> = records
        .iter()
        .filter(|r| policy.keeps(r.authenticity))
        .collect();
    report.records_filtered = records.len() - kept.len();

    let results: Vec<(ProcessedRecord, RecordIssues)> =
        kept.par_iter().map(|r| process_record(r, res)).collect();
    let mut processed = Vec::with_capacity(results.len());
    for (record, issues) in results {
        report.absorb(&record.ref_hesperia, issues);
        processed.push(record);
    }
    report.records_out = processed.len();
    report.tally(&processed);
    (processed, report)
}

pub fn run(config: &PipelineConfig) -> Result<RunReport> {
    config.validate()?;
    let resources = Resources::load(config)?;
    let (records, input_warnings) = read_raw_records(&config.input)?;
    let (processed, mut report) = transform(&records, &resources, config.policy);
    report.input_warnings.splice(0..0, input_warnings);
    emit_dataset(&processed, &config.output)?;
    if let Some(path) = &config.report {
        report.write_json(path)?;
    }
    report.log_warnings();
    Ok(report)
}

/// Writes the 36-column dataset with a header row; empty cells are nulls.
pub fn emit_dataset(records: &[ProcessedRecord], path: &Path) -> Result<()> {
    let mut writer = csv::Writer::from_path(path).map_err(|e| Error::csv(path, e))?;
    writer
        .write_record(OUTPUT_COLUMNS)
        .map_err(|e| Error::csv(path, e))?;
    for record in records {
        writer
            .write_record(record.to_row())
            .map_err(|e| Error::csv(path, e))?;
    }
    writer.flush().map_err(|e| Error::io(path, e))
}

/// Reads a dataset written by [`emit_dataset`].
pub fn read_dataset(path: &Path) -> Result<Vec<ProcessedRecord>> {
    let contents = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(contents.as_bytes());
    let headers = reader.headers().map_err(|e| Error::csv(path, e))?.clone();
    if headers.iter().ne(OUTPUT_COLUMNS) {
        return Err(Error::row(
            path,
            0,
            "header does not match the output schema",
        ));
    }
    reader
        .records()
        .enumerate()
        .map(|(i, row)| {
            let row = row.map_err(|e| Error::csv(path, e))?;
            ProcessedRecord::from_row(&row).map_err(|m| Error::row(path, i + 1, m))
        })
        .collect()
}

/// Resources shipped with the crate, for tests and one-off use.
pub fn builtin_resources() -> Result<Resources> {
    Ok(Resources {
        normalizer: Normalizer::default(),
        parser: DatingParser::default(),
        geo: GeoResolver::builtin()?,
        mappings: MappingSet::builtin(),
    })
}

/// Directory holding the bundled data files.
pub fn data_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("data")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn policies() {
        use Authenticity::*;
        assert!(AuthenticityPolicy::KeepAll.keeps(False));
        assert!(!AuthenticityPolicy::DropFalse.keeps(False));
        assert!(AuthenticityPolicy::DropFalse.keeps(Suspicious));
        assert!(!AuthenticityPolicy::DropFalseAndSuspicious.keeps(Suspicious));
        assert!(AuthenticityPolicy::DropFalseAndSuspicious.keeps(Genuine));
    }

    #[test]
    fn drop_false_arithmetic() {
        let res = builtin_resources().unwrap();
        let mk = |r: &str, a| RawRecord {
            ref_hesperia: r.into(),
            text: "abc".into(),
            authenticity: a,
            ..RawRecord::default()
        };
        let records = [
            mk("A.1", Authenticity::Genuine),
            mk("A.2", Authenticity::False),
            mk("A.3", Authenticity::Suspicious),
        ];
        let (out, report) = transform(&records, &res, AuthenticityPolicy::DropFalse);
        assert_eq!((report.records_out, report.records_filtered), (2, 1));
        assert!(report.is_balanced());
        assert_eq!(out[1].ref_hesperia, "A.3");
    }
}
