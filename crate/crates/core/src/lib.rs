//! Turns harvested Palaeohispanic inscription records into a tabular
//! dataset: Leiden-apparatus text normalization, chronology parsing into
//! numeric intervals, offline geocoding and categorical encoding.

pub mod chronology;
pub mod encoding;
pub mod error;
pub mod geo;
pub mod leiden;
pub mod model;
pub mod pipeline;
pub mod synthetic;
pub mod tabular;

pub use chronology::{
    parse_dating, DatingInterval, DatingParser, DatingSummary, Era, ModifierTable, ParsedDating,
    Year,
};
pub use encoding::{Attribute, CategoryMapping, Encoded, MappingSet};
pub use error::{Error, Result};
pub use geo::{Gazetteer, GeoPoint, GeoResolver};
pub use leiden::{normalize_text, Lexicon, NormalizationWarning, Normalizer};
pub use model::{Authenticity, ProcessedRecord, RawRecord, OUTPUT_COLUMNS, RAW_COLUMNS};
pub use pipeline::{
    emit_dataset, read_dataset, run, AuthenticityPolicy, PipelineConfig, Resources, RunReport,
};
