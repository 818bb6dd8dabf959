//! Consolidation of categorical attributes into canonical categories with
//! stable integer codes taken from a versioned mapping file.

use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::RawRecord;
use crate::tabular::{cell, Table};

const BUILTIN: &str = include_str!("../data/mappings.csv");

/// Raw value marking an attribute's miscellaneous category.
pub const MISC_WILDCARD: &str = "*";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Attribute {
    Material,
    Medium,
    WritingDirection,
    Technique,
    Signary,
    DualSystem,
    Separators,
}

impl Attribute {
    pub const ALL: [Attribute; 7] = [
        Attribute::Material,
        Attribute::Medium,
        Attribute::WritingDirection,
        Attribute::Technique,
        Attribute::Signary,
        Attribute::DualSystem,
        Attribute::Separators,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Attribute::Material => "material",
            Attribute::Medium => "medium",
            Attribute::WritingDirection => "writing_direction",
            Attribute::Technique => "technique",
            Attribute::Signary => "signary",
            Attribute::DualSystem => "dual_system",
            Attribute::Separators => "separators",
        }
    }

    /// Maximum number of final categories per attribute.
    pub fn ceiling(self) -> usize {
        match self {
            Attribute::Material => 12,
            Attribute::Medium => 28,
            Attribute::WritingDirection => 6,
            Attribute::Technique => 10,
            Attribute::Signary => 9,
            Attribute::DualSystem => 3,
            Attribute::Separators => 12,
        }
    }

    pub fn raw_value(self, record: &RawRecord) -> Option<&str> {
        match self {
            Attribute::Material => record.material.as_deref(),
            Attribute::Medium => record.medium.as_deref(),
            Attribute::WritingDirection => record.writing_direction.as_deref(),
            Attribute::Technique => record.technique.as_deref(),
            Attribute::Signary => record.signary.as_deref(),
            Attribute::DualSystem => record.dual_system.as_deref(),
            Attribute::Separators => record.separators.as_deref(),
        }
    }
}

impl fmt::Display for Attribute {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Attribute {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_lowercase().replace([' ', '-'], "_");
        Attribute::ALL
            .into_iter()
            .find(|a| a.name() == key)
            .ok_or_else(|| format!("unknown attribute `{}`", s.trim()))
    }
}

/// Lookup key for raw values: trimmed, whitespace collapsed, upper case.
pub fn fold_value(raw: &str) -> String {
    raw.split_whitespace()
        .collect::<Vec<_>>()
        .join(" ")
        .to_uppercase()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum EncodeStatus {
    Absent,
    Mapped,
    Misc,
    Unmapped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Encoded {
    pub category: Option<String>,
    pub code: Option<u32>,
    pub status: EncodeStatus,
}

impl Encoded {
    fn null(status: EncodeStatus) -> Self {
        Encoded {
            category: None,
            code: None,
            status,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CategoryMapping {
    pub attribute: Attribute,
    groups: HashMap<String, String>,
    codes: BTreeMap<String, u32>,
    misc_category: Option<String>,
}

impl CategoryMapping {
    pub fn new(attribute: Attribute) -> Self {
        CategoryMapping {
            attribute,
            groups: HashMap::new(),
            codes: BTreeMap::new(),
            misc_category: None,
        }
    }

    pub fn category_count(&self) -> usize {
        self.codes.len()
    }

    pub fn codes(&self) -> &BTreeMap<String, u32> {
        &self.codes
    }

    /// Folded raw values and the category each maps to.
    pub fn groups(&self) -> impl Iterator<Item = (&str, &str)> {
        self.groups.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn misc_category(&self) -> Option<&str> {
        self.misc_category.as_deref()
    }

    pub fn encode(&self, raw: Option<&str>) -> Encoded {
        let Some(raw) = raw.filter(|r| !r.trim().is_empty()) else {
            return Encoded::null(EncodeStatus::Absent);
        };
        let (category, status) = match self.groups.get(&fold_value(raw)) {
            Some(category) => (category, EncodeStatus::Mapped),
            None => match &self.misc_category {
                Some(misc) => (misc, EncodeStatus::Misc),
                None => return Encoded::null(EncodeStatus::Unmapped),
            },
        };
        Encoded {
            category: Some(category.clone()),
            code: self.codes.get(category).copied(),
            status,
        }
    }

    pub fn decode(&self, code: u32) -> Option<&str> {
        self.codes
            .iter()
            .find(|(_, c)| **c == code)
            .map(|(name, _)| name.as_str())
    }

    fn add(&mut self, raw: &str, category: &str, code: u32) -> std::result::Result<(), String> {
        let category = category.trim().to_string();
        if category.is_empty() {
            return Err("empty category".into());
        }
        match self.codes.get(&category) {
            Some(existing) if *existing != code => {
                return Err(format!(
                    "category `{category}` has codes {existing} and {code}"
                ));
            }
            Some(_) => {}
            None => {
                if let Some((other, _)) = self.codes.iter().find(|(_, c)| **c == code) {
                    return Err(format!("code {code} already used by `{other}`"));
                }
                self.codes.insert(category.clone(), code);
            }
        }
        if raw.trim() == MISC_WILDCARD {
            if let Some(misc) = &self.misc_category {
                if *misc != category {
                    return Err(format!("second miscellaneous category `{category}`"));
                }
            }
            self.misc_category = Some(category);
            return Ok(());
        }
        let key = fold_value(raw);
        if key.is_empty() {
            return Err("empty raw value".into());
        }
        match self.groups.get(&key) {
            Some(existing) if *existing != category => Err(format!(
                "raw value `{key}` mapped to both `{existing}` and `{category}`"
            )),
            _ => {
                self.groups.insert(key, category);
                Ok(())
            }
        }
    }
}

/// One mapping per attribute.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MappingSet {
    mappings: BTreeMap<Attribute, CategoryMapping>,
}

impl MappingSet {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN, Path::new("<builtin mappings>")).expect("builtin mapping is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        Self::from_table(&Table::read(path)?, path)
    }

    pub fn parse(contents: &str, origin: &Path) -> Result<Self> {
        Self::from_table(&Table::parse(contents, origin)?, origin)
    }

    fn from_table(table: &Table, path: &Path) -> Result<Self> {
        let cols = [
            table.column("attribute", path)?,
            table.column("raw_value", path)?,
            table.column("category", path)?,
            table.column("code", path)?,
        ];
        let mut mappings: BTreeMap<Attribute, CategoryMapping> = Attribute::ALL
            .into_iter()
            .map(|a| (a, CategoryMapping::new(a)))
            .collect();
        for (i, row) in table.rows.iter().enumerate() {
            let row_no = i + 1;
            let fail = |message: String| Error::row(path, row_no, message);
            let attribute: Attribute = cell(row, cols[0]).parse().map_err(fail)?;
            let code_text = cell(row, cols[3]).trim();
            let code: u32 = code_text
                .parse()
                .map_err(|_| fail(format!("bad code `{code_text}`")))?;
            mappings
                .get_mut(&attribute)
                .expect("every attribute is present")
                .add(cell(row, cols[1]), cell(row, cols[2]), code)
                .map_err(|m| fail(format!("{attribute}: {m}")))?;
        }
        for mapping in mappings.values() {
            let ceiling = mapping.attribute.ceiling();
            if mapping.category_count() > ceiling {
                return Err(Error::CeilingExceeded {
                    attribute: mapping.attribute,
                    count: mapping.category_count(),
                    ceiling,
                });
            }
        }
        Ok(MappingSet { mappings })
    }

    pub fn get(&self, attribute: Attribute) -> &CategoryMapping {
        &self.mappings[&attribute]
    }

    pub fn encode(&self, attribute: Attribute, raw: Option<&str>) -> Encoded {
        self.get(attribute).encode(raw)
    }

    pub fn iter(&self) -> impl Iterator<Item = &CategoryMapping> {
        self.mappings.values()
    }
}

impl Default for MappingSet {
    fn default() -> Self {
        Self::builtin()
    }
}

/// Distinct final categories observed per attribute over a corpus.
pub fn distinct_categories(
    records: &[RawRecord],
    mappings: &MappingSet,
) -> BTreeMap<Attribute, usize> {
    Attribute::ALL
        .into_iter()
        .map(|attribute| {
            let seen: BTreeSet<String> = records
                .iter()
                .filter_map(|r| mappings.encode(attribute, attribute.raw_value(r)).category)
                .collect();
            (attribute, seen.len())
        })
        .collect()
}

/// Attributes whose observed category count differs from the target
/// final count, as `(attribute, observed, expected)`.
pub fn count_mismatches(observed: &BTreeMap<Attribute, usize>) -> Vec<(Attribute, usize, usize)> {
    Attribute::ALL
        .into_iter()
        .filter_map(|a| {
            let seen = observed.get(&a).copied().unwrap_or(0);
            (seen != a.ceiling()).then_some((a, seen, a.ceiling()))
        })
        .collect()
}
