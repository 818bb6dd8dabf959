use std::path::Path;

use num_rational::Ratio;
use num_traits::{One, Zero};
use serde::Serialize;

use super::interval::{DatingInterval, Fraction, IntervalOrigin, Year};
use crate::error::{Error, Result};
use crate::tabular::{cell, Table};

const BUILTIN: &str = include_str!("../../data/modifiers.csv");

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum ModifierKind {
    /// Restricts a century to a fraction of its span.
    Century,
    /// Widens a single year by whole-year offsets.
    Year,
    /// Stands for a fixed interval on its own.
    Era,
}

/// A dating keyword and how it reshapes an interval.
///
/// For [`ModifierKind::Century`], `low`/`high` are fractions of the century
/// span; `low == None` marks an open lower end ("anterior a finales"), which
/// is clamped to the start of the century. For [`ModifierKind::Year`] they
/// are offsets in years; for [`ModifierKind::Era`] the fixed bounds.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ChronologyModifier {
    pub keywords: Vec<String>,
    pub applies_to: ModifierKind,
    #[serde(serialize_with = "serialize_opt_fraction")]
    pub low: Option<Fraction>,
    #[serde(serialize_with = "serialize_fraction")]
    pub high: Fraction,
}

fn serialize_fraction<S: serde::Serializer>(
    f: &Fraction,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    s.serialize_str(&f.to_string())
}

fn serialize_opt_fraction<S: serde::Serializer>(
    f: &Option<Fraction>,
    s: S,
) -> std::result::Result<S::Ok, S::Error> {
    match f {
        Some(f) => s.serialize_str(&f.to_string()),
        None => s.serialize_str("-inf"),
    }
}

impl ChronologyModifier {
    pub fn new(
        keywords: Vec<String>,
        applies_to: ModifierKind,
        low: Option<Fraction>,
        high: Fraction,
    ) -> Result<Self> {
        let m = ChronologyModifier {
            keywords,
            applies_to,
            low,
            high,
        };
        m.validate()?;
        Ok(m)
    }

    pub fn name(&self) -> &str {
        self.keywords.first().map(String::as_str).unwrap_or("")
    }

    fn invalid(&self, message: impl Into<String>) -> Error {
        Error::InvalidModifier {
            keyword: self.name().to_string(),
            message: message.into(),
        }
    }

    fn validate(&self) -> Result<()> {
        if self.keywords.iter().all(|k| k.trim().is_empty()) {
            return Err(self.invalid("no keywords"));
        }
        match self.applies_to {
            ModifierKind::Century => {
                let low = self.low.unwrap_or_else(Fraction::zero);
                if !(Fraction::zero() <= low && low <= self.high && self.high <= Fraction::one()) {
                    return Err(self.invalid(format!(
                        "century fractions must satisfy 0 <= low <= high <= 1, got [{low}, {}]",
                        self.high
                    )));
                }
            }
            ModifierKind::Year => {
                let low = self
                    .low
                    .ok_or_else(|| self.invalid("year offsets must be finite"))?;
                if !low.is_integer() || !self.high.is_integer() || low > self.high {
                    return Err(self.invalid("year offsets must be whole years with low <= high"));
                }
            }
            ModifierKind::Era => {
                let low = self
                    .low
                    .ok_or_else(|| self.invalid("era bounds must be finite"))?;
                DatingInterval::new(
                    Year::new(low),
                    Year::new(self.high),
                    IntervalOrigin::Derived,
                    "",
                )
                .map_err(|e| self.invalid(e.to_string()))?;
            }
        }
        Ok(())
    }

    /// The fixed interval of an era modifier.
    pub fn era_interval(&self) -> Option<DatingInterval> {
        (self.applies_to == ModifierKind::Era).then(|| DatingInterval {
            lower: Year::new(self.low.expect("validated")),
            upper: Year::new(self.high),
            origin: IntervalOrigin::Derived,
            provenance: self.name().to_string(),
        })
    }
}

/// Applies `modifier` to `interval`. Century fractions map `[a, b]` to
/// `[a + low(b-a), a + high(b-a)]`, which on B.C. spans lands "comienzos" at
/// the chronologically early (most negative) end.
pub fn apply_modifier(
    interval: &DatingInterval,
    modifier: &ChronologyModifier,
) -> Result<DatingInterval> {
    let provenance = format!("{} {}", modifier.name(), interval.provenance);
    match modifier.applies_to {
        ModifierKind::Century => {
            if interval.origin != IntervalOrigin::Century {
                return Err(modifier.invalid("applies to centuries only"));
            }
            let span = interval.upper - interval.lower;
            let low = modifier.low.unwrap_or_else(Fraction::zero);
            DatingInterval::new(
                interval.lower + span * low,
                interval.lower + span * modifier.high,
                IntervalOrigin::Derived,
                provenance,
            )
        }
        ModifierKind::Year => {
            if interval.origin != IntervalOrigin::Year {
                return Err(modifier.invalid("applies to single years only"));
            }
            let low = modifier.low.expect("validated").to_integer();
            let high = modifier.high.to_integer();
            DatingInterval::new(
                interval.lower.shift_years(low),
                interval.upper.shift_years(high),
                IntervalOrigin::Derived,
                provenance,
            )
        }
        ModifierKind::Era => Ok(modifier.era_interval().expect("era modifier")),
    }
}

/// Parses `0.25`, `2/3`, `-10` or `1.0` exactly.
pub fn parse_fraction(s: &str) -> Option<Fraction> {
    let s = s.trim();
    if let Some((num, den)) = s.split_once('/') {
        let num: i64 = num.trim().parse().ok()?;
        let den: i64 = den.trim().parse().ok()?;
        return (den != 0).then(|| Ratio::new(num, den));
    }
    let (negative, digits) = match s.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, s.strip_prefix('+').unwrap_or(s)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part
        .bytes()
        .chain(frac_part.bytes())
        .all(|b| b.is_ascii_digit())
        || frac_part.len() > 12
    {
        return None;
    }
    let scale = 10i64.checked_pow(frac_part.len() as u32)?;
    let whole: i64 = if int_part.is_empty() {
        0
    } else {
        int_part.parse().ok()?
    };
    let frac: i64 = if frac_part.is_empty() {
        0
    } else {
        frac_part.parse().ok()?
    };
    let value = Ratio::new(whole.checked_mul(scale)?.checked_add(frac)?, scale);
    Some(if negative { -value } else { value })
}

/// The set of dating modifiers in use.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ModifierTable {
    modifiers: Vec<ChronologyModifier>,
}

impl ModifierTable {
    pub fn builtin() -> Self {
        Self::parse(BUILTIN, Path::new("<builtin modifiers>"))
            .expect("builtin modifier table is valid")
    }

    pub fn load(path: &Path) -> Result<Self> {
        let table = Table::read(path)?;
        Self::from_table(&table, path)
    }

    pub fn parse(contents: &str, origin: &Path) -> Result<Self> {
        Self::from_table(&Table::parse(contents, origin)?, origin)
    }

    fn from_table(table: &Table, path: &Path) -> Result<Self> {
        let cols = [
            table.column("keywords", path)?,
            table.column("kind", path)?,
            table.column("low", path)?,
            table.column("high", path)?,
        ];
        let mut modifiers = Vec::with_capacity(table.rows.len());
        for (i, row) in table.rows.iter().enumerate() {
            let row_no = i + 1;
            let keywords: Vec<String> = cell(row, cols[0])
                .split('|')
                .map(|k| k.trim().to_string())
                .filter(|k| !k.is_empty())
                .collect();
            let kind = match cell(row, cols[1]).trim().to_lowercase().as_str() {
                "century" | "centuries" => ModifierKind::Century,
                "year" | "years" => ModifierKind::Year,
                "era" => ModifierKind::Era,
                other => return Err(Error::row(path, row_no, format!("unknown kind `{other}`"))),
            };
            let low_text = cell(row, cols[2]).trim();
            let low = if low_text.eq_ignore_ascii_case("-inf") {
                None
            } else {
                Some(parse_fraction(low_text).ok_or_else(|| {
                    Error::row(path, row_no, format!("bad low value `{low_text}`"))
                })?)
            };
            let high_text = cell(row, cols[3]).trim();
            let high = parse_fraction(high_text)
                .ok_or_else(|| Error::row(path, row_no, format!("bad high value `{high_text}`")))?;
            let modifier = ChronologyModifier::new(keywords, kind, low, high)
                .map_err(|e| Error::row(path, row_no, e.to_string()))?;
            modifiers.push(modifier);
        }
        Ok(ModifierTable { modifiers })
    }

    pub fn modifiers(&self) -> &[ChronologyModifier] {
        &self.modifiers
    }

    pub fn find(&self, keyword: &str) -> Option<&ChronologyModifier> {
        let keyword = keyword.to_lowercase();
        self.modifiers
            .iter()
            .find(|m| m.keywords.iter().any(|k| k.to_lowercase() == keyword))
    }
}

impl Default for ModifierTable {
    fn default() -> Self {
        Self::builtin()
    }
}
