use std::fmt;
use std::ops::{Add, Mul, Sub};

use num_rational::Ratio;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::format_year;

/// Exact ratio used for modifier fractions.
pub type Fraction = Ratio<i64>;

/// A year on the historical scale: negative is B.C., and there is no year
/// zero. Held as an exact ratio so that fraction arithmetic and
/// centre/amplitude conversions lose nothing.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Year(Ratio<i64>);

impl Year {
    pub fn new(value: Ratio<i64>) -> Self {
        Year(value)
    }

    pub fn from_int(year: i64) -> Self {
        Year(Ratio::from_integer(year))
    }

    pub fn ratio(self) -> Ratio<i64> {
        self.0
    }

    pub fn to_f64(self) -> f64 {
        self.0.to_f64().expect("year ratios are small")
    }

    /// True for values strictly between -1 and 1, which no historical bound
    /// may take.
    pub fn in_year_zero_gap(self) -> bool {
        self.0.abs() < Ratio::from_integer(1)
    }

    /// Moves a year by `offset` whole years, skipping the absent year zero:
    /// one year after 1 B.C. is A.D. 1.
    pub fn shift_years(self, offset: i64) -> Self {
        let one = Ratio::from_integer(1);
        let astronomical = if self.0 < Ratio::zero() {
            self.0 + one
        } else {
            self.0
        };
        let shifted = astronomical + Ratio::from_integer(offset);
        Year(if shifted <= Ratio::zero() {
            shifted - one
        } else {
            shifted
        })
    }
}

impl fmt::Display for Year {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&format_year(self.to_f64()))
    }
}

impl Serialize for Year {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_f64(self.to_f64())
    }
}

impl Add for Year {
    type Output = Year;
    fn add(self, rhs: Year) -> Year {
        Year(self.0 + rhs.0)
    }
}

impl Sub for Year {
    type Output = Year;
    fn sub(self, rhs: Year) -> Year {
        Year(self.0 - rhs.0)
    }
}

impl Mul<Fraction> for Year {
    type Output = Year;
    fn mul(self, rhs: Fraction) -> Year {
        Year(self.0 * rhs)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Era {
    BC,
    AD,
}

/// What an interval was built from. Modifiers check it before applying.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum IntervalOrigin {
    Century,
    Year,
    /// Modified, merged or fixed intervals.
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct DatingInterval {
    pub lower: Year,
    pub upper: Year,
    pub origin: IntervalOrigin,
    /// The source fragment the interval came from.
    pub provenance: String,
}

impl DatingInterval {
    pub fn new(
        lower: Year,
        upper: Year,
        origin: IntervalOrigin,
        provenance: impl Into<String>,
    ) -> Result<Self> {
        if lower > upper {
            return Err(Error::Config(format!(
                "interval [{lower}, {upper}] is reversed"
            )));
        }
        if lower.in_year_zero_gap() || upper.in_year_zero_gap() {
            return Err(Error::Config(format!(
                "interval [{lower}, {upper}] has a bound inside the year-zero gap"
            )));
        }
        Ok(DatingInterval {
            lower,
            upper,
            origin,
            provenance: provenance.into(),
        })
    }

    pub fn width(&self) -> Year {
        self.upper - self.lower
    }

    pub fn center(&self) -> Year {
        Year((self.lower.0 + self.upper.0) / Ratio::from_integer(2))
    }

    pub fn contains(&self, other: &DatingInterval) -> bool {
        self.lower <= other.lower && other.upper <= self.upper
    }

    /// Smallest interval covering both.
    pub fn hull_with(&self, other: &DatingInterval) -> DatingInterval {
        let provenance = if self.provenance == other.provenance {
            self.provenance.clone()
        } else {
            format!("{} | {}", self.provenance, other.provenance)
        };
        DatingInterval {
            lower: self.lower.min(other.lower),
            upper: self.upper.max(other.upper),
            origin: IntervalOrigin::Derived,
            provenance,
        }
    }

    pub fn summary(&self) -> DatingSummary {
        DatingSummary {
            min: self.lower,
            max: self.upper,
            mean: self.center(),
            width: self.width(),
        }
    }
}

/// Convex hull of a list of intervals; `None` for an empty list. A single
/// interval comes back unchanged.
pub fn hull(intervals: &[DatingInterval]) -> Option<DatingInterval> {
    let (first, rest) = intervals.split_first()?;
    Some(rest.iter().fold(first.clone(), |acc, iv| acc.hull_with(iv)))
}

/// The four emitted dating values.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct DatingSummary {
    pub min: Year,
    pub max: Year,
    pub mean: Year,
    pub width: Year,
}

impl DatingSummary {
    pub fn to_f64(&self) -> (f64, f64, f64, f64) {
        (
            self.min.to_f64(),
            self.max.to_f64(),
            self.mean.to_f64(),
            self.width.to_f64(),
        )
    }
}

/// Century `c` spans A.D. `[100(c-1)+1, 100c]`; B.C. centuries are the
/// negated mirror of the same span.
pub fn century_to_interval(century: u32, era: Era) -> Result<DatingInterval> {
    if century == 0 {
        return Err(Error::InvalidCentury(0));
    }
    let offset = i64::from(century) - 1;
    let first = 100 * offset + 1;
    let last = 100 * offset + 100;
    let (lower, upper) = match era {
        Era::AD => (first, last),
        Era::BC => (-last, -first),
    };
    let label = format!("s. {} {}", to_roman(century), era_label(era));
    DatingInterval::new(
        Year::from_int(lower),
        Year::from_int(upper),
        IntervalOrigin::Century,
        label,
    )
}

pub fn year_to_interval(year: u32, era: Era) -> Result<DatingInterval> {
    if year == 0 {
        return Err(Error::InvalidYear(0));
    }
    let value = match era {
        Era::AD => i64::from(year),
        Era::BC => -i64::from(year),
    };
    DatingInterval::new(
        Year::from_int(value),
        Year::from_int(value),
        IntervalOrigin::Year,
        format!("{year} {}", era_label(era)),
    )
}

fn era_label(era: Era) -> &'static str {
    match era {
        Era::AD => "d.C.",
        Era::BC => "a.C.",
    }
}

pub(crate) fn to_roman(mut n: u32) -> String {
    const TABLE: [(u32, &str); 13] = [
        (1000, "M"),
        (900, "CM"),
        (500, "D"),
        (400, "CD"),
        (100, "C"),
        (90, "XC"),
        (50, "L"),
        (40, "XL"),
        (10, "X"),
        (9, "IX"),
        (5, "V"),
        (4, "IV"),
        (1, "I"),
    ];
    let mut out = String::new();
    for (value, symbol) in TABLE {
        while n >= value {
            out.push_str(symbol);
            n -= value;
        }
    }
    out
}

/// Parses a canonical Roman numeral; non-canonical spellings (`IIII`,
/// `VX`) are rejected.
pub(crate) fn parse_roman(s: &str) -> Option<u32> {
    let digit = |c: char| match c {
        'I' => Some(1),
        'V' => Some(5),
        'X' => Some(10),
        'L' => Some(50),
        'C' => Some(100),
        'D' => Some(500),
        'M' => Some(1000),
        _ => None,
    };
    let values: Vec<u32> = s.chars().map(digit).collect::<Option<_>>()?;
    let mut total = 0;
    for (i, v) in values.iter().enumerate() {
        match values.get(i + 1) {
            Some(next) if next > v => total -= *v as i64,
            _ => total += *v as i64,
        }
    }
    let total = u32::try_from(total).ok().filter(|t| *t > 0)?;
    (to_roman(total) == s).then_some(total)
}
