//! Spanish dating expressions to numeric year intervals.
//!
//! Centuries and single years become intervals, modifier keywords reshape
//! them, and every alternative in an expression is merged into one convex
//! hull, reported as `(min, max, mean, width)`.

mod interval;
mod modifier;
mod parser;

pub use interval::{
    century_to_interval, hull, year_to_interval, DatingInterval, DatingSummary, Era, Fraction,
    IntervalOrigin, Year,
};
pub use modifier::{
    apply_modifier, parse_fraction, ChronologyModifier, ModifierKind, ModifierTable,
};
pub use parser::{parse_dating, DatingParser, ParsedDating, MAX_CENTURY};
