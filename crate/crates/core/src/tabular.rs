//! Delimited-file helpers shared by every loader.

use std::fs;
use std::path::Path;

use csv::{ReaderBuilder, StringRecord};

use crate::error::{Error, Result};

/// Picks the delimiter from the first non-comment line: tab, then
/// semicolon, otherwise comma.
pub fn sniff_delimiter(contents: &str) -> u8 {
    let header = contents
        .lines()
        .find(|line| !line.trim_start().starts_with('#') && !line.trim().is_empty())
        .unwrap_or("");
    if header.contains('\t') {
        b'\t'
    } else if header.matches(';').count() > header.matches(',').count() {
        b';'
    } else {
        b','
    }
}

/// A parsed delimited file: header plus data rows, with `#` comment lines
/// skipped. Row numbers are 1-based file lines of data (header excluded).
pub struct Table {
    pub headers: StringRecord,
    pub rows: Vec<StringRecord>,
}

impl Table {
    pub fn read(path: &Path) -> Result<Self> {
        let contents = fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::parse(&contents, path)
    }

    pub fn parse(contents: &str, path: &Path) -> Result<Self> {
        let contents = contents.strip_prefix('\u{feff}').unwrap_or(contents);
        let mut reader = ReaderBuilder::new()
            .delimiter(sniff_delimiter(contents))
            .comment(Some(b'#'))
            .flexible(true)
            .from_reader(contents.as_bytes());
        let headers = reader
            .headers()
            .map_err(|e| Error::csv(path, e))?
            .iter()
            .map(str::trim)
            .collect::<StringRecord>();
        let rows = reader
            .records()
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| Error::csv(path, e))?;
        Ok(Table { headers, rows })
    }

    pub fn column(&self, name: &str, path: &Path) -> Result<usize> {
        self.headers
            .iter()
            .position(|h| h == name)
            .ok_or_else(|| Error::MissingColumn {
                path: path.to_path_buf(),
                column: name.to_string(),
            })
    }

    pub fn optional_column(&self, name: &str) -> Option<usize> {
        self.headers.iter().position(|h| h == name)
    }
}

/// Cell accessor that tolerates short rows.
pub fn cell(row: &StringRecord, index: usize) -> &str {
    row.get(index).unwrap_or("")
}
