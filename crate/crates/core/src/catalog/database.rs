//! Line format `id | w0,w1,... | c0,c1,...,cD` for candidate Hilbert series.

use std::fmt::Write as _;
use std::path::Path;

use itertools::Itertools;
use num_bigint::BigInt;

use super::fixtures::table1;
use crate::enumeration::{DbEntry, SeriesDatabase};
use crate::error::{Error, Result};
use crate::IntPolynomial;

const FIXTURE_HEADER: &str = "# Hilbert numerators generated from the P2xP2 table rows\n";

fn parse_line(n: usize, line: &str) -> Result<DbEntry> {
    let bad = |msg: String| Error::ParseLine { line: n, msg };
    let fields: Vec<&str> = line.split('|').map(str::trim).collect();
    let [id, weights, coeffs] = fields.as_slice() else {
        return Err(bad(format!("expected 3 fields, got {}", fields.len())));
    };
    if id.is_empty() {
        return Err(bad("empty id".into()));
    }
    let ambient = weights
        .split(',')
        .map(|w| match w.trim().parse::<u32>() {
            Ok(v) if v > 0 => Ok(v),
            _ => Err(bad(format!("bad weight {w:?}"))),
        })
        .collect::<Result<Vec<u32>>>()?;
    let coeffs = coeffs
        .split(',')
        .map(|c| c.trim().parse::<BigInt>().map_err(|_| bad(format!("bad coefficient {c:?}"))))
        .collect::<Result<Vec<BigInt>>>()?;
    if coeffs.last().is_none_or(|c| *c == BigInt::from(0)) {
        return Err(bad("numerator must end with a nonzero coefficient".into()));
    }
    Ok(DbEntry { id: id.to_string(), ambient, numerator: IntPolynomial::from_coeffs(coeffs) })
}

/// Checks the Fano index 1 convention: Gorenstein symmetric numerator of
/// degree sum(ambient) - 1.
pub fn validate_entry(e: &DbEntry) -> Result<()> {
    let invalid = |msg: String| Error::InvalidEntry { id: e.id.clone(), msg };
    let sym = e.numerator.symmetry().map_err(|_| invalid("zero numerator".into()))?;
    if !sym.palindromic {
        return Err(invalid("numerator is not Gorenstein symmetric".into()));
    }
    let total: i64 = e.ambient.iter().map(|&w| w as i64).sum();
    if sym.degree as i64 != total - 1 {
        return Err(invalid(format!("numerator degree {} but ambient weights sum to {total}", sym.degree)));
    }
    Ok(())
}

pub fn parse_database(text: &str) -> Result<SeriesDatabase> {
    let mut entries = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let entry = parse_line(i + 1, line)?;
        validate_entry(&entry)?;
        entries.push(entry);
    }
    Ok(SeriesDatabase { entries })
}

pub fn format_entry(e: &DbEntry) -> String {
    format!("{} | {} | {}", e.id, e.ambient.iter().join(","), e.numerator.to_dense().iter().join(","))
}

pub fn format_database(db: &SeriesDatabase) -> String {
    let mut out = String::new();
    for e in &db.entries {
        writeln!(out, "{}", format_entry(e)).expect("writing to a String");
    }
    out
}

pub fn load_database(path: impl AsRef<Path>) -> Result<SeriesDatabase> {
    parse_database(&std::fs::read_to_string(path)?)
}

pub fn save_database(path: impl AsRef<Path>, db: &SeriesDatabase) -> Result<()> {
    std::fs::write(path, format_database(db))?;
    Ok(())
}

/// One entry per table row: the row's numerator over the ambient the row
/// lists for the database entry.
pub fn fixture_database() -> SeriesDatabase {
    let entries = table1()
        .iter()
        .map(|row| DbEntry {
            id: row.grdb_id.clone(),
            ambient: row.grdb_ambient.clone(),
            numerator: row.grdb_numerator().expect("table rows fit their ambients"),
        })
        .collect();
    SeriesDatabase { entries }
}

/// The fixture database in file form, with a header comment.
pub fn fixture_database_text() -> String {
    format!("{FIXTURE_HEADER}{}", format_database(&fixture_database()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trip() {
        let text = "26989 | 1,1,1,1,1,1,1,2 | 1,0,-3,-4,12,-4,-3,0,1\n";
        let db = parse_database(text).unwrap();
        assert_eq!(db.len(), 1);
        assert_eq!(format_database(&db), text);
    }

    #[test]
    fn comments_and_blanks() {
        let db = parse_database("# header\n\n  # indented\n").unwrap();
        assert!(db.is_empty());
    }

    #[test]
    fn rejects_wrong_degree() {
        let err = parse_database("x | 1,1,1 | 1,0,-3,-4,12,-4,-3,0,1").unwrap_err();
        assert!(matches!(err, Error::InvalidEntry { ref id, .. } if id == "x"));
    }

    #[test]
    fn reports_line_numbers() {
        let err = parse_database("# c\n1 | 1,a | 1").unwrap_err();
        assert!(matches!(err, Error::ParseLine { line: 2, .. }));
        assert!(err.is_input_error());
    }

    #[test]
    fn fixture_is_valid() {
        let db = fixture_database();
        assert_eq!(db.len(), 53);
        for e in &db.entries {
            validate_entry(e).unwrap();
        }
        assert_eq!(parse_database(&fixture_database_text()).unwrap(), db);
    }
}
