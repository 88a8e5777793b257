//! The twelve `X_{6d} ⊂ P(1, a, b, 2d, 3d)` Fano hypersurfaces from Iano-Fletcher's
//! list, with their anti-canonical volumes and Reid baskets.

use std::io::{Read, Write};

use serde::{Deserialize, Serialize};

use crate::basket::{parse_basket, Basket, NumericalData};
use crate::error::{Error, Result};
use crate::hypersurface::AbFamily;
use crate::rational::Rational;

/// One table entry. Fields are not cross-checked on construction so that
/// altered rows can be fed to the verifier.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub row_no: u32,
    pub family: AbFamily,
    pub volume: Rational,
    pub basket: Basket,
}

impl TableRow {
    pub fn numerical_data(&self) -> Result<NumericalData> {
        NumericalData::new(self.volume.clone(), self.basket.clone())
    }
}

// (no, a, b, volume, basket)
const IANO_FLETCHER: [(u32, u64, u64, &str, &str); 12] = [
    (14, 1, 1, "1/2", "1/2"),
    (34, 1, 2, "1/6", "3x1/2, 1/3"),
    (53, 1, 3, "1/12", "2x1/3, 1/4"),
    (70, 1, 4, "1/20", "1/2, 1/4, 1/5"),
    (72, 2, 3, "1/30", "3x1/2, 2/5, 2x1/3"),
    (82, 1, 5, "1/30", "2/5, 1/6"),
    (88, 1, 6, "1/42", "1/2, 1/3, 1/7"),
    (89, 2, 5, "1/70", "3x1/2, 3/7, 1/5"),
    (90, 3, 4, "1/84", "1/2, 2x1/3, 2/7, 1/4"),
    (92, 3, 5, "1/120", "3/8, 2x1/3, 1/5"),
    (94, 4, 5, "1/180", "1/2, 2/5, 1/4, 2/9"),
    (95, 5, 6, "1/330", "1/2, 2/5, 1/3, 2/11"),
];

pub fn builtin_table() -> Vec<TableRow> {
    IANO_FLETCHER
        .iter()
        .map(|&(row_no, a, b, volume, basket)| TableRow {
            row_no,
            family: AbFamily::new(a, b).expect("builtin family"),
            volume: volume.parse().expect("builtin volume"),
            basket: parse_basket(basket).expect("builtin basket"),
        })
        .collect()
}

pub fn builtin_row(row_no: u32) -> Option<TableRow> {
    builtin_table().into_iter().find(|r| r.row_no == row_no)
}

#[derive(Debug, Serialize, Deserialize)]
struct CsvRecord {
    no: u32,
    a: u64,
    b: u64,
    volume: String,
    basket: String,
}

/// Reads a table in the `no,a,b,volume,basket` CSV layout.
pub fn read_table<R: Read>(reader: R) -> Result<Vec<TableRow>> {
    let mut rdr = csv::ReaderBuilder::new().trim(csv::Trim::All).from_reader(reader);
    let headers = rdr
        .headers()
        .map_err(|e| Error::Table { line: 1, reason: e.to_string() })?
        .clone();
    if headers.iter().collect::<Vec<_>>() != ["no", "a", "b", "volume", "basket"] {
        return Err(Error::Table {
            line: 1,
            reason: "expected header no,a,b,volume,basket".into(),
        });
    }
    let mut rows = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| Error::Table {
            line: e.position().map_or(0, |p| p.line()),
            reason: e.to_string(),
        })?;
        let line = record.position().map_or(0, |p| p.line());
        let fail = |reason: String| Error::Table { line, reason };
        let rec: CsvRecord = record
            .deserialize(Some(&headers))
            .map_err(|e| fail(e.to_string()))?;
        rows.push(TableRow {
            row_no: rec.no,
            family: AbFamily::new(rec.a, rec.b).map_err(|e| fail(e.to_string()))?,
            volume: rec.volume.parse().map_err(|e: Error| fail(e.to_string()))?,
            basket: parse_basket(&rec.basket).map_err(|e| fail(e.to_string()))?,
        });
    }
    Ok(rows)
}

pub fn write_table<W: Write>(rows: &[TableRow], writer: W) -> Result<()> {
    let io = |e: csv::Error| Error::Table { line: 0, reason: e.to_string() };
    let mut wtr = csv::Writer::from_writer(writer);
    for row in rows {
        wtr.serialize(CsvRecord {
            no: row.row_no,
            a: row.family.a(),
            b: row.family.b(),
            volume: row.volume.to_string(),
            basket: row.basket.to_string(),
        })
        .map_err(io)?;
    }
    wtr.flush().map_err(|e| Error::Table { line: 0, reason: e.to_string() })?;
    Ok(())
}
