//! CSV interchange for count and probability tables.
//!
//! Layout: a header row naming the signal bins (`s0`, …, `s{d−1}`) and one
//! row per idler bin, comma-separated, LF line endings. Floating-point
//! cells use the shortest decimal representation that parses back to the
//! identical bit pattern, so export → import is lossless.

use ndarray::Array2;
use std::io::{Read, Write};
use std::path::Path;

use crate::counts::{CountsTable, DwellModel};
use crate::error::BiphotonError;
use crate::measure::JointDistribution;

fn write_table<W, T, F>(sink: W, table: &Array2<T>, mut render: F) -> Result<(), BiphotonError>
where
    W: Write,
    F: FnMut(&T) -> String,
{
    let d = table.ncols();
    let mut writer = csv::Writer::from_writer(sink);
    writer.write_record((0..d).map(|n| format!("s{n}")))?;
    for row in table.rows() {
        writer.write_record(row.iter().map(&mut render))?;
    }
    writer.flush()?;
    Ok(())
}

fn read_table<R, T, F>(source: R, mut parse: F) -> Result<Array2<T>, BiphotonError>
where
    R: Read,
    T: Clone + Default,
    F: FnMut(&str) -> Result<T, String>,
{
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_reader(source);
    let d = reader.headers()?.len();
    if d == 0 {
        return Err(BiphotonError::MalformedTable("empty header row".into()));
    }
    let mut table = Array2::default((0, d));
    let mut rows = 0_usize;
    for record in reader.records() {
        let record = record?;
        if record.len() != d {
            return Err(BiphotonError::MalformedTable(format!(
                "row {} has {} cells, header has {}",
                rows + 1,
                record.len(),
                d
            )));
        }
        let mut row = Vec::with_capacity(d);
        for cell in record.iter() {
            row.push(parse(cell.trim()).map_err(BiphotonError::MalformedTable)?);
        }
        table
            .push_row(ndarray::ArrayView1::from(&row))
            .expect("row length checked");
        rows += 1;
    }
    if rows != d {
        return Err(BiphotonError::MalformedTable(format!(
            "expected a square table: {d} signal bins but {rows} idler rows"
        )));
    }
    Ok(table)
}

/// Writes a count table as CSV.
pub fn write_counts<W: Write>(sink: W, table: &CountsTable) -> Result<(), BiphotonError> {
    write_table(sink, table.counts(), |count| count.to_string())
}

/// Reads a count table from CSV.
///
/// The acquisition model is not part of the file format; imported tables
/// are treated as fixed-total coincidence data (the convention the
/// downstream multinomial likelihood assumes), with the total taken from
/// the table itself.
pub fn read_counts<R: Read>(source: R) -> Result<CountsTable, BiphotonError> {
    let counts: Array2<u64> = read_table(source, |cell| {
        cell.parse::<u64>()
            .map_err(|e| format!("count cell {cell:?}: {e}"))
    })?;
    let total = counts.iter().sum();
    CountsTable::new(counts, DwellModel::Multinomial { total })
}

/// Writes a joint distribution's probability table as CSV. The escape mass
/// is not stored; it is recovered on import as the deficit from unit total.
pub fn write_distribution<W: Write>(
    sink: W,
    dist: &JointDistribution,
) -> Result<(), BiphotonError> {
    write_table(sink, dist.probs(), |p| p.to_string())
}

/// Reads a joint distribution from CSV, assigning missing mass to escape.
pub fn read_distribution<R: Read>(source: R) -> Result<JointDistribution, BiphotonError> {
    let probs: Array2<f64> = read_table(source, |cell| {
        cell.parse::<f64>()
            .map_err(|e| format!("probability cell {cell:?}: {e}"))
    })?;
    JointDistribution::from_probs(probs)
}

/// Writes a count table to a file.
pub fn save_counts(path: &Path, table: &CountsTable) -> Result<(), BiphotonError> {
    write_counts(std::fs::File::create(path)?, table)
}

/// Reads a count table from a file.
pub fn load_counts(path: &Path) -> Result<CountsTable, BiphotonError> {
    read_counts(std::fs::File::open(path)?)
}

/// Writes a joint distribution to a file.
pub fn save_distribution(path: &Path, dist: &JointDistribution) -> Result<(), BiphotonError> {
    write_distribution(std::fs::File::create(path)?, dist)
}

/// Reads a joint distribution from a file.
pub fn load_distribution(path: &Path) -> Result<JointDistribution, BiphotonError> {
    read_distribution(std::fs::File::open(path)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn header_names_signal_bins() {
        let mut counts = Array2::zeros((2, 2));
        counts[[0, 1]] = 3_u64;
        counts[[1, 0]] = 7_u64;
        let table = CountsTable::new(counts, DwellModel::Multinomial { total: 10 }).unwrap();
        let mut buffer = Vec::new();
        write_counts(&mut buffer, &table).unwrap();
        let text = String::from_utf8(buffer).unwrap();
        assert_eq!(text, "s0,s1\n0,3\n7,0\n");
    }

    #[test]
    fn non_square_tables_are_rejected() {
        let text = "s0,s1\n1,2\n";
        assert!(matches!(
            read_counts(text.as_bytes()),
            Err(BiphotonError::MalformedTable(_))
        ));
    }
}
