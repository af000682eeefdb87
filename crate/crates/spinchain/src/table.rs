//! Long-format CSV: `model,chain_spins,delta,beta,block,quantity,value,converged`.
//!
//! Values carry 12 significant digits; Δ and β use the shortest
//! representation that parses back to the same float.

use std::fs;
use std::io::{Read, Write};
use std::path::Path;

use spinchain_core::ModelKind;

use crate::error::{Error, Result};
use crate::sweep::SweepRow;

pub const HEADER: [&str; 8] = ["model", "chain_spins", "delta", "beta", "block", "quantity", "value", "converged"];

pub fn parse_model(s: &str) -> Result<ModelKind> {
    match s.trim().to_ascii_lowercase().as_str() {
        "at" | "ashkin-teller" => Ok(ModelKind::AshkinTeller),
        "xxz" | "staggered-xxz" => Ok(ModelKind::StaggeredXxz),
        other => Err(Error::argument(format!("unknown model '{other}', expected at or xxz"))),
    }
}

pub fn write_rows<W: Write>(writer: W, rows: &[SweepRow]) -> Result<()> {
    let mut w = csv::Writer::from_writer(writer);
    w.write_record(HEADER)?;
    for r in rows {
        w.write_record([
            r.model.short_name().to_string(),
            r.chain_spins.to_string(),
            r.delta.to_string(),
            r.beta.to_string(),
            r.block.clone(),
            r.quantity.clone(),
            format!("{:.11e}", r.value),
            r.converged.to_string(),
        ])?;
    }
    w.flush().map_err(|e| Error::io("<csv>", e))?;
    Ok(())
}

pub fn read_rows<R: Read>(reader: R) -> Result<Vec<SweepRow>> {
    let mut r = csv::Reader::from_reader(reader);
    let header = r.headers()?.clone();
    if header.iter().ne(HEADER) {
        return Err(Error::argument(format!("unexpected CSV header: {}", header.iter().collect::<Vec<_>>().join(","))));
    }
    let field = |rec: &csv::StringRecord, i: usize| rec.get(i).unwrap_or("").to_string();
    let num = |rec: &csv::StringRecord, i: usize| -> Result<f64> {
        field(rec, i).parse().map_err(|_| Error::argument(format!("bad number '{}' in column {}", field(rec, i), HEADER[i])))
    };
    let mut rows = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        rows.push(SweepRow {
            model: parse_model(&field(&rec, 0))?,
            chain_spins: field(&rec, 1).parse().map_err(|_| Error::argument("bad chain_spins"))?,
            delta: num(&rec, 2)?,
            beta: num(&rec, 3)?,
            block: field(&rec, 4),
            quantity: field(&rec, 5),
            value: num(&rec, 6)?,
            converged: field(&rec, 7).parse().map_err(|_| Error::argument("bad converged flag"))?,
        });
    }
    Ok(rows)
}

/// Writes through a temporary file in the target directory and renames it
/// into place, so readers never see a partial table.
pub fn write_atomic(path: &Path, rows: &[SweepRow]) -> Result<()> {
    let dir = match path.parent() {
        Some(d) if !d.as_os_str().is_empty() => d,
        _ => Path::new("."),
    };
    fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(|e| Error::io(dir, e))?;
    write_rows(&mut tmp, rows)?;
    tmp.as_file().sync_all().map_err(|e| Error::io(tmp.path(), e))?;
    tmp.persist(path).map_err(|e| Error::io(path, e.error))?;
    Ok(())
}

pub fn read_file(path: &Path) -> Result<Vec<SweepRow>> {
    read_rows(fs::File::open(path).map_err(|e| Error::io(path, e))?)
}
