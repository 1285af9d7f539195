//! Table emission. Every command produces one table: a stable anchor slug
//! naming the kind of experiment, a config echo, and uniform rows. CSV gets
//! a header row from the row struct's field names; JSON wraps the rows in a
//! versioned envelope. Output is byte-identical across runs of the same
//! config.

use crate::args::{Format, OutputArgs};
use serde::Serialize;
use serde_json::json;
use std::fs::File;
use std::io::{self, BufWriter, Write};

pub const SCHEMA_VERSION: u32 = 1;

/// One finished experiment: anchor slug, config echo, rows.
pub struct Table<R: Serialize> {
    pub anchor: &'static str,
    pub config: serde_json::Value,
    pub rows: Vec<R>,
}

fn sink(out: &OutputArgs) -> io::Result<Box<dyn Write>> {
    Ok(match &out.out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(io::stdout().lock()),
    })
}

pub fn emit<R: Serialize>(out: &OutputArgs, table: &Table<R>) -> io::Result<()> {
    let mut w = sink(out)?;
    match out.format {
        Format::Csv => {
            let mut wtr = csv::Writer::from_writer(&mut w);
            for row in &table.rows {
                wtr.serialize(row)?;
            }
            wtr.flush()?;
        }
        Format::Json => {
            let envelope = json!({
                "schema_version": SCHEMA_VERSION,
                "anchor": table.anchor,
                "config": table.config,
                "rows": table.rows,
            });
            serde_json::to_writer_pretty(&mut w, &envelope)?;
            writeln!(w)?;
        }
    }
    w.flush()
}
