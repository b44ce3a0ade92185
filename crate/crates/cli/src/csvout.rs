//! CSV emission: comma separated, '.' decimal, 17 significant digits, one
//! header row, and a '#'-prefixed stamp line carrying the full resolved
//! configuration for reproducibility.

use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;

pub struct CsvFile {
    out: BufWriter<File>,
}

#[derive(Debug, Clone, Copy)]
pub enum Cell {
    Num(f64),
    Int(u64),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v)
    }
}

impl CsvFile {
    pub fn create(path: &Path, config_stamp: &str, header: &[&str]) -> std::io::Result<Self> {
        if let Some(parent) = path.parent() {
            std::fs::create_dir_all(parent)?;
        }
        let mut out = BufWriter::new(File::create(path)?);
        writeln!(out, "# config: {config_stamp}")?;
        writeln!(out, "{}", header.join(","))?;
        Ok(Self { out })
    }

    pub fn row(&mut self, cells: &[Cell]) -> std::io::Result<()> {
        let mut first = true;
        for cell in cells {
            if !first {
                write!(self.out, ",")?;
            }
            first = false;
            match cell {
                Cell::Num(v) => write!(self.out, "{v:.16e}")?,
                Cell::Int(v) => write!(self.out, "{v}")?,
                Cell::Empty => {}
            }
        }
        writeln!(self.out)
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}
