//! Where command output goes and in which shape.
//!
//! Without `--out` and `--format` the human text goes to stdout. `--format`
//! alone prints that format to stdout; `--out` writes the machine format
//! (the command's default unless `--format` says otherwise) and still
//! prints the human text.

use std::fs;
use std::path::PathBuf;

use clap::ValueEnum;
use serde::Serialize;
use serde_json::Value;

use lefschetz::{Error, LefschetzReport, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
}

pub struct Emit {
    pub human: String,
    pub json: Value,
    pub csv: Option<String>,
}

pub struct Sink {
    path: Option<PathBuf>,
    format: Option<Format>,
    default: Format,
}

impl Sink {
    pub fn new(path: Option<PathBuf>, format: Option<Format>, default: Format) -> Self {
        Sink { path, format, default }
    }

    pub fn emit(&self, e: Emit) -> Result<()> {
        let machine = |format: Format| -> Result<String> {
            match format {
                Format::Json => Ok(format!(
                    "{}\n",
                    serde_json::to_string_pretty(&e.json).expect("values serialize")
                )),
                Format::Csv => e
                    .csv
                    .clone()
                    .ok_or_else(|| Error::InvalidArgument("no CSV form for this command".into())),
            }
        };
        match (&self.path, self.format) {
            (Some(path), format) => {
                let text = machine(format.unwrap_or(self.default))?;
                fs::write(path, text)
                    .map_err(|err| Error::InvalidArgument(format!("{}: {err}", path.display())))?;
                print_human(&e.human);
            }
            (None, Some(format)) => print!("{}", machine(format)?),
            (None, None) => print_human(&e.human),
        }
        Ok(())
    }
}

fn print_human(text: &str) {
    if text.ends_with('\n') {
        print!("{text}");
    } else {
        println!("{text}");
    }
}

pub fn csv_rows<T: Serialize>(rows: &[T]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| Error::InvalidArgument(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::InvalidArgument(e.to_string()))?;
    Ok(String::from_utf8(bytes).expect("csv output is utf-8"))
}

pub fn map_table(r: &LefschetzReport) -> String {
    let mut s = String::new();
    for m in &r.maps {
        s.push_str(&format!(
            "i={:<2} t={:<2} {:>5}x{:<5} rank {:<5} {:<8} {}\n",
            m.i,
            m.t,
            m.rows,
            m.cols,
            m.rank,
            if m.maximal { "maximal" } else { "DEFICIENT" },
            m.method.as_str()
        ));
    }
    s
}
