use std::fs;
use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::Value;
use sievekit::arith::rat_string;
use sievekit::Rational;

use crate::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

/// `"num/den"`.
pub fn rat_json(r: &Rational) -> Value {
    Value::String(rat_string(r))
}

/// `num,den` cells.
pub fn rat_cells(r: &Rational) -> String {
    format!("{},{}", r.numer(), r.denom())
}

/// Rendered output of one subcommand.
pub struct Rendered {
    pub csv: String,
    pub json: Value,
}

impl Rendered {
    pub fn text(&self, format: Format) -> String {
        match format {
            Format::Csv => self.csv.clone(),
            Format::Json => {
                let mut s =
                    serde_json::to_string_pretty(&self.json).expect("json values serialise");
                s.push('\n');
                s
            }
        }
    }
}

pub fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| Failure::Usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .and_then(|_| stdout.flush())
                .map_err(|e| Failure::Usage(format!("cannot write output: {e}")))
        }
    }
}
