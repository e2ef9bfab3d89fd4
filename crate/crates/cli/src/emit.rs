//! Report emission. CSV columns are exactly N,sup_error,bound,a1_error,
//! wall_ms; JSON mirrors the config plus rows. Floats are serialized with
//! 17 significant digits so a parse round-trips bit-exactly.

use std::io::Write;

use serde::Serialize;

use crate::config::ExperimentConfig;
use crate::run::ConvergenceRow;
use crate::HarnessError;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum EmitFormat {
    Csv,
    Json,
}

impl std::str::FromStr for EmitFormat {
    type Err = HarnessError;
    fn from_str(s: &str) -> Result<Self, HarnessError> {
        match s {
            "csv" => Ok(EmitFormat::Csv),
            "json" => Ok(EmitFormat::Json),
            other => Err(HarnessError::InvalidConfig {
                field: "format".into(),
                reason: format!("unknown format `{other}`"),
            }),
        }
    }
}

/// 17 significant digits; round-trips every finite f64.
pub fn fmt_f64(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn rows_to_csv(rows: &[ConvergenceRow]) -> String {
    let mut out = String::from("N,sup_error,bound,a1_error,wall_ms\n");
    for r in rows {
        let bound = r.bound.map(fmt_f64).unwrap_or_default();
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            r.big_n,
            fmt_f64(r.sup_error),
            bound,
            fmt_f64(r.a1_error),
            r.wall_ms
        ));
    }
    out
}

/// serde_json formatter that prints every float with 17 significant digits.
struct SigDigitFormatter;

impl serde_json::ser::Formatter for SigDigitFormatter {
    fn write_f64<W>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.16e}")
    }

    fn write_f32<W>(&mut self, writer: &mut W, value: f32) -> std::io::Result<()>
    where
        W: ?Sized + std::io::Write,
    {
        write!(writer, "{value:.8e}")
    }
}

#[derive(Serialize)]
struct Report<'a> {
    config: &'a ExperimentConfig,
    rows: &'a [ConvergenceRow],
}

pub fn rows_to_json(config: &ExperimentConfig, rows: &[ConvergenceRow]) -> Result<String, HarnessError> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, SigDigitFormatter);
    Report { config, rows }
        .serialize(&mut ser)
        .map_err(|e| HarnessError::Emit(e.to_string()))?;
    String::from_utf8(buf).map_err(|e| HarnessError::Emit(e.to_string()))
}

pub fn emit(
    config: &ExperimentConfig,
    rows: &[ConvergenceRow],
    format: EmitFormat,
    path: &str,
) -> Result<(), HarnessError> {
    let payload = match format {
        EmitFormat::Csv => rows_to_csv(rows),
        EmitFormat::Json => rows_to_json(config, rows)?,
    };
    let mut file = std::fs::File::create(path).map_err(|e| HarnessError::Io {
        path: path.to_string(),
        source: e,
    })?;
    file.write_all(payload.as_bytes()).map_err(|e| HarnessError::Io {
        path: path.to_string(),
        source: e,
    })
}
