//! Numeric output tables serialized as CSV or JSON.

use std::io::Write;

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

pub const SIGNIFICANT_DIGITS: usize = 9;

/// A header row plus rows of reals, all of the same width.
#[derive(Debug, Clone, PartialEq)]
pub struct OutputTable {
    pub headers: Vec<String>,
    pub rows: Vec<Vec<f64>>,
}

impl OutputTable {
    pub fn new<S: Into<String>>(headers: impl IntoIterator<Item = S>) -> Self {
        OutputTable {
            headers: headers.into_iter().map(Into::into).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<f64>) {
        assert_eq!(row.len(), self.headers.len(), "row width must match the header");
        self.rows.push(row);
    }

    pub fn column(&self, name: &str) -> Option<Vec<f64>> {
        let idx = self.headers.iter().position(|h| h == name)?;
        Some(self.rows.iter().map(|r| r[idx]).collect())
    }

    pub fn write(&self, format: Format, out: &mut dyn Write) -> Result<(), CliError> {
        match format {
            Format::Csv => self.write_csv(out),
            Format::Json => self.write_json(out),
        }
    }

    pub fn write_csv(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.headers)?;
        for row in &self.rows {
            w.write_record(row.iter().map(|&v| format_real(v)))?;
        }
        w.flush()?;
        Ok(())
    }

    pub fn write_json(&self, out: &mut dyn Write) -> Result<(), CliError> {
        let rows: Vec<serde_json::Value> = self
            .rows
            .iter()
            .map(|r| {
                r.iter()
                    .map(|&v| {
                        if v.is_finite() {
                            // re-parse the rounded text so JSON and CSV agree
                            serde_json::Number::from_f64(format_real(v).parse().unwrap_or(v))
                                .map_or(serde_json::Value::Null, serde_json::Value::Number)
                        } else {
                            serde_json::Value::Null
                        }
                    })
                    .collect()
            })
            .collect();
        let mut doc = serde_json::Map::new();
        doc.insert("headers".into(), serde_json::json!(self.headers));
        doc.insert("rows".into(), serde_json::Value::Array(rows));
        serde_json::to_writer(&mut *out, &serde_json::Value::Object(doc))?;
        writeln!(out)?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("writing to memory");
        String::from_utf8(buf).expect("csv output is UTF-8")
    }

    pub fn from_csv(text: &str) -> Result<Self, CliError> {
        let mut r = csv::Reader::from_reader(text.as_bytes());
        let headers = r.headers()?.iter().map(str::to_owned).collect();
        let mut table = OutputTable { headers, rows: Vec::new() };
        for rec in r.records() {
            let rec = rec?;
            let row = rec.iter().map(parse_real).collect::<Result<Vec<_>, _>>()?;
            if row.len() != table.headers.len() {
                return Err(CliError::Usage(format!("ragged CSV row of width {}", row.len())));
            }
            table.rows.push(row);
        }
        Ok(table)
    }
}

/// %g-style text with nine significant digits and trailing zeros removed.
pub fn format_real(v: f64) -> String {
    if v.is_nan() {
        return "NaN".into();
    }
    if v.is_infinite() {
        return if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0".into();
    }
    let sci = format!("{:.*e}", SIGNIFICANT_DIGITS - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..SIGNIFICANT_DIGITS as i32).contains(&exp) {
        let decimals = (SIGNIFICANT_DIGITS as i32 - 1 - exp).max(0) as usize;
        trim_zeros(&format!("{v:.decimals$}"))
    } else {
        format!("{}e{}", trim_zeros(mantissa), exp)
    }
}

fn trim_zeros(s: &str) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_owned()
    } else {
        s.to_owned()
    }
}

pub fn parse_real(s: &str) -> Result<f64, CliError> {
    match s {
        "NaN" => Ok(f64::NAN),
        "inf" => Ok(f64::INFINITY),
        "-inf" => Ok(f64::NEG_INFINITY),
        _ => s.parse().map_err(|_| CliError::Usage(format!("not a number: {s:?}"))),
    }
}
