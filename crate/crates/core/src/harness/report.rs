use std::fmt;
use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::str::FromStr;

use serde::Serialize;
use serde_json::ser::{Formatter, PrettyFormatter};

use super::suite::SuiteReport;
use crate::error::{Error, Result};

pub const CSV_HEADER: [&str; 12] = [
    "trial",
    "bound",
    "mode",
    "lambda",
    "r",
    "n",
    "alpha",
    "exponent_p",
    "w_power",
    "rhs",
    "slack",
    "holds",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ReportFormat {
    Json,
    Csv,
}

impl FromStr for ReportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(ReportFormat::Json),
            "csv" => Ok(ReportFormat::Csv),
            other => Err(Error::InvalidConfig(format!("unknown report format {other:?}"))),
        }
    }
}

impl fmt::Display for ReportFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ReportFormat::Json => "json",
            ReportFormat::Csv => "csv",
        })
    }
}

/// Float text with 17 significant digits, enough to round-trip any `f64`.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

/// Pretty-printed JSON whose floats carry 17 significant digits.
struct FullPrecision(PrettyFormatter<'static>);

macro_rules! delegate {
    ($($name:ident),*) => {$(
        fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W) -> io::Result<()> {
            self.0.$name(w)
        }
    )*};
}

macro_rules! delegate_first {
    ($($name:ident),*) => {$(
        fn $name<W: ?Sized + io::Write>(&mut self, w: &mut W, first: bool) -> io::Result<()> {
            self.0.$name(w, first)
        }
    )*};
}

impl Formatter for FullPrecision {
    delegate!(
        begin_array,
        end_array,
        end_array_value,
        begin_object,
        end_object,
        begin_object_value,
        end_object_value
    );
    delegate_first!(begin_array_value, begin_object_key);

    fn write_f64<W: ?Sized + io::Write>(&mut self, w: &mut W, value: f64) -> io::Result<()> {
        w.write_all(format_float(value).as_bytes())
    }
}

/// Serializes any value with the report float format.
pub fn to_json_string<T: Serialize>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, FullPrecision(PrettyFormatter::new()));
    value.serialize(&mut ser)?;
    buf.push(b'\n');
    Ok(String::from_utf8(buf).expect("serde_json emits UTF-8"))
}

pub fn parse_report_json(text: &str) -> Result<SuiteReport> {
    Ok(serde_json::from_str(text)?)
}

/// Bound rows flattened under [`CSV_HEADER`]; an absent lambda is an empty field.
pub fn write_csv<W: Write>(report: &SuiteReport, out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CSV_HEADER)?;
    for row in &report.bound_rows {
        w.write_record([
            row.trial.to_string(),
            row.bound.to_string(),
            row.mode.to_string(),
            row.lambda.map(format_float).unwrap_or_default(),
            format_float(row.r),
            row.n.to_string(),
            format_float(row.alpha),
            format_float(row.exponent_p),
            format_float(row.w_power),
            format_float(row.rhs),
            format_float(row.slack),
            row.holds.to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn emit_report(report: &SuiteReport, format: ReportFormat, path: &Path) -> Result<()> {
    let mut out = BufWriter::new(File::create(path)?);
    match format {
        ReportFormat::Json => out.write_all(to_json_string(report)?.as_bytes())?,
        ReportFormat::Csv => write_csv(report, &mut out)?,
    }
    out.flush()?;
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bounds::BoundId;
    use crate::harness::{run_suite, Ensemble, EnsembleConfig, SuiteOptions};

    fn report(bounds: Vec<BoundId>) -> SuiteReport {
        let config = EnsembleConfig::new(Ensemble::Jordan, 2, 1, 0).unwrap();
        let opts = SuiteOptions {
            bounds,
            chains: vec![],
            lambda_grid: vec![1.0],
            ..SuiteOptions::default()
        };
        run_suite(&config, &opts).unwrap()
    }

    #[test]
    fn float_format_round_trips() {
        for v in [0.1, 1.0 / 3.0, -2.5e-300, 1e300, 0.0, 123456.789] {
            let s = format_float(v);
            assert_eq!(s.parse::<f64>().unwrap(), v);
        }
        assert_eq!(format_float(0.5), "5.0000000000000000e-1");
    }

    #[test]
    fn empty_csv_is_header_only() {
        let mut buf = Vec::new();
        write_csv(&report(vec![]), &mut buf).unwrap();
        assert_eq!(String::from_utf8(buf).unwrap(), format!("{}\n", CSV_HEADER.join(",")));
    }

    #[test]
    fn json_round_trip() {
        let r = report(vec![BoundId::Kittaneh]);
        assert_eq!(r.bound_rows.len(), 1);
        let text = to_json_string(&r).unwrap();
        assert_eq!(parse_report_json(&text).unwrap(), r);
        let r = report(vec![BoundId::ProductRefinement, BoundId::BuzanoRefinement]);
        assert_eq!(parse_report_json(&to_json_string(&r).unwrap()).unwrap(), r);
    }

    #[test]
    fn violation_is_visible() {
        let mut r = report(vec![BoundId::Kittaneh]);
        r.bound_rows[0].holds = false;
        r.violations = 1;
        let text = to_json_string(&r).unwrap();
        assert!(text.contains("\"holds\": false"));
        let mut buf = Vec::new();
        write_csv(&r, &mut buf).unwrap();
        assert!(String::from_utf8(buf).unwrap().trim_end().ends_with(",false"));
    }

    #[test]
    fn emits_files() {
        let dir = tempfile::tempdir().unwrap();
        let r = report(vec![BoundId::AbuOmar]);
        let json = dir.path().join("r.json");
        emit_report(&r, ReportFormat::Json, &json).unwrap();
        assert_eq!(parse_report_json(&std::fs::read_to_string(&json).unwrap()).unwrap(), r);
        let csv = dir.path().join("r.csv");
        emit_report(&r, ReportFormat::Csv, &csv).unwrap();
        assert_eq!(std::fs::read_to_string(&csv).unwrap().lines().count(), 2);
        let missing = dir.path().join("no/such/dir.json");
        assert!(matches!(
            emit_report(&r, ReportFormat::Json, &missing),
            Err(Error::Io(_))
        ));
    }
}
