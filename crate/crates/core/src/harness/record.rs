use std::fmt::Write as _;
use std::path::Path;

use serde_json::{json, Value};

use super::config::Format;
use crate::error::{Error, Result};

pub const COLUMNS: [&str; 10] =
    ["experiment", "seed", "N", "statistic", "value", "target", "sigma", "pass", "seconds", "config_hash"];

/// One checked statistic.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRecord {
    pub experiment: String,
    pub seed: u64,
    pub n: u64,
    pub statistic: String,
    pub value: f64,
    pub target: f64,
    pub sigma: f64,
    pub pass: bool,
    pub seconds: f64,
    pub config_hash: String,
}

fn fmt_f(v: f64) -> String {
    if v.is_finite() {
        format!("{v:.9}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn parse_f(s: &str) -> Result<f64> {
    s.trim().parse::<f64>().map_err(|e| Error::Parse(format!("'{s}': {e}")))
}

impl ResultRecord {
    fn fields(&self) -> [String; 10] {
        [
            self.experiment.clone(),
            self.seed.to_string(),
            self.n.to_string(),
            self.statistic.clone(),
            fmt_f(self.value),
            fmt_f(self.target),
            fmt_f(self.sigma),
            self.pass.to_string(),
            fmt_f(self.seconds),
            self.config_hash.clone(),
        ]
    }

    fn from_fields(f: &[String]) -> Result<Self> {
        if f.len() != COLUMNS.len() {
            return Err(Error::Parse(format!("expected {} fields, got {}", COLUMNS.len(), f.len())));
        }
        let int = |s: &str| s.trim().parse::<u64>().map_err(|e| Error::Parse(format!("'{s}': {e}")));
        Ok(ResultRecord {
            experiment: f[0].clone(),
            seed: int(&f[1])?,
            n: int(&f[2])?,
            statistic: f[3].clone(),
            value: parse_f(&f[4])?,
            target: parse_f(&f[5])?,
            sigma: parse_f(&f[6])?,
            pass: f[7].trim().parse().map_err(|_| Error::Parse(format!("bad pass flag '{}'", f[7])))?,
            seconds: parse_f(&f[8])?,
            config_hash: f[9].clone(),
        })
    }
}

/// Text form of `records`.
pub fn render(records: &[ResultRecord], format: Format) -> Result<String> {
    if records.is_empty() {
        return Err(Error::Io("no records to emit".into()));
    }
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            let io = |e: csv::Error| Error::Io(e.to_string());
            w.write_record(COLUMNS).map_err(io)?;
            for r in records {
                w.write_record(r.fields()).map_err(io)?;
            }
            let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
            String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
        }
        Format::JsonLines => {
            let mut out = String::new();
            for r in records {
                // Numbers are written as fixed-precision strings so every run is byte-identical.
                let obj: serde_json::Map<String, Value> =
                    COLUMNS.iter().zip(r.fields()).map(|(k, v)| (k.to_string(), json!(v))).collect();
                writeln!(out, "{}", Value::Object(obj)).expect("writing to a string");
            }
            Ok(out)
        }
    }
}

/// Write `records` to `path`.
pub fn emit(records: &[ResultRecord], format: Format, path: &Path) -> Result<()> {
    let text = render(records, format)?;
    std::fs::write(path, text)?;
    Ok(())
}

/// Inverse of [`render`].
pub fn parse(text: &str, format: Format) -> Result<Vec<ResultRecord>> {
    match format {
        Format::Csv => {
            let mut rd = csv::Reader::from_reader(text.as_bytes());
            let header = rd.headers().map_err(|e| Error::Parse(e.to_string()))?;
            if header.iter().ne(COLUMNS) {
                return Err(Error::Parse("unexpected CSV header".into()));
            }
            rd.records()
                .map(|row| {
                    let row = row.map_err(|e| Error::Parse(e.to_string()))?;
                    ResultRecord::from_fields(&row.iter().map(str::to_string).collect::<Vec<_>>())
                })
                .collect()
        }
        Format::JsonLines => text
            .lines()
            .filter(|l| !l.trim().is_empty())
            .map(|line| {
                let v: Value = serde_json::from_str(line).map_err(|e| Error::Parse(e.to_string()))?;
                let fields = COLUMNS
                    .iter()
                    .map(|k| match v.get(*k) {
                        Some(Value::String(s)) => Ok(s.clone()),
                        Some(other) => Ok(other.to_string()),
                        None => Err(Error::Parse(format!("missing field '{k}'"))),
                    })
                    .collect::<Result<Vec<_>>>()?;
                ResultRecord::from_fields(&fields)
            })
            .collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rec() -> ResultRecord {
        ResultRecord {
            experiment: "e3".into(),
            seed: 42,
            n: 4000,
            statistic: "edge_density".into(),
            value: 0.4998765432109,
            target: 0.5,
            sigma: 1.25e-4,
            pass: true,
            seconds: 0.0,
            config_hash: "ab12".into(),
        }
    }

    #[test]
    fn empty_is_an_error() {
        assert!(matches!(render(&[], Format::Csv), Err(Error::Io(_))));
        assert!(render(&[], Format::JsonLines).is_err());
    }

    #[test]
    fn csv_round_trip_at_nine_decimals() {
        let text = render(&[rec()], Format::Csv).unwrap();
        assert!(text.starts_with("experiment,seed,N,statistic,value,target,sigma,pass,seconds,config_hash\n"));
        assert!(text.contains("0.499876543,0.500000000,0.000125000,true"));
        let back = parse(&text, Format::Csv).unwrap();
        assert_eq!(back.len(), 1);
        assert_eq!(back[0].value, 0.499876543);
        assert_eq!(render(&back, Format::Csv).unwrap(), text);
    }

    #[test]
    fn json_lines_round_trip() {
        let mut r = rec();
        r.value = f64::INFINITY;
        let text = render(&[r.clone(), rec()], Format::JsonLines).unwrap();
        assert_eq!(text.lines().count(), 2);
        let back = parse(&text, Format::JsonLines).unwrap();
        assert_eq!(back[0].value, f64::INFINITY);
        assert_eq!(render(&back, Format::JsonLines).unwrap(), text);
    }

    #[test]
    fn bad_rows_rejected() {
        assert!(parse("a,b\n1,2\n", Format::Csv).is_err());
        assert!(parse("{\"experiment\":\"e1\"}\n", Format::JsonLines).is_err());
    }
}
