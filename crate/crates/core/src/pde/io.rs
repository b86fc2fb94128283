use std::fmt::Write;

use crate::error::{Error, Result};

use super::profile::{DensityProfile, Domain};

/// Plain-text table: a `line` or `torus` header, then one `x value` pair per
/// line meaning `value` holds from `x` up to the next `x`. On the line the
/// first `x` is `-inf`; on the torus it is `0`.
pub fn to_table(p: &DensityProfile) -> String {
    let mut s = String::new();
    let (head, first) = match p.domain() {
        Domain::Line => ("line", "-inf".to_string()),
        Domain::Torus => ("torus", "0".to_string()),
    };
    writeln!(s, "{head}").unwrap();
    writeln!(s, "{first} {:?}", p.values()[0]).unwrap();
    for (b, v) in p.breakpoints().iter().zip(&p.values()[1..]) {
        writeln!(s, "{b:?} {v:?}").unwrap();
    }
    s
}

pub fn from_table(text: &str) -> Result<DensityProfile> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'));
    let domain = match lines.next() {
        Some("line") => Domain::Line,
        Some("torus") => Domain::Torus,
        other => return Err(Error::Parse(format!("bad header {other:?}"))),
    };
    let mut bps = Vec::new();
    let mut values = Vec::new();
    for (i, line) in lines.enumerate() {
        let mut parts = line.split_whitespace();
        let (Some(x), Some(v), None) = (parts.next(), parts.next(), parts.next()) else {
            return Err(Error::Parse(format!("expected two columns: {line:?}")));
        };
        let x: f64 = x.parse().map_err(|e| Error::Parse(format!("{x:?}: {e}")))?;
        let v: f64 = v.parse().map_err(|e| Error::Parse(format!("{v:?}: {e}")))?;
        if i > 0 {
            bps.push(x);
        }
        values.push(v);
    }
    if values.is_empty() {
        return Err(Error::Parse("no rows".into()));
    }
    DensityProfile::new(domain, bps, values)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn roundtrip() {
        for p in [
            DensityProfile::line(vec![-0.5, 0.25], vec![0.0, 0.3, 1.0]).unwrap(),
            DensityProfile::torus(vec![0.1, 0.7], vec![0.2, 0.4, 1.0 / 3.0]).unwrap(),
            DensityProfile::constant(Domain::Line, 0.5).unwrap(),
        ] {
            assert_eq!(from_table(&to_table(&p)).unwrap(), p);
        }
        assert!(from_table("ring\n0 1\n").is_err());
        assert!(from_table("line\n-inf\n").is_err());
    }
}
