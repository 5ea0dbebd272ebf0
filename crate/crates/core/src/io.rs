//! Text formats: fugacity files, rate files and number formatting.
//!
//! A fugacity file has one `v <i> <log-fugacity>` line per link, `i`
//! 0-based, values with 17 significant digits so they read back exactly.

use std::fs;
use std::io::{self, Write};
use std::path::Path;

use thiserror::Error;

use crate::fugacity::{Fugacities, FugacityError, ServiceRates};

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Fugacity(#[from] FugacityError),
    #[error(transparent)]
    Io(#[from] io::Error),
}

pub fn write_fugacities<W: Write>(v: &Fugacities, mut out: W) -> io::Result<()> {
    for (i, x) in v.as_slice().iter().enumerate() {
        writeln!(out, "v {i} {x:.16e}")?;
    }
    Ok(())
}

pub fn fugacities_to_string(v: &Fugacities) -> String {
    let mut buf = Vec::new();
    write_fugacities(v, &mut buf).expect("writing to memory");
    String::from_utf8(buf).expect("ascii output")
}

/// Parses `v <i> <value>` lines. Every index `0..n` must appear exactly once.
pub fn parse_fugacities(text: &str) -> Result<Fugacities, FormatError> {
    let mut entries: Vec<Option<f64>> = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let lineno = k + 1;
        let mut toks = line.split_whitespace();
        match toks.next() {
            None => continue,
            Some("v") => {}
            Some(other) => {
                return Err(FormatError::Parse {
                    line: lineno,
                    message: format!("expected `v`, found `{other}`"),
                })
            }
        }
        let err = |message: String| FormatError::Parse { line: lineno, message };
        let i: usize = toks
            .next()
            .ok_or_else(|| err("missing link index".into()))?
            .parse()
            .map_err(|_| err("link index is not an integer".into()))?;
        let x: f64 = toks
            .next()
            .ok_or_else(|| err("missing value".into()))?
            .parse()
            .map_err(|_| err("value is not a number".into()))?;
        if toks.next().is_some() {
            return Err(err("trailing tokens".into()));
        }
        if entries.len() <= i {
            entries.resize(i + 1, None);
        }
        if entries[i].replace(x).is_some() {
            return Err(err(format!("link {i} given twice")));
        }
    }
    let values = entries
        .into_iter()
        .enumerate()
        .map(|(i, x)| {
            x.ok_or_else(|| FormatError::Parse {
                line: 0,
                message: format!("link {i} missing"),
            })
        })
        .collect::<Result<Vec<_>, _>>()?;
    if values.is_empty() {
        return Err(FormatError::Parse {
            line: 0,
            message: "no fugacities".into(),
        });
    }
    Ok(Fugacities::new(values)?)
}

/// Whitespace-separated per-link rates.
pub fn parse_rates(text: &str) -> Result<ServiceRates, FormatError> {
    let mut values = Vec::new();
    for (k, line) in text.lines().enumerate() {
        for tok in line.split_whitespace() {
            values.push(tok.parse::<f64>().map_err(|_| FormatError::Parse {
                line: k + 1,
                message: format!("`{tok}` is not a number"),
            })?);
        }
    }
    Ok(ServiceRates::new(values)?)
}

/// `printf("%.*g")`-style formatting with `digits` significant digits.
pub fn fmt_sig(x: f64, digits: usize) -> String {
    assert!(digits >= 1);
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{:.*e}", digits - 1, x);
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if exp < -4 || exp >= digits as i32 {
        let m = strip_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        format!("{m}e{sign}{:02}", exp.abs())
    } else {
        let decimals = (digits as i32 - 1 - exp).max(0) as usize;
        strip_zeros(&format!("{:.*}", decimals, x)).to_string()
    }
}

fn strip_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Writes `contents` to a temporary file next to `path`, then renames it
/// into place.
pub fn write_atomic(path: &Path, contents: &[u8]) -> io::Result<()> {
    let dir = match path.parent() {
        Some(p) if !p.as_os_str().is_empty() => p,
        _ => Path::new("."),
    };
    let mut tmp = tempfile::NamedTempFile::new_in(dir)?;
    tmp.write_all(contents)?;
    tmp.flush()?;
    tmp.persist(path).map_err(|e| e.error)?;
    Ok(())
}

pub fn read_to_string(path: &Path) -> io::Result<String> {
    fs::read_to_string(path)
}
