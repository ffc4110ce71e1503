//! Run configuration: the parameter sweep and reporting options.

use g2roll::{Params, Rat};
use num_bigint::BigInt;
use serde::Deserialize;
use std::path::PathBuf;
use std::str::FromStr;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl FromStr for Format {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            "text" => Ok(Format::Text),
            other => Err(format!(
                "unknown format {other:?} (expected json, csv or text)"
            )),
        }
    }
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub sweep: Vec<Params>,
    pub seed: u64,
    pub points: usize,
    pub out: Option<PathBuf>,
    pub format: Format,
    pub reproducible: bool,
}

/// Parse an exact rational written as `p` or `p/q`.
pub fn parse_rat(text: &str) -> Result<Rat, String> {
    let text = text.trim();
    let (num, den) = match text.split_once('/') {
        Some((n, d)) => (n, d),
        None => (text, "1"),
    };
    let n = BigInt::from_str(num.trim()).map_err(|e| format!("bad numerator {num:?}: {e}"))?;
    let d = BigInt::from_str(den.trim()).map_err(|e| format!("bad denominator {den:?}: {e}"))?;
    if d == BigInt::from(0) {
        return Err("zero denominator".to_string());
    }
    Ok(Rat::new(n, d))
}

#[derive(Debug, Deserialize)]
struct SweepEntry {
    kappa: String,
    c: String,
    #[serde(default)]
    alpha: Option<String>,
}

/// Load a sweep file: a JSON array of `{"kappa": "p/q", "c": "p/q",
/// "alpha": "p/q"}` entries.
pub fn load_sweep(path: &std::path::Path) -> Result<Vec<Params>, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("cannot read sweep file: {e}"))?;
    let entries: Vec<SweepEntry> =
        serde_json::from_str(&text).map_err(|e| format!("bad sweep file: {e}"))?;
    entries
        .iter()
        .map(|e| {
            let kappa = parse_rat(&e.kappa)?;
            let c = parse_rat(&e.c)?;
            let alpha = match &e.alpha {
                Some(a) => parse_rat(a)?,
                None => Rat::new(0.into(), 1.into()),
            };
            Params::new(kappa, c, alpha).map_err(|e| e.to_string())
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use g2roll::rat;

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rat("3/4").unwrap(), rat(3, 4));
        assert_eq!(parse_rat("-2").unwrap(), rat(-2, 1));
        assert!(parse_rat("1/0").is_err());
        assert!(parse_rat("x").is_err());
    }
}
