use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::numeric::{Modulus, PrimeWindow};
use crate::series::SeriesCaps;

/// Environment variable naming the default cache file.
pub const CACHE_ENV: &str = "FMZV_CACHE";

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub enum OutputFormat {
    #[default]
    Text,
    Csv,
    Records,
}

impl FromStr for OutputFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "text" => Ok(OutputFormat::Text),
            "csv" => Ok(OutputFormat::Csv),
            "records" => Ok(OutputFormat::Records),
            _ => Err(Error::Config(format!(
                "unknown format `{s}` (expected text, csv or records)"
            ))),
        }
    }
}

impl fmt::Display for OutputFormat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            OutputFormat::Text => "text",
            OutputFormat::Csv => "csv",
            OutputFormat::Records => "records",
        })
    }
}

/// Run configuration shared by the CLI commands.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Config {
    pub prime_lo: u64,
    pub prime_hi: u64,
    pub depth: u32,
    pub caps: SeriesCaps,
    /// `None` picks the per-identity default.
    pub floor: Option<u64>,
    /// 0 = all cores, 1 = sequential.
    pub jobs: usize,
    pub cache_path: Option<PathBuf>,
    pub format: OutputFormat,
}

impl Default for Config {
    fn default() -> Self {
        Config {
            prime_lo: 11,
            prime_hi: 199,
            depth: 2,
            caps: SeriesCaps::new(4, 4),
            floor: None,
            jobs: 0,
            cache_path: None,
            format: OutputFormat::Text,
        }
    }
}

impl Config {
    pub fn validate(&self) -> Result<()> {
        PrimeWindow::new(self.prime_lo, self.prime_hi)?;
        Modulus::new(self.prime_hi, self.depth)?;
        Ok(())
    }

    pub fn window(&self) -> Result<Arc<PrimeWindow>> {
        Ok(Arc::new(PrimeWindow::new(self.prime_lo, self.prime_hi)?))
    }
}

/// Parses `LO..HI`.
pub fn parse_prime_range(s: &str) -> Result<(u64, u64)> {
    let bad = || Error::Config(format!("expected a prime range LO..HI, got `{s}`"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo = lo.trim().parse().map_err(|_| bad())?;
    let hi = hi.trim().parse().map_err(|_| bad())?;
    Ok((lo, hi))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ranges_and_validation() {
        assert_eq!(parse_prime_range("5..199").unwrap(), (5, 199));
        assert!(parse_prime_range("5-199").is_err());
        assert!(Config::default().validate().is_ok());
        let bad = Config { prime_lo: 14, prime_hi: 16, ..Config::default() };
        assert!(bad.validate().is_err());
        let deep = Config { depth: 0, ..Config::default() };
        assert!(deep.validate().is_err());
        assert_eq!("records".parse::<OutputFormat>().unwrap(), OutputFormat::Records);
        assert!("json".parse::<OutputFormat>().is_err());
    }
}
