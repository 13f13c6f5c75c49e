//! Front end for `jacinf`: map syntax, reports and process exit codes.

pub mod parse;
pub mod report;

use std::path::PathBuf;

use thiserror::Error;

use jacinf_core::analysis::{AnalysisError, DEFAULT_SEED};
use jacinf_core::corpus::CorpusError;
use jacinf_core::resolution::ResolutionError;

pub use parse::{parse_map, parse_poly, ParseError};
pub use report::{emit_dot, emit_json, emit_text, Report, SCHEMA_VERSION};

/// Environment variable overriding the seed of probe functions.
pub const SEED_VAR: &str = "JACINF_SEED";

pub mod exit {
    pub const OK: u8 = 0;
    pub const OTHER: u8 = 1;
    pub const PARSE: u8 = 2;
    pub const BUDGET: u8 = 3;
    pub const PRECONDITION: u8 = 4;
    pub const FIXTURE: u8 = 5;
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("parse error: {0}")]
    Parse(#[from] ParseError),
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("invalid {var}: {value}")]
    Seed { var: &'static str, value: String },
    #[error(transparent)]
    Analysis(#[from] AnalysisError),
    #[error(transparent)]
    Corpus(#[from] CorpusError),
}

impl From<ResolutionError> for CliError {
    fn from(e: ResolutionError) -> Self {
        CliError::Analysis(e.into())
    }
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        let resolution = match self {
            CliError::Parse(ParseError::Map(ResolutionError::ConstantMap)) => return exit::PRECONDITION,
            CliError::Parse(_) | CliError::Io { .. } | CliError::Seed { .. } => return exit::PARSE,
            CliError::Analysis(AnalysisError::Resolution(r)) => r,
            CliError::Corpus(CorpusError::Analysis(AnalysisError::Resolution(r))) => r,
            _ => return exit::OTHER,
        };
        match resolution {
            ResolutionError::BudgetExceeded(_) => exit::BUDGET,
            ResolutionError::ConstantMap | ResolutionError::IrrationalCenter(_) => exit::PRECONDITION,
            _ => exit::OTHER,
        }
    }
}

/// A map given inline or, with a leading `@`, read from a file.
pub fn read_map_arg(arg: &str) -> Result<jacinf_core::resolution::PolyMap, CliError> {
    let text = match arg.strip_prefix('@') {
        Some(path) => {
            std::fs::read_to_string(path).map_err(|source| CliError::Io { path: path.into(), source })?
        }
        None => arg.to_string(),
    };
    Ok(parse_map(&text)?)
}

/// Seed from `JACINF_SEED` (decimal or `0x` hex), else the library default.
pub fn seed_from_env() -> Result<u64, CliError> {
    match std::env::var(SEED_VAR) {
        Err(_) => Ok(DEFAULT_SEED),
        Ok(v) => {
            let t = v.trim();
            let parsed = match t.strip_prefix("0x") {
                Some(hex) => u64::from_str_radix(hex, 16),
                None => t.parse(),
            };
            parsed.map_err(|_| CliError::Seed { var: SEED_VAR, value: v.clone() })
        }
    }
}
