use std::fs;
use std::path::PathBuf;

use nilgeo_core::algebra::catalog;
use nilgeo_core::algebra::io::{parse_algebra_str, AlgebraFile};
use nilgeo_core::error::{AlgebraError, ParseError, SchemaError};
use nilgeo_core::exact::{parse_rational, Rational};
use thiserror::Error;

/// Input errors; all map to exit code 2.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {message}")]
    Io { path: String, message: String },
    #[error("{path}: {source}")]
    Schema {
        path: String,
        #[source]
        source: SchemaError,
    },
    #[error("unknown catalog algebra {0:?}")]
    UnknownCatalog(String),
    #[error("{0}")]
    Algebra(#[from] AlgebraError),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Source {
    File(PathBuf),
    Catalog(String),
}

impl Source {
    pub fn describe(&self) -> String {
        match self {
            Source::File(p) => p.display().to_string(),
            Source::Catalog(n) => format!("catalog:{n}"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Loaded {
    pub source: Source,
    pub file: AlgebraFile,
}

impl Loaded {
    pub fn name(&self) -> Option<String> {
        self.file.name.clone().or_else(|| match &self.source {
            Source::Catalog(n) => Some(n.clone()),
            Source::File(_) => None,
        })
    }
}

pub fn load(source: &Source) -> Result<Loaded, CliError> {
    let file = match source {
        Source::File(path) => {
            let text = fs::read_to_string(path).map_err(|e| CliError::Io {
                path: path.display().to_string(),
                message: e.to_string(),
            })?;
            parse_algebra_str(&text).map_err(|source| CliError::Schema {
                path: path.display().to_string(),
                source,
            })?
        }
        Source::Catalog(name) => AlgebraFile {
            name: Some(name.clone()),
            algebra: catalog::by_name(name).ok_or_else(|| CliError::UnknownCatalog(name.clone()))?,
            lattice: None,
        },
    };
    Ok(Loaded {
        source: source.clone(),
        file,
    })
}

/// Parses `"2,2,2"` or `"1/2, 1/2"` into rationals.
pub fn parse_scales(text: &str) -> Result<Vec<Rational>, ParseError> {
    text.split(',').map(|s| parse_rational(s.trim())).collect()
}
