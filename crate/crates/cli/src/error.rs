// Copyright 2026 The spon Authors
// SPDX-License-Identifier: Apache-2.0

use serde::Serialize;
use spon::SponError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Config(String),
    #[error("{0}")]
    Domain(String),
    #[error("{context}: {source}")]
    Io {
        context: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn io(context: impl Into<String>, source: std::io::Error) -> Self {
        CliError::Io {
            context: context.into(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Io { .. } => 4,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Config(_) => "config",
            CliError::Domain(_) => "domain",
            CliError::Io { .. } => "io",
        }
    }

    /// One-line JSON error record for stderr.
    pub fn record(&self) -> String {
        #[derive(Serialize)]
        struct Record<'a> {
            error: &'a str,
            message: String,
            exit_code: i32,
        }
        serde_json::to_string(&Record {
            error: self.kind(),
            message: self.to_string(),
            exit_code: self.exit_code(),
        })
        .expect("error record serializes")
    }
}

impl From<SponError> for CliError {
    fn from(e: SponError) -> Self {
        if e.is_config() {
            CliError::Config(e.to_string())
        } else {
            CliError::Domain(e.to_string())
        }
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => CliError::io("writing CSV", io),
            other => CliError::Domain(format!("CSV encoding failed: {other:?}")),
        }
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
