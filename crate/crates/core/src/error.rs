//! Error types shared across the crate.

use thiserror::Error;

/// Unified error type for the decoherence library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument fell outside the domain of an operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The Fock basis is too small for the requested coherent amplitude.
    #[error(
        "Fock truncation at n_max = {actual} is insufficient for |alpha|^2 = {nbar:.6}; \
         required n_max >= {required}"
    )]
    Truncation {
        nbar: f64,
        actual: usize,
        required: usize,
    },

    /// A material file failed to parse.
    #[error("material file parse error at line {line}: {message}")]
    MaterialParse { line: usize, message: String },

    /// A required key was absent from a material file.
    #[error("material file is missing required key `{key}`")]
    MissingKey { key: String },

    /// A material file contained a key outside the documented set.
    #[error("material file has unknown key `{key}` at line {line}")]
    UnknownKey { key: String, line: usize },

    /// A field value violated a material invariant.
    #[error("material invariant violated for field(s) {fields}: {message}")]
    MaterialInvariant { fields: String, message: String },

    /// An ODE integration could not proceed.
    #[error("integration failure at t = {t_reached:.6e}: {message}")]
    Integration { t_reached: f64, message: String },

    /// A mode-grid or solver configuration is unusable as requested.
    #[error("configuration error: {0}")]
    Configuration(String),

    /// A decay-rate fit could not be performed.
    #[error("fit error: {0}")]
    Fit(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
