//! Subgroup discovery for tabular data and for latent spaces of a
//! variational autoencoder trained with a subgroup-aware loss.
//!
//! The crate has two halves that meet in [`sdtrain`]:
//!
//! * a pattern-mining half ([`data`], [`selectors`], [`quality`],
//!   [`search`]) that mines conjunctive subgroup descriptions from a
//!   table with a binary target, scored by the classic
//!   `coverage^alpha * (target_share - population_share)` measure;
//! * a learning half ([`tensor`], [`vae`]) providing a small
//!   reverse-mode autodiff engine, dense VAE and Adam, on top of which
//!   [`sdtrain`] adds a correlation surrogate loss so that the latent
//!   space itself yields high-quality subgroups.
//!
//! [`synth`] generates a factor-based image benchmark with known ground
//! truth, [`evalrep`] produces reports, latent traversals and a linear
//! probe, and [`cli`] ties everything into reproducible commands.

pub mod cli;
pub mod data;
pub mod evalrep;
pub mod quality;
pub mod sdtrain;
pub mod search;
pub mod selectors;
pub mod synth;
pub mod tensor;
pub mod vae;

use thiserror::Error;

/// Crate-wide error type. `User` covers bad input data or
/// configuration; `Internal` marks broken invariants.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0}")]
    Io(#[from] std::io::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
    #[error("{0}")]
    Data(String),
    #[error("{0}")]
    Config(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl Error {
    /// Process exit code for the CLI: 1 for user/data errors, 2 for
    /// internal invariant violations.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Internal(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
