//! Corpus analysis for public-domain poetry collections: ingestion and
//! cleaning, tokenization, document-term matrices, dimensionality
//! reduction, topic factorization, distinctive-word scoring, per-text
//! lexical and affect profiles, and trigram surprisal.

pub mod distinctive;
pub mod dtm;
pub mod error;
pub mod export;
pub mod figures;
pub mod ingest;
pub mod lm;
pub mod matrix;
pub mod numerics;
pub mod pipeline;
pub mod profile;
pub mod stem;
pub mod util;
pub mod wordnet;

pub use error::{Error, Result};
pub use matrix::Mat;
