//! Shared helpers for the integration tests: fixture loading and optional
//! WordNet discovery. Each test binary uses its own subset.
#![allow(dead_code)]

use std::path::{Path, PathBuf};

use poetics_core::pipeline::{preprocess, tokenize, StopwordList, TokenStream};

pub fn workspace_root() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../..")
        .canonicalize()
        .unwrap()
}

pub fn fixture_text(name: &str) -> String {
    let path = workspace_root().join("fixtures").join(name);
    std::fs::read_to_string(&path)
        .unwrap_or_else(|e| panic!("cannot read fixture {}: {e}", path.display()))
}

/// Tokenized fixture after stopword removal and stemming.
pub fn content_tokens(raw: &str) -> TokenStream {
    preprocess(&tokenize(raw), &StopwordList::bundled(), true)
}

/// A real WordNet 3.0 dictionary directory, if one is reachable: the
/// WORDNET_DIR environment variable first, then wordnet/dict under the
/// workspace root.
pub fn wordnet_dir() -> Option<PathBuf> {
    if let Ok(dir) = std::env::var("WORDNET_DIR") {
        let p = PathBuf::from(dir);
        if p.join("data.noun").exists() {
            return Some(p);
        }
    }
    let local = workspace_root().join("wordnet").join("dict");
    if local.join("data.noun").exists() {
        return Some(local);
    }
    None
}
