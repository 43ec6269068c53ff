use std::path::Path;

use crate::error::{Error, Result};

/// Read a file as UTF-8, falling back to Latin-1 when the bytes do not
/// decode. Every byte sequence decodes under the fallback, so the only
/// failure mode is I/O.
pub fn read_text_latin1_fallback(path: &Path) -> Result<String> {
    let bytes = std::fs::read(path).map_err(|e| Error::io(path, e))?;
    Ok(match String::from_utf8(bytes) {
        Ok(text) => text,
        Err(err) => err.into_bytes().iter().map(|&b| b as char).collect(),
    })
}

/// Normalize line endings to bare newlines.
pub fn normalize_newlines(text: &str) -> String {
    text.replace("\r\n", "\n").replace('\r', "\n")
}
