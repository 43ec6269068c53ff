//! Optional key=value configuration file. Flags always win; the file only
//! fills options the command line left unset.

use std::collections::BTreeMap;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use poetics_core::{Error, Result};

const KNOWN_KEYS: [&str; 10] = [
    "corpus",
    "wordnet",
    "out",
    "seed",
    "topics",
    "segment_len",
    "min_count",
    "max_doc_fraction",
    "samples",
    "burn_in",
];

pub struct FileConfig {
    values: BTreeMap<String, String>,
}

impl FileConfig {
    /// Reads `path` if given. Blank lines and `#` comments are skipped;
    /// everything else must be `key=value` with a known key.
    pub fn load(path: Option<&Path>) -> Result<Self> {
        let mut values = BTreeMap::new();
        let Some(path) = path else {
            return Ok(Self { values });
        };
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        let mut offset = 0;
        for line in text.lines() {
            let body = line.trim();
            if !body.is_empty() && !body.starts_with('#') {
                let (key, value) = body.split_once('=').ok_or_else(|| {
                    Error::parse(path, offset, format!("expected key=value, got {body:?}"))
                })?;
                let key = key.trim();
                if !KNOWN_KEYS.contains(&key) {
                    return Err(Error::parse(
                        path,
                        offset,
                        format!("unknown option {key:?}"),
                    ));
                }
                values.insert(key.to_string(), value.trim().to_string());
            }
            offset += line.len() + 1;
        }
        Ok(Self { values })
    }

    pub fn path(&self, key: &str) -> Option<PathBuf> {
        self.values.get(key).map(PathBuf::from)
    }

    /// Numeric lookup; a present-but-malformed value is an error rather
    /// than a silent fallback to the default.
    pub fn parse<T: FromStr>(&self, key: &str) -> Result<Option<T>> {
        match self.values.get(key) {
            None => Ok(None),
            Some(raw) => raw.parse::<T>().map(Some).map_err(|_| {
                Error::InvalidArgument(format!("config option {key}={raw} is not a valid number"))
            }),
        }
    }
}
