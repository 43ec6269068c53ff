use std::collections::HashSet;
use std::sync::LazyLock;

use crate::error::{Error, Result};
use crate::stem;

/// One word token. `lower` is the case-folded surface with curly
/// apostrophes straightened; `stem` starts equal to `lower` and is filled
/// in by [`preprocess`] when stemming is requested.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub lower: String,
    pub stem: String,
    pub char_offset: usize,
    pub sentence_index: usize,
}

pub type TokenStream = Vec<Token>;

const STOPWORDS_FILE: &str = include_str!("../data/stopwords_en.txt");
const ABBREVIATIONS_FILE: &str = include_str!("../data/abbreviations_en.txt");

static ABBREVIATIONS: LazyLock<Vec<&str>> = LazyLock::new(|| {
    ABBREVIATIONS_FILE
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .collect()
});

#[derive(Clone, Debug)]
pub struct StopwordList {
    entries: HashSet<String>,
}

impl StopwordList {
    pub fn bundled() -> StopwordList {
        StopwordList::from_lines(STOPWORDS_FILE).expect("bundled stopword list is valid")
    }

    pub fn from_lines(text: &str) -> Result<StopwordList> {
        let mut entries = HashSet::new();
        for line in text.lines() {
            let word = line.trim();
            if word.is_empty() || word.starts_with('#') {
                continue;
            }
            if word.chars().any(|c| c.is_uppercase()) {
                return Err(Error::InvalidArgument(format!(
                    "stopword {word:?} is not lowercase"
                )));
            }
            entries.insert(word.to_string());
        }
        Ok(StopwordList { entries })
    }

    pub fn contains(&self, lower: &str) -> bool {
        self.entries.contains(lower)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphabetic()
}

fn is_connector(c: char) -> bool {
    c == '\'' || c == '\u{2019}' || c == '-'
}

/// Split text into word tokens and assign sentence indices.
///
/// A token is a maximal run of letters, possibly joined by single internal
/// apostrophes or hyphens. Sentence boundaries are `.`, `!`, or `?` followed
/// by whitespace and a capital letter, except after a guarded abbreviation.
pub fn tokenize(text: &str) -> TokenStream {
    let chars: Vec<char> = text.chars().collect();
    let mut tokens = Vec::new();
    let mut sentence = 0usize;
    let mut i = 0usize;
    while i < chars.len() {
        let c = chars[i];
        if is_word_char(c) {
            let start = i;
            i += 1;
            while i < chars.len() {
                if is_word_char(chars[i]) {
                    i += 1;
                } else if is_connector(chars[i]) && i + 1 < chars.len() && is_word_char(chars[i + 1])
                {
                    i += 2;
                } else {
                    break;
                }
            }
            let surface: String = chars[start..i].iter().collect();
            let lower: String = surface
                .chars()
                .map(|c| if c == '\u{2019}' { '\'' } else { c })
                .collect::<String>()
                .to_lowercase();
            tokens.push(Token {
                surface,
                stem: lower.clone(),
                lower,
                char_offset: start,
                sentence_index: sentence,
            });
        } else {
            if matches!(c, '.' | '!' | '?') && boundary_follows(&chars, i, &tokens) {
                sentence += 1;
            }
            i += 1;
        }
    }
    tokens
}

/// True when the terminator at `chars[at]` ends a sentence: whitespace then
/// a capital letter follows, and the preceding token is not an abbreviation.
fn boundary_follows(chars: &[char], at: usize, tokens: &[Token]) -> bool {
    if chars[at] == '.' {
        if let Some(last) = tokens.last() {
            if ABBREVIATIONS.contains(&last.lower.as_str()) {
                return false;
            }
        }
    }
    let mut j = at + 1;
    let mut saw_space = false;
    while j < chars.len() && chars[j].is_whitespace() {
        saw_space = true;
        j += 1;
    }
    saw_space && j < chars.len() && chars[j].is_uppercase()
}

/// Drop stopwords and optionally fill each token's stem field.
pub fn preprocess(stream: &[Token], stopwords: &StopwordList, do_stem: bool) -> TokenStream {
    stream
        .iter()
        .filter(|t| !stopwords.contains(&t.lower))
        .map(|t| {
            let mut t = t.clone();
            if do_stem {
                t.stem = stem::stem(&t.lower);
            }
            t
        })
        .collect()
}

/// All contiguous n-token windows, in order.
pub fn ngrams<'a>(stream: &'a [Token], n: usize) -> Result<Vec<&'a [Token]>> {
    if n == 0 {
        return Err(Error::InvalidArgument("ngram size must be at least 1".into()));
    }
    if stream.len() < n {
        return Ok(Vec::new());
    }
    Ok(stream.windows(n).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lowers(stream: &[Token]) -> Vec<&str> {
        stream.iter().map(|t| t.lower.as_str()).collect()
    }

    #[test]
    fn empty_text_empty_stream() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn title_line() {
        let toks = tokenize("How Lisa Loved the King");
        assert_eq!(lowers(&toks), ["how", "lisa", "loved", "the", "king"]);
        assert!(toks.iter().all(|t| t.sentence_index == 0));
    }

    #[test]
    fn apostrophes_and_boundaries() {
        let toks = tokenize("Don't stop. Go!");
        assert_eq!(lowers(&toks), ["don't", "stop", "go"]);
        let sent: Vec<usize> = toks.iter().map(|t| t.sentence_index).collect();
        assert_eq!(sent, [0, 0, 1]);
    }

    #[test]
    fn abbreviation_guard() {
        let toks = tokenize("Mr. Pickwick spoke. He left.");
        let sent: Vec<usize> = toks.iter().map(|t| t.sentence_index).collect();
        assert_eq!(lowers(&toks), ["mr", "pickwick", "spoke", "he", "left"]);
        assert_eq!(sent, [0, 0, 0, 1, 1]);
    }

    #[test]
    fn trailing_apostrophe_dropped_curly_normalized() {
        assert_eq!(lowers(&tokenize("dol' de dol")), ["dol", "de", "dol"]);
        assert_eq!(lowers(&tokenize("love\u{2019}s")), ["love's"]);
    }

    #[test]
    fn hyphen_compound_kept() {
        assert_eq!(lowers(&tokenize("mood-empathic art")), ["mood-empathic", "art"]);
    }

    #[test]
    fn digits_never_tokenized() {
        assert_eq!(lowers(&tokenize("canto 12, line 3")), ["canto", "line"]);
    }

    #[test]
    fn stopword_filtering() {
        let sw = StopwordList::bundled();
        assert_eq!(sw.len(), 179);
        let toks = tokenize("the king");
        assert_eq!(lowers(&preprocess(&toks, &sw, false)), ["king"]);
        // Archaic pronouns are not in the list.
        assert!(!sw.contains("thy"));
        assert!(!sw.contains("thee"));
        assert!(!sw.contains("thou"));
    }

    #[test]
    fn preprocess_stems() {
        let sw = StopwordList::bundled();
        let toks = preprocess(&tokenize("loved happiness"), &sw, true);
        let stems: Vec<&str> = toks.iter().map(|t| t.stem.as_str()).collect();
        assert_eq!(stems, ["love", "happi"]);
    }

    #[test]
    fn ngram_windows() {
        let toks = tokenize("a b c");
        let bi = ngrams(&toks, 2).unwrap();
        assert_eq!(bi.len(), 2);
        assert_eq!(bi[0][0].lower, "a");
        assert_eq!(bi[0][1].lower, "b");
        assert!(ngrams(&toks, 4).unwrap().is_empty());
        assert!(ngrams(&toks, 0).is_err());
    }

    #[test]
    fn overlapping_ngrams_counted() {
        let toks = tokenize("a b a b");
        let bi = ngrams(&toks, 2).unwrap();
        let ab = bi
            .iter()
            .filter(|w| w[0].lower == "a" && w[1].lower == "b")
            .count();
        assert_eq!(ab, 2);
    }
}
