//! Corpus ingestion: manifest-driven loading of raw text files and a
//! line-oriented cleaner that strips distribution boilerplate, apparatus
//! sections, footnotes, line numbers, non-English stanzas, and duplicated
//! blocks while reporting exactly what was removed.

use std::collections::HashSet;
use std::path::{Path, PathBuf};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::tokenize;
use crate::util::{normalize_newlines, read_text_latin1_fallback};

const HEADER_MARKERS: &str = include_str!("../data/header_markers.txt");
const FOOTER_MARKERS: &str = include_str!("../data/footer_markers.txt");
const FUNCTION_WORDS: &str = include_str!("../data/function_words_en.txt");

#[derive(Clone, Debug)]
pub struct RawText {
    pub id: String,
    pub author: String,
    pub title: String,
    pub year: Option<i32>,
    pub path: PathBuf,
    pub content: String,
}

#[derive(Clone, Debug)]
pub struct CleaningRules {
    /// Cut everything up to and including the last line containing one of
    /// these (case-insensitive).
    pub boilerplate_start: Vec<String>,
    /// Blocks whose first line equals one of these headings are removed.
    pub section_headings: Vec<String>,
    /// The first line matching one of these starts a cut to end of text.
    pub footer_markers: Vec<String>,
    /// Blocks at or above this token count with a function-word rate below
    /// the threshold are treated as non-English.
    pub non_english_min_tokens: usize,
    pub non_english_threshold: f64,
    /// Blocks whose shingle sets overlap an earlier block at or above this
    /// Jaccard similarity are duplicates; blocks shorter than one shingle
    /// are exempt.
    pub dedup_jaccard: f64,
    pub shingle_len: usize,
    pub function_words: HashSet<String>,
}

impl Default for CleaningRules {
    fn default() -> CleaningRules {
        let mut boilerplate_start = Vec::new();
        let mut section_headings = Vec::new();
        for line in HEADER_MARKERS.lines() {
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let (kind, pattern) = line
                .split_once('\t')
                .expect("bundled header rule has KIND<TAB>PATTERN shape");
            match kind {
                "boilerplate-start" => boilerplate_start.push(pattern.to_string()),
                "section" => section_headings.push(pattern.to_string()),
                other => unreachable!("unknown bundled header rule kind {other:?}"),
            }
        }
        let footer_markers = FOOTER_MARKERS
            .lines()
            .filter(|l| !l.is_empty() && !l.starts_with('#'))
            .map(str::to_string)
            .collect();
        let function_words = FUNCTION_WORDS
            .split_whitespace()
            .map(str::to_string)
            .collect();
        CleaningRules {
            boilerplate_start,
            section_headings,
            footer_markers,
            non_english_min_tokens: 25,
            non_english_threshold: 0.25,
            dedup_jaccard: 0.9,
            shingle_len: 5,
            function_words,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RemovalReason {
    BoilerplateHeader,
    BoilerplateFooter,
    SectionBlock,
    FootnoteLine,
    LineNumber,
    NonEnglish,
    DuplicateBlock,
}

impl RemovalReason {
    pub fn label(self) -> &'static str {
        match self {
            RemovalReason::BoilerplateHeader => "boilerplate_header",
            RemovalReason::BoilerplateFooter => "boilerplate_footer",
            RemovalReason::SectionBlock => "section_block",
            RemovalReason::FootnoteLine => "footnote_line",
            RemovalReason::LineNumber => "line_number",
            RemovalReason::NonEnglish => "non_english",
            RemovalReason::DuplicateBlock => "duplicate_block",
        }
    }
}

/// Half-open range of removed lines, indices into the newline-normalized
/// input.
#[derive(Clone, Debug, Serialize)]
pub struct RemovedSpan {
    pub start_line: usize,
    pub end_line: usize,
    pub reason: RemovalReason,
}

/// A kept line whose trailing line-number tail was cut; appending the tail
/// restores the original line.
#[derive(Clone, Debug, Serialize)]
pub struct TrimmedTail {
    pub line: usize,
    pub tail: String,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CleaningReport {
    pub removed: Vec<RemovedSpan>,
    pub trimmed: Vec<TrimmedTail>,
    pub lines_in: usize,
    pub lines_out: usize,
}

fn strip_decoration(line: &str) -> String {
    line.trim()
        .trim_matches(|c: char| !c.is_alphanumeric())
        .to_uppercase()
}

fn footer_matches(line: &str, pattern: &str) -> bool {
    let upper = line.to_uppercase();
    let pat = pattern.to_uppercase();
    if pattern.contains('*') {
        return upper.contains(&pat);
    }
    let stripped = strip_decoration(line);
    if pattern.contains(' ') {
        stripped.starts_with(&pat)
    } else {
        stripped == pat
    }
}

/// Line states during cleaning. A removed line never carries a tail, so
/// the report stays one fact per line.
struct LineState {
    removed: Option<RemovalReason>,
    trimmed_tail: Option<usize>,
}

struct Cleaner<'a> {
    lines: Vec<&'a str>,
    state: Vec<LineState>,
    rules: &'a CleaningRules,
}

impl<'a> Cleaner<'a> {
    fn kept_text(&self, i: usize) -> &str {
        match self.state[i].trimmed_tail {
            Some(byte) => &self.lines[i][..byte],
            None => self.lines[i],
        }
    }

    fn remove(&mut self, i: usize, reason: RemovalReason) {
        self.state[i].removed = Some(reason);
        self.state[i].trimmed_tail = None;
    }

    /// Maximal runs of kept, non-blank lines. Only kept blank lines
    /// separate blocks; removed lines are invisible, neither joining nor
    /// splitting a block. A block therefore equals a blank-line-delimited
    /// stanza of the eventual output, so a second cleaning pass sees the
    /// same block structure and reaches the same decisions.
    fn blocks(&self) -> Vec<Vec<usize>> {
        let mut blocks = Vec::new();
        let mut current: Vec<usize> = Vec::new();
        for i in 0..self.lines.len() {
            if self.state[i].removed.is_some() {
                continue;
            }
            if self.kept_text(i).trim().is_empty() {
                if !current.is_empty() {
                    blocks.push(std::mem::take(&mut current));
                }
            } else {
                current.push(i);
            }
        }
        if !current.is_empty() {
            blocks.push(current);
        }
        blocks
    }

    fn block_tokens(&self, block: &[usize]) -> Vec<String> {
        let text: String = block
            .iter()
            .map(|&i| self.kept_text(i))
            .collect::<Vec<_>>()
            .join("\n");
        tokenize(&text).into_iter().map(|t| t.lower).collect()
    }

    fn cut_boilerplate(&mut self) {
        let last_start = (0..self.lines.len())
            .filter(|&i| {
                if self.state[i].removed.is_some() {
                    return false;
                }
                let upper = self.kept_text(i).to_uppercase();
                self.rules
                    .boilerplate_start
                    .iter()
                    .any(|p| upper.contains(&p.to_uppercase()))
            })
            .next_back();
        if let Some(cut) = last_start {
            for i in 0..=cut {
                self.remove(i, RemovalReason::BoilerplateHeader);
            }
        }
        let first_footer = (0..self.lines.len()).find(|&i| {
            self.state[i].removed.is_none()
                && self
                    .rules
                    .footer_markers
                    .iter()
                    .any(|p| footer_matches(self.kept_text(i), p))
        });
        if let Some(cut) = first_footer {
            for i in cut..self.lines.len() {
                self.remove(i, RemovalReason::BoilerplateFooter);
            }
        }
    }

    fn cut_sections(&mut self) {
        for block in self.blocks() {
            let head = strip_decoration(self.kept_text(block[0]));
            if self
                .rules
                .section_headings
                .iter()
                .any(|p| head == p.to_uppercase())
            {
                for i in block {
                    self.remove(i, RemovalReason::SectionBlock);
                }
            }
        }
    }

    fn cut_footnotes(&mut self) {
        for i in 0..self.lines.len() {
            if self.state[i].removed.is_some() {
                continue;
            }
            let trimmed = self.kept_text(i).trim_start();
            let is_footnote = trimmed.starts_with("[Footnote")
                || (trimmed.starts_with('[')
                    && trimmed[1..].starts_with(|c: char| c.is_ascii_digit()));
            if is_footnote {
                self.remove(i, RemovalReason::FootnoteLine);
            }
        }
    }

    fn cut_line_numbers(&mut self) {
        for i in 0..self.lines.len() {
            if self.state[i].removed.is_some() {
                continue;
            }
            // Trim to a fixpoint: stripping one flush-right number can
            // expose another, and a line that is nothing but numbers and
            // spacing goes away entirely.
            loop {
                let line = self.kept_text(i);
                let trimmed = line.trim();
                if !trimmed.is_empty() && trimmed.chars().all(|c| c.is_ascii_digit()) {
                    self.remove(i, RemovalReason::LineNumber);
                    break;
                }
                // A trailing tail of two or more spaces plus digits is a
                // line number typeset flush right.
                let without_digits = line.trim_end_matches(|c: char| c.is_ascii_digit());
                if without_digits.len() < line.len() && without_digits.ends_with("  ") {
                    let cut = without_digits.trim_end_matches(' ').len();
                    if cut > 0 {
                        self.state[i].trimmed_tail = Some(cut);
                        continue;
                    }
                    self.remove(i, RemovalReason::LineNumber);
                    break;
                }
                break;
            }
        }
    }

    fn cut_non_english(&mut self) {
        for block in self.blocks() {
            let tokens = self.block_tokens(&block);
            if tokens.len() < self.rules.non_english_min_tokens {
                continue;
            }
            let hits = tokens
                .iter()
                .filter(|t| self.rules.function_words.contains(t.as_str()))
                .count();
            let rate = hits as f64 / tokens.len() as f64;
            if rate < self.rules.non_english_threshold {
                for i in block {
                    self.remove(i, RemovalReason::NonEnglish);
                }
            }
        }
    }

    fn cut_duplicates(&mut self) {
        let shingle = self.rules.shingle_len;
        let mut kept: Vec<HashSet<Vec<String>>> = Vec::new();
        for block in self.blocks() {
            let tokens = self.block_tokens(&block);
            if tokens.len() < shingle {
                continue;
            }
            let shingles: HashSet<Vec<String>> =
                tokens.windows(shingle).map(|w| w.to_vec()).collect();
            let duplicate = kept.iter().any(|earlier| {
                let inter = shingles.intersection(earlier).count();
                let union = shingles.len() + earlier.len() - inter;
                inter as f64 / union as f64 >= self.rules.dedup_jaccard
            });
            if duplicate {
                for i in block {
                    self.remove(i, RemovalReason::DuplicateBlock);
                }
            } else {
                kept.push(shingles);
            }
        }
    }

    fn into_output(self) -> (String, CleaningReport) {
        let mut report = CleaningReport {
            lines_in: self.lines.len(),
            ..CleaningReport::default()
        };
        let mut kept_lines: Vec<&str> = Vec::new();
        let mut open: Option<RemovedSpan> = None;
        for i in 0..self.lines.len() {
            match self.state[i].removed {
                Some(reason) => match &mut open {
                    Some(span) if span.reason == reason && span.end_line == i => {
                        span.end_line = i + 1;
                    }
                    _ => {
                        if let Some(span) = open.take() {
                            report.removed.push(span);
                        }
                        open = Some(RemovedSpan {
                            start_line: i,
                            end_line: i + 1,
                            reason,
                        });
                    }
                },
                None => {
                    if let Some(span) = open.take() {
                        report.removed.push(span);
                    }
                    if let Some(byte) = self.state[i].trimmed_tail {
                        report.trimmed.push(TrimmedTail {
                            line: i,
                            tail: self.lines[i][byte..].to_string(),
                        });
                        kept_lines.push(&self.lines[i][..byte]);
                    } else {
                        kept_lines.push(self.lines[i]);
                    }
                }
            }
        }
        if let Some(span) = open.take() {
            report.removed.push(span);
        }
        report.lines_out = kept_lines.len();
        (kept_lines.join("\n"), report)
    }
}

/// Runs all cleaning passes over newline-normalized text. Every removed
/// line lands in the report with its reason, and kept lines pass through
/// byte-for-byte (minus recorded tails), so input can be reconstructed
/// from the output plus the report.
///
/// Line numbers go first so that every later pass matches against the
/// text a rerun would actually see; the pass order plus the stable block
/// model in `blocks` makes cleaning idempotent.
pub fn clean_text(raw: &str, rules: &CleaningRules) -> (String, CleaningReport) {
    let normalized = normalize_newlines(raw);
    let lines: Vec<&str> = normalized.split('\n').collect();
    let state = lines
        .iter()
        .map(|_| LineState {
            removed: None,
            trimmed_tail: None,
        })
        .collect();
    let mut cleaner = Cleaner {
        lines,
        state,
        rules,
    };
    cleaner.cut_line_numbers();
    cleaner.cut_boilerplate();
    cleaner.cut_footnotes();
    cleaner.cut_sections();
    cleaner.cut_non_english();
    cleaner.cut_duplicates();
    cleaner.into_output()
}

/// Loads every text named by a manifest CSV with columns
/// id,author,title,year,path. Rows that fail to load are collected rather
/// than aborting the whole corpus.
pub fn ingest_directory(
    root: &Path,
    manifest: &Path,
) -> Result<(Vec<RawText>, Vec<(String, Error)>)> {
    let mut reader = csv::ReaderBuilder::new()
        .flexible(false)
        .from_path(manifest)
        .map_err(|e| match e.kind() {
            csv::ErrorKind::Io(_) => {
                Error::io(manifest, std::io::Error::other(e.to_string()))
            }
            _ => Error::parse(manifest, 0, e.to_string()),
        })?;
    let mut texts = Vec::new();
    let mut failures = Vec::new();
    for (row, record) in reader.records().enumerate() {
        let record = match record {
            Ok(r) => r,
            Err(e) => {
                failures.push((
                    format!("row {}", row + 1),
                    Error::parse(manifest, row as u64 + 1, e.to_string()),
                ));
                continue;
            }
        };
        let field = |i: usize| record.get(i).unwrap_or("").trim().to_string();
        let id = field(0);
        if record.len() < 5 || id.is_empty() {
            failures.push((
                format!("row {}", row + 1),
                Error::parse(manifest, row as u64 + 1, "expected id,author,title,year,path"),
            ));
            continue;
        }
        let year = match field(3).as_str() {
            "" => None,
            y => match y.parse::<i32>() {
                Ok(v) => Some(v),
                Err(_) => {
                    failures.push((
                        id.clone(),
                        Error::parse(manifest, row as u64 + 1, format!("bad year {y:?}")),
                    ));
                    continue;
                }
            },
        };
        let path = root.join(field(4));
        match read_text_latin1_fallback(&path) {
            Ok(content) => texts.push(RawText {
                id,
                author: field(1),
                title: field(2),
                year,
                path,
                content,
            }),
            Err(e) => failures.push((id, e)),
        }
    }
    if texts.is_empty() && failures.is_empty() {
        return Err(Error::EmptyInput(format!(
            "manifest {} names no texts",
            manifest.display()
        )));
    }
    Ok((texts, failures))
}

/// Cleaned text per author, authors sorted, texts in manifest order joined
/// by blank lines.
pub fn concat_by_author(texts: &[(String, String)]) -> Vec<(String, String)> {
    let mut by_author: std::collections::BTreeMap<&str, Vec<&str>> =
        std::collections::BTreeMap::new();
    for (author, body) in texts {
        by_author.entry(author).or_default().push(body);
    }
    by_author
        .into_iter()
        .map(|(author, bodies)| (author.to_string(), bodies.join("\n\n")))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    const MESSY: &str = "\
The Project Gutenberg EBook of Test Poems\n\
\n\
*** START OF THE PROJECT GUTENBERG EBOOK TEST POEMS ***\n\
\n\
CONTENTS.\n\
A Poem ......... 3\n\
Another Poem ... 9\n\
\n\
A POEM.\n\
The sun arose upon the hill,\n\
The shepherd and his flock stood still,\n\
And every bird and every tree\n\
Sang out the morning melody.\n\
\n\
ANOTHER POEM.\n\
The moon came silver up the sky,   12\n\
14\n\
And watched the quiet river by.\n\
[Footnote 1: An invented example.]\n\
\n\
Dolce e chiara e la notte e senza vento,\n\
e queta sovra i tetti e in mezzo agli orti\n\
posa la luna, e di lontan rivela\n\
serena ogni montagna e ogni riviera,\n\
e la vita e il dolore e la memoria.\n\
\n\
The sun arose upon the hill,\n\
The shepherd and his flock stood still,\n\
And every bird and every tree\n\
Sang out the morning melody.\n\
\n\
*** END OF THE PROJECT GUTENBERG EBOOK TEST POEMS ***\n\
All the legal fine print follows here.\n";

    #[test]
    fn all_passes_fire_on_the_messy_sample() {
        let rules = CleaningRules::default();
        let (cleaned, report) = clean_text(MESSY, &rules);
        assert!(!cleaned.contains("Project Gutenberg"));
        assert!(!cleaned.contains("CONTENTS"));
        assert!(!cleaned.contains("Footnote"));
        assert!(!cleaned.contains("sovra"), "non-English stanza kept");
        assert!(!cleaned.contains("legal fine print"));
        // The duplicated stanza survives only once.
        assert_eq!(cleaned.matches("The sun arose").count(), 1);
        // Trailing line number trimmed, standalone one removed.
        assert!(cleaned.contains("silver up the sky,\n"));
        assert!(!cleaned.contains("12"));
        assert!(!cleaned.contains("14"));
        let reasons: Vec<RemovalReason> =
            report.removed.iter().map(|s| s.reason).collect();
        for want in [
            RemovalReason::BoilerplateHeader,
            RemovalReason::SectionBlock,
            RemovalReason::FootnoteLine,
            RemovalReason::LineNumber,
            RemovalReason::NonEnglish,
            RemovalReason::DuplicateBlock,
            RemovalReason::BoilerplateFooter,
        ] {
            assert!(reasons.contains(&want), "missing {want:?} in {reasons:?}");
        }
        assert_eq!(report.trimmed.len(), 1);
        assert_eq!(report.trimmed[0].tail, "   12");
    }

    #[test]
    fn report_reconstructs_the_input() {
        let rules = CleaningRules::default();
        let (cleaned, report) = clean_text(MESSY, &rules);
        let original: Vec<&str> = MESSY.split('\n').collect();
        let mut kept = cleaned.split('\n');
        let mut rebuilt: Vec<String> = Vec::new();
        for i in 0..original.len() {
            if report
                .removed
                .iter()
                .any(|s| s.start_line <= i && i < s.end_line)
            {
                rebuilt.push(original[i].to_string());
            } else {
                let mut line = kept.next().unwrap().to_string();
                if let Some(t) = report.trimmed.iter().find(|t| t.line == i) {
                    line.push_str(&t.tail);
                }
                rebuilt.push(line);
            }
        }
        assert!(kept.next().is_none());
        assert_eq!(rebuilt.join("\n"), MESSY);
        assert_eq!(report.lines_in, original.len());
        assert_eq!(report.lines_out, cleaned.split('\n').count());
    }

    #[test]
    fn cleaning_is_idempotent() {
        let rules = CleaningRules::default();
        let (once, _) = clean_text(MESSY, &rules);
        let (twice, report) = clean_text(&once, &rules);
        assert_eq!(once, twice);
        assert!(report.removed.is_empty(), "{:?}", report.removed);
    }

    #[test]
    fn english_stanza_with_plain_diction_is_kept() {
        let stanza = "\
The little lamb ran down the lane to meet the setting sun,\n\
and all the bells of morning rang for every weary one,\n\
the river told the valley what the mountain said above,\n\
and every word the water spoke was one old word of love.\n";
        let rules = CleaningRules::default();
        let (cleaned, report) = clean_text(stanza, &rules);
        assert_eq!(cleaned, stanza);
        assert!(report.removed.is_empty());
    }

    #[test]
    fn short_repeated_labels_survive_dedup() {
        let text = "CHORUS.\n\nA verse line long enough to stand alone here.\n\nCHORUS.\n";
        let rules = CleaningRules::default();
        let (cleaned, _) = clean_text(text, &rules);
        assert_eq!(cleaned.matches("CHORUS").count(), 2);
    }

    #[test]
    fn near_duplicate_blocks_are_cut() {
        let text = "\
the quick brown fox jumps over the lazy dog tonight\n\
\n\
the quick brown fox jumps over the lazy dog tonight\n";
        let rules = CleaningRules::default();
        let (cleaned, report) = clean_text(text, &rules);
        assert_eq!(cleaned.matches("quick brown fox").count(), 1);
        assert_eq!(report.removed.len(), 1);
        assert_eq!(report.removed[0].reason, RemovalReason::DuplicateBlock);
    }

    #[test]
    fn fixture_texts_pass_through_untouched() {
        let rules = CleaningRules::default();
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("../../fixtures");
        for name in [
            "blake_poems.txt",
            "dickens_poems_and_verses.txt",
            "eliot_how_lisa_loved_the_king.txt",
            "joyce_chamber_music.txt",
        ] {
            let raw = read_text_latin1_fallback(&dir.join(name)).unwrap();
            let (cleaned, report) = clean_text(&raw, &rules);
            assert_eq!(cleaned, normalize_newlines(&raw), "{name} was altered");
            assert!(report.removed.is_empty(), "{name}: {:?}", report.removed);
            assert!(report.trimmed.is_empty());
        }
    }

    #[test]
    fn manifest_collects_per_row_failures() {
        let dir = tempfile::tempdir().unwrap();
        std::fs::write(dir.path().join("good.txt"), "A line of verse.\n").unwrap();
        let manifest = dir.path().join("manifest.csv");
        std::fs::write(
            &manifest,
            "id,author,title,year,path\n\
             good,Some Author,Good,1900,good.txt\n\
             gone,Some Author,Gone,1901,missing.txt\n\
             bad-year,Some Author,Bad,eighteen,good.txt\n",
        )
        .unwrap();
        let (texts, failures) = ingest_directory(dir.path(), &manifest).unwrap();
        assert_eq!(texts.len(), 1);
        assert_eq!(texts[0].id, "good");
        assert_eq!(texts[0].year, Some(1900));
        assert_eq!(failures.len(), 2);
        assert!(failures.iter().any(|(id, _)| id == "gone"));
        assert!(failures.iter().any(|(id, _)| id == "bad-year"));
    }

    #[test]
    fn missing_manifest_is_an_error() {
        let dir = tempfile::tempdir().unwrap();
        assert!(ingest_directory(dir.path(), &dir.path().join("nope.csv")).is_err());
    }

    #[test]
    fn authors_concatenate_sorted() {
        let texts = vec![
            ("B Author".to_string(), "second".to_string()),
            ("A Author".to_string(), "first".to_string()),
            ("B Author".to_string(), "third".to_string()),
        ];
        let grouped = concat_by_author(&texts);
        assert_eq!(grouped[0].0, "A Author");
        assert_eq!(grouped[1].1, "second\n\nthird");
    }
}
