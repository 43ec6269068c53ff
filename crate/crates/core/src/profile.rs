//! Per-text lexical measurements: surface statistics, part-of-speech
//! counts, collocations, dispersion, grapheme sonority, and affect scores
//! against WordNet-anchored emotion labels.

use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::pipeline::Token;
use crate::wordnet::{lcs_distance, Pos, SynsetGraph};

pub const CORPUS_TYPE_TOTAL: usize = 41_857;

const SONORITY_FILE: &str = include_str!("../data/sonority_en.txt");
const AFFECT_FILE: &str = include_str!("../data/affect_labels.txt");

#[derive(Clone, Debug, Serialize)]
pub struct SurfaceProfile {
    pub token_count: usize,
    pub type_count: usize,
    pub hapax_count: usize,
    pub ttr: f64,
    pub type_share: f64,
}

pub fn surface_profile(stream: &[Token], corpus_type_total: usize) -> Result<SurfaceProfile> {
    if stream.is_empty() {
        return Err(Error::EmptyInput("surface profile of an empty stream".into()));
    }
    let mut freq: HashMap<&str, usize> = HashMap::new();
    for t in stream {
        *freq.entry(t.lower.as_str()).or_default() += 1;
    }
    let token_count = stream.len();
    let type_count = freq.len();
    let hapax_count = freq.values().filter(|&&c| c == 1).count();
    Ok(SurfaceProfile {
        token_count,
        type_count,
        hapax_count,
        ttr: type_count as f64 / token_count as f64,
        type_share: type_count as f64 / corpus_type_total as f64,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct PosProfile {
    pub noun_count: usize,
    pub verb_count: usize,
    pub adj_count: usize,
    /// None when verb_count is 0.
    pub av_quotient: Option<f64>,
    pub top_nouns: Vec<(String, usize)>,
    pub top_verbs: Vec<(String, usize)>,
    pub top_adjs: Vec<(String, usize)>,
}

const TOP_WORDS_PER_POS: usize = 10;

/// Counts distinct word types per part of speech by exact WordNet index
/// membership; a type listed as both noun and verb increments both. The
/// top lists rank those same types by token frequency.
pub fn pos_profile(stream: &[Token], graph: &SynsetGraph) -> Result<PosProfile> {
    if stream.is_empty() {
        return Err(Error::EmptyInput("pos profile of an empty stream".into()));
    }
    let mut freq: BTreeMap<&str, usize> = BTreeMap::new();
    for t in stream {
        *freq.entry(t.lower.as_str()).or_default() += 1;
    }
    let mut counts: BTreeMap<Pos, usize> = BTreeMap::new();
    let mut by_pos: BTreeMap<Pos, Vec<(String, usize)>> = BTreeMap::new();
    for (&word, &n) in &freq {
        for pos in [Pos::Noun, Pos::Verb, Pos::Adj] {
            if graph.has_lemma(word, pos) {
                *counts.entry(pos).or_default() += 1;
                by_pos.entry(pos).or_default().push((word.to_string(), n));
            }
        }
    }
    let top = |pos: Pos| -> Vec<(String, usize)> {
        let mut list = by_pos.get(&pos).cloned().unwrap_or_default();
        list.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
        list.truncate(TOP_WORDS_PER_POS);
        list
    };
    let noun_count = counts.get(&Pos::Noun).copied().unwrap_or(0);
    let verb_count = counts.get(&Pos::Verb).copied().unwrap_or(0);
    let adj_count = counts.get(&Pos::Adj).copied().unwrap_or(0);
    Ok(PosProfile {
        noun_count,
        verb_count,
        adj_count,
        av_quotient: (verb_count > 0).then(|| adj_count as f64 / verb_count as f64),
        top_nouns: top(Pos::Noun),
        top_verbs: top(Pos::Verb),
        top_adjs: top(Pos::Adj),
    })
}

/// Top-k n-grams of the (already filtered) stream by raw frequency,
/// ties broken lexicographically.
pub fn collocations(stream: &[Token], n: usize, k: usize) -> Result<Vec<(Vec<String>, usize)>> {
    if k == 0 {
        return Ok(Vec::new());
    }
    let windows = crate::pipeline::ngrams(stream, n)?;
    let mut counts: BTreeMap<Vec<&str>, usize> = BTreeMap::new();
    for w in windows {
        let gram: Vec<&str> = w.iter().map(|t| t.lower.as_str()).collect();
        *counts.entry(gram).or_default() += 1;
    }
    let mut ranked: Vec<(Vec<String>, usize)> = counts
        .into_iter()
        .map(|(gram, c)| (gram.into_iter().map(str::to_string).collect(), c))
        .collect();
    ranked.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    ranked.truncate(k);
    Ok(ranked)
}

/// Normalized positions (index / stream length) of every token whose lower
/// or stem equals each target.
pub fn dispersion(stream: &[Token], targets: &[String]) -> Vec<(String, Vec<f64>)> {
    let len = stream.len() as f64;
    targets
        .iter()
        .map(|target| {
            let positions = stream
                .iter()
                .enumerate()
                .filter(|(_, t)| t.lower == *target || t.stem == *target)
                .map(|(i, _)| i as f64 / len)
                .collect();
            (target.clone(), positions)
        })
        .collect()
}

#[derive(Clone, Debug)]
pub struct SonorityTable {
    ranks: [Option<f64>; 26],
}

impl SonorityTable {
    pub fn bundled() -> SonorityTable {
        SonorityTable::from_lines(SONORITY_FILE).expect("bundled sonority table is valid")
    }

    pub fn from_lines(text: &str) -> Result<SonorityTable> {
        let mut ranks = [None; 26];
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let letter = parts
                .next()
                .and_then(|s| s.chars().next())
                .ok_or_else(|| Error::InvalidArgument(format!("bad sonority line {line:?}")))?;
            let rank: f64 = parts
                .next()
                .and_then(|s| s.parse().ok())
                .ok_or_else(|| Error::InvalidArgument(format!("bad sonority rank in {line:?}")))?;
            if !(1.0..=10.0).contains(&rank) {
                return Err(Error::InvalidArgument(format!(
                    "sonority rank {rank} outside [1,10]"
                )));
            }
            if !letter.is_ascii_lowercase() {
                return Err(Error::InvalidArgument(format!(
                    "sonority grapheme {letter:?} is not a lowercase letter"
                )));
            }
            ranks[letter as usize - 'a' as usize] = Some(rank);
        }
        Ok(SonorityTable { ranks })
    }

    fn rank(&self, c: char) -> Option<f64> {
        let lower = c.to_ascii_lowercase();
        if lower.is_ascii_lowercase() {
            self.ranks[lower as usize - 'a' as usize]
        } else {
            None
        }
    }
}

/// Mean sonority rank over the word's ranked graphemes; None when the word
/// has none (punctuation-only or foreign script), which excludes it from
/// text means.
pub fn sonority_word(word: &str, table: &SonorityTable) -> Option<f64> {
    let ranks: Vec<f64> = word.chars().filter_map(|c| table.rank(c)).collect();
    if ranks.is_empty() {
        return None;
    }
    Some(ranks.iter().sum::<f64>() / ranks.len() as f64)
}

/// Unweighted mean of per-token word scores over scorable tokens.
pub fn sonority_text(stream: &[Token], table: &SonorityTable) -> Option<f64> {
    let scores: Vec<f64> = stream
        .iter()
        .filter_map(|t| sonority_word(&t.lower, table))
        .collect();
    if scores.is_empty() {
        return None;
    }
    Some(scores.iter().sum::<f64>() / scores.len() as f64)
}

#[derive(Clone, Debug)]
pub struct AffectLabels {
    pub pos: Vec<String>,
    pub neg: Vec<String>,
    pub aro: Vec<String>,
}

impl AffectLabels {
    pub fn bundled() -> AffectLabels {
        AffectLabels::from_lines(AFFECT_FILE).expect("bundled affect labels are valid")
    }

    pub fn from_lines(text: &str) -> Result<AffectLabels> {
        let mut sections: BTreeMap<String, Vec<String>> = BTreeMap::new();
        let mut current: Option<String> = None;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            if let Some(name) = line.strip_prefix('[').and_then(|s| s.strip_suffix(']')) {
                current = Some(name.to_string());
                sections.entry(name.to_string()).or_default();
            } else if let Some(section) = &current {
                sections
                    .get_mut(section)
                    .unwrap()
                    .push(line.to_lowercase());
            } else {
                return Err(Error::InvalidArgument(format!(
                    "affect label {line:?} outside any section"
                )));
            }
        }
        let mut take = |name: &str, want: usize| -> Result<Vec<String>> {
            let list = sections.remove(name).unwrap_or_default();
            if list.len() != want {
                return Err(Error::InvalidArgument(format!(
                    "affect section {name:?} has {} labels, expected {want}",
                    list.len()
                )));
            }
            Ok(list)
        };
        Ok(AffectLabels {
            pos: take("positive", 7)?,
            neg: take("negative", 5)?,
            aro: take("arousal", 14)?,
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AffectScores {
    pub pos_mean: f64,
    pub neg_mean: f64,
    pub aro_mean: f64,
    /// Scorable types over distinct types in the stream.
    pub hit_rate: f64,
    pub most_positive: String,
    pub most_negative: String,
    pub most_arousing: String,
    /// Per scorable type: (positive, negative, arousal) sums.
    pub word_scores: BTreeMap<String, [f64; 3]>,
}

/// Score every distinct word with at least one WordNet synset against the
/// three label lists. A word's score per dimension is the sum over labels
/// of path similarity; text means average over scorable words only.
pub fn affect_scores(
    stream: &[Token],
    labels: &AffectLabels,
    graph: &SynsetGraph,
) -> Result<AffectScores> {
    let mut types: Vec<&str> = stream.iter().map(|t| t.lower.as_str()).collect();
    types.sort_unstable();
    types.dedup();
    if types.is_empty() {
        return Err(Error::NoScorableWords);
    }

    let dims = [&labels.pos, &labels.neg, &labels.aro];
    let mut label_ancestors: Vec<Vec<HashMap<crate::wordnet::SynsetId, u32>>> = Vec::new();
    for dim in dims {
        let mut per_label = Vec::new();
        for label in dim.iter() {
            let synsets = graph.synsets_exact(label);
            if synsets.is_empty() {
                return Err(Error::InvalidArgument(format!(
                    "affect label {label:?} is not in WordNet"
                )));
            }
            per_label.push(graph.ancestors(&synsets));
        }
        label_ancestors.push(per_label);
    }

    let mut word_scores: BTreeMap<String, [f64; 3]> = BTreeMap::new();
    for word in &types {
        let synsets = graph.synsets_exact(word);
        if synsets.is_empty() {
            continue;
        }
        let anc = graph.ancestors(&synsets);
        let mut scores = [0.0f64; 3];
        for (d, per_label) in label_ancestors.iter().enumerate() {
            scores[d] = per_label
                .iter()
                .filter_map(|lab| lcs_distance(&anc, lab))
                .map(|dist| 1.0 / (1.0 + f64::from(dist)))
                .sum();
        }
        word_scores.insert((*word).to_string(), scores);
    }
    if word_scores.is_empty() {
        return Err(Error::NoScorableWords);
    }

    let hits = word_scores.len() as f64;
    let mean = |d: usize| word_scores.values().map(|s| s[d]).sum::<f64>() / hits;
    // BTreeMap iteration is lexicographic, so strict > keeps the first of
    // any tied maxima: ties resolve to the lexicographically smaller word.
    let extreme = |d: usize| {
        word_scores
            .iter()
            .fold(("", f64::NEG_INFINITY), |best, (w, s)| {
                if s[d] > best.1 {
                    (w.as_str(), s[d])
                } else {
                    best
                }
            })
            .0
            .to_string()
    };
    Ok(AffectScores {
        pos_mean: mean(0),
        neg_mean: mean(1),
        aro_mean: mean(2),
        hit_rate: hits / types.len() as f64,
        most_positive: extreme(0),
        most_negative: extreme(1),
        most_arousing: extreme(2),
        word_scores,
    })
}
