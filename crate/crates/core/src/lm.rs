//! Trigram language model with additive smoothing over sentence-padded
//! streams, used to score texts by mean per-token surprisal.

use std::collections::{BTreeMap, HashMap};
use std::io::Write;
use std::path::Path;

use crate::error::{Error, Result};
use crate::pipeline::Token;
use crate::util::read_text_latin1_fallback;

pub const PAD: &str = "<s>";
pub const UNK: &str = "<unk>";
pub const DEFAULT_SMOOTHING: f64 = 0.5;

const PAD_ID: u32 = 0;
const UNK_ID: u32 = 1;

#[derive(Clone, Debug)]
pub struct TrigramModel {
    words: Vec<String>,
    ids: HashMap<String, u32>,
    unigrams: HashMap<u32, u32>,
    contexts: HashMap<(u32, u32), u32>,
    trigrams: HashMap<(u32, u32, u32), u32>,
    /// Additive smoothing mass per outcome.
    k: f64,
    /// Distinct real training types; the smoothed outcome space is this
    /// plus one for the unknown word.
    vocab_size: usize,
}

/// Every sentence contributes trigrams over [PAD, PAD, w1, ..., wn]; the
/// context count is incremented exactly when a trigram is, so per-history
/// probabilities always sum to one.
pub fn train_trigram(
    streams: &[&[Token]],
    k: f64,
    map_singletons_to_unknown: bool,
) -> Result<TrigramModel> {
    check_smoothing(k)?;
    let sentences = collect_sentences(streams);
    if sentences.iter().all(|s| s.is_empty()) {
        return Err(Error::EmptyInput("trigram training corpus has no tokens".into()));
    }

    let mut raw_counts: HashMap<&str, u32> = HashMap::new();
    for sentence in &sentences {
        for word in sentence {
            *raw_counts.entry(word).or_default() += 1;
        }
    }

    let mut model = TrigramModel {
        words: vec![PAD.to_string(), UNK.to_string()],
        ids: HashMap::from([(PAD.to_string(), PAD_ID), (UNK.to_string(), UNK_ID)]),
        unigrams: HashMap::new(),
        contexts: HashMap::new(),
        trigrams: HashMap::new(),
        k,
        vocab_size: 0,
    };

    for sentence in &sentences {
        if sentence.is_empty() {
            continue;
        }
        let mut seq = Vec::with_capacity(sentence.len() + 2);
        seq.push(PAD_ID);
        seq.push(PAD_ID);
        for word in sentence {
            let id = if map_singletons_to_unknown && raw_counts[word.as_str()] == 1 {
                UNK_ID
            } else {
                model.intern(word)
            };
            *model.unigrams.entry(id).or_default() += 1;
            seq.push(id);
        }
        for w in seq.windows(3) {
            *model.trigrams.entry((w[0], w[1], w[2])).or_default() += 1;
            *model.contexts.entry((w[0], w[1])).or_default() += 1;
        }
    }

    model.vocab_size = model.words.len() - 2;
    Ok(model)
}

fn check_smoothing(k: f64) -> Result<()> {
    if !(k > 0.0 && k.is_finite()) {
        return Err(Error::InvalidArgument(format!(
            "smoothing constant must be positive and finite, got {k}"
        )));
    }
    Ok(())
}

fn collect_sentences(streams: &[&[Token]]) -> Vec<Vec<String>> {
    let mut sentences = Vec::new();
    for stream in streams {
        let mut current: Option<(usize, Vec<String>)> = None;
        for tok in *stream {
            match &mut current {
                Some((idx, words)) if *idx == tok.sentence_index => {
                    words.push(tok.lower.clone());
                }
                _ => {
                    if let Some((_, words)) = current.take() {
                        sentences.push(words);
                    }
                    current = Some((tok.sentence_index, vec![tok.lower.clone()]));
                }
            }
        }
        if let Some((_, words)) = current.take() {
            sentences.push(words);
        }
    }
    sentences
}

impl TrigramModel {
    fn intern(&mut self, word: &str) -> u32 {
        if let Some(&id) = self.ids.get(word) {
            return id;
        }
        let id = self.words.len() as u32;
        self.words.push(word.to_string());
        self.ids.insert(word.to_string(), id);
        id
    }

    fn lookup(&self, word: &str) -> u32 {
        self.ids.get(word).copied().unwrap_or(UNK_ID)
    }

    pub fn vocab_size(&self) -> usize {
        self.vocab_size
    }

    pub fn smoothing(&self) -> f64 {
        self.k
    }

    /// Smoothed P(w3 | w1 w2). Out-of-vocabulary words map to the unknown
    /// token; an unseen history yields the uniform 1/(V+1).
    pub fn probability(&self, w1: &str, w2: &str, w3: &str) -> f64 {
        let key = (self.lookup(w1), self.lookup(w2), self.lookup(w3));
        let c_tri = self.trigrams.get(&key).copied().unwrap_or(0) as f64;
        let c_ctx = self.contexts.get(&(key.0, key.1)).copied().unwrap_or(0) as f64;
        (c_tri + self.k) / (c_ctx + self.k * (self.vocab_size as f64 + 1.0))
    }

    /// Mean bits of surprisal per token, padding each sentence like
    /// training did.
    pub fn mean_surprisal(&self, stream: &[Token]) -> Result<f64> {
        if stream.is_empty() {
            return Err(Error::EmptyInput("cannot score an empty stream".into()));
        }
        let mut total = 0.0;
        let mut count = 0usize;
        for sentence in collect_sentences(&[stream]) {
            let mut h1 = PAD.to_string();
            let mut h2 = PAD.to_string();
            for word in sentence {
                total += surprisal_bits(self.probability(&h1, &h2, &word));
                count += 1;
                h1 = h2;
                h2 = word;
            }
        }
        Ok(total / count as f64)
    }

    /// One line per n-gram, "count<TAB>words", unigrams first, each block
    /// sorted, so equal models always serialize identically.
    pub fn save(&self, path: &Path) -> Result<()> {
        let mut lines: Vec<String> = Vec::new();
        let mut unigrams: BTreeMap<&str, u32> = BTreeMap::new();
        for (&id, &c) in &self.unigrams {
            unigrams.insert(&self.words[id as usize], c);
        }
        for (w, c) in unigrams {
            lines.push(format!("{c}\t{w}"));
        }
        let mut bigrams: BTreeMap<(&str, &str), u32> = BTreeMap::new();
        for (&(a, b), &c) in &self.contexts {
            bigrams.insert((&self.words[a as usize], &self.words[b as usize]), c);
        }
        for ((a, b), c) in bigrams {
            lines.push(format!("{c}\t{a} {b}"));
        }
        let mut trigrams: BTreeMap<(&str, &str, &str), u32> = BTreeMap::new();
        for (&(a, b, w), &c) in &self.trigrams {
            trigrams.insert(
                (
                    &self.words[a as usize],
                    &self.words[b as usize],
                    &self.words[w as usize],
                ),
                c,
            );
        }
        for ((a, b, w), c) in trigrams {
            lines.push(format!("{c}\t{a} {b} {w}"));
        }
        let mut file = std::fs::File::create(path).map_err(|e| Error::io(path, e))?;
        for line in lines {
            writeln!(file, "{line}").map_err(|e| Error::io(path, e))?;
        }
        Ok(())
    }

    pub fn load(path: &Path, k: f64) -> Result<TrigramModel> {
        check_smoothing(k)?;
        let text = read_text_latin1_fallback(path)?;
        let mut model = TrigramModel {
            words: vec![PAD.to_string(), UNK.to_string()],
            ids: HashMap::from([(PAD.to_string(), PAD_ID), (UNK.to_string(), UNK_ID)]),
            unigrams: HashMap::new(),
            contexts: HashMap::new(),
            trigrams: HashMap::new(),
            k,
            vocab_size: 0,
        };
        for (number, line) in text.lines().enumerate() {
            if line.is_empty() {
                continue;
            }
            let (count_str, words_str) = line.split_once('\t').ok_or_else(|| {
                Error::parse(path, number as u64, "expected count<TAB>words")
            })?;
            let count: u32 = count_str.parse().map_err(|_| {
                Error::parse(path, number as u64, format!("bad count {count_str:?}"))
            })?;
            let ids: Vec<u32> = words_str
                .split(' ')
                .map(|w| model.intern(w))
                .collect();
            match ids.as_slice() {
                [w] => {
                    model.unigrams.insert(*w, count);
                }
                [a, b] => {
                    model.contexts.insert((*a, *b), count);
                }
                [a, b, w] => {
                    model.trigrams.insert((*a, *b, *w), count);
                }
                _ => {
                    return Err(Error::parse(
                        path,
                        number as u64,
                        format!("expected 1 to 3 words, got {}", ids.len()),
                    ));
                }
            }
        }
        if model.trigrams.is_empty() {
            return Err(Error::EmptyInput(format!(
                "model file {} holds no trigrams",
                path.display()
            )));
        }
        model.vocab_size = model.words.len() - 2;
        Ok(model)
    }
}

/// Bits of surprisal for a probability; exact zero for certainty.
pub fn surprisal_bits(p: f64) -> f64 {
    let bits = -p.log2();
    if bits == 0.0 {
        0.0
    } else {
        bits
    }
}
