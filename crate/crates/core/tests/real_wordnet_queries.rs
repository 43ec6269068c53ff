//! Path-similarity and lookup queries against a real WordNet 3.0
//! directory, cross-checked by a test-local brute-force reader that
//! parses the database files its own way and searches the hypernym graph
//! with a plain breadth-first walk. Every test skips with a note when no
//! WordNet directory is reachable.

mod common;

use std::collections::HashMap;
use std::sync::OnceLock;

use poetics_core::wordnet::{
    load_wordnet, pos_of_word, word_path_similarity, Pos, SynsetGraph,
};
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

fn graph() -> Option<&'static SynsetGraph> {
    static GRAPH: OnceLock<Option<SynsetGraph>> = OnceLock::new();
    GRAPH
        .get_or_init(|| {
            common::wordnet_dir().map(|dir| load_wordnet(&dir).expect("WordNet parses"))
        })
        .as_ref()
}

/// Synset key for the oracle: part-of-speech letter plus database offset.
/// The virtual root uses a letter no file can produce.
type OKey = (u8, u32);
const ROOT: OKey = (b'*', 0);

struct Oracle {
    up: HashMap<OKey, Vec<OKey>>,
    index: HashMap<(String, u8), Vec<OKey>>,
    noun_lemmas: Vec<String>,
    noun_data_lines: usize,
}

fn tag_letter(tag: &str) -> u8 {
    match tag {
        "n" => b'n',
        "v" => b'v',
        "a" | "s" => b'a',
        "r" => b'r',
        other => panic!("unexpected pos tag {other:?}"),
    }
}

fn oracle() -> Option<&'static Oracle> {
    static ORACLE: OnceLock<Option<Oracle>> = OnceLock::new();
    ORACLE
        .get_or_init(|| {
            let dir = common::wordnet_dir()?;
            let mut up = HashMap::new();
            let mut index = HashMap::new();
            let mut noun_lemmas = Vec::new();
            let mut noun_data_lines = 0usize;
            for stem in ["noun", "verb", "adj", "adv"] {
                let letter = tag_letter(&stem[..1].replace('o', "n"));
                let data = std::fs::read_to_string(dir.join(format!("data.{stem}"))).unwrap();
                for line in data.lines() {
                    if line.starts_with("  ") || line.is_empty() {
                        continue;
                    }
                    if stem == "noun" {
                        noun_data_lines += 1;
                    }
                    // Everything before the gloss bar is space-separated.
                    let head = line.split('|').next().unwrap();
                    let fields: Vec<&str> = head.split_whitespace().collect();
                    let offset: u32 = fields[0].parse().unwrap();
                    let w_cnt = usize::from_str_radix(fields[3], 16).unwrap();
                    let p_start = 4 + 2 * w_cnt;
                    let p_cnt: usize = fields[p_start].parse().unwrap();
                    let mut parents = Vec::new();
                    for p in 0..p_cnt {
                        let f = p_start + 1 + 4 * p;
                        if fields[f] == "@" || fields[f] == "@i" {
                            parents
                                .push((tag_letter(fields[f + 2]), fields[f + 1].parse().unwrap()));
                        }
                    }
                    up.insert((letter, offset), parents);
                }
                let idx = std::fs::read_to_string(dir.join(format!("index.{stem}"))).unwrap();
                for line in idx.lines() {
                    if line.starts_with("  ") || line.is_empty() {
                        continue;
                    }
                    let fields: Vec<&str> = line.split_whitespace().collect();
                    let lemma = fields[0].to_string();
                    let synset_cnt: usize = fields[2].parse().unwrap();
                    // The offsets are always the trailing fields.
                    let ids = fields[fields.len() - synset_cnt..]
                        .iter()
                        .map(|raw| (letter, raw.parse().unwrap()))
                        .collect();
                    if stem == "noun" {
                        noun_lemmas.push(lemma.clone());
                    }
                    index.insert((lemma, letter), ids);
                }
            }
            noun_lemmas.sort();
            Some(Oracle {
                up,
                index,
                noun_lemmas,
                noun_data_lines,
            })
        })
        .as_ref()
}

impl Oracle {
    fn synsets_of(&self, word: &str) -> Vec<OKey> {
        let key = word.to_lowercase().replace(' ', "_");
        let mut out = Vec::new();
        for letter in [b'n', b'v', b'a', b'r'] {
            if let Some(ids) = self.index.get(&(key.clone(), letter)) {
                out.extend_from_slice(ids);
            }
        }
        out
    }

    /// Distance from the nearest start synset to every reachable ancestor,
    /// walking only upward; parentless synsets step to the shared root.
    fn climb(&self, starts: &[OKey]) -> HashMap<OKey, u32> {
        let mut dist: HashMap<OKey, u32> = starts.iter().map(|&s| (s, 0)).collect();
        let mut frontier: Vec<OKey> = starts.to_vec();
        let mut d = 0u32;
        while !frontier.is_empty() {
            d += 1;
            let mut next = Vec::new();
            for key in frontier {
                if key == ROOT {
                    continue;
                }
                let parents = self.up.get(&key).expect("synset offsets resolve");
                let step: Vec<OKey> = if parents.is_empty() {
                    vec![ROOT]
                } else {
                    parents.clone()
                };
                for p in step {
                    if !dist.contains_key(&p) {
                        dist.insert(p, d);
                        next.push(p);
                    }
                }
            }
            frontier = next;
        }
        dist
    }

    fn similarity(&self, w1: &str, w2: &str) -> Option<f64> {
        let s1 = self.synsets_of(w1);
        let s2 = self.synsets_of(w2);
        if s1.is_empty() || s2.is_empty() {
            return None;
        }
        let a1 = self.climb(&s1);
        let a2 = self.climb(&s2);
        let mut best: Option<u32> = None;
        for (key, &d1) in &a1 {
            if let Some(&d2) = a2.get(key) {
                let total = d1 + d2;
                if best.is_none_or(|cur| total < cur) {
                    best = Some(total);
                }
            }
        }
        best.map(|d| 1.0 / (1.0 + f64::from(d)))
    }
}

#[test]
fn noun_synset_count_matches_line_oracle() {
    let (Some(g), Some(o)) = (graph(), oracle()) else {
        eprintln!("noun_synset_count_matches_line_oracle: SKIP (no WordNet)");
        return;
    };
    assert_eq!(g.synset_count(Pos::Noun), o.noun_data_lines);
    assert_eq!(g.synset_count(Pos::Noun), 82115);
}

#[test]
fn dog_cat_and_identity_values() {
    let Some(g) = graph() else {
        eprintln!("dog_cat_and_identity_values: SKIP (no WordNet)");
        return;
    };
    assert_eq!(word_path_similarity("dog", "cat", g), Some(0.2));
    assert_eq!(word_path_similarity("happiness", "happiness", g), Some(1.0));
    assert_eq!(word_path_similarity("zzxq", "cat", g), None);
}

#[test]
fn hundred_random_noun_pairs_match_the_oracle() {
    let (Some(g), Some(o)) = (graph(), oracle()) else {
        eprintln!("hundred_random_noun_pairs_match_the_oracle: SKIP (no WordNet)");
        return;
    };
    let mut rng = ChaCha20Rng::seed_from_u64(20260814);
    for _ in 0..100 {
        let w1 = &o.noun_lemmas[rng.random_range(0..o.noun_lemmas.len())];
        let w2 = &o.noun_lemmas[rng.random_range(0..o.noun_lemmas.len())];
        let ours = word_path_similarity(w1, w2, g);
        let expected = o.similarity(w1, w2);
        assert_eq!(ours, expected, "{w1} vs {w2}");
        assert_eq!(ours, word_path_similarity(w2, w1, g), "symmetry {w1}/{w2}");
    }
}

#[test]
fn part_of_speech_lookups() {
    let Some(g) = graph() else {
        eprintln!("part_of_speech_lookups: SKIP (no WordNet)");
        return;
    };
    let love = pos_of_word("love", g);
    assert!(love.contains(&Pos::Noun) && love.contains(&Pos::Verb));
    assert!(pos_of_word("sweet", g).contains(&Pos::Adj));
    assert!(pos_of_word("the", g).is_empty());
}
