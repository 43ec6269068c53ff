//! Parser for the WordNet 3.0 dictionary directory (`index.*`, `data.*`,
//! `*.exc`) and path-based similarity queries over the hypernym graph.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::path::{Path, PathBuf};

use crate::error::{Error, Result};
use crate::util::read_text_latin1_fallback;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Pos {
    Noun,
    Verb,
    Adj,
    Adv,
}

impl Pos {
    pub const ALL: [Pos; 4] = [Pos::Noun, Pos::Verb, Pos::Adj, Pos::Adv];

    fn file_stem(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adj => "adj",
            Pos::Adv => "adv",
        }
    }

    fn from_tag(tag: &str) -> Option<Pos> {
        match tag {
            "n" => Some(Pos::Noun),
            "v" => Some(Pos::Verb),
            // Satellite adjectives ('s') live in the adjective files.
            "a" | "s" => Some(Pos::Adj),
            "r" => Some(Pos::Adv),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Pos::Noun => "noun",
            Pos::Verb => "verb",
            Pos::Adj => "adjective",
            Pos::Adv => "adverb",
        }
    }
}

/// (part of speech, synset offset as printed in the database files)
pub type SynsetId = (Pos, u32);

/// Stand-in parent for synsets without hypernyms, so path queries are total.
/// Offsets in the files have at most 8 digits, so u32::MAX cannot collide.
pub const VIRTUAL_ROOT: SynsetId = (Pos::Noun, u32::MAX);

#[derive(Clone, Debug, Default)]
pub struct Synset {
    pub lemmas: Vec<String>,
    pub hypernyms: Vec<SynsetId>,
    pub hyponyms: Vec<SynsetId>,
}

#[derive(Debug)]
pub struct SynsetGraph {
    synsets: HashMap<SynsetId, Synset>,
    lemma_index: HashMap<(String, Pos), Vec<SynsetId>>,
    exceptions: HashMap<Pos, HashMap<String, Vec<String>>>,
    /// Attach parentless synsets to [`VIRTUAL_ROOT`] during traversal.
    pub simulate_root: bool,
}

const DETACHMENTS: &[(Pos, &[(&str, &str)])] = &[
    (
        Pos::Noun,
        &[
            ("s", ""),
            ("ses", "s"),
            ("xes", "x"),
            ("zes", "z"),
            ("ches", "ch"),
            ("shes", "sh"),
            ("men", "man"),
            ("ies", "y"),
        ],
    ),
    (
        Pos::Verb,
        &[
            ("s", ""),
            ("ies", "y"),
            ("es", "e"),
            ("es", ""),
            ("ed", "e"),
            ("ed", ""),
            ("ing", "e"),
            ("ing", ""),
        ],
    ),
    (
        Pos::Adj,
        &[("er", ""), ("est", ""), ("er", "e"), ("est", "e")],
    ),
    (Pos::Adv, &[]),
];

pub fn load_wordnet(dir: &Path) -> Result<SynsetGraph> {
    let mut graph = SynsetGraph {
        synsets: HashMap::new(),
        lemma_index: HashMap::new(),
        exceptions: HashMap::new(),
        simulate_root: true,
    };
    for pos in Pos::ALL {
        parse_data_file(&dir.join(format!("data.{}", pos.file_stem())), pos, &mut graph)?;
        parse_index_file(&dir.join(format!("index.{}", pos.file_stem())), pos, &mut graph)?;
        let exc_path = dir.join(format!("{}.exc", pos.file_stem()));
        if exc_path.exists() {
            parse_exc_file(&exc_path, pos, &mut graph)?;
        }
    }

    // Hyponym edges are the exact reverse of hypernym edges.
    let pairs: Vec<(SynsetId, SynsetId)> = graph
        .synsets
        .iter()
        .flat_map(|(&id, s)| s.hypernyms.iter().map(move |&h| (h, id)))
        .collect();
    for (parent, child) in pairs {
        if let Some(p) = graph.synsets.get_mut(&parent) {
            p.hyponyms.push(child);
        }
    }
    for s in graph.synsets.values_mut() {
        s.hyponyms.sort_unstable();
    }

    for ((lemma, pos), ids) in &graph.lemma_index {
        for id in ids {
            if !graph.synsets.contains_key(id) {
                return Err(Error::Internal(format!(
                    "index.{} entry {lemma:?} references missing synset {:08}",
                    pos.file_stem(),
                    id.1
                )));
            }
        }
    }
    Ok(graph)
}

fn lines_with_offsets(text: &str) -> impl Iterator<Item = (u64, &str)> {
    let mut offset = 0u64;
    text.split_inclusive('\n').map(move |raw| {
        let at = offset;
        offset += raw.len() as u64;
        (at, raw.trim_end_matches(['\n', '\r']))
    })
}

fn parse_data_file(path: &PathBuf, pos: Pos, graph: &mut SynsetGraph) -> Result<()> {
    let text = read_text_latin1_fallback(path)?;
    for (at, line) in lines_with_offsets(&text) {
        if line.starts_with("  ") || line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split(' ').collect();
        let err = |msg: &str| Error::parse(path, at, msg);
        if fields.len() < 5 {
            return Err(err("truncated synset line"));
        }
        let offset: u32 = fields[0]
            .parse()
            .map_err(|_| err("synset offset is not a number"))?;
        let ss_pos = Pos::from_tag(fields[2]).ok_or_else(|| err("unknown synset type"))?;
        if ss_pos != pos {
            return Err(err("synset type does not match file"));
        }
        let w_cnt = usize::from_str_radix(fields[3], 16)
            .map_err(|_| err("word count is not hexadecimal"))?;
        let mut lemmas = Vec::with_capacity(w_cnt);
        let mut i = 4;
        for _ in 0..w_cnt {
            let lemma = *fields.get(i).ok_or_else(|| err("missing word field"))?;
            fields.get(i + 1).ok_or_else(|| err("missing lex id"))?;
            lemmas.push(lemma.to_string());
            i += 2;
        }
        let p_cnt: usize = fields
            .get(i)
            .ok_or_else(|| err("missing pointer count"))?
            .parse()
            .map_err(|_| err("pointer count is not a number"))?;
        i += 1;
        let mut hypernyms = Vec::new();
        for _ in 0..p_cnt {
            if i + 3 >= fields.len() {
                return Err(err("truncated pointer"));
            }
            let symbol = fields[i];
            let target: u32 = fields[i + 1]
                .parse()
                .map_err(|_| err("pointer offset is not a number"))?;
            let target_pos =
                Pos::from_tag(fields[i + 2]).ok_or_else(|| err("unknown pointer pos"))?;
            if symbol == "@" || symbol == "@i" {
                hypernyms.push((target_pos, target));
            }
            i += 4;
        }
        graph.synsets.insert(
            (pos, offset),
            Synset {
                lemmas,
                hypernyms,
                hyponyms: Vec::new(),
            },
        );
    }
    Ok(())
}

fn parse_index_file(path: &PathBuf, pos: Pos, graph: &mut SynsetGraph) -> Result<()> {
    let text = read_text_latin1_fallback(path)?;
    for (at, line) in lines_with_offsets(&text) {
        if line.starts_with("  ") || line.is_empty() {
            continue;
        }
        let fields: Vec<&str> = line.split_whitespace().collect();
        let err = |msg: &str| Error::parse(path, at, msg);
        if fields.len() < 6 {
            return Err(err("truncated index line"));
        }
        let lemma = fields[0];
        let synset_cnt: usize = fields[2]
            .parse()
            .map_err(|_| err("synset count is not a number"))?;
        let p_cnt: usize = fields[3]
            .parse()
            .map_err(|_| err("pointer count is not a number"))?;
        let first = 4 + p_cnt + 2;
        if fields.len() < first + synset_cnt {
            return Err(err("fewer synset offsets than declared"));
        }
        let mut ids = Vec::with_capacity(synset_cnt);
        for raw in &fields[first..first + synset_cnt] {
            let offset: u32 = raw.parse().map_err(|_| err("synset offset is not a number"))?;
            ids.push((pos, offset));
        }
        graph.lemma_index.insert((lemma.to_string(), pos), ids);
    }
    Ok(())
}

fn parse_exc_file(path: &PathBuf, pos: Pos, graph: &mut SynsetGraph) -> Result<()> {
    let text = read_text_latin1_fallback(path)?;
    let map = graph.exceptions.entry(pos).or_default();
    for (at, line) in lines_with_offsets(&text) {
        if line.is_empty() {
            continue;
        }
        let mut fields = line.split_whitespace();
        let inflected = fields
            .next()
            .ok_or_else(|| Error::parse(path, at, "empty exception line"))?;
        let bases: Vec<String> = fields.map(str::to_string).collect();
        if bases.is_empty() {
            return Err(Error::parse(path, at, "exception line has no base form"));
        }
        map.entry(inflected.to_string()).or_default().extend(bases);
    }
    Ok(())
}

impl SynsetGraph {
    pub fn synset(&self, id: SynsetId) -> Option<&Synset> {
        self.synsets.get(&id)
    }

    pub fn synset_count(&self, pos: Pos) -> usize {
        self.synsets.keys().filter(|(p, _)| *p == pos).count()
    }

    /// All index lemmas for a part of speech, sorted.
    pub fn lemmas(&self, pos: Pos) -> Vec<&str> {
        let mut out: Vec<&str> = self
            .lemma_index
            .keys()
            .filter(|(_, p)| *p == pos)
            .map(|(l, _)| l.as_str())
            .collect();
        out.sort_unstable();
        out
    }

    /// Synsets listing this exact lemma, across all parts of speech, in
    /// database sense order. No morphological analysis.
    pub fn synsets_exact(&self, word: &str) -> Vec<SynsetId> {
        let key = word.to_lowercase().replace(' ', "_");
        let mut out = Vec::new();
        for pos in Pos::ALL {
            if let Some(ids) = self.lemma_index.get(&(key.clone(), pos)) {
                for id in ids {
                    if !out.contains(id) {
                        out.push(*id);
                    }
                }
            }
        }
        out
    }

    pub fn has_lemma(&self, word: &str, pos: Pos) -> bool {
        self.lemma_index.contains_key(&(word.to_string(), pos))
    }

    /// Hypernym step used by path queries; parentless synsets step to the
    /// virtual root when simulate_root is on.
    pub fn up_neighbors(&self, id: SynsetId) -> Vec<SynsetId> {
        if id == VIRTUAL_ROOT {
            return Vec::new();
        }
        match self.synsets.get(&id) {
            Some(s) if !s.hypernyms.is_empty() => s.hypernyms.clone(),
            Some(_) if self.simulate_root => vec![VIRTUAL_ROOT],
            _ => Vec::new(),
        }
    }

    /// Minimal hypernym distance from any of `sources` to every ancestor
    /// (sources themselves included at distance 0).
    pub fn ancestors(&self, sources: &[SynsetId]) -> HashMap<SynsetId, u32> {
        let mut dist: HashMap<SynsetId, u32> = HashMap::new();
        let mut queue: VecDeque<SynsetId> = VecDeque::new();
        for &s in sources {
            if self.synsets.contains_key(&s) && !dist.contains_key(&s) {
                dist.insert(s, 0);
                queue.push_back(s);
            }
        }
        while let Some(node) = queue.pop_front() {
            let d = dist[&node];
            for up in self.up_neighbors(node) {
                if !dist.contains_key(&up) {
                    dist.insert(up, d + 1);
                    queue.push_back(up);
                }
            }
        }
        dist
    }

    /// Base forms of a word for one part of speech: the word itself when
    /// indexed, exception-list entries, then detachment candidates.
    pub fn morphy(&self, word: &str, pos: Pos) -> Vec<String> {
        let mut out = Vec::new();
        let push = |candidate: &str, out: &mut Vec<String>| {
            if self.lemma_index.contains_key(&(candidate.to_string(), pos))
                && !out.iter().any(|c| c == candidate)
            {
                out.push(candidate.to_string());
            }
        };
        push(word, &mut out);
        if let Some(bases) = self.exceptions.get(&pos).and_then(|m| m.get(word)) {
            for base in bases {
                push(base, &mut out);
            }
        }
        let rules = DETACHMENTS
            .iter()
            .find(|(p, _)| *p == pos)
            .map(|(_, r)| *r)
            .unwrap_or(&[]);
        for (suffix, replacement) in rules {
            if let Some(prefix) = word.strip_suffix(suffix) {
                if !prefix.is_empty() {
                    let candidate = format!("{prefix}{replacement}");
                    push(&candidate, &mut out);
                }
            }
        }
        out
    }
}

/// Shortest combined hypernym distance to a shared ancestor.
pub fn lcs_distance(a: &HashMap<SynsetId, u32>, b: &HashMap<SynsetId, u32>) -> Option<u32> {
    let (small, large) = if a.len() <= b.len() { (a, b) } else { (b, a) };
    let mut best: Option<u32> = None;
    for (id, &da) in small {
        if let Some(&db) = large.get(id) {
            let total = da + db;
            if best.map_or(true, |cur| total < cur) {
                best = Some(total);
            }
        }
    }
    best
}

/// Path similarity between two words: the best 1/(1+d) over all synset
/// pairs, d measured through the cheapest common hypernym ancestor.
/// `None` marks a miss (either word has no synsets, or no shared ancestor).
pub fn word_path_similarity(w1: &str, w2: &str, graph: &SynsetGraph) -> Option<f64> {
    let s1 = graph.synsets_exact(w1);
    let s2 = graph.synsets_exact(w2);
    if s1.is_empty() || s2.is_empty() {
        return None;
    }
    let a1 = graph.ancestors(&s1);
    let a2 = graph.ancestors(&s2);
    lcs_distance(&a1, &a2).map(|d| 1.0 / (1.0 + f64::from(d)))
}

/// Parts of speech under which a lemma or one of its morphological base
/// forms (exception lists plus detachment rules) is indexed.
pub fn pos_of_word(lemma: &str, graph: &SynsetGraph) -> BTreeSet<Pos> {
    Pos::ALL
        .into_iter()
        .filter(|&pos| !graph.morphy(lemma, pos).is_empty())
        .collect()
}

/// Parts of speech under which the exact lemma is indexed.
pub fn pos_of_word_exact(lemma: &str, graph: &SynsetGraph) -> BTreeSet<Pos> {
    Pos::ALL
        .into_iter()
        .filter(|&pos| graph.has_lemma(lemma, pos))
        .collect()
}
