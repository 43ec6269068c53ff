//! Document-term matrix over stemmed streams, with per-1000-word rates.

use std::collections::{BTreeMap, HashMap};
use std::path::Path;

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::pipeline::Token;

#[derive(Clone, Debug)]
pub struct Vocabulary {
    /// Stems in lexicographic order; column order of the matrix.
    pub terms: Vec<String>,
    pub index: HashMap<String, usize>,
    /// Fraction of documents containing each term.
    pub doc_freq: Vec<f64>,
}

#[derive(Clone, Debug)]
pub struct DocumentTermMatrix {
    pub docs: Vec<String>,
    /// Sparse per-document counts keyed by vocabulary column.
    pub counts: Vec<BTreeMap<usize, u32>>,
    /// Stream length per document (before vocabulary filtering).
    pub row_token_totals: Vec<usize>,
}

/// Dense per-1000-word usage rates with row/column labels attached.
#[derive(Clone, Debug)]
pub struct RateMatrix {
    pub docs: Vec<String>,
    pub terms: Vec<String>,
    pub rates: Mat,
}

pub fn build_dtm(
    docs: &[(String, &[Token])],
    min_count: u32,
    max_doc_fraction: f64,
) -> Result<(Vocabulary, DocumentTermMatrix)> {
    if docs.is_empty() {
        return Err(Error::InvalidArgument("no documents given".into()));
    }
    if !(max_doc_fraction > 0.0 && max_doc_fraction <= 1.0) {
        return Err(Error::InvalidArgument(format!(
            "max_doc_fraction {max_doc_fraction} outside (0, 1]"
        )));
    }
    let n_docs = docs.len() as f64;

    let mut corpus_counts: BTreeMap<&str, u32> = BTreeMap::new();
    let mut doc_hits: BTreeMap<&str, u32> = BTreeMap::new();
    for (_, stream) in docs {
        let mut local: BTreeMap<&str, u32> = BTreeMap::new();
        for t in *stream {
            *local.entry(t.stem.as_str()).or_default() += 1;
        }
        for (stem, c) in local {
            *corpus_counts.entry(stem).or_default() += c;
            *doc_hits.entry(stem).or_default() += 1;
        }
    }

    let mut terms = Vec::new();
    let mut doc_freq = Vec::new();
    for (stem, &count) in &corpus_counts {
        let fraction = f64::from(doc_hits[stem]) / n_docs;
        if count >= min_count && fraction <= max_doc_fraction {
            terms.push((*stem).to_string());
            doc_freq.push(fraction);
        }
    }
    let index: HashMap<String, usize> = terms
        .iter()
        .enumerate()
        .map(|(i, t)| (t.clone(), i))
        .collect();

    let mut counts = Vec::with_capacity(docs.len());
    let mut row_token_totals = Vec::with_capacity(docs.len());
    let mut names = Vec::with_capacity(docs.len());
    for (name, stream) in docs {
        let mut row: BTreeMap<usize, u32> = BTreeMap::new();
        for t in *stream {
            if let Some(&col) = index.get(&t.stem) {
                *row.entry(col).or_default() += 1;
            }
        }
        counts.push(row);
        row_token_totals.push(stream.len());
        names.push(name.clone());
    }

    Ok((
        Vocabulary {
            terms,
            index,
            doc_freq,
        },
        DocumentTermMatrix {
            docs: names,
            counts,
            row_token_totals,
        },
    ))
}

pub fn rates_per_1000(m: &DocumentTermMatrix, vocab: &Vocabulary) -> Result<RateMatrix> {
    let mut rates = Mat::zeros(m.docs.len(), vocab.terms.len());
    for (d, row) in m.counts.iter().enumerate() {
        let total = m.row_token_totals[d];
        if total == 0 {
            return Err(Error::InvalidArgument(format!(
                "document {:?} has no tokens",
                m.docs[d]
            )));
        }
        for (&col, &count) in row {
            rates.set(d, col, 1000.0 * f64::from(count) / total as f64);
        }
    }
    Ok(RateMatrix {
        docs: m.docs.clone(),
        terms: vocab.terms.clone(),
        rates,
    })
}

impl RateMatrix {
    pub fn doc_row(&self, doc: &str) -> Option<usize> {
        self.docs.iter().position(|d| d == doc)
    }

    /// Mean rate per term over all rows.
    pub fn corpus_average(&self) -> Vec<f64> {
        let n = self.docs.len() as f64;
        (0..self.terms.len())
            .map(|t| (0..self.docs.len()).map(|d| self.rates.get(d, t)).sum::<f64>() / n)
            .collect()
    }
}

impl DocumentTermMatrix {
    pub fn to_dense(&self, n_terms: usize) -> Mat {
        let mut m = Mat::zeros(self.docs.len(), n_terms);
        for (d, row) in self.counts.iter().enumerate() {
            for (&col, &count) in row {
                m.set(d, col, f64::from(count));
            }
        }
        m
    }
}

/// Sparse triplet export: one `doc_id,term,count` line per nonzero cell,
/// plus a vocabulary sidecar `term,doc_fraction`.
pub fn write_triplets(
    m: &DocumentTermMatrix,
    vocab: &Vocabulary,
    triplets_path: &Path,
    vocab_path: &Path,
) -> Result<()> {
    let mut out = String::from("doc_id,term,count\n");
    for (d, row) in m.counts.iter().enumerate() {
        for (&col, &count) in row {
            out.push_str(&format!(
                "{},{},{}\n",
                csv_field(&m.docs[d]),
                csv_field(&vocab.terms[col]),
                count
            ));
        }
    }
    std::fs::write(triplets_path, out).map_err(|e| Error::io(triplets_path, e))?;

    let mut side = String::from("term,doc_fraction\n");
    for (term, fraction) in vocab.terms.iter().zip(&vocab.doc_freq) {
        side.push_str(&format!("{},{:.4}\n", csv_field(term), fraction));
    }
    std::fs::write(vocab_path, side).map_err(|e| Error::io(vocab_path, e))
}

pub fn read_triplets(
    triplets_path: &Path,
) -> Result<Vec<(String, String, u32)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .from_path(triplets_path)
        .map_err(|e| Error::InvalidArgument(format!("{}: {e}", triplets_path.display())))?;
    let mut out = Vec::new();
    for record in reader.records() {
        let record =
            record.map_err(|e| Error::InvalidArgument(format!("bad triplet row: {e}")))?;
        if record.len() != 3 {
            return Err(Error::InvalidArgument("triplet row needs 3 fields".into()));
        }
        let count: u32 = record[2]
            .parse()
            .map_err(|_| Error::InvalidArgument(format!("bad count {:?}", &record[2])))?;
        out.push((record[0].to_string(), record[1].to_string(), count));
    }
    Ok(out)
}

use crate::export::csv_field;

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::tokenize;

    fn stream(text: &str) -> Vec<Token> {
        tokenize(text)
    }

    #[test]
    fn direct_counting() {
        let a = stream("a b a");
        let b = stream("b c");
        let docs = vec![("d1".to_string(), a.as_slice()), ("d2".to_string(), b.as_slice())];
        let (vocab, m) = build_dtm(&docs, 1, 1.0).unwrap();
        assert_eq!(vocab.terms, ["a", "b", "c"]);
        assert_eq!(m.to_dense(3).row(0), [2.0, 1.0, 0.0]);
        assert_eq!(m.to_dense(3).row(1), [0.0, 1.0, 1.0]);
    }

    #[test]
    fn max_doc_fraction_excludes_ubiquitous_terms() {
        let a = stream("x y");
        let b = stream("x z");
        let docs = vec![("d1".to_string(), a.as_slice()), ("d2".to_string(), b.as_slice())];
        // x in 100% of docs, above the 0.95 ceiling.
        let (vocab, _) = build_dtm(&docs, 1, 0.95).unwrap();
        assert_eq!(vocab.terms, ["y", "z"]);
    }

    #[test]
    fn singleton_included_at_min_count_1() {
        let a = stream("common rare");
        let b = stream("common");
        let docs = vec![("d1".to_string(), a.as_slice()), ("d2".to_string(), b.as_slice())];
        let (vocab, _) = build_dtm(&docs, 1, 1.0).unwrap();
        assert!(vocab.terms.contains(&"rare".to_string()));
    }

    #[test]
    fn zero_documents_rejected() {
        assert!(build_dtm(&[], 1, 0.95).is_err());
    }

    #[test]
    fn rates_definition() {
        let tokens: Vec<Token> = std::iter::repeat(stream("w")[0].clone())
            .take(5)
            .chain(std::iter::repeat(stream("v")[0].clone()).take(995))
            .collect();
        let docs = vec![("d".to_string(), tokens.as_slice())];
        let (vocab, m) = build_dtm(&docs, 1, 1.0).unwrap();
        let rm = rates_per_1000(&m, &vocab).unwrap();
        let w = vocab.index["w"];
        assert!((rm.rates.get(0, w) - 5.0).abs() < 1e-12);
    }

    #[test]
    fn zero_length_document_named_in_error() {
        let empty: Vec<Token> = Vec::new();
        let a = stream("x");
        let docs = vec![
            ("full".to_string(), a.as_slice()),
            ("hollow".to_string(), empty.as_slice()),
        ];
        let (vocab, m) = build_dtm(&docs, 1, 1.0).unwrap();
        let err = rates_per_1000(&m, &vocab).unwrap_err().to_string();
        assert!(err.contains("hollow"), "{err}");
    }

    #[test]
    fn triplet_roundtrip() {
        let a = stream("a b a");
        let docs = vec![("d1".to_string(), a.as_slice())];
        let (vocab, m) = build_dtm(&docs, 1, 1.0).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let tp = dir.path().join("triplets.csv");
        let vp = dir.path().join("vocab.csv");
        write_triplets(&m, &vocab, &tp, &vp).unwrap();
        let rows = read_triplets(&tp).unwrap();
        assert_eq!(
            rows,
            vec![
                ("d1".to_string(), "a".to_string(), 2),
                ("d1".to_string(), "b".to_string(), 1)
            ]
        );
    }
}
