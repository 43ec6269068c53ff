//! Three ways to find words that set one document apart from another:
//! strict uniqueness, rate-difference keyness, and a Bayesian comparison
//! of per-segment rates.

use serde::Serialize;

use crate::dtm::RateMatrix;
use crate::error::{Error, Result};
use crate::numerics::gibbs::{gibbs_compare, GibbsConfig};
use crate::pipeline::Token;

/// Terms with a nonzero rate in document `a` and a zero rate in `b`,
/// ranked by rate descending, ties alphabetical.
pub fn unique_words(rm: &RateMatrix, a: usize, b: usize) -> Result<Vec<(String, f64)>> {
    check_doc_pair(rm, a, b)?;
    let mut out: Vec<(String, f64)> = rm
        .terms
        .iter()
        .enumerate()
        .filter(|&(t, _)| rm.rates.get(a, t) > 0.0 && rm.rates.get(b, t) == 0.0)
        .map(|(t, term)| (term.clone(), rm.rates.get(a, t)))
        .collect();
    out.sort_by(|x, y| y.1.partial_cmp(&x.1).unwrap().then_with(|| x.0.cmp(&y.0)));
    Ok(out)
}

/// Signed keyness of every term: the rate difference between documents
/// `a` and `b` divided by the corpus-wide average rate. Ranked by
/// absolute keyness descending, ties alphabetical.
pub fn keyness_scores(rm: &RateMatrix, a: usize, b: usize) -> Result<Vec<(String, f64)>> {
    check_doc_pair(rm, a, b)?;
    let avg = rm.corpus_average();
    let mut out = Vec::with_capacity(rm.terms.len());
    for (t, term) in rm.terms.iter().enumerate() {
        let (ra, rb) = (rm.rates.get(a, t), rm.rates.get(b, t));
        let keyness = if avg[t] > 0.0 {
            (ra - rb) / avg[t]
        } else if ra == 0.0 && rb == 0.0 {
            0.0
        } else {
            return Err(Error::Internal(format!(
                "term {term:?} has rates but a zero corpus average"
            )));
        };
        out.push((term.clone(), keyness));
    }
    out.sort_by(|x, y| {
        y.1.abs()
            .partial_cmp(&x.1.abs())
            .unwrap()
            .then_with(|| x.0.cmp(&y.0))
    });
    Ok(out)
}

fn check_doc_pair(rm: &RateMatrix, a: usize, b: usize) -> Result<()> {
    let n = rm.docs.len();
    if a >= n || b >= n {
        return Err(Error::InvalidArgument(format!(
            "document index out of range: {a} or {b} >= {n}"
        )));
    }
    if a == b {
        return Err(Error::InvalidArgument(format!(
            "cannot compare document {a} with itself"
        )));
    }
    Ok(())
}

#[derive(Clone, Debug, Serialize)]
pub struct BayesComparison {
    pub word: String,
    /// Mean per-1000 rate over the first text's segments.
    pub rate_a: f64,
    pub rate_b: f64,
    /// Posterior probability that the first text's underlying rate is
    /// below the second's.
    pub p_lower: f64,
}

/// Splits each token stream into fixed-length segments (dropping the
/// final partial one), measures each query word's per-1000 rate in every
/// segment, and feeds the two groups of rates to the Gibbs sampler. Each
/// word runs on its own seed derived from the master seed, so adding or
/// removing query words never perturbs the others.
pub fn bayes_keyness(
    a: (&str, &[Token]),
    b: (&str, &[Token]),
    words: &[String],
    segment_len: usize,
    n_samples: usize,
    burn_in: usize,
    seed: u64,
) -> Result<Vec<BayesComparison>> {
    if segment_len == 0 {
        return Err(Error::InvalidArgument("segment length must be positive".into()));
    }
    let seg_a = segment_rates_all(a, segment_len)?;
    let seg_b = segment_rates_all(b, segment_len)?;

    let mut out = Vec::with_capacity(words.len());
    for word in words {
        let rates_a = rates_for(&seg_a, word, segment_len);
        let rates_b = rates_for(&seg_b, word, segment_len);
        let mut config = GibbsConfig::default_for(&rates_a, &rates_b, 0)?;
        config.n_samples = n_samples;
        config.burn_in = burn_in;
        config.seed = seed ^ fnv1a(word);
        let post = gibbs_compare(&rates_a, &rates_b, &config)?;
        out.push(BayesComparison {
            word: word.clone(),
            rate_a: mean(&rates_a),
            rate_b: mean(&rates_b),
            p_lower: post.p_delta_neg,
        });
    }
    Ok(out)
}

/// Full segments as slices of stems.
fn segment_rates_all<'a>(
    (name, stream): (&str, &'a [Token]),
    segment_len: usize,
) -> Result<Vec<&'a [Token]>> {
    let n_segments = stream.len() / segment_len;
    if n_segments == 0 {
        return Err(Error::InvalidArgument(format!(
            "text {name:?} has {} tokens, fewer than one segment of {segment_len}",
            stream.len()
        )));
    }
    Ok((0..n_segments)
        .map(|s| &stream[s * segment_len..(s + 1) * segment_len])
        .collect())
}

fn rates_for(segments: &[&[Token]], word: &str, segment_len: usize) -> Vec<f64> {
    segments
        .iter()
        .map(|seg| {
            let count = seg.iter().filter(|t| t.stem == word).count();
            1000.0 * count as f64 / segment_len as f64
        })
        .collect()
}

fn mean(v: &[f64]) -> f64 {
    v.iter().sum::<f64>() / v.len() as f64
}

fn fnv1a(s: &str) -> u64 {
    let mut hash: u64 = 0xcbf2_9ce4_8422_2325;
    for byte in s.as_bytes() {
        hash ^= u64::from(*byte);
        hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
    }
    hash
}
