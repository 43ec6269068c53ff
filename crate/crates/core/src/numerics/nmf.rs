//! Non-negative matrix factorization with multiplicative updates, plus a
//! topic-model wrapper that row-normalizes document loadings.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha20Rng;

use crate::error::{Error, Result};
use crate::matrix::Mat;

pub const DEFAULT_TOPICS: usize = 20;
pub const DEFAULT_MAX_ITERS: usize = 500;
pub const DEFAULT_TOL: f64 = 1e-6;
pub const TOP_TERMS_PER_TOPIC: usize = 20;

const EPS: f64 = 1e-12;

#[derive(Clone, Debug)]
pub struct Nmf {
    /// rows x k document loadings.
    pub w: Mat,
    /// k x cols topic-term weights.
    pub h: Mat,
    /// Frobenius error before updates, then after each iteration. The
    /// multiplicative rule guarantees this never increases.
    pub error_trace: Vec<f64>,
}

/// Factors a non-negative matrix as V ~ W H. Initial factors are uniform
/// draws scaled to match the magnitude of V, so a fixed seed fixes the
/// whole trajectory.
pub fn nmf(v: &Mat, k: usize, max_iters: usize, tol: f64, seed: u64) -> Result<Nmf> {
    let (rows, cols) = (v.rows(), v.cols());
    if rows == 0 || cols == 0 {
        return Err(Error::EmptyInput("factorization of an empty matrix".into()));
    }
    if k == 0 || k > rows.min(cols) {
        return Err(Error::InvalidArgument(format!(
            "rank {k} is outside 1..={} for a {rows}x{cols} matrix",
            rows.min(cols)
        )));
    }
    let mut mean = 0.0;
    for i in 0..rows {
        for j in 0..cols {
            let x = v.get(i, j);
            if x < 0.0 {
                return Err(Error::InvalidArgument(format!(
                    "negative entry {x} at ({i},{j})"
                )));
            }
            mean += x;
        }
    }
    mean /= (rows * cols) as f64;

    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let scale = (mean / k as f64).sqrt().max(1e-9);
    let mut w = Mat::zeros(rows, k);
    for i in 0..rows {
        for j in 0..k {
            w.set(i, j, rng.random::<f64>() * scale);
        }
    }
    let mut h = Mat::zeros(k, cols);
    for i in 0..k {
        for j in 0..cols {
            h.set(i, j, rng.random::<f64>() * scale);
        }
    }

    let residual = |w: &Mat, h: &Mat| -> f64 { v.sub(&w.matmul(h)).frobenius() };
    let mut error_trace = vec![residual(&w, &h)];

    for _ in 0..max_iters {
        // H <- H .* (W^T V) ./ (W^T W H)
        let wt = w.transpose();
        let wtv = wt.matmul(v);
        let wtwh = wt.matmul(&w).matmul(&h);
        for i in 0..k {
            for j in 0..cols {
                let updated = h.get(i, j) * wtv.get(i, j) / (wtwh.get(i, j) + EPS);
                h.set(i, j, updated);
            }
        }
        // W <- W .* (V H^T) ./ (W H H^T)
        let ht = h.transpose();
        let vht = v.matmul(&ht);
        let whht = w.matmul(&h.matmul(&ht));
        for i in 0..rows {
            for j in 0..k {
                let updated = w.get(i, j) * vht.get(i, j) / (whht.get(i, j) + EPS);
                w.set(i, j, updated);
            }
        }

        let err = residual(&w, &h);
        let prev = *error_trace.last().unwrap();
        error_trace.push(err);
        if prev - err <= tol * prev.max(EPS) {
            break;
        }
    }

    Ok(Nmf { w, h, error_trace })
}

#[derive(Clone, Debug)]
pub struct TopicModel {
    /// rows x k, each row a distribution over topics (sums to 1).
    pub doc_topic: Mat,
    /// k x cols raw topic-term weights.
    pub topic_term: Mat,
    /// Per topic, term column indices by descending weight, ties by index.
    pub top_terms: Vec<Vec<usize>>,
}

pub fn topic_model(v: &Mat, k: usize, max_iters: usize, tol: f64, seed: u64) -> Result<TopicModel> {
    let fit = nmf(v, k, max_iters, tol, seed)?;
    let mut doc_topic = Mat::zeros(fit.w.rows(), k);
    for i in 0..fit.w.rows() {
        let sum: f64 = (0..k).map(|j| fit.w.get(i, j)).sum();
        for j in 0..k {
            let value = if sum > 0.0 {
                fit.w.get(i, j) / sum
            } else {
                1.0 / k as f64
            };
            doc_topic.set(i, j, value);
        }
    }
    let mut top_terms = Vec::with_capacity(k);
    for t in 0..k {
        let mut order: Vec<usize> = (0..fit.h.cols()).collect();
        order.sort_by(|&a, &b| {
            fit.h
                .get(t, b)
                .partial_cmp(&fit.h.get(t, a))
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        order.truncate(TOP_TERMS_PER_TOPIC);
        top_terms.push(order);
    }
    Ok(TopicModel {
        doc_topic,
        topic_term: fit.h,
        top_terms,
    })
}
