//! Principal component analysis over column-centered data.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::numerics::svd::truncated_svd;

#[derive(Clone, Debug)]
pub struct Pca {
    /// k x cols, one principal axis per row.
    pub components: Mat,
    /// rows x k projections of the centered data.
    pub scores: Mat,
    /// Variance captured by each component: s_i^2 / (rows - 1).
    pub explained_variance: Vec<f64>,
}

pub fn pca(m: &Mat, k: usize) -> Result<Pca> {
    let (rows, cols) = (m.rows(), m.cols());
    if rows < 2 {
        return Err(Error::InvalidArgument(format!(
            "principal components need at least 2 rows, got {rows}"
        )));
    }
    if k == 0 || k > cols || k > rows {
        return Err(Error::InvalidArgument(format!(
            "requested {k} components from a {rows}x{cols} matrix"
        )));
    }

    let mut centered = m.clone();
    for j in 0..cols {
        let mean: f64 = (0..rows).map(|i| m.get(i, j)).sum::<f64>() / rows as f64;
        for i in 0..rows {
            centered.set(i, j, m.get(i, j) - mean);
        }
    }

    let svd = truncated_svd(&centered, k)?;
    let mut scores = Mat::zeros(rows, k);
    for i in 0..rows {
        for j in 0..k {
            scores.set(i, j, svd.u.get(i, j) * svd.s[j]);
        }
    }
    let explained_variance = svd
        .s
        .iter()
        .map(|s| s * s / (rows as f64 - 1.0))
        .collect();
    Ok(Pca {
        components: svd.vt,
        scores,
        explained_variance,
    })
}
