//! Truncated SVD via eigendecomposition of the smaller Gram matrix.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::numerics::jacobi::symmetric_eigen;

#[derive(Clone, Debug)]
pub struct Svd {
    /// rows x k, orthonormal columns.
    pub u: Mat,
    /// Singular values, descending, all >= 0.
    pub s: Vec<f64>,
    /// k x cols, orthonormal rows.
    pub vt: Mat,
}

/// Top-k singular triplets of an arbitrary dense matrix. Forms the Gram
/// matrix on the smaller dimension, so cost is cubic in min(rows, cols).
pub fn truncated_svd(m: &Mat, k: usize) -> Result<Svd> {
    let (rows, cols) = (m.rows(), m.cols());
    let max_rank = rows.min(cols);
    if k == 0 || k > max_rank {
        return Err(Error::InvalidArgument(format!(
            "requested {k} singular values from a {rows}x{cols} matrix"
        )));
    }

    let tall = rows >= cols;
    // Gram side: V for tall matrices, U for wide ones.
    let gram = if tall {
        m.transpose().matmul(m)
    } else {
        m.matmul(&m.transpose())
    };
    let (eigenvalues, eigenvectors) = symmetric_eigen(&gram)?;

    let s: Vec<f64> = eigenvalues
        .iter()
        .take(k)
        .map(|&l| l.max(0.0).sqrt())
        .collect();
    let s_max = s.first().copied().unwrap_or(0.0);
    let cutoff = s_max * 1e-12;

    let small = if tall { cols } else { rows };
    let mut gram_side = Mat::zeros(small, k);
    for i in 0..small {
        for j in 0..k {
            gram_side.set(i, j, eigenvectors.get(i, j));
        }
    }

    // Derived side column j: A v_j / s_j (or A^T u_j / s_j). Near-zero
    // singular values get an orthonormal completion instead.
    let big = if tall { rows } else { cols };
    let product = if tall {
        m.matmul(&gram_side)
    } else {
        m.transpose().matmul(&gram_side)
    };
    let mut derived = Mat::zeros(big, k);
    for j in 0..k {
        if s[j] > cutoff {
            for i in 0..big {
                derived.set(i, j, product.get(i, j) / s[j]);
            }
        } else {
            complete_column(&mut derived, j, big)?;
        }
    }

    let (u, v) = if tall { (derived, gram_side) } else { (gram_side, derived) };
    Ok(Svd {
        u,
        s,
        vt: v.transpose(),
    })
}

/// Fills column j with a unit vector orthogonal to columns 0..j by
/// Gram-Schmidt over the standard basis.
fn complete_column(mat: &mut Mat, j: usize, dim: usize) -> Result<()> {
    for basis in 0..dim {
        let mut cand = vec![0.0; dim];
        cand[basis] = 1.0;
        for prev in 0..j {
            let dot: f64 = (0..dim).map(|i| cand[i] * mat.get(i, prev)).sum();
            for (i, c) in cand.iter_mut().enumerate() {
                *c -= dot * mat.get(i, prev);
            }
        }
        let norm: f64 = cand.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 1e-6 {
            for (i, c) in cand.iter().enumerate() {
                mat.set(i, j, c / norm);
            }
            return Ok(());
        }
    }
    Err(Error::Internal(format!(
        "could not complete an orthonormal basis at column {j}"
    )))
}
