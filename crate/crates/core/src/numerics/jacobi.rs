//! Cyclic Jacobi eigendecomposition for symmetric matrices. Deterministic,
//! no pivot search: sweeps rotate every off-diagonal pair in row order
//! until the off-diagonal norm is negligible.

use crate::error::{Error, Result};
use crate::matrix::Mat;

const MAX_SWEEPS: usize = 100;
const SYMMETRY_TOL: f64 = 1e-8;

/// Eigenvalues in descending order with the matching eigenvectors as
/// columns of the returned matrix.
pub fn symmetric_eigen(a: &Mat) -> Result<(Vec<f64>, Mat)> {
    let n = a.rows();
    if a.cols() != n {
        return Err(Error::InvalidArgument(format!(
            "eigendecomposition needs a square matrix, got {}x{}",
            a.rows(),
            a.cols()
        )));
    }
    let scale = a.frobenius().max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (a.get(i, j) - a.get(j, i)).abs() > SYMMETRY_TOL * scale {
                return Err(Error::InvalidArgument(format!(
                    "matrix is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    if n == 0 {
        return Ok((Vec::new(), Mat::zeros(0, 0)));
    }

    let mut m = a.clone();
    // Force exact symmetry so rotations stay consistent.
    for i in 0..n {
        for j in (i + 1)..n {
            let avg = 0.5 * (m.get(i, j) + m.get(j, i));
            m.set(i, j, avg);
            m.set(j, i, avg);
        }
    }
    let mut v = Mat::zeros(n, n);
    for i in 0..n {
        v.set(i, i, 1.0);
    }

    for _ in 0..MAX_SWEEPS {
        let mut off = 0.0;
        for i in 0..n {
            for j in (i + 1)..n {
                off += m.get(i, j) * m.get(i, j);
            }
        }
        if off.sqrt() <= 1e-14 * scale {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let apq = m.get(p, q);
                let app = m.get(p, p);
                let aqq = m.get(q, q);
                if apq.abs() <= 1e-300 || apq.abs() <= f64::EPSILON * (app.abs() + aqq.abs()) {
                    continue;
                }
                let theta = (aqq - app) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let mkp = m.get(k, p);
                    let mkq = m.get(k, q);
                    m.set(k, p, c * mkp - s * mkq);
                    m.set(k, q, s * mkp + c * mkq);
                }
                for k in 0..n {
                    let mpk = m.get(p, k);
                    let mqk = m.get(q, k);
                    m.set(p, k, c * mpk - s * mqk);
                    m.set(q, k, s * mpk + c * mqk);
                }
                for k in 0..n {
                    let vkp = v.get(k, p);
                    let vkq = v.get(k, q);
                    v.set(k, p, c * vkp - s * vkq);
                    v.set(k, q, s * vkp + c * vkq);
                }
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| {
        m.get(j, j)
            .partial_cmp(&m.get(i, i))
            .unwrap_or(std::cmp::Ordering::Equal)
    });
    let eigenvalues: Vec<f64> = order.iter().map(|&i| m.get(i, i)).collect();
    let mut vectors = Mat::zeros(n, n);
    for (dst, &src) in order.iter().enumerate() {
        for k in 0..n {
            vectors.set(k, dst, v.get(k, src));
        }
    }
    Ok((eigenvalues, vectors))
}
