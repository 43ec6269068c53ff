//! Classical (Torgerson) multidimensional scaling.

use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::numerics::jacobi::symmetric_eigen;

#[derive(Clone, Debug)]
pub struct Embedding {
    /// n x dims point coordinates.
    pub coordinates: Mat,
    /// Normalized residual between input and embedded distances.
    pub stress: f64,
}

/// Embeds a symmetric distance matrix into `dims` dimensions by double
/// centering the squared distances and keeping the top eigenvectors.
/// Negative eigenvalues (non-Euclidean input) clamp to zero.
pub fn classical_mds(distances: &Mat, dims: usize) -> Result<Embedding> {
    let n = distances.rows();
    if distances.cols() != n {
        return Err(Error::InvalidArgument(format!(
            "distance matrix must be square, got {}x{}",
            distances.rows(),
            distances.cols()
        )));
    }
    if n == 0 {
        return Err(Error::EmptyInput("distance matrix has no rows".into()));
    }
    let scale = distances.frobenius().max(1.0);
    for i in 0..n {
        for j in (i + 1)..n {
            if (distances.get(i, j) - distances.get(j, i)).abs() > 1e-9 * scale {
                return Err(Error::InvalidArgument(format!(
                    "distance matrix is not symmetric at ({i},{j})"
                )));
            }
        }
    }
    if dims == 0 || dims > n.saturating_sub(1) {
        return Err(Error::InvalidArgument(format!(
            "cannot embed {n} points into {dims} dimensions"
        )));
    }

    // B = -1/2 J D^2 J with J = I - 11^T/n.
    let mut sq = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            sq.set(i, j, distances.get(i, j).powi(2));
        }
    }
    let mut row_mean = vec![0.0; n];
    let mut col_mean = vec![0.0; n];
    let mut grand = 0.0;
    for i in 0..n {
        for j in 0..n {
            row_mean[i] += sq.get(i, j);
            col_mean[j] += sq.get(i, j);
            grand += sq.get(i, j);
        }
    }
    for m in row_mean.iter_mut().chain(col_mean.iter_mut()) {
        *m /= n as f64;
    }
    grand /= (n * n) as f64;
    let mut b = Mat::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            b.set(i, j, -0.5 * (sq.get(i, j) - row_mean[i] - col_mean[j] + grand));
        }
    }

    let (eigenvalues, eigenvectors) = symmetric_eigen(&b)?;
    let mut coordinates = Mat::zeros(n, dims);
    for d in 0..dims {
        let weight = eigenvalues[d].max(0.0).sqrt();
        for i in 0..n {
            coordinates.set(i, d, eigenvectors.get(i, d) * weight);
        }
    }

    let mut num = 0.0;
    let mut den = 0.0;
    for i in 0..n {
        for j in (i + 1)..n {
            let fitted: f64 = (0..dims)
                .map(|d| (coordinates.get(i, d) - coordinates.get(j, d)).powi(2))
                .sum::<f64>()
                .sqrt();
            num += (distances.get(i, j) - fitted).powi(2);
            den += distances.get(i, j).powi(2);
        }
    }
    let stress = if den > 0.0 { (num / den).sqrt() } else { 0.0 };
    Ok(Embedding {
        coordinates,
        stress,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn pairwise(coords: &Mat, i: usize, j: usize) -> f64 {
        (0..coords.cols())
            .map(|d| (coords.get(i, d) - coords.get(j, d)).powi(2))
            .sum::<f64>()
            .sqrt()
    }

    #[test]
    fn right_triangle_edges_recovered() {
        let d = Mat::from_rows(vec![
            vec![0.0, 3.0, 4.0],
            vec![3.0, 0.0, 5.0],
            vec![4.0, 5.0, 0.0],
        ])
        .unwrap();
        let e = classical_mds(&d, 2).unwrap();
        assert_abs_diff_eq!(pairwise(&e.coordinates, 0, 1), 3.0, epsilon = 1e-6);
        assert_abs_diff_eq!(pairwise(&e.coordinates, 0, 2), 4.0, epsilon = 1e-6);
        assert_abs_diff_eq!(pairwise(&e.coordinates, 1, 2), 5.0, epsilon = 1e-6);
        assert!(e.stress < 1e-6);
    }

    #[test]
    fn collinear_points_fit_in_one_dimension() {
        let d = Mat::from_rows(vec![
            vec![0.0, 1.0, 2.0],
            vec![1.0, 0.0, 1.0],
            vec![2.0, 1.0, 0.0],
        ])
        .unwrap();
        let e = classical_mds(&d, 1).unwrap();
        assert_abs_diff_eq!(pairwise(&e.coordinates, 0, 2), 2.0, epsilon = 1e-9);
        assert!(e.stress < 1e-9);
    }

    #[test]
    fn euclidean_input_round_trips() {
        // Known planar points; their distance matrix must embed with ~0 stress.
        let pts: [(f64, f64); 5] = [(0.0, 0.0), (1.5, 0.2), (-0.7, 2.1), (3.0, -1.0), (0.4, 0.9)];
        let n = pts.len();
        let mut d = Mat::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                let dist = ((pts[i].0 - pts[j].0).powi(2) + (pts[i].1 - pts[j].1).powi(2)).sqrt();
                d.set(i, j, dist);
            }
        }
        let e = classical_mds(&d, 2).unwrap();
        for i in 0..n {
            for j in (i + 1)..n {
                assert_abs_diff_eq!(pairwise(&e.coordinates, i, j), d.get(i, j), epsilon = 1e-8);
            }
        }
        assert!(e.stress < 1e-8);
    }

    #[test]
    fn asymmetric_input_rejected() {
        let d = Mat::from_rows(vec![vec![0.0, 1.0], vec![2.0, 0.0]]).unwrap();
        assert!(classical_mds(&d, 1).is_err());
    }

    #[test]
    fn dimension_bounds() {
        let d = Mat::from_rows(vec![
            vec![0.0, 1.0, 1.0],
            vec![1.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        assert!(classical_mds(&d, 0).is_err());
        assert!(classical_mds(&d, 3).is_err());
        assert!(classical_mds(&d, 2).is_ok());
    }

    #[test]
    fn non_euclidean_clamps_instead_of_panicking() {
        // Violates the triangle inequality; MDS should still produce finite
        // coordinates with positive stress.
        let d = Mat::from_rows(vec![
            vec![0.0, 10.0, 1.0],
            vec![10.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ])
        .unwrap();
        let e = classical_mds(&d, 2).unwrap();
        assert!(e.stress > 0.0);
        for i in 0..3 {
            for dim in 0..2 {
                assert!(e.coordinates.get(i, dim).is_finite());
            }
        }
    }
}
