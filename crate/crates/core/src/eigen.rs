//! Dense symmetric eigensolver (cyclic Jacobi), used as a test oracle.

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

pub const DEFAULT_MAX_ORDER: usize = 256;

#[derive(Clone, Debug)]
pub struct EigPair {
    pub value: f64,
    pub vector: Vec<f64>,
}

impl EigPair {
    /// `‖M v − λ v‖∞`.
    pub fn residual(&self, m: &SparseMatrix) -> Result<f64> {
        let mv = m.spmv(&self.vector)?;
        Ok(mv
            .iter()
            .zip(&self.vector)
            .map(|(a, v)| (a - self.value * v).abs())
            .fold(0.0, f64::max))
    }
}

/// Full eigendecomposition of a symmetric matrix, eigenvalues ascending.
/// Iterates cyclic sweeps until the off-diagonal Frobenius norm drops to
/// `1e-12·‖M‖_F`.
pub fn dense_eig_sym(m: &SparseMatrix, max_order: usize) -> Result<Vec<EigPair>> {
    if !m.is_square() {
        return Err(Error::NotSquare {
            op: "dense_eig_sym",
            rows: m.nrows(),
            cols: m.ncols(),
        });
    }
    let n = m.nrows();
    if n > max_order {
        return Err(Error::TooLarge {
            order: n,
            max: max_order,
        });
    }
    if !m.is_symmetric() {
        return Err(Error::NotSymmetric {
            op: "dense_eig_sym",
        });
    }
    let mut a = m.to_dense();
    let mut v: Vec<Vec<f64>> = (0..n)
        .map(|i| (0..n).map(|j| if i == j { 1.0 } else { 0.0 }).collect())
        .collect();

    let frob = a.iter().flatten().map(|x| x * x).sum::<f64>().sqrt();
    let tol = 1e-12 * frob;
    let off = |a: &Vec<Vec<f64>>| {
        let mut s = 0.0;
        for i in 0..n {
            for j in 0..n {
                if i != j {
                    s += a[i][j] * a[i][j];
                }
            }
        }
        s.sqrt()
    };

    for _sweep in 0..100 {
        if off(&a) <= tol {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p][q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q][q] - a[p][p]) / (2.0 * apq);
                let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
                let t = if theta == 0.0 { 1.0 } else { t };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                for k in 0..n {
                    let (akp, akq) = (a[k][p], a[k][q]);
                    a[k][p] = c * akp - s * akq;
                    a[k][q] = s * akp + c * akq;
                }
                for k in 0..n {
                    let (apk, aqk) = (a[p][k], a[q][k]);
                    a[p][k] = c * apk - s * aqk;
                    a[q][k] = s * apk + c * aqk;
                }
                for row in v.iter_mut() {
                    let (vkp, vkq) = (row[p], row[q]);
                    row[p] = c * vkp - s * vkq;
                    row[q] = s * vkp + c * vkq;
                }
            }
        }
    }

    let mut pairs: Vec<EigPair> = (0..n)
        .map(|j| EigPair {
            value: a[j][j],
            vector: v.iter().map(|row| row[j]).collect(),
        })
        .collect();
    pairs.sort_by(|x, y| x.value.total_cmp(&y.value));
    Ok(pairs)
}

/// Ascending eigenvalues only.
pub fn eigenvalues(m: &SparseMatrix) -> Result<Vec<f64>> {
    Ok(dense_eig_sym(m, DEFAULT_MAX_ORDER)?
        .into_iter()
        .map(|p| p.value)
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Graph;

    fn assert_close(a: &[f64], b: &[f64]) {
        assert_eq!(a.len(), b.len());
        for (x, y) in a.iter().zip(b) {
            assert!((x - y).abs() < 1e-10, "{a:?} vs {b:?}");
        }
    }

    #[test]
    fn closed_forms() {
        assert_close(
            &eigenvalues(&SparseMatrix::from_diag(&[3.0, 1.0, 2.0])).unwrap(),
            &[1.0, 2.0, 3.0],
        );
        assert_close(
            &eigenvalues(&Graph::path(2).laplacian().unwrap()).unwrap(),
            &[-2.0, 0.0],
        );
        let c4: Vec<f64> = {
            let mut v: Vec<f64> = (0..4)
                .map(|k| 2.0 * (2.0 * std::f64::consts::PI * k as f64 / 4.0).cos() - 2.0)
                .collect();
            v.sort_by(f64::total_cmp);
            v
        };
        assert_close(
            &eigenvalues(&Graph::cycle(4).laplacian().unwrap()).unwrap(),
            &c4,
        );
    }

    #[test]
    fn eigenvectors_are_certified() {
        let l = Graph::cycle(7).laplacian().unwrap();
        for p in dense_eig_sym(&l, 16).unwrap() {
            let scale = p.vector.iter().fold(1.0f64, |m, x| m.max(x.abs()));
            assert!(p.residual(&l).unwrap() <= 1e-10 * scale);
        }
    }

    #[test]
    fn rejects_bad_input() {
        let asym = SparseMatrix::from_triplets(2, 2, [(0, 1, 1.0)]).unwrap();
        assert!(eigenvalues(&asym).is_err());
        assert!(dense_eig_sym(&SparseMatrix::identity(5), 4).is_err());
        assert!(eigenvalues(&SparseMatrix::zeros(2, 3)).is_err());
        assert!(eigenvalues(&SparseMatrix::zeros(0, 0)).unwrap().is_empty());
    }
}
