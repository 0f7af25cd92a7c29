//! Dense direct solves, for checking the iterative solvers on small grids.

use crate::error::{Error, Result};
use crate::sparse::SparseMatrix;

/// Solves `A x = b` for SPD `A` by Cholesky factorization.
pub fn dense_solve(a: &SparseMatrix, b: &[f64]) -> Result<Vec<f64>> {
    let n = a.nrows();
    if !a.is_square() || b.len() != n {
        return Err(Error::DimensionMismatch {
            op: "dense_solve",
            expected: (n, n),
            found: (a.ncols(), b.len()),
        });
    }
    let mut l = a.to_dense();
    for j in 0..n {
        let d = l[j][j] - (0..j).map(|k| l[j][k] * l[j][k]).sum::<f64>();
        if d <= 0.0 {
            return Err(Error::InvalidArgument(format!(
                "matrix not positive definite at pivot {j}"
            )));
        }
        let d = d.sqrt();
        l[j][j] = d;
        for i in j + 1..n {
            let s = l[i][j] - (0..j).map(|k| l[i][k] * l[j][k]).sum::<f64>();
            l[i][j] = s / d;
        }
    }
    let mut y = b.to_vec();
    for i in 0..n {
        for k in 0..i {
            y[i] -= l[i][k] * y[k];
        }
        y[i] /= l[i][i];
    }
    for i in (0..n).rev() {
        for k in i + 1..n {
            y[i] -= l[k][i] * y[k];
        }
        y[i] /= l[i][i];
    }
    Ok(y)
}

/// `sqrt(eᵀ A e)`.
pub fn a_norm(a: &SparseMatrix, e: &[f64]) -> f64 {
    let ae = a.spmv(e).expect("matching length");
    e.iter()
        .zip(&ae)
        .map(|(x, y)| x * y)
        .sum::<f64>()
        .max(0.0)
        .sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigrid::problem::{Bc, DirichletProblem};

    #[test]
    fn solves_small_problem() {
        let p = DirichletProblem::new(3, Bc::LeftBottom).unwrap();
        let x = dense_solve(&p.a, &p.b).unwrap();
        assert!(p.residual_norm(&x) < 1e-12);
        assert!(dense_solve(&SparseMatrix::from_diag(&[1.0, -1.0]), &[1.0, 1.0]).is_err());
    }
}
