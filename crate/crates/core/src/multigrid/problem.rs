use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, SparseMatrix};

/// Boundary data for the unit-square Dirichlet problems.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Bc {
    /// 1 on the left column and bottom row of the boundary, 0 elsewhere.
    LeftBottom,
    /// `(-1)^t` at the `t`-th boundary node, walking clockwise from the
    /// lower-left corner.
    Alternating,
}

impl FromStr for Bc {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "1" | "bc1" => Ok(Bc::LeftBottom),
            "2" | "bc2" => Ok(Bc::Alternating),
            _ => Err(Error::InvalidArgument(format!(
                "unknown boundary condition `{s}` (expected 1 or 2)"
            ))),
        }
    }
}

impl fmt::Display for Bc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Bc::LeftBottom => "bc1",
            Bc::Alternating => "bc2",
        })
    }
}

/// Perimeter nodes `(x, y)` of the `(n+2)²` grid, interior `0..n`, walked
/// clockwise from `(-1, -1)`: up the left side, across the top, down the right
/// side, back along the bottom.
pub fn perimeter(n: usize) -> Vec<(i64, i64)> {
    let n = n as i64;
    let mut out = Vec::with_capacity(4 * (n as usize + 1));
    out.extend((-1..=n).map(|y| (-1, y)));
    out.extend((0..=n).map(|x| (x, n)));
    out.extend((-1..n).rev().map(|y| (n, y)));
    out.extend((0..n).rev().map(|x| (x, -1)));
    out
}

pub fn boundary_values(n: usize, bc: Bc) -> Vec<((i64, i64), f64)> {
    perimeter(n)
        .into_iter()
        .enumerate()
        .map(|(t, (x, y))| {
            let v = match bc {
                Bc::LeftBottom => {
                    if x == -1 || y == -1 {
                        1.0
                    } else {
                        0.0
                    }
                }
                Bc::Alternating => {
                    if t % 2 == 0 {
                        1.0
                    } else {
                        -1.0
                    }
                }
            };
            ((x, y), v)
        })
        .collect()
}

/// `tridiag(-1, 2, -1)` of order `n`.
pub fn laplacian_1d(n: usize) -> SparseMatrix {
    let t = (0..n).flat_map(|i| {
        let mut row = vec![(i, i, 2.0)];
        if i > 0 {
            row.push((i, i - 1, -1.0));
        }
        if i + 1 < n {
            row.push((i, i + 1, -1.0));
        }
        row
    });
    SparseMatrix::from_triplets(n, n, t).expect("tridiagonal in range")
}

/// Orthonormal aggregation from `nc` coarse to `2·nc + 1` fine interior nodes.
///
/// Coarse node `p` left of the middle aggregates fine `{2p, 2p+1}`, right of
/// it `{2p+1, 2p+2}`, and the middle one `{2p, 2p+1, 2p+2}`; weights are
/// `1/√|aggregate|` so the columns are orthonormal.
pub fn centered_aggregation(nc: usize) -> SparseMatrix {
    assert!(nc >= 1);
    let mid = (nc - 1) / 2;
    let mut t = Vec::with_capacity(2 * nc + 1);
    for p in 0..nc {
        let rows: Vec<usize> = if p < mid {
            vec![2 * p, 2 * p + 1]
        } else if p > mid {
            vec![2 * p + 1, 2 * p + 2]
        } else {
            vec![2 * p, 2 * p + 1, 2 * p + 2]
        };
        let w = 1.0 / (rows.len() as f64).sqrt();
        t.extend(rows.into_iter().map(|r| (r, p, w)));
    }
    SparseMatrix::from_triplets(2 * nc + 1, nc, t).expect("aggregation in range")
}

/// `A1 ⊗ I + I ⊗ A2`.
pub fn box_operator(a1: &SparseMatrix, a2: &SparseMatrix) -> SparseMatrix {
    a1.kron_sum(a2).expect("1D operators are square")
}

pub const MIN_K: usize = 2;
pub const MAX_K: usize = 12;

/// SPD system `A x = b` on the `n × n` interior of a `(n+2)²` grid, `n = 2^k − 1`,
/// unknown `(x, y)` at index `y·n + x` (row 0 at the bottom).
#[derive(Clone, Debug)]
pub struct DirichletProblem {
    pub k: usize,
    pub n: usize,
    pub bc: Option<Bc>,
    pub a: SparseMatrix,
    pub a_csr: CsrMatrix,
    pub b: Vec<f64>,
    /// `factor_ops[d][i - 1]` is the 1D operator of dimension `d` at level `i`
    /// (`i = 1..=k`, order `2^i − 1`).
    pub factor_ops: [Vec<SparseMatrix>; 2],
    /// `factor_prolong[d][i - 1]` maps level `i` to level `i + 1`.
    pub factor_prolong: [Vec<SparseMatrix>; 2],
}

impl DirichletProblem {
    pub fn new(k: usize, bc: Bc) -> Result<Self> {
        let bv: HashMap<(i64, i64), f64> = boundary_values((1 << k.min(MAX_K)) - 1, bc)
            .into_iter()
            .collect();
        Self::with_boundary(k, move |x, y| bv.get(&(x, y)).copied().unwrap_or(0.0)).map(|mut p| {
            p.bc = Some(bc);
            p
        })
    }

    /// Problem with boundary value `g(x, y)` at each perimeter node.
    pub fn with_boundary(k: usize, g: impl Fn(i64, i64) -> f64) -> Result<Self> {
        if !(MIN_K..=MAX_K).contains(&k) {
            return Err(Error::InvalidArgument(format!(
                "k = {k} outside {MIN_K}..={MAX_K}"
            )));
        }
        let n = (1usize << k) - 1;
        let mut b = vec![0.0; n * n];
        let on_boundary = |x: i64, y: i64| x < 0 || y < 0 || x >= n as i64 || y >= n as i64;
        for y in 0..n as i64 {
            for x in 0..n as i64 {
                let mut s = 0.0;
                for (dx, dy) in [(1, 0), (-1, 0), (0, 1), (0, -1)] {
                    let (px, py) = (x + dx, y + dy);
                    if on_boundary(px, py) {
                        s += g(px, py);
                    }
                }
                b[y as usize * n + x as usize] = s;
            }
        }

        let mut ops = vec![laplacian_1d(n)];
        let mut prolong = Vec::new();
        for i in (1..k).rev() {
            let p = centered_aggregation((1 << i) - 1);
            let fine = ops.last().unwrap();
            let coarse = p.transpose().matmul(fine)?.matmul(&p)?;
            ops.push(coarse);
            prolong.push(p);
        }
        ops.reverse();
        prolong.reverse();

        let a = box_operator(&ops[k - 1], &ops[k - 1]);
        Ok(DirichletProblem {
            k,
            n,
            bc: None,
            a_csr: CsrMatrix::from(&a),
            a,
            b,
            factor_ops: [ops.clone(), ops],
            factor_prolong: [prolong.clone(), prolong],
        })
    }

    /// Order of the 1D grid at level `i`.
    pub fn size(&self, i: usize) -> usize {
        (1 << i) - 1
    }

    /// `A^{[1]}_{l1} ⊞ A^{[2]}_{l2}`.
    pub fn operator(&self, l1: usize, l2: usize) -> SparseMatrix {
        box_operator(&self.factor_ops[0][l1 - 1], &self.factor_ops[1][l2 - 1])
    }

    pub fn residual_norm(&self, x: &[f64]) -> f64 {
        crate::sparse::norm2(&self.a_csr.residual(x, &self.b))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lineage::orthonormality_deviation;

    #[test]
    fn small_problem() {
        let p = DirichletProblem::new(2, Bc::LeftBottom).unwrap();
        assert_eq!(p.b, vec![2.0, 1.0, 1.0, 1.0, 0.0, 0.0, 1.0, 0.0, 0.0]);
        assert_eq!(p.a.shape(), (9, 9));
        assert_eq!(p.a.nnz(), 33);
        assert!(p.a.diagonal().iter().all(|&d| d == 4.0));
        assert!(p.a.is_symmetric());
    }

    #[test]
    fn zero_boundary() {
        let p = DirichletProblem::with_boundary(3, |_, _| 0.0).unwrap();
        assert!(p.b.iter().all(|&v| v == 0.0));
        assert!(DirichletProblem::new(1, Bc::LeftBottom).is_err());
        assert!(DirichletProblem::new(13, Bc::LeftBottom).is_err());
    }

    #[test]
    fn perimeter_walk() {
        let w = perimeter(3);
        assert_eq!(w.len(), 16);
        assert_eq!(w[0], (-1, -1));
        assert_eq!(w[4], (-1, 3));
        assert_eq!(w[5], (0, 3));
        assert_eq!(w[8], (3, 3));
        assert_eq!(w[12], (3, -1));
        assert_eq!(w[15], (0, -1));
        let mut uniq = w.clone();
        uniq.sort();
        uniq.dedup();
        assert_eq!(uniq.len(), 16);
    }

    #[test]
    fn alternating_boundary() {
        // n = 3: interior (0,0) touches (-1,0) at t=1 and (0,-1) at t=15.
        let p = DirichletProblem::new(2, Bc::Alternating).unwrap();
        assert_eq!(p.b[0], -2.0);
        // (1,1) is interior-only.
        assert_eq!(p.b[4], 0.0);
    }

    #[test]
    fn aggregation_and_galerkin() {
        for nc in [1, 3, 7, 15] {
            let p = centered_aggregation(nc);
            assert!(orthonormality_deviation(&p) < 1e-15);
            assert!(p.entries().iter().all(|e| e.2 > 0.0));
        }
        let p = DirichletProblem::new(4, Bc::LeftBottom).unwrap();
        for i in 1..4 {
            let pr = &p.factor_prolong[0][i - 1];
            let g = pr
                .transpose()
                .matmul(&p.factor_ops[0][i])
                .unwrap()
                .matmul(pr)
                .unwrap();
            assert!(g.max_abs_diff(&p.factor_ops[0][i - 1]).unwrap() <= 1e-12);
            assert_eq!(p.factor_ops[0][i - 1].nrows(), p.size(i));
        }
        assert_eq!(p.operator(4, 4), p.a);
    }
}
