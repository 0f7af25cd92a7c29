use crate::error::{Error, Result};
use crate::sparse::{CsrMatrix, SparseMatrix};

use super::problem::DirichletProblem;

/// Forward lexicographic Gauss–Seidel, in place. Adds `sweeps · nnz(A)` to
/// `work`.
pub fn gauss_seidel(
    a: &CsrMatrix,
    x: &mut [f64],
    b: &[f64],
    sweeps: usize,
    work: &mut f64,
) -> Result<()> {
    assert_eq!(x.len(), a.nrows());
    assert_eq!(b.len(), a.nrows());
    for _ in 0..sweeps {
        for i in 0..a.nrows() {
            let mut s = b[i];
            let mut diag = 0.0;
            for (j, v) in a.row(i) {
                if j == i {
                    diag = v;
                } else {
                    s -= v * x[j];
                }
            }
            if diag == 0.0 {
                return Err(Error::ZeroDiagonal { row: i });
            }
            x[i] = s / diag;
        }
        *work += a.nnz() as f64;
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CycleSpec {
    /// 1 = V-cycle, 2 = W-cycle.
    pub gamma: usize,
    pub pre: usize,
    pub post: usize,
}

impl CycleSpec {
    pub const V11: CycleSpec = CycleSpec {
        gamma: 1,
        pre: 1,
        post: 1,
    };
    pub const W11: CycleSpec = CycleSpec {
        gamma: 2,
        pre: 1,
        post: 1,
    };

    pub fn new(gamma: usize, pre: usize, post: usize) -> Result<Self> {
        if !(1..=2).contains(&gamma) || pre == 0 || post == 0 {
            return Err(Error::InvalidArgument(format!(
                "cycle needs gamma in 1..=2 and positive smoothing counts, got ({gamma}, {pre}, {post})"
            )));
        }
        Ok(CycleSpec { gamma, pre, post })
    }
}

fn axpy(y: &mut [f64], alpha: f64, x: &[f64]) {
    for (yi, xi) in y.iter_mut().zip(x) {
        *yi += alpha * xi;
    }
}

/// Anything that advances an iterate by one benchmark step.
pub trait Stepper: Sync {
    fn step(&self, x: &mut [f64], b: &[f64], work: &mut f64) -> Result<()>;
}

/// One Gauss–Seidel sweep per step on the finest operator.
pub struct GaussSeidel {
    a: CsrMatrix,
}

impl GaussSeidel {
    pub fn new(problem: &DirichletProblem) -> Self {
        GaussSeidel {
            a: problem.a_csr.clone(),
        }
    }
}

impl Stepper for GaussSeidel {
    fn step(&self, x: &mut [f64], b: &[f64], work: &mut f64) -> Result<()> {
        gauss_seidel(&self.a, x, b, 1, work)
    }
}

/// Geometric multigrid coarsening both dimensions at once with
/// `P = P^{[1]} ⊗ P^{[2]}` and Galerkin coarse operators.
pub struct ClassicalMg {
    /// `ops[a - 1]` on grid level `a = 1..=k`.
    ops: Vec<CsrMatrix>,
    /// `transfer[a - 2]` prolongs level `a - 1` to level `a`.
    transfer: Vec<CsrMatrix>,
    cycle: CycleSpec,
}

impl ClassicalMg {
    pub fn new(problem: &DirichletProblem, cycle: CycleSpec) -> Self {
        let k = problem.k;
        let ops = (1..=k)
            .map(|a| CsrMatrix::from(&problem.operator(a, a)))
            .collect();
        let transfer = (2..=k)
            .map(|a| {
                let p1 = &problem.factor_prolong[0][a - 2];
                let p2 = &problem.factor_prolong[1][a - 2];
                CsrMatrix::from(&p1.kron(p2))
            })
            .collect();
        ClassicalMg {
            ops,
            transfer,
            cycle,
        }
    }

    pub fn levels(&self) -> usize {
        self.ops.len()
    }

    pub fn operator(&self, a: usize) -> &CsrMatrix {
        &self.ops[a - 1]
    }

    pub fn cycle_at(&self, a: usize, x: &mut [f64], b: &[f64], work: &mut f64) -> Result<()> {
        let op = &self.ops[a - 1];
        gauss_seidel(op, x, b, self.cycle.pre, work)?;
        if a > 1 {
            let p = &self.transfer[a - 2];
            let rc = p.mul_vec_transpose(&op.residual(x, b));
            let mut c = vec![0.0; rc.len()];
            for _ in 0..self.cycle.gamma {
                self.cycle_at(a - 1, &mut c, &rc, work)?;
            }
            axpy(x, 1.0, &p.mul_vec(&c));
        }
        gauss_seidel(op, x, b, self.cycle.post, work)
    }
}

impl Stepper for ClassicalMg {
    fn step(&self, x: &mut [f64], b: &[f64], work: &mut f64) -> Result<()> {
        self.cycle_at(self.levels(), x, b, work)
    }
}

/// How the two semicoarsened corrections of one recursive skeletal step are
/// combined.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SkelCombine {
    /// Correct along dimension 1, recompute the residual, then correct along
    /// dimension 2.
    Sequential,
    /// Both corrections from the same residual, summed and scaled by `weight`.
    Additive { weight: f64 },
}

/// Recursive skeletal multigrid: from grid `(l1, l2)` recurse to
/// `(l1 − 1, l2)` via `P^{[1]} ⊗ I` and to `(l1, l2 − 1)` via `I ⊗ P^{[2]}`.
pub struct SkeletalRecursive {
    k: usize,
    /// `ops[(l1 - 1) * k + (l2 - 1)]`.
    ops: Vec<CsrMatrix>,
    /// `semi1[(l1 - 1) * k + (l2 - 1)]` prolongs `(l1 - 1, l2)` to `(l1, l2)`.
    semi1: Vec<Option<CsrMatrix>>,
    semi2: Vec<Option<CsrMatrix>>,
    cycle: CycleSpec,
    combine: SkelCombine,
}

impl SkeletalRecursive {
    pub fn new(problem: &DirichletProblem, cycle: CycleSpec, combine: SkelCombine) -> Self {
        let k = problem.k;
        let mut ops = Vec::with_capacity(k * k);
        let mut semi1 = Vec::with_capacity(k * k);
        let mut semi2 = Vec::with_capacity(k * k);
        for l1 in 1..=k {
            for l2 in 1..=k {
                ops.push(CsrMatrix::from(&problem.operator(l1, l2)));
                let eye1 = SparseMatrix::identity(problem.size(l1));
                let eye2 = SparseMatrix::identity(problem.size(l2));
                semi1.push(
                    (l1 > 1)
                        .then(|| CsrMatrix::from(&problem.factor_prolong[0][l1 - 2].kron(&eye2))),
                );
                semi2.push(
                    (l2 > 1)
                        .then(|| CsrMatrix::from(&eye1.kron(&problem.factor_prolong[1][l2 - 2]))),
                );
            }
        }
        SkeletalRecursive {
            k,
            ops,
            semi1,
            semi2,
            cycle,
            combine,
        }
    }

    fn at(&self, l1: usize, l2: usize) -> usize {
        (l1 - 1) * self.k + (l2 - 1)
    }

    fn coarse_correction(
        &self,
        p: &CsrMatrix,
        l1: usize,
        l2: usize,
        r: &[f64],
        work: &mut f64,
    ) -> Result<Vec<f64>> {
        let rc = p.mul_vec_transpose(r);
        let mut c = vec![0.0; rc.len()];
        for _ in 0..self.cycle.gamma {
            self.solve_at(l1, l2, &mut c, &rc, work)?;
        }
        Ok(p.mul_vec(&c))
    }

    /// One recursive step on grid `(l1, l2)`.
    pub fn solve_at(
        &self,
        l1: usize,
        l2: usize,
        x: &mut [f64],
        b: &[f64],
        work: &mut f64,
    ) -> Result<()> {
        let idx = self.at(l1, l2);
        let op = &self.ops[idx];
        gauss_seidel(op, x, b, self.cycle.pre, work)?;
        match self.combine {
            SkelCombine::Sequential => {
                if let Some(p) = &self.semi1[idx] {
                    let r = op.residual(x, b);
                    let d = self.coarse_correction(p, l1 - 1, l2, &r, work)?;
                    axpy(x, 1.0, &d);
                }
                if let Some(p) = &self.semi2[idx] {
                    let r = op.residual(x, b);
                    let d = self.coarse_correction(p, l1, l2 - 1, &r, work)?;
                    axpy(x, 1.0, &d);
                }
            }
            SkelCombine::Additive { weight } => {
                let r = op.residual(x, b);
                let mut dv = vec![0.0; x.len()];
                if let Some(p) = &self.semi1[idx] {
                    axpy(
                        &mut dv,
                        1.0,
                        &self.coarse_correction(p, l1 - 1, l2, &r, work)?,
                    );
                }
                if let Some(p) = &self.semi2[idx] {
                    axpy(
                        &mut dv,
                        1.0,
                        &self.coarse_correction(p, l1, l2 - 1, &r, work)?,
                    );
                }
                axpy(x, weight, &dv);
            }
        }
        gauss_seidel(op, x, b, self.cycle.post, work)
    }
}

impl Stepper for SkeletalRecursive {
    fn step(&self, x: &mut [f64], b: &[f64], work: &mut f64) -> Result<()> {
        self.solve_at(self.k, self.k, x, b, work)
    }
}

pub const LEVELWISE_DEFAULT_WEIGHT: f64 = 0.5;

/// Multigrid over the skeletal-product hierarchy: level `L` smooths all grids
/// `(i1, i2)` with `i1 + i2 = L` at once (block-diagonal operator), and levels
/// are linked by the column-normalized `P^{[1]} ⊗ I` / `I ⊗ P^{[2]}` blocks.
pub struct SkeletalLevelwise {
    k: usize,
    /// `blocks[L - 2]` lists `(i1, i2)` with `i1` ascending.
    blocks: Vec<Vec<(usize, usize)>>,
    ops: Vec<CsrMatrix>,
    /// `transfer[L - 3]` prolongs level `L - 1` to level `L`.
    transfer: Vec<CsrMatrix>,
    cycle: CycleSpec,
    weight: f64,
}

impl SkeletalLevelwise {
    pub fn new(problem: &DirichletProblem, cycle: CycleSpec, weight: f64) -> Self {
        let k = problem.k;
        let blocks: Vec<Vec<(usize, usize)>> = (2..=2 * k)
            .map(|l| {
                (1..=k)
                    .filter(|&i1| l > i1 && l - i1 >= 1 && l - i1 <= k)
                    .map(|i1| (i1, l - i1))
                    .collect()
            })
            .collect();
        let block_sizes = |bs: &[(usize, usize)]| -> Vec<usize> {
            bs.iter()
                .map(|&(a, c)| problem.size(a) * problem.size(c))
                .collect()
        };
        let ops = blocks
            .iter()
            .map(|bs| {
                let diag = bs
                    .iter()
                    .enumerate()
                    .map(|(i, &(a, c))| ((i, i), problem.operator(a, c)))
                    .collect();
                let s = block_sizes(bs);
                CsrMatrix::from(
                    &SparseMatrix::block_assemble(&diag, &s, &s).expect("diagonal blocks"),
                )
            })
            .collect();
        let transfer = (3..=2 * k)
            .map(|l| {
                let (fine, coarse) = (&blocks[l - 2], &blocks[l - 3]);
                let mut m = std::collections::BTreeMap::new();
                for (fi, &(a, c)) in fine.iter().enumerate() {
                    for (ci, &(a2, c2)) in coarse.iter().enumerate() {
                        let blk = if a2 + 1 == a && c2 == c {
                            problem.factor_prolong[0][a - 2]
                                .kron(&SparseMatrix::identity(problem.size(c)))
                        } else if a2 == a && c2 + 1 == c {
                            SparseMatrix::identity(problem.size(a))
                                .kron(&problem.factor_prolong[1][c - 2])
                        } else {
                            continue;
                        };
                        m.insert((fi, ci), blk);
                    }
                }
                let t = SparseMatrix::block_assemble(&m, &block_sizes(fine), &block_sizes(coarse))
                    .expect("transfer blocks");
                CsrMatrix::from(&normalize_columns(&t))
            })
            .collect();
        SkeletalLevelwise {
            k,
            blocks,
            ops,
            transfer,
            cycle,
            weight,
        }
    }

    pub fn top(&self) -> usize {
        2 * self.k
    }

    pub fn blocks(&self, level: usize) -> &[(usize, usize)] {
        &self.blocks[level - 2]
    }

    pub fn operator(&self, level: usize) -> &CsrMatrix {
        &self.ops[level - 2]
    }

    pub fn cycle_at(&self, level: usize, x: &mut [f64], b: &[f64], work: &mut f64) -> Result<()> {
        let op = &self.ops[level - 2];
        gauss_seidel(op, x, b, self.cycle.pre, work)?;
        if level > 2 {
            let t = &self.transfer[level - 3];
            let rc = t.mul_vec_transpose(&op.residual(x, b));
            let mut c = vec![0.0; rc.len()];
            for _ in 0..self.cycle.gamma {
                self.cycle_at(level - 1, &mut c, &rc, work)?;
            }
            axpy(x, self.weight, &t.mul_vec(&c));
        }
        gauss_seidel(op, x, b, self.cycle.post, work)
    }
}

impl Stepper for SkeletalLevelwise {
    fn step(&self, x: &mut [f64], b: &[f64], work: &mut f64) -> Result<()> {
        self.cycle_at(self.top(), x, b, work)
    }
}

/// Scales each nonzero column to unit two-norm.
pub fn normalize_columns(m: &SparseMatrix) -> SparseMatrix {
    let mut norms = vec![0.0; m.ncols()];
    for &(_, c, v) in m.entries() {
        norms[c] += v * v;
    }
    let t = m
        .entries()
        .iter()
        .map(|&(r, c, v)| (r, c, v / norms[c].sqrt()));
    SparseMatrix::from_triplets(m.nrows(), m.ncols(), t).expect("same shape")
}
