use std::fmt::{self, Write as _};
use std::str::FromStr;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::sparse::norm2;

use super::problem::{Bc, DirichletProblem};
use super::solvers::{
    ClassicalMg, CycleSpec, SkelCombine, SkeletalLevelwise, SkeletalRecursive, Stepper,
    LEVELWISE_DEFAULT_WEIGHT,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Algorithm {
    GaussSeidel,
    ClassicalV,
    ClassicalW,
    SkeletalRecursiveV,
    SkeletalRecursiveW,
    SkeletalLevelwiseV,
    /// Both semicoarsened corrections from one residual, summed unweighted.
    SkeletalRecursiveAdditiveV,
}

impl Algorithm {
    pub const ALL: [Algorithm; 7] = [
        Algorithm::GaussSeidel,
        Algorithm::ClassicalV,
        Algorithm::ClassicalW,
        Algorithm::SkeletalRecursiveV,
        Algorithm::SkeletalRecursiveW,
        Algorithm::SkeletalLevelwiseV,
        Algorithm::SkeletalRecursiveAdditiveV,
    ];

    /// What `bench` runs when no list is given. W-cycles are left out: the
    /// recursive skeletal W-cycle costs exponentially more per step.
    pub const DEFAULT: [Algorithm; 4] = [
        Algorithm::GaussSeidel,
        Algorithm::ClassicalV,
        Algorithm::SkeletalRecursiveV,
        Algorithm::SkeletalLevelwiseV,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::GaussSeidel => "gauss_seidel",
            Algorithm::ClassicalV => "classical_mg_v",
            Algorithm::ClassicalW => "classical_mg_w",
            Algorithm::SkeletalRecursiveV => "skeletal_recursive_v",
            Algorithm::SkeletalRecursiveW => "skeletal_recursive_w",
            Algorithm::SkeletalLevelwiseV => "skeletal_levelwise_v",
            Algorithm::SkeletalRecursiveAdditiveV => "skeletal_recursive_additive_v",
        }
    }

    pub fn stepper(self, problem: &DirichletProblem) -> Box<dyn Stepper> {
        use Algorithm::*;
        match self {
            GaussSeidel => Box::new(super::solvers::GaussSeidel::new(problem)),
            ClassicalV => Box::new(ClassicalMg::new(problem, CycleSpec::V11)),
            ClassicalW => Box::new(ClassicalMg::new(problem, CycleSpec::W11)),
            SkeletalRecursiveV => Box::new(SkeletalRecursive::new(
                problem,
                CycleSpec::V11,
                SkelCombine::Sequential,
            )),
            SkeletalRecursiveW => Box::new(SkeletalRecursive::new(
                problem,
                CycleSpec::W11,
                SkelCombine::Sequential,
            )),
            SkeletalLevelwiseV => Box::new(SkeletalLevelwise::new(
                problem,
                CycleSpec::V11,
                LEVELWISE_DEFAULT_WEIGHT,
            )),
            SkeletalRecursiveAdditiveV => Box::new(SkeletalRecursive::new(
                problem,
                CycleSpec::V11,
                SkelCombine::Additive { weight: 1.0 },
            )),
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Algorithm::ALL
            .into_iter()
            .find(|a| a.name() == s)
            .ok_or_else(|| Error::UnknownAlgorithm(s.to_string()))
    }
}

/// Parses a comma-separated algorithm list.
pub fn parse_algorithms(list: &str) -> Result<Vec<Algorithm>> {
    list.split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(str::parse)
        .collect()
}

#[derive(Clone, Debug, PartialEq)]
pub struct TraceRow {
    pub algorithm: Algorithm,
    pub cycle: usize,
    pub work: f64,
    pub residual: f64,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct WorkTrace {
    pub rows: Vec<TraceRow>,
}

impl WorkTrace {
    pub fn for_algorithm(&self, alg: Algorithm) -> impl Iterator<Item = &TraceRow> {
        self.rows.iter().filter(move |r| r.algorithm == alg)
    }

    pub fn final_residual(&self, alg: Algorithm) -> Option<f64> {
        self.for_algorithm(alg).last().map(|r| r.residual)
    }

    pub fn to_csv(&self) -> String {
        let mut s = String::from("algorithm,cycle,work,residual\n");
        for r in &self.rows {
            // Display of f64 round-trips exactly.
            writeln!(s, "{},{},{},{}", r.algorithm, r.cycle, r.work, r.residual).unwrap();
        }
        s
    }
}

pub const RELATIVE_TOL: f64 = 1e-10;

/// Runs one algorithm from `x = 0`. A step is kept only if the cumulative
/// work after it stays within `budget`.
pub fn run_single(
    problem: &DirichletProblem,
    alg: Algorithm,
    budget: f64,
) -> Result<Vec<TraceRow>> {
    let stepper = alg.stepper(problem);
    let bnorm = norm2(&problem.b);
    let mut x = vec![0.0; problem.b.len()];
    let mut work = 0.0;
    let mut residual = bnorm;
    let mut rows = vec![TraceRow {
        algorithm: alg,
        cycle: 0,
        work,
        residual,
    }];
    while residual >= RELATIVE_TOL * bnorm && residual.is_finite() {
        let mut trial = x.clone();
        let mut trial_work = work;
        stepper.step(&mut trial, &problem.b, &mut trial_work)?;
        if trial_work > budget || trial_work <= work {
            break;
        }
        x = trial;
        work = trial_work;
        residual = problem.residual_norm(&x);
        rows.push(TraceRow {
            algorithm: alg,
            cycle: rows.len(),
            work,
            residual,
        });
    }
    Ok(rows)
}

/// Runs every algorithm independently (in parallel) and concatenates the
/// traces in the order the algorithms were given.
pub fn run_benchmark(k: usize, bc: Bc, algorithms: &[Algorithm], budget: f64) -> Result<WorkTrace> {
    if budget.is_nan() || budget < 0.0 {
        return Err(Error::InvalidArgument(format!(
            "budget {budget} must be nonnegative"
        )));
    }
    let problem = DirichletProblem::new(k, bc)?;
    let runs = algorithms
        .par_iter()
        .map(|&a| run_single(&problem, a, budget))
        .collect::<Result<Vec<_>>>()?;
    Ok(WorkTrace {
        rows: runs.into_iter().flatten().collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for a in Algorithm::ALL {
            assert_eq!(a.name().parse::<Algorithm>().unwrap(), a);
        }
        assert!(matches!(
            "multigrid".parse::<Algorithm>(),
            Err(Error::UnknownAlgorithm(_))
        ));
        assert_eq!(
            parse_algorithms("gauss_seidel, classical_mg_v").unwrap(),
            vec![Algorithm::GaussSeidel, Algorithm::ClassicalV]
        );
    }

    #[test]
    fn gauss_seidel_row_count() {
        let p = DirichletProblem::new(3, Bc::LeftBottom).unwrap();
        let nnz = p.a.nnz() as f64;
        for budget in [0.0, nnz - 1.0, nnz, 10.5 * nnz] {
            let t = run_benchmark(3, Bc::LeftBottom, &[Algorithm::GaussSeidel], budget).unwrap();
            assert_eq!(t.rows.len(), (budget / nnz).floor() as usize + 1);
        }
    }

    #[test]
    fn shared_start_and_monotone_work() {
        let t = run_benchmark(3, Bc::Alternating, &Algorithm::ALL, 2e4).unwrap();
        let bnorm = norm2(&DirichletProblem::new(3, Bc::Alternating).unwrap().b);
        for a in Algorithm::ALL {
            let rows: Vec<_> = t.for_algorithm(a).collect();
            assert_eq!(rows[0].work, 0.0);
            assert_eq!(rows[0].residual, bnorm);
            assert!(rows.windows(2).all(|w| w[1].work > w[0].work));
            assert!(rows.last().unwrap().work <= 2e4);
        }
    }

    #[test]
    fn zero_budget_gives_initial_rows() {
        let t = run_benchmark(2, Bc::LeftBottom, &Algorithm::DEFAULT, 0.0).unwrap();
        assert_eq!(t.rows.len(), Algorithm::DEFAULT.len());
        assert!(t.to_csv().starts_with("algorithm,cycle,work,residual\n"));
        assert_eq!(t.to_csv().lines().count(), 1 + Algorithm::DEFAULT.len());
    }
}
