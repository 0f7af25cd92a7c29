//! Dirichlet problems on the unit square, solved by Gauss–Seidel, classical
//! geometric multigrid, and the two skeletal multigrid variants, with work
//! counted in smoother nonzeros.

pub mod bench;
pub mod problem;
pub mod reference;
pub mod solvers;

pub use bench::{parse_algorithms, run_benchmark, run_single, Algorithm, TraceRow, WorkTrace};
pub use problem::{Bc, DirichletProblem};
pub use solvers::{
    gauss_seidel, ClassicalMg, CycleSpec, GaussSeidel, SkelCombine, SkeletalLevelwise,
    SkeletalRecursive, Stepper,
};
