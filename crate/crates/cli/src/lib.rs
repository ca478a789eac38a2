//! Command-line front end for `envyfree-core`: instance and outcome files,
//! solver dispatch, and a scaling benchmark.

pub mod bench;
pub mod commands;
pub mod formats;
pub mod solvers;

pub use bench::{BenchConfig, BenchRecord};
pub use solvers::SolverKind;
