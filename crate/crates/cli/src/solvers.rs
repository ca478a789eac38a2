use std::fmt;

use envyfree_core::{brute_force_solve, solve_cubic, solve_monge_with, Instance, Outcome, PricingRule};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, clap::ValueEnum)]
pub enum SolverKind {
    /// Sorted assortative allocation with full-scan pricing, O(n^2).
    Monge,
    /// Same allocation, adjacent-item pricing, O(n log n) overall.
    MongeFast,
    /// Hungarian matching plus Bellman-Ford prices, O(n^3).
    Hungarian,
    /// Exhaustive search over all allocations, n <= 8.
    Brute,
}

impl SolverKind {
    pub fn name(self) -> &'static str {
        match self {
            SolverKind::Monge => "monge",
            SolverKind::MongeFast => "monge-fast",
            SolverKind::Hungarian => "hungarian",
            SolverKind::Brute => "brute",
        }
    }

    pub fn run(self, inst: &Instance) -> envyfree_core::Result<Outcome> {
        match self {
            SolverKind::Monge => Ok(solve_monge_with(inst, PricingRule::Scan)),
            SolverKind::MongeFast => Ok(solve_monge_with(inst, PricingRule::Adjacent)),
            SolverKind::Hungarian => solve_cubic(inst),
            SolverKind::Brute => brute_force_solve(inst),
        }
    }
}

impl fmt::Display for SolverKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}
