//! Envy-free perfect matching for markets where buyer `i` values item `j`
//! at `budget_i * quality_j`.
//!
//! [`solve_monge`] finds a revenue-maximizing envy-free allocation and
//! prices in O(n^2) time. The [`oracles`] module holds slower
//! general-purpose solvers (Hungarian matching, Bellman-Ford pricing, and
//! exhaustive search) used to cross-check it.
//!
//! ```
//! use envyfree_core::{solve_monge, validate_instance};
//!
//! let market = validate_instance(&[3.0, 1.0], &[2.0, 1.0]).unwrap();
//! let outcome = solve_monge(&market);
//! assert_eq!(outcome.prices.as_slice(), &[4.0, 1.0]);
//! assert_eq!(outcome.revenue, 5.0);
//! ```
#![cfg_attr(not(test), no_std)]

extern crate alloc;

pub mod error;
pub mod generate;
pub mod market;
pub mod matrix;
pub mod monge;
pub mod oracles;

pub use error::{Error, Result, Side};
pub use generate::{generate, Distribution, GenSpec, SplitMix64};
pub use market::{
    audit_envy_free, is_inverse_monge, materialize_matrix, social_welfare, sorted_view, validate_instance,
    Assignment, AuditReport, Instance, Outcome, PriceVector, SortedView, Violation, ViolationKind,
};
pub use matrix::Matrix;
pub use monge::{
    assortative_allocate, compute_prices_adjacent, compute_prices_paper, compute_prices_traced, solve_monge,
    solve_monge_with, PricingRule, ScanStep, SortedPrices,
};
pub use oracles::{
    bellman_ford, brute_force_solve, max_weight_perfect_matching, price_by_difference_constraints,
    solve_cubic, DifferenceConstraintGraph, NegativeCycle, PriceSolution,
};
