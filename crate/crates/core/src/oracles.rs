//! General-purpose reference solvers.
//!
//! These ignore the budget x quality structure entirely: allocation comes
//! from a Hungarian max-weight perfect matching, prices from shortest paths
//! over a difference-constraint graph, and ground truth from enumerating
//! every allocation. They exist to check the quadratic solver.

use alloc::vec::Vec;

use crate::error::{Error, Result};
use crate::market::{materialize_matrix, sorted_view, Assignment, Instance, Outcome, PriceVector};
use crate::matrix::Matrix;

/// Largest `n` accepted by [`brute_force_solve`].
pub const MAX_BRUTE_FORCE_N: usize = 8;

/// Hungarian (Kuhn-Munkres) maximum-weight perfect matching, O(n^3).
///
/// Maximizes by minimizing `max - M[i][j]`, which keeps costs nonnegative.
/// Rows are inserted in index order, so the result is deterministic.
/// Returns the matching and its total weight.
pub fn max_weight_perfect_matching(m: &Matrix) -> Result<(Assignment, f64)> {
    let n = m.square_dim()?;
    for r in 0..n {
        for c in 0..n {
            if !m.get(r, c).is_finite() {
                return Err(Error::NonFiniteEntry { row: r, col: c });
            }
        }
    }
    if n == 0 {
        return Ok((Assignment::identity(0), 0.0));
    }
    let shift = (0..n).flat_map(|r| m.row(r).iter().copied()).fold(f64::NEG_INFINITY, f64::max);
    let cost = |r: usize, c: usize| shift - m.get(r, c);

    // 1-based potentials; column 0 is a sentinel.
    let mut row_pot = alloc::vec![0.0f64; n + 1];
    let mut col_pot = alloc::vec![0.0f64; n + 1];
    let mut row_of_col = alloc::vec![0usize; n + 1];
    let mut way = alloc::vec![0usize; n + 1];
    let mut min_slack = alloc::vec![0.0f64; n + 1];
    let mut used = alloc::vec![false; n + 1];

    for row in 1..=n {
        row_of_col[0] = row;
        let mut col0 = 0;
        min_slack.fill(f64::INFINITY);
        used.fill(false);
        loop {
            used[col0] = true;
            let r0 = row_of_col[col0];
            let mut delta = f64::INFINITY;
            let mut col1 = 0;
            for c in 1..=n {
                if used[c] {
                    continue;
                }
                let reduced = cost(r0 - 1, c - 1) - row_pot[r0] - col_pot[c];
                if reduced < min_slack[c] {
                    min_slack[c] = reduced;
                    way[c] = col0;
                }
                if min_slack[c] < delta {
                    delta = min_slack[c];
                    col1 = c;
                }
            }
            for c in 0..=n {
                if used[c] {
                    row_pot[row_of_col[c]] += delta;
                    col_pot[c] -= delta;
                } else {
                    min_slack[c] -= delta;
                }
            }
            col0 = col1;
            if row_of_col[col0] == 0 {
                break;
            }
        }
        // augment along the alternating path
        loop {
            let prev = way[col0];
            row_of_col[col0] = row_of_col[prev];
            col0 = prev;
            if col0 == 0 {
                break;
            }
        }
    }

    let mut item_of = alloc::vec![0; n];
    for c in 1..=n {
        item_of[row_of_col[c] - 1] = c - 1;
    }
    let welfare = item_of.iter().enumerate().map(|(r, &c)| m.get(r, c)).sum();
    Ok((Assignment::from_raw(item_of), welfare))
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConstraintEdge {
    pub from: usize,
    pub to: usize,
    pub weight: f64,
}

/// Envy-freeness constraints for a fixed allocation, as a graph.
///
/// Nodes `0..n` are items and node `n` is a virtual source. An edge
/// `k -> j` of weight `w` encodes `p_j - p_k <= w`.
#[derive(Debug, Clone, PartialEq)]
pub struct DifferenceConstraintGraph {
    node_count: usize,
    edges: Vec<ConstraintEdge>,
}

impl DifferenceConstraintGraph {
    /// With `b(j)` the buyer holding item `j`: source `-> j` has weight
    /// `M[b(j)][j]` (individual rationality) and `k -> j` has weight
    /// `M[b(j)][j] - M[b(j)][k]` (no envy toward `k`).
    pub fn build(m: &Matrix, assignment: &Assignment) -> Result<Self> {
        let n = m.square_dim()?;
        if assignment.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: assignment.len() });
        }
        let buyer_of = assignment.buyer_of()?;
        let mut edges = Vec::with_capacity(n * n);
        for (j, &b) in buyer_of.iter().enumerate() {
            edges.push(ConstraintEdge { from: n, to: j, weight: m.get(b, j) });
        }
        for (j, &b) in buyer_of.iter().enumerate() {
            let own = m.get(b, j);
            for k in (0..n).filter(|&k| k != j) {
                edges.push(ConstraintEdge { from: k, to: j, weight: own - m.get(b, k) });
            }
        }
        Ok(DifferenceConstraintGraph { node_count: n + 1, edges })
    }

    pub fn node_count(&self) -> usize {
        self.node_count
    }

    pub fn source(&self) -> usize {
        self.node_count - 1
    }

    pub fn edges(&self) -> &[ConstraintEdge] {
        &self.edges
    }
}

/// A cycle of negative total weight, listed in edge direction.
#[derive(Debug, Clone, PartialEq)]
pub struct NegativeCycle {
    pub nodes: Vec<usize>,
    pub weight: f64,
}

/// Bellman-Ford from `source`, stopping after the first pass with no
/// relaxation. Unreachable nodes get `f64::INFINITY`.
pub fn bellman_ford(
    graph: &DifferenceConstraintGraph,
    source: usize,
) -> core::result::Result<Vec<f64>, NegativeCycle> {
    let count = graph.node_count();
    let edges = graph.edges();
    let mut dist = alloc::vec![f64::INFINITY; count];
    let mut pred_edge: Vec<Option<usize>> = alloc::vec![None; count];
    dist[source] = 0.0;

    let mut last_relaxed = None;
    for _ in 0..count {
        last_relaxed = None;
        for (idx, e) in edges.iter().enumerate() {
            let candidate = dist[e.from] + e.weight;
            if candidate < dist[e.to] {
                dist[e.to] = candidate;
                pred_edge[e.to] = Some(idx);
                last_relaxed = Some(e.to);
            }
        }
        if last_relaxed.is_none() {
            return Ok(dist);
        }
    }

    // Still relaxing after `count` passes: walk predecessors until we are
    // certainly on the cycle, then read it off.
    let mut node = last_relaxed.expect("relaxation happened in the final pass");
    for _ in 0..count {
        node = edges[pred_edge[node].expect("relaxed node has a predecessor")].from;
    }
    let start = node;
    let mut nodes = Vec::new();
    let mut weight = 0.0;
    loop {
        let e = &edges[pred_edge[node].expect("cycle node has a predecessor")];
        nodes.push(node);
        weight += e.weight;
        node = e.from;
        if node == start {
            break;
        }
    }
    nodes.reverse();
    Err(NegativeCycle { nodes, weight })
}

/// Result of pricing a fixed allocation.
#[derive(Debug, Clone, PartialEq)]
pub enum PriceSolution {
    /// The coordinate-wise largest envy-free prices.
    Feasible(PriceVector),
    /// No envy-free prices exist; the witness cycle is over item nodes.
    Infeasible(NegativeCycle),
}

impl PriceSolution {
    pub fn feasible(self) -> Option<PriceVector> {
        match self {
            PriceSolution::Feasible(p) => Some(p),
            PriceSolution::Infeasible(_) => None,
        }
    }
}

/// Maximal envy-free prices for `assignment` by shortest paths, O(n^3).
pub fn price_by_difference_constraints(m: &Matrix, assignment: &Assignment) -> Result<PriceSolution> {
    let graph = DifferenceConstraintGraph::build(m, assignment)?;
    let n = graph.source();
    Ok(match bellman_ford(&graph, graph.source()) {
        Ok(mut dist) => {
            dist.truncate(n);
            PriceSolution::Feasible(PriceVector::new(dist))
        }
        Err(cycle) => PriceSolution::Infeasible(cycle),
    })
}

/// Hungarian allocation plus shortest-path prices on the sorted matrix,
/// reported in original indexing.
pub fn solve_cubic(inst: &Instance) -> Result<Outcome> {
    let view = sorted_view(inst);
    let m = materialize_matrix(inst, &view);
    let (sorted_assignment, _) = max_weight_perfect_matching(&m)?;
    let sorted_prices =
        price_by_difference_constraints(&m, &sorted_assignment)?.feasible().ok_or(Error::NoEnvyFreePrices)?;

    let n = inst.n();
    let mut item_of = alloc::vec![0; n];
    let mut prices = alloc::vec![0.0; n];
    for (rank, &col) in sorted_assignment.item_of().iter().enumerate() {
        item_of[view.buyer_order()[rank]] = view.item_order()[col];
    }
    for (rank, &item) in view.item_order().iter().enumerate() {
        prices[item] = sorted_prices[rank];
    }
    Outcome::evaluate(inst, Assignment::new(item_of)?, PriceVector::new(prices))
}

/// Rearranges `perm` into the next permutation in lexicographic order.
/// Returns false, leaving `perm` untouched, when it was the last one.
fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = (1..perm.len()).rev().find(|&i| perm[i - 1] < perm[i]) else {
        return false;
    };
    let j = (i..perm.len()).rev().find(|&j| perm[j] > perm[i - 1]).expect("pivot has a successor");
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// Exhaustive ground truth for `n <= 8`.
///
/// Prices every allocation with [`price_by_difference_constraints`] and
/// keeps the highest revenue; the lexicographically smallest allocation
/// wins ties.
pub fn brute_force_solve(inst: &Instance) -> Result<Outcome> {
    let n = inst.n();
    if n > MAX_BRUTE_FORCE_N {
        return Err(Error::InstanceTooLarge { n, max: MAX_BRUTE_FORCE_N });
    }
    let m = inst.valuation_matrix();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best: Option<(f64, Assignment, PriceVector)> = None;
    loop {
        let assignment = Assignment::from_raw(perm.clone());
        if let PriceSolution::Feasible(prices) = price_by_difference_constraints(&m, &assignment)? {
            let revenue = prices.total();
            if best.as_ref().is_none_or(|(r, _, _)| revenue > *r) {
                best = Some((revenue, assignment, prices));
            }
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    // the welfare-maximizing allocation is always feasible
    let (_, assignment, prices) = best.ok_or(Error::NoEnvyFreePrices)?;
    Outcome::evaluate(inst, assignment, prices)
}
