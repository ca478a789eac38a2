//! Market data model: instances, allocations, prices, outcomes, and the
//! checks that decide whether an outcome is envy-free.
//!
//! Buyer `b` values item `j` at `budgets[b] * qualities[j]`. Indices are
//! 0-based and prices are always reported in original item indexing.

use alloc::vec::Vec;

use crate::error::{Error, Result, Side};
use crate::matrix::Matrix;

/// Relative scale of the default comparison tolerance.
pub const RELATIVE_TOLERANCE: f64 = 1e-9;

/// A validated market: `n` buyers with budgets and `n` items with qualities.
#[derive(Debug, Clone, PartialEq)]
pub struct Instance {
    budgets: Vec<f64>,
    qualities: Vec<f64>,
}

/// Checks raw budgets and qualities and copies them into an [`Instance`].
pub fn validate_instance(budgets: &[f64], qualities: &[f64]) -> Result<Instance> {
    Instance::new(budgets.to_vec(), qualities.to_vec())
}

fn check_side(values: &[f64], side: Side) -> Result<()> {
    for (index, &value) in values.iter().enumerate() {
        if !value.is_finite() {
            return Err(Error::NonFiniteValue { side, index });
        }
        if value <= 0.0 {
            return Err(Error::NonPositiveValue { side, index, value });
        }
    }
    Ok(())
}

impl Instance {
    pub fn new(budgets: Vec<f64>, qualities: Vec<f64>) -> Result<Self> {
        if budgets.len() != qualities.len() {
            return Err(Error::LengthMismatch { expected: budgets.len(), found: qualities.len() });
        }
        if budgets.is_empty() {
            return Err(Error::EmptyInstance);
        }
        check_side(&budgets, Side::Budget)?;
        check_side(&qualities, Side::Quality)?;
        Ok(Instance { budgets, qualities })
    }

    /// Number of buyers, which is also the number of items.
    pub fn n(&self) -> usize {
        self.budgets.len()
    }

    pub fn budgets(&self) -> &[f64] {
        &self.budgets
    }

    pub fn qualities(&self) -> &[f64] {
        &self.qualities
    }

    /// Valuation of `buyer` for `item`, computed on the fly.
    pub fn valuation(&self, buyer: usize, item: usize) -> Result<f64> {
        let n = self.n();
        if buyer >= n {
            return Err(Error::IndexOutOfRange { index: buyer, len: n });
        }
        if item >= n {
            return Err(Error::IndexOutOfRange { index: item, len: n });
        }
        Ok(self.value(buyer, item))
    }

    #[inline]
    pub(crate) fn value(&self, buyer: usize, item: usize) -> f64 {
        self.budgets[buyer] * self.qualities[item]
    }

    /// Largest entry of the valuation matrix.
    pub fn max_valuation(&self) -> f64 {
        let max_budget = self.budgets.iter().copied().fold(0.0, f64::max);
        let max_quality = self.qualities.iter().copied().fold(0.0, f64::max);
        max_budget * max_quality
    }

    /// `1e-9 * (1 + max valuation)`.
    pub fn default_tolerance(&self) -> f64 {
        RELATIVE_TOLERANCE * (1.0 + self.max_valuation())
    }

    /// True when every budget and quality is a whole number.
    pub fn is_integral(&self) -> bool {
        self.budgets.iter().chain(&self.qualities).all(|&v| is_whole(v))
    }

    /// The full valuation matrix in original indexing.
    pub fn valuation_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n(), self.n(), |b, j| self.value(b, j))
    }
}

fn is_whole(v: f64) -> bool {
    // every finite f64 at or above 2^52 is a whole number
    v.abs() >= 4_503_599_627_370_496.0 || v == (v as i64) as f64
}

/// Allocation of items to buyers: `item_of[b]` is the item sold to buyer `b`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Assignment {
    item_of: Vec<usize>,
}

fn is_permutation(items: &[usize]) -> bool {
    let mut seen = alloc::vec![false; items.len()];
    for &j in items {
        if j >= items.len() || seen[j] {
            return false;
        }
        seen[j] = true;
    }
    true
}

impl Assignment {
    pub fn new(item_of: Vec<usize>) -> Result<Self> {
        if is_permutation(&item_of) {
            Ok(Assignment { item_of })
        } else {
            Err(Error::NotAPermutation)
        }
    }

    pub fn identity(n: usize) -> Self {
        Assignment { item_of: (0..n).collect() }
    }

    /// Wraps a buyer-to-item list without checking it.
    ///
    /// Only meant for outcomes read from outside, which [`audit_envy_free`]
    /// then reports as not perfect.
    pub fn from_raw(item_of: Vec<usize>) -> Self {
        Assignment { item_of }
    }

    pub fn item_of(&self) -> &[usize] {
        &self.item_of
    }

    pub fn len(&self) -> usize {
        self.item_of.len()
    }

    pub fn is_empty(&self) -> bool {
        self.item_of.is_empty()
    }

    pub fn is_permutation(&self) -> bool {
        is_permutation(&self.item_of)
    }

    /// Inverse map: `buyer_of[j]` is the buyer holding item `j`.
    pub fn buyer_of(&self) -> Result<Vec<usize>> {
        if !self.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        let mut inverse = alloc::vec![0; self.len()];
        for (b, &j) in self.item_of.iter().enumerate() {
            inverse[j] = b;
        }
        Ok(inverse)
    }
}

/// One price per item, in original item indexing.
#[derive(Debug, Clone, PartialEq)]
pub struct PriceVector(Vec<f64>);

impl PriceVector {
    pub fn new(prices: Vec<f64>) -> Self {
        PriceVector(prices)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn total(&self) -> f64 {
        self.0.iter().sum()
    }
}

impl core::ops::Index<usize> for PriceVector {
    type Output = f64;

    fn index(&self, item: usize) -> &f64 {
        &self.0[item]
    }
}

/// A solved market: allocation, prices, revenue and buyer surpluses.
#[derive(Debug, Clone, PartialEq)]
pub struct Outcome {
    pub assignment: Assignment,
    pub prices: PriceVector,
    pub revenue: f64,
    pub surpluses: Vec<f64>,
}

impl Outcome {
    /// Fills in revenue and surpluses for a perfect allocation.
    pub fn evaluate(inst: &Instance, assignment: Assignment, prices: PriceVector) -> Result<Self> {
        let n = inst.n();
        if assignment.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: assignment.len() });
        }
        if prices.len() != n {
            return Err(Error::LengthMismatch { expected: n, found: prices.len() });
        }
        if !assignment.is_permutation() {
            return Err(Error::NotAPermutation);
        }
        let surpluses =
            assignment.item_of().iter().enumerate().map(|(b, &j)| inst.value(b, j) - prices[j]).collect();
        let revenue = prices.total();
        Ok(Outcome { assignment, prices, revenue, surpluses })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ViolationKind {
    /// The buyer strictly prefers another item at current prices.
    Envy,
    /// The buyer pays more than their valuation.
    Irrational,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub buyer: usize,
    /// The envied item, or the buyer's own item for `Irrational`.
    pub item: usize,
    pub kind: ViolationKind,
    pub slack: f64,
}

/// Verdicts produced by [`audit_envy_free`].
#[derive(Debug, Clone, PartialEq)]
pub struct AuditReport {
    pub envy_free: bool,
    pub individually_rational: bool,
    pub perfect: bool,
    pub revenue_consistent: bool,
    /// Most negative slack over all checks, 0 when nothing is negative.
    pub worst_violation: f64,
    pub violating_pairs: Vec<Violation>,
}

impl AuditReport {
    pub fn all_passed(&self) -> bool {
        self.envy_free && self.individually_rational && self.perfect && self.revenue_consistent
    }
}

/// Checks every buyer against every item under `out`'s prices.
///
/// A buyer `b` holding item `j` is envy-free when
/// `v(b,j) - p_j >= v(b,k) - p_k - tol` for all `k`, and individually
/// rational when `v(b,j) >= p_j - tol`. Revenue must match the price sum
/// within `tol * n`.
pub fn audit_envy_free(inst: &Instance, out: &Outcome, tol: f64) -> Result<AuditReport> {
    let n = inst.n();
    let item_of = out.assignment.item_of();
    if item_of.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: item_of.len() });
    }
    if out.prices.len() != n {
        return Err(Error::LengthMismatch { expected: n, found: out.prices.len() });
    }
    let prices = out.prices.as_slice();

    let mut worst = 0.0f64;
    let mut violations = Vec::new();
    for (b, &j) in item_of.iter().enumerate() {
        if j >= n {
            continue;
        }
        let own = inst.value(b, j) - prices[j];
        // `!(x >= y)` so that NaN prices count as violations.
        if own.is_nan() || own < -tol {
            violations.push(Violation { buyer: b, item: j, kind: ViolationKind::Irrational, slack: own });
        }
        worst = worst.min(own);
        for (k, &p_k) in prices.iter().enumerate() {
            if k == j {
                continue;
            }
            let slack = own - (inst.value(b, k) - p_k);
            if slack.is_nan() || slack < -tol {
                violations.push(Violation { buyer: b, item: k, kind: ViolationKind::Envy, slack });
            }
            worst = worst.min(slack);
        }
    }

    let price_sum: f64 = prices.iter().sum();
    Ok(AuditReport {
        envy_free: !violations.iter().any(|v| v.kind == ViolationKind::Envy),
        individually_rational: !violations.iter().any(|v| v.kind == ViolationKind::Irrational),
        perfect: out.assignment.is_permutation(),
        revenue_consistent: (out.revenue - price_sum).abs() <= tol * n as f64,
        worst_violation: worst,
        violating_pairs: violations,
    })
}

/// Buyers by descending budget and items by descending quality.
///
/// Equal keys keep ascending original index.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SortedView {
    buyer_order: Vec<usize>,
    item_order: Vec<usize>,
}

fn descending_order(keys: &[f64]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..keys.len()).collect();
    // stable: ties stay in ascending index order
    order.sort_by(|&a, &b| keys[b].total_cmp(&keys[a]));
    order
}

impl SortedView {
    /// `buyer_order[a]` is the buyer of budget rank `a` (0 = richest).
    pub fn buyer_order(&self) -> &[usize] {
        &self.buyer_order
    }

    /// `item_order[a]` is the item of quality rank `a` (0 = best).
    pub fn item_order(&self) -> &[usize] {
        &self.item_order
    }

    pub fn len(&self) -> usize {
        self.buyer_order.len()
    }

    pub fn is_empty(&self) -> bool {
        self.buyer_order.is_empty()
    }
}

pub fn sorted_view(inst: &Instance) -> SortedView {
    SortedView {
        buyer_order: descending_order(inst.budgets()),
        item_order: descending_order(inst.qualities()),
    }
}

/// Valuation matrix in sorted coordinates: row `a` is the rank-`a` buyer,
/// column `c` the rank-`c` item.
pub fn materialize_matrix(inst: &Instance, view: &SortedView) -> Matrix {
    let n = view.len();
    Matrix::from_fn(n, n, |a, c| inst.value(view.buyer_order[a], view.item_order[c]))
}

/// Tests `M[i][k] + M[j][l] >= M[i][l] + M[j][k] - tol` for all `i < j`, `k < l`.
///
/// Checking adjacent rows and columns is enough: any 2x2 condition is a sum
/// of adjacent ones.
pub fn is_inverse_monge(m: &Matrix, tol: f64) -> Result<bool> {
    let n = m.square_dim()?;
    for i in 0..n.saturating_sub(1) {
        for k in 0..n - 1 {
            let diagonal = m.get(i, k) + m.get(i + 1, k + 1);
            let anti = m.get(i, k + 1) + m.get(i + 1, k);
            if diagonal < anti - tol {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Total valuation realized by a perfect allocation.
pub fn social_welfare(inst: &Instance, assignment: &Assignment) -> f64 {
    assignment.item_of().iter().enumerate().map(|(b, &j)| inst.value(b, j)).sum()
}
