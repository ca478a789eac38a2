//! Quadratic-time solver for budget x quality markets.
//!
//! After sorting buyers by budget and items by quality (both descending),
//! the valuation matrix is inverse Monge, so the diagonal allocation
//! maximizes welfare. Prices are then filled in from the cheapest item
//! upward: the last item sells at its buyer's full valuation, and each
//! earlier item is priced so its buyer is exactly indifferent to the best
//! of the items below it.

use alloc::vec::Vec;

use crate::market::{sorted_view, Assignment, Instance, Outcome, PriceVector, SortedView};

/// Prices indexed by quality rank. `as_slice()[n - 1]` is the worst item.
#[derive(Debug, Clone, PartialEq)]
pub struct SortedPrices(Vec<f64>);

impl SortedPrices {
    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<f64> {
        self.0
    }

    /// Maps rank-indexed prices back to original item indices.
    pub fn to_original(&self, view: &SortedView) -> PriceVector {
        let mut prices = alloc::vec![0.0; self.0.len()];
        for (rank, &item) in view.item_order().iter().enumerate() {
            prices[item] = self.0[rank];
        }
        PriceVector::new(prices)
    }

    pub fn is_nonincreasing(&self) -> bool {
        self.0.windows(2).all(|w| w[0] >= w[1])
    }
}

/// Which recurrence fills in the prices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum PricingRule {
    /// Scan every cheaper item for the best alternative (O(n^2)).
    #[default]
    Scan,
    /// Look only at the next cheaper item (O(n)).
    Adjacent,
}

/// Valuation accessor in sorted coordinates, without building the matrix.
struct SortedValuations {
    budgets: Vec<f64>,
    qualities: Vec<f64>,
}

impl SortedValuations {
    fn new(inst: &Instance, view: &SortedView) -> Self {
        SortedValuations {
            budgets: view.buyer_order().iter().map(|&b| inst.budgets()[b]).collect(),
            qualities: view.item_order().iter().map(|&j| inst.qualities()[j]).collect(),
        }
    }

    #[inline]
    fn get(&self, row: usize, col: usize) -> f64 {
        self.budgets[row] * self.qualities[col]
    }
}

/// Gives the rank-`a` buyer the rank-`a` item.
pub fn assortative_allocate(view: &SortedView) -> Assignment {
    let mut item_of = alloc::vec![0; view.len()];
    for (&buyer, &item) in view.buyer_order().iter().zip(view.item_order()) {
        item_of[buyer] = item;
    }
    Assignment::from_raw(item_of)
}

/// One step of the backward price scan, kept for diagnostics.
#[derive(Debug, Clone, PartialEq)]
pub struct ScanStep {
    /// Sorted position being priced.
    pub position: usize,
    /// Best surplus the buyer at `position` could get from a cheaper item.
    pub best_surplus: f64,
    /// Smallest sorted index attaining `best_surplus`.
    pub argmax: usize,
    /// Surplus offered by the item at `position + 1`.
    pub adjacent_surplus: f64,
}

/// Scan pricing that also records, for every priced position, where the
/// maximum surplus was found.
pub fn compute_prices_traced(inst: &Instance, view: &SortedView) -> (SortedPrices, Vec<ScanStep>) {
    let n = view.len();
    let v = SortedValuations::new(inst, view);
    let mut prices = alloc::vec![0.0; n];
    let mut steps = Vec::with_capacity(n.saturating_sub(1));
    prices[n - 1] = v.get(n - 1, n - 1);
    for a in (0..n - 1).rev() {
        let mut best = f64::NEG_INFINITY;
        let mut argmax = a + 1;
        for (i, &p) in prices.iter().enumerate().skip(a + 1) {
            let surplus = v.get(a, i) - p;
            if surplus > best {
                best = surplus;
                argmax = i;
            }
        }
        prices[a] = v.get(a, a) - best;
        steps.push(ScanStep {
            position: a,
            best_surplus: best,
            argmax,
            adjacent_surplus: v.get(a, a + 1) - prices[a + 1],
        });
    }
    (SortedPrices(prices), steps)
}

/// Optimal envy-free prices by the full backward scan.
///
/// `p[n-1] = V[n-1][n-1]` and, for `a = n-2` down to `0`,
/// `p[a] = V[a][a] - max_{i > a} (V[a][i] - p[i])`.
pub fn compute_prices_paper(inst: &Instance, view: &SortedView) -> SortedPrices {
    let n = view.len();
    let v = SortedValuations::new(inst, view);
    let mut prices = alloc::vec![0.0; n];
    prices[n - 1] = v.get(n - 1, n - 1);
    for a in (0..n - 1).rev() {
        let best = (a + 1..n).map(|i| v.get(a, i) - prices[i]).fold(f64::NEG_INFINITY, f64::max);
        prices[a] = v.get(a, a) - best;
    }
    SortedPrices(prices)
}

/// Same prices as [`compute_prices_paper`], using only the next cheaper item.
pub fn compute_prices_adjacent(inst: &Instance, view: &SortedView) -> SortedPrices {
    let n = view.len();
    let v = SortedValuations::new(inst, view);
    let mut prices = alloc::vec![0.0; n];
    prices[n - 1] = v.get(n - 1, n - 1);
    for a in (0..n - 1).rev() {
        prices[a] = v.get(a, a) - (v.get(a, a + 1) - prices[a + 1]);
    }
    SortedPrices(prices)
}

pub fn solve_monge_with(inst: &Instance, rule: PricingRule) -> Outcome {
    let view = sorted_view(inst);
    let assignment = assortative_allocate(&view);
    let sorted = match rule {
        PricingRule::Scan => compute_prices_paper(inst, &view),
        PricingRule::Adjacent => compute_prices_adjacent(inst, &view),
    };
    let prices = sorted.to_original(&view);
    Outcome::evaluate(inst, assignment, prices).expect("assortative allocation is a permutation")
}

/// Sort, allocate assortatively, and price with the full scan.
pub fn solve_monge(inst: &Instance) -> Outcome {
    solve_monge_with(inst, PricingRule::Scan)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::market::{audit_envy_free, validate_instance};
    use alloc::vec;

    fn inst(b: &[f64], q: &[f64]) -> Instance {
        validate_instance(b, q).unwrap()
    }

    #[test]
    fn allocation_matches_ranks() {
        let a = inst(&[4.0, 2.0, 1.0], &[3.0, 2.0, 1.0]);
        assert_eq!(assortative_allocate(&sorted_view(&a)).item_of(), &[0, 1, 2]);
        let b = inst(&[1.0, 3.0], &[1.0, 2.0]);
        assert_eq!(assortative_allocate(&sorted_view(&b)).item_of(), &[0, 1]);
        let c = inst(&[2.0, 2.0], &[7.0, 5.0]);
        assert_eq!(assortative_allocate(&sorted_view(&c)).item_of(), &[0, 1]);
        let d = inst(&[1.0, 3.0, 2.0], &[5.0, 9.0, 1.0]);
        assert_eq!(assortative_allocate(&sorted_view(&d)).item_of(), &[2, 1, 0]);
    }

    #[test]
    fn worked_prices() {
        for (b, q, expected) in [
            (&[4.0, 2.0, 1.0][..], &[3.0, 2.0, 1.0][..], &[7.0, 3.0, 1.0][..]),
            (&[3.0, 1.0], &[2.0, 1.0], &[4.0, 1.0]),
            (&[5.0], &[2.0], &[10.0]),
        ] {
            let i = inst(b, q);
            let view = sorted_view(&i);
            assert_eq!(compute_prices_paper(&i, &view).as_slice(), expected);
            assert_eq!(compute_prices_adjacent(&i, &view).as_slice(), expected);
        }
        let flat = inst(&[2.0, 2.0], &[1.0, 1.0]);
        assert_eq!(compute_prices_adjacent(&flat, &sorted_view(&flat)).as_slice(), &[2.0, 2.0]);
    }

    #[test]
    fn solve_translates_to_original_indexing() {
        let out = solve_monge(&inst(&[3.0, 1.0], &[2.0, 1.0]));
        assert_eq!(out.assignment.item_of(), &[0, 1]);
        assert_eq!(out.prices.as_slice(), &[4.0, 1.0]);
        assert_eq!(out.revenue, 5.0);
        assert_eq!(out.surpluses, vec![2.0, 0.0]);

        let out = solve_monge(&inst(&[1.0, 3.0], &[1.0, 2.0]));
        assert_eq!(out.assignment.item_of(), &[0, 1]);
        assert_eq!(out.prices.as_slice(), &[1.0, 4.0]);
        assert_eq!(out.revenue, 5.0);
        assert_eq!(out.surpluses, vec![0.0, 2.0]);

        let b = inst(&[4.0, 2.0, 1.0], &[3.0, 2.0, 1.0]);
        let out = solve_monge(&b);
        assert_eq!(out.prices.as_slice(), &[7.0, 3.0, 1.0]);
        assert_eq!(out.revenue, 11.0);
        assert!(audit_envy_free(&b, &out, 0.0).unwrap().all_passed());
    }

    #[test]
    fn single_buyer_pays_full_valuation() {
        let out = solve_monge(&inst(&[5.0], &[2.0]));
        assert_eq!(out.prices.as_slice(), &[10.0]);
        assert_eq!(out.surpluses, vec![0.0]);
    }

    #[test]
    fn trace_records_adjacent_maximizer() {
        let i = inst(&[4.0, 2.0, 1.0], &[3.0, 2.0, 1.0]);
        let (prices, steps) = compute_prices_traced(&i, &sorted_view(&i));
        assert_eq!(prices.as_slice(), &[7.0, 3.0, 1.0]);
        assert_eq!(steps.len(), 2);
        // position 1: only item 2 is cheaper, 2 - 1 = 1
        assert_eq!(steps[0], ScanStep { position: 1, best_surplus: 1.0, argmax: 2, adjacent_surplus: 1.0 });
        // position 0: 8 - 3 = 5 vs 4 - 1 = 3
        assert_eq!(steps[1], ScanStep { position: 0, best_surplus: 5.0, argmax: 1, adjacent_surplus: 5.0 });
        assert!(prices.is_nonincreasing());
    }
}
