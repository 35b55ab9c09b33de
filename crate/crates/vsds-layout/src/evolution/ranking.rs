//! Constraint handling: constraint dominance, stochastic ranking and
//! tournament selection.

use std::cmp::Ordering;

use rand::seq::index;
use rand::Rng;

use crate::problem::Evaluation;
use crate::Scalar;

/// How constraint violations interact with objective comparisons.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ConstraintStrategy<F> {
    /// Feasibility rules (Deb, 2000): feasible beats infeasible, feasible
    /// individuals compare by objective, infeasible by total violation.
    ConstraintDominance,
    /// Stochastic ranking (Runarsson & Yao, 2000) with objective-comparison
    /// probability `pf` for pairs that are not both feasible.
    StochasticRanking { pf: F },
}

fn cmp_f<F: Scalar>(a: F, b: F) -> Ordering {
    a.partial_cmp(&b).unwrap_or(Ordering::Equal)
}

/// Constraint-dominance comparison; `Less` means `a` is better.
pub fn constraint_dominance_cmp<F: Scalar>(a: &Evaluation<F>, b: &Evaluation<F>) -> Ordering {
    match (a.is_feasible(), b.is_feasible()) {
        (true, false) => Ordering::Less,
        (false, true) => Ordering::Greater,
        (true, true) => cmp_f(a.objective, b.objective),
        (false, false) => cmp_f(a.violations.total, b.violations.total),
    }
}

/// Indices of `evals` ordered best first under constraint dominance.
/// The sort is stable: ties keep their input order.
pub fn rank_constraint_dominance<F: Scalar>(evals: &[Evaluation<F>]) -> Vec<usize> {
    let mut order: Vec<usize> = (0..evals.len()).collect();
    order.sort_by(|&i, &j| constraint_dominance_cmp(&evals[i], &evals[j]));
    order
}

/// Indices of `evals` ordered best first by stochastic ranking.
///
/// Runs at most `n` bubble-sort sweeps over adjacent pairs; a pair compares
/// by objective when both members are feasible, otherwise by objective with
/// probability `pf` and by total violation with probability `1 - pf` (the
/// uniform draw happens only in that branch). Sorting stops early after a
/// sweep with no swaps. Ties never swap, so equal individuals keep their
/// input order.
pub fn stochastic_rank<F: Scalar, R: Rng>(
    evals: &[Evaluation<F>],
    pf: F,
    rng: &mut R,
) -> Vec<usize> {
    let n = evals.len();
    let mut order: Vec<usize> = (0..n).collect();
    for _sweep in 0..n {
        let mut swapped = false;
        for j in 0..n.saturating_sub(1) {
            let (x, y) = (order[j], order[j + 1]);
            let by_objective = (evals[x].is_feasible() && evals[y].is_feasible())
                || F::of(rng.gen::<f64>()) < pf;
            let out_of_order = if by_objective {
                cmp_f(evals[x].objective, evals[y].objective) == Ordering::Greater
            } else {
                cmp_f(evals[x].violations.total, evals[y].violations.total) == Ordering::Greater
            };
            if out_of_order {
                order.swap(j, j + 1);
                swapped = true;
            }
        }
        if !swapped {
            break;
        }
    }
    order
}

/// Orders a population best first under the chosen strategy.
pub fn rank_population<F: Scalar, R: Rng>(
    evals: &[Evaluation<F>],
    strategy: ConstraintStrategy<F>,
    rng: &mut R,
) -> Vec<usize> {
    match strategy {
        ConstraintStrategy::ConstraintDominance => rank_constraint_dominance(evals),
        ConstraintStrategy::StochasticRanking { pf } => stochastic_rank(evals, pf, rng),
    }
}

/// Tournament selection without replacement: draws `k` distinct individuals
/// and returns the index of the one with the best (lowest) rank.
///
/// `rank_of[i]` is the rank position of individual `i` (0 = best). With
/// `k` equal to the population size the winner is always the rank-0
/// individual; the probability that the best of the sampled `k` is the
/// population's rank-0 individual is exactly `k / n`.
pub fn tournament_select<R: Rng>(rank_of: &[usize], k: usize, rng: &mut R) -> usize {
    debug_assert!(k >= 1 && k <= rank_of.len());
    index::sample(rng, rank_of.len(), k)
        .into_iter()
        .min_by_key(|&i| rank_of[i])
        .expect("tournament requires k >= 1")
}
