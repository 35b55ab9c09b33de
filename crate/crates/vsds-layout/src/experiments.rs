//! Ready-made problem instances, hyperparameter presets and multi-run
//! batches.
//!
//! Two instances are built in: a two-cylinder toy problem small enough to
//! verify against an exhaustive oracle, and a twelve-component equipment
//! layout in a circular bay with an exclusion zone, a centering requirement
//! and a fuel/energy separation rule.

use rayon::prelude::*;

use crate::catalog::{Catalog, Parameterization};
use crate::constraints::ConstraintConfig;
use crate::error::Error;
use crate::evolution::{evolve, ConstraintStrategy, EncodingMethod, GaConfig, RunResult};
use crate::geometry::{ContainerDisk, PlacedShape, Vec2};
use crate::problem::ProblemInstance;
use crate::Scalar;

/// Container radius of the built-in satellite-style instance (mm).
pub const SATELLITE_CONTAINER_RADIUS: f64 = 500.0;
/// Exclusion-zone area as a fraction of the container area.
pub const SATELLITE_EXCLUSION_FRACTION: f64 = 0.05;
/// Fuel/energy minimum separation of the satellite instance (mm).
pub const SATELLITE_D_MIN: f64 = 300.0;
/// Container radius of the toy instance (mm).
pub const TOY_CONTAINER_RADIUS: f64 = 130.0;

const TOY_CATALOG_JSON: &str = include_str!("../fixtures/toy.json");
const SATELLITE_CATALOG_JSON: &str = include_str!("../fixtures/satellite.json");

/// The built-in toy catalog: two subdividable cylinders.
pub fn toy_catalog<F: Scalar>() -> Catalog<F> {
    Catalog::from_json_str(TOY_CATALOG_JSON).expect("embedded toy catalog is valid")
}

/// The built-in twelve-component catalog.
pub fn satellite_catalog<F: Scalar>() -> Catalog<F> {
    Catalog::from_json_str(SATELLITE_CATALOG_JSON).expect("embedded satellite catalog is valid")
}

/// Toy instance: two cylinders, four configurations, twelve genes, polar
/// placement genes, centroid tolerance of 1% of the container radius, no
/// exclusion zones and no separation rule.
pub fn toy_case<F: Scalar>() -> Result<ProblemInstance<F>, Error> {
    let container = ContainerDisk::centered(F::of(TOY_CONTAINER_RADIUS));
    let constraints = ConstraintConfig::for_container(&container).with_d_min(F::zero());
    ProblemInstance::new(
        "toy",
        toy_catalog(),
        container,
        constraints,
        Parameterization::Polar,
    )
}

/// Satellite-style instance at a target occupation rate, using the built-in
/// catalog and container radius.
pub fn satellite_case<F: Scalar>(target_or: F) -> Result<ProblemInstance<F>, Error> {
    satellite_case_with(
        satellite_catalog(),
        target_or,
        F::of(SATELLITE_CONTAINER_RADIUS),
    )
}

/// Satellite-style instance from a custom catalog and container radius.
///
/// The catalog is rescaled so its footprint occupies `target_or` of the
/// container. A square exclusion zone covering
/// [`SATELLITE_EXCLUSION_FRACTION`] of the container area sits centered at
/// (R/2, 0); the system centroid must stay within 1% of R of the container
/// center; every fuel part must keep [`SATELLITE_D_MIN`] millimetres from
/// every energy part.
pub fn satellite_case_with<F: Scalar>(
    catalog: Catalog<F>,
    target_or: F,
    container_radius: F,
) -> Result<ProblemInstance<F>, Error> {
    let container = ContainerDisk::centered(container_radius);
    let scaled = catalog.scale_for_occupation_rate(target_or, &container)?;
    let zone_side = (F::of(SATELLITE_EXCLUSION_FRACTION) * container.area()).sqrt();
    let zone = PlacedShape::rect(
        Vec2::new(container_radius * F::of(0.5), F::zero()),
        Vec2::new(zone_side * F::of(0.5), zone_side * F::of(0.5)),
        F::zero(),
    );
    let constraints = ConstraintConfig::for_container(&container)
        .with_d_min(F::of(SATELLITE_D_MIN))
        .with_exclusion_zones(vec![zone]);
    ProblemInstance::new(
        "satellite",
        scaled,
        container,
        constraints,
        Parameterization::Cartesian,
    )
}

/// Population/generation presets.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BudgetPreset {
    /// 50 individuals for 60 generations: the toy study budget.
    Toy,
    /// 200 individuals for 1000 generations: desk-scale satellite runs.
    Desk,
    /// 500 individuals for 700 generations: a 3.5e5-evaluation budget.
    Large350kEvals,
    /// 500 individuals for 7000 generations: the full long schedule.
    Large7kGens,
}

impl BudgetPreset {
    pub fn population_and_generations(self) -> (usize, usize) {
        match self {
            BudgetPreset::Toy => (50, 60),
            BudgetPreset::Desk => (200, 1000),
            BudgetPreset::Large350kEvals => (500, 700),
            BudgetPreset::Large7kGens => (500, 7000),
        }
    }
}

/// Toy-study GA settings for one encoding method: constraint dominance,
/// binary tournaments and method-specific crossover/mutation rates.
pub fn toy_ga_config<F: Scalar>(method: EncodingMethod, seed: u64) -> GaConfig<F> {
    let (pc, pm_genes, pm_act) = match method {
        EncodingMethod::Tags => (0.85, 0.25, 0.4),
        EncodingMethod::IntegerDv => (0.85, 0.35, 0.35),
        EncodingMethod::NumericIndexDv => (0.85, 0.35, 0.35),
        EncodingMethod::BinaryDv => (0.9, 0.4, 0.4),
    };
    let (population_size, generations) = BudgetPreset::Toy.population_and_generations();
    GaConfig {
        population_size,
        generations,
        tournament_size: 2,
        crossover_prob_genes: F::of(pc),
        crossover_prob_activation: F::of(pc),
        mutation_prob_genes: F::of(pm_genes),
        mutation_prob_activation: F::of(pm_act),
        eta_crossover: F::of(2.0),
        eta_mutation: F::of(5.0),
        tag_crossover_points: 1,
        strategy: ConstraintStrategy::ConstraintDominance,
        seed,
    }
}

/// Satellite-study GA settings: stochastic ranking with pf = 0.45,
/// tournaments of 15, crossover 0.9 and mutation 0.2 for genes and
/// activations alike.
pub fn satellite_ga_config<F: Scalar>(budget: BudgetPreset, seed: u64) -> GaConfig<F> {
    let (population_size, generations) = budget.population_and_generations();
    GaConfig {
        population_size,
        generations,
        tournament_size: 15,
        crossover_prob_genes: F::of(0.9),
        crossover_prob_activation: F::of(0.9),
        mutation_prob_genes: F::of(0.2),
        mutation_prob_activation: F::of(0.2),
        eta_crossover: F::of(15.0),
        eta_mutation: F::of(20.0),
        tag_crossover_points: 1,
        strategy: ConstraintStrategy::StochasticRanking { pf: F::of(0.45) },
        seed,
    }
}

/// Aggregate statistics over a batch of runs.
#[derive(Clone, Debug)]
pub struct RunStats<F> {
    pub run_count: usize,
    /// Pointwise median of the best-objective curve.
    pub median_best_curve: Vec<F>,
    /// Pointwise interquartile range of the best-objective curve.
    pub iqr_best_curve: Vec<F>,
    /// First feasible generation per run (`None`: never feasible).
    pub first_feasible: Vec<Option<usize>>,
    /// Mean of the observed first-feasible generations.
    pub mean_first_feasible: Option<F>,
    /// Runs whose final best individual is feasible.
    pub success_count: usize,
    /// Distinct configurations evaluated, per run.
    pub explored_configurations: Vec<usize>,
    /// Distinct configurations with at least one feasible evaluation, per run.
    pub explored_feasible_configurations: Vec<usize>,
    /// Final best objective (constraint-dominance best), per run.
    pub final_best_objectives: Vec<F>,
    /// Final best feasible objective, per run.
    pub final_best_feasible_objectives: Vec<Option<F>>,
    /// Best feasible objective over all runs.
    pub best_final_objective: Option<F>,
    /// Median over runs of the final best objective.
    pub median_final_objective: F,
}

impl<F: Scalar> RunStats<F> {
    /// Median first-feasible generation with unsuccessful runs censored at
    /// `censor` (conventionally one past the final generation).
    pub fn median_first_feasible_censored(&self, censor: usize) -> F {
        let mut values: Vec<F> = self
            .first_feasible
            .iter()
            .map(|ff| F::of(ff.unwrap_or(censor) as f64))
            .collect();
        values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        quantile_sorted(&values, F::of(0.5))
    }
}

/// Linear-interpolation quantile of pre-sorted values.
fn quantile_sorted<F: Scalar>(sorted: &[F], p: F) -> F {
    debug_assert!(!sorted.is_empty());
    let n = sorted.len();
    if n == 1 {
        return sorted[0];
    }
    let h = p * F::of((n - 1) as f64);
    let lo = h.floor();
    let idx = lo.as_f64() as usize;
    if idx + 1 >= n {
        return sorted[n - 1];
    }
    sorted[idx] + (h - lo) * (sorted[idx + 1] - sorted[idx])
}

/// Aggregates per-run histories into batch statistics. Panics on an empty
/// batch or on runs with mismatched generation counts.
pub fn compute_stats<F: Scalar>(runs: &[RunResult<F>]) -> RunStats<F> {
    assert!(!runs.is_empty(), "compute_stats needs at least one run");
    let gens = runs[0].history.len();
    assert!(
        runs.iter().all(|r| r.history.len() == gens),
        "all runs must share the same generation count"
    );
    let mut median_best_curve = Vec::with_capacity(gens);
    let mut iqr_best_curve = Vec::with_capacity(gens);
    for g in 0..gens {
        let mut best: Vec<F> = runs.iter().map(|r| r.history[g].best_objective).collect();
        best.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
        median_best_curve.push(quantile_sorted(&best, F::of(0.5)));
        iqr_best_curve.push(quantile_sorted(&best, F::of(0.75)) - quantile_sorted(&best, F::of(0.25)));
    }
    let first_feasible: Vec<Option<usize>> =
        runs.iter().map(|r| r.first_feasible_generation).collect();
    let observed: Vec<F> = first_feasible
        .iter()
        .flatten()
        .map(|&g| F::of(g as f64))
        .collect();
    let mean_first_feasible = if observed.is_empty() {
        None
    } else {
        Some(observed.iter().copied().sum::<F>() / F::of(observed.len() as f64))
    };
    let success_count = runs
        .iter()
        .filter(|r| r.best.evaluation.is_feasible())
        .count();
    let final_best_objectives: Vec<F> =
        runs.iter().map(|r| r.best.evaluation.objective).collect();
    let final_best_feasible_objectives: Vec<Option<F>> = runs
        .iter()
        .map(|r| r.history.last().and_then(|rec| rec.best_feasible_objective))
        .collect();
    let best_final_objective = final_best_feasible_objectives
        .iter()
        .flatten()
        .copied()
        .fold(None, |acc: Option<F>, v| {
            Some(match acc {
                Some(a) => a.min(v),
                None => v,
            })
        });
    let mut finals_sorted = final_best_objectives.clone();
    finals_sorted.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let median_final_objective = quantile_sorted(&finals_sorted, F::of(0.5));
    RunStats {
        run_count: runs.len(),
        median_best_curve,
        iqr_best_curve,
        first_feasible,
        mean_first_feasible,
        success_count,
        explored_configurations: runs.iter().map(|r| r.explored_configurations).collect(),
        explored_feasible_configurations: runs
            .iter()
            .map(|r| r.explored_feasible_configurations)
            .collect(),
        final_best_objectives,
        final_best_feasible_objectives,
        best_final_objective,
        median_final_objective,
    }
}

/// Runs and aggregated statistics for one (problem, method) pair.
#[derive(Clone, Debug)]
pub struct BatchResult<F> {
    pub runs: Vec<RunResult<F>>,
    pub stats: RunStats<F>,
}

/// Runs the GA once per seed (in parallel when a thread pool is available)
/// and aggregates the results. Each run derives all of its randomness from
/// its own seed, so results do not depend on scheduling.
pub fn run_batch<F: Scalar>(
    problem: &ProblemInstance<F>,
    method: EncodingMethod,
    base: &GaConfig<F>,
    seeds: &[u64],
) -> Result<BatchResult<F>, Error> {
    let runs: Vec<RunResult<F>> = seeds
        .par_iter()
        .map(|&seed| {
            let cfg = GaConfig {
                seed,
                ..base.clone()
            };
            evolve(problem, method, &cfg)
        })
        .collect::<Result<_, _>>()?;
    let stats = compute_stats(&runs);
    Ok(BatchResult { runs, stats })
}

/// Consecutive seeds starting at `base`: base, base+1, ...
pub fn seed_range(base: u64, count: usize) -> Vec<u64> {
    (0..count as u64).map(|i| base + i).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn toy_instance_has_four_configurations_and_twelve_genes() {
        let p = toy_case::<f64>().unwrap();
        assert_eq!(p.space.cardinality(), 4);
        assert_eq!(p.gene_count(), 12);
        assert_eq!(p.layout.parameterization(), Parameterization::Polar);
        assert_eq!(p.constraints.exclusion_zones.len(), 0);
        assert_relative_eq!(p.constraints.delta, 1.3, max_relative = 1e-12);
    }

    #[test]
    fn satellite_instance_matches_the_published_dimensions() {
        let p = satellite_case::<f64>(0.3).unwrap();
        assert_eq!(p.catalog.len(), 12);
        assert_eq!(p.space.cardinality(), 3888);
        assert_eq!(p.gene_count(), 129);
        assert_relative_eq!(
            p.catalog.occupation_rate(&p.container),
            0.3,
            max_relative = 1e-9
        );
        assert_relative_eq!(p.constraints.delta, 5.0, max_relative = 1e-12);
        assert_relative_eq!(p.constraints.d_min, 300.0, max_relative = 1e-12);
        assert_eq!(p.constraints.exclusion_zones.len(), 1);
        let zone = &p.constraints.exclusion_zones[0];
        assert_relative_eq!(
            zone.area(),
            0.05 * p.container.area(),
            max_relative = 1e-9
        );
        assert_relative_eq!(zone.center().x, 250.0, max_relative = 1e-12);
        assert_eq!(zone.center().y, 0.0);
    }

    #[test]
    fn budget_presets_expose_population_and_generations() {
        assert_eq!(BudgetPreset::Toy.population_and_generations(), (50, 60));
        assert_eq!(BudgetPreset::Desk.population_and_generations(), (200, 1000));
        assert_eq!(
            BudgetPreset::Large350kEvals.population_and_generations(),
            (500, 700)
        );
        assert_eq!(
            BudgetPreset::Large7kGens.population_and_generations(),
            (500, 7000)
        );
    }

    #[test]
    fn quantiles_interpolate_linearly() {
        let xs = vec![1.0, 2.0, 3.0, 4.0];
        assert_relative_eq!(quantile_sorted(&xs, 0.5), 2.5, max_relative = 1e-12);
        assert_relative_eq!(quantile_sorted(&xs, 0.25), 1.75, max_relative = 1e-12);
        assert_relative_eq!(quantile_sorted(&xs, 1.0), 4.0, max_relative = 1e-12);
        assert_relative_eq!(quantile_sorted(&[7.0], 0.3), 7.0, max_relative = 1e-12);
    }

    #[test]
    fn seed_ranges_are_consecutive() {
        assert_eq!(seed_range(7, 3), vec![7, 8, 9]);
    }
}
