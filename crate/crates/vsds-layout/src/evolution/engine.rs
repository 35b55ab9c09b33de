//! The generational GA loop.
//!
//! Determinism contract: all stochastic decisions draw from three
//! ChaCha8 streams derived from the run seed (gene initialization,
//! activation initialization, variation/ranking). Evaluation is pure and
//! consumes no randomness, so it may run on any number of threads without
//! changing results; the streams are consumed on the control thread in a
//! fixed order. Because genes and activation draws use separate streams and
//! initial selections are drawn before being encoded, runs with the same
//! seed start from identical gene vectors and identical selected
//! configurations for every encoding method.

use std::collections::HashSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use crate::catalog::LayoutInstance;
use crate::constraints::Violations;
use crate::error::Error;
use crate::evolution::chromosome::{Activation, Chromosome, EncodingMethod};
use crate::evolution::operators::{
    dv_crossover, dv_mutation, polynomial_mutation, sbx_crossover, tag_crossover, tag_mutation,
};
use crate::evolution::ranking::{
    constraint_dominance_cmp, rank_population, tournament_select, ConstraintStrategy,
};
use crate::problem::{Evaluation, ProblemInstance};
use crate::Scalar;

const GENES_STREAM: u64 = 0;
const ACTIVATION_STREAM: u64 = 1;
const OPERATOR_STREAM: u64 = 2;

/// GA parameters. Probabilities are per pair (crossover) or per gene /
/// component / variable (mutation).
#[derive(Clone, Debug)]
pub struct GaConfig<F> {
    pub population_size: usize,
    pub generations: usize,
    /// Tournament size; selection samples this many distinct individuals.
    pub tournament_size: usize,
    pub crossover_prob_genes: F,
    pub crossover_prob_activation: F,
    pub mutation_prob_genes: F,
    pub mutation_prob_activation: F,
    /// SBX distribution index for genes and relaxed dimensional variables.
    pub eta_crossover: F,
    /// Polynomial-mutation distribution index.
    pub eta_mutation: F,
    /// Cut points for tag crossover.
    pub tag_crossover_points: usize,
    pub strategy: ConstraintStrategy<F>,
    pub seed: u64,
}

impl<F: Scalar> GaConfig<F> {
    /// Conventional defaults; experiment presets override most fields.
    pub fn new(seed: u64) -> Self {
        Self {
            population_size: 100,
            generations: 100,
            tournament_size: 2,
            crossover_prob_genes: F::of(0.9),
            crossover_prob_activation: F::of(0.9),
            mutation_prob_genes: F::of(0.2),
            mutation_prob_activation: F::of(0.2),
            eta_crossover: F::of(20.0),
            eta_mutation: F::of(20.0),
            tag_crossover_points: 1,
            strategy: ConstraintStrategy::ConstraintDominance,
            seed,
        }
    }

    pub fn validate(&self) -> Result<(), Error> {
        let bad = |msg: String| Err(Error::InvalidGaConfig(msg));
        if self.population_size < 2 {
            return bad(format!(
                "population_size must be at least 2, got {}",
                self.population_size
            ));
        }
        if self.tournament_size < 1 || self.tournament_size > self.population_size {
            return bad(format!(
                "tournament_size must be in 1..={}, got {}",
                self.population_size, self.tournament_size
            ));
        }
        let unit = |name: &str, v: F| -> Result<(), Error> {
            if v < F::zero() || v > F::one() || !v.is_finite() {
                Err(Error::InvalidGaConfig(format!(
                    "{name} must lie in [0, 1], got {v}"
                )))
            } else {
                Ok(())
            }
        };
        unit("crossover_prob_genes", self.crossover_prob_genes)?;
        unit("crossover_prob_activation", self.crossover_prob_activation)?;
        unit("mutation_prob_genes", self.mutation_prob_genes)?;
        unit("mutation_prob_activation", self.mutation_prob_activation)?;
        if let ConstraintStrategy::StochasticRanking { pf } = self.strategy {
            unit("pf", pf)?;
        }
        // `<=` plus an explicit NaN check keeps NaN invalid without the
        // easy-to-misread `!(eta > 0)` form.
        if self.eta_crossover <= F::zero()
            || self.eta_crossover.is_nan()
            || self.eta_mutation <= F::zero()
            || self.eta_mutation.is_nan()
        {
            return bad("distribution indices eta must be positive".into());
        }
        if self.tag_crossover_points == 0 {
            return bad("tag_crossover_points must be at least 1".into());
        }
        Ok(())
    }
}

/// A scored member of the population.
#[derive(Clone, Debug)]
pub struct Individual<F> {
    pub chromosome: Chromosome<F>,
    /// Option index per component, decoded once from the activation.
    pub selection: Vec<usize>,
    pub evaluation: Evaluation<F>,
}

/// Per-generation population statistics. Medians are taken over the whole
/// population (average of the two middle values for even sizes).
#[derive(Clone, Debug)]
pub struct GenerationRecord<F> {
    pub generation: usize,
    /// Objective of the constraint-dominance best individual.
    pub best_objective: F,
    /// Best feasible objective seen in any population up to this generation.
    pub best_feasible_objective: Option<F>,
    pub median_objective: F,
    /// Field-wise medians of the violation measures.
    pub median_violations: Violations<F>,
    pub feasible_count: usize,
    /// Distinct configurations present in the population.
    pub distinct_configurations: usize,
}

/// Outcome of one GA run.
#[derive(Clone, Debug)]
pub struct RunResult<F> {
    pub method: EncodingMethod,
    pub seed: u64,
    pub history: Vec<GenerationRecord<F>>,
    /// Constraint-dominance best individual of the final population.
    pub best: Individual<F>,
    /// Decoded layout of `best`.
    pub best_layout: LayoutInstance<F>,
    /// First generation whose population contained a feasible individual.
    pub first_feasible_generation: Option<usize>,
    /// Distinct configurations over every individual ever evaluated.
    pub explored_configurations: usize,
    /// Distinct configurations over every feasible individual ever evaluated.
    pub explored_feasible_configurations: usize,
    pub evaluations: usize,
}

fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn evaluate_members<F: Scalar>(
    problem: &ProblemInstance<F>,
    chromosomes: Vec<Chromosome<F>>,
) -> Result<Vec<Individual<F>>, Error> {
    chromosomes
        .into_par_iter()
        .map(|chromosome| {
            let selection = chromosome.activation.selection(&problem.space)?;
            let evaluation = problem.evaluate(&chromosome.genes, &selection)?;
            Ok(Individual {
                chromosome,
                selection,
                evaluation,
            })
        })
        .collect()
}

fn median_of<F: Scalar>(values: &mut [F]) -> F {
    debug_assert!(!values.is_empty());
    values.sort_by(|a, b| a.partial_cmp(b).unwrap_or(std::cmp::Ordering::Equal));
    let n = values.len();
    if n % 2 == 1 {
        values[n / 2]
    } else {
        (values[n / 2 - 1] + values[n / 2]) * F::of(0.5)
    }
}

fn cd_best_index<F: Scalar>(population: &[Individual<F>]) -> usize {
    let mut best = 0;
    for i in 1..population.len() {
        if constraint_dominance_cmp(&population[i].evaluation, &population[best].evaluation)
            == std::cmp::Ordering::Less
        {
            best = i;
        }
    }
    best
}

struct ExplorationLog {
    all: HashSet<u64>,
    feasible: HashSet<u64>,
}

impl ExplorationLog {
    fn absorb<F: Scalar>(&mut self, space: &crate::catalog::ConfigurationSpace, pop: &[Individual<F>]) {
        for ind in pop {
            let idx = space.index_of(&ind.selection);
            self.all.insert(idx);
            if ind.evaluation.is_feasible() {
                self.feasible.insert(idx);
            }
        }
    }
}

fn record_generation<F: Scalar>(
    generation: usize,
    population: &[Individual<F>],
    space: &crate::catalog::ConfigurationSpace,
    best_feasible_so_far: &mut Option<F>,
) -> GenerationRecord<F> {
    let best = &population[cd_best_index(population)];
    if best.evaluation.is_feasible() {
        let candidate = best.evaluation.objective;
        *best_feasible_so_far = Some(match *best_feasible_so_far {
            Some(prev) => prev.min(candidate),
            None => candidate,
        });
    }
    let mut objectives: Vec<F> = population.iter().map(|i| i.evaluation.objective).collect();
    let median_objective = median_of(&mut objectives);
    let field = |get: fn(&Violations<F>) -> F| -> F {
        let mut vals: Vec<F> = population
            .iter()
            .map(|i| get(&i.evaluation.violations))
            .collect();
        median_of(&mut vals)
    };
    let median_violations = Violations {
        overlap: field(|v| v.overlap),
        exclusion: field(|v| v.exclusion),
        containment: field(|v| v.containment),
        centroid: field(|v| v.centroid),
        functional: field(|v| v.functional),
        total: field(|v| v.total),
    };
    let feasible_count = population
        .iter()
        .filter(|i| i.evaluation.is_feasible())
        .count();
    let distinct: HashSet<u64> = population
        .iter()
        .map(|i| space.index_of(&i.selection))
        .collect();
    GenerationRecord {
        generation,
        best_objective: best.evaluation.objective,
        best_feasible_objective: *best_feasible_so_far,
        median_objective,
        median_violations,
        feasible_count,
        distinct_configurations: distinct.len(),
    }
}

/// Runs the GA and returns the full per-generation history.
pub fn evolve<F: Scalar>(
    problem: &ProblemInstance<F>,
    method: EncodingMethod,
    cfg: &GaConfig<F>,
) -> Result<RunResult<F>, Error> {
    cfg.validate()?;
    let layout = &problem.layout;
    let space = &problem.space;
    let n = cfg.population_size;

    let mut genes_rng = stream_rng(cfg.seed, GENES_STREAM);
    let mut act_rng = stream_rng(cfg.seed, ACTIVATION_STREAM);
    let mut ops_rng = stream_rng(cfg.seed, OPERATOR_STREAM);

    let lower = layout.lower();
    let upper = layout.upper();

    // Gene vectors are drawn before selections and from their own stream,
    // so gene initialization is identical for every encoding method.
    let gene_vectors: Vec<Vec<F>> = (0..n)
        .map(|_| {
            lower
                .iter()
                .zip(upper)
                .map(|(&lo, &hi)| F::of(genes_rng.gen_range(lo.as_f64()..hi.as_f64())))
                .collect()
        })
        .collect();
    let initial: Vec<Chromosome<F>> = gene_vectors
        .into_iter()
        .map(|genes| {
            let selection: Vec<usize> = space
                .option_counts()
                .iter()
                .map(|&c| act_rng.gen_range(0..c))
                .collect();
            Chromosome {
                genes,
                activation: Activation::encode(&selection, method, space),
            }
        })
        .collect();

    let mut population = evaluate_members(problem, initial)?;
    let mut evaluations = n;
    let mut exploration = ExplorationLog {
        all: HashSet::new(),
        feasible: HashSet::new(),
    };
    exploration.absorb(space, &population);

    let mut best_feasible_so_far: Option<F> = None;
    let mut history = Vec::with_capacity(cfg.generations + 1);
    let mut first_feasible_generation: Option<usize> = None;
    let record = record_generation(0, &population, space, &mut best_feasible_so_far);
    if record.feasible_count > 0 {
        first_feasible_generation = Some(0);
    }
    history.push(record);

    let eta_c_f64 = cfg.eta_crossover.as_f64();
    let eta_m_f64 = cfg.eta_mutation.as_f64();
    let pm_act_f64 = cfg.mutation_prob_activation.as_f64();

    for generation in 1..=cfg.generations {
        let evals: Vec<Evaluation<F>> = population.iter().map(|i| i.evaluation).collect();
        let order = rank_population(&evals, cfg.strategy, &mut ops_rng);
        let mut rank_of = vec![0usize; n];
        for (pos, &i) in order.iter().enumerate() {
            rank_of[i] = pos;
        }

        let mut offspring: Vec<Chromosome<F>> = Vec::with_capacity(n + 1);
        while offspring.len() < n {
            let pa = tournament_select(&rank_of, cfg.tournament_size, &mut ops_rng);
            let pb = tournament_select(&rank_of, cfg.tournament_size, &mut ops_rng);
            let mut c1 = population[pa].chromosome.clone();
            let mut c2 = population[pb].chromosome.clone();

            if F::of(ops_rng.gen::<f64>()) < cfg.crossover_prob_genes {
                sbx_crossover(
                    &mut c1.genes,
                    &mut c2.genes,
                    lower,
                    upper,
                    cfg.eta_crossover,
                    &mut ops_rng,
                );
            }
            if F::of(ops_rng.gen::<f64>()) < cfg.crossover_prob_activation {
                match (&mut c1.activation, &mut c2.activation) {
                    (Activation::Tags(fa), Activation::Tags(fb)) => {
                        tag_crossover(fa, fb, space, cfg.tag_crossover_points, &mut ops_rng);
                    }
                    (a, b) => dv_crossover(a, b, space, eta_c_f64, &mut ops_rng),
                }
            }
            for child in [&mut c1, &mut c2] {
                polynomial_mutation(
                    &mut child.genes,
                    lower,
                    upper,
                    cfg.eta_mutation,
                    cfg.mutation_prob_genes,
                    &mut ops_rng,
                );
                match &mut child.activation {
                    Activation::Tags(flags) => {
                        tag_mutation(flags, space, cfg.mutation_prob_activation, &mut ops_rng);
                    }
                    act => dv_mutation(act, space, eta_m_f64, pm_act_f64, &mut ops_rng),
                }
                child.activation.validate(space)?;
            }
            offspring.push(c1);
            if offspring.len() < n {
                offspring.push(c2);
            }
        }

        let offspring = evaluate_members(problem, offspring)?;
        evaluations += offspring.len();
        exploration.absorb(space, &offspring);

        // Pool parents and offspring (parents first for deterministic
        // tie-breaking), order under the strategy, keep the best n. The
        // constraint-dominance best of the pool is always retained, so the
        // incumbent never worsens even under stochastic ranking.
        let mut pool: Vec<Option<Individual<F>>> = population
            .into_iter()
            .chain(offspring)
            .map(Some)
            .collect();
        let pool_evals: Vec<Evaluation<F>> = pool
            .iter()
            .map(|i| i.as_ref().expect("pool is fully populated").evaluation)
            .collect();
        let pool_order = rank_population(&pool_evals, cfg.strategy, &mut ops_rng);
        let mut keep: Vec<usize> = pool_order[..n].to_vec();
        let mut cd_best = 0;
        for i in 1..pool_evals.len() {
            if constraint_dominance_cmp(&pool_evals[i], &pool_evals[cd_best])
                == std::cmp::Ordering::Less
            {
                cd_best = i;
            }
        }
        if !keep.contains(&cd_best) {
            keep[n - 1] = cd_best;
        }
        population = keep
            .into_iter()
            .map(|i| pool[i].take().expect("keep indices are distinct"))
            .collect();

        let record = record_generation(generation, &population, space, &mut best_feasible_so_far);
        if first_feasible_generation.is_none() && record.feasible_count > 0 {
            first_feasible_generation = Some(generation);
        }
        history.push(record);
    }

    let best = population[cd_best_index(&population)].clone();
    let best_layout = problem.decode(&best.chromosome.genes, &best.selection)?;
    Ok(RunResult {
        method,
        seed: cfg.seed,
        history,
        best,
        best_layout,
        first_feasible_generation,
        explored_configurations: exploration.all.len(),
        explored_feasible_configurations: exploration.feasible.len(),
        evaluations,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn config_validation_catches_bad_values() {
        let mut cfg = GaConfig::<f64>::new(1);
        cfg.population_size = 1;
        assert!(cfg.validate().is_err());

        let mut cfg = GaConfig::<f64>::new(1);
        cfg.tournament_size = 200;
        assert!(cfg.validate().is_err());

        let mut cfg = GaConfig::<f64>::new(1);
        cfg.crossover_prob_genes = 1.5;
        assert!(cfg.validate().is_err());

        let mut cfg = GaConfig::<f64>::new(1);
        cfg.strategy = ConstraintStrategy::StochasticRanking { pf: -0.1 };
        assert!(cfg.validate().is_err());

        assert!(GaConfig::<f64>::new(1).validate().is_ok());
    }
}
