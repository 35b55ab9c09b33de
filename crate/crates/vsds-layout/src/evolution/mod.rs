//! Hidden-variables genetic algorithm.
//!
//! Chromosomes pair a fixed-length real gene vector (placements for every
//! subdivision option) with an *activation record* choosing one option per
//! component. Four interchangeable activation encodings are provided: tag
//! vectors and integer / numeric-index / binary dimensional variables.
//! Variation uses simulated binary crossover and polynomial mutation on the
//! genes, plus encoding-specific operators on the activation; constraint
//! handling is either constraint dominance or stochastic ranking.

mod chromosome;
mod engine;
mod operators;
mod ranking;

pub use chromosome::{Activation, Chromosome, EncodingMethod};
pub use engine::{evolve, GaConfig, GenerationRecord, Individual, RunResult};
pub use operators::{
    dv_crossover, dv_mutation, polynomial_mutation, sbx_crossover, tag_crossover, tag_mutation,
};
pub use ranking::{
    constraint_dominance_cmp, rank_constraint_dominance, rank_population, stochastic_rank,
    tournament_select, ConstraintStrategy,
};
