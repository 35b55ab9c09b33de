//! A fully wired optimization problem: catalog, container, constraints and
//! gene layout, plus the evaluation path shared by the GA and the tests.

use crate::catalog::{
    Catalog, ConfigurationSpace, GeneLayout, LayoutInstance, Parameterization,
};
use crate::constraints::{evaluate_all, ConstraintConfig, Violations};
use crate::error::Error;
use crate::geometry::ContainerDisk;
use crate::physics::total_inertia;
use crate::Scalar;

/// Objective and constraint measures of one decoded layout.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Evaluation<F> {
    /// Total inertia `I_x + I_y + I_z` about the system centroid (kg·mm²).
    pub objective: F,
    pub violations: Violations<F>,
}

impl<F: Scalar> Evaluation<F> {
    #[inline]
    pub fn is_feasible(&self) -> bool {
        self.violations.is_feasible()
    }
}

/// An optimization problem instance.
///
/// Evaluation is a pure function of (genes, selection): decoding reads only
/// the genes of selected subdivision options, and no randomness is involved,
/// so results are reproducible regardless of evaluation order or threading.
#[derive(Clone, Debug)]
pub struct ProblemInstance<F> {
    pub name: String,
    pub catalog: Catalog<F>,
    pub container: ContainerDisk<F>,
    pub constraints: ConstraintConfig<F>,
    pub layout: GeneLayout<F>,
    pub space: ConfigurationSpace,
}

impl<F: Scalar> ProblemInstance<F> {
    pub fn new(
        name: impl Into<String>,
        catalog: Catalog<F>,
        container: ContainerDisk<F>,
        constraints: ConstraintConfig<F>,
        parameterization: Parameterization,
    ) -> Result<Self, Error> {
        let layout = GeneLayout::build(&catalog, parameterization, &container)?;
        let space = catalog.configuration_space();
        Ok(Self {
            name: name.into(),
            catalog,
            container,
            constraints,
            layout,
            space,
        })
    }

    /// Chromosome length for this instance.
    pub fn gene_count(&self) -> usize {
        self.layout.len()
    }

    pub fn decode(&self, genes: &[F], selection: &[usize]) -> Result<LayoutInstance<F>, Error> {
        self.layout.decode(genes, selection)
    }

    /// Decodes and scores a chromosome.
    pub fn evaluate(&self, genes: &[F], selection: &[usize]) -> Result<Evaluation<F>, Error> {
        let layout = self.layout.decode(genes, selection)?;
        let violations = evaluate_all(&layout, &self.constraints, &self.container)?;
        let objective = total_inertia(&layout)?;
        Ok(Evaluation {
            objective,
            violations,
        })
    }
}
