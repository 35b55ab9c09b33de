//! Placement constraints and their violation measures.
//!
//! Equality-style constraints measure areas (mm²): pairwise part overlap
//! `h1`, exclusion-zone intrusion `h2` and container containment deficit
//! `h3`. Inequality constraints measure distances (mm): system-centroid
//! offset beyond the tolerance `g1` and fuel/energy separation shortfall
//! `g3`. The scalar `total` normalizes areas by the container area and
//! distances by the container radius so the measures can be summed; a
//! layout is feasible when the normalized total does not exceed
//! [`FEASIBILITY_TOLERANCE`].

use crate::catalog::{ComponentKind, LayoutInstance};
use crate::error::Error;
use crate::geometry::{
    centroid_distance, containment_deficit, shape_overlap_area, ContainerDisk, PlacedShape, Vec2,
};
use crate::physics::system_centroid;
use crate::Scalar;

/// Normalized violation total at or below this value counts as feasible.
pub const FEASIBILITY_TOLERANCE: f64 = 1e-9;

/// Constraint parameters for one problem instance.
#[derive(Clone, Debug)]
pub struct ConstraintConfig<F> {
    /// Allowed distance between the system centroid and the target (mm).
    pub delta: F,
    /// Minimum distance between every fuel part and every energy part (mm).
    pub d_min: F,
    /// Forbidden regions; any intrusion area counts against `h2`.
    pub exclusion_zones: Vec<PlacedShape<F>>,
    /// Desired system centroid, usually the container center.
    pub target_centroid: Vec2<F>,
}

impl<F: Scalar> ConstraintConfig<F> {
    /// Defaults for a container: centroid tolerance of 1% of the radius,
    /// 300 mm fuel/energy separation, no exclusion zones, target at the
    /// container center.
    pub fn for_container(container: &ContainerDisk<F>) -> Self {
        Self {
            delta: container.radius * F::of(0.01),
            d_min: F::of(300.0),
            exclusion_zones: Vec::new(),
            target_centroid: container.center,
        }
    }

    pub fn with_delta(mut self, delta: F) -> Self {
        self.delta = delta;
        self
    }

    pub fn with_d_min(mut self, d_min: F) -> Self {
        self.d_min = d_min;
        self
    }

    pub fn with_exclusion_zones(mut self, zones: Vec<PlacedShape<F>>) -> Self {
        self.exclusion_zones = zones;
        self
    }
}

/// Violation measures of one layout. Raw fields keep physical units; `total`
/// is the dimensionless normalized sum used for feasibility and ranking.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Violations<F> {
    /// h1: summed pairwise overlap area between parts (mm²).
    pub overlap: F,
    /// h2: summed intrusion area into exclusion zones (mm²).
    pub exclusion: F,
    /// h3: summed part area outside the container (mm²).
    pub containment: F,
    /// g1: centroid distance beyond the allowed tolerance (mm).
    pub centroid: F,
    /// g3: summed fuel/energy separation shortfall (mm).
    pub functional: F,
    /// Normalized dimensionless sum of all violations.
    pub total: F,
}

impl<F: Scalar> Violations<F> {
    pub fn is_feasible(&self) -> bool {
        self.total <= F::of(FEASIBILITY_TOLERANCE)
    }
}

/// h1: sum of overlap areas over all unordered part pairs.
pub fn overlap_constraint<F: Scalar>(layout: &LayoutInstance<F>) -> F {
    let items = &layout.items;
    let mut acc = F::zero();
    for i in 0..items.len() {
        for j in (i + 1)..items.len() {
            acc = acc + shape_overlap_area(&items[i].shape, &items[j].shape);
        }
    }
    acc
}

/// h2: sum of part/exclusion-zone overlap areas.
pub fn exclusion_constraint<F: Scalar>(layout: &LayoutInstance<F>, zones: &[PlacedShape<F>]) -> F {
    let mut acc = F::zero();
    for item in &layout.items {
        for zone in zones {
            acc = acc + shape_overlap_area(&item.shape, zone);
        }
    }
    acc
}

/// h3: sum of part areas outside the container.
pub fn containment_constraint<F: Scalar>(
    layout: &LayoutInstance<F>,
    container: &ContainerDisk<F>,
) -> F {
    layout
        .items
        .iter()
        .map(|item| containment_deficit(&item.shape, container))
        .fold(F::zero(), |a, b| a + b)
}

/// g1: system-centroid distance from the target beyond `delta`, clamped at
/// zero. Errors on empty layouts.
pub fn centroid_constraint<F: Scalar>(
    layout: &LayoutInstance<F>,
    cfg: &ConstraintConfig<F>,
) -> Result<F, Error> {
    let centroid = system_centroid(layout)?;
    Ok((centroid.position.distance(cfg.target_centroid) - cfg.delta).max(F::zero()))
}

/// g3: for every (fuel part, energy part) pair, the shortfall of their
/// center distance below `d_min`, summed.
pub fn functional_constraint<F: Scalar>(
    layout: &LayoutInstance<F>,
    cfg: &ConstraintConfig<F>,
) -> F {
    let mut acc = F::zero();
    for fuel in layout
        .items
        .iter()
        .filter(|i| i.kind == ComponentKind::Fuel)
    {
        for energy in layout
            .items
            .iter()
            .filter(|i| i.kind == ComponentKind::Energy)
        {
            let d = centroid_distance(&fuel.shape, &energy.shape);
            acc = acc + (cfg.d_min - d).max(F::zero());
        }
    }
    acc
}

/// Evaluates every constraint and the normalized total.
pub fn evaluate_all<F: Scalar>(
    layout: &LayoutInstance<F>,
    cfg: &ConstraintConfig<F>,
    container: &ContainerDisk<F>,
) -> Result<Violations<F>, Error> {
    let overlap = overlap_constraint(layout);
    let exclusion = exclusion_constraint(layout, &cfg.exclusion_zones);
    let containment = containment_constraint(layout, container);
    let centroid = centroid_constraint(layout, cfg)?;
    let functional = functional_constraint(layout, cfg);
    let inv_area = container.area().recip();
    let inv_radius = container.radius.recip();
    let total =
        (overlap + exclusion + containment) * inv_area + (centroid + functional) * inv_radius;
    Ok(Violations {
        overlap,
        exclusion,
        containment,
        centroid,
        functional,
        total,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::catalog::PlacedItem;
    use crate::geometry::disk_disk_overlap_area;
    use approx::assert_relative_eq;

    type V = Vec2<f64>;

    fn item(shape: PlacedShape<f64>, mass: f64, kind: ComponentKind) -> PlacedItem<f64> {
        PlacedItem {
            shape,
            mass,
            kind,
            component: 0,
            part: 0,
        }
    }

    fn container() -> ContainerDisk<f64> {
        ContainerDisk::centered(100.0)
    }

    #[test]
    fn well_separated_layout_is_feasible() {
        let c = container();
        let cfg = ConstraintConfig::for_container(&c).with_d_min(0.0);
        let layout = LayoutInstance {
            items: vec![
                item(PlacedShape::disk(V::new(-20.0, 0.0), 5.0), 1.0, ComponentKind::Fuel),
                item(PlacedShape::disk(V::new(20.0, 0.0), 5.0), 1.0, ComponentKind::Fuel),
            ],
        };
        let v = evaluate_all(&layout, &cfg, &c).unwrap();
        assert_eq!(v.overlap, 0.0);
        assert_eq!(v.exclusion, 0.0);
        assert_eq!(v.containment, 0.0);
        assert_eq!(v.centroid, 0.0);
        assert_eq!(v.functional, 0.0);
        assert!(v.is_feasible());
    }

    #[test]
    fn pairwise_overlap_sums_every_overlapping_pair() {
        // Three unit disks on a line, spacing 1: pairs (0,1) and (1,2)
        // overlap in a lens each, pair (0,2) touches without area.
        let lens = disk_disk_overlap_area(V::new(0.0, 0.0), 1.0, V::new(1.0, 0.0), 1.0);
        let layout = LayoutInstance {
            items: vec![
                item(PlacedShape::disk(V::new(0.0, 0.0), 1.0), 1.0, ComponentKind::Diverse),
                item(PlacedShape::disk(V::new(1.0, 0.0), 1.0), 1.0, ComponentKind::Diverse),
                item(PlacedShape::disk(V::new(2.0, 0.0), 1.0), 1.0, ComponentKind::Diverse),
            ],
        };
        assert_relative_eq!(overlap_constraint(&layout), 2.0 * lens, max_relative = 1e-12);
    }

    #[test]
    fn exclusion_zone_intrusion_is_measured() {
        let zone = PlacedShape::rect(V::new(0.0, 0.0), V::new(10.0, 10.0), 0.0);
        let layout = LayoutInstance {
            items: vec![item(
                PlacedShape::rect(V::new(5.0, 0.0), V::new(10.0, 5.0), 0.0),
                1.0,
                ComponentKind::Diverse,
            )],
        };
        // Item spans x in [-5, 15], zone x in [-10, 10]: overlap 15 x 10.
        assert_relative_eq!(
            exclusion_constraint(&layout, &[zone]),
            150.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn containment_deficit_counts_area_outside() {
        let c = container();
        let layout = LayoutInstance {
            items: vec![item(
                PlacedShape::disk(V::new(100.0, 0.0), 5.0),
                1.0,
                ComponentKind::Diverse,
            )],
        };
        let h3 = containment_constraint(&layout, &c);
        assert!(h3 > 0.0 && h3 < 25.0 * std::f64::consts::PI);
    }

    #[test]
    fn centroid_violation_is_clamped_distance_beyond_delta() {
        let c = container();
        let cfg = ConstraintConfig::for_container(&c); // delta = 1
        let layout = LayoutInstance {
            items: vec![item(
                PlacedShape::disk(V::new(2.0, 0.0), 1.0),
                3.0,
                ComponentKind::Diverse,
            )],
        };
        assert_relative_eq!(
            centroid_constraint(&layout, &cfg).unwrap(),
            1.0,
            max_relative = 1e-12
        );
        let centered = LayoutInstance {
            items: vec![item(
                PlacedShape::disk(V::new(0.5, 0.0), 1.0),
                3.0,
                ComponentKind::Diverse,
            )],
        };
        assert_eq!(centroid_constraint(&centered, &cfg).unwrap(), 0.0);
    }

    #[test]
    fn functional_constraint_pairs_fuel_with_energy_only() {
        let c = container();
        let cfg = ConstraintConfig::for_container(&c).with_d_min(300.0);
        let layout = LayoutInstance {
            items: vec![
                item(PlacedShape::disk(V::new(0.0, 0.0), 1.0), 1.0, ComponentKind::Fuel),
                item(PlacedShape::disk(V::new(200.0, 0.0), 1.0), 1.0, ComponentKind::Energy),
                item(PlacedShape::disk(V::new(50.0, 0.0), 1.0), 1.0, ComponentKind::Fuel),
                item(PlacedShape::disk(V::new(10.0, 0.0), 1.0), 1.0, ComponentKind::Diverse),
            ],
        };
        // Pairs: (fuel@0, energy@200) short by 100; (fuel@50, energy@200)
        // short by 150. Diverse parts never participate.
        assert_relative_eq!(
            functional_constraint(&layout, &cfg),
            250.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn total_normalizes_areas_by_container_area_and_distances_by_radius() {
        let c = container();
        let cfg = ConstraintConfig::for_container(&c).with_d_min(0.0);
        let layout = LayoutInstance {
            items: vec![
                item(PlacedShape::disk(V::new(0.0, 0.0), 10.0), 1.0, ComponentKind::Diverse),
                item(PlacedShape::disk(V::new(0.0, 0.0), 10.0), 1.0, ComponentKind::Diverse),
            ],
        };
        let v = evaluate_all(&layout, &cfg, &c).unwrap();
        let expected =
            (v.overlap + v.exclusion + v.containment) / c.area() + v.centroid / c.radius;
        assert_relative_eq!(v.total, expected, max_relative = 1e-12);
        assert!(!v.is_feasible());
    }

    #[test]
    fn feasibility_threshold_is_strict() {
        let v_ok = Violations::<f64> {
            total: 0.5e-9,
            ..Default::default()
        };
        let v_bad = Violations::<f64> {
            total: 1e-6,
            ..Default::default()
        };
        assert!(v_ok.is_feasible());
        assert!(!v_bad.is_feasible());
    }

    #[test]
    fn empty_layout_errors_through_centroid() {
        let c = container();
        let cfg = ConstraintConfig::for_container(&c);
        let layout = LayoutInstance::<f64> { items: vec![] };
        assert!(evaluate_all(&layout, &cfg, &c).is_err());
    }
}
