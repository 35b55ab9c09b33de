//! Component catalog, subdivision expansion and chromosome decoding.
//!
//! A [`Component`] is a physical part (tank, battery box, equipment unit)
//! that may be realized as `k` identical sub-components for any `k` in its
//! `subdivisions` list. Subdividing preserves total footprint area and total
//! mass: cylinder diameters and cuboid side lengths shrink by `1/sqrt(k)`,
//! masses by `1/k`.
//!
//! Picking one subdivision option per component selects a *configuration*;
//! the number of configurations is the product of the option counts. The
//! [`GeneLayout`] assigns a fixed gene range to every part of every option of
//! every component, so a single fixed-length chromosome can describe any
//! configuration; genes of unselected options are carried along but ignored
//! ("hidden") during decoding.

use std::ops::Range;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::Error;
use crate::geometry::{ContainerDisk, PlacedShape, Vec2};
use crate::Scalar;

/// Functional role of a component; drives constraint wiring and rendering.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Fuel,
    Energy,
    Diverse,
}

/// 3D body class; in the planar model a cylinder projects to a disk and a
/// cuboid to a rectangle.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum GeometryKind {
    Cylinder,
    Cuboid,
}

/// Interpretation of `d1` for cylinders.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum D1Convention {
    /// `d1` is the cylinder diameter (the default).
    #[default]
    Diameter,
    /// `d1` is the cylinder radius.
    Radius,
}

/// One catalog entry. Dimensions are millimetres, masses kilograms.
#[derive(Clone, Debug, PartialEq)]
pub struct Component<F> {
    pub id: String,
    pub kind: ComponentKind,
    pub geometry: GeometryKind,
    /// Cylinder diameter (or radius, per catalog convention) or first cuboid
    /// side length.
    pub d1: F,
    /// Second cuboid side length; must be absent for cylinders.
    pub d2: Option<F>,
    pub mass: F,
    /// Admissible sub-component counts, in catalog order.
    pub subdivisions: Vec<usize>,
    /// Number of structural plates the component spans; the planar model
    /// supports exactly 1.
    pub plate: u32,
}

/// Resolved planar footprint of a (sub-)component.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Profile<F> {
    Disk { radius: F },
    Rect { half_extents: Vec2<F> },
}

impl<F: Scalar> Profile<F> {
    #[inline]
    pub fn area(&self) -> F {
        match *self {
            Profile::Disk { radius } => F::of(std::f64::consts::PI) * radius * radius,
            Profile::Rect { half_extents } => F::of(4.0) * half_extents.x * half_extents.y,
        }
    }

    /// Genes needed to place this profile: position only for disks,
    /// position plus orientation for rectangles.
    #[inline]
    pub fn genes_per_part(&self) -> usize {
        match self {
            Profile::Disk { .. } => 2,
            Profile::Rect { .. } => 3,
        }
    }
}

/// One of the `k` identical parts a component expands into.
#[derive(Clone, Debug, PartialEq)]
pub struct SubComponent<F> {
    /// Index of the parent component in the catalog.
    pub component: usize,
    /// Part index within the expansion, `0..k`.
    pub part: usize,
    pub kind: ComponentKind,
    /// Scaled `d1`, same convention as the parent component.
    pub d1: F,
    /// Scaled `d2` for cuboids.
    pub d2: Option<F>,
    pub mass: F,
    pub profile: Profile<F>,
}

impl<F: Scalar> SubComponent<F> {
    pub fn area(&self) -> F {
        self.profile.area()
    }

    /// Places the part at `center`; `orientation` is ignored for disks.
    pub fn place(&self, center: Vec2<F>, orientation: F) -> PlacedShape<F> {
        match self.profile {
            Profile::Disk { radius } => PlacedShape::disk(center, radius),
            Profile::Rect { half_extents } => PlacedShape::rect(center, half_extents, orientation),
        }
    }
}

/// Validated component catalog.
#[derive(Clone, Debug, PartialEq)]
pub struct Catalog<F> {
    components: Vec<Component<F>>,
    d1_convention: D1Convention,
}

fn default_plate() -> u32 {
    1
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CatalogFile {
    /// Interpretation of cylinder `d1`; defaults to `diameter`.
    #[serde(default)]
    cylinder_d1: D1Convention,
    components: Vec<ComponentEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct ComponentEntry {
    id: String,
    kind: ComponentKind,
    geometry: GeometryKind,
    d1: f64,
    #[serde(default)]
    d2: Option<f64>,
    mass: f64,
    subdivisions: Vec<usize>,
    #[serde(default = "default_plate")]
    plate: u32,
}

impl<F: Scalar> Catalog<F> {
    /// Builds a catalog from components, validating every entry.
    pub fn new(components: Vec<Component<F>>, d1_convention: D1Convention) -> Result<Self, Error> {
        if components.is_empty() {
            return Err(Error::CatalogValidation(
                "catalog must contain at least one component".into(),
            ));
        }
        // Collect every defect so one pass over the error message is enough
        // to repair a hand-written file.
        let mut issues = Vec::new();
        let mut seen = std::collections::HashSet::new();
        for (idx, c) in components.iter().enumerate() {
            let who = |field: &str| format!("component {} ('{}'): field '{field}'", idx, c.id);
            if c.id.is_empty() {
                issues.push(format!("component {idx}: field 'id' must be non-empty"));
            }
            if !seen.insert(c.id.clone()) {
                issues.push(format!("component {} ('{}'): duplicate id", idx, c.id));
            }
            if !(c.d1 > F::zero() && c.d1.is_finite()) {
                issues.push(format!("{} must be a positive finite length", who("d1")));
            }
            match (c.geometry, c.d2) {
                (GeometryKind::Cuboid, None) => {
                    issues.push(format!("{} is required for cuboids", who("d2")));
                }
                (GeometryKind::Cuboid, Some(d2)) if !(d2 > F::zero() && d2.is_finite()) => {
                    issues.push(format!("{} must be a positive finite length", who("d2")));
                }
                (GeometryKind::Cylinder, Some(_)) => {
                    issues.push(format!("{} must be absent for cylinders", who("d2")));
                }
                _ => {}
            }
            if !(c.mass > F::zero() && c.mass.is_finite()) {
                issues.push(format!("{} must be a positive finite mass", who("mass")));
            }
            if c.subdivisions.is_empty() {
                issues.push(format!("{} must list at least one option", who("subdivisions")));
            }
            let mut ks = std::collections::HashSet::new();
            for &k in &c.subdivisions {
                if k == 0 {
                    issues.push(format!("{} must contain counts >= 1", who("subdivisions")));
                }
                if !ks.insert(k) {
                    issues.push(format!("{} contains duplicate count {k}", who("subdivisions")));
                }
            }
            if c.plate != 1 {
                issues.push(format!(
                    "{} must be 1; only single-plate layouts are supported",
                    who("plate")
                ));
            }
        }
        if !issues.is_empty() {
            return Err(Error::CatalogValidation(issues.join("\n")));
        }
        Ok(Self {
            components,
            d1_convention,
        })
    }

    /// Parses and validates a catalog from JSON. Unknown fields are rejected.
    pub fn from_json_str(json: &str) -> Result<Self, Error> {
        let file: CatalogFile = serde_json::from_str(json)?;
        let components = file
            .components
            .into_iter()
            .map(|e| Component {
                id: e.id,
                kind: e.kind,
                geometry: e.geometry,
                d1: F::of(e.d1),
                d2: e.d2.map(F::of),
                mass: F::of(e.mass),
                subdivisions: e.subdivisions,
                plate: e.plate,
            })
            .collect();
        Self::new(components, file.cylinder_d1)
    }

    /// Reads a catalog from a JSON file.
    pub fn from_path(path: impl AsRef<Path>) -> Result<Self, Error> {
        let text = std::fs::read_to_string(path.as_ref()).map_err(|e| {
            Error::CatalogValidation(format!(
                "cannot read catalog file '{}': {e}",
                path.as_ref().display()
            ))
        })?;
        Self::from_json_str(&text)
    }

    pub fn components(&self) -> &[Component<F>] {
        &self.components
    }

    pub fn len(&self) -> usize {
        self.components.len()
    }

    pub fn is_empty(&self) -> bool {
        self.components.is_empty()
    }

    pub fn d1_convention(&self) -> D1Convention {
        self.d1_convention
    }

    /// Cylinder radius implied by `d1` under the catalog convention.
    fn cylinder_radius(&self, d1: F) -> F {
        match self.d1_convention {
            D1Convention::Diameter => d1 * F::of(0.5),
            D1Convention::Radius => d1,
        }
    }

    /// Footprint area of one component (independent of subdivision).
    pub fn component_area(&self, index: usize) -> F {
        let c = &self.components[index];
        match c.geometry {
            GeometryKind::Cylinder => {
                let r = self.cylinder_radius(c.d1);
                F::of(std::f64::consts::PI) * r * r
            }
            GeometryKind::Cuboid => c.d1 * c.d2.expect("validated cuboid has d2"),
        }
    }

    /// Total footprint area of the catalog in mm².
    pub fn total_area(&self) -> F {
        (0..self.components.len())
            .map(|i| self.component_area(i))
            .fold(F::zero(), |a, b| a + b)
    }

    /// Total mass of the catalog in kg.
    pub fn total_mass(&self) -> F {
        self.components
            .iter()
            .map(|c| c.mass)
            .fold(F::zero(), |a, b| a + b)
    }

    /// Ratio of catalog footprint area to container area.
    pub fn occupation_rate(&self, container: &ContainerDisk<F>) -> F {
        self.total_area() / container.area()
    }

    /// Expands component `index` into `k` identical parts.
    ///
    /// Linear dimensions scale by `1/sqrt(k)` and masses by `1/k`, so total
    /// area and total mass are preserved exactly.
    pub fn expand_subdivisions(&self, index: usize, k: usize) -> Result<Vec<SubComponent<F>>, Error> {
        let c = &self.components[index];
        if !c.subdivisions.contains(&k) {
            return Err(Error::InvalidSubdivision {
                component: c.id.clone(),
                requested: k,
                available: c.subdivisions.clone(),
            });
        }
        let scale = (F::of(k as f64)).sqrt().recip();
        let mass = c.mass / F::of(k as f64);
        let d1 = c.d1 * scale;
        let d2 = c.d2.map(|d| d * scale);
        let profile = match c.geometry {
            GeometryKind::Cylinder => Profile::Disk {
                radius: self.cylinder_radius(d1),
            },
            GeometryKind::Cuboid => Profile::Rect {
                half_extents: Vec2::new(
                    d1 * F::of(0.5),
                    d2.expect("validated cuboid has d2") * F::of(0.5),
                ),
            },
        };
        Ok((0..k)
            .map(|part| SubComponent {
                component: index,
                part,
                kind: c.kind,
                d1,
                d2,
                mass,
                profile,
            })
            .collect())
    }

    /// Returns a copy whose linear dimensions are scaled by one common
    /// coefficient so the occupation rate inside `container` hits `target`.
    /// Masses are left untouched.
    pub fn scale_for_occupation_rate(
        &self,
        target: F,
        container: &ContainerDisk<F>,
    ) -> Result<Self, Error> {
        if !(target > F::zero() && target < F::one()) {
            return Err(Error::InvalidOccupationRate(target.as_f64()));
        }
        let coeff = (target * container.area() / self.total_area()).sqrt();
        let components = self
            .components
            .iter()
            .map(|c| Component {
                d1: c.d1 * coeff,
                d2: c.d2.map(|d| d * coeff),
                ..c.clone()
            })
            .collect();
        Ok(Self {
            components,
            d1_convention: self.d1_convention,
        })
    }

    /// The discrete space of subdivision choices.
    pub fn configuration_space(&self) -> ConfigurationSpace {
        ConfigurationSpace::new(
            self.components
                .iter()
                .map(|c| c.subdivisions.len())
                .collect(),
        )
    }
}

/// The discrete space of per-component subdivision selections.
///
/// A *selection* assigns each component an option index
/// `0..option_counts[i]`; a *configuration index* enumerates selections in
/// mixed-radix order with the last component varying fastest.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConfigurationSpace {
    counts: Vec<usize>,
}

impl ConfigurationSpace {
    pub fn new(counts: Vec<usize>) -> Self {
        assert!(
            counts.iter().all(|&n| n >= 1),
            "every component needs at least one subdivision option"
        );
        Self { counts }
    }

    pub fn option_counts(&self) -> &[usize] {
        &self.counts
    }

    pub fn num_components(&self) -> usize {
        self.counts.len()
    }

    /// Number of distinct configurations: the product of option counts.
    pub fn cardinality(&self) -> u64 {
        self.counts
            .iter()
            .try_fold(1u64, |acc, &n| acc.checked_mul(n as u64))
            .expect("configuration count exceeds u64")
    }

    /// Bits needed to index all configurations (at least 1).
    pub fn index_bits(&self) -> usize {
        let card = self.cardinality();
        if card <= 1 {
            1
        } else {
            64 - (card - 1).leading_zeros() as usize
        }
    }

    pub fn validate_selection(&self, selection: &[usize]) -> Result<(), Error> {
        if selection.len() != self.counts.len() {
            return Err(Error::InvalidSelection(format!(
                "selection has {} entries, catalog has {} components",
                selection.len(),
                self.counts.len()
            )));
        }
        for (i, (&s, &n)) in selection.iter().zip(&self.counts).enumerate() {
            if s >= n {
                return Err(Error::InvalidSelection(format!(
                    "component {i}: option index {s} out of range (must be < {n})"
                )));
            }
        }
        Ok(())
    }

    /// Mixed-radix configuration index of a selection.
    pub fn index_of(&self, selection: &[usize]) -> u64 {
        debug_assert_eq!(selection.len(), self.counts.len());
        let mut idx = 0u64;
        for (&s, &n) in selection.iter().zip(&self.counts) {
            idx = idx * n as u64 + s as u64;
        }
        idx
    }

    /// Inverse of [`Self::index_of`].
    pub fn selection_of(&self, mut index: u64) -> Vec<usize> {
        debug_assert!(index < self.cardinality());
        let mut sel = vec![0usize; self.counts.len()];
        for i in (0..self.counts.len()).rev() {
            let n = self.counts[i] as u64;
            sel[i] = (index % n) as usize;
            index /= n;
        }
        sel
    }
}

/// Position parameterization of placement genes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parameterization {
    /// Genes are (x, y) offsets from the container center, each in [-R, R].
    Cartesian,
    /// Genes are (r, theta) about the container center, r in [0, R],
    /// theta in [0, 2π).
    Polar,
}

/// Gene range of one part of one subdivision option of one component.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct GeneSlice {
    pub component: usize,
    pub option: usize,
    pub part: usize,
    pub offset: usize,
    pub len: usize,
}

/// Fixed chromosome layout covering every subdivision option of every
/// component.
///
/// Gene order is deterministic: components in catalog order, options in
/// the order their `subdivisions` list declares, parts by index; each part
/// contributes 2 genes (disk position) or 3 (rectangle position plus
/// orientation).
#[derive(Clone, Debug)]
pub struct GeneLayout<F> {
    parameterization: Parameterization,
    origin: Vec2<F>,
    container_radius: F,
    slices: Vec<GeneSlice>,
    lower: Vec<F>,
    upper: Vec<F>,
    /// component -> option -> range of indices into `slices`.
    option_slices: Vec<Vec<Range<usize>>>,
    /// component -> option -> expanded parts.
    parts: Vec<Vec<Vec<SubComponent<F>>>>,
}

impl<F: Scalar> GeneLayout<F> {
    pub fn build(
        catalog: &Catalog<F>,
        parameterization: Parameterization,
        container: &ContainerDisk<F>,
    ) -> Result<Self, Error> {
        let tau = F::of(std::f64::consts::TAU);
        let r = container.radius;
        let mut slices = Vec::new();
        let mut lower = Vec::new();
        let mut upper = Vec::new();
        let mut option_slices = Vec::with_capacity(catalog.len());
        let mut parts = Vec::with_capacity(catalog.len());
        for (ci, comp) in catalog.components().iter().enumerate() {
            let mut comp_ranges = Vec::with_capacity(comp.subdivisions.len());
            let mut comp_parts = Vec::with_capacity(comp.subdivisions.len());
            for (oi, &k) in comp.subdivisions.iter().enumerate() {
                let expanded = catalog.expand_subdivisions(ci, k)?;
                let begin = slices.len();
                for (pi, sub) in expanded.iter().enumerate() {
                    let offset = lower.len();
                    let len = sub.profile.genes_per_part();
                    match parameterization {
                        Parameterization::Cartesian => {
                            lower.push(-r);
                            upper.push(r);
                            lower.push(-r);
                            upper.push(r);
                        }
                        Parameterization::Polar => {
                            lower.push(F::zero());
                            upper.push(r);
                            lower.push(F::zero());
                            upper.push(tau);
                        }
                    }
                    if len == 3 {
                        lower.push(F::zero());
                        upper.push(tau);
                    }
                    slices.push(GeneSlice {
                        component: ci,
                        option: oi,
                        part: pi,
                        offset,
                        len,
                    });
                }
                comp_ranges.push(begin..slices.len());
                comp_parts.push(expanded);
            }
            option_slices.push(comp_ranges);
            parts.push(comp_parts);
        }
        Ok(Self {
            parameterization,
            origin: container.center,
            container_radius: container.radius,
            slices,
            lower,
            upper,
            option_slices,
            parts,
        })
    }

    /// Total chromosome length: 2 genes per disk part plus 3 per rectangle
    /// part, summed over all options of all components.
    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn parameterization(&self) -> Parameterization {
        self.parameterization
    }

    pub fn slices(&self) -> &[GeneSlice] {
        &self.slices
    }

    pub fn lower(&self) -> &[F] {
        &self.lower
    }

    pub fn upper(&self) -> &[F] {
        &self.upper
    }

    pub fn bounds(&self, gene: usize) -> (F, F) {
        (self.lower[gene], self.upper[gene])
    }

    /// Gene slices active under `selection`, in deterministic order.
    pub fn selected_slices<'a>(
        &'a self,
        selection: &'a [usize],
    ) -> impl Iterator<Item = &'a GeneSlice> {
        selection
            .iter()
            .enumerate()
            .flat_map(move |(ci, &oi)| self.option_slices[ci][oi].clone().map(|si| &self.slices[si]))
    }

    /// Marks which genes are read when decoding under `selection`.
    pub fn active_mask(&self, selection: &[usize]) -> Vec<bool> {
        let mut mask = vec![false; self.len()];
        for slice in self.selected_slices(selection) {
            mask[slice.offset..slice.offset + slice.len].fill(true);
        }
        mask
    }

    fn position_from_genes(&self, g0: F, g1: F) -> Vec2<F> {
        match self.parameterization {
            Parameterization::Cartesian => self.origin + Vec2::new(g0, g1),
            Parameterization::Polar => {
                let (s, c) = g1.sin_cos();
                self.origin + Vec2::new(g0 * c, g0 * s)
            }
        }
    }

    /// Decodes the genes of the selected subdivision options into placed
    /// shapes. Genes of unselected options are never read, so perturbing
    /// them cannot change the result.
    pub fn decode(
        &self,
        genes: &[F],
        selection: &[usize],
    ) -> Result<LayoutInstance<F>, Error> {
        if genes.len() != self.len() {
            return Err(Error::InvalidChromosome(format!(
                "chromosome has {} genes, layout expects {}",
                genes.len(),
                self.len()
            )));
        }
        if selection.len() != self.option_slices.len() {
            return Err(Error::InvalidSelection(format!(
                "selection has {} entries, catalog has {} components",
                selection.len(),
                self.option_slices.len()
            )));
        }
        let mut items = Vec::new();
        for (ci, &oi) in selection.iter().enumerate() {
            if oi >= self.option_slices[ci].len() {
                return Err(Error::InvalidSelection(format!(
                    "component {ci}: option index {oi} out of range (must be < {})",
                    self.option_slices[ci].len()
                )));
            }
            for si in self.option_slices[ci][oi].clone() {
                let slice = &self.slices[si];
                let sub = &self.parts[ci][oi][slice.part];
                let center = self.position_from_genes(genes[slice.offset], genes[slice.offset + 1]);
                let orientation = if slice.len == 3 {
                    genes[slice.offset + 2]
                } else {
                    F::zero()
                };
                items.push(PlacedItem {
                    shape: sub.place(center, orientation),
                    mass: sub.mass,
                    kind: sub.kind,
                    component: ci,
                    part: slice.part,
                });
            }
        }
        Ok(LayoutInstance { items })
    }

    /// Expanded parts for one (component, option) pair.
    pub fn parts_for(&self, component: usize, option: usize) -> &[SubComponent<F>] {
        &self.parts[component][option]
    }

    pub fn container_radius(&self) -> F {
        self.container_radius
    }

    pub fn origin(&self) -> Vec2<F> {
        self.origin
    }
}

/// One placed part of a decoded layout.
#[derive(Clone, Debug, PartialEq)]
pub struct PlacedItem<F> {
    pub shape: PlacedShape<F>,
    pub mass: F,
    pub kind: ComponentKind,
    /// Catalog index of the parent component.
    pub component: usize,
    /// Part index within the selected subdivision.
    pub part: usize,
}

/// A fully decoded layout: the placed parts of one configuration.
#[derive(Clone, Debug, PartialEq)]
pub struct LayoutInstance<F> {
    pub items: Vec<PlacedItem<F>>,
}

impl<F: Scalar> LayoutInstance<F> {
    pub fn total_mass(&self) -> F {
        self.items
            .iter()
            .map(|i| i.mass)
            .fold(F::zero(), |a, b| a + b)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }
}
