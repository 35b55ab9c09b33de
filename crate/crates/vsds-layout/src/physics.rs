//! Planar inertia model used as the optimization objective.
//!
//! Every part is a thin lamina in the z = 0 plane. Local inertias are taken
//! about each part's own principal axes; the transform to frame-parallel
//! axes mixes the in-plane moments with `cos²`/`sin²` of the part
//! orientation (the local axes are principal, so no product terms appear)
//! and adds the parallel-axis mass terms. The objective is the sum
//! `I_x + I_y + I_z` about axes through the system centroid.

use crate::catalog::LayoutInstance;
use crate::error::Error;
use crate::geometry::{PlacedShape, Vec2};
use crate::Scalar;

/// Moments of inertia about the x, y and z axes, in kg·mm².
#[derive(Clone, Copy, Debug, PartialEq, Default)]
pub struct InertiaTriple<F> {
    pub x: F,
    pub y: F,
    pub z: F,
}

impl<F: Scalar> InertiaTriple<F> {
    pub fn sum(&self) -> F {
        self.x + self.y + self.z
    }
}

/// Mass centroid of a layout; the lamina lies in the z = 0 plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Centroid<F> {
    pub position: Vec2<F>,
    pub total_mass: F,
}

/// Inertia of a single part about its own centroidal principal axes.
///
/// Disk of radius r: `I_z = m r² / 2`, `I_x = I_y = m r² / 4`.
/// Rectangle with sides a, b: `I_z = m (a² + b²) / 12`, `I_x = m b² / 12`,
/// `I_y = m a² / 12`. Both satisfy the perpendicular-axis identity
/// `I_z = I_x + I_y`.
pub fn local_inertia<F: Scalar>(shape: &PlacedShape<F>, mass: F) -> InertiaTriple<F> {
    match *shape {
        PlacedShape::Disk { radius, .. } => {
            let q = mass * radius * radius;
            InertiaTriple {
                x: q * F::of(0.25),
                y: q * F::of(0.25),
                z: q * F::of(0.5),
            }
        }
        PlacedShape::Rect { half_extents, .. } => {
            let a2 = F::of(4.0) * half_extents.x * half_extents.x;
            let b2 = F::of(4.0) * half_extents.y * half_extents.y;
            let twelfth = F::of(1.0 / 12.0);
            InertiaTriple {
                x: mass * b2 * twelfth,
                y: mass * a2 * twelfth,
                z: mass * (a2 + b2) * twelfth,
            }
        }
    }
}

/// Inertia of a single placed part about axes parallel to the global frame
/// through `origin`.
pub fn global_inertia<F: Scalar>(
    shape: &PlacedShape<F>,
    mass: F,
    origin: Vec2<F>,
) -> InertiaTriple<F> {
    let local = local_inertia(shape, mass);
    let alpha = match *shape {
        PlacedShape::Disk { .. } => F::zero(),
        PlacedShape::Rect { orientation, .. } => orientation,
    };
    let (s, c) = alpha.sin_cos();
    let (c2, s2) = (c * c, s * s);
    let offset = shape.center() - origin;
    let (dx2, dy2) = (offset.x * offset.x, offset.y * offset.y);
    InertiaTriple {
        x: c2 * local.x + s2 * local.y + mass * dy2,
        y: s2 * local.x + c2 * local.y + mass * dx2,
        z: local.z + mass * (dx2 + dy2),
    }
}

/// Mass centroid of the layout. Errors on empty layouts.
pub fn system_centroid<F: Scalar>(layout: &LayoutInstance<F>) -> Result<Centroid<F>, Error> {
    if layout.items.is_empty() {
        return Err(Error::EmptyLayout);
    }
    let mut moment = Vec2::zero();
    let mut mass = F::zero();
    for item in &layout.items {
        moment = moment + item.shape.center() * item.mass;
        mass = mass + item.mass;
    }
    Ok(Centroid {
        position: moment * mass.recip(),
        total_mass: mass,
    })
}

/// System inertia about axes through the system centroid.
///
/// Computed by transforming every part directly to the centroid frame; this
/// is algebraically identical to summing about any fixed origin and then
/// applying the parallel-axis transfer with the total mass, but avoids the
/// large-term cancellation of that two-step form.
pub fn inertia_about_centroid<F: Scalar>(
    layout: &LayoutInstance<F>,
) -> Result<InertiaTriple<F>, Error> {
    let centroid = system_centroid(layout)?;
    let mut acc = InertiaTriple::default();
    for item in &layout.items {
        let g = global_inertia(&item.shape, item.mass, centroid.position);
        acc.x = acc.x + g.x;
        acc.y = acc.y + g.y;
        acc.z = acc.z + g.z;
    }
    Ok(acc)
}

/// Objective value: `I_x + I_y + I_z` about the system centroid.
pub fn total_inertia<F: Scalar>(layout: &LayoutInstance<F>) -> Result<F, Error> {
    Ok(inertia_about_centroid(layout)?.sum())
}
