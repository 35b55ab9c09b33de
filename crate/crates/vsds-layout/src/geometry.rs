//! Exact 2D area kernels for disks, rectangles and a circular container.
//!
//! All lengths are millimetres, all areas mm². The three primitive kernels
//! (disk/disk lens, convex polygon clipping, disk/polygon decomposition) are
//! closed-form; no sampling or iteration is involved, so results are exact up
//! to floating-point rounding.

use std::ops::{Add, Mul, Neg, Sub};

use crate::Scalar;

/// Two-dimensional vector / point.
#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Vec2<F> {
    pub x: F,
    pub y: F,
}

impl<F: Scalar> Vec2<F> {
    #[inline]
    pub fn new(x: F, y: F) -> Self {
        Self { x, y }
    }

    #[inline]
    pub fn zero() -> Self {
        Self {
            x: F::zero(),
            y: F::zero(),
        }
    }

    #[inline]
    pub fn dot(self, other: Self) -> F {
        self.x * other.x + self.y * other.y
    }

    /// z-component of the 3D cross product; twice the signed area of the
    /// triangle (origin, self, other).
    #[inline]
    pub fn perp_dot(self, other: Self) -> F {
        self.x * other.y - self.y * other.x
    }

    #[inline]
    pub fn norm_sq(self) -> F {
        self.dot(self)
    }

    #[inline]
    pub fn norm(self) -> F {
        self.norm_sq().sqrt()
    }

    #[inline]
    pub fn distance(self, other: Self) -> F {
        (self - other).norm()
    }

    /// Counter-clockwise rotation by `angle` radians.
    #[inline]
    pub fn rotated(self, angle: F) -> Self {
        let (s, c) = angle.sin_cos();
        Self {
            x: c * self.x - s * self.y,
            y: s * self.x + c * self.y,
        }
    }
}

impl<F: Scalar> Add for Vec2<F> {
    type Output = Self;
    #[inline]
    fn add(self, rhs: Self) -> Self {
        Self::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl<F: Scalar> Sub for Vec2<F> {
    type Output = Self;
    #[inline]
    fn sub(self, rhs: Self) -> Self {
        Self::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl<F: Scalar> Mul<F> for Vec2<F> {
    type Output = Self;
    #[inline]
    fn mul(self, rhs: F) -> Self {
        Self::new(self.x * rhs, self.y * rhs)
    }
}

impl<F: Scalar> Neg for Vec2<F> {
    type Output = Self;
    #[inline]
    fn neg(self) -> Self {
        Self::new(-self.x, -self.y)
    }
}

/// A shape placed in the plane.
///
/// Rectangle `orientation` is counter-clockwise radians and is kept
/// normalized to `[0, 2π)` by the constructors.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum PlacedShape<F> {
    Disk {
        center: Vec2<F>,
        radius: F,
    },
    Rect {
        center: Vec2<F>,
        half_extents: Vec2<F>,
        orientation: F,
    },
}

/// Normalizes an angle into `[0, 2π)`.
#[inline]
pub fn normalize_angle<F: Scalar>(angle: F) -> F {
    let tau = F::of(std::f64::consts::TAU);
    let mut a = angle % tau;
    if a < F::zero() {
        a = a + tau;
    }
    // `angle % tau` can round to exactly tau for tiny negative inputs.
    if a >= tau {
        a = a - tau;
    }
    a
}

impl<F: Scalar> PlacedShape<F> {
    pub fn disk(center: Vec2<F>, radius: F) -> Self {
        Self::Disk { center, radius }
    }

    pub fn rect(center: Vec2<F>, half_extents: Vec2<F>, orientation: F) -> Self {
        Self::Rect {
            center,
            half_extents,
            orientation: normalize_angle(orientation),
        }
    }

    #[inline]
    pub fn center(&self) -> Vec2<F> {
        match *self {
            Self::Disk { center, .. } | Self::Rect { center, .. } => center,
        }
    }

    #[inline]
    pub fn area(&self) -> F {
        match *self {
            Self::Disk { radius, .. } => F::of(std::f64::consts::PI) * radius * radius,
            Self::Rect { half_extents, .. } => {
                F::of(4.0) * half_extents.x * half_extents.y
            }
        }
    }

    /// Radius of the smallest origin-centred disk (about the shape center)
    /// containing the shape. Used for cheap overlap rejection.
    #[inline]
    pub fn circumradius(&self) -> F {
        match *self {
            Self::Disk { radius, .. } => radius,
            Self::Rect { half_extents, .. } => half_extents.norm(),
        }
    }

    /// Rectangle corners in counter-clockwise order. Panics on disks.
    pub fn rect_vertices(&self) -> [Vec2<F>; 4] {
        match *self {
            Self::Rect {
                center,
                half_extents,
                orientation,
            } => {
                let (s, c) = orientation.sin_cos();
                let ex = Vec2::new(c, s) * half_extents.x;
                let ey = Vec2::new(-s, c) * half_extents.y;
                [
                    center + ex + ey,
                    center - ex + ey,
                    center - ex - ey,
                    center + ex - ey,
                ]
            }
            Self::Disk { .. } => panic!("rect_vertices called on a disk"),
        }
    }

    pub fn translated(&self, offset: Vec2<F>) -> Self {
        match *self {
            Self::Disk { center, radius } => Self::Disk {
                center: center + offset,
                radius,
            },
            Self::Rect {
                center,
                half_extents,
                orientation,
            } => Self::Rect {
                center: center + offset,
                half_extents,
                orientation,
            },
        }
    }

    /// Rigid rotation of the whole placement about `pivot`.
    pub fn rotated_about(&self, pivot: Vec2<F>, angle: F) -> Self {
        match *self {
            Self::Disk { center, radius } => Self::Disk {
                center: pivot + (center - pivot).rotated(angle),
                radius,
            },
            Self::Rect {
                center,
                half_extents,
                orientation,
            } => Self::Rect {
                center: pivot + (center - pivot).rotated(angle),
                half_extents,
                orientation: normalize_angle(orientation + angle),
            },
        }
    }
}

/// Circular container the layout must stay inside.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct ContainerDisk<F> {
    pub center: Vec2<F>,
    pub radius: F,
}

impl<F: Scalar> ContainerDisk<F> {
    pub fn new(center: Vec2<F>, radius: F) -> Self {
        Self { center, radius }
    }

    pub fn centered(radius: F) -> Self {
        Self::new(Vec2::zero(), radius)
    }

    #[inline]
    pub fn area(&self) -> F {
        F::of(std::f64::consts::PI) * self.radius * self.radius
    }
}

/// Area of the lens formed by two overlapping disks.
///
/// Closed form: split the lens along the chord joining the two circle
/// intersection points and add the two circular segments.
pub fn disk_disk_overlap_area<F: Scalar>(c0: Vec2<F>, r0: F, c1: Vec2<F>, r1: F) -> F {
    let d = c0.distance(c1);
    if d >= r0 + r1 {
        return F::zero();
    }
    let rmin = r0.min(r1);
    if d <= (r0 - r1).abs() {
        return F::of(std::f64::consts::PI) * rmin * rmin;
    }
    let two = F::of(2.0);
    let half = F::of(0.5);
    // Half-angles subtended by the chord at each center.
    let cos0 = ((d * d + r0 * r0 - r1 * r1) / (two * d * r0)).min(F::one()).max(-F::one());
    let cos1 = ((d * d + r1 * r1 - r0 * r0) / (two * d * r1)).min(F::one()).max(-F::one());
    let a0 = cos0.acos();
    let a1 = cos1.acos();
    let seg0 = r0 * r0 * (a0 - half * (two * a0).sin());
    let seg1 = r1 * r1 * (a1 - half * (two * a1).sin());
    seg0 + seg1
}

/// Twice the signed area of a polygon (shoelace formula).
fn shoelace2<F: Scalar>(poly: &[Vec2<F>]) -> F {
    let mut acc = F::zero();
    for i in 0..poly.len() {
        let j = (i + 1) % poly.len();
        acc = acc + poly[i].perp_dot(poly[j]);
    }
    acc
}

/// Clips `input` against the half-plane left of the directed edge `a -> b`
/// (Sutherland-Hodgman step).
fn clip_edge<F: Scalar>(input: &[Vec2<F>], a: Vec2<F>, b: Vec2<F>, output: &mut Vec<Vec2<F>>) {
    output.clear();
    let edge = b - a;
    let n = input.len();
    for i in 0..n {
        let cur = input[i];
        let next = input[(i + 1) % n];
        let side_cur = edge.perp_dot(cur - a);
        let side_next = edge.perp_dot(next - a);
        if side_cur >= F::zero() {
            output.push(cur);
        }
        if (side_cur > F::zero() && side_next < F::zero())
            || (side_cur < F::zero() && side_next > F::zero())
        {
            let t = side_cur / (side_cur - side_next);
            output.push(cur + (next - cur) * t);
        }
    }
}

/// Area of the intersection of two convex polygons (Sutherland-Hodgman
/// clipping followed by the shoelace formula). Accepts either winding;
/// degenerate inputs (fewer than 3 non-collinear vertices) yield zero.
pub fn convex_polygon_intersection_area<F: Scalar>(p: &[Vec2<F>], q: &[Vec2<F>]) -> F {
    if p.len() < 3 || q.len() < 3 {
        return F::zero();
    }
    let q_signed = shoelace2(q);
    if q_signed == F::zero() {
        return F::zero();
    }
    let mut subject: Vec<Vec2<F>> = p.to_vec();
    if shoelace2(&subject) < F::zero() {
        subject.reverse();
    }
    let mut scratch: Vec<Vec2<F>> = Vec::with_capacity(p.len() + q.len() + 2);
    let clip_ccw = q_signed > F::zero();
    let m = q.len();
    for i in 0..m {
        if subject.len() < 3 {
            return F::zero();
        }
        // Walk the clip polygon in CCW order regardless of its winding.
        let (a, b) = if clip_ccw {
            (q[i], q[(i + 1) % m])
        } else {
            (q[m - 1 - i], q[(2 * m - 2 - i) % m])
        };
        clip_edge(&subject, a, b, &mut scratch);
        std::mem::swap(&mut subject, &mut scratch);
    }
    if subject.len() < 3 {
        return F::zero();
    }
    (shoelace2(&subject) * F::of(0.5)).max(F::zero())
}

/// Signed disk/triangle intersection area for the triangle (origin, a, b)
/// against the disk of radius `r` centred at the origin. The sign follows
/// the orientation of (a, b).
fn disk_triangle_signed<F: Scalar>(r: F, a: Vec2<F>, b: Vec2<F>) -> F {
    let half = F::of(0.5);
    let cross = a.perp_dot(b);
    if cross == F::zero() {
        return F::zero();
    }
    let r2 = r * r;
    let inside_a = a.norm_sq() <= r2;
    let inside_b = b.norm_sq() <= r2;
    if inside_a && inside_b {
        return cross * half;
    }
    let sector = |p: Vec2<F>, q: Vec2<F>| -> F {
        half * r2 * p.perp_dot(q).atan2(p.dot(q))
    };
    // Intersect the segment a + t (b - a), t in [0, 1], with the circle.
    let d = b - a;
    let qa = d.norm_sq();
    let qb = F::of(2.0) * a.dot(d);
    let qc = a.norm_sq() - r2;
    let disc = qb * qb - F::of(4.0) * qa * qc;
    if disc <= F::zero() {
        // The chord misses the segment entirely; edge is outside the disk.
        return sector(a, b);
    }
    let sq = disc.sqrt();
    let inv = (F::of(2.0) * qa).recip();
    let t1 = ((-qb - sq) * inv).min(F::one()).max(F::zero());
    let t2 = ((-qb + sq) * inv).min(F::one()).max(F::zero());
    let cuts = [F::zero(), t1, t2, F::one()];
    let mut acc = F::zero();
    for w in 0..3 {
        let (s, e) = (cuts[w], cuts[w + 1]);
        if e <= s {
            continue;
        }
        let p = a + d * s;
        let q = a + d * e;
        let mid = a + d * (half * (s + e));
        if mid.norm_sq() <= r2 {
            acc = acc + p.perp_dot(q) * half;
        } else {
            acc = acc + sector(p, q);
        }
    }
    acc
}

/// Area of the intersection of a disk and a simple polygon.
///
/// The overlap is decomposed edge by edge into signed triangles and circular
/// sectors about the disk center; summing the signed contributions yields the
/// exact overlap area. Accepts either winding; degenerate polygons yield 0.
pub fn disk_polygon_overlap_area<F: Scalar>(center: Vec2<F>, radius: F, poly: &[Vec2<F>]) -> F {
    if poly.len() < 3 || radius <= F::zero() {
        return F::zero();
    }
    let signed2 = shoelace2(poly);
    if signed2 == F::zero() {
        return F::zero();
    }
    let flip = signed2 < F::zero();
    let mut acc = F::zero();
    let n = poly.len();
    for i in 0..n {
        let a = poly[i] - center;
        let b = poly[(i + 1) % n] - center;
        if flip {
            acc = acc - disk_triangle_signed(radius, b, a);
        } else {
            acc = acc + disk_triangle_signed(radius, a, b);
        }
    }
    acc.max(F::zero())
}

/// Overlap area between two placed shapes; symmetric and exact.
pub fn shape_overlap_area<F: Scalar>(a: &PlacedShape<F>, b: &PlacedShape<F>) -> F {
    // Bounding-circle rejection keeps the all-pairs constraint loop cheap.
    let gap = a.circumradius() + b.circumradius();
    if a.center().distance(b.center()) >= gap {
        return F::zero();
    }
    match (a, b) {
        (
            PlacedShape::Disk {
                center: c0,
                radius: r0,
            },
            PlacedShape::Disk {
                center: c1,
                radius: r1,
            },
        ) => disk_disk_overlap_area(*c0, *r0, *c1, *r1),
        (PlacedShape::Disk { center, radius }, rect @ PlacedShape::Rect { .. })
        | (rect @ PlacedShape::Rect { .. }, PlacedShape::Disk { center, radius }) => {
            disk_polygon_overlap_area(*center, *radius, &rect.rect_vertices())
        }
        (ra @ PlacedShape::Rect { .. }, rb @ PlacedShape::Rect { .. }) => {
            convex_polygon_intersection_area(&ra.rect_vertices(), &rb.rect_vertices())
        }
    }
}

/// Area of `shape` lying outside the container disk; zero when fully inside.
pub fn containment_deficit<F: Scalar>(shape: &PlacedShape<F>, container: &ContainerDisk<F>) -> F {
    let inside = match shape {
        PlacedShape::Disk { center, radius } => {
            disk_disk_overlap_area(*center, *radius, container.center, container.radius)
        }
        PlacedShape::Rect { .. } => disk_polygon_overlap_area(
            container.center,
            container.radius,
            &shape.rect_vertices(),
        ),
    };
    (shape.area() - inside).max(F::zero())
}

/// Euclidean distance between two shape centers.
#[inline]
pub fn centroid_distance<F: Scalar>(a: &PlacedShape<F>, b: &PlacedShape<F>) -> F {
    a.center().distance(b.center())
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    type V = Vec2<f64>;

    #[test]
    fn identical_disks_overlap_in_full_disk_area() {
        let c = V::new(3.0, -2.0);
        let a = disk_disk_overlap_area(c, 2.0, c, 2.0);
        assert_relative_eq!(a, PI * 4.0, max_relative = 1e-12);
    }

    #[test]
    fn distant_disks_do_not_overlap() {
        let a = disk_disk_overlap_area(V::new(0.0, 0.0), 1.0, V::new(5.0, 0.0), 1.5);
        assert_eq!(a, 0.0);
    }

    #[test]
    fn contained_disk_overlap_is_smaller_disk_area() {
        let a = disk_disk_overlap_area(V::new(0.0, 0.0), 5.0, V::new(1.0, 1.0), 1.0);
        assert_relative_eq!(a, PI, max_relative = 1e-12);
    }

    #[test]
    fn unit_disks_at_distance_one_form_the_classic_lens() {
        // 2 r^2 (alpha - sin(alpha) cos(alpha)) with alpha = acos(d / (2 r)).
        let a = disk_disk_overlap_area(V::new(0.0, 0.0), 1.0, V::new(1.0, 0.0), 1.0);
        let expected = 2.0 * PI / 3.0 - 3.0_f64.sqrt() / 2.0;
        assert_relative_eq!(a, expected, max_relative = 1e-12);
    }

    #[test]
    fn half_shifted_unit_squares_overlap_in_half() {
        let a = PlacedShape::rect(V::new(0.0, 0.0), V::new(0.5, 0.5), 0.0);
        let b = PlacedShape::rect(V::new(0.5, 0.0), V::new(0.5, 0.5), 0.0);
        assert_relative_eq!(shape_overlap_area(&a, &b), 0.5, max_relative = 1e-12);
    }

    #[test]
    fn square_intersected_with_its_45_degree_rotation_is_a_regular_octagon() {
        let a = PlacedShape::rect(V::zero(), V::new(0.5, 0.5), 0.0);
        let b = PlacedShape::rect(V::zero(), V::new(0.5, 0.5), PI / 4.0);
        let expected = 2.0 * (2.0_f64.sqrt() - 1.0);
        assert_relative_eq!(shape_overlap_area(&a, &b), expected, max_relative = 1e-12);
    }

    #[test]
    fn polygon_intersection_accepts_either_winding() {
        let p = [V::new(0.0, 0.0), V::new(2.0, 0.0), V::new(2.0, 2.0), V::new(0.0, 2.0)];
        let q_cw = [V::new(1.0, 1.0), V::new(1.0, 3.0), V::new(3.0, 3.0), V::new(3.0, 1.0)];
        assert_relative_eq!(
            convex_polygon_intersection_area(&p, &q_cw),
            1.0,
            max_relative = 1e-12
        );
    }

    #[test]
    fn degenerate_polygon_has_zero_intersection() {
        let line = [V::new(0.0, 0.0), V::new(1.0, 1.0), V::new(2.0, 2.0)];
        let square = [V::new(-1.0, -1.0), V::new(3.0, -1.0), V::new(3.0, 3.0), V::new(-1.0, 3.0)];
        assert_eq!(convex_polygon_intersection_area(&line, &square), 0.0);
        assert_eq!(convex_polygon_intersection_area(&square, &line), 0.0);
    }

    #[test]
    fn disk_inside_large_polygon_overlaps_in_disk_area() {
        let square = [
            V::new(-10.0, -10.0),
            V::new(10.0, -10.0),
            V::new(10.0, 10.0),
            V::new(-10.0, 10.0),
        ];
        let a = disk_polygon_overlap_area(V::new(1.0, -2.0), 1.5, &square);
        assert_relative_eq!(a, PI * 2.25, max_relative = 1e-12);
    }

    #[test]
    fn polygon_inside_disk_overlaps_in_polygon_area() {
        let square = [V::new(-1.0, -1.0), V::new(1.0, -1.0), V::new(1.0, 1.0), V::new(-1.0, 1.0)];
        let a = disk_polygon_overlap_area(V::zero(), 10.0, &square);
        assert_relative_eq!(a, 4.0, max_relative = 1e-12);
    }

    #[test]
    fn disk_and_polygon_disjoint_overlap_zero() {
        let square = [V::new(4.0, 4.0), V::new(5.0, 4.0), V::new(5.0, 5.0), V::new(4.0, 5.0)];
        let a = disk_polygon_overlap_area(V::zero(), 1.0, &square);
        assert_relative_eq!(a, 0.0, epsilon = 1e-12);
    }

    #[test]
    fn disk_halved_by_polygon_edge() {
        // Square covering exactly the right half-plane region of the disk.
        let square = [V::new(0.0, -5.0), V::new(5.0, -5.0), V::new(5.0, 5.0), V::new(0.0, 5.0)];
        let a = disk_polygon_overlap_area(V::zero(), 2.0, &square);
        assert_relative_eq!(a, PI * 4.0 / 2.0, max_relative = 1e-12);
    }

    #[test]
    fn shape_fully_inside_container_has_zero_deficit() {
        let container = ContainerDisk::centered(10.0);
        let rect = PlacedShape::rect(V::new(2.0, 1.0), V::new(1.0, 2.0), 0.3);
        assert_eq!(containment_deficit(&rect, &container), 0.0);
        let disk = PlacedShape::disk(V::new(-3.0, 4.0), 2.0);
        assert_relative_eq!(containment_deficit(&disk, &container), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn disk_straddling_the_rim_loses_exactly_the_outside_lens() {
        let container = ContainerDisk::centered(10.0);
        let disk = PlacedShape::disk(V::new(10.0, 0.0), 1.0);
        // Center on the rim: outside part is disk area minus the inner lens.
        let inner = disk_disk_overlap_area(V::new(10.0, 0.0), 1.0, V::zero(), 10.0);
        let d = containment_deficit(&disk, &container);
        assert_relative_eq!(d, PI - inner, max_relative = 1e-12);
        assert!(d > 0.0 && d < PI);
    }

    #[test]
    fn centroid_distance_is_center_distance() {
        let a = PlacedShape::disk(V::new(0.0, 0.0), 1.0);
        let b = PlacedShape::rect(V::new(3.0, 4.0), V::new(1.0, 1.0), 0.0);
        assert_relative_eq!(centroid_distance(&a, &b), 5.0, max_relative = 1e-15);
    }

    #[test]
    fn rect_vertices_are_counter_clockwise() {
        let rect = PlacedShape::rect(V::new(1.0, 2.0), V::new(2.0, 1.0), 0.7);
        let v = rect.rect_vertices();
        assert!(shoelace2(&v) > 0.0);
        assert_relative_eq!(shoelace2(&v) * 0.5, rect.area(), max_relative = 1e-12);
    }

    #[test]
    fn orientation_is_normalized_into_zero_two_pi() {
        let r = PlacedShape::rect(V::zero(), V::new(1.0, 1.0), -PI / 2.0);
        match r {
            PlacedShape::Rect { orientation, .. } => {
                assert_relative_eq!(orientation, 1.5 * PI, max_relative = 1e-12)
            }
            _ => unreachable!(),
        }
    }
}
