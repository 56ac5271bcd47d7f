use super::vec2::Point2;
use super::GeometryError;
use crate::scalar::{num, Scalar};
use serde::{Deserialize, Serialize};

/// Convex polygon, vertices in counter-clockwise order.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConvexPolygon<T> {
    vertices: Vec<Point2<T>>,
}

impl<T: Scalar> ConvexPolygon<T> {
    /// Builds a convex polygon from vertices in arbitrary order (convex hull
    /// of the input). Fails on degenerate (collinear) input.
    pub fn from_points(points: &[Point2<T>]) -> Result<Self, GeometryError> {
        let hull = convex_hull(points);
        if hull.len() < 3 {
            return Err(GeometryError::InvalidFootprint(
                "polygon is degenerate (fewer than 3 hull vertices)".into(),
            ));
        }
        Ok(Self { vertices: hull })
    }

    pub fn vertices(&self) -> &[Point2<T>] {
        &self.vertices
    }

    pub fn contains(&self, p: Point2<T>) -> bool {
        let n = self.vertices.len();
        for i in 0..n {
            let a = self.vertices[i];
            let b = self.vertices[(i + 1) % n];
            if (b - a).cross(p - a) < T::zero() {
                return false;
            }
        }
        true
    }

    /// Radius of the smallest origin-centered disc containing the polygon.
    pub fn radius(&self) -> T {
        self.vertices
            .iter()
            .map(|v| v.norm())
            .fold(T::zero(), |a, b| a.max(b))
    }

    /// Extent along the local x axis (front-to-rear length for a footprint).
    pub fn length(&self) -> T {
        let (lo, hi) = self.vertices.iter().fold(
            (T::infinity(), T::neg_infinity()),
            |(lo, hi), v| (lo.min(v.x), hi.max(v.x)),
        );
        hi - lo
    }

    /// Polygon rotated by `angle` then translated to `pos`.
    pub fn transformed(&self, pos: Point2<T>, angle: T) -> Self {
        Self {
            vertices: self
                .vertices
                .iter()
                .map(|v| v.rotated(angle) + pos)
                .collect(),
        }
    }

    /// Outward offset by `margin`, rounding corners with a circumscribed
    /// octagon so the result contains the exact disc-Minkowski sum.
    pub fn offset(&self, margin: T) -> Self {
        if margin <= T::zero() {
            return self.clone();
        }
        // Circumscribed regular octagon of the disc of radius `margin`.
        let r = margin / num::<T>(std::f64::consts::FRAC_PI_8).cos();
        let mut pts = Vec::with_capacity(self.vertices.len() * 8);
        for k in 0..8 {
            let ang = num::<T>(std::f64::consts::FRAC_PI_4) * num::<T>(k as f64)
                + num::<T>(std::f64::consts::FRAC_PI_8);
            let o = Point2::new(r * ang.cos(), r * ang.sin());
            for v in &self.vertices {
                pts.push(*v + o);
            }
        }
        Self {
            vertices: convex_hull(&pts),
        }
    }

    /// Convex hull of this polygon swept through headings
    /// `[-angle, +angle]`, sampled at the extremes and the center.
    pub fn swept_by_rotation(&self, angle: T) -> Self {
        if angle <= T::zero() {
            return self.clone();
        }
        let mut pts = Vec::with_capacity(self.vertices.len() * 3);
        for v in &self.vertices {
            pts.push(*v);
            pts.push(v.rotated(angle));
            pts.push(v.rotated(-angle));
        }
        Self {
            vertices: convex_hull(&pts),
        }
    }
}

/// Andrew monotone-chain convex hull; returns CCW vertices without the
/// closing duplicate. Collinear points on the hull boundary are dropped.
pub fn convex_hull<T: Scalar>(points: &[Point2<T>]) -> Vec<Point2<T>> {
    let mut pts: Vec<Point2<T>> = points.to_vec();
    pts.sort_by(|a, b| {
        a.x.partial_cmp(&b.x)
            .unwrap()
            .then(a.y.partial_cmp(&b.y).unwrap())
    });
    pts.dedup_by(|a, b| a.x == b.x && a.y == b.y);
    let n = pts.len();
    if n < 3 {
        return pts;
    }
    let mut hull: Vec<Point2<T>> = Vec::with_capacity(2 * n);
    for &p in pts.iter().chain(pts.iter().rev().skip(1)) {
        while hull.len() >= 2 {
            let a = hull[hull.len() - 2];
            let b = hull[hull.len() - 1];
            if (b - a).cross(p - a) <= T::zero() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull.pop();
    hull
}

/// Separating-axis test for two convex polygons. Touching counts as
/// intersecting.
pub fn polygons_intersect<T: Scalar>(a: &ConvexPolygon<T>, b: &ConvexPolygon<T>) -> bool {
    !has_separating_axis(a.vertices(), b.vertices()) && !has_separating_axis(b.vertices(), a.vertices())
}

fn has_separating_axis<T: Scalar>(reference: &[Point2<T>], other: &[Point2<T>]) -> bool {
    let n = reference.len();
    for i in 0..n {
        let edge = reference[(i + 1) % n] - reference[i];
        let axis = edge.perp();
        let (mut min_a, mut max_a) = (T::infinity(), T::neg_infinity());
        for v in reference {
            let q = v.dot(axis);
            min_a = min_a.min(q);
            max_a = max_a.max(q);
        }
        let (mut min_b, mut max_b) = (T::infinity(), T::neg_infinity());
        for v in other {
            let q = v.dot(axis);
            min_b = min_b.min(q);
            max_b = max_b.max(q);
        }
        if max_a < min_b || max_b < min_a {
            return true;
        }
    }
    false
}

/// Vehicle shape: a convex bounding polygon in the vehicle frame, centered
/// on the reference point that tracks the path.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Footprint<T> {
    polygon: ConvexPolygon<T>,
}

impl<T: Scalar> Footprint<T> {
    pub fn new(vertices: &[Point2<T>]) -> Result<Self, GeometryError> {
        let polygon = ConvexPolygon::from_points(vertices)?;
        if !polygon.contains(Point2::zero()) {
            return Err(GeometryError::InvalidFootprint(
                "footprint must contain its reference point (the origin)".into(),
            ));
        }
        Ok(Self { polygon })
    }

    pub fn polygon(&self) -> &ConvexPolygon<T> {
        &self.polygon
    }

    pub fn length(&self) -> T {
        self.polygon.length()
    }

    /// Convex hull of all footprint vertices of a set of vehicle classes:
    /// the conservative envelope used for path-pair region computation.
    pub fn envelope(footprints: &[&Footprint<T>]) -> Result<Self, GeometryError> {
        let pts: Vec<Point2<T>> = footprints
            .iter()
            .flat_map(|f| f.polygon.vertices().iter().copied())
            .collect();
        Self::new(&pts)
    }

    /// Deterministic 64-bit hash of the vertex data, used as a cache key.
    pub fn hash64(&self) -> u64 {
        let mut h = Fnv64::new();
        for v in self.polygon.vertices() {
            h.write_f64(v.x.to_f64_c());
            h.write_f64(v.y.to_f64_c());
        }
        h.finish()
    }
}

/// FNV-1a, fixed parameters: stable across platforms and releases.
pub(crate) struct Fnv64(u64);

impl Fnv64 {
    pub fn new() -> Self {
        Fnv64(0xcbf29ce484222325)
    }

    pub fn write_bytes(&mut self, bytes: &[u8]) {
        for &b in bytes {
            self.0 ^= b as u64;
            self.0 = self.0.wrapping_mul(0x100000001b3);
        }
    }

    pub fn write_f64(&mut self, v: f64) {
        self.write_bytes(&v.to_bits().to_le_bytes());
    }

    pub fn finish(&self) -> u64 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rect(hl: f64, hw: f64) -> ConvexPolygon<f64> {
        ConvexPolygon::from_points(&[
            Point2::new(hl, hw),
            Point2::new(-hl, hw),
            Point2::new(-hl, -hw),
            Point2::new(hl, -hw),
        ])
        .unwrap()
    }

    #[test]
    fn sat_detects_overlap_and_separation() {
        let a = rect(2.0, 1.0);
        let b = a.transformed(Point2::new(3.5, 0.0), 0.0);
        assert!(polygons_intersect(&a, &b));
        let c = a.transformed(Point2::new(4.5, 0.0), 0.0);
        assert!(!polygons_intersect(&a, &c));
        // Rotated near-miss.
        let d = a.transformed(Point2::new(0.0, 2.2), std::f64::consts::FRAC_PI_2);
        assert!(!polygons_intersect(&a, &d));
        let e = a.transformed(Point2::new(0.0, 1.9), std::f64::consts::FRAC_PI_2);
        assert!(polygons_intersect(&a, &e));
    }

    #[test]
    fn offset_contains_disc_sum() {
        let p = rect(2.0, 1.0);
        let q = p.offset(0.5);
        // Any point at distance <= 0.5 from the original boundary must be inside.
        for k in 0..64 {
            let ang = 2.0 * std::f64::consts::PI * (k as f64) / 64.0;
            let probe = Point2::new(2.0 + 0.5 * ang.cos(), 1.0 + 0.5 * ang.sin());
            if (probe.x - 2.0).max(probe.y - 1.0) <= 0.5 {
                // only probes actually within the sum
                let inside_sum = probe.x <= 2.5 && probe.y <= 1.5;
                if inside_sum {
                    assert!(q.contains(probe), "probe {probe:?} should be inside");
                }
            }
        }
        assert!(q.radius() > p.radius());
    }

    #[test]
    fn footprint_rejects_shape_not_containing_origin() {
        let pts = [
            Point2::new(1.0, 1.0),
            Point2::new(2.0, 1.0),
            Point2::new(2.0, 2.0),
            Point2::new(1.0, 2.0),
        ];
        assert!(Footprint::new(&pts).is_err());
    }

    #[test]
    fn hull_drops_interior_points() {
        let pts = [
            Point2::new(0.0, 0.0),
            Point2::new(4.0, 0.0),
            Point2::new(4.0, 4.0),
            Point2::new(0.0, 4.0),
            Point2::new(2.0, 2.0),
            Point2::new(1.0, 1.0),
        ];
        let hull = convex_hull(&pts);
        assert_eq!(hull.len(), 4);
    }
}
