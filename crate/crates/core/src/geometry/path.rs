use super::vec2::Point2;
use super::GeometryError;
use crate::scalar::{num, Scalar};
use serde::{Deserialize, Serialize};

/// One sample of the reference curve: position and tangent heading.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct PathSample<T> {
    pub point: Point2<T>,
    pub heading: T,
}

/// Arc-length-parametrized reference path through the supervision area.
///
/// Stored as a polyline resampled at uniform spacing; station 0 is where the
/// front bumper enters the area and `s_out` is where the rear bumper has
/// fully left it.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Path<T> {
    pub id: String,
    samples: Vec<PathSample<T>>,
    spacing: T,
    s_out: T,
    xi: T,
    min_curve_radius: T,
}

impl<T: Scalar> Path<T> {
    /// Resamples `points` at uniform arc-length spacing and validates the
    /// lateral-error bound against the minimum radius of curvature.
    pub fn from_points(
        id: impl Into<String>,
        points: &[Point2<T>],
        spacing: T,
        xi: T,
        s_out: Option<T>,
    ) -> Result<Self, GeometryError> {
        let id = id.into();
        if points.len() < 2 {
            return Err(GeometryError::InvalidPath(format!(
                "path {id}: needs at least two points"
            )));
        }
        if spacing <= T::zero() {
            return Err(GeometryError::InvalidPath(format!(
                "path {id}: spacing must be positive"
            )));
        }
        if xi < T::zero() {
            return Err(GeometryError::InvalidPath(format!(
                "path {id}: lateral bound must be non-negative"
            )));
        }
        let total = polyline_length(points);
        if total <= spacing {
            return Err(GeometryError::InvalidPath(format!(
                "path {id}: shorter than one sample spacing"
            )));
        }
        let n = (total / spacing).to_f64_c().round() as usize;
        let step = total / num::<T>(n as f64);
        let mut samples = Vec::with_capacity(n + 1);
        for k in 0..=n {
            let s = step * num::<T>(k as f64);
            let (point, heading) = polyline_at(points, s);
            samples.push(PathSample { point, heading });
        }

        // Minimum radius of curvature, estimated from heading increments.
        let mut max_turn = T::zero();
        for w in samples.windows(2) {
            let d = angle_diff(w[1].heading, w[0].heading).abs();
            max_turn = max_turn.max(d);
        }
        let min_curve_radius = if max_turn > T::zero() {
            step / max_turn
        } else {
            T::infinity()
        };
        if xi >= min_curve_radius {
            return Err(GeometryError::InvalidPath(format!(
                "path {id}: lateral bound {xi} exceeds minimum curvature radius {min_curve_radius}; projections would be ambiguous"
            )));
        }

        let s_out = s_out.unwrap_or(total);
        if s_out <= T::zero() || s_out > total + spacing {
            return Err(GeometryError::InvalidPath(format!(
                "path {id}: exit station {s_out} outside the sampled curve"
            )));
        }
        Ok(Self {
            id,
            samples,
            spacing: step,
            s_out,
            xi,
            min_curve_radius,
        })
    }

    pub fn samples(&self) -> &[PathSample<T>] {
        &self.samples
    }

    pub fn spacing(&self) -> T {
        self.spacing
    }

    pub fn s_out(&self) -> T {
        self.s_out
    }

    pub fn xi(&self) -> T {
        self.xi
    }

    pub fn min_curve_radius(&self) -> T {
        self.min_curve_radius
    }

    pub fn total_len(&self) -> T {
        self.spacing * num::<T>((self.samples.len() - 1) as f64)
    }

    /// Pose at station `s` (clamped to the sampled range), by linear
    /// interpolation between samples.
    pub fn pose_at(&self, s: T) -> (Point2<T>, T) {
        let total = self.total_len();
        let s = s.max(T::zero()).min(total);
        let f = (s / self.spacing).to_f64_c();
        let i = (f.floor() as usize).min(self.samples.len() - 2);
        let t = (s - self.spacing * num::<T>(i as f64)) / self.spacing;
        let a = &self.samples[i];
        let b = &self.samples[i + 1];
        let point = a.point.lerp(b.point, t);
        let heading = a.heading + angle_diff(b.heading, a.heading) * t;
        (point, heading)
    }

    /// Projects a planar point to the path: returns (station, signed lateral
    /// offset), positive offset to the left of the travel direction.
    pub fn project(&self, p: Point2<T>) -> Result<(T, T), GeometryError> {
        let mut best_d2 = T::infinity();
        let mut best_s = T::zero();
        let mut best_seg = 0usize;
        let mut second_d2 = T::infinity();
        let mut second_seg = 0usize;
        for i in 0..self.samples.len() - 1 {
            let a = self.samples[i].point;
            let b = self.samples[i + 1].point;
            let ab = b - a;
            let len2 = ab.dot(ab);
            let t = (p - a).dot(ab) / len2;
            let t = t.max(T::zero()).min(T::one());
            let q = a + ab.scaled(t);
            let d2 = (p - q).dot(p - q);
            if d2 < best_d2 {
                if i != best_seg && i != best_seg + 1 && best_seg != i + 1 {
                    second_d2 = best_d2;
                    second_seg = best_seg;
                }
                best_d2 = d2;
                best_s = self.spacing * num::<T>(i as f64) + self.spacing * t;
                best_seg = i;
            } else if d2 < second_d2 && i > best_seg + 1 {
                second_d2 = d2;
                second_seg = i;
            }
        }
        let dist = best_d2.sqrt();
        if dist > self.xi {
            return Err(GeometryError::OutOfCorridor {
                distance: dist.to_f64_c(),
                xi: self.xi.to_f64_c(),
            });
        }
        // Two non-adjacent segments at (nearly) the same distance means the
        // corridor width invariant is violated for this point.
        if second_seg > best_seg + 1 || best_seg > second_seg + 1 {
            let tol = (self.spacing * num::<T>(1e-6)).max(num::<T>(1e-9));
            if second_d2.sqrt() - dist < tol {
                return Err(GeometryError::AmbiguousProjection {
                    station_a: best_s.to_f64_c(),
                    station_b: (self.spacing * num::<T>(second_seg as f64)).to_f64_c(),
                });
            }
        }
        let (_, heading) = self.pose_at(best_s);
        let tangent = Point2::new(heading.cos(), heading.sin());
        let (q, _) = self.pose_at(best_s);
        let offset = tangent.cross(p - q);
        Ok((best_s, offset))
    }
}

fn polyline_length<T: Scalar>(points: &[Point2<T>]) -> T {
    points.windows(2).map(|w| w[0].dist(w[1])).sum()
}

/// Point and heading at arc length `s` along a polyline.
fn polyline_at<T: Scalar>(points: &[Point2<T>], s: T) -> (Point2<T>, T) {
    let mut acc = T::zero();
    for w in points.windows(2) {
        let seg = w[0].dist(w[1]);
        if acc + seg >= s || acc + seg >= polyline_length(points) {
            let t = if seg > T::zero() { (s - acc) / seg } else { T::zero() };
            let t = t.max(T::zero()).min(T::one());
            let dir = w[1] - w[0];
            return (w[0].lerp(w[1], t), dir.y.atan2(dir.x));
        }
        acc = acc + seg;
    }
    let last = points.len() - 1;
    let dir = points[last] - points[last - 1];
    (points[last], dir.y.atan2(dir.x))
}

/// Difference `a - b` wrapped to (-pi, pi].
pub fn angle_diff<T: Scalar>(a: T, b: T) -> T {
    let two_pi = num::<T>(2.0 * std::f64::consts::PI);
    let mut d = a - b;
    while d > num::<T>(std::f64::consts::PI) {
        d = d - two_pi;
    }
    while d <= num::<T>(-std::f64::consts::PI) {
        d = d + two_pi;
    }
    d
}

/// Piecewise path segment for parametric path construction.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PathSegment {
    /// Straight run of `length` meters.
    Straight { length: f64 },
    /// Circular arc: positive `sweep_deg` turns left, `radius` in meters.
    Arc { radius: f64, sweep_deg: f64 },
}

/// Builds a dense point list for a composite path starting at `start` with
/// initial heading `heading_rad`, chaining the listed segments.
pub fn composite_points<T: Scalar>(
    start: Point2<T>,
    heading_rad: T,
    segments: &[PathSegment],
    step: T,
) -> Vec<Point2<T>> {
    let mut pts = vec![start];
    let mut pos = start;
    let mut heading = heading_rad;
    for seg in segments {
        match seg {
            PathSegment::Straight { length } => {
                let len = num::<T>(*length);
                let n = (len / step).to_f64_c().ceil().max(1.0) as usize;
                let dir = Point2::new(heading.cos(), heading.sin());
                for k in 1..=n {
                    let d = len * num::<T>(k as f64 / n as f64);
                    pts.push(pos + dir.scaled(d));
                }
                pos = *pts.last().unwrap();
            }
            PathSegment::Arc { radius, sweep_deg } => {
                let r = num::<T>(*radius);
                let sweep = num::<T>(sweep_deg.to_radians());
                let side = if sweep >= T::zero() { T::one() } else { -T::one() };
                let center = pos
                    + Point2::new(heading.cos(), heading.sin())
                        .perp()
                        .scaled(r * side);
                let arc_len = (r * sweep).abs();
                let n = (arc_len / step).to_f64_c().ceil().max(2.0) as usize;
                let start_ang = (pos - center).y.atan2((pos - center).x);
                for k in 1..=n {
                    let a = start_ang + sweep * num::<T>(k as f64 / n as f64);
                    pts.push(center + Point2::new(a.cos(), a.sin()).scaled(r));
                }
                pos = *pts.last().unwrap();
                heading = heading + sweep;
            }
        }
    }
    pts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn straight(len: f64) -> Path<f64> {
        let pts = [Point2::new(0.0, 0.0), Point2::new(len, 0.0)];
        Path::from_points("s", &pts, 0.25, 0.5, None).unwrap()
    }

    #[test]
    fn projects_point_on_straight_path() {
        let path = straight(90.0);
        let (s, off) = path.project(Point2::new(30.0, 0.0)).unwrap();
        assert!((s - path.s_out() / 3.0).abs() < 1e-9);
        assert!(off.abs() < 1e-12);
    }

    #[test]
    fn projects_displaced_point() {
        let path = straight(90.0);
        let (s, off) = path.project(Point2::new(10.0, 0.2)).unwrap();
        assert!((s - 10.0).abs() < 1e-9);
        assert!((off - 0.2).abs() < 1e-9);
        let (s2, off2) = path.project(Point2::new(10.0, -0.2)).unwrap();
        assert!((s2 - 10.0).abs() < 1e-9);
        assert!((off2 + 0.2).abs() < 1e-9);
    }

    #[test]
    fn rejects_point_outside_corridor() {
        let path = straight(90.0);
        let err = path.project(Point2::new(10.0, 2.0)).unwrap_err();
        assert!(matches!(err, GeometryError::OutOfCorridor { .. }));
    }

    #[test]
    fn quarter_circle_projection_matches_dense_argmin() {
        // Quarter circle of radius 20 centered at (0, 20).
        let center = Point2::new(0.0, 20.0);
        let r = 20.0;
        let pts: Vec<Point2<f64>> = (0..=400)
            .map(|k| {
                let a = -std::f64::consts::FRAC_PI_2
                    + std::f64::consts::FRAC_PI_2 * (k as f64) / 400.0;
                center + Point2::new(a.cos(), a.sin()).scaled(r)
            })
            .collect();
        let path = Path::from_points("arc", &pts, 0.25, 0.5, None).unwrap();

        let probe = Point2::new(r * 0.6_f64.cos() - 0.3 * 0.6_f64.cos(), 20.0 - r * 0.6_f64.sin() + 0.3 * 0.6_f64.sin());
        // Dense-sampling argmin oracle over 1e5 samples of the analytic arc.
        let mut best = (f64::INFINITY, 0.0);
        for k in 0..=100_000 {
            let a = -std::f64::consts::FRAC_PI_2
                + std::f64::consts::FRAC_PI_2 * (k as f64) / 100_000.0;
            let q = center + Point2::new(a.cos(), a.sin()).scaled(r);
            let d = q.dist(probe);
            if d < best.0 {
                best = (d, r * std::f64::consts::FRAC_PI_2 * (k as f64) / 100_000.0);
            }
        }
        let (s, _off) = path.project(probe).unwrap();
        assert!(
            (s - best.1).abs() <= path.spacing(),
            "projection {s} vs oracle {}",
            best.1
        );
    }

    #[test]
    fn projection_inverts_pose_lookup() {
        let pts = composite_points(
            Point2::new(0.0, 0.0),
            0.0,
            &[
                PathSegment::Straight { length: 30.0 },
                PathSegment::Arc { radius: 15.0, sweep_deg: 60.0 },
                PathSegment::Straight { length: 20.0 },
            ],
            0.05,
        );
        let path = Path::from_points("c", &pts, 0.25, 0.4, None).unwrap();
        let mut s = 0.5;
        while s < path.total_len() - 0.5 {
            let (p, _) = path.pose_at(s);
            let (s_back, off) = path.project(p).unwrap();
            assert!((s_back - s).abs() <= path.spacing(), "s={s} back={s_back}");
            assert!(off.abs() < 1e-6);
            s += 1.37;
        }
    }

    #[test]
    fn rejects_excessive_lateral_bound() {
        // Radius 5 arc with xi = 6 must fail the curvature check.
        let pts: Vec<Point2<f64>> = (0..=200)
            .map(|k| {
                let a = std::f64::consts::PI * (k as f64) / 200.0;
                Point2::new(5.0 * a.cos(), 5.0 * a.sin())
            })
            .collect();
        assert!(Path::from_points("tight", &pts, 0.25, 6.0, None).is_err());
    }
}
