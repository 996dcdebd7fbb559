//! Planar vector arithmetic and the handful of line/segment predicates the
//! projection and validation code is built on.

use std::ops::{Add, Div, Mul, Neg, Sub};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Relative threshold below which two directions are treated as parallel.
pub const PARALLEL_EPS: f64 = 1e-12;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeometryError {
    #[error("non-finite coordinate ({x}, {y})")]
    NonFinite { x: f64, y: f64 },
    #[error("degenerate segment: both endpoints at ({x}, {y})")]
    DegenerateSegment { x: f64, y: f64 },
    #[error("lines are parallel")]
    Parallel,
}

/// A point or direction in the plane, in meters.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Vec2 {
    pub x: f64,
    pub y: f64,
}

impl Vec2 {
    pub const ZERO: Vec2 = Vec2 { x: 0.0, y: 0.0 };

    #[inline]
    pub const fn new(x: f64, y: f64) -> Self {
        Self { x, y }
    }

    /// Checked constructor rejecting NaN and infinities.
    pub fn try_new(x: f64, y: f64) -> Result<Self, GeometryError> {
        if x.is_finite() && y.is_finite() {
            Ok(Self { x, y })
        } else {
            Err(GeometryError::NonFinite { x, y })
        }
    }

    #[inline]
    pub fn from_angle(theta: f64) -> Self {
        Self::new(theta.cos(), theta.sin())
    }

    #[inline]
    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }

    #[inline]
    pub fn dot(self, other: Vec2) -> f64 {
        dot(self, other)
    }

    #[inline]
    pub fn cross(self, other: Vec2) -> f64 {
        cross(self, other)
    }

    #[inline]
    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    #[inline]
    pub fn norm_squared(self) -> f64 {
        self.x * self.x + self.y * self.y
    }

    #[inline]
    pub fn distance(self, other: Vec2) -> f64 {
        (other - self).norm()
    }

    /// Unit vector in the same direction, or `None` for the zero vector.
    pub fn normalized(self) -> Option<Vec2> {
        let n = self.norm();
        (n > 0.0).then(|| self / n)
    }

    /// Counterclockwise rotation by 90 degrees.
    #[inline]
    pub fn perp(self) -> Vec2 {
        Vec2::new(-self.y, self.x)
    }

    #[inline]
    pub fn rotate(self, theta: f64) -> Vec2 {
        let (s, c) = theta.sin_cos();
        Vec2::new(c * self.x - s * self.y, s * self.x + c * self.y)
    }

    #[inline]
    pub fn angle(self) -> f64 {
        self.y.atan2(self.x)
    }

    #[inline]
    pub fn lerp(self, other: Vec2, t: f64) -> Vec2 {
        self + (other - self) * t
    }
}

impl From<[f64; 2]> for Vec2 {
    fn from([x, y]: [f64; 2]) -> Self {
        Vec2::new(x, y)
    }
}

impl From<Vec2> for [f64; 2] {
    fn from(v: Vec2) -> Self {
        [v.x, v.y]
    }
}

impl Add for Vec2 {
    type Output = Vec2;
    #[inline]
    fn add(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x + rhs.x, self.y + rhs.y)
    }
}

impl Sub for Vec2 {
    type Output = Vec2;
    #[inline]
    fn sub(self, rhs: Vec2) -> Vec2 {
        Vec2::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Mul<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x * rhs, self.y * rhs)
    }
}

impl Mul<Vec2> for f64 {
    type Output = Vec2;
    #[inline]
    fn mul(self, rhs: Vec2) -> Vec2 {
        rhs * self
    }
}

impl Div<f64> for Vec2 {
    type Output = Vec2;
    #[inline]
    fn div(self, rhs: f64) -> Vec2 {
        Vec2::new(self.x / rhs, self.y / rhs)
    }
}

impl Neg for Vec2 {
    type Output = Vec2;
    #[inline]
    fn neg(self) -> Vec2 {
        Vec2::new(-self.x, -self.y)
    }
}

/// A closed segment with distinct endpoints.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Segment {
    a: Vec2,
    b: Vec2,
}

impl Segment {
    pub fn new(a: Vec2, b: Vec2) -> Result<Self, GeometryError> {
        for p in [a, b] {
            if !p.is_finite() {
                return Err(GeometryError::NonFinite { x: p.x, y: p.y });
            }
        }
        if a == b {
            return Err(GeometryError::DegenerateSegment { x: a.x, y: a.y });
        }
        Ok(Self { a, b })
    }

    #[inline]
    pub fn a(&self) -> Vec2 {
        self.a
    }

    #[inline]
    pub fn b(&self) -> Vec2 {
        self.b
    }

    #[inline]
    pub fn direction(&self) -> Vec2 {
        self.b - self.a
    }

    #[inline]
    pub fn length(&self) -> f64 {
        self.direction().norm()
    }

    /// Distance from `p` to the closest point of the closed segment.
    pub fn clamped_distance(&self, p: Vec2) -> f64 {
        let e = self.direction();
        let t = ((p - self.a).dot(e) / e.norm_squared()).clamp(0.0, 1.0);
        p.distance(self.a + e * t)
    }
}

#[inline]
pub fn dot(u: Vec2, v: Vec2) -> f64 {
    u.x * v.x + u.y * v.y
}

/// z-component of the 3-D cross product.
#[inline]
pub fn cross(u: Vec2, v: Vec2) -> f64 {
    u.x * v.y - u.y * v.x
}

/// Perpendicular distance from `p` to the infinite line supporting `seg`.
pub fn point_to_segment_distance(p: Vec2, seg: &Segment) -> f64 {
    signed_line_distance(p, seg.a, seg.direction()).abs()
}

/// Signed distance from `p` to the line through `origin` along `dir`,
/// positive on the left of `dir`.
#[inline]
pub fn signed_line_distance(p: Vec2, origin: Vec2, dir: Vec2) -> f64 {
    cross(dir, p - origin) / dir.norm()
}

/// Orientation of `c` relative to the directed line `a -> b`: +1 left, -1
/// right, 0 collinear.
fn orientation(a: Vec2, b: Vec2, c: Vec2) -> i8 {
    let v = cross(b - a, c - a);
    if v > 0.0 {
        1
    } else if v < 0.0 {
        -1
    } else {
        0
    }
}

/// `q` collinear with `a -> b` lies within their bounding box.
fn on_segment(a: Vec2, b: Vec2, q: Vec2) -> bool {
    q.x >= a.x.min(b.x) && q.x <= a.x.max(b.x) && q.y >= a.y.min(b.y) && q.y <= a.y.max(b.y)
}

/// True iff the two closed segments share at least one point.
pub fn segments_intersect(s1: &Segment, s2: &Segment) -> bool {
    let (p1, q1, p2, q2) = (s1.a, s1.b, s2.a, s2.b);
    let o1 = orientation(p1, q1, p2);
    let o2 = orientation(p1, q1, q2);
    let o3 = orientation(p2, q2, p1);
    let o4 = orientation(p2, q2, q1);

    if o1 != o2 && o3 != o4 {
        return true;
    }
    (o1 == 0 && on_segment(p1, q1, p2))
        || (o2 == 0 && on_segment(p1, q1, q2))
        || (o3 == 0 && on_segment(p2, q2, p1))
        || (o4 == 0 && on_segment(p2, q2, q1))
}

/// Intersection of the lines `p1 + t dir1` and `p2 + u dir2`.
pub fn line_intersection(p1: Vec2, dir1: Vec2, p2: Vec2, dir2: Vec2) -> Result<Vec2, GeometryError> {
    let denom = cross(dir1, dir2);
    if denom.abs() <= PARALLEL_EPS * dir1.norm() * dir2.norm() {
        return Err(GeometryError::Parallel);
    }
    let t = cross(p2 - p1, dir2) / denom;
    Ok(p1 + dir1 * t)
}

/// Whether two directions are parallel under the relative threshold used by
/// [`line_intersection`].
#[inline]
pub fn is_parallel(dir1: Vec2, dir2: Vec2) -> bool {
    cross(dir1, dir2).abs() <= PARALLEL_EPS * dir1.norm() * dir2.norm()
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use proptest::prelude::*;

    fn seg(a: (f64, f64), b: (f64, f64)) -> Segment {
        Segment::new(Vec2::new(a.0, a.1), Vec2::new(b.0, b.1)).unwrap()
    }

    #[test]
    fn dot_examples() {
        assert_eq!(dot(Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0)), 0.0);
        assert_eq!(dot(Vec2::new(2.0, 3.0), Vec2::new(2.0, 3.0)), 13.0);
        assert_eq!(dot(Vec2::new(1.0, 2.0), Vec2::new(3.0, -1.0)), 1.0);
    }

    #[test]
    fn line_distance_examples() {
        let s = seg((-1.0, 0.0), (1.0, 0.0));
        assert_eq!(point_to_segment_distance(Vec2::new(0.0, 1.0), &s), 1.0);
        assert_eq!(point_to_segment_distance(Vec2::new(5.0, 0.0), &s), 0.0);
        let s = seg((0.0, 0.0), (1.0, 0.0));
        assert_eq!(point_to_segment_distance(Vec2::new(3.0, 4.0), &s), 4.0);
    }

    #[test]
    fn segment_rejects_degenerate_and_nan() {
        let p = Vec2::new(1.0, 1.0);
        assert!(matches!(Segment::new(p, p), Err(GeometryError::DegenerateSegment { .. })));
        assert!(Segment::new(p, Vec2::new(f64::NAN, 0.0)).is_err());
        assert!(Vec2::try_new(f64::INFINITY, 0.0).is_err());
    }

    #[test]
    fn intersect_examples() {
        assert!(segments_intersect(&seg((0.0, 0.0), (2.0, 2.0)), &seg((0.0, 2.0), (2.0, 0.0))));
        assert!(!segments_intersect(&seg((0.0, 0.0), (1.0, 0.0)), &seg((0.0, 1.0), (1.0, 1.0))));
        // touching at an endpoint counts
        assert!(segments_intersect(&seg((0.0, 0.0), (1.0, 0.0)), &seg((1.0, 0.0), (1.0, 1.0))));
        // collinear but disjoint
        assert!(!segments_intersect(&seg((0.0, 0.0), (1.0, 0.0)), &seg((2.0, 0.0), (3.0, 0.0))));
    }

    /// Rasterized oracle: march along `s1` and look for a sample within a
    /// small tolerance of `s2`.
    fn raster_intersects(s1: &Segment, s2: &Segment) -> bool {
        let n = 20_000;
        (0..=n).any(|i| {
            let p = s1.a().lerp(s1.b(), i as f64 / n as f64);
            s2.clamped_distance(p) < 1e-6
        })
    }

    #[test]
    fn collinear_overlap_matches_raster_oracle() {
        let cases = [
            (seg((0.0, 0.0), (2.0, 0.0)), seg((1.0, 0.0), (3.0, 0.0))),
            (seg((0.0, 0.0), (2.0, 2.0)), seg((1.0, 1.0), (1.5, 1.5))),
            (seg((0.0, 0.0), (1.0, 1.0)), seg((1.5, 1.5), (3.0, 3.0))),
            (seg((0.0, 1.0), (0.0, -1.0)), seg((0.0, 0.5), (0.0, 4.0))),
        ];
        for (a, b) in cases {
            assert_eq!(segments_intersect(&a, &b), raster_intersects(&a, &b), "{a:?} {b:?}");
        }
    }

    #[test]
    fn line_intersection_examples() {
        let p = line_intersection(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 0.0),
            Vec2::new(1.0, -1.0),
            Vec2::new(0.0, 1.0),
        )
        .unwrap();
        assert_eq!(p, Vec2::new(1.0, 0.0));

        let err = line_intersection(Vec2::ZERO, Vec2::new(1.0, 0.0), Vec2::new(0.0, 1.0), Vec2::new(2.0, 0.0));
        assert_eq!(err, Err(GeometryError::Parallel));

        let p = line_intersection(
            Vec2::new(0.0, 0.0),
            Vec2::new(1.0, 1.0),
            Vec2::new(2.0, 0.0),
            Vec2::new(-1.0, 1.0),
        )
        .unwrap();
        assert_abs_diff_eq!(p.x, 1.0, epsilon = 1e-15);
        assert_abs_diff_eq!(p.y, 1.0, epsilon = 1e-15);
    }

    fn finite() -> impl Strategy<Value = f64> {
        -100.0..100.0f64
    }

    fn vec2() -> impl Strategy<Value = Vec2> {
        (finite(), finite()).prop_map(|(x, y)| Vec2::new(x, y))
    }

    proptest! {
        #[test]
        fn dot_symmetric_bilinear(u in vec2(), v in vec2(), w in vec2(), k in finite()) {
            prop_assert_eq!(dot(u, v), dot(v, u));
            let lhs = dot(u * k + w, v);
            let rhs = k * dot(u, v) + dot(w, v);
            prop_assert!((lhs - rhs).abs() <= 1e-9 * (1.0 + lhs.abs().max(rhs.abs())));
        }

        #[test]
        fn line_distance_rigid_invariant(p in vec2(), a in vec2(), b in vec2(), theta in -3.2..3.2f64, t in vec2()) {
            prop_assume!(a.distance(b) > 1e-3);
            let s = Segment::new(a, b).unwrap();
            let moved = |q: Vec2| q.rotate(theta) + t;
            let s2 = Segment::new(moved(a), moved(b)).unwrap();
            let d1 = point_to_segment_distance(p, &s);
            let d2 = point_to_segment_distance(moved(p), &s2);
            prop_assert!((d1 - d2).abs() <= 1e-9 * (1.0 + d1) * (1.0 + a.norm() + b.norm() + p.norm() + t.norm()));
        }

        #[test]
        fn intersect_symmetric(a in vec2(), b in vec2(), c in vec2(), d in vec2()) {
            prop_assume!(a != b && c != d);
            let s1 = Segment::new(a, b).unwrap();
            let s2 = Segment::new(c, d).unwrap();
            prop_assert_eq!(segments_intersect(&s1, &s2), segments_intersect(&s2, &s1));
        }

        #[test]
        fn intersection_lies_on_both_lines(p1 in vec2(), d1 in vec2(), p2 in vec2(), d2 in vec2()) {
            prop_assume!(d1.norm() > 1e-3 && d2.norm() > 1e-3);
            prop_assume!(cross(d1, d2).abs() > 1e-3 * d1.norm() * d2.norm());
            let o = line_intersection(p1, d1, p2, d2).unwrap();
            let scale = 1.0 + p1.norm() + p2.norm() + o.norm();
            prop_assert!(signed_line_distance(o, p1, d1).abs() <= 1e-9 * scale);
            prop_assert!(signed_line_distance(o, p2, d2).abs() <= 1e-9 * scale);
        }
    }
}
