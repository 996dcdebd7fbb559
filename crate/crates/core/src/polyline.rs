//! The sampled reference polyline `U`, its ray extensions and the
//! Frenet → Cartesian map defined on it.
//!
//! Vertices are indexed `0..n`. Piece `m` (for `1 <= m <= n-1`) is the
//! segment `L[m-1] -> L[m]`; the first and last segments are conceptually
//! extended to infinite rays so that every station has a foot point.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::ReferenceCurve;
use crate::geometry::{cross, is_parallel, line_intersection, signed_line_distance, Vec2};

/// Largest turning angle between consecutive pieces, in degrees.
pub const MAX_TURNING_ANGLE_DEG: f64 = 10.0;
/// Upper bound on `spacing * kappa_max`.
pub const SPACING_CURVATURE_RATIO: f64 = 0.1;
/// Relative tolerance on the uniform spacing of adjacent samples.
pub const SPACING_TOLERANCE: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PolylineError {
    #[error("polyline needs at least 2 points, got {0}")]
    TooFewPoints(usize),
    #[error("point {index} is not finite")]
    NonFinite { index: usize },
    #[error("points {index} and {} coincide", index + 1)]
    RepeatedPoint { index: usize },
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum SamplingError {
    #[error("sample spacing must be positive and finite, got {0}")]
    InvalidSpacing(f64),
    #[error("curve of length {length} m is too short for spacing {spacing} m")]
    TooShort { length: f64, spacing: f64 },
    #[error("interval {index} is {length} m long, expected the uniform spacing {spacing} m")]
    NonUniformSpacing { index: usize, length: f64, spacing: f64 },
    #[error("turning angle {degrees:.3}° at point {index} exceeds {limit}°")]
    TurningAngle { index: usize, degrees: f64, limit: f64 },
    #[error(
        "spacing {spacing} m times curvature {curvature} 1/m near point {index} is {product:.4}, above {limit}"
    )]
    CurvatureSpacing {
        index: usize,
        spacing: f64,
        curvature: f64,
        product: f64,
        limit: f64,
    },
}

/// Frenet coordinates relative to a [`PolylineRef`]: station along the
/// extended polyline and signed lateral offset (positive on the left).
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct FrenetCoord {
    pub s: f64,
    pub d: f64,
}

impl FrenetCoord {
    pub const fn new(s: f64, d: f64) -> Self {
        Self { s, d }
    }
}

/// Center of the projection fan of a piece: the intersection of the
/// angular bisectors at its two junctions.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Fan {
    pub center: Vec2,
    /// Signed distance of `center` from the piece's supporting line.
    pub height: f64,
}

/// Which part of the extended polyline a station falls on.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PieceRef {
    /// Ray running backward from `L[0]`.
    BackwardRay,
    /// Segment `L[k] -> L[k+1]`, i.e. piece `k + 1`.
    Segment(usize),
    /// Ray running forward from the last point.
    ForwardRay,
}

/// Foot point of a station on the extended polyline.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Foot {
    pub piece: PieceRef,
    pub point: Vec2,
    /// Unit direction of travel on the piece.
    pub dir: Vec2,
}

/// Sampled reference polyline.
#[derive(Debug, Clone, PartialEq)]
pub struct PolylineRef {
    points: Vec<Vec2>,
    cumulative_s: Vec<f64>,
    spacing: f64,
    kappa_max: f64,
    /// Arclength on the source curve of each vertex.
    curve_stations: Vec<f64>,
    /// Signed source-curve curvature at each vertex.
    vertex_curvature: Vec<f64>,
    /// Unit direction of each segment `k -> k+1`.
    dirs: Vec<Vec2>,
    /// Fan of piece `m`; index 0 is unused.
    fans: Vec<Option<Fan>>,
}

impl PolylineRef {
    /// Polyline from raw points. Only the structural invariants are checked
    /// (finite, at least two points, no repeated consecutive points); the
    /// sampling conditions are enforced by [`sample_polyline`].
    pub fn from_points(points: Vec<Vec2>) -> Result<Self, PolylineError> {
        Self::check_points(&points)?;
        let n = points.len();
        let cumulative_s = cumulative(&points);
        let spacing = cumulative_s.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
        let dirs = directions(&points);
        let mut vertex_curvature = vec![0.0; n];
        for j in 1..n - 1 {
            let turn = cross(dirs[j - 1], dirs[j]).atan2(dirs[j - 1].dot(dirs[j]));
            let half_lengths = 0.5 * (cumulative_s[j + 1] - cumulative_s[j - 1]);
            vertex_curvature[j] = turn / half_lengths;
        }
        let kappa_max = vertex_curvature.iter().fold(0.0_f64, |m, k| m.max(k.abs()));
        Ok(Self::assemble(points, cumulative_s, spacing, kappa_max, None, vertex_curvature))
    }

    fn check_points(points: &[Vec2]) -> Result<(), PolylineError> {
        if points.len() < 2 {
            return Err(PolylineError::TooFewPoints(points.len()));
        }
        if let Some(index) = points.iter().position(|p| !p.is_finite()) {
            return Err(PolylineError::NonFinite { index });
        }
        if let Some(index) = points.windows(2).position(|w| w[0] == w[1]) {
            return Err(PolylineError::RepeatedPoint { index });
        }
        Ok(())
    }

    fn assemble(
        points: Vec<Vec2>,
        cumulative_s: Vec<f64>,
        spacing: f64,
        kappa_max: f64,
        curve_stations: Option<Vec<f64>>,
        vertex_curvature: Vec<f64>,
    ) -> Self {
        let dirs = directions(&points);
        let curve_stations = curve_stations.unwrap_or_else(|| cumulative_s.clone());
        let mut poly = Self {
            points,
            cumulative_s,
            spacing,
            kappa_max,
            curve_stations,
            vertex_curvature,
            dirs,
            fans: Vec::new(),
        };
        poly.fans = (0..poly.points.len()).map(|m| poly.compute_fan(m)).collect();
        poly
    }

    pub fn points(&self) -> &[Vec2] {
        &self.points
    }

    pub fn cumulative_s(&self) -> &[f64] {
        &self.cumulative_s
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn spacing(&self) -> f64 {
        self.spacing
    }

    pub fn kappa_max(&self) -> f64 {
        self.kappa_max
    }

    pub fn total_length(&self) -> f64 {
        *self.cumulative_s.last().unwrap()
    }

    pub fn curve_stations(&self) -> &[f64] {
        &self.curve_stations
    }

    pub fn vertex_curvature(&self) -> &[f64] {
        &self.vertex_curvature
    }

    /// Unit direction of segment `k -> k+1`.
    pub fn segment_dir(&self, k: usize) -> Vec2 {
        self.dirs[k]
    }

    /// Heading of the angular bisector at junction `j`. At the two end
    /// points this is the normal of the single incident segment.
    pub fn bisector(&self, j: usize) -> Vec2 {
        let last = self.points.len() - 1;
        if j == 0 {
            return self.dirs[0].perp();
        }
        if j == last {
            return self.dirs[last - 1].perp();
        }
        let sum = self.dirs[j - 1].perp() + self.dirs[j].perp();
        // A full fold-back has no normal bisector; the pieces are separated
        // along the direction of travel instead.
        sum.normalized().unwrap_or(self.dirs[j - 1])
    }

    fn compute_fan(&self, m: usize) -> Option<Fan> {
        if m == 0 || m >= self.points.len() {
            return None;
        }
        let (b1, b2) = (self.bisector(m - 1), self.bisector(m));
        if is_parallel(b1, b2) {
            return None;
        }
        let origin = self.points[m - 1];
        let center = line_intersection(origin, b1, self.points[m], b2).ok()?;
        let height = signed_line_distance(center, origin, self.dirs[m - 1]);
        (height != 0.0 && height.is_finite()).then_some(Fan { center, height })
    }

    /// Fan of piece `m`, or `None` when its bisectors are parallel.
    pub fn fan(&self, m: usize) -> Option<Fan> {
        self.fans.get(m).copied().flatten()
    }

    /// Locates station `s` on the extended polyline. A station exactly on a
    /// joint belongs to the piece with the larger index.
    pub fn foot(&self, s: f64) -> Foot {
        let n = self.points.len();
        if s < 0.0 {
            let dir = self.dirs[0];
            return Foot {
                piece: PieceRef::BackwardRay,
                point: self.points[0] + dir * s,
                dir,
            };
        }
        let total = self.total_length();
        if s >= total {
            let dir = self.dirs[n - 2];
            return Foot {
                piece: PieceRef::ForwardRay,
                point: self.points[n - 1] + dir * (s - total),
                dir,
            };
        }
        let k = self.cumulative_s.partition_point(|&c| c <= s).saturating_sub(1).min(n - 2);
        let dir = self.dirs[k];
        Foot {
            piece: PieceRef::Segment(k),
            point: self.points[k] + dir * (s - self.cumulative_s[k]),
            dir,
        }
    }

    /// Ray-extended view of this polyline.
    pub fn extend_rays(&self) -> ExtendedPolyline<'_> {
        ExtendedPolyline { base: self }
    }

    /// Curvature of the polyline frame at station `s`: the inverse fan
    /// height of the piece containing `s`, zero on rays and straight runs.
    pub fn fan_curvature(&self, s: f64) -> f64 {
        match self.foot(s).piece {
            PieceRef::Segment(k) => self.fan(k + 1).map_or(0.0, |f| 1.0 / f.height),
            _ => 0.0,
        }
    }

    /// Maps a polyline station to the source-curve arclength, or `None` on
    /// the extension rays.
    pub fn curve_station(&self, s: f64) -> Option<f64> {
        let total = self.total_length();
        if !(0.0..=total).contains(&s) {
            return None;
        }
        let n = self.points.len();
        let k = self.cumulative_s.partition_point(|&c| c <= s).saturating_sub(1).min(n - 2);
        let (c0, c1) = (self.cumulative_s[k], self.cumulative_s[k + 1]);
        let (u0, u1) = (self.curve_stations[k], self.curve_stations[k + 1]);
        Some(u0 + (u1 - u0) * (s - c0) / (c1 - c0))
    }

    /// Index of the vertex whose station is closest to `s`.
    pub fn nearest_station_index(&self, s: f64) -> usize {
        let i = self.cumulative_s.partition_point(|&c| c < s);
        if i == 0 {
            return 0;
        }
        if i >= self.points.len() {
            return self.points.len() - 1;
        }
        if s - self.cumulative_s[i - 1] <= self.cumulative_s[i] - s {
            i - 1
        } else {
            i
        }
    }

    /// Checks the sampling conditions: uniform spacing (last interval
    /// excepted), bounded turning angles and `spacing * kappa <= 0.1`.
    pub fn validate_sampling(&self) -> Result<(), SamplingError> {
        let n = self.points.len();
        for (index, w) in self.cumulative_s.windows(2).enumerate().take(n.saturating_sub(2)) {
            let length = w[1] - w[0];
            if (length - self.spacing).abs() > SPACING_TOLERANCE * self.spacing {
                return Err(SamplingError::NonUniformSpacing {
                    index,
                    length,
                    spacing: self.spacing,
                });
            }
        }
        for index in 1..n - 1 {
            let (a, b) = (self.dirs[index - 1], self.dirs[index]);
            let degrees = cross(a, b).atan2(a.dot(b)).abs().to_degrees();
            if degrees > MAX_TURNING_ANGLE_DEG {
                return Err(SamplingError::TurningAngle {
                    index,
                    degrees,
                    limit: MAX_TURNING_ANGLE_DEG,
                });
            }
        }
        for (index, k) in self.vertex_curvature.iter().enumerate() {
            self.check_curvature_ratio(index, k.abs())?;
        }
        Ok(())
    }

    fn check_curvature_ratio(&self, index: usize, curvature: f64) -> Result<(), SamplingError> {
        let product = self.spacing * curvature;
        if product > SPACING_CURVATURE_RATIO * (1.0 + 1e-12) {
            return Err(SamplingError::CurvatureSpacing {
                index,
                spacing: self.spacing,
                curvature,
                product,
                limit: SPACING_CURVATURE_RATIO,
            });
        }
        Ok(())
    }
}

fn cumulative(points: &[Vec2]) -> Vec<f64> {
    let mut acc = 0.0;
    std::iter::once(0.0)
        .chain(points.windows(2).map(|w| {
            acc += w[0].distance(w[1]);
            acc
        }))
        .collect()
}

fn directions(points: &[Vec2]) -> Vec<Vec2> {
    points
        .windows(2)
        .map(|w| {
            let e = w[1] - w[0];
            e / e.norm()
        })
        .collect()
}

/// Logical view of a polyline whose end segments continue as rays.
#[derive(Debug, Clone, Copy)]
pub struct ExtendedPolyline<'a> {
    base: &'a PolylineRef,
}

impl ExtendedPolyline<'_> {
    pub fn foot(&self, s: f64) -> Vec2 {
        self.base.foot(s).point
    }

    /// Unit direction of the first ray (pointing backward from `L[0]`).
    pub fn backward_direction(&self) -> Vec2 {
        -self.base.dirs[0]
    }

    /// Unit direction of the last ray.
    pub fn forward_direction(&self) -> Vec2 {
        self.base.dirs[self.base.dirs.len() - 1]
    }
}

/// Samples `curve` at equal chord lengths `spacing` from its start; the
/// final interval ends at the curve's end point and may be shorter.
pub fn sample_polyline(curve: &ReferenceCurve, spacing: f64) -> Result<PolylineRef, SamplingError> {
    if !(spacing > 0.0 && spacing.is_finite()) {
        return Err(SamplingError::InvalidSpacing(spacing));
    }
    let total = curve.length();
    let end = curve.position(total);
    let mut stations = vec![0.0];
    let mut points = vec![curve.position(0.0)];

    loop {
        let s0 = *stations.last().unwrap();
        let p0 = *points.last().unwrap();
        let to_end = p0.distance(end);
        if to_end <= spacing * (1.0 + 1e-12) {
            if to_end > spacing * 1e-9 {
                stations.push(total);
                points.push(end);
            } else if stations.len() > 1 {
                *stations.last_mut().unwrap() = total;
                *points.last_mut().unwrap() = end;
            }
            break;
        }
        let s = next_chord_station(curve, s0, p0, spacing, total);
        stations.push(s);
        points.push(curve.position(s));
    }
    if points.len() < 2 {
        return Err(SamplingError::TooShort { length: total, spacing });
    }

    let cumulative_s = cumulative(&points);
    let vertex_curvature = stations
        .iter()
        .map(|&s| curve.curvature_at(s).unwrap_or(0.0))
        .collect();
    let (peak, peak_station) = curve.curvature_peak();
    let poly = PolylineRef::assemble(
        points,
        cumulative_s,
        spacing,
        peak,
        Some(stations.clone()),
        vertex_curvature,
    );
    poly.validate_sampling()?;
    // The peak may fall between samples (splines).
    let index = stations
        .iter()
        .enumerate()
        .min_by(|a, b| (a.1 - peak_station).abs().total_cmp(&(b.1 - peak_station).abs()))
        .map_or(0, |(i, _)| i);
    poly.check_curvature_ratio(index, peak)?;
    Ok(poly)
}

/// Smallest station after `s0` whose point lies exactly `spacing` away from
/// `p0`.
fn next_chord_station(curve: &ReferenceCurve, s0: f64, p0: Vec2, spacing: f64, total: f64) -> f64 {
    let gap = |s: f64| curve.position(s).distance(p0) - spacing;
    // A chord never exceeds its arc, so the root lies at or after s0 + spacing.
    let mut lo = (s0 + spacing).min(total);
    let g_lo = gap(lo);
    if g_lo.abs() <= 1e-12 * spacing || g_lo > 0.0 {
        return lo;
    }
    let mut hi = lo;
    let mut step = spacing * 0.1;
    loop {
        hi = (hi + step).min(total);
        if gap(hi) >= 0.0 || hi >= total {
            break;
        }
        lo = hi;
        step *= 2.0;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if gap(mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    hi
}

/// Cartesian point of Frenet coordinates `f` on the extended polyline.
///
/// On the rays and on pieces with parallel bisectors the offset is taken
/// along the piece normal. Elsewhere the point is placed on the fan ray
/// from the piece's bisector intersection through the foot point, at
/// signed distance `d` from the piece, which makes this map the exact
/// inverse of the affine projection and continuous across joints.
pub fn frenet_to_cartesian(polyline: &PolylineRef, f: FrenetCoord) -> Vec2 {
    let foot = polyline.foot(f.s);
    let fan = match foot.piece {
        PieceRef::Segment(k) => polyline.fan(k + 1),
        _ => None,
    };
    match fan {
        Some(fan) => foot.point + (fan.center - foot.point) * (f.d / fan.height),
        None => foot.point + foot.dir.perp() * f.d,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::PI;

    fn x_axis(n: usize) -> PolylineRef {
        PolylineRef::from_points((0..n).map(|i| Vec2::new(i as f64, 0.0)).collect()).unwrap()
    }

    #[test]
    fn straight_line_sampling() {
        let c = ReferenceCurve::line(Vec2::ZERO, Vec2::new(10.0, 0.0)).unwrap();
        let p = sample_polyline(&c, 1.0).unwrap();
        assert_eq!(p.len(), 11);
        for (i, q) in p.points().iter().enumerate() {
            assert_eq!(*q, Vec2::new(i as f64, 0.0));
        }
        assert_eq!(p.total_length(), 10.0);
    }

    #[test]
    fn arc_spacing_one_is_accepted() {
        let c = ReferenceCurve::arc(Vec2::ZERO, 10.0, 0.0, PI).unwrap();
        let p = sample_polyline(&c, 1.0).unwrap();
        // Equal chords of length 1 on a radius-10 circle turn by 2 asin(1/20).
        let expected = (2.0 * (0.05f64).asin()).to_degrees();
        let d = p.segment_dir(3);
        let e = p.segment_dir(4);
        assert_abs_diff_eq!(cross(d, e).atan2(d.dot(e)).to_degrees(), expected, epsilon = 1e-9);
        assert!(expected < 10.0 && expected > 5.7);
    }

    #[test]
    fn arc_spacing_two_is_rejected_on_turning_angle() {
        let c = ReferenceCurve::arc(Vec2::ZERO, 10.0, 0.0, PI).unwrap();
        match sample_polyline(&c, 2.0) {
            Err(SamplingError::TurningAngle { index, degrees, .. }) => {
                assert_eq!(index, 1);
                assert!(degrees > 11.4 && degrees < 11.5, "{degrees}");
            }
            other => panic!("expected turning-angle rejection, got {other:?}"),
        }
    }

    #[test]
    fn curvature_ratio_rejection_names_values() {
        // 7.6° per joint passes the angle rule but 2/15 > 0.1.
        let c = ReferenceCurve::arc(Vec2::ZERO, 15.0, 0.0, PI).unwrap();
        match sample_polyline(&c, 2.0) {
            Err(SamplingError::CurvatureSpacing { product, spacing, .. }) => {
                assert_eq!(spacing, 2.0);
                assert_abs_diff_eq!(product, 2.0 / 15.0, epsilon = 1e-12);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn sampled_length_within_chord_bound() {
        for (r, sp) in [(10.0, 1.0), (15.0, 0.5), (40.0, 2.0)] {
            let c = ReferenceCurve::arc(Vec2::new(1.0, 2.0), r, 0.3, 2.0).unwrap();
            let p = sample_polyline(&c, sp).unwrap();
            let k = 1.0 / r;
            let bound = 0.5 * k * k * sp * sp * c.length();
            assert!((p.total_length() - c.length()).abs() <= bound);
            p.validate_sampling().unwrap();
        }
    }

    #[test]
    fn partial_last_interval() {
        let c = ReferenceCurve::line(Vec2::ZERO, Vec2::new(10.3, 0.0)).unwrap();
        let p = sample_polyline(&c, 1.0).unwrap();
        assert_eq!(p.len(), 12);
        assert_abs_diff_eq!(p.total_length(), 10.3, epsilon = 1e-12);
    }

    #[test]
    fn frenet_to_cartesian_examples() {
        let p = x_axis(11);
        assert_eq!(frenet_to_cartesian(&p, FrenetCoord::new(3.0, 2.0)), Vec2::new(3.0, 2.0));
        assert_eq!(frenet_to_cartesian(&p, FrenetCoord::new(12.0, 1.0)), Vec2::new(12.0, 1.0));
        assert_eq!(frenet_to_cartesian(&p, FrenetCoord::new(-5.0, 0.0)), Vec2::new(-5.0, 0.0));
    }

    #[test]
    fn on_curve_identity_at_vertices() {
        let curves = [
            ReferenceCurve::u_road(30.0, 15.0).unwrap(),
            ReferenceCurve::arc(Vec2::ZERO, 10.0, 0.0, PI).unwrap(),
        ];
        for c in &curves {
            let p = sample_polyline(c, 0.5).unwrap();
            for (i, &s) in p.cumulative_s().iter().enumerate() {
                assert_eq!(frenet_to_cartesian(&p, FrenetCoord::new(s, 0.0)), p.points()[i]);
            }
        }
    }

    #[test]
    fn frenet_to_cartesian_continuous_across_joints() {
        let c = ReferenceCurve::u_road(30.0, 15.0).unwrap();
        let p = sample_polyline(&c, 0.5).unwrap();
        for j in 1..p.len() - 1 {
            let s = p.cumulative_s()[j];
            for d in [-5.0, 3.0, 12.0] {
                let before = frenet_to_cartesian(&p, FrenetCoord::new(s - 1e-9, d));
                let at = frenet_to_cartesian(&p, FrenetCoord::new(s, d));
                assert!(before.distance(at) < 1e-6, "joint {j} d {d}");
                // Same signed distance from both adjacent lines.
                let prev = signed_line_distance(at, p.points()[j - 1], p.segment_dir(j - 1));
                let next = signed_line_distance(at, p.points()[j], p.segment_dir(j));
                assert_abs_diff_eq!(prev, d, epsilon = 1e-9);
                assert_abs_diff_eq!(next, d, epsilon = 1e-9);
            }
        }
    }

    #[test]
    fn extension_rays() {
        let p = x_axis(11);
        let ext = p.extend_rays();
        assert_eq!(ext.foot(-5.0), Vec2::new(-5.0, 0.0));
        assert_eq!(ext.foot(13.0), Vec2::new(13.0, 0.0));

        let l = PolylineRef::from_points(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0)]).unwrap();
        let ext = l.extend_rays();
        assert_eq!(ext.backward_direction(), Vec2::new(-1.0, 0.0));
        assert_eq!(ext.foot(-2.0), Vec2::new(-2.0, 0.0));
        assert_eq!(ext.forward_direction(), Vec2::new(0.0, 1.0));
        assert_eq!(ext.foot(3.0), Vec2::new(1.0, 2.0));
    }

    #[test]
    fn joint_station_uses_larger_piece() {
        let l = PolylineRef::from_points(vec![Vec2::new(0.0, 0.0), Vec2::new(1.0, 0.0), Vec2::new(1.0, 1.0)]).unwrap();
        assert_eq!(l.foot(1.0).piece, PieceRef::Segment(1));
        assert_eq!(l.foot(2.0).piece, PieceRef::ForwardRay);
        assert_eq!(l.foot(0.0).piece, PieceRef::Segment(0));
    }

    #[test]
    fn raw_polyline_rejections() {
        assert!(matches!(PolylineRef::from_points(vec![Vec2::ZERO]), Err(PolylineError::TooFewPoints(1))));
        assert!(matches!(
            PolylineRef::from_points(vec![Vec2::ZERO, Vec2::ZERO]),
            Err(PolylineError::RepeatedPoint { index: 0 })
        ));
        assert!(PolylineRef::from_points(vec![Vec2::ZERO, Vec2::new(f64::NAN, 1.0)]).is_err());
    }

    #[test]
    fn regular_arc_fans_meet_at_center() {
        let c = ReferenceCurve::arc(Vec2::new(3.0, 4.0), 10.0, 0.0, PI).unwrap();
        let p = sample_polyline(&c, 1.0).unwrap();
        for m in 2..p.len() - 2 {
            let fan = p.fan(m).unwrap();
            assert!(fan.center.distance(Vec2::new(3.0, 4.0)) < 1e-9);
            assert_abs_diff_eq!(fan.height, 10.0 * (0.05f64).asin().cos(), epsilon = 1e-9);
        }
    }

    #[test]
    fn curve_station_lookup() {
        let c = ReferenceCurve::arc(Vec2::ZERO, 10.0, 0.0, PI).unwrap();
        let p = sample_polyline(&c, 1.0).unwrap();
        assert_eq!(p.curve_station(p.cumulative_s()[5]).unwrap(), p.curve_stations()[5]);
        assert!(p.curve_station(-0.1).is_none());
        assert_eq!(p.nearest_station_index(2.4), 2);
        assert_eq!(p.nearest_station_index(-3.0), 0);
        assert_eq!(p.nearest_station_index(1e6), p.len() - 1);
    }
}
