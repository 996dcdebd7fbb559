//! Cartesian → Frenet projection onto a [`PolylineRef`].
//!
//! [`transf_kappa`] picks the nearest vertex (largest index on ties), decides
//! between the two pieces meeting there and projects with the fan of
//! angular bisectors ([`affine_trans`]) or, on the end rays, orthogonally
//! ([`parallel_trans`]).

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{cross, signed_line_distance, Vec2};
use crate::polyline::{FrenetCoord, PolylineRef};

/// Monotonicity tolerance for [`check_following`], in meters.
pub const EPS_MONO: f64 = 1e-6;
/// Station jumps above this multiple of the spacing count as discontinuities.
pub const JUMP_FACTOR: f64 = 5.0;

#[derive(Debug, Clone, Copy, PartialEq, Error)]
pub enum ProjectionError {
    #[error("piece index {m} is outside 1..={max}")]
    PieceOutOfRange { m: usize, max: usize },
    #[error("query point coincides with the fan center of piece {m}")]
    FanCenter { m: usize },
    #[error("query point lies on the line through the fan center of piece {m} parallel to it")]
    ParallelFanRay { m: usize },
}

/// Vertices nearest to a query point.
#[derive(Debug, Clone, PartialEq)]
pub struct NearestSet {
    pub indices: Vec<usize>,
    pub min_distance: f64,
}

impl NearestSet {
    /// Linear scan over all vertices. Members are within
    /// `1e-9 * (1 + min_distance)` of the minimum.
    pub fn compute(polyline: &PolylineRef, a: Vec2) -> Self {
        let dist: Vec<f64> = polyline.points().iter().map(|p| p.distance(a)).collect();
        let min_distance = dist.iter().copied().fold(f64::INFINITY, f64::min);
        let band = tie_tolerance(min_distance);
        let indices = dist
            .iter()
            .enumerate()
            .filter(|(_, &d)| d - min_distance <= band)
            .map(|(i, _)| i)
            .collect();
        Self { indices, min_distance }
    }

    pub fn largest(&self) -> usize {
        *self.indices.last().expect("nearest set is never empty")
    }
}

pub fn tie_tolerance(min_distance: f64) -> f64 {
    1e-9 * (1.0 + min_distance)
}

/// Projects `a` onto the extended polyline.
///
/// Degenerate fan queries (the fan center itself, or the line through it
/// parallel to the piece) fall back to the orthogonal transform on the
/// same piece.
pub fn transf_kappa(polyline: &PolylineRef, a: Vec2) -> FrenetCoord {
    let n = polyline.len();
    let mut m = NearestSet::compute(polyline, a).largest();
    if m == 0 || m == n - 1 {
        return parallel_trans(polyline, m, a);
    }
    let pts = polyline.points();
    let lm = pts[m];
    let v_plus = (a - lm).dot(pts[m + 1] - lm);
    let v_minus = (a - lm).dot(pts[m - 1] - lm);
    if v_minus < v_plus {
        m += 1;
    }
    affine_trans(polyline, m, a).unwrap_or_else(|_| parallel_trans(polyline, m, a))
}

/// Projects `a` with the fan of piece `m` (segment `L[m-1] -> L[m]`).
pub fn affine_trans(polyline: &PolylineRef, m: usize, a: Vec2) -> Result<FrenetCoord, ProjectionError> {
    let max = polyline.len() - 1;
    if m == 0 || m > max {
        return Err(ProjectionError::PieceOutOfRange { m, max });
    }
    let Some(fan) = polyline.fan(m) else {
        return Ok(parallel_trans(polyline, m, a));
    };
    if a == fan.center {
        return Err(ProjectionError::FanCenter { m });
    }
    let origin = polyline.points()[m - 1];
    let dir = polyline.segment_dir(m - 1);
    let d = signed_line_distance(a, origin, dir);
    let denom = fan.height - d;
    if denom == 0.0 {
        return Err(ProjectionError::ParallelFanRay { m });
    }
    let foot = fan.center + (a - fan.center) * (fan.height / denom);
    let s = polyline.cumulative_s()[m - 1] + (foot - origin).dot(dir);
    Ok(FrenetCoord::new(s, d))
}

/// Orthogonal projection onto the line of an end piece: `m = 0` is the
/// backward ray from `L[0]`, any other `m` the segment `L[m-1] -> L[m]`.
pub fn parallel_trans(polyline: &PolylineRef, m: usize, a: Vec2) -> FrenetCoord {
    let (k, base) = if m == 0 { (0, 0.0) } else { (m - 1, polyline.cumulative_s()[m - 1]) };
    let origin = polyline.points()[k];
    let dir = polyline.segment_dir(k);
    let v = a - origin;
    FrenetCoord::new(base + v.dot(dir), cross(dir, v))
}

/// Projects many points in parallel; output order matches input order.
pub fn project_all(polyline: &PolylineRef, points: &[Vec2]) -> Vec<FrenetCoord> {
    points.par_iter().map(|&p| transf_kappa(polyline, p)).collect()
}

/// Nearest-point projection by exhaustive station scan at `resolution`
/// steps over the extended polyline. Ties go to the largest station.
pub fn brute_force_project(polyline: &PolylineRef, a: Vec2, resolution: f64) -> FrenetCoord {
    assert!(resolution > 0.0, "resolution must be positive");
    let pts = polyline.points();
    let cum = polyline.cumulative_s();
    let n = pts.len();
    let total = polyline.total_length();
    let min_vertex = pts.iter().map(|p| p.distance(a)).fold(f64::INFINITY, f64::min);
    let reach = pts[0].distance(a).max(pts[n - 1].distance(a));
    let extension = (2.0 * reach).max(10.0 * min_vertex) + polyline.spacing();

    let steps_before = (extension / resolution).ceil() as i64;
    let steps_after = ((total + extension) / resolution).ceil() as i64;
    let mut best_s = 0.0;
    let mut best_dist = f64::INFINITY;
    let mut k = 0usize;
    for i in -steps_before..=steps_after {
        let s = i as f64 * resolution;
        let foot = if s < 0.0 {
            pts[0] + polyline.segment_dir(0) * s
        } else if s >= total {
            pts[n - 1] + polyline.segment_dir(n - 2) * (s - total)
        } else {
            while k + 2 < n && cum[k + 1] <= s {
                k += 1;
            }
            pts[k] + polyline.segment_dir(k) * (s - cum[k])
        };
        let dist = foot.distance(a);
        if dist < best_dist - tie_tolerance(best_dist.min(dist)) {
            best_dist = dist;
            best_s = s;
        } else if dist - best_dist <= tie_tolerance(best_dist) {
            best_s = s;
            best_dist = best_dist.min(dist);
        }
    }
    let foot = polyline.foot(best_s);
    let sign = if cross(foot.dir, a - foot.point) < 0.0 { -1.0 } else { 1.0 };
    FrenetCoord::new(best_s, sign * foot.point.distance(a))
}

/// Whether the projection of a moving point advances with it.
#[derive(Debug, Clone, PartialEq, Default, Serialize, Deserialize)]
pub struct FollowingReport {
    pub stations: Vec<f64>,
    /// Sign of each station increment (-1, 0 or +1).
    pub signs: Vec<i8>,
    pub reversal_detected: bool,
    pub discontinuity_detected: bool,
    /// Largest absolute station increment between consecutive samples.
    pub largest_gap: f64,
}

/// Projects every path point and flags station decreases beyond
/// [`EPS_MONO`] and jumps beyond `5 * spacing`. Repeated path points are
/// skipped since the query does not advance there.
pub fn check_following(polyline: &PolylineRef, path: &[Vec2]) -> FollowingReport {
    let jump_threshold = JUMP_FACTOR * polyline.spacing();
    let mut report = FollowingReport::default();
    let mut prev: Option<(Vec2, f64)> = None;
    for &p in path {
        if prev.is_some_and(|(q, _)| q == p) {
            continue;
        }
        let s = transf_kappa(polyline, p).s;
        report.stations.push(s);
        if let Some((_, s0)) = prev {
            let ds = s - s0;
            report.signs.push(if ds > 0.0 {
                1
            } else if ds < 0.0 {
                -1
            } else {
                0
            });
            report.reversal_detected |= ds < -EPS_MONO;
            report.discontinuity_detected |= ds.abs() > jump_threshold;
            report.largest_gap = report.largest_gap.max(ds.abs());
        }
        prev = Some((p, s));
    }
    report
}
