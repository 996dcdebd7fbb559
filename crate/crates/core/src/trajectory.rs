//! Corridor sampling of candidate trajectories and the `κ·d < 1` repair.

use std::ops::Range;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::curve::ReferenceCurve;
use crate::geometry::{segments_intersect, Segment, Vec2};
use crate::polyline::{frenet_to_cartesian, FrenetCoord, PolylineRef};
use crate::projection::{check_following, transf_kappa, FollowingReport};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CorridorError {
    #[error("corridor has {got} intervals but the polyline has {expected} points")]
    LengthMismatch { expected: usize, got: usize },
    #[error("interval {index} is empty: [{lower}, {upper}]")]
    EmptyInterval { index: usize, lower: f64, upper: f64 },
}

/// Lateral interval `[lower[c], upper[c]]` at every polyline station.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CorridorBounds {
    lower: Vec<f64>,
    upper: Vec<f64>,
}

impl CorridorBounds {
    pub fn new(lower: Vec<f64>, upper: Vec<f64>) -> Result<Self, CorridorError> {
        if lower.len() != upper.len() {
            return Err(CorridorError::LengthMismatch {
                expected: lower.len(),
                got: upper.len(),
            });
        }
        for (index, (&lo, &hi)) in lower.iter().zip(&upper).enumerate() {
            // Also rejects NaN bounds.
            if lo.partial_cmp(&hi).is_none_or(|o| o.is_gt()) {
                return Err(CorridorError::EmptyInterval { index, lower: lo, upper: hi });
            }
        }
        Ok(Self { lower, upper })
    }

    pub fn uniform(n: usize, lower: f64, upper: f64) -> Result<Self, CorridorError> {
        Self::new(vec![lower; n], vec![upper; n])
    }

    /// Checks that there is one interval per polyline point.
    pub fn check_for(&self, polyline: &PolylineRef) -> Result<(), CorridorError> {
        if self.lower.len() != polyline.len() {
            return Err(CorridorError::LengthMismatch {
                expected: polyline.len(),
                got: self.lower.len(),
            });
        }
        Ok(())
    }

    pub fn len(&self) -> usize {
        self.lower.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lower.is_empty()
    }

    pub fn lower(&self) -> &[f64] {
        &self.lower
    }

    pub fn upper(&self) -> &[f64] {
        &self.upper
    }

    pub fn interval(&self, c: usize) -> (f64, f64) {
        (self.lower[c], self.upper[c])
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Baseline,
    Repaired,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CandidateTrajectory {
    pub points: Vec<FrenetCoord>,
    pub provenance: Provenance,
    pub seed: u64,
}

impl CandidateTrajectory {
    /// Cartesian rendering on `polyline`.
    pub fn render(&self, polyline: &PolylineRef) -> Vec<Vec2> {
        self.points.iter().map(|&f| frenet_to_cartesian(polyline, f)).collect()
    }

    pub fn is_station_monotone(&self) -> bool {
        self.points.windows(2).all(|w| w[1].s > w[0].s)
    }

    /// Total amount by which points leave the corridor interval of their
    /// nearest station.
    pub fn bound_excess(&self, polyline: &PolylineRef, bounds: &CorridorBounds) -> f64 {
        self.points
            .iter()
            .map(|f| {
                let (lo, hi) = bounds.interval(polyline.nearest_station_index(f.s));
                (lo - f.d).max(0.0) + (f.d - hi).max(0.0)
            })
            .sum()
    }
}

/// Uniform draw on `[lo, hi]` from the top 53 bits of the next output.
fn uniform(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let u = (rng.next_u64() >> 11) as f64 * (1.0 / (1u64 << 53) as f64);
    (lo + (hi - lo) * u).min(hi)
}

/// One uniformly drawn offset per polyline station.
pub fn generate_baseline(polyline: &PolylineRef, bounds: &CorridorBounds, seed: u64) -> CandidateTrajectory {
    generate_baseline_window(polyline, bounds, seed, 0..polyline.len())
}

/// Like [`generate_baseline`] restricted to the stations in `window`.
pub fn generate_baseline_window(
    polyline: &PolylineRef,
    bounds: &CorridorBounds,
    seed: u64,
    window: Range<usize>,
) -> CandidateTrajectory {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let cum = polyline.cumulative_s();
    let points = window
        .map(|c| {
            let (lo, hi) = bounds.interval(c);
            FrenetCoord::new(cum[c], uniform(&mut rng, lo, hi))
        })
        .collect();
    CandidateTrajectory {
        points,
        provenance: Provenance::Baseline,
        seed,
    }
}

/// Whether a point at `f` may be kept as is: `κ·d < 1` for the source
/// curve at the matching arclength and for the polyline fan there.
fn keeps(curve: &ReferenceCurve, polyline: &PolylineRef, f: FrenetCoord) -> bool {
    let kappa = polyline
        .curve_station(f.s)
        .map_or(0.0, |u| curve.curvature_at(u).unwrap_or(0.0));
    kappa * f.d < 1.0 && polyline.fan_curvature(f.s) * f.d < 1.0
}

/// Re-projects points violating `κ·d < 1` and skips the stations they
/// overtake, so output stations strictly increase. Kept points are copied
/// unchanged.
pub fn repair_trajectory(curve: &ReferenceCurve, polyline: &PolylineRef, t: &CandidateTrajectory) -> CandidateTrajectory {
    let pts = &t.points;
    let mut out: Vec<FrenetCoord> = Vec::with_capacity(pts.len());
    let mut i = 0;
    while i < pts.len() {
        let f = pts[i];
        let last = out.last().map(|p| p.s);
        if keeps(curve, polyline, f) {
            if last.is_none_or(|s| f.s > s) {
                out.push(f);
            }
            i += 1;
            continue;
        }
        let g = transf_kappa(polyline, frenet_to_cartesian(polyline, f));
        if last.is_some_and(|s| g.s <= s) {
            i += 1;
            continue;
        }
        out.push(g);
        match (i + 1..pts.len()).find(|&j| pts[j].s > g.s) {
            Some(j) => i = j,
            None => break,
        }
    }
    CandidateTrajectory {
        points: out,
        provenance: Provenance::Repaired,
        seed: t.seed,
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub monotone: bool,
    pub self_intersection: bool,
    pub max_kappa_d: f64,
    pub following: FollowingReport,
}

impl ValidationReport {
    pub fn is_anomalous(&self) -> bool {
        !self.monotone || self.self_intersection || self.following.reversal_detected
    }
}

/// Whether any two non-adjacent segments of `path` intersect. Zero-length
/// steps are dropped first.
pub fn has_self_intersection(path: &[Vec2]) -> bool {
    let mut pts: Vec<Vec2> = Vec::with_capacity(path.len());
    for &p in path {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    let segs: Vec<Segment> = pts.windows(2).filter_map(|w| Segment::new(w[0], w[1]).ok()).collect();
    (0..segs.len()).any(|i| (i + 2..segs.len()).any(|j| segments_intersect(&segs[i], &segs[j])))
}

/// Monotonicity, self-intersection, peak `κ·|d|` and projection following
/// of a candidate. `κ` is the vertex curvature at the nearest station.
pub fn validate_candidate(polyline: &PolylineRef, t: &CandidateTrajectory) -> ValidationReport {
    let path = t.render(polyline);
    let max_kappa_d = t
        .points
        .iter()
        .map(|f| polyline.vertex_curvature()[polyline.nearest_station_index(f.s)].abs() * f.d.abs())
        .fold(0.0, f64::max);
    ValidationReport {
        monotone: t.is_station_monotone(),
        self_intersection: has_self_intersection(&path),
        max_kappa_d,
        following: check_following(polyline, &path),
    }
}
