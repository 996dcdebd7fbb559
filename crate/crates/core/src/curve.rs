//! Arclength-parameterized reference curves.
//!
//! A [`ReferenceCurve`] is a C¹ chain of straight lines, circular arcs and
//! natural cubic splines. Every query takes the station `s` (arclength from
//! the start point) and the frame convention is fixed: the normal is the
//! tangent rotated +90°, so curvature is positive where the curve bends
//! toward the left.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{cross, Vec2};

/// Tolerance for accepting stations just outside `[0, length]`.
const STATION_SLACK: f64 = 1e-9;
const JOIN_POSITION_TOL: f64 = 1e-6;
const JOIN_TANGENT_TOL: f64 = 1e-6;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CurveError {
    #[error("non-finite curve parameter")]
    NonFinite,
    #[error("line has zero length")]
    ZeroLength,
    #[error("radius must be positive, got {0}")]
    NonPositiveRadius(f64),
    #[error("arc sweep must be nonzero and at most one turn, got {0} rad")]
    InvalidSweep(f64),
    #[error("spline needs at least 2 waypoints, got {0}")]
    TooFewWaypoints(usize),
    #[error("waypoints {index} and {} coincide", index + 1)]
    DuplicateWaypoint { index: usize },
    #[error("composite curve is empty")]
    Empty,
    #[error("piece {index} starts {gap} m away from the end of the previous piece")]
    Discontinuous { index: usize, gap: f64 },
    #[error("piece {index} meets the previous piece with a {angle} rad tangent break")]
    TangentBreak { index: usize, angle: f64 },
    #[error("station {s} outside [0, {length}]")]
    StationOutOfRange { s: f64, length: f64 },
}

/// Declarative description of a reference curve, as found in scenario files.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum CurveSpec {
    Line {
        start: [f64; 2],
        end: [f64; 2],
    },
    Arc {
        center: [f64; 2],
        radius: f64,
        start_angle_deg: f64,
        /// Signed sweep; positive turns counterclockwise.
        sweep_deg: f64,
    },
    Spline {
        waypoints: Vec<[f64; 2]>,
    },
    /// Straight, counterclockwise half circle, straight back.
    URoad {
        straight_length: f64,
        radius: f64,
    },
    Composite {
        pieces: Vec<CurveSpec>,
    },
}

impl CurveSpec {
    pub fn build(&self) -> Result<ReferenceCurve, CurveError> {
        match self {
            CurveSpec::Line { start, end } => ReferenceCurve::line((*start).into(), (*end).into()),
            CurveSpec::Arc {
                center,
                radius,
                start_angle_deg,
                sweep_deg,
            } => ReferenceCurve::arc(
                (*center).into(),
                *radius,
                start_angle_deg.to_radians(),
                sweep_deg.to_radians(),
            ),
            CurveSpec::Spline { waypoints } => {
                ReferenceCurve::spline(waypoints.iter().map(|&p| p.into()).collect())
            }
            CurveSpec::URoad {
                straight_length,
                radius,
            } => ReferenceCurve::u_road(*straight_length, *radius),
            CurveSpec::Composite { pieces } => {
                let parts = pieces.iter().map(CurveSpec::build).collect::<Result<Vec<_>, _>>()?;
                ReferenceCurve::composite(parts)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
enum Piece {
    Line {
        start: Vec2,
        dir: Vec2,
        length: f64,
    },
    Arc {
        center: Vec2,
        radius: f64,
        start_angle: f64,
        /// +1 counterclockwise, -1 clockwise.
        turn: f64,
        length: f64,
    },
    Spline(Box<CubicSpline>),
}

impl Piece {
    fn length(&self) -> f64 {
        match self {
            Piece::Line { length, .. } | Piece::Arc { length, .. } => *length,
            Piece::Spline(sp) => sp.length(),
        }
    }

    fn position(&self, s: f64) -> Vec2 {
        match self {
            Piece::Line { start, dir, .. } => *start + *dir * s,
            Piece::Arc {
                center,
                radius,
                start_angle,
                turn,
                ..
            } => *center + Vec2::from_angle(start_angle + turn * s / radius) * *radius,
            Piece::Spline(sp) => sp.position(sp.param_at(s)),
        }
    }

    fn tangent(&self, s: f64) -> Vec2 {
        match self {
            Piece::Line { dir, .. } => *dir,
            Piece::Arc {
                radius,
                start_angle,
                turn,
                ..
            } => Vec2::from_angle(start_angle + turn * s / radius).perp() * *turn,
            Piece::Spline(sp) => {
                let d = sp.derivative(sp.param_at(s));
                d / d.norm()
            }
        }
    }

    fn curvature(&self, s: f64) -> f64 {
        match self {
            Piece::Line { .. } => 0.0,
            Piece::Arc { radius, turn, .. } => turn / radius,
            Piece::Spline(sp) => sp.curvature(sp.param_at(s)),
        }
    }

    /// Largest |curvature| on the piece and the local station where it occurs.
    fn curvature_peak(&self) -> (f64, f64) {
        match self {
            Piece::Line { .. } => (0.0, 0.0),
            Piece::Arc { radius, .. } => (1.0 / radius, 0.0),
            Piece::Spline(sp) => sp.curvature_peak(),
        }
    }
}

/// A C¹ planar reference curve queried by arclength.
#[derive(Debug, Clone, PartialEq)]
pub struct ReferenceCurve {
    pieces: Vec<Piece>,
    /// Station at which each piece starts.
    starts: Vec<f64>,
    length: f64,
}

impl ReferenceCurve {
    fn single(piece: Piece) -> Self {
        let length = piece.length();
        Self {
            pieces: vec![piece],
            starts: vec![0.0],
            length,
        }
    }

    pub fn line(start: Vec2, end: Vec2) -> Result<Self, CurveError> {
        if !start.is_finite() || !end.is_finite() {
            return Err(CurveError::NonFinite);
        }
        let delta = end - start;
        let length = delta.norm();
        if length == 0.0 {
            return Err(CurveError::ZeroLength);
        }
        Ok(Self::single(Piece::Line {
            start,
            dir: delta / length,
            length,
        }))
    }

    /// Circular arc around `center`, starting at polar angle `start_angle`
    /// and sweeping `sweep` radians (positive = counterclockwise).
    pub fn arc(center: Vec2, radius: f64, start_angle: f64, sweep: f64) -> Result<Self, CurveError> {
        if !center.is_finite() || !radius.is_finite() || !start_angle.is_finite() || !sweep.is_finite() {
            return Err(CurveError::NonFinite);
        }
        if radius <= 0.0 {
            return Err(CurveError::NonPositiveRadius(radius));
        }
        if sweep == 0.0 || sweep.abs() > std::f64::consts::TAU {
            return Err(CurveError::InvalidSweep(sweep));
        }
        Ok(Self::single(Piece::Arc {
            center,
            radius,
            start_angle,
            turn: sweep.signum(),
            length: radius * sweep.abs(),
        }))
    }

    /// Natural cubic spline through `waypoints`, reparameterized by arclength.
    pub fn spline(waypoints: Vec<Vec2>) -> Result<Self, CurveError> {
        Ok(Self::single(Piece::Spline(Box::new(CubicSpline::new(waypoints)?))))
    }

    /// Chains curves end to end, requiring matching positions and tangents.
    pub fn composite(parts: Vec<ReferenceCurve>) -> Result<Self, CurveError> {
        if parts.is_empty() {
            return Err(CurveError::Empty);
        }
        let mut pieces = Vec::new();
        let mut starts = Vec::new();
        let mut length = 0.0;
        for part in parts {
            for piece in part.pieces {
                if let Some(prev) = pieces.last() {
                    let prev: &Piece = prev;
                    let end = prev.position(prev.length());
                    let gap = end.distance(piece.position(0.0));
                    let scale = 1.0 + end.norm();
                    if gap > JOIN_POSITION_TOL * scale {
                        return Err(CurveError::Discontinuous {
                            index: pieces.len(),
                            gap,
                        });
                    }
                    let t0 = prev.tangent(prev.length());
                    let t1 = piece.tangent(0.0);
                    let angle = cross(t0, t1).atan2(t0.dot(t1)).abs();
                    if angle > JOIN_TANGENT_TOL {
                        return Err(CurveError::TangentBreak {
                            index: pieces.len(),
                            angle,
                        });
                    }
                }
                starts.push(length);
                length += piece.length();
                pieces.push(piece);
            }
        }
        Ok(Self { pieces, starts, length })
    }

    /// Straight of `straight_length` along +x from the origin, a
    /// counterclockwise half circle of `radius`, and a straight back along -x.
    pub fn u_road(straight_length: f64, radius: f64) -> Result<Self, CurveError> {
        if !straight_length.is_finite() || !radius.is_finite() {
            return Err(CurveError::NonFinite);
        }
        if radius <= 0.0 {
            return Err(CurveError::NonPositiveRadius(radius));
        }
        let l = straight_length;
        let top = 2.0 * radius;
        Self::composite(vec![
            Self::line(Vec2::new(0.0, 0.0), Vec2::new(l, 0.0))?,
            Self::arc(
                Vec2::new(l, radius),
                radius,
                -std::f64::consts::FRAC_PI_2,
                std::f64::consts::PI,
            )?,
            Self::line(Vec2::new(l, top), Vec2::new(0.0, top))?,
        ])
    }

    pub fn length(&self) -> f64 {
        self.length
    }

    fn locate(&self, s: f64) -> (&Piece, f64) {
        let s = s.clamp(0.0, self.length);
        let idx = self.starts.partition_point(|&st| st <= s).saturating_sub(1);
        let piece = &self.pieces[idx];
        (piece, (s - self.starts[idx]).min(piece.length()))
    }

    /// Position r(s); stations are clamped to the curve.
    pub fn position(&self, s: f64) -> Vec2 {
        let (p, ls) = self.locate(s);
        p.position(ls)
    }

    /// Unit tangent at station `s` (clamped).
    pub fn tangent(&self, s: f64) -> Vec2 {
        let (p, ls) = self.locate(s);
        p.tangent(ls)
    }

    /// Unit normal, the tangent rotated +90°.
    pub fn normal(&self, s: f64) -> Vec2 {
        self.tangent(s).perp()
    }

    /// Signed curvature ⟨dt/ds, n⟩ at station `s`.
    pub fn curvature_at(&self, s: f64) -> Result<f64, CurveError> {
        if !s.is_finite() || s < -STATION_SLACK || s > self.length + STATION_SLACK {
            return Err(CurveError::StationOutOfRange {
                s,
                length: self.length,
            });
        }
        let (p, ls) = self.locate(s);
        Ok(p.curvature(ls))
    }

    /// Maximum |curvature| over the curve and the station where it occurs.
    pub fn curvature_peak(&self) -> (f64, f64) {
        self.pieces
            .iter()
            .zip(&self.starts)
            .map(|(p, &st)| {
                let (k, ls) = p.curvature_peak();
                (k, st + ls)
            })
            .fold((0.0, 0.0), |best, cur| if cur.0 > best.0 { cur } else { best })
    }

    pub fn kappa_max(&self) -> f64 {
        self.curvature_peak().0
    }
}

// Five-point Gauss–Legendre rule on [-1, 1].
const GL_NODES: [f64; 5] = [
    0.0,
    -0.538_469_310_105_683_1,
    0.538_469_310_105_683_1,
    -0.906_179_845_938_664,
    0.906_179_845_938_664,
];
const GL_WEIGHTS: [f64; 5] = [
    0.568_888_888_888_888_9,
    0.478_628_670_499_366_5,
    0.478_628_670_499_366_5,
    0.236_926_885_056_189_1,
    0.236_926_885_056_189_1,
];
/// Quadrature sub-intervals per spline segment.
const ARC_TABLE_DIVISIONS: usize = 32;
const ARC_INVERSE_TOL: f64 = 1e-10;

/// One cubic per coordinate on each knot interval, `c0 + c1 t + c2 t² + c3 t³`.
#[derive(Debug, Clone, PartialEq)]
struct CubicSegment {
    x: [f64; 4],
    y: [f64; 4],
}

impl CubicSegment {
    fn eval(c: &[f64; 4], t: f64) -> f64 {
        ((c[3] * t + c[2]) * t + c[1]) * t + c[0]
    }

    fn d1(c: &[f64; 4], t: f64) -> f64 {
        (3.0 * c[3] * t + 2.0 * c[2]) * t + c[1]
    }

    fn d2(c: &[f64; 4], t: f64) -> f64 {
        6.0 * c[3] * t + 2.0 * c[2]
    }
}

/// Natural cubic spline parameterized by cumulative chord length, with an
/// arclength lookup table built by Gauss–Legendre quadrature.
#[derive(Debug, Clone, PartialEq)]
struct CubicSpline {
    knots: Vec<f64>,
    segments: Vec<CubicSegment>,
    table_u: Vec<f64>,
    table_s: Vec<f64>,
}

/// Second derivatives of the natural spline through `(knots, values)`.
fn natural_second_derivatives(knots: &[f64], values: &[f64]) -> Vec<f64> {
    let n = knots.len();
    let mut m = vec![0.0; n];
    if n < 3 {
        return m;
    }
    // Thomas algorithm on the interior equations.
    let h: Vec<f64> = knots.windows(2).map(|w| w[1] - w[0]).collect();
    let k = n - 2;
    let mut diag = vec![0.0; k];
    let mut upper = vec![0.0; k];
    let mut rhs = vec![0.0; k];
    for i in 0..k {
        diag[i] = 2.0 * (h[i] + h[i + 1]);
        upper[i] = h[i + 1];
        rhs[i] = 6.0 * ((values[i + 2] - values[i + 1]) / h[i + 1] - (values[i + 1] - values[i]) / h[i]);
    }
    for i in 1..k {
        let w = h[i] / diag[i - 1];
        diag[i] -= w * upper[i - 1];
        rhs[i] -= w * rhs[i - 1];
    }
    m[k] = rhs[k - 1] / diag[k - 1];
    for i in (0..k - 1).rev() {
        m[i + 1] = (rhs[i] - upper[i] * m[i + 2]) / diag[i];
    }
    m
}

fn segment_coefficients(h: f64, y0: f64, y1: f64, m0: f64, m1: f64) -> [f64; 4] {
    [
        y0,
        (y1 - y0) / h - h * (2.0 * m0 + m1) / 6.0,
        m0 / 2.0,
        (m1 - m0) / (6.0 * h),
    ]
}

impl CubicSpline {
    fn new(waypoints: Vec<Vec2>) -> Result<Self, CurveError> {
        if waypoints.len() < 2 {
            return Err(CurveError::TooFewWaypoints(waypoints.len()));
        }
        if waypoints.iter().any(|p| !p.is_finite()) {
            return Err(CurveError::NonFinite);
        }
        let mut knots = vec![0.0];
        for (index, w) in waypoints.windows(2).enumerate() {
            let d = w[0].distance(w[1]);
            if d == 0.0 {
                return Err(CurveError::DuplicateWaypoint { index });
            }
            knots.push(knots[index] + d);
        }
        let xs: Vec<f64> = waypoints.iter().map(|p| p.x).collect();
        let ys: Vec<f64> = waypoints.iter().map(|p| p.y).collect();
        let mx = natural_second_derivatives(&knots, &xs);
        let my = natural_second_derivatives(&knots, &ys);
        let segments = (0..knots.len() - 1)
            .map(|i| {
                let h = knots[i + 1] - knots[i];
                CubicSegment {
                    x: segment_coefficients(h, xs[i], xs[i + 1], mx[i], mx[i + 1]),
                    y: segment_coefficients(h, ys[i], ys[i + 1], my[i], my[i + 1]),
                }
            })
            .collect();
        let mut spline = Self {
            knots,
            segments,
            table_u: Vec::new(),
            table_s: Vec::new(),
        };
        spline.build_arclength_table();
        Ok(spline)
    }

    fn build_arclength_table(&mut self) {
        let mut table_u = vec![0.0];
        let mut table_s = vec![0.0];
        for w in self.knots.windows(2) {
            let step = (w[1] - w[0]) / ARC_TABLE_DIVISIONS as f64;
            for j in 0..ARC_TABLE_DIVISIONS {
                let u0 = w[0] + step * j as f64;
                let u1 = if j + 1 == ARC_TABLE_DIVISIONS { w[1] } else { u0 + step };
                let s = table_s.last().copied().unwrap_or(0.0) + self.speed_integral(u0, u1);
                table_u.push(u1);
                table_s.push(s);
            }
        }
        self.table_u = table_u;
        self.table_s = table_s;
    }

    fn segment_at(&self, u: f64) -> (usize, f64) {
        let idx = self
            .knots
            .partition_point(|&k| k <= u)
            .saturating_sub(1)
            .min(self.segments.len() - 1);
        (idx, u - self.knots[idx])
    }

    fn position(&self, u: f64) -> Vec2 {
        let (i, t) = self.segment_at(u);
        let seg = &self.segments[i];
        Vec2::new(CubicSegment::eval(&seg.x, t), CubicSegment::eval(&seg.y, t))
    }

    fn derivative(&self, u: f64) -> Vec2 {
        let (i, t) = self.segment_at(u);
        let seg = &self.segments[i];
        Vec2::new(CubicSegment::d1(&seg.x, t), CubicSegment::d1(&seg.y, t))
    }

    fn second_derivative(&self, u: f64) -> Vec2 {
        let (i, t) = self.segment_at(u);
        let seg = &self.segments[i];
        Vec2::new(CubicSegment::d2(&seg.x, t), CubicSegment::d2(&seg.y, t))
    }

    fn curvature(&self, u: f64) -> f64 {
        let d1 = self.derivative(u);
        let d2 = self.second_derivative(u);
        cross(d1, d2) / d1.norm().powi(3)
    }

    /// ∫ |r'(u)| du over `[u0, u1]`, which must lie inside one table cell.
    fn speed_integral(&self, u0: f64, u1: f64) -> f64 {
        let half = 0.5 * (u1 - u0);
        let mid = 0.5 * (u1 + u0);
        GL_NODES
            .iter()
            .zip(GL_WEIGHTS)
            .map(|(&x, w)| w * self.derivative(mid + half * x).norm())
            .sum::<f64>()
            * half
    }

    fn length(&self) -> f64 {
        *self.table_s.last().unwrap()
    }

    fn arclength_at(&self, u: f64) -> f64 {
        let cell = self.table_u.partition_point(|&v| v <= u).saturating_sub(1).min(self.table_u.len() - 2);
        self.table_s[cell] + self.speed_integral(self.table_u[cell], u)
    }

    /// Spline parameter whose arclength from the start is `s`.
    fn param_at(&self, s: f64) -> f64 {
        let s = s.clamp(0.0, self.length());
        let cell = self.table_s.partition_point(|&v| v <= s).saturating_sub(1).min(self.table_s.len() - 2);
        let (u0, u1) = (self.table_u[cell], self.table_u[cell + 1]);
        let (s0, s1) = (self.table_s[cell], self.table_s[cell + 1]);
        let mut u = u0 + (u1 - u0) * (s - s0) / (s1 - s0);
        for _ in 0..8 {
            let err = self.table_s[cell] + self.speed_integral(u0, u) - s;
            if err.abs() < ARC_INVERSE_TOL {
                break;
            }
            u = (u - err / self.derivative(u).norm()).clamp(u0, u1);
        }
        u
    }

    fn curvature_peak(&self) -> (f64, f64) {
        let mut best = (0.0, 0.0);
        for w in self.knots.windows(2) {
            let samples = 64;
            for j in 0..=samples {
                let u = w[0] + (w[1] - w[0]) * j as f64 / samples as f64;
                let k = self.curvature(u).abs();
                if k > best.0 {
                    best = (k, u);
                }
            }
        }
        (best.0, self.arclength_at(best.1))
    }
}
