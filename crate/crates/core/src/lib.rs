//! Frenet-frame projection and sampling-based trajectory planning around
//! curved reference paths.
//!
//! The crate is organised bottom-up:
//!
//! - [`geometry`]: 2-D vectors, segments and line primitives.
//! - [`curve`]: arclength-parameterized reference curves (lines, arcs,
//!   natural cubic splines and composites).
//! - [`polyline`]: uniform sampling of a curve into a polyline, its ray
//!   extensions and the Frenet → Cartesian map.
//! - [`projection`]: Cartesian → Frenet projection ([`projection::transf_kappa`]),
//!   a brute-force oracle and the direction-following check.
//! - [`trajectory`]: corridor sampling of candidate trajectories and the
//!   `κ·d < 1` repair.
//! - [`scenario`], [`planner`]: bundled road scenarios and the
//!   receding-horizon planning loop.
//! - [`config`], [`output`], [`run`]: TOML configs, trace emission and the
//!   command-line driver.
//!
//! ```
//! use frenet_kappa::curve::ReferenceCurve;
//! use frenet_kappa::geometry::Vec2;
//! use frenet_kappa::polyline::sample_polyline;
//! use frenet_kappa::projection::transf_kappa;
//!
//! let road = ReferenceCurve::u_road(30.0, 15.0).unwrap();
//! let poly = sample_polyline(&road, 0.5).unwrap();
//! let f = transf_kappa(&poly, Vec2::new(10.0, 2.0));
//! assert!((f.s - 10.0).abs() < 1e-12 && (f.d - 2.0).abs() < 1e-12);
//! ```

pub mod config;
pub mod curve;
pub mod geometry;
pub mod output;
pub mod planner;
pub mod polyline;
pub mod projection;
pub mod run;
pub mod scenario;
pub mod trajectory;
