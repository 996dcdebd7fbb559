//! Cartesian → Frenet projection on a U-shaped road, compared with the
//! brute-force nearest-point scan.

use frenet_kappa::curve::ReferenceCurve;
use frenet_kappa::geometry::Vec2;
use frenet_kappa::polyline::{frenet_to_cartesian, sample_polyline, FrenetCoord};
use frenet_kappa::projection::{brute_force_project, transf_kappa, NearestSet};

fn main() {
    let road = ReferenceCurve::u_road(30.0, 15.0).unwrap();
    let poly = sample_polyline(&road, 0.5).unwrap();
    println!("polyline: {} points, {:.3} m", poly.len(), poly.total_length());

    let queries = [
        Vec2::new(10.0, 2.0),
        Vec2::new(-4.0, -1.0),
        Vec2::new(41.0, 9.0),
        Vec2::new(50.0, 15.0),
        Vec2::new(5.0, 31.0),
    ];
    println!("{:>18} {:>10} {:>9} {:>10}", "query", "s", "d", "brute s");
    for a in queries {
        let f = transf_kappa(&poly, a);
        let b = brute_force_project(&poly, a, poly.spacing() / 100.0);
        println!("{:>18} {:>10.4} {:>9.4} {:>10.4}", format!("({}, {})", a.x, a.y), f.s, f.d, b.s);
    }

    // Round trip through the Frenet → Cartesian map.
    let f = FrenetCoord::new(50.0, 7.5);
    let a = frenet_to_cartesian(&poly, f);
    let g = transf_kappa(&poly, a);
    println!("\n({}, {}) -> ({:.4}, {:.4}) -> ({:.12}, {:.12})", f.s, f.d, a.x, a.y, g.s, g.d);

    // The arc center is equidistant from every arc vertex; the largest
    // index wins the tie.
    let arc = sample_polyline(&ReferenceCurve::arc(Vec2::ZERO, 10.0, 0.0, std::f64::consts::PI).unwrap(), 1.0).unwrap();
    let set = NearestSet::compute(&arc, Vec2::ZERO);
    let f = transf_kappa(&arc, Vec2::ZERO);
    println!(
        "\nsemicircle center: {} tied vertices, picks index {}, s = {:.4} of {:.4}, d = {:.4}",
        set.indices.len(),
        set.largest(),
        f.s,
        arc.total_length(),
        f.d
    );
}
