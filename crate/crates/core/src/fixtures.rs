//! Worked examples on the platonic solids: loops and seeds used by the
//! tests, the acceptance run and the benches.

use crate::develop::{GeodesicPath, SurfacePoint};
use crate::error::{Error, Result};
use crate::geom::{V2, V3};
use crate::mesh::Polyhedron;
use crate::pipeline::Seed;
use crate::qloop::{classify, QuasigeodesicLoop};

/// The closed quasigeodesic through cube vertices v0, v5, v7
/// (on `solids::cube`), each leg a face diagonal.
pub fn cube_triangle_loop(c: &Polyhedron) -> Result<QuasigeodesicLoop> {
    let path = GeodesicPath {
        points: [0, 5, 7, 0].iter().map(|&v| SurfacePoint::vertex(c, v)).collect(),
        legs: vec![2, 4, 0],
    };
    classify(c, path, 1e-9)
}

/// A seed on the cube's front face tracing a loop with a 3π/2 side at
/// its loop point and three vertices on the other side.
pub fn cube_loop_seed() -> Seed {
    Seed {
        face: 2,
        uv: V2::new(0.25, 0.25),
        angle: 2f64.atan2(3.0),
    }
}

/// A seed on the section of the dodecahedron by the plane through its
/// centre perpendicular to `normal`, running along that section. When
/// `normal` is a face normal the section is a closed geodesic.
pub fn central_section_seed(p: &Polyhedron, normal: V3) -> Result<Seed> {
    let n = normal.normalize();
    let c = p.vertices().iter().fold(V3::zeros(), |a, &b| a + b) / p.num_vertices() as f64;
    let h = |x: V3| (x - c).dot(&n);
    let tol = 1e-9 * p.diag();
    for (fi, f) in p.faces().iter().enumerate() {
        let k = f.len();
        let mut hits = Vec::new();
        for i in 0..k {
            let (a, b) = (p.vertex(f.verts[i]), p.vertex(f.verts[(i + 1) % k]));
            let (ha, hb) = (h(a), h(b));
            if ha.abs() <= tol || hb.abs() <= tol {
                continue;
            }
            if (ha < 0.0) != (hb < 0.0) {
                hits.push(f.coords[i] + (f.coords[(i + 1) % k] - f.coords[i]) * (ha / (ha - hb)));
            }
        }
        if hits.len() == 2 {
            // Travel so that the positive side is on the left.
            let d = hits[1] - hits[0];
            let left = f.vec_to_3d(V2::new(-d.y, d.x));
            let d = if left.dot(&n) >= 0.0 { d } else { -d };
            let mid = (hits[0] + hits[1]) / 2.0;
            return Ok(Seed {
                face: fi,
                uv: mid,
                angle: d.y.atan2(d.x),
            });
        }
    }
    Err(Error::Invalid("plane misses every face interior".into()))
}

/// Unit normal of face `f` pointing out of the solid.
pub fn face_normal(p: &Polyhedron, f: usize) -> V3 {
    p.face(f).normal
}

/// Normal of the tetrahedron's square section: from the midpoint of
/// edge v2v3 to the midpoint of edge v0v1.
pub fn tetrahedron_square_normal(p: &Polyhedron) -> V3 {
    (p.vertex(0) + p.vertex(1) - p.vertex(2) - p.vertex(3)) / 2.0
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{unfold_loop, Options};
    use crate::qloop::{split_halves, LoopKind, Side};
    use crate::solids::{cube, dodecahedron, octahedron, tetrahedron};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    #[test]
    fn cube_seed_reproduces_loop_example() {
        let c = cube();
        let q = cube_loop_seed().trace(&c, Options::for_polyhedron(&c).loop_opts).unwrap();
        assert_eq!(q.kind, LoopKind::QuasigeodesicLoop);
        let (beta, side) = q.beta.unwrap();
        assert_relative_eq!(beta, 1.5 * PI, epsilon = 1e-9);
        assert_eq!(side, Side::Right);
        let (l, _) = split_halves(&c, &q).unwrap();
        assert_eq!(l.contained_vertices, vec![3, 5, 6]);
    }

    #[test]
    fn dodecahedron_equator_matches_section_perimeter() {
        let d = dodecahedron();
        let f = (0..d.num_faces()).next().unwrap();
        let seed = central_section_seed(&d, face_normal(&d, f)).unwrap();
        let q = seed.trace(&d, Options::for_polyhedron(&d).loop_opts).unwrap();
        assert_eq!(q.kind, LoopKind::ClosedGeodesic);
        // Perimeter of the central section perpendicular to a face normal,
        // computed by plane-edge intersection outside this crate.
        assert_relative_eq!(q.length(), 10.0, epsilon = 1e-9);
        let u = unfold_loop(&d, q, Options::for_polyhedron(&d)).unwrap();
        for h in 0..2 {
            // Five nearest vertices on each side, all at the same distance.
            let mut ls: Vec<f64> = u.cuts[h].iter().map(|c| c.length).collect();
            ls.sort_by(f64::total_cmp);
            assert_eq!(u.cuts[h].len(), 10);
            assert_relative_eq!(ls[0], ls[4], epsilon = 1e-9);
            assert!(ls[5] > ls[4] + 0.1);
        }
    }

    #[test]
    fn tetrahedron_and_octahedron_sections_close() {
        let t = tetrahedron();
        let seed = central_section_seed(&t, tetrahedron_square_normal(&t)).unwrap();
        let q = seed.trace(&t, Options::for_polyhedron(&t).loop_opts).unwrap();
        assert_eq!(q.kind, LoopKind::ClosedGeodesic);
        // Square of side half the edge length 2√2.
        assert_relative_eq!(q.length(), 4.0 * 2f64.sqrt(), epsilon = 1e-9);
        let o = octahedron();
        let seed = central_section_seed(&o, face_normal(&o, 0)).unwrap();
        let q = seed.trace(&o, Options::for_polyhedron(&o).loop_opts).unwrap();
        assert_eq!(q.kind, LoopKind::ClosedGeodesic);
        // Regular hexagon through six edge midpoints, side half of √2.
        assert_relative_eq!(q.length(), 6.0 * 2f64.sqrt() / 2.0, epsilon = 1e-9);
    }
}
