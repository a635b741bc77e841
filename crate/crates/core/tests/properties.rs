use std::f64::consts::TAU;

use loopfold::develop::unroll_chain;
use loopfold::fixtures::{central_section_seed, face_normal};
use loopfold::geom::{Iso2, V2};
use loopfold::pipeline::{unfold_loop, Options, Seed};
use loopfold::solids::{dodecahedron, random_hull};
use loopfold::verify::{brute_force_shortest, polygon_simple};
use loopfold::{load_off, Polyhedron};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn hull(seed: u64, points: usize) -> Option<Polyhedron> {
    random_hull(&mut ChaCha8Rng::seed_from_u64(seed), points).ok()
}

fn centroid_seed(p: &Polyhedron, face: usize, angle: f64) -> Seed {
    let c = &p.face(face).coords;
    Seed {
        face,
        uv: c.iter().fold(V2::zeros(), |a, b| a + b) / c.len() as f64,
        angle,
    }
}

fn config() -> ProptestConfig {
    ProptestConfig {
        cases: 48,
        ..ProptestConfig::default()
    }
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn off_round_trips(seed in any::<u64>(), n in 4usize..40) {
        let Some(p) = hull(seed, n) else { return Ok(()) };
        let back = load_off(&p.to_off()).unwrap();
        prop_assert_eq!(back.vertices(), p.vertices());
        prop_assert_eq!(back.face_lists(), p.face_lists());
        prop_assert_eq!(back.surface_area(), p.surface_area());
    }

    #[test]
    fn unrolling_is_an_isometry(seed in any::<u64>(), n in 6usize..30, walk in prop::collection::vec(0usize..8, 1..10)) {
        let Some(p) = hull(seed, n) else { return Ok(()) };
        let mut chain = vec![0];
        for s in walk {
            let f = *chain.last().unwrap();
            chain.push(p.adjacency(f, s % p.face(f).len()).face);
        }
        let d = unroll_chain(&p, &chain, Iso2::new(0.7, V2::new(1.0, -2.0))).unwrap();
        let tol = 1e-9 * p.diag();
        for (k, &f) in chain.iter().enumerate() {
            let face = p.face(f);
            let m = face.len();
            for i in 0..m {
                let (a, b) = (d.place(k, face.coords[i]), d.place(k, face.coords[(i + 1) % m]));
                let e = (p.vertex(face.verts[i]) - p.vertex(face.verts[(i + 1) % m])).norm();
                prop_assert!(((b - a).norm() - e).abs() <= tol);
            }
            if k + 1 < chain.len() {
                // Consecutive faces share their common side in the plane.
                let (a, b) = d.shared_side(&p, k);
                let g = p.face(chain[k + 1]);
                let side = p.edge_between(chain[k + 1], f).unwrap();
                let (c, e) = g.side(side);
                let (c, e) = (d.place(k + 1, c), d.place(k + 1, e));
                prop_assert!((a - e).norm() <= tol && (b - c).norm() <= tol);
            }
        }
    }

    #[test]
    fn simplicity_ignores_exact_symmetries(pts in prop::collection::vec((-8i32..8, -8i32..8), 3..9), shift in 0usize..9) {
        let poly: Vec<V2> = pts.iter().map(|&(x, y)| V2::new(x as f64 * 0.25, y as f64 * 0.25)).collect();
        let want = polygon_simple(&poly).is_ok();
        let maps: [fn(V2) -> V2; 4] = [
            |p| V2::new(-p.y, p.x),
            |p| V2::new(-p.x, -p.y),
            |p| V2::new(p.y, p.x),
            |p| V2::new(-p.x, p.y),
        ];
        for m in maps {
            let q: Vec<V2> = poly.iter().map(|&p| m(p)).collect();
            prop_assert_eq!(polygon_simple(&q).is_ok(), want);
        }
        let mut r = poly.clone();
        r.reverse();
        let k = shift % r.len();
        r.rotate_left(k);
        prop_assert_eq!(polygon_simple(&r).is_ok(), want);
    }

    #[test]
    fn doubling_the_solid_scales_the_unfolding(seed in any::<u64>(), n in 6usize..20, angle in 0.0..TAU) {
        let Some(p) = hull(seed, n) else { return Ok(()) };
        let big = Polyhedron::new(p.vertices().iter().map(|v| v * 2.0).collect(), p.face_lists()).unwrap();
        let s = centroid_seed(&p, 0, angle);
        let Ok(q) = s.trace(&p, Options::for_polyhedron(&p).loop_opts) else { return Ok(()) };
        let s2 = Seed { uv: s.uv * 2.0, ..s };
        let q2 = s2.trace(&big, Options::for_polyhedron(&big).loop_opts).unwrap();
        prop_assert_eq!(q.kind, q2.kind);
        prop_assert!((q2.length() - 2.0 * q.length()).abs() <= 1e-9 * q2.length());
        let u = unfold_loop(&p, q, Options::for_polyhedron(&p)).unwrap();
        let u2 = unfold_loop(&big, q2, Options::for_polyhedron(&big)).unwrap();
        prop_assert!((u2.polygon.area() - 4.0 * u.polygon.area()).abs() <= 1e-9 * u2.polygon.area());
        for (a, b) in u.all_cuts().zip(u2.all_cuts()) {
            prop_assert_eq!(a.vertex, b.vertex);
            prop_assert!((b.length - 2.0 * a.length).abs() <= 1e-9 * b.length.max(1.0));
        }
    }

    #[test]
    fn no_face_sequence_beats_a_cut(seed in any::<u64>(), n in 5usize..9, angle in 0.0..TAU) {
        let Some(p) = hull(seed, n) else { return Ok(()) };
        let o = Options::for_polyhedron(&p);
        let Ok(q) = centroid_seed(&p, 0, angle).trace(&p, o.loop_opts) else { return Ok(()) };
        let u = unfold_loop(&p, q, o).unwrap();
        for c in u.all_cuts() {
            let b = brute_force_shortest(&p, &u.q, c.vertex, 8);
            let l = b.length.unwrap_or(f64::INFINITY);
            prop_assert!(l >= c.length * (1.0 - 1e-9), "v{} cut {} oracle {}", c.vertex, c.length, l);
            if c.face_seq.len() <= 8 {
                prop_assert!(l <= c.length * (1.0 + 1e-9), "v{} cut {} oracle {}", c.vertex, c.length, l);
            }
        }
    }
}

#[test]
fn oracle_agrees_on_the_dodecahedron_equator() {
    let d = dodecahedron();
    let o = Options::for_polyhedron(&d);
    let q = central_section_seed(&d, face_normal(&d, 0))
        .unwrap()
        .trace(&d, o.loop_opts)
        .unwrap();
    let u = unfold_loop(&d, q, o).unwrap();
    assert_eq!(u.all_cuts().count(), 20);
    for c in u.all_cuts() {
        let b = brute_force_shortest(&d, &u.q, c.vertex, 8);
        let l = b.length.unwrap();
        assert!((l - c.length).abs() <= 1e-9 * c.length, "v{} {} {}", c.vertex, c.length, l);
    }
}
