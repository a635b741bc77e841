//! Test and sweep fixtures: platonic solids and random convex hulls.

use std::collections::HashSet;

use rand::Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::geom::{angle_ccw, v2, V2, V3};
use crate::mesh::Polyhedron;

/// Unit cube `[0,1]³` with the vertex labels used in the worked examples:
/// the loop through `v0, v5, v7` encircles `v2 = (0,0,0)` and `v4 = (1,1,1)`
/// is the opposite corner.
///
/// Faces: 0 bottom (z=0), 1 top (z=1), 2 front (y=0), 3 back (y=1),
/// 4 left (x=0), 5 right (x=1).
pub fn cube() -> Polyhedron {
    let v = vec![
        V3::new(1.0, 0.0, 0.0), // v0
        V3::new(1.0, 1.0, 0.0), // v1
        V3::new(0.0, 0.0, 0.0), // v2
        V3::new(0.0, 1.0, 1.0), // v3
        V3::new(1.0, 1.0, 1.0), // v4
        V3::new(0.0, 0.0, 1.0), // v5
        V3::new(1.0, 0.0, 1.0), // v6
        V3::new(0.0, 1.0, 0.0), // v7
    ];
    let f = vec![
        vec![2, 7, 1, 0],
        vec![5, 6, 4, 3],
        vec![2, 0, 6, 5],
        vec![7, 3, 4, 1],
        vec![2, 5, 3, 7],
        vec![0, 1, 4, 6],
    ];
    Polyhedron::new(v, f).expect("cube is valid")
}

pub fn tetrahedron() -> Polyhedron {
    let pts = vec![
        V3::new(1.0, 1.0, 1.0),
        V3::new(1.0, -1.0, -1.0),
        V3::new(-1.0, 1.0, -1.0),
        V3::new(-1.0, -1.0, 1.0),
    ];
    hull(&pts).expect("tetrahedron is valid")
}

pub fn octahedron() -> Polyhedron {
    let pts = vec![
        V3::new(1.0, 0.0, 0.0),
        V3::new(-1.0, 0.0, 0.0),
        V3::new(0.0, 1.0, 0.0),
        V3::new(0.0, -1.0, 0.0),
        V3::new(0.0, 0.0, 1.0),
        V3::new(0.0, 0.0, -1.0),
    ];
    hull(&pts).expect("octahedron is valid")
}

/// Regular dodecahedron with edge length `2/φ`.
pub fn dodecahedron() -> Polyhedron {
    let phi = (1.0 + 5f64.sqrt()) / 2.0;
    let ip = 1.0 / phi;
    let mut pts = Vec::new();
    for &x in &[-1.0, 1.0] {
        for &y in &[-1.0, 1.0] {
            for &z in &[-1.0, 1.0] {
                pts.push(V3::new(x, y, z));
            }
        }
    }
    for &a in &[-1.0, 1.0] {
        for &b in &[-1.0, 1.0] {
            pts.push(V3::new(0.0, a * ip, b * phi));
            pts.push(V3::new(a * ip, b * phi, 0.0));
            pts.push(V3::new(a * phi, 0.0, b * ip));
        }
    }
    hull(&pts).expect("dodecahedron is valid")
}

/// Convex hull of a small point set by brute force over point triples.
/// Coplanar hull points are merged into one polygonal face; every input
/// point must be a hull vertex.
pub fn hull(points: &[V3]) -> Result<Polyhedron> {
    let n = points.len();
    if n < 4 {
        return Err(Error::Invalid("hull needs at least 4 points".into()));
    }
    let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-300);
    let eps = 1e-9 * scale;
    let mut seen: HashSet<Vec<usize>> = HashSet::new();
    let mut faces = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let nrm = (points[j] - points[i]).cross(&(points[k] - points[i]));
                let len = nrm.norm();
                if len <= 1e-12 * scale * scale {
                    continue;
                }
                let nrm = nrm / len;
                let d: Vec<f64> = points.iter().map(|p| (p - points[i]).dot(&nrm)).collect();
                let outward = if d.iter().all(|&x| x <= eps) {
                    nrm
                } else if d.iter().all(|&x| x >= -eps) {
                    -nrm
                } else {
                    continue;
                };
                let mut on: Vec<usize> = (0..n).filter(|&m| d[m].abs() <= eps).collect();
                on.sort_unstable();
                if !seen.insert(on.clone()) {
                    continue;
                }
                let c = on.iter().fold(V3::zeros(), |a, &m| a + points[m]) / on.len() as f64;
                let e1 = (points[on[0]] - c).normalize();
                let e2 = outward.cross(&e1);
                let to2 = |p: V3| -> V2 { v2((p - c).dot(&e1), (p - c).dot(&e2)) };
                let base = to2(points[on[0]]);
                on.sort_by(|&a, &b| {
                    angle_ccw(base, to2(points[a]))
                        .partial_cmp(&angle_ccw(base, to2(points[b])))
                        .unwrap()
                });
                faces.push(on);
            }
        }
    }
    let used: HashSet<usize> = faces.iter().flatten().copied().collect();
    if used.len() != n {
        return Err(Error::Invalid("some points are not hull vertices".into()));
    }
    Polyhedron::new(points.to_vec(), faces)
}

/// Uniform random points on the unit sphere.
pub fn sphere_points<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Vec<V3> {
    (0..count)
        .map(|_| loop {
            let p = V3::new(StandardNormal.sample(rng), StandardNormal.sample(rng), StandardNormal.sample(rng));
            let n: f64 = p.norm();
            if n > 1e-6 {
                break p / n;
            }
        })
        .collect()
}

/// Random convex polyhedron: hull of `count` random points on the sphere.
/// Retries a few times on degenerate draws.
pub fn random_hull<R: Rng + ?Sized>(rng: &mut R, count: usize) -> Result<Polyhedron> {
    let mut last = Error::Invalid("no attempt".into());
    for _ in 0..8 {
        let pts = sphere_points(rng, count);
        match hull(&pts) {
            Ok(p) => return Ok(p),
            Err(e) => last = e,
        }
    }
    Err(last)
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn platonic_combinatorics() {
        let c = cube();
        assert_eq!((c.num_vertices(), c.num_faces(), c.num_edges()), (8, 6, 12));
        let t = tetrahedron();
        assert_eq!((t.num_vertices(), t.num_faces(), t.num_edges()), (4, 4, 6));
        let o = octahedron();
        assert_eq!((o.num_vertices(), o.num_faces(), o.num_edges()), (6, 8, 12));
        let d = dodecahedron();
        assert_eq!((d.num_vertices(), d.num_faces(), d.num_edges()), (20, 12, 30));
        for f in d.faces() {
            assert_eq!(f.len(), 5);
        }
        for v in 0..20 {
            assert!((d.vertex_curvature(v).unwrap() - PI / 5.0).abs() < 1e-12);
        }
    }

    #[test]
    fn random_hull_is_valid() {
        use rand::SeedableRng;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for n in [6, 12, 30] {
            let p = random_hull(&mut rng, n).unwrap();
            assert_eq!(p.num_vertices(), n);
            assert_eq!(p.num_faces(), 2 * n - 4);
        }
    }
}
