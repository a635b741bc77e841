//! Independent checks: brute-force shortest paths, exact polygon
//! simplicity and conservation residuals.

use std::cmp::Ordering;
use std::f64::consts::{PI, TAU};

use serde::Serialize;

use crate::develop::unroll_chain;
use crate::geom::exact::{orient, segments_touch, Grid, IPoint};
use crate::geom::{angle_ccw, clip_to_cone, closest_on_segment, cross2, rotate, Iso2, V2};
use crate::mesh::{FaceId, Polyhedron, VertexId};
use crate::pipeline::Unfolding;
use crate::qloop::{LoopKind, QuasigeodesicLoop, Side};
use crate::spath::{check_orthogonality, CutSegment};
use crate::unfold::{max_subchain_turn_c21, turn_of_c21, EdgeSource, PlanarDevelopment};

fn folds_back(a: IPoint, b: IPoint, c: IPoint) -> bool {
    orient(a, b, c) == Ordering::Equal && {
        let (ux, uy) = ((b.0 - a.0) as i128, (b.1 - a.1) as i128);
        let (vx, vy) = ((c.0 - b.0) as i128, (c.1 - b.1) as i128);
        ux * vx + uy * vy < 0
    }
}

/// Checks that the closed polygon does not touch itself, using exact
/// predicates on snapped coordinates. On failure returns a pair of
/// offending edge indices (edge `i` runs from `pts[i]` to `pts[i + 1]`).
pub fn polygon_simple(pts: &[V2]) -> Result<(), (usize, usize)> {
    let n = pts.len();
    if n < 3 {
        return Err((0, 0));
    }
    let grid = Grid::for_points(pts);
    let s: Vec<IPoint> = pts.iter().map(|&p| grid.snap(p)).collect();
    for i in 0..n {
        if s[i] == s[(i + 1) % n] {
            return Err((i, i));
        }
    }
    for i in 0..n {
        let (a, b) = (s[i], s[(i + 1) % n]);
        let c = s[(i + 2) % n];
        if folds_back(a, b, c) {
            return Err((i, (i + 1) % n));
        }
        for j in i + 2..n {
            if i == 0 && j == n - 1 {
                continue;
            }
            if segments_touch(a, b, s[j], s[(j + 1) % n]) {
                return Err((i, j));
            }
        }
    }
    Ok(())
}

/// Default depth of the oracle's face-sequence enumeration.
pub fn default_max_faces(p: &Polyhedron) -> usize {
    let f = p.num_faces();
    if f <= 12 {
        8
    } else {
        (1.5 * (f as f64).sqrt()).ceil() as usize
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OracleResult {
    pub length: Option<f64>,
    pub face_seq: Vec<FaceId>,
    pub sequences: usize,
    pub max_faces: usize,
}

/// Shortest distance from `v` to the loop over every simple face sequence
/// of at most `max_faces` faces starting at a face around `v`. Each
/// sequence is unrolled from scratch and its visibility wedge rebuilt as
/// an angular interval.
pub fn brute_force_shortest(p: &Polyhedron, q: &QuasigeodesicLoop, v: VertexId, max_faces: usize) -> OracleResult {
    let mut q_legs: Vec<Vec<(V2, V2)>> = vec![Vec::new(); p.num_faces()];
    for i in 0..q.num_legs() {
        let (f, a, b) = q.leg(p, i);
        q_legs[f].push((a, b));
    }
    let mut best = OracleResult {
        length: None,
        face_seq: Vec::new(),
        sequences: 0,
        max_faces,
    };
    for &(f, c) in p.fan(v) {
        let mut chain = vec![f];
        dfs(p, &q_legs, v, c, &mut chain, max_faces, &mut best);
    }
    best
}

fn dfs(
    p: &Polyhedron,
    q_legs: &[Vec<(V2, V2)>],
    v: VertexId,
    corner: usize,
    chain: &mut Vec<FaceId>,
    max_faces: usize,
    best: &mut OracleResult,
) {
    best.sequences += 1;
    let Some((ref0, lo, hi, place)) = wedge(p, v, corner, chain) else {
        return;
    };
    let f = *chain.last().unwrap();
    let (dlo, dhi) = (rotate(ref0, lo), rotate(ref0, hi));
    for &(a, b) in &q_legs[f] {
        if let Some((c0, c1)) = clip_to_cone(place.apply(a), place.apply(b), V2::zeros(), dlo, dhi) {
            let d = closest_on_segment(V2::zeros(), c0, c1).0.norm();
            if best.length.is_none_or(|l| d < l) {
                best.length = Some(d);
                best.face_seq = chain.clone();
            }
        }
    }
    if chain.len() >= max_faces {
        return;
    }
    let face = p.face(f);
    for s in 0..face.len() {
        let g = p.adjacency(f, s).face;
        if chain.contains(&g) {
            continue;
        }
        chain.push(g);
        dfs(p, q_legs, v, corner, chain, max_faces, best);
        chain.pop();
    }
}

/// Visibility wedge of a face chain from `v` as angles measured from the
/// first side at `v`, plus the last face's placement.
fn wedge(p: &Polyhedron, v: VertexId, corner: usize, chain: &[FaceId]) -> Option<(V2, f64, f64, Iso2)> {
    let first = p.face(chain[0]);
    let n = first.len();
    let here = first.coords[corner];
    let dev = unroll_chain(p, chain, Iso2::translation(-here)).ok()?;
    let ref0 = (first.coords[(corner + 1) % n] - here).normalize();
    let (mut lo, mut hi) = (0.0, first.corner_angle(corner));
    let ang = |w: V2| {
        let a = angle_ccw(ref0, w);
        // Directions just clockwise of the reference read as negative.
        if a > PI {
            a - TAU
        } else {
            a
        }
    };
    for k in 0..chain.len() - 1 {
        let (a, b) = dev.shared_side(p, k);
        if a.norm() < 1e-12 || b.norm() < 1e-12 {
            // An edge through v itself: no straight path crosses it.
            return None;
        }
        if cross2(a, b).abs() <= 1e-15 * a.norm() * b.norm() && a.dot(&b) > 0.0 {
            return None;
        }
        let (x, y) = (ang(a), ang(b));
        lo = f64::max(lo, x.min(y));
        hi = f64::min(hi, x.max(y));
        if hi - lo <= 1e-12 {
            return None;
        }
    }
    let _ = v;
    Some((ref0, lo, hi, *dev.placements.last().unwrap()))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    #[serde(rename = "n/a")]
    NotApplicable,
    /// Reported, never failing.
    Info,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub residual: Option<f64>,
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct VerificationReport {
    pub checks: Vec<Check>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != Status::Fail)
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn failures(&self) -> Vec<&Check> {
        self.checks.iter().filter(|c| c.status == Status::Fail).collect()
    }

    fn add(&mut self, name: &str, status: Status, residual: Option<f64>, certificate: Option<String>) {
        debug_assert!(self.get(name).is_none());
        self.checks.push(Check {
            name: name.to_string(),
            status,
            residual,
            certificate,
        });
    }

    fn bound(&mut self, name: &str, residual: f64, limit: f64, certificate: impl FnOnce() -> String) {
        let ok = residual <= limit;
        self.add(
            name,
            if ok { Status::Pass } else { Status::Fail },
            Some(residual),
            (!ok).then(certificate),
        );
    }

    fn na(&mut self, name: &str) {
        self.add(name, Status::NotApplicable, None, None);
    }
}

#[derive(Debug, Clone, Copy)]
pub struct VerifyOptions {
    /// Oracle depth; `None` skips the oracle.
    pub oracle_max_faces: Option<usize>,
    pub tol_gauss_bonnet: f64,
    pub tol_orth: f64,
    pub tol_turn: f64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            oracle_max_faces: None,
            tol_gauss_bonnet: 1e-7,
            tol_orth: 1e-6,
            tol_turn: 1e-9,
        }
    }
}

/// Residuals of area and cut-image conservation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Conservation {
    /// |polygon area − surface area − triangle areas|.
    pub area: f64,
    /// |net area − surface area|.
    pub net_area: f64,
    /// Largest length mismatch among cut images and their cut.
    pub cut_pairing: f64,
}

pub fn conservation(p: &Polyhedron, u: &Unfolding) -> Conservation {
    let s = p.surface_area();
    let tri: f64 = u.devs.iter().flat_map(|d| d.triangles.iter()).map(|t| t.area()).sum();
    let mut pairing = 0.0f64;
    for d in &u.devs {
        let n = d.net.len();
        for (i, src) in d.net_sources.iter().enumerate() {
            if let EdgeSource::Cut { vertex, .. } = *src {
                let t = d.triangles.iter().find(|t| t.vertex == vertex).expect("triangle per cut");
                let len = (d.net[(i + 1) % n] - d.net[i]).norm();
                pairing = pairing.max((len - t.leg).abs());
            }
        }
    }
    Conservation {
        area: (u.polygon.area() - s - tri).abs(),
        net_area: (u.polygon.net_area() - s).abs(),
        cut_pairing: pairing,
    }
}

/// First pair of cuts that meet anywhere but at a common foot on the loop.
pub fn cut_intersections(p: &Polyhedron, cuts: &[&CutSegment]) -> Option<(VertexId, VertexId)> {
    let mut grids: Vec<Option<Grid>> = vec![None; p.num_faces()];
    for i in 0..cuts.len() {
        for j in i + 1..cuts.len() {
            let (a, b) = (cuts[i], cuts[j]);
            for (ka, &(fa, a0, a1)) in a.legs.iter().enumerate() {
                for (kb, &(fb, b0, b1)) in b.legs.iter().enumerate() {
                    if fa != fb {
                        continue;
                    }
                    let g = *grids[fa].get_or_insert_with(|| Grid::for_points(&p.face(fa).coords));
                    let last = ka + 1 == a.legs.len() && kb + 1 == b.legs.len();
                    // Feet at one loop point may differ in the last bits.
                    let same_foot = last
                        && match (a.foot_waypoint, b.foot_waypoint) {
                            (Some(i), Some(j)) => i == j,
                            _ => (a1 - b1).norm() <= 1e-9 * (1.0 + a1.norm()),
                        };
                    let b1 = if same_foot { a1 } else { b1 };
                    let (sa0, sa1, sb0, sb1) = (g.snap(a0), g.snap(a1), g.snap(b0), g.snap(b1));
                    if !segments_touch(sa0, sa1, sb0, sb1) {
                        continue;
                    }
                    if same_foot || (last && sa1 == sb1) {
                        // Touching only at the common foot.
                        let o1 = orient(sa0, sa1, sb0);
                        if o1 != Ordering::Equal || (a0 - a1).dot(&(b0 - b1)) < 0.0 {
                            continue;
                        }
                    }
                    return Some((a.vertex, b.vertex));
                }
            }
        }
    }
    None
}

/// True when the development has a vertex strictly inside the wedge
/// beyond the edge lines at x₁ and x₂ (outside both).
fn cone_occupied(d: &PlanarDevelopment) -> Option<bool> {
    let (x1, x2) = d.x_images?;
    let n = d.len();
    let (a1, b1) = d.edge(x1);
    let (a2, b2) = d.edge((x2 + n - 1) % n);
    let (e1, e2) = ((b1 - a1).normalize(), (b2 - a2).normalize());
    let tol = 1e-9 * d.vertices.iter().map(|p| p.norm()).fold(0.0, f64::max);
    Some(d.vertices.iter().any(|&p| cross2(e1, p - a1) < -tol && cross2(e2, p - a2) < -tol))
}

/// Runs every check on a finished unfolding.
pub fn verify_unfolding(p: &Polyhedron, u: &Unfolding, opts: VerifyOptions) -> VerificationReport {
    let mut r = VerificationReport::default();
    let q = &u.q;
    let s = p.surface_area();

    for (k, name) in [(0, "gauss_bonnet_left"), (1, "gauss_bonnet_right")] {
        let h = &u.halves[k];
        r.bound(name, (h.tau_q + h.omega_q - TAU).abs(), opts.tol_gauss_bonnet, || {
            format!("tau {} omega {}", h.tau_q, h.omega_q)
        });
    }
    let ha = u.halves[0].area + u.halves[1].area;
    r.bound("half_area", (ha - s).abs() / s, 1e-9, || format!("halves {ha} surface {s}"));

    let cuts: Vec<&CutSegment> = u.all_cuts().collect();
    let orth: Vec<(VertexId, f64)> = cuts
        .iter()
        .filter_map(|c| check_orthogonality(q, c).map(|d| (c.vertex, d)))
        .collect();
    match orth.iter().copied().max_by(|a, b| a.1.total_cmp(&b.1)) {
        Some((v, d)) => r.bound("orthogonality", d, opts.tol_orth, || format!("vertex {v}")),
        None => r.na("orthogonality"),
    }
    match cut_intersections(p, &cuts) {
        Some((a, b)) => r.add("cut_disjoint", Status::Fail, None, Some(format!("cuts from {a} and {b} meet"))),
        None => r.add("cut_disjoint", Status::Pass, Some(0.0), None),
    }
    let mut bad_interior = None;
    for c in &cuts {
        for &(f, _, b) in &c.legs[..c.legs.len() - 1] {
            let face = p.face(f);
            if face.coords.iter().any(|&w| (w - b).norm() <= 1e-9 * p.diag()) {
                bad_interior = Some(c.vertex);
            }
        }
    }
    match bad_interior {
        Some(v) => r.add("cut_avoids_vertices", Status::Fail, None, Some(format!("cut from {v}"))),
        None => r.add("cut_avoids_vertices", Status::Pass, None, None),
    }
    // A surface path is never shorter than the straight chord to Q.
    let mut worst = 0.0f64;
    for c in &cuts {
        let v = p.vertex(c.vertex);
        let mut chord = f64::INFINITY;
        for i in 0..q.num_legs() {
            let (f, a, b) = q.leg(p, i);
            let (a, b) = (p.face(f).to_3d(a), p.face(f).to_3d(b));
            let t = if (b - a).norm_squared() > 0.0 {
                ((v - a).dot(&(b - a)) / (b - a).norm_squared()).clamp(0.0, 1.0)
            } else {
                0.0
            };
            chord = chord.min((a + (b - a) * t - v).norm());
        }
        worst = worst.max(chord - c.length);
    }
    r.bound("cut_above_chord", worst.max(0.0), 1e-9 * p.diag(), || {
        "cut shorter than a straight chord".into()
    });
    match opts.oracle_max_faces {
        Some(mf) => {
            let mut worst = 0.0f64;
            let mut cert = None;
            let mut incomplete = 0;
            for c in &cuts {
                let o = brute_force_shortest(p, q, c.vertex, mf);
                match o.length {
                    Some(l) if l < c.length * (1.0 - 1e-9) => {
                        let d = (c.length - l) / c.length;
                        if d > worst {
                            worst = d;
                            cert = Some(format!("vertex {} search {} oracle {} via {:?}", c.vertex, c.length, l, o.face_seq));
                        }
                    }
                    Some(l) if l <= c.length * (1.0 + 1e-9) => worst = worst.max((l - c.length).abs() / c.length),
                    _ => incomplete += 1,
                }
            }
            if cert.is_some() {
                r.add("oracle", Status::Fail, Some(worst), cert);
            } else if incomplete > 0 {
                r.add(
                    "oracle",
                    Status::Info,
                    Some(worst),
                    Some(format!("{incomplete} vertices beyond {mf} faces")),
                );
            } else {
                r.add("oracle", Status::Pass, Some(worst), None);
            }
        }
        None => r.na("oracle"),
    }

    let beta_side = q.beta.map(|b| b.1);
    for d in &u.devs {
        let tag = match d.side {
            Side::Left => "left",
            Side::Right => "right",
        };
        r.bound(&format!("turn_{tag}"), (d.turn_total - TAU).abs(), 1e-7, || {
            format!("turn {}", d.turn_total)
        });
        let scale = d.vertices.iter().map(|p| p.norm()).fold(1e-300, f64::max);
        r.bound(&format!("closure_{tag}"), d.closure / scale, 1e-9, || format!("gap {}", d.closure));
        match polygon_simple(&d.vertices) {
            Ok(()) => r.add(&format!("simple_{tag}"), Status::Pass, None, None),
            Err((a, b)) => r.add(&format!("simple_{tag}"), Status::Fail, None, Some(format!("edges {a} and {b}"))),
        }
        let reflex: Vec<usize> = (0..d.len()).filter(|&i| d.turn(i) < -opts.tol_turn).collect();
        let min_turn = (0..d.len()).map(|i| d.turn(i)).fold(f64::INFINITY, f64::min);
        if beta_side == Some(d.side) {
            // Every copy of x counts, not only the extremes x₁ and x₂.
            let stray: Vec<usize> = reflex.iter().copied().filter(|&i| !u.events[d.corners[i].event].is_x).collect();
            r.add(
                &format!("reflex_only_at_x_{tag}"),
                if stray.is_empty() { Status::Pass } else { Status::Fail },
                Some(min_turn),
                (!stray.is_empty()).then(|| format!("reflex vertices {stray:?}")),
            );
        } else {
            r.add(
                &format!("convex_{tag}"),
                if reflex.is_empty() { Status::Pass } else { Status::Fail },
                Some(min_turn),
                (!reflex.is_empty()).then(|| format!("reflex vertices {reflex:?}")),
            );
        }
    }

    let bd = beta_side.map(|s| &u.devs[s.index()]);
    match bd.and_then(|d| turn_of_c21(d).ok()) {
        Some(t) => {
            let ok = (t.geometric - t.exact).abs() <= 1e-7 && t.geometric <= PI + 1e-9;
            r.add(
                "tau21",
                if ok { Status::Pass } else { Status::Fail },
                Some((t.geometric - t.exact).abs()),
                Some(format!("geometric {} exact {} closed form {}", t.geometric, t.exact, t.closed_form)),
            );
        }
        None => r.na("tau21"),
    }
    match bd.and_then(max_subchain_turn_c21) {
        Some(m) => r.bound("tau21_subchains", m.max(0.0) - PI, 1e-9, || format!("max subchain turn {m}")),
        None => r.na("tau21_subchains"),
    }
    match bd.and_then(|d| d.at_x.as_ref()) {
        Some(x) => {
            let amin = x.alpha[0].min(x.alpha[1]);
            r.bound("alpha", (PI / 2.0 - amin).max(0.0), 1e-9, || format!("alpha {:?}", x.alpha));
            let sb: f64 = x.betas.iter().sum();
            r.bound("beta_sum", (sb - PI).max(0.0), 1e-9, || format!("sum {sb}"));
        }
        None => {
            r.na("alpha");
            r.na("beta_sum");
        }
    }
    match bd.and_then(cone_occupied) {
        Some(occ) => r.add(
            "cone_empty",
            Status::Info,
            None,
            Some(if occ { "occupied" } else { "empty" }.into()),
        ),
        None => r.na("cone_empty"),
    }

    let seam = &u.polygon.seam;
    let ok_support = seam.tested.contains(&(seam.piece, true, true));
    let n_ev = u.events.len();
    let (a0, a1) = (u.events[seam.piece].arc, u.events[(seam.piece + 1) % n_ev].arc);
    let total = q.length();
    let span = (a1 - a0).rem_euclid(total);
    let span = if n_ev == 1 { total } else { span };
    let tol = 1e-9 * p.diag();
    let inside = |arc: f64| {
        let d = (arc - a0).rem_euclid(total);
        d > tol && d < span - tol
    };
    let clash = cuts.iter().any(|c| inside(c.foot_arc)) || q.vertex_waypoints().iter().any(|&(j, _)| inside(q.arc[j]));
    r.add(
        "seam",
        if ok_support && !clash { Status::Pass } else { Status::Fail },
        Some(seam.length),
        (!ok_support || clash).then(|| format!("piece {} support {ok_support} clash {clash}", seam.piece)),
    );
    match polygon_simple(&u.polygon.vertices) {
        Ok(()) => r.add("polygon_simple", Status::Pass, None, None),
        Err((a, b)) => r.add("polygon_simple", Status::Fail, None, Some(format!("edges {a} and {b}"))),
    }
    match polygon_simple(&u.polygon.net) {
        Ok(()) => r.add("net_simple", Status::Pass, None, None),
        Err((a, b)) => r.add("net_simple", Status::Fail, None, Some(format!("edges {a} and {b}"))),
    }
    let cons = conservation(p, u);
    let tri: f64 = u.devs.iter().flat_map(|d| d.triangles.iter()).map(|t| t.area()).sum();
    r.bound("area", cons.area / (s + tri), 1e-9, || format!("residual {}", cons.area));
    r.bound("net_area", cons.net_area / s, 1e-9, || format!("residual {}", cons.net_area));
    r.bound("cut_pairing", cons.cut_pairing, 1e-9 * p.diag(), || {
        format!("mismatch {}", cons.cut_pairing)
    });
    let kind = match q.kind {
        LoopKind::ClosedGeodesic => "closed geodesic",
        LoopKind::ClosedQuasigeodesic => "closed quasigeodesic",
        LoopKind::QuasigeodesicLoop => "quasigeodesic loop",
    };
    r.add("loop_kind", Status::Info, q.beta.map(|b| b.0), Some(kind.into()));
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::develop::{GeodesicPath, SurfacePoint};
    use crate::geom::v2;
    use crate::pipeline::{unfold_loop, Options};
    use crate::qloop::{classify, split_halves};
    use crate::solids::cube;
    use crate::spath::{all_cuts, SearchOptions};

    fn triangle_loop(c: &Polyhedron) -> QuasigeodesicLoop {
        let path = GeodesicPath {
            points: [0, 5, 7, 0].iter().map(|&v| SurfacePoint::vertex(c, v)).collect(),
            legs: vec![2, 4, 0],
        };
        classify(c, path, 1e-9).unwrap()
    }

    #[test]
    fn oracle_agrees_with_search_on_cube() {
        let c = cube();
        let q = triangle_loop(&c);
        let (l, r) = split_halves(&c, &q).unwrap();
        for h in [&l, &r] {
            for cut in all_cuts(&c, &q, h, SearchOptions::for_polyhedron(&c)).unwrap() {
                let o = brute_force_shortest(&c, &q, cut.vertex, 8);
                assert!((o.length.unwrap() - cut.length).abs() < 1e-9, "vertex {}", cut.vertex);
                let shallow = brute_force_shortest(&c, &q, cut.vertex, 1);
                assert!(shallow.length.is_none_or(|s| s >= o.length.unwrap() - 1e-12));
            }
        }
    }

    #[test]
    fn cube_report_passes() {
        let c = cube();
        let u = unfold_loop(&c, triangle_loop(&c), Options::for_polyhedron(&c)).unwrap();
        let opts = VerifyOptions {
            oracle_max_faces: Some(8),
            ..Default::default()
        };
        let r = verify_unfolding(&c, &u, opts);
        assert!(r.passed(), "{:#?}", r.failures());
        assert_eq!(r.get("oracle").unwrap().status, Status::Pass);
        assert_eq!(r.get("tau21").unwrap().status, Status::NotApplicable);
        let cons = conservation(&c, &u);
        assert!(cons.net_area < 1e-9 && cons.cut_pairing < 1e-9);
    }

    #[test]
    fn simplicity() {
        let sq = [v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)];
        assert!(polygon_simple(&sq).is_ok());
        let bow = [v2(0.0, 0.0), v2(1.0, 1.0), v2(1.0, 0.0), v2(0.0, 1.0)];
        assert_eq!(polygon_simple(&bow), Err((0, 2)));
        let spike = [v2(0.0, 0.0), v2(2.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0)];
        assert!(polygon_simple(&spike).is_err());
        // Touching at a vertex.
        let pinch = [v2(0.0, 0.0), v2(2.0, 0.0), v2(1.0, 1.0), v2(2.0, 2.0), v2(0.0, 2.0), v2(1.0, 1.0)];
        assert!(polygon_simple(&pinch).is_err());
    }
}
