//! Quasigeodesic loops: construction from a seed ray, classification by
//! side angles, and slicing the surface into the two halves.

use std::collections::VecDeque;
use std::f64::consts::PI;

use crate::develop::{side_angles, Fan, GeodesicPath, Locus, SurfaceDirection, SurfacePoint, TraceOptions, Walker};
use crate::error::{Error, Result};
use crate::geom::{cross2, polygon_area, segment_intersection, V2};
use crate::mesh::{FaceId, Polyhedron, VertexId};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LoopKind {
    ClosedGeodesic,
    ClosedQuasigeodesic,
    QuasigeodesicLoop,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Left,
    Right,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::Left => Side::Right,
            Side::Right => Side::Left,
        }
    }

    pub fn index(self) -> usize {
        match self {
            Side::Left => 0,
            Side::Right => 1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LoopPoint {
    pub point: SurfacePoint,
    pub left: f64,
    pub right: f64,
}

/// A simple closed curve, straight in every face, with at most one
/// waypoint (always waypoint 0) where a side angle exceeds π.
#[derive(Debug, Clone)]
pub struct QuasigeodesicLoop {
    /// Closed: `points[0]` and the last point coincide.
    pub path: GeodesicPath,
    pub kind: LoopKind,
    /// The exceptional point, or the meeting point of a traced loop.
    pub loop_point: Option<LoopPoint>,
    /// The angle above π at the loop point and the side holding it.
    pub beta: Option<(f64, Side)>,
    /// `(L, R)` at waypoints `0..legs`.
    pub angles: Vec<(f64, f64)>,
    /// Arc length at the start of every leg, plus the total at the end.
    pub arc: Vec<f64>,
}

impl QuasigeodesicLoop {
    pub fn length(&self) -> f64 {
        *self.arc.last().unwrap()
    }

    pub fn num_legs(&self) -> usize {
        self.path.legs.len()
    }

    pub fn leg(&self, p: &Polyhedron, i: usize) -> (FaceId, V2, V2) {
        self.path.leg(p, i)
    }

    /// Waypoint indices at polyhedron vertices.
    pub fn vertex_waypoints(&self) -> Vec<(usize, VertexId)> {
        (0..self.num_legs())
            .filter_map(|i| self.path.points[i].is_vertex().map(|v| (i, v)))
            .collect()
    }

    /// Interior angle on `side` at waypoint `i`.
    pub fn side_angle(&self, i: usize, side: Side) -> f64 {
        let (l, r) = self.angles[i];
        match side {
            Side::Left => l,
            Side::Right => r,
        }
    }

    /// True when the exceptional point carries an angle above π.
    pub fn has_exceptional_point(&self) -> bool {
        self.kind == LoopKind::QuasigeodesicLoop
    }
}

/// How the surface angle is split when a traced branch hits a vertex:
/// the left side receives `left_fraction` of it.
#[derive(Debug, Clone, Copy)]
pub struct VertexRule {
    pub left_fraction: f64,
}

impl Default for VertexRule {
    fn default() -> Self {
        VertexRule { left_fraction: 0.5 }
    }
}

#[derive(Debug, Clone, Copy)]
pub struct LoopOptions {
    pub trace: TraceOptions,
    pub rule: VertexRule,
    /// Angle tolerance, radians.
    pub tol_angle: f64,
}

impl LoopOptions {
    pub fn for_polyhedron(p: &Polyhedron) -> Self {
        LoopOptions {
            trace: TraceOptions::for_polyhedron(p),
            rule: VertexRule::default(),
            tol_angle: 1e-9,
        }
    }
}

struct Branch {
    walker: Option<Walker>,
    points: Vec<SurfacePoint>,
    legs: Vec<(FaceId, V2, V2)>,
    start_dir: V2,
    start_face: FaceId,
}

fn leave_vertex(p: &Polyhedron, v: VertexId, face: FaceId, dir: V2, rule: VertexRule, tol: f64) -> Result<Walker> {
    let sp = SurfacePoint::vertex(p, v);
    let fan = Fan::at(p, &sp);
    let a_in = fan
        .angle_of(face, -dir)
        .ok_or_else(|| Error::Geometry("arrival face not at vertex".into()))?;
    let a_out = a_in - rule.left_fraction * fan.total;
    let (g, d, boundary) = fan.direction(a_out, tol);
    if boundary {
        let f = p.face(g);
        let c = f.corner_of(v).unwrap();
        let next = f.verts[(c + 1) % f.len()];
        return Err(Error::AlongEdge { edge: [v, next] });
    }
    Walker::start(p, &sp, g, d)
}

/// Extends a geodesic both ways from `start` until the branches meet (or
/// one meets itself, or it closes), bisecting the surface angle at every
/// vertex passed.
pub fn construct_loop(p: &Polyhedron, start: &SurfacePoint, dir: SurfaceDirection, opts: LoopOptions) -> Result<QuasigeodesicLoop> {
    if start.is_vertex().is_some() {
        return Err(Error::Invalid("loop seed must not be a vertex".into()));
    }
    let tol = opts.trace.tol_locus;
    let d = dir.unit();
    let mut branches = [
        Branch {
            walker: Some(Walker::start(p, start, dir.face, d)?),
            points: vec![*start],
            legs: vec![],
            start_dir: d,
            start_face: dir.face,
        },
        Branch {
            walker: Some(Walker::start(p, start, dir.face, -d)?),
            points: vec![*start],
            legs: vec![],
            start_dir: -d,
            start_face: dir.face,
        },
    ];
    let mut per_face: Vec<Vec<(usize, usize, V2, V2)>> = vec![Vec::new(); p.num_faces()];
    let mut total = 0usize;
    let mut turn = 0usize;
    loop {
        if total >= opts.trace.crossing_cap {
            return Err(Error::CrossingCap { crossings: total });
        }
        let b = turn % 2;
        turn += 1;
        let walker = branches[b].walker.expect("active branch");
        let step = walker.step(p, tol)?;
        let leg = branches[b].legs.len();
        let (face, from, to) = (step.face, step.from, step.to);

        // Back through the seed heading the same way: a closed curve.
        if leg > 0 {
            if let Some(s) = start.coords_in(p, face) {
                let (foot, u) = crate::geom::closest_on_segment(s, from, to);
                let same_dir = if face == branches[b].start_face {
                    walker.dir.dot(&branches[b].start_dir)
                } else if let Some(side) = p.edge_between(face, branches[b].start_face) {
                    walker.dir.dot(&p.adjacency(face, side).glue.apply_vec(branches[b].start_dir))
                } else {
                    0.0
                };
                if (foot - s).norm() <= tol && u > 0.0 && same_dir > 1.0 - 1e-9 {
                    let br = &mut branches[b];
                    br.legs.push((face, from, s));
                    br.points.push(*start);
                    let mut path = GeodesicPath {
                        points: br.points.clone(),
                        legs: br.legs.iter().map(|l| l.0).collect(),
                    };
                    if b == 1 {
                        path = path.reversed();
                    }
                    return finish(p, path, opts);
                }
            }
        }

        // Earliest crossing of any earlier leg in this face.
        let mut hit: Option<(f64, usize, usize, f64)> = None;
        for &(ob, ol, a, c) in &per_face[face] {
            if ob == b && ol + 1 == leg {
                continue;
            }
            if ob != b && ol == 0 && leg == 0 {
                continue;
            }
            if let Some((s, t)) = segment_intersection(from, to, a, c, tol) {
                if s * (to - from).norm() <= tol && leg > 0 && ob == b && ol + 1 == leg {
                    continue;
                }
                if hit.is_none_or(|h| s < h.0) {
                    hit = Some((s, ob, ol, t));
                }
            }
        }
        if let Some((s, ob, ol, _)) = hit {
            let xuv = from + (to - from) * s;
            let x = SurfacePoint::locate(p, face, xuv, tol);
            if let Some(v) = x.is_vertex() {
                return Err(Error::MeetAtVertex(v));
            }
            let path = if ob == b {
                // One branch ran into itself.
                let br = &branches[b];
                let mut points = vec![x];
                let mut legs = vec![br.legs[ol].0];
                for k in ol + 1..leg {
                    points.push(br.points[k]);
                    legs.push(br.legs[k].0);
                }
                points.push(br.points[leg]);
                legs.push(face);
                points.push(x);
                let path = GeodesicPath { points, legs };
                if b == 1 {
                    path.reversed()
                } else {
                    path
                }
            } else {
                // Forward leg `fl` and backward leg `bl` meet at x.
                let (fl, bl) = if b == 0 { (leg, ol) } else { (ol, leg) };
                let fw = &branches[0];
                let bw = &branches[1];
                let face_of = |br: &Branch, k: usize, cur: usize| if k == cur && br.legs.len() == k { face } else { br.legs[k].0 };
                let mut points = vec![x];
                let mut legs = vec![];
                for k in (0..=bl).rev() {
                    legs.push(face_of(bw, k, if b == 1 { leg } else { usize::MAX }));
                    points.push(bw.points[k]);
                }
                for k in 0..=fl {
                    if k > 0 {
                        points.push(fw.points[k]);
                    }
                    legs.push(face_of(fw, k, if b == 0 { leg } else { usize::MAX }));
                }
                points.push(x);
                // points: x, b_bl..b_1, p, f_1..f_fl, x
                merge_straight_waypoint(p, GeodesicPath { points, legs }, bl + 1)
            };
            return finish(p, path, opts);
        }

        per_face[face].push((b, leg, from, to));
        total += 1;
        let br = &mut branches[b];
        br.legs.push((face, from, to));
        br.points.push(step.exit);
        br.walker = Some(match step.exit_vertex {
            Some(v) => leave_vertex(p, v, face, walker.dir, opts.rule, opts.tol_angle)?,
            None => step.next.expect("crossing continues"),
        });
    }
}

/// Drops waypoint `k` when both adjacent legs lie in the same face.
fn merge_straight_waypoint(_p: &Polyhedron, mut path: GeodesicPath, k: usize) -> GeodesicPath {
    if k > 0 && k < path.legs.len() && path.legs[k - 1] == path.legs[k] {
        if let Locus::Face { .. } = path.points[k].locus {
            path.points.remove(k);
            path.legs.remove(k);
        }
    }
    path
}

fn finish(p: &Polyhedron, path: GeodesicPath, opts: LoopOptions) -> Result<QuasigeodesicLoop> {
    let x = path.points[0];
    let mut q = classify(p, path, opts.tol_angle)?;
    if q.loop_point.is_none() {
        // Report where the construction closed, even when unexceptional.
        let k = (0..q.num_legs()).find(|&i| q.path.points[i].same_place(&x, opts.trace.tol_locus));
        if let Some(k) = k {
            let (l, r) = q.angles[k];
            q.loop_point = Some(LoopPoint {
                point: x,
                left: l,
                right: r,
            });
        }
    }
    Ok(q)
}

fn rotate_closed(path: &GeodesicPath, k: usize) -> GeodesicPath {
    let m = path.legs.len();
    let mut points = Vec::with_capacity(m + 1);
    let mut legs = Vec::with_capacity(m);
    for i in 0..m {
        points.push(path.points[(k + i) % m]);
        legs.push(path.legs[(k + i) % m]);
    }
    points.push(path.points[k % m]);
    GeodesicPath { points, legs }
}

/// Computes side angles everywhere and decides the loop kind. A single
/// violating point becomes waypoint 0.
pub fn classify(p: &Polyhedron, path: GeodesicPath, tol_angle: f64) -> Result<QuasigeodesicLoop> {
    let m = path.legs.len();
    if m < 2 || !path.is_closed(1e-9 * p.diag()) {
        return Err(Error::NotQuasigeodesic("path is not closed".into()));
    }
    let angles: Vec<(f64, f64)> = (0..m).map(|i| side_angles(p, &path, i, true)).collect::<Result<_>>()?;
    let bad: Vec<usize> = (0..m)
        .filter(|&i| angles[i].0 > PI + tol_angle || angles[i].1 > PI + tol_angle)
        .collect();
    match bad.len() {
        0 => {
            let geodesic = (0..m).all(|i| path.points[i].is_vertex().is_none() && (angles[i].0 - PI).abs() <= tol_angle);
            let kind = if geodesic {
                LoopKind::ClosedGeodesic
            } else {
                LoopKind::ClosedQuasigeodesic
            };
            Ok(build(p, path, kind, angles, None))
        }
        1 => {
            let k = bad[0];
            let path = rotate_closed(&path, k);
            let mut angles = angles;
            angles.rotate_left(k);
            let (l, r) = angles[0];
            let lp = LoopPoint {
                point: path.points[0],
                left: l,
                right: r,
            };
            let beta = if l > r { (l, Side::Left) } else { (r, Side::Right) };
            let mut q = build(p, path, LoopKind::QuasigeodesicLoop, angles, Some(lp));
            q.beta = Some(beta);
            Ok(q)
        }
        n => Err(Error::NotQuasigeodesic(format!("{n} points with a side angle above π"))),
    }
}

fn build(p: &Polyhedron, path: GeodesicPath, kind: LoopKind, angles: Vec<(f64, f64)>, lp: Option<LoopPoint>) -> QuasigeodesicLoop {
    let mut arc = vec![0.0];
    for i in 0..path.legs.len() {
        arc.push(arc[i] + path.leg_length(p, i));
    }
    QuasigeodesicLoop {
        path,
        kind,
        loop_point: lp,
        beta: None,
        angles,
        arc,
    }
}

/// One side of the surface cut along the loop.
#[derive(Debug, Clone)]
pub struct Half {
    pub side: Side,
    /// Face pieces (face frame coordinates, counterclockwise).
    pub regions: Vec<(FaceId, Vec<V2>)>,
    pub contained_vertices: Vec<VertexId>,
    /// Curvature enclosed.
    pub omega_q: f64,
    /// Boundary turn of the loop seen from this half.
    pub tau_q: f64,
    pub area: f64,
}

#[derive(Debug, Clone)]
struct Region {
    pts: Vec<V2>,
    corner: Vec<Option<VertexId>>,
    side: Option<Side>,
}

fn point_in_polygon(q: V2, poly: &[V2]) -> bool {
    let n = poly.len();
    let mut inside = false;
    for i in 0..n {
        let a = poly[i];
        let b = poly[(i + 1) % n];
        if (a.y > q.y) != (b.y > q.y) {
            let x = a.x + (q.y - a.y) / (b.y - a.y) * (b.x - a.x);
            if q.x < x {
                inside = !inside;
            }
        }
    }
    inside
}

/// Inserts `q` into the boundary of `r` (or finds it), returning its index.
fn insert_on_boundary(r: &mut Region, q: V2, tol: f64) -> Option<usize> {
    if let Some(i) = r.pts.iter().position(|&a| (a - q).norm() <= tol) {
        return Some(i);
    }
    let n = r.pts.len();
    for i in 0..n {
        let a = r.pts[i];
        let b = r.pts[(i + 1) % n];
        let (c, u) = crate::geom::closest_on_segment(q, a, b);
        if (c - q).norm() <= tol && u > 0.0 && u < 1.0 {
            r.pts.insert(i + 1, q);
            r.corner.insert(i + 1, None);
            return Some(i + 1);
        }
    }
    None
}

fn split_region(r: &Region, chord: &[V2], tol: f64) -> Option<(Region, Region)> {
    let mut r = r.clone();
    let s = *chord.first().unwrap();
    let e = *chord.last().unwrap();
    insert_on_boundary(&mut r, s, tol)?;
    insert_on_boundary(&mut r, e, tol)?;
    let is = r.pts.iter().position(|&a| (a - s).norm() <= tol)?;
    let ie = r.pts.iter().position(|&a| (a - e).norm() <= tol)?;
    if is == ie {
        return None;
    }
    let n = r.pts.len();
    let inner = &chord[1..chord.len() - 1];
    // Left of the chord: s, chord, e, boundary after e up to s.
    let mut left = Region {
        pts: vec![r.pts[is]],
        corner: vec![r.corner[is]],
        side: Some(Side::Left),
    };
    for &q in inner {
        left.pts.push(q);
        left.corner.push(None);
    }
    let mut k = ie;
    while k != is {
        left.pts.push(r.pts[k]);
        left.corner.push(r.corner[k]);
        k = (k + 1) % n;
    }
    let mut right = Region {
        pts: vec![r.pts[ie]],
        corner: vec![r.corner[ie]],
        side: Some(Side::Right),
    };
    for &q in inner.iter().rev() {
        right.pts.push(q);
        right.corner.push(None);
    }
    let mut k = is;
    while k != ie {
        right.pts.push(r.pts[k]);
        right.corner.push(r.corner[k]);
        k = (k + 1) % n;
    }
    Some((left, right))
}

/// Maximal runs of loop legs inside one face, as polylines from boundary
/// to boundary.
fn chords(p: &Polyhedron, q: &QuasigeodesicLoop) -> Result<Vec<(FaceId, Vec<V2>)>> {
    let m = q.num_legs();
    let on_boundary = |i: usize| !matches!(q.path.points[i % m].locus, Locus::Face { .. });
    let start = (0..m)
        .find(|&i| on_boundary(i))
        .ok_or_else(|| Error::Slicing("loop never leaves a face".into()))?;
    let mut out = Vec::new();
    let mut i = 0;
    while i < m {
        let k = (start + i) % m;
        let face = q.path.legs[k];
        let mut pts = vec![q.path.points[k].coords_in(p, face).unwrap()];
        let mut j = i;
        loop {
            let kk = (start + j) % m;
            if q.path.legs[kk] != face {
                return Err(Error::Slicing("interior waypoint between different faces".into()));
            }
            pts.push(q.path.points[kk + 1].coords_in(p, face).unwrap());
            j += 1;
            if on_boundary(start + j) {
                break;
            }
        }
        out.push((face, pts));
        i = j;
    }
    Ok(out)
}

/// Slices the surface along the loop and returns the left and right halves.
pub fn split_halves(p: &Polyhedron, q: &QuasigeodesicLoop) -> Result<(Half, Half)> {
    let tol = 1e-9 * p.diag();
    let mut regions: Vec<Vec<Region>> = p
        .faces()
        .iter()
        .map(|f| {
            vec![Region {
                pts: f.coords.clone(),
                corner: f.verts.iter().map(|&v| Some(v)).collect(),
                side: None,
            }]
        })
        .collect();
    for (face, chord) in chords(p, q)? {
        let probe = (chord[0] + chord[1]) * 0.5;
        let list = &mut regions[face];
        let idx = list
            .iter()
            .position(|r| point_in_polygon(probe, &r.pts))
            .ok_or_else(|| Error::Slicing(format!("chord in face {face} outside every region")))?;
        let (a, b) = split_region(&list[idx], &chord, tol)
            .ok_or_else(|| Error::Slicing(format!("chord endpoints not on region boundary in face {face}")))?;
        list.swap_remove(idx);
        list.push(a);
        list.push(b);
    }

    let on_q: Vec<bool> = {
        let mut v = vec![false; p.num_vertices()];
        for (_, w) in q.vertex_waypoints() {
            v[w] = true;
        }
        v
    };
    let mut crossed = vec![false; p.num_edges()];
    for sp in &q.path.points {
        if let Locus::Edge { edge, .. } = sp.locus {
            crossed[edge] = true;
        }
    }
    let mut vside: Vec<Option<Side>> = vec![None; p.num_vertices()];
    let mut queue = VecDeque::new();
    for list in &regions {
        for r in list {
            let Some(s) = r.side else { continue };
            for c in r.corner.iter().flatten() {
                if on_q[*c] {
                    continue;
                }
                match vside[*c] {
                    None => {
                        vside[*c] = Some(s);
                        queue.push_back(*c);
                    }
                    Some(t) if t != s => {
                        return Err(Error::Slicing(format!("vertex {c} lies on both sides")));
                    }
                    _ => {}
                }
            }
        }
    }
    while let Some(v) = queue.pop_front() {
        for (ei, e) in p.edges().iter().enumerate() {
            if crossed[ei] || !e.v.contains(&v) {
                continue;
            }
            let w = if e.v[0] == v { e.v[1] } else { e.v[0] };
            if on_q[w] {
                continue;
            }
            match vside[w] {
                None => {
                    vside[w] = vside[v];
                    queue.push_back(w);
                }
                Some(t) if Some(t) != vside[v] => {
                    return Err(Error::Slicing(format!("vertex {w} reached from both sides")));
                }
                _ => {}
            }
        }
    }
    for (v, s) in vside.iter().enumerate() {
        if s.is_none() && !on_q[v] {
            return Err(Error::Slicing(format!("side of vertex {v} undetermined")));
        }
    }
    for (fi, list) in regions.iter_mut().enumerate() {
        for r in list.iter_mut() {
            if r.side.is_none() {
                r.side = r.corner.iter().flatten().find_map(|&c| vside[c]);
                if r.side.is_none() {
                    return Err(Error::Slicing(format!("face {fi} has only loop vertices")));
                }
            }
        }
    }

    let make = |side: Side| -> Half {
        let mut half_regions = Vec::new();
        let mut area = 0.0;
        for (fi, list) in regions.iter().enumerate() {
            for r in list.iter().filter(|r| r.side == Some(side)) {
                area += polygon_area(&r.pts);
                half_regions.push((fi, r.pts.clone()));
            }
        }
        let contained: Vec<VertexId> = (0..p.num_vertices()).filter(|&v| vside[v] == Some(side)).collect();
        let omega_q = contained.iter().map(|&v| p.curvatures()[v]).sum();
        let tau_q = (0..q.num_legs()).map(|i| PI - q.side_angle(i, side)).sum();
        Half {
            side,
            regions: half_regions,
            contained_vertices: contained,
            omega_q,
            tau_q,
            area,
        }
    };
    Ok((make(Side::Left), make(Side::Right)))
}

/// Signed turn of a planar polyline corner; used by tests.
pub fn corner_turn(a: V2, b: V2, c: V2) -> f64 {
    cross2(b - a, c - b).atan2((b - a).dot(&(c - b)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geom::V3;
    use crate::solids::cube;
    use approx::assert_relative_eq;

    pub(crate) fn cube_triangle_loop(c: &Polyhedron) -> QuasigeodesicLoop {
        let path = GeodesicPath {
            points: [0, 5, 7, 0].iter().map(|&v| SurfacePoint::vertex(c, v)).collect(),
            legs: vec![2, 4, 0],
        };
        classify(c, path, 1e-9).unwrap()
    }

    fn seed(c: &Polyhedron, at: V3, towards: V3) -> (SurfacePoint, SurfaceDirection) {
        let f = c.face(2);
        let d = f.to_2d(towards) - f.to_2d(at);
        (
            SurfacePoint::locate(c, 2, f.to_2d(at), 1e-9),
            SurfaceDirection {
                face: 2,
                angle: d.y.atan2(d.x),
            },
        )
    }

    fn check_halves(c: &Polyhedron, q: &QuasigeodesicLoop) -> (Half, Half) {
        let (l, r) = split_halves(c, q).unwrap();
        for h in [&l, &r] {
            assert_relative_eq!(h.tau_q + h.omega_q, 2.0 * PI, epsilon = 1e-9);
        }
        assert_relative_eq!(l.area + r.area, c.surface_area(), epsilon = 1e-9);
        let on_q = q.vertex_waypoints().len();
        assert_eq!(l.contained_vertices.len() + r.contained_vertices.len() + on_q, c.num_vertices());
        (l, r)
    }

    #[test]
    fn traced_band_is_closed_geodesic() {
        let c = cube();
        let (s, d) = seed(&c, V3::new(0.5, 0.0, 0.5), V3::new(1.0, 0.0, 0.5));
        let q = construct_loop(&c, &s, d, LoopOptions::for_polyhedron(&c)).unwrap();
        assert_eq!(q.kind, LoopKind::ClosedGeodesic);
        assert_relative_eq!(q.length(), 4.0, epsilon = 1e-12);
        let (l, r) = check_halves(&c, &q);
        assert_eq!(l.contained_vertices.len(), 4);
        assert_eq!(r.contained_vertices.len(), 4);
        assert_relative_eq!(l.area, 3.0, epsilon = 1e-9);
    }

    #[test]
    fn triangle_loop_is_closed_quasigeodesic() {
        let c = cube();
        let q = cube_triangle_loop(&c);
        assert_eq!(q.kind, LoopKind::ClosedQuasigeodesic);
        assert!(q.loop_point.is_none());
        assert_relative_eq!(q.length(), 3.0 * 2f64.sqrt(), epsilon = 1e-12);
        let (l, r) = check_halves(&c, &q);
        assert_eq!(l.contained_vertices, vec![2]);
        assert_eq!(r.contained_vertices, vec![1, 3, 4, 6]);
        assert_relative_eq!(l.omega_q, PI / 2.0, epsilon = 1e-12);
        assert_relative_eq!(l.area, 1.5, epsilon = 1e-9);
    }

    #[test]
    fn reversed_loop_swaps_sides() {
        let c = cube();
        let q = cube_triangle_loop(&c);
        let rq = classify(&c, q.path.reversed(), 1e-9).unwrap();
        let (l, _) = split_halves(&c, &rq).unwrap();
        assert_eq!(l.contained_vertices, vec![1, 3, 4, 6]);
    }

    #[test]
    fn traced_through_vertex_gives_valid_loop() {
        let c = cube();
        let (s, d) = seed(&c, V3::new(0.3, 0.0, 0.6), V3::new(1.0, 0.0, 1.0));
        let q = construct_loop(&c, &s, d, LoopOptions::for_polyhedron(&c)).unwrap();
        assert!(q.vertex_waypoints().iter().any(|&(_, v)| v == 6));
        if q.kind == LoopKind::QuasigeodesicLoop {
            let (beta, side) = q.beta.unwrap();
            assert!(beta > PI);
            assert_relative_eq!(q.side_angle(0, side), beta);
        }
        check_halves(&c, &q);
    }

    #[test]
    fn symmetric_vertex_passage_runs_along_edge() {
        let c = cube();
        let (s, d) = seed(&c, V3::new(0.5, 0.0, 0.5), V3::new(1.0, 0.0, 1.0));
        let e = construct_loop(&c, &s, d, LoopOptions::for_polyhedron(&c)).unwrap_err();
        assert!(matches!(e, Error::AlongEdge { .. }));
    }

    #[test]
    fn triangle_inside_face_rejected() {
        let c = cube();
        let f = c.face(2);
        let pts: Vec<SurfacePoint> = [(0.2, 0.2), (0.8, 0.2), (0.5, 0.8), (0.2, 0.2)]
            .iter()
            .map(|&(x, z)| SurfacePoint::locate(&c, 2, f.to_2d(V3::new(x, 0.0, z)), 1e-9))
            .collect();
        let path = GeodesicPath {
            points: pts,
            legs: vec![2, 2, 2],
        };
        assert!(matches!(classify(&c, path, 1e-9), Err(Error::NotQuasigeodesic(_))));
    }
}
