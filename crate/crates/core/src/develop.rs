//! Intrinsic surface geometry: surface points, the angular neighbourhood
//! of a point, planar unrolling of face chains and straight-line tracing.

use std::f64::consts::{PI, TAU};

use crate::error::{Error, Result};
use crate::geom::{angle_ccw, cross2, rotate, segment_intersection, v2, Iso2, V2, V3};
use crate::mesh::{EdgeId, FaceId, Polyhedron, VertexId};

/// Where a surface point lives.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Locus {
    /// Strictly inside a face, in that face's frame.
    Face {
        face: FaceId,
        uv: V2,
    },
    /// Inside an edge; `t ∈ (0,1)` runs from `edge.v[0]` to `edge.v[1]`.
    Edge {
        edge: EdgeId,
        t: f64,
    },
    Vertex {
        vertex: VertexId,
    },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfacePoint {
    pub locus: Locus,
    pub pos: V3,
}

impl SurfacePoint {
    pub fn vertex(p: &Polyhedron, v: VertexId) -> Self {
        SurfacePoint {
            locus: Locus::Vertex { vertex: v },
            pos: p.vertex(v),
        }
    }

    pub fn is_vertex(&self) -> Option<VertexId> {
        match self.locus {
            Locus::Vertex { vertex } => Some(vertex),
            _ => None,
        }
    }

    /// Builds a point from face coordinates, snapping to an edge or vertex
    /// closer than `tol`.
    pub fn locate(p: &Polyhedron, face: FaceId, uv: V2, tol: f64) -> Self {
        let f = p.face(face);
        let n = f.len();
        for (c, &q) in f.coords.iter().enumerate() {
            if (uv - q).norm() <= tol {
                return SurfacePoint::vertex(p, f.verts[c]);
            }
        }
        for side in 0..n {
            let (a, b) = f.side(side);
            let d = b - a;
            let len = d.norm();
            let dist = cross2(d, uv - a) / len;
            if dist.abs() <= tol {
                let u = ((uv - a).dot(&d) / (len * len)).clamp(0.0, 1.0);
                return SurfacePoint::on_side(p, face, side, u);
            }
        }
        SurfacePoint {
            locus: Locus::Face { face, uv },
            pos: f.to_3d(uv),
        }
    }

    /// Point at parameter `u` along side `side` of `face` (from corner
    /// `side` to corner `side + 1`).
    pub fn on_side(p: &Polyhedron, face: FaceId, side: usize, u: f64) -> Self {
        let f = p.face(face);
        let edge = f.edges[side];
        let a = f.verts[side];
        let t = if a == p.edge(edge).v[0] { u } else { 1.0 - u };
        SurfacePoint::on_edge(p, edge, t)
    }

    pub fn on_edge(p: &Polyhedron, edge: EdgeId, t: f64) -> Self {
        let e = p.edge(edge);
        let pos = p.vertex(e.v[0]) * (1.0 - t) + p.vertex(e.v[1]) * t;
        SurfacePoint {
            locus: Locus::Edge { edge, t },
            pos,
        }
    }

    /// Faces containing the point.
    pub fn faces(&self, p: &Polyhedron) -> Vec<FaceId> {
        match self.locus {
            Locus::Face { face, .. } => vec![face],
            Locus::Edge { edge, .. } => p.edge(edge).sides.iter().map(|s| s.0).collect(),
            Locus::Vertex { vertex } => p.fan(vertex).iter().map(|s| s.0).collect(),
        }
    }

    /// Coordinates in the frame of `face`, if the point lies on it.
    pub fn coords_in(&self, p: &Polyhedron, face: FaceId) -> Option<V2> {
        let f = p.face(face);
        match self.locus {
            Locus::Face { face: g, uv } => (g == face).then_some(uv),
            Locus::Edge { edge, t } => {
                let side = f.edges.iter().position(|&e| e == edge)?;
                let (a, b) = f.side(side);
                let u = if f.verts[side] == p.edge(edge).v[0] { t } else { 1.0 - t };
                Some(a + (b - a) * u)
            }
            Locus::Vertex { vertex } => f.corner_of(vertex).map(|c| f.coords[c]),
        }
    }

    pub fn same_place(&self, other: &SurfacePoint, tol: f64) -> bool {
        match (self.locus, other.locus) {
            (Locus::Vertex { vertex: a }, Locus::Vertex { vertex: b }) => a == b,
            (Locus::Vertex { .. }, _) | (_, Locus::Vertex { .. }) => false,
            _ => (self.pos - other.pos).norm() <= tol,
        }
    }
}

/// The tangent directions at a surface point, laid out as one angular
/// coordinate in `[0, total)` increasing counterclockwise seen from outside.
#[derive(Debug, Clone)]
pub struct Fan {
    pub sectors: Vec<Sector>,
    pub total: f64,
    pub vertex: Option<VertexId>,
}

#[derive(Debug, Clone, Copy)]
pub struct Sector {
    pub face: FaceId,
    /// Unit direction (face frame) where the sector begins.
    pub start: V2,
    pub offset: f64,
    pub span: f64,
}

impl Fan {
    pub fn at(p: &Polyhedron, sp: &SurfacePoint) -> Fan {
        match sp.locus {
            Locus::Face { face, .. } => Fan {
                sectors: vec![Sector {
                    face,
                    start: v2(1.0, 0.0),
                    offset: 0.0,
                    span: TAU,
                }],
                total: TAU,
                vertex: None,
            },
            Locus::Edge { edge, .. } => {
                let sectors = p
                    .edge(edge)
                    .sides
                    .iter()
                    .enumerate()
                    .map(|(k, &(face, side))| {
                        let (a, b) = p.face(face).side(side);
                        Sector {
                            face,
                            start: (b - a).normalize(),
                            offset: k as f64 * PI,
                            span: PI,
                        }
                    })
                    .collect();
                Fan {
                    sectors,
                    total: TAU,
                    vertex: None,
                }
            }
            Locus::Vertex { vertex } => {
                let mut offset = 0.0;
                let mut sectors = Vec::new();
                for &(face, c) in p.fan(vertex) {
                    let f = p.face(face);
                    let here = f.coords[c];
                    let next = f.coords[(c + 1) % f.len()];
                    let span = f.corner_angle(c);
                    sectors.push(Sector {
                        face,
                        start: (next - here).normalize(),
                        offset,
                        span,
                    });
                    offset += span;
                }
                Fan {
                    sectors,
                    total: offset,
                    vertex: Some(vertex),
                }
            }
        }
    }

    /// Angular coordinate of direction `dir` given in the frame of `face`.
    pub fn angle_of(&self, face: FaceId, dir: V2) -> Option<f64> {
        let s = self.sectors.iter().find(|s| s.face == face)?;
        let mut rel = angle_ccw(s.start, dir);
        if rel > s.span {
            // Numerically just outside the sector: snap to the nearer side.
            rel = if rel - s.span < TAU - rel { s.span } else { 0.0 };
        }
        Some(s.offset + rel)
    }

    /// Face and unit direction for an angular coordinate. The third value
    /// is true when the direction lies within `tol` of a sector boundary.
    pub fn direction(&self, angle: f64, tol: f64) -> (FaceId, V2, bool) {
        let a = angle.rem_euclid(self.total);
        let k = self.sectors.iter().rposition(|s| s.offset <= a).unwrap_or(0);
        let s = self.sectors[k];
        let rel = a - s.offset;
        let boundary = self.sectors.len() > 1 && (rel < tol || s.span - rel < tol);
        (s.face, rotate(s.start, rel), boundary)
    }
}

/// A polyline on the surface that is straight inside each face.
#[derive(Debug, Clone, PartialEq)]
pub struct GeodesicPath {
    pub points: Vec<SurfacePoint>,
    /// `legs[i]` is the face holding the segment `points[i] → points[i+1]`.
    pub legs: Vec<FaceId>,
}

/// What happens at a waypoint.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Crossing {
    Endpoint,
    Face,
    Edge(EdgeId),
    Vertex(VertexId),
}

impl GeodesicPath {
    pub fn leg(&self, p: &Polyhedron, i: usize) -> (FaceId, V2, V2) {
        let f = self.legs[i];
        let a = self.points[i].coords_in(p, f).expect("waypoint on leg face");
        let b = self.points[i + 1].coords_in(p, f).expect("waypoint on leg face");
        (f, a, b)
    }

    pub fn leg_length(&self, p: &Polyhedron, i: usize) -> f64 {
        let (_, a, b) = self.leg(p, i);
        (b - a).norm()
    }

    pub fn length(&self, p: &Polyhedron) -> f64 {
        (0..self.legs.len()).map(|i| self.leg_length(p, i)).sum()
    }

    pub fn is_closed(&self, tol: f64) -> bool {
        self.points.len() > 2 && self.points[0].same_place(self.points.last().unwrap(), tol)
    }

    pub fn crossings(&self, closed: bool) -> Vec<Crossing> {
        let n = self.points.len();
        self.points
            .iter()
            .enumerate()
            .map(|(i, sp)| {
                if !closed && (i == 0 || i + 1 == n) {
                    return Crossing::Endpoint;
                }
                match sp.locus {
                    Locus::Face { .. } => Crossing::Face,
                    Locus::Edge { edge, .. } => Crossing::Edge(edge),
                    Locus::Vertex { vertex } => Crossing::Vertex(vertex),
                }
            })
            .collect()
    }

    /// Reverses the path in place.
    pub fn reversed(&self) -> GeodesicPath {
        let mut points = self.points.clone();
        points.reverse();
        let mut legs = self.legs.clone();
        legs.reverse();
        GeodesicPath { points, legs }
    }

    /// Incoming and outgoing unit directions at waypoint `i` (in the
    /// frames of the adjacent legs). For a closed path indices wrap.
    pub fn directions_at(&self, p: &Polyhedron, i: usize, closed: bool) -> Result<((FaceId, V2), (FaceId, V2))> {
        let m = self.legs.len();
        let (inc, out) = if closed {
            ((i + m - 1) % m, i % m)
        } else {
            if i == 0 || i >= m {
                return Err(Error::Invalid(format!("waypoint {i} is an endpoint")));
            }
            (i - 1, i)
        };
        let (fi, a, b) = self.leg(p, inc);
        let (fo, c, d) = self.leg(p, out);
        Ok(((fi, (b - a).normalize()), (fo, (d - c).normalize())))
    }
}

/// Total face angle to the left and right of the path at waypoint `i`.
pub fn side_angles(p: &Polyhedron, path: &GeodesicPath, i: usize, closed: bool) -> Result<(f64, f64)> {
    let ((fi, din), (fo, dout)) = path.directions_at(p, i, closed)?;
    let sp = if closed && i == path.legs.len() {
        &path.points[0]
    } else {
        &path.points[i]
    };
    let fan = Fan::at(p, sp);
    let a_in = fan
        .angle_of(fi, -din)
        .ok_or_else(|| Error::Geometry("incoming leg not incident to waypoint".into()))?;
    let a_out = fan
        .angle_of(fo, dout)
        .ok_or_else(|| Error::Geometry("outgoing leg not incident to waypoint".into()))?;
    let left = (a_in - a_out).rem_euclid(fan.total);
    Ok((left, fan.total - left))
}

/// Planar placements of a chain of faces.
#[derive(Debug, Clone)]
pub struct Development {
    pub faces: Vec<FaceId>,
    /// Maps each face's frame into the common plane.
    pub placements: Vec<Iso2>,
}

impl Development {
    pub fn place(&self, k: usize, uv: V2) -> V2 {
        self.placements[k].apply(uv)
    }

    /// Image of the shared side between faces `k` and `k + 1`, in the
    /// orientation of face `k`.
    pub fn shared_side(&self, p: &Polyhedron, k: usize) -> (V2, V2) {
        let f = p.face(self.faces[k]);
        let side = p.edge_between(self.faces[k], self.faces[k + 1]).expect("adjacent");
        let (a, b) = f.side(side);
        (self.placements[k].apply(a), self.placements[k].apply(b))
    }
}

pub fn unroll_chain(p: &Polyhedron, chain: &[FaceId], base: Iso2) -> Result<Development> {
    let mut placements = Vec::with_capacity(chain.len());
    if chain.is_empty() {
        return Ok(Development { faces: vec![], placements });
    }
    placements.push(base);
    for w in chain.windows(2) {
        let side = p
            .edge_between(w[0], w[1])
            .ok_or_else(|| Error::Invalid(format!("faces {} and {} are not adjacent", w[0], w[1])))?;
        let glue = p.adjacency(w[0], side).glue;
        let last = *placements.last().unwrap();
        placements.push(last.after(&glue));
    }
    Ok(Development {
        faces: chain.to_vec(),
        placements,
    })
}

/// A direction at a surface point: an angle in the frame of `face`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SurfaceDirection {
    pub face: FaceId,
    pub angle: f64,
}

impl SurfaceDirection {
    pub fn unit(&self) -> V2 {
        rotate(v2(1.0, 0.0), self.angle)
    }
}

#[derive(Debug, Clone)]
pub enum Stop {
    MaxLength(f64),
    MaxCrossings(usize),
    HitPoints(Vec<SurfacePoint>),
    SelfIntersection,
}

#[derive(Debug, Clone, PartialEq)]
pub enum TraceEnd {
    MaxLength,
    MaxCrossings,
    /// Reached the given index of the hit-point set.
    HitPoint(usize),
    /// Crossed an earlier leg (index) of the same path.
    SelfIntersection {
        earlier_leg: usize,
    },
    /// Ran exactly into a vertex; the caller decides how to continue.
    VertexHit(VertexId),
    /// Came back to the start point heading the same way.
    Closed,
}

#[derive(Debug, Clone)]
pub struct Trace {
    pub path: GeodesicPath,
    pub end: TraceEnd,
    /// Direction at the end, in the frame of the last leg.
    pub final_dir: V2,
}

#[derive(Debug, Clone, Copy)]
pub struct TraceOptions {
    /// Tolerance for snapping to vertices and edges, in length units.
    pub tol_locus: f64,
    pub crossing_cap: usize,
}

impl TraceOptions {
    pub fn for_polyhedron(p: &Polyhedron) -> Self {
        let f = p.num_faces();
        TraceOptions {
            tol_locus: 1e-9 * p.diag(),
            crossing_cap: 10 * f * f,
        }
    }
}

/// One straight step of a geodesic through a single face.
#[derive(Debug, Clone)]
pub(crate) struct Step {
    pub face: FaceId,
    pub from: V2,
    pub to: V2,
    pub exit: SurfacePoint,
    pub exit_vertex: Option<VertexId>,
    /// State to continue with when the exit is an edge crossing.
    pub next: Option<Walker>,
}

/// Position and heading of a geodesic inside one face.
#[derive(Debug, Clone, Copy)]
pub(crate) struct Walker {
    pub face: FaceId,
    pub pos: V2,
    pub dir: V2,
    /// Sides of the face the walker sits on, which cannot be exits.
    pub skip: [Option<usize>; 2],
}

impl Walker {
    pub fn start(p: &Polyhedron, sp: &SurfacePoint, face: FaceId, dir: V2) -> Result<Walker> {
        let pos = sp
            .coords_in(p, face)
            .ok_or_else(|| Error::Invalid(format!("start point is not on face {face}")))?;
        let f = p.face(face);
        let skip = match sp.locus {
            Locus::Face { .. } => [None, None],
            Locus::Edge { edge, .. } => [f.edges.iter().position(|&e| e == edge), None],
            Locus::Vertex { vertex } => {
                let c = f.corner_of(vertex).unwrap();
                [Some(c), Some((c + f.len() - 1) % f.len())]
            }
        };
        Ok(Walker {
            face,
            pos,
            dir: dir.normalize(),
            skip,
        })
    }

    pub fn step(&self, p: &Polyhedron, tol: f64) -> Result<Step> {
        let f = p.face(self.face);
        let n = f.len();
        let mut best: Option<(f64, usize)> = None;
        for side in 0..n {
            if self.skip.contains(&Some(side)) {
                continue;
            }
            let (a, b) = f.side(side);
            let e = b - a;
            let nout = v2(e.y, -e.x) / e.norm();
            let den = self.dir.dot(&nout);
            if den <= 1e-15 {
                continue;
            }
            let t = (a - self.pos).dot(&nout) / den;
            if best.is_none_or(|(bt, _)| t < bt) {
                best = Some((t, side));
            }
        }
        let (t, side) = best.ok_or_else(|| Error::Geometry(format!("no exit from face {}", self.face)))?;
        let t = t.max(0.0);
        let (a, b) = f.side(side);
        let q = self.pos + self.dir * t;
        let len = (b - a).norm();
        let u = ((q - a).dot(&(b - a)) / (len * len)).clamp(0.0, 1.0);
        if u * len <= tol || (1.0 - u) * len <= tol {
            let c = if u * len <= tol { side } else { (side + 1) % n };
            let v = f.verts[c];
            return Ok(Step {
                face: self.face,
                from: self.pos,
                to: f.coords[c],
                exit: SurfacePoint::vertex(p, v),
                exit_vertex: Some(v),
                next: None,
            });
        }
        let exit = SurfacePoint::on_side(p, self.face, side, u);
        let adj = p.adjacency(self.face, side);
        let g = p.face(adj.face);
        let (ga, gb) = g.side(adj.side);
        // Side `side` of f runs a→b; the twin side of g runs b→a.
        let gpos = gb + (ga - gb) * u;
        let gdir = adj.glue.inverse().apply_vec(self.dir);
        Ok(Step {
            face: self.face,
            from: self.pos,
            to: a + (b - a) * u,
            exit,
            exit_vertex: None,
            next: Some(Walker {
                face: adj.face,
                pos: gpos,
                dir: gdir.normalize(),
                skip: [Some(adj.side), None],
            }),
        })
    }
}

/// Traces a straight line from `start` in direction `dir` until `stop`
/// triggers, a vertex is hit, or the path closes up.
pub fn trace_geodesic(p: &Polyhedron, start: &SurfacePoint, dir: SurfaceDirection, stop: &Stop, opts: TraceOptions) -> Result<Trace> {
    if start.is_vertex().is_some() {
        return Err(Error::Invalid("trace must start away from vertices".into()));
    }
    let mut walker = Walker::start(p, start, dir.face, dir.unit())?;
    let mut path = GeodesicPath {
        points: vec![*start],
        legs: vec![],
    };
    let mut length = 0.0;
    let tol = opts.tol_locus;
    // (leg index, from, to) per face, for self-intersection and closure.
    let mut per_face: Vec<Vec<(usize, V2, V2)>> = vec![Vec::new(); p.num_faces()];
    loop {
        if path.legs.len() >= opts.crossing_cap {
            return Err(Error::CrossingCap {
                crossings: path.legs.len(),
            });
        }
        let step = walker.step(p, tol)?;
        let leg = path.legs.len();
        let mut to = step.to;
        let mut end_point = step.exit;
        let mut end: Option<TraceEnd> = None;

        // Closure: passing back through the start with the same heading.
        if leg > 0 {
            if let Some(s) = start.coords_in(p, step.face) {
                let d = to - step.from;
                let (_, u) = crate::geom::closest_on_segment(s, step.from, to);
                let foot = step.from + d * u;
                if (foot - s).norm() <= tol && u > 0.0 && walker.dir.dot(&dir_in_face(p, dir, step.face)) > 1.0 - 1e-9 {
                    to = s;
                    end_point = *start;
                    end = Some(TraceEnd::Closed);
                }
            }
        }

        if end.is_none() {
            match stop {
                Stop::MaxLength(max) => {
                    let seg = (to - step.from).norm();
                    if length + seg >= *max {
                        let k = (max - length) / seg;
                        to = step.from + (to - step.from) * k;
                        end_point = SurfacePoint::locate(p, step.face, to, tol);
                        end = Some(TraceEnd::MaxLength);
                    }
                }
                Stop::MaxCrossings(max) => {
                    if leg + 1 >= *max && step.exit_vertex.is_none() {
                        end = Some(TraceEnd::MaxCrossings);
                    }
                }
                Stop::HitPoints(targets) => {
                    let mut hit: Option<(f64, usize, V2)> = None;
                    for (k, t) in targets.iter().enumerate() {
                        if let Some(q) = t.coords_in(p, step.face) {
                            let (c, u) = crate::geom::closest_on_segment(q, step.from, to);
                            if (c - q).norm() <= tol && (leg > 0 || u > 0.0) && hit.is_none_or(|h| u < h.0) {
                                hit = Some((u, k, q));
                            }
                        }
                    }
                    if let Some((_, k, q)) = hit {
                        to = q;
                        end_point = targets[k];
                        end = Some(TraceEnd::HitPoint(k));
                    }
                }
                Stop::SelfIntersection => {
                    let mut hit: Option<(f64, usize)> = None;
                    for &(j, a, b) in &per_face[step.face] {
                        if j + 1 == leg {
                            continue;
                        }
                        if let Some((s, _)) = segment_intersection(step.from, to, a, b, tol) {
                            if hit.is_none_or(|h| s < h.0) {
                                hit = Some((s, j));
                            }
                        }
                    }
                    if let Some((s, j)) = hit {
                        to = step.from + (to - step.from) * s;
                        end_point = SurfacePoint::locate(p, step.face, to, tol);
                        end = Some(TraceEnd::SelfIntersection { earlier_leg: j });
                    }
                }
            }
        }

        length += (to - step.from).norm();
        per_face[step.face].push((leg, step.from, to));
        path.legs.push(step.face);
        path.points.push(end_point);
        if let Some(end) = end {
            return Ok(Trace {
                path,
                end,
                final_dir: walker.dir,
            });
        }
        if let Some(v) = step.exit_vertex {
            return Ok(Trace {
                path,
                end: TraceEnd::VertexHit(v),
                final_dir: walker.dir,
            });
        }
        walker = step.next.expect("edge crossing continues");
    }
}

fn dir_in_face(p: &Polyhedron, dir: SurfaceDirection, face: FaceId) -> V2 {
    if face == dir.face {
        return dir.unit();
    }
    // Start on an edge: carry the direction across the edge.
    if let Some(side) = p.edge_between(face, dir.face) {
        return p.adjacency(face, side).glue.apply_vec(dir.unit());
    }
    V2::zeros()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::solids::cube;
    use approx::assert_relative_eq;

    fn mid_front(p: &Polyhedron) -> SurfacePoint {
        // Front face (y = 0) centre.
        let f = p.face(2);
        SurfacePoint::locate(p, 2, f.to_2d(V3::new(0.5, 0.0, 0.5)), 1e-9)
    }

    #[test]
    fn two_cube_faces_unroll_to_rectangle() {
        let c = cube();
        let dev = unroll_chain(&c, &[2, 5], Iso2::IDENTITY).unwrap();
        let mut pts = Vec::new();
        for (k, &f) in dev.faces.iter().enumerate() {
            for &q in &c.face(f).coords {
                pts.push(dev.place(k, q));
            }
        }
        let xs: Vec<f64> = pts.iter().map(|q| q.x).collect();
        let ys: Vec<f64> = pts.iter().map(|q| q.y).collect();
        let w = xs.iter().cloned().fold(f64::MIN, f64::max) - xs.iter().cloned().fold(f64::MAX, f64::min);
        let h = ys.iter().cloned().fold(f64::MIN, f64::max) - ys.iter().cloned().fold(f64::MAX, f64::min);
        let (w, h) = (w.max(h), w.min(h));
        assert_relative_eq!(w, 2.0, epsilon = 1e-12);
        assert_relative_eq!(h, 1.0, epsilon = 1e-12);
    }

    #[test]
    fn band_strip_has_parallel_ends() {
        let c = cube();
        // front, right, back, left
        let dev = unroll_chain(&c, &[2, 5, 3, 4, 2], Iso2::IDENTITY).unwrap();
        let a = dev.placements[0];
        let b = dev.placements[4];
        assert_relative_eq!(crate::geom::wrap_pi(a.angle() - b.angle()), 0.0, epsilon = 1e-12);
        assert_relative_eq!((a.t - b.t).norm(), 4.0, epsilon = 1e-12);
    }

    #[test]
    fn non_adjacent_chain_errors() {
        let c = cube();
        assert!(unroll_chain(&c, &[0, 1], Iso2::IDENTITY).is_err());
    }

    #[test]
    fn cube_band_closes_with_length_four() {
        let c = cube();
        let start = mid_front(&c);
        // Horizontal in 3D: +x direction.
        let f = c.face(2);
        let d = f.to_2d(V3::new(1.5, 0.0, 0.5)) - f.to_2d(V3::new(0.5, 0.0, 0.5));
        let dir = SurfaceDirection {
            face: 2,
            angle: d.y.atan2(d.x),
        };
        let tr = trace_geodesic(&c, &start, dir, &Stop::MaxCrossings(100), TraceOptions::for_polyhedron(&c)).unwrap();
        assert_eq!(tr.end, TraceEnd::Closed);
        assert_relative_eq!(tr.path.length(&c), 4.0, epsilon = 1e-12);
        for i in 1..tr.path.points.len() - 1 {
            let (l, r) = side_angles(&c, &tr.path, i, false).unwrap();
            assert_relative_eq!(l, PI, epsilon = 1e-9);
            assert_relative_eq!(r, PI, epsilon = 1e-9);
        }
    }

    #[test]
    fn aimed_at_vertex_reports_hit() {
        let c = cube();
        let start = mid_front(&c);
        let f = c.face(2);
        // Towards v6 = (1,0,1).
        let d = f.to_2d(V3::new(1.0, 0.0, 1.0)) - f.to_2d(V3::new(0.5, 0.0, 0.5));
        let dir = SurfaceDirection {
            face: 2,
            angle: d.y.atan2(d.x),
        };
        let tr = trace_geodesic(&c, &start, dir, &Stop::MaxCrossings(100), TraceOptions::for_polyhedron(&c)).unwrap();
        assert_eq!(tr.end, TraceEnd::VertexHit(6));
    }

    #[test]
    fn vertex_fan_and_corner_angles() {
        let c = cube();
        let fan = Fan::at(&c, &SurfacePoint::vertex(&c, 0));
        assert_relative_eq!(fan.total, 1.5 * PI, epsilon = 1e-12);
        assert_eq!(fan.sectors.len(), 3);
    }
}
