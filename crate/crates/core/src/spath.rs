//! Shortest paths from vertices to the loop, by branch-and-bound over
//! unrolled face sequences.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use crate::develop::{Fan, Locus, SurfacePoint};
use crate::error::{Error, Result};
use crate::geom::{clip_to_cone, closest_on_segment, cross2, Iso2, V2, V3};
use crate::mesh::{FaceId, Polyhedron, VertexId};
use crate::qloop::{Half, QuasigeodesicLoop, Side};

/// One selected shortest path from a vertex to the loop.
#[derive(Debug, Clone)]
pub struct CutSegment {
    pub vertex: VertexId,
    pub side: Side,
    /// Foot of the path on the loop.
    pub projection: SurfacePoint,
    pub length: f64,
    pub face_seq: Vec<FaceId>,
    /// Number of distinct co-minimal paths found.
    pub tied: usize,
    pub hits_loop_point: bool,
    /// Pieces from the vertex to the foot, in face coordinates.
    pub legs: Vec<(FaceId, V2, V2)>,
    /// Loop arc length of the foot.
    pub foot_arc: f64,
    /// Loop waypoint at the foot, if any.
    pub foot_waypoint: Option<usize>,
    /// Angle at the foot from the half's outgoing boundary direction to
    /// the cut, counterclockwise inside the half.
    pub phi: f64,
}

impl CutSegment {
    /// The segment as 3D points, vertex first.
    pub fn polyline_3d(&self, p: &Polyhedron) -> Vec<V3> {
        let mut out = vec![p.face(self.legs[0].0).to_3d(self.legs[0].1)];
        for &(f, _, b) in &self.legs {
            out.push(p.face(f).to_3d(b));
        }
        out
    }
}

#[derive(Debug, Clone, Copy)]
pub struct SearchOptions {
    /// Relative length tolerance for ties.
    pub tie_rel: f64,
    pub max_pops: usize,
    pub tol_locus: f64,
}

impl SearchOptions {
    pub fn for_polyhedron(p: &Polyhedron) -> Self {
        SearchOptions {
            tie_rel: 1e-9,
            max_pops: 500_000,
            tol_locus: 1e-9 * p.diag(),
        }
    }
}

struct Node {
    bound: f64,
    seq: usize,
    chain: Vec<FaceId>,
    places: Vec<Iso2>,
    entry: Option<usize>,
    lo: V2,
    hi: V2,
}

impl PartialEq for Node {
    fn eq(&self, o: &Self) -> bool {
        self.cmp(o) == Ordering::Equal
    }
}
impl Eq for Node {}
impl PartialOrd for Node {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}
impl Ord for Node {
    // Min-heap on the bound, then insertion order.
    fn cmp(&self, o: &Self) -> Ordering {
        o.bound.total_cmp(&self.bound).then(o.seq.cmp(&self.seq))
    }
}

#[derive(Debug, Clone)]
struct Candidate {
    len: f64,
    chain: Vec<FaceId>,
    places: Vec<Iso2>,
    leg: usize,
    u: f64,
    image: V2,
}

/// Loop legs grouped by face: `(leg index, a, b)`.
fn legs_by_face(p: &Polyhedron, q: &QuasigeodesicLoop) -> Vec<Vec<(usize, V2, V2)>> {
    let mut out = vec![Vec::new(); p.num_faces()];
    for i in 0..q.num_legs() {
        let (f, a, b) = q.leg(p, i);
        out[f].push((i, a, b));
    }
    out
}

fn search(p: &Polyhedron, q_legs: &[Vec<(usize, V2, V2)>], v: VertexId, opts: SearchOptions) -> Result<Vec<Candidate>> {
    let mut heap = BinaryHeap::new();
    let mut seq = 0;
    for &(f, c) in p.fan(v) {
        let face = p.face(f);
        let here = face.coords[c];
        let n = face.len();
        heap.push(Node {
            bound: 0.0,
            seq,
            chain: vec![f],
            places: vec![Iso2::translation(-here)],
            entry: None,
            lo: face.coords[(c + 1) % n] - here,
            hi: face.coords[(c + n - 1) % n] - here,
        });
        seq += 1;
    }
    let o = V2::zeros();
    let mut best = f64::INFINITY;
    let mut cands: Vec<Candidate> = Vec::new();
    let mut pops = 0;
    while let Some(node) = heap.pop() {
        if node.bound > best * (1.0 + opts.tie_rel) {
            break;
        }
        pops += 1;
        if pops > opts.max_pops {
            return Err(Error::SearchCap {
                vertex: v,
                best: best.is_finite().then_some(best),
            });
        }
        let f = *node.chain.last().unwrap();
        let t = *node.places.last().unwrap();
        for &(leg, a, b) in &q_legs[f] {
            let Some((c0, c1)) = clip_to_cone(t.apply(a), t.apply(b), o, node.lo, node.hi) else {
                continue;
            };
            let (foot, _) = closest_on_segment(o, c0, c1);
            let len = foot.norm();
            let uv = t.inverse().apply(foot);
            let d = b - a;
            let u = ((uv - a).dot(&d) / d.norm_squared()).clamp(0.0, 1.0);
            best = best.min(len);
            cands.push(Candidate {
                len,
                chain: node.chain.clone(),
                places: node.places.clone(),
                leg,
                u,
                image: foot,
            });
        }
        let face = p.face(f);
        for s in 0..face.len() {
            if Some(s) == node.entry {
                continue;
            }
            let adj = p.adjacency(f, s);
            if node.chain.contains(&adj.face) {
                continue;
            }
            if node.chain.len() == 1 && (face.verts[s] == v || face.verts[(s + 1) % face.len()] == v) {
                continue;
            }
            let (a, b) = face.side(s);
            let Some((w0, w1)) = clip_to_cone(t.apply(a), t.apply(b), o, node.lo, node.hi) else {
                continue;
            };
            if (w1 - w0).norm() <= opts.tol_locus {
                continue;
            }
            let (lo, hi) = if cross2(w0, w1) > 0.0 { (w0, w1) } else { (w1, w0) };
            if cross2(lo, hi) <= 0.0 {
                continue;
            }
            let bound = closest_on_segment(o, w0, w1).0.norm();
            if bound > best * (1.0 + opts.tie_rel) {
                continue;
            }
            let mut chain = node.chain.clone();
            chain.push(adj.face);
            let mut places = node.places.clone();
            places.push(t.after(&adj.glue));
            heap.push(Node {
                bound,
                seq,
                chain,
                places,
                entry: Some(adj.side),
                lo,
                hi,
            });
            seq += 1;
        }
    }
    if !best.is_finite() {
        return Err(Error::NoPath(v));
    }
    let cut = best * (1.0 + opts.tie_rel);
    cands.retain(|c| c.len <= cut);
    Ok(cands)
}

/// Splits the straight image segment into per-face pieces.
fn legs_of(p: &Polyhedron, c: &Candidate, tol: f64) -> Vec<(FaceId, V2, V2)> {
    let n = c.chain.len();
    let mut ts = Vec::with_capacity(n + 1);
    ts.push(0.0);
    let f = c.image;
    for k in 0..n - 1 {
        let side = p.edge_between(c.chain[k], c.chain[k + 1]).expect("chain faces adjacent");
        let (a, b) = p.face(c.chain[k]).side(side);
        let (a, b) = (c.places[k].apply(a), c.places[k].apply(b));
        let den = cross2(f, b - a);
        let t = if den.abs() > 0.0 { cross2(a, b - a) / den } else { ts[k] };
        ts.push(t.clamp(ts[k], 1.0));
    }
    ts.push(1.0);
    // Pieces that only touch a face at a vertex or an edge are dropped.
    let len = f.norm();
    let legs: Vec<_> = (0..n)
        .filter(|&k| (ts[k + 1] - ts[k]) * len > tol)
        .map(|k| {
            let inv = c.places[k].inverse();
            (c.chain[k], inv.apply(f * ts[k]), inv.apply(f * ts[k + 1]))
        })
        .collect();
    if legs.is_empty() {
        let inv = c.places[0].inverse();
        return vec![(c.chain[0], inv.apply(V2::zeros()), inv.apply(f))];
    }
    legs
}

/// Angles at a loop point: `(a_in, a_out, fan)` where `a_in` is the
/// reversed incoming direction.
fn loop_frame(p: &Polyhedron, q: &QuasigeodesicLoop, foot: &SurfacePoint, waypoint: Option<usize>, leg: usize) -> Result<(f64, f64, Fan)> {
    let fan = Fan::at(p, foot);
    let missing = || Error::Geometry("loop direction not at foot".into());
    match waypoint {
        Some(j) => {
            let ((fi, din), (fo, dout)) = q.path.directions_at(p, j, true)?;
            Ok((
                fan.angle_of(fi, -din).ok_or_else(missing)?,
                fan.angle_of(fo, dout).ok_or_else(missing)?,
                fan,
            ))
        }
        None => {
            let (f, a, b) = q.leg(p, leg);
            let d = (b - a).normalize();
            Ok((
                fan.angle_of(f, -d).ok_or_else(missing)?,
                fan.angle_of(f, d).ok_or_else(missing)?,
                fan,
            ))
        }
    }
}

fn side_of(h: &Half, v: VertexId) -> Result<Side> {
    if h.contained_vertices.contains(&v) {
        Ok(h.side)
    } else {
        Err(Error::Invalid(format!("vertex {v} is not inside the half")))
    }
}

/// Globally shortest path from `v` to the loop, with deterministic
/// tie-breaking by smallest face sequence among exact ties.
pub fn shortest_to_q(p: &Polyhedron, q: &QuasigeodesicLoop, h: &Half, v: VertexId, opts: SearchOptions) -> Result<CutSegment> {
    let side = side_of(h, v)?;
    let q_legs = legs_by_face(p, q);
    let mut cands = search(p, &q_legs, v, opts)?;
    cands.sort_by(|a, b| a.chain.cmp(&b.chain).then(a.len.total_cmp(&b.len)));
    // Near-ties only count; the choice comes from the true minimum, up to
    // rounding. A path clamped at a leg end can sit inside the tie window
    // next to the perpendicular one.
    let min = cands.iter().map(|c| c.len).fold(f64::INFINITY, f64::min);
    let pick = min * (1.0 + 1e-12);

    let tol = opts.tol_locus;
    let mut kept: Vec<(V3, V3)> = Vec::new();
    let mut chosen: Option<(Candidate, Vec<(FaceId, V2, V2)>)> = None;
    for c in cands {
        let legs = legs_of(p, &c, tol);
        let (f0, a0, b0) = legs[0];
        let dir = p.face(f0).vec_to_3d(b0 - a0).normalize();
        let (fl, _, bl) = *legs.last().unwrap();
        let foot = p.face(fl).to_3d(bl);
        let dup = kept
            .iter()
            .any(|(kf, kd)| (kf - foot).norm() <= 1e3 * tol && kd.dot(&dir) > 1.0 - 1e-9);
        if !dup {
            kept.push((foot, dir));
        }
        if chosen.is_none() && c.len <= pick {
            chosen = Some((c, legs));
        }
    }
    let (c, legs) = chosen.ok_or(Error::NoPath(v))?;

    let m = q.num_legs();
    let leg_len = q.arc[c.leg + 1] - q.arc[c.leg];
    let slack = tol / leg_len.max(f64::MIN_POSITIVE);
    let waypoint = if c.u <= slack {
        Some(c.leg)
    } else if c.u >= 1.0 - slack {
        Some((c.leg + 1) % m)
    } else {
        None
    };
    let (projection, foot_arc) = match waypoint {
        Some(j) => (q.path.points[j], q.arc[j]),
        None => {
            let (f, _, b) = *legs.last().unwrap();
            let mut sp = SurfacePoint::locate(p, f, b, tol);
            if !matches!(sp.locus, Locus::Face { .. }) {
                sp = SurfacePoint {
                    locus: Locus::Face { face: f, uv: b },
                    pos: p.face(f).to_3d(b),
                };
            }
            (sp, q.arc[c.leg] + c.u * leg_len)
        }
    };
    let (a_in, a_out, fan) = loop_frame(p, q, &projection, waypoint, c.leg)?;
    let (fl, al, bl) = *legs.last().unwrap();
    let a_cut = fan
        .angle_of(fl, al - bl)
        .ok_or_else(|| Error::Geometry("cut not incident to its foot".into()))?;
    let phi = match side {
        Side::Left => (a_cut - a_out).rem_euclid(fan.total),
        Side::Right => (a_cut - a_in).rem_euclid(fan.total),
    };
    Ok(CutSegment {
        vertex: v,
        side,
        projection,
        length: c.len,
        face_seq: legs.iter().map(|l| l.0).collect(),
        tied: kept.len(),
        hits_loop_point: waypoint == Some(0) && q.has_exceptional_point(),
        legs,
        foot_arc,
        foot_waypoint: waypoint,
        phi,
    })
}

/// One cut per vertex inside the half, ordered by foot position along the
/// loop; cuts sharing a foot are in circular order.
pub fn all_cuts(p: &Polyhedron, q: &QuasigeodesicLoop, h: &Half, opts: SearchOptions) -> Result<Vec<CutSegment>> {
    let mut cuts = h
        .contained_vertices
        .iter()
        .map(|&v| shortest_to_q(p, q, h, v, opts))
        .collect::<Result<Vec<_>>>()?;
    cuts.sort_by(|a, b| a.foot_arc.total_cmp(&b.foot_arc).then(a.phi.total_cmp(&b.phi)));
    Ok(cuts)
}

/// Deviation from a right angle at the foot on both sides, or `None` when
/// the foot is a loop vertex or the loop point.
pub fn check_orthogonality(q: &QuasigeodesicLoop, c: &CutSegment) -> Option<f64> {
    if c.hits_loop_point || c.projection.is_vertex().is_some() {
        return None;
    }
    let theta = match c.foot_waypoint {
        Some(j) => q.side_angle(j, c.side),
        None => PI,
    };
    Some((c.phi - PI / 2.0).abs().max((theta - c.phi - PI / 2.0).abs()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::develop::GeodesicPath;
    use crate::qloop::{classify, split_halves};
    use crate::solids::cube;
    use approx::assert_relative_eq;

    fn setup() -> (Polyhedron, QuasigeodesicLoop, Half, Half) {
        let c = cube();
        let path = GeodesicPath {
            points: [0, 5, 7, 0].iter().map(|&v| SurfacePoint::vertex(&c, v)).collect(),
            legs: vec![2, 4, 0],
        };
        let q = classify(&c, path, 1e-9).unwrap();
        let (l, r) = split_halves(&c, &q).unwrap();
        (c, q, l, r)
    }

    #[test]
    fn corner_inside_triangle_has_three_ties() {
        let (c, q, l, _) = setup();
        let cut = shortest_to_q(&c, &q, &l, 2, SearchOptions::for_polyhedron(&c)).unwrap();
        assert_eq!(cut.tied, 3);
        assert_relative_eq!(cut.length, 0.5f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!(check_orthogonality(&q, &cut).unwrap(), 0.0, epsilon = 1e-9);
    }

    #[test]
    fn opposite_corner_has_three_ties_at_loop_vertices() {
        let (c, q, _, r) = setup();
        let cut = shortest_to_q(&c, &q, &r, 4, SearchOptions::for_polyhedron(&c)).unwrap();
        assert_eq!(cut.tied, 3);
        assert_relative_eq!(cut.length, 2f64.sqrt(), epsilon = 1e-12);
        assert!(cut.projection.is_vertex().is_some());
        assert!(check_orthogonality(&q, &cut).is_none());
    }

    #[test]
    fn neighbour_of_loop_edge_projects_to_midpoint() {
        let (c, q, _, r) = setup();
        let cut = shortest_to_q(&c, &q, &r, 6, SearchOptions::for_polyhedron(&c)).unwrap();
        assert_eq!(cut.tied, 1);
        assert_relative_eq!(cut.length, 0.5f64.sqrt(), epsilon = 1e-12);
        assert_relative_eq!((cut.projection.pos - V3::new(0.5, 0.0, 0.5)).norm(), 0.0, epsilon = 1e-12);
        assert_relative_eq!(cut.phi, PI / 2.0, epsilon = 1e-9);
    }

    #[test]
    fn all_cuts_cover_the_half() {
        let (c, q, l, r) = setup();
        let opts = SearchOptions::for_polyhedron(&c);
        assert_eq!(all_cuts(&c, &q, &l, opts).unwrap().len(), 1);
        let cuts = all_cuts(&c, &q, &r, opts).unwrap();
        assert_eq!(cuts.len(), 4);
        for w in cuts.windows(2) {
            assert!(w[0].foot_arc <= w[1].foot_arc);
        }
    }

    #[test]
    fn vertex_outside_half_rejected() {
        let (c, q, l, _) = setup();
        assert!(shortest_to_q(&c, &q, &l, 4, SearchOptions::for_polyhedron(&c)).is_err());
    }
}
