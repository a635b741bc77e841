//! Flattening each half with curvature triangles, laying it out in the
//! plane, and joining the two halves along a supporting loop segment.

use std::f64::consts::PI;

use crate::develop::SurfacePoint;
use crate::error::{Error, Result};
use crate::geom::{cross2, polygon_area, rotate, v2, Iso2, V2};
use crate::mesh::{Polyhedron, VertexId};
use crate::qloop::{QuasigeodesicLoop, Side};
use crate::spath::CutSegment;
use crate::verify::polygon_simple;

/// Isosceles triangle glued into the cut from `vertex`; split into two
/// pieces when the curvature is at least π.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CurvatureTriangle {
    pub vertex: VertexId,
    pub omega: f64,
    pub leg: f64,
    pub pieces: usize,
}

impl CurvatureTriangle {
    pub fn new(vertex: VertexId, omega: f64, leg: f64) -> Self {
        CurvatureTriangle {
            vertex,
            omega,
            leg,
            pieces: if omega < PI { 1 } else { 2 },
        }
    }

    /// Apex angle of each piece.
    pub fn apex(&self) -> f64 {
        self.omega / self.pieces as f64
    }

    pub fn base_angle(&self) -> f64 {
        (PI - self.apex()) / 2.0
    }

    /// Base length of each piece.
    pub fn base(&self) -> f64 {
        2.0 * self.leg * (self.apex() / 2.0).sin()
    }

    pub fn area(&self) -> f64 {
        self.pieces as f64 * 0.5 * self.leg * self.leg * self.apex().sin()
    }
}

/// A point of the loop where the developments may have a corner.
#[derive(Debug, Clone, Copy)]
pub struct LoopEvent {
    pub arc: f64,
    pub point: SurfacePoint,
    pub waypoint: Option<usize>,
    /// Interior angle on the left and right.
    pub theta: [f64; 2],
    pub is_x: bool,
}

/// Loop vertices, the exceptional point and every foot, merged when
/// closer than `tol` along the loop. Loop piece `i` runs from event `i`
/// to event `i + 1`.
pub fn loop_events(q: &QuasigeodesicLoop, cuts: &[&CutSegment], tol: f64) -> Vec<LoopEvent> {
    let total = q.length();
    let norm = |a: f64| if a >= total - tol { 0.0 } else { a.max(0.0) };
    let at_waypoint = |j: usize, is_x: bool| LoopEvent {
        arc: norm(q.arc[j]),
        point: q.path.points[j],
        waypoint: Some(j),
        theta: [q.angles[j].0, q.angles[j].1],
        is_x,
    };
    let mut raw: Vec<LoopEvent> = q.vertex_waypoints().iter().map(|&(j, _)| at_waypoint(j, false)).collect();
    if q.has_exceptional_point() {
        raw.push(at_waypoint(0, true));
    }
    for c in cuts {
        raw.push(match c.foot_waypoint {
            Some(j) => at_waypoint(j, false),
            None => LoopEvent {
                arc: norm(c.foot_arc),
                point: c.projection,
                waypoint: None,
                theta: [PI, PI],
                is_x: false,
            },
        });
    }
    raw.sort_by(|a, b| a.arc.total_cmp(&b.arc));
    let mut out: Vec<LoopEvent> = Vec::new();
    for e in raw {
        match out.last_mut() {
            Some(last) if e.arc - last.arc <= tol => {
                if last.waypoint.is_none() && e.waypoint.is_some() {
                    let is_x = last.is_x || e.is_x;
                    *last = e;
                    last.is_x = is_x;
                } else {
                    last.is_x |= e.is_x;
                }
            }
            _ => out.push(e),
        }
    }
    if out.len() > 1 {
        let last = out[out.len() - 1];
        if total - last.arc <= tol {
            out.pop();
            if out[0].waypoint.is_none() {
                out[0].waypoint = last.waypoint;
                out[0].point = last.point;
                out[0].theta = last.theta;
            }
            out[0].is_x |= last.is_x;
        }
    }
    out
}

/// Index of the event nearest to `arc` along the loop.
pub fn event_of(events: &[LoopEvent], total: f64, arc: f64) -> usize {
    let dist = |e: &LoopEvent| {
        let d = (e.arc - arc).rem_euclid(total);
        d.min(total - d)
    };
    (0..events.len())
        .min_by(|&a, &b| dist(&events[a]).total_cmp(&dist(&events[b])))
        .expect("at least one event")
}

pub fn piece_lengths(events: &[LoopEvent], total: f64) -> Vec<f64> {
    let n = events.len();
    (0..n)
        .map(|i| {
            if n == 1 {
                total
            } else {
                (events[(i + 1) % n].arc - events[i].arc).rem_euclid(total)
            }
        })
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum EdgeSource {
    /// Loop piece between consecutive events.
    Loop { piece: usize },
    /// Base of a curvature triangle (`part` 0 or 1 for split triangles).
    Base { vertex: VertexId, part: usize },
    /// Image of one side of a cut.
    Cut { vertex: VertexId, part: usize },
}

/// One boundary step of the flattened disk: an edge followed by the corner
/// at its end.
#[derive(Debug, Clone, Copy)]
pub struct BoundaryStep {
    pub source: EdgeSource,
    pub length: f64,
    pub interior: f64,
    pub event: usize,
    /// Which copy of the event point the corner is.
    pub copy: usize,
}

/// Cuts ending at the exceptional point on its reflex side.
#[derive(Debug, Clone)]
pub struct LoopPointCuts {
    pub vertices: Vec<VertexId>,
    pub alpha: [f64; 2],
    pub betas: Vec<f64>,
    pub omegas: Vec<f64>,
    pub pieces: Vec<usize>,
}

/// The flattened half as a boundary word.
#[derive(Debug, Clone)]
pub struct FlatDisk {
    pub side: Side,
    pub steps: Vec<BoundaryStep>,
    pub triangles: Vec<CurvatureTriangle>,
    pub at_x: Option<LoopPointCuts>,
    /// True when this half holds the angle above π at the loop point.
    pub x_reflex: bool,
}

/// Builds the boundary of the half after gluing a curvature triangle into
/// every cut. Events and pieces are shared by both halves.
pub fn insert_triangles(p: &Polyhedron, q: &QuasigeodesicLoop, side: Side, cuts: &[CutSegment], events: &[LoopEvent]) -> FlatDisk {
    let total = q.length();
    let lengths = piece_lengths(events, total);
    let n = events.len();
    let mut at: Vec<Vec<(f64, CurvatureTriangle)>> = vec![Vec::new(); n];
    let mut triangles = Vec::new();
    for c in cuts {
        let t = CurvatureTriangle::new(c.vertex, p.curvatures()[c.vertex], c.length);
        at[event_of(events, total, c.foot_arc)].push((c.phi, t));
        triangles.push(t);
    }
    for list in &mut at {
        list.sort_by(|a, b| a.0.total_cmp(&b.0));
    }
    // Walk order: forward for the left half, backward for the right.
    let order: Vec<usize> = match side {
        Side::Left => (0..n).collect(),
        Side::Right => (0..n).map(|i| (n - i) % n).collect(),
    };
    let mut steps = Vec::new();
    let mut at_x = None;
    for k in 0..n {
        let e = order[(k + 1) % n];
        let prev = order[k];
        let piece = match side {
            Side::Left => prev,
            Side::Right => e,
        };
        let piece = if n == 1 { 0 } else { piece };
        let theta = events[e].theta[side.index()];
        let list = &at[e];
        let mut pending = (EdgeSource::Loop { piece }, lengths[piece]);
        let mut copy = 0;
        let mut push = |src: (EdgeSource, f64), interior: f64| {
            steps.push(BoundaryStep {
                source: src.0,
                length: src.1,
                interior,
                event: e,
                copy,
            });
            copy += 1;
        };
        // Cuts in descending angle: the first corner faces the incoming piece.
        let mut carry = 0.0;
        let mut upper = theta;
        for &(phi, t) in list.iter().rev() {
            push(pending, carry + (upper - phi) + t.base_angle());
            pending = (EdgeSource::Base { vertex: t.vertex, part: 0 }, t.base());
            if t.pieces == 2 {
                push(pending, PI - t.apex());
                pending = (EdgeSource::Base { vertex: t.vertex, part: 1 }, t.base());
            }
            carry = t.base_angle();
            upper = phi;
        }
        push(pending, carry + upper);
        if events[e].is_x && !list.is_empty() && q.beta.map(|b| b.1) == Some(side) {
            let k = list.len();
            at_x = Some(LoopPointCuts {
                vertices: list.iter().map(|l| l.1.vertex).collect(),
                alpha: [list[0].0, theta - list[k - 1].0],
                betas: (0..k - 1).map(|i| list[i + 1].0 - list[i].0).collect(),
                omegas: list.iter().map(|l| l.1.omega).collect(),
                pieces: list.iter().map(|l| l.1.pieces).collect(),
            });
        }
    }
    FlatDisk {
        side,
        steps,
        triangles,
        at_x,
        x_reflex: q.beta.map(|b| b.1) == Some(side),
    }
}

/// Per-vertex data of a planar development.
#[derive(Debug, Clone, Copy)]
pub struct Corner {
    pub event: usize,
    pub copy: usize,
    pub interior: f64,
}

/// A half laid out in the plane, counterclockwise.
#[derive(Debug, Clone)]
pub struct PlanarDevelopment {
    pub side: Side,
    pub vertices: Vec<V2>,
    /// Source of edge `i`, from `vertices[i]` to `vertices[i + 1]`.
    pub sources: Vec<EdgeSource>,
    pub corners: Vec<Corner>,
    /// `(x₁, x₂)` vertex indices on the reflex side of a loop.
    pub x_images: Option<(usize, usize)>,
    pub apexes: Vec<(VertexId, V2)>,
    pub triangles: Vec<CurvatureTriangle>,
    pub at_x: Option<LoopPointCuts>,
    /// The half itself with the triangles removed: the star unfolding.
    pub net: Vec<V2>,
    pub net_sources: Vec<EdgeSource>,
    pub turn_total: f64,
    pub closure: f64,
}

impl PlanarDevelopment {
    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn turn(&self, i: usize) -> f64 {
        PI - self.corners[i].interior
    }

    pub fn edge(&self, i: usize) -> (V2, V2) {
        (self.vertices[i], self.vertices[(i + 1) % self.len()])
    }

    pub fn edge_of(&self, src: EdgeSource) -> Option<usize> {
        self.sources.iter().position(|&s| s == src)
    }

    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    /// Vertex indices from x₁ forward to x₂.
    pub fn chain_12(&self) -> Option<Vec<usize>> {
        let (x1, x2) = self.x_images?;
        Some(walk(x1, x2, self.len()))
    }

    /// Vertex indices from x₂ forward to x₁, over the triangle bases.
    pub fn chain_21(&self) -> Option<Vec<usize>> {
        let (x1, x2) = self.x_images?;
        Some(walk(x2, x1, self.len()))
    }

    fn extent(&self) -> f64 {
        self.vertices.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-300)
    }

    /// True when every vertex is on the closed left side of edge `i`.
    pub fn supported_by(&self, i: usize) -> bool {
        let (a, b) = self.edge(i);
        let d = (b - a).normalize();
        let tol = 1e-9 * self.extent();
        self.vertices.iter().all(|&p| cross2(d, p - a) >= -tol)
    }
}

fn walk(from: usize, to: usize, n: usize) -> Vec<usize> {
    let mut out = vec![from];
    let mut k = from;
    while k != to {
        k = (k + 1) % n;
        out.push(k);
    }
    out
}

/// Lays the flattened disk out in the plane by walking its boundary.
pub fn develop_half(disk: &FlatDisk, events: &[LoopEvent]) -> Result<PlanarDevelopment> {
    let n = disk.steps.len();
    let mut pos = V2::zeros();
    let mut heading = 0.0f64;
    let mut ends = Vec::with_capacity(n);
    let mut turn_total = 0.0;
    for st in &disk.steps {
        pos += v2(heading.cos(), heading.sin()) * st.length;
        ends.push(pos);
        heading += PI - st.interior;
        turn_total += PI - st.interior;
    }
    let closure = ends[n - 1].norm();
    let mut vertices = vec![V2::zeros()];
    vertices.extend_from_slice(&ends[..n - 1]);
    let corner = |st: &BoundaryStep| Corner {
        event: st.event,
        copy: st.copy,
        interior: st.interior,
    };
    let mut corners = vec![corner(&disk.steps[n - 1])];
    corners.extend(disk.steps[..n - 1].iter().map(corner));
    let sources: Vec<EdgeSource> = disk.steps.iter().map(|s| s.source).collect();

    let x_images = events.iter().position(|e| e.is_x).filter(|_| disk.x_reflex).and_then(|xe| {
        let idx: Vec<usize> = (0..n).filter(|&i| corners[i].event == xe).collect();
        let first = *idx.iter().find(|&&i| corners[i].copy == 0)?;
        let last = *idx.iter().max_by_key(|&&i| corners[i].copy)?;
        Some((last, first))
    });

    let tri = |v: VertexId| disk.triangles.iter().find(|t| t.vertex == v).copied().expect("triangle for cut");
    let mut apexes = Vec::new();
    let mut net = Vec::new();
    let mut net_sources = Vec::new();
    for i in 0..n {
        let (a, b) = (vertices[i], vertices[(i + 1) % n]);
        match sources[i] {
            EdgeSource::Base { vertex, part: 0 } => {
                let t = tri(vertex);
                let apex = a + rotate((b - a).normalize(), t.base_angle()) * t.leg;
                apexes.push((vertex, apex));
                net.push(a);
                net_sources.push(EdgeSource::Cut { vertex, part: 0 });
                net.push(apex);
                net_sources.push(EdgeSource::Cut { vertex, part: 1 });
            }
            EdgeSource::Base { .. } => {}
            s => {
                net.push(a);
                net_sources.push(s);
            }
        }
    }
    let side = disk.side;
    let dev = PlanarDevelopment {
        side,
        vertices,
        sources,
        corners,
        x_images,
        apexes,
        triangles: disk.triangles.clone(),
        at_x: disk.at_x.clone(),
        net,
        net_sources,
        turn_total,
        closure,
    };
    Ok(dev)
}

/// Turn of C₂,₁ in three ways: from the planar chain, from the exact
/// per-junction sum, and from the closed form Σβ − Σω.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainTurn {
    pub geometric: f64,
    pub exact: f64,
    pub closed_form: f64,
}

/// Total turn of C₂,₁, counting reflex turns as positive.
pub fn turn_of_c21(dev: &PlanarDevelopment) -> Result<ChainTurn> {
    let cuts = dev
        .at_x
        .as_ref()
        .ok_or_else(|| Error::Invalid("development has no cuts at the loop point".into()))?;
    let chain = dev
        .chain_21()
        .ok_or_else(|| Error::Invalid("development has no loop point images".into()))?;
    let geometric = chain_inner(&chain).iter().map(|&i| -dev.turn(i)).sum();
    let sb: f64 = cuts.betas.iter().sum();
    let sw: f64 = cuts.omegas.iter().sum();
    let end = |k: usize| cuts.omegas[k] / (2.0 * cuts.pieces[k] as f64);
    let k = cuts.omegas.len();
    Ok(ChainTurn {
        geometric,
        exact: sb - sw + end(0) + end(k - 1),
        closed_form: sb - sw,
    })
}

/// Chain vertices strictly between its ends. A chain of one vertex (a
/// single image of x) has none.
fn chain_inner(chain: &[usize]) -> &[usize] {
    if chain.len() < 2 {
        &[]
    } else {
        &chain[1..chain.len() - 1]
    }
}

/// Largest reflex-positive turn over contiguous subchains of C₂,₁.
pub fn max_subchain_turn_c21(dev: &PlanarDevelopment) -> Option<f64> {
    let chain = dev.chain_21()?;
    let inner: Vec<f64> = chain_inner(&chain).iter().map(|&i| -dev.turn(i)).collect();
    let mut best = 0.0f64;
    for a in 0..inner.len() {
        let mut s = 0.0;
        for t in &inner[a..] {
            s += t;
            best = best.max(s);
        }
    }
    Some(best)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SeamCase {
    ClosedCurve,
    LoopTangents,
    Fallback,
    /// No piece supports both halves; the first join that came out simple.
    Unsupported,
}

#[derive(Debug, Clone)]
pub struct SeamChoice {
    pub piece: usize,
    pub case: SeamCase,
    pub length: f64,
    /// Every piece tested: `(piece, supports left, supports right)`.
    pub tested: Vec<(usize, bool, bool)>,
}

fn piece_length(d: &PlanarDevelopment, piece: usize) -> f64 {
    let (a, b) = d.edge(d.edge_of(EdgeSource::Loop { piece }).unwrap());
    (b - a).norm()
}

/// Chooses the uncut loop piece along which the halves are joined.
pub fn select_seam(left: &PlanarDevelopment, right: &PlanarDevelopment, q: &QuasigeodesicLoop) -> Result<SeamChoice> {
    let all: Vec<usize> = left
        .sources
        .iter()
        .filter_map(|s| match *s {
            EdgeSource::Loop { piece } => Some(piece),
            _ => None,
        })
        .collect();
    let mut tested = Vec::new();
    let test = |pieces: &[usize], tested: &mut Vec<(usize, bool, bool)>| -> Option<usize> {
        let mut ok: Vec<(f64, usize)> = Vec::new();
        for &pc in pieces {
            let src = EdgeSource::Loop { piece: pc };
            let (Some(i), Some(j)) = (left.edge_of(src), right.edge_of(src)) else {
                continue;
            };
            let (l, r) = (left.supported_by(i), right.supported_by(j));
            if !tested.iter().any(|t: &(usize, bool, bool)| t.0 == pc) {
                tested.push((pc, l, r));
            }
            if l && r {
                ok.push((piece_length(left, pc), pc));
            }
        }
        ok.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
        let best = ok.first()?;
        // Longest, ties within rounding go to the lower index.
        ok.iter().filter(|c| c.0 >= best.0 * (1.0 - 1e-9)).map(|c| c.1).min()
    };
    let choose = |piece: usize, case: SeamCase, tested: Vec<(usize, bool, bool)>| SeamChoice {
        piece,
        case,
        length: piece_length(left, piece),
        tested,
    };
    if let Some((_, side)) = q.beta {
        let dev = if side == Side::Left { left } else { right };
        if let Some(chain) = dev.chain_12() {
            let cands = tangent_candidates(dev, &chain);
            if let Some(pc) = test(&cands, &mut tested) {
                return Ok(choose(pc, SeamCase::LoopTangents, tested));
            }
        }
        return match test(&all, &mut tested) {
            Some(pc) => Ok(choose(pc, SeamCase::Fallback, tested)),
            None => Err(Error::NoSeam { candidates: tested.len() }),
        };
    }
    match test(&all, &mut tested) {
        Some(pc) => Ok(choose(pc, SeamCase::ClosedCurve, tested)),
        None => Err(Error::NoSeam { candidates: tested.len() }),
    }
}

/// Loop pieces incident to C₁,₂ vertices between the tangency points of
/// lines parallel to the edges at x₁ and x₂.
pub fn tangent_candidates(dev: &PlanarDevelopment, chain: &[usize]) -> Vec<usize> {
    let n = dev.len();
    if chain.len() < 2 {
        return Vec::new();
    }
    let v = &dev.vertices;
    let r1 = v[chain[1]] - v[chain[0]];
    let r2 = v[chain[chain.len() - 1]] - v[chain[chain.len() - 2]];
    // Supporting line parallel to r on the side r's edge faces (the
    // development is on its left). Ties go to the first or last vertex.
    let touch = |r: V2, last: bool| -> usize {
        let nrm = v2(-r.y, r.x);
        let tol = 1e-12 * dev.extent();
        let mut best = 0;
        for (k, &i) in chain.iter().enumerate() {
            let (h, hb) = (nrm.dot(&v[i]), nrm.dot(&v[chain[best]]));
            if h < hb - tol || (last && h <= hb + tol) {
                best = k;
            }
        }
        best
    };
    let (a, b) = (touch(r1, false), touch(r2, true));
    let (lo, hi) = (a.min(b), a.max(b));
    let mut out = Vec::new();
    for &i in &chain[lo..=hi] {
        for e in [(i + n - 1) % n, i] {
            if let EdgeSource::Loop { piece } = dev.sources[e] {
                if !out.contains(&piece) {
                    out.push(piece);
                }
            }
        }
    }
    out
}

/// Both halves placed in one plane.
#[derive(Debug, Clone)]
pub struct UnfoldedPolygon {
    pub vertices: Vec<V2>,
    /// Half and source of edge `i`.
    pub sources: Vec<(Side, EdgeSource)>,
    pub seam: SeamChoice,
    /// Seam endpoints in the joined plane.
    pub seam_segment: (V2, V2),
    /// Placement of the right half.
    pub right_placement: Iso2,
    pub net: Vec<V2>,
    pub net_sources: Vec<(Side, EdgeSource)>,
}

impl UnfoldedPolygon {
    pub fn area(&self) -> f64 {
        polygon_area(&self.vertices)
    }

    pub fn net_area(&self) -> f64 {
        polygon_area(&self.net)
    }
}

fn splice(
    left: (&[V2], &[EdgeSource]),
    right: (&[V2], &[EdgeSource]),
    piece: usize,
    iso: &Iso2,
) -> Result<(Vec<V2>, Vec<(Side, EdgeSource)>)> {
    let src = EdgeSource::Loop { piece };
    let missing = || Error::Geometry(format!("seam piece {piece} missing from a boundary"));
    let (lv, ls) = left;
    let (rv, rs) = right;
    let i = ls.iter().position(|&s| s == src).ok_or_else(missing)?;
    let j = rs.iter().position(|&s| s == src).ok_or_else(missing)?;
    let (nl, nr) = (lv.len(), rv.len());
    let mut pts = Vec::with_capacity(nl + nr);
    let mut srcs = Vec::with_capacity(nl + nr);
    // Left from the seam end round to the seam start.
    for k in 1..=nl {
        pts.push(lv[(i + k) % nl]);
        if k < nl {
            srcs.push((Side::Left, ls[(i + k) % nl]));
        }
    }
    // Right from its seam end round to just before its seam start.
    srcs.push((Side::Right, rs[(j + 1) % nr]));
    for k in 2..nr {
        pts.push(iso.apply(rv[(j + k) % nr]));
        srcs.push((Side::Right, rs[(j + k) % nr]));
    }
    Ok((pts, srcs))
}

/// Moves the right half so its seam copy lies on the left half's, on the
/// opposite side, and merges the boundaries.
/// Seam selection then join. When no piece supports both halves, tries the
/// pieces longest first and keeps the first join that is simple.
pub fn select_and_join(left: &PlanarDevelopment, right: &PlanarDevelopment, q: &QuasigeodesicLoop) -> Result<UnfoldedPolygon> {
    match select_seam(left, right, q) {
        Ok(seam) => join(left, right, seam),
        Err(Error::NoSeam { candidates }) => {
            let mut tested = Vec::new();
            for (i, s) in left.sources.iter().enumerate() {
                let EdgeSource::Loop { piece } = *s else { continue };
                let Some(j) = right.edge_of(*s) else { continue };
                tested.push((piece, left.supported_by(i), right.supported_by(j)));
            }
            let mut order: Vec<(f64, usize)> = tested.iter().map(|t| (piece_length(left, t.0), t.0)).collect();
            order.sort_by(|a, b| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1)));
            for (length, piece) in order {
                let seam = SeamChoice {
                    piece,
                    case: SeamCase::Unsupported,
                    length,
                    tested: tested.clone(),
                };
                if let Ok(u) = join(left, right, seam) {
                    return Ok(u);
                }
            }
            Err(Error::NoSeam { candidates })
        }
        Err(e) => Err(e),
    }
}

pub fn join(left: &PlanarDevelopment, right: &PlanarDevelopment, seam: SeamChoice) -> Result<UnfoldedPolygon> {
    let src = EdgeSource::Loop { piece: seam.piece };
    let i = left.edge_of(src).ok_or(Error::NoSeam { candidates: 0 })?;
    let j = right.edge_of(src).ok_or(Error::NoSeam { candidates: 0 })?;
    let (a, b) = left.edge(i);
    let (rs, re) = right.edge(j);
    let iso = Iso2::from_segments(rs, re, b, a);
    let (vertices, sources) = splice((&left.vertices, &left.sources), (&right.vertices, &right.sources), seam.piece, &iso)?;
    if let Err((e, f)) = polygon_simple(&vertices) {
        return Err(Error::NotSimple(e, f));
    }
    let (net, net_sources) = splice((&left.net, &left.net_sources), (&right.net, &right.net_sources), seam.piece, &iso)?;
    Ok(UnfoldedPolygon {
        vertices,
        sources,
        seam,
        seam_segment: (a, b),
        right_placement: iso,
        net,
        net_sources,
    })
}
