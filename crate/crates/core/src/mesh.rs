//! Convex polyhedral surfaces: validation, intrinsic face frames, edge
//! gluing and OFF input/output.

use std::collections::HashMap;
use std::f64::consts::TAU;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::geom::{angle_ccw, cross2, polygon_area_3d, v2, Iso2, V2, V3};

pub type VertexId = usize;
pub type FaceId = usize;
pub type EdgeId = usize;

/// One planar convex face with its own isometric 2D frame.
///
/// The frame origin is the first corner, the x-axis runs along the first
/// side and `coords` are counterclockwise.
#[derive(Debug, Clone)]
pub struct Face {
    pub verts: Vec<VertexId>,
    pub coords: Vec<V2>,
    pub origin: V3,
    pub e1: V3,
    pub e2: V3,
    pub normal: V3,
    /// Undirected edge id of side `i` (corner `i` to corner `i + 1`).
    pub edges: Vec<EdgeId>,
}

impl Face {
    pub fn len(&self) -> usize {
        self.verts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.verts.is_empty()
    }

    pub fn corner_of(&self, v: VertexId) -> Option<usize> {
        self.verts.iter().position(|&w| w == v)
    }

    pub fn to_3d(&self, p: V2) -> V3 {
        self.origin + self.e1 * p.x + self.e2 * p.y
    }

    pub fn to_2d(&self, p: V3) -> V2 {
        let d = p - self.origin;
        v2(d.dot(&self.e1), d.dot(&self.e2))
    }

    pub fn vec_to_3d(&self, d: V2) -> V3 {
        self.e1 * d.x + self.e2 * d.y
    }

    pub fn side(&self, i: usize) -> (V2, V2) {
        (self.coords[i], self.coords[(i + 1) % self.len()])
    }

    /// Interior angle at corner `i`.
    pub fn corner_angle(&self, i: usize) -> f64 {
        let n = self.len();
        let p = self.coords[i];
        let next = self.coords[(i + 1) % n];
        let prev = self.coords[(i + n - 1) % n];
        angle_ccw(next - p, prev - p)
    }
}

/// Undirected edge; `v[0] < v[1]`. Edge parameters run from `v[0]` to `v[1]`.
#[derive(Debug, Clone)]
pub struct Edge {
    pub v: [VertexId; 2],
    /// `(face, side)` for both incident faces.
    pub sides: [(FaceId, usize); 2],
}

/// Neighbour across one side of a face, with the isometry placing the
/// neighbour's frame into this face's frame.
#[derive(Debug, Clone, Copy)]
pub struct Adjacency {
    pub face: FaceId,
    pub side: usize,
    pub edge: EdgeId,
    pub glue: Iso2,
}

#[derive(Debug, Clone)]
pub struct Polyhedron {
    vertices: Vec<V3>,
    faces: Vec<Face>,
    edges: Vec<Edge>,
    adj: Vec<Vec<Adjacency>>,
    /// `(face, corner)` counterclockwise around each vertex seen from outside.
    fans: Vec<Vec<(FaceId, usize)>>,
    curvature: Vec<f64>,
    diag: f64,
}

/// Relative tolerances, scaled by the bounding-box diagonal where they
/// carry length units.
#[derive(Debug, Clone, Copy)]
pub struct Tolerances {
    pub plane: f64,
    pub convex: f64,
    pub angle: f64,
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            plane: 1e-9,
            convex: 1e-9,
            angle: 1e-9,
        }
    }
}

impl Polyhedron {
    pub fn new(vertices: Vec<V3>, faces: Vec<Vec<VertexId>>) -> Result<Self> {
        Self::with_tolerances(vertices, faces, Tolerances::default())
    }

    pub fn with_tolerances(vertices: Vec<V3>, faces: Vec<Vec<VertexId>>, tol: Tolerances) -> Result<Self> {
        let nv = vertices.len();
        if nv < 4 || faces.len() < 4 {
            return Err(Error::Manifold(format!(
                "{} vertices and {} faces cannot bound a solid",
                nv,
                faces.len()
            )));
        }
        let mut lo = vertices[0];
        let mut hi = vertices[0];
        for p in &vertices {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        let diag = (hi - lo).norm();
        if !(diag > 0.0) || !diag.is_finite() {
            return Err(Error::Invalid("degenerate vertex set".into()));
        }

        for (fi, f) in faces.iter().enumerate() {
            if f.len() < 3 {
                return Err(Error::Manifold(format!("face {fi} has fewer than 3 corners")));
            }
            for (k, &v) in f.iter().enumerate() {
                if v >= nv {
                    return Err(Error::Invalid(format!("face {fi} references vertex {v} (only {nv} vertices)")));
                }
                if f[..k].contains(&v) {
                    return Err(Error::Manifold(format!("face {fi} repeats vertex {v}")));
                }
            }
        }

        // Directed half-edges and their twins.
        let mut directed: HashMap<(VertexId, VertexId), (FaceId, usize)> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for i in 0..f.len() {
                let key = (f[i], f[(i + 1) % f.len()]);
                if directed.insert(key, (fi, i)).is_some() {
                    return Err(Error::Manifold(format!(
                        "edge {}-{} used more than once in the same direction (face {fi})",
                        key.0, key.1
                    )));
                }
            }
        }
        let mut edges = Vec::new();
        let mut edge_of: HashMap<(VertexId, VertexId), EdgeId> = HashMap::new();
        for (fi, f) in faces.iter().enumerate() {
            for i in 0..f.len() {
                let (a, b) = (f[i], f[(i + 1) % f.len()]);
                let Some(&twin) = directed.get(&(b, a)) else {
                    return Err(Error::Manifold(format!("edge {a}-{b} borders only face {fi}")));
                };
                let key = (a.min(b), a.max(b));
                if let std::collections::hash_map::Entry::Vacant(e) = edge_of.entry(key) {
                    e.insert(edges.len());
                    let sides = if a < b { [(fi, i), twin] } else { [twin, (fi, i)] };
                    edges.push(Edge { v: [key.0, key.1], sides });
                }
            }
        }

        // Face frames.
        let mut built = Vec::with_capacity(faces.len());
        for (fi, f) in faces.iter().enumerate() {
            let pts: Vec<V3> = f.iter().map(|&v| vertices[v]).collect();
            let mut normal = V3::zeros();
            for i in 0..pts.len() {
                normal += pts[i].cross(&pts[(i + 1) % pts.len()]);
            }
            let nlen = normal.norm();
            if !(nlen > 0.0) {
                return Err(Error::Manifold(format!("face {fi} has zero area")));
            }
            normal /= nlen;
            let centroid = pts.iter().fold(V3::zeros(), |a, p| a + p) / pts.len() as f64;
            let deviation = pts.iter().map(|p| (p - centroid).dot(&normal).abs()).fold(0.0, f64::max);
            if deviation > tol.plane * diag {
                return Err(Error::NonPlanarFace { face: fi, deviation });
            }
            let origin = pts[0];
            let e1 = (pts[1] - pts[0]).normalize();
            let e2 = normal.cross(&e1);
            let coords: Vec<V2> = pts
                .iter()
                .map(|p| {
                    let d = p - origin;
                    v2(d.dot(&e1), d.dot(&e2))
                })
                .collect();
            let n = coords.len();
            for i in 0..n {
                let a = coords[(i + n - 1) % n];
                let b = coords[i];
                let c = coords[(i + 1) % n];
                let turn = cross2(b - a, c - b);
                if turn <= 1e-12 * (b - a).norm() * (c - b).norm() {
                    return Err(Error::NonConvexFace { face: fi, corner: i });
                }
            }
            let face_edges = (0..n)
                .map(|i| {
                    let (a, b) = (f[i], f[(i + 1) % n]);
                    edge_of[&(a.min(b), a.max(b))]
                })
                .collect();
            built.push(Face {
                verts: f.clone(),
                coords,
                origin,
                e1,
                e2,
                normal,
                edges: face_edges,
            });
        }

        // Global convexity: every vertex behind every face plane.
        for (fi, face) in built.iter().enumerate() {
            for (vi, p) in vertices.iter().enumerate() {
                let d = (p - face.origin).dot(&face.normal);
                if d > tol.convex * diag {
                    return Err(Error::NotConvex {
                        vertex: vi,
                        face: fi,
                        distance: d,
                    });
                }
            }
        }

        let adj: Vec<Vec<Adjacency>> = built
            .iter()
            .map(|face| {
                (0..face.len())
                    .map(|i| {
                        let n = face.len();
                        let (a, b) = (face.verts[i], face.verts[(i + 1) % n]);
                        let (g, j) = directed[&(b, a)];
                        let gf = &built[g];
                        let gn = gf.len();
                        let glue = Iso2::from_segments(gf.coords[j], gf.coords[(j + 1) % gn], face.coords[(i + 1) % n], face.coords[i]);
                        Adjacency {
                            face: g,
                            side: j,
                            edge: face.edges[i],
                            glue,
                        }
                    })
                    .collect()
            })
            .collect();

        // Vertex fans.
        let mut incident: Vec<Vec<(FaceId, usize)>> = vec![Vec::new(); nv];
        for (fi, f) in built.iter().enumerate() {
            for (c, &v) in f.verts.iter().enumerate() {
                incident[v].push((fi, c));
            }
        }
        let mut fans = Vec::with_capacity(nv);
        for v in 0..nv {
            if incident[v].is_empty() {
                return Err(Error::Manifold(format!("vertex {v} is not used by any face")));
            }
            let start = incident[v][0];
            let mut fan = vec![start];
            let (mut f, mut c) = start;
            loop {
                let n = built[f].len();
                let prev_side = (c + n - 1) % n;
                let a = adj[f][prev_side];
                let (g, j) = (a.face, a.side);
                if (g, j) == start {
                    break;
                }
                fan.push((g, j));
                if fan.len() > incident[v].len() {
                    return Err(Error::Manifold(format!("vertex {v} has a non-disk neighbourhood")));
                }
                f = g;
                c = j;
            }
            if fan.len() != incident[v].len() {
                return Err(Error::Manifold(format!("vertex {v} is a non-manifold vertex")));
            }
            fans.push(fan);
        }

        let euler = nv as i64 - edges.len() as i64 + built.len() as i64;
        if euler != 2 {
            return Err(Error::Manifold(format!("Euler characteristic {euler}, expected 2")));
        }

        let curvature: Vec<f64> = fans
            .iter()
            .map(|fan| TAU - fan.iter().map(|&(f, c)| built[f].corner_angle(c)).sum::<f64>())
            .collect();
        for (v, &w) in curvature.iter().enumerate() {
            if w <= tol.angle {
                return Err(Error::NotConvex {
                    vertex: v,
                    face: fans[v][0].0,
                    distance: 0.0,
                });
            }
        }
        let total: f64 = curvature.iter().sum();
        if (total - 2.0 * TAU).abs() > tol.angle.max(1e-9) * 10.0 {
            return Err(Error::Invalid(format!("total curvature {total} differs from 4π")));
        }

        Ok(Polyhedron {
            vertices,
            faces: built,
            edges,
            adj,
            fans,
            curvature,
            diag,
        })
    }

    pub fn vertices(&self) -> &[V3] {
        &self.vertices
    }

    pub fn vertex(&self, v: VertexId) -> V3 {
        self.vertices[v]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    /// Bounding-box diagonal; the length scale for tolerances.
    pub fn diag(&self) -> f64 {
        self.diag
    }

    pub fn label(&self, v: VertexId) -> String {
        format!("v{v}")
    }

    pub fn adjacency(&self, f: FaceId, side: usize) -> &Adjacency {
        &self.adj[f][side]
    }

    /// Faces around `v`, counterclockwise seen from outside, as `(face, corner)`.
    pub fn fan(&self, v: VertexId) -> &[(FaceId, usize)] {
        &self.fans[v]
    }

    pub fn edge_between(&self, f: FaceId, g: FaceId) -> Option<usize> {
        self.adj[f].iter().position(|a| a.face == g)
    }

    pub fn find_edge(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        let key = [a.min(b), a.max(b)];
        self.edges.iter().position(|e| e.v == key)
    }

    /// Curvature (angle deficit) at `v`.
    pub fn vertex_curvature(&self, v: VertexId) -> Result<f64> {
        self.curvature
            .get(v)
            .copied()
            .ok_or_else(|| Error::Invalid(format!("no vertex {v}")))
    }

    pub fn curvatures(&self) -> &[f64] {
        &self.curvature
    }

    /// Total surface angle around `v`.
    pub fn surface_angle(&self, v: VertexId) -> f64 {
        TAU - self.curvature[v]
    }

    pub fn face_angle(&self, f: FaceId, v: VertexId) -> Result<f64> {
        let face = self.faces.get(f).ok_or_else(|| Error::Invalid(format!("no face {f}")))?;
        let c = face
            .corner_of(v)
            .ok_or_else(|| Error::Invalid(format!("vertex {v} is not a corner of face {f}")))?;
        Ok(face.corner_angle(c))
    }

    pub fn surface_area(&self) -> f64 {
        self.faces
            .iter()
            .map(|f| polygon_area_3d(&f.verts.iter().map(|&v| self.vertices[v]).collect::<Vec<_>>()))
            .sum()
    }

    /// Length of edge `e` measured in the frame of its `k`-th incident face.
    pub fn edge_length_in_face(&self, e: EdgeId, k: usize) -> f64 {
        let (f, side) = self.edges[e].sides[k];
        let (a, b) = self.faces[f].side(side);
        (b - a).norm()
    }

    /// Uniformly scaled copy.
    pub fn scaled(&self, k: f64) -> Result<Polyhedron> {
        let verts = self.vertices.iter().map(|p| p * k).collect();
        Polyhedron::new(verts, self.faces.iter().map(|f| f.verts.clone()).collect())
    }

    pub fn face_lists(&self) -> Vec<Vec<VertexId>> {
        self.faces.iter().map(|f| f.verts.clone()).collect()
    }

    pub fn to_off(&self) -> String {
        let mut s = String::new();
        writeln!(s, "OFF").unwrap();
        writeln!(s, "{} {} {}", self.vertices.len(), self.faces.len(), self.edges.len()).unwrap();
        for p in &self.vertices {
            writeln!(s, "{:?} {:?} {:?}", p.x, p.y, p.z).unwrap();
        }
        for f in &self.faces {
            write!(s, "{}", f.verts.len()).unwrap();
            for v in &f.verts {
                write!(s, " {v}").unwrap();
            }
            writeln!(s).unwrap();
        }
        s
    }
}

/// Parses the OFF subset described in the README and validates the result.
pub fn load_off(text: &str) -> Result<Polyhedron> {
    let (verts, faces) = parse_off(text)?;
    Polyhedron::new(verts, faces)
}

struct Line<'a> {
    number: usize,
    tokens: Vec<(usize, &'a str)>,
}

fn tokenize(text: &str) -> Vec<Line<'_>> {
    let mut out = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let content = match raw.find('#') {
            Some(k) => &raw[..k],
            None => raw,
        };
        let mut tokens = Vec::new();
        let mut start = None;
        for (k, ch) in content.char_indices() {
            if ch.is_whitespace() {
                if let Some(s) = start.take() {
                    tokens.push((s + 1, &content[s..k]));
                }
            } else if start.is_none() {
                start = Some(k);
            }
        }
        if let Some(s) = start {
            tokens.push((s + 1, &content[s..]));
        }
        if !tokens.is_empty() {
            out.push(Line { number: i + 1, tokens });
        }
    }
    out
}

fn perr(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

fn parse_num<T: std::str::FromStr>(line: &Line, k: usize, what: &str) -> Result<T> {
    let (col, tok) = line.tokens[k];
    tok.parse::<T>()
        .map_err(|_| perr(line.number, col, format!("expected {what}, found `{tok}`")))
}

pub fn parse_off(text: &str) -> Result<(Vec<V3>, Vec<Vec<VertexId>>)> {
    let lines = tokenize(text);
    let mut it = lines.iter();
    let header = it.next().ok_or_else(|| perr(1, 1, "empty input"))?;
    if header.tokens[0].1 != "OFF" {
        return Err(perr(header.number, header.tokens[0].0, "expected `OFF` header"));
    }
    let counts = if header.tokens.len() > 1 {
        // Counts on the header line.
        Line {
            number: header.number,
            tokens: header.tokens[1..].to_vec(),
        }
    } else {
        let l = it.next().ok_or_else(|| perr(header.number + 1, 1, "missing counts line"))?;
        Line {
            number: l.number,
            tokens: l.tokens.clone(),
        }
    };
    if counts.tokens.len() != 3 {
        return Err(perr(counts.number, 1, "counts line must hold `nV nF nE`"));
    }
    let nv: usize = parse_num(&counts, 0, "vertex count")?;
    let nf: usize = parse_num(&counts, 1, "face count")?;
    let _ne: usize = parse_num(&counts, 2, "edge count")?;

    let mut verts = Vec::with_capacity(nv);
    for _ in 0..nv {
        let l = it
            .next()
            .ok_or_else(|| perr(counts.number, 1, format!("expected {nv} vertex lines")))?;
        if l.tokens.len() != 3 {
            return Err(perr(
                l.number,
                1,
                format!("vertex line needs 3 coordinates, found {}", l.tokens.len()),
            ));
        }
        let x: f64 = parse_num(l, 0, "a number")?;
        let y: f64 = parse_num(l, 1, "a number")?;
        let z: f64 = parse_num(l, 2, "a number")?;
        for (k, c) in [x, y, z].iter().enumerate() {
            if !c.is_finite() {
                return Err(perr(l.number, l.tokens[k].0, "non-finite coordinate"));
            }
        }
        verts.push(V3::new(x, y, z));
    }
    let mut faces = Vec::with_capacity(nf);
    for _ in 0..nf {
        let l = it
            .next()
            .ok_or_else(|| perr(counts.number, 1, format!("expected {nf} face lines")))?;
        let k: usize = parse_num(l, 0, "corner count")?;
        if l.tokens.len() != k + 1 {
            return Err(perr(
                l.number,
                l.tokens[0].0,
                format!("face declares {k} corners but lists {}", l.tokens.len() - 1),
            ));
        }
        let mut f = Vec::with_capacity(k);
        for j in 0..k {
            let v: usize = parse_num(l, j + 1, "vertex index")?;
            if v >= nv {
                return Err(perr(l.number, l.tokens[j + 1].0, format!("vertex index {v} out of range")));
            }
            f.push(v);
        }
        faces.push(f);
    }
    if let Some(extra) = it.next() {
        return Err(perr(extra.number, 1, "trailing content after faces"));
    }
    Ok((verts, faces))
}
