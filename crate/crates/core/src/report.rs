//! Serializable view of an unfolding, and loop files for given-loop runs.

use serde::{Deserialize, Serialize};

use crate::develop::{GeodesicPath, Locus, SurfacePoint};
use crate::error::{Error, Result};
use crate::geom::{V2, V3};
use crate::mesh::{FaceId, Polyhedron, VertexId};
use crate::pipeline::Unfolding;
use crate::qloop::{classify, Half, LoopKind, QuasigeodesicLoop, Side};
use crate::spath::{check_orthogonality, CutSegment};
use crate::unfold::{turn_of_c21, EdgeSource, PlanarDevelopment, SeamCase};
use crate::verify::VerificationReport;

pub const SCHEMA: u32 = 1;

fn p2(v: V2) -> [f64; 2] {
    [v.x, v.y]
}

fn p3(v: V3) -> [f64; 3] {
    [v.x, v.y, v.z]
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum LocusDto {
    Face {
        face: FaceId,
        uv: [f64; 2],
    },
    /// `t` runs from the first listed vertex to the second.
    Edge {
        edge: [VertexId; 2],
        t: f64,
    },
    Vertex {
        vertex: VertexId,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PointDto {
    pub locus: LocusDto,
    pub pos: [f64; 3],
}

impl PointDto {
    pub fn new(p: &Polyhedron, s: &SurfacePoint) -> Self {
        let locus = match s.locus {
            Locus::Face { face, uv } => LocusDto::Face { face, uv: p2(uv) },
            Locus::Edge { edge, t } => LocusDto::Edge { edge: p.edge(edge).v, t },
            Locus::Vertex { vertex } => LocusDto::Vertex { vertex },
        };
        PointDto { locus, pos: p3(s.pos) }
    }

    pub fn to_point(&self, p: &Polyhedron) -> Result<SurfacePoint> {
        let locus = match self.locus {
            LocusDto::Face { face, uv } => {
                if face >= p.num_faces() {
                    return Err(Error::Invalid(format!("no face {face}")));
                }
                Locus::Face {
                    face,
                    uv: V2::new(uv[0], uv[1]),
                }
            }
            LocusDto::Edge { edge: [a, b], t } => {
                let e = p.find_edge(a, b).ok_or_else(|| Error::Invalid(format!("no edge {a}-{b}")))?;
                let t = if p.edge(e).v[0] == a { t } else { 1.0 - t };
                Locus::Edge { edge: e, t }
            }
            LocusDto::Vertex { vertex } => {
                if vertex >= p.num_vertices() {
                    return Err(Error::Invalid(format!("no vertex {vertex}")));
                }
                Locus::Vertex { vertex }
            }
        };
        Ok(SurfacePoint {
            locus,
            pos: V3::new(self.pos[0], self.pos[1], self.pos[2]),
        })
    }
}

/// The part of a loop needed to rebuild it.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LoopFile {
    pub points: Vec<PointDto>,
    pub legs: Vec<FaceId>,
}

impl LoopFile {
    pub fn new(p: &Polyhedron, q: &QuasigeodesicLoop) -> Self {
        LoopFile {
            points: q.path.points.iter().map(|s| PointDto::new(p, s)).collect(),
            legs: q.path.legs.clone(),
        }
    }

    pub fn to_loop(&self, p: &Polyhedron, tol_angle: f64) -> Result<QuasigeodesicLoop> {
        if self.points.len() != self.legs.len() + 1 {
            return Err(Error::Invalid("loop needs one more point than legs".into()));
        }
        if let Some(&f) = self.legs.iter().find(|&&f| f >= p.num_faces()) {
            return Err(Error::Invalid(format!("no face {f}")));
        }
        let points = self.points.iter().map(|d| d.to_point(p)).collect::<Result<Vec<_>>>()?;
        classify(
            p,
            GeodesicPath {
                points,
                legs: self.legs.clone(),
            },
            tol_angle,
        )
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum SideDto {
    Left,
    Right,
}

impl From<Side> for SideDto {
    fn from(s: Side) -> Self {
        match s {
            Side::Left => SideDto::Left,
            Side::Right => SideDto::Right,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SideAngle {
    pub angle: f64,
    pub side: SideDto,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopPointDto {
    pub point: PointDto,
    pub left: f64,
    pub right: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LoopDto {
    pub kind: &'static str,
    pub length: f64,
    #[serde(flatten)]
    pub path: LoopFile,
    /// `[L, R]` at every waypoint.
    pub side_angles: Vec<[f64; 2]>,
    pub loop_point: Option<LoopPointDto>,
    pub beta: Option<SideAngle>,
}

pub fn kind_name(k: LoopKind) -> &'static str {
    match k {
        LoopKind::ClosedGeodesic => "closed_geodesic",
        LoopKind::ClosedQuasigeodesic => "closed_quasigeodesic",
        LoopKind::QuasigeodesicLoop => "quasigeodesic_loop",
    }
}

impl LoopDto {
    pub fn new(p: &Polyhedron, q: &QuasigeodesicLoop) -> Self {
        LoopDto {
            kind: kind_name(q.kind),
            length: q.length(),
            path: LoopFile::new(p, q),
            side_angles: q.angles.iter().map(|&(l, r)| [l, r]).collect(),
            loop_point: q.loop_point.as_ref().map(|x| LoopPointDto {
                point: PointDto::new(p, &x.point),
                left: x.left,
                right: x.right,
            }),
            beta: q.beta.map(|(angle, side)| SideAngle { angle, side: side.into() }),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RegionDto {
    pub face: FaceId,
    pub polygon: Vec<[f64; 2]>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct HalfDto {
    pub side: SideDto,
    pub vertices: Vec<VertexId>,
    pub omega: f64,
    pub tau: f64,
    pub area: f64,
    pub regions: Vec<RegionDto>,
}

impl From<&Half> for HalfDto {
    fn from(h: &Half) -> Self {
        HalfDto {
            side: h.side.into(),
            vertices: h.contained_vertices.clone(),
            omega: h.omega_q,
            tau: h.tau_q,
            area: h.area,
            regions: h
                .regions
                .iter()
                .map(|(f, poly)| RegionDto {
                    face: *f,
                    polygon: poly.iter().map(|&v| p2(v)).collect(),
                })
                .collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CutDto {
    pub vertex: VertexId,
    pub side: SideDto,
    pub length: f64,
    pub foot: PointDto,
    pub foot_arc: f64,
    pub faces: Vec<FaceId>,
    pub tied: usize,
    pub phi: f64,
    pub orthogonality: Option<f64>,
    pub polyline: Vec<[f64; 3]>,
}

impl CutDto {
    pub fn new(p: &Polyhedron, q: &QuasigeodesicLoop, c: &CutSegment) -> Self {
        CutDto {
            vertex: c.vertex,
            side: c.side.into(),
            length: c.length,
            foot: PointDto::new(p, &c.projection),
            foot_arc: c.foot_arc,
            faces: c.face_seq.clone(),
            tied: c.tied,
            phi: c.phi,
            orthogonality: check_orthogonality(q, c),
            polyline: c.polyline_3d(p).into_iter().map(p3).collect(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum SourceDto {
    Loop { piece: usize },
    Base { vertex: VertexId, part: usize },
    Cut { vertex: VertexId, part: usize },
}

impl From<EdgeSource> for SourceDto {
    fn from(s: EdgeSource) -> Self {
        match s {
            EdgeSource::Loop { piece } => SourceDto::Loop { piece },
            EdgeSource::Base { vertex, part } => SourceDto::Base { vertex, part },
            EdgeSource::Cut { vertex, part } => SourceDto::Cut { vertex, part },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TriangleDto {
    pub vertex: VertexId,
    pub omega: f64,
    pub leg: f64,
    pub pieces: usize,
    pub area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ChainTurnDto {
    pub geometric: f64,
    pub exact: f64,
    pub closed_form: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DevelopmentDto {
    pub side: SideDto,
    pub vertices: Vec<[f64; 2]>,
    pub sources: Vec<SourceDto>,
    pub x_images: Option<[usize; 2]>,
    pub triangles: Vec<TriangleDto>,
    pub turn_total: f64,
    pub closure: f64,
    pub min_turn: f64,
    pub tau21: Option<ChainTurnDto>,
    pub net: Vec<[f64; 2]>,
    pub net_sources: Vec<SourceDto>,
}

impl From<&PlanarDevelopment> for DevelopmentDto {
    fn from(d: &PlanarDevelopment) -> Self {
        DevelopmentDto {
            side: d.side.into(),
            vertices: d.vertices.iter().map(|&v| p2(v)).collect(),
            sources: d.sources.iter().map(|&s| s.into()).collect(),
            x_images: d.x_images.map(|(a, b)| [a, b]),
            triangles: d
                .triangles
                .iter()
                .map(|t| TriangleDto {
                    vertex: t.vertex,
                    omega: t.omega,
                    leg: t.leg,
                    pieces: t.pieces,
                    area: t.area(),
                })
                .collect(),
            turn_total: d.turn_total,
            closure: d.closure,
            min_turn: (0..d.len()).map(|i| d.turn(i)).fold(f64::INFINITY, f64::min),
            tau21: d.at_x.as_ref().and_then(|_| turn_of_c21(d).ok()).map(|t| ChainTurnDto {
                geometric: t.geometric,
                exact: t.exact,
                closed_form: t.closed_form,
            }),
            net: d.net.iter().map(|&v| p2(v)).collect(),
            net_sources: d.net_sources.iter().map(|&s| s.into()).collect(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SeamDto {
    pub piece: usize,
    pub case: &'static str,
    pub length: f64,
    pub segment: [[f64; 2]; 2],
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SidedSource {
    pub side: SideDto,
    pub source: SourceDto,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PolygonDto {
    pub vertices: Vec<[f64; 2]>,
    pub sources: Vec<SidedSource>,
    pub area: f64,
    pub net: Vec<[f64; 2]>,
    pub net_sources: Vec<SidedSource>,
    pub net_area: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EventDto {
    pub arc: f64,
    pub point: PointDto,
    pub is_x: bool,
}

/// Sizes: vertices, faces crossed by the loop (with repeats), and their sum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Counters {
    pub n: usize,
    pub q: usize,
    pub m: usize,
}

impl Counters {
    pub fn new(p: &Polyhedron, q: &QuasigeodesicLoop) -> Self {
        let n = p.num_vertices();
        let q = q.num_legs();
        Counters { n, q, m: n + q }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct UnfoldingDto {
    #[serde(rename = "loop")]
    pub q: LoopDto,
    pub halves: Vec<HalfDto>,
    pub cuts: Vec<CutDto>,
    pub events: Vec<EventDto>,
    pub developments: Vec<DevelopmentDto>,
    pub seam: SeamDto,
    pub polygon: PolygonDto,
}

fn sided(v: &[(Side, EdgeSource)]) -> Vec<SidedSource> {
    v.iter()
        .map(|&(side, s)| SidedSource {
            side: side.into(),
            source: s.into(),
        })
        .collect()
}

impl UnfoldingDto {
    pub fn new(p: &Polyhedron, u: &Unfolding) -> Self {
        let poly = &u.polygon;
        let (a, b) = poly.seam_segment;
        UnfoldingDto {
            q: LoopDto::new(p, &u.q),
            halves: u.halves.iter().map(HalfDto::from).collect(),
            cuts: u.all_cuts().map(|c| CutDto::new(p, &u.q, c)).collect(),
            events: u
                .events
                .iter()
                .map(|e| EventDto {
                    arc: e.arc,
                    point: PointDto::new(p, &e.point),
                    is_x: e.is_x,
                })
                .collect(),
            developments: u.devs.iter().map(DevelopmentDto::from).collect(),
            seam: SeamDto {
                piece: poly.seam.piece,
                case: match poly.seam.case {
                    SeamCase::ClosedCurve => "closed_curve",
                    SeamCase::LoopTangents => "loop_tangents",
                    SeamCase::Fallback => "fallback",
                    SeamCase::Unsupported => "unsupported",
                },
                length: poly.seam.length,
                segment: [p2(a), p2(b)],
            },
            polygon: PolygonDto {
                vertices: poly.vertices.iter().map(|&v| p2(v)).collect(),
                sources: sided(&poly.sources),
                area: poly.area(),
                net: poly.net.iter().map(|&v| p2(v)).collect(),
                net_sources: sided(&poly.net_sources),
                net_area: poly.net_area(),
            },
        }
    }
}

/// A full run record.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Report {
    pub schema: u32,
    pub counters: Counters,
    #[serde(flatten)]
    pub unfolding: UnfoldingDto,
    pub verification: VerificationReport,
}

impl Report {
    pub fn new(p: &Polyhedron, u: &Unfolding, verification: VerificationReport) -> Self {
        Report {
            schema: SCHEMA,
            counters: Counters::new(p, &u.q),
            unfolding: UnfoldingDto::new(p, u),
            verification,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{cube_loop_seed, cube_triangle_loop};
    use crate::pipeline::{unfold_loop, Options};
    use crate::solids::cube;
    use crate::verify::{verify_unfolding, VerifyOptions};

    #[test]
    fn loop_file_round_trips() {
        let c = cube();
        let o = Options::for_polyhedron(&c);
        let q = cube_loop_seed().trace(&c, o.loop_opts).unwrap();
        let text = serde_json::to_string(&LoopDto::new(&c, &q)).unwrap();
        let file: LoopFile = serde_json::from_str(&text).unwrap();
        let back = file.to_loop(&c, o.loop_opts.tol_angle).unwrap();
        assert_eq!(back.kind, q.kind);
        assert_eq!(back.path.legs, q.path.legs);
        let a = unfold_loop(&c, q, o).unwrap();
        let b = unfold_loop(&c, back, o).unwrap();
        assert_eq!(a.polygon.vertices, b.polygon.vertices);
        assert_eq!(a.polygon.net, b.polygon.net);
    }

    #[test]
    fn report_has_schema_and_tagged_loci() {
        let c = cube();
        let u = unfold_loop(&c, cube_triangle_loop(&c).unwrap(), Options::for_polyhedron(&c)).unwrap();
        let r = Report::new(&c, &u, verify_unfolding(&c, &u, VerifyOptions::default()));
        let v = serde_json::to_value(&r).unwrap();
        assert_eq!(v["schema"], 1);
        assert_eq!(v["loop"]["points"][0]["locus"]["kind"], "vertex");
        assert_eq!(v["counters"]["n"], 8);
        assert_eq!(v["counters"]["q"], 3);
        assert_eq!(v["loop"]["kind"], "closed_quasigeodesic");
        assert_eq!(v["seam"]["case"], "closed_curve");
        let face_feet = v["cuts"]
            .as_array()
            .unwrap()
            .iter()
            .filter(|c| c["foot"]["locus"]["kind"] == "face")
            .count();
        assert!(face_feet > 0);
        assert!(v["verification"]["checks"]
            .as_array()
            .unwrap()
            .iter()
            .all(|c| c["status"] != "fail"));
    }
}
