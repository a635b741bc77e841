//! The full unfolding: loop, halves, cuts, developments, join.

use crate::develop::{SurfaceDirection, SurfacePoint};
use crate::error::Result;
use crate::geom::V2;
use crate::mesh::{FaceId, Polyhedron};
use crate::qloop::{construct_loop, split_halves, Half, LoopOptions, QuasigeodesicLoop, Side};
use crate::spath::{all_cuts, CutSegment, SearchOptions};
use crate::unfold::{develop_half, insert_triangles, loop_events, select_and_join, LoopEvent, PlanarDevelopment, UnfoldedPolygon};

#[derive(Debug, Clone, Copy)]
pub struct Options {
    pub loop_opts: LoopOptions,
    pub search: SearchOptions,
}

impl Options {
    pub fn for_polyhedron(p: &Polyhedron) -> Self {
        Options {
            loop_opts: LoopOptions::for_polyhedron(p),
            search: SearchOptions::for_polyhedron(p),
        }
    }

    pub fn with_tol_angle(mut self, tol: f64) -> Self {
        self.loop_opts.tol_angle = tol;
        self
    }
}

#[derive(Debug, Clone)]
pub struct Unfolding {
    pub q: QuasigeodesicLoop,
    /// Left, right.
    pub halves: [Half; 2],
    pub cuts: [Vec<CutSegment>; 2],
    pub events: Vec<LoopEvent>,
    pub devs: [PlanarDevelopment; 2],
    pub polygon: UnfoldedPolygon,
}

impl Unfolding {
    pub fn half(&self, side: Side) -> &Half {
        &self.halves[side.index()]
    }

    pub fn dev(&self, side: Side) -> &PlanarDevelopment {
        &self.devs[side.index()]
    }

    pub fn all_cuts(&self) -> impl Iterator<Item = &CutSegment> {
        self.cuts[0].iter().chain(self.cuts[1].iter())
    }
}

/// Unfolds along a given loop.
pub fn unfold_loop(p: &Polyhedron, q: QuasigeodesicLoop, opts: Options) -> Result<Unfolding> {
    let (left, right) = split_halves(p, &q)?;
    let lc = all_cuts(p, &q, &left, opts.search)?;
    let rc = all_cuts(p, &q, &right, opts.search)?;
    let feet: Vec<&CutSegment> = lc.iter().chain(rc.iter()).collect();
    let events = loop_events(&q, &feet, opts.search.tol_locus);
    let ld = develop_half(&insert_triangles(p, &q, Side::Left, &lc, &events), &events)?;
    let rd = develop_half(&insert_triangles(p, &q, Side::Right, &rc, &events), &events)?;
    let polygon = select_and_join(&ld, &rd, &q)?;
    Ok(Unfolding {
        q,
        halves: [left, right],
        cuts: [lc, rc],
        events,
        devs: [ld, rd],
        polygon,
    })
}

/// A seed ray in one face's frame: start point and direction angle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Seed {
    pub face: FaceId,
    pub uv: V2,
    pub angle: f64,
}

impl Seed {
    pub fn point(&self, p: &Polyhedron, tol: f64) -> SurfacePoint {
        SurfacePoint::locate(p, self.face, self.uv, tol)
    }

    pub fn direction(&self) -> SurfaceDirection {
        SurfaceDirection {
            face: self.face,
            angle: self.angle,
        }
    }

    pub fn trace(&self, p: &Polyhedron, opts: LoopOptions) -> Result<QuasigeodesicLoop> {
        let start = self.point(p, opts.trace.tol_locus);
        construct_loop(p, &start, self.direction(), opts)
    }
}

/// Traces a loop from a seed ray and unfolds along it.
pub fn unfold_seed(p: &Polyhedron, start: &SurfacePoint, dir: SurfaceDirection, opts: Options) -> Result<Unfolding> {
    let q = construct_loop(p, start, dir, opts.loop_opts)?;
    unfold_loop(p, q, opts)
}
