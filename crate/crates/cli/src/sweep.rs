//! Randomized sweep: hulls of random sphere points, random seed rays.

use std::collections::BTreeMap;
use std::f64::consts::TAU;

use loopfold::geom::{cross2, V2};
use loopfold::pipeline::{unfold_loop, Options, Seed};
use loopfold::report::{kind_name, SCHEMA};
use loopfold::solids::random_hull;
use loopfold::verify::{verify_unfolding, Status, VerifyOptions};
use loopfold::{Error, Polyhedron};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy)]
pub struct SweepConfig {
    pub instances: usize,
    pub hull_points: (usize, usize),
    pub rng_seed: u64,
    pub tol_angle: Option<f64>,
    pub workers: usize,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct Tally {
    pub pass: usize,
    pub fail: usize,
    #[serde(rename = "n/a")]
    pub na: usize,
    pub info: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CheckFailure {
    pub check: String,
    pub residual: Option<f64>,
    pub certificate: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Outcome {
    HullFailed {
        error: String,
    },
    ConstructionFailed {
        error: String,
    },
    PipelineFailed {
        error: String,
    },
    Completed {
        kind: &'static str,
        passed: bool,
        failures: Vec<CheckFailure>,
    },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Instance {
    pub index: usize,
    pub points: usize,
    pub vertices: usize,
    pub faces: usize,
    pub seed_face: usize,
    pub seed_uv: [f64; 2],
    pub direction: f64,
    #[serde(flatten)]
    pub outcome: Outcome,
    #[serde(skip)]
    pub checks: Vec<(String, Status)>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepReport {
    pub schema: u32,
    pub rng_seed: u64,
    pub instances: usize,
    pub hull_points: [usize; 2],
    pub constructed: usize,
    pub completed: usize,
    pub passed: usize,
    pub construction_errors: BTreeMap<String, usize>,
    pub kinds: BTreeMap<&'static str, usize>,
    pub checks: BTreeMap<String, Tally>,
    pub runs: Vec<Instance>,
}

impl SweepReport {
    /// Share of instances whose loop was built.
    pub fn construction_rate(&self) -> f64 {
        if self.instances == 0 {
            return 0.0;
        }
        self.constructed as f64 / self.instances as f64
    }

    pub fn tally(&self, check: &str) -> Tally {
        self.checks.get(check).copied().unwrap_or_default()
    }
}

/// Short name of an error variant, for tabulation.
pub fn error_kind(e: &Error) -> String {
    let s = format!("{e:?}");
    let end = s.find(|c: char| !c.is_alphanumeric()).unwrap_or(s.len());
    s[..end].to_string()
}

/// Uniform point in a convex face, and a uniform direction.
fn random_seed<R: Rng>(rng: &mut R, p: &Polyhedron) -> Seed {
    let face = rng.random_range(0..p.num_faces());
    let c = &p.face(face).coords;
    let areas: Vec<f64> = (1..c.len() - 1).map(|i| cross2(c[i] - c[0], c[i + 1] - c[0]) / 2.0).collect();
    let total: f64 = areas.iter().sum();
    let mut r = rng.random::<f64>() * total;
    let mut k = 0;
    while k + 1 < areas.len() && r > areas[k] {
        r -= areas[k];
        k += 1;
    }
    let (mut a, mut b) = (rng.random::<f64>(), rng.random::<f64>());
    if a + b > 1.0 {
        (a, b) = (1.0 - a, 1.0 - b);
    }
    let uv: V2 = c[0] + (c[k + 1] - c[0]) * a + (c[k + 2] - c[0]) * b;
    Seed {
        face,
        uv,
        angle: rng.random::<f64>() * TAU,
    }
}

/// Seeds of every instance, drawn from the master seed.
pub fn instance_seeds(rng_seed: u64, instances: usize) -> Vec<u64> {
    let mut master = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..instances).map(|_| master.random()).collect()
}

/// The hull and seed ray of one instance: point count, hull, seed.
pub fn build_instance(seed: u64, hull_points: (usize, usize)) -> (usize, loopfold::Result<(Polyhedron, Seed)>) {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let count = rng.random_range(hull_points.0..=hull_points.1);
    let built = random_hull(&mut rng, count).map(|p| {
        let s = random_seed(&mut rng, &p);
        (p, s)
    });
    (count, built)
}

fn run_instance(index: usize, seed: u64, cfg: &SweepConfig) -> Instance {
    let (count, built) = build_instance(seed, cfg.hull_points);
    let mut inst = Instance {
        index,
        points: count,
        vertices: 0,
        faces: 0,
        seed_face: 0,
        seed_uv: [0.0, 0.0],
        direction: 0.0,
        outcome: Outcome::HullFailed { error: String::new() },
        checks: Vec::new(),
    };
    let (p, seed) = match built {
        Ok(b) => b,
        Err(e) => {
            inst.outcome = Outcome::HullFailed { error: e.to_string() };
            return inst;
        }
    };
    inst.vertices = p.num_vertices();
    inst.faces = p.num_faces();
    inst.seed_face = seed.face;
    inst.seed_uv = [seed.uv.x, seed.uv.y];
    inst.direction = seed.angle;
    let mut opts = Options::for_polyhedron(&p);
    if let Some(t) = cfg.tol_angle {
        opts = opts.with_tol_angle(t);
    }
    let q = match seed.trace(&p, opts.loop_opts) {
        Ok(q) => q,
        Err(e) => {
            inst.outcome = Outcome::ConstructionFailed { error: error_kind(&e) };
            return inst;
        }
    };
    let kind = kind_name(q.kind);
    let u = match unfold_loop(&p, q, opts) {
        Ok(u) => u,
        Err(e) => {
            inst.outcome = Outcome::PipelineFailed { error: e.to_string() };
            return inst;
        }
    };
    let r = verify_unfolding(&p, &u, VerifyOptions::default());
    inst.checks = r.checks.iter().map(|c| (c.name.clone(), c.status)).collect();
    inst.outcome = Outcome::Completed {
        kind,
        passed: r.passed(),
        failures: r
            .failures()
            .into_iter()
            .map(|c| CheckFailure {
                check: c.name.clone(),
                residual: c.residual,
                certificate: c.certificate.clone(),
            })
            .collect(),
    };
    inst
}

pub fn run_sweep(cfg: &SweepConfig) -> SweepReport {
    let seeds = instance_seeds(cfg.rng_seed, cfg.instances);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.workers.max(1))
        .build()
        .expect("thread pool");
    let runs: Vec<Instance> = pool.install(|| seeds.par_iter().enumerate().map(|(i, &s)| run_instance(i, s, cfg)).collect());
    let mut rep = SweepReport {
        schema: SCHEMA,
        rng_seed: cfg.rng_seed,
        instances: cfg.instances,
        hull_points: [cfg.hull_points.0, cfg.hull_points.1],
        constructed: 0,
        completed: 0,
        passed: 0,
        construction_errors: BTreeMap::new(),
        kinds: BTreeMap::new(),
        checks: BTreeMap::new(),
        runs: Vec::new(),
    };
    for inst in &runs {
        match &inst.outcome {
            Outcome::HullFailed { .. } => *rep.construction_errors.entry("Hull".into()).or_default() += 1,
            Outcome::ConstructionFailed { error } => *rep.construction_errors.entry(error.clone()).or_default() += 1,
            Outcome::PipelineFailed { .. } => rep.constructed += 1,
            Outcome::Completed { kind, passed, .. } => {
                rep.constructed += 1;
                rep.completed += 1;
                rep.passed += *passed as usize;
                *rep.kinds.entry(kind).or_default() += 1;
            }
        }
        for (name, st) in &inst.checks {
            let t = rep.checks.entry(name.clone()).or_default();
            match st {
                Status::Pass => t.pass += 1,
                Status::Fail => t.fail += 1,
                Status::NotApplicable => t.na += 1,
                Status::Info => t.info += 1,
            }
        }
    }
    rep.runs = runs;
    rep
}

pub fn default_workers() -> usize {
    std::thread::available_parallelism().map_or(1, |n| n.get()).min(8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use loopfold::solids::cube;

    #[test]
    fn empty_sweep_is_empty() {
        let r = run_sweep(&SweepConfig {
            instances: 0,
            hull_points: (6, 30),
            rng_seed: 7,
            tol_angle: None,
            workers: 2,
        });
        assert_eq!(r.instances, 0);
        assert!(r.runs.is_empty() && r.checks.is_empty());
    }

    #[test]
    fn seeds_land_inside_their_face() {
        let c = cube();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let s = random_seed(&mut rng, &c);
            assert!(s.uv.x > 0.0 && s.uv.x < 1.0 && s.uv.y > 0.0 && s.uv.y < 1.0);
            assert!((0.0..TAU).contains(&s.angle));
        }
    }
}
