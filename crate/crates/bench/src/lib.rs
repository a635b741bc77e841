//! Instances shared by the benches.

use loopfold::geom::V2;
use loopfold::pipeline::{Options, Seed};
use loopfold::qloop::QuasigeodesicLoop;
use loopfold::solids::random_hull;
use loopfold::Polyhedron;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// A hull of `points` random sphere points with a traceable loop. Tries
/// successive seeds from `seed` until the trace closes.
pub fn random_instance(seed: u64, points: usize) -> (Polyhedron, QuasigeodesicLoop) {
    for s in seed.. {
        let mut rng = ChaCha8Rng::seed_from_u64(s);
        let Ok(p) = random_hull(&mut rng, points) else { continue };
        let c = &p.face(0).coords;
        let uv = c.iter().fold(V2::zeros(), |a, b| a + b) / c.len() as f64;
        let q = Seed { face: 0, uv, angle: 0.3 }.trace(&p, Options::for_polyhedron(&p).loop_opts);
        if let Ok(q) = q {
            return (p, q);
        }
    }
    unreachable!()
}
