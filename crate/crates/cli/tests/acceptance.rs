//! Acceptance run. Prints one PASS/FAIL line per criterion and fails if
//! any criterion fails. `cargo test -p loopfold-cli --test acceptance -- --nocapture`

use std::f64::consts::PI;
use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use loopfold::fixtures::{central_section_seed, cube_loop_seed, cube_triangle_loop, face_normal, tetrahedron_square_normal};
use loopfold::pipeline::{unfold_loop, Options, Unfolding};
use loopfold::qloop::{LoopKind, QuasigeodesicLoop, Side};
use loopfold::report::LoopFile;
use loopfold::solids::{cube, dodecahedron, octahedron, tetrahedron};
use loopfold::unfold::{EdgeSource, SeamCase};
use loopfold::verify::{brute_force_shortest, polygon_simple, Status};
use loopfold::Polyhedron;
use loopfold_cli::args::Format;
use loopfold_cli::run::{compute, Mode, RunConfig, RunResult};
use loopfold_cli::sweep::{default_workers, run_sweep, SweepConfig};

const SWEEP_SEED: u64 = 20240501;
const SWEEP_SIZE: usize = 200;

struct Outcome {
    ok: bool,
    notes: Vec<String>,
}

impl Outcome {
    fn new() -> Self {
        Outcome {
            ok: true,
            notes: Vec::new(),
        }
    }

    fn check(&mut self, cond: bool, what: impl Into<String>) {
        if !cond {
            self.ok = false;
            self.notes.push(what.into());
        }
    }
}

fn write_off(dir: &Path, name: &str, p: &Polyhedron) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, p.to_off()).unwrap();
    path
}

fn write_loop(dir: &Path, name: &str, p: &Polyhedron, q: &QuasigeodesicLoop) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, serde_json::to_string_pretty(&LoopFile::new(p, q)).unwrap()).unwrap();
    path
}

fn config(input: PathBuf, mode: Mode) -> RunConfig {
    RunConfig {
        input,
        mode,
        format: Format::Json,
        out: None,
        tol_angle: None,
        oracle_depth: None,
    }
}

fn rel(a: f64, b: f64) -> f64 {
    (a - b).abs() / b.abs().max(1e-300)
}

fn triangle_area(u: &Unfolding) -> f64 {
    u.devs.iter().flat_map(|d| d.triangles.iter()).map(|t| t.area()).sum()
}

fn min_turn(u: &Unfolding, side: Side) -> f64 {
    let d = u.dev(side);
    (0..d.len()).map(|i| d.turn(i)).fold(f64::INFINITY, f64::min)
}

fn run_lib(cfg: &RunConfig, o: &mut Outcome) -> Option<RunResult> {
    match compute(cfg) {
        Ok(r) => Some(r),
        Err(f) => {
            o.check(false, format!("run failed: {}", f.message));
            None
        }
    }
}

fn criterion_1(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let c = cube();
    let off = write_off(dir, "cube.off", &c);
    let lf = write_loop(dir, "cube_triangle.json", &c, &cube_triangle_loop(&c).unwrap());
    let t = Instant::now();
    let Some(r) = run_lib(&config(off, Mode::GivenLoop(lf)), &mut o) else {
        return o;
    };
    let secs = t.elapsed().as_secs_f64();
    let u = &r.unfolding;
    for side in [Side::Left, Side::Right] {
        let m = min_turn(u, side);
        o.check(m >= -1e-9, format!("{side:?} min turn {m}"));
        o.check(
            polygon_simple(&u.dev(side).vertices).is_ok(),
            format!("{side:?} development not simple"),
        );
    }
    for v in [2, 4] {
        let tied = u.all_cuts().find(|c| c.vertex == v).map(|c| c.tied);
        o.check(tied == Some(3), format!("v{v} tied {tied:?}"));
    }
    // Loop piece from v6's foot to v5.
    let foot6 = loopfold::geom::V3::new(0.5, 0.0, 0.5);
    let n = u.events.len();
    let seam = u.events.iter().position(|e| (e.point.pos - foot6).norm() < 1e-9).map(|k| {
        if u.events[(k + 1) % n].point.is_vertex() == Some(5) {
            k
        } else {
            (k + n - 1) % n
        }
    });
    let accepted = seam.is_some_and(|pc| u.polygon.seam.tested.contains(&(pc, true, true)));
    o.check(accepted, format!("seam v5v6' {seam:?} not accepted in {:?}", u.polygon.seam.tested));
    o.check(polygon_simple(&u.polygon.vertices).is_ok(), "final polygon not simple");
    let want = 6.0 + triangle_area(u);
    let e = rel(u.polygon.area(), want);
    o.check(e <= 1e-9, format!("area residual {e:e}"));
    o.check(secs < 1.0, format!("runtime {secs:.3}s"));
    o.notes.push(format!("seam piece {}, {:.3}s", u.polygon.seam.piece, secs));
    o
}

fn criterion_2(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let off = write_off(dir, "cube.off", &cube());
    let t = Instant::now();
    let Some(r) = run_lib(&config(off, Mode::Trace(cube_loop_seed())), &mut o) else {
        return o;
    };
    let secs = t.elapsed().as_secs_f64();
    let u = &r.unfolding;
    let Some((beta, side)) = u.q.beta else {
        o.check(false, "no loop point");
        return o;
    };
    o.check(u.q.kind == LoopKind::QuasigeodesicLoop, format!("kind {:?}", u.q.kind));
    o.check((beta - 1.5 * PI).abs() < 1e-9, format!("beta {beta}"));
    let other = u.half(side.other()).contained_vertices.len();
    o.check(other == 3, format!("{other} vertices opposite the loop point side"));
    let d = u.dev(side);
    let mut reflex = 0;
    for i in 0..d.len() {
        if d.turn(i) < -1e-9 {
            reflex += 1;
            o.check(u.events[d.corners[i].event].is_x, format!("reflex corner {i} is not an x image"));
        }
    }
    o.check(reflex > 0, "no reflex corner on the loop point side");
    let seam = &u.polygon.seam;
    o.check(seam.case == SeamCase::LoopTangents, format!("seam case {:?}", seam.case));
    let src = EdgeSource::Loop { piece: seam.piece };
    let incident = match (d.edge_of(src), d.x_images) {
        (Some(e), Some((x1, x2))) => [e, (e + 1) % d.len()].iter().any(|&k| k == x1 || k == x2),
        _ => false,
    };
    o.check(incident, "seam not incident to an extreme x image");
    let support = r.report.verification.get("seam").map(|c| c.status);
    o.check(support == Some(Status::Pass), format!("seam support {support:?}"));
    o.check(polygon_simple(&u.polygon.vertices).is_ok(), "final polygon not simple");
    o.check(secs < 1.0, format!("runtime {secs:.3}s"));
    o.notes
        .push(format!("{reflex} reflex corner(s), seam piece {}, {:.3}s", seam.piece, secs));
    o
}

fn criterion_3(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let p = dodecahedron();
    let off = write_off(dir, "dodecahedron.off", &p);
    let seed = central_section_seed(&p, face_normal(&p, 0)).unwrap();
    let Some(r) = run_lib(&config(off, Mode::Trace(seed)), &mut o) else {
        return o;
    };
    let u = &r.unfolding;
    o.check(u.q.kind == LoopKind::ClosedGeodesic, format!("kind {:?}", u.q.kind));
    o.check((u.q.length() - 10.0).abs() < 1e-9, format!("length {}", u.q.length()));
    for side in [Side::Left, Side::Right] {
        let m = min_turn(u, side);
        o.check(m >= -1e-9, format!("{side:?} min turn {m}"));
    }
    o.check(polygon_simple(&u.polygon.vertices).is_ok(), "final polygon not simple");
    // Closed form for the regular dodecahedron with edge a.
    let f = p.face(0);
    let a = (p.vertex(f.verts[0]) - p.vertex(f.verts[1])).norm();
    let s = 3.0 * (25.0 + 10.0 * 5f64.sqrt()).sqrt() * a * a;
    let e = rel(u.polygon.area(), s + triangle_area(u));
    o.check(e <= 1e-9, format!("area residual {e:e}"));
    o
}

fn oracle_on(p: &Polyhedron, q: QuasigeodesicLoop, label: &str, o: &mut Outcome) -> (usize, usize) {
    let u = match unfold_loop(p, q, Options::for_polyhedron(p)) {
        Ok(u) => u,
        Err(e) => {
            o.check(false, format!("{label}: {e}"));
            return (0, p.num_vertices());
        }
    };
    let on_loop: Vec<usize> = u.q.vertex_waypoints().iter().map(|&(_, v)| v).collect();
    let mut matched = 0;
    for v in 0..p.num_vertices() {
        if on_loop.contains(&v) {
            matched += 1;
            continue;
        }
        let Some(c) = u.all_cuts().find(|c| c.vertex == v) else {
            o.check(false, format!("{label}: v{v} has no cut"));
            continue;
        };
        let b = brute_force_shortest(p, &u.q, v, 8);
        match b.length {
            Some(l) if rel(c.length, l) <= 1e-9 => matched += 1,
            other => o.check(false, format!("{label}: v{v} cut {} oracle {other:?}", c.length)),
        }
    }
    (matched, p.num_vertices())
}

fn criterion_4() -> Outcome {
    let mut o = Outcome::new();
    let c = cube();
    let t = tetrahedron();
    let oc = octahedron();
    let opts = |p: &Polyhedron| Options::for_polyhedron(p).loop_opts;
    let runs = [
        ("cube triangle", &c, cube_triangle_loop(&c)),
        ("cube loop", &c, cube_loop_seed().trace(&c, opts(&c))),
        (
            "tetrahedron",
            &t,
            central_section_seed(&t, tetrahedron_square_normal(&t)).and_then(|s| s.trace(&t, opts(&t))),
        ),
        (
            "octahedron",
            &oc,
            central_section_seed(&oc, face_normal(&oc, 0)).and_then(|s| s.trace(&oc, opts(&oc))),
        ),
    ];
    let (mut hit, mut all) = (0, 0);
    for (label, p, q) in runs {
        match q {
            Ok(q) => {
                let (m, n) = oracle_on(p, q, label, &mut o);
                hit += m;
                all += n;
            }
            Err(e) => o.check(false, format!("{label}: {e}")),
        }
    }
    o.check(hit == all, format!("{hit}/{all} vertices"));
    o.notes.push(format!("{hit}/{all} vertices"));
    o
}

fn criterion_5() -> Outcome {
    let mut o = Outcome::new();
    let t = Instant::now();
    let r = run_sweep(&SweepConfig {
        instances: SWEEP_SIZE,
        hull_points: (6, 30),
        rng_seed: SWEEP_SEED,
        tol_angle: None,
        workers: default_workers(),
    });
    let secs = t.elapsed().as_secs_f64();
    let rate = r.construction_rate();
    o.check(rate > 0.9, format!("construction rate {rate}"));
    o.check(
        r.completed == r.constructed,
        format!(
            "{} of {} constructed runs failed in the pipeline",
            r.constructed - r.completed,
            r.constructed
        ),
    );
    let checks = [
        "gauss_bonnet_left",
        "gauss_bonnet_right",
        "orthogonality",
        "cut_disjoint",
        "tau21",
        "tau21_subchains",
        "alpha",
        "polygon_simple",
    ];
    for name in checks {
        let tl = r.tally(name);
        o.check(tl.fail == 0, format!("{name}: {} fail", tl.fail));
    }
    // Every completed run must have been checked for simplicity.
    o.check(
        r.tally("polygon_simple").pass == r.completed,
        "polygon_simple not run on every completed run",
    );
    o.check(secs < 300.0, format!("runtime {secs:.1}s"));
    o.notes.push(format!(
        "{}/{} constructed, {} passed all checks, {:.1}s",
        r.constructed, r.instances, r.passed, secs
    ));
    o
}

fn bin(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_loopfold")).args(args).output().unwrap();
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_6(dir: &Path) -> Outcome {
    let mut o = Outcome::new();
    let c = cube();
    let cube_off = write_off(dir, "cube.off", &c);
    let loop_json = write_loop(dir, "cube_triangle.json", &c, &cube_triangle_loop(&c).unwrap());
    let d = dodecahedron();
    let dod_off = write_off(dir, "dodecahedron.off", &d);
    let t = tetrahedron();
    let tet_off = write_off(dir, "tetrahedron.off", &t);
    let oc = octahedron();
    let oct_off = write_off(dir, "octahedron.off", &oc);
    let seed_args = |s: loopfold::pipeline::Seed| vec![s.face.to_string(), format!("{},{}", s.uv.x, s.uv.y), s.angle.to_string()];
    let mut cases: Vec<(String, Vec<String>)> = Vec::new();
    let p = |x: &PathBuf| x.display().to_string();
    cases.push((
        "cube triangle".into(),
        vec!["--input".into(), p(&cube_off), "--loop-file".into(), p(&loop_json)],
    ));
    let traced = [
        ("cube loop", &cube_off, cube_loop_seed()),
        ("dodecahedron", &dod_off, central_section_seed(&d, face_normal(&d, 0)).unwrap()),
        (
            "tetrahedron",
            &tet_off,
            central_section_seed(&t, tetrahedron_square_normal(&t)).unwrap(),
        ),
        ("octahedron", &oct_off, central_section_seed(&oc, face_normal(&oc, 0)).unwrap()),
    ];
    for (label, off, s) in traced {
        let a = seed_args(s);
        cases.push((
            label.into(),
            vec![
                "--input".into(),
                p(off),
                "--seed-face".into(),
                a[0].clone(),
                "--seed-uv".into(),
                a[1].clone(),
                "--direction".into(),
                a[2].clone(),
            ],
        ));
    }
    cases.push((
        "sweep".into(),
        vec![
            "--sweep".into(),
            SWEEP_SIZE.to_string(),
            "--rng-seed".into(),
            SWEEP_SEED.to_string(),
        ],
    ));
    for (label, args) in &cases {
        let args: Vec<&str> = args.iter().map(String::as_str).collect();
        let (e1, a) = bin(&args);
        let (e2, b) = bin(&args);
        o.check(e1 == e2, format!("{label}: exit {e1} then {e2}"));
        o.check(!a.is_empty() && a == b, format!("{label}: output differs between runs"));
        if *label != "sweep" {
            o.check(e1 == 0, format!("{label}: exit {e1}"));
        }
    }
    let bad = dir.join("bad.off");
    fs::write(&bad, "OFF\n4 1 0\n0 0 0\n1 0\n").unwrap();
    let (code, out) = bin(&["--input", &p(&bad), "--seed-face", "0", "--seed-uv", "0.1,0.1", "--direction", "0"]);
    o.check(code == 2, format!("malformed OFF exit {code}"));
    let v: serde_json::Value = serde_json::from_slice(&out).unwrap_or_default();
    o.check(v["error"]["kind"] == "input", format!("malformed OFF output {v}"));
    o.notes.push(format!("{} runs repeated", cases.len()));
    o
}

#[test]
fn acceptance() {
    let dir = tempfile::tempdir().unwrap();
    let results = [
        ("1 cube closed quasigeodesic", criterion_1(dir.path())),
        ("2 cube geodesic loop", criterion_2(dir.path())),
        ("3 dodecahedron closed geodesic", criterion_3(dir.path())),
        ("4 oracle equivalence", criterion_4()),
        ("5 invariant sweep", criterion_5()),
        ("6 determinism", criterion_6(dir.path())),
    ];
    let mut failed = 0;
    for (name, o) in &results {
        let tag = if o.ok { "PASS" } else { "FAIL" };
        println!("criterion {name}: {tag} ({})", o.notes.join("; "));
        failed += !o.ok as usize;
    }
    assert_eq!(failed, 0, "{failed} criteria failed");
}
