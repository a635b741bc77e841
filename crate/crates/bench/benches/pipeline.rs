use std::hint::black_box;

use criterion::{criterion_group, criterion_main, Criterion};
use loopfold::fixtures::{central_section_seed, cube_loop_seed, cube_triangle_loop, face_normal};
use loopfold::pipeline::{unfold_loop, Options};
use loopfold::solids::{cube, dodecahedron};
use loopfold::verify::{brute_force_shortest, polygon_simple, verify_unfolding, VerifyOptions};
use loopfold_bench::random_instance;

fn pipeline(c: &mut Criterion) {
    let mut g = c.benchmark_group("unfold");
    let cb = cube();
    let o = Options::for_polyhedron(&cb);
    let tri = cube_triangle_loop(&cb).unwrap();
    g.bench_function("cube_triangle", |b| b.iter(|| unfold_loop(&cb, black_box(tri.clone()), o).unwrap()));
    let lp = cube_loop_seed().trace(&cb, o.loop_opts).unwrap();
    g.bench_function("cube_loop", |b| b.iter(|| unfold_loop(&cb, black_box(lp.clone()), o).unwrap()));
    let d = dodecahedron();
    let od = Options::for_polyhedron(&d);
    let eq = central_section_seed(&d, face_normal(&d, 0))
        .unwrap()
        .trace(&d, od.loop_opts)
        .unwrap();
    g.bench_function("dodecahedron_equator", |b| {
        b.iter(|| unfold_loop(&d, black_box(eq.clone()), od).unwrap())
    });
    for n in [12, 30] {
        let (p, q) = random_instance(1, n);
        let op = Options::for_polyhedron(&p);
        g.bench_function(format!("random_hull_{n}"), |b| {
            b.iter(|| unfold_loop(&p, black_box(q.clone()), op).unwrap())
        });
    }
    g.finish();
}

fn trace(c: &mut Criterion) {
    let cb = cube();
    let o = Options::for_polyhedron(&cb).loop_opts;
    c.bench_function("trace/cube_loop", |b| b.iter(|| cube_loop_seed().trace(&cb, black_box(o)).unwrap()));
}

fn verification(c: &mut Criterion) {
    let mut g = c.benchmark_group("verify");
    let cb = cube();
    let q = cube_triangle_loop(&cb).unwrap();
    g.bench_function("oracle_cube_all_vertices", |b| {
        b.iter(|| (0..8).filter_map(|v| brute_force_shortest(&cb, &q, v, 8).length).sum::<f64>())
    });
    let (p, q) = random_instance(1, 30);
    let u = unfold_loop(&p, q, Options::for_polyhedron(&p)).unwrap();
    g.bench_function("polygon_simple_random_30", |b| {
        b.iter(|| polygon_simple(black_box(&u.polygon.vertices)).is_ok())
    });
    let fast = VerifyOptions {
        oracle_max_faces: None,
        ..Default::default()
    };
    g.bench_function("report_random_30_no_oracle", |b| b.iter(|| verify_unfolding(&p, &u, fast).passed()));
    g.finish();
}

criterion_group!(benches, pipeline, trace, verification);
criterion_main!(benches);
