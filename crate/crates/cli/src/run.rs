use std::fs;
use std::path::{Path, PathBuf};

use loopfold::pipeline::{unfold_loop, Options, Seed, Unfolding};
use loopfold::report::{LoopFile, Report, SCHEMA};
use loopfold::verify::{default_max_faces, verify_unfolding, VerifyOptions};
use loopfold::{load_off, Polyhedron};
use serde::Serialize;

use crate::args::{Cli, Format};
use crate::svg;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_VERIFY: i32 = 1;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_GEOMETRY: i32 = 3;

#[derive(Debug, Clone, PartialEq)]
pub enum Mode {
    Trace(Seed),
    GivenLoop(PathBuf),
}

#[derive(Debug, Clone)]
pub struct RunConfig {
    pub input: PathBuf,
    pub mode: Mode,
    pub format: Format,
    pub out: Option<PathBuf>,
    pub tol_angle: Option<f64>,
    /// `None` uses the default depth, `Some(0)` skips the oracle.
    pub oracle_depth: Option<usize>,
}

/// A failure with its exit status.
#[derive(Debug, Clone)]
pub struct Failure {
    pub exit: i32,
    pub kind: &'static str,
    pub message: String,
}

impl Failure {
    pub fn input(message: impl Into<String>) -> Self {
        Failure {
            exit: EXIT_INPUT,
            kind: "input",
            message: message.into(),
        }
    }

    fn from_core(e: loopfold::Error) -> Self {
        if e.is_input_error() {
            Failure::input(e.to_string())
        } else {
            Failure {
                exit: EXIT_GEOMETRY,
                kind: "geometry",
                message: e.to_string(),
            }
        }
    }
}

impl RunConfig {
    pub fn from_cli(c: &Cli) -> Result<Self, Failure> {
        let input = c.input.clone().ok_or_else(|| Failure::input("--input is required"))?;
        let mode = match (&c.loop_file, c.seed_face, c.seed_uv, c.direction) {
            (Some(f), None, None, None) => Mode::GivenLoop(f.clone()),
            (None, Some(face), Some(uv), Some(angle)) => Mode::Trace(Seed {
                face,
                uv: loopfold::geom::V2::new(uv[0], uv[1]),
                angle,
            }),
            _ => {
                return Err(Failure::input(
                    "give either --loop-file or all of --seed-face, --seed-uv, --direction",
                ))
            }
        };
        if c.format != Format::Json && c.out.is_none() {
            return Err(Failure::input("SVG output needs --out"));
        }
        Ok(RunConfig {
            input,
            mode,
            format: c.format,
            out: c.out.clone(),
            tol_angle: c.tol_angle,
            oracle_depth: c.oracle_depth,
        })
    }
}

#[derive(Debug, Clone, Serialize)]
#[serde(tag = "mode", rename_all = "snake_case")]
enum ModeDto {
    Trace { face: usize, uv: [f64; 2], direction: f64 },
    GivenLoop { loop_file: String },
}

#[derive(Debug, Clone, Serialize)]
struct ConfigDto {
    input: String,
    #[serde(flatten)]
    mode: ModeDto,
    tol_angle: f64,
    oracle_depth: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
struct RunOutput {
    #[serde(flatten)]
    report: Report,
    config: ConfigDto,
}

#[derive(Debug, Clone, Serialize)]
struct ErrorBody {
    exit: i32,
    kind: &'static str,
    message: String,
}

#[derive(Debug, Clone, Serialize)]
struct ErrorOutput {
    schema: u32,
    error: ErrorBody,
}

pub fn error_json(f: &Failure) -> String {
    let e = ErrorOutput {
        schema: SCHEMA,
        error: ErrorBody {
            exit: f.exit,
            kind: f.kind,
            message: f.message.clone(),
        },
    };
    serde_json::to_string_pretty(&e).expect("error record serializes")
}

pub fn load_polyhedron(path: &Path) -> Result<Polyhedron, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    load_off(&text).map_err(Failure::from_core)
}

/// Reads a loop from either a bare loop record or a whole run output.
pub fn read_loop_file(path: &Path) -> Result<LoopFile, Failure> {
    let text = fs::read_to_string(path).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let v: serde_json::Value = serde_json::from_str(&text).map_err(|e| Failure::input(format!("{}: {e}", path.display())))?;
    let v = v.get("loop").cloned().unwrap_or(v);
    serde_json::from_value(v).map_err(|e| Failure::input(format!("{}: {e}", path.display())))
}

/// Everything a run produced, before writing.
pub struct RunResult {
    pub polyhedron: Polyhedron,
    pub unfolding: Unfolding,
    pub report: Report,
    pub json: String,
}

impl RunResult {
    pub fn exit(&self) -> i32 {
        if self.report.verification.passed() {
            EXIT_PASS
        } else {
            EXIT_VERIFY
        }
    }
}

pub fn options(p: &Polyhedron, tol_angle: Option<f64>) -> Options {
    let o = Options::for_polyhedron(p);
    match tol_angle {
        Some(t) => o.with_tol_angle(t),
        None => o,
    }
}

/// Builds the unfolding and its report without touching the output files.
pub fn compute(cfg: &RunConfig) -> Result<RunResult, Failure> {
    let p = load_polyhedron(&cfg.input)?;
    let opts = options(&p, cfg.tol_angle);
    let (q, mode) = match &cfg.mode {
        Mode::Trace(seed) => {
            if seed.face >= p.num_faces() {
                return Err(Failure::input(format!("no face {}", seed.face)));
            }
            let q = seed.trace(&p, opts.loop_opts).map_err(Failure::from_core)?;
            let mode = ModeDto::Trace {
                face: seed.face,
                uv: [seed.uv.x, seed.uv.y],
                direction: seed.angle,
            };
            (q, mode)
        }
        Mode::GivenLoop(path) => {
            let q = read_loop_file(path)?
                .to_loop(&p, opts.loop_opts.tol_angle)
                .map_err(Failure::from_core)?;
            (
                q,
                ModeDto::GivenLoop {
                    loop_file: path.display().to_string(),
                },
            )
        }
    };
    let u = unfold_loop(&p, q, opts).map_err(Failure::from_core)?;
    let depth = match cfg.oracle_depth {
        None => Some(default_max_faces(&p)),
        Some(0) => None,
        Some(d) => Some(d),
    };
    let vopts = VerifyOptions {
        oracle_max_faces: depth,
        ..Default::default()
    };
    let report = Report::new(&p, &u, verify_unfolding(&p, &u, vopts));
    let out = RunOutput {
        report: report.clone(),
        config: ConfigDto {
            input: cfg.input.display().to_string(),
            mode,
            tol_angle: opts.loop_opts.tol_angle,
            oracle_depth: depth,
        },
    };
    let json = serde_json::to_string_pretty(&out).expect("report serializes");
    Ok(RunResult {
        polyhedron: p,
        unfolding: u,
        report,
        json,
    })
}

pub fn with_ext(base: &Path, ext: &str) -> PathBuf {
    let mut s = base.as_os_str().to_owned();
    s.push(".");
    s.push(ext);
    PathBuf::from(s)
}

/// Runs one unfolding and writes its artifacts. Returns the exit status.
pub fn run_unfold(cfg: &RunConfig) -> i32 {
    let result = compute(cfg);
    let (json, svg, exit) = match &result {
        Ok(r) => (r.json.clone(), Some(svg::render(&r.unfolding)), r.exit()),
        Err(f) => (error_json(f), None, f.exit),
    };
    let write = |path: PathBuf, text: &str| {
        if let Err(e) = fs::write(&path, text) {
            eprintln!("loopfold: cannot write {}: {e}", path.display());
            return false;
        }
        true
    };
    match &cfg.out {
        None => println!("{json}"),
        Some(base) => {
            let mut ok = true;
            if cfg.format != Format::Svg || svg.is_none() {
                ok &= write(with_ext(base, "json"), &json);
            }
            if let (Some(s), true) = (&svg, cfg.format != Format::Json) {
                ok &= write(with_ext(base, "svg"), s);
            }
            if !ok {
                return EXIT_INPUT;
            }
        }
    }
    if let Err(f) = &result {
        eprintln!("loopfold: {}", f.message);
    } else if exit != EXIT_PASS {
        eprintln!("loopfold: verification failed");
    }
    exit
}
