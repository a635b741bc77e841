use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use loopfold_cli::args::Cli;
use loopfold_cli::run::{error_json, run_unfold, with_ext, RunConfig, EXIT_INPUT};
use loopfold_cli::sweep::{default_workers, run_sweep, SweepConfig};

fn write_or_print(out: Option<&Path>, json: &str) -> bool {
    match out {
        None => {
            println!("{json}");
            true
        }
        Some(base) => {
            let path = with_ext(base, "json");
            std::fs::write(&path, json)
                .map_err(|e| eprintln!("loopfold: cannot write {}: {e}", path.display()))
                .is_ok()
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.sweep {
        let rep = run_sweep(&SweepConfig {
            instances: n,
            hull_points: cli.hull_points,
            rng_seed: cli.rng_seed,
            tol_angle: cli.tol_angle,
            workers: default_workers(),
        });
        let json = serde_json::to_string_pretty(&rep).expect("sweep report serializes");
        eprintln!(
            "loopfold: {} instances, {} constructed, {} completed, {} passed",
            rep.instances, rep.constructed, rep.completed, rep.passed
        );
        if !write_or_print(cli.out.as_deref(), &json) {
            return ExitCode::from(EXIT_INPUT as u8);
        }
        return ExitCode::from(if rep.passed == rep.constructed { 0 } else { 1 });
    }
    let code = match RunConfig::from_cli(&cli) {
        Ok(cfg) => run_unfold(&cfg),
        Err(f) => {
            println!("{}", error_json(&f));
            eprintln!("loopfold: {}", f.message);
            f.exit
        }
    };
    ExitCode::from(code as u8)
}
