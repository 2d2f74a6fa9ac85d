//! Command-line driver: build arithmetic cube complexes, verify them and
//! certify their spectra.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use ramanujan_cubes::pipeline::{parse_config, run, RunOutcome, Stages};

#[derive(Parser)]
#[command(name = "ramcube", version, about = "Ramanujan cube complexes from quaternion arithmetic")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build the complex and report its cube counts.
    Build(Common),
    /// Check axioms, parities, connectivity, flatness and unitarity.
    Verify(Common),
    /// Compute every star spectrum and write spectrum.csv.
    Spectrum(Common),
    /// Spectra plus the Ramanujan verdict; exits 4 when it fails.
    Ramanujan(Common),
    /// Girth of the 1-skeleton against the arithmetic lower bound.
    Girth(Common),
    /// Cohomology dimensions with coefficients in the local system.
    Cohomology(Common),
    /// Write the 1-skeleton as complex.dot.
    ExportDot(Common),
    /// Run every stage and write all artifacts.
    Report(Common),
}

#[derive(Args)]
struct Common {
    /// JSON run configuration.
    #[arg(long)]
    config: PathBuf,
    /// Output directory (overrides the config).
    #[arg(long)]
    out: Option<PathBuf>,
    /// Eigenvalue tolerance.
    #[arg(long)]
    tol: Option<f64>,
    /// Largest matrix dimension handled densely.
    #[arg(long)]
    max_dim: Option<usize>,
    /// Depth limit of the girth search.
    #[arg(long)]
    max_depth: Option<usize>,
}

fn stages(cmd: &Command) -> Stages {
    let none = Stages::default();
    match cmd {
        Command::Build(_) => none,
        Command::Verify(_) => Stages { verify: true, ..none },
        Command::Spectrum(_) | Command::Ramanujan(_) => Stages { spectrum: true, ..none },
        Command::Girth(_) => Stages { girth: true, ..none },
        Command::Cohomology(_) => Stages { cohomology: true, ..none },
        Command::ExportDot(_) => Stages { dot: true, ..none },
        Command::Report(_) => Stages::all(),
    }
}

fn summary(out: &RunOutcome) {
    let r = &out.report;
    if let Some(c) = &r.complex {
        let cubes: Vec<String> = c.cubes.iter().map(|cc| format!("{}:{}", cc.dirs, cc.unoriented)).collect();
        println!("complex: primes {:?}, N1 {}, r {:?}, cubes {}", c.primes, c.n1, c.r, cubes.join(" "));
    }
    if let Some(v) = &r.verification {
        let axioms = v.axioms.iter().all(|a| a.1);
        let l = &v.local_system;
        println!(
            "verify: axioms {axioms}, parities {}, connected {}, flat {} ({:.1e}), unitary {} ({:.1e})",
            v.parities, v.connected, l.flat, l.flatness_residual, l.unitary, l.unitarity_defect
        );
    }
    for s in &r.spectra {
        println!(
            "spectrum j={} I={:#b}: dim {}, +r x{}, -r x{}, mu {:.6} <= {:.6}: {}",
            s.j, s.dirs, s.dimension, s.plus_multiplicity, s.minus_multiplicity, s.mu, s.bound, s.ramanujan
        );
    }
    if let Some(ok) = r.ramanujan {
        println!("ramanujan: {ok}");
    }
    if let Some(h) = &r.cohomology {
        println!("cohomology: {h:?}");
    }
    if let Some(g) = &r.girth {
        match g.girth {
            Some(v) => println!("girth: {v} (bound {})", g.bound),
            None => println!("girth: > {} (bound {}, depth {})", g.lower_bound - 1, g.bound, g.depth),
        }
    }
    if let Some(e) = &r.error {
        eprintln!("error at stage {}: {e}", r.stage);
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let stages = stages(&cli.command);
    let (Command::Build(c)
    | Command::Verify(c)
    | Command::Spectrum(c)
    | Command::Ramanujan(c)
    | Command::Girth(c)
    | Command::Cohomology(c)
    | Command::ExportDot(c)
    | Command::Report(c)) = &cli.command;
    let mut cfg = match parse_config(&c.config) {
        Ok(cfg) => cfg,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    cfg.tol = c.tol.or(cfg.tol);
    cfg.max_dim = c.max_dim.or(cfg.max_dim);
    cfg.max_depth = c.max_depth.or(cfg.max_depth);
    let dir = c.out.clone().or_else(|| cfg.out.clone()).unwrap_or_else(|| PathBuf::from("."));
    let out = run(&cfg, &stages);
    summary(&out);
    if let Err(e) = out.write(&dir) {
        eprintln!("error: {e}");
        return ExitCode::from(5);
    }
    ExitCode::from(out.exit_code as u8)
}
