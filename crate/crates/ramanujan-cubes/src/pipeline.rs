//! Run configuration, the build → verify → spectra → verdict pipeline, and reports.
//!
//! A run is described by a JSON file:
//!
//! ```json
//! {"primes": [5, 13], "N1": "auto", "k": 2}
//! ```
//!
//! Optional keys: `out` (output directory), `tol` (eigenvalue tolerance,
//! default `1e-8`), `max_dim` (largest dense matrix, default `20000`),
//! `max_depth` (girth search depth, default `12`), `dot` (write the skeleton
//! as DOT, default `false`). Unknown keys are rejected.
//!
//! # Examples
//!
//! ```
//! use ramanujan_cubes::pipeline::{run, RunConfig, Stages};
//!
//! let cfg = RunConfig::from_json(r#"{"primes": [5], "N1": 7, "k": 0}"#).unwrap();
//! let out = run(&cfg, &Stages::all());
//! assert_eq!(out.exit_code, 0);
//! assert_eq!(out.report.ramanujan, Some(true));
//! ```

use std::collections::BTreeSet;
use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use crate::arith::{build_complex, irreducibility_report, search_n1, ArithComplex, ArithComplexConfig, ConnectivityEntry};
use crate::error::{Error, Result};
use crate::export::{skeleton_dot, spectrum_csv, SpectrumRow};
use crate::girth::{girth, GirthResult};
use crate::harmonic::{classify_ramanujan, Harmonic};
use crate::locsys::{build_symm_system, verify_flatness, LocalSystem};

/// Largest `N1` tried by the automatic search.
pub const AUTO_N1_LIMIT: u64 = 200;
pub const DEFAULT_TOL: f64 = 1e-8;
pub const DEFAULT_MAX_DIM: usize = 20000;
pub const DEFAULT_MAX_DEPTH: usize = 12;
/// Tolerance on unitarity and flatness residuals.
pub const STRUCTURE_TOL: f64 = 1e-12;
/// Relative tolerance for numerical ranks.
pub const RANK_TOL: f64 = 1e-8;

/// `N1` as given in the config: a prime or `"auto"`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Modulus {
    Fixed(u64),
    Auto(String),
}

/// A validated run configuration.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub primes: Vec<u64>,
    #[serde(rename = "N1")]
    pub n1: Modulus,
    #[serde(default)]
    pub k: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub tol: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_dim: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub max_depth: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub dot: Option<bool>,
}

impl RunConfig {
    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: RunConfig = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        if self.primes.is_empty() {
            return Err(Error::Config("at least one prime is required".into()));
        }
        let distinct: BTreeSet<u64> = self.primes.iter().copied().collect();
        if distinct.len() != self.primes.len() {
            return Err(Error::Config(format!("primes must be distinct: {:?}", self.primes)));
        }
        let n1 = match &self.n1 {
            Modulus::Fixed(n) => *n,
            Modulus::Auto(s) if s == "auto" => 3,
            Modulus::Auto(s) => return Err(Error::Config(format!("N1 must be a prime or \"auto\", got {s:?}"))),
        };
        ArithComplexConfig::new(self.primes.clone(), n1).validate().or_else(|e| match (&self.n1, e) {
            // the search skips moduli that collide with the primes
            (Modulus::Auto(_), Error::InvalidModulus { .. }) => Ok(()),
            (_, e) => Err(e),
        })?;
        if let Some(t) = self.tol {
            if !(t.is_finite() && t > 0.0) {
                return Err(Error::Config(format!("tol must be positive, got {t}")));
            }
        }
        Ok(())
    }

    pub fn tol(&self) -> f64 {
        self.tol.unwrap_or(DEFAULT_TOL)
    }

    pub fn max_dim(&self) -> usize {
        self.max_dim.unwrap_or(DEFAULT_MAX_DIM)
    }

    pub fn max_depth(&self) -> usize {
        self.max_depth.unwrap_or(DEFAULT_MAX_DEPTH)
    }

    /// Hex SHA-256 of the normalized JSON form.
    pub fn hash(&self) -> String {
        let text = serde_json::to_string(self).expect("config serializes");
        Sha256::digest(text.as_bytes()).iter().map(|b| format!("{b:02x}")).collect()
    }
}

/// Read and validate a config file.
pub fn parse_config(path: &Path) -> Result<RunConfig> {
    let text = fs::read_to_string(path).map_err(|e| Error::Config(format!("{}: {e}", path.display())))?;
    RunConfig::from_json(&text)
}

/// Which stages a run performs after building the complex.
#[derive(Clone, Copy, Debug, Default)]
pub struct Stages {
    pub verify: bool,
    pub spectrum: bool,
    pub cohomology: bool,
    pub girth: bool,
    pub dot: bool,
}

impl Stages {
    pub fn all() -> Self {
        Self { verify: true, spectrum: true, cohomology: true, girth: true, dot: false }
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Tool {
    pub name: &'static str,
    pub version: &'static str,
}

#[derive(Clone, Debug, Serialize)]
pub struct Tolerances {
    pub eigenvalue: f64,
    pub structure: f64,
    pub rank: f64,
    pub max_dim: usize,
    pub max_depth: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct CubeCount {
    pub dirs: usize,
    pub oriented: usize,
    pub unoriented: usize,
}

#[derive(Clone, Debug, Serialize)]
pub struct ComplexStats {
    pub primes: Vec<u64>,
    pub n1: u64,
    pub n1_searched: bool,
    pub g: usize,
    pub r: Vec<usize>,
    pub vertices: usize,
    pub group_order: usize,
    pub kernel_order: usize,
    pub cubes: Vec<CubeCount>,
    pub euler_characteristic: i64,
}

#[derive(Clone, Debug, Serialize)]
pub struct LocalSystemReport {
    pub k: u32,
    pub dim: usize,
    pub real_gauge: bool,
    pub unitarity_defect: f64,
    pub inverse_defect: f64,
    pub flatness_residual: f64,
    pub unitary: bool,
    pub flat: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct Verification {
    pub axioms: Vec<(String, bool)>,
    pub parities: bool,
    pub connectivity: Vec<ConnectivityEntry>,
    pub connected: bool,
    pub local_system: LocalSystemReport,
}

/// Summary of one star operator `S_{j,I}`.
#[derive(Clone, Debug, Serialize)]
pub struct SpectrumSummary {
    pub j: usize,
    pub dirs: usize,
    pub dimension: usize,
    pub r: usize,
    pub max: f64,
    pub min: f64,
    pub within_bounds: bool,
    pub plus_multiplicity: usize,
    pub minus_multiplicity: usize,
    pub link_components: usize,
    pub mu: f64,
    pub bound: f64,
    pub ramanujan: bool,
    pub spectral_gap: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct RunReport {
    pub tool: Tool,
    pub config_sha256: String,
    pub config: RunConfig,
    pub tolerances: Tolerances,
    /// `complete`, or the stage at which the run stopped.
    pub stage: String,
    pub error: Option<String>,
    pub complex: Option<ComplexStats>,
    pub verification: Option<Verification>,
    pub spectra: Vec<SpectrumSummary>,
    /// Conjunction of the per-`(j, I)` verdicts, when spectra were computed.
    pub ramanujan: Option<bool>,
    pub cohomology: Option<Vec<usize>>,
    pub girth: Option<GirthResult>,
}

/// Report, artifacts and exit code of a run.
pub struct RunOutcome {
    pub report: RunReport,
    pub spectrum_rows: Vec<SpectrumRow>,
    pub dot: Option<String>,
    pub exit_code: i32,
}

impl RunOutcome {
    /// Write `report.json`, and `spectrum.csv` / `complex.dot` when present.
    pub fn write(&self, dir: &Path) -> Result<()> {
        fs::create_dir_all(dir)?;
        let mut json = serde_json::to_string_pretty(&self.report)?;
        json.push('\n');
        fs::write(dir.join("report.json"), json)?;
        if !self.spectrum_rows.is_empty() {
            fs::write(dir.join("spectrum.csv"), spectrum_csv(&self.spectrum_rows))?;
        }
        if let Some(d) = &self.dot {
            fs::write(dir.join("complex.dot"), d)?;
        }
        Ok(())
    }
}

fn build(cfg: &RunConfig) -> Result<(ArithComplex, bool)> {
    match cfg.n1 {
        Modulus::Fixed(n) => Ok((build_complex(&ArithComplexConfig::new(cfg.primes.clone(), n))?, false)),
        Modulus::Auto(_) => Ok((search_n1(&cfg.primes, AUTO_N1_LIMIT)?, true)),
    }
}

fn local_system(x: &ArithComplex, k: u32) -> Result<LocalSystem> {
    if k == 0 {
        Ok(LocalSystem::trivial(&x.complex, 1))
    } else {
        build_symm_system(x, k)
    }
}

fn stats(x: &ArithComplex, searched: bool) -> ComplexStats {
    let c = &x.complex;
    let cubes: Vec<CubeCount> = (0..1usize << c.g())
        .map(|d| CubeCount { dirs: d, oriented: c.oriented_count(d), unoriented: c.unoriented_count(d) })
        .collect();
    let euler = cubes.iter().map(|cc| if cc.dirs.count_ones() % 2 == 0 { 1 } else { -1 } * cc.unoriented as i64).sum();
    ComplexStats {
        primes: x.config.primes.clone(),
        n1: x.config.n1,
        n1_searched: searched,
        g: c.g(),
        r: c.r().to_vec(),
        vertices: c.vertex_count(),
        group_order: x.group.h.len(),
        kernel_order: x.group.kernel_order(),
        cubes,
        euler_characteristic: euler,
    }
}

/// Run the requested stages. Failures stop the run with a partial report.
pub fn run(cfg: &RunConfig, stages: &Stages) -> RunOutcome {
    let report = RunReport {
        tool: Tool { name: env!("CARGO_PKG_NAME"), version: env!("CARGO_PKG_VERSION") },
        config_sha256: cfg.hash(),
        config: cfg.clone(),
        tolerances: Tolerances {
            eigenvalue: cfg.tol(),
            structure: STRUCTURE_TOL,
            rank: RANK_TOL,
            max_dim: cfg.max_dim(),
            max_depth: cfg.max_depth(),
        },
        stage: "config".into(),
        error: None,
        complex: None,
        verification: None,
        spectra: Vec::new(),
        ramanujan: None,
        cohomology: None,
        girth: None,
    };
    let mut out = RunOutcome { report, spectrum_rows: Vec::new(), dot: None, exit_code: 0 };
    if let Err(e) = cfg.validate() {
        return fail(out, e);
    }
    match stages_inner(cfg, stages, &mut out) {
        Ok(()) => {
            out.report.stage = "complete".into();
            let r = &out.report;
            let negative = r.ramanujan == Some(false)
                || r.verification.as_ref().is_some_and(|v| !(v.local_system.flat && v.local_system.unitary));
            if negative {
                out.exit_code = 4;
            }
            out
        }
        Err(e) => fail(out, e),
    }
}

fn fail(mut out: RunOutcome, e: Error) -> RunOutcome {
    out.exit_code = e.exit_code();
    out.report.error = Some(e.to_string());
    out
}

fn stages_inner(cfg: &RunConfig, stages: &Stages, out: &mut RunOutcome) -> Result<()> {
    let report = &mut out.report;
    report.stage = "build".into();
    let (x, searched) = build(cfg)?;
    report.complex = Some(stats(&x, searched));
    if stages.dot || cfg.dot == Some(true) {
        out.dot = Some(skeleton_dot(&x.complex, |v| x.vertex_label(v)));
    }
    let needs_system = stages.verify || stages.spectrum || stages.cohomology;
    if !needs_system && !stages.girth {
        return Ok(());
    }
    let c = &x.complex;
    let tol = cfg.tol();
    if needs_system {
        report.stage = "locsys".into();
        let l = local_system(&x, cfg.k)?;
        if stages.verify {
            report.stage = "verify".into();
            let axioms = c.verify_axioms();
            let connectivity = irreducibility_report(c)?;
            let flat = verify_flatness(c, &l);
            let (ud, id) = (l.unitarity_defect(), l.inverse_defect(c));
            report.verification = Some(Verification {
                axioms: axioms.checks.iter().map(|a| (a.name.to_string(), a.passed)).collect(),
                parities: c.verify_parities()?.holds,
                connected: connectivity.iter().all(|e| e.connected),
                connectivity,
                local_system: LocalSystemReport {
                    k: cfg.k,
                    dim: l.dim,
                    real_gauge: cfg.k > 0 && cfg.k % 2 == 0,
                    unitarity_defect: ud,
                    inverse_defect: id,
                    flatness_residual: flat.max_residual,
                    unitary: ud < STRUCTURE_TOL && id < STRUCTURE_TOL,
                    flat: flat.max_residual < STRUCTURE_TOL,
                },
            });
        }
        let h = Harmonic::new(c, &l);
        if stages.spectrum {
            report.stage = "spectrum".into();
            let mut all = true;
            for j in 0..c.g() {
                for dirs in (0..1usize << c.g()).filter(|d| d >> j & 1 == 0) {
                    let eigs = h.star_spectrum(j, dirs, cfg.max_dim())?;
                    let r = c.r()[j];
                    let v = classify_ramanujan(&eigs, r, tol);
                    let rf = r as f64;
                    let (max, min) = (eigs.first().copied().unwrap_or(0.0), eigs.last().copied().unwrap_or(0.0));
                    all &= v.ramanujan;
                    for (i, (&e, &cl)) in eigs.iter().zip(&v.classes).enumerate() {
                        out.spectrum_rows.push(SpectrumRow { j, dirs, index: i, eigenvalue: e, class: cl });
                    }
                    report.spectra.push(SpectrumSummary {
                        j,
                        dirs,
                        dimension: eigs.len(),
                        r,
                        max,
                        min,
                        within_bounds: max <= rf + 1e-10 && min >= -rf - 1e-10,
                        plus_multiplicity: v.plus_multiplicity,
                        minus_multiplicity: v.minus_multiplicity,
                        link_components: c.link_graph(j, dirs)?.components().count,
                        mu: v.mu,
                        bound: v.bound,
                        ramanujan: v.ramanujan,
                        spectral_gap: v.spectral_gap,
                    });
                }
            }
            report.ramanujan = Some(all);
        }
        if stages.cohomology {
            report.stage = "cohomology".into();
            let largest = (0..=c.g()).map(|i| h.level_dim(i)).max().unwrap_or(0);
            if largest <= cfg.max_dim() {
                report.cohomology = Some(h.cohomology_dims(RANK_TOL)?);
            }
        }
    }
    if stages.girth {
        report.stage = "girth".into();
        report.girth = Some(girth(&x, cfg.max_depth()));
    }
    Ok(())
}
