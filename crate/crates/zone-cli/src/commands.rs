//! Command implementations.
//!
//! Each `run_*` function is pure text-to-text: it takes parsed
//! arguments (file contents already read), and returns the output
//! document plus the process exit code. `main` only does argument
//! parsing and file IO, so the whole surface stays testable in-process
//! and reruns with the same manifest are byte-identical.

use std::fmt::Write as _;

use zone_core::coverage::{self, GridCertificate};
use zone_core::prooflab;
use zone_core::solver::{self, SolverConfig};
use zone_core::sphere::{apple_peel, normalize, random_arrangement, Arrangement, ZoneSet};

use crate::format::{fmt_f64, fmt_row, parse_arrangement, write_arrangement, ArrangementFile};

pub const EXIT_OK: i32 = 0;
/// Unreadable or malformed input.
pub const EXIT_INPUT: i32 = 2;
/// Converged maximizer violating the depth bound: a flagged anomaly.
pub const EXIT_VIOLATION: i32 = 3;
/// Solver failed to reach the gradient tolerance.
pub const EXIT_NOT_CONVERGED: i32 = 4;

const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum OutFormat {
    #[default]
    Text,
    Csv,
}

impl core::fmt::Display for OutFormat {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        f.write_str(match self {
            OutFormat::Text => "text",
            OutFormat::Csv => "csv",
        })
    }
}

/// A finished command: the document to emit and the exit code.
pub struct Outcome {
    pub text: String,
    pub exit: i32,
}

/// One `# manifest:` line naming the command, its inputs, every
/// tolerance, and the version; embedded verbatim in all outputs.
fn manifest_line(command: &str, fields: &[(&str, String)]) -> String {
    let mut line = format!("# manifest: command={command}");
    for (k, v) in fields {
        let _ = write!(line, " {k}={v}");
    }
    let _ = write!(line, " version={VERSION}");
    line
}

#[derive(Clone, Debug)]
pub enum GenSpec {
    ApplePeel { n: usize },
    Random { d: usize, n: usize, seed: u64 },
}

impl GenSpec {
    fn describe(&self) -> String {
        match self {
            GenSpec::ApplePeel { n } => format!("apple-peel/{n}"),
            GenSpec::Random { d, n, seed } => format!("random/{d}/{n}/{seed}"),
        }
    }
}

pub fn run_gen(spec: &GenSpec) -> Result<Outcome, String> {
    let arr = match spec {
        GenSpec::ApplePeel { n } => apple_peel(*n),
        GenSpec::Random { d, n, seed } => random_arrangement(*d, *n, *seed),
    }
    .map_err(|e| e.to_string())?;
    let manifest = manifest_line("gen", &[("spec", spec.describe())]);
    let text = format!("{manifest}\n{}", write_arrangement(&arr, None));
    Ok(Outcome {
        text,
        exit: EXIT_OK,
    })
}

#[derive(Clone, Debug)]
pub struct SolveArgs {
    pub input_name: String,
    pub input_text: String,
    pub seed: u64,
    pub restarts: Option<usize>,
    pub grad_tol: f64,
    pub format: OutFormat,
}

fn solve_config(arr: &Arrangement, seed: u64, restarts: Option<usize>, grad_tol: f64) -> SolverConfig {
    let mut cfg = SolverConfig::for_arrangement(arr, seed);
    if let Some(r) = restarts {
        cfg.restarts = r;
    }
    cfg.grad_tol = grad_tol;
    cfg.max_iters = 3000;
    cfg
}

fn solve_exit(report: &solver::SolveReport) -> i32 {
    if !report.converged {
        EXIT_NOT_CONVERGED
    } else if solver::check_theorem(report, solver::DEFAULT_THEOREM_TOL) {
        EXIT_OK
    } else {
        EXIT_VIOLATION
    }
}

pub fn run_solve(args: &SolveArgs) -> Result<Outcome, String> {
    if args.grad_tol <= 0.0 {
        return Err(format!("grad_tol must be positive, got {}", args.grad_tol));
    }
    let file = parse_arrangement(&args.input_text)?;
    let arr = &file.arrangement;
    let cfg = solve_config(arr, args.seed, args.restarts, args.grad_tol);
    let report = solver::solve(arr, &cfg).map_err(|e| e.to_string())?;

    let manifest = manifest_line(
        "solve",
        &[
            ("input", args.input_name.clone()),
            ("seed", args.seed.to_string()),
            ("restarts", cfg.restarts.to_string()),
            ("grad_tol", fmt_f64(cfg.grad_tol)),
            ("format", args.format.to_string()),
        ],
    );
    let holds = solver::check_theorem(&report, solver::DEFAULT_THEOREM_TOL);
    let mut out = String::new();
    match args.format {
        OutFormat::Text => {
            let _ = writeln!(out, "{manifest}");
            let _ = writeln!(out, "u_star: {}", fmt_row(report.u_star.coords()));
            let _ = writeln!(out, "objective: {}", fmt_f64(report.objective));
            let _ = writeln!(out, "inner_products: {}", fmt_row(&report.inner_products));
            let _ = writeln!(out, "min_abs_inner: {}", fmt_f64(report.min_abs_inner));
            let _ = writeln!(out, "bound: {}", fmt_f64(report.bound));
            let _ = writeln!(out, "margin: {}", fmt_f64(report.margin));
            let _ = writeln!(out, "restarts_used: {}", report.restarts_used);
            let _ = writeln!(out, "grad_norm: {}", fmt_f64(report.grad_norm));
            let _ = writeln!(out, "converged: {}", report.converged);
            let _ = writeln!(out, "theorem_holds: {holds}");
        }
        OutFormat::Csv => {
            let _ = writeln!(out, "{manifest}");
            let _ = writeln!(
                out,
                "objective,min_abs_inner,bound,margin,grad_norm,converged,theorem_holds"
            );
            let _ = writeln!(
                out,
                "{},{},{},{},{},{},{}",
                fmt_f64(report.objective),
                fmt_f64(report.min_abs_inner),
                fmt_f64(report.bound),
                fmt_f64(report.margin),
                fmt_f64(report.grad_norm),
                report.converged,
                holds
            );
        }
    }
    Ok(Outcome {
        text: out,
        exit: solve_exit(&report),
    })
}

#[derive(Clone, Debug)]
pub struct DeepestArgs {
    pub input_name: String,
    pub input_text: String,
    pub mesh: f64,
    /// Sample budget for the uncertified method used when `d >= 4`.
    pub samples: usize,
    pub seed: u64,
    pub format: OutFormat,
}

/// The certificate matching a dimension: exact-mesh circle grid on S^1,
/// Fibonacci lattice on S^2, uncertified sampling above.
fn certificate_for(dim: usize, mesh: f64, samples: usize, seed: u64) -> GridCertificate {
    match dim {
        2 => GridCertificate::uniform_circle_s1_target_mesh(mesh),
        3 => GridCertificate::fibonacci_s2_target_mesh(mesh),
        _ => GridCertificate::heuristic(samples, seed),
    }
}

pub fn run_deepest(args: &DeepestArgs) -> Result<Outcome, String> {
    if args.mesh <= 0.0 {
        return Err(format!("mesh must be positive, got {}", args.mesh));
    }
    let file = parse_arrangement(&args.input_text)?;
    let arr = &file.arrangement;
    let cert = certificate_for(arr.dim(), args.mesh, args.samples, args.seed);
    let report = coverage::covering_radius(arr, &cert).map_err(|e| e.to_string())?;
    let exact = if arr.dim() == 2 {
        Some(coverage::covering_radius_2d_exact(arr).map_err(|e| e.to_string())?)
    } else {
        None
    };

    let manifest = manifest_line(
        "deepest",
        &[
            ("input", args.input_name.clone()),
            ("mesh", fmt_f64(args.mesh)),
            ("samples", args.samples.to_string()),
            ("seed", args.seed.to_string()),
            ("format", args.format.to_string()),
        ],
    );
    let mut out = String::new();
    match args.format {
        OutFormat::Text => {
            let _ = writeln!(out, "{manifest}");
            let _ = writeln!(out, "method: {:?}", cert.method);
            let _ = writeln!(out, "sample_count: {}", cert.sample_count);
            let _ = writeln!(out, "grid_mesh: {}", fmt_f64(cert.mesh));
            let _ = writeln!(out, "radius_lo: {}", fmt_f64(report.lo));
            let _ = writeln!(out, "radius_hi: {}", fmt_f64(report.hi));
            let _ = writeln!(out, "certified: {}", report.certified);
            let _ = writeln!(out, "deepest: {}", fmt_row(report.deepest.coords()));
            if let Some(x) = exact {
                let _ = writeln!(out, "radius_exact: {}", fmt_f64(x));
            }
        }
        OutFormat::Csv => {
            let _ = writeln!(out, "{manifest}");
            let _ = writeln!(out, "radius_lo,radius_hi,certified");
            let _ = writeln!(
                out,
                "{},{},{}",
                fmt_f64(report.lo),
                fmt_f64(report.hi),
                report.certified
            );
        }
    }
    Ok(Outcome {
        text: out,
        exit: EXIT_OK,
    })
}

#[derive(Clone, Debug)]
pub struct CoverArgs {
    pub input_name: String,
    pub input_text: String,
    /// Equal half-width override when the file carries none.
    pub half_width: Option<f64>,
    pub mesh: f64,
    pub samples: usize,
    pub seed: u64,
    pub format: OutFormat,
}

fn zone_set_from(file: &ArrangementFile, half_width: Option<f64>) -> Result<ZoneSet, String> {
    match (&file.half_widths, half_width) {
        (_, Some(hw)) => ZoneSet::equal_widths(file.arrangement.clone(), hw),
        (Some(hws), None) => ZoneSet::new(file.arrangement.clone(), hws.clone()),
        (None, None) => {
            return Err("no half_widths in file and no --half-width given".into());
        }
    }
    .map_err(|e| e.to_string())
}

pub fn run_cover(args: &CoverArgs) -> Result<Outcome, String> {
    if args.mesh <= 0.0 {
        return Err(format!("mesh must be positive, got {}", args.mesh));
    }
    let file = parse_arrangement(&args.input_text)?;
    let zones = zone_set_from(&file, args.half_width)?;
    let cert = certificate_for(zones.arrangement().dim(), args.mesh, args.samples, args.seed);
    let report = coverage::zones_cover(&zones, &cert).map_err(|e| e.to_string())?;

    let manifest = manifest_line(
        "cover",
        &[
            ("input", args.input_name.clone()),
            (
                "half_width",
                args.half_width.map(fmt_f64).unwrap_or_else(|| "file".into()),
            ),
            ("mesh", fmt_f64(args.mesh)),
            ("samples", args.samples.to_string()),
            ("seed", args.seed.to_string()),
            ("format", args.format.to_string()),
        ],
    );
    let mut out = String::new();
    let _ = writeln!(out, "{manifest}");
    match args.format {
        OutFormat::Text => {
            let _ = writeln!(out, "covers: {}", report.covers);
            let _ = writeln!(
                out,
                "covering_radius_lo: {}",
                fmt_f64(report.covering_radius_lo)
            );
            let _ = writeln!(
                out,
                "covering_radius_hi: {}",
                fmt_f64(report.covering_radius_hi)
            );
            match &report.witness {
                Some(w) => {
                    let _ = writeln!(out, "witness: {}", fmt_row(w.coords()));
                }
                None => {
                    let _ = writeln!(out, "witness: none");
                }
            }
        }
        OutFormat::Csv => {
            let _ = writeln!(out, "covers,covering_radius_lo,covering_radius_hi");
            let _ = writeln!(
                out,
                "{},{},{}",
                report.covers,
                fmt_f64(report.covering_radius_lo),
                fmt_f64(report.covering_radius_hi)
            );
        }
    }
    Ok(Outcome {
        text: out,
        exit: EXIT_OK,
    })
}

#[derive(Clone, Debug)]
pub struct CertifyArgs {
    pub input_name: String,
    pub input_text: String,
    /// Evaluation point; solved for when absent.
    pub at: Option<Vec<f64>>,
    pub seed: u64,
    pub restarts: Option<usize>,
    pub grad_tol: f64,
    pub plot_count: usize,
    pub format: OutFormat,
}

pub fn run_certify(args: &CertifyArgs) -> Result<Outcome, String> {
    if args.grad_tol <= 0.0 {
        return Err(format!("grad_tol must be positive, got {}", args.grad_tol));
    }
    if args.plot_count == 0 {
        return Err("plot sample count must be positive".into());
    }
    let file = parse_arrangement(&args.input_text)?;
    let arr = &file.arrangement;

    let (u, solve_code) = match &args.at {
        Some(coords) => {
            if coords.len() != arr.dim() {
                return Err(format!(
                    "evaluation point has {} coordinates, arrangement dim is {}",
                    coords.len(),
                    arr.dim()
                ));
            }
            let u = normalize(coords).map_err(|e| e.to_string())?;
            (u, EXIT_OK)
        }
        None => {
            let cfg = solve_config(arr, args.seed, args.restarts, args.grad_tol);
            let report = solver::solve(arr, &cfg).map_err(|e| e.to_string())?;
            let code = solve_exit(&report);
            (report.u_star, code)
        }
    };

    let trace = prooflab::build_trace(arr, &u).map_err(|e| e.to_string())?;
    let samples =
        prooflab::plot_samples(arr, &u, &trace.w, args.plot_count).map_err(|e| e.to_string())?;

    let manifest = manifest_line(
        "certify",
        &[
            ("input", args.input_name.clone()),
            (
                "at",
                args.at
                    .as_ref()
                    .map(|c| fmt_row(c))
                    .unwrap_or_else(|| "solved".into()),
            ),
            ("seed", args.seed.to_string()),
            ("grad_tol", fmt_f64(args.grad_tol)),
            ("plot_count", args.plot_count.to_string()),
            ("format", args.format.to_string()),
        ],
    );
    let prefix = match args.format {
        OutFormat::Text => "",
        OutFormat::Csv => "# ",
    };
    let mut out = String::new();
    let _ = writeln!(out, "{manifest}");
    let _ = writeln!(out, "{prefix}u: {}", fmt_row(trace.u.coords()));
    let _ = writeln!(out, "{prefix}w: {}", fmt_row(&trace.w));
    let _ = writeln!(out, "{prefix}alpha: {}", fmt_f64(trace.alpha));
    match trace.violating_index {
        Some(i) => {
            let _ = writeln!(out, "{prefix}violating_index: {i}");
        }
        None => {
            let _ = writeln!(out, "{prefix}violating_index: none");
        }
    }
    let _ = writeln!(out, "{prefix}f_degree: {}", trace.f.degree());
    let _ = writeln!(out, "{prefix}f_cos_coeffs: {}", fmt_row(&trace.f.cos_coeffs));
    let _ = writeln!(out, "{prefix}f_sin_coeffs: {}", fmt_row(&trace.f.sin_coeffs));
    let _ = writeln!(out, "{prefix}f_fit_residual: {}", fmt_f64(trace.f_fit_residual));
    let _ = writeln!(out, "{prefix}g_sign_changes: {}", trace.g_sign_changes);
    for t in &trace.tangencies {
        let _ = writeln!(
            out,
            "{prefix}tangency: {} {} {}",
            fmt_f64(t.theta),
            fmt_f64(t.value),
            fmt_f64(t.derivative)
        );
    }
    let _ = writeln!(
        out,
        "{prefix}identity_residual: {}",
        fmt_f64(trace.identity_residual)
    );
    match trace.psi2_residual {
        Some(r) => {
            let _ = writeln!(out, "{prefix}psi2_residual: {}", fmt_f64(r));
        }
        None => {
            let _ = writeln!(out, "{prefix}psi2_residual: none");
        }
    }
    let _ = writeln!(out, "{prefix}plot:");
    let _ = writeln!(out, "theta,f,cos_n_theta");
    for (theta, f, c) in &samples {
        let _ = writeln!(out, "{},{},{}", fmt_f64(*theta), fmt_f64(*f), fmt_f64(*c));
    }
    Ok(Outcome {
        text: out,
        exit: solve_code,
    })
}

#[derive(Clone, Debug)]
pub struct SweepArgs {
    pub dims: Vec<usize>,
    pub ns: Vec<usize>,
    pub seeds: Vec<u64>,
    /// `random` draws one arrangement per (d, n, seed); `apple-peel`
    /// uses the evenly spaced family (d = 3, seed only drives restarts).
    pub apple_peel: bool,
    pub mesh: f64,
    pub samples: usize,
    pub grad_tol: f64,
    pub restarts: Option<usize>,
}

pub const SWEEP_COLUMNS: &str =
    "d,n,seed,objective,min_abs_inner,bound,margin,converged,radius_lo,radius_hi,radius_certified";

pub fn run_sweep(args: &SweepArgs) -> Result<Outcome, String> {
    if args.dims.is_empty() || args.ns.is_empty() || args.seeds.is_empty() {
        return Err("sweep needs nonempty dims, ns, and seeds".into());
    }
    if args.mesh <= 0.0 || args.grad_tol <= 0.0 {
        return Err("tolerances must be positive".into());
    }
    if args.apple_peel && args.dims != [3] {
        return Err("apple-peel sweeps are 3-dimensional; pass --dims 3".into());
    }

    let manifest = manifest_line(
        "sweep",
        &[
            (
                "dims",
                args.dims
                    .iter()
                    .map(|d| d.to_string())
                    .collect::<Vec<_>>()
                    .join("/"),
            ),
            (
                "ns",
                args.ns
                    .iter()
                    .map(|n| n.to_string())
                    .collect::<Vec<_>>()
                    .join("/"),
            ),
            (
                "seeds",
                args.seeds
                    .iter()
                    .map(|s| s.to_string())
                    .collect::<Vec<_>>()
                    .join("/"),
            ),
            (
                "family",
                if args.apple_peel { "apple-peel" } else { "random" }.to_string(),
            ),
            ("mesh", fmt_f64(args.mesh)),
            ("samples", args.samples.to_string()),
            ("grad_tol", fmt_f64(args.grad_tol)),
        ],
    );
    let mut out = String::new();
    let _ = writeln!(out, "{manifest}");
    let _ = writeln!(out, "# sweep table v1; columns: {SWEEP_COLUMNS}");
    let _ = writeln!(out, "{SWEEP_COLUMNS}");

    // one certificate per dimension, shared across rows: the sample
    // grid and its mesh depend only on d
    let mut worst_exit = EXIT_OK;
    for &d in &args.dims {
        let cert = certificate_for(d, args.mesh, args.samples, 0);
        for &n in &args.ns {
            for &seed in &args.seeds {
                let arr = if args.apple_peel {
                    apple_peel(n)
                } else {
                    random_arrangement(d, n, seed)
                }
                .map_err(|e| e.to_string())?;
                let cfg = solve_config(&arr, seed, args.restarts, args.grad_tol);
                let report = solver::solve(&arr, &cfg).map_err(|e| e.to_string())?;
                let radius = coverage::covering_radius(&arr, &cert).map_err(|e| e.to_string())?;
                let _ = writeln!(
                    out,
                    "{d},{n},{seed},{},{},{},{},{},{},{},{}",
                    fmt_f64(report.objective),
                    fmt_f64(report.min_abs_inner),
                    fmt_f64(report.bound),
                    fmt_f64(report.margin),
                    report.converged,
                    fmt_f64(radius.lo),
                    fmt_f64(radius.hi),
                    radius.certified
                );
                let exit = solve_exit(&report);
                if exit != EXIT_OK && worst_exit == EXIT_OK {
                    worst_exit = exit;
                }
                if exit == EXIT_VIOLATION {
                    worst_exit = EXIT_VIOLATION;
                }
            }
        }
    }
    Ok(Outcome {
        text: out,
        exit: worst_exit,
    })
}
