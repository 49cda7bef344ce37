//! Multistart Riemannian ascent maximizing `prod_i |<v_i, u>|` over the
//! unit sphere, and the depth bound check at the maximizer.
//!
//! The iteration works on the log-objective `sum_i ln |<v_i, u>|`: the
//! product becomes a sum, hyperplanes become -inf barriers so accepted
//! iterates never leave their chamber, and the gradient is well scaled.
//! Each restart is seeded independently by a fixed splitting rule, so
//! parallel and serial runs produce identical reports.

use alloc::vec::Vec;

use libm::{fabs, log, sin};

use crate::error::Error;
use crate::rng;
use crate::sphere::{self, Arrangement, UnitVector};
use crate::Result;

/// Iterates with any `|<v_i, u>|` at or below this are treated as lying
/// on a hyperplane (objective 0, gradient undefined).
pub const ON_HYPERPLANE_TOL: f64 = 1e-14;

/// Multistart draws this close to a hyperplane are redrawn.
pub const START_REJECT_TOL: f64 = 1e-10;

/// Default convergence threshold on the Riemannian gradient norm; the
/// double-precision plateau of the log-objective.
pub const DEFAULT_GRAD_TOL: f64 = 1e-9;

/// Default tolerance for [`check_theorem`].
pub const DEFAULT_THEOREM_TOL: f64 = 1e-7;

/// Step-size selection for the ascent iteration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum StepRule {
    Fixed { step: f64 },
    /// Armijo backtracking: initial step 1.0, halving on rejection.
    Backtracking,
}

#[derive(Clone, Debug)]
pub struct SolverConfig {
    pub restarts: usize,
    pub max_iters: usize,
    pub grad_tol: f64,
    pub step_rule: StepRule,
    pub seed: u64,
}

impl SolverConfig {
    /// Default configuration with the restart count scaled to the
    /// arrangement: `max(64, 8n)` chambers-worth of starts.
    pub fn for_arrangement(arr: &Arrangement, seed: u64) -> Self {
        SolverConfig {
            restarts: default_restarts(arr.len()),
            seed,
            ..SolverConfig::default()
        }
    }
}

pub fn default_restarts(n: usize) -> usize {
    64.max(8 * n)
}

impl Default for SolverConfig {
    fn default() -> Self {
        SolverConfig {
            restarts: 64,
            max_iters: 1000,
            grad_tol: DEFAULT_GRAD_TOL,
            step_rule: StepRule::Backtracking,
            seed: 0,
        }
    }
}

/// Outcome of a solve: the best point found across restarts together
/// with the quantities entering the depth bound.
#[derive(Clone, Debug)]
pub struct SolveReport {
    pub u_star: UnitVector,
    /// `prod_i |<v_i, u*>|`.
    pub objective: f64,
    /// Signed inner products `<v_i, u*>` in normal order.
    pub inner_products: Vec<f64>,
    pub min_abs_inner: f64,
    /// `sin(pi / 2n)`.
    pub bound: f64,
    /// `min_abs_inner - bound`; the theorem asserts this is >= 0 at a
    /// global maximizer.
    pub margin: f64,
    pub restarts_used: usize,
    pub grad_norm: f64,
    pub converged: bool,
}

/// `prod_i |<v_i, u>|`, in `[0, 1]`.
pub fn objective(arr: &Arrangement, u: &UnitVector) -> Result<f64> {
    let inner = arr.inner_products(u)?;
    Ok(inner.iter().map(|c| fabs(*c)).product())
}

/// `sum_i ln |<v_i, u>|`, or `None` when `u` is on a hyperplane.
/// Assumes dimensions already match.
fn log_objective(arr: &Arrangement, u: &UnitVector) -> Option<f64> {
    let mut prod = 1.0f64;
    for v in arr.normals() {
        let c = v.dot(u);
        if fabs(c) <= ON_HYPERPLANE_TOL {
            return None;
        }
        prod *= c;
    }
    Some(log(fabs(prod)))
}

/// Riemannian gradient of the log-objective at `u`:
/// the tangential part of `sum_i v_i / <v_i, u>`.
pub fn log_objective_gradient(arr: &Arrangement, u: &UnitVector) -> Result<Vec<f64>> {
    let inner = arr.inner_products(u)?;
    let d = arr.dim();
    let mut g = alloc::vec![0.0f64; d];
    for (i, (v, c)) in arr.normals().iter().zip(&inner).enumerate() {
        if fabs(*c) <= ON_HYPERPLANE_TOL {
            return Err(Error::OnHyperplane { index: i });
        }
        for (gj, vj) in g.iter_mut().zip(v.coords()) {
            *gj += vj / c;
        }
    }
    Ok(sphere::tangent_part(&g, u))
}

struct StartOutcome {
    u: UnitVector,
    objective: f64,
    grad_norm: f64,
    converged: bool,
}

fn run_start(arr: &Arrangement, cfg: &SolverConfig, sub_seed: u64) -> Option<StartOutcome> {
    let mut rng = rng::stream(sub_seed);
    let mut u = None;
    for _ in 0..1000 {
        let cand = sphere::random_unit_vector(arr.dim(), &mut rng);
        let ok = arr
            .normals()
            .iter()
            .all(|v| fabs(v.dot(&cand)) > START_REJECT_TOL);
        if ok {
            u = Some(cand);
            break;
        }
    }
    let mut u = u?;
    let mut value = log_objective(arr, &u).expect("start is off all hyperplanes");
    let mut converged = false;
    let mut grad_norm = f64::INFINITY;
    let mut prev: Option<(Vec<f64>, Vec<f64>)> = None;

    for _ in 0..cfg.max_iters {
        let g = match log_objective_gradient(arr, &u) {
            Ok(g) => g,
            Err(_) => break,
        };
        grad_norm = sphere::norm(&g);
        if grad_norm <= cfg.grad_tol {
            converged = true;
            break;
        }
        // Barzilai-Borwein initial step: <s,s>/<s,y> estimates an inverse
        // curvature, which keeps the ascent usable on ill-conditioned
        // instances where a unit initial step backtracks forever.
        let t_init = match &prev {
            Some((pu, pg)) => {
                let s: Vec<f64> = u.coords().iter().zip(pu).map(|(a, b)| a - b).collect();
                let y: Vec<f64> = pg.iter().zip(&g).map(|(a, b)| a - b).collect();
                let sy = sphere::dot(&s, &y);
                if sy > 1e-300 {
                    (sphere::dot(&s, &s) / sy).clamp(1e-12, 1e6)
                } else {
                    1.0
                }
            }
            None => 1.0,
        };
        prev = Some((u.coords().to_vec(), g.clone()));
        let stepped = |t: f64| -> Option<(UnitVector, f64)> {
            let moved: Vec<f64> = u.coords().iter().zip(&g).map(|(ui, gi)| ui + t * gi).collect();
            let cand = UnitVector::new(moved).ok()?;
            let v = log_objective(arr, &cand)?;
            Some((cand, v))
        };
        match cfg.step_rule {
            StepRule::Fixed { step } => match stepped(step) {
                Some((cand, v)) => {
                    u = cand;
                    value = v;
                }
                None => break, // would land on a hyperplane; stop
            },
            StepRule::Backtracking => {
                let gsq = grad_norm * grad_norm;
                let mut next = None;
                let mut t = t_init;
                while t >= 1e-20 {
                    if let Some((cand, v)) = stepped(t) {
                        // strict improvement, or the sufficient-decrease test
                        // degenerates to accepting no-op steps at the plateau
                        if v > value && v >= value + 1e-4 * t * gsq {
                            next = Some((cand, v));
                            break;
                        }
                    }
                    t *= 0.5;
                }
                if next.is_none() {
                    // The objective has hit its double-precision plateau:
                    // predicted Armijo gains fall below one ulp of the value.
                    // Keep polishing by gradient-norm descent, which stays
                    // meaningful down to the gradient's own float floor.
                    let mut t = t_init;
                    while t >= 1e-20 {
                        if let Some((cand, v)) = stepped(t) {
                            if v >= value - 1e-12 {
                                if let Ok(gc) = log_objective_gradient(arr, &cand) {
                                    if sphere::norm(&gc) < grad_norm {
                                        next = Some((cand, v));
                                        break;
                                    }
                                }
                            }
                        }
                        t *= 0.5;
                    }
                }
                match next {
                    Some((cand, v)) => {
                        u = cand;
                        value = v;
                    }
                    None => break, // no useful step exists at float resolution
                }
            }
        }
    }
    if !converged {
        if let Ok(g) = log_objective_gradient(arr, &u) {
            grad_norm = sphere::norm(&g);
            converged = grad_norm <= cfg.grad_tol;
        }
    }
    let objective = arr
        .inner_products(&u)
        .expect("dims match")
        .iter()
        .map(|c| fabs(*c))
        .product();
    Some(StartOutcome {
        u,
        objective,
        grad_norm,
        converged,
    })
}

/// Multistart ascent. Deterministic for a fixed `cfg.seed` and
/// `cfg.restarts`, independent of execution order: each restart gets a
/// sub-seed from a fixed splitting rule, and ties across restarts go to
/// the lowest restart index.
pub fn solve(arr: &Arrangement, cfg: &SolverConfig) -> Result<SolveReport> {
    assert!(cfg.restarts >= 1 && cfg.max_iters >= 1 && cfg.grad_tol > 0.0);
    let outcomes = run_all_starts(arr, cfg);

    let mut best: Option<StartOutcome> = None;
    for out in outcomes.into_iter().flatten() {
        let better = match &best {
            None => true,
            // strict improvement only: equal objectives keep the earlier index
            Some(b) => out.objective > b.objective,
        };
        if better {
            best = Some(out);
        }
    }
    let best = best.ok_or(Error::NoValidStart)?;

    let n = arr.len();
    let inner_products = arr.inner_products(&best.u)?;
    let min_abs_inner = inner_products
        .iter()
        .map(|c| fabs(*c))
        .fold(f64::INFINITY, f64::min);
    let bound = sin(core::f64::consts::PI / (2.0 * n as f64));
    Ok(SolveReport {
        objective: best.objective,
        inner_products,
        min_abs_inner,
        bound,
        margin: min_abs_inner - bound,
        restarts_used: cfg.restarts,
        grad_norm: best.grad_norm,
        converged: best.converged,
        u_star: best.u,
    })
}

#[cfg(not(feature = "parallel"))]
fn run_all_starts(arr: &Arrangement, cfg: &SolverConfig) -> Vec<Option<StartOutcome>> {
    (0..cfg.restarts)
        .map(|i| run_start(arr, cfg, rng::split_seed(cfg.seed, i as u64)))
        .collect()
}

#[cfg(feature = "parallel")]
fn run_all_starts(arr: &Arrangement, cfg: &SolverConfig) -> Vec<Option<StartOutcome>> {
    use rayon::prelude::*;
    (0..cfg.restarts)
        .into_par_iter()
        .map(|i| run_start(arr, cfg, rng::split_seed(cfg.seed, i as u64)))
        .collect()
}

/// True iff the report's margin clears `-tol`: the solved point satisfies
/// `min_i |<v_i, u*>| >= sin(pi/2n) - tol`.
///
/// A `false` with `converged` set means either a local (non-global)
/// maximum or a genuine counterexample; a `false` without convergence
/// says nothing.
pub fn check_theorem(report: &SolveReport, tol: f64) -> bool {
    report.margin >= -tol
}
