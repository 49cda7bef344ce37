//! Numerical diagnostics for the depth bound's trigonometric-polynomial
//! argument.
//!
//! For a point `u` off all hyperplanes and a tangent `w`, the curve
//! `u_theta = cos(theta) u + sin(theta) w` turns the product objective
//! into the ratio
//!
//! ```text
//! f(theta) = prod_i <v_i, u_theta> / <v_i, u>
//! ```
//!
//! which is a trigonometric polynomial of degree at most `n` with
//! `f(0) = 1` and `f(theta + pi) = (-1)^n f(theta)`. This module
//! materializes the objects around `f`: the shortened tangent `w` that
//! forces a zero at `theta = pi/2n` when the depth bound is violated,
//! Fourier fitting of `f`, the critical identity
//! `f'(0) = sum_i <v_i, w>/<v_i, u>`, the factorization
//! `f - cos(n theta) = sin^2(theta) psi_2(theta)` with `deg psi_2 <= n-2`,
//! and sign-change counts of `f - cos(n theta)`.

use alloc::vec;
use alloc::vec::Vec;

use libm::{asin, cos, fabs, sin, tan};

use crate::error::Error;
use crate::solver::ON_HYPERPLANE_TOL;
use crate::sphere::{self, Arrangement, UnitVector};
use crate::Result;

/// Identity residual threshold below which a point counts as critical.
pub const CRITICAL_TOL: f64 = 1e-8;

/// Samples with magnitude at or below this are treated as zeros when
/// counting sign changes.
pub const SIGN_ZERO_TOL: f64 = 1e-12;

/// Excluded radius around `theta = 0, pi` when sampling
/// `(f - cos n theta) / sin^2 theta`.
pub const PSI2_EXCLUSION: f64 = 0.1;

/// `a_0 + sum_k (a_k cos k theta + b_k sin k theta)`, degree `m`.
#[derive(Clone, Debug, PartialEq)]
pub struct TrigPoly {
    /// `a_0..a_m`.
    pub cos_coeffs: Vec<f64>,
    /// `b_1..b_m`.
    pub sin_coeffs: Vec<f64>,
}

impl TrigPoly {
    pub fn degree(&self) -> usize {
        self.cos_coeffs.len() - 1
    }

    pub fn eval(&self, theta: f64) -> f64 {
        let mut acc = self.cos_coeffs[0];
        for (k, a) in self.cos_coeffs.iter().enumerate().skip(1) {
            acc += a * cos(k as f64 * theta);
        }
        for (k, b) in self.sin_coeffs.iter().enumerate() {
            acc += b * sin((k + 1) as f64 * theta);
        }
        acc
    }
}

/// Fits a degree-`m` trigonometric polynomial to equispaced samples of a
/// function on `[0, 2pi)` by discrete Fourier analysis.
///
/// Exact (up to rounding) whenever the sampled function is itself a
/// trigonometric polynomial of degree at most `m` and the sample count
/// is at least `2m + 1`.
pub fn fit_trig(samples: &[f64], degree: usize) -> Result<TrigPoly> {
    let count = samples.len();
    let need = 2 * degree + 1;
    if count < need {
        return Err(Error::InsufficientSamples { got: count, need });
    }
    let step = 2.0 * core::f64::consts::PI / count as f64;
    let mut cos_coeffs = vec![0.0f64; degree + 1];
    let mut sin_coeffs = vec![0.0f64; degree];
    cos_coeffs[0] = samples.iter().sum::<f64>() / count as f64;
    for k in 1..=degree {
        let mut ca = 0.0;
        let mut sa = 0.0;
        for (j, y) in samples.iter().enumerate() {
            let t = k as f64 * j as f64 * step;
            ca += y * cos(t);
            sa += y * sin(t);
        }
        cos_coeffs[k] = 2.0 * ca / count as f64;
        sin_coeffs[k - 1] = 2.0 * sa / count as f64;
    }
    Ok(TrigPoly {
        cos_coeffs,
        sin_coeffs,
    })
}

/// Max deviation between the polynomial and `f` on a verification grid
/// shifted off the fitting nodes by half a spacing.
pub fn fit_residual(poly: &TrigPoly, f: impl Fn(f64) -> f64, grid: usize) -> f64 {
    let step = 2.0 * core::f64::consts::PI / grid as f64;
    let mut worst = 0.0f64;
    for j in 0..grid {
        let theta = (j as f64 + 0.5) * step;
        worst = worst.max(fabs(poly.eval(theta) - f(theta)));
    }
    worst
}

/// Least-squares trigonometric fit on arbitrary nodes (used where the
/// sampling grid has exclusions and plain Fourier analysis does not
/// apply). Normal equations solved by Gaussian elimination; the basis
/// here is tiny (degree <= n - 2).
pub fn fit_trig_least_squares(thetas: &[f64], values: &[f64], degree: usize) -> Result<TrigPoly> {
    let k = 2 * degree + 1;
    if thetas.len() < k {
        return Err(Error::InsufficientSamples {
            got: thetas.len(),
            need: k,
        });
    }
    let basis = |theta: f64| -> Vec<f64> {
        let mut row = Vec::with_capacity(k);
        row.push(1.0);
        for j in 1..=degree {
            row.push(cos(j as f64 * theta));
        }
        for j in 1..=degree {
            row.push(sin(j as f64 * theta));
        }
        row
    };
    let mut gram = vec![vec![0.0f64; k]; k];
    let mut rhs = vec![0.0f64; k];
    for (&theta, &y) in thetas.iter().zip(values) {
        let row = basis(theta);
        for p in 0..k {
            rhs[p] += row[p] * y;
            for q in 0..k {
                gram[p][q] += row[p] * row[q];
            }
        }
    }
    let x = solve_linear(&mut gram, &mut rhs).ok_or(Error::InsufficientSamples {
        got: thetas.len(),
        need: k,
    })?;
    let cos_coeffs = x[..=degree].to_vec();
    let sin_coeffs = x[degree + 1..].to_vec();
    Ok(TrigPoly {
        cos_coeffs,
        sin_coeffs,
    })
}

/// In-place Gaussian elimination with partial pivoting.
fn solve_linear(a: &mut [Vec<f64>], b: &mut [f64]) -> Option<Vec<f64>> {
    let k = b.len();
    for col in 0..k {
        let pivot = (col..k).max_by(|&i, &j| {
            fabs(a[i][col])
                .partial_cmp(&fabs(a[j][col]))
                .expect("finite")
        })?;
        if fabs(a[pivot][col]) < 1e-300 {
            return None;
        }
        a.swap(col, pivot);
        b.swap(col, pivot);
        for row in col + 1..k {
            let m = a[row][col] / a[col][col];
            for c in col..k {
                a[row][c] -= m * a[col][c];
            }
            b[row] -= m * b[col];
        }
    }
    let mut x = vec![0.0f64; k];
    for row in (0..k).rev() {
        let mut acc = b[row];
        for c in row + 1..k {
            acc -= a[row][c] * x[c];
        }
        x[row] = acc / a[row][row];
    }
    Some(x)
}

fn checked_inner_products(arr: &Arrangement, u: &UnitVector) -> Result<Vec<f64>> {
    let inner = arr.inner_products(u)?;
    for (i, c) in inner.iter().enumerate() {
        if fabs(*c) <= ON_HYPERPLANE_TOL {
            return Err(Error::OnHyperplane { index: i });
        }
    }
    Ok(inner)
}

/// The shortened tangent of the contradiction construction.
///
/// Given `c = <v_1, u>` with `0 < |c| < sin(pi/2n)`, returns
/// `w = alpha * p` where `p` is the unit tangent at `u` pointing away
/// from `v_1`'s sign and `alpha = tan(arcsin|c|) / tan(pi/2n) < 1`, so
/// that `u_{pi/2n} = cos(pi/2n) u + sin(pi/2n) w` is orthogonal to `v_1`.
pub fn construct_w(u: &UnitVector, v1: &UnitVector, n: usize) -> Result<(Vec<f64>, f64)> {
    if n < 1 {
        return Err(Error::InvalidCount(n));
    }
    if u.dim() != v1.dim() {
        return Err(Error::DimensionMismatch {
            expected: v1.dim(),
            got: u.dim(),
        });
    }
    let c = v1.dot(u);
    if fabs(c) <= ON_HYPERPLANE_TOL {
        return Err(Error::DegenerateOrthogonal);
    }
    let bound = sin(core::f64::consts::PI / (2.0 * n as f64));
    if fabs(c) >= bound {
        return Err(Error::HypothesisNotViolated {
            inner: fabs(c),
            bound,
        });
    }
    let tangent = sphere::tangent_part(v1.coords(), u); // v_1 - c u
    let tnorm = sphere::norm(&tangent);
    let alpha = tan(asin(fabs(c))) / tan(core::f64::consts::PI / (2.0 * n as f64));
    let scale = -sign(c) * alpha / tnorm;
    let w = tangent.iter().map(|x| scale * x).collect();
    Ok((w, alpha))
}

fn sign(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

/// The signed product ratio `f(theta)` along `u_theta`.
pub fn eval_f(arr: &Arrangement, u: &UnitVector, w: &[f64], theta: f64) -> Result<f64> {
    let inner = checked_inner_products(arr, u)?;
    Ok(eval_f_with_inner(arr, w, &inner, theta))
}

fn eval_f_with_inner(arr: &Arrangement, w: &[f64], inner: &[f64], theta: f64) -> f64 {
    if theta == 0.0 {
        return 1.0; // u_0 = u, exactly
    }
    let (ct, st) = (cos(theta), sin(theta));
    let mut ratio = 1.0f64;
    for (v, c) in arr.normals().iter().zip(inner) {
        let num = ct * c + st * sphere::dot(v.coords(), w);
        ratio *= num / c;
    }
    ratio
}

/// `|sum_i <v_i, w> / <v_i, u>|` — the magnitude of `f'(0)`.
///
/// Near zero exactly when `u` is critical for the log-objective along
/// the `(u, w)` great circle.
pub fn critical_identity_residual(arr: &Arrangement, u: &UnitVector, w: &[f64]) -> Result<f64> {
    let inner = checked_inner_products(arr, u)?;
    let mut acc = 0.0f64;
    for (v, c) in arr.normals().iter().zip(&inner) {
        acc += sphere::dot(v.coords(), w) / c;
    }
    Ok(fabs(acc))
}

/// Residual of the factorization `f - cos(n theta) = sin^2(theta) psi_2`
/// with `deg psi_2 <= n - 2`.
///
/// Samples `h = (f - cos n theta)/sin^2 theta` on an equispaced grid with
/// neighborhoods of `theta = 0, pi` excluded (radius
/// [`PSI2_EXCLUSION`]), fits `psi_2` by least squares, and returns the
/// max deviation on a half-spacing-shifted verification grid with the
/// same exclusions. Requires `u` critical; for `n < 2` the factor is
/// vacuous and the residual is 0 by convention.
pub fn psi2_residual(arr: &Arrangement, u: &UnitVector, w: &[f64]) -> Result<f64> {
    let n = arr.len();
    let residual = critical_identity_residual(arr, u, w)?;
    if residual > CRITICAL_TOL {
        return Err(Error::NotCritical { residual });
    }
    if n < 2 {
        return Ok(0.0);
    }
    let inner = checked_inner_products(arr, u)?;
    let pi = core::f64::consts::PI;
    let grid = 720usize;
    let step = 2.0 * pi / grid as f64;
    let keep = |theta: f64| -> bool {
        fabs(theta) > PSI2_EXCLUSION
            && fabs(theta - pi) > PSI2_EXCLUSION
            && fabs(theta - 2.0 * pi) > PSI2_EXCLUSION
    };
    let h = |theta: f64| -> f64 {
        let s = sin(theta);
        let g = eval_f_with_inner(arr, w, &inner, theta) - cos(n as f64 * theta);
        g / (s * s)
    };
    let mut thetas = Vec::new();
    let mut values = Vec::new();
    for j in 0..grid {
        let theta = j as f64 * step;
        if keep(theta) {
            thetas.push(theta);
            values.push(h(theta));
        }
    }
    let psi2 = fit_trig_least_squares(&thetas, &values, n - 2)?;
    let mut worst = 0.0f64;
    for j in 0..grid {
        let theta = (j as f64 + 0.5) * step;
        if keep(theta) {
            worst = worst.max(fabs(h(theta) - psi2.eval(theta)));
        }
    }
    Ok(worst)
}

/// Counts strict sign alternations of consecutive nonzero samples of `f`
/// over `[0, 2pi)`, cyclically. Samples with `|f| <=` [`SIGN_ZERO_TOL`]
/// are skipped; touch-zeros without a crossing therefore do not count
/// (see [`pole_tangencies`] for those).
pub fn count_sign_changes(f: impl Fn(f64) -> f64, n: usize, grid_size: usize) -> Result<usize> {
    let need = 16 * n;
    if grid_size < need {
        return Err(Error::GridTooCoarse {
            got: grid_size,
            need,
        });
    }
    let step = 2.0 * core::f64::consts::PI / grid_size as f64;
    let mut signs: Vec<i8> = Vec::new();
    for j in 0..grid_size {
        let y = f(j as f64 * step);
        if fabs(y) > SIGN_ZERO_TOL {
            signs.push(if y > 0.0 { 1 } else { -1 });
        }
    }
    if signs.len() < 2 {
        return Ok(0);
    }
    let mut changes = 0usize;
    for i in 0..signs.len() {
        if signs[i] != signs[(i + 1) % signs.len()] {
            changes += 1;
        }
    }
    Ok(changes)
}

/// A zero of `f` at `theta` in `{0, pi}` where the derivative also
/// vanishes: a touch without a sign change.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Tangency {
    pub theta: f64,
    pub value: f64,
    pub derivative: f64,
}

/// Detects tangential (double) zeros of `f` at `theta = 0` and
/// `theta = pi` via value and central-difference derivative thresholds
/// (1e-8 and 1e-6). Multiplicity counting on floats is ill-posed; the
/// zero-count diagnostics report these separately from sign changes.
pub fn pole_tangencies(f: impl Fn(f64) -> f64) -> Vec<Tangency> {
    let h = 1e-5;
    let mut out = Vec::new();
    for theta in [0.0, core::f64::consts::PI] {
        let value = f(theta);
        let derivative = (f(theta + h) - f(theta - h)) / (2.0 * h);
        if fabs(value) <= 1e-8 && fabs(derivative) <= 1e-6 {
            out.push(Tangency {
                theta,
                value,
                derivative,
            });
        }
    }
    out
}

/// The assembled diagnostics for one `(arrangement, u)` pair.
#[derive(Clone, Debug)]
pub struct ProofTrace {
    pub u: UnitVector,
    /// Tangent of the curve; `|w| <= 1`, with `|w| < 1` exactly when the
    /// depth bound is violated at `u`.
    pub w: Vec<f64>,
    /// Index of the worst bound violator, when one exists.
    pub violating_index: Option<usize>,
    /// `|w|`.
    pub alpha: f64,
    /// Fourier fit of `f` with degree `n`.
    pub f: TrigPoly,
    /// Verification residual of the fit.
    pub f_fit_residual: f64,
    /// Sign changes of `f - cos(n theta)` over `[0, 2pi)`.
    pub g_sign_changes: usize,
    /// Touch-zeros of `f - cos(n theta)` at `theta = 0, pi`.
    pub tangencies: Vec<Tangency>,
    /// Factorization residual; absent when `u` is not critical.
    pub psi2_residual: Option<f64>,
    /// `|sum_i <v_i, w>/<v_i, u>|`.
    pub identity_residual: f64,
}

/// Runs the full diagnostic pipeline at `u`.
///
/// If some `|<v_i, u>|` falls below `sin(pi/2n)`, the shortened tangent
/// is built from the worst violator, which forces `f(pi/2n) = 0` and
/// exhibits the counting contradiction numerically; otherwise `w` is an
/// arbitrary fixed unit tangent and no violation is flagged.
pub fn build_trace(arr: &Arrangement, u: &UnitVector) -> Result<ProofTrace> {
    let n = arr.len();
    let inner = checked_inner_products(arr, u)?;
    let (worst_idx, worst_abs) = inner
        .iter()
        .map(|c| fabs(*c))
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .expect("n >= 1");
    let bound = sin(core::f64::consts::PI / (2.0 * n as f64));

    let (w, alpha, violating_index) = if worst_abs < bound {
        let (w, alpha) = construct_w(u, arr.normal(worst_idx), n)?;
        (w, alpha, Some(worst_idx))
    } else {
        (fixed_unit_tangent(u), 1.0, None)
    };

    let sample_count = 4 * (n + 1);
    let step = 2.0 * core::f64::consts::PI / sample_count as f64;
    let samples: Vec<f64> = (0..sample_count)
        .map(|j| eval_f_with_inner(arr, &w, &inner, j as f64 * step))
        .collect();
    let f_poly = fit_trig(&samples, n)?;
    let f_eval = |theta: f64| eval_f_with_inner(arr, &w, &inner, theta);
    let f_fit_residual = fit_residual(&f_poly, f_eval, 4 * sample_count);

    let g = |theta: f64| f_eval(theta) - cos(n as f64 * theta);
    let grid = 512usize.max(16 * n);
    let g_sign_changes = count_sign_changes(g, n, grid)?;
    let tangencies = pole_tangencies(g);

    let identity_residual = critical_identity_residual(arr, u, &w)?;
    let psi2 = if identity_residual <= CRITICAL_TOL {
        Some(psi2_residual(arr, u, &w)?)
    } else {
        None
    };

    Ok(ProofTrace {
        u: u.clone(),
        w,
        violating_index,
        alpha,
        f: f_poly,
        f_fit_residual,
        g_sign_changes,
        tangencies,
        psi2_residual: psi2,
        identity_residual,
    })
}

/// A deterministic unit tangent at `u`: the coordinate axis least aligned
/// with `u`, projected and normalized.
pub fn fixed_unit_tangent(u: &UnitVector) -> Vec<f64> {
    let axis = u
        .coords()
        .iter()
        .map(|x| fabs(*x))
        .enumerate()
        .min_by(|a, b| a.1.partial_cmp(&b.1).expect("finite"))
        .map(|(i, _)| i)
        .expect("d >= 2");
    let mut e = vec![0.0f64; u.dim()];
    e[axis] = 1.0;
    let t = sphere::tangent_part(&e, u);
    let norm = sphere::norm(&t);
    t.iter().map(|x| x / norm).collect()
}

/// `(theta, f(theta), cos(n theta))` triples on an equispaced grid,
/// suitable for external plotting.
pub fn plot_samples(
    arr: &Arrangement,
    u: &UnitVector,
    w: &[f64],
    count: usize,
) -> Result<Vec<(f64, f64, f64)>> {
    let inner = checked_inner_products(arr, u)?;
    let n = arr.len() as f64;
    let step = 2.0 * core::f64::consts::PI / count as f64;
    Ok((0..count)
        .map(|j| {
            let theta = j as f64 * step;
            (
                theta,
                eval_f_with_inner(arr, w, &inner, theta),
                cos(n * theta),
            )
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{apple_peel, normalize};
    use libm::sqrt;
    use core::f64::consts::PI;

    #[test]
    fn fit_recovers_pure_cosine() {
        let n = 5usize;
        let count = 4 * (n + 1);
        let samples: Vec<f64> = (0..count)
            .map(|j| cos(n as f64 * 2.0 * PI * j as f64 / count as f64))
            .collect();
        let p = fit_trig(&samples, n).unwrap();
        for (k, a) in p.cos_coeffs.iter().enumerate() {
            let expect = if k == n { 1.0 } else { 0.0 };
            assert!(fabs(a - expect) < 1e-12, "a_{k} = {a}");
        }
        for b in &p.sin_coeffs {
            assert!(fabs(*b) < 1e-12);
        }
    }

    #[test]
    fn fit_recovers_pure_sine() {
        let count = 8;
        let samples: Vec<f64> = (0..count)
            .map(|j| sin(2.0 * PI * j as f64 / count as f64))
            .collect();
        let p = fit_trig(&samples, 1).unwrap();
        assert!(fabs(p.sin_coeffs[0] - 1.0) < 1e-12);
        assert!(fabs(p.cos_coeffs[0]) < 1e-12 && fabs(p.cos_coeffs[1]) < 1e-12);
    }

    #[test]
    fn fit_rejects_short_input() {
        assert!(matches!(
            fit_trig(&[1.0, 2.0, 3.0], 2),
            Err(Error::InsufficientSamples { got: 3, need: 5 })
        ));
    }

    #[test]
    fn construct_w_example() {
        // n = 2, c = 0.5 < sin(pi/4)
        let n = 2usize;
        let u = normalize(&[1.0, 0.0]).unwrap();
        let c: f64 = 0.5;
        let v1 = normalize(&[c, sqrt(1.0 - c * c)]).unwrap();
        let (w, alpha) = construct_w(&u, &v1, n).unwrap();
        assert!(fabs(alpha - tan(PI / 6.0) / tan(PI / 4.0)) < 1e-12);
        assert!(fabs(alpha - 0.577_350_269_189_625_8) < 1e-9);
        assert!(fabs(sphere::dot(&w, u.coords())) < 1e-12);
        assert!(fabs(sphere::norm(&w) - alpha) < 1e-12);
        // the construction's whole point: v_1 is orthogonal to u_{pi/2n}
        let theta = PI / (2.0 * n as f64);
        let u_theta: Vec<f64> = u
            .coords()
            .iter()
            .zip(&w)
            .map(|(ui, wi)| cos(theta) * ui + sin(theta) * wi)
            .collect();
        assert!(fabs(sphere::dot(&u_theta, v1.coords())) < 1e-12);
    }

    #[test]
    fn construct_w_boundary_alpha() {
        let n = 3usize;
        let bound = sin(PI / (2.0 * n as f64));
        let c = bound - 1e-9;
        let u = normalize(&[1.0, 0.0]).unwrap();
        let v1 = normalize(&[c, sqrt(1.0 - c * c)]).unwrap();
        let (_, alpha) = construct_w(&u, &v1, n).unwrap();
        assert!(alpha < 1.0 && alpha > 1.0 - 1e-7);
    }

    #[test]
    fn construct_w_preconditions() {
        let u = normalize(&[1.0, 0.0]).unwrap();
        let v_far = normalize(&[0.9, sqrt(1.0 - 0.81)]).unwrap();
        assert!(matches!(
            construct_w(&u, &v_far, 2),
            Err(Error::HypothesisNotViolated { .. })
        ));
        let v_perp = normalize(&[0.0, 1.0]).unwrap();
        assert!(matches!(
            construct_w(&u, &v_perp, 2),
            Err(Error::DegenerateOrthogonal)
        ));
    }

    #[test]
    fn eval_f_at_zero_is_one() {
        let arr = apple_peel(3).unwrap();
        let u = normalize(&[0.3, 0.2, 0.9]).unwrap();
        let w = fixed_unit_tangent(&u);
        assert_eq!(eval_f(&arr, &u, &w, 0.0).unwrap(), 1.0);
    }

    #[test]
    fn eval_f_antiperiodic() {
        for n in [2usize, 3, 5] {
            let arr = crate::sphere::random_arrangement(3, n, 17).unwrap();
            let mut rng = crate::rng::stream(5);
            let u = crate::sphere::random_unit_vector(3, &mut rng);
            let w = fixed_unit_tangent(&u);
            let parity = if n % 2 == 0 { 1.0 } else { -1.0 };
            for j in 0..20 {
                let theta = 0.31 * j as f64;
                let a = eval_f(&arr, &u, &w, theta + PI).unwrap();
                let b = parity * eval_f(&arr, &u, &w, theta).unwrap();
                assert!(fabs(a - b) < 1e-10, "n={n} theta={theta}");
            }
        }
    }

    #[test]
    fn evenly_spaced_2d_gives_cos_n_theta() {
        // product identity: prod cos(theta - k pi/3) = cos(3 theta)/4
        let n = 3usize;
        let arr = Arrangement::new(
            (0..n)
                .map(|k| {
                    let a = k as f64 * PI / n as f64;
                    normalize(&[cos(a), sin(a)]).unwrap()
                })
                .collect(),
        )
        .unwrap();
        let u = normalize(&[1.0, 0.0]).unwrap();
        let w = vec![0.0, 1.0];
        for j in 0..100 {
            let theta = 2.0 * PI * j as f64 / 100.0;
            let f = eval_f(&arr, &u, &w, theta).unwrap();
            assert!(fabs(f - cos(3.0 * theta)) < 1e-12, "theta {theta}");
        }
    }

    #[test]
    fn identity_residual_trivial_for_n1() {
        let v = normalize(&[0.0, 1.0, 0.0]).unwrap();
        let arr = Arrangement::new(vec![v.clone()]).unwrap();
        let w = fixed_unit_tangent(&v);
        assert!(critical_identity_residual(&arr, &v, &w).unwrap() < 1e-15);
    }

    #[test]
    fn sign_changes_of_sine() {
        assert_eq!(count_sign_changes(sin, 1, 64).unwrap(), 2);
    }

    #[test]
    fn sign_changes_of_shifted_cosine() {
        for n in [1usize, 2, 3, 5, 8] {
            let f = |theta: f64| cos(n as f64 * theta) - 0.5;
            assert_eq!(count_sign_changes(f, n, 64 * n).unwrap(), 2 * n, "n={n}");
        }
    }

    #[test]
    fn sign_changes_grid_check() {
        assert!(matches!(
            count_sign_changes(sin, 4, 32),
            Err(Error::GridTooCoarse { got: 32, need: 64 })
        ));
    }

    #[test]
    fn tangency_detection() {
        // 1 - cos(theta) touches zero at 0 only
        let t = pole_tangencies(|theta| 1.0 - cos(theta));
        assert_eq!(t.len(), 1);
        assert_eq!(t[0].theta, 0.0);
        // sin touches nothing (crosses at 0 and pi)
        assert!(pole_tangencies(sin).is_empty());
    }

    #[test]
    fn psi2_zero_for_extremal_2d() {
        // f = cos(n theta) exactly, so psi_2 = 0
        let n = 3usize;
        let arr = Arrangement::new(
            (0..n)
                .map(|k| {
                    let a = k as f64 * PI / n as f64;
                    normalize(&[cos(a), sin(a)]).unwrap()
                })
                .collect(),
        )
        .unwrap();
        // u at angle 0 is a maximizer of |cos 3t|/4
        let u = normalize(&[1.0, 0.0]).unwrap();
        let w = vec![0.0, 1.0];
        let r = psi2_residual(&arr, &u, &w).unwrap();
        assert!(r < 1e-10, "residual {r}");
    }

    #[test]
    fn psi2_rejects_noncritical() {
        let arr = crate::sphere::random_arrangement(3, 4, 3).unwrap();
        let mut rng = crate::rng::stream(9);
        let u = crate::sphere::random_unit_vector(3, &mut rng);
        let w = fixed_unit_tangent(&u);
        assert!(matches!(
            psi2_residual(&arr, &u, &w),
            Err(Error::NotCritical { .. })
        ));
    }

    #[test]
    fn trace_for_violating_point() {
        // point near one of the meridians of apple_peel(3) violates the bound
        let arr = apple_peel(3).unwrap();
        let n = 3usize;
        let u = normalize(&[0.99, 0.05, 0.13]).unwrap(); // close to the meridian with normal e_y
        let trace = build_trace(&arr, &u).unwrap();
        assert!(trace.violating_index.is_some());
        assert!(trace.alpha < 1.0);
        let theta = PI / (2.0 * n as f64);
        let f_at = eval_f(&arr, &u, &trace.w, theta).unwrap();
        assert!(fabs(f_at) < 1e-10, "f(pi/2n) = {f_at}");
    }

    #[test]
    fn trace_n1_is_cosine() {
        let v = normalize(&[0.0, 0.0, 1.0]).unwrap();
        let arr = Arrangement::new(vec![v.clone()]).unwrap();
        let trace = build_trace(&arr, &v).unwrap();
        assert!(trace.violating_index.is_none());
        assert!(fabs(trace.f.cos_coeffs[1] - 1.0) < 1e-12);
        assert!(fabs(trace.f.cos_coeffs[0]) < 1e-12);
        assert!(fabs(trace.f.sin_coeffs[0]) < 1e-12);
        assert_eq!(trace.psi2_residual, Some(0.0));
    }
}
