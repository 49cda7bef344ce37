//! Covering radius and zone cover decisions for great-circle/hyperplane
//! arrangements.
//!
//! The covering radius `rho(arr) = max_u min_i arcsin |<v_i, u>|` is
//! bracketed by a certified grid sweep: the depth function is 1-Lipschitz
//! along geodesics, so if a sample set has geodesic mesh `delta`, the best
//! sampled depth `lo` (sharpened by local maximin ascent) satisfies
//! `rho <= lo + delta`. On S^2 the sample set is a Fibonacci lattice with
//! an explicitly computed mesh bound; on S^1 an equispaced circle grid.
//! For d >= 4 only an uncertified heuristic (random sampling plus
//! refinement) is offered.

use alloc::vec::Vec;

use libm::{asin, cos, exp, fabs, log, sin, sqrt};

use crate::error::Error;
use crate::rng;
use crate::sphere::{self, Arrangement, UnitVector, ZoneSet};
use crate::Result;

/// A point exactly on a zone boundary counts as covered (zones are
/// closed); this absorbs float rounding in the boundary decision.
pub const BOUNDARY_TOL: f64 = 1e-9;

const GOLDEN_ANGLE: f64 = 2.399963229728653; // pi * (3 - sqrt(5))

/// Fixed chunk size for grid sweeps; per-chunk winners are merged in
/// index order so thread count never changes the result.
const CHUNK: usize = 1 << 16;

/// How many chunk winners get local refinement.
const REFINE_SEEDS: usize = 8;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum GridMethod {
    /// Fibonacci lattice on S^2 (d = 3), certified.
    FibonacciS2,
    /// Equispaced angles on S^1 (d = 2), certified.
    UniformCircleS1,
    /// Seeded random sampling, any d; carries no certification.
    HeuristicHighDim,
}

/// A sample set description together with its certification data.
#[derive(Clone, Debug, PartialEq)]
pub struct GridCertificate {
    pub method: GridMethod,
    pub sample_count: usize,
    /// Geodesic mesh bound of the sample set in radians; infinite for
    /// the uncertified heuristic.
    pub mesh: f64,
    /// Seed for the heuristic method; unused by deterministic grids.
    pub seed: u64,
}

impl GridCertificate {
    /// Fibonacci lattice with `sample_count` points; computes the mesh
    /// bound (max over samples of nearest-neighbor geodesic distance).
    pub fn fibonacci_s2(sample_count: usize) -> Self {
        let sample_count = sample_count.max(16);
        GridCertificate {
            method: GridMethod::FibonacciS2,
            sample_count,
            mesh: fibonacci_mesh(sample_count),
            seed: 0,
        }
    }

    /// Smallest Fibonacci lattice whose computed mesh is at most
    /// `target` radians.
    pub fn fibonacci_s2_target_mesh(target: f64) -> Self {
        assert!(target > 0.0);
        let mut count = ((3.3 / target) * (3.3 / target)) as usize;
        loop {
            let cert = Self::fibonacci_s2(count);
            if cert.mesh <= target {
                return cert;
            }
            count = count + count / 2;
        }
    }

    /// Equispaced angles on the circle; mesh is half the spacing.
    pub fn uniform_circle_s1(sample_count: usize) -> Self {
        let sample_count = sample_count.max(4);
        GridCertificate {
            method: GridMethod::UniformCircleS1,
            sample_count,
            mesh: core::f64::consts::PI / sample_count as f64,
            seed: 0,
        }
    }

    /// Circle grid with mesh at most `target` radians.
    pub fn uniform_circle_s1_target_mesh(target: f64) -> Self {
        assert!(target > 0.0);
        let count = libm::ceil(core::f64::consts::PI / target) as usize;
        Self::uniform_circle_s1(count)
    }

    /// Uncertified random sampling for d >= 4.
    pub fn heuristic(sample_count: usize, seed: u64) -> Self {
        GridCertificate {
            method: GridMethod::HeuristicHighDim,
            sample_count: sample_count.max(16),
            mesh: f64::INFINITY,
            seed,
        }
    }

    pub fn certified(&self) -> bool {
        !matches!(self.method, GridMethod::HeuristicHighDim)
    }
}

/// Certified bracket on the covering radius, with the deepest point found.
#[derive(Clone, Debug)]
pub struct RadiusReport {
    /// Depth actually achieved by `deepest` (a witness lower bound).
    pub lo: f64,
    /// Upper bound `lo + mesh` (infinite for the heuristic method).
    pub hi: f64,
    pub deepest: UnitVector,
    pub certified: bool,
}

/// Outcome of a zone cover decision.
#[derive(Clone, Debug)]
pub struct CoverReport {
    pub covers: bool,
    /// A point strictly outside every zone; present iff `covers` is false.
    pub witness: Option<UnitVector>,
    pub covering_radius_lo: f64,
    pub covering_radius_hi: f64,
}

/// Depth of `u` in the arrangement: `min_i arcsin |<v_i, u>|`.
pub fn depth(arr: &Arrangement, u: &UnitVector) -> Result<f64> {
    let m = sphere::min_abs_inner(arr, u)?;
    Ok(asin(m.min(1.0)))
}

/// `min_i (arcsin |<v_i, u>| - half_width_i)` on raw coordinates.
/// `offsets = None` gives plain depth.
fn score_coords(arr: &Arrangement, coords: &[f64], offsets: Option<&[f64]>) -> f64 {
    match offsets {
        None => {
            let mut m = f64::INFINITY;
            for v in arr.normals() {
                m = m.min(fabs(sphere::dot(v.coords(), coords)));
            }
            asin(m.min(1.0))
        }
        Some(off) => {
            let mut m = f64::INFINITY;
            for (v, w) in arr.normals().iter().zip(off) {
                let c = fabs(sphere::dot(v.coords(), coords)).min(1.0);
                m = m.min(asin(c) - w);
            }
            m
        }
    }
}

fn fibonacci_point(i: usize, count: usize) -> [f64; 3] {
    let z = 1.0 - (2 * i + 1) as f64 / count as f64;
    let s = sqrt((1.0 - z * z).max(0.0));
    let phi = i as f64 * GOLDEN_ANGLE;
    [s * cos(phi), s * sin(phi), z]
}

fn circle_point(i: usize, count: usize) -> [f64; 2] {
    let t = 2.0 * core::f64::consts::PI * i as f64 / count as f64;
    [cos(t), sin(t)]
}

/// Max over lattice points of the nearest-neighbor geodesic distance.
///
/// Candidate neighbors are the small index offsets plus the Fibonacci
/// offsets, which is where the lattice's nearest neighbors live;
/// restricting candidates can only overestimate the minimum, so the
/// returned mesh is conservative.
fn fibonacci_mesh(count: usize) -> f64 {
    let mut offsets: Vec<usize> = (1..=8).collect();
    let (mut a, mut b) = (8usize, 13usize);
    while b < count {
        offsets.push(b);
        let next = a + b;
        a = b;
        b = next;
    }
    // cos of the azimuthal difference is constant per offset
    let cos_dphi: Vec<f64> = offsets
        .iter()
        .map(|&t| cos(t as f64 * GOLDEN_ANGLE))
        .collect();

    let worst = |range: core::ops::Range<usize>| -> f64 {
        let mut max_nn_chord2 = 0.0f64;
        for i in range {
            let zi = 1.0 - (2 * i + 1) as f64 / count as f64;
            let si = sqrt((1.0 - zi * zi).max(0.0));
            let mut best = f64::INFINITY;
            for (k, &t) in offsets.iter().enumerate() {
                for j in [i.checked_sub(t), i.checked_add(t)].into_iter().flatten() {
                    if j >= count {
                        continue;
                    }
                    let zj = 1.0 - (2 * j + 1) as f64 / count as f64;
                    let sj = sqrt((1.0 - zj * zj).max(0.0));
                    let d = si * sj * cos_dphi[k] + zi * zj;
                    best = best.min(2.0 - 2.0 * d);
                }
            }
            max_nn_chord2 = max_nn_chord2.max(best);
        }
        max_nn_chord2
    };

    let chunks: Vec<core::ops::Range<usize>> = (0..count)
        .step_by(CHUNK)
        .map(|s| s..(s + CHUNK).min(count))
        .collect();
    let max_chord2 = map_chunks(chunks, worst)
        .into_iter()
        .fold(0.0f64, f64::max);
    2.0 * asin((sqrt(max_chord2.max(0.0)) / 2.0).min(1.0))
}

#[cfg(feature = "parallel")]
fn map_chunks<T: Send, F>(chunks: Vec<core::ops::Range<usize>>, f: F) -> Vec<T>
where
    F: Fn(core::ops::Range<usize>) -> T + Sync + Send,
{
    use rayon::prelude::*;
    chunks.into_par_iter().map(f).collect()
}

#[cfg(not(feature = "parallel"))]
fn map_chunks<T, F>(chunks: Vec<core::ops::Range<usize>>, f: F) -> Vec<T>
where
    F: Fn(core::ops::Range<usize>) -> T,
{
    chunks.into_iter().map(f).collect()
}

/// Best sample of the score function over the certificate's sample set.
/// Returns candidate points ordered best-first (ties to lowest index).
fn scan_candidates(
    arr: &Arrangement,
    cert: &GridCertificate,
    offsets: Option<&[f64]>,
) -> Vec<(f64, usize, Vec<f64>)> {
    let count = cert.sample_count;
    match cert.method {
        GridMethod::HeuristicHighDim => {
            // serial: the RNG stream is inherently sequential
            let mut rng = rng::stream(cert.seed);
            let mut top: Vec<(f64, usize, Vec<f64>)> = Vec::new();
            for i in 0..count {
                let u = sphere::random_unit_vector(arr.dim(), &mut rng);
                let val = score_coords(arr, u.coords(), offsets);
                push_top(&mut top, (val, i, u.coords().to_vec()), REFINE_SEEDS);
            }
            top
        }
        GridMethod::FibonacciS2 | GridMethod::UniformCircleS1 => {
            let point = |i: usize| -> Vec<f64> {
                match cert.method {
                    GridMethod::FibonacciS2 => fibonacci_point(i, count).to_vec(),
                    GridMethod::UniformCircleS1 => circle_point(i, count).to_vec(),
                    GridMethod::HeuristicHighDim => unreachable!(),
                }
            };
            let chunks: Vec<core::ops::Range<usize>> = (0..count)
                .step_by(CHUNK)
                .map(|s| s..(s + CHUNK).min(count))
                .collect();
            let winners = map_chunks(chunks, |range| {
                let mut best = (f64::NEG_INFINITY, usize::MAX);
                for i in range {
                    let p = point(i);
                    let val = score_coords(arr, &p, offsets);
                    if val > best.0 {
                        best = (val, i);
                    }
                }
                best
            });
            let mut top: Vec<(f64, usize, Vec<f64>)> = Vec::new();
            for (val, i) in winners {
                if i != usize::MAX {
                    push_top(&mut top, (val, i, point(i)), REFINE_SEEDS);
                }
            }
            top
        }
    }
}

/// Keep the `k` best entries, ordered by value descending then index
/// ascending.
fn push_top(top: &mut Vec<(f64, usize, Vec<f64>)>, entry: (f64, usize, Vec<f64>), k: usize) {
    let pos = top
        .iter()
        .position(|(v, i, _)| entry.0 > *v || (entry.0 == *v && entry.1 < *i))
        .unwrap_or(top.len());
    if pos < k {
        top.insert(pos, entry);
        top.truncate(k);
    }
}

/// Projected ascent on a softmin of the score, temperature schedule
/// 1e-1 -> 1e-4, re-evaluated with the true min by the caller.
fn refine(arr: &Arrangement, offsets: Option<&[f64]>, start: &UnitVector) -> UnitVector {
    let softmin = |coords: &[f64], tau: f64| -> f64 {
        let mut xs: Vec<f64> = Vec::with_capacity(arr.len());
        let mut xmin = f64::INFINITY;
        for (i, v) in arr.normals().iter().enumerate() {
            let c = fabs(sphere::dot(v.coords(), coords)).min(1.0);
            let x = asin(c) - offsets.map_or(0.0, |o| o[i]);
            xmin = xmin.min(x);
            xs.push(x);
        }
        let s: f64 = xs.iter().map(|x| exp(-(x - xmin) / tau)).sum();
        xmin - tau * log(s)
    };

    let mut u = start.clone();
    for tau in [1e-1, 1e-2, 1e-3, 1e-4] {
        let mut value = softmin(u.coords(), tau);
        for _ in 0..80 {
            // softmin gradient: depth-weighted sum of per-circle ascent
            // directions sign(c_i) v_i / sqrt(1 - c_i^2), projected tangent
            let mut xs: Vec<f64> = Vec::with_capacity(arr.len());
            let mut cs: Vec<f64> = Vec::with_capacity(arr.len());
            let mut xmin = f64::INFINITY;
            for (i, v) in arr.normals().iter().enumerate() {
                let c = sphere::dot(v.coords(), u.coords());
                let x = asin(fabs(c).min(1.0)) - offsets.map_or(0.0, |o| o[i]);
                xmin = xmin.min(x);
                xs.push(x);
                cs.push(c);
            }
            let wsum: f64 = xs.iter().map(|x| exp(-(x - xmin) / tau)).sum();
            let mut g = alloc::vec![0.0f64; arr.dim()];
            for ((x, c), v) in xs.iter().zip(&cs).zip(arr.normals()) {
                let w = exp(-(x - xmin) / tau) / wsum;
                let scale = w * sign(*c) / sqrt((1.0 - c * c).max(1e-12));
                for (gj, vj) in g.iter_mut().zip(v.coords()) {
                    *gj += scale * vj;
                }
            }
            let g = sphere::tangent_part(&g, &u);
            let gn = sphere::norm(&g);
            if gn <= 1e-13 {
                break;
            }
            let mut t = 0.5;
            let mut accepted = false;
            while t >= 1e-16 {
                let moved: Vec<f64> = u.coords().iter().zip(&g).map(|(a, b)| a + t * b).collect();
                if let Ok(cand) = UnitVector::new(moved) {
                    let v = softmin(cand.coords(), tau);
                    if v >= value + 1e-4 * t * gn * gn {
                        u = cand;
                        value = v;
                        accepted = true;
                        break;
                    }
                }
                t *= 0.5;
            }
            if !accepted {
                break;
            }
        }
    }
    u
}

fn sign(x: f64) -> f64 {
    if x >= 0.0 {
        1.0
    } else {
        -1.0
    }
}

fn check_method(arr: &Arrangement, cert: &GridCertificate) -> Result<()> {
    let want = match cert.method {
        GridMethod::FibonacciS2 => 3,
        GridMethod::UniformCircleS1 => 2,
        GridMethod::HeuristicHighDim => return Ok(()),
    };
    if arr.dim() == want {
        Ok(())
    } else if arr.dim() >= 4 {
        Err(Error::UncertifiedDimension(arr.dim()))
    } else {
        Err(Error::WrongDimension {
            expected: want,
            got: arr.dim(),
        })
    }
}

/// Best refined maximizer of the score over the certificate's samples.
fn maximize_score(
    arr: &Arrangement,
    cert: &GridCertificate,
    offsets: Option<&[f64]>,
) -> (f64, UnitVector) {
    let candidates = scan_candidates(arr, cert, offsets);
    let mut best_val = f64::NEG_INFINITY;
    let mut best_u: Option<UnitVector> = None;
    for (raw_val, _, coords) in &candidates {
        let start = UnitVector::new(coords.clone()).expect("sample is a unit vector");
        let refined = refine(arr, offsets, &start);
        let val = score_coords(arr, refined.coords(), offsets);
        // refinement should not lose ground; keep the raw sample if it does
        let (val, point) = if val >= *raw_val {
            (val, refined)
        } else {
            (*raw_val, start)
        };
        if val > best_val {
            best_val = val;
            best_u = Some(point);
        }
    }
    (best_val, best_u.expect("at least one sample"))
}

/// Certified bracket `[lo, lo + mesh]` on the covering radius, with the
/// deepest refined sample as witness.
pub fn covering_radius(arr: &Arrangement, cert: &GridCertificate) -> Result<RadiusReport> {
    check_method(arr, cert)?;
    let (lo, deepest) = maximize_score(arr, cert, None);
    let hi = if cert.certified() {
        (lo + cert.mesh).min(core::f64::consts::FRAC_PI_2)
    } else {
        f64::INFINITY
    };
    Ok(RadiusReport {
        lo,
        hi,
        deepest,
        certified: cert.certified(),
    })
}

/// Exact covering radius in d = 2.
///
/// Each hyperplane is a line through the origin; on the circle the depth
/// of a direction is its angular distance to the nearest line. Reducing
/// the lines to angles mod pi and sorting, the covering radius is half
/// the largest circular gap on a circle of circumference pi.
pub fn covering_radius_2d_exact(arr: &Arrangement) -> Result<f64> {
    if arr.dim() != 2 {
        return Err(Error::WrongDimension {
            expected: 2,
            got: arr.dim(),
        });
    }
    let pi = core::f64::consts::PI;
    let mut angles: Vec<f64> = arr
        .normals()
        .iter()
        .map(|v| {
            // direction of the line itself: normal rotated a quarter turn
            let a = libm::atan2(v.coords()[1], v.coords()[0]) + core::f64::consts::FRAC_PI_2;
            let mut a = a % pi;
            if a < 0.0 {
                a += pi;
            }
            a
        })
        .collect();
    angles.sort_by(|a, b| a.partial_cmp(b).expect("angles are finite"));
    let mut max_gap = angles[0] + pi - angles[angles.len() - 1];
    for w in angles.windows(2) {
        max_gap = max_gap.max(w[1] - w[0]);
    }
    Ok(max_gap / 2.0)
}

/// Decides whether the zones cover the sphere.
///
/// Zones are closed: a point exactly at distance `half_width` from its
/// circle is covered. The report also carries the covering-radius bracket
/// of the underlying arrangement from the same certificate.
pub fn zones_cover(zones: &ZoneSet, cert: &GridCertificate) -> Result<CoverReport> {
    let arr = zones.arrangement();
    check_method(arr, cert)?;
    let radius = covering_radius(arr, cert)?;
    let (max_slack, witness) = maximize_score(arr, cert, Some(zones.half_widths()));
    let covers = max_slack <= BOUNDARY_TOL;
    Ok(CoverReport {
        covers,
        witness: if covers { None } else { Some(witness) },
        covering_radius_lo: radius.lo,
        covering_radius_hi: radius.hi,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sphere::{apple_peel, normalize};
    use core::f64::consts::{FRAC_PI_2, FRAC_PI_4, PI};

    #[test]
    fn depth_pole_vs_meridian() {
        let arr = apple_peel(1).unwrap();
        let pole = normalize(&[0.0, 0.0, 1.0]).unwrap();
        // every meridian passes through the pole; its deepest point is the
        // normal's own direction, not the pole
        assert_eq!(depth(&arr, &pole).unwrap(), 0.0);
        let deep = normalize(&[0.0, 1.0, 0.0]).unwrap();
        assert!(fabs(depth(&arr, &deep).unwrap() - FRAC_PI_2) < 1e-15);
    }

    #[test]
    fn depth_on_circle_is_zero() {
        let arr = apple_peel(2).unwrap();
        let u = normalize(&[1.0, 0.0, 0.0]).unwrap();
        assert!(depth(&arr, &u).unwrap() < 1e-15);
    }

    #[test]
    fn depth_equator_bisector() {
        let arr = apple_peel(2).unwrap();
        let u = normalize(&[cos(FRAC_PI_4), sin(FRAC_PI_4), 0.0]).unwrap();
        assert!(fabs(depth(&arr, &u).unwrap() - FRAC_PI_4) < 1e-12);
    }

    #[test]
    fn exact_2d_perpendicular_lines() {
        let arr = Arrangement::new(alloc::vec![
            normalize(&[1.0, 0.0]).unwrap(),
            normalize(&[0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        assert!(fabs(covering_radius_2d_exact(&arr).unwrap() - FRAC_PI_4) < 1e-15);
    }

    #[test]
    fn exact_2d_three_evenly_spaced() {
        let arr = Arrangement::new(
            (0..3)
                .map(|k| {
                    let a = k as f64 * PI / 3.0;
                    normalize(&[cos(a), sin(a)]).unwrap()
                })
                .collect(),
        )
        .unwrap();
        assert!(fabs(covering_radius_2d_exact(&arr).unwrap() - PI / 6.0) < 1e-15);
    }

    #[test]
    fn exact_2d_single_line() {
        let arr = Arrangement::new(alloc::vec![normalize(&[1.0, 0.0]).unwrap()]).unwrap();
        assert!(fabs(covering_radius_2d_exact(&arr).unwrap() - FRAC_PI_2) < 1e-15);
    }

    #[test]
    fn exact_2d_wrong_dim() {
        let arr = apple_peel(2).unwrap();
        assert!(matches!(
            covering_radius_2d_exact(&arr),
            Err(Error::WrongDimension { expected: 2, .. })
        ));
    }

    #[test]
    fn circle_grid_matches_exact() {
        let arr = Arrangement::new(alloc::vec![
            normalize(&[1.0, 0.0]).unwrap(),
            normalize(&[0.0, 1.0]).unwrap(),
        ])
        .unwrap();
        let cert = GridCertificate::uniform_circle_s1(2000);
        let rep = covering_radius(&arr, &cert).unwrap();
        let exact = covering_radius_2d_exact(&arr).unwrap();
        assert!(rep.lo <= exact + 1e-12 && exact <= rep.hi + 1e-12);
        assert!(fabs(rep.lo - exact) <= cert.mesh);
    }

    #[test]
    fn single_circle_radius_bracket() {
        let arr = apple_peel(1).unwrap();
        let cert = GridCertificate::fibonacci_s2(20_000);
        let rep = covering_radius(&arr, &cert).unwrap();
        assert!(rep.lo <= FRAC_PI_2 + 1e-12 && FRAC_PI_2 <= rep.hi + 1e-12);
        assert!(FRAC_PI_2 - rep.lo <= cert.mesh);
    }

    #[test]
    fn apple_peel_three_radius() {
        let arr = apple_peel(3).unwrap();
        let cert = GridCertificate::fibonacci_s2(40_000);
        let rep = covering_radius(&arr, &cert).unwrap();
        let expect = PI / 6.0;
        assert!(
            fabs(rep.lo - expect) <= cert.mesh,
            "lo {} expect {}",
            rep.lo,
            expect
        );
    }

    #[test]
    fn zones_cover_boundary_and_shortfall() {
        let arr = apple_peel(2).unwrap();
        let cert = GridCertificate::fibonacci_s2(40_000);
        // half-width exactly the covering radius: closed zones cover
        let covered = zones_cover(
            &ZoneSet::equal_widths(arr.clone(), FRAC_PI_4).unwrap(),
            &cert,
        )
        .unwrap();
        assert!(covered.covers);
        assert!(covered.witness.is_none());

        let short = zones_cover(
            &ZoneSet::equal_widths(arr.clone(), FRAC_PI_4 - 0.01).unwrap(),
            &cert,
        )
        .unwrap();
        assert!(!short.covers);
        let w = short.witness.expect("uncovered witness");
        let d = depth(&arr, &w).unwrap();
        assert!(d > FRAC_PI_4 - 0.01, "witness depth {d}");
    }

    #[test]
    fn full_sphere_zone_covers_anything() {
        let arr = apple_peel(3).unwrap();
        let mut widths = alloc::vec![0.01, 0.01, FRAC_PI_2];
        let cert = GridCertificate::fibonacci_s2(20_000);
        let rep = zones_cover(&ZoneSet::new(arr.clone(), widths.clone()).unwrap(), &cert);
        assert!(rep.unwrap().covers);
        widths[2] = 0.01;
        let rep = zones_cover(&ZoneSet::new(arr, widths).unwrap(), &cert).unwrap();
        assert!(!rep.covers);
    }

    #[test]
    fn method_dimension_checks() {
        let arr2 = crate::sphere::random_arrangement(2, 3, 1).unwrap();
        let arr5 = crate::sphere::random_arrangement(5, 3, 1).unwrap();
        assert!(matches!(
            covering_radius(&arr2, &GridCertificate::fibonacci_s2(100)),
            Err(Error::WrongDimension { expected: 3, .. })
        ));
        assert!(matches!(
            covering_radius(&arr5, &GridCertificate::fibonacci_s2(100)),
            Err(Error::UncertifiedDimension(5))
        ));
        let rep = covering_radius(&arr5, &GridCertificate::heuristic(2000, 3)).unwrap();
        assert!(!rep.certified);
        assert!(rep.hi.is_infinite());
        assert!(rep.lo > 0.0);
    }

    #[test]
    fn fibonacci_mesh_scales() {
        let m1 = GridCertificate::fibonacci_s2(10_000).mesh;
        let m2 = GridCertificate::fibonacci_s2(40_000).mesh;
        assert!(m1 > 0.0 && m2 > 0.0);
        // quadrupling the samples roughly halves the mesh
        assert!(m2 < m1 * 0.7, "m1 {m1} m2 {m2}");
    }
}
