//! Unit vectors, arrangements of hyperplanes through the origin, and
//! arrangement generators.
//!
//! A hyperplane through the origin is identified by its unit normal; on
//! S^2 the same normal identifies a great circle. Normals are stored as
//! given: `v` and `-v` describe the same hyperplane and are deliberately
//! not deduplicated, since every quantity downstream is invariant under
//! flipping the sign of any normal.

use alloc::vec;
use alloc::vec::Vec;

use libm::{acos, asin, cos, fabs, sin, sqrt};
use rand_core::RngCore;

use crate::error::Error;
use crate::rng;
use crate::Result;

/// Unit-norm tolerance; constructors renormalize, so stored vectors sit
/// well inside this band.
pub const UNIT_NORM_TOL: f64 = 1e-12;

/// Norm threshold below which a vector counts as zero.
pub const ZERO_NORM_THRESHOLD: f64 = 1e-300;

/// A point (equivalently, a direction) on the unit sphere in R^d, d >= 2.
#[derive(Clone, Debug, PartialEq)]
pub struct UnitVector {
    coords: Vec<f64>,
}

impl UnitVector {
    /// Normalizes `coords` onto the unit sphere.
    pub fn new(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::InvalidDimension(coords.len()));
        }
        let n = norm(&coords);
        if !(n > ZERO_NORM_THRESHOLD) {
            return Err(Error::ZeroVector);
        }
        // vectors already unit to a few ulps are kept bit-for-bit, so
        // serialized points round-trip exactly; anything sloppier is
        // renormalized to protect downstream inner products
        let coords = if fabs(n - 1.0) <= 4.0 * f64::EPSILON {
            coords
        } else {
            coords.iter().map(|x| x / n).collect()
        };
        Ok(UnitVector { coords })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Euclidean inner product. Dimensions must already match.
    pub fn dot(&self, other: &UnitVector) -> f64 {
        debug_assert_eq!(self.dim(), other.dim());
        dot(&self.coords, &other.coords)
    }

    pub fn negated(&self) -> UnitVector {
        UnitVector {
            coords: self.coords.iter().map(|x| -x).collect(),
        }
    }
}

/// Normalizes a raw vector onto the unit sphere.
pub fn normalize(v: &[f64]) -> Result<UnitVector> {
    UnitVector::new(v.to_vec())
}

pub fn dot(a: &[f64], b: &[f64]) -> f64 {
    debug_assert_eq!(a.len(), b.len());
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

pub fn norm(v: &[f64]) -> f64 {
    sqrt(dot(v, v))
}

/// Component of `x` orthogonal to `u`: `x - <x,u> u`.
pub fn tangent_part(x: &[f64], u: &UnitVector) -> Vec<f64> {
    let c = dot(x, u.coords());
    x.iter()
        .zip(u.coords())
        .map(|(xi, ui)| xi - c * ui)
        .collect()
}

/// An ordered list of unit normals in a common ambient dimension.
#[derive(Clone, Debug, PartialEq)]
pub struct Arrangement {
    dim: usize,
    normals: Vec<UnitVector>,
}

impl Arrangement {
    pub fn new(normals: Vec<UnitVector>) -> Result<Self> {
        if normals.is_empty() {
            return Err(Error::InvalidCount(0));
        }
        let dim = normals[0].dim();
        for v in &normals {
            if v.dim() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    got: v.dim(),
                });
            }
        }
        Ok(Arrangement { dim, normals })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of hyperplanes.
    pub fn len(&self) -> usize {
        self.normals.len()
    }

    pub fn is_empty(&self) -> bool {
        false // n >= 1 by construction
    }

    pub fn normals(&self) -> &[UnitVector] {
        &self.normals
    }

    pub fn normal(&self, i: usize) -> &UnitVector {
        &self.normals[i]
    }

    fn check_dim(&self, u: &UnitVector) -> Result<()> {
        if u.dim() != self.dim {
            return Err(Error::DimensionMismatch {
                expected: self.dim,
                got: u.dim(),
            });
        }
        Ok(())
    }
}

/// An arrangement with one zone half-width per normal.
#[derive(Clone, Debug, PartialEq)]
pub struct ZoneSet {
    arrangement: Arrangement,
    half_widths: Vec<f64>,
}

impl ZoneSet {
    pub fn new(arrangement: Arrangement, half_widths: Vec<f64>) -> Result<Self> {
        if half_widths.len() != arrangement.len() {
            return Err(Error::InvalidCount(half_widths.len()));
        }
        for &w in &half_widths {
            if !(w > 0.0 && w <= core::f64::consts::FRAC_PI_2) {
                return Err(Error::InvalidHalfWidth(w));
            }
        }
        Ok(ZoneSet {
            arrangement,
            half_widths,
        })
    }

    /// Equal half-width `w` for every zone.
    pub fn equal_widths(arrangement: Arrangement, half_width: f64) -> Result<Self> {
        let n = arrangement.len();
        ZoneSet::new(arrangement, vec![half_width; n])
    }

    pub fn arrangement(&self) -> &Arrangement {
        &self.arrangement
    }

    pub fn half_widths(&self) -> &[f64] {
        &self.half_widths
    }
}

/// Euclidean distance from the sphere point `u` to the hyperplane with
/// normal `v`: `|<v, u>|`.
pub fn hyperplane_distance(u: &UnitVector, v: &UnitVector) -> Result<f64> {
    if u.dim() != v.dim() {
        return Err(Error::DimensionMismatch {
            expected: v.dim(),
            got: u.dim(),
        });
    }
    Ok(fabs(u.dot(v)))
}

/// Angular distance from `u` to the great circle/sphere with normal `v`:
/// `arcsin |<v, u>|` in `[0, pi/2]`.
pub fn circle_distance(u: &UnitVector, v: &UnitVector) -> Result<f64> {
    let d = hyperplane_distance(u, v)?;
    Ok(asin(d.min(1.0)))
}

/// Geodesic (great-circle) distance between two sphere points.
pub fn geodesic_distance(a: &UnitVector, b: &UnitVector) -> f64 {
    acos(a.dot(b).clamp(-1.0, 1.0))
}

/// `n` evenly spaced meridians through the north and south poles of S^2.
///
/// Meridian `k` has normal `(-sin(k pi/n), cos(k pi/n), 0)`, so every
/// generated great circle contains `(0, 0, +-1)` exactly.
pub fn apple_peel(n: usize) -> Result<Arrangement> {
    if n < 1 {
        return Err(Error::InvalidCount(n));
    }
    let mut normals = Vec::with_capacity(n);
    for k in 0..n {
        let a = k as f64 * core::f64::consts::PI / n as f64;
        normals.push(UnitVector::new(vec![-sin(a), cos(a), 0.0])?);
    }
    Arrangement::new(normals)
}

/// One direction uniform on S^{d-1}: d standard normals, renormalized.
pub fn random_unit_vector(d: usize, rng: &mut impl RngCore) -> UnitVector {
    loop {
        let v: Vec<f64> = (0..d).map(|_| rng::standard_normal(rng)).collect();
        if norm(&v) > 1e-6 {
            return UnitVector::new(v).expect("gaussian draw is nonzero");
        }
    }
}

/// A unit tangent at `u`: gaussian draw projected to `u`-perp, normalized.
pub fn random_tangent(u: &UnitVector, rng: &mut impl RngCore) -> UnitVector {
    loop {
        let v: Vec<f64> = (0..u.dim()).map(|_| rng::standard_normal(rng)).collect();
        let t = tangent_part(&v, u);
        if norm(&t) > 1e-6 {
            return UnitVector::new(t).expect("tangent is nonzero");
        }
    }
}

/// `n` independent uniform directions on S^{d-1}, deterministic in `seed`.
pub fn random_arrangement(d: usize, n: usize, seed: u64) -> Result<Arrangement> {
    if d < 2 {
        return Err(Error::InvalidDimension(d));
    }
    if n < 1 {
        return Err(Error::InvalidCount(n));
    }
    let mut rng = rng::stream(seed);
    let normals = (0..n).map(|_| random_unit_vector(d, &mut rng)).collect();
    Arrangement::new(normals)
}

/// Smallest inner product magnitude of `u` against all normals.
pub fn min_abs_inner(arr: &Arrangement, u: &UnitVector) -> Result<f64> {
    arr.check_dim(u)?;
    let mut m = f64::INFINITY;
    for v in arr.normals() {
        m = m.min(fabs(v.dot(u)));
    }
    Ok(m)
}

impl Arrangement {
    /// Inner products `<v_i, u>` in normal order.
    pub fn inner_products(&self, u: &UnitVector) -> Result<Vec<f64>> {
        self.check_dim(u)?;
        Ok(self.normals.iter().map(|v| v.dot(u)).collect())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use core::f64::consts::{FRAC_PI_2, PI};

    #[test]
    fn normalize_scales() {
        let u = normalize(&[3.0, 4.0]).unwrap();
        assert!(fabs(u.coords()[0] - 0.6) < 1e-15);
        assert!(fabs(u.coords()[1] - 0.8) < 1e-15);
    }

    #[test]
    fn normalize_identity_case() {
        let u = normalize(&[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(u.coords(), &[1.0, 0.0, 0.0]);
    }

    #[test]
    fn normalize_rejects_zero() {
        assert_eq!(normalize(&[0.0, 0.0]), Err(Error::ZeroVector));
    }

    #[test]
    fn normalize_rejects_d1() {
        assert_eq!(normalize(&[1.0]), Err(Error::InvalidDimension(1)));
    }

    #[test]
    fn hyperplane_distance_cases() {
        let e1 = normalize(&[1.0, 0.0]).unwrap();
        let e2 = normalize(&[0.0, 1.0]).unwrap();
        assert_eq!(hyperplane_distance(&e1, &e2).unwrap(), 0.0);

        let pole = normalize(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(hyperplane_distance(&pole, &pole).unwrap(), 1.0);

        let s = 1.0 / sqrt(2.0);
        let mid = normalize(&[s, 0.0, s]).unwrap();
        assert!(fabs(hyperplane_distance(&mid, &pole).unwrap() - s) < 1e-15);
    }

    #[test]
    fn hyperplane_distance_dim_mismatch() {
        let a = normalize(&[1.0, 0.0]).unwrap();
        let b = normalize(&[1.0, 0.0, 0.0]).unwrap();
        assert!(matches!(
            hyperplane_distance(&a, &b),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn circle_distance_cases() {
        let eq = normalize(&[1.0, 0.0, 0.0]).unwrap();
        let pole_n = normalize(&[0.0, 0.0, 1.0]).unwrap();
        assert_eq!(circle_distance(&eq, &pole_n).unwrap(), 0.0);
        assert!(fabs(circle_distance(&pole_n, &pole_n).unwrap() - FRAC_PI_2) < 1e-15);

        // arcsin|sin(lambda)| recovers lambda on the equator
        let lam = PI / 6.0;
        let u = normalize(&[cos(lam), sin(lam), 0.0]).unwrap();
        let v = normalize(&[0.0, 1.0, 0.0]).unwrap();
        assert!(fabs(circle_distance(&u, &v).unwrap() - lam) < 1e-15);
    }

    #[test]
    fn apple_peel_small_cases() {
        let a1 = apple_peel(1).unwrap();
        assert_eq!(a1.len(), 1);
        assert!(fabs(a1.normal(0).coords()[1] - 1.0) < 1e-15);

        let a2 = apple_peel(2).unwrap();
        assert!(fabs(a2.normal(0).coords()[1] - 1.0) < 1e-15);
        assert!(fabs(a2.normal(1).coords()[0] + 1.0) < 1e-15);

        // circles pass through the poles: z-component of every normal is 0
        let pole = normalize(&[0.0, 0.0, 1.0]).unwrap();
        for n in [1usize, 2, 4, 7] {
            for v in apple_peel(n).unwrap().normals() {
                assert_eq!(v.dot(&pole), 0.0);
            }
        }
    }

    #[test]
    fn apple_peel_pairwise_angles() {
        let a = apple_peel(4).unwrap();
        assert_eq!(a.len(), 4);
        for i in 0..4 {
            for j in 0..4 {
                let ang = acos(a.normal(i).dot(a.normal(j)).clamp(-1.0, 1.0));
                let quarter = ang / (PI / 4.0);
                assert!(fabs(quarter - libm::round(quarter)) < 1e-9);
            }
        }
    }

    #[test]
    fn apple_peel_rejects_zero() {
        assert_eq!(apple_peel(0).unwrap_err(), Error::InvalidCount(0));
    }

    #[test]
    fn random_arrangement_deterministic_and_unit() {
        let a = random_arrangement(3, 5, 7).unwrap();
        let b = random_arrangement(3, 5, 7).unwrap();
        assert_eq!(a, b);
        for v in a.normals() {
            assert!(fabs(norm(v.coords()) - 1.0) < UNIT_NORM_TOL);
        }
        assert!(matches!(
            random_arrangement(1, 5, 7),
            Err(Error::InvalidDimension(1))
        ));
    }

    #[test]
    fn random_arrangement_mean_is_small() {
        // law-of-large-numbers sanity bound on the coordinate mean
        let a = random_arrangement(2, 10_000, 1).unwrap();
        let mut mean = [0.0f64; 2];
        for v in a.normals() {
            mean[0] += v.coords()[0];
            mean[1] += v.coords()[1];
        }
        let n = a.len() as f64;
        let mag = sqrt((mean[0] / n).powi(2) + (mean[1] / n).powi(2));
        assert!(mag <= 0.05, "empirical mean magnitude {mag}");
    }

    #[test]
    fn zone_set_validation() {
        let arr = apple_peel(2).unwrap();
        assert!(ZoneSet::equal_widths(arr.clone(), FRAC_PI_2).is_ok());
        assert!(matches!(
            ZoneSet::equal_widths(arr.clone(), 0.0),
            Err(Error::InvalidHalfWidth(_))
        ));
        assert!(matches!(
            ZoneSet::new(arr, vec![0.1]),
            Err(Error::InvalidCount(1))
        ));
    }
}
