//! Deep points and covering radii for arrangements of great circles
//! (hyperplanes through the origin) on the unit sphere.
//!
//! The crate has four layers:
//!
//! - [`sphere`]: unit vectors, arrangements, distances, and generators
//!   (including the evenly spaced "apple peel" family of meridians).
//! - [`solver`]: multistart Riemannian ascent maximizing the product of
//!   absolute inner products against all normals, plus the depth bound
//!   check `min_i |<v_i, u*>| >= sin(pi/2n)` at the maximizer.
//! - [`coverage`]: covering radius of an arrangement and zone cover
//!   decisions, with certified grid brackets on S^1/S^2 and an exact
//!   2D oracle.
//! - [`prooflab`]: the trigonometric-polynomial diagnostics behind the
//!   depth bound — the curve `u_theta`, the ratio polynomial `f`,
//!   Fourier fitting, factorization residuals, and sign-change counts.
//!
//! The crate is `no_std` (with `alloc`); all transcendental math goes
//! through `libm`. Every operation is a pure function of its inputs and
//! all randomness is derived from explicit seeds, so results are
//! reproducible across runs and thread counts. The optional `parallel`
//! feature evaluates solver restarts and grid sweeps on rayon with a
//! reduction order that matches serial execution bit for bit.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod coverage;
pub mod prooflab;
pub mod rng;
pub mod solver;
pub mod sphere;

pub use error::Error;

/// Convenience alias used throughout the crate.
pub type Result<T> = core::result::Result<T, Error>;
