use core::fmt;

/// Errors reported by geometry, solver, coverage, and diagnostic operations.
#[derive(Clone, Debug, PartialEq)]
pub enum Error {
    /// Input vector has norm below the representable threshold.
    ZeroVector,
    /// Operands live in different ambient dimensions.
    DimensionMismatch { expected: usize, got: usize },
    /// Ambient dimension must be at least 2.
    InvalidDimension(usize),
    /// Arrangement must contain at least one normal.
    InvalidCount(usize),
    /// Zone half-widths must lie in (0, pi/2].
    InvalidHalfWidth(f64),
    /// A point sits on (or numerically on) the hyperplane with this index.
    OnHyperplane { index: usize },
    /// Every multistart draw landed on a hyperplane.
    NoValidStart,
    /// Operation requires a specific ambient dimension.
    WrongDimension { expected: usize, got: usize },
    /// Certified grid methods only exist for d in {2, 3}.
    UncertifiedDimension(usize),
    /// `construct_w` requires |<v_1, u>| < sin(pi/2n).
    HypothesisNotViolated { inner: f64, bound: f64 },
    /// `construct_w` requires <v_1, u> != 0; nothing to shorten.
    DegenerateOrthogonal,
    /// Factorization diagnostics require a critical point.
    NotCritical { residual: f64 },
    /// Fourier fitting needs at least 2m+1 equispaced samples.
    InsufficientSamples { got: usize, need: usize },
    /// Sign-change counting needs at least 16n grid points.
    GridTooCoarse { got: usize, need: usize },
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::ZeroVector => write!(f, "cannot normalize a (near-)zero vector"),
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected}, got {got}")
            }
            Error::InvalidDimension(d) => write!(f, "invalid ambient dimension {d} (need d >= 2)"),
            Error::InvalidCount(n) => write!(f, "invalid normal count {n} (need n >= 1)"),
            Error::InvalidHalfWidth(w) => {
                write!(f, "invalid half-width {w} (need 0 < w <= pi/2)")
            }
            Error::OnHyperplane { index } => {
                write!(f, "point lies on hyperplane {index} (|inner| <= 1e-14)")
            }
            Error::NoValidStart => write!(f, "all multistart draws landed on a hyperplane"),
            Error::WrongDimension { expected, got } => {
                write!(f, "operation requires dimension {expected}, got {got}")
            }
            Error::UncertifiedDimension(d) => {
                write!(f, "no certified grid method for dimension {d}")
            }
            Error::HypothesisNotViolated { inner, bound } => write!(
                f,
                "|inner product| {inner} does not violate the bound {bound}"
            ),
            Error::DegenerateOrthogonal => {
                write!(f, "inner product is zero; shortening construction undefined")
            }
            Error::NotCritical { residual } => {
                write!(f, "point is not critical (identity residual {residual})")
            }
            Error::InsufficientSamples { got, need } => {
                write!(f, "need at least {need} samples, got {got}")
            }
            Error::GridTooCoarse { got, need } => {
                write!(f, "need a grid of at least {need} points, got {got}")
            }
        }
    }
}

impl core::error::Error for Error {}
