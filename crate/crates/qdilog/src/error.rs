use num_complex::Complex64;
use thiserror::Error;

/// Errors raised by the dilogarithm evaluators.
#[derive(Debug, Error)]
pub enum QdError {
    #[error("parameter h must be nonzero")]
    ZeroH,
    #[error("h = {0} has negative real part and is not a negative real, so no inversion convention applies")]
    UnsupportedH(Complex64),
    #[error("contour parameters a = {a}, theta = {theta} are not admissible for h = {h}")]
    BadContour { h: Complex64, a: f64, theta: f64 },
    #[error("z = {z} lies within {dist:.3e} of the pole at {pole}")]
    NearPole {
        z: Complex64,
        pole: Complex64,
        dist: f64,
    },
    #[error("|q| = {0} is not inside the unit disc")]
    BaseNotInDisc(f64),
    #[error("product factor 1 + q^(2n-1) z vanishes at n = {n}")]
    FactorVanishes { n: usize },
    #[error("hbar = {0} must be positive")]
    NonPositiveHbar(f64),
    #[error("contour radius a = {0} must lie in (0, 1)")]
    BadFlatRadius(f64),
    #[error("quadrature did not converge: estimated error {residual:.3e} over {panels} panels")]
    QuadratureStalled { residual: f64, panels: usize },
    #[error("argument needed {0} difference-equation shifts to reach the strip; giving up")]
    TooManyShifts(usize),
}
