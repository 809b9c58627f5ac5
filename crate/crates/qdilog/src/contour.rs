use num_complex::Complex64;

use crate::error::QdError;

/// Admissible contour data for the slanted integral: the parameter h with
/// Re(h) >= 0, the half-circle radius a, and the slant angle theta.
///
/// The radius must satisfy 0 < a < min(1, 1/|h|) so the arc stays inside the
/// first ring of integrand poles, and the angle obeys the sign rule
/// theta in (-pi/2, 0] for Im(h) > 0, theta in [0, pi/2) for Im(h) < 0,
/// with theta = 0 forbidden when Re(h) = 0 because the integrand then has
/// poles on the real axis.
#[derive(Debug, Clone, Copy)]
pub struct ContourSpec {
    h: Complex64,
    a: f64,
    theta: f64,
}

impl ContourSpec {
    pub fn new(h: Complex64, a: f64, theta: f64) -> Result<Self, QdError> {
        if h == Complex64::new(0.0, 0.0) {
            return Err(QdError::ZeroH);
        }
        if h.re < 0.0 {
            return Err(QdError::UnsupportedH(h));
        }
        let bad = QdError::BadContour { h, a, theta };
        if !(a > 0.0 && a < 1.0_f64.min(1.0 / h.norm())) {
            return Err(bad);
        }
        let quarter = std::f64::consts::FRAC_PI_2;
        let angle_ok = if h.im > 0.0 {
            theta > -quarter && theta <= 0.0
        } else if h.im < 0.0 {
            theta >= 0.0 && theta < quarter
        } else {
            theta > -quarter && theta < quarter
        };
        if !angle_ok || (h.re == 0.0 && theta == 0.0) {
            return Err(bad);
        }
        Ok(ContourSpec { h, a, theta })
    }

    /// Default contour for a given h: half the maximal radius, with the
    /// contour unrotated when Re(h) > 0 and slanted by pi/4 away from the
    /// real-axis poles when h is purely imaginary.
    pub fn default_for(h: Complex64) -> Result<Self, QdError> {
        if h == Complex64::new(0.0, 0.0) {
            return Err(QdError::ZeroH);
        }
        if h.re < 0.0 {
            return Err(QdError::UnsupportedH(h));
        }
        let a = 0.5 * 1.0_f64.min(1.0 / h.norm());
        let theta = if h.re > 0.0 {
            0.0
        } else if h.im > 0.0 {
            -std::f64::consts::FRAC_PI_4
        } else {
            std::f64::consts::FRAC_PI_4
        };
        ContourSpec::new(h, a, theta)
    }

    pub fn h(&self) -> Complex64 {
        self.h
    }

    pub fn a(&self) -> f64 {
        self.a
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    /// Half-width of the convergence strip in the rotated frame:
    /// pi (cos theta + Re(h e^{i theta})). Positive for every admissible
    /// contour.
    pub fn strip_half_width(&self) -> f64 {
        let rot = Complex64::from_polar(1.0, self.theta);
        std::f64::consts::PI * (self.theta.cos() + (self.h * rot).re)
    }

    /// Whether z lies inside the convergence strip of this contour.
    pub fn contains(&self, z: Complex64) -> bool {
        let rot = Complex64::from_polar(1.0, self.theta);
        (rot * z).im.abs() < self.strip_half_width()
    }
}
