//! Quadrature engines: adaptive Gauss-Kronrod (the brute-force oracle), a
//! Filon-type rule for quartic-phase oscillatory integrands, Laplace-tail
//! truncation, the model oscillatory integrals, and Van der Corput certificates.

mod adaptive;
mod filon;
mod osc;
mod phase;
mod vdc;

pub use adaptive::{adaptive_quad, adaptive_quad_breakpoints, laplace_tail};
pub use filon::{filon_segment, filon_segment_breakpoints};
pub use osc::{benartzi_bound_check, oscillatory_i, OscKind};
pub use phase::PhaseSpec;
pub use vdc::{vdc_certificate, CaseTag, VdcCertificate, VdcKind};

pub(crate) use osc::{truncate_tail, AmpDerivs};

use crate::C64;

/// Value, accumulated error estimate, and panel count of a quadrature run.
#[derive(Debug, Clone, Copy)]
pub struct QuadResult {
    pub value: C64,
    pub error_estimate: f64,
    pub panels_used: usize,
}

impl QuadResult {
    pub fn zero() -> Self {
        QuadResult { value: C64::new(0.0, 0.0), error_estimate: 0.0, panels_used: 0 }
    }

    pub fn combine(self, other: QuadResult) -> QuadResult {
        QuadResult {
            value: self.value + other.value,
            error_estimate: self.error_estimate + other.error_estimate,
            panels_used: self.panels_used + other.panels_used,
        }
    }
}

#[derive(Debug, thiserror::Error)]
pub enum QuadError {
    #[error("maximum subdivision count {limit} exceeded (error estimate {achieved:e}, tol {tol:e})")]
    MaxSubdivisions { limit: usize, achieved: f64, tol: f64 },
    #[error("panel limit {limit} exceeded (error estimate {achieved:e}, tol {tol:e})")]
    PanelLimit { limit: usize, achieved: f64, tol: f64 },
    #[error("bad parameter: {0}")]
    BadParameter(String),
}
