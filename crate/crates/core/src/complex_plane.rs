//! Operator coefficients, the spectral symbol `w`, the rotated-branch-cut square
//! root and the invariance map `ν`, plus classification of points against the
//! spectral region `D⁺ = {Re w < 0} ∩ {Im k > 0}`.

use crate::C64;
use std::f64::consts::PI;

/// Default rotation of the branch cut away from the contour.
pub const DEFAULT_EPSILON: f64 = PI / 100.0;

/// Absolute threshold under which `Re w` is treated as zero (on the region boundary).
pub const BOUNDARY_TOL: f64 = 1e-12;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ParamError {
    #[error("alpha must be nonzero and finite, got {0}")]
    BadAlpha(f64),
    #[error("beta must be finite, got {0}")]
    BadBeta(f64),
    #[error("branch-cut rotation must satisfy 0 < epsilon < pi/8, got {0}")]
    BadEpsilon(f64),
}

/// Coefficients of the spatial operator `-i(α ∂_x⁴ + β ∂_x²)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SpectralParams {
    alpha: f64,
    beta: f64,
}

impl SpectralParams {
    pub fn new(alpha: f64, beta: f64) -> Result<Self, ParamError> {
        if alpha == 0.0 || !alpha.is_finite() {
            return Err(ParamError::BadAlpha(alpha));
        }
        if !beta.is_finite() {
            return Err(ParamError::BadBeta(beta));
        }
        Ok(Self { alpha, beta })
    }

    /// α = β = 1.
    pub fn standard() -> Self {
        Self { alpha: 1.0, beta: 1.0 }
    }

    /// α = 1, β = 0 (pure biharmonic).
    pub fn biharmonic() -> Self {
        Self { alpha: 1.0, beta: 0.0 }
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    /// β/α, the square of the invariance-map branch points.
    pub fn ratio(&self) -> f64 {
        self.beta / self.alpha
    }

    /// Level `c = β/(2α)` of the hyperbola `a² - b² = c` bounding the region.
    pub fn hyperbola_level(&self) -> f64 {
        self.beta / (2.0 * self.alpha)
    }
}

/// The spectral symbol `w(k) = -i(α k⁴ - β k²)`.
pub fn spectral_w(k: C64, p: &SpectralParams) -> C64 {
    let k2 = k * k;
    let k4 = k2 * k2;
    -C64::i() * (p.alpha * k4 - p.beta * k2)
}

/// `Re w(k)` through its factorization `2ab(2α(a² - b²) - β)` for `k = a + ib`.
///
/// Exact sign information even where the direct formula loses digits.
pub fn re_w_factored(k: C64, p: &SpectralParams) -> f64 {
    let (a, b) = (k.re, k.im);
    2.0 * a * b * (2.0 * p.alpha * (a * a - b * b) - p.beta)
}

/// Argument window `[arg_lo, arg_lo + 2π)` of the rotated square root.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BranchCut {
    epsilon: f64,
    arg_lo: f64,
}

impl BranchCut {
    pub fn new(epsilon: f64, arg_lo: f64) -> Result<Self, ParamError> {
        if !(epsilon > 0.0 && epsilon < PI / 8.0) {
            return Err(ParamError::BadEpsilon(epsilon));
        }
        Ok(Self { epsilon, arg_lo })
    }

    /// Default window per sign configuration of (α, β), with [ε, 2π+ε) for every α > 0
    /// (this is the window whose β → 0 limit reproduces the piecewise ±ik invariance map).
    pub fn for_params(p: &SpectralParams) -> Self {
        Self::for_params_with_epsilon(p, DEFAULT_EPSILON)
    }

    pub fn for_params_with_epsilon(p: &SpectralParams, epsilon: f64) -> Self {
        let arg_lo = if p.alpha > 0.0 {
            epsilon
        } else if p.beta < 0.0 {
            -PI - epsilon
        } else {
            -epsilon
        };
        Self { epsilon, arg_lo }
    }

    /// Alternate window [-π+ε, π+ε) for α > 0, β > 0. Selectable but unvalidated:
    /// the validated analysis is carried out under `for_params`.
    pub fn alt_for_params(p: &SpectralParams) -> Self {
        Self::alt_for_params_with_epsilon(p, DEFAULT_EPSILON)
    }

    pub fn alt_for_params_with_epsilon(p: &SpectralParams, epsilon: f64) -> Self {
        if p.alpha > 0.0 && p.beta > 0.0 {
            Self { epsilon, arg_lo: -PI + epsilon }
        } else {
            Self::for_params_with_epsilon(p, epsilon)
        }
    }

    pub fn epsilon(&self) -> f64 {
        self.epsilon
    }

    pub fn arg_lo(&self) -> f64 {
        self.arg_lo
    }

    /// Reduce the argument of `z` into `[arg_lo, arg_lo + 2π)`.
    pub fn reduce_arg(&self, z: C64) -> f64 {
        let th = z.im.atan2(z.re);
        let shift = ((self.arg_lo - th) / (2.0 * PI)).ceil();
        th + 2.0 * PI * shift
    }
}

/// Square root with the argument of `z` reduced into the window of `cut`:
/// `|z|^(1/2) · exp(i·arg z / 2)`. Total on ℂ; `branch_sqrt(0) = 0`.
pub fn branch_sqrt(z: C64, cut: &BranchCut) -> C64 {
    if z == C64::new(0.0, 0.0) {
        return z;
    }
    let r = z.norm().sqrt();
    let half = 0.5 * cut.reduce_arg(z);
    C64::new(r * half.cos(), r * half.sin())
}

/// The invariance map `ν(k) = √(β/α - k²)` under the rotated cut; it satisfies
/// `ν(k)² = β/α - k²` and therefore `w(ν(k)) = w(k)`.
pub fn invariance_nu(k: C64, p: &SpectralParams, cut: &BranchCut) -> C64 {
    branch_sqrt(C64::new(p.ratio(), 0.0) - k * k, cut)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum RegionClass {
    InsideDPlus,
    OnBoundary,
    Outside,
}

/// Classify `k` against `D⁺` by the sign of `Re w(k)` and `Im k`.
pub fn region_classify(k: C64, p: &SpectralParams) -> RegionClass {
    let re_w = re_w_factored(k, p);
    if re_w.abs() <= BOUNDARY_TOL {
        RegionClass::OnBoundary
    } else if re_w < 0.0 && k.im > 0.0 {
        RegionClass::InsideDPlus
    } else {
        RegionClass::Outside
    }
}
