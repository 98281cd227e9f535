//! Boundary data presets, the time-side transform `g̃(κ,t) = ∫_0^t e^{κs} g(s) ds`,
//! and the spectral density `G(k;T)` entering the boundary integral operator.

pub mod psi;

use crate::cheb::{cc_weights, cgl_nodes};
use crate::complex_plane::{invariance_nu, spectral_w, BranchCut, SpectralParams};
use crate::oracle::spline::CubicSpline;
use crate::quadrature::QuadResult;
use crate::C64;
use std::f64::consts::PI;
use std::sync::Arc;

#[derive(Debug, thiserror::Error)]
pub enum TransformError {
    #[error("bad boundary datum: {0}")]
    BadDatum(String),
    #[error("t_upper must be positive, got {0}")]
    BadUpperLimit(f64),
    #[error("Re kappa > 0 not supported (growth), got {0}")]
    GrowingKernel(f64),
    #[error("transform did not reach requested tolerance: err {err:e} vs tol {tol:e}")]
    ToleranceNotMet { err: f64, tol: f64 },
    #[error("hat function does not decay at the grid edge: |hat| = {edge:e}, max = {max:e}")]
    InsufficientDecay { edge: f64, max: f64 },
    #[error(transparent)]
    Quad(#[from] crate::quadrature::QuadError),
}

/// `exp(-1/x)`-based smooth step: 0 for u ≤ 0, 1 for u ≥ 1, C^∞ monotone between.
pub fn smooth_step(u: f64) -> f64 {
    if u <= 0.0 {
        0.0
    } else if u >= 1.0 {
        1.0
    } else {
        let f = (-1.0 / u).exp();
        let g = (-1.0 / (1.0 - u)).exp();
        f / (f + g)
    }
}

#[derive(Debug, Clone)]
enum DatumKind {
    Zero,
    /// `A · exp(-((t-c)/σ)²) · χ(t)` with a C^∞ cutoff χ vanishing outside (0, T).
    GaussianBump { center: f64, width: f64, amplitude: C64, taper: f64 },
    /// `A · t^m (T-t)^m / (T/2)^{2m}`
    PolyBump { exponent: u32, amplitude: C64 },
    /// Cubic-spline interpolant of samples, tapered to compact support.
    FileSamples { re: Arc<CubicSpline>, im: Arc<CubicSpline>, t_lo: f64, t_hi: f64, taper: f64 },
}

/// A complex boundary function with compact support in `(0, T)`.
#[derive(Debug, Clone)]
pub struct BoundaryDatum {
    kind: DatumKind,
    t_final: f64,
}

impl BoundaryDatum {
    pub fn zero(t_final: f64) -> Self {
        BoundaryDatum { kind: DatumKind::Zero, t_final }
    }

    pub fn gaussian(
        t_final: f64,
        center: f64,
        width: f64,
        amplitude: C64,
    ) -> Result<Self, TransformError> {
        if !(t_final > 0.0) {
            return Err(TransformError::BadDatum(format!("T must be positive, got {t_final}")));
        }
        if !(center > 0.0 && center < t_final) {
            return Err(TransformError::BadDatum(format!(
                "data.support: center {center} outside (0, {t_final})"
            )));
        }
        if !(width > 0.0 && width < t_final) {
            return Err(TransformError::BadDatum(format!("data.support: bad width {width}")));
        }
        let taper = 0.5 * center.min(t_final - center);
        Ok(BoundaryDatum {
            kind: DatumKind::GaussianBump { center, width, amplitude, taper },
            t_final,
        })
    }

    pub fn poly(t_final: f64, exponent: u32, amplitude: C64) -> Result<Self, TransformError> {
        if !(t_final > 0.0) {
            return Err(TransformError::BadDatum(format!("T must be positive, got {t_final}")));
        }
        if exponent < 4 {
            return Err(TransformError::BadDatum(format!(
                "poly bump exponent must be at least 4, got {exponent}"
            )));
        }
        Ok(BoundaryDatum { kind: DatumKind::PolyBump { exponent, amplitude }, t_final })
    }

    /// Samples `(t_i, g_i)`; interpolated by cubic splines and tapered by the
    /// smooth cutoff so the support stays inside `(0, T)`.
    pub fn from_samples(
        t_final: f64,
        ts: &[f64],
        values: &[C64],
    ) -> Result<Self, TransformError> {
        if ts.len() != values.len() || ts.len() < 4 {
            return Err(TransformError::BadDatum("need at least 4 samples".into()));
        }
        if ts.windows(2).any(|w| w[0] >= w[1]) {
            return Err(TransformError::BadDatum("sample times must be increasing".into()));
        }
        let (t_lo, t_hi) = (ts[0], *ts.last().unwrap());
        if t_lo < 0.0 || t_hi > t_final {
            return Err(TransformError::BadDatum(format!(
                "data.support: samples span [{t_lo}, {t_hi}] outside [0, {t_final}]"
            )));
        }
        let re = CubicSpline::fit(ts, &values.iter().map(|v| v.re).collect::<Vec<_>>())
            .map_err(|e| TransformError::BadDatum(e.to_string()))?;
        let im = CubicSpline::fit(ts, &values.iter().map(|v| v.im).collect::<Vec<_>>())
            .map_err(|e| TransformError::BadDatum(e.to_string()))?;
        let taper = 0.05 * t_final;
        Ok(BoundaryDatum {
            kind: DatumKind::FileSamples { re: Arc::new(re), im: Arc::new(im), t_lo, t_hi, taper },
            t_final,
        })
    }

    pub fn t_final(&self) -> f64 {
        self.t_final
    }

    pub fn is_zero(&self) -> bool {
        matches!(self.kind, DatumKind::Zero)
    }

    pub fn eval(&self, t: f64) -> C64 {
        let t_final = self.t_final;
        match &self.kind {
            DatumKind::Zero => C64::new(0.0, 0.0),
            DatumKind::GaussianBump { center, width, amplitude, taper } => {
                if t <= 0.0 || t >= t_final {
                    return C64::new(0.0, 0.0);
                }
                let chi = smooth_step(t / taper) * smooth_step((t_final - t) / taper);
                let u = (t - center) / width;
                amplitude * (-u * u).exp() * chi
            }
            DatumKind::PolyBump { exponent, amplitude } => {
                if t <= 0.0 || t >= t_final {
                    return C64::new(0.0, 0.0);
                }
                let m = *exponent as i32;
                let scale = (0.5 * t_final).powi(2 * m);
                amplitude * (t.powi(m) * (t_final - t).powi(m) / scale)
            }
            DatumKind::FileSamples { re, im, t_lo, t_hi, taper } => {
                if t <= *t_lo || t >= *t_hi {
                    return C64::new(0.0, 0.0);
                }
                let chi = smooth_step(t / taper) * smooth_step((t_final - t) / taper);
                C64::new(re.eval(t), im.eval(t)) * chi
            }
        }
    }

    /// Sampled maximum modulus over the support.
    pub fn max_abs(&self) -> f64 {
        (0..=2000)
            .map(|i| self.eval(self.t_final * i as f64 / 2000.0).norm())
            .fold(0.0, f64::max)
    }

    /// `g̃(κ, t_upper)` for this datum.
    pub fn t_transform(&self, kappa: C64, t_upper: f64, tol: f64) -> Result<QuadResult, TransformError> {
        t_transform(|t| self.eval(t), kappa, t_upper, tol)
    }
}

/// Relative slack allowed on `Re κ` to absorb roundoff of on-contour symbols.
fn re_kappa_slack(kappa: C64) -> f64 {
    1e-8 * (1.0 + kappa.norm())
}

/// `g̃(κ, t_upper) = ∫_0^{t_upper} e^{κs} g(s) ds` by panelized Clenshaw-Curtis
/// with at least 4 panels per oscillation wavelength, refined by panel doubling
/// until the doubling estimate is below `tol` (relative, with an absolute floor).
pub fn t_transform(
    g: impl Fn(f64) -> C64,
    kappa: C64,
    t_upper: f64,
    tol: f64,
) -> Result<QuadResult, TransformError> {
    if !(t_upper > 0.0) {
        return Err(TransformError::BadUpperLimit(t_upper));
    }
    if kappa.re > re_kappa_slack(kappa) {
        return Err(TransformError::GrowingKernel(kappa.re));
    }

    let n = 8; // Clenshaw-Curtis degree per panel
    let nodes = cgl_nodes(n);
    let weights = cc_weights(n);

    let eval_with_panels = |panels: usize| -> (C64, f64) {
        let h = t_upper / panels as f64;
        let mut acc = C64::new(0.0, 0.0);
        let mut max_abs_g = 0.0_f64;
        for p in 0..panels {
            let mid = (p as f64 + 0.5) * h;
            let half = 0.5 * h;
            let mut panel = C64::new(0.0, 0.0);
            for (u, w) in nodes.iter().zip(&weights) {
                let s = mid + half * u;
                let gv = g(s);
                max_abs_g = max_abs_g.max(gv.norm());
                panel += (kappa * s).exp() * gv * *w;
            }
            acc += panel * half;
        }
        (acc, max_abs_g)
    };

    let base = 4 * ((kappa.im.abs() * t_upper / (2.0 * PI)).ceil() as usize).max(1);
    let mut panels = base;
    let (mut value, mut max_abs_g) = eval_with_panels(panels);
    let mut err;
    loop {
        let (refined, max_g) = eval_with_panels(panels * 2);
        max_abs_g = max_abs_g.max(max_g);
        err = (refined - value).norm();
        value = refined;
        panels *= 2;
        let floor = 1e-14 * (1.0 + t_upper) * max_abs_g.max(1e-300);
        if err <= tol * value.norm().max(floor) || err <= floor {
            break;
        }
        if panels > 1 << 22 {
            return Err(TransformError::ToleranceNotMet { err, tol });
        }
    }
    Ok(QuadResult { value, error_estimate: err, panels_used: panels })
}

/// Spectral density `G(k;t) = -2ik(k+ν)g̃₁(w,t) - 2kν(k+ν)g̃₀(w,t)` with `ν` and
/// `w` supplied by the caller (path-resolved or window-reduced).
pub fn spectral_g_with_nu(
    k: C64,
    nu: C64,
    w: C64,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    t_upper: f64,
    tol: f64,
) -> Result<C64, TransformError> {
    let mut acc = C64::new(0.0, 0.0);
    let common = -2.0 * k * (k + nu);
    if common.norm() == 0.0 {
        return Ok(acc);
    }
    if !g1.is_zero() {
        acc += C64::i() * common * g1.t_transform(w, t_upper, tol)?.value;
    }
    if !g0.is_zero() {
        acc += common * nu * g0.t_transform(w, t_upper, tol)?.value;
    }
    Ok(acc)
}

/// `G(k;T)` with the window-reduced invariance map.
pub fn spectral_g(
    k: C64,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    t_final: f64,
    p: &SpectralParams,
    cut: &BranchCut,
) -> Result<C64, TransformError> {
    let nu = invariance_nu(k, p, cut);
    let w = spectral_w(k, p);
    spectral_g_with_nu(k, nu, w, g0, g1, t_final, 1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_quad;

    #[test]
    fn zero_datum_transforms_to_zero() {
        let g = BoundaryDatum::zero(1.0);
        let r = g.t_transform(C64::new(0.0, 7.0), 1.0, 1e-10).unwrap();
        assert_eq!(r.value, C64::new(0.0, 0.0));
    }

    #[test]
    fn polynomial_closed_form() {
        // κ = 0, g = s(T-s) on [0, T]: integral T³/6.
        let t_final = 2.0;
        let r = t_transform(
            |s| C64::new(s * (t_final - s), 0.0),
            C64::new(0.0, 0.0),
            t_final,
            1e-12,
        )
        .unwrap();
        assert!((r.value.re - t_final.powi(3) / 6.0).abs() < 1e-10);
    }

    #[test]
    fn gaussian_matches_adaptive_oracle() {
        let g = BoundaryDatum::gaussian(1.0, 0.4, 0.1, C64::new(1.0, 0.5)).unwrap();
        let kappa = C64::new(0.0, 10.0);
        let r = g.t_transform(kappa, 1.0, 1e-11).unwrap();
        let want = adaptive_quad(|s| (kappa * s).exp() * g.eval(s), 0.0, 1.0, 1e-13).unwrap();
        assert!((r.value - want.value).norm() <= 1e-10 * want.value.norm().max(1e-8));
    }

    #[test]
    fn rejects_growth_and_bad_limits() {
        let g = BoundaryDatum::gaussian(1.0, 0.4, 0.1, C64::new(1.0, 0.0)).unwrap();
        assert!(g.t_transform(C64::new(0.5, 0.0), 1.0, 1e-8).is_err());
        assert!(g.t_transform(C64::new(0.0, 1.0), 0.0, 1e-8).is_err());
        assert!(g.t_transform(C64::new(0.0, 1.0), -1.0, 1e-8).is_err());
    }

    #[test]
    fn support_is_compact() {
        let g = BoundaryDatum::gaussian(1.0, 0.3, 0.08, C64::new(2.0, -1.0)).unwrap();
        let m = g.max_abs();
        assert!(m > 0.0);
        for &t in &[-0.5, 0.0, 1.0, 1.5] {
            assert!(g.eval(t).norm() <= 1e-12 * m);
        }
        let p = BoundaryDatum::poly(1.0, 4, C64::new(1.0, 0.0)).unwrap();
        assert!(p.eval(0.0).norm() == 0.0 && p.eval(1.0).norm() == 0.0);
        // peak of the poly bump is A at t = T/2
        assert!((p.eval(0.5).norm() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn smoothness_at_support_edges() {
        let g = BoundaryDatum::gaussian(1.0, 0.5, 0.1, C64::new(1.0, 0.0)).unwrap();
        // finite-difference first derivative is continuous (tiny) near t = 0 and t = T
        let h = 1e-5;
        for &t in &[1e-4, 1.0 - 1e-4] {
            let d = (g.eval(t + h) - g.eval(t - h)).norm() / (2.0 * h);
            assert!(d < 1e-6, "derivative {d} near support edge {t}");
        }
    }

    #[test]
    fn linearity_of_t_transform() {
        let g = BoundaryDatum::gaussian(1.0, 0.4, 0.12, C64::new(1.0, 0.0)).unwrap();
        let h = BoundaryDatum::poly(1.0, 5, C64::new(0.0, 1.0)).unwrap();
        let (a, b) = (C64::new(0.7, -0.2), C64::new(-1.1, 0.4));
        for &kappa in &[C64::new(0.0, 3.0), C64::new(-1.0, 25.0), C64::new(0.0, 0.0)] {
            let combined = t_transform(|s| a * g.eval(s) + b * h.eval(s), kappa, 1.0, 1e-12)
                .unwrap()
                .value;
            let separate = a * g.t_transform(kappa, 1.0, 1e-12).unwrap().value
                + b * h.t_transform(kappa, 1.0, 1e-12).unwrap().value;
            assert!(
                (combined - separate).norm() <= 1e-12 * combined.norm().max(1e-10),
                "kappa={kappa}"
            );
        }
    }

    #[test]
    fn spectral_g_vanishes_where_k_plus_nu_does() {
        let p = SpectralParams::standard();
        let cut = BranchCut::for_params(&p);
        let g0 = BoundaryDatum::gaussian(1.0, 0.4, 0.1, C64::new(1.0, 0.0)).unwrap();
        let g1 = BoundaryDatum::gaussian(1.0, 0.6, 0.1, C64::new(0.5, 0.5)).unwrap();
        // k = 1/√2: ν = -1/√2, so k + ν = 0 and G = 0.
        let k = C64::new(0.5_f64.sqrt(), 0.0);
        let g = spectral_g(k, &g0, &g1, 1.0, &p, &cut).unwrap();
        assert!(g.norm() < 1e-13);
        // k = 0 kills the common prefactor.
        let g = spectral_g(C64::new(0.0, 0.0), &g0, &g1, 1.0, &p, &cut).unwrap();
        assert!(g.norm() == 0.0);
        // zero data → 0 everywhere
        let z = BoundaryDatum::zero(1.0);
        let g = spectral_g(C64::new(1.0, 2.0), &z, &z, 1.0, &p, &cut).unwrap();
        assert_eq!(g, C64::new(0.0, 0.0));
    }

    #[test]
    fn spectral_g_linear_in_data() {
        let p = SpectralParams::standard();
        let cut = BranchCut::for_params(&p);
        let g0 = BoundaryDatum::gaussian(1.0, 0.35, 0.1, C64::new(1.0, -0.3)).unwrap();
        let g1 = BoundaryDatum::gaussian(1.0, 0.55, 0.15, C64::new(0.2, 0.8)).unwrap();
        let z = BoundaryDatum::zero(1.0);
        let k = C64::new(0.4, 0.9);
        let both = spectral_g(k, &g0, &g1, 1.0, &p, &cut).unwrap();
        let only0 = spectral_g(k, &g0, &z, 1.0, &p, &cut).unwrap();
        let only1 = spectral_g(k, &z, &g1, 1.0, &p, &cut).unwrap();
        assert!((both - only0 - only1).norm() <= 1e-12 * both.norm().max(1e-10));
    }
}
