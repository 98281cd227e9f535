//! Spatial L^r norms of evaluated fields, decay-exponent fits, the
//! dispersion-ratio diagnostic, biharmonic-admissible pair logic, and the
//! space-time norm report.

use crate::evaluator::SolutionField;
use crate::transforms::{t_transform, BoundaryDatum, TransformError};
use crate::C64;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error)]
pub enum DispersionError {
    #[error("field tail has not decayed: |y| at the last node is {0:.3e} of the maximum")]
    TailNotDecayed(f64),
    #[error("r must lie in [2, ∞], got {0}")]
    BadExponent(f64),
    #[error("zero data: the ratio denominator vanishes")]
    ZeroData,
    #[error("degenerate samples for the decay fit")]
    DegenerateSamples,
    #[error("pair (λ={0}, r={1}) is not biharmonic admissible")]
    NotAdmissible(f64, f64),
    #[error(transparent)]
    Transform(#[from] TransformError),
}

/// One spatial-norm sample.
#[derive(Debug, Clone, Copy)]
pub struct NormSample {
    pub t: f64,
    pub r: f64,
    pub value: f64,
}

const TAIL_BUDGET: f64 = 1e-4;

/// `L^r` norm over the half line of one sampled field slice (`r = ∞`: grid max).
pub fn lr_norm(x_nodes: &[f64], row: &[C64], r: f64) -> Result<f64, DispersionError> {
    if !(r >= 2.0) {
        return Err(DispersionError::BadExponent(r));
    }
    let max = row.iter().map(|v| v.norm()).fold(0.0, f64::max);
    let last = row.last().map(|v| v.norm()).unwrap_or(0.0);
    if max > 0.0 && last > TAIL_BUDGET * max {
        return Err(DispersionError::TailNotDecayed(last / max));
    }
    if r.is_infinite() {
        return Ok(max);
    }
    let mut acc = 0.0;
    for i in 0..row.len() {
        let wl = if i == 0 { 0.0 } else { 0.5 * (x_nodes[i] - x_nodes[i - 1]) };
        let wr = if i + 1 == row.len() { 0.0 } else { 0.5 * (x_nodes[i + 1] - x_nodes[i]) };
        acc += (wl + wr) * row[i].norm().powf(r);
    }
    Ok(acc.powf(1.0 / r))
}

/// `C(t) = t^{1/4 - 1/(2r)} ‖y(·,t)‖_r / Σᵢ‖Ψᵢ‖_{r'}` for `0 < t ≤ 1`.
pub fn dispersion_ratio(
    t: f64,
    r: f64,
    norm_r: f64,
    psi_norm_sum: f64,
) -> Result<f64, DispersionError> {
    if !(t > 0.0 && t <= 1.0) {
        return Err(DispersionError::BadExponent(t));
    }
    if psi_norm_sum <= 0.0 {
        return Err(DispersionError::ZeroData);
    }
    let expo = 0.25 - 1.0 / (2.0 * r);
    Ok(t.powf(expo) * norm_r / psi_norm_sum)
}

/// Least-squares fit of `log(value)` against `log(t)`.
pub fn decay_fit(samples: &[NormSample]) -> Result<(f64, f64, f64), DispersionError> {
    if samples.len() < 8 {
        return Err(DispersionError::DegenerateSamples);
    }
    let pts: Vec<(f64, f64)> = samples
        .iter()
        .filter(|s| s.value > 0.0 && s.t > 0.0)
        .map(|s| (s.t.ln(), s.value.ln()))
        .collect();
    if pts.len() < 8 {
        return Err(DispersionError::DegenerateSamples);
    }
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|p| p.0).sum();
    let sy: f64 = pts.iter().map(|p| p.1).sum();
    let sxx: f64 = pts.iter().map(|p| p.0 * p.0).sum();
    let sxy: f64 = pts.iter().map(|p| p.0 * p.1).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-14 {
        return Err(DispersionError::DegenerateSamples);
    }
    let slope = (n * sxy - sx * sy) / denom;
    let intercept = (sy - slope * sx) / n;
    let residual: f64 = pts
        .iter()
        .map(|p| (p.1 - slope * p.0 - intercept).powi(2))
        .sum::<f64>()
        .sqrt();
    Ok((slope, intercept, residual))
}

/// Biharmonic admissibility: `1/8 = 1/(4r) + 1/λ` with both exponents in [2, ∞].
pub fn admissible_pair(lambda: f64, r: f64) -> bool {
    let inv = |v: f64| if v.is_infinite() { 0.0 } else { 1.0 / v };
    let in_range = |v: f64| v.is_infinite() || (2.0..=f64::INFINITY).contains(&v);
    in_range(lambda) && in_range(r) && (0.125 - 0.25 * inv(r) - inv(lambda)).abs() <= 1e-12
}

#[derive(Debug, Clone, Copy)]
pub struct StrichartzReport {
    pub lambda: f64,
    pub r: f64,
    /// `‖W_b‖_{L^λ_t L^r_x}`
    pub lhs: f64,
    /// `‖g0‖_{H^{3/8}} + ‖g1‖_{H^{1/8}}`
    pub rhs: f64,
    pub ratio: f64,
    pub zero_data: bool,
}

/// Fractional Sobolev norm `‖g‖_{H^s}` of the zero-extended datum through its
/// Fourier transform: `(1/2π ∫ (1+τ²)^s |ĝ(τ)|² dτ)^{1/2}`.
pub fn sobolev_norm(g: &BoundaryDatum, s: f64, tol: f64) -> Result<f64, DispersionError> {
    if g.is_zero() {
        return Ok(0.0);
    }
    let t_final = g.t_final();
    // ĝ(τ) = ∫_0^T e^{-iτt} g(t) dt; super-algebraic decay, truncate where the
    // integrand mass is exhausted.
    let ghat = |tau: f64| -> C64 {
        t_transform(|t| g.eval(t), C64::new(0.0, -tau), t_final, tol)
            .map(|r| r.value)
            .unwrap_or_default()
    };
    let mut tau_max = 64.0;
    loop {
        let probe = (0..8).map(|i| ghat(tau_max + i as f64).norm()).fold(0.0, f64::max);
        if probe * (1.0 + tau_max * tau_max).powf(s / 2.0) < 1e-10 || tau_max > 4096.0 {
            break;
        }
        tau_max *= 2.0;
    }
    let integrand = |tau: f64| {
        let v = ghat(tau).norm_sqr() * (1.0 + tau * tau).powf(s);
        C64::new(v, 0.0)
    };
    let val = crate::quadrature::adaptive_quad(integrand, -tau_max, tau_max, 1e-10)
        .map_err(TransformError::from)?
        .value
        .re;
    Ok((val / (2.0 * PI)).sqrt())
}

/// `L^λ_t(0,T; L^r_x)` norm of the field over its own time grid (trapezoid in t,
/// `λ = ∞`: max over the grid).
pub fn space_time_norm(field: &SolutionField, lambda: f64, r: f64) -> Result<f64, DispersionError> {
    let norms: Vec<f64> = field
        .grid
        .t_nodes
        .iter()
        .enumerate()
        .map(|(i, _)| lr_norm(&field.grid.x_nodes, field.row(i), r))
        .collect::<Result<_, _>>()?;
    if lambda.is_infinite() {
        return Ok(norms.iter().copied().fold(0.0, f64::max));
    }
    let ts = &field.grid.t_nodes;
    let mut acc = 0.0;
    for i in 0..norms.len() {
        let wl = if i == 0 { 0.0 } else { 0.5 * (ts[i] - ts[i - 1]) };
        let wr = if i + 1 == norms.len() { 0.0 } else { 0.5 * (ts[i + 1] - ts[i]) };
        acc += (wl + wr) * norms[i].powf(lambda);
    }
    Ok(acc.powf(1.0 / lambda))
}

/// Ratio `LHS/RHS` of the space-time estimate at `s = 0` for an admissible pair.
/// No threshold is asserted; the constant is not pinned.
pub fn strichartz_report(
    field: &SolutionField,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    lambda: f64,
    r: f64,
) -> Result<StrichartzReport, DispersionError> {
    if !admissible_pair(lambda, r) {
        return Err(DispersionError::NotAdmissible(lambda, r));
    }
    if g0.is_zero() && g1.is_zero() {
        return Ok(StrichartzReport { lambda, r, lhs: 0.0, rhs: 0.0, ratio: 0.0, zero_data: true });
    }
    let lhs = space_time_norm(field, lambda, r)?;
    let rhs = sobolev_norm(g0, 3.0 / 8.0, 1e-10)? + sobolev_norm(g1, 1.0 / 8.0, 1e-10)?;
    Ok(StrichartzReport { lambda, r, lhs, rhs, ratio: lhs / rhs, zero_data: false })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lr_norm_of_decaying_exponential() {
        let xs: Vec<f64> = (0..4000).map(|i| 1e-3 + 25.0 * i as f64 / 3999.0).collect();
        let row: Vec<C64> = xs.iter().map(|&x| C64::new((-x).exp(), 0.0)).collect();
        let n2 = lr_norm(&xs, &row, 2.0).unwrap();
        assert!((n2 - 0.5_f64.sqrt()).abs() < 1e-3, "{n2}");
        let ninf = lr_norm(&xs, &row, f64::INFINITY).unwrap();
        assert!((ninf - (-1e-3_f64).exp()).abs() < 1e-12);
        let zero: Vec<C64> = xs.iter().map(|_| C64::new(0.0, 0.0)).collect();
        assert_eq!(lr_norm(&xs, &zero, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn lr_norm_rejects_undeceyed_tail() {
        let xs: Vec<f64> = (0..100).map(|i| 0.1 + i as f64 * 0.1).collect();
        let row: Vec<C64> = xs.iter().map(|_| C64::new(1.0, 0.0)).collect();
        assert!(matches!(lr_norm(&xs, &row, 2.0), Err(DispersionError::TailNotDecayed(_))));
    }

    #[test]
    fn log_convexity_of_lp_norms() {
        let xs: Vec<f64> = (0..6000).map(|i| 1e-3 + 30.0 * i as f64 / 5999.0).collect();
        let row: Vec<C64> = xs
            .iter()
            .map(|&x| C64::new((-x).exp() * (3.0 * x).cos(), (-0.7 * x).exp() * 0.2))
            .collect();
        let n2 = lr_norm(&xs, &row, 2.0).unwrap();
        let n4 = lr_norm(&xs, &row, 4.0).unwrap();
        let ninf = lr_norm(&xs, &row, f64::INFINITY).unwrap();
        // ‖·‖₄ ≤ ‖·‖₂^{1/2} ‖·‖_∞^{1/2}
        assert!(n4 <= n2.sqrt() * ninf.sqrt() * (1.0 + 1e-10), "{n4} vs {}", n2.sqrt() * ninf.sqrt());
    }

    #[test]
    fn decay_fit_recovers_exact_power_laws() {
        let ts: Vec<f64> = (0..12).map(|i| 0.02 * 1.4_f64.powi(i)).collect();
        let samples: Vec<NormSample> =
            ts.iter().map(|&t| NormSample { t, r: 2.0, value: t.powf(-0.25) }).collect();
        let (slope, _, _) = decay_fit(&samples).unwrap();
        assert!((slope + 0.25).abs() < 1e-12);
        let flat: Vec<NormSample> =
            ts.iter().map(|&t| NormSample { t, r: 2.0, value: 7.0 }).collect();
        let (slope, intercept, _) = decay_fit(&flat).unwrap();
        assert!(slope.abs() < 1e-12);
        assert!((intercept - 7.0_f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn admissible_pairs() {
        assert!(admissible_pair(f64::INFINITY, 2.0));
        assert!(admissible_pair(8.0, f64::INFINITY));
        assert!(!admissible_pair(4.0, 2.0));
        assert!(!admissible_pair(1.0, 2.0));
    }

    #[test]
    fn dispersion_ratio_basics() {
        // r = 2: exponent 0, so C(t) is just the norm ratio
        let c = dispersion_ratio(0.37, 2.0, 3.0, 1.5).unwrap();
        assert!((c - 2.0).abs() < 1e-14);
        assert!(dispersion_ratio(0.5, 2.0, 1.0, 0.0).is_err());
        assert!(dispersion_ratio(1.5, 2.0, 1.0, 1.0).is_err());
    }

    #[test]
    fn sobolev_norm_homogeneity() {
        let g = BoundaryDatum::gaussian(1.0, 0.4, 0.1, C64::new(1.0, 0.0)).unwrap();
        let g3 = BoundaryDatum::gaussian(1.0, 0.4, 0.1, C64::new(3.0, 0.0)).unwrap();
        let a = sobolev_norm(&g, 0.375, 1e-10).unwrap();
        let b = sobolev_norm(&g3, 0.375, 1e-10).unwrap();
        assert!((b - 3.0 * a).abs() <= 1e-8 * b, "{b} vs {}", 3.0 * a);
        assert_eq!(sobolev_norm(&BoundaryDatum::zero(1.0), 0.375, 1e-10).unwrap(), 0.0);
    }
}
