//! The five spectral densities Ψ̂₁..Ψ̂₅ read off the contour components for
//! α = β = 1, their inverse Fourier transforms Ψᵢ on a conjugate grid, and
//! L^{r'} norms. Convention: `ĝ(s) = ∫ e^{-isy} g(y) dy`,
//! `g(y) = (1/2π) ∫ e^{isy} ĝ(s) ds`.

use super::{spectral_g_with_nu, BoundaryDatum, TransformError};
use crate::cheb::PiecewiseCheb;
use crate::complex_plane::{branch_sqrt, invariance_nu, BranchCut, SpectralParams};
use crate::C64;
use rustfft::FftPlanner;
use std::f64::consts::PI;

pub const INV_SQRT2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Sampled Ψ̂ᵢ on a uniform grid over its support (hard zeros outside).
#[derive(Debug, Clone)]
pub struct PsiSpec {
    pub index: usize,
    pub s_grid: Vec<f64>,
    pub hat_values: Vec<C64>,
}

/// Ψᵢ samples on the conjugate uniform y grid.
#[derive(Debug, Clone)]
pub struct PsiGrid {
    pub index: usize,
    pub y_nodes: Vec<f64>,
    pub values: Vec<C64>,
    pub dy: f64,
}

fn w_line(s: f64) -> C64 {
    // w on the real axis: -i(s⁴ - s²)
    C64::new(0.0, -(s.powi(4) - s * s))
}

fn w_imag_axis(s: f64) -> C64 {
    C64::new(0.0, -(s.powi(4) + s * s))
}

fn w_hyperbola(m: f64) -> C64 {
    let q = 2.0 * m * m + 0.5;
    C64::new(0.0, q * q)
}

/// Ψ̂ᵢ(s) for the standard operator α = β = 1.
///
/// For i = 3, 4 the product `(k+ν)·(±1 + is/m)` is evaluated in the stabilized
/// rational form `4is(±m + is)/(k∓... -ν)` in which the zero of `k+ν` cancels the
/// Jacobian pole at the contour foot analytically.
pub fn psi_hat(
    index: usize,
    s: f64,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    t_final: f64,
    tol: f64,
) -> Result<C64, TransformError> {
    let p = SpectralParams::standard();
    let cut = BranchCut::for_params(&p);
    let zero = C64::new(0.0, 0.0);
    match index {
        1 => {
            if s < 0.0 {
                return Ok(zero);
            }
            let k = C64::new(0.0, s);
            let nu = invariance_nu(k, &p, &cut);
            spectral_g_with_nu(k, nu, w_imag_axis(s), g0, g1, t_final, tol)
        }
        2 => {
            if !(0.0..=INV_SQRT2).contains(&s) {
                return Ok(zero);
            }
            let k = C64::new(s, 0.0);
            let nu = invariance_nu(k, &p, &cut);
            spectral_g_with_nu(k, nu, w_line(s), g0, g1, t_final, tol)
        }
        3 | 4 => {
            if s < INV_SQRT2 {
                return Ok(zero);
            }
            let m = (s * s - 0.5).max(0.0).sqrt();
            let sigma = if index == 3 { 1.0 } else { -1.0 };
            let k = C64::new(sigma * s, m);
            // ν: window-reduced on the right branch; path-continuous (principal)
            // on the left branch, where the window edge crosses near the foot.
            let z = C64::new(1.0, 0.0) - k * k;
            let nu = if index == 3 { branch_sqrt(z, &cut) } else { z.sqrt() };
            let jac = 4.0 * C64::i() * s * (C64::new(sigma * m, s)) / (k - nu);
            let gtilde = stabilized_g_core(k, nu, w_hyperbola(m), g0, g1, t_final, tol)?;
            Ok(-2.0 * k * jac * gtilde)
        }
        5 => {
            if s > -INV_SQRT2 {
                return Ok(zero);
            }
            let k = C64::new(s, 0.0);
            // boundary value of the region-interior branch: principal root
            // (+√(1-s²) on the segment, i√(s²-1) on the ray)
            let nu = (C64::new(1.0, 0.0) - k * k).sqrt();
            spectral_g_with_nu(k, nu, w_line(s), g0, g1, t_final, tol)
        }
        _ => Err(TransformError::BadDatum(format!("psi index {index} out of 1..=5"))),
    }
}

/// `i g̃₁(w,T) + ν g̃₀(w,T)` — the data-dependent core of G.
fn stabilized_g_core(
    _k: C64,
    nu: C64,
    w: C64,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    t_final: f64,
    tol: f64,
) -> Result<C64, TransformError> {
    let mut acc = C64::new(0.0, 0.0);
    if !g1.is_zero() {
        acc += C64::i() * g1.t_transform(w, t_final, tol)?.value;
    }
    if !g0.is_zero() {
        acc += nu * g0.t_transform(w, t_final, tol)?.value;
    }
    Ok(acc)
}

/// Support interval of Ψ̂ᵢ; `None` end means "until it decays".
fn support(index: usize) -> (f64, Option<f64>, bool) {
    // (start, fixed end, extends to -infinity i.e. grid stored ascending toward start)
    match index {
        1 => (0.0, None, false),
        2 => (0.0, Some(INV_SQRT2), false),
        3 | 4 => (INV_SQRT2, None, false),
        5 => (-INV_SQRT2, None, true),
        _ => unreachable!(),
    }
}

const DECAY_REL: f64 = 1e-12;

/// Sample Ψ̂ᵢ on a uniform grid of `n` nodes covering its support, extending the
/// unbounded side until the values decay below `1e-12` of the maximum.
///
/// The sampled values come from an adaptive piecewise-Chebyshev fit (in the
/// hyperbola ordinate for i = 3, 4, where the map `s ↦ Ψ̂` has a sqrt cusp).
pub fn build_psi_spec(
    index: usize,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    t_final: f64,
    n: usize,
    tol: f64,
) -> Result<PsiSpec, TransformError> {
    let (start, fixed_end, to_neg_inf) = support(index);

    // find the truncation edge on the unbounded side
    let end = match fixed_end {
        Some(e) => e,
        None => {
            let mut edge = start.abs().max(1.0);
            let mut max_seen = 0.0_f64;
            let probe = |s: f64, g0: &BoundaryDatum, g1: &BoundaryDatum| -> f64 {
                let sv = if to_neg_inf { -s } else { s };
                psi_hat(index, sv, g0, g1, t_final, 1e-8).map(|v| v.norm()).unwrap_or(0.0)
            };
            loop {
                let mut tail_max = 0.0_f64;
                for i in 0..8 {
                    let s = edge + (0.3 + 0.1 * i as f64);
                    tail_max = tail_max.max(probe(s, g0, g1));
                }
                max_seen = max_seen.max(tail_max);
                edge += 1.0;
                let scale = (0..20)
                    .map(|i| probe(start.abs() + i as f64 * edge / 20.0, g0, g1))
                    .fold(max_seen, f64::max);
                max_seen = scale;
                if tail_max <= DECAY_REL * max_seen.max(1e-300) || edge > 14.0 {
                    break;
                }
            }
            if to_neg_inf {
                -edge
            } else {
                edge
            }
        }
    };

    let (lo, hi) = if to_neg_inf { (end, start) } else { (start, end) };

    // interpolate the expensive map once, then resample uniformly
    let fit_tol = (tol * 1e-2).max(1e-12);
    let interp = if index == 3 || index == 4 {
        // fit in m = sqrt(s² - 1/2); smooth there
        let m_hi = (hi * hi - 0.5).max(0.0).sqrt();
        let f = |m: f64| psi_hat(index, (m * m + 0.5).sqrt(), g0, g1, t_final, tol).unwrap_or_default();
        PiecewiseCheb::fit(f, 0.0, m_hi, &[], 16, fit_tol)
    } else {
        let breaks: &[f64] = if index == 5 { &[-1.0] } else { &[] };
        let f = |s: f64| psi_hat(index, s, g0, g1, t_final, tol).unwrap_or_default();
        PiecewiseCheb::fit(f, lo, hi, breaks, 16, fit_tol)
    };

    let ds = (hi - lo) / (n - 1) as f64;
    let s_grid: Vec<f64> = (0..n).map(|i| lo + i as f64 * ds).collect();
    let hat_values: Vec<C64> = s_grid
        .iter()
        .map(|&s| {
            if index == 3 || index == 4 {
                interp.eval((s * s - 0.5).max(0.0).sqrt())
            } else {
                interp.eval(s)
            }
        })
        .collect();
    Ok(PsiSpec { index, s_grid, hat_values })
}

impl PsiSpec {
    fn check_truncation_decay(&self) -> Result<(), TransformError> {
        let max = self.hat_values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        if max == 0.0 {
            return Ok(());
        }
        let (_, fixed_end, to_neg_inf) = support(self.index);
        if fixed_end.is_some() {
            return Ok(());
        }
        let edge = if to_neg_inf {
            self.hat_values.first().unwrap().norm()
        } else {
            self.hat_values.last().unwrap().norm()
        };
        if edge > DECAY_REL * max * 10.0 {
            return Err(TransformError::InsufficientDecay { edge, max });
        }
        Ok(())
    }
}

/// Discrete inverse transform of the truncated Ψ̂ on the conjugate uniform grid
/// `y_m = 2πm/(N ds)`, m = -N/2..N/2: exact DFT pairing, so the forward
/// transform reproduces Ψ̂ at the nodes to roundoff.
pub fn psi_from_hat(spec: &PsiSpec) -> Result<PsiGrid, TransformError> {
    spec.check_truncation_decay()?;
    let n = spec.s_grid.len();
    let ds = spec.s_grid[1] - spec.s_grid[0];
    let s0 = spec.s_grid[0];

    let mut buf: Vec<rustfft::num_complex::Complex64> =
        spec.hat_values.iter().map(|v| rustfft::num_complex::Complex64::new(v.re, v.im)).collect();
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_inverse(n);
    fft.process(&mut buf);

    let half = n / 2;
    let mut y_nodes = Vec::with_capacity(n);
    let mut values = Vec::with_capacity(n);
    for m in -(half as i64)..(n as i64 - half as i64) {
        let y = 2.0 * PI * m as f64 / (n as f64 * ds);
        let idx = m.rem_euclid(n as i64) as usize;
        let raw = C64::new(buf[idx].re, buf[idx].im);
        values.push(raw * (ds / (2.0 * PI)) * (C64::i() * s0 * y).exp());
        y_nodes.push(y);
    }
    let dy = y_nodes[1] - y_nodes[0];
    Ok(PsiGrid { index: spec.index, y_nodes, values, dy })
}

/// Forward transform of the grid samples back to the spec's s nodes (the exact
/// inverse of `psi_from_hat`'s discrete map).
pub fn psi_forward(grid: &PsiGrid, spec: &PsiSpec) -> Vec<C64> {
    let n = spec.s_grid.len();
    let ds = spec.s_grid[1] - spec.s_grid[0];
    let s0 = spec.s_grid[0];
    let half = n / 2;
    let mut buf = vec![rustfft::num_complex::Complex64::new(0.0, 0.0); n];
    for (pos, m) in (-(half as i64)..(n as i64 - half as i64)).enumerate() {
        let idx = m.rem_euclid(n as i64) as usize;
        let y = grid.y_nodes[pos];
        let v = grid.values[pos] * (2.0 * PI / ds) * (-C64::i() * s0 * y).exp();
        buf[idx] = rustfft::num_complex::Complex64::new(v.re, v.im);
    }
    let mut planner = FftPlanner::new();
    let fft = planner.plan_fft_forward(n);
    fft.process(&mut buf);
    buf.iter().map(|v| C64::new(v.re, v.im) / n as f64).collect()
}

/// Direct quadrature of the inversion integral at one y value (independent
/// spot-check oracle for `psi_from_hat`).
pub fn psi_at(
    hat: impl Fn(f64) -> C64,
    s_lo: f64,
    s_hi: f64,
    y: f64,
    tol: f64,
) -> Result<C64, TransformError> {
    let r = crate::quadrature::adaptive_quad(
        |s| hat(s) * (C64::i() * s * y).exp() / (2.0 * PI),
        s_lo,
        s_hi,
        tol,
    )?;
    Ok(r.value)
}

/// Window over which the L^{r'} norms are taken; fixed so refinement studies
/// change the resolution, not the measured quantity.
pub const NORM_WINDOW: f64 = 1500.0;

/// `L^{r'}` norm of the Ψ samples over the fixed window (trapezoid rule).
pub fn psi_norm(grid: &PsiGrid, r_prime: f64) -> Result<f64, TransformError> {
    if !(1.0..=2.0).contains(&r_prime) {
        return Err(TransformError::BadDatum(format!(
            "r' must lie in [1, 2], got {r_prime}"
        )));
    }
    let mut acc = 0.0;
    for (i, v) in grid.values.iter().enumerate() {
        if grid.y_nodes[i].abs() > NORM_WINDOW {
            continue;
        }
        let edge = i == 0 || i + 1 == grid.values.len();
        let w = if edge { 0.5 } else { 1.0 };
        acc += w * v.norm().powf(r_prime);
    }
    Ok((acc * grid.dy).powf(1.0 / r_prime))
}

/// `(2π)^{-1/2} ‖Ψ̂‖₂` computed on the s grid (Parseval route to the L² norm).
pub fn hat_l2_norm(spec: &PsiSpec) -> f64 {
    let ds = spec.s_grid[1] - spec.s_grid[0];
    let mut acc = 0.0;
    for (i, v) in spec.hat_values.iter().enumerate() {
        let edge = i == 0 || i + 1 == spec.hat_values.len();
        let w = if edge { 0.5 } else { 1.0 };
        acc += w * v.norm_sqr();
    }
    (acc * ds).sqrt() / (2.0 * PI).sqrt()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn presets() -> (BoundaryDatum, BoundaryDatum) {
        let g0 = BoundaryDatum::gaussian(1.0, 0.3, 0.1, C64::new(1.0, 0.0)).unwrap();
        let g1 = BoundaryDatum::gaussian(1.0, 0.5, 0.12, C64::new(0.4, 0.2)).unwrap();
        (g0, g1)
    }

    #[test]
    fn hard_zeros_outside_support() {
        let (g0, g1) = presets();
        let z = |i, s| psi_hat(i, s, &g0, &g1, 1.0, 1e-9).unwrap();
        assert_eq!(z(1, -1.0), C64::new(0.0, 0.0));
        assert_eq!(z(2, 0.8), C64::new(0.0, 0.0));
        assert_eq!(z(2, -0.1), C64::new(0.0, 0.0));
        assert_eq!(z(3, 0.5), C64::new(0.0, 0.0));
        assert_eq!(z(4, 0.0), C64::new(0.0, 0.0));
        assert_eq!(z(5, 0.0), C64::new(0.0, 0.0));
        assert_eq!(z(5, -0.5), C64::new(0.0, 0.0));
    }

    #[test]
    fn psi2_is_g_on_the_segment() {
        let (g0, g1) = presets();
        let p = SpectralParams::standard();
        let cut = BranchCut::for_params(&p);
        let s = 0.5;
        let got = psi_hat(2, s, &g0, &g1, 1.0, 1e-10).unwrap();
        let want = super::super::spectral_g(C64::new(s, 0.0), &g0, &g1, 1.0, &p, &cut).unwrap();
        assert!((got - want).norm() <= 1e-10 * want.norm().max(1e-12));
    }

    #[test]
    fn psi3_finite_at_the_foot() {
        let (g0, g1) = presets();
        // values at 1/√2 + 10^{-j} form a Cauchy sequence settling to the foot value
        let mut prev: Option<C64> = None;
        let mut diffs = Vec::new();
        for j in 4..=8 {
            let s = INV_SQRT2 + 10f64.powi(-j);
            let v = psi_hat(3, s, &g0, &g1, 1.0, 1e-10).unwrap();
            assert!(v.norm().is_finite());
            if let Some(p) = prev {
                diffs.push((v - p).norm());
            }
            prev = Some(v);
        }
        for w in diffs.windows(2) {
            assert!(w[1] <= w[0] * 1.5 + 1e-12, "not settling: {diffs:?}");
        }
        // sqrt-type approach to the limit: at s - 1/√2 = 1e-8 the distance to the
        // foot value is O(1e-4) of scale
        let foot = psi_hat(3, INV_SQRT2, &g0, &g1, 1.0, 1e-10).unwrap();
        assert!((prev.unwrap() - foot).norm() < 1e-3 * foot.norm().max(1e-10));
        // same for the left branch
        let foot4 = psi_hat(4, INV_SQRT2, &g0, &g1, 1.0, 1e-10).unwrap();
        assert!(foot4.norm().is_finite());
    }

    #[test]
    fn round_trip_and_parseval() {
        let (g0, g1) = presets();
        let spec = build_psi_spec(2, &g0, &g1, 1.0, 1024, 1e-9).unwrap();
        let grid = psi_from_hat(&spec).unwrap();
        let back = psi_forward(&grid, &spec);
        let scale = spec.hat_values.iter().map(|v| v.norm()).fold(0.0, f64::max);
        for (a, b) in back.iter().zip(&spec.hat_values) {
            assert!((a - b).norm() <= 1e-8 * scale, "{a} vs {b}");
        }
        // Parseval: ‖Ψ‖₂ = (2π)^{-1/2} ‖Ψ̂‖₂
        let l2 = {
            let mut acc = 0.0;
            for v in &grid.values {
                acc += v.norm_sqr();
            }
            (acc * grid.dy).sqrt()
        };
        let want = hat_l2_norm(&spec);
        assert!((l2 - want).abs() <= 1e-6 * want.max(1e-12), "{l2} vs {want}");
    }

    #[test]
    fn zero_hat_gives_zero_psi() {
        let z = BoundaryDatum::zero(1.0);
        let spec = build_psi_spec(1, &z, &z, 1.0, 256, 1e-9).unwrap();
        let grid = psi_from_hat(&spec).unwrap();
        assert!(grid.values.iter().all(|v| v.norm() == 0.0));
        assert_eq!(psi_norm(&grid, 2.0).unwrap(), 0.0);
    }

    #[test]
    fn synthetic_gaussian_hat_matches_direct_quadrature() {
        // Ψ̂(s) = e^{-(s-2)²}·smoothed indicator on [0, 4]
        let hat = |s: f64| {
            if !(0.0..=4.0).contains(&s) {
                return C64::new(0.0, 0.0);
            }
            let chi = crate::transforms::smooth_step(s / 0.5)
                * crate::transforms::smooth_step((4.0 - s) / 0.5);
            C64::new((-(s - 2.0) * (s - 2.0)).exp() * chi, 0.0)
        };
        let n = 2048;
        let ds = 4.0 / (n - 1) as f64;
        let spec = PsiSpec {
            index: 1,
            s_grid: (0..n).map(|i| i as f64 * ds).collect(),
            hat_values: (0..n).map(|i| hat(i as f64 * ds)).collect(),
        };
        let grid = psi_from_hat(&spec).unwrap();
        for &y in &[-3.0, -0.7, 0.0, 1.3, 2.9] {
            let want = psi_at(hat, 0.0, 4.0, y, 1e-12).unwrap();
            // nearest grid node
            let idx = grid
                .y_nodes
                .iter()
                .position(|&v| (v - y).abs() < grid.dy * 0.51)
                .expect("node near y");
            let got_near = grid.values[idx];
            let want_near = psi_at(hat, 0.0, 4.0, grid.y_nodes[idx], 1e-12).unwrap();
            assert!(
                (got_near - want_near).norm() <= 1e-8 * want_near.norm().max(1e-6),
                "y={y}: {got_near} vs {want_near}"
            );
            let _ = want;
        }
    }

    #[test]
    fn norms_of_known_shapes() {
        // Ψ(y) built from a wide smooth hat; r' = 2 equals the Parseval value
        let (g0, g1) = presets();
        let spec = build_psi_spec(1, &g0, &g1, 1.0, 2048, 1e-9).unwrap();
        let grid = psi_from_hat(&spec).unwrap();
        let n2 = psi_norm(&grid, 2.0).unwrap();
        let want = hat_l2_norm(&spec);
        assert!((n2 - want).abs() <= 1e-6 * want, "{n2} vs {want}");
        assert!(psi_norm(&grid, 0.5).is_err());
    }
}
