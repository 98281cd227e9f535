//! Filon-type rule for `∫ A(ξ) e^{iΘ(ξ)} dξ` with quartic `Θ`: panels are sized so
//! the phase deviates from its local linearization by at most a fraction of a
//! radian, the deviation is folded into the amplitude, the amplitude is
//! Chebyshev-interpolated, and the linear-phase moments are integrated exactly.

use super::phase::PhaseSpec;
use super::{QuadError, QuadResult};
use crate::cheb::{cgl_nodes, cheb_coeffs, cheb_to_monomial};
use crate::C64;
use std::collections::BinaryHeap;

/// Maximum tolerated deviation of the phase from its panel linearization (radians).
const RHO_MAX: f64 = 0.5;
const DEGREE_LOW: usize = 8;
const DEGREE_HIGH: usize = 12;
const PANEL_LIMIT: usize = 60_000;

/// Moments `m_k = ∫_{-1}^{1} u^k e^{iωu} du`, k = 0..=kmax.
fn linear_moments(omega: f64, kmax: usize) -> Vec<C64> {
    let mut m = vec![C64::new(0.0, 0.0); kmax + 1];
    if omega.abs() < 6.0 {
        // Series Σ_j (iω)^j/j! ∫ u^{k+j}, nonzero for k+j even.
        let iw = C64::new(0.0, omega);
        for (k, mk) in m.iter_mut().enumerate() {
            let mut term = C64::new(1.0, 0.0);
            let mut acc = C64::new(0.0, 0.0);
            for j in 0..90 {
                if (k + j) % 2 == 0 {
                    acc += term * (2.0 / (k + j + 1) as f64);
                }
                term *= iw / (j as f64 + 1.0);
                if term.norm() < 1e-20 {
                    break;
                }
            }
            *mk = acc;
        }
    } else {
        let iw = C64::new(0.0, omega);
        let e_plus = (C64::i() * omega).exp();
        let e_minus = (-C64::i() * omega).exp();
        m[0] = C64::new(2.0 * omega.sin() / omega, 0.0);
        for k in 1..=kmax {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            m[k] = (e_plus - sign * e_minus) / iw - (k as f64 / iw) * m[k - 1];
        }
    }
    m
}

/// Upper bound on |Θ(ξ) - Θ(mid) - Θ'(mid)(ξ - mid)| over the panel.
fn rho_bound(phase: &PhaseSpec, a: f64, b: f64) -> f64 {
    let mid = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let d2 = phase.d2theta(mid).abs();
    let d3 = phase.d3theta(a).abs().max(phase.d3theta(b).abs());
    let d4 = phase.d4theta().abs();
    d2 * h * h / 2.0 + d3 * h * h * h / 6.0 + d4 * h * h * h * h / 24.0
}

fn panel_value(
    amp: &mut dyn FnMut(f64) -> C64,
    phase: &PhaseSpec,
    a: f64,
    b: f64,
    degree: usize,
) -> C64 {
    let mid = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let theta0 = phase.theta(mid);
    let omega = phase.dtheta(mid) * half;
    let values: Vec<C64> = cgl_nodes(degree)
        .iter()
        .map(|&u| {
            let xi = mid + half * u;
            let rho = phase.theta(xi) - theta0 - omega * u;
            amp(xi) * (C64::i() * rho).exp()
        })
        .collect();
    let mono = cheb_to_monomial(&cheb_coeffs(&values));
    let moments = linear_moments(omega, degree);
    let mut acc = C64::new(0.0, 0.0);
    for (c, m) in mono.iter().zip(&moments) {
        acc += c * m;
    }
    acc * half * (C64::i() * theta0).exp()
}

struct Panel {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Panel {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Panel {}
impl PartialOrd for Panel {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Panel {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(std::cmp::Ordering::Equal)
    }
}

fn fit_panel(amp: &mut dyn FnMut(f64) -> C64, phase: &PhaseSpec, a: f64, b: f64) -> Panel {
    let low = panel_value(amp, phase, a, b, DEGREE_LOW);
    let high = panel_value(amp, phase, a, b, DEGREE_HIGH);
    Panel { a, b, value: high, error: (high - low).norm() }
}

/// Filon integration of `amp(ξ)·e^{iΘ(ξ)}` over `[a, b]`.
///
/// Stationary points of the phase become panel edges with geometric refinement
/// around them; panel errors come from an embedded lower-degree interpolation.
pub fn filon_segment(
    mut amp: impl FnMut(f64) -> C64,
    phase: &PhaseSpec,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    filon_segment_breakpoints(&mut amp, phase, a, b, &[], tol)
}

pub fn filon_segment_breakpoints(
    amp: &mut dyn FnMut(f64) -> C64,
    phase: &PhaseSpec,
    a: f64,
    b: f64,
    breakpoints: &[f64],
    tol: f64,
) -> Result<QuadResult, QuadError> {
    if a == b {
        return Ok(QuadResult::zero());
    }
    if !(a < b) {
        return Err(QuadError::BadParameter(format!("interval [{a}, {b}] is not ordered")));
    }

    let mut edges: Vec<f64> = vec![a, b];
    edges.extend(breakpoints.iter().copied().filter(|&s| s > a && s < b));
    edges.extend(phase.stationary_points().into_iter().filter(|&s| s > a && s < b));
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    edges.dedup_by(|x, y| (*x - *y).abs() < 1e-14 * (b - a));

    // Split for phase curvature first.
    let mut intervals: Vec<(f64, f64)> = Vec::new();
    let mut stack: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
    while let Some((lo, hi)) = stack.pop() {
        if rho_bound(phase, lo, hi) <= RHO_MAX || (hi - lo) <= 1e-13 * (b - a) {
            intervals.push((lo, hi));
        } else {
            let mid = 0.5 * (lo + hi);
            stack.push((lo, mid));
            stack.push((mid, hi));
        }
        if intervals.len() + stack.len() > PANEL_LIMIT {
            return Err(QuadError::PanelLimit { limit: PANEL_LIMIT, achieved: f64::INFINITY, tol });
        }
    }

    let mut heap: BinaryHeap<Panel> = BinaryHeap::new();
    let mut total = C64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for (lo, hi) in intervals {
        let p = fit_panel(amp, phase, lo, hi);
        total += p.value;
        total_err += p.error;
        heap.push(p);
    }

    let mut count = heap.len();
    while total_err > tol && count < PANEL_LIMIT {
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            total_err -= worst.error;
            heap.push(Panel { error: 0.0, ..worst });
            count += 1;
            continue;
        }
        let p1 = fit_panel(amp, phase, worst.a, mid);
        let p2 = fit_panel(amp, phase, mid, worst.b);
        total += p1.value + p2.value - worst.value;
        total_err += p1.error + p2.error - worst.error;
        heap.push(p1);
        heap.push(p2);
        count += 1;
    }
    if total_err > tol.max(1e-13 * total.norm()) && count >= PANEL_LIMIT {
        return Err(QuadError::PanelLimit { limit: PANEL_LIMIT, achieved: total_err, tol });
    }
    Ok(QuadResult { value: total, error_estimate: total_err, panels_used: count })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::adaptive_quad;

    #[test]
    fn moments_match_adaptive() {
        for &omega in &[0.0, 0.3, 2.0, 5.9, 6.1, 40.0, -17.0] {
            let m = linear_moments(omega, 12);
            for k in [0usize, 1, 5, 12] {
                let want = adaptive_quad(
                    |u| u.powi(k as i32) * (C64::i() * omega * u).exp(),
                    -1.0,
                    1.0,
                    1e-13,
                )
                .unwrap()
                .value;
                assert!(
                    (m[k] - want).norm() < 1e-11,
                    "omega={omega} k={k} got {} want {}",
                    m[k],
                    want
                );
            }
        }
    }

    #[test]
    fn full_period_vanishes() {
        let phase = PhaseSpec::plain([0.0, 1.0, 0.0, 0.0, 0.0]);
        let r = filon_segment(|_| C64::new(1.0, 0.0), &phase, 0.0, 2.0 * std::f64::consts::PI, 1e-10)
            .unwrap();
        assert!(r.value.norm() < 1e-10);
    }

    #[test]
    fn zero_amplitude_is_exact_zero() {
        let phase = PhaseSpec::new([0.0, 0.0, 1.0, 0.0, 1.0], 3.0);
        let r = filon_segment(|_| C64::new(0.0, 0.0), &phase, 0.0, 4.0, 1e-10).unwrap();
        assert_eq!(r.value, C64::new(0.0, 0.0));
    }

    #[test]
    fn quartic_phase_with_decaying_amplitude_matches_oracle() {
        // amplitude e^{-ξ}, phase 3(ξ⁴+ξ²) over [0, 4]
        let phase = PhaseSpec::new([0.0, 0.0, 1.0, 0.0, 1.0], 3.0);
        let f = filon_segment(|x| C64::new((-x).exp(), 0.0), &phase, 0.0, 4.0, 1e-11).unwrap();
        let a = adaptive_quad(
            |x| C64::new((-x).exp(), 0.0) * (C64::i() * phase.theta(x)).exp(),
            0.0,
            4.0,
            1e-12,
        )
        .unwrap();
        assert!(
            (f.value - a.value).norm() <= 1e-9_f64.max(f.error_estimate + a.error_estimate),
            "diff {}",
            (f.value - a.value).norm()
        );
    }

    #[test]
    fn high_frequency_agreement() {
        // strongly oscillatory: t = 80 over [0, 3] with stationary point inside
        let phase = PhaseSpec::new([0.0, -1.0, 0.0, 0.0, 1.0], 80.0);
        let f = filon_segment(|x| C64::new(1.0 / (1.0 + x * x), 0.1 * x), &phase, 0.0, 3.0, 1e-10)
            .unwrap();
        let a = adaptive_quad(
            |x| C64::new(1.0 / (1.0 + x * x), 0.1 * x) * (C64::i() * phase.theta(x)).exp(),
            0.0,
            3.0,
            1e-12,
        )
        .unwrap();
        assert!((f.value - a.value).norm() < 1e-9, "diff {}", (f.value - a.value).norm());
    }
}
