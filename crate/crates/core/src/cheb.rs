//! Chebyshev interpolation on Gauss-Lobatto nodes, Clenshaw-Curtis weights, and
//! adaptive piecewise-Chebyshev representations of smooth complex amplitudes.

use crate::C64;
use std::f64::consts::PI;

/// Chebyshev-Gauss-Lobatto nodes `cos(jπ/n)`, j = 0..=n (descending, 1 → -1).
pub fn cgl_nodes(n: usize) -> Vec<f64> {
    (0..=n).map(|j| (j as f64 * PI / n as f64).cos()).collect()
}

/// Chebyshev coefficients `c_k` of the interpolant `p(x) = Σ c_k T_k(x)` through
/// values at the CGL nodes of degree `n = values.len() - 1`.
pub fn cheb_coeffs(values: &[C64]) -> Vec<C64> {
    let n = values.len() - 1;
    assert!(n >= 1);
    let mut coeffs = vec![C64::new(0.0, 0.0); n + 1];
    for (k, c) in coeffs.iter_mut().enumerate() {
        let mut acc = 0.5 * (values[0] + values[n] * if k % 2 == 0 { 1.0 } else { -1.0 });
        for (j, v) in values.iter().enumerate().take(n).skip(1) {
            acc += *v * ((k * j) as f64 * PI / n as f64).cos();
        }
        *c = acc * (2.0 / n as f64);
    }
    coeffs[0] *= 0.5;
    coeffs[n] *= 0.5;
    coeffs
}

/// Clenshaw evaluation of `Σ c_k T_k(u)` for `u ∈ [-1, 1]`.
pub fn cheb_eval(coeffs: &[C64], u: f64) -> C64 {
    let mut b1 = C64::new(0.0, 0.0);
    let mut b2 = C64::new(0.0, 0.0);
    for &c in coeffs.iter().skip(1).rev() {
        let b0 = c + 2.0 * u * b1 - b2;
        b2 = b1;
        b1 = b0;
    }
    coeffs[0] + u * b1 - b2
}

/// Convert Chebyshev coefficients to monomial coefficients (low degree only).
pub fn cheb_to_monomial(coeffs: &[C64]) -> Vec<C64> {
    let n = coeffs.len();
    // t[k] = monomial coefficients of T_k.
    let mut t: Vec<Vec<f64>> = Vec::with_capacity(n);
    t.push(vec![1.0]);
    if n > 1 {
        t.push(vec![0.0, 1.0]);
    }
    for k in 2..n {
        let mut next = vec![0.0; k + 1];
        for (i, &v) in t[k - 1].iter().enumerate() {
            next[i + 1] += 2.0 * v;
        }
        for (i, &v) in t[k - 2].iter().enumerate() {
            next[i] -= v;
        }
        t.push(next);
    }
    let mut mono = vec![C64::new(0.0, 0.0); n];
    for (k, c) in coeffs.iter().enumerate() {
        for (i, &v) in t[k].iter().enumerate() {
            mono[i] += *c * v;
        }
    }
    mono
}

/// Clenshaw-Curtis weights for `∫_{-1}^{1} f ≈ Σ w_j f(x_j)` on the CGL nodes.
pub fn cc_weights(n: usize) -> Vec<f64> {
    // Integrate the Chebyshev interpolant: ∫ T_k = 2/(1-k²) for even k, 0 for odd.
    let mut w = vec![0.0; n + 1];
    for j in 0..=n {
        let cj = if j == 0 || j == n { 0.5 } else { 1.0 };
        let mut acc = 0.0;
        let mut k = 0usize;
        while k <= n {
            let ck = if k == 0 || k == n { 0.5 } else { 1.0 };
            let mu = 2.0 / (1.0 - (k * k) as f64);
            acc += ck * mu * ((k * j) as f64 * PI / n as f64).cos();
            k += 2;
        }
        w[j] = cj * acc * (2.0 / n as f64);
    }
    w
}

/// One Chebyshev panel of a piecewise interpolant.
#[derive(Debug, Clone)]
pub struct ChebPanel {
    pub a: f64,
    pub b: f64,
    pub coeffs: Vec<C64>,
}

impl ChebPanel {
    fn fit(f: &mut dyn FnMut(f64) -> C64, a: f64, b: f64, degree: usize) -> Self {
        let mid = 0.5 * (a + b);
        let half = 0.5 * (b - a);
        let values: Vec<C64> = cgl_nodes(degree).iter().map(|&u| f(mid + half * u)).collect();
        ChebPanel { a, b, coeffs: cheb_coeffs(&values) }
    }

    fn tail_magnitude(&self) -> f64 {
        let n = self.coeffs.len();
        self.coeffs[n - 1].norm() + self.coeffs[n - 2].norm()
    }

    pub fn eval(&self, x: f64) -> C64 {
        let u = (2.0 * x - self.a - self.b) / (self.b - self.a);
        cheb_eval(&self.coeffs, u)
    }

    pub fn max_abs(&self) -> f64 {
        // Cheap bound: sum of coefficient magnitudes.
        self.coeffs.iter().map(|c| c.norm()).sum()
    }
}

/// Piecewise-Chebyshev representation of a smooth function on `[lo, hi]`.
#[derive(Debug, Clone)]
pub struct PiecewiseCheb {
    panels: Vec<ChebPanel>,
}

impl PiecewiseCheb {
    /// Adaptive fit: panels are bisected until the coefficient tail drops below
    /// `tol` relative to the global scale. `breakpoints` become panel edges.
    pub fn fit(
        mut f: impl FnMut(f64) -> C64,
        lo: f64,
        hi: f64,
        breakpoints: &[f64],
        degree: usize,
        tol: f64,
    ) -> Self {
        let mut edges: Vec<f64> = vec![lo, hi];
        edges.extend(breakpoints.iter().copied().filter(|&s| s > lo && s < hi));
        edges.sort_by(|a, b| a.partial_cmp(b).unwrap());
        edges.dedup();

        let mut stack: Vec<(f64, f64)> = edges.windows(2).map(|w| (w[0], w[1])).collect();
        let mut panels: Vec<ChebPanel> = Vec::new();
        let mut scale = 0.0_f64;
        while let Some((a, b)) = stack.pop() {
            let panel = ChebPanel::fit(&mut f, a, b, degree);
            scale = scale.max(panel.max_abs());
            if panel.tail_magnitude() <= tol * scale.max(1e-300) || (b - a) < 1e-12 * (hi - lo) {
                panels.push(panel);
            } else {
                let mid = 0.5 * (a + b);
                stack.push((a, mid));
                stack.push((mid, b));
            }
        }
        panels.sort_by(|p, q| p.a.partial_cmp(&q.a).unwrap());
        PiecewiseCheb { panels }
    }

    pub fn lo(&self) -> f64 {
        self.panels.first().map_or(0.0, |p| p.a)
    }

    pub fn hi(&self) -> f64 {
        self.panels.last().map_or(0.0, |p| p.b)
    }

    pub fn eval(&self, x: f64) -> C64 {
        let idx = self
            .panels
            .partition_point(|p| p.b < x)
            .min(self.panels.len() - 1);
        self.panels[idx].eval(x)
    }

    pub fn max_abs_bound(&self) -> f64 {
        self.panels.iter().map(|p| p.max_abs()).fold(0.0, f64::max)
    }

    pub fn panel_edges(&self) -> Vec<f64> {
        let mut e: Vec<f64> = self.panels.iter().map(|p| p.a).collect();
        e.push(self.hi());
        e
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cc_weights_integrate_polynomials() {
        for n in [8usize, 16, 32] {
            let w = cc_weights(n);
            let x = cgl_nodes(n);
            let one: f64 = w.iter().sum();
            assert!((one - 2.0).abs() < 1e-14);
            let x2: f64 = w.iter().zip(&x).map(|(wi, xi)| wi * xi * xi).sum();
            assert!((x2 - 2.0 / 3.0).abs() < 1e-14);
            let x8: f64 = w.iter().zip(&x).map(|(wi, xi)| wi * xi.powi(8)).sum();
            assert!((x8 - 2.0 / 9.0).abs() < 1e-14, "n={n}: {x8}");
            let ex: f64 = w.iter().zip(&x).map(|(wi, xi)| wi * xi.exp()).sum();
            let tol = if n == 8 { 1e-7 } else { 1e-12 };
            assert!((ex - (1.0_f64.exp() - (-1.0_f64).exp())).abs() < tol, "n={n}");
        }
    }

    #[test]
    fn interpolation_round_trip() {
        let f = |x: f64| C64::new((3.0 * x).sin(), (2.0 * x).cos() * x);
        let nodes = cgl_nodes(24);
        let values: Vec<C64> = nodes.iter().map(|&x| f(x)).collect();
        let coeffs = cheb_coeffs(&values);
        for i in 0..=50 {
            let x = -1.0 + 0.04 * i as f64;
            assert!((cheb_eval(&coeffs, x) - f(x)).norm() < 1e-12);
        }
        let mono = cheb_to_monomial(&coeffs);
        let horner = |x: f64| {
            let mut acc = C64::new(0.0, 0.0);
            for &c in mono.iter().rev() {
                acc = acc * x + c;
            }
            acc
        };
        for i in 0..=20 {
            let x = -1.0 + 0.1 * i as f64;
            assert!((horner(x) - f(x)).norm() < 1e-9);
        }
    }

    #[test]
    fn piecewise_fit_handles_kinks_at_breakpoints() {
        let f = |x: f64| C64::new((x - 1.0).abs().sqrt() * x.exp(), 0.0);
        let interp = PiecewiseCheb::fit(f, 0.0, 3.0, &[1.0], 12, 1e-10);
        for i in 0..=300 {
            let x = 3.0 * i as f64 / 300.0;
            let err = (interp.eval(x) - f(x)).norm();
            // sqrt cusp at the breakpoint limits local accuracy but not elsewhere
            if (x - 1.0).abs() > 0.05 {
                assert!(err < 1e-7, "x={x} err={err}");
            }
        }
    }
}
