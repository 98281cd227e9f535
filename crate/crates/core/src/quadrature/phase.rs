//! Real quartic polynomial phases `φ(ξ) = c4 ξ⁴ + c3 ξ³ + c2 ξ² + c1 ξ + c0`
//! with an overall time factor, so the oscillatory factor is `e^{i t φ(ξ)}`.

/// Quartic phase specification. The effective phase is `Θ(ξ) = time_factor · φ(ξ)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhaseSpec {
    pub coeffs: [f64; 5],
    pub time_factor: f64,
}

impl PhaseSpec {
    pub fn new(coeffs: [f64; 5], time_factor: f64) -> Self {
        PhaseSpec { coeffs, time_factor }
    }

    /// Phase with the time factor already folded into the coefficients.
    pub fn plain(coeffs: [f64; 5]) -> Self {
        PhaseSpec { coeffs, time_factor: 1.0 }
    }

    pub fn theta(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        self.time_factor * (((c[4] * x + c[3]) * x + c[2]) * x + c[1]).mul_add(x, c[0])
    }

    pub fn dtheta(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        self.time_factor * (((4.0 * c[4] * x + 3.0 * c[3]) * x + 2.0 * c[2]) * x + c[1])
    }

    pub fn d2theta(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        self.time_factor * ((12.0 * c[4] * x + 6.0 * c[3]) * x + 2.0 * c[2])
    }

    pub fn d3theta(&self, x: f64) -> f64 {
        let c = &self.coeffs;
        self.time_factor * (24.0 * c[4] * x + 6.0 * c[3])
    }

    pub fn d4theta(&self) -> f64 {
        self.time_factor * 24.0 * self.coeffs[4]
    }

    /// Real roots of `Θ'` (stationary points), ascending.
    pub fn stationary_points(&self) -> Vec<f64> {
        let c = &self.coeffs;
        real_roots_cubic(4.0 * c[4], 3.0 * c[3], 2.0 * c[2], c[1])
    }
}

/// Real roots of `a x³ + b x² + c x + d`, ascending, via sign-change bracketing
/// on the monotone pieces (derivative roots give the brackets).
pub fn real_roots_cubic(a: f64, b: f64, c: f64, d: f64) -> Vec<f64> {
    if a == 0.0 {
        return real_roots_quadratic(b, c, d);
    }
    let eval = |x: f64| ((a * x + b) * x + c) * x + d;
    // Cauchy bound for root magnitudes.
    let bound = 1.0 + (b.abs().max(c.abs()).max(d.abs())) / a.abs();
    let mut knots = vec![-bound, bound];
    knots.splice(1..1, real_roots_quadratic(3.0 * a, 2.0 * b, c));
    let mut roots = Vec::new();
    for w in knots.windows(2) {
        let (lo, hi) = (w[0], w[1]);
        let (flo, fhi) = (eval(lo), eval(hi));
        if flo == 0.0 {
            roots.push(lo);
            continue;
        }
        if flo * fhi > 0.0 {
            continue;
        }
        let mut lo = lo;
        let mut hi = hi;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if mid <= lo || mid >= hi {
                break;
            }
            if eval(lo) * eval(mid) <= 0.0 {
                hi = mid;
            } else {
                lo = mid;
            }
        }
        roots.push(0.5 * (lo + hi));
    }
    if eval(bound) == 0.0 {
        roots.push(bound);
    }
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots.dedup_by(|x, y| (*x - *y).abs() < 1e-12 * (1.0 + x.abs()));
    roots
}

fn real_roots_quadratic(a: f64, b: f64, c: f64) -> Vec<f64> {
    if a == 0.0 {
        if b == 0.0 {
            return vec![];
        }
        return vec![-c / b];
    }
    let disc = b * b - 4.0 * a * c;
    if disc < 0.0 {
        return vec![];
    }
    let q = -0.5 * (b + b.signum() * disc.sqrt());
    let mut roots = if q == 0.0 {
        vec![0.0]
    } else {
        let r1 = q / a;
        let r2 = c / q;
        if (r1 - r2).abs() < 1e-14 * (1.0 + r1.abs()) {
            vec![r1]
        } else {
            vec![r1, r2]
        }
    };
    roots.sort_by(|x, y| x.partial_cmp(y).unwrap());
    roots
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cubic_roots_found() {
        // (x-1)(x-2)(x-3) = x³ - 6x² + 11x - 6
        let r = real_roots_cubic(1.0, -6.0, 11.0, -6.0);
        assert_eq!(r.len(), 3);
        for (root, want) in r.iter().zip([1.0, 2.0, 3.0]) {
            assert!((root - want).abs() < 1e-10);
        }
        // monotone cubic with one root
        let r = real_roots_cubic(4.0, 0.0, 2.0, -10.0);
        assert_eq!(r.len(), 1);
        let x = r[0];
        assert!((4.0 * x * x * x + 2.0 * x - 10.0).abs() < 1e-9);
    }

    #[test]
    fn stationary_points_of_quartic() {
        // Θ = ξ⁴ - ξ²: Θ' = 4ξ³ - 2ξ, roots ∓1/√2 and 0.
        let p = PhaseSpec::plain([0.0, 0.0, -1.0, 0.0, 1.0]);
        let r = p.stationary_points();
        assert_eq!(r.len(), 3);
        assert!((r[0] + 0.5_f64.sqrt()).abs() < 1e-10);
        assert!(r[1].abs() < 1e-10);
        assert!((r[2] - 0.5_f64.sqrt()).abs() < 1e-10);
    }
}
