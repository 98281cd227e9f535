//! Natural cubic spline interpolation on an arbitrary increasing grid.

#[derive(Debug, thiserror::Error)]
pub enum SplineError {
    #[error("need at least 3 nodes, got {0}")]
    TooFewNodes(usize),
    #[error("nodes must be strictly increasing")]
    NotIncreasing,
}

#[derive(Debug, Clone)]
pub struct CubicSpline {
    xs: Vec<f64>,
    ys: Vec<f64>,
    /// second derivatives at the nodes
    m: Vec<f64>,
}

impl CubicSpline {
    pub fn fit(xs: &[f64], ys: &[f64]) -> Result<Self, SplineError> {
        let n = xs.len();
        if n < 3 {
            return Err(SplineError::TooFewNodes(n));
        }
        if xs.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SplineError::NotIncreasing);
        }
        // Tridiagonal system for interior second derivatives (natural ends).
        let mut sub = vec![0.0; n];
        let diag = vec![2.0; n];
        let mut sup = vec![0.0; n];
        let mut rhs = vec![0.0; n];
        for i in 1..n - 1 {
            let h0 = xs[i] - xs[i - 1];
            let h1 = xs[i + 1] - xs[i];
            sub[i] = h0 / (h0 + h1);
            sup[i] = h1 / (h0 + h1);
            rhs[i] = 6.0 / (h0 + h1) * ((ys[i + 1] - ys[i]) / h1 - (ys[i] - ys[i - 1]) / h0);
        }
        // Thomas algorithm.
        let mut m = vec![0.0; n];
        let mut c_star = vec![0.0; n];
        let mut d_star = vec![0.0; n];
        c_star[0] = sup[0] / diag[0];
        d_star[0] = rhs[0] / diag[0];
        for i in 1..n {
            let denom = diag[i] - sub[i] * c_star[i - 1];
            c_star[i] = sup[i] / denom;
            d_star[i] = (rhs[i] - sub[i] * d_star[i - 1]) / denom;
        }
        m[n - 1] = d_star[n - 1];
        for i in (0..n - 1).rev() {
            m[i] = d_star[i] - c_star[i] * m[i + 1];
        }
        Ok(CubicSpline { xs: xs.to_vec(), ys: ys.to_vec(), m })
    }

    /// Evaluate; constant extrapolation outside the grid.
    pub fn eval(&self, x: f64) -> f64 {
        let n = self.xs.len();
        if x <= self.xs[0] {
            return self.ys[0];
        }
        if x >= self.xs[n - 1] {
            return self.ys[n - 1];
        }
        let i = match self.xs.binary_search_by(|v| v.partial_cmp(&x).unwrap()) {
            Ok(i) => i.min(n - 2),
            Err(i) => i - 1,
        };
        let h = self.xs[i + 1] - self.xs[i];
        let a = (self.xs[i + 1] - x) / h;
        let b = (x - self.xs[i]) / h;
        a * self.ys[i]
            + b * self.ys[i + 1]
            + ((a * a * a - a) * self.m[i] + (b * b * b - b) * self.m[i + 1]) * h * h / 6.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reproduces_smooth_function_at_h4() {
        let n = 101;
        let xs: Vec<f64> = (0..n).map(|i| i as f64 / (n - 1) as f64).collect();
        let f = |x: f64| (3.0 * x).sin();
        let ys: Vec<f64> = xs.iter().map(|&x| f(x)).collect();
        let sp = CubicSpline::fit(&xs, &ys).unwrap();
        let mut max_err = 0.0_f64;
        // stay away from the natural ends, which are only O(h²)
        for i in 0..=500 {
            let x = 0.1 + 0.8 * i as f64 / 500.0;
            max_err = max_err.max((sp.eval(x) - f(x)).abs());
        }
        assert!(max_err < 5e-7, "max interior error {max_err}");
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(CubicSpline::fit(&[0.0, 1.0], &[0.0, 1.0]).is_err());
        assert!(CubicSpline::fit(&[0.0, 1.0, 0.5], &[0.0, 1.0, 2.0]).is_err());
    }
}
