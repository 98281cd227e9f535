//! Finite-difference weights on arbitrary nodes (Fornberg's recursion).

/// Weights `w[k][j]` such that `f^{(k)}(z) ≈ Σ_j w[k][j] f(x_j)` for k = 0..=m.
pub fn fd_weights(z: f64, xs: &[f64], m: usize) -> Vec<Vec<f64>> {
    let n = xs.len();
    assert!(n > m, "need more nodes than the derivative order");
    let mut c = vec![vec![0.0_f64; m + 1]; n];
    c[0][0] = 1.0;
    let mut c1 = 1.0;
    let mut c4 = xs[0] - z;
    for i in 1..n {
        let mn = i.min(m);
        let mut c2 = 1.0;
        let c5 = c4;
        c4 = xs[i] - z;
        for j in 0..i {
            let c3 = xs[i] - xs[j];
            c2 *= c3;
            if j == i - 1 {
                for k in (1..=mn).rev() {
                    c[i][k] = c1 * (k as f64 * c[i - 1][k - 1] - c5 * c[i - 1][k]) / c2;
                }
                c[i][0] = -c1 * c5 * c[i - 1][0] / c2;
            }
            for k in (1..=mn).rev() {
                c[j][k] = (c4 * c[j][k] - k as f64 * c[j][k - 1]) / c3;
            }
            c[j][0] = c4 * c[j][0] / c3;
        }
        c1 = c2;
    }
    // transpose to w[k][j]
    (0..=m).map(|k| (0..n).map(|j| c[j][k]).collect()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn classic_central_stencils() {
        let w = fd_weights(0.0, &[-1.0, 0.0, 1.0], 2);
        for (got, want) in w[1].iter().zip([-0.5, 0.0, 0.5]) {
            assert!((got - want).abs() < 1e-14);
        }
        for (got, want) in w[2].iter().zip([1.0, -2.0, 1.0]) {
            assert!((got - want).abs() < 1e-14);
        }
    }

    #[test]
    fn one_sided_fourth_order_first_derivative() {
        let w = fd_weights(0.0, &[0.0, 1.0, 2.0, 3.0, 4.0], 1);
        let want = [-25.0 / 12.0, 4.0, -3.0, 4.0 / 3.0, -0.25];
        for (got, want) in w[1].iter().zip(want) {
            assert!((got - want).abs() < 1e-12);
        }
    }

    #[test]
    fn fourth_derivative_seven_point() {
        let xs: Vec<f64> = (-3..=3).map(|i| i as f64).collect();
        let w = fd_weights(0.0, &xs, 4);
        let want = [-1.0 / 6.0, 2.0, -13.0 / 2.0, 28.0 / 3.0, -13.0 / 2.0, 2.0, -1.0 / 6.0];
        for (got, want) in w[4].iter().zip(want) {
            assert!((got - want).abs() < 1e-11);
        }
    }
}
