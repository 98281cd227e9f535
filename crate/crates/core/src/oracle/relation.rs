//! Half-line Fourier transform of sampled rows, the numerical residual of the
//! global relation, and field comparison between the operator evaluation and
//! the finite-difference reference.

use super::fd::FdSolution;
use super::spline::CubicSpline;
use crate::complex_plane::{spectral_w, SpectralParams};
use crate::transforms::{t_transform, BoundaryDatum, TransformError};
use crate::C64;

#[derive(Debug, thiserror::Error)]
pub enum RelationError {
    #[error("Im k must be <= 0 for the half-line transform, got {0}")]
    UpperHalfPlane(f64),
    #[error("incompatible grids: {0}")]
    GridMismatch(String),
    #[error(transparent)]
    Transform(#[from] TransformError),
    #[error(transparent)]
    Spline(#[from] super::spline::SplineError),
}

/// `ŷ(k) = ∫_0^L e^{-ikx} y(x) dx` by composite Simpson over the sampled row.
pub fn half_line_fourier(xs: &[f64], row: &[C64], k: C64) -> Result<C64, RelationError> {
    if k.im > 0.0 {
        return Err(RelationError::UpperHalfPlane(k.im));
    }
    assert_eq!(xs.len(), row.len());
    let n = xs.len() - 1;
    let h = xs[1] - xs[0];
    let f = |j: usize| (-C64::i() * k * xs[j]).exp() * row[j];
    let mut acc = C64::new(0.0, 0.0);
    let m = if n % 2 == 0 { n } else { n - 1 };
    let mut j = 0;
    while j + 2 <= m {
        acc += (f(j) + 4.0 * f(j + 1) + f(j + 2)) * (h / 3.0);
        j += 2;
    }
    if n % 2 == 1 {
        acc += (f(n - 1) + f(n)) * (h / 2.0);
    }
    Ok(acc)
}

/// Relative defect of the global relation
/// `e^{w(k)t} ŷ(k,t) = -iα g̃₃ + αk g̃₂ - i(β-αk²) g̃₁ + k(β-αk²) g̃₀`
/// with the unknown traces measured from the finite-difference solution.
pub fn global_relation_residual(
    fd: &FdSolution,
    p: &SpectralParams,
    g0: &BoundaryDatum,
    g1: &BoundaryDatum,
    k: C64,
    t: f64,
) -> Result<f64, RelationError> {
    if k.im > 0.0 {
        return Err(RelationError::UpperHalfPlane(k.im));
    }
    let row = fd
        .row_at(t)
        .ok_or_else(|| RelationError::GridMismatch(format!("t={t} not on the FD time grid")))?;
    let xs = fd.grid.x_nodes();
    let w = spectral_w(k, p);
    let lhs = (w * t).exp() * half_line_fourier(&xs, row, k)?;

    // traces g2, g3 interpolated in time by cubic splines
    let g2_re = CubicSpline::fit(&fd.times, &fd.g2.iter().map(|v| v.re).collect::<Vec<_>>())?;
    let g2_im = CubicSpline::fit(&fd.times, &fd.g2.iter().map(|v| v.im).collect::<Vec<_>>())?;
    let g3_re = CubicSpline::fit(&fd.times, &fd.g3.iter().map(|v| v.re).collect::<Vec<_>>())?;
    let g3_im = CubicSpline::fit(&fd.times, &fd.g3.iter().map(|v| v.im).collect::<Vec<_>>())?;
    let tol = 1e-10;
    let tt2 = t_transform(|s| C64::new(g2_re.eval(s), g2_im.eval(s)), w, t, tol)?.value;
    let tt3 = t_transform(|s| C64::new(g3_re.eval(s), g3_im.eval(s)), w, t, tol)?.value;
    let tt1 = g1.t_transform(w, t, tol)?.value;
    let tt0 = g0.t_transform(w, t, tol)?.value;

    let (alpha, beta) = (p.alpha(), p.beta());
    let bk2 = beta - alpha * k * k;
    let rhs = -C64::i() * alpha * tt3 + alpha * k * tt2 - C64::i() * bk2 * tt1 + k * bk2 * tt0;
    Ok((lhs - rhs).norm() / lhs.norm().max(rhs.norm()).max(1e-12))
}

#[derive(Debug, Clone)]
pub struct FieldComparison {
    pub t: f64,
    pub rel_l2: f64,
    pub max_abs_diff: f64,
    pub ref_l2: f64,
}

/// Compare operator values `values[i]` at `(x_nodes[i], t)` against the
/// finite-difference row at the same time (cubic-spline interpolated in x).
pub fn compare_fields(
    x_nodes: &[f64],
    values: &[C64],
    fd: &FdSolution,
    t: f64,
) -> Result<FieldComparison, RelationError> {
    if x_nodes.len() != values.len() {
        return Err(RelationError::GridMismatch("x grid and values differ in length".into()));
    }
    let row = fd
        .row_at(t)
        .ok_or_else(|| RelationError::GridMismatch(format!("t={t} not on the FD time grid")))?;
    let xs = fd.grid.x_nodes();
    let re = CubicSpline::fit(&xs, &row.iter().map(|v| v.re).collect::<Vec<_>>())?;
    let im = CubicSpline::fit(&xs, &row.iter().map(|v| v.im).collect::<Vec<_>>())?;

    let mut num = 0.0;
    let mut den = 0.0;
    let mut max_abs = 0.0_f64;
    for i in 0..x_nodes.len() {
        let x = x_nodes[i];
        if x > fd.grid.length {
            continue;
        }
        let reference = C64::new(re.eval(x), im.eval(x));
        let d = (values[i] - reference).norm_sqr();
        // trapezoid weights on the (possibly nonuniform) x grid
        let wl = if i == 0 { 0.0 } else { 0.5 * (x_nodes[i] - x_nodes[i - 1]) };
        let wr = if i + 1 == x_nodes.len() { 0.0 } else { 0.5 * (x_nodes[i + 1] - x_nodes[i]) };
        let w = wl + wr;
        num += w * d;
        den += w * reference.norm_sqr();
        max_abs = max_abs.max(d.sqrt());
    }
    let ref_l2 = den.sqrt();
    Ok(FieldComparison {
        t,
        rel_l2: if den > 0.0 { (num / den).sqrt() } else { num.sqrt() },
        max_abs_diff: max_abs,
        ref_l2,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::fd::{fd_solve, FdGrid};

    #[test]
    fn transform_of_decaying_exponential() {
        let n = 4000;
        let l = 20.0;
        let xs: Vec<f64> = (0..=n).map(|j| l * j as f64 / n as f64).collect();
        let row: Vec<C64> = xs.iter().map(|&x| C64::new((-x).exp(), 0.0)).collect();
        // k = 0: ∫ e^{-x} = 1 (up to truncation e^{-20})
        let v = half_line_fourier(&xs, &row, C64::new(0.0, 0.0)).unwrap();
        assert!((v.re - 1.0).abs() < 1e-8, "{v}");
        // k = -i/2: ∫ e^{-x} e^{-x/2} = 2/3
        let v = half_line_fourier(&xs, &row, C64::new(0.0, -0.5)).unwrap();
        assert!((v - C64::new(2.0 / 3.0, 0.0)).norm() < 1e-6, "{v}");
        // zero field
        let zero: Vec<C64> = xs.iter().map(|_| C64::new(0.0, 0.0)).collect();
        let v = half_line_fourier(&xs, &zero, C64::new(1.0, -1.0)).unwrap();
        assert_eq!(v, C64::new(0.0, 0.0));
        // upper half plane rejected
        assert!(half_line_fourier(&xs, &row, C64::new(0.0, 0.5)).is_err());
    }

    #[test]
    fn zero_data_residual_vanishes() {
        let p = SpectralParams::standard();
        let grid = FdGrid::new(10.0, 200, 5e-3, 20).unwrap();
        let z = BoundaryDatum::zero(0.1);
        let sol = fd_solve(&p, &z, &z, &grid).unwrap();
        let r = global_relation_residual(&sol, &p, &z, &z, C64::new(0.0, -2.0), 0.1).unwrap();
        assert!(r <= 1e-10, "residual {r}");
    }

    #[test]
    fn compare_identical_fields_is_zero() {
        // exercises only the comparison arithmetic, so leakage gating is bypassed
        let p = SpectralParams::standard();
        let grid = FdGrid::new(10.0, 200, 5e-3, 20).unwrap();
        let g0 = BoundaryDatum::gaussian(0.1, 0.05, 0.01, C64::new(1.0, 0.0)).unwrap();
        let sol = crate::oracle::fd::fd_evolve(
            &p,
            &grid,
            &|t| g0.eval(t),
            &|_| C64::new(0.0, 0.0),
            None,
            None,
        )
        .unwrap();
        let xs = grid.x_nodes();
        let row = sol.row_at(0.1).unwrap().to_vec();
        let cmp = compare_fields(&xs, &row, &sol, 0.1).unwrap();
        assert!(cmp.rel_l2 < 1e-12 && cmp.max_abs_diff < 1e-12);
    }
}
