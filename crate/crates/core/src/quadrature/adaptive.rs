//! Adaptive Gauss-Kronrod bisection for complex-valued integrands. This is the
//! brute-force reference rule every specialized rule is checked against.

use super::{QuadError, QuadResult};
use crate::C64;
use std::collections::BinaryHeap;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

/// 15-point Kronrod estimate with embedded 7-point Gauss error estimate.
fn qk15(f: &mut dyn FnMut(f64) -> C64, a: f64, b: f64) -> (C64, f64) {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let f_center = f(center);

    // the embedded 7-point Gauss rule uses the odd Kronrod nodes plus the center
    let mut res_gauss = f_center * WG[3];
    let mut res_kronrod = f_center * WGK[7];
    let mut res_abs = res_kronrod.norm();

    let mut fv = [[C64::new(0.0, 0.0); 2]; 7];
    for j in 0..7 {
        let abscissa = half * XGK[j];
        let f1 = f(center - abscissa);
        let f2 = f(center + abscissa);
        fv[j] = [f1, f2];
        let fsum = f1 + f2;
        if j % 2 == 1 {
            res_gauss += fsum * WG[j / 2];
        }
        res_kronrod += fsum * WGK[j];
        res_abs += WGK[j] * (f1.norm() + f2.norm());
    }

    let mean = res_kronrod * 0.5;
    let mut res_asc = WGK[7] * (f_center - mean).norm();
    for j in 0..7 {
        res_asc += WGK[j] * ((fv[j][0] - mean).norm() + (fv[j][1] - mean).norm());
    }

    let value = res_kronrod * half;
    res_abs *= half.abs();
    res_asc *= half.abs();

    let mut err = ((res_kronrod - res_gauss) * half).norm();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    (value, err)
}

struct Segment {
    a: f64,
    b: f64,
    value: C64,
    error: f64,
}

impl PartialEq for Segment {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl Eq for Segment {}
impl PartialOrd for Segment {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for Segment {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.error.partial_cmp(&other.error).unwrap_or(std::cmp::Ordering::Equal)
    }
}

const MAX_SEGMENTS: usize = 200_000;

/// Adaptive bisection until the summed local error estimates drop below `tol`.
pub fn adaptive_quad(
    mut f: impl FnMut(f64) -> C64,
    a: f64,
    b: f64,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    adaptive_quad_breakpoints(&mut f, a, b, &[], tol)
}

/// Adaptive bisection with mandatory initial breakpoints (integrand kinks,
/// branch points, phase features).
pub fn adaptive_quad_breakpoints(
    f: &mut dyn FnMut(f64) -> C64,
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
    edges.sort_by(|x, y| x.partial_cmp(y).unwrap());
    edges.dedup();

    let mut heap: BinaryHeap<Segment> = BinaryHeap::new();
    let mut total = C64::new(0.0, 0.0);
    let mut total_err = 0.0;
    for w in edges.windows(2) {
        let (v, e) = qk15(f, w[0], w[1]);
        total += v;
        total_err += e;
        heap.push(Segment { a: w[0], b: w[1], value: v, error: e });
    }

    let mut count = heap.len();
    while total_err > tol && count < MAX_SEGMENTS {
        let worst = heap.pop().expect("heap nonempty");
        let mid = 0.5 * (worst.a + worst.b);
        if mid <= worst.a || mid >= worst.b {
            // Interval at floating-point resolution; accept its estimate.
            total_err -= worst.error;
            total_err += worst.error.min(f64::EPSILON * worst.value.norm());
            heap.push(Segment { error: 0.0, ..worst });
            count += 1;
            continue;
        }
        let (v1, e1) = qk15(f, worst.a, mid);
        let (v2, e2) = qk15(f, mid, worst.b);
        total += v1 + v2 - worst.value;
        total_err += e1 + e2 - worst.error;
        heap.push(Segment { a: worst.a, b: mid, value: v1, error: e1 });
        heap.push(Segment { a: mid, b: worst.b, value: v2, error: e2 });
        count += 1;
    }
    if total_err > tol.max(1e-13 * total.norm()) && count >= MAX_SEGMENTS {
        return Err(QuadError::MaxSubdivisions { limit: MAX_SEGMENTS, achieved: total_err, tol });
    }
    Ok(QuadResult { value: total, error_estimate: total_err, panels_used: count })
}

/// Integral of an exponentially bounded amplitude over `[start, ∞)`:
/// truncate where the envelope `m_bound·e^{-sigma (s - start)}` integrates to
/// below `tol/2`, then run the adaptive rule at `tol/2`.
pub fn laplace_tail(
    f: impl FnMut(f64) -> C64,
    m_bound: f64,
    sigma: f64,
    start: f64,
    tol: f64,
) -> Result<QuadResult, QuadError> {
    if sigma <= 0.0 {
        return Err(QuadError::BadParameter(format!("decay rate must be positive, got {sigma}")));
    }
    if m_bound <= 0.0 {
        return Ok(QuadResult::zero());
    }
    let span = (2.0 * m_bound / (sigma * tol)).max(2.0).ln() / sigma;
    let mut res = adaptive_quad(f, start, start + span, 0.5 * tol)?;
    res.error_estimate += 0.5 * tol;
    Ok(res)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unit_interval_constant() {
        let r = adaptive_quad(|_| C64::new(1.0, 0.0), 0.0, 1.0, 1e-14).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-14);
        assert!(r.value.im.abs() < 1e-14);
    }

    #[test]
    fn decaying_exponential_tail() {
        let r = laplace_tail(|s| C64::new((-s).exp(), 0.0), 1.0, 1.0, 0.0, 1e-10).unwrap();
        assert!((r.value.re - 1.0).abs() < 1e-10);
        // s e^{-2s}: valid envelope M e^{-σs} needs σ < 2; sup s·e^{-0.2s} = 5/e.
        let m = 5.0 / 1.0_f64.exp();
        let r = laplace_tail(|s| C64::new(s * (-2.0 * s).exp(), 0.0), m, 1.8, 0.0, 1e-10).unwrap();
        assert!((r.value.re - 0.25).abs() < 1e-10, "{}", r.value.re);
        let r = laplace_tail(|_| C64::new(0.0, 0.0), 0.0, 1.0, 0.0, 1e-10).unwrap();
        assert_eq!(r.value, C64::new(0.0, 0.0));
        assert!(laplace_tail(|_| C64::new(0.0, 0.0), 1.0, -1.0, 0.0, 1e-10).is_err());
    }

    #[test]
    fn fresnel_type_oscillation() {
        // ∫_0^1 e^{i 50 ξ²} dξ against a refinement oracle: composite
        // Clenshaw-Curtis at two resolutions (independent of the Kronrod rule).
        let f = |x: f64| (C64::i() * 50.0 * x * x).exp();
        let composite = |panels: usize| -> C64 {
            let nodes = crate::cheb::cgl_nodes(32);
            let weights = crate::cheb::cc_weights(32);
            let mut acc = C64::new(0.0, 0.0);
            for p in 0..panels {
                let mid = (p as f64 + 0.5) / panels as f64;
                let half = 0.5 / panels as f64;
                for (u, w) in nodes.iter().zip(&weights) {
                    acc += f(mid + half * u) * *w * half;
                }
            }
            acc
        };
        let coarse = composite(16);
        let exact = composite(32);
        assert!((coarse - exact).norm() < 1e-13, "oracle not converged");
        let r = adaptive_quad(f, 0.0, 1.0, 1e-12).unwrap();
        assert!((r.value - exact).norm() < 1e-10, "err {}", (r.value - exact).norm());
    }

    #[test]
    fn oscillatory_full_period_is_zero() {
        let r = adaptive_quad(|x| (C64::i() * x).exp(), 0.0, 2.0 * std::f64::consts::PI, 1e-12)
            .unwrap();
        assert!(r.value.norm() < 1e-12);
    }
}
