//! Computable Van der Corput bound certificates for the model oscillatory
//! integrals: `δ = t^{-1/4}`, a small interval near the origin of the third
//! derivative, a stationary-point neighborhood, and explicit constants for the
//! non-stationary remainder pieces. Every piece is a pure multiple of δ, so the
//! certificate halves exactly under `t → 16t` at a fixed case tag.

use super::{QuadError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VdcKind {
    Van,
    Van2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CaseTag {
    /// stationary point interior to the main interval
    I,
    /// infimum of |φ'| at the left end
    II,
    /// infimum of |φ'| at the right end
    III,
}

impl std::fmt::Display for CaseTag {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CaseTag::I => write!(f, "i"),
            CaseTag::II => write!(f, "ii"),
            CaseTag::III => write!(f, "iii"),
        }
    }
}

#[derive(Debug, Clone)]
pub struct VdcCertificate {
    pub kind: VdcKind,
    /// `t^{-1/4}`
    pub delta: f64,
    /// left end of the Van der Corput interval (δ/24 resp. max(1/√2, δ/96))
    pub split_point: f64,
    /// root of the normalized `φ'` when it falls inside the interval
    pub stationary_point: Option<f64>,
    pub case_tag: CaseTag,
    pub piece_bounds: Vec<(&'static str, f64)>,
    pub total_bound: f64,
}

/// Root of the monotone cubic `a ξ³ + b ξ - q` by safeguarded bisection (a, b > 0).
fn monotone_cubic_root(a: f64, b: f64, q: f64) -> f64 {
    let eval = |x: f64| (a * x * x + b) * x - q;
    let mut hi = 1.0_f64.max(q.abs() / b);
    while eval(hi) < 0.0 {
        hi *= 2.0;
    }
    let mut lo = -hi;
    while eval(lo) > 0.0 {
        lo *= 2.0;
        hi = hi.max(-lo);
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi || (hi - lo) < 1e-12 * (1.0 + mid.abs()) {
            break;
        }
        if eval(mid) >= 0.0 {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    0.5 * (lo + hi)
}

/// Build the bound certificate for `|I(s_upper; shift, t)|` of the given kind.
pub fn vdc_certificate(
    kind: VdcKind,
    s_upper: f64,
    shift: f64,
    t: f64,
) -> Result<VdcCertificate, QuadError> {
    if t <= 0.0 {
        return Err(QuadError::BadParameter(format!("t must be positive, got {t}")));
    }
    // Nested square roots so δ(16t) = δ(t)/2 exactly in floating point.
    let delta = 1.0 / t.sqrt().sqrt();

    // Normalized phase φ with φ(ξ)·t the true phase magnitude:
    //   van:  φ = ξ⁴ + ξ² - ξ·y/t,       φ' = 4ξ³ + 2ξ - y/t
    //   van2: φ = 4ξ⁴ - 2ξ² + 1/4 + ξω/t, φ' = 16ξ³ - 4ξ + ω/t
    // (monotone on the certificate interval in both cases).
    let (split, head_bound, side_const, dphi): (f64, f64, f64, Box<dyn Fn(f64) -> f64>) = match kind
    {
        VdcKind::Van => (
            delta / 24.0,
            delta / 24.0,
            192.0,
            Box::new(move |x: f64| (4.0 * x * x + 2.0) * x - shift / t),
        ),
        VdcKind::Van2 => (
            (delta / 96.0).max(super::osc::INV_SQRT2),
            delta / 96.0,
            64.0,
            Box::new(move |x: f64| (16.0 * x * x - 4.0) * x + shift / t),
        ),
    };

    let lo = split;
    let hi = s_upper.max(lo);
    let (case_tag, stationary_point) = if dphi(lo) >= 0.0 {
        (CaseTag::II, None)
    } else if dphi(hi) <= 0.0 {
        (CaseTag::III, None)
    } else {
        let m = match kind {
            VdcKind::Van => monotone_cubic_root(4.0, 2.0, shift / t),
            VdcKind::Van2 => {
                // φ'' = 48ξ² - 4 > 0 on the interval; bisection on [lo, hi].
                let mut a = lo;
                let mut b = hi;
                for _ in 0..200 {
                    let mid = 0.5 * (a + b);
                    if mid <= a || mid >= b {
                        break;
                    }
                    if dphi(mid) >= 0.0 {
                        b = mid;
                    } else {
                        a = mid;
                    }
                }
                0.5 * (a + b)
            }
        };
        (CaseTag::I, Some(m))
    };

    let piece_bounds: Vec<(&'static str, f64)> = match case_tag {
        CaseTag::I => vec![
            ("A", head_bound),
            ("B1", side_const * delta),
            ("B2", 2.0 * delta),
            ("B3", side_const * delta),
        ],
        CaseTag::II => {
            vec![("A", head_bound), ("C1", delta), ("C2", side_const * delta)]
        }
        CaseTag::III => {
            vec![("A", head_bound), ("D1", side_const * delta), ("D2", delta)]
        }
    };
    let total_bound = piece_bounds.iter().map(|(_, v)| v).sum();
    Ok(VdcCertificate {
        kind,
        delta,
        split_point: split,
        stationary_point,
        case_tag,
        piece_bounds,
        total_bound,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{oscillatory_i, OscKind};

    #[test]
    fn worst_case_total_at_unit_time() {
        // t = 1, y = 0: the stationary point of 4ξ³+2ξ is 0 < δ/24, case (ii).
        let cert = vdc_certificate(VdcKind::Van, 5.0, 0.0, 1.0).unwrap();
        assert_eq!(cert.case_tag, CaseTag::II);
        assert!(cert.total_bound <= 1.0 / 24.0 + 2.0 + 2.0 * 192.0 + 1e-12);
        // Case (i) worst case: interior stationary point.
        let cert = vdc_certificate(VdcKind::Van, 5.0, 10.0, 1.0).unwrap();
        assert_eq!(cert.case_tag, CaseTag::I);
        let want = 1.0 / 24.0 + 2.0 * 192.0 + 2.0;
        assert!((cert.total_bound - want).abs() < 1e-12);
        let m = cert.stationary_point.unwrap();
        assert!((4.0 * m * m * m + 2.0 * m - 10.0).abs() < 1e-9);
    }

    #[test]
    fn certificate_halves_exactly_under_t_times_16() {
        for &(s, y, t) in &[(2.0, 3.0, 0.25), (5.0, -7.0, 0.01), (1.0, 0.0, 0.9)] {
            let a = vdc_certificate(VdcKind::Van, s, y, t).unwrap();
            let b = vdc_certificate(VdcKind::Van, s, y, 16.0 * t).unwrap();
            if a.case_tag == b.case_tag {
                assert_eq!(a.total_bound, 2.0 * b.total_bound, "s={s} y={y} t={t}");
            }
            let a = vdc_certificate(VdcKind::Van2, s.max(1.0), y, t).unwrap();
            let b = vdc_certificate(VdcKind::Van2, s.max(1.0), y, 16.0 * t).unwrap();
            if a.case_tag == b.case_tag {
                assert_eq!(a.total_bound, 2.0 * b.total_bound);
            }
        }
    }

    #[test]
    fn total_bound_dominates_integral_on_samples() {
        for &t in &[0.05, 0.3, 1.0] {
            for &y in &[-12.0, 0.0, 4.0, 19.0] {
                for &s in &[0.3, 2.0, 8.0] {
                    let i = oscillatory_i(OscKind::Van, s, y, t, 1e-9).unwrap();
                    let cert = vdc_certificate(VdcKind::Van, s, y, t).unwrap();
                    assert!(
                        i.value.norm() <= cert.total_bound,
                        "(s,y,t)=({s},{y},{t}): |I|={} bound={}",
                        i.value.norm(),
                        cert.total_bound
                    );
                    if s > 0.8 {
                        let i = oscillatory_i(OscKind::Van2, s, y, t, 1e-9).unwrap();
                        let cert = vdc_certificate(VdcKind::Van2, s, y, t).unwrap();
                        assert!(i.value.norm() <= cert.total_bound);
                    }
                }
            }
        }
    }

    #[test]
    fn pieces_are_nonnegative_and_sum() {
        let cert = vdc_certificate(VdcKind::Van2, 3.0, 5.0, 0.2).unwrap();
        let sum: f64 = cert.piece_bounds.iter().map(|(_, v)| v).sum();
        assert_eq!(sum, cert.total_bound);
        assert!(cert.piece_bounds.iter().all(|(_, v)| *v >= 0.0));
        assert_eq!(cert.delta, 1.0 / 0.2_f64.sqrt().sqrt());
    }
}
