//! Construction of the oriented boundary `∂D⁺` of the spectral region
//! `D⁺ = {Re w(k) < 0, Im k > 0}` for arbitrary coefficients (α, β).
//!
//! `Re w(k) = 2ab(2α(a² - b²) - β)` for `k = a + ib`, so the boundary consists of
//! the coordinate axes and the hyperbola `a² - b² = c`, `c = β/(2α)`, intersected
//! with the upper half plane. Orientation keeps `D⁺` on the left.

use crate::complex_plane::{re_w_factored, BranchCut, SpectralParams};
use crate::C64;
use std::f64::consts::PI;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum ContourError {
    #[error("parameter {0} outside the path interval [{1}, {2:?}]")]
    OutOfRange(f64, f64, Option<f64>),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PathLabel {
    Gamma1,
    Gamma2,
    Gamma3,
    Gamma4,
    Gamma5,
}

impl PathLabel {
    pub fn index(&self) -> usize {
        match self {
            PathLabel::Gamma1 => 1,
            PathLabel::Gamma2 => 2,
            PathLabel::Gamma3 => 3,
            PathLabel::Gamma4 => 4,
            PathLabel::Gamma5 => 5,
        }
    }

    pub fn from_index(i: usize) -> Option<Self> {
        match i {
            1 => Some(PathLabel::Gamma1),
            2 => Some(PathLabel::Gamma2),
            3 => Some(PathLabel::Gamma3),
            4 => Some(PathLabel::Gamma4),
            5 => Some(PathLabel::Gamma5),
            _ => None,
        }
    }
}

impl std::fmt::Display for PathLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "gamma{}", self.index())
    }
}

/// Analytic parameterization of one boundary piece.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Parameterization {
    /// `k(s) = i s`
    ImagAxis,
    /// `k(s) = ±s`
    RealAxis { mirrored: bool },
    /// `k(m) = σ √(m² + c) + i m`, parameterized by the imaginary part (c > 0).
    HyperbolaByIm { sign_re: f64, c: f64 },
    /// `k(s) = σ s + i √(s² - c)`, parameterized by the real part (c ≤ 0).
    HyperbolaByRe { sign_re: f64, c: f64 },
}

/// How the exponential factor decays along the path; drives quadrature choices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DecayClass {
    /// `e^{ikx}` decays like `e^{-sx}` (imaginary axis).
    LaplaceInX,
    /// bounded oscillatory piece (finite interval).
    OscillatoryBounded,
    /// oscillatory along an unbounded real ray.
    OscillatoryRay,
    /// hyperbola branch: Laplace factor in x times oscillation in t.
    MixedHyperbola,
}

/// Branch rule used when evaluating `ν` along a path. `WindowReduced` is the plain
/// rotated-window root. The left hyperbola branch crosses the window edge near its
/// foot, where the window-reduced root flips sign mid-path; `PathContinuous` takes
/// the principal root there instead, which agrees with the window away from the
/// crossing and keeps `k + ν` vanishing at the foot.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NuRule {
    WindowReduced,
    PathContinuous,
}

#[derive(Debug, Clone)]
pub struct ContourPath {
    pub label: PathLabel,
    pub param: Parameterization,
    pub s_lo: f64,
    /// `None` means the interval extends to +∞.
    pub s_hi: Option<f64>,
    /// ±1; the oriented integral is `orientation · ∫_{s_lo}^{s_hi} f(k(s)) k'(s) ds`.
    pub orientation: f64,
    pub decay_class: DecayClass,
    /// Parameter values where `β/α - k(s)² = 0` (branch points of ν on the path).
    pub branch_points: Vec<f64>,
    pub nu_rule: NuRule,
    /// Parameter value where the path crosses the branch cut, if any.
    pub cut_crossing: Option<f64>,
}

impl ContourPath {
    pub fn position(&self, s: f64) -> C64 {
        match self.param {
            Parameterization::ImagAxis => C64::new(0.0, s),
            Parameterization::RealAxis { mirrored } => {
                C64::new(if mirrored { -s } else { s }, 0.0)
            }
            Parameterization::HyperbolaByIm { sign_re, c } => {
                C64::new(sign_re * (s * s + c).sqrt(), s)
            }
            Parameterization::HyperbolaByRe { sign_re, c } => {
                C64::new(sign_re * s, (s * s - c).sqrt())
            }
        }
    }

    pub fn velocity(&self, s: f64) -> C64 {
        match self.param {
            Parameterization::ImagAxis => C64::new(0.0, 1.0),
            Parameterization::RealAxis { mirrored } => {
                C64::new(if mirrored { -1.0 } else { 1.0 }, 0.0)
            }
            Parameterization::HyperbolaByIm { sign_re, c } => {
                C64::new(sign_re * s / (s * s + c).sqrt(), 1.0)
            }
            Parameterization::HyperbolaByRe { sign_re, c } => {
                C64::new(sign_re, s / (s * s - c).sqrt())
            }
        }
    }

    /// `w(k(s))` in closed form; purely imaginary on the boundary by construction.
    pub fn w_on_path(&self, s: f64, p: &SpectralParams) -> C64 {
        let (alpha, beta) = (p.alpha(), p.beta());
        let im = match self.param {
            Parameterization::ImagAxis => -(alpha * s.powi(4) + beta * s * s),
            Parameterization::RealAxis { .. } => -(alpha * s.powi(4) - beta * s * s),
            Parameterization::HyperbolaByIm { c, .. } => {
                let q = 2.0 * s * s + c;
                alpha * q * q
            }
            Parameterization::HyperbolaByRe { c, .. } => {
                let q = 2.0 * s * s - c;
                alpha * q * q
            }
        };
        C64::new(0.0, im)
    }

    /// `Im w(k(s))` as a quartic polynomial `[c0..c4]` in the path parameter.
    pub fn im_w_poly(&self, p: &SpectralParams) -> [f64; 5] {
        let (alpha, beta) = (p.alpha(), p.beta());
        match self.param {
            Parameterization::ImagAxis => [0.0, 0.0, -beta, 0.0, -alpha],
            Parameterization::RealAxis { .. } => [0.0, 0.0, beta, 0.0, -alpha],
            Parameterization::HyperbolaByIm { c, .. } => {
                [alpha * c * c, 0.0, 4.0 * alpha * c, 0.0, 4.0 * alpha]
            }
            Parameterization::HyperbolaByRe { c, .. } => {
                [alpha * c * c, 0.0, -4.0 * alpha * c, 0.0, 4.0 * alpha]
            }
        }
    }

    /// Invariance map along the path, resolved by this path's branch rule.
    pub fn nu_on_path(&self, s: f64, p: &SpectralParams, cut: &BranchCut) -> C64 {
        let k = self.position(s);
        let z = C64::new(p.ratio(), 0.0) - k * k;
        match self.nu_rule {
            NuRule::WindowReduced => crate::complex_plane::branch_sqrt(z, cut),
            NuRule::PathContinuous => {
                // Principal root; on the affected paths the principal argument is
                // continuous over the whole interval.
                z.sqrt()
            }
        }
    }

    pub fn contains(&self, s: f64) -> bool {
        s >= self.s_lo && self.s_hi.map_or(true, |hi| s <= hi)
    }

    /// Midpoint parameter used for orientation probes; finite even on rays.
    pub fn probe_param(&self) -> f64 {
        match self.s_hi {
            Some(hi) => 0.5 * (self.s_lo + hi),
            None => self.s_lo + 1.0,
        }
    }

    /// Unit leftward normal (relative to orientation) at parameter `s`.
    pub fn left_normal(&self, s: f64) -> C64 {
        let t = self.velocity(s) * self.orientation;
        C64::i() * t / t.norm()
    }
}

#[derive(Debug, Clone)]
pub struct ContourSet {
    pub params: SpectralParams,
    pub cut: BranchCut,
    paths: Vec<ContourPath>,
}

impl ContourSet {
    pub fn paths(&self) -> &[ContourPath] {
        &self.paths
    }

    pub fn path(&self, label: PathLabel) -> Option<&ContourPath> {
        self.paths.iter().find(|p| p.label == label)
    }

    /// Probe point just left of the path midpoint; must satisfy `Re w < 0`.
    pub fn left_probe(&self, path: &ContourPath, delta: f64) -> C64 {
        let s = path.probe_param();
        path.position(s) + path.left_normal(s) * delta
    }

    /// Check that `D⁺` lies to the left of every path at its midpoint.
    pub fn orientation_ok(&self) -> bool {
        self.paths.iter().all(|path| {
            let probe = self.left_probe(path, 1e-4);
            re_w_factored(probe, &self.params) < 0.0
        })
    }
}

/// Parameter of the cut crossing on a `HyperbolaByIm` branch, if the window edge
/// intersects the path's argument range. On that branch `β/α - k² = c ∓ 2ism` has
/// constant real part `c` and monotone imaginary part.
fn hyperbola_cut_crossing(sign_re: f64, c: f64, cut: &BranchCut) -> Option<f64> {
    // arg z runs over (0, π/2) on the left branch (sign_re < 0) and (-π/2, 0) on the
    // right branch; reduce the window edge to the principal interval and intersect.
    let mut edge = cut.arg_lo();
    while edge > PI {
        edge -= 2.0 * PI;
    }
    while edge <= -PI {
        edge += 2.0 * PI;
    }
    let in_range = if sign_re < 0.0 {
        edge > 0.0 && edge < PI / 2.0
    } else {
        edge < 0.0 && edge > -PI / 2.0
    };
    if !in_range {
        return None;
    }
    // |2sm| = c tan|edge| with s = √(m² + c): solve m²(m² + c) = (c tan|edge|/2)².
    let rhs = (c * edge.abs().tan() / 2.0).powi(2);
    let m2 = 0.5 * (-c + (c * c + 4.0 * rhs).sqrt());
    Some(m2.sqrt())
}

/// Build the oriented `∂D⁺` for the given coefficients under the default branch cut.
pub fn build_contour(p: &SpectralParams) -> ContourSet {
    build_contour_with_cut(p, &BranchCut::for_params(p))
}

pub fn build_contour_with_cut(p: &SpectralParams, cut: &BranchCut) -> ContourSet {
    let paths = if p.alpha() > 0.0 {
        build_positive_alpha(p, cut)
    } else {
        // Re w changes sign under k -> -conj(k), so D⁺ for (α, β) is the mirror image
        // of D⁺ for (-α, -β); mirroring reverses orientation.
        let flipped = SpectralParams::new(-p.alpha(), -p.beta()).expect("alpha nonzero");
        build_positive_alpha(&flipped, cut)
            .into_iter()
            .map(|path| mirror_path(path, cut))
            .collect()
    };
    ContourSet { params: *p, cut: *cut, paths }
}

fn build_positive_alpha(p: &SpectralParams, cut: &BranchCut) -> Vec<ContourPath> {
    let c = p.hyperbola_level();
    let ratio = p.ratio(); // 2c
    let mut paths = Vec::new();

    if c > 0.0 {
        paths.push(ContourPath {
            label: PathLabel::Gamma1,
            param: Parameterization::ImagAxis,
            s_lo: 0.0,
            s_hi: None,
            orientation: -1.0,
            decay_class: DecayClass::LaplaceInX,
            branch_points: vec![],
            nu_rule: NuRule::WindowReduced,
            cut_crossing: None,
        });
        paths.push(ContourPath {
            label: PathLabel::Gamma2,
            param: Parameterization::RealAxis { mirrored: false },
            s_lo: 0.0,
            s_hi: Some(c.sqrt()),
            orientation: 1.0,
            decay_class: DecayClass::OscillatoryBounded,
            branch_points: vec![],
            nu_rule: NuRule::WindowReduced,
            cut_crossing: None,
        });
        for (label, sign_re) in [(PathLabel::Gamma3, 1.0), (PathLabel::Gamma4, -1.0)] {
            let crossing = hyperbola_cut_crossing(sign_re, c, cut);
            paths.push(ContourPath {
                label,
                param: Parameterization::HyperbolaByIm { sign_re, c },
                s_lo: 0.0,
                s_hi: None,
                orientation: 1.0,
                decay_class: DecayClass::MixedHyperbola,
                branch_points: vec![],
                nu_rule: if crossing.is_some() {
                    NuRule::PathContinuous
                } else {
                    NuRule::WindowReduced
                },
                cut_crossing: crossing,
            });
        }
        // Between -√(β/α) and the hyperbola vertex the branch cut separates the
        // real segment from the region interior; the boundary value of the
        // D⁺-analytic branch there is the principal root, which also joins the
        // left hyperbola foot continuously.
        paths.push(ContourPath {
            label: PathLabel::Gamma5,
            param: Parameterization::RealAxis { mirrored: true },
            s_lo: c.sqrt(),
            s_hi: None,
            orientation: -1.0,
            decay_class: DecayClass::OscillatoryRay,
            branch_points: vec![ratio.sqrt()],
            nu_rule: NuRule::PathContinuous,
            cut_crossing: None,
        });
    } else if c == 0.0 {
        // Hyperbolas degenerate to the rays arg k = π/4 and 3π/4; the real segment is empty.
        paths.push(ContourPath {
            label: PathLabel::Gamma1,
            param: Parameterization::ImagAxis,
            s_lo: 0.0,
            s_hi: None,
            orientation: -1.0,
            decay_class: DecayClass::LaplaceInX,
            branch_points: vec![],
            nu_rule: NuRule::WindowReduced,
            cut_crossing: None,
        });
        for (label, sign_re) in [(PathLabel::Gamma3, 1.0), (PathLabel::Gamma4, -1.0)] {
            paths.push(ContourPath {
                label,
                param: Parameterization::HyperbolaByRe { sign_re, c: 0.0 },
                s_lo: 0.0,
                s_hi: None,
                orientation: 1.0,
                decay_class: DecayClass::MixedHyperbola,
                branch_points: vec![],
                nu_rule: NuRule::WindowReduced,
                cut_crossing: None,
            });
        }
        paths.push(ContourPath {
            label: PathLabel::Gamma5,
            param: Parameterization::RealAxis { mirrored: true },
            s_lo: 0.0,
            s_hi: None,
            orientation: -1.0,
            decay_class: DecayClass::OscillatoryRay,
            branch_points: vec![],
            nu_rule: NuRule::WindowReduced,
            cut_crossing: None,
        });
    } else {
        // c < 0: the boundary curve is b = √(a² - c) over all real a; it meets the
        // imaginary axis at i√(-c), and the ν branch point i√(-2c) sits on γ1.
        let axis_cross = (-c).sqrt();
        paths.push(ContourPath {
            label: PathLabel::Gamma1,
            param: Parameterization::ImagAxis,
            s_lo: axis_cross,
            s_hi: None,
            orientation: -1.0,
            decay_class: DecayClass::LaplaceInX,
            branch_points: vec![(-ratio).sqrt()],
            nu_rule: NuRule::WindowReduced,
            cut_crossing: None,
        });
        paths.push(ContourPath {
            label: PathLabel::Gamma2,
            param: Parameterization::ImagAxis,
            s_lo: 0.0,
            s_hi: Some(axis_cross),
            orientation: 1.0,
            decay_class: DecayClass::OscillatoryBounded,
            branch_points: vec![],
            nu_rule: NuRule::WindowReduced,
            cut_crossing: None,
        });
        for (label, sign_re) in [(PathLabel::Gamma3, 1.0), (PathLabel::Gamma4, -1.0)] {
            paths.push(ContourPath {
                label,
                param: Parameterization::HyperbolaByRe { sign_re, c },
                s_lo: 0.0,
                s_hi: None,
                orientation: 1.0,
                decay_class: DecayClass::MixedHyperbola,
                branch_points: vec![],
                nu_rule: NuRule::WindowReduced,
                cut_crossing: None,
            });
        }
        paths.push(ContourPath {
            label: PathLabel::Gamma5,
            param: Parameterization::RealAxis { mirrored: true },
            s_lo: 0.0,
            s_hi: None,
            orientation: -1.0,
            decay_class: DecayClass::OscillatoryRay,
            branch_points: vec![],
            nu_rule: NuRule::WindowReduced,
            cut_crossing: None,
        });
    }
    paths
}

fn mirror_path(path: ContourPath, cut: &BranchCut) -> ContourPath {
    let param = match path.param {
        Parameterization::ImagAxis => Parameterization::ImagAxis,
        Parameterization::RealAxis { mirrored } => Parameterization::RealAxis { mirrored: !mirrored },
        Parameterization::HyperbolaByIm { sign_re, c } => {
            Parameterization::HyperbolaByIm { sign_re: -sign_re, c }
        }
        Parameterization::HyperbolaByRe { sign_re, c } => {
            Parameterization::HyperbolaByRe { sign_re: -sign_re, c }
        }
    };
    let cut_crossing = match param {
        Parameterization::HyperbolaByIm { sign_re, c } => hyperbola_cut_crossing(sign_re, c, cut),
        _ => None,
    };
    ContourPath {
        label: path.label,
        param,
        s_lo: path.s_lo,
        s_hi: path.s_hi,
        orientation: -path.orientation,
        decay_class: path.decay_class,
        branch_points: path.branch_points,
        nu_rule: if cut_crossing.is_some() || path.nu_rule == NuRule::PathContinuous {
            NuRule::PathContinuous
        } else {
            NuRule::WindowReduced
        },
        cut_crossing,
    }
}
