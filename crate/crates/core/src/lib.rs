//! Numerical evaluation of the Fokas-method boundary integral operator for the
//! fourth-order Schrödinger equation `y_t - i(α y_xxxx + β y_xx) = 0` on the half line,
//! together with the oscillatory-integral machinery needed to check its dispersive
//! behaviour: branch-cut-aware invariance maps, the boundary contour of the spectral
//! region, Filon/Gauss-Kronrod quadrature, Van der Corput bound certificates, an
//! independent finite-difference solver, and norm/decay diagnostics.

pub mod cheb;
pub mod complex_plane;
pub mod contour;
pub mod dispersion;
pub mod evaluator;
pub mod oracle;
pub mod quadrature;
pub mod transforms;

pub use complex_plane::{
    branch_sqrt, invariance_nu, region_classify, spectral_w, BranchCut, RegionClass,
    SpectralParams,
};
pub use contour::{build_contour, ContourPath, ContourSet, PathLabel};

/// Complex scalar used throughout.
pub type C64 = num_complex::Complex64;
