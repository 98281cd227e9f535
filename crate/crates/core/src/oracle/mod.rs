//! Independent finite-difference oracle: a Crank-Nicolson / fourth-order-in-space
//! solver for the initial-boundary value problem on a truncated half line, the
//! half-line Fourier transform, and the numerical check of the global relation.

pub mod banded;
pub mod fd;
pub mod relation;
pub mod spline;
pub mod stencil;

pub use fd::{fd_solve, FdError, FdGrid, FdSolution};
pub use relation::{compare_fields, global_relation_residual, half_line_fourier, FieldComparison};
