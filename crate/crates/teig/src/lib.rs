//! Interior transmission eigenvalues of the 2D Helmholtz transmission problem.
//!
//! The library assembles boundary-integral operators with Nyström quadrature,
//! reduces the resulting 2×2 block system to a (optionally Tikhonov-regularized)
//! Schur complement, and locates transmission eigenvalues by scanning wavenumber
//! grids with a contour-integral spectral-projection indicator. An analytic
//! Bessel-determinant oracle for the disk provides ground truth for validation.
//!
//! The crate is organized bottom-up:
//!
//! - [`special`] — complex-argument cylinder functions and the Helmholtz
//!   fundamental solution,
//! - [`geometry`] — parametric boundary curves, sigmoid-graded corner meshes,
//! - [`linalg`] — dense complex matrices, LU solves, condition estimation,
//! - [`nystrom`] — discrete single- and double-layer operators,
//! - [`schur`] — the reduced (regularized) operator whose null wavenumbers are
//!   the transmission eigenvalues,
//! - [`rim`] — the spectral-projection indicator,
//! - [`scan`] — interval and complex-window scans with eigenvalue detection,
//! - [`disk`] — the analytic disk determinant and its root finder,
//! - [`config`] / [`output`] — CLI configuration and CSV serialization.
//!
//! Scans are data-parallel over grid points. With the default `parallel`
//! feature the work is distributed with rayon; without it the same code runs
//! sequentially. Results are identical either way: every grid point derives
//! its probe vector from the scan seed and its own wavenumber, never from
//! execution order.

pub mod config;
pub mod disk;
pub mod geometry;
pub mod linalg;
pub mod nystrom;
pub mod output;
pub mod rim;
pub mod scan;
pub mod schur;
pub mod special;
