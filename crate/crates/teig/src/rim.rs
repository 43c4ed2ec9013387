//! Contour-integral spectral-projection indicator.
//!
//! The Riesz projection onto the spectrum of A inside the circle |z| = r is
//! approximated by the trapezoid rule on the resolvent,
//!
//!   P_m f = (1/2m) Σ_{j=0}^{2m−1} r e^{iθ_j} x_j,   (r e^{iθ_j} I − A) x_j = f,
//!
//! with θ_j = πj/m. The indicator ‖P_m[P_m f/‖P_m f‖]‖ sits near 1 when an
//! eigenvalue of A lies inside the contour and collapses to the rounding
//! floor otherwise, because P is idempotent.

use crate::linalg::{self, ComplexMatrix, LuFactorization};
use crate::schur::SchurOperator;
use num_complex::Complex64;
use rand::prelude::*;
use rand_chacha::ChaCha12Rng;
use rand_distr::StandardNormal;
use std::f64::consts::PI;
use thiserror::Error;

/// Default contour quadrature half-count.
pub const DEFAULT_M: usize = 64;

/// Default contour radius.
pub const DEFAULT_RADIUS: f64 = 1e-3;

/// Largest accepted contour radius.
pub const MAX_RADIUS: f64 = 0.05;

/// ‖P_m f‖ below this is treated as an exactly empty projection.
const PROJECTION_UNDERFLOW: f64 = 1e-280;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum RimError {
    #[error("contour radius {0} outside (0, {MAX_RADIUS}]")]
    InvalidRadius(f64),
    #[error("contour quadrature count m must be at least 1")]
    InvalidQuadratureCount,
    #[error(
        "eigenvalue on the integration contour near angle {theta:.6}; \
         perturb the contour radius and retry"
    )]
    ContourHit { theta: f64 },
    #[error("probe length {probe} does not match operator dimension {dim}")]
    ProbeSizeMismatch { probe: usize, dim: usize },
}

/// Contour configuration for the indicator.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct RimConfig {
    m: usize,
    contour_radius: f64,
    seed: u64,
}

impl RimConfig {
    pub fn new(m: usize, contour_radius: f64, seed: u64) -> Result<Self, RimError> {
        if m == 0 {
            return Err(RimError::InvalidQuadratureCount);
        }
        if !(contour_radius > 0.0 && contour_radius <= MAX_RADIUS) {
            return Err(RimError::InvalidRadius(contour_radius));
        }
        Ok(RimConfig {
            m,
            contour_radius,
            seed,
        })
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn contour_radius(&self) -> f64 {
        self.contour_radius
    }

    pub fn seed(&self) -> u64 {
        self.seed
    }
}

impl Default for RimConfig {
    fn default() -> Self {
        RimConfig {
            m: DEFAULT_M,
            contour_radius: DEFAULT_RADIUS,
            seed: 0,
        }
    }
}

/// The 2m resolvent factorizations for one operator and contour, reusable
/// across repeated applications of P_m.
pub struct SpectralProjector {
    factorizations: Vec<LuFactorization>,
    weights: Vec<Complex64>,
    scale: f64,
}

impl SpectralProjector {
    /// Factor (r e^{iθ_j} I − A) for all quadrature angles. The radius is not
    /// capped here; scan-facing callers validate through [`RimConfig`].
    pub fn new(matrix: &ComplexMatrix, m: usize, radius: f64) -> Result<Self, RimError> {
        if m == 0 {
            return Err(RimError::InvalidQuadratureCount);
        }
        let mut factorizations = Vec::with_capacity(2 * m);
        let mut weights = Vec::with_capacity(2 * m);
        for j in 0..2 * m {
            let theta = PI * j as f64 / m as f64;
            let z = Complex64::from_polar(radius, theta);
            let shifted = matrix
                .scale(Complex64::new(-1.0, 0.0))
                .add_scaled_identity(z);
            let f = linalg::lu_factor(&shifted);
            if f.is_singular() {
                return Err(RimError::ContourHit { theta });
            }
            factorizations.push(f);
            weights.push(z);
        }
        Ok(SpectralProjector {
            factorizations,
            weights,
            scale: 1.0 / (2.0 * m as f64),
        })
    }

    pub fn dim(&self) -> usize {
        self.factorizations[0].dim()
    }

    /// Apply the quadrature approximation of the Riesz projection.
    pub fn apply(&self, f: &[Complex64]) -> Result<Vec<Complex64>, RimError> {
        if f.len() != self.dim() {
            return Err(RimError::ProbeSizeMismatch {
                probe: f.len(),
                dim: self.dim(),
            });
        }
        let mut acc = vec![Complex64::new(0.0, 0.0); f.len()];
        for (fac, w) in self.factorizations.iter().zip(&self.weights) {
            let x = fac.solve(f).map_err(|_| RimError::ContourHit {
                theta: w.arg(),
            })?;
            for (a, xi) in acc.iter_mut().zip(&x) {
                *a += w * xi;
            }
        }
        for a in acc.iter_mut() {
            *a *= self.scale;
        }
        Ok(acc)
    }

    /// ‖P_m[P_m f/‖P_m f‖]‖ for a given probe.
    pub fn indicator(&self, probe: &[Complex64]) -> Result<f64, RimError> {
        let first = self.apply(probe)?;
        let norm = linalg::norm2(&first);
        if norm < PROJECTION_UNDERFLOW {
            return Ok(0.0);
        }
        let normalized: Vec<Complex64> = first.iter().map(|v| v / norm).collect();
        let second = self.apply(&normalized)?;
        Ok(linalg::norm2(&second))
    }
}

/// Apply P_m to a probe for a built Schur operator.
pub fn spectral_projection_apply(
    op: &SchurOperator,
    cfg: &RimConfig,
    f: &[Complex64],
) -> Result<Vec<Complex64>, RimError> {
    SpectralProjector::new(op.matrix(), cfg.m, cfg.contour_radius)?.apply(f)
}

/// The scan indicator at one wavenumber: near 1 when the contour encloses an
/// eigenvalue of the operator, near 0 otherwise.
pub fn rim_indicator(op: &SchurOperator, cfg: &RimConfig) -> Result<f64, RimError> {
    let probe = probe_vector(cfg.seed, op.wavenumber(), op.matrix().rows());
    SpectralProjector::new(op.matrix(), cfg.m, cfg.contour_radius)?.indicator(&probe)
}

/// Pseudorandom complex standard-normal probe. The stream is keyed on the
/// scan seed and the wavenumber bits, so a grid point always sees the same
/// probe no matter which worker evaluates it or in what order.
pub fn probe_vector(seed: u64, kappa: Complex64, len: usize) -> Vec<Complex64> {
    let key = splitmix(seed ^ splitmix(kappa.re.to_bits()) ^ splitmix(kappa.im.to_bits()).rotate_left(17));
    let mut rng = ChaCha12Rng::seed_from_u64(key);
    (0..len)
        .map(|_| {
            let re: f64 = StandardNormal.sample(&mut rng);
            let im: f64 = StandardNormal.sample(&mut rng);
            Complex64::new(re, im)
        })
        .collect()
}

fn splitmix(mut x: u64) -> u64 {
    x = x.wrapping_add(0x9e3779b97f4a7c15);
    x = (x ^ (x >> 30)).wrapping_mul(0xbf58476d1ce4e5b9);
    x = (x ^ (x >> 27)).wrapping_mul(0x94d049bb133111eb);
    x ^ (x >> 31)
}
