//! The reduced operator whose null wavenumbers are the transmission
//! eigenvalues.
//!
//! Eliminating the Neumann density from the 2×2 block system leaves
//!
//!   A(κ) = (I/2 + D_κ) − S_κ S_{κ₁}⁻¹ (I/2 + D_{κ₁}),    κ₁ = κ√μ.
//!
//! S_{κ₁} loses invertibility when κ₁² hits an interior Dirichlet eigenvalue,
//! so a Tikhonov-regularized variant replaces S⁻¹ by (ηI + SᴴS)⁻¹Sᴴ. The
//! automatic policy switches to η = 1e−5 when the condition estimate of
//! S_{κ₁} exceeds 1e8.

use crate::geometry::Mesh;
use crate::linalg::{self, ComplexMatrix, LinalgError};
use crate::nystrom::{self, AssemblyError};
use num_complex::Complex64;
use thiserror::Error;

/// Condition estimate above which the automatic policy regularizes.
pub const CONDITION_TRIGGER: f64 = 1e8;

/// Regularization parameter used by the automatic policy.
pub const AUTO_ETA: f64 = 1e-5;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SchurError {
    #[error(transparent)]
    Assembly(#[from] AssemblyError),
    #[error(transparent)]
    Linalg(#[from] LinalgError),
    #[error("refractive index mu = {0} must exceed 1")]
    InvalidRefractiveIndex(f64),
    #[error("regularization parameter eta = {0} must be finite and >= 0")]
    InvalidEta(f64),
    #[error(
        "regularization required: the inner single-layer matrix is singular \
         (condition estimate {condition:.3e}); retry with eta > 0"
    )]
    RegularizationRequired { condition: f64 },
}

/// How to choose the regularization parameter per wavenumber.
#[derive(Copy, Clone, Debug, PartialEq)]
pub enum EtaPolicy {
    /// Use exactly this η (η = 0 errors out on a singular inner matrix).
    Fixed(f64),
    /// η = 0 while the inner condition estimate stays below
    /// [`CONDITION_TRIGGER`], else [`AUTO_ETA`].
    Auto,
}

/// The discrete (possibly regularized) reduced operator at one wavenumber.
#[derive(Clone, Debug)]
pub struct SchurOperator {
    matrix: ComplexMatrix,
    wavenumber: Complex64,
    eta: f64,
    regularized: bool,
    condition: f64,
}

impl SchurOperator {
    pub fn matrix(&self) -> &ComplexMatrix {
        &self.matrix
    }

    pub fn wavenumber(&self) -> Complex64 {
        self.wavenumber
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    pub fn regularized_path_taken(&self) -> bool {
        self.regularized
    }

    /// Condition estimate of the inner single-layer matrix S_{κ₁}.
    pub fn inner_condition(&self) -> f64 {
        self.condition
    }
}

/// Build the reduced operator with a fixed η.
pub fn schur_operator(
    kappa: Complex64,
    mu: f64,
    eta: f64,
    mesh: &Mesh,
) -> Result<SchurOperator, SchurError> {
    schur_operator_with_policy(kappa, mu, EtaPolicy::Fixed(eta), mesh)
}

pub fn schur_operator_with_policy(
    kappa: Complex64,
    mu: f64,
    policy: EtaPolicy,
    mesh: &Mesh,
) -> Result<SchurOperator, SchurError> {
    if !(mu > 1.0) {
        return Err(SchurError::InvalidRefractiveIndex(mu));
    }
    if let EtaPolicy::Fixed(eta) = policy {
        if !eta.is_finite() || eta < 0.0 {
            return Err(SchurError::InvalidEta(eta));
        }
    }
    let kappa1 = kappa * mu.sqrt();
    let outer = nystrom::layer_operators(kappa, mesh)?;
    let inner = nystrom::layer_operators(kappa1, mesh)?;
    let half = Complex64::new(0.5, 0.0);
    let b_outer = outer.double.add_scaled_identity(half);
    let b_inner = inner.double.add_scaled_identity(half);

    let lu_inner = linalg::lu_factor(&inner.single);
    let condition = linalg::condition_estimate(&lu_inner, &inner.single);

    let eta = match policy {
        EtaPolicy::Fixed(eta) => eta,
        EtaPolicy::Auto => {
            if condition > CONDITION_TRIGGER {
                AUTO_ETA
            } else {
                0.0
            }
        }
    };

    let elimination = if eta == 0.0 {
        if lu_inner.is_singular() {
            return Err(SchurError::RegularizationRequired { condition });
        }
        lu_inner.solve_matrix(&b_inner)?
    } else {
        let adj = inner.single.conj_transpose();
        let normal = adj
            .matmul(&inner.single)?
            .add_scaled_identity(Complex64::new(eta, 0.0));
        let rhs = adj.matmul(&b_inner)?;
        linalg::lu_factor(&normal).solve_matrix(&rhs)?
    };

    let matrix = b_outer.sub(&outer.single.matmul(&elimination)?)?;
    Ok(SchurOperator {
        matrix,
        wavenumber: kappa,
        eta,
        regularized: eta > 0.0,
        condition,
    })
}
