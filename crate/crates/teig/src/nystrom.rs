//! Discrete single- and double-layer operators on a quadrature mesh.
//!
//! Kernels are split into a logarithmic part, integrated with the
//! trigonometric log-weights R_j, and a continuous remainder integrated with
//! the plain trapezoid rule. On cornered meshes the double layer additionally
//! subtracts its static (zero-wavenumber) kernel, whose row integral over a
//! closed curve is exactly −1/2, so no singular quadrature is ever needed.

use crate::geometry::Mesh;
use crate::linalg::ComplexMatrix;
use crate::special::{self, SpecialFunctionError, EULER_GAMMA};
use num_complex::Complex64;
use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum AssemblyError {
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
    #[error("refractive index mu = {0} must exceed 1")]
    InvalidRefractiveIndex(f64),
    #[error("wavenumber {0} lies on the branch cut (-inf, 0]")]
    WavenumberOnBranchCut(Complex64),
}

fn check_wavenumber(kappa: Complex64) -> Result<(), AssemblyError> {
    if kappa.im == 0.0 && kappa.re <= 0.0 {
        return Err(AssemblyError::WavenumberOnBranchCut(kappa));
    }
    Ok(())
}

/// Quadrature weight R_j(t_i) that integrates φ(t)·ln(4sin²((t_i−t)/2))
/// exactly for trigonometric polynomials of degree < n:
///
/// R_j(t_i) = −(2π/n) Σ_{ℓ=1}^{n−1} cos(ℓ(t_i−t_j))/ℓ − (π/n²) cos(n(t_i−t_j)).
///
/// The signs reproduce the Fourier coefficients of the log kernel,
/// Σ_j R_j(0) cos(ℓ t_j) = −2π/ℓ.
pub fn log_weight(n: usize, i: usize, j: usize) -> f64 {
    let diff = PI * (i as f64 - j as f64) / n as f64;
    let mut s = 0.0;
    for l in 1..n {
        s += (l as f64 * diff).cos() / l as f64;
    }
    -(2.0 * PI / n as f64) * s - PI / (n as f64 * n as f64) * (n as f64 * diff).cos()
}

/// The weights are circulant: they depend only on (i−j) mod 2n. This returns
/// the full offset row, R[d] = R_d(t_0).
pub fn log_weight_offsets(n: usize) -> Vec<f64> {
    (0..2 * n).map(|d| log_weight(n, d, 0)).collect()
}

/// ln(4 sin²(πd/(2n))) for offsets d = 1..2n−1 (index 0 unused).
fn log_factor_offsets(n: usize) -> Vec<f64> {
    (0..2 * n)
        .map(|d| {
            if d == 0 {
                0.0
            } else {
                let s = (PI * d as f64 / (2.0 * n as f64)).sin();
                (4.0 * s * s).ln()
            }
        })
        .collect()
}

/// Discrete single- and double-layer matrices at one wavenumber. They share
/// all cylinder-function evaluations, so they are assembled together.
pub struct LayerOperators {
    pub single: ComplexMatrix,
    pub double: ComplexMatrix,
    pub wavenumber: Complex64,
}

pub fn layer_operators(kappa: Complex64, mesh: &Mesh) -> Result<LayerOperators, AssemblyError> {
    check_wavenumber(kappa)?;
    let n = mesh.n();
    let size = mesh.len();
    let weights = log_weight_offsets(n);
    let log_factors = log_factor_offsets(n);
    let trapezoid = PI / n as f64;

    let mut single = ComplexMatrix::zeros(size, size);
    let mut double = ComplexMatrix::zeros(size, size);
    let quarter_i = Complex64::new(0.0, 0.25);

    for i in 0..size {
        let di = mesh.at(i);
        for j in i + 1..size {
            let dj = mesh.at(j);
            let offset = j - i; // == (i-j) mod 2n for the symmetric factors
            let d = di.z - dj.z;
            let r = d.norm();
            let vals = special::cylinder_values(kappa * r)?;
            let h0 = vals.h0();
            let h1 = vals.h1();
            let lf = log_factors[offset];
            let rw = weights[offset];

            // single layer, both orientations (kernel symmetric up to the jacobian)
            if dj.jacobian > 0.0 {
                let k1 = -vals.j0 / (4.0 * PI) * dj.jacobian;
                let full = quarter_i * h0 * dj.jacobian;
                single[(i, j)] = rw * k1 + trapezoid * (full - k1 * lf);

                let dot = d.dot(dj.normal);
                let k1d = -(kappa / (4.0 * PI)) * (dot / r) * vals.j1 * dj.jacobian;
                let fulld = quarter_i * kappa * (dot / r) * h1 * dj.jacobian;
                double[(i, j)] = rw * k1d + trapezoid * (fulld - k1d * lf);
            }
            if di.jacobian > 0.0 {
                let k1 = -vals.j0 / (4.0 * PI) * di.jacobian;
                let full = quarter_i * h0 * di.jacobian;
                single[(j, i)] = rw * k1 + trapezoid * (full - k1 * lf);

                let dot = (dj.z - di.z).dot(di.normal);
                let k1d = -(kappa / (4.0 * PI)) * (dot / r) * vals.j1 * di.jacobian;
                let fulld = quarter_i * kappa * (dot / r) * h1 * di.jacobian;
                double[(j, i)] = rw * k1d + trapezoid * (fulld - k1d * lf);
            }
        }
    }

    // diagonals
    for i in 0..size {
        let di = mesh.at(i);
        if di.jacobian > 0.0 {
            let k1 = Complex64::new(-di.jacobian / (4.0 * PI), 0.0);
            let k2 = (Complex64::new(0.0, 0.25)
                - Complex64::new(EULER_GAMMA / (2.0 * PI), 0.0)
                - (kappa * di.jacobian / 2.0).ln() / (2.0 * PI))
                * di.jacobian;
            single[(i, i)] = weights[0] * k1 + trapezoid * k2;
        }
    }

    if !mesh.has_corners() {
        // K^D_2(t,t) = K^D(t,t;0) = (1/4π) z''·ν / |z'|
        for i in 0..size {
            let di = mesh.at(i);
            double[(i, i)] =
                Complex64::new(trapezoid / (4.0 * PI) * di.ddz.dot(di.normal) / di.jacobian, 0.0);
        }
    } else {
        // Static-kernel subtraction: the off-diagonal terms telescope back to
        // the plain split, and the diagonal becomes
        //   −(π/n) Σ_{j≠i} K^D(t_i,t_j;0) − 1/2,
        // using the closed-curve identity ∫ K^D(s,t;0) dt = −1/2.
        for i in 0..size {
            let di = mesh.at(i);
            let mut static_sum = 0.0;
            for j in 0..size {
                if j == i {
                    continue;
                }
                let dj = mesh.at(j);
                if dj.jacobian == 0.0 {
                    continue;
                }
                let d = di.z - dj.z;
                let r2 = d.dot(d);
                static_sum += d.dot(dj.normal) / r2 * dj.jacobian / (2.0 * PI);
            }
            double[(i, i)] = Complex64::new(-trapezoid * static_sum - 0.5, 0.0);
        }
    }

    Ok(LayerOperators {
        single,
        double,
        wavenumber: kappa,
    })
}

/// Discrete single-layer matrix S_{κ,n}.
pub fn single_layer_matrix(kappa: Complex64, mesh: &Mesh) -> Result<ComplexMatrix, AssemblyError> {
    Ok(layer_operators(kappa, mesh)?.single)
}

/// Discrete double-layer matrix D_{κ,n}.
pub fn double_layer_matrix(kappa: Complex64, mesh: &Mesh) -> Result<ComplexMatrix, AssemblyError> {
    Ok(layer_operators(kappa, mesh)?.double)
}

/// The full 4n×4n block system
/// [[I/2 + D_κ, −S_κ], [I/2 + D_{κ₁}, −S_{κ₁}]] with κ₁ = κ√μ.
/// Exposed for validation; the scans work with the Schur complement instead.
pub fn assemble_block_system(
    kappa: Complex64,
    mu: f64,
    mesh: &Mesh,
) -> Result<ComplexMatrix, AssemblyError> {
    if !(mu > 1.0) {
        return Err(AssemblyError::InvalidRefractiveIndex(mu));
    }
    let kappa1 = kappa * mu.sqrt();
    let outer = layer_operators(kappa, mesh)?;
    let inner = layer_operators(kappa1, mesh)?;
    let size = mesh.len();
    let half = Complex64::new(0.5, 0.0);
    let mut z = ComplexMatrix::zeros(2 * size, 2 * size);
    z.set_block(0, 0, &outer.double.add_scaled_identity(half));
    z.set_block(0, size, &outer.single.scale(Complex64::new(-1.0, 0.0)));
    z.set_block(size, 0, &inner.double.add_scaled_identity(half));
    z.set_block(size, size, &inner.single.scale(Complex64::new(-1.0, 0.0)));
    Ok(z)
}

/// Residual of the interior representation identity (I/2 + D)g = S h for the
/// trace data of u = Φ_κ(·, source) with the source outside the domain.
/// This is the assembly's end-to-end self check; it decays spectrally in n on
/// smooth domains.
pub fn greens_identity_residual(
    kappa: Complex64,
    mesh: &Mesh,
    source: crate::geometry::Point,
) -> Result<f64, AssemblyError> {
    let ops = layer_operators(kappa, mesh)?;
    let size = mesh.len();
    let mut g = Vec::with_capacity(size);
    let mut h = Vec::with_capacity(size);
    for i in 0..size {
        let d = mesh.at(i);
        g.push(special::green_function(kappa, d.z, source)?);
        h.push(special::green_function_normal_derivative(
            kappa, d.z, d.normal, source,
        )?);
    }
    let lhs = ops
        .double
        .add_scaled_identity(Complex64::new(0.5, 0.0))
        .matvec(&g)
        .expect("dimensions match");
    let rhs = ops.single.matvec(&h).expect("dimensions match");
    Ok(lhs
        .iter()
        .zip(&rhs)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0, f64::max))
}
