//! Analytic ground truth for the disk: separated-variables Bessel
//! determinants whose positive roots are the exact transmission eigenvalues,
//! plus a bracketing root finder.
//!
//! For order m, refractive index μ and radius R the determinant is
//!
//!   D_m(κ) = κ·J_m(κ√μ R)·J_m'(κR) − κ√μ·J_m(κR)·J_m'(κ√μ R),
//!
//! which reduces with J_m' = J_{m−1} − (m/z)J_m to the classical
//! cross-product forms at μ = 16, R = 1/2.

use crate::special::{self, CylinderOrder, SpecialFunctionError};
use num_complex::Complex64;
use thiserror::Error;

/// Largest Fourier order the real-argument recurrences support.
pub const MAX_SUPPORTED_ORDER: usize = 12;

/// Default order sweep: modes above 8 contribute no roots below κ = 5 at
/// μ = 16, R = 1/2 (checked by test against orders 9..12).
pub const DEFAULT_MAX_ORDER: usize = 8;

/// Bisection grid step over the search interval.
const SCAN_STEP: f64 = 1e-3;

/// Roots closer than this are treated as duplicates.
const DEDUP_SPACING: f64 = 1e-6;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiskOracleError {
    #[error("order {0} exceeds the supported range {MAX_SUPPORTED_ORDER}")]
    UnsupportedOrder(usize),
    #[error("wavenumber {0} must be positive")]
    NonPositiveWavenumber(f64),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error(transparent)]
    Special(#[from] SpecialFunctionError),
}

/// A determinant root with the Fourier order it came from.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct DiskRoot {
    pub kappa: f64,
    pub order: usize,
}

/// J_m(x) for real x ≥ 0 and m ≤ 12. Orders 0 and 1 come from the complex
/// implementation; higher orders use the upward recurrence when it is stable
/// (x ≥ m) and the order-m ascending series otherwise.
fn bessel_jm(m: usize, x: f64) -> Result<f64, DiskOracleError> {
    if m > MAX_SUPPORTED_ORDER {
        return Err(DiskOracleError::UnsupportedOrder(m));
    }
    let j = |order, v: f64| -> Result<f64, DiskOracleError> {
        Ok(special::bessel_j(order, Complex64::new(v, 0.0))?.re)
    };
    match m {
        0 => j(CylinderOrder::Zero, x),
        1 => j(CylinderOrder::One, x),
        _ if x >= m as f64 => {
            let mut prev = j(CylinderOrder::Zero, x)?;
            let mut cur = j(CylinderOrder::One, x)?;
            for k in 1..m {
                let next = 2.0 * k as f64 / x * cur - prev;
                prev = cur;
                cur = next;
            }
            Ok(cur)
        }
        _ => {
            // ascending series at fixed order, fine for x < m <= 12
            let q = 0.25 * x * x;
            let mut lead = 1.0;
            for k in 1..=m {
                lead *= 0.5 * x / k as f64;
            }
            let mut term = lead;
            let mut sum = term;
            for k in 1..=40 {
                term *= -q / (k as f64 * (k + m) as f64);
                sum += term;
                if term.abs() < 1e-18 * sum.abs().max(1e-30) {
                    break;
                }
            }
            Ok(sum)
        }
    }
}

fn bessel_jm_prime(m: usize, x: f64) -> Result<f64, DiskOracleError> {
    if m == 0 {
        Ok(-bessel_jm(1, x)?)
    } else {
        Ok(bessel_jm(m - 1, x)? - m as f64 / x * bessel_jm(m, x)?)
    }
}

/// The order-m disk determinant at wavenumber κ.
pub fn disk_determinant(
    kappa: f64,
    order: usize,
    mu: f64,
    radius: f64,
) -> Result<f64, DiskOracleError> {
    if !(kappa > 0.0) {
        return Err(DiskOracleError::NonPositiveWavenumber(kappa));
    }
    if !(mu > 1.0) || !(radius > 0.0) {
        return Err(DiskOracleError::InvalidParameters(format!(
            "mu = {mu}, radius = {radius}"
        )));
    }
    if order > MAX_SUPPORTED_ORDER {
        return Err(DiskOracleError::UnsupportedOrder(order));
    }
    let a = kappa * radius;
    let b = kappa * mu.sqrt() * radius;
    Ok(kappa * bessel_jm(order, b)? * bessel_jm_prime(order, a)?
        - kappa * mu.sqrt() * bessel_jm(order, a)? * bessel_jm_prime(order, b)?)
}

/// Sign-change bisection over a uniform grid, per order 0..=m_max, with the
/// results merged, sorted, and deduplicated.
pub fn find_roots(
    m_max: usize,
    interval: (f64, f64),
    tol: f64,
    mu: f64,
    radius: f64,
) -> Result<Vec<DiskRoot>, DiskOracleError> {
    find_roots_with_step(m_max, interval, tol, mu, radius, SCAN_STEP)
}

pub fn find_roots_with_step(
    m_max: usize,
    interval: (f64, f64),
    tol: f64,
    mu: f64,
    radius: f64,
    step: f64,
) -> Result<Vec<DiskRoot>, DiskOracleError> {
    let (a, b) = interval;
    if !(a > 0.0 && a < b) {
        return Err(DiskOracleError::InvalidParameters(format!(
            "interval ({a}, {b})"
        )));
    }
    if m_max > MAX_SUPPORTED_ORDER {
        return Err(DiskOracleError::UnsupportedOrder(m_max));
    }
    let mut roots: Vec<DiskRoot> = Vec::new();
    for m in 0..=m_max {
        let mut x0 = a;
        let mut f0 = disk_determinant(x0, m, mu, radius)?;
        while x0 < b {
            let x1 = (x0 + step).min(b);
            let f1 = disk_determinant(x1, m, mu, radius)?;
            if f0 == 0.0 {
                roots.push(DiskRoot { kappa: x0, order: m });
            } else if f0.signum() != f1.signum() && f1 != 0.0 {
                let kappa = bisect(x0, x1, f0, m, mu, radius, tol)?;
                roots.push(DiskRoot { kappa, order: m });
            }
            x0 = x1;
            f0 = f1;
            if x0 >= b {
                break;
            }
        }
    }
    roots.sort_by(|p, q| p.kappa.total_cmp(&q.kappa));
    roots.dedup_by(|p, q| (p.kappa - q.kappa).abs() <= DEDUP_SPACING);
    Ok(roots)
}

fn bisect(
    mut lo: f64,
    mut hi: f64,
    f_lo: f64,
    m: usize,
    mu: f64,
    radius: f64,
    tol: f64,
) -> Result<f64, DiskOracleError> {
    let sign_lo = f_lo.signum();
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        let f_mid = disk_determinant(mid, m, mu, radius)?;
        if f_mid == 0.0 {
            return Ok(mid);
        }
        if f_mid.signum() == sign_lo {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}
