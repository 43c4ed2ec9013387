//! Wavenumber scans: evaluate the indicator on real intervals or complex
//! windows, detect eigenvalues, and refine them.
//!
//! Grid points are independent work items. With the `parallel` feature the
//! map over points runs on rayon's current thread pool; without it the same
//! closure runs sequentially. Per-point probes are keyed on the wavenumber,
//! so the output is identical for any worker count.
//!
//! # Detection
//!
//! The contour indicator switches from its rounding floor to ≈1 only while
//! an eigenvalue of the reduced operator sits inside the contour, a window
//! of width ~2r/|λ'(κ)| in κ. At the production radius r = 1e−3 that window
//! is far narrower than the scan grids, so grid samples alone cannot locate
//! eigenvalues. What is visible at grid resolution is ln|det A(κ)|: an
//! eigenvalue crossing zero carves a logarithmic dip several units deep and
//! a full grid cell wide. Detection therefore brackets candidates at local
//! minima of ln|det|, sharpens them by golden-section minimization, and
//! accepts a candidate only if the indicator at the refined wavenumber
//! clears [`DETECTION_THRESHOLD`] — the contour test remains the sole
//! accept/reject gate, the determinant only aims it.

use crate::geometry::Mesh;
use crate::linalg;
use crate::rim::{self, RimConfig};
use crate::schur::{self, EtaPolicy};
use num_complex::Complex64;
#[cfg(feature = "parallel")]
use rayon::prelude::*;
use thiserror::Error;

/// Indicator level above which a refined candidate counts as an eigenvalue.
pub const DETECTION_THRESHOLD: f64 = 0.5;

/// Minimum ln|det| drop below both neighbors for a grid dip to become a
/// candidate. True zero crossings dip by several units; background wobble
/// stays well below this.
const DET_DIP_MIN_DEPTH: f64 = 0.02;

/// Depth a refined dip must reach below its bracket ends when the contour
/// has swallowed background spectrum (scan floor above the threshold).
/// In that regime indicator confirmation alone is vacuous; an eigenvalue
/// passing near zero still carves a deep logarithmic dip, while the
/// swallowed cluster only wobbles by a fraction of a unit.
const CONFIRMED_DIP_MIN_DEPTH: f64 = 1.0;

/// Golden-section iterations for sharpening a determinant dip.
const REFINE_ITERATIONS: usize = 36;

/// Coordinate-descent rounds for complex-window candidates.
const COMPLEX_REFINE_ROUNDS: usize = 3;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ScanError {
    #[error("interval ({0}, {1}) must satisfy 0 < a < b")]
    InvalidInterval(f64, f64),
    #[error("subdivision count must be at least 1")]
    InvalidSubdivisions,
    #[error("window ({0}, {1}) must be increasing")]
    InvalidWindow(f64, f64),
    #[error("grid touches the branch cut (-inf, 0]")]
    GridTouchesBranchCut,
}

/// Indicator data for one successfully evaluated grid point.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct SampleValue {
    pub indicator: f64,
    pub eta: f64,
    pub condition: f64,
    /// ln|det A(κ)|, the detection bracketing signal.
    pub log_abs_det: f64,
}

/// One grid point; failures carry the error text and leave the scan running.
#[derive(Clone, Debug)]
pub struct SamplePoint {
    pub kappa: Complex64,
    pub outcome: Result<SampleValue, String>,
}

impl SamplePoint {
    pub fn indicator(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|v| v.indicator)
    }

    fn log_abs_det(&self) -> Option<f64> {
        self.outcome.as_ref().ok().map(|v| v.log_abs_det)
    }
}

/// A detected eigenvalue estimate, confirmed by the indicator.
#[derive(Copy, Clone, Debug, PartialEq)]
pub struct Detection {
    pub kappa: Complex64,
    pub indicator: f64,
}

#[derive(Clone, Debug, Default)]
pub struct ScanResult {
    pub samples: Vec<SamplePoint>,
    pub detected: Vec<Detection>,
}

/// Assemble, reduce, and evaluate the indicator at one wavenumber.
pub fn evaluate_point(
    kappa: Complex64,
    mu: f64,
    eta: EtaPolicy,
    mesh: &Mesh,
    cfg: &RimConfig,
) -> Result<SampleValue, String> {
    let op = schur::schur_operator_with_policy(kappa, mu, eta, mesh).map_err(|e| e.to_string())?;
    let indicator = rim::rim_indicator(&op, cfg).map_err(|e| e.to_string())?;
    let log_abs_det = linalg::lu_factor(op.matrix()).log_abs_det();
    Ok(SampleValue {
        indicator,
        eta: op.eta(),
        condition: op.inner_condition(),
        log_abs_det,
    })
}

fn map_points<T: Send>(count: usize, f: impl Fn(usize) -> T + Sync + Send) -> Vec<T> {
    #[cfg(feature = "parallel")]
    {
        (0..count).into_par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        (0..count).map(f).collect()
    }
}

/// Scan N+1 uniform grid points on the real interval (a, b) and detect
/// eigenvalues as indicator-confirmed determinant dips.
pub fn scan_interval(
    a: f64,
    b: f64,
    subdivisions: usize,
    mu: f64,
    eta: EtaPolicy,
    mesh: &Mesh,
    cfg: &RimConfig,
) -> Result<ScanResult, ScanError> {
    if !(0.0 < a && a < b) {
        return Err(ScanError::InvalidInterval(a, b));
    }
    if subdivisions == 0 {
        return Err(ScanError::InvalidSubdivisions);
    }
    let count = subdivisions + 1;
    let grid: Vec<f64> = (0..count)
        .map(|i| a + (b - a) * i as f64 / subdivisions as f64)
        .collect();
    let samples: Vec<SamplePoint> = map_points(count, |i| {
        let kappa = Complex64::new(grid[i], 0.0);
        SamplePoint {
            kappa,
            outcome: evaluate_point(kappa, mu, eta, mesh, cfg),
        }
    });

    let detected = detect_on_interval(&grid, &samples, mu, eta, mesh, cfg);
    Ok(ScanResult { samples, detected })
}

/// A candidate bracket with the ln|det| levels at its ends, used for the
/// refined-depth gate.
#[derive(Copy, Clone, Debug)]
struct Bracket {
    lo: f64,
    hi: f64,
    end_level: f64,
}

/// Candidate brackets: strict local minima of ln|det| plus the argmax cell
/// of every above-threshold run of samples.
fn interval_candidates(grid: &[f64], samples: &[SamplePoint]) -> Vec<Bracket> {
    let n = grid.len();
    let mut brackets = Vec::new();
    for i in 1..n.saturating_sub(1) {
        let (Some(prev), Some(here), Some(next)) = (
            samples[i - 1].log_abs_det(),
            samples[i].log_abs_det(),
            samples[i + 1].log_abs_det(),
        ) else {
            continue;
        };
        if here < prev && here < next && (prev - here).min(next - here) >= DET_DIP_MIN_DEPTH {
            brackets.push(Bracket {
                lo: grid[i - 1],
                hi: grid[i + 1],
                end_level: prev.min(next),
            });
        }
    }

    let above: Vec<bool> = samples
        .iter()
        .map(|s| s.indicator().map_or(false, |v| v >= DETECTION_THRESHOLD))
        .collect();
    let mut i = 0;
    while i < n {
        if !above[i] {
            i += 1;
            continue;
        }
        let start = i;
        while i + 1 < n && above[i + 1] {
            i += 1;
        }
        let best = (start..=i)
            .max_by(|&p, &q| {
                samples[p]
                    .indicator()
                    .unwrap_or(-1.0)
                    .total_cmp(&samples[q].indicator().unwrap_or(-1.0))
            })
            .expect("nonempty run");
        let lo_idx = best.saturating_sub(1);
        let hi_idx = (best + 1).min(n - 1);
        let end_level = samples[lo_idx]
            .log_abs_det()
            .unwrap_or(f64::INFINITY)
            .min(samples[hi_idx].log_abs_det().unwrap_or(f64::INFINITY));
        brackets.push(Bracket {
            lo: grid[lo_idx],
            hi: grid[hi_idx],
            end_level,
        });
        i += 1;
    }
    brackets
}

/// Median indicator over the successful samples; decides whether the contour
/// has swallowed background spectrum at this radius.
fn indicator_floor(samples: &[SamplePoint]) -> f64 {
    let mut values: Vec<f64> = samples.iter().filter_map(|s| s.indicator()).collect();
    if values.is_empty() {
        return 0.0;
    }
    values.sort_by(f64::total_cmp);
    values[values.len() / 2]
}

fn detect_on_interval(
    grid: &[f64],
    samples: &[SamplePoint],
    mu: f64,
    eta: EtaPolicy,
    mesh: &Mesh,
    cfg: &RimConfig,
) -> Vec<Detection> {
    let dip = |k: f64| -> f64 {
        evaluate_point(Complex64::new(k, 0.0), mu, eta, mesh, cfg)
            .map(|v| v.log_abs_det)
            .unwrap_or(f64::INFINITY)
    };
    let step = if grid.len() > 1 { grid[1] - grid[0] } else { 0.0 };
    let swallowed = indicator_floor(samples) >= DETECTION_THRESHOLD;
    let mut detections: Vec<Detection> = Vec::new();
    for bracket in interval_candidates(grid, samples) {
        let kappa_hat = golden_section_min(bracket.lo, bracket.hi, &dip);
        let kappa = Complex64::new(kappa_hat, 0.0);
        let Ok(value) = evaluate_point(kappa, mu, eta, mesh, cfg) else {
            continue;
        };
        if value.indicator < DETECTION_THRESHOLD {
            continue;
        }
        if swallowed && bracket.end_level - value.log_abs_det < CONFIRMED_DIP_MIN_DEPTH {
            continue;
        }
        match detections
            .iter_mut()
            .find(|d| (d.kappa.re - kappa_hat).abs() <= step)
        {
            Some(existing) => {
                if value.indicator > existing.indicator {
                    *existing = Detection {
                        kappa,
                        indicator: value.indicator,
                    };
                }
            }
            None => detections.push(Detection {
                kappa,
                indicator: value.indicator,
            }),
        }
    }
    detections.sort_by(|p, q| p.kappa.re.total_cmp(&q.kappa.re));
    detections
}

/// Golden-section minimization; ties collapse toward the left subinterval.
fn golden_section_min(mut lo: f64, mut hi: f64, eval: &dyn Fn(f64) -> f64) -> f64 {
    let phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = hi - phi * (hi - lo);
    let mut d = lo + phi * (hi - lo);
    let mut fc = eval(c);
    let mut fd = eval(d);
    for _ in 0..REFINE_ITERATIONS {
        if fc <= fd {
            hi = d;
            d = c;
            fd = fc;
            c = hi - phi * (hi - lo);
            fc = eval(c);
        } else {
            lo = c;
            c = d;
            fc = fd;
            d = lo + phi * (hi - lo);
            fd = eval(d);
        }
    }
    0.5 * (lo + hi)
}

/// Scan the tensor grid over a complex window. Samples are ordered with the
/// real index outermost. Detection mirrors the interval scan: determinant
/// dips (4-neighbor local minima) and above-threshold regions propose
/// candidates, coordinate-descent sharpens them, the indicator confirms.
#[allow(clippy::too_many_arguments)]
pub fn scan_complex_grid(
    re_range: (f64, f64),
    im_range: (f64, f64),
    n_re: usize,
    n_im: usize,
    mu: f64,
    eta: EtaPolicy,
    mesh: &Mesh,
    cfg: &RimConfig,
) -> Result<ScanResult, ScanError> {
    if !(re_range.0 < re_range.1) {
        return Err(ScanError::InvalidWindow(re_range.0, re_range.1));
    }
    if !(im_range.0 < im_range.1) {
        return Err(ScanError::InvalidWindow(im_range.0, im_range.1));
    }
    if n_re == 0 || n_im == 0 {
        return Err(ScanError::InvalidSubdivisions);
    }
    // conservative branch-cut guard: the closed window must not meet
    // {im = 0, re <= 0}
    if re_range.0 <= 0.0 && im_range.0 <= 0.0 && im_range.1 >= 0.0 {
        return Err(ScanError::GridTouchesBranchCut);
    }

    let rows = n_re + 1;
    let cols = n_im + 1;
    let dre = (re_range.1 - re_range.0) / n_re as f64;
    let dim = (im_range.1 - im_range.0) / n_im as f64;
    let kappa_at = |ir: usize, ii: usize| {
        Complex64::new(
            re_range.0 + dre * ir as f64,
            im_range.0 + dim * ii as f64,
        )
    };
    let samples: Vec<SamplePoint> = map_points(rows * cols, |idx| {
        let kappa = kappa_at(idx / cols, idx % cols);
        SamplePoint {
            kappa,
            outcome: evaluate_point(kappa, mu, eta, mesh, cfg),
        }
    });

    // candidates carry the min neighbor ln|det| level for the depth gate
    let mut candidates: Vec<(Complex64, f64)> = Vec::new();
    // determinant dips against the 4-neighborhood
    for ir in 1..rows.saturating_sub(1) {
        for ii in 1..cols.saturating_sub(1) {
            let at = |r: usize, c: usize| samples[r * cols + c].log_abs_det();
            let (Some(here), Some(n1), Some(n2), Some(n3), Some(n4)) = (
                at(ir, ii),
                at(ir - 1, ii),
                at(ir + 1, ii),
                at(ir, ii - 1),
                at(ir, ii + 1),
            ) else {
                continue;
            };
            let level = n1.min(n2).min(n3).min(n4);
            if level - here >= DET_DIP_MIN_DEPTH {
                candidates.push((kappa_at(ir, ii), level));
            }
        }
    }
    // above-threshold connected components
    let above: Vec<bool> = samples
        .iter()
        .map(|s| s.indicator().map_or(false, |v| v >= DETECTION_THRESHOLD))
        .collect();
    let mut visited = vec![false; samples.len()];
    for idx in 0..samples.len() {
        if !above[idx] || visited[idx] {
            continue;
        }
        let mut stack = vec![idx];
        visited[idx] = true;
        let mut best = idx;
        while let Some(cur) = stack.pop() {
            if samples[cur].indicator() > samples[best].indicator() {
                best = cur;
            }
            let (ir, ii) = (cur / cols, cur % cols);
            let mut push = |r: usize, c: usize| {
                let nb = r * cols + c;
                if above[nb] && !visited[nb] {
                    visited[nb] = true;
                    stack.push(nb);
                }
            };
            if ir > 0 {
                push(ir - 1, ii);
            }
            if ir + 1 < rows {
                push(ir + 1, ii);
            }
            if ii > 0 {
                push(ir, ii - 1);
            }
            if ii + 1 < cols {
                push(ir, ii + 1);
            }
        }
        let (ir, ii) = (best / cols, best % cols);
        let mut level = f64::INFINITY;
        for (r, c) in [
            (ir.wrapping_sub(1), ii),
            (ir + 1, ii),
            (ir, ii.wrapping_sub(1)),
            (ir, ii + 1),
        ] {
            if r < rows && c < cols {
                if let Some(v) = samples[r * cols + c].log_abs_det() {
                    level = level.min(v);
                }
            }
        }
        candidates.push((samples[best].kappa, level));
    }

    let dip = |k: Complex64| -> f64 {
        evaluate_point(k, mu, eta, mesh, cfg)
            .map(|v| v.log_abs_det)
            .unwrap_or(f64::INFINITY)
    };
    let cell = dre.hypot(dim);
    let swallowed = indicator_floor(&samples) >= DETECTION_THRESHOLD;
    let mut detected: Vec<Detection> = Vec::new();
    for (start, end_level) in candidates {
        let mut center = start;
        let mut span_re = dre;
        let mut span_im = dim;
        for _ in 0..COMPLEX_REFINE_ROUNDS {
            let re = golden_section_min(center.re - span_re, center.re + span_re, &|x| {
                dip(Complex64::new(x, center.im))
            });
            center.re = re;
            let im = golden_section_min(center.im - span_im, center.im + span_im, &|y| {
                dip(Complex64::new(center.re, y))
            });
            center.im = im;
            span_re *= 0.25;
            span_im *= 0.25;
        }
        let Ok(value) = evaluate_point(center, mu, eta, mesh, cfg) else {
            continue;
        };
        if value.indicator < DETECTION_THRESHOLD {
            continue;
        }
        if swallowed && end_level - value.log_abs_det < CONFIRMED_DIP_MIN_DEPTH {
            continue;
        }
        match detected
            .iter_mut()
            .find(|d| (d.kappa - center).norm() <= 2.0 * cell)
        {
            Some(existing) => {
                if value.indicator > existing.indicator {
                    *existing = Detection {
                        kappa: center,
                        indicator: value.indicator,
                    };
                }
            }
            None => detected.push(Detection {
                kappa: center,
                indicator: value.indicator,
            }),
        }
    }
    detected.sort_by(|a, b| {
        (a.kappa.re, a.kappa.im)
            .partial_cmp(&(b.kappa.re, b.kappa.im))
            .unwrap()
    });
    Ok(ScanResult { samples, detected })
}
