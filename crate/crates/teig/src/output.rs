//! CSV serialization of scan results and oracle root tables.
//!
//! Numbers are written with 17 significant digits so byte-identical output
//! is a meaningful determinism check. Lines end with LF; failed grid points
//! carry the `ERR` sentinel instead of numbers.

use crate::disk::DiskRoot;
use crate::scan::ScanResult;
use std::io::Write;
use std::path::{Path, PathBuf};

pub const SCAN_HEADER: &str = "kappa_re,kappa_im,indicator,log10_indicator,eta_used,condition_estimate";
pub const DETECTED_HEADER: &str = "kappa_re,kappa_im,indicator";
pub const ORACLE_HEADER: &str = "kappa,order";

/// 17 significant digits, locale-independent.
pub fn format_float(v: f64) -> String {
    format!("{v:.16e}")
}

pub fn scan_csv(result: &ScanResult) -> String {
    let mut out = String::from(SCAN_HEADER);
    out.push('\n');
    for sample in &result.samples {
        out.push_str(&format_float(sample.kappa.re));
        out.push(',');
        out.push_str(&format_float(sample.kappa.im));
        match &sample.outcome {
            Ok(v) => {
                let log10 = if v.indicator > 0.0 {
                    v.indicator.log10()
                } else {
                    f64::NEG_INFINITY
                };
                for value in [v.indicator, log10, v.eta, v.condition] {
                    out.push(',');
                    out.push_str(&format_float(value));
                }
            }
            Err(_) => out.push_str(",ERR,ERR,ERR,ERR"),
        }
        out.push('\n');
    }
    out
}

pub fn detected_csv(result: &ScanResult) -> String {
    let mut out = String::from(DETECTED_HEADER);
    out.push('\n');
    for d in &result.detected {
        out.push_str(&format_float(d.kappa.re));
        out.push(',');
        out.push_str(&format_float(d.kappa.im));
        out.push(',');
        out.push_str(&format_float(d.indicator));
        out.push('\n');
    }
    out
}

pub fn oracle_csv(roots: &[DiskRoot]) -> String {
    let mut out = String::from(ORACLE_HEADER);
    out.push('\n');
    for r in roots {
        out.push_str(&format_float(r.kappa));
        out.push(',');
        out.push_str(&r.order.to_string());
        out.push('\n');
    }
    out
}

/// Path of the companion eigenvalue file: `<output>.detected.csv`.
pub fn detected_path(output: &Path) -> PathBuf {
    let mut name = output.as_os_str().to_os_string();
    name.push(".detected.csv");
    PathBuf::from(name)
}

/// Write the sample CSV to `path` and the refined detections next to it.
pub fn write_scan_outputs(path: &Path, result: &ScanResult) -> std::io::Result<()> {
    write_text(path, &scan_csv(result))?;
    write_text(&detected_path(path), &detected_csv(result))
}

pub fn write_text(path: &Path, text: &str) -> std::io::Result<()> {
    let mut file = std::fs::File::create(path)?;
    file.write_all(text.as_bytes())
}
