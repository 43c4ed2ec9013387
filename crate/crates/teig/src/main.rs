//! Command-line scanner for interior transmission eigenvalues.

use anyhow::{anyhow, Context, Result};
use clap::{Args, Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use teig::config::{self, OracleSettings, RawOptions, ScanSettings};
use teig::geometry::Mesh;
use teig::output;
use teig::rim::RimConfig;
use teig::scan::{self, ScanResult};
use teig::disk;

#[derive(Parser)]
#[command(
    name = "teig",
    version,
    about = "Transmission-eigenvalue scans for 2D Helmholtz domains via \
             boundary-integral Schur complements and a contour-integral indicator"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Scan a real wavenumber interval and detect eigenvalues
    Scan(ScanArgs),
    /// Scan a rectangular window in the complex wavenumber plane
    ScanComplex(ScanArgs),
    /// Emit the analytic disk determinant roots as CSV
    DiskOracle(OracleArgs),
}

#[derive(Args, Clone)]
struct ScanArgs {
    /// Flat `key = value` config file; command-line flags win
    #[arg(long)]
    config: Option<PathBuf>,
    /// Domain: disk, peanut, square, triangle, lshape, pentagon
    #[arg(long)]
    shape: Option<String>,
    /// Refractive index (default 16)
    #[arg(long)]
    mu: Option<f64>,
    /// Wavenumber interval endpoints
    #[arg(long, num_args = 2, value_names = ["A", "B"])]
    interval: Option<Vec<f64>>,
    /// Number of interval subdivisions (grid has N+1 points)
    #[arg(long)]
    subdivisions: Option<usize>,
    /// Half node count of the quadrature mesh (default 32)
    #[arg(long)]
    n: Option<usize>,
    /// Contour quadrature half-count (default 64)
    #[arg(long)]
    m: Option<usize>,
    /// Contour radius (default 0.001, at most 0.05)
    #[arg(long)]
    radius: Option<f64>,
    /// Regularization: `auto` or a value in [0, 1) (default auto)
    #[arg(long)]
    eta: Option<String>,
    /// Corner grading exponent (default 3)
    #[arg(long)]
    grading: Option<f64>,
    /// Probe seed (default 0)
    #[arg(long)]
    seed: Option<u64>,
    /// Complex window: RE_A RE_B IM_A IM_B NRE NIM
    #[arg(long, num_args = 6, value_names = ["REA", "REB", "IMA", "IMB", "NRE", "NIM"])]
    window: Option<Vec<f64>>,
    /// Output CSV path (default scan.csv); detections go to <output>.detected.csv
    #[arg(long)]
    output: Option<PathBuf>,
    /// Worker threads for the grid scan (default 0 = all cores)
    #[arg(long)]
    workers: Option<usize>,
    /// Disk radius used when shape = disk (default 0.5)
    #[arg(long = "disk-radius")]
    disk_radius: Option<f64>,
}

#[derive(Args, Clone)]
struct OracleArgs {
    /// Refractive index (default 16)
    #[arg(long, default_value_t = config::DEFAULT_MU)]
    mu: f64,
    /// Disk radius (default 0.5)
    #[arg(long = "disk-radius", default_value_t = config::DEFAULT_DISK_RADIUS)]
    disk_radius: f64,
    /// Search interval endpoints
    #[arg(long, num_args = 2, value_names = ["A", "B"], required = true)]
    interval: Vec<f64>,
    /// Largest Fourier order swept (default 8)
    #[arg(long = "m-max", default_value_t = config::DEFAULT_ORACLE_MAX_ORDER)]
    m_max: usize,
    /// Output CSV path
    #[arg(long, default_value = "disk-oracle.csv")]
    output: PathBuf,
}

impl ScanArgs {
    fn to_raw(&self) -> Result<RawOptions> {
        let interval = match &self.interval {
            None => None,
            Some(v) => Some((v[0], v[1])),
        };
        let window = match &self.window {
            None => None,
            Some(v) => Some(config::window_from_parts(v)?),
        };
        Ok(RawOptions {
            shape: self.shape.clone(),
            mu: self.mu,
            interval,
            subdivisions: self.subdivisions,
            n: self.n,
            m: self.m,
            radius: self.radius,
            eta: self.eta.clone(),
            grading: self.grading,
            seed: self.seed,
            window,
            output: self.output.clone(),
            workers: self.workers,
            disk_radius: self.disk_radius,
        })
    }

    fn merged(&self) -> Result<RawOptions> {
        let cli = self.to_raw()?;
        Ok(match &self.config {
            Some(path) => RawOptions::from_file(path)?.overlay(cli),
            None => cli,
        })
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Scan(args) => run_scan(&args, false),
        Command::ScanComplex(args) => run_scan(&args, true),
        Command::DiskOracle(args) => run_oracle(&args),
    };
    match result {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::FAILURE
        }
    }
}

fn run_scan(args: &ScanArgs, complex: bool) -> Result<()> {
    let raw = args.merged()?;
    let settings = if complex {
        raw.resolve_complex_scan()?
    } else {
        raw.resolve_interval_scan()?
    };
    let result = execute_scan(&settings, complex)?;

    output::write_scan_outputs(&settings.output, &result)
        .with_context(|| format!("writing {}", settings.output.display()))?;

    let err_count = result.samples.iter().filter(|s| s.outcome.is_err()).count();
    println!(
        "wrote {} samples to {} ({} errors)",
        result.samples.len(),
        settings.output.display(),
        err_count
    );
    if result.detected.is_empty() {
        println!("no eigenvalues detected");
    } else {
        for d in &result.detected {
            if d.kappa.im == 0.0 {
                println!("detected eigenvalue near {:.6} (indicator {:.3e})", d.kappa.re, d.indicator);
            } else {
                println!(
                    "detected eigenvalue near {:.6} {:+.6}i (indicator {:.3e})",
                    d.kappa.re, d.kappa.im, d.indicator
                );
            }
        }
    }
    Ok(())
}

fn execute_scan(settings: &ScanSettings, complex: bool) -> Result<ScanResult> {
    let curve = settings.shape.curve(settings.grading, settings.disk_radius)?;
    let mesh = Mesh::build(&curve, settings.n)?;
    let cfg = RimConfig::new(settings.m, settings.radius, settings.seed)?;

    let scan_result = run_with_workers(settings.workers, || {
        if complex {
            let w = settings.window.expect("validated complex window");
            scan::scan_complex_grid(
                w.re,
                w.im,
                w.n_re,
                w.n_im,
                settings.mu,
                settings.eta,
                &mesh,
                &cfg,
            )
        } else {
            let (a, b) = settings.interval.expect("validated interval");
            scan::scan_interval(
                a,
                b,
                settings.subdivisions,
                settings.mu,
                settings.eta,
                &mesh,
                &cfg,
            )
        }
    })?;
    Ok(scan_result)
}

fn run_oracle(args: &OracleArgs) -> Result<()> {
    let settings = OracleSettings {
        mu: args.mu,
        disk_radius: args.disk_radius,
        interval: (args.interval[0], args.interval[1]),
        m_max: args.m_max,
        output: args.output.clone(),
    };
    if !(settings.mu > 1.0) {
        return Err(anyhow!("--mu {} must exceed 1", settings.mu));
    }
    let roots = disk::find_roots(
        settings.m_max,
        settings.interval,
        config::DEFAULT_ORACLE_TOL,
        settings.mu,
        settings.disk_radius,
    )?;
    output::write_text(&settings.output, &output::oracle_csv(&roots))
        .with_context(|| format!("writing {}", settings.output.display()))?;
    println!(
        "wrote {} roots to {}",
        roots.len(),
        settings.output.display()
    );
    Ok(())
}

#[cfg(feature = "parallel")]
fn run_with_workers<T: Send>(workers: usize, f: impl FnOnce() -> T + Send) -> T {
    if workers == 0 {
        return f();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .expect("building the worker pool");
    pool.install(f)
}

#[cfg(not(feature = "parallel"))]
fn run_with_workers<T>(workers: usize, f: impl FnOnce() -> T) -> T {
    if workers > 1 {
        eprintln!("note: built without the `parallel` feature; scanning sequentially");
    }
    f()
}
