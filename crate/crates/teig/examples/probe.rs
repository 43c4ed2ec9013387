use teig::geometry::{BoundaryCurve, Mesh};
use teig::rim::RimConfig;
use teig::scan::scan_interval;
use teig::schur::EtaPolicy;

fn main() {
    // L-shape convergence study: n and grading p
    for (n, p, r) in [(48usize, 3.0, 5e-3), (64, 3.0, 5e-3), (32, 5.0, 5e-3), (48, 5.0, 5e-3)] {
        let mesh = Mesh::build(&BoundaryCurve::lshape(p).unwrap(), n).unwrap();
        let cfg = RimConfig::new(64, r, 0).unwrap();
        let mut all = Vec::new();
        for (a, b) in [(1.5, 2.0), (2.0, 2.5), (2.5, 3.0)] {
            let res = scan_interval(a, b, 200, 16.0, EtaPolicy::Auto, &mesh, &cfg).unwrap();
            all.extend(res.detected.iter().map(|d| (d.kappa.re * 1e5).round() / 1e5));
        }
        println!("n={n} p={p} r={r}: {all:?}");
    }
    println!("paper:            [1.5541, 1.8920, 2.1131, 2.4937, 2.5226, 2.7349]");
}
