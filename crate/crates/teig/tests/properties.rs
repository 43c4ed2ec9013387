//! Property-based invariants for the geometry and quadrature layers.

use proptest::prelude::*;
use std::f64::consts::PI;
use teig::geometry::sigmoid_transform;
use teig::nystrom::log_weight;

proptest! {
    /// w(Tj + Tj1 − s) = Tj + Tj1 − w(s): the graded map is symmetric about
    /// the panel midpoint.
    #[test]
    fn sigmoid_transform_is_midpoint_symmetric(
        tj in 0.0f64..5.0,
        width in 0.1f64..3.0,
        p in 2.0f64..8.0,
        frac in 0.0f64..=1.0,
    ) {
        let tj1 = tj + width;
        let s = tj + frac * width;
        let w = sigmoid_transform(s, tj, tj1, p).unwrap().w;
        let w_mirror = sigmoid_transform(tj + tj1 - s, tj, tj1, p).unwrap().w;
        prop_assert!((w_mirror - (tj + tj1 - w)).abs() <= 1e-12);
    }

    /// The transform fixes the endpoints and stays inside the panel.
    #[test]
    fn sigmoid_transform_stays_in_panel(
        tj in 0.0f64..5.0,
        width in 0.1f64..3.0,
        p in 2.0f64..8.0,
        frac in 0.0f64..=1.0,
    ) {
        let tj1 = tj + width;
        let s = tj + frac * width;
        let out = sigmoid_transform(s, tj, tj1, p).unwrap();
        prop_assert!(out.w >= tj - 1e-12 && out.w <= tj1 + 1e-12);
        prop_assert!(out.dw >= -1e-12);
    }

    /// Log weights depend only on the node offset.
    #[test]
    fn log_weights_are_circulant(n in 4usize..24, i in 0usize..48, j in 0usize..48) {
        let i = i % (2 * n);
        let j = j % (2 * n);
        let d = (i + 2 * n - j) % (2 * n);
        prop_assert!((log_weight(n, i, j) - log_weight(n, d, 0)).abs() < 1e-12);
    }
}

#[test]
fn sigmoid_derivative_positive_on_open_interior() {
    // dw > 0 sampled at 10^3 interior points per grading exponent
    let (tj, tj1) = (0.4, 0.4 + 0.5 * PI);
    for &p in &[2.0, 3.0, 4.0, 6.5] {
        for k in 1..1000 {
            let s = tj + (tj1 - tj) * k as f64 / 1000.0;
            let out = sigmoid_transform(s, tj, tj1, p).unwrap();
            assert!(out.dw > 0.0, "dw = {} at s = {s}, p = {p}", out.dw);
        }
    }
}

#[test]
fn log_weight_rows_sum_to_zero_for_various_sizes() {
    for n in [4usize, 8, 16, 24] {
        for i in [0, 1, n, 2 * n - 1] {
            let sum: f64 = (0..2 * n).map(|j| log_weight(n, i, j)).sum();
            assert!(sum.abs() < 1e-11, "n={n} row {i}: {sum}");
        }
    }
}
