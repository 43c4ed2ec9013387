//! Parametric boundary curves, sigmoid-graded corner handling, and mesh
//! construction with cached geometric data.
//!
//! All curves are closed and 2π-periodic. Smooth shapes (disk, peanut) are
//! evaluated directly; polygons are parametrized linearly edge by edge and
//! composed with a sigmoid change of variables whose derivative vanishes at
//! the corner parameters, which grades quadrature nodes into the corners.

use std::f64::consts::PI;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum GeometryError {
    #[error("panel parameters out of order: {0} >= {1}")]
    InvalidPanel(f64, f64),
    #[error("grading exponent {0} must be >= 2")]
    InvalidGrading(f64),
    #[error("mesh parameter n = {0} is below the minimum of 4")]
    MeshTooCoarse(usize),
    #[error("curve parameter {0} outside [0, 2pi]")]
    ParameterOutOfRange(f64),
    #[error("radius {0} must be positive")]
    InvalidRadius(f64),
    #[error("polygon needs at least 3 vertices")]
    DegeneratePolygon,
}

/// Point in the plane.
#[derive(Copy, Clone, Debug, PartialEq, Default)]
pub struct Point {
    pub x: f64,
    pub y: f64,
}

impl Point {
    pub fn new(x: f64, y: f64) -> Self {
        Point { x, y }
    }

    pub fn dot(self, other: Point) -> f64 {
        self.x * other.x + self.y * other.y
    }

    pub fn norm(self) -> f64 {
        self.x.hypot(self.y)
    }

    pub fn is_finite(self) -> bool {
        self.x.is_finite() && self.y.is_finite()
    }
}

impl std::ops::Add for Point {
    type Output = Point;
    fn add(self, o: Point) -> Point {
        Point::new(self.x + o.x, self.y + o.y)
    }
}

impl std::ops::Sub for Point {
    type Output = Point;
    fn sub(self, o: Point) -> Point {
        Point::new(self.x - o.x, self.y - o.y)
    }
}

impl std::ops::Mul<f64> for Point {
    type Output = Point;
    fn mul(self, s: f64) -> Point {
        Point::new(self.x * s, self.y * s)
    }
}

/// Sigmoid change of variables on one panel, with analytic derivatives.
#[derive(Copy, Clone, Debug)]
pub struct SigmoidTransform {
    pub w: f64,
    pub dw: f64,
    pub ddw: f64,
}

/// Graded map w: [Tj, Tj1] → [Tj, Tj1] with w(Tj)=Tj, w(Tj1)=Tj1 and
/// dw = 0 at both endpoints:
///
/// w(s) = (Tj1·vᵖ + Tj·(1−v)ᵖ) / (vᵖ + (1−v)ᵖ),
/// v(s) = (1/2 − 1/p)·ξ³ + ξ/p + 1/2,   ξ = (2s − Tj − Tj1)/(Tj1 − Tj),
///
/// the cubic arranged so v(Tj) = 0 and v(Tj1) = 1 for every p ≥ 2.
pub fn sigmoid_transform(
    s: f64,
    tj: f64,
    tj1: f64,
    p: f64,
) -> Result<SigmoidTransform, GeometryError> {
    if tj >= tj1 {
        return Err(GeometryError::InvalidPanel(tj, tj1));
    }
    if p < 2.0 {
        return Err(GeometryError::InvalidGrading(p));
    }
    let width = tj1 - tj;
    let xi = (2.0 * s - tj - tj1) / width;
    let a = 0.5 - 1.0 / p;
    let v = (a * xi * xi * xi + xi / p + 0.5).clamp(0.0, 1.0);
    let dv = (3.0 * a * xi * xi + 1.0 / p) * (2.0 / width);
    let ddv = 6.0 * a * xi * (2.0 / width) * (2.0 / width);

    let u = 1.0 - v;
    let vp = v.powf(p);
    let up = u.powf(p);
    let den = vp + up;
    let w = (tj1 * vp + tj * up) / den;

    let vp1 = v.powf(p - 1.0);
    let up1 = u.powf(p - 1.0);
    let dq = p * vp1 * up1 / (den * den);

    let vp2 = v.powf(p - 2.0);
    let up2 = u.powf(p - 2.0);
    let ddq = p * (p - 1.0) * vp2 * up2 * (1.0 - 2.0 * v) / (den * den)
        - 2.0 * p * p * vp1 * up1 * (vp1 - up1) / (den * den * den);

    Ok(SigmoidTransform {
        w,
        dw: width * dq * dv,
        ddw: width * (ddq * dv * dv + dq * ddv),
    })
}

#[derive(Clone, Debug)]
enum CurveKind {
    Disk { radius: f64 },
    Peanut,
    Polygon { vertices: Vec<Point> },
}

/// Closed 2π-periodic boundary curve, optionally with corners.
#[derive(Clone, Debug)]
pub struct BoundaryCurve {
    kind: CurveKind,
    corner_params: Vec<f64>,
    grading_p: f64,
}

/// Curve evaluation at one parameter: position, first and second derivative
/// of the (possibly sigmoid-composed) parametrization, outward unit normal,
/// and the jacobian |z'|.
#[derive(Copy, Clone, Debug)]
pub struct CurveData {
    pub z: Point,
    pub dz: Point,
    pub ddz: Point,
    pub normal: Point,
    pub jacobian: f64,
    pub corner: bool,
}

const CORNER_MATCH_TOL: f64 = 1e-12;

impl BoundaryCurve {
    pub fn disk(radius: f64) -> Result<Self, GeometryError> {
        if !(radius > 0.0) {
            return Err(GeometryError::InvalidRadius(radius));
        }
        Ok(BoundaryCurve {
            kind: CurveKind::Disk { radius },
            corner_params: Vec::new(),
            grading_p: 2.0,
        })
    }

    pub fn peanut() -> Self {
        BoundaryCurve {
            kind: CurveKind::Peanut,
            corner_params: Vec::new(),
            grading_p: 2.0,
        }
    }

    /// Counterclockwise polygon. Vertices are assigned equally spaced corner
    /// parameters 2πj/M; each edge is linear in the panel variable before
    /// grading with exponent `grading_p`.
    pub fn polygon(vertices: Vec<Point>, grading_p: f64) -> Result<Self, GeometryError> {
        if vertices.len() < 3 {
            return Err(GeometryError::DegeneratePolygon);
        }
        if grading_p < 2.0 {
            return Err(GeometryError::InvalidGrading(grading_p));
        }
        let m = vertices.len();
        let corner_params = (0..m).map(|j| 2.0 * PI * j as f64 / m as f64).collect();
        Ok(BoundaryCurve {
            kind: CurveKind::Polygon { vertices },
            corner_params,
            grading_p,
        })
    }

    /// Unit square centered at the origin.
    pub fn square(grading_p: f64) -> Result<Self, GeometryError> {
        Self::polygon(
            vec![
                Point::new(0.5, -0.5),
                Point::new(0.5, 0.5),
                Point::new(-0.5, 0.5),
                Point::new(-0.5, -0.5),
            ],
            grading_p,
        )
    }

    pub fn triangle(grading_p: f64) -> Result<Self, GeometryError> {
        let s = 3f64.sqrt() / 2.0;
        Self::polygon(
            vec![Point::new(-s, -0.5), Point::new(s, -0.5), Point::new(0.0, 1.0)],
            grading_p,
        )
    }

    pub fn lshape(grading_p: f64) -> Result<Self, GeometryError> {
        let r = 2f64.sqrt();
        let h = r / 2.0;
        Self::polygon(
            vec![
                Point::new(r, h),
                Point::new(h, r),
                Point::new(0.0, h),
                Point::new(-h, r),
                Point::new(-r, h),
                Point::new(0.0, -h),
            ],
            grading_p,
        )
    }

    pub fn pentagon(grading_p: f64) -> Result<Self, GeometryError> {
        let verts = (0..5)
            .map(|j| {
                let a = 2.0 * PI * j as f64 / 5.0;
                Point::new(a.cos(), a.sin())
            })
            .collect();
        Self::polygon(verts, grading_p)
    }

    pub fn has_corners(&self) -> bool {
        !self.corner_params.is_empty()
    }

    pub fn corner_params(&self) -> &[f64] {
        &self.corner_params
    }

    pub fn grading(&self) -> f64 {
        self.grading_p
    }

    pub fn evaluate(&self, t: f64) -> Result<CurveData, GeometryError> {
        if !(0.0..=2.0 * PI + CORNER_MATCH_TOL).contains(&t) {
            return Err(GeometryError::ParameterOutOfRange(t));
        }
        match &self.kind {
            CurveKind::Disk { radius } => Ok(disk_data(*radius, t)),
            CurveKind::Peanut => Ok(peanut_data(t)),
            CurveKind::Polygon { vertices } => self.polygon_data(vertices, t),
        }
    }

    fn polygon_data(&self, vertices: &[Point], t: f64) -> Result<CurveData, GeometryError> {
        let m = vertices.len();
        let params = &self.corner_params;
        // panel index: largest j with T_j <= t
        let mut j = params.partition_point(|&tj| tj <= t + CORNER_MATCH_TOL);
        j = j.saturating_sub(1).min(m - 1);
        let tj = params[j];
        let tj1 = if j + 1 < m { params[j + 1] } else { 2.0 * PI };

        let v0 = vertices[j];
        let v1 = vertices[(j + 1) % m];
        let edge = v1 - v0;
        let dz_du = edge * (1.0 / (tj1 - tj));

        let sig = sigmoid_transform(t.clamp(tj, tj1), tj, tj1, self.grading_p)?;
        let z = v0 + dz_du * (sig.w - tj);
        let dz = dz_du * sig.dw;
        let ddz = dz_du * sig.ddw;
        let jacobian = dz.norm();

        let corner = params
            .iter()
            .any(|&c| (t - c).abs() <= CORNER_MATCH_TOL)
            || (t - 2.0 * PI).abs() <= CORNER_MATCH_TOL;

        let normal = if corner {
            // flagged: average of the two one-sided edge normals
            let jc = if (t - 2.0 * PI).abs() <= CORNER_MATCH_TOL {
                0
            } else {
                params
                    .iter()
                    .position(|&c| (t - c).abs() <= CORNER_MATCH_TOL)
                    .unwrap_or(j)
            };
            let prev = vertices[(jc + m - 1) % m];
            let here = vertices[jc % m];
            let next = vertices[(jc + 1) % m];
            let n_left = edge_normal(here - prev);
            let n_right = edge_normal(next - here);
            let avg = n_left + n_right;
            let len = avg.norm();
            if len > 0.0 {
                avg * (1.0 / len)
            } else {
                n_right
            }
        } else if jacobian > 0.0 {
            Point::new(dz.y, -dz.x) * (1.0 / jacobian)
        } else {
            edge_normal(edge)
        };

        Ok(CurveData {
            z,
            dz,
            ddz,
            normal,
            jacobian: if corner { 0.0 } else { jacobian },
            corner,
        })
    }
}

fn edge_normal(d: Point) -> Point {
    let len = d.norm();
    Point::new(d.y / len, -d.x / len)
}

fn disk_data(radius: f64, t: f64) -> CurveData {
    let (s, c) = t.sin_cos();
    CurveData {
        z: Point::new(radius * c, radius * s),
        dz: Point::new(-radius * s, radius * c),
        ddz: Point::new(-radius * c, -radius * s),
        normal: Point::new(c, s),
        jacobian: radius,
        corner: false,
    }
}

fn peanut_data(t: f64) -> CurveData {
    let (s, c) = t.sin_cos();
    let rho2 = 0.25 + c * c;
    let rho = rho2.sqrt();
    let s2t = (2.0 * t).sin();
    let c2t = (2.0 * t).cos();
    let drho = -s2t / (2.0 * rho);
    let ddrho = -c2t / rho - s2t * s2t / (4.0 * rho * rho2);

    let z = Point::new(rho * c, rho * s);
    let dz = Point::new(drho * c - rho * s, drho * s + rho * c);
    let ddz = Point::new(
        (ddrho - rho) * c - 2.0 * drho * s,
        (ddrho - rho) * s + 2.0 * drho * c,
    );
    let jacobian = dz.norm();
    CurveData {
        z,
        dz,
        ddz,
        normal: Point::new(dz.y / jacobian, -dz.x / jacobian),
        jacobian,
        corner: false,
    }
}

/// Quadrature mesh: 2n equidistant nodes t_j = πj/n with cached curve data.
#[derive(Clone, Debug)]
pub struct Mesh {
    n: usize,
    nodes: Vec<f64>,
    data: Vec<CurveData>,
    has_corners: bool,
}

impl Mesh {
    pub fn build(curve: &BoundaryCurve, n: usize) -> Result<Self, GeometryError> {
        if n < 4 {
            return Err(GeometryError::MeshTooCoarse(n));
        }
        let nodes: Vec<f64> = (0..2 * n).map(|j| PI * j as f64 / n as f64).collect();
        let data = nodes
            .iter()
            .map(|&t| curve.evaluate(t))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(Mesh {
            n,
            nodes,
            data,
            has_corners: curve.has_corners(),
        })
    }

    /// Half node count n; the mesh has 2n nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn len(&self) -> usize {
        2 * self.n
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn node(&self, i: usize) -> f64 {
        self.nodes[i]
    }

    pub fn at(&self, i: usize) -> &CurveData {
        &self.data[i]
    }

    pub fn has_corners(&self) -> bool {
        self.has_corners
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn disk_evaluation_at_zero() {
        let curve = BoundaryCurve::disk(0.5).unwrap();
        let d = curve.evaluate(0.0).unwrap();
        assert!((d.z.x - 0.5).abs() < 1e-15 && d.z.y.abs() < 1e-15);
        assert!((d.dz.y - 0.5).abs() < 1e-15 && d.dz.x.abs() < 1e-15);
        assert!((d.normal.x - 1.0).abs() < 1e-15 && d.normal.y.abs() < 1e-15);
        assert!((d.jacobian - 0.5).abs() < 1e-15);
    }

    #[test]
    fn disk_constant_jacobian() {
        let curve = BoundaryCurve::disk(0.5).unwrap();
        for k in 0..37 {
            let t = 2.0 * PI * k as f64 / 37.0;
            assert!((curve.evaluate(t).unwrap().jacobian - 0.5).abs() < 1e-15);
        }
    }

    #[test]
    fn peanut_starts_at_sqrt_one_and_a_quarter() {
        let d = BoundaryCurve::peanut().evaluate(0.0).unwrap();
        assert!((d.z.x - 1.25f64.sqrt()).abs() < 1e-15);
        assert!(d.z.y.abs() < 1e-15);
    }

    #[test]
    fn peanut_derivatives_match_finite_differences() {
        let curve = BoundaryCurve::peanut();
        let h = 1e-6;
        for &t in &[0.3, 1.1, 2.0, 4.4, 5.9] {
            let a = curve.evaluate(t - h).unwrap().z;
            let b = curve.evaluate(t + h).unwrap().z;
            let d = curve.evaluate(t).unwrap();
            let fd = (b - a) * (1.0 / (2.0 * h));
            assert!((fd - d.dz).norm() < 1e-8, "dz at t={t}");
            let da = curve.evaluate(t - h).unwrap().dz;
            let db = curve.evaluate(t + h).unwrap().dz;
            let fdd = (db - da) * (1.0 / (2.0 * h));
            assert!((fdd - d.ddz).norm() < 1e-7, "ddz at t={t}");
        }
    }

    #[test]
    fn sigmoid_endpoints_midpoint_and_derivative() {
        let (tj, tj1) = (0.0, PI / 2.0);
        for &p in &[2.0, 3.0, 4.5] {
            let lo = sigmoid_transform(tj, tj, tj1, p).unwrap();
            assert!((lo.w - tj).abs() < 1e-14, "w(Tj) at p={p}");
            assert!(lo.dw.abs() < 1e-14, "dw(Tj) at p={p}");
            let hi = sigmoid_transform(tj1, tj, tj1, p).unwrap();
            assert!((hi.w - tj1).abs() < 1e-13, "w(Tj1) at p={p}");
            assert!(hi.dw.abs() < 1e-13, "dw(Tj1) at p={p}");
            let mid = sigmoid_transform((tj + tj1) / 2.0, tj, tj1, p).unwrap();
            assert!((mid.w - (tj + tj1) / 2.0).abs() < 1e-14, "midpoint at p={p}");
        }
    }

    #[test]
    fn sigmoid_derivative_matches_finite_difference_at_endpoint() {
        // dw at s = Tj for p = 2, checked against a central difference.
        let (tj, tj1, p) = (0.0, 1.0, 2.0);
        let h = 1e-6;
        let wp = sigmoid_transform(tj + h, tj, tj1, p).unwrap().w;
        // one-sided because s < Tj is outside the panel; w(Tj) = Tj
        let fd = (wp - tj) / h;
        let an = sigmoid_transform(tj, tj, tj1, p).unwrap().dw;
        assert!((fd - an).abs() < 1e-5, "fd {fd} vs analytic {an}");
    }

    #[test]
    fn sigmoid_rejects_bad_panel() {
        assert!(matches!(
            sigmoid_transform(0.0, 1.0, 1.0, 2.0),
            Err(GeometryError::InvalidPanel(_, _))
        ));
    }

    #[test]
    fn sigmoid_interior_derivative_analytic_vs_numeric() {
        let (tj, tj1) = (1.0, 3.0);
        let h = 1e-6;
        for &p in &[2.0, 3.0, 5.0] {
            for k in 1..10 {
                let s = tj + (tj1 - tj) * k as f64 / 10.0;
                let a = sigmoid_transform(s - h, tj, tj1, p).unwrap().w;
                let b = sigmoid_transform(s + h, tj, tj1, p).unwrap().w;
                let mid = sigmoid_transform(s, tj, tj1, p).unwrap();
                assert!(((b - a) / (2.0 * h) - mid.dw).abs() < 1e-8);
                let da = sigmoid_transform(s - h, tj, tj1, p).unwrap().dw;
                let db = sigmoid_transform(s + h, tj, tj1, p).unwrap().dw;
                assert!(((db - da) / (2.0 * h) - mid.ddw).abs() < 1e-6);
            }
        }
    }

    #[test]
    fn mesh_disk_node_count_and_jacobians() {
        let curve = BoundaryCurve::disk(0.5).unwrap();
        let mesh = Mesh::build(&curve, 4).unwrap();
        assert_eq!(mesh.len(), 8);
        for i in 0..8 {
            assert!((mesh.node(i) - PI * i as f64 / 4.0).abs() < 1e-15);
            assert!((mesh.at(i).jacobian - 0.5).abs() < 1e-15);
        }
        assert!(matches!(
            Mesh::build(&curve, 3),
            Err(GeometryError::MeshTooCoarse(3))
        ));
    }

    #[test]
    fn square_corner_nodes_have_zero_jacobian() {
        let curve = BoundaryCurve::square(3.0).unwrap();
        let mesh = Mesh::build(&curve, 32).unwrap();
        let mut corner_count = 0;
        for i in 0..mesh.len() {
            if mesh.at(i).corner {
                corner_count += 1;
                assert_eq!(mesh.at(i).jacobian, 0.0);
            } else {
                assert!(mesh.at(i).jacobian > 0.0);
                assert!((mesh.at(i).normal.norm() - 1.0).abs() < 1e-13);
            }
        }
        assert_eq!(corner_count, 4);
    }

    #[test]
    fn square_vertices_sit_on_the_curve() {
        let curve = BoundaryCurve::square(3.0).unwrap();
        for (j, want) in [
            Point::new(0.5, -0.5),
            Point::new(0.5, 0.5),
            Point::new(-0.5, 0.5),
            Point::new(-0.5, -0.5),
        ]
        .iter()
        .enumerate()
        {
            let t = PI * j as f64 / 2.0;
            let z = curve.evaluate(t).unwrap().z;
            assert!((z - *want).norm() < 1e-13, "vertex {j}");
        }
        // closure
        let z0 = curve.evaluate(0.0).unwrap().z;
        let z1 = curve.evaluate(2.0 * PI).unwrap().z;
        assert!((z0 - z1).norm() < 1e-12);
    }

    #[test]
    fn peanut_mesh_length_matches_adaptive_quadrature() {
        // Oracle: adaptive Simpson on |z'(t)|, independent of the trapezoid sum.
        fn speed(t: f64) -> f64 {
            BoundaryCurve::peanut().evaluate(t).unwrap().jacobian
        }
        fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
            (b - a) / 6.0 * (fa + 4.0 * fm + fb)
        }
        fn adaptive(a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, depth: u32) -> f64 {
            let m = 0.5 * (a + b);
            let lm = 0.5 * (a + m);
            let rm = 0.5 * (m + b);
            let flm = speed(lm);
            let frm = speed(rm);
            let left = simpson(a, m, fa, flm, fm);
            let right = simpson(m, b, fm, frm, fb);
            if depth == 0 || (left + right - whole).abs() < 1e-13 {
                left + right + (left + right - whole) / 15.0
            } else {
                adaptive(a, m, fa, flm, fm, left, depth - 1)
                    + adaptive(m, b, fm, frm, fb, right, depth - 1)
            }
        }
        let (a, b) = (0.0, 2.0 * PI);
        let (fa, fm, fb) = (speed(a), speed(0.5 * (a + b)), speed(b));
        let oracle = adaptive(a, b, fa, fm, fb, simpson(a, b, fa, fm, fb), 24);
        // frozen extended-precision value for the same integral
        assert!((oracle - 5.9738984974360884669).abs() < 1e-10);

        // Convergence is geometric but the speed has square-root
        // singularities at distance asinh(1/2) from the real axis, so n = 32
        // sits near 1e-7 and n = 64 is already at rounding level.
        for (n, tol) in [(32usize, 1e-7), (64, 1e-12)] {
            let mesh = Mesh::build(&BoundaryCurve::peanut(), n).unwrap();
            let trapezoid: f64 = (0..mesh.len())
                .map(|i| PI / n as f64 * mesh.at(i).jacobian)
                .sum();
            assert!(
                (trapezoid - oracle).abs() < tol,
                "n={n}: trapezoid {trapezoid} vs oracle {oracle}"
            );
        }
    }

    #[test]
    fn outward_normals_on_convex_domains() {
        for curve in [
            BoundaryCurve::disk(0.5).unwrap(),
            BoundaryCurve::square(3.0).unwrap(),
            BoundaryCurve::triangle(3.0).unwrap(),
            BoundaryCurve::pentagon(3.0).unwrap(),
        ] {
            let mesh = Mesh::build(&curve, 32).unwrap();
            // jacobian-weighted centroid of the boundary nodes
            let mut cx = 0.0;
            let mut cy = 0.0;
            let mut wsum = 0.0;
            for i in 0..mesh.len() {
                let w = mesh.at(i).jacobian;
                cx += w * mesh.at(i).z.x;
                cy += w * mesh.at(i).z.y;
                wsum += w;
            }
            let centroid = Point::new(cx / wsum, cy / wsum);
            for i in 0..mesh.len() {
                let d = mesh.at(i);
                if d.corner {
                    continue;
                }
                assert!(
                    (d.z - centroid).dot(d.normal) > 0.0,
                    "inward normal at node {i}"
                );
            }
        }
    }

    #[test]
    fn closure_trapezoid_sum_of_velocity_vanishes() {
        for curve in [BoundaryCurve::disk(0.5).unwrap(), BoundaryCurve::peanut()] {
            let mesh = Mesh::build(&curve, 32).unwrap();
            let mut sx = 0.0;
            let mut sy = 0.0;
            for i in 0..mesh.len() {
                sx += PI / 32.0 * mesh.at(i).dz.x;
                sy += PI / 32.0 * mesh.at(i).dz.y;
            }
            assert!(sx.abs() < 1e-10 && sy.abs() < 1e-10);
        }
    }

    #[test]
    fn lshape_vertices_match_stated_data() {
        let curve = BoundaryCurve::lshape(3.0).unwrap();
        let r = 2f64.sqrt();
        let expected = [
            Point::new(r, r / 2.0),
            Point::new(r / 2.0, r),
            Point::new(0.0, r / 2.0),
            Point::new(-r / 2.0, r),
            Point::new(-r, r / 2.0),
            Point::new(0.0, -r / 2.0),
        ];
        for (j, want) in expected.iter().enumerate() {
            let t = 2.0 * PI * j as f64 / 6.0;
            let z = curve.evaluate(t).unwrap().z;
            assert!((z - *want).norm() < 1e-12, "vertex {j}");
        }
    }
}
