//! Conforming Q1 (4-node bilinear) and Q2 (9-node biquadratic Lagrangian)
//! quadrilateral elements, fully integrated, used as comparison baselines.
//!
//! Both elements use the bilinear geometric map of the four corners; Q2 is
//! subparametric with displacement nodes at the corners, edge midpoints and
//! the center. Straight-sided cells keep the shared mid-edge nodes of
//! neighboring elements coincident.

use nalgebra::{DMatrix, Matrix2, Matrix3};

use crate::constitutive::VoigtTensor3;
use crate::{Error, Point2, Result, Vector2};

/// Quadrilateral with counter-clockwise corners.
#[derive(Debug, Clone, Copy)]
pub struct QuadElement {
    pub corners: [Point2; 4],
}

const CORNER_REF: [(f64, f64); 4] = [(-1.0, -1.0), (1.0, -1.0), (1.0, 1.0), (-1.0, 1.0)];

/// Q2 node reference coordinates: corners, edge midpoints
/// (bottom/right/top/left), center.
const Q2_REF: [(f64, f64); 9] = [
    (-1.0, -1.0),
    (1.0, -1.0),
    (1.0, 1.0),
    (-1.0, 1.0),
    (0.0, -1.0),
    (1.0, 0.0),
    (0.0, 1.0),
    (-1.0, 0.0),
    (0.0, 0.0),
];

impl QuadElement {
    pub fn new(corners: [Point2; 4]) -> Self {
        Self { corners }
    }

    /// Bilinear image of a reference point.
    pub fn map_point(&self, xi: f64, eta: f64) -> Point2 {
        let mut x = 0.0;
        let mut y = 0.0;
        for (k, &(xr, yr)) in CORNER_REF.iter().enumerate() {
            let n = 0.25 * (1.0 + xi * xr) * (1.0 + eta * yr);
            x += n * self.corners[k].x;
            y += n * self.corners[k].y;
        }
        Point2::new(x, y)
    }

    /// Jacobian of the bilinear map, rows d(x,y)/d(xi,eta).
    fn jacobian(&self, xi: f64, eta: f64) -> Matrix2<f64> {
        let mut j = Matrix2::zeros();
        for (k, &(xr, yr)) in CORNER_REF.iter().enumerate() {
            let dn_dxi = 0.25 * xr * (1.0 + eta * yr);
            let dn_deta = 0.25 * yr * (1.0 + xi * xr);
            j[(0, 0)] += dn_dxi * self.corners[k].x;
            j[(0, 1)] += dn_deta * self.corners[k].x;
            j[(1, 0)] += dn_dxi * self.corners[k].y;
            j[(1, 1)] += dn_deta * self.corners[k].y;
        }
        j
    }

    /// Physical positions of the nine Q2 nodes.
    pub fn q2_node_positions(&self) -> [Point2; 9] {
        let mut out = [Point2::origin(); 9];
        for (k, &(xi, eta)) in Q2_REF.iter().enumerate() {
            out[k] = self.map_point(xi, eta);
        }
        out
    }
}

/// 1D quadratic Lagrange value and derivative at `t` for the node at
/// position `node` in {-1, 0, 1}.
fn lag2(node: f64, t: f64) -> (f64, f64) {
    if node < -0.5 {
        (0.5 * t * (t - 1.0), t - 0.5)
    } else if node > 0.5 {
        (0.5 * t * (t + 1.0), t + 0.5)
    } else {
        (1.0 - t * t, -2.0 * t)
    }
}

fn gauss_2() -> [(f64, f64); 2] {
    let g = 1.0 / 3f64.sqrt();
    [(-g, 1.0), (g, 1.0)]
}

fn gauss_3() -> [(f64, f64); 3] {
    let g = (3.0f64 / 5.0).sqrt();
    [(-g, 5.0 / 9.0), (0.0, 8.0 / 9.0), (g, 5.0 / 9.0)]
}

/// Q1 shape derivatives with respect to (xi, eta).
fn q1_grads(xi: f64, eta: f64) -> [(f64, f64); 4] {
    let mut g = [(0.0, 0.0); 4];
    for (k, &(xr, yr)) in CORNER_REF.iter().enumerate() {
        g[k] = (0.25 * xr * (1.0 + eta * yr), 0.25 * yr * (1.0 + xi * xr));
    }
    g
}

/// Q2 shape derivatives with respect to (xi, eta).
fn q2_grads(xi: f64, eta: f64) -> [(f64, f64); 9] {
    let mut g = [(0.0, 0.0); 9];
    for (k, &(xr, yr)) in Q2_REF.iter().enumerate() {
        let (lx, dlx) = lag2(xr, xi);
        let (ly, dly) = lag2(yr, eta);
        g[k] = (dlx * ly, lx * dly);
    }
    g
}

/// Shared Gauss-loop core: accumulates B' C(x) B det(J) over the points.
fn stiffness_core(
    elem: &QuadElement,
    n_nodes: usize,
    grads: &dyn Fn(f64, f64) -> Vec<(f64, f64)>,
    points: &[(f64, f64)],
    c_at: &dyn Fn(Point2) -> Matrix3<f64>,
) -> Result<DMatrix<f64>> {
    let mut k = DMatrix::zeros(2 * n_nodes, 2 * n_nodes);
    for &(xi, wx) in points {
        for &(eta, wy) in points {
            let j = elem.jacobian(xi, eta);
            let det = j.determinant();
            if det <= 0.0 {
                return Err(Error::NonPositiveJacobian { det });
            }
            let jinv = j.try_inverse().expect("positive determinant");
            let local = grads(xi, eta);
            let mut b = DMatrix::zeros(3, 2 * n_nodes);
            for (node, &(d_xi, d_eta)) in local.iter().enumerate() {
                // Physical gradient: [dN/dx, dN/dy] = J^{-T} [dN/dxi, dN/deta].
                let dx = jinv[(0, 0)] * d_xi + jinv[(1, 0)] * d_eta;
                let dy = jinv[(0, 1)] * d_xi + jinv[(1, 1)] * d_eta;
                b[(0, 2 * node)] = dx;
                b[(1, 2 * node + 1)] = dy;
                b[(2, 2 * node)] = dy;
                b[(2, 2 * node + 1)] = dx;
            }
            let c = c_at(elem.map_point(xi, eta));
            k += wx * wy * det * b.transpose() * c * b;
        }
    }
    Ok(k)
}

/// 8x8 Q1 stiffness with element-constant material, 2x2 Gauss.
pub fn q1_stiffness(elem: &QuadElement, c: &VoigtTensor3) -> Result<DMatrix<f64>> {
    let cm = *c.matrix();
    q1_stiffness_with(elem, &move |_| cm)
}

/// Q1 stiffness with a pointwise material (per-Gauss-point sensitivity mode).
pub fn q1_stiffness_with(elem: &QuadElement, c_at: &dyn Fn(Point2) -> Matrix3<f64>) -> Result<DMatrix<f64>> {
    stiffness_core(elem, 4, &|xi, eta| q1_grads(xi, eta).to_vec(), &gauss_2(), c_at)
}

/// 18x18 Q2 stiffness with element-constant material, 3x3 Gauss.
pub fn q2_stiffness(elem: &QuadElement, c: &VoigtTensor3) -> Result<DMatrix<f64>> {
    let cm = *c.matrix();
    q2_stiffness_with(elem, &move |_| cm)
}

/// Q2 stiffness with a pointwise material (per-Gauss-point sensitivity mode).
pub fn q2_stiffness_with(elem: &QuadElement, c_at: &dyn Fn(Point2) -> Matrix3<f64>) -> Result<DMatrix<f64>> {
    stiffness_core(elem, 9, &|xi, eta| q2_grads(xi, eta).to_vec(), &gauss_3(), c_at)
}

/// Consistent nodal loads for a traction on one straight edge of a Q2
/// element: 3-point Gauss against the quadratic edge traces, returned for
/// (end node a, mid node, end node b).
pub fn q2_edge_load(a: Point2, b: Point2, traction: &dyn Fn(Point2) -> Vector2) -> [Vector2; 3] {
    let mid = nalgebra::center(&a, &b);
    let half = (b - a).norm() * 0.5;
    let mut out = [Vector2::zeros(); 3];
    for &(t, w) in &gauss_3() {
        let p = Point2::from(mid.coords + t * (b - a) * 0.5);
        let tr = traction(p);
        let (na, _) = lag2(-1.0, t);
        let (nm, _) = lag2(0.0, t);
        let (nb, _) = lag2(1.0, t);
        out[0] += w * half * na * tr;
        out[1] += w * half * nm * tr;
        out[2] += w * half * nb * tr;
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::{build_stiffness, engineering_to_ti, EngineeringParams, FibreDirection};
    use nalgebra::DVector;

    fn unit_square() -> QuadElement {
        QuadElement::new([
            Point2::new(0.0, 0.0),
            Point2::new(1.0, 0.0),
            Point2::new(1.0, 1.0),
            Point2::new(0.0, 1.0),
        ])
    }

    fn skew_quad() -> QuadElement {
        QuadElement::new([
            Point2::new(0.0, 0.0),
            Point2::new(1.3, 0.2),
            Point2::new(1.1, 1.4),
            Point2::new(-0.2, 0.9),
        ])
    }

    fn isotropic_c() -> VoigtTensor3 {
        let consts = engineering_to_ti(&EngineeringParams { e_t: 1.0, nu: 0.3, p: 1.0 }).unwrap();
        build_stiffness(&consts, &FibreDirection::from_angle(0.0)).unwrap()
    }

    fn q1_dofs_of(elem: &QuadElement, f: impl Fn(Point2) -> Vector2) -> DVector<f64> {
        let mut d = Vec::new();
        for c in elem.corners {
            let u = f(c);
            d.push(u.x);
            d.push(u.y);
        }
        DVector::from_vec(d)
    }

    fn q2_dofs_of(elem: &QuadElement, f: impl Fn(Point2) -> Vector2) -> DVector<f64> {
        let mut d = Vec::new();
        for p in elem.q2_node_positions() {
            let u = f(p);
            d.push(u.x);
            d.push(u.y);
        }
        DVector::from_vec(d)
    }

    #[test]
    fn q1_linear_patch_energy_on_skewed_quads() {
        let c = isotropic_c();
        for elem in [unit_square(), skew_quad()] {
            let k = q1_stiffness(&elem, &c).unwrap();
            // u = (2x + y, x - 3y): eps = [2, -3, 2].
            let d = q1_dofs_of(&elem, |p| Vector2::new(2.0 * p.x + p.y, p.x - 3.0 * p.y));
            let eps = nalgebra::Vector3::new(2.0, -3.0, 2.0);
            let area = {
                let g = crate::mesh::polygon_geometry(&elem.corners.to_vec(), 0).unwrap();
                g.area
            };
            let exact = area * (eps.transpose() * c.matrix() * eps)[(0, 0)];
            let energy = (d.transpose() * &k * &d)[(0, 0)];
            assert!((energy - exact).abs() < 1e-9 * exact.abs());
            // Rigid modes free.
            let r = q1_dofs_of(&elem, |p| Vector2::new(0.3 - p.y, 0.1 + p.x));
            assert!((&k * r).norm() < 1e-10 * k.norm());
        }
    }

    #[test]
    fn q1_rank_and_stretch_energy() {
        let c = isotropic_c();
        let k = q1_stiffness(&skew_quad(), &c).unwrap();
        let eig = k.clone().symmetric_eigen();
        let rank = eig.eigenvalues.iter().filter(|&&e| e > 1e-10 * k.norm()).count();
        assert_eq!(rank, 5);
        // Unit square pure stretch energy = |E| C11.
        let ks = q1_stiffness(&unit_square(), &c).unwrap();
        let d = q1_dofs_of(&unit_square(), |p| Vector2::new(p.x, 0.0));
        assert!(((d.transpose() * &ks * &d)[(0, 0)] - c.entry(0, 0)).abs() < 1e-12);
    }

    #[test]
    fn q2_rank_and_constant_strain_agreement() {
        let c = isotropic_c();
        let k2 = q2_stiffness(&skew_quad(), &c).unwrap();
        let eig = k2.clone().symmetric_eigen();
        let rank = eig.eigenvalues.iter().filter(|&&e| e > 1e-10 * k2.norm()).count();
        assert_eq!(rank, 15);
        // Constant-strain field: Q2 energy equals Q1 energy (both exact).
        let f = |p: Point2| Vector2::new(0.7 * p.x, 0.7 * 0.25 * p.y);
        let e1 = {
            let k = q1_stiffness(&skew_quad(), &c).unwrap();
            let d = q1_dofs_of(&skew_quad(), f);
            (d.transpose() * &k * &d)[(0, 0)]
        };
        let d2 = q2_dofs_of(&skew_quad(), f);
        let e2 = (d2.transpose() * &k2 * &d2)[(0, 0)];
        assert!((e1 - e2).abs() < 1e-10 * e1.abs());
    }

    #[test]
    fn q2_quadratic_patch_energy_on_rectangle() {
        // Oracle: analytic strain energy of u = (x^2, x y) on [0,2]x[0,1].
        // eps = [2x, x, y]; with C constant the integrand is polynomial and
        // is integrated here in closed form.
        let c = isotropic_c();
        let elem = QuadElement::new([
            Point2::new(0.0, 0.0),
            Point2::new(2.0, 0.0),
            Point2::new(2.0, 1.0),
            Point2::new(0.0, 1.0),
        ]);
        let (c11, c12, c22, c33) = (c.entry(0, 0), c.entry(0, 1), c.entry(1, 1), c.entry(2, 2));
        // int over [0,2]x[0,1] of c11 4x^2 + 2 c12 2x*x + c22 x^2 + c33 y^2.
        let ix2 = 8.0 / 3.0; // int x^2 = 8/3 over x in [0,2], times 1 in y
        let iy2 = 2.0 / 3.0; // int y^2 = 1/3 over y in [0,1], times 2 in x
        let exact = (4.0 * c11 + 4.0 * c12 + c22) * ix2 + c33 * iy2;
        let k = q2_stiffness(&elem, &c).unwrap();
        let d = q2_dofs_of(&elem, |p| Vector2::new(p.x * p.x, p.x * p.y));
        let energy = (d.transpose() * &k * &d)[(0, 0)];
        assert!((energy - exact).abs() < 1e-9 * exact.abs());
    }

    #[test]
    fn inverted_element_is_rejected() {
        let c = isotropic_c();
        let mut corners = unit_square().corners;
        corners.swap(1, 3); // clockwise
        assert!(matches!(
            q1_stiffness(&QuadElement::new(corners), &c),
            Err(Error::NonPositiveJacobian { .. })
        ));
    }

    #[test]
    fn q2_edge_load_resultants() {
        // Linear traction on a straight edge: total force and moment exact.
        let a = Point2::new(0.0, -1.0);
        let b = Point2::new(0.0, 1.0);
        let loads = q2_edge_load(a, b, &|p| Vector2::new(30.0 * p.y, 0.0));
        let total: Vector2 = loads.iter().sum();
        assert!(total.norm() < 1e-12); // antisymmetric traction: zero net force
        // First moment about y = 0: int 30 y * y dy over [-1,1] = 20.
        let mid = nalgebra::center(&a, &b);
        let moment = loads[0].x * (a.y - mid.y) + loads[1].x * 0.0 + loads[2].x * (b.y - mid.y);
        assert!((moment - 20.0).abs() < 1e-12);
    }
}
