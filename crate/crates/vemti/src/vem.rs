//! Element-level virtual element kernels for arbitrary polygons.
//!
//! The displacement space is linear on each edge with vertex degrees of
//! freedom ordered `[u1x, u1y, u2x, u2y, ...]`. The strain projection onto
//! constants is computed from boundary integrals of the linear edge traces,
//! so no interior basis evaluation is ever needed. The element stiffness is
//!
//! ```text
//! K = |E| P' C P  +  mu [ I - Dm (Dm' Dm)^{-1} Dm' ]
//! ```
//!
//! with `P` the projection, `C` the plane-strain Voigt stiffness of the
//! element, and `Dm` the scaled monomial matrix whose column space holds the
//! nodal values of all linear vector polynomials. The stabilization uses
//! scaled coordinates, so no area factor appears.

use nalgebra::DMatrix;

use crate::constitutive::VoigtTensor3;
use crate::mesh::ElementGeometry;
use crate::{Error, Point2, Result};

/// 3 x 2N map from vertex dofs to the projected Voigt strain
/// `[e_xx, e_yy, 2 e_xy]`.
#[derive(Debug, Clone)]
pub struct ProjectionMatrix {
    p: DMatrix<f64>,
}

impl ProjectionMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.p
    }

    /// Projected strain of a dof vector.
    pub fn apply(&self, dofs: &[f64]) -> nalgebra::Vector3<f64> {
        let d = nalgebra::DVector::from_column_slice(dofs);
        let s = &self.p * d;
        nalgebra::Vector3::new(s[0], s[1], s[2])
    }
}

/// 2N x 6 matrix relating nodal dofs of a linear vector polynomial to its
/// coefficients in the scaled monomial basis {1, xi, eta} per component.
#[derive(Debug, Clone)]
pub struct MonomialMatrix {
    d: DMatrix<f64>,
}

impl MonomialMatrix {
    pub fn matrix(&self) -> &DMatrix<f64> {
        &self.d
    }
}

/// Symmetric positive semi-definite element stiffness with the three rigid
/// modes as kernel.
#[derive(Debug, Clone)]
pub struct ElementStiffness {
    pub k: DMatrix<f64>,
}

/// Builds the constant-strain projection from edge normals and lengths.
/// Exact for the strain of any linear displacement field: each edge
/// contributes `|e|/2` times its normal to both endpoint dofs.
pub fn projection(geom: &ElementGeometry) -> ProjectionMatrix {
    let n = geom.normals.len();
    let mut p = DMatrix::zeros(3, 2 * n);
    for e in 0..n {
        let w = 0.5 * geom.edge_lengths[e];
        let nrm = geom.normals[e];
        for v in [e, (e + 1) % n] {
            p[(0, 2 * v)] += w * nrm.x;
            p[(1, 2 * v + 1)] += w * nrm.y;
            p[(2, 2 * v)] += w * nrm.y;
            p[(2, 2 * v + 1)] += w * nrm.x;
        }
    }
    p /= geom.area;
    ProjectionMatrix { p }
}

/// Scaled monomial matrix: node i contributes rows
/// `[1, xi_i, eta_i]` (x block) and `[1, xi_i, eta_i]` (y block) with
/// `xi = (x - x_c)/d_E`, `eta = (y - y_c)/d_E`.
pub fn monomial_matrix(geom: &ElementGeometry, vertices: &[Point2]) -> MonomialMatrix {
    let n = vertices.len();
    let mut d = DMatrix::zeros(2 * n, 6);
    for (i, v) in vertices.iter().enumerate() {
        let xi = (v.x - geom.centroid.x) / geom.diameter;
        let eta = (v.y - geom.centroid.y) / geom.diameter;
        d[(2 * i, 0)] = 1.0;
        d[(2 * i, 1)] = xi;
        d[(2 * i, 2)] = eta;
        d[(2 * i + 1, 3)] = 1.0;
        d[(2 * i + 1, 4)] = xi;
        d[(2 * i + 1, 5)] = eta;
    }
    MonomialMatrix { d }
}

/// Consistency stiffness `K_con = |E| P' C P`; rank 3 with the projected
/// constant-strain energy reproduced exactly.
pub fn consistency_stiffness(
    p: &ProjectionMatrix,
    c: &VoigtTensor3,
    geom: &ElementGeometry,
) -> DMatrix<f64> {
    let cp = c.matrix() * &p.p;
    geom.area * p.p.transpose() * cp
}

/// Stabilization `K_stab = mu [I - Dm (Dm' Dm)^{-1} Dm']`, evaluated through
/// an orthonormal basis of col(Dm) so near-degenerate polygons are caught by
/// a conditioning guard instead of blowing up the normal equations.
pub fn stabilization_stiffness(dm: &MonomialMatrix, mu: f64) -> Result<DMatrix<f64>> {
    let two_n = dm.d.nrows();
    let svd = dm.d.clone().svd(true, false);
    let smax = svd.singular_values.max();
    let smin = svd.singular_values.min();
    if !(smin > 1e-12 * smax) {
        return Err(Error::RankDeficientMonomials { ratio: smin / smax });
    }
    let u = svd.u.as_ref().expect("svd requested u");
    let mut k = DMatrix::identity(two_n, two_n);
    k -= u * u.transpose();
    Ok(mu * k)
}

/// Complete element stiffness `K = K_con + K_stab` for the polygon with the
/// given geometry and (element-constant) material.
pub fn element_stiffness(
    geom: &ElementGeometry,
    vertices: &[Point2],
    c: &VoigtTensor3,
    mu: f64,
) -> Result<ElementStiffness> {
    let p = projection(geom);
    let dm = monomial_matrix(geom, vertices);
    let mut k = consistency_stiffness(&p, c, geom);
    k += stabilization_stiffness(&dm, mu)?;
    Ok(ElementStiffness { k })
}
