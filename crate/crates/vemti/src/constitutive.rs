//! Transversely isotropic constitutive law in plane strain.
//!
//! A material is specified either by engineering constants `(E_T, nu, p)`
//! with `p = E_L / E_T`, or by the modulus set `(lambda, alpha, beta, mu_T,
//! mu_L)` entering the stress law
//!
//! ```text
//! sigma = lambda tr(eps) I + 2 mu_T eps + beta (M:eps) M
//!       + alpha ((M:eps) I + tr(eps) M) + 2 (mu_L - mu_T)(eps M + M eps)
//! ```
//!
//! with `M = a (x) a` built from the unit fibre direction `a`. Throughout the
//! crate `nu_T = nu_L = nu` and `mu_L = mu_T`, and Voigt order is
//! `[e_xx, e_yy, 2 e_xy]` (engineering shear), so element energies are plain
//! congruence products without factor-of-two bookkeeping.

use nalgebra::{Matrix3, Matrix6, Vector3};

use crate::{Error, Result, Vector2};

/// Engineering description of the material: transverse Young's modulus,
/// common Poisson ratio and anisotropy ratio `p = E_L / E_T`.
///
/// Fields are public so that deliberately invalid values can be probed (for
/// example by [`pointwise_stability`]); use [`EngineeringParams::new`] when
/// validity should be enforced.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EngineeringParams {
    /// Transverse Young's modulus [Pa].
    pub e_t: f64,
    /// Poisson's ratio (`nu_T = nu_L = nu`).
    pub nu: f64,
    /// Anisotropy ratio `E_L / E_T`; `p = 1` is isotropy.
    pub p: f64,
}

impl EngineeringParams {
    /// Validated constructor: `E_T > 0`, `0 <= nu < 1/2`, `p >= 1`.
    pub fn new(e_t: f64, nu: f64, p: f64) -> Result<Self> {
        if !(e_t > 0.0) || !e_t.is_finite() {
            return Err(invalid("E_T", format!("must be positive and finite, got {e_t}")));
        }
        if !(0.0..0.5).contains(&nu) {
            return Err(invalid("nu", format!("must satisfy 0 <= nu < 0.5, got {nu}")));
        }
        if !(p >= 1.0) || !p.is_finite() {
            return Err(invalid("p", format!("must satisfy p >= 1, got {p}")));
        }
        Ok(Self { e_t, nu, p })
    }
}

fn invalid(field: &str, message: String) -> Error {
    Error::InvalidConfig { field: field.into(), message }
}

/// Modulus set of the transversely isotropic law. `mu_l == mu_t` throughout.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TIConstants {
    /// Lame-type modulus [Pa].
    pub lambda: f64,
    /// Coupling modulus [Pa]; vanishes at `p = 1`.
    pub alpha: f64,
    /// Fibre-stiffening modulus [Pa]; vanishes at `p = 1`, unbounded in `p`.
    pub beta: f64,
    /// Transverse shear modulus [Pa].
    pub mu_t: f64,
    /// Longitudinal shear modulus [Pa].
    pub mu_l: f64,
}

/// Unit in-plane fibre direction. `a` and `-a` are equivalent: the law only
/// sees the structural tensor `M = a (x) a`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FibreDirection(Vector2);

impl FibreDirection {
    /// Direction at angle `angle` (radians) from the x-axis.
    pub fn from_angle(angle: f64) -> Self {
        Self(Vector2::new(angle.cos(), angle.sin()))
    }

    /// Normalizes `v`; errors if it is too short to normalize reliably.
    pub fn from_vector(v: Vector2) -> Result<Self> {
        let norm = v.norm();
        if norm < 1e-12 || !norm.is_finite() {
            return Err(Error::NonUnitDirection { norm });
        }
        Ok(Self(v / norm))
    }

    pub fn vector(&self) -> Vector2 {
        self.0
    }

    /// Angle from the x-axis in `(-pi, pi]`.
    pub fn angle(&self) -> f64 {
        self.0.y.atan2(self.0.x)
    }

    /// Voigt form of `M = a (x) a` paired with engineering strain:
    /// `M : eps = m . [e_xx, e_yy, 2 e_xy]`.
    pub fn structural_voigt(&self) -> Vector3<f64> {
        let (a1, a2) = (self.0.x, self.0.y);
        Vector3::new(a1 * a1, a2 * a2, a1 * a2)
    }
}

/// Symmetric 3x3 plane-strain stiffness acting on `[e_xx, e_yy, 2 e_xy]`.
#[derive(Debug, Clone, PartialEq)]
pub struct VoigtTensor3 {
    c: Matrix3<f64>,
}

impl VoigtTensor3 {
    pub fn matrix(&self) -> &Matrix3<f64> {
        &self.c
    }

    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.c[(i, j)]
    }

    /// Plane-strain isotropic stiffness from Lame constants.
    pub fn isotropic(lambda: f64, mu: f64) -> Self {
        let mut c = Matrix3::zeros();
        c[(0, 0)] = lambda + 2.0 * mu;
        c[(1, 1)] = lambda + 2.0 * mu;
        c[(0, 1)] = lambda;
        c[(1, 0)] = lambda;
        c[(2, 2)] = mu;
        Self { c }
    }
}

/// 6x6 compliance in the ordering `[e11, e22, e33, 2 e23, 2 e13, 2 e12]`
/// against `[s11, s22, s33, s23, s13, s12]`, fibre along `e3`.
#[derive(Debug, Clone, PartialEq)]
pub struct Compliance6 {
    s: Matrix6<f64>,
}

impl Compliance6 {
    pub fn matrix(&self) -> &Matrix6<f64> {
        &self.s
    }

    /// 1-based entry accessor matching the usual compliance subscripts.
    pub fn entry(&self, i: usize, j: usize) -> f64 {
        self.s[(i - 1, j - 1)]
    }
}

/// Converts engineering constants to the modulus set:
///
/// ```text
/// lambda = E_T nu (nu + p) / D          D = (1 + nu)(p (1 - nu) - 2 nu^2)
/// alpha  = E_T nu^2 (p - 1) / D
/// beta   = E_T (p^2 (1 - nu^2) - p (1 + 2 nu^2) + 3 nu^2) / D
/// mu_T   = E_T / (2 (1 + nu)),  mu_L = mu_T
/// ```
pub fn engineering_to_ti(params: &EngineeringParams) -> Result<TIConstants> {
    let EngineeringParams { e_t, nu, p } = *params;
    EngineeringParams::new(e_t, nu, p)?;
    let d = (1.0 + nu) * (p * (1.0 - nu) - 2.0 * nu * nu);
    // D is dimensionless; p is the only factor that can inflate it.
    if d.abs() < 1e-14 * (1.0 + p.abs()) {
        return Err(Error::DegenerateDenominator);
    }
    let lambda = e_t * nu * (nu + p) / d;
    let alpha = e_t * nu * nu * (p - 1.0) / d;
    let beta = e_t * (p * p * (1.0 - nu * nu) - p * (1.0 + 2.0 * nu * nu) + 3.0 * nu * nu) / d;
    let mu_t = e_t / (2.0 * (1.0 + nu));
    Ok(TIConstants { lambda, alpha, beta, mu_t, mu_l: mu_t })
}

/// Pointwise stability check: `lambda + (2/3) mu > 0`, `mu > 0`, `p >= 1`.
/// Total over arbitrary parameter values; anything unconvertible is unstable.
pub fn pointwise_stability(params: &EngineeringParams) -> bool {
    if params.p < 1.0 {
        return false;
    }
    match engineering_to_ti(params) {
        Ok(c) => c.mu_t > 0.0 && c.lambda + 2.0 / 3.0 * c.mu_t > 0.0,
        Err(_) => false,
    }
}

/// Assembles the plane-strain Voigt stiffness for fibre direction `a`.
///
/// With `m` the Voigt form of `M` and `t = [1, 1, 0]`:
///
/// ```text
/// C = lambda t t' + 2 mu_T diag(1, 1, 1/2) + beta m m'
///   + alpha (m t' + t m') + (mu_L - mu_T) G
/// ```
///
/// where `G` carries the `2 (eps M + M eps)` term (zero here since
/// `mu_L = mu_T`, retained for completeness).
pub fn build_stiffness(consts: &TIConstants, dir: &FibreDirection) -> Result<VoigtTensor3> {
    let norm = dir.vector().norm();
    if (norm - 1.0).abs() > 1e-9 {
        return Err(Error::NonUnitDirection { norm });
    }
    let m = dir.structural_voigt();
    let t = Vector3::new(1.0, 1.0, 0.0);
    let mut c = consts.lambda * t * t.transpose();
    c += 2.0 * consts.mu_t * Matrix3::from_diagonal(&Vector3::new(1.0, 1.0, 0.5));
    c += consts.beta * m * m.transpose();
    c += consts.alpha * (m * t.transpose() + t * m.transpose());
    let dm = consts.mu_l - consts.mu_t;
    if dm != 0.0 {
        let (a1, a2) = (dir.vector().x, dir.vector().y);
        let g = Matrix3::new(
            4.0 * a1 * a1, 0.0, 2.0 * a1 * a2,
            0.0, 4.0 * a2 * a2, 2.0 * a1 * a2,
            2.0 * a1 * a2, 2.0 * a1 * a2, a1 * a1 + a2 * a2,
        );
        c += dm * g;
    }
    Ok(VoigtTensor3 { c })
}

/// The 6x6 engineering compliance with fibre along `e3`, i.e. the matrix
/// relating `[e11, e22, e33, 2 e23, 2 e13, 2 e12]` to the stress components
/// `[s11, s22, s33, s23, s13, s12]`.
pub fn engineering_compliance(params: &EngineeringParams) -> Result<Compliance6> {
    let EngineeringParams { e_t, nu, p } = *params;
    EngineeringParams::new(e_t, nu, p)?;
    let e_l = p * e_t;
    let mu = e_t / (2.0 * (1.0 + nu));
    let mut s = Matrix6::zeros();
    s[(0, 0)] = 1.0 / e_t;
    s[(1, 1)] = 1.0 / e_t;
    s[(0, 1)] = -nu / e_t;
    s[(1, 0)] = -nu / e_t;
    s[(0, 2)] = -nu / e_l;
    s[(2, 0)] = -nu / e_l;
    s[(1, 2)] = -nu / e_l;
    s[(2, 1)] = -nu / e_l;
    s[(2, 2)] = 1.0 / e_l;
    s[(3, 3)] = 1.0 / mu; // mu_L
    s[(4, 4)] = 1.0 / mu; // mu_L
    s[(5, 5)] = 1.0 / mu; // mu_T
    Ok(Compliance6 { s })
}

/// Numerical inverse of the plane-strain stiffness. Column 1 supplies the
/// `S_11, S_21, S_31` coefficients of the analytical beam solution.
pub fn reduced_compliance(consts: &TIConstants, dir: &FibreDirection) -> Result<Matrix3<f64>> {
    let c = build_stiffness(consts, dir)?;
    let eig = c.matrix().symmetric_eigenvalues();
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for i in 0..3 {
        lo = lo.min(eig[i].abs());
        hi = hi.max(eig[i].abs());
    }
    if lo == 0.0 || hi / lo > 1e14 {
        return Err(Error::SingularStiffness { cond: if lo == 0.0 { f64::INFINITY } else { hi / lo } });
    }
    c.matrix()
        .try_inverse()
        .ok_or(Error::SingularStiffness { cond: hi / lo })
}
