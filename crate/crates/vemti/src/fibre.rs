//! Analytic fibre-direction fields and element-level averaging.
//!
//! Non-constant fields are families of curves `y = c + f(x)`; the fibre
//! direction at a point is the unit tangent `(1, f'(x))`. Element-level
//! approximation picks the centroidal value, the average of nodal values, or
//! a weighted blend of the two with the centroidal weight
//!
//! ```text
//! w_c = (pi/2 + arctan(d_crit - d)) / (2 pi)
//! ```
//!
//! decaying from ~1/2 on coarse meshes to ~0 past the critical density.

use crate::constitutive::FibreDirection;
use crate::{Point2, Vector2};

/// Default critical mesh density for the varying weight.
pub const DEFAULT_D_CRIT: f64 = 10.0;

/// Which benchmark's quartic curve family is in play.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuarticFamily {
    /// Curves `y = c + (x - 24)^2 (x - 12)(x - 36)`.
    Cook,
    /// Curves `y = c + (x - 5)^2 (x - 2.5)(x - 7.5)`.
    Beam,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FibreKind {
    /// Uniform direction at the given angle from the x-axis [rad].
    Constant(f64),
    /// Mildly varying quartic curve family.
    Quartic(QuarticFamily),
    /// Rapidly varying curves `y = c + 2 sin x`.
    Sinusoidal,
}

/// Fibre-direction distribution plus the critical density of the varying
/// weight.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FibreField {
    pub kind: FibreKind,
    pub d_crit: f64,
}

impl FibreField {
    pub fn new(kind: FibreKind) -> Self {
        Self { kind, d_crit: DEFAULT_D_CRIT }
    }

    pub fn with_d_crit(kind: FibreKind, d_crit: f64) -> Self {
        Self { kind, d_crit }
    }
}

/// Element-level approximation of a non-constant field.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AveragingStrategy {
    /// Direction at the element centroid.
    Centroid,
    /// Normalized average of the nodal directions.
    NodalAverage,
    /// Blend with the weight pinned to 1/2.
    EqualWeight,
    /// Blend with the density-dependent weight `w_c`.
    VaryingWeight,
}

impl AveragingStrategy {
    pub fn as_str(&self) -> &'static str {
        match self {
            AveragingStrategy::Centroid => "centroid",
            AveragingStrategy::NodalAverage => "nodal",
            AveragingStrategy::EqualWeight => "equal",
            AveragingStrategy::VaryingWeight => "varying",
        }
    }
}

/// Pointwise fibre direction.
pub fn direction_at(field: &FibreField, point: Point2) -> FibreDirection {
    match field.kind {
        FibreKind::Constant(angle) => FibreDirection::from_angle(angle),
        FibreKind::Quartic(family) => unit_tangent(quartic_slope(family, point.x)),
        FibreKind::Sinusoidal => unit_tangent(2.0 * point.x.cos()),
    }
}

fn quartic_slope(family: QuarticFamily, x: f64) -> f64 {
    // d/dx [(x - r)^2 (x - s)(x - t)] by the product rule.
    let (r, s, t) = match family {
        QuarticFamily::Cook => (24.0, 12.0, 36.0),
        QuarticFamily::Beam => (5.0, 2.5, 7.5),
    };
    2.0 * (x - r) * (x - s) * (x - t) + (x - r) * (x - r) * ((x - t) + (x - s))
}

fn unit_tangent(slope: f64) -> FibreDirection {
    // (1, f') always normalizable.
    FibreDirection::from_vector(Vector2::new(1.0, slope)).expect("tangent with unit x-component")
}

/// Centroidal weight `w_c = (pi/2 + arctan(d_crit - d)) / (2 pi)`; strictly
/// decreasing in `d` with range (0, 1/2).
pub fn weight(d: f64, d_crit: f64) -> f64 {
    (std::f64::consts::FRAC_PI_2 + (d_crit - d).atan()) / (2.0 * std::f64::consts::PI)
}

/// Outcome of an element-level averaging; `fallback` flags near-antipodal
/// cancellation handled by reverting to the centroidal direction.
#[derive(Debug, Clone, Copy)]
pub struct ElementDirection {
    pub dir: FibreDirection,
    pub fallback: bool,
}

/// Weighted average of the centroid direction and the nodal directions.
///
/// Directions are lines, not arrows (`a` and `-a` are the same fibre), so
/// each nodal vector is first sign-aligned to the centroid direction; the
/// weighted sum is then normalized. A sum below 1e-8 signals cancellation
/// and falls back to the centroidal value.
pub fn average_directions(
    centroid_dir: FibreDirection,
    nodal_dirs: &[FibreDirection],
    w_c: f64,
) -> ElementDirection {
    let c = centroid_dir.vector();
    let mut nodal_sum = Vector2::zeros();
    for nd in nodal_dirs {
        let v = nd.vector();
        nodal_sum += if v.dot(&c) < 0.0 { -v } else { v };
    }
    let combined = w_c * c + (1.0 - w_c) * nodal_sum / nodal_dirs.len() as f64;
    match FibreDirection::from_vector(combined) {
        Ok(dir) if combined.norm() >= 1e-8 => ElementDirection { dir, fallback: false },
        _ => ElementDirection { dir: centroid_dir, fallback: true },
    }
}

/// Element-level fibre direction for the given strategy. `density` is the
/// mesh density entering the varying weight.
pub fn element_direction(
    field: &FibreField,
    strategy: AveragingStrategy,
    centroid: Point2,
    vertices: &[Point2],
    density: u32,
) -> ElementDirection {
    let centroid_dir = direction_at(field, centroid);
    if let FibreKind::Constant(_) = field.kind {
        return ElementDirection { dir: centroid_dir, fallback: false };
    }
    let w_c = match strategy {
        AveragingStrategy::Centroid => {
            return ElementDirection { dir: centroid_dir, fallback: false };
        }
        AveragingStrategy::NodalAverage => 0.0,
        AveragingStrategy::EqualWeight => 0.5,
        AveragingStrategy::VaryingWeight => weight(density as f64, field.d_crit),
    };
    let nodal: Vec<FibreDirection> = vertices.iter().map(|&v| direction_at(field, v)).collect();
    average_directions(centroid_dir, &nodal, w_c)
}
