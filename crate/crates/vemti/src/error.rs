use thiserror::Error;

/// Crate-wide error type. Variants are named after the contract they guard.
#[derive(Debug, Error)]
pub enum Error {
    /// A configuration field failed validation. `field` names the offending
    /// flag or struct member so CLI diagnostics can point at it.
    #[error("invalid value for `{field}`: {message}")]
    InvalidConfig { field: String, message: String },

    /// Conversion denominator D = (1+nu)(p(1-nu) - 2 nu^2) vanished; this is
    /// the unbounded isotropic-incompressible corner (nu -> 1/2 with p = 1).
    #[error("degenerate denominator in engineering-to-modulus conversion (nu -> 1/2 with p = 1)")]
    DegenerateDenominator,

    /// A fibre direction drifted away from unit length.
    #[error("fibre direction is not a unit vector (|a| = {norm})")]
    NonUnitDirection { norm: f64 },

    /// Plane-strain stiffness too ill-conditioned to invert.
    #[error("plane-strain stiffness is numerically singular (cond = {cond:.3e})")]
    SingularStiffness { cond: f64 },

    /// Polygon with |area| below the geometric floor.
    #[error("cell {cell} has near-zero area {area:.3e}")]
    ZeroArea { cell: usize, area: f64 },

    /// Voronoi clipping produced a cell below the area floor; retry with a
    /// different seed.
    #[error("voronoi cell {cell} degenerated (area {area:.3e}); regenerate with a different seed")]
    DegenerateCell { cell: usize, area: f64 },

    /// Domain mapping flipped a cell's orientation.
    #[error("domain mapping inverted cell {cell}")]
    InvertedCell { cell: usize },

    /// Scaled monomial matrix lost full column rank (degenerate polygon).
    #[error("monomial matrix is rank deficient (sigma_min/sigma_max = {ratio:.3e})")]
    RankDeficientMonomials { ratio: f64 },

    /// Quadrilateral with a non-positive Jacobian at a quadrature point.
    #[error("non-positive Jacobian ({det:.3e}) in quadrilateral element")]
    NonPositiveJacobian { det: f64 },

    /// Element kind cannot discretize the given mesh (Q1/Q2 need all quads).
    #[error("element kind `{kind}` is incompatible with this mesh: {reason}")]
    IncompatibleElementKind { kind: String, reason: String },

    /// No Dirichlet constraints: rigid modes not removed.
    #[error("system has no Dirichlet constraints; rigid-body modes are unconstrained")]
    UnconstrainedSystem,

    /// The reduced system was not positive definite; upstream modeling error.
    #[error("solver breakdown: {detail}")]
    SolverBreakdown { detail: String },

    /// Mesh file violated the `polymesh 1` format.
    #[error("mesh file parse error at line {line}: {message}")]
    MeshParse { line: usize, message: String },

    /// Mesh failed a structural invariant (watertightness, orientation, ...).
    #[error("invalid mesh: {0}")]
    MeshInvalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
