//! Benchmark problems and sweep drivers.
//!
//! Two plane-strain problems exercise locking and convergence behaviour:
//!
//! * **Cook membrane** — tapered panel, left edge fixed, uniform vertical
//!   traction totalling P = 100 N on the right edge, E_T = 250 Pa; vertical
//!   displacement probed at C = (48, 52).
//! * **Bending beam** — rectangle [0,10] x [-1,1], E_T = 1500 Pa, linearly
//!   varying axial traction `t_x = (2 F_max / h) y` with F_max = 30 N;
//!   probed at C = (10, 0). Variant A is the pure-bending problem: the
//!   traction acts on both ends and the two left corners are pinned to
//!   remove rigid modes (the pins carry no force in the limit, where the
//!   closed-form solution vanishes at exactly those points). Variant B
//!   instead constrains the whole left edge horizontally and pins the bottom
//!   corner (used for the non-homogeneous studies).
//!
//! The beam has the closed-form tip solution implemented in
//! [`analytical_beam_displacement`], with compliance coefficients taken from
//! the numerically inverted plane-strain stiffness.

use std::collections::HashMap;
use std::sync::Arc;
use std::time::Instant;

use crate::assembly::{
    assemble, solve, BvpSpec, Components, DirichletBc, ElementKind, FibreConfig, NeumannBc,
    ProbeRecord, SolverKind,
};
use crate::constitutive::{EngineeringParams, FibreDirection, TIConstants};
use crate::fibre::{AveragingStrategy, FibreField, FibreKind, QuarticFamily};
use crate::mesh::{gen_hex, gen_quad, gen_voronoi, map_to_domain, BoundaryTag, DomainSpec, PolyMesh};
use crate::{Point2, Result, Vector2};

/// Lloyd sweeps applied to benchmark Voronoi meshes.
pub const BENCH_LLOYD_ITERS: u32 = 10;

/// Cook membrane constants.
pub mod cook {
    use crate::Point2;
    pub const TOTAL_LOAD: f64 = 100.0;
    pub const E_T: f64 = 250.0;
    /// Loaded (right) edge length of the mapped trapezoid.
    pub const RIGHT_EDGE_LEN: f64 = 16.0;
    pub fn probe_point() -> Point2 {
        Point2::new(48.0, 52.0)
    }
}

/// Bending-beam constants.
pub mod beam {
    use crate::Point2;
    pub const F_MAX: f64 = 30.0;
    pub const E_T: f64 = 1500.0;
    pub const WIDTH: f64 = 10.0;
    pub const HEIGHT: f64 = 2.0;
    pub fn probe_point() -> Point2 {
        Point2::new(10.0, 0.0)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Problem {
    Cook,
    BeamA,
    BeamB,
}

impl Problem {
    pub fn as_str(&self) -> &'static str {
        match self {
            Problem::Cook => "cook",
            Problem::BeamA => "beam-a",
            Problem::BeamB => "beam-b",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "cook" => Some(Problem::Cook),
            "beam-a" => Some(Problem::BeamA),
            "beam-b" => Some(Problem::BeamB),
            _ => None,
        }
    }

    pub fn domain(&self) -> DomainSpec {
        match self {
            Problem::Cook => DomainSpec::Cook,
            Problem::BeamA | Problem::BeamB => DomainSpec::Beam,
        }
    }

    pub fn default_e_t(&self) -> f64 {
        match self {
            Problem::Cook => cook::E_T,
            Problem::BeamA | Problem::BeamB => beam::E_T,
        }
    }

    pub fn probe_point(&self) -> Point2 {
        match self {
            Problem::Cook => cook::probe_point(),
            Problem::BeamA | Problem::BeamB => beam::probe_point(),
        }
    }

    /// Quartic curve family matching this problem's domain.
    pub fn quartic_family(&self) -> QuarticFamily {
        match self {
            Problem::Cook => QuarticFamily::Cook,
            Problem::BeamA | Problem::BeamB => QuarticFamily::Beam,
        }
    }
}

/// One fully specified benchmark run.
#[derive(Debug, Clone, Copy)]
pub struct CaseConfig {
    pub problem: Problem,
    pub element: ElementKind,
    pub density: u32,
    pub material: EngineeringParams,
    pub fibre_kind: FibreKind,
    pub strategy: AveragingStrategy,
    pub d_crit: f64,
    pub seed: u64,
    pub solver: SolverKind,
}

/// Probe outcome plus solve diagnostics.
#[derive(Debug, Clone, Copy)]
pub struct RunResult {
    pub probe: ProbeRecord,
    pub residual: f64,
    pub wall_ms: f64,
    pub fibre_fallbacks: usize,
}

/// Mesh family a discretization runs on (Q1/Q2 share the quad family).
fn mesh_family(kind: ElementKind) -> ElementKind {
    match kind {
        ElementKind::Q1 | ElementKind::Q2 => ElementKind::Quad,
        k => k,
    }
}

/// Unit-square mesh of the right family, mapped onto the problem domain.
pub fn build_mesh(problem: Problem, element: ElementKind, density: u32, seed: u64) -> Result<PolyMesh> {
    let unit = match mesh_family(element) {
        ElementKind::Quad => gen_quad(density)?,
        ElementKind::Hex => gen_hex(density)?,
        ElementKind::Voronoi => gen_voronoi(density, seed, BENCH_LLOYD_ITERS)?,
        _ => unreachable!(),
    };
    map_to_domain(&unit, problem.domain())
}

/// Boundary value problem for a benchmark on an already mapped mesh.
pub fn bvp(
    problem: Problem,
    mesh: PolyMesh,
    material: EngineeringParams,
    fibre: FibreConfig,
    density: u32,
) -> BvpSpec {
    let (dirichlet, neumann) = match problem {
        Problem::Cook => (
            vec![DirichletBc::fixed(BoundaryTag::Left)],
            vec![NeumannBc {
                tag: BoundaryTag::Right,
                traction: Arc::new(|_| Vector2::new(0.0, cook::TOTAL_LOAD / cook::RIGHT_EDGE_LEN)),
            }],
        ),
        Problem::BeamA => (
            vec![
                DirichletBc::pin(Point2::new(0.0, -beam::HEIGHT / 2.0)),
                DirichletBc::pin(Point2::new(0.0, beam::HEIGHT / 2.0)),
            ],
            // Pure bending: the moment enters through both end tractions.
            // Carrying it through the corner pins instead would concentrate
            // finite forces at points and the tip displacement would diverge
            // logarithmically under refinement.
            vec![
                beam_traction(),
                NeumannBc {
                    tag: BoundaryTag::Left,
                    traction: Arc::new(|p: Point2| {
                        Vector2::new(-2.0 * beam::F_MAX / beam::HEIGHT * p.y, 0.0)
                    }),
                },
            ],
        ),
        Problem::BeamB => (
            vec![
                DirichletBc::roller(BoundaryTag::Left, Components::XOnly),
                DirichletBc::pin(Point2::new(0.0, -beam::HEIGHT / 2.0)),
            ],
            vec![beam_traction()],
        ),
    };
    BvpSpec { mesh, material, fibre, density, dirichlet, neumann, body_force: None }
}

fn beam_traction() -> NeumannBc {
    NeumannBc {
        tag: BoundaryTag::Right,
        traction: Arc::new(|p: Point2| {
            Vector2::new(2.0 * beam::F_MAX / beam::HEIGHT * p.y, 0.0)
        }),
    }
}

/// Fibre configuration of a case (quartic curves pick the problem's family).
pub fn fibre_config(cfg: &CaseConfig) -> FibreConfig {
    FibreConfig {
        field: FibreField::with_d_crit(cfg.fibre_kind, cfg.d_crit),
        strategy: cfg.strategy,
        per_gauss_point: false,
    }
}

/// Full pipeline: mesh, map, assemble, solve, probe.
pub fn run_case(cfg: &CaseConfig) -> Result<RunResult> {
    let mesh = build_mesh(cfg.problem, cfg.element, cfg.density, cfg.seed)?;
    run_case_on_mesh(cfg, &mesh)
}

/// Same, reusing a prebuilt (already mapped) mesh; the sweep driver shares
/// meshes across rows this way.
pub fn run_case_on_mesh(cfg: &CaseConfig, mesh: &PolyMesh) -> Result<RunResult> {
    let start = Instant::now();
    let spec = bvp(cfg.problem, mesh.clone(), cfg.material, fibre_config(cfg), cfg.density);
    let state = solve(assemble(&spec, cfg.element)?, cfg.solver)?;
    let probe = state.probe(cfg.problem.probe_point());
    Ok(RunResult {
        probe,
        residual: state.residual.unwrap_or(f64::NAN),
        wall_ms: start.elapsed().as_secs_f64() * 1e3,
        fibre_fallbacks: state.fibre_fallbacks,
    })
}

/// Closed-form beam displacement at (x, y):
///
/// ```text
/// u = (2 F_max / h) [ S11 x y + (S31 / 2)(y^2 - h^2/4) ]
/// v = (F_max / h)   [ S21 (y^2 - h^2/4) - S11 x^2 ]
/// ```
///
/// with `S_i1` the first column of the inverted plane-strain stiffness.
pub fn analytical_beam_displacement(
    x: f64,
    y: f64,
    consts: &TIConstants,
    dir: &FibreDirection,
    f_max: f64,
    h: f64,
) -> Result<(f64, f64)> {
    let s = crate::constitutive::reduced_compliance(consts, dir)?;
    let (s11, s21, s31) = (s[(0, 0)], s[(1, 0)], s[(2, 0)]);
    let m = y * y - h * h / 4.0;
    let u = 2.0 * f_max / h * (s11 * x * y + 0.5 * s31 * m);
    let v = f_max / h * (s21 * m - s11 * x * x);
    Ok((u, v))
}

/// Analytical tip displacement of the beam for a case's material and
/// (constant) fibre angle.
pub fn analytical_beam_tip(material: &EngineeringParams, angle: f64) -> Result<(f64, f64)> {
    let consts = crate::constitutive::engineering_to_ti(material)?;
    let c = beam::probe_point();
    analytical_beam_displacement(c.x, c.y, &consts, &FibreDirection::from_angle(angle), beam::F_MAX, beam::HEIGHT)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SweepAxis {
    Density,
    AnisotropyP,
    Angle,
}

impl SweepAxis {
    pub fn as_str(&self) -> &'static str {
        match self {
            SweepAxis::Density => "density",
            SweepAxis::AnisotropyP => "p",
            SweepAxis::Angle => "angle",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "density" => Some(SweepAxis::Density),
            "p" => Some(SweepAxis::AnisotropyP),
            "angle" => Some(SweepAxis::Angle),
            _ => None,
        }
    }
}

/// One sweep row: parameter value, element kind, and the run outcome (kept
/// as a message on failure so sweeps continue past bad rows).
pub struct SweepRow {
    pub value: f64,
    pub config: CaseConfig,
    pub outcome: std::result::Result<RunResult, String>,
}

/// Applies an axis value to a base configuration.
pub fn apply_axis(base: &CaseConfig, axis: SweepAxis, value: f64) -> CaseConfig {
    let mut cfg = *base;
    match axis {
        SweepAxis::Density => cfg.density = value.round() as u32,
        SweepAxis::AnisotropyP => cfg.material.p = value,
        SweepAxis::Angle => cfg.fibre_kind = FibreKind::Constant(value),
    }
    cfg
}

/// Runs `values x kinds` cases, value-major, optionally in parallel. Meshes
/// are built once per (family, density) and shared across rows; row order is
/// deterministic regardless of `jobs`.
pub fn sweep(base: &CaseConfig, axis: SweepAxis, values: &[f64], kinds: &[ElementKind], jobs: usize) -> Vec<SweepRow> {
    // Pre-build every mesh the sweep needs.
    let mut meshes: HashMap<(ElementKind, u32), Arc<PolyMesh>> = HashMap::new();
    for &value in values {
        for &kind in kinds {
            let cfg = apply_axis(base, axis, value);
            let key = (mesh_family(kind), cfg.density);
            if !meshes.contains_key(&key) {
                let mesh = build_mesh(cfg.problem, kind, cfg.density, cfg.seed);
                if let Ok(m) = mesh {
                    meshes.insert(key, Arc::new(m));
                }
                // Generation failures fall through to the per-row error path.
            }
        }
    }

    let combos: Vec<(f64, ElementKind)> = values
        .iter()
        .flat_map(|&v| kinds.iter().map(move |&k| (v, k)))
        .collect();
    let run_one = |&(value, kind): &(f64, ElementKind)| -> SweepRow {
        let mut cfg = apply_axis(base, axis, value);
        cfg.element = kind;
        let outcome = match meshes.get(&(mesh_family(kind), cfg.density)) {
            Some(mesh) => run_case_on_mesh(&cfg, mesh).map_err(|e| e.to_string()),
            None => build_mesh(cfg.problem, kind, cfg.density, cfg.seed)
                .and_then(|m| run_case_on_mesh(&cfg, &m))
                .map_err(|e| e.to_string()),
        };
        SweepRow { value, config: cfg, outcome }
    };

    if jobs > 1 {
        use rayon::prelude::*;
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build()
            .expect("thread pool");
        pool.install(|| combos.par_iter().map(run_one).collect())
    } else {
        combos.iter().map(run_one).collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::constitutive::engineering_to_ti;

    #[test]
    fn analytical_vanishes_at_pins() {
        let m = EngineeringParams { e_t: 1500.0, nu: 0.3, p: 5.0 };
        let consts = engineering_to_ti(&m).unwrap();
        let dir = FibreDirection::from_angle(std::f64::consts::FRAC_PI_4);
        for y in [-1.0, 1.0] {
            let (u, v) = analytical_beam_displacement(0.0, y, &consts, &dir, 30.0, 2.0).unwrap();
            assert!(u.abs() < 1e-14);
            assert!(v.abs() < 1e-14);
        }
    }

    #[test]
    fn analytical_isotropic_tip_value() {
        // Frozen from the plane-strain isotropic compliance:
        // v(10,0) = 15 (-S21 - 100 S11) = -0.9061 for E = 1500, nu = 0.3.
        let m = EngineeringParams { e_t: 1500.0, nu: 0.3, p: 1.0 };
        let (_, v) = analytical_beam_tip(&m, 0.3).unwrap();
        assert!((v + 0.9061).abs() < 1e-10, "v = {v}");
    }

    #[test]
    fn analytical_u_antisymmetric_when_s31_vanishes() {
        // Fibres aligned with an axis: no shear-normal coupling, so u is odd
        // in y at fixed x.
        let m = EngineeringParams { e_t: 1500.0, nu: 0.3, p: 5.0 };
        let consts = engineering_to_ti(&m).unwrap();
        let dir = FibreDirection::from_angle(0.0);
        let (u_plus, _) = analytical_beam_displacement(4.0, 0.7, &consts, &dir, 30.0, 2.0).unwrap();
        let (u_minus, _) = analytical_beam_displacement(4.0, -0.7, &consts, &dir, 30.0, 2.0).unwrap();
        assert!((u_plus + u_minus).abs() < 1e-14);
    }

    #[test]
    fn cook_smoke_run() {
        let cfg = CaseConfig {
            problem: Problem::Cook,
            element: ElementKind::Quad,
            density: 6,
            material: EngineeringParams { e_t: 250.0, nu: 0.3, p: 5.0 },
            fibre_kind: FibreKind::Constant(std::f64::consts::FRAC_PI_4),
            strategy: AveragingStrategy::Centroid,
            d_crit: 10.0,
            seed: 42,
            solver: SolverKind::Direct,
        };
        let out = run_case(&cfg).unwrap();
        assert!(out.probe.v.is_finite() && out.probe.v > 0.0);
        assert!(out.residual <= 1e-10);
        // Even density: a vertex lies exactly on the probe point.
        assert!(out.probe.snap_distance < 1e-12);
    }

    #[test]
    fn beam_q2_converges_to_analytical_at_moderate_density() {
        let material = EngineeringParams { e_t: 1500.0, nu: 0.3, p: 5.0 };
        let angle = std::f64::consts::FRAC_PI_4;
        let cfg = CaseConfig {
            problem: Problem::BeamA,
            element: ElementKind::Q2,
            density: 16,
            material,
            fibre_kind: FibreKind::Constant(angle),
            strategy: AveragingStrategy::Centroid,
            d_crit: 10.0,
            seed: 42,
            solver: SolverKind::Direct,
        };
        let out = run_case(&cfg).unwrap();
        let (_, v_exact) = analytical_beam_tip(&material, angle).unwrap();
        assert!(
            (out.probe.v - v_exact).abs() < 0.03 * v_exact.abs(),
            "v = {} vs {}",
            out.probe.v,
            v_exact
        );
    }

    #[test]
    fn p_sweep_stays_bounded_for_vem() {
        // No blow-up across six decades of anisotropy in the
        // near-incompressible limit.
        let base = CaseConfig {
            problem: Problem::Cook,
            element: ElementKind::Quad,
            density: 10,
            material: EngineeringParams { e_t: 250.0, nu: 0.49995, p: 1.001 },
            fibre_kind: FibreKind::Constant(std::f64::consts::FRAC_PI_4),
            strategy: AveragingStrategy::Centroid,
            d_crit: 10.0,
            seed: 42,
            solver: SolverKind::Direct,
        };
        let ps = [1.001, 10.0, 100.0, 1e3, 1e4, 1e5];
        let rows = sweep(&base, SweepAxis::AnisotropyP, &ps, &[ElementKind::Quad, ElementKind::Hex], 1);
        let vs: Vec<f64> = rows.iter().map(|r| r.outcome.as_ref().unwrap().probe.v).collect();
        assert!(vs.iter().all(|v| v.is_finite() && *v > 0.0));
        let max = vs.iter().cloned().fold(f64::MIN, f64::max);
        let min = vs.iter().cloned().fold(f64::MAX, f64::min);
        assert!(max / min < 100.0, "p-sweep spread {max}/{min}");
    }

    #[test]
    fn cook_self_convergence_and_voronoi_snap() {
        // Fig-3-style plateau: the d=50 and d=40 Cook values agree within 1%
        // in the near-incompressible anisotropic regime.
        let mk = |element, density| CaseConfig {
            problem: Problem::Cook,
            element,
            density,
            material: EngineeringParams { e_t: 250.0, nu: 0.49995, p: 5.0 },
            fibre_kind: FibreKind::Constant(std::f64::consts::FRAC_PI_4),
            strategy: AveragingStrategy::Centroid,
            d_crit: 10.0,
            seed: 42,
            solver: SolverKind::Direct,
        };
        let v50 = run_case(&mk(ElementKind::Quad, 50)).unwrap().probe.v;
        let v40 = run_case(&mk(ElementKind::Quad, 40)).unwrap().probe.v;
        assert!((v50 - v40).abs() / v50.abs() < 0.01, "v40 = {v40}, v50 = {v50}");
        // Voronoi probe snaps within the density bound 2 * diameter / d.
        let out = run_case(&mk(ElementKind::Voronoi, 20)).unwrap();
        let diameter = (48f64 * 48.0 + 60.0 * 60.0).sqrt();
        assert!(out.probe.snap_distance < 2.0 * diameter / 20.0);
    }

    #[test]
    fn sweep_orders_rows_and_survives_failures() {
        let base = CaseConfig {
            problem: Problem::BeamA,
            element: ElementKind::Quad,
            density: 4,
            material: EngineeringParams { e_t: 1500.0, nu: 0.3, p: 5.0 },
            fibre_kind: FibreKind::Constant(0.6),
            strategy: AveragingStrategy::Centroid,
            d_crit: 10.0,
            seed: 42,
            solver: SolverKind::Direct,
        };
        let kinds = [ElementKind::Quad, ElementKind::Q1];
        let rows = sweep(&base, SweepAxis::AnisotropyP, &[1.0, 10.0, 100.0], &kinds, 1);
        assert_eq!(rows.len(), 6);
        assert_eq!(rows[0].value, 1.0);
        assert_eq!(rows[1].value, 1.0);
        assert_eq!(rows[1].config.element, ElementKind::Q1);
        assert!(rows.iter().all(|r| r.outcome.is_ok()));
        // Invalid p on one row: sweep keeps going, row carries the message.
        let rows = sweep(&base, SweepAxis::AnisotropyP, &[0.5, 5.0], &kinds, 1);
        assert!(rows[0].outcome.is_err());
        assert!(rows[2].outcome.is_ok());
        // Parallel execution preserves deterministic ordering and values.
        let seq = sweep(&base, SweepAxis::AnisotropyP, &[1.0, 10.0], &kinds, 1);
        let par = sweep(&base, SweepAxis::AnisotropyP, &[1.0, 10.0], &kinds, 3);
        for (a, b) in seq.iter().zip(&par) {
            assert_eq!(a.value, b.value);
            assert_eq!(a.outcome.as_ref().unwrap().probe.v, b.outcome.as_ref().unwrap().probe.v);
        }
    }
}
