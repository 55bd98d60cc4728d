//! Acceptance suite. Each test covers one numbered criterion, prints a
//! single `criterion N: PASS/FAIL` line (run with `--nocapture` to see the
//! lines for passing tests) and asserts the stated tolerances.
//!
//! Criterion 6's continuity clause is asserted exactly as specified (19
//! angles, adjacent jumps below 10% of the sweep range) and is expected to
//! fail: the exact solution itself moves by ~30% of the range across a 10°
//! step in the near-inextensible regime. The test prints a supplementary
//! 1°-resolution sweep, at which the curve is smooth, before asserting.

use std::f64::consts::{FRAC_PI_4, PI};
use std::sync::Arc;
use std::time::Instant;

use nalgebra::{DVector, Matrix2, Matrix3, Matrix6, Vector3};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use vemti::assembly::{
    assemble, solve, BvpSpec, DirichletBc, ElementKind, FibreConfig, SolverKind, SystemState,
};
use vemti::benchmarks::{
    analytical_beam_tip, run_case, sweep, CaseConfig, Problem, SweepAxis,
};
use vemti::constitutive::{
    build_stiffness, engineering_to_ti, reduced_compliance, EngineeringParams, FibreDirection,
    TIConstants,
};
use vemti::fibre::{weight, AveragingStrategy, FibreField, FibreKind};
use vemti::mesh::{gen_hex, gen_quad, gen_voronoi, polygon_geometry, BoundaryTag, PolyMesh};
use vemti::vem::{element_stiffness, monomial_matrix, projection, stabilization_stiffness};
use vemti::{Point2, Vector2};

fn case(problem: Problem, element: ElementKind, density: u32, nu: f64, p: f64, angle: f64) -> CaseConfig {
    CaseConfig {
        problem,
        element,
        density,
        material: EngineeringParams { e_t: problem.default_e_t(), nu, p },
        fibre_kind: FibreKind::Constant(angle),
        strategy: AveragingStrategy::Centroid,
        d_crit: 10.0,
        seed: 42,
        solver: SolverKind::Direct,
    }
}

fn constant_fibre(angle: f64) -> FibreConfig {
    FibreConfig {
        field: FibreField::new(FibreKind::Constant(angle)),
        strategy: AveragingStrategy::Centroid,
        per_gauss_point: false,
    }
}

/// Random convex polygon: sorted angles on the unit circle with a minimum
/// angular gap, then a random orientation-preserving affine distortion.
fn random_convex_polygon(rng: &mut ChaCha8Rng, n: usize) -> Vec<Point2> {
    loop {
        let mut angles: Vec<f64> = (0..n).map(|_| rng.gen_range(0.0..std::f64::consts::TAU)).collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        let wrap = std::f64::consts::TAU + angles[0] - angles[n - 1];
        let min_gap = angles.windows(2).map(|w| w[1] - w[0]).fold(wrap, f64::min);
        if min_gap < 0.15 {
            continue;
        }
        let m = Matrix2::new(
            rng.gen_range(0.5..1.5),
            rng.gen_range(-0.4..0.4),
            rng.gen_range(-0.4..0.4),
            rng.gen_range(0.5..1.5),
        );
        if m.determinant() <= 0.1 {
            continue;
        }
        let shift = Vector2::new(rng.gen_range(-2.0..2.0), rng.gen_range(-2.0..2.0));
        return angles
            .iter()
            .map(|&a| Point2::from(m * Vector2::new(a.cos(), a.sin()) + shift))
            .collect();
    }
}

fn patch_bvp(mesh: PolyMesh, density: u32) -> BvpSpec {
    let g: vemti::assembly::PointFn = Arc::new(|p: Point2| Vector2::new(2.0 * p.x + p.y, p.x - 3.0 * p.y));
    BvpSpec {
        mesh,
        material: EngineeringParams { e_t: 1.0, nu: 0.3, p: 2.0 },
        fibre: constant_fibre(0.4),
        density,
        dirichlet: [BoundaryTag::Left, BoundaryTag::Right, BoundaryTag::Top, BoundaryTag::Bottom]
            .iter()
            .map(|&tag| DirichletBc::function(tag, g.clone()))
            .collect(),
        neumann: vec![],
        body_force: None,
    }
}

#[test]
fn criterion_01_linear_patch_test() {
    let start = Instant::now();
    for (kind, mesh) in [
        (ElementKind::Quad, gen_quad(5).unwrap()),
        (ElementKind::Hex, gen_hex(5).unwrap()),
        (ElementKind::Voronoi, gen_voronoi(5, 42, 10).unwrap()),
        (ElementKind::Q1, gen_quad(5).unwrap()),
        (ElementKind::Q2, gen_quad(5).unwrap()),
    ] {
        let state = solve(assemble(&patch_bvp(mesh, 5), kind).unwrap(), SolverKind::Direct).unwrap();
        let u = state.u.as_ref().unwrap();
        let scale = u.iter().fold(0.0f64, |m, x| m.max(x.abs()));
        for (i, node) in state.nodes.iter().enumerate() {
            let ex = 2.0 * node.x + node.y;
            let ey = node.x - 3.0 * node.y;
            assert!(
                (u[2 * i] - ex).abs() <= 1e-9 * scale && (u[2 * i + 1] - ey).abs() <= 1e-9 * scale,
                "{} node {i}: ({}, {}) vs ({ex}, {ey})",
                kind.as_str(),
                u[2 * i],
                u[2 * i + 1]
            );
        }
    }
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 1.0, "runtime {dt:.2} s exceeds 1 s");
    println!("criterion 1: PASS ({dt:.2} s) - linear field reproduced to 1e-9 by quad/hex/voronoi/q1/q2 at d=5");
}

#[test]
fn criterion_02_element_algebra() {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    let consts = engineering_to_ti(&EngineeringParams { e_t: 1.0, nu: 0.3, p: 3.0 }).unwrap();
    let c = build_stiffness(&consts, &FibreDirection::from_angle(0.55)).unwrap();
    for trial in 0..50 {
        let n = rng.gen_range(3..=10);
        let verts = random_convex_polygon(&mut rng, n);
        let geom = polygon_geometry(&verts, 0).unwrap();
        let ke = element_stiffness(&geom, &verts, &c, consts.mu_t).unwrap().k;
        let norm = ke.norm();
        assert!((&ke - ke.transpose()).norm() <= 1e-10 * norm, "trial {trial}: asymmetric");
        let eig = ke.clone().symmetric_eigen();
        assert!(eig.eigenvalues.min() > -1e-10 * norm, "trial {trial}: indefinite");
        let rank = eig.eigenvalues.iter().filter(|&&e| e > 1e-10 * norm).count();
        assert_eq!(rank, 2 * n - 3, "trial {trial}: rank");

        // Stabilization annihilates a random linear field.
        let dm = monomial_matrix(&geom, &verts);
        let k_stab = stabilization_stiffness(&dm, consts.mu_t).unwrap();
        let grad = Matrix2::new(
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
            rng.gen_range(-2.0..2.0),
        );
        let offset = Vector2::new(rng.gen_range(-1.0..1.0), rng.gen_range(-1.0..1.0));
        let dofs: Vec<f64> = verts
            .iter()
            .flat_map(|v| {
                let u = grad * v.coords + offset;
                [u.x, u.y]
            })
            .collect();
        let d = DVector::from_column_slice(&dofs);
        assert!((&k_stab * &d).norm() <= 1e-11 * (1.0 + d.norm()), "trial {trial}: stab kernel");

        // Projection reproduces the analytic constant strain.
        let p = projection(&geom);
        let s = p.apply(&dofs);
        let exact = Vector3::new(grad[(0, 0)], grad[(1, 1)], grad[(0, 1)] + grad[(1, 0)]);
        assert!((s - exact).norm() <= 1e-12 * (1.0 + exact.norm()), "trial {trial}: projection");
    }
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 5.0, "runtime {dt:.2} s exceeds 5 s");
    println!("criterion 2: PASS ({dt:.2} s) - 50 random polygons: symmetry, PSD, rank 2N-3, stab kernel, projection exactness");
}

/// Voigt stress rotation for a frame rotation by theta.
fn stress_rotation(theta: f64) -> Matrix3<f64> {
    let (s, c) = theta.sin_cos();
    Matrix3::new(
        c * c, s * s, -2.0 * c * s,
        s * s, c * c, 2.0 * c * s,
        c * s, -c * s, c * c - s * s,
    )
}

/// Full 3D Voigt stiffness with fibre along e3 in the compliance ordering
/// [11, 22, 33, 23, 13, 12], built by applying the tensor law to basis
/// strains (independent of the plane-strain code path).
fn full_stiffness_e3(k: &TIConstants) -> Matrix6<f64> {
    let a = Vector3::new(0.0, 0.0, 1.0);
    let m = a * a.transpose();
    let ident = Matrix3::<f64>::identity();
    let idx = [(0usize, 0usize), (1, 1), (2, 2), (1, 2), (0, 2), (0, 1)];
    let mut c6 = Matrix6::zeros();
    for (col, &(i, j)) in idx.iter().enumerate() {
        let mut eps = Matrix3::zeros();
        if i == j {
            eps[(i, j)] = 1.0;
        } else {
            eps[(i, j)] = 0.5;
            eps[(j, i)] = 0.5;
        }
        let tr = eps.trace();
        let me = (m * eps).trace();
        let sigma = k.lambda * tr * ident
            + 2.0 * k.mu_t * eps
            + k.beta * me * m
            + k.alpha * (me * ident + tr * m)
            + 2.0 * (k.mu_l - k.mu_t) * (eps * m + m * eps);
        for (row, &(r, s)) in idx.iter().enumerate() {
            c6[(row, col)] = sigma[(r, s)];
        }
    }
    c6
}

#[test]
fn criterion_03_constitutive_suite() {
    let start = Instant::now();
    // Isotropic limit recovers the Lame values.
    let iso = engineering_to_ti(&EngineeringParams { e_t: 1.0, nu: 0.3, p: 1.0 }).unwrap();
    let lambda = 0.3 / (1.3 * 0.4);
    let mu = 1.0 / 2.6;
    assert!((iso.lambda - lambda).abs() <= 1e-12 * lambda);
    assert!((iso.mu_t - mu).abs() <= 1e-12 * mu);
    assert!(iso.alpha.abs() <= 1e-12 && iso.beta.abs() <= 1e-12);

    // Rotation equivariance over 20 random angles.
    let consts = engineering_to_ti(&EngineeringParams { e_t: 1.0, nu: 0.3, p: 5.0 }).unwrap();
    let base = build_stiffness(&consts, &FibreDirection::from_angle(0.0)).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..20 {
        let theta: f64 = rng.gen_range(0.0..PI);
        let direct = build_stiffness(&consts, &FibreDirection::from_angle(theta)).unwrap();
        let t = stress_rotation(theta);
        let rotated = t * base.matrix() * t.transpose();
        assert!((direct.matrix() - rotated).norm() <= 1e-10 * rotated.norm(), "theta = {theta}");
    }

    // Compliance and stiffness are mutual inverses, both 3x3 and 6x6.
    for (e_t, nu, p) in [(1.0, 0.3, 2.0), (250.0, 0.45, 5.0), (1500.0, 0.0, 1.0)] {
        let prm = EngineeringParams { e_t, nu, p };
        let k = engineering_to_ti(&prm).unwrap();
        let dir = FibreDirection::from_angle(0.8);
        let s3 = reduced_compliance(&k, &dir).unwrap();
        let c3 = build_stiffness(&k, &dir).unwrap();
        assert!((s3 * c3.matrix() - Matrix3::identity()).norm() <= 1e-10);
        let s6 = vemti::constitutive::engineering_compliance(&prm).unwrap();
        let c6 = full_stiffness_e3(&k);
        assert!((s6.matrix() * c6 - Matrix6::identity()).norm() <= 1e-10);
    }
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 1.0, "runtime {dt:.2} s exceeds 1 s");
    println!("criterion 3: PASS ({dt:.2} s) - isotropic limit, rotation equivariance, compliance-stiffness inverses");
}

#[test]
fn criterion_04_beam_analytical_convergence() {
    let start = Instant::now();
    let material = EngineeringParams { e_t: 1500.0, nu: 0.3, p: 5.0 };
    let (_, v_exact) = analytical_beam_tip(&material, FRAC_PI_4).unwrap();
    let densities = [10u32, 20, 30, 40, 50];
    let mut summary = String::new();
    for kind in [ElementKind::Q2, ElementKind::Quad, ElementKind::Hex, ElementKind::Voronoi] {
        let mut errors = Vec::new();
        for &d in &densities {
            let out = run_case(&case(Problem::BeamA, kind, d, 0.3, 5.0, FRAC_PI_4)).unwrap();
            errors.push((out.probe.v - v_exact).abs() / v_exact.abs());
        }
        let at50 = *errors.last().unwrap();
        assert!(at50 <= 0.02, "{} error at d=50 is {:.3}%", kind.as_str(), 100.0 * at50);
        let mut violations = 0;
        for w in errors.windows(2) {
            // Q2 reproduces the quadratic field exactly, leaving only solver
            // round-off (~1e-10 on the d=50 system); errors below 1e-8 are
            // converged, not monotonicity violations. All genuine
            // discretization errors here are above 2e-3.
            if w[1] > w[0] && w[1] > 1e-8 {
                violations += 1;
            }
        }
        let allowed = if kind == ElementKind::Voronoi { 1 } else { 0 };
        assert!(
            violations <= allowed,
            "{}: {} non-monotone steps in {:?}",
            kind.as_str(),
            violations,
            errors
        );
        summary.push_str(&format!(" {}={:.3}%", kind.as_str(), 100.0 * at50));
    }
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 60.0, "runtime {dt:.1} s exceeds 60 s");
    println!("criterion 4: PASS ({dt:.1} s) - beam errors vs analytical at d=50:{summary}, monotone over d=10..50");
}

#[test]
fn criterion_05_volumetric_locking_contrast() {
    let start = Instant::now();
    let get = |kind| {
        run_case(&case(Problem::Cook, kind, 20, 0.49995, 1.001, FRAC_PI_4))
            .unwrap()
            .probe
            .v
    };
    let q1 = get(ElementKind::Q1);
    let q2 = get(ElementKind::Q2);
    assert!(q1 < 0.6 * q2, "Q1 {q1:.4} not below 60% of Q2 {q2:.4}");
    for kind in [ElementKind::Quad, ElementKind::Hex, ElementKind::Voronoi] {
        let v = get(kind);
        assert!(
            (v - q2).abs() <= 0.05 * q2.abs(),
            "{} = {v:.4} deviates more than 5% from Q2 = {q2:.4}",
            kind.as_str()
        );
    }
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 30.0, "runtime {dt:.1} s exceeds 30 s");
    println!(
        "criterion 5: PASS ({dt:.1} s) - Cook nu=0.49995 p=1.001 d=20: Q1/Q2 = {:.2}, VEM kinds within 5% of Q2",
        q1 / q2
    );
}

#[test]
fn criterion_06_inextensibility_robustness() {
    let start = Instant::now();
    let base = case(Problem::Cook, ElementKind::Quad, 20, 0.49995, 1e5, 0.0);
    let kinds = [ElementKind::Quad, ElementKind::Hex, ElementKind::Voronoi];
    let angles: Vec<f64> = (0..19).map(|k| PI * k as f64 / 18.0).collect();
    let rows = sweep(&base, SweepAxis::Angle, &angles, &kinds, 1);
    let v = |i: usize, k: usize| rows[i * kinds.len() + k].outcome.as_ref().unwrap().probe.v;

    // All VEM results finite.
    for i in 0..angles.len() {
        for k in 0..kinds.len() {
            assert!(v(i, k).is_finite(), "{} at angle {i} not finite", kinds[k].as_str());
        }
    }
    // Pairwise kind disagreement below 10% (per angle, relative to the
    // larger magnitude of the pair).
    let mut worst_pair = 0.0f64;
    for i in 0..angles.len() {
        for a in 0..kinds.len() {
            for b in (a + 1)..kinds.len() {
                let rel = (v(i, a) - v(i, b)).abs() / v(i, a).abs().max(v(i, b).abs());
                worst_pair = worst_pair.max(rel);
            }
        }
    }
    assert!(worst_pair < 0.10, "worst pairwise kind disagreement {:.1}%", 100.0 * worst_pair);

    // Adjacent-angle continuity. Supplementary evidence first: at 1 degree
    // resolution the curve is smooth and the 10% bound holds comfortably.
    let fine: Vec<f64> = (0..=180).map(|k| PI * k as f64 / 180.0).collect();
    let fine_rows = sweep(&base, SweepAxis::Angle, &fine, &[ElementKind::Quad], 1);
    let fine_v: Vec<f64> = fine_rows.iter().map(|r| r.outcome.as_ref().unwrap().probe.v).collect();
    let fine_range = fine_v.iter().cloned().fold(f64::MIN, f64::max)
        - fine_v.iter().cloned().fold(f64::MAX, f64::min);
    let fine_jump = fine_v.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0f64, f64::max);

    let mut worst_jump_rel = 0.0f64;
    for k in 0..kinds.len() {
        let vals: Vec<f64> = (0..angles.len()).map(|i| v(i, k)).collect();
        let range = vals.iter().cloned().fold(f64::MIN, f64::max)
            - vals.iter().cloned().fold(f64::MAX, f64::min);
        let jump = vals.windows(2).map(|w| (w[1] - w[0]).abs()).fold(0.0f64, f64::max);
        worst_jump_rel = worst_jump_rel.max(jump / range);
    }
    let dt = start.elapsed().as_secs_f64();
    assert!(dt < 120.0, "runtime {dt:.1} s exceeds 120 s");
    let verdict = if worst_jump_rel < 0.10 { "PASS" } else { "FAIL" };
    println!(
        "criterion 6: {verdict} ({dt:.1} s) - finite: yes; kind disagreement {:.1}% (<10%); \
         max adjacent jump at 19 angles {:.1}% of range (stated bound 10%); \
         supplementary 1-degree sweep: max jump {:.1}% of range over range {:.2}",
        100.0 * worst_pair,
        100.0 * worst_jump_rel,
        100.0 * fine_jump / fine_range,
        fine_range
    );
    // The exact solution moves ~30% of the range across a 10-degree step in
    // this regime, so this clause cannot hold at the stated resolution; it
    // is asserted as written rather than weakened.
    assert!(
        worst_jump_rel < 0.10,
        "max adjacent-angle jump is {:.1}% of the sweep range at 19 angles; \
         the underlying curve is steeper than 10% per 10-degree step (at 1-degree \
         resolution the jump is only {:.1}% of range)",
        100.0 * worst_jump_rel,
        100.0 * fine_jump / fine_range
    );
}

#[test]
fn criterion_07_mild_anisotropy_q1_mitigation() {
    let start = Instant::now();
    let run = |p: f64, kind| {
        run_case(&case(Problem::BeamA, kind, 20, 0.49995, p, FRAC_PI_4))
            .unwrap()
            .probe
            .v
    };
    let q1_mild = run(5.0, ElementKind::Q1);
    let q2_mild = run(5.0, ElementKind::Q2);
    assert!(
        (q1_mild - q2_mild).abs() <= 0.10 * q2_mild.abs(),
        "Q1 {q1_mild:.4} not within 10% of Q2 {q2_mild:.4} at p=5"
    );
    let q1_stiff = run(1e5, ElementKind::Q1);
    let material = EngineeringParams { e_t: 1500.0, nu: 0.49995, p: 1e5 };
    let (_, v_exact) = analytical_beam_tip(&material, FRAC_PI_4).unwrap();
    assert!(
        q1_stiff.abs() < 0.5 * v_exact.abs(),
        "Q1 {q1_stiff:.4} not below 50% of analytical {v_exact:.4} at p=1e5"
    );
    let dt = start.elapsed().as_secs_f64();
    println!(
        "criterion 7: PASS ({dt:.1} s) - beam d=20 nu=0.49995: Q1/Q2 = {:.3} at p=5; Q1/analytical = {:.3} at p=1e5",
        q1_mild / q2_mild,
        q1_stiff / v_exact
    );
}

#[test]
fn criterion_08_weight_function_values() {
    let start = Instant::now();
    assert_eq!(weight(10.0, 10.0), 0.25);
    // Direct high-precision evaluation of (pi/2 + arctan(10 - d)) / (2 pi).
    assert!((weight(0.0, 10.0) - 0.484137241285).abs() <= 1e-6);
    assert!((weight(50.0, 10.0) - 0.003978044956).abs() <= 1e-6);
    let mut prev = f64::INFINITY;
    for d in 0..=60 {
        let w = weight(d as f64, 10.0);
        assert!(w < prev, "weight not strictly decreasing at d = {d}");
        prev = w;
    }
    let dt = start.elapsed().as_secs_f64();
    println!("criterion 8: PASS ({dt:.2} s) - w_c(10,10)=0.25 exact, endpoint values to 1e-6, strictly decreasing 0..60");
}

fn beam_b_state(strategy: AveragingStrategy, density: u32, kind: ElementKind, fibre: FibreKind) -> SystemState {
    let mesh = vemti::benchmarks::build_mesh(Problem::BeamB, kind, density, 42).unwrap();
    let spec = vemti::benchmarks::bvp(
        Problem::BeamB,
        mesh,
        EngineeringParams { e_t: 1500.0, nu: 0.3, p: 5.0 },
        FibreConfig { field: FibreField::new(fibre), strategy, per_gauss_point: false },
        density,
    );
    assemble(&spec, kind).unwrap()
}

#[test]
fn criterion_09_fibre_strategy_consistency() {
    let start = Instant::now();
    // Constant field: identical global stiffness entries across strategies.
    let strategies = [
        AveragingStrategy::Centroid,
        AveragingStrategy::NodalAverage,
        AveragingStrategy::EqualWeight,
        AveragingStrategy::VaryingWeight,
    ];
    let states: Vec<SystemState> = strategies
        .iter()
        .map(|&s| beam_b_state(s, 6, ElementKind::Quad, FibreKind::Constant(0.6)))
        .collect();
    let reference = &states[0].k_full;
    for state in &states[1..] {
        assert_eq!(state.k_full.nnz(), reference.nnz());
        for i in 0..state.k_full.n() {
            let (cols, vals) = state.k_full.row(i);
            let (rcols, rvals) = reference.row(i);
            assert_eq!(cols, rcols);
            for (v, r) in vals.iter().zip(rvals) {
                assert!((v - r).abs() <= 1e-14 * r.abs().max(1.0), "entry {i}: {v} vs {r}");
            }
        }
    }

    // Sinusoidal field on beam-b at d=30: varying weight hugs nodal average.
    let probe = Point2::new(10.0, 0.0);
    let vw = solve(
        beam_b_state(AveragingStrategy::VaryingWeight, 30, ElementKind::Quad, FibreKind::Sinusoidal),
        SolverKind::Direct,
    )
    .unwrap()
    .probe(probe)
    .v;
    let na = solve(
        beam_b_state(AveragingStrategy::NodalAverage, 30, ElementKind::Quad, FibreKind::Sinusoidal),
        SolverKind::Direct,
    )
    .unwrap()
    .probe(probe)
    .v;
    assert!(
        (vw - na).abs() <= 0.01 * na.abs(),
        "varying {vw:.6} vs nodal {na:.6} differ by more than 1%"
    );
    let dt = start.elapsed().as_secs_f64();
    println!(
        "criterion 9: PASS ({dt:.1} s) - strategies agree to 1e-14 on constant fields; varying vs nodal at d=30: {:.3}%",
        100.0 * (vw - na).abs() / na.abs()
    );
}

#[test]
fn criterion_10_determinism() {
    let start = Instant::now();
    // A criterion-4 configuration, including the seeded Voronoi path.
    let args = vemti::cli::RunArgs {
        problem: "beam-a".into(),
        element: "voronoi".into(),
        density: 20,
        e_t: None,
        nu: 0.3,
        p: 5.0,
        fibre: format!("constant:{FRAC_PI_4}"),
        strategy: "centroid".into(),
        d_crit: 10.0,
        seed: 42,
        solver: "direct".into(),
        emit_config: false,
    };
    // wall_ms (the trailing column) is measured time; everything before it
    // must be bitwise identical between repeated runs.
    let strip_timing = |csv: String| -> String {
        csv.lines()
            .map(|line| line.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap_or_else(|| line.to_string()))
            .collect::<Vec<_>>()
            .join("\n")
    };
    let first = strip_timing(vemti::cli::cmd_run(&args).unwrap());
    let second = strip_timing(vemti::cli::cmd_run(&args).unwrap());
    assert_eq!(first, second, "repeated runs disagree");
    assert!(first.contains("beam-a,voronoi,20,"));
    let dt = start.elapsed().as_secs_f64();
    println!("criterion 10: PASS ({dt:.1} s) - repeated beam-a voronoi d=20 runs emit bitwise-identical CSV (timing column aside)");
}
