//! Locking study: tip displacement vs anisotropy ratio p, log-spaced over
//! 1..10^5, in the near-incompressible limit. Q1 locks volumetrically near
//! p = 1, recovers for mild anisotropy, and locks extensionally as p grows;
//! the VEM columns stay on the Q2 curve throughout.
//!
//!     cargo run --example locking_p_sweep

use std::f64::consts::FRAC_PI_4;

use vemti::assembly::{ElementKind, SolverKind};
use vemti::benchmarks::{analytical_beam_tip, sweep, CaseConfig, Problem, SweepAxis};
use vemti::constitutive::EngineeringParams;
use vemti::fibre::{AveragingStrategy, FibreKind};

fn run(problem: Problem, with_analytic: bool) {
    let base = CaseConfig {
        problem,
        element: ElementKind::Quad,
        density: 24,
        material: EngineeringParams { e_t: problem.default_e_t(), nu: 0.49995, p: 1.001 },
        fibre_kind: FibreKind::Constant(FRAC_PI_4),
        strategy: AveragingStrategy::Centroid,
        d_crit: 10.0,
        seed: 42,
        solver: SolverKind::Direct,
    };
    let kinds = [
        ElementKind::Quad,
        ElementKind::Hex,
        ElementKind::Voronoi,
        ElementKind::Q1,
        ElementKind::Q2,
    ];
    // Log-spaced p values, with 1.001 standing in for the isotropic end.
    let ps: Vec<f64> = vec![1.001, 10.0, 100.0, 1e3, 1e4, 1e5];
    let rows = sweep(&base, SweepAxis::AnisotropyP, &ps, &kinds, 4);
    println!("{} at d = 24, nu = 0.49995, fibre angle pi/4:", problem.as_str());
    print!("{:>10}", "p");
    for k in &kinds {
        print!(" {:>10}", k.as_str());
    }
    if with_analytic {
        print!(" {:>10}", "analytical");
    }
    println!();
    for (i, &p) in ps.iter().enumerate() {
        print!("{p:10.0}");
        for j in 0..kinds.len() {
            match &rows[i * kinds.len() + j].outcome {
                Ok(out) => print!(" {:10.5}", out.probe.v),
                Err(_) => print!(" {:>10}", "-"),
            }
        }
        if with_analytic {
            let m = EngineeringParams { e_t: problem.default_e_t(), nu: 0.49995, p };
            let (_, v) = analytical_beam_tip(&m, FRAC_PI_4).unwrap();
            print!(" {v:10.5}");
        }
        println!();
    }
    println!();
}

fn main() {
    run(Problem::Cook, false);
    run(Problem::BeamA, true);
}
