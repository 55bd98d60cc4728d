//! Robustness under near-inextensibility: tip displacement vs fibre angle
//! at p = 10^5, nu = 0.49995. The VEM families produce smooth curves over
//! the whole range; Q1 locks over most of it, and on the Cook panel Q2 is
//! visibly sub-optimal past 90 degrees.
//!
//!     cargo run --example angle_sweep

use std::f64::consts::PI;

use vemti::assembly::{ElementKind, SolverKind};
use vemti::benchmarks::{sweep, CaseConfig, Problem, SweepAxis};
use vemti::constitutive::EngineeringParams;
use vemti::fibre::{AveragingStrategy, FibreKind};

fn main() {
    let base = CaseConfig {
        problem: Problem::Cook,
        element: ElementKind::Quad,
        density: 20,
        material: EngineeringParams { e_t: 250.0, nu: 0.49995, p: 1e5 },
        fibre_kind: FibreKind::Constant(0.0),
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
    let angles: Vec<f64> = (0..=36).map(|k| PI * k as f64 / 36.0).collect();
    let rows = sweep(&base, SweepAxis::Angle, &angles, &kinds, 4);

    println!("Cook membrane, p = 1e5, nu = 0.49995, d = 20");
    print!("{:>7}", "deg");
    for k in &kinds {
        print!(" {:>9}", k.as_str());
    }
    println!();
    for (i, &a) in angles.iter().enumerate() {
        print!("{:7.1}", a.to_degrees());
        for j in 0..kinds.len() {
            match &rows[i * kinds.len() + j].outcome {
                Ok(out) => print!(" {:9.4}", out.probe.v),
                Err(_) => print!(" {:>9}", "-"),
            }
        }
        println!();
    }
}
