//! Single solve of the bending beam compared against its closed-form tip
//! displacement, for a transversely isotropic material with fibres at 45
//! degrees.
//!
//!     cargo run --example analytical_beam

use std::f64::consts::FRAC_PI_4;

use vemti::assembly::{ElementKind, SolverKind};
use vemti::benchmarks::{analytical_beam_tip, run_case, CaseConfig, Problem};
use vemti::constitutive::EngineeringParams;
use vemti::fibre::{AveragingStrategy, FibreKind};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let material = EngineeringParams { e_t: 1500.0, nu: 0.3, p: 5.0 };
    let (u_exact, v_exact) = analytical_beam_tip(&material, FRAC_PI_4)?;
    println!("analytical tip displacement at C = (10, 0): u = {u_exact:.8}, v = {v_exact:.8}\n");
    println!("element   density   probe_v        error     residual   wall");
    for element in [ElementKind::Quad, ElementKind::Hex, ElementKind::Voronoi, ElementKind::Q1, ElementKind::Q2] {
        let cfg = CaseConfig {
            problem: Problem::BeamA,
            element,
            density: 24,
            material,
            fibre_kind: FibreKind::Constant(FRAC_PI_4),
            strategy: AveragingStrategy::Centroid,
            d_crit: 10.0,
            seed: 42,
            solver: SolverKind::Direct,
        };
        let out = run_case(&cfg)?;
        println!(
            "{:8} {:9} {:12.8} {:8.3}%   {:8.1e}  {:4.0} ms",
            element.as_str(),
            cfg.density,
            out.probe.v,
            100.0 * (out.probe.v - v_exact) / v_exact.abs(),
            out.residual,
            out.wall_ms
        );
    }
    Ok(())
}
