//! Command front end: `mesh` generation/export, single `run`s and parameter
//! `sweep`s with CSV output.
//!
//! Flags mirror the configuration field names (`--problem`, `--element`,
//! `--density`, `--E_T`, `--nu`, `--p`, `--fibre`, `--strategy`, `--d_crit`,
//! `--seed`, `--solver`). Angles are radians only. Exit codes: 0 success,
//! 2 configuration error, 3 solver/numeric failure, 4 I/O failure.

use std::ffi::OsString;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};

use crate::assembly::{ElementKind, SolverKind};
use crate::benchmarks::{run_case, sweep, CaseConfig, Problem, RunResult, SweepAxis};
#[cfg(test)]
use crate::benchmarks::apply_axis;
use crate::fibre::{AveragingStrategy, FibreKind};
use crate::mesh::{gen_hex, gen_quad, gen_voronoi, map_to_domain, write_polymesh, DomainSpec};
use crate::{Error, Result};

/// CSV schema of a single run.
pub const RUN_HEADER: &str =
    "problem,element,density,nu,p,fibre,strategy,probe_u,probe_v,snap_dist,residual,wall_ms";

#[derive(Parser)]
#[command(name = "vemti", about = "Plane-strain VEM/FEM solver for transversely isotropic elasticity", disable_help_subcommand = true)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand)]
pub enum Command {
    /// Generate a polygonal mesh and write it in the `polymesh 1` format
    Mesh(MeshArgs),
    /// Solve one configuration and print a CSV row
    Run(RunArgs),
    /// Sweep density, anisotropy ratio or fibre angle and print a CSV table
    Sweep(SweepArgs),
}

#[derive(Args, Clone)]
pub struct RunArgs {
    /// cook | beam-a | beam-b
    #[arg(long)]
    pub problem: String,
    /// quad | hex | voronoi (VEM) | q1 | q2 (FEM)
    #[arg(long)]
    pub element: String,
    /// Mesh density d = sqrt(n_elements)
    #[arg(long)]
    pub density: u32,
    /// Transverse Young's modulus [Pa]; defaults to the problem's value
    #[arg(long = "E_T")]
    pub e_t: Option<f64>,
    /// Poisson's ratio
    #[arg(long, default_value_t = 0.3)]
    pub nu: f64,
    /// Anisotropy ratio E_L / E_T
    #[arg(long, default_value_t = 1.0)]
    pub p: f64,
    /// constant:<angle-rad> | quartic | sinusoidal
    #[arg(long, default_value = "constant:0")]
    pub fibre: String,
    /// centroid | nodal | equal | varying
    #[arg(long, default_value = "centroid")]
    pub strategy: String,
    /// Critical density of the varying weight
    #[arg(long = "d_crit", default_value_t = 10.0)]
    pub d_crit: f64,
    /// Voronoi seed
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// direct | cg
    #[arg(long, default_value = "direct")]
    pub solver: String,
    /// Print the resolved configuration as a leading comment line
    #[arg(long)]
    pub emit_config: bool,
}

#[derive(Args, Clone)]
pub struct SweepArgs {
    #[command(flatten)]
    pub base: RunArgs,
    /// density | p | angle
    #[arg(long)]
    pub axis: String,
    /// Inline comma-separated list of axis values
    #[arg(long)]
    pub values: Option<String>,
    /// File with axis values (one per line, or comma separated)
    #[arg(long)]
    pub values_file: Option<PathBuf>,
    /// Parallel row evaluation bound
    #[arg(long, default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Args, Clone)]
pub struct MeshArgs {
    /// quad | hex | voronoi
    #[arg(long)]
    pub kind: String,
    #[arg(long)]
    pub density: u32,
    #[arg(long, default_value_t = 42)]
    pub seed: u64,
    /// Lloyd relaxation sweeps (voronoi only)
    #[arg(long, default_value_t = 10)]
    pub lloyd: u32,
    /// unit | cook | beam
    #[arg(long, default_value = "unit")]
    pub domain: String,
    #[arg(long)]
    pub output: PathBuf,
}

fn invalid(field: &str, message: String) -> Error {
    Error::InvalidConfig { field: field.into(), message }
}

/// Parses and validates the flag strings into a typed configuration. All
/// validation happens here, before any mesh or matrix work starts.
pub fn resolve_config(args: &RunArgs) -> Result<CaseConfig> {
    let problem = Problem::parse(&args.problem)
        .ok_or_else(|| invalid("problem", format!("expected cook|beam-a|beam-b, got `{}`", args.problem)))?;
    let element = ElementKind::parse(&args.element)
        .ok_or_else(|| invalid("element", format!("expected quad|hex|voronoi|q1|q2, got `{}`", args.element)))?;
    let min_density = if element.needs_all_quads() { 1 } else { 2 };
    if args.density < min_density {
        return Err(invalid(
            "density",
            format!("{} needs density >= {min_density}, got {}", element.as_str(), args.density),
        ));
    }
    let material = crate::constitutive::EngineeringParams::new(
        args.e_t.unwrap_or_else(|| problem.default_e_t()),
        args.nu,
        args.p,
    )?;
    let fibre_kind = parse_fibre(&args.fibre, problem)?;
    let strategy = parse_strategy(&args.strategy)?;
    if !(args.d_crit > 0.0) {
        return Err(invalid("d_crit", format!("must be positive, got {}", args.d_crit)));
    }
    let solver = SolverKind::parse(&args.solver)
        .ok_or_else(|| invalid("solver", format!("expected direct|cg, got `{}`", args.solver)))?;
    Ok(CaseConfig {
        problem,
        element,
        density: args.density,
        material,
        fibre_kind,
        strategy,
        d_crit: args.d_crit,
        seed: args.seed,
        solver,
    })
}

fn parse_fibre(s: &str, problem: Problem) -> Result<FibreKind> {
    if let Some(rest) = s.strip_prefix("constant:") {
        let angle: f64 = rest
            .parse()
            .map_err(|_| invalid("fibre", format!("bad angle `{rest}` (radians required)")))?;
        return Ok(FibreKind::Constant(angle));
    }
    match s {
        "quartic" => Ok(FibreKind::Quartic(problem.quartic_family())),
        "sinusoidal" => Ok(FibreKind::Sinusoidal),
        _ => Err(invalid("fibre", format!("expected constant:<angle-rad>|quartic|sinusoidal, got `{s}`"))),
    }
}

fn parse_strategy(s: &str) -> Result<AveragingStrategy> {
    match s {
        "centroid" => Ok(AveragingStrategy::Centroid),
        "nodal" => Ok(AveragingStrategy::NodalAverage),
        "equal" => Ok(AveragingStrategy::EqualWeight),
        "varying" => Ok(AveragingStrategy::VaryingWeight),
        _ => Err(invalid("strategy", format!("expected centroid|nodal|equal|varying, got `{s}`"))),
    }
}

/// Twelve significant digits, locale-independent, comma-free.
fn sig12(x: f64) -> String {
    if x.is_nan() {
        "NaN".into()
    } else {
        format!("{x:.11e}")
    }
}

fn fibre_string(kind: FibreKind) -> String {
    match kind {
        FibreKind::Constant(a) => format!("constant:{a}"),
        FibreKind::Quartic(_) => "quartic".into(),
        FibreKind::Sinusoidal => "sinusoidal".into(),
    }
}

fn config_comment(cfg: &CaseConfig) -> String {
    format!(
        "# problem={} element={} density={} E_T={} nu={} p={} fibre={} strategy={} d_crit={} seed={} solver={}\n",
        cfg.problem.as_str(),
        cfg.element.as_str(),
        cfg.density,
        cfg.material.e_t,
        cfg.material.nu,
        cfg.material.p,
        fibre_string(cfg.fibre_kind),
        cfg.strategy.as_str(),
        cfg.d_crit,
        cfg.seed,
        cfg.solver.as_str()
    )
}

fn data_row(cfg: &CaseConfig, out: &RunResult) -> String {
    format!(
        "{},{},{},{},{},{},{},{},{},{},{},{}",
        cfg.problem.as_str(),
        cfg.element.as_str(),
        cfg.density,
        cfg.material.nu,
        cfg.material.p,
        fibre_string(cfg.fibre_kind),
        cfg.strategy.as_str(),
        sig12(out.probe.u),
        sig12(out.probe.v),
        sig12(out.probe.snap_distance),
        sig12(out.residual),
        out.wall_ms.round() as u64
    )
}

fn failed_row(cfg: &CaseConfig) -> String {
    format!(
        "{},{},{},{},{},{},{},NaN,NaN,NaN,NaN,0",
        cfg.problem.as_str(),
        cfg.element.as_str(),
        cfg.density,
        cfg.material.nu,
        cfg.material.p,
        fibre_string(cfg.fibre_kind),
        cfg.strategy.as_str(),
    )
}

/// `run`: solves one case, returns the CSV text.
pub fn cmd_run(args: &RunArgs) -> Result<String> {
    let cfg = resolve_config(args)?;
    let out = run_case(&cfg)?;
    if out.fibre_fallbacks > 0 {
        eprintln!("warning: {} element(s) fell back to the centroidal fibre direction", out.fibre_fallbacks);
    }
    let mut text = String::new();
    if args.emit_config {
        text.push_str(&config_comment(&cfg));
    }
    text.push_str(RUN_HEADER);
    text.push('\n');
    text.push_str(&data_row(&cfg, &out));
    text.push('\n');
    Ok(text)
}

/// `sweep`: runs `values x element-kinds` rows, value-major, and returns the
/// CSV text. Failed rows carry NaN probes and a nonzero status.
pub fn cmd_sweep(args: &SweepArgs) -> Result<String> {
    // The element flag accepts a comma list in sweep mode.
    let mut kinds = Vec::new();
    for part in args.base.element.split(',') {
        kinds.push(ElementKind::parse(part).ok_or_else(|| {
            invalid("element", format!("expected quad|hex|voronoi|q1|q2, got `{part}`"))
        })?);
    }
    let mut base_args = args.base.clone();
    base_args.element = kinds[0].as_str().into();
    let base = resolve_config(&base_args)?;

    let axis = SweepAxis::parse(&args.axis)
        .ok_or_else(|| invalid("axis", format!("expected density|p|angle, got `{}`", args.axis)))?;
    if axis == SweepAxis::Angle && !matches!(base.fibre_kind, FibreKind::Constant(_)) {
        return Err(invalid("axis", "angle sweeps require --fibre constant:<angle-rad>".into()));
    }
    let values = parse_values(args)?;
    if values.is_empty() {
        return Err(invalid("values", "need at least one axis value".into()));
    }
    if axis == SweepAxis::Density {
        for &v in &values {
            if v.fract() != 0.0 || v < 1.0 {
                return Err(invalid("values", format!("density values must be positive integers, got {v}")));
            }
        }
    }
    if args.jobs == 0 {
        return Err(invalid("jobs", "must be at least 1".into()));
    }

    let rows = sweep(&base, axis, &values, &kinds, args.jobs);
    let mut text = String::new();
    if args.base.emit_config {
        text.push_str(&config_comment(&base));
    }
    text.push_str(&format!("{},{},status\n", axis.as_str(), RUN_HEADER));
    let mut fallbacks = 0usize;
    for row in &rows {
        match &row.outcome {
            Ok(out) => {
                fallbacks += out.fibre_fallbacks;
                text.push_str(&format!("{},{},0\n", row.value, data_row(&row.config, out)));
            }
            Err(msg) => {
                eprintln!("row {}/{} failed: {msg}", row.value, row.config.element.as_str());
                text.push_str(&format!("{},{},1\n", row.value, failed_row(&row.config)));
            }
        }
    }
    if fallbacks > 0 {
        eprintln!("warning: {fallbacks} element(s) fell back to the centroidal fibre direction");
    }
    Ok(text)
}

fn parse_values(args: &SweepArgs) -> Result<Vec<f64>> {
    let raw = match (&args.values, &args.values_file) {
        (Some(inline), None) => inline.clone(),
        (None, Some(path)) => std::fs::read_to_string(path)?,
        _ => {
            return Err(invalid("values", "provide exactly one of --values or --values-file".into()));
        }
    };
    let mut out = Vec::new();
    for token in raw.split(|c: char| c == ',' || c.is_whitespace()).filter(|t| !t.is_empty()) {
        out.push(
            token
                .parse::<f64>()
                .map_err(|_| invalid("values", format!("bad value `{token}`")))?,
        );
    }
    Ok(out)
}

/// `mesh`: generates, optionally maps, validates and writes a mesh file.
pub fn cmd_mesh(args: &MeshArgs) -> Result<()> {
    let domain = match args.domain.as_str() {
        "unit" => DomainSpec::UnitSquare,
        "cook" => DomainSpec::Cook,
        "beam" => DomainSpec::Beam,
        other => return Err(invalid("domain", format!("expected unit|cook|beam, got `{other}`"))),
    };
    let unit = match args.kind.as_str() {
        "quad" => gen_quad(args.density)?,
        "hex" => gen_hex(args.density)?,
        "voronoi" => gen_voronoi(args.density, args.seed, args.lloyd)?,
        other => return Err(invalid("kind", format!("expected quad|hex|voronoi, got `{other}`"))),
    };
    let mesh = map_to_domain(&unit, domain)?;
    crate::mesh::validate(&mesh, Some(domain.area()))?;
    std::fs::write(&args.output, write_polymesh(&mesh))?;
    Ok(())
}

fn exit_code_for(err: &Error) -> i32 {
    match err {
        Error::InvalidConfig { .. } => 2,
        Error::Io(_) => 4,
        _ => 3,
    }
}

/// Parses argv, dispatches, prints CSV to stdout and diagnostics to stderr;
/// returns the process exit code.
pub fn main_with<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            // Help/version are successes; everything else is a usage error.
            let code = if e.use_stderr() { 2 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    let outcome = match &cli.command {
        Command::Mesh(a) => cmd_mesh(a).map(|_| String::new()),
        Command::Run(a) => cmd_run(a),
        Command::Sweep(a) => cmd_sweep(a),
    };
    match outcome {
        Ok(text) => {
            print!("{text}");
            0
        }
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn base_run_args() -> RunArgs {
        RunArgs {
            problem: "cook".into(),
            element: "quad".into(),
            density: 4,
            e_t: None,
            nu: 0.3,
            p: 5.0,
            fibre: "constant:0.7853981633974483".into(),
            strategy: "centroid".into(),
            d_crit: 10.0,
            seed: 42,
            solver: "direct".into(),
            emit_config: false,
        }
    }

    #[test]
    fn run_emits_header_and_row() {
        let text = cmd_run(&base_run_args()).unwrap();
        let mut lines = text.lines();
        assert_eq!(lines.next().unwrap(), RUN_HEADER);
        let row = lines.next().unwrap();
        assert!(row.starts_with("cook,quad,4,0.3,5,constant:0.7853981633974483,centroid,"));
        assert_eq!(row.split(',').count(), RUN_HEADER.split(',').count());
        assert!(lines.next().is_none());
    }

    #[test]
    fn invalid_p_names_the_field() {
        let mut args = base_run_args();
        args.p = 0.5;
        let err = cmd_run(&args).unwrap_err();
        assert!(matches!(&err, Error::InvalidConfig { field, .. } if field == "p"));
        assert!(err.to_string().contains("`p`"));
        assert_eq!(exit_code_for(&err), 2);
    }

    #[test]
    fn default_e_t_follows_problem() {
        let cook = resolve_config(&base_run_args()).unwrap();
        assert_eq!(cook.material.e_t, 250.0);
        let mut args = base_run_args();
        args.problem = "beam-a".into();
        let beam = resolve_config(&args).unwrap();
        assert_eq!(beam.material.e_t, 1500.0);
    }

    #[test]
    fn run_output_is_deterministic_apart_from_timing() {
        let mut args = base_run_args();
        args.element = "voronoi".into();
        args.density = 4;
        let strip = |s: String| {
            s.lines()
                .map(|l| l.rsplit_once(',').map(|(head, _)| head.to_string()).unwrap_or(l.into()))
                .collect::<Vec<_>>()
                .join("\n")
        };
        let a = strip(cmd_run(&args).unwrap());
        let b = strip(cmd_run(&args).unwrap());
        assert_eq!(a, b);
    }

    #[test]
    fn sweep_counts_rows_and_orders_by_value() {
        let mut args = SweepArgs {
            base: base_run_args(),
            axis: "p".into(),
            values: Some("1,10,100".into()),
            values_file: None,
            jobs: 1,
        };
        args.base.element = "quad,q1".into();
        args.base.density = 3;
        let text = cmd_sweep(&args).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 1 + 6);
        assert!(lines[0].starts_with("p,"));
        assert!(lines[0].ends_with(",status"));
        assert!(lines[1].starts_with("1,cook,quad"));
        assert!(lines[2].starts_with("1,cook,q1"));
        assert!(lines[3].starts_with("10,cook,quad"));
        for l in &lines[1..] {
            assert!(l.ends_with(",0"));
        }
    }

    #[test]
    fn sweep_rejects_angle_axis_on_curved_fields() {
        let mut args = SweepArgs {
            base: base_run_args(),
            axis: "angle".into(),
            values: Some("0,0.5".into()),
            values_file: None,
            jobs: 1,
        };
        args.base.fibre = "sinusoidal".into();
        assert!(matches!(cmd_sweep(&args), Err(Error::InvalidConfig { field, .. }) if field == "axis"));
    }

    #[test]
    fn emit_config_prepends_comment() {
        let mut args = base_run_args();
        args.emit_config = true;
        args.density = 3;
        let text = cmd_run(&args).unwrap();
        assert!(text.starts_with("# problem=cook element=quad density=3 E_T=250"));
    }

    #[test]
    fn mesh_command_round_trips() {
        let dir = std::env::temp_dir().join("vemti-cli-test");
        std::fs::create_dir_all(&dir).unwrap();
        let path = dir.join("v7.mesh");
        let args = MeshArgs {
            kind: "voronoi".into(),
            density: 7,
            seed: 42,
            lloyd: 0,
            domain: "unit".into(),
            output: path.clone(),
        };
        cmd_mesh(&args).unwrap();
        let text = std::fs::read_to_string(&path).unwrap();
        assert!(text.contains("C 49"));
        let mesh = crate::mesh::read_polymesh(&text).unwrap();
        assert_eq!(crate::mesh::write_polymesh(&mesh), text);
        std::fs::remove_file(&path).ok();
    }

    #[test]
    fn axis_application() {
        let base = resolve_config(&base_run_args()).unwrap();
        let dense = apply_axis(&base, SweepAxis::Density, 12.0);
        assert_eq!(dense.density, 12);
        let aniso = apply_axis(&base, SweepAxis::AnisotropyP, 1e4);
        assert_eq!(aniso.material.p, 1e4);
        let angled = apply_axis(&base, SweepAxis::Angle, 1.1);
        assert!(matches!(angled.fibre_kind, FibreKind::Constant(a) if a == 1.1));
    }
}
