//! Global assembly, boundary conditions, sparse solve and probing.
//!
//! The discrete problem is assembled element by element, with each element's
//! elasticity tensor built from its averaged fibre direction. Dirichlet
//! constraints are applied by symmetric row/column elimination with load
//! lifting, which keeps the reduced system positive definite in the
//! near-incompressible regime.

use std::collections::{BTreeMap, HashMap};
use std::sync::Arc;

use nalgebra::DMatrix;

use crate::constitutive::{build_stiffness, engineering_to_ti, EngineeringParams};
use crate::fem::{q1_stiffness, q1_stiffness_with, q2_edge_load, q2_stiffness, q2_stiffness_with, QuadElement};
use crate::fibre::{direction_at, element_direction, AveragingStrategy, FibreField};
use crate::mesh::{element_geometry, BoundaryTag, PolyMesh};
use crate::sparse::{pcg_jacobi, reverse_cuthill_mckee, CsrMatrix, EnvelopeCholesky};
use crate::vem::element_stiffness;
use crate::{Error, Point2, Result, Vector2};

/// Discretization choice. `Quad`, `Hex` and `Voronoi` run the virtual
/// element kernels on the matching mesh family; `Q1`/`Q2` are the conforming
/// references and require all-quad meshes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ElementKind {
    Quad,
    Hex,
    Voronoi,
    Q1,
    Q2,
}

impl ElementKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            ElementKind::Quad => "quad",
            ElementKind::Hex => "hex",
            ElementKind::Voronoi => "voronoi",
            ElementKind::Q1 => "q1",
            ElementKind::Q2 => "q2",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "quad" => Some(ElementKind::Quad),
            "hex" => Some(ElementKind::Hex),
            "voronoi" => Some(ElementKind::Voronoi),
            "q1" => Some(ElementKind::Q1),
            "q2" => Some(ElementKind::Q2),
            _ => None,
        }
    }

    pub fn is_vem(&self) -> bool {
        matches!(self, ElementKind::Quad | ElementKind::Hex | ElementKind::Voronoi)
    }

    /// Mesh family this kind runs on.
    pub fn needs_all_quads(&self) -> bool {
        matches!(self, ElementKind::Quad | ElementKind::Q1 | ElementKind::Q2)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Direct,
    Cg,
}

impl SolverKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            SolverKind::Direct => "direct",
            SolverKind::Cg => "cg",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "direct" => Some(SolverKind::Direct),
            "cg" => Some(SolverKind::Cg),
            _ => None,
        }
    }
}

/// Fibre field plus the element-level averaging strategy. When
/// `per_gauss_point` is set, Q1/Q2 evaluate the direction at each quadrature
/// point instead (sensitivity mode; VEM always averages).
#[derive(Debug, Clone, Copy)]
pub struct FibreConfig {
    pub field: FibreField,
    pub strategy: AveragingStrategy,
    pub per_gauss_point: bool,
}

pub type PointFn = Arc<dyn Fn(Point2) -> Vector2 + Send + Sync>;

#[derive(Clone)]
pub enum DirichletTarget {
    /// Every node on boundary edges carrying the tag.
    Tag(BoundaryTag),
    /// The mesh vertex nearest to the point (a pin).
    NearPoint(Point2),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Components {
    Both,
    XOnly,
    YOnly,
}

#[derive(Clone)]
pub struct DirichletBc {
    pub target: DirichletTarget,
    pub components: Components,
    pub value: PointFn,
}

impl DirichletBc {
    /// Fully fixes every node on the tagged edges.
    pub fn fixed(tag: BoundaryTag) -> Self {
        DirichletBc {
            target: DirichletTarget::Tag(tag),
            components: Components::Both,
            value: Arc::new(|_| Vector2::zeros()),
        }
    }

    /// Constrains one displacement component to zero on the tagged edges.
    pub fn roller(tag: BoundaryTag, components: Components) -> Self {
        DirichletBc { target: DirichletTarget::Tag(tag), components, value: Arc::new(|_| Vector2::zeros()) }
    }

    /// Pins both components to zero at the vertex nearest `point`.
    pub fn pin(point: Point2) -> Self {
        DirichletBc {
            target: DirichletTarget::NearPoint(point),
            components: Components::Both,
            value: Arc::new(|_| Vector2::zeros()),
        }
    }

    /// Prescribes `g(x)` on the tagged edges.
    pub fn function(tag: BoundaryTag, value: PointFn) -> Self {
        DirichletBc { target: DirichletTarget::Tag(tag), components: Components::Both, value }
    }
}

#[derive(Clone)]
pub struct NeumannBc {
    pub tag: BoundaryTag,
    pub traction: PointFn,
}

/// Boundary value problem: mesh, material, fibre treatment and boundary
/// data. `density` is the mesh density d entering the varying weight.
#[derive(Clone)]
pub struct BvpSpec {
    pub mesh: PolyMesh,
    pub material: EngineeringParams,
    pub fibre: FibreConfig,
    pub density: u32,
    pub dirichlet: Vec<DirichletBc>,
    pub neumann: Vec<NeumannBc>,
    /// Body force; zero in every benchmark but carried in the data model.
    pub body_force: Option<PointFn>,
}

/// Displacement probe snapped to the nearest mesh vertex.
#[derive(Debug, Clone, Copy)]
pub struct ProbeRecord {
    pub point: Point2,
    pub vertex: usize,
    pub snap_distance: f64,
    pub u: f64,
    pub v: f64,
}

/// Assembled (and, after [`solve`], solved) linear system.
pub struct SystemState {
    /// Node positions: mesh vertices first, then Q2 edge/center nodes.
    pub nodes: Vec<Point2>,
    /// Number of leading entries of `nodes` that are mesh vertices.
    pub n_mesh_vertices: usize,
    pub element_kind: ElementKind,
    /// Full (unconstrained) stiffness.
    pub k_full: CsrMatrix,
    /// Applied loads, without lifting.
    pub f_full: Vec<f64>,
    /// Sorted (dof, prescribed value) pairs.
    pub constraints: Vec<(usize, f64)>,
    /// Solution over all dofs, prescribed values included.
    pub u: Option<Vec<f64>>,
    /// Relative residual of the reduced solve.
    pub residual: Option<f64>,
    /// Count of fibre-averaging fallbacks to the centroidal direction.
    pub fibre_fallbacks: usize,
}

impl SystemState {
    pub fn n_dofs(&self) -> usize {
        self.f_full.len()
    }

    /// Displacement at the mesh vertex nearest to `point`.
    pub fn probe(&self, point: Point2) -> ProbeRecord {
        let u = self.u.as_ref().expect("probe requires a solved state");
        let mut best = (0usize, f64::INFINITY);
        for (i, v) in self.nodes[..self.n_mesh_vertices].iter().enumerate() {
            let dist = (v - point).norm();
            if dist < best.1 {
                best = (i, dist);
            }
        }
        ProbeRecord {
            point,
            vertex: best.0,
            snap_distance: best.1,
            u: u[2 * best.0],
            v: u[2 * best.0 + 1],
        }
    }

    /// Residual forces K u - F at every dof; at constrained dofs these are
    /// the support reactions.
    pub fn reactions(&self) -> Vec<f64> {
        let u = self.u.as_ref().expect("reactions require a solved state");
        let mut ku = vec![0.0; u.len()];
        self.k_full.matvec(u, &mut ku);
        ku.iter().zip(&self.f_full).map(|(a, b)| a - b).collect()
    }
}

/// Assembles the global stiffness, load vector and constraint set.
pub fn assemble(spec: &BvpSpec, kind: ElementKind) -> Result<SystemState> {
    let mesh = &spec.mesh;
    if kind.needs_all_quads() && mesh.cells.iter().any(|c| c.len() != 4) {
        return Err(Error::IncompatibleElementKind {
            kind: kind.as_str().into(),
            reason: "mesh contains non-quadrilateral cells".into(),
        });
    }
    let consts = engineering_to_ti(&spec.material)?;
    let mu = consts.mu_t;

    // Node table: mesh vertices, then (for Q2) edge midpoints and centers.
    let nv = mesh.vertices.len();
    let mut nodes: Vec<Point2> = mesh.vertices.clone();
    let mut edge_mid: HashMap<(usize, usize), usize> = HashMap::new();
    let mut cell_nodes: Vec<Vec<usize>> = Vec::with_capacity(mesh.cells.len());
    if kind == ElementKind::Q2 {
        for ring in &mesh.cells {
            let mut ids = ring.clone();
            for k in 0..4 {
                let (a, b) = (ring[k], ring[(k + 1) % 4]);
                let key = (a.min(b), a.max(b));
                let mid = *edge_mid.entry(key).or_insert_with(|| {
                    nodes.push(nalgebra::center(&mesh.vertices[a], &mesh.vertices[b]));
                    nodes.len() - 1
                });
                ids.push(mid);
            }
            let elem = QuadElement::new([
                mesh.vertices[ring[0]],
                mesh.vertices[ring[1]],
                mesh.vertices[ring[2]],
                mesh.vertices[ring[3]],
            ]);
            nodes.push(elem.map_point(0.0, 0.0));
            ids.push(nodes.len() - 1);
            cell_nodes.push(ids);
        }
    } else {
        cell_nodes.extend(mesh.cells.iter().cloned());
    }
    let ndof = 2 * nodes.len();

    // Element loop.
    let mut triplets: Vec<(usize, usize, f64)> = Vec::new();
    let mut fibre_fallbacks = 0usize;
    for ci in 0..mesh.cells.len() {
        let verts = mesh.cell_vertices(ci);
        let geom = element_geometry(mesh, ci)?;
        let avg = element_direction(&spec.fibre.field, spec.fibre.strategy, geom.centroid, &verts, spec.density);
        if avg.fallback {
            fibre_fallbacks += 1;
        }
        let c = build_stiffness(&consts, &avg.dir)?;
        let ke: DMatrix<f64> = if kind.is_vem() {
            element_stiffness(&geom, &verts, &c, mu)?.k
        } else {
            let elem = QuadElement::new([verts[0], verts[1], verts[2], verts[3]]);
            if spec.fibre.per_gauss_point {
                let field = spec.fibre.field;
                let c_at = move |x: Point2| {
                    *build_stiffness(&consts, &direction_at(&field, x))
                        .expect("unit direction")
                        .matrix()
                };
                match kind {
                    ElementKind::Q1 => q1_stiffness_with(&elem, &c_at)?,
                    _ => q2_stiffness_with(&elem, &c_at)?,
                }
            } else {
                match kind {
                    ElementKind::Q1 => q1_stiffness(&elem, &c)?,
                    _ => q2_stiffness(&elem, &c)?,
                }
            }
        };
        let ids = &cell_nodes[ci];
        for (a, &na) in ids.iter().enumerate() {
            for (b, &nb) in ids.iter().enumerate() {
                for ca in 0..2 {
                    for cb in 0..2 {
                        let v = ke[(2 * a + ca, 2 * b + cb)];
                        if v != 0.0 {
                            triplets.push((2 * na + ca, 2 * nb + cb, v));
                        }
                    }
                }
            }
        }
    }
    let k_full = CsrMatrix::from_triplets(ndof, &triplets);

    // Applied loads: edge tractions against the element traces.
    let mut f_full = vec![0.0; ndof];
    for bc in &spec.neumann {
        for be in mesh.boundary_edges.iter().filter(|e| e.tag == bc.tag) {
            let (pa, pb) = (mesh.vertices[be.v0], mesh.vertices[be.v1]);
            if kind == ElementKind::Q2 {
                let key = (be.v0.min(be.v1), be.v0.max(be.v1));
                let mid = edge_mid[&key];
                let loads = q2_edge_load(pa, pb, &*bc.traction);
                for (node, load) in [(be.v0, loads[0]), (mid, loads[1]), (be.v1, loads[2])] {
                    f_full[2 * node] += load.x;
                    f_full[2 * node + 1] += load.y;
                }
            } else {
                // Exact consistent load of a linearly varying traction on a
                // linear trace: |e| (2 t_a + t_b) / 6 at a, symmetric at b.
                let len = (pb - pa).norm();
                let (ta, tb) = ((bc.traction)(pa), (bc.traction)(pb));
                let fa = len * (2.0 * ta + tb) / 6.0;
                let fb = len * (ta + 2.0 * tb) / 6.0;
                f_full[2 * be.v0] += fa.x;
                f_full[2 * be.v0 + 1] += fa.y;
                f_full[2 * be.v1] += fb.x;
                f_full[2 * be.v1 + 1] += fb.y;
            }
        }
    }
    if let Some(body) = &spec.body_force {
        for ci in 0..mesh.cells.len() {
            let geom = element_geometry(mesh, ci)?;
            let ring = &mesh.cells[ci];
            // First-order vertex rule; adequate for the (unused) body-force path.
            let share = (body)(geom.centroid) * (geom.area / ring.len() as f64);
            for &vtx in ring {
                f_full[2 * vtx] += share.x;
                f_full[2 * vtx + 1] += share.y;
            }
        }
    }

    // Dirichlet constraints; first writer wins on shared dofs.
    let mut cmap: BTreeMap<usize, f64> = BTreeMap::new();
    for bc in &spec.dirichlet {
        let node_ids: Vec<usize> = match &bc.target {
            DirichletTarget::Tag(tag) => {
                let mut ids = Vec::new();
                for be in mesh.boundary_edges.iter().filter(|e| e.tag == *tag) {
                    ids.push(be.v0);
                    ids.push(be.v1);
                    if kind == ElementKind::Q2 {
                        ids.push(edge_mid[&(be.v0.min(be.v1), be.v0.max(be.v1))]);
                    }
                }
                ids.sort_unstable();
                ids.dedup();
                ids
            }
            DirichletTarget::NearPoint(p) => vec![mesh.nearest_vertex(*p).0],
        };
        for id in node_ids {
            let g = (bc.value)(nodes[id]);
            if bc.components != Components::YOnly {
                cmap.entry(2 * id).or_insert(g.x);
            }
            if bc.components != Components::XOnly {
                cmap.entry(2 * id + 1).or_insert(g.y);
            }
        }
    }
    if cmap.is_empty() {
        return Err(Error::UnconstrainedSystem);
    }

    Ok(SystemState {
        nodes,
        n_mesh_vertices: nv,
        element_kind: kind,
        k_full,
        f_full,
        constraints: cmap.into_iter().collect(),
        u: None,
        residual: None,
        fibre_fallbacks,
    })
}

/// Eliminates constraints symmetrically, solves the reduced SPD system and
/// scatters the solution back. Direct envelope Cholesky under RCM ordering
/// by default; Jacobi-PCG at relative residual 1e-10 as the fallback path.
pub fn solve(mut state: SystemState, solver: SolverKind) -> Result<SystemState> {
    let ndof = state.f_full.len();
    let mut map = vec![usize::MAX; ndof];
    let mut prescribed = vec![0.0; ndof];
    let mut is_constrained = vec![false; ndof];
    for &(dof, val) in &state.constraints {
        is_constrained[dof] = true;
        prescribed[dof] = val;
    }
    let free: Vec<usize> = (0..ndof).filter(|&i| !is_constrained[i]).collect();
    for (r, &i) in free.iter().enumerate() {
        map[i] = r;
    }

    // Reduced rhs with lifting: f_i - sum_j K_ij g_j over constrained j.
    let mut f_red = Vec::with_capacity(free.len());
    for &i in &free {
        let mut fi = state.f_full[i];
        let (cols, vals) = state.k_full.row(i);
        for (c, v) in cols.iter().zip(vals) {
            if is_constrained[*c] {
                fi -= v * prescribed[*c];
            }
        }
        f_red.push(fi);
    }
    let k_red = state.k_full.principal_submatrix(&free, &map);

    let u_red = match solver {
        SolverKind::Direct => {
            let order = reverse_cuthill_mckee(&k_red);
            let chol = EnvelopeCholesky::factor(&k_red, &order)?;
            let mut x = chol.solve(&f_red);
            // Refinement sweeps tighten ill-conditioned near-incompressible
            // solves well past the residual contract; stop on stagnation.
            let norm_f = norm(&f_red).max(f64::MIN_POSITIVE);
            let mut prev = f64::INFINITY;
            for _ in 0..6 {
                let r = residual_vec(&k_red, &x, &f_red);
                let rn = norm(&r);
                if rn <= 1e-15 * norm_f || rn >= 0.5 * prev {
                    break;
                }
                prev = rn;
                let dx = chol.solve(&r);
                for (xi, di) in x.iter_mut().zip(&dx) {
                    *xi += di;
                }
            }
            x
        }
        SolverKind::Cg => {
            let max_iter = 200 * free.len() + 1000;
            pcg_jacobi(&k_red, &f_red, 1e-10, max_iter)?.0
        }
    };

    let rel = norm(&residual_vec(&k_red, &u_red, &f_red)) / norm(&f_red).max(f64::MIN_POSITIVE);
    let mut u = prescribed;
    for (r, &i) in free.iter().enumerate() {
        u[i] = u_red[r];
    }
    state.u = Some(u);
    state.residual = Some(rel);
    Ok(state)
}

fn residual_vec(a: &CsrMatrix, x: &[f64], b: &[f64]) -> Vec<f64> {
    let mut ax = vec![0.0; b.len()];
    a.matvec(x, &mut ax);
    b.iter().zip(&ax).map(|(bi, ai)| bi - ai).collect()
}

fn norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum::<f64>().sqrt()
}
