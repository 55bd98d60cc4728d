//! Polygonal meshes of the unit square and their mapping onto benchmark
//! domains.
//!
//! All generators produce a [`PolyMesh`] on `[0,1]^2` with counter-clockwise
//! cells and side-tagged boundary edges; [`map_to_domain`] then moves the
//! vertices onto the problem geometry. The mesh density `d` follows the
//! convention `d = sqrt(n_elements)`.

mod generate;
mod io;

pub use generate::{gen_hex, gen_quad, gen_voronoi};
pub use io::{read_polymesh, write_polymesh};

use crate::{Error, Point2, Result, Vector2};

/// Which side of the (unit or mapped) domain a boundary edge lies on.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum BoundaryTag {
    Left,
    Right,
    Top,
    Bottom,
}

impl BoundaryTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            BoundaryTag::Left => "Left",
            BoundaryTag::Right => "Right",
            BoundaryTag::Top => "Top",
            BoundaryTag::Bottom => "Bottom",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "Left" => Some(BoundaryTag::Left),
            "Right" => Some(BoundaryTag::Right),
            "Top" => Some(BoundaryTag::Top),
            "Bottom" => Some(BoundaryTag::Bottom),
            _ => None,
        }
    }
}

/// Tagged boundary edge, stored in the owning cell's traversal direction.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BoundaryEdge {
    pub v0: usize,
    pub v1: usize,
    pub tag: BoundaryTag,
}

/// Vertices, counter-clockwise polygonal cells and tagged boundary edges.
#[derive(Debug, Clone, PartialEq)]
pub struct PolyMesh {
    pub vertices: Vec<Point2>,
    pub cells: Vec<Vec<usize>>,
    pub boundary_edges: Vec<BoundaryEdge>,
}

impl PolyMesh {
    pub fn n_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn n_cells(&self) -> usize {
        self.cells.len()
    }

    /// Index of the vertex nearest to `point` and its distance.
    pub fn nearest_vertex(&self, point: Point2) -> (usize, f64) {
        let mut best = (0usize, f64::INFINITY);
        for (i, v) in self.vertices.iter().enumerate() {
            let dist = (v - point).norm();
            if dist < best.1 {
                best = (i, dist);
            }
        }
        best
    }

    /// Vertex coordinates of cell `cell` in ring order.
    pub fn cell_vertices(&self, cell: usize) -> Vec<Point2> {
        self.cells[cell].iter().map(|&i| self.vertices[i]).collect()
    }

    /// Boundary vertex indices carrying the given tag.
    pub fn tagged_vertices(&self, tag: BoundaryTag) -> Vec<usize> {
        let mut out: Vec<usize> = self
            .boundary_edges
            .iter()
            .filter(|e| e.tag == tag)
            .flat_map(|e| [e.v0, e.v1])
            .collect();
        out.sort_unstable();
        out.dedup();
        out
    }
}

/// Per-element geometric quantities used by the element kernels.
#[derive(Debug, Clone)]
pub struct ElementGeometry {
    /// Polygon area |E|.
    pub area: f64,
    /// Polygon centroid.
    pub centroid: Point2,
    /// Diameter d_E: maximum pairwise vertex distance.
    pub diameter: f64,
    /// Outward unit normal of edge (v_i, v_{i+1}).
    pub normals: Vec<Vector2>,
    /// Length of edge (v_i, v_{i+1}).
    pub edge_lengths: Vec<f64>,
}

/// Shoelace area, polygon centroid, diameter, and per-edge outward normals
/// for cell `cell`.
pub fn element_geometry(mesh: &PolyMesh, cell: usize) -> Result<ElementGeometry> {
    polygon_geometry(&mesh.cell_vertices(cell), cell)
}

/// Same quantities for a free-standing CCW polygon.
pub fn polygon_geometry(verts: &[Point2], cell: usize) -> Result<ElementGeometry> {
    let n = verts.len();
    let mut twice_area = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for i in 0..n {
        let a = verts[i];
        let b = verts[(i + 1) % n];
        let cross = a.x * b.y - b.x * a.y;
        twice_area += cross;
        cx += (a.x + b.x) * cross;
        cy += (a.y + b.y) * cross;
    }
    let area = 0.5 * twice_area;
    if area.abs() < 1e-14 {
        return Err(Error::ZeroArea { cell, area });
    }
    let centroid = Point2::new(cx / (6.0 * area), cy / (6.0 * area));
    let mut diameter = 0.0f64;
    for i in 0..n {
        for j in (i + 1)..n {
            diameter = diameter.max((verts[i] - verts[j]).norm());
        }
    }
    let mut normals = Vec::with_capacity(n);
    let mut edge_lengths = Vec::with_capacity(n);
    let orient = area.signum();
    for i in 0..n {
        let e = verts[(i + 1) % n] - verts[i];
        let len = e.norm();
        // CCW ring: interior lies to the left, so (dy, -dx) points outward.
        normals.push(Vector2::new(e.y, -e.x) * (orient / len));
        edge_lengths.push(len);
    }
    Ok(ElementGeometry { area: area.abs(), centroid, diameter, normals, edge_lengths })
}

/// Benchmark domains the unit-square meshes are mapped onto.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum DomainSpec {
    /// Identity map.
    UnitSquare,
    /// Tapered panel with corners (0,0), (48,44), (48,60), (0,44).
    Cook,
    /// Rectangle [0,10] x [-1,1].
    Beam,
}

impl DomainSpec {
    /// Image of a unit-square point under the domain map.
    pub fn map_point(&self, p: Point2) -> Point2 {
        match self {
            DomainSpec::UnitSquare => p,
            // Bilinear interpolation of the four target corners.
            DomainSpec::Cook => Point2::new(
                48.0 * p.x,
                44.0 * p.x + 44.0 * p.y - 28.0 * p.x * p.y,
            ),
            DomainSpec::Beam => Point2::new(10.0 * p.x, 2.0 * p.y - 1.0),
        }
    }

    pub fn area(&self) -> f64 {
        match self {
            DomainSpec::UnitSquare => 1.0,
            DomainSpec::Cook => 1440.0,
            DomainSpec::Beam => 20.0,
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            DomainSpec::UnitSquare => "unit",
            DomainSpec::Cook => "cook",
            DomainSpec::Beam => "beam",
        }
    }
}

/// Transforms a unit-square mesh onto `domain`. Connectivity and tags are
/// untouched; cell orientations are re-checked afterwards.
pub fn map_to_domain(mesh: &PolyMesh, domain: DomainSpec) -> Result<PolyMesh> {
    for v in &mesh.vertices {
        if !(-1e-12..=1.0 + 1e-12).contains(&v.x) || !(-1e-12..=1.0 + 1e-12).contains(&v.y) {
            return Err(Error::MeshInvalid(format!(
                "vertex ({}, {}) lies outside the unit square",
                v.x, v.y
            )));
        }
    }
    let mapped = PolyMesh {
        vertices: mesh.vertices.iter().map(|&v| domain.map_point(v)).collect(),
        cells: mesh.cells.clone(),
        boundary_edges: mesh.boundary_edges.clone(),
    };
    for (i, cell) in mapped.cells.iter().enumerate() {
        if signed_area(&mapped.vertices, cell) <= 0.0 {
            return Err(Error::InvertedCell { cell: i });
        }
    }
    Ok(mapped)
}

fn signed_area(vertices: &[Point2], ring: &[usize]) -> f64 {
    let n = ring.len();
    let mut twice = 0.0;
    for i in 0..n {
        let a = vertices[ring[i]];
        let b = vertices[ring[(i + 1) % n]];
        twice += a.x * b.y - b.x * a.y;
    }
    0.5 * twice
}

/// Structural validation: simple CCW cells with at least 3 distinct
/// vertices, watertight edge sharing, boundary list consistency and
/// (optionally) the expected total area to 1e-10 relative.
pub fn validate(mesh: &PolyMesh, expected_area: Option<f64>) -> Result<()> {
    use std::collections::HashMap;

    if mesh.cells.is_empty() {
        return Err(Error::MeshInvalid("mesh has no cells".into()));
    }
    let mut area_sum = 0.0;
    for (ci, ring) in mesh.cells.iter().enumerate() {
        if ring.len() < 3 {
            return Err(Error::MeshInvalid(format!("cell {ci} has fewer than 3 vertices")));
        }
        let mut distinct = ring.clone();
        distinct.sort_unstable();
        distinct.dedup();
        if distinct.len() != ring.len() {
            return Err(Error::MeshInvalid(format!("cell {ci} repeats a vertex")));
        }
        for &v in ring {
            if v >= mesh.vertices.len() {
                return Err(Error::MeshInvalid(format!("cell {ci} references missing vertex {v}")));
            }
        }
        let area = signed_area(&mesh.vertices, ring);
        if area <= 0.0 {
            return Err(Error::MeshInvalid(format!("cell {ci} is not counter-clockwise (area {area})")));
        }
        if !is_simple(&mesh.vertices, ring) {
            return Err(Error::MeshInvalid(format!("cell {ci} is self-intersecting")));
        }
        area_sum += area;
    }

    // Edge incidence: interior edges twice (opposite directions), boundary once.
    let mut counts: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for ring in &mesh.cells {
        let n = ring.len();
        for i in 0..n {
            let a = ring[i];
            let b = ring[(i + 1) % n];
            let key = (a.min(b), a.max(b));
            let slot = counts.entry(key).or_insert((0, 0));
            if a < b {
                slot.0 += 1;
            } else {
                slot.1 += 1;
            }
        }
    }
    let mut boundary_pairs: Vec<(usize, usize)> = Vec::new();
    for (&key, &(fwd, rev)) in &counts {
        match fwd + rev {
            1 => boundary_pairs.push(key),
            2 => {
                if fwd != 1 || rev != 1 {
                    return Err(Error::MeshInvalid(format!(
                        "interior edge {key:?} traversed twice in the same direction"
                    )));
                }
            }
            n => {
                return Err(Error::MeshInvalid(format!("edge {key:?} shared by {n} cells")));
            }
        }
    }
    boundary_pairs.sort_unstable();
    let mut listed: Vec<(usize, usize)> = mesh
        .boundary_edges
        .iter()
        .map(|e| (e.v0.min(e.v1), e.v0.max(e.v1)))
        .collect();
    listed.sort_unstable();
    if listed != boundary_pairs {
        return Err(Error::MeshInvalid(format!(
            "boundary edge list ({}) disagrees with mesh topology ({})",
            listed.len(),
            boundary_pairs.len()
        )));
    }

    if let Some(expected) = expected_area {
        if (area_sum - expected).abs() > 1e-10 * expected.abs().max(1.0) {
            return Err(Error::MeshInvalid(format!(
                "cell areas sum to {area_sum}, expected {expected}"
            )));
        }
    }
    Ok(())
}

/// Simplicity: no two non-adjacent edges of the ring intersect.
fn is_simple(vertices: &[Point2], ring: &[usize]) -> bool {
    let n = ring.len();
    let seg = |i: usize| (vertices[ring[i]], vertices[ring[(i + 1) % n]]);
    for i in 0..n {
        for j in (i + 1)..n {
            // Skip adjacent edges (share an endpoint).
            if j == i + 1 || (i == 0 && j == n - 1) {
                continue;
            }
            let (a, b) = seg(i);
            let (c, d) = seg(j);
            if segments_intersect(a, b, c, d) {
                return false;
            }
        }
    }
    true
}

fn segments_intersect(a: Point2, b: Point2, c: Point2, d: Point2) -> bool {
    let cross = |o: Point2, p: Point2, q: Point2| (p.x - o.x) * (q.y - o.y) - (p.y - o.y) * (q.x - o.x);
    let d1 = cross(c, d, a);
    let d2 = cross(c, d, b);
    let d3 = cross(a, b, c);
    let d4 = cross(a, b, d);
    ((d1 > 0.0 && d2 < 0.0) || (d1 < 0.0 && d2 > 0.0))
        && ((d3 > 0.0 && d4 < 0.0) || (d3 < 0.0 && d4 > 0.0))
}
