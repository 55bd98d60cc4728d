//! Mesh generators on the unit square: structured quads, hexagon-dominant
//! tilings, and Lloyd-relaxed clipped Voronoi diagrams.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{BoundaryEdge, BoundaryTag, PolyMesh};
use crate::{Error, Point2, Result, Vector2};

/// d x d structured grid of unit-square quadrilaterals.
pub fn gen_quad(d: u32) -> Result<PolyMesh> {
    if d < 1 {
        return Err(Error::InvalidConfig {
            field: "density".into(),
            message: "quad meshes need d >= 1".into(),
        });
    }
    let d = d as usize;
    let n1 = d + 1;
    let h = 1.0 / d as f64;
    let mut vertices = Vec::with_capacity(n1 * n1);
    for i in 0..n1 {
        for j in 0..n1 {
            vertices.push(Point2::new(j as f64 * h, i as f64 * h));
        }
    }
    let vid = |i: usize, j: usize| i * n1 + j;
    let mut cells = Vec::with_capacity(d * d);
    for i in 0..d {
        for j in 0..d {
            cells.push(vec![vid(i, j), vid(i, j + 1), vid(i + 1, j + 1), vid(i + 1, j)]);
        }
    }
    let mut boundary_edges = Vec::with_capacity(4 * d);
    for j in 0..d {
        boundary_edges.push(BoundaryEdge { v0: vid(0, j), v1: vid(0, j + 1), tag: BoundaryTag::Bottom });
        boundary_edges.push(BoundaryEdge { v0: vid(d, j + 1), v1: vid(d, j), tag: BoundaryTag::Top });
    }
    for i in 0..d {
        boundary_edges.push(BoundaryEdge { v0: vid(i + 1, 0), v1: vid(i, 0), tag: BoundaryTag::Left });
        boundary_edges.push(BoundaryEdge { v0: vid(i, d), v1: vid(i + 1, d), tag: BoundaryTag::Right });
    }
    Ok(PolyMesh { vertices, cells, boundary_edges })
}

/// Hexagon-dominant tiling: the clipped Voronoi diagram of a brick-offset
/// point lattice. Interior cells are hexagons; rows clipped by the square
/// boundary degenerate to pentagons and quads. Exactly d^2 cells.
pub fn gen_hex(d: u32) -> Result<PolyMesh> {
    if d < 2 {
        return Err(Error::InvalidConfig {
            field: "density".into(),
            message: "hex meshes need d >= 2".into(),
        });
    }
    let n = d as usize;
    let h = 1.0 / d as f64;
    let mut seeds = Vec::with_capacity(n * n);
    for row in 0..n {
        let y = (row as f64 + 0.5) * h;
        let shift = if row % 2 == 0 { 0.25 } else { 0.75 };
        for col in 0..n {
            seeds.push(Point2::new((col as f64 + shift) * h, y));
        }
    }
    build_clipped_voronoi(&seeds)
}

/// Clipped Voronoi diagram of d^2 pseudo-random seeds after `lloyd_iters`
/// centroidal relaxation sweeps. Deterministic for fixed inputs.
pub fn gen_voronoi(d: u32, seed: u64, lloyd_iters: u32) -> Result<PolyMesh> {
    if d < 2 {
        return Err(Error::InvalidConfig {
            field: "density".into(),
            message: "voronoi meshes need d >= 2".into(),
        });
    }
    let n = (d as usize) * (d as usize);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut seeds: Vec<Point2> = (0..n)
        .map(|_| Point2::new(rng.gen::<f64>(), rng.gen::<f64>()))
        .collect();
    for _ in 0..lloyd_iters {
        let cells = raw_cells(&seeds)?;
        for (i, poly) in cells.iter().enumerate() {
            seeds[i] = polygon_centroid(poly);
        }
    }
    build_clipped_voronoi(&seeds)
}

fn unit_square() -> Vec<Point2> {
    vec![
        Point2::new(0.0, 0.0),
        Point2::new(1.0, 0.0),
        Point2::new(1.0, 1.0),
        Point2::new(0.0, 1.0),
    ]
}

/// One Voronoi cell per seed, clipped to the unit square, as loose polygons.
fn raw_cells(seeds: &[Point2]) -> Result<Vec<Vec<Point2>>> {
    let grid = SeedGrid::new(seeds);
    let mut cells = Vec::with_capacity(seeds.len());
    for i in 0..seeds.len() {
        let poly = clip_cell(i, seeds, &grid);
        let area = loose_area(&poly);
        if poly.len() < 3 || area < 1e-12 {
            return Err(Error::DegenerateCell { cell: i, area });
        }
        cells.push(poly);
    }
    Ok(cells)
}

/// Welds the per-seed polygons into a shared-vertex [`PolyMesh`] and tags
/// boundary edges by the square side they lie on.
fn build_clipped_voronoi(seeds: &[Point2]) -> Result<PolyMesh> {
    let raw = raw_cells(seeds)?;
    let mut pool = VertexPool::new(1e-9);
    let mut cells = Vec::with_capacity(raw.len());
    for (ci, poly) in raw.iter().enumerate() {
        let mut ring: Vec<usize> = poly.iter().map(|&p| pool.insert(p)).collect();
        ring.dedup();
        if ring.len() > 1 && ring[0] == *ring.last().unwrap() {
            ring.pop();
        }
        if ring.len() < 3 {
            return Err(Error::DegenerateCell { cell: ci, area: loose_area(poly) });
        }
        cells.push(ring);
    }
    let vertices = pool.points;
    let boundary_edges = tag_boundary_edges(&vertices, &cells)?;
    Ok(PolyMesh { vertices, cells, boundary_edges })
}

fn tag_boundary_edges(vertices: &[Point2], cells: &[Vec<usize>]) -> Result<Vec<BoundaryEdge>> {
    use std::collections::HashMap;
    let mut counts: HashMap<(usize, usize), usize> = HashMap::new();
    let mut directed: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for ring in cells {
        let n = ring.len();
        for k in 0..n {
            let (a, b) = (ring[k], ring[(k + 1) % n]);
            *counts.entry((a.min(b), a.max(b))).or_insert(0) += 1;
            directed.insert((a.min(b), a.max(b)), (a, b));
        }
    }
    let mut edges = Vec::new();
    let mut keys: Vec<_> = counts.iter().filter(|(_, &c)| c == 1).map(|(&k, _)| k).collect();
    keys.sort_unstable();
    for key in keys {
        let (a, b) = directed[&key];
        let (pa, pb) = (vertices[a], vertices[b]);
        let tol = 1e-9;
        let tag = if pa.x.abs() < tol && pb.x.abs() < tol {
            BoundaryTag::Left
        } else if (pa.x - 1.0).abs() < tol && (pb.x - 1.0).abs() < tol {
            BoundaryTag::Right
        } else if pa.y.abs() < tol && pb.y.abs() < tol {
            BoundaryTag::Bottom
        } else if (pa.y - 1.0).abs() < tol && (pb.y - 1.0).abs() < tol {
            BoundaryTag::Top
        } else {
            return Err(Error::MeshInvalid(format!(
                "boundary edge ({pa:?}, {pb:?}) does not lie on a square side"
            )));
        };
        edges.push(BoundaryEdge { v0: a, v1: b, tag });
    }
    Ok(edges)
}

/// Half-plane clipping of the unit square against bisectors with nearby
/// seeds, nearest first. A candidate at distance >= 2 r_max from the seed,
/// with r_max the current farthest cell vertex, cannot cut and terminates
/// the scan.
fn clip_cell(i: usize, seeds: &[Point2], grid: &SeedGrid) -> Vec<Point2> {
    let site = seeds[i];
    let mut poly: Vec<Point2> = unit_square();
    let mut ring = 0usize;
    let mut candidates: Vec<(f64, usize)> = Vec::new();
    loop {
        // Every bucket is within Chebyshev distance n of the site's bucket.
        if ring > grid.n {
            break;
        }
        // Seeds in buckets on ring `ring` are at least (ring - 1) * h away;
        // beyond 2 r_max their bisectors cannot reach the cell.
        let r_max = poly.iter().map(|v| (v - site).norm()).fold(0.0f64, f64::max);
        if ring as f64 - 1.0 >= 2.0 * r_max / grid.h {
            break;
        }
        candidates.clear();
        grid.ring_members(site, ring, |j| {
            if j != i {
                candidates.push(((seeds[j] - site).norm(), j));
            }
        });
        candidates.sort_by(|a, b| a.0.partial_cmp(&b.0).unwrap().then(a.1.cmp(&b.1)));
        for &(dist, j) in &candidates {
            let r_now = poly.iter().map(|v| (v - site).norm()).fold(0.0f64, f64::max);
            if dist >= 2.0 * r_now {
                break;
            }
            let normal = seeds[j] - site;
            let offset = normal.dot(&nalgebra::center(&site, &seeds[j]).coords);
            poly = clip_halfplane(&poly, normal, offset);
            if poly.is_empty() {
                return poly;
            }
        }
        ring += 1;
    }
    poly
}

/// Keeps the part of `poly` with `normal . x <= offset` (Sutherland-Hodgman).
fn clip_halfplane(poly: &[Point2], normal: Vector2, offset: f64) -> Vec<Point2> {
    let mut out = Vec::with_capacity(poly.len() + 1);
    let n = poly.len();
    for k in 0..n {
        let cur = poly[k];
        let next = poly[(k + 1) % n];
        let s_cur = normal.dot(&cur.coords) - offset;
        let s_next = normal.dot(&next.coords) - offset;
        if s_cur <= 0.0 {
            out.push(cur);
        }
        // Insert the crossing only for a strict sign change; an endpoint
        // exactly on the line is kept by its own s <= 0 test.
        if (s_cur < 0.0 && s_next > 0.0) || (s_cur > 0.0 && s_next < 0.0) {
            let t = s_cur / (s_cur - s_next);
            out.push(cur + t * (next - cur));
        }
    }
    out
}

fn loose_area(poly: &[Point2]) -> f64 {
    let n = poly.len();
    let mut twice = 0.0;
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        twice += a.x * b.y - b.x * a.y;
    }
    0.5 * twice
}

fn polygon_centroid(poly: &[Point2]) -> Point2 {
    let n = poly.len();
    let mut twice = 0.0;
    let mut cx = 0.0;
    let mut cy = 0.0;
    for k in 0..n {
        let a = poly[k];
        let b = poly[(k + 1) % n];
        let cross = a.x * b.y - b.x * a.y;
        twice += cross;
        cx += (a.x + b.x) * cross;
        cy += (a.y + b.y) * cross;
    }
    Point2::new(cx / (3.0 * twice), cy / (3.0 * twice))
}

/// Uniform bucket grid over the unit square for nearest-seed candidate scans.
struct SeedGrid {
    n: usize,
    h: f64,
    buckets: Vec<Vec<usize>>,
}

impl SeedGrid {
    fn new(seeds: &[Point2]) -> Self {
        let n = (seeds.len() as f64).sqrt().ceil().max(1.0) as usize;
        let h = 1.0 / n as f64;
        let mut buckets = vec![Vec::new(); n * n];
        for (i, s) in seeds.iter().enumerate() {
            let bx = ((s.x / h) as usize).min(n - 1);
            let by = ((s.y / h) as usize).min(n - 1);
            buckets[by * n + bx].push(i);
        }
        SeedGrid { n, h, buckets }
    }

    /// Visits seeds whose bucket lies on Chebyshev ring `ring` around `p`.
    fn ring_members(&self, p: Point2, ring: usize, mut visit: impl FnMut(usize)) {
        let n = self.n as i64;
        let bx = ((p.x / self.h) as i64).clamp(0, n - 1);
        let by = ((p.y / self.h) as i64).clamp(0, n - 1);
        let r = ring as i64;
        let handle = |x: i64, y: i64, visit: &mut dyn FnMut(usize)| {
            if (0..n).contains(&x) && (0..n).contains(&y) {
                for &j in &self.buckets[(y * n + x) as usize] {
                    visit(j);
                }
            }
        };
        if r == 0 {
            handle(bx, by, &mut visit);
            return;
        }
        for x in (bx - r)..=(bx + r) {
            handle(x, by - r, &mut visit);
            handle(x, by + r, &mut visit);
        }
        for y in (by - r + 1)..(by + r) {
            handle(bx - r, y, &mut visit);
            handle(bx + r, y, &mut visit);
        }
    }
}

/// Merges nearly coincident points (within `tol` in each coordinate) into
/// shared vertex ids, first insertion wins.
struct VertexPool {
    tol: f64,
    cell: f64,
    points: Vec<Point2>,
    index: std::collections::HashMap<(i64, i64), Vec<usize>>,
}

impl VertexPool {
    fn new(tol: f64) -> Self {
        VertexPool { tol, cell: 4.0 * tol, points: Vec::new(), index: Default::default() }
    }

    fn insert(&mut self, p: Point2) -> usize {
        let kx = (p.x / self.cell).floor() as i64;
        let ky = (p.y / self.cell).floor() as i64;
        for dx in -1..=1 {
            for dy in -1..=1 {
                if let Some(ids) = self.index.get(&(kx + dx, ky + dy)) {
                    for &id in ids {
                        let q = self.points[id];
                        if (q.x - p.x).abs() <= self.tol && (q.y - p.y).abs() <= self.tol {
                            return id;
                        }
                    }
                }
            }
        }
        let id = self.points.len();
        self.points.push(p);
        self.index.entry((kx, ky)).or_default().push(id);
        id
    }
}
