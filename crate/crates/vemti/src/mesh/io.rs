//! Plain-text mesh format:
//!
//! ```text
//! polymesh 1
//! V <count>      followed by one `x y` line per vertex
//! C <count>      followed by one whitespace-separated vertex-index ring per cell
//! B <count>      followed by one `v0 v1 tag` line per boundary edge
//! ```
//!
//! Floats are written in shortest round-trip form, so read-then-write
//! reproduces a well-formed file byte for byte.

use std::fmt::Write as _;

use super::{BoundaryEdge, BoundaryTag, PolyMesh};
use crate::{Error, Point2, Result};

pub fn write_polymesh(mesh: &PolyMesh) -> String {
    let mut out = String::new();
    out.push_str("polymesh 1\n");
    let _ = writeln!(out, "V {}", mesh.vertices.len());
    for v in &mesh.vertices {
        let _ = writeln!(out, "{} {}", v.x, v.y);
    }
    let _ = writeln!(out, "C {}", mesh.cells.len());
    for ring in &mesh.cells {
        let mut line = String::new();
        for (k, idx) in ring.iter().enumerate() {
            if k > 0 {
                line.push(' ');
            }
            let _ = write!(line, "{idx}");
        }
        out.push_str(&line);
        out.push('\n');
    }
    let _ = writeln!(out, "B {}", mesh.boundary_edges.len());
    for e in &mesh.boundary_edges {
        let _ = writeln!(out, "{} {} {}", e.v0, e.v1, e.tag.as_str());
    }
    out
}

pub fn read_polymesh(text: &str) -> Result<PolyMesh> {
    let mut lines = text.lines().enumerate();
    let err = |line: usize, message: &str| Error::MeshParse { line: line + 1, message: message.into() };

    let (ln, header) = lines.next().ok_or_else(|| err(0, "empty file"))?;
    if header.trim() != "polymesh 1" {
        return Err(err(ln, "expected header `polymesh 1`"));
    }

    let expect_count = |lines: &mut std::iter::Enumerate<std::str::Lines>, letter: &str| -> Result<usize> {
        let (ln, line) = lines.next().ok_or_else(|| err(usize::MAX - 1, "unexpected end of file"))?;
        let mut parts = line.split_whitespace();
        match (parts.next(), parts.next(), parts.next()) {
            (Some(l), Some(count), None) if l == letter => {
                count.parse().map_err(|_| err(ln, "bad section count"))
            }
            _ => Err(err(ln, "expected section header")),
        }
    };

    let nv = expect_count(&mut lines, "V")?;
    let mut vertices = Vec::with_capacity(nv);
    for _ in 0..nv {
        let (ln, line) = lines.next().ok_or_else(|| err(usize::MAX - 1, "missing vertex line"))?;
        let mut parts = line.split_whitespace();
        let x: f64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(ln, "bad vertex x"))?;
        let y: f64 = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(ln, "bad vertex y"))?;
        if parts.next().is_some() {
            return Err(err(ln, "trailing tokens on vertex line"));
        }
        vertices.push(Point2::new(x, y));
    }

    let nc = expect_count(&mut lines, "C")?;
    let mut cells = Vec::with_capacity(nc);
    for _ in 0..nc {
        let (ln, line) = lines.next().ok_or_else(|| err(usize::MAX - 1, "missing cell line"))?;
        let ring: std::result::Result<Vec<usize>, _> =
            line.split_whitespace().map(|s| s.parse::<usize>()).collect();
        let ring = ring.map_err(|_| err(ln, "bad vertex index"))?;
        if ring.len() < 3 {
            return Err(err(ln, "cell needs at least 3 vertices"));
        }
        if ring.iter().any(|&v| v >= vertices.len()) {
            return Err(err(ln, "vertex index out of range"));
        }
        cells.push(ring);
    }

    let nb = expect_count(&mut lines, "B")?;
    let mut boundary_edges = Vec::with_capacity(nb);
    for _ in 0..nb {
        let (ln, line) = lines.next().ok_or_else(|| err(usize::MAX - 1, "missing boundary line"))?;
        let mut parts = line.split_whitespace();
        let v0: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(ln, "bad boundary vertex"))?;
        let v1: usize = parts
            .next()
            .and_then(|s| s.parse().ok())
            .ok_or_else(|| err(ln, "bad boundary vertex"))?;
        let tag = parts
            .next()
            .and_then(BoundaryTag::parse)
            .ok_or_else(|| err(ln, "bad boundary tag"))?;
        if parts.next().is_some() {
            return Err(err(ln, "trailing tokens on boundary line"));
        }
        if v0 >= vertices.len() || v1 >= vertices.len() {
            return Err(err(ln, "boundary vertex out of range"));
        }
        boundary_edges.push(BoundaryEdge { v0, v1, tag });
    }

    if lines.next().is_some() {
        return Err(Error::MeshParse { line: 0, message: "trailing content after B section".into() });
    }
    Ok(PolyMesh { vertices, cells, boundary_edges })
}
