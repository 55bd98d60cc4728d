//! Sparse symmetric storage and solvers: compressed-sparse-row assembly,
//! reverse Cuthill-McKee ordering, an envelope Cholesky factorization, and a
//! Jacobi-preconditioned conjugate gradient fallback.

use crate::{Error, Result};

/// Compressed sparse row matrix with sorted, duplicate-free columns per row.
#[derive(Debug, Clone, PartialEq)]
pub struct CsrMatrix {
    n: usize,
    row_ptr: Vec<usize>,
    col_idx: Vec<usize>,
    values: Vec<f64>,
}

impl CsrMatrix {
    /// Builds an n x n matrix from (row, col, value) triplets, summing
    /// duplicates and dropping exact zeros produced only by empty rows.
    pub fn from_triplets(n: usize, triplets: &[(usize, usize, f64)]) -> Self {
        let mut row_counts = vec![0usize; n + 1];
        for &(r, _, _) in triplets {
            row_counts[r + 1] += 1;
        }
        let mut start = row_counts.clone();
        for i in 0..n {
            start[i + 1] += start[i];
        }
        let mut entries: Vec<(usize, f64)> = vec![(0, 0.0); triplets.len()];
        let mut cursor = start.clone();
        for &(r, c, v) in triplets {
            entries[cursor[r]] = (c, v);
            cursor[r] += 1;
        }
        let mut row_ptr = Vec::with_capacity(n + 1);
        let mut col_idx = Vec::new();
        let mut values = Vec::new();
        row_ptr.push(0);
        for i in 0..n {
            let slice = &mut entries[start[i]..start[i + 1]];
            slice.sort_unstable_by_key(|e| e.0);
            let mut k = 0;
            while k < slice.len() {
                let col = slice[k].0;
                let mut sum = 0.0;
                while k < slice.len() && slice[k].0 == col {
                    sum += slice[k].1;
                    k += 1;
                }
                col_idx.push(col);
                values.push(sum);
            }
            row_ptr.push(col_idx.len());
        }
        CsrMatrix { n, row_ptr, col_idx, values }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn nnz(&self) -> usize {
        self.col_idx.len()
    }

    pub fn row(&self, i: usize) -> (&[usize], &[f64]) {
        let r = self.row_ptr[i]..self.row_ptr[i + 1];
        (&self.col_idx[r.clone()], &self.values[r])
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        let (cols, vals) = self.row(i);
        match cols.binary_search(&j) {
            Ok(k) => vals[k],
            Err(_) => 0.0,
        }
    }

    pub fn matvec(&self, x: &[f64], y: &mut [f64]) {
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            let mut acc = 0.0;
            for (c, v) in cols.iter().zip(vals) {
                acc += v * x[*c];
            }
            y[i] = acc;
        }
    }

    /// Frobenius asymmetry ratio ||A - A'|| / ||A||.
    pub fn symmetry_gap(&self) -> f64 {
        let mut gap = 0.0;
        let mut norm = 0.0;
        for i in 0..self.n {
            let (cols, vals) = self.row(i);
            for (c, v) in cols.iter().zip(vals) {
                norm += v * v;
                let d = v - self.get(*c, i);
                gap += d * d;
            }
        }
        (gap / norm.max(f64::MIN_POSITIVE)).sqrt()
    }

    /// Extracts the principal submatrix on `keep` (sorted) with `map` the
    /// full-to-reduced index map (usize::MAX marks dropped rows).
    pub fn principal_submatrix(&self, keep: &[usize], map: &[usize]) -> CsrMatrix {
        let mut triplets = Vec::new();
        for (ri, &i) in keep.iter().enumerate() {
            let (cols, vals) = self.row(i);
            for (c, v) in cols.iter().zip(vals) {
                let rc = map[*c];
                if rc != usize::MAX {
                    triplets.push((ri, rc, *v));
                }
            }
        }
        CsrMatrix::from_triplets(keep.len(), &triplets)
    }
}

/// Reverse Cuthill-McKee ordering of the matrix graph; returns `order` with
/// `order[k]` = original index placed at position k. Deterministic.
pub fn reverse_cuthill_mckee(a: &CsrMatrix) -> Vec<usize> {
    let n = a.n();
    let degree = |i: usize| a.row(i).0.len();
    let mut visited = vec![false; n];
    let mut order = Vec::with_capacity(n);

    let bfs_layers = |start: usize, visited: &[bool]| -> Vec<usize> {
        // Returns the nodes of the component in BFS order.
        let mut seen = visited.to_vec();
        let mut queue = std::collections::VecDeque::new();
        let mut out = Vec::new();
        seen[start] = true;
        queue.push_back(start);
        while let Some(u) = queue.pop_front() {
            out.push(u);
            let mut nbrs: Vec<usize> = a.row(u).0.iter().cloned().filter(|&v| v != u && !seen[v]).collect();
            nbrs.sort_by_key(|&v| (degree(v), v));
            for v in nbrs {
                seen[v] = true;
                queue.push_back(v);
            }
        }
        out
    };

    for root_scan in 0..n {
        if visited[root_scan] {
            continue;
        }
        // Pseudo-peripheral start: min degree in component, then the far end
        // of a BFS from it.
        let component = bfs_layers(root_scan, &visited);
        let start = *component.iter().min_by_key(|&&v| (degree(v), v)).unwrap();
        let far = *bfs_layers(start, &visited).last().unwrap();
        for u in bfs_layers(far, &visited) {
            visited[u] = true;
            order.push(u);
        }
    }
    order.reverse();
    order
}

/// Envelope (profile) Cholesky of a symmetric positive definite matrix under
/// a given ordering. Stores rows from their first in-profile column to the
/// diagonal.
pub struct EnvelopeCholesky {
    n: usize,
    first: Vec<usize>,
    offsets: Vec<usize>,
    l: Vec<f64>,
    /// Position of original index i in the ordering.
    position: Vec<usize>,
}

impl EnvelopeCholesky {
    /// Factors `a` permuted by `order` (as from [`reverse_cuthill_mckee`]).
    pub fn factor(a: &CsrMatrix, order: &[usize]) -> Result<Self> {
        let n = a.n();
        let mut position = vec![0usize; n];
        for (k, &old) in order.iter().enumerate() {
            position[old] = k;
        }
        // Profile: first[i] = min position among row entries (and i itself).
        let mut first = vec![0usize; n];
        for i in 0..n {
            let mut lo = i;
            let old = order[i];
            for &c in a.row(old).0 {
                let pc = position[c];
                if pc < lo {
                    lo = pc;
                }
            }
            first[i] = lo;
        }
        let mut offsets = vec![0usize; n + 1];
        for i in 0..n {
            offsets[i + 1] = offsets[i] + (i - first[i] + 1);
        }
        let mut l = vec![0.0f64; offsets[n]];
        // Spread A into the envelope.
        for i in 0..n {
            let old = order[i];
            let (cols, vals) = a.row(old);
            for (c, v) in cols.iter().zip(vals) {
                let j = position[*c];
                if j <= i {
                    l[offsets[i] + (j - first[i])] = *v;
                }
            }
        }
        // Row-oriented factorization inside the envelope.
        for i in 0..n {
            let fi = first[i];
            for j in fi..i {
                let fj = first[j];
                let lo = fi.max(fj);
                let mut sum = l[offsets[i] + (j - fi)];
                // dot of row i and row j over columns [lo, j)
                let (oi, oj) = (offsets[i] + (lo - fi), offsets[j] + (lo - fj));
                for k in 0..(j - lo) {
                    sum -= l[oi + k] * l[oj + k];
                }
                let djj = l[offsets[j] + (j - fj)];
                l[offsets[i] + (j - fi)] = sum / djj;
            }
            let mut diag = l[offsets[i] + (i - fi)];
            for k in fi..i {
                let v = l[offsets[i] + (k - fi)];
                diag -= v * v;
            }
            if !(diag > 0.0) || !diag.is_finite() {
                return Err(Error::SolverBreakdown {
                    detail: format!("non-positive pivot {diag:.3e} at equation {i} of {n}"),
                });
            }
            l[offsets[i] + (i - fi)] = diag.sqrt();
        }
        Ok(EnvelopeCholesky { n, first, offsets, l, position: position.clone() })
    }

    /// Solves A x = b for the original (unpermuted) right-hand side.
    pub fn solve(&self, b: &[f64]) -> Vec<f64> {
        let n = self.n;
        let mut y = vec![0.0; n];
        for (old, &pos) in self.position.iter().enumerate() {
            y[pos] = b[old];
        }
        // Forward: L y = Pb.
        for i in 0..n {
            let fi = self.first[i];
            let base = self.offsets[i];
            let mut acc = y[i];
            for k in fi..i {
                acc -= self.l[base + (k - fi)] * y[k];
            }
            y[i] = acc / self.l[base + (i - fi)];
        }
        // Backward: L' z = y, column sweep.
        for i in (0..n).rev() {
            let fi = self.first[i];
            let base = self.offsets[i];
            let xi = y[i] / self.l[base + (i - fi)];
            y[i] = xi;
            for k in fi..i {
                y[k] -= self.l[base + (k - fi)] * xi;
            }
        }
        let mut x = vec![0.0; n];
        for (old, &pos) in self.position.iter().enumerate() {
            x[old] = y[pos];
        }
        x
    }
}

/// Jacobi-preconditioned conjugate gradient. Converges when
/// ||r|| <= rtol ||b||; errors on breakdown or stagnation.
pub fn pcg_jacobi(a: &CsrMatrix, b: &[f64], rtol: f64, max_iter: usize) -> Result<(Vec<f64>, usize)> {
    let n = a.n();
    let norm_b = norm(b);
    if norm_b == 0.0 {
        return Ok((vec![0.0; n], 0));
    }
    let mut inv_diag = vec![0.0; n];
    for i in 0..n {
        let d = a.get(i, i);
        if !(d > 0.0) {
            return Err(Error::SolverBreakdown { detail: format!("non-positive diagonal at {i}") });
        }
        inv_diag[i] = 1.0 / d;
    }
    let mut x = vec![0.0; n];
    let mut r = b.to_vec();
    let mut z: Vec<f64> = r.iter().zip(&inv_diag).map(|(ri, di)| ri * di).collect();
    let mut p = z.clone();
    let mut rz = dot(&r, &z);
    let mut ap = vec![0.0; n];
    for it in 0..max_iter {
        a.matvec(&p, &mut ap);
        let pap = dot(&p, &ap);
        if !(pap > 0.0) || !pap.is_finite() {
            return Err(Error::SolverBreakdown { detail: format!("indefinite direction at iteration {it}") });
        }
        let alpha = rz / pap;
        for i in 0..n {
            x[i] += alpha * p[i];
            r[i] -= alpha * ap[i];
        }
        if norm(&r) <= rtol * norm_b {
            // Recurrence residuals drift; accept only on the true residual,
            // otherwise restart the recurrence from it.
            let mut ax = vec![0.0; n];
            a.matvec(&x, &mut ax);
            for i in 0..n {
                r[i] = b[i] - ax[i];
            }
            if norm(&r) <= rtol * norm_b {
                return Ok((x, it + 1));
            }
        }
        for i in 0..n {
            z[i] = r[i] * inv_diag[i];
        }
        let rz_new = dot(&r, &z);
        let beta = rz_new / rz;
        rz = rz_new;
        for i in 0..n {
            p[i] = z[i] + beta * p[i];
        }
    }
    Err(Error::SolverBreakdown { detail: format!("conjugate gradient stalled after {max_iter} iterations") })
}

fn dot(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn norm(a: &[f64]) -> f64 {
    dot(a, a).sqrt()
}
