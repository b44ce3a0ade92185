//! Banded operators with optional dense boundary rows, and a direct solver
//! for the resulting almost-banded systems.
//!
//! Spectral discretizations here produce matrices that are banded except for
//! a few dense rows at the top enforcing boundary conditions. The solver
//! runs banded LU with partial pivoting over the band; columns that no
//! banded row can pivot are deferred and resolved through the border rows,
//! a small Schur complement. The factorization records its elimination
//! sequence so one assembly can be reused across many right-hand sides.

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum SolveError {
    #[error("system is numerically singular at column {col}")]
    Singular { col: usize },
    #[error("dimension mismatch: operator is {rows}x{cols}, rhs has length {rhs}")]
    Mismatch { rows: usize, cols: usize, rhs: usize },
    #[error("solver requires a square effective matrix, got {rows}x{cols}")]
    NotSquare { rows: usize, cols: usize },
}

/// Banded matrix with declared bandwidths; entries outside the band are
/// structurally zero. Optional dense border rows replace rows
/// `0..border.len()` of the banded part (boundary conditions).
#[derive(Debug, Clone, PartialEq)]
pub struct BandedOp {
    rows: usize,
    cols: usize,
    lower: usize,
    upper: usize,
    data: Vec<f64>,
    border: Vec<Vec<f64>>,
}

impl BandedOp {
    pub fn new(rows: usize, cols: usize, lower: usize, upper: usize) -> Self {
        Self {
            rows,
            cols,
            lower,
            upper,
            data: vec![0.0; rows * (lower + upper + 1)],
            border: Vec::new(),
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut op = Self::new(n, n, 0, 0);
        for i in 0..n {
            op.set(i, i, 1.0);
        }
        op
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn lower_bandwidth(&self) -> usize {
        self.lower
    }

    pub fn upper_bandwidth(&self) -> usize {
        self.upper
    }

    pub fn border_rows(&self) -> &[Vec<f64>] {
        &self.border
    }

    fn slot(&self, i: usize, j: usize) -> Option<usize> {
        let off = j as isize - i as isize;
        if off < -(self.lower as isize) || off > self.upper as isize {
            None
        } else {
            Some(i * (self.lower + self.upper + 1) + (off + self.lower as isize) as usize)
        }
    }

    /// Entry of the banded part (ignores border rows).
    pub fn band_get(&self, i: usize, j: usize) -> f64 {
        assert!(i < self.rows && j < self.cols);
        self.slot(i, j).map_or(0.0, |s| self.data[s])
    }

    /// Entry of the effective matrix (border rows replace the top rows).
    pub fn get(&self, i: usize, j: usize) -> f64 {
        if i < self.border.len() {
            self.border[i][j]
        } else {
            self.band_get(i, j)
        }
    }

    /// Write inside the declared band; panics outside it.
    pub fn set(&mut self, i: usize, j: usize, v: f64) {
        let s = self
            .slot(i, j)
            .unwrap_or_else(|| panic!("entry ({i},{j}) outside declared band ({}, {})", self.lower, self.upper));
        self.data[s] = v;
    }

    /// Replace the top rows with dense border rows.
    pub fn with_border(mut self, border: Vec<Vec<f64>>) -> Self {
        assert!(border.len() <= self.rows);
        for row in &border {
            assert_eq!(row.len(), self.cols);
        }
        self.border = border;
        self
    }

    /// ka*A + kb*B over the union band. Border rows are not combined.
    pub fn add_scaled(a: &BandedOp, ka: f64, b: &BandedOp, kb: f64) -> BandedOp {
        assert_eq!((a.rows, a.cols), (b.rows, b.cols));
        assert!(a.border.is_empty() && b.border.is_empty());
        let mut out = BandedOp::new(a.rows, a.cols, a.lower.max(b.lower), a.upper.max(b.upper));
        for i in 0..a.rows {
            let j_lo = i.saturating_sub(out.lower);
            let j_hi = (i + out.upper).min(a.cols.saturating_sub(1));
            for j in j_lo..=j_hi {
                out.set(i, j, ka * a.band_get(i, j) + kb * b.band_get(i, j));
            }
            if j_lo > j_hi {
                continue;
            }
        }
        out
    }

    /// Rows moved down by `r` (top `r` rows zeroed, bottom `r` rows dropped),
    /// columns unchanged. Prepending boundary rows on top of the result keeps
    /// the lowest `rows - r` moment equations.
    pub fn shift_down(&self, r: usize) -> BandedOp {
        assert!(self.border.is_empty());
        let mut out = BandedOp::new(
            self.rows,
            self.cols,
            self.lower + r,
            self.upper.saturating_sub(r),
        );
        for i in r..self.rows {
            let src = i - r;
            let j_lo = src.saturating_sub(self.lower);
            let j_hi = (src + self.upper).min(self.cols.saturating_sub(1));
            for j in j_lo..=j_hi {
                let v = self.band_get(src, j);
                if v != 0.0 {
                    out.set(i, j, v);
                }
            }
        }
        out
    }

    /// A·B over the combined band (no border rows on either factor).
    pub fn mul(a: &BandedOp, b: &BandedOp) -> BandedOp {
        assert_eq!(a.cols, b.rows);
        assert!(a.border.is_empty() && b.border.is_empty());
        let mut out = BandedOp::new(a.rows, b.cols, a.lower + b.lower, a.upper + b.upper);
        for i in 0..a.rows {
            let k_lo = i.saturating_sub(a.lower);
            let k_hi = (i + a.upper).min(a.cols.saturating_sub(1));
            for j in i.saturating_sub(out.lower)..=(i + out.upper).min(b.cols.saturating_sub(1)) {
                let mut acc = 0.0;
                for k in k_lo..=k_hi {
                    acc += a.band_get(i, k) * b.band_get(k, j);
                }
                if acc != 0.0 || out.slot(i, j).is_some() {
                    out.set(i, j, acc);
                }
            }
        }
        out
    }

    /// y = M x for the effective matrix.
    pub fn matvec(&self, x: &[f64]) -> Vec<f64> {
        assert_eq!(x.len(), self.cols);
        let mut y = vec![0.0; self.rows];
        for (i, yi) in y.iter_mut().enumerate() {
            if i < self.border.len() {
                *yi = self.border[i].iter().zip(x).map(|(&m, &v)| m * v).sum();
            } else {
                let j_lo = i.saturating_sub(self.lower);
                let j_hi = (i + self.upper).min(self.cols.saturating_sub(1));
                let mut acc = 0.0;
                for j in j_lo..=j_hi.max(j_lo) {
                    if j < self.cols {
                        acc += self.band_get(i, j) * x[j];
                    }
                }
                *yi = acc;
            }
        }
        y
    }

    pub fn to_dense(&self) -> Vec<Vec<f64>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Back-substitution for upper-triangular banded operators
    /// (lower bandwidth 0, nonzero diagonal, no border rows).
    pub fn solve_upper_triangular(&self, rhs: &[f64]) -> Result<Vec<f64>, SolveError> {
        if self.rows != self.cols {
            return Err(SolveError::NotSquare { rows: self.rows, cols: self.cols });
        }
        if rhs.len() != self.rows {
            return Err(SolveError::Mismatch { rows: self.rows, cols: self.cols, rhs: rhs.len() });
        }
        assert_eq!(self.lower, 0);
        assert!(self.border.is_empty());
        let n = self.rows;
        let mut x = vec![0.0; n];
        for i in (0..n).rev() {
            let mut acc = rhs[i];
            let j_hi = (i + self.upper).min(n - 1);
            for j in i + 1..=j_hi {
                acc -= self.band_get(i, j) * x[j];
            }
            let d = self.band_get(i, i);
            if d == 0.0 {
                return Err(SolveError::Singular { col: i });
            }
            x[i] = acc / d;
        }
        Ok(x)
    }

    /// Factor the effective matrix; reusable across right-hand sides.
    pub fn factorize(&self) -> Result<AlmostBandedLu, SolveError> {
        AlmostBandedLu::new(self)
    }

    /// One-shot solve of the effective matrix.
    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>, SolveError> {
        self.factorize()?.solve(rhs)
    }
}

/// Sparse working row: contiguous values starting at column `start`.
#[derive(Debug, Clone)]
struct Segment {
    start: usize,
    vals: Vec<f64>,
}

impl Segment {
    fn get(&self, j: usize) -> f64 {
        if j < self.start || j >= self.start + self.vals.len() {
            0.0
        } else {
            self.vals[j - self.start]
        }
    }

    /// self -= m * other
    fn sub_scaled(&mut self, m: f64, other: &Segment) {
        if other.vals.is_empty() {
            return;
        }
        let new_start = self.start.min(other.start);
        let self_end = self.start + self.vals.len();
        let other_end = other.start + other.vals.len();
        let new_end = self_end.max(other_end);
        if new_start < self.start || new_end > self_end {
            let mut vals = vec![0.0; new_end - new_start];
            vals[self.start - new_start..self_end - new_start].copy_from_slice(&self.vals);
            self.start = new_start;
            self.vals = vals;
        }
        for (k, &ov) in other.vals.iter().enumerate() {
            self.vals[other.start + k - self.start] -= m * ov;
        }
    }

    fn set(&mut self, j: usize, v: f64) {
        if j >= self.start && j < self.start + self.vals.len() {
            self.vals[j - self.start] = v;
        }
    }

    fn trim_leading_zeros(&mut self) {
        let lead = self.vals.iter().take_while(|v| **v == 0.0).count();
        if lead > 0 {
            self.vals.drain(..lead);
            self.start += lead;
        }
    }
}

/// Row-elimination step: rhs[target] -= m * rhs[pivot].
#[derive(Debug, Clone, Copy)]
struct ElimOp {
    pivot: u32,
    target: u32,
    m: f64,
}

/// LU-style factorization of an almost-banded matrix. Stores the
/// elimination sequence, the reduced pivot rows and the small dense system
/// coupling the deferred (border-resolved) columns.
#[derive(Debug, Clone)]
pub struct AlmostBandedLu {
    n: usize,
    elim: Vec<ElimOp>,
    /// (pivot column, row id, reduced row), in elimination order
    pivots: Vec<(usize, usize, Segment)>,
    /// columns resolved through the border rows, ascending
    deferred: Vec<usize>,
    /// reduced border rows restricted to the deferred columns
    border_mat: Vec<Vec<f64>>,
    /// row ids of the border rows (0..r)
    border_ids: Vec<usize>,
}

impl AlmostBandedLu {
    fn new(op: &BandedOp) -> Result<Self, SolveError> {
        let n = op.rows;
        if op.rows != op.cols {
            return Err(SolveError::NotSquare { rows: op.rows, cols: op.cols });
        }
        let r = op.border.len();
        let mut rows: Vec<Segment> = Vec::with_capacity(n - r);
        for i in r..n {
            let start = i.saturating_sub(op.lower);
            let end = (i + op.upper + 1).min(n);
            let vals = (start..end).map(|j| op.band_get(i, j)).collect();
            rows.push(Segment { start, vals });
        }
        let mut border: Vec<Segment> = op
            .border
            .iter()
            .map(|row| Segment { start: 0, vals: row.clone() })
            .collect();

        let mut used = vec![false; n - r];
        let mut elim = Vec::new();
        let mut pivots: Vec<(usize, usize, Segment)> = Vec::new();
        let mut deferred = Vec::new();

        for col in 0..n {
            // banded rows whose structural support reaches this column
            let lo = col.saturating_sub(op.upper).max(r);
            let hi = (col + op.lower).min(n - 1);
            let mut best: Option<(usize, f64)> = None;
            for i in lo..=hi.max(lo) {
                if i > hi || i < r || used[i - r] {
                    continue;
                }
                let v = rows[i - r].get(col);
                if v != 0.0 && best.is_none_or(|(_, b)| v.abs() > b.abs()) {
                    best = Some((i, v));
                }
            }
            // Partial pivoting across the border: when a border row carries a
            // larger entry in this column and deferral budget remains, let the
            // Schur step resolve the column instead of eliminating with a
            // smaller banded pivot (multipliers stay <= 1).
            if deferred.len() < r {
                let border_best = border
                    .iter()
                    .map(|brow| brow.get(col).abs())
                    .fold(0.0f64, f64::max);
                if best.is_none_or(|(_, v)| border_best >= v.abs()) && border_best > 0.0 {
                    deferred.push(col);
                    continue;
                }
            }
            let Some((pi, pv)) = best else {
                if deferred.len() == r {
                    // more deferred columns than border rows
                    return Err(SolveError::Singular { col });
                }
                deferred.push(col);
                continue;
            };
            used[pi - r] = true;
            rows[pi - r].trim_leading_zeros();
            let prow = rows[pi - r].clone();
            for i in lo..=hi {
                if i < r || used[i - r] {
                    continue;
                }
                let v = rows[i - r].get(col);
                if v != 0.0 {
                    let m = v / pv;
                    rows[i - r].sub_scaled(m, &prow);
                    rows[i - r].set(col, 0.0);
                    elim.push(ElimOp { pivot: pi as u32, target: i as u32, m });
                }
            }
            for (bi, brow) in border.iter_mut().enumerate() {
                let v = brow.get(col);
                if v != 0.0 {
                    let m = v / pv;
                    brow.sub_scaled(m, &prow);
                    brow.set(col, 0.0);
                    elim.push(ElimOp { pivot: pi as u32, target: bi as u32, m });
                }
            }
            pivots.push((col, pi, prow));
        }

        if deferred.len() != r || used.iter().any(|u| !u) {
            return Err(SolveError::Singular { col: deferred.first().copied().unwrap_or(0) });
        }
        let border_mat: Vec<Vec<f64>> = border
            .iter()
            .map(|brow| deferred.iter().map(|&c| brow.get(c)).collect())
            .collect();
        Ok(Self {
            n,
            elim,
            pivots,
            deferred,
            border_mat,
            border_ids: (0..r).collect(),
        })
    }

    pub fn solve(&self, rhs: &[f64]) -> Result<Vec<f64>, SolveError> {
        if rhs.len() != self.n {
            return Err(SolveError::Mismatch { rows: self.n, cols: self.n, rhs: rhs.len() });
        }
        let mut b = rhs.to_vec();
        for op in &self.elim {
            b[op.target as usize] -= op.m * b[op.pivot as usize];
        }
        let mut x = vec![0.0; self.n];
        // small dense solve for the deferred columns
        if !self.deferred.is_empty() {
            let q = self.deferred.len();
            let mut mat: Vec<Vec<f64>> = self.border_mat.clone();
            let mut rvec: Vec<f64> = self.border_ids.iter().map(|&id| b[id]).collect();
            let mut y = vec![0.0; q];
            let mut perm: Vec<usize> = (0..q).collect();
            for c in 0..q {
                let (sel, _) = perm[c..]
                    .iter()
                    .enumerate()
                    .map(|(k, &row)| (k + c, mat[row][c].abs()))
                    .max_by(|a, b| a.1.total_cmp(&b.1))
                    .unwrap();
                perm.swap(c, sel);
                let p = mat[perm[c]][c];
                if p == 0.0 {
                    return Err(SolveError::Singular { col: self.deferred[c] });
                }
                for &row in &perm[c + 1..] {
                    let m = mat[row][c] / p;
                    if m != 0.0 {
                        for cc in c..q {
                            let sub = m * mat[perm[c]][cc];
                            mat[row][cc] -= sub;
                        }
                        rvec[row] -= m * rvec[perm[c]];
                    }
                }
            }
            for c in (0..q).rev() {
                let mut acc = rvec[perm[c]];
                for cc in c + 1..q {
                    acc -= mat[perm[c]][cc] * y[cc];
                }
                y[c] = acc / mat[perm[c]][c];
            }
            for (k, &c) in self.deferred.iter().enumerate() {
                x[c] = y[k];
            }
        }
        // back-substitute banded pivots in reverse elimination (column) order
        for (col, row_id, seg) in self.pivots.iter().rev() {
            let mut acc = b[*row_id];
            let mut diag = 0.0;
            for (k, &v) in seg.vals.iter().enumerate() {
                let j = seg.start + k;
                if j == *col {
                    diag = v;
                } else if v != 0.0 {
                    acc -= v * x[j];
                }
            }
            if diag == 0.0 {
                return Err(SolveError::Singular { col: *col });
            }
            x[*col] = acc / diag;
        }
        Ok(x)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_no_border_returns_rhs() {
        let op = BandedOp::identity(7);
        let rhs: Vec<f64> = (0..7).map(|i| i as f64 - 3.0).collect();
        let x = op.solve(&rhs).unwrap();
        assert_eq!(x, rhs);
    }

    #[test]
    #[should_panic(expected = "outside declared band")]
    fn set_outside_band_panics() {
        let mut op = BandedOp::new(5, 5, 0, 1);
        op.set(3, 1, 1.0);
    }

    #[test]
    fn singular_reports_column() {
        let op = BandedOp::new(4, 4, 1, 1);
        assert!(matches!(op.solve(&[1.0; 4]), Err(SolveError::Singular { .. })));
    }

    #[test]
    fn upper_triangular_back_substitution() {
        let mut op = BandedOp::new(4, 4, 0, 2);
        for i in 0..4 {
            op.set(i, i, 2.0 + i as f64);
            if i + 1 < 4 {
                op.set(i, i + 1, -1.0);
            }
            if i + 2 < 4 {
                op.set(i, i + 2, 0.5);
            }
        }
        let x_true = vec![1.0, -2.0, 3.0, 0.5];
        let rhs = op.matvec(&x_true);
        let x = op.solve_upper_triangular(&rhs).unwrap();
        for (a, b) in x.iter().zip(&x_true) {
            assert!((a - b).abs() < 1e-13);
        }
    }

    #[test]
    fn border_row_enforces_sum_constraint() {
        // all-ones border row forces Σ x_i = rhs[0]
        let n = 12;
        let mut op = BandedOp::new(n, n, 1, 1);
        for i in 0..n {
            op.set(i, i, 4.0 + (i % 3) as f64);
            if i > 0 {
                op.set(i, i - 1, 1.0);
            }
            if i + 1 < n {
                op.set(i, i + 1, -1.5);
            }
        }
        let op = op.with_border(vec![vec![1.0; n]]);
        let mut rhs = vec![0.3; n];
        rhs[0] = 7.5;
        let x = op.solve(&rhs).unwrap();
        let sum: f64 = x.iter().sum();
        assert!((sum - 7.5).abs() < 1e-11, "sum {sum}");
        let resid = op.matvec(&x);
        for (a, b) in resid.iter().zip(&rhs) {
            assert!((a - b).abs() < 1e-11);
        }
    }
}
