//! Giambelli type matrices, their canonical forms, the Jacobi–Trudi and dual
//! Jacobi–Trudi matrices, evaluation and exact determinants.
//!
//! Rows are indexed by initial contents `p` and columns by terminal contents
//! `q`: entry `(i, j)` is `s_{φ[p(θ_i), q(θ_j)]}`. In this orientation the
//! Jacobi–Trudi matrix is the transpose of `M(Π_h)` and the dual Jacobi–Trudi
//! matrix coincides with `M(Π_e)`.

use std::collections::HashMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::shapes::{Partition, SkewShape};
use crate::strips::{BorderStrip, OutsideDecomposition, Segment};
use crate::symfun::{SchurCache, SymPoly};

/// One symbolic matrix entry.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MatrixEntry {
    /// `s` of a strip segment; the segment is kept for provenance.
    Schur(BorderStrip),
    One,
    Zero,
}

impl MatrixEntry {
    pub fn from_segment(seg: Segment) -> Self {
        match seg {
            Segment::Strip(s) => MatrixEntry::Schur(s),
            Segment::Empty => MatrixEntry::One,
            Segment::Undefined => MatrixEntry::Zero,
        }
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, MatrixEntry::Zero)
    }

    /// The anchored diagram of a Schur entry.
    pub fn shape(&self) -> Option<SkewShape> {
        match self {
            MatrixEntry::Schur(s) => Some(s.to_skew_shape()),
            _ => None,
        }
    }

    pub fn degree(&self) -> usize {
        match self {
            MatrixEntry::Schur(s) => s.len(),
            _ => 0,
        }
    }

    /// `s[8,1]`, `s[3,3/2]`, `1` or `·`.
    pub fn label_ascii(&self) -> String {
        match self {
            MatrixEntry::Schur(s) => format!("s[{}]", s.to_skew_shape()),
            MatrixEntry::One => "1".to_string(),
            MatrixEntry::Zero => "·".to_string(),
        }
    }

    /// `s_{71^2}`, `s_{33/2}`, `1` or `\cdot`.
    pub fn label_tex(&self) -> String {
        match self {
            MatrixEntry::Schur(s) => {
                let shape = s.to_skew_shape();
                let mut label = exponent_notation(shape.outer());
                if !shape.inner().is_empty() {
                    label = format!("{label}/{}", exponent_notation(shape.inner()));
                }
                if label.chars().count() == 1 {
                    format!("s_{label}")
                } else {
                    format!("s_{{{label}}}")
                }
            }
            MatrixEntry::One => "1".to_string(),
            MatrixEntry::Zero => "\\cdot".to_string(),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            MatrixEntry::Schur(s) => json!({"kind": "schur", "shape": s.to_skew_shape().to_string()}),
            MatrixEntry::One => json!({"kind": "one"}),
            MatrixEntry::Zero => json!({"kind": "zero"}),
        }
    }

    pub fn evaluate(&self, cache: &mut SchurCache) -> SymPoly {
        match self {
            MatrixEntry::Schur(s) => cache.get(&s.to_skew_shape()),
            MatrixEntry::One => SymPoly::one(cache.nvars()),
            MatrixEntry::Zero => SymPoly::zero(cache.nvars()),
        }
    }
}

/// `(7,1,1)` as `71^2`; parts are comma separated once any part exceeds 9.
pub fn exponent_notation(p: &Partition) -> String {
    let wide = p.parts().iter().any(|&x| x > 9);
    let mut groups: Vec<String> = Vec::new();
    let parts = p.parts();
    let mut k = 0;
    while k < parts.len() {
        let mut run = 1;
        while k + run < parts.len() && parts[k + run] == parts[k] {
            run += 1;
        }
        groups.push(if run > 1 {
            format!("{}^{}", parts[k], run)
        } else {
            parts[k].to_string()
        });
        k += run;
    }
    groups.join(if wide { "," } else { "" })
}

/// A square matrix of symbolic entries with content labels: `row_labels`
/// are initial contents, `col_labels` terminal contents.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    pub entries: Vec<Vec<MatrixEntry>>,
    pub row_labels: Vec<i64>,
    pub col_labels: Vec<i64>,
}

impl SymMatrix {
    pub fn rows(&self) -> usize {
        self.entries.len()
    }

    pub fn cols(&self) -> usize {
        self.entries.first().map_or(self.col_labels.len(), |r| r.len())
    }

    pub fn get(&self, i: usize, j: usize) -> &MatrixEntry {
        &self.entries[i][j]
    }

    pub fn transpose(&self) -> SymMatrix {
        let n = self.rows();
        let m = self.cols();
        SymMatrix {
            entries: (0..m).map(|j| (0..n).map(|i| self.entries[i][j].clone()).collect()).collect(),
            row_labels: self.col_labels.clone(),
            col_labels: self.row_labels.clone(),
        }
    }

    /// Largest Schur-entry degree.
    pub fn max_degree(&self) -> usize {
        self.entries.iter().flatten().map(|e| e.degree()).max().unwrap_or(0)
    }

    /// Entrywise comparison of the displayed labels.
    pub fn labels_ascii(&self) -> Vec<Vec<String>> {
        self.entries.iter().map(|r| r.iter().map(|e| e.label_ascii()).collect()).collect()
    }

    pub fn render_ascii(&self) -> String {
        render_grid(&self.labels_ascii())
    }

    pub fn render_tex(&self) -> String {
        let rows: Vec<String> = self
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.label_tex()).collect::<Vec<_>>().join(" & "))
            .collect();
        format!("\\begin{{pmatrix}}\n{}\n\\end{{pmatrix}}\n", rows.join(" \\\\\n"))
    }

    pub fn to_json(&self) -> Value {
        json!({
            "rows": self.rows(),
            "cols": self.cols(),
            "row_labels": self.row_labels,
            "col_labels": self.col_labels,
            "entries": self.entries.iter().map(|r| r.iter().map(|e| e.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }

    /// Zero pattern of a canonical form: a zero at `(i, j)` forces zeros at
    /// every `(i', j')` with `i' <= i` and `j' >= j`.
    pub fn has_zero_staircase(&self) -> bool {
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                if self.entries[i][j].is_zero() {
                    for i2 in 0..=i {
                        for j2 in j..self.cols() {
                            if !self.entries[i2][j2].is_zero() {
                                return false;
                            }
                        }
                    }
                }
            }
        }
        true
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render_ascii())
    }
}

/// Column-aligned text grid, one line per row.
pub fn render_grid(cells: &[Vec<String>]) -> String {
    let cols = cells.first().map_or(0, |r| r.len());
    let widths: Vec<usize> = (0..cols)
        .map(|j| cells.iter().map(|r| r[j].chars().count()).max().unwrap_or(0))
        .collect();
    let mut out = String::new();
    for row in cells {
        let line: Vec<String> = row
            .iter()
            .zip(&widths)
            .map(|(c, &w)| format!("{c}{}", " ".repeat(w - c.chars().count())))
            .collect();
        out.push_str(line.join("  ").trim_end());
        out.push('\n');
    }
    out
}

/// `M(Π)`: entry `(i, j)` is `s_{φ[p(θ_i), q(θ_j)]}` in the stored strip order.
pub fn giambelli_matrix(pi: &OutsideDecomposition) -> SymMatrix {
    let strips = pi.strips();
    let phi = pi.cutting_strip();
    let entries = strips
        .iter()
        .map(|a| {
            strips
                .iter()
                .map(|b| MatrixEntry::from_segment(phi.segment(a.p, b.q).expect("labels lie in the frame")))
                .collect()
        })
        .collect();
    SymMatrix {
        entries,
        row_labels: strips.iter().map(|s| s.p).collect(),
        col_labels: strips.iter().map(|s| s.q).collect(),
    }
}

/// `C(Π)` together with the sorting permutations that produce it from `M(Π)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Canonical {
    pub matrix: SymMatrix,
    /// `row_perm[k]` is the row of `M(Π)` placed at row `k`.
    pub row_perm: Vec<usize>,
    pub col_perm: Vec<usize>,
}

impl Canonical {
    pub fn row_sign(&self) -> i32 {
        permutation_sign(&self.row_perm)
    }

    pub fn col_sign(&self) -> i32 {
        permutation_sign(&self.col_perm)
    }

    pub fn sign(&self) -> i32 {
        self.row_sign() * self.col_sign()
    }
}

pub fn permutation_sign(perm: &[usize]) -> i32 {
    let mut seen = vec![false; perm.len()];
    let mut sign = 1;
    for start in 0..perm.len() {
        if seen[start] {
            continue;
        }
        let mut len = 0;
        let mut k = start;
        while !seen[k] {
            seen[k] = true;
            k = perm[k];
            len += 1;
        }
        if len % 2 == 0 {
            sign = -sign;
        }
    }
    sign
}

/// `C(Π) = (s_{φ[p_i, q_j]})` with `p_1 > p_2 > …` and `q_1 > q_2 > …`.
pub fn canonical_form(pi: &OutsideDecomposition) -> Canonical {
    let m = giambelli_matrix(pi);
    let mut row_perm: Vec<usize> = (0..m.rows()).collect();
    row_perm.sort_by(|&a, &b| m.row_labels[b].cmp(&m.row_labels[a]));
    let mut col_perm: Vec<usize> = (0..m.cols()).collect();
    col_perm.sort_by(|&a, &b| m.col_labels[b].cmp(&m.col_labels[a]));
    let entries = row_perm
        .iter()
        .map(|&i| col_perm.iter().map(|&j| m.entries[i][j].clone()).collect())
        .collect();
    Canonical {
        matrix: SymMatrix {
            entries,
            row_labels: row_perm.iter().map(|&i| m.row_labels[i]).collect(),
            col_labels: col_perm.iter().map(|&j| m.col_labels[j]).collect(),
        },
        row_perm,
        col_perm,
    }
}

/// `(h_{λ_i − μ_j − i + j})`, built over the all-`Right` cutting strip.
pub fn jacobi_trudi(shape: &SkewShape) -> SymMatrix {
    giambelli_matrix(&OutsideDecomposition::horizontal(shape)).transpose()
}

/// `(e_{λ'_i − μ'_j − i + j})`, built over the all-`Up` cutting strip.
pub fn dual_jacobi_trudi(shape: &SkewShape) -> SymMatrix {
    giambelli_matrix(&OutsideDecomposition::vertical(shape))
}

/// A square matrix of symmetric polynomials in a fixed number of variables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    pub rows: Vec<Vec<SymPoly>>,
}

impl PolyMatrix {
    pub fn new(nvars: usize, rows: Vec<Vec<SymPoly>>) -> Self {
        PolyMatrix { nvars, rows }
    }

    pub fn identity(nvars: usize, n: usize) -> Self {
        let rows = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| if i == j { SymPoly::one(nvars) } else { SymPoly::zero(nvars) })
                    .collect()
            })
            .collect();
        PolyMatrix { nvars, rows }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn cols(&self) -> usize {
        self.rows.first().map_or(0, |r| r.len())
    }

    pub fn transpose(&self) -> PolyMatrix {
        let n = self.size();
        let m = self.cols();
        PolyMatrix {
            nvars: self.nvars,
            rows: (0..m).map(|j| (0..n).map(|i| self.rows[i][j].clone()).collect()).collect(),
        }
    }

    /// Position of the first differing entry.
    pub fn first_difference(&self, other: &PolyMatrix) -> Option<(usize, usize)> {
        if self.size() != other.size() || self.cols() != other.cols() {
            return Some((usize::MAX, usize::MAX));
        }
        for i in 0..self.size() {
            for j in 0..self.cols() {
                if self.rows[i][j] != other.rows[i][j] {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn to_json(&self) -> Value {
        json!({
            "nvars": self.nvars,
            "rows": self.rows.iter().map(|r| r.iter().map(|p| p.to_json()).collect::<Vec<_>>()).collect::<Vec<_>>(),
        })
    }
}

/// Evaluates every entry in `nvars` variables.
pub fn evaluate(m: &SymMatrix, nvars: usize) -> Result<PolyMatrix> {
    let degree = m.max_degree();
    if nvars < degree {
        return Err(Error::TooFewVars { vars: nvars, degree });
    }
    let mut cache = SchurCache::new(nvars);
    Ok(evaluate_with(m, &mut cache))
}

pub fn evaluate_with(m: &SymMatrix, cache: &mut SchurCache) -> PolyMatrix {
    PolyMatrix {
        nvars: cache.nvars(),
        rows: m
            .entries
            .iter()
            .map(|r| r.iter().map(|e| e.evaluate(cache)).collect())
            .collect(),
    }
}

/// Exact determinant by Laplace expansion along rows, memoized over the set
/// of columns still available.
pub fn determinant(m: &PolyMatrix) -> Result<SymPoly> {
    let n = m.size();
    if m.rows.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare { rows: n, cols: m.cols() });
    }
    if n > 63 {
        return Err(Error::Internal(format!("{n}x{n} is too large for expansion")));
    }
    fn go(m: &PolyMatrix, mask: u64, memo: &mut HashMap<u64, SymPoly>) -> SymPoly {
        let n = m.size();
        let used = mask.count_ones() as usize;
        if used == n {
            return SymPoly::one(m.nvars);
        }
        if let Some(v) = memo.get(&mask) {
            return v.clone();
        }
        let row = used;
        let mut total = SymPoly::zero(m.nvars);
        let mut position = 0;
        for col in 0..n {
            if mask >> col & 1 == 1 {
                continue;
            }
            let a = &m.rows[row][col];
            if !a.is_zero() {
                let minor = go(m, mask | 1 << col, memo);
                if !minor.is_zero() {
                    let term = a * &minor;
                    total = if position % 2 == 0 { &total + &term } else { &total - &term };
                }
            }
            position += 1;
        }
        memo.insert(mask, total.clone());
        total
    }
    Ok(go(m, 0, &mut HashMap::new()))
}
