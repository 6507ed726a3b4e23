//! Logs of invertible matrix operations that carry one Giambelli type matrix
//! to another.
//!
//! Everything here works in the orientation of [`giambelli_matrix`]: rows are
//! initial contents, columns terminal contents. A full chain starts at
//! `M(Π_h) = Jᵀ` and ends at `M(Π_e) = D`; [`OpLog::transposed`] restates a
//! log for `J`, taking it to `Dᵀ`.
//!
//! A twist at `i` only changes entries whose segment `[p, q]` contains the
//! step from `i` to `i+1`, and for those `s_{φ'[p,q]} = s_{φ[p,i]} s_{φ[i+1,q]}
//! - s_{φ[p,q]}`. Every twist log is built from that single identity.

use std::collections::BTreeMap;
use std::fmt;

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gmatrix::{canonical_form, giambelli_matrix, MatrixEntry, SymMatrix};
use crate::shapes::SkewShape;
use crate::strips::{OutsideDecomposition, TwistCase, TwistOutcome, TwistRule};

/// A coefficient `±s_θ`, `±1` or `0`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Coeff {
    pub negative: bool,
    pub entry: MatrixEntry,
}

impl Coeff {
    pub fn plus(entry: MatrixEntry) -> Self {
        Coeff { negative: false, entry }
    }

    pub fn minus(entry: MatrixEntry) -> Self {
        Coeff { negative: true, entry }
    }

    pub fn negated(&self) -> Self {
        Coeff {
            negative: !self.negative,
            entry: self.entry.clone(),
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = self.entry.to_json();
        v["sign"] = json!(if self.negative { -1 } else { 1 });
        v
    }
}

impl fmt::Display for Coeff {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negative {
            write!(f, "-")?;
        }
        write!(f, "{}", self.entry.label_ascii())
    }
}

/// The invertible operations a log may contain. Indices are 0-based positions
/// in the matrix as it stands when the operation is applied.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum AtomicOp {
    /// row `target` += `coeff` × row `source`
    AddRowMultiple { target: usize, source: usize, coeff: Coeff },
    /// column `target` += `coeff` × column `source`
    AddColMultiple { target: usize, source: usize, coeff: Coeff },
    ScaleRow { index: usize, unit: i8 },
    ScaleCol { index: usize, unit: i8 },
    SwapRows(usize, usize),
    SwapCols(usize, usize),
    /// `M ↦ diag(1, M)`
    Stabilize,
    /// `diag(1, M) ↦ M`
    Destabilize,
}

impl AtomicOp {
    pub fn inverse(&self) -> AtomicOp {
        match self {
            AtomicOp::AddRowMultiple { target, source, coeff } => AtomicOp::AddRowMultiple {
                target: *target,
                source: *source,
                coeff: coeff.negated(),
            },
            AtomicOp::AddColMultiple { target, source, coeff } => AtomicOp::AddColMultiple {
                target: *target,
                source: *source,
                coeff: coeff.negated(),
            },
            AtomicOp::Stabilize => AtomicOp::Destabilize,
            AtomicOp::Destabilize => AtomicOp::Stabilize,
            other => other.clone(),
        }
    }

    /// The same operation acting on the transposed matrix.
    pub fn transposed(&self) -> AtomicOp {
        match self.clone() {
            AtomicOp::AddRowMultiple { target, source, coeff } => AtomicOp::AddColMultiple { target, source, coeff },
            AtomicOp::AddColMultiple { target, source, coeff } => AtomicOp::AddRowMultiple { target, source, coeff },
            AtomicOp::ScaleRow { index, unit } => AtomicOp::ScaleCol { index, unit },
            AtomicOp::ScaleCol { index, unit } => AtomicOp::ScaleRow { index, unit },
            AtomicOp::SwapRows(a, b) => AtomicOp::SwapCols(a, b),
            AtomicOp::SwapCols(a, b) => AtomicOp::SwapRows(a, b),
            other => other,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            AtomicOp::AddRowMultiple { .. } => "addRow",
            AtomicOp::AddColMultiple { .. } => "addCol",
            AtomicOp::ScaleRow { .. } => "scaleRow",
            AtomicOp::ScaleCol { .. } => "scaleCol",
            AtomicOp::SwapRows(..) => "swapRows",
            AtomicOp::SwapCols(..) => "swapCols",
            AtomicOp::Stabilize => "stabilize",
            AtomicOp::Destabilize => "destabilize",
        }
    }

    /// The factor by which the operation multiplies the determinant.
    pub fn det_factor(&self) -> i32 {
        match self {
            AtomicOp::ScaleRow { unit, .. } | AtomicOp::ScaleCol { unit, .. } => *unit as i32,
            AtomicOp::SwapRows(a, b) | AtomicOp::SwapCols(a, b) if a != b => -1,
            _ => 1,
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            AtomicOp::AddRowMultiple { target, source, coeff } | AtomicOp::AddColMultiple { target, source, coeff } => {
                json!({"op": self.name(), "target": target, "source": source, "coef": coeff.to_json()})
            }
            AtomicOp::ScaleRow { index, unit } | AtomicOp::ScaleCol { index, unit } => {
                json!({"op": self.name(), "index": index, "unit": unit})
            }
            AtomicOp::SwapRows(a, b) | AtomicOp::SwapCols(a, b) => json!({"op": self.name(), "i": a, "j": b}),
            AtomicOp::Stabilize | AtomicOp::Destabilize => json!({"op": self.name()}),
        }
    }
}

impl fmt::Display for AtomicOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AtomicOp::AddRowMultiple { target, source, coeff } => write!(f, "row {target} += ({coeff}) * row {source}"),
            AtomicOp::AddColMultiple { target, source, coeff } => write!(f, "col {target} += ({coeff}) * col {source}"),
            AtomicOp::ScaleRow { index, unit } => write!(f, "row {index} *= {unit}"),
            AtomicOp::ScaleCol { index, unit } => write!(f, "col {index} *= {unit}"),
            AtomicOp::SwapRows(a, b) => write!(f, "swap rows {a}, {b}"),
            AtomicOp::SwapCols(a, b) => write!(f, "swap cols {a}, {b}"),
            AtomicOp::Stabilize => write!(f, "stabilize"),
            AtomicOp::Destabilize => write!(f, "destabilize"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LoggedOp {
    pub op: AtomicOp,
    pub note: String,
}

/// A shape together with the matrix a log starts or ends at.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Descriptor {
    pub shape: SkewShape,
    pub decomposition: String,
    pub matrix: SymMatrix,
}

impl Descriptor {
    fn canonical(pi: &OutsideDecomposition) -> Self {
        Descriptor {
            shape: pi.shape().clone(),
            decomposition: pi.to_string(),
            matrix: canonical_form(pi).matrix,
        }
    }

    fn to_json(&self) -> Value {
        json!({
            "shape": self.shape.to_string(),
            "decomposition": self.decomposition,
            "matrix": self.matrix.to_json(),
        })
    }

    fn transposed(&self) -> Self {
        Descriptor {
            shape: self.shape.clone(),
            decomposition: self.decomposition.clone(),
            matrix: self.matrix.transpose(),
        }
    }
}

/// A decomposition reached by the chain, with the twist that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Stage {
    pub decomposition: OutsideDecomposition,
    pub twist_at: Option<i64>,
    pub case: Option<String>,
}

/// The matrix expected after the first `after` operations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Checkpoint {
    pub after: usize,
    pub label: String,
    pub expected: SymMatrix,
    pub stage: Option<Stage>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OpLog {
    pub start: Descriptor,
    pub end: Descriptor,
    pub ops: Vec<LoggedOp>,
    pub checkpoints: Vec<Checkpoint>,
    pub cases: Vec<String>,
}

impl OpLog {
    fn empty_at(d: Descriptor) -> Self {
        OpLog {
            start: d.clone(),
            end: d,
            ops: Vec::new(),
            checkpoints: Vec::new(),
            cases: Vec::new(),
        }
    }

    fn push(&mut self, op: AtomicOp, note: impl Into<String>) {
        self.ops.push(LoggedOp { op, note: note.into() });
    }

    fn checkpoint(&mut self, label: impl Into<String>, expected: SymMatrix, stage: Option<Stage>) {
        self.checkpoints.push(Checkpoint {
            after: self.ops.len(),
            label: label.into(),
            expected,
            stage,
        });
    }

    /// Appends `other`, whose start must be this log's end.
    fn extend(&mut self, other: OpLog) {
        let offset = self.ops.len();
        self.ops.extend(other.ops);
        self.checkpoints.extend(other.checkpoints.into_iter().map(|mut c| {
            c.after += offset;
            c
        }));
        self.cases.extend(other.cases);
        self.end = other.end;
    }

    pub fn len(&self) -> usize {
        self.ops.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ops.is_empty()
    }

    /// The log running from `end` back to `start`.
    pub fn inverse(&self) -> OpLog {
        let n = self.ops.len();
        let mut checkpoints: Vec<Checkpoint> = self
            .checkpoints
            .iter()
            .map(|c| Checkpoint {
                after: n - c.after,
                ..c.clone()
            })
            .collect();
        checkpoints.reverse();
        OpLog {
            start: self.end.clone(),
            end: self.start.clone(),
            ops: self
                .ops
                .iter()
                .rev()
                .map(|o| LoggedOp {
                    op: o.op.inverse(),
                    note: format!("undo: {}", o.note),
                })
                .collect(),
            checkpoints,
            cases: self.cases.iter().rev().cloned().collect(),
        }
    }

    /// The log acting on transposed matrices: row and column operations trade
    /// places, so a chain from `Jᵀ` to `D` becomes one from `J` to `Dᵀ`.
    pub fn transposed(&self) -> OpLog {
        OpLog {
            start: self.start.transposed(),
            end: self.end.transposed(),
            ops: self
                .ops
                .iter()
                .map(|o| LoggedOp {
                    op: o.op.transposed(),
                    note: o.note.clone(),
                })
                .collect(),
            checkpoints: self
                .checkpoints
                .iter()
                .map(|c| Checkpoint {
                    expected: c.expected.transpose(),
                    ..c.clone()
                })
                .collect(),
            cases: self.cases.clone(),
        }
    }

    pub fn stages(&self) -> Vec<(&Checkpoint, &Stage)> {
        self.checkpoints
            .iter()
            .filter_map(|c| c.stage.as_ref().map(|s| (c, s)))
            .collect()
    }

    pub fn op_counts(&self) -> BTreeMap<&'static str, usize> {
        let mut out = BTreeMap::new();
        for o in &self.ops {
            *out.entry(o.op.name()).or_insert(0) += 1;
        }
        out
    }

    /// Largest degree among the matrices and coefficients of the log; the
    /// number of variables at which entrywise comparisons are faithful.
    pub fn max_degree(&self) -> usize {
        let coeffs = self.ops.iter().map(|o| match &o.op {
            AtomicOp::AddRowMultiple { coeff, .. } | AtomicOp::AddColMultiple { coeff, .. } => coeff.entry.degree(),
            _ => 0,
        });
        let mats = self
            .checkpoints
            .iter()
            .map(|c| c.expected.max_degree())
            .chain([self.start.matrix.max_degree(), self.end.matrix.max_degree()]);
        coeffs.chain(mats).max().unwrap_or(0)
    }

    /// Product of the determinant factors of all operations.
    pub fn det_factor(&self) -> i32 {
        self.ops.iter().map(|o| o.op.det_factor()).product()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "start": self.start.to_json(),
            "end": self.end.to_json(),
            "ops": self.ops.iter().map(|o| {
                let mut v = o.op.to_json();
                v["note"] = json!(o.note);
                v
            }).collect::<Vec<_>>(),
            "cases": self.cases,
        })
    }

    /// One line per operation.
    pub fn render_trace(&self) -> String {
        let mut out = String::new();
        for (k, o) in self.ops.iter().enumerate() {
            for c in self.checkpoints.iter().filter(|c| c.after == k) {
                out.push_str(&format!("-- {}\n", c.label));
            }
            out.push_str(&format!("{k:4}  {:<40}  {}\n", o.op.to_string(), o.note));
        }
        for c in self.checkpoints.iter().filter(|c| c.after == self.ops.len()) {
            out.push_str(&format!("-- {}\n", c.label));
        }
        out
    }
}

/// Moves index `from` down to `to` (`to < from`) by adjacent swaps of rows
/// and columns, keeping the order of the others.
fn bubble_to(log: &mut OpLog, from: usize, to: usize, note: &str) {
    for k in (to..from).rev() {
        log.push(AtomicOp::SwapRows(k, k + 1), note);
        log.push(AtomicOp::SwapCols(k, k + 1), note);
    }
}

/// Swaps taking `M(Π)` to `C(Π)`.
pub fn permute_to_canonical(pi: &OutsideDecomposition) -> OpLog {
    let m = giambelli_matrix(pi);
    let c = canonical_form(pi);
    let mut log = OpLog::empty_at(Descriptor {
        shape: pi.shape().clone(),
        decomposition: pi.to_string(),
        matrix: m,
    });
    // position[k] = current slot of original row k
    let sort = |log: &mut OpLog, perm: &[usize], rows: bool| {
        let n = perm.len();
        let mut at: Vec<usize> = (0..n).collect();
        for k in 0..n {
            let slot = at.iter().position(|&x| x == perm[k]).unwrap();
            if slot != k {
                let op = if rows { AtomicOp::SwapRows(k, slot) } else { AtomicOp::SwapCols(k, slot) };
                log.push(op, "sort into decreasing order");
                at.swap(k, slot);
            }
        }
    };
    sort(&mut log, &c.row_perm, true);
    sort(&mut log, &c.col_perm, false);
    log.end = Descriptor::canonical(pi);
    log
}

/// Operations taking `C(big)` to `C(small)`, where `small` is the twist of
/// `big` at `i` that removes `i+1` from Init and `i` from Term.
fn shrink_ops(big: &OutsideDecomposition, i: i64, log: &mut OpLog) -> Result<()> {
    let c = canonical_form(big).matrix;
    let phi = big.cutting_strip();
    let r0 = c.row_labels.iter().position(|&p| p == i + 1);
    let c0 = c.col_labels.iter().position(|&q| q == i);
    let (r0, c0) = match (r0, c0) {
        (Some(r), Some(k)) => (r, k),
        _ => return Err(Error::Internal(format!("shrinking {big} at {i} needs p = {} and q = {i}", i + 1))),
    };
    for (j, &q) in c.col_labels.iter().enumerate().take(c0) {
        let a = MatrixEntry::from_segment(phi.segment(i + 1, q)?);
        log.push(
            AtomicOp::AddColMultiple {
                target: j,
                source: c0,
                coeff: Coeff::minus(a),
            },
            format!("subtract s_φ[{},{q}] × col {c0} from col {j}", i + 1),
        );
    }
    for (r, &p) in c.row_labels.iter().enumerate().skip(r0 + 1) {
        let b = MatrixEntry::from_segment(phi.segment(p, i)?);
        log.push(
            AtomicOp::AddRowMultiple {
                target: r,
                source: r0,
                coeff: Coeff::minus(b),
            },
            format!("subtract s_φ[{p},{i}] × row {r0} from row {r}"),
        );
    }
    for r in r0 + 1..c.rows() {
        log.push(AtomicOp::ScaleRow { index: r, unit: -1 }, "negate rows below the unit row");
    }
    for j in c0 + 1..c.cols() {
        log.push(AtomicOp::ScaleCol { index: j, unit: -1 }, "negate columns right of the unit column");
    }
    for k in (0..r0).rev() {
        log.push(AtomicOp::SwapRows(k, k + 1), "move the unit row to the top");
    }
    for k in (0..c0).rev() {
        log.push(AtomicOp::SwapCols(k, k + 1), "move the unit column to the left");
    }
    log.push(AtomicOp::Destabilize, "drop the unit row and column");
    Ok(())
}

/// Same-size twist with `i ∈ Term` and `i+1 ∉ Init`.
fn keep_term_ops(pi: &OutsideDecomposition, i: i64, log: &mut OpLog) -> Result<()> {
    let c = canonical_form(pi).matrix;
    let phi = pi.cutting_strip();
    let c0 = c
        .col_labels
        .iter()
        .position(|&q| q == i)
        .ok_or_else(|| Error::Internal(format!("no strip of {pi} ends at {i}")))?;
    for (j, &q) in c.col_labels.iter().enumerate().take(c0) {
        let a = MatrixEntry::from_segment(phi.segment(i + 1, q)?);
        log.push(
            AtomicOp::AddColMultiple {
                target: j,
                source: c0,
                coeff: Coeff::minus(a),
            },
            format!("subtract s_φ[{},{q}] × col {c0} from col {j}", i + 1),
        );
    }
    negate_low(&c, i, i, log);
    Ok(())
}

/// Same-size twist with `i ∉ Term` and `i+1 ∈ Init`.
fn keep_init_ops(pi: &OutsideDecomposition, i: i64, log: &mut OpLog) -> Result<()> {
    let c = canonical_form(pi).matrix;
    let phi = pi.cutting_strip();
    let r0 = c
        .row_labels
        .iter()
        .position(|&p| p == i + 1)
        .ok_or_else(|| Error::Internal(format!("no strip of {pi} starts at {}", i + 1)))?;
    for (r, &p) in c.row_labels.iter().enumerate().skip(r0 + 1) {
        let b = MatrixEntry::from_segment(phi.segment(p, i)?);
        log.push(
            AtomicOp::AddRowMultiple {
                target: r,
                source: r0,
                coeff: Coeff::minus(b),
            },
            format!("subtract s_φ[{p},{i}] × row {r0} from row {r}"),
        );
    }
    negate_low(&c, i, i - 1, log);
    Ok(())
}

/// Negates rows with `p <= p_max` and columns with `q <= q_max`.
fn negate_low(c: &SymMatrix, p_max: i64, q_max: i64, log: &mut OpLog) {
    for (r, &p) in c.row_labels.iter().enumerate() {
        if p <= p_max {
            log.push(AtomicOp::ScaleRow { index: r, unit: -1 }, format!("negate row {r}"));
        }
    }
    for (j, &q) in c.col_labels.iter().enumerate() {
        if q <= q_max {
            log.push(AtomicOp::ScaleCol { index: j, unit: -1 }, format!("negate col {j}"));
        }
    }
}

fn case_label(outcome: &TwistOutcome) -> String {
    match outcome.rule {
        TwistRule::Region => outcome.case.letter().to_string(),
        other => other.label().to_string(),
    }
}

/// The twist `ω_i` together with a log from `C(Π)` to `C(ω_i(Π))`.
pub fn twist_step(pi: &OutsideDecomposition, i: i64) -> Result<(TwistOutcome, OpLog)> {
    let outcome = pi.twist(i)?;
    let next = &outcome.decomposition;
    let mut log = OpLog::empty_at(Descriptor::canonical(pi));
    match outcome.case {
        TwistCase::C => keep_term_ops(pi, i, &mut log)?,
        TwistCase::D => keep_init_ops(pi, i, &mut log)?,
        TwistCase::B => shrink_ops(pi, i, &mut log)?,
        TwistCase::A => {
            let mut reverse = OpLog::empty_at(Descriptor::canonical(next));
            shrink_ops(next, i, &mut reverse)?;
            reverse.end = Descriptor::canonical(pi);
            log.ops = reverse.inverse().ops;
        }
    }
    log.end = Descriptor::canonical(next);
    let label = case_label(&outcome);
    log.cases.push(label.clone());
    log.checkpoint(
        format!("ω_{i} ({label}): {}", next.bracket_notation()),
        canonical_form(next).matrix,
        Some(Stage {
            decomposition: next.clone(),
            twist_at: Some(i),
            case: Some(label),
        }),
    );
    Ok((outcome, log))
}

/// `(ω_i(Π), log from C(Π) to C(ω_i(Π)))`.
pub fn twist_transform_ops(pi: &OutsideDecomposition, i: i64) -> Result<(OutsideDecomposition, OpLog)> {
    let (outcome, log) = twist_step(pi, i)?;
    Ok((outcome.decomposition, log))
}

/// Which preprocessing removal turned one shape into the next.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Removal {
    FirstColumn,
    FirstRow,
}

/// Removes empty first columns and rows until both are occupied.
pub fn normalize(shape: &SkewShape) -> Result<Vec<(Removal, SkewShape)>> {
    let mut steps = Vec::new();
    let mut cur = shape.clone();
    loop {
        let next = if cur.first_column_empty() {
            (Removal::FirstColumn, cur.remove_first_column()?)
        } else if cur.first_row_empty() {
            (Removal::FirstRow, cur.remove_first_row()?)
        } else {
            return Ok(steps);
        };
        cur = next.1.clone();
        steps.push(next);
    }
}

fn without_index(m: &SymMatrix, t: usize) -> Vec<Vec<String>> {
    (0..m.rows())
        .filter(|&r| r != t)
        .map(|r| {
            (0..m.cols())
                .filter(|&j| j != t)
                .map(|j| m.entries[r][j].label_ascii())
                .collect()
        })
        .collect()
}

/// Clears row or column `t`, whichever is not already a unit vector, moves
/// it to the front and destabilizes. Returns the remaining labels.
fn remove_unit_index(m: &SymMatrix, t: usize, log: &mut OpLog) -> Result<Vec<Vec<String>>> {
    let n = m.rows();
    let unit = |e: &MatrixEntry, on: bool| if on { *e == MatrixEntry::One } else { e.is_zero() };
    let col_unit = (0..n).all(|r| unit(&m.entries[r][t], r == t));
    let row_unit = (0..n).all(|j| unit(&m.entries[t][j], j == t));
    if col_unit {
        for j in (0..n).filter(|&j| j != t && !m.entries[t][j].is_zero()) {
            log.push(
                AtomicOp::AddColMultiple {
                    target: j,
                    source: t,
                    coeff: Coeff::minus(m.entries[t][j].clone()),
                },
                format!("clear row {t} against the unit column"),
            );
        }
    } else if row_unit {
        for r in (0..n).filter(|&r| r != t && !m.entries[r][t].is_zero()) {
            log.push(
                AtomicOp::AddRowMultiple {
                    target: r,
                    source: t,
                    coeff: Coeff::minus(m.entries[r][t].clone()),
                },
                format!("clear column {t} against the unit row"),
            );
        }
    } else {
        return Err(Error::Internal(format!("index {t} has neither a unit row nor a unit column")));
    }
    bubble_to(log, t, 0, "move the unit index to the front");
    log.push(AtomicOp::Destabilize, "drop the unit row and column");
    Ok(without_index(m, t))
}

fn labels(m: &SymMatrix) -> Vec<Vec<String>> {
    m.labels_ascii()
}

/// Reduces `build(from)` to `build(to)` for one preprocessing removal, where
/// `build` is `M(Π_h)` or `M(Π_e)`.
fn bridge(
    from: &SkewShape,
    to: &SkewShape,
    build: &dyn Fn(&SkewShape) -> SymMatrix,
    front: bool,
) -> Result<OpLog> {
    let start = build(from);
    let target = build(to);
    let mut log = OpLog::empty_at(Descriptor {
        shape: from.clone(),
        decomposition: String::new(),
        matrix: start.clone(),
    });
    let removed = start.rows() - target.rows();
    let mut current = start;
    for step in 0..removed {
        let t = if front { 0 } else { current.rows() - 1 };
        let rest = remove_unit_index(&current, t, &mut log)?;
        // the block left over is the matrix of a shape of the same kind
        current = SymMatrix {
            entries: (0..current.rows())
                .filter(|&r| r != t)
                .map(|r| (0..current.cols()).filter(|&j| j != t).map(|j| current.entries[r][j].clone()).collect())
                .collect(),
            row_labels: current.row_labels.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &v)| v).collect(),
            col_labels: current.col_labels.iter().enumerate().filter(|&(k, _)| k != t).map(|(_, &v)| v).collect(),
        };
        debug_assert_eq!(labels(&current), rest, "step {step}");
    }
    if labels(&current) != labels(&target) {
        return Err(Error::Internal(format!(
            "reducing the matrix of {from} did not give the matrix of {to}"
        )));
    }
    log.end = Descriptor {
        shape: to.clone(),
        decomposition: String::new(),
        matrix: target.clone(),
    };
    log.checkpoint(format!("matrix of {to}"), target, None);
    Ok(log)
}

fn m_h(s: &SkewShape) -> SymMatrix {
    giambelli_matrix(&OutsideDecomposition::horizontal(s))
}

fn m_e(s: &SkewShape) -> SymMatrix {
    giambelli_matrix(&OutsideDecomposition::vertical(s))
}

/// The full log from `M(Π_h) = Jᵀ` to `M(Π_e) = D`.
///
/// Empty first columns and rows are removed first on the `h` side, the
/// twists `ω_{c_min}, …, ω_{c_max - 1}` carry `C(Π_h)` to `C(Π_e)` for the
/// remaining shape, and the removals are undone on the `e` side.
pub fn chain(shape: &SkewShape) -> Result<OpLog> {
    let steps = normalize(shape)?;
    let mut shapes = vec![shape.clone()];
    shapes.extend(steps.iter().map(|s| s.1.clone()));
    let core = shapes.last().unwrap().clone();

    let pi_h = OutsideDecomposition::horizontal(shape);
    let mut log = OpLog::empty_at(Descriptor {
        shape: shape.clone(),
        decomposition: pi_h.to_string(),
        matrix: m_h(shape),
    });

    for (k, (removal, next)) in steps.iter().enumerate() {
        let front = *removal == Removal::FirstRow;
        log.extend(bridge(&shapes[k], next, &m_h, front)?);
    }

    let mut pi = OutsideDecomposition::horizontal(&core);
    log.checkpoint(
        format!("start: {}", pi.bracket_notation()),
        canonical_form(&pi).matrix,
        Some(Stage {
            decomposition: pi.clone(),
            twist_at: None,
            case: None,
        }),
    );
    log.extend({
        let mut perm = permute_to_canonical(&pi);
        perm.start = log.end.clone();
        perm
    });
    if !core.is_empty() {
        let (lo, hi) = core.content_range().unwrap();
        for i in lo..hi {
            let (outcome, step) = twist_step(&pi, i)?;
            log.extend(step);
            pi = outcome.decomposition;
        }
    }
    let pi_e = OutsideDecomposition::vertical(&core);
    if pi != pi_e {
        return Err(Error::Internal(format!(
            "twisting {core} ended at {pi}, not at the vertical decomposition {pi_e}"
        )));
    }
    log.extend(permute_to_canonical(&pi_e).inverse());
    log.checkpoint(format!("matrix of {core} in column order"), m_e(&core), None);

    for (k, (removal, next)) in steps.iter().enumerate().rev() {
        let front = *removal == Removal::FirstColumn;
        log.extend(bridge(&shapes[k], next, &m_e, front)?.inverse());
        log.checkpoint(format!("matrix of {}", shapes[k]), m_e(&shapes[k]), None);
    }
    log.end = Descriptor {
        shape: shape.clone(),
        decomposition: OutsideDecomposition::vertical(shape).to_string(),
        matrix: m_e(shape),
    };
    Ok(log)
}

/// The chain read backwards: from `M(Π_e) = D` to `M(Π_h) = Jᵀ`.
pub fn reverse_chain(shape: &SkewShape) -> Result<OpLog> {
    Ok(chain(shape)?.inverse())
}
