//! Applies logged operations to evaluated matrices.
//!
//! Kept apart from the code that emits logs: it only reads the operations and
//! the start matrix.

use crate::error::{Error, Result};
use crate::gmatrix::{determinant, evaluate_with, PolyMatrix};
use crate::shapes::SkewShape;
use crate::stabeq::{AtomicOp, Coeff, OpLog};
use crate::symfun::{SchurCache, SymPoly};
use serde::Serialize;

fn coeff_value(c: &Coeff, cache: &mut SchurCache) -> SymPoly {
    let v = c.entry.evaluate(cache);
    if c.negative {
        -v
    } else {
        v
    }
}

fn check(op: &'static str, index: usize, size: usize) -> Result<()> {
    if index < size {
        Ok(())
    } else {
        Err(Error::IndexOutOfRange { op, index, size })
    }
}

/// Applies one operation, evaluating its coefficient through `cache`.
pub fn apply_op_with(m: &PolyMatrix, op: &AtomicOp, cache: &mut SchurCache) -> Result<PolyMatrix> {
    let n = m.size();
    let nvars = m.nvars();
    let mut rows = m.rows.clone();
    match op {
        AtomicOp::AddRowMultiple { target, source, coeff } => {
            check("addRow", *target, n)?;
            check("addRow", *source, n)?;
            if target == source {
                return Err(Error::IndexOutOfRange { op: "addRow", index: *target, size: n });
            }
            let c = coeff_value(coeff, cache);
            for j in 0..n {
                let add = &c * &m.rows[*source][j];
                rows[*target][j] = &rows[*target][j] + &add;
            }
        }
        AtomicOp::AddColMultiple { target, source, coeff } => {
            check("addCol", *target, n)?;
            check("addCol", *source, n)?;
            if target == source {
                return Err(Error::IndexOutOfRange { op: "addCol", index: *target, size: n });
            }
            let c = coeff_value(coeff, cache);
            for row in rows.iter_mut() {
                let add = &c * &row[*source];
                row[*target] = &row[*target] + &add;
            }
        }
        AtomicOp::ScaleRow { index, unit } => {
            check("scaleRow", *index, n)?;
            if *unit == -1 {
                rows[*index] = rows[*index].iter().map(|p| -p).collect();
            }
        }
        AtomicOp::ScaleCol { index, unit } => {
            check("scaleCol", *index, n)?;
            if *unit == -1 {
                for row in rows.iter_mut() {
                    row[*index] = -&row[*index];
                }
            }
        }
        AtomicOp::SwapRows(a, b) => {
            check("swapRows", *a, n)?;
            check("swapRows", *b, n)?;
            rows.swap(*a, *b);
        }
        AtomicOp::SwapCols(a, b) => {
            check("swapCols", *a, n)?;
            check("swapCols", *b, n)?;
            for row in rows.iter_mut() {
                row.swap(*a, *b);
            }
        }
        AtomicOp::Stabilize => {
            let mut out = Vec::with_capacity(n + 1);
            let mut first = vec![SymPoly::zero(nvars); n + 1];
            first[0] = SymPoly::one(nvars);
            out.push(first);
            for row in rows {
                let mut r = Vec::with_capacity(n + 1);
                r.push(SymPoly::zero(nvars));
                r.extend(row);
                out.push(r);
            }
            rows = out;
        }
        AtomicOp::Destabilize => {
            if n == 0 || !rows[0][0].is_one() || (1..n).any(|k| !rows[0][k].is_zero() || !rows[k][0].is_zero()) {
                return Err(Error::DestabilizePattern);
            }
            rows = rows.into_iter().skip(1).map(|r| r.into_iter().skip(1).collect()).collect();
        }
    }
    if let AtomicOp::ScaleRow { unit, .. } | AtomicOp::ScaleCol { unit, .. } = op {
        if unit.abs() != 1 {
            return Err(Error::Replay {
                index: 0,
                op: op.to_string(),
                reason: "scaling factor must be a unit".to_string(),
            });
        }
    }
    Ok(PolyMatrix::new(nvars, rows))
}

/// Applies one operation.
pub fn apply_op(m: &PolyMatrix, op: &AtomicOp) -> Result<PolyMatrix> {
    apply_op_with(m, op, &mut SchurCache::new(m.nvars()))
}

/// Folds every operation of `log` over `start`.
pub fn replay(start: &PolyMatrix, log: &OpLog) -> Result<PolyMatrix> {
    let mut cache = SchurCache::new(start.nvars());
    replay_snapshots(start, log, &[], &mut cache).map(|r| r.0)
}

/// Replays `log`, also returning the matrix after the first `after` ops for
/// each requested `after`.
pub fn replay_snapshots(
    start: &PolyMatrix,
    log: &OpLog,
    points: &[usize],
    cache: &mut SchurCache,
) -> Result<(PolyMatrix, Vec<PolyMatrix>)> {
    let mut m = start.clone();
    let mut snaps: Vec<Option<PolyMatrix>> = vec![None; points.len()];
    let take = |m: &PolyMatrix, k: usize, snaps: &mut Vec<Option<PolyMatrix>>| {
        for (slot, &p) in snaps.iter_mut().zip(points) {
            if p == k {
                *slot = Some(m.clone());
            }
        }
    };
    take(&m, 0, &mut snaps);
    for (k, o) in log.ops.iter().enumerate() {
        m = apply_op_with(&m, &o.op, cache).map_err(|e| Error::Replay {
            index: k,
            op: o.op.to_string(),
            reason: e.to_string(),
        })?;
        take(&m, k + 1, &mut snaps);
    }
    let snaps = snaps
        .into_iter()
        .map(|s| s.ok_or_else(|| Error::Internal("checkpoint past the end of the log".to_string())))
        .collect::<Result<Vec<_>>>()?;
    Ok((m, snaps))
}

#[derive(Clone, Debug, Serialize)]
pub struct CheckpointReport {
    pub label: String,
    pub after: usize,
    pub size: usize,
    pub matches: bool,
    /// `Some(true)` when the determinant is `±s_{λ/μ}`; only checked at stages.
    pub det_ok: Option<bool>,
    pub det_sign: Option<i32>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ChainReport {
    pub shape: String,
    pub nvars: usize,
    pub ops: usize,
    pub op_counts: std::collections::BTreeMap<String, usize>,
    pub cases: Vec<String>,
    pub checkpoints: Vec<CheckpointReport>,
    pub endpoint_match: bool,
    pub det_factor: i32,
    pub errors: Vec<String>,
}

impl ChainReport {
    pub fn passed(&self) -> bool {
        self.errors.is_empty() && self.endpoint_match && self.checkpoints.iter().all(|c| c.matches && c.det_ok != Some(false))
    }
}

/// The number of variables used when none is given: enough for the shape and
/// for every entry met along its chain.
pub fn default_vars(shape: &SkewShape) -> Result<usize> {
    Ok(crate::stabeq::chain(shape)?.max_degree().max(shape.len()).max(1))
}

/// Builds the chain of `shape`, replays it from the evaluated start matrix
/// and compares every checkpoint and the end. `nvars` must cover every entry
/// degree met along the chain.
pub fn verify_chain(shape: &SkewShape, nvars: usize) -> Result<ChainReport> {
    if nvars < shape.len() {
        return Err(Error::TooFewVars { vars: nvars, degree: shape.len() });
    }
    let mut report = ChainReport {
        shape: shape.to_string(),
        nvars,
        ops: 0,
        op_counts: Default::default(),
        cases: Vec::new(),
        checkpoints: Vec::new(),
        endpoint_match: false,
        det_factor: 1,
        errors: Vec::new(),
    };
    let log = match crate::stabeq::chain(shape) {
        Ok(l) => l,
        Err(e) => {
            report.errors.push(e.to_string());
            return Ok(report);
        }
    };
    let degree = log.max_degree();
    if nvars < degree {
        return Err(Error::TooFewVars { vars: nvars, degree });
    }
    verify_log(&log, shape, nvars, &mut report);
    Ok(report)
}

/// Checks a log against its own checkpoints; `shape` fixes `s_{λ/μ}`.
pub fn verify_log(log: &OpLog, shape: &SkewShape, nvars: usize, report: &mut ChainReport) {
    report.ops = log.len();
    report.op_counts = log.op_counts().into_iter().map(|(k, v)| (k.to_string(), v)).collect();
    report.cases = log.cases.clone();
    report.det_factor = log.det_factor();
    let mut cache = SchurCache::new(nvars);
    let target = cache.get(shape);
    let start = evaluate_with(&log.start.matrix, &mut cache);
    let points: Vec<usize> = log.checkpoints.iter().map(|c| c.after).collect();
    let (end, snaps) = match replay_snapshots(&start, log, &points, &mut cache) {
        Ok(r) => r,
        Err(e) => {
            report.errors.push(e.to_string());
            return;
        }
    };
    for (c, snap) in log.checkpoints.iter().zip(&snaps) {
        let expected = evaluate_with(&c.expected, &mut cache);
        let (det_ok, det_sign) = if c.stage.is_some() {
            match determinant(snap) {
                Ok(d) if d == target => (Some(true), Some(1)),
                Ok(d) if d == -&target => (Some(true), Some(-1)),
                _ => (Some(false), None),
            }
        } else {
            (None, None)
        };
        report.checkpoints.push(CheckpointReport {
            label: c.label.clone(),
            after: c.after,
            size: snap.size(),
            matches: snap.first_difference(&expected).is_none(),
            det_ok,
            det_sign,
        });
    }
    let want = evaluate_with(&log.end.matrix, &mut cache);
    report.endpoint_match = end.first_difference(&want).is_none();
}
