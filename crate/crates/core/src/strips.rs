//! Border strips, outside decompositions and twist transformations.
//!
//! A strip is stored as the content of its first box plus the up/right steps
//! that lead from each box to the next. An outside decomposition stores a
//! cutting strip spanning the whole content range `c_min..=c_max` of its
//! shape, from which every nonempty strip is recovered: the successor of a box
//! of content `c` is the box above it (step `Up` at `c`) or to its right
//! (step `Right` at `c`) when that box belongs to the shape. Empty strips
//! `[i+1, i]` are kept alongside.

use std::collections::{BTreeSet, HashSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::shapes::{BoxCoord, DiagonalType, SkewShape};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Step {
    Up,
    Right,
}

impl Step {
    pub fn flipped(self) -> Step {
        match self {
            Step::Up => Step::Right,
            Step::Right => Step::Up,
        }
    }

    pub fn letter(self) -> char {
        match self {
            Step::Up => 'U',
            Step::Right => 'R',
        }
    }
}

/// Parses a direction word such as `"RRUR"`.
pub fn parse_steps(text: &str) -> Result<Vec<Step>> {
    text.trim()
        .chars()
        .map(|ch| match ch.to_ascii_uppercase() {
            'U' => Ok(Step::Up),
            'R' => Ok(Step::Right),
            other => Err(Error::Parse {
                text: text.to_string(),
                reason: format!("`{other}` is not a direction (use U or R)"),
            }),
        })
        .collect()
}

pub fn steps_to_string(steps: &[Step]) -> String {
    steps.iter().map(|s| s.letter()).collect()
}

/// A border strip whose `k`-th box (0-based) has content `start + k`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BorderStrip {
    start: i64,
    steps: Vec<Step>,
}

/// The cutting strip of an outside decomposition.
pub type CuttingStrip = BorderStrip;

impl BorderStrip {
    pub fn new(start: i64, steps: Vec<Step>) -> Self {
        BorderStrip { start, steps }
    }

    /// The all-`Right` strip over contents `lo..=hi`.
    pub fn horizontal(lo: i64, hi: i64) -> Self {
        BorderStrip::new(lo, vec![Step::Right; (hi - lo).max(0) as usize])
    }

    /// The all-`Up` strip over contents `lo..=hi`.
    pub fn vertical(lo: i64, hi: i64) -> Self {
        BorderStrip::new(lo, vec![Step::Up; (hi - lo).max(0) as usize])
    }

    pub fn first_content(&self) -> i64 {
        self.start
    }

    pub fn last_content(&self) -> i64 {
        self.start + self.steps.len() as i64
    }

    /// Number of boxes.
    pub fn len(&self) -> usize {
        self.steps.len() + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    /// The step leaving the box of content `c`.
    pub fn step_at(&self, c: i64) -> Option<Step> {
        if c < self.start {
            return None;
        }
        self.steps.get((c - self.start) as usize).copied()
    }

    /// The same strip with the step leaving content `c` reversed.
    pub fn flipped_at(&self, c: i64) -> Result<BorderStrip> {
        let idx = c - self.start;
        if idx < 0 || idx as usize >= self.steps.len() {
            return Err(Error::TwistOutOfRange {
                i: c,
                lo: self.start,
                hi: self.last_content() - 1,
            });
        }
        let mut steps = self.steps.clone();
        steps[idx as usize] = steps[idx as usize].flipped();
        Ok(BorderStrip::new(self.start, steps))
    }

    /// `φ[p, q]`: a sub-strip for `p <= q`, the empty strip for `p = q + 1`,
    /// undefined for `p > q + 1`.
    pub fn segment(&self, p: i64, q: i64) -> Result<Segment> {
        if p == q + 1 {
            return Ok(Segment::Empty);
        }
        if p > q + 1 {
            return Ok(Segment::Undefined);
        }
        if p < self.start || q > self.last_content() {
            return Err(Error::SegmentOutOfRange {
                p,
                q,
                lo: self.start,
                hi: self.last_content(),
            });
        }
        let from = (p - self.start) as usize;
        let to = (q - self.start) as usize;
        Ok(Segment::Strip(BorderStrip::new(
            p,
            self.steps[from..to].to_vec(),
        )))
    }

    /// Cells of the strip with its first box at `(0, 0)`; rows grow downward.
    pub fn cells(&self) -> Vec<(i64, i64)> {
        let mut cells = vec![(0, 0)];
        let (mut r, mut c) = (0i64, 0i64);
        for step in &self.steps {
            match step {
                Step::Up => r -= 1,
                Step::Right => c += 1,
            }
            cells.push((r, c));
        }
        cells
    }

    pub fn to_skew_shape(&self) -> SkewShape {
        SkewShape::from_boxes(self.cells()).expect("a border strip is a skew diagram")
    }
}

impl fmt::Display for BorderStrip {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.start, steps_to_string(&self.steps))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Segment {
    Strip(BorderStrip),
    Empty,
    Undefined,
}

pub fn segment(strip: &CuttingStrip, p: i64, q: i64) -> Result<Segment> {
    strip.segment(p, q)
}

/// The anchored skew diagram with the same box pattern as a strip segment.
pub fn strip_to_skew_shape(seg: &Segment) -> Result<SkewShape> {
    match seg {
        Segment::Strip(s) => Ok(s.to_skew_shape()),
        Segment::Empty => Err(Error::NotAStrip { p: 1, q: 0 }),
        Segment::Undefined => Err(Error::NotAStrip { p: 2, q: 0 }),
    }
}

fn upper_right(shape: &SkewShape) -> Option<(i64, i64)> {
    let top = shape.boxes().iter().map(|b| b.row).min()?;
    let col = shape.boxes().iter().filter(|b| b.row == top).map(|b| b.col).max()?;
    Some((top as i64, col as i64))
}

fn lower_left(shape: &SkewShape) -> Option<(i64, i64)> {
    let bottom = shape.boxes().iter().map(|b| b.row).max()?;
    let col = shape.boxes().iter().filter(|b| b.row == bottom).map(|b| b.col).min()?;
    Some((bottom as i64, col as i64))
}

fn glue(i: &SkewShape, j: &SkewShape, offset: (i64, i64)) -> Result<SkewShape> {
    let (ur, ll) = match (upper_right(i), lower_left(j)) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(Error::EmptyOperand),
    };
    let target = (ur.0 + offset.0, ur.1 + offset.1);
    let shift = (target.0 - ll.0, target.1 - ll.1);
    let cells = i
        .boxes()
        .iter()
        .map(|b| (b.row as i64, b.col as i64))
        .chain(
            j.boxes()
                .iter()
                .map(|b| (b.row as i64 + shift.0, b.col as i64 + shift.1)),
        );
    SkewShape::from_boxes(cells)
}

/// `I ▶ J`: the lower-left box of `J` glued to the right of the upper-right
/// box of `I`.
pub fn glue_right(i: &SkewShape, j: &SkewShape) -> Result<SkewShape> {
    glue(i, j, (0, 1))
}

/// `I ↑ J`: the lower-left box of `J` glued on top of the upper-right box of
/// `I`.
pub fn glue_up(i: &SkewShape, j: &SkewShape) -> Result<SkewShape> {
    glue(i, j, (-1, 0))
}

/// The initial and terminal contents `[p, q]` of one strip; `p = q + 1` marks
/// an empty strip.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct StripLabel {
    pub p: i64,
    pub q: i64,
}

impl StripLabel {
    pub fn new(p: i64, q: i64) -> Self {
        StripLabel { p, q }
    }

    pub fn is_empty(&self) -> bool {
        self.p == self.q + 1
    }
}

impl fmt::Display for StripLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{},{}]", self.p, self.q)
    }
}

/// Parses `"[4,5][3,3]"`, `"{[4,5],[3,3]}"` or `"[4,5],[3,3]"`.
pub fn parse_strip_labels(text: &str) -> Result<Vec<StripLabel>> {
    let bad = |reason: &str| Error::Parse {
        text: text.to_string(),
        reason: reason.to_string(),
    };
    let body = text.trim().trim_start_matches('{').trim_end_matches('}');
    let mut out = Vec::new();
    let mut rest = body.trim();
    while !rest.is_empty() {
        rest = rest.trim_start_matches([',', ' ']);
        if rest.is_empty() {
            break;
        }
        let open = rest.strip_prefix('[').ok_or_else(|| bad("expected `[`"))?;
        let close = open.find(']').ok_or_else(|| bad("missing `]`"))?;
        let (p, q) = open[..close]
            .split_once(',')
            .ok_or_else(|| bad("expected `p,q`"))?;
        let p: i64 = p.trim().parse().map_err(|_| bad("bad content"))?;
        let q: i64 = q.trim().parse().map_err(|_| bad("bad content"))?;
        out.push(StripLabel::new(p, q));
        rest = &open[close + 1..];
    }
    Ok(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct InitTerm {
    pub init: BTreeSet<i64>,
    pub term: BTreeSet<i64>,
}

/// How the initial and terminal contents change under a twist at `i`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistCase {
    /// `i+1` joins Init and `i` joins Term.
    A,
    /// `i+1` leaves Init and `i` leaves Term.
    B,
    /// `i ∈ Term`, `i+1 ∉ Init`, both sets unchanged.
    C,
    /// `i ∉ Term`, `i+1 ∈ Init`, both sets unchanged.
    D,
}

impl TwistCase {
    /// Determines the case from the sets before and after the twist.
    pub fn classify(before: &InitTerm, after: &InitTerm, i: i64) -> Option<TwistCase> {
        let in_term = before.term.contains(&i);
        let in_init = before.init.contains(&(i + 1));
        let mut grown = before.clone();
        grown.init.insert(i + 1);
        grown.term.insert(i);
        let mut shrunk = before.clone();
        shrunk.init.remove(&(i + 1));
        shrunk.term.remove(&i);
        match (in_term, in_init) {
            (false, false) if *after == grown => Some(TwistCase::A),
            (true, true) if *after == shrunk => Some(TwistCase::B),
            (true, false) if after == before => Some(TwistCase::C),
            (false, true) if after == before => Some(TwistCase::D),
            _ => None,
        }
    }

    /// The case a twist triggers on a diagonal of the given type when the
    /// diagonal currently carries `direction`.
    pub fn expected(dtype: DiagonalType, direction: Step) -> TwistCase {
        match (dtype, direction) {
            (DiagonalType::Type1, Step::Up) | (DiagonalType::Type2, Step::Right) => TwistCase::A,
            (DiagonalType::Type2, Step::Up) | (DiagonalType::Type1, Step::Right) => TwistCase::B,
            (DiagonalType::Type3, _) => TwistCase::C,
            (DiagonalType::Type4, _) => TwistCase::D,
        }
    }

    pub fn letter(self) -> &'static str {
        match self {
            TwistCase::A => "a",
            TwistCase::B => "b",
            TwistCase::C => "c",
            TwistCase::D => "d",
        }
    }
}

/// Which rule produced a twist on a general skew shape.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum TwistRule {
    /// Boxes of content `i` and `i+1` exist: the connected region is twisted.
    Region,
    /// A box of content `i` exists but none of content `i+1`.
    KeepOccupied,
    /// Neither content occurs: the empty strip `[i+1, i]` is toggled.
    ToggleEmpty,
    /// A box of content `i+1` exists but none of content `i`.
    KeepNext,
}

impl TwistRule {
    pub fn label(self) -> &'static str {
        match self {
            TwistRule::Region => "a'",
            TwistRule::KeepOccupied => "b'",
            TwistRule::ToggleEmpty => "c'",
            TwistRule::KeepNext => "d'",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwistOutcome {
    pub decomposition: OutsideDecomposition,
    pub rule: TwistRule,
    pub case: TwistCase,
}

impl TwistOutcome {
    /// `"a'(b)"` for a region twist, the rule label otherwise.
    pub fn label(&self) -> String {
        match self.rule {
            TwistRule::Region => format!("a'({})", self.case.letter()),
            other => other.label().to_string(),
        }
    }
}

/// An outside decomposition: a shape, a cutting strip over `c_min..=c_max`,
/// and an ordered list of strips `θ_1, …, θ_m`.
#[derive(Clone, Debug, Eq)]
pub struct OutsideDecomposition {
    shape: SkewShape,
    cutting: CuttingStrip,
    strips: Vec<StripLabel>,
}

impl PartialEq for OutsideDecomposition {
    /// Strip order is presentation only.
    fn eq(&self, other: &Self) -> bool {
        self.shape == other.shape
            && self.cutting == other.cutting
            && self.sorted_strips() == other.sorted_strips()
    }
}

fn frame(shape: &SkewShape) -> (i64, i64) {
    shape.content_range().unwrap_or((0, 0))
}

/// Follows the cutting-strip directions through the shape.
fn trace(shape: &SkewShape, cutting: &CuttingStrip) -> Vec<Vec<BoxCoord>> {
    let successor = |b: BoxCoord| -> Option<BoxCoord> {
        let (r, c) = (b.row as i64, b.col as i64);
        let next = match cutting.step_at(b.content())? {
            Step::Up => (r - 1, c),
            Step::Right => (r, c + 1),
        };
        shape
            .contains(next.0, next.1)
            .then(|| BoxCoord::new(next.0 as usize, next.1 as usize))
    };
    let predecessor = |b: BoxCoord| -> Option<BoxCoord> {
        let (r, c) = (b.row as i64, b.col as i64);
        let prev = match cutting.step_at(b.content() - 1)? {
            Step::Up => (r + 1, c),
            Step::Right => (r, c - 1),
        };
        shape
            .contains(prev.0, prev.1)
            .then(|| BoxCoord::new(prev.0 as usize, prev.1 as usize))
    };
    let mut strips = Vec::new();
    for &b in shape.boxes() {
        if predecessor(b).is_some() {
            continue;
        }
        let mut strip = vec![b];
        let mut cur = b;
        while let Some(next) = successor(cur) {
            strip.push(next);
            cur = next;
        }
        strips.push(strip);
    }
    strips
}

fn sort_by_p_desc(strips: &mut [StripLabel]) {
    strips.sort_by(|a, b| b.p.cmp(&a.p).then(b.q.cmp(&a.q)));
}

impl OutsideDecomposition {
    /// Builds a decomposition from a cutting strip over the full content range
    /// and a set of empty-strip initial contents; strips are ordered by
    /// decreasing initial content.
    pub fn from_frame_directions(
        shape: &SkewShape,
        cutting: CuttingStrip,
        empty_starts: &BTreeSet<i64>,
    ) -> Result<Self> {
        let (lo, hi) = frame(shape);
        if cutting.first_content() != lo || cutting.last_content() != hi {
            return Err(Error::LengthMismatch {
                what: "cutting-strip boxes",
                expected: (hi - lo + 1) as usize,
                found: cutting.len(),
            });
        }
        let mut strips: Vec<StripLabel> = trace(shape, &cutting)
            .iter()
            .map(|s| StripLabel::new(s[0].content(), s[s.len() - 1].content()))
            .collect();
        for &p in empty_starts {
            strips.push(StripLabel::new(p, p - 1));
        }
        sort_by_p_desc(&mut strips);
        let pi = OutsideDecomposition {
            shape: shape.clone(),
            cutting,
            strips,
        };
        pi.check_labels()?;
        Ok(pi)
    }

    /// `θ_i = φ_h[μ_i - i + 1, λ_i - i]`, one strip per row of `λ`.
    pub fn horizontal(shape: &SkewShape) -> Self {
        let (lo, hi) = frame(shape);
        let (outer, inner) = (shape.outer(), shape.inner());
        let strips = (1..=outer.len())
            .map(|i| {
                let i64_i = i as i64;
                StripLabel::new(inner.part(i) as i64 - i64_i + 1, outer.part(i) as i64 - i64_i)
            })
            .collect();
        OutsideDecomposition {
            shape: shape.clone(),
            cutting: BorderStrip::horizontal(lo, hi),
            strips,
        }
    }

    /// `θ'_j = φ_e[-λ'_j + j, -μ'_j + j - 1]`, one strip per column of `λ`.
    pub fn vertical(shape: &SkewShape) -> Self {
        let (lo, hi) = frame(shape);
        let (outer, inner) = (shape.outer().conjugate(), shape.inner().conjugate());
        let strips = (1..=outer.len())
            .map(|j| {
                let j64 = j as i64;
                StripLabel::new(-(outer.part(j) as i64) + j64, -(inner.part(j) as i64) + j64 - 1)
            })
            .collect();
        OutsideDecomposition {
            shape: shape.clone(),
            cutting: BorderStrip::vertical(lo, hi),
            strips,
        }
    }

    /// The decomposition of a connected shape whose cutting strip is `strip`
    /// (one box per nonempty diagonal). Contents of the frame outside the
    /// occupied range get `Right`.
    pub fn from_cutting_strip(shape: &SkewShape, strip: &CuttingStrip) -> Result<Self> {
        if shape.is_empty() {
            return Err(Error::EmptyShape(shape.to_string()));
        }
        if !shape.is_edgewise_connected() {
            return Err(Error::Disconnected(shape.to_string()));
        }
        let d = shape.diagonal_count();
        if strip.len() != d {
            return Err(Error::LengthMismatch {
                what: "cutting-strip boxes",
                expected: d,
                found: strip.len(),
            });
        }
        let occupied = shape.occupied_contents();
        let first = *occupied.iter().next().unwrap();
        let (lo, hi) = frame(shape);
        let steps = (lo..hi)
            .map(|c| {
                if c >= first && c < first + strip.steps().len() as i64 {
                    strip.steps()[(c - first) as usize]
                } else {
                    Step::Right
                }
            })
            .collect();
        OutsideDecomposition::from_frame_directions(shape, BorderStrip::new(lo, steps), &BTreeSet::new())
    }

    /// Like [`from_cutting_strip`](Self::from_cutting_strip) but with one step
    /// per content of the full range `c_min..c_max`.
    pub fn from_directions(shape: &SkewShape, steps: Vec<Step>) -> Result<Self> {
        let (lo, _) = frame(shape);
        OutsideDecomposition::from_frame_directions(shape, BorderStrip::new(lo, steps), &BTreeSet::new())
    }

    pub fn shape(&self) -> &SkewShape {
        &self.shape
    }

    /// The cutting strip over the full content range.
    pub fn cutting_strip(&self) -> &CuttingStrip {
        &self.cutting
    }

    /// The cutting strip restricted to the nonempty diagonals; for a
    /// connected shape this is the strip of the one-to-one correspondence.
    pub fn occupied_cutting_strip(&self) -> Option<CuttingStrip> {
        let occupied = self.shape.occupied_contents();
        let (first, last) = (*occupied.iter().next()?, *occupied.iter().last()?);
        match self.cutting.segment(first, last).ok()? {
            Segment::Strip(s) => Some(s),
            _ => None,
        }
    }

    /// Strips in their stored order `θ_1, …, θ_m`.
    pub fn strips(&self) -> &[StripLabel] {
        &self.strips
    }

    /// Strips by decreasing initial content.
    pub fn sorted_strips(&self) -> Vec<StripLabel> {
        let mut s = self.strips.clone();
        sort_by_p_desc(&mut s);
        s
    }

    pub fn nonempty_strips(&self) -> Vec<StripLabel> {
        self.strips.iter().copied().filter(|s| !s.is_empty()).collect()
    }

    pub fn empty_starts(&self) -> BTreeSet<i64> {
        self.strips.iter().filter(|s| s.is_empty()).map(|s| s.p).collect()
    }

    pub fn len(&self) -> usize {
        self.strips.len()
    }

    pub fn is_empty(&self) -> bool {
        self.strips.is_empty()
    }

    pub fn init_term(&self) -> InitTerm {
        InitTerm {
            init: self.strips.iter().map(|s| s.p).collect(),
            term: self.strips.iter().map(|s| s.q).collect(),
        }
    }

    /// The boxes of every nonempty strip, recomputed from the cutting strip.
    pub fn strip_boxes(&self) -> Vec<(StripLabel, Vec<BoxCoord>)> {
        let mut out: Vec<(StripLabel, Vec<BoxCoord>)> = trace(&self.shape, &self.cutting)
            .into_iter()
            .map(|s| (StripLabel::new(s[0].content(), s[s.len() - 1].content()), s))
            .collect();
        out.sort_by(|a, b| b.0.p.cmp(&a.0.p));
        out
    }

    fn check_labels(&self) -> Result<()> {
        let it = self.init_term();
        if it.init.len() != self.strips.len() || it.term.len() != self.strips.len() {
            return Err(Error::InvalidDecomposition(format!(
                "repeated initial or terminal content in {self}"
            )));
        }
        Ok(())
    }

    /// Checks disjointness, coverage, the perimeter conditions and that every
    /// strip follows its cutting-strip segment.
    pub fn validate(&self) -> Result<()> {
        self.check_labels()?;
        let fail = |m: String| Err(Error::InvalidDecomposition(m));
        let traced = self.strip_boxes();
        let mut labels: Vec<StripLabel> = traced.iter().map(|t| t.0).collect();
        sort_by_p_desc(&mut labels);
        if labels != self.nonempty_strips_sorted() {
            return fail(format!("strip labels of {self} disagree with the cutting strip"));
        }
        let mut seen = HashSet::new();
        for (label, boxes) in &traced {
            for b in boxes {
                if !seen.insert(*b) {
                    return fail(format!("box {b} covered twice"));
                }
            }
            let first = boxes[0];
            let last = boxes[boxes.len() - 1];
            let (fr, fc) = (first.row as i64, first.col as i64);
            let (lr, lc) = (last.row as i64, last.col as i64);
            if self.shape.contains(fr, fc - 1) && self.shape.contains(fr + 1, fc) {
                return fail(format!("strip {label} does not start on the left or bottom perimeter"));
            }
            if self.shape.contains(lr, lc + 1) && self.shape.contains(lr - 1, lc) {
                return fail(format!("strip {label} does not end on the right or top perimeter"));
            }
            let pattern = BorderStrip::new(
                label.p,
                boxes
                    .windows(2)
                    .map(|w| if w[1].row < w[0].row { Step::Up } else { Step::Right })
                    .collect(),
            );
            if self.cutting.segment(label.p, label.q)? != Segment::Strip(pattern) {
                return fail(format!("strip {label} differs from its cutting-strip segment"));
            }
        }
        if seen.len() != self.shape.len() {
            return fail("strips do not cover the shape".to_string());
        }
        Ok(())
    }

    fn nonempty_strips_sorted(&self) -> Vec<StripLabel> {
        let mut s = self.nonempty_strips();
        sort_by_p_desc(&mut s);
        s
    }

    /// The twist `ω_i`: reverses the cutting-strip step at content `i`
    /// (`c_min <= i < c_max`) and re-segments. The rule is chosen from which
    /// of the contents `i`, `i+1` occur in the shape.
    pub fn twist(&self, i: i64) -> Result<TwistOutcome> {
        let (lo, hi) = frame(&self.shape);
        if self.shape.outer().is_empty() || i < lo || i >= hi {
            return Err(Error::TwistOutOfRange { i, lo, hi: hi - 1 });
        }
        let has_i = self.shape.has_content(i);
        let has_next = self.shape.has_content(i + 1);
        let has_below = self.shape.boxes().iter().any(|b| b.content() < i);
        let rule = match (has_i, has_next) {
            (true, true) => TwistRule::Region,
            (true, false) => TwistRule::KeepOccupied,
            (false, false) if has_below => TwistRule::ToggleEmpty,
            (false, true) if has_below => TwistRule::KeepNext,
            _ => return Err(Error::NoTwistRule(i)),
        };
        let mut empties = self.empty_starts();
        if rule == TwistRule::ToggleEmpty && !empties.remove(&(i + 1)) {
            empties.insert(i + 1);
        }
        let cutting = self.cutting.flipped_at(i)?;
        let decomposition = OutsideDecomposition::from_frame_directions(&self.shape, cutting, &empties)?;
        let case = TwistCase::classify(&self.init_term(), &decomposition.init_term(), i).ok_or_else(|| {
            Error::Internal(format!(
                "twist at {i} of {self} gives {decomposition}, matching no Init/Term case"
            ))
        })?;
        Ok(TwistOutcome {
            decomposition,
            rule,
            case,
        })
    }

    /// `{[4,5],[3,3],…}` with strips by decreasing initial content.
    pub fn bracket_notation(&self) -> String {
        let inner: Vec<String> = self.sorted_strips().iter().map(|s| s.to_string()).collect();
        format!("{{{}}}", inner.join(","))
    }

    pub fn directions(&self) -> String {
        steps_to_string(self.cutting.steps())
    }

    pub fn to_json(&self) -> serde_json::Value {
        serde_json::json!({
            "shape": self.shape.to_string(),
            "strips": self.sorted_strips().iter().map(|s| [s.p, s.q]).collect::<Vec<_>>(),
            "directions": self.directions(),
        })
    }
}

impl fmt::Display for OutsideDecomposition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for s in self.sorted_strips() {
            write!(f, "{s}")?;
        }
        Ok(())
    }
}

/// The cutting strip of `pi`.
pub fn cutting_strip(pi: &OutsideDecomposition) -> &CuttingStrip {
    pi.cutting_strip()
}

pub fn horizontal_decomposition(shape: &SkewShape) -> OutsideDecomposition {
    OutsideDecomposition::horizontal(shape)
}

pub fn vertical_decomposition(shape: &SkewShape) -> OutsideDecomposition {
    OutsideDecomposition::vertical(shape)
}

pub fn decomposition_from_cutting_strip(shape: &SkewShape, strip: &CuttingStrip) -> Result<OutsideDecomposition> {
    OutsideDecomposition::from_cutting_strip(shape, strip)
}

pub fn init_term(pi: &OutsideDecomposition) -> InitTerm {
    pi.init_term()
}

pub fn twist(pi: &OutsideDecomposition, i: i64) -> Result<TwistOutcome> {
    pi.twist(i)
}

/// All `2^(d-1)` outside decompositions of a connected nonempty shape, one per
/// cutting strip with `d` boxes.
pub fn enumerate_decompositions(shape: &SkewShape) -> Result<impl Iterator<Item = OutsideDecomposition> + '_> {
    if shape.is_empty() {
        return Err(Error::EmptyShape(shape.to_string()));
    }
    if !shape.is_edgewise_connected() {
        return Err(Error::Disconnected(shape.to_string()));
    }
    let d = shape.diagonal_count();
    let first = *shape.occupied_contents().iter().next().unwrap();
    Ok((0u64..1 << (d - 1)).map(move |mask| {
        let steps = (0..d - 1)
            .map(|k| if mask >> k & 1 == 1 { Step::Up } else { Step::Right })
            .collect();
        OutsideDecomposition::from_cutting_strip(shape, &BorderStrip::new(first, steps))
            .expect("every d-box strip gives a decomposition")
    }))
}

/// Recovers the cutting strip (over the full content range) of a
/// decomposition given as explicit box sets. Where no strip joins contents
/// `c` and `c+1` the direction is the one in which no box of content `c` has
/// a neighbour; gaps between components get `Right`.
pub fn cutting_strip_from_boxes(shape: &SkewShape, strips: &[Vec<BoxCoord>]) -> Result<CuttingStrip> {
    let (lo, hi) = frame(shape);
    let mut steps = Vec::new();
    for c in lo..hi {
        let mut found = None;
        for strip in strips {
            for w in strip.windows(2) {
                if w[0].content() == c {
                    let step = if w[1].row < w[0].row { Step::Up } else { Step::Right };
                    if found.is_some_and(|f| f != step) {
                        return Err(Error::InvalidDecomposition(format!(
                            "strips disagree on the direction at content {c}"
                        )));
                    }
                    found = Some(step);
                }
            }
        }
        let step = match found {
            Some(s) => s,
            None => {
                let diag = shape.diagonal(c);
                let any_up = diag.iter().any(|b| shape.contains(b.row as i64 - 1, b.col as i64));
                let any_right = diag.iter().any(|b| shape.contains(b.row as i64, b.col as i64 + 1));
                match (any_up, any_right) {
                    (true, true) => {
                        return Err(Error::InvalidDecomposition(format!(
                            "no strip continues past content {c}"
                        )))
                    }
                    (true, false) => Step::Right,
                    (false, true) => Step::Up,
                    (false, false) => Step::Right,
                }
            }
        };
        steps.push(step);
    }
    Ok(BorderStrip::new(lo, steps))
}

impl FromStr for BorderStrip {
    type Err = Error;

    /// `"<start>:<steps>"`, e.g. `"-3:URRR"`.
    fn from_str(text: &str) -> Result<Self> {
        let (start, steps) = text.split_once(':').ok_or_else(|| Error::Parse {
            text: text.to_string(),
            reason: "expected `start:steps`".to_string(),
        })?;
        let start: i64 = start.trim().parse().map_err(|_| Error::Parse {
            text: text.to_string(),
            reason: "bad start content".to_string(),
        })?;
        Ok(BorderStrip::new(start, parse_steps(steps)?))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn shape(text: &str) -> SkewShape {
        text.parse().unwrap()
    }

    fn labels(text: &str) -> Vec<StripLabel> {
        parse_strip_labels(text).unwrap()
    }

    #[test]
    fn horizontal_cases() {
        let a = OutsideDecomposition::horizontal(&shape("6,5,3,1/4,4,3"));
        assert_eq!(a.strips(), labels("[4,5],[3,3],[1,0],[-3,-3]").as_slice());
        assert_eq!(a.directions(), "RRRRRRRR");
        a.validate().unwrap();
        let h = OutsideDecomposition::horizontal(&shape("2,1"));
        assert_eq!(h.strips(), labels("[0,1][-1,-1]").as_slice());
        assert!(OutsideDecomposition::horizontal(&SkewShape::empty()).is_empty());
    }

    #[test]
    fn vertical_cases() {
        let a = OutsideDecomposition::vertical(&shape("6,5,3,1/4,4,3"));
        assert_eq!(
            a.sorted_strips(),
            labels("[5,5],[3,4],[2,1],[0,-1],[-1,-2],[-3,-3]")
        );
        a.validate().unwrap();
        assert_eq!(
            OutsideDecomposition::vertical(&shape("1,1")).strips(),
            labels("[-1,0]").as_slice()
        );
        assert!(OutsideDecomposition::vertical(&SkewShape::empty()).is_empty());
    }

    #[test]
    fn init_term_cases() {
        let a = OutsideDecomposition::horizontal(&shape("6,5,3,1/4,4,3"));
        let it = a.init_term();
        assert_eq!(it.init, BTreeSet::from([4, 3, 1, -3]));
        assert_eq!(it.term, BTreeSet::from([5, 3, 0, -3]));
        let v = OutsideDecomposition::vertical(&shape("6,5,3,1/4,4,3")).init_term();
        assert_eq!(v.init, BTreeSet::from([5, 3, 2, 0, -1, -3]));
        assert_eq!(v.term, BTreeSet::from([5, 4, 1, -1, -2, -3]));
        assert_eq!(
            OutsideDecomposition::horizontal(&SkewShape::empty()).init_term(),
            InitTerm::default()
        );
    }

    #[test]
    fn segments() {
        let phi = BorderStrip::horizontal(-3, 5);
        assert_eq!(
            phi.segment(4, 5).unwrap(),
            Segment::Strip(BorderStrip::new(4, vec![Step::Right]))
        );
        assert_eq!(phi.segment(1, 0).unwrap(), Segment::Empty);
        assert_eq!(phi.segment(5, 2).unwrap(), Segment::Undefined);
        assert!(matches!(phi.segment(-4, 0), Err(Error::SegmentOutOfRange { .. })));
    }

    #[test]
    fn strip_shapes() {
        let nine = BorderStrip::horizontal(-3, 5);
        assert_eq!(nine.to_skew_shape(), shape("9"));
        let row2: BorderStrip = "-3:URRRRRRR".parse().unwrap();
        assert_eq!(
            strip_to_skew_shape(&row2.segment(-3, 5).unwrap()).unwrap(),
            shape("8,1")
        );
        assert_eq!(BorderStrip::vertical(0, 1).to_skew_shape(), shape("1,1"));
        assert!(strip_to_skew_shape(&Segment::Empty).is_err());
    }

    #[test]
    fn gluing() {
        let one = shape("1");
        assert_eq!(glue_right(&one, &one).unwrap(), shape("2"));
        assert_eq!(glue_up(&one, &one).unwrap(), shape("1,1"));
        assert_eq!(glue_right(&shape("2"), &shape("1,1")).unwrap(), shape("3,3/2"));
        assert_eq!(glue_up(&shape("2"), &shape("1,1")).unwrap(), shape("2,2,2/1,1"));
        assert!(matches!(
            glue_right(&SkewShape::empty(), &one),
            Err(Error::EmptyOperand)
        ));
    }

    #[test]
    fn cutting_strip_examples() {
        let a = shape("6,5,3,1/4,4,3");
        let h = OutsideDecomposition::horizontal(&a);
        assert!(h.cutting_strip().steps().iter().all(|&s| s == Step::Right));
        let v = OutsideDecomposition::vertical(&a);
        assert!(v.cutting_strip().steps().iter().all(|&s| s == Step::Up));
        // third stage of the chain for 6,5,3,1/4,4,3: Up at -3 and -2, Right elsewhere
        let stage3 = h.twist(-3).unwrap().decomposition.twist(-2).unwrap().decomposition;
        assert_eq!(stage3.directions(), "UURRRRRR");
        assert_eq!(
            stage3.sorted_strips(),
            labels("{[4,5],[3,3],[1,0],[-1,-2],[-3,-3]}")
        );
    }

    #[test]
    fn bijection_endpoints() {
        let s = shape("3,3,2/1");
        let d = s.diagonal_count();
        let first = *s.occupied_contents().iter().next().unwrap();
        let right = OutsideDecomposition::from_cutting_strip(&s, &BorderStrip::horizontal(first, first + d as i64 - 1)).unwrap();
        assert_eq!(right, OutsideDecomposition::horizontal(&s));
        let up = OutsideDecomposition::from_cutting_strip(&s, &BorderStrip::vertical(first, first + d as i64 - 1)).unwrap();
        assert_eq!(up, OutsideDecomposition::vertical(&s));
        assert!(matches!(
            OutsideDecomposition::from_cutting_strip(&s, &BorderStrip::horizontal(0, 1)),
            Err(Error::LengthMismatch { .. })
        ));
    }

    #[test]
    fn enumeration_counts() {
        assert_eq!(enumerate_decompositions(&shape("1")).unwrap().count(), 1);
        assert_eq!(enumerate_decompositions(&shape("2,2")).unwrap().count(), 4);
        let all: Vec<_> = enumerate_decompositions(&shape("3,3,2/1")).unwrap().collect();
        assert_eq!(all.len(), 16);
        for pi in &all {
            pi.validate().unwrap();
        }
        assert!(matches!(
            enumerate_decompositions(&shape("6,5,3,1/4,4,3")),
            Err(Error::Disconnected(_))
        ));
    }

    #[test]
    fn twists_of_6531_443() {
        let h = OutsideDecomposition::horizontal(&shape("6,5,3,1/4,4,3"));
        let one = h.twist(-3).unwrap();
        assert_eq!(one.rule, TwistRule::KeepOccupied);
        assert_eq!(one.case, TwistCase::C);
        assert_eq!(one.decomposition.sorted_strips(), h.sorted_strips());
        assert_eq!(one.decomposition.cutting_strip().step_at(-3), Some(Step::Up));
        let two = one.decomposition.twist(-2).unwrap();
        assert_eq!(two.rule, TwistRule::ToggleEmpty);
        assert_eq!(two.case, TwistCase::A);
        assert_eq!(two.decomposition.len(), 5);
    }

    #[test]
    fn twist_is_an_involution_on_connected_shapes() {
        let s = shape("3,3,2/1");
        for pi in enumerate_decompositions(&s).unwrap() {
            for i in -2..2 {
                let back = pi.twist(i).unwrap().decomposition.twist(i).unwrap().decomposition;
                assert_eq!(back, pi);
            }
        }
    }

    #[test]
    fn twist_range_and_rules() {
        let h = OutsideDecomposition::horizontal(&shape("2,1"));
        assert!(matches!(h.twist(1), Err(Error::TwistOutOfRange { .. })));
        assert!(matches!(h.twist(-2), Err(Error::TwistOutOfRange { .. })));
        let gap = OutsideDecomposition::horizontal(&shape("2,2/1,1"));
        assert!(matches!(gap.twist(-1), Err(Error::NoTwistRule(-1))));
    }

    #[test]
    fn label_parsing() {
        assert_eq!(labels("[4,5][3,3]"), vec![StripLabel::new(4, 5), StripLabel::new(3, 3)]);
        assert_eq!(labels("{[1,0], [-1,-2]}"), vec![StripLabel::new(1, 0), StripLabel::new(-1, -2)]);
        assert!(parse_strip_labels("[1,").is_err());
        assert_eq!(parse_steps("RuR").unwrap(), vec![Step::Right, Step::Up, Step::Right]);
        assert!(parse_steps("RX").is_err());
    }
}
