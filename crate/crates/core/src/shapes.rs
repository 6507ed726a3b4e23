//! Partitions, skew diagrams and their diagonals.
//!
//! Boxes use matrix coordinates: row 1 is the top row, column 1 the leftmost
//! column, and the content of box `(i, j)` is `j - i`. Boxes of one content
//! run from the upper left to the lower right of the diagram.

use std::collections::{BTreeMap, BTreeSet, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A weakly decreasing sequence of positive integers.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Partition {
    parts: Vec<usize>,
}

impl Partition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        let ok = parts.iter().all(|&p| p > 0) && parts.windows(2).all(|w| w[0] >= w[1]);
        if !ok {
            return Err(Error::NotAPartition(
                parts.iter().map(|&p| p as i64).collect(),
            ));
        }
        Ok(Partition { parts })
    }

    /// Builds a partition from possibly padded parts, dropping trailing zeros.
    pub fn from_padded(mut parts: Vec<usize>) -> Result<Self> {
        while parts.last() == Some(&0) {
            parts.pop();
        }
        Partition::new(parts)
    }

    pub fn empty() -> Self {
        Partition::default()
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn size(&self) -> usize {
        self.parts.iter().sum()
    }

    /// The `i`-th part, 1-based, with zero past the last part.
    pub fn part(&self, i: usize) -> usize {
        if i == 0 {
            return 0;
        }
        self.parts.get(i - 1).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(1);
        let parts = (1..=width)
            .map(|j| self.parts.iter().filter(|&&p| p >= j).count())
            .collect();
        Partition { parts }
    }

    /// `other ⊆ self`, comparing parts with missing parts read as zero.
    pub fn contains(&self, other: &Partition) -> bool {
        other.len() <= self.len() && (1..=other.len()).all(|i| other.part(i) <= self.part(i))
    }
}

impl TryFrom<Vec<usize>> for Partition {
    type Error = Error;

    fn try_from(parts: Vec<usize>) -> Result<Self> {
        Partition::new(parts)
    }
}

impl From<Partition> for Vec<usize> {
    fn from(p: Partition) -> Vec<usize> {
        p.parts
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let text: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&text.join(","))
    }
}

impl FromStr for Partition {
    type Err = Error;

    fn from_str(text: &str) -> Result<Self> {
        parse_partition(text)
    }
}

/// Parses a comma-separated list such as `"6,5,3,1"`; the empty string is
/// the empty partition.
pub fn parse_partition(text: &str) -> Result<Partition> {
    let trimmed = text.trim();
    if trimmed.is_empty() {
        return Ok(Partition::empty());
    }
    let mut parts = Vec::new();
    for token in trimmed.split(',') {
        let value: i64 = token.trim().parse().map_err(|_| Error::Parse {
            text: text.to_string(),
            reason: format!("`{}` is not an integer", token.trim()),
        })?;
        parts.push(value);
    }
    if parts.iter().any(|&p| p <= 0) {
        return Err(Error::NotAPartition(parts));
    }
    if parts.windows(2).any(|w| w[0] < w[1]) {
        return Err(Error::NotAPartition(parts));
    }
    Partition::new(parts.into_iter().map(|p| p as usize).collect())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoxCoord {
    pub row: usize,
    pub col: usize,
}

impl BoxCoord {
    pub fn new(row: usize, col: usize) -> Self {
        BoxCoord { row, col }
    }

    pub fn content(&self) -> i64 {
        content(*self)
    }
}

impl fmt::Display for BoxCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.row, self.col)
    }
}

pub fn content(b: BoxCoord) -> i64 {
    b.col as i64 - b.row as i64
}

/// The four diagonal types, keyed by whether the upper-left box of the
/// diagonal has a box directly above it and whether the lower-right box has a
/// box directly to its right.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DiagonalType {
    /// box above the first box, nothing right of the last box
    Type1,
    /// nothing above the first box, a box right of the last box
    Type2,
    /// neither
    Type3,
    /// both
    Type4,
}

impl DiagonalType {
    pub fn from_flags(above_first: bool, right_of_last: bool) -> Self {
        match (above_first, right_of_last) {
            (true, false) => DiagonalType::Type1,
            (false, true) => DiagonalType::Type2,
            (false, false) => DiagonalType::Type3,
            (true, true) => DiagonalType::Type4,
        }
    }
}

/// A maximal edgewise connected region of a skew diagram.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Component {
    pub boxes: Vec<BoxCoord>,
    pub min_content: i64,
    pub max_content: i64,
}

/// The skew diagram `outer / inner`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SkewShape {
    outer: Partition,
    inner: Partition,
    boxes: Vec<BoxCoord>,
}

impl SkewShape {
    pub fn new(outer: Partition, inner: Partition) -> Result<Self> {
        if !outer.contains(&inner) {
            return Err(Error::NotContained {
                outer: outer.to_string(),
                inner: inner.to_string(),
            });
        }
        let boxes = (1..=outer.len())
            .flat_map(|i| (inner.part(i) + 1..=outer.part(i)).map(move |j| BoxCoord::new(i, j)))
            .collect();
        Ok(SkewShape {
            outer,
            inner,
            boxes,
        })
    }

    pub fn straight(outer: Partition) -> Self {
        SkewShape::new(outer, Partition::empty()).expect("empty partition is contained in any partition")
    }

    pub fn empty() -> Self {
        SkewShape::straight(Partition::empty())
    }

    /// Rebuilds the skew diagram occupying exactly `boxes`, translated so that
    /// its top row is row 1 and its leftmost column is column 1.
    pub fn from_boxes<I: IntoIterator<Item = (i64, i64)>>(boxes: I) -> Result<Self> {
        let cells: BTreeSet<(i64, i64)> = boxes.into_iter().collect();
        if cells.is_empty() {
            return Ok(SkewShape::empty());
        }
        let min_row = cells.iter().map(|c| c.0).min().unwrap();
        let min_col = cells.iter().map(|c| c.1).min().unwrap();
        let mut rows: BTreeMap<usize, (usize, usize, usize)> = BTreeMap::new();
        for &(r, c) in &cells {
            let (r, c) = ((r - min_row + 1) as usize, (c - min_col + 1) as usize);
            let entry = rows.entry(r).or_insert((c, c, 0));
            entry.0 = entry.0.min(c);
            entry.1 = entry.1.max(c);
            entry.2 += 1;
        }
        let height = *rows.keys().last().unwrap();
        let mut outer = vec![0; height];
        let mut inner = vec![0; height];
        for r in (1..=height).rev() {
            match rows.get(&r) {
                Some(&(lo, hi, count)) => {
                    if hi - lo + 1 != count {
                        return Err(Error::NotASkewShape(format!("row {r} has a gap")));
                    }
                    outer[r - 1] = hi;
                    inner[r - 1] = lo - 1;
                }
                None => {
                    let below = if r < height { outer[r] } else { 0 };
                    outer[r - 1] = below;
                    inner[r - 1] = below;
                }
            }
        }
        let invalid = || Error::NotASkewShape(format!("{cells:?}"));
        let outer = Partition::from_padded(outer).map_err(|_| invalid())?;
        let inner = Partition::from_padded(inner).map_err(|_| invalid())?;
        let shape = SkewShape::new(outer, inner).map_err(|_| invalid())?;
        if shape.boxes.len() != cells.len() {
            return Err(invalid());
        }
        Ok(shape)
    }

    pub fn outer(&self) -> &Partition {
        &self.outer
    }

    pub fn inner(&self) -> &Partition {
        &self.inner
    }

    /// Boxes in row-major order.
    pub fn boxes(&self) -> &[BoxCoord] {
        &self.boxes
    }

    pub fn len(&self) -> usize {
        self.boxes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boxes.is_empty()
    }

    pub fn contains(&self, row: i64, col: i64) -> bool {
        if row < 1 || col < 1 {
            return false;
        }
        let (row, col) = (row as usize, col as usize);
        self.inner.part(row) < col && col <= self.outer.part(row)
    }

    pub fn contains_box(&self, b: BoxCoord) -> bool {
        self.contains(b.row as i64, b.col as i64)
    }

    /// `(c_min, c_max) = (1 - λ'_1, λ_1 - 1)`; `None` when the outer partition
    /// is empty.
    pub fn content_range(&self) -> Option<(i64, i64)> {
        if self.outer.is_empty() {
            return None;
        }
        Some((1 - self.outer.len() as i64, self.outer.part(1) as i64 - 1))
    }

    pub fn occupied_contents(&self) -> BTreeSet<i64> {
        self.boxes.iter().map(|b| b.content()).collect()
    }

    pub fn has_content(&self, c: i64) -> bool {
        self.boxes.iter().any(|b| b.content() == c)
    }

    /// Boxes of content `c`, from the upper-left one to the lower-right one.
    pub fn diagonal(&self, c: i64) -> Vec<BoxCoord> {
        let mut diag: Vec<BoxCoord> = self
            .boxes
            .iter()
            .copied()
            .filter(|b| b.content() == c)
            .collect();
        diag.sort_by_key(|b| b.row);
        diag
    }

    /// Number of nonempty diagonals.
    pub fn diagonal_count(&self) -> usize {
        self.occupied_contents().len()
    }

    /// Numbers the nonempty diagonals `1..=d` from the lower-left corner.
    pub fn diagonal_indices(&self) -> BTreeMap<i64, usize> {
        self.occupied_contents()
            .into_iter()
            .enumerate()
            .map(|(k, c)| (c, k + 1))
            .collect()
    }

    pub fn is_edgewise_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Maximal edgewise connected regions, by decreasing minimum content.
    pub fn components(&self) -> Vec<Component> {
        let cells: HashSet<BoxCoord> = self.boxes.iter().copied().collect();
        let mut seen: HashSet<BoxCoord> = HashSet::new();
        let mut out = Vec::new();
        for &start in &self.boxes {
            if !seen.insert(start) {
                continue;
            }
            let mut region = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(b) = queue.pop_front() {
                let (r, c) = (b.row as i64, b.col as i64);
                for (dr, dc) in [(-1, 0), (1, 0), (0, -1), (0, 1)] {
                    let (nr, nc) = (r + dr, c + dc);
                    if nr < 1 || nc < 1 {
                        continue;
                    }
                    let nb = BoxCoord::new(nr as usize, nc as usize);
                    if cells.contains(&nb) && seen.insert(nb) {
                        region.push(nb);
                        queue.push_back(nb);
                    }
                }
            }
            region.sort();
            let min_content = region.iter().map(|b| b.content()).min().unwrap();
            let max_content = region.iter().map(|b| b.content()).max().unwrap();
            out.push(Component {
                boxes: region,
                min_content,
                max_content,
            });
        }
        out.sort_by(|a, b| b.min_content.cmp(&a.min_content));
        out
    }

    pub fn diagonal_type(&self, c: i64) -> Result<DiagonalType> {
        let diag = self.diagonal(c);
        let (first, last) = match (diag.first(), diag.last()) {
            (Some(f), Some(l)) => (*f, *l),
            _ => return Err(Error::EmptyDiagonal(c)),
        };
        let above_first = self.contains(first.row as i64 - 1, first.col as i64);
        let right_of_last = self.contains(last.row as i64, last.col as i64 + 1);
        Ok(DiagonalType::from_flags(above_first, right_of_last))
    }

    pub fn first_column_empty(&self) -> bool {
        !self.outer.is_empty() && self.outer.len() == self.inner.len()
    }

    pub fn first_row_empty(&self) -> bool {
        !self.outer.is_empty() && self.outer.part(1) == self.inner.part(1)
    }

    /// Drops an empty first column: `ρ_i = λ_i - 1`, `ν_i = μ_i - 1`.
    pub fn remove_first_column(&self) -> Result<SkewShape> {
        if !self.first_column_empty() {
            return Err(Error::FirstColumnOccupied(self.to_string()));
        }
        let shift = |p: &Partition| {
            Partition::from_padded(p.parts().iter().map(|&x| x - 1).collect())
        };
        SkewShape::new(shift(&self.outer)?, shift(&self.inner)?)
    }

    /// Drops an empty first row.
    pub fn remove_first_row(&self) -> Result<SkewShape> {
        if !self.first_row_empty() {
            return Err(Error::FirstRowOccupied(self.to_string()));
        }
        let tail = |p: &Partition| Partition::from_padded(p.parts().iter().skip(1).copied().collect());
        SkewShape::new(tail(&self.outer)?, tail(&self.inner)?)
    }

    /// True when both the first row and the first column contain a box.
    pub fn is_normalized(&self) -> bool {
        !self.outer.is_empty() && !self.first_row_empty() && !self.first_column_empty()
    }

    pub fn conjugate(&self) -> SkewShape {
        SkewShape::new(self.outer.conjugate(), self.inner.conjugate())
            .expect("conjugation preserves containment")
    }

    /// One character per cell: `#` for a box, `·` for a cell of the inner
    /// partition.
    pub fn render_ascii(&self) -> String {
        let mut out = String::new();
        for i in 1..=self.outer.len() {
            for j in 1..=self.outer.part(i) {
                out.push(if j <= self.inner.part(i) { '·' } else { '#' });
            }
            out.push('\n');
        }
        out
    }
}

impl fmt::Display for SkewShape {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.inner.is_empty() {
            write!(f, "{}", self.outer)
        } else {
            write!(f, "{}/{}", self.outer, self.inner)
        }
    }
}

impl FromStr for SkewShape {
    type Err = Error;

    /// `"6,5,3,1/4,4,3"`, or `"2,1"` for a straight shape.
    fn from_str(text: &str) -> Result<Self> {
        let (outer, inner) = match text.split_once('/') {
            Some((o, i)) => (o, i),
            None => (text, ""),
        };
        SkewShape::new(parse_partition(outer)?, parse_partition(inner)?)
    }
}

impl Serialize for SkewShape {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for SkewShape {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let text = String::deserialize(deserializer)?;
        text.parse().map_err(serde::de::Error::custom)
    }
}

/// Partitions whose diagram fits in a `rows × cols` rectangle.
pub fn partitions_in_box(rows: usize, cols: usize) -> Vec<Partition> {
    fn go(rows: usize, max_part: usize, prefix: &mut Vec<usize>, out: &mut Vec<Partition>) {
        out.push(Partition {
            parts: prefix.clone(),
        });
        if prefix.len() == rows {
            return;
        }
        for p in 1..=max_part {
            prefix.push(p);
            go(rows, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(rows, cols, &mut Vec::new(), &mut out);
    out
}

/// Every skew shape with `1..=max_boxes` boxes, up to translation, whose outer
/// partition fits in a `max_boxes × max_boxes` square and whose first row and
/// first column are occupied. For connected shapes the square bound is
/// automatic, so `connected_only` yields each connected shape exactly once.
pub fn enumerate_skew_shapes(max_boxes: usize, connected_only: bool) -> Vec<SkewShape> {
    fn inners(
        outer: &Partition,
        i: usize,
        max_part: usize,
        budget: usize,
        prefix: &mut Vec<usize>,
        out: &mut Vec<Partition>,
    ) {
        if i > outer.len() {
            out.push(Partition::from_padded(prefix.clone()).unwrap());
            return;
        }
        // The last row must keep its first cell so that column 1 is occupied.
        let hi = if i == outer.len() { 0 } else { max_part.min(outer.part(i)) };
        for m in 0..=hi {
            let removed_here = outer.part(i) - m;
            if removed_here > budget {
                continue;
            }
            prefix.push(m);
            inners(outer, i + 1, m, budget - removed_here, prefix, out);
            prefix.pop();
        }
    }

    let mut shapes = Vec::new();
    for outer in partitions_in_box(max_boxes, max_boxes) {
        if outer.is_empty() {
            continue;
        }
        let mut candidates = Vec::new();
        inners(&outer, 1, outer.part(1), max_boxes, &mut Vec::new(), &mut candidates);
        for inner in candidates {
            if inner.part(1) == outer.part(1) {
                continue;
            }
            let shape = SkewShape::new(outer.clone(), inner).unwrap();
            if shape.is_empty() || shape.len() > max_boxes {
                continue;
            }
            if connected_only && !shape.is_edgewise_connected() {
                continue;
            }
            shapes.push(shape);
        }
    }
    shapes
}
