//! Exact integer predicates on planar point configurations.
//!
//! Coordinates are `i64` restricted to `|c| <= MAX_COORD` (2^30). Coordinate
//! differences then stay within 2^31, each product in the orientation
//! determinant within 2^62, and the determinant itself (twice a triangle area
//! inside a box of side 2^31) within 2^62, so every determinant is computed
//! exactly in `i64`. Points outside the bound are
//! rejected, never approximated.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest accepted absolute coordinate value.
pub const MAX_COORD: i64 = 1 << 30;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("coordinate ({x}, {y}) exceeds the supported bound |c| <= {MAX_COORD}")]
    CoordinateOverflow { x: i64, y: i64 },
    #[error("point index {index} out of range for a configuration of {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("degenerate input: {0}")]
    Degenerate(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_bounds(&self) -> bool {
        (-MAX_COORD..=MAX_COORD).contains(&self.x) && (-MAX_COORD..=MAX_COORD).contains(&self.y)
    }

    fn check(&self) -> Result<(), GeometryError> {
        if self.in_bounds() {
            Ok(())
        } else {
            Err(GeometryError::CoordinateOverflow {
                x: self.x,
                y: self.y,
            })
        }
    }
}

impl From<(i64, i64)> for Point {
    fn from((x, y): (i64, i64)) -> Self {
        Point { x, y }
    }
}

/// Turn direction of an ordered point triple.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    Clockwise,
    Collinear,
    CounterClockwise,
}

impl Orientation {
    pub fn as_i8(self) -> i8 {
        match self {
            Orientation::Clockwise => -1,
            Orientation::Collinear => 0,
            Orientation::CounterClockwise => 1,
        }
    }

    pub fn reversed(self) -> Self {
        match self {
            Orientation::Clockwise => Orientation::CounterClockwise,
            Orientation::Collinear => Orientation::Collinear,
            Orientation::CounterClockwise => Orientation::Clockwise,
        }
    }
}

/// Sign of `(q - p) x (r - p)`. Callers must have bound-checked the points.
#[inline]
pub(crate) fn orient_raw(p: Point, q: Point, r: Point) -> Orientation {
    let det = (q.x - p.x) * (r.y - p.y) - (q.y - p.y) * (r.x - p.x);
    match det.signum() {
        1 => Orientation::CounterClockwise,
        -1 => Orientation::Clockwise,
        _ => Orientation::Collinear,
    }
}

/// Orientation of the triple `(p, q, r)`: counterclockwise when `r` lies to
/// the left of the directed line `p -> q`.
pub fn orientation(p: Point, q: Point, r: Point) -> Result<Orientation, GeometryError> {
    p.check()?;
    q.check()?;
    r.check()?;
    Ok(orient_raw(p, q, r))
}

/// A bound-checked, ordered list of points. Genericity is not enforced here;
/// see [`validate_generic`].
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Configuration {
    points: Vec<Point>,
}

impl Configuration {
    pub fn new(points: Vec<Point>) -> Result<Self, GeometryError> {
        for p in &points {
            p.check()?;
        }
        Ok(Configuration { points })
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn point(&self, index: usize) -> Result<Point, GeometryError> {
        self.points
            .get(index)
            .copied()
            .ok_or(GeometryError::IndexOutOfRange {
                index,
                len: self.points.len(),
            })
    }

    /// Orientation of three configuration points by index.
    #[inline]
    pub(crate) fn orient(&self, a: usize, b: usize, c: usize) -> Orientation {
        orient_raw(self.points[a], self.points[b], self.points[c])
    }
}

/// A reason a configuration is not generic.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Violation {
    /// Two indices share a position.
    Coincident { i: usize, j: usize },
    /// Three pairwise distinct points on one line, indices ascending.
    Collinear { i: usize, j: usize, k: usize },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::Coincident { i, j } => write!(f, "coincident points ({i}, {j})"),
            Violation::Collinear { i, j, k } => write!(f, "collinear triple ({i}, {j}, {k})"),
        }
    }
}

/// Every coincident pair and every collinear triple of pairwise distinct
/// points, in lexicographic index order. Empty iff the configuration is
/// generic.
///
/// Triples containing a coincident pair are covered by the pair report and
/// not repeated as collinear triples.
pub fn validate_generic(config: &Configuration) -> Vec<Violation> {
    let pts = config.points();
    let m = pts.len();
    let mut out = Vec::new();
    for i in 0..m {
        for j in i + 1..m {
            if pts[i] == pts[j] {
                out.push(Violation::Coincident { i, j });
            }
        }
    }
    for i in 0..m {
        for j in i + 1..m {
            if pts[i] == pts[j] {
                continue;
            }
            for k in j + 1..m {
                if pts[k] == pts[i] || pts[k] == pts[j] {
                    continue;
                }
                if config.orient(i, j, k) == Orientation::Collinear {
                    out.push(Violation::Collinear { i, j, k });
                }
            }
        }
    }
    out
}

/// True iff `p` and `q` lie in different open halfplanes of the line through
/// `u` and `v`.
pub fn separates(u: Point, v: Point, p: Point, q: Point) -> Result<bool, GeometryError> {
    let all = [u, v, p, q];
    for a in 0..4 {
        for b in a + 1..4 {
            if all[a] == all[b] {
                return Err(GeometryError::Degenerate(format!(
                    "points {:?} and {:?} coincide",
                    all[a], all[b]
                )));
            }
        }
    }
    let sp = orientation(u, v, p)?;
    let sq = orientation(u, v, q)?;
    if sp == Orientation::Collinear || sq == Orientation::Collinear {
        return Err(GeometryError::Degenerate(format!(
            "point on the line through {u:?} and {v:?}"
        )));
    }
    Ok(sp != sq)
}

/// Number of lines spanned by pairs of configuration points other than
/// `p_idx` and `q_idx` that separate those two points.
pub fn separator_count(
    config: &Configuration,
    p_idx: usize,
    q_idx: usize,
) -> Result<u64, GeometryError> {
    let m = config.len();
    for index in [p_idx, q_idx] {
        if index >= m {
            return Err(GeometryError::IndexOutOfRange { index, len: m });
        }
    }
    if p_idx == q_idx {
        return Err(GeometryError::Degenerate(format!(
            "separator count of vertex {p_idx} with itself"
        )));
    }
    let pts = config.points();
    let mut count = 0;
    for u in 0..m {
        if u == p_idx || u == q_idx {
            continue;
        }
        for v in u + 1..m {
            if v == p_idx || v == q_idx {
                continue;
            }
            if separates(pts[u], pts[v], pts[p_idx], pts[q_idx])? {
                count += 1;
            }
        }
    }
    Ok(count)
}

/// Separator count on a configuration already known to be generic.
pub(crate) fn separator_count_generic(config: &Configuration, p_idx: usize, q_idx: usize) -> u64 {
    let m = config.len();
    let mut count = 0;
    for u in 0..m {
        if u == p_idx || u == q_idx {
            continue;
        }
        for v in u + 1..m {
            if v == p_idx || v == q_idx {
                continue;
            }
            if config.orient(u, v, p_idx) != config.orient(u, v, q_idx) {
                count += 1;
            }
        }
    }
    count
}
