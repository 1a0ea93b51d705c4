use itertools::Itertools;
use serde::{Deserialize, Serialize};

use super::{balanced_size, AnalysisError};
use crate::drawing::{crossing_number, Color, ColoredDrawing};
use crate::geometry::Orientation;

/// Which color pair spans a line.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LineClass {
    /// One black and one white point.
    Bw,
    WhiteWhite,
    BlackBlack,
}

impl LineClass {
    pub const ALL: [LineClass; 3] = [LineClass::Bw, LineClass::WhiteWhite, LineClass::BlackBlack];

    pub fn of(a: Color, b: Color) -> LineClass {
        match (a, b) {
            (Color::White, Color::White) => LineClass::WhiteWhite,
            (Color::Black, Color::Black) => LineClass::BlackBlack,
            _ => LineClass::Bw,
        }
    }

    /// The color of both endpoints for same-color classes.
    pub fn endpoint_color(self) -> Option<Color> {
        match self {
            LineClass::Bw => None,
            LineClass::WhiteWhite => Some(Color::White),
            LineClass::BlackBlack => Some(Color::Black),
        }
    }

    /// Largest endvertex type: `floor((n-1)/2)` for bw lines, where each
    /// endpoint sees `n-1` points of the other color off the line, and
    /// `floor((n-2)/2)` for same-color lines, which leave `n-2` points of the
    /// endpoints' color.
    pub fn type_cap(self, n: usize) -> usize {
        match self {
            LineClass::Bw => n.saturating_sub(1) / 2,
            _ => n.saturating_sub(2) / 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LineClass::Bw => "bw",
            LineClass::WhiteWhite => "white_white",
            LineClass::BlackBlack => "black_black",
        }
    }
}

/// Census of the two open halfplanes of a line. "Left" is the
/// counterclockwise side of the directed line from the lower to the higher
/// endpoint index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SideCounts {
    pub black_left: usize,
    pub white_left: usize,
    pub black_right: usize,
    pub white_right: usize,
}

impl SideCounts {
    pub fn total(&self) -> usize {
        self.black_left + self.white_left + self.black_right + self.white_right
    }

    fn left(&self, c: Color) -> usize {
        match c {
            Color::Black => self.black_left,
            Color::White => self.white_left,
        }
    }

    fn right(&self, c: Color) -> usize {
        match c {
            Color::Black => self.black_right,
            Color::White => self.white_right,
        }
    }

    /// Fewer of the `c`-colored points on either side.
    pub fn min_side(&self, c: Color) -> usize {
        self.left(c).min(self.right(c))
    }

    /// Black-white pairs with one point in each open halfplane.
    pub fn separated_bw_pairs(&self) -> u64 {
        (self.black_left * self.white_right + self.white_left * self.black_right) as u64
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LineRecord {
    /// Spanning vertices, lower index first.
    pub endpoints: (usize, usize),
    pub class: LineClass,
    pub sides: SideCounts,
    /// Endvertex types of `endpoints.0` and `endpoints.1`.
    ///
    /// A bw endpoint's type is the smaller number of points of the *other*
    /// color on one side; a same-color endpoint's type is the smaller number
    /// of points of its own color on one side.
    pub endvertex_types: (usize, usize),
    /// For bw lines, the two endvertex types in ascending order. For a
    /// same-color line, `(own-color count, other-color count)` on the side
    /// holding fewer points of the endpoints' color; a tie goes to the side
    /// holding more points of the other color.
    pub normalized_type: (usize, usize),
    pub separated_bw_pairs: u64,
}

/// Every line spanned by two points of a balanced `K_{n,n}` drawing.
/// Records come in lexicographic endpoint order.
pub fn classify_lines(d: &ColoredDrawing) -> Result<Vec<LineRecord>, AnalysisError> {
    balanced_size(d)?;
    let cfg = d.config();
    let m = d.vertex_count();
    let records = (0..m)
        .tuple_combinations()
        .map(|(u, v)| {
            let mut sides = SideCounts {
                black_left: 0,
                white_left: 0,
                black_right: 0,
                white_right: 0,
            };
            for w in (0..m).filter(|&w| w != u && w != v) {
                let left = cfg.orient(u, v, w) == Orientation::CounterClockwise;
                match (d.color(w), left) {
                    (Color::Black, true) => sides.black_left += 1,
                    (Color::Black, false) => sides.black_right += 1,
                    (Color::White, true) => sides.white_left += 1,
                    (Color::White, false) => sides.white_right += 1,
                }
            }
            let class = LineClass::of(d.color(u), d.color(v));
            let (endvertex_types, normalized_type) = match class.endpoint_color() {
                None => {
                    let tu = sides.min_side(d.color(u).opposite());
                    let tv = sides.min_side(d.color(v).opposite());
                    ((tu, tv), (tu.min(tv), tu.max(tv)))
                }
                Some(own) => {
                    let other = own.opposite();
                    let t = sides.min_side(own);
                    let left = (sides.left(own), sides.left(other));
                    let right = (sides.right(own), sides.right(other));
                    let chosen = match left.0.cmp(&right.0) {
                        std::cmp::Ordering::Less => left,
                        std::cmp::Ordering::Greater => right,
                        std::cmp::Ordering::Equal => left.max(right),
                    };
                    ((t, t), chosen)
                }
            };
            LineRecord {
                endpoints: (u, v),
                class,
                sides,
                endvertex_types,
                normalized_type,
                separated_bw_pairs: sides.separated_bw_pairs(),
            }
        })
        .collect();
    Ok(records)
}

/// Crossing number split by the class of the separating line.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Decomposition {
    pub n: usize,
    /// Separated bw-pairs summed over bw lines.
    #[serde(rename = "A")]
    pub a: u64,
    /// Same, over white-white lines.
    #[serde(rename = "B")]
    pub b: u64,
    /// Same, over black-black lines.
    #[serde(rename = "C")]
    pub c: u64,
    pub total: u64,
    #[serde(skip)]
    pub lines: Vec<LineRecord>,
}

impl Decomposition {
    pub fn class_total(&self, class: LineClass) -> u64 {
        match class {
            LineClass::Bw => self.a,
            LineClass::WhiteWhite => self.b,
            LineClass::BlackBlack => self.c,
        }
    }
}

pub fn abc_decomposition(d: &ColoredDrawing) -> Result<Decomposition, AnalysisError> {
    let n = balanced_size(d)?;
    let lines = classify_lines(d)?;
    let sum = |class| {
        lines
            .iter()
            .filter(|r| r.class == class)
            .map(|r| r.separated_bw_pairs)
            .sum::<u64>()
    };
    let (a, b, c) = (
        sum(LineClass::Bw),
        sum(LineClass::WhiteWhite),
        sum(LineClass::BlackBlack),
    );
    let total = a + b + c;
    let evaluated = crossing_number(d);
    if total != evaluated {
        return Err(AnalysisError::Inconsistent(format!(
            "A+B+C = {total} but the edge-wise crossing number is {evaluated}"
        )));
    }
    Ok(Decomposition {
        n,
        a,
        b,
        c,
        total,
        lines,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::convex_alternating;

    #[test]
    fn hexagon_bw_line_types() {
        let lines = classify_lines(&convex_alternating(3).unwrap()).unwrap();
        assert_eq!(lines.len(), 15);
        let bw: Vec<_> = lines.iter().filter(|r| r.class == LineClass::Bw).collect();
        assert_eq!(bw.len(), 9);
        assert_eq!(bw.iter().filter(|r| r.normalized_type == (0, 0)).count(), 6);
        assert_eq!(bw.iter().filter(|r| r.normalized_type == (1, 1)).count(), 3);
    }

    #[test]
    fn hexagon_white_lines() {
        let lines = classify_lines(&convex_alternating(3).unwrap()).unwrap();
        let ww: Vec<_> = lines
            .iter()
            .filter(|r| r.class == LineClass::WhiteWhite)
            .collect();
        assert_eq!(ww.len(), 3);
        for r in ww {
            assert_eq!(r.normalized_type, (0, 1));
            assert_eq!(r.separated_bw_pairs, 1);
        }
    }

    #[test]
    fn single_edge() {
        let lines = classify_lines(&convex_alternating(1).unwrap()).unwrap();
        assert_eq!(lines.len(), 1);
        assert_eq!(lines[0].class, LineClass::Bw);
        assert_eq!(lines[0].sides.total(), 0);
    }

    #[test]
    fn decomposition_of_convex_drawings() {
        let d3 = abc_decomposition(&convex_alternating(3).unwrap()).unwrap();
        assert_eq!((d3.a, d3.b, d3.c, d3.total), (6, 3, 3, 12));
        let d4 = abc_decomposition(&convex_alternating(4).unwrap()).unwrap();
        assert_eq!((d4.a, d4.b, d4.c, d4.total), (32, 16, 16, 64));
    }

    #[test]
    fn record_invariants() {
        let d = crate::generators::random_generic(4, 4, 40, 3).unwrap();
        for r in classify_lines(&d).unwrap() {
            assert_eq!(r.sides.total(), 6);
            assert_eq!(
                r.separated_bw_pairs,
                (r.sides.black_left * r.sides.white_right
                    + r.sides.white_left * r.sides.black_right) as u64
            );
            assert!(r.normalized_type.0 <= r.class.type_cap(4));
        }
    }
}
