//! Drawing sources: the convex alternating drawing, seeded random generic
//! drawings, and exhaustive enumeration over small integer grids.

use itertools::Itertools;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::counting::binomial;
use crate::drawing::{Color, ColoredDrawing, DrawingError, GraphSpec};
use crate::geometry::{orient_raw, validate_generic, Configuration, Orientation, Point, MAX_COORD};

/// Attempts per point before [`random_generic`] gives up.
pub const RETRY_BUDGET: u32 = 10_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenerateError {
    #[error("n = {n} needs coordinates beyond the supported bound {MAX_COORD}")]
    Overflow { n: usize },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("no generic position found for point {point} after {attempts} attempts")]
    RetryBudgetExhausted { point: usize, attempts: u32 },
    #[error("enumeration size {size} exceeds the budget {budget}")]
    BudgetExceeded { size: u128, budget: u128 },
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// A `width x height` block of integer points `{0..width} x {0..height}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct GridSpec {
    pub width: u32,
    pub height: u32,
}

impl GridSpec {
    pub fn new(width: u32, height: u32) -> Result<Self, GenerateError> {
        if width == 0 || height == 0 {
            return Err(GenerateError::InvalidParameter(format!(
                "grid {width}x{height} must have positive sides"
            )));
        }
        if i64::from(width.max(height)) > MAX_COORD {
            return Err(GenerateError::InvalidParameter(format!(
                "grid {width}x{height} exceeds the coordinate bound"
            )));
        }
        Ok(GridSpec { width, height })
    }

    pub fn cell_count(&self) -> u64 {
        u64::from(self.width) * u64::from(self.height)
    }

    /// Grid points in row-major order.
    pub fn points(&self) -> Vec<Point> {
        (0..i64::from(self.height))
            .flat_map(|y| (0..i64::from(self.width)).map(move |x| Point::new(x, y)))
            .collect()
    }
}

impl std::fmt::Display for GridSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{}x{}", self.width, self.height)
    }
}

impl std::str::FromStr for GridSpec {
    type Err = GenerateError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || GenerateError::InvalidParameter(format!("grid '{s}' is not WIDTHxHEIGHT"));
        let (w, h) = s.split_once(['x', 'X']).ok_or_else(bad)?;
        GridSpec::new(
            w.trim().parse().map_err(|_| bad())?,
            h.trim().parse().map_err(|_| bad())?,
        )
    }
}

/// `K_{n,n}` on `2n` points of the parabola `y = x^2`, colored alternately
/// along the curve. Points on a parabola are in strictly convex position and
/// their order along the curve is their cyclic hull order.
pub fn convex_alternating(n: usize) -> Result<ColoredDrawing, GenerateError> {
    if n == 0 {
        return Err(GenerateError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    let last = i64::try_from(2 * n - 1).map_err(|_| GenerateError::Overflow { n })?;
    if last.checked_mul(last).is_none_or(|sq| sq > MAX_COORD) {
        return Err(GenerateError::Overflow { n });
    }
    let points = (0..=last).map(|k| Point::new(k, k * k)).collect();
    let colors = (0..2 * n)
        .map(|k| {
            if k % 2 == 0 {
                Color::Black
            } else {
                Color::White
            }
        })
        .collect();
    Ok(ColoredDrawing::complete_bipartite(points, colors)?)
}

/// Sample `count` points uniformly from `{0..=range}^2`, rejecting any
/// candidate that coincides with or is collinear with earlier points.
pub(crate) fn random_generic_points<R: Rng>(
    count: usize,
    range: i64,
    rng: &mut R,
) -> Result<Vec<Point>, GenerateError> {
    if !(0..=MAX_COORD).contains(&range) {
        return Err(GenerateError::InvalidParameter(format!(
            "coordinate range {range} outside 0..={MAX_COORD}"
        )));
    }
    let mut points: Vec<Point> = Vec::with_capacity(count);
    for index in 0..count {
        let mut placed = false;
        for _ in 0..RETRY_BUDGET {
            let candidate = Point::new(rng.gen_range(0..=range), rng.gen_range(0..=range));
            let clash = points.contains(&candidate)
                || points
                    .iter()
                    .tuple_combinations()
                    .any(|(&a, &b)| orient_raw(a, b, candidate) == Orientation::Collinear);
            if !clash {
                points.push(candidate);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(GenerateError::RetryBudgetExhausted {
                point: index,
                attempts: RETRY_BUDGET,
            });
        }
    }
    Ok(points)
}

/// Seeded random generic drawing of `K_{n_black, n_white}` with coordinates
/// in `0..=range`. The first `n_black` vertices are black.
///
/// A range of at least `n_black + n_white` comfortably admits a generic
/// placement; much smaller ranges may exhaust the retry budget.
pub fn random_generic(
    n_black: usize,
    n_white: usize,
    range: i64,
    seed: u64,
) -> Result<ColoredDrawing, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_generic_with(n_black, n_white, range, &mut rng)
}

pub(crate) fn random_generic_with<R: Rng>(
    n_black: usize,
    n_white: usize,
    range: i64,
    rng: &mut R,
) -> Result<ColoredDrawing, GenerateError> {
    let points = random_generic_points(n_black + n_white, range, rng)?;
    let colors = std::iter::repeat_n(Color::Black, n_black)
        .chain(std::iter::repeat_n(Color::White, n_white))
        .collect();
    Ok(ColoredDrawing::complete_bipartite(points, colors)?)
}

/// Upper bound on the number of drawings [`enumerate_colored_configs`]
/// yields: point subsets times canonical colorings, before the genericity
/// filter. `None` on overflow.
pub fn enumeration_size(grid: GridSpec, n: usize) -> Option<u128> {
    let sets = binomial(grid.cell_count(), 2 * n as u64)?;
    let colorings = binomial(2 * n as u64 - 1, n as u64 - 1)?;
    sets.checked_mul(colorings)
}

/// Every generic `K_{n,n}` drawing on the grid, up to relabeling points of
/// the same color and exchanging the two colors.
///
/// Point sets are visited as sorted subsets in lexicographic order of their
/// row-major grid indices; for each generic set, the black class runs over
/// the `n`-subsets that contain the set's first point. Fails before yielding
/// anything when [`enumeration_size`] exceeds `budget`.
pub fn enumerate_colored_configs(
    grid: GridSpec,
    n: usize,
    budget: u128,
) -> Result<impl Iterator<Item = ColoredDrawing>, GenerateError> {
    if n == 0 {
        return Err(GenerateError::InvalidParameter(
            "n must be at least 1".into(),
        ));
    }
    if grid.cell_count() < 2 * n as u64 {
        return Err(GenerateError::InvalidParameter(format!(
            "grid {grid} has fewer than {} points",
            2 * n
        )));
    }
    let size = enumeration_size(grid, n).unwrap_or(u128::MAX);
    if size > budget {
        return Err(GenerateError::BudgetExceeded { size, budget });
    }
    let colorings: Vec<Vec<Color>> = (1..2 * n)
        .combinations(n - 1)
        .map(|rest| {
            (0..2 * n)
                .map(|k| {
                    if k == 0 || rest.contains(&k) {
                        Color::Black
                    } else {
                        Color::White
                    }
                })
                .collect()
        })
        .collect();
    Ok(generic_point_sets(grid, 2 * n).flat_map(move |config| {
        colorings.clone().into_iter().map(move |colors| {
            let graph = GraphSpec::complete_bipartite(&colors);
            ColoredDrawing::new(config.clone(), colors, graph)
                .expect("enumerated point sets are generic")
        })
    }))
}

/// Generic `k`-subsets of the grid, sorted, in lexicographic order.
pub fn generic_point_sets(grid: GridSpec, k: usize) -> impl Iterator<Item = Configuration> {
    grid.points().into_iter().combinations(k).filter_map(|pts| {
        let config = Configuration::new(pts).ok()?;
        validate_generic(&config).is_empty().then_some(config)
    })
}
