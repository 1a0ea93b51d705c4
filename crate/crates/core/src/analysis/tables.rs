use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lines::{LineClass, LineRecord};
use super::{balanced_size, AnalysisError};
use crate::drawing::ColoredDrawing;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeCount {
    pub i: usize,
    pub j: usize,
    pub count: u64,
}

/// Endvertex-type counts `y` and line-type counts `x` for one line class.
///
/// For bw lines `x[(i, j)]` (with `i <= j`) counts lines. For a same-color
/// class every line is counted once per endpoint, so `x` sums to twice the
/// number of lines, matching `y`, which sums to `2 * C(n, 2)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TypeTables {
    pub class: LineClass,
    pub n: usize,
    /// Largest endvertex type, see [`LineClass::type_cap`].
    pub cap: usize,
    /// `y[i]`: endvertices of type `i`, counted endpoint by endpoint.
    pub y: Vec<u64>,
    /// Nonzero entries of `x`, ascending in `(i, j)`.
    pub x: Vec<TypeCount>,
}

impl TypeTables {
    pub fn x(&self, i: usize, j: usize) -> u64 {
        self.x
            .binary_search_by(|e| (e.i, e.j).cmp(&(i, j)))
            .map(|k| self.x[k].count)
            .unwrap_or(0)
    }

    pub fn y_total(&self) -> u64 {
        self.y.iter().sum()
    }

    /// `y_i` rebuilt from the line types alone.
    ///
    /// bw: `2 x_{i,i} + sum_{j<i} x_{j,i} + sum_{j>i} x_{i,j}`.
    /// Same color: `sum_j x_{i,j}` over every `j`; on drawings where each
    /// normalized same-color line has `i < j <= cap + 1` this is the sum
    /// starting at `j = i + 1`.
    pub fn y_from_x(&self, i: usize) -> u64 {
        match self.class {
            LineClass::Bw => self
                .x
                .iter()
                .map(|e| u64::from(e.i == i) * e.count + u64::from(e.j == i) * e.count)
                .sum(),
            _ => self.x.iter().filter(|e| e.i == i).map(|e| e.count).sum(),
        }
    }

    /// Same-color line-endpoint incidences whose normalized type falls
    /// outside `i < j <= cap + 1`. Always zero for bw tables.
    pub fn outside_folded_range(&self) -> u64 {
        if self.class == LineClass::Bw {
            return 0;
        }
        self.x
            .iter()
            .filter(|e| !(e.i < e.j && e.j <= self.cap + 1))
            .map(|e| e.count)
            .sum()
    }
}

pub fn type_tables(d: &ColoredDrawing, class: LineClass) -> Result<TypeTables, AnalysisError> {
    let records = super::lines::classify_lines(d)?;
    tables_from_records(balanced_size(d)?, class, &records)
}

pub(crate) fn tables_from_records(
    n: usize,
    class: LineClass,
    records: &[LineRecord],
) -> Result<TypeTables, AnalysisError> {
    let cap = class.type_cap(n);
    let mut y = vec![0u64; cap + 1];
    let mut x: BTreeMap<(usize, usize), u64> = BTreeMap::new();
    let weight = if class == LineClass::Bw { 1 } else { 2 };
    for r in records.iter().filter(|r| r.class == class) {
        for t in [r.endvertex_types.0, r.endvertex_types.1] {
            let slot = y.get_mut(t).ok_or_else(|| {
                AnalysisError::Inconsistent(format!(
                    "endvertex type {t} of line {:?} exceeds cap {cap}",
                    r.endpoints
                ))
            })?;
            *slot += 1;
        }
        *x.entry(r.normalized_type).or_default() += weight;
    }
    Ok(TypeTables {
        class,
        n,
        cap,
        y,
        x: x.into_iter()
            .map(|((i, j), count)| TypeCount { i, j, count })
            .collect(),
    })
}
