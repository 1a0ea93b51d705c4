//! Closed forms from the lower-bound argument: the `OCN(K_{n,n})` formula,
//! the coefficients `C(s, n)` of the bw and same-color minimizations, and the
//! monotonicity of `a(n - a)` below `n/2`.

use serde::{Deserialize, Serialize};

use super::AnalysisError;
use crate::counting::binomial;

/// `4n * C(n, 3)`.
pub fn formula_ocn_knn(n: u64) -> Result<u64, AnalysisError> {
    binomial(n, 3)
        .and_then(|c| c.checked_mul(4 * u128::from(n)))
        .and_then(|v| u64::try_from(v).ok())
        .ok_or(AnalysisError::Overflow(format!("4n*C(n,3) for n = {n}")))
}

/// `2n * C(n, 3)`, the least possible `A`.
pub fn bw_lower_bound(n: u64) -> Result<u64, AnalysisError> {
    Ok(formula_ocn_knn(n)? / 2)
}

/// `n * C(n, 3)`, the least possible `B` (and `C`).
pub fn same_color_lower_bound(n: u64) -> Result<u64, AnalysisError> {
    Ok(formula_ocn_knn(n)? / 4)
}

/// `sum_{i=1}^{k} i (n - 1 - i)`.
fn sum_i_times_rest(n: i128, k: i128) -> i128 {
    (n - 1) * k * (k + 1) / 2 - k * (k + 1) * (2 * k + 1) / 6
}

/// Coefficient of `p_{s,t}` in the bw minimization:
/// `s(n-s-1)(n - 2(N-s+1)) - 2 sum_{i=1}^{s-1} i(n-i-1)` with
/// `N = floor((n-1)/2)`, defined for `0 <= s <= N`.
pub fn c_coefficient_bw(s: u64, n: u64) -> Result<i128, AnalysisError> {
    if n == 0 {
        return Err(AnalysisError::OutOfRange("n must be at least 1".into()));
    }
    let cap = (n - 1) / 2;
    if s > cap {
        return Err(AnalysisError::OutOfRange(format!(
            "s = {s} outside 0..={cap} for n = {n}"
        )));
    }
    let (s, n, cap) = (i128::from(s), i128::from(n), i128::from(cap));
    Ok(s * (n - s - 1) * (n - 2 * (cap - s + 1)) - 2 * sum_i_times_rest(n, s - 1))
}

/// Which `N` enters the same-color coefficient.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SameColorCap {
    /// `floor((n-2)/2)`, the largest same-color endvertex type. Keeps the
    /// coefficient nonnegative for every `n`.
    SameColorTypes,
    /// `floor((n-1)/2)`, the bw cap. Differs from the above only for odd
    /// `n`, where it makes the coefficient negative for some `s`.
    BwTypes,
}

impl SameColorCap {
    pub fn value(self, n: u64) -> u64 {
        match self {
            SameColorCap::SameColorTypes => n.saturating_sub(2) / 2,
            SameColorCap::BwTypes => n.saturating_sub(1) / 2,
        }
    }
}

/// `n(1+2i) - 2(i+1)^2`, which equals `i(n-i-1) + (i+1)(n-i-2)`.
fn same_color_weight(n: i128, i: i128) -> i128 {
    n * (1 + 2 * i) - 2 * (i + 1) * (i + 1)
}

/// `sum_{i=1}^{k} [n(1+2i) - 2(i+1)^2]`.
fn same_color_weight_sum(n: i128, k: i128) -> i128 {
    n * k * (k + 2) - 2 * ((k + 1) * (k + 2) * (2 * k + 3) / 6 - 1)
}

/// Coefficient of `p_{s,t}` in the same-color minimization:
/// `w(s)((n-1) - 2(N-s+1)) - 2 sum_{i=1}^{s-1} w(i) - 2(n-2)` with
/// `w(i) = n(1+2i) - 2(i+1)^2` and `N = cap.value(n)`, defined for
/// `1 <= s <= floor((n-1)/2)`.
pub fn c_coefficient_same(s: u64, n: u64, cap: SameColorCap) -> Result<i128, AnalysisError> {
    let s_max = n.saturating_sub(1) / 2;
    if s == 0 || s > s_max {
        return Err(AnalysisError::OutOfRange(format!(
            "s = {s} outside 1..={s_max} for n = {n}"
        )));
    }
    let big_n = i128::from(cap.value(n));
    let (s, n) = (i128::from(s), i128::from(n));
    let k = s - 1;
    let sum = if k >= 1 {
        same_color_weight_sum(n, k)
    } else {
        0
    };
    Ok(same_color_weight(n, s) * ((n - 1) - 2 * (big_n - s + 1)) - 2 * sum - 2 * (n - 2))
}

/// Pairs `0 < a < b < n/2` with `a(n-a) >= b(n-b)`. Always empty.
pub fn monotonicity_counterexamples(n: u64) -> Vec<(u64, u64)> {
    let n = u128::from(n);
    let mut out = Vec::new();
    for b in (1..).take_while(|&b| 2 * b < n) {
        for a in 1..b {
            if a * (n - a) >= b * (n - b) {
                out.push((a as u64, b as u64));
            }
        }
    }
    out
}
