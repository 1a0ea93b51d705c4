use serde::{Deserialize, Serialize};

use super::coefficients::{bw_lower_bound, formula_ocn_knn, same_color_lower_bound};
use super::lines::{abc_decomposition, Decomposition, LineClass};
use super::profiles::{vertex_profiles, ProfileTables};
use super::tables::{tables_from_records, TypeTables};
use super::AnalysisError;
use crate::drawing::{crossing_number_by_quadruples, ColoredDrawing};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum IdentityStatus {
    Pass,
    Fail,
    /// Nothing to check for this drawing (e.g. `n = 1`, or a parity clause
    /// that does not apply).
    Vacuous,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityCheck {
    pub name: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub class: Option<LineClass>,
    pub status: IdentityStatus,
    /// First offending entry when the check fails.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub n: usize,
    pub all_pass: bool,
    pub checks: Vec<IdentityCheck>,
}

impl IdentityReport {
    pub fn failures(&self) -> impl Iterator<Item = &IdentityCheck> {
        self.checks
            .iter()
            .filter(|c| c.status == IdentityStatus::Fail)
    }

    pub fn get(&self, name: &str, class: Option<LineClass>) -> Option<&IdentityCheck> {
        self.checks
            .iter()
            .find(|c| c.name == name && c.class == class)
    }
}

/// Pair counts predicted from the normalized line types alone.
///
/// `bw` sums `i(n-j-1) + j(n-i-1)` over bw lines of type `(i, j)`; it equals
/// `A` when every bw line has both minority sides in the same halfplane and
/// is smaller otherwise. The same-color entries sum `i(n-j) + j(n-i-2)` over
/// the doubly counted `x` tables and equal `2B` and `2C` exactly.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ModelTotals {
    pub bw: u64,
    pub white_white: u64,
    pub black_black: u64,
}

/// Everything the lower-bound argument counts, for one balanced `K_{n,n}`
/// drawing.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureAnalysis {
    pub n: usize,
    pub decomposition: Decomposition,
    /// Crossing number recomputed by 4-subsets.
    pub crossing_number: u64,
    pub formula: u64,
    pub model: ModelTotals,
    /// bw, white-white, black-black.
    pub type_tables: Vec<TypeTables>,
    pub profiles: Vec<ProfileTables>,
    /// Same-color line-endpoint incidences outside `i < j <= N + 1`, per
    /// same-color class (white first).
    pub outside_folded_range: [u64; 2],
    pub identities: IdentityReport,
}

pub fn analyze(d: &ColoredDrawing) -> Result<StructureAnalysis, AnalysisError> {
    let decomposition = abc_decomposition(d)?;
    let n = decomposition.n;
    let n64 = n as u64;
    let type_tables = LineClass::ALL
        .iter()
        .map(|&class| tables_from_records(n, class, &decomposition.lines))
        .collect::<Result<Vec<_>, _>>()?;
    let profiles = LineClass::ALL
        .iter()
        .map(|&class| vertex_profiles(d, class))
        .collect::<Result<Vec<_>, _>>()?;
    let crossing_number = crossing_number_by_quadruples(d);
    let formula = formula_ocn_knn(n64)?;

    let model = ModelTotals {
        bw: model_total(&type_tables[0]),
        white_white: model_total(&type_tables[1]),
        black_black: model_total(&type_tables[2]),
    };

    let mut checks = Vec::new();
    for (tables, prof) in type_tables.iter().zip(&profiles) {
        checks.extend(class_checks(n, tables, prof));
    }

    let d_ = &decomposition;
    checks.push(compare(
        "abc_sum",
        None,
        d_.a + d_.b + d_.c == d_.total && d_.total == crossing_number,
        || {
            format!(
                "A+B+C = {} but the 4-subset crossing number is {crossing_number}",
                d_.a + d_.b + d_.c
            )
        },
    ));
    let bw_bound = bw_lower_bound(n64)?;
    let same_bound = same_color_lower_bound(n64)?;
    checks.push(compare(
        "lower_bound",
        Some(LineClass::Bw),
        d_.a >= bw_bound,
        || format!("A = {} < {bw_bound}", d_.a),
    ));
    checks.push(compare(
        "lower_bound",
        Some(LineClass::WhiteWhite),
        d_.b >= same_bound,
        || format!("B = {} < {same_bound}", d_.b),
    ));
    checks.push(compare(
        "lower_bound",
        Some(LineClass::BlackBlack),
        d_.c >= same_bound,
        || format!("C = {} < {same_bound}", d_.c),
    ));
    checks.push(compare("lower_bound", None, d_.total >= formula, || {
        format!("total = {} < {formula}", d_.total)
    }));
    checks.push(compare(
        "model_total",
        Some(LineClass::Bw),
        model.bw <= d_.a && model.bw >= bw_bound,
        || format!("model {} vs A = {} and bound {bw_bound}", model.bw, d_.a),
    ));
    checks.push(compare(
        "model_total",
        Some(LineClass::WhiteWhite),
        model.white_white == 2 * d_.b,
        || format!("model {} != 2B = {}", model.white_white, 2 * d_.b),
    ));
    checks.push(compare(
        "model_total",
        Some(LineClass::BlackBlack),
        model.black_black == 2 * d_.c,
        || format!("model {} != 2C = {}", model.black_black, 2 * d_.c),
    ));

    let outside_folded_range = [
        type_tables[1].outside_folded_range(),
        type_tables[2].outside_folded_range(),
    ];
    let all_pass = checks.iter().all(|c| c.status != IdentityStatus::Fail);
    Ok(StructureAnalysis {
        n,
        crossing_number,
        formula,
        model,
        outside_folded_range,
        identities: IdentityReport {
            n,
            all_pass,
            checks,
        },
        decomposition,
        type_tables,
        profiles,
    })
}

/// Pass/fail report over the type-table, profile and decomposition
/// identities of a balanced `K_{n,n}` drawing.
pub fn check_identities(d: &ColoredDrawing) -> Result<IdentityReport, AnalysisError> {
    Ok(analyze(d)?.identities)
}

fn model_total(t: &TypeTables) -> u64 {
    let n = t.n as u64;
    t.x.iter()
        .map(|e| {
            let (i, j) = (e.i as u64, e.j as u64);
            let per = match t.class {
                LineClass::Bw => i * (n - j - 1) + j * (n - i - 1),
                _ => i * (n - j) + j * (n - i - 2),
            };
            per * e.count
        })
        .sum()
}

fn compare(
    name: &str,
    class: Option<LineClass>,
    ok: bool,
    witness: impl FnOnce() -> String,
) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        class,
        status: if ok {
            IdentityStatus::Pass
        } else {
            IdentityStatus::Fail
        },
        witness: (!ok).then(witness),
    }
}

fn first_failure(mut items: impl Iterator<Item = Option<String>>) -> Option<String> {
    items.find_map(|x| x)
}

fn check(name: &str, class: LineClass, failure: Option<String>) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        class: Some(class),
        status: if failure.is_none() {
            IdentityStatus::Pass
        } else {
            IdentityStatus::Fail
        },
        witness: failure,
    }
}

fn vacuous(name: &str, class: LineClass) -> IdentityCheck {
    IdentityCheck {
        name: name.to_string(),
        class: Some(class),
        status: IdentityStatus::Vacuous,
        witness: None,
    }
}

/// Identity names, shared by all three classes.
const NAMES: [&str; 7] = [
    "endvertex_total",
    "y_from_x",
    "profile_total",
    "y_from_profiles",
    "sequence_length",
    "z_at_least_two",
    "z_max_type_parity",
];

fn class_checks(n: usize, t: &TypeTables, prof: &ProfileTables) -> Vec<IdentityCheck> {
    let class = t.class;
    let name = |k: usize| NAMES[k];
    if n < 2 {
        return (0..NAMES.len()).map(|k| vacuous(name(k), class)).collect();
    }
    let n64 = n as u64;
    let cap = t.cap;
    let (expected_y, expected_p, seq_len, parity_applies) = match class {
        LineClass::Bw => (2 * n64 * n64, 2 * n64, n64, n % 2 == 1),
        _ => (n64 * (n64 - 1), n64, n64 - 1, n.is_multiple_of(2)),
    };
    let mut out = Vec::new();

    out.push(check(
        name(0),
        class,
        (t.y_total() != expected_y).then(|| format!("sum y = {} != {expected_y}", t.y_total())),
    ));
    out.push(check(
        name(1),
        class,
        first_failure((0..=cap).map(|i| {
            let rebuilt = t.y_from_x(i);
            (rebuilt != t.y[i]).then(|| format!("i={i}: y = {}, from x = {rebuilt}", t.y[i]))
        })),
    ));
    out.push(check(
        name(2),
        class,
        (prof.p_total() != expected_p)
            .then(|| format!("sum p = {} != {expected_p}", prof.p_total())),
    ));
    out.push(check(
        name(3),
        class,
        first_failure((0..=cap).map(|i| {
            let rebuilt = prof.y_from_profiles(i);
            (rebuilt != t.y[i]).then(|| format!("i={i}: y = {}, from profiles = {rebuilt}", t.y[i]))
        })),
    ));
    out.push(check(
        name(4),
        class,
        first_failure(prof.sequences.iter().enumerate().map(|(k, seq)| {
            let s = seq.first().copied().unwrap_or(0);
            let sum: u64 = (s..=cap).map(|i| prof.z(s, k + 1, i)).sum();
            (sum != seq_len).then(|| format!("s={s} t={}: sum z = {sum} != {seq_len}", k + 1))
        })),
    ));
    out.push(check(
        name(5),
        class,
        first_failure(prof.sequences.iter().enumerate().flat_map(|(k, seq)| {
            let s = seq.first().copied().unwrap_or(0);
            (s + 1..=cap).map(move |i| {
                let needed = if parity_applies && i == cap { 1 } else { 2 };
                let z = prof.z(s, k + 1, i);
                (z < needed).then(|| format!("s={s} t={} i={i}: z = {z} < {needed}", k + 1))
            })
        })),
    ));
    if parity_applies {
        out.push(check(
            name(6),
            class,
            first_failure(prof.sequences.iter().enumerate().map(|(k, seq)| {
                let s = seq.first().copied().unwrap_or(0);
                let z = prof.z(s, k + 1, cap);
                (z < 1).then(|| format!("s={s} t={} i={cap}: z = 0", k + 1))
            })),
        ));
    } else {
        out.push(vacuous(name(6), class));
    }
    out
}
