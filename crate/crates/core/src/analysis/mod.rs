//! Counting structure of `K_{n,n}` drawings.
//!
//! Every line spanned by two points is classified as bw, white-white or
//! black-black. Summing separated black-white pairs over each class splits
//! the crossing number as `A + B + C`. Per class, endvertex types (`y`), line
//! types (`x`) and per-vertex sorted type sequences (`p`, `z`) are tabulated
//! and reconciled against each other, and the class totals are checked
//! against their lower bounds `2n C(n,3)`, `n C(n,3)`, `n C(n,3)`.
//!
//! Everything here requires a balanced complete bipartite drawing: `n` black
//! and `n` white vertices with every black-white pair an edge.

use thiserror::Error;

use crate::drawing::{Color, ColoredDrawing, DrawingError};

mod coefficients;
mod identities;
mod lines;
mod profiles;
mod tables;

pub use coefficients::{
    bw_lower_bound, c_coefficient_bw, c_coefficient_same, formula_ocn_knn,
    monotonicity_counterexamples, same_color_lower_bound, SameColorCap,
};
pub use identities::{
    analyze, check_identities, IdentityCheck, IdentityReport, IdentityStatus, ModelTotals,
    StructureAnalysis,
};
pub use lines::{
    abc_decomposition, classify_lines, Decomposition, LineClass, LineRecord, SideCounts,
};
pub use profiles::{vertex_profiles, Multiplicity, ProfileCount, ProfileTables, VertexProfile};
pub use tables::{type_tables, TypeCount, TypeTables};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AnalysisError {
    #[error("drawing is not balanced: {black} black and {white} white vertices")]
    Unbalanced { black: usize, white: usize },
    #[error("drawing has no vertices")]
    Empty,
    #[error("edge set is not the complete bipartite graph between the color classes")]
    NotCompleteBipartite,
    #[error("argument out of range: {0}")]
    OutOfRange(String),
    #[error("arithmetic overflow: {0}")]
    Overflow(String),
    #[error("internal inconsistency: {0}")]
    Inconsistent(String),
    #[error(transparent)]
    Drawing(#[from] DrawingError),
}

/// `n` for a balanced `K_{n,n}` drawing.
pub fn balanced_size(d: &ColoredDrawing) -> Result<usize, AnalysisError> {
    let black = d.count_color(Color::Black);
    let white = d.count_color(Color::White);
    if black != white {
        return Err(AnalysisError::Unbalanced { black, white });
    }
    if black == 0 {
        return Err(AnalysisError::Empty);
    }
    if !d.graph().is_complete_bipartite_for(d.colors()) {
        return Err(AnalysisError::NotCompleteBipartite);
    }
    Ok(black)
}
