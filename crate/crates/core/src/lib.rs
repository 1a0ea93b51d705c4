//! Orchard crossing numbers of rectilinear drawings.
//!
//! A drawing places the vertices of a two-colored graph at integer points in
//! general position. An edge `(p, q)` is charged one crossing for every
//! black-white pair separated by the line through `p` and `q`; the crossing
//! number of the drawing is the sum over its edges.
//!
//! * [`geometry`]: exact orientation tests, genericity, separator counts.
//! * [`drawing`]: colored drawings and their crossing numbers.
//! * [`generators`]: convex, random and grid-enumerated drawings.
//! * [`analysis`]: line classes, type tables and identity checks for
//!   `K_{n,n}`.
//! * [`search`]: exhaustive and annealing optimization.

pub mod analysis;
pub mod counting;
pub mod drawing;
pub mod generators;
pub mod geometry;
pub mod search;

pub use drawing::{
    crossing_number, crossing_number_by_quadruples, Color, ColoredDrawing, DrawingError, GraphSpec,
};
pub use geometry::{Configuration, Orientation, Point, MAX_COORD};
