//! Two-colored rectilinear drawings and their Orchard crossing numbers.
//!
//! A drawing places vertex `i` of a graph at configuration point `i`. Its
//! crossing number sums, over the edges `(s, t)`, the number of lines through
//! two *other* configuration points (edge or not) that separate `s` from `t`.
//!
//! Two evaluators are provided. [`crossing_number`] walks the edges;
//! [`crossing_number_by_quadruples`] attributes every separation event to the
//! unique 4-subset made of the edge's endpoints and the line's two points.
//! They share nothing beyond the orientation predicate.

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::geometry::{
    orient_raw, separator_count_generic, validate_generic, Configuration, GeometryError,
    Orientation, Point, Violation,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("configuration is not generic: {}", list_violations(.0))]
    NotGeneric(Vec<Violation>),
    #[error("{colors} colors given for {vertices} vertices")]
    ColorCount { colors: usize, vertices: usize },
    #[error("graph has {graph} vertices but the configuration has {points} points")]
    VertexCount { graph: usize, points: usize },
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    EdgeOutOfRange(usize, usize, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("quadruple indices must be distinct vertices, got {0:?}")]
    BadQuadruple([usize; 4]),
    #[error("points are not in strictly convex position in the given cyclic order")]
    NotConvex,
}

fn list_violations(v: &[Violation]) -> String {
    v.iter().map(ToString::to_string).join(", ")
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Color {
    Black,
    White,
}

impl Color {
    pub fn opposite(self) -> Color {
        match self {
            Color::Black => Color::White,
            Color::White => Color::Black,
        }
    }
}

impl std::fmt::Display for Color {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Color::Black => "black",
            Color::White => "white",
        })
    }
}

/// Simple undirected graph on vertices `0..vertex_count`. Edges are stored
/// as `(min, max)` pairs in ascending order, so two specs with the same edge
/// set compare equal.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct GraphSpec {
    vertex_count: usize,
    edges: Vec<(usize, usize)>,
}

impl GraphSpec {
    pub fn from_edges(
        vertex_count: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
    ) -> Result<Self, DrawingError> {
        let mut out = Vec::new();
        for (a, b) in edges {
            if a >= vertex_count || b >= vertex_count {
                return Err(DrawingError::EdgeOutOfRange(a, b, vertex_count));
            }
            if a == b {
                return Err(DrawingError::SelfLoop(a));
            }
            out.push((a.min(b), a.max(b)));
        }
        out.sort_unstable();
        if let Some(w) = out.windows(2).find(|w| w[0] == w[1]) {
            return Err(DrawingError::DuplicateEdge(w[0].0, w[0].1));
        }
        Ok(GraphSpec {
            vertex_count,
            edges: out,
        })
    }

    /// `K_m`.
    pub fn complete(vertex_count: usize) -> Self {
        GraphSpec {
            vertex_count,
            edges: (0..vertex_count).tuple_combinations().collect(),
        }
    }

    /// Every pair of differently colored vertices.
    pub fn complete_bipartite(colors: &[Color]) -> Self {
        GraphSpec {
            vertex_count: colors.len(),
            edges: (0..colors.len())
                .tuple_combinations()
                .filter(|&(a, b)| colors[a] != colors[b])
                .collect(),
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.vertex_count
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn has_edge(&self, a: usize, b: usize) -> bool {
        self.edges.binary_search(&(a.min(b), a.max(b))).is_ok()
    }

    pub fn is_complete_bipartite_for(&self, colors: &[Color]) -> bool {
        *self == GraphSpec::complete_bipartite(colors)
    }
}

/// A graph drawn on a generic configuration, one vertex per point, with a
/// black/white coloring. Immutable once built.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ColoredDrawing {
    config: Configuration,
    colors: Vec<Color>,
    graph: GraphSpec,
    adjacency: Vec<bool>,
}

impl ColoredDrawing {
    pub fn new(
        config: Configuration,
        colors: Vec<Color>,
        graph: GraphSpec,
    ) -> Result<Self, DrawingError> {
        let m = config.len();
        if colors.len() != m {
            return Err(DrawingError::ColorCount {
                colors: colors.len(),
                vertices: m,
            });
        }
        if graph.vertex_count() != m {
            return Err(DrawingError::VertexCount {
                graph: graph.vertex_count(),
                points: m,
            });
        }
        let violations = validate_generic(&config);
        if !violations.is_empty() {
            return Err(DrawingError::NotGeneric(violations));
        }
        let mut adjacency = vec![false; m * m];
        for &(a, b) in graph.edges() {
            adjacency[a * m + b] = true;
            adjacency[b * m + a] = true;
        }
        Ok(ColoredDrawing {
            config,
            colors,
            graph,
            adjacency,
        })
    }

    /// Drawing of the complete bipartite graph between the two color classes.
    pub fn complete_bipartite(
        points: Vec<Point>,
        colors: Vec<Color>,
    ) -> Result<Self, DrawingError> {
        let graph = GraphSpec::complete_bipartite(&colors);
        ColoredDrawing::new(Configuration::new(points)?, colors, graph)
    }

    pub fn config(&self) -> &Configuration {
        &self.config
    }

    pub fn points(&self) -> &[Point] {
        self.config.points()
    }

    pub fn colors(&self) -> &[Color] {
        &self.colors
    }

    pub fn color(&self, v: usize) -> Color {
        self.colors[v]
    }

    pub fn graph(&self) -> &GraphSpec {
        &self.graph
    }

    pub fn vertex_count(&self) -> usize {
        self.colors.len()
    }

    pub fn count_color(&self, color: Color) -> usize {
        self.colors.iter().filter(|&&c| c == color).count()
    }

    #[inline]
    pub fn is_edge(&self, a: usize, b: usize) -> bool {
        self.adjacency[a * self.vertex_count() + b]
    }

    /// Same drawing with the two color classes exchanged. For complete
    /// bipartite graphs the edge set is unchanged.
    pub fn color_swapped(&self) -> ColoredDrawing {
        ColoredDrawing {
            config: self.config.clone(),
            colors: self.colors.iter().map(|c| c.opposite()).collect(),
            graph: self.graph.clone(),
            adjacency: self.adjacency.clone(),
        }
    }

    /// Same drawing with an extra edge.
    pub fn with_edge(&self, a: usize, b: usize) -> Result<ColoredDrawing, DrawingError> {
        let mut edges = self.graph.edges().to_vec();
        edges.push((a, b));
        let graph = GraphSpec::from_edges(self.vertex_count(), edges)?;
        ColoredDrawing::new(self.config.clone(), self.colors.clone(), graph)
    }

    /// Same drawing with vertex `v` moved to `to`. Only the triples involving
    /// `v` are re-checked, so this is `O(m^2)`.
    pub fn with_moved_vertex(&self, v: usize, to: Point) -> Result<ColoredDrawing, DrawingError> {
        let m = self.vertex_count();
        let mut points = self.points().to_vec();
        points[v] = to;
        let config = Configuration::new(points)?;
        let pts = config.points();
        let mut violations = Vec::new();
        for a in (0..m).filter(|&a| a != v) {
            if pts[a] == to {
                violations.push(Violation::Coincident {
                    i: a.min(v),
                    j: a.max(v),
                });
            }
        }
        if violations.is_empty() {
            for (a, b) in (0..m).filter(|&a| a != v).tuple_combinations() {
                if orient_raw(pts[a], pts[b], to) == Orientation::Collinear {
                    let mut t = [a, b, v];
                    t.sort_unstable();
                    violations.push(Violation::Collinear {
                        i: t[0],
                        j: t[1],
                        k: t[2],
                    });
                }
            }
        }
        if !violations.is_empty() {
            return Err(DrawingError::NotGeneric(violations));
        }
        Ok(ColoredDrawing {
            config,
            colors: self.colors.clone(),
            graph: self.graph.clone(),
            adjacency: self.adjacency.clone(),
        })
    }
}

/// `n(R(G))`: the sum of separator counts over the edges.
pub fn crossing_number(d: &ColoredDrawing) -> u64 {
    d.graph()
        .edges()
        .iter()
        .map(|&(s, t)| separator_count_generic(d.config(), s, t))
        .sum()
}

/// [`crossing_number`] with the edges split across the rayon pool.
pub fn crossing_number_parallel(d: &ColoredDrawing) -> u64 {
    d.graph()
        .edges()
        .par_iter()
        .map(|&(s, t)| separator_count_generic(d.config(), s, t))
        .sum()
}

/// Share of the crossing number owned by one 4-subset: over the three
/// splits into two pairs, each pair that is an edge and is separated by the
/// line through the other pair counts once.
pub fn quadruple_contribution(d: &ColoredDrawing, quad: [usize; 4]) -> Result<u64, DrawingError> {
    let m = d.vertex_count();
    let distinct = quad.iter().tuple_combinations().all(|(a, b)| a != b);
    if !distinct || quad.iter().any(|&v| v >= m) {
        return Err(DrawingError::BadQuadruple(quad));
    }
    Ok(quad_contribution_unchecked(d, quad))
}

fn quad_contribution_unchecked(d: &ColoredDrawing, [a, b, c, e]: [usize; 4]) -> u64 {
    let cfg = d.config();
    let mut total = 0;
    for (p, q, r, s) in [(a, b, c, e), (a, c, b, e), (a, e, b, c)] {
        if d.is_edge(p, q) && cfg.orient(r, s, p) != cfg.orient(r, s, q) {
            total += 1;
        }
        if d.is_edge(r, s) && cfg.orient(p, q, r) != cfg.orient(p, q, s) {
            total += 1;
        }
    }
    total
}

/// Crossing number as the sum of [`quadruple_contribution`] over all
/// 4-subsets.
pub fn crossing_number_by_quadruples(d: &ColoredDrawing) -> u64 {
    (0..d.vertex_count())
        .tuple_combinations()
        .map(|(a, b, c, e)| quad_contribution_unchecked(d, [a, b, c, e]))
        .sum()
}

/// The four color patterns of a convex quadruple, read in cyclic order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum QuadrupleKind {
    /// All four points share a color.
    Monochromatic,
    /// Two and two, colors alternating around the hull.
    Alternating,
    /// Three of one color, one of the other.
    ThreeOne,
    /// Two consecutive points of one color followed by two of the other.
    AdjacentPairs,
}

impl QuadrupleKind {
    /// Case number 1..=4.
    pub fn number(self) -> u8 {
        match self {
            QuadrupleKind::Monochromatic => 1,
            QuadrupleKind::Alternating => 2,
            QuadrupleKind::ThreeOne => 3,
            QuadrupleKind::AdjacentPairs => 4,
        }
    }

    /// Crossings a convex quadruple of this kind contributes to a complete
    /// bipartite drawing.
    pub fn contribution(self) -> u64 {
        match self {
            QuadrupleKind::Monochromatic | QuadrupleKind::Alternating => 0,
            QuadrupleKind::ThreeOne => 1,
            QuadrupleKind::AdjacentPairs => 2,
        }
    }

    /// Kind of a cyclic color sequence.
    pub fn of_cyclic_colors(colors: [Color; 4]) -> QuadrupleKind {
        let blacks = colors.iter().filter(|&&c| c == Color::Black).count();
        match blacks {
            0 | 4 => QuadrupleKind::Monochromatic,
            1 | 3 => QuadrupleKind::ThreeOne,
            _ if colors[0] == colors[2] => QuadrupleKind::Alternating,
            _ => QuadrupleKind::AdjacentPairs,
        }
    }
}

/// True iff the four points, in the given order, bound a strictly convex
/// quadrilateral (all four turns agree and none is collinear).
pub fn is_strictly_convex_cycle(points: [Point; 4]) -> bool {
    let turns: Vec<Orientation> = (0..4)
        .map(|i| orient_raw(points[i], points[(i + 1) % 4], points[(i + 2) % 4]))
        .collect();
    turns[0] != Orientation::Collinear && turns.iter().all(|&t| t == turns[0])
}

/// Cyclic order of four points in convex position, as a permutation of
/// `0..4` starting at 0, or `None` when one point lies inside the triangle of
/// the others.
pub fn convex_cyclic_order(points: [Point; 4]) -> Option<[usize; 4]> {
    [[0, 1, 2, 3], [0, 1, 3, 2], [0, 2, 1, 3]]
        .into_iter()
        .find(|order| is_strictly_convex_cycle(order.map(|i| points[i])))
}

/// Classify a convex quadruple given in cyclic order. Rejects input that is
/// not strictly convex in that order.
pub fn classify_convex_quadruple(
    points: [Point; 4],
    colors: [Color; 4],
) -> Result<QuadrupleKind, DrawingError> {
    for p in points {
        if !p.in_bounds() {
            return Err(GeometryError::CoordinateOverflow { x: p.x, y: p.y }.into());
        }
    }
    if !is_strictly_convex_cycle(points) {
        return Err(DrawingError::NotConvex);
    }
    Ok(QuadrupleKind::of_cyclic_colors(colors))
}

#[cfg(test)]
mod tests {
    use super::*;
    use Color::{Black as B, White as W};

    fn drawing(points: &[(i64, i64)], colors: &[Color]) -> ColoredDrawing {
        ColoredDrawing::complete_bipartite(
            points.iter().map(|&p| p.into()).collect(),
            colors.to_vec(),
        )
        .unwrap()
    }

    const SQUARE: [(i64, i64); 4] = [(0, 0), (1, 0), (1, 1), (0, 1)];
    const HEXAGON: [(i64, i64); 6] = [(2, 0), (4, 1), (4, 3), (2, 4), (0, 3), (0, 1)];

    #[test]
    fn convex_alternating_small_cases() {
        assert_eq!(crossing_number(&drawing(&SQUARE, &[B, W, B, W])), 0);
        assert_eq!(crossing_number(&drawing(&HEXAGON, &[B, W, B, W, B, W])), 12);
    }

    #[test]
    fn graph_spec_validation() {
        assert_eq!(
            GraphSpec::from_edges(3, [(0, 3)]),
            Err(DrawingError::EdgeOutOfRange(0, 3, 3))
        );
        assert_eq!(
            GraphSpec::from_edges(3, [(1, 1)]),
            Err(DrawingError::SelfLoop(1))
        );
        assert_eq!(
            GraphSpec::from_edges(3, [(0, 1), (1, 0)]),
            Err(DrawingError::DuplicateEdge(0, 1))
        );
        let g = GraphSpec::from_edges(4, [(3, 1), (0, 2)]).unwrap();
        assert_eq!(g.edges(), &[(0, 2), (1, 3)]);
        assert!(g.has_edge(3, 1));
        assert_eq!(GraphSpec::complete(5).edges().len(), 10);
        let kb = GraphSpec::complete_bipartite(&[B, W, W, B, W]);
        assert_eq!(kb.edges().len(), 6);
        assert!(kb
            .edges()
            .iter()
            .all(|&(a, b)| [B, W, W, B, W][a] != [B, W, W, B, W][b]));
    }

    #[test]
    fn construction_rejects_bad_inputs() {
        let pts: Vec<Point> = SQUARE.iter().map(|&p| p.into()).collect();
        let cfg = Configuration::new(pts.clone()).unwrap();
        assert!(matches!(
            ColoredDrawing::new(cfg.clone(), vec![B, W], GraphSpec::complete(4)),
            Err(DrawingError::ColorCount { .. })
        ));
        assert!(matches!(
            ColoredDrawing::new(cfg, vec![B, W, B, W], GraphSpec::complete(3)),
            Err(DrawingError::VertexCount { .. })
        ));
        let err = ColoredDrawing::complete_bipartite(
            vec![(0, 0).into(), (1, 1).into(), (2, 2).into()],
            vec![B, W, B],
        )
        .unwrap_err();
        assert_eq!(
            err,
            DrawingError::NotGeneric(vec![Violation::Collinear { i: 0, j: 1, k: 2 }])
        );
        assert!(err.to_string().contains("collinear triple (0, 1, 2)"));
    }

    #[test]
    fn quadruple_contribution_convex_cases() {
        // Square is convex; cyclic order 0,1,2,3.
        assert_eq!(
            quadruple_contribution(&drawing(&SQUARE, &[B, B, B, B]), [0, 1, 2, 3]),
            Ok(0)
        );
        assert_eq!(
            quadruple_contribution(&drawing(&SQUARE, &[B, W, B, W]), [0, 1, 2, 3]),
            Ok(0)
        );
        assert_eq!(
            quadruple_contribution(&drawing(&SQUARE, &[B, B, W, W]), [0, 1, 2, 3]),
            Ok(2)
        );
        assert_eq!(
            quadruple_contribution(&drawing(&SQUARE, &[B, B, B, W]), [0, 1, 2, 3]),
            Ok(1)
        );
    }

    #[test]
    fn quadruple_contribution_non_convex_matches_hand_count() {
        // D = (1,1) sits inside triangle ABC. Lines AD and BD split the
        // remaining pair (B,C) resp. (A,C), both bw edges; line CD splits the
        // black pair A,B, which is not an edge.
        let d = drawing(&[(0, 0), (4, 0), (0, 4), (1, 1)], &[B, B, W, W]);
        assert_eq!(quadruple_contribution(&d, [0, 1, 2, 3]), Ok(2));
        assert_eq!(quadruple_contribution(&d, [3, 1, 0, 2]), Ok(2));
        assert_eq!(crossing_number(&d), 2);
    }

    #[test]
    fn quadruple_contribution_rejects_bad_indices() {
        let d = drawing(&SQUARE, &[B, W, B, W]);
        assert!(quadruple_contribution(&d, [0, 1, 1, 2]).is_err());
        assert!(quadruple_contribution(&d, [0, 1, 2, 4]).is_err());
    }

    #[test]
    fn classify_examples() {
        let sq = SQUARE.map(Point::from);
        assert_eq!(
            classify_convex_quadruple(sq, [B, B, B, B])
                .unwrap()
                .number(),
            1
        );
        assert_eq!(
            classify_convex_quadruple(sq, [B, W, B, W])
                .unwrap()
                .number(),
            2
        );
        let k = classify_convex_quadruple(sq, [B, B, B, W]).unwrap();
        assert_eq!((k.number(), k.contribution()), (3, 1));
        let k = classify_convex_quadruple(sq, [W, B, B, W]).unwrap();
        assert_eq!((k.number(), k.contribution()), (4, 2));
        assert_eq!(QuadrupleKind::Alternating.contribution(), 0);
    }

    #[test]
    fn classify_rejects_non_convex_or_misordered() {
        let inner = [(0, 0), (4, 0), (0, 4), (1, 1)].map(Point::from);
        assert_eq!(
            classify_convex_quadruple(inner, [B, B, W, W]),
            Err(DrawingError::NotConvex)
        );
        // Convex set given in a self-crossing order.
        let bowtie = [(0, 0), (1, 1), (1, 0), (0, 1)].map(Point::from);
        assert_eq!(
            classify_convex_quadruple(bowtie, [B, B, W, W]),
            Err(DrawingError::NotConvex)
        );
        assert_eq!(convex_cyclic_order(bowtie), Some([0, 2, 1, 3]));
        assert_eq!(convex_cyclic_order(inner), None);
    }

    #[test]
    fn evaluators_agree_and_tiny_drawings_are_zero() {
        let d = drawing(&HEXAGON, &[B, B, W, B, W, W]);
        assert_eq!(crossing_number(&d), crossing_number_by_quadruples(&d));
        assert_eq!(crossing_number(&d), crossing_number_parallel(&d));
        let tri = drawing(&[(0, 0), (3, 1), (1, 2)], &[B, W, W]);
        assert_eq!(crossing_number(&tri), 0);
        assert_eq!(crossing_number_by_quadruples(&tri), 0);
    }

    #[test]
    fn moved_vertex_is_validated() {
        let d = drawing(&SQUARE, &[B, W, B, W]);
        assert!(matches!(
            d.with_moved_vertex(0, Point::new(1, 0)),
            Err(DrawingError::NotGeneric(_))
        ));
        assert_eq!(
            d.with_moved_vertex(0, Point::new(1, 2)).unwrap_err(),
            DrawingError::NotGeneric(vec![Violation::Collinear { i: 0, j: 1, k: 2 }])
        );
        let moved = d.with_moved_vertex(0, Point::new(-1, -2)).unwrap();
        assert_eq!(moved.points()[0], Point::new(-1, -2));
    }
}
