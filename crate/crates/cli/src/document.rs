//! The JSON drawing interchange format.
//!
//! ```json
//! {
//!   "points": [{"x": 0, "y": 0, "color": "black"}, {"x": 1, "y": 0, "color": "white"}],
//!   "edges": "complete_bipartite"
//! }
//! ```
//!
//! `edges` is either the string `"complete_bipartite"` (every black-white
//! pair) or a list of `[a, b]` vertex index pairs.

use std::fmt;

use ocn_core::drawing::{Color, ColoredDrawing, DrawingError, GraphSpec};
use ocn_core::geometry::{Configuration, Point};
use serde::de::{self, Deserializer, SeqAccess, Visitor};
use serde::ser::Serializer;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DocumentPoint {
    pub x: i64,
    pub y: i64,
    pub color: Color,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum EdgeSpec {
    CompleteBipartite,
    List(Vec<[usize; 2]>),
}

const COMPLETE_BIPARTITE: &str = "complete_bipartite";

impl Serialize for EdgeSpec {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            EdgeSpec::CompleteBipartite => s.serialize_str(COMPLETE_BIPARTITE),
            EdgeSpec::List(edges) => edges.serialize(s),
        }
    }
}

impl<'de> Deserialize<'de> for EdgeSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct EdgeVisitor;

        impl<'de> Visitor<'de> for EdgeVisitor {
            type Value = EdgeSpec;

            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(
                    f,
                    "\"{COMPLETE_BIPARTITE}\" or a list of [a, b] index pairs"
                )
            }

            fn visit_str<E: de::Error>(self, v: &str) -> Result<EdgeSpec, E> {
                if v == COMPLETE_BIPARTITE {
                    Ok(EdgeSpec::CompleteBipartite)
                } else {
                    Err(E::invalid_value(de::Unexpected::Str(v), &self))
                }
            }

            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<EdgeSpec, A::Error> {
                let mut edges = Vec::with_capacity(seq.size_hint().unwrap_or(0));
                while let Some(e) = seq.next_element::<[usize; 2]>()? {
                    edges.push(e);
                }
                Ok(EdgeSpec::List(edges))
            }
        }

        d.deserialize_any(EdgeVisitor)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DrawingDocument {
    pub points: Vec<DocumentPoint>,
    pub edges: EdgeSpec,
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("{path}: {message} (line {line}, column {column})")]
    Parse {
        /// Dotted path to the offending field, `.` for the document root.
        path: String,
        message: String,
        line: usize,
        column: usize,
    },
    #[error("invalid drawing: {0}")]
    Invalid(#[from] DrawingError),
}

impl DrawingDocument {
    pub fn parse(text: &str) -> Result<DrawingDocument, DocumentError> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let doc: DrawingDocument = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            let inner = e.into_inner();
            DocumentError::Parse {
                path,
                message: strip_position(&inner.to_string()),
                line: inner.line(),
                column: inner.column(),
            }
        })?;
        Ok(doc)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("documents always serialize")
    }

    /// Emits `"complete_bipartite"` when the edge set is exactly the
    /// black-white pairs, an explicit list otherwise.
    pub fn from_drawing(d: &ColoredDrawing) -> DrawingDocument {
        let points = d
            .points()
            .iter()
            .zip(d.colors())
            .map(|(p, &color)| DocumentPoint {
                x: p.x,
                y: p.y,
                color,
            })
            .collect();
        let edges = if d.graph().is_complete_bipartite_for(d.colors()) {
            EdgeSpec::CompleteBipartite
        } else {
            EdgeSpec::List(d.graph().edges().iter().map(|&(a, b)| [a, b]).collect())
        };
        DrawingDocument { points, edges }
    }

    pub fn colors(&self) -> Vec<Color> {
        self.points.iter().map(|p| p.color).collect()
    }

    pub fn graph(&self) -> Result<GraphSpec, DrawingError> {
        let colors = self.colors();
        match &self.edges {
            EdgeSpec::CompleteBipartite => Ok(GraphSpec::complete_bipartite(&colors)),
            EdgeSpec::List(edges) => {
                GraphSpec::from_edges(colors.len(), edges.iter().map(|&[a, b]| (a, b)))
            }
        }
    }

    pub fn to_drawing(&self) -> Result<ColoredDrawing, DrawingError> {
        let points = self.points.iter().map(|p| Point::new(p.x, p.y)).collect();
        let config = Configuration::new(points)?;
        ColoredDrawing::new(config, self.colors(), self.graph()?)
    }
}

/// serde_json appends " at line L column C"; the position is reported
/// separately.
fn strip_position(message: &str) -> String {
    match message.rfind(" at line ") {
        Some(k) => message[..k].to_string(),
        None => message.to_string(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_both_edge_forms() {
        let doc = DrawingDocument::parse(
            r#"{"points": [{"x": 0, "y": 0, "color": "black"}, {"x": 3, "y": 1, "color": "white"}],
                "edges": "complete_bipartite"}"#,
        )
        .unwrap();
        assert_eq!(doc.edges, EdgeSpec::CompleteBipartite);
        assert_eq!(doc.to_drawing().unwrap().graph().edges(), &[(0, 1)]);
        let doc = DrawingDocument::parse(
            r#"{"points": [{"x": 0, "y": 0, "color": "black"}, {"x": 3, "y": 1, "color": "black"}],
                "edges": [[1, 0]]}"#,
        )
        .unwrap();
        assert_eq!(doc.edges, EdgeSpec::List(vec![[1, 0]]));
        assert_eq!(doc.to_drawing().unwrap().graph().edges(), &[(0, 1)]);
    }

    #[test]
    fn parse_errors_name_the_field() {
        let text = "{\"points\": [\n  {\"x\": 0, \"y\": 0, \"color\": \"black\"},\n  {\"x\": 1, \"y\": 2, \"color\": \"red\"}\n], \"edges\": []}";
        match DrawingDocument::parse(text).unwrap_err() {
            DocumentError::Parse { path, line, .. } => {
                assert_eq!(path, "points[1].color");
                assert_eq!(line, 3);
            }
            other => panic!("{other}"),
        }
        let err = DrawingDocument::parse(r#"{"points": [], "edges": "complete"}"#).unwrap_err();
        assert!(err.to_string().starts_with("edges: invalid value"), "{err}");
        let err = DrawingDocument::parse(r#"{"points": [], "edges": [[0, 1, 2]]}"#).unwrap_err();
        assert!(err.to_string().starts_with("edges[0]"), "{err}");
        let err = DrawingDocument::parse(
            r#"{"points": [{"x": 1.5, "y": 0, "color": "black"}], "edges": []}"#,
        )
        .unwrap_err();
        assert!(err.to_string().starts_with("points[0].x"), "{err}");
        let err = DrawingDocument::parse(r#"{"points": []}"#).unwrap_err();
        assert!(err.to_string().contains("missing field `edges`"), "{err}");
    }

    #[test]
    fn validation_lists_collinear_triples() {
        let doc = DrawingDocument::parse(
            r#"{"points": [{"x": 0, "y": 0, "color": "black"}, {"x": 1, "y": 1, "color": "white"},
                           {"x": 2, "y": 2, "color": "black"}],
                "edges": "complete_bipartite"}"#,
        )
        .unwrap();
        let err = doc.to_drawing().unwrap_err();
        assert_eq!(
            err.to_string(),
            "configuration is not generic: collinear triple (0, 1, 2)"
        );
    }

    #[test]
    fn from_drawing_prefers_the_keyword() {
        let d = ocn_core::generators::convex_alternating(2).unwrap();
        let doc = DrawingDocument::from_drawing(&d);
        assert_eq!(doc.edges, EdgeSpec::CompleteBipartite);
        assert_eq!(doc.to_drawing().unwrap(), d);
        let d = d.with_edge(0, 2).unwrap();
        let doc = DrawingDocument::from_drawing(&d);
        assert!(matches!(doc.edges, EdgeSpec::List(ref e) if e.len() == 5));
        assert_eq!(doc.to_drawing().unwrap(), d);
    }
}
