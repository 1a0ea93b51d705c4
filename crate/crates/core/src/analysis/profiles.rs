use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::lines::LineClass;
use super::{balanced_size, AnalysisError};
use crate::drawing::ColoredDrawing;
use crate::geometry::Orientation;

/// Sorted endvertex types of one vertex over all lines of a class through it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexProfile {
    pub vertex: usize,
    pub types: Vec<usize>,
    /// Smallest entry of `types` (the `s` index).
    pub min_type: usize,
    /// 1-based index of `types` in [`ProfileTables::sequences`] (the `t` index).
    pub sequence: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileCount {
    pub s: usize,
    pub t: usize,
    pub count: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Multiplicity {
    pub s: usize,
    pub t: usize,
    pub i: usize,
    pub count: u64,
}

/// Per-vertex type sequences for one line class, the registry of distinct
/// sequences, `p[(s, t)]` (vertices whose sequence is the `t`-th one, with
/// minimum `s`) and `z[(s, t, i)]` (occurrences of `i` in sequence `t`).
///
/// Sequences are numbered from 1 in order of first appearance during a scan
/// of the vertices by index.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProfileTables {
    pub class: LineClass,
    pub n: usize,
    pub cap: usize,
    pub vertices: Vec<VertexProfile>,
    pub sequences: Vec<Vec<usize>>,
    pub p: Vec<ProfileCount>,
    pub z: Vec<Multiplicity>,
}

impl ProfileTables {
    /// Build the registry and counts from per-vertex type lists (sorted here).
    pub fn from_sequences(
        class: LineClass,
        n: usize,
        cap: usize,
        per_vertex: Vec<(usize, Vec<usize>)>,
    ) -> ProfileTables {
        let mut sequences: Vec<Vec<usize>> = Vec::new();
        let mut vertices = Vec::with_capacity(per_vertex.len());
        let mut p: BTreeMap<(usize, usize), u64> = BTreeMap::new();
        for (vertex, mut types) in per_vertex {
            types.sort_unstable();
            let t = match sequences.iter().position(|s| *s == types) {
                Some(k) => k + 1,
                None => {
                    sequences.push(types.clone());
                    sequences.len()
                }
            };
            let s = types.first().copied().unwrap_or(0);
            *p.entry((s, t)).or_default() += 1;
            vertices.push(VertexProfile {
                vertex,
                types,
                min_type: s,
                sequence: t,
            });
        }
        let mut z = Vec::new();
        for (k, seq) in sequences.iter().enumerate() {
            let s = seq.first().copied().unwrap_or(0);
            let mut counts: BTreeMap<usize, u64> = BTreeMap::new();
            for &i in seq {
                *counts.entry(i).or_default() += 1;
            }
            z.extend(counts.into_iter().map(|(i, count)| Multiplicity {
                s,
                t: k + 1,
                i,
                count,
            }));
        }
        ProfileTables {
            class,
            n,
            cap,
            vertices,
            sequences,
            p: p.into_iter()
                .map(|((s, t), count)| ProfileCount { s, t, count })
                .collect(),
            z,
        }
    }

    pub fn p(&self, s: usize, t: usize) -> u64 {
        self.p
            .iter()
            .find(|e| e.s == s && e.t == t)
            .map_or(0, |e| e.count)
    }

    pub fn z(&self, s: usize, t: usize, i: usize) -> u64 {
        self.z
            .iter()
            .find(|e| e.s == s && e.t == t && e.i == i)
            .map_or(0, |e| e.count)
    }

    pub fn p_total(&self) -> u64 {
        self.p.iter().map(|e| e.count).sum()
    }

    /// `sum_t sum_{s<=i} z[(s,t,i)] * p[(s,t)]`.
    pub fn y_from_profiles(&self, i: usize) -> u64 {
        self.p
            .iter()
            .filter(|e| e.s <= i)
            .map(|e| self.z(e.s, e.t, i) * e.count)
            .sum()
    }
}

/// Vertex profiles computed directly from halfplane counts around each
/// vertex, independently of [`super::classify_lines`].
///
/// bw: every vertex `v`, over its `n` edges `(v, w)`, takes the smaller
/// number of `w`-colored points (other than `w`) on one side. Same color:
/// every vertex of that color, over the `n - 1` lines to the other vertices
/// of its color, takes the smaller number of its color (other than the two
/// endpoints) on one side.
pub fn vertex_profiles(
    d: &ColoredDrawing,
    class: LineClass,
) -> Result<ProfileTables, AnalysisError> {
    let n = balanced_size(d)?;
    let cfg = d.config();
    let m = d.vertex_count();
    let owners: Vec<usize> = match class.endpoint_color() {
        None => (0..m).collect(),
        Some(c) => (0..m).filter(|&v| d.color(v) == c).collect(),
    };
    let per_vertex = owners
        .into_iter()
        .map(|v| {
            let partner_color = match class {
                LineClass::Bw => d.color(v).opposite(),
                _ => d.color(v),
            };
            let types = (0..m)
                .filter(|&w| w != v && d.color(w) == partner_color)
                .map(|w| {
                    let (mut left, mut right) = (0usize, 0usize);
                    for u in (0..m).filter(|&u| u != v && u != w && d.color(u) == partner_color) {
                        if cfg.orient(v, w, u) == Orientation::CounterClockwise {
                            left += 1;
                        } else {
                            right += 1;
                        }
                    }
                    left.min(right)
                })
                .collect();
            (v, types)
        })
        .collect();
    Ok(ProfileTables::from_sequences(
        class,
        n,
        class.type_cap(n),
        per_vertex,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::convex_alternating;

    #[test]
    fn convex_drawing_has_one_sequence() {
        for n in 2..=6 {
            let d = convex_alternating(n).unwrap();
            let bw = vertex_profiles(&d, LineClass::Bw).unwrap();
            assert_eq!(bw.sequences.len(), 1);
            assert_eq!(
                bw.p,
                vec![ProfileCount {
                    s: 0,
                    t: 1,
                    count: 2 * n as u64
                }]
            );
            let expected: Vec<usize> = (0..n).map(|k| k / 2).collect();
            assert_eq!(bw.sequences[0], expected);
            for class in [LineClass::WhiteWhite, LineClass::BlackBlack] {
                let same = vertex_profiles(&d, class).unwrap();
                assert_eq!(
                    same.p,
                    vec![ProfileCount {
                        s: 0,
                        t: 1,
                        count: n as u64
                    }]
                );
            }
        }
    }

    #[test]
    fn multiplicities_of_worked_sequence() {
        let tables =
            ProfileTables::from_sequences(LineClass::Bw, 5, 2, vec![(0, vec![0, 1, 2, 1, 0])]);
        assert_eq!(tables.sequences, vec![vec![0, 0, 1, 1, 2]]);
        assert_eq!(tables.z(0, 1, 0), 2);
        assert_eq!(tables.z(0, 1, 1), 2);
        assert_eq!(tables.z(0, 1, 2), 1);
        assert_eq!(tables.p(0, 1), 1);
    }

    #[test]
    fn registry_numbers_by_first_occurrence() {
        let tables = ProfileTables::from_sequences(
            LineClass::Bw,
            3,
            1,
            vec![(0, vec![1, 1, 1]), (1, vec![0, 0, 1]), (2, vec![1, 0, 0])],
        );
        assert_eq!(tables.sequences, vec![vec![1, 1, 1], vec![0, 0, 1]]);
        assert_eq!(tables.p(1, 1), 1);
        assert_eq!(tables.p(0, 2), 2);
        assert_eq!(tables.vertices[2].sequence, 2);
        assert_eq!(tables.y_from_profiles(1), 3 + 2);
    }
}
