//! JSON and DOT serialization of labeled orientations.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{
    vertex_sums, CaterpillarSpec, Direction, EdgeRef, Label, LabeledOrientation, VertexRef,
};

#[derive(Debug, Error)]
pub enum ImportError {
    #[error("malformed result JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("field `edges[{index}].edge`: {edge} is not an edge of this instance")]
    UnknownEdge { index: usize, edge: EdgeRef },
    #[error("field `edges[{index}].edge`: {edge} appears more than once")]
    RepeatedEdge { index: usize, edge: EdgeRef },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct EdgeRecord {
    pub edge: EdgeRef,
    pub direction: Direction,
    pub label: Label,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SumRecord {
    pub vertex: VertexRef,
    pub sum: i64,
}

/// On-disk form of a labeled orientation. `sums` is informational and
/// ignored on import.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultDocument {
    pub spec: CaterpillarSpec,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub sums: Vec<SumRecord>,
}

impl ResultDocument {
    pub fn new(spec: &CaterpillarSpec, lo: &LabeledOrientation) -> Self {
        let edges = (0..lo.len())
            .filter_map(|i| {
                lo.label(i).map(|label| EdgeRecord {
                    edge: spec.edge_at(i),
                    direction: lo.direction(i),
                    label,
                })
            })
            .collect();
        let sums = vertex_sums(spec, lo)
            .map(|sums| {
                sums.into_iter()
                    .enumerate()
                    .map(|(i, sum)| SumRecord {
                        vertex: spec.vertex_at(i),
                        sum,
                    })
                    .collect()
            })
            .unwrap_or_default();
        Self {
            spec: spec.clone(),
            edges,
            sums,
        }
    }

    /// Rebuilds the labeling. Edges absent from the document stay unlabeled.
    pub fn to_labeling(&self) -> Result<LabeledOrientation, ImportError> {
        let mut lo = LabeledOrientation::unlabeled(self.spec.edge_count());
        let mut seen = HashSet::new();
        for (index, rec) in self.edges.iter().enumerate() {
            let idx = self
                .spec
                .edge_index(rec.edge)
                .ok_or(ImportError::UnknownEdge {
                    index,
                    edge: rec.edge,
                })?;
            if !seen.insert(idx) {
                return Err(ImportError::RepeatedEdge {
                    index,
                    edge: rec.edge,
                });
            }
            lo.set(idx, rec.direction, rec.label);
        }
        Ok(lo)
    }
}

pub fn export_json(spec: &CaterpillarSpec, lo: &LabeledOrientation) -> String {
    let mut out =
        serde_json::to_string_pretty(&ResultDocument::new(spec, lo)).expect("serializable");
    out.push('\n');
    out
}

pub fn import_json(text: &str) -> Result<(CaterpillarSpec, LabeledOrientation), ImportError> {
    let doc: ResultDocument = serde_json::from_str(text)?;
    let lo = doc.to_labeling()?;
    Ok((doc.spec, lo))
}

fn dot_id(v: VertexRef) -> String {
    match v {
        VertexRef::Spine { index } => format!("v{index}"),
        VertexRef::Leg { leg, index } => format!("x{leg}_{index}"),
    }
}

/// Graphviz digraph; each arc carries its label and each vertex its sum.
pub fn export_dot(spec: &CaterpillarSpec, lo: &LabeledOrientation) -> String {
    let sums = vertex_sums(spec, lo).ok();
    let mut out = String::new();
    let _ = writeln!(
        out,
        "digraph caterpillar {{\n  // p={} k={} legs={:?} m={}",
        spec.p(),
        spec.k(),
        spec.legs(),
        spec.edge_count()
    );
    out.push_str("  rankdir=TB;\n  node [shape=circle, fontsize=10];\n");
    for (i, v) in spec.vertices().enumerate() {
        match &sums {
            Some(s) => {
                let _ = writeln!(out, "  {} [xlabel=\"{}\"];", dot_id(v), s[i]);
            }
            None => {
                let _ = writeln!(out, "  {};", dot_id(v));
            }
        }
    }
    for idx in 0..lo.len() {
        let Some(label) = lo.label(idx) else { continue };
        let (lower, higher) = spec.endpoints(spec.edge_at(idx));
        let (tail, head) = match lo.direction(idx) {
            Direction::Forward => (lower, higher),
            Direction::Backward => (higher, lower),
        };
        let _ = writeln!(
            out,
            "  {} -> {} [label=\"{}\"];",
            dot_id(tail),
            dot_id(head),
            label
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::construct;

    #[test]
    fn bare_path_dot_has_p_arcs() {
        let spec = CaterpillarSpec::new(4, 2, vec![]).unwrap();
        let lo = LabeledOrientation::new(vec![Direction::Forward; 4], vec![1, 2, 3, 4]);
        let dot = export_dot(&spec, &lo);
        assert_eq!(dot.matches(" -> ").count(), 4);
        assert!(dot.contains("v3 -> v4 [label=\"4\"]"));
    }

    #[test]
    fn figure_one_dot_has_fifteen_labeled_arcs() {
        let spec = CaterpillarSpec::new(6, 3, vec![2, 2, 5]).unwrap();
        let (lo, _) = construct(&spec).unwrap();
        let dot = export_dot(&spec, &lo);
        assert_eq!(dot.matches("[label=").count(), 15);
        assert!(dot.starts_with("digraph caterpillar {"));
        // first leg edge points at the joint
        assert!(dot.contains("x0_1 -> v2"));
    }

    #[test]
    fn json_round_trip() {
        let spec = CaterpillarSpec::new(6, 3, vec![2, 2, 5]).unwrap();
        let (lo, _) = construct(&spec).unwrap();
        let text = export_json(&spec, &lo);
        let (spec2, lo2) = import_json(&text).unwrap();
        assert_eq!(spec2, spec);
        assert_eq!(lo2, lo);
        assert_eq!(export_json(&spec2, &lo2), text);
    }

    #[test]
    fn import_rejects_bad_edges() {
        let text = r#"{"spec":{"p":2,"k":2,"legs":[1]},
            "edges":[{"edge":{"type":"spine","index":5},"direction":"forward","label":1}]}"#;
        assert!(matches!(
            import_json(text),
            Err(ImportError::UnknownEdge { index: 0, .. })
        ));
        let text = r#"{"spec":{"p":2,"k":2,"legs":[1]},
            "edges":[{"edge":{"type":"spine","index":0},"direction":"forward","label":1},
                     {"edge":{"type":"spine","index":0},"direction":"forward","label":2}]}"#;
        assert!(matches!(
            import_json(text),
            Err(ImportError::RepeatedEdge { index: 1, .. })
        ));
        assert!(import_json(r#"{"spec":{"p":0,"k":2,"legs":[]},"edges":[]}"#).is_err());
    }

    #[test]
    fn missing_edges_stay_unlabeled() {
        let text = r#"{"spec":{"p":2,"k":1,"legs":[]},
            "edges":[{"edge":{"type":"spine","index":1},"direction":"backward","label":2}]}"#;
        let (_, lo) = import_json(text).unwrap();
        assert_eq!(lo.label(0), None);
        assert_eq!(lo.label(1), Some(2));
    }
}
