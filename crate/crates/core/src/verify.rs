//! Independent antimagic checker.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::graph::{vertex_sums, CaterpillarSpec, EdgeRef, Label, LabeledOrientation, VertexRef};

/// The first defect found in a labeled orientation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum Violation {
    /// Labels do not form a bijection onto `1..=m`.
    NotBijection {
        missing: Vec<Label>,
        duplicates: Vec<Label>,
        out_of_range: Vec<Label>,
        unlabeled: Vec<EdgeRef>,
    },
    /// Two vertices share a sum. `u` precedes `v` in canonical order.
    DuplicateSum {
        u: VertexRef,
        v: VertexRef,
        sum: i64,
    },
}

impl std::fmt::Display for Violation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Violation::NotBijection {
                missing,
                duplicates,
                out_of_range,
                unlabeled,
            } => {
                write!(
                    f,
                    "NotBijection: missing {missing:?}, duplicate {duplicates:?}"
                )?;
                if !out_of_range.is_empty() {
                    write!(f, ", out of range {out_of_range:?}")?;
                }
                if !unlabeled.is_empty() {
                    let list: Vec<String> = unlabeled.iter().map(|e| e.to_string()).collect();
                    write!(f, ", unlabeled [{}]", list.join(", "))?;
                }
                Ok(())
            }
            Violation::DuplicateSum { u, v, sum } => {
                write!(f, "DuplicateSum: {u} and {v} both have sum {sum}")
            }
        }
    }
}

impl std::error::Error for Violation {}

fn check_bijection(spec: &CaterpillarSpec, lo: &LabeledOrientation) -> Option<Violation> {
    let m = spec.edge_count();
    let mut count = vec![0usize; m + 1];
    let mut out_of_range = Vec::new();
    let mut unlabeled = Vec::new();
    for idx in 0..lo.len() {
        match lo.label(idx) {
            Some(l) if (1..=m as Label).contains(&l) => count[l as usize] += 1,
            Some(l) => out_of_range.push(l),
            None => unlabeled.push(spec.edge_at(idx)),
        }
    }
    // labelings sized for a different instance leave edges uncovered
    for idx in lo.len()..m {
        unlabeled.push(spec.edge_at(idx));
    }
    let missing: Vec<Label> = (1..=m)
        .filter(|&l| count[l] == 0)
        .map(|l| l as Label)
        .collect();
    let duplicates: Vec<Label> = (1..=m)
        .filter(|&l| count[l] > 1)
        .map(|l| l as Label)
        .collect();
    out_of_range.sort_unstable();
    if missing.is_empty()
        && duplicates.is_empty()
        && out_of_range.is_empty()
        && unlabeled.is_empty()
    {
        None
    } else {
        Some(Violation::NotBijection {
            missing,
            duplicates,
            out_of_range,
            unlabeled,
        })
    }
}

/// Checks that `lo` is an antimagic labeling of `spec`.
///
/// Labels are examined first; then the lexicographically first pair of
/// vertices `(u, v)` with equal sums is reported, in canonical vertex order.
pub fn verify_antimagic(spec: &CaterpillarSpec, lo: &LabeledOrientation) -> Result<(), Violation> {
    if lo.len() > spec.edge_count() {
        let extra: Vec<Label> = (spec.edge_count()..lo.len())
            .filter_map(|i| lo.label(i))
            .collect();
        return Err(Violation::NotBijection {
            missing: Vec::new(),
            duplicates: Vec::new(),
            out_of_range: extra,
            unlabeled: Vec::new(),
        });
    }
    if let Some(v) = check_bijection(spec, lo) {
        return Err(v);
    }
    let sums = vertex_sums(spec, lo).expect("complete labeling of matching size");
    match first_duplicate(&sums) {
        None => Ok(()),
        Some((u, v)) => Err(Violation::DuplicateSum {
            u: spec.vertex_at(u),
            v: spec.vertex_at(v),
            sum: sums[u],
        }),
    }
}

/// Smallest `u` whose sum recurs, paired with its next occurrence.
fn first_duplicate(sums: &[i64]) -> Option<(usize, usize)> {
    let mut first_seen: HashMap<i64, usize> = HashMap::with_capacity(sums.len());
    let mut best: Option<(usize, usize)> = None;
    for (i, &s) in sums.iter().enumerate() {
        match first_seen.get(&s) {
            Some(&j) => {
                // the first repeat of each sum gives the pair starting at its first occurrence
                if best.is_none_or(|(u, _)| j < u) {
                    best = Some((j, i));
                }
            }
            None => {
                first_seen.insert(s, i);
            }
        }
    }
    best
}
