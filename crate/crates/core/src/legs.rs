//! Leg orientation and the three leg labeling patterns.
//!
//! Leg edge `e_j` joins leg vertices `j` and `j+1` (vertex 0 is the joint).
//! Every odd leg vertex is a source within its leg, so `e_j` points toward the
//! joint for even `j` and away from it for odd `j`.
//!
//! A leg with anchor `a` is labeled with the arithmetic progression
//! `{a, a-s, ..., a-(k-1)s}`; the patterns only differ in which multiple of
//! `s` lands on which edge.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Direction, Label};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LegError {
    #[error("leg length must be at least {min}, got {k}")]
    TooShort { k: usize, min: usize },
    #[error("pattern {kind} cannot label a leg of length {k}")]
    ParityMismatch { kind: PatternKind, k: usize },
    #[error("leg vertex {j} is not internal to a leg of length {k}")]
    NotInternal { j: usize, k: usize },
}

/// Which labeling pattern a leg uses.
///
/// `Big` (pattern I) puts the anchor on the joint edge; `SmallEven` (II) and
/// `SmallOdd` (III) are reserved for small legs and require even and odd `k`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PatternKind {
    #[serde(rename = "I")]
    Big,
    #[serde(rename = "II")]
    SmallEven,
    #[serde(rename = "III")]
    SmallOdd,
}

impl PatternKind {
    /// The small-leg pattern matching the parity of `k`.
    pub fn small_for(k: usize) -> Self {
        if k.is_multiple_of(2) {
            PatternKind::SmallEven
        } else {
            PatternKind::SmallOdd
        }
    }

    pub fn role(self) -> LegRole {
        match self {
            PatternKind::Big => LegRole::Big,
            _ => LegRole::Small,
        }
    }

    fn check(self, k: usize) -> Result<(), LegError> {
        if k < 2 {
            return Err(LegError::TooShort { k, min: 2 });
        }
        let ok = match self {
            PatternKind::Big => true,
            PatternKind::SmallEven => k.is_multiple_of(2),
            PatternKind::SmallOdd => k % 2 == 1,
        };
        if ok {
            Ok(())
        } else {
            Err(LegError::ParityMismatch { kind: self, k })
        }
    }
}

impl std::fmt::Display for PatternKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PatternKind::Big => "I",
            PatternKind::SmallEven => "II",
            PatternKind::SmallOdd => "III",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum LegRole {
    Big,
    Small,
}

/// Why a leg received its pattern.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum DispatchRule {
    /// Leg at a big joint.
    BigJoint,
    /// Small leg at a joint other than the last one.
    SmallJoint,
    /// Small leg at the last joint whose spine sum is at least `m - s`.
    LastJointHigh,
    /// Small leg at the last joint whose spine sum is at most `p`.
    LastJointLow,
    /// Spine sum strictly between; the joint is not first in sorted order.
    LastJointWindowRanked,
    /// Spine sum strictly between; the joint is first in sorted order.
    LastJointWindowFirst,
}

/// Pattern and anchor chosen for one leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LegAssignment {
    pub leg: usize,
    pub kind: PatternKind,
    pub anchor: Label,
    pub role: LegRole,
    pub rule: DispatchRule,
}

/// Orientation of `e_0 .. e_{k-1}` relative to the leg's own vertex order.
pub fn orient_leg(k: usize) -> Result<Vec<Direction>, LegError> {
    if k < 1 {
        return Err(LegError::TooShort { k, min: 1 });
    }
    Ok((0..k)
        .map(|j| {
            if j % 2 == 0 {
                Direction::Backward
            } else {
                Direction::Forward
            }
        })
        .collect())
}

/// Multipliers `c_j` such that edge `e_j` receives `a - c_j * s`.
pub fn pattern_offsets(kind: PatternKind, k: usize) -> Result<Vec<usize>, LegError> {
    kind.check(k)?;
    let mut c = vec![0usize; k];
    match kind {
        PatternKind::Big => {
            let half = k.div_ceil(2);
            for j in (0..k - 1).step_by(2) {
                c[j] = j / 2;
                c[j + 1] = half + j / 2;
            }
            if k % 2 == 1 {
                c[k - 1] = (k - 1) / 2;
            }
        }
        PatternKind::SmallEven => {
            for j in (0..k - 1).step_by(2) {
                c[j] = (k - 1) - (k / 2 + j / 2);
                c[j + 1] = (k - 1) - j / 2;
            }
        }
        PatternKind::SmallOdd => {
            c[k - 1] = (k - 1) / 2;
            for j in (0..k.saturating_sub(2)).step_by(2) {
                c[j] = (k - 1) - j / 2;
                c[j + 1] = (k - 1) - (k.div_ceil(2) + j / 2);
            }
        }
    }
    Ok(c)
}

/// Labels of `e_0 .. e_{k-1}` for a leg with anchor `a` and step `s`.
pub fn pattern_labels(kind: PatternKind, a: i64, s: i64, k: usize) -> Result<Vec<i64>, LegError> {
    Ok(pattern_offsets(kind, k)?
        .into_iter()
        .map(|c| a - c as i64 * s)
        .collect())
}

/// `{a - j*s : 0 <= j < k}`.
pub fn label_set(a: i64, s: i64, k: usize) -> BTreeSet<i64> {
    (0..k as i64).map(|j| a - j * s).collect()
}

/// Vertex sum at internal leg vertex `j` (`1 <= j <= k-1`) in closed form.
pub fn closed_form_internal_sum(
    kind: PatternKind,
    a: i64,
    s: i64,
    k: usize,
    j: usize,
) -> Result<i64, LegError> {
    kind.check(k)?;
    if j < 1 || j >= k {
        return Err(LegError::NotInternal { j, k });
    }
    let (ki, ji) = (k as i64, j as i64);
    // twice the multiplier of s, kept integral for odd k
    let twice = match (kind, k.is_multiple_of(2)) {
        (PatternKind::Big, true) => ki + 2 * ji - 2,
        (PatternKind::Big, false) => ki - 1 + 2 * ji,
        (_, true) => 3 * ki - 2 - 2 * ji,
        (_, false) => 3 * (ki - 1) - 2 * ji,
    };
    debug_assert_eq!(twice % 2, 0);
    let magnitude = 2 * a - (twice / 2) * s;
    Ok(if j.is_multiple_of(2) {
        magnitude
    } else {
        -magnitude
    })
}

/// Vertex sum at the leaf `x_k` in closed form.
pub fn closed_form_leaf_sum(kind: PatternKind, a: i64, s: i64, k: usize) -> Result<i64, LegError> {
    kind.check(k)?;
    let ki = k as i64;
    Ok(match (kind, k.is_multiple_of(2)) {
        (PatternKind::Big, true) => a - (ki - 1) * s,
        (_, true) => a - (ki / 2) * s,
        (_, false) => -(a - (ki - 1) / 2 * s),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;
    use PatternKind::*;

    #[test]
    fn orientations() {
        assert_eq!(orient_leg(3).unwrap(), vec![Backward, Forward, Backward]);
        assert_eq!(orient_leg(1).unwrap(), vec![Backward]);
        assert_eq!(orient_leg(2).unwrap(), vec![Backward, Forward]);
        assert!(orient_leg(0).is_err());
    }

    #[test]
    fn figure_patterns() {
        assert_eq!(pattern_offsets(Big, 6).unwrap(), vec![0, 3, 1, 4, 2, 5]);
        assert_eq!(
            pattern_offsets(SmallEven, 6).unwrap(),
            vec![2, 5, 1, 4, 0, 3]
        );
        assert_eq!(
            pattern_offsets(SmallOdd, 7).unwrap(),
            vec![6, 2, 5, 1, 4, 0, 3]
        );
        assert_eq!(pattern_offsets(Big, 7).unwrap(), vec![0, 4, 1, 5, 2, 6, 3]);
    }

    #[test]
    fn parity_mismatch() {
        assert_eq!(
            pattern_offsets(SmallEven, 5),
            Err(LegError::ParityMismatch {
                kind: SmallEven,
                k: 5
            })
        );
        assert!(pattern_offsets(SmallOdd, 4).is_err());
        assert!(pattern_offsets(Big, 1).is_err());
        assert!(closed_form_leaf_sum(SmallOdd, 10, 1, 6).is_err());
        assert!(closed_form_internal_sum(SmallEven, 10, 1, 3, 1).is_err());
    }

    #[test]
    fn length_two_patterns_coincide() {
        assert_eq!(pattern_labels(Big, 9, 2, 2).unwrap(), vec![9, 7]);
        assert_eq!(pattern_labels(SmallEven, 9, 2, 2).unwrap(), vec![9, 7]);
    }

    #[test]
    fn label_sets() {
        assert_eq!(label_set(15, 3, 3), BTreeSet::from([15, 12, 9]));
        assert_eq!(label_set(7, 3, 1), BTreeSet::from([7]));
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(closed_form_internal_sum(Big, 20, 2, 6, 1).unwrap(), -34);
        // x_2 receives a-5s and a-s
        assert_eq!(
            closed_form_internal_sum(SmallEven, 20, 2, 6, 2).unwrap(),
            28
        );
        assert_eq!(closed_form_leaf_sum(Big, 20, 2, 6).unwrap(), 10);
        assert_eq!(closed_form_leaf_sum(SmallEven, 20, 2, 6).unwrap(), 14);
        assert_eq!(closed_form_leaf_sum(SmallOdd, 20, 2, 3).unwrap(), -(20 - 2));
        assert!(closed_form_internal_sum(Big, 20, 2, 6, 6).is_err());
        assert!(closed_form_internal_sum(Big, 20, 2, 6, 0).is_err());
    }

    #[test]
    fn patterns_permute_the_label_set() {
        for k in 2..=12 {
            for kind in [Big, PatternKind::small_for(k)] {
                let labels: BTreeSet<i64> = pattern_labels(kind, 100, 3, k)
                    .unwrap()
                    .into_iter()
                    .collect();
                assert_eq!(labels, label_set(100, 3, k), "{kind} k={k}");
            }
        }
    }
}
