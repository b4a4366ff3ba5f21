//! Orientation and labeling of the spine path.
//!
//! A spine plan labels `v_0 .. v_p` bijectively with `1..=p` so that
//!
//! 1. every joint has sum at least 1, every joint but the last has sum at
//!    most `p - 1`, and the last joint has sum at least 3;
//! 2. every other spine vertex has `1 <= |sum| <= p`;
//! 3. the non-joint spine vertices have pairwise distinct sums.
//!
//! Plans are found by depth-first search. The first pass only considers
//! orientations where each non-final joint has one arc in and one out and the
//! final joint has both arcs in; if that family is exhausted the search is
//! repeated over all orientations.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Direction, Label};

pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpineError {
    #[error("invalid spine request: {0}")]
    InvalidInput(String),
    #[error("spine search exhausted without finding a plan")]
    SearchExhausted,
    #[error("spine search exceeded its budget of {budget} nodes")]
    BudgetExceeded { budget: u64 },
}

/// Orientation and labels of the spine edges; edge `i` joins `v_i` and `v_{i+1}`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpinePlan {
    pub directions: Vec<Direction>,
    pub labels: Vec<Label>,
}

impl SpinePlan {
    pub fn p(&self) -> usize {
        self.labels.len()
    }

    /// Sum at every spine vertex `v_0 .. v_p`, counting spine arcs only.
    pub fn vertex_sums(&self) -> Vec<i64> {
        let p = self.p();
        let mut sums = vec![0i64; p + 1];
        for i in 0..p {
            let l = self.labels[i] as i64;
            match self.directions[i] {
                Direction::Forward => {
                    sums[i + 1] += l;
                    sums[i] -= l;
                }
                Direction::Backward => {
                    sums[i] += l;
                    sums[i + 1] -= l;
                }
            }
        }
        sums
    }
}

/// One way a plan misses the required properties.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind")]
pub enum SpineFailure {
    Malformed {
        reason: String,
    },
    NotBijection {
        missing: Vec<Label>,
    },
    JointBelowOne {
        position: usize,
        sum: i64,
    },
    JointAboveLimit {
        position: usize,
        sum: i64,
        limit: i64,
    },
    LastJointBelowThree {
        position: usize,
        sum: i64,
    },
    NonJointOutOfRange {
        position: usize,
        sum: i64,
    },
    NonJointDuplicate {
        u: usize,
        v: usize,
        sum: i64,
    },
}

fn check_joints(p: usize, joints: &[usize]) -> Result<(), String> {
    if p < 2 {
        return Err(format!("spine needs at least 2 edges, got {p}"));
    }
    if joints.is_empty() {
        return Err("joint set is empty".into());
    }
    if !joints.windows(2).all(|w| w[0] < w[1]) {
        return Err(format!(
            "joint positions {joints:?} are not strictly ascending"
        ));
    }
    if joints.iter().any(|&h| h < 1 || h > p - 1) {
        return Err(format!(
            "joint positions {joints:?} must lie in 1..={}",
            p - 1
        ));
    }
    Ok(())
}

/// Checks the three plan properties and reports every failure.
pub fn verify_spine_plan(plan: &SpinePlan, joints: &[usize]) -> Result<(), Vec<SpineFailure>> {
    let p = plan.p();
    if plan.directions.len() != p {
        return Err(vec![SpineFailure::Malformed {
            reason: format!("{} directions for {p} labels", plan.directions.len()),
        }]);
    }
    if let Err(reason) = check_joints(p, joints) {
        return Err(vec![SpineFailure::Malformed { reason }]);
    }
    let mut failures = Vec::new();
    let mut seen = vec![false; p + 1];
    for &l in &plan.labels {
        if (1..=p as Label).contains(&l) {
            seen[l as usize] = true;
        }
    }
    let missing: Vec<Label> = (1..=p).filter(|&l| !seen[l]).map(|l| l as Label).collect();
    if !missing.is_empty() {
        failures.push(SpineFailure::NotBijection { missing });
    }

    let sums = plan.vertex_sums();
    let last = *joints.last().expect("nonempty");
    let pi = p as i64;
    let mut non_joint: Vec<(usize, i64)> = Vec::new();
    for (position, &sum) in sums.iter().enumerate() {
        if joints.contains(&position) {
            if sum < 1 {
                failures.push(SpineFailure::JointBelowOne { position, sum });
            }
            if position == last {
                if sum < 3 {
                    failures.push(SpineFailure::LastJointBelowThree { position, sum });
                }
            } else if sum > pi - 1 {
                failures.push(SpineFailure::JointAboveLimit {
                    position,
                    sum,
                    limit: pi - 1,
                });
            }
        } else {
            if sum == 0 || sum.abs() > pi {
                failures.push(SpineFailure::NonJointOutOfRange { position, sum });
            }
            non_joint.push((position, sum));
        }
    }
    for (a, &(u, su)) in non_joint.iter().enumerate() {
        if let Some(&(v, _)) = non_joint[a + 1..].iter().find(|(_, sv)| *sv == su) {
            failures.push(SpineFailure::NonJointDuplicate { u, v, sum: su });
        }
    }
    if failures.is_empty() {
        Ok(())
    } else {
        Err(failures)
    }
}

pub fn label_spine(p: usize, joints: &[usize]) -> Result<SpinePlan, SpineError> {
    label_spine_with_budget(p, joints, DEFAULT_NODE_BUDGET)
}

/// Searches for a spine plan, giving up after `budget` search nodes in total.
pub fn label_spine_with_budget(
    p: usize,
    joints: &[usize],
    budget: u64,
) -> Result<SpinePlan, SpineError> {
    check_joints(p, joints).map_err(SpineError::InvalidInput)?;
    let mut search = Search::new(p, joints, budget);
    for seeded in [true, false] {
        search.reset(seeded);
        if search.dfs(0)? {
            let plan = SpinePlan {
                directions: search.dirs.clone(),
                labels: search.labels.clone(),
            };
            debug_assert!(verify_spine_plan(&plan, joints).is_ok());
            return Ok(plan);
        }
    }
    Err(SpineError::SearchExhausted)
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Role {
    Plain,
    Joint,
    LastJoint,
}

#[derive(Clone, Copy)]
enum Side {
    Left,
    Right,
}

struct Search {
    p: usize,
    roles: Vec<Role>,
    /// Edges in assignment order, growing outward from the last joint.
    order: Vec<(usize, Side)>,
    /// Vertices whose incident edges are all assigned after each step.
    completes: Vec<Vec<usize>>,
    seeded: bool,
    dirs: Vec<Direction>,
    labels: Vec<Label>,
    used: Vec<bool>,
    /// Non-joint sums in use, offset by `p`.
    taken: Vec<bool>,
    nodes: u64,
    budget: u64,
}

impl Search {
    fn new(p: usize, joints: &[usize], budget: u64) -> Self {
        let last = *joints.last().expect("nonempty");
        let mut roles = vec![Role::Plain; p + 1];
        for &h in joints {
            roles[h] = Role::Joint;
        }
        roles[last] = Role::LastJoint;

        let mut order = vec![(last - 1, Side::Left), (last, Side::Right)];
        let (mut lo, mut hi) = (last - 1, last);
        while lo > 0 || hi < p - 1 {
            if lo > 0 {
                lo -= 1;
                order.push((lo, Side::Left));
            }
            if hi < p - 1 {
                hi += 1;
                order.push((hi, Side::Right));
            }
        }

        let mut assigned = vec![false; p];
        let mut completes = Vec::with_capacity(p);
        for &(e, _) in &order {
            assigned[e] = true;
            let mut done = Vec::new();
            for v in [e, e + 1] {
                let left_ok = v == 0 || assigned[v - 1];
                let right_ok = v == p || assigned[v];
                if left_ok && right_ok {
                    done.push(v);
                }
            }
            completes.push(done);
        }

        Self {
            p,
            roles,
            order,
            completes,
            seeded: true,
            dirs: vec![Direction::Forward; p],
            labels: vec![0; p],
            used: vec![false; p + 1],
            taken: vec![false; 2 * p + 1],
            nodes: 0,
            budget,
        }
    }

    fn reset(&mut self, seeded: bool) {
        self.seeded = seeded;
        self.labels.fill(0);
        self.used.fill(false);
        self.taken.fill(false);
    }

    fn sum(&self, v: usize) -> i64 {
        let mut s = 0i64;
        if v > 0 {
            let l = self.labels[v - 1] as i64;
            s += if self.dirs[v - 1] == Direction::Forward {
                l
            } else {
                -l
            };
        }
        if v < self.p {
            let l = self.labels[v] as i64;
            s += if self.dirs[v] == Direction::Backward {
                l
            } else {
                -l
            };
        }
        s
    }

    /// Directions the seeded family permits for edge `e`, given its assigned neighbour.
    fn allowed(&self, e: usize, side: Side) -> &'static [Direction] {
        const BOTH: &[Direction] = &[Direction::Forward, Direction::Backward];
        const FWD: &[Direction] = &[Direction::Forward];
        const BWD: &[Direction] = &[Direction::Backward];
        if !self.seeded {
            return BOTH;
        }
        // the vertex shared with the already-assigned part of the spine
        let (shared, neighbour) = match side {
            Side::Left => (e + 1, e + 1),
            Side::Right => (e, e.wrapping_sub(1)),
        };
        match self.roles[shared] {
            Role::LastJoint => match side {
                Side::Left => FWD,
                Side::Right => BWD,
            },
            Role::Joint if neighbour < self.p && self.labels[neighbour] != 0 => {
                match self.dirs[neighbour] {
                    Direction::Forward => FWD,
                    Direction::Backward => BWD,
                }
            }
            _ => BOTH,
        }
    }

    /// Checks a completed vertex, marking its sum if it is a plain vertex.
    fn accept(&mut self, v: usize) -> bool {
        let s = self.sum(v);
        let p = self.p as i64;
        match self.roles[v] {
            Role::Plain => {
                if s == 0 || s.abs() > p {
                    return false;
                }
                let slot = (s + p) as usize;
                if self.taken[slot] {
                    return false;
                }
                self.taken[slot] = true;
                true
            }
            Role::Joint => (1..=p - 1).contains(&s),
            Role::LastJoint => s >= 3,
        }
    }

    fn release(&mut self, v: usize) {
        if self.roles[v] == Role::Plain {
            let slot = (self.sum(v) + self.p as i64) as usize;
            self.taken[slot] = false;
        }
    }

    fn dfs(&mut self, step: usize) -> Result<bool, SpineError> {
        if step == self.order.len() {
            return Ok(true);
        }
        let (e, side) = self.order[step];
        for label in (1..=self.p as Label).rev() {
            if self.used[label as usize] {
                continue;
            }
            for &dir in self.allowed(e, side) {
                self.nodes += 1;
                if self.nodes > self.budget {
                    return Err(SpineError::BudgetExceeded {
                        budget: self.budget,
                    });
                }
                self.dirs[e] = dir;
                self.labels[e] = label;
                self.used[label as usize] = true;

                let done = std::mem::take(&mut self.completes[step]);
                let mut accepted = 0;
                while accepted < done.len() && self.accept(done[accepted]) {
                    accepted += 1;
                }
                let found = accepted == done.len() && self.dfs(step + 1)?;
                if !found {
                    for &v in done[..accepted].iter().rev() {
                        self.release(v);
                    }
                }
                self.completes[step] = done;
                if found {
                    return Ok(true);
                }
                self.used[label as usize] = false;
                self.labels[e] = 0;
            }
        }
        Ok(false)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Direction::*;

    #[test]
    fn two_edge_spine_is_forced_inward() {
        let plan = label_spine(2, &[1]).unwrap();
        assert_eq!(plan.directions, vec![Forward, Backward]);
        let sums = plan.vertex_sums();
        assert_eq!(sums[1], 3);
        let mut ends = vec![sums[0], sums[2]];
        ends.sort();
        assert_eq!(ends, vec![-2, -1]);
        assert_eq!(verify_spine_plan(&plan, &[1]), Ok(()));
    }

    #[test]
    fn reversing_one_edge_breaks_the_last_joint() {
        let plan = SpinePlan {
            directions: vec![Forward, Backward],
            labels: vec![2, 1],
        };
        assert_eq!(verify_spine_plan(&plan, &[1]), Ok(()));
        let broken = SpinePlan {
            directions: vec![Forward, Forward],
            labels: vec![2, 1],
        };
        // v0 = -2, v1 = 2 - 1 = 1, v2 = 1
        let failures = verify_spine_plan(&broken, &[1]).unwrap_err();
        assert!(failures.contains(&SpineFailure::LastJointBelowThree {
            position: 1,
            sum: 1
        }));
    }

    #[test]
    fn duplicate_labels_reported() {
        let plan = SpinePlan {
            directions: vec![Forward, Backward],
            labels: vec![1, 1],
        };
        let failures = verify_spine_plan(&plan, &[1]).unwrap_err();
        assert!(failures.contains(&SpineFailure::NotBijection { missing: vec![2] }));
    }

    #[test]
    fn plans_pass_their_own_checker() {
        for (p, joints) in [
            (6, vec![2, 5]),
            (3, vec![1, 2]),
            (9, vec![1, 4, 5, 8]),
            (12, vec![6]),
        ] {
            let plan = label_spine(p, &joints).unwrap();
            assert_eq!(
                verify_spine_plan(&plan, &joints),
                Ok(()),
                "p={p} {joints:?}"
            );
        }
    }

    #[test]
    fn three_edges_two_joints() {
        let plan = label_spine(3, &[1, 2]).unwrap();
        let sums = plan.vertex_sums();
        assert!((1..=2).contains(&sums[1]));
        assert!(sums[2] >= 3);
        assert_ne!(sums[0], sums[3]);
        assert!((1..=3).contains(&sums[0].abs()) && (1..=3).contains(&sums[3].abs()));
    }

    #[test]
    fn deterministic() {
        assert_eq!(label_spine(10, &[2, 3, 7]), label_spine(10, &[2, 3, 7]));
    }

    #[test]
    fn rejects_bad_input() {
        assert!(matches!(
            label_spine(1, &[1]),
            Err(SpineError::InvalidInput(_))
        ));
        assert!(matches!(
            label_spine(4, &[]),
            Err(SpineError::InvalidInput(_))
        ));
        assert!(matches!(
            label_spine(4, &[0]),
            Err(SpineError::InvalidInput(_))
        ));
        assert!(matches!(
            label_spine(4, &[2, 2]),
            Err(SpineError::InvalidInput(_))
        ));
    }

    #[test]
    fn tiny_budget_is_reported() {
        assert_eq!(
            label_spine_with_budget(8, &[1, 3, 5, 7], 3),
            Err(SpineError::BudgetExceeded { budget: 3 })
        );
    }
}
