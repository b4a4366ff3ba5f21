//! Antimagic orientations of subdivided caterpillars.
//!
//! The spine is labeled with `1..=p` by [`label_spine`]. Legs take the labels
//! `p+1..=m`: each leg gets an anchor in `m-s+1..=m` and the arithmetic
//! progression below it with step `s`, so the legs' label sets partition the
//! upper range. The pipeline is:
//!
//! 1. label the spine;
//! 2. anchor the legs so that joint sums come out strictly decreasing in a
//!    fixed order of the joints ([`assign_joint_edges`]);
//! 3. pick a labeling pattern per leg ([`dispatch_patterns`]);
//! 4. if the last joint is small and its spine sum falls in the window
//!    `p+1 ..= m-s-1`, possibly exchange the label sets of two legs so the last
//!    joint's sum has the opposite parity to every positive internal leg sum
//!    ([`apply_parity_swap`]).
//!
//! Single-leg instances use a separate direct labeling
//! ([`construct_single_leg`]).

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{CaterpillarSpec, JointRole, Label, LabeledOrientation};
use crate::legs::{orient_leg, pattern_labels, DispatchRule, LegAssignment, PatternKind};
use crate::spine::{
    label_spine_with_budget, verify_spine_plan, SpineError, SpinePlan, DEFAULT_NODE_BUDGET,
};
use crate::verify::{verify_antimagic, Violation};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("unsupported shape: {0}")]
    UnsupportedShape(String),
    #[error(transparent)]
    Spine(#[from] SpineError),
    #[error("spine plan rejected: {0}")]
    InvalidPlan(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("constructed labeling is not antimagic: {0}")]
    NotAntimagic(Violation),
}

/// Which value the last-joint parity test is evaluated on.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SwapRule {
    /// The last joint's actual sum before any swap: spine sum plus the label
    /// its leg pattern puts on the joint edge.
    #[default]
    JointSum,
    /// Spine sum plus the leg's anchor. Agrees with `JointSum` except for
    /// pattern-II legs with `k = 0 mod 4`, where it picks the wrong parity.
    AnchorSum,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ConstructOptions {
    pub node_budget: u64,
    pub swap_rule: SwapRule,
}

impl Default for ConstructOptions {
    fn default() -> Self {
        Self {
            node_budget: DEFAULT_NODE_BUDGET,
            swap_rule: SwapRule::default(),
        }
    }
}

/// Coarse classification of a run, keyed on how the last joint was handled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// One leg; spine sum at its joint is at least `m - 2`.
    SingleLegHigh,
    /// One leg; the first two leg labels are ordered by parity.
    SingleLegParity,
    LastJointBig,
    LastJointLow,
    LastJointHigh,
    WindowRanked,
    WindowFirst,
}

impl Branch {
    pub fn as_str(self) -> &'static str {
        match self {
            Branch::SingleLegHigh => "single-leg-high",
            Branch::SingleLegParity => "single-leg-parity",
            Branch::LastJointBig => "last-joint-big",
            Branch::LastJointLow => "last-joint-low",
            Branch::LastJointHigh => "last-joint-high",
            Branch::WindowRanked => "window-ranked",
            Branch::WindowFirst => "window-first",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Anchors of the joint edges, and the order of the joints by sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct JointEdgeAssignment {
    /// Joint positions, ascending.
    pub joints: Vec<usize>,
    /// For each joint, the leg whose joint edge is in the matching.
    pub matching: Vec<usize>,
    /// Labels of joint edges outside the matching, by leg.
    pub extra_leg_labels: Vec<(usize, Label)>,
    /// Joint sums over spine arcs and the unmatched joint edges.
    pub partial_sums: Vec<i64>,
    /// Joint positions by decreasing partial sum, ties by position.
    pub sorted_joints: Vec<usize>,
    /// Pairs of adjacent sorted joints whose partial sums tied.
    pub ties: Vec<(usize, usize)>,
    /// Joint sums once matched edges are labeled, in sorted order.
    pub sorted_sums: Vec<i64>,
    /// Label of each leg's joint edge, by leg.
    pub anchors: Vec<Label>,
}

impl JointEdgeAssignment {
    /// 1-based rank of the joint at `position` in sorted order.
    pub fn rank_of(&self, position: usize) -> usize {
        1 + self
            .sorted_joints
            .iter()
            .position(|&h| h == position)
            .expect("position is a joint")
    }
}

/// Outcome of the last-joint parity test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SwapCheck {
    pub rule: SwapRule,
    /// The last joint's spine sum.
    pub spine_sum: i64,
    /// Spine sum plus the anchor of the joint's leg.
    pub anchor_sum: i64,
    /// Spine sum plus the label the leg's pattern puts on the joint edge.
    pub joint_sum: i64,
    /// Sum the three conditions were evaluated on.
    pub tested_sum: i64,
    pub cond_a: bool,
    pub cond_b: bool,
    pub cond_c: bool,
    pub applied: bool,
    /// Leg at the last joint.
    pub last_leg: usize,
    /// Leg whose label set would be exchanged with `last_leg`.
    pub partner: usize,
}

impl SwapCheck {
    pub fn any_condition(&self) -> bool {
        self.cond_a || self.cond_b || self.cond_c
    }
}

/// Everything the construction decided along the way.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionTrace {
    pub spine: SpinePlan,
    pub branch: Branch,
    /// Absent for single-leg instances.
    pub joint_edges: Option<JointEdgeAssignment>,
    /// 1-based rank of the last joint in sorted order.
    pub last_rank: Option<usize>,
    /// The leg at the last joint, when that joint is small.
    pub last_leg: Option<usize>,
    /// Final pattern and anchor per leg; empty for single-leg instances.
    pub assignments: Vec<LegAssignment>,
    /// Present when the last joint is small and its spine sum is in the window.
    pub swap: Option<SwapCheck>,
}

impl ConstructionTrace {
    pub fn swap_applied(&self) -> bool {
        self.swap.is_some_and(|s| s.applied)
    }
}

fn spine_plan(spec: &CaterpillarSpec, budget: u64) -> Result<SpinePlan, ConstructError> {
    Ok(label_spine_with_budget(
        spec.p(),
        &spec.joint_positions(),
        budget,
    )?)
}

fn check_shape(spec: &CaterpillarSpec) -> Result<(), ConstructError> {
    if spec.leg_count() == 0 {
        return Err(ConstructError::UnsupportedShape(
            "instance has no legs (s = 0)".into(),
        ));
    }
    if spec.k() < 2 {
        return Err(ConstructError::UnsupportedShape(format!(
            "leg length k = {} is below 2",
            spec.k()
        )));
    }
    Ok(())
}

pub fn construct(
    spec: &CaterpillarSpec,
) -> Result<(LabeledOrientation, ConstructionTrace), ConstructError> {
    construct_with(spec, &ConstructOptions::default())
}

/// Builds an antimagic labeled orientation and checks it before returning.
pub fn construct_with(
    spec: &CaterpillarSpec,
    opts: &ConstructOptions,
) -> Result<(LabeledOrientation, ConstructionTrace), ConstructError> {
    check_shape(spec)?;
    let plan = spine_plan(spec, opts.node_budget)?;
    construct_with_plan(spec, plan, opts.swap_rule)
}

/// Runs the pipeline on a caller-supplied spine plan, which must satisfy the
/// spine plan properties for this instance's joints.
pub fn construct_with_plan(
    spec: &CaterpillarSpec,
    plan: SpinePlan,
    swap_rule: SwapRule,
) -> Result<(LabeledOrientation, ConstructionTrace), ConstructError> {
    check_shape(spec)?;
    if plan.p() != spec.p() {
        return Err(ConstructError::InvalidPlan(format!(
            "plan covers {} spine edges, instance has {}",
            plan.p(),
            spec.p()
        )));
    }
    if let Err(failures) = verify_spine_plan(&plan, &spec.joint_positions()) {
        return Err(ConstructError::InvalidPlan(format!("{failures:?}")));
    }
    let (lo, trace) = if spec.leg_count() == 1 {
        single_leg(spec, plan)
    } else {
        multi_leg(spec, plan, swap_rule)?
    };
    verify_antimagic(spec, &lo).map_err(ConstructError::NotAntimagic)?;
    Ok((lo, trace))
}

fn write_spine(lo: &mut LabeledOrientation, plan: &SpinePlan) {
    for (i, (&dir, &label)) in plan.directions.iter().zip(&plan.labels).enumerate() {
        lo.set(i, dir, label);
    }
}

/// Direct labeling for one leg: labels `m, m-1, ..., p+1` down the leg, with
/// the first two swapped when needed to make the joint sum even.
pub fn construct_single_leg(
    spec: &CaterpillarSpec,
    node_budget: u64,
) -> Result<(LabeledOrientation, ConstructionTrace), ConstructError> {
    check_shape(spec)?;
    if spec.leg_count() != 1 {
        return Err(ConstructError::UnsupportedShape(format!(
            "expected a single leg, got {}",
            spec.leg_count()
        )));
    }
    let plan = spine_plan(spec, node_budget)?;
    construct_with_plan(spec, plan, SwapRule::default())
}

fn single_leg(spec: &CaterpillarSpec, plan: SpinePlan) -> (LabeledOrientation, ConstructionTrace) {
    let (p, k, m) = (spec.p(), spec.k(), spec.edge_count());
    let sigma = plan.vertex_sums()[spec.legs()[0]];
    let mut labels: Vec<Label> = (0..k).map(|j| (m - j) as Label).collect();
    let branch = if sigma >= m as i64 - 2 {
        Branch::SingleLegHigh
    } else {
        if (m as i64 + sigma) % 2 != 0 {
            labels.swap(0, 1);
        }
        Branch::SingleLegParity
    };
    let mut lo = LabeledOrientation::unlabeled(m);
    write_spine(&mut lo, &plan);
    for (j, dir) in orient_leg(k).expect("k >= 2").into_iter().enumerate() {
        lo.set(p + j, dir, labels[j]);
    }
    let trace = ConstructionTrace {
        spine: plan,
        branch,
        joint_edges: None,
        last_rank: Some(1),
        last_leg: Some(0),
        assignments: Vec::new(),
        swap: None,
    };
    (lo, trace)
}

/// Labels every joint edge with a value in `m-s+1..=m`.
///
/// Each joint keeps its lowest-index leg in the matching. Unmatched joint
/// edges take the top `s - t` labels in leg order; matched edges then take the
/// next `t` labels, largest first, in order of decreasing partial joint sum.
pub fn assign_joint_edges(
    spec: &CaterpillarSpec,
    plan: &SpinePlan,
) -> Result<JointEdgeAssignment, ConstructError> {
    let joints = spec.joint_profile();
    let positions: Vec<usize> = joints.iter().map(|j| j.position).collect();
    let (s, t, m) = (spec.leg_count(), joints.len(), spec.edge_count());
    let spine_sums = plan.vertex_sums();

    let matching: Vec<usize> = positions
        .iter()
        .map(|&h| spec.legs_at(h).next().expect("joint has a leg"))
        .collect();
    let mut anchors: Vec<Label> = vec![0; s];
    let mut extra_leg_labels = Vec::with_capacity(s - t);
    let mut next = (m - (s - t) + 1) as Label;
    for (leg, anchor) in anchors.iter_mut().enumerate() {
        if !matching.contains(&leg) {
            *anchor = next;
            extra_leg_labels.push((leg, next));
            next += 1;
        }
    }

    // every joint edge enters its joint
    let partial_sums: Vec<i64> = positions
        .iter()
        .map(|&h| {
            spine_sums[h]
                + spec
                    .legs_at(h)
                    .filter(|leg| !matching.contains(leg))
                    .map(|leg| anchors[leg] as i64)
                    .sum::<i64>()
        })
        .collect();

    let mut order: Vec<usize> = (0..t).collect();
    order.sort_by_key(|&j| (std::cmp::Reverse(partial_sums[j]), positions[j]));
    let ties = order
        .windows(2)
        .filter(|w| partial_sums[w[0]] == partial_sums[w[1]])
        .map(|w| (positions[w[0]], positions[w[1]]))
        .collect();

    let mut sorted_sums = Vec::with_capacity(t);
    for (rank0, &j) in order.iter().enumerate() {
        let label = (m - (s - t) - rank0) as Label;
        anchors[matching[j]] = label;
        sorted_sums.push(partial_sums[j] + label as i64);
    }
    if !sorted_sums.windows(2).all(|w| w[0] > w[1]) {
        return Err(ConstructError::Internal(format!(
            "joint sums {sorted_sums:?} are not strictly decreasing"
        )));
    }

    Ok(JointEdgeAssignment {
        joints: positions.clone(),
        matching,
        extra_leg_labels,
        partial_sums,
        sorted_joints: order.iter().map(|&j| positions[j]).collect(),
        ties,
        sorted_sums,
        anchors,
    })
}

/// Chooses a pattern for every leg.
///
/// Legs at big joints use pattern I and small legs elsewhere the small pattern
/// for the parity of `k`. The small leg at the last joint depends on that
/// joint's spine sum `σ`: pattern I if `σ >= m - s`, the small pattern if
/// `σ <= p`, and in between pattern I unless the joint ranks first.
pub fn dispatch_patterns(
    spec: &CaterpillarSpec,
    plan: &SpinePlan,
    joint_edges: &JointEdgeAssignment,
) -> Result<Vec<LegAssignment>, ConstructError> {
    let (p, k, s, m) = (
        spec.p() as i64,
        spec.k(),
        spec.leg_count() as i64,
        spec.edge_count() as i64,
    );
    let profile = spec.joint_profile();
    let last = profile.last().expect("at least one joint");
    let sigma = plan.vertex_sums()[last.position];
    let small = PatternKind::small_for(k);
    let has_big = profile.iter().any(|j| j.role == JointRole::Big);

    spec.legs()
        .iter()
        .enumerate()
        .map(|(leg, &h)| {
            let joint = profile.iter().find(|j| j.position == h).expect("leg joint");
            let (kind, rule) = if joint.role == JointRole::Big {
                (PatternKind::Big, DispatchRule::BigJoint)
            } else if h != last.position {
                (small, DispatchRule::SmallJoint)
            } else if sigma >= m - s {
                (PatternKind::Big, DispatchRule::LastJointHigh)
            } else if sigma <= p {
                (small, DispatchRule::LastJointLow)
            } else if joint_edges.rank_of(h) >= 2 {
                if !has_big {
                    return Err(ConstructError::Internal(
                        "last joint ranks below another joint but there are no big legs".into(),
                    ));
                }
                (PatternKind::Big, DispatchRule::LastJointWindowRanked)
            } else {
                (small, DispatchRule::LastJointWindowFirst)
            };
            Ok(LegAssignment {
                leg,
                kind,
                anchor: joint_edges.anchors[leg],
                role: kind.role(),
                rule,
            })
        })
        .collect()
}

/// Parity the last joint's sum must avoid: that of every positive internal leg sum.
fn positive_internal_parity(s: usize, k: usize) -> i64 {
    match (s % 2, k % 2) {
        (0, _) => 0,
        (_, 0) => ((k / 2 - 1) % 2) as i64,
        _ => (((k - 1) / 2) % 2) as i64,
    }
}

/// Exchanges the label sets of the last joint's leg and a neighbouring leg in
/// sorted order when the last joint's sum would share a parity with the
/// positive internal leg sums. Returns the final assignments and, when the
/// window applies, the test that was performed.
pub fn apply_parity_swap(
    spec: &CaterpillarSpec,
    plan: &SpinePlan,
    joint_edges: &JointEdgeAssignment,
    mut assignments: Vec<LegAssignment>,
    rule: SwapRule,
) -> Result<(Vec<LegAssignment>, Option<SwapCheck>), ConstructError> {
    let (p, k, s, m) = (spec.p(), spec.k(), spec.leg_count(), spec.edge_count());
    let profile = spec.joint_profile();
    let last = profile.last().expect("at least one joint");
    let sigma = plan.vertex_sums()[last.position];
    if last.role == JointRole::Big || sigma <= p as i64 || sigma >= (m - s) as i64 {
        return Ok((assignments, None));
    }

    let q = spec
        .legs_at(last.position)
        .next()
        .expect("leg at last joint");
    let ell = joint_edges.rank_of(last.position);
    let t = profile.len();
    let partner_rank = if ell >= 2 {
        ell - 1
    } else if t >= 2 {
        2
    } else {
        return Err(ConstructError::Internal(
            "last joint ranks first but there is no second joint".into(),
        ));
    };
    let partner_joint = joint_edges.sorted_joints[partner_rank - 1];
    let partner = joint_edges.matching[joint_edges
        .joints
        .iter()
        .position(|&h| h == partner_joint)
        .expect("sorted joint")];
    if assignments[q].kind != assignments[partner].kind {
        return Err(ConstructError::Internal(format!(
            "swap partners use different patterns ({} vs {})",
            assignments[q].kind, assignments[partner].kind
        )));
    }

    let a_q = assignments[q].anchor as i64;
    let anchor_sum = sigma + a_q;
    let first = pattern_labels(assignments[q].kind, a_q, s as i64, k).expect("checked pattern")[0];
    let joint_sum = sigma + first;
    let tested_sum = match rule {
        SwapRule::JointSum => joint_sum,
        SwapRule::AnchorSum => anchor_sum,
    };
    let odd = tested_sum.rem_euclid(2);
    let cond_a = s % 2 == 0 && odd == 1;
    let cond_b = s % 2 == 1 && k % 2 == 0 && odd != ((k / 2 - 1) % 2) as i64;
    let cond_c = s % 2 == 1 && k % 2 == 1 && odd != (((k - 1) / 2) % 2) as i64;
    debug_assert_eq!(
        cond_a || cond_b || cond_c,
        odd != positive_internal_parity(s, k)
    );
    let applied = !(cond_a || cond_b || cond_c);
    if applied {
        let (hi, lo) = if assignments[q].anchor > assignments[partner].anchor {
            (q, partner)
        } else {
            (partner, q)
        };
        if assignments[hi].anchor != assignments[lo].anchor + 1 {
            return Err(ConstructError::Internal(format!(
                "swap partners have anchors {} and {}, expected consecutive values",
                assignments[hi].anchor, assignments[lo].anchor
            )));
        }
        let tmp = assignments[hi].anchor;
        assignments[hi].anchor = assignments[lo].anchor;
        assignments[lo].anchor = tmp;
    }
    let check = SwapCheck {
        rule,
        spine_sum: sigma,
        anchor_sum,
        joint_sum,
        tested_sum,
        cond_a,
        cond_b,
        cond_c,
        applied,
        last_leg: q,
        partner,
    };
    Ok((assignments, Some(check)))
}

fn multi_leg(
    spec: &CaterpillarSpec,
    plan: SpinePlan,
    swap_rule: SwapRule,
) -> Result<(LabeledOrientation, ConstructionTrace), ConstructError> {
    let (p, k, s, m) = (spec.p(), spec.k(), spec.leg_count(), spec.edge_count());
    let joint_edges = assign_joint_edges(spec, &plan)?;
    let dispatched = dispatch_patterns(spec, &plan, &joint_edges)?;
    let (assignments, swap) = apply_parity_swap(spec, &plan, &joint_edges, dispatched, swap_rule)?;

    let mut lo = LabeledOrientation::unlabeled(m);
    write_spine(&mut lo, &plan);
    let dirs = orient_leg(k).expect("k >= 2");
    for a in &assignments {
        let labels = pattern_labels(a.kind, a.anchor as i64, s as i64, k).expect("checked pattern");
        for (j, (&dir, &label)) in dirs.iter().zip(&labels).enumerate() {
            if label <= p as i64 || label > m as i64 {
                return Err(ConstructError::Internal(format!(
                    "leg {} label {label} outside {}..={m}",
                    a.leg,
                    p + 1
                )));
            }
            lo.set(p + a.leg * k + j, dir, label as Label);
        }
    }

    let profile = spec.joint_profile();
    let last = profile.last().expect("at least one joint");
    let last_leg =
        (last.role == JointRole::Small).then(|| spec.legs_at(last.position).next().expect("leg"));
    let branch = match (
        last.role,
        assignments
            .iter()
            .find(|a| Some(a.leg) == last_leg)
            .map(|a| a.rule),
    ) {
        (JointRole::Big, _) => Branch::LastJointBig,
        (_, Some(DispatchRule::LastJointHigh)) => Branch::LastJointHigh,
        (_, Some(DispatchRule::LastJointLow)) => Branch::LastJointLow,
        (_, Some(DispatchRule::LastJointWindowRanked)) => Branch::WindowRanked,
        (_, Some(DispatchRule::LastJointWindowFirst)) => Branch::WindowFirst,
        (_, other) => {
            return Err(ConstructError::Internal(format!(
                "small last joint dispatched by {other:?}"
            )))
        }
    };
    let trace = ConstructionTrace {
        spine: plan,
        branch,
        last_rank: Some(joint_edges.rank_of(last.position)),
        joint_edges: Some(joint_edges),
        last_leg,
        assignments,
        swap,
    };
    Ok((lo, trace))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{vertex_sums, Direction};

    fn spec(p: usize, k: usize, legs: &[usize]) -> CaterpillarSpec {
        CaterpillarSpec::new(p, k, legs.to_vec()).unwrap()
    }

    #[test]
    fn figure_one_instance() {
        let sp = spec(6, 3, &[2, 2, 5]);
        let (lo, trace) = construct(&sp).unwrap();
        assert_eq!(verify_antimagic(&sp, &lo), Ok(()));
        let je = trace.joint_edges.as_ref().unwrap();
        assert_eq!(je.joints, vec![2, 5]);
        assert_eq!(je.matching, vec![0, 2]);
        assert_eq!(je.extra_leg_labels, vec![(1, 15)]);
        let mut matched: Vec<Label> = je.matching.iter().map(|&l| je.anchors[l]).collect();
        matched.sort();
        assert_eq!(matched, vec![13, 14]);
    }

    #[test]
    fn rejects_unsupported_shapes() {
        assert!(matches!(
            construct(&spec(5, 1, &[2])),
            Err(ConstructError::UnsupportedShape(_))
        ));
        assert!(matches!(
            construct(&spec(5, 3, &[])),
            Err(ConstructError::UnsupportedShape(_))
        ));
    }

    #[test]
    fn two_small_joints() {
        let sp = spec(4, 2, &[1, 3]);
        let (lo, trace) = construct(&sp).unwrap();
        assert_eq!(verify_antimagic(&sp, &lo), Ok(()));
        let je = trace.joint_edges.unwrap();
        assert_eq!(je.joints.len(), 2);
        assert_eq!(je.matching, vec![0, 1]);
        assert!(je.extra_leg_labels.is_empty());
    }

    #[test]
    fn all_small_joints_use_top_labels_for_matching() {
        let sp = spec(7, 3, &[1, 3, 6]);
        let plan = label_spine_with_budget(7, &[1, 3, 6], DEFAULT_NODE_BUDGET).unwrap();
        let je = assign_joint_edges(&sp, &plan).unwrap();
        let mut anchors = je.anchors.clone();
        anchors.sort();
        let m = sp.edge_count() as Label;
        assert_eq!(anchors, vec![m - 2, m - 1, m]);
        assert!(je.sorted_sums.windows(2).all(|w| w[0] > w[1]));
    }

    #[test]
    fn single_leg_smallest_case() {
        let sp = spec(2, 2, &[1]);
        let (lo, trace) = construct(&sp).unwrap();
        assert_eq!(trace.branch, Branch::SingleLegHigh);
        assert_eq!(lo.label(2), Some(4));
        assert_eq!(lo.label(3), Some(3));
        let sums = vertex_sums(&sp, &lo).unwrap();
        // v1 gets spine 3 plus the entering 4
        assert_eq!(sums[1], 7);
        assert_eq!(sums[3], -7);
    }

    #[test]
    fn single_leg_parity_branch_makes_joint_even() {
        let mut hit = 0;
        for p in 2..=9 {
            for h in 1..p {
                for k in 2..=5 {
                    let sp = spec(p, k, &[h]);
                    let (lo, trace) = construct(&sp).unwrap();
                    let leg_labels: Vec<Label> =
                        (p..sp.edge_count()).map(|e| lo.label(e).unwrap()).collect();
                    let mut sorted = leg_labels.clone();
                    sorted.sort();
                    assert_eq!(
                        sorted,
                        ((p + 1) as Label..=sp.edge_count() as Label).collect::<Vec<_>>()
                    );
                    if trace.branch == Branch::SingleLegParity {
                        hit += 1;
                        assert_eq!(vertex_sums(&sp, &lo).unwrap()[h] % 2, 0);
                    }
                }
            }
        }
        assert!(hit > 0);
    }

    #[test]
    fn big_last_joint_leaves_labels_alone() {
        let sp = spec(5, 3, &[1, 4, 4]);
        let (_, trace) = construct(&sp).unwrap();
        assert_eq!(trace.branch, Branch::LastJointBig);
        assert!(trace.swap.is_none());
    }

    #[test]
    fn dispatch_kinds_follow_joint_roles() {
        for (k, small) in [(4, PatternKind::SmallEven), (5, PatternKind::SmallOdd)] {
            let sp = spec(8, k, &[2, 2, 4, 7]);
            let (_, trace) = construct(&sp).unwrap();
            assert_eq!(trace.assignments[0].kind, PatternKind::Big);
            assert_eq!(trace.assignments[1].kind, PatternKind::Big);
            assert_eq!(trace.assignments[2].kind, small);
            assert_eq!(trace.assignments[2].rule, DispatchRule::SmallJoint);
        }
    }

    #[test]
    fn high_spine_sum_at_small_last_joint_uses_pattern_one() {
        let sp = spec(6, 2, &[1, 5]);
        use Direction::*;
        let plan = SpinePlan {
            directions: vec![Forward, Forward, Forward, Forward, Forward, Backward],
            labels: vec![4, 1, 3, 2, 5, 6],
        };
        assert_eq!(verify_spine_plan(&plan, &[1, 5]), Ok(()));
        // sigma(v5) = 11 >= m - s = 8
        let je = assign_joint_edges(&sp, &plan).unwrap();
        let a = dispatch_patterns(&sp, &plan, &je).unwrap();
        assert_eq!(a[1].kind, PatternKind::Big);
        assert_eq!(a[1].rule, DispatchRule::LastJointHigh);
    }
}
