//! Instance model for subdivided caterpillars.
//!
//! A caterpillar is a spine path `v_0 .. v_p` with `s` legs, each a path of
//! `k` edges hanging off an internal spine vertex. Vertices and edges have a
//! canonical linear order (spine first, then legs in attachment order) which
//! every other module indexes by.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// An edge label. Complete labelings use exactly the values `1..=m`.
pub type Label = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpecError {
    #[error("field `p`: spine must have at least 2 edges, got {0}")]
    SpineTooShort(usize),
    #[error("field `k`: legs must have at least 1 edge, got {0}")]
    LegTooShort(usize),
    #[error("field `legs[{index}]`: attachment {position} is not an internal spine vertex (expected 1..={max})")]
    AttachmentOutOfRange {
        index: usize,
        position: usize,
        max: usize,
    },
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge {0} is unlabeled")]
    Unlabeled(EdgeRef),
    #[error("vertex {0} does not belong to this instance")]
    NoSuchVertex(VertexRef),
    #[error("labeling covers {got} edges but the instance has {expected}")]
    SizeMismatch { expected: usize, got: usize },
}

#[derive(Serialize, Deserialize)]
struct RawSpec {
    p: usize,
    k: usize,
    legs: Vec<usize>,
}

/// A subdivided caterpillar: spine length `p`, uniform leg length `k`, and
/// the spine positions the legs attach to (sorted, with repetition).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "RawSpec", into = "RawSpec")]
pub struct CaterpillarSpec {
    p: usize,
    k: usize,
    legs: Vec<usize>,
}

impl TryFrom<RawSpec> for CaterpillarSpec {
    type Error = SpecError;

    fn try_from(raw: RawSpec) -> Result<Self, Self::Error> {
        CaterpillarSpec::new(raw.p, raw.k, raw.legs)
    }
}

impl From<CaterpillarSpec> for RawSpec {
    fn from(spec: CaterpillarSpec) -> Self {
        RawSpec {
            p: spec.p,
            k: spec.k,
            legs: spec.legs,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum JointRole {
    /// Exactly one leg (degree 3 in the tree).
    Small,
    /// Two or more legs.
    Big,
}

/// A spine vertex carrying at least one leg.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Joint {
    pub position: usize,
    pub leg_count: usize,
    pub role: JointRole,
}

impl CaterpillarSpec {
    /// Validates and normalizes an instance. Attachments are sorted so that leg
    /// indices follow the spine order.
    pub fn new(p: usize, k: usize, mut legs: Vec<usize>) -> Result<Self, SpecError> {
        if p < 2 {
            return Err(SpecError::SpineTooShort(p));
        }
        if k < 1 {
            return Err(SpecError::LegTooShort(k));
        }
        if let Some((index, &position)) = legs.iter().enumerate().find(|(_, &h)| h < 1 || h > p - 1)
        {
            return Err(SpecError::AttachmentOutOfRange {
                index,
                position,
                max: p - 1,
            });
        }
        legs.sort_unstable();
        Ok(Self { p, k, legs })
    }

    pub fn p(&self) -> usize {
        self.p
    }

    pub fn k(&self) -> usize {
        self.k
    }

    /// Attachment position of every leg, ascending.
    pub fn legs(&self) -> &[usize] {
        &self.legs
    }

    pub fn leg_count(&self) -> usize {
        self.legs.len()
    }

    /// `m = p + k*s`.
    pub fn edge_count(&self) -> usize {
        self.p + self.k * self.legs.len()
    }

    pub fn vertex_count(&self) -> usize {
        self.edge_count() + 1
    }

    /// Distinct attachment positions with their leg multiplicities.
    pub fn joint_profile(&self) -> Vec<Joint> {
        let mut joints: Vec<Joint> = Vec::new();
        for &h in &self.legs {
            match joints.last_mut() {
                Some(j) if j.position == h => j.leg_count += 1,
                _ => joints.push(Joint {
                    position: h,
                    leg_count: 1,
                    role: JointRole::Small,
                }),
            }
        }
        for j in &mut joints {
            if j.leg_count > 1 {
                j.role = JointRole::Big;
            }
        }
        joints
    }

    pub fn joint_positions(&self) -> Vec<usize> {
        self.joint_profile().iter().map(|j| j.position).collect()
    }

    /// Legs attached at spine position `h`, by leg index.
    pub fn legs_at(&self, h: usize) -> impl Iterator<Item = usize> + '_ {
        self.legs
            .iter()
            .enumerate()
            .filter(move |(_, &pos)| pos == h)
            .map(|(i, _)| i)
    }

    pub fn vertex_index(&self, v: VertexRef) -> Result<usize, GraphError> {
        match v {
            VertexRef::Spine { index } if index <= self.p => Ok(index),
            VertexRef::Leg { leg, index }
                if leg < self.legs.len() && (1..=self.k).contains(&index) =>
            {
                Ok(self.p + 1 + leg * self.k + (index - 1))
            }
            _ => Err(GraphError::NoSuchVertex(v)),
        }
    }

    pub fn vertex_at(&self, idx: usize) -> VertexRef {
        if idx <= self.p {
            VertexRef::Spine { index: idx }
        } else {
            let off = idx - self.p - 1;
            VertexRef::Leg {
                leg: off / self.k,
                index: off % self.k + 1,
            }
        }
    }

    /// All vertices in canonical order.
    pub fn vertices(&self) -> impl Iterator<Item = VertexRef> + '_ {
        (0..self.vertex_count()).map(|i| self.vertex_at(i))
    }

    pub fn edge_index(&self, e: EdgeRef) -> Option<usize> {
        match e {
            EdgeRef::Spine { index } if index < self.p => Some(index),
            EdgeRef::Leg { leg, index } if leg < self.legs.len() && index < self.k => {
                Some(self.p + leg * self.k + index)
            }
            _ => None,
        }
    }

    pub fn edge_at(&self, idx: usize) -> EdgeRef {
        if idx < self.p {
            EdgeRef::Spine { index: idx }
        } else {
            let off = idx - self.p;
            EdgeRef::Leg {
                leg: off / self.k,
                index: off % self.k,
            }
        }
    }

    /// All edges in canonical order.
    pub fn edges(&self) -> impl Iterator<Item = EdgeRef> + '_ {
        (0..self.edge_count()).map(|i| self.edge_at(i))
    }

    /// Endpoints of `e` as (lower, higher) along its path. The lower end of
    /// the first leg edge is the joint itself.
    pub fn endpoints(&self, e: EdgeRef) -> (VertexRef, VertexRef) {
        match e {
            EdgeRef::Spine { index } => (
                VertexRef::Spine { index },
                VertexRef::Spine { index: index + 1 },
            ),
            EdgeRef::Leg { leg, index } => {
                let lower = if index == 0 {
                    VertexRef::Spine {
                        index: self.legs[leg],
                    }
                } else {
                    VertexRef::Leg { leg, index }
                };
                (
                    lower,
                    VertexRef::Leg {
                        leg,
                        index: index + 1,
                    },
                )
            }
        }
    }

    /// Edges incident with `v`, in canonical order.
    pub fn incident_edges(&self, v: VertexRef) -> Vec<EdgeRef> {
        match v {
            VertexRef::Spine { index } => {
                let mut out = Vec::new();
                if index > 0 {
                    out.push(EdgeRef::Spine { index: index - 1 });
                }
                if index < self.p {
                    out.push(EdgeRef::Spine { index });
                }
                out.extend(
                    self.legs_at(index)
                        .map(|leg| EdgeRef::Leg { leg, index: 0 }),
                );
                out
            }
            VertexRef::Leg { leg, index } => {
                let mut out = vec![EdgeRef::Leg {
                    leg,
                    index: index - 1,
                }];
                if index < self.k {
                    out.push(EdgeRef::Leg { leg, index });
                }
                out
            }
        }
    }

    /// `(tail, head)` vertex indices of edge `idx` under direction `dir`.
    pub(crate) fn arc(&self, idx: usize, dir: Direction) -> (usize, usize) {
        let (lo, hi) = self.endpoints(self.edge_at(idx));
        let lo = self.vertex_index(lo).expect("endpoint in range");
        let hi = self.vertex_index(hi).expect("endpoint in range");
        match dir {
            Direction::Forward => (lo, hi),
            Direction::Backward => (hi, lo),
        }
    }
}

/// A vertex of the caterpillar. Leg vertex `index` runs over `1..=k`; the
/// leg's zeroth vertex is the spine joint and has no `Leg` form.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum VertexRef {
    Spine { index: usize },
    Leg { leg: usize, index: usize },
}

impl std::fmt::Display for VertexRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            VertexRef::Spine { index } => write!(f, "v{index}"),
            VertexRef::Leg { leg, index } => write!(f, "x{leg}_{index}"),
        }
    }
}

/// An edge: spine edge `index` joins `v_index` and `v_{index+1}`; leg edge
/// `index` joins leg vertices `index` and `index+1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "lowercase")]
pub enum EdgeRef {
    Spine { index: usize },
    Leg { leg: usize, index: usize },
}

impl std::fmt::Display for EdgeRef {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            EdgeRef::Spine { index } => write!(f, "spine[{index}]"),
            EdgeRef::Leg { leg, index } => write!(f, "leg{leg}[{index}]"),
        }
    }
}

/// Orientation of an edge relative to its path: `Forward` points from the
/// lower-index endpoint to the higher one.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Backward,
}

impl Direction {
    pub fn reversed(self) -> Self {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }
}

/// An orientation plus labeling of every edge, indexed by canonical edge
/// order. Labels may be missing while a labeling is being assembled.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledOrientation {
    directions: Vec<Direction>,
    labels: Vec<Option<Label>>,
}

impl LabeledOrientation {
    pub fn new(directions: Vec<Direction>, labels: Vec<Label>) -> Self {
        assert_eq!(directions.len(), labels.len(), "one label per direction");
        Self {
            directions,
            labels: labels.into_iter().map(Some).collect(),
        }
    }

    /// All edges Forward and unlabeled.
    pub fn unlabeled(edge_count: usize) -> Self {
        Self {
            directions: vec![Direction::Forward; edge_count],
            labels: vec![None; edge_count],
        }
    }

    pub fn len(&self) -> usize {
        self.directions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.directions.is_empty()
    }

    pub fn set(&mut self, edge: usize, dir: Direction, label: Label) {
        self.directions[edge] = dir;
        self.labels[edge] = Some(label);
    }

    pub fn direction(&self, edge: usize) -> Direction {
        self.directions[edge]
    }

    pub fn label(&self, edge: usize) -> Option<Label> {
        self.labels[edge]
    }

    pub fn directions(&self) -> &[Direction] {
        &self.directions
    }

    pub fn labels(&self) -> &[Option<Label>] {
        &self.labels
    }

    pub fn is_complete(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    /// The same labeling with every arc reversed; negates all vertex sums.
    pub fn reversed(&self) -> Self {
        Self {
            directions: self.directions.iter().map(|d| d.reversed()).collect(),
            labels: self.labels.clone(),
        }
    }
}

fn check_size(spec: &CaterpillarSpec, lo: &LabeledOrientation) -> Result<(), GraphError> {
    if lo.len() != spec.edge_count() {
        return Err(GraphError::SizeMismatch {
            expected: spec.edge_count(),
            got: lo.len(),
        });
    }
    Ok(())
}

/// Oriented vertex sum: labels entering `v` minus labels leaving it.
pub fn vertex_sum(
    spec: &CaterpillarSpec,
    lo: &LabeledOrientation,
    v: VertexRef,
) -> Result<i64, GraphError> {
    check_size(spec, lo)?;
    let target = spec.vertex_index(v)?;
    let mut sum = 0i64;
    for e in spec.incident_edges(v) {
        let idx = spec.edge_index(e).expect("incident edge in range");
        let label = lo.label(idx).ok_or(GraphError::Unlabeled(e))? as i64;
        let (tail, head) = spec.arc(idx, lo.direction(idx));
        if head == target {
            sum += label;
        } else {
            debug_assert_eq!(tail, target);
            sum -= label;
        }
    }
    Ok(sum)
}

/// Vertex sums for every vertex, in canonical vertex order.
pub fn vertex_sums(
    spec: &CaterpillarSpec,
    lo: &LabeledOrientation,
) -> Result<Vec<i64>, GraphError> {
    check_size(spec, lo)?;
    let mut sums = vec![0i64; spec.vertex_count()];
    for idx in 0..spec.edge_count() {
        let label = lo
            .label(idx)
            .ok_or_else(|| GraphError::Unlabeled(spec.edge_at(idx)))? as i64;
        let (tail, head) = spec.arc(idx, lo.direction(idx));
        sums[head] += label;
        sums[tail] -= label;
    }
    Ok(sums)
}
