//! Antimagic orientations of subdivided caterpillars.
//!
//! [`construct`] builds a labeled orientation whose oriented vertex sums are
//! pairwise distinct, and [`verify_antimagic`] checks any labeling
//! independently. [`oracle`] provides brute-force ground truth for tiny
//! instances and [`sweep`] runs the construction over whole instance families.

pub mod construct;
pub mod export;
pub mod graph;
pub mod legs;
pub mod oracle;
pub mod spine;
pub mod sweep;
pub mod verify;

pub use construct::{
    construct, construct_with, construct_with_plan, ConstructError, ConstructOptions,
    ConstructionTrace, SwapRule,
};
pub use graph::{
    CaterpillarSpec, Direction, EdgeRef, Joint, JointRole, Label, LabeledOrientation, VertexRef,
};
pub use spine::{label_spine, verify_spine_plan, SpinePlan};
pub use verify::{verify_antimagic, Violation};
