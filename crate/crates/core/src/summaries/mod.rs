//! Saturation-based summaries of DVPA runs.
//!
//! Calls and internal symbols ignore the stack top and a well-matched
//! segment never looks below its starting height, so every relation here is
//! computed between bottom-marker configurations and then holds on top of
//! any frozen stack.

mod coupled;
mod reach;
mod step_graph;
mod wm;

pub use coupled::{
    coupled_relations, CoreDerivation, CoupledRelation, CoupledWitness, FullDerivation, Quad,
};
pub use reach::{reachable, Reachability, Surface};
pub use step_graph::{step_graph, StepEdge, StepGraph};
pub use wm::{wm_summaries, FlaggedPair, FlaggedRelation, WmDerivation};
