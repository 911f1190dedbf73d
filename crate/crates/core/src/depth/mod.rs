//! Depth of points under a self-map, and how depth behaves under the additive
//! extension of an index map to a homogeneous group.

mod extension;
mod graph;

pub use extension::{
    action_graph, check_commuting_depths, check_extension_depths, check_extension_depths_with_budget,
    extend_to_direct_sum, CommutingDepthReport, ExtensionDepthReport, Violation, DEFAULT_EXTENSION_BUDGET,
};
pub use graph::{depth, depths, Depth, FunctionGraph};
