//! Structure inference: grouping heuristics and navigation ordering.

mod distance;
mod grouping;
mod xycut;

pub use distance::{insertion_distance, longest_increasing_subsequence_len, OrderError};
pub use grouping::{
    build_tree, group_containers, group_picture_subtitles, group_tabs, group_text, ContainerPlan,
};
pub(crate) use grouping::finalize_node;
pub use xycut::{order_nodes, reading_order, CUT_EPSILON};
