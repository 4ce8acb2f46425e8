//! Cuts of a space and the complex they span.

mod complex;
mod cut;
mod paths;

pub use complex::{
    enumerate_cuts, frame_for, mask_nonperipheral, masks_cross, nonperipheral_masks, normalize,
    opposite_graph, CutGraph, Mode, SubGraph, MAX_ENUM_CLASSES,
};
pub use cut::{point_cut, Cut};
pub use paths::{
    diameter_two_sweep, join_split, path_is_valid, short_path, verify_link_join, DiameterTwoReport,
    LinkJoinReport,
};
