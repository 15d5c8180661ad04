//! Compact subsets of `[0, 1]` as finite unions of closed intervals, the
//! per-level covers used to cut them out, and depth bookkeeping for
//! families of such sets.

mod cover;
mod depth;
mod set;

pub use cover::{make_cover, remove_intervals, validate_delta, CoverSpec};
pub use depth::{deep_witness, depth_profile, elementary_cells, Cell, DeepWitness, DepthCell};
pub use set::{intersect_many, Interval, IntervalSet};
