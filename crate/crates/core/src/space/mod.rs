//! Second-countable Stone spaces as closed subsets of Cantor space.
//!
//! A space is a [`SpaceSpec`] with an exact point-count oracle on
//! cylinders. Clopen subsets are kept in canonical antichain form
//! relative to the space, so set equality is structural equality.

mod clopen;
mod frame;
mod prefix_map;
mod spec;
mod word;

pub use clopen::ClopenSet;
pub use frame::{points_at_depth, Frame, Mask, MAX_CLASSES};
pub use prefix_map::{PrefixMap, ValidatedPrefixMap};
pub use spec::{CountClass, SpaceSpec, MAX_FINITE_POINTS};
pub use word::{w, Word, MAX_WORD_LEN};

use std::sync::Arc;

/// Count of `[s] ∩ E`.
pub fn count_cylinder(spec: &SpaceSpec, s: Word) -> CountClass {
    spec.count(s)
}

/// Canonical clopen set spanned by `raw`.
pub fn canonicalize(spec: &Arc<SpaceSpec>, raw: &[Word]) -> ClopenSet {
    ClopenSet::canonicalize(spec, raw)
}
