//! Open subsets of `[0,1]` with rational endpoints and the step functions built from them.

mod interval;
mod openset;
mod reduce;
mod stepfn;

pub use interval::{Bounds, Interval};
pub use openset::OpenSet;
pub use reduce::{basic_reduce, is_increasing_basic};
pub use stepfn::StepFn;

pub fn openset_union(u: &OpenSet, v: &OpenSet) -> OpenSet {
    u.union(v)
}

pub fn openset_intersect(u: &OpenSet, v: &OpenSet) -> OpenSet {
    u.intersect(v)
}

pub fn compactly_contained(u: &OpenSet, v: &OpenSet) -> bool {
    u.compactly_contained(v)
}
