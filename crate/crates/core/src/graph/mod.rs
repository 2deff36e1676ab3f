//! Target graphs, colored boards and the structural queries the engine and
//! solver rely on.

mod board;
mod canon;
mod copy;
mod edge;
mod target;

pub use board::{Color, ColoredBoard};
pub use canon::{canonical_code, canonical_form, CANON_MAX_ORDER};
pub use copy::{contains_copy, Embedding};
pub use edge::{edge_count, edge_endpoints, edge_index, Edge, MAX_BOARD_ORDER};
pub use target::{DfsOrder, GraphKind, TargetGraph};

/// Iterates the set bit positions of `mask`, lowest first.
pub fn bits(mut mask: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if mask == 0 {
            None
        } else {
            let i = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            Some(i)
        }
    })
}
