//! Finite preorders, monotone maps and their limits.

mod dot;
pub mod enumerate;
mod limits;
mod map;
mod preorder;

pub use dot::to_dot;
pub use limits::{
    bang, equalizer, mediator, mediator_with_search, product, product_map, projections_reflect_order,
    pullback, terminal, Cone, Equalizer, Limit, Product, Pullback, DEFAULT_MEDIATOR_SEARCH,
};
pub use map::{HomOrdering, MonotoneMap};
pub(crate) use preorder::subset_label;
pub use preorder::{Poset, Preorder};

use crate::error::Result;

/// The reflexive-transitive closure of `pairs` on `labels`.
pub fn make_preorder<L: AsRef<str>>(labels: Vec<String>, pairs: &[(L, L)]) -> Result<Preorder> {
    Preorder::new(labels, pairs)
}

pub fn is_poset(p: &Preorder) -> bool {
    p.is_poset()
}

pub fn quotient(p: &Preorder) -> (Poset, MonotoneMap) {
    p.quotient()
}

pub fn hom_compare(f: &MonotoneMap, g: &MonotoneMap) -> HomOrdering {
    f.hom_compare(g)
}

/// `f` followed by `g`.
pub fn compose(f: &MonotoneMap, g: &MonotoneMap) -> Result<MonotoneMap> {
    f.then(g)
}

pub fn opposite(p: &Preorder) -> Preorder {
    p.opposite()
}

pub fn transitive_reduction(p: &Poset) -> Vec<(usize, usize)> {
    p.covers()
}
