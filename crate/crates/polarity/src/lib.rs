//! Finite preorders, Galois connections between them, and their polar
//! factorizations.
//!
//! Every adjunction between finite posets factors as a reflection onto its
//! axis followed by a coreflection out of it. The axis pairs each closed
//! element of the source with the open element of the target it corresponds
//! to. For the derivation operators of a formal context the axis is the
//! concept lattice.
//!
//! ```
//! use polarity::{Adjunction, MonotoneMap, Preorder};
//! use polarity::polar::polar_factorization;
//!
//! let (c3, c2) = (Preorder::chain(3), Preorder::chain(2));
//! let squash = MonotoneMap::new(c3.clone(), c2.clone(), vec![0, 0, 1])?;
//! let g = polarity::galois::right_adjoint(&squash).expect("squash preserves joins");
//! let pf = polar_factorization(&g)?;
//! assert_eq!(pf.axis.len(), 2);
//! assert_eq!(pf.reflection.then(&pf.coreflection)?, g);
//! # Ok::<(), polarity::Error>(())
//! ```

pub mod cli;
pub mod contexts;
mod error;
pub mod fibration;
pub mod galois;
pub mod order;
pub mod polar;
pub mod report;
pub mod sample;

pub use error::{Error, Result};
pub use galois::{Adjunction, MorphismClass};
pub use order::{MonotoneMap, Poset, Preorder};
pub use polar::{CommutingSquare, Flavor, PolarFactorization};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/preorders.md")]
    mod preorders {}
    #[doc = include_str!("../../../book/src/adjunctions.md")]
    mod adjunctions {}
    #[doc = include_str!("../../../book/src/polar.md")]
    mod polar {}
    #[doc = include_str!("../../../book/src/fibration.md")]
    mod fibration {}
    #[doc = include_str!("../../../book/src/contexts.md")]
    mod contexts {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
