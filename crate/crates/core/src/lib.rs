//! Exact computation in the commensurator of Thompson's group `F`.
//!
//! Elements are piecewise-linear homeomorphisms of the real line with dyadic
//! breakpoints and power-of-two slopes that are eventually integrally
//! periodically affine: beyond some bound they satisfy `f(t + p) = f(t) + q`
//! for integers `p`, `q`. This class is closed under composition and
//! inversion and realizes the abstract commensurator of `F` as a group of
//! concrete maps, with `F` itself sitting inside as the eventually
//! integrally affine maps.
//!
//! - [`dyadic`]: exact arithmetic in `Z[1/2]`.
//! - [`plmap`]: the maps, their canonical form, composition and support.
//! - [`thompson`]: membership in `F` and `F'`, abelianization, and the
//!   finite-index subgroups of `Z x Z`.
//! - [`commensurator`]: tail invariants, the growth-rate homomorphism and
//!   the subgroups a commensuration moves between.
//! - [`qi`]: displaced dyadic intervals and disjoint-support witnesses.
//! - [`sampler`]: seeded random elements for tests.
//!
//! ```
//! use comf::{commensurator, Dyadic, PLMap};
//!
//! let c = commensurator::make_commensuration(1, 3, 1, 3, comf::Orientation::Preserving)?;
//! let half: Dyadic = "1/2^1".parse()?;
//! assert_eq!(c.map().evaluate(&half), Dyadic::from(2));
//! assert_eq!(commensurator::phi(&c)?.to_string(), "1/3 1/3");
//! assert!(comf::compose(c.map(), &c.map().invert()).equals(&PLMap::identity()).is_equal());
//! # Ok::<(), Box<dyn std::error::Error>>(())
//! ```

pub mod commensurator;
pub mod dyadic;
pub mod error;
pub mod fixtures;
pub mod plmap;
pub mod qi;
pub mod sampler;
pub mod thompson;

pub use commensurator::{Commensuration, PhiValue};
pub use dyadic::{Dyadic, PosRational};
pub use error::{DyadicParseError, Error, Result};
pub use plmap::compose::{compose, conjugate_by};
pub use plmap::{DyadicInterval, Equality, Orientation, PLMap, Point, TailSpec};
pub use thompson::{AbelianImage, Lattice};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/intro.md")]
    mod intro {}
    #[doc = include_str!("../../../book/src/dyadic.md")]
    mod dyadic {}
    #[doc = include_str!("../../../book/src/maps.md")]
    mod maps {}
    #[doc = include_str!("../../../book/src/thompson.md")]
    mod thompson {}
    #[doc = include_str!("../../../book/src/commensurator.md")]
    mod commensurator {}
    #[doc = include_str!("../../../book/src/intervals.md")]
    mod intervals {}
    #[doc = include_str!("../../../book/src/sampling.md")]
    mod sampling {}
}
