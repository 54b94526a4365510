// SPDX-License-Identifier: MIT OR Apache-2.0
//! Exact computations for the quantum exterior algebra of type C.

pub mod actions;
pub mod canonical;
pub mod characters;
pub mod crystal;
pub mod diffalg;
pub mod error;
pub mod exactla;
pub mod extalg;
pub mod howeverify;
pub mod qarith;

pub use error::HoweError;

/// The guide in `book/`, compiled so that its snippets run as doctests.
#[cfg(doctest)]
pub mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    pub mod introduction {}
    #[doc = include_str!("../../../book/src/laurent.md")]
    pub mod laurent {}
    #[doc = include_str!("../../../book/src/exterior.md")]
    pub mod exterior {}
    #[doc = include_str!("../../../book/src/actions.md")]
    pub mod actions {}
    #[doc = include_str!("../../../book/src/canonical.md")]
    pub mod canonical {}
    #[doc = include_str!("../../../book/src/crystals.md")]
    pub mod crystals {}
    #[doc = include_str!("../../../book/src/tilting.md")]
    pub mod tilting {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    pub mod certificates {}
}
