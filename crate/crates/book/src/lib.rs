//! The guide in `book/src`, compiled so that its listings run as doctests.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/polytopes.md")]
pub mod polytopes {}
#[doc = include_str!("../../../book/src/root-systems.md")]
pub mod root_systems {}
#[doc = include_str!("../../../book/src/weyl-polytopes.md")]
pub mod weyl_polytopes {}
#[doc = include_str!("../../../book/src/surface-measures.md")]
pub mod surface_measures {}
#[doc = include_str!("../../../book/src/transport.md")]
pub mod transport {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
