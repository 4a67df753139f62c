//! Compiles the guide's code listings as doctests.

#[doc = include_str!("../../../book/src/intro.md")]
pub mod intro {}
#[doc = include_str!("../../../book/src/terms.md")]
pub mod terms {}
#[doc = include_str!("../../../book/src/finite.md")]
pub mod finite {}
#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}
#[doc = include_str!("../../../book/src/graded.md")]
pub mod graded {}
#[doc = include_str!("../../../book/src/higman.md")]
pub mod higman {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
