//! The guide (`book/`) compiled as doctests.
//!
//! Every code block in the mdbook chapters is a runnable example; including
//! the chapters here makes `cargo test --doc` compile and run all of them,
//! so the book cannot drift from the API.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/lattices.md")]
pub mod lattices {}

#[doc = include_str!("../../../book/src/cones.md")]
pub mod cones {}

#[doc = include_str!("../../../book/src/rootdata.md")]
pub mod rootdata {}

#[doc = include_str!("../../../book/src/pdiv.md")]
pub mod pdiv {}

#[doc = include_str!("../../../book/src/fans.md")]
pub mod fans {}

#[doc = include_str!("../../../book/src/geometry.md")]
pub mod geometry {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
