//! Compiles and runs every code snippet in the guide (`book/src/*.md`) as
//! doctests, so the narrative cannot drift from the library. mdbook itself
//! does not execute snippets against workspace dependencies; including the
//! chapters as doc comments and letting `cargo test --doc` do the work is
//! the standard workaround.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/matrices.md")]
pub mod matrices {}

#[doc = include_str!("../../../book/src/series.md")]
pub mod series {}

#[doc = include_str!("../../../book/src/functionals.md")]
pub mod functionals {}

#[doc = include_str!("../../../book/src/radii.md")]
pub mod radii {}

#[doc = include_str!("../../../book/src/sharpness.md")]
pub mod sharpness {}

#[doc = include_str!("../../../book/src/several_variables.md")]
pub mod several_variables {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
