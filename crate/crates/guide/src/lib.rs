//! The book chapters under `book/src`, compiled as doc modules so every
//! code block in them runs as a doctest.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}

#[doc = include_str!("../../../book/src/plane-graphs.md")]
pub mod plane_graphs {}

#[doc = include_str!("../../../book/src/degeneracy.md")]
pub mod degeneracy {}

#[doc = include_str!("../../../book/src/two-six.md")]
pub mod two_six {}

#[doc = include_str!("../../../book/src/three-two.md")]
pub mod three_two {}

#[doc = include_str!("../../../book/src/four-one.md")]
pub mod four_one {}

#[doc = include_str!("../../../book/src/oracle.md")]
pub mod oracle {}

#[doc = include_str!("../../../book/src/generators.md")]
pub mod generators {}

#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
