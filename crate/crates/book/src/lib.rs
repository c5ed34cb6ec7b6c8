//! The guide in `book/` compiled as doc comments, so `cargo test` runs every
//! snippet. One module per chapter keeps failures traceable.

#[doc = include_str!("../../../book/src/introduction.md")]
pub mod introduction {}
#[doc = include_str!("../../../book/src/numbers.md")]
pub mod numbers {}
#[doc = include_str!("../../../book/src/coupling.md")]
pub mod coupling {}
#[doc = include_str!("../../../book/src/fock.md")]
pub mod fock {}
#[doc = include_str!("../../../book/src/tensors.md")]
pub mod tensors {}
#[doc = include_str!("../../../book/src/commutators.md")]
pub mod commutators {}
#[doc = include_str!("../../../book/src/lie.md")]
pub mod lie {}
#[doc = include_str!("../../../book/src/cli.md")]
pub mod cli {}
#[doc = include_str!("../../../book/src/reconstruction.md")]
pub mod reconstruction {}
#[doc = include_str!("../../../README.md")]
pub mod readme {}
