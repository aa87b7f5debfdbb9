// mdbook cannot test snippets that depend on a crate, so each chapter is
// pulled in as module docs and `cargo test --doc` runs its code blocks.

#[cfg(doctest)]
#[doc = include_str!("src/introduction.md")]
pub mod introduction {}
#[cfg(doctest)]
#[doc = include_str!("src/fields.md")]
pub mod fields {}
#[cfg(doctest)]
#[doc = include_str!("src/hamming.md")]
pub mod hamming {}
#[cfg(doctest)]
#[doc = include_str!("src/components.md")]
pub mod components {}
#[cfg(doctest)]
#[doc = include_str!("src/constructions.md")]
pub mod constructions {}
#[cfg(doctest)]
#[doc = include_str!("src/switching.md")]
pub mod switching {}
#[cfg(doctest)]
#[doc = include_str!("src/verification.md")]
pub mod verification {}
#[cfg(doctest)]
#[doc = include_str!("src/cli.md")]
pub mod cli {}
