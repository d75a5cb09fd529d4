//! Relational ologs.

// Errors carry the offending expressions and signatures; they are cold.
#![allow(clippy::result_large_err)]

pub mod boolmat;
pub mod export;
pub mod finrel;
pub mod linrel;
pub mod logic;
pub mod presentation;
pub mod random;
pub mod rewrite;
pub mod search;
pub mod syntax;
pub mod text;

pub use presentation::{Axiom, Presentation, TypeError};
pub use syntax::{Morphism, Name, Object, Signature};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/ologs.md")]
    mod ologs {}
    #[doc = include_str!("../../../book/src/instances.md")]
    mod instances {}
    #[doc = include_str!("../../../book/src/backends.md")]
    mod backends {}
    #[doc = include_str!("../../../book/src/logic.md")]
    mod logic {}
    #[doc = include_str!("../../../book/src/search.md")]
    mod search {}
    #[doc = include_str!("../../../book/src/export.md")]
    mod export {}
}
