//! Exact combinatorics and Kähler-geometric criteria for horosymmetric
//! varieties.

pub mod cli;
pub mod config;
pub mod criteria;
pub mod dhintegrate;
pub mod error;
pub mod fixtures;
pub mod lattice;
pub mod linalg;
pub mod linebundle;
pub mod mabuchi_numeric;
pub mod polytope;
pub mod rational;
pub mod restricted;
pub mod rootdata;

pub use error::{HoroError, Result};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/root-data.md")]
    mod root_data {}
    #[doc = include_str!("../../../book/src/polytopes.md")]
    mod polytopes {}
    #[doc = include_str!("../../../book/src/integration.md")]
    mod integration {}
    #[doc = include_str!("../../../book/src/criteria.md")]
    mod criteria {}
    #[doc = include_str!("../../../book/src/numerics.md")]
    mod numerics {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
