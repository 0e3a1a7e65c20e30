//! Verification engine for filter quotients of finite model categories.
//!
//! A finite category is given by an explicit composition table
//! ([`category::FinCat`]). On top of it the crate provides finite limits and
//! colimits with re-checkable witnesses ([`universal`]), model structures with
//! exhaustive axiom checks ([`model`]), filters of discrete homotopically
//! subterminal objects ([`filter`]), filter quotient categories with their
//! induced model structures ([`quotient`]), and filter products and
//! transferred Quillen adjunctions ([`transfer`]). The [`io`] and
//! [`pipeline`] modules implement the `.fcat` file format and the command
//! pipeline used by the `fqcat` binary.

pub mod category;
pub mod corpus;
pub mod error;
pub mod filter;
pub mod functor;
pub mod io;
pub mod iso;
pub mod model;
pub mod pipeline;
pub mod quotient;
pub mod transfer;
pub mod universal;

pub use category::{CategoryBuilder, FinCat, Mor, Obj};
pub use error::{Error, Inconclusive, Result};
pub use functor::FunctorData;
pub use model::ModelStructure;

/// Version string written into every report.
pub const TOOL_VERSION: &str = concat!("fqcat ", env!("CARGO_PKG_VERSION"));
