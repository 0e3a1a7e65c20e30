//! File formats and reports.
//!
//! `.fcat` presentations describe a finite category with an optional model
//! structure and filter; `.fadj` files describe an adjunction between two
//! presented categories. Both formats are line based, with `#` comments.

mod fadj;
mod fcat;
mod lex;
mod report;

pub use fadj::{parse_adjunction, to_fadj};
pub use fcat::{parse_presentation, to_fcat, Presentation};
pub use report::{digest, Check, Report, Status};
