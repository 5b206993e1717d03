//! Wide subcategories: closure checks, enumeration, and the reduction along a recollement.

mod engine;
mod oracle;
mod rules;
mod subcat;
mod theorems;

pub use engine::WideEngine;
pub use oracle::FixpointOracle;
pub use rules::{Rule, RuleTable};
pub use subcat::{mask_of, Mask, WideBounds, WideSubcat};
pub use theorems::{Bijection, QuotientImages, ReductionChecker};

#[cfg(test)]
mod tests;
