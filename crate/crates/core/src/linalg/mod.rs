//! Exact linear algebra over prime fields.

mod field;
mod mat;

pub use field::{FieldSpec, VectorIter};
pub use mat::Mat;
