//! The six functors attached to an idempotent and the gluing data between them.

mod adjunction;
mod axioms;
mod functors;
mod sequences;

pub use adjunction::{Adjunction, AdjunctionBijection};
pub use axioms::adjunction_dimension_table;
pub use functors::RecollementCtx;
pub use sequences::{ExactSequence, GluingSequences};
