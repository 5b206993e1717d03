//! Finite-dimensional algebras presented by acyclic quivers with relations.

mod idempotent;
mod path_algebra;
mod quiver;

pub use idempotent::{
    corner_algebra, quotient_by_idempotent_ideal, CornerAlgebra, Idem, QuotientAlgebra,
};
pub use path_algebra::{path_algebra, Elem, PresentedAlgebra, Relation};
pub use quiver::{Arrow, Path, Quiver};
