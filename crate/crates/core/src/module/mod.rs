//! Finite-dimensional right modules as quiver representations.

mod catalog;
mod category;
mod qmodule;

pub use catalog::{CatalogBounds, CatalogEntry, IsoCatalog};
pub use category::{ModCat, SearchOrder};
pub use qmodule::{ModuleMap, QModule};
