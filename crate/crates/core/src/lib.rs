pub mod algebra;
pub mod battery;
pub mod error;
pub mod linalg;
pub mod module;
pub mod problem;
pub mod recollement;
pub mod report;
pub mod suite;
pub mod wide;
