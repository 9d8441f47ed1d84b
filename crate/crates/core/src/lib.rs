pub mod corealg;
pub mod gbasis;
pub mod series;
pub mod linalg;
pub mod resolution;
pub mod regularity;
pub mod constructions;
