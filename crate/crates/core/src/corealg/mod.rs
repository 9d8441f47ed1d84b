//! Exact scalars, words, homogeneous noncommutative polynomials, monomial orders, and
//! algebra/module presentations.

mod module;
mod order;
mod parse;
mod poly;
mod presentation;
mod scalar;
mod word;

pub use module::{ModulePresentation, ModuleRelation, Side};
pub use order::MonomialOrder;
pub use parse::{parse_module, parse_poly, parse_presentation};
pub use poly::Poly;
pub use presentation::AlgebraPresentation;
pub use scalar::{Field, Scalar};
pub use word::Word;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CoreError {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("inhomogeneous relation `{relation}` (term degrees {degrees:?})")]
    Inhomogeneous { relation: String, degrees: Vec<u32> },
    #[error("generator `{name}` has degree {degree}; degrees must be at least 1")]
    BadGeneratorDegree { name: String, degree: i64 },
    #[error("unsupported field `{0}`")]
    UnsupportedField(String),
    #[error("relation {0} is zero")]
    ZeroRelation(usize),
    #[error("duplicate generator `{0}`")]
    DuplicateGenerator(String),
    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(Field, Field),
    #[error("module relation {index} is inhomogeneous: {detail}")]
    InhomogeneousModuleRelation { index: usize, detail: String },
}
