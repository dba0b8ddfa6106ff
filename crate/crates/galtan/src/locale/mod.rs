//! Frames: distributivity checks, locale algebras, and frames presented by
//! generators and inequalities with elements kept as saturated ideals of the
//! meet core.

mod frame;
mod presented;
mod term;

pub use frame::{is_frame, is_locale_algebra, CommAlgebra, FrameReport, LocaleAlgebraReport};
pub use presented::{
    free_frame, present, FrameMorphism, Ideal, Inequality, Materialized, PresentedFrame, Presentation, MAX_GENERATORS,
};
pub use term::Term;

use crate::suplat::SupError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocaleError {
    #[error("term syntax: {0}")]
    Syntax(String),
    #[error("unknown generator `{0}`")]
    UnknownGenerator(String),
    #[error("frame needs {size} elements, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("{generators} generators, above the limit of {max} for a presented frame")]
    TooManyGenerators { generators: usize, max: usize },
    #[error("saturation step budget of {0} exhausted")]
    Budget(usize),
    #[error("relation `{relation}` fails: {lhs} is not below {rhs}")]
    RelationViolated { relation: String, lhs: String, rhs: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Lattice(#[from] SupError),
}
