//! Localic groups: discrete groups `ℓ(G₀)`, presented Hopf algebras such as
//! `Aut(X)`, actions `μ`, and the category `β^G` of G-sets with its
//! morphisms and relations up to a carrier bound.

mod action;
mod group;
mod hopf;

pub use action::{
    actions, gset_relations, is_action, is_gset_morphism, is_gset_relation, monoid_implies_group, ActionMu, ActionReport, BetaG,
    MonoidReport, MorphismReport, RelationReport,
};
pub use group::{DiscreteGroup, HopfReport};
pub use hopf::{aut_generator, aut_hopf, aut_presentation, permutation_point, IsoReport, PointsReport, PresentedHopf};


use crate::locale::LocaleError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LocGroupError {
    #[error("invalid group table: {0}")]
    InvalidGroup(String),
    #[error("search space of {size} exceeds the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("{map} does not respect relation `{relation}`")]
    NotFrameMorphism { map: String, relation: String },
    #[error("shape mismatch: {0}")]
    Shape(String),
    #[error(transparent)]
    Locale(#[from] LocaleError),
}
