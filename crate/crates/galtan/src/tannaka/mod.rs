//! Reconstruction of a localic group from a pointed topos given by a finite
//! site: `Aut(F)` as a presented frame (the universal `▷`-cone of
//! ℓ-bijections), `End^∨(T)` as a coend of power sets (the universal
//! `◇`-cone), the comparison between them, cone extension beyond the site,
//! the predual of natural transformations, and the lifts of the point to
//! `β^G` and of `T` to comodules.
//!
//! Two toposes are modelled exactly: finite `G₀`-sets for a finite group,
//! and presheaves on the arrow category `0 → 1`, which is not atomic.

mod autf;
mod composites;
mod cone;
mod endt;
mod iso;
mod lifting;
mod model;
mod predual;

pub use autf::{autf_presentation, AutF, KeyLemmaReport, MATERIALIZE_GENERATORS};
pub use composites::{CompositeReport, EndHopf};
pub use cone::{check_cone, extend_cone, Cone, ConeReport, Extension};
pub use endt::{Coend, CompatibilityReport, EndT, Equation};
pub use iso::{check_iso, IsoCheck};
pub use lifting::{lifting_check, FunctorVerdicts, LiftReport, Verdict};
pub use model::{Cover, Model, Object, Site, SiteArrow, SiteRelation};
pub use predual::{adjunction, natural_transformations, AdjunctionReport, Base, BaseArrow};

use crate::comodule::ComoduleError;
use crate::locale::LocaleError;
use crate::locgroup::LocGroupError;
use crate::suplat::SupError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum TannakaError {
    #[error("{what} has {size} elements, at most {bound} supported")]
    TooLarge { what: String, size: usize, bound: usize },
    #[error("site {site} does not cover element {element}")]
    NotCovered { site: String, element: usize },
    #[error("site {0}: {1}")]
    Site(String, String),
    #[error(transparent)]
    Locale(#[from] LocaleError),
    #[error(transparent)]
    Group(#[from] LocGroupError),
    #[error(transparent)]
    Lattice(#[from] SupError),
    #[error(transparent)]
    Comodule(#[from] ComoduleError),
}
