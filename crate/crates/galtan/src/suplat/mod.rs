//! Finite sup-lattices and the linear (join-preserving) maps between them.
//!
//! Everything here is finite and exact. A [`Lattice`] stores its order
//! explicitly, or as bitmask arithmetic for power lattices. Tensor products
//! are built from bi-ideals, relations between finite sets are identified
//! with linear maps of power lattices, and power lattices carry the
//! self-duality given by the diagonal.

mod duality;
mod hom;
mod lattice;
mod linmap;
pub mod random;
mod relation;
mod sets;
mod tensor;

pub use duality::{duality_data, DualityData, TriangleReport};
pub use hom::{bilinear_maps, for_each_linear_map, hom_lattice, linear_maps, HomLattice};
pub use lattice::{Elem, Lattice};
pub use linmap::{LinMap, LinMapRight};
pub use relation::{dual_map, linmap_to_relation, opposite, relation_to_linmap, Relation};
pub use sets::{all_functions, FinFn};
pub use tensor::{
    associator, associator_inv, power_product_iso, symmetry, tensor, tensor_map, unitor, unitor_left, BiIdeal, ProductIsoReport, Tensor,
    TensorLattice,
};

use std::fmt::Debug;
use std::hash::Hash;
use thiserror::Error;

/// Resource bounds applied when constructing or enumerating lattices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Limits {
    /// Largest number of elements a constructed lattice may have.
    pub max_elements: usize,
    /// Largest `n * n` for which dense order/join/meet tables are built.
    pub max_table_cells: usize,
    /// Step budget for closures and enumerations.
    pub max_steps: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits { max_elements: 1 << 16, max_table_cells: 1 << 24, max_steps: 1 << 26 }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SupError {
    #[error("construction needs {size} elements, above the bound {bound}")]
    TooLarge { size: usize, bound: usize },
    #[error("step budget of {0} exhausted")]
    Budget(usize),
    #[error("order is not reflexive at {0}")]
    NotReflexive(String),
    #[error("order is not antisymmetric: {0} and {1}")]
    NotAntisymmetric(String, String),
    #[error("order is not transitive: {0} <= {1} <= {2}")]
    NotTransitive(String, String, String),
    #[error("subset {subset} has no least upper bound")]
    MissingJoin { subset: String },
    #[error("map does not preserve joins: {0}")]
    NotLinear(String),
    #[error("shape mismatch: {0}")]
    Shape(String),
}

/// A finite sup-lattice whose elements are values of type `Elem`.
pub trait SupLattice {
    type Elem: Clone + Eq + Hash + Ord + Debug;

    fn bottom(&self) -> Self::Elem;
    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool;
    fn render(&self, a: &Self::Elem) -> String;

    fn join_all<I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = Self::Elem>,
        Self: Sized,
    {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(&acc, &x))
    }
}

/// A finite lattice: a sup-lattice together with its (derived) meets and top.
pub trait CompleteLattice: SupLattice {
    fn top(&self) -> Self::Elem;
    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;

    fn meet_all<I>(&self, items: I) -> Self::Elem
    where
        I: IntoIterator<Item = Self::Elem>,
        Self: Sized,
    {
        items.into_iter().fold(self.top(), |acc, x| self.meet(&acc, &x))
    }
}
