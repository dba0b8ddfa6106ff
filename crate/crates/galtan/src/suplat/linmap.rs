use super::{Elem, Lattice, SupError};

/// A join-preserving map between two finite lattices, stored as a table.
#[derive(Clone, Debug)]
pub struct LinMap {
    source: Lattice,
    target: Lattice,
    table: Vec<Elem>,
}

impl LinMap {
    /// Validates that `table` preserves the bottom and binary joins (which on
    /// finite lattices is the same as preserving all joins).
    pub fn new(source: Lattice, target: Lattice, table: Vec<Elem>) -> Result<LinMap, SupError> {
        if table.len() != source.size() {
            return Err(SupError::Shape(format!(
                "table has {} entries for a source of {} elements",
                table.len(),
                source.size()
            )));
        }
        let map = LinMap { source, target, table };
        if let Some(msg) = map.linearity_violation() {
            return Err(SupError::NotLinear(msg));
        }
        Ok(map)
    }

    /// Builds the table from a function without validating it.
    pub(crate) fn from_fn_unchecked(source: &Lattice, target: &Lattice, f: impl Fn(Elem) -> Elem) -> LinMap {
        let table = source.elems().map(f).collect();
        LinMap { source: source.clone(), target: target.clone(), table }
    }

    /// Builds the table from a function and validates linearity.
    pub fn from_fn(source: &Lattice, target: &Lattice, f: impl Fn(Elem) -> Elem) -> Result<LinMap, SupError> {
        let table = source.elems().map(f).collect();
        LinMap::new(source.clone(), target.clone(), table)
    }

    /// The linear map determined by values on join-irreducibles:
    /// `s ↦ ⋁ { values[j] : j ≤ s }`. Fails if the result does not preserve joins.
    pub fn from_generators(source: &Lattice, target: &Lattice, values: &[(Elem, Elem)]) -> Result<LinMap, SupError> {
        LinMap::from_fn(source, target, |s| {
            target.join_all(values.iter().filter(|(j, _)| source.leq(*j, s)).map(|&(_, v)| v))
        })
    }

    fn linearity_violation(&self) -> Option<String> {
        let (s, t) = (&self.source, &self.target);
        if self.table[s.bottom().idx()] != t.bottom() {
            return Some(format!("bottom goes to {}", t.label(self.table[s.bottom().idx()])));
        }
        for a in s.elems() {
            for b in s.elems().filter(|b| b.0 > a.0) {
                let lhs = self.apply(s.join(a, b));
                let rhs = t.join(self.apply(a), self.apply(b));
                if lhs != rhs {
                    return Some(format!("f({} v {}) != f({}) v f({})", s.label(a), s.label(b), s.label(a), s.label(b)));
                }
            }
        }
        None
    }

    pub fn identity(l: &Lattice) -> LinMap {
        LinMap::from_fn_unchecked(l, l, |a| a)
    }

    pub fn zero(source: &Lattice, target: &Lattice) -> LinMap {
        let z = target.bottom();
        LinMap::from_fn_unchecked(source, target, |_| z)
    }

    pub fn source(&self) -> &Lattice {
        &self.source
    }

    pub fn target(&self) -> &Lattice {
        &self.target
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn apply(&self, a: Elem) -> Elem {
        self.table[a.idx()]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &LinMap) -> Result<LinMap, SupError> {
        if self.target.size() != other.source.size() {
            return Err(SupError::Shape("composable maps need matching middle lattice".into()));
        }
        Ok(LinMap::from_fn_unchecked(&self.source, &other.target, |a| other.apply(self.apply(a))))
    }

    /// Pointwise order.
    pub fn leq(&self, other: &LinMap) -> bool {
        self.source.elems().all(|a| self.target.leq(self.apply(a), other.apply(a)))
    }

    /// The right adjoint `t ↦ ⋁ { s : f(s) ≤ t }`.
    pub fn right_adjoint(&self) -> LinMapRight {
        let table = self
            .target
            .elems()
            .map(|t| self.source.join_all(self.source.elems().filter(|&s| self.target.leq(self.apply(s), t))))
            .collect();
        LinMapRight { table }
    }
}

/// Table of a right adjoint (meet-preserving, so not a [`LinMap`]).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinMapRight {
    pub table: Vec<Elem>,
}

impl PartialEq for LinMap {
    fn eq(&self, other: &Self) -> bool {
        self.source.same_as(&other.source) && self.target.same_as(&other.target) && self.table == other.table
    }
}

impl Eq for LinMap {}
