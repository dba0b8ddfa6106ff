use super::derivation::Derivation;
use super::term::{Cell, Signature, Term, Word};
use super::ElevatorError;
use crate::suplat::{duality_data, Elem, Relation, SupLattice};
use std::collections::BTreeMap;

/// An interpretation in finite sets and relations (equivalently, power
/// sets and linear maps): objects get sizes, a word is the product of its
/// objects in lexicographic order, cells are relations, crossings swap
/// coordinates.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct RelModel {
    pub sizes: BTreeMap<String, usize>,
    pub cells: BTreeMap<String, Relation>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SoundnessReport {
    /// Equations compared.
    pub checked: usize,
    pub holds: bool,
    pub witness: Option<String>,
}

fn model_err(msg: impl Into<String>) -> ElevatorError {
    ElevatorError::Model(msg.into())
}

/// `1 → X × X`, read off the duality unit `⋁_x x ⊗ x` of `ℓX`.
pub fn duality_unit(n: usize) -> Relation {
    let d = duality_data(n);
    let eta = d.eta();
    let p = d.pair();
    let pairs = (0..n * n).filter(|&i| p.leq(&p.pure(&Elem(1 << (i / n)), Elem(1 << (i % n))), &eta));
    Relation::from_pairs(1, n * n, pairs.map(|i| (0, i)))
}

/// `X × X → 1`, the duality counit of `ℓX` on pairs of points.
pub fn duality_counit(n: usize) -> Relation {
    let d = duality_data(n);
    let p = d.pair();
    let pairs = (0..n * n).filter(|&i| d.epsilon(&p.pure(&Elem(1 << (i / n)), Elem(1 << (i % n)))));
    Relation::from_pairs(n * n, 1, pairs.map(|i| (i, 0)))
}

impl RelModel {
    pub fn new() -> RelModel {
        RelModel::default()
    }

    pub fn set_size(&mut self, object: &str, n: usize) {
        self.sizes.insert(object.to_string(), n);
    }

    pub fn size(&self, object: &str) -> Result<usize, ElevatorError> {
        self.sizes.get(object).copied().ok_or_else(|| model_err(format!("no size for {object}")))
    }

    pub fn word_size(&self, w: &Word) -> Result<usize, ElevatorError> {
        w.0.iter().try_fold(1usize, |acc, o| Ok(acc * self.size(o)?))
    }

    pub fn set_cell(&mut self, sig: &Signature, name: &str, rel: Relation) -> Result<(), ElevatorError> {
        let d = sig.cell(name)?;
        let (nx, ny) = (self.word_size(&d.dom)?, self.word_size(&d.cod)?);
        if (rel.nx(), rel.ny()) != (nx, ny) {
            return Err(model_err(format!("{name} needs a {nx} x {ny} relation, got {} x {}", rel.nx(), rel.ny())));
        }
        self.cells.insert(name.to_string(), rel);
        Ok(())
    }

    fn cell(&self, cell: &Cell) -> Result<Relation, ElevatorError> {
        match cell {
            Cell::Gen(name) => self.cells.get(name).cloned().ok_or_else(|| model_err(format!("{name} is not interpreted"))),
            Cell::Sym(a, b) => {
                let (na, nb) = (self.size(a)?, self.size(b)?);
                Ok(Relation::from_pairs(na * nb, na * nb, (0..na).flat_map(|i| (0..nb).map(move |j| (i * nb + j, j * na + i)))))
            }
        }
    }

    pub fn interpret(&self, term: &Term, sig: &Signature) -> Result<Relation, ElevatorError> {
        let words = term.words(sig)?;
        let mut acc = Relation::diagonal(self.word_size(&term.dom)?);
        for (row, w) in term.rows.iter().zip(&words) {
            let (d, c) = row.cell.boundary(sig)?;
            let left = self.word_size(&w.slice(0, row.col))?;
            let right = self.word_size(&w.slice(row.col + d.len(), w.len()))?;
            let (m, m2) = (self.word_size(&d)?, self.word_size(&c)?);
            let cell = self.cell(&row.cell)?;
            let mut pairs = Vec::new();
            for l in 0..left {
                for (x, y) in cell.pairs() {
                    for r in 0..right {
                        pairs.push(((l * m + x) * right + r, (l * m2 + y) * right + r));
                    }
                }
            }
            acc = acc.then(&Relation::from_pairs(left * m * right, left * m2 * right, pairs));
        }
        Ok(acc)
    }

    /// Both sides of every axiom of `sig` denote the same relation.
    pub fn check_axioms(&self, sig: &Signature) -> Result<SoundnessReport, ElevatorError> {
        let mut r = SoundnessReport { checked: 0, holds: true, witness: None };
        for ax in &sig.axioms {
            r.checked += 1;
            if self.interpret(&ax.lhs, sig)? != self.interpret(&ax.rhs, sig)? {
                r.holds = false;
                r.witness.get_or_insert(format!("axiom {} fails in the model", ax.name));
            }
        }
        Ok(r)
    }

    /// Every term of the derivation denotes the same relation as the first.
    pub fn check_derivation(&self, sig: &Signature, d: &Derivation) -> Result<SoundnessReport, ElevatorError> {
        let first = self.interpret(&d.start, sig)?;
        let mut r = SoundnessReport { checked: 0, holds: true, witness: None };
        for (i, step) in d.steps.iter().enumerate() {
            r.checked += 1;
            if self.interpret(&step.term, sig)? != first {
                r.holds = false;
                r.witness.get_or_insert(format!("{}: term after step {} denotes a different relation", d.name, i + 1));
            }
        }
        Ok(r)
    }
}
