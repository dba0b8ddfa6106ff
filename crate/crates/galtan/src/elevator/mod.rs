//! String diagrams for symmetric monoidal categories, written as rows of
//! cells read top to bottom ("elevators"), with a checker for derivations
//! built from interchange moves, naturality of the symmetry, and named
//! axioms.
//!
//! Terms are kept in a normal form with exactly one non-identity cell per
//! row, addressed by `(row, column)`; identity wires are implicit. Equality
//! modulo axioms is not decided. For terms built only from symmetries the
//! question is settled by comparing permutations.

mod coherence;
mod derivation;
mod file;
mod model;
mod moves;
mod term;

pub use coherence::{decide_symmetry_equality, permutation_of};
pub use derivation::{check_derivation, Derivation, DerivationVerdict, Step, StepFailure};
pub use file::{parse_file, render_file, ElevatorFile};
pub use model::{RelModel, SoundnessReport};
pub use moves::{apply_move, Direction, Move, MoveKind};
pub use moves::apply_with_inverse;
pub use term::{parse, parse_expr, render, Axiom, Cell, CellDecl, Expr, Row, Signature, Term, Word};
pub use model::{duality_counit, duality_unit};

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ElevatorError {
    #[error("syntax error at column {col}: {msg}")]
    Syntax { col: usize, msg: String },
    #[error("line {line}: {msg}")]
    File { line: usize, msg: String },
    #[error("unknown object {0}")]
    UnknownObject(String),
    #[error("unknown cell {0}")]
    UnknownCell(String),
    #[error("unknown axiom {0}")]
    UnknownAxiom(String),
    #[error("boundary mismatch at row {row}: expected {expected}, found {found}")]
    Boundary { row: usize, expected: String, found: String },
    #[error("axiom {name}: sides have boundaries {lhs} and {rhs}")]
    AxiomBoundary { name: String, lhs: String, rhs: String },
    #[error("cell {0} is not a symmetry")]
    NotSymmetry(String),
    #[error("move does not apply: {0}")]
    Mismatch(String),
    #[error("model: {0}")]
    Model(String),
}

/// Derivation files shipped with the crate, by file name.
pub const BUNDLED: [(&str, &str); 3] = [
    ("diamond_from_spans.elv", include_str!("../../data/elevator/diamond_from_spans.elv")),
    ("comodule_to_diamond.elv", include_str!("../../data/elevator/comodule_to_diamond.elv")),
    ("diamond_to_comodule.elv", include_str!("../../data/elevator/diamond_to_comodule.elv")),
];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bundled_derivations_replay_and_are_sound() {
        for (name, text) in BUNDLED {
            let f = parse_file(text).unwrap_or_else(|e| panic!("{name}: {e}"));
            let model = f.model.as_ref().expect("bundled files carry a model");
            let ax = model.check_axioms(&f.signature).unwrap();
            assert!(ax.holds, "{name}: {ax:?}");
            for d in &f.derivations {
                let v = check_derivation(&f.signature, d);
                assert!(v.accepted(), "{name}: {v:?}");
                let s = model.check_derivation(&f.signature, d).unwrap();
                assert!(s.holds && s.checked == d.steps.len(), "{name}: {s:?}");
            }
            assert_eq!(parse_file(&render_file(&f).unwrap()).unwrap(), f, "{name}");
        }
    }

    #[test]
    fn derivations_reach_the_claimed_equations() {
        let f = parse_file(BUNDLED[1].1).unwrap();
        let sig = &f.signature;
        let d = &f.derivations[0];
        assert_eq!(d.steps.len(), 4);
        assert_eq!(render(d.last(), sig).unwrap(), "R * id:B ; muB");
        let f = parse_file(BUNDLED[2].1).unwrap();
        let d = &f.derivations[0];
        assert_eq!(render(d.last(), &f.signature).unwrap(), "id:A * etaA ; muA * id:A ; id:G * R");
        let f = parse_file(BUNDLED[0].1).unwrap();
        assert_eq!(f.derivations[0].steps.len(), 5);
    }

    #[test]
    fn corrupted_position_is_rejected_at_that_step() {
        let f = parse_file(BUNDLED[2].1).unwrap();
        for k in 0..f.derivations[0].steps.len() {
            let mut d = f.derivations[0].clone();
            d.steps[k].mv.col += 1;
            let v = check_derivation(&f.signature, &d);
            assert_eq!(v.failure.map(|x| x.step), Some(k + 1));
        }
    }
}
