use super::term::{Cell, Signature, Term};
use super::ElevatorError;

/// The wire permutation of a term made of identities and crossings:
/// `perm[i]` is the output position of input wire `i`.
pub fn permutation_of(term: &Term) -> Result<Vec<usize>, ElevatorError> {
    // at[j] = input wire currently at position j
    let mut at: Vec<usize> = (0..term.dom.len()).collect();
    for row in &term.rows {
        match &row.cell {
            Cell::Sym(..) if row.col + 1 < at.len() => at.swap(row.col, row.col + 1),
            Cell::Sym(..) => return Err(ElevatorError::Mismatch(format!("crossing at column {} is off the word", row.col))),
            Cell::Gen(name) => return Err(ElevatorError::NotSymmetry(name.clone())),
        }
    }
    let mut perm = vec![0; at.len()];
    for (j, &i) in at.iter().enumerate() {
        perm[i] = j;
    }
    Ok(perm)
}

/// Two symmetry-only terms are equal iff they have the same boundary and
/// move wires the same way.
pub fn decide_symmetry_equality(a: &Term, b: &Term, sig: &Signature) -> Result<bool, ElevatorError> {
    let (pa, pb) = (permutation_of(a)?, permutation_of(b)?);
    Ok(a.boundary(sig)? == b.boundary(sig)? && pa == pb)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elevator::term::{parse, Word};

    fn sig() -> Signature {
        let mut s = Signature::new();
        for o in ["A", "B", "C"] {
            s.add_object(o).unwrap();
        }
        s.add_cell("f", Word::new(["A"]), Word::new(["A"])).unwrap();
        s
    }

    #[test]
    fn double_crossing_is_identity() {
        let s = sig();
        let t = parse("sym:A,B ; sym:B,A", &s).unwrap();
        assert!(decide_symmetry_equality(&t, &parse("id:A * id:B", &s).unwrap(), &s).unwrap());
        let once = parse("sym:A,B", &s).unwrap();
        assert!(!decide_symmetry_equality(&once, &parse("id:A * id:B", &s).unwrap(), &s).unwrap());
        // same object on both wires: the boundary agrees, the permutation does not
        let aa = parse("sym:A,A", &s).unwrap();
        assert!(!decide_symmetry_equality(&aa, &parse("id:A * id:A", &s).unwrap(), &s).unwrap());
    }

    #[test]
    fn braid_relation() {
        let s = sig();
        let l = parse("sym:A,B * id:C ; id:B * sym:A,C ; sym:B,C * id:A", &s).unwrap();
        let r = parse("id:A * sym:B,C ; sym:A,C * id:B ; id:C * sym:A,B", &s).unwrap();
        // both exchange the outer wires
        assert_eq!(permutation_of(&l).unwrap(), vec![2, 1, 0]);
        assert_eq!(permutation_of(&r).unwrap(), vec![2, 1, 0]);
        assert!(decide_symmetry_equality(&l, &r, &s).unwrap());
    }

    #[test]
    fn generator_cells_are_refused() {
        let s = sig();
        let t = parse("f * id:B ; sym:A,B", &s).unwrap();
        assert_eq!(permutation_of(&t), Err(ElevatorError::NotSymmetry("f".into())));
    }
}
