use super::term::{Cell, Row, Signature, Term};
use super::ElevatorError;
use std::fmt;
use std::str::FromStr;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MoveKind {
    /// Interchange of two consecutive rows acting on disjoint wires.
    Ascensor,
    /// A one-wire cell passing through an adjacent crossing.
    Swap,
    /// Rewriting by a named axiom of the signature.
    Axiom(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Down,
    /// Left side of the axiom replaced by the right side.
    Lr,
    Rl,
}

/// A move addressed at the cell in `row` (0-based) whose leftmost wire is
/// at column `col` of the word above that row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Move {
    pub kind: MoveKind,
    pub row: usize,
    pub col: usize,
    pub dir: Direction,
}

impl fmt::Display for Move {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match &self.kind {
            MoveKind::Ascensor => "ascensor",
            MoveKind::Swap => "swap",
            MoveKind::Axiom(name) => name,
        };
        let dir = match self.dir {
            Direction::Up => "up",
            Direction::Down => "down",
            Direction::Lr => "lr",
            Direction::Rl => "rl",
        };
        write!(f, "{kind}@{},{} {dir}", self.row, self.col)
    }
}

impl FromStr for Move {
    type Err = ElevatorError;

    /// `ascensor@2,0 up`, `swap@1,3 down`, `name@0,1 lr`.
    fn from_str(s: &str) -> Result<Move, ElevatorError> {
        let bad = |msg: &str| ElevatorError::Syntax { col: 1, msg: format!("{msg} in move {s:?}") };
        let (head, dir) = s.trim().rsplit_once(char::is_whitespace).ok_or_else(|| bad("missing direction"))?;
        let (name, pos) = head.trim().split_once('@').ok_or_else(|| bad("missing '@'"))?;
        let (row, col) = pos.split_once(',').ok_or_else(|| bad("missing ','"))?;
        let row = row.trim().parse().map_err(|_| bad("bad row"))?;
        let col = col.trim().parse().map_err(|_| bad("bad column"))?;
        let dir = match dir {
            "up" => Direction::Up,
            "down" => Direction::Down,
            "lr" => Direction::Lr,
            "rl" => Direction::Rl,
            _ => return Err(bad("unknown direction")),
        };
        let kind = match name.trim() {
            "ascensor" => MoveKind::Ascensor,
            "swap" => MoveKind::Swap,
            other => MoveKind::Axiom(other.to_string()),
        };
        let vertical = matches!(dir, Direction::Up | Direction::Down);
        if vertical != !matches!(kind, MoveKind::Axiom(_)) {
            return Err(bad("direction does not fit the move"));
        }
        Ok(Move { kind, row, col, dir })
    }
}

fn mismatch(msg: impl Into<String>) -> ElevatorError {
    ElevatorError::Mismatch(msg.into())
}

/// Applies one move; the result has the same boundary as `term`.
pub fn apply_move(term: &Term, mv: &Move, sig: &Signature) -> Result<Term, ElevatorError> {
    apply_with_inverse(term, mv, sig).map(|(t, _)| t)
}

/// Applies one move and returns the move that undoes it.
pub fn apply_with_inverse(term: &Term, mv: &Move, sig: &Signature) -> Result<(Term, Move), ElevatorError> {
    let words = term.words(sig)?;
    let (out, inverse) = match &mv.kind {
        MoveKind::Ascensor => ascensor(term, mv, sig)?,
        MoveKind::Swap => swap(term, mv, sig)?,
        MoveKind::Axiom(name) => axiom(term, mv, name, sig, &words)?,
    };
    let (dom, cod) = out.boundary(sig)?;
    if dom != term.dom || &cod != words.last().expect("nonempty") {
        return Err(mismatch(format!("{mv} changes the boundary")));
    }
    Ok((out, inverse))
}

fn cell_at(term: &Term, row: usize, col: usize) -> Result<&Row, ElevatorError> {
    match term.rows.get(row) {
        Some(r) if r.col == col => Ok(r),
        Some(r) => Err(mismatch(format!("row {row} has its cell at column {}, not {col}", r.col))),
        None => Err(mismatch(format!("no row {row}"))),
    }
}

/// The two rows exchanged so that `lower` acts first; `None` if they
/// share a wire.
fn interchange(upper: &Row, lower: &Row, sig: &Signature) -> Result<Option<(Row, Row)>, ElevatorError> {
    let (d1, c1) = upper.cell.boundary(sig)?;
    let (d2, c2) = lower.cell.boundary(sig)?;
    let (o1, o2) = (upper.col, lower.col);
    let placed = |first: usize, second: usize| {
        Some((Row { col: first, cell: lower.cell.clone() }, Row { col: second, cell: upper.cell.clone() }))
    };
    Ok(if o2 + d2.len() <= o1 {
        placed(o2, o1 + c2.len() - d2.len())
    } else if o2 >= o1 + c1.len() {
        placed(o2 + d1.len() - c1.len(), o1)
    } else {
        None
    })
}

fn ascensor(term: &Term, mv: &Move, sig: &Signature) -> Result<(Term, Move), ElevatorError> {
    cell_at(term, mv.row, mv.col)?;
    let (top, up) = match mv.dir {
        Direction::Up if mv.row > 0 => (mv.row - 1, true),
        Direction::Down if mv.row + 1 < term.rows.len() => (mv.row, false),
        _ => return Err(mismatch(format!("no row to exchange with in direction {:?}", mv.dir))),
    };
    let (first, second) = interchange(&term.rows[top], &term.rows[top + 1], sig)?
        .ok_or_else(|| mismatch(format!("rows {top} and {} share a wire", top + 1)))?;
    let inverse = if up {
        Move { kind: MoveKind::Ascensor, row: top, col: first.col, dir: Direction::Down }
    } else {
        Move { kind: MoveKind::Ascensor, row: top + 1, col: second.col, dir: Direction::Up }
    };
    let mut out = term.clone();
    out.rows[top] = first;
    out.rows[top + 1] = second;
    Ok((out, inverse))
}

fn swap(term: &Term, mv: &Move, sig: &Signature) -> Result<(Term, Move), ElevatorError> {
    let row = cell_at(term, mv.row, mv.col)?;
    let Cell::Gen(_) = &row.cell else { return Err(mismatch("swap moves a generator cell, not a crossing")) };
    let (d, c) = row.cell.boundary(sig)?;
    if d.len() != 1 || c.len() != 1 {
        return Err(mismatch("only one-wire cells slide through crossings"));
    }
    let (a, a2) = (d.0[0].clone(), c.0[0].clone());
    let f = row.cell.clone();
    let c0 = mv.col;
    let mut out = term.clone();
    let inverse;
    match mv.dir {
        Direction::Down => {
            let r = mv.row;
            let Some(Row { col: s, cell: Cell::Sym(x, y) }) = term.rows.get(r + 1).cloned() else {
                return Err(mismatch(format!("row {} is not a crossing", r + 1)));
            };
            if s == c0 {
                out.rows[r] = Row { col: s, cell: Cell::Sym(a, y) };
                out.rows[r + 1] = Row { col: s + 1, cell: f };
                inverse = Move { kind: MoveKind::Swap, row: r + 1, col: s + 1, dir: Direction::Up };
            } else if s + 1 == c0 {
                out.rows[r] = Row { col: s, cell: Cell::Sym(x, a) };
                out.rows[r + 1] = Row { col: s, cell: f };
                inverse = Move { kind: MoveKind::Swap, row: r + 1, col: s, dir: Direction::Up };
            } else {
                return Err(mismatch(format!("crossing in row {} does not touch column {c0}", r + 1)));
            }
        }
        Direction::Up => {
            let r = mv.row;
            let Some(Row { col: s, cell: Cell::Sym(x, y) }) = r.checked_sub(1).and_then(|p| term.rows.get(p)).cloned() else {
                return Err(mismatch("the row above is not a crossing"));
            };
            if c0 == s {
                out.rows[r - 1] = Row { col: s + 1, cell: f };
                out.rows[r] = Row { col: s, cell: Cell::Sym(x, a2) };
                inverse = Move { kind: MoveKind::Swap, row: r - 1, col: s + 1, dir: Direction::Down };
            } else if c0 == s + 1 {
                out.rows[r - 1] = Row { col: s, cell: f };
                out.rows[r] = Row { col: s, cell: Cell::Sym(a2, y) };
                inverse = Move { kind: MoveKind::Swap, row: r - 1, col: s, dir: Direction::Down };
            } else {
                return Err(mismatch(format!("crossing in row {} does not touch column {c0}", r - 1)));
            }
        }
        _ => return Err(mismatch("swap goes up or down")),
    }
    Ok((out, inverse))
}

fn axiom(term: &Term, mv: &Move, name: &str, sig: &Signature, words: &[super::term::Word]) -> Result<(Term, Move), ElevatorError> {
    let ax = sig.axiom(name)?;
    let (from, to, back) = match mv.dir {
        Direction::Lr => (&ax.lhs, &ax.rhs, Direction::Rl),
        Direction::Rl => (&ax.rhs, &ax.lhs, Direction::Lr),
        _ => return Err(mismatch("axioms are applied lr or rl")),
    };
    let (r, c) = (mv.row, mv.col);
    let k = from.rows.len();
    if r > term.rows.len() || r + k > term.rows.len() {
        return Err(mismatch(format!("{name} needs {k} rows from row {r}")));
    }
    if !words[r].has_at(c, &from.dom) {
        return Err(mismatch(format!("word {} has no {} at column {c}", words[r], from.dom)));
    }
    for (i, p) in from.rows.iter().enumerate() {
        let t = &term.rows[r + i];
        if t.cell != p.cell || t.col != p.col + c {
            return Err(mismatch(format!("row {} does not match {name}", r + i)));
        }
    }
    let mut out = term.clone();
    let shifted = to.rows.iter().map(|p| Row { col: p.col + c, cell: p.cell.clone() });
    out.rows.splice(r..r + k, shifted);
    Ok((out, Move { kind: mv.kind.clone(), row: r, col: c, dir: back }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elevator::term::{parse, render, Word};

    fn sig() -> Signature {
        let mut s = Signature::new();
        for o in ["A", "B", "C"] {
            s.add_object(o).unwrap();
        }
        s.add_cell("f", Word::new(["A"]), Word::new(["B"])).unwrap();
        s.add_cell("g", Word::new(["C"]), Word::new(["A", "A"])).unwrap();
        s.add_cell("e", Word::default(), Word::new(["C"])).unwrap();
        s.add_axiom("fe", "f * e", "e * f ; sym:C,B").unwrap();
        s
    }

    fn mv(text: &str) -> Move {
        text.parse().unwrap()
    }

    #[test]
    fn ascensor_exchanges_independent_rows() {
        let s = sig();
        // (f ⊗ id) ; (id ⊗ g)  ↔  (id ⊗ g) ; (f ⊗ id)
        let t = parse("f * id:C ; id:B * g", &s).unwrap();
        let u = apply_move(&t, &mv("ascensor@1,1 up"), &s).unwrap();
        assert_eq!(u, parse("id:A * g ; f * id:A * id:A", &s).unwrap());
        assert_eq!(u, parse("f * g", &s).map(|x| apply_move(&x, &mv("ascensor@0,0 down"), &s).unwrap()).unwrap());
        assert_eq!(apply_move(&u, &mv("ascensor@1,0 up"), &s).unwrap(), t);
    }

    #[test]
    fn ascensor_refuses_shared_wires() {
        let s = sig();
        let t = parse("g ; f * id:A", &s).unwrap();
        assert!(matches!(apply_move(&t, &mv("ascensor@1,0 up"), &s), Err(ElevatorError::Mismatch(_))));
        assert!(apply_move(&t, &mv("ascensor@1,1 up"), &s).is_err());
    }

    #[test]
    fn cell_slides_through_crossing() {
        let s = sig();
        let t = parse("f * id:C ; sym:B,C", &s).unwrap();
        let u = apply_move(&t, &mv("swap@0,0 down"), &s).unwrap();
        assert_eq!(render(&u, &s).unwrap(), "sym:A,C ; id:C * f");
        assert_eq!(apply_move(&u, &mv("swap@1,1 up"), &s).unwrap(), t);
        let t = parse("id:C * f ; sym:C,B", &s).unwrap();
        let u = apply_move(&t, &mv("swap@0,1 down"), &s).unwrap();
        assert_eq!(render(&u, &s).unwrap(), "sym:C,A ; f * id:C");
    }

    #[test]
    fn axioms_rewrite_in_place() {
        let s = sig();
        let t = parse("id:C * f * id:A ; g * id:B * id:A", &s).unwrap();
        let u = apply_move(&t, &mv("fe@0,1 lr"), &s);
        // the lhs of fe is two rows: f, then e; here only f is present
        assert!(u.is_err());
        let t = parse("id:C * f * e ; g * id:B * id:C", &s).unwrap();
        let u = apply_move(&t, &mv("fe@0,1 lr"), &s).unwrap();
        assert_eq!(render(&u, &s).unwrap(), "id:C * e * id:A ; id:C * id:C * f ; id:C * sym:C,B ; g * id:B * id:C");
        assert_eq!(apply_move(&u, &mv("fe@0,1 rl"), &s).unwrap(), t);
        assert!(matches!(apply_move(&t, &mv("nope@0,0 lr"), &s), Err(ElevatorError::UnknownAxiom(_))));
    }

    #[test]
    fn every_legal_move_is_undone_by_its_inverse() {
        let s = sig();
        let terms = [
            "f * id:C ; id:B * g ; sym:B,A * id:A",
            "e * f * e ; id:C * id:B * g",
            "f * e * id:C ; sym:B,C * id:C ; id:C * sym:B,C",
            "g * f ; f * id:A * id:B",
        ];
        let mut tried = 0;
        for text in terms {
            let t = parse(text, &s).unwrap();
            for (r, row) in t.rows.iter().enumerate() {
                for kind in ["ascensor", "swap"] {
                    for dir in ["up", "down"] {
                        let m = mv(&format!("{kind}@{r},{} {dir}", row.col));
                        if let Ok((u, inv)) = apply_with_inverse(&t, &m, &s) {
                            tried += 1;
                            assert_eq!(u.boundary(&s).unwrap(), t.boundary(&s).unwrap());
                            assert_eq!(apply_move(&u, &inv, &s).unwrap(), t, "{text} / {m}");
                        }
                    }
                }
            }
        }
        assert!(tried >= 8, "{tried}");
    }

    #[test]
    fn move_syntax_round_trips() {
        for text in ["ascensor@2,0 up", "swap@1,3 down", "zigzag.B.left@0,1 lr"] {
            assert_eq!(mv(text).to_string(), text);
        }
        assert!("ascensor@2,0 lr".parse::<Move>().is_err());
        assert!("f@x,0 lr".parse::<Move>().is_err());
    }
}
