use super::ElevatorError;
use std::fmt;

/// A finite sequence of object symbols; the empty word is the unit `I`.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(pub Vec<String>);

impl Word {
    pub fn new<S: Into<String>>(objects: impl IntoIterator<Item = S>) -> Word {
        Word(objects.into_iter().map(Into::into).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn slice(&self, from: usize, to: usize) -> Word {
        Word(self.0[from..to].to_vec())
    }

    /// Replaces `len` objects starting at `col` by `with`.
    pub fn splice(&self, col: usize, len: usize, with: &Word) -> Word {
        let mut out = self.0[..col].to_vec();
        out.extend(with.0.iter().cloned());
        out.extend(self.0[col + len..].iter().cloned());
        Word(out)
    }

    pub fn concat(&self, other: &Word) -> Word {
        Word(self.0.iter().chain(&other.0).cloned().collect())
    }

    /// Whether `pattern` occurs at `col`.
    pub fn has_at(&self, col: usize, pattern: &Word) -> bool {
        col + pattern.len() <= self.len() && self.0[col..col + pattern.len()] == pattern.0[..]
    }
}

impl fmt::Display for Word {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            write!(f, "I")
        } else {
            write!(f, "{}", self.0.join(" "))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CellDecl {
    pub name: String,
    pub dom: Word,
    pub cod: Word,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Axiom {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

/// Object symbols, generator cells with their boundary words, and named
/// equations between terms.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Signature {
    pub objects: Vec<String>,
    pub cells: Vec<CellDecl>,
    pub axioms: Vec<Axiom>,
}

const RESERVED: [&str; 4] = ["id", "sym", "ascensor", "swap"];

impl Signature {
    pub fn new() -> Signature {
        Signature::default()
    }

    pub fn add_object(&mut self, name: &str) -> Result<(), ElevatorError> {
        check_name(name)?;
        if !self.objects.iter().any(|o| o == name) {
            self.objects.push(name.to_string());
        }
        Ok(())
    }

    pub fn add_cell(&mut self, name: &str, dom: Word, cod: Word) -> Result<(), ElevatorError> {
        check_name(name)?;
        for o in dom.0.iter().chain(&cod.0) {
            self.object(o)?;
        }
        if self.cell(name).is_ok() {
            return Err(ElevatorError::Model(format!("cell {name} declared twice")));
        }
        self.cells.push(CellDecl { name: name.to_string(), dom, cod });
        Ok(())
    }

    /// Parses both sides and requires equal boundaries.
    pub fn add_axiom(&mut self, name: &str, lhs: &str, rhs: &str) -> Result<(), ElevatorError> {
        check_name(name)?;
        let lhs = parse(lhs, self)?;
        let rhs = parse(rhs, self)?;
        let (bl, br) = (lhs.boundary(self)?, rhs.boundary(self)?);
        if bl != br {
            return Err(ElevatorError::AxiomBoundary {
                name: name.to_string(),
                lhs: format!("{} -> {}", bl.0, bl.1),
                rhs: format!("{} -> {}", br.0, br.1),
            });
        }
        self.axioms.push(Axiom { name: name.to_string(), lhs, rhs });
        Ok(())
    }

    pub fn object(&self, name: &str) -> Result<(), ElevatorError> {
        if self.objects.iter().any(|o| o == name) {
            Ok(())
        } else {
            Err(ElevatorError::UnknownObject(name.to_string()))
        }
    }

    pub fn cell(&self, name: &str) -> Result<&CellDecl, ElevatorError> {
        self.cells.iter().find(|c| c.name == name).ok_or_else(|| ElevatorError::UnknownCell(name.to_string()))
    }

    pub fn axiom(&self, name: &str) -> Result<&Axiom, ElevatorError> {
        self.axioms.iter().find(|a| a.name == name).ok_or_else(|| ElevatorError::UnknownAxiom(name.to_string()))
    }
}

fn check_name(name: &str) -> Result<(), ElevatorError> {
    let ok = name.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && name.chars().all(is_name_char)
        && !RESERVED.contains(&name)
        && name != "I";
    if ok {
        Ok(())
    } else {
        Err(ElevatorError::Syntax { col: 1, msg: format!("invalid name {name:?}") })
    }
}

fn is_name_char(c: char) -> bool {
    c.is_ascii_alphanumeric() || c == '_' || c == '.' || c == '\''
}

/// The non-identity content of a row.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Cell {
    Gen(String),
    /// Crossing of two adjacent wires `A B → B A`.
    Sym(String, String),
}

impl Cell {
    pub fn boundary(&self, sig: &Signature) -> Result<(Word, Word), ElevatorError> {
        match self {
            Cell::Gen(name) => {
                let d = sig.cell(name)?;
                Ok((d.dom.clone(), d.cod.clone()))
            }
            Cell::Sym(a, b) => {
                sig.object(a)?;
                sig.object(b)?;
                Ok((Word::new([a, b]), Word::new([b, a])))
            }
        }
    }

    pub fn is_symmetry(&self) -> bool {
        matches!(self, Cell::Sym(..))
    }

    pub fn render(&self) -> String {
        match self {
            Cell::Gen(name) => name.clone(),
            Cell::Sym(a, b) => format!("sym:{a},{b}"),
        }
    }
}

/// One cell placed at a column of the word above it; every other wire of
/// the row is an identity.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Row {
    pub col: usize,
    pub cell: Cell,
}

/// A term in row normal form.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Term {
    pub dom: Word,
    pub rows: Vec<Row>,
}

impl Term {
    pub fn identity(dom: Word) -> Term {
        Term { dom, rows: Vec::new() }
    }

    /// The word above each row, followed by the codomain.
    pub fn words(&self, sig: &Signature) -> Result<Vec<Word>, ElevatorError> {
        let mut out = vec![self.dom.clone()];
        for (i, row) in self.rows.iter().enumerate() {
            let (d, c) = row.cell.boundary(sig)?;
            let w = out.last().expect("nonempty");
            if !w.has_at(row.col, &d) {
                return Err(ElevatorError::Boundary {
                    row: i + 1,
                    expected: format!("{d} at column {}", row.col),
                    found: w.to_string(),
                });
            }
            let next = w.splice(row.col, d.len(), &c);
            out.push(next);
        }
        Ok(out)
    }

    pub fn boundary(&self, sig: &Signature) -> Result<(Word, Word), ElevatorError> {
        let words = self.words(sig)?;
        Ok((self.dom.clone(), words.last().expect("nonempty").clone()))
    }
}

/// Unnormalized syntax tree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Expr {
    /// Identity on the empty word, written `1`.
    Unit,
    Id(String),
    Gen(String),
    Sym(String, String),
    Tensor(Vec<Expr>),
    /// Top to bottom.
    Compose(Vec<Expr>),
}

impl Expr {
    pub fn boundary(&self, sig: &Signature) -> Result<(Word, Word), ElevatorError> {
        match self {
            Expr::Unit => Ok((Word::default(), Word::default())),
            Expr::Id(a) => {
                sig.object(a)?;
                Ok((Word::new([a]), Word::new([a])))
            }
            Expr::Gen(name) => Cell::Gen(name.clone()).boundary(sig),
            Expr::Sym(a, b) => Cell::Sym(a.clone(), b.clone()).boundary(sig),
            Expr::Tensor(items) => items.iter().try_fold((Word::default(), Word::default()), |(d, c), e| {
                let (d2, c2) = e.boundary(sig)?;
                Ok((d.concat(&d2), c.concat(&c2)))
            }),
            Expr::Compose(items) => {
                let mut it = items.iter();
                let first = it.next().map(|e| e.boundary(sig)).transpose()?.unwrap_or_default();
                let (dom, mut cod) = first;
                for (i, e) in it.enumerate() {
                    let (d, c) = e.boundary(sig)?;
                    if d != cod {
                        return Err(ElevatorError::Boundary { row: i + 2, expected: cod.to_string(), found: d.to_string() });
                    }
                    cod = c;
                }
                Ok((dom, cod))
            }
        }
    }

    /// Row normal form: juxtaposed cells are split into rows, leftmost
    /// first, and identity rows are dropped.
    pub fn normalize(&self, sig: &Signature) -> Result<Term, ElevatorError> {
        let (dom, _) = self.boundary(sig)?;
        let single = |cell: Cell| Term { dom: dom.clone(), rows: vec![Row { col: 0, cell }] };
        Ok(match self {
            Expr::Unit | Expr::Id(_) => Term::identity(dom),
            Expr::Gen(name) => single(Cell::Gen(name.clone())),
            Expr::Sym(a, b) => single(Cell::Sym(a.clone(), b.clone())),
            Expr::Tensor(items) => {
                let mut rows = Vec::new();
                let mut left = 0;
                for e in items {
                    let t = e.normalize(sig)?;
                    let (_, c) = t.boundary(sig)?;
                    rows.extend(t.rows.into_iter().map(|r| Row { col: r.col + left, cell: r.cell }));
                    left += c.len();
                }
                Term { dom, rows }
            }
            Expr::Compose(items) => {
                let mut rows = Vec::new();
                for e in items {
                    rows.extend(e.normalize(sig)?.rows);
                }
                Term { dom, rows }
            }
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Tok {
    Name(String),
    Id(String),
    Sym(String, String),
    One,
    Star,
    Semi,
}

struct Lexer {
    chars: Vec<(usize, char)>,
    pos: usize,
}

impl Lexer {
    fn new(src: &str) -> Lexer {
        Lexer { chars: src.chars().enumerate().map(|(i, c)| (i + 1, c)).collect(), pos: 0 }
    }

    fn col(&self) -> usize {
        self.chars.get(self.pos).map_or(self.chars.len() + 1, |&(i, _)| i)
    }

    fn err(&self, msg: impl Into<String>) -> ElevatorError {
        ElevatorError::Syntax { col: self.col(), msg: msg.into() }
    }

    fn peek(&self) -> Option<char> {
        self.chars.get(self.pos).map(|&(_, c)| c)
    }

    fn skip_ws(&mut self) {
        while self.peek().is_some_and(char::is_whitespace) {
            self.pos += 1;
        }
    }

    fn name(&mut self) -> Result<String, ElevatorError> {
        self.skip_ws();
        let start = self.pos;
        if !self.peek().is_some_and(|c| c.is_ascii_alphabetic() || c == '_') {
            return Err(self.err("expected a name"));
        }
        while self.peek().is_some_and(is_name_char) {
            self.pos += 1;
        }
        Ok(self.chars[start..self.pos].iter().map(|&(_, c)| c).collect())
    }

    fn expect(&mut self, c: char) -> Result<(), ElevatorError> {
        self.skip_ws();
        if self.peek() == Some(c) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.err(format!("expected '{c}'")))
        }
    }

    fn tokens(mut self) -> Result<Vec<(usize, Tok)>, ElevatorError> {
        let mut out = Vec::new();
        loop {
            self.skip_ws();
            let col = self.col();
            let Some(c) = self.peek() else { return Ok(out) };
            let tok = match c {
                '*' => {
                    self.pos += 1;
                    Tok::Star
                }
                ';' => {
                    self.pos += 1;
                    Tok::Semi
                }
                '1' => {
                    self.pos += 1;
                    Tok::One
                }
                c if c.is_ascii_alphabetic() || c == '_' => {
                    let name = self.name()?;
                    if self.peek() == Some(':') {
                        self.pos += 1;
                        match name.as_str() {
                            "id" => Tok::Id(self.name()?),
                            "sym" => {
                                let a = self.name()?;
                                self.expect(',')?;
                                Tok::Sym(a, self.name()?)
                            }
                            _ => return Err(ElevatorError::Syntax { col, msg: format!("unknown prefix {name}:") }),
                        }
                    } else if RESERVED.contains(&name.as_str()) {
                        return Err(ElevatorError::Syntax { col, msg: format!("{name} needs a ':' argument") });
                    } else {
                        Tok::Name(name)
                    }
                }
                other => return Err(self.err(format!("unexpected character {other:?}"))),
            };
            out.push((col, tok));
        }
    }
}

/// Parses the concrete syntax: rows separated by `;`, cells in a row
/// juxtaposed with `*`, atoms `id:A`, `sym:A,B`, `1` or a cell name.
pub fn parse_expr(text: &str) -> Result<Expr, ElevatorError> {
    let end = text.chars().count() + 1;
    let toks = Lexer::new(text).tokens()?;
    let mut rows = Vec::new();
    let mut factors = Vec::new();
    let mut want_atom = true;
    for (col, tok) in toks {
        let atom = match tok {
            Tok::Star | Tok::Semi if want_atom => {
                return Err(ElevatorError::Syntax { col, msg: "expected a cell".into() });
            }
            Tok::Star => {
                want_atom = true;
                continue;
            }
            Tok::Semi => {
                rows.push(Expr::Tensor(std::mem::take(&mut factors)));
                want_atom = true;
                continue;
            }
            _ if !want_atom => return Err(ElevatorError::Syntax { col, msg: "expected '*' or ';'".into() }),
            Tok::One => Expr::Unit,
            Tok::Id(a) => Expr::Id(a),
            Tok::Sym(a, b) => Expr::Sym(a, b),
            Tok::Name(n) => Expr::Gen(n),
        };
        factors.push(atom);
        want_atom = false;
    }
    if want_atom {
        return Err(ElevatorError::Syntax { col: end, msg: "expected a cell".into() });
    }
    rows.push(Expr::Tensor(factors));
    Ok(Expr::Compose(rows))
}

pub fn parse(text: &str, sig: &Signature) -> Result<Term, ElevatorError> {
    parse_expr(text)?.normalize(sig)
}

/// Renders each row with explicit identity padding, so that parsing the
/// output gives the same term back.
pub fn render(term: &Term, sig: &Signature) -> Result<String, ElevatorError> {
    let words = term.words(sig)?;
    let ids = |w: &[String]| w.iter().map(|o| format!("id:{o}")).collect::<Vec<_>>();
    if term.rows.is_empty() {
        return Ok(if term.dom.is_empty() { "1".to_string() } else { ids(&term.dom.0).join(" * ") });
    }
    let rows: Vec<String> = term
        .rows
        .iter()
        .zip(&words)
        .map(|(row, w)| {
            let dom_len = row.cell.boundary(sig).map(|(d, _)| d.len()).unwrap_or(0);
            let mut parts = ids(&w.0[..row.col]);
            parts.push(row.cell.render());
            parts.extend(ids(&w.0[row.col + dom_len..]));
            parts.join(" * ")
        })
        .collect();
    Ok(rows.join(" ; "))
}

#[cfg(test)]
mod tests {
    use super::*;

    pub(crate) fn sig() -> Signature {
        let mut s = Signature::new();
        for o in ["A", "B", "C", "D", "G"] {
            s.add_object(o).unwrap();
        }
        s.add_cell("f", Word::new(["A"]), Word::new(["B"])).unwrap();
        s.add_cell("g", Word::new(["D"]), Word::new(["A"])).unwrap();
        s.add_cell("h", Word::new(["A", "B"]), Word::new(["G"])).unwrap();
        s.add_cell("eta", Word::default(), Word::new(["A", "A"])).unwrap();
        s
    }

    #[test]
    fn juxtaposition_sets_domain() {
        let mut s = sig();
        s.add_cell("k", Word::new(["A"]), Word::new(["D"])).unwrap();
        s.add_cell("m", Word::new(["C"]), Word::new(["B"])).unwrap();
        let t = parse("k * id:C ; id:D * m", &s).unwrap();
        assert_eq!(t.boundary(&s).unwrap(), (Word::new(["A", "C"]), Word::new(["D", "B"])));
        let t = parse("f * id:C ; id:B * id:C", &s).unwrap();
        assert_eq!(t.boundary(&s).unwrap(), (Word::new(["A", "C"]), Word::new(["B", "C"])));
        let t = parse("g * f ; f * id:B", &s).unwrap();
        assert_eq!(t.dom, Word::new(["D", "A"]));
        assert_eq!(t.rows, vec![Row { col: 0, cell: Cell::Gen("g".into()) }, Row { col: 1, cell: Cell::Gen("f".into()) }, Row { col: 0, cell: Cell::Gen("f".into()) }]);
    }

    #[test]
    fn boundary_error_names_the_row() {
        let s = sig();
        assert!(matches!(parse("f ; f", &s), Err(ElevatorError::Boundary { row: 2, .. })));
    }

    #[test]
    fn atoms_have_their_boundaries() {
        let s = sig();
        assert_eq!(parse("id:A", &s).unwrap().boundary(&s).unwrap(), (Word::new(["A"]), Word::new(["A"])));
        assert_eq!(parse("sym:A,B", &s).unwrap().boundary(&s).unwrap(), (Word::new(["A", "B"]), Word::new(["B", "A"])));
        assert_eq!(parse("1", &s).unwrap().boundary(&s).unwrap(), (Word::default(), Word::default()));
        assert_eq!(parse("eta ; h * id:A", &s).map(|t| t.dom).err(), Some(ElevatorError::Boundary { row: 2, expected: "A A".into(), found: "A B A".into() }));
    }

    #[test]
    fn syntax_errors_have_locations() {
        let s = sig();
        assert_eq!(parse("f * ; g", &s), Err(ElevatorError::Syntax { col: 5, msg: "expected a cell".into() }));
        assert!(matches!(parse("f g", &s), Err(ElevatorError::Syntax { col: 3, .. })));
        assert!(matches!(parse("sym:A B", &s), Err(ElevatorError::Syntax { col: 7, .. })));
        assert!(matches!(parse("f ;", &s), Err(ElevatorError::Syntax { col: 4, .. })));
        assert!(matches!(parse("f % g", &s), Err(ElevatorError::Syntax { col: 3, .. })));
        assert_eq!(parse("k", &s), Err(ElevatorError::UnknownCell("k".into())));
    }

    #[test]
    fn render_round_trips() {
        let s = sig();
        for text in ["f * id:C ; id:B * id:C", "eta ; id:A * f ; h", "id:A * id:B", "1", "sym:A,B ; sym:B,A", "id:C * eta * id:C"] {
            let t = parse(text, &s).unwrap();
            let back = parse(&render(&t, &s).unwrap(), &s).unwrap();
            assert_eq!(t, back, "{text}");
        }
        let t = parse("eta ; id:A * f ; h", &s).unwrap();
        assert_eq!(render(&t, &s).unwrap(), "eta ; id:A * f ; h");
    }

    #[test]
    fn axioms_need_equal_boundaries() {
        let mut s = sig();
        assert!(s.add_axiom("ok", "f ; id:B", "f").is_ok());
        assert!(matches!(s.add_axiom("bad", "f", "id:A"), Err(ElevatorError::AxiomBoundary { .. })));
        assert!(s.add_cell("id", Word::default(), Word::default()).is_err());
    }
}
