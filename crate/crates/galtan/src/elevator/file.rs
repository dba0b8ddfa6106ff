use super::derivation::{Derivation, Step};
use super::model::{duality_counit, duality_unit, RelModel};
use super::moves::Move;
use super::term::{parse, render, Signature, Word};
use super::ElevatorError;
use crate::suplat::Relation;
use std::fmt::Write as _;

/// A derivation file: signature, optional model, derivations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElevatorFile {
    pub signature: Signature,
    /// `None` when the file declares no `size` lines.
    pub model: Option<RelModel>,
    pub derivations: Vec<Derivation>,
}

fn at(line: usize) -> impl Fn(ElevatorError) -> ElevatorError {
    move |e| match e {
        ElevatorError::File { .. } => e,
        other => ElevatorError::File { line, msg: other.to_string() },
    }
}

fn file_err(line: usize, msg: impl Into<String>) -> ElevatorError {
    ElevatorError::File { line, msg: msg.into() }
}

fn parse_word(text: &str) -> Word {
    let objs: Vec<&str> = text.split_whitespace().collect();
    if objs == ["I"] {
        Word::default()
    } else {
        Word::new(objs)
    }
}

struct Block {
    line: usize,
    name: String,
    /// (line, term text) and the move preceding each term after the first.
    terms: Vec<(usize, String, Option<Move>)>,
}

fn finish_block(b: Block, sig: &Signature) -> Result<Derivation, ElevatorError> {
    let mut it = b.terms.into_iter();
    let (line, text, _) = it.next().ok_or_else(|| file_err(b.line, format!("derivation {} has no terms", b.name)))?;
    let start = parse(&text, sig).map_err(at(line))?;
    let mut steps = Vec::new();
    for (line, text, mv) in it {
        let mv = mv.ok_or_else(|| file_err(line, "two terms without a move between them"))?;
        steps.push(Step { mv, term: parse(&text, sig).map_err(at(line))? });
    }
    Ok(Derivation { name: b.name, start, steps })
}

pub fn parse_file(text: &str) -> Result<ElevatorFile, ElevatorError> {
    let mut sig = Signature::new();
    let mut model: Option<RelModel> = None;
    let mut derivations = Vec::new();
    let mut block: Option<Block> = None;
    let mut pending: Option<Move> = None;
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let content = raw.split('#').next().unwrap_or("").trim();
        if content.is_empty() {
            continue;
        }
        if let Some(b) = block.as_mut() {
            if content == "end" {
                if pending.is_some() {
                    return Err(file_err(line, "move without a resulting term"));
                }
                derivations.push(finish_block(block.take().expect("open"), &sig)?);
            } else if let Some(mv) = content.strip_prefix("--") {
                if pending.is_some() || b.terms.is_empty() {
                    return Err(file_err(line, "a move must follow a term"));
                }
                pending = Some(mv.parse().map_err(at(line))?);
            } else if let (Some(last), None) = (b.terms.last_mut(), &pending) {
                // continuation of a term over several lines
                last.1.push(' ');
                last.1.push_str(content);
            } else {
                b.terms.push((line, content.to_string(), pending.take()));
            }
            continue;
        }
        let (head, rest) = content.split_once(char::is_whitespace).unwrap_or((content, ""));
        let rest = rest.trim();
        match head {
            "object" => {
                for o in rest.split_whitespace() {
                    sig.add_object(o).map_err(at(line))?;
                }
            }
            "cell" => {
                let (name, bnd) = rest.split_once(':').ok_or_else(|| file_err(line, "expected 'cell NAME : WORD -> WORD'"))?;
                let (d, c) = bnd.split_once("->").ok_or_else(|| file_err(line, "expected '->'"))?;
                sig.add_cell(name.trim(), parse_word(d), parse_word(c)).map_err(at(line))?;
            }
            "axiom" => {
                let (name, eq) = rest.split_once(':').ok_or_else(|| file_err(line, "expected 'axiom NAME : TERM = TERM'"))?;
                let (l, r) = eq.split_once('=').ok_or_else(|| file_err(line, "expected '='"))?;
                sig.add_axiom(name.trim(), l, r).map_err(at(line))?;
            }
            "size" => {
                let mut parts = rest.split_whitespace();
                let (Some(o), Some(n), None) = (parts.next(), parts.next(), parts.next()) else {
                    return Err(file_err(line, "expected 'size OBJECT N'"));
                };
                sig.object(o).map_err(at(line))?;
                let n = n.parse().map_err(|_| file_err(line, format!("bad size {n:?}")))?;
                model.get_or_insert_with(RelModel::new).set_size(o, n);
            }
            "rel" => {
                let m = model.as_mut().ok_or_else(|| file_err(line, "rel before any size"))?;
                let rel = if let Some((name, spec)) = rest.split_once('=') {
                    let mut parts = spec.split_whitespace();
                    let (Some(kind), Some(o), None) = (parts.next(), parts.next(), parts.next()) else {
                        return Err(file_err(line, "expected 'rel NAME = unit|counit OBJECT'"));
                    };
                    let n = m.size(o).map_err(at(line))?;
                    let r = match kind {
                        "unit" => duality_unit(n),
                        "counit" => duality_counit(n),
                        _ => return Err(file_err(line, format!("unknown relation kind {kind}"))),
                    };
                    (name.trim(), r)
                } else {
                    let (name, pairs) = rest.split_once(':').ok_or_else(|| file_err(line, "expected 'rel NAME : i>j ...'"))?;
                    let d = sig.cell(name.trim()).map_err(at(line))?;
                    let (nx, ny) = (m.word_size(&d.dom).map_err(at(line))?, m.word_size(&d.cod).map_err(at(line))?);
                    let mut out = Vec::new();
                    for p in pairs.split_whitespace() {
                        let parsed = p.split_once('>').and_then(|(x, y)| Some((x.parse::<usize>().ok()?, y.parse::<usize>().ok()?)));
                        match parsed {
                            Some((x, y)) if x < nx && y < ny => out.push((x, y)),
                            _ => return Err(file_err(line, format!("bad pair {p:?} for a {nx} x {ny} relation"))),
                        }
                    }
                    (name.trim(), Relation::from_pairs(nx, ny, out))
                };
                m.set_cell(&sig, rel.0, rel.1).map_err(at(line))?;
            }
            "derivation" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(file_err(line, "expected 'derivation NAME'"));
                }
                block = Some(Block { line, name: rest.to_string(), terms: Vec::new() });
            }
            other => return Err(file_err(line, format!("unknown declaration {other:?}"))),
        }
    }
    if let Some(b) = block {
        return Err(file_err(b.line, format!("derivation {} is not closed with 'end'", b.name)));
    }
    Ok(ElevatorFile { signature: sig, model, derivations })
}

fn word_text(w: &Word) -> String {
    if w.is_empty() {
        "I".into()
    } else {
        w.to_string()
    }
}

/// Writes a file that parses back to the same content. Terms are written
/// one row per line.
pub fn render_file(f: &ElevatorFile) -> Result<String, ElevatorError> {
    let sig = &f.signature;
    let mut out = String::new();
    let _ = writeln!(out, "object {}", sig.objects.join(" "));
    for c in &sig.cells {
        let _ = writeln!(out, "cell {} : {} -> {}", c.name, word_text(&c.dom), word_text(&c.cod));
    }
    for a in &sig.axioms {
        let _ = writeln!(out, "axiom {} : {} = {}", a.name, render(&a.lhs, sig)?, render(&a.rhs, sig)?);
    }
    if let Some(m) = &f.model {
        out.push('\n');
        for (o, n) in &m.sizes {
            let _ = writeln!(out, "size {o} {n}");
        }
        for (name, r) in &m.cells {
            let pairs: Vec<String> = r.pairs().map(|(x, y)| format!("{x}>{y}")).collect();
            let _ = writeln!(out, "rel {name} : {}", pairs.join(" "));
        }
    }
    let block = |t| render(t, sig).map(|s| s.replace(" ; ", " ;\n  "));
    for d in &f.derivations {
        let _ = writeln!(out, "\nderivation {}", d.name);
        let _ = writeln!(out, "  {}", block(&d.start)?);
        for s in &d.steps {
            let _ = writeln!(out, "-- {}", s.mv);
            let _ = writeln!(out, "  {}", block(&s.term)?);
        }
        let _ = writeln!(out, "end");
    }
    Ok(out)
}
