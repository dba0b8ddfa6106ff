use super::LocaleError;
use std::collections::BTreeSet;
use std::fmt;

/// A lattice term over generators `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Term {
    Gen(usize),
    Top,
    Bottom,
    Meet(Vec<Term>),
    Join(Vec<Term>),
}

impl Term {
    pub fn meet2(a: Term, b: Term) -> Term {
        Term::Meet(vec![a, b])
    }

    pub fn join_of(items: impl IntoIterator<Item = Term>) -> Term {
        Term::Join(items.into_iter().collect())
    }

    /// Disjunctive normal form as an antichain of generator masks (a mask is
    /// the meet of its generators; the empty mask is `1`, no masks is `0`).
    pub fn dnf(&self) -> Vec<u64> {
        let set = match self {
            Term::Gen(i) => BTreeSet::from([1u64 << i]),
            Term::Top => BTreeSet::from([0]),
            Term::Bottom => BTreeSet::new(),
            Term::Join(items) => items.iter().flat_map(|t| t.dnf()).collect(),
            Term::Meet(items) => {
                let mut acc = BTreeSet::from([0u64]);
                for t in items {
                    let d = t.dnf();
                    acc = acc.iter().flat_map(|a| d.iter().map(move |b| a | b)).collect();
                }
                acc
            }
        };
        // drop masks absorbed by a smaller one
        let all: Vec<u64> = set.into_iter().collect();
        all.iter().copied().filter(|&m| !all.iter().any(|&o| o != m && o & m == o)).collect()
    }

    /// Evaluates the term in `2` under a valuation of the generators.
    pub fn eval_bool(&self, v: &dyn Fn(usize) -> bool) -> bool {
        match self {
            Term::Gen(i) => v(*i),
            Term::Top => true,
            Term::Bottom => false,
            Term::Meet(items) => items.iter().all(|t| t.eval_bool(v)),
            Term::Join(items) => items.iter().any(|t| t.eval_bool(v)),
        }
    }

    /// Replaces every generator by its image.
    pub fn substitute(&self, image: &dyn Fn(usize) -> Term) -> Term {
        match self {
            Term::Gen(i) => image(*i),
            Term::Top => Term::Top,
            Term::Bottom => Term::Bottom,
            Term::Meet(items) => Term::Meet(items.iter().map(|t| t.substitute(image)).collect()),
            Term::Join(items) => Term::Join(items.iter().map(|t| t.substitute(image)).collect()),
        }
    }

    pub fn max_gen(&self) -> Option<usize> {
        match self {
            Term::Gen(i) => Some(*i),
            Term::Top | Term::Bottom => None,
            Term::Meet(items) | Term::Join(items) => items.iter().filter_map(Term::max_gen).max(),
        }
    }

    /// Prefix rendering with generator names.
    pub fn render(&self, names: &[String]) -> String {
        match self {
            Term::Gen(i) => names[*i].clone(),
            Term::Top => "1".into(),
            Term::Bottom => "0".into(),
            Term::Meet(items) => format!("(and{})", items.iter().map(|t| format!(" {}", t.render(names))).collect::<String>()),
            Term::Join(items) => format!("(or{})", items.iter().map(|t| format!(" {}", t.render(names))).collect::<String>()),
        }
    }

    /// Parses prefix syntax: a generator name, `0`, `1`, `(and t..)` or `(or t..)`.
    pub fn parse(text: &str, names: &[String]) -> Result<Term, LocaleError> {
        let tokens = tokenize(text);
        let mut pos = 0;
        let t = parse_at(&tokens, &mut pos, names)?;
        if pos != tokens.len() {
            return Err(LocaleError::Syntax(format!("trailing input after term: {}", tokens[pos..].join(" "))));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Gen(i) => write!(f, "g{i}"),
            Term::Top => write!(f, "1"),
            Term::Bottom => write!(f, "0"),
            Term::Meet(items) | Term::Join(items) => {
                write!(f, "({}", if matches!(self, Term::Meet(_)) { "and" } else { "or" })?;
                for t in items {
                    write!(f, " {t}")?;
                }
                write!(f, ")")
            }
        }
    }
}

fn tokenize(text: &str) -> Vec<String> {
    text.replace('(', " ( ").replace(')', " ) ").split_whitespace().map(str::to_string).collect()
}

fn parse_at(tokens: &[String], pos: &mut usize, names: &[String]) -> Result<Term, LocaleError> {
    let tok = tokens.get(*pos).ok_or_else(|| LocaleError::Syntax("unexpected end of term".into()))?;
    *pos += 1;
    match tok.as_str() {
        "0" => Ok(Term::Bottom),
        "1" => Ok(Term::Top),
        "(" => {
            let op = tokens.get(*pos).ok_or_else(|| LocaleError::Syntax("missing operator".into()))?.clone();
            *pos += 1;
            let mut items = Vec::new();
            while tokens.get(*pos).map(String::as_str) != Some(")") {
                if *pos >= tokens.len() {
                    return Err(LocaleError::Syntax("unclosed parenthesis".into()));
                }
                items.push(parse_at(tokens, pos, names)?);
            }
            *pos += 1;
            match op.as_str() {
                "and" => Ok(Term::Meet(items)),
                "or" => Ok(Term::Join(items)),
                other => Err(LocaleError::Syntax(format!("unknown operator `{other}`"))),
            }
        }
        ")" => Err(LocaleError::Syntax("unexpected `)`".into())),
        name => names
            .iter()
            .position(|n| n == name)
            .map(Term::Gen)
            .ok_or_else(|| LocaleError::UnknownGenerator(name.to_string())),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn names() -> Vec<String> {
        vec!["a".into(), "b".into(), "c".into()]
    }

    #[test]
    fn dnf_distributes() {
        let t = Term::parse("(and (or a b) c)", &names()).unwrap();
        assert_eq!(t.dnf(), vec![0b101, 0b110]);
    }

    #[test]
    fn dnf_absorbs() {
        let t = Term::parse("(or a (and a b))", &names()).unwrap();
        assert_eq!(t.dnf(), vec![0b001]);
        assert_eq!(Term::parse("(or)", &names()).unwrap().dnf(), Vec::<u64>::new());
        assert_eq!(Term::parse("(and)", &names()).unwrap().dnf(), vec![0]);
    }

    #[test]
    fn render_parse_round_trip() {
        let t = Term::parse("(or (and a b) 0 (and 1 c))", &names()).unwrap();
        assert_eq!(Term::parse(&t.render(&names()), &names()).unwrap(), t);
    }

    #[test]
    fn unknown_generator() {
        assert_eq!(Term::parse("(and a z)", &names()), Err(LocaleError::UnknownGenerator("z".into())));
    }
}
