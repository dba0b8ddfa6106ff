use super::moves::{apply_move, Move};
use super::term::{render, Signature, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub mv: Move,
    /// The term claimed after the move.
    pub term: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Derivation {
    pub name: String,
    pub start: Term,
    pub steps: Vec<Step>,
}

impl Derivation {
    pub fn last(&self) -> &Term {
        self.steps.last().map_or(&self.start, |s| &s.term)
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        std::iter::once(&self.start).chain(self.steps.iter().map(|s| &s.term))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StepFailure {
    /// 1-based.
    pub step: usize,
    pub mv: String,
    /// The term written in the derivation.
    pub expected: String,
    /// What the move actually produces, or why it does not apply.
    pub actual: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivationVerdict {
    pub name: String,
    pub steps: usize,
    pub failure: Option<StepFailure>,
}

impl DerivationVerdict {
    pub fn accepted(&self) -> bool {
        self.failure.is_none()
    }
}

/// Replays every step and stops at the first one whose move does not apply
/// or does not produce the written term.
pub fn check_derivation(sig: &Signature, d: &Derivation) -> DerivationVerdict {
    let show = |t: &Term| render(t, sig).unwrap_or_else(|e| e.to_string());
    let mut current = &d.start;
    for (i, step) in d.steps.iter().enumerate() {
        let fail = |actual: String| DerivationVerdict {
            name: d.name.clone(),
            steps: d.steps.len(),
            failure: Some(StepFailure { step: i + 1, mv: step.mv.to_string(), expected: show(&step.term), actual }),
        };
        match apply_move(current, &step.mv, sig) {
            Ok(t) if t == step.term => current = &step.term,
            Ok(t) => return fail(show(&t)),
            Err(e) => return fail(e.to_string()),
        }
    }
    DerivationVerdict { name: d.name.clone(), steps: d.steps.len(), failure: None }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::elevator::term::{parse, Word};

    #[test]
    fn replays_and_reports_the_first_bad_step() {
        let mut s = Signature::new();
        s.add_object("A").unwrap();
        s.add_cell("f", Word::new(["A"]), Word::new(["A"])).unwrap();
        s.add_cell("g", Word::new(["A"]), Word::new(["A"])).unwrap();
        let t = |x: &str| parse(x, &s).unwrap();
        let mut d = Derivation {
            name: "demo".into(),
            start: t("f * id:A ; id:A * g"),
            steps: vec![
                Step { mv: "ascensor@1,1 up".parse().unwrap(), term: t("id:A * g ; f * id:A") },
                Step { mv: "ascensor@1,0 up".parse().unwrap(), term: t("f * id:A ; id:A * g") },
            ],
        };
        let v = check_derivation(&s, &d);
        assert!(v.accepted(), "{v:?}");
        d.steps[1].mv = "ascensor@1,1 up".parse().unwrap();
        let v = check_derivation(&s, &d);
        assert_eq!(v.failure.as_ref().map(|f| f.step), Some(2));
        d.steps[1].mv = "ascensor@1,0 up".parse().unwrap();
        d.steps[1].term = t("f * g");
        // normalizes to the start, which is what the move produces
        assert!(check_derivation(&s, &d).accepted());
        d.steps[0].term = t("f * g ; f * id:A");
        let f = check_derivation(&s, &d).failure.unwrap();
        assert_eq!((f.step, f.actual.as_str()), (1, "id:A * g ; f * id:A"));
    }
}
