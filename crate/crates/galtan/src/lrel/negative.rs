//! Instances on which a commuting condition must fail, with the expected
//! first witness computed from how the instance was built.

use super::{check_diamond, check_diamond1, check_diamond2, check_triangle, delta, Diagram, DiagramReport, LRel};
use crate::suplat::{CompleteLattice, Elem, FinFn, Relation};
use super::props::ValueLattice;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlantedCase {
    pub name: String,
    pub values: ValueLattice,
    pub f: FinFn,
    pub g: FinFn,
    pub lam: LRel<Elem>,
    pub lam2: LRel<Elem>,
    /// The condition that must fail. `Diamond` is taken along the graphs of
    /// `f` and `g`.
    pub diagram: Diagram,
    pub expected_at: Vec<usize>,
}

impl PlantedCase {
    pub fn run(&self) -> DiagramReport {
        let l = self.values.lattice();
        let (f, g, lam, lam2) = (&self.f, &self.g, &self.lam, &self.lam2);
        match self.diagram {
            Diagram::Diamond1 => check_diamond1(&l, f, g, lam, lam2),
            Diagram::Diamond2 => check_diamond2(&l, f, g, lam, lam2),
            Diagram::Triangle => check_triangle(&l, f, g, lam, lam2),
            Diagram::Diamond => check_diamond(&l, &Relation::graph(f), &Relation::graph(g), lam, lam2),
        }
    }

    /// Fails with the expected witness, and only there first.
    pub fn detected(&self) -> bool {
        let r = self.run();
        !r.holds && r.witness.map(|w| w.at) == Some(self.expected_at.clone())
    }
}

struct Base {
    tag: &'static str,
    values: ValueLattice,
    f: FinFn,
    g: FinFn,
    lam: LRel<Elem>,
}

fn bases() -> Vec<Base> {
    let z2 = LRel::from_fn(2, 2, |a, b| Elem(if a == b { 1 } else { 2 }));
    let two = ValueLattice::Two.lattice();
    vec![
        Base {
            tag: "two-merge",
            values: ValueLattice::Two,
            f: FinFn::new(2, vec![0, 0, 1]),
            g: FinFn::new(2, vec![0, 0, 1]),
            lam: delta(&two, 3),
        },
        Base { tag: "z2-identity", values: ValueLattice::PowerZ2, f: FinFn::identity(2), g: FinFn::identity(2), lam: z2.clone() },
        Base { tag: "z2-collapse", values: ValueLattice::PowerZ2, f: FinFn::to_point(2), g: FinFn::to_point(2), lam: z2 },
    ]
}

/// `λ'⟨f a, b'⟩ = ⋁_{g y = b'} λ⟨a, y⟩`, assuming `f` is onto.
fn push1<L: CompleteLattice<Elem = Elem>>(l: &L, b: &Base) -> LRel<Elem> {
    let mut out = LRel::new(b.f.cod, b.g.cod, vec![l.bottom(); b.f.cod * b.g.cod]);
    for a in 0..b.lam.nx {
        for b2 in 0..b.g.cod {
            out.set(b.f.apply(a), b2, l.join_all(b.g.fiber(b2).map(|y| *b.lam.at(a, y))));
        }
    }
    out
}

/// `λ'⟨a', g b⟩ = ⋁_{f x = a'} λ⟨x, b⟩`, assuming `g` is onto.
fn push2<L: CompleteLattice<Elem = Elem>>(l: &L, b: &Base) -> LRel<Elem> {
    let mut out = LRel::new(b.f.cod, b.g.cod, vec![l.bottom(); b.f.cod * b.g.cod]);
    for a2 in 0..b.f.cod {
        for y in 0..b.lam.ny {
            out.set(a2, b.g.apply(y), l.join_all(b.f.fiber(a2).map(|x| *b.lam.at(x, y))));
        }
    }
    out
}

/// Every single-cell perturbation of a valid instance that the condition can
/// see, plus instances where one hypothesis of an implication is dropped.
pub fn negative_corpus() -> Vec<PlantedCase> {
    let mut out = Vec::new();
    for base in bases() {
        let l = base.values.lattice();
        let good1 = push1(&l, &base);
        let good2 = push2(&l, &base);
        for a2 in 0..base.f.cod {
            for b2 in 0..base.g.cod {
                let first_a = base.f.fiber(a2).next();
                let first_b = base.g.fiber(b2).next();
                for v in l.elems() {
                    if let (Some(a), true) = (first_a, v != *good1.at(a2, b2)) {
                        let mut lam2 = good1.clone();
                        lam2.set(a2, b2, v);
                        for diagram in [Diagram::Diamond1, Diagram::Diamond] {
                            out.push(PlantedCase {
                                name: format!("{}-{diagram}-cell{a2}{b2}-to-{}", base.tag, l.label(v)),
                                values: base.values,
                                f: base.f.clone(),
                                g: base.g.clone(),
                                lam: base.lam.clone(),
                                lam2: lam2.clone(),
                                diagram,
                                expected_at: vec![a, b2],
                            });
                        }
                    }
                    if let (Some(b), true) = (first_b, v != *good2.at(a2, b2)) {
                        let mut lam2 = good2.clone();
                        lam2.set(a2, b2, v);
                        out.push(PlantedCase {
                            name: format!("{}-diamond2-cell{a2}{b2}-to-{}", base.tag, l.label(v)),
                            values: base.values,
                            f: base.f.clone(),
                            g: base.g.clone(),
                            lam: base.lam.clone(),
                            lam2,
                            diagram: Diagram::Diamond2,
                            expected_at: vec![a2, b],
                        });
                    }
                }
                // lowering to the bottom breaks the triangle at the first
                // cell above it carrying a nonzero value
                let hit = (0..base.lam.nx)
                    .flat_map(|a| (0..base.lam.ny).map(move |b| (a, b)))
                    .find(|&(a, b)| base.f.apply(a) == a2 && base.g.apply(b) == b2 && *base.lam.at(a, b) != l.bottom());
                if let Some((a, b)) = hit {
                    let mut lam2 = good1.clone();
                    lam2.set(a2, b2, l.bottom());
                    out.push(PlantedCase {
                        name: format!("{}-triangle-cell{a2}{b2}-to-bottom", base.tag),
                        values: base.values,
                        f: base.f.clone(),
                        g: base.g.clone(),
                        lam: base.lam.clone(),
                        lam2,
                        diagram: Diagram::Triangle,
                        expected_at: vec![a, b],
                    });
                }
            }
        }
    }
    out.extend(dropped_hypotheses());
    out
}

fn dropped_hypotheses() -> Vec<PlantedCase> {
    let one = |v| LRel::new(1, 1, vec![Elem(v)]);
    vec![
        // ▷ and λ' uv hold, λ is not entire
        PlantedCase {
            name: "triangle-without-entire".into(),
            values: ValueLattice::Two,
            f: FinFn::identity(1),
            g: FinFn::identity(1),
            lam: one(0),
            lam2: one(1),
            diagram: Diagram::Diamond1,
            expected_at: vec![0, 0],
        },
        // ▷ and λ ed hold, λ' is not univalent
        PlantedCase {
            name: "triangle-without-univalent".into(),
            values: ValueLattice::Two,
            f: FinFn::identity(1),
            g: FinFn::new(2, vec![0]),
            lam: one(1),
            lam2: LRel::new(1, 2, vec![Elem(1), Elem(1)]),
            diagram: Diagram::Diamond1,
            expected_at: vec![0, 1],
        },
        // ▷ and λ' in hold, λ is not surjective
        PlantedCase {
            name: "triangle-without-surjective".into(),
            values: ValueLattice::Two,
            f: FinFn::identity(1),
            g: FinFn::identity(1),
            lam: one(0),
            lam2: one(1),
            diagram: Diagram::Diamond2,
            expected_at: vec![0, 0],
        },
        // ▷ and λ su hold, λ' is not injective
        PlantedCase {
            name: "triangle-without-injective".into(),
            values: ValueLattice::Two,
            f: FinFn::new(2, vec![0]),
            g: FinFn::identity(1),
            lam: one(1),
            lam2: LRel::new(2, 1, vec![Elem(1), Elem(1)]),
            diagram: Diagram::Diamond2,
            expected_at: vec![1, 0],
        },
        // no diamond at all: the triangle need not hold
        PlantedCase {
            name: "no-diamond-no-triangle".into(),
            values: ValueLattice::Two,
            f: FinFn::identity(1),
            g: FinFn::identity(1),
            lam: one(1),
            lam2: one(0),
            diagram: Diagram::Triangle,
            expected_at: vec![0, 0],
        },
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_planted_case_is_detected() {
        let corpus = negative_corpus();
        assert!(corpus.len() > 40);
        for c in &corpus {
            assert!(c.detected(), "{}: {:?}", c.name, c.run());
        }
    }

    #[test]
    fn bases_are_valid() {
        for b in bases() {
            let l = b.values.lattice();
            assert!(check_diamond1(&l, &b.f, &b.g, &b.lam, &push1(&l, &b)).holds, "{}", b.tag);
            assert!(check_diamond2(&l, &b.f, &b.g, &b.lam, &push2(&l, &b)).holds, "{}", b.tag);
        }
    }

    #[test]
    fn names_are_unique() {
        let mut names: Vec<String> = negative_corpus().into_iter().map(|c| c.name).collect();
        let n = names.len();
        names.sort();
        names.dedup();
        assert_eq!(names.len(), n);
    }
}
