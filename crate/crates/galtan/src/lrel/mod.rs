//! ℓ-relations `X × Y → G`, the four axioms, the commuting conditions along
//! functions, spans and relations, products and restrictions.

mod negative;
mod props;

pub use negative::{negative_corpus, PlantedCase};
pub use props::{verify_proposition, Prop, PropReport, Space, ValueLattice};

use crate::suplat::{CompleteLattice, FinFn, Relation};
use std::fmt;

/// A table `X × Y → G`, row-major (`x * ny + y`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LRel<E> {
    pub nx: usize,
    pub ny: usize,
    pub table: Vec<E>,
}

impl<E: Clone> LRel<E> {
    pub fn new(nx: usize, ny: usize, table: Vec<E>) -> LRel<E> {
        assert_eq!(table.len(), nx * ny, "table must be total");
        LRel { nx, ny, table }
    }

    pub fn from_fn(nx: usize, ny: usize, f: impl Fn(usize, usize) -> E) -> LRel<E> {
        let table = (0..nx * ny).map(|i| f(i / ny.max(1), i % ny.max(1))).collect();
        LRel { nx, ny, table }
    }

    pub fn at(&self, x: usize, y: usize) -> &E {
        &self.table[x * self.ny + y]
    }

    pub fn set(&mut self, x: usize, y: usize, v: E) {
        self.table[x * self.ny + y] = v;
    }

    /// Applies a map to every value.
    pub fn map<F>(&self, f: impl Fn(&E) -> F) -> LRel<F> {
        LRel { nx: self.nx, ny: self.ny, table: self.table.iter().map(f).collect() }
    }

    /// `(x, y) ↦ λ⟨y, x⟩`.
    pub fn transpose(&self) -> LRel<E> {
        LRel::from_fn(self.ny, self.nx, |x, y| self.at(y, x).clone())
    }
}

/// `λ⟨a,b⟩ = [a = b]`.
pub fn delta<L: CompleteLattice>(l: &L, n: usize) -> LRel<L::Elem> {
    LRel::from_fn(n, n, |a, b| if a == b { l.top() } else { l.bottom() })
}

/// A span `X ← R → X'` with apex `{0..apex}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Span {
    pub left: FinFn,
    pub right: FinFn,
}

impl Span {
    pub fn new(left: FinFn, right: FinFn) -> Span {
        assert_eq!(left.dom(), right.dom(), "legs share the apex");
        Span { left, right }
    }

    pub fn apex(&self) -> usize {
        self.left.dom()
    }

    /// The span `X ← R → X'` of the projections of a relation `R ⊆ X × X'`.
    pub fn of_relation(r: &Relation) -> Span {
        let pairs: Vec<(usize, usize)> = r.pairs().collect();
        Span::new(
            FinFn::new(r.nx(), pairs.iter().map(|p| p.0).collect()),
            FinFn::new(r.ny(), pairs.iter().map(|p| p.1).collect()),
        )
    }

    /// `right ∘ left^op`.
    pub fn induced(&self) -> Relation {
        Relation::from_pairs(self.left.cod, self.right.cod, (0..self.apex()).map(|r| (self.left.apply(r), self.right.apply(r))))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Diagram {
    Diamond1,
    Diamond2,
    Diamond,
    Triangle,
}

impl fmt::Display for Diagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Diagram::Diamond1 => "diamond1",
            Diagram::Diamond2 => "diamond2",
            Diagram::Diamond => "diamond",
            Diagram::Triangle => "triangle",
        })
    }
}

/// Verdict of a diagram check. `witness` is the lexicographically first
/// violating index tuple with both sides rendered.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiagramReport {
    pub which: Diagram,
    pub holds: bool,
    pub witness: Option<Witness>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub at: Vec<usize>,
    pub lhs: String,
    pub rhs: String,
}

impl fmt::Display for Witness {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "at {:?}: {} vs {}", self.at, self.lhs, self.rhs)
    }
}

impl DiagramReport {
    fn ok(which: Diagram) -> DiagramReport {
        DiagramReport { which, holds: true, witness: None }
    }

    fn fail(which: Diagram, at: Vec<usize>, lhs: String, rhs: String) -> DiagramReport {
        DiagramReport { which, holds: false, witness: Some(Witness { at, lhs, rhs }) }
    }
}

/// The four axioms. Each witness is the first violating index tuple.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct AxiomReport {
    pub ed: Option<Vec<usize>>,
    pub uv: Option<Vec<usize>>,
    pub su: Option<Vec<usize>>,
    pub inj: Option<Vec<usize>>,
}

impl AxiomReport {
    pub fn ed(&self) -> bool {
        self.ed.is_none()
    }
    pub fn uv(&self) -> bool {
        self.uv.is_none()
    }
    pub fn su(&self) -> bool {
        self.su.is_none()
    }
    pub fn inj(&self) -> bool {
        self.inj.is_none()
    }
    pub fn is_function(&self) -> bool {
        self.ed() && self.uv()
    }
    pub fn is_opfunction(&self) -> bool {
        self.su() && self.inj()
    }
    pub fn is_bijection(&self) -> bool {
        self.is_function() && self.is_opfunction()
    }
    pub fn flags(&self) -> [bool; 4] {
        [self.ed(), self.uv(), self.su(), self.inj()]
    }
}

pub fn axioms<L: CompleteLattice>(l: &L, lam: &LRel<L::Elem>) -> AxiomReport {
    let (nx, ny) = (lam.nx, lam.ny);
    let top = l.top();
    let bottom = l.bottom();
    let ed = (0..nx).find(|&a| l.join_all((0..ny).map(|y| lam.at(a, y).clone())) != top).map(|a| vec![a]);
    let su = (0..ny).find(|&b| l.join_all((0..nx).map(|x| lam.at(x, b).clone())) != top).map(|b| vec![b]);
    let mut uv = None;
    'uv: for x in 0..nx {
        for b1 in 0..ny {
            for b2 in (b1 + 1)..ny {
                if l.meet(lam.at(x, b1), lam.at(x, b2)) != bottom {
                    uv = Some(vec![x, b1, b2]);
                    break 'uv;
                }
            }
        }
    }
    let mut inj = None;
    'inj: for a1 in 0..nx {
        for a2 in (a1 + 1)..nx {
            for y in 0..ny {
                if l.meet(lam.at(a1, y), lam.at(a2, y)) != bottom {
                    inj = Some(vec![a1, a2, y]);
                    break 'inj;
                }
            }
        }
    }
    AxiomReport { ed, uv, su, inj }
}

/// `λ'⟨f(a), b'⟩ = ⋁_{g(y) = b'} λ⟨a, y⟩` for all `a ∈ X`, `b' ∈ Y'`.
pub fn check_diamond1<L: CompleteLattice>(
    l: &L,
    f: &FinFn,
    g: &FinFn,
    lam: &LRel<L::Elem>,
    lam2: &LRel<L::Elem>,
) -> DiagramReport {
    for a in 0..lam.nx {
        for b2 in 0..lam2.ny {
            let lhs = lam2.at(f.apply(a), b2).clone();
            let rhs = l.join_all(g.fiber(b2).map(|y| lam.at(a, y).clone()));
            if lhs != rhs {
                return DiagramReport::fail(Diagram::Diamond1, vec![a, b2], l.render(&lhs), l.render(&rhs));
            }
        }
    }
    DiagramReport::ok(Diagram::Diamond1)
}

/// `λ'⟨a', g(b)⟩ = ⋁_{f(x) = a'} λ⟨x, b⟩` for all `a' ∈ X'`, `b ∈ Y`.
pub fn check_diamond2<L: CompleteLattice>(
    l: &L,
    f: &FinFn,
    g: &FinFn,
    lam: &LRel<L::Elem>,
    lam2: &LRel<L::Elem>,
) -> DiagramReport {
    for a2 in 0..lam2.nx {
        for b in 0..lam.ny {
            let lhs = lam2.at(a2, g.apply(b)).clone();
            let rhs = l.join_all(f.fiber(a2).map(|x| lam.at(x, b).clone()));
            if lhs != rhs {
                return DiagramReport::fail(Diagram::Diamond2, vec![a2, b], l.render(&lhs), l.render(&rhs));
            }
        }
    }
    DiagramReport::ok(Diagram::Diamond2)
}

/// `⋁_{(y, b') ∈ S} λ⟨a, y⟩ = ⋁_{(a, x') ∈ R} λ'⟨x', b'⟩` for all `a ∈ X`,
/// `b' ∈ Y'`, with `R ⊆ X × X'` and `S ⊆ Y × Y'`.
pub fn check_diamond<L: CompleteLattice>(
    l: &L,
    r: &Relation,
    s: &Relation,
    lam: &LRel<L::Elem>,
    lam2: &LRel<L::Elem>,
) -> DiagramReport {
    for a in 0..lam.nx {
        for b2 in 0..lam2.ny {
            let lhs = l.join_all((0..lam.ny).filter(|&y| s.contains(y, b2)).map(|y| lam.at(a, y).clone()));
            let rhs = l.join_all(r.row(a).ones().map(|x2| lam2.at(x2, b2).clone()));
            if lhs != rhs {
                return DiagramReport::fail(Diagram::Diamond, vec![a, b2], l.render(&lhs), l.render(&rhs));
            }
        }
    }
    DiagramReport::ok(Diagram::Diamond)
}

/// `λ⟨a, b⟩ ≤ λ'⟨f(a), g(b)⟩` for all `a`, `b`.
pub fn check_triangle<L: CompleteLattice>(
    l: &L,
    f: &FinFn,
    g: &FinFn,
    lam: &LRel<L::Elem>,
    lam2: &LRel<L::Elem>,
) -> DiagramReport {
    for a in 0..lam.nx {
        for b in 0..lam.ny {
            let lhs = lam.at(a, b);
            let rhs = lam2.at(f.apply(a), g.apply(b));
            if !l.leq(lhs, rhs) {
                return DiagramReport::fail(Diagram::Triangle, vec![a, b], l.render(lhs), l.render(rhs));
            }
        }
    }
    DiagramReport::ok(Diagram::Triangle)
}

/// `(λ ⊠ λ')⟨(a,a'), (b,b')⟩ = λ⟨a,b⟩ ∧ λ'⟨a',b'⟩`, pairs indexed `a * nx' + a'`.
pub fn product<L: CompleteLattice>(l: &L, lam: &LRel<L::Elem>, lam2: &LRel<L::Elem>) -> LRel<L::Elem> {
    LRel::from_fn(lam.nx * lam2.nx, lam.ny * lam2.ny, |p, q| {
        let (a, a2) = (p / lam2.nx, p % lam2.nx);
        let (b, b2) = (q / lam2.ny, q % lam2.ny);
        l.meet(lam.at(a, b), lam2.at(a2, b2))
    })
}

/// `θ⟨r, s⟩ = λ⟨p r, q s⟩ ∧ λ'⟨p' r, q' s⟩`.
pub fn restrict_spans<L: CompleteLattice>(
    l: &L,
    lam: &LRel<L::Elem>,
    lam2: &LRel<L::Elem>,
    r: &Span,
    s: &Span,
) -> LRel<L::Elem> {
    LRel::from_fn(r.apex(), s.apex(), |i, j| {
        l.meet(lam.at(r.left.apply(i), s.left.apply(j)), lam2.at(r.right.apply(i), s.right.apply(j)))
    })
}

/// Restriction of `λ ⊠ λ'` to `R × S`, with the pairs of each relation
/// indexed in lexicographic order.
pub fn restrict<L: CompleteLattice>(
    l: &L,
    lam: &LRel<L::Elem>,
    lam2: &LRel<L::Elem>,
    r: &Relation,
    s: &Relation,
) -> LRel<L::Elem> {
    restrict_spans(l, lam, lam2, &Span::of_relation(r), &Span::of_relation(s))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suplat::{all_functions, Elem, Lattice};

    fn z2_regular() -> (Lattice, LRel<Elem>) {
        // μ⟨a|b⟩ = {g : g·a = b} with e = bit 0, σ = bit 1
        let l = Lattice::power(2);
        (l, LRel::from_fn(2, 2, |a, b| Elem(if a == b { 1 } else { 2 })))
    }

    #[test]
    fn delta_is_a_bijection() {
        let two = Lattice::two();
        for n in 0..4 {
            assert!(axioms(&two, &delta(&two, n)).is_bijection());
        }
    }

    #[test]
    fn regular_action_is_a_bijection() {
        let (l, mu) = z2_regular();
        assert!(axioms(&l, &mu).is_bijection());
    }

    #[test]
    fn constant_top_fails_uv() {
        let two = Lattice::two();
        let lam = LRel::from_fn(1, 2, |_, _| Elem(1));
        let r = axioms(&two, &lam);
        assert_eq!(r.uv, Some(vec![0, 0, 1]));
        assert!(r.ed());
    }

    #[test]
    fn quotient_to_point_satisfies_diamond1() {
        let (l, mu) = z2_regular();
        let trivial = LRel::from_fn(1, 1, |_, _| l.top());
        let f = FinFn::to_point(2);
        assert!(check_diamond1(&l, &f, &f, &mu, &trivial).holds);
    }

    #[test]
    fn planted_violation_is_reported() {
        let (l, mu) = z2_regular();
        let id = FinFn::identity(2);
        let mut bad = mu.clone();
        bad.set(1, 0, Elem(3));
        let r = check_diamond1(&l, &id, &id, &mu, &bad);
        assert!(!r.holds);
        assert_eq!(r.witness.unwrap().at, vec![1, 0]);
    }

    #[test]
    fn diamond_specialises() {
        let two = Lattice::two();
        for f in all_functions(2, 2) {
            for g in all_functions(2, 1) {
                for code in 0u32..16 {
                    for code2 in 0u32..4 {
                        let lam = LRel::from_fn(2, 2, |a, b| Elem(code >> (a * 2 + b) & 1));
                        let lam2 = LRel::from_fn(2, 1, |a, b| Elem(code2 >> (a + b) & 1));
                        let (rf, rg) = (Relation::graph(&f), Relation::graph(&g));
                        assert_eq!(
                            check_diamond1(&two, &f, &g, &lam, &lam2).holds,
                            check_diamond(&two, &rf, &rg, &lam, &lam2).holds
                        );
                        assert_eq!(
                            check_diamond2(&two, &f, &g, &lam, &lam2).holds,
                            check_diamond(&two, &rf.op(), &rg.op(), &lam2, &lam).holds
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn product_with_point_identity() {
        let (l, mu) = z2_regular();
        let one = delta(&l, 1);
        assert_eq!(product(&l, &mu, &one), mu);
    }

    #[test]
    fn restrict_full_is_product() {
        let (l, mu) = z2_regular();
        let full = Relation::full(2, 2);
        assert_eq!(restrict(&l, &mu, &mu, &full, &full), product(&l, &mu, &mu));
    }
}
