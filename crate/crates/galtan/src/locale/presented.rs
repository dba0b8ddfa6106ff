use super::{LocaleError, Term};
use crate::suplat::{CompleteLattice, Elem, Lattice, Limits, SupLattice};
use fixedbitset::FixedBitSet;
use std::collections::{HashMap, HashSet, VecDeque};
use std::sync::Arc;

/// A named inequality `lhs ≤ rhs`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Inequality {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
}

/// Generators and inequalities presenting a frame.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Presentation {
    pub generators: Vec<String>,
    pub relations: Vec<Inequality>,
}

impl Presentation {
    pub fn new(generators: Vec<String>) -> Presentation {
        Presentation { generators, relations: Vec::new() }
    }

    pub fn generator(&self, name: &str) -> Option<Term> {
        self.generators.iter().position(|g| g == name).map(Term::Gen)
    }

    pub fn leq(&mut self, name: impl Into<String>, lhs: Term, rhs: Term) {
        self.relations.push(Inequality { name: name.into(), lhs, rhs });
    }

    /// Stored as the two inequalities `name.le` and `name.ge`.
    pub fn eq(&mut self, name: impl Into<String>, a: Term, b: Term) {
        let name = name.into();
        self.leq(format!("{name}.le"), a.clone(), b.clone());
        self.leq(format!("{name}.ge"), b, a);
    }

    /// Checks that every term only mentions declared generators.
    pub fn validate(&self) -> Result<(), LocaleError> {
        for r in &self.relations {
            for t in [&r.lhs, &r.rhs] {
                if let Some(g) = t.max_gen() {
                    if g >= self.generators.len() {
                        return Err(LocaleError::UnknownGenerator(format!("#{g} in {}", r.name)));
                    }
                }
            }
        }
        Ok(())
    }

    /// The coproduct of locales, i.e. the tensor of frames: disjoint
    /// generators and relations, copy `i` shifted past the earlier ones and
    /// its names suffixed with `#i` (1-based).
    pub fn coproduct(parts: &[&Presentation]) -> Presentation {
        let mut out = Presentation::default();
        for (i, p) in parts.iter().enumerate() {
            let offset = out.generators.len();
            out.generators.extend(p.generators.iter().map(|g| format!("{g}#{}", i + 1)));
            let shift = |g: usize| Term::Gen(g + offset);
            for r in &p.relations {
                out.leq(format!("{}#{}", r.name, i + 1), r.lhs.substitute(&shift), r.rhs.substitute(&shift));
            }
        }
        out
    }

    /// Whether a valuation of the generators in `2` (bit `i` = generator `i`)
    /// satisfies every relation.
    pub fn satisfied_by(&self, valuation: u64) -> bool {
        let v = |i: usize| valuation >> i & 1 == 1;
        self.relations.iter().all(|r| !r.lhs.eval_bool(&v) || r.rhs.eval_bool(&v))
    }
}

/// An element of a presented frame: a saturated down-set of the meet core.
/// Core element `m` (a generator mask) stands for the meet of its generators,
/// so down-sets are closed under supersets.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Ideal(pub FixedBitSet);

#[derive(Debug)]
struct Rule {
    lhs: u64,
    rhs: Vec<u64>,
}

#[derive(Debug)]
struct Inner {
    presentation: Presentation,
    rules: Vec<Rule>,
    limits: Limits,
    bottom: Ideal,
}

/// The frame presented by a [`Presentation`], with lazily computed elements.
#[derive(Clone, Debug)]
pub struct PresentedFrame {
    inner: Arc<Inner>,
}

/// Largest generator count for which the meet core is built.
pub const MAX_GENERATORS: usize = 20;

pub fn present(p: Presentation, limits: &Limits) -> Result<PresentedFrame, LocaleError> {
    p.validate()?;
    let n = p.generators.len();
    let max = MAX_GENERATORS.min(limits.max_table_cells.ilog2() as usize);
    if n > max {
        return Err(LocaleError::TooManyGenerators { generators: n, max });
    }
    let rules = p
        .relations
        .iter()
        .flat_map(|r| {
            let rhs = r.rhs.dnf();
            r.lhs.dnf().into_iter().map(move |m| Rule { lhs: m, rhs: rhs.clone() })
        })
        .collect();
    let mut inner = Inner {
        presentation: p,
        rules,
        limits: limits.clone(),
        bottom: Ideal(FixedBitSet::with_capacity(1 << n)),
    };
    let empty = inner.bottom.0.clone();
    inner.bottom = saturate(&inner, empty)?;
    Ok(PresentedFrame { inner: Arc::new(inner) })
}

/// The free frame on `n` generators named `g0..`.
pub fn free_frame(n: usize, limits: &Limits) -> Result<PresentedFrame, LocaleError> {
    present(Presentation::new((0..n).map(|i| format!("g{i}")).collect()), limits)
}

fn add_up(set: &mut FixedBitSet, c: usize, full: usize) -> bool {
    if set.contains(c) {
        return false;
    }
    let mut s = c;
    loop {
        set.insert(s);
        if s == full {
            break;
        }
        s = (s + 1) | c;
    }
    true
}

fn saturate(inner: &Inner, seed: FixedBitSet) -> Result<Ideal, LocaleError> {
    let n = inner.presentation.generators.len();
    let full = (1usize << n) - 1;
    let mut set = FixedBitSet::with_capacity(1 << n);
    for c in seed.ones() {
        add_up(&mut set, c, full);
    }
    let mut steps = 0usize;
    loop {
        let mut changed = false;
        for rule in &inner.rules {
            let m = rule.lhs as usize;
            let mut c = m;
            loop {
                steps += 1 + rule.rhs.len();
                if steps > inner.limits.max_steps {
                    return Err(LocaleError::Budget(inner.limits.max_steps));
                }
                if !set.contains(c) && rule.rhs.iter().all(|&r| set.contains(c | r as usize)) {
                    add_up(&mut set, c, full);
                    changed = true;
                }
                if c == full {
                    break;
                }
                c = (c + 1) | m;
            }
        }
        if !changed {
            return Ok(Ideal(set));
        }
    }
}

impl PresentedFrame {
    pub fn presentation(&self) -> &Presentation {
        &self.inner.presentation
    }

    pub fn generator_count(&self) -> usize {
        self.inner.presentation.generators.len()
    }

    fn full(&self) -> usize {
        (1usize << self.generator_count()) - 1
    }

    pub fn limits(&self) -> &Limits {
        &self.inner.limits
    }

    /// Saturation of an arbitrary set of core masks.
    pub fn closure(&self, seed: &FixedBitSet) -> Result<Ideal, LocaleError> {
        saturate(&self.inner, seed.clone())
    }

    /// The element represented by the meet of the generators in `mask`.
    pub fn principal(&self, mask: u64) -> Ideal {
        let mut seed = FixedBitSet::with_capacity(self.full() + 1);
        seed.insert(mask as usize);
        self.closure(&seed).expect("closure within step budget")
    }

    pub fn generator(&self, i: usize) -> Ideal {
        self.principal(1 << i)
    }

    pub fn generator_by_name(&self, name: &str) -> Option<Ideal> {
        self.presentation().generators.iter().position(|g| g == name).map(|i| self.generator(i))
    }

    pub fn eval(&self, t: &Term) -> Ideal {
        self.join_all(t.dnf().into_iter().map(|m| self.principal(m)))
    }

    /// Maximal core elements of an ideal, as generator masks.
    pub fn minimal_masks(&self, d: &Ideal) -> Vec<u64> {
        d.0.ones()
            .filter(|&c| (0..self.generator_count()).all(|i| c >> i & 1 == 0 || !d.0.contains(c & !(1 << i))))
            .map(|c| c as u64)
            .collect()
    }

    /// Enumerates every element. Fails above `limits.max_elements` elements.
    pub fn materialize(&self) -> Result<Materialized, LocaleError> {
        let limits = &self.inner.limits;
        let mut gens: Vec<Ideal> = (0..=self.full()).map(|c| self.principal(c as u64)).collect();
        gens.sort();
        gens.dedup();
        let bottom = self.bottom();
        let mut seen: HashSet<Ideal> = HashSet::from([bottom.clone()]);
        let mut queue = VecDeque::from([bottom]);
        while let Some(d) = queue.pop_front() {
            for g in &gens {
                if g.0.is_subset(&d.0) {
                    continue;
                }
                let j = self.join(&d, g);
                if seen.insert(j.clone()) {
                    if seen.len() > limits.max_elements {
                        return Err(LocaleError::TooLarge { size: seen.len(), bound: limits.max_elements });
                    }
                    queue.push_back(j);
                }
            }
        }
        let mut ideals: Vec<Ideal> = seen.into_iter().collect();
        ideals.sort_by(|a, b| a.0.count_ones(..).cmp(&b.0.count_ones(..)).then_with(|| a.cmp(b)));
        let labels = ideals.iter().map(|d| self.render(d)).collect();
        let lattice = Lattice::from_order(labels, |a, b| ideals[a].0.is_subset(&ideals[b].0), limits)
            .map_err(LocaleError::Lattice)?;
        let index = ideals.iter().enumerate().map(|(i, d)| (d.clone(), Elem(i as u32))).collect();
        Ok(Materialized { lattice, ideals, index })
    }

    /// Points as valuations of the generators in `2` satisfying every
    /// relation (bit `i` = value of generator `i`), in increasing order.
    pub fn points_by_valuation(&self) -> Result<Vec<u64>, LocaleError> {
        let n = self.generator_count();
        if n > 24 {
            return Err(LocaleError::TooManyGenerators { generators: n, max: 24 });
        }
        Ok((0..1u64 << n).filter(|&v| self.presentation().satisfied_by(v)).collect())
    }

    /// Checks that generator images in `target` satisfy every relation and
    /// returns the induced frame morphism, or names the first violated relation.
    pub fn frame_morphism<'a, L: CompleteLattice>(
        &self,
        target: &'a L,
        images: Vec<L::Elem>,
    ) -> Result<FrameMorphism<'a, L>, LocaleError> {
        if images.len() != self.generator_count() {
            return Err(LocaleError::Shape(format!(
                "{} images for {} generators",
                images.len(),
                self.generator_count()
            )));
        }
        let m = FrameMorphism { target, images };
        for r in &self.presentation().relations {
            let lhs = m.eval(&r.lhs);
            let rhs = m.eval(&r.rhs);
            if !target.leq(&lhs, &rhs) {
                return Err(LocaleError::RelationViolated {
                    relation: r.name.clone(),
                    lhs: target.render(&lhs),
                    rhs: target.render(&rhs),
                });
            }
        }
        Ok(m)
    }
}

impl SupLattice for PresentedFrame {
    type Elem = Ideal;

    fn bottom(&self) -> Ideal {
        self.inner.bottom.clone()
    }

    fn join(&self, a: &Ideal, b: &Ideal) -> Ideal {
        if a.0.is_subset(&b.0) {
            return b.clone();
        }
        if b.0.is_subset(&a.0) {
            return a.clone();
        }
        let mut u = a.0.clone();
        u.union_with(&b.0);
        self.closure(&u).expect("closure within step budget")
    }

    fn leq(&self, a: &Ideal, b: &Ideal) -> bool {
        a.0.is_subset(&b.0)
    }

    fn render(&self, d: &Ideal) -> String {
        if *d == self.inner.bottom {
            return "0".into();
        }
        let names = &self.presentation().generators;
        self.minimal_masks(d)
            .into_iter()
            .map(|m| {
                if m == 0 {
                    "1".to_string()
                } else {
                    (0..names.len()).filter(|i| m >> i & 1 == 1).map(|i| names[i].as_str()).collect::<Vec<_>>().join("∧")
                }
            })
            .collect::<Vec<_>>()
            .join(" ∨ ")
    }
}

impl CompleteLattice for PresentedFrame {
    fn top(&self) -> Ideal {
        let mut s = FixedBitSet::with_capacity(self.full() + 1);
        s.insert_range(..);
        Ideal(s)
    }

    fn meet(&self, a: &Ideal, b: &Ideal) -> Ideal {
        let mut s = a.0.clone();
        s.intersect_with(&b.0);
        Ideal(s)
    }
}

/// A fully enumerated presented frame.
#[derive(Clone, Debug)]
pub struct Materialized {
    pub lattice: Lattice,
    pub ideals: Vec<Ideal>,
    index: HashMap<Ideal, Elem>,
}

impl Materialized {
    pub fn elem(&self, d: &Ideal) -> Elem {
        self.index[d]
    }

    pub fn ideal(&self, e: Elem) -> &Ideal {
        &self.ideals[e.idx()]
    }

    /// Points as prime (here: meet-irreducible) elements `p`, each paired with
    /// its valuation `i ↦ [generator i ≰ p]`.
    pub fn points_by_primes(&self, frame: &PresentedFrame) -> Vec<(Elem, u64)> {
        let l = &self.lattice;
        let mut out: Vec<(Elem, u64)> = l
            .elems()
            .filter(|&p| p != l.top())
            .filter(|&p| {
                let above = l.up_set(p).into_iter().filter(|&q| q != p);
                l.meet_all(above) != p
            })
            .map(|p| {
                let v = (0..frame.generator_count())
                    .filter(|&i| !frame.leq(&frame.generator(i), self.ideal(p)))
                    .fold(0u64, |acc, i| acc | 1 << i);
                (p, v)
            })
            .collect();
        out.sort_by_key(|&(_, v)| v);
        out
    }
}

/// A frame morphism out of a presented frame, given by generator images.
#[derive(Clone, Debug)]
pub struct FrameMorphism<'a, L: CompleteLattice> {
    target: &'a L,
    images: Vec<L::Elem>,
}

impl<'a, L: CompleteLattice> FrameMorphism<'a, L> {
    pub fn images(&self) -> &[L::Elem] {
        &self.images
    }

    fn mask_image(&self, m: u64) -> L::Elem {
        self.target.meet_all((0..self.images.len()).filter(|i| m >> i & 1 == 1).map(|i| self.images[i].clone()))
    }

    pub fn eval(&self, t: &Term) -> L::Elem {
        self.target.join_all(t.dnf().into_iter().map(|m| self.mask_image(m)))
    }

    /// `⋁_{c ∈ d} ⋀_{g ∈ c} image(g)`.
    pub fn apply(&self, frame: &PresentedFrame, d: &Ideal) -> L::Elem {
        self.target.join_all(frame.minimal_masks(d).into_iter().map(|m| self.mask_image(m)))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn down_set_count(n: usize) -> usize {
        // oracle: subsets of the core closed under supersets, by brute force
        let core = 1usize << n;
        (0u64..1 << core)
            .filter(|&s| {
                (0..core).all(|c| s >> c & 1 == 0 || (0..core).all(|d| d & c != c || s >> d & 1 == 1))
            })
            .count()
    }

    #[test]
    fn free_frame_sizes() {
        for (n, expected) in [(0, 2), (1, 3), (2, 6), (3, 20)] {
            let m = free_frame(n, &Limits::default()).unwrap().materialize().unwrap();
            assert_eq!(m.lattice.size(), expected);
            assert_eq!(down_set_count(n), expected);
        }
    }

    #[test]
    fn forcing_a_generator_to_top() {
        let mut p = Presentation::new(vec!["g".into()]);
        p.leq("force", Term::Top, Term::Gen(0));
        let f = present(p, &Limits::default()).unwrap();
        assert_eq!(f.materialize().unwrap().lattice.size(), 2);
        assert_eq!(f.generator(0), f.top());
    }

    #[test]
    fn closure_is_a_closure_operator() {
        let mut p = Presentation::new(vec!["a".into(), "b".into(), "c".into()]);
        p.leq("r", Term::Gen(0), Term::Join(vec![Term::Gen(1), Term::Gen(2)]));
        p.leq("s", Term::meet2(Term::Gen(1), Term::Gen(2)), Term::Bottom);
        let f = present(p, &Limits::default()).unwrap();
        for bits in 0u32..256 {
            let mut seed = FixedBitSet::with_capacity(8);
            (0..8).filter(|i| bits >> i & 1 == 1).for_each(|i| seed.insert(i));
            let c = f.closure(&seed).unwrap();
            assert!(seed.is_subset(&c.0));
            assert_eq!(f.closure(&c.0).unwrap(), c);
        }
    }

    #[test]
    fn points_agree() {
        let mut p = Presentation::new(vec!["a".into(), "b".into()]);
        p.leq("r", Term::Gen(0), Term::Gen(1));
        let f = present(p, &Limits::default()).unwrap();
        let m = f.materialize().unwrap();
        let lazy = f.points_by_valuation().unwrap();
        let primes: Vec<u64> = m.points_by_primes(&f).into_iter().map(|(_, v)| v).collect();
        assert_eq!(lazy, vec![0b00, 0b10, 0b11]);
        assert_eq!(primes, lazy);
    }

    #[test]
    fn morphism_refusal_names_relation() {
        let mut p = Presentation::new(vec!["a".into(), "b".into()]);
        p.leq("disjoint", Term::meet2(Term::Gen(0), Term::Gen(1)), Term::Bottom);
        let f = present(p, &Limits::default()).unwrap();
        let two = Lattice::two();
        let err = f.frame_morphism(&two, vec![Elem(1), Elem(1)]).unwrap_err();
        assert!(matches!(err, LocaleError::RelationViolated { ref relation, .. } if relation == "disjoint"));
        assert!(f.frame_morphism(&two, vec![Elem(1), Elem(0)]).is_ok());
    }
}
