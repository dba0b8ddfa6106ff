use super::{CompleteLattice, Limits, SupError, SupLattice};
use fixedbitset::FixedBitSet;
use std::collections::HashMap;
use std::sync::Arc;

/// Index of an element inside a [`Lattice`]. For power lattices it is the
/// bitmask of the subset.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Elem(pub u32);

impl Elem {
    pub fn idx(self) -> usize {
        self.0 as usize
    }
}

/// A finite lattice. Cloning is cheap (shared storage).
#[derive(Clone, Debug)]
pub struct Lattice {
    inner: Arc<Inner>,
}

#[derive(Debug)]
enum Inner {
    /// All subsets of `names`, element index = bitmask.
    Power { names: Vec<String> },
    Table(Table),
}

#[derive(Debug)]
struct Table {
    labels: Vec<String>,
    up: Vec<FixedBitSet>,
    down: Vec<FixedBitSet>,
    join: Vec<u32>,
    meet: Vec<u32>,
    bottom: u32,
    top: u32,
    by_label: HashMap<String, u32>,
}

impl Lattice {
    /// The power lattice of a set with the given element names.
    pub fn power_set(names: Vec<String>, limits: &Limits) -> Result<Lattice, SupError> {
        let n = names.len();
        if n >= 31 || (1usize << n) > limits.max_elements {
            let size = if n >= 63 { usize::MAX } else { 1usize << n };
            return Err(SupError::TooLarge { size, bound: limits.max_elements });
        }
        Ok(Lattice { inner: Arc::new(Inner::Power { names }) })
    }

    /// Power lattice of `{0, .., n-1}` under default limits.
    pub fn power(n: usize) -> Lattice {
        Self::power_set((0..n).map(|i| i.to_string()).collect(), &Limits::default())
            .expect("power lattice within default bound")
    }

    /// The two-element chain `0 < 1`.
    pub fn two() -> Lattice {
        Self::chain(2)
    }

    /// The chain with `n >= 1` elements labelled `0..n-1`.
    pub fn chain(n: usize) -> Lattice {
        assert!(n >= 1, "a lattice has at least one element");
        let labels = (0..n).map(|i| i.to_string()).collect();
        Self::from_order(labels, |a, b| a <= b, &Limits::default()).expect("chains are lattices")
    }

    /// Builds a lattice from labels and an order predicate on indices.
    /// Validates the partial-order laws and the existence of all joins.
    pub fn from_order(
        labels: Vec<String>,
        leq: impl Fn(usize, usize) -> bool,
        limits: &Limits,
    ) -> Result<Lattice, SupError> {
        let n = labels.len();
        if n > limits.max_elements {
            return Err(SupError::TooLarge { size: n, bound: limits.max_elements });
        }
        if n.saturating_mul(n) > limits.max_table_cells {
            return Err(SupError::TooLarge { size: n, bound: isqrt(limits.max_table_cells) });
        }
        if n == 0 {
            return Err(SupError::MissingJoin { subset: "{}".into() });
        }
        let mut up = vec![FixedBitSet::with_capacity(n); n];
        let mut down = vec![FixedBitSet::with_capacity(n); n];
        for a in 0..n {
            for b in 0..n {
                if leq(a, b) {
                    up[a].insert(b);
                    down[b].insert(a);
                }
            }
        }
        for a in 0..n {
            if !up[a].contains(a) {
                return Err(SupError::NotReflexive(labels[a].clone()));
            }
        }
        for a in 0..n {
            for b in up[a].ones() {
                if b != a && up[b].contains(a) {
                    return Err(SupError::NotAntisymmetric(labels[a].clone(), labels[b].clone()));
                }
                if !up[b].is_subset(&up[a]) {
                    let c = up[b].difference(&up[a]).next().unwrap();
                    return Err(SupError::NotTransitive(
                        labels[a].clone(),
                        labels[b].clone(),
                        labels[c].clone(),
                    ));
                }
            }
        }
        let all = {
            let mut s = FixedBitSet::with_capacity(n);
            s.insert_range(..);
            s
        };
        let bottom = least_of(&all, &up).ok_or_else(|| SupError::MissingJoin { subset: "{}".into() })?;
        let mut join = vec![0u32; n * n];
        let mut meet = vec![0u32; n * n];
        for a in 0..n {
            for b in a..n {
                let mut ub = up[a].clone();
                ub.intersect_with(&up[b]);
                let j = least_of(&ub, &up).ok_or_else(|| SupError::MissingJoin {
                    subset: format!("{{{}, {}}}", labels[a], labels[b]),
                })?;
                join[a * n + b] = j as u32;
                join[b * n + a] = j as u32;
            }
        }
        let top = (0..n).fold(bottom, |acc, x| join[acc * n + x] as usize);
        debug_assert_eq!(least_of(&all, &down), Some(top));
        for a in 0..n {
            for b in a..n {
                let mut lb = down[a].clone();
                lb.intersect_with(&down[b]);
                let m = least_of(&lb, &down).expect("meets exist in a finite lattice");
                meet[a * n + b] = m as u32;
                meet[b * n + a] = m as u32;
            }
        }
        let by_label = labels.iter().enumerate().map(|(i, l)| (l.clone(), i as u32)).collect();
        let table = Table {
            labels,
            up,
            down,
            join,
            meet,
            bottom: bottom as u32,
            top: top as u32,
            by_label,
        };
        Ok(Lattice { inner: Arc::new(Inner::Table(table)) })
    }

    /// The lattice of the given sets ordered by inclusion. Fails if the family
    /// is not closed under the joins of that order.
    pub fn from_sets(labels: Vec<String>, sets: &[FixedBitSet], limits: &Limits) -> Result<Lattice, SupError> {
        if labels.len() != sets.len() {
            return Err(SupError::Shape("one label per set".into()));
        }
        Self::from_order(labels, |a, b| sets[a].is_subset(&sets[b]), limits)
    }

    pub fn size(&self) -> usize {
        match &*self.inner {
            Inner::Power { names } => 1 << names.len(),
            Inner::Table(t) => t.labels.len(),
        }
    }

    pub fn elems(&self) -> impl Iterator<Item = Elem> + Clone {
        (0..self.size() as u32).map(Elem)
    }

    /// Size of the base set when this is a power lattice.
    pub fn power_base(&self) -> Option<usize> {
        match &*self.inner {
            Inner::Power { names } => Some(names.len()),
            Inner::Table(_) => None,
        }
    }

    /// Names of the base set of a power lattice.
    pub fn base_names(&self) -> Option<&[String]> {
        match &*self.inner {
            Inner::Power { names } => Some(names),
            Inner::Table(_) => None,
        }
    }

    pub fn leq(&self, a: Elem, b: Elem) -> bool {
        match &*self.inner {
            Inner::Power { .. } => a.0 & !b.0 == 0,
            Inner::Table(t) => t.up[a.idx()].contains(b.idx()),
        }
    }

    pub fn join(&self, a: Elem, b: Elem) -> Elem {
        match &*self.inner {
            Inner::Power { .. } => Elem(a.0 | b.0),
            Inner::Table(t) => Elem(t.join[a.idx() * t.labels.len() + b.idx()]),
        }
    }

    pub fn meet(&self, a: Elem, b: Elem) -> Elem {
        match &*self.inner {
            Inner::Power { .. } => Elem(a.0 & b.0),
            Inner::Table(t) => Elem(t.meet[a.idx() * t.labels.len() + b.idx()]),
        }
    }

    pub fn bottom(&self) -> Elem {
        match &*self.inner {
            Inner::Power { .. } => Elem(0),
            Inner::Table(t) => Elem(t.bottom),
        }
    }

    pub fn top(&self) -> Elem {
        match &*self.inner {
            Inner::Power { names } => Elem(((1u64 << names.len()) - 1) as u32),
            Inner::Table(t) => Elem(t.top),
        }
    }

    pub fn join_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.bottom(), |acc, x| self.join(acc, x))
    }

    pub fn meet_all(&self, items: impl IntoIterator<Item = Elem>) -> Elem {
        items.into_iter().fold(self.top(), |acc, x| self.meet(acc, x))
    }

    /// Elements below `a` (inclusive).
    pub fn down_set(&self, a: Elem) -> Vec<Elem> {
        match &*self.inner {
            Inner::Power { .. } => {
                let mut out = Vec::new();
                let mut s = a.0;
                loop {
                    out.push(Elem(s));
                    if s == 0 {
                        break;
                    }
                    s = (s - 1) & a.0;
                }
                out
            }
            Inner::Table(t) => t.down[a.idx()].ones().map(|i| Elem(i as u32)).collect(),
        }
    }

    /// Elements above `a` (inclusive).
    pub fn up_set(&self, a: Elem) -> Vec<Elem> {
        match &*self.inner {
            Inner::Power { .. } => self.elems().filter(|&b| self.leq(a, b)).collect(),
            Inner::Table(t) => t.up[a.idx()].ones().map(|i| Elem(i as u32)).collect(),
        }
    }

    /// Join-irreducible elements (non-bottom, not a join of strictly smaller
    /// elements), in increasing order of index.
    pub fn join_irreducibles(&self) -> Vec<Elem> {
        if let Some(n) = self.power_base() {
            return (0..n).map(|i| Elem(1 << i)).collect();
        }
        self.elems()
            .filter(|&a| {
                if a == self.bottom() {
                    return false;
                }
                let below = self
                    .down_set(a)
                    .into_iter()
                    .filter(|&b| b != a)
                    .fold(self.bottom(), |acc, b| self.join(acc, b));
                below != a
            })
            .collect()
    }

    /// Pairs `(a, b)` with `b` covering `a`.
    pub fn covers(&self) -> Vec<(Elem, Elem)> {
        let mut out = Vec::new();
        for a in self.elems() {
            for b in self.up_set(a) {
                if b == a {
                    continue;
                }
                let direct = self
                    .up_set(a)
                    .into_iter()
                    .all(|c| c == a || c == b || !(self.leq(c, b)));
                if direct {
                    out.push((a, b));
                }
            }
        }
        out
    }

    pub fn label(&self, a: Elem) -> String {
        match &*self.inner {
            Inner::Power { names } => {
                let parts: Vec<&str> = (0..names.len())
                    .filter(|i| a.0 >> i & 1 == 1)
                    .map(|i| names[i].as_str())
                    .collect();
                format!("{{{}}}", parts.join(","))
            }
            Inner::Table(t) => t.labels[a.idx()].clone(),
        }
    }

    pub fn labels(&self) -> Vec<String> {
        self.elems().map(|e| self.label(e)).collect()
    }

    /// Looks an element up by its label.
    pub fn lookup(&self, label: &str) -> Option<Elem> {
        match &*self.inner {
            Inner::Power { names } => {
                let body = label.strip_prefix('{')?.strip_suffix('}')?;
                let mut mask = 0u32;
                for part in body.split(',').filter(|p| !p.is_empty()) {
                    let i = names.iter().position(|n| n == part)?;
                    mask |= 1 << i;
                }
                Some(Elem(mask))
            }
            Inner::Table(t) => t.by_label.get(label).map(|&i| Elem(i)),
        }
    }

    /// Same elements in the same order with the same order relation.
    pub fn same_as(&self, other: &Lattice) -> bool {
        self.size() == other.size()
            && self.elems().all(|a| self.label(a) == other.label(a))
            && self.elems().all(|a| self.elems().all(|b| self.leq(a, b) == other.leq(a, b)))
    }

    /// Converts a power lattice into the equivalent explicit table form.
    pub fn to_table(&self, limits: &Limits) -> Result<Lattice, SupError> {
        Lattice::from_order(self.labels(), |a, b| self.leq(Elem(a as u32), Elem(b as u32)), limits)
    }
}

fn isqrt(x: usize) -> usize {
    (x as f64).sqrt() as usize
}

/// The element of `set` that is below every other member, using `up` as the
/// up-set table.
fn least_of(set: &FixedBitSet, up: &[FixedBitSet]) -> Option<usize> {
    set.ones().find(|&c| set.is_subset(&up[c]))
}

impl SupLattice for Lattice {
    type Elem = Elem;
    fn bottom(&self) -> Elem {
        Lattice::bottom(self)
    }
    fn join(&self, a: &Elem, b: &Elem) -> Elem {
        Lattice::join(self, *a, *b)
    }
    fn leq(&self, a: &Elem, b: &Elem) -> bool {
        Lattice::leq(self, *a, *b)
    }
    fn render(&self, a: &Elem) -> String {
        self.label(*a)
    }
}

impl CompleteLattice for Lattice {
    fn top(&self) -> Elem {
        Lattice::top(self)
    }
    fn meet(&self, a: &Elem, b: &Elem) -> Elem {
        Lattice::meet(self, *a, *b)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m3() -> Result<Lattice, SupError> {
        let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        Lattice::from_order(labels, |x, y| x == y || x == 0 || y == 4, &Limits::default())
    }

    #[test]
    fn empty_base_gives_one_element() {
        let l = Lattice::power(0);
        assert_eq!(l.size(), 1);
        assert_eq!(l.bottom(), l.top());
    }

    #[test]
    fn singleton_base_gives_two_chain() {
        let l = Lattice::power(1);
        assert_eq!(l.size(), 2);
        assert!(l.leq(l.bottom(), l.top()));
        assert_ne!(l.bottom(), l.top());
    }

    #[test]
    fn two_point_power_lattice_is_boolean() {
        let l = Lattice::power(2);
        assert_eq!(l.size(), 4);
        let t = l.to_table(&Limits::default()).unwrap();
        for a in l.elems() {
            for b in l.elems() {
                assert_eq!(l.join(a, b), t.join(a, b));
                assert_eq!(l.meet(a, b), t.meet(a, b));
            }
        }
        // the two atoms are complements
        assert_eq!(l.join(Elem(1), Elem(2)), l.top());
        assert_eq!(l.meet(Elem(1), Elem(2)), l.bottom());
    }

    #[test]
    fn diamond_is_a_lattice() {
        let l = m3().unwrap();
        assert_eq!(l.join(Elem(1), Elem(2)), Elem(4));
        assert_eq!(l.meet(Elem(2), Elem(3)), Elem(0));
        assert_eq!(l.join_irreducibles(), vec![Elem(1), Elem(2), Elem(3)]);
    }

    #[test]
    fn missing_join_is_named() {
        // two incomparable maximal elements
        let labels: Vec<String> = ["0", "a", "b"].iter().map(|s| s.to_string()).collect();
        let err = Lattice::from_order(labels, |x, y| x == y || x == 0, &Limits::default()).unwrap_err();
        assert_eq!(err, SupError::MissingJoin { subset: "{a, b}".into() });
    }

    #[test]
    fn non_transitive_order_rejected() {
        let labels: Vec<String> = ["x", "y", "z"].iter().map(|s| s.to_string()).collect();
        let err = Lattice::from_order(labels, |a, b| a == b || (a, b) == (0, 1) || (a, b) == (1, 2), &Limits::default())
            .unwrap_err();
        assert!(matches!(err, SupError::NotTransitive(..)));
    }

    #[test]
    fn size_guard_is_an_error() {
        let limits = Limits { max_elements: 8, ..Limits::default() };
        let err = Lattice::power_set((0..4).map(|i| i.to_string()).collect(), &limits).unwrap_err();
        assert_eq!(err, SupError::TooLarge { size: 16, bound: 8 });
    }

    #[test]
    fn labels_round_trip() {
        let l = Lattice::power_set(vec!["e".into(), "s".into()], &Limits::default()).unwrap();
        for a in l.elems() {
            assert_eq!(l.lookup(&l.label(a)), Some(a));
        }
        assert_eq!(l.label(Elem(3)), "{e,s}");
    }

    #[test]
    fn covers_of_chain() {
        let c = Lattice::chain(3);
        assert_eq!(c.covers(), vec![(Elem(0), Elem(1)), (Elem(1), Elem(2))]);
    }
}
