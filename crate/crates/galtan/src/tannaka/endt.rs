use super::cone::{extend_cone, Cone, Extension};
use super::model::{Object, Site};
use super::TannakaError;
use crate::lrel::LRel;
use crate::suplat::{CompleteLattice, Lattice, Limits, SupLattice};
use fixedbitset::FixedBitSet;

/// A named identification `⋁ lhs = ⋁ rhs` of sets of cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Equation {
    pub name: String,
    pub lhs: u64,
    pub rhs: u64,
}

/// The quotient of the power set of at most 64 cells by the sup-lattice
/// congruence generated by some equations. Elements are represented by the
/// largest set in their class: a set `D` is closed when each equation has
/// both sides inside `D` or neither.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Coend {
    pub cells: Vec<String>,
    pub equations: Vec<Equation>,
}

impl Coend {
    pub fn new(cells: Vec<String>, equations: Vec<Equation>) -> Result<Coend, TannakaError> {
        if cells.len() > 64 {
            return Err(TannakaError::TooLarge { what: "cell set".into(), size: cells.len(), bound: 64 });
        }
        Ok(Coend { cells, equations })
    }

    fn full(&self) -> u64 {
        if self.cells.len() == 64 { u64::MAX } else { (1u64 << self.cells.len()) - 1 }
    }

    /// The least closed set containing `d`.
    pub fn closure(&self, mut d: u64) -> u64 {
        loop {
            let before = d;
            for eq in &self.equations {
                if eq.lhs & !d == 0 {
                    d |= eq.rhs;
                }
                if eq.rhs & !d == 0 {
                    d |= eq.lhs;
                }
            }
            if d == before {
                return d;
            }
        }
    }

    pub fn is_closed(&self, d: u64) -> bool {
        self.equations.iter().all(|eq| (eq.lhs & !d == 0) == (eq.rhs & !d == 0))
    }

    pub fn class(&self, cell: usize) -> u64 {
        self.closure(1 << cell)
    }

    /// Every element, as closed sets in increasing numeric order.
    pub fn elements(&self, limits: &Limits) -> Result<Vec<u64>, TannakaError> {
        let classes: Vec<u64> = (0..self.cells.len()).map(|c| self.class(c)).collect();
        let mut seen = std::collections::BTreeSet::from([self.closure(0)]);
        let mut frontier = vec![self.closure(0)];
        while let Some(d) = frontier.pop() {
            for &c in &classes {
                let e = self.closure(d | c);
                if seen.insert(e) {
                    if seen.len() > limits.max_elements {
                        return Err(TannakaError::TooLarge { what: "quotient".into(), size: seen.len(), bound: limits.max_elements });
                    }
                    frontier.push(e);
                }
            }
        }
        Ok(seen.into_iter().collect())
    }

    /// The quotient as a table lattice, element `i` being `elements()[i]`.
    pub fn lattice(&self, limits: &Limits) -> Result<(Lattice, Vec<u64>), TannakaError> {
        let elems = self.elements(limits)?;
        let n = self.cells.len();
        let sets: Vec<FixedBitSet> = elems
            .iter()
            .map(|&d| {
                let mut s = FixedBitSet::with_capacity(n);
                s.extend((0..n).filter(|&c| d >> c & 1 == 1));
                s
            })
            .collect();
        let labels = elems.iter().map(|&d| self.render(&d)).collect();
        Ok((Lattice::from_sets(labels, &sets, limits)?, elems))
    }
}

impl SupLattice for Coend {
    type Elem = u64;

    fn bottom(&self) -> u64 {
        self.closure(0)
    }

    fn join(&self, a: &u64, b: &u64) -> u64 {
        self.closure(a | b)
    }

    fn leq(&self, a: &u64, b: &u64) -> bool {
        a & !b == 0
    }

    fn render(&self, a: &u64) -> String {
        // the smallest cells of each class keep labels short
        let mut parts = Vec::new();
        let mut covered = self.closure(0);
        for c in 0..self.cells.len() {
            if a >> c & 1 == 1 && covered >> c & 1 == 0 {
                parts.push(self.cells[c].clone());
                covered = self.closure(covered | 1 << c);
            }
        }
        if parts.is_empty() { "0".into() } else { format!("[{}]", parts.join(" ∨ ")) }
    }
}

/// Meets are intersections: closed sets are closed under them.
impl CompleteLattice for Coend {
    fn top(&self) -> u64 {
        self.full()
    }

    fn meet(&self, a: &u64, b: &u64) -> u64 {
        a & b
    }
}

/// `End^∨(T)`: cells `[C, a, b]` for site objects `C`, identified along
/// every site relation `R: X → Y` by
/// `⋁_{(y, b') ∈ TR} [X, a, y] = ⋁_{(a, x') ∈ TR} [Y, x', b']`.
#[derive(Clone, Debug)]
pub struct EndT {
    site: Site,
    coend: Coend,
}

impl EndT {
    pub fn build(site: &Site) -> Result<EndT, TannakaError> {
        let cells = site.cells().map(|(c, a, b)| format!("[{},{a},{b}]", site.names[c])).collect();
        let mut equations = Vec::new();
        for (i, r) in site.relations.iter().enumerate() {
            let (x, y) = (r.src, r.dst);
            for a in 0..site.size(x) {
                for b2 in 0..site.size(y) {
                    let lhs = (0..site.size(x)).filter(|&v| r.rel.contains(v, b2)).fold(0u64, |m, v| m | 1 << site.cell(x, a, v));
                    let rhs = r.rel.row(a).ones().fold(0u64, |m, x2| m | 1 << site.cell(y, x2, b2));
                    if lhs != rhs {
                        equations.push(Equation { name: format!("rel{i}.{a}.{b2}"), lhs, rhs });
                    }
                }
            }
        }
        Ok(EndT { site: site.clone(), coend: Coend::new(cells, equations)? })
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn coend(&self) -> &Coend {
        &self.coend
    }

    /// `[C, a, b]`.
    pub fn class(&self, c: usize, a: usize, b: usize) -> u64 {
        self.coend.class(self.site.cell(c, a, b))
    }

    pub fn cone(&self) -> Cone<u64> {
        (0..self.site.objects.len())
            .map(|c| {
                let n = self.site.size(c);
                LRel::from_fn(n, n, |a, b| self.class(c, a, b))
            })
            .collect()
    }

    /// `λ_X` for any object, through covers by site objects.
    pub fn extend(&self, x: &Object) -> Result<Extension<u64>, TannakaError> {
        extend_cone(&self.coend, &self.site, &self.cone(), x)
    }

    /// `[X, a, a'] ∧ [Y, b, b'] = λ_{X×Y}⟨(a,b), (a',b')⟩` for all site
    /// objects and `λ_1⟨*, *⟩ = 1`.
    pub fn compatibility(&self) -> Result<CompatibilityReport, TannakaError> {
        let s = &self.site;
        let l = &self.coend;
        let mut report = CompatibilityReport { checked: 0, holds: true, unit: true, witness: None };
        for x in 0..s.objects.len() {
            for y in 0..s.objects.len() {
                let xy = s.objects[x].product(&s.objects[y]);
                let ext = self.extend(&xy)?;
                let (n, m) = (s.size(x), s.size(y));
                for (a, a2, b, b2) in quads(n, m) {
                    report.checked += 1;
                    let lhs = l.meet(&self.class(x, a, a2), &self.class(y, b, b2));
                    let rhs = *ext.first.at(a * m + b, a2 * m + b2);
                    if lhs != rhs {
                        report.holds = false;
                        report.witness.get_or_insert(format!(
                            "{} ∧ {} = {} but the product cell is {}",
                            s.cell_name(x, a, a2),
                            s.cell_name(y, b, b2),
                            l.render(&lhs),
                            l.render(&rhs)
                        ));
                    }
                }
            }
        }
        match s.terminal_object() {
            Some(t) => report.unit = self.class(t, 0, 0) == l.top(),
            None => report.unit = false,
        }
        Ok(report)
    }
}

fn quads(n: usize, m: usize) -> impl Iterator<Item = (usize, usize, usize, usize)> {
    (0..n * n * m * m).map(move |i| (i / (n * m * m), i / (m * m) % n, i / m % m, i % m))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatibilityReport {
    pub checked: usize,
    pub holds: bool,
    pub unit: bool,
    pub witness: Option<String>,
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tannaka::cone::check_cone;

    fn power_set_oracle(c: &Coend) -> Vec<u64> {
        // every subset, kept when closed
        (0..1u64 << c.cells.len()).filter(|&d| c.is_closed(d)).collect()
    }

    #[test]
    fn element_search_matches_brute_force() {
        for site in Site::bundled() {
            let e = EndT::build(&site).unwrap();
            assert_eq!(e.coend().elements(&Limits::default()).unwrap(), power_set_oracle(e.coend()), "{}", site.name);
        }
    }

    #[test]
    fn bundled_sizes() {
        let size = |s: Site| EndT::build(&s).unwrap().coend().elements(&Limits::default()).unwrap().len();
        assert_eq!(size(Site::z2()), 4);
        assert_eq!(size(Site::z3()), 8);
        assert_eq!(size(Site::terminal()), 2);
        assert_eq!(size(Site::arrow()), 2);
    }

    #[test]
    fn closure_is_idempotent_and_monotone() {
        let e = EndT::build(&Site::z3()).unwrap();
        let c = e.coend();
        for d in 0..1u64 << 10 {
            let cd = c.closure(d);
            assert!(c.is_closed(cd));
            assert_eq!(c.closure(cd), cd);
            assert_eq!(d & !cd, 0);
        }
    }

    #[test]
    fn universal_cone_and_compatibility() {
        for site in [Site::z2(), Site::z3()] {
            let e = EndT::build(&site).unwrap();
            let r = check_cone(e.coend(), &site, &e.cone());
            assert!(r.bijections && r.triangle && r.diamond1 && r.diamond2 && r.diamond, "{r:?}");
            let c = e.compatibility().unwrap();
            assert!(c.holds && c.unit, "{c:?}");
        }
    }

    #[test]
    fn lattice_has_the_closed_sets() {
        let e = EndT::build(&Site::z2()).unwrap();
        let (l, elems) = e.coend().lattice(&Limits::default()).unwrap();
        assert_eq!(l.size(), 4);
        assert_eq!(elems[0], 0);
        assert_eq!(*elems.last().unwrap(), 0b11111);
    }
}
