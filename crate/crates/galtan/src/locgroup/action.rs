use super::{DiscreteGroup, LocGroupError};
use crate::lrel::{axioms, check_triangle, restrict, AxiomReport, DiagramReport, LRel};
use crate::suplat::{all_functions, Elem, FinFn, Limits, Relation};
use fixedbitset::FixedBitSet;

/// An action of `ℓ(G₀)` on `{0..n}`: `μ⟨a|b⟩ = {g : a·g = b}`, for right
/// actions `(a·g)·h = a·(gh)` so that `wμ = (μ⊗μ)w` with `w(U) = {(g,h) : gh ∈ U}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionMu {
    pub group: DiscreteGroup,
    pub table: LRel<Elem>,
}

impl ActionMu {
    pub fn size(&self) -> usize {
        self.table.nx
    }

    pub fn at(&self, a: usize, b: usize) -> u64 {
        self.table.at(a, b).0 as u64
    }

    /// From a classical right action given as `act[a][g] = a·g`.
    pub fn from_classical(group: &DiscreteGroup, act: &[Vec<usize>]) -> ActionMu {
        let n = act.len();
        let table = LRel::from_fn(n, n, |a, b| {
            Elem((0..group.order()).filter(|&g| act[a][g] == b).fold(0, |acc, g| acc | 1 << g))
        });
        ActionMu { group: group.clone(), table }
    }

    /// The trivial action on `{0..n}`.
    pub fn trivial(group: &DiscreteGroup, n: usize) -> ActionMu {
        ActionMu::from_classical(group, &(0..n).map(|a| vec![a; group.order()]).collect::<Vec<_>>())
    }

    /// The action of `G₀` on itself by right multiplication.
    pub fn regular(group: &DiscreteGroup) -> ActionMu {
        let k = group.order();
        ActionMu::from_classical(group, &(0..k).map(|a| (0..k).map(|g| group.mul(a, g)).collect()).collect::<Vec<_>>())
    }

    /// `a·g`, defined when the table is an ℓ-function.
    pub fn apply(&self, a: usize, g: usize) -> Option<usize> {
        (0..self.size()).find(|&b| self.at(a, b) >> g & 1 == 1)
    }
}

/// Outcome of [`is_action`]. Each equation witness is the first `(a, b)`
/// where it fails.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ActionReport {
    pub axioms: AxiomReport,
    pub comultiplication: Option<(usize, usize)>,
    pub counit: Option<(usize, usize)>,
    pub antipode: Option<(usize, usize)>,
}

impl ActionReport {
    pub fn is_monoid_action(&self) -> bool {
        self.comultiplication.is_none() && self.counit.is_none()
    }

    pub fn is_action(&self) -> bool {
        self.axioms.is_bijection() && self.is_monoid_action() && self.antipode.is_none()
    }
}

/// `wμ = (μ⊗μ)w`, `eμ = e`, `μι = ιμ` and the ℓ-bijection axioms.
pub fn is_action(group: &DiscreteGroup, table: &LRel<Elem>) -> ActionReport {
    let l = group.lattice();
    let n = table.nx;
    let k = group.order();
    let at = |a: usize, b: usize| table.at(a, b).0 as u64;
    let mut report = ActionReport { axioms: axioms(&l, table), comultiplication: None, counit: None, antipode: None };
    for a in 0..n {
        for b in 0..n {
            if report.comultiplication.is_none() {
                let lhs = group.comultiply(at(a, b));
                let mut rhs = FixedBitSet::with_capacity(k * k);
                for c in 0..n {
                    for g in (0..k).filter(|&g| at(a, c) >> g & 1 == 1) {
                        for h in (0..k).filter(|&h| at(c, b) >> h & 1 == 1) {
                            rhs.insert(g * k + h);
                        }
                    }
                }
                if lhs != rhs {
                    report.comultiplication = Some((a, b));
                }
            }
            if report.counit.is_none() && group.counit(at(a, b)) != (a == b) {
                report.counit = Some((a, b));
            }
            if report.antipode.is_none() && group.antipode(at(a, b)) != at(b, a) {
                report.antipode = Some((a, b));
            }
        }
    }
    report
}

/// Every action of `ℓ(G₀)` on `{0..n}`, enumerated as ℓ-functions (each row
/// a map `g ↦ a·g`) filtered by the action equations.
pub fn actions(group: &DiscreteGroup, n: usize, limits: &Limits) -> Result<Vec<ActionMu>, LocGroupError> {
    let k = group.order();
    let count = (n as u128).pow((k * n) as u32);
    if count > limits.max_steps as u128 {
        return Err(LocGroupError::TooLarge { size: count.min(usize::MAX as u128) as usize, bound: limits.max_steps });
    }
    let mut out = Vec::new();
    for code in 0..count as usize {
        let mut c = code;
        let act: Vec<Vec<usize>> = (0..n)
            .map(|_| {
                (0..k)
                    .map(|_| {
                        let v = c % n;
                        c /= n;
                        v
                    })
                    .collect()
            })
            .collect();
        let mu = ActionMu::from_classical(group, &act);
        if is_action(group, &mu.table).is_action() {
            out.push(mu);
        }
    }
    Ok(out)
}

/// Exhaustive search of arbitrary tables `X × X → ℓ(G₀)` for `|X| ≤ bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonoidReport {
    pub tables: u64,
    pub monoid_actions: u64,
    /// Monoid actions that are not ℓ-bijections or break `μι = ιμ`.
    pub failures: Vec<LRel<Elem>>,
}

impl MonoidReport {
    pub fn holds(&self) -> bool {
        self.failures.is_empty()
    }
}

pub fn monoid_implies_group(group: &DiscreteGroup, bound: usize, limits: &Limits) -> Result<MonoidReport, LocGroupError> {
    let vals = 1u64 << group.order();
    let mut report = MonoidReport { tables: 0, monoid_actions: 0, failures: Vec::new() };
    for n in 0..=bound {
        let count = (vals as u128).pow((n * n) as u32);
        if count > limits.max_steps as u128 {
            return Err(LocGroupError::TooLarge { size: count.min(usize::MAX as u128) as usize, bound: limits.max_steps });
        }
        for code in 0..count as u64 {
            let mut c = code;
            let cells = (0..n * n)
                .map(|_| {
                    let v = c % vals;
                    c /= vals;
                    Elem(v as u32)
                })
                .collect();
            let table = LRel::new(n, n, cells);
            report.tables += 1;
            let r = is_action(group, &table);
            if r.is_monoid_action() {
                report.monoid_actions += 1;
                if !r.is_action() {
                    report.failures.push(table);
                }
            }
        }
    }
    Ok(report)
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismReport {
    pub triangle: DiagramReport,
    /// `μ'⟨f a|f b⟩ = ⋁_{f x = f b} μ⟨a|x⟩`; first failing `(a, b)`.
    pub transport: Option<(usize, usize)>,
    /// For injective `f`: `μ'⟨f a|f b⟩ = μ⟨a|b⟩`; first failing `(a, b)`.
    pub exact: Option<(usize, usize)>,
}

impl MorphismReport {
    pub fn is_morphism(&self) -> bool {
        self.triangle.holds
    }
}

pub fn is_gset_morphism(f: &FinFn, mu: &ActionMu, mu2: &ActionMu) -> MorphismReport {
    let l = mu.group.lattice();
    let triangle = check_triangle(&l, f, f, &mu.table, &mu2.table);
    let n = mu.size();
    let mut transport = None;
    let mut exact = None;
    for a in 0..n {
        for b in 0..n {
            let lhs = mu2.at(f.apply(a), f.apply(b));
            let rhs = (0..n).filter(|&x| f.apply(x) == f.apply(b)).fold(0, |acc, x| acc | mu.at(a, x));
            if lhs != rhs && transport.is_none() {
                transport = Some((a, b));
            }
            if f.is_injective() && lhs != mu.at(a, b) && exact.is_none() {
                exact = Some((a, b));
            }
        }
    }
    MorphismReport { triangle, transport, exact }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RelationReport {
    /// Axioms of the restriction of `μ ⊠ μ'` to `R × R`.
    pub axioms: AxiomReport,
    /// When the restriction is an ℓ-bijection: whether it is also an action.
    pub action: Option<bool>,
}

impl RelationReport {
    pub fn is_relation(&self) -> bool {
        self.axioms.is_bijection()
    }
}

pub fn is_gset_relation(r: &Relation, mu: &ActionMu, mu2: &ActionMu) -> RelationReport {
    let l = mu.group.lattice();
    let theta = restrict(&l, &mu.table, &mu2.table, r, r);
    let ax = axioms(&l, &theta);
    let action = ax.is_bijection().then(|| is_action(&mu.group, &theta).is_action());
    RelationReport { axioms: ax, action }
}

/// `β^G` up to a carrier bound: every action on `{0..n}` for `n ≤ bound`.
#[derive(Clone, Debug)]
pub struct BetaG {
    pub group: DiscreteGroup,
    pub objects: Vec<ActionMu>,
}

impl BetaG {
    pub fn new(group: &DiscreteGroup, bound: usize, limits: &Limits) -> Result<BetaG, LocGroupError> {
        let mut objects = Vec::new();
        for n in 0..=bound {
            objects.extend(actions(group, n, limits)?);
        }
        Ok(BetaG { group: group.clone(), objects })
    }

    pub fn objects_of_size(&self, n: usize) -> impl Iterator<Item = (usize, &ActionMu)> {
        self.objects.iter().enumerate().filter(move |(_, o)| o.size() == n)
    }

    /// Equivariant maps between two objects.
    pub fn morphisms(&self, i: usize, j: usize) -> Vec<FinFn> {
        let (a, b) = (&self.objects[i], &self.objects[j]);
        all_functions(a.size(), b.size()).filter(|f| is_gset_morphism(f, a, b).is_morphism()).collect()
    }

    /// Relations `R ⊆ X × X'` whose restricted product is an ℓ-bijection.
    pub fn relations(&self, i: usize, j: usize) -> Vec<Relation> {
        gset_relations(&self.objects[i], &self.objects[j])
    }
}

/// Every `R ⊆ X × Y` passing [`is_gset_relation`], in increasing mask
/// order. Only unions of orbits of `(x, y)·g = (x·g, y·g)` are tried.
pub fn gset_relations(a: &ActionMu, b: &ActionMu) -> Vec<Relation> {
    let (n, m) = (a.size(), b.size());
    let order = a.group.order();
    let mut orbit_of = vec![usize::MAX; n * m];
    let mut orbits: Vec<u64> = Vec::new();
    for start in 0..n * m {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let (x, y) = (start / m, start % m);
        let mut mask = 0u64;
        for g in 0..order {
            let (Some(xg), Some(yg)) = (a.apply(x, g), b.apply(y, g)) else { continue };
            orbit_of[xg * m + yg] = orbits.len();
            mask |= 1 << (xg * m + yg);
        }
        orbit_of[start] = orbits.len();
        orbits.push(mask | 1 << start);
    }
    let mut masks: Vec<u64> = (0u64..1 << orbits.len())
        .map(|pick| orbits.iter().enumerate().filter(|(k, _)| pick >> k & 1 == 1).fold(0, |acc, (_, o)| acc | o))
        .collect();
    masks.sort_unstable();
    masks.dedup();
    masks.into_iter().map(|mask| Relation::from_mask(n, m, mask)).filter(|r| is_gset_relation(r, a, b).is_relation()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locgroup::group::permutations;

    /// Right actions as maps `g ↦ σ_g` with `σ_{gh} = σ_h ∘ σ_g`.
    fn classical_actions(group: &DiscreteGroup, n: usize) -> usize {
        let perms = permutations(n);
        let k = group.order();
        let mut count = 0;
        let mut choice = vec![0usize; k];
        loop {
            let ok = (0..k).all(|g| {
                (0..k).all(|h| {
                    let gh = group.mul(g, h);
                    (0..n).all(|a| perms[choice[gh]][a] == perms[choice[h]][perms[choice[g]][a]])
                })
            });
            count += ok as usize;
            let mut i = 0;
            while i < k {
                choice[i] += 1;
                if choice[i] < perms.len() {
                    break;
                }
                choice[i] = 0;
                i += 1;
            }
            if i == k {
                return count;
            }
        }
    }

    #[test]
    fn action_counts_match_homomorphisms() {
        for group in [DiscreteGroup::trivial(), DiscreteGroup::cyclic(2), DiscreteGroup::cyclic(3), DiscreteGroup::symmetric(3)] {
            for n in 1..=3 {
                if (n as u128).pow((group.order() * n) as u32) > 1 << 20 {
                    continue;
                }
                let ours = actions(&group, n, &Limits::default()).unwrap().len();
                assert_eq!(ours, classical_actions(&group, n), "order {} on {n}", group.order());
            }
        }
    }

    #[test]
    fn regular_and_trivial_are_actions() {
        let z2 = DiscreteGroup::cyclic(2);
        assert!(is_action(&z2, &ActionMu::regular(&z2).table).is_action());
        assert!(is_action(&z2, &ActionMu::trivial(&z2, 1).table).is_action());
        let s3 = DiscreteGroup::symmetric(3);
        assert!(is_action(&s3, &ActionMu::regular(&s3).table).is_action());
    }

    #[test]
    fn constant_top_is_rejected() {
        let z2 = DiscreteGroup::cyclic(2);
        let r = is_action(&z2, &LRel::new(2, 2, vec![Elem(3); 4]));
        assert!(!r.axioms.uv());
        assert!(!r.is_action());
    }

    #[test]
    fn orbit_unions_are_all_relations() {
        for (group, bound) in [(DiscreteGroup::cyclic(2), 3), (DiscreteGroup::cyclic(3), 3), (DiscreteGroup::symmetric(3), 2)] {
            let mut objs = Vec::new();
            for n in 0..=bound {
                objs.extend(actions(&group, n, &Limits::default()).unwrap());
            }
            for a in &objs {
                for b in &objs {
                    let brute: Vec<Relation> = (0u64..1 << (a.size() * b.size()))
                        .map(|m| Relation::from_mask(a.size(), b.size(), m))
                        .filter(|r| is_gset_relation(r, a, b).is_relation())
                        .collect();
                    assert_eq!(gset_relations(a, b), brute);
                }
            }
        }
    }

    #[test]
    fn monoid_actions_are_group_actions() {
        let z2 = DiscreteGroup::cyclic(2);
        let r = monoid_implies_group(&z2, 2, &Limits::default()).unwrap();
        assert!(r.holds());
        assert_eq!(r.monoid_actions, 1 + 1 + 2);
        // over the trivial group the only solution is the diagonal
        let t = monoid_implies_group(&DiscreteGroup::trivial(), 3, &Limits::default()).unwrap();
        assert!(t.holds());
        assert_eq!(t.monoid_actions, 4);
    }

    #[test]
    fn quotient_to_point_is_a_morphism() {
        let z2 = DiscreteGroup::cyclic(2);
        let reg = ActionMu::regular(&z2);
        let pt = ActionMu::trivial(&z2, 1);
        let r = is_gset_morphism(&FinFn::to_point(2), &reg, &pt);
        assert!(r.is_morphism());
        assert_eq!(r.transport, None);
        assert_eq!(pt.at(0, 0), 0b11);
    }

    #[test]
    fn identity_is_exact() {
        let z2 = DiscreteGroup::cyclic(2);
        let reg = ActionMu::regular(&z2);
        let r = is_gset_morphism(&FinFn::identity(2), &reg, &reg);
        assert!(r.is_morphism() && r.transport.is_none() && r.exact.is_none());
    }

    #[test]
    fn diagonal_is_a_relation_and_a_point_is_not() {
        let z2 = DiscreteGroup::cyclic(2);
        let reg = ActionMu::regular(&z2);
        let diag = Relation::diagonal(2);
        let r = is_gset_relation(&diag, &reg, &reg);
        assert!(r.is_relation());
        assert_eq!(r.action, Some(true));
        let single = Relation::from_pairs(2, 2, [(0, 0)]);
        assert!(!is_gset_relation(&single, &reg, &reg).is_relation());
    }

    #[test]
    fn beta_z2_counts() {
        let b = BetaG::new(&DiscreteGroup::cyclic(2), 3, &Limits::default()).unwrap();
        let counts: Vec<usize> = (1..=3).map(|n| b.objects_of_size(n).count()).collect();
        assert_eq!(counts, vec![1, 2, 4]);
    }
}
