//! Comodules `ρ: ℓX → ℓG₀ ⊗ ℓX` over discrete localic groups, stored by
//! their values on singletons in `ℓ(G₀ × X)`, and the correspondence between
//! comodules and G-sets.

use crate::locgroup::{is_gset_relation, ActionMu, BetaG, DiscreteGroup, LocGroupError};
use crate::lrel::{check_diamond, LRel};
use crate::suplat::{linmap_to_relation, relation_to_linmap, tensor, Elem, Lattice, Limits, LinMap, Relation, SupError};
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComoduleError {
    #[error("|G| * |X| = {0} does not fit the 64-bit cell encoding")]
    TooWide(usize),
    #[error("search space of {size} exceeds the bound {bound}")]
    TooLarge { size: u128, bound: usize },
    #[error(transparent)]
    Group(#[from] LocGroupError),
    #[error(transparent)]
    Lattice(#[from] SupError),
}

/// `rho[b]` is `ρ({b})` as a subset of `G₀ × X`, bit `g * |X| + x`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Comodule {
    pub size: usize,
    pub rho: Vec<u64>,
}

impl Comodule {
    fn cell(&self, g: usize, x: usize) -> u64 {
        1 << (g * self.size + x)
    }

    fn has(&self, b: usize, g: usize, x: usize) -> bool {
        self.rho[b] & self.cell(g, x) != 0
    }

    /// Renders `ρ({b})` as a join of pure tensors `{g}⊗{x}`.
    pub fn render(&self, group: &DiscreteGroup, b: usize) -> String {
        let k = group.order();
        let terms: Vec<String> = (0..k)
            .flat_map(|g| (0..self.size).map(move |x| (g, x)))
            .filter(|&(g, x)| self.has(b, g, x))
            .map(|(g, x)| format!("{{{}}}⊗{{{x}}}", group.names()[g]))
            .collect();
        if terms.is_empty() {
            "0".into()
        } else {
            terms.join(" ∨ ")
        }
    }
}

fn check_width(group: &DiscreteGroup, n: usize) -> Result<(), ComoduleError> {
    if group.order() * n > 64 {
        return Err(ComoduleError::TooWide(group.order() * n));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoactionReport {
    /// First singleton where `(G⊗ρ)ρ ≠ (w⊗ℓX)ρ`.
    pub coassociativity: Option<usize>,
    /// First singleton where `(e⊗ℓX)ρ` is not the singleton itself.
    pub counit: Option<usize>,
}

impl CoactionReport {
    pub fn holds(&self) -> bool {
        self.coassociativity.is_none() && self.counit.is_none()
    }
}

/// Both coaction laws on singleton generators, with `ℓG₀ ⊗ ℓG₀ ⊗ ℓX`
/// represented as subsets of `G₀ × G₀ × X`.
pub fn is_coaction(group: &DiscreteGroup, c: &Comodule) -> CoactionReport {
    let k = group.order();
    let n = c.size;
    let mut report = CoactionReport { coassociativity: None, counit: None };
    for b in 0..n {
        let mut lhs = vec![false; k * k * n];
        let mut rhs = vec![false; k * k * n];
        for g in 0..k {
            for x in (0..n).filter(|&x| c.has(b, g, x)) {
                for h in 0..k {
                    for y in (0..n).filter(|&y| c.has(x, h, y)) {
                        lhs[(g * k + h) * n + y] = true;
                    }
                }
            }
            for h in 0..k {
                for x in 0..n {
                    if c.has(b, group.mul(g, h), x) {
                        rhs[(g * k + h) * n + x] = true;
                    }
                }
            }
        }
        if lhs != rhs && report.coassociativity.is_none() {
            report.coassociativity = Some(b);
        }
        let e = group.identity();
        if (0..n).any(|x| c.has(b, e, x) != (x == b)) && report.counit.is_none() {
            report.counit = Some(b);
        }
    }
    report
}

/// `ρ({b}) = ⋁_x μ⟨b|x⟩ ⊗ {x}`.
pub fn mu_to_rho(mu: &ActionMu) -> Comodule {
    let n = mu.size();
    let k = mu.group.order();
    let rho = (0..n)
        .map(|b| {
            (0..n)
                .flat_map(|x| (0..k).map(move |g| (g, x)))
                .filter(|&(g, x)| mu.at(b, x) >> g & 1 == 1)
                .fold(0, |acc, (g, x)| acc | 1 << (g * n + x))
        })
        .collect();
    Comodule { size: n, rho }
}

/// `μ = (G ⊗ ε) ∘ (ρ ⊗ ℓX)`: `μ⟨a|b⟩ = {g : {g}⊗{b} ≤ ρ({a})}`.
pub fn rho_to_mu(group: &DiscreteGroup, c: &Comodule) -> ActionMu {
    let k = group.order();
    let table = LRel::from_fn(c.size, c.size, |a, b| {
        Elem((0..k).filter(|&g| c.has(a, g, b)).fold(0, |acc, g| acc | 1 << g))
    });
    ActionMu { group: group.clone(), table }
}

/// Every coaction on `{0..n}`. The counit fixes the identity slice of each
/// `ρ({b})`, so only the other `|G₀| - 1` slices are enumerated.
pub fn coactions(group: &DiscreteGroup, n: usize, limits: &Limits) -> Result<Vec<Comodule>, ComoduleError> {
    check_width(group, n)?;
    let k = group.order();
    let e = group.identity();
    let free: Vec<(usize, usize)> = (0..k).filter(|&g| g != e).flat_map(|g| (0..n).map(move |x| (g, x))).collect();
    let per_row = free.len();
    let total = 1u128 << (per_row * n).min(127);
    if total > limits.max_steps as u128 {
        return Err(ComoduleError::TooLarge { size: total, bound: limits.max_steps });
    }
    let mut out = Vec::new();
    for code in 0..total as u64 {
        let rho = (0..n)
            .map(|b| {
                let bits = code >> (b * per_row);
                free.iter().enumerate().filter(|(i, _)| bits >> i & 1 == 1).fold(1u64 << (e * n + b), |acc, (_, &(g, x))| {
                    acc | 1 << (g * n + x)
                })
            })
            .collect();
        let c = Comodule { size: n, rho };
        if is_coaction(group, &c).holds() {
            out.push(c);
        }
    }
    Ok(out)
}

/// The square `ρ' ∘ R = (G ⊗ R) ∘ ρ`, evaluated on singletons.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MorphismVerdicts {
    pub square: bool,
    pub diamond: bool,
    pub gset_relation: bool,
    /// First singleton where the square fails.
    pub witness: Option<usize>,
}

impl MorphismVerdicts {
    pub fn agree(&self) -> bool {
        self.square == self.diamond && self.diamond == self.gset_relation
    }
}

pub fn is_comodule_morphism(group: &DiscreteGroup, r: &Relation, c: &Comodule, c2: &Comodule) -> MorphismVerdicts {
    let k = group.order();
    let (n, n2) = (c.size, c2.size);
    let mut witness = None;
    for b in 0..n {
        let lhs = r.row(b).ones().fold(0u64, |acc, x2| acc | c2.rho[x2]);
        let mut rhs = 0u64;
        for g in 0..k {
            for x in (0..n).filter(|&x| c.has(b, g, x)) {
                for x2 in r.row(x).ones() {
                    rhs |= 1 << (g * n2 + x2);
                }
            }
        }
        if lhs != rhs {
            witness = Some(b);
            break;
        }
    }
    let (mu, mu2) = (rho_to_mu(group, c), rho_to_mu(group, c2));
    let diamond = check_diamond(&group.lattice(), r, r, &mu.table, &mu2.table).holds;
    let gset_relation = is_gset_relation(r, &mu, &mu2).is_relation();
    MorphismVerdicts { square: witness.is_none(), diamond, gset_relation, witness }
}

/// The optimized representation `ℓ(G₀ × X)` against the tensor product
/// `ℓG₀ ⊗ ℓX`: `U ↦ ⋁_{(g,x) ∈ U} {g}⊗{x}` must be an order isomorphism.
pub fn tensor_representation_agrees(group: &DiscreteGroup, n: usize, limits: &Limits) -> Result<bool, ComoduleError> {
    check_width(group, n)?;
    let k = group.order();
    let t = tensor(&group.lattice(), &Lattice::power(n), limits)?;
    let cells = k * n;
    if t.lattice().size() != 1 << cells {
        return Ok(false);
    }
    let image = |u: u64| {
        (0..cells)
            .filter(|i| u >> i & 1 == 1)
            .map(|i| t.pure(Elem(1 << (i / n)), Elem(1 << (i % n))))
            .fold(t.lattice().bottom(), |acc, p| t.lattice().join(acc, p))
    };
    let images: Vec<Elem> = (0..1u64 << cells).map(image).collect();
    let mut sorted = images.clone();
    sorted.sort();
    sorted.dedup();
    let monotone = (0..1u64 << cells).all(|u| (0..cells).all(|i| t.lattice().leq(images[u as usize], images[(u | 1 << i) as usize])));
    Ok(sorted.len() == images.len() && monotone)
}

/// Outcome of comparing comodules on power lattices with relations of G-sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorrespondenceReport {
    /// `(n, coactions on n, actions on n)`.
    pub objects: Vec<(usize, usize, usize)>,
    pub objects_biject: bool,
    pub round_trips: bool,
    pub hom_pairs: usize,
    pub homs_agree: bool,
    pub identities: bool,
    pub composition: bool,
    pub triangle_commutes: bool,
    pub tensor_representation: bool,
    pub witness: Option<String>,
}

impl CorrespondenceReport {
    pub fn holds(&self) -> bool {
        self.objects_biject
            && self.round_trips
            && self.homs_agree
            && self.identities
            && self.composition
            && self.triangle_commutes
            && self.tensor_representation
    }
}

/// Builds both categories up to `bound`, matches objects through
/// `mu_to_rho` and morphisms through their underlying relations.
pub fn iso_cmd_rel(group: &DiscreteGroup, bound: usize, limits: &Limits) -> Result<CorrespondenceReport, ComoduleError> {
    let beta = BetaG::new(group, bound, limits)?;
    let mut report = CorrespondenceReport {
        objects: Vec::new(),
        objects_biject: true,
        round_trips: true,
        hom_pairs: 0,
        homs_agree: true,
        identities: true,
        composition: true,
        triangle_commutes: true,
        tensor_representation: tensor_representation_agrees(group, bound.min(3), limits)?,
        witness: None,
    };
    let mut cmd: Vec<Comodule> = Vec::new();
    for n in 0..=bound {
        let mut ours = coactions(group, n, limits)?;
        let theirs: Vec<&ActionMu> = beta.objects_of_size(n).map(|(_, a)| a).collect();
        report.objects.push((n, ours.len(), theirs.len()));
        let mut translated: Vec<Comodule> = theirs.iter().map(|a| mu_to_rho(a)).collect();
        translated.sort();
        ours.sort();
        if translated != ours {
            report.objects_biject = false;
            report.witness.get_or_insert(format!("carrier {n}: coactions and translated actions differ"));
        }
        for a in &theirs {
            if rho_to_mu(group, &mu_to_rho(a)) != **a {
                report.round_trips = false;
                report.witness.get_or_insert(format!("carrier {n}: action does not round-trip"));
            }
        }
        for c in &ours {
            if mu_to_rho(&rho_to_mu(group, c)) != *c {
                report.round_trips = false;
                report.witness.get_or_insert(format!("carrier {n}: coaction does not round-trip"));
            }
        }
    }
    // objects of β^G in order, with their comodules
    for a in &beta.objects {
        cmd.push(mu_to_rho(a));
    }
    let m = beta.objects.len();
    let mut homs: Vec<Vec<Vec<Relation>>> = vec![vec![Vec::new(); m]; m];
    for i in 0..m {
        for j in 0..m {
            let (ci, cj) = (&cmd[i], &cmd[j]);
            let cells = ci.size * cj.size;
            let cmd_hom: Vec<Relation> = (0u64..1 << cells)
                .map(|mask| Relation::from_mask(ci.size, cj.size, mask))
                .filter(|r| is_comodule_morphism(group, r, ci, cj).square)
                .collect();
            let rel_hom = beta.relations(i, j);
            report.hom_pairs += 1;
            if cmd_hom != rel_hom {
                report.homs_agree = false;
                report.witness.get_or_insert(format!("objects {i} and {j}: {} vs {} morphisms", cmd_hom.len(), rel_hom.len()));
            }
            // T sends R to the linear map ℓX → ℓX'; Rel(F) forgets to R itself
            for r in &cmd_hom {
                let t_image: LinMap = relation_to_linmap(r);
                if linmap_to_relation(&t_image).ok().as_ref() != Some(r) {
                    report.triangle_commutes = false;
                    report.witness.get_or_insert(format!("objects {i} and {j}: forgetful images differ"));
                }
            }
            homs[i][j] = cmd_hom;
        }
        if !homs[i][i].contains(&Relation::diagonal(cmd[i].size)) {
            report.identities = false;
            report.witness.get_or_insert(format!("object {i}: identity missing"));
        }
    }
    'compose: for i in 0..m {
        for j in 0..m {
            for k in 0..m {
                for r in &homs[i][j] {
                    for s in &homs[j][k] {
                        if !homs[i][k].contains(&r.then(s)) {
                            report.composition = false;
                            report.witness.get_or_insert(format!("objects {i}, {j}, {k}: composite missing"));
                            break 'compose;
                        }
                    }
                }
            }
        }
    }
    Ok(report)
}

/// Runs the three verdicts on every relation between every pair of actions
/// with carriers up to `bound`; returns `(checked, disagreements)`.
pub fn morphism_equivalence(group: &DiscreteGroup, bound: usize, limits: &Limits) -> Result<(u64, Vec<String>), ComoduleError> {
    let beta = BetaG::new(group, bound, limits)?;
    let mut checked = 0;
    let mut bad = Vec::new();
    for a in &beta.objects {
        for b in &beta.objects {
            let (ca, cb) = (mu_to_rho(a), mu_to_rho(b));
            for mask in 0u64..1 << (a.size() * b.size()) {
                let r = Relation::from_mask(a.size(), b.size(), mask);
                let v = is_comodule_morphism(group, &r, &ca, &cb);
                checked += 1;
                if !v.agree() {
                    bad.push(format!("{:?} between carriers {} and {}: {v:?}", r.pairs().collect::<Vec<_>>(), a.size(), b.size()));
                }
            }
        }
    }
    Ok((checked, bad))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locgroup::actions;

    #[test]
    fn trivial_coaction_over_trivial_group() {
        let t = DiscreteGroup::trivial();
        for n in 0..4 {
            let cs = coactions(&t, n, &Limits::default()).unwrap();
            assert_eq!(cs.len(), 1);
            assert_eq!(cs[0].rho, (0..n).map(|b| 1 << b).collect::<Vec<_>>());
        }
    }

    #[test]
    fn regular_z2_coaction() {
        let z2 = DiscreteGroup::cyclic(2);
        let c = mu_to_rho(&ActionMu::regular(&z2));
        assert!(is_coaction(&z2, &c).holds());
        assert_eq!(c.render(&z2, 0), "{e}⊗{0} ∨ {g}⊗{1}");
        assert_eq!(c.render(&z2, 1), "{e}⊗{1} ∨ {g}⊗{0}");
    }

    #[test]
    fn perturbed_coaction_names_generator() {
        let z2 = DiscreteGroup::cyclic(2);
        let mut c = mu_to_rho(&ActionMu::regular(&z2));
        // add {g}⊗{1} to ρ({1}); ρ({0}) sees it through g·0 = 1
        c.rho[1] |= 1 << 3;
        let r = is_coaction(&z2, &c);
        assert_eq!(r.counit, None);
        assert_eq!(r.coassociativity, Some(0));
    }

    #[test]
    fn round_trips_for_small_groups() {
        for g in [DiscreteGroup::trivial(), DiscreteGroup::cyclic(2), DiscreteGroup::cyclic(3)] {
            for n in 0..=3 {
                for a in actions(&g, n, &Limits::default()).unwrap() {
                    let c = mu_to_rho(&a);
                    assert!(is_coaction(&g, &c).holds());
                    assert_eq!(rho_to_mu(&g, &c), a);
                }
            }
        }
    }

    #[test]
    fn three_verdicts_agree() {
        let (checked, bad) = morphism_equivalence(&DiscreteGroup::cyclic(2), 2, &Limits::default()).unwrap();
        assert!(checked > 0);
        assert!(bad.is_empty(), "{bad:?}");
    }

    #[test]
    fn equivariant_graph_is_a_morphism() {
        let z2 = DiscreteGroup::cyclic(2);
        let reg = mu_to_rho(&ActionMu::regular(&z2));
        let swap = Relation::from_pairs(2, 2, [(0, 1), (1, 0)]);
        let v = is_comodule_morphism(&z2, &swap, &reg, &reg);
        assert!(v.square && v.diamond && v.gset_relation);
        let v = is_comodule_morphism(&z2, &Relation::diagonal(2), &reg, &reg);
        assert!(v.square);
    }

    #[test]
    fn tensor_representation_small() {
        assert!(tensor_representation_agrees(&DiscreteGroup::cyclic(2), 2, &Limits::default()).unwrap());
    }

    #[test]
    fn correspondence_z2() {
        let r = iso_cmd_rel(&DiscreteGroup::cyclic(2), 2, &Limits::default()).unwrap();
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.objects, vec![(0, 1, 1), (1, 1, 1), (2, 2, 2)]);
    }
}
