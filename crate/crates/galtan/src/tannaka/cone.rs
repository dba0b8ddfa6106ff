use super::model::{Object, Site};
use super::TannakaError;
use crate::lrel::{axioms, check_diamond, check_diamond1, check_diamond2, check_triangle, DiagramReport, LRel};
use crate::suplat::CompleteLattice;

/// A cone on a site: one table `λ_C: F C × F C → H` per site object.
pub type Cone<E> = Vec<LRel<E>>;

/// Which cone conditions hold, along every site arrow (`▷`, `◇₁`, `◇₂`)
/// and every site relation (`◇`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConeReport {
    pub bijections: bool,
    pub triangle: bool,
    pub diamond1: bool,
    pub diamond2: bool,
    pub diamond: bool,
    pub witness: Option<String>,
}

pub fn check_cone<L: CompleteLattice>(l: &L, site: &Site, cone: &Cone<L::Elem>) -> ConeReport {
    let mut witness = None;
    let bijections = cone.iter().enumerate().all(|(c, lam)| {
        let ok = axioms(l, lam).is_bijection();
        if !ok && witness.is_none() {
            witness = Some(format!("λ at {} is not an ℓ-bijection", site.names[c]));
        }
        ok
    });
    let mut note = |what: &str, r: DiagramReport| {
        if let (false, None) = (r.holds, &witness) {
            witness = Some(format!("{what}: {}", r.witness.map(|w| w.to_string()).unwrap_or_default()));
        }
        r.holds
    };
    let mut flags = [true; 4];
    for (i, f) in site.arrows.iter().enumerate() {
        let (lx, ly) = (&cone[f.src], &cone[f.dst]);
        flags[0] &= note(&format!("triangle along arrow {i}"), check_triangle(l, &f.map, &f.map, lx, ly));
        flags[1] &= note(&format!("diamond1 along arrow {i}"), check_diamond1(l, &f.map, &f.map, lx, ly));
        flags[2] &= note(&format!("diamond2 along arrow {i}"), check_diamond2(l, &f.map, &f.map, lx, ly));
    }
    for (i, r) in site.relations.iter().enumerate() {
        flags[3] &= note(&format!("diamond along relation {i}"), check_diamond(l, &r.rel, &r.rel, &cone[r.src], &cone[r.dst]));
    }
    let [triangle, diamond1, diamond2, diamond] = flags;
    ConeReport { bijections, triangle, diamond1, diamond2, diamond, witness }
}

/// A cone component on an object outside the site, computed both ways.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Extension<E> {
    /// Through covers of the first coordinate.
    pub first: LRel<E>,
    /// Through covers of the second coordinate.
    pub second: LRel<E>,
    /// Every cover gives the same `first` (resp. `second`).
    pub independent: bool,
    pub witness: Option<String>,
}

impl<E: PartialEq> Extension<E> {
    pub fn agree(&self) -> bool {
        self.independent && self.first == self.second
    }
}

/// Extends a cone to `x` through arrows `f: C → x` from site objects:
/// `λ_x⟨a, b⟩ = ⋁_{F f (y) = b} λ_C⟨c, y⟩` for any `c` with `F f (c) = a`,
/// and symmetrically through the second coordinate.
pub fn extend_cone<L: CompleteLattice>(
    l: &L,
    site: &Site,
    cone: &Cone<L::Elem>,
    x: &Object,
) -> Result<Extension<L::Elem>, TannakaError> {
    let n = x.fiber();
    let covers = site.covers(x);
    let mut first: Vec<Option<L::Elem>> = vec![None; n * n];
    let mut second: Vec<Option<L::Elem>> = vec![None; n * n];
    let mut independent = true;
    let mut witness = None;
    let mut record = |slot: &mut Option<L::Elem>, v: L::Elem, at: String| match slot {
        None => *slot = Some(v),
        Some(old) if *old != v => {
            independent = false;
            witness.get_or_insert(at);
        }
        _ => {}
    };
    for cov in &covers {
        let lam = &cone[cov.obj];
        let f = &cov.map;
        for c in 0..f.dom() {
            let a = f.apply(c);
            for b in 0..n {
                let one = l.join_all(f.fiber(b).map(|y| lam.at(c, y).clone()));
                record(&mut first[a * n + b], one, format!("first formula at ({a}, {b}) via {}", site.names[cov.obj]));
                let two = l.join_all(f.fiber(b).map(|y| lam.at(y, c).clone()));
                record(&mut second[b * n + a], two, format!("second formula at ({b}, {a}) via {}", site.names[cov.obj]));
            }
        }
    }
    let finish = |cells: Vec<Option<L::Elem>>| -> Result<LRel<L::Elem>, TannakaError> {
        let table = cells
            .into_iter()
            .enumerate()
            .map(|(i, v)| v.ok_or_else(|| TannakaError::NotCovered { site: site.name.clone(), element: i / n.max(1) }))
            .collect::<Result<Vec<_>, _>>()?;
        Ok(LRel::new(n, n, table))
    };
    Ok(Extension { first: finish(first)?, second: finish(second)?, independent, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locgroup::DiscreteGroup;
    use crate::suplat::Elem;

    /// `λ_C⟨a, b⟩ = {g : a·g = b}` in `ℓ(G₀)`.
    fn action_cone(site: &Site) -> Cone<Elem> {
        let k = site.model.group().order();
        site.objects
            .iter()
            .map(|x| {
                LRel::from_fn(x.fiber(), x.fiber(), |a, b| Elem((0..k).filter(|&g| x.act(a, g) == b).fold(0, |m, g| m | 1 << g)))
            })
            .collect()
    }

    #[test]
    fn action_cone_is_every_kind_of_cone() {
        for site in [Site::z2(), Site::z3()] {
            let l = site.model.group().lattice();
            let r = check_cone(&l, &site, &action_cone(&site));
            assert!(r.bijections && r.triangle && r.diamond1 && r.diamond2 && r.diamond, "{r:?}");
        }
    }

    #[test]
    fn extension_recovers_the_action() {
        let site = Site::z2();
        let g = DiscreteGroup::cyclic(2);
        let l = g.lattice();
        let cone = action_cone(&site);
        for x in site.model.objects(3, &Default::default()).unwrap() {
            let ext = extend_cone(&l, &site, &cone, &x).unwrap();
            assert!(ext.agree(), "{:?}", ext.witness);
            let Object::GSet(mu) = &x else { unreachable!() };
            assert_eq!(ext.first, mu.table);
        }
    }

    #[test]
    fn site_objects_are_unchanged_and_components_separate() {
        let site = Site::z2();
        let l = DiscreteGroup::cyclic(2).lattice();
        let cone = action_cone(&site);
        let z2 = &site.objects[1];
        assert_eq!(extend_cone(&l, &site, &cone, z2).unwrap().first, cone[1]);
        let sum = extend_cone(&l, &site, &cone, &z2.coproduct(z2)).unwrap();
        for a in 0..2 {
            for b in 2..4 {
                assert_eq!(*sum.first.at(a, b), l.bottom());
                assert_eq!(*sum.first.at(b, a), l.bottom());
            }
        }
    }

    #[test]
    fn broken_cone_breaks_independence() {
        let site = Site::z2();
        let l = DiscreteGroup::cyclic(2).lattice();
        let mut cone = action_cone(&site);
        // λ_Z2 no longer invariant under the swap
        cone[1].set(0, 0, l.top());
        let r = check_cone(&l, &site, &cone);
        assert!(!r.triangle && r.witness.is_some());
        let ext = extend_cone(&l, &site, &cone, &site.objects[1]).unwrap();
        assert!(!ext.independent);
    }
}
