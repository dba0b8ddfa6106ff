use super::autf::{AutF, MATERIALIZE_GENERATORS};
use super::cone::extend_cone;
use super::model::{Object, Site};
use super::TannakaError;
use crate::comodule::{coactions, is_comodule_morphism, mu_to_rho, Comodule};
use crate::locgroup::{actions, is_action, is_gset_morphism, ActionMu, DiscreteGroup};
use crate::suplat::{all_functions, Elem, FinFn, Limits, Relation};
use std::collections::HashSet;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub holds: bool,
    /// Number of instances examined.
    pub checked: usize,
    pub witness: Option<String>,
}

impl Verdict {
    fn new() -> Verdict {
        Verdict { holds: true, checked: 0, witness: None }
    }

    fn fail(&mut self, why: impl FnOnce() -> String) {
        self.holds = false;
        if self.witness.is_none() {
            self.witness = Some(why());
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FunctorVerdicts {
    pub faithful: Verdict,
    pub full: Verdict,
    pub essentially_surjective: Verdict,
}

impl FunctorVerdicts {
    pub fn is_equivalence(&self) -> bool {
        self.faithful.holds && self.full.holds && self.essentially_surjective.holds
    }
}

/// Whether the lifts of the point into `β^G` and of `T` into `Cmd₀(ℓG)`
/// look like equivalences on all objects with fibers up to `bound`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftReport {
    pub site: String,
    pub bound: usize,
    /// `Aut(F) ≅ ℓ(G₀)`, when the site is small enough to decide it.
    pub group_iso: Option<bool>,
    pub objects: usize,
    pub galois: FunctorVerdicts,
    pub tannaka: FunctorVerdicts,
}

impl LiftReport {
    /// Both lifts are equivalences or neither is.
    pub fn consistent(&self) -> bool {
        self.galois.is_equivalence() == self.tannaka.is_equivalence()
    }
}

struct Lifted {
    obj: Object,
    mu: ActionMu,
    rho: Comodule,
}

/// `F̃ X = (F X, μ_X)` with `μ_X` the universal cone extended to `X` and
/// carried to `ℓ(G₀)` through the points of `Aut(F)`.
fn lift_all(aut: &AutF, group: &DiscreteGroup, objects: Vec<Object>) -> Result<Vec<Lifted>, TannakaError> {
    let cone = aut.cone();
    let mut out = Vec::with_capacity(objects.len());
    for obj in objects {
        let ext = extend_cone(aut.frame(), aut.site(), &cone, &obj)?;
        if !ext.agree() {
            return Err(TannakaError::Site(aut.site().name.clone(), format!("extension to {} is ambiguous", obj.render())));
        }
        let table = ext.first.map(|d| Elem(aut.transport(d) as u32));
        let mu = ActionMu { group: group.clone(), table };
        if !is_action(group, &mu.table).is_action() {
            return Err(TannakaError::Site(aut.site().name.clone(), format!("lift of {} is not an action", obj.render())));
        }
        let rho = mu_to_rho(&mu);
        out.push(Lifted { obj, mu, rho });
    }
    Ok(out)
}

fn permutations_of(n: usize) -> impl Iterator<Item = FinFn> {
    all_functions(n, n).filter(FinFn::is_bijective)
}

pub fn lifting_check(site: &Site, bound: usize, limits: &Limits) -> Result<LiftReport, TannakaError> {
    let aut = AutF::build(site, limits)?;
    let group = site.model.group();
    let group_iso = if aut.frame().generator_count() <= MATERIALIZE_GENERATORS {
        Some(aut.iso_to_group()?.holds())
    } else {
        None
    };
    let lifted = lift_all(&aut, &group, site.model.objects(bound, limits)?)?;

    let mut galois = FunctorVerdicts { faithful: Verdict::new(), full: Verdict::new(), essentially_surjective: Verdict::new() };
    let mut tannaka = galois.clone();
    for x in &lifted {
        for y in &lifted {
            let arrows = x.obj.hom(&y.obj);
            galois.faithful.checked += arrows.len();
            if let Some(f) = first_repeat(&arrows) {
                galois.faithful.fail(|| format!("two arrows {} → {} both map to {:?}", x.obj.render(), y.obj.render(), f.map));
            }
            for f in all_functions(x.mu.size(), y.mu.size()) {
                if is_gset_morphism(&f, &x.mu, &y.mu).is_morphism() {
                    galois.full.checked += 1;
                    if !arrows.contains(&f) {
                        galois.full.fail(|| format!("{:?} is equivariant but no arrow {} → {} gives it", f.map, x.obj.render(), y.obj.render()));
                    }
                }
            }

            let rels = x.obj.subobject_counts(&y.obj);
            tannaka.faithful.checked += rels.iter().map(|(_, k)| *k as usize).sum::<usize>();
            if let Some((r, _)) = rels.iter().find(|(_, k)| *k > 1) {
                tannaka.faithful.fail(|| {
                    format!("two relations {} → {} both map to {:?}", x.obj.render(), y.obj.render(), r.pairs().collect::<Vec<_>>())
                });
            }
            let rels: HashSet<Relation> = rels.into_iter().map(|(r, _)| r).collect();
            let (n, m) = (x.mu.size(), y.mu.size());
            for mask in 0u64..1 << (n * m) {
                let r = Relation::from_mask(n, m, mask);
                if is_comodule_morphism(&group, &r, &x.rho, &y.rho).square {
                    tannaka.full.checked += 1;
                    if !rels.contains(&r) {
                        tannaka.full.fail(|| {
                            format!("{:?} is a comodule map with no relation {} → {} over it", r.pairs().collect::<Vec<_>>(), x.obj.render(), y.obj.render())
                        });
                    }
                }
            }
        }
    }
    for n in 0..=bound {
        for target in actions(&group, n, limits)? {
            galois.essentially_surjective.checked += 1;
            let hit = lifted.iter().filter(|x| x.mu.size() == n).any(|x| {
                permutations_of(n).any(|p| is_gset_morphism(&p, &x.mu, &target).is_morphism())
            });
            if !hit {
                galois.essentially_surjective.fail(|| format!("no object lifts to the action {:?}", target.table.table));
            }
        }
        for target in coactions(&group, n, limits)? {
            tannaka.essentially_surjective.checked += 1;
            let hit = lifted.iter().filter(|x| x.rho.size == n).any(|x| {
                permutations_of(n).any(|p| {
                    let g = Relation::graph(&p);
                    is_comodule_morphism(&group, &g, &x.rho, &target).square && is_comodule_morphism(&group, &g.op(), &target, &x.rho).square
                })
            });
            if !hit {
                tannaka.essentially_surjective.fail(|| format!("no object lifts to the coaction {:?}", target.rho));
            }
        }
    }
    Ok(LiftReport { site: site.name.clone(), bound, group_iso, objects: lifted.len(), galois, tannaka })
}

fn first_repeat<T: PartialEq>(items: &[T]) -> Option<&T> {
    items.iter().enumerate().find(|(i, a)| items[..*i].contains(a)).map(|(_, a)| a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gset_sites_lift_to_equivalences() {
        for site in [Site::terminal(), Site::z2()] {
            let r = lifting_check(&site, 2, &Limits::default()).unwrap();
            assert_eq!(r.group_iso, Some(true));
            assert!(r.galois.is_equivalence(), "{r:?}");
            assert!(r.tannaka.is_equivalence(), "{r:?}");
        }
    }

    #[test]
    fn arrow_site_fails_with_witnesses() {
        let r = lifting_check(&Site::arrow(), 2, &Limits::default()).unwrap();
        assert!(!r.galois.full.holds && r.galois.full.witness.is_some());
        assert!(!r.galois.faithful.holds);
        assert!(r.galois.essentially_surjective.holds);
        assert!(!r.tannaka.faithful.holds && r.tannaka.faithful.witness.is_some());
        assert!(r.consistent());
    }
}
