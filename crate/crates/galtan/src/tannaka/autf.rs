use super::cone::Cone;
use super::model::Site;
use super::TannakaError;
use crate::locale::{present, Ideal, Materialized, PresentedFrame, Presentation, Term};
use crate::locgroup::{IsoReport, PresentedHopf};
use crate::lrel::LRel;
use crate::suplat::{Limits, SupLattice};

/// Frames with at most this many generators are materialized; larger ones
/// are compared through their ideals only.
pub const MATERIALIZE_GENERATORS: usize = 6;

/// Generators `⟨C, a|b⟩` for every site object `C`, the ℓ-bijection axioms
/// per object, and `⟨C, a|b⟩ ≤ ⟨D, f a|f b⟩` per arrow `f: C → D`.
pub fn autf_presentation(site: &Site) -> Presentation {
    let gens = site.cells().map(|(c, a, b)| site.cell_name(c, a, b)).collect();
    let mut p = Presentation::new(gens);
    let gen = |c, a, b| Term::Gen(site.cell(c, a, b));
    for (c, name) in site.names.iter().enumerate() {
        let n = site.size(c);
        for x in 0..n {
            p.leq(format!("{name}.ed.{x}"), Term::Top, Term::join_of((0..n).map(|y| gen(c, x, y))));
            p.leq(format!("{name}.su.{x}"), Term::Top, Term::join_of((0..n).map(|y| gen(c, y, x))));
            for y1 in 0..n {
                for y2 in y1 + 1..n {
                    p.leq(format!("{name}.uv.{x}.{y1}.{y2}"), Term::meet2(gen(c, x, y1), gen(c, x, y2)), Term::Bottom);
                    p.leq(format!("{name}.in.{y1}.{y2}.{x}"), Term::meet2(gen(c, y1, x), gen(c, y2, x)), Term::Bottom);
                }
            }
        }
    }
    for (i, f) in site.arrows.iter().enumerate() {
        let n = site.size(f.src);
        for a in 0..n {
            for b in 0..n {
                p.leq(format!("arrow{i}.{a}.{b}"), gen(f.src, a, b), gen(f.dst, f.map.apply(a), f.map.apply(b)));
            }
        }
    }
    p
}

/// The automorphism group of the point, presented on a site.
#[derive(Clone, Debug)]
pub struct AutF {
    site: Site,
    frame: PresentedFrame,
    materialized: Option<Materialized>,
}

impl AutF {
    pub fn build(site: &Site, limits: &Limits) -> Result<AutF, TannakaError> {
        let frame = present(autf_presentation(site), limits)?;
        let materialized =
            if frame.generator_count() <= MATERIALIZE_GENERATORS { Some(frame.materialize()?) } else { None };
        Ok(AutF { site: site.clone(), frame, materialized })
    }

    pub fn site(&self) -> &Site {
        &self.site
    }

    pub fn frame(&self) -> &PresentedFrame {
        &self.frame
    }

    pub fn materialized(&self) -> Option<&Materialized> {
        self.materialized.as_ref()
    }

    pub fn generator(&self, c: usize, a: usize, b: usize) -> Ideal {
        self.frame.generator(self.site.cell(c, a, b))
    }

    /// The universal cone `λ_C⟨a, b⟩ = ⟨C, a|b⟩`.
    pub fn cone(&self) -> Cone<Ideal> {
        (0..self.site.objects.len())
            .map(|c| {
                let n = self.site.size(c);
                LRel::from_fn(n, n, |a, b| self.generator(c, a, b))
            })
            .collect()
    }

    /// `w⟨C,a|b⟩ = ⋁_x ⟨C,a|x⟩ ⊗ ⟨C,x|b⟩`, `e = δ`, `ι⟨C,a|b⟩ = ⟨C,b|a⟩`.
    pub fn hopf(&self) -> Result<PresentedHopf, TannakaError> {
        let s = &self.site;
        let total = s.cell_count();
        let w = s
            .cells()
            .map(|(c, a, b)| {
                Term::join_of(
                    (0..s.size(c)).map(|x| Term::meet2(Term::Gen(s.cell(c, a, x)), Term::Gen(total + s.cell(c, x, b)))),
                )
            })
            .collect();
        let e = s.cells().map(|(_, a, b)| a == b).collect();
        let iota = s.cells().map(|(c, a, b)| Term::Gen(s.cell(c, b, a))).collect();
        Ok(PresentedHopf::new(self.frame.clone(), w, e, iota)?)
    }

    /// The valuation of the generators at a group element:
    /// `⟨C, a|b⟩ ↦ [a·g = b]`.
    pub fn point(&self, g: usize) -> u64 {
        self.site.cells().fold(0, |acc, (c, a, b)| {
            if self.site.objects[c].act(a, g) == b {
                acc | 1 << self.site.cell(c, a, b)
            } else {
                acc
            }
        })
    }

    /// Hopf isomorphism with `ℓ(G₀)` of the model's group.
    pub fn iso_to_group(&self) -> Result<IsoReport, TannakaError> {
        Ok(self.hopf()?.iso_to_group(&self.site.model.group(), &|g| self.point(g))?)
    }

    /// `{g : point(g) ⊨ d}`.
    pub fn transport(&self, d: &Ideal) -> u64 {
        let k = self.site.model.group().order();
        let points: Vec<u64> = (0..k).map(|g| self.point(g)).collect();
        let masks = self.frame.minimal_masks(d);
        (0..k).filter(|&g| masks.iter().any(|&m| m & !points[g] == 0)).fold(0, |acc, g| acc | 1 << g)
    }

    /// Generators are nonzero, and `⟨C,a|b⟩ ≤ ⟨C',a'|b'⟩` only when some
    /// arrow `f: C → C'` has `F f (a) = a'` and `F f (b) = b'`.
    pub fn key_lemma(&self) -> KeyLemmaReport {
        let s = &self.site;
        let f = &self.frame;
        let cells: Vec<(usize, usize, usize)> = s.cells().collect();
        let mut report = KeyLemmaReport { generators: cells.len(), comparable: 0, nonzero: true, reflected: true, witness: None };
        let gens: Vec<Ideal> = cells.iter().map(|&(c, a, b)| self.generator(c, a, b)).collect();
        for (&(c, a, b), g) in cells.iter().zip(&gens) {
            if *g == f.bottom() {
                report.nonzero = false;
                report.witness.get_or_insert(format!("{} = 0", s.cell_name(c, a, b)));
            }
        }
        for (&(c, a, b), g) in cells.iter().zip(&gens) {
            for (&(d, a2, b2), h) in cells.iter().zip(&gens) {
                if !f.leq(g, h) {
                    continue;
                }
                report.comparable += 1;
                let explained = s
                    .arrows
                    .iter()
                    .any(|h| h.src == c && h.dst == d && h.map.apply(a) == a2 && h.map.apply(b) == b2);
                if !explained {
                    report.reflected = false;
                    report.witness.get_or_insert(format!(
                        "{} ≤ {} with no arrow between them",
                        s.cell_name(c, a, b),
                        s.cell_name(d, a2, b2)
                    ));
                }
            }
        }
        report
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KeyLemmaReport {
    pub generators: usize,
    /// Ordered pairs of generators with `g ≤ h`.
    pub comparable: usize,
    pub nonzero: bool,
    pub reflected: bool,
    pub witness: Option<String>,
}

impl KeyLemmaReport {
    pub fn holds(&self) -> bool {
        self.nonzero && self.reflected
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suplat::CompleteLattice;
    use crate::tannaka::cone::check_cone;

    #[test]
    fn z2_site_gives_four_elements() {
        let a = AutF::build(&Site::z2(), &Limits::default()).unwrap();
        assert_eq!(a.frame().generator_count(), 5);
        assert_eq!(a.materialized().unwrap().lattice.size(), 4);
        let h = a.hopf().unwrap();
        assert!(h.hopf_laws().unwrap().holds());
        let iso = a.iso_to_group().unwrap();
        assert!(iso.holds(), "{iso:?}");
    }

    #[test]
    fn z3_site_is_lazy_and_satisfies_the_key_lemma() {
        let a = AutF::build(&Site::z3(), &Limits::default()).unwrap();
        assert_eq!(a.frame().generator_count(), 10);
        assert!(a.materialized().is_none());
        let k = a.key_lemma();
        assert!(k.holds(), "{k:?}");
        // ⟨Z3,a|b⟩ = ⟨Z3,a+1|b+1⟩, and ⟨1,*|*⟩ = 1 sits above everything
        assert_eq!(a.generator(1, 0, 1), a.generator(1, 1, 2));
        assert_eq!(a.generator(0, 0, 0), a.frame().top());
    }

    #[test]
    fn point_sites_are_trivial() {
        for site in [Site::terminal(), Site::arrow()] {
            let a = AutF::build(&site, &Limits::default()).unwrap();
            assert_eq!(a.materialized().unwrap().lattice.size(), 2, "{}", site.name);
            assert!(a.iso_to_group().unwrap().holds());
            // y0 and y1 both give 1, yet there is no arrow y0 → y1
            assert_eq!(a.key_lemma().holds(), site.name != "arrow");
        }
    }

    #[test]
    fn universal_cone_is_a_cone() {
        let a = AutF::build(&Site::z2(), &Limits::default()).unwrap();
        let r = check_cone(a.frame(), a.site(), &a.cone());
        assert!(r.bijections && r.triangle && r.diamond, "{r:?}");
    }

    #[test]
    fn transport_matches_generators() {
        let a = AutF::build(&Site::z2(), &Limits::default()).unwrap();
        // ⟨Z2,0|1⟩ holds exactly at the generator g
        assert_eq!(a.transport(&a.generator(1, 0, 1)), 0b10);
        assert_eq!(a.transport(&a.generator(1, 0, 0)), 0b01);
        assert_eq!(a.transport(&a.frame().top()), 0b11);
    }
}
