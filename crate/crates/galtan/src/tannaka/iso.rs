use super::autf::AutF;
use super::composites::EndHopf;
use super::endt::EndT;
use super::model::Site;
use super::TannakaError;
use crate::locale::Term;
use crate::suplat::{CompleteLattice, Elem, Lattice, Limits, SupLattice};

/// `⟨C, a|b⟩ ↦ [C, a, b]` from `Aut(F)` to `End^∨(T)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IsoCheck {
    pub site: String,
    pub generators: usize,
    /// Sizes when materialized.
    pub autf_size: Option<usize>,
    pub endt_size: usize,
    /// `Aut(F) ≅ ℓ(G₀)` as Hopf algebras.
    pub group_iso: Option<bool>,
    /// The generator assignment respects every relation of `Aut(F)`.
    pub frame_map: bool,
    pub bijective: Option<bool>,
    /// Pairs of generator meets compared.
    pub meet_pairs: usize,
    pub order_agrees: bool,
    /// Commutation with `w`, `e`, `ι`, with the targets computed as composites.
    pub w: Option<bool>,
    pub e: Option<bool>,
    pub iota: Option<bool>,
    pub witness: Option<String>,
}

impl IsoCheck {
    pub fn holds(&self) -> bool {
        let ok = |o: Option<bool>| o != Some(false);
        self.frame_map
            && self.order_agrees
            && ok(self.bijective)
            && ok(self.group_iso)
            && ok(self.w)
            && ok(self.e)
            && ok(self.iota)
    }
}

/// Meets of at most `depth` generators, as masks.
fn meet_masks(n: usize, depth: usize) -> Vec<u64> {
    let mut out = vec![0u64];
    let mut layer = vec![0u64];
    for _ in 0..depth {
        let mut next = Vec::new();
        for &m in &layer {
            let start = if m == 0 { 0 } else { 64 - m.leading_zeros() as usize };
            for g in start..n {
                next.push(m | 1 << g);
            }
        }
        out.extend(&next);
        layer = next;
    }
    out
}

fn eval_in(l: &Lattice, t: &Term, image: &dyn Fn(usize) -> Elem) -> Elem {
    match t {
        Term::Gen(i) => image(*i),
        Term::Top => l.top(),
        Term::Bottom => l.bottom(),
        Term::Meet(items) => items.iter().fold(l.top(), |acc, s| l.meet(acc, eval_in(l, s, image))),
        Term::Join(items) => items.iter().fold(l.bottom(), |acc, s| l.join(acc, eval_in(l, s, image))),
    }
}

pub fn check_iso(site: &Site, depth: usize, limits: &Limits) -> Result<IsoCheck, TannakaError> {
    let aut = AutF::build(site, limits)?;
    let endt = EndT::build(site)?;
    let coend = endt.coend();
    let n = site.cell_count();
    let images: Vec<u64> = (0..n).map(|i| coend.class(i)).collect();
    let mut report = IsoCheck {
        site: site.name.clone(),
        generators: n,
        autf_size: aut.materialized().map(|m| m.lattice.size()),
        endt_size: coend.elements(limits)?.len(),
        group_iso: None,
        frame_map: true,
        bijective: None,
        meet_pairs: 0,
        order_agrees: true,
        w: None,
        e: None,
        iota: None,
        witness: None,
    };
    let psi = match aut.frame().frame_morphism(coend, images.clone()) {
        Ok(m) => Some(m),
        Err(err) => {
            report.frame_map = false;
            report.witness = Some(err.to_string());
            None
        }
    };

    let meet_image = |m: u64| (0..n).filter(|i| m >> i & 1 == 1).fold(coend.top(), |acc, i| acc & images[i]);
    let masks = meet_masks(n, depth);
    let ideals: Vec<_> = masks.iter().map(|&m| aut.frame().principal(m)).collect();
    for (i, &m1) in masks.iter().enumerate() {
        for (j, &m2) in masks.iter().enumerate() {
            report.meet_pairs += 1;
            let lhs = aut.frame().leq(&ideals[i], &ideals[j]);
            let rhs = coend.leq(&meet_image(m1), &meet_image(m2));
            if lhs != rhs {
                report.order_agrees = false;
                let names = &aut.frame().presentation().generators;
                let render = |m: u64| (0..n).filter(|g| m >> g & 1 == 1).map(|g| names[g].clone()).collect::<Vec<_>>().join(" ∧ ");
                report.witness.get_or_insert(format!("order of {} and {} differs", render(m1), render(m2)));
            }
        }
    }

    if let (Some(mat), Some(psi)) = (aut.materialized(), &psi) {
        let mut seen: Vec<u64> = mat.ideals.iter().map(|d| psi.apply(aut.frame(), d)).collect();
        seen.sort();
        seen.dedup();
        report.bijective = Some(seen == coend.elements(limits)?);
        report.group_iso = Some(aut.iso_to_group()?.holds());

        let hopf = aut.hopf()?;
        let eh = EndHopf::new(&endt, limits)?;
        let sq = eh.square();
        let top = eh.elem(coend.top());
        let (mut w, mut e, mut iota) = (true, true, true);
        for (i, (c, a, b)) in site.cells().enumerate() {
            let img = |j: usize| {
                if j < n {
                    sq.pure(eh.elem(images[j]), top)
                } else {
                    sq.pure(top, eh.elem(images[j - n]))
                }
            };
            w &= eval_in(sq.lattice(), &hopf.w()[i], &img) == eh.w(c, a, b);
            e &= hopf.e()[i] == eh.epsilon(c, a, b);
            iota &= psi.eval(&hopf.iota()[i]) == eh.iota(c, a, b);
        }
        report.w = Some(w);
        report.e = Some(e);
        report.iota = Some(iota);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn meet_masks_count() {
        // 1 + 10 + 45
        assert_eq!(meet_masks(10, 2).len(), 56);
        assert_eq!(meet_masks(3, 3).len(), 8);
    }

    #[test]
    fn z2_iso_holds() {
        let r = check_iso(&Site::z2(), 2, &Limits::default()).unwrap();
        assert_eq!((r.autf_size, r.endt_size), (Some(4), 4));
        assert!(r.holds(), "{r:?}");
        assert_eq!(r.w, Some(true));
    }

    #[test]
    fn z3_lazy_order_agrees() {
        let r = check_iso(&Site::z3(), 2, &Limits::default()).unwrap();
        assert_eq!(r.autf_size, None);
        assert_eq!(r.endt_size, 8);
        assert_eq!(r.meet_pairs, 56 * 56);
        assert!(r.holds(), "{r:?}");
    }
}
