use super::endt::{Coend, Equation};
use super::model::Site;
use super::TannakaError;
use crate::suplat::{
    linear_maps, relation_to_linmap, tensor, tensor_map, Elem, Lattice, Limits, LinMap, Relation, TensorLattice,
};

/// An arrow of the base category together with its images under two
/// functors `L, T` into power sets and relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BaseArrow {
    pub src: usize,
    pub dst: usize,
    pub l: Relation,
    pub t: Relation,
}

/// A finite category with two functors landing in power sets.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Base {
    pub names: Vec<String>,
    pub l_sizes: Vec<usize>,
    pub t_sizes: Vec<usize>,
    pub arrows: Vec<BaseArrow>,
}

impl Base {
    /// The relations of a site with `L = T = ℓ F`.
    pub fn from_site(site: &Site) -> Base {
        let sizes: Vec<usize> = (0..site.objects.len()).map(|c| site.size(c)).collect();
        Base {
            names: site.names.clone(),
            l_sizes: sizes.clone(),
            t_sizes: sizes,
            arrows: site
                .relations
                .iter()
                .map(|r| BaseArrow { src: r.src, dst: r.dst, l: r.rel.clone(), t: r.rel.clone() })
                .collect(),
        }
    }

    /// One object, only the identity, `L = T = ℓ{0..n}`.
    pub fn discrete(n: usize) -> Base {
        Base {
            names: vec!["X".into()],
            l_sizes: vec![n],
            t_sizes: vec![n],
            arrows: vec![BaseArrow { src: 0, dst: 0, l: Relation::diagonal(n), t: Relation::diagonal(n) }],
        }
    }

    fn offsets(&self) -> Vec<usize> {
        let mut out = vec![0];
        for (l, t) in self.l_sizes.iter().zip(&self.t_sizes) {
            out.push(out.last().unwrap() + l * t);
        }
        out
    }

    /// `Nat^∨(L, T) = ∫^X LX ⊗ (TX)^∧`: cells `[X, l, t]` identified along
    /// each arrow `R: X → Y` by
    /// `⋁_{(l, l') ∈ LR} [Y, l', t'] = ⋁_{(t, t') ∈ TR} [X, l, t]`.
    pub fn predual(&self) -> Result<Coend, TannakaError> {
        let off = self.offsets();
        let cell = |x: usize, l: usize, t: usize| off[x] + l * self.t_sizes[x] + t;
        let mut cells = Vec::new();
        for (x, name) in self.names.iter().enumerate() {
            for l in 0..self.l_sizes[x] {
                for t in 0..self.t_sizes[x] {
                    cells.push(format!("[{name},{l},{t}]"));
                }
            }
        }
        let mut equations = Vec::new();
        for (i, r) in self.arrows.iter().enumerate() {
            for l in 0..self.l_sizes[r.src] {
                for t2 in 0..self.t_sizes[r.dst] {
                    let lhs = r.l.row(l).ones().fold(0u64, |m, l2| m | 1 << cell(r.dst, l2, t2));
                    let rhs = (0..self.t_sizes[r.src]).filter(|&t| r.t.contains(t, t2)).fold(0u64, |m, t| m | 1 << cell(r.src, l, t));
                    if lhs != rhs {
                        equations.push(Equation { name: format!("arrow{i}.{l}.{t2}"), lhs, rhs });
                    }
                }
            }
        }
        Coend::new(cells, equations)
    }
}

/// Both sides of `hom(Nat^∨(L, T), V) ≅ Nat(L, V ⊗ T)`, each enumerated on
/// its own, and the canonical map between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AdjunctionReport {
    pub predual_size: usize,
    pub homs: usize,
    pub nats: usize,
    /// `φ ↦ (l ↦ ⋁_t φ[X, l, t] ⊗ t)` lands in `Nat` and is injective.
    pub bijection: bool,
    pub witness: Option<String>,
}

impl AdjunctionReport {
    pub fn holds(&self) -> bool {
        self.homs == self.nats && self.bijection
    }
}

/// Natural transformations `L ⇒ V ⊗ T`, computed with tensor products of
/// sup-lattices: components are all linear maps `ℓ(LX) → V ⊗ ℓ(TX)`,
/// filtered by `(V ⊗ TR) α_X = α_Y (LR)` for every arrow.
pub fn natural_transformations(base: &Base, v: &Lattice, limits: &Limits) -> Result<Vec<Vec<LinMap>>, TannakaError> {
    let objects = base.names.len();
    let vt: Vec<TensorLattice> =
        base.t_sizes.iter().map(|&n| tensor(v, &Lattice::power(n), limits)).collect::<Result<_, _>>()?;
    let ls: Vec<Lattice> = base.l_sizes.iter().map(|&n| Lattice::power(n)).collect();
    let id_v = LinMap::identity(v);
    let lifted: Vec<(LinMap, LinMap)> = base
        .arrows
        .iter()
        .map(|r| {
            let vt_r = tensor_map(&id_v, &relation_to_linmap(&r.t), &vt[r.src], &vt[r.dst]);
            (relation_to_linmap(&r.l), vt_r)
        })
        .collect();
    let natural = |r: usize, ax: &LinMap, ay: &LinMap| -> Result<bool, TannakaError> {
        let (lr, vtr) = &lifted[r];
        Ok(ax.then(vtr)? == lr.then(ay)?)
    };
    // components surviving the endo-arrows of their own object
    let mut candidates = Vec::with_capacity(objects);
    for x in 0..objects {
        let mut keep = Vec::new();
        for a in linear_maps(&ls[x], vt[x].lattice(), limits)? {
            let mut ok = true;
            for (i, r) in base.arrows.iter().enumerate() {
                if r.src == x && r.dst == x && !natural(i, &a, &a)? {
                    ok = false;
                    break;
                }
            }
            if ok {
                keep.push(a);
            }
        }
        candidates.push(keep);
    }
    let mut out = Vec::new();
    let mut choice = vec![0usize; objects];
    if candidates.iter().any(Vec::is_empty) {
        return Ok(out);
    }
    loop {
        let family: Vec<&LinMap> = (0..objects).map(|x| &candidates[x][choice[x]]).collect();
        let mut ok = true;
        for (i, r) in base.arrows.iter().enumerate() {
            if r.src != r.dst && !natural(i, family[r.src], family[r.dst])? {
                ok = false;
                break;
            }
        }
        if ok {
            out.push(family.into_iter().cloned().collect());
        }
        // odometer over the per-object candidates
        let mut x = 0;
        loop {
            if x == objects {
                return Ok(out);
            }
            choice[x] += 1;
            if choice[x] < candidates[x].len() {
                break;
            }
            choice[x] = 0;
            x += 1;
        }
    }
}

pub fn adjunction(base: &Base, v: &Lattice, limits: &Limits) -> Result<AdjunctionReport, TannakaError> {
    let coend = base.predual()?;
    let (pre, elems) = coend.lattice(limits)?;
    let homs = linear_maps(&pre, v, limits)?;
    let nats = natural_transformations(base, v, limits)?;
    let vt: Vec<TensorLattice> =
        base.t_sizes.iter().map(|&n| tensor(v, &Lattice::power(n), limits)).collect::<Result<_, _>>()?;
    let off = base.offsets();
    let index = |d: u64| Elem(elems.binary_search(&d).expect("classes are elements") as u32);
    let mut report = AdjunctionReport { predual_size: pre.size(), homs: homs.len(), nats: nats.len(), bijection: true, witness: None };
    let mut images: Vec<Vec<LinMap>> = Vec::new();
    for (k, phi) in homs.iter().enumerate() {
        let mut family = Vec::new();
        for x in 0..base.names.len() {
            let (nl, nt) = (base.l_sizes[x], base.t_sizes[x]);
            let target = vt[x].lattice();
            let gens: Vec<(Elem, Elem)> = (0..nl)
                .map(|l| {
                    let value = target.join_all((0..nt).map(|t| {
                        let class = coend.class(off[x] + l * nt + t);
                        vt[x].pure(phi.apply(index(class)), Elem(1 << t))
                    }));
                    (Elem(1 << l), value)
                })
                .collect();
            family.push(LinMap::from_generators(&Lattice::power(nl), target, &gens)?);
        }
        if !nats.contains(&family) {
            report.bijection = false;
            report.witness.get_or_insert(format!("linear map {k} gives a family that is not natural"));
        }
        if images.contains(&family) {
            report.bijection = false;
            report.witness.get_or_insert(format!("linear map {k} collides with an earlier one"));
        }
        images.push(family);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::locgroup::DiscreteGroup;

    #[test]
    fn discrete_base_gives_power_of_pairs() {
        for n in 1..=2 {
            let c = Base::discrete(n).predual().unwrap();
            assert_eq!(c.elements(&Limits::default()).unwrap().len(), 1 << (n * n));
        }
        // ℓ{*}: the predual is 2
        assert_eq!(Base::discrete(1).predual().unwrap().elements(&Limits::default()).unwrap().len(), 2);
    }

    #[test]
    fn site_predual_is_end() {
        let site = Site::z2();
        let c = Base::from_site(&site).predual().unwrap();
        let e = super::super::endt::EndT::build(&site).unwrap();
        assert_eq!(c.elements(&Limits::default()).unwrap(), e.coend().elements(&Limits::default()).unwrap());
    }

    #[test]
    fn adjunction_counts_agree() {
        let limits = Limits::default();
        for v in [Lattice::two(), DiscreteGroup::cyclic(2).lattice()] {
            for base in [Base::discrete(1), Base::discrete(2), Base::from_site(&Site::z2())] {
                let r = adjunction(&base, &v, &limits).unwrap();
                assert!(r.holds(), "{r:?}");
            }
        }
    }
}
