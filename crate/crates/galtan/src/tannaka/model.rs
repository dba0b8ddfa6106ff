use super::TannakaError;
use crate::locgroup::{actions, gset_relations, is_gset_morphism, ActionMu, DiscreteGroup};
use crate::suplat::{all_functions, FinFn, Limits, Relation};

/// An object of a pointed topos, small enough to enumerate everything about.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Object {
    /// A finite right `G₀`-set; the point forgets the action.
    GSet(ActionMu),
    /// A functor on the arrow category `0 → 1`, i.e. a map `X₀ → X₁`; the
    /// point evaluates at `1`.
    Arrow(FinFn),
}

/// Which topos the objects live in.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    GSets(DiscreteGroup),
    ArrowPresheaves,
}

impl Object {
    /// `|F X|`.
    pub fn fiber(&self) -> usize {
        match self {
            Object::GSet(mu) => mu.size(),
            Object::Arrow(p) => p.cod,
        }
    }

    /// `a·g` for the group of the model; the arrow topos has trivial `G₀`.
    pub fn act(&self, a: usize, g: usize) -> usize {
        match self {
            Object::GSet(mu) => mu.apply(a, g).expect("actions are ℓ-functions"),
            Object::Arrow(_) => a,
        }
    }

    pub fn render(&self) -> String {
        match self {
            Object::GSet(mu) => {
                let k = mu.group.order();
                let rows: Vec<String> =
                    (0..mu.size()).map(|a| (0..k).map(|g| self.act(a, g).to_string()).collect::<Vec<_>>().join(" ")).collect();
                format!("gset[{}]", rows.join(" | "))
            }
            Object::Arrow(p) => format!("arrow[{} -> {}: {:?}]", p.dom(), p.cod, p.map),
        }
    }

    /// `F f` for every arrow `f: self → other`, one entry per arrow, so
    /// repeated functions mean `F` identifies distinct arrows.
    pub fn hom(&self, other: &Object) -> Vec<FinFn> {
        match (self, other) {
            (Object::GSet(mu), Object::GSet(nu)) => {
                all_functions(mu.size(), nu.size()).filter(|f| is_gset_morphism(f, mu, nu).is_morphism()).collect()
            }
            (Object::Arrow(p), Object::Arrow(q)) => {
                let mut out = Vec::new();
                for f1 in all_functions(p.cod, q.cod) {
                    for f0 in all_functions(p.dom(), q.dom()) {
                        if (0..p.dom()).all(|x| q.apply(f0.apply(x)) == f1.apply(p.apply(x))) {
                            out.push(f1.clone());
                        }
                    }
                }
                out
            }
            _ => Vec::new(),
        }
    }

    /// `T R ⊆ F X × F Y` for every subobject `R` of `self × other`, one entry
    /// per subobject.
    pub fn subobjects(&self, other: &Object) -> Vec<Relation> {
        self.subobject_counts(other).into_iter().flat_map(|(r, k)| std::iter::repeat_n(r, k as usize)).collect()
    }

    /// The distinct images `T R`, each with the number of subobjects over it.
    pub fn subobject_counts(&self, other: &Object) -> Vec<(Relation, u64)> {
        match (self, other) {
            (Object::GSet(mu), Object::GSet(nu)) => {
                gset_relations(mu, nu).into_iter().map(|r| (r, 1)).collect()
            }
            (Object::Arrow(p), Object::Arrow(q)) => {
                let (n1, m1) = (p.cod, q.cod);
                (0u64..1 << (n1 * m1))
                    .map(|mask| {
                        let r1 = Relation::from_mask(n1, m1, mask);
                        // R₀ may be any set of pairs whose image lies in R₁
                        let allowed = (0..p.dom())
                            .flat_map(|x| (0..q.dom()).map(move |y| (x, y)))
                            .filter(|&(x, y)| r1.contains(p.apply(x), q.apply(y)))
                            .count();
                        (r1, 1u64 << allowed)
                    })
                    .collect()
            }
            _ => Vec::new(),
        }
    }

    /// `self × other`, with the pair `(a, b)` at index `a * |F other| + b`.
    pub fn product(&self, other: &Object) -> Object {
        match (self, other) {
            (Object::GSet(mu), Object::GSet(nu)) => {
                let k = mu.group.order();
                let m = nu.size();
                let act: Vec<Vec<usize>> = (0..mu.size() * m)
                    .map(|ab| (0..k).map(|g| self.act(ab / m, g) * m + other.act(ab % m, g)).collect())
                    .collect();
                Object::GSet(ActionMu::from_classical(&mu.group, &act))
            }
            (Object::Arrow(p), Object::Arrow(q)) => {
                let m0 = q.dom();
                Object::Arrow(FinFn::new(
                    p.cod * q.cod,
                    (0..p.dom() * m0).map(|xy| p.apply(xy / m0) * q.cod + q.apply(xy % m0)).collect(),
                ))
            }
            _ => panic!("product of objects from different models"),
        }
    }

    /// `self + other`, with `other`'s elements shifted past `self`'s.
    pub fn coproduct(&self, other: &Object) -> Object {
        match (self, other) {
            (Object::GSet(mu), Object::GSet(nu)) => {
                let k = mu.group.order();
                let n = mu.size();
                let act: Vec<Vec<usize>> = (0..n)
                    .map(|a| (0..k).map(|g| self.act(a, g)).collect())
                    .chain((0..nu.size()).map(|b| (0..k).map(|g| other.act(b, g) + n).collect()))
                    .collect();
                Object::GSet(ActionMu::from_classical(&mu.group, &act))
            }
            (Object::Arrow(p), Object::Arrow(q)) => Object::Arrow(FinFn::new(
                p.cod + q.cod,
                p.map.iter().copied().chain(q.map.iter().map(|&y| y + p.cod)).collect(),
            )),
            _ => panic!("coproduct of objects from different models"),
        }
    }
}

impl Model {
    /// The group the point's automorphisms should turn out to be.
    pub fn group(&self) -> DiscreteGroup {
        match self {
            Model::GSets(g) => g.clone(),
            Model::ArrowPresheaves => DiscreteGroup::trivial(),
        }
    }

    pub fn terminal(&self) -> Object {
        match self {
            Model::GSets(g) => Object::GSet(ActionMu::trivial(g, 1)),
            Model::ArrowPresheaves => Object::Arrow(FinFn::identity(1)),
        }
    }

    /// Every object with `|F X| ≤ bound` (and `|X₀| ≤ bound` for presheaves
    /// on the arrow), one per labelled structure.
    pub fn objects(&self, bound: usize, limits: &Limits) -> Result<Vec<Object>, TannakaError> {
        let mut out = Vec::new();
        match self {
            Model::GSets(g) => {
                for n in 0..=bound {
                    out.extend(actions(g, n, limits)?.into_iter().map(Object::GSet));
                }
            }
            Model::ArrowPresheaves => {
                for n1 in 0..=bound {
                    for n0 in 0..=bound {
                        out.extend(all_functions(n0, n1).map(Object::Arrow));
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn name(&self) -> String {
        match self {
            Model::GSets(g) => format!("gsets({})", g.order()),
            Model::ArrowPresheaves => "arrow-presheaves".into(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteArrow {
    pub src: usize,
    pub dst: usize,
    pub map: FinFn,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SiteRelation {
    pub src: usize,
    pub dst: usize,
    pub rel: Relation,
}

/// A finite full subcategory of a pointed topos, with every arrow and every
/// relation between its objects already enumerated.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Site {
    pub name: String,
    pub model: Model,
    pub names: Vec<String>,
    pub objects: Vec<Object>,
    pub arrows: Vec<SiteArrow>,
    pub relations: Vec<SiteRelation>,
    offsets: Vec<usize>,
}

/// An arrow from a site object into some object, seen through `F`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Cover {
    pub obj: usize,
    pub map: FinFn,
}

impl Site {
    pub fn new(name: impl Into<String>, model: Model, objects: Vec<(String, Object)>) -> Site {
        let (names, objects): (Vec<String>, Vec<Object>) = objects.into_iter().unzip();
        let mut arrows = Vec::new();
        let mut relations = Vec::new();
        for (i, x) in objects.iter().enumerate() {
            for (j, y) in objects.iter().enumerate() {
                arrows.extend(x.hom(y).into_iter().map(|map| SiteArrow { src: i, dst: j, map }));
                relations.extend(x.subobjects(y).into_iter().map(|rel| SiteRelation { src: i, dst: j, rel }));
            }
        }
        let mut offsets = vec![0];
        for x in &objects {
            offsets.push(offsets.last().unwrap() + x.fiber() * x.fiber());
        }
        Site { name: name.into(), model, names, objects, arrows, relations, offsets }
    }

    /// Transitive `G₀`-sets `1` and `G₀`.
    pub fn cyclic(n: usize) -> Site {
        let g = DiscreteGroup::cyclic(n);
        Site::new(
            format!("z{n}"),
            Model::GSets(g.clone()),
            vec![("1".into(), Object::GSet(ActionMu::trivial(&g, 1))), (format!("Z{n}"), Object::GSet(ActionMu::regular(&g)))],
        )
    }

    pub fn z2() -> Site {
        Site::cyclic(2)
    }

    pub fn z3() -> Site {
        Site::cyclic(3)
    }

    /// Finite sets, generated by the point.
    pub fn terminal() -> Site {
        let g = DiscreteGroup::trivial();
        Site::new("terminal", Model::GSets(g.clone()), vec![("1".into(), Object::GSet(ActionMu::trivial(&g, 1)))])
    }

    /// Presheaves on `0 → 1` evaluated at `1`, generated by the two
    /// representables: `y0 = (1 → 1)` and `y1 = (∅ → 1)`.
    pub fn arrow() -> Site {
        Site::new(
            "arrow",
            Model::ArrowPresheaves,
            vec![
                ("y0".into(), Object::Arrow(FinFn::identity(1))),
                ("y1".into(), Object::Arrow(FinFn::new(1, vec![]))),
            ],
        )
    }

    pub fn bundled() -> Vec<Site> {
        vec![Site::z2(), Site::z3(), Site::terminal(), Site::arrow()]
    }

    pub fn by_name(name: &str) -> Option<Site> {
        Site::bundled().into_iter().find(|s| s.name == name)
    }

    pub fn size(&self, c: usize) -> usize {
        self.objects[c].fiber()
    }

    /// Index of `(C, a, b)` among all pairs `F C × F C`, objects in order.
    pub fn cell(&self, c: usize, a: usize, b: usize) -> usize {
        self.offsets[c] + a * self.size(c) + b
    }

    pub fn cell_count(&self) -> usize {
        *self.offsets.last().unwrap()
    }

    pub fn cells(&self) -> impl Iterator<Item = (usize, usize, usize)> + '_ {
        (0..self.objects.len()).flat_map(move |c| {
            let n = self.size(c);
            (0..n * n).map(move |ab| (c, ab / n, ab % n))
        })
    }

    pub fn cell_name(&self, c: usize, a: usize, b: usize) -> String {
        format!("<{},{a}|{b}>", self.names[c])
    }

    /// The site object with one-point fiber receiving exactly one arrow from
    /// every site object.
    pub fn terminal_object(&self) -> Option<usize> {
        (0..self.objects.len()).find(|&t| {
            self.size(t) == 1 && (0..self.objects.len()).all(|c| self.arrows.iter().filter(|f| f.src == c && f.dst == t).count() == 1)
        })
    }

    /// Every arrow from a site object into `x`.
    pub fn covers(&self, x: &Object) -> Vec<Cover> {
        self.objects
            .iter()
            .enumerate()
            .flat_map(|(obj, c)| c.hom(x).into_iter().map(move |map| Cover { obj, map }))
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_site_shape() {
        let s = Site::z2();
        assert_eq!(s.cell_count(), 5);
        // 1 → 1, Z2 → 1, and the two automorphisms of Z2
        assert_eq!(s.arrows.len(), 4);
        assert_eq!(s.terminal_object(), Some(0));
        // sub-Z2-sets of Z2 × Z2: unions of its two orbits
        assert_eq!(s.relations.iter().filter(|r| r.src == 1 && r.dst == 1).count(), 4);
    }

    #[test]
    fn arrow_site_shape() {
        let s = Site::arrow();
        // id_y0, id_y1, y1 → y0
        assert_eq!(s.arrows.len(), 3);
        assert_eq!(s.terminal_object(), Some(0));
        // y0 × y0 = y0 has three subobjects, two of which look alike under F
        let rels: Vec<usize> = s.relations.iter().filter(|r| r.src == 0 && r.dst == 0).map(|r| r.rel.len()).collect();
        assert_eq!(rels, vec![0, 1, 1]);
    }

    #[test]
    fn arrow_hom_counts() {
        let x = Object::Arrow(FinFn::new(1, vec![0, 0]));
        // endomorphisms of 2 → 1: all four maps of the fiber over the point
        assert_eq!(x.hom(&x).len(), 4);
        assert!(x.hom(&x).iter().all(|f| *f == FinFn::identity(1)));
    }

    #[test]
    fn products_and_coproducts() {
        let s = Site::z2();
        let z2 = &s.objects[1];
        let p = z2.product(z2);
        assert_eq!(p.fiber(), 4);
        // Z2 × Z2 ≅ Z2 + Z2: four equivariant maps from Z2
        assert_eq!(z2.hom(&p).len(), 4);
        assert_eq!(z2.coproduct(z2).fiber(), 4);
        assert_eq!(s.model.objects(3, &Limits::default()).unwrap().len(), 1 + 1 + 2 + 4);
    }
}
