use super::endt::EndT;
use super::TannakaError;
use crate::suplat::{duality_data, symmetry, tensor, Elem, Lattice, Limits, LinMap, SupLattice, TensorLattice};

/// The coalgebra and antipode of `End^∨(T)` computed as composites of
/// linear maps out of `TX ⊗ TX^∧`, with `End^∨(T)` materialized.
pub struct EndHopf<'a> {
    endt: &'a EndT,
    lattice: Lattice,
    elems: Vec<u64>,
    square: TensorLattice,
    pairs: Vec<PairData>,
}

struct PairData {
    pair: TensorLattice,
    /// `λ_C` extended linearly to `ℓ(FC) ⊗ ℓ(FC)`.
    lambda: LinMap,
    swap: LinMap,
    eta: Vec<(Elem, Elem)>,
}

/// Each composite against its closed formula, plus well-definedness of the
/// structure maps on the coend relations.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositeReport {
    pub size: usize,
    pub m: bool,
    pub u: bool,
    pub w: bool,
    pub epsilon: bool,
    pub iota: bool,
    pub well_defined: bool,
    pub witness: Option<String>,
}

impl CompositeReport {
    pub fn holds(&self) -> bool {
        self.m && self.u && self.w && self.epsilon && self.iota && self.well_defined
    }
}

impl<'a> EndHopf<'a> {
    pub fn new(endt: &'a EndT, limits: &Limits) -> Result<EndHopf<'a>, TannakaError> {
        let (lattice, elems) = endt.coend().lattice(limits)?;
        let square = tensor(&lattice, &lattice, limits)?;
        let site = endt.site();
        let mut pairs = Vec::new();
        for c in 0..site.objects.len() {
            let n = site.size(c);
            let power = Lattice::power(n);
            let pair = tensor(&power, &power, limits)?;
            let index = |d: u64| Elem(elems.binary_search(&d).expect("classes are elements") as u32);
            let lambda = pair.extend(&lattice, |s, t| {
                let d = (0..n)
                    .filter(|&a| s.0 >> a & 1 == 1)
                    .flat_map(|a| (0..n).filter(move |&b| t.0 >> b & 1 == 1).map(move |b| (a, b)))
                    .fold(endt.coend().bottom(), |acc, (a, b)| endt.coend().join(&acc, &endt.class(c, a, b)));
                index(d)
            });
            let swap = symmetry(&pair, &pair);
            let dual = duality_data(n);
            let eta = pair.tensor().decompose(&dual.eta());
            pairs.push(PairData { pair, lambda, swap, eta });
        }
        Ok(EndHopf { endt, lattice, elems, square, pairs })
    }

    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn square(&self) -> &TensorLattice {
        &self.square
    }

    /// The lattice element of a closed set.
    pub fn elem(&self, d: u64) -> Elem {
        Elem(self.elems.binary_search(&d).expect("closed set") as u32)
    }

    pub fn closed(&self, e: Elem) -> u64 {
        self.elems[e.idx()]
    }

    fn singleton_pair(&self, c: usize, a: usize, b: usize) -> Elem {
        self.pairs[c].pair.pure(Elem(1 << a), Elem(1 << b))
    }

    /// `(λ ⊗ λ)(a ⊗ η ⊗ b)`.
    pub fn w(&self, c: usize, a: usize, b: usize) -> Elem {
        let p = &self.pairs[c];
        let sq = &self.square;
        sq.lattice().join_all(p.eta.iter().map(|&(s, t)| {
            let left = p.lambda.apply(p.pair.pure(Elem(1 << a), s));
            let right = p.lambda.apply(p.pair.pure(t, Elem(1 << b)));
            sq.pure(left, right)
        }))
    }

    /// `⋁_x [C,a,x] ⊗ [C,x,b]`.
    pub fn w_formula(&self, c: usize, a: usize, b: usize) -> Elem {
        let sq = &self.square;
        let n = self.endt.site().size(c);
        sq.lattice()
            .join_all((0..n).map(|x| sq.pure(self.elem(self.endt.class(c, a, x)), self.elem(self.endt.class(c, x, b)))))
    }

    /// The duality counit of `ℓ(FC)` on `a ⊗ b`.
    pub fn epsilon(&self, c: usize, a: usize, b: usize) -> bool {
        let dual = duality_data(self.endt.site().size(c));
        let p = &self.pairs[c].pair;
        dual.epsilon(p.ideal(self.singleton_pair(c, a, b)))
    }

    /// `λ ∘ swap` on `a ⊗ b`.
    pub fn iota(&self, c: usize, a: usize, b: usize) -> u64 {
        let p = &self.pairs[c];
        self.closed(p.lambda.apply(p.swap.apply(self.singleton_pair(c, a, b))))
    }

    pub fn check(&self) -> Result<CompositeReport, TannakaError> {
        let e = self.endt;
        let site = e.site();
        let compat = e.compatibility()?;
        let mut r = CompositeReport {
            size: self.lattice.size(),
            m: compat.holds,
            u: compat.unit,
            w: true,
            epsilon: true,
            iota: true,
            well_defined: true,
            witness: compat.witness,
        };
        let cells: Vec<(usize, usize, usize)> = site.cells().collect();
        for &(c, a, b) in &cells {
            let name = site.cell_name(c, a, b);
            if self.w(c, a, b) != self.w_formula(c, a, b) {
                r.w = false;
                r.witness.get_or_insert(format!("w at {name}"));
            }
            if self.epsilon(c, a, b) != (a == b) {
                r.epsilon = false;
                r.witness.get_or_insert(format!("epsilon at {name}"));
            }
            if self.iota(c, a, b) != e.class(c, b, a) {
                r.iota = false;
                r.witness.get_or_insert(format!("iota at {name}"));
            }
        }
        let sq = self.square.lattice();
        let coend = e.coend();
        for eq in &coend.equations {
            let side = |mask: u64| cells.iter().enumerate().filter(move |(i, _)| mask >> i & 1 == 1).map(|(_, &c)| c);
            let w = |mask| sq.join_all(side(mask).map(|(c, a, b)| self.w(c, a, b)));
            let eps = |mask| side(mask).any(|(c, a, b)| self.epsilon(c, a, b));
            let iota = |mask| side(mask).fold(coend.bottom(), |acc, (c, a, b)| coend.join(&acc, &self.iota(c, a, b)));
            if w(eq.lhs) != w(eq.rhs) || eps(eq.lhs) != eps(eq.rhs) || iota(eq.lhs) != iota(eq.rhs) {
                r.well_defined = false;
                r.witness.get_or_insert(format!("structure maps split the relation {}", eq.name));
            }
        }
        Ok(r)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tannaka::model::Site;

    #[test]
    fn composites_match_formulas() {
        for site in [Site::z2(), Site::terminal(), Site::arrow(), Site::z3()] {
            let e = EndT::build(&site).unwrap();
            let h = EndHopf::new(&e, &Limits::default()).unwrap();
            let r = h.check().unwrap();
            assert!(r.holds(), "{}: {r:?}", site.name);
        }
    }

    #[test]
    fn z2_coproduct_is_that_of_the_group() {
        let e = EndT::build(&Site::z2()).unwrap();
        let h = EndHopf::new(&e, &Limits::default()).unwrap();
        // w[Z2,0,0] = [0,0]⊗[0,0] ∨ [0,1]⊗[1,0]: the elements whose product is e
        let ee = h.elem(e.class(1, 0, 0));
        let gg = h.elem(e.class(1, 0, 1));
        let sq = h.square();
        let expected = sq.lattice().join(sq.pure(ee, ee), sq.pure(gg, gg));
        assert_eq!(h.w(1, 0, 0), expected);
    }
}
