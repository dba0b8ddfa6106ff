use super::{BiIdeal, Elem, Lattice, SupLattice, Tensor};

/// Unit and counit of the self-duality of `ℓX`:
/// `η(1) = ⋁_x x⊗x` and `ε(x⊗y) = [x = y]`.
#[derive(Clone, Debug)]
pub struct DualityData {
    power: Lattice,
    pair: Tensor<Lattice>,
    triple: Tensor<Tensor<Lattice>>,
}

/// Outcome of evaluating both triangular equations on every element of `ℓX`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TriangleReport {
    pub base_size: usize,
    pub left_holds: bool,
    pub right_holds: bool,
    /// First element of `ℓX` where an equation failed.
    pub witness: Option<String>,
}

pub fn duality_data(n: usize) -> DualityData {
    let power = Lattice::power(n);
    let pair = Tensor::new(power.clone(), power.clone());
    let triple = Tensor::new(pair.clone(), power.clone());
    DualityData { power, pair, triple }
}

impl DualityData {
    pub fn power(&self) -> &Lattice {
        &self.power
    }

    pub fn pair(&self) -> &Tensor<Lattice> {
        &self.pair
    }

    fn singleton(x: usize) -> Elem {
        Elem(1 << x)
    }

    fn base(&self) -> usize {
        self.power.power_base().unwrap_or(0)
    }

    pub fn eta(&self) -> BiIdeal<Elem> {
        let p = &self.pair;
        p.join_all((0..self.base()).map(|x| p.pure(&Self::singleton(x), Self::singleton(x))))
    }

    /// `ε` on an element of `ℓX ⊗ ℓX`, valued in `2` as a boolean.
    pub fn epsilon(&self, d: &BiIdeal<Elem>) -> bool {
        let two = Lattice::two();
        self.pair.extend_bilinear(d, &two, |s, t| Elem((s.0 & t.0 != 0) as u32)) == two.top()
    }

    /// `(ε ⊗ ℓX)(ℓX ⊗ η)` applied to `a`, computed in `(ℓX ⊗ ℓX) ⊗ ℓX`.
    pub fn left_composite(&self, a: Elem) -> Elem {
        let outer = &self.triple;
        let e = outer.join_all(
            (0..self.base()).map(|x| outer.pure(&self.pair.pure(&a, Self::singleton(x)), Self::singleton(x))),
        );
        outer.extend_bilinear(&e, &self.power, |d, u| if self.epsilon(d) { u } else { Elem(0) })
    }

    /// `(ℓX ⊗ ε)(η ⊗ ℓX)` applied to `a`.
    pub fn right_composite(&self, a: Elem) -> Elem {
        let e = self.triple.pure(&self.eta(), a);
        self.triple.extend_bilinear(&e, &self.power, |d, u| {
            self.pair.extend_bilinear(d, &self.power, |s, t| if t.0 & u.0 != 0 { *s } else { Elem(0) })
        })
    }

    pub fn triangles(&self) -> TriangleReport {
        let mut report = TriangleReport { base_size: self.base(), left_holds: true, right_holds: true, witness: None };
        for a in self.power.elems() {
            let l = self.left_composite(a) == a;
            let r = self.right_composite(a) == a;
            report.left_holds &= l;
            report.right_holds &= r;
            if (!l || !r) && report.witness.is_none() {
                report.witness = Some(self.power.label(a));
            }
        }
        report
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn empty_base() {
        let d = duality_data(0);
        assert_eq!(d.eta(), d.pair().bottom());
        let r = d.triangles();
        assert!(r.left_holds && r.right_holds);
    }

    #[test]
    fn one_point() {
        let d = duality_data(1);
        assert_eq!(d.eta(), d.pair().pure(&Elem(1), Elem(1)));
        assert!(d.epsilon(&d.eta()));
    }

    #[test]
    fn epsilon_on_pure_singletons() {
        let d = duality_data(3);
        for x in 0..3 {
            for y in 0..3 {
                let p = d.pair().pure(&Elem(1 << x), Elem(1 << y));
                assert_eq!(d.epsilon(&p), x == y);
            }
        }
    }

    #[test]
    fn triangles_up_to_three() {
        for n in 0..=3 {
            let r = duality_data(n).triangles();
            assert!(r.left_holds && r.right_holds, "{r:?}");
        }
    }
}
