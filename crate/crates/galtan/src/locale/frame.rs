use crate::suplat::{Elem, Lattice};

/// Result of checking binary distributivity on a finite lattice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FrameReport {
    pub holds: bool,
    /// First `(a, b, c)` with `a ∧ (b ∨ c) ≠ (a ∧ b) ∨ (a ∧ c)`, as labels.
    pub witness: Option<(String, String, String)>,
}

/// On a finite lattice the frame law reduces to binary distributivity.
pub fn is_frame(l: &Lattice) -> FrameReport {
    if l.power_base().is_some() {
        return FrameReport { holds: true, witness: None };
    }
    for a in l.elems() {
        for b in l.elems() {
            for c in l.elems().filter(|&c| c > b) {
                if l.meet(a, l.join(b, c)) != l.join(l.meet(a, b), l.meet(a, c)) {
                    return FrameReport { holds: false, witness: Some((l.label(a), l.label(b), l.label(c))) };
                }
            }
        }
    }
    FrameReport { holds: true, witness: None }
}

/// A commutative monoid in Sup on a finite lattice: a multiplication table
/// that distributes over joins, and a unit.
#[derive(Clone, Debug)]
pub struct CommAlgebra {
    pub carrier: Lattice,
    mul: Vec<Elem>,
    pub unit: Elem,
}

impl CommAlgebra {
    pub fn new(carrier: Lattice, mul: impl Fn(Elem, Elem) -> Elem, unit: Elem) -> CommAlgebra {
        let n = carrier.size();
        let table = (0..n * n).map(|i| mul(Elem((i / n) as u32), Elem((i % n) as u32))).collect();
        CommAlgebra { carrier, mul: table, unit }
    }

    /// `(ℓX, ∩, X)`.
    pub fn power_meet(n: usize) -> CommAlgebra {
        let l = Lattice::power(n);
        let top = l.top();
        CommAlgebra::new(l, |a, b| Elem(a.0 & b.0), top)
    }

    /// Convolution on `ℓG₀`: `U * V = {uv}` with unit `{e}`, for a group table
    /// whose identity is element `0`.
    pub fn convolution(table: &[Vec<usize>]) -> CommAlgebra {
        let n = table.len();
        let l = Lattice::power(n);
        CommAlgebra::new(
            l,
            |a, b| {
                let mut out = 0u32;
                for x in (0..n).filter(|x| a.0 >> x & 1 == 1) {
                    for y in (0..n).filter(|y| b.0 >> y & 1 == 1) {
                        out |= 1 << table[x][y];
                    }
                }
                Elem(out)
            },
            Elem(1),
        )
    }

    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.mul[a.idx() * self.carrier.size() + b.idx()]
    }

    /// Associativity, commutativity, unit and bilinearity of the table.
    pub fn is_valid(&self) -> bool {
        let l = &self.carrier;
        l.elems().all(|a| {
            self.mul(a, self.unit) == a
                && l.elems().all(|b| {
                    self.mul(a, b) == self.mul(b, a)
                        && l.elems().all(|c| {
                            self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c))
                                && self.mul(a, l.join(b, c)) == l.join(self.mul(a, b), self.mul(a, c))
                        })
                })
        }) && l.elems().all(|a| self.mul(a, l.bottom()) == l.bottom())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocaleAlgebraReport {
    pub idempotent: bool,
    pub unit_is_top: bool,
    /// Set when both conditions hold: whether the product is then the meet.
    pub product_is_meet: Option<bool>,
    pub witness: Option<String>,
}

impl LocaleAlgebraReport {
    pub fn holds(&self) -> bool {
        self.idempotent && self.unit_is_top
    }
}

/// Checks `x * x = x` for all `x` and `u = 1`.
pub fn is_locale_algebra(a: &CommAlgebra) -> LocaleAlgebraReport {
    let l = &a.carrier;
    let bad = l.elems().find(|&x| a.mul(x, x) != x);
    let unit_is_top = a.unit == l.top();
    let mut witness = bad.map(|x| format!("{0} * {0} = {1}", l.label(x), l.label(a.mul(x, x))));
    if !unit_is_top && witness.is_none() {
        witness = Some(format!("unit {} is not the top {}", l.label(a.unit), l.label(l.top())));
    }
    let product_is_meet = (bad.is_none() && unit_is_top)
        .then(|| l.elems().all(|x| l.elems().all(|y| a.mul(x, y) == l.meet(x, y))));
    LocaleAlgebraReport { idempotent: bad.is_none(), unit_is_top, product_is_meet, witness }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suplat::Limits;

    #[test]
    fn diamond_is_not_a_frame() {
        let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let m3 = Lattice::from_order(labels, |x, y| x == y || x == 0 || y == 4, &Limits::default()).unwrap();
        let r = is_frame(&m3);
        assert!(!r.holds);
        let (a, b, c) = r.witness.unwrap();
        let (a, b, c) = (m3.lookup(&a).unwrap(), m3.lookup(&b).unwrap(), m3.lookup(&c).unwrap());
        assert_ne!(m3.meet(a, m3.join(b, c)), m3.join(m3.meet(a, b), m3.meet(a, c)));
    }

    #[test]
    fn chains_and_powers_are_frames() {
        assert!(is_frame(&Lattice::chain(3)).holds);
        assert!(is_frame(&Lattice::power(3).to_table(&Limits::default()).unwrap()).holds);
    }

    #[test]
    fn power_meet_is_locale_algebra() {
        let a = CommAlgebra::power_meet(3);
        assert!(a.is_valid());
        let r = is_locale_algebra(&a);
        assert!(r.holds());
        assert_eq!(r.product_is_meet, Some(true));
    }

    #[test]
    fn convolution_fails_on_unit() {
        let a = CommAlgebra::convolution(&[vec![0, 1], vec![1, 0]]);
        assert!(a.is_valid());
        let r = is_locale_algebra(&a);
        assert!(!r.unit_is_top);
        // {e, σ} * {e, σ} = {e, σ}, but {σ} * {σ} = {e}
        assert!(!r.idempotent);
    }
}
