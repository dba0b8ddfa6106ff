use super::{CompleteLattice, Elem, Lattice, Limits, LinMap, SupError, SupLattice};
use std::collections::{HashMap, HashSet, VecDeque};

/// An element of `S ⊗ T`: a bi-ideal of `S × T`, stored as the column vector
/// indexed by elements of `T`. Entry `t` is the largest `s` with `(s, t)` in
/// the bi-ideal.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct BiIdeal<E>(pub Vec<E>);

impl<E> BiIdeal<E> {
    pub fn column(&self, t: Elem) -> &E {
        &self.0[t.idx()]
    }
}

/// The tensor product of a finite lattice `S` (any [`CompleteLattice`], so
/// tensors nest on the left) with a finite [`Lattice`] `T`. Elements are
/// computed on demand.
#[derive(Clone, Debug)]
pub struct Tensor<L> {
    left: L,
    right: Lattice,
}

impl<L: CompleteLattice> Tensor<L> {
    pub fn new(left: L, right: Lattice) -> Tensor<L> {
        Tensor { left, right }
    }

    pub fn left(&self) -> &L {
        &self.left
    }

    pub fn right(&self) -> &Lattice {
        &self.right
    }

    /// Smallest bi-ideal containing `(col[t], t)` for every `t`.
    pub fn close(&self, mut col: Vec<L::Elem>) -> BiIdeal<L::Elem> {
        let s = &self.left;
        let t = &self.right;
        col[t.bottom().idx()] = s.top();
        loop {
            let mut changed = false;
            for a in t.elems() {
                for b in t.down_set(a) {
                    if b == a {
                        continue;
                    }
                    let v = s.join(&col[b.idx()], &col[a.idx()]);
                    if v != col[b.idx()] {
                        col[b.idx()] = v;
                        changed = true;
                    }
                }
            }
            for a in t.elems() {
                for b in t.elems().filter(|&b| b > a) {
                    let j = t.join(a, b);
                    if j == a || j == b {
                        continue;
                    }
                    let m = s.meet(&col[a.idx()], &col[b.idx()]);
                    let v = s.join(&col[j.idx()], &m);
                    if v != col[j.idx()] {
                        col[j.idx()] = v;
                        changed = true;
                    }
                }
            }
            if !changed {
                return BiIdeal(col);
            }
        }
    }

    /// `s ⊗ t`.
    pub fn pure(&self, s: &L::Elem, t: Elem) -> BiIdeal<L::Elem> {
        let col = self
            .right
            .elems()
            .map(|u| if self.right.leq(u, t) { s.clone() } else { self.left.bottom() })
            .collect();
        self.close(col)
    }

    /// Whether a column vector already is a bi-ideal.
    pub fn is_bi_ideal(&self, col: &[L::Elem]) -> bool {
        col.len() == self.right.size() && self.close(col.to_vec()).0 == col
    }

    /// Non-redundant pure tensors whose join is `d`.
    pub fn decompose(&self, d: &BiIdeal<L::Elem>) -> Vec<(L::Elem, Elem)> {
        let (s, t) = (&self.left, &self.right);
        t.elems()
            .filter(|&u| u != t.bottom() && d.0[u.idx()] != s.bottom())
            .filter(|&u| t.up_set(u).into_iter().all(|v| v == u || d.0[v.idx()] != d.0[u.idx()]))
            .map(|u| (d.0[u.idx()].clone(), u))
            .collect()
    }

    /// Image of `d` under the linear extension of a bilinear map:
    /// `⋁_t b(d[t], t)`.
    pub fn extend_bilinear<V: SupLattice>(
        &self,
        d: &BiIdeal<L::Elem>,
        target: &V,
        b: impl Fn(&L::Elem, Elem) -> V::Elem,
    ) -> V::Elem {
        target.join_all(self.right.elems().map(|u| b(&d.0[u.idx()], u)))
    }

    /// `(f ⊗ g)(d)` for linear `f: S → S'` and `g: T → T'` given as closures.
    pub fn map_into<M: CompleteLattice>(
        &self,
        d: &BiIdeal<L::Elem>,
        target: &Tensor<M>,
        f: impl Fn(&L::Elem) -> M::Elem,
        g: impl Fn(Elem) -> Elem,
    ) -> BiIdeal<M::Elem> {
        self.extend_bilinear(d, target, |s, t| target.pure(&f(s), g(t)))
    }
}

impl<L: CompleteLattice> SupLattice for Tensor<L> {
    type Elem = BiIdeal<L::Elem>;

    fn bottom(&self) -> Self::Elem {
        let col = vec![self.left.bottom(); self.right.size()];
        self.close(col)
    }

    fn join(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        let col = a.0.iter().zip(&b.0).map(|(x, y)| self.left.join(x, y)).collect();
        self.close(col)
    }

    fn leq(&self, a: &Self::Elem, b: &Self::Elem) -> bool {
        a.0.iter().zip(&b.0).all(|(x, y)| self.left.leq(x, y))
    }

    fn render(&self, a: &Self::Elem) -> String {
        let parts = self.decompose(a);
        if parts.is_empty() {
            return "0".into();
        }
        parts
            .iter()
            .map(|(s, t)| format!("{}⊗{}", self.left.render(s), self.right.label(*t)))
            .collect::<Vec<_>>()
            .join(" ∨ ")
    }
}

impl<L: CompleteLattice> CompleteLattice for Tensor<L> {
    fn top(&self) -> Self::Elem {
        BiIdeal(vec![self.left.top(); self.right.size()])
    }

    fn meet(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        BiIdeal(a.0.iter().zip(&b.0).map(|(x, y)| self.left.meet(x, y)).collect())
    }
}

/// `S ⊗ T` with every element enumerated and an explicit [`Lattice`] on them.
#[derive(Clone, Debug)]
pub struct TensorLattice {
    tensor: Tensor<Lattice>,
    lattice: Lattice,
    ideals: Vec<BiIdeal<Elem>>,
    index: HashMap<BiIdeal<Elem>, Elem>,
}

/// Enumerates `S ⊗ T` as the joins of pure tensors of join-irreducibles.
pub fn tensor(s: &Lattice, t: &Lattice, limits: &Limits) -> Result<TensorLattice, SupError> {
    let tensor = Tensor::new(s.clone(), t.clone());
    let gens: Vec<BiIdeal<Elem>> = s
        .join_irreducibles()
        .into_iter()
        .flat_map(|a| t.join_irreducibles().into_iter().map(move |b| (a, b)))
        .map(|(a, b)| tensor.pure(&a, b))
        .collect();
    let bottom = SupLattice::bottom(&tensor);
    let mut seen: HashSet<BiIdeal<Elem>> = HashSet::from([bottom.clone()]);
    let mut queue = VecDeque::from([bottom]);
    let mut steps = 0usize;
    while let Some(d) = queue.pop_front() {
        for g in &gens {
            steps += 1;
            if steps > limits.max_steps {
                return Err(SupError::Budget(limits.max_steps));
            }
            let j = SupLattice::join(&tensor, &d, g);
            if !seen.contains(&j) {
                if seen.len() >= limits.max_elements {
                    return Err(SupError::TooLarge { size: seen.len() + 1, bound: limits.max_elements });
                }
                seen.insert(j.clone());
                queue.push_back(j);
            }
        }
    }
    let mut ideals: Vec<BiIdeal<Elem>> = seen.into_iter().collect();
    ideals.sort();
    let labels = ideals.iter().map(|d| tensor.render(d)).collect();
    let lattice = Lattice::from_order(labels, |a, b| SupLattice::leq(&tensor, &ideals[a], &ideals[b]), limits)?;
    let index = ideals.iter().enumerate().map(|(i, d)| (d.clone(), Elem(i as u32))).collect();
    Ok(TensorLattice { tensor, lattice, ideals, index })
}

impl TensorLattice {
    pub fn lattice(&self) -> &Lattice {
        &self.lattice
    }

    pub fn tensor(&self) -> &Tensor<Lattice> {
        &self.tensor
    }

    pub fn left(&self) -> &Lattice {
        &self.tensor.left
    }

    pub fn right(&self) -> &Lattice {
        &self.tensor.right
    }

    pub fn ideal(&self, e: Elem) -> &BiIdeal<Elem> {
        &self.ideals[e.idx()]
    }

    /// Index of a bi-ideal. Panics if it is not an element of this tensor.
    pub fn elem(&self, d: &BiIdeal<Elem>) -> Elem {
        self.index[d]
    }

    pub fn pure(&self, s: Elem, t: Elem) -> Elem {
        self.elem(&self.tensor.pure(&s, t))
    }

    /// Linear extension of a bilinear map given on pairs of elements.
    pub fn extend(&self, target: &Lattice, b: impl Fn(Elem, Elem) -> Elem) -> LinMap {
        LinMap::from_fn_unchecked(&self.lattice, target, |e| self.tensor.extend_bilinear(self.ideal(e), target, |s, t| b(*s, t)))
    }
}

/// Outcome of comparing `ℓX ⊗ ℓY` with `ℓ(X × Y)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProductIsoReport {
    pub size: usize,
    /// `2^(|X| |Y|)`.
    pub expected: usize,
    pub bijective: bool,
    /// `R ⊆ R'` iff `φR ≤ φR'`.
    pub order: bool,
    /// `φ(A × B) = A ⊗ B`.
    pub pure: bool,
    pub witness: Option<String>,
}

impl ProductIsoReport {
    pub fn holds(&self) -> bool {
        self.bijective && self.order && self.pure
    }
}

/// Checks that `φ: ℓ(X × Y) → ℓX ⊗ ℓY`, `R ↦ ⋁_{(x,y)∈R} {x} ⊗ {y}`, is an
/// order isomorphism sending products to pure tensors. Pairs are encoded
/// as bit `x * ny + y`.
pub fn power_product_iso(nx: usize, ny: usize, limits: &Limits) -> Result<ProductIsoReport, SupError> {
    let cells = nx * ny;
    if cells > 16 {
        return Err(SupError::TooLarge { size: 1 << cells.min(62), bound: 1 << 16 });
    }
    let tl = tensor(&Lattice::power(nx), &Lattice::power(ny), limits)?;
    let l = tl.lattice();
    let mut phi = vec![l.bottom(); 1 << cells];
    for r in 1..1usize << cells {
        let low = r.trailing_zeros() as usize;
        phi[r] = l.join(phi[r & (r - 1)], tl.pure(Elem(1 << (low / ny)), Elem(1 << (low % ny))));
    }
    let mut witness = None;
    let mut sorted = phi.clone();
    sorted.sort();
    sorted.dedup();
    let bijective = sorted.len() == phi.len() && l.size() == phi.len();
    if !bijective {
        witness = Some(format!("{} distinct images, tensor has {} elements", sorted.len(), l.size()));
    }
    let mut order = true;
    'outer: for r in 0..phi.len() {
        for q in 0..phi.len() {
            if (r & !q == 0) != l.leq(phi[r], phi[q]) {
                order = false;
                witness.get_or_insert(format!("order differs at masks {r:#b}, {q:#b}"));
                break 'outer;
            }
        }
    }
    let mut pure = true;
    for a in 0..1usize << nx {
        for b in 0..1usize << ny {
            let rect = (0..cells).filter(|i| a >> (i / ny) & 1 == 1 && b >> (i % ny) & 1 == 1).fold(0, |m, i| m | 1 << i);
            if phi[rect] != tl.pure(Elem(a as u32), Elem(b as u32)) {
                pure = false;
                witness.get_or_insert(format!("A = {a:#b}, B = {b:#b}: product is not sent to A ⊗ B"));
            }
        }
    }
    Ok(ProductIsoReport { size: l.size(), expected: 1 << cells, bijective, order, pure, witness })
}

/// `f ⊗ g : S ⊗ T → S' ⊗ T'`.
pub fn tensor_map(f: &LinMap, g: &LinMap, src: &TensorLattice, dst: &TensorLattice) -> LinMap {
    src.extend(dst.lattice(), |s, t| dst.pure(f.apply(s), g.apply(t)))
}

/// The symmetry `S ⊗ T → T ⊗ S`, computed by transposing the bi-ideal.
pub fn symmetry(st: &TensorLattice, ts: &TensorLattice) -> LinMap {
    let (s, t) = (st.left(), st.right());
    LinMap::from_fn_unchecked(st.lattice(), ts.lattice(), |e| {
        let d = st.ideal(e);
        let col = s.elems().map(|a| t.join_all(t.elems().filter(|&b| s.leq(a, d.0[b.idx()])))).collect();
        ts.elem(&BiIdeal(col))
    })
}

/// `(S ⊗ T) ⊗ U → S ⊗ (T ⊗ U)`, with `T ⊗ U` enumerated.
pub fn associator(
    outer: &Tensor<Tensor<Lattice>>,
    target: &Tensor<Lattice>,
    tu: &TensorLattice,
    e: &BiIdeal<BiIdeal<Elem>>,
) -> BiIdeal<Elem> {
    let inner = outer.left();
    outer.extend_bilinear(e, target, |d, u| {
        inner.extend_bilinear(d, target, |s, t| target.pure(s, tu.pure(t, u)))
    })
}

/// `S ⊗ (T ⊗ U) → (S ⊗ T) ⊗ U`, inverse of [`associator`].
pub fn associator_inv(
    source: &Tensor<Lattice>,
    tu: &TensorLattice,
    outer: &Tensor<Tensor<Lattice>>,
    e: &BiIdeal<Elem>,
) -> BiIdeal<BiIdeal<Elem>> {
    let inner = outer.left();
    source.extend_bilinear(e, outer, |s, w| {
        tu.tensor().extend_bilinear(tu.ideal(w), outer, |t, u| outer.pure(&inner.pure(s, *t), u))
    })
}

/// `S ⊗ 2 → S`: the column at the top of `2`.
pub fn unitor<L: CompleteLattice>(tensor: &Tensor<L>, d: &BiIdeal<L::Elem>) -> L::Elem {
    d.0[tensor.right().top().idx()].clone()
}

/// `2 ⊗ T → T`: the join of those `t` whose column is `1`.
pub fn unitor_left(tensor: &Tensor<Lattice>, d: &BiIdeal<Elem>) -> Elem {
    let two = tensor.left();
    tensor.right().join_all(tensor.right().elems().filter(|t| d.0[t.idx()] == two.top()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_tensor_s_is_s() {
        let s = Lattice::chain(3);
        let tl = tensor(&Lattice::two(), &s, &Limits::default()).unwrap();
        assert_eq!(tl.lattice().size(), 3);
        for a in s.elems() {
            assert_eq!(unitor_left(tl.tensor(), tl.ideal(tl.pure(Elem(1), a))), a);
        }
    }

    #[test]
    fn axes_are_in_every_bi_ideal() {
        let tl = tensor(&Lattice::power(2), &Lattice::chain(3), &Limits::default()).unwrap();
        let t = tl.tensor();
        for e in tl.lattice().elems() {
            let d = tl.ideal(e);
            assert_eq!(d.0[0], Elem(3));
            assert!(t.is_bi_ideal(&d.0));
        }
        assert_eq!(tl.pure(Elem(0), Elem(2)), tl.lattice().bottom());
        assert_eq!(tl.pure(Elem(3), Elem(0)), tl.lattice().bottom());
    }

    #[test]
    fn small_power_tensors() {
        let a = tensor(&Lattice::power(2), &Lattice::power(1), &Limits::default()).unwrap();
        assert_eq!(a.lattice().size(), 4);
        let b = tensor(&Lattice::power(2), &Lattice::power(2), &Limits::default()).unwrap();
        assert_eq!(b.lattice().size(), 16);
    }

    #[test]
    fn pure_is_bilinear() {
        let s = Lattice::power(2);
        let t = Lattice::chain(3);
        let tl = tensor(&s, &t, &Limits::default()).unwrap();
        let l = tl.lattice();
        for a in s.elems() {
            for b in s.elems() {
                for c in t.elems() {
                    assert_eq!(tl.pure(s.join(a, b), c), l.join(tl.pure(a, c), tl.pure(b, c)));
                }
            }
            for c in t.elems() {
                for d in t.elems() {
                    assert_eq!(tl.pure(a, t.join(c, d)), l.join(tl.pure(a, c), tl.pure(a, d)));
                }
            }
        }
    }

    #[test]
    fn symmetry_squares_to_identity() {
        let s = Lattice::power(2);
        let t = Lattice::chain(3);
        let st = tensor(&s, &t, &Limits::default()).unwrap();
        let ts = tensor(&t, &s, &Limits::default()).unwrap();
        let there = symmetry(&st, &ts);
        let back = symmetry(&ts, &st);
        assert_eq!(there.then(&back).unwrap(), LinMap::identity(st.lattice()));
        for a in s.elems() {
            for b in t.elems() {
                assert_eq!(there.apply(st.pure(a, b)), ts.pure(b, a));
            }
        }
    }

    #[test]
    fn product_comparison_is_an_iso() {
        for (nx, ny) in [(0, 2), (1, 1), (2, 2), (2, 3)] {
            let r = power_product_iso(nx, ny, &Limits::default()).unwrap();
            assert!(r.holds(), "{nx} x {ny}: {r:?}");
            assert_eq!(r.size, 1 << (nx * ny));
        }
    }

    #[test]
    fn size_guard() {
        let limits = Limits { max_elements: 10, ..Limits::default() };
        let err = tensor(&Lattice::power(2), &Lattice::power(2), &limits).unwrap_err();
        assert!(matches!(err, SupError::TooLarge { .. }));
    }
}
