use super::{Elem, FinFn, Lattice, LinMap, SupError};
use fixedbitset::FixedBitSet;

/// A relation `R ⊆ X × Y` between `{0..nx}` and `{0..ny}`, stored by rows.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Relation {
    ny: usize,
    rows: Vec<FixedBitSet>,
}

impl Relation {
    pub fn empty(nx: usize, ny: usize) -> Relation {
        Relation { ny, rows: vec![FixedBitSet::with_capacity(ny); nx] }
    }

    pub fn full(nx: usize, ny: usize) -> Relation {
        let mut r = Relation::empty(nx, ny);
        for row in &mut r.rows {
            row.insert_range(..);
        }
        r
    }

    pub fn diagonal(n: usize) -> Relation {
        Relation::from_pairs(n, n, (0..n).map(|i| (i, i)))
    }

    pub fn from_pairs(nx: usize, ny: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Relation {
        let mut r = Relation::empty(nx, ny);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    /// The relation whose pairs are the bits of `mask`, pair `(x, y)` at bit `x * ny + y`.
    pub fn from_mask(nx: usize, ny: usize, mask: u64) -> Relation {
        Relation::from_pairs(nx, ny, (0..nx * ny).filter(|i| mask >> i & 1 == 1).map(|i| (i / ny, i % ny)))
    }

    pub fn graph(f: &FinFn) -> Relation {
        Relation::from_pairs(f.dom(), f.cod, f.map.iter().copied().enumerate())
    }

    pub fn nx(&self) -> usize {
        self.rows.len()
    }

    pub fn ny(&self) -> usize {
        self.ny
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x].insert(y);
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x].contains(y)
    }

    pub fn row(&self, x: usize) -> &FixedBitSet {
        &self.rows[x]
    }

    pub fn len(&self) -> usize {
        self.rows.iter().map(|r| r.count_ones(..)).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Pairs in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows.iter().enumerate().flat_map(|(x, row)| row.ones().map(move |y| (x, y)))
    }

    pub fn op(&self) -> Relation {
        Relation::from_pairs(self.ny, self.nx(), self.pairs().map(|(x, y)| (y, x)))
    }

    /// Relational composite: first `self`, then `other`.
    pub fn then(&self, other: &Relation) -> Relation {
        assert_eq!(self.ny, other.nx());
        let mut out = Relation::empty(self.nx(), other.ny);
        for (x, row) in self.rows.iter().enumerate() {
            for y in row.ones() {
                out.rows[x].union_with(&other.rows[y]);
            }
        }
        out
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a.is_subset(b))
    }

    /// The function this relation is the graph of, if any.
    pub fn as_function(&self) -> Option<FinFn> {
        let map: Option<Vec<usize>> = self
            .rows
            .iter()
            .map(|r| if r.count_ones(..) == 1 { r.ones().next() } else { None })
            .collect();
        map.map(|m| FinFn { cod: self.ny, map: m })
    }

    /// The image of a subset (given as a bitmask) under the relation.
    pub fn image_mask(&self, a: u32) -> u32 {
        let mut out = 0u32;
        for (x, row) in self.rows.iter().enumerate() {
            if a >> x & 1 == 1 {
                for y in row.ones() {
                    out |= 1 << y;
                }
            }
        }
        out
    }
}

/// The linear map `ℓX → ℓY` sending `A` to its direct image under `R`.
pub fn relation_to_linmap(r: &Relation) -> LinMap {
    let lx = Lattice::power(r.nx());
    let ly = Lattice::power(r.ny());
    LinMap::from_fn_unchecked(&lx, &ly, |a| Elem(r.image_mask(a.0)))
}

/// Recovers the relation from a linear map between power lattices by reading
/// off the images of singletons. Fails on non-power lattices.
pub fn linmap_to_relation(f: &LinMap) -> Result<Relation, SupError> {
    let (nx, ny) = match (f.source().power_base(), f.target().power_base()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(SupError::Shape("relations live between power lattices".into())),
    };
    let mut r = Relation::empty(nx, ny);
    for x in 0..nx {
        let img = f.apply(Elem(1 << x)).0;
        for y in 0..ny {
            if img >> y & 1 == 1 {
                r.insert(x, y);
            }
        }
    }
    Ok(r)
}

pub fn opposite(r: &Relation) -> Relation {
    r.op()
}

/// The dual of a linear map between power lattices under their self-duality,
/// computed as `B ↦ X \ f_*(Y \ B)` from the right adjoint `f_*`.
pub fn dual_map(f: &LinMap) -> Result<LinMap, SupError> {
    let (nx, ny) = match (f.source().power_base(), f.target().power_base()) {
        (Some(a), Some(b)) => (a, b),
        _ => return Err(SupError::Shape("duals are taken between power lattices".into())),
    };
    let right = f.right_adjoint();
    let full_x = ((1u64 << nx) - 1) as u32;
    let full_y = ((1u64 << ny) - 1) as u32;
    Ok(LinMap::from_fn_unchecked(f.target(), f.source(), |b| {
        Elem(full_x & !right.table[(full_y & !b.0) as usize].0)
    }))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::suplat::all_functions;

    #[test]
    fn diagonal_is_identity() {
        for n in 0..4 {
            assert_eq!(relation_to_linmap(&Relation::diagonal(n)), LinMap::identity(&Lattice::power(n)));
        }
    }

    #[test]
    fn empty_is_zero() {
        let f = relation_to_linmap(&Relation::empty(2, 3));
        assert!(f.table().iter().all(|&e| e == Elem(0)));
    }

    #[test]
    fn two_to_one_example() {
        // X = {a, b}, Y = {c}
        let r = Relation::from_pairs(2, 1, [(0, 0), (1, 0)]);
        let f = relation_to_linmap(&r);
        assert_eq!(f.apply(Elem(0b01)), Elem(1));
        assert_eq!(f.apply(Elem(0b10)), Elem(1));
        assert_eq!(linmap_to_relation(&f).unwrap(), r);
    }

    #[test]
    fn double_opposite() {
        let r = Relation::from_pairs(2, 3, [(0, 2), (1, 0)]);
        assert_eq!(r.op().op(), r);
        assert_eq!(Relation::diagonal(3).op(), Relation::diagonal(3));
    }

    #[test]
    fn opposite_of_graph_is_inverse_image() {
        for nx in 0..=3 {
            for ny in 0..=3 {
                for f in all_functions(nx, ny) {
                    let g = relation_to_linmap(&Relation::graph(&f).op());
                    for b in 0u32..(1 << ny) {
                        let pre = (0..nx).filter(|&x| b >> f.apply(x) & 1 == 1).fold(0, |m, x| m | 1 << x);
                        assert_eq!(g.apply(Elem(b)), Elem(pre));
                    }
                }
            }
        }
    }

    #[test]
    fn dual_matches_opposite() {
        for mask in 0u64..(1 << 6) {
            let r = Relation::from_mask(2, 3, mask);
            let f = relation_to_linmap(&r);
            assert_eq!(dual_map(&f).unwrap(), relation_to_linmap(&r.op()));
        }
    }
}
