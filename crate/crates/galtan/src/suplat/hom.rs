use super::{Elem, Lattice, Limits, LinMap, SupError};

/// The lattice of linear maps `S → T` under the pointwise order, together
/// with the maps themselves (element `i` of the lattice is `maps[i]`).
#[derive(Clone, Debug)]
pub struct HomLattice {
    pub lattice: Lattice,
    pub maps: Vec<LinMap>,
}

impl HomLattice {
    pub fn map(&self, e: Elem) -> &LinMap {
        &self.maps[e.idx()]
    }

    pub fn index_of(&self, f: &LinMap) -> Option<Elem> {
        self.maps.iter().position(|g| g.table() == f.table()).map(|i| Elem(i as u32))
    }
}

/// Calls `visit` with the table of every linear map `S → T`, in lexicographic
/// order of the images of join-irreducibles. Returns the number of maps.
pub fn for_each_linear_map(
    s: &Lattice,
    t: &Lattice,
    limits: &Limits,
    mut visit: impl FnMut(&[Elem]),
) -> Result<usize, SupError> {
    let mut jis = s.join_irreducibles();
    jis.sort_by_key(|&j| (s.down_set(j).len(), j));
    let below: Vec<Vec<usize>> = s
        .elems()
        .map(|a| (0..jis.len()).filter(|&k| s.leq(jis[k], a)).collect())
        .collect();
    let pairs: Vec<(Elem, Elem, Elem)> = s
        .elems()
        .flat_map(|a| s.elems().filter(move |&b| b > a).map(move |b| (a, b)))
        .map(|(a, b)| (a, b, s.join(a, b)))
        .filter(|&(a, b, j)| j != a && j != b)
        .collect();
    let mut values = vec![t.bottom(); jis.len()];
    let mut table = vec![t.bottom(); s.size()];
    let mut count = 0usize;
    let mut steps = 0usize;

    struct Ctx<'a> {
        s: &'a Lattice,
        t: &'a Lattice,
        jis: &'a [Elem],
        below: &'a [Vec<usize>],
        pairs: &'a [(Elem, Elem, Elem)],
        max_steps: usize,
    }

    fn rec(
        ctx: &Ctx,
        k: usize,
        values: &mut Vec<Elem>,
        table: &mut Vec<Elem>,
        count: &mut usize,
        steps: &mut usize,
        visit: &mut dyn FnMut(&[Elem]),
    ) -> Result<(), SupError> {
        *steps += 1;
        if *steps > ctx.max_steps {
            return Err(SupError::Budget(ctx.max_steps));
        }
        if k == ctx.jis.len() {
            for a in ctx.s.elems() {
                table[a.idx()] = ctx.t.join_all(ctx.below[a.idx()].iter().map(|&i| values[i]));
            }
            let linear = ctx
                .pairs
                .iter()
                .all(|&(a, b, j)| table[j.idx()] == ctx.t.join(table[a.idx()], table[b.idx()]));
            if linear {
                *count += 1;
                visit(table);
            }
            return Ok(());
        }
        let j = ctx.jis[k];
        let floor = ctx.t.join_all((0..k).filter(|&i| ctx.s.leq(ctx.jis[i], j)).map(|i| values[i]));
        for v in ctx.t.up_set(floor) {
            values[k] = v;
            rec(ctx, k + 1, values, table, count, steps, visit)?;
        }
        Ok(())
    }

    let ctx = Ctx { s, t, jis: &jis, below: &below, pairs: &pairs, max_steps: limits.max_steps };
    rec(&ctx, 0, &mut values, &mut table, &mut count, &mut steps, &mut visit)?;
    Ok(count)
}

pub fn linear_maps(s: &Lattice, t: &Lattice, limits: &Limits) -> Result<Vec<LinMap>, SupError> {
    let mut out = Vec::new();
    for_each_linear_map(s, t, limits, |table| {
        if out.len() < limits.max_elements {
            out.push(LinMap::from_fn_unchecked(s, t, |a| table[a.idx()]));
        }
    })?;
    if out.len() >= limits.max_elements {
        return Err(SupError::TooLarge { size: out.len(), bound: limits.max_elements });
    }
    Ok(out)
}

pub fn hom_lattice(s: &Lattice, t: &Lattice, limits: &Limits) -> Result<HomLattice, SupError> {
    let mut maps = linear_maps(s, t, limits)?;
    maps.sort_by(|f, g| f.table().cmp(g.table()));
    let labels = maps
        .iter()
        .map(|f| format!("<{}>", f.table().iter().map(|&v| t.label(v)).collect::<Vec<_>>().join(",")))
        .collect();
    let lattice = Lattice::from_order(labels, |a, b| maps[a].leq(&maps[b]), limits)?;
    Ok(HomLattice { lattice, maps })
}

/// All bilinear maps `S × T → V` as row-major tables indexed by `s * |T| + t`,
/// obtained as the linear maps `S → hom(T, V)`.
pub fn bilinear_maps(s: &Lattice, t: &Lattice, v: &Lattice, limits: &Limits) -> Result<Vec<Vec<Elem>>, SupError> {
    let inner = hom_lattice(t, v, limits)?;
    let outer = linear_maps(s, &inner.lattice, limits)?;
    Ok(outer
        .iter()
        .map(|f| {
            s.elems()
                .flat_map(|a| {
                    let g = inner.map(f.apply(a));
                    t.elems().map(move |b| g.apply(b))
                })
                .collect()
        })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn hom_from_two_is_target() {
        let s = Lattice::chain(4);
        let h = hom_lattice(&Lattice::two(), &s, &Limits::default()).unwrap();
        assert_eq!(h.lattice.size(), 4);
    }

    #[test]
    fn hom_into_two_is_self_dual() {
        // oracle: linear maps ℓX → 2 are determined by an arbitrary subset of X
        for n in 0..=3 {
            let h = hom_lattice(&Lattice::power(n), &Lattice::two(), &Limits::default()).unwrap();
            assert_eq!(h.lattice.size(), 1 << n);
        }
    }

    #[test]
    fn diamond_endomorphisms() {
        let labels: Vec<String> = ["0", "a", "b", "c", "1"].iter().map(|s| s.to_string()).collect();
        let m3 = Lattice::from_order(labels, |x, y| x == y || x == 0 || y == 4, &Limits::default()).unwrap();
        // brute force over all 5^5 tables
        let mut brute = 0;
        for code in 0..5usize.pow(5) {
            let table: Vec<Elem> = (0..5).map(|i| Elem((code / 5usize.pow(i) % 5) as u32)).collect();
            if LinMap::new(m3.clone(), m3.clone(), table).is_ok() {
                brute += 1;
            }
        }
        assert_eq!(linear_maps(&m3, &m3, &Limits::default()).unwrap().len(), brute);
    }

    #[test]
    fn bilinear_count_on_powers() {
        // bilinear ℓ1 × ℓ1 → 2 are the maps with f(1,1) free
        let b = bilinear_maps(&Lattice::power(1), &Lattice::power(1), &Lattice::two(), &Limits::default()).unwrap();
        assert_eq!(b.len(), 2);
    }
}
