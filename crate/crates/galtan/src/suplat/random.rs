//! Seeded generators of small lattices and linear maps for property tests.

use super::{linear_maps, Lattice, Limits, LinMap};
use fixedbitset::FixedBitSet;
use rand::seq::SliceRandom;
use rand::Rng;

/// A random lattice of closed sets: random subsets of a `base`-element set
/// closed under intersection, plus the full set. At most `max_elements` elements.
pub fn closure_lattice(rng: &mut impl Rng, base: usize, max_elements: usize) -> Lattice {
    assert!(base < 16 && max_elements >= 1);
    let full = (1u32 << base) - 1;
    let mut family: Vec<u32> = vec![full];
    let attempts = rng.gen_range(0..=2 * max_elements);
    for _ in 0..attempts {
        let candidate: u32 = rng.gen_range(0..=full);
        let mut next = family.clone();
        let mut frontier = vec![candidate];
        while let Some(c) = frontier.pop() {
            if !next.contains(&c) {
                next.push(c);
                for &f in next.clone().iter() {
                    frontier.push(f & c);
                }
            }
        }
        if next.len() <= max_elements {
            family = next;
        }
    }
    family.sort_by_key(|m| (m.count_ones(), *m));
    let sets: Vec<FixedBitSet> = family
        .iter()
        .map(|&m| {
            let mut s = FixedBitSet::with_capacity(base);
            (0..base).filter(|i| m >> i & 1 == 1).for_each(|i| s.insert(i));
            s
        })
        .collect();
    let labels = (0..family.len()).map(|i| format!("c{i}")).collect();
    Lattice::from_sets(labels, &sets, &Limits::default()).expect("intersection-closed families with a top are lattices")
}

/// A uniformly chosen linear map `S → T` (by enumeration; small lattices only).
pub fn linear_map(rng: &mut impl Rng, s: &Lattice, t: &Lattice) -> LinMap {
    let maps = linear_maps(s, t, &Limits::default()).expect("small lattices");
    maps.choose(rng).expect("the zero map always exists").clone()
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn sizes_are_bounded() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..50 {
            let l = closure_lattice(&mut rng, 3, 6);
            assert!(l.size() <= 6 && l.size() >= 1);
        }
    }
}
