use super::LocGroupError;
use crate::suplat::{Lattice, Limits};
use fixedbitset::FixedBitSet;
use std::sync::Arc;

/// A finite group given by its multiplication table, seen as the localic
/// group `ℓ(G₀)`: subsets are frame elements, and
/// `w(U) = {(a, b) : ab ∈ U}`, `e(U) = [1 ∈ U]`, `ι(U) = U⁻¹`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DiscreteGroup {
    inner: Arc<Inner>,
}

#[derive(Debug, PartialEq, Eq)]
struct Inner {
    names: Vec<String>,
    table: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
}

/// Outcome of the Hopf laws, each checked on singleton generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HopfReport {
    pub coassociative: bool,
    /// Coassociativity was compared only at points of `G ⊗ G ⊗ G`.
    pub pointwise: bool,
    pub counit: bool,
    pub antipode: bool,
    /// The first generator at which a law fails, with the law's name.
    pub witness: Option<String>,
}

impl HopfReport {
    pub fn holds(&self) -> bool {
        self.coassociative && self.counit && self.antipode
    }
}

impl DiscreteGroup {
    pub fn new(names: Vec<String>, table: Vec<Vec<usize>>) -> Result<DiscreteGroup, LocGroupError> {
        let n = table.len();
        let bad = |m: String| Err(LocGroupError::InvalidGroup(m));
        if n == 0 {
            return bad("empty group".into());
        }
        if n > 16 {
            return Err(LocGroupError::TooLarge { size: n, bound: 16 });
        }
        if names.len() != n {
            return bad(format!("{} names for {n} elements", names.len()));
        }
        if let Some(r) = table.iter().position(|row| row.len() != n || row.iter().any(|&x| x >= n)) {
            return bad(format!("row {r} is not a map into the {n} elements"));
        }
        for a in 0..n {
            for b in 0..n {
                for c in 0..n {
                    if table[table[a][b]][c] != table[a][table[b][c]] {
                        return bad(format!("not associative at ({}, {}, {})", names[a], names[b], names[c]));
                    }
                }
            }
        }
        let Some(identity) = (0..n).find(|&e| (0..n).all(|x| table[e][x] == x && table[x][e] == x)) else {
            return bad("no identity".into());
        };
        let mut inverse = Vec::with_capacity(n);
        for a in 0..n {
            match (0..n).find(|&b| table[a][b] == identity) {
                Some(b) => inverse.push(b),
                None => return bad(format!("{} has no inverse", names[a])),
            }
        }
        Ok(DiscreteGroup { inner: Arc::new(Inner { names, table, identity, inverse }) })
    }

    /// `Z_n` with elements `e, g, g^2, ...`.
    pub fn cyclic(n: usize) -> DiscreteGroup {
        let names = (0..n)
            .map(|k| match k {
                0 => "e".to_string(),
                1 => "g".to_string(),
                k => format!("g^{k}"),
            })
            .collect();
        let table = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
        DiscreteGroup::new(names, table).expect("cyclic group")
    }

    pub fn trivial() -> DiscreteGroup {
        DiscreteGroup::cyclic(1)
    }

    /// Permutations of `{0..n}` in lexicographic order, named by one-line
    /// notation. The product `σ·τ` is `τ ∘ σ` (first `σ`, then `τ`), which
    /// matches the comultiplication of `Aut(X)`.
    pub fn symmetric(n: usize) -> DiscreteGroup {
        let perms = permutations(n);
        let names = perms.iter().map(|p| p.iter().map(|x| x.to_string()).collect::<String>()).collect();
        let index = |p: &Vec<usize>| perms.iter().position(|q| q == p).expect("closed under composition");
        let table = perms
            .iter()
            .map(|s| perms.iter().map(|t| index(&s.iter().map(|&x| t[x]).collect())).collect())
            .collect();
        DiscreteGroup::new(names, table).expect("symmetric group")
    }

    pub fn order(&self) -> usize {
        self.inner.table.len()
    }

    pub fn names(&self) -> &[String] {
        &self.inner.names
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.inner.table
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.inner.table[a][b]
    }

    pub fn identity(&self) -> usize {
        self.inner.identity
    }

    pub fn inverse(&self, a: usize) -> usize {
        self.inner.inverse[a]
    }

    /// The carrier `ℓ(G₀)`, atoms named after the elements.
    pub fn lattice(&self) -> Lattice {
        Lattice::power_set(self.inner.names.clone(), &Limits::default()).expect("at most 16 atoms")
    }

    fn members(&self, u: u64) -> impl Iterator<Item = usize> + '_ {
        (0..self.order()).filter(move |&g| u >> g & 1 == 1)
    }

    /// `w(U)` as a set of pairs indexed `a * |G| + b`.
    pub fn comultiply(&self, u: u64) -> FixedBitSet {
        let n = self.order();
        let mut out = FixedBitSet::with_capacity(n * n);
        for a in 0..n {
            for b in 0..n {
                if u >> self.mul(a, b) & 1 == 1 {
                    out.insert(a * n + b);
                }
            }
        }
        out
    }

    pub fn counit(&self, u: u64) -> bool {
        u >> self.identity() & 1 == 1
    }

    pub fn antipode(&self, u: u64) -> u64 {
        self.members(u).fold(0, |acc, g| acc | 1 << self.inverse(g))
    }

    /// Coassociativity, both counit laws and both antipode laws on every
    /// singleton, computed through the set-level structure maps.
    pub fn hopf_laws(&self) -> HopfReport {
        let n = self.order();
        let mut report = HopfReport { coassociative: true, pointwise: false, counit: true, antipode: true, witness: None };
        let fail = |report: &mut HopfReport, law: &str, g: usize| {
            if report.witness.is_none() {
                report.witness = Some(format!("{law} at {{{}}}", self.inner.names[g]));
            }
        };
        for g in 0..n {
            let w = self.comultiply(1 << g);
            // (w ⊗ id) w and (id ⊗ w) w as triples a * n² + b * n + c
            let mut left = FixedBitSet::with_capacity(n * n * n);
            let mut right = FixedBitSet::with_capacity(n * n * n);
            for p in w.ones() {
                let (x, c) = (p / n, p % n);
                for q in self.comultiply(1 << x).ones() {
                    left.insert(q * n + c);
                }
                let (a, y) = (p / n, p % n);
                for q in self.comultiply(1 << y).ones() {
                    right.insert(a * n * n + q);
                }
            }
            if left != right {
                report.coassociative = false;
                fail(&mut report, "coassociativity", g);
            }
            let e = self.identity();
            let left_unit: u64 = w.ones().filter(|p| p / n == e).fold(0, |acc, p| acc | 1 << (p % n));
            let right_unit: u64 = w.ones().filter(|p| p % n == e).fold(0, |acc, p| acc | 1 << (p / n));
            if left_unit != 1 << g || right_unit != 1 << g {
                report.counit = false;
                fail(&mut report, "counit", g);
            }
            // the multiplication of ℓ(G₀) is ∩, so ∧ ∘ (ι ⊗ id) keeps x with (x⁻¹, x) ∈ w
            let expected = if self.counit(1 << g) { (1u64 << n) - 1 } else { 0 };
            let left_anti = (0..n).filter(|&x| w.contains(self.inverse(x) * n + x)).fold(0u64, |acc, x| acc | 1 << x);
            let right_anti = (0..n).filter(|&x| w.contains(x * n + self.inverse(x))).fold(0u64, |acc, x| acc | 1 << x);
            if left_anti != expected || right_anti != expected {
                report.antipode = false;
                fail(&mut report, "antipode", g);
            }
        }
        report
    }
}

pub(crate) fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn go(prefix: &mut Vec<usize>, n: usize, out: &mut Vec<Vec<usize>>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for x in 0..n {
            if !prefix.contains(&x) {
                prefix.push(x);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn z2_structure_maps() {
        let z2 = DiscreteGroup::cyclic(2);
        let w = z2.comultiply(0b01);
        assert_eq!(w.ones().collect::<Vec<_>>(), vec![0, 3]);
        assert!(z2.counit(0b01));
        assert!(!z2.counit(0b10));
        for u in 0..4 {
            assert_eq!(z2.antipode(u), u);
        }
    }

    #[test]
    fn small_groups_are_hopf() {
        for g in [DiscreteGroup::trivial(), DiscreteGroup::cyclic(2), DiscreteGroup::cyclic(3), DiscreteGroup::cyclic(6)] {
            assert!(g.hopf_laws().holds());
        }
        let s3 = DiscreteGroup::symmetric(3);
        assert_eq!(s3.order(), 6);
        assert!(s3.hopf_laws().holds());
    }

    #[test]
    fn symmetric_product_composes_left_to_right() {
        let s3 = DiscreteGroup::symmetric(3);
        // σ = 102 swaps 0,1; τ = 021 swaps 1,2; τ∘σ sends 0 ↦ 2
        let idx = |s: &str| s3.names().iter().position(|n| n == s).unwrap();
        assert_eq!(s3.names()[s3.mul(idx("102"), idx("021"))], "201");
    }

    #[test]
    fn rejects_bad_tables() {
        let names = vec!["a".to_string(), "b".to_string()];
        assert!(DiscreteGroup::new(names.clone(), vec![vec![0, 0], vec![0, 0]]).is_err());
        assert!(DiscreteGroup::new(names, vec![vec![0, 1], vec![1, 1]]).is_err());
    }
}
