/// A function between finite sets `{0..dom}` and `{0..cod}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FinFn {
    pub cod: usize,
    pub map: Vec<usize>,
}

impl FinFn {
    pub fn new(cod: usize, map: Vec<usize>) -> FinFn {
        assert!(map.iter().all(|&y| y < cod), "function value outside codomain");
        FinFn { cod, map }
    }

    pub fn identity(n: usize) -> FinFn {
        FinFn { cod: n, map: (0..n).collect() }
    }

    /// The unique map into a one-point set.
    pub fn to_point(n: usize) -> FinFn {
        FinFn { cod: 1, map: vec![0; n] }
    }

    pub fn dom(&self) -> usize {
        self.map.len()
    }

    pub fn apply(&self, x: usize) -> usize {
        self.map[x]
    }

    /// `other ∘ self`.
    pub fn then(&self, other: &FinFn) -> FinFn {
        assert_eq!(self.cod, other.dom());
        FinFn { cod: other.cod, map: self.map.iter().map(|&x| other.map[x]).collect() }
    }

    pub fn is_injective(&self) -> bool {
        let mut seen = vec![false; self.cod];
        self.map.iter().all(|&y| !std::mem::replace(&mut seen[y], true))
    }

    pub fn is_bijective(&self) -> bool {
        self.dom() == self.cod && self.is_injective()
    }

    /// Preimage of a single point, in increasing order.
    pub fn fiber(&self, y: usize) -> impl Iterator<Item = usize> + '_ {
        self.map.iter().enumerate().filter(move |(_, &v)| v == y).map(|(x, _)| x)
    }
}

/// All functions `{0..dom} -> {0..cod}` in lexicographic order of their value lists.
pub fn all_functions(dom: usize, cod: usize) -> impl Iterator<Item = FinFn> {
    let total = if dom == 0 { 1 } else if cod == 0 { 0 } else { cod.pow(dom as u32) };
    (0..total).map(move |mut code| {
        let mut map = vec![0; dom];
        for slot in map.iter_mut().rev() {
            *slot = code % cod.max(1);
            code /= cod.max(1);
        }
        FinFn { cod, map }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts() {
        assert_eq!(all_functions(0, 0).count(), 1);
        assert_eq!(all_functions(2, 0).count(), 0);
        assert_eq!(all_functions(2, 3).count(), 9);
        assert_eq!(all_functions(3, 2).filter(|f| f.is_injective()).count(), 0);
        assert_eq!(all_functions(3, 3).filter(|f| f.is_bijective()).count(), 6);
    }

    #[test]
    fn lexicographic() {
        let fs: Vec<_> = all_functions(2, 2).map(|f| f.map).collect();
        assert_eq!(fs, vec![vec![0, 0], vec![0, 1], vec![1, 0], vec![1, 1]]);
    }
}
