use std::collections::BTreeSet;

use serde::Serialize;

/// An object of the additive hull: an ordered finite direct sum of generators.
///
/// The order of summands fixes the block layout of morphisms. Two objects with
/// the same multiset of summands are equal as objects of the hull; use
/// [`ObjectExpr::same_multiset`] for that comparison.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ObjectExpr(Vec<usize>);

impl ObjectExpr {
    pub fn new(summands: Vec<usize>) -> Self {
        ObjectExpr(summands)
    }

    pub fn zero() -> Self {
        ObjectExpr(Vec::new())
    }

    pub fn single(g: usize) -> Self {
        ObjectExpr(vec![g])
    }

    pub fn summands(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn concat(&self, other: &ObjectExpr) -> ObjectExpr {
        let mut v = self.0.clone();
        v.extend_from_slice(&other.0);
        ObjectExpr(v)
    }

    pub fn multiplicities(&self, generators: usize) -> Vec<usize> {
        let mut m = vec![0; generators];
        for &g in &self.0 {
            m[g] += 1;
        }
        m
    }

    pub fn support(&self) -> BTreeSet<usize> {
        self.0.iter().copied().collect()
    }

    pub fn same_multiset(&self, other: &ObjectExpr) -> bool {
        let mut a = self.0.clone();
        let mut b = other.0.clone();
        a.sort_unstable();
        b.sort_unstable();
        a == b
    }

    /// The summands sorted by generator index, with the permutation used:
    /// `sorted[i] = self[perm[i]]`.
    pub fn sorted(&self) -> (ObjectExpr, Vec<usize>) {
        let mut perm: Vec<usize> = (0..self.0.len()).collect();
        perm.sort_by_key(|&i| (self.0[i], i));
        (ObjectExpr(perm.iter().map(|&i| self.0[i]).collect()), perm)
    }

    pub fn map_generators(&self, f: impl Fn(usize) -> usize) -> ObjectExpr {
        ObjectExpr(self.0.iter().map(|&g| f(g)).collect())
    }
}

impl FromIterator<usize> for ObjectExpr {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        ObjectExpr(iter.into_iter().collect())
    }
}
