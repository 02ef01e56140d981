use std::collections::BTreeSet;
use std::sync::Arc;

use super::object::ObjectExpr;
use super::presentation::FinLinCategory;
use crate::error::Result;

/// A full subcategory closed under sums and summands, given by its member
/// generators. The zero object belongs to every subcategory.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Subcategory {
    pub parent: Arc<FinLinCategory>,
    pub members: BTreeSet<usize>,
}

impl Subcategory {
    pub fn new(parent: Arc<FinLinCategory>, members: impl IntoIterator<Item = usize>) -> Self {
        Subcategory { parent, members: members.into_iter().collect() }
    }

    pub fn empty(parent: Arc<FinLinCategory>) -> Self {
        Self::new(parent, [])
    }

    pub fn all(parent: Arc<FinLinCategory>) -> Self {
        let n = parent.num_generators();
        Self::new(parent, 0..n)
    }

    pub fn from_names<S: AsRef<str>>(parent: Arc<FinLinCategory>, names: &[S]) -> Result<Self> {
        let members = names
            .iter()
            .map(|n| parent.generator_index(n.as_ref()))
            .collect::<Result<BTreeSet<_>>>()?;
        Ok(Subcategory { parent, members })
    }

    /// The same member generators, viewed in a presentation sharing the
    /// generator indexing (a quotient or a relabelled copy).
    pub fn on(&self, parent: Arc<FinLinCategory>) -> Self {
        Subcategory { parent, members: self.members.clone() }
    }

    pub fn contains_generator(&self, g: usize) -> bool {
        self.members.contains(&g)
    }

    pub fn contains_object(&self, a: &ObjectExpr) -> bool {
        a.summands().iter().all(|g| self.members.contains(g))
    }

    pub fn is_subset(&self, other: &Subcategory) -> bool {
        self.members.is_subset(&other.members)
    }

    pub fn names(&self) -> Vec<String> {
        self.members.iter().map(|&g| self.parent.generator_name(g).to_string()).collect()
    }

    pub fn display(&self) -> String {
        format!("{{{}}}", self.names().join(", "))
    }

    /// All `2^n` subcategories of a presentation, in binary-counter order.
    pub fn enumerate_all(parent: &Arc<FinLinCategory>) -> Vec<Subcategory> {
        let n = parent.num_generators();
        (0u64..(1 << n))
            .map(|mask| Subcategory::new(parent.clone(), (0..n).filter(|i| mask & (1 << i) != 0)))
            .collect()
    }
}
