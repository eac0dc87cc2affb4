use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// A nonempty set of component indices, 0-based internally.
///
/// Serialized as a sorted array of 1-based indices. Subsets order first by
/// size and then lexicographically, so singletons come before pairs.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Subset(Vec<usize>);

impl Subset {
    pub fn new<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        let mut v: Vec<usize> = indices.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        Subset(v)
    }

    pub fn singleton(i: usize) -> Self {
        Subset(vec![i])
    }

    /// Builds a subset from 1-based indices, as used on the wire.
    pub fn from_one_based(indices: &[usize]) -> Option<Self> {
        if indices.contains(&0) {
            return None;
        }
        Some(Subset::new(indices.iter().map(|i| i - 1)))
    }

    pub fn to_one_based(&self) -> Vec<usize> {
        self.0.iter().map(|i| i + 1).collect()
    }

    pub fn indices(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }

    pub fn union(&self, other: &Subset) -> Subset {
        Subset::new(self.0.iter().chain(other.0.iter()).copied())
    }

    pub fn intersection(&self, other: &Subset) -> Subset {
        Subset(
            self.0
                .iter()
                .copied()
                .filter(|&i| other.contains(i))
                .collect(),
        )
    }

    pub fn with(&self, i: usize) -> Subset {
        Subset::new(self.0.iter().copied().chain(std::iter::once(i)))
    }

    pub fn without(&self, i: usize) -> Subset {
        Subset(self.0.iter().copied().filter(|&j| j != i).collect())
    }

    pub fn is_subset_of(&self, other: &Subset) -> bool {
        self.0.iter().all(|&i| other.contains(i))
    }

    /// All nonempty proper subsets obtained by dropping exactly one index.
    pub fn facets(&self) -> impl Iterator<Item = Subset> + '_ {
        self.0
            .iter()
            .filter(move |_| self.0.len() > 1)
            .map(move |&i| self.without(i))
    }
}

impl Ord for Subset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.0
            .len()
            .cmp(&other.0.len())
            .then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Subset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{}", i + 1)?;
        }
        f.write_str("}")
    }
}

impl Serialize for Subset {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        self.to_one_based().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Subset {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let raw = Vec::<usize>::deserialize(d)?;
        Subset::from_one_based(&raw)
            .ok_or_else(|| serde::de::Error::custom("component indices are 1-based"))
    }
}
