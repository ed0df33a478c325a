use std::cmp::Ordering;
use std::fmt;

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{invalid, Result};
use crate::params::{KneserParams, MAX_GROUND};

/// A finite subset of `[64]`, stored as a bit set (element `i` is bit `i - 1`).
///
/// Ordering is lexicographic on the increasing element lists, so `{1,2} < {1,3} < {2,3}`
/// and `{1} < {1,2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct KSubset {
    mask: u64,
}

impl KSubset {
    pub const EMPTY: KSubset = KSubset { mask: 0 };

    pub fn from_mask(mask: u64) -> Self {
        Self { mask }
    }

    /// Builds a subset from 1-based elements. Duplicates are rejected.
    pub fn from_elements(elements: &[u32]) -> Result<Self> {
        let mut mask = 0u64;
        for &e in elements {
            if e == 0 || e > MAX_GROUND {
                return invalid(format!("element {e} outside [1, {MAX_GROUND}]"));
            }
            let bit = 1u64 << (e - 1);
            if mask & bit != 0 {
                return invalid(format!("duplicate element {e}"));
            }
            mask |= bit;
        }
        Ok(Self { mask })
    }

    /// `{lo, lo+1, ..., hi}`; empty when `lo > hi`.
    pub fn range(lo: u32, hi: u32) -> Self {
        let mut mask = 0u64;
        for e in lo.max(1)..=hi.min(MAX_GROUND) {
            mask |= 1u64 << (e - 1);
        }
        Self { mask }
    }

    pub fn mask(&self) -> u64 {
        self.mask
    }

    pub fn len(&self) -> u32 {
        self.mask.count_ones()
    }

    pub fn is_empty(&self) -> bool {
        self.mask == 0
    }

    pub fn contains(&self, element: u32) -> bool {
        (1..=MAX_GROUND).contains(&element) && self.mask & (1u64 << (element - 1)) != 0
    }

    pub fn min_element(&self) -> Option<u32> {
        (self.mask != 0).then(|| self.mask.trailing_zeros() + 1)
    }

    pub fn max_element(&self) -> Option<u32> {
        (self.mask != 0).then(|| 64 - self.mask.leading_zeros())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        Self { mask: self.mask & other.mask }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self { mask: self.mask | other.mask }
    }

    pub fn intersection_len(&self, other: &Self) -> u32 {
        (self.mask & other.mask).count_ones()
    }

    pub fn is_subset_of(&self, other: &Self) -> bool {
        self.mask & !other.mask == 0
    }

    /// Elements in increasing order.
    pub fn elements(&self) -> Elements {
        Elements { rest: self.mask }
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.elements().collect()
    }
}

/// Iterator over the elements of a [`KSubset`], smallest first.
pub struct Elements {
    rest: u64,
}

impl Iterator for Elements {
    type Item = u32;

    fn next(&mut self) -> Option<u32> {
        if self.rest == 0 {
            return None;
        }
        let tz = self.rest.trailing_zeros();
        self.rest &= self.rest - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.rest.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Elements {}

impl Ord for KSubset {
    fn cmp(&self, other: &Self) -> Ordering {
        self.elements().cmp(other.elements())
    }
}

impl PartialOrd for KSubset {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.elements().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{e}")?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for KSubset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

// Serialized as the sorted element list.
impl Serialize for KSubset {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        serializer.collect_seq(self.elements())
    }
}

impl<'de> Deserialize<'de> for KSubset {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Self, D::Error> {
        let elements = Vec::<u32>::deserialize(deserializer)?;
        KSubset::from_elements(&elements).map_err(serde::de::Error::custom)
    }
}

/// All `k`-subsets of the elements of `ground`, in lexicographic order.
pub struct Combinations {
    pool: Vec<u32>,
    idx: Vec<usize>,
    done: bool,
}

impl Combinations {
    pub fn new(ground: KSubset, k: u32) -> Self {
        let pool = ground.to_vec();
        let k = k as usize;
        Self {
            done: k > pool.len(),
            idx: (0..k).collect(),
            pool,
        }
    }
}

impl Iterator for Combinations {
    type Item = KSubset;

    fn next(&mut self) -> Option<KSubset> {
        if self.done {
            return None;
        }
        let mask = self.idx.iter().fold(0u64, |m, &i| m | 1u64 << (self.pool[i] - 1));
        let k = self.idx.len();
        let n = self.pool.len();
        // advance to the next index tuple
        let mut i = k;
        loop {
            if i == 0 {
                self.done = true;
                break;
            }
            i -= 1;
            if self.idx[i] < n - k + i {
                self.idx[i] += 1;
                for j in i + 1..k {
                    self.idx[j] = self.idx[j - 1] + 1;
                }
                break;
            }
        }
        Some(KSubset::from_mask(mask))
    }
}

/// The vertex set of `KG^r(n, k, s)` in canonical (lexicographic) order, with
/// the inverse map from subset to index.
#[derive(Debug, Clone)]
pub struct VertexSet {
    n: u32,
    k: u32,
    vertices: Vec<KSubset>,
}

impl VertexSet {
    pub fn new(n: u32, k: u32) -> Result<Self> {
        if k > n {
            return invalid(format!("k={k} exceeds n={n}"));
        }
        if n > MAX_GROUND {
            return invalid(format!("n={n} exceeds {MAX_GROUND}"));
        }
        let vertices = Combinations::new(KSubset::range(1, n), k).collect();
        Ok(Self { n, k, vertices })
    }

    pub fn for_params(params: &KneserParams) -> Result<Self> {
        Self::new(params.n, params.k)
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn k(&self) -> u32 {
        self.k
    }

    pub fn len(&self) -> usize {
        self.vertices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.is_empty()
    }

    pub fn get(&self, index: usize) -> Option<KSubset> {
        self.vertices.get(index).copied()
    }

    pub fn as_slice(&self) -> &[KSubset] {
        &self.vertices
    }

    pub fn iter(&self) -> impl Iterator<Item = KSubset> + '_ {
        self.vertices.iter().copied()
    }

    /// Index of `subset` in canonical order, if it is a vertex.
    pub fn index_of(&self, subset: &KSubset) -> Option<usize> {
        if subset.len() != self.k || subset.max_element().unwrap_or(0) > self.n {
            return None;
        }
        self.vertices.binary_search(subset).ok()
    }
}

/// The `C(n, k)` vertices of `KG^r(n, k, s)` in lexicographic order.
pub fn enumerate_vertices(params: &KneserParams) -> Result<Vec<KSubset>> {
    Ok(VertexSet::for_params(params)?.vertices)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::params::binomial;
    use proptest::prelude::*;

    fn set(e: &[u32]) -> KSubset {
        KSubset::from_elements(e).unwrap()
    }

    #[test]
    fn enumerates_three_choose_two() {
        let v = VertexSet::new(3, 2).unwrap();
        assert_eq!(v.as_slice(), &[set(&[1, 2]), set(&[1, 3]), set(&[2, 3])]);
    }

    #[test]
    fn single_vertex_when_k_equals_n() {
        let v = VertexSet::new(4, 4).unwrap();
        assert_eq!(v.as_slice(), &[set(&[1, 2, 3, 4])]);
    }

    #[test]
    fn five_choose_two_endpoints() {
        let v = VertexSet::new(5, 2).unwrap();
        assert_eq!(v.len(), 10);
        assert_eq!(v.get(0), Some(set(&[1, 2])));
        assert_eq!(v.get(9), Some(set(&[4, 5])));
        // hand enumeration
        let listed: Vec<Vec<u32>> = v.iter().map(|s| s.to_vec()).collect();
        assert_eq!(
            listed,
            vec![
                vec![1, 2], vec![1, 3], vec![1, 4], vec![1, 5], vec![2, 3],
                vec![2, 4], vec![2, 5], vec![3, 4], vec![3, 5], vec![4, 5],
            ]
        );
    }

    #[test]
    fn rejects_k_above_n() {
        assert!(VertexSet::new(3, 4).is_err());
    }

    #[test]
    fn ordering_is_lexicographic_on_lists() {
        assert!(set(&[1, 4]) < set(&[2, 3]));
        assert!(set(&[1]) < set(&[1, 2]));
        assert!(set(&[1, 2, 9]) < set(&[1, 3, 4]));
    }

    #[test]
    fn display_and_elements() {
        let s = set(&[5, 2, 9]);
        assert_eq!(s.to_string(), "{2,5,9}");
        assert_eq!(s.min_element(), Some(2));
        assert_eq!(s.max_element(), Some(9));
        assert!(KSubset::from_elements(&[2, 2]).is_err());
        assert!(KSubset::from_elements(&[0]).is_err());
        assert_eq!(KSubset::range(3, 5), set(&[3, 4, 5]));
        assert!(KSubset::range(4, 3).is_empty());
    }

    #[test]
    fn combinations_of_a_sparse_ground() {
        let got: Vec<_> = Combinations::new(set(&[2, 5, 7]), 2).collect();
        assert_eq!(got, vec![set(&[2, 5]), set(&[2, 7]), set(&[5, 7])]);
        assert_eq!(Combinations::new(set(&[2, 5]), 0).collect::<Vec<_>>(), vec![KSubset::EMPTY]);
        assert_eq!(Combinations::new(set(&[2, 5]), 3).count(), 0);
    }

    proptest! {
        #[test]
        fn enumeration_is_sorted_complete_and_invertible(n in 1u32..=12, k in 1u32..=12) {
            prop_assume!(k <= n);
            let v = VertexSet::new(n, k).unwrap();
            prop_assert_eq!(v.len() as u64, binomial(n, k));
            for (i, x) in v.iter().enumerate() {
                prop_assert_eq!(x.len(), k);
                prop_assert_eq!(v.index_of(&x), Some(i));
            }
            prop_assert!(v.as_slice().windows(2).all(|w| w[0] < w[1]));
        }
    }
}
