//! Signed-index combinatorics.
//!
//! Basis vectors of `V_{n,p}` are labelled by the window `[n,p] = {-n,…,-1,1,…,p}`,
//! ordered `-n < … < -1 < 1 < … < p`. That is the usual integer order on the
//! nonzero integers, and every sign in the crate is derived from it.

use std::cmp::Ordering;
use std::collections::{BTreeSet, HashMap};
use std::fmt;
use std::sync::{Arc, OnceLock, RwLock};

use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Result, WedgeError};

/// A nonzero integer labelling a basis vector `e_i`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SignedIndex(i32);

impl SignedIndex {
    pub fn new(value: i32) -> Result<Self> {
        if value == 0 {
            Err(WedgeError::ZeroIndex)
        } else {
            Ok(SignedIndex(value))
        }
    }

    pub fn get(self) -> i32 {
        self.0
    }

    pub fn negated(self) -> Self {
        SignedIndex(-self.0)
    }
}

impl fmt::Display for SignedIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// The pair `(n, p)` naming the index window `[n,p]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Window {
    pub n: usize,
    pub p: usize,
}

impl Window {
    pub const fn new(n: usize, p: usize) -> Self {
        Window { n, p }
    }

    pub fn dim(self) -> usize {
        self.n + self.p
    }

    pub fn contains(self, index: i32) -> bool {
        (index < 0 && index.unsigned_abs() as usize <= self.n) || (index > 0 && index as usize <= self.p)
    }

    /// All indices of the window in ascending order.
    pub fn elements(self) -> Vec<i32> {
        (1..=self.n as i32).rev().map(|i| -i).chain(1..=self.p as i32).collect()
    }

    /// Position of `index` in [`Window::elements`].
    pub fn position(self, index: i32) -> Option<usize> {
        if !self.contains(index) {
            return None;
        }
        Some(if index < 0 {
            (self.n as i32 + index) as usize
        } else {
            self.n + index as usize - 1
        })
    }

    /// `self ⪯ other` componentwise: every index of `self` is an index of `other`.
    pub fn is_within(self, other: Window) -> bool {
        self.n <= other.n && self.p <= other.p
    }

    /// The window `(p, n)` that the pairing `⟨e_i, e_j⟩ = δ_{-i,j}` identifies with the dual.
    pub fn dual(self) -> Window {
        Window { n: self.p, p: self.n }
    }

    pub fn all_indices(self) -> IndexSet {
        IndexSet(self.elements().into_iter().map(SignedIndex).collect())
    }

    /// Every `k`-subset of the window in lexicographic order.
    pub fn subsets(self, k: usize) -> Vec<IndexSet> {
        combinations(&self.elements(), k).into_iter().map(IndexSet::from_sorted_unchecked).collect()
    }

    /// Smallest window containing every index in `indices`.
    pub fn enclosing<'a>(indices: impl IntoIterator<Item = &'a i32>) -> Window {
        let mut w = Window::new(0, 0);
        for &i in indices {
            if i < 0 {
                w.n = w.n.max(i.unsigned_abs() as usize);
            } else {
                w.p = w.p.max(i as usize);
            }
        }
        w
    }

    pub fn check(self, set: &IndexSet) -> Result<()> {
        match set.iter().find(|&i| !self.contains(i)) {
            Some(index) => Err(WedgeError::IndexOutOfWindow { index, window: self }),
            None => Ok(()),
        }
    }
}

impl fmt::Display for Window {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n, self.p)
    }
}

impl Serialize for Window {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [self.n, self.p].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Window {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [n, p] = <[usize; 2]>::deserialize(d)?;
        Ok(Window { n, p })
    }
}

/// A strictly ascending set of signed indices, the label `I` of `e_I` and `x_I`.
///
/// Ordered by size first, then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct IndexSet(Vec<SignedIndex>);

impl IndexSet {
    pub fn empty() -> Self {
        IndexSet(Vec::new())
    }

    /// Builds a set from a strictly ascending list of nonzero integers.
    pub fn new(elems: &[i32]) -> Result<Self> {
        if elems.contains(&0) {
            return Err(WedgeError::ZeroIndex);
        }
        if elems.windows(2).any(|w| w[0] >= w[1]) {
            return Err(WedgeError::NotAscending(elems.to_vec()));
        }
        Ok(Self::from_sorted_unchecked(elems.to_vec()))
    }

    /// Sorts and deduplicates; rejects 0.
    pub fn from_unsorted(elems: &[i32]) -> Result<Self> {
        let set: BTreeSet<i32> = elems.iter().copied().collect();
        let v: Vec<i32> = set.into_iter().collect();
        Self::new(&v)
    }

    pub(crate) fn from_sorted_unchecked(elems: Vec<i32>) -> Self {
        debug_assert!(elems.windows(2).all(|w| w[0] < w[1]) && !elems.contains(&0));
        IndexSet(elems.into_iter().map(SignedIndex).collect())
    }

    /// `{lo, lo+1, …, hi}` with 0 skipped.
    pub fn range(lo: i32, hi: i32) -> Self {
        Self::from_sorted_unchecked((lo..=hi).filter(|&i| i != 0).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl DoubleEndedIterator<Item = i32> + ExactSizeIterator + '_ {
        self.0.iter().map(|s| s.0)
    }

    pub fn to_vec(&self) -> Vec<i32> {
        self.iter().collect()
    }

    pub fn contains(&self, index: i32) -> bool {
        self.0.binary_search(&SignedIndex(index)).is_ok()
    }

    pub fn first(&self) -> Option<i32> {
        self.0.first().map(|s| s.0)
    }

    pub fn last(&self) -> Option<i32> {
        self.0.last().map(|s| s.0)
    }

    pub fn is_disjoint(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| !other.contains(i))
    }

    pub fn is_subset(&self, other: &IndexSet) -> bool {
        self.iter().all(|i| other.contains(i))
    }

    pub fn union(&self, other: &IndexSet) -> IndexSet {
        let mut v: Vec<i32> = self.iter().chain(other.iter()).collect();
        v.sort_unstable();
        v.dedup();
        Self::from_sorted_unchecked(v)
    }

    pub fn difference(&self, other: &IndexSet) -> IndexSet {
        Self::from_sorted_unchecked(self.iter().filter(|&i| !other.contains(i)).collect())
    }

    pub fn without(&self, index: i32) -> IndexSet {
        Self::from_sorted_unchecked(self.iter().filter(|&i| i != index).collect())
    }

    pub fn with(&self, index: i32) -> Result<IndexSet> {
        let mut v = self.to_vec();
        v.push(index);
        let (set, sign) = sort_with_sign(&v)?;
        if sign == 0 {
            return Err(WedgeError::OverlappingBlocks(index));
        }
        Ok(set)
    }

    /// `{-i : i ∈ self}`, ascending.
    pub fn negated(&self) -> IndexSet {
        Self::from_sorted_unchecked(self.iter().rev().map(|i| -i).collect())
    }

    /// Number of elements of `self` strictly greater than `index`.
    pub fn count_above(&self, index: i32) -> usize {
        self.iter().filter(|&i| i > index).count()
    }

    /// The first `k` elements.
    pub fn prefix(&self, k: usize) -> IndexSet {
        IndexSet(self.0[..k].to_vec())
    }

    /// Every `k`-subset in lexicographic order.
    pub fn subsets(&self, k: usize) -> Vec<IndexSet> {
        combinations(&self.to_vec(), k).into_iter().map(IndexSet::from_sorted_unchecked).collect()
    }
}

impl Ord for IndexSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len().cmp(&other.len()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for IndexSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for IndexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (k, i) in self.iter().enumerate() {
            if k > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for IndexSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_vec().serialize(s)
    }
}

impl<'de> Deserialize<'de> for IndexSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<i32>::deserialize(d)?;
        IndexSet::new(&v).map_err(serde::de::Error::custom)
    }
}

/// Sorts `seq`, returning the sorted set and the sign of the sorting permutation.
///
/// The sign is 0 exactly when `seq` has a repeated index.
pub fn sort_with_sign(seq: &[i32]) -> Result<(IndexSet, i8)> {
    if seq.contains(&0) {
        return Err(WedgeError::ZeroIndex);
    }
    let mut v = seq.to_vec();
    let mut sign = 1i8;
    // insertion sort, counting transpositions
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if v.windows(2).any(|w| w[0] == w[1]) {
        v.dedup();
        return Ok((IndexSet::from_sorted_unchecked(v), 0));
    }
    Ok((IndexSet::from_sorted_unchecked(v), sign))
}

/// Sign of the permutation taking the sorted union of `blocks` to their concatenation.
pub fn shuffle_sign(blocks: &[&IndexSet]) -> Result<i8> {
    let concat: Vec<i32> = blocks.iter().flat_map(|b| b.iter()).collect();
    let (_, sign) = sort_with_sign(&concat)?;
    if sign == 0 {
        let mut seen = BTreeSet::new();
        let dup = concat.into_iter().find(|i| !seen.insert(*i)).unwrap_or_default();
        return Err(WedgeError::OverlappingBlocks(dup));
    }
    Ok(sign)
}

/// Sign of `(I, J)` for disjoint sorted sets, by counting inversions.
pub(crate) fn pair_sign(left: &IndexSet, right: &IndexSet) -> i8 {
    let inversions: usize = left.iter().map(|i| right.iter().filter(|&j| j < i).count()).sum();
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// All `k`-subsets of `items` (kept in input order), lexicographic by position.
pub fn combinations<T: Clone>(items: &[T], k: usize) -> Vec<Vec<T>> {
    fn go<T: Clone>(items: &[T], k: usize, start: usize, cur: &mut Vec<T>, out: &mut Vec<Vec<T>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        let need = k - cur.len();
        for i in start..=items.len().saturating_sub(need) {
            if items.len() < need {
                break;
            }
            cur.push(items[i].clone());
            go(items, k, i + 1, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= items.len() {
        go(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

/// One unordered partition of positions `0..size` into blocks, with its sign.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockPartition {
    pub sign: i8,
    /// Blocks of positions, each ascending, sorted by their first element.
    pub blocks: Vec<Vec<usize>>,
}

type PartitionCache = RwLock<HashMap<(usize, usize), Arc<Vec<BlockPartition>>>>;

fn partition_cache() -> &'static PartitionCache {
    static CACHE: OnceLock<PartitionCache> = OnceLock::new();
    CACHE.get_or_init(Default::default)
}

/// All unordered partitions of `0..size` into `block`-sets, cached.
///
/// Order-preserving relabelling keeps shuffle signs, so this positional
/// expansion serves every set of the same size.
pub fn block_partitions(size: usize, block: usize) -> Result<Arc<Vec<BlockPartition>>> {
    if block == 0 || !size.is_multiple_of(block) {
        return Err(WedgeError::NotDivisible { size, block });
    }
    if let Some(hit) = partition_cache().read().expect("cache poisoned").get(&(size, block)) {
        return Ok(Arc::clone(hit));
    }
    let mut out = Vec::new();
    let mut blocks = Vec::new();
    let remaining: Vec<usize> = (0..size).collect();
    build_partitions(&remaining, block, &mut blocks, &mut out);
    let value = Arc::new(out);
    let mut cache = partition_cache().write().expect("cache poisoned");
    Ok(Arc::clone(cache.entry((size, block)).or_insert(value)))
}

fn build_partitions(remaining: &[usize], block: usize, blocks: &mut Vec<Vec<usize>>, out: &mut Vec<BlockPartition>) {
    if remaining.is_empty() {
        let concat: Vec<i32> = blocks.iter().flatten().map(|&p| p as i32 + 1).collect();
        let (_, sign) = sort_with_sign(&concat).expect("positions are nonzero");
        out.push(BlockPartition { sign, blocks: blocks.clone() });
        return;
    }
    let first = remaining[0];
    let rest = &remaining[1..];
    for others in combinations(rest, block - 1) {
        let mut b = Vec::with_capacity(block);
        b.push(first);
        b.extend_from_slice(&others);
        let left: Vec<usize> = rest.iter().copied().filter(|x| !others.contains(x)).collect();
        blocks.push(b);
        build_partitions(&left, block, blocks, out);
        blocks.pop();
    }
}

/// Every unordered partition of `set` into `block`-sets, blocks sorted by
/// their minimum, with the shuffle sign of that block ordering.
pub fn enumerate_partitions(set: &IndexSet, block: usize) -> Result<impl Iterator<Item = (Vec<IndexSet>, i8)> + '_> {
    let parts = block_partitions(set.len(), block)?;
    let elems = set.to_vec();
    Ok((0..parts.len()).map(move |k| {
        let part = &parts[k];
        let blocks = part
            .blocks
            .iter()
            .map(|b| IndexSet::from_sorted_unchecked(b.iter().map(|&p| elems[p]).collect()))
            .collect();
        (blocks, part.sign)
    }))
}

/// An integer partition, parts weakly decreasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Partition(Vec<usize>);

impl Partition {
    pub fn new(mut parts: Vec<usize>) -> Result<Self> {
        parts.retain(|&p| p > 0);
        if parts.windows(2).any(|w| w[0] < w[1]) {
            return Err(WedgeError::Precondition(format!("partition parts {parts:?} are not weakly decreasing")));
        }
        Ok(Partition(parts))
    }

    pub fn empty() -> Self {
        Partition(Vec::new())
    }

    pub fn parts(&self) -> &[usize] {
        &self.0
    }

    pub fn size(&self) -> usize {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn part(&self, i: usize) -> usize {
        self.0.get(i).copied().unwrap_or(0)
    }

    pub fn conjugate(&self) -> Partition {
        let width = self.part(0);
        Partition((1..=width).map(|k| self.0.iter().filter(|&&p| p >= k).count()).collect())
    }

    pub fn has_odd_part(&self) -> bool {
        self.0.iter().any(|p| p % 2 == 1)
    }

    /// Every partition of `n`, in reverse lexicographic order.
    pub fn all_of(n: usize) -> Vec<Partition> {
        fn go(n: usize, max: usize, cur: &mut Vec<usize>, out: &mut Vec<Partition>) {
            if n == 0 {
                out.push(Partition(cur.clone()));
                return;
            }
            for k in (1..=n.min(max)).rev() {
                cur.push(k);
                go(n - k, k, cur, out);
                cur.pop();
            }
        }
        let mut out = Vec::new();
        go(n, n, &mut Vec::new(), &mut out);
        out
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return write!(f, "∅");
        }
        let parts: Vec<String> = self.0.iter().map(|p| p.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Rank of a nonzero index along the ℤ^× chain (`-1 ↦ 0`, `1 ↦ 1`).
fn chain_position(index: i32) -> i64 {
    if index < 0 {
        index as i64 + 1
    } else {
        index as i64
    }
}

/// Young diagram of a charge-0 coordinate `I` (`|I| = p`) in window `(n,p)`.
///
/// Position `k` of the sorted set is compared with its vacuum value `k`; the
/// number of ℤ^× steps it moved down forms a partition, and the diagram is its
/// conjugate. In window `(2,4)`: `{1,2,3,4} ↦ ∅`, `{-1,1,3,4} ↦ (2)`,
/// `{-2,1,3,4} ↦ (2,1)`.
pub fn young_diagram(set: &IndexSet, window: Window) -> Result<Partition> {
    if set.len() != window.p {
        return Err(WedgeError::GradeMismatch { expected: window.p, found: set.len() });
    }
    window.check(set)?;
    let steps: Vec<usize> = set.iter().enumerate().map(|(k, i)| (k as i64 + 1 - chain_position(i)) as usize).collect();
    Ok(Partition::new(steps)?.conjugate())
}

/// Containment of Young diagrams.
pub fn diagram_leq(a: &Partition, b: &Partition) -> bool {
    a.parts().len() <= b.parts().len() && a.parts().iter().zip(b.parts()).all(|(x, y)| x <= y)
}

/// Parameters `(m, l, r, s)` of the good-coordinate predicate.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GoodParams {
    pub m: usize,
    pub l: usize,
    pub r: usize,
    pub s: usize,
}

impl GoodParams {
    pub fn new(m: usize, l: usize, r: usize, s: usize) -> Result<Self> {
        if m == 0 || l == 0 || r == 0 || s == 0 {
            return Err(WedgeError::Precondition("good-subset parameters must be positive".into()));
        }
        Ok(GoodParams { m, l, r, s })
    }

    /// Members `<=` this bound form the deep negative tail.
    pub fn negative_bound(&self) -> i64 {
        -((self.m * self.l) as i64) + self.m as i64 - 1
    }

    /// Non-members `>=` this bound form the deep positive tail.
    pub fn positive_bound(&self) -> i64 {
        (self.r * self.s) as i64 - self.r as i64
    }
}

/// A co-finite-type subset of ℤ^×: finitely many negative members and all
/// positive integers except finitely many.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct CofiniteSet {
    pub negative_members: BTreeSet<i32>,
    pub positive_nonmembers: BTreeSet<i32>,
}

impl CofiniteSet {
    pub fn new(negative_members: impl IntoIterator<Item = i32>, positive_nonmembers: impl IntoIterator<Item = i32>) -> Self {
        CofiniteSet {
            negative_members: negative_members.into_iter().collect(),
            positive_nonmembers: positive_nonmembers.into_iter().collect(),
        }
    }

    /// The vacuum `ℤ_{>0}`.
    pub fn vacuum() -> Self {
        Self::default()
    }

    /// `I ∪ {p+1, p+2, …}` for a coordinate `I` of window `(n,p)`.
    pub fn from_window_coordinate(set: &IndexSet, window: Window) -> Self {
        CofiniteSet {
            negative_members: set.iter().filter(|&i| i < 0).collect(),
            positive_nonmembers: (1..=window.p as i32).filter(|&i| !set.contains(i)).collect(),
        }
    }

    fn validate(&self) -> Result<()> {
        if let Some(&bad) = self.negative_members.iter().find(|&&i| i >= 0) {
            return Err(WedgeError::MalformedCofinite(format!("negative part contains {bad}")));
        }
        if let Some(&bad) = self.positive_nonmembers.iter().find(|&&i| i <= 0) {
            return Err(WedgeError::MalformedCofinite(format!("positive complement contains {bad}")));
        }
        Ok(())
    }
}

/// Whether `set` is good with respect to `params`: equal charge on both sides
/// and at most one element in each deep tail.
pub fn is_good(set: &CofiniteSet, params: &GoodParams) -> Result<bool> {
    set.validate()?;
    let balanced = set.negative_members.len() == set.positive_nonmembers.len();
    let deep_neg = set.negative_members.iter().filter(|&&i| (i as i64) <= params.negative_bound()).count();
    let deep_pos = set.positive_nonmembers.iter().filter(|&&i| (i as i64) >= params.positive_bound()).count();
    Ok(balanced && deep_neg <= 1 && deep_pos <= 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[i32]) -> IndexSet {
        IndexSet::new(v).unwrap()
    }

    fn inversions(v: &[i32]) -> usize {
        (0..v.len()).flat_map(|i| (i + 1..v.len()).map(move |j| (i, j))).filter(|&(i, j)| v[i] > v[j]).count()
    }

    fn permutations(v: &[i32]) -> Vec<Vec<i32>> {
        if v.len() <= 1 {
            return vec![v.to_vec()];
        }
        let mut out = Vec::new();
        for i in 0..v.len() {
            let mut rest = v.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn sort_with_sign_examples() {
        assert_eq!(sort_with_sign(&[1, 2, 3]).unwrap(), (set(&[1, 2, 3]), 1));
        assert_eq!(sort_with_sign(&[2, 1]).unwrap(), (set(&[1, 2]), -1));
        assert_eq!(sort_with_sign(&[-1, 3, 1]).unwrap(), (set(&[-1, 1, 3]), -1));
        assert_eq!(sort_with_sign(&[2, 1, 2]).unwrap().1, 0);
        assert_eq!(sort_with_sign(&[0, 1]), Err(WedgeError::ZeroIndex));
    }

    #[test]
    fn sort_sign_is_inversion_parity_exhaustive() {
        let base = [-3, -1, 1, 2, 4, 5];
        for len in 0..=6 {
            for p in permutations(&base[..len]) {
                let expected = if inversions(&p) % 2 == 0 { 1 } else { -1 };
                assert_eq!(sort_with_sign(&p).unwrap().1, expected, "{p:?}");
            }
        }
    }

    #[test]
    fn shuffle_sign_matches_pfaffian_display() {
        assert_eq!(shuffle_sign(&[&set(&[1, 2]), &set(&[3, 4])]).unwrap(), 1);
        assert_eq!(shuffle_sign(&[&set(&[1, 3]), &set(&[2, 4])]).unwrap(), -1);
        assert_eq!(shuffle_sign(&[&set(&[1, 4]), &set(&[2, 3])]).unwrap(), 1);
        assert_eq!(shuffle_sign(&[&set(&[1, 2]), &set(&[2, 4])]), Err(WedgeError::OverlappingBlocks(2)));
    }

    fn factorial(n: usize) -> usize {
        (1..=n).product()
    }

    #[test]
    fn partition_counts_exhaustive() {
        for size in 0..=8 {
            for m in [1usize, 2, 4] {
                if size % m != 0 {
                    assert!(enumerate_partitions(&IndexSet::range(1, size as i32), m).is_err());
                    continue;
                }
                let a = IndexSet::range(1, size as i32);
                let l = size / m;
                let expected = factorial(size) / (factorial(m).pow(l as u32) * factorial(l));
                let parts: Vec<_> = enumerate_partitions(&a, m).unwrap().collect();
                assert_eq!(parts.len(), expected, "size {size} m {m}");
                let distinct: BTreeSet<Vec<IndexSet>> = parts.iter().map(|(b, _)| b.clone()).collect();
                assert_eq!(distinct.len(), expected);
                for (blocks, sign) in &parts {
                    let refs: Vec<&IndexSet> = blocks.iter().collect();
                    assert_eq!(shuffle_sign(&refs).unwrap(), *sign);
                    assert!(blocks.windows(2).all(|w| w[0].first() < w[1].first()));
                }
            }
        }
    }

    #[test]
    fn partition_examples() {
        assert_eq!(enumerate_partitions(&set(&[1, 2, 3, 4]), 2).unwrap().count(), 3);
        assert_eq!(enumerate_partitions(&IndexSet::range(1, 8), 4).unwrap().count(), 35);
        let single: Vec<_> = enumerate_partitions(&set(&[1, 2]), 2).unwrap().collect();
        assert_eq!(single, vec![(vec![set(&[1, 2])], 1)]);
        assert!(enumerate_partitions(&set(&[1, 2, 3]), 2).is_err());
    }

    #[test]
    fn young_diagram_anchors() {
        let w = Window::new(2, 4);
        assert_eq!(young_diagram(&set(&[1, 2, 3, 4]), w).unwrap(), Partition::empty());
        assert_eq!(young_diagram(&set(&[-1, 1, 3, 4]), w).unwrap(), Partition::new(vec![2]).unwrap());
        assert_eq!(young_diagram(&set(&[-2, 1, 3, 4]), w).unwrap(), Partition::new(vec![2, 1]).unwrap());
        assert!(young_diagram(&set(&[1, 2]), w).is_err());
    }

    #[test]
    fn young_diagram_is_injective() {
        for w in [Window::new(2, 2), Window::new(3, 3), Window::new(4, 2), Window::new(2, 4)] {
            let diagrams: Vec<Partition> = w.subsets(w.p).iter().map(|s| young_diagram(s, w).unwrap()).collect();
            let distinct: BTreeSet<&Partition> = diagrams.iter().collect();
            assert_eq!(distinct.len(), diagrams.len(), "window {w}");
        }
    }

    #[test]
    fn diagram_order_examples() {
        let p = |v: Vec<usize>| Partition::new(v).unwrap();
        assert!(diagram_leq(&Partition::empty(), &p(vec![2])));
        assert!(diagram_leq(&p(vec![2]), &p(vec![2, 1])));
        assert!(!diagram_leq(&p(vec![2]), &p(vec![1, 1])));
    }

    #[test]
    fn diagram_order_is_partial_order_exhaustive() {
        let all: Vec<Partition> = (0..=6).flat_map(Partition::all_of).collect();
        for a in &all {
            assert!(diagram_leq(a, a));
            for b in &all {
                if diagram_leq(a, b) && diagram_leq(b, a) {
                    assert_eq!(a, b);
                }
                for c in &all {
                    if diagram_leq(a, b) && diagram_leq(b, c) {
                        assert!(diagram_leq(a, c));
                    }
                }
            }
        }
    }

    #[test]
    fn good_subset_examples() {
        let params = GoodParams::new(2, 2, 2, 2).unwrap();
        assert!(is_good(&CofiniteSet::vacuum(), &params).unwrap());
        assert!(is_good(&CofiniteSet::vacuum(), &GoodParams::new(4, 3, 6, 5).unwrap()).unwrap());
        // two members at or below -ml+m-1 = -3
        assert!(!is_good(&CofiniteSet::new([-4, -3], [1, 2]), &params).unwrap());
        assert!(is_good(&CofiniteSet::new([-1], [1]), &params).unwrap());
        // unequal charge
        assert!(!is_good(&CofiniteSet::new([-1], []), &params).unwrap());
        // two positive non-members at or above rs-r = 2
        assert!(!is_good(&CofiniteSet::new([-2, -1], [2, 3]), &params).unwrap());
        assert!(is_good(&CofiniteSet::new([1], []), &params).is_err());
    }

    #[test]
    fn window_positions() {
        let w = Window::new(2, 3);
        assert_eq!(w.elements(), vec![-2, -1, 1, 2, 3]);
        for (k, i) in w.elements().into_iter().enumerate() {
            assert_eq!(w.position(i), Some(k));
        }
        assert_eq!(w.position(4), None);
        assert_eq!(w.subsets(2).len(), 10);
    }
}
