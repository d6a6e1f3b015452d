//! Set partitions of `{0, …, n−1}` in canonical restricted-growth form.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};

/// Largest ground set that [`enumerate_partitions`] accepts unless told otherwise.
pub const DEFAULT_MAX_GROUND: usize = 12;

/// Hard ceiling imposed by the one-byte labels.
pub const MAX_GROUND_CEILING: usize = 255;

/// The finite set `{0, …, size−1}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct GroundSet {
    pub size: usize,
}

impl GroundSet {
    pub const fn new(size: usize) -> Self {
        GroundSet { size }
    }

    /// The ground set `{1..k, 1'..k'}` of `P_k`.
    pub const fn diagram(k: usize) -> Self {
        GroundSet { size: 2 * k }
    }
}

/// A set partition stored as its restricted-growth string: `labels[i]` is the
/// index of the block containing `i`, blocks numbered by their least element.
///
/// The derived ordering is lexicographic on labels, which agrees with
/// enumeration order on a fixed ground set.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Partition {
    labels: Vec<u8>,
}

pub(crate) struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub(crate) fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    pub(crate) fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    pub(crate) fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        if ra < rb {
            self.parent[rb] = ra;
        } else {
            self.parent[ra] = rb;
        }
        true
    }
}

/// Renumber arbitrary keys by order of first appearance.
pub(crate) fn canonical_labels<K: PartialEq + Copy>(keys: &[K]) -> Vec<u8> {
    let mut seen: Vec<K> = Vec::new();
    keys.iter()
        .map(|k| match seen.iter().position(|s| s == k) {
            Some(i) => i as u8,
            None => {
                seen.push(*k);
                (seen.len() - 1) as u8
            }
        })
        .collect()
}

impl Partition {
    /// The partition of the empty set.
    pub fn empty() -> Self {
        Partition { labels: Vec::new() }
    }

    /// Build from any block labelling; labels are renumbered canonically.
    pub fn from_labels<K: PartialEq + Copy>(keys: &[K]) -> Self {
        assert!(keys.len() <= MAX_GROUND_CEILING, "ground set too large");
        Partition {
            labels: canonical_labels(keys),
        }
    }

    /// Build from a list of blocks covering `0..size` exactly once.
    pub fn from_blocks(size: usize, blocks: &[Vec<usize>]) -> Result<Self> {
        if size > MAX_GROUND_CEILING {
            return Err(Error::SizeLimit {
                size,
                limit: MAX_GROUND_CEILING,
            });
        }
        let mut owner = vec![usize::MAX; size];
        for (b, block) in blocks.iter().enumerate() {
            if block.is_empty() {
                return Err(Error::Parse("empty block".into()));
            }
            for &e in block {
                if e >= size {
                    return Err(Error::Parse(alloc::format!("element {e} outside ground set")));
                }
                if owner[e] != usize::MAX {
                    return Err(Error::Parse(alloc::format!("element {e} appears twice")));
                }
                owner[e] = b;
            }
        }
        if let Some(missing) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(Error::Parse(alloc::format!("element {missing} is missing")));
        }
        Ok(Self::from_labels(&owner))
    }

    /// Every element in its own block.
    pub fn singletons(size: usize) -> Self {
        Partition {
            labels: (0..size).map(|i| i as u8).collect(),
        }
    }

    /// A single block (the empty partition when `size == 0`).
    pub fn one_block(size: usize) -> Self {
        Partition {
            labels: vec![0; size],
        }
    }

    pub fn ground(&self) -> GroundSet {
        GroundSet::new(self.labels.len())
    }

    pub fn size(&self) -> usize {
        self.labels.len()
    }

    /// Restricted-growth string.
    pub fn labels(&self) -> &[u8] {
        &self.labels
    }

    /// Block index of element `i`.
    pub fn label(&self, i: usize) -> usize {
        self.labels[i] as usize
    }

    /// Number of blocks.
    pub fn nc(&self) -> usize {
        self.labels.iter().max().map_or(0, |&m| m as usize + 1)
    }

    /// Blocks in canonical order, elements ascending.
    pub fn blocks(&self) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); self.nc()];
        for (i, &l) in self.labels.iter().enumerate() {
            out[l as usize].push(i);
        }
        out
    }

    pub fn same_block(&self, i: usize, j: usize) -> bool {
        self.labels[i] == self.labels[j]
    }

    fn check(&self, other: &Partition) -> Result<()> {
        if self.size() != other.size() {
            return Err(Error::GroundMismatch {
                left: self.size(),
                right: other.size(),
            });
        }
        Ok(())
    }

    /// Finest common coarsening.
    pub fn join(&self, other: &Partition) -> Result<Partition> {
        self.check(other)?;
        Ok(join_unchecked(self, other))
    }

    /// Coarsest common refinement.
    pub fn meet(&self, other: &Partition) -> Result<Partition> {
        self.check(other)?;
        Ok(meet_unchecked(self, other))
    }

    /// `self ⊴ other`: every block of `self` sits inside a block of `other`.
    pub fn is_finer(&self, other: &Partition) -> Result<bool> {
        self.check(other)?;
        Ok(is_finer_unchecked(self, other))
    }

    /// Merge the blocks of `self` according to a partition of its block indices.
    pub fn coarsen_by(&self, grouping: &Partition) -> Partition {
        debug_assert_eq!(grouping.size(), self.nc());
        let keys: Vec<u8> = self.labels.iter().map(|&l| grouping.labels[l as usize]).collect();
        Partition::from_labels(&keys)
    }

    /// Every partition coarser than `self`, in enumeration order of the block grouping.
    pub fn coarsenings(&self) -> Vec<Partition> {
        rgs_iter(self.nc()).map(|g| self.coarsen_by(&g)).collect()
    }

    /// Relabel the ground set: element `i` is sent to `perm[i]`.
    pub fn permute(&self, perm: &[usize]) -> Partition {
        let mut keys = vec![0u8; self.size()];
        for (i, &l) in self.labels.iter().enumerate() {
            keys[perm[i]] = l;
        }
        Partition::from_labels(&keys)
    }

    /// Restriction to the listed elements, renumbered in the given order.
    pub fn restrict(&self, elements: &[usize]) -> Partition {
        let keys: Vec<u8> = elements.iter().map(|&e| self.labels[e]).collect();
        Partition::from_labels(&keys)
    }
}

pub(crate) fn join_unchecked(p: &Partition, q: &Partition) -> Partition {
    let n = p.size();
    let mut uf = UnionFind::new(n);
    link_blocks(&mut uf, p, 0);
    link_blocks(&mut uf, q, 0);
    let keys: Vec<usize> = (0..n).map(|i| uf.find(i)).collect();
    Partition::from_labels(&keys)
}

/// Union every element with the first element of its block, offset by `shift`.
pub(crate) fn link_blocks(uf: &mut UnionFind, p: &Partition, shift: usize) {
    let mut first = [usize::MAX; MAX_GROUND_CEILING + 1];
    for (i, &l) in p.labels.iter().enumerate() {
        let l = l as usize;
        if first[l] == usize::MAX {
            first[l] = i;
        } else {
            uf.union(first[l] + shift, i + shift);
        }
    }
}

/// `nc(p ∨ q)` without materialising the join.
pub(crate) fn nc_join(p: &Partition, q: &Partition) -> usize {
    // Components of the bipartite graph on blocks of p and blocks of q.
    let (a, b) = (p.nc(), q.nc());
    let mut uf = UnionFind::new(a + b);
    let mut merges = 0;
    for i in 0..p.size() {
        if uf.union(p.label(i), a + q.label(i)) {
            merges += 1;
        }
    }
    a + b - merges
}

pub(crate) fn meet_unchecked(p: &Partition, q: &Partition) -> Partition {
    let keys: Vec<(u8, u8)> = p.labels.iter().copied().zip(q.labels.iter().copied()).collect();
    Partition::from_labels(&keys)
}

pub(crate) fn is_finer_unchecked(p: &Partition, q: &Partition) -> bool {
    let mut image = [u8::MAX; MAX_GROUND_CEILING + 1];
    for (i, &l) in p.labels.iter().enumerate() {
        let slot = &mut image[l as usize];
        if *slot == u8::MAX {
            *slot = q.labels[i];
        } else if *slot != q.labels[i] {
            return false;
        }
    }
    true
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (b, block) in self.blocks().iter().enumerate() {
            if b > 0 {
                write!(f, ",")?;
            }
            write!(f, "{{")?;
            for (j, e) in block.iter().enumerate() {
                if j > 0 {
                    write!(f, ",")?;
                }
                write!(f, "{}", e + 1)?;
            }
            write!(f, "}}")?;
        }
        write!(f, "}}")
    }
}

/// Iterator over restricted-growth strings of length `n` in lexicographic order.
pub struct RgsIter {
    current: Option<Vec<u8>>,
}

/// All partitions of `{0..n−1}`, in lexicographic restricted-growth order, lazily.
pub fn rgs_iter(n: usize) -> RgsIter {
    RgsIter {
        current: Some(vec![0; n]),
    }
}

impl Iterator for RgsIter {
    type Item = Partition;

    fn next(&mut self) -> Option<Partition> {
        let cur = self.current.take()?;
        let out = Partition { labels: cur.clone() };
        let mut next = cur;
        let n = next.len();
        // Prefix maxima let us find the rightmost incrementable position.
        let mut prefix_max = vec![0u8; n];
        for i in 1..n {
            prefix_max[i] = prefix_max[i - 1].max(next[i - 1]);
        }
        let mut i = n;
        while i > 1 {
            i -= 1;
            if next[i] <= prefix_max[i] {
                next[i] += 1;
                for x in next.iter_mut().skip(i + 1) {
                    *x = 0;
                }
                self.current = Some(next);
                break;
            }
        }
        Some(out)
    }
}

/// Every partition of the ground set, in restricted-growth lexicographic order.
pub fn enumerate_partitions(ground: GroundSet) -> Result<Vec<Partition>> {
    enumerate_partitions_bounded(ground, DEFAULT_MAX_GROUND)
}

/// As [`enumerate_partitions`] with an explicit size limit.
pub fn enumerate_partitions_bounded(ground: GroundSet, limit: usize) -> Result<Vec<Partition>> {
    let limit = limit.min(MAX_GROUND_CEILING);
    if ground.size > limit {
        return Err(Error::SizeLimit {
            size: ground.size,
            limit,
        });
    }
    Ok(rgs_iter(ground.size).collect())
}

/// Bell numbers `B_0..=B_n` by the usual recurrence on binomials.
pub fn bell_numbers(n: usize) -> Vec<u128> {
    let mut bell = vec![1u128];
    let mut row = vec![1u128]; // binomial row
    for m in 0..n {
        // B_{m+1} = Σ_j C(m, j) B_j
        let b = (0..=m).map(|j| row[j] * bell[j]).sum();
        bell.push(b);
        let mut next = vec![1u128; m + 2];
        for j in 1..=m {
            next[j] = row[j - 1] + row[j];
        }
        row = next;
    }
    bell
}

/// Index of a partition inside [`enumerate_partitions`] of its ground set.
pub struct Ranker {
    /// `completions[r][m]`: number of ways to fill `r` more positions with `m` blocks open.
    completions: Vec<Vec<u64>>,
}

impl Ranker {
    pub fn new(n: usize) -> Self {
        let mut completions = vec![vec![1u64; n + 2]];
        for r in 1..=n {
            let prev = &completions[r - 1];
            let row: Vec<u64> = (0..n + 1)
                .map(|m| m as u64 * prev[m] + prev[m + 1])
                .chain(core::iter::once(0))
                .collect();
            completions.push(row);
        }
        Ranker { completions }
    }

    pub fn rank(&self, p: &Partition) -> usize {
        let n = p.size();
        let mut open = 0usize;
        let mut rank = 0u64;
        for (i, &l) in p.labels.iter().enumerate() {
            if i > 0 {
                rank += l as u64 * self.completions[n - i - 1][open];
            }
            open = open.max(l as usize + 1);
        }
        rank as usize
    }
}

/// The full enumeration of a ground set together with an inverse index.
pub struct Basis {
    pub ground: GroundSet,
    parts: Vec<Partition>,
    ranker: Ranker,
}

impl Basis {
    pub fn new(ground: GroundSet) -> Result<Self> {
        Self::bounded(ground, DEFAULT_MAX_GROUND)
    }

    pub fn bounded(ground: GroundSet, limit: usize) -> Result<Self> {
        let parts = enumerate_partitions_bounded(ground, limit)?;
        Ok(Basis {
            ground,
            parts,
            ranker: Ranker::new(ground.size),
        })
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn parts(&self) -> &[Partition] {
        &self.parts
    }

    pub fn get(&self, i: usize) -> &Partition {
        &self.parts[i]
    }

    pub fn index_of(&self, p: &Partition) -> usize {
        debug_assert_eq!(p.size(), self.ground.size);
        self.ranker.rank(p)
    }
}
