//! Distance between partitions, the base-pointed orders, and their Möbius functions.

use alloc::collections::{BTreeSet, VecDeque};
use alloc::vec;
use alloc::vec::Vec;

use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::matrix::Matrix;
use crate::partition::{
    is_finer_unchecked, meet_unchecked, nc_join, Basis, GroundSet, Partition, DEFAULT_MAX_GROUND,
};
use crate::scalar::{int, Rational};

/// The four orders on partitions of a fixed ground set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum OrderKind {
    /// `q ≤_b p`: `q` lies on a geodesic from `b` to `p`.
    Geodesic,
    /// `q ⊣_b p`: `q` is an admissible gluing of `p`.
    CoarserCompatible,
    /// `q ⊐_b p`: `q` is an admissible split of `p`.
    FinerCompatible,
    /// `q ⊴ p`.
    Refinement,
}

impl OrderKind {
    pub const ALL: [OrderKind; 4] = [
        OrderKind::Geodesic,
        OrderKind::CoarserCompatible,
        OrderKind::FinerCompatible,
        OrderKind::Refinement,
    ];
}

fn same_ground(a: &Partition, b: &Partition) -> Result<()> {
    if a.size() != b.size() {
        return Err(Error::GroundMismatch {
            left: a.size(),
            right: b.size(),
        });
    }
    Ok(())
}

/// `d(p, q) = ½(nc p + nc q) − nc(p ∨ q)`.
pub fn distance(p: &Partition, q: &Partition) -> Result<HalfInt> {
    same_ground(p, q)?;
    Ok(distance_unchecked(p, q))
}

pub(crate) fn distance_unchecked(p: &Partition, q: &Partition) -> HalfInt {
    let doubled = p.nc() as i64 + q.nc() as i64 - 2 * nc_join(p, q) as i64;
    HalfInt::from_doubled(doubled)
}

/// `df_b(q, p) = d(b, q) + d(q, p) − d(b, p)`, always a non-negative integer.
pub fn defect(b: &Partition, q: &Partition, p: &Partition) -> Result<HalfInt> {
    same_ground(b, q)?;
    same_ground(q, p)?;
    Ok(HalfInt::from_int(defect_int(b, q, p)))
}

pub(crate) fn defect_int(b: &Partition, q: &Partition, p: &Partition) -> i64 {
    q.nc() as i64 - nc_join(q, b) as i64 - nc_join(p, q) as i64 + nc_join(p, b) as i64
}

/// Whether `q` precedes `p` in the order of the given kind with base `b`.
pub fn in_order(kind: OrderKind, b: &Partition, q: &Partition, p: &Partition) -> Result<bool> {
    same_ground(b, q)?;
    same_ground(q, p)?;
    Ok(in_order_unchecked(kind, b, q, p))
}

pub(crate) fn in_order_unchecked(kind: OrderKind, b: &Partition, q: &Partition, p: &Partition) -> bool {
    match kind {
        OrderKind::Geodesic => defect_int(b, q, p) == 0,
        OrderKind::CoarserCompatible => is_finer_unchecked(p, q) && nc_join(q, b) == nc_join(p, b),
        OrderKind::FinerCompatible => {
            is_finer_unchecked(q, p)
                && q.nc() as i64 - nc_join(q, b) as i64 == p.nc() as i64 - nc_join(p, b) as i64
        }
        OrderKind::Refinement => is_finer_unchecked(q, p),
    }
}

/// All partitions on a geodesic between `p1` and `p2`, in enumeration order.
pub fn segment(p1: &Partition, p2: &Partition) -> Result<Vec<Partition>> {
    same_ground(p1, p2)?;
    let basis = Basis::new(p1.ground())?;
    Ok(basis
        .parts()
        .iter()
        .filter(|q| defect_int(p1, q, p2) == 0)
        .cloned()
        .collect())
}

/// The ways to cut one block in two, as (block index, new partition).
fn two_splits(p: &Partition) -> Vec<(usize, Partition)> {
    let mut out = Vec::new();
    let n = p.size();
    for (bi, block) in p.blocks().iter().enumerate() {
        let m = block.len();
        if m < 2 {
            continue;
        }
        // Subsets of the block containing its first element, proper.
        for mask in 0..(1u64 << (m - 1)) - 1 {
            let mut keys: Vec<u16> = p.labels().iter().map(|&l| l as u16).collect();
            for (j, &e) in block.iter().enumerate().skip(1) {
                if mask >> (j - 1) & 1 == 0 {
                    keys[e] = 256;
                }
            }
            debug_assert_eq!(keys.len(), n);
            out.push((bi, Partition::from_labels(&keys)));
        }
    }
    out
}

/// Blocks of `p` admitting a cut that raises `nc(· ∨ b)` by one.
pub fn pivotal_blocks(b: &Partition, p: &Partition) -> Result<Vec<Vec<usize>>> {
    same_ground(b, p)?;
    let base = nc_join(p, b);
    let blocks = p.blocks();
    let mut pivotal: BTreeSet<usize> = BTreeSet::new();
    for (bi, q) in two_splits(p) {
        if nc_join(&q, b) == base + 1 {
            pivotal.insert(bi);
        }
    }
    Ok(pivotal.into_iter().map(|i| blocks[i].clone()).collect())
}

/// One step of admissible splitting.
fn delta(b: &Partition, p: &Partition) -> Vec<Partition> {
    let base = nc_join(p, b);
    two_splits(p)
        .into_iter()
        .filter(|(_, q)| nc_join(q, b) == base + 1)
        .map(|(_, q)| q)
        .collect()
}

/// The closure `Sp_b(p)` of `p` under admissible splits, sorted.
pub fn admissible_splits(b: &Partition, p: &Partition) -> Result<Vec<Partition>> {
    same_ground(b, p)?;
    let mut seen: BTreeSet<Partition> = BTreeSet::new();
    seen.insert(p.clone());
    let mut work = vec![p.clone()];
    while let Some(x) = work.pop() {
        for y in delta(b, &x) {
            if seen.insert(y.clone()) {
                work.push(y);
            }
        }
    }
    Ok(seen.into_iter().collect())
}

/// Coarsenings `q` of `p` with `nc(q ∨ b) = nc(p ∨ b)`, sorted.
pub fn admissible_gluings(b: &Partition, p: &Partition) -> Result<Vec<Partition>> {
    same_ground(b, p)?;
    let target = nc_join(p, b);
    let mut out: Vec<Partition> = p
        .coarsenings()
        .into_iter()
        .filter(|q| nc_join(q, b) == target)
        .collect();
    out.sort();
    Ok(out)
}

/// The 0/1 matrix `(M)_{p,p'} = [p' ≼ p]` of one order over a full enumeration.
#[derive(Clone, Debug)]
pub struct OrderMatrix {
    pub kind: OrderKind,
    pub base: Partition,
    pub basis: Vec<Partition>,
    pub entries: Matrix<i64>,
}

impl OrderMatrix {
    /// Exact inverse. Order matrices are unitriangular up to permutation, so this never fails.
    pub fn inverse(&self) -> Matrix<Rational> {
        self.entries
            .to_rational()
            .inverse()
            .expect("order matrices are invertible")
    }
}

fn check_base(b: &Partition, ground: GroundSet) -> Result<()> {
    if b.size() != ground.size {
        return Err(Error::GroundMismatch {
            left: b.size(),
            right: ground.size,
        });
    }
    Ok(())
}

/// Build the order matrix of `kind` with base `b` on `ground`.
pub fn order_matrix(kind: OrderKind, b: &Partition, ground: GroundSet) -> Result<OrderMatrix> {
    order_matrix_bounded(kind, b, ground, DEFAULT_MAX_GROUND)
}

pub fn order_matrix_bounded(
    kind: OrderKind,
    b: &Partition,
    ground: GroundSet,
    limit: usize,
) -> Result<OrderMatrix> {
    check_base(b, ground)?;
    let basis = Basis::bounded(ground, limit)?;
    let parts = basis.parts();
    let entries = Matrix::from_fn(parts.len(), parts.len(), |i, j| {
        in_order_unchecked(kind, b, &parts[j], &parts[i]) as i64
    });
    Ok(OrderMatrix {
        kind,
        base: b.clone(),
        basis: parts.to_vec(),
        entries,
    })
}

/// `μ_f(p1, p2)` for `p1 ⊴ p2`: `(−1)^{nc p1 − nc p2} Π_i ((i−1)!)^{r_i}` where
/// `r_i` counts blocks of `p2` made of exactly `i` blocks of `p1`. Zero otherwise.
pub fn mu_refinement(p1: &Partition, p2: &Partition) -> Result<Rational> {
    same_ground(p1, p2)?;
    Ok(int(mu_refinement_int(p1, p2)))
}

pub(crate) fn mu_refinement_int(p1: &Partition, p2: &Partition) -> i64 {
    if !is_finer_unchecked(p1, p2) {
        return 0;
    }
    let mut inner = vec![0usize; p2.nc()];
    for block in p1.blocks() {
        inner[p2.label(block[0])] += 1;
    }
    let mut value: i64 = 1;
    for &c in &inner {
        for f in 1..c {
            value *= f as i64;
        }
    }
    if (p1.nc() - p2.nc()) % 2 == 1 {
        -value
    } else {
        value
    }
}

/// Möbius function `μ(p1, p2) = (M^{-1})_{p2, p1}` of the chosen order, in closed form.
pub fn mobius(kind: OrderKind, b: &Partition, p1: &Partition, p2: &Partition) -> Result<Rational> {
    same_ground(b, p1)?;
    same_ground(p1, p2)?;
    Ok(int(mobius_int(kind, b, p1, p2)))
}

pub(crate) fn mobius_int(kind: OrderKind, b: &Partition, p1: &Partition, p2: &Partition) -> i64 {
    match kind {
        OrderKind::Refinement => mu_refinement_int(p1, p2),
        OrderKind::CoarserCompatible => {
            if in_order_unchecked(kind, b, p1, p2) {
                mu_refinement_int(p2, p1)
            } else {
                0
            }
        }
        OrderKind::FinerCompatible => {
            if in_order_unchecked(kind, b, p1, p2) {
                mu_refinement_int(p1, p2)
            } else {
                0
            }
        }
        OrderKind::Geodesic => {
            let m = meet_unchecked(p1, p2);
            if in_order_unchecked(OrderKind::CoarserCompatible, b, p1, &m)
                && in_order_unchecked(OrderKind::FinerCompatible, b, &m, p2)
            {
                mu_refinement_int(&m, p1) * mu_refinement_int(&m, p2)
            } else {
                0
            }
        }
    }
}

/// Covering pairs `(lower, upper)` of an order, as basis indices sorted lexicographically.
pub fn hasse_edges(kind: OrderKind, b: &Partition, ground: GroundSet) -> Result<Vec<(usize, usize)>> {
    hasse_edges_bounded(kind, b, ground, DEFAULT_MAX_GROUND)
}

pub fn hasse_edges_bounded(
    kind: OrderKind,
    b: &Partition,
    ground: GroundSet,
    limit: usize,
) -> Result<Vec<(usize, usize)>> {
    check_base(b, ground)?;
    let basis = Basis::bounded(ground, limit)?;
    Ok(covers(basis.parts(), |q, p| in_order_unchecked(kind, b, q, p)))
}

/// Covering relation of the strict order induced by `leq` on `parts`.
pub(crate) fn covers(parts: &[Partition], leq: impl Fn(&Partition, &Partition) -> bool) -> Vec<(usize, usize)> {
    let n = parts.len();
    let words = n.div_ceil(64);
    // below[p] = bitset of q < p; above[q] = bitset of p > q.
    let mut below = vec![vec![0u64; words]; n];
    let mut above = vec![vec![0u64; words]; n];
    for p in 0..n {
        for q in 0..n {
            if p != q && leq(&parts[q], &parts[p]) {
                below[p][q / 64] |= 1 << (q % 64);
                above[q][p / 64] |= 1 << (p % 64);
            }
        }
    }
    let mut edges = Vec::new();
    for q in 0..n {
        for p in 0..n {
            if below[p][q / 64] >> (q % 64) & 1 == 1 {
                let between = below[p].iter().zip(&above[q]).any(|(x, y)| x & y != 0);
                if !between {
                    edges.push((q, p));
                }
            }
        }
    }
    edges
}

/// Largest ground set the breadth-first oracle will explore by default.
pub const BFS_ORACLE_LIMIT: usize = 5;

/// Half the length of a shortest path in the graph whose edges join partitions
/// differing by the gluing of two blocks.
pub fn bfs_distance_oracle(p: &Partition, q: &Partition) -> Result<HalfInt> {
    bfs_distance_oracle_bounded(p, q, BFS_ORACLE_LIMIT)
}

pub fn bfs_distance_oracle_bounded(p: &Partition, q: &Partition, limit: usize) -> Result<HalfInt> {
    same_ground(p, q)?;
    let basis = Basis::bounded(p.ground(), limit)?;
    let n = basis.len();
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (i, x) in basis.parts().iter().enumerate() {
        let c = x.nc();
        for a in 0..c {
            for bb in a + 1..c {
                let mut keys: Vec<u8> = x.labels().to_vec();
                for k in keys.iter_mut() {
                    if *k as usize == bb {
                        *k = a as u8;
                    }
                }
                let j = basis.index_of(&Partition::from_labels(&keys));
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    let start = basis.index_of(p);
    let goal = basis.index_of(q);
    let mut dist = vec![usize::MAX; n];
    dist[start] = 0;
    let mut queue = VecDeque::from([start]);
    while let Some(x) = queue.pop_front() {
        if x == goal {
            break;
        }
        for &y in &adj[x] {
            if dist[y] == usize::MAX {
                dist[y] = dist[x] + 1;
                queue.push_back(y);
            }
        }
    }
    Ok(HalfInt::from_doubled(dist[goal] as i64))
}

/// `true` when `m` is the zeta matrix of some order and `inv` its inverse.
pub fn is_inverse(m: &Matrix<i64>, inv: &Matrix<Rational>) -> bool {
    let prod = m.to_rational().mul(inv);
    (0..prod.rows()).all(|i| {
        (0..prod.cols()).all(|j| {
            let v = prod.get(i, j);
            if i == j {
                v.is_one()
            } else {
                v.is_zero()
            }
        })
    })
}
