//! The defect `η`, Kreweras complements `K_p(q)` and the order `≺`.

use alloc::vec::Vec;

use crate::diagram::{columns, compose_unchecked, identity};
use crate::error::{Error, Result};
use crate::halfint::HalfInt;
use crate::partition::{nc_join, rgs_iter, Partition};

fn same_k(p: &Partition, q: &Partition) -> Result<usize> {
    let (a, b) = (columns(p)?, columns(q)?);
    if a != b {
        return Err(Error::KMismatch { left: a, right: b });
    }
    Ok(a)
}

/// `η(p, q)`, a non-negative integer.
pub fn eta(p: &Partition, q: &Partition) -> Result<HalfInt> {
    same_k(p, q)?;
    Ok(HalfInt::from_int(eta_int(p, q)))
}

pub(crate) fn eta_int(p: &Partition, q: &Partition) -> i64 {
    let k = p.size() / 2;
    let id = identity(k);
    let c = compose_unchecked(p, q);
    eta_with(p, q, &c.product, c.loops, &id)
}

/// `η` from an already computed composition.
pub(crate) fn eta_with(p: &Partition, q: &Partition, pq: &Partition, loops: usize, id: &Partition) -> i64 {
    let twist = |x: &Partition| x.nc() as i64 - nc_join(x, id) as i64;
    twist(p) + twist(q) - twist(pq) - loops as i64
}

/// `K_p(q) = { r : q ∘ r = p, η(q, r) = 0 }`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KrewerasSet {
    pub base: Partition,
    pub prefix: Partition,
    /// Sorted.
    pub complements: Vec<Partition>,
}

impl KrewerasSet {
    pub fn is_empty(&self) -> bool {
        self.complements.is_empty()
    }
}

/// Complements of `q` inside `p`, by exhaustive search over `P_k`.
pub fn kreweras_set(p: &Partition, q: &Partition) -> Result<KrewerasSet> {
    let k = same_k(p, q)?;
    let id = identity(k);
    let complements = rgs_iter(2 * k)
        .filter(|r| {
            let c = compose_unchecked(q, r);
            c.product == *p && eta_with(q, r, &c.product, c.loops, &id) == 0
        })
        .collect();
    Ok(KrewerasSet {
        base: p.clone(),
        prefix: q.clone(),
        complements,
    })
}

/// `q ≺ p`: `q` is an admissible prefix of `p`.
pub fn prefix_leq(q: &Partition, p: &Partition) -> Result<bool> {
    let k = same_k(p, q)?;
    let id = identity(k);
    Ok(rgs_iter(2 * k).any(|r| {
        let c = compose_unchecked(q, &r);
        c.product == *p && eta_with(q, &r, &c.product, c.loops, &id) == 0
    }))
}
