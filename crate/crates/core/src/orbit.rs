//! Conjugacy classes `[p] = {σ∘p∘σ⁻¹}` of diagrams and the two coproducts on them.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use crate::diagram::{columns, compose_unchecked, conjugate, cycles_unchecked, extract_columns, identity, tensor};
use crate::error::{Error, Result};
use crate::kreweras::eta_with;
use crate::partition::{rgs_iter, Partition};

/// Largest `k` for which orbits are canonicalised by brute force.
pub const MAX_ORBIT_K: usize = 5;

/// A conjugacy class, represented by its least conjugate.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Orbit {
    pub k: usize,
    pub rep: Partition,
}

/// All permutations of `0..k` in lexicographic order.
pub(crate) fn permutations(k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur: Vec<usize> = (0..k).collect();
    loop {
        out.push(cur.clone());
        // next lexicographic permutation
        let Some(i) = (1..k).rev().find(|&i| cur[i - 1] < cur[i]) else {
            break;
        };
        let j = (i..k).rev().find(|&j| cur[j] > cur[i - 1]).expect("pivot exists");
        cur.swap(i - 1, j);
        cur[i..].reverse();
    }
    out
}

pub fn orbit_of(p: &Partition) -> Result<Orbit> {
    let k = columns(p)?;
    if k > MAX_ORBIT_K {
        return Err(Error::SizeLimit {
            size: k,
            limit: MAX_ORBIT_K,
        });
    }
    Ok(orbit_unchecked(p, k))
}

pub(crate) fn orbit_unchecked(p: &Partition, k: usize) -> Orbit {
    let rep = permutations(k)
        .iter()
        .map(|s| conjugate(p, s))
        .min()
        .unwrap_or_else(Partition::empty);
    Orbit { k, rep }
}

impl Orbit {
    /// The class of `∅`, unit for `⊗`.
    pub fn empty() -> Self {
        Orbit {
            k: 0,
            rep: Partition::empty(),
        }
    }

    /// Every class of `P_k`, sorted.
    pub fn all(k: usize) -> Result<Vec<Orbit>> {
        if k > MAX_ORBIT_K {
            return Err(Error::SizeLimit {
                size: k,
                limit: MAX_ORBIT_K,
            });
        }
        let mut v: Vec<Orbit> = rgs_iter(2 * k).map(|p| orbit_unchecked(&p, k)).collect();
        v.sort();
        v.dedup();
        Ok(v)
    }

    pub fn tensor(&self, other: &Orbit) -> Result<Orbit> {
        orbit_of(&tensor(&self.rep, &other.rep)?)
    }

    pub fn is_irreducible(&self) -> bool {
        cycles_unchecked(&self.rep, self.k).len() == 1
    }
}

/// Classes of the restrictions of `p` to each of its cycles, sorted.
pub fn irreducible_factors(o: &Orbit) -> Vec<Orbit> {
    let mut v: Vec<Orbit> = cycles_unchecked(&o.rep, o.k)
        .iter()
        .map(|c| orbit_unchecked(&extract_columns(&o.rep, c), c.len()))
        .collect();
    v.sort();
    v
}

/// A formal sum of pairs of classes with integer multiplicities.
pub type OrbitPairs = BTreeMap<(Orbit, Orbit), i64>;

/// `Δ_⊞[p] = Σ_{I ⊆ cycles} [p_I] ⊗ [p_{I^c}]`.
pub fn coproduct_boxplus(o: &Orbit) -> OrbitPairs {
    let cyc = cycles_unchecked(&o.rep, o.k);
    let r = cyc.len();
    let mut out = OrbitPairs::new();
    for mask in 0u32..(1 << r) {
        let (mut inside, mut outside) = (Vec::new(), Vec::new());
        for (c, cols) in cyc.iter().enumerate() {
            if mask >> c & 1 == 1 {
                inside.extend_from_slice(cols);
            } else {
                outside.extend_from_slice(cols);
            }
        }
        inside.sort_unstable();
        outside.sort_unstable();
        let a = orbit_unchecked(&extract_columns(&o.rep, &inside), inside.len());
        let b = orbit_unchecked(&extract_columns(&o.rep, &outside), outside.len());
        *out.entry((a, b)).or_insert(0) += 1;
    }
    out
}

/// `Δ_⊠[p] = Σ_{p1∘p2 = p, η(p1,p2) = 0} [p1] ⊗ [p2]`.
pub fn coproduct_boxtimes(o: &Orbit) -> OrbitPairs {
    let k = o.k;
    let id = identity(k);
    let all: Vec<Partition> = rgs_iter(2 * k).collect();
    let mut out = OrbitPairs::new();
    for p1 in &all {
        for p2 in &all {
            let c = compose_unchecked(p1, p2);
            if c.product == o.rep && eta_with(p1, p2, &c.product, c.loops, &id) == 0 {
                let key = (orbit_unchecked(p1, k), orbit_unchecked(p2, k));
                *out.entry(key).or_insert(0) += 1;
            }
        }
    }
    out
}
