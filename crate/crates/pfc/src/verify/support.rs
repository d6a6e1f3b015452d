//! Enumeration shortcuts, seeded generators and brute-force oracles shared by the suites.

use std::sync::{Arc, OnceLock};

use pfc_core::asymptotics::AlgebraElement;
use pfc_core::diagram::{compose, cycles, identity, trace_exponent, transpose};
use pfc_core::forms::{LinearForm, Space};
use pfc_core::geometry::{defect, in_order, OrderKind};
use pfc_core::kreweras::eta;
use pfc_core::laurent::LaurentScalar;
use pfc_core::partition::{enumerate_partitions, GroundSet, Partition};
use pfc_core::scalar::{rat, Rational};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

/// Fail the enclosing task with a formatted counterexample.
macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}
pub(crate) use ensure;

pub fn diagrams(k: usize) -> Arc<Vec<Partition>> {
    Arc::new(enumerate_partitions(GroundSet::diagram(k)).expect("within bounds"))
}

/// The form space of degree bound `k ≤ 3`, built once per process.
pub fn space(k: usize) -> &'static Space {
    static SPACES: [OnceLock<Space>; 4] = [const { OnceLock::new() }; 4];
    SPACES[k].get_or_init(|| Space::new(k).expect("degree bound within range"))
}

pub fn partitions(n: usize) -> Vec<Partition> {
    enumerate_partitions(GroundSet::new(n)).expect("within bounds")
}

pub fn k_of(p: &Partition) -> usize {
    p.size() / 2
}

pub fn comp(p: &Partition, q: &Partition) -> Partition {
    compose(p, q).expect("same k").product
}

pub fn t(p: &Partition) -> Partition {
    transpose(p).expect("diagram")
}

pub fn leq(q: &Partition, p: &Partition) -> bool {
    in_order(OrderKind::Geodesic, &identity(k_of(p)), q, p).expect("same k")
}

pub fn df(q: &Partition, p: &Partition) -> i64 {
    defect(&identity(k_of(p)), q, p)
        .expect("same k")
        .to_integer()
        .expect("integral defect")
}

pub fn eta_i(p: &Partition, q: &Partition) -> i64 {
    eta(p, q).expect("same k").to_integer().expect("integral η")
}

pub fn twist(p: &Partition) -> i32 {
    p.nc() as i32 - trace_exponent(p).expect("diagram") as i32
}

/// A generator seeded from the run seed and a per-check salt.
pub fn rng(seed: u64, salt: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_mul(0x9E37_79B9_7F4A_7C15) ^ salt)
}

pub fn small_rational(g: &mut ChaCha8Rng) -> Rational {
    rat(g.gen_range(-5..=5), g.gen_range(1..=4))
}

pub fn random_form(s: &Space, g: &mut ChaCha8Rng) -> LinearForm {
    s.orbit_form(&LinearForm::from_fn(s, |_, _| small_rational(g)))
}

pub fn random_plain_form(s: &Space, g: &mut ChaCha8Rng) -> LinearForm {
    LinearForm::from_fn(s, |_, _| small_rational(g))
}

/// `Σ_p (a_p + b_p/N) N^{-twist p} p` over a random subset of `P_k`.
pub fn convergent(k: usize, g: &mut ChaCha8Rng) -> AlgebraElement {
    let mut terms = Vec::new();
    for p in diagrams(k).iter() {
        if g.gen_bool(0.5) {
            let e = twist(p);
            let c = LaurentScalar::monomial(small_rational(g), -e) + LaurentScalar::monomial(small_rational(g), -e - 1);
            terms.push((p.clone(), c));
        }
    }
    AlgebraElement::from_terms(k, terms).expect("terms in P_k")
}

pub fn all_permutations(k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for smaller in all_permutations(k - 1) {
        for slot in 0..k {
            let mut v = smaller.clone();
            v.insert(slot, k - 1);
            out.push(v);
        }
    }
    out
}

pub fn sign(images: &[usize]) -> i64 {
    let mut s = 1;
    for i in 0..images.len() {
        for j in i + 1..images.len() {
            if images[i] > images[j] {
                s = -s;
            }
        }
    }
    s
}

/// No `a < b < c < d` with `a, c` in one block and `b, d` in another.
pub fn noncrossing(labels: &[usize]) -> bool {
    let n = labels.len();
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                for d in c + 1..n {
                    if labels[a] == labels[c] && labels[b] == labels[d] && labels[a] != labels[b] {
                        return false;
                    }
                }
            }
        }
    }
    true
}

pub fn labels(p: &Partition) -> Vec<usize> {
    p.labels().iter().map(|&l| l as usize).collect()
}

pub fn cycle_partition(p: &Partition) -> Partition {
    Partition::from_blocks(k_of(p), &cycles(p).expect("diagram")).expect("cycles partition the columns")
}

/// The coarsest partition of `1̄ … k̄` that does not cross `π` when the
/// points are interleaved as `1 1̄ 2 2̄ …`.
pub fn classical_kreweras(pi: &Partition) -> Partition {
    let k = pi.size();
    partitions(k)
        .into_iter()
        .filter(|s| {
            let mut l = vec![0; 2 * k];
            for i in 0..k {
                l[2 * i] = pi.label(i);
                l[2 * i + 1] = k + s.label(i);
            }
            noncrossing(&l)
        })
        .min_by_key(|s| s.nc())
        .expect("the singletons never cross")
}

pub fn falling(n: i64, m: usize) -> i64 {
    (0..m as i64).map(|i| n - i).product()
}

/// Split `0..len` into about `parts` contiguous ranges.
pub fn chunks(len: usize, parts: usize) -> Vec<std::ops::Range<usize>> {
    let size = len.div_ceil(parts.max(1)).max(1);
    (0..len).step_by(size).map(|s| s..(s + size).min(len)).collect()
}
