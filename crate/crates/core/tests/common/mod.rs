//! Helpers shared by the integration tests: enumeration shortcuts, seeded
//! generators and independent brute-force oracles.
#![allow(dead_code)]

use pfc_core::diagram::{compose, identity, transpose};
use pfc_core::geometry::{defect, in_order, OrderKind};
use pfc_core::partition::{enumerate_partitions, GroundSet, Partition};
use pfc_core::scalar::{rat, Rational};
use pfc_core::forms::{LinearForm, Space};
use rand::{Rng, SeedableRng};
use std::sync::OnceLock;
use rand_chacha::ChaCha8Rng;

pub fn diagrams(k: usize) -> Vec<Partition> {
    enumerate_partitions(GroundSet::diagram(k)).unwrap()
}

pub fn partitions(n: usize) -> Vec<Partition> {
    enumerate_partitions(GroundSet::new(n)).unwrap()
}

pub fn k_of(p: &Partition) -> usize {
    p.size() / 2
}

pub fn comp(p: &Partition, q: &Partition) -> Partition {
    compose(p, q).unwrap().product
}

pub fn t(p: &Partition) -> Partition {
    transpose(p).unwrap()
}

/// `df(q, p)` with base `id_k`, as an integer.
pub fn df(q: &Partition, p: &Partition) -> i64 {
    let d = defect(&identity(k_of(p)), q, p).unwrap();
    d.to_integer().expect("the defect of diagrams is an integer")
}

/// `q ≤ p` for the geodesic order based at `id_k`.
pub fn leq(q: &Partition, p: &Partition) -> bool {
    in_order(OrderKind::Geodesic, &identity(k_of(p)), q, p).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// A small rational with numerator in `-5..=5` and denominator in `1..=4`.
pub fn small_rational(r: &mut ChaCha8Rng) -> Rational {
    rat(r.gen_range(-5..=5), r.gen_range(1..=4))
}

pub fn pick<'a, T>(r: &mut ChaCha8Rng, items: &'a [T]) -> &'a T {
    &items[r.gen_range(0..items.len())]
}

/// Shared spaces; building the degree-3 composition table is the slow part.
pub fn space(k: usize) -> &'static Space {
    static SPACES: [OnceLock<Space>; 4] = [OnceLock::new(), OnceLock::new(), OnceLock::new(), OnceLock::new()];
    SPACES[k].get_or_init(|| Space::new(k).unwrap())
}

/// A conjugation-invariant form with small rational values.
pub fn random_form(s: &Space, r: &mut ChaCha8Rng) -> LinearForm {
    s.orbit_form(&LinearForm::from_fn(s, |_, _| small_rational(r)))
}

/// A form with small rational values and no symmetry.
pub fn random_plain_form(s: &Space, r: &mut ChaCha8Rng) -> LinearForm {
    LinearForm::from_fn(s, |_, _| small_rational(r))
}
