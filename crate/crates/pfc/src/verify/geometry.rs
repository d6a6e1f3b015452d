use std::sync::Arc;

use pfc_core::geometry::{bfs_distance_oracle, distance, hasse_edges, is_inverse, mobius as mobius_value, order_matrix, OrderKind, BFS_ORACLE_LIMIT};
use pfc_core::partition::{GroundSet, Partition};
use pfc_core::scalar::int;
use rand::Rng;

use super::support::{chunks, ensure, partitions, rng};
use super::{Check, Context};
use crate::cli::Suite;
use crate::error::CliResult;

fn d2(p: &Partition, q: &Partition) -> i64 {
    distance(p, q).expect("same ground").doubled()
}

/// Exhaustive triples up to this many, sampling beyond.
const EXHAUSTIVE_TRIPLES: usize = 4_000_000;
const SAMPLED_TRIPLES: usize = 100_000;

pub fn metric(ctx: &Context) -> CliResult<Vec<Check>> {
    let k = ctx.size(Suite::Metric, 2, 1, 5)?;
    let ground = 2 * k;
    let ps = Arc::new(partitions(ground));
    let n = ps.len();
    let mut axioms = Check::new(Suite::Metric, format!("symmetry, separation and triangle inequality on ground {ground}"));
    if n * n * n <= EXHAUSTIVE_TRIPLES {
        for r in chunks(n, 32) {
            let ps = ps.clone();
            axioms = axioms.task(move || {
                let mut cases = 0;
                for p in &ps[r.clone()] {
                    for q in ps.iter() {
                        ensure!(d2(p, q) == d2(q, p), "d({p:?}, {q:?}) is not symmetric");
                        ensure!((d2(p, q) == 0) == (p == q), "d({p:?}, {q:?}) breaks separation");
                        for s in ps.iter() {
                            ensure!(d2(p, s) <= d2(p, q) + d2(q, s), "triangle fails at {p:?}, {q:?}, {s:?}");
                            cases += 1;
                        }
                    }
                }
                Ok(cases)
            });
        }
    } else {
        for part in 0..16u64 {
            let ps = ps.clone();
            let seed = ctx.seed;
            axioms = axioms.task(move || {
                let mut g = rng(seed, 0x6d65_7472 + part);
                let count = SAMPLED_TRIPLES / 16;
                for _ in 0..count {
                    let (a, b, c) = (&ps[g.gen_range(0..n)], &ps[g.gen_range(0..n)], &ps[g.gen_range(0..n)]);
                    ensure!(d2(a, b) == d2(b, a), "d({a:?}, {b:?}) is not symmetric");
                    ensure!(d2(a, c) <= d2(a, b) + d2(b, c), "triangle fails at {a:?}, {b:?}, {c:?}");
                }
                Ok(count as u64)
            });
        }
    }
    let mut bfs = Check::new(Suite::Metric, "closed-form distance equals breadth-first search");
    for size in 0..=ground.min(BFS_ORACLE_LIMIT) {
        bfs = bfs.task(move || {
            let ps = partitions(size);
            let mut cases = 0;
            for p in &ps {
                for q in &ps {
                    let (a, b) = (distance(p, q).map_err(|e| e.to_string())?, bfs_distance_oracle(p, q).map_err(|e| e.to_string())?);
                    ensure!(a == b, "d({p:?}, {q:?}) = {a} but the search finds {b}");
                    cases += 1;
                }
            }
            Ok(cases)
        });
    }
    Ok(vec![axioms, bfs])
}

fn per_base(suite: Suite, label: String, k: usize, f: fn(&Partition, GroundSet) -> Result<u64, String>) -> Check {
    let ground = GroundSet::diagram(k);
    let bases = Arc::new(partitions(2 * k));
    let mut check = Check::new(suite, label);
    for r in chunks(bases.len(), 16) {
        let bases = bases.clone();
        check = check.task(move || bases[r.clone()].iter().map(|b| f(b, ground)).sum());
    }
    check
}

pub fn gcs(ctx: &Context) -> CliResult<Vec<Check>> {
    let k = ctx.size(Suite::Gcs, 2, 1, 3)?;
    Ok(vec![per_base(Suite::Gcs, format!("G_b = C_b S_b for every base of P_{k}"), k, |b, ground| {
        let m = |kind| order_matrix(kind, b, ground).map_err(|e| e.to_string());
        let (g, c, s) = (m(OrderKind::Geodesic)?, m(OrderKind::CoarserCompatible)?, m(OrderKind::FinerCompatible)?);
        ensure!(c.entries.mul(&s.entries) == g.entries, "factorization fails for base {b:?}");
        Ok(1)
    })])
}

pub fn mobius(ctx: &Context) -> CliResult<Vec<Check>> {
    let k = ctx.size(Suite::Mobius, 2, 1, 2)?;
    let closed = per_base(Suite::Mobius, format!("closed-form Möbius values invert G_b on P_{k}"), k, |b, ground| {
        let m = order_matrix(OrderKind::Geodesic, b, ground).map_err(|e| e.to_string())?;
        let inv = m.inverse();
        ensure!(is_inverse(&m.entries, &inv), "inverse check fails for base {b:?}");
        let n = m.basis.len();
        for i in 0..n {
            for j in 0..n {
                let mu = mobius_value(OrderKind::Geodesic, b, &m.basis[j], &m.basis[i]).map_err(|e| e.to_string())?;
                ensure!(*inv.get(i, j) == mu, "μ({:?}, {:?}) = {mu} for base {b:?}, inverse has {}", m.basis[j], m.basis[i], inv.get(i, j));
            }
        }
        Ok((n * n) as u64)
    });
    let lattice = Check::new(Suite::Mobius, "μ(0̂, 1̂) = 2 in the partition lattice of three elements").task(|| {
        let (lo, hi) = (Partition::singletons(3), Partition::one_block(3));
        let mu = mobius_value(OrderKind::Refinement, &lo, &lo, &hi).map_err(|e| e.to_string())?;
        ensure!(mu == int(2), "μ(0̂, 1̂) = {mu}");
        Ok(1)
    });
    Ok(vec![closed, lattice])
}

pub fn hasse(ctx: &Context) -> CliResult<Vec<Check>> {
    let k = ctx.size(Suite::Hasse, 2, 1, 2)?;
    let mut checks = Vec::new();
    for kind in [OrderKind::Geodesic, OrderKind::CoarserCompatible, OrderKind::FinerCompatible] {
        checks.push(per_base(Suite::Hasse, format!("{kind:?} covers generate the order on P_{k}"), k, match kind {
            OrderKind::Geodesic => |b, g| covers_generate(OrderKind::Geodesic, b, g),
            OrderKind::CoarserCompatible => |b, g| covers_generate(OrderKind::CoarserCompatible, b, g),
            _ => |b, g| covers_generate(OrderKind::FinerCompatible, b, g),
        }));
    }
    Ok(checks)
}

/// Every edge is a cover and the reflexive-transitive closure of the edges is the order.
fn covers_generate(kind: OrderKind, b: &Partition, ground: GroundSet) -> Result<u64, String> {
    let m = order_matrix(kind, b, ground).map_err(|e| e.to_string())?;
    let edges = hasse_edges(kind, b, ground).map_err(|e| e.to_string())?;
    let n = m.basis.len();
    let below = |lo: usize, hi: usize| *m.entries.get(hi, lo) == 1;
    let mut reach = vec![vec![false; n]; n];
    for (i, row) in reach.iter_mut().enumerate() {
        row[i] = true;
    }
    for &(lo, hi) in &edges {
        ensure!(lo != hi && below(lo, hi), "edge {:?} -> {:?} is not in the order (base {b:?})", m.basis[lo], m.basis[hi]);
        ensure!(
            !(0..n).any(|x| x != lo && x != hi && below(lo, x) && below(x, hi)),
            "edge {:?} -> {:?} is not a cover (base {b:?})",
            m.basis[lo],
            m.basis[hi]
        );
        reach[lo][hi] = true;
    }
    for via in 0..n {
        for i in 0..n {
            if reach[i][via] {
                for j in 0..n {
                    if reach[via][j] {
                        reach[i][j] = true;
                    }
                }
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            ensure!(reach[i][j] == below(i, j), "closure differs at {:?}, {:?} (base {b:?})", m.basis[i], m.basis[j]);
        }
    }
    Ok(edges.len() as u64)
}
