mod common;

use common::*;
use pfc_core::diagram::identity;
use pfc_core::geometry::{
    admissible_gluings, admissible_splits, bfs_distance_oracle, defect, distance, hasse_edges, in_order, is_inverse,
    mobius, order_matrix, segment, OrderKind,
};
use pfc_core::matrix::Matrix;
use pfc_core::partition::{GroundSet, Partition};
use pfc_core::scalar::{int, Rational};
use rand::Rng;

fn d2(p: &Partition, q: &Partition) -> i64 {
    distance(p, q).unwrap().doubled()
}

#[test]
fn closed_distance_matches_breadth_first_search() {
    for n in 0..=5 {
        let ps = partitions(n);
        for p in &ps {
            for q in &ps {
                assert_eq!(distance(p, q).unwrap(), bfs_distance_oracle(p, q).unwrap(), "{p:?} {q:?}");
            }
        }
    }
}

#[test]
fn metric_axioms_exhaustive() {
    let ps = partitions(4);
    for p in &ps {
        assert_eq!(d2(p, p), 0);
        for q in &ps {
            assert_eq!(d2(p, q), d2(q, p));
            if p != q {
                assert!(d2(p, q) > 0);
            }
            for r in &ps {
                assert!(d2(p, r) <= d2(p, q) + d2(q, r));
            }
        }
    }
}

#[test]
fn triangle_inequality_sampled_on_six_points() {
    let ps = partitions(6);
    let mut r = rng(6);
    for _ in 0..20_000 {
        let (a, b, c) = (pick(&mut r, &ps), pick(&mut r, &ps), pick(&mut r, &ps));
        assert!(d2(a, c) <= d2(a, b) + d2(b, c));
        assert_eq!(d2(a, b), d2(b, a));
    }
}

#[test]
fn defects_are_nonnegative() {
    let ps = partitions(4);
    for b in &ps {
        for q in &ps {
            for p in &ps {
                assert!(defect(b, q, p).unwrap().doubled() >= 0);
            }
        }
    }
}

#[test]
fn geodesic_order_is_a_partial_order_with_minimum_base() {
    let ps = partitions(4);
    for b in &ps {
        let rel: Vec<Vec<bool>> = ps
            .iter()
            .map(|q| ps.iter().map(|p| in_order(OrderKind::Geodesic, b, q, p).unwrap()).collect())
            .collect();
        let bi = ps.iter().position(|x| x == b).unwrap();
        for i in 0..ps.len() {
            assert!(rel[i][i]);
            assert!(rel[bi][i]);
            for j in 0..ps.len() {
                if i != j && rel[i][j] {
                    assert!(!rel[j][i]);
                }
                for l in 0..ps.len() {
                    if rel[i][j] && rel[j][l] {
                        assert!(rel[i][l]);
                    }
                }
            }
        }
    }
}

#[test]
fn geodesic_order_factors_through_join() {
    let ps = partitions(4);
    for b in &ps {
        for p in &ps {
            let gluings = admissible_gluings(b, p).unwrap();
            for q in &ps {
                let on_geodesic = in_order(OrderKind::Geodesic, b, q, p).unwrap();
                let witnesses: Vec<&Partition> = gluings
                    .iter()
                    .filter(|g| admissible_splits(b, g).unwrap().contains(q))
                    .collect();
                assert_eq!(on_geodesic, !witnesses.is_empty(), "{b:?} {q:?} {p:?}");
                for w in witnesses {
                    assert_eq!(*w, p.join(q).unwrap());
                }
            }
        }
    }
}

#[test]
fn counts_grow_along_cover_edges() {
    let ps = partitions(4);
    for b in &ps {
        for kind in [OrderKind::CoarserCompatible, OrderKind::FinerCompatible, OrderKind::Geodesic] {
            for (lo, hi) in hasse_edges(kind, b, GroundSet::new(4)).unwrap() {
                let (lo, hi) = (&ps[lo], &ps[hi]);
                let nc = |x: &Partition| x.nc() as i64;
                let ncb = |x: &Partition| x.join(b).unwrap().nc() as i64;
                // One cut separates the two; along it each count moves in one direction.
                let (fine, coarse) = if lo.is_finer(hi).unwrap() { (lo, hi) } else { (hi, lo) };
                assert!(fine.is_finer(coarse).unwrap());
                assert!(nc(fine) >= nc(coarse));
                assert!(ncb(fine) >= ncb(coarse));
                assert!(nc(fine) - ncb(fine) >= nc(coarse) - ncb(coarse));
            }
        }
    }
}

#[test]
fn segments_are_geodesic_intervals() {
    let ps = partitions(4);
    for p in &ps {
        for q in &ps {
            let seg = segment(p, q).unwrap();
            for r in &ps {
                let on = d2(p, r) + d2(r, q) == d2(p, q);
                assert_eq!(seg.contains(r), on);
            }
        }
    }
}

fn rat_matrix(m: &Matrix<i64>) -> Matrix<Rational> {
    m.to_rational()
}

#[test]
fn geodesic_matrix_factors_and_inverts() {
    let ground = GroundSet::new(4);
    for b in &partitions(4) {
        let g = order_matrix(OrderKind::Geodesic, b, ground).unwrap();
        let c = order_matrix(OrderKind::CoarserCompatible, b, ground).unwrap();
        let s = order_matrix(OrderKind::FinerCompatible, b, ground).unwrap();
        assert_eq!(c.entries.mul(&s.entries), g.entries);
        for m in [&g, &c, &s] {
            let inv = m.inverse();
            assert!(is_inverse(&m.entries, &inv));
            let n = m.basis.len();
            for i in 0..n {
                for j in 0..n {
                    let mu = mobius(m.kind, b, &m.basis[j], &m.basis[i]).unwrap();
                    assert_eq!(inv.get(i, j), &mu, "{:?} base {b:?}", m.kind);
                }
            }
        }
        let _ = rat_matrix(&g.entries);
    }
}

/// `Σ_chains (−1)^len` over strict chains from `q` up to `p`.
fn alternating_chain_sum(rel: &[Vec<bool>], from: usize, to: usize) -> i64 {
    if from == to {
        return 1;
    }
    let mut total = 0;
    for mid in 0..rel.len() {
        if mid != from && rel[from][mid] && rel[mid][to] {
            total -= alternating_chain_sum(rel, mid, to);
        }
    }
    total
}

#[test]
fn inverse_entries_are_alternating_chain_sums() {
    let ps = partitions(3);
    let ground = GroundSet::new(3);
    for b in &ps {
        for kind in OrderKind::ALL {
            let m = order_matrix(kind, b, ground).unwrap();
            let inv = m.inverse();
            // rel[x][y]: basis element x is below y.
            let rel: Vec<Vec<bool>> = (0..ps.len())
                .map(|x| (0..ps.len()).map(|y| *m.entries.get(y, x) == 1).collect())
                .collect();
            for x in 0..ps.len() {
                for y in 0..ps.len() {
                    let expect = if rel[x][y] { alternating_chain_sum(&rel, x, y) } else { 0 };
                    assert_eq!(inv.get(y, x), &int(expect));
                }
            }
        }
    }
    let bottom = Partition::singletons(3);
    let top = Partition::one_block(3);
    assert_eq!(mobius(OrderKind::Refinement, &bottom, &bottom, &top).unwrap(), int(2));
}

#[test]
fn random_distances_on_diagrams_respect_identity_base() {
    let ps = diagrams(3);
    let id = identity(3);
    let mut r = rng(11);
    for _ in 0..2000 {
        let p = pick(&mut r, &ps);
        let q = pick(&mut r, &ps);
        let lhs = defect(&id, q, p).unwrap().doubled();
        let rhs = d2(&id, q) + d2(q, p) - d2(&id, p);
        assert_eq!(lhs, rhs);
        let _: u8 = r.gen();
    }
}
