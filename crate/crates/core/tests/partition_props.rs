mod common;

use common::*;
use pfc_core::diagram::{parse_diagram, show};
use pfc_core::partition::{bell_numbers, enumerate_partitions, GroundSet, Partition, Ranker};
use proptest::prelude::*;

fn partition(max: usize) -> impl Strategy<Value = Partition> {
    (0..=max).prop_flat_map(|n| prop::collection::vec(0u8..6, n).prop_map(|keys| Partition::from_labels(&keys)))
}

fn partitions_of(n: usize, count: usize) -> impl Strategy<Value = Vec<Partition>> {
    prop::collection::vec(prop::collection::vec(0u8..5, n).prop_map(|k| Partition::from_labels(&k)), count)
}

/// Bell numbers from the Bell triangle, independent of the library routine.
fn bell_triangle(n: usize) -> Vec<u128> {
    let mut out = vec![1u128];
    let mut row = vec![1u128];
    for _ in 0..n {
        let mut next = vec![*row.last().unwrap()];
        for x in &row {
            let v = next.last().unwrap() + x;
            next.push(v);
        }
        out.push(next[0]);
        row = next;
    }
    out
}

proptest! {
    #[test]
    fn canonical_encoding_round_trips(p in partition(8)) {
        prop_assert_eq!(Partition::from_labels(p.labels()), p.clone());
        prop_assert_eq!(Partition::from_blocks(p.size(), &p.blocks()).unwrap(), p.clone());
        prop_assert_eq!(p.blocks().len(), p.nc());
    }

    #[test]
    fn diagram_text_round_trips(keys in prop::collection::vec(0u8..5, 0..=3usize).prop_flat_map(|top| {
        let k = top.len();
        prop::collection::vec(0u8..5, k).prop_map(move |bottom| {
            let mut all = top.clone();
            all.extend(bottom);
            all
        })
    })) {
        let p = Partition::from_labels(&keys);
        let k = p.size() / 2;
        prop_assert_eq!(parse_diagram(&show(&p), Some(k)).unwrap(), p);
    }

    #[test]
    fn lattice_laws(v in partitions_of(6, 3)) {
        let (p, q, r) = (&v[0], &v[1], &v[2]);
        prop_assert_eq!(p.join(q).unwrap(), q.join(p).unwrap());
        prop_assert_eq!(p.meet(q).unwrap(), q.meet(p).unwrap());
        prop_assert_eq!(p.join(&q.join(r).unwrap()).unwrap(), p.join(q).unwrap().join(r).unwrap());
        prop_assert_eq!(p.meet(&q.meet(r).unwrap()).unwrap(), p.meet(q).unwrap().meet(r).unwrap());
        prop_assert_eq!(p.meet(&p.join(q).unwrap()).unwrap(), p.clone());
        prop_assert_eq!(p.join(&p.meet(q).unwrap()).unwrap(), p.clone());
        prop_assert!(p.is_finer(&p.join(q).unwrap()).unwrap());
        prop_assert!(p.meet(q).unwrap().is_finer(q).unwrap());
    }
}

#[test]
fn join_and_meet_are_bounds_exhaustively() {
    for n in 0..=5 {
        let ps = partitions(n);
        for p in &ps {
            for q in &ps {
                let j = p.join(q).unwrap();
                let m = p.meet(q).unwrap();
                assert_eq!(j, q.join(p).unwrap());
                assert_eq!(p.meet(&j).unwrap(), *p);
                for r in &ps {
                    if p.is_finer(r).unwrap() && q.is_finer(r).unwrap() {
                        assert!(j.is_finer(r).unwrap());
                    }
                    if r.is_finer(p).unwrap() && r.is_finer(q).unwrap() {
                        assert!(r.is_finer(&m).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn refinement_is_a_partial_order() {
    for n in 0..=4 {
        let ps = partitions(n);
        for p in &ps {
            assert!(p.is_finer(p).unwrap());
            for q in &ps {
                let pq = p.is_finer(q).unwrap();
                if pq && q.is_finer(p).unwrap() {
                    assert_eq!(p, q);
                }
                for r in &ps {
                    if pq && q.is_finer(r).unwrap() {
                        assert!(p.is_finer(r).unwrap());
                    }
                }
            }
        }
    }
}

#[test]
fn enumeration_counts_are_bell_numbers() {
    let expected = bell_triangle(10);
    assert_eq!(&expected[..8], &[1, 1, 2, 5, 15, 52, 203, 877]);
    assert_eq!(bell_numbers(10), expected);
    for (n, &b) in expected.iter().enumerate().take(9) {
        let ps = enumerate_partitions(GroundSet::new(n)).unwrap();
        assert_eq!(ps.len() as u128, b);
        let ranker = Ranker::new(n);
        for (i, p) in ps.iter().enumerate() {
            assert_eq!(ranker.rank(p), i);
        }
        assert!(ps.windows(2).all(|w| w[0] < w[1]));
    }
}

#[test]
fn extreme_partitions_sit_at_the_ends() {
    for n in 1..=6 {
        let ps = partitions(n);
        assert_eq!(ps[0], Partition::one_block(n));
        assert_eq!(*ps.last().unwrap(), Partition::singletons(n));
    }
    assert_eq!(partitions(0), vec![Partition::empty()]);
}
