mod common;

use std::collections::BTreeMap;

use common::*;
use num_traits::{One, Zero};
use pfc_core::diagram::{mb, structure, DiagramFamily};
use pfc_core::forms::{Convolution, LinearForm, Space, Transform};
use pfc_core::orbit::{coproduct_boxplus, coproduct_boxtimes, Orbit, OrbitPairs};
use pfc_core::scalar::{int, Rational};
use pfc_core::series::{free_cumulants_by_permutations, free_r_transform, permutation_character, psi, PowerSeries};

type Triples = BTreeMap<(Orbit, Orbit, Orbit), i64>;

fn left_iterate(o: &Orbit, delta: fn(&Orbit) -> OrbitPairs) -> Triples {
    let mut out = Triples::new();
    for ((a, b), c) in delta(o) {
        for ((a1, a2), c2) in delta(&a) {
            *out.entry((a1, a2, b.clone())).or_insert(0) += c * c2;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn right_iterate(o: &Orbit, delta: fn(&Orbit) -> OrbitPairs) -> Triples {
    let mut out = Triples::new();
    for ((a, b), c) in delta(o) {
        for ((b1, b2), c2) in delta(&b) {
            *out.entry((a.clone(), b1, b2)).or_insert(0) += c * c2;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn tensor_pairs(x: &OrbitPairs, y: &OrbitPairs) -> OrbitPairs {
    let mut out = OrbitPairs::new();
    for ((a1, b1), c1) in x {
        for ((a2, b2), c2) in y {
            let key = (a1.tensor(a2).unwrap(), b1.tensor(b2).unwrap());
            *out.entry(key).or_insert(0) += c1 * c2;
        }
    }
    out
}

#[test]
fn boxplus_coproduct_is_a_graded_connected_morphism() {
    assert_eq!(Orbit::all(0).unwrap(), vec![Orbit::empty()]);
    for k in 0..=3 {
        for o in Orbit::all(k).unwrap() {
            assert_eq!(left_iterate(&o, coproduct_boxplus), right_iterate(&o, coproduct_boxplus));
            let delta = coproduct_boxplus(&o);
            assert!(delta.keys().all(|(a, b)| a.k + b.k == k));
            assert_eq!(delta.get(&(Orbit::empty(), o.clone())), Some(&1));
            assert_eq!(delta.get(&(o.clone(), Orbit::empty())), Some(&1));
        }
    }
    for k1 in 1..=3 {
        for k2 in 1..=4 - k1 {
            for o1 in Orbit::all(k1).unwrap() {
                for o2 in Orbit::all(k2).unwrap() {
                    let whole = o1.tensor(&o2).unwrap();
                    assert_eq!(
                        coproduct_boxplus(&whole),
                        tensor_pairs(&coproduct_boxplus(&o1), &coproduct_boxplus(&o2))
                    );
                }
            }
        }
    }
}

#[test]
fn boxtimes_coproduct_is_a_coassociative_morphism() {
    for k in 0..=2 {
        for o in Orbit::all(k).unwrap() {
            assert_eq!(left_iterate(&o, coproduct_boxtimes), right_iterate(&o, coproduct_boxtimes));
        }
    }
    for o1 in Orbit::all(1).unwrap() {
        for o2 in Orbit::all(1).unwrap() {
            let whole = o1.tensor(&o2).unwrap();
            assert_eq!(
                coproduct_boxtimes(&whole),
                tensor_pairs(&coproduct_boxtimes(&o1), &coproduct_boxtimes(&o2))
            );
        }
    }
}

#[test]
fn moment_transform_factors_and_inverts() {
    let mut g = rng(21);
    for k in 2..=3 {
        let s = space(k);
        for _ in 0..5 {
            let phi = random_plain_form(s, &mut g);
            let m = s.m(&phi);
            assert_eq!(s.m_c_to(&s.m_to_c(&phi)), m);
            assert_eq!(s.r(&m), phi);
            assert_eq!(s.transform(Transform::R, &s.transform(Transform::M, &phi)), phi);
        }
    }
    let s = space(2);
    let delta_id = LinearForm::from_fn(s, |k, i| if i == s.level(k).id() { int(1) } else { int(0) });
    assert!(s.m(&delta_id).level(2).iter().all(|v| v.is_one()));
}

#[test]
fn convolutions_are_associative_with_units() {
    let mut g = rng(22);
    let s3 = space(3);
    let (a, b, c) = (random_form(s3, &mut g), random_form(s3, &mut g), random_form(s3, &mut g));
    assert_eq!(s3.boxplus(&s3.boxplus(&a, &b), &c), s3.boxplus(&a, &s3.boxplus(&b, &c)));
    assert_eq!(s3.boxplus(&a, &s3.unit(Convolution::BoxPlus.into())), a);
    assert_eq!(s3.boxplus(&a, &b), s3.boxplus(&b, &a));
    let s = space(2);
    for _ in 0..5 {
        let (a, b, c) = (random_form(s, &mut g), random_form(s, &mut g), random_form(s, &mut g));
        assert_eq!(s.boxtimes(&s.boxtimes(&a, &b), &c), s.boxtimes(&a, &s.boxtimes(&b, &c)));
        let e = s.unit(Convolution::BoxTimes.into());
        assert_eq!(s.boxtimes(&a, &e), a);
        assert_eq!(s.boxtimes(&e, &a), a);
        let m = s.m(&s.boxtimes(&a, &b));
        assert_eq!(m, s.boxtimes_mg(&s.m(&a), &b));
        assert_eq!(m, s.boxtimes_md(&a, &s.m(&b)));
    }
}

#[test]
fn irreducible_values_of_boxplus_split_in_two() {
    let mut g = rng(23);
    let s = space(3);
    let (a, b) = (random_form(s, &mut g), random_form(s, &mut g));
    let c = s.boxplus(&a, &b);
    for k in 1..=3 {
        let l = s.level(k);
        for i in (0..l.len()).filter(|&i| structure(l.get(i)).unwrap().is_irreducible) {
            let expect = a.at(k, i).clone() * b.at(0, 0).clone() + a.at(0, 0).clone() * b.at(k, i).clone();
            assert_eq!(c.at(k, i), &expect);
        }
    }
}

fn random_character(s: &Space, g: &mut rand_chacha::ChaCha8Rng) -> LinearForm {
    s.multiplicative_extension(&random_form(s, g))
}

#[test]
fn characters_are_stable() {
    let mut g = rng(24);
    let s = space(3);
    for _ in 0..3 {
        let (a, b) = (random_character(s, &mut g), random_character(s, &mut g));
        assert!(s.is_character(&a));
        assert!(s.is_character(&s.boxplus(&a, &b)));
        for t in [Transform::M, Transform::R, Transform::MToC, Transform::MCTo] {
            assert!(s.is_character(&s.transform(t, &a)), "{t:?}");
        }
    }
    let s = space(2);
    for _ in 0..5 {
        let (a, b) = (random_character(s, &mut g), random_character(s, &mut g));
        assert!(s.is_character(&s.boxtimes(&a, &b)));
    }
    let one = LinearForm::from_fn(s, |_, _| Rational::one());
    assert!(s.is_character(&one));
}

#[test]
fn moments_of_infinitesimal_characters_are_additive() {
    let mut g = rng(25);
    let s = space(3);
    for _ in 0..50 {
        let phi = s.infinitesimal_extension(&random_form(s, &mut g), Convolution::BoxTimes);
        assert!(s.is_infinitesimal(&phi, Convolution::BoxTimes.into()));
        assert!(phi.at(0, 0).is_zero());
        let m = s.m(&phi);
        assert!(s.is_additive(&m));
        assert_eq!(s.r(&m), phi);
        let c = s.m_to_c(&phi);
        for k in 0..=3 {
            let l = s.level(k);
            for i in 0..l.len() {
                if !structure(l.get(i)).unwrap().is_exclusive_irreducible {
                    assert!(c.at(k, i).is_zero());
                }
            }
        }
    }
    // The inverse direction: additive characters come from infinitesimal ones.
    for _ in 0..10 {
        let a = s.additive_extension(&random_form(s, &mut g));
        assert!(s.is_additive(&a));
        assert!(s.is_infinitesimal(&s.r(&a), Convolution::BoxTimes.into()));
    }
}

#[test]
fn exponentials_of_infinitesimal_characters_are_characters() {
    let mut g = rng(26);
    let s = space(2);
    for which in [Convolution::BoxPlus, Convolution::BoxTimes] {
        for _ in 0..3 {
            let phi = s.infinitesimal_extension(&random_form(s, &mut g), which);
            let e = s.exp_convolution(which, &phi, 3);
            assert_eq!(e.t_coeff(0), s.unit(which.into()));
            assert_eq!(e.t_coeff(1), phi);
            assert!(s.is_character_to_order(&e, 3), "{which:?}");
            let sq = s.convolve(which, &phi, &phi);
            assert_eq!(e.t_coeff(2), sq.scale(&Rational::new(1.into(), 2.into())));
        }
    }
}

#[test]
fn projections_are_idempotent_and_erase() {
    let mut g = rng(27);
    let s = space(2);
    for f in [DiagramFamily::Permutations, DiagramFamily::Brauer, DiagramFamily::AtMostPairs] {
        let phi = random_form(s, &mut g);
        let c = s.cumulant_projection(&phi, f);
        assert_eq!(s.cumulant_projection(&c, f), c);
        let m = s.moment_projection(&phi, f);
        assert_eq!(s.moment_projection(&m, f), m);
        let x = s.exclusive_projection(&phi, f);
        assert_eq!(s.exclusive_projection(&x, f), x);
        let e = s.erase_outside(&phi, f);
        for k in 0..=2 {
            let l = s.level(k);
            for i in 0..l.len() {
                if l.in_family(f, i) {
                    assert_eq!(e.at(k, i), phi.at(k, i));
                } else {
                    assert!(e.at(k, i).is_zero());
                }
            }
        }
    }
}

#[test]
fn exclusive_moments_of_family_forms_read_off_the_split() {
    let mut g = rng(28);
    let s = space(2);
    for f in [DiagramFamily::Permutations, DiagramFamily::Brauer] {
        let psi = s.m_to_c(&s.erase_outside(&random_plain_form(s, &mut g), f));
        for k in 0..=2 {
            let l = s.level(k);
            for i in 0..l.len() {
                match mb(l.get(i), f).unwrap() {
                    Some(q) => assert_eq!(psi.at(k, i), psi.get(s, &q).unwrap()),
                    None => assert!(psi.at(k, i).is_zero()),
                }
            }
        }
    }
}

fn series(v: &[i64]) -> PowerSeries {
    PowerSeries::new(v.iter().map(|&x| int(x)).collect())
}

#[test]
fn free_cumulants_of_catalan_moments_are_ones() {
    assert_eq!(free_r_transform(&series(&[1])).unwrap(), series(&[1]));
    assert_eq!(free_r_transform(&series(&[1, 1, 2, 5, 14])).unwrap(), series(&[1, 1, 1, 1, 1]));
    assert_eq!(free_cumulants_by_permutations(&series(&[1, 1, 2, 5, 14])), series(&[1, 1, 1, 1, 1]));
}

#[test]
fn permutation_cumulants_match_the_free_transform() {
    let mut g = rng(29);
    for _ in 0..10 {
        let mut a = vec![Rational::one()];
        a.extend((0..4).map(|_| small_rational(&mut g)));
        let m = PowerSeries::new(a);
        let r = free_r_transform(&m).unwrap();
        assert_eq!(free_cumulants_by_permutations(&m), r);
        let s = space(3);
        let chi = permutation_character(s, &m);
        assert!(s.is_character(&chi));
        let pushed = psi(s, &s.r_family(&chi, DiagramFamily::Permutations));
        for j in 0..=3 {
            assert_eq!(pushed.coeff(j), r.coeff(j), "order {j}");
        }
    }
}
