use std::collections::BTreeMap;

use num_traits::{One, Zero};
use pfc_core::diagram::{structure, DiagramFamily};
use pfc_core::forms::{Convolution, LinearForm, Space, Transform};
use pfc_core::orbit::{coproduct_boxplus, coproduct_boxtimes, Orbit, OrbitPairs};
use pfc_core::scalar::{int, Rational};
use pfc_core::series::{free_cumulants_by_permutations, free_r_transform, permutation_character, psi, PowerSeries};
use rand_chacha::ChaCha8Rng;

use super::support::{ensure, random_form, random_plain_form, rng, small_rational, space};
use super::{Check, Context};
use crate::cli::Suite;
use crate::error::CliResult;

type Triples = BTreeMap<(Orbit, Orbit, Orbit), i64>;

fn iterate(o: &Orbit, delta: fn(&Orbit) -> OrbitPairs, left: bool) -> Triples {
    let mut out = Triples::new();
    for ((a, b), c) in delta(o) {
        let inner = if left { delta(&a) } else { delta(&b) };
        for ((x, y), c2) in inner {
            let key = if left { (x, y, b.clone()) } else { (a.clone(), x, y) };
            *out.entry(key).or_insert(0) += c * c2;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn tensor_pairs(x: &OrbitPairs, y: &OrbitPairs) -> OrbitPairs {
    let mut out = OrbitPairs::new();
    for ((a1, b1), c1) in x {
        for ((a2, b2), c2) in y {
            let key = (a1.tensor(a2).expect("orbits"), b1.tensor(b2).expect("orbits"));
            *out.entry(key).or_insert(0) += c1 * c2;
        }
    }
    out.retain(|_, v| *v != 0);
    out
}

fn coproducts(top: usize) -> Check {
    let mut check = Check::new(Suite::Transforms, format!("Δ_⊞ and Δ_⊠ are coassociative ⊗-morphisms, k ≤ {top}"));
    for k in 0..=top {
        check = check.task(move || {
            let mut cases = 0;
            for o in Orbit::all(k).map_err(|e| e.to_string())? {
                ensure!(iterate(&o, coproduct_boxplus, true) == iterate(&o, coproduct_boxplus, false), "Δ_⊞ at {o:?}");
                let d = coproduct_boxplus(&o);
                ensure!(d.keys().all(|(a, b)| a.k + b.k == k), "Δ_⊞ is not graded at {o:?}");
                ensure!(d.get(&(Orbit::empty(), o.clone())) == Some(&1), "Δ_⊞ misses ∅ ⊗ {o:?}");
                if k <= 2 {
                    ensure!(iterate(&o, coproduct_boxtimes, true) == iterate(&o, coproduct_boxtimes, false), "Δ_⊠ at {o:?}");
                }
                cases += 1;
            }
            for k1 in 1..k {
                for o1 in Orbit::all(k1).map_err(|e| e.to_string())? {
                    for o2 in Orbit::all(k - k1).map_err(|e| e.to_string())? {
                        let whole = o1.tensor(&o2).map_err(|e| e.to_string())?;
                        ensure!(
                            coproduct_boxplus(&whole) == tensor_pairs(&coproduct_boxplus(&o1), &coproduct_boxplus(&o2)),
                            "Δ_⊞ on {o1:?} ⊗ {o2:?}"
                        );
                        if k <= 2 {
                            ensure!(
                                coproduct_boxtimes(&whole) == tensor_pairs(&coproduct_boxtimes(&o1), &coproduct_boxtimes(&o2)),
                                "Δ_⊠ on {o1:?} ⊗ {o2:?}"
                            );
                        }
                        cases += 1;
                    }
                }
            }
            Ok(cases)
        });
    }
    check
}

pub fn transforms(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Transforms, 3, 1, 3)?;
    let seed = ctx.seed;
    let mut inversion = Check::new(Suite::Transforms, format!("M = Mc→ ∘ M→c and R inverts M, k ≤ {top}"));
    for k in 1..=top {
        inversion = inversion.task(move || {
            let s = space(k);
            let mut g = rng(seed, 0x7100 + k as u64);
            for _ in 0..5 {
                let phi = random_plain_form(s, &mut g);
                let m = s.m(&phi);
                ensure!(s.m_c_to(&s.m_to_c(&phi)) == m, "factorization of M");
                ensure!(s.r(&m) == phi, "R ∘ M is not the identity");
                ensure!(s.transform(Transform::R, &s.transform(Transform::M, &phi)) == phi, "transform dispatch");
            }
            Ok(5)
        });
    }
    let convolutions = Check::new(Suite::Transforms, format!("convolutions are associative with units, k ≤ {}", top.min(2))).task(move || {
        let s = space(top.min(2));
        let mut g = rng(seed, 0x7200);
        for _ in 0..5 {
            let (a, b, c) = (random_form(s, &mut g), random_form(s, &mut g), random_form(s, &mut g));
            ensure!(s.boxplus(&s.boxplus(&a, &b), &c) == s.boxplus(&a, &s.boxplus(&b, &c)), "⊞ associativity");
            ensure!(s.boxplus(&a, &b) == s.boxplus(&b, &a), "⊞ commutativity");
            ensure!(s.boxplus(&a, &s.unit(Convolution::BoxPlus.into())) == a, "⊞ unit");
            ensure!(s.boxtimes(&s.boxtimes(&a, &b), &c) == s.boxtimes(&a, &s.boxtimes(&b, &c)), "⊠ associativity");
            let e = s.unit(Convolution::BoxTimes.into());
            ensure!(s.boxtimes(&a, &e) == a && s.boxtimes(&e, &a) == a, "⊠ unit");
            let m = s.m(&s.boxtimes(&a, &b));
            ensure!(m == s.boxtimes_mg(&s.m(&a), &b) && m == s.boxtimes_md(&a, &s.m(&b)), "moments of a ⊠ product");
        }
        Ok(5)
    });
    let projections = Check::new(Suite::Transforms, "family projections are idempotent, k ≤ 2").task(move || {
        let s = space(2);
        let mut g = rng(seed, 0x7300);
        for f in [DiagramFamily::Permutations, DiagramFamily::Brauer, DiagramFamily::AtMostPairs] {
            let phi = random_form(s, &mut g);
            let c = s.cumulant_projection(&phi, f);
            ensure!(s.cumulant_projection(&c, f) == c, "cumulant projection onto {f:?}");
            let m = s.moment_projection(&phi, f);
            ensure!(s.moment_projection(&m, f) == m, "moment projection onto {f:?}");
            let x = s.exclusive_projection(&phi, f);
            ensure!(s.exclusive_projection(&x, f) == x, "exclusive projection onto {f:?}");
            let e = s.erase_outside(&phi, f);
            for k in 0..=2 {
                let l = s.level(k);
                for i in 0..l.len() {
                    let want = if l.in_family(f, i) { phi.at(k, i).clone() } else { Rational::zero() };
                    ensure!(*e.at(k, i) == want, "erasing outside {f:?} at {:?}", l.get(i));
                }
            }
        }
        Ok(3)
    });
    let free = Check::new(Suite::Transforms, "permutation cumulants match the free R-transform").task(move || {
        let catalan = PowerSeries::new([1, 1, 2, 5, 14].iter().map(|&x| int(x)).collect());
        let ones = PowerSeries::new(vec![Rational::one(); 5]);
        ensure!(free_r_transform(&catalan).map_err(|e| e.to_string())? == ones, "Catalan moments");
        let s = space(3);
        let mut g = rng(seed, 0x7400);
        for _ in 0..10 {
            let mut a = vec![Rational::one()];
            a.extend((0..4).map(|_| small_rational(&mut g)));
            let m = PowerSeries::new(a);
            let r = free_r_transform(&m).map_err(|e| e.to_string())?;
            ensure!(free_cumulants_by_permutations(&m) == r, "order 4 free cumulants");
            let pushed = psi(s, &s.r_family(&permutation_character(s, &m), DiagramFamily::Permutations));
            ensure!((0..=3).all(|j| pushed.coeff(j) == r.coeff(j)), "pushed cumulants of {m:?}");
        }
        Ok(11)
    });
    Ok(vec![coproducts(top), inversion, convolutions, projections, free])
}

fn random_character(s: &Space, g: &mut ChaCha8Rng) -> LinearForm {
    s.multiplicative_extension(&random_form(s, g))
}

pub fn characters(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Characters, 3, 1, 3)?;
    let (seed, order) = (ctx.seed, ctx.t_order);
    let stable = Check::new(Suite::Characters, format!("characters are stable under ⊞, ⊠ and the transforms, k ≤ {top}")).task(move || {
        let s = space(top);
        let mut g = rng(seed, 0x8100);
        for _ in 0..5 {
            let (a, b) = (random_character(s, &mut g), random_character(s, &mut g));
            ensure!(s.is_character(&s.boxplus(&a, &b)), "⊞ of characters");
            for t in [Transform::M, Transform::R, Transform::MToC, Transform::MCTo] {
                ensure!(s.is_character(&s.transform(t, &a)), "{t:?} of a character");
            }
        }
        let s = space(top.min(2));
        for _ in 0..5 {
            let (a, b) = (random_character(s, &mut g), random_character(s, &mut g));
            ensure!(s.is_character(&s.boxtimes(&a, &b)), "⊠ of characters");
        }
        Ok(10)
    });
    let mut infinitesimal = Check::new(Suite::Characters, format!("infinitesimal characters have additive moments, k ≤ {top}"));
    for part in 0..5u64 {
        infinitesimal = infinitesimal.task(move || {
            let s = space(top);
            let mut g = rng(seed, 0x8200 + part);
            for _ in 0..10 {
                let phi = s.infinitesimal_extension(&random_form(s, &mut g), Convolution::BoxTimes);
                ensure!(s.is_infinitesimal(&phi, Convolution::BoxTimes.into()), "generated form is not infinitesimal");
                let m = s.m(&phi);
                ensure!(s.is_additive(&m), "moments are not additive");
                ensure!(s.r(&m) == phi, "R does not invert M");
                let c = s.m_to_c(&phi);
                for k in 0..=top {
                    let l = s.level(k);
                    for i in 0..l.len() {
                        if !structure(l.get(i)).expect("diagram").is_exclusive_irreducible {
                            ensure!(c.at(k, i).is_zero(), "M→c is nonzero at {:?}", l.get(i));
                        }
                    }
                }
                let a = s.additive_extension(&random_form(s, &mut g));
                ensure!(s.is_infinitesimal(&s.r(&a), Convolution::BoxTimes.into()), "R of an additive form");
            }
            Ok(10)
        });
    }
    let exp = Check::new(Suite::Characters, format!("convolution exponentials are characters to order {order}, k ≤ {}", top.min(2))).task(move || {
        let s = space(top.min(2));
        let mut g = rng(seed, 0x8300);
        let mut cases = 0;
        for which in [Convolution::BoxPlus, Convolution::BoxTimes] {
            for _ in 0..3 {
                let phi = s.infinitesimal_extension(&random_form(s, &mut g), which);
                let e = s.exp_convolution(which, &phi, order);
                ensure!(e.t_coeff(0) == s.unit(which.into()), "t⁰ coefficient for {which:?}");
                if order >= 1 {
                    ensure!(e.t_coeff(1) == phi, "t¹ coefficient for {which:?}");
                }
                if order >= 2 {
                    let half = s.convolve(which, &phi, &phi).scale(&Rational::new(1.into(), 2.into()));
                    ensure!(e.t_coeff(2) == half, "t² coefficient for {which:?}");
                }
                ensure!(s.is_character_to_order(&e, order), "exp for {which:?}");
                cases += 1;
            }
        }
        Ok(cases)
    });
    Ok(vec![stable, infinitesimal, exp])
}
