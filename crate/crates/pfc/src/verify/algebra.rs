use num_traits::Zero;
use pfc_core::asymptotics::fluct::{
    evaluate, fluct_boxtimes, fluct_cumulants, fluct_limit_product, fluct_moment_product, fluct_moments, fluct_product,
    lift, FluctElement, MomentSide,
};
use pfc_core::asymptotics::{
    algebra_product, deformed_product, kreweras_moment_sum, limit_form, limit_product, limit_product_forms, m_n,
    m_n_inverse, moment, semigroup_taylor, transposed_moment, AlgebraElement, LimitKind, SemigroupMode,
};
use pfc_core::diagram::{family_contains, DiagramFamily};
use pfc_core::forms::LinearForm;
use pfc_core::kreweras::kreweras_set;
use pfc_core::laurent::LaurentScalar;
use pfc_core::scalar::Rational;
use rand::Rng;

use super::support::{convergent, diagrams, ensure, leq, rng, small_rational, space, twist};
use super::{Check, Context};
use crate::cli::Suite;
use crate::error::CliResult;

fn basis(p: &pfc_core::Partition) -> AlgebraElement {
    AlgebraElement::basis(p).expect("diagram")
}

pub fn limit_assoc(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::LimitAssoc, 2, 1, 2)?;
    let mut assoc = Check::new(Suite::LimitAssoc, format!("._∞ is associative on basis triples, k ≤ {top}"));
    let mut termwise = Check::new(Suite::LimitAssoc, format!("._∞ is the limit of ._N and M_N is multiplicative, k ≤ {top}"));
    for k in 1..=top {
        let n = diagrams(k).len();
        for first in 0..n {
            assoc = assoc.task(move || {
                let ps: Vec<AlgebraElement> = diagrams(k).iter().map(basis).collect();
                let a = &ps[first];
                for b in &ps {
                    let ab = limit_product(a, b).map_err(|e| e.to_string())?;
                    for c in &ps {
                        let lhs = limit_product(&ab, c).map_err(|e| e.to_string())?;
                        let rhs = limit_product(a, &limit_product(b, c).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
                        ensure!(lhs == rhs, "({a} ._∞ {b}) ._∞ {c} differs from the other bracketing");
                    }
                }
                Ok((n * n) as u64)
            });
        }
        termwise = termwise.task(move || {
            let ps: Vec<AlgebraElement> = diagrams(k).iter().map(basis).collect();
            for a in &ps {
                for b in &ps {
                    let d = deformed_product(a, b).map_err(|e| e.to_string())?;
                    ensure!(d.limit().map_err(|e| e.to_string())? == limit_product(a, b).map_err(|e| e.to_string())?, "limit of {a} ._N {b}");
                    ensure!(m_n(&d) == algebra_product(&m_n(a), &m_n(b)).map_err(|e| e.to_string())?, "M_N at {a}, {b}");
                }
            }
            Ok((ps.len() * ps.len()) as u64)
        });
    }
    Ok(vec![assoc, termwise])
}

const RANDOM_ELEMENTS: u64 = 100;

pub fn convergence(ctx: &Context) -> CliResult<Vec<Check>> {
    let k = ctx.size(Suite::Convergence, 2, 1, 2)?;
    let seed = ctx.seed;
    let identities = Check::new(Suite::Convergence, format!("moment, cumulant and exclusive limits are linked, k = {k}")).task(move || {
        let s = space(k);
        let mut g = rng(seed, 0xc0);
        let mut elements: Vec<AlgebraElement> = diagrams(k).iter().map(|p| AlgebraElement::normalized(p).expect("diagram")).collect();
        elements.extend((0..RANDOM_ELEMENTS).map(|_| convergent(k, &mut g)));
        for e in &elements {
            let [m, kappa, mc, kc] = LimitKind::ALL.map(|w| limit_form(s, e, w));
            let (m, kappa, mc, kc) = (m.map_err(|x| x.to_string())?, kappa.map_err(|x| x.to_string())?, mc.map_err(|x| x.to_string())?, kc.map_err(|x| x.to_string())?);
            ensure!(m == s.m(&kappa), "moments are not M of the cumulants for {e}");
            ensure!(s.r(&m) == kappa, "R does not recover the cumulants for {e}");
            ensure!(m == s.m_c_to(&mc), "moments are not Mc→ of the exclusive moments for {e}");
            ensure!(kc == s.m_to_c(&kappa), "exclusive cumulants are not M→c of the cumulants for {e}");
            ensure!(mc == kc, "exclusive moments and cumulants differ for {e}");
            let l = s.level(k);
            for i in 0..l.len() {
                if family_contains(DiagramFamily::Brauer, l.get(i)).expect("diagram") {
                    ensure!(mc.at(k, i) == kappa.at(k, i), "Brauer exclusive moment at {:?} for {e}", l.get(i));
                }
            }
        }
        Ok(elements.len() as u64)
    });
    let normalized = Check::new(Suite::Convergence, format!("normalized basis elements have δ cumulants, k = {k}")).task(move || {
        let s = space(k);
        let ps = diagrams(k);
        for p in ps.iter() {
            let e = AlgebraElement::normalized(p).expect("diagram");
            let m = limit_form(s, &e, LimitKind::Moment).map_err(|x| x.to_string())?;
            let kappa = limit_form(s, &e, LimitKind::Cumulant).map_err(|x| x.to_string())?;
            for (i, q) in ps.iter().enumerate() {
                let one = |b: bool| if b { Rational::from_integer(1.into()) } else { Rational::zero() };
                ensure!(*kappa.at(k, i) == one(p == q), "κ_{q:?} of normalized {p:?}");
                ensure!(*m.at(k, i) == one(leq(p, q)), "m_{q:?} of normalized {p:?}");
            }
        }
        Ok((ps.len() * ps.len()) as u64)
    });
    let gene = Check::new(Suite::Convergence, format!("transposed moments sum cumulants over Kreweras complements, k = {k}")).task(move || {
        let s = space(k);
        let ps = diagrams(k);
        let mut g = rng(seed, 0xc1);
        let mut elements: Vec<AlgebraElement> = ps.iter().map(|p| AlgebraElement::normalized(p).expect("diagram")).collect();
        elements.extend((0..10).map(|_| convergent(k, &mut g)));
        let mut cases = 0;
        for e in &elements {
            let m = limit_form(s, e, LimitKind::Moment).map_err(|x| x.to_string())?;
            let kappa = limit_form(s, e, LimitKind::Cumulant).map_err(|x| x.to_string())?;
            for p0 in ps.iter() {
                for p1 in ps.iter().filter(|p1| leq(p1, p0)) {
                    let lhs = transposed_moment(s, &m, p1, p0).map_err(|x| x.to_string())?;
                    let mut rhs = Rational::zero();
                    for pp in ps.iter().filter(|pp| leq(pp, p0)) {
                        for q in kreweras_set(pp, p1).map_err(|x| x.to_string())?.complements {
                            rhs += kappa.get(s, &q).map_err(|x| x.to_string())?;
                        }
                    }
                    ensure!(lhs == rhs, "at {p1:?} ≤ {p0:?} for {e}");
                    ensure!(kreweras_moment_sum(s, &kappa, p1, p0).map_err(|x| x.to_string())? == rhs, "library sum at {p1:?} ≤ {p0:?}");
                    cases += 1;
                }
            }
        }
        Ok(cases)
    });
    let mut products = Check::new(Suite::Convergence, format!("limits of products follow the ⊠ formulas, k = {k}"));
    for part in 0..4u64 {
        products = products.task(move || {
            let s = space(k);
            let mut g = rng(seed, 0xc2 + part);
            let count = RANDOM_ELEMENTS / 4;
            for _ in 0..count {
                let (e, f) = (convergent(k, &mut g), convergent(k, &mut g));
                let ef = algebra_product(&e, &f).map_err(|x| x.to_string())?;
                let m = limit_form(s, &ef, LimitKind::Moment).map_err(|x| x.to_string())?;
                let kappa = limit_form(s, &ef, LimitKind::Cumulant).map_err(|x| x.to_string())?;
                let ke = limit_form(s, &e, LimitKind::Cumulant).map_err(|x| x.to_string())?;
                let kf = limit_form(s, &f, LimitKind::Cumulant).map_err(|x| x.to_string())?;
                let pred = limit_product_forms(s, &ke, &kf);
                ensure!(pred.kappa == kappa, "cumulants of {e} · {f}");
                ensure!(pred.moment_via_d == m && pred.moment_via_g == m, "moments of {e} · {f}");
            }
            Ok(count)
        });
    }
    Ok(vec![identities, normalized, gene, products])
}

/// `Σ c_p N^{-twist p} p` over the members of `family` in `P_k`.
fn normalized_in(family: DiagramFamily, k: usize, g: &mut rand_chacha::ChaCha8Rng) -> AlgebraElement {
    let mut terms = Vec::new();
    for p in diagrams(k).iter().filter(|p| family_contains(family, p).expect("diagram")) {
        if g.gen_bool(0.7) {
            terms.push((p.clone(), LaurentScalar::monomial(small_rational(g), -twist(p))));
        }
    }
    AlgebraElement::from_terms(k, terms).expect("terms in P_k")
}

pub fn semigroup(ctx: &Context) -> CliResult<Vec<Check>> {
    let k = ctx.size(Suite::Semigroup, 2, 1, 2)?;
    let (seed, order) = (ctx.seed, ctx.t_order);
    let mut taylor = Check::new(Suite::Semigroup, format!("finite-N Taylor coefficients converge to the limit ones, k = {k}, order {order}"));
    for part in 0..4u64 {
        taylor = taylor.task(move || {
            let mut g = rng(seed, 0x5e + part);
            for round in 0..5 {
                let (h, e0) = (convergent(k, &mut g), convergent(k, &mut g));
                let finite = semigroup_taylor(&h, &e0, order, SemigroupMode::FiniteN).map_err(|x| x.to_string())?;
                let limit = semigroup_taylor(&h, &e0, order, SemigroupMode::Limit).map_err(|x| x.to_string())?;
                ensure!(finite[0] == e0, "order 0 coefficient, round {round}");
                for (j, (c, l)) in finite.iter().zip(&limit).enumerate() {
                    ensure!(m_n_inverse(c).limit().map_err(|x| x.to_string())? == *l, "t^{j} coefficient for H = {h}, E0 = {e0}");
                }
            }
            Ok(5)
        });
    }
    let generators = Check::new(
        Suite::Semigroup,
        format!("generators in ℂ[𝔖_k] or ℂ[B_k] with convergent moments give convergent P_k moments, k = {k}, order {order}"),
    )
    .task(move || {
        let s = space(k);
        let mut g = rng(seed, 0x5f);
        let mut cases = 0;
        for family in [DiagramFamily::Permutations, DiagramFamily::Brauer] {
            let members: Vec<_> = diagrams(k).iter().filter(|p| family_contains(family, p).expect("diagram")).cloned().collect();
            for _ in 0..5 {
                let h = normalized_in(family, k, &mut g);
                for p in &members {
                    let v = moment(&h, p).map_err(|x| x.to_string())?;
                    ensure!(v.limit().is_some(), "{family:?} moment of the generator {h} at {p:?} diverges");
                }
                let e0 = normalized_in(family, k, &mut g);
                for (j, c) in semigroup_taylor(&h, &e0, order, SemigroupMode::FiniteN).map_err(|x| x.to_string())?.iter().enumerate() {
                    let m: Result<LinearForm, _> = limit_form(s, c, LimitKind::Moment);
                    ensure!(m.is_ok(), "t^{j} coefficient for H = {h} has divergent moments");
                }
                cases += 1;
            }
        }
        Ok(cases)
    });
    Ok(vec![taylor, generators])
}

pub fn fluctuations(ctx: &Context) -> CliResult<Vec<Check>> {
    let k = ctx.size(Suite::Fluctuations, 2, 1, 2)?;
    let (seed, order) = (ctx.seed, ctx.n);
    let basis_products = Check::new(Suite::Fluctuations, format!("order 0 recovers ._N and limits are termwise, k = {k}, n ≤ {order}")).task(move || {
        let ps = diagrams(k);
        let mut cases = 0;
        for p in ps.iter() {
            for q in ps.iter() {
                let lhs = fluct_product(&FluctElement::basis(p, 0, 0).expect("diagram"), &FluctElement::basis(q, 0, 0).expect("diagram"))
                    .map_err(|x| x.to_string())?;
                let plain = deformed_product(&basis(p), &basis(q)).map_err(|x| x.to_string())?;
                let embedded = FluctElement::from_terms(k, 0, plain.terms().map(|(r, c)| ((r.clone(), 0), c.clone()))).map_err(|x| x.to_string())?;
                ensure!(lhs == embedded, "order 0 product of {p:?} and {q:?}");
                for n in 1..=order {
                    for i in 0..=n {
                        for j in 0..=n {
                            let a = FluctElement::basis(p, i, n).expect("diagram");
                            let b = FluctElement::basis(q, j, n).expect("diagram");
                            let termwise = fluct_product(&a, &b).and_then(|x| x.limit()).map_err(|x| x.to_string())?;
                            ensure!(fluct_limit_product(&a, &b).map_err(|x| x.to_string())? == termwise, "limit product at {p:?}/X^{i}, {q:?}/X^{j}, n = {n}");
                            cases += 1;
                        }
                    }
                }
            }
        }
        Ok(cases)
    });
    let formulas = Check::new(Suite::Fluctuations, format!("evaluation and the fluctuation product formulas, k = {k}, n ≤ {order}")).task(move || {
        let s = space(k);
        let mut g = rng(seed, 0xf1);
        let mut cases = 0;
        for _ in 0..10 {
            let (e, f) = (convergent(k, &mut g), convergent(k, &mut g));
            let ef = algebra_product(&e, &f).map_err(|x| x.to_string())?;
            for n in 0..=order {
                let (a, b) = (lift(&e, n).map_err(|x| x.to_string())?, lift(&f, n).map_err(|x| x.to_string())?);
                ensure!(evaluate(&a) == e, "lift then evaluate does not return {e}");
                ensure!(evaluate(&fluct_product(&a, &b).map_err(|x| x.to_string())?) == ef, "evaluation is not multiplicative, n = {n}");
                let ke = fluct_cumulants(s, &a).map_err(|x| x.to_string())?;
                let kf = fluct_cumulants(s, &b).map_err(|x| x.to_string())?;
                let kef = fluct_cumulants(s, &lift(&ef, n).map_err(|x| x.to_string())?).map_err(|x| x.to_string())?;
                ensure!(fluct_boxtimes(s, &ke, &kf) == kef, "cumulant product formula, n = {n}");
                let me = fluct_moments(s, &e, n).map_err(|x| x.to_string())?;
                let mf = fluct_moments(s, &f, n).map_err(|x| x.to_string())?;
                let mef = fluct_moments(s, &ef, n).map_err(|x| x.to_string())?;
                ensure!(fluct_moment_product(s, MomentSide::Right, &ke, &mf) == mef, "right moment formula, n = {n}");
                ensure!(fluct_moment_product(s, MomentSide::Left, &me, &kf) == mef, "left moment formula, n = {n}");
                cases += 1;
            }
        }
        Ok(cases)
    });
    Ok(vec![basis_products, formulas])
}
