use pfc_core::diagram::{family_contains, identity, long_cycle, parse_diagram, tau, tensor, DiagramFamily};
use pfc_core::kreweras::kreweras_set;

use super::support::{chunks, classical_kreweras, comp, cycle_partition, df, diagrams, ensure, eta_i, leq, t};
use super::{Check, Context};
use crate::cli::Suite;
use crate::error::CliResult;

pub fn eta(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Eta, 3, 1, 3)?;
    let mut nonneg = Check::new(Suite::Eta, format!("η(p, q) ≥ 0 on P_k × P_k for k ≤ {top}"));
    for k in 0..=top {
        let n = diagrams(k).len();
        for r in chunks(n, 16) {
            nonneg = nonneg.task(move || {
                let ps = diagrams(k);
                let mut cases = 0;
                for p in &ps[r.clone()] {
                    for q in ps.iter() {
                        let e = eta_i(p, q);
                        ensure!(e >= 0, "η({p:?}, {q:?}) = {e}");
                        cases += 1;
                    }
                }
                Ok(cases)
            });
        }
    }
    let zero = Check::new(Suite::Eta, "q ∈ K_(p∘q)(p) exactly when η(p, q) = 0, k ≤ 2").task(|| {
        let mut cases = 0;
        for k in 0..=2 {
            let ps = diagrams(k);
            for p in ps.iter() {
                for q in ps.iter() {
                    let inside = kreweras_set(&comp(p, q), p).map_err(|e| e.to_string())?.complements.contains(q);
                    ensure!(inside == (eta_i(p, q) == 0), "membership of {q:?} for prefix {p:?}");
                    cases += 1;
                }
            }
        }
        Ok(cases)
    });
    let example = Check::new(Suite::Eta, "complements of 1 2 1' 2' inside 1' 2' | 1 | 2").task(|| {
        let p = parse_diagram("1' 2' | 1 | 2", None).map_err(|e| e.to_string())?;
        let q = parse_diagram("1 2 1' 2'", None).map_err(|e| e.to_string())?;
        let mut want = vec![
            parse_diagram("1 | 2 | 1' | 2'", None).map_err(|e| e.to_string())?,
            parse_diagram("1 | 2 | 1' 2'", None).map_err(|e| e.to_string())?,
        ];
        want.sort();
        let got = kreweras_set(&p, &q).map_err(|e| e.to_string())?.complements;
        ensure!(got == want, "got {got:?}");
        Ok(1)
    });
    let classical = Check::new(Suite::Eta, "on noncrossing permutations K is the classical complement, k ≤ 4").task(|| {
        let mut cases = 0;
        for k in 1..=4 {
            let cyc = long_cycle(k);
            for s in diagrams(k)
                .iter()
                .filter(|p| family_contains(DiagramFamily::Permutations, p).expect("diagram") && leq(p, &cyc))
            {
                let set = kreweras_set(&cyc, s).map_err(|e| e.to_string())?;
                ensure!(set.complements.len() == 1, "{} complements of {s:?}", set.complements.len());
                ensure!(
                    cycle_partition(&set.complements[0]) == classical_kreweras(&cycle_partition(s)),
                    "complement of {s:?} is not classical"
                );
                cases += 1;
            }
        }
        Ok(cases)
    });
    Ok(vec![nonneg, zero, example, classical])
}

/// Runs `f(p0, p1, p2)` over `P_k³`, split by `p0`.
fn triples(suite: Suite, label: String, k: usize, f: fn(usize, &[pfc_core::Partition; 3]) -> Result<(), String>) -> Check {
    let mut check = Check::new(suite, label);
    for r in chunks(diagrams(k).len(), 15) {
        check = check.task(move || {
            let ps = diagrams(k);
            let mut cases = 0;
            for p0 in &ps[r.clone()] {
                for p1 in ps.iter() {
                    for p2 in ps.iter() {
                        f(k, &[p0.clone(), p1.clone(), p2.clone()])?;
                        cases += 1;
                    }
                }
            }
            Ok(cases)
        });
    }
    check
}

pub fn caract(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::CaractK, 2, 1, 2)?;
    let checks = (1..=top)
        .map(|k| {
            triples(Suite::CaractK, format!("four characterisations of p1, p2 below p0 agree, k = {k}"), k, |k, [p0, p1, p2]| {
                let prod = comp(p1, p2);
                let in_k = kreweras_set(&prod, p1).map_err(|e| e.to_string())?.complements.contains(p2);
                let c1 = leq(&prod, p0) && in_k;
                let c2 = leq(p1, p0) && leq(p2, &comp(&t(p1), p0));
                let c3 = leq(p1, &comp(p0, &t(p2))) && leq(p2, p0);
                let base = comp(&tensor(p0, &identity(k)).map_err(|e| e.to_string())?, &tau(k));
                let c4 = leq(&tensor(p1, p2).map_err(|e| e.to_string())?, &base);
                ensure!(c1 == c2 && c2 == c3 && c3 == c4, "at {p0:?}, {p1:?}, {p2:?}: {c1} {c2} {c3} {c4}");
                Ok(())
            })
        })
        .collect();
    Ok(checks)
}

pub fn defects(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Dautresvaleurs, 2, 1, 2)?;
    let checks = (1..=top)
        .map(|k| {
            triples(Suite::Dautresvaleurs, format!("four expressions of the defect agree, k = {k}"), k, |k, [p0, p1, p2]| {
                let a = df(&comp(p1, p2), p0) + eta_i(p1, p2);
                let b = df(p1, p0) + df(p2, &comp(&t(p1), p0));
                let c = df(p1, &comp(p0, &t(p2))) + df(p2, p0);
                let base = comp(&tensor(p0, &identity(k)).map_err(|e| e.to_string())?, &tau(k));
                let d = df(&tensor(p1, p2).map_err(|e| e.to_string())?, &base);
                ensure!(a == b && b == c && c == d, "at {p0:?}, {p1:?}, {p2:?}: {a} {b} {c} {d}");
                Ok(())
            })
        })
        .collect();
    Ok(checks)
}
