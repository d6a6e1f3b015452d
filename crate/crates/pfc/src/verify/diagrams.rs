use pfc_core::diagram::{compose, exclusive_coeffs, family_contains, long_cycle, pair_trace_exponent, permutation, trace_exponent, DiagramFamily};
use pfc_core::matrix::Matrix;
use pfc_core::partition::Partition;
use pfc_core::rep::{rho, rho_exclusive};

use super::support::{all_permutations, cycle_partition, diagrams, ensure, falling, labels, leq, noncrossing as is_noncrossing, partitions, sign, t};
use super::{Check, Context};
use crate::cli::Suite;
use crate::error::CliResult;

const COLOURS: std::ops::RangeInclusive<usize> = 2..=4;

pub fn trace(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Trace, 2, 1, 2)?;
    let mut pairs = Check::new(Suite::Trace, format!("Tr ρ_N(p) ρ_N(ᵗq) = N^nc(p∨q) for k ≤ {top}, N = 2..4"));
    let mut loops = Check::new(Suite::Trace, format!("ρ_N(p) ρ_N(q) = N^loops ρ_N(p∘q) for k ≤ {top}"));
    for k in 1..=top {
        for n in COLOURS {
            pairs = pairs.task(move || {
                let ps = diagrams(k);
                let mut cases = 0;
                for p in ps.iter() {
                    let m = rho(p, n).map_err(|e| e.to_string())?;
                    let e = trace_exponent(p).map_err(|e| e.to_string())?;
                    ensure!(m.trace() == (n as i64).pow(e as u32), "Tr ρ_{n}({p:?}) is not N^{e}");
                    for q in ps.iter() {
                        let e = pair_trace_exponent(p, q).map_err(|e| e.to_string())?;
                        let tr = m.mul(&rho(&t(q), n).map_err(|e| e.to_string())?).trace();
                        ensure!(tr == (n as i64).pow(e as u32), "trace for {p:?}, {q:?} at N = {n} is {tr}");
                        ensure!(e == p.join(q).map_err(|e| e.to_string())?.nc(), "pair exponent for {p:?}, {q:?}");
                        cases += 1;
                    }
                }
                Ok(cases)
            });
            loops = loops.task(move || {
                let ps = diagrams(k);
                let mut cases = 0;
                for p in ps.iter() {
                    for q in ps.iter() {
                        let c = compose(p, q).map_err(|e| e.to_string())?;
                        let lhs = rho(p, n).map_err(|e| e.to_string())?.mul(&rho(q, n).map_err(|e| e.to_string())?);
                        let scale = (n as i64).pow(c.loops as u32);
                        let rhs = rho(&c.product, n).map_err(|e| e.to_string())?.map(|x| x * scale);
                        ensure!(lhs == rhs, "representation is not multiplicative at {p:?}, {q:?}, N = {n}");
                        cases += 1;
                    }
                }
                Ok(cases)
            });
        }
    }
    Ok(vec![pairs, loops])
}

pub fn exclusive(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Exclusive, 2, 1, 2)?;
    let mut traces = Check::new(Suite::Exclusive, format!("exclusive traces are falling factorials for k ≤ {top}"));
    let mut basis = Check::new(Suite::Exclusive, format!("ρ̃_N(p) = ρ_N(p^c) for k ≤ {top}"));
    for k in 1..=top {
        for n in COLOURS {
            traces = traces.task(move || {
                let ps = diagrams(k);
                let mut cases = 0;
                for p in ps.iter() {
                    let m = rho(p, n).map_err(|e| e.to_string())?;
                    for q in ps.iter() {
                        let got = m.mul(&rho_exclusive(&t(q), n).map_err(|e| e.to_string())?).trace();
                        let want = if p.is_finer(q).map_err(|e| e.to_string())? { falling(n as i64, q.nc()) } else { 0 };
                        ensure!(got == want, "exclusive trace for {p:?}, {q:?} at N = {n} is {got}, expected {want}");
                        cases += 1;
                    }
                }
                Ok(cases)
            });
            basis = basis.task(move || {
                let ps = diagrams(k);
                let dim = n.pow(k as u32);
                for p in ps.iter() {
                    let mut sum = Matrix::<i64>::zeros(dim, dim);
                    for (q, c) in exclusive_coeffs(p) {
                        sum = sum.add(&rho(&q, n).map_err(|e| e.to_string())?.map(|x| x * c));
                    }
                    ensure!(sum == rho_exclusive(p, n).map_err(|e| e.to_string())?, "expansion of {p:?}^c at N = {n}");
                }
                Ok(ps.len() as u64)
            });
        }
    }
    Ok(vec![traces, basis])
}

fn catalan(k: usize) -> usize {
    (0..k).fold(1, |c, i| c * 2 * (2 * i + 1) / (i + 2))
}

pub fn noncrossing(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Noncrossing, 4, 1, 5)?;
    let mut count = Check::new(Suite::Noncrossing, format!("|[id_k, (1…k)] ∩ 𝔖_k| is Catalan for k ≤ {top}"));
    let mut iso = Check::new(Suite::Noncrossing, format!("cycles give an order isomorphism onto NC_k for k ≤ {}", top.min(4)));
    for k in 1..=top {
        count = count.task(move || {
            let cyc = long_cycle(k);
            let n = all_permutations(k).iter().filter(|im| leq(&permutation(im).expect("permutation"), &cyc)).count();
            ensure!(n == catalan(k), "found {n} permutations below the long cycle for k = {k}");
            Ok(1)
        });
        if k <= 4 {
            iso = iso.task(move || {
                let cyc = long_cycle(k);
                let below: Vec<Partition> = all_permutations(k)
                    .iter()
                    .map(|im| permutation(im).expect("permutation"))
                    .filter(|s| leq(s, &cyc))
                    .collect();
                let images: Vec<Partition> = below.iter().map(cycle_partition).collect();
                let mut sorted = images.clone();
                sorted.sort();
                sorted.dedup();
                let nc: Vec<Partition> = partitions(k).into_iter().filter(|p| is_noncrossing(&labels(p))).collect();
                ensure!(sorted == nc && sorted.len() == images.len(), "cycle map is not a bijection onto NC_{k}");
                for (a, pa) in below.iter().zip(&images) {
                    for (b, pb) in below.iter().zip(&images) {
                        ensure!(leq(a, b) == pa.is_finer(pb).expect("same size"), "order differs at {a:?}, {b:?}");
                    }
                }
                Ok((below.len() * below.len()) as u64)
            });
        }
    }
    Ok(vec![count, iso])
}

pub fn ident(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Ident, 4, 1, 4)?;
    let mut check = Check::new(Suite::Ident, format!("D_k is isomorphic to the partition lattice for k ≤ {top}"));
    for k in 1..=top {
        check = check.task(move || {
            let cols: Vec<usize> = (0..k).collect();
            let d: Vec<Partition> = diagrams(k)
                .iter()
                .filter(|p| family_contains(DiagramFamily::CoarserThanId, p).expect("diagram"))
                .cloned()
                .collect();
            let images: Vec<Partition> = d.iter().map(|p| p.restrict(&cols)).collect();
            let mut sorted = images.clone();
            sorted.sort();
            sorted.dedup();
            ensure!(sorted == partitions(k) && sorted.len() == d.len(), "restriction is not a bijection for k = {k}");
            for (p, rp) in d.iter().zip(&images) {
                for (q, rq) in d.iter().zip(&images) {
                    ensure!(leq(q, p) == rq.is_finer(rp).expect("same size"), "order differs at {q:?}, {p:?}");
                }
            }
            Ok((d.len() * d.len()) as u64)
        });
    }
    Ok(vec![check])
}

pub fn mandelstam(ctx: &Context) -> CliResult<Vec<Check>> {
    let top = ctx.size(Suite::Mandelstam, 3, 2, 4)?;
    let mut anti = Check::new(Suite::Mandelstam, format!("Σ_σ ε(σ) ρ_(k−1)(σ) = 0 for k = 2..{top}"));
    for k in 2..=top {
        anti = anti.task(move || {
            let n = k - 1;
            let dim = n.pow(k as u32);
            let mut sum = Matrix::<i64>::zeros(dim, dim);
            for images in all_permutations(k) {
                let s = sign(&images);
                let m = rho(&permutation(&images).expect("permutation"), n).map_err(|e| e.to_string())?;
                sum = sum.add(&m.map(|x| x * s));
            }
            ensure!(sum.is_zero(), "the antisymmetrizer survives for k = {k}");
            Ok(1)
        });
    }
    let mut inj = Check::new(Suite::Mandelstam, "ρ_2k is injective on P_k for k ≤ 2");
    for k in 1..=2usize {
        inj = inj.task(move || {
            let ps = diagrams(k);
            let rows: Vec<Vec<i64>> = ps
                .iter()
                .map(|p| {
                    let m = rho(p, 2 * k).expect("small");
                    (0..m.rows()).flat_map(|i| m.row(i).to_vec()).collect()
                })
                .collect();
            let stacked = Matrix::from_fn(rows.len(), rows[0].len(), |i, j| rows[i][j]);
            let rank = stacked.to_rational().rank();
            ensure!(rank == ps.len(), "rank {rank} < {} for k = {k}", ps.len());
            Ok(ps.len() as u64)
        });
    }
    Ok(vec![anti, inj])
}
