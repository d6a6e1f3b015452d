//! Verification suites. Each suite contributes checks; each check is split
//! into independent tasks that run on a worker pool. Results are gathered in
//! task order, so the report does not depend on scheduling.

mod algebra;
mod diagrams;
mod geometry;
mod kreweras;
mod support;
mod transforms;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};

use clap::ValueEnum;
use rayon::prelude::*;
use serde::Serialize;

use crate::cli::{Format, Suite, VerifyArgs};
use crate::config::Settings;
use crate::error::{CliError, CliResult};

/// Outcome of one task: the number of cases checked, or a counterexample.
pub type TaskResult = Result<u64, String>;
pub type Task = Box<dyn Fn() -> TaskResult + Send + Sync>;

pub struct Check {
    pub suite: Suite,
    pub label: String,
    pub tasks: Vec<Task>,
}

impl Check {
    pub fn new(suite: Suite, label: impl Into<String>) -> Self {
        Check {
            suite,
            label: label.into(),
            tasks: Vec::new(),
        }
    }

    pub fn task(mut self, f: impl Fn() -> TaskResult + Send + Sync + 'static) -> Self {
        self.tasks.push(Box::new(f));
        self
    }
}

/// Parameters shared by every suite.
#[derive(Clone, Debug)]
pub struct Context {
    pub k: Option<usize>,
    /// Clamp an oversized `--k` instead of rejecting it (used by `all`).
    pub clamp: bool,
    pub seed: u64,
    pub t_order: usize,
    pub n: usize,
    pub max_ground: usize,
}

impl Context {
    /// The size bound for a suite: `--k` if given, else the default, within `lo..=hi`.
    pub fn size(&self, suite: Suite, default: usize, lo: usize, hi: usize) -> CliResult<usize> {
        let k = self.k.unwrap_or(default);
        let k = if self.clamp { k.clamp(lo, hi) } else { k };
        if k < lo || k > hi {
            return Err(CliError::Bounds(format!(
                "suite {} accepts --k in {lo}..={hi}, got {k}",
                suite_name(suite)
            )));
        }
        if 2 * k > self.max_ground {
            return Err(CliError::Bounds(format!(
                "--k {k} needs ground size {} above the limit {}",
                2 * k,
                self.max_ground
            )));
        }
        Ok(k)
    }
}

pub fn suite_name(s: Suite) -> String {
    s.to_possible_value().expect("named").get_name().to_string()
}

fn build(suite: Suite, ctx: &Context) -> CliResult<Vec<Check>> {
    Ok(match suite {
        Suite::Metric => geometry::metric(ctx)?,
        Suite::Gcs => geometry::gcs(ctx)?,
        Suite::Mobius => geometry::mobius(ctx)?,
        Suite::Hasse => geometry::hasse(ctx)?,
        Suite::Trace => diagrams::trace(ctx)?,
        Suite::Exclusive => diagrams::exclusive(ctx)?,
        Suite::Noncrossing => diagrams::noncrossing(ctx)?,
        Suite::Ident => diagrams::ident(ctx)?,
        Suite::Mandelstam => diagrams::mandelstam(ctx)?,
        Suite::Eta => kreweras::eta(ctx)?,
        Suite::CaractK => kreweras::caract(ctx)?,
        Suite::Dautresvaleurs => kreweras::defects(ctx)?,
        Suite::LimitAssoc => algebra::limit_assoc(ctx)?,
        Suite::Convergence => algebra::convergence(ctx)?,
        Suite::Semigroup => algebra::semigroup(ctx)?,
        Suite::Fluctuations => algebra::fluctuations(ctx)?,
        Suite::Transforms => transforms::transforms(ctx)?,
        Suite::Characters => transforms::characters(ctx)?,
        Suite::All => {
            let ctx = Context { clamp: true, ..ctx.clone() };
            let mut all = Vec::new();
            for s in Suite::value_variants().iter().filter(|s| **s != Suite::All) {
                all.extend(build(*s, &ctx)?);
            }
            all
        }
    })
}

#[derive(Serialize)]
struct Report {
    suite: String,
    check: String,
    status: &'static str,
    cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    counterexample: Option<String>,
}

fn run_task(t: &Task) -> TaskResult {
    catch_unwind(AssertUnwindSafe(t)).unwrap_or_else(|e| {
        let msg = e
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| e.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("internal error: {msg}"))
    })
}

pub fn run(args: &VerifyArgs, settings: &Settings, format: Format, out: &mut impl Write) -> CliResult<()> {
    let ctx = Context {
        k: args.k,
        clamp: false,
        seed: settings.seed,
        t_order: settings.t_order,
        n: settings.n,
        max_ground: settings.max_ground,
    };
    let checks = build(args.suite, &ctx)?;
    let flat: Vec<(usize, &Task)> = checks
        .iter()
        .enumerate()
        .flat_map(|(i, c)| c.tasks.iter().map(move |t| (i, t)))
        .collect();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(settings.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", settings.jobs)))?;
    let results: Vec<(usize, TaskResult)> = pool.install(|| flat.par_iter().map(|(i, t)| (*i, run_task(t))).collect());

    let mut reports: Vec<Report> = checks
        .iter()
        .map(|c| Report {
            suite: suite_name(c.suite),
            check: c.label.clone(),
            status: "PASS",
            cases: 0,
            counterexample: None,
        })
        .collect();
    for (i, r) in results {
        let rep = &mut reports[i];
        match r {
            Ok(n) => rep.cases += n,
            Err(why) => {
                if rep.counterexample.is_none() {
                    rep.counterexample = Some(why);
                }
                rep.status = "FAIL";
            }
        }
    }
    let failed = reports.iter().filter(|r| r.status == "FAIL").count();
    match format {
        Format::Json => {
            let doc = serde_json::json!({
                "suite": suite_name(args.suite),
                "checks": reports,
                "passed": reports.len() - failed,
                "failed": failed,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Text | Format::Csv => {
            let csv = format == Format::Csv;
            if csv {
                writeln!(out, "status,suite,check,cases,counterexample")?;
            }
            for r in &reports {
                let why = r.counterexample.as_deref().unwrap_or("");
                if csv {
                    writeln!(out, "{},{},\"{}\",{},\"{}\"", r.status, r.suite, r.check, r.cases, why.replace('"', "'"))?;
                } else if r.status == "PASS" {
                    writeln!(out, "PASS  {:<15} {} ({} cases)", r.suite, r.check, r.cases)?;
                } else {
                    writeln!(out, "FAIL  {:<15} {}: {why}", r.suite, r.check)?;
                }
            }
            if !csv {
                writeln!(out, "{} passed, {failed} failed", reports.len() - failed)?;
            }
        }
        Format::Dot => return Err(CliError::Usage("verify reports as text, csv or json".into())),
    }
    if failed > 0 {
        return Err(CliError::Violation(failed));
    }
    Ok(())
}
