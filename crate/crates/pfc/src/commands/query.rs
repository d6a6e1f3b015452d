use std::io::Write;

use pfc_core::asymptotics::{algebra_product, cumulant, moment, AlgebraElement};
use pfc_core::diagram::{compose, pair_trace_exponent, show, trace_exponent};
use pfc_core::geometry::{defect, distance, in_order, mobius};
use pfc_core::kreweras::{eta, kreweras_set};
use serde_json::{json, Value};

use super::{base_or_identity, operand, read_json};
use crate::cli::{Format, QueryArgs, QueryOp, Which};
use crate::error::{CliError, CliResult};
use crate::format::{element_from_json, element_to_json, laurent_to_json, ElementJson};

pub fn run(args: &QueryArgs, format: Format, out: &mut impl Write) -> CliResult<()> {
    let (text, doc) = evaluate(args)?;
    match format {
        Format::Text => write!(out, "{text}")?,
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?,
        Format::Csv | Format::Dot => return Err(CliError::Usage("query prints text or JSON".into())),
    }
    Ok(())
}

fn line(v: impl ToString) -> (String, Value) {
    let s = v.to_string();
    (format!("{s}\n"), json!({ "value": s }))
}

fn evaluate(args: &QueryArgs) -> CliResult<(String, Value)> {
    let p_text = args.p.as_deref();
    let q_text = args.q.as_deref();
    if matches!(args.op, QueryOp::Moment | QueryOp::Cumulant) {
        let e = match &args.element {
            Some(path) => element_from_json(&read_json::<ElementJson>(path)?)?,
            None => AlgebraElement::basis(&operand("p", p_text, args.k)?)?,
        };
        let q = operand("q", q_text, Some(args.k.unwrap_or(e.k())))?;
        let v = match args.op {
            QueryOp::Moment => moment(&e, &q)?,
            _ => cumulant(&e, &q)?,
        };
        let text = v.to_string();
        return Ok((format!("{text}\n"), json!({ "value": text, "laurent": laurent_to_json(&v) })));
    }
    let p = operand("p", p_text, args.k)?;
    let k = p.size() / 2;
    if args.op == QueryOp::Trace {
        let e = match q_text {
            Some(t) => pair_trace_exponent(&p, &operand("q", Some(t), Some(k))?)?,
            None => trace_exponent(&p)?,
        };
        return Ok(line(format!("N^{e}")));
    }
    let q = operand("q", q_text, Some(k))?;
    let base = || base_or_identity(args.base.as_deref(), k);
    Ok(match args.op {
        QueryOp::Distance => line(distance(&p, &q)?),
        QueryOp::Defect => line(defect(&base()?, &q, &p)?),
        QueryOp::Order => {
            if args.which == Which::Ginv {
                return Err(CliError::Usage("--which Ginv is not an order".into()));
            }
            line(in_order(args.which.kind(), &base()?, &q, &p)?)
        }
        QueryOp::Mobius => line(mobius(args.which.kind(), &base()?, &p, &q)?),
        QueryOp::Eta => line(eta(&p, &q)?),
        QueryOp::Kreweras => {
            let set = kreweras_set(&p, &q)?;
            let shown: Vec<String> = set.complements.iter().map(show).collect();
            let mut text = String::new();
            for s in &shown {
                text.push_str(s);
                text.push('\n');
            }
            (text, json!({ "complements": shown }))
        }
        QueryOp::Compose => {
            let c = compose(&p, &q)?;
            let product = show(&c.product);
            let element = algebra_product(&AlgebraElement::basis(&p)?, &AlgebraElement::basis(&q)?)?;
            (
                format!("product: {product}\nloops: {}\n", c.loops),
                json!({ "product": product, "loops": c.loops, "element": element_to_json(&element) }),
            )
        }
        QueryOp::Trace | QueryOp::Moment | QueryOp::Cumulant => unreachable!("handled above"),
    })
}
