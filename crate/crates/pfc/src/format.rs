//! JSON shapes for forms and elements, plus CSV and DOT writers.

use std::fmt::Write as _;

use pfc_core::asymptotics::fluct::FluctElement;
use pfc_core::asymptotics::AlgebraElement;
use pfc_core::diagram::{parse_diagram, show};
use pfc_core::forms::{LinearForm, Space};
use pfc_core::laurent::LaurentScalar;
use pfc_core::matrix::Matrix;
use pfc_core::partition::Partition;
use pfc_core::scalar::Rational;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct FormEntry {
    pub partition: String,
    pub value: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct LinearFormJson {
    pub degree_bound: usize,
    pub entries: Vec<FormEntry>,
}

/// One monomial `num/den · N^exp`; numerator and denominator are decimal strings.
#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct Monomial {
    pub exp: i32,
    pub num: String,
    pub den: String,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ElementTerm {
    pub partition: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub i: Option<usize>,
    pub laurent: Vec<Monomial>,
}

#[derive(Serialize, Deserialize, Debug, PartialEq)]
pub struct ElementJson {
    pub k: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    pub terms: Vec<ElementTerm>,
}

fn parse_rational(s: &str) -> CliResult<Rational> {
    s.trim()
        .parse()
        .map_err(|_| CliError::Usage(format!("not a rational number: {s:?}")))
}

pub fn laurent_to_json(c: &LaurentScalar) -> Vec<Monomial> {
    c.terms()
        .map(|(exp, r)| Monomial {
            exp,
            num: r.numer().to_string(),
            den: r.denom().to_string(),
        })
        .collect()
}

fn laurent_from_json(ms: &[Monomial]) -> CliResult<LaurentScalar> {
    let mut out = LaurentScalar::constant(Rational::from_integer(0.into()));
    for m in ms {
        let num = parse_rational(&m.num)?;
        let den = parse_rational(&m.den)?;
        if num_traits::Zero::is_zero(&den) {
            return Err(CliError::Usage("zero denominator".into()));
        }
        out = out + LaurentScalar::monomial(num / den, m.exp);
    }
    Ok(out)
}

pub fn form_to_json(space: &Space, phi: &LinearForm) -> LinearFormJson {
    let mut entries = Vec::new();
    for k in 0..=phi.degree_bound() {
        for (i, p) in space.level(k).parts().iter().enumerate() {
            entries.push(FormEntry {
                partition: show(p),
                value: phi.at(k, i).to_string(),
            });
        }
    }
    LinearFormJson {
        degree_bound: phi.degree_bound(),
        entries,
    }
}

/// Reads a form back; entries that are not listed stay zero.
pub fn form_from_json(space: &Space, json: &LinearFormJson) -> CliResult<LinearForm> {
    if json.degree_bound != space.max_k() {
        return Err(CliError::Mismatch(format!(
            "form has degree bound {}, expected {}",
            json.degree_bound,
            space.max_k()
        )));
    }
    let mut phi = LinearForm::zero(space);
    for e in &json.entries {
        let p = parse_diagram(&e.partition, None)?;
        let (k, i) = space.locate(&p)?;
        phi.set(k, i, parse_rational(&e.value)?);
    }
    Ok(phi)
}

pub fn element_to_json(e: &AlgebraElement) -> ElementJson {
    ElementJson {
        k: e.k(),
        n: None,
        terms: e
            .terms()
            .map(|(p, c)| ElementTerm {
                partition: show(p),
                i: None,
                laurent: laurent_to_json(c),
            })
            .collect(),
    }
}

pub fn element_from_json(json: &ElementJson) -> CliResult<AlgebraElement> {
    let mut terms = Vec::new();
    for t in &json.terms {
        if t.i.is_some() {
            return Err(CliError::Usage("algebra elements carry no `i` field".into()));
        }
        terms.push((parse_diagram(&t.partition, Some(json.k))?, laurent_from_json(&t.laurent)?));
    }
    Ok(AlgebraElement::from_terms(json.k, terms)?)
}

pub fn fluct_to_json(e: &FluctElement) -> ElementJson {
    ElementJson {
        k: e.k(),
        n: Some(e.order()),
        terms: e
            .terms()
            .map(|((p, i), c)| ElementTerm {
                partition: show(p),
                i: Some(*i),
                laurent: laurent_to_json(c),
            })
            .collect(),
    }
}

pub fn fluct_from_json(json: &ElementJson) -> CliResult<FluctElement> {
    let n = json.n.ok_or_else(|| CliError::Usage("fluctuation elements need an `n` field".into()))?;
    let mut terms = Vec::new();
    for t in &json.terms {
        let i = t.i.ok_or_else(|| CliError::Usage("fluctuation terms need an `i` field".into()))?;
        terms.push(((parse_diagram(&t.partition, Some(json.k))?, i), laurent_from_json(&t.laurent)?));
    }
    Ok(FluctElement::from_terms(json.k, n, terms)?)
}

pub fn matrix_csv<T: std::fmt::Display>(m: &Matrix<T>) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        out.push_str(&row.join(","));
        out.push('\n');
    }
    out
}

pub fn matrix_text<T: std::fmt::Display>(basis: &[Partition], m: &Matrix<T>) -> String {
    let mut out = String::new();
    for (i, p) in basis.iter().enumerate() {
        let row: Vec<String> = m.row(i).iter().map(|v| v.to_string()).collect();
        let _ = writeln!(out, "{:<24} {}", show(p), row.join(" "));
    }
    out
}

pub fn hasse_dot(basis: &[Partition], edges: &[(usize, usize)]) -> String {
    let mut out = String::from("digraph hasse {\n  rankdir=BT;\n");
    for (i, p) in basis.iter().enumerate() {
        let _ = writeln!(out, "  n{i} [label=\"{}\"];", show(p).replace('"', "\\\""));
    }
    for (lo, hi) in edges {
        let _ = writeln!(out, "  n{lo} -> n{hi};");
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use pfc_core::diagram::identity;

    #[test]
    fn element_round_trip() {
        let p = parse_diagram("1 2 | 1' 2'", Some(2)).unwrap();
        let c = LaurentScalar::monomial(Rational::new(3.into(), 4.into()), -1) + LaurentScalar::n_pow(2);
        let e = AlgebraElement::from_terms(2, [(p, c), (identity(2), LaurentScalar::n_pow(0))]).unwrap();
        let text = serde_json::to_string(&element_to_json(&e)).unwrap();
        let back: ElementJson = serde_json::from_str(&text).unwrap();
        assert_eq!(element_from_json(&back).unwrap(), e);
    }

    #[test]
    fn form_round_trip() {
        let s = Space::new(1).unwrap();
        let phi = LinearForm::from_fn(&s, |k, i| Rational::new((k as i64 + 2 * i as i64).into(), 3.into()));
        let json = form_to_json(&s, &phi);
        assert_eq!(json.entries.len(), 3);
        assert_eq!(json.entries[0].partition, "∅");
        assert_eq!(form_from_json(&s, &json).unwrap(), phi);
    }

    #[test]
    fn dot_lists_every_node() {
        let basis = vec![Partition::singletons(2), identity(1)];
        let dot = hasse_dot(&basis, &[(0, 1)]);
        assert!(dot.contains("n1 [label=\"1 1'\"]"));
        assert!(dot.contains("n0 -> n1;"));
    }
}
