use std::io::Write;

use pfc_core::asymptotics::fluct::{evaluate, lift};
use pfc_core::asymptotics::{limit_form, AlgebraElement, LimitKind};
use pfc_core::diagram::{parse_diagram, show};
use pfc_core::forms::{Space, MAX_SPACE_K};
use pfc_core::geometry::{hasse_edges_bounded, order_matrix_bounded};
use pfc_core::partition::{enumerate_partitions_bounded, GroundSet};
use serde_json::json;

use super::{base_or_identity, read_json};
use crate::cli::{ExportArgs, ExportWhat, Format, LimitChoice, Which};
use crate::config::Settings;
use crate::error::{CliError, CliResult};
use crate::format::{
    element_from_json, element_to_json, fluct_from_json, fluct_to_json, form_from_json, form_to_json, hasse_dot,
    matrix_csv, matrix_text, ElementJson, LinearFormJson,
};

pub fn run(args: &ExportArgs, settings: &Settings, format: Option<Format>, out: &mut impl Write) -> CliResult<()> {
    match args.what {
        ExportWhat::Matrix => matrix(args, settings, format.unwrap_or(Format::Csv), out),
        ExportWhat::Hasse => hasse(args, settings, format.unwrap_or(Format::Dot), out),
        ExportWhat::Form => form(args, format.unwrap_or(Format::Json), out),
        ExportWhat::Element => element(args, format.unwrap_or(Format::Json), out),
    }
}

fn need_k(args: &ExportArgs) -> CliResult<usize> {
    args.k.ok_or_else(|| CliError::Usage("missing --k".into()))
}

fn matrix(args: &ExportArgs, settings: &Settings, format: Format, out: &mut impl Write) -> CliResult<()> {
    let k = need_k(args)?;
    settings.check_ground(2 * k)?;
    let base = base_or_identity(args.base.as_deref(), k)?;
    let m = order_matrix_bounded(args.which.kind(), &base, GroundSet::diagram(k), settings.max_ground)?;
    let cells: Vec<Vec<String>>;
    let text = if args.which == Which::Ginv {
        let inv = m.inverse();
        cells = (0..inv.rows()).map(|i| inv.row(i).iter().map(|v| v.to_string()).collect()).collect();
        match format {
            Format::Csv => matrix_csv(&inv),
            _ => matrix_text(&m.basis, &inv),
        }
    } else {
        cells = (0..m.entries.rows())
            .map(|i| m.entries.row(i).iter().map(|v| v.to_string()).collect())
            .collect();
        match format {
            Format::Csv => matrix_csv(&m.entries),
            _ => matrix_text(&m.basis, &m.entries),
        }
    };
    match format {
        Format::Csv | Format::Text => write!(out, "{text}")?,
        Format::Json => {
            let doc = json!({
                "which": format!("{:?}", args.which),
                "base": show(&base),
                "basis": m.basis.iter().map(show).collect::<Vec<_>>(),
                "entries": cells,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Dot => return Err(CliError::Usage("matrices export as csv, text or json".into())),
    }
    Ok(())
}

fn hasse(args: &ExportArgs, settings: &Settings, format: Format, out: &mut impl Write) -> CliResult<()> {
    let k = need_k(args)?;
    settings.check_ground(2 * k)?;
    if args.which == Which::Ginv {
        return Err(CliError::Usage("--which Ginv has no Hasse diagram".into()));
    }
    let base = base_or_identity(args.base.as_deref(), k)?;
    let ground = GroundSet::diagram(k);
    let basis = enumerate_partitions_bounded(ground, settings.max_ground)?;
    let edges = hasse_edges_bounded(args.which.kind(), &base, ground, settings.max_ground)?;
    match format {
        Format::Dot => write!(out, "{}", hasse_dot(&basis, &edges))?,
        Format::Text => {
            for (lo, hi) in &edges {
                writeln!(out, "{} -> {}", show(&basis[*lo]), show(&basis[*hi]))?;
            }
        }
        Format::Csv => {
            writeln!(out, "lower,upper")?;
            for (lo, hi) in &edges {
                writeln!(out, "\"{}\",\"{}\"", show(&basis[*lo]), show(&basis[*hi]))?;
            }
        }
        Format::Json => {
            let doc = json!({
                "base": show(&base),
                "nodes": basis.iter().map(show).collect::<Vec<_>>(),
                "edges": edges,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
    }
    Ok(())
}

fn space_for(k: usize) -> CliResult<Space> {
    if k > MAX_SPACE_K {
        return Err(CliError::Bounds(format!("forms are available for k ≤ {MAX_SPACE_K}")));
    }
    Ok(Space::new(k)?)
}

fn form(args: &ExportArgs, format: Format, out: &mut impl Write) -> CliResult<()> {
    let (space, phi) = if let Some(path) = &args.form {
        let json: LinearFormJson = read_json(path)?;
        let space = space_for(json.degree_bound)?;
        let phi = form_from_json(&space, &json)?;
        let phi = match args.transform {
            Some(t) => space.transform(t.transform(), &phi),
            None => phi,
        };
        (space, phi)
    } else {
        let e = match (&args.element, &args.p) {
            (Some(path), _) => element_from_json(&read_json::<ElementJson>(path)?)?,
            (None, Some(p)) => AlgebraElement::normalized(&parse_diagram(p, args.k)?)?,
            (None, None) => return Err(CliError::Usage("export form needs --p, --element or --form".into())),
        };
        let space = space_for(e.k())?;
        let which = match args.limit {
            LimitChoice::Moment => LimitKind::Moment,
            LimitChoice::Cumulant => LimitKind::Cumulant,
            LimitChoice::ExclusiveMoment => LimitKind::ExclusiveMoment,
            LimitChoice::ExclusiveCumulant => LimitKind::ExclusiveCumulant,
        };
        let phi = limit_form(&space, &e, which)?;
        (space, phi)
    };
    let json = form_to_json(&space, &phi);
    match format {
        Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("serializable"))?,
        Format::Text => {
            for entry in &json.entries {
                writeln!(out, "{}: {}", entry.partition, entry.value)?;
            }
        }
        Format::Csv => {
            writeln!(out, "partition,value")?;
            for entry in &json.entries {
                writeln!(out, "\"{}\",{}", entry.partition, entry.value)?;
            }
        }
        Format::Dot => return Err(CliError::Usage("forms export as json, text or csv".into())),
    }
    Ok(())
}

/// Rewrites an element: a plain element is lifted to order `--n`; a
/// fluctuation element without `--n` is evaluated back to a plain one.
fn element(args: &ExportArgs, format: Format, out: &mut impl Write) -> CliResult<()> {
    if format != Format::Json {
        return Err(CliError::Usage("elements export as json".into()));
    }
    let input: ElementJson = match (&args.element, &args.p) {
        (Some(path), _) => read_json(path)?,
        (None, Some(p)) => element_to_json(&AlgebraElement::normalized(&parse_diagram(p, args.k)?)?),
        (None, None) => return Err(CliError::Usage("export element needs --p or --element".into())),
    };
    let plain = match input.n {
        Some(_) => evaluate(&fluct_from_json(&input)?),
        None => element_from_json(&input)?,
    };
    let json = match args.n {
        Some(n) => fluct_to_json(&lift(&plain, n)?),
        None => element_to_json(&plain),
    };
    writeln!(out, "{}", serde_json::to_string_pretty(&json).expect("serializable"))?;
    Ok(())
}
