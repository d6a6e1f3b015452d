use std::io::Write;

use pfc_core::diagram::{family_contains, show, DiagramFamily};
use pfc_core::orbit::Orbit;
use pfc_core::partition::{enumerate_partitions_bounded, GroundSet, Partition};
use serde_json::json;

use crate::cli::{EnumerateArgs, Format};
use crate::config::Settings;
use crate::error::{CliError, CliResult};

pub fn run(args: &EnumerateArgs, settings: &Settings, format: Format, out: &mut impl Write) -> CliResult<()> {
    settings.check_ground(2 * args.k)?;
    let family: DiagramFamily = args.family.into();
    let parts: Vec<Partition> = if args.orbits {
        Orbit::all(args.k)?.into_iter().map(|o| o.rep).collect()
    } else {
        enumerate_partitions_bounded(GroundSet::diagram(args.k), settings.max_ground)?
    };
    let mut listed = Vec::new();
    for p in parts {
        if family_contains(family, &p)? {
            listed.push(show(&p));
        }
    }
    match format {
        Format::Text => {
            for line in &listed {
                writeln!(out, "{line}")?;
            }
            eprintln!("{} diagram(s)", listed.len());
        }
        Format::Json => {
            let doc = json!({
                "k": args.k,
                "family": format!("{:?}", args.family),
                "orbits": args.orbits,
                "count": listed.len(),
                "partitions": listed,
            });
            writeln!(out, "{}", serde_json::to_string_pretty(&doc).expect("serializable"))?;
        }
        Format::Csv => {
            writeln!(out, "partition")?;
            for line in &listed {
                writeln!(out, "\"{line}\"")?;
            }
        }
        Format::Dot => return Err(CliError::Usage("enumerate has no DOT output".into())),
    }
    Ok(())
}
