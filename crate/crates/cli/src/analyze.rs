use std::path::PathBuf;
use std::process::ExitCode;

use alexlab_core::homotopy::{beat_points, core, weak_beat_points};
use alexlab_core::invariants::{order_complex, poset_homology, wedge_of_circles_check};
use alexlab_core::symmetry::{automorphism_group, decode_action, tau, Role};
use alexlab_core::{Limits, Poset};
use anyhow::{Context, Result};
use clap::Args;
use serde_json::{json, Map, Value};

use crate::groups::resolve_group;
use crate::{read_poset, write_text};

#[derive(Args)]
pub struct AnalyzeArgs {
    poset: PathBuf,
    /// Automorphism group.
    #[arg(long)]
    aut: bool,
    /// Beat points, core and contractibility.
    #[arg(long)]
    core: bool,
    /// Reduced homology of the order complex.
    #[arg(long)]
    homology: bool,
    /// The map from automorphisms to self-equivalence classes.
    #[arg(long)]
    tau: bool,
    /// With `--tau` on a canonically labeled space: group read off the `(g…,ℓ)` columns.
    #[arg(long, requires = "tau")]
    g: Option<String>,
    /// With `--tau`: group read off the `(h…,ℓ)` columns of the core.
    #[arg(long, requires = "tau")]
    h: Option<String>,
    /// Write the Hasse diagram in DOT format here.
    #[arg(long)]
    dot: Option<PathBuf>,
}

fn labels(p: &Poset, idx: &[usize]) -> Vec<String> {
    idx.iter().map(|&i| p.label(i).to_string()).collect()
}

pub fn run(args: &AnalyzeArgs, limits: &Limits) -> Result<ExitCode> {
    let p = read_poset(&args.poset)?;
    let report = analyze(&p, args, limits)?;
    println!("{}", serde_json::to_string_pretty(&report)?);
    Ok(ExitCode::SUCCESS)
}

fn analyze(p: &Poset, args: &AnalyzeArgs, limits: &Limits) -> Result<Value> {
    let mut out = Map::new();
    out.insert(
        "poset".into(),
        json!({
            "points": p.len(),
            "covers": p.num_covers(),
            "height": p.max_height(),
            "minimal": labels(p, &p.minimal_elements()),
            "maximal": labels(p, &p.maximal_elements()),
        }),
    );
    if args.aut {
        let a = automorphism_group(p, limits)?;
        out.insert("aut".into(), json!({ "order": a.order(), "abelian": a.is_abelian(), "perms": a.perms() }));
    }
    if args.core {
        let (down, up) = beat_points(p);
        let (wdown, wup) = weak_beat_points(p);
        let (c, _) = core(p);
        out.insert(
            "core".into(),
            json!({
                "down_beat": labels(p, &down),
                "up_beat": labels(p, &up),
                "down_weak": labels(p, &wdown),
                "up_weak": labels(p, &wup),
                "size": c.len(),
                "contractible": c.len() == 1,
                "points": c.labels(),
            }),
        );
    }
    if args.homology {
        let k = order_complex(p, limits)?;
        out.insert(
            "homology".into(),
            json!({
                "simplices": k.len(),
                "f_vector": k.f_vector(),
                "summary": poset_homology(p, limits)?,
                "wedge_of_circles": wedge_of_circles_check(p, limits)?,
            }),
        );
    }
    if args.tau {
        let t = tau(p, limits)?;
        let mut entry = json!({
            "aut_order": t.source.order(),
            "e_order": t.target.order(),
            "map": t.map,
            "kernel": t.kernel(),
            "image": t.image(),
        });
        if let (Some(g), Some(h)) = (&args.g, &args.h) {
            let (g, h) = (resolve_group(g)?, resolve_group(h)?);
            let table = t
                .source
                .perms()
                .iter()
                .enumerate()
                .map(|(i, phi)| {
                    let a = decode_action(p, phi, &g, Role::G)?;
                    let b = decode_action(t.target.carrier(), t.target.perm(t.map[i]), &h, Role::H)?;
                    Ok((a, b))
                })
                .collect::<alexlab_core::Result<Vec<(usize, usize)>>>()
                .context("decoding τ through the column labels")?;
            let mut by_element = vec![None; g.order()];
            for (a, b) in table {
                by_element[a] = Some(b);
            }
            entry["decoded"] = json!(by_element);
        }
        out.insert("tau".into(), entry);
    }
    if let Some(path) = &args.dot {
        let name = args.poset.file_stem().map_or("poset".into(), |s| s.to_string_lossy().into_owned());
        write_text(path, &p.to_dot(&name))?;
    }
    Ok(Value::Object(out))
}
