use std::path::PathBuf;
use std::process::ExitCode;

use alexlab_core::constructions::{
    build_t_n_variant, build_thm13, build_w, build_x_f, build_x_h_g, build_x_h_star, build_x_star_g,
    minimal_sphere_model,
};
use alexlab_core::{FiniteGroup, Poset};
use anyhow::{bail, Context, Result};
use clap::{Args, ValueEnum};

use crate::groups::{resolve_group, resolve_hom};
use crate::{read_poset, write_text};

#[derive(Clone, Copy, ValueEnum)]
#[allow(clippy::upper_case_acronyms)]
pub enum Kind {
    XStarG,
    #[value(name = "x-h-star")]
    XHStar,
    #[value(name = "x-h-g")]
    XHG,
    #[value(name = "x-f")]
    XF,
    #[value(name = "t-n")]
    TN,
    W,
    Sphere,
    Thm13,
    Join,
}

#[derive(Args)]
pub struct BuildArgs {
    kind: Kind,
    /// Acting group `G`: built-in name (`Z2`, `V4`, `S3`, `Z2xZ3`, `trivial`) or group file.
    #[arg(long)]
    g: Option<String>,
    /// Group `H` realized by self-equivalences.
    #[arg(long)]
    h: Option<String>,
    /// Homomorphism `G → H` for `x-f`: image list such as `0,2` or a map file.
    #[arg(long)]
    map: Option<String>,
    /// Index for `w` and `t-n`.
    #[arg(long)]
    n: Option<usize>,
    /// Sphere dimension (1 or 2).
    #[arg(long)]
    dim: Option<u32>,
    /// Input poset for `thm13`, or the top factor for `join`.
    #[arg(long)]
    input: Option<PathBuf>,
    /// Bottom factor for `join`.
    #[arg(long)]
    bottom: Option<PathBuf>,
    /// Output poset file; the poset is printed when absent.
    #[arg(long)]
    out: Option<PathBuf>,
    /// For `thm13`: where to write the weak point removals applied to the input.
    #[arg(long)]
    trace_out: Option<PathBuf>,
}

fn group(arg: &Option<String>, flag: &str) -> Result<FiniteGroup> {
    let name = arg.as_deref().with_context(|| format!("--{flag} is required"))?;
    resolve_group(name)
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T> {
    v.with_context(|| format!("--{flag} is required"))
}

pub fn run(args: &BuildArgs) -> Result<ExitCode> {
    let p: Poset = match args.kind {
        Kind::XStarG => build_x_star_g(&group(&args.g, "g")?)?,
        Kind::XHStar => build_x_h_star(&group(&args.h, "h")?)?,
        Kind::XHG => build_x_h_g(&group(&args.g, "g")?, &group(&args.h, "h")?)?,
        Kind::XF => {
            let (g, h) = (group(&args.g, "g")?, group(&args.h, "h")?);
            let map = args.map.as_deref().context("--map is required")?;
            build_x_f(&resolve_hom(map, &g, &h)?)?
        }
        Kind::TN => build_t_n_variant(&group(&args.g, "g")?, &group(&args.h, "h")?, need(args.n, "n")?)?,
        Kind::W => build_w(need(args.n, "n")?)?,
        Kind::Sphere => minimal_sphere_model(need(args.dim, "dim")?)?,
        Kind::Thm13 => {
            let input = read_poset(args.input.as_deref().context("--input is required")?)?;
            let b = build_thm13(&input, &group(&args.g, "g")?, &group(&args.h, "h")?)?;
            if let Some(path) = &args.trace_out {
                write_text(path, &(b.trace.to_json() + "\n"))?;
            }
            eprintln!(
                "input reduced from {} to {} points{}",
                input.len(),
                b.reduced_input.len(),
                if b.delegated { "; reduced to a point, built X_H^G ⊛ W_2" } else { "" }
            );
            b.poset
        }
        Kind::Join => {
            let top = read_poset(args.input.as_deref().context("--input is required")?)?;
            let Some(bottom) = &args.bottom else { bail!("--bottom is required") };
            top.join(&read_poset(bottom)?)
        }
    };
    let json = p.to_json() + "\n";
    match &args.out {
        Some(path) => {
            write_text(path, &json)?;
            println!(
                "wrote {}: {} points, {} covers, height {}",
                path.display(),
                p.len(),
                p.num_covers(),
                p.max_height().map_or(-1, |h| h as i64)
            );
        }
        None => print!("{json}"),
    }
    Ok(ExitCode::SUCCESS)
}
