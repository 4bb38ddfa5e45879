use std::path::Path;

use alexlab_core::{FiniteGroup, GroupHom};
use anyhow::{bail, Context, Result};

/// Resolves a group argument: a built-in name (`trivial`, `Zn`, `V4`, `Sn`,
/// products such as `Z2xZ3`) or the path of a group file.
pub fn resolve_group(arg: &str) -> Result<FiniteGroup> {
    if let Some(g) = builtin(arg)? {
        return Ok(g);
    }
    let text = std::fs::read_to_string(arg).with_context(|| format!("reading group file {arg}"))?;
    FiniteGroup::from_json(&text).with_context(|| format!("parsing group file {arg}"))
}

fn builtin(name: &str) -> Result<Option<FiniteGroup>> {
    let factors: Vec<&str> = name.split('x').collect();
    let mut out: Option<FiniteGroup> = None;
    for f in factors {
        let g = match f {
            "trivial" | "1" => FiniteGroup::trivial(),
            "V4" | "klein" => FiniteGroup::klein(),
            _ => {
                let (kind, n) = f.split_at(f.chars().next().map_or(0, char::len_utf8));
                let Ok(n) = n.parse::<usize>() else { return Ok(None) };
                match kind {
                    "Z" => FiniteGroup::cyclic(n)?,
                    "S" if n <= 5 => FiniteGroup::symmetric(n)?,
                    "S" => bail!("symmetric groups above S5 are not built in"),
                    _ => return Ok(None),
                }
            }
        };
        out = Some(match out {
            None => g,
            Some(acc) => FiniteGroup::product(&acc, &g),
        });
    }
    Ok(out)
}

/// A homomorphism given either as a comma-separated image list or as the
/// path of a `{"map": [...]}` file.
pub fn resolve_hom(arg: &str, source: &FiniteGroup, target: &FiniteGroup) -> Result<GroupHom> {
    let map: Vec<usize> = if Path::new(arg).exists() {
        let text = std::fs::read_to_string(arg).with_context(|| format!("reading hom file {arg}"))?;
        let file: alexlab_core::group::HomFile =
            serde_json::from_str(&text).with_context(|| format!("parsing hom file {arg}"))?;
        file.map
    } else {
        arg.split(',')
            .map(|s| s.trim().parse::<usize>().with_context(|| format!("bad image `{s}` in map")))
            .collect::<Result<_>>()?
    };
    Ok(GroupHom::new(source.clone(), target.clone(), map)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtins() {
        assert_eq!(resolve_group("Z2xZ2").unwrap().order(), 4);
        assert_eq!(resolve_group("S3").unwrap().order(), 6);
        assert_eq!(resolve_group("trivial").unwrap().order(), 1);
        assert!(resolve_group("Q8").is_err());
    }

    #[test]
    fn hom_from_list() {
        let z2 = FiniteGroup::cyclic(2).unwrap();
        let v = FiniteGroup::klein();
        assert_eq!(resolve_hom("0,2", &z2, &v).unwrap().map(), &[0, 2]);
        assert!(resolve_hom("0,3", &z2, &FiniteGroup::cyclic(4).unwrap()).is_err());
    }
}
