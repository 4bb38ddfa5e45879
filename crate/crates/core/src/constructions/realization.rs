use super::columns::build_x_h_g;
use super::w::w_copy;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homotopy::{reduce_weak, CollapseTrace};
use crate::poset::{Poset, PosetBuilder};

/// `X_H^G ⊛ W_2`, with the `W_2` points labeled `x_i@Wcopy_0`.
pub fn build_prop62(g: &FiniteGroup, h: &FiniteGroup) -> Result<Poset> {
    Ok(build_x_h_g(g, h)?.join(&w_copy(2, "@Wcopy_0")?))
}

/// Output of [`build_thm13`].
#[derive(Debug, Clone)]
pub struct Thm13Build {
    pub poset: Poset,
    /// The input after removing beat and weak beat points.
    pub reduced_input: Poset,
    /// Removals that produced `reduced_input`.
    pub trace: CollapseTrace,
    /// Whether the input reduced to a point, so that the result is
    /// [`build_prop62`].
    pub delegated: bool,
}

fn reserved(label: &str) -> bool {
    label == "*" || label == "t" || label.contains("@Wcopy_") || label.contains("@(") || label.starts_with('(')
}

/// Decorates a finite model `x` so that its automorphisms die, then attaches
/// `X_H^G ⊛ W_2` through a new point `t`.
///
/// `x` is first stripped of beat and weak beat points. Its points, in label
/// order `y_1 … y_n`, each get a copy of `W_i` glued at `x_1@Wcopy_i = y_i`;
/// `t` covers the first minimal `y` in label order and `x_1@Wcopy_0`.
pub fn build_thm13(x: &Poset, g: &FiniteGroup, h: &FiniteGroup) -> Result<Thm13Build> {
    if x.is_empty() {
        return Err(Error::InvalidInput("empty input space".into()));
    }
    if let Some(l) = x.labels().iter().find(|l| reserved(l)) {
        return Err(Error::InvalidInput(format!("label `{l}` clashes with constructed labels")));
    }
    let (reduced, trace) = reduce_weak(x);
    if reduced.len() == 1 {
        return Ok(Thm13Build {
            poset: build_prop62(g, h)?,
            reduced_input: reduced,
            trace,
            delegated: true,
        });
    }
    let mut order: Vec<usize> = (0..reduced.len()).collect();
    order.sort_by(|&a, &b| reduced.label(a).cmp(reduced.label(b)));

    let mut b = PosetBuilder::new();
    b.extend_from(&reduced, str::to_string);
    for (i, &y) in order.iter().enumerate() {
        let suffix = format!("@Wcopy_{}", i + 1);
        let bottom = format!("x_1{suffix}");
        let y_label = reduced.label(y).to_string();
        b.extend_from(&w_copy(i + 1, &suffix)?, |l| {
            if l == bottom {
                y_label.clone()
            } else {
                l.to_string()
            }
        });
    }
    b.extend_from(&build_prop62(g, h)?, str::to_string);
    let first_min = order
        .iter()
        .copied()
        .find(|&y| reduced.lower_covers(y).is_empty())
        .expect("a nonempty poset has a minimal point");
    b.cover(reduced.label(first_min).to_string(), "t");
    b.cover("x_1@Wcopy_0", "t");
    Ok(Thm13Build { poset: b.build()?, reduced_input: reduced, trace, delegated: false })
}
