use crate::error::{Error, Result};
use crate::group::{FiniteGroup, GroupHom};
use crate::poset::{Poset, PosetBuilder};

/// Shape of the second gadget attached at each column point.
#[derive(Clone, Copy)]
enum TShape {
    Standard,
    Fence(usize),
}

fn name(prefix: char, x: usize) -> String {
    FiniteGroup::element_name(&prefix.to_string(), x)
}

fn col(prefix: char, x: usize, level: &str) -> String {
    format!("({},{})", name(prefix, x), level)
}

/// `-1`, `0`, then the generators in list order.
fn levels(group: &FiniteGroup, prefix: char) -> Vec<String> {
    let mut v = vec!["-1".to_string(), "0".to_string()];
    v.extend(group.generators().iter().map(|&s| name(prefix, s)));
    v
}

/// Column chains and the cross covers `(x·s, -1) ≺ (x, s)`.
fn add_columns(b: &mut PosetBuilder, group: &FiniteGroup, prefix: char) {
    let levels = levels(group, prefix);
    for x in 0..group.order() {
        for pair in levels.windows(2) {
            b.cover(col(prefix, x, &pair[0]), col(prefix, x, &pair[1]));
        }
    }
    for x in 0..group.order() {
        for &s in group.generators() {
            b.cover(col(prefix, group.mul(x, s), "-1"), col(prefix, x, &name(prefix, s)));
        }
    }
}

fn require_nontrivial(g: &FiniteGroup) -> Result<()> {
    if g.is_trivial() {
        Err(Error::TrivialGroup)
    } else {
        Ok(())
    }
}

fn add_x_star_g(b: &mut PosetBuilder, g: &FiniteGroup) {
    add_columns(b, g, 'g');
    for x in 0..g.order() {
        b.cover("*", col('g', x, "-1"));
    }
}

/// `X_*^G`: `|G|·(|S'_G| + 2) + 1` points with `*` as minimum.
pub fn build_x_star_g(g: &FiniteGroup) -> Result<Poset> {
    require_nontrivial(g)?;
    let mut b = PosetBuilder::new();
    b.point("*");
    add_x_star_g(&mut b, g);
    b.build()
}

fn add_s_gadget(b: &mut PosetBuilder, p: &str) {
    let at = |k: &str| format!("{k}@{p}");
    b.cover(at("C"), at("A"));
    b.cover(at("D"), at("A"));
    b.cover(p, at("B"));
    b.cover(at("C"), at("B"));
    b.cover(at("D"), p);
}

fn add_t_gadget(b: &mut PosetBuilder, p: &str, shape: TShape) {
    let at = |k: &str| format!("{k}@{p}");
    match shape {
        TShape::Standard => {
            b.cover(p, at("E"));
            b.cover(at("I"), at("E"));
            b.cover(at("Hp"), at("F"));
            b.cover(at("J"), at("F"));
            b.cover(at("I"), at("G"));
            b.cover(at("J"), at("G"));
            b.cover(at("Hp"), p);
        }
        TShape::Fence(n) => {
            // p < x1 > y2 < x3 > … up to index n+3, then back down to y1 < p;
            // on the way up odd indices are x's, on the way down even ones are.
            let m = n + 3;
            let mut seq = vec![p.to_string()];
            for i in 1..=m {
                seq.push(if i % 2 == 1 { at(&format!("Tx{i}")) } else { at(&format!("Ty{i}")) });
            }
            for i in (1..=m).rev() {
                seq.push(if i % 2 == 0 { at(&format!("Tx{i}")) } else { at(&format!("Ty{i}")) });
            }
            seq.push(p.to_string());
            // seq alternates p < Tx1 > Ty2 < …; the last step Ty1 < p is upward
            for (k, pair) in seq.windows(2).enumerate() {
                if k % 2 == 0 {
                    b.cover(pair[0].clone(), pair[1].clone());
                } else {
                    b.cover(pair[1].clone(), pair[0].clone());
                }
            }
        }
    }
}

fn add_x_h_star(b: &mut PosetBuilder, h: &FiniteGroup, shape: TShape, with_w: bool) {
    add_columns(b, h, 'h');
    for x in 0..h.order() {
        b.cover(col('h', x, "-1"), "*");
    }
    let levels = levels(h, 'h');
    // gadgets sit at level 0 and at every generator level but the last
    let gadget_levels = &levels[1..levels.len() - 1];
    for x in 0..h.order() {
        for level in gadget_levels {
            let p = col('h', x, level);
            add_s_gadget(b, &p);
            add_t_gadget(b, &p, shape);
        }
    }
    if with_w {
        for x in 0..h.order() {
            let base = format!("A@{}", col('h', x, "0"));
            let mut prev = base;
            for j in 1..=x + 1 {
                let w = format!("w@({},{})", name('h', x), j);
                b.cover(prev, w.clone());
                prev = w;
            }
        }
    }
}

/// `X_H^*`: no automorphisms, but its core has automorphism group `H`.
pub fn build_x_h_star(h: &FiniteGroup) -> Result<Poset> {
    require_nontrivial(h)?;
    let mut b = PosetBuilder::new();
    add_x_h_star(&mut b, h, TShape::Standard, true);
    b.build()
}

fn build_glued(g: &FiniteGroup, h: &FiniteGroup, shape: TShape) -> Result<Poset> {
    let mut b = PosetBuilder::new();
    match (g.is_trivial(), h.is_trivial()) {
        (true, true) => {
            b.point("*");
        }
        (false, true) => {
            b.point("*");
            add_x_star_g(&mut b, g);
        }
        (true, false) => add_x_h_star(&mut b, h, shape, true),
        (false, false) => {
            add_x_h_star(&mut b, h, shape, true);
            add_x_star_g(&mut b, g);
        }
    }
    b.build()
}

/// `X_H^G`: `X_H^*` and `X_*^G` glued at `*`. When one group is trivial the
/// other half alone is returned; when both are, a single point.
pub fn build_x_h_g(g: &FiniteGroup, h: &FiniteGroup) -> Result<Poset> {
    build_glued(g, h, TShape::Standard)
}

/// `X_{Hn}^G`: as [`build_x_h_g`] with every T-gadget replaced by the fence
/// with `2(n+3)` points.
pub fn build_t_n_variant(g: &FiniteGroup, h: &FiniteGroup, n: usize) -> Result<Poset> {
    if n == 0 {
        return Err(Error::InvalidInput("fence index n must be positive".into()));
    }
    build_glued(g, h, TShape::Fence(n))
}

/// Whether a label belongs to a T-gadget or to one of its fence variants.
pub fn is_t_gadget_label(label: &str) -> bool {
    let Some((head, rest)) = label.split_once('@') else { return false };
    rest.starts_with('(')
        && (matches!(head, "E" | "F" | "G" | "Hp" | "I" | "J")
            || head.starts_with("Tx")
            || head.starts_with("Ty"))
}

/// Removes all T-gadget points. Needs at least one S-gadget point to
/// recognize the input as a constructed space.
pub fn strip_t_gadgets(p: &Poset) -> Result<Poset> {
    if !p.labels().iter().any(|l| l.starts_with("A@(")) {
        return Err(Error::NotCanonicallyLabeled("no gadget points found".into()));
    }
    let keep: Vec<usize> = (0..p.len()).filter(|&i| !is_t_gadget_label(p.label(i))).collect();
    Ok(p.subposet(&keep))
}

/// `X_f` for `f: G → H`: `X_H^G` without the W chains, plus
/// `(g,0) ≺ A@(f(g),0)` for every `g` and `* ≺ A@(h,0)` for `h ∉ f(G)`.
/// With a trivial source or target this is `X_H^G`.
pub fn build_x_f(f: &GroupHom) -> Result<Poset> {
    let (g, h) = (f.source(), f.target());
    if g.is_trivial() || h.is_trivial() {
        return build_x_h_g(g, h);
    }
    let mut b = PosetBuilder::new();
    add_x_h_star(&mut b, h, TShape::Standard, false);
    add_x_star_g(&mut b, g);
    let image = f.image();
    for x in 0..g.order() {
        b.cover(col('g', x, "0"), format!("A@{}", col('h', f.apply(x), "0")));
    }
    for y in 0..h.order() {
        if image.binary_search(&y).is_err() {
            b.cover("*", format!("A@{}", col('h', y, "0")));
        }
    }
    b.build()
}
