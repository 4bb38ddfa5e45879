//! Acceptance run: one PASS/FAIL line per criterion, each with a pinned
//! wall-clock budget. Runs without the libtest harness so the lines appear in
//! order on stdout.

#![allow(clippy::needless_range_loop)]

use std::time::{Duration, Instant};

use alexlab_core::constructions::{
    build_prop62, build_t_n_variant, build_thm13, build_w, build_x_f, build_x_h_g, minimal_sphere_model,
    strip_t_gadgets,
};
use alexlab_core::homotopy::{beat_points, collapse_to_point, core, homotopy_equivalent, is_contractible};
use alexlab_core::invariants::{
    homologically_trivial_action_subgroup, homology_action, is_identity, order_complex, poset_homology,
    wedge_of_circles_check, HomologySummary,
};
use alexlab_core::symmetry::{automorphism_group, decode_action, equivalence_group, isomorphic_to, tau, Role};
use alexlab_core::{FiniteGroup, GroupHom, Limits, Poset};

type Check = std::result::Result<String, String>;
/// Name, wall-clock budget in seconds, body.
type Criterion = (&'static str, u64, fn() -> Check);

fn ensure(cond: bool, msg: impl Into<String>) -> std::result::Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err(e: impl std::fmt::Display) -> String {
    e.to_string()
}

fn limits() -> Limits {
    Limits::default()
}

fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2).unwrap()
}

/// `|Aut(p)|`, `|E(p)|`, and whether each is isomorphic to the expected group.
fn aut_e(p: &Poset, aut: &FiniteGroup, e: &FiniteGroup) -> std::result::Result<(usize, usize), String> {
    let a = automorphism_group(p, &limits()).map_err(err)?;
    let (eg, _) = equivalence_group(p, &limits()).map_err(err)?;
    ensure(
        isomorphic_to(&a, aut, &limits()).map_err(err)?.is_some(),
        format!("Aut has order {} and is not the expected group of order {}", a.order(), aut.order()),
    )?;
    ensure(
        isomorphic_to(&eg, e, &limits()).map_err(err)?.is_some(),
        format!("E has order {} and is not the expected group of order {}", eg.order(), e.order()),
    )?;
    Ok((a.order(), eg.order()))
}

fn betti_string(h: &HomologySummary) -> String {
    let parts: Vec<String> = h
        .groups
        .iter()
        .map(|g| {
            if g.torsion.is_empty() {
                format!("{}:{}", g.degree, g.betti)
            } else {
                format!("{}:{}+T{:?}", g.degree, g.betti, g.torsion)
            }
        })
        .collect();
    format!("[{}]", parts.join(" "))
}

fn criterion_1() -> Check {
    let w2 = build_w(2).map_err(err)?;
    ensure(w2.len() == 17, format!("|W_2| = {}", w2.len()))?;
    ensure(beat_points(&w2) == (vec![], vec![]), "W_2 has beat points")?;
    let a = automorphism_group(&w2, &limits()).map_err(err)?;
    ensure(a.order() == 1, format!("|Aut(W_2)| = {}", a.order()))?;
    let (c, _) = core(&w2);
    ensure(c == w2 && !is_contractible(&w2), "core(W_2) is not W_2")?;
    for n in 2..=4 {
        let w = build_w(n).map_err(err)?;
        let h = poset_homology(&w, &limits()).map_err(err)?;
        ensure(h.is_trivial(), format!("W_{n} homology {}", betti_string(&h)))?;
        ensure(collapse_to_point(&w).is_some(), format!("W_{n} does not collapse"))?;
    }
    Ok("W_2: 17 points, rigid, minimal; W_2..W_4 acyclic and collapsible".into())
}

fn criterion_2() -> Check {
    let g = FiniteGroup::klein();
    let h = z2();
    let x = build_x_h_g(&g, &h).map_err(err)?;
    ensure(x.len() == 46, format!("|X_H^G| = {}", x.len()))?;
    let (a, e) = aut_e(&x, &g, &h)?;
    let dual = build_x_h_g(&h, &g).map_err(err)?;
    let (da, de) = aut_e(&dual, &h, &g)?;
    ensure(x.isomorphism_to(&dual, &limits()).map_err(err)?.is_none(), "X_H^G ≅ X_G^H")?;
    ensure(!homotopy_equivalent(&x, &dual, &limits()).map_err(err)?, "X_H^G ≃ X_G^H")?;
    Ok(format!(
        "|X_H^G| = 46, |Aut| = {a}, |E| = {e}; dual: {} points, |Aut| = {da}, |E| = {de}; not equivalent",
        dual.len()
    ))
}

fn criterion_3() -> Check {
    let g = FiniteGroup::klein();
    let h = z2();
    let s = strip_t_gadgets(&build_x_h_g(&g, &h).map_err(err)?).map_err(err)?;
    ensure(s.len() == 34, format!("stripped size {}", s.len()))?;
    let (a, e) = aut_e(&s, &g, &h)?;
    Ok(format!("34 points, |Aut| = {a}, |E| = {e}"))
}

/// Decodes `τ` of `X_f` as a map `G → H` through the column labels.
fn decoded_tau(x: &Poset, g: &FiniteGroup, h: &FiniteGroup) -> std::result::Result<Vec<Option<usize>>, String> {
    let t = tau(x, &limits()).map_err(err)?;
    let mut out = vec![None; g.order()];
    for (i, phi) in t.source.perms().iter().enumerate() {
        let a = decode_action(x, phi, g, Role::G).map_err(err)?;
        let psi = t.target.perm(t.map[i]);
        let b = decode_action(t.target.carrier(), psi, h, Role::H).map_err(err)?;
        ensure(out[a].is_none_or(|prev| prev == b), "τ is not a function of the decoded element")?;
        out[a] = Some(b);
    }
    Ok(out)
}

fn criterion_4() -> Check {
    let g = z2();
    let h = FiniteGroup::klein();
    let f = GroupHom::new(g.clone(), h.clone(), vec![0, 2]).map_err(err)?;
    let x = build_x_f(&f).map_err(err)?;
    aut_e(&x, &g, &h)?;
    let decoded = decoded_tau(&x, &g, &h)?;
    let expect: Vec<Option<usize>> = f.map().iter().map(|&b| Some(b)).collect();
    ensure(decoded == expect, format!("decoded τ {decoded:?} ≠ f {:?}", f.map()))?;
    let t = tau(&x, &limits()).map_err(err)?;
    ensure(t.kernel().len() == 1, "kernel of τ is not trivial")?;
    ensure(t.image().len() == 2, "image of τ does not have order 2")?;

    let z4 = FiniteGroup::cyclic(4).map_err(err)?;
    let s = GroupHom::new(z4.clone(), z2(), vec![0, 1, 0, 1]).map_err(err)?;
    let y = build_x_f(&s).map_err(err)?;
    let ty = tau(&y, &limits()).map_err(err)?;
    ensure(ty.kernel().len() == 2, format!("kernel of τ for Z4 → Z2 has order {}", ty.kernel().len()))?;
    let decoded = decoded_tau(&y, &z4, &z2())?;
    let expect: Vec<Option<usize>> = s.map().iter().map(|&b| Some(b)).collect();
    ensure(decoded == expect, format!("decoded τ {decoded:?} ≠ {:?}", s.map()))?;
    Ok(format!("τ = f = {:?}; Z4 → Z2 kernel order 2", f.map()))
}

fn criterion_5() -> Check {
    let homs = GroupHom::all(&z2(), &FiniteGroup::klein());
    ensure(homs.len() == 4, format!("{} homomorphisms", homs.len()))?;
    let spaces: Vec<Poset> = homs.iter().map(build_x_f).collect::<Result<_, _>>().map_err(err)?;
    let mut checks = 0;
    for (i, p) in spaces.iter().enumerate() {
        for (j, q) in spaces.iter().enumerate() {
            ensure(homotopy_equivalent(p, q, &limits()).map_err(err)?, format!("X_f{i} ≄ X_f{j}"))?;
            let iso = p.isomorphism_to(q, &limits()).map_err(err)?.is_some();
            ensure(iso == (i == j), format!("isomorphic({i}, {j}) = {iso}"))?;
            checks += 1;
        }
    }
    Ok(format!("{checks} ordered pairs"))
}

fn criterion_6() -> Check {
    let x = build_x_h_g(&z2(), &z2()).map_err(err)?;
    let k = wedge_of_circles_check(&x, &limits()).map_err(err)?.ok_or("not a wedge of circles")?;
    let chi = order_complex(&x, &limits()).map_err(err)?.euler_characteristic();
    ensure(k as i64 == 1 - chi, format!("k = {k}, 1 - χ = {}", 1 - chi))?;
    let formula = 3 * 2;
    ensure(k == formula, format!("SNF count {k}, formula 3·|H|·|S'_H| = {formula}"))?;
    Ok(format!("k = {k} = 1 - χ = 3·|H|·|S'_H|"))
}

fn criterion_7() -> Check {
    let g = z2();
    let mut sizes = Vec::new();
    for n in 1..=2 {
        let x = build_t_n_variant(&g, &g, n).map_err(err)?;
        aut_e(&x, &g, &g)?;
        sizes.push(core(&x).0.len());
    }
    ensure(sizes[0] != sizes[1], format!("core sizes {sizes:?}"))?;
    Ok(format!("core sizes {} and {}", sizes[0], sizes[1]))
}

fn criterion_8() -> Check {
    let g = FiniteGroup::klein();
    let h = z2();
    let x = build_prop62(&g, &h).map_err(err)?;
    let (a, e) = aut_e(&x, &g, &h)?;
    let hom = poset_homology(&x, &limits()).map_err(err)?;
    ensure(hom.is_trivial(), format!("homology {}", betti_string(&hom)))?;
    let k = order_complex(&x, &limits()).map_err(err)?;
    Ok(format!("{} points, {} simplices, |Aut| = {a}, |E| = {e}, acyclic", x.len(), k.len()))
}

fn criterion_9() -> Check {
    let z3 = FiniteGroup::cyclic(3).map_err(err)?;
    let s2 = minimal_sphere_model(2).map_err(err)?;
    let b = build_thm13(&s2, &z3, &z2()).map_err(err)?;
    aut_e(&b.poset, &z3, &z2())?;
    let h = poset_homology(&b.poset, &limits()).map_err(err)?;
    let shape: Vec<(usize, usize, bool)> =
        (0..3).map(|d| (d, h.betti(d), h.torsion(d).is_empty())).collect();
    ensure(
        shape == vec![(0, 0, true), (1, 0, true), (2, 1, true)] && h.groups.iter().all(|g| g.degree <= 2 || g.is_zero()),
        format!("S^2 build homology {}", betti_string(&h)),
    )?;

    let s3 = FiniteGroup::symmetric(3).map_err(err)?;
    let s1 = minimal_sphere_model(1).map_err(err)?;
    let b1 = build_thm13(&s1, &FiniteGroup::trivial(), &s3).map_err(err)?;
    aut_e(&b1.poset, &FiniteGroup::trivial(), &s3)?;
    let h1 = poset_homology(&b1.poset, &limits()).map_err(err)?;
    ensure(
        h1.betti(1) == 1 && h1.groups.iter().all(|g| g.torsion.is_empty() && (g.degree == 1 || g.betti == 0)),
        format!("S^1 build homology {}", betti_string(&h1)),
    )?;
    let (e, sub) = homologically_trivial_action_subgroup(&b1.poset, &limits()).map_err(err)?;
    ensure(e.order() == 6 && sub.len() == 6, format!("E_* has order {} in E of order {}", sub.len(), e.order()))?;
    ensure(!e.is_abelian(), "E is abelian")?;
    let (c, _) = core(&b1.poset);
    for phi in e.perms() {
        let m = homology_action(&c, phi, 1, &limits()).map_err(err)?;
        ensure(m.len() == 1 && is_identity(&m), format!("action on H_1 is {m:?}"))?;
    }
    Ok(format!(
        "S^2 build: {} points, H = (0, 0, Z); S^1 build: {} points, E_* = E ≅ S3",
        b.poset.len(),
        b1.poset.len()
    ))
}

/// Seeded randomized versions of the property suites; the proptest targets
/// cover the same ground with shrinking.
fn criterion_10() -> Check {
    use alexlab_core::homotopy::{core_in_order, weak_beat_points};
    use alexlab_core::invariants::{homology, SimplicialComplex};
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    let mut rng = ChaCha8Rng::seed_from_u64(7);
    let random_poset = |rng: &mut ChaCha8Rng, n: usize, density: f64, tag: &str| -> Poset {
        let labels: Vec<String> = (0..n).map(|i| format!("{tag}{i}")).collect();
        let mut rel = Vec::new();
        for a in 0..n {
            for b in a + 1..n {
                if rng.gen_bool(density) {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_relations(labels, &rel).unwrap()
    };

    for _ in 0..100 {
        let n = rng.gen_range(1..=14);
        let p = random_poset(&mut rng, n, 0.3, "p");
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let q = p.reordered(&order).map_err(err)?;
        let iso = p.isomorphism_to(&q, &limits()).map_err(err)?.ok_or("shuffled copy not isomorphic")?;
        let (pb, qb) = (beat_points(&p), beat_points(&q));
        let (pw, qw) = (weak_beat_points(&p), weak_beat_points(&q));
        for x in 0..n {
            let y = iso[x];
            ensure(p.height_of(x) == q.height_of(y) && p.degree_of(x) == q.degree_of(y), "height/degree not preserved")?;
            ensure(pb.0.contains(&x) == qb.0.contains(&y) && pb.1.contains(&x) == qb.1.contains(&y), "beat kind not preserved")?;
            ensure(pw.0.contains(&x) == qw.0.contains(&y) && pw.1.contains(&x) == qw.1.contains(&y), "weak kind not preserved")?;
        }
        let (c, _) = core(&p);
        ensure(core(&c).0 == c, "core is not idempotent")?;
        let (c2, r2) = core_in_order(&p, &order);
        ensure(r2.is_valid(), "retraction invalid")?;
        ensure(c.isomorphism_to(&c2, &limits()).map_err(err)?.is_some(), "core depends on removal order")?;
    }

    for _ in 0..50 {
        let (n, m) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
        let p = random_poset(&mut rng, n, 0.3, "a");
        let q = random_poset(&mut rng, m, 0.3, "b");
        let ap = automorphism_group(&p, &limits()).map_err(err)?.order();
        let aq = automorphism_group(&q, &limits()).map_err(err)?.order();
        let aj = automorphism_group(&p.join(&q), &limits()).map_err(err)?.order();
        ensure(aj == ap * aq, format!("|Aut(p ⊛ q)| = {aj} ≠ {ap}·{aq}"))?;
    }

    for _ in 0..100 {
        let v = rng.gen_range(1..=12);
        let vertices: Vec<String> = (0..v).map(|i| format!("v{i}")).collect();
        let facets: Vec<Vec<u32>> = (0..rng.gen_range(1..=8))
            .map(|_| {
                let size = rng.gen_range(1..=4.min(v));
                let mut s: Vec<u32> = (0..v as u32).collect();
                s.shuffle(&mut rng);
                s.truncate(size);
                s
            })
            .collect();
        let k = SimplicialComplex::from_facets(vertices, &facets, &limits()).map_err(err)?;
        let h = homology(&k).map_err(err)?;
        let betti = rational_betti(&k);
        for (d, &b) in betti.iter().enumerate() {
            ensure(h.betti(d) == b, format!("b_{d} = {} but rational rank gives {b}", h.betti(d)))?;
        }
        ensure(h.reduced_euler() == k.euler_characteristic() - 1, "Euler characteristic mismatch")?;
    }

    let g = FiniteGroup::klein();
    let spaces = [
        build_x_h_g(&g, &z2()).map_err(err)?,
        build_x_h_g(&z2(), &g).map_err(err)?,
        build_x_f(&GroupHom::new(z2(), g.clone(), vec![0, 2]).map_err(err)?).map_err(err)?,
        build_t_n_variant(&z2(), &z2(), 1).map_err(err)?,
        build_t_n_variant(&z2(), &z2(), 2).map_err(err)?,
        build_prop62(&g, &z2()).map_err(err)?,
    ];
    for x in &spaces {
        ensure(tau(x, &limits()).map_err(err)?.is_homomorphism(), "τ is not a homomorphism")?;
    }
    Ok("100 iso/core trials, 50 join trials, 100 complexes, τ law on 6 spaces (seed 7)".into())
}

/// Reduced Betti numbers by Gaussian elimination over the rationals,
/// independent of the integer elimination used by the library.
fn rational_betti(k: &alexlab_core::invariants::SimplicialComplex) -> Vec<usize> {
    use num_rational::BigRational;
    use num_traits::{One, Zero};
    use std::collections::HashMap;

    let top = k.dimension().unwrap_or(0);
    let rank = |d: usize| -> usize {
        // Rank of ∂_d from d-simplices to (d-1)-simplices; ∂_0 is augmentation.
        let rows: Vec<Vec<u32>> = if d == 0 { vec![vec![]] } else { k.of_dim(d - 1).to_vec() };
        let cols = k.of_dim(d);
        let index: HashMap<&[u32], usize> = rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let mut m = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                let sign = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
                m[index[f.as_slice()]][j] = sign;
            }
        }
        let mut r = 0;
        for c in 0..cols.len() {
            let Some(p) = (r..rows.len()).find(|&i| !m[i][c].is_zero()) else { continue };
            m.swap(r, p);
            let pivot = m[r][c].clone();
            for i in 0..rows.len() {
                if i != r && !m[i][c].is_zero() {
                    let factor = m[i][c].clone() / pivot.clone();
                    for j in c..cols.len() {
                        let t = m[r][j].clone() * factor.clone();
                        m[i][j] -= t;
                    }
                }
            }
            r += 1;
        }
        r
    };
    let ranks: Vec<usize> = (0..=top + 1).map(|d| if d <= top { rank(d) } else { 0 }).collect();
    (0..=top).map(|d| k.of_dim(d).len() - ranks[d] - ranks[d + 1]).collect()
}

fn main() {
    let criteria: [Criterion; 10] = [
        ("W-series", 4, criterion_1),
        ("X_H^G and its dual", 30, criterion_2),
        ("T-gadget removal", 30, criterion_3),
        ("X_f realizes f", 60, criterion_4),
        ("X_f pairwise equivalence", 120, criterion_5),
        ("wedge of circles", 60, criterion_6),
        ("T^n family", 60, criterion_7),
        ("X_H^G ⊛ W_2", 120, criterion_8),
        ("realization over sphere models", 300, criterion_9),
        ("property suites", 600, criterion_10),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let elapsed = start.elapsed();
        let outcome = match outcome {
            Ok(w) if elapsed > Duration::from_secs(*budget) => {
                Err(format!("{w}; took {:.1}s, budget {budget}s", elapsed.as_secs_f64()))
            }
            other => other,
        };
        match outcome {
            Ok(w) => println!("PASS [{:>2}] {name}: {w} ({:.2}s ≤ {budget}s)", i + 1, elapsed.as_secs_f64()),
            Err(w) => {
                failed += 1;
                println!("FAIL [{:>2}] {name}: {w} ({:.2}s)", i + 1, elapsed.as_secs_f64());
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
