#![allow(clippy::needless_range_loop)]

use std::time::Instant;

use alexlab_core::constructions::{
    build_prop62, build_t_n_variant, build_thm13, build_w, build_x_f, build_x_h_g, minimal_sphere_model,
    strip_t_gadgets,
};
use alexlab_core::homotopy::{
    beat_points, collapse_to_point, core, core_in_order, homotopy_equivalent, is_contractible, weak_beat_points,
};
use alexlab_core::invariants::{
    homologically_trivial_action_subgroup, homology, homology_action, is_identity, order_complex, poset_homology,
    wedge_of_circles_check, SimplicialComplex,
};
use alexlab_core::symmetry::{automorphism_group, decode_action, equivalence_group, isomorphic_to, tau, PermGroup, Role};
use alexlab_core::{Error, FiniteGroup, GroupHom, Limits, Poset};
use anyhow::Result;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

pub const SUITES: [&str; 10] =
    ["ex61", "lemma11", "thm12", "prop42", "cor44", "prop53-54", "prop62", "thm13", "ex65", "properties"];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Skipped,
}

#[derive(Debug, Clone, Serialize)]
pub struct Claim {
    pub id: String,
    /// The statement being checked.
    pub locus: String,
    pub status: Status,
    pub witness: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub wall_clock_ms: Option<u64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub suite: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    pub passed: usize,
    pub failed: usize,
    pub skipped: usize,
    pub claims: Vec<Claim>,
}

impl VerificationReport {
    pub fn ok(&self) -> bool {
        self.failed == 0
    }
}

pub struct Context {
    pub limits: Limits,
    pub seed: u64,
    /// `(G, H)` overriding the default pair `(Z2⊕Z2, Z2)` where a suite takes one.
    pub groups: Option<(FiniteGroup, FiniteGroup)>,
    pub timings: bool,
}

struct Recorder<'a> {
    ctx: &'a Context,
    claims: Vec<Claim>,
}

/// A claim body returns whether it holds and a witness.
type Outcome = Result<(bool, Value)>;

impl Recorder<'_> {
    fn claim(&mut self, id: &str, locus: &str, body: impl FnOnce() -> Outcome) {
        let start = Instant::now();
        let (status, witness) = match body() {
            Ok((true, w)) => (Status::Pass, w),
            Ok((false, w)) => (Status::Fail, w),
            Err(e) => match e.downcast_ref::<Error>() {
                Some(
                    Error::SearchBudgetExceeded { .. }
                    | Error::GroupTooLarge { .. }
                    | Error::PosetTooLarge { .. }
                    | Error::ComplexTooLarge { .. }
                    | Error::MatrixBudgetExceeded(_),
                ) => (Status::Skipped, json!({ "budget": e.to_string() })),
                _ => (Status::Fail, json!({ "error": e.to_string() })),
            },
        };
        let elapsed = start.elapsed().as_millis() as u64;
        self.claims.push(Claim {
            id: id.to_string(),
            locus: locus.to_string(),
            status,
            witness,
            wall_clock_ms: self.ctx.timings.then_some(elapsed),
        });
    }
}

pub fn run(suite: &str, ctx: &Context) -> Result<VerificationReport> {
    let mut rec = Recorder { ctx, claims: Vec::new() };
    let names: Vec<&str> = if suite == "all" { SUITES.to_vec() } else { vec![suite] };
    for name in &names {
        match *name {
            "ex61" => ex61(&mut rec),
            "lemma11" => lemma11(&mut rec),
            "thm12" => thm12(&mut rec),
            "prop42" => prop42(&mut rec),
            "cor44" => cor44(&mut rec),
            "prop53-54" => prop53_54(&mut rec),
            "prop62" => prop62(&mut rec),
            "thm13" => thm13(&mut rec),
            "ex65" => ex65(&mut rec),
            "properties" => properties(&mut rec),
            other => anyhow::bail!("unknown suite `{other}`; known: {}, all", SUITES.join(", ")),
        }
    }
    let mut claims = rec.claims;
    claims.sort_by(|a, b| a.id.cmp(&b.id));
    for w in claims.windows(2) {
        assert_ne!(w[0].id, w[1].id, "claim ids are unique");
    }
    let count = |s: Status| claims.iter().filter(|c| c.status == s).count();
    Ok(VerificationReport {
        suite: suite.to_string(),
        seed: names.contains(&"properties").then_some(ctx.seed),
        passed: count(Status::Pass),
        failed: count(Status::Fail),
        skipped: count(Status::Skipped),
        claims,
    })
}

fn z2() -> FiniteGroup {
    FiniteGroup::cyclic(2).expect("Z2")
}

fn default_pair(ctx: &Context) -> (FiniteGroup, FiniteGroup) {
    ctx.groups.clone().unwrap_or_else(|| (FiniteGroup::klein(), z2()))
}

fn iso(g: &PermGroup, target: &FiniteGroup, limits: &Limits) -> Result<Option<Vec<usize>>> {
    Ok(isomorphic_to(g, target, limits)?)
}

/// Claims `Aut(p) ≅ aut` and `E(p) ≅ e` under the given id prefix.
fn aut_and_e(rec: &mut Recorder, id: &str, what: &str, p: &Poset, aut: &FiniteGroup, e: &FiniteGroup) {
    let limits = rec.ctx.limits;
    rec.claim(&format!("{id}.aut"), &format!("Aut({what}) is isomorphic to a group of order {}", aut.order()), || {
        let a = automorphism_group(p, &limits)?;
        let w = iso(&a, aut, &limits)?;
        Ok((w.is_some(), json!({ "order": a.order(), "isomorphism": w })))
    });
    rec.claim(&format!("{id}.e"), &format!("E({what}) = Aut(core) is isomorphic to a group of order {}", e.order()), || {
        let (eg, _) = equivalence_group(p, &limits)?;
        let w = iso(&eg, e, &limits)?;
        Ok((w.is_some(), json!({ "order": eg.order(), "core_size": eg.carrier().len(), "isomorphism": w })))
    });
}

fn ex61(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let w2 = build_w(2);
    rec.claim("ex61.w2-shape", "W_2 has 17 points, no beat points and is its own core", || {
        let w = w2.clone()?;
        let (down, up) = beat_points(&w);
        let ok = w.len() == 17 && down.is_empty() && up.is_empty() && core(&w).0 == w && !is_contractible(&w);
        Ok((ok, json!({ "points": w.len(), "down_beat": down, "up_beat": up })))
    });
    rec.claim("ex61.w2-rigid", "Aut(W_2) is trivial", || {
        let a = automorphism_group(&w2.clone()?, &limits)?;
        Ok((a.order() == 1, json!({ "order": a.order() })))
    });
    for n in 2..=4 {
        rec.claim(&format!("ex61.w{n}-acyclic"), &format!("K(W_{n}) has trivial reduced homology"), || {
            let h = poset_homology(&build_w(n)?, &limits)?;
            Ok((h.is_trivial(), serde_json::to_value(&h)?))
        });
        rec.claim(&format!("ex61.w{n}-collapse"), &format!("W_{n} collapses to a point by weak point removals"), || {
            let t = collapse_to_point(&build_w(n)?);
            Ok((t.is_some(), json!({ "steps": t.map(|t| t.len()) })))
        });
    }
}

fn lemma11(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let (g, h) = default_pair(rec.ctx);
    let x = match build_x_h_g(&g, &h) {
        Ok(x) => x,
        Err(e) => return rec.claim("lemma11.build", "X_H^G builds", || Err(e.into())),
    };
    let expected = g.order() * (g.generators().len() + 2)
        + h.order() * (h.generators().len() + 2)
        + 10 * h.generators().len() * h.order()
        + h.order() * (h.order() + 1) / 2
        + 1;
    rec.claim("lemma11.size", "|X_H^G| matches the closed-form count", || {
        Ok((x.len() == expected, json!({ "points": x.len(), "expected": expected })))
    });
    aut_and_e(rec, "lemma11.x", "X_H^G", &x, &g, &h);
    rec.claim("lemma11.tau", "τ: Aut(X_H^G) → E(X_H^G) is a homomorphism", || {
        let t = tau(&x, &limits)?;
        Ok((t.is_homomorphism(), json!({ "kernel_order": t.kernel().len(), "image_order": t.image().len() })))
    });
    let dual = build_x_h_g(&h, &g);
    if let Ok(d) = &dual {
        aut_and_e(rec, "lemma11.dual", "X_G^H", d, &h, &g);
    }
    if g.order() != h.order() {
        rec.claim("lemma11.dual-not-isomorphic", "X_H^G and X_G^H are not homeomorphic", || {
            let d = dual.clone()?;
            let w = x.isomorphism_to(&d, &limits)?;
            Ok((w.is_none(), json!({ "isomorphism": w, "sizes": [x.len(), d.len()] })))
        });
        rec.claim("lemma11.dual-not-equivalent", "X_H^G and X_G^H are not homotopy equivalent", || {
            let d = dual.clone()?;
            let eq = homotopy_equivalent(&x, &d, &limits)?;
            Ok((!eq, json!({ "equivalent": eq, "core_sizes": [core(&x).0.len(), core(&d).0.len()] })))
        });
    }
    let stripped = strip_t_gadgets(&x);
    rec.claim("lemma11.strip-size", "removing the T gadgets leaves the closed-form count", || {
        let s = stripped.clone()?;
        let expect = x.len() - 6 * h.generators().len() * h.order();
        Ok((s.len() == expect, json!({ "points": s.len(), "expected": expect })))
    });
    if let Ok(s) = &stripped {
        aut_and_e(rec, "lemma11.stripped", "X_H^G without T gadgets", s, &g, &h);
    }
}

/// `τ` of `X_f` read back as a map on group elements.
fn decoded_tau(x: &Poset, g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<Vec<Option<usize>>> {
    let t = tau(x, limits)?;
    let mut out = vec![None; g.order()];
    for (i, phi) in t.source.perms().iter().enumerate() {
        let a = decode_action(x, phi, g, Role::G)?;
        let b = decode_action(t.target.carrier(), t.target.perm(t.map[i]), h, Role::H)?;
        out[a] = Some(b);
    }
    Ok(out)
}

fn thm12(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let cases = [
        ("z2-v4", z2(), FiniteGroup::klein(), vec![0, 2]),
        ("z2-id", z2(), z2(), vec![0, 1]),
        ("z2-trivial", z2(), z2(), vec![0, 0]),
        ("z4-z2", FiniteGroup::cyclic(4).expect("Z4"), z2(), vec![0, 1, 0, 1]),
    ];
    for (name, g, h, map) in cases {
        let f = match GroupHom::new(g.clone(), h.clone(), map) {
            Ok(f) => f,
            Err(e) => return rec.claim(&format!("thm12.{name}.build"), "homomorphism is valid", || Err(e.into())),
        };
        let x = match build_x_f(&f) {
            Ok(x) => x,
            Err(e) => return rec.claim(&format!("thm12.{name}.build"), "X_f builds", || Err(e.into())),
        };
        aut_and_e(rec, &format!("thm12.{name}"), "X_f", &x, &g, &h);
        rec.claim(&format!("thm12.{name}.tau"), "τ decoded through the column labels equals f", || {
            let decoded = decoded_tau(&x, &g, &h, &limits)?;
            let expect: Vec<Option<usize>> = f.map().iter().map(|&b| Some(b)).collect();
            let t = tau(&x, &limits)?;
            let ok = decoded == expect && t.kernel().len() == f.kernel().len() && t.image().len() == f.image().len();
            Ok((ok, json!({ "tau": decoded, "f": f.map(), "kernel_order": t.kernel().len() })))
        });
    }
}

fn prop42(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let pairs = [("z2-z2", z2(), z2()), ("v4-z2", FiniteGroup::klein(), z2()), ("z2-z3", z2(), FiniteGroup::cyclic(3).expect("Z3"))];
    for (name, g, h) in pairs {
        rec.claim(
            &format!("prop42.{name}"),
            "K(X_H^G) is a homology wedge of 3·|H|·|S'_H| circles, with 1 - χ as cross-check",
            || {
                let x = build_x_h_g(&g, &h)?;
                let k = wedge_of_circles_check(&x, &limits)?;
                let chi = order_complex(&x, &limits)?.euler_characteristic();
                let formula = 3 * h.order() * h.generators().len();
                let ok = k == Some(formula) && 1 - chi == formula as i64;
                Ok((ok, json!({ "snf_count": k, "one_minus_chi": 1 - chi, "formula": formula })))
            },
        );
    }
}

fn cor44(rec: &mut Recorder) {
    let g = z2();
    let mut cores = Vec::new();
    for n in 1..=3 {
        match build_t_n_variant(&g, &g, n) {
            Ok(x) => {
                aut_and_e(rec, &format!("cor44.n{n}"), &format!("X_H^G with T^{n} gadgets"), &x, &g, &g);
                cores.push(core(&x).0.len());
            }
            Err(e) => return rec.claim(&format!("cor44.n{n}.build"), "T^n variant builds", || Err(e.into())),
        }
    }
    rec.claim("cor44.distinct-cores", "the T^n variants have cores of pairwise different sizes", || {
        let mut d = cores.clone();
        d.sort_unstable();
        d.dedup();
        Ok((d.len() == cores.len(), json!({ "core_sizes": cores })))
    });
}

fn prop53_54(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let homs = GroupHom::all(&z2(), &FiniteGroup::klein());
    let spaces: Vec<Result<Poset, Error>> = homs.iter().map(build_x_f).collect();
    for (i, p) in spaces.iter().enumerate() {
        for (j, q) in spaces.iter().enumerate() {
            rec.claim(
                &format!("prop53-54.f{i}-f{j}"),
                "X_f and X_g are homotopy equivalent, and homeomorphic exactly when f = g",
                || {
                    let (p, q) = (p.clone()?, q.clone()?);
                    let eq = homotopy_equivalent(&p, &q, &limits)?;
                    let w = p.isomorphism_to(&q, &limits)?;
                    let ok = eq && w.is_some() == (i == j);
                    Ok((ok, json!({ "f": homs[i].map(), "g": homs[j].map(), "equivalent": eq, "isomorphism": w })))
                },
            );
        }
    }
}

fn prop62(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let (g, h) = default_pair(rec.ctx);
    let x = match build_prop62(&g, &h) {
        Ok(x) => x,
        Err(e) => return rec.claim("prop62.build", "X_H^G ⊛ W_2 builds", || Err(e.into())),
    };
    aut_and_e(rec, "prop62", "X_H^G ⊛ W_2", &x, &g, &h);
    rec.claim("prop62.acyclic", "K(X_H^G ⊛ W_2) has trivial reduced homology", || {
        let k = order_complex(&x, &limits)?;
        let hom = homology(&k)?;
        Ok((hom.is_trivial(), json!({ "simplices": k.len(), "homology": hom })))
    });
}

fn thm13(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let z3 = FiniteGroup::cyclic(3).expect("Z3");
    let built = minimal_sphere_model(2).and_then(|s| build_thm13(&s, &z3, &z2()));
    let b = match built {
        Ok(b) => b,
        Err(e) => return rec.claim("thm13.build", "realization over the S^2 model builds", || Err(e.into())),
    };
    aut_and_e(rec, "thm13.s2", "realization over S^2", &b.poset, &z3, &z2());
    rec.claim("thm13.s2.homology", "reduced homology is that of S^2", || {
        let h = poset_homology(&b.poset, &limits)?;
        let ok = h.groups.iter().all(|g| g.torsion.is_empty() && g.betti == usize::from(g.degree == 2));
        Ok((ok, serde_json::to_value(&h)?))
    });
}

fn ex65(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let s3 = FiniteGroup::symmetric(3).expect("S3");
    let built = minimal_sphere_model(1).and_then(|s| build_thm13(&s, &FiniteGroup::trivial(), &s3));
    let b = match built {
        Ok(b) => b,
        Err(e) => return rec.claim("ex65.build", "realization over the S^1 model builds", || Err(e.into())),
    };
    aut_and_e(rec, "ex65", "realization over S^1", &b.poset, &FiniteGroup::trivial(), &s3);
    rec.claim("ex65.homology", "reduced homology is that of S^1", || {
        let h = poset_homology(&b.poset, &limits)?;
        let ok = h.groups.iter().all(|g| g.torsion.is_empty() && g.betti == usize::from(g.degree == 1));
        Ok((ok, serde_json::to_value(&h)?))
    });
    rec.claim("ex65.action", "every class of E acts as the identity on H_1", || {
        let (c, _) = core(&b.poset);
        let e = automorphism_group(&c, &limits)?;
        let mats = e
            .perms()
            .iter()
            .map(|phi| homology_action(&c, phi, 1, &limits))
            .collect::<Result<Vec<_>, _>>()?;
        Ok((mats.iter().all(|m| m.len() == 1 && is_identity(m)), json!({ "matrices": mats })))
    });
    rec.claim("ex65.e-star", "the homologically trivial subgroup is all of E, which is nonabelian", || {
        let (e, sub) = homologically_trivial_action_subgroup(&b.poset, &limits)?;
        Ok((sub.len() == e.order() && !e.is_abelian(), json!({ "e_order": e.order(), "subgroup_order": sub.len(), "abelian": e.is_abelian() })))
    });
}

fn random_poset(rng: &mut ChaCha8Rng, n: usize, tag: &str) -> Result<Poset> {
    let mut rel = Vec::new();
    for a in 0..n {
        for b in a + 1..n {
            if rng.gen_bool(0.3) {
                rel.push((a, b));
            }
        }
    }
    Ok(Poset::from_relations((0..n).map(|i| format!("{tag}{i}")).collect(), &rel)?)
}

fn properties(rec: &mut Recorder) {
    let limits = rec.ctx.limits;
    let seed = rec.ctx.seed;
    rec.claim("properties.iso-invariants", "isomorphisms preserve height, degrees and beat kinds (100 posets)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for trial in 0..100 {
            let n = rng.gen_range(1..=14);
            let p = random_poset(&mut rng, n, "v")?;
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let q = p.reordered(&order)?;
            let Some(m) = p.isomorphism_to(&q, &limits)? else {
                return Ok((false, json!({ "trial": trial, "poset": p.to_file() })));
            };
            let (pb, qb) = (beat_points(&p), beat_points(&q));
            let (pw, qw) = (weak_beat_points(&p), weak_beat_points(&q));
            let same = |a: &(Vec<usize>, Vec<usize>), b: &(Vec<usize>, Vec<usize>), x: usize, y: usize| {
                a.0.contains(&x) == b.0.contains(&y) && a.1.contains(&x) == b.1.contains(&y)
            };
            for x in 0..n {
                let y = m[x];
                if p.height_of(x) != q.height_of(y) || p.degree_of(x) != q.degree_of(y) || !same(&pb, &qb, x, y) || !same(&pw, &qw, x, y) {
                    return Ok((false, json!({ "trial": trial, "point": p.label(x), "poset": p.to_file() })));
                }
            }
        }
        Ok((true, json!({ "trials": 100 })))
    });
    rec.claim("properties.core", "cores are idempotent and independent of removal order (100 posets)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(1));
        for trial in 0..100 {
            let n = rng.gen_range(1..=14);
            let p = random_poset(&mut rng, n, "v")?;
            let (c, _) = core(&p);
            let mut order: Vec<usize> = (0..n).collect();
            order.shuffle(&mut rng);
            let (c2, r2) = core_in_order(&p, &order);
            if core(&c).0 != c || !r2.is_valid() || c.isomorphism_to(&c2, &limits)?.is_none() {
                return Ok((false, json!({ "trial": trial, "poset": p.to_file(), "order": order })));
            }
        }
        Ok((true, json!({ "trials": 100 })))
    });
    rec.claim("properties.join-aut", "|Aut(p ⊛ q)| = |Aut(p)|·|Aut(q)| (50 pairs)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(2));
        for trial in 0..50 {
            let (n, m) = (rng.gen_range(1..=8), rng.gen_range(1..=8));
            let p = random_poset(&mut rng, n, "a")?;
            let q = random_poset(&mut rng, m, "b")?;
            let ap = automorphism_group(&p, &limits)?.order();
            let aq = automorphism_group(&q, &limits)?.order();
            let aj = automorphism_group(&p.join(&q), &limits)?.order();
            if aj != ap * aq {
                return Ok((false, json!({ "trial": trial, "orders": [ap, aq, aj] })));
            }
        }
        Ok((true, json!({ "trials": 50 })))
    });
    rec.claim("properties.homology", "Betti numbers are relabeling invariant and match χ (100 complexes)", || {
        let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_add(3));
        for trial in 0..100 {
            let v = rng.gen_range(1..=12);
            let vertices: Vec<String> = (0..v).map(|i| format!("v{i}")).collect();
            let facets: Vec<Vec<u32>> = (0..rng.gen_range(1..=8))
                .map(|_| {
                    let mut s: Vec<u32> = (0..v as u32).collect();
                    s.shuffle(&mut rng);
                    s.truncate(rng.gen_range(1..=4.min(v)));
                    s
                })
                .collect();
            let k = SimplicialComplex::from_facets(vertices.clone(), &facets, &limits)?;
            let mut perm: Vec<u32> = (0..v as u32).collect();
            perm.shuffle(&mut rng);
            let moved: Vec<Vec<u32>> = facets.iter().map(|f| f.iter().map(|&x| perm[x as usize]).collect()).collect();
            let k2 = SimplicialComplex::from_facets(vertices, &moved, &limits)?;
            let (h, h2) = (homology(&k)?, homology(&k2)?);
            if h != h2 || h.reduced_euler() != k.euler_characteristic() - 1 {
                return Ok((false, json!({ "trial": trial, "facets": facets })));
            }
        }
        Ok((true, json!({ "trials": 100 })))
    });
    rec.claim("properties.tau-law", "τ is a homomorphism on every constructed space", || {
        let v = FiniteGroup::klein();
        let spaces = [
            build_x_h_g(&v, &z2())?,
            build_x_h_g(&z2(), &v)?,
            build_x_f(&GroupHom::new(z2(), v.clone(), vec![0, 2])?)?,
            build_t_n_variant(&z2(), &z2(), 1)?,
            build_t_n_variant(&z2(), &z2(), 2)?,
            build_prop62(&v, &z2())?,
        ];
        let laws: Vec<bool> = spaces
            .iter()
            .map(|x| tau(x, &limits).map(|t| t.is_homomorphism()))
            .collect::<Result<_, _>>()?;
        Ok((laws.iter().all(|&b| b), json!({ "spaces": laws.len() })))
    });
}
