#![allow(clippy::needless_range_loop)]

use std::collections::{BTreeSet, HashMap};

use alexlab_core::homotopy::is_contractible;
use alexlab_core::invariants::{homology, homology_with_basis, order_complex, SimplicialComplex};
use alexlab_core::symmetry::automorphism_group;
use alexlab_core::{Limits, Poset};
use num_rational::BigRational;
use num_traits::{One, Zero};
use proptest::prelude::*;

/// Rank of a rational matrix by fraction-exact Gauss–Jordan elimination.
fn rational_rank(mut m: Vec<Vec<BigRational>>) -> usize {
    let cols = m.first().map_or(0, Vec::len);
    let mut r = 0;
    for c in 0..cols {
        let Some(p) = (r..m.len()).find(|&i| !m[i][c].is_zero()) else { continue };
        m.swap(r, p);
        let pivot = m[r][c].clone();
        for i in 0..m.len() {
            if i != r && !m[i][c].is_zero() {
                let factor = m[i][c].clone() / pivot.clone();
                for j in c..cols {
                    let t = m[r][j].clone() * factor.clone();
                    m[i][j] -= t;
                }
            }
        }
        r += 1;
    }
    r
}

/// Reduced rational Betti numbers from boundary ranks, with the augmentation
/// as the boundary of the vertices.
fn rational_betti(k: &SimplicialComplex) -> Vec<usize> {
    let top = match k.dimension() {
        Some(t) => t,
        None => return vec![],
    };
    let boundary_rank = |d: usize| -> usize {
        let rows: Vec<Vec<u32>> = if d == 0 { vec![vec![]] } else { k.of_dim(d - 1).to_vec() };
        let index: HashMap<&[u32], usize> = rows.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let cols = k.of_dim(d);
        let mut m = vec![vec![BigRational::zero(); cols.len()]; rows.len()];
        for (j, s) in cols.iter().enumerate() {
            for i in 0..s.len() {
                let mut f = s.clone();
                f.remove(i);
                m[index[f.as_slice()]][j] = if i % 2 == 0 { BigRational::one() } else { -BigRational::one() };
            }
        }
        rational_rank(m)
    };
    let ranks: Vec<usize> = (0..=top + 1).map(|d| if d <= top { boundary_rank(d) } else { 0 }).collect();
    (0..=top).map(|d| k.of_dim(d).len() - ranks[d] - ranks[d + 1]).collect()
}

fn complex_strategy() -> impl Strategy<Value = SimplicialComplex> {
    (1usize..=12).prop_flat_map(|v| {
        proptest::collection::vec(proptest::collection::btree_set(0..v as u32, 1..=4.min(v)), 1..=8).prop_map(
            move |facets| {
                let facets: Vec<Vec<u32>> = facets.into_iter().map(|s| s.into_iter().collect()).collect();
                let vertices = (0..v).map(|i| format!("v{i}")).collect();
                SimplicialComplex::from_facets(vertices, &facets, &Limits::default()).unwrap()
            },
        )
    })
}

fn poset_strategy(max: usize, tag: &'static str) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(0.35), n * (n - 1) / 2).prop_map(move |bits| {
            let mut rel = Vec::new();
            let mut k = 0;
            for a in 0..n {
                for b in a + 1..n {
                    if bits[k] {
                        rel.push((a, b));
                    }
                    k += 1;
                }
            }
            Poset::from_relations((0..n).map(|i| format!("{tag}{i}")).collect(), &rel).unwrap()
        })
    })
}

fn mat_mul(a: &[Vec<i64>], b: &[Vec<i64>]) -> Vec<Vec<i64>> {
    let n = b.first().map_or(0, Vec::len);
    a.iter().map(|row| (0..n).map(|j| row.iter().zip(b).map(|(x, r)| x * r[j]).sum()).collect()).collect()
}

fn reduce_torsion_rows(m: &mut [Vec<i64>], moduli: &[u64]) {
    for (row, &q) in m.iter_mut().zip(moduli) {
        if q > 1 {
            for x in row.iter_mut() {
                *x = x.rem_euclid(q as i64);
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn betti_numbers_match_rational_rank(k in complex_strategy()) {
        let h = homology(&k).unwrap();
        for (d, b) in rational_betti(&k).into_iter().enumerate() {
            prop_assert_eq!(h.betti(d), b, "degree {}", d);
        }
        prop_assert_eq!(h.reduced_euler(), k.euler_characteristic() - 1);
    }

    #[test]
    fn homology_ignores_vertex_names(k in complex_strategy()) {
        let n = k.vertices().len() as u32;
        let flipped: Vec<Vec<u32>> = k.simplices().iter().map(|s| s.iter().map(|&v| n - 1 - v).collect()).collect();
        let k2 = SimplicialComplex::new(k.vertices().to_vec(), flipped).unwrap();
        prop_assert_eq!(homology(&k).unwrap(), homology(&k2).unwrap());
    }

    #[test]
    fn contractible_posets_are_acyclic(p in poset_strategy(9, "p")) {
        if is_contractible(&p) {
            prop_assert!(homology(&order_complex(&p, &Limits::default()).unwrap()).unwrap().is_trivial());
        }
    }

    #[test]
    fn order_complex_counts_chains(p in poset_strategy(10, "p")) {
        let n = p.len();
        let brute = (1u32..1 << n)
            .filter(|&mask| {
                let s: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
                s.iter().all(|&a| s.iter().all(|&b| p.comparable(a, b)))
            })
            .count();
        prop_assert_eq!(order_complex(&p, &Limits::default()).unwrap().len(), brute);
    }

    #[test]
    fn order_complex_of_join_is_simplicial_join(p in poset_strategy(5, "a"), q in poset_strategy(5, "b")) {
        let l = Limits::default();
        let joined = order_complex(&p.join(&q), &l).unwrap();
        let expected = order_complex(&p, &l).unwrap().join(&order_complex(&q, &l).unwrap());
        let as_sets = |k: &SimplicialComplex| -> BTreeSet<BTreeSet<String>> {
            k.simplices().iter().map(|s| s.iter().map(|&v| k.vertices()[v as usize].clone()).collect()).collect()
        };
        prop_assert_eq!(as_sets(&joined), as_sets(&expected));
    }

    #[test]
    fn homology_action_is_functorial(p in poset_strategy(8, "p")) {
        let l = Limits::default();
        let aut = automorphism_group(&p, &l).unwrap();
        let k = order_complex(&p, &l).unwrap();
        let basis = homology_with_basis(&k).unwrap();
        let actions = basis.actions(&k, aut.perms()).unwrap();
        let summary = basis.summary().clone();
        for g in &summary.groups {
            let d = g.degree;
            let mut moduli = vec![0u64; g.betti];
            moduli.extend(g.torsion.iter().copied());
            prop_assert!(alexlab_core::invariants::is_identity(&actions[0][d]));
            for i in 0..aut.order() {
                for j in 0..aut.order() {
                    let mut prod = mat_mul(&actions[i][d], &actions[j][d]);
                    reduce_torsion_rows(&mut prod, &moduli);
                    prop_assert_eq!(&prod, &actions[aut.compose(i, j)][d]);
                }
            }
        }
    }
}

#[test]
fn seven_vertex_torus() {
    let torus: Vec<Vec<u32>> = (0..7u32).flat_map(|i| [vec![i, (i + 1) % 7, (i + 3) % 7], vec![i, (i + 2) % 7, (i + 3) % 7]]).collect();
    let v = (0..7).map(|i| format!("t{i}")).collect();
    let k = SimplicialComplex::from_facets(v, &torus, &Limits::default()).unwrap();
    let h = homology(&k).unwrap();
    assert_eq!((h.betti(0), h.betti(1), h.betti(2)), (0, 2, 1));
    assert!(h.groups.iter().all(|g| g.torsion.is_empty()));
}
