#![allow(clippy::needless_range_loop)]

use alexlab_core::homotopy::{
    beat_points, collapse_to_point, core, core_in_order, is_contractible, reduce_weak, replay, weak_beat_points,
};
use alexlab_core::symmetry::automorphism_group;
use alexlab_core::{Limits, Poset};
use proptest::prelude::*;

/// A poset on `0..n` whose relations all point from lower to higher index.
fn poset_strategy(max: usize, tag: &'static str) -> impl Strategy<Value = Poset> {
    (1..=max).prop_flat_map(move |n| {
        proptest::collection::vec(proptest::bool::weighted(0.3), n * (n - 1) / 2).prop_map(move |bits| {
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

fn shuffled(p: &Poset, seed: u64) -> (Poset, Vec<usize>) {
    let n = p.len();
    let mut order: Vec<usize> = (0..n).collect();
    let mut s = seed;
    for i in (1..n).rev() {
        s = s.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
        order.swap(i, (s >> 33) as usize % (i + 1));
    }
    (p.reordered(&order).unwrap(), order)
}

/// Strict order by repeated boolean squaring of the cover matrix.
fn closure_by_powering(p: &Poset) -> Vec<Vec<bool>> {
    let n = p.len();
    let mut m = vec![vec![false; n]; n];
    for (a, b) in p.covers() {
        m[a][b] = true;
    }
    loop {
        let mut next = m.clone();
        for i in 0..n {
            for k in 0..n {
                if m[i][k] {
                    for j in 0..n {
                        next[i][j] |= m[k][j];
                    }
                }
            }
        }
        if next == m {
            return m;
        }
        m = next;
    }
}

proptest! {
    #![proptest_config(ProptestConfig { cases: 100, ..ProptestConfig::default() })]

    #[test]
    fn strict_order_matches_matrix_powering(p in poset_strategy(12, "v")) {
        let m = closure_by_powering(&p);
        for a in 0..p.len() {
            for b in 0..p.len() {
                prop_assert_eq!(p.lt(a, b), m[a][b]);
            }
        }
    }

    #[test]
    fn covers_are_not_implied(p in poset_strategy(12, "v")) {
        for (a, b) in p.covers() {
            prop_assert!(!(0..p.len()).any(|c| p.lt(a, c) && p.lt(c, b)));
        }
    }

    #[test]
    fn json_round_trip(p in poset_strategy(10, "v")) {
        prop_assert_eq!(Poset::from_json(&p.to_json()).unwrap(), p);
    }

    #[test]
    fn dual_swaps_degrees(p in poset_strategy(10, "v")) {
        let d = p.dual();
        for x in 0..p.len() {
            let (a, b) = (p.degree_of(x), d.degree_of(x));
            prop_assert_eq!((a.below, a.above), (b.above, b.below));
        }
        prop_assert_eq!(d.dual(), p);
    }

    #[test]
    fn isomorphisms_preserve_local_invariants(p in poset_strategy(14, "v"), seed in any::<u64>()) {
        let (q, _) = shuffled(&p, seed);
        let iso = p.isomorphism_to(&q, &Limits::default()).unwrap().expect("shuffle is an isomorphism");
        prop_assert!(p.is_isomorphism(&q, &iso));
        let (pb, qb) = (beat_points(&p), beat_points(&q));
        let (pw, qw) = (weak_beat_points(&p), weak_beat_points(&q));
        for x in 0..p.len() {
            let y = iso[x];
            prop_assert_eq!(p.height_of(x), q.height_of(y));
            prop_assert_eq!(p.degree_of(x), q.degree_of(y));
            prop_assert_eq!(pb.0.contains(&x), qb.0.contains(&y));
            prop_assert_eq!(pb.1.contains(&x), qb.1.contains(&y));
            prop_assert_eq!(pw.0.contains(&x), qw.0.contains(&y));
            prop_assert_eq!(pw.1.contains(&x), qw.1.contains(&y));
        }
    }

    #[test]
    fn core_is_idempotent_and_order_independent(p in poset_strategy(14, "v"), seed in any::<u64>()) {
        let (c, r) = core(&p);
        prop_assert!(r.is_valid());
        prop_assert_eq!(beat_points(&c), (vec![], vec![]));
        prop_assert_eq!(&core(&c).0, &c);
        let (_, order) = shuffled(&p, seed);
        let (c2, r2) = core_in_order(&p, &order);
        prop_assert!(r2.is_valid());
        prop_assert!(c.isomorphism_to(&c2, &Limits::default()).unwrap().is_some());
        prop_assert_eq!(is_contractible(&p), c.len() == 1);
    }

    #[test]
    fn weak_reduction_replays(p in poset_strategy(12, "v")) {
        let (r, trace) = reduce_weak(&p);
        prop_assert_eq!(replay(&p, &trace).unwrap(), r.clone());
        prop_assert_eq!(collapse_to_point(&p).is_some(), r.len() == 1);
    }

    #[test]
    fn automorphism_count_of_join_multiplies(p in poset_strategy(8, "a"), q in poset_strategy(8, "b")) {
        let l = Limits::default();
        let ap = automorphism_group(&p, &l).unwrap().order();
        let aq = automorphism_group(&q, &l).unwrap().order();
        prop_assert_eq!(automorphism_group(&p.join(&q), &l).unwrap().order(), ap * aq);
    }

    #[test]
    fn automorphism_count_matches_brute_force(p in poset_strategy(7, "v")) {
        let n = p.len();
        let mut perm: Vec<usize> = (0..n).collect();
        let mut count = 0;
        // Heap's algorithm over all n! permutations.
        let mut c = vec![0; n];
        if p.is_automorphism(&perm) { count += 1; }
        let mut i = 0;
        while i < n {
            if c[i] < i {
                if i % 2 == 0 { perm.swap(0, i) } else { perm.swap(c[i], i) }
                if p.is_automorphism(&perm) { count += 1; }
                c[i] += 1;
                i = 0;
            } else {
                c[i] = 0;
                i += 1;
            }
        }
        prop_assert_eq!(automorphism_group(&p, &Limits::default()).unwrap().order(), count);
    }
}
