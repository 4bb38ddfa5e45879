//! Individualization-refinement search for order isomorphisms.
//!
//! Both posets are colored jointly (the disjoint union of their Hasse digraphs)
//! so that color ids mean the same thing on either side. Colors start from
//! order invariants and are refined by the multisets of lower-cover and
//! upper-cover colors until stable.

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset::Poset;

struct Joint {
    /// Elements of the left poset, then the right one.
    n: usize,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    nodes: u64,
    max_nodes: u64,
}

impl Joint {
    fn new(p: &Poset, q: &Poset, limits: &Limits) -> Joint {
        let n = p.len();
        let mut lower = Vec::with_capacity(2 * n);
        let mut upper = Vec::with_capacity(2 * n);
        for (side, r) in [(0, p), (n, q)] {
            for i in 0..r.len() {
                lower.push(r.lower_covers(i).iter().map(|&j| j + side).collect());
                upper.push(r.upper_covers(i).iter().map(|&j| j + side).collect());
            }
        }
        Joint { n, lower, upper, nodes: 0, max_nodes: limits.max_search_nodes }
    }

    fn tick(&mut self) -> Result<()> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return Err(Error::SearchBudgetExceeded {
                cap: "max_search_nodes",
                limit: self.max_nodes,
            });
        }
        Ok(())
    }

    /// Refines to the coarsest stable coloring below `colors`; ids are dense and
    /// ordered by signature so the old order between classes is kept.
    fn refine(&self, colors: &mut Vec<u32>) {
        let mut classes = relabel_dense(colors);
        loop {
            let sigs: Vec<(u32, Vec<u32>, Vec<u32>)> = (0..colors.len())
                .map(|v| {
                    let mut lo: Vec<u32> = self.lower[v].iter().map(|&u| colors[u]).collect();
                    let mut up: Vec<u32> = self.upper[v].iter().map(|&u| colors[u]).collect();
                    lo.sort_unstable();
                    up.sort_unstable();
                    (colors[v], lo, up)
                })
                .collect();
            let mut order: Vec<usize> = (0..colors.len()).collect();
            order.sort_by(|&a, &b| sigs[a].cmp(&sigs[b]));
            let mut next = vec![0u32; colors.len()];
            let mut c = 0u32;
            for w in 0..order.len() {
                if w > 0 && sigs[order[w]] != sigs[order[w - 1]] {
                    c += 1;
                }
                next[order[w]] = c;
            }
            let count = if order.is_empty() { 0 } else { c as usize + 1 };
            *colors = next;
            if count == classes {
                return;
            }
            classes = count;
        }
    }

    /// `None` when some class has different sizes on the two sides; otherwise
    /// the class to branch on (`Some(None)` when the coloring is discrete).
    fn target_cell(&self, colors: &[u32]) -> Option<Option<u32>> {
        let k = colors.iter().copied().max().map_or(0, |m| m as usize + 1);
        let mut left = vec![0usize; k];
        let mut right = vec![0usize; k];
        for v in 0..self.n {
            left[colors[v] as usize] += 1;
            right[colors[v + self.n] as usize] += 1;
        }
        if left != right {
            return None;
        }
        let mut best: Option<(usize, u32)> = None;
        for (c, &size) in left.iter().enumerate() {
            if size > 1 && best.is_none_or(|(s, _)| size < s) {
                best = Some((size, c as u32));
            }
        }
        Some(best.map(|(_, c)| c))
    }

    fn leaf_map(&self, colors: &[u32]) -> Vec<usize> {
        let mut by_color = vec![usize::MAX; 2 * self.n];
        for v in self.n..2 * self.n {
            by_color[colors[v] as usize] = v - self.n;
        }
        (0..self.n).map(|v| by_color[colors[v] as usize]).collect()
    }

    /// Visits every isomorphism reachable from `colors` in canonical order;
    /// `visit` returns `false` to stop.
    fn explore(
        &mut self,
        colors: Vec<u32>,
        visit: &mut dyn FnMut(Vec<usize>) -> Result<bool>,
    ) -> Result<bool> {
        self.tick()?;
        let mut colors = colors;
        self.refine(&mut colors);
        let cell = match self.target_cell(&colors) {
            None => return Ok(true),
            Some(c) => c,
        };
        let Some(cell) = cell else {
            return visit(self.leaf_map(&colors));
        };
        let v = (0..self.n).find(|&v| colors[v] == cell).expect("cell has a left element");
        let fresh = colors.iter().copied().max().unwrap_or(0) + 1;
        let candidates: Vec<usize> =
            (self.n..2 * self.n).filter(|&w| colors[w] == cell).collect();
        for w in candidates {
            let mut next = colors.clone();
            next[v] = fresh;
            next[w] = fresh;
            if !self.explore(next, visit)? {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

fn relabel_dense(colors: &mut [u32]) -> usize {
    let mut distinct: Vec<u32> = colors.to_vec();
    distinct.sort_unstable();
    distinct.dedup();
    for c in colors.iter_mut() {
        *c = distinct.binary_search(c).expect("present") as u32;
    }
    distinct.len()
}

/// Order invariants shared by both sides: height, degree pair, sizes of the
/// down- and up-set.
fn seed_colors(p: &Poset, q: &Poset) -> Vec<u32> {
    let key = |r: &Poset, i: usize| {
        let d = r.degree_of(i);
        (
            r.height_of(i),
            d.below,
            d.above,
            r.strictly_below(i).count_ones(..),
            r.strictly_above(i).count_ones(..),
        )
    };
    let keys: Vec<_> = (0..p.len()).map(|i| key(p, i)).chain((0..q.len()).map(|i| key(q, i))).collect();
    let mut sorted = keys.clone();
    sorted.sort_unstable();
    sorted.dedup();
    keys.iter().map(|k| sorted.binary_search(k).expect("present") as u32).collect()
}

fn check_size(p: &Poset, limits: &Limits) -> Result<()> {
    if p.len() > limits.max_elements {
        return Err(Error::PosetTooLarge { cap: "max_elements", limit: limits.max_elements as u64 });
    }
    Ok(())
}

/// First order isomorphism `p → q` in canonical search order.
pub fn find_isomorphism(p: &Poset, q: &Poset, limits: &Limits) -> Result<Option<Vec<usize>>> {
    check_size(p, limits)?;
    check_size(q, limits)?;
    if p.len() != q.len() || p.num_covers() != q.num_covers() {
        return Ok(None);
    }
    let mut joint = Joint::new(p, q, limits);
    let mut found = None;
    joint.explore(seed_colors(p, q), &mut |m| {
        if p.is_isomorphism(q, &m) {
            found = Some(m);
            Ok(false)
        } else {
            Ok(true)
        }
    })?;
    Ok(found)
}

/// Every automorphism of `p`, sorted lexicographically (identity first).
pub fn all_automorphisms(p: &Poset, limits: &Limits) -> Result<Vec<Vec<usize>>> {
    check_size(p, limits)?;
    let mut joint = Joint::new(p, p, limits);
    let mut out = Vec::new();
    let cap = limits.max_group_order;
    let mut too_large = false;
    joint.explore(seed_colors(p, p), &mut |m| {
        if !p.is_automorphism(&m) {
            return Err(Error::InternalAssertionFailed(
                "discrete stable coloring gave a non-automorphism".into(),
            ));
        }
        out.push(m);
        if out.len() > cap {
            too_large = true;
            return Ok(false);
        }
        Ok(true)
    })?;
    if too_large {
        return Err(Error::GroupTooLarge { cap: "max_group_order", limit: cap as u64 });
    }
    out.sort();
    Ok(out)
}
