//! Beat points, cores and elementary collapses.

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset::Poset;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum PointKind {
    DownBeat,
    UpBeat,
    DownWeak,
    UpWeak,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CollapseStep {
    pub element: String,
    pub kind: PointKind,
}

/// Ordered list of removals; serializes as `[{"element": .., "kind": ..}, ..]`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct CollapseTrace(pub Vec<CollapseStep>);

impl CollapseTrace {
    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("trace serializes")
    }

    pub fn from_json(text: &str) -> Result<CollapseTrace> {
        Ok(serde_json::from_str(text)?)
    }
}

/// Retraction of `source` onto its sub-poset `target`, as composed from the
/// single-point beat removals.
#[derive(Debug, Clone)]
pub struct Retraction {
    pub source: Poset,
    pub target: Poset,
    /// Source index to target index.
    pub map: Vec<usize>,
    /// Target index to source index.
    pub inclusion: Vec<usize>,
}

impl Retraction {
    pub fn apply(&self, i: usize) -> usize {
        self.map[i]
    }

    /// `r` is order preserving and `r ∘ i = id`.
    pub fn is_valid(&self) -> bool {
        let as_source: Vec<usize> = self.map.iter().map(|&t| self.inclusion[t]).collect();
        self.source.is_order_preserving(&self.source, &as_source)
            && self.inclusion.iter().enumerate().all(|(t, &s)| self.map[s] == t)
    }
}

/// Working copy of a poset restricted to an alive set, with its own cover
/// lists kept current under single-point removals.
#[derive(Clone)]
pub(crate) struct Shrinker<'a> {
    p: &'a Poset,
    alive: FixedBitSet,
    count: usize,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
}

impl<'a> Shrinker<'a> {
    pub(crate) fn new(p: &'a Poset) -> Self {
        let n = p.len();
        let mut alive = FixedBitSet::with_capacity(n);
        alive.insert_range(..);
        Shrinker {
            p,
            alive,
            count: n,
            lower: (0..n).map(|i| p.lower_covers(i).to_vec()).collect(),
            upper: (0..n).map(|i| p.upper_covers(i).to_vec()).collect(),
        }
    }

    /// The induced sub-poset on `set`.
    pub(crate) fn restricted(p: &'a Poset, set: &FixedBitSet) -> Self {
        let n = p.len();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for y in set.ones() {
            let mut below = p.strictly_below(y).clone();
            below.intersect_with(set);
            for x in below.ones() {
                let mut between = below.clone();
                between.intersect_with(p.strictly_above(x));
                if between.is_clear() {
                    lower[y].push(x);
                    upper[x].push(y);
                }
            }
        }
        Shrinker { p, alive: set.clone(), count: set.count_ones(..), lower, upper }
    }

    pub(crate) fn count(&self) -> usize {
        self.count
    }

    pub(crate) fn alive(&self) -> &FixedBitSet {
        &self.alive
    }

    pub(crate) fn is_alive(&self, x: usize) -> bool {
        self.alive.contains(x)
    }

    pub(crate) fn beat_kind(&self, x: usize) -> Option<PointKind> {
        if self.lower[x].len() == 1 {
            Some(PointKind::DownBeat)
        } else if self.upper[x].len() == 1 {
            Some(PointKind::UpBeat)
        } else {
            None
        }
    }

    /// Whether the alive part of `U_x ∖ {x}` (or `F_x ∖ {x}`) is contractible.
    pub(crate) fn weak_kind(&self, x: usize) -> Option<PointKind> {
        let mut below = self.p.strictly_below(x).clone();
        below.intersect_with(&self.alive);
        if is_contractible_set(self.p, &below) {
            return Some(PointKind::DownWeak);
        }
        let mut above = self.p.strictly_above(x).clone();
        above.intersect_with(&self.alive);
        if is_contractible_set(self.p, &above) {
            return Some(PointKind::UpWeak);
        }
        None
    }

    /// The point a beat point retracts to: its unique lower or upper cover.
    pub(crate) fn beat_target(&self, x: usize, kind: PointKind) -> usize {
        match kind {
            PointKind::DownBeat => self.lower[x][0],
            PointKind::UpBeat => self.upper[x][0],
            _ => unreachable!("only beat points have a retraction target"),
        }
    }

    pub(crate) fn remove(&mut self, x: usize) {
        let lows = std::mem::take(&mut self.lower[x]);
        let ups = std::mem::take(&mut self.upper[x]);
        self.alive.set(x, false);
        self.count -= 1;
        for &a in &lows {
            self.upper[a].retain(|&y| y != x);
        }
        for &b in &ups {
            self.lower[b].retain(|&y| y != x);
        }
        for &a in &lows {
            for &b in &ups {
                let mut between = self.p.strictly_above(a).clone();
                between.intersect_with(self.p.strictly_below(b));
                between.intersect_with(&self.alive);
                if between.is_clear() {
                    self.upper[a].push(b);
                    self.lower[b].push(a);
                }
            }
        }
    }

    /// Removes beat points until none are left, scanning in index order and
    /// repeating the scan while something was removed. Returns the removals
    /// with their retraction targets.
    pub(crate) fn strip_beat_points(&mut self) -> Vec<(usize, PointKind, usize)> {
        let mut removed = Vec::new();
        loop {
            let mut changed = false;
            for x in 0..self.p.len() {
                if self.count <= 1 || !self.alive.contains(x) {
                    continue;
                }
                if let Some(kind) = self.beat_kind(x) {
                    let t = self.beat_target(x, kind);
                    self.remove(x);
                    removed.push((x, kind, t));
                    changed = true;
                }
            }
            if !changed {
                return removed;
            }
        }
    }

    pub(crate) fn alive_indices(&self) -> Vec<usize> {
        self.alive.ones().collect()
    }
}

/// Whether the sub-poset of `p` induced on `set` is contractible (nonempty
/// with a one-point core).
pub(crate) fn is_contractible_set(p: &Poset, set: &FixedBitSet) -> bool {
    if set.is_clear() {
        return false;
    }
    let mut s = Shrinker::restricted(p, set);
    s.strip_beat_points();
    s.count() == 1
}

/// Down and up beat points of `p`, as sorted index lists.
pub fn beat_points(p: &Poset) -> (Vec<usize>, Vec<usize>) {
    let down = (0..p.len()).filter(|&x| p.lower_covers(x).len() == 1).collect();
    let up = (0..p.len()).filter(|&x| p.upper_covers(x).len() == 1).collect();
    (down, up)
}

/// Down and up weak beat points of `p`, as sorted index lists.
pub fn weak_beat_points(p: &Poset) -> (Vec<usize>, Vec<usize>) {
    let down = (0..p.len()).filter(|&x| is_contractible_set(p, p.strictly_below(x))).collect();
    let up = (0..p.len()).filter(|&x| is_contractible_set(p, p.strictly_above(x))).collect();
    (down, up)
}

fn retraction_from(p: &Poset, s: &Shrinker<'_>, removed: &[(usize, PointKind, usize)]) -> Retraction {
    let n = p.len();
    let mut step: Vec<usize> = (0..n).collect();
    for &(x, _, t) in removed {
        step[x] = t;
    }
    let kept = s.alive_indices();
    let mut pos = vec![usize::MAX; n];
    for (k, &i) in kept.iter().enumerate() {
        pos[i] = k;
    }
    let map = (0..n)
        .map(|mut x| {
            while !s.is_alive(x) {
                x = step[x];
            }
            pos[x]
        })
        .collect();
    Retraction { source: p.clone(), target: p.subposet(&kept), map, inclusion: kept }
}

/// The core of `p` (beat points removed in index order) and the retraction
/// onto it.
pub fn core(p: &Poset) -> (Poset, Retraction) {
    let mut s = Shrinker::new(p);
    let removed = s.strip_beat_points();
    let r = retraction_from(p, &s, &removed);
    (r.target.clone(), r)
}

/// Core obtained by always removing the beat point that comes first in
/// `priority` (a permutation of the indices of `p`).
pub fn core_in_order(p: &Poset, priority: &[usize]) -> (Poset, Retraction) {
    let mut s = Shrinker::new(p);
    let mut removed = Vec::new();
    'outer: while s.count() > 1 {
        for &x in priority {
            if s.is_alive(x) {
                if let Some(kind) = s.beat_kind(x) {
                    let t = s.beat_target(x, kind);
                    s.remove(x);
                    removed.push((x, kind, t));
                    continue 'outer;
                }
            }
        }
        break;
    }
    let r = retraction_from(p, &s, &removed);
    (r.target.clone(), r)
}

pub fn is_contractible(p: &Poset) -> bool {
    let mut s = Shrinker::new(p);
    s.strip_beat_points();
    s.count() == 1
}

/// Greedy reduction: strip beat points, then remove the lowest-index weak beat
/// point, and repeat until neither kind is left.
pub fn reduce_weak(p: &Poset) -> (Poset, CollapseTrace) {
    let mut s = Shrinker::new(p);
    let mut trace = Vec::new();
    loop {
        for (x, kind, _) in s.strip_beat_points() {
            trace.push(CollapseStep { element: p.label(x).to_string(), kind });
        }
        if s.count() <= 1 {
            break;
        }
        let weak = s.alive_indices().into_iter().find_map(|x| s.weak_kind(x).map(|k| (x, k)));
        match weak {
            Some((x, kind)) => {
                s.remove(x);
                trace.push(CollapseStep { element: p.label(x).to_string(), kind });
            }
            None => break,
        }
    }
    (p.subposet(&s.alive_indices()), CollapseTrace(trace))
}

/// A collapse of `p` onto a single point found by [`reduce_weak`]. `None`
/// only means the greedy order got stuck; it does not prove that no collapse
/// exists.
pub fn collapse_to_point(p: &Poset) -> Option<CollapseTrace> {
    let (rest, trace) = reduce_weak(p);
    (rest.len() == 1).then_some(trace)
}

/// Replays `trace` on `p`, checking that each point has its recorded kind at
/// removal time; returns what remains.
pub fn replay(p: &Poset, trace: &CollapseTrace) -> Result<Poset> {
    let mut s = Shrinker::new(p);
    for (k, step) in trace.0.iter().enumerate() {
        let x = p.element(&step.element)?;
        if !s.is_alive(x) {
            return Err(Error::InvalidInput(format!(
                "step {k}: `{}` was already removed",
                step.element
            )));
        }
        let ok = match step.kind {
            PointKind::DownBeat => s.lower[x].len() == 1,
            PointKind::UpBeat => s.upper[x].len() == 1,
            PointKind::DownWeak => {
                let mut below = p.strictly_below(x).clone();
                below.intersect_with(s.alive());
                is_contractible_set(p, &below)
            }
            PointKind::UpWeak => {
                let mut above = p.strictly_above(x).clone();
                above.intersect_with(s.alive());
                is_contractible_set(p, &above)
            }
        };
        if !ok {
            return Err(Error::InvalidInput(format!(
                "step {k}: `{}` is not a {:?} point",
                step.element, step.kind
            )));
        }
        s.remove(x);
    }
    Ok(p.subposet(&s.alive_indices()))
}

/// Homotopy equivalence of finite spaces: isomorphic cores.
pub fn homotopy_equivalent(p: &Poset, q: &Poset, limits: &Limits) -> Result<bool> {
    let (cp, _) = core(p);
    let (cq, _) = core(q);
    Ok(cp.isomorphism_to(&cq, limits)?.is_some())
}
