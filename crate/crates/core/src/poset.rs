//! Finite T0 spaces stored as Hasse diagrams.
//!
//! A [`Poset`] owns its cover relation and a strict transitive closure built at
//! construction time. All constructors validate: the cover relation must be
//! acyclic and must equal its own transitive reduction.

use std::collections::{BTreeSet, HashMap};
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::search;

/// `(E_x, S_x)`: number of lower covers and number of upper covers of a point.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct DegreePair {
    pub below: usize,
    pub above: usize,
}

#[derive(Debug, Clone)]
pub struct Poset {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    lower: Vec<Vec<usize>>,
    upper: Vec<Vec<usize>>,
    below: Vec<FixedBitSet>,
    above: Vec<FixedBitSet>,
    heights: Vec<usize>,
}

/// On-disk form: `{"elements": [...], "covers": [["a", "b"], ...]}` with `a ≺ b`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PosetFile {
    pub elements: Vec<String>,
    pub covers: Vec<(String, String)>,
}

impl PartialEq for Poset {
    /// Equality of labeled posets: same labels in the same order, same covers.
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.lower == other.lower
    }
}

impl Eq for Poset {}

impl Poset {
    /// Validate a raw description given by labels.
    pub fn new<S: AsRef<str>>(elements: &[S], covers: &[(S, S)]) -> Result<Poset> {
        let labels: Vec<String> = elements.iter().map(|s| s.as_ref().to_string()).collect();
        let index = index_labels(&labels)?;
        let mut pairs = Vec::with_capacity(covers.len());
        for (a, b) in covers {
            let ia = *index
                .get(a.as_ref())
                .ok_or_else(|| Error::UnknownEndpoint(a.as_ref().to_string()))?;
            let ib = *index
                .get(b.as_ref())
                .ok_or_else(|| Error::UnknownEndpoint(b.as_ref().to_string()))?;
            pairs.push((ia, ib));
        }
        Self::from_covers_indexed(labels, &pairs)
    }

    /// Validate a cover relation given by element indices.
    pub fn from_covers_indexed(labels: Vec<String>, covers: &[(usize, usize)]) -> Result<Poset> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        let mut seen = std::collections::HashSet::new();
        let mut unique = Vec::with_capacity(covers.len());
        for &(a, b) in covers {
            if a >= n || b >= n {
                return Err(Error::UnknownEndpoint(format!("#{}", a.max(b))));
            }
            if seen.insert((a, b)) {
                unique.push((a, b));
                lower[b].push(a);
                upper[a].push(b);
            }
        }
        let order = topological_order(&labels, &lower, &upper)?;
        let below = closure_below(&order, &lower, n);
        for &(a, b) in &unique {
            if lower[b].iter().any(|&c| c != a && below[c].contains(a)) {
                return Err(Error::RedundantCover(labels[a].clone(), labels[b].clone()));
            }
        }
        Ok(Self::assemble(labels, index, lower, upper, below, &order))
    }

    /// Build a poset from any relation set whose reflexive-transitive closure is
    /// the intended order; the cover relation is extracted automatically.
    pub fn from_relations(labels: Vec<String>, relations: &[(usize, usize)]) -> Result<Poset> {
        let index = index_labels(&labels)?;
        let n = labels.len();
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for &(a, b) in relations {
            if a >= n || b >= n {
                return Err(Error::UnknownEndpoint(format!("#{}", a.max(b))));
            }
            if !lower[b].contains(&a) {
                lower[b].push(a);
                upper[a].push(b);
            }
        }
        let order = topological_order(&labels, &lower, &upper)?;
        let below = closure_below(&order, &lower, n);
        let mut covers = Vec::new();
        for b in 0..n {
            for a in below[b].ones() {
                let mut between = below[b].clone();
                between.intersect_with(&strict_above_of(&below, a, n));
                if between.is_clear() {
                    covers.push((a, b));
                }
            }
        }
        let mut lower = vec![Vec::new(); n];
        let mut upper = vec![Vec::new(); n];
        for (a, b) in covers {
            lower[b].push(a);
            upper[a].push(b);
        }
        Ok(Self::assemble(labels, index, lower, upper, below, &order))
    }

    fn assemble(
        labels: Vec<String>,
        index: HashMap<String, usize>,
        mut lower: Vec<Vec<usize>>,
        mut upper: Vec<Vec<usize>>,
        below: Vec<FixedBitSet>,
        order: &[usize],
    ) -> Poset {
        let n = labels.len();
        for l in lower.iter_mut() {
            l.sort_unstable();
        }
        for u in upper.iter_mut() {
            u.sort_unstable();
        }
        let mut above = vec![FixedBitSet::with_capacity(n); n];
        for (x, set) in below.iter().enumerate() {
            for y in set.ones() {
                above[y].insert(x);
            }
        }
        let mut heights = vec![0; n];
        for &x in order {
            heights[x] = lower[x].iter().map(|&c| heights[c] + 1).max().unwrap_or(0);
        }
        Poset { labels, index, lower, upper, below, above, heights }
    }

    pub fn empty() -> Poset {
        Poset::from_covers_indexed(Vec::new(), &[]).expect("empty poset is valid")
    }

    /// Antichain on the given labels.
    pub fn antichain<S: AsRef<str>>(labels: &[S]) -> Result<Poset> {
        Poset::new::<&str>(&labels.iter().map(|s| s.as_ref()).collect::<Vec<_>>(), &[])
    }

    /// Chain `labels[0] < labels[1] < ...`.
    pub fn chain<S: AsRef<str>>(labels: &[S]) -> Result<Poset> {
        let labels: Vec<String> = labels.iter().map(|s| s.as_ref().to_string()).collect();
        let covers: Vec<(usize, usize)> = (1..labels.len()).map(|i| (i - 1, i)).collect();
        Poset::from_covers_indexed(labels, &covers)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub fn label(&self, i: usize) -> &str {
        &self.labels[i]
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.index.get(label).copied()
    }

    /// Index of `label`, or `UnknownElement`.
    pub fn element(&self, label: &str) -> Result<usize> {
        self.index_of(label).ok_or_else(|| Error::UnknownElement(label.to_string()))
    }

    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// All cover pairs `(a, b)` with `a ≺ b`, ordered by `b` then `a`.
    pub fn covers(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for (b, lows) in self.lower.iter().enumerate() {
            out.extend(lows.iter().map(|&a| (a, b)));
        }
        out
    }

    pub fn num_covers(&self) -> usize {
        self.lower.iter().map(Vec::len).sum()
    }

    /// Strict order `a < b`.
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.below[b].contains(a)
    }

    pub fn le(&self, a: usize, b: usize) -> bool {
        a == b || self.lt(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.le(a, b) || self.lt(b, a)
    }

    /// Strict down-set of `i` as a bitset.
    pub fn strictly_below(&self, i: usize) -> &FixedBitSet {
        &self.below[i]
    }

    /// Strict up-set of `i` as a bitset.
    pub fn strictly_above(&self, i: usize) -> &FixedBitSet {
        &self.above[i]
    }

    /// `U_x = {y : y ≤ x}` as sorted indices.
    pub fn down_set_of(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.below[i].ones().collect();
        out.push(i);
        out.sort_unstable();
        out
    }

    /// `F_x = {y : y ≥ x}` as sorted indices.
    pub fn up_set_of(&self, i: usize) -> Vec<usize> {
        let mut out: Vec<usize> = self.above[i].ones().collect();
        out.push(i);
        out.sort_unstable();
        out
    }

    pub fn down_set(&self, x: &str) -> Result<BTreeSet<String>> {
        let i = self.element(x)?;
        Ok(self.down_set_of(i).into_iter().map(|j| self.labels[j].clone()).collect())
    }

    pub fn up_set(&self, x: &str) -> Result<BTreeSet<String>> {
        let i = self.element(x)?;
        Ok(self.up_set_of(i).into_iter().map(|j| self.labels[j].clone()).collect())
    }

    pub fn height_of(&self, i: usize) -> usize {
        self.heights[i]
    }

    pub fn height(&self, x: &str) -> Result<usize> {
        Ok(self.heights[self.element(x)?])
    }

    /// Height of the whole poset (`None` when empty).
    pub fn max_height(&self) -> Option<usize> {
        self.heights.iter().copied().max()
    }

    pub fn degree_of(&self, i: usize) -> DegreePair {
        DegreePair { below: self.lower[i].len(), above: self.upper[i].len() }
    }

    pub fn degree_pair(&self, x: &str) -> Result<DegreePair> {
        Ok(self.degree_of(self.element(x)?))
    }

    pub fn minimal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.lower[i].is_empty()).collect()
    }

    pub fn maximal_elements(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.upper[i].is_empty()).collect()
    }

    /// Induced sub-poset on `keep` (indices into `self`), preserving their order.
    pub fn subposet(&self, keep: &[usize]) -> Poset {
        let labels: Vec<String> = keep.iter().map(|&i| self.labels[i].clone()).collect();
        let mut rel = Vec::new();
        for (a, &i) in keep.iter().enumerate() {
            for (b, &j) in keep.iter().enumerate() {
                if self.lt(i, j) {
                    rel.push((a, b));
                }
            }
        }
        Poset::from_relations(labels, &rel).expect("induced order of a valid poset is valid")
    }

    /// Sub-poset on a bitset of indices, in increasing index order.
    pub fn subposet_of_set(&self, keep: &FixedBitSet) -> Poset {
        let keep: Vec<usize> = keep.ones().collect();
        self.subposet(&keep)
    }

    /// Same poset with every label passed through `f`.
    pub fn relabeled(&self, mut f: impl FnMut(&str) -> String) -> Result<Poset> {
        let labels: Vec<String> = self.labels.iter().map(|l| f(l)).collect();
        Poset::from_covers_indexed(labels, &self.covers())
    }

    /// Same poset with elements listed in the order `order` (a permutation of
    /// indices): new element `k` is old element `order[k]`.
    pub fn reordered(&self, order: &[usize]) -> Result<Poset> {
        if order.len() != self.len() {
            return Err(Error::InvalidInput("reordering has wrong length".into()));
        }
        let mut pos = vec![usize::MAX; self.len()];
        for (k, &i) in order.iter().enumerate() {
            if i >= self.len() || pos[i] != usize::MAX {
                return Err(Error::InvalidInput("reordering is not a permutation".into()));
            }
            pos[i] = k;
        }
        let labels = order.iter().map(|&i| self.labels[i].clone()).collect();
        let covers: Vec<(usize, usize)> =
            self.covers().into_iter().map(|(a, b)| (pos[a], pos[b])).collect();
        Poset::from_covers_indexed(labels, &covers)
    }

    /// The opposite order.
    pub fn dual(&self) -> Poset {
        let covers: Vec<(usize, usize)> = self.covers().into_iter().map(|(a, b)| (b, a)).collect();
        Poset::from_covers_indexed(self.labels.clone(), &covers).expect("dual of a valid poset")
    }

    /// Non-Hausdorff join `self ⊛ bottom`: the disjoint union with every element of
    /// `bottom` placed below every element of `self`. Labels of `bottom` that
    /// clash with labels of `self` get a `'` suffix until unique. Elements of
    /// `self` come first in the result.
    pub fn join(&self, bottom: &Poset) -> Poset {
        let mut labels = self.labels.clone();
        let mut taken: std::collections::HashSet<String> = labels.iter().cloned().collect();
        let offset = self.len();
        for l in &bottom.labels {
            let mut name = l.clone();
            while taken.contains(&name) {
                name.push('\'');
            }
            taken.insert(name.clone());
            labels.push(name);
        }
        let mut covers = self.covers();
        covers.extend(bottom.covers().into_iter().map(|(a, b)| (a + offset, b + offset)));
        for m in bottom.maximal_elements() {
            for n in self.minimal_elements() {
                covers.push((m + offset, n));
            }
        }
        Poset::from_covers_indexed(labels, &covers).expect("join of valid posets is valid")
    }

    /// Wedge of two posets at a point: `other_point` of `other` is identified
    /// with `self_point` of `self` and the order is extended by transitivity.
    /// Elements of `self` come first, then the remaining elements of `other`.
    pub fn wedge(&self, self_point: usize, other: &Poset, other_point: usize) -> Result<Poset> {
        let mut labels = self.labels.clone();
        let mut map = vec![usize::MAX; other.len()];
        for (j, l) in other.labels.iter().enumerate() {
            if j == other_point {
                map[j] = self_point;
            } else {
                map[j] = labels.len();
                labels.push(l.clone());
            }
        }
        let mut covers = self.covers();
        covers.extend(other.covers().into_iter().map(|(a, b)| (map[a], map[b])));
        Poset::from_covers_indexed(labels, &covers)
    }

    /// Whether `map` (indices of `self` → indices of `other`) is an order isomorphism.
    pub fn is_isomorphism(&self, other: &Poset, map: &[usize]) -> bool {
        if map.len() != self.len() || other.len() != self.len() {
            return false;
        }
        let mut hit = vec![false; other.len()];
        for &j in map {
            if j >= other.len() || hit[j] {
                return false;
            }
            hit[j] = true;
        }
        if self.num_covers() != other.num_covers() {
            return false;
        }
        self.covers().into_iter().all(|(a, b)| other.lower[map[b]].binary_search(&map[a]).is_ok())
    }

    pub fn is_automorphism(&self, perm: &[usize]) -> bool {
        self.is_isomorphism(self, perm)
    }

    /// Whether `map` (indices of `self` → indices of `other`) preserves `≤`.
    pub fn is_order_preserving(&self, other: &Poset, map: &[usize]) -> bool {
        map.len() == self.len()
            && map.iter().all(|&j| j < other.len())
            && self.covers().into_iter().all(|(a, b)| other.le(map[a], map[b]))
    }

    /// An order isomorphism `self → other` if one exists (first in search order).
    pub fn isomorphism_to(&self, other: &Poset, limits: &Limits) -> Result<Option<Vec<usize>>> {
        search::find_isomorphism(self, other, limits)
    }

    pub fn to_file(&self) -> PosetFile {
        PosetFile {
            elements: self.labels.clone(),
            covers: self
                .covers()
                .into_iter()
                .map(|(a, b)| (self.labels[a].clone(), self.labels[b].clone()))
                .collect(),
        }
    }

    pub fn from_file(file: &PosetFile) -> Result<Poset> {
        let covers: Vec<(&str, &str)> =
            file.covers.iter().map(|(a, b)| (a.as_str(), b.as_str())).collect();
        let elements: Vec<&str> = file.elements.iter().map(String::as_str).collect();
        Poset::new(&elements, &covers)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_file()).expect("poset serializes")
    }

    pub fn from_json(text: &str) -> Result<Poset> {
        Poset::from_file(&serde_json::from_str(text)?)
    }

    /// Graphviz rendering: one node per element ranked by height, one edge per
    /// cover drawn from the lower to the upper element.
    pub fn to_dot(&self, name: &str) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph \"{}\" {{", escape(name));
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, l) in self.labels.iter().enumerate() {
            let _ = writeln!(s, "  n{} [label=\"{}\"];", i, escape(l));
        }
        let mut by_height: Vec<Vec<usize>> = vec![Vec::new(); self.max_height().map_or(0, |h| h + 1)];
        for i in 0..self.len() {
            by_height[self.heights[i]].push(i);
        }
        for (h, nodes) in by_height.iter().enumerate() {
            let ids: Vec<String> = nodes.iter().map(|i| format!("n{}", i)).collect();
            let _ = writeln!(s, "  {{ rank=same; /* height {} */ {}; }}", h, ids.join("; "));
        }
        for (a, b) in self.covers() {
            let _ = writeln!(s, "  n{} -> n{};", a, b);
        }
        s.push_str("}\n");
        s
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

fn index_labels(labels: &[String]) -> Result<HashMap<String, usize>> {
    let mut index = HashMap::with_capacity(labels.len());
    for (i, l) in labels.iter().enumerate() {
        if index.insert(l.clone(), i).is_some() {
            return Err(Error::DuplicateLabel(l.clone()));
        }
    }
    Ok(index)
}

/// Kahn's algorithm; on failure reports a cycle found by walking lower covers.
fn topological_order(labels: &[String], lower: &[Vec<usize>], upper: &[Vec<usize>]) -> Result<Vec<usize>> {
    let n = labels.len();
    let mut indeg: Vec<usize> = lower.iter().map(Vec::len).collect();
    let mut stack: Vec<usize> = (0..n).rev().filter(|&i| indeg[i] == 0).collect();
    let mut order = Vec::with_capacity(n);
    while let Some(x) = stack.pop() {
        order.push(x);
        for &y in upper[x].iter().rev() {
            indeg[y] -= 1;
            if indeg[y] == 0 {
                stack.push(y);
            }
        }
    }
    if order.len() == n {
        return Ok(order);
    }
    // every unprocessed node has an unprocessed lower cover, so walking down must repeat
    let start = (0..n).find(|&i| indeg[i] > 0).expect("unprocessed node exists");
    let mut pos = vec![usize::MAX; n];
    let mut path = Vec::new();
    let mut cur = start;
    while pos[cur] == usize::MAX {
        pos[cur] = path.len();
        path.push(cur);
        cur = *lower[cur].iter().find(|&&c| indeg[c] > 0).expect("cycle continues");
    }
    let mut cycle: Vec<String> = path[pos[cur]..].iter().rev().map(|&i| labels[i].clone()).collect();
    cycle.push(labels[*path[pos[cur]..].last().unwrap()].clone());
    Err(Error::CycleDetected(cycle))
}

fn closure_below(order: &[usize], lower: &[Vec<usize>], n: usize) -> Vec<FixedBitSet> {
    let mut below = vec![FixedBitSet::with_capacity(n); n];
    for &x in order {
        let mut set = FixedBitSet::with_capacity(n);
        for &c in &lower[x] {
            set.union_with(&below[c]);
            set.insert(c);
        }
        below[x] = set;
    }
    below
}

fn strict_above_of(below: &[FixedBitSet], a: usize, n: usize) -> FixedBitSet {
    let mut out = FixedBitSet::with_capacity(n);
    for (x, set) in below.iter().enumerate() {
        if set.contains(a) {
            out.insert(x);
        }
    }
    out
}

/// Incremental builder used by the constructions: elements and covers are
/// added by label and validated strictly on [`PosetBuilder::build`].
#[derive(Debug, Default, Clone)]
pub struct PosetBuilder {
    labels: Vec<String>,
    index: HashMap<String, usize>,
    covers: Vec<(usize, usize)>,
}

impl PosetBuilder {
    pub fn new() -> Self {
        Self::default()
    }

    /// Adds an element (idempotent) and returns its index.
    pub fn point(&mut self, label: impl Into<String>) -> usize {
        let label = label.into();
        if let Some(&i) = self.index.get(&label) {
            return i;
        }
        let i = self.labels.len();
        self.index.insert(label.clone(), i);
        self.labels.push(label);
        i
    }

    /// Adds `lo ≺ hi`, creating either endpoint if needed.
    pub fn cover(&mut self, lo: impl Into<String>, hi: impl Into<String>) {
        let a = self.point(lo);
        let b = self.point(hi);
        self.covers.push((a, b));
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index.contains_key(label)
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    /// Appends a whole poset, renaming its labels with `rename`.
    pub fn extend_from(&mut self, p: &Poset, mut rename: impl FnMut(&str) -> String) {
        let ids: Vec<usize> = p.labels().iter().map(|l| self.point(rename(l))).collect();
        for (a, b) in p.covers() {
            self.covers.push((ids[a], ids[b]));
        }
    }

    pub fn build(self) -> Result<Poset> {
        Poset::from_covers_indexed(self.labels, &self.covers)
    }
}
