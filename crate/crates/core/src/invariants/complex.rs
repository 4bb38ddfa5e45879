use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::limits::Limits;
use crate::poset::Poset;

/// A finite abstract simplicial complex. Simplices are sorted vertex index
/// lists, stored by dimension and then lexicographically.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimplicialComplex {
    vertices: Vec<String>,
    simplices: Vec<Vec<u32>>,
    /// `dim_start[d]..dim_start[d + 1]` are the `d`-simplices.
    dim_start: Vec<usize>,
}

impl SimplicialComplex {
    /// Validates an explicit simplex list: every simplex is a nonempty set of
    /// declared vertices and every nonempty face of a simplex is listed.
    pub fn new(vertices: Vec<String>, simplices: Vec<Vec<u32>>) -> Result<SimplicialComplex> {
        let mut set: HashSet<Vec<u32>> = HashSet::with_capacity(simplices.len());
        for s in simplices {
            let mut s = s;
            s.sort_unstable();
            let len = s.len();
            s.dedup();
            if s.len() != len {
                return Err(Error::NotAComplex(format!("repeated vertex in {s:?}")));
            }
            if s.is_empty() {
                return Err(Error::NotAComplex("empty simplex".into()));
            }
            if let Some(&v) = s.iter().find(|&&v| v as usize >= vertices.len()) {
                return Err(Error::NotAComplex(format!("undeclared vertex {v}")));
            }
            set.insert(s);
        }
        for s in &set {
            if s.len() > 1 {
                for i in 0..s.len() {
                    let mut f = s.clone();
                    f.remove(i);
                    if !set.contains(&f) {
                        return Err(Error::NotAComplex(format!("face {f:?} of {s:?} missing")));
                    }
                }
            }
        }
        Ok(Self::from_sorted_set(vertices, set.into_iter().collect()))
    }

    /// The complex generated by `facets` (all their nonempty faces).
    pub fn from_facets(vertices: Vec<String>, facets: &[Vec<u32>], limits: &Limits) -> Result<SimplicialComplex> {
        let mut set: HashSet<Vec<u32>> = HashSet::new();
        for f in facets {
            let mut f = f.clone();
            f.sort_unstable();
            f.dedup();
            if let Some(&v) = f.iter().find(|&&v| v as usize >= vertices.len()) {
                return Err(Error::NotAComplex(format!("undeclared vertex {v}")));
            }
            if f.len() >= 64 {
                return Err(Error::ComplexTooLarge { cap: "max_simplices", limit: limits.max_simplices as u64 });
            }
            for mask in 1u64..(1u64 << f.len()) {
                let s: Vec<u32> = (0..f.len()).filter(|&i| mask >> i & 1 == 1).map(|i| f[i]).collect();
                set.insert(s);
                if set.len() > limits.max_simplices {
                    return Err(Error::ComplexTooLarge {
                        cap: "max_simplices",
                        limit: limits.max_simplices as u64,
                    });
                }
            }
        }
        Ok(Self::from_sorted_set(vertices, set.into_iter().collect()))
    }

    fn from_sorted_set(vertices: Vec<String>, mut simplices: Vec<Vec<u32>>) -> SimplicialComplex {
        simplices.sort_unstable_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        let top = simplices.last().map_or(0, Vec::len);
        let mut dim_start = vec![0; top + 1];
        for d in 0..=top {
            dim_start[d] = simplices.partition_point(|s| s.len() <= d);
        }
        SimplicialComplex { vertices, simplices, dim_start }
    }

    pub fn empty() -> SimplicialComplex {
        SimplicialComplex { vertices: Vec::new(), simplices: Vec::new(), dim_start: vec![0] }
    }

    pub fn vertices(&self) -> &[String] {
        &self.vertices
    }

    pub fn simplices(&self) -> &[Vec<u32>] {
        &self.simplices
    }

    pub fn len(&self) -> usize {
        self.simplices.len()
    }

    pub fn is_empty(&self) -> bool {
        self.simplices.is_empty()
    }

    /// Top dimension, `None` for the empty complex.
    pub fn dimension(&self) -> Option<usize> {
        self.simplices.last().map(|s| s.len() - 1)
    }

    /// The `d`-simplices.
    pub fn of_dim(&self, d: usize) -> &[Vec<u32>] {
        if d + 1 >= self.dim_start.len() {
            return &[];
        }
        &self.simplices[self.dim_start[d]..self.dim_start[d + 1]]
    }

    /// Index range of the `d`-simplices inside [`SimplicialComplex::simplices`].
    pub fn dim_range(&self, d: usize) -> std::ops::Range<usize> {
        if d + 1 >= self.dim_start.len() {
            let n = self.simplices.len();
            return n..n;
        }
        self.dim_start[d]..self.dim_start[d + 1]
    }

    pub fn f_vector(&self) -> Vec<usize> {
        (0..self.dimension().map_or(0, |d| d + 1)).map(|d| self.of_dim(d).len()).collect()
    }

    /// Unreduced Euler characteristic.
    pub fn euler_characteristic(&self) -> i64 {
        self.f_vector()
            .iter()
            .enumerate()
            .map(|(d, &f)| if d % 2 == 0 { f as i64 } else { -(f as i64) })
            .sum()
    }

    /// Map from simplex to its position in [`SimplicialComplex::simplices`].
    pub fn index_map(&self) -> HashMap<&[u32], usize> {
        self.simplices.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect()
    }

    /// Simplicial join: vertices of `self` then of `other`; simplices are the
    /// simplices of either and the unions of one of each.
    pub fn join(&self, other: &SimplicialComplex) -> SimplicialComplex {
        let off = self.vertices.len() as u32;
        let mut vertices = self.vertices.clone();
        vertices.extend(other.vertices.iter().cloned());
        let shifted: Vec<Vec<u32>> =
            other.simplices.iter().map(|s| s.iter().map(|&v| v + off).collect()).collect();
        let mut all = self.simplices.clone();
        all.extend(shifted.iter().cloned());
        for a in &self.simplices {
            for b in &shifted {
                let mut s = a.clone();
                s.extend_from_slice(b);
                all.push(s);
            }
        }
        Self::from_sorted_set(vertices, all)
    }
}

/// The order complex `K(p)`: one simplex per nonempty chain. Vertices are the
/// elements of `p` in index order.
pub fn order_complex(p: &Poset, limits: &Limits) -> Result<SimplicialComplex> {
    if p.len() > limits.max_elements {
        return Err(Error::PosetTooLarge { cap: "max_elements", limit: limits.max_elements as u64 });
    }
    let above: Vec<Vec<u32>> =
        (0..p.len()).map(|i| p.strictly_above(i).ones().map(|j| j as u32).collect()).collect();
    let mut out: Vec<Vec<u32>> = Vec::new();
    let mut stack: Vec<u32> = Vec::new();
    fn extend(
        top: u32,
        above: &[Vec<u32>],
        stack: &mut Vec<u32>,
        out: &mut Vec<Vec<u32>>,
        cap: usize,
    ) -> bool {
        for &y in &above[top as usize] {
            stack.push(y);
            let mut s = stack.clone();
            s.sort_unstable();
            out.push(s);
            if out.len() > cap || !extend(y, above, stack, out, cap) {
                return false;
            }
            stack.pop();
        }
        true
    }
    for x in 0..p.len() as u32 {
        stack.clear();
        stack.push(x);
        out.push(vec![x]);
        if out.len() > limits.max_simplices
            || !extend(x, &above, &mut stack, &mut out, limits.max_simplices)
        {
            return Err(Error::ComplexTooLarge {
                cap: "max_simplices",
                limit: limits.max_simplices as u64,
            });
        }
    }
    Ok(SimplicialComplex::from_sorted_set(p.labels().to_vec(), out))
}
