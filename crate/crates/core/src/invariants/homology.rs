//! Reduced integral homology of simplicial complexes.
//!
//! The augmented chain complex (with one cell in degree -1) is first shrunk
//! by eliminating pairs of cells joined by a unit coefficient: free faces and
//! cells with a single face go first since they cause no fill-in, then general
//! unit pivots of least Markowitz cost. What is left is diagonalized with a
//! dense Smith normal form. Every elimination is a chain homotopy equivalence
//! whose two chain maps are recorded, so homology classes can be carried back
//! and forth between the original and the reduced complex.

use std::collections::{HashMap, VecDeque};

use serde::{Deserialize, Serialize};

use super::complex::SimplicialComplex;
use crate::error::{Error, Result};

/// Homology in one degree: `Z^betti ⊕ ⨁ Z/t`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologyGroup {
    pub degree: usize,
    pub betti: usize,
    pub torsion: Vec<u64>,
}

impl HomologyGroup {
    pub fn is_zero(&self) -> bool {
        self.betti == 0 && self.torsion.is_empty()
    }
}

/// Reduced homology in degrees `0..=dim`. Unreduced homology differs only in
/// degree 0, where it has one more free summand.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct HomologySummary {
    pub convention: String,
    pub groups: Vec<HomologyGroup>,
}

impl HomologySummary {
    fn new(groups: Vec<HomologyGroup>) -> Self {
        HomologySummary { convention: "reduced".into(), groups }
    }

    pub fn betti(&self, d: usize) -> usize {
        self.groups.get(d).map_or(0, |g| g.betti)
    }

    pub fn torsion(&self, d: usize) -> &[u64] {
        self.groups.get(d).map_or(&[], |g| g.torsion.as_slice())
    }

    pub fn is_trivial(&self) -> bool {
        self.groups.iter().all(HomologyGroup::is_zero)
    }

    /// `Σ (-1)^d b_d`, which equals `χ - 1` for a nonempty complex.
    pub fn reduced_euler(&self) -> i64 {
        self.groups
            .iter()
            .map(|g| if g.degree % 2 == 0 { g.betti as i64 } else { -(g.betti as i64) })
            .sum()
    }
}

type Entry = (u32, i64);

/// One eliminated pair: `⟨∂τ, σ⟩ = u`, with `c = ∂τ - uσ` and `b` the other
/// cofaces of `σ` with their coefficients, both taken at elimination time.
struct Pair {
    tau: u32,
    sigma: u32,
    u: i64,
    c: Vec<Entry>,
    b: Vec<Entry>,
}

struct Reducer {
    dim: Vec<i32>,
    bd: Vec<Vec<Entry>>,
    cob: Vec<Vec<u32>>,
    cob_count: Vec<u32>,
    alive: Vec<bool>,
    alive_count: usize,
    pairs: Vec<Pair>,
    track: bool,
    queue: VecDeque<u32>,
    queued: Vec<bool>,
}

fn overflow() -> Error {
    Error::MatrixBudgetExceeded("coefficient overflow during elimination".into())
}

impl Reducer {
    /// Cell 0 is the empty simplex; cell `i + 1` is simplex `i` of `k`.
    fn new(k: &SimplicialComplex, track: bool) -> Reducer {
        let n = k.len() + 1;
        let index = k.index_map();
        let mut dim = Vec::with_capacity(n);
        let mut bd: Vec<Vec<Entry>> = Vec::with_capacity(n);
        dim.push(-1);
        bd.push(Vec::new());
        let mut face = Vec::new();
        for s in k.simplices() {
            dim.push(s.len() as i32 - 1);
            let mut b: Vec<Entry> = Vec::with_capacity(s.len());
            if s.len() == 1 {
                b.push((0, 1));
            } else {
                for i in 0..s.len() {
                    face.clear();
                    face.extend(s.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &v)| v));
                    let id = index[face.as_slice()] as u32 + 1;
                    b.push((id, if i % 2 == 0 { 1 } else { -1 }));
                }
                b.sort_unstable();
            }
            bd.push(b);
        }
        let mut cob = vec![Vec::new(); n];
        let mut cob_count = vec![0u32; n];
        for (t, b) in bd.iter().enumerate() {
            for &(s, _) in b {
                cob[s as usize].push(t as u32);
                cob_count[s as usize] += 1;
            }
        }
        Reducer {
            dim,
            bd,
            cob,
            cob_count,
            alive: vec![true; n],
            alive_count: n,
            pairs: Vec::new(),
            track,
            queue: (0..n as u32).collect(),
            queued: vec![true; n],
        }
    }

    fn coef(&self, r: u32, s: u32) -> Option<i64> {
        let b = &self.bd[r as usize];
        b.binary_search_by_key(&s, |e| e.0).ok().map(|i| b[i].1)
    }

    fn push(&mut self, x: u32) {
        if self.alive[x as usize] && !self.queued[x as usize] {
            self.queued[x as usize] = true;
            self.queue.push_back(x);
        }
    }

    /// Live cofaces of `s` with coefficients; drops stale entries.
    fn cofaces(&mut self, s: u32) -> Vec<Entry> {
        let mut list = std::mem::take(&mut self.cob[s as usize]);
        list.sort_unstable();
        list.dedup();
        let mut out = Vec::with_capacity(list.len());
        list.retain(|&r| {
            if !self.alive[r as usize] {
                return false;
            }
            match self.coef(r, s) {
                Some(c) => {
                    out.push((r, c));
                    true
                }
                None => false,
            }
        });
        self.cob[s as usize] = list;
        out
    }

    fn eliminate(&mut self, tau: u32, sigma: u32) -> Result<()> {
        let u = self.coef(tau, sigma).expect("σ is a face of τ");
        debug_assert!(u == 1 || u == -1);
        let c: Vec<Entry> = self.bd[tau as usize].iter().copied().filter(|e| e.0 != sigma).collect();
        let b: Vec<Entry> = self.cofaces(sigma).into_iter().filter(|e| e.0 != tau).collect();
        for &(rho, a) in &b {
            let scale = a.checked_mul(u).and_then(|x| x.checked_neg()).ok_or_else(overflow)?;
            let old = std::mem::take(&mut self.bd[rho as usize]);
            let mut merged = Vec::with_capacity(old.len() + c.len());
            let (mut i, mut j) = (0, 0);
            while i < old.len() || j < c.len() {
                let take_old = j >= c.len() || (i < old.len() && old[i].0 < c[j].0);
                let take_new = i >= old.len() || (j < c.len() && c[j].0 < old[i].0);
                if take_old {
                    if old[i].0 != sigma {
                        merged.push(old[i]);
                    }
                    i += 1;
                } else if take_new {
                    let v = c[j].1.checked_mul(scale).ok_or_else(overflow)?;
                    merged.push((c[j].0, v));
                    self.cob_count[c[j].0 as usize] += 1;
                    self.cob[c[j].0 as usize].push(rho);
                    self.push(c[j].0);
                    j += 1;
                } else {
                    let v = c[j].1.checked_mul(scale).and_then(|x| x.checked_add(old[i].1)).ok_or_else(overflow)?;
                    if v != 0 {
                        merged.push((old[i].0, v));
                    } else {
                        self.cob_count[old[i].0 as usize] -= 1;
                        self.push(old[i].0);
                    }
                    i += 1;
                    j += 1;
                }
            }
            self.cob_count[sigma as usize] -= 1;
            self.bd[rho as usize] = merged;
            self.push(rho);
        }
        // τ leaves: its faces lose a coface, its cofaces lose a face
        for &(f, _) in &self.bd[tau as usize].clone() {
            self.cob_count[f as usize] -= 1;
            self.push(f);
        }
        for (k, _) in self.cofaces(tau) {
            let bk = &mut self.bd[k as usize];
            if let Ok(i) = bk.binary_search_by_key(&tau, |e| e.0) {
                bk.remove(i);
            }
            self.push(k);
        }
        for &(f, _) in &self.bd[sigma as usize].clone() {
            self.cob_count[f as usize] -= 1;
            self.push(f);
        }
        for x in [tau, sigma] {
            self.alive[x as usize] = false;
            self.bd[x as usize] = Vec::new();
            self.cob[x as usize] = Vec::new();
        }
        self.alive_count -= 2;
        if self.track {
            self.pairs.push(Pair { tau, sigma, u, c, b });
        }
        Ok(())
    }

    /// Eliminations that cause no fill-in, until none is left.
    fn drain_free(&mut self) -> Result<()> {
        while let Some(x) = self.queue.pop_front() {
            self.queued[x as usize] = false;
            if !self.alive[x as usize] {
                continue;
            }
            let b = &self.bd[x as usize];
            if b.len() == 1 && b[0].1.abs() == 1 {
                let s = b[0].0;
                self.eliminate(x, s)?;
                continue;
            }
            if self.cob_count[x as usize] == 1 {
                let co = self.cofaces(x);
                if let [(t, c)] = co[..] {
                    if c.abs() == 1 {
                        self.eliminate(t, x)?;
                    }
                }
            }
        }
        Ok(())
    }

    /// Unit pivot of least Markowitz cost, if any.
    fn best_pivot(&self) -> Option<(u32, u32)> {
        let mut best: Option<(u64, u32, u32)> = None;
        for t in 0..self.bd.len() {
            if !self.alive[t] {
                continue;
            }
            let len = self.bd[t].len() as u64;
            for &(s, c) in &self.bd[t] {
                if c.abs() == 1 {
                    let cost = (len - 1) * (self.cob_count[s as usize] as u64 - 1);
                    if best.is_none_or(|(bc, _, _)| cost < bc) {
                        best = Some((cost, t as u32, s));
                    }
                }
            }
        }
        best.map(|(_, t, s)| (t, s))
    }

    fn reduce(&mut self) -> Result<()> {
        self.drain_free()?;
        while let Some((t, s)) = self.best_pivot() {
            self.eliminate(t, s)?;
            self.drain_free()?;
        }
        Ok(())
    }

    fn alive_of_dim(&self, d: i32) -> Vec<u32> {
        (0..self.dim.len() as u32).filter(|&x| self.alive[x as usize] && self.dim[x as usize] == d).collect()
    }
}

type Mat = Vec<Vec<i128>>;

fn identity(n: usize) -> Mat {
    (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect()
}

/// `u · a · w = diag(s)` with `u`, `w` unimodular; the inverses are kept too.
struct Smith {
    diag: Vec<i128>,
    u: Mat,
    uinv: Mat,
    w: Mat,
    winv: Mat,
}

fn ck(x: Option<i128>) -> Result<i128> {
    x.ok_or_else(|| Error::MatrixBudgetExceeded("entry overflow in Smith normal form".into()))
}

fn smith(mut a: Mat, rows: usize, cols: usize) -> Result<Smith> {
    let mut u = identity(rows);
    let mut uinv = identity(rows);
    let mut w = identity(cols);
    let mut winv = identity(cols);
    let mut diag = Vec::new();

    // row_i -= q·row_t
    let row_op = |a: &mut Mat, u: &mut Mat, uinv: &mut Mat, i: usize, t: usize, q: i128| -> Result<()> {
        for j in 0..cols {
            a[i][j] = ck(a[t][j].checked_mul(q).and_then(|x| a[i][j].checked_sub(x)))?;
        }
        for j in 0..rows {
            u[i][j] = ck(u[t][j].checked_mul(q).and_then(|x| u[i][j].checked_sub(x)))?;
        }
        for r in uinv.iter_mut() {
            r[t] = ck(r[i].checked_mul(q).and_then(|x| r[t].checked_add(x)))?;
        }
        Ok(())
    };
    // col_j -= q·col_t
    let col_op = |a: &mut Mat, w: &mut Mat, winv: &mut Mat, j: usize, t: usize, q: i128| -> Result<()> {
        for r in a.iter_mut() {
            r[j] = ck(r[t].checked_mul(q).and_then(|x| r[j].checked_sub(x)))?;
        }
        for r in w.iter_mut() {
            r[j] = ck(r[t].checked_mul(q).and_then(|x| r[j].checked_sub(x)))?;
        }
        for k in 0..cols {
            winv[t][k] = ck(winv[j][k].checked_mul(q).and_then(|x| winv[t][k].checked_add(x)))?;
        }
        Ok(())
    };
    let swap_rows = |a: &mut Mat, u: &mut Mat, uinv: &mut Mat, i: usize, t: usize| {
        a.swap(i, t);
        u.swap(i, t);
        for r in uinv.iter_mut() {
            r.swap(i, t);
        }
    };
    let swap_cols = |a: &mut Mat, w: &mut Mat, winv: &mut Mat, j: usize, t: usize| {
        for r in a.iter_mut() {
            r.swap(j, t);
        }
        for r in w.iter_mut() {
            r.swap(j, t);
        }
        winv.swap(j, t);
    };

    for t in 0..rows.min(cols) {
        // smallest nonzero entry of the trailing block
        let mut best: Option<(i128, usize, usize)> = None;
        for i in t..rows {
            for j in t..cols {
                let v = a[i][j].abs();
                if v != 0 && best.is_none_or(|(b, _, _)| v < b) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((_, bi, bj)) = best else { break };
        swap_rows(&mut a, &mut u, &mut uinv, t, bi);
        swap_cols(&mut a, &mut w, &mut winv, t, bj);
        loop {
            let mut dirty = false;
            for i in t + 1..rows {
                if a[i][t] != 0 {
                    let q = a[i][t].div_euclid(a[t][t]);
                    row_op(&mut a, &mut u, &mut uinv, i, t, q)?;
                    if a[i][t] != 0 {
                        swap_rows(&mut a, &mut u, &mut uinv, t, i);
                        dirty = true;
                    }
                }
            }
            for j in t + 1..cols {
                if a[t][j] != 0 {
                    let q = a[t][j].div_euclid(a[t][t]);
                    col_op(&mut a, &mut w, &mut winv, j, t, q)?;
                    if a[t][j] != 0 {
                        swap_cols(&mut a, &mut w, &mut winv, t, j);
                        dirty = true;
                    }
                }
            }
            if dirty {
                continue;
            }
            // the pivot must divide the whole trailing block
            let bad = (t + 1..rows).find(|&i| (t + 1..cols).any(|j| a[i][j] % a[t][t] != 0));
            match bad {
                Some(i) => {
                    // row_t += row_i
                    row_op(&mut a, &mut u, &mut uinv, t, i, -1)?;
                }
                None => break,
            }
        }
        if a[t][t] < 0 {
            for j in 0..cols {
                a[t][j] = -a[t][j];
            }
            for j in 0..rows {
                u[t][j] = -u[t][j];
            }
            for r in uinv.iter_mut() {
                r[t] = -r[t];
            }
        }
        diag.push(a[t][t]);
    }
    Ok(Smith { diag, u, uinv, w, winv })
}

fn mat_mul(a: &Mat, b: &Mat, inner: usize, cols: usize) -> Result<Mat> {
    a.iter()
        .map(|row| {
            (0..cols)
                .map(|j| {
                    let mut s: i128 = 0;
                    for k in 0..inner {
                        if row[k] != 0 && b[k][j] != 0 {
                            s = ck(row[k].checked_mul(b[k][j]).and_then(|x| s.checked_add(x)))?;
                        }
                    }
                    Ok(s)
                })
                .collect()
        })
        .collect()
}

/// Homology of one degree of the reduced complex with its chosen basis.
struct DegreeBasis {
    /// Reduced cells of this degree.
    cells: Vec<u32>,
    /// Rows `r_d..` of `W_d^{-1}`: coordinates in the cycle basis.
    cycle_coords: Mat,
    /// `U'` of the Smith form of the boundary in cycle coordinates.
    class_transform: Mat,
    /// Positions (in class coordinates) of the reported generators: free
    /// ones first, then the torsion ones in divisibility order.
    slots: Vec<usize>,
    /// Modulus per slot: 0 for free, `s > 1` for torsion.
    moduli: Vec<i128>,
    /// Generators as chains over `cells`.
    generators: Vec<Vec<i128>>,
}

/// Homology of a complex together with the data needed to push automorphisms
/// through it.
pub struct HomologyBasis {
    summary: HomologySummary,
    degrees: Vec<DegreeBasis>,
    pairs: Vec<Pair>,
    dim: Vec<i32>,
}

const DENSE_LIMIT: usize = 16_000_000;

fn compute(k: &SimplicialComplex, track: bool) -> Result<(HomologySummary, Option<HomologyBasis>)> {
    let Some(top) = k.dimension() else {
        return Ok((HomologySummary::new(Vec::new()), None));
    };
    let mut red = Reducer::new(k, track);
    red.reduce()?;
    let cells: Vec<Vec<u32>> = (-1..=top as i32 + 1).map(|d| red.alive_of_dim(d)).collect();
    // cells[d + 1] holds degree d
    let boundary = |d: usize| -> Result<Mat> {
        let rows = &cells[d];
        let cols = &cells[d + 1];
        if rows.len().saturating_mul(cols.len()) > DENSE_LIMIT {
            return Err(Error::MatrixBudgetExceeded(format!(
                "{}×{} dense boundary in degree {}",
                rows.len(),
                cols.len(),
                d
            )));
        }
        let pos: HashMap<u32, usize> = rows.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut m = vec![vec![0i128; cols.len()]; rows.len()];
        for (j, &c) in cols.iter().enumerate() {
            for &(f, v) in &red.bd[c as usize] {
                m[pos[&f]][j] = v as i128;
            }
        }
        Ok(m)
    };
    let mut groups = Vec::new();
    let mut degrees = Vec::new();
    let mut next_boundary = boundary(0)?;
    for d in 0..=top {
        let n_d = cells[d + 1].len();
        let dd = next_boundary;
        let s_d = smith(dd, cells[d].len(), n_d)?;
        let r = s_d.diag.len();
        let kdim = n_d - r;
        next_boundary = boundary(d + 1)?;
        let n_up = cells[d + 2].len();
        let in_cycles = mat_mul(&s_d.winv, &next_boundary, n_d, n_up)?;
        if in_cycles[..r].iter().any(|row| row.iter().any(|&x| x != 0)) {
            return Err(Error::InternalAssertionFailed("boundary of a boundary is not zero".into()));
        }
        let m: Mat = in_cycles[r..].to_vec();
        let s_m = smith(m, kdim, n_up)?;
        let rr = s_m.diag.len();
        let betti = kdim - rr;
        let torsion: Vec<u64> = s_m.diag.iter().filter(|&&s| s > 1).map(|&s| s as u64).collect();
        groups.push(HomologyGroup { degree: d, betti, torsion });
        if track {
            let mut slots: Vec<usize> = (rr..kdim).collect();
            let mut moduli = vec![0i128; slots.len()];
            for (j, &s) in s_m.diag.iter().enumerate() {
                if s > 1 {
                    slots.push(j);
                    moduli.push(s);
                }
            }
            // generator j = K · column j of U'^{-1}, K = columns r.. of W_d
            let generators = slots
                .iter()
                .map(|&j| {
                    (0..n_d)
                        .map(|row| {
                            let mut acc: i128 = 0;
                            for c in 0..kdim {
                                let x = s_d.w[row][r + c];
                                let y = s_m.uinv[c][j];
                                if x != 0 && y != 0 {
                                    acc = ck(x.checked_mul(y).and_then(|p| acc.checked_add(p)))?;
                                }
                            }
                            Ok(acc)
                        })
                        .collect::<Result<Vec<i128>>>()
                })
                .collect::<Result<Vec<_>>>()?;
            degrees.push(DegreeBasis {
                cells: cells[d + 1].clone(),
                cycle_coords: s_d.winv[r..].to_vec(),
                class_transform: s_m.u,
                slots,
                moduli,
                generators,
            });
        }
    }
    let summary = HomologySummary::new(groups);
    let basis = track.then(|| HomologyBasis {
        summary: summary.clone(),
        degrees,
        pairs: std::mem::take(&mut red.pairs),
        dim: std::mem::take(&mut red.dim),
    });
    Ok((summary, basis))
}

/// Reduced integral homology of `k`.
pub fn homology(k: &SimplicialComplex) -> Result<HomologySummary> {
    Ok(compute(k, false)?.0)
}

/// Reduced homology with a retained basis of every group.
pub fn homology_with_basis(k: &SimplicialComplex) -> Result<HomologyBasis> {
    let (summary, basis) = compute(k, true)?;
    Ok(basis.unwrap_or(HomologyBasis { summary, degrees: Vec::new(), pairs: Vec::new(), dim: vec![-1] }))
}

type Chain = HashMap<u32, i128>;

fn add_to(chain: &mut Chain, cell: u32, v: i128) -> Result<()> {
    let e = chain.entry(cell).or_insert(0);
    *e = ck(e.checked_add(v))?;
    if *e == 0 {
        chain.remove(&cell);
    }
    Ok(())
}

impl HomologyBasis {
    pub fn summary(&self) -> &HomologySummary {
        &self.summary
    }

    /// Number of generators reported in degree `d` (free, then torsion).
    pub fn rank(&self, d: usize) -> usize {
        self.degrees.get(d).map_or(0, |b| b.slots.len())
    }

    /// Carries a reduced-complex chain back to the original complex.
    fn lift(&self, mut chain: Chain, d: i32) -> Result<Chain> {
        for p in self.pairs.iter().rev() {
            if self.dim[p.tau as usize] != d {
                continue;
            }
            let mut dot: i128 = 0;
            for &(rho, a) in &p.b {
                if let Some(&x) = chain.get(&rho) {
                    dot = ck(x.checked_mul(a as i128).and_then(|y| dot.checked_add(y)))?;
                }
            }
            if dot != 0 {
                add_to(&mut chain, p.tau, -(p.u as i128) * dot)?;
            }
        }
        Ok(chain)
    }

    /// Projects an original-complex chain onto the reduced complex.
    fn project(&self, mut chain: Chain, d: i32) -> Result<Chain> {
        for p in &self.pairs {
            if self.dim[p.tau as usize] == d {
                chain.remove(&p.tau);
            } else if self.dim[p.sigma as usize] == d {
                if let Some(a) = chain.remove(&p.sigma) {
                    let s = ck(a.checked_mul(-(p.u as i128)))?;
                    for &(f, v) in &p.c {
                        add_to(&mut chain, f, ck(s.checked_mul(v as i128))?)?;
                    }
                }
            }
        }
        Ok(chain)
    }

    /// Matrix of the map induced in `H_d` by the vertex map `perm` (which must
    /// be a simplicial automorphism of `k`). Column `j` holds the coordinates
    /// of the image of generator `j`; torsion rows are reduced modulo their order.
    pub fn action(&self, k: &SimplicialComplex, perm: &[usize], d: usize) -> Result<Vec<Vec<i64>>> {
        let index = k.index_map();
        self.action_with_index(k, &index, perm, d)
    }

    fn action_with_index(
        &self,
        k: &SimplicialComplex,
        index: &HashMap<&[u32], usize>,
        perm: &[usize],
        d: usize,
    ) -> Result<Vec<Vec<i64>>> {
        let Some(basis) = self.degrees.get(d) else { return Ok(Vec::new()) };
        let n = basis.slots.len();
        let pos: HashMap<u32, usize> = basis.cells.iter().enumerate().map(|(i, &c)| (c, i)).collect();
        let mut out = vec![vec![0i64; n]; n];
        for (col, generator) in basis.generators.iter().enumerate() {
            let chain: Chain = basis
                .cells
                .iter()
                .zip(generator)
                .filter(|(_, &v)| v != 0)
                .map(|(&c, &v)| (c, v))
                .collect();
            let lifted = self.lift(chain, d as i32)?;
            let mut image = Chain::new();
            for (&cell, &v) in &lifted {
                let s = &k.simplices()[cell as usize - 1];
                let mut mapped: Vec<u32> = s.iter().map(|&x| perm[x as usize] as u32).collect();
                let sign = sort_sign(&mut mapped);
                let target = *index.get(mapped.as_slice()).ok_or_else(|| {
                    Error::InvalidInput("vertex map is not a simplicial automorphism".into())
                })? as u32
                    + 1;
                add_to(&mut image, target, v * sign)?;
            }
            let projected = self.project(image, d as i32)?;
            let mut z = vec![0i128; basis.cells.len()];
            for (&c, &v) in &projected {
                let i = *pos.get(&c).ok_or_else(|| {
                    Error::InternalAssertionFailed("projection left the reduced complex".into())
                })?;
                z[i] = v;
            }
            let y = mat_vec(&basis.cycle_coords, &z)?;
            let classes = mat_vec(&basis.class_transform, &y)?;
            for (row, (&slot, &m)) in basis.slots.iter().zip(&basis.moduli).enumerate() {
                let mut v = classes[slot];
                if m > 0 {
                    v = v.rem_euclid(m);
                }
                out[row][col] = i64::try_from(v).map_err(|_| overflow())?;
            }
        }
        Ok(out)
    }

    /// Actions of several vertex maps in every degree: `result[i][d]`.
    pub fn actions(&self, k: &SimplicialComplex, perms: &[Vec<usize>]) -> Result<Vec<Vec<Vec<Vec<i64>>>>> {
        let index = k.index_map();
        perms
            .iter()
            .map(|p| {
                (0..self.degrees.len())
                    .map(|d| self.action_with_index(k, &index, p, d))
                    .collect()
            })
            .collect()
    }
}

fn mat_vec(m: &Mat, v: &[i128]) -> Result<Vec<i128>> {
    m.iter()
        .map(|row| {
            let mut s: i128 = 0;
            for (a, b) in row.iter().zip(v) {
                if *a != 0 && *b != 0 {
                    s = ck(a.checked_mul(*b).and_then(|x| s.checked_add(x)))?;
                }
            }
            Ok(s)
        })
        .collect()
}

/// Sorts in place and returns the sign of the sorting permutation.
fn sort_sign(v: &mut [u32]) -> i128 {
    let mut sign = 1;
    for i in 1..v.len() {
        let mut j = i;
        while j > 0 && v[j - 1] > v[j] {
            v.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    sign
}

/// Identity matrix check used for homological triviality of an action.
pub fn is_identity(m: &[Vec<i64>]) -> bool {
    m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, &x)| x == i64::from(i == j)))
}
