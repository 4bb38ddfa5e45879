//! Automorphism groups, groups of self-equivalences and the map `τ` between them.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::homotopy::{core, Retraction};
use crate::limits::Limits;
use crate::poset::{Poset, PosetFile};
use crate::search;

/// A group of automorphisms of `carrier`, listed in lexicographic order of the
/// image vectors, so the identity has index 0. `table[i][j]` is `perms[i] ∘ perms[j]`.
#[derive(Debug, Clone)]
pub struct PermGroup {
    carrier: Poset,
    perms: Vec<Vec<usize>>,
    table: Vec<Vec<usize>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct PermGroupFile {
    pub carrier: PosetFile,
    pub perms: Vec<Vec<usize>>,
}

impl PermGroup {
    /// Group from a complete, closed list of automorphisms.
    pub fn from_perms(carrier: Poset, mut perms: Vec<Vec<usize>>) -> Result<PermGroup> {
        perms.sort();
        perms.dedup();
        let index: HashMap<&[usize], usize> =
            perms.iter().enumerate().map(|(i, p)| (p.as_slice(), i)).collect();
        let identity: Vec<usize> = (0..carrier.len()).collect();
        if perms.first() != Some(&identity) {
            return Err(Error::InternalAssertionFailed("identity missing".into()));
        }
        if let Some(p) = perms.iter().find(|p| !carrier.is_automorphism(p)) {
            return Err(Error::InternalAssertionFailed(format!("{p:?} is not an automorphism")));
        }
        let mut table = Vec::with_capacity(perms.len());
        for a in &perms {
            let mut row = Vec::with_capacity(perms.len());
            for b in &perms {
                let c: Vec<usize> = b.iter().map(|&x| a[x]).collect();
                let k = *index
                    .get(c.as_slice())
                    .ok_or_else(|| Error::InternalAssertionFailed("not closed".into()))?;
                row.push(k);
            }
            table.push(row);
        }
        Ok(PermGroup { carrier, perms, table })
    }

    pub fn carrier(&self) -> &Poset {
        &self.carrier
    }

    pub fn order(&self) -> usize {
        self.perms.len()
    }

    pub fn perms(&self) -> &[Vec<usize>] {
        &self.perms
    }

    pub fn perm(&self, i: usize) -> &[usize] {
        &self.perms[i]
    }

    pub fn table(&self) -> &[Vec<usize>] {
        &self.table
    }

    pub fn compose(&self, i: usize, j: usize) -> usize {
        self.table[i][j]
    }

    pub fn index_of(&self, perm: &[usize]) -> Option<usize> {
        self.perms.binary_search_by(|p| p.as_slice().cmp(perm)).ok()
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order()).all(|a| (0..a).all(|b| self.table[a][b] == self.table[b][a]))
    }

    /// The same group as a Cayley table, with a greedy generating set.
    pub fn as_finite_group(&self) -> FiniteGroup {
        FiniteGroup::from_table(self.table.clone()).expect("automorphisms form a group")
    }

    pub fn to_file(&self) -> PermGroupFile {
        PermGroupFile { carrier: self.carrier.to_file(), perms: self.perms.clone() }
    }
}

/// All automorphisms of `p`.
pub fn automorphism_group(p: &Poset, limits: &Limits) -> Result<PermGroup> {
    let perms = search::all_automorphisms(p, limits)?;
    PermGroup::from_perms(p.clone(), perms)
}

/// `E(p)` represented as `Aut(core p)`, with the retraction onto the core.
pub fn equivalence_group(p: &Poset, limits: &Limits) -> Result<(PermGroup, Retraction)> {
    let (c, r) = core(p);
    Ok((automorphism_group(&c, limits)?, r))
}

/// `τ: Aut(p) → E(p)` as an index map between the two permutation groups.
#[derive(Debug, Clone)]
pub struct GroupHomWitness {
    pub source: PermGroup,
    pub target: PermGroup,
    pub map: Vec<usize>,
}

impl GroupHomWitness {
    pub fn kernel(&self) -> Vec<usize> {
        (0..self.map.len()).filter(|&i| self.map[i] == 0).collect()
    }

    pub fn image(&self) -> Vec<usize> {
        let mut v = self.map.clone();
        v.sort_unstable();
        v.dedup();
        v
    }

    pub fn is_homomorphism(&self) -> bool {
        let n = self.map.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                self.map[self.source.compose(a, b)]
                    == self.target.compose(self.map[a], self.map[b])
            })
        })
    }
}

/// Computes `τ(φ) = r ∘ φ` restricted to the core for every automorphism `φ`.
pub fn tau(p: &Poset, limits: &Limits) -> Result<GroupHomWitness> {
    let aut = automorphism_group(p, limits)?;
    let (e, r) = equivalence_group(p, limits)?;
    let map = aut
        .perms()
        .iter()
        .map(|phi| {
            let psi = restrict_to_core(phi, &r);
            e.index_of(&psi).ok_or_else(|| {
                Error::InternalAssertionFailed(format!(
                    "r∘φ restricted to the core is not an automorphism: {psi:?}"
                ))
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let w = GroupHomWitness { source: aut, target: e, map };
    if !w.is_homomorphism() {
        return Err(Error::InternalAssertionFailed("τ is not a homomorphism".into()));
    }
    Ok(w)
}

/// `r ∘ φ ∘ i` as a permutation of core indices.
pub fn restrict_to_core(phi: &[usize], r: &Retraction) -> Vec<usize> {
    r.inclusion.iter().map(|&s| r.apply(phi[s])).collect()
}

/// An isomorphism from `g` (element indices) to `h`, if one exists.
pub fn isomorphic_to(g: &PermGroup, h: &FiniteGroup, limits: &Limits) -> Result<Option<Vec<usize>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() > limits.max_iso_group_order {
        return Err(Error::GroupTooLarge {
            cap: "max_iso_group_order",
            limit: limits.max_iso_group_order as u64,
        });
    }
    g.as_finite_group().isomorphism_to(h, limits.max_search_nodes)
}

/// Which family of column labels an action is read from: `(g…, ℓ)` or `(h…, ℓ)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    G,
    H,
}

impl Role {
    pub fn prefix(self) -> char {
        match self {
            Role::G => 'g',
            Role::H => 'h',
        }
    }
}

/// Parses a column label `(<prefix><k>,<level>)` into `(prefix, k - 1, level)`.
pub fn parse_column(label: &str) -> Option<(char, usize, &str)> {
    let inner = label.strip_prefix('(')?.strip_suffix(')')?;
    let (elem, level) = inner.split_once(',')?;
    let mut chars = elem.chars();
    let prefix = chars.next()?;
    let k: usize = chars.as_str().parse().ok()?;
    (k >= 1).then_some((prefix, k - 1, level))
}

/// Reads the group element `t` with `φ(g', α) = (t·g', α)` on every column
/// point of the given role.
pub fn decode_action(p: &Poset, phi: &[usize], group: &FiniteGroup, role: Role) -> Result<usize> {
    let mut t: Option<usize> = None;
    for i in 0..p.len() {
        let Some((c, a, level)) = parse_column(p.label(i)) else { continue };
        if c != role.prefix() || a >= group.order() {
            continue;
        }
        let image = p.label(phi[i]);
        let (c2, b, level2) = parse_column(image)
            .filter(|&(c2, b, _)| c2 == c && b < group.order())
            .ok_or_else(|| {
                Error::InconsistentAction(format!("{} ↦ {} leaves the columns", p.label(i), image))
            })?;
        debug_assert_eq!(c2, c);
        if level2 != level {
            return Err(Error::InconsistentAction(format!(
                "{} ↦ {} changes level",
                p.label(i),
                image
            )));
        }
        let here = group.mul(b, group.inverse(a));
        match t {
            None => t = Some(here),
            Some(prev) if prev != here => {
                return Err(Error::InconsistentAction(format!(
                    "columns disagree at {}: {} vs {}",
                    p.label(i),
                    prev,
                    here
                )))
            }
            _ => {}
        }
    }
    t.ok_or_else(|| {
        Error::NotCanonicallyLabeled(format!("no `({}…,ℓ)` column points", role.prefix()))
    })
}
