//! Order complexes, their integral homology, and the action of
//! self-equivalences on it.

mod complex;
mod homology;

pub use complex::{order_complex, SimplicialComplex};
pub use homology::{homology, homology_with_basis, is_identity, HomologyBasis, HomologyGroup, HomologySummary};

use crate::error::{Error, Result};
use crate::homotopy::core;
use crate::limits::Limits;
use crate::poset::Poset;
use crate::symmetry::{automorphism_group, PermGroup};

/// Reduced homology of `K(p)`.
pub fn poset_homology(p: &Poset, limits: &Limits) -> Result<HomologySummary> {
    homology(&order_complex(p, limits)?)
}

/// `Some(k)` when `K(p)` has the homology of a wedge of `k` circles: reduced
/// homology free of rank `k` in degree 1 and zero elsewhere. A space with no
/// homology at all gives `Some(0)`, the empty wedge. The count is checked
/// against `1 - χ(K(p))`.
pub fn wedge_of_circles_check(p: &Poset, limits: &Limits) -> Result<Option<usize>> {
    let k = order_complex(p, limits)?;
    let h = homology(&k)?;
    let fits = h
        .groups
        .iter()
        .all(|g| g.torsion.is_empty() && (g.degree == 1 || g.betti == 0));
    if !fits || p.is_empty() {
        return Ok(None);
    }
    let circles = h.betti(1);
    if circles as i64 != 1 - k.euler_characteristic() {
        return Err(Error::InternalAssertionFailed(format!(
            "b_1 = {circles} but 1 - χ = {}",
            1 - k.euler_characteristic()
        )));
    }
    Ok(Some(circles))
}

/// Matrix of the map induced by the automorphism `phi` of `p` on reduced
/// `H_d(K(p))`, in the basis fixed by [`homology_with_basis`].
pub fn homology_action(p: &Poset, phi: &[usize], d: usize, limits: &Limits) -> Result<Vec<Vec<i64>>> {
    if !p.is_automorphism(phi) {
        return Err(Error::InvalidInput("not an automorphism".into()));
    }
    let k = order_complex(p, limits)?;
    homology_with_basis(&k)?.action(&k, phi, d)
}

/// `E_*(p)`: the elements of `E(p) = Aut(core p)` acting as the identity on
/// the homology of the core in every degree. Returns `E(p)` and the indices
/// of the subgroup; the subgroup is checked to be normal.
pub fn homologically_trivial_action_subgroup(p: &Poset, limits: &Limits) -> Result<(PermGroup, Vec<usize>)> {
    let (c, _) = core(p);
    let e = automorphism_group(&c, limits)?;
    let k = order_complex(&c, limits)?;
    let basis = homology_with_basis(&k)?;
    let actions = basis.actions(&k, e.perms())?;
    let sub: Vec<usize> = (0..e.order())
        .filter(|&i| actions[i].iter().all(|m| is_identity(m)))
        .collect();
    let g = e.as_finite_group();
    if !g.is_normal(&sub) || g.closure(&sub) != sub {
        return Err(Error::InternalAssertionFailed("E_* is not a normal subgroup".into()));
    }
    Ok((e, sub))
}
