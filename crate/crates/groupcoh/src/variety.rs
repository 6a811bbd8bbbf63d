//! Rank varieties of modules over elementary abelian subgroups, and the
//! support of a module on the poset of elementary abelian subgroups.
//!
//! For an elementary abelian subgroup `E` of rank `r` with basis
//! `g_1, ..., g_r` and a point `alpha` of projective `(r-1)`-space, the
//! shifted unit `u_alpha = 1 + sum alpha_i (g_i - 1)` has order `p`, and a
//! module is free over `k[u_alpha]` exactly when `(u_alpha - 1)^(p-1)` has
//! rank `dim / p`.  The locus of non-free points is scanned exhaustively
//! over the requested finite field, so every reported point is certified
//! and the only approximation is the size of the scan field.
//!
//! A scanned point is attributed to a subgroup class of rank `r` only when
//! its coordinates span an `r`-dimensional space over the prime field;
//! points with smaller span already live on a proper subgroup and are
//! counted there.  Supports computed this way are unions of certified
//! closed points: scans over the prime field and its quadratic extension
//! see every class of rank at most two, while classes of rank three or
//! more can enter a support only through the downward closure of the
//! nodes above them.

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::{Elt, Fq};
use crate::group::{PermGroup, QuillenPoset};
use crate::matrix::Mat;
use crate::module::Module;
use crate::resolution::is_projective;
use crate::ring::{free_along, projective_points};

/// Exhaustive scan of the non-free points of one module over one
/// elementary abelian subgroup.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RankVarietyLocus {
    /// Group element indices of the scanned subgroup basis.
    pub basis: Vec<usize>,
    pub rank: u32,
    /// The coordinate field of the scan.
    pub field: Fq,
    /// Normalized projective coordinates of the non-free points.
    pub points: Vec<Vec<Elt>>,
    /// Whether every point of projective space over `field` was tested.
    pub exhaustive: bool,
}

/// Scans all of projective `(rank-1)`-space over `scan` for points whose
/// shifted unit fails to act freely on `m` restricted to `e`.
pub fn rank_variety_locus(
    alg: &GroupAlgebra,
    m: &Module,
    e: &PermGroup,
    scan: Fq,
) -> Result<RankVarietyLocus> {
    let field = alg.field();
    let p = field.characteristic();
    if m.field() != field {
        return Err(Error::input("module and algebra are over different fields"));
    }
    if scan.characteristic() != p {
        return Err(Error::input(
            "the scan field does not have the coefficient characteristic",
        ));
    }
    let group = alg.group();
    let indices = group.indices_of_subgroup(e)?;
    if indices.len() < 2 {
        return Err(Error::input("the subgroup is trivial, so it has no rank variety"));
    }
    if !e.is_abelian() || indices.iter().any(|&i| i != 0 && group.order_of(i) != u64::from(p)) {
        return Err(Error::input("the subgroup is not elementary abelian"));
    }
    let basis = group.elementary_abelian_basis(&indices, p);
    let rank = basis.len();

    let restricted = m.restrict(group, &group.subgroup_from_indices(&basis))?;
    let scanned = if scan.order() > field.order() {
        restricted.extend_scalars(scan)?
    } else {
        restricted
    };
    let actions: Vec<Mat> = (0..rank).map(|i| scanned.generator_action(i).clone()).collect();

    let mut points = Vec::new();
    let mut free_points = 0usize;
    for alpha in projective_points(scan, rank) {
        if free_along(&actions, scanned.field(), scanned.dim(), &alpha, p) {
            free_points += 1;
        } else {
            points.push(alpha);
        }
    }
    if free_points > 0 && scanned.dim() % p as usize != 0 {
        return Err(Error::internal(
            "a point scanned as free on a module of dimension not divisible by p",
        ));
    }
    Ok(RankVarietyLocus { basis, rank: rank as u32, field: scan, points, exhaustive: true })
}

/// Dimension of the prime-field span of a point's coordinates.  A point
/// belongs properly to a rank `r` subgroup exactly when this equals `r`.
fn genuine_rank(f: Fq, alpha: &[Elt]) -> usize {
    Mat::from_fn(f.prime_subfield(), 2, alpha.len(), |i, j| {
        let (a, b) = f.coords(alpha[j]);
        if i == 0 {
            a
        } else {
            b
        }
    })
    .rank()
}

/// The support of `m` on the poset: node indices whose subgroup carries a
/// certified non-free point proper to that node, closed downward, plus the
/// trivial node whenever `m` is nonzero and not projective.  Supports of
/// projective modules (and of the zero module) are empty.
pub fn module_support(
    alg: &GroupAlgebra,
    m: &Module,
    poset: &QuillenPoset,
) -> Result<Vec<usize>> {
    let p = alg.field().characteristic();
    if poset.prime != p {
        return Err(Error::input("the poset was built at a different prime"));
    }
    if m.dim() == 0 || is_projective(alg, m)? {
        return Ok(Vec::new());
    }
    let group = alg.group();
    let scans = [alg.field().prime_subfield(), Fq::quadratic(p)?];
    let mut attributed = vec![false; poset.nodes.len()];
    attributed[0] = true;
    for (i, node) in poset.nodes.iter().enumerate().skip(1) {
        let e = group.subgroup_from_indices(&node.rep);
        for scan in scans {
            let locus = rank_variety_locus(alg, m, &e, scan)?;
            if locus.points.iter().any(|a| genuine_rank(scan, a) == node.rank as usize) {
                attributed[i] = true;
                break;
            }
        }
    }
    Ok((0..poset.nodes.len())
        .filter(|&i| attributed[i] || poset.edges[i].iter().any(|&j| attributed[j]))
        .collect())
}
