//! The nucleus of a group at a prime, the classification it induces, and
//! the support-containment check for modules with no Tate cohomology.
//!
//! The nucleus is the downward closed set of poset nodes whose subgroup
//! has a centralizer that is not p-nilpotent.  Its shape separates three
//! regimes: an empty nucleus (the group itself is p-nilpotent), a nucleus
//! containing only the origin, and a nucleus with positive-rank nodes.
//! The first two regimes are exactly the groups in which the centralizer
//! of every element of order p is p-nilpotent, and for those groups the
//! eight conjectures about cohomologically trivial modules are settled;
//! the two characterizations are computed independently and compared.

use std::fmt;

use crate::algebra::GroupAlgebra;
use crate::blocks::{block_decomposition, block_of};
use crate::error::{Error, Result};
use crate::ext::tate_cohomology;
use crate::field::Fq;
use crate::group::{PermGroup, QuillenPoset};
use crate::module::Module;
use crate::variety::module_support;

/// Shape of the nucleus.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum NucleusClass {
    Empty,
    ZeroOnly,
    Nontrivial,
}

impl fmt::Display for NucleusClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            NucleusClass::Empty => "EMPTY",
            NucleusClass::ZeroOnly => "ZERO_ONLY",
            NucleusClass::Nontrivial => "NONTRIVIAL",
        })
    }
}

/// The nucleus of one group at one prime, on its poset of elementary
/// abelian subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NucleusReport {
    pub poset: QuillenPoset,
    /// Poset node indices in the nucleus, closed downward.
    pub nucleus_nodes: Vec<usize>,
    /// Whether the origin lies in the nucleus, decided directly from
    /// p-nilpotency of the whole group.
    pub zero_in_nucleus: bool,
    pub classification: NucleusClass,
}

pub fn nucleus(group: &PermGroup, p: u32) -> Result<NucleusReport> {
    Fq::prime(p)?;
    let poset = group.quillen_poset(p);
    let raw: Vec<usize> = (0..poset.nodes.len())
        .filter(|&i| !poset.nodes[i].centralizer_p_nilpotent)
        .collect();
    let nucleus_nodes: Vec<usize> = (0..poset.nodes.len())
        .filter(|&i| raw.contains(&i) || poset.edges[i].iter().any(|j| raw.contains(j)))
        .collect();
    let zero_in_nucleus = !group.is_p_nilpotent(p);
    if nucleus_nodes.contains(&0) != zero_in_nucleus {
        return Err(Error::internal(
            "the nucleus and the p-nilpotency test disagree at the origin",
        ));
    }
    let classification = if nucleus_nodes.is_empty() {
        NucleusClass::Empty
    } else if nucleus_nodes.iter().all(|&i| poset.nodes[i].rank == 0) {
        NucleusClass::ZeroOnly
    } else {
        NucleusClass::Nontrivial
    };
    Ok(NucleusReport { poset, nucleus_nodes, zero_in_nucleus, classification })
}

/// Verdict on one of the eight conjectures, for one group and prime.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    ProvenHere,
    Open,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ProvenHere => "PROVEN_HERE",
            Verdict::Open => "OPEN",
        })
    }
}

/// Where one group and prime stand with respect to the conjectures C1
/// through C8 on cohomologically trivial modules.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConjectureStatus {
    pub prime: u32,
    /// Whether the centralizer of every element of order p is p-nilpotent.
    /// Under this hypothesis all eight conjectures hold.
    pub order_p_centralizers_p_nilpotent: bool,
    /// One verdict per conjecture, indexed C1 through C8.
    pub verdicts: [Verdict; 8],
    /// What the hypothesis says about the singularity category of the
    /// principal block.
    pub singularity_note: String,
}

pub fn classify(group: &PermGroup, p: u32) -> Result<ConjectureStatus> {
    Fq::prime(p)?;
    let order_p_centralizers_p_nilpotent = group.elements_of_order_p(p).iter().all(|&x| {
        group
            .subgroup_from_indices(&group.centralizer_indices(&[x]))
            .is_p_nilpotent(p)
    });
    let report = nucleus(group, p)?;
    if order_p_centralizers_p_nilpotent != (report.classification != NucleusClass::Nontrivial) {
        return Err(Error::internal(
            "the centralizer hypothesis and the nucleus classification disagree",
        ));
    }
    let verdict = if order_p_centralizers_p_nilpotent { Verdict::ProvenHere } else { Verdict::Open };
    let singularity_note = match report.classification {
        NucleusClass::Empty => "zero",
        NucleusClass::ZeroOnly => "equals the nucleus",
        NucleusClass::Nontrivial => "contained in the nucleus, conditional on C8",
    };
    Ok(ConjectureStatus {
        prime: p,
        order_p_centralizers_p_nilpotent,
        verdicts: [verdict; 8],
        singularity_note: singularity_note.to_string(),
    })
}

/// Outcome of the support-containment check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SupportVerdict {
    Pass,
    /// Support nodes lying outside the nucleus.
    Fail { offending: Vec<usize> },
}

/// Checks that a principal-block module with no Tate cohomology on the
/// given window has support inside the nucleus.  The window must be
/// longer than the cohomology bound `n_upper` for vanishing on it to
/// certify vanishing everywhere; violated preconditions are input errors,
/// never failures.
pub fn no_cohomology_support_check(
    alg: &GroupAlgebra,
    m: &Module,
    lo: i64,
    hi: i64,
    n_upper: usize,
    report: &NucleusReport,
    seed: u64,
    size_cap: u64,
) -> Result<SupportVerdict> {
    if lo > hi || (hi - lo + 1) as usize <= n_upper {
        return Err(Error::input(
            "the window is not longer than the parameter degree bound",
        ));
    }
    let blocks = block_decomposition(alg)?;
    if block_of(alg, &blocks, m)? != Some(blocks.principal_index()) {
        return Err(Error::input("the module does not lie in the principal block"));
    }
    let window = tate_cohomology(alg, m, lo, hi, seed, size_cap)?;
    if (lo..=hi).any(|n| window.dim(n) != 0) {
        return Err(Error::input("the module has Tate cohomology on the window"));
    }
    let support = module_support(alg, m, &report.poset)?;
    let offending: Vec<usize> = support
        .into_iter()
        .filter(|i| !report.nucleus_nodes.contains(i))
        .collect();
    if offending.is_empty() {
        Ok(SupportVerdict::Pass)
    } else {
        Ok(SupportVerdict::Fail { offending })
    }
}
