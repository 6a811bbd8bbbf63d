//! Tate cohomology windows and their scans.
//!
//! For modules M and N, the groups on a degree window come from a windowed
//! complete resolution of M: the cochain space in degree n is the space of
//! homomorphisms from the resolution term of degree -1-n into N, and the
//! differential precomposes with the resolution boundary. Homomorphisms
//! from a projective summand Q are stored as the image of the cyclic
//! generator of Q, which identifies Hom(Q, N) with the subspace of N
//! killed by the generator's annihilator; differentials become small
//! blocks of exact linear algebra in those coordinates, and every block
//! is certified to land back inside the homomorphism subspace.

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::matrix::Mat;
use crate::module::Module;
use crate::resolution::{build_complete, ProjectiveTerm};
use std::collections::HashMap;

/// Dimensions of a family of cohomology groups on `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohomologyWindow {
    lo: i64,
    hi: i64,
    dims: Vec<usize>,
}

impl CohomologyWindow {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn dim(&self, n: i64) -> usize {
        self.dims[(n - self.lo) as usize]
    }

    /// Degree and dimension pairs in ascending degree order.
    pub fn entries(&self) -> impl Iterator<Item = (i64, usize)> + '_ {
        self.dims.iter().enumerate().map(|(i, &d)| (self.lo + i as i64, d))
    }

    pub fn is_zero(&self) -> bool {
        self.dims.iter().all(|&d| d == 0)
    }
}

/// Hom(Q, N) for one cached projective, in generator-image coordinates:
/// `basis` embeds coordinates into N, `left_inverse` extracts them.
struct HomData {
    basis: Mat,
    left_inverse: Mat,
    dim: usize,
}

/// Shared data for the Hom complex of one target module N.
struct HomComplex<'a> {
    alg: &'a GroupAlgebra,
    target: &'a Module,
    actions: Vec<Mat>,
    cache: HashMap<(bool, usize), HomData>,
}

impl<'a> HomComplex<'a> {
    fn new(alg: &'a GroupAlgebra, target: &'a Module) -> HomComplex<'a> {
        HomComplex {
            alg,
            target,
            actions: target.element_actions(alg.group()),
            cache: HashMap::new(),
        }
    }

    fn hom_data(&mut self, dual: bool, j: usize) -> Result<&HomData> {
        let f = self.alg.field();
        let n_dim = self.target.dim();
        if !self.cache.contains_key(&(dual, j)) {
            let pim = if dual { self.alg.dual_pim(j) } else { self.alg.pim(j) };
            let vectors = self.alg.hom_from_projective(pim, self.target);
            let h = vectors.len();
            let basis = Mat::from_fn(f, n_dim, h, |i, c| vectors[c][i]);
            let left_inverse = basis
                .transpose()
                .solve(&Mat::identity(f, h))
                .ok_or_else(|| Error::internal("homomorphism basis is not independent"))?
                .transpose();
            self.cache.insert((dual, j), HomData { basis, left_inverse, dim: h });
        }
        Ok(self.cache.get(&(dual, j)).unwrap())
    }

    fn space_dim(&mut self, term: &ProjectiveTerm) -> Result<usize> {
        let mut total = 0;
        for &j in term.summands() {
            total += self.hom_data(term.is_dual(), j)?.dim;
        }
        Ok(total)
    }

    /// The coordinate offsets of each summand's Hom block, plus the total.
    fn block_offsets(&mut self, term: &ProjectiveTerm) -> Result<(Vec<usize>, usize)> {
        let mut offsets = Vec::with_capacity(term.summands().len());
        let mut total = 0;
        for &j in term.summands() {
            offsets.push(total);
            total += self.hom_data(term.is_dual(), j)?.dim;
        }
        Ok((offsets, total))
    }

    /// Precomposition Hom(A, N) -> Hom(B, N) with a boundary d : B -> A,
    /// in generator-image coordinates.
    fn precompose(
        &mut self,
        a_term: &ProjectiveTerm,
        b_term: &ProjectiveTerm,
        d: &Mat,
    ) -> Result<Mat> {
        let f = self.alg.field();
        let (a_offsets, a_total) = self.block_offsets(a_term)?;
        let (b_offsets, b_total) = self.block_offsets(b_term)?;
        let mut out = Mat::zero(f, b_total, a_total);
        for (b, &b_start) in b_offsets.iter().enumerate() {
            let b_pim = b_term.summand_pim(self.alg, b);
            // Image in A of the cyclic generator of summand b.
            let mut embedded = vec![0; b_term.dim()];
            let off = b_term.offsets()[b];
            embedded[off..off + b_pim.module.dim()].copy_from_slice(&b_pim.generator);
            let w = d.apply(&embedded);
            for (a, &a_start) in a_offsets.iter().enumerate() {
                let a_pim = a_term.summand_pim(self.alg, a);
                let a_off = a_term.offsets()[a];
                let w_a = &w[a_off..a_off + a_pim.module.dim()];
                if w_a.iter().all(|&c| c == 0) {
                    continue;
                }
                let coeffs = a_pim.eval_right_inverse.apply(w_a);
                let act = GroupAlgebra::action_from_coeffs(&coeffs, &self.actions);
                let a_data = self.hom_data(a_term.is_dual(), a_term.summands()[a])?;
                let image = act.mul(&a_data.basis);
                let a_dim = a_data.dim;
                let b_data = self.hom_data(b_term.is_dual(), b_term.summands()[b])?;
                let block = b_data.left_inverse.mul(&image);
                if b_data.basis.mul(&block) != image {
                    return Err(Error::internal(
                        "precomposition image escapes the homomorphism space",
                    ));
                }
                for r in 0..b_data.dim {
                    for c in 0..a_dim {
                        out.set(b_start + r, a_start + c, block.at(r, c));
                    }
                }
            }
        }
        Ok(out)
    }
}

/// Dimensions of the Tate groups between two modules for every degree in
/// `[lo, hi]`.
pub fn ext_hat(
    alg: &GroupAlgebra,
    m: &Module,
    n: &Module,
    lo: i64,
    hi: i64,
    seed: u64,
    size_cap: u64,
) -> Result<CohomologyWindow> {
    if lo > hi {
        return Err(Error::input(format!("empty degree window [{lo}, {hi}]")));
    }
    let res = build_complete(alg, m, -2 - hi, -lo, seed, size_cap)?;
    let mut hom = HomComplex::new(alg, n);
    // deltas[i] is the differential out of cochain degree lo - 1 + i.
    let mut deltas = Vec::with_capacity((hi - lo + 2) as usize);
    for deg in (lo - 1)..=hi {
        let a_term = res.term(-1 - deg);
        let b_term = res.term(-2 - deg);
        deltas.push(hom.precompose(a_term, b_term, res.boundary(-2 - deg))?);
    }
    for i in 0..deltas.len() - 1 {
        if !deltas[i + 1].mul(&deltas[i]).is_zero() {
            return Err(Error::internal(
                "Hom complex differentials do not compose to zero",
            ));
        }
    }
    let ranks: Vec<usize> = deltas.iter().map(|d| d.rank()).collect();
    let mut dims = Vec::with_capacity((hi - lo + 1) as usize);
    for deg in lo..=hi {
        let i = (deg - lo) as usize;
        let space = hom.space_dim(res.term(-1 - deg))?;
        dims.push(space - ranks[i + 1] - ranks[i]);
    }
    Ok(CohomologyWindow { lo, hi, dims })
}

/// Tate cohomology of the group with coefficients in `m`.
pub fn tate_cohomology(
    alg: &GroupAlgebra,
    m: &Module,
    lo: i64,
    hi: i64,
    seed: u64,
    size_cap: u64,
) -> Result<CohomologyWindow> {
    let k = Module::trivial(alg.field(), alg.group());
    ext_hat(alg, &k, m, lo, hi, seed, size_cap)
}

/// Zero runs found in a cohomology window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapReport {
    /// Maximal runs of consecutive zero dimensions of qualifying length,
    /// as (first degree, length).
    pub runs: Vec<(i64, usize)>,
    /// A qualifying zero run coexists with a non-zero dimension.
    pub violation: bool,
    /// Every dimension in the window is zero.
    pub all_zero: bool,
}

/// Scans a window for runs of at least `threshold` consecutive zero
/// dimensions. A run alongside non-zero dimensions elsewhere in the
/// window is flagged; whole-window vanishing is not.
pub fn gap_scan(window: &CohomologyWindow, threshold: usize) -> Result<GapReport> {
    let length = (window.hi() - window.lo() + 1) as usize;
    if threshold == 0 || length <= threshold {
        return Err(Error::input(format!(
            "gap scan needs a window longer than the threshold {threshold}, got {length}"
        )));
    }
    let mut runs = Vec::new();
    let mut run_start: Option<i64> = None;
    for (deg, dim) in window.entries() {
        if dim == 0 {
            run_start.get_or_insert(deg);
        } else if let Some(start) = run_start.take() {
            let len = (deg - start) as usize;
            if len >= threshold {
                runs.push((start, len));
            }
        }
    }
    if let Some(start) = run_start {
        let len = (window.hi() - start + 1) as usize;
        if len >= threshold {
            runs.push((start, len));
        }
    }
    let all_zero = window.is_zero();
    let violation = !all_zero && !runs.is_empty();
    Ok(GapReport { runs, violation, all_zero })
}

/// Degreewise result of comparing two modules through a homomorphism.
#[derive(Clone, Debug)]
pub struct EquivalenceWindow {
    pub lo: i64,
    pub hi: i64,
    /// Whether the induced map on Tate cohomology is bijective, per degree.
    pub iso: Vec<bool>,
    /// A run of `run_length` consecutive bijective degrees was found.
    pub certified: bool,
    pub run_length: usize,
}

/// Tests whether `f : m -> n` induces isomorphisms on Tate cohomology for
/// `run_length` consecutive degrees inside `[lo, hi]`.
pub fn cohomology_equivalence_window(
    alg: &GroupAlgebra,
    f: &Mat,
    m: &Module,
    n: &Module,
    lo: i64,
    hi: i64,
    run_length: usize,
    seed: u64,
    size_cap: u64,
) -> Result<EquivalenceWindow> {
    if lo > hi {
        return Err(Error::input(format!("empty degree window [{lo}, {hi}]")));
    }
    if run_length == 0 || ((hi - lo + 1) as usize) < run_length {
        return Err(Error::input(format!(
            "window [{lo}, {hi}] is shorter than the required run of {run_length}"
        )));
    }
    if f.rows() != n.dim() || f.cols() != m.dim() {
        return Err(Error::input("homomorphism shape does not match the modules"));
    }
    for gi in 0..m.generator_count() {
        if f.mul(m.generator_action(gi)) != n.generator_action(gi).mul(f) {
            return Err(Error::input("map is not a module homomorphism"));
        }
    }
    let k = Module::trivial(alg.field(), alg.group());
    let res = build_complete(alg, &k, -2 - hi, -lo, seed, size_cap)?;
    let mut hom_m = HomComplex::new(alg, m);
    let mut hom_n = HomComplex::new(alg, n);
    let count = (hi - lo + 2) as usize;
    let mut deltas_m = Vec::with_capacity(count);
    let mut deltas_n = Vec::with_capacity(count);
    let mut pushforwards = Vec::with_capacity(count + 1);
    for deg in (lo - 1)..=(hi + 1) {
        let term = res.term(-1 - deg);
        pushforwards.push(pushforward(&mut hom_m, &mut hom_n, term, f)?);
        if deg <= hi {
            let b_term = res.term(-2 - deg);
            let d = res.boundary(-2 - deg);
            deltas_m.push(hom_m.precompose(term, b_term, d)?);
            deltas_n.push(hom_n.precompose(term, b_term, d)?);
        }
    }
    for i in 0..count {
        if pushforwards[i + 1].mul(&deltas_m[i]) != deltas_n[i].mul(&pushforwards[i]) {
            return Err(Error::internal("induced cochain map does not commute"));
        }
    }
    let mut iso = Vec::with_capacity((hi - lo + 1) as usize);
    for deg in lo..=hi {
        let i = (deg - lo) as usize + 1;
        let dim_m = deltas_m[i].cols() - deltas_m[i].rank() - deltas_m[i - 1].rank();
        let dim_n = deltas_n[i].cols() - deltas_n[i].rank() - deltas_n[i - 1].rank();
        if dim_m != dim_n {
            iso.push(false);
            continue;
        }
        let cycles_m = deltas_m[i].nullspace();
        let pushed = pushforwards[i].mul(&cycles_m);
        let boundaries_n = &deltas_n[i - 1];
        let induced_rank = pushed.hstack(boundaries_n).rank() - boundaries_n.rank();
        iso.push(induced_rank == dim_n);
    }
    let certified = iso.windows(run_length).any(|w| w.iter().all(|&b| b));
    Ok(EquivalenceWindow { lo, hi, iso, certified, run_length })
}

/// Postcomposition Hom(T, M) -> Hom(T, N) with f : M -> N, blockwise over
/// the summands of T.
fn pushforward(
    hom_m: &mut HomComplex,
    hom_n: &mut HomComplex,
    term: &ProjectiveTerm,
    f: &Mat,
) -> Result<Mat> {
    let field = f.field();
    let (m_offsets, m_total) = hom_m.block_offsets(term)?;
    let (n_offsets, n_total) = hom_n.block_offsets(term)?;
    let mut out = Mat::zero(field, n_total, m_total);
    for (a, &j) in term.summands().iter().enumerate() {
        let m_data = hom_m.hom_data(term.is_dual(), j)?;
        let image = f.mul(&m_data.basis);
        let m_dim = m_data.dim;
        let n_data = hom_n.hom_data(term.is_dual(), j)?;
        let block = n_data.left_inverse.mul(&image);
        if n_data.basis.mul(&block) != image {
            return Err(Error::internal(
                "pushforward image escapes the homomorphism space",
            ));
        }
        for r in 0..n_data.dim {
            for c in 0..m_dim {
                out.set(n_offsets[a] + r, m_offsets[a] + c, block.at(r, c));
            }
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::PermGroup;
    use crate::resolution::minimal_resolution;

    const CAP: u64 = 1 << 20;

    fn algebra(degree: usize, gens: &[&str], p: u32) -> GroupAlgebra {
        let g = PermGroup::parse(degree, gens).unwrap();
        GroupAlgebra::new(g, Fq::prime(p).unwrap()).unwrap()
    }

    fn trivial(alg: &GroupAlgebra) -> Module {
        Module::trivial(alg.field(), alg.group())
    }

    fn tate(alg: &GroupAlgebra, m: &Module, lo: i64, hi: i64) -> CohomologyWindow {
        tate_cohomology(alg, m, lo, hi, 5, CAP).unwrap()
    }

    #[test]
    fn c2_trivial_module_is_periodic() {
        let alg = algebra(2, &["(1 2)"], 2);
        let k = trivial(&alg);
        let w = ext_hat(&alg, &k, &k, -3, 3, 5, CAP).unwrap();
        for n in -3..=3 {
            assert_eq!(w.dim(n), 1, "degree {n}");
        }
    }

    #[test]
    fn projective_coefficients_vanish() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let k = trivial(&alg);
        let reg = alg.regular_module().clone();
        assert!(ext_hat(&alg, &k, &reg, -2, 2, 5, CAP).unwrap().is_zero());
        assert!(ext_hat(&alg, &reg, &k, -2, 2, 5, CAP).unwrap().is_zero());
        let padded = k.direct_sum(&reg);
        let plain = tate(&alg, &k, -2, 2);
        assert_eq!(tate(&alg, &padded, -2, 2), plain);
    }

    #[test]
    fn s3_mod_3_has_period_four() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 3);
        let k = trivial(&alg);
        let w = ext_hat(&alg, &k, &k, -4, 3, 5, CAP).unwrap();
        let dims: Vec<usize> = (-4..=3).map(|n| w.dim(n)).collect();
        assert_eq!(dims, vec![1, 0, 0, 1, 1, 0, 0, 1]);
    }

    #[test]
    fn positive_degrees_match_cover_multiplicities_of_the_trivial_summand() {
        // For coefficients in k, minimality makes the Hom complex of the
        // forward resolution have zero differentials, so the n-th ordinary
        // cohomology counts copies of the trivial projective cover in
        // resolution degree n. That count is an independent oracle.
        for (degree, gens, p) in [
            (3, vec!["(1 2)", "(1 2 3)"], 2),
            (4, vec!["(1 2 3)", "(1 2)(3 4)"], 2),
            (4, vec!["(1 2)(3 4)", "(1 3)(2 4)"], 2),
            (8, vec!["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 2),
        ] {
            let alg = algebra(degree, &gens, p);
            let k = trivial(&alg);
            let res = minimal_resolution(&alg, &k, 4, CAP).unwrap();
            let w = ext_hat(&alg, &k, &k, 1, 4, 5, CAP).unwrap();
            for n in 1..=4 {
                let count = res
                    .term(n as usize)
                    .summands()
                    .iter()
                    .filter(|&&j| j == alg.trivial_index())
                    .count();
                assert_eq!(w.dim(n), count, "degree {n} over |G| = {}", alg.group().order());
            }
        }
    }

    #[test]
    fn tate_duality_swaps_arguments_and_negates() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let m = Module::permutation(alg.field(), alg.group());
        let k = trivial(&alg);
        let forward = ext_hat(&alg, &m, &k, -3, 3, 5, CAP).unwrap();
        let backward = ext_hat(&alg, &k, &m, -3, 3, 5, CAP).unwrap();
        for n in -3..=2 {
            assert_eq!(
                forward.dim(-n - 1),
                backward.dim(n),
                "duality between degrees {} and {n}",
                -n - 1
            );
        }
    }

    #[test]
    fn dual_coefficients_shift_degrees() {
        let alg = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        let k = trivial(&alg);
        let m = crate::resolution::omega(&alg, &k, 1, 5, CAP).unwrap();
        let of_dual = ext_hat(&alg, &k, &m.dual(), -3, 3, 5, CAP).unwrap();
        let of_m = ext_hat(&alg, &k, &m, -4, 2, 5, CAP).unwrap();
        for n in -3..=3 {
            assert_eq!(of_dual.dim(n), of_m.dim(-n - 1), "shift at degree {n}");
        }
    }

    #[test]
    fn p_group_terms_measure_cohomology() {
        let alg = algebra(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 2);
        let k = trivial(&alg);
        let w = tate(&alg, &k, -3, 3);
        let dims: Vec<usize> = (-3..=3).map(|n| w.dim(n)).collect();
        assert_eq!(dims, vec![2, 2, 1, 1, 2, 2, 1], "quaternion period four");
        let res =
            crate::resolution::complete_resolution(&alg, &k, -3, 3, 5, CAP).unwrap();
        for n in -3..=3 {
            assert_eq!(res.term(n).dim(), 8 * w.dim(n), "term against degree {n}");
        }
    }

    #[test]
    fn shapiro_for_a_sylow_subgroup() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let group = alg.group();
        let sub = group.sylow(2).unwrap();
        let sub_alg = GroupAlgebra::new(sub.clone(), alg.field()).unwrap();
        let induced = Module::trivial(alg.field(), &sub).induce(group, &sub).unwrap();
        let m = Module::permutation(alg.field(), group);
        let lhs = ext_hat(&alg, &induced, &m, -2, 2, 5, CAP).unwrap();
        let restricted = m.restrict(group, &sub).unwrap();
        let rhs = tate_cohomology(&sub_alg, &restricted, -2, 2, 5, CAP).unwrap();
        for n in -2..=2 {
            assert_eq!(lhs.dim(n), rhs.dim(n), "Shapiro at degree {n}");
        }
    }

    #[test]
    fn gap_scan_reports_runs() {
        let whole = CohomologyWindow { lo: -2, hi: 2, dims: vec![0, 0, 0, 0, 0] };
        let report = gap_scan(&whole, 3).unwrap();
        assert!(report.all_zero);
        assert!(!report.violation);
        assert_eq!(report.runs, vec![(-2, 5)]);

        let dense = CohomologyWindow { lo: -2, hi: 2, dims: vec![1, 1, 1, 1, 1] };
        let report = gap_scan(&dense, 2).unwrap();
        assert!(report.runs.is_empty());
        assert!(!report.violation);

        let gappy = CohomologyWindow { lo: 0, hi: 3, dims: vec![1, 0, 0, 1] };
        let report = gap_scan(&gappy, 2).unwrap();
        assert!(report.violation);
        assert_eq!(report.runs, vec![(1, 2)]);
        assert!(gap_scan(&gappy, 4).is_err(), "threshold must be under the length");
    }

    #[test]
    fn equivalence_certification() {
        let alg = algebra(2, &["(1 2)"], 2);
        let k = trivial(&alg);
        let f = Fq::prime(2).unwrap();
        let id = Mat::identity(f, 1);
        let w = cohomology_equivalence_window(&alg, &id, &k, &k, 0, 3, 2, 5, CAP).unwrap();
        assert!(w.certified);
        assert!(w.iso.iter().all(|&b| b));

        let zero = Mat::zero(f, 1, 1);
        let w = cohomology_equivalence_window(&alg, &zero, &k, &k, 0, 3, 2, 5, CAP).unwrap();
        assert!(!w.certified);
        assert!(w.iso.iter().all(|&b| !b));

        let padded = k.direct_sum(alg.regular_module());
        let inclusion = Mat::from_fn(f, 3, 1, |i, _| if i == 0 { 1 } else { 0 });
        let w = cohomology_equivalence_window(&alg, &inclusion, &k, &padded, 0, 3, 2, 5, CAP)
            .unwrap();
        assert!(w.certified, "projective summands are invisible");

        let skew = Mat::from_fn(f, 3, 1, |i, _| if i == 1 { 1 } else { 0 });
        assert!(
            cohomology_equivalence_window(&alg, &skew, &k, &padded, 0, 3, 2, 5, CAP).is_err(),
            "non-equivariant maps are rejected"
        );
    }
}
