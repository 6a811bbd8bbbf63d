//! Minimal projective covers, syzygies, and minimal resolutions.
//!
//! The cover of a module M is assembled one projective indecomposable at a
//! time: homomorphisms from the indecomposable Q_j correspond to vectors of
//! M killed by the annihilator of the cyclic generator of Q_j, and a greedy
//! pass keeps exactly those whose images are needed to cover the head of M.
//! Minimality is certified after the fact: the kernel of the cover map must
//! lie inside the radical of the covering projective.
//!
//! A complete resolution is a doubly infinite exact complex of projectives
//! `... -> I_{-1} -> I_0 -> I_1 -> ...` around the projective-free core of
//! M: negative-degree terms come from the minimal resolution of the core,
//! non-negative ones are duals of the minimal resolution of the dual core,
//! and the two halves are spliced through the core itself. Each windowed
//! build re-certifies exactness, composition to zero, and radical-valued
//! differentials on the whole window.

use crate::algebra::{GroupAlgebra, Pim};
use crate::error::{Error, Result};
use crate::field::Elt;
use crate::matrix::{Mat, Subspace};
use crate::module::Module;

/// A direct sum of cached projective indecomposables, kept with its
/// summand list so homomorphisms out of it stay cheap to enumerate.
#[derive(Clone)]
pub struct ProjectiveTerm {
    summands: Vec<usize>,
    dual: bool,
    offsets: Vec<usize>,
    module: Module,
}

impl ProjectiveTerm {
    fn build(alg: &GroupAlgebra, summands: Vec<usize>, dual: bool) -> ProjectiveTerm {
        let mut module = Module::zero(alg.field(), alg.group());
        let mut offsets = Vec::with_capacity(summands.len());
        for &j in &summands {
            offsets.push(module.dim());
            let part = if dual {
                &alg.dual_pim(j).module
            } else {
                &alg.pim(j).module
            };
            module = module.direct_sum(part);
        }
        ProjectiveTerm { summands, dual, offsets, module }
    }

    pub fn module(&self) -> &Module {
        &self.module
    }

    pub fn dim(&self) -> usize {
        self.module.dim()
    }

    /// Indices into the algebra's projective list, one per summand.
    pub fn summands(&self) -> &[usize] {
        &self.summands
    }

    /// Whether the summands are duals of projective indecomposables.
    pub fn is_dual(&self) -> bool {
        self.dual
    }

    /// Starting coordinate of each summand inside the direct sum.
    pub fn offsets(&self) -> &[usize] {
        &self.offsets
    }

    /// The cached indecomposable underlying summand `a`.
    pub fn summand_pim<'a>(&self, alg: &'a GroupAlgebra, a: usize) -> &'a Pim {
        if self.dual {
            alg.dual_pim(self.summands[a])
        } else {
            alg.pim(self.summands[a])
        }
    }

    /// The radical of the direct sum, assembled blockwise from the cached
    /// radicals of the summands.
    pub fn radical(&self, alg: &GroupAlgebra) -> Subspace {
        let mut rad = Subspace::new(self.module.field(), self.module.dim());
        for (a, &off) in self.offsets.iter().enumerate() {
            let pim = self.summand_pim(alg, a);
            for row in pim.radical.basis_rows() {
                let mut v = vec![0; self.module.dim()];
                v[off..off + row.len()].copy_from_slice(row);
                rad.insert(v);
            }
        }
        rad
    }
}

/// A minimal projective cover q : F -> M together with its kernel.
pub struct Cover {
    pub term: ProjectiveTerm,
    pub map: Mat,
    pub kernel: Module,
    pub kernel_inclusion: Mat,
}

/// Builds the minimal projective cover of a module, certifying both
/// surjectivity and minimality (kernel inside the radical of the cover).
pub fn minimal_cover(alg: &GroupAlgebra, m: &Module) -> Result<Cover> {
    let f = alg.field();
    let actions = m.element_actions(alg.group());
    let mut covered = alg.radical_subspace(m);
    let mut picks: Vec<(usize, Vec<Elt>)> = Vec::new();
    for j in 0..alg.simple_count() {
        let q = alg.pim(j);
        for target in alg.hom_from_projective(q, m) {
            if covered.contains(&target) {
                continue;
            }
            for v in m.spin(&[target.clone()]).basis_rows() {
                covered.insert(v.clone());
            }
            picks.push((j, target));
        }
    }
    if !covered.is_full() {
        return Err(Error::internal(
            "projective homomorphisms failed to cover the head of the module",
        ));
    }
    let term = ProjectiveTerm::build(alg, picks.iter().map(|&(j, _)| j).collect(), false);
    let mut map = Mat::zero(f, m.dim(), 0);
    for (j, target) in &picks {
        map = map.hstack(&alg.evaluate_hom_with(alg.pim(*j), m, target, &actions));
    }
    if map.rank() != m.dim() {
        return Err(Error::internal("projective cover map is not surjective"));
    }
    let kernel_space = Subspace::from_columns(&map.nullspace());
    let rad = term.radical(alg);
    if !rad.contains_subspace(&kernel_space) {
        return Err(Error::internal(
            "cover kernel escapes the radical, so the cover is not minimal",
        ));
    }
    let (kernel, kernel_inclusion) = term.module().submodule(&kernel_space);
    Ok(Cover { term, map, kernel, kernel_inclusion })
}

/// Whether a module is projective: its minimal cover has zero kernel.
pub fn is_projective(alg: &GroupAlgebra, m: &Module) -> Result<bool> {
    Ok(minimal_cover(alg, m)?.kernel.dim() == 0)
}

/// Degrees `0..=n_max` of a minimal resolution by projectives,
/// `... -> P_1 -> P_0 -> M -> 0`, grown on demand.
pub struct MinimalResolution {
    terms: Vec<ProjectiveTerm>,
    maps: Vec<Mat>,
    kernel: Module,
    kernel_inclusion: Mat,
    target_dim: usize,
}

impl MinimalResolution {
    /// Number of computed terms (one more than the top degree).
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn term(&self, i: usize) -> &ProjectiveTerm {
        &self.terms[i]
    }

    /// The differential into degree `i - 1`; index 0 is the augmentation
    /// P_0 -> M.
    pub fn map(&self, i: usize) -> &Mat {
        &self.maps[i]
    }

    /// The syzygy left uncovered after the last computed term.
    pub fn kernel(&self) -> &Module {
        &self.kernel
    }

    /// Extends the resolution so degrees `0..=n_max` exist.
    pub fn extend(&mut self, alg: &GroupAlgebra, n_max: usize, size_cap: u64) -> Result<()> {
        while self.terms.len() <= n_max {
            let cover = minimal_cover(alg, &self.kernel)?;
            check_term_cap(cover.term.dim(), size_cap)?;
            let into_previous = self.kernel_inclusion.mul(&cover.map);
            let expected = if self.terms.is_empty() {
                self.target_dim
            } else {
                self.terms.last().unwrap().dim()
            };
            debug_assert_eq!(into_previous.rows(), expected);
            self.terms.push(cover.term);
            self.maps.push(into_previous);
            self.kernel = cover.kernel;
            self.kernel_inclusion = cover.kernel_inclusion;
        }
        Ok(())
    }
}

fn check_term_cap(dim: usize, size_cap: u64) -> Result<()> {
    if dim as u64 > size_cap {
        return Err(Error::cap("resolution term dimension", size_cap, dim as u64));
    }
    Ok(())
}

/// Minimal projective resolution of `m` out to degree `n_max`.
pub fn minimal_resolution(
    alg: &GroupAlgebra,
    m: &Module,
    n_max: usize,
    size_cap: u64,
) -> Result<MinimalResolution> {
    let mut res = MinimalResolution {
        terms: Vec::new(),
        maps: Vec::new(),
        kernel: m.clone(),
        kernel_inclusion: Mat::identity(alg.field(), m.dim()),
        target_dim: m.dim(),
    };
    res.extend(alg, n_max, size_cap)?;
    Ok(res)
}

/// The n-th syzygy operator. Positive n iterates kernels of minimal
/// covers, negative n dualizes, and n = 0 strips projective summands; in
/// every case the result is projective-free.
pub fn omega(
    alg: &GroupAlgebra,
    m: &Module,
    n: i64,
    seed: u64,
    size_cap: u64,
) -> Result<Module> {
    let (core, _) = alg.strip_projectives(m, seed)?;
    if n == 0 {
        return Ok(core);
    }
    let (mut current, steps) = if n > 0 {
        (core, n)
    } else {
        (core.dual(), -n)
    };
    for _ in 0..steps {
        let cover = minimal_cover(alg, &current)?;
        check_term_cap(cover.term.dim(), size_cap)?;
        current = cover.kernel;
    }
    if n > 0 {
        Ok(current)
    } else {
        Ok(current.dual())
    }
}

/// A window of a minimal complete resolution, indexed so that the
/// differential raises the degree: `boundary(n)` maps `term(n)` to
/// `term(n + 1)`.
pub struct CompleteResolution {
    lo: i64,
    terms: Vec<ProjectiveTerm>,
    boundaries: Vec<Mat>,
    core: Module,
}

impl CompleteResolution {
    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.terms.len() as i64 - 1
    }

    pub fn term(&self, n: i64) -> &ProjectiveTerm {
        &self.terms[(n - self.lo) as usize]
    }

    /// The differential `term(n) -> term(n + 1)`.
    pub fn boundary(&self, n: i64) -> &Mat {
        &self.boundaries[(n - self.lo) as usize]
    }

    /// The projective-free core of the resolved module; the image of
    /// `boundary(-1)` is an embedded copy of it.
    pub fn core(&self) -> &Module {
        &self.core
    }
}

/// Builds the degree window `[lo, hi]` of a minimal complete resolution
/// of `m`, with `lo <= 0 <= hi`.
pub fn complete_resolution(
    alg: &GroupAlgebra,
    m: &Module,
    lo: i64,
    hi: i64,
    seed: u64,
    size_cap: u64,
) -> Result<CompleteResolution> {
    if lo > 0 || hi < 0 {
        return Err(Error::input(format!(
            "complete resolution window [{lo}, {hi}] must contain 0"
        )));
    }
    build_complete(alg, m, lo, hi, seed, size_cap)
}

/// Windowed complete resolution over an arbitrary degree range; the build
/// always includes the splice, so terms cover `[min(lo, -1), max(hi, 0)]`.
pub(crate) fn build_complete(
    alg: &GroupAlgebra,
    m: &Module,
    lo: i64,
    hi: i64,
    seed: u64,
    size_cap: u64,
) -> Result<CompleteResolution> {
    if lo > hi {
        return Err(Error::input(format!("empty resolution window [{lo}, {hi}]")));
    }
    let lo = lo.min(-1);
    let hi = hi.max(0);
    let (core, _) = alg.strip_projectives(m, seed)?;
    let backward = minimal_resolution(alg, &core, (-lo - 1) as usize, size_cap)?;
    let forward = minimal_resolution(alg, &core.dual(), hi as usize, size_cap)?;

    let mut terms = Vec::with_capacity((hi - lo + 1) as usize);
    for n in lo..=hi {
        if n < 0 {
            terms.push(backward.term((-1 - n) as usize).clone());
        } else {
            let summands = forward.term(n as usize).summands().to_vec();
            terms.push(ProjectiveTerm::build(alg, summands, true));
        }
    }
    let mut boundaries = Vec::with_capacity((hi - lo) as usize);
    for n in lo..hi {
        let matrix = if n <= -2 {
            backward.map((-1 - n) as usize).clone()
        } else if n == -1 {
            forward.map(0).transpose().mul(backward.map(0))
        } else {
            forward.map((n + 1) as usize).transpose()
        };
        boundaries.push(matrix);
    }

    let built = CompleteResolution { lo, terms, boundaries, core };
    certify_complete(alg, &built)?;
    Ok(built)
}

/// Exactness, d^2 = 0, and radical-valued differentials over the window.
fn certify_complete(alg: &GroupAlgebra, res: &CompleteResolution) -> Result<()> {
    let lo = res.lo();
    let hi = res.hi();
    for n in lo..hi {
        let d = res.boundary(n);
        let rad = res.term(n + 1).radical(alg);
        for c in 0..d.cols() {
            if !rad.contains(&d.column(c)) {
                return Err(Error::internal(format!(
                    "differential out of degree {n} is not radical-valued"
                )));
            }
        }
        if n + 1 < hi && !res.boundary(n + 1).mul(d).is_zero() {
            return Err(Error::internal(format!(
                "differentials at degrees {n} and {} do not compose to zero",
                n + 1
            )));
        }
    }
    for n in (lo + 1)..hi {
        let rank_out = res.boundary(n).rank();
        let rank_in = res.boundary(n - 1).rank();
        if rank_out + rank_in != res.term(n).dim() {
            return Err(Error::internal(format!(
                "complete resolution is not exact at degree {n}"
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Fq;
    use crate::group::PermGroup;

    const CAP: u64 = 1 << 20;

    fn algebra(degree: usize, gens: &[&str], p: u32) -> GroupAlgebra {
        let g = PermGroup::parse(degree, gens).unwrap();
        GroupAlgebra::new(g, Fq::prime(p).unwrap()).unwrap()
    }

    fn trivial_module(alg: &GroupAlgebra) -> Module {
        Module::trivial(alg.field(), alg.group())
    }

    #[test]
    fn cover_of_s3_permutation_module() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let m = Module::permutation(alg.field(), alg.group());
        let cover = minimal_cover(&alg, &m).unwrap();
        assert_eq!(cover.term.summands(), &[0, 1], "one cover per head constituent");
        assert_eq!(cover.term.dim(), 4);
        assert_eq!(cover.kernel.dim(), 1);
        assert_eq!(cover.map.rank(), 3);
        for gi in 0..m.generator_count() {
            assert_eq!(
                m.generator_action(gi).mul(&cover.map),
                cover.map.mul(cover.term.module().generator_action(gi)),
            );
        }
    }

    #[test]
    fn resolution_over_c2_is_periodic() {
        let alg = algebra(2, &["(1 2)"], 2);
        let res = minimal_resolution(&alg, &trivial_module(&alg), 4, CAP).unwrap();
        for i in 0..=4 {
            assert_eq!(res.term(i).dim(), 2);
            assert_eq!(res.term(i).summands(), &[0]);
        }
        assert_eq!(res.kernel().dim(), 1);
        assert_eq!(res.map(0).rank(), 1);
        for i in 1..=4 {
            assert!(res.map(i - 1).mul(res.map(i)).is_zero(), "d2 = 0 at degree {i}");
        }
    }

    #[test]
    fn resolution_over_c3_alternates_kernels() {
        let alg = algebra(3, &["(1 2 3)"], 3);
        let res = minimal_resolution(&alg, &trivial_module(&alg), 3, CAP).unwrap();
        for i in 0..=3 {
            assert_eq!(res.term(i).dim(), 3);
        }
        let k = trivial_module(&alg);
        assert_eq!(omega(&alg, &k, 1, 5, CAP).unwrap().dim(), 2);
        assert_eq!(omega(&alg, &k, 2, 5, CAP).unwrap().dim(), 1);
        assert_eq!(omega(&alg, &k, 3, 5, CAP).unwrap().dim(), 2);
    }

    #[test]
    fn projective_modules_resolve_in_one_step() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let reg = alg.regular_module().clone();
        let res = minimal_resolution(&alg, &reg, 2, CAP).unwrap();
        assert_eq!(res.term(0).dim(), 6);
        assert_eq!(res.term(1).dim(), 0);
        assert_eq!(res.term(2).dim(), 0);
        assert!(is_projective(&alg, &reg).unwrap());
        assert!(!is_projective(&alg, &trivial_module(&alg)).unwrap());
        assert!(is_projective(&alg, alg.simple(1)).unwrap());
        let semisimple = algebra(3, &["(1 2 3)"], 2);
        assert!(is_projective(&semisimple, &trivial_module(&semisimple)).unwrap());
    }

    #[test]
    fn syzygies_of_klein_four_grow_linearly() {
        let alg = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        let k = trivial_module(&alg);
        for (n, dim) in [(0, 1), (1, 3), (2, 5), (3, 7), (-1, 3), (-2, 5)] {
            assert_eq!(
                omega(&alg, &k, n, 5, CAP).unwrap().dim(),
                dim,
                "syzygy dimension at {n}"
            );
        }
        let back = omega(&alg, &omega(&alg, &k, 1, 5, CAP).unwrap(), -1, 5, CAP).unwrap();
        assert_eq!(back.dim(), 1);
        assert_eq!(back.is_isomorphic(&k, 7), Some(true));
    }

    #[test]
    fn omega_strips_projective_summands() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let k = trivial_module(&alg);
        let padded = k.direct_sum(alg.regular_module());
        assert_eq!(omega(&alg, &padded, 0, 5, CAP).unwrap().dim(), 1);
        assert_eq!(omega(&alg, &k, 1, 5, CAP).unwrap().dim(), 1, "k is periodic here");
    }

    #[test]
    fn complete_resolution_of_k_over_c2() {
        let alg = algebra(2, &["(1 2)"], 2);
        let res =
            complete_resolution(&alg, &trivial_module(&alg), -3, 3, 5, CAP).unwrap();
        for n in -3..=3 {
            assert_eq!(res.term(n).dim(), 2, "term at degree {n}");
        }
        for n in -3..3 {
            assert_eq!(res.boundary(n).rank(), 1);
        }
        assert_eq!(res.core().dim(), 1);
    }

    #[test]
    fn complete_resolution_of_projective_vanishes() {
        let alg = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let reg = alg.regular_module().clone();
        let res = complete_resolution(&alg, &reg, -2, 2, 5, CAP).unwrap();
        for n in -2..=2 {
            assert_eq!(res.term(n).dim(), 0);
        }
    }

    #[test]
    fn complete_resolution_window_must_contain_zero() {
        let alg = algebra(2, &["(1 2)"], 2);
        let k = trivial_module(&alg);
        assert!(complete_resolution(&alg, &k, 1, 3, 5, CAP).is_err());
        assert!(complete_resolution(&alg, &k, -3, -1, 5, CAP).is_err());
    }

    #[test]
    fn complete_resolution_dimensions_are_asymmetric_for_a_syzygy() {
        let alg = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        let k = trivial_module(&alg);
        let m = omega(&alg, &k, 1, 5, CAP).unwrap();
        let res = complete_resolution(&alg, &m, -4, 4, 5, CAP).unwrap();
        let dims: Vec<usize> = (-4..=4).map(|n| res.term(n).dim()).collect();
        assert_eq!(dims, vec![20, 16, 12, 8, 4, 4, 8, 12, 16]);
        for n in 0..=4 {
            assert!(res.term(n).is_dual());
        }
        for n in -4..0 {
            assert!(!res.term(n).is_dual());
        }
    }

    #[test]
    fn resolution_term_cap_is_enforced() {
        let alg = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        let k = trivial_module(&alg);
        let err = minimal_resolution(&alg, &k, 6, 10).err().unwrap();
        assert!(matches!(err, Error::Cap { limit: 10, .. }));
    }
}
