//! Cohomology ring of a group on a bounded degree window, restriction to
//! subgroups, and certified homogeneous systems of parameters.
//!
//! Over the minimal resolution of k every differential vanishes after
//! applying Hom(-, k), so Hⁿ(G, k) has a canonical basis: the evaluation
//! functionals at the trivial summands of the n-th term. Products lift the
//! left factor to a chain map and compose with the right factor; every lift
//! step is certified on full matrices and the finished window is certified
//! graded-commutative. A homogeneous system of parameters is certified
//! through the kernel modules of its classes: the classes vanish
//! simultaneously at a point of an elementary abelian subgroup exactly when
//! the tensor product of those kernels fails to be free along the shifted
//! unit of that point, which a rank computation detects point by point.

use std::collections::HashMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::{Elt, Fq};
use crate::group::ElementaryAbelianClass;
use crate::matrix::{Mat, Subspace};
use crate::module::Module;
use crate::resolution::{
    minimal_cover, minimal_resolution, Cover, MinimalResolution, ProjectiveTerm,
};

/// Random triples tested for associativity when the window reaches degree 3.
const ASSOCIATIVITY_CHECKS: usize = 24;
/// Random coefficient picks per degree tuple in the parameter search.
const SOP_ATTEMPTS: usize = 12;
/// Retries for drawing a nonzero coordinate vector.
const COORDINATE_RETRIES: usize = 20;

/// Homogeneous class given by coordinates in the degree basis of a window.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CohClass {
    pub degree: usize,
    pub coords: Vec<Elt>,
}

/// Basis and products of H*(G, k) in degrees `0..=max_degree`.
#[derive(Clone, Debug)]
pub struct RingWindow {
    field: Fq,
    max_degree: usize,
    dims: Vec<usize>,
    /// `tables[m - 1][n - 1]` maps degree-(m, n) coordinate pairs to product
    /// coordinates; column `a * dims[n] + b` holds the product of basis
    /// classes `a` and `b`.
    tables: Vec<Vec<Mat>>,
    generators: Vec<CohClass>,
}

impl RingWindow {
    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn dim(&self, degree: usize) -> usize {
        self.dims[degree]
    }

    pub fn dims(&self) -> &[usize] {
        &self.dims
    }

    /// Classes that generate the window as an algebra, in degree order.
    pub fn generators(&self) -> &[CohClass] {
        &self.generators
    }

    /// The unit class in degree zero.
    pub fn one(&self) -> CohClass {
        CohClass {
            degree: 0,
            coords: vec![self.field.one()],
        }
    }

    /// Basis class `i` of the given degree.
    pub fn basis_class(&self, degree: usize, i: usize) -> CohClass {
        let mut coords = vec![0; self.dims[degree]];
        coords[i] = self.field.one();
        CohClass { degree, coords }
    }

    /// Cup product of two classes whose total degree stays in the window.
    pub fn product(&self, x: &CohClass, y: &CohClass) -> Result<CohClass> {
        let f = self.field;
        if x.degree + y.degree > self.max_degree {
            return Err(Error::input("the product degree exceeds the ring window"));
        }
        if x.coords.len() != self.dims[x.degree] || y.coords.len() != self.dims[y.degree] {
            return Err(Error::input(
                "the class coordinates do not match the ring basis",
            ));
        }
        if x.degree == 0 {
            let coords = y.coords.iter().map(|&v| f.mul(x.coords[0], v)).collect();
            return Ok(CohClass {
                degree: y.degree,
                coords,
            });
        }
        if y.degree == 0 {
            let coords = x.coords.iter().map(|&v| f.mul(y.coords[0], v)).collect();
            return Ok(CohClass {
                degree: x.degree,
                coords,
            });
        }
        let degree = x.degree + y.degree;
        let table = &self.tables[x.degree - 1][y.degree - 1];
        let mut coords = vec![0; self.dims[degree]];
        for (a, &xa) in x.coords.iter().enumerate() {
            if xa == 0 {
                continue;
            }
            for (b, &yb) in y.coords.iter().enumerate() {
                if yb == 0 {
                    continue;
                }
                let c = f.mul(xa, yb);
                let col = a * self.dims[y.degree] + b;
                for (r, v) in coords.iter_mut().enumerate() {
                    *v = f.add(*v, f.mul(c, table.at(r, col)));
                }
            }
        }
        Ok(CohClass { degree, coords })
    }
}

/// Indices of the summands of `term` that are projective covers of k.
fn trivial_positions(alg: &GroupAlgebra, term: &ProjectiveTerm) -> Vec<usize> {
    term.summands()
        .iter()
        .enumerate()
        .filter(|&(_, &j)| j == alg.trivial_index())
        .map(|(a, _)| a)
        .collect()
}

/// The module map from the trivial projective cover onto k that sends the
/// embedded generator to 1, as a row on the cover's coordinates.
fn canonical_functional(alg: &GroupAlgebra) -> Mat {
    let trivial = Module::trivial(alg.field(), alg.group());
    alg.evaluate_hom(
        alg.pim(alg.trivial_index()),
        &trivial,
        &[alg.field().one()],
    )
}

/// Generator of summand `a` of `term`, as a coordinate vector of the term.
fn embedded_generator(alg: &GroupAlgebra, term: &ProjectiveTerm, a: usize) -> Vec<Elt> {
    let pim = term.summand_pim(alg, a);
    let mut v = vec![0; term.dim()];
    for (t, &x) in pim.generator.iter().enumerate() {
        v[term.offsets()[a] + t] = x;
    }
    v
}

/// The cocycle with the given coordinates: the module map `term` -> k whose
/// value at the generator of trivial summand `positions[i]` is `coords[i]`.
fn cocycle_row(
    f: Fq,
    term: &ProjectiveTerm,
    positions: &[usize],
    canonical: &Mat,
    coords: &[Elt],
) -> Mat {
    let mut row = Mat::zero(f, 1, term.dim());
    for (i, &a) in positions.iter().enumerate() {
        if coords[i] == 0 {
            continue;
        }
        let off = term.offsets()[a];
        for l in 0..canonical.cols() {
            let v = f.add(row.at(0, off + l), f.mul(coords[i], canonical.at(0, l)));
            row.set(0, off + l, v);
        }
    }
    row
}

/// Coordinates of the cocycle `row`, certifying that it vanishes at the
/// generators of the non-trivial summands.
fn cocycle_coords(
    alg: &GroupAlgebra,
    term: &ProjectiveTerm,
    positions: &[usize],
    row: &Mat,
) -> Result<Vec<Elt>> {
    let mut coords = Vec::with_capacity(positions.len());
    for a in 0..term.summands().len() {
        let val = row.apply(&embedded_generator(alg, term, a))[0];
        if positions.contains(&a) {
            coords.push(val);
        } else if val != 0 {
            return Err(Error::internal(
                "a cocycle is supported on a non-trivial summand",
            ));
        }
    }
    Ok(coords)
}

/// Cached hom bases into one fixed target module, with a certified lift step.
struct LiftTargets<'a> {
    alg: &'a GroupAlgebra,
    module: Module,
    actions: Vec<Mat>,
    bases: HashMap<(bool, usize), Mat>,
}

impl<'a> LiftTargets<'a> {
    fn new(alg: &'a GroupAlgebra, module: Module) -> LiftTargets<'a> {
        let actions = module.element_actions(alg.group());
        LiftTargets {
            alg,
            module,
            actions,
            bases: HashMap::new(),
        }
    }

    /// Basis of the homs from the (dual) projective cover `j` into the
    /// target, as columns of value vectors at the embedded generator.
    fn basis(&mut self, dual: bool, j: usize) -> Mat {
        if let Some(b) = self.bases.get(&(dual, j)) {
            return b.clone();
        }
        let pim = if dual {
            self.alg.dual_pim(j)
        } else {
            self.alg.pim(j)
        };
        let targets = self.alg.hom_from_projective(pim, &self.module);
        let mat = Mat::from_fn(
            self.module.field(),
            self.module.dim(),
            targets.len(),
            |i, c| targets[c][i],
        );
        self.bases.insert((dual, j), mat.clone());
        mat
    }

    /// Module map `h: source -> target` with `d ∘ h = g`, where `d` carries
    /// the target module into the codomain of `g`. Solved summand by summand
    /// at the embedded generators, then certified on the full matrices.
    fn lift(&mut self, source: &ProjectiveTerm, d: &Mat, g: &Mat) -> Result<Mat> {
        let f = self.module.field();
        let mut h = Mat::zero(f, self.module.dim(), source.dim());
        for (a, &j) in source.summands().iter().enumerate() {
            let u = g.apply(&embedded_generator(self.alg, source, a));
            let basis = self.basis(source.is_dual(), j);
            let sol = d
                .mul(&basis)
                .solve(&Mat::column_vector(f, &u))
                .ok_or_else(|| Error::internal("a chain map step has no lift"))?;
            let w = basis.mul(&sol).column(0);
            if w.iter().all(|&x| x == 0) {
                continue;
            }
            let pim = source.summand_pim(self.alg, a);
            let block = self
                .alg
                .evaluate_hom_with(pim, &self.module, &w, &self.actions);
            let off = source.offsets()[a];
            for r in 0..block.rows() {
                for c in 0..block.cols() {
                    h.set(r, off + c, block.at(r, c));
                }
            }
        }
        if &d.mul(&h) != g {
            return Err(Error::internal("a lifted chain map does not commute"));
        }
        Ok(h)
    }
}

/// Chain map lifting the cocycle `phi` on the degree-`degree` term: entry
/// `i` maps the `(degree + i)`-th term to the `i`-th term, and entry 0
/// covers `phi` through the augmentation.
fn chain_lift(
    res: &MinimalResolution,
    contexts: &mut [LiftTargets],
    phi: &Mat,
    degree: usize,
    depth: usize,
) -> Result<Vec<Mat>> {
    let mut lifts: Vec<Mat> = Vec::with_capacity(depth + 1);
    for i in 0..=depth {
        let g = if i == 0 {
            phi.clone()
        } else {
            lifts[i - 1].mul(res.map(degree + i))
        };
        let h = contexts[i].lift(res.term(degree + i), res.map(i), &g)?;
        lifts.push(h);
    }
    Ok(lifts)
}

/// Basis and products of H*(G, k) in degrees `0..=max_degree`.
///
/// The degree-n basis consists of the evaluation functionals at the trivial
/// summands of the n-th minimal resolution term. Products lift the left
/// factor to a chain map and compose; the finished window is checked
/// graded-commutative on every computed pair and associativity is
/// spot-checked on seeded random triples.
pub fn cohomology_ring(
    alg: &GroupAlgebra,
    max_degree: usize,
    seed: u64,
    size_cap: u64,
) -> Result<RingWindow> {
    if max_degree == 0 {
        return Err(Error::input("the ring window needs max degree at least 1"));
    }
    let f = alg.field();
    let trivial = Module::trivial(f, alg.group());
    let res = minimal_resolution(alg, &trivial, max_degree, size_cap)?;
    let positions: Vec<Vec<usize>> = (0..=max_degree)
        .map(|d| trivial_positions(alg, res.term(d)))
        .collect();
    let dims: Vec<usize> = positions.iter().map(|p| p.len()).collect();
    let canonical = canonical_functional(alg);
    let rows: Vec<Vec<Mat>> = (0..=max_degree)
        .map(|d| {
            (0..dims[d])
                .map(|a| {
                    let mut coords = vec![0; dims[d]];
                    coords[a] = f.one();
                    cocycle_row(f, res.term(d), &positions[d], &canonical, &coords)
                })
                .collect()
        })
        .collect();

    let mut contexts: Vec<LiftTargets> = (0..=max_degree)
        .map(|i| LiftTargets::new(alg, res.term(i).module().clone()))
        .collect();
    let mut tables: Vec<Vec<Mat>> = (1..max_degree)
        .map(|m| {
            (1..=max_degree - m)
                .map(|n| Mat::zero(f, dims[m + n], dims[m] * dims[n]))
                .collect()
        })
        .collect();
    for m in 1..max_degree {
        for a in 0..dims[m] {
            let lifts = chain_lift(&res, &mut contexts, &rows[m][a], m, max_degree - m)?;
            for n in 1..=max_degree - m {
                for b in 0..dims[n] {
                    let prod = rows[n][b].mul(&lifts[n]);
                    let coords = cocycle_coords(alg, res.term(m + n), &positions[m + n], &prod)?;
                    for (r, &x) in coords.iter().enumerate() {
                        tables[m - 1][n - 1].set(r, a * dims[n] + b, x);
                    }
                }
            }
        }
    }

    for m in 1..max_degree {
        for n in m..=max_degree - m {
            for a in 0..dims[m] {
                for b in 0..dims[n] {
                    let xy = tables[m - 1][n - 1].column(a * dims[n] + b);
                    let mut yx = tables[n - 1][m - 1].column(b * dims[m] + a);
                    if m % 2 == 1 && n % 2 == 1 {
                        for v in yx.iter_mut() {
                            *v = f.neg(*v);
                        }
                    }
                    if xy != yx {
                        return Err(Error::internal(
                            "the computed products are not graded commutative",
                        ));
                    }
                }
            }
        }
    }

    let mut generators = Vec::new();
    for d in 1..=max_degree {
        if dims[d] == 0 {
            continue;
        }
        let mut decomposable = Subspace::new(f, dims[d]);
        for m in 1..d {
            let table = &tables[m - 1][d - m - 1];
            for c in 0..table.cols() {
                decomposable.insert(table.column(c));
            }
        }
        for &pos in &decomposable.free_positions() {
            let mut coords = vec![0; dims[d]];
            coords[pos] = f.one();
            generators.push(CohClass { degree: d, coords });
        }
    }

    let window = RingWindow {
        field: f,
        max_degree,
        dims,
        tables,
        generators,
    };
    if max_degree >= 3 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..ASSOCIATIVITY_CHECKS {
            let m = rng.gen_range(1..=max_degree - 2);
            let n = rng.gen_range(1..=max_degree - m - 1);
            let o = rng.gen_range(1..=max_degree - m - n);
            let x = random_class(&window, m, &mut rng);
            let y = random_class(&window, n, &mut rng);
            let z = random_class(&window, o, &mut rng);
            let lhs = window.product(&window.product(&x, &y)?, &z)?;
            let rhs = window.product(&x, &window.product(&y, &z)?)?;
            if lhs != rhs {
                return Err(Error::internal("the computed products are not associative"));
            }
        }
    }
    Ok(window)
}

fn random_class(window: &RingWindow, degree: usize, rng: &mut ChaCha8Rng) -> CohClass {
    let f = window.field;
    let coords = (0..window.dims[degree])
        .map(|_| rng.gen_range(0..f.order()) as Elt)
        .collect();
    CohClass { degree, coords }
}

/// Restriction map between two ring windows induced by a subgroup inclusion.
#[derive(Clone, Debug)]
pub struct Restriction {
    max_degree: usize,
    mats: Vec<Mat>,
}

impl Restriction {
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    /// Matrix of the degree-`degree` restriction in the two ring bases.
    pub fn matrix(&self, degree: usize) -> &Mat {
        &self.mats[degree]
    }

    /// Image of a class of the source ring in the subgroup ring.
    pub fn apply(&self, class: &CohClass) -> Result<CohClass> {
        if class.degree > self.max_degree {
            return Err(Error::input(
                "the class degree exceeds the restriction window",
            ));
        }
        let m = &self.mats[class.degree];
        if class.coords.len() != m.cols() {
            return Err(Error::input(
                "the class coordinates do not match the ring basis",
            ));
        }
        Ok(CohClass {
            degree: class.degree,
            coords: m.apply(&class.coords),
        })
    }
}

/// Restriction of `ring` to the subgroup underlying `sub_ring`, on the
/// common degree window.
///
/// A chain map over the subalgebra lifts the identity of k from the
/// subgroup's minimal resolution into the restricted resolution of the
/// group; composing cocycles with it induces the restriction. The result is
/// certified to be the identity in degree zero and multiplicative against
/// both ring tables.
pub fn restriction(
    alg: &GroupAlgebra,
    ring: &RingWindow,
    sub: &GroupAlgebra,
    sub_ring: &RingWindow,
    size_cap: u64,
) -> Result<Restriction> {
    let f = alg.field();
    if f != sub.field() {
        return Err(Error::input("the two rings live over different fields"));
    }
    alg.group().indices_of_subgroup(sub.group())?;
    let max_degree = ring.max_degree().min(sub_ring.max_degree());
    let k_g = Module::trivial(f, alg.group());
    let k_e = Module::trivial(f, sub.group());
    let res_g = minimal_resolution(alg, &k_g, max_degree, size_cap)?;
    let res_e = minimal_resolution(sub, &k_e, max_degree, size_cap)?;
    let pos_g: Vec<Vec<usize>> = (0..=max_degree)
        .map(|d| trivial_positions(alg, res_g.term(d)))
        .collect();
    let pos_e: Vec<Vec<usize>> = (0..=max_degree)
        .map(|d| trivial_positions(sub, res_e.term(d)))
        .collect();
    for d in 0..=max_degree {
        if pos_g[d].len() != ring.dim(d) || pos_e[d].len() != sub_ring.dim(d) {
            return Err(Error::internal(
                "a ring window does not match its resolution",
            ));
        }
    }
    let canon_g = canonical_functional(alg);
    let mut contexts = Vec::with_capacity(max_degree + 1);
    for i in 0..=max_degree {
        let restricted = res_g.term(i).module().restrict(alg.group(), sub.group())?;
        contexts.push(LiftTargets::new(sub, restricted));
    }
    let mut rho: Vec<Mat> = Vec::with_capacity(max_degree + 1);
    for i in 0..=max_degree {
        let g = if i == 0 {
            res_e.map(0).clone()
        } else {
            rho[i - 1].mul(res_e.map(i))
        };
        let h = contexts[i].lift(res_e.term(i), res_g.map(i), &g)?;
        rho.push(h);
    }
    let mut mats = Vec::with_capacity(max_degree + 1);
    for d in 0..=max_degree {
        let mut mat = Mat::zero(f, sub_ring.dim(d), ring.dim(d));
        for c in 0..ring.dim(d) {
            let mut coords = vec![0; ring.dim(d)];
            coords[c] = f.one();
            let phi = cocycle_row(f, res_g.term(d), &pos_g[d], &canon_g, &coords);
            let values = cocycle_coords(sub, res_e.term(d), &pos_e[d], &phi.mul(&rho[d]))?;
            for (r, &x) in values.iter().enumerate() {
                mat.set(r, c, x);
            }
        }
        mats.push(mat);
    }
    if mats[0] != Mat::identity(f, 1) {
        return Err(Error::internal(
            "the restriction is not the identity in degree zero",
        ));
    }
    for m in 1..max_degree {
        for n in 1..=max_degree - m {
            for a in 0..ring.dim(m) {
                for b in 0..ring.dim(n) {
                    let product = ring.product(&ring.basis_class(m, a), &ring.basis_class(n, b))?;
                    let lhs = mats[m + n].apply(&product.coords);
                    let rhs = sub_ring.product(
                        &CohClass {
                            degree: m,
                            coords: mats[m].column(a),
                        },
                        &CohClass {
                            degree: n,
                            coords: mats[n].column(b),
                        },
                    )?;
                    if lhs != rhs.coords {
                        return Err(Error::internal(
                            "the restriction is not multiplicative on the window",
                        ));
                    }
                }
            }
        }
    }
    Ok(Restriction { max_degree, mats })
}

/// Minimal syzygies of k with their covers; `covers[i]` maps the `i`-th
/// resolution term onto `modules[i]`, whose kernel is `modules[i + 1]`.
fn syzygy_chain(
    alg: &GroupAlgebra,
    depth: usize,
    size_cap: u64,
) -> Result<(Vec<Module>, Vec<Cover>)> {
    let mut modules = vec![Module::trivial(alg.field(), alg.group())];
    let mut covers = Vec::with_capacity(depth + 1);
    for i in 0..=depth {
        let cover = minimal_cover(alg, &modules[i])?;
        if cover.term.dim() as u64 > size_cap {
            return Err(Error::cap(
                "resolution term dimension",
                size_cap,
                cover.term.dim() as u64,
            ));
        }
        modules.push(cover.kernel.clone());
        covers.push(cover);
    }
    Ok((modules, covers))
}

/// Kernel of the map from the `degree`-th syzygy of k onto k that
/// represents `class`. The class vanishes at a point of an elementary
/// abelian subgroup exactly when this module fails to be free along the
/// shifted unit of that point.
fn carlson_module(
    alg: &GroupAlgebra,
    modules: &[Module],
    covers: &[Cover],
    class: &CohClass,
) -> Result<Module> {
    let d = class.degree;
    let positions = trivial_positions(alg, &covers[d].term);
    if positions.len() != class.coords.len() {
        return Err(Error::internal(
            "a class does not match the resolution window",
        ));
    }
    let canonical = canonical_functional(alg);
    let phi = cocycle_row(
        alg.field(),
        &covers[d].term,
        &positions,
        &canonical,
        &class.coords,
    );
    let psi = covers[d]
        .map
        .transpose()
        .solve(&phi.transpose())
        .ok_or_else(|| Error::internal("a cocycle does not factor through its syzygy"))?
        .transpose();
    let (module, _) = modules[d].submodule(&Subspace::from_columns(&psi.nullspace()));
    Ok(module)
}

/// Outcome of scanning one maximal elementary abelian class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanRecord {
    /// Rank of the scanned subgroup.
    pub rank: u32,
    /// Scanned point counts over the prime field and its quadratic extension.
    pub points: [usize; 2],
    /// Whether the common zero locus over both scans is only the origin.
    pub zero_locus_trivial: bool,
}

/// Certified homogeneous system of parameters and the bound it yields.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SopCertificate {
    /// The p-rank of the group, which is the number of parameters.
    pub rank: usize,
    /// Degrees of the parameters, non-decreasing.
    pub degrees: Vec<usize>,
    pub classes: Vec<CohClass>,
    /// `1 + Σ (dᵢ - 1)`.
    pub n_upper: usize,
    /// One scan per maximal elementary abelian class.
    pub scans: Vec<ScanRecord>,
    pub seed: u64,
}

/// Projective coordinate tuples of length `s` over `f`, with the leading
/// nonzero coordinate normalized to one.
pub(crate) fn projective_points(f: Fq, s: usize) -> Vec<Vec<Elt>> {
    let scalars: Vec<Elt> = f.elements().collect();
    let mut out = Vec::new();
    for lead in 0..s {
        let tail = s - lead - 1;
        let mut codes = vec![0usize; tail];
        loop {
            let mut v = vec![0; s];
            v[lead] = f.one();
            for (t, &c) in codes.iter().enumerate() {
                v[lead + 1 + t] = scalars[c];
            }
            out.push(v);
            let mut t = 0;
            while t < tail {
                codes[t] += 1;
                if codes[t] < scalars.len() {
                    break;
                }
                codes[t] = 0;
                t += 1;
            }
            if t == tail {
                break;
            }
        }
    }
    out
}

/// Whether a module with the given generator actions is free along the unit
/// `1 + Σ αᵢ(gᵢ - 1)` attached to the point `alpha`. The unit generates a
/// cyclic group of order p, and freeness holds exactly when the (p-1)-st
/// power of the shifted action has rank dim/p.
pub(crate) fn free_along(actions: &[Mat], f: Fq, dim: usize, alpha: &[Elt], p: u32) -> bool {
    let id = Mat::identity(f, dim);
    let mut nil = Mat::zero(f, dim, dim);
    for (i, action) in actions.iter().enumerate() {
        if alpha[i] != 0 {
            nil = nil.add(&action.sub(&id).scale(alpha[i]));
        }
    }
    nil.pow(u64::from(p) - 1).rank() * p as usize == dim
}

/// Scan one maximal elementary abelian class: restrict the kernel modules,
/// tensor them, and test freeness along every projective point over the
/// prime field and over its quadratic extension.
fn scan_class(
    alg: &GroupAlgebra,
    class: &ElementaryAbelianClass,
    kernels: &[Module],
    p: u32,
) -> Result<ScanRecord> {
    let group = alg.group();
    let basis = group.elementary_abelian_basis(&class.rep, p);
    if basis.len() != class.rank as usize {
        return Err(Error::internal(
            "an elementary abelian class has the wrong rank",
        ));
    }
    let sub = group.subgroup_from_indices(&basis);
    let mut tensor = Module::trivial(alg.field(), &sub);
    for kernel in kernels {
        tensor = tensor.tensor(&kernel.restrict(group, &sub)?);
    }
    let extended = if alg.field().extension_degree() == 1 {
        tensor.extend_scalars(Fq::quadratic(p)?)?
    } else {
        tensor.clone()
    };
    let s = basis.len();
    let base_points = projective_points(alg.field().prime_subfield(), s);
    let ext_points = projective_points(extended.field(), s);
    let base_actions: Vec<Mat> = (0..s).map(|i| tensor.generator_action(i).clone()).collect();
    let ext_actions: Vec<Mat> = (0..s)
        .map(|i| extended.generator_action(i).clone())
        .collect();
    let mut trivial = base_points
        .iter()
        .all(|a| free_along(&base_actions, tensor.field(), tensor.dim(), a, p));
    if trivial {
        trivial = ext_points
            .iter()
            .all(|a| free_along(&ext_actions, extended.field(), extended.dim(), a, p));
    }
    Ok(ScanRecord {
        rank: class.rank,
        points: [base_points.len(), ext_points.len()],
        zero_locus_trivial: trivial,
    })
}

/// Non-decreasing degree tuples of length `r` from the usable degrees,
/// ordered by total degree and then lexicographically. For odd `p` every
/// odd-degree class squares to zero, so odd degrees are skipped.
fn degree_tuples(r: usize, max_degree: usize, p: u32) -> Vec<Vec<usize>> {
    let allowed: Vec<usize> = (1..=max_degree)
        .filter(|d| p == 2 || d % 2 == 0)
        .collect();
    let mut out = Vec::new();
    let mut cur = Vec::with_capacity(r);
    fill_tuples(&allowed, r, 0, &mut cur, &mut out);
    out.sort_by(|a, b| {
        let sa: usize = a.iter().sum();
        let sb: usize = b.iter().sum();
        sa.cmp(&sb).then_with(|| a.cmp(b))
    });
    out
}

fn fill_tuples(
    allowed: &[usize],
    r: usize,
    start: usize,
    cur: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if cur.len() == r {
        out.push(cur.clone());
        return;
    }
    for i in start..allowed.len() {
        cur.push(allowed[i]);
        fill_tuples(allowed, r, i, cur, out);
        cur.pop();
    }
}

fn draw_classes(ring: &RingWindow, degrees: &[usize], rng: &mut ChaCha8Rng) -> Option<Vec<CohClass>> {
    let f = ring.field;
    degrees
        .iter()
        .map(|&d| {
            for _ in 0..COORDINATE_RETRIES {
                let coords: Vec<Elt> = (0..ring.dims[d])
                    .map(|_| rng.gen_range(0..f.order()) as Elt)
                    .collect();
                if coords.iter().any(|&x| x != 0) {
                    return Some(CohClass { degree: d, coords });
                }
            }
            None
        })
        .collect()
}

/// Homogeneous system of parameters for H*(G, k) found within the degree
/// window, with the bound `n_upper = 1 + Σ (dᵢ - 1)` it certifies.
///
/// Candidates are seeded random combinations drawn along non-decreasing
/// degree tuples. A tuple is accepted when, on every maximal elementary
/// abelian class, the scanned common zero locus of the restricted classes
/// is only the origin; the scan tests freeness of the tensor product of the
/// kernel modules along every projective point of the prime field and of
/// its quadratic extension.
pub fn sop_upper_bound(
    alg: &GroupAlgebra,
    max_degree: usize,
    seed: u64,
    size_cap: u64,
) -> Result<SopCertificate> {
    let f = alg.field();
    let p = f.characteristic();
    let group = alg.group();
    let classes = group.elementary_abelian_classes(p);
    if classes.is_empty() {
        return Ok(SopCertificate {
            rank: 0,
            degrees: Vec::new(),
            classes: Vec::new(),
            n_upper: 1,
            scans: Vec::new(),
            seed,
        });
    }
    let rank = classes.iter().map(|c| c.rank).max().unwrap() as usize;
    let maximal: Vec<ElementaryAbelianClass> = classes
        .iter()
        .filter(|c| {
            !classes
                .iter()
                .any(|d| d.rank > c.rank && group.subconjugate(&c.rep, &d.rep))
        })
        .cloned()
        .collect();
    let ring = cohomology_ring(alg, max_degree, seed, size_cap)?;
    let (modules, covers) = syzygy_chain(alg, max_degree, size_cap)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for degrees in degree_tuples(rank, max_degree, p) {
        if degrees.iter().any(|&d| ring.dim(d) == 0) {
            continue;
        }
        for _ in 0..SOP_ATTEMPTS {
            let Some(chosen) = draw_classes(&ring, &degrees, &mut rng) else {
                continue;
            };
            let kernels: Vec<Module> = chosen
                .iter()
                .map(|c| carlson_module(alg, &modules, &covers, c))
                .collect::<Result<_>>()?;
            let mut scans = Vec::with_capacity(maximal.len());
            let mut certified = true;
            for class in &maximal {
                let record = scan_class(alg, class, &kernels, p)?;
                certified &= record.zero_locus_trivial;
                scans.push(record);
                if !certified {
                    break;
                }
            }
            if certified {
                let n_upper = 1 + degrees.iter().map(|d| d - 1).sum::<usize>();
                return Ok(SopCertificate {
                    rank,
                    degrees,
                    classes: chosen,
                    n_upper,
                    scans,
                    seed,
                });
            }
        }
    }
    Err(Error::input(format!(
        "no homogeneous system of parameters found within degree {max_degree}; raise the degree window"
    )))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::PermGroup;

    const CAP: u64 = 4096;

    fn algebra(degree: usize, gens: &[&str], p: u32) -> GroupAlgebra {
        let g = PermGroup::parse(degree, gens).unwrap();
        GroupAlgebra::new(g, Fq::prime(p).unwrap()).unwrap()
    }

    #[test]
    fn cyclic_two_ring_is_polynomial_on_one_generator() {
        let alg = algebra(2, &["(1 2)"], 2);
        let ring = cohomology_ring(&alg, 3, 1, CAP).unwrap();
        assert_eq!(ring.dims(), &[1, 1, 1, 1]);
        let gens = ring.generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].degree, 1);
        let x = ring.basis_class(1, 0);
        let xx = ring.product(&x, &x).unwrap();
        assert_eq!(xx, ring.basis_class(2, 0));
        assert_eq!(ring.product(&xx, &x).unwrap(), ring.basis_class(3, 0));
        assert_eq!(ring.product(&ring.one(), &x).unwrap(), x);
        assert!(matches!(
            ring.product(&xx, &xx),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn klein_ring_is_polynomial_on_two_degree_one_generators() {
        let alg = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        assert_eq!(cohomology_ring(&alg, 2, 1, CAP).unwrap().dims(), &[1, 2, 3]);
        let ring = cohomology_ring(&alg, 3, 1, CAP).unwrap();
        assert_eq!(ring.dims(), &[1, 2, 3, 4]);
        assert_eq!(ring.generators().len(), 2);
        assert!(ring.generators().iter().all(|g| g.degree == 1));
        let x = ring.basis_class(1, 0);
        let y = ring.basis_class(1, 1);
        let mut squares = Subspace::new(ring.field(), 3);
        squares.insert(ring.product(&x, &x).unwrap().coords);
        squares.insert(ring.product(&x, &y).unwrap().coords);
        squares.insert(ring.product(&y, &y).unwrap().coords);
        assert_eq!(squares.dim(), 3);
        assert_eq!(
            ring.product(&x, &y).unwrap(),
            ring.product(&y, &x).unwrap()
        );
    }

    #[test]
    fn cyclic_three_ring_splits_into_exterior_and_polynomial_parts() {
        let alg = algebra(3, &["(1 2 3)"], 3);
        let ring = cohomology_ring(&alg, 4, 1, CAP).unwrap();
        assert_eq!(ring.dims(), &[1, 1, 1, 1, 1]);
        let degrees: Vec<usize> = ring.generators().iter().map(|g| g.degree).collect();
        assert_eq!(degrees, vec![1, 2]);
        let a = ring.basis_class(1, 0);
        let b = ring.basis_class(2, 0);
        assert_eq!(ring.product(&a, &a).unwrap().coords, vec![0]);
        assert_ne!(ring.product(&b, &b).unwrap().coords, vec![0]);
        let ab = ring.product(&a, &b).unwrap();
        assert_ne!(ab.coords, vec![0]);
        assert_eq!(ab, ring.product(&b, &a).unwrap());
    }

    #[test]
    fn quaternion_ring_has_a_degree_four_generator() {
        let alg = algebra(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 2);
        let ring = cohomology_ring(&alg, 4, 1, CAP).unwrap();
        assert_eq!(ring.dims(), &[1, 2, 2, 1, 1]);
        let degrees: Vec<usize> = ring.generators().iter().map(|g| g.degree).collect();
        assert_eq!(degrees, vec![1, 1, 4]);
        let f = ring.field();
        let x = ring.basis_class(1, 0);
        let y = ring.basis_class(1, 1);
        let mut relation = vec![0; 2];
        for term in [
            ring.product(&x, &x).unwrap(),
            ring.product(&x, &y).unwrap(),
            ring.product(&y, &y).unwrap(),
        ] {
            for (r, &v) in term.coords.iter().enumerate() {
                relation[r] = f.add(relation[r], v);
            }
        }
        assert_eq!(relation, vec![0, 0]);
    }

    #[test]
    fn coefficient_prime_controls_the_symmetric_three_ring() {
        let alg2 = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let ring2 = cohomology_ring(&alg2, 3, 1, CAP).unwrap();
        assert_eq!(ring2.dims(), &[1, 1, 1, 1]);
        let degrees: Vec<usize> = ring2.generators().iter().map(|g| g.degree).collect();
        assert_eq!(degrees, vec![1]);

        let alg3 = algebra(3, &["(1 2)", "(1 2 3)"], 3);
        let ring3 = cohomology_ring(&alg3, 4, 1, CAP).unwrap();
        assert_eq!(ring3.dims(), &[1, 0, 0, 1, 1]);

        let semisimple = algebra(3, &["(1 2 3)"], 2);
        let ring = cohomology_ring(&semisimple, 2, 1, CAP).unwrap();
        assert_eq!(ring.dims(), &[1, 0, 0]);
        assert!(ring.generators().is_empty());
        assert!(matches!(
            cohomology_ring(&semisimple, 0, 1, CAP),
            Err(Error::Input(_))
        ));
    }

    #[test]
    fn restriction_to_the_trivial_subgroup_kills_positive_degrees() {
        let alg = algebra(2, &["(1 2)"], 2);
        let sub = algebra(2, &[], 2);
        let ring = cohomology_ring(&alg, 3, 1, CAP).unwrap();
        let sub_ring = cohomology_ring(&sub, 3, 1, CAP).unwrap();
        assert_eq!(sub_ring.dims(), &[1, 0, 0, 0]);
        let res = restriction(&alg, &ring, &sub, &sub_ring, CAP).unwrap();
        assert_eq!(res.max_degree(), 3);
        assert_eq!(*res.matrix(0), Mat::identity(ring.field(), 1));
        for d in 1..=3 {
            let image = res.apply(&ring.basis_class(d, 0)).unwrap();
            assert!(image.coords.is_empty());
        }
        let too_deep = CohClass {
            degree: 4,
            coords: vec![1],
        };
        assert!(matches!(res.apply(&too_deep), Err(Error::Input(_))));
    }

    #[test]
    fn restricting_along_the_identity_inclusion_is_the_identity() {
        let alg = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        let ring = cohomology_ring(&alg, 2, 1, CAP).unwrap();
        let res = restriction(&alg, &ring, &alg, &ring, CAP).unwrap();
        for d in 0..=2 {
            assert_eq!(*res.matrix(d), Mat::identity(ring.field(), ring.dim(d)));
        }
    }

    #[test]
    fn klein_degree_one_classes_restrict_to_cyclic_lines() {
        let alg = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        let f = Fq::prime(2).unwrap();
        let ring = cohomology_ring(&alg, 2, 1, CAP).unwrap();
        let lines = ["(1 2)(3 4)", "(1 3)(2 4)", "(1 4)(2 3)"];
        let mut restrictions = Vec::new();
        for gen in lines {
            let sub = GroupAlgebra::new(PermGroup::parse(4, &[gen]).unwrap(), f).unwrap();
            let sub_ring = cohomology_ring(&sub, 2, 1, CAP).unwrap();
            restrictions.push(restriction(&alg, &ring, &sub, &sub_ring, CAP).unwrap());
        }
        let classes = [
            CohClass { degree: 1, coords: vec![1, 0] },
            CohClass { degree: 1, coords: vec![0, 1] },
            CohClass { degree: 1, coords: vec![1, 1] },
        ];
        // Each nonzero class dies on exactly one of the three cyclic
        // subgroups, a different one for each class.
        let mut killed = Vec::new();
        for class in &classes {
            let dead: Vec<usize> = (0..3)
                .filter(|&i| restrictions[i].apply(class).unwrap().coords == vec![0])
                .collect();
            assert_eq!(dead.len(), 1);
            killed.push(dead[0]);
        }
        let mut sorted = killed.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, vec![0, 1, 2]);
        // The two classes supported on the diagonal subgroup restrict to
        // its degree-one generator.
        for (class, &dead) in classes.iter().zip(&killed) {
            if dead != 2 {
                assert_eq!(restrictions[2].apply(class).unwrap().coords, vec![1]);
            }
        }
    }

    #[test]
    fn class_kernels_shrink_as_the_class_spreads() {
        let alg = algebra(2, &["(1 2)"], 2);
        let ring = cohomology_ring(&alg, 1, 1, CAP).unwrap();
        let (modules, covers) = syzygy_chain(&alg, 1, CAP).unwrap();
        let x = ring.basis_class(1, 0);
        assert_eq!(carlson_module(&alg, &modules, &covers, &x).unwrap().dim(), 0);

        let alg3 = algebra(3, &["(1 2 3)"], 3);
        let ring3 = cohomology_ring(&alg3, 2, 1, CAP).unwrap();
        let (modules3, covers3) = syzygy_chain(&alg3, 2, CAP).unwrap();
        let a = carlson_module(&alg3, &modules3, &covers3, &ring3.basis_class(1, 0)).unwrap();
        assert_eq!(a.dim(), 1);
        let b = carlson_module(&alg3, &modules3, &covers3, &ring3.basis_class(2, 0)).unwrap();
        assert_eq!(b.dim(), 0);
    }

    #[test]
    fn parameter_systems_for_small_groups() {
        let c2 = algebra(2, &["(1 2)"], 2);
        let cert = sop_upper_bound(&c2, 3, 7, CAP).unwrap();
        assert_eq!(cert.rank, 1);
        assert_eq!(cert.degrees, vec![1]);
        assert_eq!(cert.n_upper, 1);
        assert_eq!(cert.scans.len(), 1);
        assert_eq!(cert.scans[0].points, [1, 1]);
        assert!(cert.scans[0].zero_locus_trivial);

        let klein = algebra(4, &["(1 2)(3 4)", "(1 3)(2 4)"], 2);
        let cert = sop_upper_bound(&klein, 2, 7, CAP).unwrap();
        assert_eq!(cert.rank, 2);
        assert_eq!(cert.degrees, vec![1, 1]);
        assert_eq!(cert.n_upper, 1);
        assert_eq!(cert.scans.len(), 1);
        assert_eq!(cert.scans[0].points, [3, 5]);

        let c3 = algebra(3, &["(1 2 3)"], 3);
        let cert = sop_upper_bound(&c3, 4, 7, CAP).unwrap();
        assert_eq!(cert.degrees, vec![2]);
        assert_eq!(cert.n_upper, 2);
        assert_eq!(cert, sop_upper_bound(&c3, 4, 7, CAP).unwrap());

        let s3 = algebra(3, &["(1 2)", "(1 2 3)"], 2);
        let cert = sop_upper_bound(&s3, 3, 7, CAP).unwrap();
        assert_eq!(cert.degrees, vec![1]);
        assert_eq!(cert.n_upper, 1);

        let semisimple = algebra(3, &["(1 2 3)"], 2);
        let cert = sop_upper_bound(&semisimple, 2, 7, CAP).unwrap();
        assert_eq!(cert.rank, 0);
        assert!(cert.degrees.is_empty());
        assert!(cert.classes.is_empty());
        assert!(cert.scans.is_empty());
        assert_eq!(cert.n_upper, 1);
    }

    #[test]
    fn parameter_systems_skip_degrees_without_usable_classes() {
        let s3 = algebra(3, &["(1 2)", "(1 2 3)"], 3);
        let cert = sop_upper_bound(&s3, 4, 7, CAP).unwrap();
        assert_eq!(cert.rank, 1);
        assert_eq!(cert.degrees, vec![4]);
        assert_eq!(cert.n_upper, 4);

        let q8 = algebra(8, &["(1 2 4 7)(3 6 8 5)", "(1 3 4 8)(2 5 7 6)"], 2);
        let cert = sop_upper_bound(&q8, 4, 7, CAP).unwrap();
        assert_eq!(cert.rank, 1);
        assert_eq!(cert.degrees, vec![4]);
        assert_eq!(cert.n_upper, 4);
    }

    #[test]
    fn alternating_four_needs_mixed_degrees_and_a_quadratic_scan() {
        let a4 = algebra(4, &["(1 2)(3 4)", "(1 2 3)"], 2);
        assert!(matches!(
            sop_upper_bound(&a4, 2, 7, CAP),
            Err(Error::Input(_))
        ));
        let cert = sop_upper_bound(&a4, 3, 7, CAP).unwrap();
        assert_eq!(cert.rank, 2);
        assert_eq!(cert.degrees, vec![2, 3]);
        assert_eq!(cert.n_upper, 4);
        assert_eq!(cert.scans.len(), 1);
        assert_eq!(cert.scans[0].rank, 2);
        assert_eq!(cert.scans[0].points, [3, 5]);
        assert!(cert.scans[0].zero_locus_trivial);
    }
}
