//! Finite-dimensional modules over a group algebra kG.
//!
//! A module stores one invertible matrix per group generator, acting on
//! column vectors on the left. Every construction here is exact: direct
//! sums and tensor products are block and Kronecker assembly, duals invert
//! and transpose the generator matrices (so the double dual is literally
//! the original module), restriction re-expresses subgroup generators
//! through the parent group's word chains, and induction builds the block
//! permutation action on coset translates.
//!
//! Functions that need group structure take the `PermGroup` explicitly; the
//! module itself stays a plain matrix tuple. The generator list of a module
//! is always parallel to the generator list of its group.

use crate::error::{Error, Result};
use crate::field::{Elt, Fq};
use crate::group::PermGroup;
use crate::matrix::{Mat, Subspace};
use crate::perm::Perm;

/// A kG-module given by the action matrices of the group generators.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Module {
    field: Fq,
    dim: usize,
    gens: Vec<Mat>,
}

impl Module {
    /// Wraps generator action matrices, checking shape and invertibility.
    pub fn new(field: Fq, dim: usize, gens: Vec<Mat>) -> Result<Module> {
        for (i, m) in gens.iter().enumerate() {
            if m.rows() != dim || m.cols() != dim {
                return Err(Error::input(format!(
                    "generator {i} acts by a {}x{} matrix on a {dim}-dimensional module",
                    m.rows(),
                    m.cols()
                )));
            }
            if m.field() != field {
                return Err(Error::input(format!(
                    "generator {i} is over {} but the module is over {field}",
                    m.field()
                )));
            }
            if m.inverse().is_none() {
                return Err(Error::input(format!("generator {i} acts non-invertibly")));
            }
        }
        Ok(Module { field, dim, gens })
    }

    /// The one-dimensional module with every generator acting as 1.
    pub fn trivial(field: Fq, group: &PermGroup) -> Module {
        let gens = vec![Mat::identity(field, 1); group.generators().len()];
        Module { field, dim: 1, gens }
    }

    /// The zero module.
    pub fn zero(field: Fq, group: &PermGroup) -> Module {
        let gens = vec![Mat::zero(field, 0, 0); group.generators().len()];
        Module { field, dim: 0, gens }
    }

    /// Wraps already validated parts without re-checking invertibility.
    pub(crate) fn from_parts(field: Fq, dim: usize, gens: Vec<Mat>) -> Module {
        Module { field, dim, gens }
    }

    /// The matrix of a permutation acting on basis vectors: `e_j` maps to
    /// `e_{sigma(j)}`.
    pub fn perm_matrix(field: Fq, p: &Perm) -> Mat {
        let n = p.degree();
        let mut m = Mat::zero(field, n, n);
        for j in 0..n {
            m.set(p.image(j), j, 1);
        }
        m
    }

    /// The natural permutation module on the points the group acts on.
    pub fn permutation(field: Fq, group: &PermGroup) -> Module {
        let gens = group
            .generators()
            .iter()
            .map(|g| Module::perm_matrix(field, g))
            .collect();
        Module { field, dim: group.degree(), gens }
    }

    /// The regular module kG: generators act by left translation on the
    /// basis indexed by group elements in enumeration order.
    pub fn regular(field: Fq, group: &PermGroup) -> Module {
        let gens = group
            .generators()
            .iter()
            .map(|g| {
                let idx = group.index_of(g).expect("generator is an element");
                Module::perm_matrix(field, &group.left_translation_perm(idx))
            })
            .collect();
        Module { field, dim: group.order() as usize, gens }
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn generator_action(&self, i: usize) -> &Mat {
        &self.gens[i]
    }

    pub fn generator_count(&self) -> usize {
        self.gens.len()
    }

    pub fn is_zero(&self) -> bool {
        self.dim == 0
    }

    /// Action matrix of group element `index`, built along its word chain.
    pub fn element_action(&self, group: &PermGroup, index: usize) -> Mat {
        let mut acc = Mat::identity(self.field, self.dim);
        for gi in group.word(index) {
            acc = self.gens[gi].mul(&acc);
        }
        acc
    }

    /// Action matrices of all group elements, in enumeration order. Costs
    /// one matrix product per element: BFS parents come earlier, so each
    /// entry is a generator matrix times an already computed entry.
    pub fn element_actions(&self, group: &PermGroup) -> Vec<Mat> {
        let n = group.order() as usize;
        let mut out = Vec::with_capacity(n);
        out.push(Mat::identity(self.field, self.dim));
        for i in 1..n {
            let (parent, gi) = group.parent_of(i).expect("non-identity element");
            let m = self.gens[gi].mul(&out[parent]);
            out.push(m);
        }
        out
    }

    /// Checks that the assignment of matrices to generators really defines
    /// a representation: for every element `e` and generator `g`, the table
    /// entry for `g * e` must equal the product of the matrices.
    pub fn verify_representation(&self, group: &PermGroup) -> Result<()> {
        if self.gens.len() != group.generators().len() {
            return Err(Error::input(format!(
                "module has {} generator matrices but the group has {} generators",
                self.gens.len(),
                group.generators().len()
            )));
        }
        let actions = self.element_actions(group);
        for e in 0..group.order() as usize {
            for (gi, g) in group.generators().iter().enumerate() {
                let g_idx = group.index_of(g).expect("generator is an element");
                let target = group.mul(g_idx, e);
                if self.gens[gi].mul(&actions[e]) != actions[target] {
                    return Err(Error::input(format!(
                        "generator {gi} violates the multiplication table at element {e}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn direct_sum(&self, other: &Module) -> Module {
        assert_eq!(self.gens.len(), other.gens.len(), "generator count mismatch");
        let f = self.field;
        let dim = self.dim + other.dim;
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| {
                let mut m = Mat::zero(f, dim, dim);
                for i in 0..a.rows() {
                    for j in 0..a.cols() {
                        m.set(i, j, a.at(i, j));
                    }
                }
                for i in 0..b.rows() {
                    for j in 0..b.cols() {
                        m.set(self.dim + i, self.dim + j, b.at(i, j));
                    }
                }
                m
            })
            .collect();
        Module { field: f, dim, gens }
    }

    /// Direct sum of `n` copies.
    pub fn direct_power(&self, group: &PermGroup, n: usize) -> Module {
        let mut acc = Module::zero(self.field, group);
        for _ in 0..n {
            acc = acc.direct_sum(self);
        }
        acc
    }

    /// Tensor product over k with the diagonal action.
    pub fn tensor(&self, other: &Module) -> Module {
        assert_eq!(self.gens.len(), other.gens.len(), "generator count mismatch");
        let gens = self
            .gens
            .iter()
            .zip(&other.gens)
            .map(|(a, b)| a.kron(b))
            .collect();
        Module { field: self.field, dim: self.dim * other.dim, gens }
    }

    /// The dual module: `g` acts by the inverse transpose. Taking the dual
    /// twice returns the original matrices exactly.
    pub fn dual(&self) -> Module {
        let gens = self
            .gens
            .iter()
            .map(|a| {
                a.inverse()
                    .expect("generator actions are invertible")
                    .transpose()
            })
            .collect();
        Module { field: self.field, dim: self.dim, gens }
    }

    /// Restriction to a subgroup given as a group on the same points. Each
    /// subgroup generator is located in the parent group and its action is
    /// evaluated along the parent's word chain.
    pub fn restrict(&self, group: &PermGroup, subgroup: &PermGroup) -> Result<Module> {
        let mut gens = Vec::with_capacity(subgroup.generators().len());
        for h in subgroup.generators() {
            let idx = group.index_of(h).ok_or_else(|| {
                Error::input(format!("subgroup generator {h} is not in the group"))
            })?;
            gens.push(self.element_action(group, idx));
        }
        Ok(Module { field: self.field, dim: self.dim, gens })
    }

    /// Induction from a subgroup: `self` is a module over `subgroup`, and
    /// the result is a module over `group` of dimension `dim * [G:H]` on
    /// the basis `t_i ⊗ m_j` indexed by the left transversal.
    pub fn induce(&self, group: &PermGroup, subgroup: &PermGroup) -> Result<Module> {
        let h_to_g = group.indices_of_subgroup(subgroup)?;
        let (transversal, coset_of) = group.left_cosets(&h_to_g);
        let g_to_h: std::collections::HashMap<usize, usize> =
            h_to_g.iter().enumerate().map(|(h, &g)| (g, h)).collect();
        let k = transversal.len();
        let f = self.field;
        let dim = self.dim * k;
        let mut gens = Vec::with_capacity(group.generators().len());
        for g in group.generators() {
            let g_idx = group.index_of(g).expect("generator is an element");
            let mut m = Mat::zero(f, dim, dim);
            for (i, &t_i) in transversal.iter().enumerate() {
                // g * t_i = t_j * h with j the coset of g t_i.
                let gt = group.mul(g_idx, t_i);
                let j = coset_of[gt];
                let h_in_g = group.mul(group.inv(transversal[j]), gt);
                let h_in_h = *g_to_h
                    .get(&h_in_g)
                    .expect("coset defect lies in the subgroup");
                let block = self.element_action(subgroup, h_in_h);
                for r in 0..self.dim {
                    for c in 0..self.dim {
                        m.set(j * self.dim + r, i * self.dim + c, block.at(r, c));
                    }
                }
            }
            gens.push(m);
        }
        Ok(Module { field: f, dim, gens })
    }

    /// Fixed points under the whole group: the common kernel of `g - 1`
    /// over the generators.
    pub fn invariants(&self) -> Subspace {
        let f = self.field;
        if self.gens.is_empty() {
            let mut s = Subspace::new(f, self.dim);
            for i in 0..self.dim {
                let mut v = vec![0; self.dim];
                v[i] = 1;
                s.insert(v);
            }
            return s;
        }
        let mut stacked = Mat::zero(f, 0, self.dim);
        for g in &self.gens {
            stacked = stacked.vstack(&g.sub(&Mat::identity(f, self.dim)));
        }
        Subspace::from_columns(&stacked.nullspace())
    }

    /// Basis of the space of module homomorphisms `self -> other`, each as
    /// an `other.dim x self.dim` matrix. The defining condition is
    /// `rho_N(g) X = X rho_M(g)` for every generator.
    pub fn hom_space(&self, other: &Module) -> Vec<Mat> {
        assert_eq!(self.gens.len(), other.gens.len(), "generator count mismatch");
        let f = self.field;
        let (dm, dn) = (self.dim, other.dim);
        if dm == 0 || dn == 0 {
            return Vec::new();
        }
        // vec(X) is column-major; vec(A X) = (I ⊗ A) vec X and
        // vec(X B) = (B^T ⊗ I) vec X.
        let mut sys = Mat::zero(f, 0, dm * dn);
        for (a, b) in self.gens.iter().zip(&other.gens) {
            let left = Mat::identity(f, dm).kron(b);
            let right = a.transpose().kron(&Mat::identity(f, dn));
            sys = sys.vstack(&left.sub(&right));
        }
        let null = sys.nullspace();
        (0..null.cols())
            .map(|c| Mat::from_fn(f, dn, dm, |i, j| null.at(j * dn + i, c)))
            .collect()
    }

    pub fn hom_dim(&self, other: &Module) -> usize {
        self.hom_space(other).len()
    }

    /// Searches for an invertible homomorphism by seeded random
    /// combinations of a Hom basis. `Some(true)` means an isomorphism was
    /// found; `Some(false)` means the dimensions already differ; `None`
    /// means the bounded search was inconclusive.
    pub fn is_isomorphic(&self, other: &Module, seed: u64) -> Option<bool> {
        use rand::{Rng, SeedableRng};
        if self.dim != other.dim {
            return Some(false);
        }
        if self.dim == 0 {
            return Some(true);
        }
        let basis = self.hom_space(other);
        if basis.is_empty() {
            return Some(false);
        }
        let f = self.field;
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..64 {
            let mut cand = Mat::zero(f, other.dim, self.dim);
            for b in &basis {
                cand = cand.add(&b.scale(rng.gen_range(0..f.order())));
            }
            if cand.inverse().is_some() {
                return Some(true);
            }
        }
        None
    }

    /// Smallest subspace containing the given vectors and stable under the
    /// generator actions (and hence under the whole group).
    pub fn spin(&self, vectors: &[Vec<Elt>]) -> Subspace {
        spin_under(self.field, self.dim, &self.gens, vectors)
    }

    /// Whether the subspace is stable under every generator.
    pub fn is_submodule(&self, space: &Subspace) -> bool {
        space.basis_rows().iter().all(|v| {
            self.gens.iter().all(|g| space.contains(&g.apply(v)))
        })
    }

    /// The module structure on an invariant subspace, together with the
    /// inclusion matrix (columns are the subspace basis).
    pub fn submodule(&self, space: &Subspace) -> (Module, Mat) {
        assert!(self.is_submodule(space), "subspace is not invariant");
        let f = self.field;
        let basis = space.basis_matrix().transpose();
        let gens = self
            .gens
            .iter()
            .map(|g| {
                basis
                    .solve(&g.mul(&basis))
                    .expect("image stays inside the invariant subspace")
            })
            .collect();
        (Module { field: f, dim: space.dim(), gens }, basis)
    }

    /// The module structure on the quotient by an invariant subspace,
    /// together with the projection matrix onto canonical complement
    /// coordinates.
    pub fn quotient(&self, space: &Subspace) -> (Module, Mat) {
        assert!(self.is_submodule(space), "subspace is not invariant");
        let f = self.field;
        let free = space.free_positions();
        let qdim = free.len();
        let mut proj = Mat::zero(f, qdim, self.dim);
        for i in 0..self.dim {
            let mut e = vec![0; self.dim];
            e[i] = 1;
            for (r, c) in space.quotient_coords(&e).into_iter().enumerate() {
                proj.set(r, i, c);
            }
        }
        let gens = self
            .gens
            .iter()
            .map(|g| {
                // Quotient action: lift canonical complement basis vectors,
                // act, project.
                let mut m = Mat::zero(f, qdim, qdim);
                for (j, &pos) in free.iter().enumerate() {
                    let mut e = vec![0; self.dim];
                    e[pos] = 1;
                    let img = g.apply(&e);
                    for (i, c) in space.quotient_coords(&img).into_iter().enumerate() {
                        m.set(i, j, c);
                    }
                }
                m
            })
            .collect();
        (Module { field: f, dim: qdim, gens }, proj)
    }

    /// Re-reads the module over the quadratic extension of its prime field.
    pub fn extend_scalars(&self, ext: Fq) -> Result<Module> {
        let gens = self
            .gens
            .iter()
            .map(|g| g.embedded(ext))
            .collect::<Result<Vec<_>>>()?;
        Ok(Module { field: ext, dim: self.dim, gens })
    }
}

/// Closure of a set of vectors under the given matrices. Used with module
/// generator actions for submodule spinning, and with transposed actions
/// when splitting off invariant subspaces of the dual side.
pub(crate) fn spin_under(field: Fq, dim: usize, mats: &[Mat], vectors: &[Vec<Elt>]) -> Subspace {
    let mut space = Subspace::new(field, dim);
    let mut queue: Vec<Vec<Elt>> = Vec::new();
    for v in vectors {
        if space.insert(v.clone()) {
            queue.push(v.clone());
        }
    }
    while let Some(v) = queue.pop() {
        for g in mats {
            let w = g.apply(&v);
            if space.insert(w.clone()) {
                queue.push(w);
            }
        }
    }
    space
}
