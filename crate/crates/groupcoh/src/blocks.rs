//! Block decomposition of the group algebra.
//!
//! The conjugacy class sums form a basis of the center Z(kG), and the
//! blocks of kG correspond to the primitive idempotents of that center.
//! The nilradical of Z(kG) is the kernel of an iterated q-power map
//! (which is Fq-linear in characteristic p), the number of blocks is the
//! fixed-space dimension of the Frobenius on the semisimple quotient, and
//! the idempotents are found by factoring minimal polynomials in the
//! quotient and lifting back through the nilradical by Newton iteration.
//! Orthogonality, idempotency and completeness are certified exactly.

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::{Elt, Fq};
use crate::matrix::{Mat, Subspace};
use crate::module::Module;
use crate::poly::{min_poly, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

const SEPARATION_SEED: u64 = 0xbb67_ae85_84ca_a73b;
const SEPARATION_ATTEMPTS: usize = 200;
const LIFT_ROUNDS: usize = 40;

/// The primitive central idempotents of kG, as coefficient vectors over
/// the element basis, with the index of the principal block.
#[derive(Clone, Debug)]
pub struct BlockDecomposition {
    idempotents: Vec<Vec<Elt>>,
    principal: usize,
}

impl BlockDecomposition {
    pub fn count(&self) -> usize {
        self.idempotents.len()
    }

    pub fn idempotents(&self) -> &[Vec<Elt>] {
        &self.idempotents
    }

    pub fn idempotent(&self, i: usize) -> &[Elt] {
        &self.idempotents[i]
    }

    /// Index of the block whose idempotent acts as identity on the
    /// trivial module.
    pub fn principal_index(&self) -> usize {
        self.principal
    }
}

/// The center of kG in conjugacy class sum coordinates.
struct Center<'a> {
    alg: &'a GroupAlgebra,
    classes: Vec<Vec<usize>>,
}

impl<'a> Center<'a> {
    fn new(alg: &'a GroupAlgebra) -> Center<'a> {
        Center { alg, classes: alg.group().conjugacy_classes() }
    }

    fn field(&self) -> Fq {
        self.alg.field()
    }

    fn dim(&self) -> usize {
        self.classes.len()
    }

    /// The identity of kG; its class (the first) is the singleton {1}.
    fn unit(&self) -> Vec<Elt> {
        let mut v = vec![0; self.dim()];
        v[0] = self.field().one();
        v
    }

    fn from_class(&self, z: &[Elt]) -> Vec<Elt> {
        let mut v = vec![0; self.alg.group().order() as usize];
        for (ci, class) in self.classes.iter().enumerate() {
            if z[ci] != 0 {
                for &g in class {
                    v[g] = z[ci];
                }
            }
        }
        v
    }

    fn to_class(&self, v: &[Elt]) -> Result<Vec<Elt>> {
        let mut out = vec![0; self.dim()];
        for (ci, class) in self.classes.iter().enumerate() {
            let c = v[class[0]];
            if class.iter().any(|&g| v[g] != c) {
                return Err(Error::internal(
                    "a product of central elements is not constant on classes",
                ));
            }
            out[ci] = c;
        }
        Ok(out)
    }

    /// Product of two central elements, by convolution in kG.
    fn mul(&self, a: &[Elt], b: &[Elt]) -> Result<Vec<Elt>> {
        let f = self.field();
        let g = self.alg.group();
        let av = self.from_class(a);
        let bv = self.from_class(b);
        let mut out = vec![0; av.len()];
        for (i, &ai) in av.iter().enumerate() {
            if ai == 0 {
                continue;
            }
            for (j, &bj) in bv.iter().enumerate() {
                if bj != 0 {
                    let k = g.mul(i, j);
                    out[k] = f.add(out[k], f.mul(ai, bj));
                }
            }
        }
        self.to_class(&out)
    }

    fn power(&self, a: &[Elt], mut e: u64) -> Result<Vec<Elt>> {
        let mut acc = self.unit();
        let mut base = a.to_vec();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base)?;
            }
            e >>= 1;
            if e > 0 {
                base = self.mul(&base, &base)?;
            }
        }
        Ok(acc)
    }

    /// Matrix of x -> x^q on the center. This map is additive in
    /// characteristic p and fixes the scalars of Fq, hence Fq-linear.
    fn frobenius_matrix(&self) -> Result<Mat> {
        let f = self.field();
        let q = u64::from(f.order());
        let c = self.dim();
        let mut cols = Vec::with_capacity(c);
        for j in 0..c {
            let mut ej = vec![0; c];
            ej[j] = f.one();
            cols.push(self.power(&ej, q)?);
        }
        Ok(Mat::from_fn(f, c, c, |i, j| cols[j][i]))
    }
}

/// The semisimple quotient of the center by its nilradical, with an exact
/// linear section placing quotient coordinates at the free positions.
struct Quotient {
    nil: Subspace,
    free: Vec<usize>,
}

impl Quotient {
    fn dim(&self) -> usize {
        self.free.len()
    }

    fn project(&self, v: &[Elt]) -> Vec<Elt> {
        self.nil.quotient_coords(v)
    }

    fn lift(&self, w: &[Elt]) -> Vec<Elt> {
        let mut v = vec![0; self.nil.ambient_dim()];
        for (k, &pos) in self.free.iter().enumerate() {
            v[pos] = w[k];
        }
        v
    }
}

fn add_vec(f: Fq, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
    a.iter().zip(b).map(|(&x, &y)| f.add(x, y)).collect()
}

fn sub_vec(f: Fq, a: &[Elt], b: &[Elt]) -> Vec<Elt> {
    a.iter().zip(b).map(|(&x, &y)| f.sub(x, y)).collect()
}

fn scale_vec(f: Fq, a: &[Elt], c: Elt) -> Vec<Elt> {
    a.iter().map(|&x| f.mul(x, c)).collect()
}

/// Matrix of multiplication by `a` (quotient coordinates) on the quotient.
fn quotient_mult_matrix(z: &Center, quo: &Quotient, a: &[Elt]) -> Result<Mat> {
    let f = z.field();
    let s = quo.dim();
    let lifted = quo.lift(a);
    let mut cols = Vec::with_capacity(s);
    for j in 0..s {
        let mut ej = vec![0; s];
        ej[j] = f.one();
        cols.push(quo.project(&z.mul(&lifted, &quo.lift(&ej))?));
    }
    Ok(Mat::from_fn(f, s, s, |i, j| cols[j][i]))
}

/// Splits the idempotent `e` of the semisimple quotient using the element
/// `e * candidate`: the minimal polynomial of its multiplication action on
/// the ideal generated by `e` factors, and the Chinese remainder
/// idempotents of Fq[x] modulo that polynomial push forward to exact
/// orthogonal idempotents refining `e`.
fn split_one(
    z: &Center,
    quo: &Quotient,
    e: &[Elt],
    candidate: &[Elt],
) -> Result<Vec<Vec<Elt>>> {
    let f = z.field();
    let me = quotient_mult_matrix(z, quo, e)?;
    let ideal = Subspace::from_columns(&me);
    let basis = ideal.basis_matrix().transpose();
    let beta = me.apply(candidate);
    let mbeta = quotient_mult_matrix(z, quo, &beta)?;
    let restricted = basis
        .solve(&mbeta.mul(&basis))
        .ok_or_else(|| Error::internal("multiplication left a block ideal"))?;
    let m = min_poly(&restricted);
    let factors = m.factor();
    if factors.len() < 2 {
        return Ok(vec![e.to_vec()]);
    }
    let mut pieces = Vec::with_capacity(factors.len());
    for (i, (fi, mi)) in factors.iter().enumerate() {
        let mut fi_pow = Poly::one(f);
        for _ in 0..*mi {
            fi_pow = fi_pow.mul(fi);
        }
        let mut rest = Poly::one(f);
        for (j, (fj, mj)) in factors.iter().enumerate() {
            if j != i {
                for _ in 0..*mj {
                    rest = rest.mul(fj);
                }
            }
        }
        let (g, u, _) = rest.extended_gcd(&fi_pow);
        if g.degree() != Some(0) {
            return Err(Error::internal("minimal polynomial factors share a root"));
        }
        let w = u.mul(&rest).rem(&m);
        let piece = w.eval_mat(&mbeta).apply(e);
        if piece.iter().all(|&x| x == 0) {
            return Err(Error::internal("a block idempotent collapsed to zero"));
        }
        pieces.push(piece);
    }
    Ok(pieces)
}

/// Refines the unit of the semisimple quotient into `target` orthogonal
/// idempotents, trying the class sum images first and then seeded random
/// elements; `target` comes from the Frobenius fixed-space count.
fn split_in_quotient(z: &Center, quo: &Quotient, target: usize) -> Result<Vec<Vec<Elt>>> {
    let f = z.field();
    let s = quo.dim();
    let mut idems = vec![quo.project(&z.unit())];
    let mut rng = ChaCha8Rng::seed_from_u64(SEPARATION_SEED);
    let mut attempts = 0;
    while idems.len() < target {
        let candidate: Vec<Elt> = if attempts < s {
            let mut ej = vec![0; s];
            ej[attempts] = f.one();
            ej
        } else if attempts < s + SEPARATION_ATTEMPTS {
            (0..s).map(|_| rng.gen_range(0..f.order()) as Elt).collect()
        } else {
            return Err(Error::internal("failed to separate the blocks of the center"));
        };
        attempts += 1;
        let mut next = Vec::with_capacity(idems.len());
        for e in &idems {
            next.append(&mut split_one(z, quo, e, &candidate)?);
        }
        idems = next;
    }
    Ok(idems)
}

/// Lifts a complete orthogonal family of quotient idempotents to honest
/// idempotents of the center. Each lift happens inside the corner ideal
/// cut out by the previous ones, which preserves orthogonality, and the
/// last idempotent is the exact complement of the rest.
fn lift_idempotents(z: &Center, quo: &Quotient, idems: &[Vec<Elt>]) -> Result<Vec<Vec<Elt>>> {
    let f = z.field();
    let unit = z.unit();
    let mut lifted: Vec<Vec<Elt>> = Vec::with_capacity(idems.len());
    let mut used = vec![0; z.dim()];
    for (pos, ebar) in idems.iter().enumerate() {
        let e = if pos + 1 == idems.len() {
            sub_vec(f, &unit, &used)
        } else {
            let corner = sub_vec(f, &unit, &used);
            let mut e = z.mul(&corner, &quo.lift(ebar))?;
            let mut rounds = 0;
            loop {
                let sq = z.mul(&e, &e)?;
                if sq == e {
                    break;
                }
                if rounds == LIFT_ROUNDS {
                    return Err(Error::internal("idempotent lifting did not converge"));
                }
                // e <- 3e^2 - 2e^3 squares the distance to idempotency
                let cube = z.mul(&sq, &e)?;
                e = sub_vec(
                    f,
                    &scale_vec(f, &sq, f.from_int(3)),
                    &scale_vec(f, &cube, f.from_int(2)),
                );
                rounds += 1;
            }
            e
        };
        if quo.project(&e) != *ebar {
            return Err(Error::internal(
                "a lifted idempotent has the wrong image in the quotient",
            ));
        }
        used = add_vec(f, &used, &e);
        lifted.push(e);
    }
    for (i, ei) in lifted.iter().enumerate() {
        if ei.iter().all(|&x| x == 0) || z.mul(ei, ei)? != *ei {
            return Err(Error::internal("a lifted element is not a nonzero idempotent"));
        }
        for ej in lifted.iter().take(i) {
            if z.mul(ei, ej)?.iter().any(|&x| x != 0) {
                return Err(Error::internal("block idempotents are not orthogonal"));
            }
        }
    }
    if used != unit {
        return Err(Error::internal("block idempotents do not sum to the identity"));
    }
    Ok(lifted)
}

/// Decomposes kG into blocks: the complete set of orthogonal primitive
/// central idempotents, ordered canonically by their coefficient vectors,
/// with the principal block identified by augmentation.
pub fn block_decomposition(alg: &GroupAlgebra) -> Result<BlockDecomposition> {
    let f = alg.field();
    let z = Center::new(alg);
    let c = z.dim();

    // The nilradical is the kernel of x -> x^(q^r) once q^r reaches the
    // center dimension, since minimal polynomials have degree at most c.
    let frob = z.frobenius_matrix()?;
    let q = u64::from(f.order());
    let mut rounds = 0u32;
    let mut reach = 1u64;
    while reach < c as u64 {
        reach *= q;
        rounds += 1;
    }
    let nil = Subspace::from_columns(&frob.pow(u64::from(rounds)).nullspace());
    let quo = Quotient { free: nil.free_positions(), nil };
    let s = quo.dim();

    // One Frobenius fixed point per block: the quotient is a product of
    // fields, and x^q = x cuts out the copy of Fq in each factor.
    let mut fixed_cols = Vec::with_capacity(s);
    for j in 0..s {
        let mut ej = vec![0; s];
        ej[j] = f.one();
        fixed_cols.push(quo.project(&frob.apply(&quo.lift(&ej))));
    }
    let fbar = Mat::from_fn(f, s, s, |i, j| fixed_cols[j][i]);
    let target = fbar.sub(&Mat::identity(f, s)).nullspace().cols();

    let idems = split_in_quotient(&z, &quo, target)?;
    let lifted = lift_idempotents(&z, &quo, &idems)?;
    let mut idempotents: Vec<Vec<Elt>> = lifted.iter().map(|e| z.from_class(e)).collect();
    idempotents.sort();

    let mut principal = None;
    for (i, e) in idempotents.iter().enumerate() {
        let aug = e.iter().fold(f.zero(), |acc, &x| f.add(acc, x));
        if aug == f.one() {
            if principal.is_some() {
                return Err(Error::internal("two block idempotents have augmentation one"));
            }
            principal = Some(i);
        } else if aug != f.zero() {
            return Err(Error::internal("a block idempotent has augmentation outside {0, 1}"));
        }
    }
    let principal = principal
        .ok_or_else(|| Error::internal("no block idempotent acts as identity on the trivial module"))?;
    Ok(BlockDecomposition { idempotents, principal })
}

/// The index of the block containing `m`, or `None` when `m` has summands
/// in more than one block. The zero module reports the principal block.
pub fn block_of(
    alg: &GroupAlgebra,
    blocks: &BlockDecomposition,
    m: &Module,
) -> Result<Option<usize>> {
    if m.field() != alg.field() {
        return Err(Error::input("module and algebra are over different fields"));
    }
    if m.generator_count() != alg.group().generators().len() {
        return Err(Error::input("module and algebra have different generator counts"));
    }
    if m.is_zero() {
        return Ok(Some(blocks.principal_index()));
    }
    let actions = m.element_actions(alg.group());
    let id = Mat::identity(m.field(), m.dim());
    let mut hit = None;
    for (i, e) in blocks.idempotents().iter().enumerate() {
        if GroupAlgebra::action_from_coeffs(e, &actions) == id {
            if hit.is_some() {
                return Err(Error::internal(
                    "two orthogonal idempotents act as identity on a nonzero module",
                ));
            }
            hit = Some(i);
        }
    }
    Ok(hit)
}
