//! Dense exact matrices over `F_p` and `F_{p^2}`, plus row-space utilities.
//!
//! Everything downstream (group algebras, resolutions, cohomology windows,
//! rank varieties) reduces to the operations here: rank, reduced row echelon
//! form, null spaces, linear solves, and Kronecker products. All elimination
//! uses the first non-zero pivot in column order, so results are canonical:
//! the same matrix always reduces to the same bytes, and a subspace has a
//! unique reduced basis independent of how it was assembled.

use crate::error::{Error, Result};
use crate::field::{Elt, Fq};
use std::fmt;

/// A dense row-major matrix over a fixed finite field.
#[derive(Clone, PartialEq, Eq)]
pub struct Mat {
    field: Fq,
    rows: usize,
    cols: usize,
    data: Vec<Elt>,
}

impl Mat {
    pub fn zero(field: Fq, rows: usize, cols: usize) -> Mat {
        Mat { field, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: Fq, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    pub fn from_rows(field: Fq, rows: Vec<Vec<Elt>>) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        assert!(rows.iter().all(|row| row.len() == c), "ragged rows");
        let q = field.order();
        let data: Vec<Elt> = rows.into_iter().flatten().collect();
        assert!(data.iter().all(|&x| x < q), "entry out of field range");
        Mat { field, rows: r, cols: c, data }
    }

    pub fn from_fn(field: Fq, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Elt) -> Mat {
        let mut m = Mat::zero(field, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    /// Column vector from a slice.
    pub fn column_vector(field: Fq, v: &[Elt]) -> Mat {
        Mat { field, rows: v.len(), cols: 1, data: v.to_vec() }
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn at(&self, i: usize, j: usize) -> Elt {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Elt) {
        debug_assert!(v < self.field.order());
        self.data[i * self.cols + j] = v;
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[Elt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Elt> {
        (0..self.rows).map(|i| self.at(i, j)).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&x| x == 0)
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    fn assert_same_field(&self, other: &Mat) {
        assert_eq!(self.field, other.field, "mixed-field matrix operation");
    }

    pub fn add(&self, other: &Mat) -> Mat {
        self.assert_same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.add(a, b))
            .collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Mat) -> Mat {
        self.assert_same_field(other);
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        let data = self
            .data
            .iter()
            .zip(&other.data)
            .map(|(&a, &b)| f.sub(a, b))
            .collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.neg(a)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn scale(&self, c: Elt) -> Mat {
        let f = self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn mul(&self, other: &Mat) -> Mat {
        self.assert_same_field(other);
        assert_eq!(self.cols, other.rows, "dimension mismatch in matrix product");
        let f = self.field;
        let p = f.characteristic() as u64;
        let mut out = Mat::zero(f, self.rows, other.cols);
        if f.extension_degree() == 1 {
            // Prime-field fast path: accumulate in u64, reduce once per entry.
            for i in 0..self.rows {
                let lrow = self.row(i);
                for k in 0..self.cols {
                    let a = lrow[k] as u64;
                    if a == 0 {
                        continue;
                    }
                    let rrow = other.row(k);
                    let orow = &mut out.data[i * other.cols..(i + 1) * other.cols];
                    for j in 0..other.cols {
                        let v = orow[j] as u64 + a * rrow[j] as u64;
                        orow[j] = (v % p) as Elt;
                    }
                }
            }
        } else {
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.at(i, k);
                    if a == 0 {
                        continue;
                    }
                    for j in 0..other.cols {
                        let v = f.add(out.at(i, j), f.mul(a, other.at(k, j)));
                        out.set(i, j, v);
                    }
                }
            }
        }
        out
    }

    /// Applies the matrix to a column vector.
    pub fn apply(&self, v: &[Elt]) -> Vec<Elt> {
        assert_eq!(self.cols, v.len());
        let f = self.field;
        (0..self.rows)
            .map(|i| {
                let mut acc = 0;
                for j in 0..self.cols {
                    acc = f.add(acc, f.mul(self.at(i, j), v[j]));
                }
                acc
            })
            .collect()
    }

    pub fn transpose(&self) -> Mat {
        let mut out = Mat::zero(self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                out.set(j, i, self.at(i, j));
            }
        }
        out
    }

    pub fn pow(&self, mut n: u64) -> Mat {
        assert!(self.is_square());
        let mut acc = Mat::identity(self.field, self.rows);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Kronecker product; `(self ⊗ other)` has block `self[i][j] * other`.
    pub fn kron(&self, other: &Mat) -> Mat {
        self.assert_same_field(other);
        let f = self.field;
        let mut out = Mat::zero(f, self.rows * other.rows, self.cols * other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.at(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..other.rows {
                    for l in 0..other.cols {
                        out.set(
                            i * other.rows + k,
                            j * other.cols + l,
                            f.mul(a, other.at(k, l)),
                        );
                    }
                }
            }
        }
        out
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &Mat) -> Mat {
        self.assert_same_field(other);
        assert_eq!(self.rows, other.rows);
        let mut out = Mat::zero(self.field, self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            out.data[i * out.cols..i * out.cols + self.cols].copy_from_slice(self.row(i));
            out.data[i * out.cols + self.cols..(i + 1) * out.cols].copy_from_slice(other.row(i));
        }
        out
    }

    /// Vertical concatenation.
    pub fn vstack(&self, other: &Mat) -> Mat {
        self.assert_same_field(other);
        assert_eq!(self.cols, other.cols);
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Mat { field: self.field, rows: self.rows + other.rows, cols: self.cols, data }
    }

    /// Copy of the rectangle `[r0, r1) x [c0, c1)`.
    pub fn submatrix(&self, r0: usize, r1: usize, c0: usize, c1: usize) -> Mat {
        assert!(r1 <= self.rows && c1 <= self.cols && r0 <= r1 && c0 <= c1);
        Mat::from_fn(self.field, r1 - r0, c1 - c0, |i, j| self.at(r0 + i, c0 + j))
    }

    /// Reinterprets a prime-field matrix inside the quadratic extension.
    pub fn embedded(&self, ext: Fq) -> Result<Mat> {
        if self.field.extension_degree() != 1
            || ext.characteristic() != self.field.characteristic()
            || ext.extension_degree() != 2
        {
            return Err(Error::input(format!(
                "cannot embed {} matrix into {}",
                self.field, ext
            )));
        }
        // Packed prime-subfield values are identical in the extension.
        Ok(Mat { field: ext, rows: self.rows, cols: self.cols, data: self.data.clone() })
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// Reduced row echelon form with deterministic first-non-zero pivoting.
    pub fn rref(&self) -> Rref {
        let f = self.field;
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            let Some(pr) = (r..m.rows).find(|&i| m.at(i, c) != 0) else {
                continue;
            };
            m.swap_rows(r, pr);
            let inv = f.inv(m.at(r, c));
            for k in c..m.cols {
                m.set(r, k, f.mul(m.at(r, k), inv));
            }
            for i in 0..m.rows {
                if i == r || m.at(i, c) == 0 {
                    continue;
                }
                let factor = m.at(i, c);
                for k in c..m.cols {
                    let v = f.sub(m.at(i, k), f.mul(factor, m.at(r, k)));
                    m.set(i, k, v);
                }
            }
            pivots.push(c);
            r += 1;
            if r == m.rows {
                break;
            }
        }
        Rref { mat: m, pivots }
    }

    pub fn rank(&self) -> usize {
        self.rref().rank()
    }

    /// Canonical basis of `{x : self * x = 0}`, returned as matrix columns.
    ///
    /// One basis vector per free column `c`: entry 1 at `c`, the negated
    /// reduced entries at the pivot positions, zero elsewhere.
    pub fn nullspace(&self) -> Mat {
        let f = self.field;
        let rref = self.rref();
        let pivots = &rref.pivots;
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivots.contains(c)).collect();
        let mut out = Mat::zero(f, self.cols, free.len());
        for (k, &c) in free.iter().enumerate() {
            out.set(c, k, 1);
            for (r, &pc) in pivots.iter().enumerate() {
                out.set(pc, k, f.neg(rref.mat.at(r, c)));
            }
        }
        out
    }

    /// Canonical solution of `self * x = rhs` for each column of `rhs`
    /// (free variables zero), or `None` if any column is inconsistent.
    pub fn solve(&self, rhs: &Mat) -> Option<Mat> {
        self.assert_same_field(rhs);
        assert_eq!(self.rows, rhs.rows, "solve: row mismatch");
        let aug = self.hstack(rhs).rref();
        let n = self.cols;
        // Any pivot in the rhs block means an inconsistent column.
        if aug.pivots.iter().any(|&c| c >= n) {
            return None;
        }
        let mut x = Mat::zero(self.field, n, rhs.cols);
        for (r, &pc) in aug.pivots.iter().enumerate() {
            for j in 0..rhs.cols {
                x.set(pc, j, aug.mat.at(r, n + j));
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Mat> {
        assert!(self.is_square());
        let n = self.rows;
        let aug = self.hstack(&Mat::identity(self.field, n)).rref();
        if aug.pivots.len() != n || aug.pivots.iter().take(n).enumerate().any(|(i, &c)| i != c) {
            return None;
        }
        Some(aug.mat.submatrix(0, n, n, 2 * n))
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> Elt {
        assert!(self.is_square());
        let f = self.field;
        (0..self.rows).fold(0, |acc, i| f.add(acc, self.at(i, i)))
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            writeln!(
                f,
                "  [{}]",
                self.row(i)
                    .iter()
                    .map(|&x| self.field.format_elt(x))
                    .collect::<Vec<_>>()
                    .join(" ")
            )?;
        }
        Ok(())
    }
}

/// Result of row reduction: the reduced matrix and its pivot columns.
pub struct Rref {
    pub mat: Mat,
    pub pivots: Vec<usize>,
}

impl Rref {
    pub fn rank(&self) -> usize {
        self.pivots.len()
    }
}

/// A subspace of `F_q^n` kept in reduced row echelon form.
///
/// The representation is canonical: two subspaces are equal exactly when
/// their stored bases are equal, regardless of insertion order. Rows are the
/// basis vectors; `pivots` are their leading columns in increasing order.
#[derive(Clone, PartialEq, Eq)]
pub struct Subspace {
    field: Fq,
    ambient: usize,
    rows: Vec<Vec<Elt>>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(field: Fq, ambient: usize) -> Subspace {
        Subspace { field, ambient, rows: Vec::new(), pivots: Vec::new() }
    }

    /// Span of the columns of `m`.
    pub fn from_columns(m: &Mat) -> Subspace {
        let mut s = Subspace::new(m.field(), m.rows());
        for j in 0..m.cols() {
            s.insert(m.column(j));
        }
        s
    }

    /// Span of the rows of `m`.
    pub fn from_rows(m: &Mat) -> Subspace {
        let mut s = Subspace::new(m.field(), m.cols());
        for i in 0..m.rows() {
            s.insert(m.row(i).to_vec());
        }
        s
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    /// Reduces `v` against the basis; the result is zero iff `v` lies in
    /// the subspace.
    pub fn reduce(&self, mut v: Vec<Elt>) -> Vec<Elt> {
        assert_eq!(v.len(), self.ambient);
        let f = self.field;
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            let c = v[p];
            if c != 0 {
                for k in p..self.ambient {
                    v[k] = f.sub(v[k], f.mul(c, row[k]));
                }
            }
        }
        v
    }

    pub fn contains(&self, v: &[Elt]) -> bool {
        self.reduce(v.to_vec()).iter().all(|&x| x == 0)
    }

    pub fn contains_subspace(&self, other: &Subspace) -> bool {
        other.rows.iter().all(|r| self.contains(r))
    }

    /// Inserts a vector; returns whether the dimension grew.
    pub fn insert(&mut self, v: Vec<Elt>) -> bool {
        let f = self.field;
        let mut v = self.reduce(v);
        let Some(p) = v.iter().position(|&x| x != 0) else {
            return false;
        };
        let inv = f.inv(v[p]);
        for x in v.iter_mut() {
            *x = f.mul(*x, inv);
        }
        // Back-reduce existing rows so the basis stays in reduced form.
        for row in self.rows.iter_mut() {
            let c = row[p];
            if c != 0 {
                for k in 0..self.ambient {
                    row[k] = f.sub(row[k], f.mul(c, v[k]));
                }
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, v);
        true
    }

    /// Basis vectors as matrix rows (canonical).
    pub fn basis_matrix(&self) -> Mat {
        if self.rows.is_empty() {
            return Mat::zero(self.field, 0, self.ambient);
        }
        Mat::from_rows(self.field, self.rows.clone())
    }

    pub fn basis_rows(&self) -> &[Vec<Elt>] {
        &self.rows
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        let mut s = self.clone();
        for r in &other.rows {
            s.insert(r.clone());
        }
        s
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        assert_eq!(self.ambient, other.ambient);
        // x in both spans: x = a^T A = b^T B. Solve [A^T | -B^T] z = 0 and
        // read off the A-coefficients.
        let a = self.basis_matrix();
        let b = other.basis_matrix();
        let stacked = a.transpose().hstack(&b.transpose().neg());
        let null = stacked.nullspace();
        let mut out = Subspace::new(self.field, self.ambient);
        for j in 0..null.cols() {
            let coeffs: Vec<Elt> = (0..a.rows()).map(|i| null.at(i, j)).collect();
            let mut v = vec![0; self.ambient];
            let f = self.field;
            for (i, &c) in coeffs.iter().enumerate() {
                if c != 0 {
                    for k in 0..self.ambient {
                        v[k] = f.add(v[k], f.mul(c, a.at(i, k)));
                    }
                }
            }
            out.insert(v);
        }
        out
    }

    /// Ambient coordinates not used as pivots, in increasing order. They
    /// index a canonical complement, so `quotient_coords` gives coordinates
    /// in the quotient by this subspace.
    pub fn free_positions(&self) -> Vec<usize> {
        (0..self.ambient).filter(|c| !self.pivots.contains(c)).collect()
    }

    /// Coordinates of `v + self` in the canonical complement basis.
    pub fn quotient_coords(&self, v: &[Elt]) -> Vec<Elt> {
        let red = self.reduce(v.to_vec());
        self.free_positions().iter().map(|&c| red[c]).collect()
    }
}

impl fmt::Debug for Subspace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Subspace dim {} of {}^{}",
            self.dim(),
            self.field,
            self.ambient
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn random_mat(rng: &mut ChaCha8Rng, f: Fq, r: usize, c: usize) -> Mat {
        Mat::from_fn(f, r, c, |_, _| rng.gen_range(0..f.order()))
    }

    /// Brute-force rank: the span of the rows of an `F_q` matrix has
    /// exactly `q^rank` elements. Only usable for tiny matrices.
    fn rank_by_span_enumeration(m: &Mat) -> usize {
        let f = m.field();
        let q = f.order() as u64;
        let mut span: Vec<Vec<Elt>> = vec![vec![0; m.cols()]];
        for i in 0..m.rows() {
            let mut next = span.clone();
            for v in &span {
                for c in 1..f.order() {
                    let w: Vec<Elt> = (0..m.cols())
                        .map(|j| f.add(v[j], f.mul(c, m.at(i, j))))
                        .collect();
                    if !next.contains(&w) {
                        next.push(w);
                    }
                }
            }
            span = next;
        }
        let mut n = span.len() as u64;
        let mut rank = 0;
        while n > 1 {
            n /= q;
            rank += 1;
        }
        rank
    }

    #[test]
    fn rank_matches_span_enumeration() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for p in [2u32, 3] {
            let f = Fq::prime(p).unwrap();
            for _ in 0..40 {
                let r = rng.gen_range(0..4);
                let c = rng.gen_range(0..4);
                let m = random_mat(&mut rng, f, r, c);
                assert_eq!(m.rank(), rank_by_span_enumeration(&m), "{m:?}");
            }
        }
    }

    #[test]
    fn deterministic_first_nonzero_pivoting() {
        // Both rows could serve as the first pivot row; the contract picks
        // the first one. Frozen expected output.
        let f = Fq::prime(5).unwrap();
        // Row 2 minus row 1 equals row 0, so the rank is 2 and the first
        // pivot requires a row swap.
        let m = Mat::from_rows(f, vec![vec![0, 2, 1], vec![3, 1, 0], vec![3, 3, 1]]);
        let rref = m.rref();
        assert_eq!(rref.pivots, vec![0, 1]);
        let expected = Mat::from_rows(
            f,
            vec![vec![1, 0, 4], vec![0, 1, 3], vec![0, 0, 0]],
        );
        assert_eq!(rref.mat, expected);

        let m2 = Mat::from_rows(f, vec![vec![2, 4], vec![1, 3], vec![3, 1]]);
        let r2 = m2.rref();
        assert_eq!(r2.pivots, vec![0, 1]);
        assert_eq!(
            r2.mat,
            Mat::from_rows(f, vec![vec![1, 0], vec![0, 1], vec![0, 0]])
        );
    }

    #[test]
    fn rank_plus_nullity_is_column_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for p in [2u32, 3, 7] {
            for e in [1u32, 2] {
                let f = Fq::with_extension(p, e).unwrap();
                for _ in 0..25 {
                    let r = rng.gen_range(0..6);
                    let c = rng.gen_range(0..6);
                    let m = random_mat(&mut rng, f, r, c);
                    let null = m.nullspace();
                    assert_eq!(m.rank() + null.cols(), c);
                    if !null.is_zero() || null.cols() > 0 {
                        let prod = m.mul(&null);
                        assert!(prod.is_zero(), "kernel columns must be annihilated");
                    }
                    assert_eq!(null.rank(), null.cols(), "kernel basis independent");
                }
            }
        }
    }

    #[test]
    fn nullspace_on_zero_and_identity() {
        let f = Fq::prime(3).unwrap();
        let z = Mat::zero(f, 2, 3);
        assert_eq!(z.nullspace().cols(), 3);
        let id = Mat::identity(f, 4);
        assert_eq!(id.nullspace().cols(), 0);
        // Zero-dimensional edge cases.
        let empty = Mat::zero(f, 0, 0);
        assert_eq!(empty.rank(), 0);
        assert_eq!(empty.nullspace().cols(), 0);
        let no_rows = Mat::zero(f, 0, 3);
        assert_eq!(no_rows.nullspace().cols(), 3);
    }

    #[test]
    fn solve_substitutes_back() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        for p in [2u32, 5] {
            for e in [1u32, 2] {
                let f = Fq::with_extension(p, e).unwrap();
                for _ in 0..25 {
                    let r = rng.gen_range(1..6);
                    let c = rng.gen_range(1..6);
                    let a = random_mat(&mut rng, f, r, c);
                    let x = random_mat(&mut rng, f, c, 2);
                    let b = a.mul(&x);
                    let sol = a.solve(&b).expect("consistent system must solve");
                    assert_eq!(a.mul(&sol), b);
                }
            }
        }
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = Fq::prime(2).unwrap();
        let a = Mat::from_rows(f, vec![vec![1, 0], vec![1, 0]]);
        let b = Mat::from_rows(f, vec![vec![1], vec![0]]);
        assert!(a.solve(&b).is_none());
    }

    #[test]
    fn inverse_round_trips() {
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        let f = Fq::quadratic(3).unwrap();
        let mut found = 0;
        while found < 10 {
            let m = random_mat(&mut rng, f, 4, 4);
            if let Some(inv) = m.inverse() {
                assert_eq!(m.mul(&inv), Mat::identity(f, 4));
                assert_eq!(inv.mul(&m), Mat::identity(f, 4));
                found += 1;
            }
        }
        let singular = Mat::zero(f, 2, 2);
        assert!(singular.inverse().is_none());
    }

    #[test]
    fn kron_dimensions_and_mixed_product() {
        let mut rng = ChaCha8Rng::seed_from_u64(19);
        let f = Fq::prime(3).unwrap();
        let a = random_mat(&mut rng, f, 2, 3);
        let b = random_mat(&mut rng, f, 3, 2);
        let c = random_mat(&mut rng, f, 3, 2);
        let d = random_mat(&mut rng, f, 2, 4);
        let lhs = a.kron(&c).mul(&b.kron(&d));
        let rhs = a.mul(&b).kron(&c.mul(&d));
        assert_eq!(lhs, rhs, "(A ⊗ C)(B ⊗ D) = AB ⊗ CD");
        assert_eq!(a.kron(&c).rows(), a.rows() * c.rows());
        assert_eq!(a.kron(&c).cols(), a.cols() * c.cols());
        // Frozen sample from the 2x2 case over F_2.
        let f2 = Fq::prime(2).unwrap();
        let x = Mat::from_rows(f2, vec![vec![1, 1], vec![0, 1]]);
        let y = Mat::from_rows(f2, vec![vec![1, 0], vec![1, 1]]);
        let expect = Mat::from_rows(
            f2,
            vec![
                vec![1, 0, 1, 0],
                vec![1, 1, 1, 1],
                vec![0, 0, 1, 0],
                vec![0, 0, 1, 1],
            ],
        );
        assert_eq!(x.kron(&y), expect);
    }

    #[test]
    fn product_rank_bounds() {
        let mut rng = ChaCha8Rng::seed_from_u64(23);
        let f = Fq::prime(2).unwrap();
        for _ in 0..30 {
            let a = random_mat(&mut rng, f, 4, 3);
            let b = random_mat(&mut rng, f, 3, 4);
            let r = a.mul(&b).rank();
            assert!(r <= a.rank().min(b.rank()));
        }
    }

    #[test]
    fn subspace_canonical_under_insertion_order() {
        let mut rng = ChaCha8Rng::seed_from_u64(29);
        let f = Fq::prime(5).unwrap();
        for _ in 0..20 {
            let vs: Vec<Vec<Elt>> = (0..4)
                .map(|_| (0..5).map(|_| rng.gen_range(0..5)).collect())
                .collect();
            let mut fwd = Subspace::new(f, 5);
            for v in &vs {
                fwd.insert(v.clone());
            }
            let mut rev = Subspace::new(f, 5);
            for v in vs.iter().rev() {
                rev.insert(v.clone());
            }
            assert_eq!(fwd, rev, "canonical basis independent of order");
            for v in &vs {
                assert!(fwd.contains(v));
            }
        }
    }

    #[test]
    fn subspace_intersection_and_sum_dims() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        let f = Fq::prime(3).unwrap();
        for _ in 0..20 {
            let a = Subspace::from_rows(&random_mat(&mut rng, f, 2, 4));
            let b = Subspace::from_rows(&random_mat(&mut rng, f, 2, 4));
            let s = a.sum(&b);
            let i = a.intersect(&b);
            assert_eq!(s.dim() + i.dim(), a.dim() + b.dim(), "modular law on dims");
            assert!(a.contains_subspace(&i) && b.contains_subspace(&i));
            assert!(s.contains_subspace(&a) && s.contains_subspace(&b));
        }
    }

    #[test]
    fn quotient_coordinates_vanish_exactly_on_subspace() {
        let f = Fq::prime(2).unwrap();
        let mut s = Subspace::new(f, 3);
        s.insert(vec![1, 1, 0]);
        assert_eq!(s.free_positions(), vec![1, 2]);
        assert_eq!(s.quotient_coords(&[1, 1, 0]), vec![0, 0]);
        assert_eq!(s.quotient_coords(&[1, 0, 1]), vec![1, 1]);
    }

    #[test]
    fn embedding_into_extension_preserves_rank() {
        let f = Fq::prime(3).unwrap();
        let f9 = Fq::quadratic(3).unwrap();
        let m = Mat::from_rows(f, vec![vec![1, 2, 0], vec![2, 1, 1]]);
        let me = m.embedded(f9).unwrap();
        assert_eq!(me.field(), f9);
        assert_eq!(m.rank(), me.rank());
        assert!(m.embedded(Fq::quadratic(5).unwrap()).is_err());
    }
}
