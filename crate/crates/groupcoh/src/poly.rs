//! Univariate polynomials over a finite field.
//!
//! Supplies exactly what the block and variety layers need: ring arithmetic,
//! division with remainder, extended gcd, deterministic Berlekamp
//! factorization into monic irreducibles, characteristic polynomials via
//! Hessenberg reduction, and minimal polynomials via Krylov spans. The small
//! field orders in scope (at most p^2 with p < 100) make the all-scalars
//! splitting loop in Berlekamp both fast and fully deterministic.

use crate::field::{Elt, Fq};
use crate::matrix::Mat;
use std::fmt;

/// A polynomial with ascending coefficients; no trailing zeros are stored,
/// and the zero polynomial has an empty coefficient vector.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Fq,
    coeffs: Vec<Elt>,
}

impl Poly {
    pub fn new(field: Fq, mut coeffs: Vec<Elt>) -> Poly {
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        debug_assert!(coeffs.iter().all(|&c| c < field.order()));
        Poly { field, coeffs }
    }

    pub fn zero(field: Fq) -> Poly {
        Poly { field, coeffs: Vec::new() }
    }

    pub fn one(field: Fq) -> Poly {
        Poly { field, coeffs: vec![1] }
    }

    pub fn constant(field: Fq, c: Elt) -> Poly {
        Poly::new(field, vec![c])
    }

    /// The monomial `c * x^k`.
    pub fn monomial(field: Fq, c: Elt, k: usize) -> Poly {
        if c == 0 {
            return Poly::zero(field);
        }
        let mut coeffs = vec![0; k + 1];
        coeffs[k] = c;
        Poly { field, coeffs }
    }

    pub fn x(field: Fq) -> Poly {
        Poly::monomial(field, 1, 1)
    }

    pub fn field(&self) -> Fq {
        self.field
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeff(&self, k: usize) -> Elt {
        self.coeffs.get(k).copied().unwrap_or(0)
    }

    pub fn coeffs(&self) -> &[Elt] {
        &self.coeffs
    }

    pub fn leading(&self) -> Elt {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.leading() == 1
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.add(self.coeff(k), other.coeff(k))).collect();
        Poly::new(f, coeffs)
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        let f = self.field;
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|k| f.sub(self.coeff(k), other.coeff(k))).collect();
        Poly::new(f, coeffs)
    }

    pub fn neg(&self) -> Poly {
        let f = self.field;
        Poly { field: f, coeffs: self.coeffs.iter().map(|&c| f.neg(c)).collect() }
    }

    pub fn scale(&self, c: Elt) -> Poly {
        let f = self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        let f = self.field;
        let mut coeffs = vec![0; self.coeffs.len() + other.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] = f.add(coeffs[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, coeffs)
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(self.field.inv(self.leading()))
    }

    /// Division with remainder: returns `(q, r)` with `self = q*d + r` and
    /// `deg r < deg d`.
    pub fn divmod(&self, d: &Poly) -> (Poly, Poly) {
        assert!(!d.is_zero(), "division by zero polynomial");
        let f = self.field;
        let dd = d.coeffs.len() - 1;
        if self.coeffs.len() < d.coeffs.len() {
            return (Poly::zero(f), self.clone());
        }
        let lead_inv = f.inv(d.leading());
        let mut rem = self.coeffs.clone();
        let mut quot = vec![0; rem.len() - dd];
        for k in (dd..rem.len()).rev() {
            let c = f.mul(rem[k], lead_inv);
            if c == 0 {
                continue;
            }
            quot[k - dd] = c;
            for (i, &dc) in d.coeffs.iter().enumerate() {
                rem[k - dd + i] = f.sub(rem[k - dd + i], f.mul(c, dc));
            }
        }
        (Poly::new(f, quot), Poly::new(f, rem))
    }

    pub fn rem(&self, d: &Poly) -> Poly {
        self.divmod(d).1
    }

    /// Exact quotient; panics if the division leaves a remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.divmod(d);
        assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, other: &Poly) -> Poly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// Extended gcd: returns `(g, u, v)` monic with `u*self + v*other = g`.
    pub fn extended_gcd(&self, other: &Poly) -> (Poly, Poly, Poly) {
        let f = self.field;
        let (mut r0, mut r1) = (self.clone(), other.clone());
        let (mut u0, mut u1) = (Poly::one(f), Poly::zero(f));
        let (mut v0, mut v1) = (Poly::zero(f), Poly::one(f));
        while !r1.is_zero() {
            let (q, r) = r0.divmod(&r1);
            let u = u0.sub(&q.mul(&u1));
            let v = v0.sub(&q.mul(&v1));
            r0 = r1;
            r1 = r;
            u0 = u1;
            u1 = u;
            v0 = v1;
            v1 = v;
        }
        if r0.is_zero() {
            return (r0, u0, v0);
        }
        let lead_inv = f.inv(r0.leading());
        (r0.scale(lead_inv), u0.scale(lead_inv), v0.scale(lead_inv))
    }

    pub fn derivative(&self) -> Poly {
        let f = self.field;
        if self.coeffs.len() <= 1 {
            return Poly::zero(f);
        }
        let coeffs = self.coeffs[1..]
            .iter()
            .enumerate()
            .map(|(i, &c)| f.mul(f.from_int(i as i64 + 1), c))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: Elt) -> Elt {
        let f = self.field;
        let mut acc = 0;
        for &c in self.coeffs.iter().rev() {
            acc = f.add(f.mul(acc, x), c);
        }
        acc
    }

    /// Evaluates the polynomial at a square matrix.
    pub fn eval_mat(&self, m: &Mat) -> Mat {
        assert!(m.is_square());
        let f = self.field;
        let n = m.rows();
        let mut acc = Mat::zero(f, n, n);
        for &c in self.coeffs.iter().rev() {
            acc = acc.mul(m);
            if c != 0 {
                acc = acc.add(&Mat::identity(f, n).scale(c));
            }
        }
        acc
    }

    /// `self^e mod m` by square and multiply.
    pub fn pow_mod(&self, mut e: u64, m: &Poly) -> Poly {
        let f = self.field;
        let mut acc = Poly::one(f).rem(m);
        let mut base = self.rem(m);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base).rem(m);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base).rem(m);
            }
        }
        acc
    }

    /// Least common multiple, monic.
    pub fn lcm(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero(self.field);
        }
        self.mul(other).div_exact(&self.gcd(other)).monic()
    }

    /// Factors into monic irreducibles with multiplicities, sorted by
    /// degree and then by coefficient sequence. The input must be non-zero.
    pub fn factor(&self) -> Vec<(Poly, usize)> {
        assert!(!self.is_zero(), "cannot factor the zero polynomial");
        let mut out: Vec<(Poly, usize)> = Vec::new();
        let mut stack = vec![(self.monic(), 1usize)];
        while let Some((g, mult)) = stack.pop() {
            let Some(deg) = g.degree() else { continue };
            if deg == 0 {
                continue;
            }
            let d = g.derivative();
            if d.is_zero() {
                // g(x) = h(x)^p with h obtained by inverting Frobenius on
                // the x^(p*i) coefficients.
                let f = self.field;
                let p = f.characteristic() as usize;
                let inv_frob_exp = f.order() as u64 / f.characteristic() as u64;
                let mut coeffs = vec![0; deg / p + 1];
                for (i, c) in coeffs.iter_mut().enumerate() {
                    *c = f.pow(g.coeff(p * i), inv_frob_exp);
                }
                stack.push((Poly::new(f, coeffs), mult * p));
                continue;
            }
            let sq = g.gcd(&d);
            if sq.degree() != Some(0) {
                stack.push((g.div_exact(&sq).monic(), mult));
                stack.push((sq, mult));
                continue;
            }
            for irr in berlekamp_squarefree(&g) {
                out.push((irr, mult));
            }
        }
        // Merge duplicates and order canonically.
        out.sort_by(|a, b| {
            a.0.coeffs.len().cmp(&b.0.coeffs.len()).then_with(|| a.0.coeffs.cmp(&b.0.coeffs))
        });
        let mut merged: Vec<(Poly, usize)> = Vec::new();
        for (p, m) in out {
            match merged.last_mut() {
                Some((q, n)) if *q == p => *n += m,
                _ => merged.push((p, m)),
            }
        }
        merged
    }

    pub fn is_irreducible(&self) -> bool {
        match self.degree() {
            None | Some(0) => false,
            Some(_) => {
                let f = self.factor();
                f.len() == 1 && f[0].1 == 1
            }
        }
    }
}

/// Berlekamp factorization of a monic squarefree polynomial. Deterministic:
/// the splitting scans all field scalars against a canonical kernel basis.
fn berlekamp_squarefree(g: &Poly) -> Vec<Poly> {
    let f = g.field();
    let q = f.order() as u64;
    let n = g.degree().expect("non-constant input");
    if n == 1 {
        return vec![g.clone()];
    }
    // Matrix of the q-power Frobenius on F_q[x]/(g), minus the identity.
    let x_q = Poly::x(f).pow_mod(q, g);
    let mut frob = Mat::zero(f, n, n);
    let mut power = Poly::one(f);
    for j in 0..n {
        for i in 0..n {
            frob.set(i, j, power.coeff(i));
        }
        power = power.mul(&x_q).rem(g);
    }
    let b = frob.sub(&Mat::identity(f, n));
    let kernel = b.nullspace();
    let r = kernel.cols();
    if r == 1 {
        return vec![g.clone()];
    }
    let mut factors = vec![g.clone()];
    for k in 0..r {
        if factors.len() == r {
            break;
        }
        let v = Poly::new(f, kernel.column(k));
        if v.degree() == Some(0) || v.is_zero() {
            continue;
        }
        let mut next = Vec::new();
        for u in factors {
            if u.degree() == Some(1) {
                next.push(u);
                continue;
            }
            let mut rem = u.clone();
            for c in f.elements() {
                if rem.degree() == Some(0) {
                    break;
                }
                let h = rem.gcd(&v.sub(&Poly::constant(f, c)));
                if h.degree().map_or(false, |d| d > 0) && h.degree() < rem.degree() {
                    rem = rem.div_exact(&h).monic();
                    next.push(h);
                }
            }
            if rem.degree().map_or(false, |d| d > 0) {
                next.push(rem);
            }
        }
        factors = next;
    }
    factors
}

/// Characteristic polynomial `det(x*I - m)` via Hessenberg reduction
/// followed by the leading-minor recurrence. Exact and O(n^3).
pub fn charpoly(m: &Mat) -> Poly {
    assert!(m.is_square());
    let f = m.field();
    let n = m.rows();
    let mut h = m.clone();
    // Similarity reduction to upper Hessenberg form.
    for j in 0..n.saturating_sub(2) {
        let Some(piv) = (j + 1..n).find(|&i| h.at(i, j) != 0) else {
            continue;
        };
        if piv != j + 1 {
            for k in 0..n {
                let (a, b) = (h.at(piv, k), h.at(j + 1, k));
                h.set(piv, k, b);
                h.set(j + 1, k, a);
            }
            for k in 0..n {
                let (a, b) = (h.at(k, piv), h.at(k, j + 1));
                h.set(k, piv, b);
                h.set(k, j + 1, a);
            }
        }
        let inv = f.inv(h.at(j + 1, j));
        for i in j + 2..n {
            let t = f.mul(h.at(i, j), inv);
            if t == 0 {
                continue;
            }
            for k in 0..n {
                let v = f.sub(h.at(i, k), f.mul(t, h.at(j + 1, k)));
                h.set(i, k, v);
            }
            for k in 0..n {
                let v = f.add(h.at(k, j + 1), f.mul(t, h.at(k, i)));
                h.set(k, j + 1, v);
            }
        }
    }
    // p_k = charpoly of the leading k x k block of the Hessenberg matrix.
    let mut ps = vec![Poly::one(f)];
    for k in 1..=n {
        let x_minus = Poly::new(f, vec![f.neg(h.at(k - 1, k - 1)), 1]);
        let mut pk = x_minus.mul(&ps[k - 1]);
        let mut subdiag = 1;
        for i in (1..k).rev() {
            subdiag = f.mul(subdiag, h.at(i, i - 1));
            if subdiag == 0 {
                break;
            }
            let c = f.mul(h.at(i - 1, k - 1), subdiag);
            pk = pk.sub(&ps[i - 1].scale(c));
        }
        ps.push(pk);
    }
    ps.pop().unwrap()
}

/// Minimal polynomial of a square matrix: the least common multiple of the
/// Krylov relations of the standard basis vectors.
pub fn min_poly(m: &Mat) -> Poly {
    assert!(m.is_square());
    let f = m.field();
    let n = m.rows();
    if n == 0 {
        return Poly::one(f);
    }
    let mut result = Poly::one(f);
    for start in 0..n {
        if result.degree() == Some(n) {
            break;
        }
        let mut v = vec![0; n];
        v[start] = 1;
        // Krylov matrix columns v, m v, m^2 v, ... until dependence.
        let mut krylov: Vec<Vec<Elt>> = vec![v.clone()];
        loop {
            let next = m.apply(krylov.last().unwrap());
            let cols = krylov.len();
            let mut sys = Mat::zero(f, n, cols);
            for (j, col) in krylov.iter().enumerate() {
                for i in 0..n {
                    sys.set(i, j, col[i]);
                }
            }
            let rhs = Mat::column_vector(f, &next);
            if let Some(sol) = sys.solve(&rhs) {
                // m^cols v = sum sol_j m^j v, so the local minimal
                // polynomial is x^cols - sum sol_j x^j.
                let mut coeffs = vec![0; cols + 1];
                for j in 0..cols {
                    coeffs[j] = f.neg(sol.at(j, 0));
                }
                coeffs[cols] = 1;
                result = result.lcm(&Poly::new(f, coeffs));
                break;
            }
            krylov.push(next);
        }
    }
    result
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let cs = self.field.format_elt(c);
            match (k, c) {
                (0, _) => write!(f, "{cs}")?,
                (1, 1) => write!(f, "x")?,
                (1, _) => write!(f, "{cs}*x")?,
                (_, 1) => write!(f, "x^{k}")?,
                _ => write!(f, "{cs}*x^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}
