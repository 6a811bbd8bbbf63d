//! Arithmetic in the prime field `F_p` and its quadratic extension `F_{p^2}`.
//!
//! Field elements are packed into a `u32`: an element `a + b*t` of
//! `F_{p^2} = F_p[t]/(t^2 + c1*t + c0)` is stored as `a + b*p` with
//! `0 <= a, b < p`; prime-field elements are the values below `p`. This keeps
//! matrices as flat `Vec<u32>` buffers regardless of the extension degree.
//!
//! The quadratic modulus is the lexicographically least irreducible
//! `t^2 + c1*t + c0` (ordered by `(c1, c0)`). That rule yields `t^2 + t + 1`
//! for `p = 2` and `t^2 + 1` for `p ≡ 3 (mod 4)`, and fixes a deterministic
//! choice for the remaining primes.

use crate::error::{Error, Result};
use std::fmt;

/// A field element, packed as documented in the module header.
pub type Elt = u32;

/// A finite field of order `p` or `p^2` with all arithmetic by value.
///
/// The struct is small and `Copy`; matrices and modules store it inline so
/// that mixed-field operations can be rejected by a cheap equality check.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Fq {
    p: u32,
    e: u32,
    /// Constant coefficient of the quadratic modulus (0 when `e == 1`).
    c0: u32,
    /// Linear coefficient of the quadratic modulus (0 when `e == 1`).
    c1: u32,
}

fn is_prime(n: u32) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u32;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

impl Fq {
    /// The prime field `F_p`.
    pub fn prime(p: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        Ok(Fq { p, e: 1, c0: 0, c1: 0 })
    }

    /// The quadratic extension `F_{p^2}` with the canonical modulus.
    pub fn quadratic(p: u32) -> Result<Fq> {
        if !is_prime(p) {
            return Err(Error::input(format!("{p} is not prime")));
        }
        for c1 in 0..p {
            for c0 in 0..p {
                if quadratic_is_irreducible(p, c1, c0) {
                    return Ok(Fq { p, e: 2, c0, c1 });
                }
            }
        }
        unreachable!("irreducible quadratics exist over every prime field")
    }

    /// `F_p` or `F_{p^2}` according to `ext` in `{1, 2}`.
    pub fn with_extension(p: u32, ext: u32) -> Result<Fq> {
        match ext {
            1 => Fq::prime(p),
            2 => Fq::quadratic(p),
            _ => Err(Error::input(format!(
                "field extension degree must be 1 or 2, got {ext}"
            ))),
        }
    }

    pub fn characteristic(&self) -> u32 {
        self.p
    }

    pub fn extension_degree(&self) -> u32 {
        self.e
    }

    /// Number of elements, `p^e`.
    pub fn order(&self) -> u32 {
        if self.e == 1 {
            self.p
        } else {
            self.p * self.p
        }
    }

    /// Coefficients `(c1, c0)` of the quadratic modulus `t^2 + c1*t + c0`.
    pub fn modulus(&self) -> Option<(u32, u32)> {
        (self.e == 2).then_some((self.c1, self.c0))
    }

    /// The prime subfield, `F_p`.
    pub fn prime_subfield(&self) -> Fq {
        Fq { p: self.p, e: 1, c0: 0, c1: 0 }
    }

    pub fn zero(&self) -> Elt {
        0
    }

    pub fn one(&self) -> Elt {
        1
    }

    /// Canonical image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> Elt {
        let p = self.p as i64;
        (n.rem_euclid(p)) as Elt
    }

    /// Builds `a + b*t`; both coordinates are reduced mod `p`.
    pub fn from_coords(&self, a: u32, b: u32) -> Elt {
        debug_assert!(self.e == 2 || b % self.p == 0);
        (a % self.p) + (b % self.p) * self.p
    }

    /// Coordinates `(a, b)` of `x = a + b*t`.
    pub fn coords(&self, x: Elt) -> (u32, u32) {
        (x % self.p, x / self.p)
    }

    /// Whether `x` lies in the prime subfield.
    pub fn in_prime_subfield(&self, x: Elt) -> bool {
        x < self.p
    }

    pub fn add(&self, x: Elt, y: Elt) -> Elt {
        let (a, b) = self.coords(x);
        let (c, d) = self.coords(y);
        (a + c) % self.p + ((b + d) % self.p) * self.p
    }

    pub fn neg(&self, x: Elt) -> Elt {
        let (a, b) = self.coords(x);
        (self.p - a) % self.p + ((self.p - b) % self.p) * self.p
    }

    pub fn sub(&self, x: Elt, y: Elt) -> Elt {
        self.add(x, self.neg(y))
    }

    pub fn mul(&self, x: Elt, y: Elt) -> Elt {
        let p = self.p as u64;
        let (a, b) = self.coords(x);
        let (c, d) = self.coords(y);
        let (a, b, c, d) = (a as u64, b as u64, c as u64, d as u64);
        if self.e == 1 {
            return ((a * c) % p) as Elt;
        }
        // (a + b t)(c + d t) with t^2 = -c1 t - c0.
        let (c0, c1) = (self.c0 as u64, self.c1 as u64);
        let bd = (b * d) % p;
        let lo = (a * c + bd * (p - c0)) % p;
        let hi = (a * d + b * c + bd * (p - c1)) % p;
        (lo + hi * p) as Elt
    }

    pub fn inv(&self, x: Elt) -> Elt {
        assert!(x != 0, "division by zero in F{}", self.order());
        if x < self.p {
            // Prime-subfield elements invert inside the subfield.
            return self.prime_inverse(x);
        }
        // Conjugate over F_p: for x = a + b t the conjugate is
        // (a - b c1) - b t, and x times its conjugate is the norm
        // a^2 - a b c1 + c0 b^2, an element of F_p.
        let (a, b) = self.coords(x);
        let p = self.p as u64;
        let (a64, b64) = (a as u64, b as u64);
        let norm =
            ((a64 * a64) % p + (a64 * b64 % p) * (p - self.c1 as u64) % p + (b64 * b64 % p) * (self.c0 as u64)) % p;
        let conj_a = (a64 + b64 * (p - self.c1 as u64)) % p;
        let conj = (conj_a as u32) + ((self.p - b) % self.p) * self.p;
        let ninv = self.prime_inverse(norm as u32);
        self.mul(conj, ninv)
    }

    fn prime_inverse(&self, a: u32) -> Elt {
        assert!(a != 0, "division by zero in F{}", self.p);
        // Extended Euclid on (a, p).
        let (mut r0, mut r1) = (a as i64, self.p as i64);
        let (mut s0, mut s1) = (1i64, 0i64);
        while r1 != 0 {
            let q = r0 / r1;
            (r0, r1) = (r1, r0 - q * r1);
            (s0, s1) = (s1, s0 - q * s1);
        }
        debug_assert_eq!(r0, 1);
        (s0.rem_euclid(self.p as i64)) as Elt
    }

    pub fn div(&self, x: Elt, y: Elt) -> Elt {
        self.mul(x, self.inv(y))
    }

    pub fn pow(&self, x: Elt, n: u64) -> Elt {
        let mut base = x;
        let mut n = n;
        let mut acc = self.one();
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }

    /// The Frobenius `x -> x^p`; the identity on the prime subfield.
    pub fn frobenius(&self, x: Elt) -> Elt {
        self.pow(x, self.p as u64)
    }

    /// All field elements in packed-value order (deterministic).
    pub fn elements(&self) -> impl Iterator<Item = Elt> {
        0..self.order()
    }

    /// Renders an element as `a` or `a+b*t`.
    pub fn format_elt(&self, x: Elt) -> String {
        let (a, b) = self.coords(x);
        if b == 0 {
            format!("{a}")
        } else {
            format!("{a}+{b}t")
        }
    }
}

fn quadratic_is_irreducible(p: u32, c1: u32, c0: u32) -> bool {
    // Degree two: irreducible over F_p exactly when it has no root in F_p.
    let p64 = p as u64;
    (0..p as u64).all(|x| (x * x + c1 as u64 * x + c0 as u64) % p64 != 0)
}

impl fmt::Display for Fq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}", self.order())
    }
}
