//! Permutations of `{1, ..., n}` with cycle-notation input and output.
//!
//! Composition is function composition: `(a.compose(&b))` applies `b` first
//! and then `a`. Cycle strings multiply left to right under that convention,
//! so `"(1 2)(2 3)"` parses to the 3-cycle `(1 2 3)`. Points are 1-based in
//! notation and 0-based in the API.

use crate::error::{Error, Result};
use std::fmt;

/// A permutation stored as its image table: point `i` maps to `images[i]`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Perm {
    images: Vec<usize>,
}

impl Perm {
    pub fn identity(degree: usize) -> Perm {
        Perm { images: (0..degree).collect() }
    }

    /// Builds a permutation from an image table, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Perm> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::input(format!(
                    "image table {images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[img] = true;
        }
        Ok(Perm { images })
    }

    /// Parses cycle notation over 1-based points, e.g. `"(1 2 3)(4 5)"`.
    /// Adjacent cycles need not be disjoint; they multiply left to right,
    /// with the rightmost cycle applied first. `"()"` is the identity.
    pub fn parse(s: &str, degree: usize) -> Result<Perm> {
        let s = s.trim();
        let mut cycles: Vec<Vec<usize>> = Vec::new();
        let mut rest = s;
        while !rest.is_empty() {
            let Some(open) = rest.find('(') else {
                return Err(Error::input(format!("expected '(' in permutation {s:?}")));
            };
            if !rest[..open].trim().is_empty() {
                return Err(Error::input(format!("stray text in permutation {s:?}")));
            }
            let Some(close) = rest.find(')') else {
                return Err(Error::input(format!("unclosed cycle in permutation {s:?}")));
            };
            let body = &rest[open + 1..close];
            let mut cycle = Vec::new();
            for token in body.split(|c: char| c == ',' || c.is_whitespace()) {
                if token.is_empty() {
                    continue;
                }
                let point: usize = token
                    .parse()
                    .map_err(|_| Error::input(format!("bad point {token:?} in {s:?}")))?;
                if point == 0 || point > degree {
                    return Err(Error::input(format!(
                        "point {point} out of range 1..={degree} in {s:?}"
                    )));
                }
                if cycle.contains(&(point - 1)) {
                    return Err(Error::input(format!(
                        "point {point} repeated within one cycle in {s:?}"
                    )));
                }
                cycle.push(point - 1);
            }
            if !cycle.is_empty() {
                cycles.push(cycle);
            }
            rest = rest[close + 1..].trim_start();
        }
        let mut result = Perm::identity(degree);
        for cycle in cycles {
            let mut images: Vec<usize> = (0..degree).collect();
            for w in cycle.windows(2) {
                images[w[0]] = w[1];
            }
            if cycle.len() > 1 {
                images[*cycle.last().unwrap()] = cycle[0];
            }
            result = result.compose(&Perm { images });
        }
        Ok(result)
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    #[inline]
    pub fn image(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &img)| i == img)
    }

    /// Function composition: apply `other`, then `self`.
    pub fn compose(&self, other: &Perm) -> Perm {
        assert_eq!(self.degree(), other.degree(), "degree mismatch");
        Perm { images: other.images.iter().map(|&i| self.images[i]).collect() }
    }

    pub fn inverse(&self) -> Perm {
        let mut images = vec![0; self.degree()];
        for (i, &img) in self.images.iter().enumerate() {
            images[img] = i;
        }
        Perm { images }
    }

    pub fn pow(&self, e: i64) -> Perm {
        let base = if e < 0 { self.inverse() } else { self.clone() };
        let mut e = e.unsigned_abs();
        let mut acc = Perm::identity(self.degree());
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.compose(&b);
            }
            e >>= 1;
            if e > 0 {
                b = b.compose(&b);
            }
        }
        acc
    }

    /// Non-trivial cycles, each starting at its smallest point, ordered by
    /// smallest point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.degree();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] || self.images[start] == start {
                seen[start] = true;
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            out.push(cycle);
        }
        out
    }

    pub fn order(&self) -> u64 {
        self.cycles()
            .iter()
            .map(|c| c.len() as u64)
            .fold(1, lcm)
    }
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for cycle in cycles {
            write!(f, "(")?;
            for (k, &pt) in cycle.iter().enumerate() {
                if k > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", pt + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compose_applies_right_factor_first() {
        let a = Perm::parse("(1 2)", 3).unwrap();
        let b = Perm::parse("(2 3)", 3).unwrap();
        let ab = a.compose(&b);
        // 1 -> b -> 1 -> a -> 2, 2 -> 3 -> 3, 3 -> 2 -> 1.
        assert_eq!(ab.image(0), 1);
        assert_eq!(ab.image(1), 2);
        assert_eq!(ab.image(2), 0);
    }

    #[test]
    fn cycle_string_multiplies_left_to_right() {
        let p = Perm::parse("(1 2)(2 3)", 3).unwrap();
        assert_eq!(p, Perm::parse("(1 2 3)", 3).unwrap());
        assert_eq!(p.to_string(), "(1 2 3)");
    }

    #[test]
    fn parse_and_format_round_trip() {
        for s in ["(1 2 3)(4 5)", "(1 4)(2 5)(3 6)", "(2 7 5)", "()"] {
            let p = Perm::parse(s, 7).unwrap();
            assert_eq!(Perm::parse(&p.to_string(), 7).unwrap(), p);
        }
        assert_eq!(Perm::identity(5).to_string(), "()");
        // Comma separators are accepted.
        assert_eq!(
            Perm::parse("(1,2,3)", 3).unwrap(),
            Perm::parse("(1 2 3)", 3).unwrap()
        );
    }

    #[test]
    fn parse_rejects_bad_input() {
        assert!(Perm::parse("(0 1)", 3).is_err(), "points are 1-based");
        assert!(Perm::parse("(1 4)", 3).is_err(), "point beyond degree");
        assert!(Perm::parse("(1 2 1)", 3).is_err(), "repeat within a cycle");
        assert!(Perm::parse("(1 2", 3).is_err(), "unclosed cycle");
        assert!(Perm::parse("x(1 2)", 3).is_err(), "stray text");
        assert!(Perm::from_images(vec![0, 0]).is_err(), "not injective");
    }

    #[test]
    fn inverse_and_order() {
        let p = Perm::parse("(1 2 3)(4 5)", 5).unwrap();
        assert!(p.compose(&p.inverse()).is_identity());
        assert!(p.inverse().compose(&p).is_identity());
        assert_eq!(p.order(), 6);
        assert_eq!(Perm::identity(4).order(), 1);
        assert_eq!(p.pow(6), Perm::identity(5));
        assert_eq!(p.pow(-1), p.inverse());
        assert_eq!(p.pow(5), p.inverse());
    }

    #[test]
    fn cycles_are_canonical() {
        let p = Perm::parse("(4 5)(1 3 2)", 5).unwrap();
        assert_eq!(p.cycles(), vec![vec![0, 2, 1], vec![3, 4]]);
        assert_eq!(p.to_string(), "(1 3 2)(4 5)");
    }
}
