//! Module fixtures: a versioned text format for action matrices, a small
//! vocabulary of named standard modules, and seeded random modules.
//!
//! The text format is line based.  The first line is the exact header
//! `groupcoh module format 1`; then `field q` (q a prime or the square of
//! a prime), `dim d`, `generators g`, and for each generator `i` in
//! `1..=g` a line `generator i` followed by `d` rows of `d` entries.
//! Entries are the canonical element encodings `0..q`; values below the
//! characteristic are the prime subfield.  Blank lines are ignored, so
//! matrices may be spaced out for readability.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GroupAlgebra;
use crate::error::{Error, Result};
use crate::field::{Elt, Fq};
use crate::matrix::Mat;
use crate::module::Module;
use crate::resolution::omega;

const HEADER: &str = "groupcoh module format 1";
const RANDOM_ATTEMPTS: usize = 64;

/// The field of the given order: a prime gives `F_p`, the square of a
/// prime gives `F_{p^2}`.
pub fn field_of_order(q: u32) -> Result<Fq> {
    if let Ok(f) = Fq::prime(q) {
        return Ok(f);
    }
    let root = (q as f64).sqrt().round() as u32;
    if root * root == q {
        if let Ok(f) = Fq::quadratic(root) {
            return Ok(f);
        }
    }
    Err(Error::input(format!(
        "{q} is not a prime or the square of a prime, so there is no such field"
    )))
}

pub fn render_module(m: &Module) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    out.push_str(&format!("field {}\n", m.field().order()));
    out.push_str(&format!("dim {}\n", m.dim()));
    out.push_str(&format!("generators {}\n", m.generator_count()));
    for i in 0..m.generator_count() {
        out.push_str(&format!("generator {}\n", i + 1));
        let g = m.generator_action(i);
        for r in 0..m.dim() {
            let row: Vec<String> = (0..m.dim()).map(|c| g.at(r, c).to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
    }
    out
}

pub fn parse_module(text: &str) -> Result<Module> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    let mut next = |what: &str| {
        lines
            .next()
            .ok_or_else(|| Error::input(format!("module text ends before the {what}")))
    };
    if next("header")? != HEADER {
        return Err(Error::input(format!("the first line must be `{HEADER}`")));
    }
    let field_order: u32 = keyed_value(next("field line")?, "field")?;
    let field = field_of_order(field_order)?;
    let dim: usize = keyed_value(next("dim line")?, "dim")?;
    let count: usize = keyed_value(next("generators line")?, "generators")?;
    let mut gens = Vec::with_capacity(count);
    for i in 1..=count {
        let label: usize = keyed_value(next("generator label")?, "generator")?;
        if label != i {
            return Err(Error::input(format!(
                "expected `generator {i}`, found `generator {label}`"
            )));
        }
        let mut entries = Vec::with_capacity(dim * dim);
        for r in 0..dim {
            let row = next("matrix row")?;
            let cells: Vec<&str> = row.split_whitespace().collect();
            if cells.len() != dim {
                return Err(Error::input(format!(
                    "row {} of generator {i} has {} entries, expected {dim}",
                    r + 1,
                    cells.len()
                )));
            }
            for cell in cells {
                let value: Elt = cell
                    .parse()
                    .map_err(|_| Error::input(format!("bad matrix entry `{cell}`")))?;
                if value >= field_order {
                    return Err(Error::input(format!(
                        "entry {value} is out of range for a field of order {field_order}"
                    )));
                }
                entries.push(value);
            }
        }
        gens.push(Mat::from_fn(field, dim, dim, |r, c| entries[r * dim + c]));
    }
    if lines.next().is_some() {
        return Err(Error::input("trailing text after the last generator matrix"));
    }
    Module::new(field, dim, gens)
}

fn keyed_value<T: std::str::FromStr>(line: &str, key: &str) -> Result<T> {
    let rest = line
        .strip_prefix(key)
        .ok_or_else(|| Error::input(format!("expected a `{key} ...` line, found `{line}`")))?;
    rest.trim()
        .parse()
        .map_err(|_| Error::input(format!("bad value in `{line}`")))
}

/// Builds one of the named standard modules over `alg`.
///
/// Names: `k` (trivial), `regular`, `permutation` (natural points),
/// `omega:n` (n-th syzygy of k, n any integer), `cosets:p` (permutation
/// module on the cosets of a Sylow p-subgroup), `simple:i`, `pim:i`,
/// `random:d` (seeded random module of dimension at most d).
pub fn standard_module(
    alg: &GroupAlgebra,
    name: &str,
    seed: u64,
    size_cap: u64,
) -> Result<Module> {
    let field = alg.field();
    let group = alg.group();
    let (head, tail) = match name.split_once(':') {
        Some((h, t)) => (h, Some(t)),
        None => (name, None),
    };
    let arg = |what: &str| {
        tail.ok_or_else(|| Error::input(format!("module name `{head}` needs `:{what}`")))
    };
    match head {
        "k" => Ok(Module::trivial(field, group)),
        "regular" => Ok(Module::regular(field, group)),
        "permutation" => Ok(Module::permutation(field, group)),
        "omega" => {
            let n: i64 = parse_arg(arg("n")?, name)?;
            omega(alg, &Module::trivial(field, group), n, seed, size_cap)
        }
        "cosets" => {
            let p: u32 = parse_arg(arg("p")?, name)?;
            let sylow = group.sylow(p)?;
            Module::trivial(field, &sylow).induce(group, &sylow)
        }
        "simple" => {
            let i: usize = parse_arg(arg("i")?, name)?;
            if i >= alg.simple_count() {
                return Err(Error::input(format!(
                    "the algebra has {} simples, none is numbered {i}",
                    alg.simple_count()
                )));
            }
            Ok(alg.simple(i).clone())
        }
        "pim" => {
            let i: usize = parse_arg(arg("i")?, name)?;
            if i >= alg.simple_count() {
                return Err(Error::input(format!(
                    "the algebra has {} projective indecomposables, none is numbered {i}",
                    alg.simple_count()
                )));
            }
            Ok(alg.pim(i).module.clone())
        }
        "random" => {
            let d: usize = parse_arg(arg("d")?, name)?;
            random_module(alg, d, seed)
        }
        _ => Err(Error::input(format!(
            "unknown module name `{name}`; use k, regular, permutation, omega:n, \
             cosets:p, simple:i, pim:i, or random:d"
        ))),
    }
}

fn parse_arg<T: std::str::FromStr>(text: &str, name: &str) -> Result<T> {
    text.parse()
        .map_err(|_| Error::input(format!("bad argument in module name `{name}`")))
}

/// A nonzero module of dimension at most `max_dim`, found by quotienting
/// the regular module by cyclic submodules spun from seeded random
/// vectors.  Deterministic in the seed.
pub fn random_module(alg: &GroupAlgebra, max_dim: usize, seed: u64) -> Result<Module> {
    let field = alg.field();
    let regular = Module::regular(field, alg.group());
    let order = u64::from(field.order());
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..RANDOM_ATTEMPTS {
        let v: Vec<Elt> = (0..regular.dim())
            .map(|_| rng.gen_range(0..order) as Elt)
            .collect();
        if v.iter().all(|&x| x == 0) {
            continue;
        }
        let spun = regular.spin(&[v]);
        if spun.dim() == regular.dim() {
            continue;
        }
        let (quotient, _) = regular.quotient(&spun);
        if quotient.dim() >= 1 && quotient.dim() <= max_dim {
            return Ok(quotient);
        }
    }
    Err(Error::input(format!(
        "no random module of dimension at most {max_dim} arose from seed {seed}; \
         try another seed"
    )))
}
