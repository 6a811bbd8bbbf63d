//! The built-in group catalog and its text format.
//!
//! The catalog is a single text file shipped with the repository.  The
//! first line is the exact header `groupcoh catalog format 1`; lines
//! starting with `#` are comments; every other line is one entry of the
//! form `id | degree | expected order | generators`, generators in cycle
//! notation separated by semicolons (empty for the trivial group).  The
//! expected order field may be empty, otherwise building the group checks
//! it.  Entries are sorted by order, then by id, and that file order is
//! the canonical report order everywhere.
//!
//! The built-in file covers every order from 1 to 100 (the full cyclic
//! series), the dihedral series D6 through D100 named by group order, and
//! the named fixtures S3, A4, S4, A5, Q8, C2xC2, C2xC2xC2, C3xC3, C2xA4
//! and SL23.

use std::collections::HashSet;

use crate::error::{Error, Result};
use crate::group::PermGroup;

const BUILTIN: &str = include_str!("../../../data/catalog.txt");
const HEADER: &str = "groupcoh catalog format 1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: String,
    pub degree: usize,
    pub expected_order: Option<u64>,
    pub generators: Vec<String>,
}

impl CatalogEntry {
    /// Builds the group, checking the expected order when present.
    pub fn group(&self) -> Result<PermGroup> {
        let gens: Vec<&str> = self.generators.iter().map(String::as_str).collect();
        let group = PermGroup::parse(self.degree, &gens)
            .map_err(|e| Error::input(format!("catalog entry {}: {e}", self.id)))?;
        if let Some(n) = self.expected_order {
            if group.order() != n {
                return Err(Error::input(format!(
                    "catalog entry {} generates a group of order {}, expected {n}",
                    self.id,
                    group.order()
                )));
            }
        }
        Ok(group)
    }
}

pub fn parse_catalog(text: &str) -> Result<Vec<CatalogEntry>> {
    let mut lines = text.lines().map(str::trim).filter(|l| !l.is_empty());
    if lines.next() != Some(HEADER) {
        return Err(Error::input(format!("the first line must be `{HEADER}`")));
    }
    let mut entries = Vec::new();
    let mut seen = HashSet::new();
    for line in lines {
        if line.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('|').map(str::trim).collect();
        if fields.len() != 4 {
            return Err(Error::input(format!(
                "catalog line `{line}` does not have four `|` separated fields"
            )));
        }
        let id = fields[0].to_string();
        if id.is_empty() || !seen.insert(id.clone()) {
            return Err(Error::input(format!("missing or repeated catalog id `{id}`")));
        }
        let degree: usize = fields[1]
            .parse()
            .map_err(|_| Error::input(format!("bad degree in catalog line `{line}`")))?;
        let expected_order = if fields[2].is_empty() {
            None
        } else {
            Some(fields[2].parse().map_err(|_| {
                Error::input(format!("bad expected order in catalog line `{line}`"))
            })?)
        };
        let generators: Vec<String> = if fields[3].is_empty() {
            Vec::new()
        } else {
            fields[3].split(';').map(|g| g.trim().to_string()).collect()
        };
        entries.push(CatalogEntry { id, degree, expected_order, generators });
    }
    Ok(entries)
}

/// The catalog shipped with the repository.
pub fn builtin() -> Result<Vec<CatalogEntry>> {
    parse_catalog(BUILTIN)
}

pub fn find<'a>(entries: &'a [CatalogEntry], id: &str) -> Result<&'a CatalogEntry> {
    entries
        .iter()
        .find(|e| e.id == id)
        .ok_or_else(|| Error::input(format!("no catalog entry is named `{id}`")))
}
