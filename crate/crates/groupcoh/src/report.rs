//! Deterministic plain-text reports.
//!
//! A report is a preamble of key/value rows followed by titled sections
//! of key/value rows.  Rendering is purely a function of that content, so
//! any two runs that compute the same values emit byte-identical text.
//! The structured format is line oriented (`key: value` under `[title]`
//! headers, first line `groupcoh report format 1`) and is the stable
//! schema; the table format carries the same rows with aligned columns
//! for reading.
//!
//! Every section that states a numeric cohomological claim carries the
//! window, field, and scan parameters it was computed over, and nucleus
//! sections record the convention that the trivial subgroup is a node of
//! the poset.

use std::fmt::{Display, Write as _};

use crate::algebra::GroupAlgebra;
use crate::blocks::{block_of, BlockDecomposition};
use crate::error::{Error, Result};
use crate::ext::{CohomologyWindow, GapReport};
use crate::field::Fq;
use crate::group::PermGroup;
use crate::nucleus::{ConjectureStatus, NucleusReport};
use crate::ring::SopCertificate;

pub const REPORT_HEADER: &str = "groupcoh report format 1";
pub const TOOL: &str = concat!("groupcoh ", env!("CARGO_PKG_VERSION"));
pub const ORIGIN_CONVENTION: &str =
    "the trivial subgroup is a poset node; it joins the nucleus exactly when the group is not p-nilpotent";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Table,
    Structured,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Format> {
        match s {
            "table" => Ok(Format::Table),
            "structured" => Ok(Format::Structured),
            _ => Err(Error::input(format!(
                "unknown format `{s}`; use `table` or `structured`"
            ))),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Section {
    pub title: String,
    pub rows: Vec<(String, String)>,
}

impl Section {
    pub fn new(title: impl Into<String>) -> Section {
        Section { title: title.into(), rows: Vec::new() }
    }

    pub fn row(&mut self, key: impl Into<String>, value: impl Display) {
        self.rows.push((key.into(), value.to_string()));
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Report {
    preamble: Vec<(String, String)>,
    sections: Vec<Section>,
}

impl Report {
    /// An empty report carrying only the tool version.
    pub fn new() -> Report {
        let mut r = Report::default();
        r.meta("tool", TOOL);
        r
    }

    pub fn meta(&mut self, key: impl Into<String>, value: impl Display) {
        self.preamble.push((key.into(), value.to_string()));
    }

    pub fn push(&mut self, section: Section) {
        self.sections.push(section);
    }

    pub fn sections(&self) -> &[Section] {
        &self.sections
    }

    pub fn render(&self, format: Format) -> String {
        let mut out = String::new();
        out.push_str(REPORT_HEADER);
        out.push('\n');
        match format {
            Format::Structured => {
                for (k, v) in &self.preamble {
                    let _ = writeln!(out, "{k}: {v}");
                }
                for s in &self.sections {
                    let _ = writeln!(out, "\n[{}]", s.title);
                    for (k, v) in &s.rows {
                        let _ = writeln!(out, "{k}: {v}");
                    }
                }
            }
            Format::Table => {
                render_aligned(&mut out, &self.preamble);
                for s in &self.sections {
                    let _ = writeln!(out, "\n-- {} --", s.title);
                    render_aligned(&mut out, &s.rows);
                }
            }
        }
        out
    }
}

fn render_aligned(out: &mut String, rows: &[(String, String)]) {
    let width = rows.iter().map(|(k, _)| k.len()).max().unwrap_or(0);
    for (k, v) in rows {
        let _ = writeln!(out, "{k:width$}  {v}");
    }
}

/// Comma separated rendering of a list, `(none)` when empty.
pub fn list<T: Display>(items: impl IntoIterator<Item = T>) -> String {
    let parts: Vec<String> = items.into_iter().map(|x| x.to_string()).collect();
    if parts.is_empty() {
        "(none)".to_string()
    } else {
        parts.join(", ")
    }
}

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

/// The primes dividing `order`, ascending.
pub fn primes_dividing(order: u64) -> Vec<u32> {
    let mut primes = Vec::new();
    let mut n = order;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            primes.push(d as u32);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        primes.push(n as u32);
    }
    primes
}

pub fn group_section(id: &str, group: &PermGroup) -> Section {
    let mut s = Section::new("group");
    s.row("id", id);
    s.row("order", group.order());
    s.row("degree", group.degree());
    let classes = group.conjugacy_classes();
    s.row("conjugacy classes", classes.len());
    s.row("class sizes", list(classes.iter().map(Vec::len)));
    for p in primes_dividing(group.order()) {
        let sylow = group.sylow(p).map(|h| h.order()).unwrap_or(0);
        s.row(format!("sylow {p} order"), sylow);
        s.row(format!("{p}-nilpotent"), yes_no(group.is_p_nilpotent(p)));
    }
    s
}

pub fn blocks_section(alg: &GroupAlgebra, blocks: &BlockDecomposition) -> Result<Section> {
    let mut s = Section::new("blocks");
    s.row("field", alg.field());
    s.row("count", blocks.count());
    s.row("principal", blocks.principal_index());
    let mut members = vec![Vec::new(); blocks.count()];
    for i in 0..alg.simple_count() {
        let b = block_of(alg, blocks, alg.simple(i))?
            .ok_or_else(|| Error::internal("a simple module meets two blocks"))?;
        members[b].push(i);
    }
    for (b, simples) in members.iter().enumerate() {
        let dims = list(simples.iter().map(|&i| alg.simple(i).dim()));
        s.row(format!("block {b} simple dims"), dims);
    }
    Ok(s)
}

pub fn window_section(module_name: &str, field: Fq, window: &CohomologyWindow) -> Section {
    let mut s = Section::new("tate cohomology");
    s.row("module", module_name);
    s.row("field", field);
    s.row("window", format!("[{}, {}]", window.lo(), window.hi()));
    for (n, dim) in window.entries() {
        s.row(format!("dim({n})"), dim);
    }
    s
}

pub fn gap_section(report: &GapReport, threshold: usize) -> Section {
    let mut s = Section::new("gap scan");
    s.row("threshold", threshold);
    s.row(
        "zero runs",
        list(report.runs.iter().map(|(start, len)| format!("{start}+{len}"))),
    );
    s.row("all zero", yes_no(report.all_zero));
    s.row("violation", yes_no(report.violation));
    s
}

pub fn sop_section(cert: &SopCertificate, base: Fq) -> Section {
    let mut s = Section::new("parameter system");
    s.row("field", base);
    s.row("seed", cert.seed);
    s.row("rank", cert.rank);
    s.row("degrees", list(cert.degrees.iter()));
    s.row("bound", cert.n_upper);
    s.row(
        "scanned fields",
        format!("{} and {}", base.prime_subfield(), quadratic_of(base)),
    );
    for (i, scan) in cert.scans.iter().enumerate() {
        s.row(
            format!("class {i} scan"),
            format!(
                "rank {}, {} prime points, {} extension points, zero locus trivial: {}",
                scan.rank,
                scan.points[0],
                scan.points[1],
                yes_no(scan.zero_locus_trivial)
            ),
        );
    }
    s
}

fn quadratic_of(f: Fq) -> Fq {
    Fq::quadratic(f.characteristic()).expect("quadratic extension of a valid prime")
}

pub fn nucleus_section(report: &NucleusReport) -> Section {
    let mut s = Section::new("nucleus");
    s.row("prime", report.poset.prime);
    s.row("convention", ORIGIN_CONVENTION);
    s.row("poset nodes", report.poset.nodes.len());
    for (i, node) in report.poset.nodes.iter().enumerate() {
        s.row(
            format!("node {i}"),
            format!(
                "rank {}, {} conjugates, centralizer p-nilpotent: {}",
                node.rank,
                node.conjugates,
                yes_no(node.centralizer_p_nilpotent)
            ),
        );
    }
    s.row("nucleus nodes", list(report.nucleus_nodes.iter()));
    s.row("origin in nucleus", yes_no(report.zero_in_nucleus));
    s.row("classification", report.classification);
    s
}

pub fn classify_section(id: &str, status: &ConjectureStatus) -> Section {
    let mut s = Section::new("classification");
    s.row("group", id);
    s.row("prime", status.prime);
    s.row(
        "order-p centralizers all p-nilpotent",
        yes_no(status.order_p_centralizers_p_nilpotent),
    );
    for (i, verdict) in status.verdicts.iter().enumerate() {
        s.row(format!("C{}", i + 1), verdict);
    }
    s.row("singularity category", &status.singularity_note);
    s
}
