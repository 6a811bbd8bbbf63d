//! End-to-end acceptance battery.  Nine exact checks run in sequence:
//! Tate duality, the p-group dimension identity, block vanishing, gap
//! scans under the certified parameter bound, nucleus consistency across
//! the whole catalog, frozen classification reports, Shapiro's lemma,
//! support containment for cohomologically trivial modules, and seed
//! determinism.  All assertions are exact; there are no tolerances.
//!
//! The target runs without the libtest harness so that it can print one
//! pass or FAIL line per criterion; it exits nonzero if any criterion
//! fails.  The frozen classification files under `tests/golden/` are
//! regenerated by running with `UPDATE_GOLDEN=1`.

use std::panic::{self, AssertUnwindSafe};
use std::time::Instant;

use groupcoh::algebra::GroupAlgebra;
use groupcoh::blocks::{block_decomposition, block_of};
use groupcoh::catalog::{builtin, find};
use groupcoh::ext::{ext_hat, gap_scan, tate_cohomology};
use groupcoh::field::Fq;
use groupcoh::fixture::standard_module;
use groupcoh::group::PermGroup;
use groupcoh::module::Module;
use groupcoh::nucleus::{
    classify, no_cohomology_support_check, nucleus, NucleusClass, SupportVerdict,
};
use groupcoh::report::{classify_section, nucleus_section, primes_dividing, Format, Report};
use groupcoh::resolution::{complete_resolution, is_projective};
use groupcoh::ring::sop_upper_bound;
use groupcoh::verify::invariant_suite;
use groupcoh::{Error, Result};

const SEED: u64 = 2026;
const CAP: u64 = 1 << 14;
const DEGREE_CAP: usize = 6;

/// Groups exercised by the duality criterion.
const DUALITY_GROUPS: [&str; 8] = ["C2", "C3", "C4", "C2xC2", "S3", "A4", "Q8", "D8"];

/// p-groups of order at most 27 exercised by the dimension identity.
const P_GROUPS: [&str; 13] = [
    "C2", "C3", "C4", "C5", "C7", "C2xC2", "C2xC2xC2", "C8", "D8", "Q8", "C9", "C3xC3", "C27",
];

/// Union of the two lists above: the fixture set for the block-vanishing,
/// gap-scan, and Shapiro criteria.
const FIXTURES: [&str; 15] = [
    "C2", "C3", "C4", "C5", "C7", "C8", "C9", "C27", "C2xC2", "C2xC2xC2", "C3xC3", "S3", "A4",
    "Q8", "D8",
];

/// Named, non-series catalog entries; the support-containment search runs
/// over those of them whose nucleus is not empty.
const NAMED: [&str; 10] = [
    "S3", "A4", "S4", "A5", "Q8", "C2xC2", "C2xC2xC2", "C3xC3", "C2xA4", "SL23",
];

/// Classifications established once by the pipeline and frozen since, as
/// rendered reports under `tests/golden/`.
const KNOWN_CLASSIFICATIONS: [(&str, u32, NucleusClass); 5] = [
    ("S3", 2, NucleusClass::Empty),
    ("A4", 2, NucleusClass::ZeroOnly),
    ("S3", 3, NucleusClass::ZeroOnly),
    ("Q8", 2, NucleusClass::Empty),
    ("C2xA4", 2, NucleusClass::Nontrivial),
];

fn main() {
    let criteria: &[(&str, fn() -> Result<Vec<String>>)] = &[
        ("tate duality", tate_duality),
        ("p-group dimension identity", dimension_identity),
        ("block vanishing", block_vanishing),
        ("gap scan", gap_scans),
        ("nucleus consistency over the catalog", nucleus_consistency),
        ("frozen classifications", frozen_classifications),
        ("shapiro identity", shapiro_identity),
        ("support containment", support_containment),
        ("determinism", determinism),
    ];
    let mut failed = 0usize;
    for (i, (name, body)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = panic::catch_unwind(AssertUnwindSafe(body));
        let elapsed = start.elapsed().as_secs_f64();
        match outcome {
            Ok(Ok(notes)) => {
                println!("criterion {} ({name}): pass [{elapsed:.1}s]", i + 1);
                for note in notes {
                    println!("    {note}");
                }
            }
            Ok(Err(e)) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL [{elapsed:.1}s] {e}", i + 1);
            }
            Err(payload) => {
                failed += 1;
                let msg = payload
                    .downcast_ref::<String>()
                    .map(String::as_str)
                    .or_else(|| payload.downcast_ref::<&str>().copied())
                    .unwrap_or("panic without message");
                println!("criterion {} ({name}): FAIL [{elapsed:.1}s] {msg}", i + 1);
            }
        }
    }
    if failed > 0 {
        std::process::exit(1);
    }
}

fn group(id: &str) -> Result<PermGroup> {
    let entries = builtin()?;
    find(&entries, id)?.group()
}

fn algebra(g: &PermGroup, p: u32) -> Result<GroupAlgebra> {
    GroupAlgebra::new(g.clone(), Fq::prime(p)?)
}

/// For every pair of modules drawn from {k, Omega k, cosets of a Sylow
/// subgroup, a seeded random module}, the Tate groups in one direction
/// match the reflected degrees in the other, on [-4, 4].
fn tate_duality() -> Result<Vec<String>> {
    let mut pairs = 0usize;
    for id in DUALITY_GROUPS {
        let g = group(id)?;
        for p in primes_dividing(g.order()) {
            let alg = algebra(&g, p)?;
            let cosets = format!("cosets:{p}");
            let names = ["k", "omega:1", cosets.as_str(), "random:8"];
            let mut modules = Vec::with_capacity(names.len());
            for name in names {
                modules.push((name, standard_module(&alg, name, SEED, CAP)?));
            }
            let mut rows = Vec::with_capacity(modules.len());
            for (_, m) in &modules {
                let mut row = Vec::with_capacity(modules.len());
                for (_, n) in &modules {
                    row.push(ext_hat(&alg, m, n, -5, 4, SEED, CAP)?);
                }
                rows.push(row);
            }
            for i in 0..modules.len() {
                for j in 0..modules.len() {
                    for deg in -4..=4 {
                        assert_eq!(
                            rows[i][j].dim(-deg - 1),
                            rows[j][i].dim(deg),
                            "duality breaks for {id} at p={p} between {} and {} in degree {deg}",
                            modules[i].0,
                            modules[j].0,
                        );
                    }
                    pairs += 1;
                }
            }
        }
    }
    Ok(vec![format!("{pairs} module pairs, window [-4, 4]")])
}

/// Over a p-group, |G| times each Tate dimension equals the dimension of
/// the matching term of the minimal complete resolution, on [-4, 4].
fn dimension_identity() -> Result<Vec<String>> {
    for id in P_GROUPS {
        let g = group(id)?;
        let primes = primes_dividing(g.order());
        assert_eq!(primes.len(), 1, "{id} is not a p-group");
        let alg = algebra(&g, primes[0])?;
        for name in ["k", "omega:1", "random:6"] {
            let m = standard_module(&alg, name, SEED, CAP)?;
            let window = tate_cohomology(&alg, &m, -4, 4, SEED, CAP)?;
            let res = complete_resolution(&alg, &m, -4, 4, SEED, CAP)?;
            for n in -4..=4 {
                assert_eq!(
                    g.order() as usize * window.dim(n),
                    res.term(n).module().dim(),
                    "dimension identity breaks for {id}, module {name}, degree {n}",
                );
            }
        }
    }
    Ok(vec![format!("{} p-groups, window [-4, 4]", P_GROUPS.len())])
}

/// Defect-zero simples and regular modules have no Tate cohomology.
fn block_vanishing() -> Result<Vec<String>> {
    let g = group("S3")?;
    let alg = algebra(&g, 2)?;
    let blocks = block_decomposition(&alg)?;
    let mut defect_zero = 0usize;
    for i in 0..alg.simple_count() {
        let s = alg.simple(i);
        if block_of(&alg, &blocks, s)? != Some(blocks.principal_index()) {
            defect_zero += 1;
            let window = tate_cohomology(&alg, s, -6, 6, SEED, CAP)?;
            assert!(
                window.is_zero(),
                "the non-principal simple of S3 over F2 has Tate cohomology",
            );
        }
    }
    assert_eq!(defect_zero, 1, "S3 over F2 should have one non-principal simple");
    for id in FIXTURES {
        let g = group(id)?;
        for p in primes_dividing(g.order()) {
            let alg = algebra(&g, p)?;
            let regular = Module::regular(alg.field(), &g);
            let window = tate_cohomology(&alg, &regular, -6, 6, SEED, CAP)?;
            assert!(
                window.is_zero(),
                "the regular module of {id} over F{p} has Tate cohomology",
            );
        }
    }
    Ok(vec![format!(
        "one defect-zero simple and {} regular modules, window [-6, 6]",
        FIXTURES.len()
    )])
}

/// No module shows a zero run of the certified parameter-bound length
/// next to a non-zero dimension inside [-8, 8].
fn gap_scans() -> Result<Vec<String>> {
    let mut scans = 0usize;
    let mut widest = 0usize;
    for id in FIXTURES {
        let g = group(id)?;
        for p in primes_dividing(g.order()) {
            let alg = algebra(&g, p)?;
            let cert = sop_upper_bound(&alg, DEGREE_CAP, SEED, CAP)?;
            widest = widest.max(cert.n_upper);
            let cosets = format!("cosets:{p}");
            for name in ["k", "omega:1", cosets.as_str(), "random:6"] {
                let m = standard_module(&alg, name, SEED, CAP)?;
                let window = tate_cohomology(&alg, &m, -8, 8, SEED, CAP)?;
                let report = gap_scan(&window, cert.n_upper)?;
                assert!(
                    !report.violation,
                    "gap violation for {id} at p={p}, module {name}, runs {:?}",
                    report.runs,
                );
                scans += 1;
            }
        }
    }
    Ok(vec![format!(
        "{scans} scans, window [-8, 8], largest certified bound {widest}"
    )])
}

/// Over every catalog entry and dividing prime, the nucleus is empty
/// exactly when the group is p-nilpotent, and avoids positive ranks
/// exactly when every order-p centralizer is p-nilpotent.
fn nucleus_consistency() -> Result<Vec<String>> {
    let entries = builtin()?;
    let mut pairs = 0usize;
    for entry in &entries {
        let g = entry.group()?;
        for p in primes_dividing(g.order()) {
            let report = nucleus(&g, p)?;
            let status = classify(&g, p)?;
            assert_eq!(
                report.classification == NucleusClass::Empty,
                g.is_p_nilpotent(p),
                "nucleus emptiness disagrees with p-nilpotency for {} at p={p}",
                entry.id,
            );
            let hypothesis = g.elements_of_order_p(p).iter().all(|&x| {
                g.subgroup_from_indices(&g.centralizer_indices(&[x]))
                    .is_p_nilpotent(p)
            });
            assert_eq!(
                report.classification != NucleusClass::Nontrivial,
                hypothesis,
                "nucleus rank disagrees with the centralizer enumeration for {} at p={p}",
                entry.id,
            );
            assert_eq!(
                status.order_p_centralizers_p_nilpotent, hypothesis,
                "classification hypothesis field disagrees with the enumeration for {} at p={p}",
                entry.id,
            );
            pairs += 1;
        }
    }
    Ok(vec![format!(
        "{pairs} group-prime pairs over {} catalog entries",
        entries.len()
    )])
}

fn classification_report(id: &str, g: &PermGroup, p: u32) -> Result<String> {
    let status = classify(g, p)?;
    let mut report = Report::new();
    report.meta("group", id);
    report.meta("prime", p);
    report.push(classify_section(id, &status));
    report.push(nucleus_section(&nucleus(g, p)?));
    Ok(report.render(Format::Structured))
}

/// The five settled classifications come out as recorded and their full
/// reports match the frozen files byte for byte.
fn frozen_classifications() -> Result<Vec<String>> {
    let update = std::env::var_os("UPDATE_GOLDEN").is_some();
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/tests/golden");
    let mut notes = Vec::new();
    for (id, p, expected) in KNOWN_CLASSIFICATIONS {
        let g = group(id)?;
        let report = nucleus(&g, p)?;
        assert_eq!(
            report.classification, expected,
            "classification of {id} at p={p} changed",
        );
        let text = classification_report(id, &g, p)?;
        let path = format!("{dir}/{}_p{p}.txt", id.to_lowercase());
        if update {
            std::fs::create_dir_all(dir)
                .and_then(|()| std::fs::write(&path, &text))
                .map_err(|e| Error::input(format!("cannot write {path}: {e}")))?;
        }
        let frozen = std::fs::read_to_string(&path)
            .map_err(|e| Error::input(format!("cannot read {path}: {e}")))?;
        assert_eq!(
            text, frozen,
            "the report for {id} at p={p} deviates from its frozen file",
        );
        notes.push(format!("{id} p={p}: {}", report.classification));
    }
    Ok(notes)
}

/// Tate groups out of a Sylow coset module match the Tate cohomology of
/// the restriction to that Sylow subgroup, on [-3, 3].
fn shapiro_identity() -> Result<Vec<String>> {
    let mut windows = 0usize;
    for id in FIXTURES {
        let g = group(id)?;
        for p in primes_dividing(g.order()) {
            let field = Fq::prime(p)?;
            let alg = GroupAlgebra::new(g.clone(), field)?;
            let sylow = g.sylow(p)?;
            let sub_alg = GroupAlgebra::new(sylow.clone(), field)?;
            let induced = standard_module(&alg, &format!("cosets:{p}"), SEED, CAP)?;
            for name in ["k", "random:6"] {
                let m = standard_module(&alg, name, SEED, CAP)?;
                let left = ext_hat(&alg, &induced, &m, -3, 3, SEED, CAP)?;
                let right =
                    tate_cohomology(&sub_alg, &m.restrict(&g, &sylow)?, -3, 3, SEED, CAP)?;
                for n in -3..=3 {
                    assert_eq!(
                        left.dim(n),
                        right.dim(n),
                        "Shapiro breaks for {id} at p={p}, module {name}, degree {n}",
                    );
                }
                windows += 1;
            }
        }
    }
    Ok(vec![format!("{windows} module windows, [-3, 3]")])
}

/// Candidate modules for the support-containment search: seeded random
/// quotients of the regular module, pairwise tensor products of the
/// simple modules, and a syzygy-twisted random module.
fn search_candidates(alg: &GroupAlgebra) -> Result<Vec<Module>> {
    let mut out = Vec::new();
    for s in 0..4 {
        out.push(standard_module(alg, "random:10", SEED + s, CAP)?);
    }
    for i in 0..alg.simple_count() {
        for j in i..alg.simple_count() {
            let t = alg.simple(i).tensor(alg.simple(j));
            if t.dim() <= 40 {
                out.push(t);
            }
        }
    }
    let syzygy = standard_module(alg, "omega:1", SEED, CAP)?;
    let sample = standard_module(alg, "random:6", SEED + 9, CAP)?;
    if syzygy.dim() * sample.dim() <= 60 {
        out.push(syzygy.tensor(&sample));
    }
    Ok(out)
}

/// Every discovered non-projective principal-block module with no Tate
/// cohomology on a window longer than the certified bound has support
/// inside the nucleus; entries where the search finds nothing are
/// reported as vacuous rather than counted.
fn support_containment() -> Result<Vec<String>> {
    let mut notes = Vec::new();
    for id in NAMED {
        let g = group(id)?;
        for p in primes_dividing(g.order()) {
            let report = nucleus(&g, p)?;
            if report.classification == NucleusClass::Empty {
                continue;
            }
            let alg = algebra(&g, p)?;
            let cert = sop_upper_bound(&alg, DEGREE_CAP, SEED, CAP)?;
            let lo = -2i64;
            let hi = lo + cert.n_upper as i64;
            let blocks = block_decomposition(&alg)?;
            let mut candidates = 0usize;
            let mut discovered = 0usize;
            for m in search_candidates(&alg)? {
                if m.is_zero() || is_projective(&alg, &m)? {
                    continue;
                }
                candidates += 1;
                if block_of(&alg, &blocks, &m)? != Some(blocks.principal_index()) {
                    continue;
                }
                if !tate_cohomology(&alg, &m, lo, hi, SEED, CAP)?.is_zero() {
                    continue;
                }
                discovered += 1;
                match no_cohomology_support_check(&alg, &m, lo, hi, cert.n_upper, &report, SEED, CAP)? {
                    SupportVerdict::Pass => {}
                    SupportVerdict::Fail { offending } => panic!(
                        "support escapes the nucleus for {id} at p={p}: a {}-dimensional \
                         module with no Tate cohomology on [{lo}, {hi}] meets nodes {offending:?}",
                        m.dim(),
                    ),
                }
            }
            let outcome = match discovered {
                0 => format!(
                    "vacuous, {candidates} non-projective candidates, none window-acyclic in the principal block"
                ),
                1 => "one window-acyclic principal-block module, support contained".to_string(),
                n => format!("{n} window-acyclic principal-block modules, support contained"),
            };
            notes.push(format!("{id} p={p} ({}): {outcome}", report.classification));
        }
    }
    Ok(notes)
}

/// The invariant battery renders byte-identically under one seed and
/// returns the same verdicts under another.
fn determinism() -> Result<Vec<String>> {
    let battery = [("S3", 2), ("S3", 3), ("C4", 2), ("C2xC2", 2), ("A4", 2)];
    for (id, p) in battery {
        let g = group(id)?;
        let run = |seed: u64| -> Result<(String, Vec<(&'static str, bool)>)> {
            let suite = invariant_suite(id, &g, p, seed, DEGREE_CAP, CAP)?;
            let verdicts = suite.checks.iter().map(|c| (c.name, c.passed)).collect();
            let mut report = Report::new();
            report.meta("group", id);
            report.meta("prime", p);
            report.meta("seed", seed);
            report.push(suite.section());
            Ok((report.render(Format::Structured), verdicts))
        };
        let (first, first_verdicts) = run(SEED)?;
        let (second, _) = run(SEED)?;
        assert_eq!(first, second, "same-seed reports differ for {id} at p={p}");
        let (_, other_verdicts) = run(SEED + 1)?;
        assert_eq!(
            first_verdicts, other_verdicts,
            "verdicts moved with the seed for {id} at p={p}",
        );
        assert!(
            first_verdicts.iter().all(|&(_, passed)| passed),
            "invariant failures for {id} at p={p}: {:?}",
            first_verdicts
                .iter()
                .filter(|&&(_, passed)| !passed)
                .map(|&(name, _)| name)
                .collect::<Vec<_>>(),
        );
    }
    Ok(vec![format!("{} suites, two seeds each", battery.len())])
}
