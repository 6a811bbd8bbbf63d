//! Runtime invariant suites.
//!
//! One suite runs the cross-cutting identities of every layer against a
//! single group and prime at small windows: exact linear algebra, the
//! class equation, Sylow structure, Frobenius reciprocity, Tate duality,
//! the Brown-Comenetz shift, the p-group dimension identity, Shapiro's
//! lemma, gap scans under the certified parameter bound, ring
//! commutativity, restriction normalization, nucleus consistency, and
//! support sanity.  A failed check is an invariant violation and is
//! reported, not raised; operational problems (caps, bad input) are
//! errors.  Every check's detail names the window and field it ran over.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::algebra::GroupAlgebra;
use crate::blocks::{block_decomposition, block_of};
use crate::error::{Error, Result};
use crate::ext::{ext_hat, gap_scan, tate_cohomology};
use crate::field::{Elt, Fq};
use crate::fixture::random_module;
use crate::group::PermGroup;
use crate::matrix::Mat;
use crate::module::Module;
use crate::nucleus::{classify, nucleus, NucleusClass};
use crate::report::Section;
use crate::resolution::complete_resolution;
use crate::ring::{cohomology_ring, restriction, sop_upper_bound};
use crate::variety::module_support;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

#[derive(Clone, Debug)]
pub struct SuiteOutcome {
    pub id: String,
    pub prime: u32,
    pub checks: Vec<Check>,
}

impl SuiteOutcome {
    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.passed)
    }

    pub fn section(&self) -> Section {
        let mut s = Section::new(format!("invariants {} p={}", self.id, self.prime));
        for c in &self.checks {
            let status = if c.passed { "pass" } else { "FAIL" };
            s.row(c.name, format!("{status}; {}", c.detail));
        }
        s
    }
}

fn random_mat(f: Fq, rows: usize, cols: usize, rng: &mut ChaCha8Rng) -> Mat {
    let order = u64::from(f.order());
    Mat::from_fn(f, rows, cols, |_, _| rng.gen_range(0..order) as Elt)
}

fn is_power_of(mut n: u64, p: u32) -> bool {
    while n % u64::from(p) == 0 {
        n /= u64::from(p);
    }
    n == 1
}

/// Runs the full invariant battery for one group at one prime.
/// `degree_cap` bounds the parameter-system search degree.
pub fn invariant_suite(
    id: &str,
    group: &PermGroup,
    p: u32,
    seed: u64,
    degree_cap: usize,
    size_cap: u64,
) -> Result<SuiteOutcome> {
    if group.order() % u64::from(p) != 0 {
        return Err(Error::input(format!(
            "the prime {p} does not divide the group order {}",
            group.order()
        )));
    }
    let field = Fq::prime(p)?;
    let alg = GroupAlgebra::new(group.clone(), field)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut check = |name: &'static str, passed: bool, detail: String| {
        checks.push(Check { name, passed, detail });
    };

    for f in [field, Fq::quadratic(p)?] {
        let a = random_mat(f, 5, 7, &mut rng);
        let null = a.nullspace();
        let annihilates = a.mul(&null) == Mat::zero(f, 5, null.cols());
        let counts = a.rank() + null.cols() == 7;
        let x = random_mat(f, 7, 2, &mut rng);
        let b = a.mul(&x);
        let solved = a.solve(&b).map(|s| a.mul(&s) == b).unwrap_or(false);
        check(
            "linear algebra",
            annihilates && counts && solved,
            format!("nullspace, rank-nullity, solve on a seeded 5x7 over {f}"),
        );
    }

    let classes = group.conjugacy_classes();
    let total: usize = classes.iter().map(Vec::len).sum();
    let orbit_stabilizer = classes.iter().all(|class| {
        group.centralizer_indices(&[class[0]]).len() as u64 * class.len() as u64
            == group.order()
    });
    check(
        "class equation",
        total as u64 == group.order() && orbit_stabilizer,
        format!("{} classes summing to the order", classes.len()),
    );

    let sylow = group.sylow(p)?;
    let mut p_part = 1u64;
    let mut rest = group.order();
    while rest % u64::from(p) == 0 {
        p_part *= u64::from(p);
        rest /= u64::from(p);
    }
    let orders_ok = sylow.elements().iter().all(|g| is_power_of(g.order().max(1), p));
    check(
        "sylow subgroup",
        sylow.order() == p_part && orders_ok,
        format!("order {} equals the {p}-part", sylow.order()),
    );

    let sample = random_module(&alg, 6, seed)?;
    let k_sylow = Module::trivial(field, &sylow);
    let induced = k_sylow.induce(group, &sylow)?;
    let restricted = sample.restrict(group, &sylow)?;
    check(
        "frobenius reciprocity",
        induced.hom_dim(&sample) == k_sylow.hom_dim(&restricted),
        format!("hom dimensions through the Sylow {p}-subgroup over {field}"),
    );

    check(
        "double dual",
        sample.dual().dual() == sample,
        format!("a seeded {}-dimensional module", sample.dim()),
    );

    let k = Module::trivial(field, group);
    let pairs = [(&k, &sample), (&sample, &k), (&sample, &sample), (&k, &k)];
    let mut duality_ok = true;
    for (m, n) in pairs {
        let forward = ext_hat(&alg, m, n, -4, 3, seed, size_cap)?;
        let backward = ext_hat(&alg, n, m, -4, 3, seed, size_cap)?;
        duality_ok &= (-3..=3).all(|i| forward.dim(-i - 1) == backward.dim(i));
    }
    check(
        "tate duality",
        duality_ok,
        format!("both orders of k and a seeded module on [-3, 3] over {field}"),
    );

    let base = tate_cohomology(&alg, &sample, -4, 3, seed, size_cap)?;
    let flipped = tate_cohomology(&alg, &sample.dual(), -3, 3, seed, size_cap)?;
    check(
        "brown-comenetz shift",
        (-3..=3).all(|i| flipped.dim(i) == base.dim(-i - 1)),
        format!("dual module window [-3, 3] over {field}"),
    );

    if is_power_of(group.order(), p) {
        let mut identity_ok = true;
        for m in [&k, &sample] {
            let window = tate_cohomology(&alg, m, -3, 3, seed, size_cap)?;
            let res = complete_resolution(&alg, m, -3, 3, seed, size_cap)?;
            identity_ok &= (-3..=3).all(|n| {
                group.order() as usize * window.dim(n) == res.term(n).module().dim()
            });
        }
        check(
            "p-group dimension identity",
            identity_ok,
            format!("order times cohomology equals term dimension on [-3, 3] over {field}"),
        );
    }

    let sub_alg = GroupAlgebra::new(sylow.clone(), field)?;
    let shapiro_left = ext_hat(&alg, &induced, &sample, -2, 2, seed, size_cap)?;
    let shapiro_right = tate_cohomology(&sub_alg, &restricted, -2, 2, seed, size_cap)?;
    check(
        "shapiro",
        (-2..=2).all(|n| shapiro_left.dim(n) == shapiro_right.dim(n)),
        format!("coset module against the Sylow restriction on [-2, 2] over {field}"),
    );

    let cert = sop_upper_bound(&alg, degree_cap, seed, size_cap)?;
    let radius = cert.n_upper as i64 + 1;
    let mut scans_clean = true;
    for m in [&k, &Module::regular(field, group), &sample] {
        let window = tate_cohomology(&alg, m, -radius, radius, seed, size_cap)?;
        scans_clean &= !gap_scan(&window, cert.n_upper.max(1))?.violation;
    }
    check(
        "gap scan",
        scans_clean,
        format!(
            "bound {} from a rank {} parameter system, window [{}, {}] over {field}",
            cert.n_upper, cert.rank, -radius, radius
        ),
    );

    let ring = cohomology_ring(&alg, 3, seed, size_cap)?;
    let mut ring_ok = true;
    for m in 1..=2usize {
        for n in m..=(3 - m) {
            for a in 0..ring.dim(m) {
                for b in 0..ring.dim(n) {
                    let x = ring.basis_class(m, a);
                    let y = ring.basis_class(n, b);
                    let xy = ring.product(&x, &y)?;
                    let mut yx = ring.product(&y, &x)?;
                    if m * n % 2 == 1 {
                        yx.coords = yx.coords.iter().map(|&c| field.neg(c)).collect();
                    }
                    ring_ok &= xy.coords == yx.coords;
                }
            }
        }
    }
    for d in 0..=3usize {
        for a in 0..ring.dim(d) {
            let x = ring.basis_class(d, a);
            ring_ok &= ring.product(&ring.one(), &x)?.coords == x.coords;
        }
    }
    check(
        "ring commutativity",
        ring_ok,
        format!("all products to degree 3 over {field}"),
    );

    if let Some(&x) = group.elements_of_order_p(p).first() {
        let line_alg = GroupAlgebra::new(group.subgroup_from_indices(&[x]), field)?;
        let sub_ring = cohomology_ring(&line_alg, 3, seed, size_cap)?;
        let rho = restriction(&alg, &ring, &line_alg, &sub_ring, size_cap)?;
        check(
            "restriction normalization",
            rho.matrix(0) == &Mat::identity(field, 1),
            format!("degree zero along an order-{p} subgroup over {field}"),
        );
    }

    let report = nucleus(group, p)?;
    let nilpotent = group.is_p_nilpotent(p);
    let hypothesis = group.elements_of_order_p(p).iter().all(|&x| {
        group
            .subgroup_from_indices(&group.centralizer_indices(&[x]))
            .is_p_nilpotent(p)
    });
    let status = classify(group, p)?;
    check(
        "nucleus consistency",
        (report.classification == NucleusClass::Empty) == nilpotent
            && (report.classification != NucleusClass::Nontrivial) == hypothesis
            && status.order_p_centralizers_p_nilpotent == hypothesis,
        format!("classification {} against direct centralizer enumeration", report.classification),
    );

    let support = module_support(&alg, &k, &report.poset)?;
    let max_rank = report.poset.nodes.iter().map(|n| n.rank).max().unwrap_or(0);
    let full = support.len() == report.poset.nodes.len();
    let support_ok = support.first() == Some(&0)
        && support.iter().all(|&i| i < report.poset.nodes.len())
        && (max_rank > 2 || full)
        && module_support(&alg, &Module::regular(field, group), &report.poset)?.is_empty();
    check(
        "support sanity",
        support_ok,
        format!(
            "trivial module support on {} nodes, projective support empty, scans over {field} and {}",
            report.poset.nodes.len(),
            Fq::quadratic(p)?
        ),
    );

    let blocks = block_decomposition(&alg)?;
    let mut blocks_ok = blocks.count() >= 1;
    for i in 0..alg.simple_count() {
        blocks_ok &= block_of(&alg, &blocks, alg.simple(i))?.is_some();
    }
    blocks_ok &= block_of(&alg, &blocks, alg.simple(alg.trivial_index()))?
        == Some(blocks.principal_index());
    let projective = &alg.pim(alg.trivial_index()).module;
    let projective_window = tate_cohomology(&alg, projective, -2, 2, seed, size_cap)?;
    check(
        "blocks and projectives",
        blocks_ok && projective_window.is_zero(),
        format!(
            "{} blocks over {field}; the principal projective cover is window-acyclic on [-2, 2]",
            blocks.count()
        ),
    );

    Ok(SuiteOutcome { id: id.to_string(), prime: p, checks })
}
