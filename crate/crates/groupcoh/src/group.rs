//! Finite permutation groups with a fully enumerated element table.
//!
//! Groups are built from generating permutations by breadth-first closure,
//! which fixes a canonical element order: the identity is element 0, and
//! every later element records the generator and earlier element it came
//! from. All downstream structure (conjugacy classes, Sylow subgroups,
//! cosets, elementary abelian subgroups) is derived from this table with
//! deterministic scans, so repeated runs list everything in the same order.
//!
//! The enumeration is capped at 10 000 elements; larger inputs return a cap
//! error rather than running away.

use crate::error::{Error, Result};
use crate::perm::Perm;
use std::collections::{BTreeSet, HashMap};

const ELEMENT_CAP: u64 = 10_000;

/// A finite group of permutations with its complete element list.
#[derive(Clone)]
pub struct PermGroup {
    degree: usize,
    gens: Vec<Perm>,
    elements: Vec<Perm>,
    index: HashMap<Perm, usize>,
    parent_gen: Vec<Option<(usize, usize)>>,
}

impl PermGroup {
    /// Breadth-first closure of the generators. Element 0 is the identity.
    pub fn from_generators(degree: usize, gens: Vec<Perm>) -> Result<PermGroup> {
        for g in &gens {
            if g.degree() != degree {
                return Err(Error::input(format!(
                    "generator {g} has degree {} but the group has degree {degree}",
                    g.degree()
                )));
            }
        }
        let gens: Vec<Perm> = gens.into_iter().filter(|g| !g.is_identity()).collect();
        let mut elements = vec![Perm::identity(degree)];
        let mut index = HashMap::new();
        index.insert(elements[0].clone(), 0);
        let mut parent_gen = vec![None];
        let mut head = 0;
        while head < elements.len() {
            for (gi, g) in gens.iter().enumerate() {
                let next = g.compose(&elements[head]);
                if !index.contains_key(&next) {
                    if elements.len() as u64 >= ELEMENT_CAP {
                        return Err(Error::cap(
                            "group element enumeration",
                            ELEMENT_CAP,
                            ELEMENT_CAP + 1,
                        ));
                    }
                    index.insert(next.clone(), elements.len());
                    elements.push(next);
                    parent_gen.push(Some((head, gi)));
                }
            }
            head += 1;
        }
        Ok(PermGroup { degree, gens, elements, index, parent_gen })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::from_generators(degree, Vec::new()).expect("trivial group")
    }

    /// Parses generators in cycle notation and builds the group.
    pub fn parse(degree: usize, gen_strings: &[&str]) -> Result<PermGroup> {
        let gens = gen_strings
            .iter()
            .map(|s| Perm::parse(s, degree))
            .collect::<Result<Vec<_>>>()?;
        PermGroup::from_generators(degree, gens)
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn order(&self) -> u64 {
        self.elements.len() as u64
    }

    pub fn generators(&self) -> &[Perm] {
        &self.gens
    }

    pub fn elements(&self) -> &[Perm] {
        &self.elements
    }

    pub fn element(&self, i: usize) -> &Perm {
        &self.elements[i]
    }

    pub fn index_of(&self, p: &Perm) -> Option<usize> {
        self.index.get(p).copied()
    }

    /// BFS provenance of element `i`: the earlier element and generator
    /// index with `elements[i] = gens[gi] * elements[parent]`. `None` for
    /// the identity.
    pub fn parent_of(&self, i: usize) -> Option<(usize, usize)> {
        self.parent_gen[i]
    }

    /// Generator indices whose left-to-right product reconstructs element
    /// `i`: starting from the identity, repeatedly left-multiply by the
    /// listed generators. Any homomorphic image of the group can evaluate an
    /// element by folding its word this way.
    pub fn word(&self, i: usize) -> Vec<usize> {
        let mut out = Vec::new();
        let mut cur = i;
        while let Some((parent, gi)) = self.parent_gen[cur] {
            out.push(gi);
            cur = parent;
        }
        out.reverse();
        out
    }

    pub fn mul(&self, i: usize, j: usize) -> usize {
        self.index[&self.elements[i].compose(&self.elements[j])]
    }

    pub fn inv(&self, i: usize) -> usize {
        self.index[&self.elements[i].inverse()]
    }

    /// `x i x^{-1}` by element indices.
    pub fn conj(&self, i: usize, x: usize) -> usize {
        self.mul(self.mul(x, i), self.inv(x))
    }

    pub fn order_of(&self, i: usize) -> u64 {
        self.elements[i].order()
    }

    pub fn is_abelian(&self) -> bool {
        let n = self.gens.len();
        (0..n).all(|a| {
            (a + 1..n).all(|b| {
                self.gens[a].compose(&self.gens[b]) == self.gens[b].compose(&self.gens[a])
            })
        })
    }

    pub fn is_p_group(&self, p: u32) -> bool {
        is_p_power(self.order(), p as u64)
    }

    /// Conjugacy classes as sorted element-index lists, ordered by their
    /// smallest member; the identity class comes first.
    pub fn conjugacy_classes(&self) -> Vec<Vec<usize>> {
        let n = self.elements.len();
        let mut assigned = vec![false; n];
        let mut classes = Vec::new();
        for i in 0..n {
            if assigned[i] {
                continue;
            }
            let mut class = BTreeSet::new();
            for x in 0..n {
                class.insert(self.conj(i, x));
            }
            let class: Vec<usize> = class.into_iter().collect();
            for &c in &class {
                assigned[c] = true;
            }
            classes.push(class);
        }
        classes
    }

    /// Elements commuting with every element in `xs`, in index order.
    pub fn centralizer_indices(&self, xs: &[usize]) -> Vec<usize> {
        (0..self.elements.len())
            .filter(|&g| xs.iter().all(|&x| self.mul(g, x) == self.mul(x, g)))
            .collect()
    }

    pub fn center_indices(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.elements.len()).collect();
        self.centralizer_indices(&all)
    }

    /// The subgroup generated by (or consisting of) the listed elements, as
    /// a group in its own right on the same points.
    pub fn subgroup_from_indices(&self, idxs: &[usize]) -> PermGroup {
        let gens = idxs.iter().map(|&i| self.elements[i].clone()).collect();
        PermGroup::from_generators(self.degree, gens).expect("subgroup within enumerated group")
    }

    /// Maps each element index of `h` to the corresponding index here, or
    /// reports that `h` is not contained in this group.
    pub fn indices_of_subgroup(&self, h: &PermGroup) -> Result<Vec<usize>> {
        if h.degree() != self.degree {
            return Err(Error::input(format!(
                "subgroup degree {} does not match group degree {}",
                h.degree(),
                self.degree
            )));
        }
        h.elements
            .iter()
            .map(|p| {
                self.index_of(p).ok_or_else(|| {
                    Error::input(format!("element {p} does not lie in the group"))
                })
            })
            .collect()
    }

    /// Left cosets of the subgroup with the given element-index set.
    /// Returns the transversal (first element of each coset in index order)
    /// and the coset number of every element. The identity coset is first.
    pub fn left_cosets(&self, h_indices: &[usize]) -> (Vec<usize>, Vec<usize>) {
        let n = self.elements.len();
        let mut coset_of = vec![usize::MAX; n];
        let mut transversal = Vec::new();
        for t in 0..n {
            if coset_of[t] != usize::MAX {
                continue;
            }
            let c = transversal.len();
            transversal.push(t);
            for &h in h_indices {
                coset_of[self.mul(t, h)] = c;
            }
        }
        (transversal, coset_of)
    }

    /// The permutation induced on element indices by left translation.
    pub fn left_translation_perm(&self, i: usize) -> Perm {
        let images = (0..self.elements.len()).map(|x| self.mul(i, x)).collect();
        Perm::from_images(images).expect("translation is a bijection")
    }

    /// Greedy deterministic Sylow p-subgroup: starting from the trivial
    /// subgroup, repeatedly adjoin the first p-power-order element that
    /// normalizes the current subgroup, until the full p-part is reached.
    pub fn sylow(&self, p: u32) -> Result<PermGroup> {
        let p64 = p as u64;
        let target = p_part(self.order(), p64);
        let mut h_set: BTreeSet<usize> = BTreeSet::new();
        h_set.insert(0);
        let mut picked: Vec<usize> = Vec::new();
        while (h_set.len() as u64) < target {
            let candidate = (1..self.elements.len()).find(|&x| {
                !h_set.contains(&x)
                    && is_p_power(self.order_of(x), p64)
                    && h_set.iter().all(|&h| h_set.contains(&self.conj(h, x)))
            });
            let Some(x) = candidate else {
                return Err(Error::internal(format!(
                    "Sylow {p}-subgroup extension found no normalizing element \
                     at order {}",
                    h_set.len()
                )));
            };
            picked.push(x);
            h_set = self.closure_of(h_set.iter().copied().chain([x]));
        }
        Ok(self.subgroup_from_indices(&picked))
    }

    /// Closure of an index set under multiplication.
    fn closure_of(&self, seed: impl IntoIterator<Item = usize>) -> BTreeSet<usize> {
        let mut set: BTreeSet<usize> = seed.into_iter().collect();
        set.insert(0);
        loop {
            let mut grew = false;
            let snapshot: Vec<usize> = set.iter().copied().collect();
            for &a in &snapshot {
                for &b in &snapshot {
                    if set.insert(self.mul(a, b)) {
                        grew = true;
                    }
                }
            }
            if !grew {
                return set;
            }
        }
    }

    /// Whether the group has a normal p-complement: the p'-order elements
    /// must number exactly the p'-part of the group order and be closed
    /// under multiplication.
    pub fn is_p_nilpotent(&self, p: u32) -> bool {
        let p64 = p as u64;
        let m = self.order() / p_part(self.order(), p64);
        let pprime: Vec<usize> = (0..self.elements.len())
            .filter(|&i| self.order_of(i) % p64 != 0)
            .collect();
        if pprime.len() as u64 != m {
            return false;
        }
        let set: BTreeSet<usize> = pprime.iter().copied().collect();
        pprime
            .iter()
            .all(|&a| pprime.iter().all(|&b| set.contains(&self.mul(a, b))))
    }

    /// Every non-trivial elementary abelian p-subgroup, as a sorted
    /// element-index set (identity included). Rank-(r+1) subgroups are found
    /// by extending rank-r ones with commuting elements of order p; the
    /// result is sorted by size and then lexicographically.
    pub fn elementary_abelian_subgroups(&self, p: u32) -> Vec<Vec<usize>> {
        let p64 = p as u64;
        let order_p: Vec<usize> = (0..self.elements.len())
            .filter(|&i| self.order_of(i) == p64)
            .collect();
        let mut current: BTreeSet<Vec<usize>> = BTreeSet::new();
        for &x in &order_p {
            let mut set = vec![0];
            let mut cur = x;
            while cur != 0 {
                set.push(cur);
                cur = self.mul(cur, x);
            }
            set.sort_unstable();
            current.insert(set);
        }
        let mut all: Vec<Vec<usize>> = current.iter().cloned().collect();
        while !current.is_empty() {
            let mut next: BTreeSet<Vec<usize>> = BTreeSet::new();
            for a in &current {
                for &y in &order_p {
                    if a.binary_search(&y).is_ok() {
                        continue;
                    }
                    if a.iter().any(|&h| self.mul(h, y) != self.mul(y, h)) {
                        continue;
                    }
                    let mut set = Vec::with_capacity(a.len() * p as usize);
                    let mut yk = 0;
                    for _ in 0..p {
                        for &h in a {
                            set.push(self.mul(h, yk));
                        }
                        yk = self.mul(yk, y);
                    }
                    set.sort_unstable();
                    next.insert(set);
                }
            }
            all.extend(next.iter().cloned());
            current = next;
        }
        all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
        all
    }

    /// Image of a subgroup element set under conjugation by element `x`.
    pub fn conjugate_set(&self, set: &[usize], x: usize) -> Vec<usize> {
        let mut out: Vec<usize> = set.iter().map(|&i| self.conj(i, x)).collect();
        out.sort_unstable();
        out
    }

    /// Conjugacy classes of non-trivial elementary abelian p-subgroups.
    /// Each class reports its lexicographically least conjugate as the
    /// representative; classes are sorted by rank and then representative.
    pub fn elementary_abelian_classes(&self, p: u32) -> Vec<ElementaryAbelianClass> {
        let subgroups = self.elementary_abelian_subgroups(p);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        let mut classes = Vec::new();
        for set in &subgroups {
            let orbit: BTreeSet<Vec<usize>> = (0..self.elements.len())
                .map(|x| self.conjugate_set(set, x))
                .collect();
            let rep = orbit.iter().next().expect("orbit is non-empty").clone();
            if !seen.insert(rep.clone()) {
                continue;
            }
            let rank = (set.len() as u64).ilog(p as u64);
            classes.push(ElementaryAbelianClass { rep, rank, conjugates: orbit.len() });
        }
        classes.sort_by(|a, b| a.rank.cmp(&b.rank).then_with(|| a.rep.cmp(&b.rep)));
        classes
    }

    /// Whether some conjugate of the subgroup `a` lies inside `b` (both
    /// given as element-index sets).
    pub fn subconjugate(&self, a: &[usize], b: &[usize]) -> bool {
        let b_set: BTreeSet<usize> = b.iter().copied().collect();
        (0..self.elements.len()).any(|x| {
            self.conjugate_set(a, x).iter().all(|i| b_set.contains(i))
        })
    }

    /// Non-identity elements `x` with `x^p = 1`.
    pub fn elements_of_order_p(&self, p: u32) -> Vec<usize> {
        (1..self.elements.len())
            .filter(|&i| self.order_of(i) == u64::from(p))
            .collect()
    }

    /// Minimal generating elements of the elementary abelian p-subgroup
    /// with the given sorted element indices.
    pub fn elementary_abelian_basis(&self, rep: &[usize], p: u32) -> Vec<usize> {
        let mut basis = Vec::new();
        let mut span = vec![0usize];
        for &x in rep {
            if span.contains(&x) {
                continue;
            }
            basis.push(x);
            let mut next = Vec::new();
            for &s in &span {
                let mut t = s;
                for _ in 0..p {
                    next.push(t);
                    t = self.mul(t, x);
                }
            }
            next.sort_unstable();
            span = next;
            if span.len() == rep.len() {
                break;
            }
        }
        basis
    }

    /// Conjugacy classes of elementary abelian p-subgroups, the trivial
    /// subgroup included, ordered by subconjugacy and annotated with the
    /// p-nilpotency of their centralizers.
    pub fn quillen_poset(&self, p: u32) -> QuillenPoset {
        let mut nodes = vec![QuillenNode {
            rep: vec![0],
            rank: 0,
            conjugates: 1,
            centralizer_p_nilpotent: self.is_p_nilpotent(p),
        }];
        for class in self.elementary_abelian_classes(p) {
            let centralizer =
                self.subgroup_from_indices(&self.centralizer_indices(&class.rep));
            nodes.push(QuillenNode {
                rep: class.rep,
                rank: class.rank,
                conjugates: class.conjugates,
                centralizer_p_nilpotent: centralizer.is_p_nilpotent(p),
            });
        }
        let mut edges = Vec::with_capacity(nodes.len());
        for a in &nodes {
            let up: Vec<usize> = nodes
                .iter()
                .enumerate()
                .filter(|&(_, b)| {
                    b.rank > a.rank && self.subconjugate(&a.rep, &b.rep)
                })
                .map(|(j, _)| j)
                .collect();
            edges.push(up);
        }
        QuillenPoset {
            prime: p,
            nodes,
            edges,
        }
    }
}

impl std::fmt::Debug for PermGroup {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(
            f,
            "PermGroup of order {} on {} points, generators",
            self.order(),
            self.degree
        )?;
        for g in &self.gens {
            write!(f, " {g}")?;
        }
        Ok(())
    }
}

/// One conjugacy class of elementary abelian p-subgroups.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ElementaryAbelianClass {
    /// Sorted element indices of the least conjugate in the class.
    pub rep: Vec<usize>,
    pub rank: u32,
    pub conjugates: usize,
}

/// One node of the Quillen poset.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuillenNode {
    /// Sorted element indices of the least conjugate in the class.
    pub rep: Vec<usize>,
    pub rank: u32,
    pub conjugates: usize,
    /// Whether the centralizer of the representative is p-nilpotent.
    pub centralizer_p_nilpotent: bool,
}

/// Conjugacy classes of elementary abelian p-subgroups under subconjugacy,
/// with the trivial subgroup as node 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuillenPoset {
    pub prime: u32,
    /// Nodes sorted by rank and then representative.
    pub nodes: Vec<QuillenNode>,
    /// `edges[i]` lists the nodes of larger rank that node `i` is
    /// subconjugate into; the relation is transitively closed.
    pub edges: Vec<Vec<usize>>,
}

pub fn is_p_power(mut n: u64, p: u64) -> bool {
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Largest power of `p` dividing `n`.
pub fn p_part(mut n: u64, p: u64) -> u64 {
    let mut out = 1;
    while n % p == 0 {
        out *= p;
        n /= p;
    }
    out
}
