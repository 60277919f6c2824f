//! Congruences of finite algebras.
//!
//! [`principal_oracle`] computes `θ(a,b)` by closing `{(a,b)}` under the
//! basic translations. [`DlcmiView::r_congruence`] computes the relation
//! `R(a,b)` cut out by the `t_n^k` inequalities; on DLCMI algebras the two
//! must coincide, which [`DlcmiView::verify_pt`] checks pair by pair.

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::algebra::{Element, FiniteAlgebra, Op};
use crate::varieties::{self, Failure, VarietyTag};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CongruenceError {
    #[error("algebra is not in DLCMI: axiom {} fails at {:?}", .0.axiom, .0.witness)]
    NotDlcmi(Failure),
    #[error("algebra is not a weak Heyting algebra with · = ∧: {0}")]
    NotWh(String),
    #[error("algebra is not in IDCRL: axiom {} fails at {:?}", .0.axiom, .0.witness)]
    NotIdcrl(Failure),
    #[error("R({a},{b}) is not an equivalence relation: {detail}")]
    InternalInconsistency {
        a: Element,
        b: Element,
        detail: String,
    },
}

/// Disjoint-set forest with path compression.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    pub fn new(size: usize) -> Self {
        UnionFind {
            parent: (0..size).collect(),
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the classes of `x` and `y`; returns false if they were already merged.
    pub fn union(&mut self, x: usize, y: usize) -> bool {
        let (rx, ry) = (self.find(x), self.find(y));
        if rx == ry {
            return false;
        }
        // keep the smaller index as root
        let (lo, hi) = if rx < ry { (rx, ry) } else { (ry, rx) };
        self.parent[hi] = lo;
        true
    }
}

/// A partition of the carrier, stored as "least element of my block".
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Congruence {
    leader: Vec<Element>,
}

impl Congruence {
    /// Δ, the identity relation.
    pub fn identity(size: usize) -> Self {
        Congruence {
            leader: (0..size).collect(),
        }
    }

    /// ∇, the all relation.
    pub fn full(size: usize) -> Self {
        Congruence {
            leader: vec![0; size],
        }
    }

    pub fn from_union_find(mut uf: UnionFind) -> Self {
        let size = uf.parent.len();
        let mut least = vec![usize::MAX; size];
        for x in 0..size {
            let r = uf.find(x);
            least[r] = least[r].min(x);
        }
        Congruence {
            leader: (0..size).map(|x| least[uf.find(x)]).collect(),
        }
    }

    /// From blocks; elements not mentioned become singletons.
    pub fn from_blocks(size: usize, blocks: &[Vec<Element>]) -> Self {
        let mut uf = UnionFind::new(size);
        for block in blocks {
            for w in block.windows(2) {
                uf.union(w[0], w[1]);
            }
        }
        Congruence::from_union_find(uf)
    }

    pub fn size(&self) -> usize {
        self.leader.len()
    }

    pub fn leaders(&self) -> &[Element] {
        &self.leader
    }

    #[inline]
    pub fn relates(&self, x: Element, y: Element) -> bool {
        self.leader[x] == self.leader[y]
    }

    pub fn class_of(&self, x: Element) -> Element {
        self.leader[x]
    }

    /// Blocks in increasing order of their least element.
    pub fn blocks(&self) -> Vec<Vec<Element>> {
        let mut blocks: Vec<Vec<Element>> = Vec::new();
        for x in 0..self.size() {
            if self.leader[x] == x {
                blocks.push(vec![x]);
            } else {
                let idx = blocks
                    .iter()
                    .position(|b| b[0] == self.leader[x])
                    .expect("leader precedes members");
                blocks[idx].push(x);
            }
        }
        blocks
    }

    pub fn block_count(&self) -> usize {
        (0..self.size()).filter(|&x| self.leader[x] == x).count()
    }

    pub fn is_identity(&self) -> bool {
        self.block_count() == self.size()
    }

    pub fn is_full(&self) -> bool {
        self.block_count() <= 1
    }

    /// `self ⊆ other` as relations.
    pub fn refines(&self, other: &Congruence) -> bool {
        (0..self.size()).all(|x| other.relates(x, self.leader[x]))
    }

    /// The least equivalence containing both.
    pub fn join(&self, other: &Congruence) -> Congruence {
        let mut uf = UnionFind::new(self.size());
        for x in 0..self.size() {
            uf.union(x, self.leader[x]);
            uf.union(x, other.leader[x]);
        }
        Congruence::from_union_find(uf)
    }

    /// Closed under every basic operation, one argument at a time.
    pub fn is_congruence_of(&self, alg: &FiniteAlgebra) -> bool {
        let m = alg.size();
        (0..m).all(|x| {
            let y = self.leader[x];
            (0..m).all(|c| {
                Op::ALL.iter().all(|&op| {
                    self.relates(alg.apply(op, x, c), alg.apply(op, y, c))
                        && self.relates(alg.apply(op, c, x), alg.apply(op, c, y))
                })
            })
        })
    }
}

impl fmt::Display for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, block) in self.blocks().iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str("{")?;
            for (j, x) in block.iter().enumerate() {
                if j > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str("}")?;
        }
        f.write_str("}")
    }
}

impl fmt::Debug for Congruence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// The least congruence containing all the given pairs.
pub fn generated_congruence(alg: &FiniteAlgebra, pairs: &[(Element, Element)]) -> Congruence {
    let m = alg.size();
    let mut uf = UnionFind::new(m);
    let mut queue: Vec<(Element, Element)> = Vec::new();
    for &(a, b) in pairs {
        if uf.union(a, b) {
            queue.push((a, b));
        }
    }
    // Every pair that merged two classes is queued once; translating the
    // queued pairs is enough because they span the equivalence.
    while let Some((x, y)) = queue.pop() {
        for c in 0..m {
            for op in Op::ALL {
                for (u, v) in [
                    (alg.apply(op, x, c), alg.apply(op, y, c)),
                    (alg.apply(op, c, x), alg.apply(op, c, y)),
                ] {
                    if uf.union(u, v) {
                        queue.push((u, v));
                    }
                }
            }
        }
    }
    Congruence::from_union_find(uf)
}

/// `θ(a,b)` by closure under translations `x ↦ op(x,c)` and `x ↦ op(c,x)`.
pub fn principal_oracle(alg: &FiniteAlgebra, a: Element, b: Element) -> Congruence {
    generated_congruence(alg, &[(a, b)])
}

/// `Con(A)`, finest first: sorted by decreasing number of blocks, then by
/// canonical block order.
pub fn all_congruences(alg: &FiniteAlgebra) -> Vec<Congruence> {
    let m = alg.size();
    let mut found: BTreeSet<Congruence> = BTreeSet::new();
    found.insert(Congruence::identity(m));
    let principals: Vec<Congruence> = (0..m)
        .flat_map(|a| (a + 1..m).map(move |b| (a, b)))
        .map(|(a, b)| principal_oracle(alg, a, b))
        .collect();
    let mut frontier: Vec<Congruence> = Vec::new();
    for p in principals.iter() {
        if found.insert(p.clone()) {
            frontier.push(p.clone());
        }
    }
    // every congruence is a join of principal ones
    while let Some(c) = frontier.pop() {
        for p in &principals {
            let j = c.join(p);
            if found.insert(j.clone()) {
                frontier.push(j);
            }
        }
    }
    let mut out: Vec<Congruence> = found.into_iter().collect();
    out.sort_by(|x, y| {
        y.block_count()
            .cmp(&x.block_count())
            .then_with(|| x.leader.cmp(&y.leader))
    });
    out
}

/// A pair `(n, k)` associated with `(c, d)` in `R(a, b)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RWitness {
    pub n: usize,
    pub k: usize,
}

/// The three conditions defining `R(a,b)`, evaluated at a given value `t` of `t_n^k(a,b)`.
pub fn r_conditions_hold(
    alg: &FiniteAlgebra,
    t: Element,
    a: Element,
    b: Element,
    c: Element,
    d: Element,
) -> bool {
    let lo = alg.meet(a, b);
    let hi = alg.join(a, b);
    let below = |x: Element, y: Element| alg.leq(alg.prod(t, x), y);
    let (c_lo, d_lo) = (alg.meet(c, lo), alg.meet(d, lo));
    let (c_hi, d_hi) = (alg.join(c, hi), alg.join(d, hi));
    below(c_lo, d_lo)
        && below(d_lo, c_lo)
        && below(c_hi, d_hi)
        && below(d_hi, c_hi)
        && alg.leq(t, alg.biimp(c, d))
}

/// A finite algebra known to satisfy the DLCMI axioms.
#[derive(Clone, Copy, Debug)]
pub struct DlcmiView<'a> {
    alg: &'a FiniteAlgebra,
}

/// One generator pair where the closure and `R(a,b)` disagree on `(c,d)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtDisagreement {
    pub a: Element,
    pub b: Element,
    pub c: Element,
    pub d: Element,
    pub in_closure: bool,
    pub in_r: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PairSummary {
    pub a: Element,
    pub b: Element,
    pub blocks: usize,
    pub agree: bool,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtReport {
    pub pairs: Vec<PairSummary>,
    pub disagreements: Vec<PtDisagreement>,
}

impl PtReport {
    pub fn all_agree(&self) -> bool {
        self.disagreements.is_empty()
    }
}

pub fn require_dlcmi(alg: &FiniteAlgebra) -> Result<(), CongruenceError> {
    let report = varieties::check(alg, VarietyTag::Dlcmi).expect("DLCMI needs no bottom");
    match report.failures.into_iter().next() {
        Some(f) => Err(CongruenceError::NotDlcmi(f)),
        None => Ok(()),
    }
}

impl<'a> DlcmiView<'a> {
    pub fn new(alg: &'a FiniteAlgebra) -> Result<Self, CongruenceError> {
        require_dlcmi(alg)?;
        Ok(DlcmiView { alg })
    }

    pub fn algebra(&self) -> &'a FiniteAlgebra {
        self.alg
    }

    /// Whether `(n, k)` is associated with `(c, d)` in `R(a, b)`.
    pub fn is_associated(
        &self,
        a: Element,
        b: Element,
        c: Element,
        d: Element,
        n: usize,
        k: usize,
    ) -> bool {
        r_conditions_hold(self.alg, self.alg.t_pow(a, b, n, k), a, b, c, d)
    }

    /// The lexicographically least associated pair within the stabilization
    /// bounds. The conditions only get weaker as `t_n^k` shrinks, so failure
    /// at the bounds means `(c,d) ∉ R(a,b)`.
    pub fn r_membership(&self, a: Element, b: Element, c: Element, d: Element) -> Option<RWitness> {
        let (big_n, big_k) = self.alg.stabilization_bounds(a, b);
        if !self.is_associated(a, b, c, d, big_n, big_k) {
            return None;
        }
        (0..=big_n)
            .flat_map(|n| (0..=big_k).map(move |k| RWitness { n, k }))
            .find(|w| self.is_associated(a, b, c, d, w.n, w.k))
    }

    /// `R(a,b)` as a relation matrix, evaluated at the stabilized `t_N^K(a,b)`.
    pub fn r_relation(&self, a: Element, b: Element) -> Vec<Vec<bool>> {
        let t = self.alg.t_floor(a, b);
        let m = self.alg.size();
        (0..m)
            .map(|c| {
                (0..m)
                    .map(|d| r_conditions_hold(self.alg, t, a, b, c, d))
                    .collect()
            })
            .collect()
    }

    pub fn r_congruence(&self, a: Element, b: Element) -> Result<Congruence, CongruenceError> {
        relation_to_partition(&self.r_relation(a, b))
            .map_err(|detail| CongruenceError::InternalInconsistency { a, b, detail })
    }

    /// Compares the closure `θ(a,b)` with `R(a,b)` for every ordered pair.
    pub fn verify_pt(&self) -> PtReport {
        let m = self.alg.size();
        let mut pairs = Vec::with_capacity(m * m);
        let mut disagreements = Vec::new();
        for a in 0..m {
            for b in 0..m {
                let theta = principal_oracle(self.alg, a, b);
                let r = self.r_relation(a, b);
                let mut agree = true;
                for c in 0..m {
                    for d in 0..m {
                        let in_closure = theta.relates(c, d);
                        if in_closure != r[c][d] {
                            agree = false;
                            disagreements.push(PtDisagreement {
                                a,
                                b,
                                c,
                                d,
                                in_closure,
                                in_r: r[c][d],
                            });
                        }
                    }
                }
                pairs.push(PairSummary {
                    a,
                    b,
                    blocks: theta.block_count(),
                    agree,
                });
            }
        }
        PtReport {
            pairs,
            disagreements,
        }
    }
}

/// Checks reflexivity, symmetry and transitivity and returns the partition.
pub fn relation_to_partition(rel: &[Vec<bool>]) -> Result<Congruence, String> {
    let m = rel.len();
    for x in 0..m {
        if !rel[x][x] {
            return Err(format!("not reflexive at {x}"));
        }
        for y in 0..m {
            if rel[x][y] != rel[y][x] {
                return Err(format!("not symmetric at ({x},{y})"));
            }
            for z in 0..m {
                if rel[x][y] && rel[y][z] && !rel[x][z] {
                    return Err(format!("not transitive at ({x},{y},{z})"));
                }
            }
        }
    }
    let mut uf = UnionFind::new(m);
    for x in 0..m {
        for y in 0..m {
            if rel[x][y] {
                uf.union(x, y);
            }
        }
    }
    Ok(Congruence::from_union_find(uf))
}

pub fn r_membership(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
    c: Element,
    d: Element,
) -> Result<Option<RWitness>, CongruenceError> {
    Ok(DlcmiView::new(alg)?.r_membership(a, b, c, d))
}

pub fn r_congruence(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
) -> Result<Congruence, CongruenceError> {
    DlcmiView::new(alg)?.r_congruence(a, b)
}

pub fn verify_pt(alg: &FiniteAlgebra) -> Result<PtReport, CongruenceError> {
    Ok(DlcmiView::new(alg)?.verify_pt())
}

pub fn require_wh(alg: &FiniteAlgebra) -> Result<(), CongruenceError> {
    match varieties::check(alg, VarietyTag::Wh) {
        Err(e) => Err(CongruenceError::NotWh(e.to_string())),
        Ok(r) => match r.failures.first() {
            Some(f) => Err(CongruenceError::NotWh(format!(
                "axiom {} fails at {:?}",
                f.axiom, f.witness
            ))),
            None => Ok(()),
        },
    }
}

pub fn require_idcrl(alg: &FiniteAlgebra) -> Result<(), CongruenceError> {
    let report = varieties::check(alg, VarietyTag::Idcrl).expect("IDCRL needs no bottom");
    match report.failures.into_iter().next() {
        Some(f) => Err(CongruenceError::NotIdcrl(f)),
        None => Ok(()),
    }
}

/// Weak Heyting form: least `n ≤ size` with
/// `c∧a∧b∧t_n = d∧a∧b∧t_n`, `(c∨a∨b)∧t_n = (d∨a∨b)∧t_n` and `t_n ≤ c↔d`.
pub fn wh_membership(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
    c: Element,
    d: Element,
) -> Result<Option<usize>, CongruenceError> {
    require_wh(alg)?;
    Ok(wh_membership_unchecked(alg, a, b, c, d))
}

pub(crate) fn wh_membership_unchecked(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
    c: Element,
    d: Element,
) -> Option<usize> {
    let lo = alg.meet(a, b);
    let hi = alg.join(a, b);
    (0..=alg.size()).find(|&n| {
        let t = alg.t_term(a, b, n);
        alg.meet(alg.meet(c, lo), t) == alg.meet(alg.meet(d, lo), t)
            && alg.meet(alg.join(c, hi), t) == alg.meet(alg.join(d, hi), t)
            && alg.leq(t, alg.biimp(c, d))
    })
}

/// IDCRL form: least `k ≤ size` with `(a↔b)^k ≤ c↔d`.
pub fn idcrl_membership(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
    c: Element,
    d: Element,
) -> Result<Option<usize>, CongruenceError> {
    require_idcrl(alg)?;
    Ok(idcrl_membership_unchecked(alg, a, b, c, d))
}

pub(crate) fn idcrl_membership_unchecked(
    alg: &FiniteAlgebra,
    a: Element,
    b: Element,
    c: Element,
    d: Element,
) -> Option<usize> {
    let e = alg.biimp(a, b);
    let target = alg.biimp(c, d);
    (0..=alg.size()).find(|&k| alg.leq(alg.power(e, k), target))
}

/// A violated lattice-congruence implication.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaFailure {
    pub lemma: &'static str,
    pub congruence: Congruence,
    pub tuple: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticeLemmaReport {
    pub congruences: usize,
    pub failures: Vec<LemmaFailure>,
}

impl LatticeLemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every congruence θ:
/// * cancellation: `(a∧c, b∧c), (a∨c, b∨c) ∈ θ ⇒ (a,b) ∈ θ`;
/// * `(a,b) ∈ θ`, `(c∧a∧b, d∧a∧b), (c∨a∨b, d∨a∨b) ∈ θ ⇒ (c,d) ∈ θ`.
///
/// Both hold whenever the lattice reduct is distributive.
pub fn lattice_lemma_checks(alg: &FiniteAlgebra) -> LatticeLemmaReport {
    let m = alg.size();
    let cons = all_congruences(alg);
    let mut failures = Vec::new();
    for theta in &cons {
        let first = |lemma, tuple: Vec<Element>| LemmaFailure {
            lemma,
            congruence: theta.clone(),
            tuple,
        };
        let mut l1 = None;
        let mut l2 = None;
        for a in 0..m {
            for b in 0..m {
                for c in 0..m {
                    if l1.is_none()
                        && theta.relates(alg.meet(a, c), alg.meet(b, c))
                        && theta.relates(alg.join(a, c), alg.join(b, c))
                        && !theta.relates(a, b)
                    {
                        l1 = Some(first("l1", vec![a, b, c]));
                    }
                    if l2.is_some() || !theta.relates(a, b) {
                        continue;
                    }
                    let (lo, hi) = (alg.meet(a, b), alg.join(a, b));
                    for d in 0..m {
                        if theta.relates(alg.meet(c, lo), alg.meet(d, lo))
                            && theta.relates(alg.join(c, hi), alg.join(d, hi))
                            && !theta.relates(c, d)
                        {
                            l2 = Some(first("l2", vec![a, b, c, d]));
                            break;
                        }
                    }
                }
            }
        }
        failures.extend(l1);
        failures.extend(l2);
    }
    LatticeLemmaReport {
        congruences: cons.len(),
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::factory::{ex1, mv_chain, singleton, wh_trivial_chain};

    const Z: Element = 0;
    const A: Element = 1;
    const ONE: Element = 2;

    /// All partitions of `0..m` that are closed under the operations.
    fn brute_force_congruences(alg: &FiniteAlgebra) -> BTreeSet<Congruence> {
        fn partitions(m: usize) -> Vec<Vec<usize>> {
            // restricted growth strings
            let mut out = Vec::new();
            fn go(prefix: &mut Vec<usize>, m: usize, out: &mut Vec<Vec<usize>>) {
                if prefix.len() == m {
                    out.push(prefix.clone());
                    return;
                }
                let max = prefix.iter().copied().max().map_or(0, |x| x + 1);
                for v in 0..=max {
                    prefix.push(v);
                    go(prefix, m, out);
                    prefix.pop();
                }
            }
            go(&mut Vec::new(), m, &mut out);
            out
        }
        partitions(alg.size())
            .into_iter()
            .map(|labels| {
                let blocks: Vec<Vec<usize>> = (0..=*labels.iter().max().unwrap())
                    .map(|l| (0..labels.len()).filter(|&x| labels[x] == l).collect())
                    .collect();
                Congruence::from_blocks(alg.size(), &blocks)
            })
            .filter(|c| c.is_congruence_of(alg))
            .collect()
    }

    #[test]
    fn union_find_keeps_least_leader() {
        let mut uf = UnionFind::new(5);
        assert!(uf.union(4, 2));
        assert!(uf.union(2, 3));
        assert!(!uf.union(3, 4));
        let c = Congruence::from_union_find(uf);
        assert_eq!(c.leaders(), &[0, 1, 2, 2, 2]);
        assert_eq!(c.to_string(), "{{0},{1},{2,3,4}}");
    }

    #[test]
    fn oracle_examples() {
        let mv = mv_chain(3);
        assert!(principal_oracle(&mv, A, ONE).is_full());
        for x in 0..3 {
            assert!(principal_oracle(&mv, x, x).is_identity());
        }
        let wh = wh_trivial_chain(3);
        assert_eq!(principal_oracle(&wh, Z, A).to_string(), "{{0,1},{2}}");
    }

    #[test]
    fn principal_oracle_matches_brute_force_minimum() {
        for alg in [
            mv_chain(3),
            wh_trivial_chain(3),
            mv_chain(4),
            wh_trivial_chain(4),
        ] {
            let all = brute_force_congruences(&alg);
            for a in alg.elements() {
                for b in alg.elements() {
                    let least = all
                        .iter()
                        .filter(|c| c.relates(a, b))
                        .min_by_key(|c| std::cmp::Reverse(c.block_count()))
                        .unwrap();
                    let theta = principal_oracle(&alg, a, b);
                    assert_eq!(&theta, least);
                    assert!(all
                        .iter()
                        .filter(|c| c.relates(a, b))
                        .all(|c| theta.refines(c)));
                }
            }
        }
    }

    #[test]
    fn r_membership_examples() {
        let mv = mv_chain(3);
        let w = r_membership(&mv, A, ONE, Z, ONE).unwrap().unwrap();
        assert_eq!(w.k, 2);
        assert_eq!(mv.power(mv.biimp(A, ONE), 2), Z);
        let wh = wh_trivial_chain(3);
        assert_eq!(r_membership(&wh, Z, A, Z, ONE).unwrap(), None);
        for alg in [mv.clone(), wh.clone(), ex1()] {
            let view = DlcmiView::new(&alg).unwrap();
            for a in alg.elements() {
                for b in alg.elements() {
                    assert!(view.is_associated(a, b, a, b, 0, 1));
                    let w = view.r_membership(a, b, a, b).unwrap();
                    assert!(w <= RWitness { n: 0, k: 1 });
                }
            }
        }
    }

    #[test]
    fn r_congruence_examples() {
        let mv = mv_chain(3);
        assert!(r_congruence(&mv, A, ONE).unwrap().is_full());
        let wh = wh_trivial_chain(3);
        assert!(r_congruence(&wh, Z, ONE).unwrap().is_full());
        for alg in [mv, wh, singleton()] {
            for x in alg.elements() {
                assert!(r_congruence(&alg, x, x).unwrap().is_identity());
            }
        }
    }

    #[test]
    fn not_dlcmi_is_rejected() {
        let broken = wh_trivial_chain(3)
            .with_imp(crate::algebra::Table::from_fn(3, |_, _| 0))
            .unwrap();
        assert!(matches!(
            r_membership(&broken, 0, 1, 0, 1),
            Err(CongruenceError::NotDlcmi(_))
        ));
        assert!(matches!(
            verify_pt(&broken),
            Err(CongruenceError::NotDlcmi(_))
        ));
        assert!(matches!(
            idcrl_membership(&wh_trivial_chain(3), 0, 1, 0, 1),
            Err(CongruenceError::NotIdcrl(_))
        ));
        assert!(matches!(
            wh_membership(&mv_chain(3), 0, 1, 0, 1),
            Err(CongruenceError::NotWh(_))
        ));
    }

    #[test]
    fn verify_pt_examples() {
        for (alg, pairs) in [(mv_chain(3), 9), (wh_trivial_chain(3), 9), (ex1(), 81)] {
            let report = verify_pt(&alg).unwrap();
            assert_eq!(report.pairs.len(), pairs);
            assert!(report.all_agree(), "{:?}", report.disagreements);
        }
    }

    #[test]
    fn verify_pt_reports_disagreement_for_bad_relation() {
        // R is not reproduced by a partition here: surface the inconsistency
        let rel = vec![
            vec![true, true, false],
            vec![true, true, true],
            vec![false, true, true],
        ];
        assert!(relation_to_partition(&rel)
            .unwrap_err()
            .contains("transitive"));
    }

    #[test]
    fn congruence_lattices() {
        let mv = all_congruences(&mv_chain(3));
        assert_eq!(mv, vec![Congruence::identity(3), Congruence::full(3)]);
        assert_eq!(all_congruences(&singleton()), vec![Congruence::identity(1)]);
        let wh: Vec<String> = all_congruences(&wh_trivial_chain(3))
            .iter()
            .map(|c| c.to_string())
            .collect();
        assert_eq!(
            wh,
            ["{{0},{1},{2}}", "{{0,1},{2}}", "{{0},{1,2}}", "{{0,1,2}}"]
        );
    }

    #[test]
    fn all_congruences_matches_brute_force() {
        for alg in [
            mv_chain(4),
            wh_trivial_chain(4),
            crate::factory::boolean(2),
            ex1(),
        ] {
            let fast: BTreeSet<Congruence> = all_congruences(&alg).into_iter().collect();
            assert_eq!(fast, brute_force_congruences(&alg));
        }
    }

    #[test]
    fn wh_membership_examples() {
        let wh = wh_trivial_chain(3);
        assert_eq!(wh_membership(&wh, Z, A, Z, A).unwrap(), Some(0));
        assert_eq!(wh_membership(&wh, Z, A, A, ONE).unwrap(), None);
        let view = DlcmiView::new(&wh).unwrap();
        for t in varieties::Tuples::new(3, 4) {
            let lhs = wh_membership(&wh, t[0], t[1], t[2], t[3])
                .unwrap()
                .is_some();
            assert_eq!(lhs, view.r_membership(t[0], t[1], t[2], t[3]).is_some());
        }
    }

    #[test]
    fn idcrl_membership_examples() {
        let mv = mv_chain(3);
        assert_eq!(idcrl_membership(&mv, A, ONE, Z, ONE).unwrap(), Some(2));
        assert_eq!(idcrl_membership(&mv, A, ONE, A, ONE).unwrap(), Some(1));
        assert_eq!(idcrl_membership(&mv, ONE, ONE, Z, ONE).unwrap(), None);
    }

    #[test]
    fn lattice_lemmas_hold_on_distributive_examples() {
        for alg in [mv_chain(3), wh_trivial_chain(3), mv_chain(2)] {
            let r = lattice_lemma_checks(&alg);
            assert!(r.passed(), "{:?}", r.failures);
        }
        assert_eq!(lattice_lemma_checks(&mv_chain(2)).congruences, 2);
    }

    #[test]
    fn lattice_lemmas_fail_on_n5() {
        // N5: 0 < p < q < 1, 0 < r < 1 with r incomparable to p, q
        let leq = |x: usize, y: usize| x == y || x == 0 || y == 4 || (x == 1 && y == 2);
        let bound = |x: usize, y: usize, lower: bool| {
            (0..5)
                .filter(|&z| {
                    if lower {
                        leq(z, x) && leq(z, y)
                    } else {
                        leq(x, z) && leq(y, z)
                    }
                })
                .reduce(|p, q| if lower == leq(p, q) { q } else { p })
                .unwrap()
        };
        let meet = move |x, y| bound(x, y, true);
        let join = move |x, y| bound(x, y, false);
        let n5 = FiniteAlgebra::from_fns(5, meet, join, meet, |_, _| 4, 4, Some(0)).unwrap();
        assert!(!lattice_lemma_checks(&n5).passed());
    }
}
