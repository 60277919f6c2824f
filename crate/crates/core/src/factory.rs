//! Named constructions, products, isomorphism testing and small-model
//! enumeration.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Element, FiniteAlgebra, Op, Table};
use crate::varieties::{self, VarietyTag};

/// Default largest carrier size accepted by [`enumerate`].
pub const DEFAULT_ENUM_CAP: usize = 5;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FactoryError {
    #[error("carrier size {size} exceeds the enumeration cap {cap}")]
    CapExceeded { size: usize, cap: usize },
    #[error("enumeration supports dlcmi, wh and idcrl, not {0}")]
    UnsupportedVariety(VarietyTag),
    #[error("bad recipe `{0}`")]
    BadRecipe(String),
}

fn chain(
    n: usize,
    prod: impl Fn(Element, Element) -> Element,
    imp: impl Fn(Element, Element) -> Element,
) -> FiniteAlgebra {
    FiniteAlgebra::from_fns(
        n,
        |x, y| x.min(y),
        |x, y| x.max(y),
        prod,
        imp,
        n - 1,
        Some(0),
    )
    .expect("chains are lattices")
}

/// The Łukasiewicz chain `0 < 1 < … < n-1`.
pub fn mv_chain(n: usize) -> FiniteAlgebra {
    assert!(n >= 1, "mv_chain needs at least one element");
    let top = n - 1;
    chain(
        n,
        |x, y| (x + y).saturating_sub(top),
        |x, y| (top - x + y).min(top),
    )
    .with_name(format!("mv:{n}"))
}

/// The chain `0 < … < n-1` with `· = ∧` and `x → y = 1` everywhere.
pub fn wh_trivial_chain(n: usize) -> FiniteAlgebra {
    assert!(n >= 1, "wh_trivial_chain needs at least one element");
    chain(n, |x, y| x.min(y), |_, _| n - 1).with_name(format!("whtriv:{n}"))
}

pub fn singleton() -> FiniteAlgebra {
    mv_chain(1).with_name("singleton")
}

/// The Boolean algebra with `k` atoms, as a Heyting algebra with `· = ∧`.
pub fn boolean(k: usize) -> FiniteAlgebra {
    (0..k)
        .fold(singleton(), |acc, _| product(&acc, &mv_chain(2)))
        .with_name(format!("bool:{k}"))
}

/// Componentwise product; the pair `(i, j)` is encoded as `i·|B| + j`.
pub fn product(a: &FiniteAlgebra, b: &FiniteAlgebra) -> FiniteAlgebra {
    let mb = b.size();
    let split = |x: Element| (x / mb, x % mb);
    let lift = |op: Op| {
        move |x: Element, y: Element| {
            let ((x1, x2), (y1, y2)) = (split(x), split(y));
            a.apply(op, x1, y1) * mb + b.apply(op, x2, y2)
        }
    };
    let bottom = a.bottom().zip(b.bottom()).map(|(p, q)| p * mb + q);
    let name = format!("{}*{}", a.name().unwrap_or("?"), b.name().unwrap_or("?"));
    FiniteAlgebra::from_fns(
        a.size() * mb,
        lift(Op::Meet),
        lift(Op::Join),
        lift(Op::Prod),
        lift(Op::Imp),
        a.unit() * mb + b.unit(),
        bottom,
    )
    .expect("products of lattices are lattices")
    .with_name(name)
}

/// `H3^MV × H3^WH`.
pub fn ex1() -> FiniteAlgebra {
    product(&mv_chain(3), &wh_trivial_chain(3)).with_name("ex1")
}

/// A named construction, addressable from the command line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum AlgebraRecipe {
    MvChain(usize),
    WhTrivialChain(usize),
    Boolean(usize),
    Singleton,
    Ex1,
    Product(Box<AlgebraRecipe>, Box<AlgebraRecipe>),
}

impl AlgebraRecipe {
    pub fn build(&self) -> FiniteAlgebra {
        match self {
            AlgebraRecipe::MvChain(n) => mv_chain(*n),
            AlgebraRecipe::WhTrivialChain(n) => wh_trivial_chain(*n),
            AlgebraRecipe::Boolean(k) => boolean(*k),
            AlgebraRecipe::Singleton => singleton(),
            AlgebraRecipe::Ex1 => ex1(),
            AlgebraRecipe::Product(a, b) => {
                product(&a.build(), &b.build()).with_name(self.to_string())
            }
        }
    }
}

impl fmt::Display for AlgebraRecipe {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AlgebraRecipe::MvChain(n) => write!(f, "mv:{n}"),
            AlgebraRecipe::WhTrivialChain(n) => write!(f, "whtriv:{n}"),
            AlgebraRecipe::Boolean(k) => write!(f, "bool:{k}"),
            AlgebraRecipe::Singleton => f.write_str("singleton"),
            AlgebraRecipe::Ex1 => f.write_str("ex1"),
            AlgebraRecipe::Product(a, b) => write!(f, "{a}*{b}"),
        }
    }
}

impl FromStr for AlgebraRecipe {
    type Err = FactoryError;

    /// `mv:N`, `whtriv:N`, `bool:K`, `singleton`, `ex1`, joined by `*` for products.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || FactoryError::BadRecipe(s.to_string());
        let mut parts = s.split('*').map(str::trim);
        let atom = |p: &str| -> Result<AlgebraRecipe, FactoryError> {
            let sized = |arg: &str, min: usize| -> Result<usize, FactoryError> {
                arg.parse::<usize>()
                    .ok()
                    .filter(|&n| n >= min && n <= 64)
                    .ok_or_else(bad)
            };
            match p.split_once(':') {
                Some(("mv", n)) => Ok(AlgebraRecipe::MvChain(sized(n, 2)?)),
                Some(("whtriv", n)) => Ok(AlgebraRecipe::WhTrivialChain(sized(n, 2)?)),
                Some(("bool", k)) => Ok(AlgebraRecipe::Boolean(sized(k, 1)?)),
                None if p == "singleton" => Ok(AlgebraRecipe::Singleton),
                None if p == "ex1" => Ok(AlgebraRecipe::Ex1),
                _ => Err(bad()),
            }
        };
        let first = atom(parts.next().ok_or_else(bad)?)?;
        parts.try_fold(first, |acc, p| {
            Ok(AlgebraRecipe::Product(Box::new(acc), Box::new(atom(p)?)))
        })
    }
}

/// Per-element data preserved by every isomorphism.
fn element_signature(alg: &FiniteAlgebra, x: Element) -> [usize; 7] {
    let below = alg.elements().filter(|&y| alg.leq(y, x)).count();
    let above = alg.elements().filter(|&y| alg.leq(x, y)).count();
    [
        below,
        above,
        (x == alg.unit()) as usize,
        (Some(x) == alg.bottom()) as usize,
        (alg.prod(x, x) == x) as usize,
        (alg.imp(x, x) == x) as usize,
        (alg.imp(alg.unit(), x) == x) as usize,
    ]
}

/// A carrier bijection `φ: A → B` preserving all operations and constants.
pub fn is_isomorphic(a: &FiniteAlgebra, b: &FiniteAlgebra) -> Option<Vec<Element>> {
    let m = a.size();
    if m != b.size() || a.bottom().is_some() != b.bottom().is_some() {
        return None;
    }
    let sig_a: Vec<_> = a.elements().map(|x| element_signature(a, x)).collect();
    let sig_b: Vec<_> = b.elements().map(|x| element_signature(b, x)).collect();
    let mut sorted_a = sig_a.clone();
    let mut sorted_b = sig_b.clone();
    sorted_a.sort();
    sorted_b.sort();
    if sorted_a != sorted_b {
        return None;
    }

    struct Search<'a> {
        a: &'a FiniteAlgebra,
        b: &'a FiniteAlgebra,
        sig_a: Vec<[usize; 7]>,
        sig_b: Vec<[usize; 7]>,
        phi: Vec<Option<Element>>,
        used: Vec<bool>,
    }

    impl Search<'_> {
        // All pairs among 0..=x whose result is also assigned must commute with φ.
        fn consistent(&self, x: Element) -> bool {
            for u in 0..=x {
                for (p, q) in [(u, x), (x, u)] {
                    for op in Op::ALL {
                        let r = self.a.apply(op, p, q);
                        if let (Some(fr), Some(fp), Some(fq)) =
                            (self.phi[r], self.phi[p], self.phi[q])
                        {
                            if fr != self.b.apply(op, fp, fq) {
                                return false;
                            }
                        }
                    }
                }
            }
            true
        }

        fn complete(&self) -> bool {
            let (a, b) = (self.a, self.b);
            let phi = |x: Element| self.phi[x].expect("assigned");
            phi(a.unit()) == b.unit()
                && a.bottom().map(phi) == b.bottom()
                && Op::ALL.iter().all(|&op| {
                    a.elements().all(|x| {
                        a.elements()
                            .all(|y| phi(a.apply(op, x, y)) == b.apply(op, phi(x), phi(y)))
                    })
                })
        }

        fn run(&mut self, x: Element) -> bool {
            if x == self.a.size() {
                return self.complete();
            }
            for y in 0..self.b.size() {
                if self.used[y] || self.sig_a[x] != self.sig_b[y] {
                    continue;
                }
                self.phi[x] = Some(y);
                self.used[y] = true;
                if self.consistent(x) && self.run(x + 1) {
                    return true;
                }
                self.phi[x] = None;
                self.used[y] = false;
            }
            false
        }
    }

    let mut search = Search {
        a,
        b,
        sig_a,
        sig_b,
        phi: vec![None; m],
        used: vec![false; m],
    };
    if !search.run(0) {
        return None;
    }
    Some(
        search
            .phi
            .into_iter()
            .map(|p| p.expect("complete"))
            .collect(),
    )
}

/// All permutations of `0..m` in lexicographic order.
pub fn permutations(m: usize) -> Vec<Vec<Element>> {
    fn go(prefix: &mut Vec<Element>, used: &mut [bool], out: &mut Vec<Vec<Element>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for x in 0..used.len() {
            if !used[x] {
                used[x] = true;
                prefix.push(x);
                go(prefix, used, out);
                prefix.pop();
                used[x] = false;
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::with_capacity(m), &mut vec![false; m], &mut out);
    out
}

/// A finite distributive lattice labelled so that `x ≤ y` implies `x ≤ y`
/// numerically: `0` is the bottom and `m-1` the top.
#[derive(Clone, Debug)]
pub struct LatticeSkeleton {
    pub size: usize,
    leq: Vec<bool>,
    pub meet: Table,
    pub join: Table,
}

impl LatticeSkeleton {
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.leq[x * self.size + y]
    }

    fn from_order(size: usize, leq: Vec<bool>) -> Option<Self> {
        let le = |x: usize, y: usize| leq[x * size + y];
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    if le(x, y) && le(y, z) && !le(x, z) {
                        return None;
                    }
                }
            }
        }
        let bound = |x: usize, y: usize, lower: bool| -> Option<usize> {
            let common: Vec<usize> = (0..size)
                .filter(|&z| {
                    if lower {
                        le(z, x) && le(z, y)
                    } else {
                        le(x, z) && le(y, z)
                    }
                })
                .collect();
            common.iter().copied().find(|&z| {
                common
                    .iter()
                    .all(|&w| if lower { le(w, z) } else { le(z, w) })
            })
        };
        let mut meet = vec![0; size * size];
        let mut join = vec![0; size * size];
        for x in 0..size {
            for y in 0..size {
                meet[x * size + y] = bound(x, y, true)?;
                join[x * size + y] = bound(x, y, false)?;
            }
        }
        let meet = Table::from_fn(size, |x, y| meet[x * size + y]);
        let join = Table::from_fn(size, |x, y| join[x * size + y]);
        for x in 0..size {
            for y in 0..size {
                for z in 0..size {
                    if meet.get(x, join.get(y, z)) != join.get(meet.get(x, y), meet.get(x, z)) {
                        return None;
                    }
                }
            }
        }
        Some(LatticeSkeleton {
            size,
            leq,
            meet,
            join,
        })
    }

    fn order_key(&self, perm: &[Element]) -> Vec<bool> {
        let m = self.size;
        let mut key = vec![false; m * m];
        for x in 0..m {
            for y in 0..m {
                key[perm[x] * m + perm[y]] = self.leq(x, y);
            }
        }
        key
    }

    pub fn automorphisms(&self) -> Vec<Vec<Element>> {
        let identity = self.order_key(&(0..self.size).collect::<Vec<_>>());
        permutations(self.size)
            .into_iter()
            .filter(|p| self.order_key(p) == identity)
            .collect()
    }

    /// Join-irreducible elements: exactly one lower cover.
    fn join_irreducibles(&self) -> Vec<Element> {
        (0..self.size)
            .filter(|&x| self.lower_covers(x) == 1)
            .collect()
    }

    fn meet_irreducibles(&self) -> Vec<Element> {
        (0..self.size)
            .filter(|&x| self.upper_covers(x) == 1)
            .collect()
    }

    fn lower_covers(&self, x: Element) -> usize {
        (0..self.size)
            .filter(|&y| y != x && self.leq(y, x))
            .filter(|&y| {
                !(0..self.size).any(|z| z != x && z != y && self.leq(y, z) && self.leq(z, x))
            })
            .count()
    }

    fn upper_covers(&self, x: Element) -> usize {
        (0..self.size)
            .filter(|&y| y != x && self.leq(x, y))
            .filter(|&y| {
                !(0..self.size).any(|z| z != x && z != y && self.leq(x, z) && self.leq(z, y))
            })
            .count()
    }
}

/// Distributive lattices on `m` elements, one per isomorphism class.
pub fn distributive_lattices(m: usize) -> Vec<LatticeSkeleton> {
    if m == 0 {
        return Vec::new();
    }
    // free comparabilities between the non-extremal elements, i < j only
    let free: Vec<(usize, usize)> = (1..m.saturating_sub(1))
        .flat_map(|i| (i + 1..m - 1).map(move |j| (i, j)))
        .collect();
    let perms = permutations(m);
    let mut seen: BTreeMap<Vec<bool>, LatticeSkeleton> = BTreeMap::new();
    for mask in 0u64..(1u64 << free.len()) {
        let mut leq = vec![false; m * m];
        for x in 0..m {
            leq[x * m + x] = true;
            leq[x] = true; // 0 ≤ x
            leq[x * m + m - 1] = true; // x ≤ top
        }
        for (bit, &(i, j)) in free.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                leq[i * m + j] = true;
            }
        }
        let Some(sk) = LatticeSkeleton::from_order(m, leq) else {
            continue;
        };
        let key = perms.iter().map(|p| sk.order_key(p)).min().expect("m ≥ 1");
        seen.entry(key).or_insert(sk);
    }
    seen.into_values().collect()
}

/// Enumeration settings.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct EnumConfig {
    pub cap: usize,
}

impl Default for EnumConfig {
    fn default() -> Self {
        EnumConfig {
            cap: DEFAULT_ENUM_CAP,
        }
    }
}

pub fn enumerate(size: usize, tag: VarietyTag) -> Result<Vec<FiniteAlgebra>, FactoryError> {
    enumerate_with(size, tag, &EnumConfig::default())
}

/// All algebras of the given size in `tag` (one of DLCMI, WH, IDCRL), up to
/// isomorphism, in canonical order.
///
/// Layers: distributive lattice skeletons, then commutative monoid tables with
/// unit at the top and `x·y ≤ x∧y`, then implications. An implication
/// satisfying axioms 4–6 of DLCMI turns joins in its first argument into
/// meets and preserves meets in its second, so it is fixed by its values on
/// pairs (join-irreducible, meet-irreducible); those values are enumerated
/// antitone in the first coordinate and monotone in the second.
pub fn enumerate_with(
    size: usize,
    tag: VarietyTag,
    config: &EnumConfig,
) -> Result<Vec<FiniteAlgebra>, FactoryError> {
    if !matches!(tag, VarietyTag::Dlcmi | VarietyTag::Wh | VarietyTag::Idcrl) {
        return Err(FactoryError::UnsupportedVariety(tag));
    }
    if size > config.cap {
        return Err(FactoryError::CapExceeded {
            size,
            cap: config.cap,
        });
    }
    if size == 0 {
        return Ok(Vec::new());
    }
    let mut out = Vec::new();
    for skeleton in distributive_lattices(size) {
        let autos = skeleton.automorphisms();
        let prods = if tag == VarietyTag::Wh {
            vec![skeleton.meet.clone()]
        } else {
            monoid_tables(&skeleton)
        };
        let imps = implication_tables(&skeleton);
        let mut classes: BTreeMap<(Vec<Element>, Vec<Element>), FiniteAlgebra> = BTreeMap::new();
        for prod in &prods {
            for imp in &imps {
                let alg = FiniteAlgebra::new(
                    skeleton.meet.clone(),
                    skeleton.join.clone(),
                    prod.clone(),
                    imp.clone(),
                    size - 1,
                    Some(0),
                )
                .expect("skeleton is a lattice");
                if !varieties::satisfies(&alg, VarietyTag::Dlcmi) {
                    continue;
                }
                if tag != VarietyTag::Dlcmi && !varieties::satisfies(&alg, tag) {
                    continue;
                }
                let (key, perm) = autos
                    .iter()
                    .map(|p| {
                        let t = alg.permuted(p);
                        (
                            (
                                t.table(Op::Prod).cells().to_vec(),
                                t.table(Op::Imp).cells().to_vec(),
                            ),
                            p,
                        )
                    })
                    .min()
                    .expect("identity automorphism");
                classes.entry(key).or_insert_with(|| alg.permuted(perm));
            }
        }
        out.extend(classes.into_values());
    }
    Ok(out
        .into_iter()
        .enumerate()
        .map(|(i, alg)| alg.with_name(format!("{tag}:{size}#{i}")))
        .collect())
}

/// Commutative, associative tables with unit at the top, `x·y ≤ x∧y`, and
/// `(x∨y)·z = x·z ∨ y·z`.
fn monoid_tables(sk: &LatticeSkeleton) -> Vec<Table> {
    let m = sk.size;
    let top = m - 1;
    let cells: Vec<(usize, usize)> = (0..top)
        .flat_map(|i| (i..top).map(move |j| (i, j)))
        .collect();
    let mut table = vec![0; m * m];
    for x in 0..m {
        table[x * m + top] = x;
        table[top * m + x] = x;
    }
    let mut out = Vec::new();
    fn go(
        sk: &LatticeSkeleton,
        cells: &[(usize, usize)],
        idx: usize,
        table: &mut Vec<usize>,
        out: &mut Vec<Table>,
    ) {
        let m = sk.size;
        if idx == cells.len() {
            let get = |x: usize, y: usize| table[x * m + y];
            for x in 0..m {
                for y in 0..m {
                    for z in 0..m {
                        if get(x, get(y, z)) != get(get(x, y), z) {
                            return;
                        }
                        if get(sk.join.get(x, y), z) != sk.join.get(get(x, z), get(y, z)) {
                            return;
                        }
                    }
                }
            }
            out.push(Table::from_fn(m, get));
            return;
        }
        let (i, j) = cells[idx];
        let bound = sk.meet.get(i, j);
        for v in (0..m).filter(|&v| sk.leq(v, bound)) {
            table[i * m + j] = v;
            table[j * m + i] = v;
            go(sk, cells, idx + 1, table, out);
        }
    }
    go(sk, &cells, 0, &mut table, &mut out);
    out
}

/// Implication tables satisfying `a→(b∧c) = (a→b)∧(a→c)`,
/// `(a∨b)→c = (a→c)∧(b→c)` and `a→a = 1`.
fn implication_tables(sk: &LatticeSkeleton) -> Vec<Table> {
    let m = sk.size;
    let top = m - 1;
    let ji = sk.join_irreducibles();
    let mi = sk.meet_irreducibles();
    // grid[r][c] = ji[r] → mi[c]; cells with ji[r] ≤ mi[c] are pinned to the top
    let rows = ji.len();
    let cols = mi.len();
    let mut grid = vec![vec![None; cols]; rows];
    let mut free = Vec::new();
    for r in 0..rows {
        for c in 0..cols {
            if sk.leq(ji[r], mi[c]) {
                grid[r][c] = Some(top);
            } else {
                free.push((r, c));
            }
        }
    }
    let mut out = Vec::new();

    struct Ctx<'a> {
        sk: &'a LatticeSkeleton,
        ji: &'a [Element],
        mi: &'a [Element],
        free: &'a [(usize, usize)],
    }

    fn admissible(
        ctx: &Ctx,
        grid: &[Vec<Option<Element>>],
        r: usize,
        c: usize,
        v: Element,
    ) -> bool {
        let sk = ctx.sk;
        for (r2, row) in grid.iter().enumerate() {
            for (c2, cell) in row.iter().enumerate() {
                let Some(w) = *cell else { continue };
                if (r2, c2) == (r, c) {
                    continue;
                }
                let j_le = |a: usize, b: usize| sk.leq(ctx.ji[a], ctx.ji[b]);
                let n_le = |a: usize, b: usize| sk.leq(ctx.mi[a], ctx.mi[b]);
                // antitone in the first coordinate, monotone in the second
                if j_le(r2, r) && n_le(c, c2) && !sk.leq(v, w) {
                    return false;
                }
                if j_le(r, r2) && n_le(c2, c) && !sk.leq(w, v) {
                    return false;
                }
            }
        }
        true
    }

    fn go(ctx: &Ctx, grid: &mut Vec<Vec<Option<Element>>>, idx: usize, out: &mut Vec<Table>) {
        let sk = ctx.sk;
        let m = sk.size;
        if idx == ctx.free.len() {
            let top = m - 1;
            let table = Table::from_fn(m, |a, c| {
                let mut acc = top;
                for (r, &j) in ctx.ji.iter().enumerate() {
                    if !sk.leq(j, a) {
                        continue;
                    }
                    for (col, &n) in ctx.mi.iter().enumerate() {
                        if sk.leq(c, n) {
                            acc = sk.meet.get(acc, grid[r][col].expect("filled"));
                        }
                    }
                }
                acc
            });
            out.push(table);
            return;
        }
        let (r, c) = ctx.free[idx];
        for v in 0..m {
            if admissible(ctx, grid, r, c, v) {
                grid[r][c] = Some(v);
                go(ctx, grid, idx + 1, out);
                grid[r][c] = None;
            }
        }
    }

    let ctx = Ctx {
        sk,
        ji: &ji,
        mi: &mi,
        free: &free,
    };
    go(&ctx, &mut grid, 0, &mut out);
    out
}
