//! Shared corpus and independent oracles for the integration tests.
//!
//! The brute-force enumerator here shares no code with the library's
//! enumeration: it builds order relations from scratch, checks the DLCMI
//! axioms with its own table lookups and dedupes by the minimum over all
//! carrier permutations.

#![allow(dead_code, clippy::needless_range_loop)]

use std::collections::BTreeSet;
use std::sync::OnceLock;

use dlcmi::factory::{self, enumerate};
use dlcmi::{FiniteAlgebra, Op, Table, VarietyTag};

/// Every enumerated DLCMI algebra of size 1..=4.
pub fn corpus() -> &'static [FiniteAlgebra] {
    static CORPUS: OnceLock<Vec<FiniteAlgebra>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        (1..=4)
            .flat_map(|m| enumerate(m, VarietyTag::Dlcmi).unwrap())
            .collect()
    })
}

pub fn enumerated(tag: VarietyTag) -> Vec<FiniteAlgebra> {
    (1..=4).flat_map(|m| enumerate(m, tag).unwrap()).collect()
}

/// The hand-named algebras used throughout.
pub fn named() -> Vec<FiniteAlgebra> {
    vec![
        factory::mv_chain(3),
        factory::wh_trivial_chain(3),
        factory::ex1(),
        factory::mv_chain(4),
        factory::boolean(2),
        factory::singleton(),
    ]
}

/// Plain tables, indexed `t[x][y]`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Tables {
    pub m: usize,
    pub meet: Vec<Vec<usize>>,
    pub join: Vec<Vec<usize>>,
    pub prod: Vec<Vec<usize>>,
    pub imp: Vec<Vec<usize>>,
    pub unit: usize,
    pub bottom: Option<usize>,
}

impl Tables {
    pub fn of(alg: &FiniteAlgebra) -> Self {
        Tables {
            m: alg.size(),
            meet: alg.table(Op::Meet).rows(),
            join: alg.table(Op::Join).rows(),
            prod: alg.table(Op::Prod).rows(),
            imp: alg.table(Op::Imp).rows(),
            unit: alg.unit(),
            bottom: alg.bottom(),
        }
    }

    pub fn build(&self) -> FiniteAlgebra {
        FiniteAlgebra::new(
            Table::from_rows(&self.meet),
            Table::from_rows(&self.join),
            Table::from_rows(&self.prod),
            Table::from_rows(&self.imp),
            self.unit,
            self.bottom,
        )
        .unwrap()
    }

    fn le(&self, x: usize, y: usize) -> bool {
        self.meet[x][y] == x
    }

    /// `p` maps old indices to new ones.
    pub fn permute(&self, p: &[usize]) -> Tables {
        let m = self.m;
        let perm_table = |t: &Vec<Vec<usize>>| {
            let mut out = vec![vec![0; m]; m];
            for x in 0..m {
                for y in 0..m {
                    out[p[x]][p[y]] = p[t[x][y]];
                }
            }
            out
        };
        Tables {
            m,
            meet: perm_table(&self.meet),
            join: perm_table(&self.join),
            prod: perm_table(&self.prod),
            imp: perm_table(&self.imp),
            unit: p[self.unit],
            bottom: self.bottom.map(|b| p[b]),
        }
    }

    /// Least relabelling over all `m!` permutations.
    pub fn canonical(&self) -> Tables {
        all_permutations(self.m)
            .iter()
            .map(|p| self.permute(p))
            .min()
            .unwrap()
    }
}

pub fn all_permutations(m: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in all_permutations(m - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, m - 1);
            out.push(q);
        }
    }
    out
}

/// Lattice laws plus distributivity, straight from the definitions.
pub fn oracle_is_distributive_lattice(t: &Tables) -> bool {
    let r = 0..t.m;
    for x in r.clone() {
        if t.meet[x][x] != x || t.join[x][x] != x {
            return false;
        }
        for y in r.clone() {
            if t.meet[x][y] != t.meet[y][x] || t.join[x][y] != t.join[y][x] {
                return false;
            }
            if t.meet[x][t.join[x][y]] != x || t.join[x][t.meet[x][y]] != x {
                return false;
            }
            for z in r.clone() {
                if t.meet[x][t.meet[y][z]] != t.meet[t.meet[x][y]][z]
                    || t.join[x][t.join[y][z]] != t.join[t.join[x][y]][z]
                    || t.meet[x][t.join[y][z]] != t.join[t.meet[x][y]][t.meet[x][z]]
                {
                    return false;
                }
            }
        }
    }
    true
}

/// The DLCMI axioms, evaluated directly on the tables.
pub fn oracle_is_dlcmi(t: &Tables) -> bool {
    if !oracle_is_distributive_lattice(t) {
        return false;
    }
    let (p, i, one) = (&t.prod, &t.imp, t.unit);
    let r = 0..t.m;
    for x in r.clone() {
        if !t.le(x, one) || p[x][one] != x || i[x][x] != one {
            return false;
        }
        for y in r.clone() {
            if p[x][y] != p[y][x] {
                return false;
            }
            for z in r.clone() {
                let ok = p[x][p[y][z]] == p[p[x][y]][z]
                    && t.meet[i[x][y]][i[x][z]] == i[x][t.meet[y][z]]
                    && t.meet[i[x][z]][i[y][z]] == i[t.join[x][y]][z]
                    && p[t.join[x][y]][z] == t.join[p[x][z]][p[y][z]]
                    && t.le(p[i[x][y]][i[y][z]], i[x][z])
                    && t.le(i[x][y], i[p[x][z]][p[y][z]]);
                if !ok {
                    return false;
                }
            }
        }
    }
    true
}

/// Residuation `x·y ≤ z ⇔ x ≤ y→z` on top of DLCMI (integrality is part of DLCMI).
pub fn oracle_is_idcrl(t: &Tables) -> bool {
    oracle_is_dlcmi(t)
        && (0..t.m).all(|x| {
            (0..t.m).all(|y| (0..t.m).all(|z| t.le(t.prod[x][y], z) == t.le(x, t.imp[y][z])))
        })
}

pub fn oracle_is_wh_presentation(t: &Tables) -> bool {
    t.bottom.is_some() && t.prod == t.meet && oracle_is_dlcmi(t)
}

/// Distributive lattice orders on `0..m` with 0 least and `m-1` greatest,
/// found by trying every relation between the middle elements.
pub fn labelled_distributive_lattices(m: usize) -> Vec<Tables> {
    if m == 1 {
        return vec![Tables {
            m,
            meet: vec![vec![0]],
            join: vec![vec![0]],
            prod: vec![vec![0]],
            imp: vec![vec![0]],
            unit: 0,
            bottom: Some(0),
        }];
    }
    let middle: Vec<(usize, usize)> = (1..m - 1)
        .flat_map(|x| (1..m - 1).map(move |y| (x, y)))
        .filter(|(x, y)| x != y)
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..(1 << middle.len()) {
        let mut le = vec![vec![false; m]; m];
        for x in 0..m {
            le[x][x] = true;
            le[0][x] = true;
            le[x][m - 1] = true;
        }
        for (bit, &(x, y)) in middle.iter().enumerate() {
            if mask >> bit & 1 == 1 {
                le[x][y] = true;
            }
        }
        let antisymmetric = (0..m).all(|x| (0..m).all(|y| x == y || !(le[x][y] && le[y][x])));
        let transitive =
            (0..m).all(|x| (0..m).all(|y| (0..m).all(|z| !(le[x][y] && le[y][z]) || le[x][z])));
        if !antisymmetric || !transitive {
            continue;
        }
        let bound = |x: usize, y: usize, lower: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..m)
                .filter(|&z| {
                    if lower {
                        le[z][x] && le[z][y]
                    } else {
                        le[x][z] && le[y][z]
                    }
                })
                .collect();
            cands.iter().copied().find(|&z| {
                cands
                    .iter()
                    .all(|&w| if lower { le[w][z] } else { le[z][w] })
            })
        };
        let mut meet = vec![vec![0; m]; m];
        let mut join = vec![vec![0; m]; m];
        let mut lattice = true;
        for x in 0..m {
            for y in 0..m {
                match (bound(x, y, true), bound(x, y, false)) {
                    (Some(a), Some(b)) => {
                        meet[x][y] = a;
                        join[x][y] = b;
                    }
                    _ => lattice = false,
                }
            }
        }
        if !lattice {
            continue;
        }
        let t = Tables {
            m,
            meet: meet.clone(),
            join,
            prod: meet,
            imp: vec![vec![m - 1; m]; m],
            unit: m - 1,
            bottom: Some(0),
        };
        if oracle_is_distributive_lattice(&t) {
            out.push(t);
        }
    }
    out
}

fn all_functions(m: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![vec![]];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..m).map(move |x| {
                    let mut w = v.clone();
                    w.push(x);
                    w
                })
            })
            .collect();
    }
    out
}

/// Commutative products with unit `m-1`, associative and distributing over joins.
fn brute_products(lat: &Tables) -> Vec<Vec<Vec<usize>>> {
    let m = lat.m;
    let top = m - 1;
    let cells: Vec<(usize, usize)> = (0..top)
        .flat_map(|x| (x..top).map(move |y| (x, y)))
        .collect();
    let mut out = Vec::new();
    for values in all_functions(m, cells.len()) {
        let mut p = vec![vec![0; m]; m];
        for x in 0..m {
            p[x][top] = x;
            p[top][x] = x;
        }
        for (&(x, y), &v) in cells.iter().zip(&values) {
            p[x][y] = v;
            p[y][x] = v;
        }
        let ok = (0..m).all(|x| {
            (0..m).all(|y| {
                (0..m).all(|z| {
                    p[x][p[y][z]] == p[p[x][y]][z]
                        && p[lat.join[x][y]][z] == lat.join[p[x][z]][p[y][z]]
                })
            })
        });
        if ok {
            out.push(p);
        }
    }
    out
}

/// Implications: each row `y ↦ x→y` sends `x` to the top and preserves
/// meets; whole tables turn joins in the first argument into meets.
fn brute_implications(lat: &Tables) -> Vec<Vec<Vec<usize>>> {
    let m = lat.m;
    let top = m - 1;
    let rows: Vec<Vec<Vec<usize>>> = (0..m)
        .map(|x| {
            all_functions(m, m)
                .into_iter()
                .filter(|r| {
                    r[x] == top
                        && (0..m).all(|y| (0..m).all(|z| r[lat.meet[y][z]] == lat.meet[r[y]][r[z]]))
                })
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    let mut chosen: Vec<Vec<usize>> = Vec::new();
    fn go(
        lat: &Tables,
        rows: &[Vec<Vec<usize>>],
        chosen: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
    ) {
        let m = lat.m;
        let k = chosen.len();
        if k == m {
            out.push(chosen.clone());
            return;
        }
        for r in &rows[k] {
            chosen.push(r.clone());
            // every instance of (x→z)∧(y→z) = (x∨y)→z whose rows are all chosen
            let ok = (0..=k).all(|x| {
                (0..=k).all(|y| {
                    let j = lat.join[x][y];
                    j > k || (0..m).all(|z| lat.meet[chosen[x][z]][chosen[y][z]] == chosen[j][z])
                })
            });
            if ok {
                go(lat, rows, chosen, out);
            }
            chosen.pop();
        }
    }
    go(lat, &rows, &mut chosen, &mut out);
    out
}

/// DLCMI algebras of size `m` up to isomorphism, as canonical tables.
pub fn brute_force_dlcmi(m: usize) -> BTreeSet<Tables> {
    let mut classes = BTreeSet::new();
    for lat in labelled_distributive_lattices(m) {
        let imps = brute_implications(&lat);
        for prod in brute_products(&lat) {
            for imp in &imps {
                let t = Tables {
                    prod: prod.clone(),
                    imp: imp.clone(),
                    ..lat.clone()
                };
                if oracle_is_dlcmi(&t) {
                    classes.insert(t.canonical());
                }
            }
        }
    }
    classes
}

/// Every 2-element structure with arbitrary tables and unit, kept when it is
/// a DLCMI algebra; up to isomorphism. The bottom is the least element.
pub fn unpruned_two_element_dlcmi() -> BTreeSet<Tables> {
    let tables: Vec<Vec<Vec<usize>>> = all_functions(2, 4)
        .into_iter()
        .map(|v| vec![vec![v[0], v[1]], vec![v[2], v[3]]])
        .collect();
    let mut classes = BTreeSet::new();
    for meet in &tables {
        for join in &tables {
            let lat = Tables {
                m: 2,
                meet: meet.clone(),
                join: join.clone(),
                prod: meet.clone(),
                imp: meet.clone(),
                unit: 0,
                bottom: None,
            };
            if !oracle_is_distributive_lattice(&lat) {
                continue;
            }
            for prod in &tables {
                for imp in &tables {
                    for unit in 0..2 {
                        let bottom = (0..2).find(|&b| (0..2).all(|x| meet[b][x] == b));
                        let t = Tables {
                            prod: prod.clone(),
                            imp: imp.clone(),
                            unit,
                            bottom,
                            ..lat.clone()
                        };
                        if oracle_is_dlcmi(&t) {
                            classes.insert(t.canonical());
                        }
                    }
                }
            }
        }
    }
    classes
}

/// Canonical tables of the library's enumeration, for comparison with the oracles.
pub fn canonical_set(algs: &[FiniteAlgebra]) -> BTreeSet<Tables> {
    algs.iter()
        .map(|a| {
            let mut t = Tables::of(a);
            t.bottom = t
                .bottom
                .or_else(|| (0..t.m).find(|&b| (0..t.m).all(|x| t.le(b, x))));
            t.canonical()
        })
        .collect()
}

/// A random unary polynomial: a term over the basic operations in one
/// variable and constants, evaluated pointwise.
pub fn random_polynomial(
    alg: &FiniteAlgebra,
    rng: &mut impl rand::Rng,
    depth: usize,
) -> Vec<usize> {
    let m = alg.size();
    if depth == 0 || rng.gen_bool(0.25) {
        return if rng.gen_bool(0.5) {
            (0..m).collect()
        } else {
            vec![rng.gen_range(0..m); m]
        };
    }
    let op = Op::ALL[rng.gen_range(0..4)];
    let l = random_polynomial(alg, rng, depth - 1);
    let r = random_polynomial(alg, rng, depth - 1);
    (0..m).map(|x| alg.apply(op, l[x], r[x])).collect()
}
