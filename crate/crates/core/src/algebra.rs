//! Finite algebras of type (2,2,2,2,0) with an optional bottom constant.
//!
//! The carrier is always `0..size`. Every operation is stored as a dense
//! row-major table, and the lattice order is derived from the meet table.
//! Construction only validates the lattice laws; everything else (monoid
//! laws, implication axioms) is left to [`crate::varieties`] so that
//! near-miss algebras can still be represented and tested against.

use std::fmt;

use thiserror::Error;

/// A carrier index.
pub type Element = usize;

/// Which of the four basic binary operations.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    Meet,
    Join,
    Prod,
    Imp,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::Meet, Op::Join, Op::Prod, Op::Imp];

    pub fn name(self) -> &'static str {
        match self {
            Op::Meet => "meet",
            Op::Join => "join",
            Op::Prod => "prod",
            Op::Imp => "imp",
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("carrier size must be positive")]
    EmptyCarrier,
    #[error("{op} table has {found} entries, expected {expected}")]
    TableShape {
        op: &'static str,
        expected: usize,
        found: usize,
    },
    #[error("{op}({x},{y}) = {value} is outside the carrier 0..{size}")]
    EntryOutOfRange {
        op: &'static str,
        x: Element,
        y: Element,
        value: Element,
        size: usize,
    },
    #[error("{what} = {value} is outside the carrier 0..{size}")]
    ConstantOutOfRange {
        what: &'static str,
        value: Element,
        size: usize,
    },
    #[error("lattice law `{law}` fails at {witness:?}")]
    NotALattice {
        law: &'static str,
        witness: Vec<Element>,
    },
    #[error("bottom {bottom} is not below {x}")]
    BottomNotLeast { bottom: Element, x: Element },
}

/// A dense `size × size` operation table.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Table {
    size: usize,
    cells: Vec<Element>,
}

impl Table {
    pub fn from_fn(size: usize, f: impl Fn(Element, Element) -> Element) -> Self {
        let mut cells = Vec::with_capacity(size * size);
        for x in 0..size {
            for y in 0..size {
                cells.push(f(x, y));
            }
        }
        Table { size, cells }
    }

    pub fn from_rows(rows: &[Vec<Element>]) -> Self {
        let size = rows.len();
        Table {
            size,
            cells: rows.iter().flatten().copied().collect(),
        }
    }

    #[inline]
    pub fn get(&self, x: Element, y: Element) -> Element {
        self.cells[x * self.size + y]
    }

    pub fn rows(&self) -> Vec<Vec<Element>> {
        if self.size == 0 {
            return Vec::new();
        }
        self.cells.chunks(self.size).map(<[_]>::to_vec).collect()
    }

    pub fn cells(&self) -> &[Element] {
        &self.cells
    }

    /// The table transported along a carrier bijection `perm` (old index ↦ new index).
    pub fn permuted(&self, perm: &[Element]) -> Table {
        let mut cells = vec![0; self.cells.len()];
        for x in 0..self.size {
            for y in 0..self.size {
                cells[perm[x] * self.size + perm[y]] = perm[self.get(x, y)];
            }
        }
        Table {
            size: self.size,
            cells,
        }
    }
}

impl fmt::Debug for Table {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.rows()).finish()
    }
}

/// A finite algebra `(A, ∧, ∨, ·, →, 1)` with an optional least element `0`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteAlgebra {
    size: usize,
    meet: Table,
    join: Table,
    prod: Table,
    imp: Table,
    unit: Element,
    bottom: Option<Element>,
    name: Option<String>,
}

impl fmt::Debug for FiniteAlgebra {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteAlgebra")
            .field("name", &self.name)
            .field("size", &self.size)
            .field("prod", &self.prod)
            .field("imp", &self.imp)
            .field("unit", &self.unit)
            .field("bottom", &self.bottom)
            .finish_non_exhaustive()
    }
}

impl FiniteAlgebra {
    /// Builds an algebra, rejecting out-of-range entries and non-lattices.
    pub fn new(
        meet: Table,
        join: Table,
        prod: Table,
        imp: Table,
        unit: Element,
        bottom: Option<Element>,
    ) -> Result<Self, AlgebraError> {
        let size = meet.size;
        if size == 0 {
            return Err(AlgebraError::EmptyCarrier);
        }
        for (op, table) in [
            (Op::Meet, &meet),
            (Op::Join, &join),
            (Op::Prod, &prod),
            (Op::Imp, &imp),
        ] {
            if table.size != size || table.cells.len() != size * size {
                return Err(AlgebraError::TableShape {
                    op: op.name(),
                    expected: size * size,
                    found: table.cells.len(),
                });
            }
            for x in 0..size {
                for y in 0..size {
                    let value = table.get(x, y);
                    if value >= size {
                        return Err(AlgebraError::EntryOutOfRange {
                            op: op.name(),
                            x,
                            y,
                            value,
                            size,
                        });
                    }
                }
            }
        }
        if unit >= size {
            return Err(AlgebraError::ConstantOutOfRange {
                what: "unit",
                value: unit,
                size,
            });
        }
        if let Some(b) = bottom {
            if b >= size {
                return Err(AlgebraError::ConstantOutOfRange {
                    what: "bottom",
                    value: b,
                    size,
                });
            }
        }
        let alg = FiniteAlgebra {
            size,
            meet,
            join,
            prod,
            imp,
            unit,
            bottom,
            name: None,
        };
        alg.validate_lattice()?;
        if let Some(b) = bottom {
            if let Some(x) = (0..size).find(|&x| !alg.leq(b, x)) {
                return Err(AlgebraError::BottomNotLeast { bottom: b, x });
            }
        }
        Ok(alg)
    }

    /// Convenience constructor from closures.
    pub fn from_fns(
        size: usize,
        meet: impl Fn(Element, Element) -> Element,
        join: impl Fn(Element, Element) -> Element,
        prod: impl Fn(Element, Element) -> Element,
        imp: impl Fn(Element, Element) -> Element,
        unit: Element,
        bottom: Option<Element>,
    ) -> Result<Self, AlgebraError> {
        FiniteAlgebra::new(
            Table::from_fn(size, meet),
            Table::from_fn(size, join),
            Table::from_fn(size, prod),
            Table::from_fn(size, imp),
            unit,
            bottom,
        )
    }

    fn validate_lattice(&self) -> Result<(), AlgebraError> {
        let m = self.size;
        let fail = |law, witness: Vec<Element>| Err(AlgebraError::NotALattice { law, witness });
        for x in 0..m {
            if self.meet(x, x) != x {
                return fail("meet idempotent", vec![x]);
            }
            if self.join(x, x) != x {
                return fail("join idempotent", vec![x]);
            }
            for y in 0..m {
                if self.meet(x, y) != self.meet(y, x) {
                    return fail("meet commutative", vec![x, y]);
                }
                if self.join(x, y) != self.join(y, x) {
                    return fail("join commutative", vec![x, y]);
                }
                if self.meet(x, self.join(x, y)) != x {
                    return fail("absorption x∧(x∨y) = x", vec![x, y]);
                }
                if self.join(x, self.meet(x, y)) != x {
                    return fail("absorption x∨(x∧y) = x", vec![x, y]);
                }
                for z in 0..m {
                    if self.meet(x, self.meet(y, z)) != self.meet(self.meet(x, y), z) {
                        return fail("meet associative", vec![x, y, z]);
                    }
                    if self.join(x, self.join(y, z)) != self.join(self.join(x, y), z) {
                        return fail("join associative", vec![x, y, z]);
                    }
                }
            }
        }
        Ok(())
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn elements(&self) -> std::ops::Range<Element> {
        0..self.size
    }

    pub fn unit(&self) -> Element {
        self.unit
    }

    pub fn bottom(&self) -> Option<Element> {
        self.bottom
    }

    pub fn table(&self, op: Op) -> &Table {
        match op {
            Op::Meet => &self.meet,
            Op::Join => &self.join,
            Op::Prod => &self.prod,
            Op::Imp => &self.imp,
        }
    }

    #[inline]
    pub fn apply(&self, op: Op, x: Element, y: Element) -> Element {
        self.table(op).get(x, y)
    }

    #[inline]
    pub fn meet(&self, x: Element, y: Element) -> Element {
        self.meet.get(x, y)
    }

    #[inline]
    pub fn join(&self, x: Element, y: Element) -> Element {
        self.join.get(x, y)
    }

    #[inline]
    pub fn prod(&self, x: Element, y: Element) -> Element {
        self.prod.get(x, y)
    }

    #[inline]
    pub fn imp(&self, x: Element, y: Element) -> Element {
        self.imp.get(x, y)
    }

    /// `x ≤ y` iff `x ∧ y = x`.
    #[inline]
    pub fn leq(&self, x: Element, y: Element) -> bool {
        self.meet(x, y) == x
    }

    /// The greatest element of the lattice reduct.
    pub fn top(&self) -> Element {
        (0..self.size).fold(0, |acc, x| self.join(acc, x))
    }

    /// The least element of the lattice reduct (not necessarily the `bottom` constant).
    pub fn least(&self) -> Element {
        (0..self.size).fold(0, |acc, x| self.meet(acc, x))
    }

    /// `x^n` under `·`, with `x^0 = 1`.
    pub fn power(&self, x: Element, n: usize) -> Element {
        (0..n).fold(self.unit, |acc, _| self.prod(x, acc))
    }

    /// `□^n(x)` where `□y = 1 → y`.
    pub fn box_n(&self, x: Element, n: usize) -> Element {
        (0..n).fold(x, |acc, _| self.imp(self.unit, acc))
    }

    /// `x ↔ y = (x → y) ∧ (y → x)`.
    pub fn biimp(&self, x: Element, y: Element) -> Element {
        self.meet(self.imp(x, y), self.imp(y, x))
    }

    /// `¬x = x → 0`; `None` when the algebra has no bottom.
    pub fn neg(&self, x: Element) -> Option<Element> {
        self.bottom.map(|b| self.imp(x, b))
    }

    /// `t_n(a,b)`: the meet of `□^i(a ↔ b)` for `i = 0..=n`.
    pub fn t_term(&self, a: Element, b: Element, n: usize) -> Element {
        let e = self.biimp(a, b);
        let mut acc = e;
        let mut boxed = e;
        for _ in 0..n {
            boxed = self.imp(self.unit, boxed);
            acc = self.meet(acc, boxed);
        }
        acc
    }

    /// `t_n^k(a,b) = (t_n(a,b))^k`.
    pub fn t_pow(&self, a: Element, b: Element, n: usize, k: usize) -> Element {
        self.power(self.t_term(a, b, n), k)
    }

    /// Evaluates the `i`-th pair `(u_{i,n,k}, v_{i,n,k})` of the quaternary
    /// terms that define principal congruences, `i ∈ 1..=5`.
    ///
    /// Panics if `i` is outside `1..=5`.
    #[allow(clippy::too_many_arguments)]
    pub fn eval_qt(
        &self,
        i: usize,
        n: usize,
        k: usize,
        x1: Element,
        x2: Element,
        y1: Element,
        y2: Element,
    ) -> (Element, Element) {
        let t = self.t_pow(x1, x2, n, k);
        let lo = self.meet(x1, x2);
        let hi = self.join(x1, x2);
        match i {
            1 => {
                let v = self.meet(y2, lo);
                (self.join(self.prod(t, self.meet(y1, lo)), v), v)
            }
            2 => {
                let v = self.meet(y1, lo);
                (self.join(self.prod(t, self.meet(y2, lo)), v), v)
            }
            3 => {
                let v = self.join(y2, hi);
                (self.join(self.prod(t, self.join(y1, hi)), v), v)
            }
            4 => {
                let v = self.join(y1, hi);
                (self.join(self.prod(t, self.join(y2, hi)), v), v)
            }
            5 => {
                let v = self.biimp(y1, y2);
                (self.join(t, v), v)
            }
            _ => panic!("quaternary term index {i} outside 1..=5"),
        }
    }

    /// Least `(N, K)` such that `t_n^k(a,b) = t_N^K(a,b)` for all `n ≥ N`, `k ≥ K`.
    ///
    /// `t_n` is a descending chain in any lattice, and the `□`-orbit of
    /// `a ↔ b` has at most `size` distinct values, so `N < size`. The powers of
    /// `t_N` become constant as soon as two consecutive ones agree; if that
    /// never happens within `size` steps (impossible when `x·y ≤ y`), `K` is
    /// capped at `size`.
    pub fn stabilization_bounds(&self, a: Element, b: Element) -> (usize, usize) {
        let m = self.size;
        let terms: Vec<Element> = (0..m).map(|n| self.t_term(a, b, n)).collect();
        let last = terms[m - 1];
        let n_stable = terms.iter().position(|&t| t == last).unwrap_or(m - 1);
        let t = last;
        let mut p = self.unit;
        for k in 0..m {
            let next = self.prod(t, p);
            if next == p {
                return (n_stable, k);
            }
            p = next;
        }
        (n_stable, m)
    }

    /// The stabilized value `t_N^K(a,b)`, the least value `t_n^k(a,b)` takes
    /// when the powers descend.
    pub fn t_floor(&self, a: Element, b: Element) -> Element {
        let (n, k) = self.stabilization_bounds(a, b);
        self.t_pow(a, b, n, k)
    }

    /// Element label: `0, a, 1` on three-element chains, indices otherwise.
    pub fn element_label(&self, x: Element) -> String {
        if self.size == 3 && self.is_chain() {
            let bottom = self.least();
            let top = self.top();
            return if x == bottom {
                "0".into()
            } else if x == top {
                "1".into()
            } else {
                "a".into()
            };
        }
        x.to_string()
    }

    pub fn is_chain(&self) -> bool {
        (0..self.size).all(|x| (0..self.size).all(|y| self.leq(x, y) || self.leq(y, x)))
    }

    /// The algebra transported along `perm` (old index ↦ new index).
    pub fn permuted(&self, perm: &[Element]) -> FiniteAlgebra {
        FiniteAlgebra {
            size: self.size,
            meet: self.meet.permuted(perm),
            join: self.join.permuted(perm),
            prod: self.prod.permuted(perm),
            imp: self.imp.permuted(perm),
            unit: perm[self.unit],
            bottom: self.bottom.map(|b| perm[b]),
            name: self.name.clone(),
        }
    }

    /// Same carrier and tables with a replacement `·` table, which must stay in range.
    pub fn with_prod(&self, prod: Table) -> Result<FiniteAlgebra, AlgebraError> {
        let mut alg = FiniteAlgebra::new(
            self.meet.clone(),
            self.join.clone(),
            prod,
            self.imp.clone(),
            self.unit,
            self.bottom,
        )?;
        alg.name = self.name.clone();
        Ok(alg)
    }

    pub fn with_imp(&self, imp: Table) -> Result<FiniteAlgebra, AlgebraError> {
        let mut alg = FiniteAlgebra::new(
            self.meet.clone(),
            self.join.clone(),
            self.prod.clone(),
            imp,
            self.unit,
            self.bottom,
        )?;
        alg.name = self.name.clone();
        Ok(alg)
    }
}
