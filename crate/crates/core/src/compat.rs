//! Compatible functions and implicitly defined operations.
//!
//! A function is compatible when every congruence of the algebra is also a
//! congruence of the algebra expanded by it. [`is_compatible_oracle`] decides
//! this with the closure-based principal congruences; [`is_compatible_pcom`]
//! uses the `t_n^k` inequalities, available on DLCMI algebras.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Element, FiniteAlgebra};
use crate::congruence::{self, principal_oracle, Congruence, CongruenceError, RWitness};
use crate::varieties::{Failure, Tuples};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CompatError {
    #[error("function table has {found} entries, expected {expected}")]
    TableShape { expected: usize, found: usize },
    #[error("function arity must be at least 1")]
    ZeroArity,
    #[error(
        "function output {value} at position {position} is outside the carrier of size {size}"
    )]
    OutputOutOfRange {
        position: usize,
        value: Element,
        size: usize,
    },
    #[error("function is defined on a carrier of size {function}, algebra has size {algebra}")]
    SizeMismatch { function: usize, algebra: usize },
    #[error("expected a function of arity {expected}, got arity {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("slice index {index} out of range for arity {arity}")]
    IndexOutOfRange { index: usize, arity: usize },
    #[error("anchor has length {found}, expected {expected}")]
    AnchorLength { expected: usize, found: usize },
    #[error("algebra is not in DLCMI: axiom {} fails at {:?}", .0.axiom, .0.witness)]
    NotDlcmi(Failure),
    #[error("algebra is not in IDCRL: axiom {} fails at {:?}", .0.axiom, .0.witness)]
    NotIdcrl(Failure),
    #[error("algebra has no bottom element")]
    MissingBottom,
    #[error("the exponent n must be at least 1")]
    ZeroExponent,
    #[error("condition (M) fails: c={c} ≥ b={b} but g({a},{c}) ≰ g({a},{b})")]
    ConditionM { a: Element, b: Element, c: Element },
    #[error("no minimum at {element}: {kind}")]
    NoMinimum {
        element: Element,
        kind: NoMinimumKind,
    },
}

/// Why `{b : g(a,b) ≤ b}` has no least element.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum NoMinimumKind {
    Empty,
    /// Several minimal elements, listed in increasing index order.
    Incomparable(Vec<Element>),
}

impl fmt::Display for NoMinimumKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NoMinimumKind::Empty => f.write_str("the set is empty"),
            NoMinimumKind::Incomparable(ms) => write!(f, "incomparable minimal elements {ms:?}"),
        }
    }
}

impl From<CongruenceError> for CompatError {
    fn from(e: CongruenceError) -> Self {
        match e {
            CongruenceError::NotDlcmi(f) => CompatError::NotDlcmi(f),
            CongruenceError::NotIdcrl(f) => CompatError::NotIdcrl(f),
            other => unreachable!("unexpected congruence error {other}"),
        }
    }
}

/// A total function `A^arity → A`, stored row-major with the first argument
/// most significant.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFunction {
    size: usize,
    arity: usize,
    table: Vec<Element>,
}

impl FiniteFunction {
    pub fn new(size: usize, arity: usize, table: Vec<Element>) -> Result<Self, CompatError> {
        if arity == 0 {
            return Err(CompatError::ZeroArity);
        }
        let expected = size.pow(arity as u32);
        if table.len() != expected {
            return Err(CompatError::TableShape {
                expected,
                found: table.len(),
            });
        }
        if let Some((position, &value)) = table.iter().enumerate().find(|(_, &v)| v >= size) {
            return Err(CompatError::OutputOutOfRange {
                position,
                value,
                size,
            });
        }
        Ok(FiniteFunction { size, arity, table })
    }

    pub fn unary(size: usize, table: Vec<Element>) -> Result<Self, CompatError> {
        FiniteFunction::new(size, 1, table)
    }

    pub fn from_fn1(size: usize, f: impl FnMut(Element) -> Element) -> Self {
        FiniteFunction::new(size, 1, (0..size).map(f).collect()).expect("outputs in range")
    }

    pub fn from_fn2(size: usize, f: impl Fn(Element, Element) -> Element) -> Self {
        let table = (0..size)
            .flat_map(|a| (0..size).map(move |b| (a, b)))
            .map(|(a, b)| f(a, b))
            .collect();
        FiniteFunction::new(size, 2, table).expect("outputs in range")
    }

    pub fn identity(size: usize) -> Self {
        FiniteFunction::from_fn1(size, |x| x)
    }

    pub fn constant(size: usize, c: Element) -> Self {
        FiniteFunction::from_fn1(size, |_| c)
    }

    /// Every unary function on a carrier of the given size, in lexicographic
    /// order of their tables.
    pub fn all_unary(size: usize) -> impl Iterator<Item = FiniteFunction> {
        Tuples::new(size, size).map(move |t| FiniteFunction {
            size,
            arity: 1,
            table: t,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn table(&self) -> &[Element] {
        &self.table
    }

    fn index(&self, args: &[Element]) -> usize {
        debug_assert_eq!(args.len(), self.arity);
        args.iter().fold(0, |acc, &x| acc * self.size + x)
    }

    pub fn apply(&self, args: &[Element]) -> Element {
        self.table[self.index(args)]
    }

    pub fn apply1(&self, x: Element) -> Element {
        self.table[x]
    }

    pub fn apply2(&self, x: Element, y: Element) -> Element {
        self.table[x * self.size + y]
    }

    fn expect_on(&self, alg: &FiniteAlgebra, arity: usize) -> Result<(), CompatError> {
        if self.size != alg.size() {
            return Err(CompatError::SizeMismatch {
                function: self.size,
                algebra: alg.size(),
            });
        }
        if self.arity != arity {
            return Err(CompatError::ArityMismatch {
                expected: arity,
                found: self.arity,
            });
        }
        Ok(())
    }
}

impl fmt::Debug for FiniteFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "FiniteFunction/{}{:?}", self.arity, self.table)
    }
}

/// Two argument tuples related componentwise by `congruence` whose images are not.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatWitness {
    pub left: Vec<Element>,
    pub right: Vec<Element>,
    pub congruence: Congruence,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompatReport {
    pub compatible: bool,
    pub witness: Option<CompatWitness>,
}

impl CompatReport {
    fn ok() -> Self {
        CompatReport {
            compatible: true,
            witness: None,
        }
    }

    fn unary_failure(alg: &FiniteAlgebra, a: Element, b: Element) -> Self {
        CompatReport {
            compatible: false,
            witness: Some(CompatWitness {
                left: vec![a],
                right: vec![b],
                congruence: principal_oracle(alg, a, b),
            }),
        }
    }
}

/// The unary map `x ↦ f(anchor[0], …, x, …)` with `x` at position `index` (0-based).
pub fn slice(
    f: &FiniteFunction,
    index: usize,
    anchor: &[Element],
) -> Result<FiniteFunction, CompatError> {
    if index >= f.arity {
        return Err(CompatError::IndexOutOfRange {
            index,
            arity: f.arity,
        });
    }
    if anchor.len() != f.arity {
        return Err(CompatError::AnchorLength {
            expected: f.arity,
            found: anchor.len(),
        });
    }
    let mut args = anchor.to_vec();
    Ok(FiniteFunction::from_fn1(f.size, |x| {
        args[index] = x;
        f.apply(&args)
    }))
}

/// Decides compatibility by checking `(f(a), f(b)) ∈ θ(a,b)`; an n-ary
/// function is compatible iff all its unary slices are.
pub fn is_compatible_oracle(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
) -> Result<CompatReport, CompatError> {
    f.expect_on(alg, f.arity)?;
    let m = alg.size();
    let thetas: Vec<Vec<Congruence>> = (0..m)
        .map(|a| (0..m).map(|b| principal_oracle(alg, a, b)).collect())
        .collect();
    if f.arity == 1 {
        for a in 0..m {
            for b in 0..m {
                if !thetas[a][b].relates(f.apply1(a), f.apply1(b)) {
                    return Ok(CompatReport {
                        compatible: false,
                        witness: Some(CompatWitness {
                            left: vec![a],
                            right: vec![b],
                            congruence: thetas[a][b].clone(),
                        }),
                    });
                }
            }
        }
        return Ok(CompatReport::ok());
    }
    for anchor in Tuples::new(m, f.arity) {
        for i in 0..f.arity {
            let a = anchor[i];
            for b in 0..m {
                let mut other = anchor.clone();
                other[i] = b;
                if !thetas[a][b].relates(f.apply(&anchor), f.apply(&other)) {
                    return Ok(CompatReport {
                        compatible: false,
                        witness: Some(CompatWitness {
                            left: anchor,
                            right: other,
                            congruence: thetas[a][b].clone(),
                        }),
                    });
                }
            }
        }
    }
    Ok(CompatReport::ok())
}

/// Which inequality closes the `t_n^k` compatibility conditions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Cf3Form {
    /// `t ≤ f(a) ↔ f(b)`
    #[default]
    Biimp,
    /// `t ≤ f(a) → f(b)`
    Imp,
}

fn pcom_holds(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
    form: Cf3Form,
    t: Element,
    a: Element,
    b: Element,
) -> bool {
    let (fa, fb) = (f.apply1(a), f.apply1(b));
    let lo = alg.meet(a, b);
    let hi = alg.join(a, b);
    let cf3 = match form {
        Cf3Form::Biimp => alg.biimp(fa, fb),
        Cf3Form::Imp => alg.imp(fa, fb),
    };
    alg.leq(alg.prod(t, alg.meet(fa, lo)), alg.meet(fb, lo))
        && alg.leq(alg.prod(t, alg.join(fa, hi)), alg.join(fb, hi))
        && alg.leq(t, cf3)
}

/// The least `(n, k)` satisfying the `t_n^k` compatibility conditions at `(a, b)`.
pub fn pcom_pair(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
    form: Cf3Form,
    a: Element,
    b: Element,
) -> Option<RWitness> {
    // the conditions weaken as t_n^k shrinks, so the stabilized value decides
    let (big_n, big_k) = alg.stabilization_bounds(a, b);
    if !pcom_holds(alg, f, form, alg.t_pow(a, b, big_n, big_k), a, b) {
        return None;
    }
    (0..=big_n)
        .flat_map(|n| (0..=big_k).map(move |k| RWitness { n, k }))
        .find(|w| pcom_holds(alg, f, form, alg.t_pow(a, b, w.n, w.k), a, b))
}

pub fn is_compatible_pcom(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
) -> Result<CompatReport, CompatError> {
    is_compatible_pcom_with(alg, f, Cf3Form::Biimp)
}

/// Compatibility of a unary function via the `t_n^k` conditions.
pub fn is_compatible_pcom_with(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
    form: Cf3Form,
) -> Result<CompatReport, CompatError> {
    f.expect_on(alg, 1)?;
    congruence::require_dlcmi(alg)?;
    for a in alg.elements() {
        for b in alg.elements() {
            if pcom_pair(alg, f, form, a, b).is_none() {
                return Ok(CompatReport::unary_failure(alg, a, b));
            }
        }
    }
    Ok(CompatReport::ok())
}

/// `s(a,b) = (a→b)·(b→a)`.
pub fn s_term(alg: &FiniteAlgebra, a: Element, b: Element) -> Element {
    alg.prod(alg.imp(a, b), alg.imp(b, a))
}

/// Compatibility on IDCRL algebras: for all `a, b` some `k ≤ size` has
/// `s(a,b)^k ≤ s(f(a), f(b))`.
pub fn idcrl_compat_s(
    alg: &FiniteAlgebra,
    f: &FiniteFunction,
) -> Result<CompatReport, CompatError> {
    f.expect_on(alg, 1)?;
    congruence::require_idcrl(alg)?;
    for a in alg.elements() {
        for b in alg.elements() {
            let s = s_term(alg, a, b);
            let target = s_term(alg, f.apply1(a), f.apply1(b));
            if !(0..=alg.size()).any(|k| alg.leq(alg.power(s, k), target)) {
                return Ok(CompatReport::unary_failure(alg, a, b));
            }
        }
    }
    Ok(CompatReport::ok())
}

/// A triple `(a, b, c)` with `c ≥ b` and `g(a,c) ≰ g(a,b)`, if any.
pub fn condition_m_witness(
    alg: &FiniteAlgebra,
    g: &FiniteFunction,
) -> Option<(Element, Element, Element)> {
    let m = alg.size();
    Tuples::new(m, 3)
        .map(|t| (t[0], t[1], t[2]))
        .find(|&(a, b, c)| alg.leq(b, c) && !alg.leq(g.apply2(a, c), g.apply2(a, b)))
}

/// `c ≥ b ⇒ g(a,c) ≤ g(a,b)` for all `a, b, c`.
pub fn check_condition_m(alg: &FiniteAlgebra, g: &FiniteFunction) -> bool {
    condition_m_witness(alg, g).is_none()
}

/// For each fixed second argument `b`, the map `a ↦ g(a,b)` is compatible.
pub fn is_compatible_in_first_variable(
    alg: &FiniteAlgebra,
    g: &FiniteFunction,
) -> Result<bool, CompatError> {
    g.expect_on(alg, 2)?;
    for b in alg.elements() {
        let slice = slice(g, 0, &[0, b])?;
        if !is_compatible_oracle(alg, &slice)?.compatible {
            return Ok(false);
        }
    }
    Ok(true)
}

fn least_of(
    alg: &FiniteAlgebra,
    set: &[Element],
    element: Element,
) -> Result<Element, CompatError> {
    if set.is_empty() {
        return Err(CompatError::NoMinimum {
            element,
            kind: NoMinimumKind::Empty,
        });
    }
    if let Some(&least) = set.iter().find(|&&x| set.iter().all(|&y| alg.leq(x, y))) {
        return Ok(least);
    }
    let minimal = set
        .iter()
        .copied()
        .filter(|&x| set.iter().all(|&y| y == x || !alg.leq(y, x)))
        .collect();
    Err(CompatError::NoMinimum {
        element,
        kind: NoMinimumKind::Incomparable(minimal),
    })
}

/// `a ↦ min{b : g(a,b) ≤ b}`; `g` must satisfy condition (M).
pub fn min_fixed(alg: &FiniteAlgebra, g: &FiniteFunction) -> Result<FiniteFunction, CompatError> {
    g.expect_on(alg, 2)?;
    if let Some((a, b, c)) = condition_m_witness(alg, g) {
        return Err(CompatError::ConditionM { a, b, c });
    }
    let mut table = Vec::with_capacity(alg.size());
    for a in alg.elements() {
        let set: Vec<Element> = alg
            .elements()
            .filter(|&b| alg.leq(g.apply2(a, b), b))
            .collect();
        table.push(least_of(alg, &set, a)?);
    }
    Ok(FiniteFunction::unary(alg.size(), table).expect("values from the carrier"))
}

/// `g(a,h(a)) ≤ h(a)` and `h(a) ≤ g(a,b) ∨ b` for all `a, b`.
pub fn lec_h_check(alg: &FiniteAlgebra, g: &FiniteFunction, h: &FiniteFunction) -> bool {
    alg.elements().all(|a| {
        let ha = h.apply1(a);
        alg.leq(g.apply2(a, ha), ha)
            && alg
                .elements()
                .all(|b| alg.leq(ha, alg.join(g.apply2(a, b), b)))
    })
}

/// The implicitly defined operations obtained as `min{b : g(a,b) ≤ b}`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ImplicitKind {
    /// `g(a,b) = a ∨ ¬(b^n)`
    Gamma,
    /// `g(a,b) = b^n → a`
    Successor,
    /// `g(a,b) = (b^n → a) ∧ ¬¬a`
    Gabbay,
}

impl ImplicitKind {
    pub fn as_str(self) -> &'static str {
        match self {
            ImplicitKind::Gamma => "gamma",
            ImplicitKind::Successor => "successor",
            ImplicitKind::Gabbay => "gabbay",
        }
    }

    fn needs_bottom(self) -> bool {
        !matches!(self, ImplicitKind::Successor)
    }
}

impl fmt::Display for ImplicitKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ImplicitKind {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "gamma" => Ok(ImplicitKind::Gamma),
            "successor" => Ok(ImplicitKind::Successor),
            "gabbay" => Ok(ImplicitKind::Gabbay),
            _ => Err(format!(
                "unknown operation '{s}' (expected gamma, successor or gabbay)"
            )),
        }
    }
}

/// One of the defining inequalities, checked for all arguments.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InequalityCheck {
    pub name: &'static str,
    /// First failing argument tuple, if any.
    pub counterexample: Option<Vec<Element>>,
}

impl InequalityCheck {
    pub fn holds(&self) -> bool {
        self.counterexample.is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ImplicitOp {
    pub kind: ImplicitKind,
    pub n: usize,
    pub function: FiniteFunction,
    pub checks: Vec<InequalityCheck>,
}

impl ImplicitOp {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(InequalityCheck::holds)
    }
}

/// The binary map whose least fixed points define the operation.
pub fn defining_map(
    alg: &FiniteAlgebra,
    kind: ImplicitKind,
    n: usize,
) -> Result<FiniteFunction, CompatError> {
    let zero = alg.bottom();
    if kind.needs_bottom() && zero.is_none() {
        return Err(CompatError::MissingBottom);
    }
    let neg = |x| alg.imp(x, zero.expect("checked above"));
    Ok(FiniteFunction::from_fn2(alg.size(), |a, b| match kind {
        ImplicitKind::Gamma => alg.join(a, neg(alg.power(b, n))),
        ImplicitKind::Successor => alg.imp(alg.power(b, n), a),
        ImplicitKind::Gabbay => alg.meet(alg.imp(alg.power(b, n), a), neg(neg(a))),
    }))
}

fn check1(name: &'static str, alg: &FiniteAlgebra, p: impl Fn(Element) -> bool) -> InequalityCheck {
    InequalityCheck {
        name,
        counterexample: alg.elements().find(|&a| !p(a)).map(|a| vec![a]),
    }
}

fn check2(
    name: &'static str,
    alg: &FiniteAlgebra,
    p: impl Fn(Element, Element) -> bool,
) -> InequalityCheck {
    InequalityCheck {
        name,
        counterexample: Tuples::new(alg.size(), 2).find(|t| !p(t[0], t[1])),
    }
}

/// Computes γ_n, S_n or G_n and verifies its defining inequalities.
pub fn implicit(
    alg: &FiniteAlgebra,
    kind: ImplicitKind,
    n: usize,
) -> Result<ImplicitOp, CompatError> {
    if n == 0 {
        return Err(CompatError::ZeroExponent);
    }
    let g = defining_map(alg, kind, n)?;
    congruence::require_dlcmi(alg)?;
    let f = min_fixed(alg, &g)?;
    let fa = |a: Element| f.apply1(a);
    let g_at = |a, b| g.apply2(a, b);
    let mut checks = match kind {
        ImplicitKind::Gamma => vec![
            check1("g1", alg, |a| alg.leq(g_at(a, fa(a)), fa(a))),
            check2("g2", alg, |a, b| alg.leq(fa(a), alg.join(g_at(a, b), b))),
        ],
        ImplicitKind::Successor => vec![
            check1("S1", alg, |a| alg.leq(g_at(a, fa(a)), fa(a))),
            check2("S2", alg, |a, b| alg.leq(fa(a), alg.join(b, g_at(a, b)))),
        ],
        ImplicitKind::Gabbay => vec![
            check1("G1", alg, |a| alg.leq(g_at(a, fa(a)), fa(a))),
            check2("G2", alg, |a, b| alg.leq(fa(a), alg.join(b, g_at(a, b)))),
        ],
    };
    if kind == ImplicitKind::Gamma {
        let zero = alg.bottom().expect("checked by defining_map");
        let g0 = fa(zero);
        let neg = |x| alg.imp(x, zero);
        checks.push(check1("g3", alg, |_| alg.leq(neg(alg.power(g0, n)), g0)));
        checks.push(check1("g4", alg, |b| {
            alg.leq(g0, alg.join(b, neg(alg.power(b, n))))
        }));
        checks.push(check1("g5", alg, |a| fa(a) == alg.join(a, g0)));
        checks.push(check2("monotone", alg, |a, b| {
            !alg.leq(a, b) || alg.leq(fa(a), fa(b))
        }));
    }
    Ok(ImplicitOp {
        kind,
        n,
        function: f,
        checks,
    })
}

pub fn gamma(alg: &FiniteAlgebra, n: usize) -> Result<ImplicitOp, CompatError> {
    implicit(alg, ImplicitKind::Gamma, n)
}

pub fn successor(alg: &FiniteAlgebra, n: usize) -> Result<ImplicitOp, CompatError> {
    implicit(alg, ImplicitKind::Successor, n)
}

pub fn gabbay(alg: &FiniteAlgebra, n: usize) -> Result<ImplicitOp, CompatError> {
    implicit(alg, ImplicitKind::Gabbay, n)
}
