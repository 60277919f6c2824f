//! Axiom checkers for the varieties around DLCMI.
//!
//! Each axiom is a universally quantified statement over `arity` variables.
//! A check scans all tuples in lexicographic order and records the first
//! violating tuple per axiom. Witnesses can be re-evaluated with
//! [`Axiom::holds`].

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

use crate::algebra::{Element, FiniteAlgebra};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum VarietyTag {
    Lattice,
    Dl,
    Bdl,
    Dlcmi,
    Wh,
    Crl,
    Idcrl,
    Gcrl,
    Cwrl,
    Dlfi,
}

impl VarietyTag {
    pub const ALL: [VarietyTag; 10] = [
        VarietyTag::Lattice,
        VarietyTag::Dl,
        VarietyTag::Bdl,
        VarietyTag::Dlcmi,
        VarietyTag::Wh,
        VarietyTag::Crl,
        VarietyTag::Idcrl,
        VarietyTag::Gcrl,
        VarietyTag::Cwrl,
        VarietyTag::Dlfi,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            VarietyTag::Lattice => "lattice",
            VarietyTag::Dl => "dl",
            VarietyTag::Bdl => "bdl",
            VarietyTag::Dlcmi => "dlcmi",
            VarietyTag::Wh => "wh",
            VarietyTag::Crl => "crl",
            VarietyTag::Idcrl => "idcrl",
            VarietyTag::Gcrl => "gcrl",
            VarietyTag::Cwrl => "cwrl",
            VarietyTag::Dlfi => "dlfi",
        }
    }

    /// Whether the axiom system mentions the constant `0`.
    pub fn needs_bottom(self) -> bool {
        matches!(self, VarietyTag::Bdl | VarietyTag::Wh | VarietyTag::Dlfi)
    }
}

impl fmt::Display for VarietyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for VarietyTag {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        VarietyTag::ALL
            .into_iter()
            .find(|t| t.as_str().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown variety `{s}`"))
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VarietyError {
    #[error("variety {0} needs a bottom element but the algebra has none")]
    MissingBottom(VarietyTag),
    #[error("precondition failed: {0}")]
    PreconditionFailed(String),
}

/// One universally quantified axiom.
#[derive(Clone, Copy)]
pub struct Axiom {
    pub id: &'static str,
    pub arity: usize,
    holds: fn(&FiniteAlgebra, &[Element]) -> bool,
}

impl fmt::Debug for Axiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Axiom({}/{})", self.id, self.arity)
    }
}

impl Axiom {
    const fn new(
        id: &'static str,
        arity: usize,
        holds: fn(&FiniteAlgebra, &[Element]) -> bool,
    ) -> Self {
        Axiom { id, arity, holds }
    }

    /// Evaluates the axiom at one tuple. Axioms mentioning `0` must only be
    /// evaluated on algebras with a bottom.
    pub fn holds(&self, alg: &FiniteAlgebra, tuple: &[Element]) -> bool {
        debug_assert_eq!(tuple.len(), self.arity);
        (self.holds)(alg, tuple)
    }

    /// The lexicographically least violating tuple, if any.
    pub fn first_violation(&self, alg: &FiniteAlgebra) -> Option<Vec<Element>> {
        Tuples::new(alg.size(), self.arity).find(|t| !self.holds(alg, t))
    }
}

/// Lexicographic enumeration of `0..size` tuples of a given length.
pub struct Tuples {
    size: usize,
    next: Option<Vec<Element>>,
}

impl Tuples {
    pub fn new(size: usize, len: usize) -> Self {
        let next = (size > 0 || len == 0).then(|| vec![0; len]);
        Tuples { size, next }
    }
}

impl Iterator for Tuples {
    type Item = Vec<Element>;

    fn next(&mut self) -> Option<Vec<Element>> {
        let current = self.next.take()?;
        let mut succ = current.clone();
        let mut i = succ.len();
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            succ[i] += 1;
            if succ[i] < self.size {
                self.next = Some(succ);
                break;
            }
            succ[i] = 0;
        }
        Some(current)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Failure {
    pub axiom: &'static str,
    pub witness: Vec<Element>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VarietyReport {
    pub tag: VarietyTag,
    pub passed: bool,
    pub failures: Vec<Failure>,
}

impl VarietyReport {
    pub fn failure(&self, axiom: &str) -> Option<&Failure> {
        self.failures.iter().find(|f| f.axiom == axiom)
    }
}

fn le(alg: &FiniteAlgebra, x: Element, y: Element) -> bool {
    alg.leq(x, y)
}

// `0` for axioms that mention it; callers guarantee presence.
fn zero(alg: &FiniteAlgebra) -> Element {
    alg.bottom()
        .expect("axiom mentions 0 on an algebra without bottom")
}

fn boxed(alg: &FiniteAlgebra, x: Element) -> Element {
    alg.imp(alg.unit(), x)
}

// Axiom tables. Identifiers are stable and appear in reports.

const LATTICE: &[Axiom] = &[
    Axiom::new("lat.meet-idem", 1, |g, t| g.meet(t[0], t[0]) == t[0]),
    Axiom::new("lat.join-idem", 1, |g, t| g.join(t[0], t[0]) == t[0]),
    Axiom::new("lat.meet-comm", 2, |g, t| {
        g.meet(t[0], t[1]) == g.meet(t[1], t[0])
    }),
    Axiom::new("lat.join-comm", 2, |g, t| {
        g.join(t[0], t[1]) == g.join(t[1], t[0])
    }),
    Axiom::new("lat.meet-assoc", 3, |g, t| {
        g.meet(t[0], g.meet(t[1], t[2])) == g.meet(g.meet(t[0], t[1]), t[2])
    }),
    Axiom::new("lat.join-assoc", 3, |g, t| {
        g.join(t[0], g.join(t[1], t[2])) == g.join(g.join(t[0], t[1]), t[2])
    }),
    Axiom::new("lat.absorb", 2, |g, t| {
        g.meet(t[0], g.join(t[0], t[1])) == t[0] && g.join(t[0], g.meet(t[0], t[1])) == t[0]
    }),
];

const DISTRIBUTIVE: Axiom = Axiom::new("dl.distrib", 3, |g, t| {
    g.meet(t[0], g.join(t[1], t[2])) == g.join(g.meet(t[0], t[1]), g.meet(t[0], t[2]))
});

const BOUNDED: &[Axiom] = &[
    Axiom::new("bdl.bottom", 1, |g, t| le(g, zero(g), t[0])),
    Axiom::new("bdl.top", 1, |g, t| le(g, t[0], g.unit())),
];

const MONOID_COMM: Axiom = Axiom::new("comm", 2, |g, t| g.prod(t[0], t[1]) == g.prod(t[1], t[0]));
const MONOID_ASSOC: Axiom = Axiom::new("assoc", 3, |g, t| {
    g.prod(t[0], g.prod(t[1], t[2])) == g.prod(g.prod(t[0], t[1]), t[2])
});
const MONOID_UNIT: Axiom = Axiom::new("unit", 1, |g, t| g.prod(t[0], g.unit()) == t[0]);

const DLCMI: &[Axiom] = &[
    Axiom::new("d1.1", 3, |g, t| DISTRIBUTIVE.holds(g, t)),
    Axiom::new("d1.2", 1, |g, t| le(g, t[0], g.unit())),
    Axiom::new("d1.3.comm", 2, |g, t| MONOID_COMM.holds(g, t)),
    Axiom::new("d1.3.assoc", 3, |g, t| MONOID_ASSOC.holds(g, t)),
    Axiom::new("d1.3.unit", 1, |g, t| MONOID_UNIT.holds(g, t)),
    Axiom::new("d1.4", 3, |g, t| {
        g.meet(g.imp(t[0], t[1]), g.imp(t[0], t[2])) == g.imp(t[0], g.meet(t[1], t[2]))
    }),
    Axiom::new("d1.5", 3, |g, t| {
        g.meet(g.imp(t[0], t[2]), g.imp(t[1], t[2])) == g.imp(g.join(t[0], t[1]), t[2])
    }),
    Axiom::new("d1.6", 1, |g, t| g.imp(t[0], t[0]) == g.unit()),
    Axiom::new("d1.7", 3, |g, t| {
        g.prod(g.join(t[0], t[1]), t[2]) == g.join(g.prod(t[0], t[2]), g.prod(t[1], t[2]))
    }),
    Axiom::new("d1.8", 3, |g, t| {
        le(
            g,
            g.prod(g.imp(t[0], t[1]), g.imp(t[1], t[2])),
            g.imp(t[0], t[2]),
        )
    }),
    Axiom::new("d1.9", 3, |g, t| {
        le(
            g,
            g.imp(t[0], t[1]),
            g.imp(g.prod(t[0], t[2]), g.prod(t[1], t[2])),
        )
    }),
];

/// Consequences of the DLCMI axioms, used as a regression net over the corpus.
pub const DLCMI_DERIVED: &[Axiom] = &[
    Axiom::new("d1.p1.prod-mono", 3, |g, t| {
        !le(g, t[0], t[1]) || le(g, g.prod(t[0], t[2]), g.prod(t[1], t[2]))
    }),
    Axiom::new("d1.p1.imp-anti", 3, |g, t| {
        !le(g, t[0], t[1]) || le(g, g.imp(t[1], t[2]), g.imp(t[0], t[2]))
    }),
    Axiom::new("d1.p1.imp-mono", 3, |g, t| {
        !le(g, t[0], t[1]) || le(g, g.imp(t[2], t[0]), g.imp(t[2], t[1]))
    }),
    Axiom::new("d1.p2", 2, |g, t| {
        le(g, g.prod(t[0], t[1]), g.meet(t[0], t[1]))
    }),
    Axiom::new("d1.p3", 2, |g, t| le(g, g.prod(t[0], t[1]), t[0])),
    Axiom::new("d1.p4", 2, |g, t| {
        le(g, boxed(g, t[0]), g.imp(t[1], g.prod(t[0], t[1])))
    }),
];

const WH_IMP: &[Axiom] = &[
    Axiom::new("wh.1", 3, |g, t| {
        g.meet(g.imp(t[0], t[1]), g.imp(t[0], t[2])) == g.imp(t[0], g.meet(t[1], t[2]))
    }),
    Axiom::new("wh.2", 3, |g, t| {
        g.meet(g.imp(t[0], t[2]), g.imp(t[1], t[2])) == g.imp(g.join(t[0], t[1]), t[2])
    }),
    Axiom::new("wh.3", 3, |g, t| {
        le(
            g,
            g.meet(g.imp(t[0], t[1]), g.imp(t[1], t[2])),
            g.imp(t[0], t[2]),
        )
    }),
    Axiom::new("wh.4", 1, |g, t| g.imp(t[0], t[0]) == g.unit()),
];

const WH_PROD: Axiom = Axiom::new("wh.prod", 2, |g, t| {
    g.prod(t[0], t[1]) == g.meet(t[0], t[1])
});

const CRL_RESIDUATION: Axiom = Axiom::new("crl.3", 3, |g, t| {
    le(g, g.prod(t[0], t[1]), t[2]) == le(g, t[0], g.imp(t[1], t[2]))
});

const GCRL: &[Axiom] = &[
    Axiom::new("gcrl.comm", 2, |g, t| MONOID_COMM.holds(g, t)),
    Axiom::new("gcrl.assoc", 3, |g, t| MONOID_ASSOC.holds(g, t)),
    Axiom::new("gcrl.unit", 1, |g, t| MONOID_UNIT.holds(g, t)),
    Axiom::new("gcrl.imp-meet", 3, |g, t| {
        g.imp(t[0], g.meet(t[1], t[2])) == g.meet(g.imp(t[0], t[1]), g.imp(t[0], t[2]))
    }),
    Axiom::new("gcrl.join-imp", 3, |g, t| {
        g.imp(g.join(t[0], t[1]), t[2]) == g.meet(g.imp(t[0], t[2]), g.imp(t[1], t[2]))
    }),
    Axiom::new("gcrl.trans", 3, |g, t| {
        le(
            g,
            g.prod(g.imp(t[0], t[1]), g.imp(t[1], t[2])),
            g.imp(t[0], t[2]),
        )
    }),
    Axiom::new("gcrl.refl", 1, |g, t| le(g, g.unit(), g.imp(t[0], t[0]))),
];

const CWRL: &[Axiom] = &[
    Axiom::new("R1", 2, |g, t| le(g, g.prod(t[0], g.imp(t[0], t[1])), t[1])),
    Axiom::new("R2", 3, |g, t| {
        g.join(g.prod(t[0], t[1]), g.prod(t[0], t[2])) == g.prod(t[0], g.join(t[1], t[2]))
    }),
    Axiom::new("R3", 2, |g, t| {
        le(g, boxed(g, t[0]), g.imp(t[1], g.prod(t[1], t[0])))
    }),
    Axiom::new("R4", 1, |g, t| {
        let e = g.unit();
        le(g, t[0], g.imp(g.imp(t[0], e), e))
    }),
    Axiom::new("R5", 1, |g, t| {
        let b = boxed(g, t[0]);
        le(g, boxed(g, g.prod(t[0], t[0])), g.prod(b, b))
    }),
    Axiom::new("R6", 1, |g, t| {
        let e = g.unit();
        let b = boxed(g, t[0]);
        le(g, g.imp(b, g.imp(b, e)), g.imp(boxed(g, b), e))
    }),
    Axiom::new("R7", 1, |g, t| {
        let e = g.unit();
        let nb = g.imp(boxed(g, t[0]), e);
        le(g, g.prod(nb, nb), g.imp(boxed(g, g.prod(t[0], t[0])), e))
    }),
];

const DLFI: &[Axiom] = &[
    Axiom::new("I1", 3, |g, t| {
        g.meet(g.imp(t[0], t[1]), g.imp(t[0], t[2])) == g.imp(t[0], g.meet(t[1], t[2]))
    }),
    Axiom::new("I2", 3, |g, t| {
        g.meet(g.imp(t[0], t[2]), g.imp(t[1], t[2])) == g.imp(g.join(t[0], t[1]), t[2])
    }),
    Axiom::new("I3", 1, |g, t| {
        let one = g.unit();
        g.imp(zero(g), t[0]) == one && g.imp(t[0], one) == one
    }),
    Axiom::new("F1", 3, |g, t| {
        g.prod(t[0], g.join(t[1], t[2])) == g.join(g.prod(t[0], t[1]), g.prod(t[0], t[2]))
    }),
    // right-hand distributivity: (b ∨ c)·a = (b·a) ∨ (c·a)
    Axiom::new("F2", 3, |g, t| {
        g.prod(g.join(t[1], t[2]), t[0]) == g.join(g.prod(t[1], t[0]), g.prod(t[2], t[0]))
    }),
    Axiom::new("F3", 1, |g, t| {
        let z = zero(g);
        g.prod(z, t[0]) == z && g.prod(t[0], z) == z
    }),
];

fn rename(prefix: &'static str, ax: Axiom) -> Axiom {
    // The monoid axioms are shared; CRL reports them under its own prefix.
    let id = match (prefix, ax.id) {
        ("crl", "comm") => "crl.1.comm",
        ("crl", "assoc") => "crl.1.assoc",
        ("crl", "unit") => "crl.1.unit",
        _ => ax.id,
    };
    Axiom { id, ..ax }
}

/// A short human-readable statement of an axiom, for reports.
pub fn describe(id: &str) -> &'static str {
    match id {
        "lat.meet-idem" => "x∧x = x",
        "lat.join-idem" => "x∨x = x",
        "lat.meet-comm" => "x∧y = y∧x",
        "lat.join-comm" => "x∨y = y∨x",
        "lat.meet-assoc" => "x∧(y∧z) = (x∧y)∧z",
        "lat.join-assoc" => "x∨(y∨z) = (x∨y)∨z",
        "lat.absorb" => "absorption",
        "dl.distrib" | "d1.1" => "distributivity x∧(y∨z) = (x∧y)∨(x∧z)",
        "bdl.bottom" => "0 ≤ x",
        "bdl.top" | "d1.2" | "idcrl.integral" => "x ≤ 1 (integrality)",
        "d1.3.comm" | "crl.1.comm" | "gcrl.comm" | "comm" => "x·y = y·x",
        "d1.3.assoc" | "crl.1.assoc" | "gcrl.assoc" | "assoc" => "x·(y·z) = (x·y)·z",
        "d1.3.unit" | "crl.1.unit" | "gcrl.unit" | "unit" => "x·1 = x",
        "d1.4" | "wh.1" | "I1" | "gcrl.imp-meet" => "(x→y)∧(x→z) = x→(y∧z)",
        "d1.5" | "wh.2" | "I2" | "gcrl.join-imp" => "(x→z)∧(y→z) = (x∨y)→z",
        "d1.6" | "wh.4" => "x→x = 1",
        "d1.7" => "(x∨y)·z = (x·z)∨(y·z)",
        "d1.8" | "gcrl.trans" => "(x→y)·(y→z) ≤ x→z",
        "d1.9" => "x→y ≤ (x·z)→(y·z)",
        "d1.p1.prod-mono" => "x ≤ y ⇒ x·z ≤ y·z",
        "d1.p1.imp-anti" => "x ≤ y ⇒ y→z ≤ x→z",
        "d1.p1.imp-mono" => "x ≤ y ⇒ z→x ≤ z→y",
        "d1.p2" => "x·y ≤ x∧y",
        "d1.p3" => "x·y ≤ x",
        "d1.p4" => "□x ≤ y→(x·y)",
        "wh.3" => "(x→y)∧(y→z) ≤ x→z",
        "wh.prod" => "x·y = x∧y",
        "crl.3" => "residuation x·y ≤ z ⇔ x ≤ y→z",
        "gcrl.refl" => "1 ≤ x→x",
        "R1" => "x·(x→y) ≤ y",
        "R2" => "(x·y)∨(x·z) = x·(y∨z)",
        "R3" => "□x ≤ y→(y·x)",
        "R4" => "x ≤ (x→e)→e",
        "R5" => "□(x·x) ≤ □x·□x",
        "R6" => "□x→(□x→e) ≤ □□x→e",
        "R7" => "(□x→e)·(□x→e) ≤ □(x·x)→e",
        "I3" => "0→x = 1 and x→1 = 1",
        "F1" => "x·(y∨z) = (x·y)∨(x·z)",
        "F2" => "(y∨z)·x = (y·x)∨(z·x)",
        "F3" => "0·x = 0 = x·0",
        _ => "",
    }
}

/// The axioms checked for `tag`, in report order.
pub fn axioms(tag: VarietyTag) -> Vec<Axiom> {
    let mut out: Vec<Axiom> = Vec::new();
    match tag {
        VarietyTag::Lattice => out.extend_from_slice(LATTICE),
        VarietyTag::Dl => {
            out.extend_from_slice(LATTICE);
            out.push(DISTRIBUTIVE);
        }
        VarietyTag::Bdl => {
            out.extend(axioms(VarietyTag::Dl));
            out.extend_from_slice(BOUNDED);
        }
        VarietyTag::Dlcmi => out.extend_from_slice(DLCMI),
        VarietyTag::Wh => {
            out.extend(wh_reduct_axioms());
            out.push(WH_PROD);
        }
        VarietyTag::Crl => {
            out.extend_from_slice(LATTICE);
            out.extend([MONOID_COMM, MONOID_ASSOC, MONOID_UNIT].map(|a| rename("crl", a)));
            out.push(CRL_RESIDUATION);
        }
        VarietyTag::Idcrl => {
            out.extend(axioms(VarietyTag::Crl));
            out.push(DISTRIBUTIVE);
            out.push(Axiom::new("idcrl.integral", 1, |g, t| {
                le(g, t[0], g.unit())
            }));
        }
        VarietyTag::Gcrl => {
            out.extend_from_slice(LATTICE);
            out.extend_from_slice(GCRL);
        }
        VarietyTag::Cwrl => {
            out.extend(axioms(VarietyTag::Gcrl));
            out.extend_from_slice(CWRL);
        }
        VarietyTag::Dlfi => {
            out.extend(axioms(VarietyTag::Bdl));
            out.extend_from_slice(DLFI);
        }
    }
    out
}

/// Weak Heyting axioms on the `(∧, ∨, →, 0, 1)` reduct, ignoring `·`.
pub fn wh_reduct_axioms() -> Vec<Axiom> {
    let mut out = axioms(VarietyTag::Bdl);
    out.extend_from_slice(WH_IMP);
    out
}

/// Runs an arbitrary axiom list.
pub fn check_axioms(alg: &FiniteAlgebra, tag: VarietyTag, axioms: &[Axiom]) -> VarietyReport {
    let failures: Vec<Failure> = axioms
        .iter()
        .filter_map(|ax| {
            ax.first_violation(alg).map(|witness| Failure {
                axiom: ax.id,
                witness,
            })
        })
        .collect();
    VarietyReport {
        tag,
        passed: failures.is_empty(),
        failures,
    }
}

pub fn check(alg: &FiniteAlgebra, tag: VarietyTag) -> Result<VarietyReport, VarietyError> {
    if tag.needs_bottom() && alg.bottom().is_none() {
        return Err(VarietyError::MissingBottom(tag));
    }
    Ok(check_axioms(alg, tag, &axioms(tag)))
}

/// Shorthand for "passes", treating a missing bottom as failure.
pub fn satisfies(alg: &FiniteAlgebra, tag: VarietyTag) -> bool {
    check(alg, tag).map(|r| r.passed).unwrap_or(false)
}

/// The WH check on the reduct that forgets `·`.
pub fn check_wh_reduct(alg: &FiniteAlgebra) -> Result<VarietyReport, VarietyError> {
    if alg.bottom().is_none() {
        return Err(VarietyError::MissingBottom(VarietyTag::Wh));
    }
    Ok(check_axioms(alg, VarietyTag::Wh, &wh_reduct_axioms()))
}

/// Outcome of comparing axiom 9 with its four-variable form.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LemaprodOutcome {
    /// `a → b ≤ (a·c) → (b·c)` for all `a, b, c`.
    pub axiom9: bool,
    /// `(a → b)·(c → d) ≤ (a·c) → (b·d)` for all `a, b, c, d`.
    pub four_variable: bool,
}

impl LemaprodOutcome {
    pub fn agree(&self) -> bool {
        self.axiom9 == self.four_variable
    }
}

pub fn check_lemaprod(alg: &FiniteAlgebra) -> Result<LemaprodOutcome, VarietyError> {
    let first_eight: Vec<Axiom> = DLCMI.iter().copied().filter(|a| a.id != "d1.9").collect();
    let report = check_axioms(alg, VarietyTag::Dlcmi, &first_eight);
    if let Some(f) = report.failures.first() {
        return Err(VarietyError::PreconditionFailed(format!(
            "axiom {} fails at {:?}",
            f.axiom, f.witness
        )));
    }
    let axiom9 = DLCMI
        .iter()
        .find(|a| a.id == "d1.9")
        .expect("d1.9 present")
        .first_violation(alg)
        .is_none();
    let four_variable = Tuples::new(alg.size(), 4).all(|t| {
        let lhs = alg.prod(alg.imp(t[0], t[1]), alg.imp(t[2], t[3]));
        let rhs = alg.imp(alg.prod(t[0], t[2]), alg.prod(t[1], t[3]));
        alg.leq(lhs, rhs)
    });
    Ok(LemaprodOutcome {
        axiom9,
        four_variable,
    })
}

/// g pair `(x, y)` with `x·(x → y) ≰ y`, the inequality every CWRL satisfies.
pub fn check_cwrl_incomparable(alg: &FiniteAlgebra) -> Option<(Element, Element)> {
    CWRL[0].first_violation(alg).map(|t| (t[0], t[1]))
}

/// For `·` = `∧`: does the WH check on the reduct agree with the DLCMI check?
pub fn wh_as_dlcmi_roundtrip(alg: &FiniteAlgebra) -> Result<bool, VarietyError> {
    if WH_PROD.first_violation(alg).is_some() {
        return Err(VarietyError::PreconditionFailed(
            "product table differs from meet table".into(),
        ));
    }
    let wh = check_wh_reduct(alg)?.passed;
    let dlcmi = check(alg, VarietyTag::Dlcmi)?.passed;
    Ok(wh == dlcmi)
}
