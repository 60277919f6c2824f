mod common;

use common::corpus;
use dlcmi::congruence::{
    all_congruences, principal_oracle, r_conditions_hold, DlcmiView, RWitness,
};
use dlcmi::factory::is_isomorphic;
use dlcmi::varieties::{self, check, satisfies, DLCMI_DERIVED};
use dlcmi::{FiniteAlgebra, VarietyTag};
use proptest::prelude::*;

fn pick(i: usize) -> &'static FiniteAlgebra {
    let c = corpus();
    &c[i % c.len()]
}

fn elements(alg: &FiniteAlgebra, xs: [usize; 6]) -> [usize; 6] {
    xs.map(|x| x % alg.size())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(512))]

    #[test]
    fn t_terms_are_antitone(i in any::<usize>(), xs in any::<[usize; 6]>()) {
        let alg = pick(i);
        let [a, b, ..] = elements(alg, xs);
        let m = alg.size();
        for n in 0..3 * m {
            prop_assert!(alg.leq(alg.t_term(a, b, n + 1), alg.t_term(a, b, n)));
            for k in 0..3 * m {
                prop_assert!(alg.leq(alg.t_pow(a, b, n, k + 1), alg.t_pow(a, b, n, k)));
                prop_assert!(alg.leq(alg.t_floor(a, b), alg.t_pow(a, b, n, k)));
            }
        }
    }

    #[test]
    fn box_preserves_meets(i in any::<usize>(), xs in any::<[usize; 6]>()) {
        let alg = pick(i);
        let [x, y, ..] = elements(alg, xs);
        prop_assert_eq!(alg.box_n(alg.meet(x, y), 1), alg.meet(alg.box_n(x, 1), alg.box_n(y, 1)));
    }

    #[test]
    fn stabilization_bound_is_enough(i in any::<usize>(), xs in any::<[usize; 6]>()) {
        let alg = pick(i);
        let [a, b, c, d, ..] = elements(alg, xs);
        let view = DlcmiView::new(alg).unwrap();
        let m = alg.size();
        let brute = (0..=3 * m).any(|n| (0..=3 * m).any(|k| view.is_associated(a, b, c, d, n, k)));
        let found = view.r_membership(a, b, c, d);
        prop_assert_eq!(brute, found.is_some());
        if let Some(w) = found {
            prop_assert!(view.is_associated(a, b, c, d, w.n, w.k));
            let (n_max, k_max) = alg.stabilization_bounds(a, b);
            prop_assert!(w.n <= n_max && w.k <= k_max);
        }
    }

    #[test]
    fn generators_belong_to_r(i in any::<usize>(), xs in any::<[usize; 6]>()) {
        let alg = pick(i);
        let [a, b, ..] = elements(alg, xs);
        let view = DlcmiView::new(alg).unwrap();
        prop_assert!(view.is_associated(a, b, a, b, 0, 1));
        let generator = RWitness { n: 0, k: 1 };
        prop_assert!(view.r_membership(a, b, a, b).unwrap() <= generator);
    }

    #[test]
    fn quaternary_terms_decide_membership(i in any::<usize>(), xs in any::<[usize; 6]>()) {
        let alg = pick(i);
        let [a, b, c, d, ..] = elements(alg, xs);
        let view = DlcmiView::new(alg).unwrap();
        let equal_at = |n, k| (1..=5).all(|q| {
            let (u, v) = alg.eval_qt(q, n, k, a, b, c, d);
            u == v
        });
        let (n_max, k_max) = alg.stabilization_bounds(a, b);
        match view.r_membership(a, b, c, d) {
            Some(w) => prop_assert!(equal_at(w.n, w.k)),
            None => prop_assert!(!equal_at(n_max, k_max)),
        }
    }

    #[test]
    fn principal_oracle_is_least(i in any::<usize>(), xs in any::<[usize; 6]>()) {
        let alg = pick(i);
        let [a, b, ..] = elements(alg, xs);
        let theta = principal_oracle(alg, a, b);
        prop_assert!(theta.relates(a, b));
        prop_assert!(theta.is_congruence_of(alg));
        for con in all_congruences(alg) {
            prop_assert!(con.is_congruence_of(alg));
            if con.relates(a, b) {
                prop_assert!(theta.refines(&con));
            }
        }
    }

    #[test]
    fn relabelling_preserves_everything(i in any::<usize>(), seed in any::<u64>()) {
        use rand::{seq::SliceRandom, SeedableRng};
        let alg = pick(i);
        let mut p: Vec<usize> = (0..alg.size()).collect();
        p.shuffle(&mut rand::rngs::StdRng::seed_from_u64(seed));
        let other = alg.permuted(&p);
        let phi = is_isomorphic(alg, &other).expect("relabelling is an isomorphism");
        for x in alg.elements() {
            for y in alg.elements() {
                prop_assert_eq!(phi[alg.imp(x, y)], other.imp(phi[x], phi[y]));
            }
        }
        for tag in VarietyTag::ALL {
            let before = check(alg, tag).map(|r| r.passed).ok();
            let after = check(&other, tag).map(|r| r.passed).ok();
            prop_assert_eq!(before, after);
        }
        prop_assert_eq!(all_congruences(alg).len(), all_congruences(&other).len());
    }
}

#[test]
fn r_is_contained_in_the_principal_congruence() {
    for alg in corpus() {
        let report = DlcmiView::new(alg).unwrap().verify_pt();
        assert!(
            report.disagreements.iter().all(|d| d.in_closure && !d.in_r),
            "{:?}",
            alg.name()
        );
    }
}

#[test]
fn r_equals_principal_congruence_on_subvarieties() {
    for alg in corpus().iter().chain(common::named().iter()) {
        if satisfies(alg, VarietyTag::Wh) || satisfies(alg, VarietyTag::Idcrl) {
            let report = DlcmiView::new(alg).unwrap().verify_pt();
            assert!(
                report.all_agree(),
                "{:?}: {:?}",
                alg.name(),
                report.disagreements.first()
            );
        }
    }
}

#[test]
fn r_is_not_closed_under_product_in_general() {
    // 0 < a < 1 with a·a = 0 and → constantly 1
    let alg = FiniteAlgebra::from_fns(
        3,
        |x, y| x.min(y),
        |x, y| x.max(y),
        |x, y| if (x, y) == (1, 1) { 0 } else { x.min(y) },
        |_, _| 2,
        2,
        Some(0),
    )
    .unwrap();
    assert!(satisfies(&alg, VarietyTag::Dlcmi));
    assert_eq!(alg.prod(1, 1), 0);
    assert!(principal_oracle(&alg, 1, 2).is_full());
    let view = DlcmiView::new(&alg).unwrap();
    assert_eq!(view.r_congruence(1, 2).unwrap().to_string(), "{{0},{1,2}}");
    let failures = corpus()
        .iter()
        .filter(|a| !DlcmiView::new(a).unwrap().verify_pt().all_agree())
        .count();
    assert_eq!(failures, 25);
}

#[test]
fn congruence_lattice_is_closed_under_joins() {
    for alg in corpus().iter().filter(|a| a.size() <= 3) {
        let cons = all_congruences(alg);
        assert!(cons[0].is_identity());
        assert!(cons.last().unwrap().is_full());
        for x in &cons {
            for y in &cons {
                assert!(cons.contains(&x.join(y)));
            }
        }
    }
}

#[test]
fn derived_properties_hold_on_corpus() {
    for alg in corpus() {
        let report = varieties::check_axioms(alg, VarietyTag::Dlcmi, DLCMI_DERIVED);
        assert!(report.passed, "{:?}: {:?}", alg.name(), report.failures);
    }
}

#[test]
fn subvariety_inclusions_on_corpus() {
    for alg in corpus().iter().chain(common::named().iter()) {
        if satisfies(alg, VarietyTag::Idcrl) {
            assert!(satisfies(alg, VarietyTag::Dlcmi));
        }
        if satisfies(alg, VarietyTag::Wh) {
            assert!(satisfies(alg, VarietyTag::Dlcmi));
        }
        if satisfies(alg, VarietyTag::Dlcmi) {
            assert!(satisfies(alg, VarietyTag::Gcrl), "{:?}", alg.name());
        }
    }
}

#[test]
fn axiom_nine_matches_four_variable_form() {
    for alg in corpus() {
        assert!(varieties::check_lemaprod(alg).unwrap().agree());
    }
}

#[test]
fn wh_presentations_round_trip() {
    for alg in common::enumerated(VarietyTag::Wh) {
        assert!(varieties::wh_as_dlcmi_roundtrip(&alg).unwrap());
    }
}

#[test]
fn r_conditions_weaken_as_t_decreases() {
    for alg in corpus().iter().filter(|a| a.size() <= 3) {
        for t in alg.elements() {
            for s in alg.elements().filter(|&s| alg.leq(s, t)) {
                for [a, b, c, d] in
                    varieties::Tuples::new(alg.size(), 4).map(|v| [v[0], v[1], v[2], v[3]])
                {
                    if r_conditions_hold(alg, t, a, b, c, d) {
                        assert!(r_conditions_hold(alg, s, a, b, c, d));
                    }
                }
            }
        }
    }
}
