mod common;

use std::collections::BTreeSet;

use common::{factor, family_value, first_violation, int, is_prime, leaf_table, TableFunction};
use quadmult::engine::{compile_constraints, search, LeafValue, SearchConfig, SearchReport};
use quadmult::exactalg::Rational;
use quadmult::families::Family;
use quadmult::forms::BinaryQuadraticForm;
use quadmult::multfn::PartialMultiplicativeFunction;
use quadmult::replay::replay_theorem1;

fn run(form: BinaryQuadraticForm, limit: u64) -> SearchReport {
    search(&form, limit, &SearchConfig::default()).unwrap()
}

fn coeffs(form: &BinaryQuadraticForm) -> (i64, i64, i64) {
    let s = form.to_string();
    let v: Vec<i64> = s.split(',').map(|t| t.parse().unwrap()).collect();
    (v[0], v[1], v[2])
}

/// Every consistent leaf, with free values set to `free`, satisfies the equation on `[1, limit]`.
fn assert_leaves_are_solutions(report: &SearchReport, free: i64) {
    for leaf in report.consistent() {
        let values = leaf_table(leaf).expect("no symbolic values");
        let f = TableFunction { values, fallback: |_| int(free) };
        assert_eq!(first_violation(|n| f.at(n), coeffs(&report.form), report.limit), None, "leaf {}", leaf.id);
    }
}

#[test]
fn plus_form_spurious_leaf_is_a_genuine_partial_solution() {
    let report = run(BinaryQuadraticForm::plus(), 100);
    assert_eq!(report.stuck().count(), 0);
    assert_eq!(report.consistent().count(), 2);
    let odd: Vec<_> = report.unexplained().collect();
    assert_eq!(odd.len(), 1);
    let t = leaf_table(odd[0]).unwrap();
    assert_eq!(t[&8], int(-10));
    assert_leaves_are_solutions(&report, 0);
    assert_leaves_are_solutions(&report, 1);

    // Q(4, 8) = 112 rules it out once the table reaches 112
    let f = TableFunction { values: t, fallback: |q| int(q as i64) };
    assert_eq!(first_violation(|n| f.at(n), (1, 1, 1), 112), Some((4, 8)));
}

#[test]
fn plus_form_classifies_to_identity_beyond_112() {
    for limit in [112, 150, 600] {
        let report = run(BinaryQuadraticForm::plus(), limit);
        assert!(!report.incomplete);
        assert_eq!(report.leaves.len(), 1, "N={limit}");
        let leaf = &report.leaves[0];
        assert_eq!(leaf.families, ["identity"]);
        for n in [2u64, 3, 4, 5, 7, 8, 9, 11, 13, 16, 17, 19, 23, 25, 27] {
            match leaf.values.get(n) {
                Some(LeafValue::Determined(v)) => assert_eq!(*v, int(n as i64), "f({n})"),
                // f(23) first meets a constraint at 553 = Q(1, 23)
                other => assert!(limit < 553 && matches!(other, Some(LeafValue::Free)), "f({n}) = {other:?}"),
            }
        }
    }
}

#[test]
fn engine_agrees_with_replay() {
    let report = run(BinaryQuadraticForm::plus(), 150);
    let leaf = &report.leaves[0];
    let replay = replay_theorem1().unwrap();
    for step in &replay.steps {
        if let Some(v) = leaf.values.determined(step.target) {
            assert_eq!(v.to_string(), step.value, "f({})", step.target);
        }
    }
}

#[test]
fn minus_form_spurious_leaf_is_a_genuine_partial_solution() {
    for limit in [60, 100] {
        let report = run(BinaryQuadraticForm::minus(), limit);
        assert_eq!(report.stuck().count(), 0);
        let odd: Vec<_> = report.unexplained().collect();
        assert_eq!(odd.len(), 1, "N={limit}");
        let t = leaf_table(odd[0]).unwrap();
        assert_eq!((&t[&2], &t[&5], &t[&8]), (&int(1), &int(1), &int(0)));
        assert_leaves_are_solutions(&report, 0);
        assert_leaves_are_solutions(&report, 1);
    }
    // Q(16, 8) = 192: f(192) = f(64)·f(3) = 0 but Q(f(16), f(8)) = 1
    let report = run(BinaryQuadraticForm::minus(), 100);
    let t = leaf_table(report.unexplained().next().unwrap()).unwrap();
    let f = TableFunction { values: t, fallback: |_| int(1) };
    assert_eq!(first_violation(|n| f.at(n), (1, -1, 1), 192), Some((8, 16)));
}

#[test]
fn minus_form_classifies_to_families_at_200() {
    let report = run(BinaryQuadraticForm::minus(), 200);
    assert!(!report.incomplete);
    assert_eq!(report.stuck().count(), 0);
    assert_eq!(report.unexplained().count(), 0);
    let firsts: BTreeSet<String> = report.consistent().map(|l| l.families[0].clone()).collect();
    let expect: BTreeSet<String> = ["fp:2", "fp:5", "fp:11", "const1", "identity"].map(String::from).into();
    assert_eq!(firsts, expect);
    let const_leaf = report.consistent().find(|l| l.families[0] == "const1").unwrap();
    // primes p ≡ 2 (mod 3) whose value is never forced away from 0 stay compatible
    for fam in &const_leaf.families[1..] {
        let p: u64 = fam.strip_prefix("fp:").unwrap().parse().unwrap();
        assert_eq!(p % 3, 2, "{fam}");
    }
    assert_leaves_are_solutions(&report, 1);
}

#[test]
fn known_families_satisfy_all_compiled_constraints() {
    let cases = [
        (BinaryQuadraticForm::plus(), 100, vec![Family::Identity]),
        (
            BinaryQuadraticForm::minus(),
            60,
            vec![Family::Identity, Family::ConstantOne, Family::PrimeIndicator(2), Family::PrimeIndicator(5)],
        ),
        (
            BinaryQuadraticForm::minus(),
            100,
            vec![
                Family::Identity,
                Family::ConstantOne,
                Family::PrimeIndicator(2),
                Family::PrimeIndicator(5),
                Family::PrimeIndicator(11),
            ],
        ),
    ];
    for (form, limit, families) in cases {
        let f = PartialMultiplicativeFunction::new(limit);
        let table = form.representation_table(limit).unwrap();
        let constraints = compile_constraints(&table, &f, &SearchConfig::default()).unwrap();
        for family in &families {
            for c in &constraints {
                let value: Option<Rational> = c.polynomial.evaluate(|pp| Some(family_value(family, pp.value())));
                assert_eq!(value, Some(int(0)), "{family} violates {} on {form}", c.polynomial);
            }
        }
    }
}

#[test]
fn soundness_of_family_matches() {
    // matched families are genuine solutions on [1, N]
    for (form, limit) in [(BinaryQuadraticForm::minus(), 100), (BinaryQuadraticForm::plus(), 120)] {
        let report = run(form, limit);
        for leaf in report.consistent() {
            for fam in &leaf.families {
                let family: Family = fam.parse().unwrap();
                assert_eq!(
                    first_violation(|n| family_value(&family, n), coeffs(&report.form), limit),
                    None,
                    "{fam}"
                );
            }
        }
    }
}

#[test]
fn leaf_values_only_mention_prime_powers() {
    let report = run(BinaryQuadraticForm::minus(), 60);
    for leaf in &report.leaves {
        for (n, _) in &leaf.values.0 {
            let f = factor(*n);
            assert!(f.len() == 1 && is_prime(f[0].0), "f({n})");
        }
    }
}

#[test]
fn thread_count_does_not_change_the_report() {
    for (form, limit) in [(BinaryQuadraticForm::minus(), 100), (BinaryQuadraticForm::plus(), 100)] {
        let single = run(form.clone(), limit).to_json();
        for threads in [2, 4] {
            let config = SearchConfig { threads, ..SearchConfig::default() };
            assert_eq!(search(&form, limit, &config).unwrap().to_json(), single);
        }
    }
}

#[test]
fn report_json_round_trips() {
    let report = run(BinaryQuadraticForm::minus(), 60);
    let back: SearchReport = serde_json::from_str(&report.to_json()).unwrap();
    assert_eq!(back, report);
}

#[test]
fn caps_mark_the_search_incomplete() {
    let config = SearchConfig { max_branches: 2, ..SearchConfig::default() };
    let report = search(&BinaryQuadraticForm::minus(), 60, &config).unwrap();
    assert!(report.incomplete);
    let config = SearchConfig { max_depth: 1, ..SearchConfig::default() };
    assert!(search(&BinaryQuadraticForm::minus(), 60, &config).unwrap().incomplete);
}

#[test]
fn other_forms_terminate() {
    // x² + y² and x² + 2y²: no claim about the answer, only that the report is honest
    for form in [BinaryQuadraticForm::new(1, 0, 1), BinaryQuadraticForm::new(1, 0, 2)] {
        let report = run(form, 60);
        assert!(!report.leaves.is_empty() || report.contradictions > 0);
        for leaf in report.consistent() {
            if let Some(values) = leaf_table(leaf) {
                let f = TableFunction { values, fallback: |_| int(1) };
                assert_eq!(first_violation(|n| f.at(n), coeffs(&report.form), 60), None, "{}", leaf.id);
            }
        }
    }
}
