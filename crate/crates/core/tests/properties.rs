mod common;

use common::*;
use foldbetti::betti::{b1_tutte, herzog_kuhl_residuals, BettiEngine, Method};
use foldbetti::combinatorics::binom;
use foldbetti::exactlin::{Rational, Rationals};
use foldbetti::forms::FormCollection;
use foldbetti::matroid::{
    circuits_up_to, hamming_weights, height_of_fold_ideal, subset_rank, tutte_polynomial,
};
use foldbetti::oracle::{b1_via_circuits, betti_from_hilbert, hilbert_function, relation_space, OracleLimits};
use itertools::Itertools;
use num_bigint::BigInt;
use proptest::prelude::*;

fn raw_forms(k: usize) -> impl Strategy<Value = Vec<(Vec<i64>, usize)>> {
    proptest::collection::vec((proptest::collection::vec(-3i64..=3, k), 1usize..=3), 1..=6)
}

fn build(k: usize, raw: &[(Vec<i64>, usize)]) -> Option<Q> {
    let raw = raw.iter().map(|(v, m)| (v.iter().map(|&x| Rational::from(x)).collect(), *m)).collect();
    let c = FormCollection::normalize(Rationals, raw, k).ok()?;
    (c.n() <= 8).then_some(c)
}

fn collection() -> impl Strategy<Value = Q> {
    (1usize..=3).prop_flat_map(|k| raw_forms(k).prop_filter_map("zero or too large", move |raw| build(k, &raw)))
}

fn nonzero_scalar() -> impl Strategy<Value = Rational> {
    ((-5i64..=5).prop_filter("nonzero", |v| *v != 0), 1i64..=4)
        .prop_map(|(p, q)| Rational::new(BigInt::from(p), BigInt::from(q)).unwrap())
}

fn all_subset_ranks(c: &Q) -> Vec<usize> {
    let n = c.n();
    (0u32..(1 << n))
        .map(|mask| {
            let subset: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            subset_rank(c, &subset)
        })
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn rational_addition_is_exact(a in -50i64..50, b in 1i64..30, c in -50i64..50, d in 1i64..30) {
        let x = Rational::new(a.into(), b.into()).unwrap();
        let y = Rational::new(c.into(), d.into()).unwrap();
        let direct = &x + &y;
        let via_common = Rational::new(BigInt::from(a * d + c * b), BigInt::from(b * d)).unwrap();
        prop_assert_eq!(direct.to_string(), via_common.to_string());
        prop_assert_eq!(direct, via_common);
    }

    #[test]
    fn normalize_is_idempotent(c in collection()) {
        let raw = c.groups().iter().map(|g| (g.form.coeffs().to_vec(), g.mult)).collect();
        prop_assert_eq!(FormCollection::normalize(Rationals, raw, c.k()).unwrap(), c);
    }

    #[test]
    fn delete_and_contract_count_forms(c in collection()) {
        for g in 0..c.t() {
            let deleted = c.delete(g).map_or(0, |d| d.n());
            prop_assert_eq!(deleted, c.n() - 1);
            let (contracted, zeros) = c.contract(g);
            prop_assert_eq!(contracted.map_or(0, |d| d.n()) + zeros, c.n() - 1);
        }
    }

    #[test]
    fn essentialize_preserves_the_matroid(c in collection()) {
        let e = c.essentialize();
        prop_assert_eq!(e.n(), c.n());
        prop_assert_eq!(e.t(), c.t());
        prop_assert_eq!(e.multiplicities(), c.multiplicities());
        prop_assert_eq!(e.k(), c.rank());
        prop_assert_eq!(all_subset_ranks(&e), all_subset_ranks(&c));
    }

    #[test]
    fn contract_ignores_proportional_copies(c in collection(), s in nonzero_scalar()) {
        let g = 0;
        let mut first: Vec<(Vec<Rational>, usize)> = c.groups().iter().map(|g| (g.form.coeffs().to_vec(), g.mult)).collect();
        let mut second = first.clone();
        let v = first[g].0.clone();
        first.push((v.clone(), 1));
        second.push((v.iter().map(|x| x * &s).collect(), 1));
        let a = FormCollection::normalize(Rationals, first, c.k()).unwrap();
        let b = FormCollection::normalize(Rationals, second, c.k()).unwrap();
        prop_assert_eq!(&a, &b);
        let ga = a.groups().iter().position(|h| h.form.coeffs() == c.groups()[g].form.coeffs()).unwrap();
        prop_assert_eq!(a.contract(ga), b.contract(ga));
    }

    #[test]
    fn tutte_counts_bases(c in collection()) {
        let e = c.essentialize();
        let bases = (0..e.n()).combinations(e.k()).filter(|s| subset_rank(&e, s) == e.k()).count();
        let t = tutte_polynomial(&e);
        prop_assert_eq!(t.eval(&BigInt::from(1), &BigInt::from(1)), BigInt::from(bases));
    }

    #[test]
    fn hamming_weights_increase_to_n(c in collection()) {
        let e = c.essentialize();
        let hw = hamming_weights(&e).unwrap();
        prop_assert!(hw.d.windows(2).all(|w| w[0] < w[1]), "{:?}", hw.d);
        prop_assert_eq!(*hw.d.last().unwrap(), e.n());
        for a in 1..=e.n() {
            let h = height_of_fold_ideal(&e, a).unwrap();
            if a <= hw.get(1) {
                prop_assert_eq!(h, e.k());
            }
            if e.k() >= 2 && a > hw.get(e.k() - 1) {
                prop_assert_eq!(h, 1);
            }
        }
    }

    #[test]
    fn circuits_are_minimal_dependencies(c in collection()) {
        for j in circuits_up_to(&c, c.n()) {
            prop_assert_eq!(subset_rank(&c, &j), j.len() - 1);
            for drop in 0..j.len() {
                let rest: Vec<usize> = j.iter().enumerate().filter(|(i, _)| *i != drop).map(|(_, &x)| x).collect();
                prop_assert_eq!(subset_rank(&c, &rest), j.len() - 1);
            }
        }
    }

    #[test]
    fn methods_agree_and_tables_are_lawful(c in collection()) {
        let engine = BettiEngine::new();
        let e = c.essentialize();
        let limits = OracleLimits::default();
        for a in 1..=c.n() {
            let rec = engine.compute(&c, a, Method::Recursion).unwrap();
            let orc = betti_from_hilbert(&c, a, &limits).unwrap();
            prop_assert_eq!(&rec, &orc, "a = {}", a);
            let mut tables = vec![rec.clone()];
            if let Ok(t) = engine.compute(&c, a, Method::TutteHk) {
                prop_assert_eq!(&t, &rec);
                tables.push(t);
            }
            if e.k() == 3 {
                prop_assert_eq!(engine.k3_block(&e, a).unwrap(), rec.clone());
            }
            let height = height_of_fold_ideal(&c, a).unwrap();
            for t in &tables {
                prop_assert!(herzog_kuhl_residuals(t, a, height).iter().all(|&r| r == 0));
                prop_assert_eq!(t.pdim(), e.k().min(c.n() - a + 1));
                prop_assert!(t.tail_vanishes());
                prop_assert!(t.b.iter().skip(e.k().min(c.n() - a + 1)).all(|&v| v == 0));
            }
            let hf = hilbert_function(&c, a, a).unwrap() as u64;
            prop_assert_eq!(b1_tutte(&c, a).unwrap(), hf);
            prop_assert_eq!(rec.get(1), hf);
            if a < c.n() {
                prop_assert_eq!(b1_via_circuits(&c, a).unwrap(), hf);
            }
        }
    }

    #[test]
    fn scaling_a_form_changes_nothing(c in collection(), s in nonzero_scalar(), g in 0usize..6) {
        let g = g % c.t();
        let scaled = scale_group(&c, g, &s);
        let engine = BettiEngine::new();
        for a in 1..=c.n() {
            prop_assert_eq!(engine.betti(&c, a).unwrap(), BettiEngine::new().betti(&scaled, a).unwrap());
            prop_assert_eq!(b1_tutte(&c, a).unwrap(), b1_tutte(&scaled, a).unwrap());
        }
    }

    #[test]
    fn low_folds_give_powers_of_the_maximal_ideal(c in collection()) {
        let e = c.essentialize();
        let k = e.k() as i64;
        let d1 = hamming_weights(&e).unwrap().get(1);
        for a in 1..=d1 {
            for d in a..a + 2 {
                prop_assert_eq!(hilbert_function(&e, a, d).unwrap() as i128, binom(k + d as i64 - 1, d as i64));
            }
        }
    }

    #[test]
    fn relation_generators_per_circuit(c in collection()) {
        let n = c.n();
        for a in 1..n {
            let space = relation_space(&c, a).unwrap();
            let expected: i128 = circuits_up_to(&c, n - a + 1)
                .iter()
                .map(|j| {
                    let s = j.len() as i64;
                    binom(n as i64 - s, n as i64 - s - a as i64 + 1)
                })
                .sum();
            prop_assert_eq!(space.generators.len() as i128, expected);
            prop_assert!(space.rank <= space.ambient_dim);
        }
    }
}
