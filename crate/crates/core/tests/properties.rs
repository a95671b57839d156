use std::cmp::Ordering;
use std::collections::BTreeMap;

use furstenberg_core::algebra::catalog::{by_name, catalog};
use furstenberg_core::algebra::{frac_part, qnum_compare, solve_hit, QuadraticNumber, Rational, Z3BElement};
use furstenberg_core::codes::{apply_code, apply_finite_code, extract_finite_code, BlockCode, LocalRule};
use furstenberg_core::recurrence::{chromatic_recurrence_check, syndetic_return_check, CandidateSet, RecurrenceVerdict};
use furstenberg_core::rotation::fixtures::{a_coding, four_colouring, golden_alpha, rat, third_interval};
use furstenberg_core::rotation::{
    classify_minimality, strongly_dyn_syndetic, CircleArc, CircleIntervalSet, MinimalityVerdict, RotationCoding,
    WordClass,
};
use furstenberg_core::systems::{
    build_orbit_system, equivariant_isomorphism, is_equivariant, is_furstenberg_system_of, shift, ActionKind,
    FiniteConfig, OrbitMode, SetPartitions, ShiftMode,
};
use furstenberg_core::zshift::{
    occurrences, uniform_recurrence_certificate, CertificateVerdict, SequenceOracle, SetExpr, WordPattern,
};
use furstenberg_core::Symbol;
use proptest::prelude::*;

fn qnum(u: (i64, i64), v: (i64, i64), d: u32) -> QuadraticNumber {
    QuadraticNumber::new(Rational::new(u.0.into(), u.1.into()), Rational::new(v.0.into(), v.1.into()), d).unwrap()
}

fn arb_qnum(d: u32) -> impl Strategy<Value = QuadraticNumber> {
    (-50i64..50, 1i64..12, -20i64..20, 1i64..12).prop_map(move |(a, b, c, e)| qnum((a, b), (c, e), d))
}

fn arb_set() -> impl Strategy<Value = SetExpr> {
    let leaf = prop_oneof![
        (-5i64..5, 1i64..6).prop_map(|(a, d)| SetExpr::progression(a, d).unwrap()),
        (-20i64..20).prop_map(|from| SetExpr::HalfLine { from }),
        proptest::collection::vec(-30i64..30, 0..6).prop_map(SetExpr::finite),
    ];
    leaf.prop_recursive(2, 8, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SetExpr::Union(vec![a, b])),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| SetExpr::Inter(vec![a, b])),
            inner.prop_map(SetExpr::complement),
        ]
    })
}

fn arb_binary_oracle() -> impl Strategy<Value = SequenceOracle> {
    prop_oneof![
        proptest::collection::vec(0u32..2, 1..8).prop_map(|w| SequenceOracle::periodic(w).unwrap()),
        arb_set().prop_map(SequenceOracle::set),
        (arb_set(), proptest::collection::btree_map(-20i64..20, 0u32..2, 0..4))
            .prop_map(|(s, p)| SequenceOracle::with_patch(SequenceOracle::set(s), p)),
        (proptest::collection::vec(0u32..2, 1..6), -10i64..10)
            .prop_map(|(w, t)| SequenceOracle::shifted(SequenceOracle::periodic(w).unwrap(), t)),
    ]
}

fn arb_binary_code() -> impl Strategy<Value = BlockCode> {
    proptest::collection::btree_set(-3i64..=3, 1..4).prop_flat_map(|offsets| {
        let k = offsets.len();
        proptest::collection::vec(0u32..2, 1 << k).prop_map(move |table| {
            let rule = LocalRule::new(vec![0, 1], k, table).unwrap();
            BlockCode::new(offsets.iter().copied().collect(), rule).unwrap()
        })
    })
}

fn arb_word() -> impl Strategy<Value = WordPattern> {
    proptest::collection::btree_map(-4i64..4, 0u32..2, 1..4).prop_map(|m| {
        let (offsets, symbols): (Vec<i64>, Vec<Symbol>) = m.into_iter().unzip();
        WordPattern::new(offsets, symbols).unwrap()
    })
}

/// Endpoints drawn from rationals with denominator 12 and the first few orbit points.
fn endpoint_pool() -> Vec<QuadraticNumber> {
    let mut pool: Vec<QuadraticNumber> = (0..12).map(|k| rat(k, 12)).collect();
    for j in 1..5 {
        pool.push(frac_part(&golden_alpha().scale(Rational::from(j))));
    }
    pool
}

fn arb_binary_coding() -> impl Strategy<Value = RotationCoding> {
    let n = endpoint_pool().len();
    (0..n, 0..n, any::<bool>(), any::<bool>()).prop_filter_map("distinct endpoints", |(i, j, lc, hc)| {
        let pool = endpoint_pool();
        if i == j {
            return None;
        }
        let arc = CircleArc::new(pool[i], lc, pool[j], hc);
        let one = CircleIntervalSet::from_arc(&arc).unwrap();
        Some(RotationCoding::new(golden_alpha(), vec![(0, one.complement()), (1, one)], rat(0, 1)).unwrap())
    })
}

fn rotation_fixtures() -> Vec<RotationCoding> {
    let four = four_colouring();
    let mut v = vec![a_coding(), third_interval(), four.right_limit_coding().unwrap()];
    for l in four.labels() {
        v.push(four.indicator(l).unwrap());
    }
    v.push(four);
    v
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn compare_is_consistent_with_floats(x in arb_qnum(5), y in arb_qnum(5), z in arb_qnum(5)) {
        let xy = qnum_compare(&x, &y).unwrap();
        prop_assert_eq!(qnum_compare(&y, &x).unwrap(), xy.reverse());
        if xy != Ordering::Greater && qnum_compare(&y, &z).unwrap() != Ordering::Greater {
            prop_assert_ne!(qnum_compare(&x, &z).unwrap(), Ordering::Greater);
        }
        let (fx, fy) = (x.to_f64(), y.to_f64());
        if (fx - fy).abs() > 1e-9 * (1.0 + fx.abs()) {
            prop_assert_eq!(xy, fx.partial_cmp(&fy).unwrap());
        }
    }

    #[test]
    fn floor_and_fraction_reconstruct(x in arb_qnum(2)) {
        let f = frac_part(&x);
        prop_assert_eq!(f.add_rational(Rational::from(x.floor() as i64)), x);
        prop_assert_ne!(qnum_compare(&f, &rat(0, 1)).unwrap(), Ordering::Less);
        prop_assert_eq!(f.to_f64() < 1.0, true);
    }

    #[test]
    fn solve_hit_is_sound(n in -100_000i64..100_000, shift in -3i64..3) {
        let alpha = golden_alpha();
        let p = frac_part(&alpha.scale(Rational::from(n))).add_rational(Rational::from(shift));
        prop_assert_eq!(solve_hit(&alpha, &p).unwrap(), Some(n));
        let off = p.add_rational(Rational::new(1, 3));
        prop_assert_eq!(solve_hit(&alpha, &off).unwrap(), None);
    }

    #[test]
    fn z3b_group_laws(
        a in (0u8..3, proptest::collection::btree_set(1u32..=10, 0..5)),
        b in (0u8..3, proptest::collection::btree_set(1u32..=10, 0..5)),
        c in (0u8..3, proptest::collection::btree_set(1u32..=10, 0..5)),
    ) {
        let el = |(r, s): (u8, std::collections::BTreeSet<u32>)| Z3BElement::new(r, s.into_iter().collect()).unwrap();
        let (x, y, z) = (el(a), el(b), el(c));
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert!(x.mul(&x.inverse()).is_identity());
        prop_assert_eq!(x.mul(&y), y.mul(&x));
    }

    #[test]
    fn occurrences_match_naive_scan(o in arb_binary_oracle(), w in arb_word(), lo in -60i64..0, len in 0i64..120) {
        let hi = lo + len;
        prop_assume!(w.symbols().iter().all(|s| o.alphabet().contains(s)));
        let got = occurrences(&o, &w, lo, hi).unwrap();
        let naive: Vec<i64> = (lo..=hi)
            .filter(|&h| w.pairs().all(|(g, s)| o.eval(h + g).unwrap() == s))
            .collect();
        prop_assert_eq!(got, naive);
    }

    #[test]
    fn identity_code_is_transparent(o in arb_binary_oracle()) {
        let image = apply_code(&BlockCode::identity(vec![0, 1]), &o).unwrap();
        prop_assert_eq!(image.eval_window(-100, 100).unwrap(), o.eval_window(-100, 100).unwrap());
    }

    #[test]
    fn verified_certificates_recheck(o in arb_binary_oracle(), l in 1usize..6) {
        let radius = 300;
        let cert = uniform_recurrence_certificate(&o, l, radius, 40).unwrap();
        if let CertificateVerdict::Verified { gap } = cert.verdict {
            prop_assert!(gap <= 40);
            let values = o.eval_window(0, l as i64 - 1).unwrap();
            for k in 1..=l {
                let w = WordPattern::contiguous(values[..k].to_vec()).unwrap();
                let pos = occurrences(&o, &w, -radius, radius).unwrap();
                prop_assert!(pos.len() >= 2);
                prop_assert!((pos[0] + radius) as u64 <= gap && (radius - pos[pos.len() - 1]) as u64 <= gap);
                prop_assert!(pos.windows(2).all(|p| (p[1] - p[0]) as u64 <= gap));
            }
        }
    }

    #[test]
    fn periodic_certificates_verify_within_period(w in proptest::collection::vec(0u32..3, 1..10), l in 1usize..=64) {
        let q = w.len() as u64;
        let o = SequenceOracle::periodic(w).unwrap();
        let cert = uniform_recurrence_certificate(&o, l, 4 * q as i64 + 10, q).unwrap();
        prop_assert!(matches!(cert.verdict, CertificateVerdict::Verified { gap } if gap <= q), "{:?}", cert.verdict);
    }

    #[test]
    fn codes_commute_with_shifts(o in arb_binary_oracle(), code in arb_binary_code(), t in -15i64..15) {
        let image = apply_code(&code, &o).unwrap();
        let shifted = apply_code(&code, &SequenceOracle::shifted(o, t)).unwrap();
        for n in -40..40 {
            prop_assert_eq!(image.eval(n + t).unwrap(), shifted.eval(n).unwrap());
        }
    }

    #[test]
    fn composition_is_application(o in arb_binary_oracle(), inner in arb_binary_code(), outer in arb_binary_code()) {
        let twice = apply_code(&outer, &apply_code(&inner, &o).unwrap()).unwrap();
        let once = apply_code(&BlockCode::compose(&outer, &inner).unwrap(), &o).unwrap();
        prop_assert_eq!(twice.eval_window(-50, 50).unwrap(), once.eval_window(-50, 50).unwrap());
    }

    #[test]
    fn random_codings_classify_consistently(c in arb_binary_coding(), w in arb_word()) {
        let o = SequenceOracle::rotation(c.clone());
        prop_assume!(w.symbols().iter().all(|s| o.alphabet().contains(s)));
        let found = occurrences(&o, &w, -10_000, 10_000).unwrap();
        match c.classify_word(&w).unwrap() {
            WordClass::Finite(list) => prop_assert_eq!(found, list),
            WordClass::Empty => prop_assert!(found.is_empty()),
            WordClass::Syndetic(j) => {
                let bound = 3 * (1.0 / j.longest_arc_f64()).ceil() as i64;
                prop_assert!(found.windows(2).all(|p| p[1] - p[0] <= bound));
            }
        }
    }

    #[test]
    fn random_codings_minimality(c in arb_binary_coding()) {
        let report = classify_minimality(&c).unwrap();
        let s = strongly_dyn_syndetic(&c, 1).unwrap();
        if s.strongly_dynamically_syndetic && !s.used_interior {
            prop_assert!(report.is_minimal());
        }
        match &report.verdict {
            MinimalityVerdict::Minimal if report.return_bound < 64 => {
                let cert = uniform_recurrence_certificate(
                    &SequenceOracle::rotation(c.clone()), report.return_bound as usize + 1, 10_000, 10_000,
                ).unwrap();
                prop_assert!(matches!(cert.verdict, CertificateVerdict::Verified { .. }), "{:?}", cert.verdict);
            }
            MinimalityVerdict::NotMinimal { witness: Some(w) } => {
                let found = occurrences(&SequenceOracle::rotation(c.clone()), &w.word, -10_000, 10_000).unwrap();
                prop_assert_eq!(&found, &w.occurrences);
                prop_assert!(found.contains(&w.position));
            }
            _ => {}
        }
    }
}

#[test]
fn fixture_words_classify_consistently() {
    for c in rotation_fixtures() {
        let o = SequenceOracle::rotation(c.clone());
        let labels = c.labels();
        for &x in &labels {
            for &y in &labels {
                for gap in 1..4 {
                    let w = WordPattern::new(vec![0, gap], vec![x, y]).unwrap();
                    let found = occurrences(&o, &w, -10_000, 10_000).unwrap();
                    match c.classify_word(&w).unwrap() {
                        WordClass::Finite(list) => assert_eq!(found, list),
                        WordClass::Empty => assert!(found.is_empty()),
                        WordClass::Syndetic(j) => {
                            let bound = 3 * (1.0 / j.longest_arc_f64()).ceil() as i64;
                            assert!(found.windows(2).all(|p| p[1] - p[0] <= bound), "{w} gap over {bound}");
                        }
                    }
                }
            }
        }
    }
}

#[test]
fn fixture_minimality_directions() {
    for c in rotation_fixtures() {
        let report = classify_minimality(&c).unwrap();
        let all_strong = c.labels().iter().all(|&l| strongly_dyn_syndetic(&c, l).unwrap().strongly_dynamically_syndetic);
        if all_strong {
            assert!(report.is_minimal());
        }
        match &report.verdict {
            MinimalityVerdict::Minimal => {
                let l = (report.return_bound as usize + 1).min(64);
                let cert = uniform_recurrence_certificate(&SequenceOracle::rotation(c.clone()), l, 10_000, 10_000).unwrap();
                assert!(matches!(cert.verdict, CertificateVerdict::Verified { .. }), "{:?}", cert.verdict);
            }
            MinimalityVerdict::NotMinimal { witness } => {
                let w = witness.as_ref().expect("short witness");
                let found = occurrences(&SequenceOracle::rotation(c.clone()), &w.word, -10_000, 10_000).unwrap();
                assert_eq!(found, w.occurrences);
            }
        }
    }
}

#[test]
fn action_laws_hold_on_orbit_systems() {
    for (name, g) in catalog() {
        for f in SetPartitions::new(g.order()).step_by(97).take(12) {
            for (mode, kind) in [
                (OrbitMode::R, ActionKind::Action),
                (OrbitMode::L, ActionKind::Action),
                (OrbitMode::Ltilde, ActionKind::Action),
                (OrbitMode::Anti, ActionKind::AntiAction),
            ] {
                let s = build_orbit_system(&g, &f, mode).unwrap();
                assert_eq!(s.action_law_violation(&g, kind), None, "{name} {mode:?}");
            }
        }
    }
}

#[test]
fn isomorphism_search_is_symmetric() {
    for (name, g) in catalog().into_iter().filter(|(_, g)| g.order() <= 6) {
        let parts: Vec<FiniteConfig> = SetPartitions::new(g.order()).collect();
        for f in parts.iter().step_by(7) {
            let xr = build_orbit_system(&g, f, OrbitMode::R).unwrap();
            for mode in [OrbitMode::L, OrbitMode::Ltilde] {
                let other = build_orbit_system(&g, f, mode).unwrap();
                let there = equivariant_isomorphism(&xr, &other).unwrap();
                let back = equivariant_isomorphism(&other, &xr).unwrap();
                assert_eq!(there.is_some(), back.is_some(), "{name} {mode:?}");
                if let (Some(p), Some(q)) = (there, back) {
                    assert!(is_equivariant(&xr, &other, &p) && is_equivariant(&other, &xr, &q));
                }
            }
        }
    }
}

#[test]
fn anti_systems_of_abelian_groups() {
    for (name, g) in catalog().into_iter().filter(|(_, g)| g.is_abelian()) {
        for f in SetPartitions::new(g.order()) {
            let s = build_orbit_system(&g, &f, OrbitMode::Anti).unwrap();
            assert!(is_furstenberg_system_of(&g, &s, &f).unwrap().is_yes(), "{name} {:?}", f.symbols());
        }
    }
    let s3 = by_name("S3").unwrap();
    let fails = SetPartitions::new(6).any(|f| {
        let s = build_orbit_system(&s3, &f, OrbitMode::Anti).unwrap();
        !is_furstenberg_system_of(&s3, &s, &f).unwrap().is_yes()
    });
    assert!(fails);
}

#[test]
fn dedekind_dichotomy() {
    for (name, g) in catalog() {
        let all_accepted = SetPartitions::new(g.order()).all(|f| {
            let s = build_orbit_system(&g, &f, OrbitMode::Ltilde).unwrap();
            is_furstenberg_system_of(&g, &s, &f).unwrap().is_yes()
        });
        assert_eq!(all_accepted, g.is_dedekind().unwrap().is_dedekind(), "{name}");
    }
}

#[test]
fn isomorphisms_of_right_systems_are_block_codes() {
    for (name, g) in catalog().into_iter().filter(|(_, g)| g.order() <= 8) {
        for f in SetPartitions::new(g.order()).step_by(53).take(8) {
            let xr = build_orbit_system(&g, &f, OrbitMode::R).unwrap();
            for h in g.elements() {
                let moved = shift(&g, &f, h, ShiftMode::Right).unwrap();
                let other = build_orbit_system(&g, &moved, OrbitMode::R).unwrap();
                let phi = equivariant_isomorphism(&xr, &other).unwrap().expect("same orbit");
                let code = extract_finite_code(&g, &xr, &other, &phi).unwrap();
                for (x, &y) in phi.iter().enumerate() {
                    let image = apply_finite_code(&g, &code, &xr.points()[x]).unwrap();
                    assert_eq!(image, other.points()[y], "{name} {:?}", f.symbols());
                }
            }
        }
    }
}

fn minimal_fixtures() -> Vec<RotationCoding> {
    rotation_fixtures().into_iter().filter(|c| classify_minimality(c).unwrap().is_minimal()).collect()
}

fn candidate_sets() -> Vec<CandidateSet<i64>> {
    [vec![1], vec![2], vec![3, 5], vec![4], vec![-7, 7], vec![13], vec![1, 2, 3]]
        .into_iter()
        .map(|v| CandidateSet::integers(v).unwrap())
        .collect()
}

fn settled(v: &RecurrenceVerdict<i64>) -> Option<bool> {
    match v {
        RecurrenceVerdict::Found { .. } => Some(true),
        RecurrenceVerdict::NotFoundInWindow { exact: true } => Some(false),
        RecurrenceVerdict::NotFoundInWindow { exact: false } => None,
    }
}

#[test]
fn chromatic_verdicts_agree_with_minimal_subsystem() {
    for c in minimal_fixtures() {
        let full = SequenceOracle::rotation(c.clone());
        let sub = SequenceOracle::rotation(c.right_limit_coding().unwrap());
        for r in candidate_sets() {
            let a = settled(&chromatic_recurrence_check(&r, &full, 2000).unwrap());
            let b = settled(&chromatic_recurrence_check(&r, &sub, 2000).unwrap());
            if let (Some(a), Some(b)) = (a, b) {
                assert_eq!(a, b, "{:?}", r.elements());
            }
        }
    }
}

#[test]
fn chromatic_witness_gives_syndetic_return() {
    for c in minimal_fixtures() {
        for label in c.labels() {
            let indicator = SequenceOracle::rotation(c.indicator(label).unwrap());
            for r in candidate_sets() {
                if let RecurrenceVerdict::Found { colour, g, .. } = chromatic_recurrence_check(&r, &indicator, 2000).unwrap() {
                    let set = if colour == 1 {
                        indicator.clone()
                    } else {
                        apply_code(&BlockCode::complement(), &indicator).unwrap()
                    };
                    let single = CandidateSet::integers(vec![g]).unwrap();
                    assert!(syndetic_return_check(&single, &set, 2000).unwrap().is_found());
                }
            }
        }
    }
}

#[test]
fn patched_sets_keep_their_patch() {
    let patch: BTreeMap<i64, Symbol> = [(3, 1), (-2, 0)].into();
    let o = SequenceOracle::with_patch(SequenceOracle::zero(), patch);
    assert_eq!(o.eval_window(-2, 3).unwrap(), vec![0, 0, 0, 0, 0, 1]);
}
