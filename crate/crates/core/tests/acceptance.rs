//! One line per acceptance criterion. Exits nonzero if any criterion fails.

use std::collections::{BTreeSet, HashMap};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use furstenberg_core::algebra::catalog::{by_name, catalog};
use furstenberg_core::algebra::{frac_part, solve_hit, FiniteGroup, QuadraticNumber, Rational, Z3BElement};
use furstenberg_core::codes::{
    intersection_pattern_check, search_isomorphism_code, verify_generalized_projection, verify_realization, BlockCode,
    PairOrigin, PatternVerdict, ProjectionVerdict, Realization, SearchOutcome,
};
use furstenberg_core::recurrence::{eqtech_search, EqtechOutcome};
use furstenberg_core::rotation::fixtures::{a_coding, four_colouring, golden_alpha, rat, third_interval};
use furstenberg_core::rotation::{
    classify_colouring, classify_minimality, strongly_dyn_syndetic, MinimalityVerdict, RotationCoding, WordClass,
};
use furstenberg_core::systems::{
    build_orbit_system, construct_phi_r, dedekind_witness_function, equivariant_isomorphism, is_furstenberg_system_of,
    phi_dedekind, ActionKind, FiniteConfig, FiniteSystem, FurstenbergVerdict, OrbitMode, SetPartitions,
};
use furstenberg_core::zshift::fixtures::{pinned_a, pinned_a_prime, pinned_b, pinned_b_prime, step};
use furstenberg_core::zshift::{
    uniform_recurrence_certificate, CertificateVerdict, RefutationKind, SequenceOracle, WordPattern,
};
use furstenberg_core::Symbol;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

type Outcome = Result<String, String>;

fn ensure(cond: bool, msg: impl Into<String>) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn err<E: std::fmt::Display>(e: E) -> String {
    e.to_string()
}

fn word(offsets: &[i64], symbols: &[Symbol]) -> WordPattern {
    WordPattern::new(offsets.to_vec(), symbols.to_vec()).unwrap()
}

fn periodic_rotation() -> Outcome {
    for r in 2..=6usize {
        let group = by_name(&format!("Z{r}")).ok_or("missing cyclic group")?;
        let f = FiniteConfig::new((0..r as Symbol).collect());
        let sys = build_orbit_system(&group, &f, OrbitMode::R).map_err(err)?;
        ensure(sys.len() == r, format!("r = {r}: {} points", sys.len()))?;
        let v = is_furstenberg_system_of(&group, &sys, &f).map_err(err)?;
        ensure(v.is_yes(), format!("r = {r}: rejected: {v:?}"))?;

        let n = 1000i64;
        let o = SequenceOracle::periodic((0..r as Symbol).collect()).map_err(err)?;
        let values = o.eval_window(-2 * n, 2 * n).map_err(err)?;
        let windows: BTreeSet<&[Symbol]> = (0..=2 * n as usize).map(|t| &values[t..t + 2 * n as usize + 1]).collect();
        ensure(windows.len() == r, format!("r = {r}: {} windowed orbit points", windows.len()))?;
    }
    Ok("r = 2..6 give r-point Furstenberg systems".into())
}

fn parity_isomorphic() -> Outcome {
    let code = BlockCode::parity(vec![0, 1, 2]).map_err(err)?;
    let (a, b) = (pinned_a(), pinned_b());
    let real = verify_realization(&code, &b, &a, 10_000).map_err(err)?;
    ensure(real == Realization::AgreesOnWindow { radius: 10_000 }, format!("{real:?}"))?;
    let found = match search_isomorphism_code(&a, &b, 3, 6, 1000).map_err(err)? {
        SearchOutcome::Found(c) => c,
        other => return Err(format!("search: {other:?}")),
    };
    ensure(found.projection.separates(), "search certificate does not separate")?;
    let p = verify_generalized_projection(&code, &b, 6, 1000).map_err(err)?;
    ensure(p.separates(), format!("projection: {p:?}"))?;
    Ok(format!("code {} at shift {}", found.code, found.shift))
}

fn parity_not_separating() -> Outcome {
    let code = BlockCode::parity(vec![0, 1]).map_err(err)?;
    let real = verify_realization(&code, &pinned_b_prime(), &pinned_a_prime(), 10_000).map_err(err)?;
    ensure(real == Realization::AgreesOnWindow { radius: 10_000 }, format!("{real:?}"))?;
    match verify_generalized_projection(&code, &pinned_b_prime(), 6, 1000).map_err(err)? {
        ProjectionVerdict::FailsToSeparate { left, right, origin: PairOrigin::LimitPoints, exact: true } => {
            let pair: BTreeSet<Vec<Symbol>> = [left.clone(), right.clone()].into();
            ensure(pair == [vec![0, 1], vec![1, 0]].into(), format!("limit words {left:?} {right:?}"))?;
            Ok(format!("limit words {left:?} and {right:?} not separated"))
        }
        other => Err(format!("projection: {other:?}")),
    }
}

fn step_vs_zero() -> Outcome {
    let (a, b) = (step(), SequenceOracle::zero());
    match search_isomorphism_code(&a, &b, 3, 6, 1000).map_err(err)? {
        SearchOutcome::Exhausted { .. } => {}
        other => return Err(format!("search: {other:?}")),
    }
    let report = intersection_pattern_check(&a, &b, &[0], 1, 1000).map_err(err)?;
    match report.verdict {
        PatternVerdict::Distinguished { tuple, .. } if report.exact => Ok(format!("distinguished by {tuple:?}")),
        other => Err(format!("patterns: {other:?}, exact = {}", report.exact)),
    }
}

fn sturmian_non_minimal() -> Outcome {
    let c = a_coding();
    let w = word(&[0, 1], &[0, 0]);
    let class = c.classify_word(&w).map_err(err)?;
    ensure(class == WordClass::Finite(vec![1]), format!("classify_word: {class:?}"))?;
    match classify_minimality(&c).map_err(err)?.verdict {
        MinimalityVerdict::NotMinimal { witness: Some(wit) } => ensure(wit.word == w, format!("witness {}", wit.word))?,
        other => return Err(format!("minimality: {other:?}")),
    }
    let cert = uniform_recurrence_certificate(&SequenceOracle::rotation(c), 2, 10_000, 1000).map_err(err)?;
    match cert.verdict {
        CertificateVerdict::CandidateRefutation { word: cw, exact: true, kind: RefutationKind::NonSyndeticWord, .. }
            if cw == w =>
        {
            Ok("00 occurs only at 1; certificate refutes exactly".into())
        }
        other => Err(format!("certificate: {other:?}")),
    }
}

fn third_interval_minimal() -> Outcome {
    let c = third_interval();
    ensure(c.boundary_hits().map_err(err)?.is_empty(), "boundary hits")?;
    let s = strongly_dyn_syndetic(&c, 1).map_err(err)?;
    ensure(s.strongly_dynamically_syndetic, format!("{s:?}"))?;
    ensure(classify_minimality(&c).map_err(err)?.is_minimal(), "not minimal")?;
    let cert = uniform_recurrence_certificate(&SequenceOracle::rotation(c), 8, 10_000, 1000).map_err(err)?;
    match cert.verdict {
        CertificateVerdict::Verified { gap } => Ok(format!("verified with gap {gap}")),
        other => Err(format!("certificate: {other:?}")),
    }
}

fn four_colouring_verdicts() -> Outcome {
    let report = classify_colouring(&four_colouring()).map_err(err)?;
    match &report.colouring.verdict {
        MinimalityVerdict::NotMinimal { witness: Some(w) } => {
            ensure(w.word == word(&[0, 1, 2], &[1, 2, 2]), format!("witness {}", w.word))?;
            ensure(w.locus.isolated_points() == vec![rat(0, 1)] && w.locus.is_finite_nonempty(), format!("locus {}", w.locus))?;
            ensure(w.occurrences == vec![0], format!("occurrences {:?}", w.occurrences))?;
        }
        other => return Err(format!("colouring: {other:?}")),
    }
    for (label, r) in &report.per_label {
        ensure(r.is_minimal(), format!("colour {label} not minimal"))?;
    }
    Ok("122 occurs only at 0; all four colours minimal".into())
}

fn dedekind_catalog() -> Outcome {
    let mut checked = 0usize;
    for (name, g) in catalog() {
        let verdict = g.is_dedekind().map_err(err)?;
        let expect = g.is_abelian() || name == "Q8";
        ensure(verdict.is_dedekind() == expect, format!("{name}: is_dedekind = {}", verdict.is_dedekind()))?;
        if !expect {
            let f = dedekind_witness_function(&g).map_err(err)?;
            let lt = build_orbit_system(&g, &f, OrbitMode::Ltilde).map_err(err)?;
            let v = is_furstenberg_system_of(&g, &lt, &f).map_err(err)?;
            ensure(!v.is_yes(), format!("{name}: Ltilde system accepted"))?;
            let xr = build_orbit_system(&g, &f, OrbitMode::R).map_err(err)?;
            ensure(equivariant_isomorphism(&xr, &lt).map_err(err)?.is_none(), format!("{name}: isomorphic"))?;
        }
        if (g.is_abelian() && g.order() <= 6) || name == "Q8" {
            for f in SetPartitions::new(g.order()) {
                phi_dedekind(&g, &f).map_err(|e| format!("{name} {:?}: {e}", f.symbols()))?;
                checked += 1;
            }
        }
    }
    Ok(format!("{checked} partitions verified"))
}

/// `(r, support bitmask)` with bit `i − 1` for index `i`.
type Z3B = (u8, u32);

fn z3b_mul(a: Z3B, b: Z3B) -> Z3B {
    ((a.0 + b.0) % 3, a.1 ^ b.1)
}

fn z3b_inv(a: Z3B) -> Z3B {
    ((3 - a.0) % 3, a.1)
}

fn z3b_value(a: Z3B) -> i8 {
    if a == (0, 0) {
        return 0;
    }
    let m = a.1.count_ones();
    let segment = a.1 != 0 && a.1 == (1u32 << m) - 1;
    match a.0 {
        1 if segment && m.is_multiple_of(2) => 1,
        2 if segment && m % 2 == 1 => 1,
        _ => -1,
    }
}

fn to_mask(e: &Z3BElement) -> Z3B {
    (e.r(), e.support().iter().fold(0, |m, &i| m | 1 << (i - 1)))
}

fn eqtech() -> Outcome {
    let sets = [vec![Z3BElement::identity()], vec![Z3BElement::new(1, vec![1, 2]).map_err(err)?]];
    let mut found = Vec::new();
    for s in &sets {
        let w = match eqtech_search(s, 8, 6).map_err(err)? {
            EqtechOutcome::Found(w) => w,
            other => return Err(format!("S = {s:?}: {other:?}")),
        };
        let (c, x) = (to_mask(&w.c), to_mask(&w.x));
        let cx = z3b_mul(c, x);
        ensure(z3b_value(x) != z3b_value(cx), "f(x) = f(cx)")?;
        ensure(w.transcript.len() == s.len() * s.len(), "transcript incomplete")?;
        for t in &w.transcript {
            let (a, b) = (to_mask(&t.a), to_mask(&t.b));
            let lhs = z3b_value(z3b_mul(z3b_mul(a, z3b_inv(x)), b));
            let rhs = z3b_value(z3b_mul(z3b_mul(a, z3b_inv(cx)), b));
            ensure(lhs == rhs && lhs == t.lhs && rhs == t.rhs, "transcript does not re-verify")?;
        }
        found.push(format!("c = {}, x = {}", w.c, w.x));
    }
    Ok(found.join("; "))
}

fn relabel(group: &FiniteGroup, s: &FiniteSystem, perm: &[usize]) -> FiniteSystem {
    let n = s.len();
    let mut points = vec![FiniteConfig::new(vec![]); n];
    let mut action = vec![0; group.order() * n];
    for x in 0..n {
        points[perm[x]] = s.points()[x].clone();
        for g in group.elements() {
            action[g * n + perm[x]] = perm[s.act(g, x)];
        }
    }
    let observable = s.observable().map(|o| {
        let mut v = vec![0; n];
        for x in 0..n {
            v[perm[x]] = o[x];
        }
        v
    });
    FiniteSystem::new(group, points, action, perm[s.base()], observable, s.kind()).unwrap()
}

fn uniqueness() -> Outcome {
    let groups = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    let (mut accepted, mut proper_extensions) = (0usize, 0usize);
    for _ in 0..100 {
        let (name, g) = &groups[rng.gen_range(0..groups.len())];
        let k = rng.gen_range(1..=4);
        let f = FiniteConfig::new((0..g.order()).map(|_| rng.gen_range(0..k)).collect()).canonical_partition();
        let xr = build_orbit_system(g, &f, OrbitMode::R).map_err(err)?;
        let xl = build_orbit_system(g, &f, OrbitMode::L).map_err(err)?;
        let mut perm: Vec<usize> = (0..xr.len()).collect();
        perm.reverse();
        let candidates = [xr.clone(),
            xl.clone(),
            build_orbit_system(g, &f, OrbitMode::Ltilde).map_err(err)?,
            relabel(g, &xr, &perm),
            xr.product_orbit(&xl, g).map_err(err)?];
        for (i, s) in candidates.iter().enumerate() {
            let FurstenbergVerdict::Yes { base, observable } = is_furstenberg_system_of(g, s, &f).map_err(err)? else {
                ensure(i > 1, format!("{name} {:?}: orbit system {i} rejected", f.symbols()))?;
                continue;
            };
            let phi = construct_phi_r(g, &s.with_base_and_observable(base, observable).map_err(err)?, &f).map_err(err)?;
            ensure(phi.injective, format!("{name} {:?}: system {i} maps non-injectively", f.symbols()))?;
            accepted += 1;
        }
        let regular = build_orbit_system(g, &FiniteConfig::new((0..g.order() as Symbol).collect()), OrbitMode::R)
            .map_err(err)?;
        let ext = xr.product_orbit(&regular, g).map_err(err)?;
        ensure(ext.kind() == ActionKind::Action, "extension kind")?;
        let phi = construct_phi_r(g, &ext, &f).map_err(err)?;
        ensure(phi.injective == (xr.len() == g.order()), format!("{name} {:?}: extension injectivity", f.symbols()))?;
        proper_extensions += usize::from(!phi.injective);
    }
    ensure(proper_extensions > 0, "no fixture produced a proper extension")?;
    Ok(format!("{accepted} accepted systems isomorphic; {proper_extensions} proper extensions onto X_R"))
}

fn locus_brute_force(name: &str, c: &RotationCoding, words: &[WordPattern], h_max: i64) -> Result<usize, String> {
    let reach = words.iter().flat_map(|w| [w.min_offset().abs(), w.max_offset().abs()]).max().unwrap_or(0);
    let labels = c.label_window(-h_max - reach, h_max + reach).map_err(err)?;
    let at = |n: i64| labels[(n + h_max + reach) as usize];
    let points: Vec<QuadraticNumber> = (-h_max..=h_max).map(|h| c.point(h)).collect();
    for w in words {
        let locus = c.word_locus(w).map_err(err)?;
        for h in -h_max..=h_max {
            let occurs = w.pairs().all(|(g, s)| at(h + g) == s);
            if occurs != locus.contains(&points[(h + h_max) as usize]) {
                return Err(format!("{name}: word {w} at {h}"));
            }
        }
    }
    Ok(words.len())
}

fn fixture_words(labels: &[Symbol]) -> Vec<WordPattern> {
    let mut out = Vec::new();
    let mut cur: Vec<Vec<Symbol>> = vec![vec![]];
    for _ in 0..3 {
        cur = cur.iter().flat_map(|w| labels.iter().map(move |&l| [w.as_slice(), &[l]].concat())).collect();
        out.extend(cur.iter().map(|w| WordPattern::contiguous(w.clone()).unwrap()));
    }
    for &(x, y) in &[(0, 2), (0, 3), (-1, 1), (-2, 5)] {
        for &s in labels {
            for &t in labels {
                out.push(word(&[x, y], &[s, t]));
            }
        }
    }
    out
}

fn oracle_equivalence() -> Outcome {
    let mut codings = vec![("a-coding".to_string(), a_coding()), ("third".into(), third_interval())];
    let four = four_colouring();
    for l in four.labels() {
        codings.push((format!("four/indicator {l}"), four.indicator(l).map_err(err)?));
    }
    for (name, c) in codings.clone() {
        codings.push((format!("{name}/right-limit"), c.right_limit_coding().map_err(err)?));
    }
    codings.push(("four-colouring".into(), four));
    let mut words = 0;
    for (name, c) in &codings {
        words += locus_brute_force(name, c, &fixture_words(&c.labels()), 2000)?;
    }

    let mut hits = 0usize;
    let two = QuadraticNumber::new(Rational::from(-1), Rational::from(1), 2).map_err(err)?;
    for alpha in [golden_alpha(), two] {
        let d = alpha.d();
        let mut table: HashMap<QuadraticNumber, i64> = HashMap::new();
        let mut p = QuadraticNumber::integer(0, d).map_err(err)?;
        table.insert(p, 0);
        for n in 1..=10_000i64 {
            p = frac_part(&p.checked_add(&alpha).map_err(err)?);
            table.insert(p, n);
        }
        let mut q = QuadraticNumber::integer(0, d).map_err(err)?;
        for n in 1..=10_000i64 {
            q = frac_part(&q.checked_sub(&alpha).map_err(err)?);
            table.insert(q, -n);
        }
        let third = QuadraticNumber::rational(Rational::new(1, 3), d).map_err(err)?;
        let mut probes: Vec<QuadraticNumber> = table.keys().cloned().collect();
        for k in (-15_000i64..=15_000).step_by(7) {
            let base = frac_part(&alpha.scale(Rational::from(k)));
            probes.push(frac_part(&base.checked_add(&third).map_err(err)?));
            probes.push(base);
        }
        for k in 0..50 {
            probes.push(QuadraticNumber::rational(Rational::new(k, 50), d).map_err(err)?);
        }
        for p in &probes {
            let solved = solve_hit(&alpha, p).map_err(err)?;
            let brute = table.get(p).copied();
            match solved {
                Some(n) if n.abs() <= 10_000 => ensure(brute == Some(n), format!("solve_hit {p} = {n}, brute {brute:?}"))?,
                Some(n) => ensure(
                    brute.is_none() && frac_part(&alpha.scale(Rational::from(n))) == *p,
                    format!("solve_hit {p} = {n} out of range"),
                )?,
                None => ensure(brute.is_none(), format!("solve_hit {p} = none, brute {brute:?}"))?,
            }
            hits += usize::from(solved.is_some());
        }
    }

    let mut groups = 0;
    for (name, g) in catalog() {
        let n = g.order();
        let mut brute: Vec<Vec<usize>> = Vec::new();
        for mask in 1u32..1 << n {
            let set: Vec<usize> = (0..n).filter(|i| mask >> i & 1 == 1).collect();
            let closed = set.contains(&g.identity())
                && set.iter().all(|&a| set.iter().all(|&b| mask >> g.mul(a, b) & 1 == 1));
            if closed {
                brute.push(set);
            }
        }
        let mut got: Vec<Vec<usize>> = g.subgroups().map_err(err)?.iter().map(|s| s.as_slice().to_vec()).collect();
        brute.sort();
        got.sort();
        ensure(brute == got, format!("{name}: subgroups differ"))?;
        groups += 1;
    }
    Ok(format!("{words} words on {} codings, {hits} hits solved, {groups} groups", codings.len()))
}

fn main() -> ExitCode {
    let criteria: [(&str, u64, fn() -> Outcome); 11] = [
        ("periodic systems are rotations", 1, periodic_rotation),
        ("parity-3 isomorphism", 10, parity_isomorphic),
        ("parity-2 realizes but does not separate", 5, parity_not_separating),
        ("step and zero", 5, step_vs_zero),
        ("sturmian word 00", 1, sturmian_non_minimal),
        ("third interval is minimal", 2, third_interval_minimal),
        ("four-colouring", 2, four_colouring_verdicts),
        ("dedekind catalog", 60, dedekind_catalog),
        ("eqtech witnesses", 60, eqtech),
        ("uniqueness suite", 30, uniqueness),
        ("oracle equivalence", 600, oracle_equivalence),
    ];
    let mut failed = 0;
    for (i, (name, budget, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let result = run();
        let elapsed = start.elapsed();
        let over = elapsed > Duration::from_secs(*budget);
        let (tag, detail) = match (&result, over) {
            (Ok(d), false) => ("PASS", d.clone()),
            (Ok(d), true) => ("FAIL", format!("over budget: {d}")),
            (Err(e), _) => ("FAIL", e.clone()),
        };
        if tag == "FAIL" {
            failed += 1;
        }
        println!("criterion {:>2} {tag} {name}: {detail} ({:.2}s, budget {budget}s)", i + 1, elapsed.as_secs_f64());
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
