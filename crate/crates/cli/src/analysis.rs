//! Core computations wrapped as report findings.

use furstenberg_core::algebra::{FiniteGroup, Z3BElement};
use furstenberg_core::codes::{
    intersection_pattern_check, search_isomorphism_code, verify_generalized_projection, verify_realization, BlockCode,
    PatternVerdict, ProjectionVerdict, Realization, SearchOutcome,
};
use furstenberg_core::recurrence::{
    chromatic_recurrence_check, chromatic_recurrence_check_finite, eqtech_search, eqtech_verify, syndetic_return_check,
    CandidateSet, EqtechOutcome, RecurrenceVerdict,
};
use furstenberg_core::rotation::{
    classify_colouring, strongly_dyn_syndetic, MinimalityReport, MinimalityVerdict, RotationCoding, WordClass,
};
use furstenberg_core::systems::{
    build_orbit_system, construct_phi_r, equivariant_isomorphism, is_furstenberg_anti_system_of,
    is_furstenberg_system_of, ActionKind, FiniteConfig, FiniteSystem, FurstenbergVerdict, OrbitMode,
};
use furstenberg_core::zshift::{
    occurrences, uniform_recurrence_certificate, CertificateVerdict, GapStats, SequenceOracle, WordPattern,
};
use furstenberg_core::Symbol;
use serde_json::json;

use crate::error::{CliError, CliResult};
use crate::report::{Caveat, Finding};
use crate::scenario::CodeFile;

pub fn symbols_text(values: &[Symbol]) -> String {
    let wide = values.iter().any(|&s| s > 9);
    let parts: Vec<String> = values.iter().map(Symbol::to_string).collect();
    parts.join(if wide { "," } else { "" })
}

pub fn group(g: &FiniteGroup) -> CliResult<Vec<Finding>> {
    let lattice = g.subgroup_lattice()?;
    let normal = lattice.normal.iter().filter(|&&n| n).count();
    let summary = format!(
        "order {}, {}abelian, {} subgroups, {normal} normal",
        g.order(),
        if g.is_abelian() { "" } else { "non-" },
        lattice.subgroups.len()
    );
    let verdict = g.is_dedekind()?;
    let (name, why) = match &verdict {
        furstenberg_core::algebra::DedekindVerdict::Dedekind => ("Dedekind", "every subgroup is normal".to_string()),
        furstenberg_core::algebra::DedekindVerdict::NonDedekind { subgroup, a, b } => (
            "NonDedekind",
            format!("subgroup {:?} is not normal: b = {} but b·a is not in a·H for a = {}", subgroup.as_slice(), g.name(*b), g.name(*a)),
        ),
    };
    Ok(vec![
        Finding::new(
            "structure",
            "Group",
            Caveat::Exact,
            summary,
            json!({"order": g.order(), "abelian": g.is_abelian(), "subgroups": lattice.subgroups, "normal": lattice.normal}),
        ),
        Finding::new("dedekind", name, Caveat::Exact, why, verdict),
    ])
}

pub fn system_build(g: &FiniteGroup, f: &FiniteConfig, mode: OrbitMode) -> CliResult<(FiniteSystem, Finding)> {
    let s = build_orbit_system(g, f, mode)?;
    let summary = format!("{} points, base {}", s.len(), s.base());
    let details = json!({"mode": mode, "points": s.len(), "dump": s.dump()});
    Ok((s, Finding::new("system", "Built", Caveat::Exact, summary, details)))
}

pub fn system_iso(a: &FiniteSystem, b: &FiniteSystem) -> CliResult<Finding> {
    Ok(match equivariant_isomorphism(a, b)? {
        Some(map) => Finding::new("isomorphism", "Isomorphic", Caveat::Exact, format!("map {map:?}"), json!({"map": map})),
        None => Finding::new("isomorphism", "NotIsomorphic", Caveat::Exact, "no equivariant bijection", json!({"map": null})),
    })
}

pub fn furstenberg(g: &FiniteGroup, s: &FiniteSystem, f: &FiniteConfig, law: ActionKind) -> CliResult<Vec<Finding>> {
    let v = match law {
        ActionKind::Action => is_furstenberg_system_of(g, s, f)?,
        ActionKind::AntiAction => is_furstenberg_anti_system_of(g, s, f)?,
    };
    let mut out = Vec::new();
    let (name, summary) = match &v {
        FurstenbergVerdict::Yes { base, .. } => ("Furstenberg", format!("transitive point {base}")),
        FurstenbergVerdict::NotAnAction { g: a, h, point } => {
            ("NotAnAction", format!("action law fails for ({}, {}) at point {point}", g.name(*a), g.name(*h)))
        }
        FurstenbergVerdict::No { attempts } => ("NotFurstenberg", format!("{} candidate base points fail", attempts.len())),
    };
    out.push(Finding::new("furstenberg", name, Caveat::Exact, summary, &v));
    if let (FurstenbergVerdict::Yes { base, observable }, ActionKind::Action) = (&v, law) {
        let phi = construct_phi_r(g, &s.with_base_and_observable(*base, observable.clone())?, f)?;
        let verdict = if phi.injective { "IsomorphicToXR" } else { "FactorOfXR" };
        out.push(Finding::new("phi_R", verdict, Caveat::Exact, format!("map {:?}", phi.map), json!({"map": phi.map, "injective": phi.injective})));
    }
    Ok(out)
}

fn minimality_finding(name: &str, r: &MinimalityReport) -> Finding {
    let (verdict, summary) = match &r.verdict {
        MinimalityVerdict::Minimal => ("Minimal", format!("{} boundary hits", r.hits.len())),
        MinimalityVerdict::NotMinimal { witness: Some(w) } => (
            "NotMinimal",
            format!("word {} at {} has locus {} and occurs only at {:?}", w.word, w.position, w.locus, w.occurrences),
        ),
        MinimalityVerdict::NotMinimal { witness: None } => ("NotMinimal", "no witness up to the length limit".into()),
    };
    Finding::new(name, verdict, Caveat::Exact, summary, r)
}

pub fn rotation_classify(c: &RotationCoding) -> CliResult<Vec<Finding>> {
    let report = classify_colouring(c)?;
    let mut out = vec![minimality_finding("colouring", &report.colouring)];
    for (label, r) in &report.per_label {
        out.push(minimality_finding(&format!("colour {label}"), r));
    }
    for label in c.labels() {
        let s = strongly_dyn_syndetic(c, label)?;
        let verdict = if s.strongly_dynamically_syndetic { "StronglyDynSyndetic" } else { "NotStronglyDynSyndetic" };
        let summary = format!("{} visits to the boundary of the interior", s.bad_hits.len());
        out.push(Finding::new(&format!("strong syndeticity {label}"), verdict, Caveat::Exact, summary, s));
    }
    Ok(out)
}

pub fn rotation_word(c: &RotationCoding, w: &WordPattern) -> CliResult<Vec<Finding>> {
    let locus = c.word_locus(w)?;
    let class = c.classify_word(w)?;
    let (verdict, summary) = match &class {
        WordClass::Syndetic(j) => ("Syndetic", format!("locus {j}")),
        WordClass::Finite(v) => ("Finite", format!("locus {locus}, occurrences {v:?}")),
        WordClass::Empty => ("Empty", "the word never occurs".into()),
    };
    Ok(vec![Finding::new("word", verdict, Caveat::Exact, summary, json!({"word": w.to_string(), "locus": locus, "class": class}))])
}

pub fn rotation_boundary(c: &RotationCoding) -> CliResult<Vec<Finding>> {
    let hits = c.boundary_hits()?;
    let summary = hits.iter().map(|h| format!("n = {} at {}", h.n, h.point)).collect::<Vec<_>>().join(", ");
    let verdict = if hits.is_empty() { "NoHits" } else { "Hits" };
    Ok(vec![Finding::new("boundary hits", verdict, Caveat::Exact, summary, json!({"hits": hits, "endpoints": c.endpoints()}))])
}

pub fn seq_window(o: &SequenceOracle, lo: i64, hi: i64) -> CliResult<Vec<Finding>> {
    let values = o.eval_window(lo, hi)?;
    let text = symbols_text(&values);
    Ok(vec![Finding::new("window", "Evaluated", Caveat::Exact, format!("[{lo}, {hi}]: {text}"), json!({"lo": lo, "hi": hi, "values": text}))])
}

pub fn seq_occur(o: &SequenceOracle, w: &WordPattern, radius: i64) -> CliResult<Vec<Finding>> {
    let pos = occurrences(o, w, -radius, radius)?;
    let stats = furstenberg_core::zshift::max_gap(&pos, -radius, radius);
    let verdict = if pos.is_empty() { "Absent" } else { "Occurs" };
    let first: Vec<i64> = pos.iter().take(16).copied().collect();
    let summary = format!("{} occurrences in [-{radius}, {radius}], first {first:?}", pos.len());
    let mut out = vec![Finding::new("occurrences", verdict, Caveat::Windowed, summary, json!({"word": w.to_string(), "count": pos.len(), "first": first, "stats": stats}))];
    if let Some(any) = o.occurs_anywhere(w)? {
        let verdict = if any { "OccursInZ" } else { "NeverOccurs" };
        out.push(Finding::new("anywhere", verdict, Caveat::Exact, "", json!({"occurs": any})));
    }
    Ok(out)
}

fn describe_stats(s: &GapStats) -> String {
    format!("max gap {}, slack {} / {}", s.max_gap, s.left_slack, s.right_slack)
}

pub fn seq_recur(o: &SequenceOracle, len: usize, radius: i64, gap: u64) -> CliResult<Vec<Finding>> {
    let cert = uniform_recurrence_certificate(o, len, radius, gap)?;
    let (verdict, caveat, summary) = match &cert.verdict {
        CertificateVerdict::Verified { gap } => ("Verified", Caveat::Windowed, format!("every initial word up to length {len} recurs with gaps <= {gap}")),
        CertificateVerdict::CandidateRefutation { word, kind, evidence, exact, .. } => (
            if *exact { "Refuted" } else { "CandidateRefutation" },
            if *exact { Caveat::Exact } else { Caveat::Windowed },
            format!("word {word}: {kind:?}, {} occurrences, {}", evidence.count, describe_stats(&evidence.stats)),
        ),
        CertificateVerdict::Inconclusive { word, .. } => {
            ("Inconclusive", Caveat::Windowed, format!("word {word} fails in the window but recurs syndetically"))
        }
    };
    Ok(vec![Finding::new("certificate", verdict, caveat, summary, cert)])
}

pub fn code_details(code: &BlockCode) -> serde_json::Value {
    serde_json::to_value(CodeFile::from_code(code)).expect("code files serialize")
}

pub fn code_apply(code: &BlockCode, o: &SequenceOracle, lo: i64, hi: i64) -> CliResult<Vec<Finding>> {
    let image = furstenberg_core::codes::apply_code(code, o)?;
    seq_window(&image, lo, hi)
}

pub fn code_verify(code: &BlockCode, source: &SequenceOracle, target: &SequenceOracle, radius: i64) -> CliResult<Finding> {
    let r = verify_realization(code, source, target, radius)?;
    Ok(match &r {
        Realization::AgreesOnWindow { radius } => {
            Finding::new("realization", "Agrees", Caveat::Windowed, format!("image equals target on [-{radius}, {radius}]"), &r)
        }
        Realization::Mismatch { n, image, target } => {
            Finding::new("realization", "Mismatch", Caveat::Exact, format!("at n = {n}: image {image}, target {target}"), &r)
        }
    })
}

pub fn code_separate(code: &BlockCode, o: &SequenceOracle, depth: usize, radius: i64) -> CliResult<Finding> {
    let p = verify_generalized_projection(code, o, depth, radius)?;
    Ok(match &p {
        ProjectionVerdict::Separates { limit_points, central_words, .. } => Finding::new(
            "projection",
            "Separates",
            Caveat::Windowed,
            format!("{limit_points} limit points and {central_words} central words of depth {depth} separated"),
            &p,
        ),
        ProjectionVerdict::FailsToSeparate { left, right, exact, .. } => Finding::new(
            "projection",
            "FailsToSeparate",
            if *exact { Caveat::Exact } else { Caveat::Windowed },
            format!("{} and {} have identical code orbits", symbols_text(left), symbols_text(right)),
            &p,
        ),
    })
}

pub fn code_search(a: &SequenceOracle, b: &SequenceOracle, span: i64, depth: usize, radius: i64) -> CliResult<Finding> {
    Ok(match search_isomorphism_code(a, b, span, depth, radius)? {
        SearchOutcome::Found(c) => {
            let summary = format!("offsets {:?}, shift {}, after {} candidates", c.code.offsets(), c.shift, c.candidates_tried);
            let details = json!({
                "code": code_details(&c.code),
                "shift": c.shift,
                "radius": c.radius,
                "depth": c.depth,
                "realization": c.realization,
                "projection": c.projection,
                "offset_sets_tried": c.offset_sets_tried,
                "candidates_tried": c.candidates_tried,
            });
            Finding::new("search", "Found", Caveat::Windowed, summary, details)
        }
        e @ SearchOutcome::Exhausted { .. } => {
            Finding::new("search", "Exhausted", Caveat::SearchExhausted, format!("no code of span <= {span} realizes and separates"), e)
        }
    })
}

pub fn code_patterns(a: &SequenceOracle, b: &SequenceOracle, shifts: &[i64], k: usize, radius: i64) -> CliResult<Finding> {
    let r = intersection_pattern_check(a, b, shifts, k, radius)?;
    let caveat = if r.exact { Caveat::Exact } else { Caveat::Windowed };
    let (verdict, summary) = match &r.verdict {
        PatternVerdict::Equivalent { k, tuples } => ("Equivalent", format!("{tuples} tuples with k = {k} agree")),
        PatternVerdict::Distinguished { tuple, a_nonempty, b_nonempty } => (
            "Distinguished",
            format!("shifts {:?} signs {:?}: A nonempty {a_nonempty}, B nonempty {b_nonempty}", tuple.shifts, tuple.signs),
        ),
    };
    Ok(Finding::new("patterns", verdict, caveat, summary, r))
}

fn recurrence_finding<G: serde::Serialize + std::fmt::Debug>(name: &str, v: RecurrenceVerdict<G>) -> Finding {
    match &v {
        RecurrenceVerdict::Found { colour, g, h } => {
            Finding::new(name, "Found", Caveat::Exact, format!("colour {colour}, g = {g:?}, h = {h:?}"), &v)
        }
        RecurrenceVerdict::NotFoundInWindow { exact: true } => Finding::new(name, "NotFound", Caveat::Exact, "no witness anywhere", &v),
        RecurrenceVerdict::NotFoundInWindow { exact: false } => {
            Finding::new(name, "NotFoundInWindow", Caveat::Windowed, "no witness in the window", &v)
        }
    }
}

pub fn chromatic(r: Vec<i64>, o: &SequenceOracle, radius: i64) -> CliResult<Finding> {
    let r = CandidateSet::integers(r)?;
    Ok(recurrence_finding("chromatic", chromatic_recurrence_check(&r, o, radius)?))
}

pub fn chromatic_finite(g: &FiniteGroup, r: Vec<usize>, f: &FiniteConfig) -> CliResult<Finding> {
    let r = CandidateSet::group_elements(g, r)?;
    Ok(recurrence_finding("chromatic", chromatic_recurrence_check_finite(g, &r, f)?))
}

pub fn syndetic(r: Vec<i64>, o: &SequenceOracle, radius: i64) -> CliResult<Finding> {
    let r = CandidateSet::integers(r)?;
    Ok(recurrence_finding("syndetic return", syndetic_return_check(&r, o, radius)?))
}

pub fn eqtech(s: &[Z3BElement], support_bound: u32, search_bound: u32) -> CliResult<Finding> {
    let shown = s.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
    Ok(match eqtech_search(s, support_bound, search_bound)? {
        EqtechOutcome::Found(w) => {
            if eqtech_verify(s, &w.c, &w.x).as_ref().map(|t| &t.2) != Some(&w.transcript) {
                return Err(CliError::input("eqtech witness failed re-verification"));
            }
            let summary = format!("S = {{{shown}}}: c = {}, x = {}, f(x) = {}, f(cx) = {}", w.c, w.x, w.f_x, w.f_cx);
            Finding::new("eqtech", "Found", Caveat::Exact, summary, w)
        }
        e @ EqtechOutcome::Exhausted { .. } => {
            Finding::new("eqtech", "Exhausted", Caveat::SearchExhausted, format!("S = {{{shown}}}: no pair up to the search bound"), e)
        }
    })
}

pub fn orbit_mode(name: &str) -> CliResult<OrbitMode> {
    match name.to_ascii_lowercase().as_str() {
        "r" => Ok(OrbitMode::R),
        "l" => Ok(OrbitMode::L),
        "ltilde" => Ok(OrbitMode::Ltilde),
        "anti" => Ok(OrbitMode::Anti),
        _ => Err(CliError::input(format!("unknown mode {name:?}; expected R, L, Ltilde or anti"))),
    }
}
