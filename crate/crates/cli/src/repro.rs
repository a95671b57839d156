//! Worked examples, each with the verdicts it must reproduce.

use std::collections::BTreeSet;

use furstenberg_core::algebra::catalog::{by_name, catalog};
use furstenberg_core::algebra::Z3BElement;
use furstenberg_core::codes::BlockCode;
use furstenberg_core::rotation::fixtures::{a_coding, four_colouring, third_interval};
use furstenberg_core::systems::{
    build_orbit_system, dedekind_witness_function, phi_dedekind, ActionKind, FiniteConfig, OrbitMode, SetPartitions,
};
use furstenberg_core::zshift::fixtures::{pinned_a, pinned_a_prime, pinned_b, pinned_b_prime, step};
use furstenberg_core::zshift::{SequenceOracle, WordPattern};
use serde_json::json;

use crate::analysis;
use crate::error::{CliError, CliResult};
use crate::report::{Caveat, Finding, Report};

pub const IDS: [&str; 9] = [
    "periodic-r",
    "parity-iso",
    "parity-nonsep",
    "sturmian-00",
    "third-interval-minimal",
    "four-coloring",
    "dedekind-catalog",
    "eqtech",
    "step-vs-zero",
];

pub fn run(id: &str) -> CliResult<Report> {
    let findings = match id {
        "periodic-r" => periodic_r()?,
        "parity-iso" => parity_iso()?,
        "parity-nonsep" => parity_nonsep()?,
        "sturmian-00" => sturmian_00()?,
        "third-interval-minimal" => third_interval_minimal()?,
        "four-coloring" => four_coloring()?,
        "dedekind-catalog" => dedekind_catalog()?,
        "eqtech" => eqtech()?,
        "step-vs-zero" => step_vs_zero()?,
        _ => return Err(CliError::input(format!("unknown repro id {id:?}; see `repro list`"))),
    };
    Ok(Report::new("repro", Some(id), findings))
}

fn renamed(mut f: Finding, name: String) -> Finding {
    f.name = name;
    f
}

fn periodic_r() -> CliResult<Vec<Finding>> {
    let mut out = Vec::new();
    for r in 2..=6u32 {
        let g = by_name(&format!("Z{r}")).expect("cyclic groups are in the catalog");
        let f = FiniteConfig::new((0..r).collect());
        let (s, _) = analysis::system_build(&g, &f, OrbitMode::R)?;
        for x in analysis::furstenberg(&g, &s, &f, ActionKind::Action)? {
            let expected = if x.name == "furstenberg" { "Furstenberg" } else { "IsomorphicToXR" };
            out.push(renamed(x, format!("r = {r}: {}", if expected == "Furstenberg" { "furstenberg" } else { "phi_R" })).expect(expected));
        }
        let rotation = build_orbit_system(&g, &FiniteConfig::new((0..r).collect()), OrbitMode::L)?;
        out.push(renamed(analysis::system_iso(&s, &rotation)?, format!("r = {r}: rotation")).expect("Isomorphic"));

        let n = 1000i64;
        let o = SequenceOracle::periodic((0..r).collect())?;
        let values = o.eval_window(-2 * n, 2 * n)?;
        let windows: BTreeSet<&[u32]> = (0..=2 * n as usize).map(|t| &values[t..t + 2 * n as usize + 1]).collect();
        let verdict = format!("{} points", windows.len());
        let summary = format!("distinct windows of radius {n} along shifts in [-{n}, {n}]");
        out.push(
            Finding::new(&format!("r = {r}: windowed orbit closure"), verdict, Caveat::Windowed, summary, json!({"radius": n, "points": windows.len()}))
                .expect(&format!("{r} points")),
        );
    }
    Ok(out)
}

fn parity_iso() -> CliResult<Vec<Finding>> {
    let code = BlockCode::parity(vec![0, 1, 2])?;
    let (a, b) = (pinned_a(), pinned_b());
    Ok(vec![
        analysis::code_verify(&code, &b, &a, 10_000)?.expect("Agrees"),
        analysis::code_search(&a, &b, 3, 6, 1000)?.expect("Found"),
        analysis::code_separate(&code, &b, 6, 1000)?.expect("Separates"),
    ])
}

fn parity_nonsep() -> CliResult<Vec<Finding>> {
    let code = BlockCode::parity(vec![0, 1])?;
    Ok(vec![
        analysis::code_verify(&code, &pinned_b_prime(), &pinned_a_prime(), 10_000)?.expect("Agrees"),
        analysis::code_separate(&code, &pinned_b_prime(), 6, 1000)?.expect("FailsToSeparate"),
    ])
}

fn sturmian_00() -> CliResult<Vec<Finding>> {
    let c = a_coding();
    let w = WordPattern::new(vec![0, 1], vec![0, 0])?;
    let mut out = vec![analysis::rotation_word(&c, &w)?.remove(0).expect("Finite")];
    let colouring = analysis::rotation_classify(&c)?.remove(0);
    out.push(renamed(colouring, "minimality".into()).expect("NotMinimal"));
    out.push(analysis::seq_recur(&SequenceOracle::rotation(c), 2, 10_000, 1000)?.remove(0).expect("Refuted"));
    Ok(out)
}

fn third_interval_minimal() -> CliResult<Vec<Finding>> {
    let c = third_interval();
    let mut out = vec![analysis::rotation_boundary(&c)?.remove(0).expect("NoHits")];
    for f in analysis::rotation_classify(&c)? {
        let expected = match f.name.as_str() {
            "colouring" => "Minimal",
            "strong syndeticity 1" => "StronglyDynSyndetic",
            _ => continue,
        };
        out.push(f.expect(expected));
    }
    out.push(analysis::seq_recur(&SequenceOracle::rotation(c), 8, 10_000, 1000)?.remove(0).expect("Verified"));
    Ok(out)
}

fn four_coloring() -> CliResult<Vec<Finding>> {
    let c = four_colouring();
    let mut out = Vec::new();
    for f in analysis::rotation_classify(&c)? {
        let expected = match f.name.as_str() {
            "colouring" => "NotMinimal",
            n if n.starts_with("colour ") => "Minimal",
            _ => continue,
        };
        out.push(f.expect(expected));
    }
    let w = WordPattern::new(vec![0, 1, 2], vec![1, 2, 2])?;
    out.push(analysis::rotation_word(&c, &w)?.remove(0).expect("Finite"));
    Ok(out)
}

fn dedekind_catalog() -> CliResult<Vec<Finding>> {
    let mut out = Vec::new();
    for (name, g) in catalog() {
        let expect_dedekind = g.is_abelian() || name == "Q8";
        let dedekind = analysis::group(&g)?.remove(1);
        out.push(renamed(dedekind, format!("{name}: dedekind")).expect(if expect_dedekind { "Dedekind" } else { "NonDedekind" }));
        if !g.is_dedekind()?.is_dedekind() {
            let f = dedekind_witness_function(&g)?;
            let lt = build_orbit_system(&g, &f, OrbitMode::Ltilde)?;
            let xr = build_orbit_system(&g, &f, OrbitMode::R)?;
            let v = analysis::furstenberg(&g, &lt, &f, ActionKind::Action)?.remove(0);
            let mut v = renamed(v, format!("{name}: Ltilde of witness {}", analysis::symbols_text(f.symbols())));
            v.details = json!({"f": f, "verdict": v.details});
            out.push(v.expect("NotFurstenberg"));
            out.push(renamed(analysis::system_iso(&xr, &lt)?, format!("{name}: R vs Ltilde")).expect("NotIsomorphic"));
        }
        if (g.is_abelian() && g.order() <= 6) || name == "Q8" {
            let mut count = 0usize;
            for f in SetPartitions::new(g.order()) {
                phi_dedekind(&g, &f)?;
                count += 1;
            }
            let summary = format!("R_h f -> L_h f verified for all {count} partitions");
            out.push(Finding::new(&format!("{name}: phi_dedekind"), "Verified", Caveat::Exact, summary, json!({"partitions": count})).expect("Verified"));
        }
    }
    Ok(out)
}

fn eqtech() -> CliResult<Vec<Finding>> {
    let sets = [vec![Z3BElement::identity()], vec![Z3BElement::new(1, vec![1, 2])?]];
    sets.iter().enumerate().map(|(i, s)| Ok(renamed(analysis::eqtech(s, 8, 6)?, format!("eqtech S{}", i + 1)).expect("Found"))).collect()
}

fn step_vs_zero() -> CliResult<Vec<Finding>> {
    let (a, b) = (step(), SequenceOracle::zero());
    Ok(vec![
        analysis::code_search(&a, &b, 3, 6, 1000)?.expect("Exhausted"),
        analysis::code_patterns(&a, &b, &[0], 1, 1000)?.expect("Distinguished"),
    ])
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn every_id_reproduces() {
        for id in IDS {
            let r = run(id).unwrap();
            assert!(r.all_match(), "{id}:\n{}", r.to_text());
        }
        assert!(run("nope").is_err());
    }
}
