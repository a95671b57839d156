//! Uniqueness of Furstenberg systems over random (group, partition) pairs.

use furstenberg_core::algebra::catalog::catalog;
use furstenberg_core::algebra::FiniteGroup;
use furstenberg_core::systems::{
    build_orbit_system, construct_phi_r, is_furstenberg_system_of, FiniteConfig, FiniteSystem, FurstenbergVerdict,
    OrbitMode,
};
use furstenberg_core::Symbol;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::json;

use crate::error::CliResult;
use crate::report::{Caveat, Finding};

fn shuffled(group: &FiniteGroup, s: &FiniteSystem, rng: &mut ChaCha8Rng) -> CliResult<FiniteSystem> {
    let n = s.len();
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        perm.swap(i, rng.gen_range(0..=i));
    }
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
    Ok(FiniteSystem::new(group, points, action, perm[s.base()], observable, s.kind())?)
}

/// Every accepted candidate must map isomorphically onto X_R; the regular
/// extension must be a proper extension exactly when |X_R| < |G|.
pub fn uniqueness(samples: usize, seed: u64) -> CliResult<Finding> {
    let groups = catalog();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let (mut accepted, mut rejected, mut extensions) = (0usize, 0usize, 0usize);
    let mut failures = Vec::new();
    for _ in 0..samples {
        let (name, g) = &groups[rng.gen_range(0..groups.len())];
        let k = rng.gen_range(1..=4);
        let f = FiniteConfig::new((0..g.order()).map(|_| rng.gen_range(0..k)).collect()).canonical_partition();
        let xr = build_orbit_system(g, &f, OrbitMode::R)?;
        let xl = build_orbit_system(g, &f, OrbitMode::L)?;
        let candidates = [
            xr.clone(),
            xl.clone(),
            build_orbit_system(g, &f, OrbitMode::Ltilde)?,
            shuffled(g, &xr, &mut rng)?,
            xr.product_orbit(&xl, g)?,
        ];
        for s in &candidates {
            let FurstenbergVerdict::Yes { base, observable } = is_furstenberg_system_of(g, s, &f)? else {
                rejected += 1;
                continue;
            };
            let phi = construct_phi_r(g, &s.with_base_and_observable(base, observable)?, &f)?;
            if phi.injective {
                accepted += 1;
            } else {
                failures.push(format!("{name} {:?}", f.symbols()));
            }
        }
        let regular = build_orbit_system(g, &FiniteConfig::new((0..g.order() as Symbol).collect()), OrbitMode::R)?;
        let phi = construct_phi_r(g, &xr.product_orbit(&regular, g)?, &f)?;
        if phi.injective != (xr.len() == g.order()) {
            failures.push(format!("{name} {:?}: extension", f.symbols()));
        }
        extensions += usize::from(!phi.injective);
    }
    let verdict = if failures.is_empty() { "Unique" } else { "Counterexample" };
    let summary = format!(
        "{samples} samples: {accepted} accepted systems isomorphic to X_R, {rejected} rejected, {extensions} proper extensions"
    );
    Ok(Finding::new(
        "uniqueness",
        verdict,
        if failures.is_empty() { Caveat::Windowed } else { Caveat::Exact },
        summary,
        json!({"seed": seed, "samples": samples, "accepted": accepted, "rejected": rejected,
               "proper_extensions": extensions, "failures": failures}),
    ))
}
