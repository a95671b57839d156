use alloc::collections::BTreeMap;
use alloc::vec::Vec;

use super::block::table_size;
use super::{CodeError, LocalRule};
use crate::algebra::FiniteGroup;
use crate::systems::{FiniteConfig, FiniteSystem};
use crate::Symbol;

/// A block code on a finite group: `φ(x)(h) = ψ(x(g₁h), …, x(g_kh))`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FiniteBlockCode {
    pub offsets: Vec<usize>,
    pub rule: LocalRule,
}

pub fn apply_finite_code(group: &FiniteGroup, code: &FiniteBlockCode, x: &FiniteConfig) -> Result<FiniteConfig, CodeError> {
    let mut window = alloc::vec![0; code.offsets.len()];
    let out = group
        .elements()
        .map(|h| {
            for (slot, &g) in window.iter_mut().zip(&code.offsets) {
                *slot = x.at(group.mul(g, h));
            }
            code.rule.apply(&window).ok_or(CodeError::AlphabetMismatch(window[0]))
        })
        .collect::<Result<Vec<_>, _>>()?;
    Ok(FiniteConfig::new(out))
}

/// Recovers the local rule of an equivariant map between right-shift orbit
/// systems, using the smallest window (by size, then lexicographically) on
/// which `x ↦ φ(x)(e)` depends.
pub fn extract_finite_code(
    group: &FiniteGroup,
    source: &FiniteSystem,
    target: &FiniteSystem,
    phi: &[usize],
) -> Result<FiniteBlockCode, CodeError> {
    let n = group.order();
    if n > 16 {
        return Err(CodeError::BoundsExceeded("rule extraction needs |G| <= 16"));
    }
    let e = group.identity();
    let observe: Vec<Symbol> = phi.iter().map(|&y| target.points()[y].at(e)).collect();
    let mut inputs: Vec<Symbol> = source.points().iter().flat_map(|p| p.symbols().iter().copied()).collect();
    inputs.sort_unstable();
    inputs.dedup();
    let mut windows: Vec<Vec<usize>> = (1u32..1 << n)
        .map(|mask| (0..n).filter(|i| mask >> i & 1 == 1).collect())
        .collect();
    windows.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    for w in windows {
        let mut seen: BTreeMap<Vec<Symbol>, Symbol> = BTreeMap::new();
        let determined = source.points().iter().zip(&observe).all(|(p, &f)| {
            let key: Vec<Symbol> = w.iter().map(|&g| p.at(g)).collect();
            *seen.entry(key).or_insert(f) == f
        });
        if !determined {
            continue;
        }
        let size = table_size(inputs.len(), w.len())?;
        let fill = observe.iter().copied().min().unwrap_or(0);
        let mut table = alloc::vec![fill; size];
        let rule = LocalRule::new(inputs.clone(), w.len(), table.clone())?;
        for (key, f) in &seen {
            table[rule.index_of(key).expect("symbols from the source")] = *f;
        }
        let code = FiniteBlockCode { offsets: w, rule: LocalRule::new(inputs.clone(), rule.arity(), table)? };
        for (x, p) in source.points().iter().enumerate() {
            if apply_finite_code(group, &code, p)? != target.points()[phi[x]] {
                return Err(CodeError::NotEquivariant);
            }
        }
        return Ok(code);
    }
    Err(CodeError::NotEquivariant)
}
