//! Finite-group symbolic dynamics.
//!
//! For finite `G` every orbit closure is the orbit itself, so the symbolic
//! systems `X_{R,f}`, `X_{L,f}`, `X̃_{L,f}` and the anti-action system are
//! finite sets of configurations with an explicit action table.

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{DedekindVerdict, FiniteGroup, GroupError};
use crate::Symbol;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum SystemError {
    #[error("configuration has length {found}, group order is {expected}")]
    LengthMismatch { expected: usize, found: usize },
    #[error("systems act by groups of different orders ({0} vs {1})")]
    GroupMismatch(usize, usize),
    #[error("systems have different action kinds")]
    KindMismatch,
    #[error("system has no observable")]
    ObservableMissing,
    #[error("observable disagrees with f at element {g}")]
    SeedMismatch { g: usize },
    #[error("group is Dedekind")]
    GroupIsDedekind,
    #[error("group is not Dedekind")]
    GroupNotDedekind,
    #[error("action law fails for g = {g}, h = {h} at point {point}")]
    ActionLaw { g: usize, h: usize, point: usize },
    #[error("base point {0} is not transitive")]
    BaseNotTransitive(usize),
    #[error("malformed system: {0}")]
    Malformed(&'static str),
    #[error("internal verification failed: {0}")]
    VerificationFailed(&'static str),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// A point of `K^G`: one symbol per group element index.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
#[cfg_attr(feature = "serde", serde(transparent))]
pub struct FiniteConfig(pub Vec<Symbol>);

impl FiniteConfig {
    pub fn new(symbols: Vec<Symbol>) -> Self {
        FiniteConfig(symbols)
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    #[inline]
    pub fn at(&self, g: usize) -> Symbol {
        self.0[g]
    }

    pub fn symbols(&self) -> &[Symbol] {
        &self.0
    }

    /// Relabels symbols by order of first appearance, giving the canonical
    /// representative of the level-set partition.
    pub fn canonical_partition(&self) -> FiniteConfig {
        let mut map: BTreeMap<Symbol, Symbol> = BTreeMap::new();
        let out = self
            .0
            .iter()
            .map(|s| {
                let next = map.len() as Symbol;
                *map.entry(*s).or_insert(next)
            })
            .collect();
        FiniteConfig(out)
    }

    fn check_len(&self, group: &FiniteGroup) -> Result<(), SystemError> {
        if self.len() != group.order() {
            return Err(SystemError::LengthMismatch { expected: group.order(), found: self.len() });
        }
        Ok(())
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum ShiftMode {
    /// `(R_g x)(u) = x(u·g)`
    Right,
    /// `(L_g x)(u) = x(g⁻¹·u)`
    Left,
    /// `(T_g x)(u) = x(g·u)`, an anti-action
    Anti,
}

/// Applies one shift map to a configuration.
pub fn shift(
    group: &FiniteGroup,
    x: &FiniteConfig,
    g: usize,
    mode: ShiftMode,
) -> Result<FiniteConfig, SystemError> {
    x.check_len(group)?;
    Ok(shift_unchecked(group, x, g, mode))
}

fn shift_unchecked(group: &FiniteGroup, x: &FiniteConfig, g: usize, mode: ShiftMode) -> FiniteConfig {
    let gi = group.inv(g);
    FiniteConfig(
        group
            .elements()
            .map(|u| match mode {
                ShiftMode::Right => x.at(group.mul(u, g)),
                ShiftMode::Left => x.at(group.mul(gi, u)),
                ShiftMode::Anti => x.at(group.mul(g, u)),
            })
            .collect(),
    )
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum OrbitMode {
    R,
    L,
    Ltilde,
    Anti,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum ActionKind {
    /// `T_g T_h = T_{gh}`
    Action,
    /// `T_g T_h = T_{hg}`
    AntiAction,
}

/// A finite phase space with a group action, a base point and an optional
/// observable.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct FiniteSystem {
    group_order: usize,
    points: Vec<FiniteConfig>,
    /// `action[g * points.len() + x]`
    action: Vec<usize>,
    base: usize,
    observable: Option<Vec<Symbol>>,
    kind: ActionKind,
}

impl FiniteSystem {
    /// Builds a system from an explicit action table, checking the action law
    /// for `kind` and transitivity of `base`.
    pub fn new(
        group: &FiniteGroup,
        points: Vec<FiniteConfig>,
        action: Vec<usize>,
        base: usize,
        observable: Option<Vec<Symbol>>,
        kind: ActionKind,
    ) -> Result<Self, SystemError> {
        let n = points.len();
        if n == 0 {
            return Err(SystemError::Malformed("no points"));
        }
        if action.len() != group.order() * n || action.iter().any(|&y| y >= n) {
            return Err(SystemError::Malformed("action table has the wrong shape"));
        }
        if base >= n {
            return Err(SystemError::Malformed("base point out of range"));
        }
        if observable.as_ref().is_some_and(|o| o.len() != n) {
            return Err(SystemError::Malformed("observable has the wrong length"));
        }
        let sys = FiniteSystem { group_order: group.order(), points, action, base, observable, kind };
        if let Some((g, h, point)) = sys.action_law_violation(group, kind) {
            return Err(SystemError::ActionLaw { g, h, point });
        }
        if !sys.is_transitive(base) {
            return Err(SystemError::BaseNotTransitive(base));
        }
        Ok(sys)
    }

    pub fn group_order(&self) -> usize {
        self.group_order
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[FiniteConfig] {
        &self.points
    }

    pub fn base(&self) -> usize {
        self.base
    }

    pub fn observable(&self) -> Option<&[Symbol]> {
        self.observable.as_deref()
    }

    pub fn kind(&self) -> ActionKind {
        self.kind
    }

    #[inline]
    pub fn act(&self, g: usize, x: usize) -> usize {
        self.action[g * self.points.len() + x]
    }

    /// First `(g, h, x)` breaking the law of `kind`, in index order.
    pub fn action_law_violation(&self, group: &FiniteGroup, kind: ActionKind) -> Option<(usize, usize, usize)> {
        for g in group.elements() {
            for h in group.elements() {
                let gh = match kind {
                    ActionKind::Action => group.mul(g, h),
                    ActionKind::AntiAction => group.mul(h, g),
                };
                for x in 0..self.len() {
                    if self.act(g, self.act(h, x)) != self.act(gh, x) {
                        return Some((g, h, x));
                    }
                }
            }
        }
        None
    }

    pub fn is_transitive(&self, x: usize) -> bool {
        let mut hit = alloc::vec![false; self.len()];
        for g in 0..self.group_order {
            hit[self.act(g, x)] = true;
        }
        hit.iter().all(|&b| b)
    }

    /// The same system with a different base point and observable.
    pub fn with_base_and_observable(&self, base: usize, observable: Vec<Symbol>) -> Result<Self, SystemError> {
        if base >= self.len() || observable.len() != self.len() {
            return Err(SystemError::Malformed("base or observable out of range"));
        }
        if !self.is_transitive(base) {
            return Err(SystemError::BaseNotTransitive(base));
        }
        let mut s = self.clone();
        s.base = base;
        s.observable = Some(observable);
        Ok(s)
    }

    /// Orbit of `(base, other.base)` under the diagonal action, with the
    /// observable lifted from `self` through the first projection.
    pub fn product_orbit(&self, other: &FiniteSystem, group: &FiniteGroup) -> Result<FiniteSystem, SystemError> {
        if self.group_order != other.group_order {
            return Err(SystemError::GroupMismatch(self.group_order, other.group_order));
        }
        if self.kind != other.kind {
            return Err(SystemError::KindMismatch);
        }
        let mut index: BTreeMap<(usize, usize), usize> = BTreeMap::new();
        let mut pairs = Vec::new();
        let start = (self.base, other.base);
        for g in group.elements() {
            let p = (self.act(g, start.0), other.act(g, start.1));
            if let alloc::collections::btree_map::Entry::Vacant(e) = index.entry(p) {
                e.insert(pairs.len());
                pairs.push(p);
            }
        }
        let n = pairs.len();
        let mut action = alloc::vec![0; group.order() * n];
        for g in group.elements() {
            for (i, &(x, y)) in pairs.iter().enumerate() {
                action[g * n + i] = index[&(self.act(g, x), other.act(g, y))];
            }
        }
        let points = pairs
            .iter()
            .map(|&(x, y)| {
                let mut s = self.points[x].0.clone();
                s.extend_from_slice(&other.points[y].0);
                FiniteConfig(s)
            })
            .collect();
        let observable = self.observable.as_ref().map(|o| pairs.iter().map(|&(x, _)| o[x]).collect());
        FiniteSystem::new(group, points, action, 0, observable, self.kind)
    }

    /// Deterministic textual dump used by golden tests.
    pub fn dump(&self) -> alloc::string::String {
        alloc::format!("{}", self)
    }
}

impl fmt::Display for FiniteSystem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "kind: {:?}", self.kind)?;
        writeln!(f, "points: {}", self.len())?;
        for (i, p) in self.points.iter().enumerate() {
            write!(f, "  {}:", i)?;
            for s in &p.0 {
                write!(f, " {}", s)?;
            }
            writeln!(f)?;
        }
        writeln!(f, "action:")?;
        for g in 0..self.group_order {
            write!(f, "  g{}:", g)?;
            for x in 0..self.len() {
                write!(f, " {}", self.act(g, x))?;
            }
            writeln!(f)?;
        }
        writeln!(f, "base: {}", self.base)?;
        match &self.observable {
            Some(o) => {
                f.write_str("observable:")?;
                for s in o {
                    write!(f, " {}", s)?;
                }
                writeln!(f)
            }
            None => writeln!(f, "observable: none"),
        }
    }
}

/// Orbit system of a seed under one shift family.
fn orbit_system(
    group: &FiniteGroup,
    seed: FiniteConfig,
    mode: ShiftMode,
    observe: bool,
) -> Result<FiniteSystem, SystemError> {
    let mut index: BTreeMap<FiniteConfig, usize> = BTreeMap::new();
    let mut points: Vec<FiniteConfig> = Vec::new();
    index.insert(seed.clone(), 0);
    points.push(seed.clone());
    for g in group.elements() {
        let y = shift_unchecked(group, &seed, g, mode);
        if !index.contains_key(&y) {
            index.insert(y.clone(), points.len());
            points.push(y);
        }
    }
    let n = points.len();
    let mut action = alloc::vec![0; group.order() * n];
    for g in group.elements() {
        for (i, p) in points.iter().enumerate() {
            let y = shift_unchecked(group, p, g, mode);
            action[g * n + i] = *index.get(&y).ok_or(SystemError::VerificationFailed("orbit not closed"))?;
        }
    }
    let kind = match mode {
        ShiftMode::Anti => ActionKind::AntiAction,
        _ => ActionKind::Action,
    };
    let e = group.identity();
    let observable = observe.then(|| points.iter().map(|p| p.at(e)).collect());
    FiniteSystem::new(group, points, action, 0, observable, kind)
}

/// `X_{R,f}`, `X_{L,f}`, `X̃_{L,f}` or the anti-action system of `f`.
///
/// Modes R, L and Anti carry the identity-coordinate observable; for L the
/// seed is `f̂ = (f(g⁻¹))_g`. Ltilde is seeded with `f` and has no observable.
pub fn build_orbit_system(group: &FiniteGroup, f: &FiniteConfig, mode: OrbitMode) -> Result<FiniteSystem, SystemError> {
    f.check_len(group)?;
    match mode {
        OrbitMode::R => orbit_system(group, f.clone(), ShiftMode::Right, true),
        OrbitMode::L => {
            let hat = FiniteConfig(group.elements().map(|g| f.at(group.inv(g))).collect());
            orbit_system(group, hat, ShiftMode::Left, true)
        }
        OrbitMode::Ltilde => orbit_system(group, f.clone(), ShiftMode::Left, false),
        OrbitMode::Anti => orbit_system(group, f.clone(), ShiftMode::Anti, true),
    }
}

/// Finds an equivariant bijection `S1 → S2`, or `None`.
///
/// Since `base₁` is transitive, a conjugacy is pinned down by the image of
/// `base₁`; candidates are tried in increasing image index.
pub fn equivariant_isomorphism(s1: &FiniteSystem, s2: &FiniteSystem) -> Result<Option<Vec<usize>>, SystemError> {
    if s1.group_order != s2.group_order {
        return Err(SystemError::GroupMismatch(s1.group_order, s2.group_order));
    }
    if s1.kind != s2.kind {
        return Err(SystemError::KindMismatch);
    }
    if s1.len() != s2.len() {
        return Ok(None);
    }
    'candidate: for y in 0..s2.len() {
        let mut phi = alloc::vec![usize::MAX; s1.len()];
        for g in 0..s1.group_order {
            let (src, dst) = (s1.act(g, s1.base), s2.act(g, y));
            if phi[src] == usize::MAX {
                phi[src] = dst;
            } else if phi[src] != dst {
                continue 'candidate;
            }
        }
        let mut used = alloc::vec![false; s2.len()];
        for &t in &phi {
            if t == usize::MAX || used[t] {
                continue 'candidate;
            }
            used[t] = true;
        }
        if is_equivariant(s1, s2, &phi) {
            return Ok(Some(phi));
        }
    }
    Ok(None)
}

/// `φ(act₁(g, x)) = act₂(g, φ(x))` for all `g`, `x`.
pub fn is_equivariant(s1: &FiniteSystem, s2: &FiniteSystem, phi: &[usize]) -> bool {
    phi.len() == s1.len()
        && (0..s1.group_order).all(|g| (0..s1.len()).all(|x| phi[s1.act(g, x)] == s2.act(g, phi[x])))
}

/// Why a candidate base point does not witness a Furstenberg system.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum CandidateFailure {
    NotTransitive,
    /// `act(g, a) = act(h, a)` but `f(g) != f(h)`.
    IllDefined { g: usize, h: usize },
    /// The orbit of `F` does not separate `x` and `y`.
    NotSeparating { x: usize, y: usize },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum FurstenbergVerdict {
    Yes { base: usize, observable: Vec<Symbol> },
    /// The maps do not form a G-action (only possible for anti-action systems).
    NotAnAction { g: usize, h: usize, point: usize },
    No { attempts: Vec<(usize, CandidateFailure)> },
}

impl FurstenbergVerdict {
    pub fn is_yes(&self) -> bool {
        matches!(self, FurstenbergVerdict::Yes { .. })
    }
}

/// Decides whether `S` is a Furstenberg system (for the action law
/// `T_g T_h = T_{gh}`) of `f`.
///
/// Every point is tried as the transitive point `a`; condition (i) forces the
/// observable `F(act(g, a)) = f(g)`, so the check is that this is well defined
/// and that the orbit of `F` separates points.
pub fn is_furstenberg_system_of(
    group: &FiniteGroup,
    system: &FiniteSystem,
    f: &FiniteConfig,
) -> Result<FurstenbergVerdict, SystemError> {
    check_furstenberg(group, system, f, ActionKind::Action)
}

/// Same as [`is_furstenberg_system_of`] for the anti-action law.
pub fn is_furstenberg_anti_system_of(
    group: &FiniteGroup,
    system: &FiniteSystem,
    f: &FiniteConfig,
) -> Result<FurstenbergVerdict, SystemError> {
    check_furstenberg(group, system, f, ActionKind::AntiAction)
}

fn check_furstenberg(
    group: &FiniteGroup,
    system: &FiniteSystem,
    f: &FiniteConfig,
    law: ActionKind,
) -> Result<FurstenbergVerdict, SystemError> {
    if system.group_order != group.order() {
        return Err(SystemError::GroupMismatch(system.group_order, group.order()));
    }
    f.check_len(group)?;
    if let Some((g, h, point)) = system.action_law_violation(group, law) {
        return Ok(FurstenbergVerdict::NotAnAction { g, h, point });
    }
    let mut attempts = Vec::new();
    for a in 0..system.len() {
        match furstenberg_candidate(system, f, a) {
            Ok(observable) => return Ok(FurstenbergVerdict::Yes { base: a, observable }),
            Err(why) => attempts.push((a, why)),
        }
    }
    Ok(FurstenbergVerdict::No { attempts })
}

fn furstenberg_candidate(system: &FiniteSystem, f: &FiniteConfig, a: usize) -> Result<Vec<Symbol>, CandidateFailure> {
    if !system.is_transitive(a) {
        return Err(CandidateFailure::NotTransitive);
    }
    let n = system.len();
    let mut obs: Vec<Option<(Symbol, usize)>> = alloc::vec![None; n];
    for g in 0..system.group_order {
        let x = system.act(g, a);
        match obs[x] {
            None => obs[x] = Some((f.at(g), g)),
            Some((s, h)) if s != f.at(g) => return Err(CandidateFailure::IllDefined { g: h, h: g }),
            _ => {}
        }
    }
    let obs: Vec<Symbol> = obs.into_iter().map(|o| o.expect("transitive").0).collect();
    for x in 0..n {
        for y in x + 1..n {
            if (0..system.group_order).all(|g| obs[system.act(g, x)] == obs[system.act(g, y)]) {
                return Err(CandidateFailure::NotSeparating { x, y });
            }
        }
    }
    Ok(obs)
}

/// The map `x ↦ (F(act(g, x)))_g` into `X_{R,f}`.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PhiR {
    /// `map[x]` is the index in `target` of the image of point `x`.
    pub map: Vec<usize>,
    pub target: FiniteSystem,
    /// Injective means isomorphism; otherwise a factor map.
    pub injective: bool,
}

/// Builds the canonical map of a (generalised) Furstenberg system onto `X_{R,f}`.
pub fn construct_phi_r(group: &FiniteGroup, system: &FiniteSystem, f: &FiniteConfig) -> Result<PhiR, SystemError> {
    if system.group_order != group.order() {
        return Err(SystemError::GroupMismatch(system.group_order, group.order()));
    }
    f.check_len(group)?;
    let obs = system.observable.as_ref().ok_or(SystemError::ObservableMissing)?;
    for g in group.elements() {
        if obs[system.act(g, system.base)] != f.at(g) {
            return Err(SystemError::SeedMismatch { g });
        }
    }
    let target = build_orbit_system(group, f, OrbitMode::R)?;
    let lookup: BTreeMap<&FiniteConfig, usize> = target.points.iter().enumerate().map(|(i, p)| (p, i)).collect();
    let mut map = Vec::with_capacity(system.len());
    for x in 0..system.len() {
        let image = FiniteConfig(group.elements().map(|g| obs[system.act(g, x)]).collect());
        let idx = *lookup.get(&image).ok_or(SystemError::VerificationFailed("image outside X_R"))?;
        map.push(idx);
    }
    let mut hit = alloc::vec![0usize; target.len()];
    for &t in &map {
        hit[t] += 1;
    }
    if hit.contains(&0) {
        return Err(SystemError::VerificationFailed("phi_R is not surjective"));
    }
    if !is_equivariant(system, &target, &map) {
        return Err(SystemError::VerificationFailed("phi_R is not equivariant"));
    }
    let injective = hit.iter().all(|&c| c == 1);
    Ok(PhiR { map, target, injective })
}

/// The function labelling right cosets `⟨b⟩g` from the non-Dedekind witness,
/// with symbols `1..=ℓ` in order of each coset's smallest element.
pub fn dedekind_witness_function(group: &FiniteGroup) -> Result<FiniteConfig, SystemError> {
    let b = match group.is_dedekind()? {
        DedekindVerdict::Dedekind => return Err(SystemError::GroupIsDedekind),
        DedekindVerdict::NonDedekind { b, .. } => b,
    };
    let cyc = group.generated(&[b]);
    let mut labels: Vec<Symbol> = alloc::vec![0; group.order()];
    let mut next = 1;
    for g in group.elements() {
        if labels[g] == 0 {
            for x in group.right_coset(&cyc, g).iter() {
                labels[x] = next;
            }
            next += 1;
        }
    }
    Ok(FiniteConfig(labels))
}

/// A verified isomorphism `X_{R,f} → X̃_{L,f}`, `R_h f ↦ L_h f`.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DedekindIsomorphism {
    pub map: Vec<usize>,
    pub source: FiniteSystem,
    pub target: FiniteSystem,
}

/// For Dedekind `G`, pairs `(f(gh))_g` with `(f(h⁻¹g))_g` and checks that this
/// is a well-defined equivariant bijection.
pub fn phi_dedekind(group: &FiniteGroup, f: &FiniteConfig) -> Result<DedekindIsomorphism, SystemError> {
    if !group.is_dedekind()?.is_dedekind() {
        return Err(SystemError::GroupNotDedekind);
    }
    let source = build_orbit_system(group, f, OrbitMode::R)?;
    let target = build_orbit_system(group, f, OrbitMode::Ltilde)?;
    let mut map = alloc::vec![usize::MAX; source.len()];
    for h in group.elements() {
        let (x, y) = (source.act(h, source.base), target.act(h, target.base));
        if map[x] == usize::MAX {
            map[x] = y;
        } else if map[x] != y {
            return Err(SystemError::VerificationFailed("map is not well defined"));
        }
    }
    let mut used = alloc::vec![false; target.len()];
    for &y in &map {
        if y == usize::MAX || used[y] {
            return Err(SystemError::VerificationFailed("map is not a bijection"));
        }
        used[y] = true;
    }
    if map.len() != target.len() || !is_equivariant(&source, &target, &map) {
        return Err(SystemError::VerificationFailed("map is not an equivariant bijection"));
    }
    Ok(DedekindIsomorphism { map, source, target })
}

/// All set partitions of `{0, .., n-1}` as restricted growth strings, in
/// lexicographic order. There are Bell(n) of them.
#[derive(Clone, Debug)]
pub struct SetPartitions {
    current: Option<Vec<Symbol>>,
}

impl SetPartitions {
    pub fn new(n: usize) -> Self {
        SetPartitions { current: Some(alloc::vec![0; n]) }
    }
}

impl Iterator for SetPartitions {
    type Item = FiniteConfig;

    fn next(&mut self) -> Option<FiniteConfig> {
        let cur = self.current.take()?;
        let out = FiniteConfig(cur.clone());
        // advance: rightmost position that can grow
        let mut next = cur;
        let n = next.len();
        let mut i = n;
        while i > 1 {
            i -= 1;
            let max_prefix = next[..i].iter().copied().max().unwrap_or(0);
            if next[i] <= max_prefix {
                next[i] += 1;
                for v in next.iter_mut().skip(i + 1) {
                    *v = 0;
                }
                self.current = Some(next);
                return Some(out);
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::catalog;
    use alloc::vec;

    fn cfg(v: &[Symbol]) -> FiniteConfig {
        FiniteConfig(v.to_vec())
    }

    #[test]
    fn right_shift_on_z4() {
        let z4 = catalog::cyclic(4);
        let x = cfg(&[0, 1, 2, 3]);
        assert_eq!(shift(&z4, &x, 1, ShiftMode::Right).unwrap(), cfg(&[1, 2, 3, 0]));
        assert_eq!(shift(&z4, &x, 0, ShiftMode::Right).unwrap(), x);
        assert_eq!(
            shift(&z4, &cfg(&[0, 1]), 1, ShiftMode::Right),
            Err(SystemError::LengthMismatch { expected: 4, found: 2 })
        );
    }

    #[test]
    fn left_shifts_compose_on_s3() {
        let s3 = catalog::symmetric3();
        let x = cfg(&[0, 1, 2, 3, 4, 5]);
        for h in s3.elements() {
            for h2 in s3.elements() {
                let twice = shift(&s3, &shift(&s3, &x, h, ShiftMode::Left).unwrap(), h2, ShiftMode::Left).unwrap();
                let once = shift(&s3, &x, s3.mul(h2, h), ShiftMode::Left).unwrap();
                assert_eq!(twice, once);
            }
        }
    }

    #[test]
    fn orbit_sizes() {
        let z4 = catalog::cyclic(4);
        assert_eq!(build_orbit_system(&z4, &cfg(&[0, 1, 0, 1]), OrbitMode::R).unwrap().len(), 2);
        for mode in [OrbitMode::R, OrbitMode::L, OrbitMode::Ltilde, OrbitMode::Anti] {
            let s3 = catalog::symmetric3();
            assert_eq!(build_orbit_system(&s3, &cfg(&[7; 6]), mode).unwrap().len(), 1);
        }
        let s3 = catalog::symmetric3();
        let f = dedekind_witness_function(&s3).unwrap();
        assert_eq!(build_orbit_system(&s3, &f, OrbitMode::R).unwrap().len(), 6);
        assert_eq!(build_orbit_system(&s3, &f, OrbitMode::Ltilde).unwrap().len(), 3);
    }

    #[test]
    fn z4_rotation_and_left_systems_are_isomorphic() {
        let z4 = catalog::cyclic(4);
        let f = cfg(&[0, 1, 2, 3]);
        let r = build_orbit_system(&z4, &f, OrbitMode::R).unwrap();
        let l = build_orbit_system(&z4, &f, OrbitMode::Ltilde).unwrap();
        let phi = equivariant_isomorphism(&r, &l).unwrap().expect("abelian");
        assert!(is_equivariant(&r, &l, &phi));
        assert_eq!(equivariant_isomorphism(&r, &r).unwrap(), Some(vec![0, 1, 2, 3]));
    }

    #[test]
    fn s3_witness_breaks_left_system() {
        let s3 = catalog::symmetric3();
        let f = dedekind_witness_function(&s3).unwrap();
        assert_eq!(f.symbols().iter().max(), Some(&3));
        for v in 1..=3 {
            assert_eq!(f.symbols().iter().filter(|&&s| s == v).count(), 2);
        }
        let r = build_orbit_system(&s3, &f, OrbitMode::R).unwrap();
        let l = build_orbit_system(&s3, &f, OrbitMode::Ltilde).unwrap();
        assert_eq!(equivariant_isomorphism(&r, &l).unwrap(), None);
        assert!(!is_furstenberg_system_of(&s3, &l, &f).unwrap().is_yes());
        assert!(is_furstenberg_system_of(&s3, &r, &f).unwrap().is_yes());
    }

    #[test]
    fn complement_query_on_two_point_system() {
        let z4 = catalog::cyclic(4);
        let s = build_orbit_system(&z4, &cfg(&[0, 1, 0, 1]), OrbitMode::R).unwrap();
        match is_furstenberg_system_of(&z4, &s, &cfg(&[1, 0, 1, 0])).unwrap() {
            FurstenbergVerdict::Yes { base, observable } => {
                assert_eq!(base, 0);
                assert_eq!(observable, vec![1, 0]);
            }
            v => panic!("{:?}", v),
        }
    }

    #[test]
    fn phi_r_identity_and_errors() {
        let z4 = catalog::cyclic(4);
        let f = cfg(&[0, 0, 1, 2]);
        let s = build_orbit_system(&z4, &f, OrbitMode::R).unwrap();
        let phi = construct_phi_r(&z4, &s, &f).unwrap();
        assert!(phi.injective);
        assert_eq!(phi.map, vec![0, 1, 2, 3]);
        let lt = build_orbit_system(&z4, &f, OrbitMode::Ltilde).unwrap();
        assert_eq!(construct_phi_r(&z4, &lt, &f), Err(SystemError::ObservableMissing));
        let bad = s.with_base_and_observable(0, vec![0, 1, 1, 2]).unwrap();
        assert_eq!(construct_phi_r(&z4, &bad, &f), Err(SystemError::SeedMismatch { g: 1 }));
    }

    #[test]
    fn product_with_flip_is_a_factor_extension() {
        let z4 = catalog::cyclic(4);
        let f = cfg(&[0, 0, 0, 0]);
        let s = build_orbit_system(&z4, &f, OrbitMode::R).unwrap();
        let flip = build_orbit_system(&z4, &cfg(&[0, 1, 0, 1]), OrbitMode::R).unwrap();
        let prod = s.product_orbit(&flip, &z4).unwrap();
        assert_eq!(prod.len(), 2);
        let phi = construct_phi_r(&z4, &prod, &f).unwrap();
        assert!(!phi.injective);
        assert_eq!(phi.target.len(), 1);
    }

    #[test]
    fn dedekind_map() {
        let z4 = catalog::cyclic(4);
        let iso = phi_dedekind(&z4, &cfg(&[0, 1, 0, 1])).unwrap();
        assert_eq!(iso.map.len(), 2);
        assert_eq!(phi_dedekind(&catalog::symmetric3(), &cfg(&[0; 6])).unwrap_err(), SystemError::GroupNotDedekind);
        assert_eq!(dedekind_witness_function(&z4), Err(SystemError::GroupIsDedekind));
        let d4 = catalog::dihedral(4);
        let f = dedekind_witness_function(&d4).unwrap();
        assert_eq!(f.symbols().iter().max(), Some(&4));
    }

    #[test]
    fn bell_numbers() {
        let bell = [1usize, 1, 2, 5, 15, 52, 203, 877, 4140];
        for (n, &b) in bell.iter().enumerate().skip(1) {
            let all: Vec<_> = SetPartitions::new(n).collect();
            assert_eq!(all.len(), b, "n = {}", n);
            assert!(all.iter().all(|p| p.canonical_partition() == *p));
        }
    }
}
