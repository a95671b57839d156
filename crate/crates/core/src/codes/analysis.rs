use alloc::collections::{BTreeMap, BTreeSet};
use alloc::vec::Vec;

use super::block::table_size;
use super::{BlockCode, CodeError, LocalRule};
use crate::zshift::{SequenceOracle, ZshiftError, MAX_WINDOW};
use crate::Symbol;

pub const MAX_PROJECTION_DEPTH: usize = 24;
pub const MAX_PATTERN_TUPLES: u64 = 1_000_000;
/// Cap on the number of completions of a partially forced rule table.
pub const MAX_FREE_COMPLETIONS: u64 = 1 << 16;

impl From<ZshiftError> for CodeError {
    fn from(e: ZshiftError) -> Self {
        match e {
            ZshiftError::AlphabetMismatch(s) => CodeError::AlphabetMismatch(s),
            ZshiftError::WindowTooLarge { .. } => CodeError::BoundsExceeded("window too large"),
            ZshiftError::BoundsExceeded(m) => CodeError::BoundsExceeded(m),
            _ => CodeError::Oracle(alloc::format!("{}", e)),
        }
    }
}

/// `n ↦ ψ(o(n + g₁), …, o(n + g_k))`.
pub fn apply_code(code: &BlockCode, o: &SequenceOracle) -> Result<SequenceOracle, CodeError> {
    Ok(SequenceOracle::code_image(code.clone(), o.clone())?)
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum Realization {
    AgreesOnWindow { radius: i64 },
    Mismatch { n: i64, image: Symbol, target: Symbol },
}

/// Compares the image of `source` with `target` on `[−N, N]`.
pub fn verify_realization(
    code: &BlockCode,
    source: &SequenceOracle,
    target: &SequenceOracle,
    radius: i64,
) -> Result<Realization, CodeError> {
    let image = apply_code(code, source)?.eval_window(-radius, radius)?;
    let want = target.eval_window(-radius, radius)?;
    for (i, (x, y)) in image.iter().zip(&want).enumerate() {
        if x != y {
            return Ok(Realization::Mismatch { n: i as i64 - radius, image: *x, target: *y });
        }
    }
    Ok(Realization::AgreesOnWindow { radius })
}

/// Where a non-separated pair came from.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum PairOrigin {
    /// Two periodic limit points of the orbit closure, given by one period
    /// each; the code outputs agree at every shift.
    LimitPoints,
    /// Two windowed central words at these centres; outputs agree within ±m.
    Window { left_center: i64, right_center: i64 },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum ProjectionVerdict {
    Separates { depth: usize, radius: i64, limit_points: usize, central_words: usize },
    /// `exact` holds for limit points; windowed pairs are depth-limited.
    FailsToSeparate { left: Vec<Symbol>, right: Vec<Symbol>, origin: PairOrigin, exact: bool },
}

impl ProjectionVerdict {
    pub fn separates(&self) -> bool {
        matches!(self, ProjectionVerdict::Separates { .. })
    }
}

/// Distinct periodic limit points, as one period each, in the order
/// `+∞` phases then `−∞` phases.
pub fn limit_points(o: &SequenceOracle) -> Result<Option<Vec<Vec<Symbol>>>, CodeError> {
    let Some((right, left)) = o.limit_blocks()? else { return Ok(None) };
    let p = right.len();
    let mut out: Vec<Vec<Symbol>> = Vec::new();
    for block in [&right, &left] {
        for t in 0..p {
            let phase: Vec<Symbol> = (0..p).map(|j| block[(j + t) % p]).collect();
            if !out.contains(&phase) {
                out.push(phase);
            }
        }
    }
    Ok(Some(out))
}

fn periodic_output(code: &BlockCode, block: &[Symbol]) -> Result<Vec<Symbol>, CodeError> {
    let p = block.len() as i64;
    let mut window = alloc::vec![0; code.offsets().len()];
    (0..p)
        .map(|t| {
            for (slot, g) in window.iter_mut().zip(code.offsets()) {
                *slot = block[(t + g).rem_euclid(p) as usize];
            }
            code.rule().apply(&window).ok_or(CodeError::AlphabetMismatch(window[0]))
        })
        .collect()
}

/// Tests whether the shifts of `code` separate the points of the orbit
/// closure of `o`, at depth `m` over `[−N, N]`.
///
/// Eventually periodic oracles contribute their periodic limit points, which
/// are compared exactly over a full period before the windowed words.
pub fn verify_generalized_projection(
    code: &BlockCode,
    o: &SequenceOracle,
    depth: usize,
    radius: i64,
) -> Result<ProjectionVerdict, CodeError> {
    if depth > MAX_PROJECTION_DEPTH {
        return Err(CodeError::BoundsExceeded("projection depth above 24"));
    }
    if radius < depth as i64 {
        return Err(CodeError::BoundsExceeded("projection radius below depth"));
    }
    let limits = limit_points(o)?.unwrap_or_default();
    let outputs: Vec<Vec<Symbol>> = limits.iter().map(|b| periodic_output(code, b)).collect::<Result<_, _>>()?;
    for i in 0..limits.len() {
        for j in i + 1..limits.len() {
            if outputs[i] == outputs[j] {
                return Ok(ProjectionVerdict::FailsToSeparate {
                    left: limits[i].clone(),
                    right: limits[j].clone(),
                    origin: PairOrigin::LimitPoints,
                    exact: true,
                });
            }
        }
    }
    let m = depth as i64;
    let values = o.eval_window(-radius - m, radius + m)?;
    let image = apply_code(code, o)?.eval_window(-radius - m, radius + m)?;
    let at = |c: i64| ((c - m + radius + m) as usize, (c + m + radius + m) as usize + 1);
    let mut seen_words: BTreeMap<&[Symbol], i64> = BTreeMap::new();
    let mut by_output: BTreeMap<&[Symbol], (&[Symbol], i64)> = BTreeMap::new();
    for c in -radius..=radius {
        let (s, e) = at(c);
        let word = &values[s..e];
        if seen_words.contains_key(word) {
            continue;
        }
        seen_words.insert(word, c);
        let out = &image[s..e];
        if let Some(&(other, oc)) = by_output.get(out) {
            return Ok(ProjectionVerdict::FailsToSeparate {
                left: other.to_vec(),
                right: word.to_vec(),
                origin: PairOrigin::Window { left_center: oc, right_center: c },
                exact: false,
            });
        }
        by_output.insert(out, (word, c));
    }
    Ok(ProjectionVerdict::Separates { depth, radius, limit_points: limits.len(), central_words: seen_words.len() })
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SearchCertificate {
    pub code: BlockCode,
    /// `a(n) = φ(b)(n + shift)` on the window
    pub shift: i64,
    pub radius: i64,
    pub depth: usize,
    pub realization: Realization,
    pub projection: ProjectionVerdict,
    /// offset sets, shifts and rule completions examined
    pub offset_sets_tried: usize,
    pub candidates_tried: u64,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum SearchOutcome {
    Found(SearchCertificate),
    /// Nothing in the searched space; this is not a proof of non-isomorphism.
    Exhausted { offset_sets: usize, shifts_per_set: usize, candidates_tried: u64 },
}

/// Subsets of `{0..=w}` containing 0, by size then lexicographically.
pub fn canonical_offset_sets(w: i64) -> Vec<Vec<i64>> {
    let rest: Vec<i64> = (1..=w).collect();
    let mut all: Vec<Vec<i64>> = (0u32..1 << rest.len())
        .map(|mask| {
            let mut v = alloc::vec![0];
            v.extend(rest.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, x)| *x));
            v
        })
        .collect();
    all.sort_by(|a, b| a.len().cmp(&b.len()).then_with(|| a.cmp(b)));
    all
}

/// `0, −1, 1, −2, 2, …` up to `|t| ≤ n`.
pub fn canonical_shifts(n: i64) -> impl Iterator<Item = i64> {
    (0..=n).flat_map(|k| if k == 0 { alloc::vec![0] } else { alloc::vec![-k, k] })
}

/// Looks for a block code and shift with `φ(b)(n + t) = a(n)` on `[−N, N]`
/// whose shifts separate the orbit closure of `b` at depth `m`.
///
/// Offsets range over subsets of `[0, w]` containing 0 and shifts over
/// `|t| ≤ N`. The window forces part of each rule table; the remaining
/// entries are completed in lexicographic order.
pub fn search_isomorphism_code(
    a: &SequenceOracle,
    b: &SequenceOracle,
    max_span: i64,
    depth: usize,
    radius: i64,
) -> Result<SearchOutcome, CodeError> {
    let inputs = b.alphabet();
    let outputs = a.alphabet();
    if max_span < 0 || (inputs.len() <= 2 && max_span > 4) || max_span > 8 {
        return Err(CodeError::BoundsExceeded("code span above the search limit"));
    }
    if depth > MAX_PROJECTION_DEPTH {
        return Err(CodeError::BoundsExceeded("projection depth above 24"));
    }
    if (4 * radius as u64 + max_span as u64) >= MAX_WINDOW {
        return Err(CodeError::BoundsExceeded("search window too large"));
    }
    let target = a.eval_window(-radius, radius)?;
    let lo = -2 * radius;
    let values = b.eval_window(lo, 2 * radius + max_span)?;
    let sets = canonical_offset_sets(max_span);
    let mut tried = 0u64;
    for (set_no, offsets) in sets.iter().enumerate() {
        let size = table_size(inputs.len(), offsets.len())?;
        // table index of the window starting at each position of `values`
        let span = *offsets.last().expect("contains 0") as usize;
        let index: Vec<usize> = (0..values.len() - span)
            .map(|p| {
                offsets.iter().fold(0usize, |acc, g| {
                    acc * inputs.len() + inputs.binary_search(&values[p + *g as usize]).expect("alphabet")
                })
            })
            .collect();
        'shift: for t in canonical_shifts(radius) {
            let mut table: Vec<Option<Symbol>> = alloc::vec![None; size];
            for (i, n) in (-radius..=radius).enumerate() {
                let p = (n + t - lo) as usize;
                let want = target[i];
                match table[index[p]] {
                    None => table[index[p]] = Some(want),
                    Some(s) if s != want => continue 'shift,
                    _ => {}
                }
            }
            let free: Vec<usize> = (0..size).filter(|&i| table[i].is_none()).collect();
            let completions = (outputs.len() as u64).checked_pow(free.len() as u32);
            if completions.is_none_or(|c| c > MAX_FREE_COMPLETIONS) {
                return Err(CodeError::BoundsExceeded("too many free rule entries"));
            }
            for choice in 0..completions.expect("checked") {
                tried += 1;
                let mut full: Vec<Symbol> = table.iter().map(|e| e.unwrap_or(0)).collect();
                let mut c = choice;
                for &slot in free.iter().rev() {
                    full[slot] = outputs[(c % outputs.len() as u64) as usize];
                    c /= outputs.len() as u64;
                }
                let code = BlockCode::new(offsets.clone(), LocalRule::new(inputs.clone(), offsets.len(), full)?)?;
                let projection = verify_generalized_projection(&code, b, depth, radius)?;
                if projection.separates() {
                    let shifted = SequenceOracle::shifted(b.clone(), t);
                    let realization = verify_realization(&code, &shifted, a, radius)?;
                    return Ok(SearchOutcome::Found(SearchCertificate {
                        code,
                        shift: t,
                        radius,
                        depth,
                        realization,
                        projection,
                        offset_sets_tried: set_no + 1,
                        candidates_tried: tried,
                    }));
                }
            }
        }
    }
    Ok(SearchOutcome::Exhausted { offset_sets: sets.len(), shifts_per_set: 2 * radius as usize + 1, candidates_tried: tried })
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PatternTuple {
    pub shifts: Vec<i64>,
    pub signs: Vec<Symbol>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum PatternVerdict {
    Equivalent { k: usize, tuples: u64 },
    Distinguished { tuple: PatternTuple, a_nonempty: bool, b_nonempty: bool },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct PatternReport {
    pub verdict: PatternVerdict,
    /// both oracles were scanned over a range that decides every tuple
    pub exact: bool,
    pub radius: i64,
}

/// The set of `(o(h + s))_{s ∈ S}` over `h`, exactly when `o` is eventually
/// periodic, and over `h ∈ [−N, N]` otherwise.
fn signatures(o: &SequenceOracle, shifts: &[i64], radius: i64) -> Result<(BTreeSet<Vec<Symbol>>, bool), CodeError> {
    let (smin, smax) = (shifts[0], *shifts.last().expect("nonempty"));
    let (lo, hi, exact) = match o.tail() {
        Some(t) => (-t.threshold - smax - t.period, t.threshold - smin + t.period, true),
        None => (-radius, radius, false),
    };
    let values = o.eval_window(lo + smin, hi + smax)?;
    let base = lo + smin;
    let set = (lo..=hi).map(|h| shifts.iter().map(|s| values[(h + s - base) as usize]).collect()).collect();
    Ok((set, exact))
}

/// Compares which intersections `⋂ (A_{εᵢ} − gᵢ)` are nonempty for `A` and `B`,
/// over all `g ∈ S^k` and `ε ∈ {0,1}^k` in lexicographic order.
pub fn intersection_pattern_check(
    a: &SequenceOracle,
    b: &SequenceOracle,
    shifts: &[i64],
    k: usize,
    radius: i64,
) -> Result<PatternReport, CodeError> {
    let mut s: Vec<i64> = shifts.to_vec();
    s.sort_unstable();
    s.dedup();
    if s.is_empty() || k == 0 {
        return Err(CodeError::BoundsExceeded("empty shift set or k = 0"));
    }
    let tuples = (s.len() as u64)
        .checked_pow(k as u32)
        .and_then(|x| x.checked_mul(1u64 << k.min(63)))
        .filter(|&x| x <= MAX_PATTERN_TUPLES)
        .ok_or(CodeError::BoundsExceeded("more than 10^6 pattern tuples"))?;
    let (sig_a, exact_a) = signatures(a, &s, radius)?;
    let (sig_b, exact_b) = signatures(b, &s, radius)?;
    let exact = exact_a && exact_b;
    let nonempty = |sigs: &BTreeSet<Vec<Symbol>>, g: &[usize], e: &[Symbol]| {
        sigs.iter().any(|sig| g.iter().zip(e).all(|(gi, ei)| sig[*gi] == *ei))
    };
    let mut g = alloc::vec![0usize; k];
    let mut e = alloc::vec![0 as Symbol; k];
    loop {
        for mask in 0u64..1 << k {
            for (i, slot) in e.iter_mut().enumerate() {
                *slot = (mask >> (k - 1 - i) & 1) as Symbol;
            }
            let (x, y) = (nonempty(&sig_a, &g, &e), nonempty(&sig_b, &g, &e));
            if x != y {
                let tuple = PatternTuple { shifts: g.iter().map(|&i| s[i]).collect(), signs: e.clone() };
                return Ok(PatternReport {
                    verdict: PatternVerdict::Distinguished { tuple, a_nonempty: x, b_nonempty: y },
                    exact,
                    radius,
                });
            }
        }
        // next g in lexicographic order
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(PatternReport { verdict: PatternVerdict::Equivalent { k, tuples }, exact, radius });
            }
            i -= 1;
            g[i] += 1;
            if g[i] < s.len() {
                break;
            }
            g[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zshift::fixtures::*;

    #[test]
    fn parity_realizes_pinned_a() {
        let p3 = BlockCode::parity(alloc::vec![0, 1, 2]).unwrap();
        assert_eq!(verify_realization(&p3, &pinned_b(), &pinned_a(), 1000).unwrap(), Realization::AgreesOnWindow { radius: 1000 });
        let p2 = BlockCode::parity(alloc::vec![0, 1]).unwrap();
        assert_eq!(
            verify_realization(&p2, &pinned_b_prime(), &pinned_a_prime(), 1000).unwrap(),
            Realization::AgreesOnWindow { radius: 1000 }
        );
        let id = BlockCode::identity(alloc::vec![0, 1]);
        assert_eq!(
            verify_realization(&id, &pinned_a(), &pinned_b(), 10).unwrap(),
            Realization::Mismatch { n: 0, image: 1, target: 0 }
        );
        let comp = apply_code(&BlockCode::complement(), &pinned_b()).unwrap();
        for n in -5..5 {
            assert_eq!(comp.eval(n).unwrap(), 1 - pinned_b().eval(n).unwrap());
        }
    }

    #[test]
    fn projections() {
        let id = BlockCode::identity(alloc::vec![0, 1]);
        assert!(verify_generalized_projection(&id, &pinned_a(), 4, 100).unwrap().separates());
        let p3 = BlockCode::parity(alloc::vec![0, 1, 2]).unwrap();
        assert!(verify_generalized_projection(&p3, &pinned_b(), 6, 1000).unwrap().separates());
        let p2 = BlockCode::parity(alloc::vec![0, 1]).unwrap();
        match verify_generalized_projection(&p2, &pinned_b_prime(), 6, 1000).unwrap() {
            ProjectionVerdict::FailsToSeparate { left, right, origin, exact } => {
                assert_eq!((left, right), (alloc::vec![1, 0], alloc::vec![0, 1]));
                assert_eq!(origin, PairOrigin::LimitPoints);
                assert!(exact);
            }
            v => panic!("{:?}", v),
        }
        assert!(verify_generalized_projection(&p2, &pinned_b(), 25, 1000).is_err());
    }

    #[test]
    fn canonical_orders() {
        assert_eq!(canonical_offset_sets(2), alloc::vec![alloc::vec![0], alloc::vec![0, 1], alloc::vec![0, 2], alloc::vec![0, 1, 2]]);
        assert_eq!(canonical_shifts(2).collect::<Vec<_>>(), alloc::vec![0, -1, 1, -2, 2]);
    }

    #[test]
    fn searches() {
        match search_isomorphism_code(&pinned_a(), &pinned_a(), 2, 4, 50).unwrap() {
            SearchOutcome::Found(c) => {
                assert_eq!(c.code, BlockCode::identity(alloc::vec![0, 1]));
                assert_eq!(c.shift, 0);
            }
            v => panic!("{:?}", v),
        }
        match search_isomorphism_code(&pinned_a(), &pinned_b(), 3, 6, 200).unwrap() {
            SearchOutcome::Found(c) => {
                assert_eq!(c.code.offsets(), &[0, 1, 2]);
                assert_eq!(c.shift, 0);
                assert_eq!(c.realization, Realization::AgreesOnWindow { radius: 200 });
            }
            v => panic!("{:?}", v),
        }
        assert!(matches!(
            search_isomorphism_code(&step(), &SequenceOracle::zero(), 3, 4, 50).unwrap(),
            SearchOutcome::Exhausted { .. }
        ));
    }

    #[test]
    fn patterns() {
        let p = SequenceOracle::periodic(alloc::vec![0, 1]).unwrap();
        let q = SequenceOracle::shifted(p.clone(), 1);
        let r = intersection_pattern_check(&p, &q, &[0, 1], 2, 100).unwrap();
        assert_eq!(r.verdict, PatternVerdict::Equivalent { k: 2, tuples: 16 });
        assert!(r.exact);
        let r = intersection_pattern_check(&step(), &SequenceOracle::zero(), &[0], 1, 100).unwrap();
        assert_eq!(
            r.verdict,
            PatternVerdict::Distinguished {
                tuple: PatternTuple { shifts: alloc::vec![0], signs: alloc::vec![1] },
                a_nonempty: true,
                b_nonempty: false
            }
        );
        assert!(intersection_pattern_check(&p, &p, &(0..20).collect::<Vec<_>>(), 5, 10).is_err());
    }
}
