//! Codings of irrational rotations `n ↦ label of {nα + base}` with
//! `α ∈ ℚ(√d)`, analysed exactly.

mod set;

use alloc::collections::BTreeMap;
use alloc::vec::Vec;
use core::cmp::Ordering;

pub use set::{CircleArc, CircleIntervalSet};

use crate::algebra::{solve_hit, AlgebraError, QuadraticNumber, Rational};
use crate::zshift::WordPattern;
use crate::Symbol;

/// Longest witness word tried by [`classify_minimality`].
pub const MAX_WITNESS_LENGTH: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
pub enum RotationError {
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error("a coding needs at least one cell")]
    NoCells,
    #[error("label {0} is used twice")]
    DuplicateLabel(Symbol),
    #[error("cells {0} and {1} overlap")]
    OverlappingCells(Symbol, Symbol),
    #[error("cells leave an arc uncovered: {0}")]
    UncoveredArc(alloc::string::String),
    #[error("uncovered point {point} is visited at n = {n}")]
    UncoveredOrbitPoint { point: QuadraticNumber, n: i64 },
    #[error("label {0} is not a cell of the coding")]
    UnknownLabel(Symbol),
}

/// An irrational rotation with a labelled partition of (the orbit in) the circle.
#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RotationCoding {
    alpha: QuadraticNumber,
    base: QuadraticNumber,
    /// sorted by label
    cells: Vec<(Symbol, CircleIntervalSet)>,
}

impl RotationCoding {
    /// Validates disjointness, and that whatever the cells leave uncovered is
    /// a finite set of points the orbit never visits.
    pub fn new(
        alpha: QuadraticNumber,
        mut cells: Vec<(Symbol, CircleIntervalSet)>,
        base: QuadraticNumber,
    ) -> Result<Self, RotationError> {
        if alpha.is_rational() {
            return Err(AlgebraError::RationalAlpha.into());
        }
        let alpha = alpha.frac_part();
        alpha.compare(&base)?;
        let base = base.frac_part();
        if cells.is_empty() {
            return Err(RotationError::NoCells);
        }
        cells.sort_by_key(|c| c.0);
        if let Some(w) = cells.windows(2).find(|w| w[0].0 == w[1].0) {
            return Err(RotationError::DuplicateLabel(w[0].0));
        }
        let probe = CircleIntervalSet::point(alpha)?;
        let mut covered = CircleIntervalSet::empty();
        for (i, (li, ci)) in cells.iter().enumerate() {
            probe.union(ci)?;
            for (lj, cj) in &cells[i + 1..] {
                if !ci.intersection(cj)?.is_empty() {
                    return Err(RotationError::OverlappingCells(*li, *lj));
                }
            }
            covered = covered.union(ci)?;
        }
        let rest = covered.complement();
        if rest.has_interior() {
            return Err(RotationError::UncoveredArc(alloc::format!("{}", rest)));
        }
        for p in rest.isolated_points() {
            if let Some(n) = solve_hit(&alpha, &p.checked_sub(&base)?)? {
                return Err(RotationError::UncoveredOrbitPoint { point: p, n });
            }
        }
        Ok(RotationCoding { alpha, base, cells })
    }

    pub fn alpha(&self) -> QuadraticNumber {
        self.alpha
    }

    pub fn base(&self) -> QuadraticNumber {
        self.base
    }

    pub fn cells(&self) -> &[(Symbol, CircleIntervalSet)] {
        &self.cells
    }

    pub fn labels(&self) -> Vec<Symbol> {
        self.cells.iter().map(|c| c.0).collect()
    }

    pub fn cell(&self, label: Symbol) -> Option<&CircleIntervalSet> {
        self.cells.binary_search_by_key(&label, |c| c.0).ok().map(|i| &self.cells[i].1)
    }

    /// `{nα + base}`.
    pub fn point(&self, n: i64) -> QuadraticNumber {
        (self.alpha.scale(Rational::from(n)) + self.base).frac_part()
    }

    pub fn label_at(&self, p: &QuadraticNumber) -> Option<Symbol> {
        self.cells.iter().find(|c| c.1.contains(p)).map(|c| c.0)
    }

    pub fn label_right_of(&self, p: &QuadraticNumber) -> Option<Symbol> {
        self.cells.iter().find(|c| c.1.contains_right_of(p)).map(|c| c.0)
    }

    pub fn label_left_of(&self, p: &QuadraticNumber) -> Option<Symbol> {
        self.cells.iter().find(|c| c.1.contains_left_of(p)).map(|c| c.0)
    }

    pub fn cell_symbol(&self, n: i64) -> Result<Symbol, RotationError> {
        let p = self.point(n);
        self.label_at(&p).ok_or(RotationError::UncoveredOrbitPoint { point: p, n })
    }

    /// Labels of `lo..=hi`, stepping the orbit point exactly.
    pub fn label_window(&self, lo: i64, hi: i64) -> Result<Vec<Symbol>, RotationError> {
        let one = QuadraticNumber::rational(Rational::ONE, self.alpha.d())?;
        let mut p = self.point(lo);
        let mut out = Vec::with_capacity((hi - lo + 1).max(0) as usize);
        for n in lo..=hi {
            out.push(self.label_at(&p).ok_or(RotationError::UncoveredOrbitPoint { point: p, n })?);
            p = p + self.alpha;
            if p.compare(&one)? != Ordering::Less {
                p = p - one;
            }
        }
        Ok(out)
    }

    /// Exact set `J` with: `w` occurs at `h` iff `{hα + base} ∈ J`.
    ///
    /// Labels that are not cells contribute the empty set.
    pub fn word_locus(&self, w: &WordPattern) -> Result<CircleIntervalSet, RotationError> {
        let mut j = CircleIntervalSet::full();
        for (g, s) in w.pairs() {
            let Some(cell) = self.cell(s) else { return Ok(CircleIntervalSet::empty()) };
            let shifted = cell.rotate_back(&self.alpha.scale(Rational::from(g)).frac_part())?;
            j = j.intersection(&shifted)?;
            if j.is_empty() {
                break;
            }
        }
        Ok(j)
    }

    /// `n` with `{nα + base} = p`, if any.
    pub fn hit_time(&self, p: &QuadraticNumber) -> Result<Option<i64>, RotationError> {
        Ok(solve_hit(&self.alpha, &p.checked_sub(&self.base)?)?)
    }

    pub fn classify_word(&self, w: &WordPattern) -> Result<WordClass, RotationError> {
        let j = self.word_locus(w)?;
        if j.has_interior() {
            return Ok(WordClass::Syndetic(j));
        }
        let mut hits = Vec::new();
        for p in j.isolated_points() {
            if let Some(n) = self.hit_time(&p)? {
                hits.push(n);
            }
        }
        hits.sort_unstable();
        Ok(if hits.is_empty() { WordClass::Empty } else { WordClass::Finite(hits) })
    }

    /// Every orbit visit to an endpoint of some cell, ordered by time.
    pub fn boundary_hits(&self) -> Result<Vec<BoundaryHit>, RotationError> {
        let mut out = Vec::new();
        for p in self.endpoints() {
            if let Some(n) = self.hit_time(&p)? {
                out.push(BoundaryHit {
                    n,
                    point: p,
                    label: self.label_at(&p),
                    left: self.label_left_of(&p),
                    right: self.label_right_of(&p),
                });
            }
        }
        out.sort_by_key(|h| h.n);
        Ok(out)
    }

    /// All cell endpoints, ascending and distinct.
    pub fn endpoints(&self) -> Vec<QuadraticNumber> {
        let mut all = Vec::new();
        for (_, c) in &self.cells {
            for p in c.endpoints() {
                if !all.contains(&p) {
                    all.push(p);
                }
            }
        }
        all.sort_by(|a: &QuadraticNumber, b| a.compare(b).expect("one field"));
        all
    }

    /// The coding of `label` versus everything else, as labels 1 and 0.
    pub fn indicator(&self, label: Symbol) -> Result<RotationCoding, RotationError> {
        let cell = self.cell(label).ok_or(RotationError::UnknownLabel(label))?;
        RotationCoding::new(self.alpha, alloc::vec![(0, cell.complement()), (1, cell.clone())], self.base)
    }

    /// The coding that labels every point by the cell just counterclockwise of
    /// it; its orbit closure is the minimal subsystem.
    pub fn right_limit_coding(&self) -> Result<RotationCoding, RotationError> {
        let cells = self
            .cells
            .iter()
            .map(|(l, c)| {
                let open = c.interior();
                let pts: Vec<QuadraticNumber> =
                    self.endpoints().into_iter().filter(|p| c.contains_right_of(p)).collect();
                let with = CircleIntervalSet::normalize(&[], &pts)?;
                Ok((*l, open.union(&with)?))
            })
            .collect::<Result<Vec<_>, RotationError>>()?;
        RotationCoding::new(self.alpha, cells, self.base)
    }

    /// Largest `|m|` with `e₁ − e₂ ≡ mα (mod 1)` over endpoint pairs.
    pub fn endpoint_return_bound(&self) -> Result<u64, RotationError> {
        let e = self.endpoints();
        let mut m = 0u64;
        for a in &e {
            for b in &e {
                if let Some(k) = solve_hit(&self.alpha, &a.checked_sub(b)?)? {
                    m = m.max(k.unsigned_abs());
                }
            }
        }
        Ok(m)
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum WordClass {
    /// The locus has interior, so the occurrences form a syndetic set.
    Syndetic(CircleIntervalSet),
    /// Exactly these occurrences.
    Finite(Vec<i64>),
    /// The word never occurs.
    Empty,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct BoundaryHit {
    pub n: i64,
    pub point: QuadraticNumber,
    /// cell containing the point
    pub label: Option<Symbol>,
    /// cell just clockwise of the point
    pub left: Option<Symbol>,
    /// cell just counterclockwise of the point
    pub right: Option<Symbol>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct SyndeticityReport {
    pub strongly_dynamically_syndetic: bool,
    /// set when the cell was not open and its interior was used
    pub used_interior: bool,
    /// hits of `cl(U) ∖ U`
    pub bad_hits: Vec<(i64, QuadraticNumber)>,
}

/// Whether the interior `U` of a cell has no orbit visit to `cl(U) ∖ U`.
pub fn strongly_dyn_syndetic(c: &RotationCoding, label: Symbol) -> Result<SyndeticityReport, RotationError> {
    let cell = c.cell(label).ok_or(RotationError::UnknownLabel(label))?;
    let open = cell.interior();
    let used_interior = open != *cell;
    let mut bad_hits = Vec::new();
    for p in open.closure().difference(&open)?.isolated_points() {
        if let Some(n) = c.hit_time(&p)? {
            bad_hits.push((n, p));
        }
    }
    bad_hits.sort_by_key(|h| h.0);
    Ok(SyndeticityReport { strongly_dynamically_syndetic: bad_hits.is_empty(), used_interior, bad_hits })
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MinimalityWitness {
    pub word: WordPattern,
    /// position of the word in the coded sequence
    pub position: i64,
    pub locus: CircleIntervalSet,
    /// every occurrence in ℤ
    pub occurrences: Vec<i64>,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum MinimalityVerdict {
    Minimal,
    /// `witness` is `None` only if no witness of length up to
    /// [`MAX_WITNESS_LENGTH`] exists.
    NotMinimal { witness: Option<MinimalityWitness> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct MinimalityReport {
    pub verdict: MinimalityVerdict,
    pub hits: Vec<BoundaryHit>,
    pub return_bound: u64,
}

impl MinimalityReport {
    pub fn is_minimal(&self) -> bool {
        self.verdict == MinimalityVerdict::Minimal
    }
}

/// Decides whether the coded sequence is uniformly recurrent, i.e. whether
/// its orbit closure is minimal.
///
/// The orbit closure of the coding of a generic point is minimal and its
/// points at a given circle position are the left-limit and right-limit
/// codings. The coded sequence lies in it exactly when, at every boundary
/// visit, it reads the left-limit label, or at every visit the right-limit
/// label. If not, the shortest block around the visits whose locus has
/// no interior is the witness.
pub fn classify_minimality(c: &RotationCoding) -> Result<MinimalityReport, RotationError> {
    let hits = c.boundary_hits()?;
    let return_bound = c.endpoint_return_bound()?;
    let all_left = hits.iter().all(|h| h.label == h.left);
    let all_right = hits.iter().all(|h| h.label == h.right);
    if hits.is_empty() || all_left || all_right {
        return Ok(MinimalityReport { verdict: MinimalityVerdict::Minimal, hits, return_bound });
    }
    let n_min = hits.first().expect("nonempty").n;
    let n_max = hits.last().expect("nonempty").n;
    let witness = find_witness(c, n_min, n_max)?;
    Ok(MinimalityReport { verdict: MinimalityVerdict::NotMinimal { witness }, hits, return_bound })
}

fn find_witness(c: &RotationCoding, n_min: i64, n_max: i64) -> Result<Option<MinimalityWitness>, RotationError> {
    let max = MAX_WITNESS_LENGTH as i64;
    let labels = c.label_window(n_min - max + 1, n_max + max - 1)?;
    let label = |n: i64| labels[(n - (n_min - max + 1)) as usize];
    // loci of the blocks starting at s, extended one symbol per round
    let mut loci: BTreeMap<i64, CircleIntervalSet> = BTreeMap::new();
    for len in 1..=max {
        let new_start = n_min - len + 1;
        for s in new_start..=n_max {
            let fresh = !loci.contains_key(&s);
            let j = loci.entry(s).or_insert_with(CircleIntervalSet::full);
            if fresh {
                for k in 0..len {
                    *j = j.intersection(&rotated_cell(c, label(s + k), k)?)?;
                }
            } else {
                *j = j.intersection(&rotated_cell(c, label(s + len - 1), len - 1)?)?;
            }
            if !j.has_interior() {
                let word = WordPattern::contiguous((s..s + len).map(label).collect()).expect("nonempty");
                let mut occurrences = Vec::new();
                for p in j.isolated_points() {
                    if let Some(n) = c.hit_time(&p)? {
                        occurrences.push(n);
                    }
                }
                occurrences.sort_unstable();
                return Ok(Some(MinimalityWitness { word, position: s, locus: j.clone(), occurrences }));
            }
        }
    }
    Ok(None)
}

fn rotated_cell(c: &RotationCoding, label: Symbol, k: i64) -> Result<CircleIntervalSet, RotationError> {
    let cell = c.cell(label).expect("label read from the coding");
    Ok(cell.rotate_back(&c.alpha.scale(Rational::from(k)).frac_part())?)
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct ColouringReport {
    pub colouring: MinimalityReport,
    /// the indicator coding of each label
    pub per_label: Vec<(Symbol, MinimalityReport)>,
}

/// [`classify_minimality`] for the colouring and for each colour class.
pub fn classify_colouring(c: &RotationCoding) -> Result<ColouringReport, RotationError> {
    let colouring = classify_minimality(c)?;
    let per_label = c
        .labels()
        .into_iter()
        .map(|l| Ok((l, classify_minimality(&c.indicator(l)?)?)))
        .collect::<Result<Vec<_>, RotationError>>()?;
    Ok(ColouringReport { colouring, per_label })
}

/// Codings used throughout the tests and reproductions, all with
/// `α = √5 − 2 ∈ (1/7, 2/7)`.
pub mod fixtures {
    use super::*;

    pub fn golden_alpha() -> QuadraticNumber {
        QuadraticNumber::new(Rational::from(-2), Rational::ONE, 5).expect("5 is squarefree")
    }

    pub fn rat(n: i128, d: i128) -> QuadraticNumber {
        QuadraticNumber::rational(Rational::new(n, d), 5).expect("5 is squarefree")
    }

    fn arc(lo: QuadraticNumber, lc: bool, hi: QuadraticNumber, hc: bool) -> CircleIntervalSet {
        CircleIntervalSet::from_arc(&CircleArc::new(lo, lc, hi, hc)).expect("valid arc")
    }

    /// Label 0 on `[α, 2α]`, label 1 elsewhere.
    pub fn a_coding() -> RotationCoding {
        let a = golden_alpha();
        let zero = arc(a, true, a.scale(Rational::from(2)), true);
        RotationCoding::new(a, alloc::vec![(0, zero.clone()), (1, zero.complement())], rat(0, 1)).expect("valid")
    }

    /// Label 1 on `(1/3, 2/3)`, label 0 elsewhere.
    pub fn third_interval() -> RotationCoding {
        let one = arc(rat(1, 3), false, rat(2, 3), false);
        RotationCoding::new(golden_alpha(), alloc::vec![(0, one.complement()), (1, one)], rat(0, 1)).expect("valid")
    }

    /// `C₁ = [0, 1/7)`, `C₂ = (1/7, 2α]`, `C₃ = (2α, 6/7]`, `C₄ = (6/7, 1)`.
    /// The point `1/7` is in no cell and is never visited.
    pub fn four_colouring() -> RotationCoding {
        let a = golden_alpha();
        let two_a = a.scale(Rational::from(2));
        RotationCoding::new(
            a,
            alloc::vec![
                (1, arc(rat(0, 1), true, rat(1, 7), false)),
                (2, arc(rat(1, 7), false, two_a, true)),
                (3, arc(two_a, false, rat(6, 7), true)),
                (4, arc(rat(6, 7), false, rat(1, 1), false)),
            ],
            rat(0, 1),
        )
        .expect("valid")
    }

    pub fn all() -> Vec<(&'static str, RotationCoding)> {
        alloc::vec![
            ("a-coding", a_coding()),
            ("third-interval", third_interval()),
            ("four-colouring", four_colouring()),
        ]
    }
}
