use alloc::vec::Vec;

use super::{check_window, SequenceOracle, WordPattern, ZshiftError};
use crate::rotation::{classify_minimality, MinimalityVerdict, WordClass};

pub const MAX_CERTIFICATE_LENGTH: usize = 64;
pub const MAX_CERTIFICATE_RADIUS: i64 = 1_000_000;

/// A gap or slack, possibly unbounded.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
pub enum Extent {
    Finite(u64),
    Infinite,
}

impl Extent {
    pub fn at_most(self, bound: u64) -> bool {
        matches!(self, Extent::Finite(x) if x <= bound)
    }
}

impl core::fmt::Display for Extent {
    fn fmt(&self, f: &mut core::fmt::Formatter<'_>) -> core::fmt::Result {
        match self {
            Extent::Finite(x) => write!(f, "{}", x),
            Extent::Infinite => f.write_str("inf"),
        }
    }
}

#[cfg(feature = "serde")]
impl serde::Serialize for Extent {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            Extent::Finite(x) => serializer.serialize_u64(*x),
            Extent::Infinite => serializer.serialize_str("inf"),
        }
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct GapStats {
    pub max_gap: Extent,
    pub left_slack: Extent,
    pub right_slack: Extent,
}

impl GapStats {
    /// The largest of the three.
    pub fn worst(&self) -> Extent {
        self.max_gap.max(self.left_slack).max(self.right_slack)
    }
}

/// Gap statistics of sorted `positions ⊆ [lo, hi]`.
pub fn max_gap(positions: &[i64], lo: i64, hi: i64) -> GapStats {
    let (Some(&first), Some(&last)) = (positions.first(), positions.last()) else {
        return GapStats { max_gap: Extent::Infinite, left_slack: Extent::Infinite, right_slack: Extent::Infinite };
    };
    let max_gap = if positions.len() < 2 {
        Extent::Infinite
    } else {
        Extent::Finite(positions.windows(2).map(|w| (w[1] - w[0]) as u64).max().expect("two positions"))
    };
    GapStats { max_gap, left_slack: Extent::Finite((first - lo) as u64), right_slack: Extent::Finite((hi - last) as u64) }
}

/// Positions `h ∈ [lo, hi]` with `o(gᵢ + h) = sᵢ` for all `i`, ascending.
pub fn occurrences(o: &SequenceOracle, w: &WordPattern, lo: i64, hi: i64) -> Result<Vec<i64>, ZshiftError> {
    let alphabet = o.alphabet();
    if let Some(&s) = w.symbols().iter().find(|s| alphabet.binary_search(s).is_err()) {
        return Err(ZshiftError::AlphabetMismatch(s));
    }
    check_window(lo, hi)?;
    let (wlo, whi) = (lo + w.min_offset(), hi + w.max_offset());
    check_window(wlo, whi)?;
    let values = o.window_unchecked(wlo, whi)?;
    Ok(scan(&values, wlo, w, lo, hi))
}

fn scan(values: &[crate::Symbol], base: i64, w: &WordPattern, lo: i64, hi: i64) -> Vec<i64> {
    (lo..=hi).filter(|&h| w.pairs().all(|(g, s)| values[(h + g - base) as usize] == s)).collect()
}

/// The contiguous words `o(0) … o(ℓ − 1)` for `ℓ = 1..=L`.
pub fn initial_words(o: &SequenceOracle, max_len: usize) -> Result<Vec<WordPattern>, ZshiftError> {
    if max_len == 0 {
        return Ok(Vec::new());
    }
    let values = o.eval_window(0, max_len as i64 - 1)?;
    (1..=max_len).map(|l| WordPattern::contiguous(values[..l].to_vec())).collect()
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum RefutationKind {
    /// fewer than two occurrences in the window
    TooFewOccurrences,
    /// two consecutive occurrences further apart than the bound
    GapExceeded,
    /// no occurrence within the bound of a window end
    SlackExceeded,
    /// a word of the sequence whose exact locus has no interior
    NonSyndeticWord,
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct OccurrenceEvidence {
    pub count: usize,
    /// up to the first 16 positions
    pub first: Vec<i64>,
    pub stats: GapStats,
    /// endpoints of the widest interior gap
    pub widest: Option<(i64, i64)>,
}

impl OccurrenceEvidence {
    fn new(positions: &[i64], lo: i64, hi: i64) -> Self {
        let widest = positions.windows(2).max_by_key(|w| (w[1] - w[0], -w[0])).map(|w| (w[0], w[1]));
        OccurrenceEvidence {
            count: positions.len(),
            first: positions.iter().take(16).copied().collect(),
            stats: max_gap(positions, lo, hi),
            widest,
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub enum CertificateVerdict {
    /// Every initial word of length `≤ L` has gaps and slacks `≤ gap` in `[−N, N]`.
    Verified { gap: u64 },
    /// `exact` is set only when a rotation backend classified the word.
    CandidateRefutation {
        word: WordPattern,
        kind: RefutationKind,
        evidence: OccurrenceEvidence,
        exact: bool,
        classification: Option<WordClass>,
    },
    /// The window violates the bound but the exact backend says the word recurs syndetically.
    Inconclusive { word: WordPattern, classification: Option<WordClass> },
}

#[derive(Clone, PartialEq, Eq, Debug)]
#[cfg_attr(feature = "serde", derive(serde::Serialize))]
pub struct RecurrenceCertificate {
    pub max_length: usize,
    pub radius: i64,
    pub gap_bound: u64,
    pub verdict: CertificateVerdict,
}

/// Windowed uniform-recurrence test over the initial words of `o`.
pub fn uniform_recurrence_certificate(
    o: &SequenceOracle,
    max_length: usize,
    radius: i64,
    gap_bound: u64,
) -> Result<RecurrenceCertificate, ZshiftError> {
    if max_length == 0 || max_length > MAX_CERTIFICATE_LENGTH {
        return Err(ZshiftError::BoundsExceeded("certificate word length must be in 1..=64"));
    }
    if !(0..=MAX_CERTIFICATE_RADIUS).contains(&radius) {
        return Err(ZshiftError::BoundsExceeded("certificate radius must be in 0..=10^6"));
    }
    let done = |verdict| Ok(RecurrenceCertificate { max_length, radius, gap_bound, verdict });
    let (lo, hi) = (-radius, radius);

    if let SequenceOracle::RotationCoded(c) = o {
        if let MinimalityVerdict::NotMinimal { witness: Some(w) } = classify_minimality(c)?.verdict {
            if w.word.len() <= max_length {
                let evidence = OccurrenceEvidence::new(&occurrences(o, &w.word, lo, hi)?, lo, hi);
                return done(CertificateVerdict::CandidateRefutation {
                    word: w.word.clone(),
                    kind: RefutationKind::NonSyndeticWord,
                    evidence,
                    exact: true,
                    classification: Some(WordClass::Finite(w.occurrences.clone())),
                });
            }
        }
    }

    let values = o.eval_window(lo, hi + max_length as i64 - 1)?;
    let mut worst_gap = 0u64;
    let mut failure: Option<(RefutationKind, WordPattern, Vec<i64>)> = None;
    for len in 1..=max_length {
        let start = (0 - lo) as usize;
        let word = WordPattern::contiguous(values[start..start + len].to_vec())?;
        let positions = scan(&values, lo, &word, lo, hi);
        let stats = max_gap(&positions, lo, hi);
        let kind = if positions.len() < 2 {
            Some(RefutationKind::TooFewOccurrences)
        } else if !stats.max_gap.at_most(gap_bound) {
            Some(RefutationKind::GapExceeded)
        } else if !stats.left_slack.at_most(gap_bound) || !stats.right_slack.at_most(gap_bound) {
            Some(RefutationKind::SlackExceeded)
        } else {
            None
        };
        match kind {
            Some(k) => {
                if failure.as_ref().is_none_or(|(fk, _, _)| k < *fk) {
                    failure = Some((k, word, positions));
                }
            }
            None => {
                if let Extent::Finite(g) = stats.worst() {
                    worst_gap = worst_gap.max(g);
                }
            }
        }
    }
    let Some((kind, word, positions)) = failure else {
        return done(CertificateVerdict::Verified { gap: worst_gap });
    };
    let evidence = OccurrenceEvidence::new(&positions, lo, hi);
    match o {
        SequenceOracle::RotationCoded(c) => match c.classify_word(&word)? {
            cls @ WordClass::Syndetic(_) => {
                done(CertificateVerdict::Inconclusive { word, classification: Some(cls) })
            }
            cls => done(CertificateVerdict::CandidateRefutation {
                word,
                kind,
                evidence,
                exact: true,
                classification: Some(cls),
            }),
        },
        _ => done(CertificateVerdict::CandidateRefutation { word, kind, evidence, exact: false, classification: None }),
    }
}
