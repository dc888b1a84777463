//! Laminar/chaotic phase segmentation and the intermittency verdict.
//!
//! An iterate is *near* when it lies within `eps` of the nontrivial fixed
//! point `x* = 1 − 1/r`. A maximal run of at least `min_len` near iterates is
//! a laminar phase. Everything else is chaotic.

use crate::error::{Error, Result};
use crate::lbe::DivergenceSeries;
use crate::map::PseudoOrbit;
use std::fmt;

pub const DEFAULT_EPS: f64 = 0.05;
pub const DEFAULT_MIN_LAMINAR_LEN: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PhaseKind {
    Laminar,
    Chaotic,
}

impl PhaseKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PhaseKind::Laminar => "laminar",
            PhaseKind::Chaotic => "chaotic",
        }
    }
}

impl fmt::Display for PhaseKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// Inclusive index range `[start, end]` of one phase.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhaseSegment {
    pub kind: PhaseKind,
    pub start: usize,
    pub end: usize,
}

impl PhaseSegment {
    pub fn len(&self) -> usize {
        self.end - self.start + 1
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Half-width of the laminar band and the shortest run that counts.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LaminarityRule {
    eps: f64,
    min_len: usize,
}

impl LaminarityRule {
    pub fn new(eps: f64, min_len: usize) -> Result<Self> {
        if !(eps.is_finite() && eps > 0.0) {
            return Err(Error::Config {
                field: "eps",
                reason: format!("must be a finite number > 0, got {eps}"),
            });
        }
        if min_len == 0 {
            return Err(Error::Config {
                field: "laminar-len",
                reason: "must be at least 1".into(),
            });
        }
        Ok(Self { eps, min_len })
    }

    pub fn eps(&self) -> f64 {
        self.eps
    }

    pub fn min_len(&self) -> usize {
        self.min_len
    }
}

impl Default for LaminarityRule {
    fn default() -> Self {
        Self {
            eps: DEFAULT_EPS,
            min_len: DEFAULT_MIN_LAMINAR_LEN,
        }
    }
}

/// Contiguous, alternating phase segments covering `0..len`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Segmentation {
    segments: Vec<PhaseSegment>,
}

impl Segmentation {
    pub fn segments(&self) -> &[PhaseSegment] {
        &self.segments
    }

    /// Number of indices covered.
    pub fn len(&self) -> usize {
        self.segments.last().map_or(0, |s| s.end + 1)
    }

    pub fn is_empty(&self) -> bool {
        self.segments.is_empty()
    }

    pub fn kind_at(&self, n: usize) -> Option<PhaseKind> {
        let i = self.segments.partition_point(|s| s.end < n);
        self.segments.get(i).map(|s| s.kind)
    }

    /// Per-index phase kinds.
    pub fn kinds(&self) -> Vec<PhaseKind> {
        let mut out = Vec::with_capacity(self.len());
        for s in &self.segments {
            out.extend(std::iter::repeat_n(s.kind, s.len()));
        }
        out
    }

    pub fn count(&self, kind: PhaseKind) -> usize {
        self.segments.iter().filter(|s| s.kind == kind).count()
    }

    /// Whether both laminar and chaotic phases occur.
    pub fn alternates(&self) -> bool {
        self.count(PhaseKind::Laminar) > 0 && self.count(PhaseKind::Chaotic) > 0
    }

    /// Whether a laminar and a chaotic segment both end before `limit`.
    fn alternates_before(&self, limit: Option<usize>) -> bool {
        let before = |kind| {
            self.segments
                .iter()
                .any(|s| s.kind == kind && limit.is_none_or(|m| s.end < m))
        };
        before(PhaseKind::Laminar) && before(PhaseKind::Chaotic)
    }
}

/// Segments an orbit against the fixed point `x_star`.
pub fn classify_phases(orbit: &PseudoOrbit, x_star: f64, rule: LaminarityRule) -> Segmentation {
    classify_values(orbit.values(), x_star, rule)
}

/// Segments an arbitrary series against `x_star`.
pub fn classify_values(values: &[f64], x_star: f64, rule: LaminarityRule) -> Segmentation {
    let mut segments: Vec<PhaseSegment> = Vec::new();
    let mut push = |kind: PhaseKind, start: usize, end: usize| match segments.last_mut() {
        Some(last) if last.kind == kind => last.end = end,
        _ => segments.push(PhaseSegment { kind, start, end }),
    };

    let mut n = 0;
    while n < values.len() {
        let near = |x: f64| (x - x_star).abs() < rule.eps;
        let run_start = n;
        let is_near = near(values[n]);
        while n < values.len() && near(values[n]) == is_near {
            n += 1;
        }
        let kind = if is_near && n - run_start >= rule.min_len {
            PhaseKind::Laminar
        } else {
            PhaseKind::Chaotic
        };
        push(kind, run_start, n - 1);
    }
    Segmentation { segments }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Verdict {
    /// Both forms alternate between phases inside the reliable window and
    /// agree at every index.
    TrustworthyIntermittency,
    /// The forms disagree about the phase somewhere, or the only alternation
    /// seen lies past the reliable window.
    ArtifactSuspect,
    /// Neither orbit alternates.
    NoIntermittency,
}

impl Verdict {
    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::TrustworthyIntermittency => "TrustworthyIntermittency",
            Verdict::ArtifactSuspect => "ArtifactSuspect",
            Verdict::NoIntermittency => "NoIntermittency",
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct IntermittencyReport {
    pub segments_a: Segmentation,
    pub segments_b: Segmentation,
    pub n_max: Option<usize>,
    pub verdict: Verdict,
    /// Every index where one form is laminar and the other chaotic.
    pub disagreement_indices: Vec<usize>,
}

impl IntermittencyReport {
    pub fn first_disagreement(&self) -> Option<usize> {
        self.disagreement_indices.first().copied()
    }
}

/// Compares the two segmentations index by index and assigns a verdict.
pub fn build_report(
    seg_a: Segmentation,
    seg_b: Segmentation,
    series: &DivergenceSeries,
) -> Result<IntermittencyReport> {
    if seg_a.len() != series.len() || seg_b.len() != series.len() {
        return Err(Error::Mismatch(format!(
            "segmentations cover {} and {} indices, series has {}",
            seg_a.len(),
            seg_b.len(),
            series.len()
        )));
    }
    let disagreement_indices: Vec<usize> = seg_a
        .kinds()
        .into_iter()
        .zip(seg_b.kinds())
        .enumerate()
        .filter_map(|(n, (a, b))| (a != b).then_some(n))
        .collect();

    let n_max = series.n_max();
    let verdict = if !disagreement_indices.is_empty() {
        Verdict::ArtifactSuspect
    } else if !seg_a.alternates() {
        Verdict::NoIntermittency
    } else if seg_a.alternates_before(n_max) && seg_b.alternates_before(n_max) {
        Verdict::TrustworthyIntermittency
    } else {
        Verdict::ArtifactSuspect
    };

    Ok(IntermittencyReport {
        segments_a: seg_a,
        segments_b: seg_b,
        n_max,
        verdict,
        disagreement_indices,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn rule(eps: f64, l: usize) -> LaminarityRule {
        LaminarityRule::new(eps, l).unwrap()
    }

    fn seg(kind: PhaseKind, start: usize, end: usize) -> PhaseSegment {
        PhaseSegment { kind, start, end }
    }

    fn series(len: usize, n_max: Option<usize>) -> DivergenceSeries {
        let mut delta = vec![0.0; len];
        if let Some(m) = n_max {
            delta[m] = 0.3;
        }
        DivergenceSeries::from_deltas(delta, 1.0).unwrap()
    }

    #[test]
    fn constant_orbit_at_fixed_point_is_laminar() {
        let s = classify_values(&[0.7; 50], 0.7, LaminarityRule::default());
        assert_eq!(s.segments(), &[seg(PhaseKind::Laminar, 0, 49)]);
    }

    #[test]
    fn distant_orbit_is_chaotic() {
        let s = classify_values(&[0.1; 50], 0.7, LaminarityRule::default());
        assert_eq!(s.segments(), &[seg(PhaseKind::Chaotic, 0, 49)]);
    }

    #[test]
    fn short_near_runs_are_absorbed_into_chaos() {
        let mut v = vec![0.1; 30];
        v[3..6].fill(0.7); // 3 near iterates, too short
        v[10..25].fill(0.71); // 15 near iterates
        let s = classify_values(&v, 0.7, rule(0.05, 10));
        assert_eq!(
            s.segments(),
            &[
                seg(PhaseKind::Chaotic, 0, 9),
                seg(PhaseKind::Laminar, 10, 24),
                seg(PhaseKind::Chaotic, 25, 29),
            ]
        );
        assert_eq!(s.kind_at(10), Some(PhaseKind::Laminar));
        assert_eq!(s.kind_at(9), Some(PhaseKind::Chaotic));
        assert_eq!(s.kind_at(30), None);
    }

    #[test]
    fn band_is_open() {
        let s = classify_values(&[0.75; 5], 0.7, rule(0.05, 1));
        assert_eq!(s.count(PhaseKind::Laminar), 0);
    }

    #[test]
    fn rule_validation() {
        assert!(LaminarityRule::new(0.0, 10).is_err());
        assert!(LaminarityRule::new(f64::NAN, 10).is_err());
        assert!(LaminarityRule::new(0.05, 0).is_err());
    }

    #[test]
    fn verdicts() {
        let mut v = vec![0.1; 40];
        v[5..20].fill(0.7);
        let s = classify_values(&v, 0.7, LaminarityRule::default());

        let r = build_report(s.clone(), s.clone(), &series(40, None)).unwrap();
        assert_eq!(r.verdict, Verdict::TrustworthyIntermittency);
        assert!(r.disagreement_indices.is_empty());

        // alternation only completes after n_max
        let r = build_report(s.clone(), s.clone(), &series(40, Some(10))).unwrap();
        assert_eq!(r.verdict, Verdict::ArtifactSuspect);

        let mut w = v.clone();
        w[15..20].fill(0.1);
        let t = classify_values(&w, 0.7, LaminarityRule::default());
        let r = build_report(s, t, &series(40, None)).unwrap();
        assert_eq!(r.verdict, Verdict::ArtifactSuspect);
        assert_eq!(r.disagreement_indices, vec![15, 16, 17, 18, 19]);
        assert_eq!(r.first_disagreement(), Some(15));

        let c = classify_values(&[0.1; 40], 0.7, LaminarityRule::default());
        let r = build_report(c.clone(), c, &series(40, None)).unwrap();
        assert_eq!(r.verdict, Verdict::NoIntermittency);
    }

    #[test]
    fn report_rejects_length_mismatch() {
        let a = classify_values(&[0.1; 10], 0.7, LaminarityRule::default());
        let b = classify_values(&[0.1; 11], 0.7, LaminarityRule::default());
        assert!(matches!(
            build_report(a.clone(), b, &series(10, None)),
            Err(Error::Mismatch(_))
        ));
        assert!(build_report(a.clone(), a, &series(10, None)).is_ok());
    }

    fn check_invariants(s: &Segmentation, len: usize) -> Result<(), TestCaseError> {
        prop_assert_eq!(s.len(), len);
        prop_assert_eq!(s.kinds().len(), len);
        let segs = s.segments();
        if len > 0 {
            prop_assert_eq!(segs[0].start, 0);
        }
        for w in segs.windows(2) {
            prop_assert_eq!(w[0].end + 1, w[1].start);
            prop_assert_ne!(w[0].kind, w[1].kind);
        }
        for sg in segs {
            prop_assert!(sg.start <= sg.end);
        }
        Ok(())
    }

    proptest! {
        #[test]
        fn segmentation_is_total_and_alternating(
            values in proptest::collection::vec(0.0f64..=1.0, 0..300),
            eps in 0.01f64..0.5,
            l in 1usize..20,
        ) {
            let s = classify_values(&values, 0.7, rule(eps, l));
            check_invariants(&s, values.len())?;
        }

        #[test]
        fn longer_min_len_never_adds_laminar_segments(
            values in proptest::collection::vec(0.6f64..=0.8, 1..300),
            l1 in 1usize..30,
            l2 in 1usize..30,
        ) {
            let (lo, hi) = if l1 <= l2 { (l1, l2) } else { (l2, l1) };
            let at_lo = classify_values(&values, 0.7, rule(0.05, lo)).count(PhaseKind::Laminar);
            let at_hi = classify_values(&values, 0.7, rule(0.05, hi)).count(PhaseKind::Laminar);
            prop_assert!(at_hi <= at_lo);
        }
    }
}
