//! Verdicts for individual chain links, per-n exclusion thresholds, and the
//! finite lists of fillings that the bound leaves open.

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bounds::{self, ZeroCase};
use crate::context::Context;
use crate::cusp::{BaseFamily, SlopeSpec};
use crate::numerics::Interval;
use crate::par;
use crate::reference::ReferenceSet;
use crate::{Error, Result};

/// The n-chain link with `r` signed half-twists; `r = 0` is the minimally
/// twisted chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ChainLinkId {
    pub n: i64,
    pub r: i64,
}

impl ChainLinkId {
    pub fn new(n: i64, r: i64) -> Self {
        ChainLinkId { n, r }
    }

    pub fn slope(&self) -> Result<SlopeSpec> {
        bounds::slope_for_chain(self.n, self.r)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Verdict {
    /// The certified lower bound lies strictly above `vol(W_{n-1})`.
    ExcludedByBound,
    /// The bound applies but does not clear the cover volume.
    Residual,
    /// `ℓ > 2π` could not be certified.
    BoundInapplicable,
}

impl Verdict {
    pub fn as_str(&self) -> &'static str {
        match self {
            Verdict::ExcludedByBound => "ExcludedByBound",
            Verdict::Residual => "Residual",
            Verdict::BoundInapplicable => "BoundInapplicable",
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct BoundReport {
    pub id: ChainLinkId,
    pub slope: SlopeSpec,
    pub slope_length_sq: i64,
    pub lower_bound: Interval,
    pub cover_volume: Interval,
    pub verdict: Verdict,
    /// `lower_bound - cover_volume`.
    pub margin: Interval,
    /// Recorded volume of this link or an isometric one, when tabulated.
    pub reference_volume: Option<Interval>,
    /// `reference_volume - cover_volume`.
    pub reference_margin: Option<Interval>,
}

/// Classifies a chain link against the bundled reference tables.
pub fn classify_chain(ctx: &Context, id: ChainLinkId) -> Result<BoundReport> {
    classify_with(ctx, ReferenceSet::bundled(), id)
}

pub fn classify_with(ctx: &Context, refs: &ReferenceSet, id: ChainLinkId) -> Result<BoundReport> {
    let bound = bounds::chain_volume_lower_bound(ctx, id.n, id.r)?;
    let slope = bound.slope.expect("chain bounds carry their slope");
    let cover = bounds::whitehead_cover_volume(ctx, id.n)?;
    let verdict = if !bound.applicable {
        Verdict::BoundInapplicable
    } else if bound.lower_bound.certainly_gt(&cover) {
        Verdict::ExcludedByBound
    } else {
        Verdict::Residual
    };
    let reference_volume = reference_volume(refs, &slope);
    Ok(BoundReport {
        id,
        slope,
        slope_length_sq: bound.slope_length_sq.expect("exact slope"),
        lower_bound: bound.lower_bound,
        cover_volume: cover,
        verdict,
        margin: bound.lower_bound - cover,
        reference_volume,
        reference_margin: reference_volume.map(|v| v - cover),
    })
}

fn reference_volume(refs: &ReferenceSet, slope: &SlopeSpec) -> Option<Interval> {
    let (n, m, family) = (slope.n(), slope.m(), slope.family());
    if (family, m) == (BaseFamily::MinTwistBase, 0) {
        return refs.min_twist(n).map(|r| r.volume.value);
    }
    if let Some(row) = refs.filling(family, n, m) {
        return Some(row.volume.value);
    }
    let (pf, pm) = isometric_partner(n, family, m);
    if (pf, pm) == (BaseFamily::MinTwistBase, 0) {
        return refs.min_twist(n).map(|r| r.volume.value);
    }
    refs.filling(pf, n, pm).map(|r| r.volume.value)
}

/// Classifies many links, in input order.
pub fn classify_many(ctx: &Context, ids: &[ChainLinkId]) -> Vec<Result<BoundReport>> {
    par::map(ctx.execution(), ids, |id| classify_chain(ctx, *id))
}

/// Certified sign of `f(n, m)`: true when excluded, false when the
/// comparison is negative or the bound is vacuous.
fn excluded_by_f(n: i64, m: i64, family: BaseFamily) -> Result<bool> {
    match bounds::comparison_f_nm(n, m, family) {
        Ok(v) if v.is_positive() => Ok(true),
        Ok(v) if v.is_negative() => Ok(false),
        Ok(v) => Err(Error::Inconclusive(format!(
            "sign of f({n}, {m}) on {} = {v}",
            family.as_str()
        ))),
        Err(Error::Domain(_)) => Ok(false),
        Err(e) => Err(e),
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct CaseThreshold {
    pub case: ZeroCase,
    pub family: BaseFamily,
    /// Least `M ≥ 0` such that every `m` with `|m| ≥ M` is excluded.
    pub threshold: i64,
    /// Least excluded `m ≥ 0`.
    pub first_excluded_above: i64,
    /// Greatest excluded `m ≤ -1`.
    pub first_excluded_below: i64,
}

impl CaseThreshold {
    /// Twist coefficients left open by the bound.
    pub fn open_range(&self) -> std::ops::Range<i64> {
        (self.first_excluded_below + 1)..self.first_excluded_above
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Frontier {
    pub n: i64,
    pub cases: Vec<CaseThreshold>,
}

impl Frontier {
    pub fn max_threshold(&self) -> i64 {
        self.cases.iter().map(|c| c.threshold).max().unwrap_or(0)
    }
}

/// First excluded twist coefficient along `m = start, start + step, …`.
fn walk_to_exclusion(n: i64, family: BaseFamily, start: i64, step: i64) -> Result<i64> {
    let mut m = start;
    while !excluded_by_f(n, m, family)? {
        m += step;
        if m.abs() > crate::cusp::MAX_TWIST {
            return Err(Error::Overflow(format!("no exclusion found for n = {n}")));
        }
    }
    Ok(m)
}

/// Exclusion thresholds of both parity cases of `n`, located by certified
/// signs of `f(n, m)`.
///
/// Along each ray `m ≥ 0` and `m ≤ -1` the squared slope length grows
/// strictly outward, so the first excluded integer on a ray excludes
/// everything beyond it.
pub fn exclusion_frontier(n: i64) -> Result<Frontier> {
    SlopeSpec::new(n, 0, BaseFamily::MinTwistBase)?;
    let mut cases = Vec::new();
    for family in [BaseFamily::MinTwistBase, BaseFamily::HalfTwistBase] {
        let above = walk_to_exclusion(n, family, 0, 1)?;
        let below = walk_to_exclusion(n, family, -1, -1)?;
        let threshold = if above == 0 && below == -1 {
            0
        } else {
            above.max(-below)
        };
        cases.push(CaseThreshold {
            case: ZeroCase::of(n, family),
            family,
            threshold,
            first_excluded_above: above,
            first_excluded_below: below,
        });
    }
    Ok(Frontier { n, cases })
}

/// Which of the two finite check lists to enumerate.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum ResidualRange {
    /// `11 ≤ n ≤ 59`, twist coefficients `|m| ≤ 7` on both bases.
    Large,
    /// `5 ≤ n ≤ 10`, the fillings tabulated for the small chains.
    Small,
}

impl ResidualRange {
    pub fn n_range(&self) -> std::ops::RangeInclusive<i64> {
        match self {
            ResidualRange::Large => 11..=59,
            ResidualRange::Small => 5..=10,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct ResidualCase {
    pub base: BaseFamily,
    pub n: i64,
    pub m: i64,
    /// Survives deduplication by isometry.
    pub canonical: bool,
}

impl ResidualCase {
    pub fn half_twists(&self) -> i64 {
        match self.base {
            BaseFamily::MinTwistBase => 2 * self.m,
            BaseFamily::HalfTwistBase => 2 * self.m + 1,
        }
    }
}

/// The filling isometric to `(family, m)` on the same `n`, possibly itself.
///
/// Odd n: `Ŵₙ(1, m) ≅ W̄ₙ(1, -m)`. Even n: `Ŵₙ(1, m) ≅ Ŵₙ(1, -m)` and
/// `W̄ₙ(1, m) ≅ W̄ₙ(1, 1 - m)`.
pub fn isometric_partner(n: i64, family: BaseFamily, m: i64) -> (BaseFamily, i64) {
    match (n % 2 == 0, family) {
        (false, BaseFamily::MinTwistBase) => (BaseFamily::HalfTwistBase, -m),
        (false, BaseFamily::HalfTwistBase) => (BaseFamily::MinTwistBase, -m),
        (true, BaseFamily::MinTwistBase) => (BaseFamily::MinTwistBase, -m),
        (true, BaseFamily::HalfTwistBase) => (BaseFamily::HalfTwistBase, 1 - m),
    }
}

/// Marks the lexicographically least `(base, m)` of each isometry class as
/// canonical. A class member that is not enumerated never suppresses one
/// that is, except the minimally twisted filling, which is handled apart.
fn mark_canonical(n: i64, entries: &[(BaseFamily, i64)], omitted: Option<(BaseFamily, i64)>) -> Vec<bool> {
    let present: BTreeSet<(BaseFamily, i64)> = entries.iter().copied().chain(omitted).collect();
    entries
        .iter()
        .map(|&(family, m)| {
            let partner = isometric_partner(n, family, m);
            partner == (family, m)
                || !present.contains(&partner)
                || (family, m) < partner
        })
        .collect()
}

fn candidates(range: ResidualRange, n: i64) -> Vec<(BaseFamily, i64)> {
    use BaseFamily::*;
    match range {
        ResidualRange::Large => [MinTwistBase, HalfTwistBase]
            .into_iter()
            .flat_map(|f| (-7..=7).map(move |m| (f, m)))
            .filter(|&c| c != (MinTwistBase, 0))
            .collect(),
        ResidualRange::Small if n % 2 == 1 => (-5..=5)
            .filter(|&m| m != 0)
            .map(|m| (MinTwistBase, m))
            .collect(),
        ResidualRange::Small => (1..=5)
            .map(|m| (MinTwistBase, m))
            .chain((0..=5).map(|m| (HalfTwistBase, m)))
            .collect(),
    }
}

/// All candidate fillings of a check list with their canonical flags,
/// ordered by `n`, then base, then `m`.
pub fn enumerate_residual(range: ResidualRange) -> Vec<ResidualCase> {
    let omitted = match range {
        ResidualRange::Large => Some((BaseFamily::MinTwistBase, 0)),
        ResidualRange::Small => None,
    };
    range
        .n_range()
        .flat_map(|n| {
            let entries = candidates(range, n);
            let flags = mark_canonical(n, &entries, omitted);
            entries
                .into_iter()
                .zip(flags)
                .map(move |((base, m), canonical)| ResidualCase { base, n, m, canonical })
        })
        .collect()
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct ResidualCounts {
    pub candidates: usize,
    pub canonical: usize,
    pub odd_min_twist: usize,
    pub even_min_twist: usize,
    pub even_half_twist: usize,
}

/// Totals of the canonical cases by parity of `n` and base.
pub fn residual_counts(cases: &[ResidualCase]) -> ResidualCounts {
    let mut c = ResidualCounts {
        candidates: cases.len(),
        ..Default::default()
    };
    for case in cases.iter().filter(|c| c.canonical) {
        c.canonical += 1;
        match (case.n % 2 == 0, case.base) {
            (false, _) => c.odd_min_twist += 1,
            (true, BaseFamily::MinTwistBase) => c.even_min_twist += 1,
            (true, BaseFamily::HalfTwistBase) => c.even_half_twist += 1,
        }
    }
    c
}

#[cfg(test)]
mod tests {
    use super::*;
    use BaseFamily::*;

    fn verdict(n: i64, r: i64) -> Verdict {
        classify_chain(Context::standard(), ChainLinkId::new(n, r))
            .unwrap()
            .verdict
    }

    #[test]
    fn example_verdicts() {
        assert_eq!(verdict(61, 0), Verdict::ExcludedByBound);
        assert_eq!(verdict(8, 9), Verdict::Residual);
        assert_eq!(verdict(15, 2), Verdict::Residual);
        assert_eq!(verdict(5, 0), Verdict::BoundInapplicable);
        assert!(matches!(
            classify_chain(Context::standard(), ChainLinkId::new(4, 0)),
            Err(Error::Unsupported { n: 4, .. })
        ));
    }

    #[test]
    fn near_tie_at_eleven_carries_the_reference_margin() {
        let report = classify_chain(Context::standard(), ChainLinkId::new(11, 0)).unwrap();
        assert_eq!(report.verdict, Verdict::Residual);
        let margin = report.reference_margin.unwrap();
        assert!(margin.is_positive());
        assert!((margin.mid() - 0.01056278).abs() < 1e-7);
    }

    #[test]
    fn reference_lookup_uses_isometric_partners() {
        // Even n, m = 3 on the untwisted base is tabulated as m = -3.
        let direct = classify_chain(Context::standard(), ChainLinkId::new(12, -6)).unwrap();
        let mirrored = classify_chain(Context::standard(), ChainLinkId::new(12, 6)).unwrap();
        assert!(direct.reference_volume.is_some());
        assert_eq!(direct.reference_volume, mirrored.reference_volume);
    }

    #[test]
    fn frontier_examples() {
        let f = exclusion_frontier(60).unwrap();
        assert!(f.cases.iter().all(|c| c.threshold == 0 && c.open_range().is_empty()));
        let f = exclusion_frontier(30).unwrap();
        assert_eq!(f.max_threshold(), 8);
        for n in 5..=59 {
            assert!(exclusion_frontier(n).unwrap().max_threshold() <= 8);
        }
        let thresholds: Vec<i64> = exclusion_frontier(10).unwrap().cases.iter().map(|c| c.threshold).collect();
        assert_eq!(thresholds, vec![6, 6]);
    }

    #[test]
    fn large_list_counts() {
        let cases = enumerate_residual(ResidualRange::Large);
        let c = residual_counts(&cases);
        assert_eq!(c.candidates, 49 * 29);
        assert_eq!(c.canonical, 710);
        assert_eq!((c.odd_min_twist, c.even_min_twist, c.even_half_twist), (350, 168, 192));
        assert!(!cases.iter().any(|c| c.base == MinTwistBase && c.m == 0));
    }

    #[test]
    fn canonical_members_match_the_tabulated_fillings() {
        let refs = ReferenceSet::bundled();
        for case in enumerate_residual(ResidualRange::Large) {
            let listed = refs.filling(case.base, case.n, case.m).is_some();
            assert_eq!(listed, case.canonical, "{case:?}");
        }
    }

    #[test]
    fn small_list() {
        let cases = enumerate_residual(ResidualRange::Small);
        assert_eq!(cases.len(), 63);
        let half6: Vec<i64> = cases
            .iter()
            .filter(|c| c.n == 6 && c.base == HalfTwistBase)
            .map(|c| c.m)
            .collect();
        assert_eq!(half6, vec![0, 1, 2, 3, 4, 5]);
        // W̄₆(1,1) ≅ W̄₆(1,0); everything else has no listed partner.
        let dropped: Vec<(i64, i64)> = cases.iter().filter(|c| !c.canonical).map(|c| (c.n, c.m)).collect();
        assert_eq!(dropped, vec![(6, 1), (8, 1), (10, 1)]);
    }

    #[test]
    fn partners_are_involutions() {
        for n in 5..30 {
            for family in [MinTwistBase, HalfTwistBase] {
                for m in -10..10 {
                    let (f, p) = isometric_partner(n, family, m);
                    assert_eq!(isometric_partner(n, f, p), (family, m));
                }
            }
        }
    }
}
