//! Fiber multiplicity profiles.
//!
//! Both tiling conditions reduce to one question about a step function on a
//! fundamental domain: how many integer translates (resp. dyadic dilates) of
//! a set cover each point. A set tiles exactly when that count is 1 almost
//! everywhere, and two sets are translation (resp. dilation) equivalent
//! exactly when their counts agree almost everywhere.

use std::collections::BTreeMap;

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::rational::{floor_int, floor_log2, int, pow2, Rational};
use crate::sets::{Interval, IntervalSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Domain {
    /// Fibers of `x -> x mod 1` over `[0, 1)`.
    Mod1,
    /// Dyadic orbits of positive reals over `[1, 2)`.
    DyadicPos,
    /// Dyadic orbits of negative reals over `[-2, -1)`.
    DyadicNeg,
}

impl Domain {
    pub fn bounds(self) -> (Rational, Rational) {
        match self {
            Domain::Mod1 => (int(0), int(1)),
            Domain::DyadicPos => (int(1), int(2)),
            Domain::DyadicNeg => (int(-2), int(-1)),
        }
    }

    pub fn interval(self) -> Interval {
        let (lo, hi) = self.bounds();
        Interval::new(lo, hi).expect("fundamental domains are nonempty")
    }
}

/// Piecewise-constant multiplicity over a fundamental domain.
///
/// `breaks` runs from the domain's left end to its right end; `counts[i]` is
/// the multiplicity on `[breaks[i], breaks[i + 1])`. Adjacent pieces always
/// carry different counts, so equal profiles compare equal structurally.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MultiplicityProfile {
    domain: Domain,
    #[serde(with = "crate::rational::serde_str_vec")]
    breaks: Vec<Rational>,
    counts: Vec<u64>,
}

impl MultiplicityProfile {
    /// Sweep-line kernel: `base` everywhere plus one for every piece.
    /// Pieces must already lie inside the domain.
    fn sweep(domain: Domain, base: u64, pieces: &[(Rational, Rational)]) -> Self {
        let (d_lo, d_hi) = domain.bounds();
        let mut events: BTreeMap<&Rational, i64> = BTreeMap::new();
        for (lo, hi) in pieces {
            debug_assert!(d_lo <= *lo && lo < hi && *hi <= d_hi);
            *events.entry(lo).or_default() += 1;
            *events.entry(hi).or_default() -= 1;
        }
        let mut breaks = vec![d_lo.clone()];
        let mut counts = Vec::new();
        let mut level = base as i64;
        let mut at = &d_lo;
        for (x, delta) in events {
            if x > at {
                push_piece(&mut breaks, &mut counts, x.clone(), level as u64);
                at = x;
            }
            level += delta;
        }
        if d_hi > *at {
            push_piece(&mut breaks, &mut counts, d_hi, level as u64);
        }
        MultiplicityProfile {
            domain,
            breaks,
            counts,
        }
    }

    /// A profile with the same count everywhere.
    pub fn constant(domain: Domain, count: u64) -> Self {
        Self::sweep(domain, count, &[])
    }

    pub fn domain(&self) -> Domain {
        self.domain
    }

    pub fn breaks(&self) -> &[Rational] {
        &self.breaks
    }

    pub fn counts(&self) -> &[u64] {
        &self.counts
    }

    /// `(lo, hi, count)` for each maximal constant piece.
    pub fn pieces(&self) -> impl Iterator<Item = (&Rational, &Rational, u64)> + '_ {
        self.breaks
            .windows(2)
            .zip(&self.counts)
            .map(|(w, &c)| (&w[0], &w[1], c))
    }

    /// Σ count · length.
    pub fn mass(&self) -> Rational {
        self.pieces().fold(Rational::zero(), |acc, (lo, hi, c)| {
            acc + (hi - lo) * int(c as i64)
        })
    }

    pub fn max_count(&self) -> u64 {
        self.counts.iter().copied().max().unwrap_or(0)
    }

    pub fn is_constant(&self, count: u64) -> bool {
        self.counts.iter().all(|&c| c == count)
    }

    /// The part of the domain where `pred(count)` holds.
    pub fn region(&self, pred: impl Fn(u64) -> bool) -> IntervalSet {
        self.pieces()
            .filter(|&(_, _, c)| pred(c))
            .filter_map(|(lo, hi, _)| Interval::new(lo.clone(), hi.clone()))
            .collect()
    }

    pub fn support(&self) -> IntervalSet {
        self.region(|c| c > 0)
    }

    /// Common refinement of two profiles over the same domain:
    /// `(lo, hi, self_count, other_count)`.
    pub fn zip<'a>(&'a self, other: &'a Self) -> Vec<(Rational, Rational, u64, u64)> {
        assert_eq!(self.domain, other.domain, "profiles over different domains");
        let mut points: Vec<&Rational> = self.breaks.iter().chain(&other.breaks).collect();
        points.sort();
        points.dedup();
        points
            .windows(2)
            .map(|w| {
                (
                    w[0].clone(),
                    w[1].clone(),
                    self.count_at(w[0]),
                    other.count_at(w[0]),
                )
            })
            .collect()
    }

    /// Multiplicity on the piece starting at or containing `x`.
    pub fn count_at(&self, x: &Rational) -> u64 {
        let idx = self.breaks.partition_point(|b| b <= x);
        if idx == 0 || idx > self.counts.len() {
            0
        } else {
            self.counts[idx - 1]
        }
    }

    /// Where the two profiles disagree.
    pub fn difference_region(&self, other: &Self) -> IntervalSet {
        self.zip(other)
            .into_iter()
            .filter(|(_, _, a, b)| a != b)
            .filter_map(|(lo, hi, _, _)| Interval::new(lo, hi))
            .collect()
    }
}

fn push_piece(breaks: &mut Vec<Rational>, counts: &mut Vec<u64>, end: Rational, count: u64) {
    if counts.last() == Some(&count) {
        *breaks.last_mut().expect("breaks start with the domain origin") = end;
    } else {
        counts.push(count);
        breaks.push(end);
    }
}

/// Multiplicity of `x mod 1`: for `x ∈ [0, 1)`, `#{k ∈ Z : x + k ∈ S}`.
pub fn mod1_profile(set: &IntervalSet) -> MultiplicityProfile {
    mod1_profile_of(set.intervals())
}

/// Same as [`mod1_profile`] but for a multiset of intervals, each counted
/// separately even when they overlap.
pub fn mod1_profile_of(intervals: &[Interval]) -> MultiplicityProfile {
    let mut base = 0u64;
    let mut pieces = Vec::new();
    let one = Rational::one();
    for iv in intervals {
        let k0 = Rational::from_integer(floor_int(iv.lo()));
        let lo = iv.lo() - &k0;
        let hi = iv.hi() - &k0;
        if hi <= one {
            pieces.push((lo, hi));
            continue;
        }
        pieces.push((lo, one.clone()));
        let k1 = Rational::from_integer(floor_int(&hi));
        base += (&k1 - &one)
            .to_integer()
            .to_u64()
            .expect("period count fits in u64");
        let tail = hi - k1;
        if tail.is_positive() {
            pieces.push((Rational::zero(), tail));
        }
    }
    pieces.retain(|(lo, hi)| lo < hi);
    MultiplicityProfile::sweep(Domain::Mod1, base, &pieces)
}

/// Dyadic multiplicities of the positive and negative parts of `set`.
///
/// Errors when an interval meets 0: such an interval covers every dyadic
/// orbit infinitely often.
pub fn dyadic_profile(set: &IntervalSet) -> Result<(MultiplicityProfile, MultiplicityProfile)> {
    dyadic_profile_of(set.intervals())
}

pub fn dyadic_profile_of(
    intervals: &[Interval],
) -> Result<(MultiplicityProfile, MultiplicityProfile)> {
    let mut pos = Vec::new();
    let mut neg = Vec::new();
    for iv in intervals {
        if iv.lo().is_positive() {
            dyadic_pieces(iv.lo(), iv.hi(), &mut pos);
        } else if iv.hi().is_negative() {
            dyadic_pieces(&-iv.hi(), &-iv.lo(), &mut neg);
        } else {
            return Err(Error::MustSplitAtZero {
                lo: Box::new(iv.lo().clone()),
                hi: Box::new(iv.hi().clone()),
            });
        }
    }
    let pos = MultiplicityProfile::sweep(Domain::DyadicPos, 0, &pos);
    let neg = mirror(&MultiplicityProfile::sweep(Domain::DyadicPos, 0, &neg));
    Ok((pos, neg))
}

/// Cuts `[lo, hi)` (with `lo > 0`) at powers of two and rescales each cut
/// into `[1, 2)`.
fn dyadic_pieces(lo: &Rational, hi: &Rational, out: &mut Vec<(Rational, Rational)>) {
    let mut j = floor_log2(lo);
    let mut cur = lo.clone();
    loop {
        let band_hi = pow2(j + 1);
        let scale = pow2(-j);
        if *hi <= band_hi {
            out.push((&cur * &scale, hi * &scale));
            return;
        }
        out.push((&cur * &scale, int(2)));
        cur = band_hi;
        j += 1;
    }
}

fn mirror(p: &MultiplicityProfile) -> MultiplicityProfile {
    MultiplicityProfile {
        domain: Domain::DyadicNeg,
        breaks: p.breaks.iter().rev().map(|b| -b).collect(),
        counts: p.counts.iter().rev().copied().collect(),
    }
}
