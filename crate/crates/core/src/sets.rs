//! Finite unions of half-open rational intervals.
//!
//! All sets are stored normalized: sorted, pairwise disjoint, with touching
//! intervals merged. Half-open `[lo, hi)` semantics make "disjoint almost
//! everywhere" an exact decidable property: intervals sharing an endpoint
//! never overlap.

use std::fmt;

use num_traits::{Signed, Zero};
use serde::{de::Error as _, Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{format_rational, parse_rational, pow2, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    lo: Rational,
    hi: Rational,
}

impl Interval {
    /// `[lo, hi)`, or `None` when `lo >= hi`.
    pub fn new(lo: Rational, hi: Rational) -> Option<Self> {
        (lo < hi).then_some(Interval { lo, hi })
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    /// `2^j * self + t`.
    pub fn transform(&self, j: i64, t: &Rational) -> Interval {
        let f = pow2(j);
        Interval {
            lo: &self.lo * &f + t,
            hi: &self.hi * &f + t,
        }
    }

    pub fn shift(&self, t: &Rational) -> Interval {
        Interval {
            lo: &self.lo + t,
            hi: &self.hi + t,
        }
    }

    /// The a.e. mirror image `[-hi, -lo)`.
    pub fn negate(&self) -> Interval {
        Interval {
            lo: -&self.hi,
            hi: -&self.lo,
        }
    }

    pub fn contains_interval(&self, other: &Interval) -> bool {
        self.lo <= other.lo && other.hi <= self.hi
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.lo < other.hi && other.lo < self.hi
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}, {})", self.lo, self.hi)
    }
}

impl Serialize for Interval {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [format_rational(&self.lo), format_rational(&self.hi)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Interval {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [lo, hi] = <[String; 2]>::deserialize(d)?;
        let lo = parse_rational(&lo).map_err(D::Error::custom)?;
        let hi = parse_rational(&hi).map_err(D::Error::custom)?;
        Interval::new(lo.clone(), hi.clone())
            .ok_or_else(|| D::Error::custom(format!("empty interval [{lo}, {hi})")))
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct IntervalSet {
    intervals: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet::default()
    }

    /// Normalizes raw `(lo, hi)` pairs: sorts, merges overlapping and
    /// touching pieces and drops degenerate ones.
    pub fn normalize<I>(raw: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Rational, Rational)>,
    {
        let mut pieces = Vec::new();
        for (lo, hi) in raw {
            if lo > hi {
                return Err(Error::MalformedInterval { lo: Box::new(lo), hi: Box::new(hi) });
            }
            if let Some(iv) = Interval::new(lo, hi) {
                pieces.push(iv);
            }
        }
        Ok(Self::from_pieces(pieces))
    }

    /// Union of arbitrary (possibly overlapping) intervals.
    pub fn from_pieces<I: IntoIterator<Item = Interval>>(pieces: I) -> Self {
        let mut pieces: Vec<Interval> = pieces.into_iter().collect();
        pieces.sort_by(|a, b| a.lo.cmp(&b.lo).then_with(|| a.hi.cmp(&b.hi)));
        let mut out: Vec<Interval> = Vec::with_capacity(pieces.len());
        for iv in pieces {
            match out.last_mut() {
                Some(last) if iv.lo <= last.hi => {
                    if iv.hi > last.hi {
                        last.hi = iv.hi;
                    }
                }
                _ => out.push(iv),
            }
        }
        IntervalSet { intervals: out }
    }

    pub fn single(lo: Rational, hi: Rational) -> Self {
        Self::from_pieces(Interval::new(lo, hi))
    }

    pub fn intervals(&self) -> &[Interval] {
        &self.intervals
    }

    pub fn len(&self) -> usize {
        self.intervals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.intervals.is_empty()
    }

    pub fn measure(&self) -> Rational {
        self.intervals
            .iter()
            .fold(Rational::zero(), |acc, iv| acc + iv.length())
    }

    /// `2^j * S + t`.
    pub fn transform(&self, j: i64, t: &Rational) -> Self {
        // Positive scaling and translation preserve order and disjointness.
        IntervalSet {
            intervals: self.intervals.iter().map(|iv| iv.transform(j, t)).collect(),
        }
    }

    pub fn shift(&self, t: &Rational) -> Self {
        self.transform(0, t)
    }

    pub fn dilate(&self, j: i64) -> Self {
        self.transform(j, &Rational::zero())
    }

    pub fn negate(&self) -> Self {
        IntervalSet {
            intervals: self.intervals.iter().rev().map(Interval::negate).collect(),
        }
    }

    pub fn union(&self, other: &Self) -> Self {
        Self::from_pieces(self.intervals.iter().chain(&other.intervals).cloned())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && b)
    }

    pub fn difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a && !b)
    }

    pub fn symmetric_difference(&self, other: &Self) -> Self {
        self.combine(other, |a, b| a != b)
    }

    pub fn is_subset(&self, other: &Self) -> bool {
        self.difference(other).is_empty()
    }

    pub fn is_disjoint(&self, other: &Self) -> bool {
        self.intersection(other).is_empty()
    }

    /// Whether `[lo, hi)` lies inside one interval of the set.
    pub fn covers(&self, lo: &Rational, hi: &Rational) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.lo <= *lo);
        idx > 0 && self.intervals[idx - 1].hi >= *hi
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let idx = self.intervals.partition_point(|iv| iv.lo <= *x);
        idx > 0 && self.intervals[idx - 1].hi > *x
    }

    fn combine(&self, other: &Self, keep: impl Fn(bool, bool) -> bool) -> Self {
        let mut points: Vec<&Rational> = self
            .intervals
            .iter()
            .chain(&other.intervals)
            .flat_map(|iv| [&iv.lo, &iv.hi])
            .collect();
        points.sort();
        points.dedup();
        let pieces = points.windows(2).filter_map(|w| {
            let (x, y) = (w[0], w[1]);
            keep(self.covers(x, y), other.covers(x, y))
                .then(|| Interval::new(x.clone(), y.clone()))
                .flatten()
        });
        Self::from_pieces(pieces)
    }

    pub fn positive_part(&self) -> Self {
        self.split_at_zero().1
    }

    pub fn negative_part(&self) -> Self {
        self.split_at_zero().0
    }

    /// `(negative part, positive part)`, cutting any interval that straddles 0.
    pub fn split_at_zero(&self) -> (Self, Self) {
        let mut neg = Vec::new();
        let mut pos = Vec::new();
        for iv in &self.intervals {
            if iv.hi <= Rational::zero() {
                neg.push(iv.clone());
            } else if iv.lo >= Rational::zero() {
                pos.push(iv.clone());
            } else {
                neg.push(Interval {
                    lo: iv.lo.clone(),
                    hi: Rational::zero(),
                });
                pos.push(Interval {
                    lo: Rational::zero(),
                    hi: iv.hi.clone(),
                });
            }
        }
        (IntervalSet { intervals: neg }, IntervalSet { intervals: pos })
    }

    pub fn is_symmetric(&self) -> bool {
        self.negate() == *self
    }

    /// Smallest `|e|` over the nonzero endpoints.
    pub fn min_abs_endpoint(&self) -> Option<Rational> {
        self.intervals
            .iter()
            .flat_map(|iv| [&iv.lo, &iv.hi])
            .filter(|e| !e.is_zero())
            .map(|e| e.abs())
            .min()
    }

    pub fn min(&self) -> Option<&Rational> {
        self.intervals.first().map(|iv| &iv.lo)
    }

    pub fn max(&self) -> Option<&Rational> {
        self.intervals.last().map(|iv| &iv.hi)
    }
}

impl From<Interval> for IntervalSet {
    fn from(iv: Interval) -> Self {
        IntervalSet { intervals: vec![iv] }
    }
}

impl FromIterator<Interval> for IntervalSet {
    fn from_iter<T: IntoIterator<Item = Interval>>(iter: T) -> Self {
        Self::from_pieces(iter)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.intervals.is_empty() {
            return f.write_str("{}");
        }
        for (i, iv) in self.intervals.iter().enumerate() {
            if i > 0 {
                f.write_str(" u ")?;
            }
            write!(f, "{iv}")?;
        }
        Ok(())
    }
}

impl Serialize for IntervalSet {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.intervals.serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntervalSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = Vec::<[String; 2]>::deserialize(d)?;
        let pairs = raw
            .iter()
            .map(|[lo, hi]| Ok((parse_rational(lo)?, parse_rational(hi)?)))
            .collect::<Result<Vec<_>>>()
            .map_err(D::Error::custom)?;
        IntervalSet::normalize(pairs).map_err(D::Error::custom)
    }
}
