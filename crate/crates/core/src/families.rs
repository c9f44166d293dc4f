//! Named parametric families of wavelet sets.

use std::fmt;
use std::str::FromStr;

use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygonal::{Flavor, Polygonal};
use crate::rational::{as_i64, int, parse_rational, pow2, rat, Rational};
use crate::sets::IntervalSet;
use crate::tiling::Space;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FamilyTag {
    /// Symmetric sets whose positive part has two intervals; parameter `l >= 0`.
    N2,
    /// Three-vertex polygonals `P[0, 2^s(2t+1)], P[-v, 0], P[-s-2, t]`.
    Kstv,
    /// Three-vertex polygonals `P[0, 2^s], P[u, v], P[-s-2, 0]`.
    Ksuv,
    /// `K_a⁺ = [a, 1/2) ∪ [1-a, 2a) ∪ [1, 2-2a)` for rational `1/3 < a < 1/2`.
    Ka,
    /// Four-interval H² sets `K_c`, `1/2 < c < 1`.
    #[serde(rename = "H2_4INT")]
    H2FourInt,
    /// Five-interval H² sets `K_{x,y}`, `1/2 < x < y < 1`, `x + 1 > 2y`.
    #[serde(rename = "H2_5INT")]
    H2FiveInt,
}

impl FamilyTag {
    pub const ALL: [FamilyTag; 6] = [
        FamilyTag::N2,
        FamilyTag::Kstv,
        FamilyTag::Ksuv,
        FamilyTag::Ka,
        FamilyTag::H2FourInt,
        FamilyTag::H2FiveInt,
    ];

    pub fn name(self) -> &'static str {
        match self {
            FamilyTag::N2 => "N2",
            FamilyTag::Kstv => "KSTV",
            FamilyTag::Ksuv => "KSUV",
            FamilyTag::Ka => "KA",
            FamilyTag::H2FourInt => "H2_4INT",
            FamilyTag::H2FiveInt => "H2_5INT",
        }
    }

    pub fn arity(self) -> usize {
        match self {
            FamilyTag::N2 | FamilyTag::Ka | FamilyTag::H2FourInt => 1,
            FamilyTag::H2FiveInt => 2,
            FamilyTag::Kstv | FamilyTag::Ksuv => 3,
        }
    }

    pub fn space(self) -> Space {
        match self {
            FamilyTag::H2FourInt | FamilyTag::H2FiveInt => Space::H2,
            _ => Space::L2,
        }
    }
}

impl fmt::Display for FamilyTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for FamilyTag {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        FamilyTag::ALL
            .into_iter()
            .find(|t| t.name() == up)
            .ok_or_else(|| Error::domain(format!("unknown family {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FamilyId {
    pub tag: FamilyTag,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub params: Vec<Rational>,
}

impl FamilyId {
    pub fn new(tag: FamilyTag, params: Vec<Rational>) -> Self {
        FamilyId { tag, params }
    }

    pub fn n2(l: i64) -> Self {
        Self::new(FamilyTag::N2, vec![int(l)])
    }

    pub fn kstv(s: i64, t: i64, v: i64) -> Self {
        Self::new(FamilyTag::Kstv, vec![int(s), int(t), int(v)])
    }

    pub fn ksuv(s: i64, u: i64, v: i64) -> Self {
        Self::new(FamilyTag::Ksuv, vec![int(s), int(u), int(v)])
    }

    pub fn ka(a: Rational) -> Self {
        Self::new(FamilyTag::Ka, vec![a])
    }

    pub fn k_c(c: Rational) -> Self {
        Self::new(FamilyTag::H2FourInt, vec![c])
    }

    pub fn k_xy(x: Rational, y: Rational) -> Self {
        Self::new(FamilyTag::H2FiveInt, vec![x, y])
    }

    /// Parses `"3/8"` or `"1,1,5"` style parameter lists.
    pub fn parse(tag: &str, params: &str) -> Result<Self> {
        let tag: FamilyTag = tag.parse()?;
        let params = params
            .split(',')
            .filter(|p| !p.trim().is_empty())
            .map(parse_rational)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(tag, params))
    }

    fn ints(&self) -> Result<Vec<i64>> {
        self.params
            .iter()
            .map(|p| {
                as_i64(p).ok_or_else(|| {
                    Error::domain(format!("{} parameters must be integers, got {p}", self.tag))
                })
            })
            .collect()
    }
}

impl fmt::Display for FamilyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ps: Vec<String> = self.params.iter().map(ToString::to_string).collect();
        write!(f, "{}({})", self.tag, ps.join(","))
    }
}

fn require(cond: bool, msg: impl FnOnce() -> String) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::Domain(msg()))
    }
}

/// Keeps exponents in a range where lattice coordinates fit in `u64`.
const MAX_EXP: i64 = 48;

fn symmetric(plus: IntervalSet) -> IntervalSet {
    plus.union(&plus.negate())
}

fn from_pairs(pairs: Vec<(Rational, Rational)>) -> IntervalSet {
    IntervalSet::normalize(pairs).expect("family endpoints are ordered")
}

/// The N2 polygonal `P[0, 2^l], P[-l-2, 0]`.
pub fn n2_polygonal(l: i64) -> Result<Polygonal> {
    require((0..=MAX_EXP).contains(&l), || format!("N2 needs 0 <= l <= {MAX_EXP}, got l = {l}"))?;
    Ok(Polygonal::from_pairs(Flavor::L2, &[(0, 1 << l), (-l - 2, 0)]))
}

/// The polygonal `P[0, 2^s(2t+1)], P[-v, 0], P[-s-2, t]`.
pub fn kstv_polygonal(s: i64, t: i64, v: i64) -> Result<Polygonal> {
    require(s >= 0, || format!("KSTV needs s >= 0, got s = {s}"))?;
    require(t >= 1, || format!("KSTV needs t >= 1, got t = {t}"))?;
    require(s + 2 <= MAX_EXP && v <= MAX_EXP && t < 1 << 12, || {
        format!("KSTV parameters too large: ({s},{t},{v})")
    })?;
    require(pow2(v) > int(2 * t + 1) * pow2(s + 2), || {
        format!("KSTV needs 2^v > (2t+1)*2^(s+2), got 2^{v} <= {}", (2 * t + 1) << (s + 2))
    })?;
    Ok(Polygonal::from_pairs(
        Flavor::L2,
        &[(0, ((2 * t + 1) << s) as u64), (-v, 0), (-s - 2, t as u64)],
    ))
}

/// The exact range of `v` making `P[0, 2^s], P[u, v], P[-s-2, 0]` an MSF
/// polygonal: `2^{s+u} < v < 2^s (2^{s+u+2} - 1) / (2^{s+2} - 1)`.
pub fn ksuv_window(s: i64, u: i64) -> (Rational, Rational) {
    let lo = pow2(s + u);
    let hi = pow2(s) * (pow2(s + u + 2) - int(1)) / (pow2(s + 2) - int(1));
    (lo, hi)
}

/// The polygonal `P[0, 2^s], P[u, v], P[-s-2, 0]`.
pub fn ksuv_polygonal(s: i64, u: i64, v: i64) -> Result<Polygonal> {
    require(s >= 0, || format!("KSUV needs s >= 0, got s = {s}"))?;
    require(u >= 1, || format!("KSUV needs u >= 1, got u = {u}"))?;
    require(s + u + 2 <= MAX_EXP, || format!("KSUV parameters too large: ({s},{u},{v})"))?;
    let (lo, hi) = ksuv_window(s, u);
    let v_r = int(v);
    require(lo < v_r && v_r < hi, || {
        format!("KSUV needs 2^(s+u) < v < 2^s(2^(s+u+2)-1)/(2^(s+2)-1), i.e. {lo} < v < {hi}, got v = {v}")
    })?;
    Ok(Polygonal::from_pairs(
        Flavor::L2,
        &[(0, 1 << s), (u, v as u64), (-s - 2, 0)],
    ))
}

/// `K_a⁺ = [a, 1/2) ∪ [1-a, 2a) ∪ [1, 2-2a)`.
pub fn ka_plus(a: &Rational) -> Result<IntervalSet> {
    require(&rat(1, 3) < a && a < &rat(1, 2), || format!("KA needs 1/3 < a < 1/2, got a = {a}"))?;
    let one = Rational::one();
    Ok(from_pairs(vec![
        (a.clone(), rat(1, 2)),
        (&one - a, a * int(2)),
        (one, int(2) - a * int(2)),
    ]))
}

/// `K_c = [1, 2c) ∪ [2c+2, c+3) ∪ [c, (c+1)/2) ∪ [(c+3)/2, 2)`.
pub fn k_c(c: &Rational) -> Result<IntervalSet> {
    require(&rat(1, 2) < c && c < &Rational::one(), || {
        format!("H2_4INT needs 1/2 < c < 1, got c = {c}")
    })?;
    let two = int(2);
    Ok(from_pairs(vec![
        (int(1), c * &two),
        (c * &two + &two, c + int(3)),
        (c.clone(), (c + int(1)) / &two),
        ((c + int(3)) / &two, two),
    ]))
}

/// `K_{x,y} = [x, y) ∪ [1, 2x) ∪ [2y, x+1) ∪ [y+1, 2) ∪ [2x+2, 2y+2)`.
pub fn k_xy(x: &Rational, y: &Rational) -> Result<IntervalSet> {
    require(&rat(1, 2) < x && x < y && y < &Rational::one(), || {
        format!("H2_5INT needs 1/2 < x < y < 1, got x = {x}, y = {y}")
    })?;
    require(x + int(1) > y * int(2), || format!("H2_5INT needs x + 1 > 2y, got x = {x}, y = {y}"))?;
    let two = int(2);
    Ok(from_pairs(vec![
        (x.clone(), y.clone()),
        (int(1), x * &two),
        (y * &two, x + int(1)),
        (y + int(1), two.clone()),
        (x * &two + &two, y * &two + &two),
    ]))
}

/// The set of a named family member, after checking its parameter constraints.
pub fn build_family(f: &FamilyId) -> Result<IntervalSet> {
    require(f.params.len() == f.tag.arity(), || {
        format!("{} takes {} parameter(s), got {}", f.tag, f.tag.arity(), f.params.len())
    })?;
    let p = &f.params;
    match f.tag {
        FamilyTag::N2 => n2_polygonal(f.ints()?[0])?.build(),
        FamilyTag::Kstv => {
            let v = f.ints()?;
            kstv_polygonal(v[0], v[1], v[2])?.build()
        }
        FamilyTag::Ksuv => {
            let v = f.ints()?;
            ksuv_polygonal(v[0], v[1], v[2])?.build()
        }
        FamilyTag::Ka => Ok(symmetric(ka_plus(&p[0])?)),
        FamilyTag::H2FourInt => k_c(&p[0]),
        FamilyTag::H2FiveInt => k_xy(&p[0], &p[1]),
    }
}
