//! Wavelet sets accumulating at 0.
//!
//! The finite sets `W_n` and `K_n` are perturbed into infinite families
//! `W_{n,ε}` and `K_{n,ε}` whose pieces shrink geometrically towards the
//! origin. Those are materialized to a finite depth together with an exact
//! bound on what was left out and the region where it would land, so the
//! tiling checks can tell a truncation gap from a real defect.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::profile::{dyadic_profile_of, mod1_profile, mod1_profile_of, MultiplicityProfile};
use crate::rational::{int, pow2, Rational};
use crate::sets::{Interval, IntervalSet};
use crate::tiling::{Condition, Space, Verdict};

const MAX_N: i64 = 40;

/// `a_n, b_n, c_n, d_n, e_n` for `n >= 2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constants {
    pub n: i64,
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
    pub d: Rational,
    pub e: Rational,
}

impl Constants {
    pub fn new(n: i64) -> Result<Self> {
        if !(2..=MAX_N).contains(&n) {
            return Err(Error::domain(format!("n must be in 2..={MAX_N}, got {n}")));
        }
        let den = pow2(n) - int(1);
        let a = pow2(n - 2) / &den;
        Ok(Constants {
            n,
            b: &a * int(2),
            c: pow2(n - 1) * (pow2(n - 1) - int(1)) / &den,
            d: pow2(2 * n - 2) / &den,
            e: (pow2(n - 1) - int(1)) / &den,
            a,
        })
    }

    /// `2^{n-2}`.
    pub fn s(&self) -> Rational {
        pow2(self.n - 2)
    }
}

fn iv(lo: Rational, hi: Rational) -> Option<Interval> {
    Interval::new(lo, hi)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum BaseId {
    WN,
    KN,
}

impl FromStr for BaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "WN" => Ok(BaseId::WN),
            "KN" => Ok(BaseId::KN),
            _ => Err(Error::domain(format!("unknown base set {s:?}, expected WN or KN"))),
        }
    }
}

/// `W_n = [-d,-c) ∪ [-e,-a) ∪ [a,b)` or
/// `K_n = [-1/2,-a) ∪ [-d,-2^{n-2}) ∪ [a,1/2) ∪ [2^{n-2},d)`.
pub fn build_base(id: BaseId, n: i64) -> Result<IntervalSet> {
    let k = Constants::new(n)?;
    let half = Rational::new(1.into(), 2.into());
    let pieces = match id {
        BaseId::WN => vec![
            iv(-&k.d, -&k.c),
            iv(-&k.e, -&k.a),
            iv(k.a.clone(), k.b.clone()),
        ],
        BaseId::KN => vec![
            iv(-&half, -&k.a),
            iv(-&k.d, -k.s()),
            iv(k.a.clone(), half),
            iv(k.s(), k.d.clone()),
        ],
    };
    Ok(IntervalSet::from_pieces(pieces.into_iter().flatten()))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum LazyId {
    WNE,
    KNE,
    PROPBRA,
}

impl FromStr for LazyId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_uppercase().as_str() {
            "WNE" => Ok(LazyId::WNE),
            "KNE" => Ok(LazyId::KNE),
            "PROPBRA" => Ok(LazyId::PROPBRA),
            _ => Err(Error::domain(format!("unknown family {s:?}, expected WNE, KNE or PROPBRA"))),
        }
    }
}

impl fmt::Display for LazyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

/// A geometric recurrence carving pieces out of the base and placing
/// rescaled copies near 0.
///
/// With `X_0 = seed`, level `l` removes `X_l` from the base and adds
/// `Y_l = 2^{-(g + l·growth)} X_l`; then `X_{l+1} = Y_l + shift`. The
/// `X_l` converge to `shift`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Generator {
    pub seed: Interval,
    pub scale_exponent: i64,
    #[serde(default)]
    pub scale_growth: i64,
    #[serde(with = "crate::rational::serde_str")]
    pub shift: Rational,
}

impl Generator {
    /// Upper bound on `|Y_{l+1}| / |Y_l|`.
    pub fn tail_ratio(&self) -> Rational {
        pow2(-(self.scale_exponent + self.scale_growth))
    }
}

/// Families given by closed-form interval sequences instead of a recurrence.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum ClosedForm {
    PROPBRA,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct LazyFamily {
    #[serde(default)]
    pub base: IntervalSet,
    #[serde(default)]
    pub generators: Vec<Generator>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub closed_form: Option<ClosedForm>,
}

/// A finite materialization of a [`LazyFamily`].
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Truncation {
    pub depth: u32,
    /// Every materialized piece, kept separately so overlaps stay visible.
    pub pieces: Vec<Interval>,
    /// Exact measure of the part of the full set that is not materialized.
    #[serde(with = "crate::rational::serde_str")]
    pub tail: Rational,
    /// Where the omitted levels sit, up to integer translation.
    pub translation_footprint: IntervalSet,
    /// Where the omitted levels sit, up to dyadic dilation.
    pub dilation_footprint: IntervalSet,
}

impl Truncation {
    pub fn set(&self) -> IntervalSet {
        IntervalSet::from_pieces(self.pieces.iter().cloned())
    }

    /// Smallest `|x|` over nonzero endpoints of the materialized pieces.
    pub fn min_abs_endpoint(&self) -> Option<Rational> {
        self.set().min_abs_endpoint()
    }
}

fn check_eps(eps: &Rational, bound: &Rational, name: &str) -> Result<()> {
    if !eps.is_positive() || eps >= bound {
        return Err(Error::domain(format!(
            "epsilon must satisfy 0 < epsilon < {name} = {bound}, got {eps}"
        )));
    }
    Ok(())
}

/// `W_{n,ε}` for `0 < ε < a_n / 2`.
pub fn wne(n: i64, eps: &Rational) -> Result<LazyFamily> {
    let k = Constants::new(n)?;
    check_eps(eps, &(&k.a / int(2)), "a_n/2")?;
    let half_a = &k.a / int(2);
    let p1 = (&half_a + eps / pow2(n), &half_a + eps);
    let pieces = [
        iv(-&k.d, -&k.c),
        iv(-&k.e, -&k.a),
        iv(p1.0.clone(), p1.1.clone()),
        iv(&k.a + eps * int(2), k.b.clone()),
        iv(k.d.clone(), &k.d + eps * int(2)),
    ];
    let seed = Interval::new(p1.0 - k.s(), p1.1 - k.s()).expect("P_1 is nonempty");
    Ok(LazyFamily {
        base: IntervalSet::from_pieces(pieces.into_iter().flatten()),
        generators: vec![Generator {
            seed,
            scale_exponent: n,
            scale_growth: 1,
            shift: -k.s(),
        }],
        closed_form: None,
    })
}

/// `K_{n,ε}` for `0 < ε < e_n / 4`.
pub fn kne(n: i64, eps: &Rational) -> Result<LazyFamily> {
    let k = Constants::new(n)?;
    check_eps(eps, &(&k.e / int(4)), "e_n/4")?;
    let half_a = &k.a / int(2);
    let half = Rational::new(1.into(), 2.into());
    let s1 = Interval::new(&half_a + eps / pow2(n), &half_a + eps).expect("S_1 is nonempty");
    let plus: Vec<Interval> = [
        iv(k.s(), k.d.clone()),
        Some(s1.clone()),
        iv(&k.a + eps * int(2), half),
        iv(k.d.clone(), &k.d + eps * int(2)),
    ]
    .into_iter()
    .flatten()
    .collect();
    let plus = IntervalSet::from_pieces(plus);
    let e0 = s1.shift(&k.s());
    let step = |seed: Interval, shift: Rational| Generator {
        seed,
        scale_exponent: n + 1,
        scale_growth: 1,
        shift,
    };
    Ok(LazyFamily {
        base: plus.union(&plus.negate()),
        generators: vec![step(e0.negate(), -k.s()), step(e0, k.s())],
        closed_form: None,
    })
}

/// The symmetric unbounded wavelet set `±(∪ I_n ∪ ∪ J_n)`.
pub fn propbra() -> LazyFamily {
    LazyFamily {
        base: IntervalSet::empty(),
        generators: Vec::new(),
        closed_form: Some(ClosedForm::PROPBRA),
    }
}

/// `I_0 = [4/3, 3/2)`, `I_n = [3·2^{3n+2}/(2^{2n+3}-1), 3·2^{3n+1}/(2^{2n+2}-1))`.
pub fn propbra_i(n: i64) -> Interval {
    if n == 0 {
        return Interval::new(Rational::new(4.into(), 3.into()), Rational::new(3.into(), 2.into())).unwrap();
    }
    Interval::new(
        int(3) * pow2(3 * n + 2) / (pow2(2 * n + 3) - int(1)),
        int(3) * pow2(3 * n + 1) / (pow2(2 * n + 2) - int(1)),
    )
    .unwrap()
}

/// `J_0 = [1/5, 1/3)`, `J_n = [3·2^n/(2^{2n+4}-1), 3·2^{n-1}/(2^{2n+3}-1))`.
pub fn propbra_j(n: i64) -> Interval {
    if n == 0 {
        return Interval::new(Rational::new(1.into(), 5.into()), Rational::new(1.into(), 3.into())).unwrap();
    }
    Interval::new(
        int(3) * pow2(n) / (pow2(2 * n + 4) - int(1)),
        int(3) * pow2(n - 1) / (pow2(2 * n + 3) - int(1)),
    )
    .unwrap()
}

/// `A_n = I_n - l_n` with `l_0 = 1`, `l_n = 3·2^{n-1}`.
pub fn propbra_a(n: i64) -> Interval {
    let l = if n == 0 { int(1) } else { int(3) * pow2(n - 1) };
    propbra_i(n).shift(&-l)
}

/// `L_n = 2^{n+2} J_n`, the dilation partner of `H_n`.
pub fn propbra_l(n: i64) -> Interval {
    propbra_j(n).transform(n + 2, &Rational::zero())
}

fn symmetric(pieces: Vec<Interval>) -> Vec<Interval> {
    let neg: Vec<Interval> = pieces.iter().map(Interval::negate).collect();
    neg.into_iter().chain(pieces).collect()
}

fn both_signs(iv: Interval) -> IntervalSet {
    IntervalSet::from_pieces([iv.negate(), iv])
}

/// Levels `0..=depth` of `family`.
pub fn materialize(family: &LazyFamily, depth: u32) -> Result<Truncation> {
    let d = depth as i64;
    if family.closed_form == Some(ClosedForm::PROPBRA) {
        let mut pieces: Vec<Interval> = (0..=d).map(propbra_i).chain((0..=d).map(propbra_j)).collect();
        pieces.extend(family.base.intervals().iter().cloned());
        let pieces = symmetric(pieces);
        let j = propbra_j(d);
        return Ok(Truncation {
            depth,
            pieces,
            tail: j.lo() * int(2),
            translation_footprint: both_signs(Interval::new(Rational::zero(), j.lo().clone()).unwrap()),
            dilation_footprint: both_signs(
                Interval::new(Rational::new(3.into(), 4.into()), propbra_l(d).lo().clone()).unwrap(),
            ),
        });
    }
    let mut remaining = family.base.clone();
    let mut added = Vec::new();
    let mut tail = Rational::zero();
    let mut footprint = IntervalSet::empty();
    for (gi, g) in family.generators.iter().enumerate() {
        let mut x = g.seed.clone();
        for l in 0..=d {
            let xs = IntervalSet::from(x.clone());
            if !xs.is_subset(&remaining) {
                return Err(Error::domain(format!(
                    "generator {gi}: level {l} piece {x} is not inside the remaining base"
                )));
            }
            remaining = remaining.difference(&xs);
            let y = x.transform(-(g.scale_exponent + l * g.scale_growth), &Rational::zero());
            x = y.shift(&g.shift);
            added.push(y);
        }
        let lo = x.lo().min(&g.shift).clone();
        let hi = x.hi().max(&g.shift).clone();
        let hull = Interval::new(lo, hi).expect("the hull contains the next level");
        let hull_set = IntervalSet::from(hull.clone());
        if !hull_set.is_subset(&remaining) {
            return Err(Error::domain(format!(
                "generator {gi}: omitted levels {hull} are not inside the remaining base"
            )));
        }
        remaining = remaining.difference(&hull_set);
        tail += hull.length() - x.length();
        footprint = footprint.union(&hull_set);
    }
    let mut pieces = remaining.intervals().to_vec();
    pieces.extend(added);
    Ok(Truncation {
        depth,
        pieces,
        tail,
        translation_footprint: footprint.clone(),
        dilation_footprint: footprint,
    })
}

/// `W_{n,ε}`, `K_{n,ε}` (params `[n, ε]`) or the unbounded symmetric set
/// (no params), materialized to `depth`.
pub fn build_lazy(id: LazyId, params: &[Rational], depth: u32) -> Result<(LazyFamily, Truncation)> {
    let family = match id {
        LazyId::WNE | LazyId::KNE => {
            let [n, eps] = params else {
                return Err(Error::domain(format!("{id} takes two parameters: n, epsilon")));
            };
            let n = if n.is_integer() {
                crate::rational::as_i64(n).ok_or_else(|| Error::domain("n out of range"))?
            } else {
                return Err(Error::domain(format!("n must be an integer, got {n}")));
            };
            if id == LazyId::WNE { wne(n, eps)? } else { kne(n, eps)? }
        }
        LazyId::PROPBRA => {
            if !params.is_empty() {
                return Err(Error::domain("PROPBRA takes no parameters"));
            }
            propbra()
        }
    };
    let t = materialize(&family, depth)?;
    Ok((family, t))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Mode {
    Translation,
    Dilation,
}

impl Mode {
    fn condition(self) -> Condition {
        match self {
            Mode::Translation => Condition::T,
            Mode::Dilation => Condition::D,
        }
    }
}

impl FromStr for Mode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "translation" => Ok(Mode::Translation),
            "dilation" => Ok(Mode::Dilation),
            _ => Err(Error::domain(format!("unknown mode {s:?}, expected translation or dilation"))),
        }
    }
}

/// Per-side dyadic profiles; `None` marks a side with a piece ending at 0,
/// whose orbits are all hit infinitely often.
type Sides = [(crate::profile::Domain, Option<MultiplicityProfile>); 2];

fn dyadic_sides(pieces: &[Interval]) -> Sides {
    use crate::profile::Domain;
    let mut split = Vec::new();
    for p in pieces {
        let (n, q) = IntervalSet::from(p.clone()).split_at_zero();
        split.extend(n.intervals().iter().cloned());
        split.extend(q.intervals().iter().cloned());
    }
    let touch_pos = split.iter().any(|iv| iv.lo().is_zero());
    let touch_neg = split.iter().any(|iv| iv.hi().is_zero());
    let finite: Vec<Interval> = split
        .into_iter()
        .filter(|iv| !iv.lo().is_zero() && !iv.hi().is_zero())
        .collect();
    let (pos, neg) = dyadic_profile_of(&finite).expect("pieces are split at 0");
    [
        (Domain::DyadicPos, (!touch_pos).then_some(pos)),
        (Domain::DyadicNeg, (!touch_neg).then_some(neg)),
    ]
}

/// Translation or dilation equivalence of two finite interval unions,
/// decided by comparing multiplicity profiles.
pub fn check_equivalence(a: &IntervalSet, b: &IntervalSet, mode: Mode) -> Verdict {
    let cond = mode.condition();
    match mode {
        Mode::Translation => {
            let (pa, pb) = (mod1_profile(a), mod1_profile(b));
            if pa == pb {
                Verdict::pass(cond)
            } else {
                Verdict::fail(cond, pa.difference_region(&pb), "mod 1 multiplicities differ".into())
            }
        }
        Mode::Dilation => {
            let (sa, sb) = (dyadic_sides(a.intervals()), dyadic_sides(b.intervals()));
            let mut witness = IntervalSet::empty();
            let mut details = Vec::new();
            for ((domain, pa), (_, pb)) in sa.iter().zip(&sb) {
                let diff = match (pa, pb) {
                    (None, None) => IntervalSet::empty(),
                    (Some(p), Some(q)) => p.difference_region(q),
                    _ => domain.interval().into(),
                };
                if !diff.is_empty() {
                    details.push(format!("dyadic multiplicities differ on {diff}"));
                    witness = witness.union(&diff);
                }
            }
            if details.is_empty() {
                Verdict::pass(cond)
            } else {
                let mut v = Verdict::fail(cond, witness, String::new());
                v.details = details;
                v
            }
        }
    }
}

/// Compares a truncation against a finite set: the truncation may fall
/// short of `b` only inside its footprint and, for translations, by
/// exactly its tail.
pub fn check_equivalence_truncated(t: &Truncation, b: &IntervalSet, mode: Mode) -> Result<Verdict> {
    let cond = mode.condition();
    let mut pairs = Vec::new();
    match mode {
        Mode::Translation => pairs.push((
            mod1_profile_of(&t.pieces),
            mod1_profile(b),
            mod1_profile(&t.translation_footprint).support(),
        )),
        Mode::Dilation => {
            let (tp, tn) = dyadic_profile_of(&t.pieces)?;
            let (bp, bn) = dyadic_profile_of(b.intervals())?;
            let (fp, fn_) = dyadic_profile_of(t.dilation_footprint.intervals())?;
            pairs.push((tp, bp, fp.support()));
            pairs.push((tn, bn, fn_.support()));
        }
    }
    let mut failures = Vec::new();
    let mut witness = IntervalSet::empty();
    for (pt, pb, foot) in &pairs {
        let zipped = pt.zip(pb);
        let excess: IntervalSet = zipped
            .iter()
            .filter(|(_, _, x, y)| x > y)
            .filter_map(|(lo, hi, _, _)| Interval::new(lo.clone(), hi.clone()))
            .collect();
        let short = pt.difference_region(pb).difference(&excess);
        if !excess.is_empty() {
            failures.push(format!("truncation exceeds the target on {excess}"));
            witness = witness.union(&excess);
        }
        if !short.is_subset(foot) {
            let outside = short.difference(foot);
            failures.push(format!("shortfall outside the omitted levels on {outside}"));
            witness = witness.union(&outside);
        }
        if mode == Mode::Translation {
            let gap = pb.mass() - pt.mass();
            if excess.is_empty() && gap != t.tail {
                failures.push(format!("shortfall {gap} differs from the certified tail {}", t.tail));
            }
        }
    }
    let mut v = if failures.is_empty() {
        Verdict::pass(cond)
    } else {
        let mut v = Verdict::fail(cond, witness, String::new());
        v.details = failures;
        v
    };
    v.residual = Some(t.tail.clone());
    Ok(v)
}

fn truncated_profile(
    cond: Condition,
    label: &str,
    p: &MultiplicityProfile,
    footprint: &IntervalSet,
) -> Verdict {
    let over = p.region(|c| c > 1);
    if !over.is_empty() {
        return Verdict::fail(cond, over.clone(), format!("{label}: overlap on {over}"));
    }
    let gap = p.region(|c| c == 0);
    if !gap.is_subset(footprint) {
        let outside = gap.difference(footprint);
        return Verdict::fail(cond, outside.clone(), format!("{label}: uncovered {outside} outside the omitted levels"));
    }
    Verdict::pass(cond)
}

/// Runs the tiling conditions of `space` on a truncation.
///
/// Overlaps always fail. Uncovered parts pass only inside the footprint of
/// the omitted levels, and the translation gap must measure exactly the
/// tail.
pub fn verify_truncation(t: &Truncation, space: Space) -> Verdict {
    let (tc, dc) = match space {
        Space::L2 => (Condition::T, Condition::D),
        Space::H2 => (Condition::TPrime, Condition::DPrime),
    };
    let p = mod1_profile_of(&t.pieces);
    let mut tv = truncated_profile(tc, "translates mod 1", &p, &mod1_profile(&t.translation_footprint).support());
    let gap = p.region(|c| c == 0).measure();
    if tv.passed && gap != t.tail {
        tv = Verdict::fail(
            tc,
            p.region(|c| c == 0),
            format!("uncovered measure {gap} differs from the certified tail {}", t.tail),
        );
    }
    let dv = if space == Space::H2 && t.pieces.iter().any(|iv| !iv.lo().is_positive()) {
        let neg = t.set().split_at_zero().0;
        Verdict::fail(dc, neg.clone(), format!("set meets (-inf, 0] in {neg}"))
    } else {
        match (dyadic_profile_of(&t.pieces), dyadic_profile_of(t.dilation_footprint.intervals())) {
            (Ok((pos, neg)), Ok((fpos, fneg))) => {
                let mut parts = vec![truncated_profile(dc, "positive dilates", &pos, &fpos.support())];
                if space == Space::L2 {
                    parts.push(truncated_profile(dc, "negative dilates", &neg, &fneg.support()));
                }
                let v = Verdict::all(parts);
                Verdict {
                    checked_conditions: vec![dc],
                    failed_conditions: if v.passed { vec![] } else { vec![dc] },
                    sub_verdicts: Vec::new(),
                    ..v
                }
            }
            (Err(e), _) | (_, Err(e)) => Verdict::fail(dc, t.set(), e.to_string()),
        }
    };
    let mut v = Verdict::all(vec![tv, dv]);
    v.residual = Some(t.tail.clone());
    v
}

/// Materializes `family` to `depth` and verifies the truncation.
pub fn verify_truncated(family: &LazyFamily, depth: u32, space: Space) -> Result<Verdict> {
    Ok(verify_truncation(&materialize(family, depth)?, space))
}

/// Exact measure of a truncation's pieces plus its tail; `1` for every
/// wavelet set.
pub fn accounted_measure(t: &Truncation) -> Rational {
    t.pieces.iter().map(Interval::length).fold(Rational::zero(), |a, b| a + b) + &t.tail
}

/// `tail(depth + 1) <= tail(depth) / 2`.
pub fn tail_halves(family: &LazyFamily, depth: u32) -> Result<bool> {
    let a = materialize(family, depth)?.tail;
    let b = materialize(family, depth + 1)?.tail;
    Ok(b * int(2) <= a)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::tiling::verify_wavelet;

    fn set(pairs: &[(i64, i64, i64, i64)]) -> IntervalSet {
        IntervalSet::normalize(pairs.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))).unwrap()
    }

    #[test]
    fn base_sets() {
        assert_eq!(
            build_base(BaseId::WN, 3).unwrap(),
            set(&[(-16, 7, -12, 7), (-3, 7, -2, 7), (2, 7, 4, 7)])
        );
        assert_eq!(build_base(BaseId::WN, 2).unwrap(), set(&[(-4, 3, -2, 3), (1, 3, 2, 3)]));
        assert_eq!(
            build_base(BaseId::KN, 2).unwrap(),
            set(&[(-4, 3, -1, 1), (-1, 2, -1, 3), (1, 3, 1, 2), (1, 1, 4, 3)])
        );
        for n in 2..=6 {
            for id in [BaseId::WN, BaseId::KN] {
                assert!(verify_wavelet(&build_base(id, n).unwrap(), Space::L2).passed);
            }
        }
        assert!(build_base(BaseId::WN, 1).is_err());
    }

    #[test]
    fn wne_depth_zero_pieces() {
        let (_, t) = build_lazy(LazyId::WNE, &[int(2), rat(1, 8)], 0).unwrap();
        let s = t.set();
        for p in [
            set(&[(19, 96, 7, 24)]),
            set(&[(7, 12, 2, 3)]),
            set(&[(4, 3, 19, 12)]),
        ] {
            assert!(p.is_subset(&s), "{p} not in {s}");
        }
        assert!(wne(2, &rat(1, 6)).is_err());
        assert!(kne(2, &rat(1, 12)).is_err());
    }

    #[test]
    fn tails_are_exact() {
        for id in [LazyId::WNE, LazyId::KNE] {
            for depth in 0..6 {
                let eps = if id == LazyId::WNE { rat(1, 8) } else { rat(1, 16) };
                let (_, t) = build_lazy(id, &[int(2), eps], depth).unwrap();
                assert_eq!(accounted_measure(&t), int(1), "{id} depth {depth}");
            }
        }
        let (_, t) = build_lazy(LazyId::PROPBRA, &[], 4).unwrap();
        assert_eq!(accounted_measure(&t), int(1));
    }

    #[test]
    fn propbra_chains() {
        for n in 0..20 {
            assert_eq!(propbra_a(n + 1).hi(), propbra_j(n).lo());
            assert_eq!(propbra_j(n).hi(), propbra_a(n).lo());
            let h = propbra_i(n).transform(-(if n == 0 { 0 } else { n + 1 }), &Rational::zero());
            assert_eq!(propbra_l(n).hi(), h.lo());
            if n > 0 {
                assert_eq!(h.hi(), propbra_l(n - 1).lo());
            }
        }
        assert_eq!(propbra_i(1), set(&[(96, 31, 16, 5)]).intervals()[0]);
        assert_eq!(propbra_j(1), set(&[(6, 63, 3, 31)]).intervals()[0]);
    }

    #[test]
    fn truncated_verification() {
        for id in [LazyId::WNE, LazyId::KNE, LazyId::PROPBRA] {
            let params = match id {
                LazyId::WNE => vec![int(2), rat(1, 8)],
                LazyId::KNE => vec![int(2), rat(1, 16)],
                LazyId::PROPBRA => vec![],
            };
            let (fam, _) = build_lazy(id, &params, 1).unwrap();
            let v = verify_truncated(&fam, 10, Space::L2).unwrap();
            assert!(v.passed, "{id}: {:?}", v.details);
            assert!(v.residual.unwrap().is_positive());
        }
    }

    #[test]
    fn doubled_level_is_an_overlap() {
        let (_, mut t) = build_lazy(LazyId::WNE, &[int(2), rat(1, 8)], 10).unwrap();
        let y0 = t.pieces.iter().rev().nth(10).unwrap().clone();
        t.pieces.push(y0);
        let v = verify_truncation(&t, Space::L2);
        assert!(!v.passed);
        assert!(v.details.iter().any(|d| d.contains("overlap")));
    }

    #[test]
    fn equivalence() {
        let a = set(&[(0, 1, 1, 1)]);
        let b = set(&[(5, 1, 6, 1)]);
        assert!(check_equivalence(&a, &b, Mode::Translation).passed);
        assert!(!check_equivalence(&a, &b, Mode::Dilation).passed);
        let (_, t) = build_lazy(LazyId::WNE, &[int(2), rat(1, 8)], 12).unwrap();
        let w2 = build_base(BaseId::WN, 2).unwrap();
        for mode in [Mode::Translation, Mode::Dilation] {
            let v = check_equivalence_truncated(&t, &w2, mode).unwrap();
            assert!(v.passed, "{mode:?}: {:?}", v.details);
            assert_eq!(v.residual.as_ref(), Some(&t.tail));
        }
    }

    #[test]
    fn accumulates() {
        let fam = kne(3, &rat(1, 40)).unwrap();
        let mins: Vec<Rational> = (1..6)
            .map(|d| materialize(&fam, d).unwrap().min_abs_endpoint().unwrap())
            .collect();
        assert!(mins.windows(2).all(|w| w[1] < w[0]));
    }

    #[test]
    fn json_shape() {
        let fam = wne(2, &rat(1, 8)).unwrap();
        let json = serde_json::to_value(&fam).unwrap();
        assert_eq!(json["generators"][0]["shift"], "-1");
        assert_eq!(json["generators"][0]["scale_exponent"], 2);
        let back: LazyFamily = serde_json::from_value(json).unwrap();
        assert_eq!(back, fam);
    }
}
