//! Three-interval wavelet sets of H²(ℝ) and chain certificates.
//!
//! A set `[p1,q1) ∪ [p2,q2) ∪ [p3,q3)` is an H² wavelet set exactly when
//! integer shifts of the pieces line up into `[p1, p1 + 1)` (orders `T1`
//! or `T2`) and dyadic dilates line up into `[p1, 2 p1)` (orders `D1` or
//! `D2`). Each of the four combinations pins the endpoints down as affine
//! functions of `l` given the shift and exponent parameters `(r, k, s)`.

use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::polygonal::{Flavor, Polygonal};
use crate::rational::{as_i64, ceil_int, exact_log2, floor_int, int, pow2, Rational};
use crate::sets::{Interval, IntervalSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum CaseId {
    T1D1,
    T2D2,
    T2D1,
    T1D2,
}

impl CaseId {
    pub const ALL: [CaseId; 4] = [CaseId::T1D1, CaseId::T2D2, CaseId::T2D1, CaseId::T1D2];

    pub fn name(self) -> &'static str {
        match self {
            CaseId::T1D1 => "T1D1",
            CaseId::T2D2 => "T2D2",
            CaseId::T2D1 => "T2D1",
            CaseId::T1D2 => "T1D2",
        }
    }

    /// Smallest admissible `k`.
    pub fn k_min(self) -> i64 {
        match self {
            CaseId::T1D1 | CaseId::T1D2 => 1,
            CaseId::T2D2 | CaseId::T2D1 => 0,
        }
    }

    /// Checks `s > r >= 1` and `l > k >= k_min`.
    pub fn check_domain(self, r: i64, k: i64, s: i64, l: i64) -> Result<()> {
        self.check_rks(r, k, s)?;
        if l <= k {
            return Err(Error::domain(format!("{self} needs l > k, got k = {k}, l = {l}")));
        }
        Ok(())
    }

    fn check_rks(self, r: i64, k: i64, s: i64) -> Result<()> {
        if r < 1 || s <= r {
            return Err(Error::domain(format!("{self} needs s > r >= 1, got r = {r}, s = {s}")));
        }
        if k < self.k_min() {
            return Err(Error::domain(format!("{self} needs k >= {}, got k = {k}", self.k_min())));
        }
        if s > 62 {
            return Err(Error::domain(format!("s = {s} is too large")));
        }
        Ok(())
    }
}

impl fmt::Display for CaseId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CaseId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let up = s.to_ascii_uppercase();
        CaseId::ALL
            .into_iter()
            .find(|c| c.name() == up)
            .ok_or_else(|| Error::domain(format!("unknown case {s:?}, expected t1d1, t2d2, t2d1 or t1d2")))
    }
}

/// `(p1, q1, p2, q2, p3, q3)` as a function of a rational `l`.
fn closed_form(case: CaseId, r: i64, k: &Rational, s: i64, l: &Rational) -> [Rational; 6] {
    let one = int(1);
    let two = int(2);
    let (pr, ps) = (pow2(r), pow2(s));
    let (pr1, ps1) = (pow2(r + 1), pow2(s + 1));
    let psr = pow2(s - r);
    match case {
        CaseId::T1D1 => [
            (l + &one) / (&ps1 - &one),
            k / (&pr - &one),
            &pr * k / (&pr - &one),
            (l - k) / (&psr - &one),
            &psr * (l - k) / (&psr - &one),
            &ps1 * (l + &one) / (&ps1 - &one),
        ],
        CaseId::T2D2 => [
            (k + &one) / (&pr1 - &one),
            l / (&ps - &one),
            (l - k) / (&psr - &one),
            &pr1 * (k + &one) / (&pr1 - &one),
            &ps * l / (&ps - &one),
            &psr * (l - k) / (&psr - &one),
        ],
        CaseId::T2D1 => {
            let a = (&ps - &one) * k - (&pr - &one) * l + &ps;
            let b = (&ps1 - &one) * k - (&pr1 - &one) * l + &ps1;
            let c = (&ps1 - &one) * k - (&pr - &one) * l + &ps1;
            [&a / &ps, &b / &pr, b.clone(), &c / &ps, &c / &pr, a * two]
        }
        CaseId::T1D2 => {
            let a = (&pr - &one) * l - (&ps - &one) * k + &pr;
            let b = (&pr1 - &one) * l - (&ps1 - &one) * k + &pr1;
            let c = (&pr1 - &one) * l - (&ps - &one) * k + &pr1;
            [&a / &pr, &b / &ps, &c / &ps, a * two, b, &c / &pr]
        }
    }
}

/// Exact endpoints of the `(case, r, k, s, l)` candidate. No ordering is
/// guaranteed; see [`is_ordered`].
pub fn endpoints(case: CaseId, r: i64, k: i64, s: i64, l: i64) -> Result<[Rational; 6]> {
    case.check_domain(r, k, s, l)?;
    Ok(closed_form(case, r, &int(k), s, &int(l)))
}

/// `0 < p1 < q1 < p2 < q2 < p3 < q3`.
pub fn is_ordered(e: &[Rational; 6]) -> bool {
    e[0].is_positive() && e.windows(2).all(|w| w[0] < w[1])
}

pub fn endpoint_set(e: &[Rational; 6]) -> IntervalSet {
    e.chunks(2)
        .filter_map(|c| Interval::new(c[0].clone(), c[1].clone()))
        .collect()
}

/// `α + β l > 0` as a constraint on integer `l`.
#[derive(Clone, Debug)]
struct Linear {
    alpha: Rational,
    beta: Rational,
}

impl Linear {
    fn new(alpha: Rational, beta: Rational) -> Self {
        Linear { alpha, beta }
    }

    /// Restricts `[lo, hi]`; `hi = None` means unbounded above.
    fn clamp(&self, lo: &mut i64, hi: &mut Option<i64>) {
        if self.beta.is_zero() {
            if !self.alpha.is_positive() {
                *hi = Some(*lo - 1);
            }
            return;
        }
        let root = -&self.alpha / &self.beta;
        if self.beta.is_positive() {
            let min = as_i64(&Rational::from_integer(floor_int(&root))).expect("window fits i64") + 1;
            *lo = (*lo).max(min);
        } else {
            let max = as_i64(&Rational::from_integer(ceil_int(&root))).expect("window fits i64") - 1;
            *hi = Some(hi.map_or(max, |h| h.min(max)));
        }
    }
}

fn window(constraints: &[Linear], lo: i64) -> Option<(i64, i64)> {
    let mut lo = lo;
    let mut hi = None;
    for c in constraints {
        c.clamp(&mut lo, &mut hi);
    }
    hi.map(|h| (lo, h))
}

/// The six-way ordering as linear constraints in `l`.
fn ordering_constraints(case: CaseId, r: i64, k: i64, s: i64) -> Vec<Linear> {
    let k = int(k);
    let e0 = closed_form(case, r, &k, s, &int(0));
    let e1 = closed_form(case, r, &k, s, &int(1));
    let affine: Vec<(Rational, Rational)> = e0
        .iter()
        .zip(&e1)
        .map(|(a, b)| (a.clone(), b - a))
        .collect();
    let mut out = vec![Linear::new(affine[0].0.clone(), affine[0].1.clone())];
    for w in affine.windows(2) {
        out.push(Linear::new(&w[1].0 - &w[0].0, &w[1].1 - &w[0].1));
    }
    out
}

/// The two inequalities that the closed-form analysis of each case keeps
/// after discarding implied ones.
fn reduced_constraints(case: CaseId, r: i64, k: i64, s: i64) -> Vec<Linear> {
    let one = int(1);
    let (pr, ps) = (pow2(r), pow2(s));
    let (pr1, ps1) = (pow2(r + 1), pow2(s + 1));
    let k = int(k);
    // (2^r - 1) l > (2^s - 1) k
    let above = Linear::new(-(&ps - &one) * &k, &pr - &one);
    // (2^{r+1} - 1) l < (2^{s+1} - 1) k + 2 (2^s - 2^r)
    let below = Linear::new((&ps1 - &one) * &k + int(2) * (&ps - &pr), -(&pr1 - &one));
    match case {
        CaseId::T1D1 => vec![above, below],
        CaseId::T2D2 if k.is_zero() => {
            // (2^{r+1} - 1) l > (2^s - 1)(k + 1)
            let first = Linear::new(-(&ps - &one) * (&k + &one), &pr1 - &one);
            vec![first, below]
        }
        CaseId::T2D2 => vec![below, above],
        CaseId::T2D1 => vec![
            Linear::new(
                (&ps * (&ps1 - &one) - &pr * (&ps - &one)) * &k + (pow2(2 * s + 1) - pow2(r + s)),
                -(&ps * (&pr1 - &one) - &pr * (&pr - &one)),
            ),
            Linear::new(
                -(&ps - &one) * (&ps1 - &one) * &k - (pow2(2 * s + 1) - &ps1),
                &ps * (&pr1 - &one) - (&pr - &one),
            ),
        ],
        CaseId::T1D2 => vec![
            Linear::new(
                &pr1 * (&ps - &one) - (&ps - &one) * (&ps1 - &one) * &k,
                &ps1 * (&pr - &one) - (&pr1 - &one),
            ),
            Linear::new(
                (&pr * (&ps1 - &one) - (&ps - &one)) * &k - &pr1 * (&pr - &one),
                -(&pr - &one) * (&pr1 - &one),
            ),
        ],
    }
}

/// Feasible `l` for one `(case, r, k, s)` cell, together with the values
/// on which the reduced inequality pair disagrees with the full ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Feasibility {
    pub l: Vec<i64>,
    /// Accepted by the reduced pair but violating the full ordering.
    pub reduced_only: Vec<i64>,
    /// Satisfying the full ordering but rejected by the reduced pair.
    pub full_only: Vec<i64>,
}

impl Feasibility {
    pub fn agrees(&self) -> bool {
        self.reduced_only.is_empty() && self.full_only.is_empty()
    }
}

fn range(w: Option<(i64, i64)>) -> std::ops::RangeInclusive<i64> {
    match w {
        Some((lo, hi)) => lo..=hi,
        #[allow(clippy::reversed_empty_ranges)]
        None => 1..=0,
    }
}

/// Exact feasibility analysis of one cell.
///
/// The window comes from the six-way ordering (each endpoint is affine in
/// `l`), and every `l` in it is re-checked on the actual endpoints.
pub fn feasibility(case: CaseId, r: i64, k: i64, s: i64) -> Result<Feasibility> {
    case.check_rks(r, k, s)?;
    let full = window(&ordering_constraints(case, r, k, s), k + 1);
    let reduced = window(&reduced_constraints(case, r, k, s), k + 1);
    if full.is_none() {
        return Err(Error::Unbounded(format!("{case} r={r} k={k} s={s}: no upper bound on l")));
    }
    let mut l = Vec::new();
    for li in range(full) {
        let e = closed_form(case, r, &int(k), s, &int(li));
        assert!(is_ordered(&e), "{case} ({r},{k},{s},{li}) lies in the window but is not ordered");
        l.push(li);
    }
    let in_full = |x: &i64| full.is_some_and(|(a, b)| (a..=b).contains(x));
    let in_reduced = |x: &i64| reduced.is_some_and(|(a, b)| (a..=b).contains(x));
    Ok(Feasibility {
        reduced_only: range(reduced).filter(|x| !in_full(x)).collect(),
        full_only: l.iter().copied().filter(|x| !in_reduced(x)).collect(),
        l,
    })
}

/// All `l` making the cell an H² wavelet set.
pub fn feasible_l(case: CaseId, r: i64, k: i64, s: i64) -> Result<Vec<i64>> {
    Ok(feasibility(case, r, k, s)?.l)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct H2Row {
    pub case: CaseId,
    pub r: i64,
    pub k: i64,
    pub s: i64,
    pub l: i64,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub endpoints: Vec<Rational>,
    #[serde(skip)]
    pub set: IntervalSet,
}

impl H2Row {
    pub const CSV_HEADER: &'static str = "case,r,k,s,l,p1,q1,p2,q2,p3,q3";

    pub fn csv(&self) -> String {
        let mut cols = vec![
            self.case.to_string(),
            self.r.to_string(),
            self.k.to_string(),
            self.s.to_string(),
            self.l.to_string(),
        ];
        cols.extend(self.endpoints.iter().map(ToString::to_string));
        cols.join(",")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Discrepancy {
    pub case: CaseId,
    pub r: i64,
    pub k: i64,
    pub s: i64,
    pub reduced_only: Vec<i64>,
    pub full_only: Vec<i64>,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Enumeration {
    pub rows: Vec<H2Row>,
    pub discrepancies: Vec<Discrepancy>,
}

/// Every feasible row with `1 <= r <= r_max`, `r < s <= s_max` and
/// `k_min <= k < 2(2^r - 1)`; nothing exists outside that `k` range.
pub fn enumerate(case: CaseId, r_max: i64, s_max: i64) -> Result<Enumeration> {
    if r_max < 1 || s_max < 1 {
        return Err(Error::domain("bounds must be positive"));
    }
    if r_max > 40 || s_max > 62 {
        return Err(Error::domain("bounds too large to enumerate"));
    }
    let mut out = Enumeration::default();
    for r in 1..=r_max {
        for k in case.k_min()..2 * ((1i64 << r) - 1) {
            for s in r + 1..=s_max {
                let f = feasibility(case, r, k, s)?;
                if !f.agrees() {
                    out.discrepancies.push(Discrepancy {
                        case,
                        r,
                        k,
                        s,
                        reduced_only: f.reduced_only.clone(),
                        full_only: f.full_only.clone(),
                    });
                }
                for l in f.l {
                    let e = closed_form(case, r, &int(k), s, &int(l));
                    out.rows.push(H2Row {
                        case,
                        r,
                        k,
                        s,
                        l,
                        set: endpoint_set(&e),
                        endpoints: e.to_vec(),
                    });
                }
            }
        }
    }
    Ok(out)
}

/// The two-interval sets `[(k+1)/(2^{r+1}-1), k/(2^r-1)) ∪ [2^r k/(2^r-1), 2^{r+1}(k+1)/(2^{r+1}-1))`
/// for `r >= 1`, `1 <= k < 2(2^r - 1)`.
pub fn two_interval(r: i64, k: i64) -> Result<IntervalSet> {
    if !(1..=40).contains(&r) || k < 1 || k >= 2 * ((1i64 << r) - 1) {
        return Err(Error::domain(format!("two-interval family needs r >= 1 and 1 <= k < 2(2^r-1), got r = {r}, k = {k}")));
    }
    Polygonal::from_pairs(Flavor::H2, &[(0, 0), (r, k as u64)]).build()
}

/// Chain orders proving that a set tiles by translation and by dilation.
///
/// Indices are 1-based positions in the sorted interval list, whose first
/// interval `I_0` starts both chains implicitly.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct H2Certificate {
    pub rho: Vec<usize>,
    pub k_shifts: Vec<u64>,
    pub sigma: Vec<usize>,
    pub r_exponents: Vec<u64>,
}

/// Follows the chain from the right end of `I_0`, each step picking the
/// unique unused interval that `step` can attach to the current end.
fn chain(
    ivs: &[Interval],
    goal: &Rational,
    label: &str,
    step: impl Fn(&Rational, &Interval) -> Option<(u64, Rational)>,
) -> Result<(Vec<usize>, Vec<u64>)> {
    let mut used = vec![false; ivs.len()];
    used[0] = true;
    let mut cur = ivs[0].hi().clone();
    let mut order = Vec::new();
    let mut params = Vec::new();
    for pos in 1..ivs.len() {
        let mut hits = (1..ivs.len())
            .filter(|&i| !used[i])
            .filter_map(|i| step(&cur, &ivs[i]).map(|(p, end)| (i, p, end)));
        let Some((i, p, end)) = hits.next() else {
            return Err(Error::NotAWaveletSet(format!(
                "{label} chain breaks at position {pos}: nothing continues from {cur}"
            )));
        };
        if hits.next().is_some() {
            return Err(Error::NotAWaveletSet(format!(
                "{label} chain is ambiguous at position {pos} from {cur}"
            )));
        }
        used[i] = true;
        order.push(i);
        params.push(p);
        cur = end;
    }
    if &cur != goal {
        return Err(Error::NotAWaveletSet(format!(
            "{label} chain ends at {cur} instead of {goal}"
        )));
    }
    Ok((order, params))
}

/// Translation and dilation chains of a finite H² wavelet set.
pub fn decompose(set: &IntervalSet) -> Result<H2Certificate> {
    let ivs = set.intervals();
    let Some(first) = ivs.first() else {
        return Err(Error::NotAWaveletSet("empty set".into()));
    };
    if !first.lo().is_positive() {
        return Err(Error::NotAWaveletSet(format!("{first} is not inside (0, inf)")));
    }
    let p0 = first.lo();
    let (rho, k_shifts) = chain(ivs, &(p0 + int(1)), "translation", |cur, iv| {
        let k = iv.lo() - cur;
        if !k.is_integer() || k.is_negative() {
            return None;
        }
        let shift = k.to_integer().try_into().ok()?;
        Some((shift, iv.hi() - &k))
    })?;
    let (sigma, r_exponents) = chain(ivs, &(p0 * int(2)), "dilation", |cur, iv| {
        let e = exact_log2(&(iv.lo() / cur)).filter(|e| *e >= 0)?;
        Some((e as u64, iv.hi() * pow2(-e)))
    })?;
    Ok(H2Certificate {
        rho,
        k_shifts,
        sigma,
        r_exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;
    use crate::tiling::verify_h2;

    fn set(pairs: &[(i64, i64, i64, i64)]) -> IntervalSet {
        IntervalSet::normalize(pairs.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))).unwrap()
    }

    fn r(n: i64, d: i64) -> Rational {
        rat(n, d)
    }

    #[test]
    fn closed_forms() {
        assert_eq!(
            endpoints(CaseId::T1D1, 1, 1, 3, 8).unwrap().to_vec(),
            vec![r(3, 5), r(1, 1), r(2, 1), r(7, 3), r(28, 3), r(48, 5)]
        );
        assert_eq!(
            endpoints(CaseId::T2D2, 1, 0, 3, 3).unwrap().to_vec(),
            vec![r(1, 3), r(3, 7), r(1, 1), r(4, 3), r(24, 7), r(4, 1)]
        );
        assert_eq!(
            endpoints(CaseId::T2D1, 1, 0, 3, 5).unwrap().to_vec(),
            vec![r(3, 8), r(1, 2), r(1, 1), r(11, 8), r(11, 2), r(6, 1)]
        );
        assert!(endpoints(CaseId::T1D1, 1, 0, 3, 8).is_err());
    }

    #[test]
    fn first_table_cells() {
        assert!(feasible_l(CaseId::T1D1, 1, 1, 2).unwrap().is_empty());
        assert_eq!(feasible_l(CaseId::T1D1, 1, 1, 4).unwrap(), vec![16, 17, 18, 19]);
        let big = feasible_l(CaseId::T1D1, 10, 1, 25).unwrap();
        assert_eq!((big[0], *big.last().unwrap(), big.len()), (32801, 65567, 65567 - 32801 + 1));
        for s in 2..=8 {
            assert_eq!(feasible_l(CaseId::T1D2, 1, 1, s).unwrap(), vec![(1 << s) - 2]);
        }
    }

    #[test]
    fn reduced_pairs_match_where_expected() {
        for case in [CaseId::T1D1, CaseId::T2D2, CaseId::T1D2] {
            let e = enumerate(case, 3, 8).unwrap();
            assert!(e.discrepancies.is_empty(), "{case}: {:?}", e.discrepancies);
        }
        let f = feasibility(CaseId::T2D1, 2, 5, 4).unwrap();
        assert!(f.reduced_only.contains(&26) && f.full_only.is_empty());
    }

    #[test]
    fn enumerate_rows_verify() {
        let e = enumerate(CaseId::T2D1, 1, 7).unwrap();
        let k0: Vec<(i64, i64)> = e.rows.iter().filter(|r| r.k == 0).map(|r| (r.s, r.l)).collect();
        assert_eq!(k0, vec![(3, 5), (5, 21), (7, 85)]);
        for case in CaseId::ALL {
            for row in enumerate(case, 2, 6).unwrap().rows {
                assert!(verify_h2(&row.set).passed, "{}", row.csv());
                assert_eq!(row.set.measure(), int(1));
            }
        }
    }

    #[test]
    fn csv_row() {
        let e = enumerate(CaseId::T1D1, 1, 3).unwrap();
        assert_eq!(e.rows.len(), 1);
        assert_eq!(e.rows[0].csv(), "T1D1,1,1,3,8,3/5,1,2,7/3,28/3,48/5");
    }

    #[test]
    fn two_interval_family() {
        assert_eq!(two_interval(1, 1).unwrap(), set(&[(2, 3, 1, 1), (2, 1, 8, 3)]));
        assert!(two_interval(1, 2).is_err());
    }

    #[test]
    fn certificates() {
        let c = decompose(&set(&[(3, 5, 1, 1), (2, 1, 7, 3), (28, 3, 48, 5)])).unwrap();
        assert_eq!((c.rho, c.k_shifts), (vec![1, 2], vec![1, 8]));
        assert_eq!((c.sigma, c.r_exponents), (vec![1, 2], vec![1, 3]));
        let c = decompose(&set(&[(1, 1, 2, 1)])).unwrap();
        assert!(c.rho.is_empty() && c.sigma.is_empty());
        let kxy = set(&[(3, 5, 7, 10), (1, 1, 6, 5), (7, 5, 8, 5), (17, 10, 2, 1), (16, 5, 17, 5)]);
        let c = decompose(&kxy).unwrap();
        assert_eq!((c.rho, c.k_shifts), (vec![3, 1, 4, 2], vec![1, 0, 2, 0]));
        assert_eq!((c.sigma, c.r_exponents), (vec![2, 4, 3, 1], vec![1, 2, 1, 0]));
    }

    #[test]
    fn broken_chain() {
        assert!(matches!(
            decompose(&set(&[(1, 2, 1, 1), (2, 1, 5, 2)])),
            Err(Error::NotAWaveletSet(_))
        ));
    }
}
