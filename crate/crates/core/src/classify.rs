//! Symmetric wavelet sets of L²(ℝ) in terms of their classification data.
//!
//! A symmetric set `K` with `K ∩ (0, ∞) = I_1 ∪ … ∪ I_n` is a wavelet set
//! exactly when each `I_j` is a signed, shifted copy `ε_j [a_{j-1}, a_j] + m_j`
//! of a piece of a partition of `[0, 1/2]`, and suitable dyadic dilates of
//! the `I_j` line up into a chain `[α, 2α]` ending at `I_n`.

use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{ceil_int, floor_int, floor_log2, int, rat, uint, Rational};
use crate::sets::{Interval, IntervalSet};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassificationData {
    pub n: usize,
    pub epsilon: Vec<i8>,
    /// `tau[j - 1]` is the chain position of the dilate of `I_j`.
    pub tau: Vec<usize>,
    #[serde(with = "crate::rational::serde_str_vec")]
    pub a: Vec<Rational>,
    pub m: Vec<u64>,
    pub lambda: Vec<i64>,
}

fn reject(item: char, reason: impl Into<String>) -> Error {
    Error::InvalidData {
        item,
        reason: reason.into(),
    }
}

impl ClassificationData {
    /// `I_j = ε_j [a_{j-1}, a_j] + m_j`, 1-based `j`.
    pub fn piece(&self, j: usize) -> Interval {
        let (lo, hi) = (&self.a[j - 1], &self.a[j]);
        let m = uint(self.m[j - 1]);
        let (lo, hi) = if self.epsilon[j - 1] > 0 {
            (lo + &m, hi + &m)
        } else {
            (&m - hi, &m - lo)
        };
        Interval::new(lo, hi).expect("a is strictly increasing")
    }

    fn check_shape(&self) -> Result<()> {
        let n = self.n;
        if n == 0 {
            return Err(reject('a', "n must be positive"));
        }
        if self.epsilon.len() != n || self.m.len() != n || self.lambda.len() != n {
            return Err(reject('a', "epsilon, m and lambda must have n entries"));
        }
        if self.a.len() != n + 1 {
            return Err(reject('a', "a must have n + 1 entries"));
        }
        if let Some(e) = self.epsilon.iter().find(|e| e.abs() != 1) {
            return Err(reject('a', format!("epsilon entry {e} is not a sign")));
        }
        if !self.a[0].is_zero() || self.a[n] != rat(1, 2) {
            return Err(reject('a', "a must run from 0 to 1/2"));
        }
        if let Some(j) = self.a.windows(2).position(|w| w[0] >= w[1]) {
            return Err(reject('a', format!("a_{j} >= a_{}", j + 1)));
        }
        for j in 1..=n {
            if !self.piece(j).lo().is_positive() {
                return Err(reject('a', format!("I_{j} is not contained in (0, inf)")));
            }
        }
        let mut seen = vec![false; n.saturating_sub(1)];
        if self.tau.len() != n - 1 {
            return Err(reject('b', "tau must have n - 1 entries"));
        }
        for &t in &self.tau {
            if t == 0 || t >= n || std::mem::replace(&mut seen[t - 1], true) {
                return Err(reject('b', format!("tau is not a permutation of 1..{}", n - 1)));
            }
        }
        if self.lambda[n - 1] != 0 {
            return Err(reject('b', "lambda_n must be 0 since H_n = I_n"));
        }
        Ok(())
    }

    fn check_chain(&self) -> Result<()> {
        let n = self.n;
        let mut h: Vec<Option<Interval>> = vec![None; n];
        for j in 1..n {
            h[self.tau[j - 1] - 1] = Some(self.piece(j).transform(-self.lambda[j - 1], &Rational::zero()));
        }
        h[n - 1] = Some(self.piece(n));
        let h: Vec<Interval> = h.into_iter().map(|x| x.expect("tau is a permutation")).collect();
        if h[0].lo() * int(2) != *h[n - 1].hi() {
            return Err(reject('b', "2 alpha_1 != beta_n"));
        }
        if let Some(k) = h.windows(2).position(|w| w[0].hi() != w[1].lo()) {
            return Err(reject('b', format!("beta_{} != alpha_{}", k + 1, k + 2)));
        }
        Ok(())
    }

    fn check_unique(&self) -> Result<()> {
        for j in 1..self.n {
            if self.epsilon[j - 1] == self.epsilon[j] && self.m[j - 1] == self.m[j] {
                return Err(reject('c', format!("epsilon_{j} = epsilon_{} and m_{j} = m_{}", j + 1, j + 1)));
            }
        }
        Ok(())
    }

    /// Checks every condition on the data, reporting the first failing item.
    pub fn validate(&self) -> Result<()> {
        self.check_shape()?;
        self.check_unique()?;
        self.check_chain()
    }
}

/// `K = K⁺ ∪ (-K⁺)` with `K⁺ = I_1 ∪ … ∪ I_n`.
pub fn build_from_data(d: &ClassificationData) -> Result<IntervalSet> {
    d.validate()?;
    let plus: IntervalSet = (1..=d.n).map(|j| d.piece(j)).collect();
    Ok(plus.union(&plus.negate()))
}

/// Recovers the canonical classification data of a symmetric wavelet set.
///
/// Pieces are indexed by the position of their image in `[0, 1/2]`, and the
/// dilation chain is the one ending at `I_n`. Fails when `S` is not
/// symmetric or is not a wavelet set.
pub fn classify(set: &IntervalSet) -> Result<ClassificationData> {
    if !set.is_symmetric() {
        return Err(Error::NotClassifiable("set is not symmetric".into()));
    }
    let plus = set.positive_part();
    if plus.is_empty() {
        return Err(Error::NotClassifiable("empty positive part".into()));
    }
    let half = rat(1, 2);
    let mut pieces = Vec::with_capacity(plus.len());
    for iv in plus.intervals() {
        let (lo, hi) = (iv.lo(), iv.hi());
        let m_up = Rational::from_integer(floor_int(lo));
        let m_down = Rational::from_integer(ceil_int(hi));
        let (eps, m, image) = if hi - &m_up <= half {
            (1i8, m_up.clone(), (lo - &m_up, hi - &m_up))
        } else if &m_down - lo <= half {
            (-1i8, m_down.clone(), (&m_down - hi, &m_down - lo))
        } else {
            return Err(Error::NotClassifiable(format!(
                "{iv} is not a shifted copy of a subinterval of [0, 1/2] or its reflection"
            )));
        };
        let m = m.to_integer().to_u64().expect("positive part has nonnegative shifts");
        pieces.push((eps, m, image, iv.clone()));
    }
    pieces.sort_by(|x, y| x.2 .0.cmp(&y.2 .0));
    let mut a = vec![Rational::zero()];
    for (_, _, (lo, hi), iv) in &pieces {
        if lo != a.last().expect("nonempty") {
            return Err(Error::NotClassifiable(format!(
                "images in [0, 1/2] do not partition it: gap or overlap at {} near {iv}",
                a.last().expect("nonempty")
            )));
        }
        a.push(hi.clone());
    }
    if a.last() != Some(&half) {
        return Err(Error::NotClassifiable("images do not reach 1/2".into()));
    }
    let n = pieces.len();
    let top = pieces[n - 1].3.hi().clone();
    let bottom = &top / int(2);
    let mut chain: Vec<(Rational, usize)> = Vec::with_capacity(n);
    let mut lambda = vec![0i64; n];
    for (j, (_, _, _, iv)) in pieces.iter().enumerate() {
        let l = if j + 1 == n {
            0
        } else {
            floor_log2(&(iv.lo() * int(2) / &top))
        };
        let h = iv.transform(-l, &Rational::zero());
        if h.lo() < &bottom || h.hi() > &top {
            return Err(Error::NotClassifiable(format!(
                "no dyadic dilate of {iv} fits in [{bottom}, {top})"
            )));
        }
        lambda[j] = l;
        chain.push((h.lo().clone(), j));
    }
    chain.sort();
    let mut tau = vec![0usize; n - 1];
    for (pos, &(_, j)) in chain.iter().enumerate() {
        if j + 1 < n {
            tau[j] = pos + 1;
        } else if pos + 1 != n {
            return Err(Error::NotClassifiable("I_n is not the top of its dilation chain".into()));
        }
    }
    let data = ClassificationData {
        n,
        epsilon: pieces.iter().map(|p| p.0).collect(),
        tau,
        a,
        m: pieces.iter().map(|p| p.1).collect(),
        lambda,
    };
    data.validate()
        .map_err(|e| Error::NotClassifiable(format!("dilation chain fails: {e}")))?;
    debug_assert_eq!(build_from_data(&data).as_ref(), Ok(set));
    Ok(data)
}

/// The Shannon set `±[1/2, 1)`.
pub fn shannon() -> IntervalSet {
    let plus = IntervalSet::single(rat(1, 2), Rational::one());
    plus.union(&plus.negate())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sym(pairs: &[(i64, i64, i64, i64)]) -> IntervalSet {
        let s = IntervalSet::normalize(pairs.iter().map(|&(a, b, c, d)| (rat(a, b), rat(c, d)))).unwrap();
        s.union(&s.negate())
    }

    fn data(eps: &[i8], tau: &[usize], a: &[Rational], m: &[u64], lambda: &[i64]) -> ClassificationData {
        ClassificationData {
            n: eps.len(),
            epsilon: eps.to_vec(),
            tau: tau.to_vec(),
            a: a.to_vec(),
            m: m.to_vec(),
            lambda: lambda.to_vec(),
        }
    }

    #[test]
    fn shannon_from_data() {
        let d = data(&[-1], &[], &[int(0), rat(1, 2)], &[1], &[0]);
        assert_eq!(build_from_data(&d).unwrap(), shannon());
        assert_eq!(classify(&shannon()).unwrap(), d);
    }

    #[test]
    fn k_three_eighths() {
        let d = data(
            &[1, -1, 1],
            &[1, 2],
            &[int(0), rat(1, 4), rat(3, 8), rat(1, 2)],
            &[1, 1, 0],
            &[2, 1, 0],
        );
        let k = sym(&[(3, 8, 1, 2), (5, 8, 3, 4), (1, 1, 5, 4)]);
        assert_eq!(build_from_data(&d).unwrap(), k);
        assert_eq!(classify(&k).unwrap(), d);
    }

    #[test]
    fn k_two_fifths() {
        let k = sym(&[(2, 5, 1, 2), (3, 5, 4, 5), (1, 1, 6, 5)]);
        let d = classify(&k).unwrap();
        assert_eq!(d.n, 3);
        assert_eq!(d.epsilon, vec![1, -1, 1]);
        assert_eq!(d.a, vec![int(0), rat(1, 5), rat(2, 5), rat(1, 2)]);
    }

    #[test]
    fn prop_six_one_l_equals_one() {
        let k = sym(&[(2, 1, 16, 7), (2, 7, 1, 2)]);
        let d = classify(&k).unwrap();
        assert_eq!((d.n, d.epsilon.clone()), (2, vec![1, 1]));
        assert_eq!(build_from_data(&d).unwrap(), k);
    }

    #[test]
    fn redundant_shannon_data_is_rejected_by_uniqueness() {
        let d = data(&[-1, -1], &[1], &[int(0), rat(1, 4), rat(1, 2)], &[1, 1], &[0, 0]);
        assert!(matches!(d.validate(), Err(Error::InvalidData { item: 'c', .. })));
    }

    #[test]
    fn broken_chain_names_item_b() {
        let d = data(
            &[1, -1, 1],
            &[1, 2],
            &[int(0), rat(1, 4), rat(3, 8), rat(1, 2)],
            &[1, 1, 0],
            &[1, 1, 0],
        );
        assert!(matches!(d.validate(), Err(Error::InvalidData { item: 'b', .. })));
    }

    #[test]
    fn not_classifiable() {
        assert!(matches!(
            classify(&sym(&[(1, 4, 3, 4)])),
            Err(Error::NotClassifiable(_))
        ));
        let half_line = IntervalSet::single(rat(1, 2), int(1));
        assert!(classify(&half_line).is_err());
    }

    #[test]
    fn json_shape() {
        let d = classify(&sym(&[(3, 8, 1, 2), (5, 8, 3, 4), (1, 1, 5, 4)])).unwrap();
        let j = serde_json::to_string(&d).unwrap();
        assert_eq!(
            j,
            r#"{"n":3,"epsilon":[1,-1,1],"tau":[1,2],"a":["0","1/4","3/8","1/2"],"m":[1,1,0],"lambda":[2,1,0]}"#
        );
        assert_eq!(serde_json::from_str::<ClassificationData>(&j).unwrap(), d);
    }
}
