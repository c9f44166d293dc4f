//! Polygonals in the dyadic lattice.
//!
//! A vertex `P[λ, m]` is the plane point `(2^{-λ}, 2^{-λ} m)`. The negated
//! slopes of the edges of a polygonal are the interior endpoints of a
//! partition of a unit-length window, and shifting each piece of the
//! partition by the `m` of its vertex gives a wavelet set.

use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rational::{int, pow2, rat, uint, Rational};
use crate::sets::{Interval, IntervalSet};
use crate::tiling::{Condition, Verdict};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct LatticeVertex {
    pub lambda: i64,
    pub m: u64,
}

impl LatticeVertex {
    pub fn new(lambda: i64, m: u64) -> Self {
        LatticeVertex { lambda, m }
    }

    /// `(2^{-λ}, 2^{-λ} m)`.
    pub fn point(&self) -> (Rational, Rational) {
        let x = pow2(-self.lambda);
        let y = &x * uint(self.m);
        (x, y)
    }
}

impl fmt::Display for LatticeVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P[{},{}]", self.lambda, self.m)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Flavor {
    /// Symmetric wavelet sets of L²(ℝ), slopes in `[0, 1/2]`.
    L2,
    /// Wavelet sets of H²(ℝ), slopes in `[a_0, a_0 + 1]`.
    H2,
    /// The all-reflected class, slopes in `[1/2, 1]`.
    #[serde(rename = "MINUS")]
    Minus,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Polygonal {
    pub flavor: Flavor,
    pub vertices: Vec<LatticeVertex>,
}

/// Negated slope of the segment `P_j P_{j+1}`.
fn edge(p: &LatticeVertex, q: &LatticeVertex) -> Option<Rational> {
    let (px, py) = p.point();
    let (qx, qy) = q.point();
    if px == qx {
        return None;
    }
    Some(-(py - qy) / (px - qx))
}

impl Polygonal {
    pub fn new(flavor: Flavor, vertices: Vec<LatticeVertex>) -> Self {
        Polygonal { flavor, vertices }
    }

    pub fn from_pairs(flavor: Flavor, pairs: &[(i64, u64)]) -> Self {
        Self::new(
            flavor,
            pairs.iter().map(|&(l, m)| LatticeVertex::new(l, m)).collect(),
        )
    }

    pub fn n(&self) -> usize {
        self.vertices.len()
    }

    /// The partition points `a_0, …, a_n` (`b_0, …, b_n` for [`Flavor::Minus`]).
    pub fn slopes(&self) -> Result<Vec<Rational>> {
        let v = &self.vertices;
        if v.is_empty() {
            return Err(Error::InvalidPolygonal("no vertices".into()));
        }
        let interior = v
            .windows(2)
            .enumerate()
            .map(|(j, w)| edge(&w[0], &w[1]).ok_or(Error::DegenerateSlope(j + 1, j + 2)))
            .collect::<Result<Vec<_>>>()?;
        let (first, last) = match self.flavor {
            Flavor::L2 => (Rational::zero(), rat(1, 2)),
            Flavor::Minus => (rat(1, 2), Rational::one()),
            Flavor::H2 => {
                let last = v[v.len() - 1];
                let tilde = LatticeVertex::new(last.lambda + 1, last.m + 1);
                let a0 = edge(&v[0], &tilde).ok_or(Error::DegenerateSlope(1, v.len()))?;
                let an = &a0 + Rational::one();
                (a0, an)
            }
        };
        let mut out = Vec::with_capacity(v.len() + 1);
        out.push(first);
        out.extend(interior);
        out.push(last);
        Ok(out)
    }

    /// Checks the anchoring, closing and slope-ordering conditions.
    pub fn validate(&self) -> Verdict {
        match self.violation() {
            None => Verdict::pass(Condition::Polygonal),
            Some(msg) => Verdict::fail(Condition::Polygonal, IntervalSet::empty(), msg),
        }
    }

    fn violation(&self) -> Option<String> {
        let v = &self.vertices;
        let Some(first) = v.first() else {
            return Some("no vertices".into());
        };
        let last = v[v.len() - 1];
        if first.lambda != 0 {
            return Some(format!("anchor: lambda_1 = {} but must be 0", first.lambda));
        }
        match self.flavor {
            Flavor::L2 => {
                // 4 m_1 = 2^{-λ_n} (2 m_n + 1)
                let lhs = int(4) * uint(first.m);
                let rhs = pow2(-last.lambda) * (int(2) * uint(last.m) + int(1));
                if lhs != rhs {
                    return Some(format!("closure: 4*m_1 = {lhs} but 2^(-lambda_n)*(2*m_n+1) = {rhs}"));
                }
            }
            Flavor::Minus => {
                // 2^{λ_n} (2 m_1 + 1) = m_n + 1
                let lhs = pow2(last.lambda) * (int(2) * uint(first.m) + int(1));
                let rhs = uint(last.m) + int(1);
                if lhs != rhs {
                    return Some(format!("closure: 2^lambda_n*(2*m_1+1) = {lhs} but m_n+1 = {rhs}"));
                }
            }
            Flavor::H2 => {
                if first.m != 0 {
                    return Some(format!("anchor: m_1 = {} but must be 0", first.m));
                }
                if let Some(j) = v.windows(2).position(|w| w[0].m == w[1].m) {
                    return Some(format!("distinct levels: m_{} = m_{}", j + 1, j + 2));
                }
            }
        }
        let a = match self.slopes() {
            Ok(a) => a,
            Err(e) => return Some(e.to_string()),
        };
        if self.flavor == Flavor::H2 {
            let a0 = &a[0];
            if !(a0 > &Rational::zero() && a0 < &Rational::one()) {
                return Some(format!("window: a_0 = {a0} not in (0, 1)"));
            }
        }
        if let Some(j) = a.windows(2).position(|w| w[0] >= w[1]) {
            return Some(format!(
                "slope order: a_{} = {} is not below a_{} = {}",
                j,
                a[j],
                j + 1,
                a[j + 1]
            ));
        }
        None
    }

    /// The wavelet set of a valid polygonal: `±∪[a_{j-1}, a_j) + m_j` for the
    /// symmetric flavors, `∪[a_{j-1}, a_j) + m_j` for H².
    pub fn build(&self) -> Result<IntervalSet> {
        if let Some(msg) = self.violation() {
            return Err(Error::InvalidPolygonal(msg));
        }
        let a = self.slopes()?;
        let pieces = self.vertices.iter().enumerate().map(|(j, v)| {
            let m = uint(v.m);
            Interval::new(&a[j] + &m, &a[j + 1] + &m).expect("validated slopes increase")
        });
        let plus: IntervalSet = pieces.collect();
        Ok(match self.flavor {
            Flavor::H2 => plus,
            Flavor::L2 | Flavor::Minus => plus.union(&plus.negate()),
        })
    }
}

impl fmt::Display for Polygonal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}(", self.flavor)?;
        for (i, v) in self.vertices.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str(")")
    }
}

/// Bounded exhaustive search for valid [`Flavor::Minus`] polygonals with
/// `n` vertices, `|λ_j| <= lambda_bound` and `m_j <= m_bound`.
///
/// The closing condition fixes `m_n` from `m_1` and `λ_n`, so only the
/// other coordinates are enumerated. This is evidence, not a proof: the
/// result only speaks for the searched box.
pub fn search_msf_minus(n: usize, lambda_bound: i64, m_bound: u64) -> Vec<Polygonal> {
    let mut found = Vec::new();
    if n == 0 {
        return found;
    }
    if n == 1 {
        // λ_1 = λ_n = 0 forces 2 m_1 + 1 = m_1 + 1.
        for m in 0..=m_bound {
            let p = Polygonal::from_pairs(Flavor::Minus, &[(0, m)]);
            if p.violation().is_none() {
                found.push(p);
            }
        }
        return found;
    }
    let lambdas: Vec<i64> = (-lambda_bound..=lambda_bound).collect();
    let mut stack = Vec::with_capacity(n);
    for m1 in 0..=m_bound {
        stack.clear();
        stack.push(LatticeVertex::new(0, m1));
        extend(n, &lambdas, m_bound, &mut stack, &mut found);
    }
    found
}

fn extend(
    n: usize,
    lambdas: &[i64],
    m_bound: u64,
    stack: &mut Vec<LatticeVertex>,
    found: &mut Vec<Polygonal>,
) {
    let prev = stack[stack.len() - 1];
    if stack.len() == n - 1 {
        let m1 = stack[0].m;
        for &ln in lambdas.iter().filter(|&&l| l >= 0 && l != prev.lambda) {
            // m_n = 2^{λ_n}(2 m_1 + 1) - 1
            if ln >= 64 {
                continue;
            }
            let mn = (u128::from(2 * m1 + 1) << ln) - 1;
            if mn > u128::from(m_bound) {
                continue;
            }
            let mn = mn as u64;
            stack.push(LatticeVertex::new(ln, mn));
            let p = Polygonal::new(Flavor::Minus, stack.clone());
            if p.violation().is_none() {
                found.push(p);
            }
            stack.pop();
        }
        return;
    }
    for &l in lambdas.iter().filter(|&&l| l != prev.lambda) {
        for m in 0..=m_bound {
            stack.push(LatticeVertex::new(l, m));
            extend(n, lambdas, m_bound, stack, found);
            stack.pop();
        }
    }
}
