#![allow(dead_code)]

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError};

use wavesets::accumulate::{check_equivalence, Mode};
use wavesets::classify::{build_from_data, classify};
use wavesets::families::{build_family, k_c, k_xy, ksuv_window, FamilyId};
use wavesets::h2_enum::{decompose, enumerate, two_interval, CaseId};
use wavesets::rational::{int, pow2, rat};
use wavesets::tiling::{verify_h2, verify_wavelet, Space};
use wavesets::{Interval, IntervalSet, Rational};

pub fn cfg() -> Config {
    Config {
        cases: 1000,
        failure_persistence: None,
        ..Config::default()
    }
}

pub fn rational() -> impl Strategy<Value = Rational> {
    (-96i64..96, 1i64..17).prop_map(|(n, d)| rat(n, d))
}

pub fn raw_pairs() -> impl Strategy<Value = Vec<(Rational, Rational)>> {
    prop::collection::vec((rational(), (0i64..40, 1i64..17)), 0..6).prop_map(|v| {
        v.into_iter()
            .map(|(lo, (n, d))| (lo.clone(), lo + rat(n, d)))
            .collect()
    })
}

pub fn any_set() -> impl Strategy<Value = IntervalSet> {
    raw_pairs().prop_map(|p| IntervalSet::normalize(p).unwrap())
}

pub fn positive_set() -> impl Strategy<Value = IntervalSet> {
    prop::collection::vec(((1i64..120, 1i64..13), (1i64..30, 1i64..13)), 1..6).prop_map(|v| {
        IntervalSet::normalize(v.into_iter().map(|((a, b), (c, d))| {
            let lo = rat(a, b);
            (lo.clone(), lo + rat(c, d))
        }))
        .unwrap()
    })
}

/// `lo + (hi - lo) * i / q` for `0 < i < q`.
pub fn inside(lo: Rational, hi: Rational) -> impl Strategy<Value = Rational> {
    (2i64..300)
        .prop_flat_map(|q| (Just(q), 1..q))
        .prop_map(move |(q, i)| &lo + (&hi - &lo) * rat(i, q))
}

pub fn symmetric_family() -> impl Strategy<Value = IntervalSet> {
    prop_oneof![
        (0i64..7).prop_map(|l| build_family(&FamilyId::n2(l)).unwrap()),
        inside(rat(1, 3), rat(1, 2)).prop_map(|a| build_family(&FamilyId::ka(a)).unwrap()),
        (0i64..3, 1i64..4, 0i64..4).prop_map(|(s, t, dv)| {
            let mut v = 0;
            while (1i64 << v) <= (2 * t + 1) << (s + 2) {
                v += 1;
            }
            build_family(&FamilyId::kstv(s, t, v + dv)).unwrap()
        }),
        (0i64..3, 3i64..8)
            .prop_filter_map("empty window", |(s, u)| {
                let (lo, hi) = ksuv_window(s, u);
                let lo: i64 = lo.to_integer().try_into().ok()?;
                let hi: i64 = hi.ceil().to_integer().try_into().ok()?;
                (lo + 1 < hi).then_some((s, u, lo, hi))
            })
            .prop_flat_map(|(s, u, lo, hi)| (Just(s), Just(u), lo + 1..hi))
        .prop_map(|(s, u, v)| build_family(&FamilyId::ksuv(s, u, v)).unwrap()),
    ]
}

pub fn h2_rows() -> Vec<IntervalSet> {
    CaseId::ALL
        .into_iter()
        .flat_map(|c| enumerate(c, 2, 7).unwrap().rows)
        .map(|r| r.set)
        .collect()
}

pub fn h2_family() -> impl Strategy<Value = IntervalSet> {
    let rows = h2_rows();
    prop_oneof![
        prop::sample::select(rows),
        (1i64..6).prop_flat_map(|r| (Just(r), 1..2 * ((1i64 << r) - 1)))
            .prop_map(|(r, k)| two_interval(r, k).unwrap()),
        inside(rat(1, 2), int(1)).prop_map(|c| k_c(&c).unwrap()),
        inside(rat(1, 2), int(1))
            .prop_flat_map(|x| {
                let top = (&x + int(1)) / int(2);
                (Just(x.clone()), inside(x, top))
            })
            .prop_map(|(x, y)| k_xy(&x, &y).unwrap()),
    ]
}

/// Moves one endpoint of one interval by a small amount.
pub fn perturb(set: IntervalSet, which: usize, delta: Rational) -> IntervalSet {
    let mut pairs: Vec<(Rational, Rational)> = set
        .intervals()
        .iter()
        .map(|iv| (iv.lo().clone(), iv.hi().clone()))
        .collect();
    let idx = which % (2 * pairs.len());
    let p = &mut pairs[idx / 2];
    if idx.is_multiple_of(2) {
        p.0 += delta;
    } else {
        p.1 += delta;
    }
    let pairs = pairs.into_iter().filter(|(lo, hi)| lo < hi);
    IntervalSet::normalize(pairs).unwrap()
}

pub fn measure_input() -> impl Strategy<Value = (IntervalSet, Space)> {
    prop_oneof![
        symmetric_family().prop_map(|s| (s, Space::L2)),
        h2_family().prop_map(|s| (s, Space::H2)),
        any_set().prop_map(|s| (s, Space::L2)),
        positive_set().prop_map(|s| (s, Space::H2)),
    ]
}

pub fn check_measure((set, space): (IntervalSet, Space)) -> Result<(), TestCaseError> {
    if verify_wavelet(&set, space).passed {
        prop_assert_eq!(set.measure(), int(1));
    }
    Ok(())
}

pub fn check_classify(set: IntervalSet) -> Result<(), TestCaseError> {
    prop_assert!(verify_wavelet(&set, Space::L2).passed);
    let data = classify(&set).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let rebuilt = build_from_data(&data).map_err(|e| TestCaseError::fail(e.to_string()))?;
    prop_assert_eq!(&rebuilt, &set);
    prop_assert_eq!(classify(&rebuilt).map_err(|e| TestCaseError::fail(e.to_string()))?, data);
    Ok(())
}

pub fn decompose_input() -> impl Strategy<Value = IntervalSet> {
    prop_oneof![
        h2_family(),
        (h2_family(), 0usize..20, prop_oneof![Just(rat(1, 97)), Just(rat(-1, 97)), Just(rat(1, 4096))])
            .prop_map(|(s, w, d)| perturb(s, w, d)),
        positive_set(),
    ]
}

pub fn check_decompose(set: IntervalSet) -> Result<(), TestCaseError> {
    let v = verify_h2(&set);
    let d = decompose(&set);
    prop_assert_eq!(d.is_ok(), v.passed, "{}: {:?} / {:?}", set, d, v.details);
    Ok(())
}

pub type EquivInput = (IntervalSet, Vec<i64>, Vec<i64>, IntervalSet);

pub fn equivalence_input() -> impl Strategy<Value = EquivInput> {
    (
        any_set(),
        prop::collection::vec(-3i64..4, 6),
        prop::collection::vec(-2i64..3, 6),
        any_set(),
    )
}

pub fn check_equivalence_relation((a, shifts, exps, c): EquivInput) -> Result<(), TestCaseError> {
    let moved = |f: &dyn Fn(usize, &Interval) -> Interval| {
        IntervalSet::from_pieces(a.intervals().iter().enumerate().map(|(i, iv)| f(i, iv)))
    };
    let b_t = moved(&|i, iv| iv.shift(&int(shifts[i % 6])));
    let b_d = moved(&|i, iv| iv.transform(exps[i % 6], &int(0)));
    for (mode, b) in [(Mode::Translation, &b_t), (Mode::Dilation, &b_d)] {
        let eq = |x: &IntervalSet, y: &IntervalSet| check_equivalence(x, y, mode).passed;
        prop_assert!(eq(&a, &a));
        prop_assert_eq!(eq(&a, b), eq(b, &a));
        prop_assert_eq!(eq(&a, &c), eq(&c, &a));
        let (ab, bc, ac) = (eq(&a, b), eq(b, &c), eq(&a, &c));
        prop_assert!(!(ab && bc) || ac);
        prop_assert!(!(ab && ac) || bc);
    }
    Ok(())
}

pub fn transform_input() -> impl Strategy<Value = (IntervalSet, i64, Rational)> {
    (any_set(), -6i64..7, rational())
}

pub fn check_transform((set, j, t): (IntervalSet, i64, Rational)) -> Result<(), TestCaseError> {
    let back = set.transform(j, &t).transform(-j, &-(t * pow2(-j)));
    prop_assert_eq!(back, set);
    Ok(())
}

pub fn check_normalize(raw: Vec<(Rational, Rational)>) -> Result<(), TestCaseError> {
    let once = IntervalSet::normalize(raw).unwrap();
    let pairs = once.intervals().iter().map(|iv| (iv.lo().clone(), iv.hi().clone()));
    let twice = IntervalSet::normalize(pairs).unwrap();
    prop_assert_eq!(&twice, &once);
    prop_assert_eq!(IntervalSet::from_pieces(once.intervals().to_vec()), once);
    Ok(())
}
