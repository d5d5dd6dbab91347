//! Checks against values computed by independent means: direct monomial
//! counts, closed forms and classical Euler numbers.

mod common;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use p2xp2::catalog::fixtures::table1_row;
use p2xp2::unprojection::{
    ci_euler, hilbert_burch_numerator, pfaffian_numerator, unprojected_series, SkewPfaffianData,
};
use p2xp2::{key_series, szendroi_numerator, Denominator, Half, HilbertSeries, IntPolynomial, WeightData};
use proptest::prelude::*;

fn big(v: &[i64]) -> Vec<BigInt> {
    v.iter().map(|&x| BigInt::from(x)).collect()
}

fn binom(n: i64, k: i64) -> i64 {
    if k < 0 || n < k {
        return 0;
    }
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

/// Degree d part of the Segre ring: x^alpha y^beta with |alpha| = |beta|,
/// graded by alpha.a + beta.b + |alpha| u (all doubled).
fn segre_counts(w: &WeightData, terms: usize) -> Vec<BigInt> {
    let (a, b, u) = (w.a().map(Half::doubled), w.b().map(Half::doubled), w.u().doubled());
    let top = 2 * terms as i64;
    let mut counts = vec![0i64; terms];
    let side = |g: [i64; 3], n: i64| -> BTreeMap<i64, i64> {
        let mut m = BTreeMap::new();
        for i in 0..=n {
            for j in 0..=n - i {
                *m.entry(i * g[0] + j * g[1] + (n - i - j) * g[2]).or_insert(0) += 1;
            }
        }
        m
    };
    let min_entry = (0..3).flat_map(|i| (0..3).map(move |j| a[i] + b[j] + u)).min().unwrap();
    let mut n = 0;
    while n * min_entry < top {
        let (x, y) = (side(a, n), side(b, n));
        for (dx, cx) in &x {
            for (dy, cy) in &y {
                let d = dx + dy + n * u;
                if d < top {
                    counts[(d / 2) as usize] += cx * cy;
                }
            }
        }
        n += 1;
    }
    big(&counts)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn key_series_counts_segre_monomials(w in common::weight_data()) {
        let s: HilbertSeries = key_series(&w).unwrap();
        prop_assert_eq!(s.expand(25), segre_counts(&w, 25));
    }
}

#[test]
fn segre_hilbert_function() {
    let w = WeightData::new([Half::ZERO; 3], [Half::ZERO; 3], Half::from_int(1)).unwrap();
    let s: HilbertSeries = key_series(&w).unwrap();
    let expected: Vec<i64> = (0..30).map(|n| binom(n + 2, 2).pow(2)).collect();
    assert_eq!(s.expand(30), big(&expected));
}

#[test]
fn grassmannian_hilbert_function() {
    let s = SkewPfaffianData::new([Half::from_doubled(1); 5], Default::default(), vec![]).unwrap();
    let n: IntPolynomial = pfaffian_numerator(&s).unwrap();
    assert_eq!(n.to_dense(), big(&[1, 0, -5, 5, 0, -1]));
    let series = HilbertSeries::new(n, Denominator::new([1; 10]).unwrap());
    let expected: Vec<i64> = (0..25i64).map(|n| (n + 1) * (n + 2).pow(2) * (n + 3).pow(2) * (n + 4) / 144).collect();
    assert_eq!(series.expand(25), big(&expected));
}

#[test]
fn sextic_genus_three_curve() {
    // 3 x 4 linear matrix on P^3: degree 6 curve with h(n) = 6n - 2
    let n: IntPolynomial = hilbert_burch_numerator([Half::ZERO; 3], [Half::from_int(1); 4]).unwrap();
    let s = HilbertSeries::new(n, Denominator::new([1; 4]).unwrap());
    let h = s.expand(20);
    for (i, c) in h.iter().enumerate().skip(2) {
        assert_eq!(*c, BigInt::from(6 * i as i64 - 2), "degree {i}");
    }
}

#[test]
fn classical_euler_numbers() {
    assert_eq!(ci_euler(4, &[5]).unwrap(), -200);
    assert_eq!(ci_euler(4, &[3]).unwrap(), -6);
    assert_eq!(ci_euler(4, &[4]).unwrap(), -56);
    assert_eq!(ci_euler(5, &[2, 3]).unwrap(), -36);
    assert_eq!(ci_euler(5, &[3, 3]).unwrap(), -144);
    assert_eq!(ci_euler(4, &[2]).unwrap(), 4);
    assert_eq!(ci_euler(6, &[2, 2, 2]).unwrap(), -24);
}

#[test]
fn unprojection_adds_the_plane_term() {
    for (id, r, plane) in [("26989", 2, vec![1, 1, 1]), ("4839", 9, vec![1, 1, 8]), ("4839", 5, vec![1, 1, 4])] {
        let m = table1_row(id).and_then(|row| row.model()).unwrap();
        let p = p2xp2::unprojection::project_type_one(&m, r).unwrap();
        let num: IntPolynomial = pfaffian_numerator(&p.skew).unwrap();
        let y = HilbertSeries::new(num, Denominator::new(p.skew.ambient_weights.clone()).unwrap());
        let x = unprojected_series(&y, r, &plane).unwrap();
        assert!(x.same_function(&m.series()), "{id} from 1/{r}");
    }
}

#[test]
fn machine_integers_agree_with_big_integers() {
    let w = WeightData::from_ints([0, 1, 2], [4, 6, 7]).unwrap();
    let small: p2xp2::SmallPolynomial = szendroi_numerator(&w).unwrap();
    let large: IntPolynomial = szendroi_numerator(&w).unwrap();
    assert_eq!(small.map_coeffs(|c| BigInt::from(*c)), large);
}
