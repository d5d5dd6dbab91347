#![allow(dead_code)]

use std::collections::BTreeSet;

use num_bigint::BigInt;
use p2xp2::catalog::fixture_database;
use p2xp2::enumeration::{enumerate_formats, run_search_with};
use p2xp2::fano_model::terminal_quotient_check;
use p2xp2::key_variety::{cox_bigrading, wellform};
use p2xp2::unprojection::{pfaffian_numerator, SkewPfaffianData};
use p2xp2::{key_series, szendroi_numerator, Half, HilbertSeries, IntPolynomial, WeightData};
use proptest::prelude::*;
use proptest::test_runner::TestCaseError;

fn sorted3(v: [i64; 3]) -> [i64; 3] {
    let mut v = v;
    v.sort_unstable();
    v
}

/// Valid weight data, half-integral included, with a positive matrix.
pub fn weight_data() -> impl Strategy<Value = WeightData> {
    (any::<bool>(), any::<bool>(), prop::array::uniform3(-5i64..6), prop::array::uniform3(-5i64..6), 0i64..4).prop_map(
        |(pa, pb, a, b, extra)| {
            let a = sorted3(a).map(|x| 2 * x + i64::from(pa));
            let b = sorted3(b).map(|x| 2 * x + i64::from(pb));
            let u = 2 + 2 * extra - (a[0] + b[0]);
            WeightData::new(a.map(Half::from_doubled), b.map(Half::from_doubled), Half::from_doubled(u)).unwrap()
        },
    )
}

/// Row weights of a 5 x 5 skew matrix with positive integral entry degrees.
pub fn skew_weights() -> impl Strategy<Value = [Half; 5]> {
    (any::<bool>(), prop::array::uniform5(0i64..5))
        .prop_map(|(odd, w)| w.map(|x| Half::from_doubled(2 * x + 1 + i64::from(odd))))
}

pub fn prop_szendroi_gorenstein(w: WeightData) -> Result<(), TestCaseError> {
    let n: IntPolynomial = szendroi_numerator(&w).map_err(|e| TestCaseError::fail(e.to_string()))?;
    let sym = n.symmetry().unwrap();
    prop_assert_eq!(sym.sign, Some(1));
    prop_assert_eq!(2 * sym.degree as i64, 6 * w.u().doubled() + 2 * (sum(w.a()) + sum(w.b())).doubled());
    Ok(())
}

fn sum(v: [Half; 3]) -> Half {
    v.into_iter().sum()
}

pub fn prop_pfaffian_gorenstein(w: [Half; 5]) -> Result<(), TestCaseError> {
    let s = SkewPfaffianData::new(w, Default::default(), vec![]).unwrap();
    match pfaffian_numerator::<BigInt>(&s) {
        Ok(n) => {
            let sym = n.symmetry().unwrap();
            prop_assert_eq!(sym.sign, Some(-1));
            prop_assert_eq!(sym.degree as i64, s.adjunction());
        }
        Err(e) => prop_assert!(false, "{}", e),
    }
    Ok(())
}

/// Key series agree under transpose and under moving weight between a, b
/// and u.
pub fn prop_gauge_invariance(w: WeightData, shift: i64) -> Result<(), TestCaseError> {
    let base: HilbertSeries = key_series(&w).unwrap();
    let c = Half::from_doubled(shift);
    let moved = WeightData::new(w.a().map(|x| x + c), w.b().map(|x| x - c), w.u()).unwrap();
    let folded = WeightData::new(w.a().map(|x| x + w.u()), w.b(), Half::ZERO).unwrap();
    for other in [w.transpose(), w.canonical(), moved, folded] {
        let s: HilbertSeries = key_series(&other).unwrap();
        prop_assert_eq!(&s, &base);
        prop_assert_eq!(other.weight_matrix().degrees(), w.weight_matrix().degrees());
    }
    prop_assert!(w.canonical().is_canonical());
    prop_assert_eq!(w.canonical(), w.transpose().canonical());
    Ok(())
}

pub fn prop_normalize_round_trip(w: WeightData) -> Result<(), TestCaseError> {
    let s: HilbertSeries = key_series(&w).unwrap();
    let n = s.normalized();
    prop_assert_eq!(n.expand(100), s.expand(100));
    prop_assert!(n.same_function(&s));
    prop_assert_eq!(n.normalized(), n.clone());
    Ok(())
}

pub fn prop_scale_round_trip(w: WeightData, multiply: Vec<u32>, divide: Vec<u32>) -> Result<(), TestCaseError> {
    let s: HilbertSeries = key_series(&w).unwrap();
    let there = s.scaled(&multiply, &divide).unwrap();
    let back = there.scaled(&divide, &multiply).unwrap();
    prop_assert!(back.same_function(&s));
    prop_assert_eq!(back.expand(60), s.expand(60));
    Ok(())
}

pub fn prop_wellform_idempotent(w: WeightData) -> Result<(), TestCaseError> {
    let once = wellform(&cox_bigrading(&w));
    let twice = wellform(&once.bigrading);
    prop_assert!(twice.moves.is_empty());
    prop_assert_eq!(twice.bigrading, once.bigrading);
    Ok(())
}

pub fn prop_terminal_invariance(r: u32, w: [i64; 3], unit: i64, shift: [i64; 3]) -> Result<(), TestCaseError> {
    let base = terminal_quotient_check(r, w);
    let ri = r as i64;
    let shifted = [w[0] + shift[0] * ri, w[1] + shift[1] * ri, w[2] + shift[2] * ri];
    prop_assert_eq!(terminal_quotient_check(r, shifted), base);
    prop_assert_eq!(terminal_quotient_check(r, [w[2], w[0], w[1]]), base);
    prop_assert_eq!(terminal_quotient_check(r, [w[1], w[0], w[2]]), base);
    if num_integer::Integer::gcd(&unit, &ri) == 1 {
        prop_assert_eq!(terminal_quotient_check(r, w.map(|x| x * unit)), base);
    }
    Ok(())
}

/// All canonical formats with the given k, found by brute force over a box
/// large enough to hold every gauge class.
pub fn brute_force_formats(k: i64) -> BTreeSet<WeightData> {
    let mut out = BTreeSet::new();
    for a1 in -k..=k {
        for a2 in a1..=k {
            for a3 in a2..=k {
                for b1 in -k..=k {
                    for b2 in b1..=k {
                        let b3 = k - a1 - a2 - a3 - b1 - b2;
                        if b3 < b2 {
                            continue;
                        }
                        if let Ok(w) = WeightData::from_ints([a1, a2, a3], [b1, b2, b3]) {
                            out.insert(w.canonical());
                        }
                    }
                }
            }
        }
    }
    out
}

pub fn formats_complete(k_max: i64) -> Result<(), String> {
    for k in 1..=k_max {
        let fast: BTreeSet<WeightData> = enumerate_formats(k).into_iter().collect();
        let slow = brute_force_formats(k);
        if fast != slow {
            return Err(format!("k={k}: {} enumerated, {} by brute force", fast.len(), slow.len()));
        }
    }
    Ok(())
}

pub fn parallel_matches_serial(k_max: i64) -> bool {
    let db = fixture_database();
    run_search_with(k_max, &db, true) == run_search_with(k_max, &db, false)
}
