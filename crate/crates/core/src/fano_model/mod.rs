//! Codimension 4 Fano 3-folds obtained as regular pullbacks of a weighted
//! P2xP2 into a weighted P7.

mod screen;

use std::fmt;

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use crate::key_variety::{key_series, WeightData, WeightMatrix};
use crate::series::{multiset_difference, Coefficient, Series};
use crate::HilbertSeries;

pub use screen::orbifold_screen;

/// Largest number of cone variables `find_pullback` will add.
pub const MAX_CONE: usize = 4;

#[derive(Clone, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct FanoModel {
    /// Ambient weights, sorted.
    pub weights: Vec<u32>,
    pub degree_matrix: WeightMatrix,
    pub source: WeightData,
    pub cone_weights: Vec<u32>,
    pub section_degrees: Vec<u32>,
}

impl FanoModel {
    /// Key series coned over `cone_weights` and cut by `section_degrees`.
    pub fn series(&self) -> HilbertSeries {
        self.series_in()
    }

    pub fn series_in<C: Coefficient>(&self) -> Series<C> {
        key_series(&self.source)
            .and_then(|s: Series<C>| s.scaled(&self.section_degrees, &self.cone_weights))
            .expect("model built from validated weight data")
    }

    pub fn fano_index(&self) -> i64 {
        series_fano_index(&self.series())
    }
}

impl fmt::Display for FanoModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P({}) matrix {}", join(&self.weights), self.degree_matrix)
    }
}

pub(crate) fn join(v: &[u32]) -> String {
    v.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

/// Sum of the denominator weights minus the numerator degree.
pub fn series_fano_index<C: Coefficient>(s: &Series<C>) -> i64 {
    let total: i64 = s.denominator.weights().iter().map(|&w| w as i64).sum();
    total - s.numerator.degree().map_or(0, |d| d as i64)
}

/// Regular pullback of the key variety of `w` into P(ambient).
///
/// Ambient weights missing from the matrix degrees become cone variables;
/// surplus matrix degrees are eliminated by quasilinear sections. Any other
/// recipe only adds cone variables that a section immediately removes.
pub fn find_pullback(w: &WeightData, ambient: &[u32]) -> Option<FanoModel> {
    let mut weights = ambient.to_vec();
    weights.sort_unstable();
    if weights.is_empty() || weights.contains(&0) {
        return None;
    }
    let m = w.weight_matrix();
    let degrees = m.degrees();
    let cone = multiset_difference(&weights, &degrees);
    if cone.len() > MAX_CONE {
        return None;
    }
    let mut generators = degrees.clone();
    generators.extend(&cone);
    generators.sort_unstable();
    let sections = multiset_difference(&generators, &weights);
    Some(FanoModel { weights, degree_matrix: m, source: *w, cone_weights: cone, section_degrees: sections })
}

/// Whether the coordinate point of a weight `carrier_weight` variable lies on
/// the model, judged by the term rank of the entries that can contain a pure
/// power of that variable.
pub fn point_on_model(m: &FanoModel, r: u32, carrier_weight: u32) -> bool {
    if r <= 1 || carrier_weight <= 1 {
        return true;
    }
    let support: Vec<(usize, usize)> = (0..3)
        .flat_map(|i| (0..3).map(move |j| (i, j)))
        .filter(|&(i, j)| {
            let d = m.degree_matrix.get(i, j);
            d.is_multiple_of(r) && d.is_multiple_of(carrier_weight)
        })
        .collect();
    term_rank(&support) <= 1
}

/// Size of a largest set of cells with distinct rows and columns.
pub fn term_rank(cells: &[(usize, usize)]) -> usize {
    fn augment(i: usize, cells: &[(usize, usize)], seen: &mut [bool; 3], owner: &mut [Option<usize>; 3]) -> bool {
        for &(r, c) in cells {
            if r != i || seen[c] {
                continue;
            }
            seen[c] = true;
            if owner[c].is_none_or(|o| augment(o, cells, seen, owner)) {
                owner[c] = Some(i);
                return true;
            }
        }
        false
    }
    let mut owner = [None; 3];
    (0..3).filter(|&i| augment(i, cells, &mut [false; 3], &mut owner)).count()
}

/// Whether 1/r(w1,w2,w3) is a terminal cyclic quotient, i.e. of the form
/// 1/r(1,a,-a) with a coprime to r after rescaling by a unit.
pub fn terminal_quotient_check(r: u32, weights: [i64; 3]) -> bool {
    if r < 2 {
        return true;
    }
    let r = r as i64;
    (1..r).filter(|u| u.gcd(&r) == 1).any(|u| {
        let v = weights.map(|w| (u * w).rem_euclid(r));
        (0..3).any(|i| {
            let rest: Vec<i64> = (0..3).filter(|&j| j != i).map(|j| v[j]).collect();
            v[i] == 1 && (rest[0] + rest[1]) % r == 0 && rest[0].gcd(&r) == 1
        })
    })
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Verdict {
    Terminal,
    NonTerminal,
    NotOnX,
    Unknown,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Verdict::Terminal => "TERMINAL",
            Verdict::NonTerminal => "NON_TERMINAL",
            Verdict::NotOnX => "NOT_ON_X",
            Verdict::Unknown => "UNKNOWN",
        };
        f.write_str(s)
    }
}

/// A point of X with nontrivial stabilizer found by `orbifold_screen`.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct QuotientPoint {
    pub r: u32,
    /// Weights of the three tangent directions mod r; empty when the point is
    /// not an isolated quotient singularity.
    pub local_weights: Vec<u32>,
    pub verdict: Verdict,
    /// Weights of the coordinates that are nonzero at the point.
    pub stratum: Vec<u32>,
    pub quasismooth: bool,
}

impl fmt::Display for QuotientPoint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "1/{}", self.r)?;
        if !self.local_weights.is_empty() {
            write!(f, "({})", join(&self.local_weights))?;
        }
        write!(f, " {} on P({})", self.verdict, join(&self.stratum))?;
        if !self.quasismooth {
            write!(f, " not quasismooth")?;
        }
        Ok(())
    }
}
