//! Search over P2xP2 formats by increasing k, matched against a database of
//! candidate Hilbert series.

use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::fano_model::{find_pullback, orbifold_screen, FanoModel, QuotientPoint};
use crate::key_variety::{szendroi_numerator, WeightData};
use crate::series::Denominator;
use crate::{HilbertSeries, IntPolynomial};

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DbEntry {
    pub id: String,
    pub ambient: Vec<u32>,
    /// Hilbert numerator over prod (1 - t^w), w in `ambient`.
    pub numerator: IntPolynomial,
}

impl DbEntry {
    pub fn series(&self) -> HilbertSeries {
        HilbertSeries::new(
            self.numerator.clone(),
            Denominator::new(self.ambient.iter().copied()).expect("positive weights"),
        )
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Default)]
pub struct SeriesDatabase {
    pub entries: Vec<DbEntry>,
}

impl SeriesDatabase {
    pub fn get(&self, id: &str) -> Option<&DbEntry> {
        self.entries.iter().find(|e| e.id == id)
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Outcome {
    Matched,
    /// No database entry has the right degree for a Fano index 1 model.
    Filtered,
    /// Some entry passed the degree filter but no pullback reproduces it.
    NoPullback,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Outcome::Matched => "MATCHED",
            Outcome::Filtered => "FILTERED",
            Outcome::NoPullback => "NO_PULLBACK",
        })
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct CandidateRecord {
    pub weight_data: WeightData,
    pub k: i64,
    pub matched_id: Option<String>,
    pub ambient: Option<Vec<u32>>,
    pub verdict: Outcome,
    pub screen: Vec<QuotientPoint>,
}

/// All canonical integral weight data with (sum of matrix entries) / 3 = k.
pub fn enumerate_formats(k: i64) -> Vec<WeightData> {
    let mut out = Vec::new();
    if k < 1 {
        return out;
    }
    for a2 in 0..=k {
        for a3 in a2..=k - a2 {
            let rest = k - a2 - a3;
            for b1 in 1..=rest / 3 {
                for b2 in b1..=(rest - b1) / 2 {
                    let b3 = rest - b1 - b2;
                    let Ok(w) = WeightData::from_ints([0, a2, a3], [b1, b2, b3]) else { continue };
                    if w.is_canonical() {
                        out.push(w);
                    }
                }
            }
        }
    }
    out.sort();
    out
}

/// Eight-weight ambients on which `w` could realize the entry: the entry's
/// own ambient, or one adjusted by a single weight when the entry lives in
/// codimension 3 or 5.
fn model_ambients(entry: &DbEntry, top: i64) -> Vec<Vec<u32>> {
    let total: i64 = entry.ambient.iter().map(|&x| x as i64).sum();
    let mut amb = entry.ambient.clone();
    amb.sort_unstable();
    match amb.len() {
        8 => vec![amb],
        7 => {
            let e = top + 1 - total;
            if e >= 1 {
                amb.push(e as u32);
                amb.sort_unstable();
                vec![amb]
            } else {
                vec![]
            }
        }
        9 => {
            let e = total - top - 1;
            match amb.iter().position(|&x| x as i64 == e) {
                Some(i) => {
                    amb.remove(i);
                    vec![amb]
                }
                None => vec![],
            }
        }
        _ => vec![],
    }
}

fn match_entries(w: &WeightData, db: &SeriesDatabase) -> (Vec<(String, FanoModel)>, bool) {
    let mut hits = Vec::new();
    let mut considered = false;
    let Ok(num) = szendroi_numerator::<num_bigint::BigInt>(w) else { return (hits, false) };
    let top = num.degree().unwrap_or(0) as i64;
    for entry in &db.entries {
        let target = entry.series();
        for amb in model_ambients(entry, top) {
            if amb.iter().map(|&x| x as i64).sum::<i64>() != top + 1 {
                continue;
            }
            considered = true;
            if let Some(model) = find_pullback(w, &amb) {
                if model.series().same_function(&target) {
                    hits.push((entry.id.clone(), model));
                    break;
                }
            }
        }
    }
    (hits, considered)
}

/// Database entries whose series is realized by a regular pullback of the
/// key variety of `w`.
pub fn match_database(w: &WeightData, db: &SeriesDatabase) -> Vec<(String, FanoModel)> {
    match_entries(w, db).0
}

fn records_for(w: WeightData, db: &SeriesDatabase) -> Vec<CandidateRecord> {
    let (hits, considered) = match_entries(&w, db);
    let k = w.k();
    if hits.is_empty() {
        let verdict = if considered { Outcome::NoPullback } else { Outcome::Filtered };
        return vec![CandidateRecord { weight_data: w, k, matched_id: None, ambient: None, verdict, screen: vec![] }];
    }
    hits.into_iter()
        .map(|(id, model)| CandidateRecord {
            weight_data: w,
            k,
            matched_id: Some(id),
            screen: orbifold_screen(&model),
            ambient: Some(model.weights),
            verdict: Outcome::Matched,
        })
        .collect()
}

/// Every format with k <= k_max, in order of k then weight data, with one
/// record per database hit or a single unmatched record.
pub fn run_search(k_max: i64, db: &SeriesDatabase) -> Vec<CandidateRecord> {
    run_search_with(k_max, db, true)
}

pub fn run_search_with(k_max: i64, db: &SeriesDatabase, parallel: bool) -> Vec<CandidateRecord> {
    let formats: Vec<WeightData> = (1..=k_max).flat_map(enumerate_formats).collect();
    if parallel {
        formats.into_par_iter().flat_map_iter(|w| records_for(w, db)).collect()
    } else {
        formats.into_iter().flat_map(|w| records_for(w, db)).collect()
    }
}
