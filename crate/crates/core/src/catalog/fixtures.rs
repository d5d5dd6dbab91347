//! Tables transcribed into `data/`, parsed and checked on first use.

use std::fmt;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fano_model::{find_pullback, FanoModel};
use crate::key_variety::{szendroi_numerator, WeightData, WeightMatrix};
use crate::IntPolynomial;

const TABLE1: &str = include_str!("../../data/table1.txt");
const TABLE2: &str = include_str!("../../data/table2.txt");
const LEDGERS: &str = include_str!("../../data/ledgers.txt");
const PLANES: &str = include_str!("../../data/planes.txt");
const NUMERATORS: &str = include_str!("../../data/numerators.txt");
const SCREENS: &str = include_str!("../../data/screens.txt");

/// Non-comment lines split on `|`, with 1-based line numbers.
fn records(text: &str, fields: usize) -> impl Iterator<Item = Result<(usize, Vec<&str>)>> + '_ {
    text.lines().enumerate().filter_map(move |(n, line)| {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            return None;
        }
        let parts: Vec<&str> = line.split('|').map(str::trim).collect();
        if parts.len() != fields {
            return Some(Err(Error::ParseLine {
                line: n + 1,
                msg: format!("expected {fields} fields, got {}", parts.len()),
            }));
        }
        Some(Ok((n + 1, parts)))
    })
}

fn bad(line: usize, msg: impl Into<String>) -> Error {
    Error::ParseLine { line, msg: msg.into() }
}

pub fn parse_int_list<T: std::str::FromStr>(s: &str) -> Result<Vec<T>> {
    s.split(',')
        .map(|x| x.trim().parse::<T>().map_err(|_| Error::Parse(format!("bad number {x:?} in {s:?}"))))
        .collect()
}

/// Parses `1^7,2` style weight lists into a sorted multiset.
pub fn parse_weights(s: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in s.split(',') {
        let part = part.trim();
        let (w, n) = match part.split_once('^') {
            Some((w, n)) => (w, n.parse::<usize>().map_err(|_| Error::Parse(format!("bad exponent in {part:?}")))?),
            None => (part, 1),
        };
        let w: u32 = w.parse().map_err(|_| Error::Parse(format!("bad weight {part:?}")))?;
        if w == 0 {
            return Err(Error::Parse("weights must be positive".into()));
        }
        out.extend(std::iter::repeat_n(w, n));
    }
    out.sort_unstable();
    Ok(out)
}

/// Compact `1^7,2` rendering of a sorted multiset.
pub fn format_weights(w: &[u32]) -> String {
    crate::series::multiset_counts(w)
        .into_iter()
        .map(|(v, n)| if n == 1 { v.to_string() } else { format!("{v}^{n}") })
        .collect::<Vec<_>>()
        .join(",")
}

fn triple(line: usize, s: &str) -> Result<[i64; 3]> {
    let v: Vec<i64> = parse_int_list(s).map_err(|e| bad(line, e.to_string()))?;
    v.try_into().map_err(|_| bad(line, format!("expected three entries in {s:?}")))
}

#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum OutcomeTag {
    SecondTom,
    NewTj,
    BadPoint,
    QuasismoothModel,
    NotTerminal,
    Subfamily,
    NoProjection,
}

impl OutcomeTag {
    fn from_text(s: &str) -> Option<Self> {
        let s = s.to_ascii_lowercase();
        Some(if s.starts_with("second tom") {
            OutcomeTag::SecondTom
        } else if s.starts_with("tom^") || s.starts_with("jer^") {
            OutcomeTag::NewTj
        } else if s.starts_with("bad") {
            OutcomeTag::BadPoint
        } else if s.contains("not terminal") {
            OutcomeTag::NotTerminal
        } else if s.starts_with("quasismooth") {
            OutcomeTag::QuasismoothModel
        } else if s.starts_with("subfamily") {
            OutcomeTag::Subfamily
        } else if s.contains("no projection") {
            OutcomeTag::NoProjection
        } else {
            return None;
        })
    }
}

impl fmt::Display for OutcomeTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("unit variant");
        write!(f, "{}", s.as_str().unwrap_or_default())
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Table1Row {
    pub k: i64,
    pub a: [i64; 3],
    pub b: [i64; 3],
    pub grdb_id: String,
    pub aliases: Vec<String>,
    pub codim: u32,
    pub tj: String,
    /// Ambient of the database entry; codimension 3 and 5 entries have 7 or
    /// 9 weights.
    pub grdb_ambient: Vec<u32>,
    pub outcome_text: String,
    pub tag: OutcomeTag,
}

impl Table1Row {
    pub fn weight_data(&self) -> WeightData {
        WeightData::from_ints(self.a, self.b).expect("checked at parse time")
    }

    /// Eight weights of the P2xP2 model realizing the row: the entry's
    /// ambient, completed or trimmed by the one weight forced by degree.
    pub fn model_ambient(&self) -> Option<Vec<u32>> {
        let target = 2 * self.k + 1;
        let total: i64 = self.grdb_ambient.iter().map(|&w| w as i64).sum();
        let mut amb = self.grdb_ambient.clone();
        match amb.len() {
            8 => {}
            7 => amb.push(u32::try_from(target - total).ok().filter(|&e| e > 0)?),
            9 => {
                let i = amb.iter().position(|&w| w as i64 == total - target)?;
                amb.remove(i);
            }
            _ => return None,
        }
        amb.sort_unstable();
        Some(amb)
    }

    /// The pullback realizing the row, when there is one.
    pub fn model(&self) -> Option<FanoModel> {
        find_pullback(&self.weight_data(), &self.model_ambient()?)
    }

    pub fn matches_id(&self, id: &str) -> bool {
        self.grdb_id == id || self.aliases.iter().any(|a| a == id)
    }

    /// Hilbert numerator of the database entry over `grdb_ambient`.
    pub fn grdb_numerator(&self) -> Result<IntPolynomial> {
        let n: IntPolynomial = szendroi_numerator(&self.weight_data())?;
        let target = 2 * self.k + 1;
        let total: i64 = self.grdb_ambient.iter().map(|&w| w as i64).sum();
        let fail = || Error::Inconsistent(format!("row {} does not fit its ambient", self.grdb_id));
        match self.grdb_ambient.len() {
            8 => Ok(n),
            7 => n.div_one_minus(u32::try_from(target - total).map_err(|_| fail())?).ok_or_else(fail),
            9 => Ok(n.mul_one_minus(u32::try_from(total - target).map_err(|_| fail())?)),
            _ => Err(fail()),
        }
    }
}

pub fn parse_table1(text: &str) -> Result<Vec<Table1Row>> {
    records(text, 9)
        .map(|rec| {
            let (line, f) = rec?;
            let k: i64 = f[0].parse().map_err(|_| bad(line, "bad k"))?;
            let (a, b) = (triple(line, f[1])?, triple(line, f[2])?);
            if a[0] != 0 {
                return Err(bad(line, "a1 must be 0"));
            }
            if a.iter().sum::<i64>() + b.iter().sum::<i64>() != k {
                return Err(bad(line, format!("k = {k} is not the sum of a and b")));
            }
            WeightData::from_ints(a, b).map_err(|e| bad(line, e.to_string()))?;
            let tag = OutcomeTag::from_text(f[7]).ok_or_else(|| bad(line, format!("unknown outcome {:?}", f[7])))?;
            Ok(Table1Row {
                k,
                a,
                b,
                grdb_id: f[3].to_string(),
                aliases: f[8].split_whitespace().map(String::from).collect(),
                codim: f[4].parse().map_err(|_| bad(line, "bad codimension"))?,
                tj: f[5].to_string(),
                grdb_ambient: parse_weights(f[6]).map_err(|e| bad(line, e.to_string()))?,
                outcome_text: f[7].to_string(),
                tag,
            })
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Table2Row {
    pub grdb_id: String,
    pub matrix: WeightMatrix,
    pub families: String,
    /// (r, number of nodes) for each centre 1/r.
    pub centres: Vec<(u32, u32)>,
}

pub fn parse_table2(text: &str) -> Result<Vec<Table2Row>> {
    records(text, 4)
        .map(|rec| {
            let (line, f) = rec?;
            let rows: Vec<[u32; 3]> = f[1]
                .split(';')
                .map(|r| {
                    let v: Vec<u32> = parse_int_list(r)?;
                    v.try_into().map_err(|_| Error::Parse(format!("bad matrix row {r:?}")))
                })
                .collect::<Result<_>>()
                .map_err(|e| bad(line, e.to_string()))?;
            let rows: [[u32; 3]; 3] = rows.try_into().map_err(|_| bad(line, "matrix needs three rows"))?;
            let matrix = WeightMatrix::new(rows).map_err(|e| bad(line, e.to_string()))?;
            let centres = f[3]
                .split(',')
                .map(|c| {
                    let (r, n) = c.split_once(':').ok_or_else(|| bad(line, format!("bad centre {c:?}")))?;
                    Ok((
                        r.trim().parse().map_err(|_| bad(line, "bad index"))?,
                        n.trim().parse().map_err(|_| bad(line, "bad node count"))?,
                    ))
                })
                .collect::<Result<_>>()?;
            Ok(Table2Row { grdb_id: f[0].to_string(), matrix, families: f[2].to_string(), centres })
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct LedgerRow {
    pub series: String,
    pub family: u32,
    pub construction: String,
    pub ambient: Vec<u32>,
    /// Kept as text: values computed by computer algebra carry a `*`.
    pub rho: Option<String>,
    pub h21: Option<String>,
    pub e_y_gen: i64,
    pub nodes: i64,
    pub e_x: i64,
}

fn optional(s: &str) -> Option<String> {
    (s != "-").then(|| s.to_string())
}

pub fn parse_ledgers(text: &str) -> Result<Vec<LedgerRow>> {
    records(text, 9)
        .map(|rec| {
            let (line, f) = rec?;
            let int = |s: &str| s.parse::<i64>().map_err(|_| bad(line, format!("bad integer {s:?}")));
            Ok(LedgerRow {
                series: f[0].to_string(),
                family: int(f[1])? as u32,
                construction: f[2].to_string(),
                ambient: parse_weights(f[3]).map_err(|e| bad(line, e.to_string()))?,
                rho: optional(f[4]),
                h21: optional(f[5]),
                e_y_gen: int(f[6])?,
                nodes: int(f[7])?,
                e_x: int(f[8])?,
            })
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct PlaneRow {
    pub series: String,
    pub plane: Vec<u32>,
    pub weight: i64,
}

pub fn parse_planes(text: &str) -> Result<Vec<PlaneRow>> {
    records(text, 3)
        .map(|rec| {
            let (line, f) = rec?;
            Ok(PlaneRow {
                series: f[0].to_string(),
                plane: parse_int_list(f[1]).map_err(|e| bad(line, e.to_string()))?,
                weight: f[2].parse().map_err(|_| bad(line, "bad weight"))?,
            })
        })
        .collect()
}

#[derive(Clone, PartialEq, Eq, Debug)]
pub struct DisplayedNumerator {
    pub name: String,
    pub ambient: Vec<u32>,
    pub numerator: IntPolynomial,
}

pub fn parse_numerators(text: &str) -> Result<Vec<DisplayedNumerator>> {
    records(text, 3)
        .map(|rec| {
            let (line, f) = rec?;
            let coeffs: Vec<i64> = parse_int_list(f[2]).map_err(|e| bad(line, e.to_string()))?;
            Ok(DisplayedNumerator {
                name: f[0].to_string(),
                ambient: parse_weights(f[1]).map_err(|e| bad(line, e.to_string()))?,
                numerator: IntPolynomial::from_coeffs(coeffs.into_iter().map(Into::into)),
            })
        })
        .collect()
}

/// A quotient point the screen is expected to find.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ExpectedPoint {
    pub r: u32,
    pub weights: Option<[u32; 3]>,
    pub terminal: bool,
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct ScreenExpectation {
    pub series: String,
    pub quasismooth: bool,
    /// The list is complete rather than a lower bound.
    pub exhaustive: bool,
    pub points: Vec<ExpectedPoint>,
}

pub fn parse_screens(text: &str) -> Result<Vec<ScreenExpectation>> {
    records(text, 3)
        .map(|rec| {
            let (line, f) = rec?;
            let quasismooth = match f[1] {
                "yes" => true,
                "no" => false,
                other => return Err(bad(line, format!("expected yes or no, got {other:?}"))),
            };
            let mut exhaustive = false;
            let mut points = Vec::new();
            for tok in f[2].split_whitespace() {
                if tok == "only" {
                    exhaustive = true;
                    continue;
                }
                let parts: Vec<&str> = tok.split(':').collect();
                let (r, w, v) = match parts.as_slice() {
                    [r, w, v] => (r, Some(w), v),
                    [r, v] => (r, None, v),
                    _ => return Err(bad(line, format!("bad point {tok:?}"))),
                };
                let weights = match w {
                    Some(w) => {
                        let v: Vec<u32> = parse_int_list(w).map_err(|e| bad(line, e.to_string()))?;
                        Some(v.try_into().map_err(|_| bad(line, "need three weights"))?)
                    }
                    None => None,
                };
                points.push(ExpectedPoint {
                    r: r.parse().map_err(|_| bad(line, "bad index"))?,
                    weights,
                    terminal: *v == "T",
                });
            }
            Ok(ScreenExpectation { series: f[0].to_string(), quasismooth, exhaustive, points })
        })
        .collect()
}

macro_rules! fixture {
    ($name:ident, $ty:ty, $parse:ident, $text:ident) => {
        pub fn $name() -> &'static [$ty] {
            static CELL: OnceLock<Vec<$ty>> = OnceLock::new();
            CELL.get_or_init(|| $parse($text).expect(concat!("bundled fixture ", stringify!($name), " is valid")))
        }
    };
}

fixture!(table1, Table1Row, parse_table1, TABLE1);
fixture!(table2, Table2Row, parse_table2, TABLE2);
fixture!(ledgers, LedgerRow, parse_ledgers, LEDGERS);
fixture!(planes, PlaneRow, parse_planes, PLANES);
fixture!(displayed_numerators, DisplayedNumerator, parse_numerators, NUMERATORS);
fixture!(screen_expectations, ScreenExpectation, parse_screens, SCREENS);

pub fn table1_row(id: &str) -> Option<&'static Table1Row> {
    table1().iter().find(|r| r.matches_id(id))
}
