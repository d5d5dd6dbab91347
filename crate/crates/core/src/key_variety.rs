//! Weighted P2xP2 key varieties: grading data, weight matrices, Cox bigradings
//! and the Hilbert numerator of the 9 x 16 resolution.

use std::collections::BTreeMap;
use std::fmt;
use std::iter::Sum;
use std::ops::{Add, Neg, Sub};
use std::str::FromStr;

use num_integer::Integer;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::series::{Coefficient, Denominator, Polynomial, Series};

/// An element of (1/2)Z, stored doubled.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Default)]
pub struct Half(i64);

impl Half {
    pub const ZERO: Half = Half(0);

    pub const fn from_int(n: i64) -> Self {
        Half(2 * n)
    }

    pub const fn from_doubled(d: i64) -> Self {
        Half(d)
    }

    pub const fn doubled(self) -> i64 {
        self.0
    }

    pub fn is_integer(self) -> bool {
        self.0 % 2 == 0
    }

    pub fn to_integer(self) -> Option<i64> {
        self.is_integer().then_some(self.0 / 2)
    }
}

impl Add for Half {
    type Output = Half;
    fn add(self, rhs: Half) -> Half {
        Half(self.0 + rhs.0)
    }
}

impl Sub for Half {
    type Output = Half;
    fn sub(self, rhs: Half) -> Half {
        Half(self.0 - rhs.0)
    }
}

impl Neg for Half {
    type Output = Half;
    fn neg(self) -> Half {
        Half(-self.0)
    }
}

impl Sum for Half {
    fn sum<I: Iterator<Item = Half>>(iter: I) -> Half {
        Half(iter.map(|h| h.0).sum())
    }
}

impl From<i64> for Half {
    fn from(n: i64) -> Half {
        Half::from_int(n)
    }
}

impl fmt::Display for Half {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.to_integer() {
            Some(n) => write!(f, "{n}"),
            None => write!(f, "{}/2", self.0),
        }
    }
}

impl FromStr for Half {
    type Err = Error;

    /// Accepts `3`, `-1/2`, `3/2` or `1.5`.
    fn from_str(s: &str) -> Result<Half> {
        let s = s.trim();
        let bad = || Error::Parse(format!("not a half-integer: {s:?}"));
        if let Some((n, d)) = s.split_once('/') {
            let n: i64 = n.trim().parse().map_err(|_| bad())?;
            return match d.trim() {
                "1" => Ok(Half::from_int(n)),
                "2" => Ok(Half(n)),
                _ => Err(bad()),
            };
        }
        if let Some((i, frac)) = s.split_once('.') {
            let neg = i.starts_with('-');
            let whole: i64 = if i == "-" || i.is_empty() { 0 } else { i.parse().map_err(|_| bad())? };
            let half = match frac.trim_end_matches('0') {
                "" => 0,
                "5" => 1,
                _ => return Err(bad()),
            };
            return Ok(Half(2 * whole + if neg { -half } else { half }));
        }
        s.parse::<i64>().map(Half::from_int).map_err(|_| bad())
    }
}

impl Serialize for Half {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        match self.to_integer() {
            Some(n) => s.serialize_i64(n),
            None => s.serialize_str(&self.to_string()),
        }
    }
}

impl<'de> Deserialize<'de> for Half {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Half, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            Int(i64),
            Text(String),
        }
        match Raw::deserialize(d)? {
            Raw::Int(n) => Ok(Half::from_int(n)),
            Raw::Text(t) => t.parse().map_err(serde::de::Error::custom),
        }
    }
}

/// Grading vectors (a, b) and shift u of a weighted P2xP2.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
#[serde(try_from = "RawWeightData")]
pub struct WeightData {
    a: [Half; 3],
    b: [Half; 3],
    u: Half,
}

#[derive(Deserialize)]
struct RawWeightData {
    a: [Half; 3],
    b: [Half; 3],
    u: Half,
}

impl TryFrom<RawWeightData> for WeightData {
    type Error = Error;

    fn try_from(r: RawWeightData) -> Result<Self> {
        WeightData::new(r.a, r.b, r.u)
    }
}

impl WeightData {
    pub fn new(a: [Half; 3], b: [Half; 3], u: Half) -> Result<Self> {
        if !(a[0] <= a[1] && a[1] <= a[2]) || !(b[0] <= b[1] && b[1] <= b[2]) {
            return Err(Error::InvalidWeights(format!(
                "a and b must be nondecreasing, got a={} b={}",
                fmt_halves(&a),
                fmt_halves(&b)
            )));
        }
        for ai in a {
            for bj in b {
                let m = ai + bj + u;
                if !m.is_integer() {
                    return Err(Error::InvalidWeights(format!("matrix entry {m} is not an integer")));
                }
                if m.doubled() <= 0 {
                    return Err(Error::InvalidWeights(format!("matrix entry {m} is not positive")));
                }
            }
        }
        Ok(WeightData { a, b, u })
    }

    /// Integral data with u = 0.
    pub fn from_ints(a: [i64; 3], b: [i64; 3]) -> Result<Self> {
        Self::new(a.map(Half::from_int), b.map(Half::from_int), Half::ZERO)
    }

    pub fn a(&self) -> [Half; 3] {
        self.a
    }

    pub fn b(&self) -> [Half; 3] {
        self.b
    }

    pub fn u(&self) -> Half {
        self.u
    }

    /// Sum of the nine matrix entries divided by 3.
    pub fn k(&self) -> i64 {
        let s: Half = self.a.iter().chain(self.b.iter()).copied().sum::<Half>() + self.u + self.u + self.u;
        s.to_integer().expect("row sums of the weight matrix are integers")
    }

    pub fn weight_matrix(&self) -> WeightMatrix {
        let mut m = [[0u32; 3]; 3];
        for i in 0..3 {
            for j in 0..3 {
                let e = (self.a[i] + self.b[j] + self.u).to_integer().expect("validated");
                m[i][j] = e as u32;
            }
        }
        WeightMatrix(m)
    }

    /// Gauge-fixed representative: u = 0, a1 = 0, and the smaller of (a, b)
    /// and its transpose.
    pub fn canonical(&self) -> WeightData {
        let a = self.a.map(|x| x + self.u);
        let shift = a[0];
        let a = a.map(|x| x - shift);
        let b = self.b.map(|x| x + shift);
        let straight = WeightData { a, b, u: Half::ZERO };
        let swapped = WeightData { a: b.map(|x| x - b[0]), b: a.map(|x| x + b[0]), u: Half::ZERO };
        straight.min(swapped)
    }

    pub fn is_canonical(&self) -> bool {
        *self == self.canonical()
    }

    pub fn transpose(&self) -> WeightData {
        WeightData { a: self.b, b: self.a, u: self.u }
    }
}

pub(crate) fn fmt_halves(v: &[Half]) -> String {
    v.iter().map(|h| h.to_string()).collect::<Vec<_>>().join(",")
}

impl fmt::Display for WeightData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "a=({}) b=({})", fmt_halves(&self.a), fmt_halves(&self.b))?;
        if self.u != Half::ZERO {
            write!(f, " u={}", self.u)?;
        }
        Ok(())
    }
}

/// The 3 x 3 matrix of degrees a_i + b_j + u.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug, Serialize, Deserialize)]
pub struct WeightMatrix(pub [[u32; 3]; 3]);

impl WeightMatrix {
    pub fn new(rows: [[u32; 3]; 3]) -> Result<Self> {
        let m = WeightMatrix(rows);
        if rows.iter().flatten().any(|&x| x == 0) {
            return Err(Error::InvalidWeights("matrix entries must be positive".into()));
        }
        for i in 0..3 {
            for j in 0..3 {
                let (x, y) = (m.get(i, j) as i64, m.get(0, 0) as i64);
                if x + y != m.get(i, 0) as i64 + m.get(0, j) as i64 {
                    return Err(Error::InvalidWeights(format!("matrix {m} is not of the form a^T + b")));
                }
            }
        }
        for i in 0..3 {
            for j in 0..2 {
                if m.get(i, j) > m.get(i, j + 1) || m.get(j, i) > m.get(j + 1, i) {
                    return Err(Error::InvalidWeights(format!("matrix {m} is not weakly increasing")));
                }
            }
        }
        Ok(m)
    }

    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.0[i][j]
    }

    pub fn rows(&self) -> [[u32; 3]; 3] {
        self.0
    }

    pub fn transpose(&self) -> WeightMatrix {
        let m = self.0;
        WeightMatrix([[m[0][0], m[1][0], m[2][0]], [m[0][1], m[1][1], m[2][1]], [m[0][2], m[1][2], m[2][2]]])
    }

    /// The nine degrees as a sorted multiset.
    pub fn degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.0.iter().flatten().copied().collect();
        d.sort_unstable();
        d
    }

    /// The weight data in gauge a1 = 0, u = 0 realizing this matrix.
    pub fn weight_data(&self) -> Result<WeightData> {
        let m = self.0.map(|r| r.map(|x| x as i64));
        let a = [0, m[1][0] - m[0][0], m[2][0] - m[0][0]];
        WeightData::from_ints(a, m[0])
    }
}

impl fmt::Display for WeightMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let rows: Vec<String> = self.0.iter().map(|r| format!("{},{},{}", r[0], r[1], r[2])).collect();
        write!(f, "{}", rows.join(" / "))
    }
}

/// Hilbert numerator of the weighted P2xP2 with data `w`.
pub fn szendroi_numerator<C: Coefficient>(w: &WeightData) -> Result<Polynomial<C>> {
    let a = w.a.map(Half::doubled);
    let b = w.b.map(Half::doubled);
    let u = w.u.doubled();
    let s: i64 = a.iter().sum::<i64>() + b.iter().sum::<i64>();
    let mut acc: BTreeMap<i64, i64> = BTreeMap::new();
    let mut put = |e: i64, c: i64| *acc.entry(e).or_insert(0) += c;
    put(0, 1);
    for &ai in &a {
        for &bj in &b {
            put(2 * u + s - ai - bj, -1);
            put(4 * u + s + ai + bj, -1);
        }
    }
    put(3 * u + s, 4);
    for i in 0..3 {
        for j in 0..3 {
            if i != j {
                put(3 * u + s + a[j] - a[i], 1);
                put(3 * u + s + b[j] - b[i], 1);
            }
        }
    }
    put(6 * u + 2 * s, 1);
    let mut p = Polynomial::zero();
    for (e2, c) in acc {
        if c == 0 {
            continue;
        }
        if e2 < 0 || e2 % 2 != 0 {
            return Err(Error::BadExponent(Half::from_doubled(e2).to_string()));
        }
        p.add_term((e2 / 2) as u32, C::from(c as i32));
    }
    Ok(p)
}

/// Szendroi numerator over the nine matrix degrees.
pub fn key_series<C: Coefficient>(w: &WeightData) -> Result<Series<C>> {
    let num = szendroi_numerator(w)?;
    let den = Denominator::new(w.weight_matrix().degrees())?;
    Ok(Series::new(num, den))
}

/// 2 x 6 matrix whose columns are the bidegrees of u1, u2, u3, v1, v2, v3.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug, Serialize, Deserialize)]
pub struct CoxBigrading {
    pub rows: [[i64; 6]; 2],
}

pub const COX_VARIABLES: [&str; 6] = ["u1", "u2", "u3", "v1", "v2", "v3"];

impl CoxBigrading {
    pub fn column(&self, j: usize) -> (i64, i64) {
        (self.rows[0][j], self.rows[1][j])
    }

    /// Bidegrees of the nine products u_i v_j.
    pub fn segre_degrees(&self) -> [[(i64, i64); 3]; 3] {
        let mut out = [[(0, 0); 3]; 3];
        for (i, row) in out.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate() {
                let (p, q) = (self.column(i), self.column(3 + j));
                *cell = (p.0 + q.0, p.1 + q.1);
            }
        }
        out
    }
}

impl fmt::Display for CoxBigrading {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let row = |r: &[i64; 6]| r.iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",");
        write!(f, "({}) / ({})", row(&self.rows[0]), row(&self.rows[1]))
    }
}

/// Rows from the two gauges a1 = 0 and b1 = 0 of the weight matrix.
pub fn cox_bigrading(w: &WeightData) -> CoxBigrading {
    let m = w.weight_matrix().0.map(|r| r.map(|x| x as i64));
    let top = [0, m[1][0] - m[0][0], m[2][0] - m[0][0], m[0][0], m[0][1], m[0][2]];
    let bottom = [m[0][0], m[1][0], m[2][0], 0, m[0][1] - m[0][0], m[0][2] - m[0][0]];
    CoxBigrading { rows: [top, bottom] }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "move", rename_all = "snake_case")]
pub enum WellformMove {
    /// Every entry divisible by `factor`.
    DivideAll { factor: i64 },
    /// Replace a generator by its `factor`-th power.
    PowerColumn { column: usize, factor: i64 },
}

impl fmt::Display for WellformMove {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            WellformMove::DivideAll { factor } => write!(f, "divide all entries by {factor}"),
            WellformMove::PowerColumn { column, factor } => {
                let v = COX_VARIABLES[column];
                write!(f, "replace {v} by {v}^{factor}")
            }
        }
    }
}

#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Wellformed {
    pub bigrading: CoxBigrading,
    pub moves: Vec<WellformMove>,
    /// Set when a generator was replaced by a power, which loses the P2xP2
    /// structure.
    pub breaks_segre: bool,
}

fn gcd_all<'a>(it: impl Iterator<Item = &'a i64>) -> i64 {
    it.fold(0i64, |g, &x| g.gcd(&x))
}

pub fn wellform(c: &CoxBigrading) -> Wellformed {
    let mut rows = c.rows;
    let mut moves = Vec::new();
    loop {
        let g = gcd_all(rows.iter().flatten());
        if g > 1 {
            for r in rows.iter_mut() {
                for x in r.iter_mut() {
                    *x /= g;
                }
            }
            moves.push(WellformMove::DivideAll { factor: g });
            continue;
        }
        let found = (0..6).find_map(|j| {
            let others = rows.iter().flat_map(|r| r.iter().enumerate().filter(move |(i, _)| *i != j).map(|(_, x)| x));
            let n = gcd_all(others);
            (n > 1).then_some((j, n))
        });
        match found {
            Some((j, n)) => {
                for r in rows.iter_mut() {
                    r[j] *= n;
                }
                moves.push(WellformMove::PowerColumn { column: j, factor: n });
            }
            None => break,
        }
    }
    let breaks_segre = moves.iter().any(|m| matches!(m, WellformMove::PowerColumn { .. }));
    Wellformed { bigrading: CoxBigrading { rows }, moves, breaks_segre }
}
