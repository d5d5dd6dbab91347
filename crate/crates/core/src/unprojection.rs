//! Degree bookkeeping for Type I projections: 5 x 5 skew Pfaffian formats,
//! Tom and Jerry patterns, node counts and Euler characteristics.
//!
//! Matrix indices in this module are 1-based, as in Tom_3 or Jer_{4,5}.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use itertools::Itertools;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::fano_model::FanoModel;
use crate::key_variety::{fmt_halves, Half};
use crate::series::{Coefficient, Denominator, Polynomial, Series};

/// Graded 5 x 5 skew matrix: entry (i, j) has degree w_i + w_j.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct SkewPfaffianData {
    pub row_weights: [Half; 5],
    /// Entries (i, j), i < j, that are identically zero.
    pub zero_entries: BTreeSet<(usize, usize)>,
    pub ambient_weights: Vec<u32>,
}

fn pairs() -> impl Iterator<Item = (usize, usize)> {
    (1..=5).tuple_combinations()
}

impl SkewPfaffianData {
    pub fn new(
        row_weights: [Half; 5],
        zero_entries: BTreeSet<(usize, usize)>,
        ambient_weights: Vec<u32>,
    ) -> Result<Self> {
        for (i, j) in pairs() {
            let d = row_weights[i - 1] + row_weights[j - 1];
            if !d.is_integer() {
                return Err(Error::InvalidWeights(format!("entry ({i},{j}) has degree {d}")));
            }
        }
        if let Some(&(i, j)) = zero_entries.iter().find(|&&(i, j)| !(1 <= i && i < j && j <= 5)) {
            return Err(Error::InvalidWeights(format!("bad zero entry ({i},{j})")));
        }
        Ok(SkewPfaffianData { row_weights, zero_entries, ambient_weights })
    }

    /// Recovers row weights from the ten entry degrees d_{ij}, i < j.
    pub fn from_degrees(
        degrees: &BTreeMap<(usize, usize), i64>,
        zero_entries: BTreeSet<(usize, usize)>,
        ambient_weights: Vec<u32>,
    ) -> Result<Self> {
        let d = |i: usize, j: usize| -> Result<i64> {
            degrees.get(&(i, j)).copied().ok_or_else(|| Error::InvalidWeights(format!("missing degree ({i},{j})")))
        };
        let w1 = Half::from_doubled(d(1, 2)? + d(1, 3)? - d(2, 3)?);
        let mut w = [w1; 5];
        for j in 2..=5 {
            w[j - 1] = Half::from_int(d(1, j)?) - w1;
        }
        for (i, j) in pairs() {
            if w[i - 1] + w[j - 1] != Half::from_int(d(i, j)?) {
                return Err(Error::Inconsistent(format!("degree of entry ({i},{j}) does not fit w_i + w_j")));
            }
        }
        Self::new(w, zero_entries, ambient_weights)
    }

    pub fn entry_degree(&self, i: usize, j: usize) -> i64 {
        (self.row_weights[i - 1] + self.row_weights[j - 1]).to_integer().expect("validated")
    }

    pub fn is_zero(&self, i: usize, j: usize) -> bool {
        self.zero_entries.contains(&(i.min(j), i.max(j)))
    }

    /// Degree of the top syzygy, 2 * sum(w).
    pub fn adjunction(&self) -> i64 {
        self.row_weights.iter().map(|h| h.doubled()).sum()
    }

    /// Degree table in upper triangular form, zero entries in brackets.
    pub fn degree_display(&self) -> String {
        (1..5)
            .map(|i| {
                (i + 1..=5)
                    .map(|j| {
                        let d = self.entry_degree(i, j);
                        if self.is_zero(i, j) {
                            format!("({d})")
                        } else {
                            d.to_string()
                        }
                    })
                    .join(" ")
            })
            .join(" / ")
    }
}

impl fmt::Display for SkewPfaffianData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w=({}) degrees {}", fmt_halves(&self.row_weights), self.degree_display())
    }
}

/// Degree of the Pfaffian omitting row and column i, in index order.
pub fn pfaffian_degrees(s: &SkewPfaffianData) -> [i64; 5] {
    let total: Half = s.row_weights.iter().copied().sum();
    s.row_weights.map(|w| (total - w).to_integer().expect("sums of four weights are integral"))
}

/// Hilbert numerator of the codimension 3 Pfaffian ring.
pub fn pfaffian_numerator<C: Coefficient>(s: &SkewPfaffianData) -> Result<Polynomial<C>> {
    let k = s.adjunction();
    let mut terms = vec![(0, 1), (k, -1)];
    for d in pfaffian_degrees(s) {
        terms.push((d, -1));
        terms.push((k - d, 1));
    }
    let p = collect(terms)?;
    if p.is_zero() {
        return Err(Error::Degenerate("all Pfaffians have degree 0".into()));
    }
    Ok(p)
}

fn collect<C: Coefficient>(terms: Vec<(i64, i32)>) -> Result<Polynomial<C>> {
    let mut acc: BTreeMap<i64, i32> = BTreeMap::new();
    for (e, c) in terms {
        *acc.entry(e).or_insert(0) += c;
    }
    let mut p = Polynomial::zero();
    for (e, c) in acc.into_iter().filter(|&(_, c)| c != 0) {
        if e < 0 {
            return Err(Error::BadExponent(e.to_string()));
        }
        p.add_term(e as u32, C::from(c));
    }
    Ok(p)
}

/// Result of eliminating the variable carried by a point of index r.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct Projection {
    /// 1-based (row, column) of the deleted entry in the degree matrix.
    pub entry: (usize, usize),
    pub carrier_weight: u32,
    pub skew: SkewPfaffianData,
}

/// Smallest degree table among the relabellings that keep (1,2), (4,5) zero
/// and row 3 in place.
fn relabel(s: SkewPfaffianData) -> SkewPfaffianData {
    let perms = [[0, 1, 2, 3, 4], [1, 0, 2, 3, 4], [0, 1, 2, 4, 3], [1, 0, 2, 4, 3]];
    let key = |w: &[Half; 5]| pairs().map(|(i, j)| (w[i - 1] + w[j - 1]).doubled()).collect::<Vec<_>>();
    perms
        .iter()
        .flat_map(|p| {
            let w = p.map(|i| s.row_weights[i]);
            [w, [w[3], w[4], w[2], w[0], w[1]]]
        })
        .min_by_key(key)
        .map(|row_weights| SkewPfaffianData { row_weights, ..s })
        .expect("nonempty")
}

/// Deletes an entry of degree `carrier_weight` from the transposed degree
/// matrix and mounts the other eight entries in a 5 x 5 skew matrix.
///
/// With the deleted entry in row p, column q of the transpose, the other two
/// rows fill rows 1 and 2 of N (columns ordered q, q', q''), the rest of
/// row p fills entries (3,4) and (3,5), and entries (1,2) and (4,5) are zero.
/// Entries of the carrier degree in one row or column of the matrix are
/// equivalent under row and column operations; the projection is refused when
/// the candidates give different skew data.
pub fn project_type_one(m: &FanoModel, carrier_weight: u32) -> Result<Projection> {
    if !m.weights.contains(&carrier_weight) {
        return Err(Error::NoProjection(format!("no ambient variable of weight {carrier_weight}")));
    }
    let mt = m.degree_matrix.transpose();
    let mut ambient = m.weights.clone();
    let pos = ambient.iter().position(|&w| w == carrier_weight).expect("checked above");
    ambient.remove(pos);
    let mut candidates: Vec<Projection> = Vec::new();
    for (p, q) in (0..3).cartesian_product(0..3) {
        if mt.get(p, q) != carrier_weight {
            continue;
        }
        let other_rows: Vec<usize> = (0..3).filter(|&r| r != p).collect();
        let other_cols: Vec<usize> = (0..3).filter(|&c| c != q).collect();
        let cols = [q, other_cols[0], other_cols[1]];
        let mut degrees = BTreeMap::new();
        for (n, &r) in other_rows.iter().enumerate() {
            for (c, &col) in cols.iter().enumerate() {
                degrees.insert((n + 1, c + 3), mt.get(r, col) as i64);
            }
        }
        degrees.insert((3, 4), mt.get(p, cols[1]) as i64);
        degrees.insert((3, 5), mt.get(p, cols[2]) as i64);
        // w3 is half the carrier degree, which fixes the two zero entries
        let c = carrier_weight as i64;
        degrees.insert((1, 2), degrees[&(1, 3)] + degrees[&(2, 3)] - c);
        degrees.insert((4, 5), degrees[&(3, 4)] + degrees[&(3, 5)] - c);
        let zeros: BTreeSet<(usize, usize)> = [(1, 2), (4, 5)].into_iter().collect();
        let skew = relabel(SkewPfaffianData::from_degrees(&degrees, zeros, ambient.clone())?);
        candidates.push(Projection { entry: (q + 1, p + 1), carrier_weight, skew });
    }
    let first = candidates
        .first()
        .cloned()
        .ok_or_else(|| Error::NoProjection(format!("no matrix entry of degree {carrier_weight}")))?;
    let shape = |pr: &Projection| {
        let mut w = pr.skew.row_weights.to_vec();
        w.sort();
        let mut z: Vec<(i64, i64)> = pr
            .skew
            .zero_entries
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (pr.skew.row_weights[i - 1].doubled(), pr.skew.row_weights[j - 1].doubled());
                (a.min(b), a.max(b))
            })
            .collect();
        z.sort();
        (w, z)
    };
    if candidates.iter().any(|c| shape(c) != shape(&first)) {
        return Err(Error::NoProjection(format!("entries of degree {carrier_weight} give inequivalent skew matrices")));
    }
    Ok(first)
}

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum PatternKind {
    Tom { i: usize },
    Jerry { i: usize, j: usize },
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PatternKind::Tom { i } => write!(f, "Tom_{i}"),
            PatternKind::Jerry { i, j } => write!(f, "Jer_{i},{j}"),
        }
    }
}

/// Which entries of N are required to lie in the ideal of the plane D.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct TomJerryPattern {
    pub kind: PatternKind,
    /// Weights of the generators of I_D.
    pub ideal_weights: Vec<u32>,
}

impl TomJerryPattern {
    pub fn tom(i: usize, ideal_weights: Vec<u32>) -> Self {
        TomJerryPattern { kind: PatternKind::Tom { i }, ideal_weights }
    }

    pub fn jerry(i: usize, j: usize, ideal_weights: Vec<u32>) -> Self {
        TomJerryPattern { kind: PatternKind::Jerry { i: i.min(j), j: i.max(j) }, ideal_weights }
    }

    pub fn marks(&self, a: usize, b: usize) -> bool {
        match self.kind {
            PatternKind::Tom { i } => a != i && b != i,
            PatternKind::Jerry { i, j } => [a, b].iter().any(|x| *x == i || *x == j),
        }
    }
}

fn in_semigroup(gens: &[u32], target: i64) -> bool {
    if target < 0 {
        return false;
    }
    let target = target as usize;
    let mut ok = vec![false; target + 1];
    ok[0] = true;
    for n in 1..=target {
        ok[n] = gens.iter().any(|&g| g as usize <= n && ok[n - g as usize]);
    }
    ok[target]
}

/// Number of maximal Pfaffians forced into I_D^2 by the pattern.
pub fn pfaffians_in_ideal_square(s: &SkewPfaffianData, p: &TomJerryPattern) -> usize {
    let in_ideal = |a: usize, b: usize| s.is_zero(a, b) || p.marks(a, b);
    let product_in_square = |e: (usize, usize), f: (usize, usize)| {
        s.is_zero(e.0, e.1) || s.is_zero(f.0, f.1) || (in_ideal(e.0, e.1) && in_ideal(f.0, f.1))
    };
    (1..=5)
        .filter(|&omit| {
            let idx: Vec<usize> = (1..=5).filter(|&x| x != omit).collect();
            let [a, b, c, d] = [idx[0], idx[1], idx[2], idx[3]];
            product_in_square((a, b), (c, d)) && product_in_square((a, c), (b, d)) && product_in_square((a, d), (b, c))
        })
        .count()
}

/// Whether the marked entries can lie in I_D and D is not forced into the
/// singular locus of Y (at most one Pfaffian in I_D^2).
pub fn pattern_feasible(s: &SkewPfaffianData, p: &TomJerryPattern) -> bool {
    let ambient: &[u32] = if s.ambient_weights.is_empty() { &[1] } else { &s.ambient_weights };
    let degrees_ok = pairs().filter(|&(i, j)| p.marks(i, j) && !s.is_zero(i, j)).all(|(i, j)| {
        let d = s.entry_degree(i, j);
        p.ideal_weights.iter().any(|&g| in_semigroup(ambient, d - g as i64))
    });
    degrees_ok && pfaffians_in_ideal_square(s, p) <= 1
}

/// Numerator of the ideal of maximal minors of a 3 x 4 matrix whose entry
/// (i, j) has degree r_i + c_j.
pub fn hilbert_burch_numerator<C: Coefficient>(rows: [Half; 3], cols: [Half; 4]) -> Result<Polynomial<C>> {
    for r in rows {
        for c in cols {
            let d = r + c;
            if !d.is_integer() || d.doubled() <= 0 {
                return Err(Error::InvalidWeights(format!("entry degree {d} is not a positive integer")));
            }
        }
    }
    let sigma: Half = rows.iter().chain(cols.iter()).copied().sum();
    let exp = |h: Half| h.to_integer().ok_or_else(|| Error::BadExponent(h.to_string()));
    let mut terms = vec![(0, 1)];
    for c in cols {
        terms.push((exp(sigma - c)?, -1));
    }
    for r in rows {
        terms.push((exp(sigma + r)?, 1));
    }
    collect(terms)
}

/// Length of the zero-dimensional locus with the given numerator and ambient.
pub fn node_count<C: Coefficient>(numerator: &Polynomial<C>, ambient: &Denominator) -> Result<C> {
    Series::new(numerator.clone(), ambient.clone()).reduced_value_at_one()
}

/// Topological Euler characteristic of a smooth complete intersection 3-fold
/// of the given degrees in P^n.
pub fn ci_euler(n: usize, degrees: &[i64]) -> Result<i64> {
    if n < degrees.len() || n - degrees.len() != 3 {
        return Err(Error::Inconsistent(format!("P^{n} cut by {} equations is not a 3-fold", degrees.len())));
    }
    // c(X) = (1+h)^(n+1) / prod(1 + d h), truncated after h^3
    let mut series = [0i128; 4];
    let mut binom = 1i128;
    for (k, s) in series.iter_mut().enumerate() {
        *s = binom;
        binom = binom * (n as i128 + 1 - k as i128) / (k as i128 + 1);
    }
    for &d in degrees {
        let d = d as i128;
        for k in 1..4 {
            series[k] -= d * series[k - 1];
        }
    }
    let product: i128 = degrees.iter().map(|&d| d as i128).product();
    i64::try_from(product * series[3]).map_err(|_| Error::Inconsistent("Euler number overflows".into()))
}

/// e(X) = e(Y) + 2N - 2 for the unprojection of a nodal Y with N nodes.
pub fn euler_ledger(e_y_gen: i64, nodes: i64) -> i64 {
    e_y_gen + 2 * nodes - 2
}

/// Weight of the unprojection variable for a plane D = P(a_0, ..., a_d).
/// When given, `k_y` is checked against k_Y - k_D = sum(a) - 1 with
/// k_D = -sum(a).
pub fn unprojection_degree(k_y: Option<i64>, plane_weights: &[u32]) -> Result<i64> {
    if plane_weights.is_empty() || plane_weights.contains(&0) {
        return Err(Error::InvalidWeights("plane weights must be positive".into()));
    }
    let total: i64 = plane_weights.iter().map(|&a| a as i64).sum();
    let b = total - 1;
    if let Some(k_y) = k_y {
        let k_d = -total;
        if k_y - k_d != b {
            return Err(Error::Inconsistent(format!("k_Y - k_D = {} but sum(a) - 1 = {b}", k_y - k_d)));
        }
    }
    Ok(b)
}

/// Series of the unprojection X of Y along D, adjoining a variable of weight r:
/// P_X = P_Y + t^r / ((1 - t^r) prod_D (1 - t^a)).
pub fn unprojected_series<C: Coefficient>(py: &Series<C>, r: u32, plane_weights: &[u32]) -> Result<Series<C>> {
    let mut extra = vec![r];
    extra.extend_from_slice(plane_weights);
    let mut num = py.numerator.clone();
    for &w in &extra {
        num = num.mul_one_minus(w);
    }
    let mut tail = Polynomial::monomial(r, C::one());
    for &w in py.denominator.weights() {
        tail = tail.mul_one_minus(w);
    }
    let mut den: Vec<u32> = py.denominator.weights().to_vec();
    den.extend(extra);
    Ok(Series::new(&num + &tail, Denominator::new(den)?).normalized())
}

/// One row of the Euler bookkeeping e(X) = e(Y_gen) + 2N - 2.
#[derive(Clone, PartialEq, Eq, Debug, Serialize, Deserialize)]
pub struct UnprojectionLedger {
    pub e_y_gen: i64,
    pub nodes: i64,
    pub e_x: i64,
    pub unprojection_degree: i64,
}

impl UnprojectionLedger {
    pub fn new(e_y_gen: i64, nodes: i64, unprojection_degree: i64) -> Self {
        UnprojectionLedger { e_y_gen, nodes, e_x: euler_ledger(e_y_gen, nodes), unprojection_degree }
    }

    pub fn is_consistent(&self) -> bool {
        self.e_x == euler_ledger(self.e_y_gen, self.nodes)
    }
}
