//! Screening of the points of X with nontrivial stabilizer.
//!
//! For every set T of ambient coordinates whose weights share a factor
//! r >= 2, the torus stratum (x_i != 0 exactly for i in T) is examined. Each
//! matrix entry restricted to the stratum is zero, a single monomial, or a
//! general form. A point of X on the stratum has the matrix of rank <= 1 with
//! nonzero entries filling a rectangle S; the remaining general entries and
//! the minors inside S impose equations on the torus, whose solvability is
//! decided by Bernstein's criterion on their Newton polytopes. When the
//! stratum meets X, the Jacobian of the nine minors is evaluated at a random
//! specialization over a prime field and split by characters of mu_r to read
//! off the tangent representation.

use std::collections::BTreeSet;

use itertools::Itertools;
use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{terminal_quotient_check, FanoModel, QuotientPoint, Verdict};

const P: u64 = (1 << 61) - 1;
const TRIALS: u64 = 3;

type Cell = (usize, usize);
type Exponent = Vec<u32>;

fn cells() -> impl Iterator<Item = Cell> {
    (0..3).cartesian_product(0..3)
}

/// Exponent vectors over `weights` of total weighted degree `target`.
fn monomials(weights: &[u32], target: u32) -> Vec<Exponent> {
    fn rec(weights: &[u32], rem: u32, cur: &mut Exponent, out: &mut Vec<Exponent>) {
        match weights.split_first() {
            None => {
                if rem == 0 {
                    out.push(cur.clone());
                }
            }
            Some((&w, rest)) => {
                for e in 0..=rem / w {
                    cur.push(e);
                    rec(rest, rem - e * w, cur, out);
                    cur.pop();
                }
            }
        }
    }
    let mut out = Vec::new();
    rec(weights, target, &mut Vec::new(), &mut out);
    out
}

fn representable(weights: &[u32], target: i64) -> bool {
    target >= 0 && !monomials(weights, target as u32).is_empty()
}

/// Rank over Q of a list of integer vectors (fraction-free elimination).
fn rank_q(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let ncols = m.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..m.len()).find(|&i| m[i][c] != 0) else { continue };
        m.swap(rank, p);
        for i in rank + 1..m.len() {
            if m[i][c] == 0 {
                continue;
            }
            let (a, b) = (m[rank][c], m[i][c]);
            let mut g = 0i128;
            for j in 0..ncols {
                m[i][j] = m[i][j] * a - m[rank][j] * b;
                g = g.gcd(&m[i][j]);
            }
            if g > 1 {
                m[i].iter_mut().for_each(|x| *x /= g);
            }
        }
        rank += 1;
    }
    rank
}

/// Bernstein-type test that general polynomials with the given supports have
/// a common zero on an n-dimensional torus.
fn generically_solvable(supports: &[Vec<Exponent>], n: usize) -> bool {
    if supports.len() > n {
        return false;
    }
    (1..=supports.len()).all(|size| {
        supports.iter().combinations(size).all(|group| {
            let diffs: Vec<Vec<i64>> = group
                .iter()
                .flat_map(|sup| {
                    let base = &sup[0];
                    sup[1..].iter().map(move |e| e.iter().zip(base).map(|(&x, &y)| x as i64 - y as i64).collect())
                })
                .collect();
            rank_q(&diffs) >= size
        })
    })
}

fn mulmod(a: u64, b: u64) -> u64 {
    ((a as u128 * b as u128) % P as u128) as u64
}

fn addmod(a: u64, b: u64) -> u64 {
    (a + b) % P
}

fn submod(a: u64, b: u64) -> u64 {
    (a + P - b) % P
}

fn powmod(mut a: u64, mut e: u64) -> u64 {
    let mut r = 1;
    while e > 0 {
        if e & 1 == 1 {
            r = mulmod(r, a);
        }
        a = mulmod(a, a);
        e >>= 1;
    }
    r
}

fn rank_mod_p(mut rows: Vec<Vec<u64>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut rank = 0;
    for c in 0..ncols {
        let Some(p) = (rank..rows.len()).find(|&i| rows[i][c] != 0) else { continue };
        rows.swap(rank, p);
        let inv = powmod(rows[rank][c], P - 2);
        for i in 0..rows.len() {
            if i == rank || rows[i][c] == 0 {
                continue;
            }
            let f = mulmod(rows[i][c], inv);
            for j in 0..ncols {
                let t = mulmod(f, rows[rank][j]);
                rows[i][j] = submod(rows[i][j], t);
            }
        }
        rank += 1;
    }
    rank
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Kind {
    Zero,
    Unit,
    Free,
}

/// Rectangles R x C of matrix cells, plus the empty one.
fn rectangles() -> Vec<Vec<Cell>> {
    let subsets: Vec<Vec<usize>> = (1..=3).flat_map(|k| (0..3).combinations(k)).collect();
    let mut out = vec![Vec::new()];
    for rs in &subsets {
        for cs in &subsets {
            out.push(rs.iter().copied().cartesian_product(cs.iter().copied()).collect());
        }
    }
    out
}

struct Stratum<'a> {
    model: &'a FanoModel,
    t: Vec<usize>,
    r: u32,
    supports: [[Vec<Exponent>; 3]; 3],
}

impl Stratum<'_> {
    fn kind(&self, (i, j): Cell) -> Kind {
        match self.supports[i][j].len() {
            0 => Kind::Zero,
            1 => Kind::Unit,
            _ => Kind::Free,
        }
    }

    fn support(&self, (i, j): Cell) -> &[Exponent] {
        &self.supports[i][j]
    }

    /// Equations cutting the locus with nonzero pattern `rect` out of the torus.
    fn conditions(&self, rect: &[Cell]) -> Option<Vec<Vec<Exponent>>> {
        if rect.iter().any(|&c| self.kind(c) == Kind::Zero) {
            return None;
        }
        if cells().any(|c| self.kind(c) == Kind::Unit && !rect.contains(&c)) {
            return None;
        }
        let mut conds: Vec<Vec<Exponent>> = cells()
            .filter(|c| self.kind(*c) == Kind::Free && !rect.contains(c))
            .map(|c| self.support(c).to_vec())
            .collect();
        if let Some(&(i0, j0)) = rect.first() {
            let rows: BTreeSet<usize> = rect.iter().map(|c| c.0).collect();
            let cols: BTreeSet<usize> = rect.iter().map(|c| c.1).collect();
            for &k in rows.iter().skip(1) {
                for &l in cols.iter().skip(1) {
                    let mut sup: BTreeSet<Exponent> = BTreeSet::new();
                    for (p, q) in [((i0, j0), (k, l)), ((i0, l), (k, j0))] {
                        for x in self.support(p) {
                            for y in self.support(q) {
                                sup.insert(x.iter().zip(y).map(|(a, b)| a + b).collect());
                            }
                        }
                    }
                    conds.push(sup.into_iter().collect());
                }
            }
        }
        Some(conds)
    }

    /// Tangent characters of X at a general point with nonzero pattern `rect`.
    fn tangent(&self, rect: &[Cell], seed: u64) -> (usize, Vec<(u32, usize)>) {
        let amb = &self.model.weights;
        let m = &self.model.degree_matrix;
        let t_weights: Vec<u32> = self.t.iter().map(|&i| amb[i]).collect();
        let transverse: Vec<usize> = (0..amb.len()).filter(|i| !self.t.contains(i)).collect();
        let mut best: Option<(usize, Vec<(u32, usize)>)> = None;
        for trial in 0..TRIALS {
            let mut rng = ChaCha8Rng::seed_from_u64(seed.wrapping_mul(TRIALS).wrapping_add(trial));
            let u: Vec<u64> = (0..3).map(|_| rng.gen_range(1..P)).collect();
            let v: Vec<u64> = (0..3).map(|_| rng.gen_range(1..P)).collect();
            let mut val = [[0u64; 3]; 3];
            for &(i, j) in rect {
                val[i][j] = mulmod(u[i], v[j]);
            }
            let mut grad = [
                [Vec::new(), Vec::new(), Vec::new()],
                [Vec::new(), Vec::new(), Vec::new()],
                [Vec::new(), Vec::new(), Vec::new()],
            ];
            for (i, j) in cells() {
                let sup = self.support((i, j));
                let mut torus = vec![0u64; self.t.len()];
                if !sup.is_empty() {
                    let mut cs: Vec<u64> = (0..sup.len()).map(|_| rng.gen_range(1..P)).collect();
                    let partial = cs[..cs.len() - 1].iter().fold(0, |acc, &c| addmod(acc, c));
                    *cs.last_mut().unwrap() = submod(val[i][j], partial);
                    for (c, alpha) in cs.iter().zip(sup) {
                        for (q, &e) in alpha.iter().enumerate() {
                            torus[q] = addmod(torus[q], mulmod(*c, e as u64));
                        }
                    }
                }
                let d = m.get(i, j) as i64;
                for &y in &transverse {
                    let x = if representable(&t_weights, d - amb[y] as i64) { rng.gen_range(1..P) } else { 0 };
                    torus.push(x);
                }
                grad[i][j] = torus;
            }
            let ncols = amb.len();
            let mut rows: Vec<Vec<u64>> = Vec::new();
            for (i, k) in (0..3).tuple_combinations() {
                for (j, l) in (0..3).tuple_combinations() {
                    let (a, b, c, d) = ((i, j), (k, l), (i, l), (k, j));
                    let g = |e: Cell| &grad[e.0][e.1];
                    let vv = |e: Cell| val[e.0][e.1];
                    rows.push(
                        (0..ncols)
                            .map(|q| {
                                let plus = addmod(mulmod(vv(a), g(b)[q]), mulmod(vv(b), g(a)[q]));
                                let minus = addmod(mulmod(vv(c), g(d)[q]), mulmod(vv(d), g(c)[q]));
                                submod(plus, minus)
                            })
                            .collect(),
                    );
                }
            }
            let mut by_char: std::collections::BTreeMap<u32, Vec<usize>> = Default::default();
            for q in 0..ncols {
                let ch = if q < self.t.len() { 0 } else { amb[transverse[q - self.t.len()]] % self.r };
                by_char.entry(ch).or_default().push(q);
            }
            let mut total = 0;
            let mut kernel = Vec::new();
            for (ch, cols) in by_char {
                let sub: Vec<Vec<u64>> = rows.iter().map(|row| cols.iter().map(|&q| row[q]).collect()).collect();
                let rk = rank_mod_p(sub);
                total += rk;
                let dim = cols.len() - rk - usize::from(ch == 0);
                if dim > 0 {
                    kernel.push((ch, dim));
                }
            }
            if best.as_ref().is_none_or(|b| total > b.0) {
                best = Some((total, kernel));
            }
        }
        best.expect("at least one trial")
    }
}

/// Quotient points of X found stratum by stratum, deduplicated, together
/// with NOT_ON_X entries for coordinate points of weight >= 2 that miss X.
pub fn orbifold_screen(m: &FanoModel) -> Vec<QuotientPoint> {
    let amb = &m.weights;
    let n = amb.len();
    let rects = rectangles();
    let mut found: BTreeSet<QuotientPoint> = BTreeSet::new();
    let mut hit_coordinates: BTreeSet<u32> = BTreeSet::new();
    for size in 1..=n {
        for t in (0..n).combinations(size) {
            let r = t.iter().fold(0u32, |g, &i| g.gcd(&amb[i]));
            if r < 2 {
                continue;
            }
            let t_weights: Vec<u32> = t.iter().map(|&i| amb[i]).collect();
            let supports = [0, 1, 2].map(|i| [0, 1, 2].map(|j| monomials(&t_weights, m.degree_matrix.get(i, j))));
            let stratum = Stratum { model: m, t: t.clone(), r, supports };
            let dim = size - 1;
            for (ri, rect) in rects.iter().enumerate() {
                let Some(conds) = stratum.conditions(rect) else { continue };
                if !generically_solvable(&conds, dim) {
                    continue;
                }
                if size == 1 {
                    hit_coordinates.insert(amb[t[0]]);
                }
                let point = if rect.is_empty() {
                    QuotientPoint {
                        r,
                        local_weights: vec![],
                        verdict: Verdict::NonTerminal,
                        stratum: t_weights.clone(),
                        quasismooth: false,
                    }
                } else {
                    let seed = t.iter().fold(ri as u64, |acc, &i| acc * 31 + i as u64 + 1);
                    let (total, kernel) = stratum.tangent(rect, seed);
                    let zero_char = kernel.iter().any(|&(ch, _)| ch == 0);
                    let tangent: Vec<u32> = kernel.iter().flat_map(|&(ch, d)| std::iter::repeat_n(ch, d)).collect();
                    let (verdict, local_weights, quasismooth) = if total < 4 {
                        (Verdict::NonTerminal, vec![], false)
                    } else if zero_char {
                        (Verdict::NonTerminal, vec![], true)
                    } else if tangent.len() != 3 {
                        (Verdict::Unknown, tangent, true)
                    } else {
                        let w = [tangent[0] as i64, tangent[1] as i64, tangent[2] as i64];
                        let v = if terminal_quotient_check(r, w) { Verdict::Terminal } else { Verdict::NonTerminal };
                        (v, tangent, true)
                    };
                    QuotientPoint { r, local_weights, verdict, stratum: t_weights.clone(), quasismooth }
                };
                found.insert(point);
            }
        }
    }
    for (i, &w) in amb.iter().enumerate() {
        if w >= 2 && !hit_coordinates.contains(&w) && amb[..i].iter().all(|&x| x != w) {
            found.insert(QuotientPoint {
                r: w,
                local_weights: vec![],
                verdict: Verdict::NotOnX,
                stratum: vec![w],
                quasismooth: true,
            });
        }
    }
    found.into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fano_model::find_pullback;
    use crate::key_variety::WeightData;

    fn screen(a: [i64; 3], b: [i64; 3], amb: &[u32]) -> Vec<QuotientPoint> {
        let m = find_pullback(&WeightData::from_ints(a, b).unwrap(), amb).unwrap();
        orbifold_screen(&m).into_iter().filter(|p| p.verdict != Verdict::NotOnX).collect()
    }

    #[test]
    fn monomial_counts() {
        assert_eq!(monomials(&[2, 3], 6).len(), 2);
        assert_eq!(monomials(&[4], 6).len(), 0);
        assert_eq!(monomials(&[1, 1], 2).len(), 3);
    }

    #[test]
    fn rational_rank() {
        assert_eq!(rank_q(&[vec![1, 2], vec![2, 4]]), 1);
        assert_eq!(rank_q(&[vec![1, 2, 0], vec![0, 1, 1], vec![1, 3, 1]]), 2);
        assert_eq!(rank_q(&[]), 0);
    }

    #[test]
    fn single_half_point() {
        let pts = screen([0, 0, 0], [1, 1, 2], &[1, 1, 1, 1, 1, 1, 1, 2]);
        assert_eq!(pts.len(), 1);
        assert_eq!(pts[0].r, 2);
        assert_eq!(pts[0].local_weights, vec![1, 1, 1]);
        assert_eq!(pts[0].verdict, Verdict::Terminal);
    }
}
