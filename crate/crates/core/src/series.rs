//! Integer polynomials and rational functions of the form N(t) / prod (1 - t^w).

use std::collections::BTreeMap;
use std::fmt;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::Signed;

use crate::error::{Error, Result};

/// Scalar type usable as a polynomial coefficient.
pub trait Coefficient:
    Clone + fmt::Debug + fmt::Display + Eq + Ord + Hash + Signed + From<i32> + Send + Sync + 'static
{
}

impl<T> Coefficient for T where
    T: Clone + fmt::Debug + fmt::Display + Eq + Ord + Hash + Signed + From<i32> + Send + Sync + 'static
{
}

/// Sparse univariate polynomial; zero coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Polynomial<C> {
    terms: BTreeMap<u32, C>,
}

impl<C> Default for Polynomial<C> {
    fn default() -> Self {
        Polynomial { terms: BTreeMap::new() }
    }
}

impl<C: Coefficient> Polynomial<C> {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, C::one())
    }

    pub fn monomial(exp: u32, coeff: C) -> Self {
        let mut p = Self::zero();
        p.add_term(exp, coeff);
        p
    }

    /// Builds from (exponent, coefficient) pairs, summing repeated exponents.
    pub fn from_terms<I: IntoIterator<Item = (u32, C)>>(terms: I) -> Self {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c);
        }
        p
    }

    /// Builds from dense coefficients, lowest degree first.
    pub fn from_coeffs<I: IntoIterator<Item = C>>(coeffs: I) -> Self {
        Self::from_terms(coeffs.into_iter().enumerate().map(|(i, c)| (i as u32, c)))
    }

    pub fn add_term(&mut self, exp: u32, coeff: C) {
        if coeff.is_zero() {
            return;
        }
        let slot = self.terms.entry(exp).or_insert_with(C::zero);
        *slot = slot.clone() + coeff;
        if slot.is_zero() {
            self.terms.remove(&exp);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (u32, &C)> + '_ {
        self.terms.iter().map(|(e, c)| (*e, c))
    }

    pub fn coeff(&self, exp: u32) -> C {
        self.terms.get(&exp).cloned().unwrap_or_else(C::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree(&self) -> Option<u32> {
        self.terms.keys().next_back().copied()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Dense coefficient vector from t^0 up to the degree (empty for zero).
    pub fn to_dense(&self) -> Vec<C> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).map(|e| self.coeff(e)).collect(),
        }
    }

    pub fn eval_at_one(&self) -> C {
        self.terms.values().fold(C::zero(), |acc, c| acc + c.clone())
    }

    /// Multiplies by (1 - t^w).
    pub fn mul_one_minus(&self, w: u32) -> Self {
        let mut out = self.clone();
        for (e, c) in self.terms() {
            out.add_term(e + w, -c.clone());
        }
        out
    }

    /// Exact quotient by (1 - t^w), or `None` if (1 - t^w) does not divide.
    pub fn div_one_minus(&self, w: u32) -> Option<Self> {
        assert!(w > 0, "division by 1 - t^0");
        let d = match self.degree() {
            None => return Some(Self::zero()),
            Some(d) => d as usize,
        };
        let w = w as usize;
        if d < w {
            return None;
        }
        let mut q: Vec<C> = Vec::with_capacity(d + 1);
        for i in 0..=d {
            let mut c = self.coeff(i as u32);
            if i >= w {
                c = c + q[i - w].clone();
            }
            q.push(c);
        }
        if q[d - w + 1..].iter().any(|c| !c.is_zero()) {
            return None;
        }
        q.truncate(d - w + 1);
        Some(Self::from_coeffs(q))
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Polynomial<D> {
        Polynomial::from_terms(self.terms().map(|(e, c)| (e, f(c))))
    }

    /// Reports whether c_i = eps * c_{d-i} for all i and some sign eps.
    pub fn symmetry(&self) -> Result<Symmetry> {
        let d = self.degree().ok_or(Error::ZeroPolynomial)?;
        let fits = |eps: &C| (0..=d).all(|i| self.coeff(i) == eps.clone() * self.coeff(d - i));
        let sign = if fits(&C::one()) {
            Some(1)
        } else if fits(&(-C::one())) {
            Some(-1)
        } else {
            None
        };
        Ok(Symmetry { palindromic: sign.is_some(), sign, degree: d })
    }
}

/// Outcome of the palindromic test on a numerator.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Symmetry {
    pub palindromic: bool,
    pub sign: Option<i8>,
    pub degree: u32,
}

impl<C: Coefficient> Add for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn add(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, c.clone());
        }
        out
    }
}

impl<C: Coefficient> Sub for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn sub(self, rhs: Self) -> Polynomial<C> {
        let mut out = self.clone();
        for (e, c) in rhs.terms() {
            out.add_term(e, -c.clone());
        }
        out
    }
}

impl<C: Coefficient> Neg for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn neg(self) -> Polynomial<C> {
        self.map_coeffs(|c| -c.clone())
    }
}

impl<C: Coefficient> Mul for &Polynomial<C> {
    type Output = Polynomial<C>;
    fn mul(self, rhs: Self) -> Polynomial<C> {
        let mut out = Polynomial::zero();
        for (e1, c1) in self.terms() {
            for (e2, c2) in rhs.terms() {
                out.add_term(e1 + e2, c1.clone() * c2.clone());
            }
        }
        out
    }
}

impl<C: Coefficient> fmt::Display for Polynomial<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (e, c)) in self.terms().enumerate() {
            let neg = c.is_negative();
            let abs = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let unit = abs.is_one();
            if e == 0 {
                write!(f, "{abs}")?;
                continue;
            }
            if !unit {
                write!(f, "{abs}")?;
            }
            if e == 1 {
                write!(f, "t")?;
            } else {
                write!(f, "t^{e}")?;
            }
        }
        Ok(())
    }
}

/// Multiset of weights w, each standing for a factor (1 - t^w). Kept sorted.
#[derive(Clone, PartialEq, Eq, Hash, Debug, Default)]
pub struct Denominator {
    weights: Vec<u32>,
}

impl Denominator {
    pub fn new<I: IntoIterator<Item = u32>>(weights: I) -> Result<Self> {
        let mut weights: Vec<u32> = weights.into_iter().collect();
        if weights.contains(&0) {
            return Err(Error::ZeroWeight);
        }
        weights.sort_unstable();
        Ok(Denominator { weights })
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    fn insert(&mut self, w: u32) {
        let at = self.weights.partition_point(|&x| x < w);
        self.weights.insert(at, w);
    }

    fn remove(&mut self, w: u32) -> bool {
        match self.weights.binary_search(&w) {
            Ok(i) => {
                self.weights.remove(i);
                true
            }
            Err(_) => false,
        }
    }
}

impl fmt::Display for Denominator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.weights.is_empty() {
            return write!(f, "1");
        }
        for (w, n) in multiset_counts(&self.weights) {
            let base = if w == 1 { "(1-t)".to_string() } else { format!("(1-t^{w})") };
            if n == 1 {
                write!(f, "{base}")?;
            } else {
                write!(f, "{base}^{n}")?;
            }
        }
        Ok(())
    }
}

/// Distinct values of a sorted slice with multiplicities.
pub fn multiset_counts(sorted: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &w in sorted {
        match out.last_mut() {
            Some((v, n)) if *v == w => *n += 1,
            _ => out.push((w, 1)),
        }
    }
    out
}

/// Multiset difference `a \ b` of two sorted slices.
pub fn multiset_difference(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::new();
    let mut j = 0;
    for &x in a {
        while j < b.len() && b[j] < x {
            j += 1;
        }
        if j < b.len() && b[j] == x {
            j += 1;
        } else {
            out.push(x);
        }
    }
    out
}

/// Hilbert series N(t) / prod (1 - t^w).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Series<C> {
    pub numerator: Polynomial<C>,
    pub denominator: Denominator,
}

impl<C: Coefficient> Series<C> {
    pub fn new(numerator: Polynomial<C>, denominator: Denominator) -> Self {
        Series { numerator, denominator }
    }

    /// First `n_terms` coefficients of the power series expansion.
    pub fn expand(&self, n_terms: usize) -> Vec<C> {
        let mut c: Vec<C> = (0..n_terms).map(|i| self.numerator.coeff(i as u32)).collect();
        for &w in self.denominator.weights() {
            let w = w as usize;
            for i in w..n_terms {
                let prev = c[i - w].clone();
                c[i] = c[i].clone() + prev;
            }
        }
        c
    }

    /// Cancels every factor (1 - t^w) that divides the numerator, largest
    /// weights first.
    pub fn normalized(&self) -> Self {
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        loop {
            let mut changed = false;
            let mut distinct: Vec<u32> = den.weights().to_vec();
            distinct.dedup();
            for &w in distinct.iter().rev() {
                while den.weights().binary_search(&w).is_ok() {
                    match num.div_one_minus(w) {
                        Some(q) => {
                            num = q;
                            den.remove(w);
                            changed = true;
                        }
                        None => break,
                    }
                }
            }
            if !changed {
                break;
            }
        }
        Series::new(num, den)
    }

    /// Multiplies by prod (1 - t^d) over `multiply` and divides by
    /// prod (1 - t^c) over `divide`, cancelling against the denominator where
    /// a weight matches.
    pub fn scaled(&self, multiply: &[u32], divide: &[u32]) -> Result<Self> {
        if multiply.contains(&0) || divide.contains(&0) {
            return Err(Error::ZeroWeight);
        }
        let mut num = self.numerator.clone();
        let mut den = self.denominator.clone();
        for &c in divide {
            den.insert(c);
        }
        for &d in multiply {
            if !den.remove(d) {
                num = num.mul_one_minus(d);
            }
        }
        Ok(Series::new(num, den))
    }

    /// Equality as rational functions, by cross-multiplying the unmatched
    /// denominator factors.
    pub fn same_function(&self, other: &Self) -> bool {
        let only_self = multiset_difference(self.denominator.weights(), other.denominator.weights());
        let only_other = multiset_difference(other.denominator.weights(), self.denominator.weights());
        let mut lhs = self.numerator.clone();
        for &w in &only_other {
            lhs = lhs.mul_one_minus(w);
        }
        let mut rhs = other.numerator.clone();
        for &w in &only_self {
            rhs = rhs.mul_one_minus(w);
        }
        lhs == rhs
    }

    /// Numerator at t = 1 once the series is reduced to N(t) / (1 - t); this
    /// is the length of a zero-dimensional scheme.
    pub fn reduced_value_at_one(&self) -> Result<C> {
        let s = self.normalized();
        if s.denominator.weights() != [1] {
            return Err(Error::DimensionMismatch(s.denominator.weights().to_vec()));
        }
        Ok(s.numerator.eval_at_one())
    }

    pub fn map_coeffs<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> Series<D> {
        Series::new(self.numerator.map_coeffs(f), self.denominator.clone())
    }
}

impl<C: Coefficient> fmt::Display for Series<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.denominator.is_empty() {
            write!(f, "{}", self.numerator)
        } else {
            write!(f, "({}) / {}", self.numerator, self.denominator)
        }
    }
}
