use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Multivariate polynomial with exact integer coefficients. Exponent
/// vectors are kept in lexicographic order; zero coefficients are never
/// stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct SparseIntegerPolynomial {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigInt>,
}

impl SparseIntegerPolynomial {
    pub fn zero(nvars: usize) -> Self {
        SparseIntegerPolynomial { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c.into());
        p
    }

    pub fn variable(nvars: usize, i: usize) -> Self {
        Self::monomial(nvars, i, 1, 1)
    }

    /// `c · x_i^k`.
    pub fn monomial(nvars: usize, i: usize, k: u32, c: impl Into<BigInt>) -> Self {
        let mut e = vec![0; nvars];
        e[i] = k;
        let mut p = Self::zero(nvars);
        p.add_term(e, c.into());
        p
    }

    /// Rejects duplicate or wrongly sized exponents; drops zero coefficients.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u32>, BigInt)>) -> Result<Self> {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            if e.len() != nvars {
                return Err(Error::DimensionMismatch { expected: nvars, found: e.len() });
            }
            if p.terms.contains_key(&e) {
                return Err(Error::DuplicateExponent(e.iter().map(|&k| i64::from(k)).collect()));
            }
            if !c.is_zero() {
                p.terms.insert(e, c);
            }
        }
        Ok(p)
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(e) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Vec<u32>, &BigInt)> {
        self.terms.iter()
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn support(&self) -> Vec<Vec<u32>> {
        self.terms.keys().cloned().collect()
    }

    /// Total degrees of the terms, deduplicated.
    pub fn total_degrees(&self) -> Vec<u32> {
        let mut d: Vec<u32> = self.terms.keys().map(|e| e.iter().sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    /// Values of `Σ w_i e_i` over the terms, deduplicated.
    pub fn weighted_degrees(&self, weights: &[i64]) -> Vec<i64> {
        let mut d: Vec<i64> =
            self.terms.keys().map(|e| e.iter().zip(weights).map(|(&x, &w)| i64::from(x) * w).sum()).collect();
        d.sort_unstable();
        d.dedup();
        d
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        SparseIntegerPolynomial { nvars: self.nvars, terms: self.terms.iter().map(|(e, a)| (e.clone(), a * c)).collect() }
    }

    pub fn eval(&self, point: &[BigInt]) -> Result<BigInt> {
        if point.len() != self.nvars {
            return Err(Error::DimensionMismatch { expected: self.nvars, found: point.len() });
        }
        Ok(self
            .terms
            .iter()
            .map(|(e, c)| e.iter().zip(point).fold(c.clone(), |acc, (&k, x)| acc * num_traits::pow(x.clone(), k as usize)))
            .sum())
    }

    /// Exact quotient by `x_i`; fails if some term lacks `x_i`.
    pub fn divide_by_variable(&self, i: usize) -> Result<Self> {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] == 0 {
                return Err(Error::InexactDivision(format!("term {} is not divisible by a{i}", Self::format_term(e, c))));
            }
            let mut e = e.clone();
            e[i] -= 1;
            out.terms.insert(e, c.clone());
        }
        Ok(out)
    }

    /// Exact quotient by `d`, by lexicographic leading-term reduction.
    pub fn divide_exact(&self, d: &Self) -> Result<Self> {
        let (lead_e, lead_c) = d.terms.iter().next_back().ok_or_else(|| Error::InexactDivision("division by zero".into()))?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.nvars);
        while let Some((e, c)) = rem.terms.iter().next_back() {
            let (q, r) = c.div_rem(lead_c);
            if !r.is_zero() || e.iter().zip(lead_e).any(|(a, b)| a < b) {
                return Err(Error::InexactDivision(format!("leading term {} does not divide", Self::format_term(e, c))));
            }
            let qe: Vec<u32> = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            for (de, dc) in &d.terms {
                let te: Vec<u32> = qe.iter().zip(de).map(|(a, b)| a + b).collect();
                rem.add_term(te, -(dc * &q));
            }
            quot.add_term(qe, q);
        }
        Ok(quot)
    }

    fn format_term(e: &[u32], c: &BigInt) -> String {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &k)| k > 0)
            .map(|(i, &k)| if k == 1 { format!("a{i}") } else { format!("a{i}^{k}") })
            .collect();
        match (mono.is_empty(), c.is_one(), (-c).is_one()) {
            (true, _, _) => c.to_string(),
            (false, true, _) => mono.join("*"),
            (false, _, true) => format!("-{}", mono.join("*")),
            _ => format!("{c}*{}", mono.join("*")),
        }
    }

    pub fn to_record(&self) -> PolynomialRecord {
        PolynomialRecord {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.to_string())).collect(),
        }
    }

    pub fn from_record(r: &PolynomialRecord) -> Result<Self> {
        let terms = r
            .terms
            .iter()
            .map(|(e, c)| c.parse::<BigInt>().map(|c| (e.clone(), c)).map_err(|_| Error::Parse(format!("bad integer {c}"))))
            .collect::<Result<Vec<_>>>()?;
        Self::from_terms(r.nvars, terms)
    }
}

/// Serialized form: sorted `(exponents, decimal coefficient)` pairs.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialRecord {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, String)>,
}

impl fmt::Display for SparseIntegerPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (k, (e, c)) in self.terms.iter().rev().enumerate() {
            let s = Self::format_term(e, c);
            if k == 0 {
                write!(f, "{s}")?;
            } else if c.is_negative() {
                write!(f, " - {}", &s[1..])?;
            } else {
                write!(f, " + {s}")?;
            }
        }
        Ok(())
    }
}

impl Add for &SparseIntegerPolynomial {
    type Output = SparseIntegerPolynomial;
    fn add(self, rhs: Self) -> SparseIntegerPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &SparseIntegerPolynomial {
    type Output = SparseIntegerPolynomial;
    fn sub(self, rhs: Self) -> SparseIntegerPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Neg for &SparseIntegerPolynomial {
    type Output = SparseIntegerPolynomial;
    fn neg(self) -> SparseIntegerPolynomial {
        self.scale(&BigInt::from(-1))
    }
}

impl Mul for &SparseIntegerPolynomial {
    type Output = SparseIntegerPolynomial;
    fn mul(self, rhs: Self) -> SparseIntegerPolynomial {
        let mut out = SparseIntegerPolynomial::zero(self.nvars);
        for (e1, c1) in &self.terms {
            for (e2, c2) in &rhs.terms {
                out.add_term(e1.iter().zip(e2).map(|(a, b)| a + b).collect(), c1 * c2);
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x(i: usize) -> SparseIntegerPolynomial {
        SparseIntegerPolynomial::variable(3, i)
    }

    #[test]
    fn ring_operations() {
        let a = &x(0) + &x(1);
        let b = &x(0) - &x(1);
        let prod = &a * &b;
        assert_eq!(prod.to_string(), "a0^2 - a1^2");
        assert_eq!(prod.divide_exact(&a).unwrap(), b);
        assert!(prod.divide_exact(&x(2)).is_err());
        assert!((&prod - &prod).is_zero());
        let v = prod.eval(&[BigInt::from(5), BigInt::from(3), BigInt::from(0)]).unwrap();
        assert_eq!(v, BigInt::from(16));
    }

    #[test]
    fn variable_division() {
        let p = &(&x(0) * &x(2)) + &x(2).scale(&BigInt::from(-4));
        assert_eq!(p.divide_by_variable(2).unwrap().to_string(), "a0 - 4");
        assert!(p.divide_by_variable(0).is_err());
    }

    #[test]
    fn record_round_trip() {
        let p = &(&x(0) * &x(0)) - &x(1).scale(&BigInt::from(7));
        assert_eq!(SparseIntegerPolynomial::from_record(&p.to_record()).unwrap(), p);
    }
}
