//! Exact arithmetic helpers shared by every module: rationals, primes,
//! radicals, binomials and exact linear algebra over the rationals.

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"3"`, `"-7/2"` or `"0.125"` into an exact rational.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim().replace('\u{2212}', "-");
    if s.is_empty() {
        return Err(Error::Parse("empty rational".into()));
    }
    if let Some((num, den)) = s.split_once('/') {
        let num: BigInt = num
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad numerator in {s:?}")))?;
        let den: BigInt = den
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("bad denominator in {s:?}")))?;
        if den.is_zero() {
            return Err(Error::Parse(format!("zero denominator in {s:?}")));
        }
        return Ok(Rational::new(num, den));
    }
    if let Some((int, frac)) = s.split_once('.') {
        let negative = int.trim_start().starts_with('-');
        let int_part: BigInt = if int.is_empty() || int == "-" {
            BigInt::zero()
        } else {
            int.parse().map_err(|_| Error::Parse(format!("bad decimal {s:?}")))?
        };
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(Error::Parse(format!("bad decimal {s:?}")));
        }
        let frac_part: BigInt = frac.parse().unwrap();
        let scale = num_traits::pow(BigInt::from(10), frac.len());
        let frac_rat = Rational::new(frac_part, scale);
        let int_rat = Rational::from_integer(int_part);
        return Ok(if negative { int_rat - frac_rat } else { int_rat + frac_rat });
    }
    let n: BigInt = s.parse().map_err(|_| Error::Parse(format!("bad rational {s:?}")))?;
    Ok(Rational::from_integer(n))
}

/// Exact fraction string: `"3"`, `"-7/2"`.
pub fn format_rational(q: &Rational) -> String {
    q.to_string()
}

pub fn ceil_rational(q: &Rational) -> BigInt {
    q.ceil().to_integer()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n % 2 == 0 {
        return n == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(n: u64) -> Vec<u64> {
    (2..=n).filter(|&m| is_prime(m)).collect()
}

/// The first `k` primes.
pub fn first_primes(k: usize) -> Vec<u64> {
    (2u64..).filter(|&m| is_prime(m)).take(k).collect()
}

/// Distinct prime divisors in increasing order.
pub fn prime_divisors(mut m: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= m {
        if m % d == 0 {
            out.push(d);
            while m % d == 0 {
                m /= d;
            }
        }
        d += 1;
    }
    if m > 1 {
        out.push(m);
    }
    out
}

/// Product of the distinct primes dividing `m`.
pub fn rad(m: i64) -> Result<u64> {
    if m <= 0 {
        return Err(Error::InvalidInput(format!("rad is defined for positive integers, got {m}")));
    }
    Ok(prime_divisors(m as u64).into_iter().product())
}

pub fn binomial(n: u64, k: u64) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    (0..k).fold(1u64, |acc, i| acc * (n - i) / (i + 1))
}

/// Multiplicity of the prime `p` in the nonzero integer `m`.
pub fn padic_valuation(m: &BigInt, p: u64) -> Option<u64> {
    if m.is_zero() {
        return None;
    }
    let p = BigInt::from(p);
    let mut m = m.abs();
    let mut v = 0;
    loop {
        let (q, r) = m.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        m = q;
        v += 1;
    }
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values.into_iter().fold(BigInt::zero(), |g, v| g.gcd(v))
}

/// Rank of a rational matrix by Gaussian elimination.
pub fn rank(rows: &[Vec<Rational>]) -> usize {
    row_echelon(rows.to_vec()).len()
}

/// Reduced row echelon form; returns only the nonzero rows.
pub fn row_echelon(mut m: Vec<Vec<Rational>>) -> Vec<Vec<Rational>> {
    let ncols = m.first().map_or(0, Vec::len);
    let mut pivot_row = 0;
    for col in 0..ncols {
        let Some(found) = (pivot_row..m.len()).find(|&r| !m[r][col].is_zero()) else {
            continue;
        };
        m.swap(pivot_row, found);
        let inv = m[pivot_row][col].recip();
        for v in m[pivot_row].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = m[pivot_row].clone();
        for (r, row) in m.iter_mut().enumerate() {
            if r == pivot_row || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &factor * pv;
            }
        }
        pivot_row += 1;
        if pivot_row == m.len() {
            break;
        }
    }
    m.truncate(pivot_row);
    m
}

/// Solves a square system `a x = b`; `None` when singular.
pub fn solve_square(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let n = a.len();
    let mut aug: Vec<Vec<Rational>> = a
        .iter()
        .zip(b)
        .map(|(row, rhs)| {
            let mut r = row.clone();
            r.push(rhs.clone());
            r
        })
        .collect();
    for col in 0..n {
        let found = (col..n).find(|&r| !aug[r][col].is_zero())?;
        aug.swap(col, found);
        let inv = aug[col][col].recip();
        for v in aug[col].iter_mut() {
            *v = &*v * &inv;
        }
        let pivot = aug[col].clone();
        for (r, row) in aug.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let factor = row[col].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                *v -= &factor * pv;
            }
        }
    }
    Some(aug.into_iter().map(|mut row| row.pop().unwrap()).collect())
}

/// Basis of the null space `{x : rows · x = 0}`.
pub fn null_space(rows: &[Vec<Rational>], ncols: usize) -> Vec<Vec<Rational>> {
    let rref = row_echelon(rows.to_vec());
    let mut pivots = Vec::new();
    for row in &rref {
        if let Some(c) = row.iter().position(|v| !v.is_zero()) {
            pivots.push(c);
        }
    }
    let mut basis = Vec::new();
    for free in (0..ncols).filter(|c| !pivots.contains(c)) {
        let mut v = vec![Rational::zero(); ncols];
        v[free] = Rational::one();
        for (row, &pc) in rref.iter().zip(&pivots) {
            v[pc] = -row[free].clone();
        }
        basis.push(v);
    }
    basis
}

/// Scales a nonzero rational vector to a primitive integer vector whose
/// first nonzero entry is positive.
pub fn primitive_direction(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| (q * Rational::from_integer(lcm.clone())).to_integer()).collect();
    let g = gcd_all(&ints);
    if g.is_zero() {
        return ints;
    }
    let mut out: Vec<BigInt> = ints.into_iter().map(|x| x / &g).collect();
    if out.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in out.iter_mut() {
            *x = -&*x;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn radicals() {
        assert_eq!(rad(12).unwrap(), 6);
        assert_eq!(rad(1).unwrap(), 1);
        assert_eq!(rad(32).unwrap(), 2);
        assert_eq!(rad(30).unwrap(), 30);
        assert!(rad(0).is_err());
        assert!(rad(-4).is_err());
    }

    #[test]
    fn valuations() {
        assert_eq!(padic_valuation(&BigInt::from(-4), 2), Some(2));
        assert_eq!(padic_valuation(&BigInt::from(-3), 3), Some(1));
        assert_eq!(padic_valuation(&BigInt::from(7), 3), Some(0));
        assert_eq!(padic_valuation(&BigInt::from(0), 3), None);
    }

    #[test]
    fn rational_parsing() {
        assert_eq!(parse_rational("3").unwrap(), rat(3));
        assert_eq!(parse_rational("-7/2").unwrap(), ratio(-7, 2));
        assert_eq!(parse_rational("0.125").unwrap(), ratio(1, 8));
        assert_eq!(parse_rational("-0.5").unwrap(), ratio(-1, 2));
        assert_eq!(parse_rational("\u{2212}1").unwrap(), rat(-1));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert_eq!(format_rational(&rat(2)), "2");
        assert_eq!(format_rational(&ratio(6, -4)), "-3/2");
    }

    #[test]
    fn binomials_and_primes() {
        assert_eq!(binomial(5, 3), 10);
        assert_eq!(binomial(1, 2), 0);
        assert_eq!(binomial(6, 3), 20);
        assert_eq!(primes_up_to(12), vec![2, 3, 5, 7, 11]);
        assert_eq!(first_primes(4), vec![2, 3, 5, 7]);
        assert!(!is_prime(1) && is_prime(2) && !is_prime(9) && is_prime(97));
    }

    #[test]
    fn linear_algebra() {
        let m = vec![vec![rat(1), rat(2)], vec![rat(2), rat(4)], vec![rat(0), rat(1)]];
        assert_eq!(rank(&m), 2);
        let ns = null_space(&[vec![rat(1), rat(-1), rat(0)]], 3);
        assert_eq!(ns.len(), 2);
        let x = solve_square(&[vec![rat(2), rat(1)], vec![rat(1), rat(-1)]], &[rat(3), rat(0)]).unwrap();
        assert_eq!(x, vec![rat(1), rat(1)]);
        assert!(solve_square(&[vec![rat(1), rat(1)], vec![rat(2), rat(2)]], &[rat(0), rat(0)]).is_none());
        assert_eq!(
            primitive_direction(&[ratio(-1, 2), ratio(3, 4)]),
            vec![BigInt::from(2), BigInt::from(-3)]
        );
    }
}
