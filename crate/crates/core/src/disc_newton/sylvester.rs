use std::collections::HashMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::sparse::SparseIntegerPolynomial;
use crate::error::{Error, Result};

/// Largest degree accepted by [`generic_discriminant`].
pub const DEFAULT_MAX_DEGREE: u32 = 7;
/// Largest degree accepted by [`resultant_generic_pair`].
pub const MAX_PAIR_DEGREE: u32 = 5;

/// How a polynomial determinant is expanded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum DeterminantMethod {
    /// Fraction-free elimination with exact polynomial division.
    Bareiss,
    /// Row-by-row cofactor expansion, memoised on the used columns.
    Laplace,
}

type Matrix = Vec<Vec<SparseIntegerPolynomial>>;

/// Sylvester matrix of `f` and `g`, given by ascending coefficient lists.
pub fn sylvester_matrix(f: &[SparseIntegerPolynomial], g: &[SparseIntegerPolynomial]) -> Result<Matrix> {
    let (m, mg) = (f.len().checked_sub(1), g.len().checked_sub(1));
    let (Some(m), Some(mg)) = (m, mg) else {
        return Err(Error::InvalidInput("empty coefficient list".into()));
    };
    let nvars = f[0].nvars();
    let size = m + mg;
    let mut rows = vec![vec![SparseIntegerPolynomial::zero(nvars); size]; size];
    for i in 0..mg {
        for (k, c) in f.iter().enumerate() {
            rows[i][i + m - k] = c.clone();
        }
    }
    for i in 0..m {
        for (k, c) in g.iter().enumerate() {
            rows[mg + i][i + mg - k] = c.clone();
        }
    }
    Ok(rows)
}

pub fn determinant(m: &Matrix, method: DeterminantMethod) -> Result<SparseIntegerPolynomial> {
    match method {
        DeterminantMethod::Bareiss => det_bareiss(m),
        DeterminantMethod::Laplace => Ok(det_laplace(m)),
    }
}

fn det_bareiss(m: &Matrix) -> Result<SparseIntegerPolynomial> {
    let n = m.len();
    let nvars = m.first().map_or(0, |r| r.first().map_or(0, SparseIntegerPolynomial::nvars));
    if n == 0 {
        return Ok(SparseIntegerPolynomial::constant(nvars, 1));
    }
    let mut a = m.clone();
    let mut negate = false;
    let mut prev = SparseIntegerPolynomial::constant(nvars, 1);
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Ok(SparseIntegerPolynomial::zero(nvars)),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &(&a[i][j] * &a[k][k]) - &(&a[i][k] * &a[k][j]);
                a[i][j] = num.divide_exact(&prev)?;
            }
        }
        prev = a[k][k].clone();
    }
    let det = a[n - 1][n - 1].clone();
    Ok(if negate { -&det } else { det })
}

fn det_laplace(m: &Matrix) -> SparseIntegerPolynomial {
    fn minor(m: &Matrix, used: u64, memo: &mut HashMap<u64, SparseIntegerPolynomial>) -> SparseIntegerPolynomial {
        let n = m.len();
        let row = used.count_ones() as usize;
        let nvars = m[0][0].nvars();
        if row == n {
            return SparseIntegerPolynomial::constant(nvars, 1);
        }
        if let Some(v) = memo.get(&used) {
            return v.clone();
        }
        let mut acc = SparseIntegerPolynomial::zero(nvars);
        let mut position = 0;
        for col in 0..n {
            if used & (1 << col) != 0 {
                continue;
            }
            if !m[row][col].is_zero() {
                let sub = minor(m, used | (1 << col), memo);
                if !sub.is_zero() {
                    let term = &m[row][col] * &sub;
                    acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
                }
            }
            position += 1;
        }
        memo.insert(used, acc.clone());
        acc
    }
    if m.is_empty() {
        return SparseIntegerPolynomial::constant(0, 1);
    }
    minor(m, 0, &mut HashMap::new())
}

/// Determinant of an integer matrix by fraction-free elimination.
pub fn integer_determinant(m: &[Vec<BigInt>]) -> BigInt {
    let n = m.len();
    if n == 0 {
        return BigInt::one();
    }
    let mut a = m.to_vec();
    let mut sign = BigInt::one();
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    sign = -sign;
                }
                None => return BigInt::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &a[i][j] * &a[k][k] - &a[i][k] * &a[k][j];
                let (q, r) = num.div_rem(&prev);
                debug_assert!(r.is_zero());
                a[i][j] = q;
            }
        }
        prev = a[k][k].clone();
    }
    sign * &a[n - 1][n - 1]
}

fn check_degree(n: u32, lo: u32, hi: u32, what: &str) -> Result<()> {
    if n < lo {
        return Err(Error::InvalidInput(format!("{what} {n} below {lo}")));
    }
    if n > hi {
        return Err(Error::SizeLimit(format!("{what} {n} exceeds {hi}")));
    }
    Ok(())
}

fn generic_coefficients(nvars: usize, offset: usize, degree: u32) -> Vec<SparseIntegerPolynomial> {
    (0..=degree as usize).map(|i| SparseIntegerPolynomial::variable(nvars, offset + i)).collect()
}

/// Discriminant of `Σ a_i X^i` in the variables `a_0..a_n`: the resultant
/// of the polynomial and its derivative, divided by `a_n` and signed by
/// `(-1)^{n(n-1)/2}` so that `n = 2` gives `a1^2 - 4 a0 a2`.
pub fn generic_discriminant(n: u32) -> Result<SparseIntegerPolynomial> {
    generic_discriminant_with(n, DeterminantMethod::Bareiss, DEFAULT_MAX_DEGREE)
}

pub fn generic_discriminant_with(n: u32, method: DeterminantMethod, max_degree: u32) -> Result<SparseIntegerPolynomial> {
    check_degree(n, 2, max_degree, "degree")?;
    let nvars = n as usize + 1;
    let f = generic_coefficients(nvars, 0, n);
    let df: Vec<SparseIntegerPolynomial> = (1..=n as usize).map(|i| f[i].scale(&BigInt::from(i))).collect();
    let res = determinant(&sylvester_matrix(&f, &df)?, method)?;
    let disc = res.divide_by_variable(n as usize)?;
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -&disc } else { disc })
}

/// Resultant of `Σ b_i X^i` (degree `m`) and `Σ c_j X^j` (degree `mg`), in
/// the variables `b_0..b_m, c_0..c_mg`.
pub fn resultant_generic_pair(m: u32, mg: u32) -> Result<SparseIntegerPolynomial> {
    check_degree(m, 1, MAX_PAIR_DEGREE, "degree")?;
    check_degree(mg, 1, MAX_PAIR_DEGREE, "degree")?;
    let nvars = (m + mg + 2) as usize;
    let f = generic_coefficients(nvars, 0, m);
    let g = generic_coefficients(nvars, m as usize + 1, mg);
    det_bareiss(&sylvester_matrix(&f, &g)?)
}

/// Discriminant of a concrete integer polynomial through the numeric
/// Sylvester determinant, with the same normalisation as
/// [`generic_discriminant`].
pub fn numeric_discriminant(coeffs: &[BigInt]) -> Result<BigInt> {
    let n = coeffs.len().checked_sub(1).filter(|&n| n >= 2).ok_or_else(|| Error::InvalidInput("degree below 2".into()))?;
    let lead = &coeffs[n];
    if lead.is_zero() {
        return Err(Error::InvalidInput("leading coefficient is zero".into()));
    }
    let df: Vec<BigInt> = (1..=n).map(|i| &coeffs[i] * BigInt::from(i)).collect();
    let size = 2 * n - 1;
    let mut rows = vec![vec![BigInt::zero(); size]; size];
    for i in 0..n - 1 {
        for (k, c) in coeffs.iter().enumerate() {
            rows[i][i + n - k] = c.clone();
        }
    }
    for i in 0..n {
        for (k, c) in df.iter().enumerate() {
            rows[n - 1 + i][i + n - 1 - k] = c.clone();
        }
    }
    let (q, r) = integer_determinant(&rows).div_rem(lead);
    if !r.is_zero() {
        return Err(Error::InexactDivision("resultant not divisible by the leading coefficient".into()));
    }
    Ok(if (n * (n - 1) / 2) % 2 == 1 { -q } else { q })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn quadratic_and_cubic() {
        assert_eq!(generic_discriminant(2).unwrap().to_string(), "-4*a0*a2 + a1^2");
        let d3 = generic_discriminant(3).unwrap();
        let mut support = d3.support();
        support.sort();
        let mut expected = vec![vec![0, 2, 2, 0], vec![1, 0, 3, 0], vec![0, 3, 0, 1], vec![1, 1, 1, 1], vec![2, 0, 0, 2]];
        expected.sort();
        assert_eq!(support, expected);
        assert_eq!(d3.coeff(&[0, 2, 2, 0]), BigInt::from(1));
        assert_eq!(d3.coeff(&[1, 0, 3, 0]), BigInt::from(-4));
        assert_eq!(d3.coeff(&[0, 3, 0, 1]), BigInt::from(-4));
        assert_eq!(d3.coeff(&[1, 1, 1, 1]), BigInt::from(18));
        assert_eq!(d3.coeff(&[2, 0, 0, 2]), BigInt::from(-27));
    }

    #[test]
    fn both_expansions_agree() {
        for n in 2..=5 {
            let a = generic_discriminant_with(n, DeterminantMethod::Bareiss, 5).unwrap();
            let b = generic_discriminant_with(n, DeterminantMethod::Laplace, 5).unwrap();
            assert_eq!(a, b, "degree {n}");
        }
        assert_eq!(generic_discriminant(5).unwrap().len(), 59);
    }

    #[test]
    fn numeric_specialisation_matches() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for n in 2..=5u32 {
            let d = generic_discriminant(n).unwrap();
            for _ in 0..10 {
                let coeffs: Vec<BigInt> =
                    (0..=n).map(|i| BigInt::from(if i == n { rng.gen_range(1..9) } else { rng.gen_range(-9..9) })).collect();
                assert_eq!(d.eval(&coeffs).unwrap(), numeric_discriminant(&coeffs).unwrap());
            }
        }
        // (x-1)^2 (x+2) has a double root
        let c: Vec<BigInt> = [2, -3, 0, 1].into_iter().map(BigInt::from).collect();
        assert!(numeric_discriminant(&c).unwrap().is_zero());
    }

    #[test]
    fn generic_pairs() {
        let r = resultant_generic_pair(1, 1).unwrap();
        assert_eq!(r.len(), 2);
        assert_eq!(r.coeff(&[1, 0, 0, 1]).abs(), BigInt::from(1));
        assert_eq!(r.coeff(&[0, 1, 1, 0]).abs(), BigInt::from(1));
        assert!(resultant_generic_pair(6, 1).is_err());
    }

    #[test]
    fn degree_bounds() {
        assert!(matches!(generic_discriminant(1), Err(Error::InvalidInput(_))));
        assert!(matches!(generic_discriminant(8), Err(Error::SizeLimit(_))));
    }
}
