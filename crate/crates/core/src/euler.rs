//! Euler derivatives of tropical polynomials and the finite families of
//! linear forms that suffice for singularity testing.
//!
//! For an integer affine form `L`, the derivative keeps the term `a_i x^i`
//! with coefficient `a_i + v(L(i))`, dropping it when `v(L(i))` is
//! infinite. The regime fixes `v` on integers:
//!
//! * characteristic 0: `v(m) = 0` for `m != 0`;
//! * characteristic `p`: `v(m) = 0` when `p ∤ m`, infinite otherwise;
//! * `p`-adic: `v(m) = v_p(m)`, infinite only for `m = 0`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;

use crate::arith::{ceil_rational, gcd_all, is_prime, padic_valuation, rank, rat, Rational};
use crate::error::{Error, Result};
use crate::trop_core::{variable_names, Exponent, TropicalPolynomial};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Prime(u64);

impl Prime {
    pub fn new(p: u64) -> Result<Self> {
        if is_prime(p) {
            Ok(Prime(p))
        } else {
            Err(Error::NotPrime(p))
        }
    }

    pub fn get(self) -> u64 {
        self.0
    }
}

impl fmt::Display for Prime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ValuationRegime {
    CharZero,
    CharP(Prime),
    PAdic(Prime),
}

impl ValuationRegime {
    pub fn char_p(p: u64) -> Result<Self> {
        Ok(ValuationRegime::CharP(Prime::new(p)?))
    }

    pub fn padic(p: u64) -> Result<Self> {
        Ok(ValuationRegime::PAdic(Prime::new(p)?))
    }

    /// `0` for characteristic zero, otherwise the characteristic (or
    /// residue characteristic).
    pub fn prime(&self) -> Option<u64> {
        match self {
            ValuationRegime::CharZero => None,
            ValuationRegime::CharP(p) | ValuationRegime::PAdic(p) => Some(p.get()),
        }
    }
}

impl fmt::Display for ValuationRegime {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValuationRegime::CharZero => write!(f, "char:0"),
            ValuationRegime::CharP(p) => write!(f, "char:{p}"),
            ValuationRegime::PAdic(p) => write!(f, "padic:{p}"),
        }
    }
}

impl FromStr for ValuationRegime {
    type Err = Error;

    /// `char:0`, `char:P` or `padic:P`.
    fn from_str(s: &str) -> Result<Self> {
        let (kind, p) = s
            .trim()
            .split_once(':')
            .ok_or_else(|| Error::Parse(format!("regime {s:?} must look like char:P or padic:P")))?;
        let p: u64 = p.trim().parse().map_err(|_| Error::Parse(format!("bad prime in regime {s:?}")))?;
        match (kind.trim(), p) {
            ("char", 0) => Ok(ValuationRegime::CharZero),
            ("char", p) => ValuationRegime::char_p(p),
            ("padic", p) => ValuationRegime::padic(p),
            _ => Err(Error::Parse(format!("unknown regime {s:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IntegerValuation {
    Finite(u64),
    Infinite,
}

impl IntegerValuation {
    pub fn finite(self) -> Option<u64> {
        match self {
            IntegerValuation::Finite(v) => Some(v),
            IntegerValuation::Infinite => None,
        }
    }
}

pub fn int_valuation(m: &BigInt, regime: &ValuationRegime) -> IntegerValuation {
    match regime {
        ValuationRegime::CharZero => {
            if m.is_zero() {
                IntegerValuation::Infinite
            } else {
                IntegerValuation::Finite(0)
            }
        }
        ValuationRegime::CharP(p) => {
            if m.is_multiple_of(&BigInt::from(p.get())) {
                IntegerValuation::Infinite
            } else {
                IntegerValuation::Finite(0)
            }
        }
        ValuationRegime::PAdic(p) => match padic_valuation(m, p.get()) {
            Some(v) => IntegerValuation::Finite(v),
            None => IntegerValuation::Infinite,
        },
    }
}

/// Primitive integer affine form `b0 + b1 x1 + … + bd xd`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct LinearForm {
    b0: BigInt,
    b: Vec<BigInt>,
}

impl LinearForm {
    pub fn new(b0: BigInt, b: Vec<BigInt>) -> Result<Self> {
        if b.is_empty() {
            return Err(Error::InvalidForm("form needs at least one variable slot".into()));
        }
        let g = gcd_all(std::iter::once(&b0).chain(&b));
        if g.is_zero() {
            return Err(Error::InvalidForm("all coefficients are zero".into()));
        }
        if !g.is_one() {
            return Err(Error::InvalidForm(format!("coefficients have common factor {g}")));
        }
        Ok(LinearForm { b0, b })
    }

    pub fn from_ints(b0: i64, b: &[i64]) -> Result<Self> {
        Self::new(BigInt::from(b0), b.iter().map(|&x| BigInt::from(x)).collect())
    }

    /// Divides out the content of a nonzero form.
    pub fn primitive(b0: BigInt, b: Vec<BigInt>) -> Result<Self> {
        let g = gcd_all(std::iter::once(&b0).chain(&b));
        if g.is_zero() {
            return Err(Error::InvalidForm("all coefficients are zero".into()));
        }
        Self::new(b0 / &g, b.into_iter().map(|x| x / &g).collect())
    }

    /// The constant form `1`.
    pub fn one(dim: usize) -> Self {
        LinearForm { b0: BigInt::one(), b: vec![BigInt::zero(); dim] }
    }

    /// `x - c` in one variable.
    pub fn x_minus(c: impl Into<BigInt>) -> Self {
        LinearForm { b0: -c.into(), b: vec![BigInt::one()] }
    }

    pub fn dim(&self) -> usize {
        self.b.len()
    }

    pub fn constant(&self) -> &BigInt {
        &self.b0
    }

    pub fn linear(&self) -> &[BigInt] {
        &self.b
    }

    pub fn is_trivial(&self) -> bool {
        self.b.iter().all(Zero::is_zero)
    }

    pub fn eval(&self, exp: &[i64]) -> BigInt {
        self.b.iter().zip(exp).fold(self.b0.clone(), |acc, (bk, &e)| acc + bk * e)
    }

    /// Parses `"b0 + b1*x1 + … + bd*xd"`; `x`, `y`, `z` name the first
    /// three variables and coefficients may be omitted (`"x-4"`, `"x-y"`).
    pub fn parse(s: &str, dim: usize) -> Result<Self> {
        let names = variable_names(dim);
        let cleaned: String = s.replace('\u{2212}', "-").chars().filter(|c| !c.is_whitespace()).collect();
        if cleaned.is_empty() {
            return Err(Error::Parse("empty linear form".into()));
        }
        let mut b0 = BigInt::zero();
        let mut b = vec![BigInt::zero(); dim];
        let mut rest = cleaned.as_str();
        while !rest.is_empty() {
            let mut sign = BigInt::one();
            match rest.as_bytes()[0] {
                b'+' => rest = &rest[1..],
                b'-' => {
                    sign = -sign;
                    rest = &rest[1..];
                }
                _ => {}
            }
            let end = rest[1.min(rest.len())..].find(['+', '-']).map_or(rest.len(), |k| k + 1);
            let token = &rest[..end];
            rest = &rest[end..];
            if token.is_empty() {
                return Err(Error::Parse(format!("dangling sign in {s:?}")));
            }
            let digits = token.bytes().take_while(u8::is_ascii_digit).count();
            let (coeff, var) = token.split_at(digits);
            let var = var.strip_prefix('*').unwrap_or(var);
            let coeff: BigInt = if coeff.is_empty() {
                BigInt::one()
            } else {
                coeff.parse().map_err(|_| Error::Parse(format!("bad coefficient in {s:?}")))?
            };
            let coeff = coeff * sign;
            if var.is_empty() {
                if digits == 0 {
                    return Err(Error::Parse(format!("bad term in {s:?}")));
                }
                b0 += coeff;
            } else {
                let k = names
                    .iter()
                    .position(|n| n == var)
                    .or_else(|| {
                        var.strip_prefix('x')
                            .and_then(|idx| idx.parse::<usize>().ok())
                            .filter(|&idx| (1..=dim).contains(&idx))
                            .map(|idx| idx - 1)
                    })
                    .ok_or_else(|| Error::Parse(format!("unknown variable {var:?} in {s:?}")))?;
                b[k] += coeff;
            }
        }
        Self::new(b0, b)
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = variable_names(self.b.len());
        let mut out = String::new();
        for (name, c) in names.iter().zip(&self.b) {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            if mag.is_one() {
                out.push_str(&format!("{sign}{name}"));
            } else {
                out.push_str(&format!("{sign}{mag}{name}"));
            }
        }
        if !self.b0.is_zero() || out.is_empty() {
            let sign = if self.b0.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            out.push_str(&format!("{sign}{}", self.b0.abs()));
        }
        write!(f, "{out}")
    }
}

/// `∂f/∂L` in the given regime. May be empty.
pub fn euler_derivative(f: &TropicalPolynomial, form: &LinearForm, regime: &ValuationRegime) -> Result<TropicalPolynomial> {
    if form.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: form.dim() });
    }
    Ok(f.filter_map_terms(|exp, a| match int_valuation(&form.eval(exp), regime) {
        IntegerValuation::Finite(0) => Some(a.clone()),
        IntegerValuation::Finite(v) => Some(a + rat(v as i64)),
        IntegerValuation::Infinite => None,
    }))
}

/// A form in a derivative family with a label for reports.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FamilyForm {
    pub form: LinearForm,
    pub label: String,
}

impl FamilyForm {
    fn plain(form: LinearForm) -> Self {
        let label = form.to_string();
        FamilyForm { form, label }
    }
}

/// A finite family of forms whose derivatives decide singularity for
/// polynomials with the given support.
///
/// In the `p`-adic regime the deep forms stop at depth `K + 1`, where `K`
/// exceeds every finite `v_p(i - j)` on the support. Use
/// [`derivative_family_for`] to size the depth from actual coefficients.
pub fn derivative_family(support: &[Exponent], dim: usize, regime: &ValuationRegime) -> Result<Vec<FamilyForm>> {
    check_support(support, dim)?;
    match regime {
        ValuationRegime::CharZero => char_zero_family(support, dim),
        ValuationRegime::CharP(p) => Ok(char_p_family(dim, p.get())),
        ValuationRegime::PAdic(p) => {
            let k = padic_depth(support, p.get())?;
            padic_family(support, dim, p.get(), k, k + 1)
        }
    }
}

/// Like [`derivative_family`], with the `p`-adic deep forms running up to
/// `ceil(max a - min a) + K + 1`.
pub fn derivative_family_for(f: &TropicalPolynomial, regime: &ValuationRegime) -> Result<Vec<FamilyForm>> {
    let support = f.support();
    match regime {
        ValuationRegime::PAdic(p) => {
            check_support(&support, f.dim())?;
            let k = padic_depth(&support, p.get())?;
            let spread = f.max_coefficient().expect("non-empty") - f.min_coefficient().expect("non-empty");
            let t_cut = ceil_rational(&spread).to_u64().unwrap_or(0) + k + 1;
            padic_family(&support, f.dim(), p.get(), k, t_cut)
        }
        _ => derivative_family(&support, f.dim(), regime),
    }
}

fn check_support(support: &[Exponent], dim: usize) -> Result<()> {
    if support.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    if let Some(e) = support.iter().find(|e| e.len() != dim) {
        return Err(Error::DimensionMismatch { expected: dim, found: e.len() });
    }
    Ok(())
}

/// Representatives of the points of projective `d`-space over `F_p`: the
/// first nonzero of `(b1, …, bd, b0)` is 1, the rest lie in `[-(p-1), 0]`.
/// For one variable this is `{1, x, x-1, …, x-(p-1)}`.
fn char_p_family(dim: usize, p: u64) -> Vec<FamilyForm> {
    let p = p as i64;
    let slots = dim + 1;
    let mut forms = Vec::new();
    for lead in 0..slots {
        let free = slots - lead - 1;
        let count = (p as u64).pow(free as u32);
        for idx in 0..count {
            // slot order: b1..bd, b0
            let mut coeffs = vec![0i64; slots];
            coeffs[lead] = 1;
            let mut rem = idx;
            for slot in (lead + 1..slots).rev() {
                coeffs[slot] = -((rem % p as u64) as i64);
                rem /= p as u64;
            }
            let b0 = coeffs[dim];
            let form = LinearForm::from_ints(b0, &coeffs[..dim]).expect("leading coefficient 1");
            forms.push(form);
        }
    }
    forms.sort_by_key(|f| (f.b.clone(), f.b0.clone()));
    forms.into_iter().map(FamilyForm::plain).collect()
}

fn char_zero_family(support: &[Exponent], dim: usize) -> Result<Vec<FamilyForm>> {
    if dim == 1 {
        let mut forms = vec![FamilyForm::plain(LinearForm::one(1))];
        let mut points: Vec<i64> = support.iter().map(|e| e[0]).collect();
        points.sort();
        points.dedup();
        forms.extend(points.into_iter().map(|i| FamilyForm::plain(LinearForm::x_minus(i))));
        return Ok(forms);
    }
    if support.len() > 24 {
        return Err(Error::SizeLimit(format!("characteristic-0 flat enumeration over {} points", support.len())));
    }
    let support: Vec<Exponent> = {
        let set: BTreeSet<Exponent> = support.iter().cloned().collect();
        set.into_iter().collect()
    };
    // Kill-sets support ∩ F for every flat F of dimension < d spanned by at
    // most d support points.
    let mut kill_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    let n = support.len();
    let mut subset = Vec::new();
    collect_flats(&support, dim, 0, n, &mut subset, &mut kill_sets);
    let kill_sets: Vec<Vec<usize>> = kill_sets.into_iter().collect();
    let found: Vec<Result<LinearForm>> =
        kill_sets.par_iter().map(|kill| avoiding_hyperplane(&support, kill, dim)).collect();
    let mut forms: Vec<LinearForm> = found.into_iter().collect::<Result<_>>()?;
    forms.sort_by_key(|f| (f.b.clone(), f.b0.clone()));
    forms.dedup();
    let mut out = vec![FamilyForm::plain(LinearForm::one(dim))];
    out.extend(forms.into_iter().map(FamilyForm::plain));
    Ok(out)
}

fn collect_flats(
    support: &[Exponent],
    dim: usize,
    start: usize,
    n: usize,
    subset: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<usize>>,
) {
    if !subset.is_empty() {
        let base = &support[subset[0]];
        let dirs: Vec<Vec<Rational>> = subset[1..]
            .iter()
            .map(|&k| support[k].iter().zip(base).map(|(a, b)| rat(a - b)).collect())
            .collect();
        let flat_dim = rank(&dirs);
        if flat_dim < dim {
            let kill: Vec<usize> = (0..n)
                .filter(|&k| {
                    let mut rows = dirs.clone();
                    rows.push(support[k].iter().zip(base).map(|(a, b)| rat(a - b)).collect());
                    rank(&rows) == flat_dim
                })
                .collect();
            out.insert(kill);
        }
    }
    if subset.len() == dim {
        return;
    }
    for k in start..n {
        subset.push(k);
        collect_flats(support, dim, k + 1, n, subset, out);
        subset.pop();
    }
}

/// Smallest-norm primitive integer form vanishing exactly on `kill` among
/// the support points.
fn avoiding_hyperplane(support: &[Exponent], kill: &[usize], dim: usize) -> Result<LinearForm> {
    let base = &support[kill[0]];
    let dirs: Vec<Vec<i64>> =
        kill[1..].iter().map(|&k| support[k].iter().zip(base).map(|(a, b)| a - b).collect()).collect();
    let others: Vec<&Exponent> =
        (0..support.len()).filter(|k| !kill.contains(k)).map(|k| &support[k]).collect();
    for bound in 1i64..=64 {
        let side = (2 * bound + 1) as u64;
        let total = side.pow(dim as u32);
        for idx in 0..total {
            let mut normal = vec![0i64; dim];
            let mut rem = idx;
            for slot in normal.iter_mut() {
                *slot = (rem % side) as i64 - bound;
                rem /= side;
            }
            if normal.iter().map(|c| c.abs()).max() != Some(bound) {
                continue;
            }
            let dot = |v: &[i64]| v.iter().zip(&normal).map(|(a, b)| a * b).sum::<i64>();
            if dirs.iter().any(|d| dot(d) != 0) {
                continue;
            }
            let c = dot(base);
            if others.iter().any(|o| dot(o) == c) {
                continue;
            }
            return LinearForm::primitive(BigInt::from(-c), normal.into_iter().map(BigInt::from).collect());
        }
    }
    Err(Error::SizeLimit("no small avoiding hyperplane found".into()))
}

/// `K = (max finite v_p(i - j)) + 1` over pairs of the support.
pub fn padic_depth(support: &[Exponent], dim_check_p: u64) -> Result<u64> {
    if support.first().map(Vec::len) != Some(1) {
        return Err(Error::Unsupported("p-adic derivative families are univariate only".into()));
    }
    let pts: Vec<i64> = support.iter().map(|e| e[0]).collect();
    let mut max = 0;
    for (x, i) in pts.iter().enumerate() {
        for j in &pts[x + 1..] {
            if let Some(v) = padic_valuation(&BigInt::from(i - j), dim_check_p) {
                max = max.max(v);
            }
        }
    }
    Ok(max + 1)
}

fn padic_family(support: &[Exponent], dim: usize, p: u64, k: u64, t_cut: u64) -> Result<Vec<FamilyForm>> {
    if dim != 1 {
        return Err(Error::Unsupported("p-adic derivative families are univariate only".into()));
    }
    if t_cut > 4096 {
        return Err(Error::SizeLimit(format!("p-adic depth {t_cut}")));
    }
    let modulus = num_traits::pow(BigInt::from(p), k as usize);
    let modulus_u = modulus.to_u64().filter(|&m| m <= 1 << 16).ok_or_else(|| {
        Error::SizeLimit(format!("{p}^{k} residue classes"))
    })?;
    let mut forms: BTreeMap<LinearForm, String> = BTreeMap::new();
    forms.insert(LinearForm::one(1), "1".into());
    for c in 0..modulus_u {
        let form = LinearForm::x_minus(c);
        forms.entry(form.clone()).or_insert_with(|| format!("{form} [class {c} mod {p}^{k}]"));
    }
    let mut points: Vec<i64> = support.iter().map(|e| e[0]).collect();
    points.sort();
    points.dedup();
    let pb = BigInt::from(p);
    for &i in &points {
        for t in k..=t_cut {
            let c = BigInt::from(i) + num_traits::pow(pb.clone(), t as usize);
            let form = LinearForm::x_minus(c);
            forms.entry(form.clone()).or_insert_with(|| format!("x-({i}+{p}^{t}) [v={t} at {i}]"));
        }
        let form = LinearForm::x_minus(i);
        forms.entry(form.clone()).or_insert_with(|| format!("{form} [removes {i}]"));
    }
    let mut out: Vec<FamilyForm> = forms.into_iter().map(|(form, label)| FamilyForm { form, label }).collect();
    // Trivial form first, then lexicographic.
    out.sort_by_key(|f| (!f.form.is_trivial(), f.form.b.clone(), f.form.b0.clone()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn generic_quintic() -> TropicalPolynomial {
        // distinct values standing in for a_0..a_5
        TropicalPolynomial::from_dense_ints(&[10, 11, 12, 13, 14, 15])
    }

    fn coeffs(f: &TropicalPolynomial) -> Vec<(i64, Rational)> {
        f.univariate_terms().unwrap()
    }

    #[test]
    fn valuations_by_regime() {
        let four = BigInt::from(4);
        assert_eq!(int_valuation(&four, &ValuationRegime::char_p(2).unwrap()), IntegerValuation::Infinite);
        for regime in [ValuationRegime::CharZero, ValuationRegime::char_p(3).unwrap(), ValuationRegime::padic(5).unwrap()] {
            assert_eq!(int_valuation(&BigInt::zero(), &regime), IntegerValuation::Infinite);
        }
        assert_eq!(int_valuation(&BigInt::from(-4), &ValuationRegime::padic(2).unwrap()), IntegerValuation::Finite(2));
        assert_eq!(int_valuation(&BigInt::from(7), &ValuationRegime::CharZero), IntegerValuation::Finite(0));
    }

    #[test]
    fn derivative_of_quintic_by_x_minus_4() {
        let f = generic_quintic();
        let l = LinearForm::x_minus(4);
        let d = |r: ValuationRegime| coeffs(&euler_derivative(&f, &l, &r).unwrap());
        let pick = |pairs: &[(i64, i64)]| pairs.iter().map(|&(i, a)| (i, rat(a))).collect::<Vec<_>>();
        assert_eq!(d(ValuationRegime::CharZero), pick(&[(0, 10), (1, 11), (2, 12), (3, 13), (5, 15)]));
        assert_eq!(d(ValuationRegime::char_p(5).unwrap()), pick(&[(0, 10), (1, 11), (2, 12), (3, 13), (5, 15)]));
        assert_eq!(d(ValuationRegime::char_p(2).unwrap()), pick(&[(1, 11), (3, 13), (5, 15)]));
        assert_eq!(d(ValuationRegime::char_p(3).unwrap()), pick(&[(0, 10), (2, 12), (3, 13), (5, 15)]));
        assert_eq!(d(ValuationRegime::padic(2).unwrap()), pick(&[(0, 12), (1, 11), (2, 13), (3, 13), (5, 15)]));
        assert_eq!(d(ValuationRegime::padic(3).unwrap()), pick(&[(0, 10), (1, 12), (2, 12), (3, 13), (5, 15)]));
    }

    #[test]
    fn bivariate_char_two_derivative() {
        let f = TropicalPolynomial::from_terms(
            2,
            [
                (vec![0, 0], rat(0)),
                (vec![2, 0], rat(0)),
                (vec![0, 2], rat(0)),
                (vec![2, 2], rat(0)),
                (vec![3, 0], rat(1)),
            ],
        )
        .unwrap();
        let l = LinearForm::parse("x-y", 2).unwrap();
        let d = euler_derivative(&f, &l, &ValuationRegime::char_p(2).unwrap()).unwrap();
        assert_eq!(d, TropicalPolynomial::from_terms(2, [(vec![3, 0], rat(1))]).unwrap());
        assert!(euler_derivative(&f, &LinearForm::x_minus(0), &ValuationRegime::CharZero).is_err());
    }

    #[test]
    fn form_parsing_and_display() {
        let l = LinearForm::parse("x-4", 1).unwrap();
        assert_eq!(l, LinearForm::x_minus(4));
        assert_eq!(l.to_string(), "x-4");
        assert_eq!(LinearForm::parse("x\u{2212}4", 1).unwrap(), l);
        assert_eq!(LinearForm::parse("-3 + 2*x1 + 1*x2", 2).unwrap(), LinearForm::from_ints(-3, &[2, 1]).unwrap());
        assert_eq!(LinearForm::parse("x-y", 2).unwrap().to_string(), "x-y");
        assert_eq!(LinearForm::parse("1", 3).unwrap().to_string(), "1");
        assert_eq!(LinearForm::from_ints(5, &[-2, 0, 3]).unwrap().to_string(), "-2x+3z+5");
        assert!(LinearForm::parse("2x-4", 1).is_err());
        assert!(LinearForm::parse("0", 1).is_err());
        assert!(LinearForm::parse("x-w", 2).is_err());
        assert!(LinearForm::parse("x+-", 1).is_err());
    }

    #[test]
    fn family_examples() {
        let support: Vec<Exponent> = (0..=5).map(|i| vec![i]).collect();
        let labels = |fam: Vec<FamilyForm>| fam.into_iter().map(|f| f.form.to_string()).collect::<Vec<_>>();
        assert_eq!(labels(derivative_family(&support, 1, &ValuationRegime::char_p(2).unwrap()).unwrap()), ["1", "x-1", "x"]);
        assert_eq!(
            labels(derivative_family(&support, 1, &ValuationRegime::CharZero).unwrap()),
            ["1", "x", "x-1", "x-2", "x-3", "x-4", "x-5"]
        );
        let support2 = vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![3, 0]];
        let fam = labels(derivative_family(&support2, 2, &ValuationRegime::char_p(2).unwrap()).unwrap());
        assert_eq!(fam.len(), 7);
        assert!(fam.contains(&"x-y".to_string()));
        assert!(matches!(
            derivative_family(&support2, 2, &ValuationRegime::padic(2).unwrap()),
            Err(Error::Unsupported(_))
        ));
    }

    #[test]
    fn family_sizes() {
        for p in [2u64, 3, 5, 7] {
            for d in 1..=3usize {
                let fam = char_p_family(d, p);
                assert_eq!(fam.len() as u64, (p.pow(d as u32 + 1) - 1) / (p - 1));
                let distinct: BTreeSet<_> = fam.iter().map(|f| f.form.clone()).collect();
                assert_eq!(distinct.len(), fam.len());
            }
        }
    }

    #[test]
    fn char_zero_bivariate_family_covers_every_kill_set() {
        let support = vec![vec![0, 0], vec![1, 0], vec![2, 0], vec![0, 1], vec![1, 1]];
        let fam = derivative_family(&support, 2, &ValuationRegime::CharZero).unwrap();
        // kill-sets realised by the family
        let kills: BTreeSet<Vec<Exponent>> = fam
            .iter()
            .map(|f| support.iter().filter(|e| f.form.eval(e).is_zero()).cloned().collect())
            .collect();
        // brute force over small forms
        let mut brute: BTreeSet<Vec<Exponent>> = BTreeSet::new();
        for b0 in -6i64..=6 {
            for b1 in -4i64..=4 {
                for b2 in -4i64..=4 {
                    if let Ok(form) = LinearForm::primitive(BigInt::from(b0), vec![BigInt::from(b1), BigInt::from(b2)]) {
                        brute.insert(support.iter().filter(|e| form.eval(e).is_zero()).cloned().collect());
                    }
                }
            }
        }
        assert_eq!(kills, brute);
    }

    fn small_poly() -> impl Strategy<Value = TropicalPolynomial> {
        proptest::collection::btree_map(0i64..9, -6i64..6, 1..8)
            .prop_map(|m| TropicalPolynomial::univariate(m.into_iter().map(|(e, a)| (e, rat(a)))).unwrap())
    }

    fn small_form() -> impl Strategy<Value = LinearForm> {
        (-12i64..12, -4i64..4)
            .prop_filter_map("primitive", |(b0, b1)| LinearForm::primitive(BigInt::from(b0), vec![BigInt::from(b1)]).ok())
    }

    proptest! {
        #[test]
        fn large_prime_matches_char_zero(f in small_poly(), l in small_form()) {
            // |L(i)| ≤ 12 + 4·8 < 47
            let p = ValuationRegime::char_p(47).unwrap();
            prop_assert_eq!(euler_derivative(&f, &l, &p).unwrap(), euler_derivative(&f, &l, &ValuationRegime::CharZero).unwrap());
        }

        #[test]
        fn supports_nest_across_regimes(f in small_poly(), l in small_form(), pi in 0usize..3) {
            let p = [2u64, 3, 5][pi];
            let zero = euler_derivative(&f, &l, &ValuationRegime::CharZero).unwrap();
            let charp = euler_derivative(&f, &l, &ValuationRegime::char_p(p).unwrap()).unwrap();
            let padic = euler_derivative(&f, &l, &ValuationRegime::padic(p).unwrap()).unwrap();
            for (e, a) in charp.terms() {
                prop_assert_eq!(zero.coeff(e), Some(a));
            }
            // p-adic keeps exactly the char-0 support, char-p a subset of it
            prop_assert_eq!(padic.support(), zero.support());
            for (e, a) in padic.terms() {
                if charp.coeff(e).is_some() {
                    prop_assert_eq!(charp.coeff(e), Some(a));
                }
            }
        }

        #[test]
        fn derivative_commutes_with_shift(f in small_poly(), l in small_form(), c in -5i64..5) {
            for regime in [ValuationRegime::CharZero, ValuationRegime::char_p(3).unwrap(), ValuationRegime::padic(2).unwrap()] {
                let lhs = euler_derivative(&f, &l, &regime).unwrap().add_constant(&rat(c));
                let rhs = euler_derivative(&f.add_constant(&rat(c)), &l, &regime).unwrap();
                prop_assert_eq!(lhs, rhs);
            }
        }

        #[test]
        fn display_parse_round_trip(b0 in -30i64..30, b1 in -5i64..5, b2 in -5i64..5) {
            if let Ok(l) = LinearForm::primitive(BigInt::from(b0), vec![BigInt::from(b1), BigInt::from(b2)]) {
                prop_assert_eq!(LinearForm::parse(&l.to_string(), 2).unwrap(), l);
            }
        }
    }
}
