//! Min-plus Laurent polynomials with exact rational coefficients.
//!
//! A [`TropicalPolynomial`] is a finite map from integer exponent vectors to
//! coefficients; as a function it is `f(b) = min_i (a_i + <i, b>)`. A point
//! is a tropical root when the minimum is attained by at least two terms.

use std::collections::BTreeMap;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::arith::{format_rational, rat, Rational};
use crate::error::{Error, Result};

pub type Exponent = Vec<i64>;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point(pub Vec<Rational>);

impl Point {
    pub fn new(coords: Vec<Rational>) -> Self {
        Point(coords)
    }

    pub fn origin(dim: usize) -> Self {
        Point(vec![Rational::zero(); dim])
    }

    pub fn univariate(b: Rational) -> Self {
        Point(vec![b])
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn coords(&self) -> &[Rational] {
        &self.0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (k, c) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rational(c))?;
        }
        write!(f, ")")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct TropicalPolynomial {
    dim: usize,
    terms: BTreeMap<Exponent, Rational>,
}

/// A tropical root of a univariate polynomial together with the exponents
/// attaining the minimum there.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UnivariateRoot {
    pub root: Rational,
    pub argmin: Vec<i64>,
}

impl TropicalPolynomial {
    /// The empty polynomial in `dim` variables.
    pub fn empty(dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidInput("dimension must be positive".into()));
        }
        Ok(TropicalPolynomial { dim, terms: BTreeMap::new() })
    }

    pub fn from_terms(dim: usize, terms: impl IntoIterator<Item = (Exponent, Rational)>) -> Result<Self> {
        let mut poly = Self::empty(dim)?;
        for (exp, coeff) in terms {
            if exp.len() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: exp.len() });
            }
            if poly.terms.contains_key(&exp) {
                return Err(Error::DuplicateExponent(exp));
            }
            poly.terms.insert(exp, coeff);
        }
        Ok(poly)
    }

    pub fn univariate(terms: impl IntoIterator<Item = (i64, Rational)>) -> Result<Self> {
        Self::from_terms(1, terms.into_iter().map(|(i, a)| (vec![i], a)))
    }

    /// `a_0 ⊕ a_1 x ⊕ … ⊕ a_n x^n`.
    pub fn from_dense(coeffs: &[Rational]) -> Self {
        let terms = coeffs.iter().enumerate().map(|(i, a)| (vec![i as i64], a.clone())).collect();
        TropicalPolynomial { dim: 1, terms }
    }

    pub fn from_dense_ints(coeffs: &[i64]) -> Self {
        let coeffs: Vec<Rational> = coeffs.iter().map(|&a| rat(a)).collect();
        Self::from_dense(&coeffs)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &Rational)> {
        self.terms.iter()
    }

    pub fn support(&self) -> Vec<Exponent> {
        self.terms.keys().cloned().collect()
    }

    pub fn coeff(&self, exp: &[i64]) -> Option<&Rational> {
        self.terms.get(exp)
    }

    /// Coefficients of a univariate polynomial keyed by exponent.
    pub fn univariate_terms(&self) -> Result<Vec<(i64, Rational)>> {
        self.require_univariate()?;
        Ok(self.terms.iter().map(|(e, a)| (e[0], a.clone())).collect())
    }

    pub fn degree(&self) -> Result<i64> {
        self.require_univariate()?;
        self.terms.keys().map(|e| e[0]).max().ok_or(Error::EmptyPolynomial)
    }

    pub fn min_coefficient(&self) -> Option<&Rational> {
        self.terms.values().min()
    }

    pub fn max_coefficient(&self) -> Option<&Rational> {
        self.terms.values().max()
    }

    fn require_univariate(&self) -> Result<()> {
        if self.dim != 1 {
            return Err(Error::DimensionMismatch { expected: 1, found: self.dim });
        }
        Ok(())
    }

    fn check_point(&self, b: &Point) -> Result<()> {
        if b.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: b.dim() });
        }
        if self.terms.is_empty() {
            return Err(Error::EmptyPolynomial);
        }
        Ok(())
    }

    /// `a_i + <i, b>` for one term.
    pub fn term_value(exp: &[i64], coeff: &Rational, b: &Point) -> Rational {
        exp.iter()
            .zip(b.coords())
            .fold(coeff.clone(), |acc, (&e, c)| if e == 0 { acc } else { acc + c * rat(e) })
    }

    pub fn evaluate(&self, b: &Point) -> Result<Rational> {
        self.check_point(b)?;
        Ok(self
            .terms
            .iter()
            .map(|(e, a)| Self::term_value(e, a, b))
            .min()
            .expect("non-empty"))
    }

    /// Exponents attaining the minimum at `b`, in lexicographic order.
    pub fn argmin_support(&self, b: &Point) -> Result<Vec<Exponent>> {
        self.check_point(b)?;
        let values: Vec<(&Exponent, Rational)> =
            self.terms.iter().map(|(e, a)| (e, Self::term_value(e, a, b))).collect();
        let min = values.iter().map(|(_, v)| v).min().expect("non-empty").clone();
        Ok(values.into_iter().filter(|(_, v)| *v == min).map(|(e, _)| e.clone()).collect())
    }

    pub fn is_tropical_root(&self, b: &Point) -> Result<bool> {
        Ok(self.argmin_support(b)?.len() >= 2)
    }

    /// All tropical roots of a univariate polynomial in increasing order.
    ///
    /// Roots are the negated slopes of the lower convex hull of
    /// `{(i, a_i)}`; polynomials with fewer than two terms have none.
    pub fn univariate_roots(&self) -> Result<Vec<UnivariateRoot>> {
        self.require_univariate()?;
        let points: Vec<(i64, &Rational)> = self.terms.iter().map(|(e, a)| (e[0], a)).collect();
        if points.len() < 2 {
            return Ok(Vec::new());
        }
        let hull = lower_hull(&points);
        let mut roots = Vec::with_capacity(hull.len() - 1);
        for w in hull.windows(2) {
            let (u, au) = w[0];
            let (v, av) = w[1];
            let b = (au - av) / rat(v - u);
            let argmin = self.argmin_support(&Point::univariate(b.clone()))?;
            roots.push(UnivariateRoot { root: b, argmin: argmin.into_iter().map(|e| e[0]).collect() });
        }
        roots.sort_by(|x, y| x.root.cmp(&y.root));
        Ok(roots)
    }

    /// Subtracts the minimum coefficient from every coefficient.
    pub fn normalize(&self) -> Self {
        match self.min_coefficient().cloned() {
            Some(m) => self.add_constant(&-m),
            None => self.clone(),
        }
    }

    pub fn add_constant(&self, c: &Rational) -> Self {
        self.map_coefficients(|_, a| a + c)
    }

    /// Multiplies every coefficient by `k` (tropical power / fan scaling).
    pub fn scale(&self, k: &Rational) -> Self {
        self.map_coefficients(|_, a| a * k)
    }

    /// The polynomial `g(x) = f(x + c)`: `a_i ↦ a_i + <i, c>`. Its roots are
    /// those of `f` translated by `−c`.
    pub fn translate(&self, c: &Point) -> Result<Self> {
        if c.dim() != self.dim {
            return Err(Error::DimensionMismatch { expected: self.dim, found: c.dim() });
        }
        Ok(self.map_coefficients(|e, a| Self::term_value(e, a, c)))
    }

    pub fn map_coefficients(&self, mut g: impl FnMut(&Exponent, &Rational) -> Rational) -> Self {
        TropicalPolynomial { dim: self.dim, terms: self.terms.iter().map(|(e, a)| (e.clone(), g(e, a))).collect() }
    }

    /// Keeps the terms for which `keep` returns a (possibly adjusted)
    /// coefficient.
    pub fn filter_map_terms(&self, mut keep: impl FnMut(&Exponent, &Rational) -> Option<Rational>) -> Self {
        let terms = self.terms.iter().filter_map(|(e, a)| keep(e, a).map(|c| (e.clone(), c))).collect();
        TropicalPolynomial { dim: self.dim, terms }
    }

    pub fn is_integral(&self) -> bool {
        self.terms.values().all(|a| a.is_integer())
    }
}

/// Lower convex hull vertices of points sorted by abscissa (collinear
/// interior points dropped).
fn lower_hull<'a>(points: &[(i64, &'a Rational)]) -> Vec<(i64, &'a Rational)> {
    let mut hull: Vec<(i64, &Rational)> = Vec::new();
    for &p in points {
        while hull.len() >= 2 {
            let (x1, y1) = hull[hull.len() - 2];
            let (x2, y2) = hull[hull.len() - 1];
            // Pop x2 unless it lies strictly below the chord x1 -> p.
            let cross = (y2 - y1) * rat(p.0 - x1) - (p.1 - y1) * rat(x2 - x1);
            if !cross.is_negative() {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push(p);
    }
    hull
}

impl fmt::Display for TropicalPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "∞");
        }
        let names = variable_names(self.dim);
        for (k, (exp, a)) in self.terms.iter().enumerate() {
            if k > 0 {
                write!(f, " ⊕ ")?;
            }
            write!(f, "{}", format_rational(a))?;
            for (name, &e) in names.iter().zip(exp) {
                match e {
                    0 => {}
                    1 => write!(f, "{name}")?,
                    _ => write!(f, "{name}^{e}")?,
                }
            }
        }
        Ok(())
    }
}

/// `x`, `x,y`, `x,y,z`, then `x1..xd`.
pub fn variable_names(dim: usize) -> Vec<String> {
    match dim {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        3 => vec!["x".into(), "y".into(), "z".into()],
        _ => (1..=dim).map(|k| format!("x{k}")).collect(),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use proptest::prelude::*;

    fn bivariate_example() -> TropicalPolynomial {
        TropicalPolynomial::from_terms(
            2,
            [
                (vec![0, 0], rat(0)),
                (vec![2, 0], rat(0)),
                (vec![0, 2], rat(0)),
                (vec![2, 2], rat(0)),
                (vec![3, 0], rat(1)),
            ],
        )
        .unwrap()
    }

    #[test]
    fn evaluate_examples() {
        let g = TropicalPolynomial::from_dense_ints(&[0, 1, 0]);
        assert_eq!(g.evaluate(&Point::origin(1)).unwrap(), rat(0));
        let c = TropicalPolynomial::univariate([(0, rat(5))]).unwrap();
        assert_eq!(c.evaluate(&Point::univariate(ratio(-7, 3))).unwrap(), rat(5));
        assert_eq!(bivariate_example().evaluate(&Point::origin(2)).unwrap(), rat(0));
    }

    #[test]
    fn argmin_examples() {
        let g = TropicalPolynomial::from_dense_ints(&[0, 1, 0]);
        assert_eq!(g.argmin_support(&Point::origin(1)).unwrap(), vec![vec![0], vec![2]]);
        let f = TropicalPolynomial::from_dense_ints(&[0, 0, 0]);
        assert_eq!(f.argmin_support(&Point::origin(1)).unwrap().len(), 3);
        assert_eq!(
            bivariate_example().argmin_support(&Point::origin(2)).unwrap(),
            vec![vec![0, 0], vec![0, 2], vec![2, 0], vec![2, 2]]
        );
    }

    #[test]
    fn root_predicate() {
        let g = TropicalPolynomial::from_dense_ints(&[0, 1, 0]);
        assert!(g.is_tropical_root(&Point::origin(1)).unwrap());
        // term values at b = 1 are 0, 2, 2: minimum attained once.
        assert!(!g.is_tropical_root(&Point::univariate(rat(1))).unwrap());
        let c = TropicalPolynomial::univariate([(3, rat(2))]).unwrap();
        assert!(!c.is_tropical_root(&Point::univariate(rat(4))).unwrap());
    }

    #[test]
    fn errors() {
        let g = TropicalPolynomial::from_dense_ints(&[0, 1, 0]);
        assert!(matches!(g.evaluate(&Point::origin(2)), Err(Error::DimensionMismatch { .. })));
        let e = TropicalPolynomial::empty(1).unwrap();
        assert!(matches!(e.evaluate(&Point::origin(1)), Err(Error::EmptyPolynomial)));
        assert!(matches!(
            TropicalPolynomial::from_terms(1, [(vec![1], rat(0)), (vec![1], rat(2))]),
            Err(Error::DuplicateExponent(_))
        ));
        assert!(TropicalPolynomial::from_terms(2, [(vec![1], rat(0))]).is_err());
    }

    #[test]
    fn univariate_root_examples() {
        let f = TropicalPolynomial::from_dense_ints(&[0, 0, 0]);
        assert_eq!(f.univariate_roots().unwrap(), vec![UnivariateRoot { root: rat(0), argmin: vec![0, 1, 2] }]);
        let f = TropicalPolynomial::from_dense_ints(&[0, 0]);
        assert_eq!(f.univariate_roots().unwrap(), vec![UnivariateRoot { root: rat(0), argmin: vec![0, 1] }]);
        let f = TropicalPolynomial::from_dense_ints(&[0, 0, 1]);
        assert_eq!(
            f.univariate_roots().unwrap(),
            vec![
                UnivariateRoot { root: rat(-1), argmin: vec![1, 2] },
                UnivariateRoot { root: rat(0), argmin: vec![0, 1] },
            ]
        );
        let single = TropicalPolynomial::univariate([(2, rat(1))]).unwrap();
        assert!(single.univariate_roots().unwrap().is_empty());
    }

    #[test]
    fn normalize_examples() {
        assert_eq!(
            TropicalPolynomial::from_dense_ints(&[3, 4]).normalize(),
            TropicalPolynomial::from_dense_ints(&[0, 1])
        );
        assert_eq!(
            TropicalPolynomial::from_dense_ints(&[0, 0]).normalize(),
            TropicalPolynomial::from_dense_ints(&[0, 0])
        );
        assert_eq!(
            TropicalPolynomial::from_dense_ints(&[5, 7, 5]).normalize(),
            TropicalPolynomial::from_dense_ints(&[0, 2, 0])
        );
    }

    fn small_poly() -> impl Strategy<Value = TropicalPolynomial> {
        proptest::collection::btree_map(-4i64..8, (-12i64..12, 1i64..4), 1..7).prop_map(|m| {
            TropicalPolynomial::univariate(m.into_iter().map(|(e, (n, d))| (e, ratio(n, d)))).unwrap()
        })
    }

    /// Brute-force oracle: sign changes of pairwise term comparisons on a
    /// rational grid much finer than the gap between candidate breakpoints.
    fn brute_force_roots(f: &TropicalPolynomial) -> Vec<Rational> {
        let terms = f.univariate_terms().unwrap();
        let mut candidates = Vec::new();
        for (x, (i, ai)) in terms.iter().enumerate() {
            for (j, aj) in &terms[x + 1..] {
                candidates.push((ai - aj) / rat(j - i));
            }
        }
        candidates.sort();
        candidates.dedup();
        let mut roots = Vec::new();
        for c in &candidates {
            // A root is a point where the argmin changes or is non-unique;
            // compare the argmin just left, at, and just right of c.
            let delta = ratio(1, 1_000_000);
            let at = f.argmin_support(&Point::univariate(c.clone())).unwrap();
            let left = f.argmin_support(&Point::univariate(c - &delta)).unwrap();
            let right = f.argmin_support(&Point::univariate(c + &delta)).unwrap();
            if at.len() >= 2 {
                assert!(left != right || left.len() >= 2);
                roots.push(c.clone());
            } else {
                assert_eq!(left, right);
            }
        }
        roots
    }

    proptest! {
        #[test]
        fn roots_match_brute_force(f in small_poly()) {
            let roots: Vec<Rational> = f.univariate_roots().unwrap().into_iter().map(|r| r.root).collect();
            prop_assert!(roots.windows(2).all(|w| w[0] < w[1]));
            prop_assert_eq!(roots, brute_force_roots(&f));
        }

        #[test]
        fn normalize_shifts_values(f in small_poly(), n in -20i64..20, d in 1i64..5) {
            let b = Point::univariate(ratio(n, d));
            let g = f.normalize();
            let m = f.min_coefficient().unwrap().clone();
            prop_assert_eq!(g.evaluate(&b).unwrap(), f.evaluate(&b).unwrap() - m);
            prop_assert_eq!(g.argmin_support(&b).unwrap(), f.argmin_support(&b).unwrap());
        }

        #[test]
        fn argmin_invariances(f in small_poly(), n in -20i64..20, cn in -9i64..9, k in -5i64..5) {
            let b = Point::univariate(ratio(n, 3));
            let shift = ratio(k, 2);
            prop_assert_eq!(f.add_constant(&shift).argmin_support(&b).unwrap(), f.argmin_support(&b).unwrap());
            let c = Point::univariate(ratio(cn, 2));
            let g = f.translate(&c).unwrap();
            let moved = Point::univariate(&b.0[0] - &c.0[0]);
            prop_assert_eq!(g.argmin_support(&moved).unwrap(), f.argmin_support(&b).unwrap());
        }
    }
}
