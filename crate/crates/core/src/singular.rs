//! Singular points of tropical hypersurfaces.
//!
//! A point `b` is singular for `f` when it is a tropical root of every
//! derivative in the regime's derivative family. A derivative with no
//! terms has no roots, so it always fails.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::arith::{solve_square, Rational};
use crate::error::{Error, Result};
use crate::euler::{derivative_family_for, euler_derivative, FamilyForm, LinearForm, ValuationRegime};
use crate::trop_core::{Exponent, Point, TropicalPolynomial};

/// Default bound on `|support|` for multivariate candidate enumeration.
pub const DEFAULT_SUPPORT_BOUND: usize = 16;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub form: FamilyForm,
    /// Argmin of the derivative at the point; empty when every term was
    /// killed.
    pub argmin: Vec<Exponent>,
    pub derivative_empty: bool,
}

impl Witness {
    pub fn passes(&self) -> bool {
        self.argmin.len() >= 2
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SingularityReport {
    pub point: Point,
    pub is_singular: bool,
    pub witnesses: Vec<Witness>,
    pub failing_form: Option<LinearForm>,
}

impl SingularityReport {
    pub fn failing_label(&self) -> Option<&str> {
        let form = self.failing_form.as_ref()?;
        self.witnesses.iter().find(|w| &w.form.form == form).map(|w| w.form.label.as_str())
    }
}

fn report_with_family(f: &TropicalPolynomial, b: &Point, regime: &ValuationRegime, family: &[FamilyForm]) -> Result<SingularityReport> {
    if b.dim() != f.dim() {
        return Err(Error::DimensionMismatch { expected: f.dim(), found: b.dim() });
    }
    let mut witnesses = Vec::with_capacity(family.len());
    for form in family {
        let d = euler_derivative(f, &form.form, regime)?;
        let argmin = if d.is_empty() { Vec::new() } else { d.argmin_support(b)? };
        witnesses.push(Witness { form: form.clone(), argmin, derivative_empty: d.is_empty() });
    }
    let is_singular = witnesses.iter().all(Witness::passes);
    // Prefer a failure with a surviving monomial: it shows where the
    // minimum is isolated rather than just that everything was killed.
    let failing_form = if is_singular {
        None
    } else {
        witnesses
            .iter()
            .find(|w| !w.passes() && !w.derivative_empty)
            .or_else(|| witnesses.iter().find(|w| !w.passes()))
            .map(|w| w.form.form.clone())
    };
    Ok(SingularityReport { point: b.clone(), is_singular, witnesses, failing_form })
}

pub fn is_singular_at(f: &TropicalPolynomial, b: &Point, regime: &ValuationRegime) -> Result<SingularityReport> {
    if f.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let family = derivative_family_for(f, regime)?;
    report_with_family(f, b, regime, &family)
}

/// One report per tropical root of a univariate `f`.
pub fn singular_points_univariate(f: &TropicalPolynomial, regime: &ValuationRegime) -> Result<Vec<SingularityReport>> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim() });
    }
    if f.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let family = derivative_family_for(f, regime)?;
    let roots = f.univariate_roots()?;
    roots
        .par_iter()
        .map(|r| report_with_family(f, &Point::univariate(r.root.clone()), regime, &family))
        .collect()
}

/// Singular vertices of a multivariate hypersurface, ordered
/// lexicographically.
pub fn singular_points_multivariate(f: &TropicalPolynomial, regime: &ValuationRegime) -> Result<Vec<SingularityReport>> {
    singular_points_multivariate_bounded(f, regime, DEFAULT_SUPPORT_BOUND)
}

pub fn singular_points_multivariate_bounded(
    f: &TropicalPolynomial,
    regime: &ValuationRegime,
    support_bound: usize,
) -> Result<Vec<SingularityReport>> {
    let d = f.dim();
    if d < 2 {
        return Err(Error::InvalidInput("multivariate singular locus needs at least two variables".into()));
    }
    if matches!(regime, ValuationRegime::PAdic(_)) {
        return Err(Error::Unsupported("p-adic families are univariate only".into()));
    }
    if f.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    if f.len() > support_bound {
        return Err(Error::SizeLimit(format!("support of size {} exceeds bound {support_bound}", f.len())));
    }
    let family = derivative_family_for(f, regime)?;
    let mut planes: BTreeSet<(Vec<BigInt>, Rational)> = BTreeSet::new();
    for form in &family {
        let der = euler_derivative(f, &form.form, regime)?;
        let terms: Vec<(&Exponent, &Rational)> = der.terms().collect();
        for (x, (ei, ai)) in terms.iter().enumerate() {
            for (ej, aj) in &terms[x + 1..] {
                // <i - j, b> = a_j - a_i
                let normal: Vec<i64> = ei.iter().zip(ej.iter()).map(|(a, b)| a - b).collect();
                planes.insert(normalize_plane(&normal, &(*aj - *ai)));
            }
        }
    }
    let planes: Vec<(Vec<BigInt>, Rational)> = planes.into_iter().collect();
    let mut candidates: BTreeSet<Vec<Rational>> = BTreeSet::new();
    let mut subset = Vec::with_capacity(d);
    collect_vertices(&planes, d, 0, &mut subset, &mut candidates);
    let candidates: Vec<Vec<Rational>> = candidates.into_iter().collect();
    let reports: Vec<Option<SingularityReport>> = candidates
        .par_iter()
        .map(|c| {
            let b = Point::new(c.clone());
            if !f.is_tropical_root(&b)? {
                return Ok(None);
            }
            let r = report_with_family(f, &b, regime, &family)?;
            Ok(r.is_singular.then_some(r))
        })
        .collect::<Result<_>>()?;
    Ok(reports.into_iter().flatten().collect())
}

fn normalize_plane(normal: &[i64], rhs: &Rational) -> (Vec<BigInt>, Rational) {
    let g = normal.iter().fold(0i64, |g, &x| num_integer::gcd(g, x));
    let sign = if normal.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) { -1 } else { 1 };
    let scale = g * sign;
    let n: Vec<BigInt> = normal.iter().map(|x| BigInt::from(x / scale)).collect();
    (n, rhs / Rational::from_integer(BigInt::from(scale)))
}

fn collect_vertices(
    planes: &[(Vec<BigInt>, Rational)],
    d: usize,
    start: usize,
    subset: &mut Vec<usize>,
    out: &mut BTreeSet<Vec<Rational>>,
) {
    if subset.len() == d {
        let a: Vec<Vec<Rational>> = subset
            .iter()
            .map(|&k| planes[k].0.iter().map(|x| Rational::from_integer(x.clone())).collect())
            .collect();
        let rhs: Vec<Rational> = subset.iter().map(|&k| planes[k].1.clone()).collect();
        if let Some(x) = solve_square(&a, &rhs) {
            out.insert(x);
        }
        return;
    }
    for k in start..planes.len() {
        // skip planes parallel to the first chosen one early
        if subset.len() == 1 && planes[k].0 == planes[subset[0]].0 {
            continue;
        }
        subset.push(k);
        collect_vertices(planes, d, k + 1, subset, out);
        subset.pop();
    }
}

/// Outcome of comparing `p`-adic and characteristic-`p` singular loci on a
/// small ball around the origin of coefficient space.
#[derive(Clone, Debug)]
pub struct PadicComparison {
    pub p: u64,
    pub scaled: TropicalPolynomial,
    pub char_p: Vec<SingularityReport>,
    pub padic: Vec<SingularityReport>,
    pub agree: bool,
}

/// Rescales `f` so every coefficient lies in `(-epsilon, epsilon)` and
/// compares the univariate singular loci in `CharP(p)` and `PAdic(p)`.
pub fn padic_interpolation_check(f: &TropicalPolynomial, p: u64, epsilon: &Rational) -> Result<PadicComparison> {
    if !epsilon.is_positive() {
        return Err(Error::InvalidInput("epsilon must be positive".into()));
    }
    let scaled = scale_into_ball(f, epsilon);
    let char_p = singular_points_univariate(&scaled, &ValuationRegime::char_p(p)?)?;
    let padic = singular_points_univariate(&scaled, &ValuationRegime::padic(p)?)?;
    let agree = char_p.len() == padic.len()
        && char_p.iter().zip(&padic).all(|(a, b)| a.point == b.point && a.is_singular == b.is_singular);
    Ok(PadicComparison { p, scaled, char_p, padic, agree })
}

/// `f` scaled by a positive rational so that `max |a_i| < epsilon`.
pub fn scale_into_ball(f: &TropicalPolynomial, epsilon: &Rational) -> TropicalPolynomial {
    let bound = f.terms().map(|(_, a)| a.abs()).max().unwrap_or_else(Rational::zero);
    if bound < *epsilon {
        return f.clone();
    }
    f.scale(&(epsilon / (bound * Rational::from_integer(BigInt::from(2)))))
}

/// Singularity verdicts at the origin in `CharP(p)` and `PAdic(p)`.
pub fn padic_verdicts_at_zero(f: &TropicalPolynomial, p: u64) -> Result<(SingularityReport, SingularityReport)> {
    let b = Point::origin(1);
    Ok((is_singular_at(f, &b, &ValuationRegime::char_p(p)?)?, is_singular_at(f, &b, &ValuationRegime::padic(p)?)?))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};
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
    fn quadratic_examples() {
        let zero = Point::origin(1);
        let f = TropicalPolynomial::from_dense_ints(&[0, 0, 0]);
        let g = TropicalPolynomial::from_dense_ints(&[0, 1, 0]);
        assert!(is_singular_at(&f, &zero, &ValuationRegime::CharZero).unwrap().is_singular);
        assert!(!is_singular_at(&f, &zero, &ValuationRegime::padic(2).unwrap()).unwrap().is_singular);
        assert!(is_singular_at(&g, &zero, &ValuationRegime::padic(2).unwrap()).unwrap().is_singular);
        let r = is_singular_at(&g, &zero, &ValuationRegime::CharZero).unwrap();
        assert!(!r.is_singular);
        assert!(r.failing_form.is_some());
    }

    #[test]
    fn bivariate_verdicts() {
        let f = bivariate_example();
        let b = Point::origin(2);
        assert!(is_singular_at(&f, &b, &ValuationRegime::char_p(3).unwrap()).unwrap().is_singular);
        let r = is_singular_at(&f, &b, &ValuationRegime::char_p(2).unwrap()).unwrap();
        assert!(!r.is_singular);
        assert_eq!(r.failing_form.unwrap().to_string(), "x-y");
    }

    #[test]
    fn univariate_loci() {
        let f = TropicalPolynomial::from_dense_ints(&[0, 0, 0]);
        let r = singular_points_univariate(&f, &ValuationRegime::CharZero).unwrap();
        assert_eq!(r.len(), 1);
        assert!(r[0].is_singular);
        assert_eq!(r[0].point, Point::origin(1));

        // ∂f/∂x = 1x is a single monomial
        let g = TropicalPolynomial::from_dense_ints(&[0, 1, 0]);
        let r = singular_points_univariate(&g, &ValuationRegime::char_p(2).unwrap()).unwrap();
        assert_eq!(r.len(), 1);
        assert!(!r[0].is_singular);
        assert_eq!(r[0].failing_form.as_ref().unwrap().to_string(), "x");

        let convex = TropicalPolynomial::from_dense_ints(&[0, 0, 1, 3, 6]);
        let r = singular_points_univariate(&convex, &ValuationRegime::CharZero).unwrap();
        assert_eq!(r.len(), 4);
        assert!(r.iter().all(|r| !r.is_singular));
    }

    #[test]
    fn multivariate_loci() {
        let f = bivariate_example();
        let r = singular_points_multivariate(&f, &ValuationRegime::char_p(3).unwrap()).unwrap();
        assert_eq!(r.iter().map(|r| r.point.clone()).collect::<Vec<_>>(), vec![Point::origin(2)]);
        assert!(singular_points_multivariate(&f, &ValuationRegime::char_p(2).unwrap()).unwrap().is_empty());
        let line = TropicalPolynomial::from_terms(2, [(vec![0, 0], rat(0)), (vec![1, 0], rat(0)), (vec![0, 1], rat(0))]).unwrap();
        assert!(singular_points_multivariate(&line, &ValuationRegime::CharZero).unwrap().is_empty());
        assert!(matches!(
            singular_points_multivariate_bounded(&f, &ValuationRegime::CharZero, 3),
            Err(Error::SizeLimit(_))
        ));
    }

    #[test]
    fn multivariate_conic_with_node() {
        // (x + y + 1)^2 style: every coefficient 0 on the degree-2 triangle
        let f = TropicalPolynomial::from_terms(
            2,
            [[0, 0], [1, 0], [0, 1], [2, 0], [1, 1], [0, 2]].iter().map(|e| (e.to_vec(), rat(0))),
        )
        .unwrap();
        let r = singular_points_multivariate(&f, &ValuationRegime::CharZero).unwrap();
        assert!(r.iter().any(|r| r.point == Point::origin(2)));
    }

    #[test]
    fn padic_small_ball_example() {
        let f = TropicalPolynomial::from_dense_ints(&[0, 1, 0]);
        let cmp = padic_interpolation_check(&f, 2, &ratio(1, 1000)).unwrap();
        assert!(cmp.agree);
        assert!(cmp.scaled.terms().all(|(_, a)| a.abs() < ratio(1, 1000)));
    }

    fn small_poly(max_deg: i64) -> impl Strategy<Value = TropicalPolynomial> {
        proptest::collection::btree_map(0i64..=max_deg, 0i64..4, 2..=(max_deg as usize + 1))
            .prop_map(|m| TropicalPolynomial::univariate(m.into_iter().map(|(e, a)| (e, rat(a)))).unwrap())
    }

    fn verdict_with(f: &TropicalPolynomial, b: &Point, regime: &ValuationRegime, forms: &[LinearForm]) -> bool {
        forms.iter().all(|l| {
            let d = euler_derivative(f, l, regime).unwrap();
            !d.is_empty() && d.is_tropical_root(b).unwrap()
        })
    }

    proptest! {
        #[test]
        fn large_characteristic_matches_char_zero(f in small_poly(6)) {
            // spread ≤ 6, so p = 11 > 1 + 6
            for r in f.univariate_roots().unwrap() {
                let b = Point::univariate(r.root);
                prop_assert_eq!(
                    is_singular_at(&f, &b, &ValuationRegime::char_p(11).unwrap()).unwrap().is_singular,
                    is_singular_at(&f, &b, &ValuationRegime::CharZero).unwrap().is_singular
                );
            }
        }

        #[test]
        fn verdict_is_a_cone_property(f in small_poly(6), c in -5i64..5, num in 1i64..7, den in 1i64..7) {
            let zero = Point::origin(1);
            for regime in [ValuationRegime::CharZero, ValuationRegime::char_p(2).unwrap(), ValuationRegime::char_p(3).unwrap()] {
                let v = is_singular_at(&f, &zero, &regime).unwrap().is_singular;
                prop_assert_eq!(is_singular_at(&f.add_constant(&rat(c)), &zero, &regime).unwrap().is_singular, v);
                prop_assert_eq!(is_singular_at(&f.scale(&ratio(num, den)), &zero, &regime).unwrap().is_singular, v);
            }
        }

        #[test]
        fn singular_points_are_roots(f in small_poly(7), pi in 0usize..3) {
            let regime = [ValuationRegime::CharZero, ValuationRegime::char_p(2).unwrap(), ValuationRegime::padic(3).unwrap()][pi];
            let roots: Vec<Rational> = f.univariate_roots().unwrap().into_iter().map(|r| r.root).collect();
            for rep in singular_points_univariate(&f, &regime).unwrap() {
                prop_assert!(roots.contains(&rep.point.coords()[0]));
                prop_assert_eq!(rep.failing_form.is_none(), rep.is_singular);
            }
        }

        #[test]
        fn family_verdict_matches_all_small_forms(f in small_poly(6), pi in 0usize..3, b in -3i64..3) {
            let p = [2i64, 3, 5][pi];
            let regime = ValuationRegime::char_p(p as u64).unwrap();
            let point = Point::univariate(rat(b));
            let family = is_singular_at(&f, &point, &regime).unwrap().is_singular;
            let mut forms = vec![LinearForm::one(1)];
            forms.extend((0..p).map(LinearForm::x_minus));
            prop_assert_eq!(verdict_with(&f, &point, &regime, &forms), family);
            for b0 in -3 * p..=3 * p {
                for b1 in -3 * p..=3 * p {
                    if let Ok(l) = LinearForm::primitive(BigInt::from(b0), vec![BigInt::from(b1)]) {
                        forms.push(l);
                    }
                }
            }
            prop_assert_eq!(verdict_with(&f, &point, &regime, &forms), family);
        }

        #[test]
        fn padic_family_is_complete_against_wide_forms(f in small_poly(6), pi in 0usize..2) {
            let p = [2u64, 3][pi];
            let regime = ValuationRegime::padic(p).unwrap();
            let mut forms = Vec::new();
            for b0 in -80i64..=80 {
                for b1 in -6i64..=6 {
                    if let Ok(l) = LinearForm::primitive(BigInt::from(b0), vec![BigInt::from(b1)]) {
                        forms.push(l);
                    }
                }
            }
            for r in f.univariate_roots().unwrap() {
                let b = Point::univariate(r.root);
                if is_singular_at(&f, &b, &regime).unwrap().is_singular {
                    prop_assert!(verdict_with(&f, &b, &regime, &forms));
                }
            }
        }
    }
}
