//! Characteristic 2: a polynomial splits into its even and odd parts, and
//! a double root is a common root of the two parts after halving.

use std::collections::BTreeSet;

use crate::arith::{ratio, Rational};
use crate::error::{Error, Result};
use crate::euler::ValuationRegime;
use crate::singular::singular_points_univariate;
use crate::trop_core::TropicalPolynomial;

/// `(g1, g0)` with `g1 = ⊕ a_{2i} y^i` and `g0 = ⊕ a_{2i+1} y^i`.
pub fn char2_halves(f: &TropicalPolynomial) -> Result<(TropicalPolynomial, TropicalPolynomial)> {
    let terms = f.univariate_terms()?;
    let part = |parity: i64| {
        TropicalPolynomial::univariate(
            terms.iter().filter(|(e, _)| e.rem_euclid(2) == parity).map(|(e, a)| ((e - parity) / 2, a.clone())),
        )
    };
    Ok((part(0)?, part(1)?))
}

fn root_set(g: &TropicalPolynomial) -> Result<BTreeSet<Rational>> {
    if g.len() < 2 {
        return Ok(BTreeSet::new());
    }
    Ok(g.univariate_roots()?.into_iter().map(|r| r.root).collect())
}

/// Both sides of the correspondence for one polynomial.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Char2Correspondence {
    /// Singular points of `f` under `CharP(2)`.
    pub singular_points: Vec<Rational>,
    /// Common roots of `g0` and `g1`, halved.
    pub halved_common_roots: Vec<Rational>,
    pub in_h: bool,
    pub both_vanish_at_zero: bool,
}

impl Char2Correspondence {
    pub fn agrees(&self) -> bool {
        self.singular_points == self.halved_common_roots && self.in_h == self.both_vanish_at_zero
    }
}

pub fn char2_correspondence(f: &TropicalPolynomial) -> Result<Char2Correspondence> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim() });
    }
    let (g1, g0) = char2_halves(f)?;
    let (r1, r0) = (root_set(&g1)?, root_set(&g0)?);
    let half = ratio(1, 2);
    let halved_common_roots: Vec<Rational> = r1.intersection(&r0).map(|y| y * &half).collect();
    let singular_points: Vec<Rational> = singular_points_univariate(f, &ValuationRegime::char_p(2)?)?
        .into_iter()
        .filter(|r| r.is_singular)
        .map(|r| r.point.coords()[0].clone())
        .collect();
    let zero = Rational::from_integer(0.into());
    let in_h = super::in_h(f, 2)?;
    Ok(Char2Correspondence {
        singular_points,
        halved_common_roots,
        in_h,
        both_vanish_at_zero: r1.contains(&zero) && r0.contains(&zero),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn halves_of_a_cubic() {
        let f = TropicalPolynomial::from_dense_ints(&[0, 1, 2, 3]);
        let (g1, g0) = char2_halves(&f).unwrap();
        assert_eq!(g1, TropicalPolynomial::from_dense_ints(&[0, 2]));
        assert_eq!(g0, TropicalPolynomial::from_dense_ints(&[1, 3]));
    }

    #[test]
    fn correspondence_examples() {
        // even part 0 + 0y, odd part 0 + 0y: common root 0
        let c = char2_correspondence(&TropicalPolynomial::from_dense_ints(&[0, 0, 0, 0])).unwrap();
        assert!(c.agrees());
        assert!(c.in_h);
        assert_eq!(c.singular_points, vec![rat(0)]);
        // common root y = 2 of g1 = 0 ⊕ -2y and g0 = 1 ⊕ -1y gives b = 1
        let f = TropicalPolynomial::from_dense_ints(&[0, 1, -2, -1]);
        let c = char2_correspondence(&f).unwrap();
        assert!(c.agrees());
        assert_eq!(c.halved_common_roots, vec![rat(1)]);
        assert!(!c.in_h);
        let c = char2_correspondence(&TropicalPolynomial::from_dense_ints(&[0, 5, 1, 0])).unwrap();
        assert!(c.agrees());
        assert!(c.singular_points.is_empty());
    }
}
