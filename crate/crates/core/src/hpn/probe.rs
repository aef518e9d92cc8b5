//! Local structure of the characteristic-`p` discriminant around a
//! codimension-one cell.
//!
//! A polynomial on such a cell satisfies a rank-2 system of tie
//! coincidences. Moving in the plane spanned by two of those coincidence
//! functionals, the discriminant shows up as finitely many rays; each ray
//! lies in one maximal cell.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{classify, Classification, ConeDescriptor};
use crate::arith::{primitive_direction, rank, rat, Rational};
use crate::error::{Error, Result};
use crate::euler::{euler_derivative, LinearForm, ValuationRegime};
use crate::singular::{is_singular_at, singular_points_univariate};
use crate::trop_core::{Exponent, Point, TropicalPolynomial};

/// Combinatorics of one tropical root of a perturbed polynomial.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct RootPattern {
    pub argmin: Vec<i64>,
    /// Argmin of `∂g/∂(x - r)` at the root for `r = 0..p`; empty when that
    /// derivative vanishes.
    pub deletions: Vec<Vec<i64>>,
    pub singular: bool,
    /// Cone of `H_{p,n}` containing the polynomial recentred at this root,
    /// for singular roots.
    pub descriptor: Option<ConeDescriptor>,
}

/// Extended combinatorial type of a perturbation, root by root.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct ProbeSignature {
    pub roots: Vec<RootPattern>,
}

impl ProbeSignature {
    /// Sorted multiset of cone descriptors at the singular roots.
    pub fn descriptors(&self) -> Vec<ConeDescriptor> {
        let mut d: Vec<ConeDescriptor> = self.roots.iter().filter_map(|r| r.descriptor.clone()).collect();
        d.sort();
        d
    }
}

#[derive(Clone, Debug)]
pub struct ProbeRay {
    /// Coordinates in the transverse plane.
    pub direction: (BigInt, BigInt),
    /// Perturbation vector over the support of `f`.
    pub perturbation: Vec<Rational>,
    pub epsilon: Rational,
    pub signature: ProbeSignature,
}

#[derive(Clone, Debug)]
pub struct AdjacencyReport {
    pub p: u64,
    pub singular_roots: Vec<Rational>,
    pub rank: usize,
    pub rays: Vec<ProbeRay>,
    /// Distinct signatures of the rays, sorted.
    pub signatures: Vec<ProbeSignature>,
    pub expected: usize,
    pub samples_checked: usize,
}

impl AdjacencyReport {
    pub fn count(&self) -> usize {
        self.signatures.len()
    }

    pub fn matches_expectation(&self) -> bool {
        self.count() == self.expected && self.rays.len() == self.expected
    }
}

struct CellData {
    support: Vec<Exponent>,
    all_rows: Vec<Vec<Rational>>,
    singular_rows: Vec<Vec<Rational>>,
    singular_roots: Vec<Rational>,
    singular_argmins: Vec<Vec<i64>>,
    slack: Rational,
}

fn index_of(support: &[Exponent], m: i64) -> usize {
    support.iter().position(|e| e[0] == m).expect("exponent from the support")
}

/// `(w_r - w_s)(j - i) + (r - s)(w_i - w_j)`: vanishes when the ties
/// `(i, j)` and `(r, s)` happen at the same point.
fn coincidence_row(support: &[Exponent], (i, j): (i64, i64), (r, s): (i64, i64)) -> Vec<Rational> {
    let mut row = vec![rat(0); support.len()];
    row[index_of(support, r)] += rat(j - i);
    row[index_of(support, s)] -= rat(j - i);
    row[index_of(support, i)] += rat(r - s);
    row[index_of(support, j)] -= rat(r - s);
    row
}

fn cell_data(f: &TropicalPolynomial, p: u64) -> Result<CellData> {
    let regime = ValuationRegime::char_p(p)?;
    let support = f.support();
    let roots = f.univariate_roots()?;
    let mut all_rows = Vec::new();
    let mut singular_rows = Vec::new();
    let mut singular_roots = Vec::new();
    let mut singular_argmins = Vec::new();
    let mut slack: Option<Rational> = None;
    for root in &roots {
        let b = Point::univariate(root.root.clone());
        let report = is_singular_at(f, &b, &regime)?;
        let s = &root.argmin;
        let mut rows = Vec::new();
        for w in &report.witnesses {
            let t: Vec<i64> = w.argmin.iter().map(|e| e[0]).collect();
            if t.len() < 2 {
                continue;
            }
            for (x, &i) in s.iter().enumerate() {
                for &j in &s[x + 1..] {
                    for (y, &r) in t.iter().enumerate() {
                        for &u in &t[y + 1..] {
                            let row = coincidence_row(&support, (i, j), (r, u));
                            if row.iter().any(|v| !v.is_zero()) {
                                rows.push(row);
                            }
                        }
                    }
                }
            }
        }
        if report.is_singular {
            singular_roots.push(root.root.clone());
            singular_argmins.push(s.clone());
            singular_rows.extend(rows.iter().cloned());
        }
        all_rows.extend(rows);
        let mut values: Vec<Rational> =
            f.terms().map(|(e, a)| TropicalPolynomial::term_value(e, a, &b)).collect();
        values.sort();
        values.dedup();
        for pair in values.windows(2) {
            let gap = &pair[1] - &pair[0];
            if slack.as_ref().is_none_or(|s| gap < *s) {
                slack = Some(gap);
            }
        }
    }
    Ok(CellData {
        support,
        all_rows,
        singular_rows,
        singular_roots,
        singular_argmins,
        slack: slack.unwrap_or_else(|| rat(1)),
    })
}

/// Ranks of the coincidence system and the singular roots of `f`.
pub(crate) struct CellSummary {
    pub rank_all: usize,
    pub rank_singular: usize,
    pub singular_roots: Vec<Rational>,
}

pub(crate) fn cell_summary(f: &TropicalPolynomial, p: u64) -> Result<CellSummary> {
    let cell = cell_data(f, p)?;
    Ok(CellSummary {
        rank_all: rank(&cell.all_rows),
        rank_singular: rank(&cell.singular_rows),
        singular_roots: cell.singular_roots,
    })
}

fn residue(m: i64, p: u64) -> i64 {
    m.rem_euclid(p as i64)
}

/// Number of maximal cells the incidence theorem predicts around `f`.
pub fn expected_adjacent_cones(f: &TropicalPolynomial, p: u64) -> Result<usize> {
    let cell = cell_data(f, p)?;
    match cell.singular_roots.len() {
        0 => Err(Error::NotSingular),
        1 => {
            let l0 = &cell.singular_argmins[0];
            let classes: BTreeSet<i64> = l0.iter().map(|&m| residue(m, p)).collect();
            Ok(if l0.len() == 4 && classes.len() == 4 { 4 } else { 3 })
        }
        _ => Ok(4),
    }
}

fn root_patterns(g: &TropicalPolynomial, p: u64, degree: u32) -> Result<Vec<RootPattern>> {
    let regime = ValuationRegime::char_p(p)?;
    let reports = singular_points_univariate(g, &regime)?;
    let deletions: Vec<TropicalPolynomial> =
        (0..p as i64).map(|r| euler_derivative(g, &LinearForm::x_minus(r), &regime)).collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(reports.len());
    for rep in reports {
        let b = &rep.point;
        let argmin = g.argmin_support(b)?.into_iter().map(|e| e[0]).collect();
        let dels = deletions
            .iter()
            .map(|d| {
                if d.is_empty() {
                    Ok(Vec::new())
                } else {
                    Ok(d.argmin_support(b)?.into_iter().map(|e| e[0]).collect())
                }
            })
            .collect::<Result<_>>()?;
        let descriptor = if rep.is_singular {
            match classify(&g.translate(b)?, degree, p)? {
                Classification::Maximal(c) => Some(c),
                _ => None,
            }
        } else {
            None
        };
        out.push(RootPattern { argmin, deletions: dels, singular: rep.is_singular, descriptor });
    }
    Ok(out)
}

fn perturb(f: &TropicalPolynomial, support: &[Exponent], w: &[Rational], eps: &Rational) -> TropicalPolynomial {
    f.map_coefficients(|e, a| {
        let k = support.iter().position(|s| s == e).expect("same support");
        a + eps * &w[k]
    })
}

fn dot(a: &[Rational], b: &[Rational]) -> Rational {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

fn combine(u1: &[Rational], u2: &[Rational], d: &(BigInt, BigInt)) -> Vec<Rational> {
    let (a, b) = (Rational::from_integer(d.0.clone()), Rational::from_integer(d.1.clone()));
    u1.iter().zip(u2).map(|(x, y)| x * &a + y * &b).collect()
}

fn cross(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> BigInt {
    &a.0 * &b.1 - &a.1 * &b.0
}

fn same_ray(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> bool {
    cross(a, b).is_zero() && (&a.0 * &b.0 + &a.1 * &b.1).is_positive()
}

/// Half-plane then cross-product order around the origin.
fn angle_cmp(a: &(BigInt, BigInt), b: &(BigInt, BigInt)) -> std::cmp::Ordering {
    let half = |v: &(BigInt, BigInt)| v.1.is_negative() || (v.1.is_zero() && v.0.is_negative());
    half(a).cmp(&half(b)).then_with(|| BigInt::zero().cmp(&cross(a, b)))
}

/// Rational points spread over the unit circle, via `t -> (1 - t², 2t)`.
fn circle_directions(samples: usize) -> Vec<(BigInt, BigInt)> {
    let mut out = BTreeSet::new();
    for k in 0..samples {
        let half = std::f64::consts::PI * k as f64 / samples as f64;
        if (half - std::f64::consts::FRAC_PI_2).abs() < 1e-9 {
            out.insert((BigInt::from(-1), BigInt::zero()));
            continue;
        }
        let t = BigInt::from((half.tan() * 1000.0).round().to_i64().unwrap_or(0));
        let den = BigInt::from(1000);
        let a = &den * &den - &t * &t;
        let b = BigInt::from(2) * &t * &den;
        let g = num_integer::Integer::gcd(&a, &b);
        out.insert((a / &g, b / &g));
    }
    out.into_iter().collect()
}

/// Probes the maximal cells of the characteristic-`p` discriminant around
/// a polynomial `f` lying on a codimension-one cell.
pub fn adjacency_probe(f: &TropicalPolynomial, p: u64, samples: usize) -> Result<AdjacencyReport> {
    let regime = ValuationRegime::char_p(p)?;
    let degree = u32::try_from(f.degree()?).map_err(|_| Error::InvalidInput("degree out of range".into()))?;
    if f.terms().any(|(e, _)| e[0] < 0) {
        return Err(Error::InvalidInput("exponents must be non-negative".into()));
    }
    let cell = cell_data(f, p)?;
    if cell.singular_roots.is_empty() {
        return Err(Error::NotSingular);
    }
    let rank_all = rank(&cell.all_rows);
    let rank_singular = rank(&cell.singular_rows);
    if rank_all != 2 || rank_singular != 2 {
        return Err(Error::NotCodimOneCell { rank: rank_all, singular_rank: rank_singular });
    }
    if cell.singular_roots.len() == 1 {
        let recentred = f.translate(&Point::univariate(cell.singular_roots[0].clone()))?;
        if let Classification::Maximal(_) = classify(&recentred, degree, p)? {
            // a coincidental tie inside one maximal cell
            return Err(Error::NotCodimOneCell { rank: 1, singular_rank: 1 });
        }
    }
    let expected = expected_adjacent_cones(f, p)?;

    let u1 = cell.singular_rows[0].clone();
    let u2 = cell
        .singular_rows
        .iter()
        .find(|r| rank(&[u1.clone(), (*r).clone()]) == 2)
        .expect("rank two")
        .clone();

    let mut candidates: BTreeSet<(BigInt, BigInt)> = BTreeSet::new();
    for row in &cell.all_rows {
        let (x, y) = (dot(row, &u1), dot(row, &u2));
        if x.is_zero() && y.is_zero() {
            continue;
        }
        let v = primitive_direction(&[y, -x]);
        candidates.insert((v[0].clone(), v[1].clone()));
        candidates.insert((-v[0].clone(), -v[1].clone()));
    }

    let n = degree as i64;
    let eps_for = |w: &[Rational]| -> Rational {
        let wmax = w.iter().map(|v| v.abs()).max().unwrap_or_else(|| rat(1));
        &cell.slack / (rat(4 * (1 + 2 * n)) * wmax)
    };
    let is_singular = |g: &TropicalPolynomial| -> Result<bool> {
        Ok(singular_points_univariate(g, &regime)?.iter().any(|r| r.is_singular))
    };

    let mut rays = Vec::new();
    for d in &candidates {
        let w = combine(&u1, &u2, d);
        let eps = eps_for(&w);
        let g = perturb(f, &cell.support, &w, &eps);
        if !is_singular(&g)? {
            continue;
        }
        let signature = ProbeSignature { roots: root_patterns(&g, p, degree)? };
        let half = &eps / rat(2);
        let g_half = perturb(f, &cell.support, &w, &half);
        let check = ProbeSignature { roots: root_patterns(&g_half, p, degree)? };
        if check != signature {
            return Err(Error::Mismatch(format!("signature along direction ({}, {}) changes with the radius", d.0, d.1)));
        }
        rays.push(ProbeRay { direction: d.clone(), perturbation: w, epsilon: eps, signature });
    }

    // Directions off the rays must leave the discriminant.
    let mut samples_checked = 0;
    let mut off_ray: Vec<(BigInt, BigInt)> = circle_directions(samples)
        .into_iter()
        .filter(|s| !rays.iter().any(|r| same_ray(&r.direction, s)))
        .collect();
    let mut sorted: Vec<&(BigInt, BigInt)> = rays.iter().map(|r| &r.direction).collect();
    sorted.sort_by(|a, b| angle_cmp(a, b));
    for k in 0..sorted.len() {
        let (a, b) = (sorted[k], sorted[(k + 1) % sorted.len()]);
        if cross(a, b).is_positive() {
            off_ray.push((&a.0 + &b.0, &a.1 + &b.1));
        }
    }
    for d in &off_ray {
        let w = combine(&u1, &u2, d);
        let g = perturb(f, &cell.support, &w, &eps_for(&w));
        samples_checked += 1;
        if is_singular(&g)? {
            return Err(Error::Mismatch(format!("direction ({}, {}) is singular but lies on no probed ray", d.0, d.1)));
        }
    }

    let signatures: Vec<ProbeSignature> =
        rays.iter().map(|r| r.signature.clone()).collect::<BTreeSet<_>>().into_iter().collect();
    Ok(AdjacencyReport {
        p,
        singular_roots: cell.singular_roots,
        rank: rank_all,
        rays,
        signatures,
        expected,
        samples_checked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn dense(c: &[i64]) -> TropicalPolynomial {
        TropicalPolynomial::from_dense_ints(c)
    }

    #[test]
    fn colliding_residues_give_three_cells() {
        // {0,1,2} and {0,1,5} at root 0 with [2] = [5]
        let f = dense(&[0, 0, 0, 3, 3, 0]);
        let r = adjacency_probe(&f, 3, 72).unwrap();
        assert_eq!(r.singular_roots.len(), 1);
        assert_eq!(r.expected, 3);
        assert_eq!(r.count(), 3, "{:?}", r.signatures);
        let cells: BTreeSet<Vec<ConeDescriptor>> = r.signatures.iter().map(|s| s.descriptors()).collect();
        assert!(cells.contains(&vec![ConeDescriptor::type_i(0, 1, 2)]));
        assert!(cells.contains(&vec![ConeDescriptor::type_i(0, 1, 5)]));
        assert!(cells.contains(&vec![ConeDescriptor::type_ii([2, 5], [0, 1])]));
    }

    #[test]
    fn four_distinct_residues_give_four_cells() {
        let f = dense(&[0, 0, 0, 0, 3]);
        let r = adjacency_probe(&f, 5, 72).unwrap();
        assert_eq!(r.expected, 4);
        assert_eq!(r.count(), 4);
    }

    #[test]
    fn non_singular_and_off_cell_inputs_are_rejected() {
        assert!(matches!(adjacency_probe(&dense(&[0, 1, 3]), 3, 36), Err(Error::NotSingular)));
        // a maximal cell, rank one
        assert!(matches!(
            adjacency_probe(&dense(&[0, 0, 0, 5, 7, 9]), 3, 36),
            Err(Error::NotCodimOneCell { rank: 1, .. })
        ));
    }

    #[test]
    fn four_tie_over_two_classes_is_inside_a_maximal_cell() {
        assert!(matches!(adjacency_probe(&dense(&[0, 0, 5, 0, 0]), 3, 36), Err(Error::NotCodimOneCell { rank: 1, .. })));
    }

    #[test]
    fn circle_directions_are_spread() {
        let d = circle_directions(8);
        assert_eq!(d.len(), 8);
        let quadrants: BTreeSet<(bool, bool)> = d.iter().map(|v| (v.0.is_negative(), v.1.is_negative())).collect();
        assert_eq!(quadrants.len(), 4);
    }
}
