//! Codimension-one configurations of the characteristic-`p` discriminant,
//! sorted by the way two maximal cells meet.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{classify, probe, Classification, ConeType};
use crate::error::Result;
use crate::trop_core::{Point, TropicalPolynomial};

/// How the double roots of a codimension-one configuration look.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum IncidenceCase {
    /// Two different double roots, with the cone types at each.
    Distinct(ConeType, ConeType),
    /// One double root with four tied monomials in four classes.
    FourResidues,
    /// Four tied monomials over classes of sizes 2, 1, 1.
    TripleCollision,
    /// A tied pair, then three monomials over two classes outside it.
    PairThenSplitTriple,
    /// A tied pair, then three monomials of one class outside it.
    PairThenClassTriple,
    /// A pair, then three monomials in three classes outside it.
    PairThenSpreadTriple,
    /// Three tied monomials of one class, then a pair in two classes.
    ClassTripleThenSplitPair,
    /// Three tied monomials of one class, then a pair of one class.
    ClassTripleThenClassPair,
}

impl IncidenceCase {
    /// Number of maximal cells the incidence theorem puts around the cell.
    pub fn expected_cells(&self) -> usize {
        match self {
            IncidenceCase::Distinct(..) | IncidenceCase::FourResidues => 4,
            _ => 3,
        }
    }
}

impl fmt::Display for IncidenceCase {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            IncidenceCase::Distinct(a, b) => write!(f, "distinct roots {a}-{b}"),
            IncidenceCase::FourResidues => write!(f, "equal roots I-I, four residues"),
            IncidenceCase::TripleCollision => write!(f, "equal roots I-I/I-II, residue collision"),
            IncidenceCase::PairThenSplitTriple => write!(f, "equal roots II-II/II-III, split triple"),
            IncidenceCase::PairThenClassTriple => write!(f, "equal roots III-III, class triple second"),
            IncidenceCase::PairThenSpreadTriple => write!(f, "equal roots II-II, spread triple"),
            IncidenceCase::ClassTripleThenSplitPair => write!(f, "equal roots II-II, class triple first"),
            IncidenceCase::ClassTripleThenClassPair => write!(f, "equal roots III-III, class triple first"),
        }
    }
}

fn class_sizes(ms: &[i64], p: u64) -> Vec<usize> {
    let mut counts: BTreeMap<i64, usize> = BTreeMap::new();
    for &m in ms {
        *counts.entry(m.rem_euclid(p as i64)).or_default() += 1;
    }
    let mut v: Vec<usize> = counts.into_values().collect();
    v.sort_unstable_by(|a, b| b.cmp(a));
    v
}

/// Sorts a polynomial into its incidence case, or `None` when it does not
/// sit on a codimension-one cell.
pub fn incidence_case(f: &TropicalPolynomial, p: u64) -> Result<Option<IncidenceCase>> {
    let degree = f.degree()? as u32;
    let regime = crate::euler::ValuationRegime::char_p(p)?;
    if !crate::singular::singular_points_univariate(f, &regime)?.iter().any(|r| r.is_singular) {
        return Ok(None);
    }
    let report = match probe::cell_summary(f, p) {
        Ok(r) => r,
        Err(_) => return Ok(None),
    };
    if report.rank_all != 2 || report.rank_singular != 2 {
        return Ok(None);
    }
    let recentred: Vec<TropicalPolynomial> = report
        .singular_roots
        .iter()
        .map(|b| f.translate(&Point::univariate(b.clone())))
        .collect::<Result<_>>()?;
    match recentred.len() {
        2 => {
            let mut types = Vec::new();
            for g in &recentred {
                match classify(g, degree, p)? {
                    Classification::Maximal(c) => types.push(c.cone_type()),
                    _ => return Ok(None),
                }
            }
            types.sort();
            Ok(Some(IncidenceCase::Distinct(types[0], types[1])))
        }
        1 => {
            let g = &recentred[0];
            if let Classification::Maximal(_) = classify(g, degree, p)? {
                return Ok(None);
            }
            let l0: Vec<i64> = g.argmin_support(&Point::origin(1))?.into_iter().map(|e| e[0]).collect();
            let sizes = class_sizes(&l0, p);
            let case = match (l0.len(), sizes.as_slice()) {
                (4, [1, 1, 1, 1]) => Some(IncidenceCase::FourResidues),
                (4, [2, 1, 1]) => Some(IncidenceCase::TripleCollision),
                (2, [2]) | (3, [3]) => {
                    let class = l0[0].rem_euclid(p as i64);
                    let outside = g.filter_map_terms(|e, a| (e[0].rem_euclid(p as i64) != class).then(|| a.clone()));
                    if outside.is_empty() {
                        return Ok(None);
                    }
                    let l1: Vec<i64> = outside.argmin_support(&Point::origin(1))?.into_iter().map(|e| e[0]).collect();
                    let outer = class_sizes(&l1, p);
                    match (l0.len(), l1.len(), outer.as_slice()) {
                        (2, 3, [2, 1]) => Some(IncidenceCase::PairThenSplitTriple),
                        (2, 3, [3]) => Some(IncidenceCase::PairThenClassTriple),
                        (2, 3, [1, 1, 1]) => Some(IncidenceCase::PairThenSpreadTriple),
                        (3, 2, [1, 1]) => Some(IncidenceCase::ClassTripleThenSplitPair),
                        (3, 2, [2]) => Some(IncidenceCase::ClassTripleThenClassPair),
                        _ => None,
                    }
                }
                _ => None,
            };
            Ok(case)
        }
        _ => Ok(None),
    }
}

/// Cases realisable in characteristic `p`.
pub fn incidence_cases(p: u64) -> Vec<IncidenceCase> {
    use ConeType::*;
    let mut cases = vec![];
    let types: &[ConeType] = if p == 2 { &[III] } else { &[I, II, III] };
    for (x, &a) in types.iter().enumerate() {
        for &b in &types[x..] {
            cases.push(IncidenceCase::Distinct(a, b));
        }
    }
    if p >= 3 {
        cases.extend([
            IncidenceCase::TripleCollision,
            IncidenceCase::PairThenSplitTriple,
            IncidenceCase::PairThenClassTriple,
            IncidenceCase::ClassTripleThenSplitPair,
            IncidenceCase::ClassTripleThenClassPair,
        ]);
    }
    if p >= 5 {
        cases.extend([IncidenceCase::FourResidues, IncidenceCase::PairThenSpreadTriple]);
    }
    cases
}

/// Seeded random search for codimension-one configurations of degree
/// `min_degree..=max_degree`, collecting up to `per_case` of each wanted
/// case. Candidates are drawn in batches and classified in parallel; the
/// result depends only on the seed.
pub fn search_configurations(
    p: u64,
    cases: &[IncidenceCase],
    (min_degree, max_degree): (u32, u32),
    per_case: usize,
    max_tries: usize,
    seed: u64,
) -> Result<BTreeMap<IncidenceCase, Vec<TropicalPolynomial>>> {
    use rayon::prelude::*;
    const BATCH: usize = 2048;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let wanted: BTreeSet<IncidenceCase> = cases.iter().copied().collect();
    let mut found: BTreeMap<IncidenceCase, Vec<TropicalPolynomial>> = BTreeMap::new();
    let mut seen: BTreeSet<Vec<i64>> = BTreeSet::new();
    let mut tries = 0;
    while tries < max_tries && !wanted.iter().all(|c| found.get(c).map_or(0, Vec::len) >= per_case) {
        let mut batch = Vec::with_capacity(BATCH);
        while batch.len() < BATCH && tries < max_tries {
            tries += 1;
            let degree = rng.gen_range(min_degree..=max_degree);
            let top = rng.gen_range(2..=6i64);
            let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(0..=top)).collect();
            if seen.insert(coeffs.clone()) {
                batch.push(TropicalPolynomial::from_dense_ints(&coeffs));
            }
        }
        let labelled: Vec<Option<IncidenceCase>> =
            batch.par_iter().map(|f| incidence_case(f, p)).collect::<Result<_>>()?;
        for (f, case) in batch.into_iter().zip(labelled) {
            if let Some(case) = case.filter(|c| wanted.contains(c)) {
                let bucket = found.entry(case).or_default();
                if bucket.len() < per_case {
                    bucket.push(f);
                }
            }
        }
    }
    Ok(found)
}
