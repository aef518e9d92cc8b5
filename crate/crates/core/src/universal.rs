//! Polynomials singular at 0 in every characteristic at once.
//!
//! For a prime `p > n` every residue class mod `p` holds at most one
//! monomial of a degree-`n` polynomial, so membership reduces to the
//! characteristic-0 test; only `p = 0` and the primes up to `n + 1` need
//! checking.

use std::collections::BTreeSet;

use rayon::prelude::*;

use crate::arith::{first_primes, primes_up_to, rad};
use crate::error::{Error, Result};
use crate::hpn::in_h_terms;
use crate::trop_core::TropicalPolynomial;

pub use crate::arith::rad as radical;

/// Per-characteristic membership results.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UniversalReport {
    pub degree: u32,
    /// `(p, in H_{p,n})`, with `p = 0` first.
    pub per_prime: Vec<(u64, bool)>,
    pub failing: Option<u64>,
}

impl UniversalReport {
    pub fn is_universal(&self) -> bool {
        self.failing.is_none()
    }

    pub fn primes_checked(&self) -> Vec<u64> {
        self.per_prime.iter().map(|&(p, _)| p).collect()
    }
}

fn dense_terms(f: &TropicalPolynomial, n: u32) -> Result<Vec<(u32, crate::arith::Rational)>> {
    if f.dim() != 1 {
        return Err(Error::DimensionMismatch { expected: 1, found: f.dim() });
    }
    if f.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    f.terms()
        .map(|(e, a)| match u32::try_from(e[0]) {
            Ok(m) if m <= n => Ok((m, a.clone())),
            _ => Err(Error::InvalidInput(format!("exponent {} outside 0..={n}", e[0]))),
        })
        .collect()
}

/// Membership in `H_{0,n}` and every `H_{p,n}` with `p <= n + 1`.
pub fn universal_report_terms<T: Ord + Sync>(terms: &[(u32, T)], n: u32) -> UniversalReport {
    let mut chars = vec![0u64];
    chars.extend(primes_up_to(n as u64 + 1));
    let per_prime: Vec<(u64, bool)> = chars.iter().map(|&p| (p, in_h_terms(terms, p))).collect();
    let failing = per_prime.iter().find(|(_, ok)| !ok).map(|&(p, _)| p);
    UniversalReport { degree: n, per_prime, failing }
}

pub fn is_universally_singular(f: &TropicalPolynomial, n: u32) -> Result<UniversalReport> {
    Ok(universal_report_terms(&dense_terms(f, n)?, n))
}

fn argmin<T: Ord>(terms: &[(u32, T)], keep: impl Fn(u32) -> bool) -> Vec<u32> {
    let Some(min) = terms.iter().filter(|(e, _)| keep(*e)).map(|(_, a)| a).min() else {
        return Vec::new();
    };
    terms.iter().filter(|(e, a)| keep(*e) && a == min).map(|(e, _)| *e).collect()
}

struct UnionFind(Vec<usize>);

impl UnionFind {
    fn find(&mut self, x: usize) -> usize {
        if self.0[x] != x {
            let root = self.find(self.0[x]);
            self.0[x] = root;
        }
        self.0[x]
    }

    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        self.0[ra] = rb;
        true
    }
}

/// Ties active at the origin: the global argmin and the argmin after each
/// class deletion, for `p = 0` (single monomials) and every prime up to
/// `n + 1`.
pub fn active_ties<T: Ord>(terms: &[(u32, T)], n: u32) -> Vec<Vec<u32>> {
    let mut sets: BTreeSet<Vec<u32>> = BTreeSet::new();
    sets.insert(argmin(terms, |_| true));
    for &(m, _) in terms {
        sets.insert(argmin(terms, |e| e != m));
    }
    for p in primes_up_to(n as u64 + 1) {
        for r in 0..p {
            sets.insert(argmin(terms, |e| e as u64 % p != r));
        }
    }
    sets.into_iter().filter(|s| s.len() >= 2).collect()
}

/// Rank of the equalities `a_x = a_y` over all active ties: the graph rank
/// of the tie graph.
pub fn equality_rank_terms<T: Ord>(terms: &[(u32, T)], n: u32) -> usize {
    let mut uf = UnionFind((0..=n as usize).collect());
    let mut rank = 0;
    for tie in active_ties(terms, n) {
        for w in tie.windows(2) {
            if uf.union(w[0] as usize, w[1] as usize) {
                rank += 1;
            }
        }
    }
    rank
}

pub fn equality_rank(f: &TropicalPolynomial, n: u32) -> Result<usize> {
    Ok(equality_rank_terms(&dense_terms(f, n)?, n))
}

/// The combinatorial data of a codimension-3 universally singular cell.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct UnivCellWitness {
    pub triple: [u32; 3],
    /// Common radical of the pairwise differences of the triple.
    pub d: u64,
    pub second_pair: [u32; 2],
    /// `((m - i) mod d, is a unit)` for `m` in the second pair.
    pub unit_flags: [(u64, bool); 2],
}

fn gcd(a: u64, b: u64) -> u64 {
    num_integer::gcd(a, b)
}

impl UnivCellWitness {
    /// Validates the radical condition; unit conditions are recorded in
    /// `unit_flags` and checked by [`UnivCellWitness::is_valid`].
    pub fn new(triple: [u32; 3], second_pair: [u32; 2]) -> Result<Self> {
        let mut t = triple;
        t.sort();
        let mut s = second_pair;
        s.sort();
        let all: BTreeSet<u32> = t.iter().chain(&s).copied().collect();
        if all.len() != 5 {
            return Err(Error::InvalidInput("witness monomials must be pairwise distinct".into()));
        }
        let [i, j, k] = t.map(i64::from);
        let rads = [rad(j - i)?, rad(k - i)?, rad(k - j)?];
        if rads[0] != rads[1] || rads[1] != rads[2] {
            return Err(Error::InvalidInput(format!(
                "differences of {{{i},{j},{k}}} have radicals {}, {}, {}",
                rads[0], rads[1], rads[2]
            )));
        }
        let d = rads[0];
        let flag = |m: u32| {
            let r = (i64::from(m) - i).rem_euclid(d as i64) as u64;
            (r, gcd(r, d) == 1)
        };
        Ok(UnivCellWitness { triple: t, d, second_pair: s, unit_flags: [flag(s[0]), flag(s[1])] })
    }

    pub fn is_valid(&self) -> bool {
        self.unit_flags.iter().all(|&(_, unit)| unit)
    }

    /// `0` on the triple, `1` on the second pair, `2` elsewhere in `0..=n`.
    pub fn representative(&self, n: u32) -> Result<TropicalPolynomial> {
        if let Some(m) = self.triple.iter().chain(&self.second_pair).find(|&&m| m > n) {
            return Err(Error::InvalidInput(format!("monomial {m} exceeds degree {n}")));
        }
        TropicalPolynomial::univariate((0..=n).map(|m| {
            let v = if self.triple.contains(&m) {
                0
            } else if self.second_pair.contains(&m) {
                1
            } else {
                2
            };
            (i64::from(m), crate::arith::rat(v))
        }))
    }

    /// Reads a witness off `f` when its minimum is attained at exactly three
    /// monomials with a common radical and the class-`i` deletion leaves a
    /// pair.
    pub fn from_terms<T: Ord>(terms: &[(u32, T)]) -> Option<Self> {
        let l0 = argmin(terms, |_| true);
        if l0.len() != 3 {
            return None;
        }
        let [i, j, k] = [l0[0], l0[1], l0[2]];
        let d = rad(i64::from(j - i)).ok()?;
        if rad(i64::from(k - i)).ok()? != d || rad(i64::from(k - j)).ok()? != d {
            return None;
        }
        let l1 = argmin(terms, |e| (i64::from(e) - i64::from(i)).rem_euclid(d as i64) != 0);
        if l1.len() != 2 {
            return None;
        }
        Self::new([i, j, k], [l1[0], l1[1]]).ok()
    }
}

/// Outcome of checking a witness against a polynomial realising it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Codim3Verdict {
    pub conditions_hold: bool,
    pub report: UniversalReport,
    pub rank: usize,
}

impl Codim3Verdict {
    pub fn holds(&self) -> bool {
        self.conditions_hold && self.report.is_universal() && self.rank == 3
    }
}

/// Checks that `f` realises `w` and evaluates both witness conditions and
/// universal singularity.
pub fn codim3_cell_test(w: &UnivCellWitness, f: &TropicalPolynomial, n: u32) -> Result<Codim3Verdict> {
    let terms = dense_terms(f, n)?;
    let l0 = argmin(&terms, |_| true);
    if l0 != w.triple {
        return Err(Error::Mismatch(format!("minimum attained at {l0:?}, witness triple is {:?}", w.triple)));
    }
    let i = i64::from(w.triple[0]);
    let l1 = argmin(&terms, |e| (i64::from(e) - i).rem_euclid(w.d as i64) != 0);
    if l1 != w.second_pair {
        return Err(Error::Mismatch(format!(
            "minimum off the class of {i} mod {} attained at {l1:?}, witness pair is {:?}",
            w.d, w.second_pair
        )));
    }
    Ok(Codim3Verdict {
        conditions_hold: w.is_valid(),
        report: universal_report_terms(&terms, n),
        rank: equality_rank_terms(&terms, n),
    })
}

/// All valid witnesses on monomials `0..=n`.
pub fn enumerate_witnesses(n: u32) -> Vec<UnivCellWitness> {
    let mut out = Vec::new();
    for i in 0..=n {
        for j in i + 1..=n {
            for k in j + 1..=n {
                for r in 0..=n {
                    for s in r + 1..=n {
                        if [i, j, k].contains(&r) || [i, j, k].contains(&s) {
                            continue;
                        }
                        if let Ok(w) = UnivCellWitness::new([i, j, k], [r, s]) {
                            if w.is_valid() {
                                out.push(w);
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

/// The construction with `k` primes: `n = 2·4^k`, `d` the product of the
/// first `k` primes.
#[derive(Clone, Debug)]
pub struct DeepCell {
    pub k: u32,
    pub n: u32,
    pub d: u64,
    pub primes: Vec<u64>,
    pub polynomial: TropicalPolynomial,
    pub rank: usize,
    pub report: UniversalReport,
}

/// Largest `k` for which the product of the first `k` primes stays below
/// `4^k`.
pub const MAX_DEEP_CELL_K: u32 = 4;

pub fn construct_deep_cell(k: u32) -> Result<DeepCell> {
    if k == 0 {
        return Err(Error::InvalidInput("k must be at least 1".into()));
    }
    let primes = first_primes(k as usize);
    let d: u64 = primes.iter().product();
    let four_k = 4u64.checked_pow(k).ok_or_else(|| Error::SizeLimit(format!("4^{k}")))?;
    if k > MAX_DEEP_CELL_K || d >= four_k {
        return Err(Error::SizeLimit(format!(
            "product of the first {k} primes is {d}, not below 4^{k} = {four_k}"
        )));
    }
    let n = (2 * four_k) as u32;
    let d32 = d as u32;
    let value = |m: u32| -> i64 {
        if m == 0 || m == d32 || m == 2 * d32 {
            return 0;
        }
        for (idx, &p) in primes.iter().enumerate() {
            let base = d32 / p as u32;
            if m == base || m == base + d32 {
                return idx as i64 + 1;
            }
        }
        k as i64 + 1
    };
    let terms: Vec<(u32, i64)> = (0..=n).map(|m| (m, value(m))).collect();
    let polynomial = TropicalPolynomial::univariate(terms.iter().map(|&(m, v)| (i64::from(m), crate::arith::rat(v))))?;
    let rank = equality_rank_terms(&terms, n);
    let report = universal_report_terms(&terms, n);
    Ok(DeepCell { k, n, d, primes, polynomial, rank, report })
}

/// Outcome of the exhaustive scan over `{0..=max_coeff}^{n+1}` with
/// minimum coefficient 0.
#[derive(Clone, Debug, Default)]
pub struct UniversalScan {
    pub degree: u32,
    pub scanned: u64,
    pub universal: u64,
    /// Universally singular polynomials by equality rank.
    pub rank_histogram: Vec<(usize, u64)>,
    /// Universally singular with rank below 3.
    pub low_rank: Vec<Vec<i64>>,
    /// Rank-3 universally singular polynomials matching no witness.
    pub rank3_without_witness: Vec<Vec<i64>>,
    pub rank3_without_witness_count: u64,
    /// Those counted by the number of monomials attaining the minimum.
    pub rank3_without_witness_by_tie: Vec<(usize, u64)>,
    /// Polynomials realising a valid witness that are not universally
    /// singular of rank 3.
    pub witness_failures: Vec<Vec<i64>>,
    pub witness_matches: u64,
}

fn bump(hist: &mut Vec<(usize, u64)>, key: usize, by: u64) {
    match hist.iter_mut().find(|(k, _)| *k == key) {
        Some((_, c)) => *c += by,
        None => hist.push((key, by)),
    }
}

/// Keeps at most this many examples per list.
const EXAMPLES: usize = 16;

pub fn universal_scan(n: u32, max_coeff: i64) -> Result<UniversalScan> {
    let base = (max_coeff + 1) as u64;
    let total = base.checked_pow(n + 1).filter(|&t| t <= 20_000_000).ok_or_else(|| {
        Error::SizeLimit(format!("{}^{} coefficient vectors", base, n + 1))
    })?;
    let parts: Vec<UniversalScan> = (0..total)
        .into_par_iter()
        .fold(
            || UniversalScan { degree: n, ..Default::default() },
            |mut acc, idx| {
                let mut rem = idx;
                let coeffs: Vec<i64> = (0..=n)
                    .map(|_| {
                        let c = (rem % base) as i64;
                        rem /= base;
                        c
                    })
                    .collect();
                if coeffs.iter().min() != Some(&0) {
                    return acc;
                }
                acc.scanned += 1;
                let terms: Vec<(u32, i64)> = coeffs.iter().enumerate().map(|(m, &a)| (m as u32, a)).collect();
                let universal = universal_report_terms(&terms, n).is_universal();
                let witness = UnivCellWitness::from_terms(&terms).filter(UnivCellWitness::is_valid);
                let rank = if universal || witness.is_some() { equality_rank_terms(&terms, n) } else { 0 };
                if witness.is_some() {
                    acc.witness_matches += 1;
                    if !(universal && rank == 3) && acc.witness_failures.len() < EXAMPLES {
                        acc.witness_failures.push(coeffs.clone());
                    }
                }
                if universal {
                    acc.universal += 1;
                    bump(&mut acc.rank_histogram, rank, 1);
                    if rank < 3 && acc.low_rank.len() < EXAMPLES {
                        acc.low_rank.push(coeffs.clone());
                    }
                    if rank == 3 && witness.is_none() {
                        acc.rank3_without_witness_count += 1;
                        let tie = coeffs.iter().filter(|&&a| a == 0).count();
                        bump(&mut acc.rank3_without_witness_by_tie, tie, 1);
                        if acc.rank3_without_witness.len() < EXAMPLES {
                            acc.rank3_without_witness.push(coeffs.clone());
                        }
                    }
                }
                acc
            },
        )
        .collect();
    let mut out = UniversalScan { degree: n, ..Default::default() };
    for part in parts {
        out.scanned += part.scanned;
        out.universal += part.universal;
        out.witness_matches += part.witness_matches;
        out.rank3_without_witness_count += part.rank3_without_witness_count;
        for (r, c) in part.rank_histogram {
            bump(&mut out.rank_histogram, r, c);
        }
        for (t, c) in part.rank3_without_witness_by_tie {
            bump(&mut out.rank3_without_witness_by_tie, t, c);
        }
        out.low_rank.extend(part.low_rank);
        out.rank3_without_witness.extend(part.rank3_without_witness);
        out.witness_failures.extend(part.witness_failures);
    }
    out.rank_histogram.sort();
    out.rank3_without_witness_by_tie.sort();
    for list in [&mut out.low_rank, &mut out.rank3_without_witness, &mut out.witness_failures] {
        list.sort();
        list.truncate(EXAMPLES);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{is_prime, rat};
    use crate::hpn::in_h;
    use proptest::prelude::*;

    fn dense(c: &[i64]) -> TropicalPolynomial {
        TropicalPolynomial::from_dense_ints(c)
    }

    #[test]
    fn membership_examples() {
        let r = is_universally_singular(&dense(&[0, 1, 0, 1, 0]), 4).unwrap();
        assert!(r.is_universal());
        assert_eq!(r.primes_checked(), vec![0, 2, 3, 5]);
        assert_eq!(is_universally_singular(&dense(&[0, 0, 0]), 2).unwrap().failing, Some(2));
        let r = is_universally_singular(&dense(&[0, 0, 0, 1]), 3).unwrap();
        assert_eq!(r.failing, Some(2));
        assert_eq!(is_universally_singular(&dense(&[0, 1, 1, 2]), 3).unwrap().failing, Some(0));
        assert!(is_universally_singular(&dense(&[0, 0, 0]), 1).is_err());
    }

    #[test]
    fn witness_examples() {
        let w = UnivCellWitness::new([0, 2, 4], [1, 3]).unwrap();
        assert_eq!(w.d, 2);
        assert!(w.is_valid());
        let f = w.representative(6).unwrap();
        let v = codim3_cell_test(&w, &f, 6).unwrap();
        assert!(v.holds(), "{v:?}");

        let bad = UnivCellWitness::new([0, 2, 4], [1, 6]).unwrap();
        assert!(!bad.is_valid());
        // 0 on {0,2,4}, 1 on {1,6}: after deleting the even class only 1 is
        // left at the minimum... but 6 is even, so the pair is not the
        // off-class minimum and the polynomial fails at p = 2
        let g = dense(&[0, 1, 0, 2, 0, 2, 1]);
        assert!(codim3_cell_test(&bad, &g, 6).is_err());
        assert_eq!(is_universally_singular(&g, 6).unwrap().failing, Some(2));

        assert!(UnivCellWitness::new([0, 1, 2], [3, 4]).is_err());
        assert!(UnivCellWitness::new([0, 2, 4], [2, 5]).is_err());
    }

    #[test]
    fn deep_cells() {
        let c1 = construct_deep_cell(1).unwrap();
        assert_eq!((c1.n, c1.d), (8, 2));
        assert_eq!(c1.polynomial, dense(&[0, 1, 0, 1, 0, 2, 2, 2, 2]));
        assert!(c1.report.is_universal());
        assert_eq!(c1.rank, 3);
        let c2 = construct_deep_cell(2).unwrap();
        assert_eq!((c2.n, c2.d), (32, 6));
        assert_eq!(c2.polynomial.coeff(&[3]), Some(&rat(1)));
        assert_eq!(c2.polynomial.coeff(&[8]), Some(&rat(2)));
        assert_eq!(c2.polynomial.coeff(&[5]), Some(&rat(3)));
        assert!(c2.report.is_universal());
        assert_eq!(c2.rank, 4);
        for k in 3..=MAX_DEEP_CELL_K {
            let c = construct_deep_cell(k).unwrap();
            assert!(c.report.is_universal());
            assert_eq!(c.rank, k as usize + 2);
        }
        assert!(construct_deep_cell(0).is_err());
        assert!(matches!(construct_deep_cell(5), Err(Error::SizeLimit(_))));
    }

    #[test]
    fn rank_matches_rational_elimination() {
        // graph rank against an explicit matrix rank
        for coeffs in [vec![0, 1, 0, 1, 0, 2, 2, 2, 2], vec![0, 0, 0, 0, 1], vec![0, 0, 1, 0, 2, 1, 0]] {
            let n = coeffs.len() as u32 - 1;
            let terms: Vec<(u32, i64)> = coeffs.iter().enumerate().map(|(m, &a)| (m as u32, a)).collect();
            let rows: Vec<Vec<crate::arith::Rational>> = active_ties(&terms, n)
                .into_iter()
                .flat_map(|tie| {
                    tie.windows(2)
                        .map(|w| {
                            let mut row = vec![rat(0); n as usize + 1];
                            row[w[0] as usize] = rat(1);
                            row[w[1] as usize] = rat(-1);
                            row
                        })
                        .collect::<Vec<_>>()
                })
                .collect();
            assert_eq!(equality_rank_terms(&terms, n), crate::arith::rank(&rows));
        }
    }

    #[test]
    fn witness_representatives_are_universal() {
        for n in 4..=12 {
            for w in enumerate_witnesses(n) {
                let f = w.representative(n).unwrap();
                assert!(codim3_cell_test(&w, &f, n).unwrap().holds(), "{w:?}");
            }
        }
    }

    #[test]
    fn four_way_tie_is_rank_three_without_witness() {
        let f = dense(&[0, 0, 0, 0, 1]);
        assert!(is_universally_singular(&f, 4).unwrap().is_universal());
        assert_eq!(equality_rank(&f, 4).unwrap(), 3);
        let terms: Vec<(u32, i64)> = vec![(0, 0), (1, 0), (2, 0), (3, 0), (4, 1)];
        assert!(UnivCellWitness::from_terms(&terms).is_none());
    }

    #[test]
    fn small_scan_has_no_codimension_two_cells() {
        for n in 2..=6 {
            let scan = universal_scan(n, 2).unwrap();
            assert!(scan.low_rank.is_empty(), "{scan:?}");
            assert!(scan.witness_failures.is_empty(), "{scan:?}");
        }
    }

    proptest! {
        #[test]
        fn large_primes_agree_with_char_zero(coeffs in proptest::collection::vec(0i64..4, 3..10)) {
            let n = coeffs.len() as u64 - 1;
            let f = dense(&coeffs);
            let zero = in_h(&f, 0).unwrap();
            let mut p = n + 2;
            let mut seen = 0;
            while seen < 5 {
                if is_prime(p) {
                    prop_assert_eq!(in_h(&f, p).unwrap(), zero);
                    seen += 1;
                }
                p += 1;
            }
        }
    }
}
