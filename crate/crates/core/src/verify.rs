//! Executable acceptance checks. Each criterion runs a set of named checks
//! under a runtime budget and reports every outcome, passing or not.

use std::fmt;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::arith::{binomial, rat, ratio};
use crate::disc_newton::{compare_newton, face_formula, newton_polytope, resultant_generic_pair, LatticePolytope};
use crate::error::Result;
use crate::euler::{euler_derivative, LinearForm, ValuationRegime};
use crate::hpn::{
    adjacency_probe, char2_correspondence, classify, completeness_scan, cone_representative, count_cones_closed_form,
    enumerate_cones, in_h, incidence_cases, search_configurations, separated_representative, Classification,
    ConeCounts, ConeType, IncidenceCase,
};
use crate::singular::{is_singular_at, padic_interpolation_check, padic_verdicts_at_zero};
use crate::trop_core::{Point, TropicalPolynomial};
use crate::universal::{codim3_cell_test, construct_deep_cell, enumerate_witnesses, universal_scan};

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl Check {
    fn new(name: impl Into<String>, passed: bool, detail: impl Into<String>) -> Self {
        Check { name: name.into(), passed, detail: detail.into() }
    }
}

#[derive(Clone, Debug)]
pub struct CriterionReport {
    pub id: u8,
    pub title: &'static str,
    pub checks: Vec<Check>,
    pub elapsed: Duration,
    pub budget: Duration,
}

impl CriterionReport {
    pub fn within_budget(&self) -> bool {
        self.elapsed <= self.budget
    }

    pub fn passed(&self) -> bool {
        self.within_budget() && self.checks.iter().all(|c| c.passed)
    }

    pub fn failed_checks(&self) -> impl Iterator<Item = &Check> {
        self.checks.iter().filter(|c| !c.passed)
    }

    /// Multi-line listing of every check.
    pub fn details(&self) -> String {
        let mut s = String::new();
        for c in &self.checks {
            s.push_str(&format!("    [{}] {}: {}\n", if c.passed { "ok" } else { "FAIL" }, c.name, c.detail));
        }
        s
    }
}

impl fmt::Display for CriterionReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let failed = self.checks.iter().filter(|c| !c.passed).count();
        write!(
            f,
            "criterion {} {} {} ({} checks, {} failed; {:.2} s of {} s budget)",
            self.id,
            if self.passed() { "PASS" } else { "FAIL" },
            self.title,
            self.checks.len(),
            failed,
            self.elapsed.as_secs_f64(),
            self.budget.as_secs()
        )
    }
}

fn run(id: u8, title: &'static str, budget_secs: u64, body: impl FnOnce(&mut Vec<Check>) -> Result<()>) -> CriterionReport {
    let start = Instant::now();
    let mut checks = Vec::new();
    if let Err(e) = body(&mut checks) {
        checks.push(Check::new("completed without error", false, e.to_string()));
    }
    CriterionReport { id, title, checks, elapsed: start.elapsed(), budget: Duration::from_secs(budget_secs) }
}

fn dense(c: &[i64]) -> TropicalPolynomial {
    TropicalPolynomial::from_dense_ints(c)
}

/// Worked examples: Euler derivatives of a quintic by `x-4` in five
/// regimes, quadratic verdicts and the bivariate example.
pub fn criterion_1() -> CriterionReport {
    run(1, "worked examples", 1, |checks| {
        let f = dense(&[10, 11, 12, 13, 14, 15]);
        let l = LinearForm::x_minus(4);
        let cases: [(&str, ValuationRegime, &[(i64, i64)]); 5] = [
            ("char 0", ValuationRegime::CharZero, &[(0, 10), (1, 11), (2, 12), (3, 13), (5, 15)]),
            ("char 2", ValuationRegime::char_p(2)?, &[(1, 11), (3, 13), (5, 15)]),
            ("char 3", ValuationRegime::char_p(3)?, &[(0, 10), (2, 12), (3, 13), (5, 15)]),
            ("2-adic", ValuationRegime::padic(2)?, &[(0, 12), (1, 11), (2, 13), (3, 13), (5, 15)]),
            ("3-adic", ValuationRegime::padic(3)?, &[(0, 10), (1, 12), (2, 12), (3, 13), (5, 15)]),
        ];
        for (name, regime, expected) in cases {
            let got = euler_derivative(&f, &l, &regime)?;
            let want = TropicalPolynomial::univariate(expected.iter().map(|&(i, a)| (i, rat(a))))?;
            checks.push(Check::new(format!("derivative by x-4, {name}"), got == want, format!("{got}")));
        }

        let zero = Point::origin(1);
        let (fq, gq) = (dense(&[0, 0, 0]), dense(&[0, 1, 0]));
        let verdict = |h: &TropicalPolynomial, r: &ValuationRegime| -> Result<bool> { Ok(is_singular_at(h, &zero, r)?.is_singular) };
        let (c0, pa2) = (ValuationRegime::CharZero, ValuationRegime::padic(2)?);
        checks.push(Check::new("0+0x+0x^2 singular in char 0", verdict(&fq, &c0)?, ""));
        checks.push(Check::new("0+0x+0x^2 non-singular 2-adically", !verdict(&fq, &pa2)?, ""));
        checks.push(Check::new("0+1x+0x^2 singular 2-adically", verdict(&gq, &pa2)?, ""));
        checks.push(Check::new("0+1x+0x^2 non-singular in char 0", !verdict(&gq, &c0)?, ""));

        let biv = TropicalPolynomial::from_terms(
            2,
            [(vec![0, 0], rat(0)), (vec![2, 0], rat(0)), (vec![0, 2], rat(0)), (vec![2, 2], rat(0)), (vec![3, 0], rat(1))],
        )?;
        let origin = Point::origin(2);
        let r3 = is_singular_at(&biv, &origin, &ValuationRegime::char_p(3)?)?;
        checks.push(Check::new("bivariate example singular at (0,0) in char 3", r3.is_singular, ""));
        let r2 = is_singular_at(&biv, &origin, &ValuationRegime::char_p(2)?)?;
        let form = r2.failing_form.as_ref().map(|l| l.to_string());
        checks.push(Check::new(
            "bivariate example non-singular in char 2, failing form x-y",
            !r2.is_singular && form.as_deref() == Some("x-y"),
            format!("failing form {form:?}"),
        ));
        Ok(())
    })
}

/// `(p, number of residue classes)` pairs covered by the counting checks.
pub const COUNTING_CASES: [(u64, u32); 8] = [(3, 1), (3, 2), (3, 3), (5, 1), (5, 2), (2, 2), (2, 3), (2, 4)];

/// Enumerated cone counts against the closed forms.
pub fn criterion_2() -> CriterionReport {
    run(2, "cone counting", 10, |checks| {
        for (p, m) in COUNTING_CASES {
            let degree = p as u32 * m - 1;
            let got = ConeCounts::of(&enumerate_cones(degree, p)?);
            let want = count_cones_closed_form(degree, p)?;
            checks.push(Check::new(format!("p={p} degree={degree}"), got == want, format!("enumerated {got}, closed form {want}")));
        }
        for n in 2..=10u32 {
            let got = enumerate_cones(n, 0)?.len() as u64;
            let want = binomial(u64::from(n) + 1, 3);
            let closed = count_cones_closed_form(n, 0)?.total();
            checks.push(Check::new(
                format!("char 0 degree={n}"),
                got == want && closed == want,
                format!("enumerated {got}, closed form {closed}, C(n+1,3)={want}"),
            ));
        }
        Ok(())
    })
}

/// Representatives round-trip through membership and classification;
/// exhaustive completeness scans find nothing unclassified.
pub fn criterion_3() -> CriterionReport {
    run(3, "cross-validation", 120, |checks| {
        let mut total = 0;
        for (p, m) in COUNTING_CASES {
            let degree = p as u32 * m - 1;
            let cones = enumerate_cones(degree, p)?;
            let mut bad = Vec::new();
            for c in &cones {
                let f = cone_representative(c, degree, p)?;
                let ok = in_h(&f, p)? && classify(&f, degree, p)? == Classification::Maximal(c.clone());
                if !ok {
                    bad.push(c.to_string());
                }
            }
            total += cones.len();
            checks.push(Check::new(
                format!("representatives p={p} degree={degree}"),
                bad.is_empty(),
                format!("{} cones, failures {:?}", cones.len(), bad),
            ));
        }
        checks.push(Check::new("representatives checked", total >= 100, format!("{total}")));
        for p in [2u64, 3] {
            for degree in 2..=5u32 {
                let r = completeness_scan(degree, p, 3)?;
                checks.push(Check::new(
                    format!("completeness p={p} degree={degree}"),
                    r.is_clean(),
                    format!(
                        "{} scanned, {} in H, {} maximal, {} lower-dimensional, {} uncovered, {} collisions, {} inconsistent",
                        r.scanned,
                        r.members,
                        r.maximal,
                        r.non_maximal,
                        r.uncovered.len(),
                        r.collisions.len(),
                        r.inconsistent.len()
                    ),
                ));
            }
        }
        Ok(())
    })
}

/// Face counts of `N_{3,3}` and `N_{5,5}` from the Sylvester discriminant.
pub fn criterion_4() -> CriterionReport {
    run(4, "newton polytope face counts", 601, |checks| {
        for (p, budget) in [(3u64, 1.0f64), (5, 600.0)] {
            let start = Instant::now();
            let census = newton_polytope(p as u32, p, None)?.faces();
            let secs = start.elapsed().as_secs_f64();
            let formula = face_formula(p)?;
            checks.push(Check::new(
                format!("N_{{{p},{p}}} face counts"),
                census.matches(&formula),
                format!(
                    "{} vertices, {} edges, {} quadrangles, {} triangles; formula {}/{}/{}/{}",
                    census.vertex_count(),
                    census.edge_count(),
                    census.quadrangles(),
                    census.triangles(),
                    formula.vertices,
                    formula.edges,
                    formula.quadrangles,
                    formula.triangles
                ),
            ));
            checks.push(Check::new(
                format!("N_{{{p},{p}}} has no 2-face with five or more vertices"),
                census.larger_polygons() == 0,
                format!("{:?}", census.polygons),
            ));
            checks.push(Check::new(format!("N_{{{p},{p}}} runtime"), secs < budget, format!("{secs:.3} s of {budget} s")));
        }
        Ok(())
    })
}

/// Vertices of `N_{0,5}` and `N_{3,5}` compared against the listed sets.
pub fn criterion_5() -> CriterionReport {
    run(5, "degree 5, char 0 against char 3", 60, |checks| {
        let cmp = compare_newton(5, 0, 3, None)?;
        let mut listed: Vec<Vec<i64>> = vec![
            vec![0, 2, 4, 0, 0, 2],
            vec![2, 0, 0, 4, 2, 0],
            vec![2, 0, 0, 5, 0, 1],
            vec![0, 4, 0, 0, 4, 0],
            vec![1, 0, 5, 0, 0, 2],
        ];
        listed.sort();
        checks.push(Check::new(
            "vertices lost in char 3 equal the five listed",
            cmp.only_p == listed,
            format!("computed {:?}", cmp.only_p),
        ));
        checks.push(Check::new(
            "vertices new in char 3 include (1,3,1,0,0,3)",
            cmp.only_q.contains(&vec![1, 3, 1, 0, 0, 3]),
            format!("computed {:?}", cmp.only_q),
        ));
        // the second listed vector, (0,3,0,0,1,3,1), has seven coordinates
        let listed_second: Vec<i64> = vec![0, 3, 0, 0, 1, 3, 1];
        checks.push(Check::new(
            "seven-coordinate listed vector reported",
            listed_second.len() != cmp.degree as usize + 1,
            format!(
                "listed {:?} has {} coordinates for {} variables; computed set {:?}",
                listed_second,
                listed_second.len(),
                cmp.degree + 1,
                cmp.only_q
            ),
        ));
        Ok(())
    })
}

/// Generic resultant vertex counts and the even/odd split in char 2.
pub fn criterion_6() -> CriterionReport {
    run(6, "char 2 resultant correspondence", 60, |checks| {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for n in 2..=3u32 {
            let r = resultant_generic_pair(n - 1, n - 1)?;
            let poly = LatticePolytope::new(r.support().into_iter().map(|e| e.into_iter().map(i64::from).collect()))?;
            let got = poly.vertex_indices().len() as u64;
            let want = binomial(2 * u64::from(n) - 2, u64::from(n) - 1);
            checks.push(Check::new(format!("resultant of two degree-{} polynomials", n - 1), got == want, format!("{got} vertices, expected {want}")));

            let degree = 2 * n - 1;
            let (mut disagreements, mut singular, mut members) = (Vec::new(), 0, 0);
            for _ in 0..200 {
                let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(0..=3)).collect();
                let c = char2_correspondence(&dense(&coeffs))?;
                singular += usize::from(!c.singular_points.is_empty());
                members += usize::from(c.in_h);
                if !c.agrees() {
                    disagreements.push(coeffs);
                }
            }
            checks.push(Check::new(
                format!("200 random degree-{degree} polynomials"),
                disagreements.is_empty(),
                format!("{singular} with a singular point, {members} in H; disagreements {disagreements:?}"),
            ));
        }
        Ok(())
    })
}

/// Adjacency probes on searched codimension-one configurations.
pub fn criterion_7() -> CriterionReport {
    run(7, "incidence counts", 300, |checks| {
        let per_case = 20;
        for (p, cases, seed) in [
            (3u64, incidence_cases(3), 7u64),
            (5, vec![IncidenceCase::FourResidues, IncidenceCase::PairThenSpreadTriple], 11),
        ] {
            let found = search_configurations(p, &cases, (4, 8), per_case, 400_000, seed)?;
            for case in &cases {
                let polys = found.get(case).cloned().unwrap_or_default();
                let mut counts = Vec::new();
                for f in &polys {
                    counts.push(adjacency_probe(f, p, 360)?.count());
                }
                let want = case.expected_cells();
                let ok = polys.len() >= per_case && counts.iter().all(|&c| c == want);
                checks.push(Check::new(
                    format!("p={p} {case}"),
                    ok,
                    format!("{} configurations, expected {want}, counts {counts:?}", polys.len()),
                ));
            }
        }
        Ok(())
    })
}

/// Exhaustive scan for the universally singular locus and the deep cells.
pub fn criterion_8() -> CriterionReport {
    run(8, "universally singular polynomials", 300, |checks| {
        let (mut low, mut witness_failures, mut rank3_other, mut examples) = (0usize, 0usize, 0u64, Vec::new());
        let mut by_tie: std::collections::BTreeMap<usize, u64> = std::collections::BTreeMap::new();
        let mut scanned = 0;
        for n in 2..=10u32 {
            let s = universal_scan(n, 2)?;
            scanned += s.scanned;
            low += s.low_rank.len();
            witness_failures += s.witness_failures.len();
            rank3_other += s.rank3_without_witness_count;
            for &(t, c) in &s.rank3_without_witness_by_tie {
                *by_tie.entry(t).or_default() += c;
            }
            examples.extend(s.rank3_without_witness.iter().take(3 - examples.len().min(3)).cloned());
        }
        checks.push(Check::new("no universally singular cell of codimension 2 (n <= 10)", low == 0, format!("{scanned} scanned, {low} below rank 3")));
        checks.push(Check::new(
            "every scanned witness pattern is universally singular of rank 3",
            witness_failures == 0,
            format!("{witness_failures} failures"),
        ));
        let mut rep_failures = 0;
        for n in 4..=10 {
            for w in enumerate_witnesses(n) {
                let f = w.representative(n)?;
                if !codim3_cell_test(&w, &f, n)?.holds() {
                    rep_failures += 1;
                }
            }
        }
        checks.push(Check::new("every witness representative is universally singular of rank 3", rep_failures == 0, format!("{rep_failures} failures")));
        checks.push(Check::new(
            "every rank-3 universally singular polynomial matches a witness",
            rank3_other == 0,
            format!(
                "{rank3_other} counterexamples, e.g. {examples:?}; by number of monomials at the minimum {by_tie:?}"
            ),
        ));
        for k in 1..=2 {
            let c = construct_deep_cell(k)?;
            checks.push(Check::new(
                format!("deep cell k={k}"),
                c.report.is_universal() && c.rank == k as usize + 2,
                format!("degree {}, d={}, rank {}, failing prime {:?}", c.n, c.d, c.rank, c.report.failing),
            ));
        }
        Ok(())
    })
}

/// `p`-adic against characteristic-`p` verdicts near the origin, and
/// separation of type I from type II.
pub fn criterion_9() -> CriterionReport {
    run(9, "p-adic interpolation", 60, |checks| {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let eps = ratio(1, 1000);
        for p in [2u64, 3] {
            let (mut disagree, mut singular) = (Vec::new(), 0);
            for _ in 0..100 {
                let degree = rng.gen_range(2..=6);
                let coeffs: Vec<i64> = (0..=degree).map(|_| rng.gen_range(-3..=3)).collect();
                let cmp = padic_interpolation_check(&dense(&coeffs), p, &eps)?;
                singular += usize::from(cmp.char_p.iter().any(|r| r.is_singular));
                if !cmp.agree {
                    disagree.push(coeffs);
                }
            }
            checks.push(Check::new(
                format!("100 random polynomials in the 1/1000 ball, p={p}"),
                disagree.is_empty(),
                format!("{singular} singular in char {p}; disagreements {disagree:?}"),
            ));
        }
        for (p, degree) in [(3u64, 11u32), (5, 9)] {
            let cones = enumerate_cones(degree, p)?;
            for t in [ConeType::I, ConeType::II] {
                let mut wrong = Vec::new();
                let picked: Vec<_> = cones.iter().filter(|c| c.cone_type() == t).take(50).collect();
                for c in &picked {
                    let f = separated_representative(c, degree, p, 100)?;
                    let (cp, pa) = padic_verdicts_at_zero(&f, p)?;
                    let ok = cp.is_singular && pa.is_singular == (t == ConeType::I);
                    if !ok {
                        wrong.push(c.to_string());
                    }
                }
                checks.push(Check::new(
                    format!("p={p} degree={degree} type {t}: p-adically singular iff type I"),
                    picked.len() == 50 && wrong.is_empty(),
                    format!("{} representatives, wrong {:?}", picked.len(), wrong),
                ));
            }
        }
        Ok(())
    })
}

pub fn run_criterion(id: u8) -> Option<CriterionReport> {
    Some(match id {
        1 => criterion_1(),
        2 => criterion_2(),
        3 => criterion_3(),
        4 => criterion_4(),
        5 => criterion_5(),
        6 => criterion_6(),
        7 => criterion_7(),
        8 => criterion_8(),
        9 => criterion_9(),
        _ => return None,
    })
}

pub fn run_all() -> Vec<CriterionReport> {
    (1..=9).filter_map(run_criterion).collect()
}
