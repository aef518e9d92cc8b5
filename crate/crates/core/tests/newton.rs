use std::time::Instant;

use tropsing::arith::binomial;
use tropsing::disc_newton::*;
use tropsing::euler::ValuationRegime;
use tropsing::singular::singular_points_univariate;
use tropsing::trop_core::TropicalPolynomial;

#[test]
fn face_counts_match_formulas() {
    for p in [3u64, 5] {
        let start = Instant::now();
        let census = newton_polytope(p as u32, p, None).unwrap().faces();
        let formula = face_formula(p).unwrap();
        println!("p={p}: {:?} in {:?}", census.polygons, start.elapsed());
        assert!(census.matches(&formula), "p={p}: {census:?} vs {formula:?}");
        assert_eq!(census.larger_polygons(), 0);
    }
}

#[test]
fn degree_five_char_three_comparison() {
    let cmp = compare_newton(5, 0, 3, None).unwrap();
    let listed: Vec<Vec<i64>> = vec![
        vec![0, 2, 4, 0, 0, 2],
        vec![2, 0, 0, 4, 2, 0],
        vec![2, 0, 0, 5, 0, 1],
        vec![0, 4, 0, 0, 4, 0],
        vec![1, 0, 5, 0, 0, 2],
    ];
    let mut expected = listed.clone();
    expected.sort();
    println!("only in char 0: {:?}", cmp.only_p);
    println!("only in char 3: {:?}", cmp.only_q);
    assert_eq!(cmp.only_p, expected);
    assert!(cmp.only_q.contains(&vec![1, 3, 1, 0, 0, 3]));
    // the reversal a_i -> a_{n-i} is a symmetry of both polytopes
    assert_eq!(cmp.only_q, vec![vec![1, 3, 1, 0, 0, 3], vec![3, 0, 0, 1, 3, 1]]);
}

#[test]
fn discriminants_are_bihomogeneous() {
    for n in 2..=6u32 {
        let d = generic_discriminant(n).unwrap();
        assert_eq!(d.total_degrees(), vec![2 * n - 2]);
        let weights: Vec<i64> = (0..=i64::from(n)).collect();
        assert_eq!(d.weighted_degrees(&weights), vec![i64::from(n * (n - 1))]);
    }
}

#[test]
fn char_two_resultant_vertices() {
    for m in 1..=3u32 {
        let r = resultant_generic_pair(m, m).unwrap();
        let pts: Vec<Vec<i64>> = r.support().into_iter().map(|e| e.into_iter().map(i64::from).collect()).collect();
        let poly = LatticePolytope::new(pts).unwrap();
        assert_eq!(poly.vertex_indices().len() as u64, binomial(2 * u64::from(m), u64::from(m)));
    }
}

#[test]
fn vertex_cones_are_non_singular() {
    for (n, p) in [(3u32, 3u64), (4, 3), (5, 5), (4, 0), (5, 3)] {
        let poly = newton_polytope(n, p, None).unwrap();
        let regime = if p == 0 { ValuationRegime::CharZero } else { ValuationRegime::char_p(p).unwrap() };
        for v in poly.vertex_indices() {
            let c = poly.normal_direction(v).unwrap();
            let f = TropicalPolynomial::univariate(c.iter().enumerate().map(|(i, a)| (i as i64, a.clone()))).unwrap();
            let roots = singular_points_univariate(&f, &regime).unwrap();
            assert!(roots.iter().all(|r| !r.is_singular), "n={n} p={p} vertex {:?}", poly.points()[v]);
        }
    }
}

#[test]
fn vertex_routes_agree() {
    for (n, p) in [(4u32, 0u64), (4, 3), (5, 3)] {
        let poly = newton_polytope(n, p, None).unwrap();
        assert_eq!(poly.vertex_indices(), poly.vertex_indices_by_separation());
    }
}
