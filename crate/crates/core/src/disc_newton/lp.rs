//! Exact feasibility of `A x = b, x >= 0` by the two-phase simplex
//! method's first phase, pivoting with Bland's rule.

use num_traits::{One, Signed, Zero};

use crate::arith::Rational;

/// A point of `{x >= 0 : A x = b}`, or `None` if the set is empty.
pub fn feasible_point(a: &[Vec<Rational>], b: &[Rational]) -> Option<Vec<Rational>> {
    let m = a.len();
    let n = a.first().map_or(0, Vec::len);
    let width = n + m + 1;
    // tableau rows: constraints with artificials, then the phase-one cost
    let mut t: Vec<Vec<Rational>> = Vec::with_capacity(m + 1);
    for (i, (row, rhs)) in a.iter().zip(b).enumerate() {
        let flip = rhs.is_negative();
        let mut r = vec![Rational::zero(); width];
        for (j, v) in row.iter().enumerate() {
            r[j] = if flip { -v.clone() } else { v.clone() };
        }
        r[n + i] = Rational::one();
        r[width - 1] = if flip { -rhs.clone() } else { rhs.clone() };
        t.push(r);
    }
    let mut cost = vec![Rational::zero(); width];
    for r in &t {
        for j in (0..n).chain(std::iter::once(width - 1)) {
            cost[j] -= &r[j];
        }
    }
    t.push(cost);
    let mut basis: Vec<usize> = (n..n + m).collect();

    loop {
        let Some(enter) = (0..n + m).find(|&j| t[m][j].is_negative()) else {
            break;
        };
        let mut leave: Option<(usize, Rational)> = None;
        for i in 0..m {
            if t[i][enter].is_positive() {
                let ratio = &t[i][width - 1] / &t[i][enter];
                let better = match &leave {
                    None => true,
                    Some((li, lr)) => ratio < *lr || (ratio == *lr && basis[i] < basis[*li]),
                };
                if better {
                    leave = Some((i, ratio));
                }
            }
        }
        // phase one is bounded below by zero, so a pivot row always exists
        let (row, _) = leave?;
        pivot(&mut t, row, enter);
        basis[row] = enter;
    }

    if !t[m][width - 1].is_zero() {
        return None;
    }
    let mut x = vec![Rational::zero(); n];
    for (i, &bv) in basis.iter().enumerate() {
        if bv < n {
            x[bv] = t[i][width - 1].clone();
        }
    }
    Some(x)
}

fn pivot(t: &mut [Vec<Rational>], row: usize, col: usize) {
    let inv = t[row][col].recip();
    for v in t[row].iter_mut() {
        if !v.is_zero() {
            *v = &*v * &inv;
        }
    }
    let prow = t[row].clone();
    for (i, r) in t.iter_mut().enumerate() {
        if i == row || r[col].is_zero() {
            continue;
        }
        let factor = r[col].clone();
        for (v, p) in r.iter_mut().zip(&prow) {
            if !p.is_zero() {
                *v -= &factor * p;
            }
        }
    }
}

/// Feasibility of a system in free variables `y`:
/// `eq · y = eq_rhs` and `ge · y >= ge_rhs`. Returns a solution.
pub fn feasible_free(
    eq: &[Vec<Rational>],
    eq_rhs: &[Rational],
    ge: &[Vec<Rational>],
    ge_rhs: &[Rational],
    dim: usize,
) -> Option<Vec<Rational>> {
    // y = y⁺ - y⁻, one surplus per inequality
    let ncols = 2 * dim + ge.len();
    let mut a = Vec::with_capacity(eq.len() + ge.len());
    let mut b = Vec::with_capacity(eq.len() + ge.len());
    for (row, rhs) in eq.iter().zip(eq_rhs) {
        let mut r = vec![Rational::zero(); ncols];
        for (j, v) in row.iter().enumerate() {
            r[j] = v.clone();
            r[dim + j] = -v.clone();
        }
        a.push(r);
        b.push(rhs.clone());
    }
    for (k, (row, rhs)) in ge.iter().zip(ge_rhs).enumerate() {
        let mut r = vec![Rational::zero(); ncols];
        for (j, v) in row.iter().enumerate() {
            r[j] = v.clone();
            r[dim + j] = -v.clone();
        }
        r[2 * dim + k] = -Rational::one();
        a.push(r);
        b.push(rhs.clone());
    }
    let x = feasible_point(&a, &b)?;
    Some((0..dim).map(|j| &x[j] - &x[dim + j]).collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::{rat, ratio};

    fn row(v: &[i64]) -> Vec<Rational> {
        v.iter().map(|&x| rat(x)).collect()
    }

    #[test]
    fn simple_systems() {
        // x + y = 1, x - y = 1/2
        let x = feasible_point(&[row(&[1, 1]), row(&[1, -1])], &[rat(1), ratio(1, 2)]).unwrap();
        assert_eq!(x, vec![ratio(3, 4), ratio(1, 4)]);
        // x + y = -1 has no nonnegative solution
        assert!(feasible_point(&[row(&[1, 1])], &[rat(-1)]).is_none());
        // free variables: y1 >= 1, -y1 >= 1 is empty
        assert!(feasible_free(&[], &[], &[row(&[1]), row(&[-1])], &[rat(1), rat(1)], 1).is_none());
        let y = feasible_free(&[row(&[1, 1])], &[rat(0)], &[row(&[1, 0])], &[rat(2)], 2).unwrap();
        assert_eq!(&y[0] + &y[1], rat(0));
        assert!(y[0] >= rat(2));
    }

    #[test]
    fn degenerate_system_terminates() {
        // a cycling-prone degenerate system
        let a = vec![row(&[1, -1, 0, 0]), row(&[0, 1, -1, 0]), row(&[0, 0, 1, -1]), row(&[-1, 0, 0, 1])];
        let x = feasible_point(&a, &[rat(0), rat(0), rat(0), rat(0)]).unwrap();
        assert!(x.iter().all(|v| !v.is_negative()));
    }
}
