//! The space `H_{p,n}` of degree-`n` tropical polynomials singular at 0 in
//! characteristic `p` (or 0), and its maximal cones.
//!
//! Cone types for odd `p`, with `[m]` the residue of `m` mod `p`:
//!
//! * `I {i,j,k}`: three distinct residues tied at the minimum;
//! * `II [{i,j},{k,l}]`: `[i] = [j]` at the minimum, then `k`, `l` in two
//!   further classes tied at the minimum outside `[i]`;
//! * `III {{i,j},{k,l}}`: `[i] = [j] != [k] = [l]`, each pair tied at the
//!   minimum outside the other's class.
//!
//! In characteristic 0 the maximal cones are triples, in characteristic 2
//! they pair an even and an odd tie.

mod char2;
mod incidence;
mod probe;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::arith::{binomial, is_prime, rank, rat, Rational};
use crate::error::{Error, Result};
use crate::euler::ValuationRegime;
use crate::singular::is_singular_at;
use crate::trop_core::{Point, TropicalPolynomial};

pub use char2::{char2_correspondence, char2_halves, Char2Correspondence};
pub use incidence::{incidence_case, incidence_cases, search_configurations, IncidenceCase};
pub use probe::{adjacency_probe, expected_adjacent_cones, AdjacencyReport, ProbeRay, ProbeSignature, RootPattern};

/// Characteristic argument: `0` or a prime.
pub fn check_characteristic(p: u64) -> Result<()> {
    if p == 0 || is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

fn residue(m: u32, p: u64) -> u64 {
    m as u64 % p
}

/// Membership in `H_{p,n}` from `(exponent, coefficient)` pairs.
///
/// Generic over the coefficient type so exhaustive scans can run on small
/// integers.
pub fn in_h_terms<T: Ord>(terms: &[(u32, T)], p: u64) -> bool {
    fn min_count<'a, T: Ord + 'a>(it: impl Iterator<Item = &'a T>) -> usize {
        let mut best: Option<&T> = None;
        let mut count = 0;
        for v in it {
            match best.map(|b| v.cmp(b)) {
                None | Some(Ordering::Less) => {
                    best = Some(v);
                    count = 1;
                }
                Some(Ordering::Equal) => count += 1,
                Some(Ordering::Greater) => {}
            }
        }
        count
    }
    if p == 0 {
        return min_count(terms.iter().map(|(_, a)| a)) >= 3;
    }
    let present: BTreeSet<u64> = terms.iter().map(|(e, _)| residue(*e, p)).collect();
    if (present.len() as u64) < p && min_count(terms.iter().map(|(_, a)| a)) < 2 {
        return false;
    }
    present
        .iter()
        .all(|&r| min_count(terms.iter().filter(|(e, _)| residue(*e, p) != r).map(|(_, a)| a)) >= 2)
}

fn univariate_terms_u32(f: &TropicalPolynomial) -> Result<Vec<(u32, Rational)>> {
    f.univariate_terms()?
        .into_iter()
        .map(|(e, a)| {
            u32::try_from(e)
                .map(|e| (e, a))
                .map_err(|_| Error::InvalidInput(format!("exponent {e} is not a monomial index of a degree-n polynomial")))
        })
        .collect()
}

/// Whether `f` has a tropical double root at 0 in characteristic `p`.
pub fn in_h(f: &TropicalPolynomial, p: u64) -> Result<bool> {
    check_characteristic(p)?;
    if f.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    Ok(in_h_terms(&univariate_terms_u32(f)?, p))
}

/// The same predicate through the derivative family at the origin.
pub fn in_h_via_singularity(f: &TropicalPolynomial, p: u64) -> Result<bool> {
    check_characteristic(p)?;
    let regime = if p == 0 { ValuationRegime::CharZero } else { ValuationRegime::char_p(p)? };
    Ok(is_singular_at(f, &Point::origin(1), &regime)?.is_singular)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum ConeType {
    I,
    II,
    III,
}

impl fmt::Display for ConeType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ConeType::I => "I",
            ConeType::II => "II",
            ConeType::III => "III",
        };
        write!(f, "{s}")
    }
}

/// A maximal cone of `H_{p,n}`, always held in canonical form.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ConeDescriptor {
    TypeI([u32; 3]),
    /// Ordered: the pair at the global minimum first.
    TypeII([u32; 2], [u32; 2]),
    /// Unordered; the pair holding the smallest monomial comes first.
    TypeIII([u32; 2], [u32; 2]),
    Char0Triple([u32; 3]),
    Char2Quad { even: [u32; 2], odd: [u32; 2] },
}

fn sorted2(a: u32, b: u32) -> [u32; 2] {
    if a <= b {
        [a, b]
    } else {
        [b, a]
    }
}

fn sorted3(mut t: [u32; 3]) -> [u32; 3] {
    t.sort();
    t
}

impl ConeDescriptor {
    pub fn type_i(i: u32, j: u32, k: u32) -> Self {
        ConeDescriptor::TypeI(sorted3([i, j, k]))
    }

    pub fn type_ii(first: [u32; 2], second: [u32; 2]) -> Self {
        ConeDescriptor::TypeII(sorted2(first[0], first[1]), sorted2(second[0], second[1]))
    }

    pub fn type_iii(a: [u32; 2], b: [u32; 2]) -> Self {
        let (a, b) = (sorted2(a[0], a[1]), sorted2(b[0], b[1]));
        if a[0] <= b[0] {
            ConeDescriptor::TypeIII(a, b)
        } else {
            ConeDescriptor::TypeIII(b, a)
        }
    }

    pub fn char0(i: u32, j: u32, k: u32) -> Self {
        ConeDescriptor::Char0Triple(sorted3([i, j, k]))
    }

    pub fn char2(a: [u32; 2], b: [u32; 2]) -> Self {
        let (a, b) = (sorted2(a[0], a[1]), sorted2(b[0], b[1]));
        if a[0] % 2 == 0 {
            ConeDescriptor::Char2Quad { even: a, odd: b }
        } else {
            ConeDescriptor::Char2Quad { even: b, odd: a }
        }
    }

    /// Type used for counting: characteristic-0 triples count as `I`,
    /// characteristic-2 quads as `III`.
    pub fn cone_type(&self) -> ConeType {
        match self {
            ConeDescriptor::TypeI(_) | ConeDescriptor::Char0Triple(_) => ConeType::I,
            ConeDescriptor::TypeII(..) => ConeType::II,
            ConeDescriptor::TypeIII(..) | ConeDescriptor::Char2Quad { .. } => ConeType::III,
        }
    }

    pub fn monomials(&self) -> Vec<u32> {
        match self {
            ConeDescriptor::TypeI(t) | ConeDescriptor::Char0Triple(t) => t.to_vec(),
            ConeDescriptor::TypeII(a, b) | ConeDescriptor::TypeIII(a, b) => vec![a[0], a[1], b[0], b[1]],
            ConeDescriptor::Char2Quad { even, odd } => vec![even[0], even[1], odd[0], odd[1]],
        }
    }

    /// Pairs of monomials whose coefficients are equal on the cone.
    pub fn equalities(&self) -> Vec<(u32, u32)> {
        match self {
            ConeDescriptor::TypeI(t) | ConeDescriptor::Char0Triple(t) => vec![(t[0], t[1]), (t[1], t[2])],
            ConeDescriptor::TypeII(a, b) | ConeDescriptor::TypeIII(a, b) => vec![(a[0], a[1]), (b[0], b[1])],
            ConeDescriptor::Char2Quad { even, odd } => vec![(even[0], even[1]), (odd[0], odd[1])],
        }
    }

    /// Rank of the equality system in coefficient space `Q^{n+1}`.
    pub fn equality_rank(&self, n: u32) -> usize {
        let rows: Vec<Vec<Rational>> = self
            .equalities()
            .into_iter()
            .map(|(a, b)| {
                let mut row = vec![rat(0); n as usize + 1];
                row[a as usize] = rat(1);
                row[b as usize] = rat(-1);
                row
            })
            .collect();
        rank(&rows)
    }

    /// In characteristic 2 a type III pair of pairs is the even/odd quad.
    pub fn canonical(self, p: u64) -> Self {
        match self {
            ConeDescriptor::TypeIII(a, b) if p == 2 => ConeDescriptor::char2(a, b),
            other => other,
        }
    }

    /// Checks the residue invariants for degree `n` in characteristic `p`.
    pub fn validate(&self, n: u32, p: u64) -> Result<()> {
        check_characteristic(p)?;
        let mons = self.monomials();
        if let Some(m) = mons.iter().find(|&&m| m > n) {
            return Err(Error::InvalidDescriptor(format!("monomial {m} exceeds degree {n}")));
        }
        let distinct: BTreeSet<u32> = mons.iter().copied().collect();
        if distinct.len() != mons.len() {
            return Err(Error::InvalidDescriptor("monomials must be pairwise distinct".into()));
        }
        let r = |m: u32| residue(m, p.max(1));
        let bad = |why: &str| Err(Error::InvalidDescriptor(format!("{self}: {why} for p = {p}")));
        match self {
            ConeDescriptor::Char0Triple(_) if p != 0 => bad("triples without residue data only exist in characteristic 0"),
            ConeDescriptor::Char0Triple(_) => Ok(()),
            _ if p == 0 => bad("residue descriptors need a prime"),
            ConeDescriptor::Char2Quad { even, odd } => {
                if p != 2 {
                    bad("even/odd quads only exist in characteristic 2")
                } else if even.iter().any(|m| m % 2 != 0) || odd.iter().any(|m| m % 2 != 1) {
                    bad("pairs must be even and odd")
                } else {
                    Ok(())
                }
            }
            ConeDescriptor::TypeI(_) | ConeDescriptor::TypeII(..) if p == 2 => bad("characteristic 2 has only even/odd quads"),
            ConeDescriptor::TypeI(t) => {
                let res: BTreeSet<u64> = t.iter().map(|&m| r(m)).collect();
                if res.len() == 3 {
                    Ok(())
                } else {
                    bad("residues must be pairwise distinct")
                }
            }
            ConeDescriptor::TypeII(a, b) => {
                if r(a[0]) != r(a[1]) {
                    bad("first pair must share a residue")
                } else if r(b[0]) == r(b[1]) || r(b[0]) == r(a[0]) || r(b[1]) == r(a[0]) {
                    bad("second pair must use two further residues")
                } else {
                    Ok(())
                }
            }
            ConeDescriptor::TypeIII(a, b) => {
                if r(a[0]) != r(a[1]) || r(b[0]) != r(b[1]) {
                    bad("each pair must share a residue")
                } else if r(a[0]) == r(b[0]) {
                    bad("pairs must lie in different classes")
                } else {
                    Ok(())
                }
            }
        }
    }

    /// Linear inequalities `a_lo <= a_hi` cutting the cone out of its
    /// equality space, over monomials `0..=n`.
    fn inequalities(&self, n: u32, p: u64) -> Vec<(u32, u32)> {
        let r = |m: u32| residue(m, p.max(1));
        let mut out = Vec::new();
        match self {
            ConeDescriptor::TypeI(t) | ConeDescriptor::Char0Triple(t) => {
                for m in (0..=n).filter(|m| !t.contains(m)) {
                    out.push((t[0], m));
                }
            }
            ConeDescriptor::TypeII(a, b) => {
                for m in (0..=n).filter(|m| !a.contains(m)) {
                    out.push((a[0], m));
                }
                for m in (0..=n).filter(|&m| r(m) != r(a[0]) && !b.contains(&m)) {
                    out.push((b[0], m));
                }
            }
            ConeDescriptor::TypeIII(a, b) | ConeDescriptor::Char2Quad { even: a, odd: b } => {
                for m in (0..=n).filter(|&m| r(m) != r(b[0]) && !a.contains(&m)) {
                    out.push((a[0], m));
                }
                for m in (0..=n).filter(|&m| r(m) != r(a[0]) && !b.contains(&m)) {
                    out.push((b[0], m));
                }
            }
        }
        out
    }

    fn contains_with(&self, f: &TropicalPolynomial, p: u64, strict: bool) -> Result<bool> {
        let n = f.degree()?.max(self.monomials().into_iter().max().unwrap_or(0) as i64) as u32;
        let coeff = |m: u32| f.coeff(&[m as i64]);
        for (x, y) in self.equalities() {
            match (coeff(x), coeff(y)) {
                (Some(a), Some(b)) if a == b => {}
                _ => return Ok(false),
            }
        }
        for (lo, hi) in self.inequalities(n, p) {
            let Some(a) = coeff(lo) else { return Ok(false) };
            // absent monomials sit at +infinity
            let Some(b) = coeff(hi) else { continue };
            if a > b || (strict && a == b) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// `f` lies in the closed cone.
    pub fn in_closure(&self, f: &TropicalPolynomial, p: u64) -> Result<bool> {
        self.contains_with(f, p, false)
    }

    /// `f` satisfies the equalities and every inequality strictly.
    pub fn in_relative_interior(&self, f: &TropicalPolynomial, p: u64) -> Result<bool> {
        self.contains_with(f, p, true)
    }
}

impl fmt::Display for ConeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ConeDescriptor::TypeI(t) => write!(f, "I {{{},{},{}}}", t[0], t[1], t[2]),
            ConeDescriptor::Char0Triple(t) => write!(f, "char0 {{{},{},{}}}", t[0], t[1], t[2]),
            ConeDescriptor::TypeII(a, b) => write!(f, "II [{{{},{}}},{{{},{}}}]", a[0], a[1], b[0], b[1]),
            ConeDescriptor::TypeIII(a, b) => write!(f, "III {{{{{},{}}},{{{},{}}}}}", a[0], a[1], b[0], b[1]),
            ConeDescriptor::Char2Quad { even, odd } => {
                write!(f, "char2 ({{{},{}}},{{{},{}}})", even[0], even[1], odd[0], odd[1])
            }
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConeCounts {
    #[serde(rename = "I")]
    pub type_i: u64,
    #[serde(rename = "II")]
    pub type_ii: u64,
    #[serde(rename = "III")]
    pub type_iii: u64,
}

impl ConeCounts {
    pub fn total(&self) -> u64 {
        self.type_i + self.type_ii + self.type_iii
    }

    pub fn of(cones: &[ConeDescriptor]) -> Self {
        let mut c = ConeCounts::default();
        for d in cones {
            match d.cone_type() {
                ConeType::I => c.type_i += 1,
                ConeType::II => c.type_ii += 1,
                ConeType::III => c.type_iii += 1,
            }
        }
        c
    }
}

impl fmt::Display for ConeCounts {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "I={} II={} III={}", self.type_i, self.type_ii, self.type_iii)
    }
}

/// All maximal cones of `H_{p,n}` in canonical order.
pub fn enumerate_cones(n: u32, p: u64) -> Result<Vec<ConeDescriptor>> {
    check_characteristic(p)?;
    if n < 2 {
        return Err(Error::InvalidInput(format!("degree {n} has no double roots")));
    }
    let mut out = Vec::new();
    let mons: Vec<u32> = (0..=n).collect();
    let pairs = |pred: &dyn Fn(u32, u32) -> bool| -> Vec<[u32; 2]> {
        let mut v = Vec::new();
        for (x, &i) in mons.iter().enumerate() {
            for &j in &mons[x + 1..] {
                if pred(i, j) {
                    v.push([i, j]);
                }
            }
        }
        v
    };
    match p {
        0 => {
            for i in 0..=n {
                for j in i + 1..=n {
                    for k in j + 1..=n {
                        out.push(ConeDescriptor::char0(i, j, k));
                    }
                }
            }
        }
        2 => {
            let even = pairs(&|i, j| i % 2 == 0 && j % 2 == 0);
            let odd = pairs(&|i, j| i % 2 == 1 && j % 2 == 1);
            for e in &even {
                for o in &odd {
                    out.push(ConeDescriptor::char2(*e, *o));
                }
            }
        }
        _ => {
            let r = |m: u32| residue(m, p);
            for i in 0..=n {
                for j in i + 1..=n {
                    for k in j + 1..=n {
                        if r(i) != r(j) && r(j) != r(k) && r(i) != r(k) {
                            out.push(ConeDescriptor::type_i(i, j, k));
                        }
                    }
                }
            }
            let same = pairs(&|i, j| r(i) == r(j));
            let cross = pairs(&|i, j| r(i) != r(j));
            for a in &same {
                for b in &cross {
                    if r(b[0]) != r(a[0]) && r(b[1]) != r(a[0]) {
                        out.push(ConeDescriptor::type_ii(*a, *b));
                    }
                }
            }
            for (x, a) in same.iter().enumerate() {
                for b in &same[x + 1..] {
                    if r(a[0]) != r(b[0]) {
                        out.push(ConeDescriptor::type_iii(*a, *b));
                    }
                }
            }
        }
    }
    out.sort();
    Ok(out)
}

/// Closed-form counts. For a prime `p` the degree must be `p·m − 1`, so
/// every residue class holds `m` monomials; for `p = 0` any degree works.
pub fn count_cones_closed_form(degree: u32, p: u64) -> Result<ConeCounts> {
    check_characteristic(p)?;
    if p == 0 {
        return Ok(ConeCounts { type_i: binomial(degree as u64 + 1, 3), type_ii: 0, type_iii: 0 });
    }
    let size = degree as u64 + 1;
    if size % p != 0 {
        return Err(Error::InvalidInput(format!("degree {degree} is not of the form {p}·m − 1")));
    }
    let m = size / p;
    Ok(ConeCounts {
        type_i: binomial(p, 3) * m.pow(3),
        type_ii: p * m * m * binomial(m, 2) * binomial(p - 1, 2),
        type_iii: binomial(p, 2) * binomial(m, 2).pow(2),
    })
}

/// A polynomial in the relative interior of the cone, on monomials `0..=n`.
pub fn cone_representative(c: &ConeDescriptor, n: u32, p: u64) -> Result<TropicalPolynomial> {
    c.validate(n, p)?;
    let value = |m: u32| -> i64 {
        match c {
            ConeDescriptor::TypeI(t) | ConeDescriptor::Char0Triple(t) => i64::from(!t.contains(&m)),
            ConeDescriptor::TypeII(a, b) => {
                if a.contains(&m) {
                    0
                } else if b.contains(&m) {
                    1
                } else if residue(m, p) == residue(a[0], p) {
                    3
                } else {
                    2
                }
            }
            ConeDescriptor::TypeIII(a, b) => {
                if a.contains(&m) {
                    0
                } else if b.contains(&m) {
                    1
                } else {
                    2
                }
            }
            ConeDescriptor::Char2Quad { even, odd } => i64::from(!(even.contains(&m) || odd.contains(&m))),
        }
    };
    TropicalPolynomial::univariate((0..=n).map(|m| (m as i64, rat(value(m)))))
}

/// A type I or II representative whose minimal tie sits `gap` below the
/// rest: `0` on the minimal tie, `gap` on the second pair (type II), and
/// larger values elsewhere.
pub fn separated_representative(c: &ConeDescriptor, n: u32, p: u64, gap: i64) -> Result<TropicalPolynomial> {
    c.validate(n, p)?;
    let value = |m: u32| -> i64 {
        match c {
            ConeDescriptor::TypeI(t) | ConeDescriptor::Char0Triple(t) => {
                if t.contains(&m) {
                    0
                } else {
                    gap
                }
            }
            ConeDescriptor::TypeII(a, b) => {
                if a.contains(&m) {
                    0
                } else if b.contains(&m) {
                    gap
                } else if residue(m, p) == residue(a[0], p) {
                    gap + 2
                } else {
                    gap + 1
                }
            }
            ConeDescriptor::TypeIII(a, b) => {
                if a.contains(&m) {
                    0
                } else if b.contains(&m) {
                    gap
                } else {
                    gap + 1
                }
            }
            ConeDescriptor::Char2Quad { even, odd } => {
                if even.contains(&m) || odd.contains(&m) {
                    0
                } else {
                    gap
                }
            }
        }
    };
    TropicalPolynomial::univariate((0..=n).map(|m| (m as i64, rat(value(m)))))
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Classification {
    Maximal(ConeDescriptor),
    NonMaximal,
    NotInH,
}

impl fmt::Display for Classification {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Classification::Maximal(c) => write!(f, "{c}"),
            Classification::NonMaximal => write!(f, "non-maximal cell"),
            Classification::NotInH => write!(f, "not in H"),
        }
    }
}

fn argmin_where<T: Ord>(terms: &[(u32, T)], keep: impl Fn(u32) -> bool) -> Vec<u32> {
    let min = terms.iter().filter(|(e, _)| keep(*e)).map(|(_, a)| a).min();
    match min {
        None => Vec::new(),
        Some(min) => terms.iter().filter(|(e, a)| keep(*e) && a == min).map(|(e, _)| *e).collect(),
    }
}

/// Classification from `(exponent, coefficient)` pairs; see [`classify`].
pub fn classify_terms<T: Ord>(terms: &[(u32, T)], p: u64) -> Classification {
    if !in_h_terms(terms, p) {
        return Classification::NotInH;
    }
    let l0 = argmin_where(terms, |_| true);
    match p {
        0 => {
            if l0.len() == 3 {
                Classification::Maximal(ConeDescriptor::char0(l0[0], l0[1], l0[2]))
            } else {
                Classification::NonMaximal
            }
        }
        2 => {
            let even = argmin_where(terms, |e| e % 2 == 0);
            let odd = argmin_where(terms, |e| e % 2 == 1);
            if even.len() == 2 && odd.len() == 2 {
                Classification::Maximal(ConeDescriptor::char2([even[0], even[1]], [odd[0], odd[1]]))
            } else {
                Classification::NonMaximal
            }
        }
        _ => {
            let classes: BTreeSet<u64> = l0.iter().map(|&m| residue(m, p)).collect();
            match classes.len() {
                1 => {
                    if l0.len() != 2 {
                        return Classification::NonMaximal;
                    }
                    let c0 = residue(l0[0], p);
                    let l1 = argmin_where(terms, |e| residue(e, p) != c0);
                    if l1.len() != 2 {
                        Classification::NonMaximal
                    } else if residue(l1[0], p) == residue(l1[1], p) {
                        Classification::Maximal(ConeDescriptor::type_iii([l0[0], l0[1]], [l1[0], l1[1]]))
                    } else {
                        Classification::Maximal(ConeDescriptor::type_ii([l0[0], l0[1]], [l1[0], l1[1]]))
                    }
                }
                2 => {
                    let first: Vec<u32> = l0.iter().copied().filter(|&m| residue(m, p) == residue(l0[0], p)).collect();
                    let second: Vec<u32> = l0.iter().copied().filter(|&m| residue(m, p) != residue(l0[0], p)).collect();
                    if first.len() == 2 && second.len() == 2 {
                        Classification::Maximal(ConeDescriptor::type_iii([first[0], first[1]], [second[0], second[1]]))
                    } else {
                        Classification::NonMaximal
                    }
                }
                _ => {
                    if l0.len() == 3 {
                        Classification::Maximal(ConeDescriptor::type_i(l0[0], l0[1], l0[2]))
                    } else {
                        Classification::NonMaximal
                    }
                }
            }
        }
    }
}

/// Locates `f` (a polynomial on monomials `0..=n`) in the cone structure of
/// `H_{p,n}`.
pub fn classify(f: &TropicalPolynomial, n: u32, p: u64) -> Result<Classification> {
    check_characteristic(p)?;
    if f.is_empty() {
        return Err(Error::EmptyPolynomial);
    }
    let terms = univariate_terms_u32(f)?;
    if let Some((e, _)) = terms.iter().find(|(e, _)| *e > n) {
        return Err(Error::InvalidInput(format!("exponent {e} exceeds degree {n}")));
    }
    Ok(classify_terms(&terms, p))
}

/// Outcome of the exhaustive completeness scan.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct CompletenessReport {
    pub degree: u32,
    pub p: u64,
    pub scanned: u64,
    pub members: u64,
    pub maximal: u64,
    pub non_maximal: u64,
    /// Members of `H` lying in no enumerated closed cone.
    pub uncovered: Vec<Vec<i64>>,
    /// Polynomials in the relative interior of two or more cones.
    pub collisions: Vec<Vec<i64>>,
    /// Disagreements between `classify`, membership and the cone
    /// descriptions.
    pub inconsistent: Vec<Vec<i64>>,
}

impl CompletenessReport {
    pub fn is_clean(&self) -> bool {
        self.uncovered.is_empty() && self.collisions.is_empty() && self.inconsistent.is_empty()
    }
}

/// Scans every coefficient vector in `{0..=max_coeff}^{n+1}` and checks
/// that the enumerated cones cover `H_{p,n}` without overlapping
/// interiors.
pub fn completeness_scan(n: u32, p: u64, max_coeff: i64) -> Result<CompletenessReport> {
    use rayon::prelude::*;
    let cones = enumerate_cones(n, p)?;
    let base = (max_coeff + 1) as u64;
    let total = base.pow(n + 1);
    if total > 50_000_000 {
        return Err(Error::SizeLimit(format!("{total} coefficient vectors")));
    }
    let partial: Vec<CompletenessReport> = (0..total)
        .into_par_iter()
        .fold(
            || CompletenessReport { degree: n, p, ..Default::default() },
            |mut rep, idx| {
                let mut rem = idx;
                let coeffs: Vec<i64> = (0..=n)
                    .map(|_| {
                        let c = (rem % base) as i64;
                        rem /= base;
                        c
                    })
                    .collect();
                rep.scanned += 1;
                let f = TropicalPolynomial::from_dense_ints(&coeffs);
                let member = in_h_terms(&coeffs.iter().enumerate().map(|(e, &a)| (e as u32, a)).collect::<Vec<_>>(), p);
                let class = classify(&f, n, p).expect("valid input");
                let closures: Vec<&ConeDescriptor> =
                    cones.iter().filter(|c| c.in_closure(&f, p).expect("valid input")).collect();
                let interiors: Vec<&ConeDescriptor> =
                    closures.iter().copied().filter(|c| c.in_relative_interior(&f, p).expect("valid input")).collect();
                if interiors.len() > 1 {
                    rep.collisions.push(coeffs.clone());
                }
                if member != !closures.is_empty() {
                    if member {
                        rep.uncovered.push(coeffs.clone());
                    } else {
                        rep.inconsistent.push(coeffs.clone());
                    }
                }
                let consistent = match &class {
                    Classification::NotInH => !member,
                    Classification::NonMaximal => member && interiors.is_empty(),
                    Classification::Maximal(c) => member && interiors.len() == 1 && interiors[0] == c,
                };
                if !consistent {
                    rep.inconsistent.push(coeffs.clone());
                }
                if member {
                    rep.members += 1;
                    match class {
                        Classification::Maximal(_) => rep.maximal += 1,
                        _ => rep.non_maximal += 1,
                    }
                }
                rep
            },
        )
        .collect();
    let mut out = CompletenessReport { degree: n, p, ..Default::default() };
    for r in partial {
        out.scanned += r.scanned;
        out.members += r.members;
        out.maximal += r.maximal;
        out.non_maximal += r.non_maximal;
        out.uncovered.extend(r.uncovered);
        out.collisions.extend(r.collisions);
        out.inconsistent.extend(r.inconsistent);
    }
    out.uncovered.sort();
    out.collisions.sort();
    out.inconsistent.sort();
    Ok(out)
}
