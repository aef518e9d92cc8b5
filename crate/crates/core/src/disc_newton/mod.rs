//! Newton polytopes of the generic univariate discriminant, over the
//! integers and reduced mod `p`.
//!
//! The discriminant is the resultant of `F` and `F'` divided by the leading
//! coefficient. The characteristic-`p` support is the integer support with
//! the coefficients divisible by `p` dropped.

mod lp;
mod polytope;
mod sparse;
mod sylvester;

use std::collections::BTreeSet;
use std::path::{Path, PathBuf};

use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

pub use lp::{feasible_free, feasible_point};
pub use polytope::{FaceCensus, LatticePolytope, MAX_DIM, MAX_POINTS};
pub use sparse::{PolynomialRecord, SparseIntegerPolynomial};
pub use sylvester::{
    determinant, generic_discriminant, generic_discriminant_with, integer_determinant, numeric_discriminant,
    resultant_generic_pair, sylvester_matrix, DeterminantMethod, DEFAULT_MAX_DEGREE, MAX_PAIR_DEGREE,
};

use crate::arith::{binomial, is_prime};
use crate::error::{Error, Result};

/// Exponents whose coefficient survives reduction mod `p`; `p = 0` keeps
/// everything.
pub fn support_mod_p(d: &SparseIntegerPolynomial, p: u64) -> Result<Vec<Vec<u32>>> {
    if p != 0 && !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let modulus = BigInt::from(p);
    Ok(d.terms().filter(|(_, c)| p == 0 || !(*c % &modulus).is_zero()).map(|(e, _)| e.clone()).collect())
}

/// Environment variable naming the discriminant cache directory.
pub const CACHE_ENV: &str = "TROPSING_CACHE";
pub const DEFAULT_CACHE_DIR: &str = ".tropsing-cache";
const CACHE_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CacheFile {
    version: u32,
    degree: u32,
    discriminant: PolynomialRecord,
}

/// The cache directory from the environment, or the default.
pub fn cache_dir_from_env() -> PathBuf {
    std::env::var_os(CACHE_ENV).map(PathBuf::from).unwrap_or_else(|| PathBuf::from(DEFAULT_CACHE_DIR))
}

fn cache_path(dir: &Path, n: u32) -> PathBuf {
    dir.join(format!("discriminant-v{CACHE_VERSION}-degree{n}.json"))
}

/// [`generic_discriminant`], read from or written to `cache` when given.
/// Unreadable or stale cache files are recomputed and replaced.
pub fn discriminant_cached(n: u32, cache: Option<&Path>) -> Result<SparseIntegerPolynomial> {
    let Some(dir) = cache else {
        return generic_discriminant(n);
    };
    let path = cache_path(dir, n);
    if let Ok(text) = std::fs::read_to_string(&path) {
        if let Ok(file) = serde_json::from_str::<CacheFile>(&text) {
            if file.version == CACHE_VERSION && file.degree == n {
                if let Ok(d) = SparseIntegerPolynomial::from_record(&file.discriminant) {
                    return Ok(d);
                }
            }
        }
    }
    let d = generic_discriminant(n)?;
    std::fs::create_dir_all(dir)?;
    let file = CacheFile { version: CACHE_VERSION, degree: n, discriminant: d.to_record() };
    let text = serde_json::to_string(&file)?;
    std::fs::write(&path, text)?;
    Ok(d)
}

/// `N_{p,n}` from the degree-`n` discriminant.
pub fn newton_polytope(n: u32, p: u64, cache: Option<&Path>) -> Result<LatticePolytope> {
    let d = discriminant_cached(n, cache)?;
    LatticePolytope::from_discriminant_support(&support_mod_p(&d, p)?, n)
}

/// Vertex sets of `N_{p,n}` and `N_{q,n}` and their differences.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NewtonComparison {
    pub degree: u32,
    pub p: u64,
    pub q: u64,
    pub vertices_p: Vec<Vec<i64>>,
    pub vertices_q: Vec<Vec<i64>>,
    pub only_p: Vec<Vec<i64>>,
    pub only_q: Vec<Vec<i64>>,
}

pub fn compare_newton(n: u32, p: u64, q: u64, cache: Option<&Path>) -> Result<NewtonComparison> {
    let vertices = |c: u64| -> Result<Vec<Vec<i64>>> {
        let poly = newton_polytope(n, c, cache)?;
        Ok(poly.vertex_indices().into_iter().map(|i| poly.points()[i].clone()).collect())
    };
    let (vp, vq) = (vertices(p)?, vertices(q)?);
    let sp: BTreeSet<&Vec<i64>> = vp.iter().collect();
    let sq: BTreeSet<&Vec<i64>> = vq.iter().collect();
    let only_p = sp.difference(&sq).map(|v| (*v).clone()).collect();
    let only_q = sq.difference(&sp).map(|v| (*v).clone()).collect();
    Ok(NewtonComparison { degree: n, p, q, vertices_p: vp, vertices_q: vq, only_p, only_q })
}

/// Face numbers of `N_{p,p}` predicted in closed form.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceFormula {
    pub vertices: u64,
    pub edges: u64,
    pub quadrangles: u64,
    pub triangles: u64,
}

/// `2^{p-1}-1` vertices, `(p-1)(2^{p-2}+p/2-2)` edges,
/// `C(p-1,2)(2^{p-3}-1)` quadrangles and `C(p,3)` triangles.
pub fn face_formula(p: u64) -> Result<FaceFormula> {
    if !is_prime(p) || p < 3 {
        return Err(Error::InvalidInput(format!("face formula needs an odd prime, got {p}")));
    }
    Ok(FaceFormula {
        vertices: (1 << (p - 1)) - 1,
        // (p-1)·p/2 is an integer since p-1 is even
        edges: (p - 1) * (1 << (p - 2)) + (p - 1) * p / 2 - 2 * (p - 1),
        quadrangles: binomial(p - 1, 2) * ((1 << (p - 3)) - 1),
        triangles: binomial(p, 3),
    })
}

impl FaceCensus {
    pub fn matches(&self, f: &FaceFormula) -> bool {
        self.vertex_count() as u64 == f.vertices
            && self.edge_count() as u64 == f.edges
            && self.quadrangles() as u64 == f.quadrangles
            && self.triangles() as u64 == f.triangles
            && self.larger_polygons() == 0
    }
}
