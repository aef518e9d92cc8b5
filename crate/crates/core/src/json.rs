//! JSON interchange: polynomials in, reports out. Rationals are written as
//! exact fraction strings.

use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::arith::{format_rational, parse_rational, Rational};
use crate::disc_newton::{FaceCensus, NewtonComparison};
use crate::error::{Error, Result};
use crate::hpn::{AdjacencyReport, Classification, CompletenessReport, ConeDescriptor, RootPattern};
use crate::singular::SingularityReport;
use crate::trop_core::{Point, TropicalPolynomial};
use crate::universal::{DeepCell, UniversalReport};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermJson {
    pub exp: Vec<i64>,
    pub coeff: String,
}

/// `{"dim": d, "terms": [{"exp": [...], "coeff": "num/den"}, ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PolynomialJson {
    pub dim: usize,
    pub terms: Vec<TermJson>,
}

impl PolynomialJson {
    pub fn from_polynomial(f: &TropicalPolynomial) -> Self {
        PolynomialJson {
            dim: f.dim(),
            terms: f.terms().map(|(e, a)| TermJson { exp: e.clone(), coeff: format_rational(a) }).collect(),
        }
    }

    pub fn to_polynomial(&self) -> Result<TropicalPolynomial> {
        let terms = self
            .terms
            .iter()
            .map(|t| Ok((t.exp.clone(), parse_rational(&t.coeff)?)))
            .collect::<Result<Vec<_>>>()?;
        TropicalPolynomial::from_terms(self.dim, terms)
    }
}

pub fn parse_polynomial(text: &str) -> Result<TropicalPolynomial> {
    serde_json::from_str::<PolynomialJson>(text)?.to_polynomial()
}

pub fn polynomial_json(f: &TropicalPolynomial) -> Value {
    serde_json::to_value(PolynomialJson::from_polynomial(f)).unwrap_or(Value::Null)
}

fn rationals(v: &[Rational]) -> Value {
    Value::from(v.iter().map(format_rational).collect::<Vec<_>>())
}

pub fn point_json(b: &Point) -> Value {
    rationals(b.coords())
}

pub fn singularity_json(r: &SingularityReport) -> Value {
    let witnesses: serde_json::Map<String, Value> = r
        .witnesses
        .iter()
        .map(|w| {
            (
                w.form.label.clone(),
                json!({
                    "form": w.form.form.to_string(),
                    "argmin": w.argmin,
                    "derivative_empty": w.derivative_empty,
                    "passes": w.passes(),
                }),
            )
        })
        .collect();
    json!({
        "point": point_json(&r.point),
        "singular": r.is_singular,
        "failing_form": r.failing_form.as_ref().map(|f| f.to_string()),
        "witnesses": witnesses,
    })
}

/// `{"type": "II", "pairs": [[0,3],[1,2]]}`; triples use `"monomials"`.
pub fn descriptor_json(c: &ConeDescriptor) -> Value {
    match c {
        ConeDescriptor::TypeI(t) => json!({"type": "I", "monomials": t}),
        ConeDescriptor::TypeII(a, b) => json!({"type": "II", "pairs": [a, b]}),
        ConeDescriptor::TypeIII(a, b) => json!({"type": "III", "pairs": [a, b]}),
        ConeDescriptor::Char0Triple(t) => json!({"type": "char0", "monomials": t}),
        ConeDescriptor::Char2Quad { even, odd } => json!({"type": "char2", "pairs": [even, odd]}),
    }
}

pub fn parse_descriptor(v: &Value) -> Result<ConeDescriptor> {
    let bad = || Error::InvalidDescriptor(v.to_string());
    let kind = v.get("type").and_then(Value::as_str).ok_or_else(bad)?;
    let triple = || -> Result<[u32; 3]> {
        serde_json::from_value::<[u32; 3]>(v.get("monomials").cloned().ok_or_else(bad)?).map_err(|_| bad())
    };
    let pairs = || -> Result<[[u32; 2]; 2]> {
        serde_json::from_value::<[[u32; 2]; 2]>(v.get("pairs").cloned().ok_or_else(bad)?).map_err(|_| bad())
    };
    Ok(match kind {
        "I" => {
            let [i, j, k] = triple()?;
            ConeDescriptor::type_i(i, j, k)
        }
        "II" => {
            let [a, b] = pairs()?;
            ConeDescriptor::type_ii(a, b)
        }
        "III" => {
            let [a, b] = pairs()?;
            ConeDescriptor::type_iii(a, b)
        }
        "char0" => {
            let [i, j, k] = triple()?;
            ConeDescriptor::char0(i, j, k)
        }
        "char2" => {
            let [a, b] = pairs()?;
            ConeDescriptor::char2(a, b)
        }
        _ => return Err(bad()),
    })
}

pub fn classification_json(c: &Classification) -> Value {
    match c {
        Classification::Maximal(d) => json!({"in_h": true, "maximal": true, "descriptor": descriptor_json(d)}),
        Classification::NonMaximal => json!({"in_h": true, "maximal": false, "descriptor": null}),
        Classification::NotInH => json!({"in_h": false, "maximal": false, "descriptor": null}),
    }
}

pub fn completeness_json(r: &CompletenessReport) -> Value {
    json!({
        "degree": r.degree,
        "p": r.p,
        "scanned": r.scanned,
        "members": r.members,
        "maximal": r.maximal,
        "non_maximal": r.non_maximal,
        "uncovered": r.uncovered.len(),
        "collisions": r.collisions.len(),
        "inconsistent": r.inconsistent.len(),
        "clean": r.is_clean(),
    })
}

fn root_pattern_json(r: &RootPattern) -> Value {
    json!({
        "argmin": r.argmin,
        "deletions": r.deletions,
        "singular": r.singular,
        "descriptor": r.descriptor.as_ref().map(descriptor_json),
    })
}

pub fn adjacency_json(r: &AdjacencyReport) -> Value {
    json!({
        "p": r.p,
        "singular_roots": rationals(&r.singular_roots),
        "rank": r.rank,
        "count": r.count(),
        "expected": r.expected,
        "matches": r.matches_expectation(),
        "samples_checked": r.samples_checked,
        "rays": r.rays.iter().map(|ray| json!({
            "direction": [ray.direction.0.to_string(), ray.direction.1.to_string()],
            "epsilon": format_rational(&ray.epsilon),
            "perturbation": rationals(&ray.perturbation),
            "signature": ray.signature.roots.iter().map(root_pattern_json).collect::<Vec<_>>(),
        })).collect::<Vec<_>>(),
    })
}

pub fn universal_json(r: &UniversalReport) -> Value {
    json!({
        "degree": r.degree,
        "universally_singular": r.is_universal(),
        "primes_checked": r.primes_checked(),
        "per_prime": r.per_prime.iter().map(|(p, ok)| json!({"p": p, "in_h": ok})).collect::<Vec<_>>(),
        "failing_prime": r.failing,
    })
}

pub fn deep_cell_json(c: &DeepCell) -> Value {
    json!({
        "k": c.k,
        "degree": c.n,
        "d": c.d,
        "primes": c.primes,
        "equality_rank": c.rank,
        "report": universal_json(&c.report),
        "polynomial": polynomial_json(&c.polynomial),
    })
}

pub fn face_census_json(c: &FaceCensus) -> Value {
    json!({
        "dim": c.dim,
        "vertices": c.vertices,
        "vertex_count": c.vertex_count(),
        "edge_count": c.edge_count(),
        "quadrangles": c.quadrangles(),
        "triangles": c.triangles(),
        "larger_polygons": c.larger_polygons(),
        "polygons": c.polygons.iter().map(|(k, v)| json!({"vertices": k, "count": v})).collect::<Vec<_>>(),
    })
}

pub fn comparison_json(c: &NewtonComparison) -> Value {
    serde_json::to_value(c).unwrap_or(Value::Null)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_round_trip() {
        let text = r#"{"dim": 1, "terms": [{"exp": [0], "coeff": "1/2"}, {"exp": [3], "coeff": "-4"}]}"#;
        let f = parse_polynomial(text).unwrap();
        assert_eq!(f.len(), 2);
        let back = serde_json::to_string(&polynomial_json(&f)).unwrap();
        assert_eq!(parse_polynomial(&back).unwrap(), f);
        assert!(parse_polynomial(r#"{"dim": 1, "terms": [{"exp": [0], "coeff": "x"}]}"#).is_err());
        assert!(parse_polynomial(r#"{"dim": 2, "terms": [{"exp": [0], "coeff": "1"}]}"#).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let d = ConeDescriptor::type_ii([0, 3], [1, 2]);
        let v = descriptor_json(&d);
        assert_eq!(v, json!({"type": "II", "pairs": [[0, 3], [1, 2]]}));
        assert_eq!(parse_descriptor(&v).unwrap(), d);
        for d in [ConeDescriptor::type_i(2, 0, 1), ConeDescriptor::type_iii([1, 4], [0, 3]), ConeDescriptor::char0(0, 1, 2)] {
            assert_eq!(parse_descriptor(&descriptor_json(&d)).unwrap(), d);
        }
        assert!(parse_descriptor(&json!({"type": "IV"})).is_err());
    }
}
