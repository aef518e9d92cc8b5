use std::collections::{BTreeMap, BTreeSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::lp::{feasible_free, feasible_point};
use crate::arith::{rank, rat, row_echelon, Rational};
use crate::error::{Error, Result};

pub const MAX_POINTS: usize = 200;
pub const MAX_DIM: usize = 6;

/// Convex hull of a finite set of integer points.
#[derive(Clone, Debug)]
pub struct LatticePolytope {
    points: Vec<Vec<i64>>,
    dim: usize,
    /// The points in coordinates of their affine hull, injective and affine.
    projected: Vec<Vec<Rational>>,
}

/// Vertices, edges and 2-faces of a polytope.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FaceCensus {
    pub dim: usize,
    pub vertices: Vec<Vec<i64>>,
    /// Pairs of indices into `vertices`.
    pub edges: Vec<[usize; 2]>,
    /// Vertex index sets of the 2-faces.
    pub two_faces: Vec<Vec<usize>>,
    /// Number of 2-faces by number of vertices.
    pub polygons: BTreeMap<usize, usize>,
}

impl FaceCensus {
    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn triangles(&self) -> usize {
        self.polygons.get(&3).copied().unwrap_or(0)
    }

    pub fn quadrangles(&self) -> usize {
        self.polygons.get(&4).copied().unwrap_or(0)
    }

    /// 2-faces with five or more vertices.
    pub fn larger_polygons(&self) -> usize {
        self.polygons.range(5..).map(|(_, c)| c).sum()
    }
}

fn to_rational(v: &[i64]) -> Vec<Rational> {
    v.iter().map(|&x| rat(x)).collect()
}

fn diff(a: &[Rational], b: &[Rational]) -> Vec<Rational> {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

impl LatticePolytope {
    /// Deduplicates and sorts the points. Fails on empty input, a single
    /// point, mixed lengths or the size bounds.
    pub fn new(points: impl IntoIterator<Item = Vec<i64>>) -> Result<Self> {
        let set: BTreeSet<Vec<i64>> = points.into_iter().collect();
        let points: Vec<Vec<i64>> = set.into_iter().collect();
        let Some(first) = points.first() else {
            return Err(Error::InvalidInput("no points".into()));
        };
        if points.len() == 1 {
            return Err(Error::InvalidInput("degenerate polytope: a single point".into()));
        }
        let nvars = first.len();
        if let Some(p) = points.iter().find(|p| p.len() != nvars) {
            return Err(Error::DimensionMismatch { expected: nvars, found: p.len() });
        }
        if points.len() > MAX_POINTS {
            return Err(Error::SizeLimit(format!("{} points exceed {MAX_POINTS}", points.len())));
        }
        let base = to_rational(first);
        let diffs: Vec<Vec<Rational>> = points.iter().skip(1).map(|p| diff(&to_rational(p), &base)).collect();
        let rref = row_echelon(diffs);
        let dim = rref.len();
        if dim > MAX_DIM {
            return Err(Error::SizeLimit(format!("affine dimension {dim} exceeds {MAX_DIM}")));
        }
        let pivots: Vec<usize> = rref.iter().filter_map(|r| r.iter().position(|v| !v.is_zero())).collect();
        let projected = points.iter().map(|p| pivots.iter().map(|&c| rat(p[c])).collect()).collect();
        Ok(LatticePolytope { points, dim, projected })
    }

    /// Builds the polytope of a degree-`n` discriminant support, checking
    /// both homogeneities first.
    pub fn from_discriminant_support(support: &[Vec<u32>], n: u32) -> Result<Self> {
        for e in support {
            if e.len() != n as usize + 1 {
                return Err(Error::DimensionMismatch { expected: n as usize + 1, found: e.len() });
            }
            let total: u32 = e.iter().sum();
            let weighted: u32 = e.iter().enumerate().map(|(i, &k)| i as u32 * k).sum();
            if total != 2 * n - 2 || weighted != n * (n - 1) {
                return Err(Error::Mismatch(format!("exponent {e:?} breaks the discriminant homogeneities")));
            }
        }
        let p = Self::new(support.iter().map(|e| e.iter().map(|&k| i64::from(k)).collect()))?;
        debug_assert!(p.dim + 2 <= n as usize + 1);
        Ok(p)
    }

    pub fn points(&self) -> &[Vec<i64>] {
        &self.points
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Whether point `i` lies in the convex hull of the other points.
    fn in_hull_of_others(&self, i: usize) -> bool {
        let others: Vec<&Vec<Rational>> = (0..self.points.len()).filter(|&j| j != i).map(|j| &self.projected[j]).collect();
        let mut a: Vec<Vec<Rational>> = (0..self.dim).map(|c| others.iter().map(|q| q[c].clone()).collect()).collect();
        a.push(vec![rat(1); others.len()]);
        let mut b = self.projected[i].clone();
        b.push(rat(1));
        feasible_point(&a, &b).is_some()
    }

    /// Indices of the points outside the hull of the others.
    pub fn vertex_indices(&self) -> Vec<usize> {
        (0..self.points.len()).into_par_iter().filter(|&i| !self.in_hull_of_others(i)).collect()
    }

    /// Vertices by strict separation: a functional minimised only at the
    /// point. Independent of [`LatticePolytope::vertex_indices`].
    pub fn vertex_indices_by_separation(&self) -> Vec<usize> {
        let all: Vec<usize> = (0..self.points.len()).collect();
        (0..self.points.len()).into_par_iter().filter(|&i| self.separating_functional(&[i], &all).is_some()).collect()
    }

    /// A functional constant on `face` and at least one larger on the rest
    /// of `pool`, in projected coordinates.
    fn separating_functional(&self, face: &[usize], pool: &[usize]) -> Option<Vec<Rational>> {
        let s0 = &self.projected[face[0]];
        let eq: Vec<Vec<Rational>> = face[1..].iter().map(|&s| diff(&self.projected[s], s0)).collect();
        let ge: Vec<Vec<Rational>> =
            pool.iter().filter(|w| !face.contains(w)).map(|&w| diff(&self.projected[w], s0)).collect();
        feasible_free(&eq, &vec![rat(0); eq.len()], &ge, &vec![rat(1); ge.len()], self.dim)
    }

    /// A functional on the original coordinates minimised
    /// exactly at vertex `v` among all points.
    pub fn normal_direction(&self, v: usize) -> Option<Vec<Rational>> {
        let p0 = to_rational(&self.points[v]);
        let ge: Vec<Vec<Rational>> =
            (0..self.points.len()).filter(|&w| w != v).map(|w| diff(&to_rational(&self.points[w]), &p0)).collect();
        feasible_free(&[], &[], &ge, &vec![rat(1); ge.len()], p0.len())
    }

    fn affine_rank(&self, idx: &[usize]) -> usize {
        let base = &self.projected[idx[0]];
        rank(&idx[1..].iter().map(|&i| diff(&self.projected[i], base)).collect::<Vec<_>>())
    }

    /// Vertices, edges and 2-faces.
    pub fn faces(&self) -> FaceCensus {
        let vidx = self.vertex_indices();
        let vertices: Vec<Vec<i64>> = vidx.iter().map(|&i| self.points[i].clone()).collect();
        let nv = vidx.len();
        let pairs: Vec<[usize; 2]> = (0..nv).flat_map(|a| (a + 1..nv).map(move |b| [a, b])).collect();
        let edges: Vec<[usize; 2]> = pairs
            .into_par_iter()
            .filter(|&[a, b]| self.separating_functional(&[vidx[a], vidx[b]], &vidx).is_some())
            .collect();

        // every polygon contains a vertex together with two of its edges
        let mut neighbours = vec![Vec::new(); nv];
        for &[a, b] in &edges {
            neighbours[a].push(b);
            neighbours[b].push(a);
        }
        let mut candidates: BTreeSet<Vec<usize>> = BTreeSet::new();
        if self.dim >= 2 {
            for u in 0..nv {
                for (x, &v) in neighbours[u].iter().enumerate() {
                    for &w in &neighbours[u][x + 1..] {
                        let plane = [vidx[u], vidx[v], vidx[w]];
                        let members: Vec<usize> = (0..nv)
                            .filter(|&t| {
                                let mut probe = plane.to_vec();
                                probe.push(vidx[t]);
                                self.affine_rank(&probe) == 2
                            })
                            .collect();
                        candidates.insert(members);
                    }
                }
            }
        }
        let two_faces: Vec<Vec<usize>> = candidates
            .into_par_iter()
            .filter(|members| {
                let face: Vec<usize> = members.iter().map(|&t| vidx[t]).collect();
                self.separating_functional(&face, &vidx).is_some()
            })
            .collect();
        let mut polygons = BTreeMap::new();
        for f in &two_faces {
            *polygons.entry(f.len()).or_insert(0) += 1;
        }
        FaceCensus { dim: self.dim, vertices, edges, two_faces, polygons }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn square_and_cube() {
        let sq = LatticePolytope::new(vec![vec![0, 0], vec![1, 0], vec![0, 1], vec![1, 1], vec![0, 0]]).unwrap();
        let c = sq.faces();
        assert_eq!((c.vertex_count(), c.edge_count(), c.quadrangles(), c.triangles()), (4, 4, 1, 0));

        let mut pts = Vec::new();
        for x in 0..=2 {
            for y in 0..=2 {
                for z in 0..=2 {
                    pts.push(vec![x, y, z]);
                }
            }
        }
        let cube = LatticePolytope::new(pts).unwrap();
        let c = cube.faces();
        assert_eq!((c.vertex_count(), c.edge_count(), c.quadrangles(), c.triangles()), (8, 12, 6, 0));
        assert_eq!(cube.vertex_indices(), cube.vertex_indices_by_separation());
    }

    #[test]
    fn simplex_in_higher_space() {
        let t = LatticePolytope::new(vec![vec![1, 0, 0, 5], vec![0, 1, 0, 5], vec![0, 0, 1, 5]]).unwrap();
        assert_eq!(t.dim(), 2);
        let c = t.faces();
        assert_eq!((c.vertex_count(), c.edge_count(), c.triangles()), (3, 3, 1));
        let oct = LatticePolytope::new(vec![
            vec![1, 0, 0],
            vec![-1, 0, 0],
            vec![0, 1, 0],
            vec![0, -1, 0],
            vec![0, 0, 1],
            vec![0, 0, -1],
            vec![0, 0, 0],
        ])
        .unwrap();
        let c = oct.faces();
        assert_eq!((c.vertex_count(), c.edge_count(), c.triangles()), (6, 12, 8));
    }

    #[test]
    fn degenerate_inputs() {
        assert!(LatticePolytope::new(Vec::<Vec<i64>>::new()).is_err());
        assert!(LatticePolytope::new(vec![vec![1, 2], vec![1, 2]]).is_err());
        let seg = LatticePolytope::new(vec![vec![0], vec![1], vec![3]]).unwrap();
        let c = seg.faces();
        assert_eq!((c.vertex_count(), c.edge_count(), c.two_faces.len()), (2, 1, 0));
    }

    #[test]
    fn normal_directions_select_vertices() {
        let sq = LatticePolytope::new(vec![vec![0, 0], vec![2, 0], vec![0, 2], vec![2, 2], vec![1, 1]]).unwrap();
        for v in sq.vertex_indices() {
            let c = sq.normal_direction(v).unwrap();
            let val = |p: &Vec<i64>| -> Rational { p.iter().zip(&c).map(|(&x, y)| rat(x) * y).sum() };
            let best = val(&sq.points()[v]);
            assert!(sq.points().iter().enumerate().all(|(i, p)| i == v || val(p) > best));
        }
        assert_eq!(sq.points()[2], vec![1, 1]);
        assert!(sq.normal_direction(2).is_none());
    }
}
