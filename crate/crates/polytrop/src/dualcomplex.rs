//! Polyhedral complexes in a rational vector space, and the Legendre-dual
//! decomposition of a lifted subdivision.
//!
//! The bounded cells of the Legendre dual of a regular subdivision are dual
//! to its interior faces; the vertex of the dual attached to a maximal cell
//! is the slope of the induced piecewise-linear function there. This is the
//! combinatorial shadow of the toric degeneration attached to a regular
//! subdivision: bounded dual cells correspond to compact strata of the
//! special fiber and unbounded ones record horizontal divisors.

use crate::error::Error;
use crate::lattice::{LatticeVector, RatVector};
use crate::linalg::{self, RatMatrix};
use crate::subdivision::Subdivision;
use crate::{Int, Rat};
use num::{Signed, Zero};
use std::collections::BTreeSet;

/// A rational polyhedron given by vertices and recession rays.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyCell {
    pub vertices: Vec<RatVector>,
    pub rays: Vec<LatticeVector>,
    pub dim: usize,
    /// Indices (into the originating structure) of the object this cell is
    /// dual to or carried by; meaning depends on the producing operation.
    pub tag: Vec<usize>,
}

impl PolyCell {
    pub fn is_bounded(&self) -> bool {
        self.rays.is_empty()
    }

    /// Membership test for a rational point.
    pub fn contains(&self, x: &RatVector) -> bool {
        // x in conv(V) + cone(R): nonneg weights, vertex weights summing to 1
        let n = x.dim();
        let k = self.vertices.len();
        let r = self.rays.len();
        if k == 0 {
            return false;
        }
        let mut rows = Vec::new();
        let mut rhs = Vec::new();
        for i in 0..n {
            let mut row: Vec<Rat> = Vec::with_capacity(k + r);
            for v in &self.vertices {
                row.push(v.coord(i).clone());
            }
            for ray in &self.rays {
                row.push(Rat::from_integer(ray.coord(i).clone()));
            }
            rows.push(RatVector::new(row.clone()));
            rhs.push(x.coord(i).clone());
            rows.push(RatVector::new(row.iter().map(|c| -c.clone()).collect()));
            rhs.push(-x.coord(i).clone());
        }
        let mut ones = vec![Rat::zero(); k + r];
        for w in ones.iter_mut().take(k) {
            *w = Rat::from_integer(Int::from(1));
        }
        rows.push(RatVector::new(ones.clone()));
        rhs.push(Rat::from_integer(Int::from(1)));
        rows.push(RatVector::new(ones.iter().map(|c| -c.clone()).collect()));
        rhs.push(-Rat::from_integer(Int::from(1)));
        matches!(
            crate::lp::simplex_max(&rows, &rhs, &RatVector::zero(k + r)),
            crate::lp::SimplexResult::Optimal { .. }
        )
    }

    /// The affine span as (point, direction basis).
    pub fn affine_span(&self) -> (RatVector, Vec<RatVector>) {
        let base = self.vertices[0].clone();
        let mut dirs: Vec<RatVector> = self.vertices[1..].iter().map(|v| v.sub(&base)).collect();
        dirs.extend(self.rays.iter().map(|r| r.to_rat()));
        let mut basis: Vec<RatVector> = Vec::new();
        for d in dirs {
            let mut trial = basis.clone();
            trial.push(d.clone());
            if linalg::rank_of(&trial) > basis.len() {
                basis.push(d);
            }
        }
        (base, basis)
    }
}

/// A finite polyhedral complex: cells with an order-reversing incidence
/// relation recorded as indices of proper faces.
#[derive(Clone, Debug)]
pub struct PolyComplex {
    pub ambient_dim: usize,
    pub cells: Vec<PolyCell>,
    /// `faces[i]` lists the indices of the proper faces of cell `i` within
    /// the complex.
    pub faces: Vec<Vec<usize>>,
}

impl PolyComplex {
    /// Maximal cells (those that are faces of nothing else).
    pub fn maximal_cells(&self) -> Vec<usize> {
        let mut is_face = vec![false; self.cells.len()];
        for fs in &self.faces {
            for &f in fs {
                is_face[f] = true;
            }
        }
        (0..self.cells.len()).filter(|&i| !is_face[i]).collect()
    }

    pub fn is_compact(&self) -> bool {
        self.cells.iter().all(|c| c.is_bounded())
    }

    /// Index of the minimal cell containing a point, if any.
    pub fn minimal_cell_containing(&self, x: &RatVector) -> Option<usize> {
        let mut best: Option<usize> = None;
        for (i, c) in self.cells.iter().enumerate() {
            if c.contains(x) && best.map_or(true, |b| c.dim < self.cells[b].dim) {
                best = Some(i);
            }
        }
        best
    }
}

/// An H-representation over the rationals: `eq . x = eq_rhs` and
/// `ineq . x >= ineq_rhs`.
#[derive(Clone, Debug, Default)]
pub struct HRep {
    pub eqs: Vec<(RatVector, Rat)>,
    pub ineqs: Vec<(RatVector, Rat)>,
}

impl HRep {
    pub fn contains(&self, x: &RatVector) -> bool {
        self.eqs.iter().all(|(a, b)| a.dot(x) == *b)
            && self.ineqs.iter().all(|(a, b)| a.dot(x) >= *b)
    }

    /// All vertices of the polyhedron, by brute force over tight subsets.
    pub fn vertices(&self, dim: usize) -> Vec<RatVector> {
        let mut out: BTreeSet<RatVector> = BTreeSet::new();
        let k = self.ineqs.len();
        let eq_rows: Vec<RatVector> = self.eqs.iter().map(|(a, _)| a.clone()).collect();
        let eq_rank = linalg::rank_of(&eq_rows);
        let need = dim.saturating_sub(eq_rank);
        if need > k {
            return Vec::new();
        }
        for subset in linalg::combinations(k, need) {
            let mut rows = eq_rows.clone();
            let mut rhs: Vec<Rat> = self.eqs.iter().map(|(_, b)| b.clone()).collect();
            for &i in &subset {
                rows.push(self.ineqs[i].0.clone());
                rhs.push(self.ineqs[i].1.clone());
            }
            if linalg::rank_of(&rows) != dim {
                continue;
            }
            let a = RatMatrix::from_rows(&rows);
            if let Some(x) = linalg::solve(&a, &RatVector::new(rhs)) {
                if self.contains(&x) {
                    out.insert(x);
                }
            }
        }
        out.into_iter().collect()
    }

    /// Extreme rays of the recession cone, primitive and deduplicated.
    pub fn recession_rays(&self, dim: usize) -> Vec<LatticeVector> {
        let mut out: BTreeSet<LatticeVector> = BTreeSet::new();
        let k = self.ineqs.len();
        let eq_rows: Vec<RatVector> = self.eqs.iter().map(|(a, _)| a.clone()).collect();
        let eq_rank = linalg::rank_of(&eq_rows);
        // an extreme ray is cut out by dim-1 independent tight constraints
        let need = (dim.max(1) - 1).saturating_sub(eq_rank);
        if need > k {
            return Vec::new();
        }
        for subset in linalg::combinations(k, need) {
            let mut rows = eq_rows.clone();
            for &i in &subset {
                rows.push(self.ineqs[i].0.clone());
            }
            let a = RatMatrix::from_rows(&rows);
            for dir in linalg::kernel_basis(&a) {
                let (v, _) = dir.clear_denominators();
                if v.is_zero() {
                    continue;
                }
                let (p, _) = crate::lattice::primitive_decompose(&v).unwrap();
                for cand in [p.clone(), p.neg()] {
                    let pr = cand.to_rat();
                    let ok = self.eqs.iter().all(|(a, _)| a.dot(&pr).is_zero())
                        && self.ineqs.iter().all(|(a, _)| !a.dot(&pr).is_negative());
                    if !ok {
                        continue;
                    }
                    // extreme: tight constraints at the ray have rank dim - 1
                    let mut tight = eq_rows.clone();
                    for (a, _) in &self.ineqs {
                        if a.dot(&pr).is_zero() {
                            tight.push(a.clone());
                        }
                    }
                    if linalg::rank_of(&tight) == dim - 1 {
                        out.insert(cand);
                    }
                }
            }
        }
        out.into_iter().collect()
    }
}

/// The decomposition of the cocharacter space into domains of linearity of
/// the Legendre transform of the lift: one dual cell per attained face of
/// the subdivision, with bounded cells dual to interior faces and a dual
/// vertex for every maximal cell.
pub fn legendre_dual(s: &Subdivision) -> Result<PolyComplex, Error> {
    let lifting = s.lifting().ok_or(Error::MissingLifting)?.to_vec();
    s.check_lifting_induces()?;

    let n = s.ambient().ambient_dim();
    let points = s.points();

    // faces of the subdivision: faces of every cell hull, as closed point
    // index sets
    let mut face_sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for ci in 0..s.cells().len() {
        let hull = s.cell_hull(ci);
        for f in hull.faces() {
            let set: Vec<usize> = f
                .vertices
                .iter()
                .map(|&vi| {
                    let v = &hull.vertices()[vi];
                    points.iter().position(|p| p == v).expect("hull vertex is a point")
                })
                .collect();
            face_sets.insert(s.close_point_set(&set));
        }
    }

    // Legendre: F(y) = max_p (<y,p> - h_p). The dual cell of a face G is
    //   { y : <y,p> - h_p equal on G, and >= <y,q> - h_q for all q }.
    let mut cells_out: Vec<PolyCell> = Vec::new();
    for face in &face_sets {
        let p0 = face[0];
        let mut eqs = Vec::new();
        for &p in &face[1..] {
            // <y, p - p0> = h_p - h_p0
            let diff = points[p].sub(&points[p0]).to_rat();
            eqs.push((diff, &lifting[p] - &lifting[p0]));
        }
        let mut ineqs = Vec::new();
        for (q, hq) in lifting.iter().enumerate() {
            if face.binary_search(&q).is_ok() {
                continue;
            }
            // <y, p0 - q> >= h_p0 - h_q
            let diff = points[p0].sub(&points[q]).to_rat();
            ineqs.push((diff, &lifting[p0] - hq));
        }
        let h = HRep { eqs, ineqs };
        let vertices = h.vertices(n);
        if vertices.is_empty() {
            continue; // face not attained by the lower hull
        }
        let rays = h.recession_rays(n);
        let mut span_dirs: Vec<RatVector> =
            vertices[1..].iter().map(|v| v.sub(&vertices[0])).collect();
        span_dirs.extend(rays.iter().map(|r| r.to_rat()));
        let dim = linalg::rank_of(&span_dirs);
        cells_out.push(PolyCell {
            vertices,
            rays,
            dim,
            tag: face.clone(),
        });
    }

    // incidence is order-reversing: D(G) is a face of D(F) iff F ⊂ G
    let mut faces = vec![Vec::new(); cells_out.len()];
    for (i, ci) in cells_out.iter().enumerate() {
        for (j, cj) in cells_out.iter().enumerate() {
            if i != j
                && cj.tag.len() < ci.tag.len()
                && cj.tag.iter().all(|t| ci.tag.binary_search(t).is_ok())
            {
                // cj's tag face is contained in ci's, so D(ci.tag) ⊂ D(cj.tag)
                faces[j].push(i);
            }
        }
    }

    Ok(PolyComplex {
        ambient_dim: n,
        cells: cells_out,
        faces,
    })
}


#[cfg(test)]
mod legendre_tests {
    use super::*;
    use crate::polytope::dilated_simplex;
    use crate::subdivision::{staircase_triangulation, Subdivision};
    use crate::{int, rat};
    use num::Zero;

    #[test]
    fn dual_of_trivial_triangle_is_tropical_line() {
        let t = dilated_simplex(1, 2);
        let pts = t.lattice_points();
        let s = Subdivision::new(t, pts, vec![vec![0, 1, 2]], Some(vec![
            Rat::zero(),
            Rat::zero(),
            Rat::zero(),
        ]))
        .unwrap();
        let dual = legendre_dual(&s).unwrap();
        // one dual vertex, three unbounded edges, three 2-dimensional regions
        let verts: Vec<&PolyCell> = dual.cells.iter().filter(|c| c.dim == 0).collect();
        assert_eq!(verts.len(), 1);
        assert_eq!(verts[0].vertices[0], RatVector::zero(2));
        let edges: Vec<&PolyCell> = dual.cells.iter().filter(|c| c.dim == 1).collect();
        assert_eq!(edges.len(), 3);
        assert!(edges.iter().all(|e| !e.is_bounded()));
        // leg directions of the line
        let mut dirs: Vec<LatticeVector> = edges.iter().map(|e| e.rays[0].clone()).collect();
        dirs.sort();
        assert_eq!(
            dirs,
            vec![
                LatticeVector::from_ints(&[-1, 0]),
                LatticeVector::from_ints(&[0, -1]),
                LatticeVector::from_ints(&[1, 1]),
            ]
        );
    }

    #[test]
    fn dual_of_corner_triangulation() {
        // the four-triangle triangulation of 2Δ₂ with a tie-breaking
        // quadratic lift dualizes to the honeycomb conic
        let t = dilated_simplex(2, 2);
        let pts = t.lattice_points();
        let heights: Vec<Rat> = pts
            .iter()
            .map(|p| {
                let x = p.coord(0);
                let y = p.coord(1);
                Rat::from_integer(x * x + x * y + y * y)
            })
            .collect();
        let s = crate::subdivision::induced_subdivision(&t, &pts, &heights).unwrap();
        assert_eq!(s.cells().len(), 4);
        let dual = legendre_dual(&s).unwrap();
        let verts: Vec<&PolyCell> = dual.cells.iter().filter(|c| c.dim == 0).collect();
        assert_eq!(verts.len(), 4, "one dual vertex per maximal cell");
        let bounded_edges = dual
            .cells
            .iter()
            .filter(|c| c.dim == 1 && c.is_bounded())
            .count();
        assert_eq!(bounded_edges, 3, "three interior walls");
        let unbounded_edges = dual
            .cells
            .iter()
            .filter(|c| c.dim == 1 && !c.is_bounded())
            .count();
        assert_eq!(unbounded_edges, 6, "six boundary edges");
    }

    #[test]
    fn dual_of_split_square_has_one_bounded_edge() {
        let seg = dilated_simplex(1, 1);
        let seg_pts = seg.lattice_points();
        let t1 = Subdivision::new(seg, seg_pts, vec![vec![0, 1]], None).unwrap();
        let sq = staircase_triangulation(&t1, &t1).unwrap();
        assert_eq!(sq.cells().len(), 2);
        let dual = legendre_dual(&sq).unwrap();
        let verts = dual.cells.iter().filter(|c| c.dim == 0).count();
        assert_eq!(verts, 2);
        let bounded_edges = dual
            .cells
            .iter()
            .filter(|c| c.dim == 1 && c.is_bounded())
            .count();
        assert_eq!(bounded_edges, 1);
    }

    #[test]
    fn dual_incidence_reverses_and_dimensions_complement() {
        let t = dilated_simplex(2, 2);
        let pts = t.lattice_points();
        let heights: Vec<Rat> = pts
            .iter()
            .map(|p| {
                let x = p.coord(0);
                let y = p.coord(1);
                Rat::from_integer(x * x + x * y + y * y)
            })
            .collect();
        let s = crate::subdivision::induced_subdivision(&t, &pts, &heights).unwrap();
        let dual = legendre_dual(&s).unwrap();
        for cell in &dual.cells {
            // dim of dual cell + dim of tag face = ambient dimension
            let tag_pts: Vec<RatVector> =
                cell.tag.iter().map(|&i| s.points()[i].to_rat()).collect();
            let tag_dim = crate::linalg::affine_rank(&tag_pts);
            assert_eq!(cell.dim + tag_dim, 2);
        }
        // order reversal: bounded vertices are dual to maximal cells
        for v in dual.cells.iter().filter(|c| c.dim == 0) {
            assert!(s.cells().iter().any(|c| c == &v.tag));
        }
        // round trip: the interior face poset of s is recovered from the
        // bounded dual cells by reversing inclusions
        let bounded_tags: Vec<&Vec<usize>> = dual
            .cells
            .iter()
            .filter(|c| c.is_bounded())
            .map(|c| &c.tag)
            .collect();
        for (i, ti) in bounded_tags.iter().enumerate() {
            for tj in bounded_tags.iter().skip(i + 1) {
                let i_in_j = ti.iter().all(|x| tj.contains(x));
                let j_in_i = tj.iter().all(|x| ti.contains(x));
                if i_in_j || j_in_i {
                    // comparable tags must have comparable dual cells with
                    // reversed order
                    let di = dual.cells.iter().find(|c| &&c.tag == ti).unwrap();
                    let dj = dual.cells.iter().find(|c| &&c.tag == tj).unwrap();
                    if i_in_j && ti.len() < tj.len() {
                        assert!(di.dim > dj.dim);
                    }
                    if j_in_i && tj.len() < ti.len() {
                        assert!(dj.dim > di.dim);
                    }
                }
            }
        }
        let _ = (int(0), rat(0));
    }
}
