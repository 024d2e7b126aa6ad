//! Lattice polytopes with face data, and the constructors for Newton
//! polytopes of hypersurfaces in products of projective spaces.
//!
//! Polytopes are anchored: constructors fix a translation representative
//! (dilated simplices and their products sit at the origin), so equality is
//! coordinate equality.

use crate::error::Error;
use crate::hull::convex_hull;
use crate::lattice::{normalized_volume, LatticeVector, RatVector};
use crate::linalg;
use crate::Int;
use num::Zero;
use std::collections::BTreeSet;

/// A face of a polytope, identified by its vertex set.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Face {
    pub vertices: Vec<usize>,
    pub dim: usize,
}

/// A bounded lattice polytope with vertex set, facet inequalities, affine
/// hull equations and the full face lattice. The two representations are
/// cross-validated on construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LatticePolytope {
    ambient_dim: usize,
    dim: usize,
    vertices: Vec<LatticeVector>,
    /// `normal . x >= offset`, tight on a facet.
    facets: Vec<(LatticeVector, Int, Vec<usize>)>,
    /// `normal . x == offset` on the affine hull.
    equations: Vec<(LatticeVector, Int)>,
    faces: Vec<Face>,
}

impl LatticePolytope {
    pub(crate) fn from_parts(
        ambient_dim: usize,
        dim: usize,
        vertices: Vec<LatticeVector>,
        facets: Vec<(LatticeVector, Int, Vec<usize>)>,
        equations: Vec<(LatticeVector, Int)>,
    ) -> Self {
        let faces = face_lattice(&vertices, &facets, dim);
        let p = LatticePolytope {
            ambient_dim,
            dim,
            vertices,
            facets,
            equations,
            faces,
        };
        p.validate().expect("constructed polytope is consistent");
        p
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    /// Intrinsic dimension.
    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Vertices in canonical lexicographic order.
    pub fn vertices(&self) -> &[LatticeVector] {
        &self.vertices
    }

    /// Facet inequalities `normal . x >= offset` with supporting vertex sets.
    pub fn facets(&self) -> &[(LatticeVector, Int, Vec<usize>)] {
        &self.facets
    }

    /// Affine hull equations (empty for full-dimensional polytopes).
    pub fn equations(&self) -> &[(LatticeVector, Int)] {
        &self.equations
    }

    /// All nonempty faces, ordered by (dimension, vertex set); the last face
    /// is the polytope itself.
    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn faces_of_dim(&self, d: usize) -> impl Iterator<Item = &Face> {
        self.faces.iter().filter(move |f| f.dim == d)
    }

    pub fn contains(&self, x: &RatVector) -> bool {
        if x.dim() != self.ambient_dim {
            return false;
        }
        self.equations
            .iter()
            .all(|(n, o)| n.dot_rat(x) == crate::Rat::from_integer(o.clone()))
            && self
                .facets
                .iter()
                .all(|(n, o, _)| n.dot_rat(x) >= crate::Rat::from_integer(o.clone()))
    }

    pub fn contains_lattice(&self, x: &LatticeVector) -> bool {
        self.contains(&x.to_rat())
    }

    /// Exactly the integer points of the polytope, in lexicographic order.
    pub fn lattice_points(&self) -> Vec<LatticeVector> {
        let n = self.ambient_dim;
        if self.vertices.is_empty() {
            return Vec::new();
        }
        let mut lo = self.vertices[0].coords().to_vec();
        let mut hi = lo.clone();
        for v in &self.vertices {
            for i in 0..n {
                if v.coord(i) < &lo[i] {
                    lo[i] = v.coord(i).clone();
                }
                if v.coord(i) > &hi[i] {
                    hi[i] = v.coord(i).clone();
                }
            }
        }
        let mut out = Vec::new();
        let mut cur = lo.clone();
        'outer: loop {
            let candidate = LatticeVector::new(cur.clone());
            if self.contains_lattice(&candidate) {
                out.push(candidate);
            }
            // odometer in lexicographic order (most significant first)
            let mut i = n;
            loop {
                if i == 0 {
                    break 'outer;
                }
                i -= 1;
                cur[i] += 1;
                if cur[i] <= hi[i] {
                    break;
                }
                cur[i] = lo[i].clone();
            }
        }
        out.sort_unstable();
        out
    }

    /// Total lattice-normalized volume via a pulling triangulation built
    /// from the face lattice.
    pub fn total_normalized_volume(&self) -> Int {
        let simplices = self.pulling_triangulation();
        let mut tot = Int::zero();
        for s in &simplices {
            let pts: Vec<LatticeVector> =
                s.iter().map(|&i| self.vertices[i].clone()).collect();
            tot += normalized_volume(&pts);
        }
        tot
    }

    /// Triangulates the polytope by recursively pulling the lexicographically
    /// first vertex of each face. Returns simplices as vertex index sets.
    pub fn pulling_triangulation(&self) -> Vec<Vec<usize>> {
        let top = self.faces.last().expect("nonempty polytope");
        self.pull_face(top)
    }

    fn pull_face(&self, face: &Face) -> Vec<Vec<usize>> {
        if face.vertices.len() == face.dim + 1 {
            return vec![face.vertices.clone()];
        }
        let v0 = face.vertices[0];
        let mut out = Vec::new();
        for sub in self
            .faces
            .iter()
            .filter(|g| g.dim + 1 == face.dim && is_subset(&g.vertices, &face.vertices))
        {
            if sub.vertices.contains(&v0) {
                continue;
            }
            for mut simplex in self.pull_face(sub) {
                simplex.push(v0);
                simplex.sort_unstable();
                out.push(simplex);
            }
        }
        out
    }

    /// Cross-validation of the V- and H-representations.
    pub fn validate(&self) -> Result<(), Error> {
        for v in &self.vertices {
            if !self.contains_lattice(v) {
                return Err(Error::invalid("vertex violates an inequality"));
            }
            if self.dim > 0 {
                let tight: Vec<LatticeVector> = self
                    .facets
                    .iter()
                    .filter(|(n, o, _)| &n.dot(v) == o)
                    .map(|(n, _, _)| n.clone())
                    .collect();
                let mut dirs = tight;
                dirs.extend(self.equations.iter().map(|(n, _)| n.clone()));
                if linalg::lattice_rank(&dirs) != self.ambient_dim {
                    return Err(Error::invalid("vertex not cut out by its tight facets"));
                }
            }
        }
        for (_, _, on) in &self.facets {
            if on.len() < self.dim {
                return Err(Error::invalid("facet supported by too few vertices"));
            }
        }
        Ok(())
    }
}

fn is_subset(a: &[usize], b: &[usize]) -> bool {
    a.iter().all(|x| b.binary_search(x).is_ok())
}

/// Face lattice from facet supports: all intersections of facet vertex sets,
/// plus the polytope itself.
fn face_lattice(
    vertices: &[LatticeVector],
    facets: &[(LatticeVector, Int, Vec<usize>)],
    dim: usize,
) -> Vec<Face> {
    let mut sets: BTreeSet<Vec<usize>> = BTreeSet::new();
    for (_, _, on) in facets {
        sets.insert(on.clone());
    }
    // closure under pairwise intersection
    loop {
        let snapshot: Vec<Vec<usize>> = sets.iter().cloned().collect();
        let before = sets.len();
        for i in 0..snapshot.len() {
            for j in (i + 1)..snapshot.len() {
                let inter: Vec<usize> = snapshot[i]
                    .iter()
                    .filter(|x| snapshot[j].binary_search(x).is_ok())
                    .cloned()
                    .collect();
                if !inter.is_empty() {
                    sets.insert(inter);
                }
            }
        }
        if sets.len() == before {
            break;
        }
    }
    let top: Vec<usize> = (0..vertices.len()).collect();
    sets.insert(top);

    let mut faces: Vec<Face> = sets
        .into_iter()
        .map(|vs| {
            let pts: Vec<RatVector> = vs.iter().map(|&i| vertices[i].to_rat()).collect();
            Face {
                dim: linalg::affine_rank(&pts),
                vertices: vs,
            }
        })
        .collect();
    faces.sort_by(|a, b| (a.dim, &a.vertices).cmp(&(b.dim, &b.vertices)));
    debug_assert!(faces.last().map_or(true, |f| f.dim == dim));
    faces
}

/// `conv{0, d e_1, ..., d e_r}`, the `d`-fold dilated standard `r`-simplex.
pub fn dilated_simplex(d: u32, r: usize) -> LatticePolytope {
    assert!(d >= 1 && r >= 1);
    let d_int = Int::from(d);
    let mut points = vec![LatticeVector::zero(r)];
    for i in 0..r {
        points.push(LatticeVector::unit(r, i).scale(&d_int));
    }
    convex_hull(&points).expect("simplex hull")
}

/// A single point as a 0-dimensional polytope.
pub fn point_polytope(p: &LatticeVector) -> LatticePolytope {
    convex_hull(std::slice::from_ref(p)).expect("point hull")
}

/// Product `P x Q` in the concatenated coordinate space. The face lattice of
/// the product is the product of face lattices, so it is assembled directly
/// instead of re-running the hull.
pub fn product(p: &LatticePolytope, q: &LatticePolytope) -> LatticePolytope {
    let np = p.ambient_dim();
    let nq = q.ambient_dim();
    let n = np + nq;

    let mut vertices = Vec::with_capacity(p.vertices().len() * q.vertices().len());
    for a in p.vertices() {
        for b in q.vertices() {
            vertices.push(a.concat(b));
        }
    }
    vertices.sort_unstable();
    let vindex = |a: &LatticeVector| vertices.binary_search(a).expect("product vertex");

    let pad_left = |normal: &LatticeVector| {
        let mut c = normal.coords().to_vec();
        c.extend(std::iter::repeat(Int::zero()).take(nq));
        LatticeVector::new(c)
    };
    let pad_right = |normal: &LatticeVector| {
        let mut c = vec![Int::zero(); np];
        c.extend(normal.coords().iter().cloned());
        LatticeVector::new(c)
    };

    let mut facets = Vec::new();
    for (normal, offset, on) in p.facets() {
        let mut verts = Vec::new();
        for &i in on {
            for b in q.vertices() {
                verts.push(vindex(&p.vertices()[i].concat(b)));
            }
        }
        verts.sort_unstable();
        facets.push((pad_left(normal), offset.clone(), verts));
    }
    for (normal, offset, on) in q.facets() {
        let mut verts = Vec::new();
        for a in p.vertices() {
            for &j in on {
                verts.push(vindex(&a.concat(&q.vertices()[j])));
            }
        }
        verts.sort_unstable();
        facets.push((pad_right(normal), offset.clone(), verts));
    }
    facets.sort_by(|a, b| (&a.0, &a.1).cmp(&(&b.0, &b.1)));

    let mut equations: Vec<(LatticeVector, Int)> = p
        .equations()
        .iter()
        .map(|(n, o)| (pad_left(n), o.clone()))
        .chain(q.equations().iter().map(|(n, o)| (pad_right(n), o.clone())))
        .collect();
    equations.sort();

    LatticePolytope::from_parts(n, p.dim() + q.dim(), vertices, facets, equations)
}

/// Newton polytope of a hypersurface of the given multidegree in a product
/// of projective spaces: the product over factors of `d_j`-dilated
/// `r_j`-simplices. A zero degree contributes a point.
pub fn newton_polytope(factor_dims: &[usize], multidegree: &[u32]) -> Result<LatticePolytope, Error> {
    if factor_dims.is_empty() || factor_dims.len() != multidegree.len() {
        return Err(Error::invalid(
            "factor dimensions and multidegree must be nonempty lists of equal length",
        ));
    }
    let mut acc: Option<LatticePolytope> = None;
    for (&r, &d) in factor_dims.iter().zip(multidegree) {
        if r == 0 {
            return Err(Error::invalid("factor dimension must be positive"));
        }
        let factor = if d == 0 {
            point_polytope(&LatticeVector::zero(r))
        } else {
            dilated_simplex(d, r)
        };
        acc = Some(match acc {
            None => factor,
            Some(prev) => product(&prev, &factor),
        });
    }
    Ok(acc.expect("nonempty factor list"))
}

/// The 3-polytope `conv{(0,0,0),(1,0,0),(0,1,0),(1,1,2),(1,1,1)}` with five
/// vertices; its only lattice points are the vertices themselves.
pub fn figure_two_polytope() -> LatticePolytope {
    convex_hull(&[
        LatticeVector::from_ints(&[0, 0, 0]),
        LatticeVector::from_ints(&[1, 0, 0]),
        LatticeVector::from_ints(&[0, 1, 0]),
        LatticeVector::from_ints(&[1, 1, 2]),
        LatticeVector::from_ints(&[1, 1, 1]),
    ])
    .expect("five-vertex hull")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::int;

    #[test]
    fn dilated_simplex_basics() {
        let t = dilated_simplex(1, 2);
        assert_eq!(t.vertices().len(), 3);
        assert_eq!(t.lattice_points().len(), 3);

        let t33 = dilated_simplex(3, 3);
        assert_eq!(t33.vertices().len(), 4);
        assert_eq!(t33.total_normalized_volume(), int(27));
        // stars and bars: C(6, 3)
        assert_eq!(t33.lattice_points().len(), 20);

        let t22 = dilated_simplex(2, 2);
        assert_eq!(t22.lattice_points().len(), 6);
    }

    #[test]
    fn product_of_segments_is_square() {
        let s = dilated_simplex(1, 1);
        let sq = product(&s, &s);
        assert_eq!(sq.vertices().len(), 4);
        assert_eq!(sq.dim(), 2);
        assert_eq!(sq.facets().len(), 4);
    }

    #[test]
    fn product_with_point_is_identity_like() {
        let t = dilated_simplex(2, 2);
        let pt = point_polytope(&LatticeVector::zero(1));
        let prod = product(&t, &pt);
        assert_eq!(prod.dim(), t.dim());
        assert_eq!(prod.vertices().len(), t.vertices().len());
        assert_eq!(prod.total_normalized_volume(), t.total_normalized_volume());
        assert_eq!(prod.ambient_dim(), 3);
    }

    #[test]
    fn newton_polytope_examples() {
        // cubic curve in P^2
        let p = newton_polytope(&[2], &[3]).unwrap();
        assert_eq!(p, dilated_simplex(3, 2));

        // bidegree (2,2) hypersurface in P^2 x P^1
        let p = newton_polytope(&[2, 1], &[2, 2]).unwrap();
        assert_eq!(p.dim(), 3);
        assert_eq!(p.vertices().len(), 6);
        assert_eq!(p.lattice_points().len(), 18);

        // quintic threefold
        let p = newton_polytope(&[4], &[5]).unwrap();
        assert_eq!(p, dilated_simplex(5, 4));

        assert!(newton_polytope(&[], &[]).is_err());
    }

    #[test]
    fn product_volume_formula() {
        // vol(P x Q) = binom(dp + dq, dp) vol(P) vol(Q)
        let a = dilated_simplex(2, 2);
        let b = dilated_simplex(2, 1);
        let prod = product(&a, &b);
        // binom(3,1) * 4 * 2 = 24
        assert_eq!(prod.total_normalized_volume(), int(24));
    }

    #[test]
    fn figure_two_properties() {
        let p = figure_two_polytope();
        assert_eq!(p.vertices().len(), 5);
        assert_eq!(p.dim(), 3);
        let pts = p.lattice_points();
        assert_eq!(pts.len(), 5, "lattice points are exactly the vertices");
        // normalized volume of the first four vertices
        assert_eq!(
            normalized_volume(&[
                LatticeVector::from_ints(&[0, 0, 0]),
                LatticeVector::from_ints(&[1, 0, 0]),
                LatticeVector::from_ints(&[0, 1, 0]),
                LatticeVector::from_ints(&[1, 1, 2]),
            ]),
            int(2)
        );
    }

    #[test]
    fn unit_degree_newton_polytope_has_primitive_edges() {
        let p = newton_polytope(&[2, 1], &[1, 1]).unwrap();
        for f in p.faces_of_dim(1) {
            let a = &p.vertices()[f.vertices[0]];
            let b = &p.vertices()[f.vertices[1]];
            let e = b.sub(a);
            let (_, w) = crate::lattice::primitive_decompose(&e).unwrap();
            assert_eq!(w, int(1), "edge of a unimodular product is primitive");
        }
    }

    #[test]
    fn lattice_points_of_unit_triangle() {
        let t = dilated_simplex(1, 2);
        let pts = t.lattice_points();
        assert_eq!(
            pts,
            vec![
                LatticeVector::from_ints(&[0, 0]),
                LatticeVector::from_ints(&[0, 1]),
                LatticeVector::from_ints(&[1, 0]),
            ]
        );
    }
}
